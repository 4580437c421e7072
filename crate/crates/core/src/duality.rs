//! Join-preserving right-module maps out of the presheaf lattice and their
//! correspondence with copresheaves.
//!
//! `Φ ↦ (X ↦ Φ(rep_X))` and `G ↦ (F ↦ ⋁_X G(X)·F(X))` are checked to be
//! mutually inverse by enumerating both sides.

use crate::enriched::EnrichedCategory;
use crate::error::{Error, Result};
use crate::module::{ModuleLattice, Side};
use crate::presheaf::{Copresheaf, CopresheafSpace, PresheafLattice, PresheafSpace};
use crate::report::{Check, SuiteReport, Tally};

/// A table indexed by the presheaf lattice, valued in the target module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleMap {
    table: Vec<usize>,
}

impl ModuleMap {
    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    Bottom,
    /// `Φ(i ∨ j) = Φ(i) ∨ Φ(j)`
    Join(usize, usize),
    /// `Φ(i·a) = Φ(i)·a`
    Act(usize, usize),
}

/// The data shared by both sides of the correspondence for a category `C`
/// and a right module `N` over its base.
#[derive(Debug, Clone)]
pub struct Duality {
    space: PresheafSpace,
    lattice: PresheafLattice,
    target: ModuleLattice,
    copresheaves: CopresheafSpace,
    reps: Vec<usize>,
}

impl Duality {
    pub fn new(category: EnrichedCategory, target: ModuleLattice) -> Result<Self> {
        if category.base() != target.base() {
            return Err(Error::BaseMismatch);
        }
        if target.side() != Side::Right {
            return Err(Error::Invalid("module maps land in a right module".into()));
        }
        let space = PresheafSpace::over_self(category.clone())?;
        let lattice = space.presheaf_lattice()?;
        let reps = (0..category.len())
            .map(|x| lattice.index_of(&space.rep(x).unwrap()))
            .collect();
        let copresheaves = CopresheafSpace::new(category, target.clone())?;
        Ok(Duality {
            space,
            lattice,
            target,
            copresheaves,
            reps,
        })
    }

    pub fn space(&self) -> &PresheafSpace {
        &self.space
    }

    pub fn lattice(&self) -> &PresheafLattice {
        &self.lattice
    }

    pub fn target(&self) -> &ModuleLattice {
        &self.target
    }

    pub fn copresheaves(&self) -> &CopresheafSpace {
        &self.copresheaves
    }

    /// Checks `join preservation` (binary and empty joins) and `equivariance`.
    pub fn validate_module_map(&self, table: &[usize]) -> SuiteReport {
        let p = &self.lattice.module;
        let n = &self.target;
        let mut report = SuiteReport::new();
        let shape_ok = table.len() == p.len() && table.iter().all(|&v| v < n.len());
        report.push(if shape_ok {
            Check::pass("table", 1)
        } else {
            Check::fail("table", 1, format!("{} entries for {} presheaves", table.len(), p.len()))
        });
        if !shape_ok {
            return report;
        }
        let mut joins = Tally::default();
        joins.record(table[p.bottom()] == n.bottom(), || "empty join".into());
        for i in p.elements() {
            for j in p.elements() {
                let ok = table[p.join2(i, j)] == n.join2(table[i], table[j]);
                joins.record(ok, || format!("({}) ∨ ({})", p.name(i), p.name(j)));
            }
        }
        report.push(joins.into_check("join preservation"));
        let mut equi = Tally::default();
        let q = p.base();
        for i in p.elements() {
            for a in q.elements() {
                let ok = table[p.act(a, i)] == n.act(a, table[i]);
                equi.record(ok, || format!("({})⊗{}", p.name(i), q.name(a)));
            }
        }
        report.push(equi.into_check("equivariance"));
        report
    }

    pub fn module_map(&self, table: Vec<usize>) -> Result<ModuleMap> {
        let report = self.validate_module_map(&table);
        if let Some(c) = report.first_failure() {
            return Err(Error::LawViolated {
                law: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
        Ok(ModuleMap { table })
    }

    /// Every module map, in lexicographic order of the table.
    pub fn enumerate_module_maps(&self) -> Vec<ModuleMap> {
        let p = &self.lattice.module;
        let q = p.base();
        // each constraint is checked once all of its indices are assigned
        let mut pending: Vec<Vec<Constraint>> = vec![Vec::new(); p.len()];
        pending[p.bottom()].push(Constraint::Bottom);
        for i in p.elements() {
            for j in i..p.len() {
                let k = p.join2(i, j);
                pending[i.max(j).max(k)].push(Constraint::Join(i, j));
            }
            for a in q.elements() {
                pending[i.max(p.act(a, i))].push(Constraint::Act(i, a));
            }
        }
        let mut out = Vec::new();
        let mut table = Vec::with_capacity(p.len());
        self.extend(&pending, &mut table, &mut out);
        out
    }

    fn extend(&self, pending: &[Vec<Constraint>], table: &mut Vec<usize>, out: &mut Vec<ModuleMap>) {
        let p = &self.lattice.module;
        let n = &self.target;
        let k = table.len();
        if k == p.len() {
            out.push(ModuleMap { table: table.clone() });
            return;
        }
        for v in n.elements() {
            table.push(v);
            let ok = pending[k].iter().all(|c| match *c {
                Constraint::Bottom => table[p.bottom()] == n.bottom(),
                Constraint::Join(i, j) => table[p.join2(i, j)] == n.join2(table[i], table[j]),
                Constraint::Act(i, a) => table[p.act(a, i)] == n.act(a, table[i]),
            });
            if ok {
                self.extend(pending, table, out);
            }
            table.pop();
        }
    }

    /// `G(X) = Φ(rep_X)`.
    pub fn to_copresheaf(&self, phi: &ModuleMap) -> Result<Copresheaf> {
        let values = self.reps.iter().map(|&r| phi.table[r]).collect();
        self.copresheaves.copresheaf(values)
    }

    /// `Φ(F) = ⋁_X G(X)·F(X)`.
    pub fn to_module_map(&self, g: &Copresheaf) -> Result<ModuleMap> {
        let n = &self.target;
        let table = self
            .lattice
            .presheaves
            .iter()
            .map(|f| {
                n.join(
                    f.values()
                        .iter()
                        .zip(g.values())
                        .map(|(&fx, &gx)| n.act(fx, gx)),
                )
            })
            .collect();
        self.module_map(table)
    }

    pub fn check_bijection(&self) -> Result<SuiteReport> {
        let maps = self.enumerate_module_maps();
        let copresheaves = self.copresheaves.enumerate()?;
        let mut report = SuiteReport::new();

        let mut landed = Tally::default();
        let mut round = Tally::default();
        for phi in &maps {
            match self.to_copresheaf(phi) {
                Ok(g) => {
                    landed.record(true, String::new);
                    let back = self.to_module_map(&g);
                    round.record(back.as_ref() == Ok(phi), || format!("Φ = {:?}", phi.table));
                }
                Err(e) => landed.record(false, || format!("Φ = {:?}: {e}", phi.table)),
            }
        }
        report.push(landed.into_check("module maps give copresheaves"));
        report.push(round.into_check("round trip from module maps"));

        let mut landed = Tally::default();
        let mut round = Tally::default();
        for g in &copresheaves {
            match self.to_module_map(g) {
                Ok(phi) => {
                    landed.record(true, String::new);
                    let back = self.to_copresheaf(&phi);
                    round.record(back.as_ref() == Ok(g), || self.copresheaves.describe(g));
                }
                Err(e) => landed.record(false, || format!("{}: {e}", self.copresheaves.describe(g))),
            }
        }
        report.push(landed.into_check("copresheaves give module maps"));
        report.push(round.into_check("round trip from copresheaves"));

        let (a, b) = (maps.len(), copresheaves.len());
        report.push(if a == b {
            Check::pass("equal cardinalities", a as u64)
        } else {
            Check::fail("equal cardinalities", 1, format!("{a} module maps, {b} copresheaves"))
        });
        Ok(report)
    }
}

pub fn check_duality_bijection(category: &EnrichedCategory, target: &ModuleLattice) -> Result<SuiteReport> {
    Duality::new(category.clone(), target.clone())?.check_bijection()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::trivial_category;
    use crate::labels::LabelSet;
    use crate::presheaf::yoneda_copresheaf;
    use crate::quantale::Quantale;
    use std::sync::Arc;

    fn arrow(base: Arc<Quantale>) -> EnrichedCategory {
        let top = base.top();
        let bot = base.bottom();
        let objects = LabelSet::unpointed(["x", "y"]).unwrap();
        EnrichedCategory::new(base, objects, vec![vec![top, top], vec![bot, top]]).unwrap()
    }

    #[test]
    fn evaluation_is_a_module_map() {
        let base = Arc::new(Quantale::boolean());
        let c = arrow(base.clone());
        let d = Duality::new(c.clone(), ModuleLattice::regular(base, Side::Right)).unwrap();
        for x in 0..2 {
            let table = d.lattice().presheaves.iter().map(|f| f.values()[x]).collect();
            let ev = d.module_map(table).unwrap();
            let g = d.to_copresheaf(&ev).unwrap();
            let corep: Vec<usize> = (0..2).map(|y| c.hom(x, y)).collect();
            assert_eq!(g.values(), corep.as_slice());
            assert_eq!(d.to_module_map(&g).unwrap(), ev);
        }
    }

    #[test]
    fn yoneda_gives_the_identity() {
        let base = Arc::new(Quantale::lukasiewicz(2));
        let c = arrow(base);
        let space = PresheafSpace::over_self(c.clone()).unwrap();
        let (lattice, _, y) = yoneda_copresheaf(&space).unwrap();
        let d = Duality::new(c, lattice.module.clone()).unwrap();
        let id: Vec<usize> = (0..lattice.len()).collect();
        assert_eq!(d.to_module_map(&y).unwrap().table(), id.as_slice());
    }

    #[test]
    fn bijection_over_boolean_arrow() {
        let base = Arc::new(Quantale::boolean());
        let report = check_duality_bijection(&arrow(base.clone()), &ModuleLattice::regular(base, Side::Right)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.get("equal cardinalities").unwrap().cases, 3);
    }

    #[test]
    fn bijection_over_trivial_category() {
        let base = Arc::new(Quantale::lukasiewicz(2));
        let c = trivial_category(base.clone(), &LabelSet::unpointed(["x", "y"]).unwrap());
        let report = check_duality_bijection(&c, &ModuleLattice::regular(base, Side::Right)).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn broken_maps_are_rejected() {
        let base = Arc::new(Quantale::boolean());
        let d = Duality::new(arrow(base.clone()), ModuleLattice::regular(base, Side::Right)).unwrap();
        let top = vec![1; d.lattice().len()];
        let err = d.module_map(top).unwrap_err();
        assert!(matches!(err, Error::LawViolated { law, .. } if law == "join preservation"));
    }

    #[test]
    fn wrong_side_is_rejected() {
        let base = Arc::new(Quantale::boolean());
        let left = ModuleLattice::regular(base.clone(), Side::Left);
        assert!(matches!(Duality::new(arrow(base), left), Err(Error::Invalid(_))));
    }
}
