//! Presheaves `F : C^op → M` and copresheaves `G : C → N` for a category
//! enriched in a finite quantale, valued in finite modules.
//!
//! A presheaf is a value table `F(X) ∈ M` with `hom(X,Y)·F(Y) ≤ F(X)`. Its
//! category and module live in the [`PresheafSpace`] that interprets it.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::enriched::{is_enriched_functor, opposite, validate_category, EnrichedCategory, EnrichedFunctor};
use crate::error::{Error, Result};
use crate::module::{ModuleLattice, Side};
use crate::report::{SuiteReport, Tally};

/// Default cap on the number of candidate tables `|M|^|S|` enumerated.
pub const DEFAULT_MAX_ENUM: u128 = 100_000;

/// The enumeration cap, overridden by `OPLAB_MAX_ENUM`.
pub fn enumeration_bound() -> u128 {
    std::env::var("OPLAB_MAX_ENUM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    values: Vec<usize>,
}

impl Presheaf {
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// A copresheaf table `G(X)`, with `G(X)·hom(X,Y) ≤ G(Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Copresheaf {
    values: Vec<usize>,
}

impl Copresheaf {
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

fn law_violation(report: &SuiteReport) -> Option<Error> {
    report.first_failure().map(|c| Error::LawViolated {
        law: c.name.clone(),
        witness: c.witness.clone().unwrap_or_default(),
    })
}

/// Presheaves on a valid category valued in a left module over its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafSpace {
    category: EnrichedCategory,
    module: ModuleLattice,
}

impl PresheafSpace {
    pub fn new(category: EnrichedCategory, module: ModuleLattice) -> Result<Self> {
        if category.base() != module.base() {
            return Err(Error::BaseMismatch);
        }
        if module.side() != Side::Left {
            return Err(Error::Invalid("presheaves take values in a left module".into()));
        }
        if let Some(e) = law_violation(&validate_category(&category)) {
            return Err(e);
        }
        Ok(PresheafSpace { category, module })
    }

    /// Presheaves valued in `V` acting on itself.
    pub fn over_self(category: EnrichedCategory) -> Result<Self> {
        let module = ModuleLattice::regular(category.base().clone(), Side::Left);
        PresheafSpace::new(category, module)
    }

    pub fn category(&self) -> &EnrichedCategory {
        &self.category
    }

    pub fn module(&self) -> &ModuleLattice {
        &self.module
    }

    pub fn is_self(&self) -> bool {
        self.module.is_regular()
    }

    fn require_self(&self) -> Result<()> {
        if self.is_self() {
            Ok(())
        } else {
            Err(Error::Invalid("this operation needs V acting on itself".into()))
        }
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.category
            .objects()
            .index_of(name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    fn check_object(&self, x: usize) -> Result<()> {
        if x < self.category.len() {
            Ok(())
        } else {
            Err(Error::UnknownObject(format!("#{x}")))
        }
    }

    /// Checks `hom(X,Y)·F(Y) ≤ F(X)` (`action law`).
    pub fn validate_presheaf(&self, values: &[usize]) -> SuiteReport {
        let c = &self.category;
        let m = &self.module;
        let mut report = SuiteReport::new();
        let mut t = Tally::default();
        let shape_ok = values.len() == c.len() && values.iter().all(|&v| v < m.len());
        t.record(shape_ok, || {
            format!("table of {} values for {} objects", values.len(), c.len())
        });
        if shape_ok {
            for x in 0..c.len() {
                for y in 0..c.len() {
                    let lhs = m.act(c.hom(x, y), values[y]);
                    t.record(m.leq(lhs, values[x]), || {
                        format!("({},{})", c.object_name(x), c.object_name(y))
                    });
                }
            }
        }
        report.push(t.into_check("action law"));
        report
    }

    pub fn presheaf(&self, values: Vec<usize>) -> Result<Presheaf> {
        if let Some(e) = law_violation(&self.validate_presheaf(&values)) {
            return Err(e);
        }
        Ok(Presheaf { values })
    }

    /// A presheaf from `(object, element)` name pairs covering every object.
    pub fn presheaf_from_names(&self, pairs: &[(&str, &str)]) -> Result<Presheaf> {
        let mut values = vec![None; self.category.len()];
        for &(x, v) in pairs {
            values[self.object(x)?] = Some(self.module.index_of(v)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| Error::UnknownObject(self.category.object_name(x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.presheaf(values)
    }

    pub fn ev(&self, f: &Presheaf, x: usize) -> Result<usize> {
        self.check_object(x)?;
        Ok(f.values[x])
    }

    pub fn constant(&self, m: usize) -> Result<Presheaf> {
        self.presheaf(vec![m; self.category.len()])
    }

    /// `rep_X(Y) = hom(Y,X)`.
    pub fn rep(&self, x: usize) -> Result<Presheaf> {
        self.require_self()?;
        self.check_object(x)?;
        let c = &self.category;
        Ok(Presheaf {
            values: (0..c.len()).map(|y| c.hom(y, x)).collect(),
        })
    }

    /// `(rep_X ⊗ m)(Y) = hom(Y,X)·m`.
    pub fn free_presheaf(&self, x: usize, m: usize) -> Result<Presheaf> {
        self.check_object(x)?;
        if m >= self.module.len() {
            return Err(Error::UnknownElement(format!("#{m}")));
        }
        let c = &self.category;
        Ok(Presheaf {
            values: (0..c.len()).map(|y| self.module.act(c.hom(y, x), m)).collect(),
        })
    }

    pub fn yoneda_check(&self, x: usize, m: usize, f: &Presheaf) -> Result<YonedaCheck> {
        let free = self.free_presheaf(x, m)?;
        Ok(YonedaCheck {
            free_below: self.leq_presheaves(&free, f),
            element_below: self.module.leq(m, self.ev(f, x)?),
        })
    }

    /// `(F⊗a)(X) = F(X)⊗a`.
    pub fn tensor_action(&self, f: &Presheaf, a: usize) -> Result<Presheaf> {
        self.require_self()?;
        let q = self.category.base();
        if a >= q.len() {
            return Err(Error::UnknownElement(format!("#{a}")));
        }
        Ok(Presheaf {
            values: f.values.iter().map(|&v| q.tensor(v, a)).collect(),
        })
    }

    /// Pointwise join; the empty join is the constant bottom.
    pub fn join_presheaves<'a, I: IntoIterator<Item = &'a Presheaf>>(&self, fs: I) -> Presheaf {
        let m = &self.module;
        let mut values = vec![m.bottom(); self.category.len()];
        for f in fs {
            for (v, &w) in values.iter_mut().zip(&f.values) {
                *v = m.join2(*v, w);
            }
        }
        Presheaf { values }
    }

    /// Pointwise meet; the empty meet is the constant top.
    pub fn meet_presheaves<'a, I: IntoIterator<Item = &'a Presheaf>>(&self, fs: I) -> Presheaf {
        let m = &self.module;
        let mut values = vec![m.top(); self.category.len()];
        for f in fs {
            for (v, &w) in values.iter_mut().zip(&f.values) {
                *v = m.meet2(*v, w);
            }
        }
        Presheaf { values }
    }

    pub fn leq_presheaves(&self, f: &Presheaf, g: &Presheaf) -> bool {
        f.values.iter().zip(&g.values).all(|(&a, &b)| self.module.leq(a, b))
    }

    /// `f = ⋁_X rep_X ⊗ f(X)`, with the components.
    pub fn density_decompose(&self, f: &Presheaf) -> Density {
        let components: Vec<Presheaf> = (0..self.category.len())
            .map(|x| self.free_presheaf(x, f.values[x]).unwrap())
            .collect();
        let join = self.join_presheaves(&components);
        Density {
            holds: &join == f,
            components,
            join,
        }
    }

    fn candidate_count(&self) -> u128 {
        (self.module.len() as u128)
            .checked_pow(self.category.len() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Every presheaf, in lexicographic order of the value table.
    pub fn enumerate(&self) -> Result<Vec<Presheaf>> {
        let size = self.candidate_count();
        let bound = enumeration_bound();
        if size > bound {
            return Err(Error::SizeBoundExceeded { size, bound });
        }
        let n = self.category.len();
        let k = self.module.len() as u128;
        Ok((0..size)
            .into_par_iter()
            .filter_map(|mut code| {
                let mut values = vec![0; n];
                for slot in values.iter_mut().rev() {
                    *slot = (code % k) as usize;
                    code /= k;
                }
                self.validate_presheaf(&values)
                    .passed()
                    .then_some(Presheaf { values })
            })
            .collect())
    }

    /// All presheaves as a right `V`-module under [`Self::tensor_action`].
    pub fn presheaf_lattice(&self) -> Result<PresheafLattice> {
        self.require_self()?;
        let presheaves = self.enumerate()?;
        let index: HashMap<Presheaf, usize> = presheaves
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let names: Vec<String> = presheaves.iter().map(|f| self.describe(f)).collect();
        let order = presheaves
            .iter()
            .map(|f| presheaves.iter().map(|g| self.leq_presheaves(f, g)).collect())
            .collect();
        let lattice = crate::lattice::FiniteLattice::new(names, order)?;
        let q = self.category.base();
        let act = q
            .elements()
            .map(|a| {
                presheaves
                    .iter()
                    .map(|f| index[&self.tensor_action(f, a).unwrap()])
                    .collect()
            })
            .collect();
        let module = ModuleLattice::from_table(q.clone(), Side::Right, lattice, act)?;
        Ok(PresheafLattice {
            presheaves,
            index,
            module,
        })
    }

    /// `x=1,y=0`
    pub fn describe(&self, f: &Presheaf) -> String {
        let c = &self.category;
        (0..c.len())
            .map(|x| format!("{}={}", c.object_name(x), self.module.name(f.values[x])))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Both sides of the Yoneda biconditional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YonedaCheck {
    /// `rep_X ⊗ m ≤ F`
    pub free_below: bool,
    /// `m ≤ F(X)`
    pub element_below: bool,
}

impl YonedaCheck {
    pub fn holds(self) -> bool {
        self.free_below == self.element_below
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub components: Vec<Presheaf>,
    pub join: Presheaf,
    pub holds: bool,
}

/// The presheaves of a [`PresheafSpace`] over `V` itself, materialized as a
/// right `V`-module whose element `i` is `presheaves[i]`.
#[derive(Debug, Clone)]
pub struct PresheafLattice {
    pub presheaves: Vec<Presheaf>,
    pub index: HashMap<Presheaf, usize>,
    pub module: ModuleLattice,
}

impl PresheafLattice {
    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn index_of(&self, f: &Presheaf) -> usize {
        self.index[f]
    }
}

/// Copresheaves on a valid category valued in a right module, read as
/// presheaves on `C^op` over `V^rev`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopresheafSpace {
    category: EnrichedCategory,
    module: ModuleLattice,
    transported: PresheafSpace,
}

impl CopresheafSpace {
    pub fn new(category: EnrichedCategory, module: ModuleLattice) -> Result<Self> {
        if category.base() != module.base() {
            return Err(Error::BaseMismatch);
        }
        if module.side() != Side::Right {
            return Err(Error::Invalid("copresheaves take values in a right module".into()));
        }
        let transported = PresheafSpace::new(opposite(&category), module.to_opposite_side())?;
        Ok(CopresheafSpace {
            category,
            module,
            transported,
        })
    }

    pub fn category(&self) -> &EnrichedCategory {
        &self.category
    }

    pub fn module(&self) -> &ModuleLattice {
        &self.module
    }

    /// The presheaf space on `C^op` over `V^rev` carrying the same tables.
    pub fn transported(&self) -> &PresheafSpace {
        &self.transported
    }

    /// Checks `G(X)·hom(X,Y) ≤ G(Y)` (`action law`).
    pub fn validate_copresheaf(&self, values: &[usize]) -> SuiteReport {
        self.transported.validate_presheaf(values)
    }

    pub fn copresheaf(&self, values: Vec<usize>) -> Result<Copresheaf> {
        if let Some(e) = law_violation(&self.validate_copresheaf(&values)) {
            return Err(e);
        }
        Ok(Copresheaf { values })
    }

    pub fn copresheaf_from_names(&self, pairs: &[(&str, &str)]) -> Result<Copresheaf> {
        let f = self.transported.presheaf_from_names(pairs)?;
        Ok(Copresheaf { values: f.values })
    }

    pub fn ev(&self, g: &Copresheaf, x: usize) -> Result<usize> {
        self.transported.check_object(x)?;
        Ok(g.values[x])
    }

    pub fn enumerate(&self) -> Result<Vec<Copresheaf>> {
        Ok(self
            .transported
            .enumerate()?
            .into_iter()
            .map(|f| Copresheaf { values: f.values })
            .collect())
    }

    pub fn describe(&self, g: &Copresheaf) -> String {
        self.transported.describe(&Presheaf {
            values: g.values.clone(),
        })
    }
}

/// `𝔜(X) = rep_X`, a copresheaf valued in the presheaf lattice.
pub fn yoneda_copresheaf(space: &PresheafSpace) -> Result<(PresheafLattice, CopresheafSpace, Copresheaf)> {
    let lattice = space.presheaf_lattice()?;
    let co = CopresheafSpace::new(space.category.clone(), lattice.module.clone())?;
    let values = (0..space.category.len())
        .map(|x| lattice.index_of(&space.rep(x).unwrap()))
        .collect();
    let y = co.copresheaf(values)?;
    Ok((lattice, co, y))
}

fn check_functor(phi: &EnrichedFunctor, module: &ModuleLattice) -> Result<()> {
    if phi.source.base() != module.base() {
        return Err(Error::BaseMismatch);
    }
    let report = is_enriched_functor(phi)?;
    if let Some(e) = law_violation(&report) {
        return Err(e);
    }
    Ok(())
}

/// `φ^*(G)(X) = G(X)`, a presheaf on the source of `φ`.
pub fn pullback(phi: &EnrichedFunctor, module: &ModuleLattice, g: &Presheaf) -> Result<Presheaf> {
    check_functor(phi, module)?;
    let source = PresheafSpace::new(phi.source.clone(), module.clone())?;
    source.presheaf(g.values.clone())
}

/// `φ_!(F)(X) = ⋁_Y hom_D(X,Y)·F(Y)`, the least presheaf on the target of
/// `φ` lying above `F`.
pub fn pushforward(phi: &EnrichedFunctor, module: &ModuleLattice, f: &Presheaf) -> Result<Presheaf> {
    check_functor(phi, module)?;
    let d = &phi.target;
    let target = PresheafSpace::new(d.clone(), module.clone())?;
    let values = (0..d.len())
        .map(|x| module.join((0..d.len()).map(|y| module.act(d.hom(x, y), f.values[y]))))
        .collect();
    target.presheaf(values)
}

impl fmt::Display for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

impl fmt::Display for Copresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}
