//! Exhaustive sweeps over a presheaf space. Each returns a report whose
//! checks count the cases visited.

use crate::enriched::EnrichedFunctor;
use crate::error::{Error, Result};
use crate::module::ModuleLattice;
use crate::presheaf::{pullback, pushforward, Presheaf, PresheafSpace};
use crate::report::{SuiteReport, Tally};

/// Families larger than this are sampled by pairs instead of all subsets.
const MAX_SUBSET_FAMILY: usize = 16;

/// `rep_X ⊗ m ≤ F ⟺ m ≤ F(X)` for every presheaf, object and element.
pub fn yoneda_suite(space: &PresheafSpace) -> Result<SuiteReport> {
    let all = space.enumerate()?;
    let c = space.category();
    let m = space.module();
    let mut free = Tally::default();
    let mut yoneda = Tally::default();
    for x in 0..c.len() {
        for v in m.elements() {
            let fr = space.free_presheaf(x, v)?;
            free.record(space.validate_presheaf(fr.values()).passed(), || {
                format!("rep_{} ⊗ {}", c.object_name(x), m.name(v))
            });
            for f in &all {
                let check = space.yoneda_check(x, v, f)?;
                yoneda.record(check.holds(), || {
                    format!("X={}, m={}, F=({})", c.object_name(x), m.name(v), space.describe(f))
                });
            }
        }
    }
    let mut report = SuiteReport::new();
    report.push(free.into_check("free presheaves validate"));
    report.push(yoneda.into_check("Yoneda biconditional"));
    Ok(report)
}

/// `F = ⋁_X rep_X ⊗ F(X)` for every presheaf.
pub fn density_suite(space: &PresheafSpace) -> Result<SuiteReport> {
    let mut t = Tally::default();
    for f in space.enumerate()? {
        t.record(space.density_decompose(&f).holds, || space.describe(&f));
    }
    let mut report = SuiteReport::new();
    report.push(t.into_check("density"));
    Ok(report)
}

fn families(n: usize) -> Vec<Vec<usize>> {
    if n <= MAX_SUBSET_FAMILY {
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut out = vec![Vec::new(), (0..n).collect()];
        for i in 0..n {
            for j in i..n {
                out.push(vec![i, j]);
            }
        }
        out
    }
}

/// Pointwise joins and meets of families of presheaves: they validate,
/// commute with evaluation, and are the least upper (greatest lower)
/// bounds among all presheaves.
pub fn colimit_suite(space: &PresheafSpace) -> Result<SuiteReport> {
    let all = space.enumerate()?;
    let c = space.category();
    let m = space.module();
    let mut valid = [Tally::default(), Tally::default()];
    let mut ev = [Tally::default(), Tally::default()];
    let mut extremal = [Tally::default(), Tally::default()];
    for family in families(all.len()) {
        let fs: Vec<&Presheaf> = family.iter().map(|&i| &all[i]).collect();
        let name = || {
            fs.iter()
                .map(|f| format!("({})", space.describe(f)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let join = space.join_presheaves(fs.iter().copied());
        let meet = space.meet_presheaves(fs.iter().copied());
        valid[0].record(space.validate_presheaf(join.values()).passed(), || format!("join of {{{}}}", name()));
        valid[1].record(space.validate_presheaf(meet.values()).passed(), || format!("meet of {{{}}}", name()));
        let evs_ok = |g: &Presheaf, combine: &dyn Fn(Vec<usize>) -> usize| {
            (0..c.len()).all(|x| g.values()[x] == combine(fs.iter().map(|f| f.values()[x]).collect()))
        };
        ev[0].record(evs_ok(&join, &|vs| m.join(vs)), || name());
        ev[1].record(evs_ok(&meet, &|vs| m.meet(vs)), || name());
        let upper = all
            .iter()
            .filter(|g| fs.iter().all(|f| space.leq_presheaves(f, g)))
            .all(|g| space.leq_presheaves(&join, g));
        let lower = all
            .iter()
            .filter(|g| fs.iter().all(|f| space.leq_presheaves(g, f)))
            .all(|g| space.leq_presheaves(g, &meet));
        extremal[0].record(upper, || name());
        extremal[1].record(lower, || name());
    }
    let [vj, vm] = valid;
    let [ej, em] = ev;
    let [xj, xm] = extremal;
    let mut report = SuiteReport::new();
    report.push(vj.into_check("joins validate"));
    report.push(vm.into_check("meets validate"));
    report.push(ej.into_check("ev preserves joins"));
    report.push(em.into_check("ev preserves meets"));
    report.push(xj.into_check("join is the least upper bound"));
    report.push(xm.into_check("meet is the greatest lower bound"));
    Ok(report)
}

/// The right action of `V` on presheaves over `V` itself.
pub fn tensor_action_suite(space: &PresheafSpace) -> Result<SuiteReport> {
    let all = space.enumerate()?;
    let c = space.category();
    let q = c.base();
    let act = |f: &Presheaf, a: usize| space.tensor_action(f, a);
    let mut valid = Tally::default();
    let mut pointwise = Tally::default();
    let mut unit = Tally::default();
    let mut assoc = Tally::default();
    let mut dist_f = Tally::default();
    let mut dist_a = Tally::default();
    let mut reps = Tally::default();
    for f in &all {
        unit.record(act(f, q.unit())? == *f, || space.describe(f));
        for a in q.elements() {
            let fa = act(f, a)?;
            valid.record(space.validate_presheaf(fa.values()).passed(), || {
                format!("({})⊗{}", space.describe(f), q.name(a))
            });
            let expected: Vec<usize> = f.values().iter().map(|&v| q.tensor(v, a)).collect();
            pointwise.record(fa.values() == expected.as_slice(), || space.describe(f));
            for b in q.elements() {
                let lhs = act(&fa, b)?;
                let rhs = act(f, q.tensor(a, b))?;
                assoc.record(lhs == rhs, || format!("({})⊗{}⊗{}", space.describe(f), q.name(a), q.name(b)));
                let lhs = act(f, q.join2(a, b))?;
                let rhs = space.join_presheaves([&fa, &act(f, b)?]);
                dist_a.record(lhs == rhs, || format!("({})⊗({}∨{})", space.describe(f), q.name(a), q.name(b)));
            }
            let bottom = space.join_presheaves([]);
            dist_a.record(act(f, q.bottom())? == bottom, || format!("({})⊗⊥", space.describe(f)));
            for g in &all {
                let lhs = act(&space.join_presheaves([f, g]), a)?;
                let rhs = space.join_presheaves([&fa, &act(g, a)?]);
                dist_f.record(lhs == rhs, || {
                    format!("(({})∨({}))⊗{}", space.describe(f), space.describe(g), q.name(a))
                });
            }
            dist_f.record(act(&space.join_presheaves([]), a)? == space.join_presheaves([]), || {
                format!("⊥⊗{}", q.name(a))
            });
        }
    }
    for x in 0..c.len() {
        let rep = space.rep(x)?;
        for a in q.elements() {
            reps.record(act(&rep, a)? == space.free_presheaf(x, a)?, || {
                format!("rep_{}⊗{}", c.object_name(x), q.name(a))
            });
        }
    }
    let mut report = SuiteReport::new();
    report.push(valid.into_check("action validates"));
    report.push(pointwise.into_check("action is pointwise"));
    report.push(unit.into_check("unit"));
    report.push(assoc.into_check("associativity"));
    report.push(dist_f.into_check("join-distributivity in the presheaf"));
    report.push(dist_a.into_check("join-distributivity in the scalar"));
    report.push(reps.into_check("representables act freely"));
    Ok(report)
}

/// Presheaves on a category whose homs are all the unit: every presheaf is
/// constant and each evaluation is an order isomorphism onto the module.
pub fn trivial_suite(space: &PresheafSpace) -> Result<SuiteReport> {
    let c = space.category();
    let unit = c.base().unit();
    if c.hom_table().iter().flatten().any(|&h| h != unit) {
        return Err(Error::Invalid("the category is not trivial".into()));
    }
    let all = space.enumerate()?;
    let m = space.module();
    let mut constant = Tally::default();
    for f in &all {
        constant.record(f.values().iter().all(|&v| v == f.values()[0]), || space.describe(f));
    }
    let mut iso = Tally::default();
    for x in 0..c.len() {
        let mut hit = vec![0usize; m.len()];
        for f in &all {
            hit[f.values()[x]] += 1;
        }
        iso.record(hit.iter().all(|&h| h == 1), || format!("ev_{} is not bijective", c.object_name(x)));
        for f in &all {
            for g in &all {
                let ok = space.leq_presheaves(f, g) == m.leq(f.values()[x], g.values()[x]);
                iso.record(ok, || {
                    format!("ev_{} on ({}) and ({})", c.object_name(x), space.describe(f), space.describe(g))
                });
            }
        }
    }
    let mut report = SuiteReport::new();
    report.push(constant.into_check("presheaves are constant"));
    report.push(iso.into_check("evaluation is an order isomorphism"));
    Ok(report)
}

/// Pullback and pushforward along an enriched functor.
pub fn functoriality_suite(phi: &EnrichedFunctor, module: &ModuleLattice) -> Result<SuiteReport> {
    let source = PresheafSpace::new(phi.source.clone(), module.clone())?;
    let target = PresheafSpace::new(phi.target.clone(), module.clone())?;
    let fs = source.enumerate()?;
    let gs = target.enumerate()?;
    let mut adjunction = Tally::default();
    let mut pushed = Vec::with_capacity(fs.len());
    for f in &fs {
        pushed.push(pushforward(phi, module, f)?);
    }
    let mut pulled = Vec::with_capacity(gs.len());
    for g in &gs {
        pulled.push(pullback(phi, module, g)?);
    }
    for (f, pf) in fs.iter().zip(&pushed) {
        for (g, pg) in gs.iter().zip(&pulled) {
            let ok = target.leq_presheaves(pf, g) == source.leq_presheaves(f, pg);
            adjunction.record(ok, || format!("F=({}), G=({})", source.describe(f), target.describe(g)));
        }
    }
    let mut reps = Tally::default();
    for x in 0..phi.source.len() {
        for v in module.elements() {
            let ok = pushforward(phi, module, &source.free_presheaf(x, v)?)? == target.free_presheaf(x, v)?;
            reps.record(ok, || format!("rep_{}⊗{}", phi.source.object_name(x), module.name(v)));
        }
    }
    let mut report = SuiteReport::new();
    report.push(adjunction.into_check("pushforward ⊣ pullback"));
    report.push(reps.into_check("free presheaves are preserved"));
    if source.is_self() {
        let q = module.base();
        let mut equi = Tally::default();
        for (f, pf) in fs.iter().zip(&pushed) {
            for a in q.elements() {
                let lhs = pushforward(phi, module, &source.tensor_action(f, a)?)?;
                let rhs = target.tensor_action(pf, a)?;
                equi.record(lhs == rhs, || format!("({})⊗{}", source.describe(f), q.name(a)));
            }
        }
        report.push(equi.into_check("pushforward is equivariant"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::{trivial_category, EnrichedCategory};
    use crate::labels::LabelSet;
    use crate::module::Side;
    use crate::quantale::Quantale;
    use std::sync::Arc;

    fn objects() -> LabelSet {
        LabelSet::unpointed(["x", "y"]).unwrap()
    }

    #[test]
    fn suites_pass_on_lukasiewicz() {
        let q = Arc::new(Quantale::lukasiewicz(3));
        let c = EnrichedCategory::validated(q, objects(), vec![vec![3, 1], vec![2, 3]]).unwrap();
        let s = PresheafSpace::over_self(c).unwrap();
        for report in [
            yoneda_suite(&s).unwrap(),
            density_suite(&s).unwrap(),
            colimit_suite(&s).unwrap(),
            tensor_action_suite(&s).unwrap(),
        ] {
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn trivial_suite_on_skew() {
        let q = Arc::new(Quantale::skew_chain());
        let s = PresheafSpace::over_self(trivial_category(q.clone(), &objects())).unwrap();
        assert!(trivial_suite(&s).unwrap().passed());
        let c = EnrichedCategory::validated(q, objects(), vec![vec![3, 0], vec![0, 3]]).unwrap();
        let s = PresheafSpace::over_self(c).unwrap();
        assert!(trivial_suite(&s).is_err());
    }

    #[test]
    fn functoriality_along_an_inclusion() {
        let q = Arc::new(Quantale::boolean());
        let discrete = EnrichedCategory::validated(q.clone(), objects(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let arrow = EnrichedCategory::validated(q.clone(), objects(), vec![vec![1, 1], vec![0, 1]]).unwrap();
        let phi = EnrichedFunctor {
            source: discrete,
            target: arrow,
        };
        let m = ModuleLattice::regular(q, Side::Left);
        let report = functoriality_suite(&phi, &m).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks.len(), 3);
    }

    #[test]
    fn family_sampling() {
        assert_eq!(families(3).len(), 8);
        assert_eq!(families(17).len(), 2 + 17 * 18 / 2);
    }
}
