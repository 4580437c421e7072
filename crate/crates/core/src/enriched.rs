//! Categories enriched in a finite quantale with a fixed object set, read
//! as `Assoc_S`-algebras: the value on a graph is the ordered tensor of its
//! edge homs, and every morphism of graphs gives an inequality.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_graph_morphisms, make_generator, Generator, Graph, GraphMorphism,
};
use crate::labels::{LabelSet, Vertex};
use crate::operad::OperadTag;
use crate::quantale::{reverse_quantale, Quantale};
use crate::report::{Check, SuiteReport, Tally};
use crate::simplex::{cut_morphism, DeltaOpMorphism, LabeledSimplex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedCategory {
    base: Arc<Quantale>,
    objects: LabelSet,
    hom: Vec<Vec<usize>>,
}

impl EnrichedCategory {
    /// Checks only the shape of `hom`; the laws are checked by
    /// [`validate_category`].
    pub fn new(base: Arc<Quantale>, objects: LabelSet, hom: Vec<Vec<usize>>) -> Result<Self> {
        let n = objects.len();
        if hom.len() != n || hom.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: hom.len(),
            });
        }
        if let Some(&bad) = hom.iter().flatten().find(|&&v| v >= base.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: base.len() - 1,
            });
        }
        Ok(EnrichedCategory {
            base,
            objects: objects.with_pointed(false),
            hom,
        })
    }

    /// As [`EnrichedCategory::new`], then rejects tables breaking a law.
    pub fn validated(base: Arc<Quantale>, objects: LabelSet, hom: Vec<Vec<usize>>) -> Result<Self> {
        let c = EnrichedCategory::new(base, objects, hom)?;
        if let Some(fail) = validate_category(&c).first_failure() {
            return Err(Error::LawViolated {
                law: fail.name.clone(),
                witness: fail.witness.clone().unwrap_or_default(),
            });
        }
        Ok(c)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn objects(&self) -> &LabelSet {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, x: usize, y: usize) -> usize {
        self.hom[x][y]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn object_name(&self, x: usize) -> &str {
        self.objects.name(x)
    }

    pub fn is_valid(&self) -> bool {
        validate_category(self).passed()
    }

    /// Every valid category over `base` on `objects`, in lexicographic
    /// order of the hom table.
    pub fn enumerate(base: &Arc<Quantale>, objects: &LabelSet) -> Vec<EnrichedCategory> {
        let n = objects.len();
        let k = base.len();
        let cells = n * n;
        let total = k.checked_pow(cells as u32).expect("hom space too large");
        (0..total)
            .filter_map(|mut code| {
                let mut flat = vec![0; cells];
                for slot in flat.iter_mut().rev() {
                    *slot = code % k;
                    code /= k;
                }
                let hom = flat.chunks(n).map(<[usize]>::to_vec).collect();
                let c = EnrichedCategory::new(base.clone(), objects.clone(), hom).ok()?;
                c.is_valid().then_some(c)
            })
            .collect()
    }
}

/// Checks `unit ≤ hom(X,X)` (`unit law`) and
/// `hom(X,Y)⊗hom(Y,Z) ≤ hom(X,Z)` (`composition law`).
pub fn validate_category(c: &EnrichedCategory) -> SuiteReport {
    let q = &c.base;
    let n = c.len();
    let name = |x: usize| c.object_name(x);
    let mut report = SuiteReport::new();
    let witness = (0..n)
        .find(|&x| !q.leq(q.unit(), c.hom[x][x]))
        .map(|x| format!("unit ≰ hom({},{})", name(x), name(x)));
    report.push(Check::from_witness("unit law", n as u64, witness));

    let mut t = Tally::default();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let composite = q.tensor(c.hom[x][y], c.hom[y][z]);
                t.record(q.leq(composite, c.hom[x][z]), || {
                    format!("({},{},{})", name(x), name(y), name(z))
                });
            }
        }
    }
    report.push(t.into_check("composition law"));
    report
}

/// `C^op` over `V^rev`: `C^op(X,Y) = C(Y,X)`.
pub fn opposite(c: &EnrichedCategory) -> EnrichedCategory {
    let n = c.len();
    EnrichedCategory {
        base: Arc::new(reverse_quantale(&c.base)),
        objects: c.objects.clone(),
        hom: (0..n).map(|x| (0..n).map(|y| c.hom[y][x]).collect()).collect(),
    }
}

/// `1_S`: every hom is the unit.
pub fn trivial_category(base: Arc<Quantale>, objects: &LabelSet) -> EnrichedCategory {
    let n = objects.len();
    let unit = base.unit();
    EnrichedCategory {
        base,
        objects: objects.with_pointed(false),
        hom: vec![vec![unit; n]; n],
    }
}

fn check_labels(c: &EnrichedCategory, g: &Graph) -> Result<()> {
    if g.labels() != &c.objects {
        return Err(Error::LabelMismatch);
    }
    Ok(())
}

fn edge_hom(c: &EnrichedCategory, (s, t): (Vertex, Vertex)) -> usize {
    match (s, t) {
        (Vertex::Label(x), Vertex::Label(y)) => c.hom[x][y],
        _ => unreachable!("unpointed graphs have no basepoint edges"),
    }
}

/// The ordered tensor of the edge homs; `∅ ↦ unit`.
pub fn evaluate_on_graph(c: &EnrichedCategory, g: &Graph) -> Result<usize> {
    check_labels(c, g)?;
    Ok(c.base.tensor_all(g.edges().iter().map(|&e| edge_hom(c, e))))
}

/// For each target edge, the ordered tensor over its fiber lies below the
/// target hom (the unit for an empty fiber). Deleted edges impose nothing.
pub fn evaluate_morphism_inequality(c: &EnrichedCategory, m: &GraphMorphism) -> Result<SuiteReport> {
    check_labels(c, m.source())?;
    check_labels(c, m.target())?;
    let q = &c.base;
    let mut t = Tally::default();
    for (i, fiber) in m.fibers().iter().enumerate() {
        let lhs = q.tensor_all(fiber.iter().map(|&e| edge_hom(c, m.source().edge(e))));
        let rhs = edge_hom(c, m.target().edge(i));
        t.record(q.leq(lhs, rhs), || {
            format!(
                "fiber over {} evaluates to {} ≰ {}",
                m.target().edge_name(i),
                q.name(lhs),
                q.name(rhs)
            )
        });
    }
    let mut report = SuiteReport::new();
    report.push(t.into_check("algebra inequalities"));
    Ok(report)
}

/// An identity-on-objects enriched functor `source → target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedFunctor {
    pub source: EnrichedCategory,
    pub target: EnrichedCategory,
}

pub fn is_enriched_functor(f: &EnrichedFunctor) -> Result<SuiteReport> {
    let (c, d) = (&f.source, &f.target);
    if c.base != d.base {
        return Err(Error::BaseMismatch);
    }
    if c.objects != d.objects {
        return Err(Error::ObjectMismatch);
    }
    let q = &c.base;
    let mut t = Tally::default();
    for x in 0..c.len() {
        for y in 0..c.len() {
            t.record(q.leq(c.hom[x][y], d.hom[x][y]), || {
                format!(
                    "hom({},{}): {} ≰ {}",
                    c.object_name(x),
                    c.object_name(y),
                    q.name(c.hom[x][y]),
                    q.name(d.hom[x][y])
                )
            });
        }
    }
    let mut report = SuiteReport::new();
    report.push(t.into_check("hom inequalities"));
    Ok(report)
}

/// The algebra inequalities hold on `Cut_S(m)` for every Δ-morphism between
/// chains of at most `max_len` vertices.
pub fn check_cut_soundness(c: &EnrichedCategory, max_len: usize) -> Check {
    let chains = LabeledSimplex::enumerate(&c.objects, max_len);
    let tallies: Vec<Tally> = chains
        .par_iter()
        .map(|a| {
            let mut t = Tally::default();
            for b in &chains {
                for m in DeltaOpMorphism::enumerate(a, b) {
                    let report = evaluate_morphism_inequality(c, &cut_morphism(&m)).unwrap();
                    t.record(report.passed(), || format!("{m}: {:?}", report.first_failure()));
                }
            }
            t
        })
        .collect();
    tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .into_check("Cut_S soundness")
}

/// Whether the inequalities hold on the add-loop and contraction
/// generators.
pub fn generators_hold(c: &EnrichedCategory) -> bool {
    let vertices: Vec<Vertex> = c.objects.vertices();
    let mut gens = Vec::new();
    for &x in &vertices {
        gens.push(Generator::AddLoop(x));
        for &y in &vertices {
            for &z in &vertices {
                gens.push(Generator::ContractPath(x, y, z));
            }
        }
    }
    gens.into_iter().all(|g| {
        let m = make_generator(&c.objects, g).expect("generators over the object set");
        evaluate_morphism_inequality(c, &m).unwrap().passed()
    })
}

/// The inequalities hold on every valid morphism between graphs with at
/// most `max_edges` edges exactly when they hold on the generators. For
/// `max_edges ≥ 2` the generators are among the enumerated morphisms.
pub fn check_closure(c: &EnrichedCategory, max_edges: usize) -> Check {
    let objects = OperadTag::AssocS.objects_up_to(&c.objects, max_edges);
    let holds = generators_hold(c);
    let results: Vec<(Tally, bool)> = objects
        .par_iter()
        .map(|src| {
            let mut t = Tally::default();
            let mut any_failed = false;
            for tgt in &objects {
                for m in enumerate_graph_morphisms(src, tgt, 2 * max_edges).unwrap() {
                    let ok = evaluate_morphism_inequality(c, &m).unwrap().passed();
                    any_failed |= !ok;
                    t.record(ok || !holds, || format!("generators hold but {m} fails"));
                }
            }
            (t, any_failed)
        })
        .collect();
    let mut any_failed = false;
    let mut t = Tally::default();
    for (part, failed) in results {
        t = t.merge(part);
        any_failed |= failed;
    }
    if !holds {
        t.record(any_failed, || "generators fail but every morphism passes".to_string());
    }
    t.into_check("closure under generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::reverse_morphism;

    fn boolean() -> Arc<Quantale> {
        Arc::new(Quantale::boolean())
    }

    fn xy() -> LabelSet {
        LabelSet::unpointed(["x", "y"]).unwrap()
    }

    fn preorder() -> EnrichedCategory {
        EnrichedCategory::new(boolean(), xy(), vec![vec![1, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn boolean_preorder() {
        assert!(validate_category(&preorder()).passed());
    }

    #[test]
    fn missing_composite() {
        let xyz = LabelSet::unpointed(["x", "y", "z"]).unwrap();
        let c = EnrichedCategory::new(boolean(), xyz, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let report = validate_category(&c);
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "composition law");
        assert_eq!(fail.witness.as_deref(), Some("(x,y,z)"));
        assert!(matches!(
            EnrichedCategory::validated(boolean(), c.objects().clone(), c.hom_table().to_vec()),
            Err(Error::LawViolated { .. })
        ));
    }

    #[test]
    fn lukasiewicz_triangle_inequality() {
        // hom(x,y)⊗hom(y,z) = max(0, 3+3−3) = 3 > hom(x,z) = 1
        let l3 = Arc::new(Quantale::lukasiewicz(3));
        let xyz = LabelSet::unpointed(["x", "y", "z"]).unwrap();
        let c = EnrichedCategory::new(l3, xyz, vec![vec![3, 3, 1], vec![0, 3, 3], vec![0, 0, 3]]).unwrap();
        let report = validate_category(&c);
        assert_eq!(report.first_failure().unwrap().witness.as_deref(), Some("(x,y,z)"));
    }

    #[test]
    fn opposites() {
        let c = preorder();
        let op = opposite(&c);
        assert_eq!(op.hom_table(), &[vec![1, 0], vec![1, 1]]);
        assert_eq!(opposite(&op), c);
        assert!(op.is_valid());
        let l3 = Arc::new(Quantale::skew_chain());
        for c in EnrichedCategory::enumerate(&l3, &xy()) {
            assert!(opposite(&c).is_valid());
        }
    }

    #[test]
    fn trivial_categories() {
        let c = trivial_category(boolean(), &xy());
        assert_eq!(c.hom_table(), &[vec![1, 1], vec![1, 1]]);
        assert!(c.is_valid());
        let t = Arc::new(Quantale::trivial());
        assert_eq!(EnrichedCategory::enumerate(&t, &xy()), vec![trivial_category(t, &xy())]);
    }

    #[test]
    fn evaluation() {
        let c = preorder();
        let g = Graph::from_names(&xy(), &[("x", "y")]).unwrap();
        assert_eq!(evaluate_on_graph(&c, &g).unwrap(), 1);
        assert_eq!(evaluate_on_graph(&c, &Graph::empty(xy())).unwrap(), c.base().unit());
        let g = Graph::from_names(&xy(), &[("x", "y"), ("y", "x")]).unwrap();
        assert_eq!(evaluate_on_graph(&c, &g).unwrap(), 0);
        let pointed = Graph::empty(xy().with_pointed(true));
        assert_eq!(evaluate_on_graph(&c, &pointed), Err(Error::LabelMismatch));
    }

    #[test]
    fn generators_are_the_laws() {
        let xyz = LabelSet::unpointed(["x", "y", "z"]).unwrap();
        let bad = EnrichedCategory::new(boolean(), xyz.clone(), vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let (x, y, z) = (Vertex::Label(0), Vertex::Label(1), Vertex::Label(2));
        let contract = make_generator(&xyz, Generator::ContractPath(x, y, z)).unwrap();
        assert!(!evaluate_morphism_inequality(&bad, &contract).unwrap().passed());
        let add = make_generator(&xyz, Generator::AddLoop(x)).unwrap();
        assert!(evaluate_morphism_inequality(&bad, &add).unwrap().passed());
        let no_unit = EnrichedCategory::new(boolean(), xyz.clone(), vec![vec![0; 3]; 3]).unwrap();
        assert!(!evaluate_morphism_inequality(&no_unit, &add).unwrap().passed());
        let delete = make_generator(&xyz, Generator::Delete(x, y)).unwrap();
        assert!(evaluate_morphism_inequality(&no_unit, &delete).unwrap().passed());
    }

    #[test]
    fn functors() {
        let c = preorder();
        let f = EnrichedFunctor {
            source: c.clone(),
            target: c.clone(),
        };
        assert!(is_enriched_functor(&f).unwrap().passed());
        let discrete = EnrichedCategory::new(boolean(), xy(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let f = EnrichedFunctor {
            source: discrete.clone(),
            target: c.clone(),
        };
        assert!(is_enriched_functor(&f).unwrap().passed());
        let back = EnrichedFunctor {
            source: c.clone(),
            target: discrete,
        };
        assert!(!is_enriched_functor(&back).unwrap().passed());
        let other = EnrichedFunctor {
            source: c.clone(),
            target: trivial_category(Arc::new(Quantale::lukasiewicz(3)), &xy()),
        };
        assert_eq!(is_enriched_functor(&other), Err(Error::BaseMismatch));
    }

    #[test]
    fn lukasiewicz_categories_map_into_trivial() {
        // the unit of L_3 is its top, so every hom lies below it
        let l3 = Arc::new(Quantale::lukasiewicz(3));
        for c in EnrichedCategory::enumerate(&l3, &xy()) {
            let f = EnrichedFunctor {
                target: trivial_category(l3.clone(), &xy()),
                source: c,
            };
            assert!(is_enriched_functor(&f).unwrap().passed());
        }
    }

    #[test]
    fn soundness_and_closure() {
        let base = Arc::new(Quantale::skew_chain());
        for c in EnrichedCategory::enumerate(&base, &xy()).iter().step_by(7) {
            assert!(check_cut_soundness(c, 4).passed);
            assert!(check_closure(c, 2).passed);
        }
        let bad = EnrichedCategory::new(boolean(), xy(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(!generators_hold(&bad));
        assert!(check_closure(&bad, 2).passed);
    }

    #[test]
    fn opposite_intertwines_reverse() {
        let base = Arc::new(Quantale::skew_chain());
        let objects = OperadTag::AssocS.objects_up_to(&xy(), 2);
        for c in EnrichedCategory::enumerate(&base, &xy()).iter().step_by(5) {
            let op = opposite(c);
            for g in &objects {
                let turned = Graph::new(xy(), g.edges().iter().rev().map(|&(s, t)| (t, s)).collect()).unwrap();
                assert_eq!(evaluate_on_graph(&op, g).unwrap(), evaluate_on_graph(c, &turned).unwrap());
                for h in &objects {
                    for m in enumerate_graph_morphisms(g, h, 4).unwrap() {
                        assert_eq!(
                            evaluate_morphism_inequality(&op, &m).unwrap().passed(),
                            evaluate_morphism_inequality(c, &reverse_morphism(&m)).unwrap().passed()
                        );
                    }
                }
            }
        }
    }
}
