//! Exhaustive verification of the operad axioms for the graph operads.
//!
//! Over a label set `S` and an edge bound, every object and every morphism
//! is enumerated and the three conditions are checked literally:
//!
//! 1. every object admits an inert lift of every inert map of pointed sets
//!    (and those lifts are cocartesian, checked at a smaller bound);
//! 2. the objects over `⟨n⟩` biject with `O₁ⁿ` via the lifts of `ρ¹…ρⁿ`;
//! 3. morphisms over `f : ⟨n⟩ → ⟨m⟩` biject with the product over `i` of
//!    morphisms over `ρⁱ∘f`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{morphisms_over, Edge, Graph, GraphMorphism};
use crate::labels::{LabelSet, Vertex};
use crate::pointed::PointedMap;
use crate::report::{Check, SuiteReport, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperadTag {
    /// `Assoc_S`: graphs on `S`.
    AssocS,
    /// `Assoc_{S₊}`: graphs on `S ⨿ {⋆}`.
    AssocSPointed,
    /// `LM_S`: graphs on `S₊` with no edge leaving `⋆`.
    LMS,
    /// `RM_S`: graphs on `S₊` with no edge entering `⋆`.
    RMS,
}

impl OperadTag {
    pub fn is_pointed(self) -> bool {
        !matches!(self, OperadTag::AssocS)
    }

    pub fn admits_edge(self, (s, t): Edge) -> bool {
        match self {
            OperadTag::AssocS => !s.is_star() && !t.is_star(),
            OperadTag::AssocSPointed => true,
            OperadTag::LMS => !s.is_star(),
            OperadTag::RMS => !t.is_star(),
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        g.labels().is_pointed() == self.is_pointed()
            && g.edges().iter().all(|&e| self.admits_edge(e))
    }

    /// The label set this operad's graphs live over.
    pub fn vertex_labels(self, labels: &LabelSet) -> LabelSet {
        labels.with_pointed(self.is_pointed())
    }

    /// Every admissible single edge, in vertex order.
    pub fn edge_alphabet(self, labels: &LabelSet) -> Vec<Edge> {
        let vs = self.vertex_labels(labels).vertices();
        let mut out = Vec::new();
        for &s in &vs {
            for &t in &vs {
                if self.admits_edge((s, t)) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// All objects with exactly `n` edges.
    pub fn objects(self, labels: &LabelSet, n: usize) -> Vec<Graph> {
        let over = self.vertex_labels(labels);
        let alphabet = self.edge_alphabet(labels);
        let k = alphabet.len();
        let total = k.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut edges = vec![(Vertex::Star, Vertex::Star); n];
                for slot in edges.iter_mut().rev() {
                    *slot = alphabet[code % k];
                    code /= k;
                }
                Graph::new(over.clone(), edges).expect("alphabet edges are in range")
            })
            .collect()
    }

    pub fn objects_up_to(self, labels: &LabelSet, max_edges: usize) -> Vec<Graph> {
        (0..=max_edges)
            .flat_map(|n| self.objects(labels, n))
            .collect()
    }
}

impl fmt::Display for OperadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperadTag::AssocS => "Assoc_S",
            OperadTag::AssocSPointed => "Assoc_S+",
            OperadTag::LMS => "LM_S",
            OperadTag::RMS => "RM_S",
        };
        f.write_str(s)
    }
}

/// The inert morphism `Γ → Γ'` over an inert `φ`, where `Γ'` keeps the
/// edges `φ⁻¹(1), …, φ⁻¹(k)`.
pub fn inert_lift(g: &Graph, phi: &PointedMap) -> GraphMorphism {
    assert!(phi.is_inert() && phi.domain_size() == g.len());
    let kept: Vec<usize> = (1..=phi.codomain_size())
        .map(|j| phi.fiber(j)[0] - 1)
        .collect();
    let target = g.restrict(&kept);
    let fibers = kept.iter().map(|&e| vec![e]).collect();
    GraphMorphism::from_fibers(g.clone(), target, fibers).expect("restriction is a valid morphism")
}

fn inert_maps(n: usize) -> Vec<PointedMap> {
    (0..=n)
        .flat_map(|k| PointedMap::enumerate(n, k).filter(PointedMap::is_inert))
        .collect()
}

/// Cocartesian-lift checks run on objects with at most this many edges.
pub const COCARTESIAN_EDGE_BOUND: usize = 2;

pub fn check_operad_axioms(tag: OperadTag, labels: &LabelSet, max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new();
    let objects = tag.objects_up_to(labels, max_edges);

    // membership sanity: the enumerated objects are exactly the admissible
    // graphs among all graphs on the vertex set
    let alphabet_size = tag.edge_alphabet(labels).len();
    let vertices = tag.vertex_labels(labels).vertices().len();
    let mut t = Tally::default();
    let all_pairs = vertices * vertices;
    let admissible = (0..all_pairs)
        .filter(|code| {
            let vs = tag.vertex_labels(labels).vertices();
            let e = (vs[code / vertices], vs[code % vertices]);
            let g = Graph::new(tag.vertex_labels(labels), vec![e]).unwrap();
            tag.contains(&g)
        })
        .count();
    t.record(admissible == alphabet_size, || {
        format!("{admissible} admissible single edges, alphabet has {alphabet_size}")
    });
    report.push(t.into_check("single-edge objects"));

    report.push(condition_one(tag, &objects));
    report.push(cocartesian_inert(tag, labels, max_edges.min(COCARTESIAN_EDGE_BOUND)));
    report.extend(condition_two(tag, labels, max_edges));
    report.push(condition_three(&objects));
    report
}

fn condition_one(tag: OperadTag, objects: &[Graph]) -> Check {
    let tallies: Vec<Tally> = objects
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            for phi in inert_maps(g.len()) {
                let lift = inert_lift(g, &phi);
                let ok = tag.contains(lift.target())
                    && lift.is_inert()
                    && lift.pointed_map() == phi
                    && crate::graph::validate_morphism(&lift).is_ok();
                t.record(ok, || format!("no inert lift of {phi} at {g}"));
            }
            t
        })
        .collect();
    tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .into_check("condition (1): inert lifts")
}

/// Every `h : Γ → Γ''` whose base map factors as `u ∘ φ` factors uniquely
/// through the inert lift of `φ`.
fn cocartesian_inert(tag: OperadTag, labels: &LabelSet, bound: usize) -> Check {
    let objects = tag.objects_up_to(labels, bound);
    let tallies: Vec<Tally> = objects
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            for phi in inert_maps(g.len()) {
                let lift = inert_lift(g, &phi);
                for other in &objects {
                    let mut from_g = Vec::new();
                    for base in PointedMap::enumerate(g.len(), other.len()) {
                        morphisms_over(g, other, &base, &mut from_g);
                    }
                    let mut from_lift = Vec::new();
                    for base in PointedMap::enumerate(lift.target().len(), other.len()) {
                        morphisms_over(lift.target(), other, &base, &mut from_lift);
                    }
                    for h in &from_g {
                        let base = h.pointed_map();
                        // does the base map factor through φ?
                        let factors = (1..=g.len()).all(|i| phi.apply(i) != 0 || base.apply(i) == 0);
                        if !factors {
                            continue;
                        }
                        let count = from_lift
                            .iter()
                            .filter(|u| lift.then(u).as_ref() == Ok(h))
                            .count();
                        t.record(count == 1, || {
                            format!("{h} factors {count} times through the lift of {phi}")
                        });
                    }
                }
            }
            t
        })
        .collect();
    tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .into_check("condition (1): inert lifts are cocartesian")
}

fn condition_two(tag: OperadTag, labels: &LabelSet, max_edges: usize) -> SuiteReport {
    let mut report = SuiteReport::new();
    let singles = tag.objects(labels, 1);
    let mut counts = Tally::default();
    let mut segal = Tally::default();
    for n in 0..=max_edges {
        let objects = tag.objects(labels, n);
        let expected = singles.len().pow(n as u32);
        counts.record(objects.len() == expected, || {
            format!("|O_{n}| = {} but |O_1|^{n} = {expected}", objects.len())
        });
        let mut images = HashSet::new();
        for g in &objects {
            let mut tuple = Vec::with_capacity(n);
            for i in 1..=n {
                let rho = PointedMap::rho(n, i).unwrap();
                // the single-edge objects receiving a morphism over ρⁱ
                let hits: Vec<&Graph> = singles
                    .iter()
                    .filter(|y| {
                        let mut out = Vec::new();
                        morphisms_over(g, y, &rho, &mut out);
                        out.iter().any(GraphMorphism::is_inert)
                    })
                    .collect();
                segal.record(hits.len() == 1, || {
                    format!("{} single-edge targets over ρ^{i} at {g}", hits.len())
                });
                if let Some(y) = hits.first() {
                    tuple.push(y.edge(0));
                }
            }
            images.insert(tuple);
        }
        segal.record(images.len() == expected, || {
            format!("O_{n} → O_1^{n} hits {} of {expected} tuples", images.len())
        });
    }
    report.push(counts.into_check("condition (2): |O_n| = |O_1|^n"));
    report.push(segal.into_check("condition (2): O_n → O_1^n bijective"));
    report
}

fn condition_three(objects: &[Graph]) -> Check {
    let tallies: Vec<Tally> = objects
        .par_iter()
        .map(|src| {
            let mut t = Tally::default();
            for tgt in objects {
                let projections: Vec<GraphMorphism> = (1..=tgt.len())
                    .map(|i| inert_lift(tgt, &PointedMap::rho(tgt.len(), i).unwrap()))
                    .collect();
                for f in PointedMap::enumerate(src.len(), tgt.len()) {
                    let mut over_f = Vec::new();
                    morphisms_over(src, tgt, &f, &mut over_f);
                    let mut product = 1usize;
                    for (i, proj) in projections.iter().enumerate() {
                        let rho_f = f.then(&PointedMap::rho(tgt.len(), i + 1).unwrap()).unwrap();
                        let mut factor = Vec::new();
                        morphisms_over(src, proj.target(), &rho_f, &mut factor);
                        product *= factor.len();
                    }
                    let images: HashSet<Vec<GraphMorphism>> = over_f
                        .iter()
                        .map(|m| projections.iter().map(|p| m.then(p).unwrap()).collect())
                        .collect();
                    t.record(over_f.len() == product && images.len() == over_f.len(), || {
                        format!(
                            "{src} → {tgt} over {f}: {} morphisms, product of factors {product}",
                            over_f.len()
                        )
                    });
                }
            }
            t
        })
        .collect();
    tallies
        .into_iter()
        .fold(Tally::default(), Tally::merge)
        .into_check("condition (3): mapping sets decompose")
}

/// Decomposes a graph into its single-edge tensor factors.
pub fn single_edge_factors(g: &Graph) -> Vec<Graph> {
    (0..g.len()).map(|i| g.restrict(&[i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::iso_graphs;

    fn ab() -> LabelSet {
        LabelSet::unpointed(["a", "b"]).unwrap()
    }

    #[test]
    fn fiber_over_two_has_sixteen_objects() {
        assert_eq!(OperadTag::AssocS.objects(&ab(), 2).len(), 16);
        assert_eq!(OperadTag::LMS.objects(&ab(), 1).len(), 6);
        assert_eq!(OperadTag::RMS.objects(&ab(), 1).len(), 6);
        assert_eq!(OperadTag::AssocSPointed.objects(&ab(), 1).len(), 9);
    }

    #[test]
    fn inert_lift_of_rho_one_deletes_second_edge() {
        let g = Graph::from_names(&ab(), &[("a", "b"), ("b", "a")]).unwrap();
        let lift = inert_lift(&g, &PointedMap::rho(2, 1).unwrap());
        assert_eq!(lift.edge_map(), &[Some(0), None]);
        assert_eq!(lift.target(), &Graph::from_names(&ab(), &[("a", "b")]).unwrap());
    }

    #[test]
    fn small_suites_pass() {
        for tag in [OperadTag::AssocS, OperadTag::LMS, OperadTag::RMS, OperadTag::AssocSPointed] {
            let report = check_operad_axioms(tag, &ab(), 2);
            assert!(report.passed(), "{tag}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn membership() {
        let sp = ab().with_pointed(true);
        let g = Graph::from_names(&sp, &[("a", "*")]).unwrap();
        assert!(OperadTag::LMS.contains(&g));
        assert!(!OperadTag::RMS.contains(&g));
        assert!(!OperadTag::AssocS.contains(&g));
        assert!(OperadTag::AssocSPointed.contains(&g));
    }

    #[test]
    fn decomposition_is_unique_up_to_permutation() {
        let s = ab();
        for g in OperadTag::AssocS.objects_up_to(&s, 3) {
            let factors = single_edge_factors(&g);
            let rebuilt = factors
                .iter()
                .fold(Graph::empty(s.clone()), |acc, f| {
                    crate::graph::tensor_graphs(&acc, f).unwrap()
                });
            assert_eq!(rebuilt, g);
            let mut reversed = factors.clone();
            reversed.reverse();
            let permuted = reversed
                .iter()
                .fold(Graph::empty(s.clone()), |acc, f| {
                    crate::graph::tensor_graphs(&acc, f).unwrap()
                });
            assert!(iso_graphs(&permuted, &g));
        }
    }
}
