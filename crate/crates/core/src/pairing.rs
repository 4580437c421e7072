//! The pairing `⟨Γ₀, Γ₁⟩ ∈ Assoc_{S⨿T}` of a left-modular graph over `S₊`
//! with a right-modular graph over `T₊`.
//!
//! Edges of the pairing are the pairs `(e₀, e₁)` in which at least one
//! component touches `⋆`. A pair where only one side touches `⋆` inherits
//! the endpoints of the other side; a pair `(X,⋆), (⋆,Y)` becomes `(X,Y)`.
//! Pairs are listed with `Γ₀` major.

use crate::error::{Error, Result};
use crate::graph::{enumerate_graph_morphisms, iso_graphs, validate_morphism, Edge, Graph, GraphMorphism};
use crate::labels::{LabelMap, LabelSet, Vertex};
use crate::operad::OperadTag;
use crate::report::{SuiteReport, Tally};

fn touches_star((s, t): Edge) -> bool {
    s.is_star() || t.is_star()
}

/// The edge pairs of `⟨g0, g1⟩` and the resulting edges, in order.
fn paired_edges(
    g0: &Graph,
    g1: &Graph,
    inl: &LabelMap,
    inr: &LabelMap,
) -> (Vec<(usize, usize)>, Vec<Edge>) {
    let mut pairs = Vec::new();
    let mut edges = Vec::new();
    for (i0, &e0) in g0.edges().iter().enumerate() {
        for (i1, &e1) in g1.edges().iter().enumerate() {
            let edge = match (touches_star(e0), touches_star(e1)) {
                (false, false) => continue,
                (true, false) => (inr.apply(e1.0), inr.apply(e1.1)),
                (false, true) => (inl.apply(e0.0), inl.apply(e0.1)),
                (true, true) => (inl.apply(e0.0), inr.apply(e1.1)),
            };
            pairs.push((i0, i1));
            edges.push(edge);
        }
    }
    (pairs, edges)
}

fn coproduct_for(g0: &Graph, g1: &Graph) -> (LabelSet, LabelMap, LabelMap) {
    LabelSet::coproduct(
        &g0.labels().with_pointed(false),
        &g1.labels().with_pointed(false),
    )
}

/// `⟨g0, g1⟩` over `S ⨿ T`.
pub fn pairing(g0: &Graph, g1: &Graph) -> Result<Graph> {
    g0.check_left_modular()?;
    g1.check_right_modular()?;
    let (sum, inl, inr) = coproduct_for(g0, g1);
    let (_, edges) = paired_edges(g0, g1, &inl, &inr);
    Graph::new(sum, edges)
}

/// `⟨m0, m1⟩` for inert `m0` in `LM_S` and inert `m1` in `RM_T`.
pub fn pairing_inert(m0: &GraphMorphism, m1: &GraphMorphism) -> Result<GraphMorphism> {
    if !m0.is_inert() || !m1.is_inert() {
        return Err(Error::NotInert);
    }
    for g in [m0.source(), m0.target()] {
        g.check_left_modular()?;
    }
    for g in [m1.source(), m1.target()] {
        g.check_right_modular()?;
    }
    let (sum, inl, inr) = coproduct_for(m0.source(), m1.source());
    let (src_pairs, src_edges) = paired_edges(m0.source(), m1.source(), &inl, &inr);
    let (tgt_pairs, tgt_edges) = paired_edges(m0.target(), m1.target(), &inl, &inr);
    let source = Graph::new(sum.clone(), src_edges)?;
    let target = Graph::new(sum, tgt_edges)?;
    let edge_map: Vec<Option<usize>> = src_pairs
        .iter()
        .map(|&(i0, i1)| {
            let image = (m0.edge_map()[i0]?, m1.edge_map()[i1]?);
            tgt_pairs.iter().position(|&p| p == image)
        })
        .collect();
    let mut fibers = vec![Vec::new(); tgt_pairs.len()];
    for (e, img) in edge_map.iter().enumerate() {
        if let Some(t) = *img {
            fibers[t].push(e);
        }
    }
    let m = GraphMorphism::from_parts(source, target, edge_map, fibers)?;
    validate_morphism(&m).map_err(|v| Error::InvalidMorphism(v.to_string()))?;
    Ok(m)
}

fn label_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..=max_len {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..n).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn star_path(labels: &LabelSet, word: &[usize], star_first: bool, star_last: bool) -> Graph {
    let mut vs: Vec<Vertex> = word.iter().map(|&x| Vertex::Label(x)).collect();
    if star_first {
        vs.insert(0, Vertex::Star);
    }
    if star_last {
        vs.push(Vertex::Star);
    }
    Graph::path(labels, &vs).unwrap()
}

/// The path identities of the pairing for all label words `X₀…X_m`,
/// `Y₀…Y_n` with `m, n ≤ max_len`, and inertness of `⟨m0, m1⟩` for all inert
/// `m0` in `LM_S` and `m1` in `RM_T` between objects with at most
/// `max_edges` edges.
pub fn check_pairing(s: &LabelSet, t: &LabelSet, max_len: usize, max_edges: usize) -> SuiteReport {
    let (s, t) = (s.with_pointed(true), t.with_pointed(true));
    let (sum, inl, inr) = LabelSet::coproduct(&s.with_pointed(false), &t.with_pointed(false));
    let show = |labels: &LabelSet, w: &[usize]| w.iter().map(|&x| labels.name(x)).collect::<Vec<_>>().join(",");
    let mut empty = Tally::default();
    let mut left = Tally::default();
    let mut both = Tally::default();
    for xs in label_words(s.len(), max_len) {
        for ys in label_words(t.len(), max_len) {
            let witness = || format!("({}), ({})", show(&s, &xs), show(&t, &ys));
            let g = pairing(&star_path(&s, &xs, false, false), &star_path(&t, &ys, false, false));
            empty.record(g.map_or(false, |g| g.is_empty()), witness);

            let g = pairing(&star_path(&s, &xs, false, true), &star_path(&t, &ys, false, false));
            let ys_sum: Vec<Vertex> = ys.iter().map(|&y| inr.apply(Vertex::Label(y))).collect();
            let expected = Graph::path(&sum, &ys_sum).unwrap();
            left.record(g.map_or(false, |g| iso_graphs(&g, &expected)), witness);

            let g = pairing(&star_path(&s, &xs, false, true), &star_path(&t, &ys, true, false));
            let xy: Vec<Vertex> = xs
                .iter()
                .map(|&x| inl.apply(Vertex::Label(x)))
                .chain(ys_sum.iter().copied())
                .collect();
            let expected = Graph::path(&sum, &xy).unwrap();
            both.record(g.map_or(false, |g| iso_graphs(&g, &expected)), witness);
        }
    }

    let inert_among = |tag: OperadTag, labels: &LabelSet| -> Vec<GraphMorphism> {
        let objects = tag.objects_up_to(&labels.with_pointed(false), max_edges);
        let mut out = Vec::new();
        for a in &objects {
            for b in &objects {
                let ms = enumerate_graph_morphisms(a, b, 2 * max_edges).unwrap();
                out.extend(ms.into_iter().filter(GraphMorphism::is_inert));
            }
        }
        out
    };
    let lefts = inert_among(OperadTag::LMS, &s);
    let rights = inert_among(OperadTag::RMS, &t);
    let mut inert = Tally::default();
    for m0 in &lefts {
        for m1 in &rights {
            let ok = pairing_inert(m0, m1).map_or(false, |m| m.is_inert() && validate_morphism(&m).is_ok());
            inert.record(ok, || format!("{} → {}, {} → {}", m0.source(), m0.target(), m1.source(), m1.target()));
        }
    }

    let mut report = SuiteReport::new();
    report.push(empty.into_check("paths away from ⋆ pair to ∅"));
    report.push(left.into_check("⋆ on the left keeps the right path"));
    report.push(both.into_check("⋆ on both sides concatenates"));
    report.push(inert.into_check("inert pairs pair to inert morphisms"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::Vertex;
    use crate::graph::{classify_graph_morphism, iso_graphs, make_generator, Generator};
    use crate::pointed::MapClass;

    fn s() -> LabelSet {
        LabelSet::pointed(["x0", "x1"]).unwrap()
    }

    fn t() -> LabelSet {
        LabelSet::pointed(["y0", "y1"]).unwrap()
    }

    fn path(labels: &LabelSet, names: &[&str]) -> Graph {
        let vs: Vec<Vertex> = names.iter().map(|n| labels.vertex(n).unwrap()).collect();
        Graph::path(labels, &vs).unwrap()
    }

    #[test]
    fn paths_without_star_pair_to_empty() {
        let g = pairing(&path(&s(), &["x0", "x1", "x1"]), &path(&t(), &["y0", "y1"])).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn star_on_left_only() {
        let g = pairing(&path(&s(), &["x0", "x1", "*"]), &path(&t(), &["y0", "y1", "y0"])).unwrap();
        let expected = Graph::from_names(g.labels(), &[("y0", "y1"), ("y1", "y0")]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn star_on_both_sides_concatenates() {
        let g = pairing(&path(&s(), &["x0", "x1", "*"]), &path(&t(), &["*", "y1", "y0"])).unwrap();
        let expected = Graph::from_names(
            g.labels(),
            &[("x0", "x1"), ("x1", "y1"), ("y1", "y0")],
        )
        .unwrap();
        assert!(iso_graphs(&g, &expected));
        assert_eq!(g, expected);
    }

    #[test]
    fn modularity_errors() {
        let bad_left = Graph::from_names(&s(), &[("*", "x0")]).unwrap();
        assert_eq!(
            pairing(&bad_left, &Graph::empty(t())),
            Err(Error::NotLeftModular(1))
        );
        let bad_right = Graph::from_names(&t(), &[("y0", "*")]).unwrap();
        assert_eq!(
            pairing(&Graph::empty(s()), &bad_right),
            Err(Error::NotRightModular(1))
        );
    }

    #[test]
    fn identities_pair_to_identity() {
        let g0 = path(&s(), &["x0", "x1", "*"]);
        let g1 = path(&t(), &["*", "y0"]);
        let m = pairing_inert(&GraphMorphism::identity(&g0), &GraphMorphism::identity(&g1)).unwrap();
        assert_eq!(m, GraphMorphism::identity(&pairing(&g0, &g1).unwrap()));
    }

    #[test]
    fn deleting_the_star_edge_deletes_its_pairs() {
        let g0 = path(&s(), &["x0", "x1", "*"]);
        let g1 = path(&t(), &["*", "y0", "y1"]);
        // delete (x1,*) from g0
        let m0 = GraphMorphism::from_fibers(g0.clone(), g0.restrict(&[0]), vec![vec![0]]).unwrap();
        let m = pairing_inert(&m0, &GraphMorphism::identity(&g1)).unwrap();
        // source pairs (e1,f1) (e2,f1) (e2,f2); target pairs (e1,f1)
        assert_eq!(m.edge_map(), &[Some(0), None, None]);
        assert_eq!(classify_graph_morphism(&m), MapClass::Inert);
    }

    #[test]
    fn non_inert_rejected() {
        let g0 = path(&s(), &["x0", "*"]);
        let add = make_generator(&t(), Generator::AddLoop(Vertex::Label(0))).unwrap();
        assert_eq!(
            pairing_inert(&GraphMorphism::identity(&g0), &add),
            Err(Error::NotInert)
        );
    }

    #[test]
    fn small_sweep() {
        let report = check_pairing(&s(), &t(), 2, 1);
        assert!(report.passed(), "{report:?}");
    }
}
