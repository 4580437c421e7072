//! Labeled directed multigraphs and their morphisms: the objects and
//! arrows of `Assoc_S`, `Assoc_{S₊}`, `LM_S` and `RM_S`.
//!
//! A morphism `Γ → Γ'` sends each edge of `Γ` to an edge of `Γ'` or
//! deletes it, and totally orders every fiber. It is *valid* when
//!
//! 1. a target edge with empty fiber is a loop, and
//! 2. a nonempty fiber `e₀ < … < eₙ` is a path from `s(e')` to `t(e')`.
//!
//! Read as graph moves: deleting edges, adding loops, and contracting
//! paths to single edges.

use std::fmt;

use crate::error::{Error, Result};
use crate::labels::{LabelMap, LabelSet, Vertex};
use crate::pointed::{MapClass, PointedMap};

/// `(source, target)` of an edge.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: LabelSet,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(labels: LabelSet, edges: Vec<Edge>) -> Result<Self> {
        for (i, &(s, t)) in edges.iter().enumerate() {
            if !labels.contains(s) || !labels.contains(t) {
                return Err(Error::InvalidLabels(format!(
                    "edge {} uses a vertex outside {labels}",
                    i + 1
                )));
            }
        }
        Ok(Graph { labels, edges })
    }

    pub fn empty(labels: LabelSet) -> Self {
        Graph {
            labels,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from label names, `*` for the basepoint.
    pub fn from_names(labels: &LabelSet, edges: &[(&str, &str)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(s, t)| Ok((labels.vertex(s)?, labels.vertex(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(labels.clone(), edges)
    }

    /// The path graph `(v₀,v₁)⊗(v₁,v₂)⊗⋯`; a single vertex gives `∅`.
    pub fn path(labels: &LabelSet, vertices: &[Vertex]) -> Result<Self> {
        let edges = vertices.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::new(labels.clone(), edges)
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// No edge starts at `⋆`.
    pub fn is_left_modular(&self) -> bool {
        self.edges.iter().all(|(s, _)| !s.is_star())
    }

    /// No edge ends at `⋆`.
    pub fn is_right_modular(&self) -> bool {
        self.edges.iter().all(|(_, t)| !t.is_star())
    }

    pub fn check_left_modular(&self) -> Result<()> {
        match self.edges.iter().position(|(s, _)| s.is_star()) {
            Some(i) => Err(Error::NotLeftModular(i + 1)),
            None => Ok(()),
        }
    }

    pub fn check_right_modular(&self) -> Result<()> {
        match self.edges.iter().position(|(_, t)| t.is_star()) {
            Some(i) => Err(Error::NotRightModular(i + 1)),
            None => Ok(()),
        }
    }

    /// The subgraph on the given edges, in the given order.
    pub fn restrict(&self, edges: &[usize]) -> Graph {
        Graph {
            labels: self.labels.clone(),
            edges: edges.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    /// The same edges over a different (compatible) label set.
    pub fn with_labels(&self, labels: LabelSet) -> Result<Graph> {
        Graph::new(labels, self.edges.clone())
    }

    pub fn edge_name(&self, i: usize) -> String {
        let (s, t) = self.edges[i];
        format!(
            "({},{})",
            self.labels.vertex_name(s),
            self.labels.vertex_name(t)
        )
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = (0..self.edges.len()).map(|i| self.edge_name(i)).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

pub fn tensor_graphs(a: &Graph, b: &Graph) -> Result<Graph> {
    if a.labels != b.labels {
        return Err(Error::LabelSetMismatch);
    }
    let mut edges = a.edges.clone();
    edges.extend_from_slice(&b.edges);
    Ok(Graph {
        labels: a.labels.clone(),
        edges,
    })
}

/// Equality up to a permutation of edges.
pub fn iso_graphs(a: &Graph, b: &Graph) -> bool {
    if a.labels != b.labels || a.len() != b.len() {
        return false;
    }
    let mut x = a.edges.clone();
    let mut y = b.edges.clone();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// `rev(Γ)`: every edge turned around.
pub fn reverse(g: &Graph) -> Graph {
    Graph {
        labels: g.labels.clone(),
        edges: g.edges.iter().map(|&(s, t)| (t, s)).collect(),
    }
}

pub fn relabel(g: &Graph, h: &LabelMap) -> Result<Graph> {
    if h.source() != g.labels() {
        return Err(Error::LabelSetMismatch);
    }
    Ok(Graph {
        labels: h.target().clone(),
        edges: g.edges.iter().map(|&(s, t)| (h.apply(s), h.apply(t))).collect(),
    })
}

/// The first failed validity condition of a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// The target edge (1-based) has an empty fiber but is not a loop.
    ConditionOneViolated { target_edge: usize },
    /// The fiber of the target edge (1-based) is not a path from its
    /// source to its target.
    ConditionTwoViolated { target_edge: usize, detail: String },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::ConditionOneViolated { target_edge } => write!(
                f,
                "ConditionOneViolated: target edge {target_edge} has an empty fiber but is not a loop"
            ),
            MorphismViolation::ConditionTwoViolated {
                target_edge,
                detail,
            } => write!(
                f,
                "ConditionTwoViolated: fiber of target edge {target_edge}: {detail}"
            ),
        }
    }
}

impl std::error::Error for MorphismViolation {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphMorphism {
    source: Graph,
    target: Graph,
    /// Image of each source edge; `None` means deleted.
    edge_map: Vec<Option<usize>>,
    /// Ordered fiber of each target edge.
    fibers: Vec<Vec<usize>>,
}

impl GraphMorphism {
    /// Assembles a morphism after checking the edge map and fiber orders
    /// agree; the graph conditions are left to [`validate_morphism`].
    pub fn from_parts(
        source: Graph,
        target: Graph,
        edge_map: Vec<Option<usize>>,
        fibers: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.labels != target.labels {
            return Err(Error::LabelSetMismatch);
        }
        if edge_map.len() != source.len() {
            return Err(Error::SizeMismatch {
                expected: source.len(),
                found: edge_map.len(),
            });
        }
        if fibers.len() != target.len() {
            return Err(Error::SizeMismatch {
                expected: target.len(),
                found: fibers.len(),
            });
        }
        for (e, img) in edge_map.iter().enumerate() {
            if let Some(t) = *img {
                if t >= target.len() {
                    return Err(Error::InvalidMorphism(format!(
                        "edge {} maps to missing target edge {}",
                        e + 1,
                        t + 1
                    )));
                }
            }
        }
        let mut seen = vec![false; source.len()];
        for (t, fiber) in fibers.iter().enumerate() {
            for &e in fiber {
                if e >= source.len() || seen[e] || edge_map[e] != Some(t) {
                    return Err(Error::InvalidMorphism(format!(
                        "fiber order of target edge {} disagrees with the edge map",
                        t + 1
                    )));
                }
                seen[e] = true;
            }
        }
        if let Some(e) = (0..source.len()).find(|&e| edge_map[e].is_some() && !seen[e]) {
            return Err(Error::InvalidMorphism(format!(
                "edge {} missing from its fiber order",
                e + 1
            )));
        }
        Ok(GraphMorphism {
            source,
            target,
            edge_map,
            fibers,
        })
    }

    /// A valid morphism given by its ordered fibers; source edges not
    /// listed in any fiber are deleted.
    pub fn from_fibers(source: Graph, target: Graph, fibers: Vec<Vec<usize>>) -> Result<Self> {
        let mut edge_map = vec![None; source.len()];
        for (t, fiber) in fibers.iter().enumerate() {
            for &e in fiber {
                if e >= source.len() {
                    return Err(Error::InvalidMorphism(format!("no source edge {}", e + 1)));
                }
                edge_map[e] = Some(t);
            }
        }
        let m = GraphMorphism::from_parts(source, target, edge_map, fibers)?;
        validate_morphism(&m).map_err(|v| Error::InvalidMorphism(v.to_string()))?;
        Ok(m)
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            edge_map: (0..g.len()).map(Some).collect(),
            fibers: (0..g.len()).map(|e| vec![e]).collect(),
        }
    }

    /// The unique morphism deleting every edge.
    pub fn delete_all(g: &Graph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: Graph::empty(g.labels.clone()),
            edge_map: vec![None; g.len()],
            fibers: Vec::new(),
        }
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn edge_map(&self) -> &[Option<usize>] {
        &self.edge_map
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn fiber(&self, target_edge: usize) -> &[usize] {
        &self.fibers[target_edge]
    }

    /// The underlying map of pointed edge sets.
    pub fn pointed_map(&self) -> PointedMap {
        PointedMap::new(
            self.target.len(),
            self.edge_map.iter().map(|i| i.map_or(0, |t| t + 1)).collect(),
        )
        .expect("edge map within range")
    }

    pub fn is_inert(&self) -> bool {
        self.fibers.iter().all(|f| f.len() == 1)
    }

    pub fn is_active(&self) -> bool {
        self.edge_map.iter().all(Option::is_some)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &GraphMorphism) -> Result<GraphMorphism> {
        compose_graph_morphisms(self, g)
    }
}

impl fmt::Display for GraphMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self
            .fibers
            .iter()
            .map(|fib| {
                let idx: Vec<String> = fib.iter().map(|e| (e + 1).to_string()).collect();
                format!("[{}]", idx.join("<"))
            })
            .collect();
        write!(
            f,
            "{} → {} fibers {}",
            self.source,
            self.target,
            fibers.join(" ")
        )
    }
}

/// Checks the two fiber conditions, reporting the first violation.
pub fn validate_morphism(m: &GraphMorphism) -> Result<(), MorphismViolation> {
    for (t, fiber) in m.fibers.iter().enumerate() {
        let (ts, tt) = m.target.edges[t];
        if fiber.is_empty() {
            if ts != tt {
                return Err(MorphismViolation::ConditionOneViolated { target_edge: t + 1 });
            }
            continue;
        }
        if let Some(detail) = path_defect(&m.source, fiber, (ts, tt)) {
            return Err(MorphismViolation::ConditionTwoViolated {
                target_edge: t + 1,
                detail,
            });
        }
    }
    Ok(())
}

/// Why `fiber` is not a path of `source` edges from `s` to `t`, if it is not.
fn path_defect(source: &Graph, fiber: &[usize], (s, t): Edge) -> Option<String> {
    let first = source.edges[fiber[0]];
    let last = source.edges[*fiber.last().unwrap()];
    if first.0 != s {
        return Some(format!("first edge {} does not start at the target source", fiber[0] + 1));
    }
    if last.1 != t {
        return Some(format!(
            "last edge {} does not end at the target target",
            fiber.last().unwrap() + 1
        ));
    }
    fiber.windows(2).find_map(|w| {
        (source.edges[w[0]].1 != source.edges[w[1]].0)
            .then(|| format!("t(e{}) ≠ s(e{})", w[0] + 1, w[1] + 1))
    })
}

/// `g ∘ f`. Composite fibers concatenate `f`'s fibers in `g`'s order.
pub fn compose_graph_morphisms(f: &GraphMorphism, g: &GraphMorphism) -> Result<GraphMorphism> {
    if f.target != g.source {
        return Err(Error::SourceTargetMismatch);
    }
    let edge_map = f
        .edge_map
        .iter()
        .map(|img| img.and_then(|mid| g.edge_map[mid]))
        .collect();
    let fibers = g
        .fibers
        .iter()
        .map(|outer| {
            outer
                .iter()
                .flat_map(|&mid| f.fibers[mid].iter().copied())
                .collect()
        })
        .collect();
    Ok(GraphMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        edge_map,
        fibers,
    })
}

/// Block-wise tensor of two morphisms over the same labels.
pub fn tensor_morphisms(a: &GraphMorphism, b: &GraphMorphism) -> Result<GraphMorphism> {
    let source = tensor_graphs(&a.source, &b.source)?;
    let target = tensor_graphs(&a.target, &b.target)?;
    let (ns, nt) = (a.source.len(), a.target.len());
    let edge_map = a
        .edge_map
        .iter()
        .copied()
        .chain(b.edge_map.iter().map(|img| img.map(|t| t + nt)))
        .collect();
    let fibers = a
        .fibers
        .iter()
        .cloned()
        .chain(
            b.fibers
                .iter()
                .map(|fib| fib.iter().map(|e| e + ns).collect()),
        )
        .collect();
    Ok(GraphMorphism {
        source,
        target,
        edge_map,
        fibers,
    })
}

pub fn classify_graph_morphism(m: &GraphMorphism) -> MapClass {
    MapClass::from_flags(m.is_inert(), m.is_active())
}

/// Splits `m` into an inert morphism onto the surviving edges followed by
/// an active morphism.
pub fn factorize_graph_morphism(m: &GraphMorphism) -> (GraphMorphism, GraphMorphism) {
    let survivors: Vec<usize> = (0..m.source.len())
        .filter(|&e| m.edge_map[e].is_some())
        .collect();
    let mut position = vec![None; m.source.len()];
    for (k, &e) in survivors.iter().enumerate() {
        position[e] = Some(k);
    }
    let middle = m.source.restrict(&survivors);
    let inert = GraphMorphism {
        source: m.source.clone(),
        target: middle.clone(),
        edge_map: position.clone(),
        fibers: survivors.iter().map(|&e| vec![e]).collect(),
    };
    let active = GraphMorphism {
        source: middle,
        target: m.target.clone(),
        edge_map: survivors.iter().map(|&e| m.edge_map[e]).collect(),
        fibers: m
            .fibers
            .iter()
            .map(|fib| fib.iter().map(|&e| position[e].unwrap()).collect())
            .collect(),
    };
    (inert, active)
}

/// The three elementary graph moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `(X,Y) → ∅`
    Delete(Vertex, Vertex),
    /// `∅ → (X,X)`
    AddLoop(Vertex),
    /// `(X,Y)⊗(Y,Z) → (X,Z)`
    ContractPath(Vertex, Vertex, Vertex),
}

pub fn make_generator(labels: &LabelSet, kind: Generator) -> Result<GraphMorphism> {
    let check = |vs: &[Vertex]| -> Result<()> {
        match vs.iter().find(|v| !labels.contains(**v)) {
            Some(v) => Err(Error::InvalidLabels(format!("{v:?} not in {labels}"))),
            None => Ok(()),
        }
    };
    match kind {
        Generator::Delete(x, y) => {
            check(&[x, y])?;
            let source = Graph::new(labels.clone(), vec![(x, y)])?;
            Ok(GraphMorphism::delete_all(&source))
        }
        Generator::AddLoop(x) => {
            check(&[x])?;
            let target = Graph::new(labels.clone(), vec![(x, x)])?;
            GraphMorphism::from_fibers(Graph::empty(labels.clone()), target, vec![vec![]])
        }
        Generator::ContractPath(x, y, z) => {
            check(&[x, y, z])?;
            let source = Graph::new(labels.clone(), vec![(x, y), (y, z)])?;
            let target = Graph::new(labels.clone(), vec![(x, z)])?;
            GraphMorphism::from_fibers(source, target, vec![vec![0, 1]])
        }
    }
}

/// `rev` on morphisms: same edge map, every fiber order reversed.
pub fn reverse_morphism(m: &GraphMorphism) -> GraphMorphism {
    GraphMorphism {
        source: reverse(&m.source),
        target: reverse(&m.target),
        edge_map: m.edge_map.clone(),
        fibers: m
            .fibers
            .iter()
            .map(|f| f.iter().rev().copied().collect())
            .collect(),
    }
}

pub fn relabel_morphism(m: &GraphMorphism, h: &LabelMap) -> Result<GraphMorphism> {
    Ok(GraphMorphism {
        source: relabel(&m.source, h)?,
        target: relabel(&m.target, h)?,
        edge_map: m.edge_map.clone(),
        fibers: m.fibers.clone(),
    })
}

/// Default bound on `|source| + |target|` for brute-force enumeration.
pub const DEFAULT_EDGE_BOUND: usize = 6;

/// Every ordering of `candidates` forming a path of `source` edges from
/// `s` to `t`, in lexicographic order. An empty candidate list yields the
/// empty ordering only when `s = t`.
pub fn fiber_orderings(source: &Graph, candidates: &[usize], (s, t): Edge) -> Vec<Vec<usize>> {
    fn extend(
        source: &Graph,
        remaining: &mut Vec<usize>,
        at: Vertex,
        end: Vertex,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining.is_empty() {
            if at == end {
                out.push(prefix.clone());
            }
            return;
        }
        for k in 0..remaining.len() {
            let e = remaining[k];
            let (es, et) = source.edges[e];
            if es != at {
                continue;
            }
            remaining.remove(k);
            prefix.push(e);
            extend(source, remaining, et, end, prefix, out);
            prefix.pop();
            remaining.insert(k, e);
        }
    }
    let mut out = Vec::new();
    let mut remaining = candidates.to_vec();
    remaining.sort_unstable();
    extend(source, &mut remaining, s, t, &mut Vec::new(), &mut out);
    out
}

/// All valid morphisms `src → tgt`, ordered by edge map (deleted first,
/// then target edges in order) and then by fiber orders.
pub fn enumerate_graph_morphisms(
    src: &Graph,
    tgt: &Graph,
    bound: usize,
) -> Result<Vec<GraphMorphism>> {
    if src.len() + tgt.len() > bound {
        return Err(Error::SizeBoundExceeded {
            size: (src.len() + tgt.len()) as u128,
            bound: bound as u128,
        });
    }
    if src.labels != tgt.labels {
        return Err(Error::LabelSetMismatch);
    }
    let mut out = Vec::new();
    for base in PointedMap::enumerate(src.len(), tgt.len()) {
        morphisms_over(src, tgt, &base, &mut out);
    }
    Ok(out)
}

/// All valid morphisms lying over a fixed map of pointed edge sets.
pub fn morphisms_over(src: &Graph, tgt: &Graph, base: &PointedMap, out: &mut Vec<GraphMorphism>) {
    let mut choices = Vec::with_capacity(tgt.len());
    for t in 0..tgt.len() {
        let candidates: Vec<usize> = base.fiber(t + 1).iter().map(|i| i - 1).collect();
        let orders = fiber_orderings(src, &candidates, tgt.edges[t]);
        if orders.is_empty() {
            return;
        }
        choices.push(orders);
    }
    let edge_map: Vec<Option<usize>> = base
        .images()
        .iter()
        .map(|&i| (i != 0).then(|| i - 1))
        .collect();
    let mut pick = vec![0usize; choices.len()];
    loop {
        out.push(GraphMorphism {
            source: src.clone(),
            target: tgt.clone(),
            edge_map: edge_map.clone(),
            fibers: pick
                .iter()
                .zip(&choices)
                .map(|(&k, c)| c[k].clone())
                .collect(),
        });
        // odometer, last target edge varies fastest
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}
