//! Labeled simplices `Δ_/S`, the functors `Cut_S` and `LCut_S`, and the
//! cartesian lift of an active morphism into a cut.
//!
//! A morphism `A → B` of `Δ_/S^op` is stored through its Δ-direction map
//! `g : [b] → [a]`, monotone and label preserving (`A[g(i)] = B[i]`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_morphism, Graph, GraphMorphism};
use crate::labels::{LabelSet, Vertex};

/// A chain `X₀ < ⋯ < Xₙ` of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledSimplex {
    labels: LabelSet,
    chain: Vec<usize>,
}

impl LabeledSimplex {
    pub fn new(labels: LabelSet, chain: Vec<usize>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::Invalid("a simplex needs at least one vertex".into()));
        }
        if let Some(&bad) = chain.iter().find(|&&x| x >= labels.len()) {
            return Err(Error::InvalidLabels(format!("no label with index {bad}")));
        }
        Ok(LabeledSimplex {
            labels: labels.with_pointed(false),
            chain,
        })
    }

    pub fn from_names(labels: &LabelSet, chain: &[&str]) -> Result<Self> {
        let chain = chain
            .iter()
            .map(|n| {
                labels
                    .index_of(n)
                    .ok_or_else(|| Error::InvalidLabels(format!("unknown label `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledSimplex::new(labels.clone(), chain)
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    /// `n` for the chain `X₀ < ⋯ < Xₙ`.
    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.chain.iter().map(|&x| Vertex::Label(x)).collect()
    }

    /// All chains with `1..=max_len` vertices, shortest first.
    pub fn enumerate(labels: &LabelSet, max_len: usize) -> Vec<LabeledSimplex> {
        let k = labels.len();
        let mut out = Vec::new();
        for len in 1..=max_len {
            for mut code in 0..k.pow(len as u32) {
                let mut chain = vec![0; len];
                for slot in chain.iter_mut().rev() {
                    *slot = code % k;
                    code /= k;
                }
                out.push(LabeledSimplex {
                    labels: labels.with_pointed(false),
                    chain,
                });
            }
        }
        out
    }
}

impl fmt::Display for LabeledSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.chain.iter().map(|&x| self.labels.name(x)).collect();
        write!(f, "{{{}}}", names.join("<"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaOpMorphism {
    source: LabeledSimplex,
    target: LabeledSimplex,
    underlying: Vec<usize>,
}

impl DeltaOpMorphism {
    pub fn new(source: LabeledSimplex, target: LabeledSimplex, underlying: Vec<usize>) -> Result<Self> {
        if source.labels != target.labels {
            return Err(Error::LabelSetMismatch);
        }
        if underlying.len() != target.chain.len() {
            return Err(Error::SizeMismatch {
                expected: target.chain.len(),
                found: underlying.len(),
            });
        }
        if underlying.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("underlying map is not monotone".into()));
        }
        for (i, &j) in underlying.iter().enumerate() {
            if j >= source.chain.len() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    bound: source.dim(),
                });
            }
            if source.chain[j] != target.chain[i] {
                return Err(Error::Invalid(format!(
                    "label mismatch: source vertex {j} vs target vertex {i}"
                )));
            }
        }
        Ok(DeltaOpMorphism {
            source,
            target,
            underlying,
        })
    }

    pub fn identity(x: &LabeledSimplex) -> Self {
        DeltaOpMorphism {
            source: x.clone(),
            target: x.clone(),
            underlying: (0..x.chain.len()).collect(),
        }
    }

    pub fn source(&self) -> &LabeledSimplex {
        &self.source
    }

    pub fn target(&self) -> &LabeledSimplex {
        &self.target
    }

    pub fn underlying(&self) -> &[usize] {
        &self.underlying
    }

    /// `next ∘ self` in `Δ_/S^op`; the Δ maps compose the other way.
    pub fn then(&self, next: &DeltaOpMorphism) -> Result<DeltaOpMorphism> {
        if self.target != next.source {
            return Err(Error::SourceTargetMismatch);
        }
        Ok(DeltaOpMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            underlying: next.underlying.iter().map(|&i| self.underlying[i]).collect(),
        })
    }

    /// `g(i) = g(0) + i`: the target is a convex subchain.
    pub fn is_inert(&self) -> bool {
        let g0 = self.underlying[0];
        self.underlying.iter().enumerate().all(|(i, &g)| g == g0 + i)
    }

    /// Inert, and the last vertex goes to the last vertex.
    pub fn is_totally_inert(&self) -> bool {
        self.is_inert() && *self.underlying.last().unwrap() == self.source.dim()
    }

    /// The induced map of edge sets is active: endpoints are preserved.
    pub fn is_active(&self) -> bool {
        self.underlying[0] == 0 && *self.underlying.last().unwrap() == self.source.dim()
    }

    /// Every morphism `source → target`, lexicographic on the Δ map.
    pub fn enumerate(source: &LabeledSimplex, target: &LabeledSimplex) -> Vec<DeltaOpMorphism> {
        fn extend(
            source: &LabeledSimplex,
            target: &LabeledSimplex,
            prefix: &mut Vec<usize>,
            out: &mut Vec<DeltaOpMorphism>,
        ) {
            let i = prefix.len();
            if i == target.chain.len() {
                out.push(DeltaOpMorphism {
                    source: source.clone(),
                    target: target.clone(),
                    underlying: prefix.clone(),
                });
                return;
            }
            let start = prefix.last().copied().unwrap_or(0);
            for j in start..source.chain.len() {
                if source.chain[j] == target.chain[i] {
                    prefix.push(j);
                    extend(source, target, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        if source.labels == target.labels {
            extend(source, target, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for DeltaOpMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} via {:?}", self.source, self.target, self.underlying)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaClass {
    TotallyInert,
    Inert,
    ActiveBase,
    Other,
}

/// Strongest applicable tag.
pub fn classify_delta(m: &DeltaOpMorphism) -> DeltaClass {
    if m.is_totally_inert() {
        DeltaClass::TotallyInert
    } else if m.is_inert() {
        DeltaClass::Inert
    } else if m.is_active() {
        DeltaClass::ActiveBase
    } else {
        DeltaClass::Other
    }
}

/// `Cut_S(X) = (X₀,X₁)⊗⋯⊗(Xₙ₋₁,Xₙ)`.
pub fn cut_object(x: &LabeledSimplex) -> Graph {
    Graph::path(&x.labels, &x.vertices()).expect("chain labels are in range")
}

/// Ordered fibers of the cut of a Δ map `g : [b] → [a]`: target edge `i`
/// receives source edges `g(i−1)+1 ..= g(i)`.
fn cut_fibers(underlying: &[usize]) -> Vec<Vec<usize>> {
    underlying.windows(2).map(|w| (w[0]..w[1]).collect()).collect()
}

pub fn cut_morphism(m: &DeltaOpMorphism) -> GraphMorphism {
    GraphMorphism::from_fibers(
        cut_object(&m.source),
        cut_object(&m.target),
        cut_fibers(&m.underlying),
    )
    .expect("cut of a Δ morphism is valid")
}

/// The two levels of `Δ¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    /// `[n]₀ = [0→⋯→n→⋆]`
    Zero,
    /// `[n]₁ = [0→⋯→n]`
    One,
}

/// `LCut_S` on objects: the cut over `S₊`, plus `(Xₙ,⋆)` at level 0.
pub fn lcut(x: &LabeledSimplex, level: Level) -> Graph {
    let labels = x.labels.with_pointed(true);
    let mut vertices = x.vertices();
    if level == Level::Zero {
        vertices.push(Vertex::Star);
    }
    Graph::path(&labels, &vertices).expect("chain labels are in range")
}

/// The inert morphism `lcut(x, 0) → lcut(x, 1)` deleting `(Xₙ,⋆)`.
pub fn structural_inert(x: &LabeledSimplex) -> GraphMorphism {
    let n = x.dim();
    GraphMorphism::from_fibers(
        lcut(x, Level::Zero),
        lcut(x, Level::One),
        (0..n).map(|e| vec![e]).collect(),
    )
    .expect("deleting the last edge is valid")
}

/// `LCut_S(m, from → to)`. At level 0 the Δ map is extended by sending
/// the extra terminal vertex to the extra terminal vertex.
pub fn lcut_morphism(m: &DeltaOpMorphism, from: Level, to: Level) -> Result<GraphMorphism> {
    let zero_to_zero = || {
        let mut extended = m.underlying.clone();
        extended.push(m.source.chain.len());
        GraphMorphism::from_fibers(
            lcut(&m.source, Level::Zero),
            lcut(&m.target, Level::Zero),
            cut_fibers(&extended),
        )
    };
    match (from, to) {
        (Level::Zero, Level::Zero) => zero_to_zero(),
        (Level::One, Level::One) => GraphMorphism::from_fibers(
            lcut(&m.source, Level::One),
            lcut(&m.target, Level::One),
            cut_fibers(&m.underlying),
        ),
        (Level::Zero, Level::One) => zero_to_zero()?.then(&structural_inert(&m.target)),
        (Level::One, Level::Zero) => Err(Error::Invalid("Δ¹ has no arrow 1 → 0".into())),
    }
}

/// Inert in `Δ_/S^op × Δ¹`: inert, and either totally inert or landing
/// at level 1.
pub fn is_marked_inert(m: &DeltaOpMorphism, to: Level) -> bool {
    m.is_inert() && (m.is_totally_inert() || to == Level::One)
}

/// The cartesian lift of an active `φ : Γ → lcut(Y, level)` (or
/// `Cut_S(Y)` when `level` is `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianLift {
    /// The chain read off the path ordering of `Γ`'s edges.
    pub source: LabeledSimplex,
    pub lift: DeltaOpMorphism,
    /// The edge isomorphism `Γ → cut(source)` putting `Γ` in path order.
    pub reorder: GraphMorphism,
}

pub fn cartesian_lift(target: &LabeledSimplex, phi: &GraphMorphism) -> Result<CartesianLift> {
    lift_impl(target, None, phi)
}

pub fn cartesian_lift_level(
    target: &LabeledSimplex,
    level: Level,
    phi: &GraphMorphism,
) -> Result<CartesianLift> {
    lift_impl(target, Some(level), phi)
}

fn lift_impl(target: &LabeledSimplex, level: Option<Level>, phi: &GraphMorphism) -> Result<CartesianLift> {
    let expected = match level {
        None => cut_object(target),
        Some(l) => lcut(target, l),
    };
    if phi.target() != &expected {
        return Err(Error::SourceTargetMismatch);
    }
    validate_morphism(phi).map_err(|v| Error::InvalidMorphism(v.to_string()))?;
    if !phi.is_active() {
        return Err(Error::NotActive);
    }
    // concatenating the fibers in target order lists Γ's edges as one path
    let order: Vec<usize> = phi.fibers().iter().flatten().copied().collect();
    let gamma = phi.source();
    let mut chain = vec![target.chain[0]];
    for (k, &e) in order.iter().enumerate() {
        let (s, t) = gamma.edge(e);
        assert_eq!(
            Vertex::Label(*chain.last().unwrap()),
            s,
            "fibers of a valid active morphism concatenate to a path"
        );
        match t {
            Vertex::Label(x) => chain.push(x),
            Vertex::Star => assert_eq!(k + 1, order.len(), "⋆ only ends the path"),
        }
    }
    let source = LabeledSimplex::new(target.labels.clone(), chain)?;
    let path_edges = target.dim();
    let mut underlying = Vec::with_capacity(path_edges + 1);
    let mut k = 0;
    underlying.push(0);
    for fiber in &phi.fibers()[..path_edges] {
        k += fiber.len();
        underlying.push(k);
    }
    let lift = DeltaOpMorphism::new(source.clone(), target.clone(), underlying)?;
    let reordered = match level {
        None => cut_object(&source),
        Some(l) => lcut(&source, l),
    };
    let reorder = GraphMorphism::from_fibers(
        gamma.clone(),
        reordered,
        order.iter().map(|&e| vec![e]).collect(),
    )?;
    Ok(CartesianLift {
        source,
        lift,
        reorder,
    })
}
