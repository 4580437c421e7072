//! Exhaustive verification that `Cut_S : Δ_/S^op → Assoc_S` and
//! `LCut_S : Δ_/S^op × Δ¹ → LM_S` are strong approximations.
//!
//! The checked objects are those whose image has at most `max_dim` edges:
//! chains of length `≤ max_dim + 1` for `Cut_S` and at level 1, and of
//! length `≤ max_dim` at level 0.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{enumerate_graph_morphisms, Graph, GraphMorphism};
use crate::labels::LabelSet;
use crate::operad::OperadTag;
use crate::pointed::PointedMap;
use crate::report::{SuiteReport, Tally};
use crate::simplex::{
    cartesian_lift, cartesian_lift_level, cut_morphism, cut_object, is_marked_inert, lcut,
    lcut_morphism, DeltaOpMorphism, LabeledSimplex, Level,
};

/// Largest `max_dim` accepted by [`check_approximation`].
pub const MAX_APPROXIMATION_DIM: usize = 3;

trait Approximation: Sync {
    type Obj: Clone + Eq + Hash + Send + Sync + fmt::Display;
    type Mor: Clone + Eq + Hash + Send + Sync + fmt::Display;

    fn name(&self) -> &'static str;
    fn tag(&self) -> OperadTag;
    fn labels(&self) -> &LabelSet;
    /// Objects with chains of at most `max_len` vertices.
    fn objects(&self, max_len: usize) -> Vec<Self::Obj>;
    fn image(&self, x: &Self::Obj) -> Graph;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn source(&self, m: &Self::Mor) -> Self::Obj;
    fn target(&self, m: &Self::Mor) -> Self::Obj;
    /// `g ∘ f`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn image_mor(&self, m: &Self::Mor) -> GraphMorphism;
    fn marked_inert(&self, m: &Self::Mor) -> bool;
    /// The inert lift of `ρⁱ` out of `x`.
    fn inert_lift(&self, x: &Self::Obj, i: usize) -> Self::Mor;
    /// `(X̄, X̄ → Y, Γ ≅ F(X̄))` for an active `φ : Γ → F(Y)`.
    fn lift(&self, y: &Self::Obj, phi: &GraphMorphism) -> Result<(Self::Obj, Self::Mor, GraphMorphism)>;
}

struct Cut {
    labels: LabelSet,
}

impl Approximation for Cut {
    type Obj = LabeledSimplex;
    type Mor = DeltaOpMorphism;

    fn name(&self) -> &'static str {
        "Cut_S"
    }

    fn tag(&self) -> OperadTag {
        OperadTag::AssocS
    }

    fn labels(&self) -> &LabelSet {
        &self.labels
    }

    fn objects(&self, max_len: usize) -> Vec<LabeledSimplex> {
        LabeledSimplex::enumerate(&self.labels, max_len)
    }

    fn image(&self, x: &LabeledSimplex) -> Graph {
        cut_object(x)
    }

    fn hom(&self, a: &LabeledSimplex, b: &LabeledSimplex) -> Vec<DeltaOpMorphism> {
        DeltaOpMorphism::enumerate(a, b)
    }

    fn identity(&self, x: &LabeledSimplex) -> DeltaOpMorphism {
        DeltaOpMorphism::identity(x)
    }

    fn source(&self, m: &DeltaOpMorphism) -> LabeledSimplex {
        m.source().clone()
    }

    fn target(&self, m: &DeltaOpMorphism) -> LabeledSimplex {
        m.target().clone()
    }

    fn compose(&self, f: &DeltaOpMorphism, g: &DeltaOpMorphism) -> DeltaOpMorphism {
        f.then(g).expect("composable")
    }

    fn image_mor(&self, m: &DeltaOpMorphism) -> GraphMorphism {
        cut_morphism(m)
    }

    fn marked_inert(&self, m: &DeltaOpMorphism) -> bool {
        m.is_inert()
    }

    fn inert_lift(&self, x: &LabeledSimplex, i: usize) -> DeltaOpMorphism {
        let edge = LabeledSimplex::new(self.labels.clone(), x.chain()[i - 1..=i].to_vec()).unwrap();
        DeltaOpMorphism::new(x.clone(), edge, vec![i - 1, i]).unwrap()
    }

    fn lift(&self, y: &LabeledSimplex, phi: &GraphMorphism) -> Result<(LabeledSimplex, DeltaOpMorphism, GraphMorphism)> {
        let l = cartesian_lift(y, phi)?;
        Ok((l.source, l.lift, l.reorder))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct LevelSimplex {
    simplex: LabeledSimplex,
    level: Level,
}

impl fmt::Display for LevelSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.level == Level::Zero { 0 } else { 1 };
        write!(f, "({}, {l})", self.simplex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct LevelMorphism {
    delta: DeltaOpMorphism,
    from: Level,
    to: Level,
}

impl fmt::Display for LevelMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}→{:?}", self.delta, self.from, self.to)
    }
}

struct LCut {
    labels: LabelSet,
}

impl Approximation for LCut {
    type Obj = LevelSimplex;
    type Mor = LevelMorphism;

    fn name(&self) -> &'static str {
        "LCut_S"
    }

    fn tag(&self) -> OperadTag {
        OperadTag::LMS
    }

    fn labels(&self) -> &LabelSet {
        &self.labels
    }

    fn objects(&self, max_len: usize) -> Vec<LevelSimplex> {
        let mut out = Vec::new();
        for level in [Level::Zero, Level::One] {
            for simplex in LabeledSimplex::enumerate(&self.labels, max_len) {
                out.push(LevelSimplex { simplex, level });
            }
        }
        out
    }

    fn image(&self, x: &LevelSimplex) -> Graph {
        lcut(&x.simplex, x.level)
    }

    fn hom(&self, a: &LevelSimplex, b: &LevelSimplex) -> Vec<LevelMorphism> {
        if a.level > b.level {
            return Vec::new();
        }
        DeltaOpMorphism::enumerate(&a.simplex, &b.simplex)
            .into_iter()
            .map(|delta| LevelMorphism {
                delta,
                from: a.level,
                to: b.level,
            })
            .collect()
    }

    fn identity(&self, x: &LevelSimplex) -> LevelMorphism {
        LevelMorphism {
            delta: DeltaOpMorphism::identity(&x.simplex),
            from: x.level,
            to: x.level,
        }
    }

    fn source(&self, m: &LevelMorphism) -> LevelSimplex {
        LevelSimplex {
            simplex: m.delta.source().clone(),
            level: m.from,
        }
    }

    fn target(&self, m: &LevelMorphism) -> LevelSimplex {
        LevelSimplex {
            simplex: m.delta.target().clone(),
            level: m.to,
        }
    }

    fn compose(&self, f: &LevelMorphism, g: &LevelMorphism) -> LevelMorphism {
        LevelMorphism {
            delta: f.delta.then(&g.delta).expect("composable"),
            from: f.from,
            to: g.to,
        }
    }

    fn image_mor(&self, m: &LevelMorphism) -> GraphMorphism {
        lcut_morphism(&m.delta, m.from, m.to).expect("levels increase")
    }

    fn marked_inert(&self, m: &LevelMorphism) -> bool {
        is_marked_inert(&m.delta, m.to)
    }

    fn inert_lift(&self, x: &LevelSimplex, i: usize) -> LevelMorphism {
        let n = x.simplex.dim();
        let chain = x.simplex.chain();
        if i <= n {
            let edge = LabeledSimplex::new(self.labels.clone(), chain[i - 1..=i].to_vec()).unwrap();
            LevelMorphism {
                delta: DeltaOpMorphism::new(x.simplex.clone(), edge, vec![i - 1, i]).unwrap(),
                from: x.level,
                to: Level::One,
            }
        } else {
            // the edge (Xₙ,⋆)
            let last = LabeledSimplex::new(self.labels.clone(), vec![chain[n]]).unwrap();
            LevelMorphism {
                delta: DeltaOpMorphism::new(x.simplex.clone(), last, vec![n]).unwrap(),
                from: Level::Zero,
                to: Level::Zero,
            }
        }
    }

    fn lift(&self, y: &LevelSimplex, phi: &GraphMorphism) -> Result<(LevelSimplex, LevelMorphism, GraphMorphism)> {
        let l = cartesian_lift_level(&y.simplex, y.level, phi)?;
        let source = LevelSimplex {
            simplex: l.source,
            level: y.level,
        };
        let m = LevelMorphism {
            delta: l.lift,
            from: y.level,
            to: y.level,
        };
        Ok((source, m, l.reorder))
    }
}

fn fold(tallies: Vec<Tally>) -> Tally {
    tallies.into_iter().fold(Tally::default(), Tally::merge)
}

struct Context<'a, F: Approximation> {
    f: &'a F,
    max_dim: usize,
    /// Objects whose image has at most `max_dim` edges.
    objects: Vec<F::Obj>,
    index: HashMap<F::Obj, usize>,
    /// `hom[a][b]`
    hom: Vec<Vec<Vec<F::Mor>>>,
}

impl<'a, F: Approximation> Context<'a, F> {
    fn new(f: &'a F, max_dim: usize) -> Self {
        let objects: Vec<F::Obj> = f
            .objects(max_dim + 1)
            .into_iter()
            .filter(|x| f.image(x).len() <= max_dim)
            .collect();
        let index = objects.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let hom = objects
            .par_iter()
            .map(|a| objects.iter().map(|b| f.hom(a, b)).collect())
            .collect();
        Context {
            f,
            max_dim,
            objects,
            index,
            hom,
        }
    }

    fn name(&self, check: &str) -> String {
        format!("{}: {check}", self.f.name())
    }

    fn functoriality(&self) -> Tally {
        let f = self.f;
        let n = self.objects.len();
        let tallies = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut t = Tally::default();
                let x = &self.objects[a];
                let id = f.image_mor(&f.identity(x));
                t.record(id == GraphMorphism::identity(&f.image(x)), || {
                    format!("image of the identity at {x} is {id}")
                });
                for b in 0..n {
                    for m in &self.hom[a][b] {
                        let fm = f.image_mor(m);
                        let ok = f.tag().contains(fm.source())
                            && fm.source() == &f.image(&f.source(m))
                            && fm.target() == &f.image(&f.target(m))
                            && crate::graph::validate_morphism(&fm).is_ok();
                        t.record(ok, || format!("{m} has an invalid image {fm}"));
                        for c in 0..n {
                            for m2 in &self.hom[b][c] {
                                let lhs = f.image_mor(&f.compose(m, m2));
                                let rhs = fm.then(&f.image_mor(m2)).unwrap();
                                t.record(lhs == rhs, || format!("F({m2} ∘ {m}) ≠ F({m2}) ∘ F({m})"));
                            }
                        }
                    }
                }
                t
            })
            .collect();
        fold(tallies)
    }

    fn markings(&self) -> Tally {
        let f = self.f;
        let mut t = Tally::default();
        for row in &self.hom {
            for m in row.iter().flatten() {
                let marked = f.marked_inert(m);
                let image = f.image_mor(m).is_inert();
                t.record(marked == image, || {
                    format!("{m}: marked inert {marked}, image inert {image}")
                });
            }
        }
        t
    }

    fn condition_one(&self) -> Tally {
        let f = self.f;
        let mut t = Tally::default();
        for x in &self.objects {
            let n = f.image(x).len();
            for i in 1..=n {
                let m = f.inert_lift(x, i);
                let rho = PointedMap::rho(n, i).unwrap();
                let ok = &f.source(&m) == x
                    && f.marked_inert(&m)
                    && f.image_mor(&m).pointed_map() == rho;
                t.record(ok, || format!("no inert lift of ρ^{i} at {x}"));
            }
        }
        t
    }

    /// Lifts every active `φ : Γ → F(Y)` and returns the distinct lifts.
    fn condition_two_lifts(&self) -> (Tally, Vec<F::Mor>) {
        let f = self.f;
        let sources = f.tag().objects_up_to(f.labels(), self.max_dim);
        let results: Vec<(Tally, Tally, Vec<F::Mor>)> = self
            .objects
            .par_iter()
            .map(|y| {
                let mut exists = Tally::default();
                let mut in_bound = Tally::default();
                let mut lifts = Vec::new();
                let fy = f.image(y);
                for gamma in &sources {
                    let phis = enumerate_graph_morphisms(gamma, &fy, 2 * self.max_dim).unwrap();
                    for phi in phis.iter().filter(|p| p.is_active()) {
                        match f.lift(y, phi) {
                            Ok((xbar, l, reorder)) => {
                                let ok = &f.target(&l) == y
                                    && f.source(&l) == xbar
                                    && reorder.is_inert()
                                    && reorder.is_active()
                                    && reorder.then(&f.image_mor(&l)).as_ref() == Ok(phi);
                                exists.record(ok, || format!("lift {l} does not recover {phi}"));
                                in_bound.record(self.index.contains_key(&xbar), || {
                                    format!("lift source {xbar} outside the checked objects")
                                });
                                lifts.push(l);
                            }
                            Err(e) => exists.record(false, || format!("{phi}: {e}")),
                        }
                    }
                }
                (exists, in_bound, lifts)
            })
            .collect();
        let mut exists = Tally::default();
        let mut in_bound = Tally::default();
        let mut seen = HashSet::new();
        let mut lifts = Vec::new();
        for (e, b, ls) in results {
            exists = exists.merge(e);
            in_bound = in_bound.merge(b);
            for l in ls {
                if seen.insert(l.clone()) {
                    lifts.push(l);
                }
            }
        }
        (exists.merge(in_bound), lifts)
    }

    /// For every `Z`, `ω ↦ (l ∘ ω, F(ω))` is a bijection
    /// `Hom(Z, X̄) → Hom(Z, Y) ×_{Hom(FZ, FY)} Hom(FZ, FX̄)`.
    fn universality(&self, lifts: &[F::Mor]) -> Tally {
        let f = self.f;
        let n = self.objects.len();
        let images: Vec<Graph> = self.objects.iter().map(|x| f.image(x)).collect();
        let graph_hom: Vec<Vec<Vec<GraphMorphism>>> = (0..n)
            .into_par_iter()
            .map(|z| {
                (0..n)
                    .map(|x| enumerate_graph_morphisms(&images[z], &images[x], 2 * self.max_dim).unwrap())
                    .collect()
            })
            .collect();
        let tallies = lifts
            .par_iter()
            .map(|l| {
                let mut t = Tally::default();
                let (Some(&xi), Some(&yi)) = (
                    self.index.get(&f.source(l)),
                    self.index.get(&f.target(l)),
                ) else {
                    t.record(false, || format!("{l} leaves the checked objects"));
                    return t;
                };
                let fl = f.image_mor(l);
                for z in 0..n {
                    let mut over: HashMap<GraphMorphism, usize> = HashMap::new();
                    for psi in &self.hom[z][yi] {
                        *over.entry(f.image_mor(psi)).or_default() += 1;
                    }
                    let pairs: usize = graph_hom[z][xi]
                        .iter()
                        .map(|chi| over.get(&chi.then(&fl).unwrap()).copied().unwrap_or(0))
                        .sum();
                    let images: HashSet<(F::Mor, GraphMorphism)> = self.hom[z][xi]
                        .iter()
                        .map(|w| (f.compose(w, l), f.image_mor(w)))
                        .collect();
                    let omegas = self.hom[z][xi].len();
                    t.record(images.len() == omegas && omegas == pairs, || {
                        format!(
                            "{l} against {}: {omegas} maps, {} distinct images, {pairs} compatible pairs",
                            self.objects[z],
                            images.len()
                        )
                    });
                }
                t
            })
            .collect();
        fold(tallies)
    }

    fn round_trip(&self) -> Tally {
        let f = self.f;
        let mut t = Tally::default();
        for m in self.hom.iter().flatten().flatten() {
            let fm = f.image_mor(m);
            if !fm.is_active() {
                continue;
            }
            let ok = match f.lift(&f.target(m), &fm) {
                Ok((xbar, l, reorder)) => {
                    xbar == f.source(m) && &l == m && reorder == GraphMorphism::identity(&f.image(&xbar))
                }
                Err(_) => false,
            };
            t.record(ok, || format!("lifting F({m}) does not return {m}"));
        }
        t
    }

    /// `F` restricts to a bijection on the fibers over `⟨1⟩`, objects and
    /// morphisms over the identity.
    fn strongness(&self) -> Tally {
        let f = self.f;
        let mut t = Tally::default();
        let fiber: Vec<usize> = (0..self.objects.len())
            .filter(|&i| f.image(&self.objects[i]).len() == 1)
            .collect();
        let expected: HashSet<Graph> = f.tag().objects(f.labels(), 1).into_iter().collect();
        let hit: HashSet<Graph> = fiber.iter().map(|&i| f.image(&self.objects[i])).collect();
        t.record(hit == expected && hit.len() == fiber.len(), || {
            format!(
                "{} objects over ⟨1⟩ reach {} of {} single edges",
                fiber.len(),
                hit.len(),
                expected.len()
            )
        });
        let id = PointedMap::identity(1);
        for &a in &fiber {
            for &b in &fiber {
                let ours: Vec<GraphMorphism> = self.hom[a][b]
                    .iter()
                    .map(|m| f.image_mor(m))
                    .filter(|m| m.pointed_map() == id)
                    .collect();
                let mut theirs = Vec::new();
                crate::graph::morphisms_over(
                    &f.image(&self.objects[a]),
                    &f.image(&self.objects[b]),
                    &id,
                    &mut theirs,
                );
                let distinct: HashSet<&GraphMorphism> = ours.iter().collect();
                t.record(distinct.len() == ours.len() && ours.len() == theirs.len(), || {
                    format!(
                        "{} → {} over the identity: {} vs {}",
                        self.objects[a],
                        self.objects[b],
                        ours.len(),
                        theirs.len()
                    )
                });
            }
        }
        t
    }

    fn report(&self) -> SuiteReport {
        let mut report = SuiteReport::new();
        report.push(self.functoriality().into_check(&self.name("functoriality")));
        report.push(self.markings().into_check(&self.name("inert markings match")));
        report.push(self.condition_one().into_check(&self.name("condition (1): inert lifts")));
        let (exists, lifts) = self.condition_two_lifts();
        report.push(exists.into_check(&self.name("condition (2): cartesian lifts exist")));
        report.push(
            self.universality(&lifts)
                .into_check(&self.name("condition (2): lifts are cartesian")),
        );
        report.push(self.round_trip().into_check(&self.name("cartesian lifts round-trip")));
        report.push(self.strongness().into_check(&self.name("strong: fiber over ⟨1⟩")));
        report
    }
}

fn one_vertex_chains(labels: &LabelSet) -> Tally {
    let mut t = Tally::default();
    let singles = LabeledSimplex::enumerate(labels, 1);
    t.record(singles.len() == labels.len(), || {
        format!("{} one-vertex chains for {} labels", singles.len(), labels.len())
    });
    t
}

/// Checks `Cut_S` and `LCut_S` on all objects whose image has at most
/// `max_dim` edges.
pub fn check_approximation(labels: &LabelSet, max_dim: usize) -> Result<SuiteReport> {
    if max_dim > MAX_APPROXIMATION_DIM {
        return Err(crate::Error::SizeBoundExceeded {
            size: max_dim as u128,
            bound: MAX_APPROXIMATION_DIM as u128,
        });
    }
    let labels = labels.with_pointed(false);
    let mut report = SuiteReport::new();
    report.push(one_vertex_chains(&labels).into_check("Cut_S: one-vertex chains biject with S"));
    report.extend(Context::new(&Cut { labels: labels.clone() }, max_dim).report());
    report.extend(check_lcut(&labels, max_dim));
    Ok(report)
}

fn check_lcut(labels: &LabelSet, max_dim: usize) -> SuiteReport {
    let f = LCut {
        labels: labels.clone(),
    };
    let ctx = Context::new(&f, max_dim);
    let mut report = ctx.report();
    let mut t = Tally::default();
    for x in LabeledSimplex::enumerate(labels, max_dim + 1) {
        let pointed = cut_object(&x).with_labels(labels.with_pointed(true)).unwrap();
        t.record(lcut(&x, Level::One) == pointed, || format!("LCut¹({x}) ≠ Cut({x})"));
    }
    report.push(t.into_check("LCut_S: level 1 restricts to Cut_S"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_label_passes() {
        let labels = LabelSet::unpointed(["a"]).unwrap();
        let report = check_approximation(&labels, 3).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn two_labels_pass() {
        let labels = LabelSet::unpointed(["a", "b"]).unwrap();
        let report = check_approximation(&labels, 3).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn universality_detects_non_cartesian_maps() {
        let labels = LabelSet::unpointed(["a"]).unwrap();
        let f = Cut {
            labels: labels.clone(),
        };
        let ctx = Context::new(&f, 2);
        let aa = LabeledSimplex::new(labels.clone(), vec![0, 0]).unwrap();
        let a = LabeledSimplex::new(labels, vec![0]).unwrap();
        // deleting an edge is not cartesian; adding a loop is
        let inert = DeltaOpMorphism::new(aa.clone(), a.clone(), vec![0]).unwrap();
        assert!(ctx.universality(&[inert]).witness.is_some());
        let degeneracy = DeltaOpMorphism::new(a, aa, vec![0, 0]).unwrap();
        assert!(ctx.universality(&[degeneracy]).witness.is_none());
    }

    #[test]
    fn bound_enforced() {
        let labels = LabelSet::unpointed(["a"]).unwrap();
        assert!(check_approximation(&labels, MAX_APPROXIMATION_DIM + 1).is_err());
    }
}
