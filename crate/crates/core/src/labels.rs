//! Vertex label sets `S` and `S₊ = S ⨿ {⋆}`, and functions between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Literal used for the basepoint vertex in text and JSON.
pub const STAR: &str = "*";

/// A vertex of a graph: a label index or the basepoint `⋆`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Vertex {
    Label(usize),
    Star,
}

impl Vertex {
    pub fn is_star(self) -> bool {
        self == Vertex::Star
    }

    pub fn label(self) -> Option<usize> {
        match self {
            Vertex::Label(i) => Some(i),
            Vertex::Star => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelSet {
    labels: Vec<String>,
    pointed: bool,
}

impl LabelSet {
    pub fn new<I, T>(labels: I, pointed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, name) in labels.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidLabels("empty label name".into()));
            }
            if name == STAR {
                return Err(Error::InvalidLabels(format!("`{STAR}` is reserved")));
            }
            if labels[..i].contains(name) {
                return Err(Error::InvalidLabels(format!("duplicate label `{name}`")));
            }
        }
        Ok(LabelSet { labels, pointed })
    }

    pub fn unpointed<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Self::new(labels, false)
    }

    pub fn pointed<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Self::new(labels, true)
    }

    /// Labels `x0, x1, …` used by the enumeration suites.
    pub fn numbered(n: usize, pointed: bool) -> Self {
        LabelSet {
            labels: (0..n).map(|i| format!("x{i}")).collect(),
            pointed,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn names(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_pointed(&self, pointed: bool) -> Self {
        LabelSet {
            labels: self.labels.clone(),
            pointed,
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Parses a label name or `*`.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        if name == STAR {
            return if self.pointed {
                Ok(Vertex::Star)
            } else {
                Err(Error::InvalidLabels(format!(
                    "`{STAR}` used over an unpointed label set"
                )))
            };
        }
        self.index_of(name)
            .map(Vertex::Label)
            .ok_or_else(|| Error::InvalidLabels(format!("unknown label `{name}`")))
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        match v {
            Vertex::Label(i) => &self.labels[i],
            Vertex::Star => STAR,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::Label(i) => i < self.labels.len(),
            Vertex::Star => self.pointed,
        }
    }

    /// Every vertex, labels first then `⋆` when pointed.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = (0..self.labels.len()).map(Vertex::Label).collect();
        if self.pointed {
            vs.push(Vertex::Star);
        }
        vs
    }

    /// The coproduct `S ⨿ T` together with the two injections.
    ///
    /// Names are kept as-is when `S` and `T` are disjoint; otherwise every
    /// name is suffixed with `.0` (left) or `.1` (right).
    pub fn coproduct(left: &LabelSet, right: &LabelSet) -> (LabelSet, LabelMap, LabelMap) {
        let clash = left.labels.iter().any(|l| right.labels.contains(l));
        let tag = |name: &str, side: u8| {
            if clash {
                format!("{name}.{side}")
            } else {
                name.to_owned()
            }
        };
        let labels: Vec<String> = left
            .labels
            .iter()
            .map(|l| tag(l, 0))
            .chain(right.labels.iter().map(|l| tag(l, 1)))
            .collect();
        let sum = LabelSet {
            labels,
            pointed: false,
        };
        let offset = left.len();
        let inl = LabelMap {
            source: left.with_pointed(false),
            target: sum.clone(),
            images: (0..left.len()).map(Vertex::Label).collect(),
            star_image: None,
        };
        let inr = LabelMap {
            source: right.with_pointed(false),
            target: sum.clone(),
            images: (0..right.len()).map(|i| Vertex::Label(offset + i)).collect(),
            star_image: None,
        };
        (sum, inl, inr)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))?;
        if self.pointed {
            write!(f, "₊")?;
        }
        Ok(())
    }
}

/// A function between label sets, extended to the basepoint when the
/// source is pointed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelMap {
    source: LabelSet,
    target: LabelSet,
    images: Vec<Vertex>,
    star_image: Option<Vertex>,
}

impl LabelMap {
    /// `images[i]` is the image of label `i`; `star_image` is required
    /// exactly when `source` is pointed.
    pub fn new(
        source: LabelSet,
        target: LabelSet,
        images: Vec<Vertex>,
        star_image: Option<Vertex>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            let missing = source
                .names()
                .get(images.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::MissingLabelImage(missing));
        }
        if source.is_pointed() && star_image.is_none() {
            return Err(Error::MissingLabelImage(STAR.into()));
        }
        let star_image = if source.is_pointed() { star_image } else { None };
        for v in images.iter().chain(star_image.iter()) {
            if !target.contains(*v) {
                return Err(Error::InvalidLabels(format!(
                    "image outside the target label set {target}"
                )));
            }
        }
        Ok(LabelMap {
            source,
            target,
            images,
            star_image,
        })
    }

    /// Builds a map from `(source name, target name)` pairs; `*` allowed
    /// on either side.
    pub fn from_names(source: &LabelSet, target: &LabelSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let lookup = |name: &str| -> Result<Vertex> {
            pairs
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| Error::MissingLabelImage(name.to_owned()))
                .and_then(|(_, t)| target.vertex(t))
        };
        let images = source
            .names()
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<Vec<_>>>()?;
        let star_image = if source.is_pointed() {
            Some(lookup(STAR)?)
        } else {
            None
        };
        LabelMap::new(source.clone(), target.clone(), images, star_image)
    }

    pub fn identity(labels: &LabelSet) -> Self {
        LabelMap {
            source: labels.clone(),
            target: labels.clone(),
            images: (0..labels.len()).map(Vertex::Label).collect(),
            star_image: labels.is_pointed().then_some(Vertex::Star),
        }
    }

    /// `π^X : S₊ → S`, the identity on `S` sending `⋆` to `x`.
    pub fn collapse_star(labels: &LabelSet, x: usize) -> Result<Self> {
        if x >= labels.len() {
            return Err(Error::InvalidLabels(format!("no label with index {x}")));
        }
        LabelMap::new(
            labels.with_pointed(true),
            labels.with_pointed(false),
            (0..labels.len()).map(Vertex::Label).collect(),
            Some(Vertex::Label(x)),
        )
    }

    /// The codiagonal `∇ : S ⨿ S → S`.
    pub fn codiagonal(labels: &LabelSet) -> Self {
        let base = labels.with_pointed(false);
        let (sum, _, _) = LabelSet::coproduct(&base, &base);
        let n = base.len();
        LabelMap {
            source: sum,
            target: base,
            images: (0..2 * n).map(|i| Vertex::Label(i % n)).collect(),
            star_image: None,
        }
    }

    pub fn source(&self) -> &LabelSet {
        &self.source
    }

    pub fn target(&self) -> &LabelSet {
        &self.target
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        match v {
            Vertex::Label(i) => self.images[i],
            Vertex::Star => self
                .star_image
                .expect("basepoint applied to a map from an unpointed set"),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LabelMap) -> Result<LabelMap> {
        if self.target != other.source {
            return Err(Error::LabelSetMismatch);
        }
        Ok(LabelMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
            star_image: self.star_image.map(|v| other.apply(v)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(LabelSet::unpointed(["a", "a"]).is_err());
        assert!(LabelSet::unpointed(["*"]).is_err());
        assert!(LabelSet::unpointed([""]).is_err());
        assert!(LabelSet::unpointed(["a", "b"]).is_ok());
    }

    #[test]
    fn star_only_over_pointed_sets() {
        let s = LabelSet::unpointed(["a"]).unwrap();
        assert!(s.vertex("*").is_err());
        assert_eq!(s.with_pointed(true).vertex("*").unwrap(), Vertex::Star);
    }

    #[test]
    fn coproduct_tags_on_clash() {
        let s = LabelSet::unpointed(["a", "b"]).unwrap();
        let t = LabelSet::unpointed(["c"]).unwrap();
        let (sum, _, inr) = LabelSet::coproduct(&s, &t);
        assert_eq!(sum.names(), &["a", "b", "c"]);
        assert_eq!(inr.apply(Vertex::Label(0)), Vertex::Label(2));

        let (sum, _, _) = LabelSet::coproduct(&s, &s);
        assert_eq!(sum.names(), &["a.0", "b.0", "a.1", "b.1"]);
    }

    #[test]
    fn missing_star_image() {
        let s = LabelSet::pointed(["a"]).unwrap();
        let t = LabelSet::unpointed(["a"]).unwrap();
        assert!(matches!(
            LabelMap::from_names(&s, &t, &[("a", "a")]),
            Err(Error::MissingLabelImage(_))
        ));
    }
}
