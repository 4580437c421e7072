//! Pointed finite sets `⟨n⟩ = {∗, 1, …, n}` and the maps between them.
//!
//! A map `⟨n⟩ → ⟨m⟩` stores only the images of `1..=n`; the basepoint is
//! encoded as `0` and always sent to `0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedMap {
    codomain_size: usize,
    images: Vec<usize>,
}

/// Inert/active classification shared by pointed maps and graph morphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapClass {
    Inert,
    Active,
    Both,
    Neither,
}

impl MapClass {
    pub fn from_flags(inert: bool, active: bool) -> Self {
        match (inert, active) {
            (true, true) => MapClass::Both,
            (true, false) => MapClass::Inert,
            (false, true) => MapClass::Active,
            (false, false) => MapClass::Neither,
        }
    }

    pub fn is_inert(self) -> bool {
        matches!(self, MapClass::Inert | MapClass::Both)
    }

    pub fn is_active(self) -> bool {
        matches!(self, MapClass::Active | MapClass::Both)
    }
}

impl PointedMap {
    pub fn new(codomain_size: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&i| i > codomain_size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: codomain_size,
            });
        }
        Ok(PointedMap {
            codomain_size,
            images,
        })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap {
            codomain_size: n,
            images: (1..=n).collect(),
        }
    }

    /// `ρ^i : ⟨n⟩ → ⟨1⟩`, sending `i` to `1` and everything else to `∗`.
    pub fn rho(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(PointedMap {
            codomain_size: 1,
            images: (1..=n).map(|j| usize::from(j == i)).collect(),
        })
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i ∈ ⟨n⟩`, with `0` the basepoint.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.images[i - 1]
        }
    }

    /// Non-basepoint preimage of `j`, in increasing order.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (1..=self.domain_size()).filter(|&i| self.apply(i) == j).collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PointedMap) -> Result<PointedMap> {
        compose_pointed(self, g)
    }

    pub fn is_inert(&self) -> bool {
        (1..=self.codomain_size).all(|j| self.images.iter().filter(|&&i| i == j).count() == 1)
    }

    pub fn is_active(&self) -> bool {
        self.images.iter().all(|&i| i != 0)
    }

    pub fn classify(&self) -> MapClass {
        MapClass::from_flags(self.is_inert(), self.is_active())
    }

    /// Canonical inert–active factorization through the surviving elements.
    pub fn factorize(&self) -> (PointedMap, PointedMap) {
        let survivors: Vec<usize> = (1..=self.domain_size())
            .filter(|&i| self.apply(i) != 0)
            .collect();
        let mut next = 0;
        let inert_images = self
            .images
            .iter()
            .map(|&img| {
                if img == 0 {
                    0
                } else {
                    next += 1;
                    next
                }
            })
            .collect();
        let inert = PointedMap {
            codomain_size: survivors.len(),
            images: inert_images,
        };
        let active = PointedMap {
            codomain_size: self.codomain_size,
            images: survivors.iter().map(|&i| self.apply(i)).collect(),
        };
        (inert, active)
    }

    /// All maps `⟨n⟩ → ⟨m⟩`, lexicographic on the image array.
    pub fn enumerate(n: usize, m: usize) -> impl Iterator<Item = PointedMap> {
        let total = (m + 1).pow(n as u32);
        (0..total).map(move |mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = code % (m + 1);
                code /= m + 1;
            }
            PointedMap {
                codomain_size: m,
                images,
            }
        })
    }
}

/// `g ∘ f`, defined when `f`'s codomain is `g`'s domain.
pub fn compose_pointed(f: &PointedMap, g: &PointedMap) -> Result<PointedMap> {
    if f.codomain_size != g.domain_size() {
        return Err(Error::SizeMismatch {
            expected: g.domain_size(),
            found: f.codomain_size,
        });
    }
    Ok(PointedMap {
        codomain_size: g.codomain_size,
        images: f.images.iter().map(|&i| g.apply(i)).collect(),
    })
}

pub fn classify_pointed(f: &PointedMap) -> MapClass {
    f.classify()
}

pub fn factorize_pointed(f: &PointedMap) -> (PointedMap, PointedMap) {
    f.factorize()
}

pub fn rho(n: usize, i: usize) -> Result<PointedMap> {
    PointedMap::rho(n, i)
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{}⟩→⟨{}⟩ {:?}",
            self.domain_size(),
            self.codomain_size,
            self.images
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(m: usize, images: &[usize]) -> PointedMap {
        PointedMap::new(m, images.to_vec()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let f = map(2, &[0, 1, 2]);
        let g = map(1, &[0, 1]);
        let gf = compose_pointed(&f, &g).unwrap();
        assert_eq!(gf.images(), &[0, 0, 1]);
        assert_eq!(gf, rho(3, 3).unwrap());

        let f = map(2, &[2, 1]);
        assert_eq!(compose_pointed(&PointedMap::identity(2), &f).unwrap(), f);
        assert_eq!(compose_pointed(&f, &f).unwrap(), PointedMap::identity(2));
    }

    #[test]
    fn composition_size_mismatch() {
        let f = map(2, &[1, 2]);
        let g = map(1, &[1]);
        assert!(matches!(
            compose_pointed(&f, &g),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn out_of_range_image_rejected() {
        assert!(PointedMap::new(1, vec![2]).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(map(1, &[0, 1, 0]).classify(), MapClass::Inert);
        assert_eq!(map(1, &[1, 1]).classify(), MapClass::Active);
        assert_eq!(map(2, &[0, 1]).classify(), MapClass::Neither);
        assert_eq!(PointedMap::identity(3).classify(), MapClass::Both);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(3, 2).unwrap().images(), &[0, 1, 0]);
        assert_eq!(rho(1, 1).unwrap().images(), &[1]);
        assert!(matches!(rho(2, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(rho(2, 0), Err(Error::IndexOutOfRange { .. })));
        for n in 1..=6 {
            for i in 1..=n {
                let class = rho(n, i).unwrap().classify();
                assert!(class.is_inert());
                // ρ¹ : ⟨1⟩ → ⟨1⟩ is the identity, hence also active
                let expected = if n == 1 { MapClass::Both } else { MapClass::Inert };
                assert_eq!(class, expected);
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let f = map(1, &[0, 1]);
        let (inert, active) = f.factorize();
        assert_eq!(inert, rho(2, 2).unwrap());
        assert_eq!(active, PointedMap::identity(1));

        let fold = map(1, &[1, 1]);
        let (inert, active) = fold.factorize();
        assert_eq!(inert, PointedMap::identity(2));
        assert_eq!(active, fold);

        let inert_map = map(2, &[2, 0, 1]);
        let (inert, active) = inert_map.factorize();
        assert_eq!(inert, map(2, &[1, 0, 2]));
        assert_eq!(compose_pointed(&inert, &active).unwrap(), inert_map);
    }

    #[test]
    fn exhaustive_laws() {
        for n in 0..=4 {
            for m in 0..=4 {
                for f in PointedMap::enumerate(n, m) {
                    let (inert, active) = f.factorize();
                    assert!(inert.classify().is_inert(), "{f}");
                    assert!(active.classify().is_active(), "{f}");
                    assert_eq!(compose_pointed(&inert, &active).unwrap(), f);

                    if f.classify() == MapClass::Both {
                        let mut seen = f.images().to_vec();
                        seen.sort_unstable();
                        assert_eq!(seen, (1..=m).collect::<Vec<_>>());
                    }

                    for k in 0..=3 {
                        for g in PointedMap::enumerate(m, k) {
                            let gf = compose_pointed(&f, &g).unwrap();
                            if f.is_inert() && g.is_inert() {
                                assert!(gf.is_inert(), "{f} ; {g}");
                            }
                            if f.is_active() && g.is_active() {
                                assert!(gf.is_active(), "{f} ; {g}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(PointedMap::enumerate(3, 2).count(), 27);
        assert_eq!(PointedMap::enumerate(0, 5).count(), 1);
    }
}
