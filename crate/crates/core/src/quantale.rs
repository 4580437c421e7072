//! Finite quantales: finite lattices with an associative, unital tensor
//! that preserves joins in each variable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::report::{Check, SuiteReport};

/// The serialized form of a quantale; elements are referred to by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuantale {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quantale {
    lattice: FiniteLattice,
    tensor: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    Boolean,
    Lukasiewicz(usize),
    Trivial,
}

fn law_error(report: &SuiteReport) -> Option<Error> {
    report.first_failure().map(|c| Error::LawViolated {
        law: c.name.clone(),
        witness: c.witness.clone().unwrap_or_default(),
    })
}

fn index_table(names: &[String], table: &[Vec<String>]) -> Result<Vec<Vec<usize>>> {
    let n = names.len();
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid(format!("tensor table is not {n}×{n}")));
    }
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    names
                        .iter()
                        .position(|n| n == x)
                        .ok_or_else(|| Error::UnknownElement(x.clone()))
                })
                .collect()
        })
        .collect()
}

/// Checks every quantale law exhaustively. Check names: `partial order`,
/// `lattice`, `tensor table`, `associativity`, `unit`,
/// `join-distributivity`.
pub fn validate_quantale(raw: &RawQuantale) -> SuiteReport {
    let mut report = FiniteLattice::check(&raw.elements, &raw.leq);
    let lattice = match FiniteLattice::new(raw.elements.clone(), raw.leq.clone()) {
        Ok(l) => l,
        Err(_) => return report,
    };
    let tensor = match index_table(&raw.elements, &raw.tensor) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::fail("tensor table", 0, e.to_string()));
            return report;
        }
    };
    report.push(Check::pass("tensor table", 1));
    let unit = match lattice.index_of(&raw.unit) {
        Ok(u) => u,
        Err(e) => {
            report.push(Check::fail("unit", 0, e.to_string()));
            return report;
        }
    };
    report.extend(check_tensor_laws(&lattice, &tensor, unit));
    report
}

fn check_tensor_laws(l: &FiniteLattice, t: &[Vec<usize>], unit: usize) -> SuiteReport {
    let mut report = SuiteReport::new();
    let n = l.len();
    let name = |a: usize| l.name(a);

    let mut witness = None;
    let mut cases = 0;
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                cases += 1;
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    witness = Some(format!("({}⊗{})⊗{} ≠ {}⊗({}⊗{})", name(a), name(b), name(c), name(a), name(b), name(c)));
                    break 'assoc;
                }
            }
        }
    }
    report.push(Check::from_witness("associativity", cases, witness));

    let witness = (0..n)
        .find(|&a| t[unit][a] != a || t[a][unit] != a)
        .map(|a| format!("{} is not a two-sided unit at {}", name(unit), name(a)));
    report.push(Check::from_witness("unit", n as u64, witness));

    // binary joins and the empty join, on each side
    let mut witness = None;
    let mut cases = 0;
    let bot = l.bottom();
    'dist: for a in 0..n {
        cases += 1;
        if t[a][bot] != bot || t[bot][a] != bot {
            witness = Some(format!("{}⊗⊥ or ⊥⊗{} is not ⊥", name(a), name(a)));
            break;
        }
        for b in 0..n {
            for c in 0..n {
                cases += 1;
                let bc = l.join2(b, c);
                if t[a][bc] != l.join2(t[a][b], t[a][c]) {
                    witness = Some(format!("{}⊗({}∨{}) ≠ {}⊗{} ∨ {}⊗{}", name(a), name(b), name(c), name(a), name(b), name(a), name(c)));
                    break 'dist;
                }
                if t[bc][a] != l.join2(t[b][a], t[c][a]) {
                    witness = Some(format!("({}∨{})⊗{} ≠ {}⊗{} ∨ {}⊗{}", name(b), name(c), name(a), name(b), name(a), name(c), name(a)));
                    break 'dist;
                }
            }
        }
    }
    report.push(Check::from_witness("join-distributivity", cases, witness));
    report
}

impl Quantale {
    pub fn from_raw(raw: &RawQuantale) -> Result<Self> {
        let report = validate_quantale(raw);
        if let Some(e) = law_error(&report) {
            return Err(e);
        }
        let lattice = FiniteLattice::new(raw.elements.clone(), raw.leq.clone())?;
        let tensor = index_table(&raw.elements, &raw.tensor)?;
        let unit = lattice.index_of(&raw.unit)?;
        Ok(Quantale { lattice, tensor, unit })
    }

    /// Builds a quantale from an existing lattice and an index table.
    pub fn from_table(lattice: FiniteLattice, tensor: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = lattice.len();
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || unit >= n {
            return Err(Error::Invalid(format!("tensor table is not {n}×{n}")));
        }
        if let Some(e) = law_error(&check_tensor_laws(&lattice, &tensor, unit)) {
            return Err(e);
        }
        Ok(Quantale { lattice, tensor, unit })
    }

    pub fn to_raw(&self) -> RawQuantale {
        let names = self.lattice.names();
        RawQuantale {
            elements: names.to_vec(),
            leq: self.lattice.order().to_vec(),
            tensor: self
                .tensor
                .iter()
                .map(|row| row.iter().map(|&x| names[x].clone()).collect())
                .collect(),
            unit: names[self.unit].clone(),
        }
    }

    /// `{⊥ < ⊤}` with `⊗ = ∧`.
    pub fn boolean() -> Self {
        let lattice = FiniteLattice::chain(vec!["0".into(), "1".into()]);
        Quantale::from_table(lattice, vec![vec![0, 0], vec![0, 1]], 1).unwrap()
    }

    /// `{0 < ⋯ < n}` with `a⊗b = max(0, a+b−n)` and unit `n`.
    pub fn lukasiewicz(n: usize) -> Self {
        assert!(n >= 1, "Łukasiewicz chain needs n ≥ 1");
        let lattice = FiniteLattice::chain((0..=n).map(|i| i.to_string()).collect());
        let tensor = (0..=n)
            .map(|a| (0..=n).map(|b| (a + b).saturating_sub(n)).collect())
            .collect();
        Quantale::from_table(lattice, tensor, n).unwrap()
    }

    /// A non-commutative tensor on the 4-chain `0<1<2<3` with unit 3:
    /// `1⊗2 = 0` but `2⊗1 = 1`.
    pub fn skew_chain() -> Self {
        let lattice = FiniteLattice::chain((0..4).map(|i| i.to_string()).collect());
        let tensor = vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 1, 2, 2],
            vec![0, 1, 2, 3],
        ];
        Quantale::from_table(lattice, tensor, 3).unwrap()
    }

    /// The one-element quantale.
    pub fn trivial() -> Self {
        Quantale::from_table(FiniteLattice::chain(vec!["*".into()]), vec![vec![0]], 0).unwrap()
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        self.lattice.name(a)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lattice.index_of(name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a][b]
    }

    pub fn tensor_table(&self) -> &[Vec<usize>] {
        &self.tensor
    }

    /// Tensor of a sequence; the empty tensor is the unit.
    pub fn tensor_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.unit, |acc, x| self.tensor[acc][x])
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.lattice.join2(a, b)
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.lattice.meet2(a, b)
    }

    pub fn join<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        self.lattice.join(xs)
    }

    pub fn meet<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        self.lattice.meet(xs)
    }

    /// `a ⊸ b`: the largest `c` with `a ⊗ c ≤ b`.
    pub fn residual_right(&self, a: usize, b: usize) -> usize {
        self.join(self.elements().filter(|&c| self.leq(self.tensor(a, c), b)))
    }

    /// `b ⟜ a`: the largest `c` with `c ⊗ a ≤ b`.
    pub fn residual_left(&self, a: usize, b: usize) -> usize {
        self.join(self.elements().filter(|&c| self.leq(self.tensor(c, a), b)))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.tensor(a, b) == self.tensor(b, a)))
    }
}

pub fn make_builtin(kind: Builtin) -> Quantale {
    match kind {
        Builtin::Boolean => Quantale::boolean(),
        Builtin::Lukasiewicz(n) => Quantale::lukasiewicz(n),
        Builtin::Trivial => Quantale::trivial(),
    }
}

/// `V^rev`: the same lattice with `a ⊗^rev b = b ⊗ a`.
pub fn reverse_quantale(q: &Quantale) -> Quantale {
    let n = q.len();
    Quantale {
        lattice: q.lattice.clone(),
        tensor: (0..n).map(|a| (0..n).map(|b| q.tensor(b, a)).collect()).collect(),
        unit: q.unit,
    }
}

impl fmt::Display for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.lattice.names().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for q in [Quantale::boolean(), Quantale::lukasiewicz(3), Quantale::trivial()] {
            assert!(validate_quantale(&q.to_raw()).passed(), "{q}");
        }
        assert_eq!(Quantale::boolean().len(), 2);
        let l3 = make_builtin(Builtin::Lukasiewicz(3));
        assert_eq!(l3.len(), 4);
        assert_eq!(l3.unit(), 3);
        let t = Quantale::trivial();
        assert_eq!((t.len(), t.unit(), t.bottom(), t.top()), (1, 0, 0, 0));
    }

    #[test]
    fn joins() {
        let b = Quantale::boolean();
        assert_eq!(b.join([0, 1]), 1);
        let l3 = Quantale::lukasiewicz(3);
        assert_eq!(l3.join([1, 2]), 2);
        assert_eq!(l3.join([]), l3.bottom());
        assert_eq!(l3.meet([]), l3.top());
    }

    #[test]
    fn residuals() {
        let b = Quantale::boolean();
        assert_eq!(b.residual_right(1, 0), 0);
        for n in 1..=5 {
            let q = Quantale::lukasiewicz(n);
            for a in q.elements() {
                assert_eq!(q.residual_right(a, q.top()), q.top());
                for b in q.elements() {
                    assert_eq!(q.residual_right(a, b), n.min(n - a + b));
                }
            }
        }
    }

    #[test]
    fn non_monotone_tensor_fails_distributivity() {
        // associative and unital, but 1⊗1 = 2 exceeds 1⊗2 = 1
        let lattice = FiniteLattice::chain(vec!["0".into(), "1".into(), "2".into()]);
        let raw = RawQuantale {
            elements: lattice.names().to_vec(),
            leq: lattice.order().to_vec(),
            tensor: [["0", "0", "0"], ["0", "2", "1"], ["0", "1", "2"]]
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
            unit: "2".into(),
        };
        let report = validate_quantale(&raw);
        assert!(!report.passed());
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "join-distributivity", "{fail:?}");
        assert!(fail.witness.is_some());
        assert!(matches!(Quantale::from_raw(&raw), Err(Error::LawViolated { .. })));
    }

    #[test]
    fn unknown_tensor_entry() {
        let mut raw = Quantale::boolean().to_raw();
        raw.tensor[0][0] = "x".into();
        assert_eq!(validate_quantale(&raw).first_failure().unwrap().name, "tensor table");
    }

    #[test]
    fn reverse() {
        let l3 = Quantale::lukasiewicz(3);
        assert_eq!(reverse_quantale(&l3), l3);
        let q = Quantale::skew_chain();
        assert!(!q.is_commutative());
        let r = reverse_quantale(&q);
        assert_ne!(r, q);
        assert!(validate_quantale(&r.to_raw()).passed());
        assert_eq!(reverse_quantale(&r), q);
        for a in q.elements() {
            for b in q.elements() {
                assert_eq!(r.tensor(a, b), q.tensor(b, a));
            }
        }
    }

    /// Every unital quantale on the 3-chain is commutative, which is why
    /// the non-commutative fixture has four elements.
    #[test]
    fn three_chain_quantales_commute() {
        let lattice = FiniteLattice::chain(vec!["0".into(), "1".into(), "2".into()]);
        let mut found = 0;
        for unit in 0..3 {
            for code in 0..3usize.pow(9) {
                let mut c = code;
                let tensor: Vec<Vec<usize>> = (0..3)
                    .map(|_| {
                        (0..3)
                            .map(|_| {
                                let x = c % 3;
                                c /= 3;
                                x
                            })
                            .collect()
                    })
                    .collect();
                if let Ok(q) = Quantale::from_table(lattice.clone(), tensor, unit) {
                    found += 1;
                    assert!(q.is_commutative());
                }
            }
        }
        assert!(found > 0);
    }
}
