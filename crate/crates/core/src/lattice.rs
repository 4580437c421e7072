//! Finite lattices given by an order matrix, with cached binary joins and
//! meets.

use crate::error::{Error, Result};
use crate::report::{Check, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

fn least(candidates: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&d| leq[c][d]))
}

fn greatest(candidates: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&d| leq[d][c]))
}

impl FiniteLattice {
    /// Checks that `leq` is a partial order with all binary joins and
    /// meets and a bottom and top. Check names are `partial order` and
    /// `lattice`.
    pub fn check(names: &[String], leq: &[Vec<bool>]) -> SuiteReport {
        let mut report = SuiteReport::new();
        let n = names.len();
        if n == 0 || leq.len() != n || leq.iter().any(|row| row.len() != n) {
            report.push(Check::fail("partial order", 0, format!("order matrix is not {n}×{n} or empty")));
            return report;
        }
        let mut witness = None;
        let mut cases = 0;
        'order: for a in 0..n {
            cases += 1;
            if !leq[a][a] {
                witness = Some(format!("{} ≰ {}", names[a], names[a]));
                break;
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    witness = Some(format!("{} ≤ {} ≤ {}", names[a], names[b], names[a]));
                    break 'order;
                }
                for c in 0..n {
                    cases += 1;
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        witness = Some(format!("{} ≤ {} ≤ {} but {} ≰ {}", names[a], names[b], names[c], names[a], names[c]));
                        break 'order;
                    }
                }
            }
        }
        let order_ok = witness.is_none();
        report.push(Check::from_witness("partial order", cases, witness));
        if !order_ok {
            report.push(Check::fail("lattice", 0, "not a partial order"));
            return report;
        }
        let all: Vec<usize> = (0..n).collect();
        let mut witness = None;
        if least(&all, leq).is_none() {
            witness = Some("no bottom element".to_string());
        } else if greatest(&all, leq).is_none() {
            witness = Some("no top element".to_string());
        }
        let mut cases = 1;
        'pairs: for a in 0..n {
            for b in 0..n {
                if witness.is_some() {
                    break 'pairs;
                }
                cases += 1;
                let upper: Vec<usize> = all.iter().copied().filter(|&c| leq[a][c] && leq[b][c]).collect();
                let lower: Vec<usize> = all.iter().copied().filter(|&c| leq[c][a] && leq[c][b]).collect();
                if least(&upper, leq).is_none() {
                    witness = Some(format!("{} and {} have no join", names[a], names[b]));
                } else if greatest(&lower, leq).is_none() {
                    witness = Some(format!("{} and {} have no meet", names[a], names[b]));
                }
            }
        }
        report.push(Check::from_witness("lattice", cases, witness));
        report
    }

    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(Error::Invalid(format!("duplicate element `{dup}`")));
        }
        if let Some(c) = FiniteLattice::check(&names, &leq).first_failure() {
            return Err(Error::LawViolated {
                law: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
        let n = names.len();
        let all: Vec<usize> = (0..n).collect();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let upper: Vec<usize> = all.iter().copied().filter(|&c| leq[a][c] && leq[b][c]).collect();
                let lower: Vec<usize> = all.iter().copied().filter(|&c| leq[c][a] && leq[c][b]).collect();
                join[a][b] = least(&upper, &leq).unwrap();
                meet[a][b] = greatest(&lower, &leq).unwrap();
            }
        }
        Ok(FiniteLattice {
            bottom: least(&all, &leq).unwrap(),
            top: greatest(&all, &leq).unwrap(),
            names,
            leq,
            join,
            meet,
        })
    }

    /// The chain `0 < 1 < ⋯ < n−1`.
    pub fn chain(names: Vec<String>) -> Self {
        let n = names.len();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::new(names, leq).expect("chains are lattices")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    /// `⋁ xs`; the empty join is the bottom.
    pub fn join<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join[acc][x])
    }

    /// `⋀ xs`; the empty meet is the top.
    pub fn meet<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet[acc][x])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }
}
