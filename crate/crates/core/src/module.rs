//! Finite modules over a quantale: a finite lattice `M` with an action
//! `V × M → M` (left) or `M × V → M` (right).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::quantale::{reverse_quantale, Quantale};
use crate::report::{Check, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Serialized module data. The action table is indexed by the left factor:
/// `action[v][m] = v·m` for a left module and `action[m][v] = m·v` for a
/// right module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModule {
    pub side: Side,
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub action: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleLattice {
    base: Arc<Quantale>,
    side: Side,
    lattice: FiniteLattice,
    /// `act[v][m]`, whichever side `v` acts from.
    act: Vec<Vec<usize>>,
}

fn index_action(base: &Quantale, lattice: &FiniteLattice, raw: &RawModule) -> Result<Vec<Vec<usize>>> {
    let (nv, nm) = (base.len(), lattice.len());
    let (rows, cols) = match raw.side {
        Side::Left => (nv, nm),
        Side::Right => (nm, nv),
    };
    if raw.action.len() != rows || raw.action.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid(format!("action table is not {rows}×{cols}")));
    }
    let mut act = vec![vec![0; nm]; nv];
    for (i, row) in raw.action.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let value = lattice.index_of(x)?;
            match raw.side {
                Side::Left => act[i][j] = value,
                Side::Right => act[j][i] = value,
            }
        }
    }
    Ok(act)
}

/// Checks the lattice and action laws. Check names: `partial order`,
/// `lattice`, `action table`, `associativity`, `unit`,
/// `join-distributivity`. Strictness is not a law; see
/// [`ModuleLattice::is_strict`].
pub fn validate_module(base: &Quantale, raw: &RawModule) -> SuiteReport {
    let mut report = FiniteLattice::check(&raw.elements, &raw.leq);
    let Ok(lattice) = FiniteLattice::new(raw.elements.clone(), raw.leq.clone()) else {
        return report;
    };
    match index_action(base, &lattice, raw) {
        Ok(act) => {
            report.push(Check::pass("action table", 1));
            report.extend(check_action_laws(base, raw.side, &lattice, &act));
        }
        Err(e) => report.push(Check::fail("action table", 0, e.to_string())),
    }
    report
}

fn check_action_laws(q: &Quantale, side: Side, l: &FiniteLattice, act: &[Vec<usize>]) -> SuiteReport {
    let mut report = SuiteReport::new();
    let (nv, nm) = (q.len(), l.len());
    let vn = |a: usize| q.name(a).to_string();
    let mn = |m: usize| l.name(m).to_string();

    let mut witness = None;
    let mut cases = 0;
    'assoc: for a in 0..nv {
        for b in 0..nv {
            for m in 0..nm {
                cases += 1;
                let (lhs, rhs, text) = match side {
                    Side::Left => (
                        act[q.tensor(a, b)][m],
                        act[a][act[b][m]],
                        format!("({}⊗{})·{} ≠ {}·({}·{})", vn(a), vn(b), mn(m), vn(a), vn(b), mn(m)),
                    ),
                    Side::Right => (
                        act[q.tensor(a, b)][m],
                        act[b][act[a][m]],
                        format!("{}·({}⊗{}) ≠ ({}·{})·{}", mn(m), vn(a), vn(b), mn(m), vn(a), vn(b)),
                    ),
                };
                if lhs != rhs {
                    witness = Some(text);
                    break 'assoc;
                }
            }
        }
    }
    report.push(Check::from_witness("associativity", cases, witness));

    let witness = (0..nm)
        .find(|&m| act[q.unit()][m] != m)
        .map(|m| format!("the unit moves {}", mn(m)));
    report.push(Check::from_witness("unit", nm as u64, witness));

    let mut witness = None;
    let mut cases = 0;
    'dist: for a in 0..nv {
        cases += 1;
        if act[a][l.bottom()] != l.bottom() {
            witness = Some(format!("{} does not fix ⊥", vn(a)));
            break;
        }
        for m in 0..nm {
            for b in 0..nv {
                cases += 1;
                if act[q.join2(a, b)][m] != l.join2(act[a][m], act[b][m]) {
                    witness = Some(format!("action of {}∨{} on {} is not the join", vn(a), vn(b), mn(m)));
                    break 'dist;
                }
            }
            for n in 0..nm {
                cases += 1;
                if act[a][l.join2(m, n)] != l.join2(act[a][m], act[a][n]) {
                    witness = Some(format!("action of {} on {}∨{} is not the join", vn(a), mn(m), mn(n)));
                    break 'dist;
                }
            }
        }
    }
    report.push(Check::from_witness("join-distributivity", cases, witness));
    report
}

impl ModuleLattice {
    pub fn from_raw(base: Arc<Quantale>, raw: &RawModule) -> Result<Self> {
        let report = validate_module(&base, raw);
        if let Some(c) = report.first_failure() {
            return Err(Error::LawViolated {
                law: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
        let lattice = FiniteLattice::new(raw.elements.clone(), raw.leq.clone())?;
        let act = index_action(&base, &lattice, raw)?;
        Ok(ModuleLattice {
            base,
            side: raw.side,
            lattice,
            act,
        })
    }

    /// Builds a module from `act[v][m]` (the acting element first).
    pub fn from_table(base: Arc<Quantale>, side: Side, lattice: FiniteLattice, act: Vec<Vec<usize>>) -> Result<Self> {
        let (nv, nm) = (base.len(), lattice.len());
        if act.len() != nv || act.iter().any(|r| r.len() != nm || r.iter().any(|&x| x >= nm)) {
            return Err(Error::Invalid(format!("action table is not {nv}×{nm}")));
        }
        let report = check_action_laws(&base, side, &lattice, &act);
        if let Some(c) = report.first_failure() {
            return Err(Error::LawViolated {
                law: c.name.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            });
        }
        Ok(ModuleLattice {
            base,
            side,
            lattice,
            act,
        })
    }

    /// `V` acting on itself by tensoring from the given side.
    pub fn regular(base: Arc<Quantale>, side: Side) -> Self {
        let n = base.len();
        let act = (0..n)
            .map(|a| {
                (0..n)
                    .map(|m| match side {
                        Side::Left => base.tensor(a, m),
                        Side::Right => base.tensor(m, a),
                    })
                    .collect()
            })
            .collect();
        ModuleLattice {
            lattice: base.lattice().clone(),
            base,
            side,
            act,
        }
    }

    /// The one-element module.
    pub fn terminal(base: Arc<Quantale>, side: Side) -> Self {
        let act = vec![vec![0]; base.len()];
        ModuleLattice {
            base,
            side,
            lattice: FiniteLattice::chain(vec!["0".into()]),
            act,
        }
    }

    pub fn to_raw(&self) -> RawModule {
        let names = self.lattice.names();
        let (nv, nm) = (self.base.len(), self.len());
        let action = match self.side {
            Side::Left => (0..nv)
                .map(|a| (0..nm).map(|m| names[self.act[a][m]].clone()).collect())
                .collect(),
            Side::Right => (0..nm)
                .map(|m| (0..nv).map(|a| names[self.act[a][m]].clone()).collect())
                .collect(),
        };
        RawModule {
            side: self.side,
            elements: names.to_vec(),
            leq: self.lattice.order().to_vec(),
            action,
        }
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn side(&self) -> Side {
        self.side
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

    pub fn name(&self, m: usize) -> &str {
        self.lattice.name(m)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lattice.index_of(name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    pub fn leq(&self, m: usize, n: usize) -> bool {
        self.lattice.leq(m, n)
    }

    /// `v·m` for a left module, `m·v` for a right module.
    pub fn act(&self, v: usize, m: usize) -> usize {
        self.act[v][m]
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn join2(&self, m: usize, n: usize) -> usize {
        self.lattice.join2(m, n)
    }

    pub fn meet2(&self, m: usize, n: usize) -> usize {
        self.lattice.meet2(m, n)
    }

    pub fn join<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        self.lattice.join(xs)
    }

    pub fn meet<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        self.lattice.meet(xs)
    }

    /// `⊥_V` acts as `⊥_M`, i.e. the action preserves the empty join in the
    /// quantale variable.
    pub fn is_strict(&self) -> bool {
        let bot = self.base.bottom();
        self.elements().all(|m| self.act[bot][m] == self.bottom())
    }

    /// Whether this is `V` acting on itself from `self.side()`.
    pub fn is_regular(&self) -> bool {
        *self == ModuleLattice::regular(self.base.clone(), self.side)
    }

    /// A left `V`-module as a right `V^rev`-module and vice versa.
    pub fn to_opposite_side(&self) -> ModuleLattice {
        ModuleLattice {
            base: Arc::new(reverse_quantale(&self.base)),
            side: self.side.flip(),
            lattice: self.lattice.clone(),
            act: self.act.clone(),
        }
    }
}

impl fmt::Display for ModuleLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        write!(f, "{side} module {{{}}}", self.lattice.names().join(","))
    }
}
