//! Dense exponent vectors and monomial orders.

use alloc::vec::Vec;
use core::cmp::Ordering;

use smallvec::SmallVec;

type Exps = SmallVec<[u16; 20]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn var(nvars: usize, v: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[v] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; requires `self` to divide `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Bit mask of the support; variables beyond 63 are ignored.
    pub fn support_mask(&self) -> u64 {
        self.support().filter(|&v| v < 64).fold(0, |m, v| m | 1 << v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
}

/// A monomial order; `priority[r]` is the variable of rank `r`, rank 0 being
/// the most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    identity: bool,
}

impl MonomialOrder {
    /// Variables ranked by their index.
    pub fn new(kind: OrderKind, nvars: usize) -> MonomialOrder {
        MonomialOrder {
            kind,
            priority: (0..nvars).collect(),
            identity: true,
        }
    }

    /// Returns `None` unless `priority` is a permutation of `0..len`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Option<MonomialOrder> {
        let mut seen = alloc::vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        let identity = priority.iter().enumerate().all(|(i, &v)| i == v);
        Some(MonomialOrder {
            kind,
            priority,
            identity,
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                if self.identity {
                    for (x, y) in a.exps.iter().zip(&b.exps) {
                        if x != y {
                            return x.cmp(y);
                        }
                    }
                } else {
                    for &v in &self.priority {
                        if a.exps[v] != b.exps[v] {
                            return a.exps[v].cmp(&b.exps[v]);
                        }
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                if self.identity {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                } else {
                    for &v in self.priority.iter().rev() {
                        if a.exps[v] != b.exps[v] {
                            return b.exps[v].cmp(&a.exps[v]);
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}
