//! The partial orders induced by the two semilattice reducts.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraTable, BinOp};
use crate::laws::{check_reduct, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// `a ≤∧ b` iff `a ∧ b = a`.
    Meet,
    /// `a ≤∨ b` iff `a ∨ b = b`.
    Join,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Meet => "meet",
            OrderKind::Join => "join",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("the {kind} reduct is not a semilattice ({violation:?})")]
pub struct NotASemilattice {
    pub kind: OrderKind,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedOrder {
    kind: OrderKind,
    n: usize,
    le: Vec<bool>,
}

impl InducedOrder {
    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// Pairs `(a, b)` with `b` covering `a`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements with nothing strictly below them.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| !(0..self.n).any(|b| self.lt(b, a))).collect()
    }

    /// The up-set `{b : a ≤ b}`.
    pub fn up(&self, a: usize) -> crate::subset::Subset {
        (0..self.n).filter(|&b| self.le(a, b)).collect()
    }

    /// The down-set `{b : b ≤ a}`.
    pub fn down(&self, a: usize) -> crate::subset::Subset {
        (0..self.n).filter(|&b| self.le(b, a)).collect()
    }
}

/// Computes `≤∧` or `≤∨`, provided the corresponding reduct is a semilattice.
pub fn induced_order(alg: &AlgebraTable, kind: OrderKind) -> Result<InducedOrder, NotASemilattice> {
    let op = match kind {
        OrderKind::Meet => BinOp::Meet,
        OrderKind::Join => BinOp::Join,
    };
    if let Some(v) = check_reduct(alg, op).violation() {
        return Err(NotASemilattice { kind, violation: v.clone() });
    }
    Ok(induced_order_unchecked(alg, kind))
}

pub(crate) fn induced_order_unchecked(alg: &AlgebraTable, kind: OrderKind) -> InducedOrder {
    let n = alg.len();
    let mut le = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = match kind {
                OrderKind::Meet => alg.meet(a, b) == a,
                OrderKind::Join => alg.join(a, b) == b,
            };
        }
    }
    InducedOrder { kind, n, le }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};

    #[test]
    fn weak_kleene_orders_are_opposite_chains() {
        let w = builtin(BuiltinName::WeakKleene3);
        let (zero, half, one) = (0, 1, 2);
        let meet = induced_order(&w, OrderKind::Meet).unwrap();
        assert_eq!(meet.covers(), vec![(zero, one), (half, zero)]);
        let join = induced_order(&w, OrderKind::Join).unwrap();
        assert_eq!(join.covers(), vec![(zero, one), (one, half)]);
    }

    #[test]
    fn trivial_order() {
        let o = induced_order(&builtin(BuiltinName::Lattice1), OrderKind::Meet).unwrap();
        assert!(o.le(0, 0));
        assert!(o.covers().is_empty());
    }

    #[test]
    fn non_semilattice_is_rejected() {
        let a = AlgebraTable::new(vec!["a", "b"], vec![vec![0, 0], vec![1, 1]], vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(induced_order(&a, OrderKind::Meet).is_err());
        assert!(induced_order(&a, OrderKind::Join).is_ok());
    }
}
