//! The named algebras: the weak and strong Kleene matrices, the two-element
//! Boolean algebra and the one-element lattice.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::AlgebraTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinName {
    WeakKleene3,
    StrongKleene3,
    Bool2,
    Lattice1,
}

impl BuiltinName {
    pub const ALL: [BuiltinName; 4] =
        [BuiltinName::WeakKleene3, BuiltinName::StrongKleene3, BuiltinName::Bool2, BuiltinName::Lattice1];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::WeakKleene3 => "weak_kleene_3",
            BuiltinName::StrongKleene3 => "strong_kleene_3",
            BuiltinName::Bool2 => "bool_2",
            BuiltinName::Lattice1 => "lattice_1",
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown builtin algebra `{0}`")]
pub struct UnknownBuiltin(pub String);

impl FromStr for BuiltinName {
    type Err = UnknownBuiltin;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinName::ALL.into_iter().find(|b| b.as_str() == s).ok_or_else(|| UnknownBuiltin(s.to_string()))
    }
}

// Index order for the three-valued algebras: 0, h (the value 1/2), 1.
const ZERO: usize = 0;
const HALF: usize = 1;
const ONE: usize = 2;

fn three_valued(meet: [[usize; 3]; 3], join: [[usize; 3]; 3]) -> AlgebraTable {
    AlgebraTable::new(
        vec!["0", "h", "1"],
        meet.iter().map(|r| r.to_vec()).collect(),
        join.iter().map(|r| r.to_vec()).collect(),
    )
    .and_then(|a| a.with_neg(vec![ONE, HALF, ZERO]))
    .and_then(|a| a.with_zero(ZERO))
    .and_then(|a| a.with_one(ONE))
    .expect("builtin three-valued tables are well formed")
}

/// Looks an algebra up by its builtin name.
pub fn builtin(name: BuiltinName) -> AlgebraTable {
    match name {
        // Weak (contagious) connectives: any h operand yields h.
        BuiltinName::WeakKleene3 => three_valued(
            [[ZERO, HALF, ZERO], [HALF, HALF, HALF], [ZERO, HALF, ONE]],
            [[ZERO, HALF, ONE], [HALF, HALF, HALF], [ONE, HALF, ONE]],
        ),
        BuiltinName::StrongKleene3 => three_valued(
            [[ZERO, ZERO, ZERO], [ZERO, HALF, HALF], [ZERO, HALF, ONE]],
            [[ZERO, HALF, ONE], [HALF, HALF, ONE], [ONE, ONE, ONE]],
        ),
        BuiltinName::Bool2 => {
            AlgebraTable::new(vec!["0", "1"], vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]])
                .and_then(|a| a.with_neg(vec![1, 0]))
                .and_then(|a| a.with_zero(0))
                .and_then(|a| a.with_one(1))
                .expect("bool_2 tables are well formed")
        }
        BuiltinName::Lattice1 => {
            AlgebraTable::new(vec!["e"], vec![vec![0]], vec![vec![0]]).expect("lattice_1 tables are well formed")
        }
    }
}

/// [`builtin`] by string name.
pub fn builtin_by_name(name: &str) -> Result<AlgebraTable, UnknownBuiltin> {
    name.parse().map(builtin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries_from_the_matrices() {
        let w = builtin(BuiltinName::WeakKleene3);
        assert_eq!(w.meet(ZERO, HALF), HALF);
        assert_eq!(w.neg(HALF), Some(HALF));
        let s = builtin(BuiltinName::StrongKleene3);
        assert_eq!(s.meet(ZERO, HALF), ZERO);
        assert_eq!(s.join(HALF, ONE), ONE);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(builtin_by_name("kleene"), Err(UnknownBuiltin("kleene".into())));
        assert_eq!(builtin_by_name("bool_2").unwrap().len(), 2);
    }
}
