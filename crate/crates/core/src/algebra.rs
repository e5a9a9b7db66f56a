//! Finite algebras given by operation tables over a named universe.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::subset::MAX_CARRIER;

/// Which operations beyond `∧` and `∨` an algebra (or a homomorphism search)
/// carries. The two binary operations are always present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub neg: bool,
    pub zero: bool,
    pub one: bool,
}

impl Signature {
    /// `{∧, ∨}`.
    pub const LATTICE: Signature = Signature { neg: false, zero: false, one: false };
    /// `{∧, ∨, 0, 1}`.
    pub const BOUNDED: Signature = Signature { neg: false, zero: true, one: true };
    /// `{∧, ∨, ′, 0, 1}`.
    pub const FULL: Signature = Signature { neg: true, zero: true, one: true };

    pub fn is_subset_of(self, other: Signature) -> bool {
        (!self.neg || other.neg) && (!self.zero || other.zero) && (!self.one || other.one)
    }

    pub fn intersection(self, other: Signature) -> Signature {
        Signature { neg: self.neg && other.neg, zero: self.zero && other.zero, one: self.one && other.one }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec!["meet", "join"];
        if self.neg {
            parts.push("neg");
        }
        if self.zero {
            parts.push("zero");
        }
        if self.one {
            parts.push("one");
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Binary operation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Meet,
    Join,
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinOp::Meet => "meet",
            BinOp::Join => "join",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("universe has {0} elements; at most {max} are supported", max = MAX_CARRIER)]
    TooLarge(usize),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("element name `{0}` is empty or contains whitespace")]
    BadName(String),
    #[error("{op} table is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { op: String, row: usize, len: usize, expected: usize },
    #[error("{op} table has {rows} rows, expected {expected}")]
    WrongRowCount { op: String, rows: usize, expected: usize },
    #[error("{op} table entry ({row}, {col}) = {value} is outside the universe")]
    OutOfRange { op: String, row: usize, col: usize, value: usize },
    #[error("negation table has {len} entries, expected {expected}")]
    NegLength { len: usize, expected: usize },
    #[error("negation is not a bijection: {0} is hit twice")]
    NegNotBijective(usize),
    #[error("constant index {0} is outside the universe")]
    ConstantOutOfRange(usize),
}

/// Checks that `table` is an `n × n` table with entries in `0..n`.
pub fn validate_table(op: &str, table: &[Vec<usize>], n: usize) -> Result<(), TableError> {
    if table.len() != n {
        return Err(TableError::WrongRowCount { op: op.to_string(), rows: table.len(), expected: n });
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(TableError::NonSquare { op: op.to_string(), row, len: entries.len(), expected: n });
        }
        if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(TableError::OutOfRange { op: op.to_string(), row, col, value });
        }
    }
    Ok(())
}

/// A finite algebra `⟨A, ∧, ∨[, ′][, 0][, 1]⟩` stored as index tables.
///
/// Elements are referred to by their position in [`AlgebraTable::names`].
/// Tables are validated for shape and range on construction; no equational
/// law is assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraTable {
    names: Vec<String>,
    meet: Vec<usize>,
    join: Vec<usize>,
    neg: Option<Vec<usize>>,
    zero: Option<usize>,
    one: Option<usize>,
}

impl AlgebraTable {
    /// Builds the `{∧, ∨}` algebra from row-major tables.
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
    ) -> Result<Self, TableError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if n == 0 {
            return Err(TableError::EmptyUniverse);
        }
        if n > MAX_CARRIER {
            return Err(TableError::TooLarge(n));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(TableError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(TableError::DuplicateName(name.clone()));
            }
        }
        validate_table("meet", &meet, n)?;
        validate_table("join", &join, n)?;
        Ok(AlgebraTable { names, meet: meet.concat(), join: join.concat(), neg: None, zero: None, one: None })
    }

    /// Builds an algebra from flat tables with generated names `a0, a1, ..`.
    pub(crate) fn from_flat(n: usize, meet: Vec<usize>, join: Vec<usize>) -> Self {
        debug_assert_eq!(meet.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        AlgebraTable { names: (0..n).map(|i| format!("a{i}")).collect(), meet, join, neg: None, zero: None, one: None }
    }

    pub fn with_neg(mut self, neg: Vec<usize>) -> Result<Self, TableError> {
        let n = self.len();
        if neg.len() != n {
            return Err(TableError::NegLength { len: neg.len(), expected: n });
        }
        let mut hit = vec![false; n];
        for &v in &neg {
            if v >= n {
                return Err(TableError::OutOfRange { op: "neg".into(), row: 0, col: v, value: v });
            }
            if std::mem::replace(&mut hit[v], true) {
                return Err(TableError::NegNotBijective(v));
            }
        }
        self.neg = Some(neg);
        Ok(self)
    }

    pub fn with_zero(mut self, zero: usize) -> Result<Self, TableError> {
        if zero >= self.len() {
            return Err(TableError::ConstantOutOfRange(zero));
        }
        self.zero = Some(zero);
        Ok(self)
    }

    pub fn with_one(mut self, one: usize) -> Result<Self, TableError> {
        if one >= self.len() {
            return Err(TableError::ConstantOutOfRange(one));
        }
        self.one = Some(one);
        Ok(self)
    }

    /// Replaces the element names, keeping every table.
    pub fn renamed<S: Into<String>>(&self, names: Vec<S>) -> Result<Self, TableError> {
        let rebuilt = AlgebraTable::new(names, self.meet_rows(), self.join_rows())?;
        Ok(AlgebraTable { names: rebuilt.names, ..self.clone() })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; a universe has at least one element.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn op(&self, op: BinOp, a: usize, b: usize) -> usize {
        match op {
            BinOp::Meet => self.meet(a, b),
            BinOp::Join => self.join(a, b),
        }
    }

    /// `a′`, when the algebra has an involution.
    #[inline]
    pub fn neg(&self, a: usize) -> Option<usize> {
        self.neg.as_ref().map(|t| t[a])
    }

    pub fn neg_table(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn signature(&self) -> Signature {
        Signature { neg: self.neg.is_some(), zero: self.zero.is_some(), one: self.one.is_some() }
    }

    pub fn meet_rows(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    pub fn join_rows(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn flat(&self, op: BinOp) -> &[usize] {
        match op {
            BinOp::Meet => &self.meet,
            BinOp::Join => &self.join,
        }
    }

    /// Drops the operations outside `sig`. Operations requested by `sig` but
    /// absent here stay absent.
    pub fn reduct(&self, sig: Signature) -> AlgebraTable {
        AlgebraTable {
            neg: if sig.neg { self.neg.clone() } else { None },
            zero: if sig.zero { self.zero } else { None },
            one: if sig.one { self.one } else { None },
            ..self.clone()
        }
    }

    /// Relabels along the permutation `perm` (old index `i` becomes `perm[i]`).
    /// Names travel with their elements.
    pub fn permuted(&self, perm: &[usize]) -> AlgebraTable {
        let n = self.len();
        debug_assert_eq!(perm.len(), n);
        let mut names = vec![String::new(); n];
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                meet[perm[a] * n + perm[b]] = perm[self.meet(a, b)];
                join[perm[a] * n + perm[b]] = perm[self.join(a, b)];
            }
        }
        let neg = self.neg.as_ref().map(|t| {
            let mut out = vec![0; n];
            for a in 0..n {
                out[perm[a]] = perm[t[a]];
            }
            out
        });
        AlgebraTable { names, meet, join, neg, zero: self.zero.map(|z| perm[z]), one: self.one.map(|o| perm[o]) }
    }

    /// True when every table (names aside) agrees entry-wise.
    pub fn same_tables(&self, other: &AlgebraTable) -> bool {
        self.meet == other.meet
            && self.join == other.join
            && self.neg == other.neg
            && self.zero == other.zero
            && self.one == other.one
    }

    pub(crate) fn set_neg_unchecked(&mut self, neg: Option<Vec<usize>>) {
        self.neg = neg;
    }

    pub(crate) fn set_constants_unchecked(&mut self, zero: Option<usize>, one: Option<usize>) {
        self.zero = zero;
        self.one = one;
    }
}
