//! Equational checks over finite operation tables.
//!
//! Every check is exhaustive over the universe and reports the first
//! counterexample in lexicographic order of the witness tuple.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{validate_table, AlgebraTable, BinOp, TableError};

/// An identity that can fail on a finite algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Idempotence(BinOp),
    Commutativity(BinOp),
    Associativity(BinOp),
    /// `x ∧ (y ∨ z) ≈ (x ∧ y) ∨ (x ∧ z)`
    MeetOverJoin,
    /// `x ∨ (y ∧ z) ≈ (x ∨ y) ∧ (x ∨ z)`
    JoinOverMeet,
    /// `x ∧ 1 ≈ x`
    MeetUnit,
    /// `x ∨ 0 ≈ x`
    JoinUnit,
    /// `x″ ≈ x`
    DoubleNegation,
    /// `x′ ∨ y′ ≈ (x ∧ y)′`
    DeMorganMeet,
    /// `x′ ∧ y′ ≈ (x ∨ y)′`
    DeMorganJoin,
    /// `x ∨ (x ∧ y) ≈ x`
    AbsorptionJoinMeet,
    /// `x ∧ (x ∨ y) ≈ x`
    AbsorptionMeetJoin,
    /// One of the eight axioms of involutive bisemilattices, by position.
    Involutive(u8),
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Idempotence(op) => write!(f, "{op} idempotence"),
            Law::Commutativity(op) => write!(f, "{op} commutativity"),
            Law::Associativity(op) => write!(f, "{op} associativity"),
            Law::MeetOverJoin => f.write_str("x&(y|z) = (x&y)|(x&z)"),
            Law::JoinOverMeet => f.write_str("x|(y&z) = (x|y)&(x|z)"),
            Law::MeetUnit => f.write_str("x&1 = x"),
            Law::JoinUnit => f.write_str("x|0 = x"),
            Law::DoubleNegation => f.write_str("x'' = x"),
            Law::DeMorganMeet => f.write_str("x'|y' = (x&y)'"),
            Law::DeMorganJoin => f.write_str("x'&y' = (x|y)'"),
            Law::AbsorptionJoinMeet => f.write_str("x|(x&y) = x"),
            Law::AbsorptionMeetJoin => f.write_str("x&(x|y) = x"),
            Law::Involutive(i) => {
                let text = match i {
                    1 => "x|x = x",
                    2 => "x|y = y|x",
                    3 => "x|(y|z) = (x|y)|z",
                    4 => "x'' = x",
                    5 => "x&y = (x'|y')'",
                    6 => "x&(x'|y) = x&y",
                    7 => "0|x = x",
                    _ => "0 = 1'",
                };
                f.write_str(text)
            }
        }
    }
}

/// A failed identity together with the assignment that breaks it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl Violation {
    fn new(law: Law, witness: &[usize]) -> Self {
        Violation { law, witness: witness.to_vec() }
    }

    /// Renders the witness through element names.
    pub fn describe(&self, alg: &AlgebraTable) -> String {
        let names: Vec<&str> = self.witness.iter().map(|&i| alg.name(i)).collect();
        format!("{} fails at ({})", self.law, names.join(", "))
    }
}

/// Outcome of a universal check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }

    fn from_option(v: Option<Violation>) -> Self {
        v.map_or(Verdict::Holds, Verdict::Fails)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawError {
    #[error("the {0} operation is required for this check but absent")]
    MissingOperation(&'static str),
}

fn semilattice_violation(op: BinOp, t: &[usize], n: usize) -> Option<Violation> {
    let at = |a: usize, b: usize| t[a * n + b];
    if let Some(x) = (0..n).find(|&x| at(x, x) != x) {
        return Some(Violation::new(Law::Idempotence(op), &[x]));
    }
    for x in 0..n {
        for y in 0..n {
            if at(x, y) != at(y, x) {
                return Some(Violation::new(Law::Commutativity(op), &[x, y]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if at(at(x, y), z) != at(x, at(y, z)) {
                    return Some(Violation::new(Law::Associativity(op), &[x, y, z]));
                }
            }
        }
    }
    None
}

/// Checks that a raw `n × n` table is commutative, associative and idempotent.
///
/// The table is labelled as a meet table in the violation; use
/// [`check_reduct`] to check a specific operation of an algebra.
pub fn check_semilattice(table: &[Vec<usize>]) -> Result<Verdict, TableError> {
    let n = table.len();
    validate_table("operation", table, n)?;
    let flat = table.concat();
    Ok(Verdict::from_option(semilattice_violation(BinOp::Meet, &flat, n)))
}

/// Semilattice check of one reduct of `alg`.
pub fn check_reduct(alg: &AlgebraTable, op: BinOp) -> Verdict {
    Verdict::from_option(semilattice_violation(op, alg.flat(op), alg.len()))
}

/// Both distributive laws, for every triple.
pub fn check_distributive(alg: &AlgebraTable) -> Verdict {
    let n = alg.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if alg.meet(x, alg.join(y, z)) != alg.join(alg.meet(x, y), alg.meet(x, z)) {
                    return Verdict::Fails(Violation::new(Law::MeetOverJoin, &[x, y, z]));
                }
                if alg.join(x, alg.meet(y, z)) != alg.meet(alg.join(x, y), alg.join(x, z)) {
                    return Verdict::Fails(Violation::new(Law::JoinOverMeet, &[x, y, z]));
                }
            }
        }
    }
    Verdict::Holds
}

fn require(present: Option<usize>, what: &'static str) -> Result<usize, LawError> {
    present.ok_or(LawError::MissingOperation(what))
}

/// `x ∧ 1 ≈ x` and `x ∨ 0 ≈ x`.
pub fn check_bounded(alg: &AlgebraTable) -> Result<Verdict, LawError> {
    let zero = require(alg.zero(), "zero")?;
    let one = require(alg.one(), "one")?;
    for x in 0..alg.len() {
        if alg.meet(x, one) != x {
            return Ok(Verdict::Fails(Violation::new(Law::MeetUnit, &[x])));
        }
        if alg.join(x, zero) != x {
            return Ok(Verdict::Fails(Violation::new(Law::JoinUnit, &[x])));
        }
    }
    Ok(Verdict::Holds)
}

/// `′` is an involution satisfying both De Morgan laws.
pub fn check_demorgan(alg: &AlgebraTable) -> Result<Verdict, LawError> {
    let neg = alg.neg_table().ok_or(LawError::MissingOperation("neg"))?;
    let n = alg.len();
    if let Some(x) = (0..n).find(|&x| neg[neg[x]] != x) {
        return Ok(Verdict::Fails(Violation::new(Law::DoubleNegation, &[x])));
    }
    for x in 0..n {
        for y in 0..n {
            if alg.join(neg[x], neg[y]) != neg[alg.meet(x, y)] {
                return Ok(Verdict::Fails(Violation::new(Law::DeMorganMeet, &[x, y])));
            }
            if alg.meet(neg[x], neg[y]) != neg[alg.join(x, y)] {
                return Ok(Verdict::Fails(Violation::new(Law::DeMorganJoin, &[x, y])));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The eight-axiom equational base, each axiom checked literally.
pub fn check_involutive(alg: &AlgebraTable) -> Result<Verdict, LawError> {
    let neg = alg.neg_table().ok_or(LawError::MissingOperation("neg"))?;
    let zero = require(alg.zero(), "zero")?;
    let one = require(alg.one(), "one")?;
    let n = alg.len();
    let j = |a, b| alg.join(a, b);
    let m = |a, b| alg.meet(a, b);
    let fail = |i: u8, w: &[usize]| Ok(Verdict::Fails(Violation::new(Law::Involutive(i), w)));

    if let Some(x) = (0..n).find(|&x| j(x, x) != x) {
        return fail(1, &[x]);
    }
    for x in 0..n {
        for y in 0..n {
            if j(x, y) != j(y, x) {
                return fail(2, &[x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if j(x, j(y, z)) != j(j(x, y), z) {
                    return fail(3, &[x, y, z]);
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| neg[neg[x]] != x) {
        return fail(4, &[x]);
    }
    for x in 0..n {
        for y in 0..n {
            if m(x, y) != neg[j(neg[x], neg[y])] {
                return fail(5, &[x, y]);
            }
        }
    }
    for (x, &nx) in neg.iter().enumerate() {
        for y in 0..n {
            if m(x, j(nx, y)) != m(x, y) {
                return fail(6, &[x, y]);
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| j(zero, x) != x) {
        return fail(7, &[x]);
    }
    if zero != neg[one] {
        return fail(8, &[]);
    }
    Ok(Verdict::Holds)
}

/// Both absorption laws, for every pair.
pub fn check_absorption(alg: &AlgebraTable) -> Verdict {
    let n = alg.len();
    for x in 0..n {
        for y in 0..n {
            if alg.join(x, alg.meet(x, y)) != x {
                return Verdict::Fails(Violation::new(Law::AbsorptionJoinMeet, &[x, y]));
            }
            if alg.meet(x, alg.join(x, y)) != x {
                return Verdict::Fails(Violation::new(Law::AbsorptionMeetJoin, &[x, y]));
            }
        }
    }
    Verdict::Holds
}

/// Varieties (and the lattice annotation) an algebra can be classified into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyTag {
    Sem,
    Dbs,
    Bdbs,
    Ddbs,
    Idbs,
    Dlat,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 6] =
        [VarietyTag::Sem, VarietyTag::Dbs, VarietyTag::Bdbs, VarietyTag::Ddbs, VarietyTag::Idbs, VarietyTag::Dlat];

    pub fn as_str(self) -> &'static str {
        match self {
            VarietyTag::Sem => "SEM",
            VarietyTag::Dbs => "DBS",
            VarietyTag::Bdbs => "BDBS",
            VarietyTag::Ddbs => "DDBS",
            VarietyTag::Idbs => "IDBS",
            VarietyTag::Dlat => "DLAT",
        }
    }

    /// The tags this one is included in, itself excluded.
    pub fn implied(self) -> &'static [VarietyTag] {
        use VarietyTag::*;
        match self {
            Dbs => &[],
            Sem | Dlat | Bdbs => &[Dbs],
            Ddbs => &[Bdbs, Dbs],
            Idbs => &[Ddbs, Bdbs, Dbs],
        }
    }

    /// The operations an algebra needs to be a member.
    pub fn signature(self) -> crate::algebra::Signature {
        use crate::algebra::Signature;
        match self {
            VarietyTag::Sem | VarietyTag::Dbs | VarietyTag::Dlat => Signature::LATTICE,
            VarietyTag::Bdbs => Signature::BOUNDED,
            VarietyTag::Ddbs | VarietyTag::Idbs => Signature::FULL,
        }
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown variety `{0}` (expected sem, dbs, bdbs, ddbs, idbs or dlat)")]
pub struct UnknownVariety(pub String);

impl FromStr for VarietyTag {
    type Err = UnknownVariety;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarietyTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownVariety(s.to_string()))
    }
}

/// Every tag whose defining checks pass. Empty when `alg` is not a
/// distributive bisemilattice.
pub fn classify_variety(alg: &AlgebraTable) -> BTreeSet<VarietyTag> {
    let mut tags = BTreeSet::new();
    let is_dbs = check_reduct(alg, BinOp::Meet).holds()
        && check_reduct(alg, BinOp::Join).holds()
        && check_distributive(alg).holds();
    if !is_dbs {
        return tags;
    }
    tags.insert(VarietyTag::Dbs);
    if alg.flat(BinOp::Meet) == alg.flat(BinOp::Join) {
        tags.insert(VarietyTag::Sem);
    }
    if check_absorption(alg).holds() {
        tags.insert(VarietyTag::Dlat);
    }
    if !matches!(check_bounded(alg), Ok(Verdict::Holds)) {
        return tags;
    }
    tags.insert(VarietyTag::Bdbs);
    if !matches!(check_demorgan(alg), Ok(Verdict::Holds)) {
        return tags;
    }
    tags.insert(VarietyTag::Ddbs);
    if matches!(check_involutive(alg), Ok(Verdict::Holds)) {
        tags.insert(VarietyTag::Idbs);
    }
    tags
}

/// Membership in a single variety, with the signature the variety requires.
pub fn in_variety(alg: &AlgebraTable, tag: VarietyTag) -> bool {
    tag.signature().is_subset_of(alg.signature()) && classify_variety(alg).contains(&tag)
}
