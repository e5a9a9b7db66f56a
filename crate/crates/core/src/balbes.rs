//! Set representation of distributive bisemilattices.
//!
//! A [`SetAlgebra`] is a pair of set families `X` (closed under `∩`) and `Y`
//! (closed under `∪`) linked by a bijection `θ : X → Y`, optionally with an
//! order-reversing bijection `★ : Y → X`, a least element `0̄` of `Y` and a
//! greatest element `1̄` of `X`. On `X` it carries
//!
//! ```text
//! A · B = A ∩ B            A + B = θ⁻¹(θA ∪ θB)
//! A†    = (θA)★            ⊥ = θ⁻¹(0̄)        ⊤ = 0̄★ (or 1̄ without ★)
//! ```
//!
//! [`build_set_algebra`] realises an algebra through `X = {↑x}` and
//! `Y = {↓x}`, and [`verify_representation`] certifies that `x ↦ ↑x` is an
//! isomorphism onto the derived operations.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraTable, Signature};
use crate::filters::{down_family, filters, up_family, Filter};
use crate::hom::is_homomorphism;
use crate::laws::{check_absorption, classify_variety, VarietyTag};
use crate::subset::Subset;

/// The universal conditions a set algebra can be checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetCondition {
    /// `X` closed under `∩`.
    MeetClosed,
    /// `Y` closed under `∪`.
    JoinClosed,
    /// `0̄ ⊆ P` for every `P ∈ Y`.
    BottomLeast,
    /// `A ⊆ 1̄` for every `A ∈ X`.
    TopGreatest,
    /// `(P ∪ Q)★ = P★ ∩ Q★`.
    StarOrderDual,
    /// `★ ∘ θ = θ⁻¹ ∘ ★⁻¹`.
    StarTheta,
    /// `A ∩ θ⁻¹(θB ∪ θC) = θ⁻¹(θ(A∩B) ∪ θ(A∩C))`.
    Bal1,
    /// `P ∪ θ(θ⁻¹Q ∩ θ⁻¹R) = θ(θ⁻¹(P∪Q) ∩ θ⁻¹(P∪R))`.
    Un,
    /// `θ(A ∩ (θA)★) ⊆ θ(A ∩ B)`.
    Hey,
    /// `θ⁻¹(θA ∪ θ(A∩B)) ⊆ A ⊆ A ∩ θ⁻¹(θA ∪ θB)`.
    Latt,
}

impl SetCondition {
    /// Whether the witness indexes `Y` rather than `X`.
    fn over_y(self) -> bool {
        matches!(
            self,
            SetCondition::JoinClosed | SetCondition::BottomLeast | SetCondition::StarOrderDual | SetCondition::Un
        )
    }
}

impl fmt::Display for SetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetCondition::MeetClosed => "X closed under intersection",
            SetCondition::JoinClosed => "Y closed under union",
            SetCondition::BottomLeast => "0-bar least in Y",
            SetCondition::TopGreatest => "1-bar greatest in X",
            SetCondition::StarOrderDual => "star order-dual",
            SetCondition::StarTheta => "star.theta = theta^-1.star^-1",
            SetCondition::Bal1 => "bal1: meet distributes",
            SetCondition::Un => "un: join distributes",
            SetCondition::Hey => "hey: involutive",
            SetCondition::Latt => "latt: lattice",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetViolation {
    pub condition: SetCondition,
    /// Indices into `X` or `Y`, depending on the condition.
    pub witness: Vec<usize>,
}

impl SetViolation {
    pub fn describe(&self, sa: &SetAlgebra) -> String {
        let arrow = if self.condition.over_y() { "down" } else { "up" };
        let parts: Vec<String> = self.witness.iter().map(|&i| format!("{arrow}({})", sa.labels[i])).collect();
        format!("{} fails at ({})", self.condition, parts.join(", "))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SetCheckError {
    #[error("check needs {0}, which this set algebra does not carry")]
    Missing(&'static str),
    #[error("{} fails at {:?}", .0.condition, .0.witness)]
    Fails(SetViolation),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SetAlgebraError {
    #[error("family sizes disagree: {labels} labels, {x} X-sets, {y} Y-sets")]
    SizeMismatch { labels: usize, x: usize, y: usize },
    #[error("{0} is not a bijection")]
    NotBijective(&'static str),
    #[error("{family} contains the same set twice (labels {first} and {second})")]
    DuplicateSet { family: &'static str, first: String, second: String },
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

/// Two labelled set families with the linking maps.
#[derive(Clone, Debug)]
pub struct SetAlgebra {
    labels: Vec<String>,
    x: Vec<Subset>,
    y: Vec<Subset>,
    theta: Vec<usize>,
    theta_inv: Vec<usize>,
    star: Option<Vec<usize>>,
    star_inv: Option<Vec<usize>>,
    bottom_y: Option<usize>,
    top_x: Option<usize>,
    x_lookup: HashMap<Subset, usize>,
    y_lookup: HashMap<Subset, usize>,
}

fn invert(map: &[usize], what: &'static str) -> Result<Vec<usize>, SetAlgebraError> {
    let mut inv = vec![usize::MAX; map.len()];
    for (i, &j) in map.iter().enumerate() {
        if j >= map.len() || inv[j] != usize::MAX {
            return Err(SetAlgebraError::NotBijective(what));
        }
        inv[j] = i;
    }
    Ok(inv)
}

fn lookup(family: &[Subset], labels: &[String], name: &'static str) -> Result<HashMap<Subset, usize>, SetAlgebraError> {
    let mut map = HashMap::with_capacity(family.len());
    for (i, &s) in family.iter().enumerate() {
        if let Some(prev) = map.insert(s, i) {
            return Err(SetAlgebraError::DuplicateSet {
                family: name,
                first: labels[prev].clone(),
                second: labels[i].clone(),
            });
        }
    }
    Ok(map)
}

/// Parts of a [`SetAlgebra`] before validation.
#[derive(Clone, Debug, Default)]
pub struct SetAlgebraParts {
    pub labels: Vec<String>,
    pub x: Vec<Subset>,
    pub y: Vec<Subset>,
    /// `theta[a]` is the `Y` index of `θ(X[a])`.
    pub theta: Vec<usize>,
    /// `star[p]` is the `X` index of `Y[p]★`.
    pub star: Option<Vec<usize>>,
    pub bottom_y: Option<usize>,
    pub top_x: Option<usize>,
}

impl SetAlgebra {
    /// Validates shapes and bijectivity. None of the universal conditions is
    /// checked here.
    pub fn new(parts: SetAlgebraParts) -> Result<Self, SetAlgebraError> {
        let SetAlgebraParts { labels, x, y, theta, star, bottom_y, top_x } = parts;
        let n = labels.len();
        if x.len() != n || y.len() != n || theta.len() != n || star.as_ref().is_some_and(|s| s.len() != n) {
            return Err(SetAlgebraError::SizeMismatch { labels: n, x: x.len(), y: y.len() });
        }
        if let Some(i) = bottom_y.into_iter().chain(top_x).find(|&i| i >= n) {
            return Err(SetAlgebraError::OutOfRange(i));
        }
        let theta_inv = invert(&theta, "theta")?;
        let star_inv = star.as_deref().map(|s| invert(s, "star")).transpose()?;
        let x_lookup = lookup(&x, &labels, "X")?;
        let y_lookup = lookup(&y, &labels, "Y")?;
        Ok(SetAlgebra { labels, x, y, theta, theta_inv, star, star_inv, bottom_y, top_x, x_lookup, y_lookup })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn x_family(&self) -> &[Subset] {
        &self.x
    }

    pub fn y_family(&self) -> &[Subset] {
        &self.y
    }

    pub fn theta(&self, a: usize) -> usize {
        self.theta[a]
    }

    pub fn theta_inv(&self, p: usize) -> usize {
        self.theta_inv[p]
    }

    pub fn star(&self, p: usize) -> Option<usize> {
        self.star.as_ref().map(|s| s[p])
    }

    pub fn bottom_y(&self) -> Option<usize> {
        self.bottom_y
    }

    pub fn x_index(&self, s: Subset) -> Option<usize> {
        self.x_lookup.get(&s).copied()
    }

    pub fn y_index(&self, s: Subset) -> Option<usize> {
        self.y_lookup.get(&s).copied()
    }

    /// `A · B = A ∩ B`, if that set belongs to `X`.
    pub fn dot(&self, a: usize, b: usize) -> Option<usize> {
        self.x_index(self.x[a].intersection(self.x[b]))
    }

    /// `A + B = θ⁻¹(θA ∪ θB)`, if the union belongs to `Y`.
    pub fn plus(&self, a: usize, b: usize) -> Option<usize> {
        let union = self.y[self.theta[a]].union(self.y[self.theta[b]]);
        self.y_index(union).map(|p| self.theta_inv[p])
    }

    /// `A† = (θA)★`.
    pub fn dagger(&self, a: usize) -> Option<usize> {
        self.star(self.theta[a])
    }

    /// `⊥ = θ⁻¹(0̄)`.
    pub fn bot(&self) -> Option<usize> {
        self.bottom_y.map(|p| self.theta_inv[p])
    }

    /// `⊤ = 0̄★` when `★` is present, otherwise the declared `1̄`.
    pub fn top(&self) -> Option<usize> {
        match (&self.star, self.bottom_y) {
            (Some(star), Some(p)) => Some(star[p]),
            _ => self.top_x,
        }
    }

    fn fail(condition: SetCondition, witness: &[usize]) -> SetCheckError {
        SetCheckError::Fails(SetViolation { condition, witness: witness.to_vec() })
    }

    /// Closure of both families, the bounds, and the `★` laws, as far as the
    /// corresponding parts are present.
    pub fn check_structure(&self) -> Result<(), SetCheckError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.dot(a, b).is_none() {
                    return Err(Self::fail(SetCondition::MeetClosed, &[a, b]));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if self.y_index(self.y[p].union(self.y[q])).is_none() {
                    return Err(Self::fail(SetCondition::JoinClosed, &[p, q]));
                }
            }
        }
        if let Some(bottom) = self.bottom_y {
            if let Some(p) = (0..n).find(|&p| !self.y[bottom].is_subset(self.y[p])) {
                return Err(Self::fail(SetCondition::BottomLeast, &[p]));
            }
        }
        if self.star.is_none() {
            if let Some(top) = self.top_x {
                if let Some(a) = (0..n).find(|&a| !self.x[a].is_subset(self.x[top])) {
                    return Err(Self::fail(SetCondition::TopGreatest, &[a]));
                }
            }
        }
        if let (Some(star), Some(star_inv)) = (&self.star, &self.star_inv) {
            for p in 0..n {
                for q in 0..n {
                    let union = self.y_index(self.y[p].union(self.y[q])).expect("checked above");
                    if self.x[star[union]] != self.x[star[p]].intersection(self.x[star[q]]) {
                        return Err(Self::fail(SetCondition::StarOrderDual, &[p, q]));
                    }
                }
            }
            if let Some(a) = (0..n).find(|&a| star[self.theta[a]] != self.theta_inv[star_inv[a]]) {
                return Err(Self::fail(SetCondition::StarTheta, &[a]));
            }
        }
        Ok(())
    }

    /// `A ∩ (B + C) = (A ∩ B) + (A ∩ C)` over all triples of `X`.
    pub fn check_condition_bal1(&self) -> Result<(), SetCheckError> {
        let n = self.len();
        let fail = |w: &[usize]| Self::fail(SetCondition::Bal1, w);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let w = [a, b, c];
                    let lhs = self.plus(b, c).map(|bc| self.x[a].intersection(self.x[bc]));
                    let rhs = match (self.dot(a, b), self.dot(a, c)) {
                        (Some(ab), Some(ac)) => self.plus(ab, ac).map(|s| self.x[s]),
                        _ => None,
                    };
                    match (lhs, rhs) {
                        (Some(l), Some(r)) if l == r => {}
                        _ => return Err(fail(&w)),
                    }
                }
            }
        }
        Ok(())
    }

    /// Join distributivity over all triples of `Y`, with `(P∪Q) ∩ (P∪R)` on the right.
    pub fn check_condition_un(&self) -> Result<(), SetCheckError> {
        let n = self.len();
        let fail = |w: &[usize]| Self::fail(SetCondition::Un, w);
        // θ(θ⁻¹S ∩ θ⁻¹T) for Y-indices S, T.
        let meet_through = |s: usize, t: usize| -> Option<usize> {
            let (a, b) = (self.theta_inv[s], self.theta_inv[t]);
            self.dot(a, b).map(|ab| self.theta[ab])
        };
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let w = [p, q, r];
                    let lhs = meet_through(q, r).map(|qr| self.y[p].union(self.y[qr]));
                    let pq = self.y_index(self.y[p].union(self.y[q]));
                    let pr = self.y_index(self.y[p].union(self.y[r]));
                    let rhs = match (pq, pr) {
                        (Some(pq), Some(pr)) => meet_through(pq, pr).map(|s| self.y[s]),
                        _ => None,
                    };
                    match (lhs, rhs) {
                        (Some(l), Some(r)) if l == r => {}
                        _ => return Err(fail(&w)),
                    }
                }
            }
        }
        Ok(())
    }

    /// `θ(A ∩ A†) ⊆ θ(A ∩ B)` over all pairs of `X`. Needs `★`.
    pub fn check_condition_hey(&self) -> Result<(), SetCheckError> {
        if self.star.is_none() {
            return Err(SetCheckError::Missing("star"));
        }
        let n = self.len();
        for a in 0..n {
            let a_dagger = self.dagger(a).expect("star present");
            for b in 0..n {
                let holds = match (self.dot(a, a_dagger), self.dot(a, b)) {
                    (Some(lhs), Some(rhs)) => self.y[self.theta[lhs]].is_subset(self.y[self.theta[rhs]]),
                    _ => false,
                };
                if !holds {
                    return Err(Self::fail(SetCondition::Hey, &[a, b]));
                }
            }
        }
        Ok(())
    }

    /// The lattice condition, both inclusions, over all pairs of `X`.
    pub fn check_condition_latt(&self) -> Result<(), SetCheckError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let left = self.dot(a, b).and_then(|ab| self.plus(a, ab)).map(|s| self.x[s].is_subset(self.x[a]));
                let right = self.plus(a, b).map(|s| self.x[a].is_subset(self.x[a].intersection(self.x[s])));
                if left != Some(true) || right != Some(true) {
                    return Err(Self::fail(SetCondition::Latt, &[a, b]));
                }
            }
        }
        Ok(())
    }

    /// The operations `·, +` (and `†, ⊥, ⊤` where available) as an algebra on
    /// the labels. Fails with the first operation that leaves `X`.
    pub fn derived_algebra(&self) -> Result<AlgebraTable, SetCheckError> {
        let n = self.len();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = self.dot(a, b).ok_or_else(|| Self::fail(SetCondition::MeetClosed, &[a, b]))?;
                join[a][b] = self
                    .plus(a, b)
                    .ok_or_else(|| Self::fail(SetCondition::JoinClosed, &[self.theta[a], self.theta[b]]))?;
            }
        }
        let mut alg = AlgebraTable::new(self.labels.clone(), meet, join).expect("labels validated on construction");
        if self.star.is_some() {
            let neg: Vec<usize> = (0..n).map(|a| self.dagger(a).expect("star present")).collect();
            alg = alg.with_neg(neg).expect("dagger is a composite of bijections");
        }
        if let Some(bot) = self.bot() {
            alg = alg.with_zero(bot).expect("index in range");
        }
        if let Some(top) = self.top() {
            alg = alg.with_one(top).expect("index in range");
        }
        Ok(alg)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("algebra is not a distributive bisemilattice")]
    NotDistributive,
    #[error(transparent)]
    Build(#[from] SetAlgebraError),
    #[error("{0}")]
    Condition(String),
    #[error("derived {op} disagrees with the algebra at {at}")]
    TableMismatch { op: &'static str, at: String },
}

/// Realises `alg` as `X = {↑x}`, `Y = {↓x}` with `θ(↑x) = ↓x`,
/// `(↓x)★ = ↑x′`, `0̄ = ↓0` and `1̄ = ↑1`, as far as `alg` carries `′, 0, 1`.
pub fn build_set_algebra(alg: &AlgebraTable) -> Result<SetAlgebra, SetAlgebraError> {
    let n = alg.len();
    SetAlgebra::new(SetAlgebraParts {
        labels: alg.names().to_vec(),
        x: up_family(alg).into_iter().map(|u| u.filters).collect(),
        y: down_family(alg).into_iter().map(|d| d.ideals).collect(),
        theta: (0..n).collect(),
        star: alg.neg_table().map(<[usize]>::to_vec),
        bottom_y: alg.zero(),
        top_x: alg.one(),
    })
}

/// Evidence that `x ↦ ↑x` is an isomorphism onto the derived set algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// The most specific of DBS, BDBS, DDBS, IDBS the algebra belongs to.
    pub level: VarietyTag,
    pub conditions: Vec<SetCondition>,
    pub signature: Signature,
    pub filters: Vec<Filter>,
    pub names: Vec<String>,
    /// `↑x` per element, as positions in `filters`.
    pub embedding: Vec<(String, Subset)>,
    /// Whether the lattice condition also holds.
    pub lattice_condition: bool,
    pub absorption: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level: {}", self.level)?;
        writeln!(f, "signature: {}", self.signature)?;
        let conds: Vec<String> = self.conditions.iter().map(ToString::to_string).collect();
        writeln!(f, "conditions: {}", conds.join("; "))?;
        writeln!(f, "filters: {}", self.filters.len())?;
        for (k, filter) in self.filters.iter().enumerate() {
            writeln!(f, "  F{} = {}", k + 1, filter.members().display_with(|i| self.names[i].as_str()))?;
        }
        writeln!(f, "isomorphism: x -> up(x)")?;
        for (name, up) in &self.embedding {
            let members: Vec<String> = up.iter().map(|k| format!("F{}", k + 1)).collect();
            writeln!(f, "  {name} -> {{{}}}", members.join(", "))?;
        }
        writeln!(f, "latt: {}", if self.lattice_condition { "holds" } else { "fails" })?;
        write!(f, "absorption: {}", if self.absorption { "holds" } else { "fails" })
    }
}

/// Builds the set algebra of `alg`, checks the conditions its variety calls
/// for, and confirms the derived operations reproduce `alg` entry-wise.
pub fn verify_representation(alg: &AlgebraTable) -> Result<Certificate, RepresentationError> {
    let tags = classify_variety(alg);
    let level = [VarietyTag::Idbs, VarietyTag::Ddbs, VarietyTag::Bdbs, VarietyTag::Dbs]
        .into_iter()
        .find(|t| tags.contains(t))
        .ok_or(RepresentationError::NotDistributive)?;
    let sa = build_set_algebra(alg)?;
    let condition_error = |e: SetCheckError| match e {
        SetCheckError::Fails(v) => RepresentationError::Condition(v.describe(&sa)),
        other => RepresentationError::Condition(other.to_string()),
    };

    let mut conditions = vec![SetCondition::MeetClosed, SetCondition::JoinClosed];
    if level >= VarietyTag::Bdbs {
        conditions.push(SetCondition::BottomLeast);
    }
    if level == VarietyTag::Bdbs {
        conditions.push(SetCondition::TopGreatest);
    }
    if level >= VarietyTag::Ddbs {
        conditions.extend([SetCondition::StarOrderDual, SetCondition::StarTheta]);
    }
    // Only the parts this level uses take part in the structural check.
    let scoped = SetAlgebra {
        star: if level >= VarietyTag::Ddbs { sa.star.clone() } else { None },
        star_inv: if level >= VarietyTag::Ddbs { sa.star_inv.clone() } else { None },
        bottom_y: if level >= VarietyTag::Bdbs { sa.bottom_y } else { None },
        top_x: if level >= VarietyTag::Bdbs { sa.top_x } else { None },
        ..sa.clone()
    };
    scoped.check_structure().map_err(condition_error)?;
    scoped.check_condition_bal1().map_err(condition_error)?;
    scoped.check_condition_un().map_err(condition_error)?;
    conditions.extend([SetCondition::Bal1, SetCondition::Un]);
    if level == VarietyTag::Idbs {
        scoped.check_condition_hey().map_err(condition_error)?;
        conditions.push(SetCondition::Hey);
    }

    let signature = level.signature();
    let derived = scoped.derived_algebra().map_err(condition_error)?;
    let ours = alg.reduct(signature);
    let theirs = derived.reduct(signature);
    if let Some(mismatch) = first_mismatch(&ours, &theirs) {
        return Err(mismatch);
    }
    let identity: Vec<usize> = (0..alg.len()).collect();
    debug_assert!(is_homomorphism(&ours, &theirs, &identity, signature).unwrap_or(false));

    Ok(Certificate {
        level,
        conditions,
        signature,
        filters: filters(alg),
        names: alg.names().to_vec(),
        embedding: alg.names().iter().cloned().zip(sa.x.iter().copied()).collect(),
        lattice_condition: sa.check_condition_latt().is_ok(),
        absorption: check_absorption(alg).holds(),
    })
}

fn first_mismatch(ours: &AlgebraTable, theirs: &AlgebraTable) -> Option<RepresentationError> {
    let n = ours.len();
    for a in 0..n {
        for b in 0..n {
            if ours.meet(a, b) != theirs.meet(a, b) {
                return Some(RepresentationError::TableMismatch {
                    op: "meet",
                    at: format!("({}, {})", ours.name(a), ours.name(b)),
                });
            }
            if ours.join(a, b) != theirs.join(a, b) {
                return Some(RepresentationError::TableMismatch {
                    op: "join",
                    at: format!("({}, {})", ours.name(a), ours.name(b)),
                });
            }
        }
        if ours.neg(a) != theirs.neg(a) {
            return Some(RepresentationError::TableMismatch { op: "neg", at: ours.name(a).to_string() });
        }
    }
    if ours.zero() != theirs.zero() {
        return Some(RepresentationError::TableMismatch { op: "zero", at: "constant".into() });
    }
    if ours.one() != theirs.one() {
        return Some(RepresentationError::TableMismatch { op: "one", at: "constant".into() });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};
    use crate::laws::{check_bounded, check_demorgan, check_distributive, check_involutive};

    const ZERO: usize = 0;
    const HALF: usize = 1;
    const ONE: usize = 2;

    fn weak_sa() -> SetAlgebra {
        build_set_algebra(&builtin(BuiltinName::WeakKleene3)).unwrap()
    }

    #[test]
    fn weak_kleene_bounds_and_worked_inequality() {
        let sa = weak_sa();
        // Filters: F1 = {1}, F2 = {0,1}, F3 = universe.
        assert_eq!(sa.x_family()[ZERO], Subset::from_indices([1, 2]));
        assert_eq!(sa.bot(), Some(ZERO));
        assert_eq!(sa.top(), Some(ONE));
        assert_eq!(sa.x_family()[ONE], Subset::full(3));
        // up(0) + (up(h) . up(0)) = up(h), which differs from up(0).
        let inner = sa.dot(HALF, ZERO).unwrap();
        let sum = sa.plus(ZERO, inner).unwrap();
        assert_eq!(sum, HALF);
        assert_ne!(sum, ZERO);
    }

    #[test]
    fn weak_kleene_conditions() {
        let sa = weak_sa();
        assert_eq!(sa.check_structure(), Ok(()));
        assert_eq!(sa.check_condition_bal1(), Ok(()));
        assert_eq!(sa.check_condition_un(), Ok(()));
        assert_eq!(sa.check_condition_hey(), Ok(()));
        assert_eq!(
            sa.check_condition_latt(),
            Err(SetCheckError::Fails(SetViolation { condition: SetCondition::Latt, witness: vec![ZERO, HALF] }))
        );
    }

    #[test]
    fn strong_kleene_conditions() {
        let sa = build_set_algebra(&builtin(BuiltinName::StrongKleene3)).unwrap();
        assert_eq!(sa.check_condition_latt(), Ok(()));
        // Not involutive: hey fails at (up(h), up(0)).
        assert_eq!(
            sa.check_condition_hey(),
            Err(SetCheckError::Fails(SetViolation { condition: SetCondition::Hey, witness: vec![HALF, ZERO] }))
        );
    }

    #[test]
    fn singleton_set_algebra() {
        let sa = build_set_algebra(&builtin(BuiltinName::Lattice1)).unwrap();
        assert_eq!(sa.x_family(), &[Subset::full(1)]);
        assert_eq!(sa.y_family(), &[Subset::EMPTY]);
        assert_eq!(sa.check_condition_bal1(), Ok(()));
        assert_eq!(sa.check_condition_un(), Ok(()));
        assert_eq!(sa.check_condition_latt(), Ok(()));
        assert_eq!(sa.check_condition_hey(), Err(SetCheckError::Missing("star")));
    }

    #[test]
    fn scrambled_theta_breaks_condition_one() {
        let w = builtin(BuiltinName::WeakKleene3).reduct(Signature::LATTICE);
        let base = build_set_algebra(&w).unwrap();
        // theta swaps the images of up(h) and up(1).
        let parts = SetAlgebraParts {
            labels: base.labels().to_vec(),
            x: base.x_family().to_vec(),
            y: base.y_family().to_vec(),
            theta: vec![ZERO, ONE, HALF],
            ..Default::default()
        };
        let scrambled = SetAlgebra::new(parts).unwrap();
        let err = scrambled.check_condition_bal1().unwrap_err();
        // up(0) . (up(h) + up(1)) = up(0), but up(h) + up(0) = up(h).
        assert_eq!(
            err,
            SetCheckError::Fails(SetViolation { condition: SetCondition::Bal1, witness: vec![ZERO, HALF, ONE] })
        );
        assert_eq!(err.to_string(), "bal1: meet distributes fails at [0, 1, 2]");
    }

    #[test]
    fn rejects_non_bijective_theta() {
        let base = weak_sa();
        let parts = SetAlgebraParts {
            labels: base.labels().to_vec(),
            x: base.x_family().to_vec(),
            y: base.y_family().to_vec(),
            theta: vec![0, 0, 2],
            ..Default::default()
        };
        assert_eq!(SetAlgebra::new(parts).unwrap_err(), SetAlgebraError::NotBijective("theta"));
    }

    #[test]
    fn derived_algebra_laws() {
        let sa = weak_sa();
        let d = sa.derived_algebra().unwrap();
        assert!(check_distributive(&d).holds());
        assert!(check_bounded(&d).unwrap().holds());
        assert!(check_demorgan(&d).unwrap().holds());
        assert!(check_involutive(&d).unwrap().holds());
    }

    #[test]
    fn certificates() {
        let cert = verify_representation(&builtin(BuiltinName::WeakKleene3)).unwrap();
        assert_eq!(cert.level, VarietyTag::Idbs);
        assert!(cert.conditions.contains(&SetCondition::Hey));
        assert!(!cert.lattice_condition);

        let boolean = verify_representation(&builtin(BuiltinName::Bool2)).unwrap();
        assert_eq!(boolean.level, VarietyTag::Idbs);
        assert!(boolean.lattice_condition);

        let strong = verify_representation(&builtin(BuiltinName::StrongKleene3)).unwrap();
        assert_eq!(strong.level, VarietyTag::Ddbs);
    }
}
