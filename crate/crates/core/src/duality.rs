//! Finite 2spaces: filter and ideal spaces linked by `ρ`, the dual objects of
//! distributive bisemilattices, and the duality of morphisms.
//!
//! Points of a built filter space are the filters of the algebra plus the
//! empty set, and dually for ideals. The empty point is needed because
//! preimages of filters under homomorphisms, and intersections of two
//! filters, may be empty. It lies in no subbasic set, so it is the least
//! point and the join of no generators.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraTable, Signature};
use crate::balbes::{SetAlgebra, SetAlgebraError, SetAlgebraParts, SetCheckError, SetViolation};
use crate::filters::{filters, ideals};
use crate::hom::{is_homomorphism, Homomorphism};
use crate::laws::{classify_variety, VarietyTag};
use crate::subset::{Subset, MAX_CARRIER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Filters,
    Ideals,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Filters => "filter space",
            Side::Ideals => "ideal space",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FspaceError {
    #[error("{subbasis} subbasic sets but {generators} generators and {labels} labels")]
    SizeMismatch { subbasis: usize, generators: usize, labels: usize },
    #[error("point {0:?} listed twice")]
    DuplicatePoint(Subset),
    #[error("{0} points; at most 64 are supported")]
    TooManyPoints(usize),
    #[error("index {0} out of range")]
    OutOfRange(usize),
}

/// A finite space of points (sets, ordered by inclusion) with a subbasis
/// `{X_a}` indexed by labels and a declared generator for each `X_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFspace {
    ground: Vec<String>,
    points: Vec<Subset>,
    subbasis: Vec<Subset>,
    generators: Vec<usize>,
    labels: Vec<String>,
    lookup: HashMap<Subset, usize>,
    subbasis_lookup: HashMap<Subset, usize>,
    cobasis_lookup: HashMap<Subset, usize>,
}

impl FiniteFspace {
    /// `ground` names the elements the points are sets of; `subbasis[a]` is a
    /// set of point positions and `generators[a]` a point position.
    pub fn new(
        ground: Vec<String>,
        points: Vec<Subset>,
        subbasis: Vec<Subset>,
        generators: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self, FspaceError> {
        if points.len() > MAX_CARRIER {
            return Err(FspaceError::TooManyPoints(points.len()));
        }
        if subbasis.len() != generators.len() || subbasis.len() != labels.len() {
            return Err(FspaceError::SizeMismatch {
                subbasis: subbasis.len(),
                generators: generators.len(),
                labels: labels.len(),
            });
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= points.len()) {
            return Err(FspaceError::OutOfRange(g));
        }
        let all = Subset::full(points.len());
        if let Some(s) = subbasis.iter().find(|s| !s.is_subset(all)) {
            return Err(FspaceError::OutOfRange(s.iter().last().unwrap_or(0)));
        }
        let mut lookup = HashMap::new();
        for (i, &p) in points.iter().enumerate() {
            if lookup.insert(p, i).is_some() {
                return Err(FspaceError::DuplicatePoint(p));
            }
        }
        let mut subbasis_lookup = HashMap::new();
        let mut cobasis_lookup = HashMap::new();
        for (a, &s) in subbasis.iter().enumerate().rev() {
            subbasis_lookup.insert(s, a);
            cobasis_lookup.insert(s.complement(points.len()), a);
        }
        Ok(FiniteFspace { ground, points, subbasis, generators, labels, lookup, subbasis_lookup, cobasis_lookup })
    }

    pub fn points(&self) -> &[Subset] {
        &self.points
    }

    pub fn subbasis(&self) -> &[Subset] {
        &self.subbasis
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn point_index(&self, p: Subset) -> Option<usize> {
        self.lookup.get(&p).copied()
    }

    /// `X̄_a`, the complement of `X_a` among the points.
    pub fn cobasic(&self, a: usize) -> Subset {
        self.subbasis[a].complement(self.points.len())
    }

    pub fn subbasis_index(&self, s: Subset) -> Option<usize> {
        self.subbasis_lookup.get(&s).copied()
    }

    pub fn cobasis_index(&self, s: Subset) -> Option<usize> {
        self.cobasis_lookup.get(&s).copied()
    }

    pub fn point_label(&self, p: usize) -> String {
        self.points[p].display_with(|i| self.ground[i].as_str())
    }

    /// The point whose set is `points[p] ∩ points[q]`.
    pub fn meet(&self, p: usize, q: usize) -> Option<usize> {
        self.point_index(self.points[p].intersection(self.points[q]))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.points.len()).find(|&p| self.points.iter().all(|q| q.is_subset(self.points[p])))
    }
}

/// The first failing clause of the finite Fspace conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FspaceViolation {
    /// Two points whose intersection is not a point.
    MissingMeet { p: usize, q: usize },
    /// No greatest point (the meet of the empty family).
    NoGreatest,
    /// `X_a` is not the principal up-set of its generator.
    NotPrincipal { a: usize },
    /// Two points lying in exactly the same subbasic sets.
    NotSeparated { p: usize, q: usize },
    /// A point that is not the join of the generators below it.
    NotJoinDense { p: usize },
    /// `X_a ∩ X_b` is not subbasic.
    SubbasisNotMeetClosed { a: usize, b: usize },
}

impl FspaceViolation {
    /// Which requirement of an Fspace is broken.
    pub fn requirement(&self) -> &'static str {
        match self {
            FspaceViolation::MissingMeet { .. } | FspaceViolation::NoGreatest => "meets",
            FspaceViolation::NotPrincipal { .. } | FspaceViolation::NotSeparated { .. } => "subbasis",
            FspaceViolation::NotJoinDense { .. } => "join density",
            FspaceViolation::SubbasisNotMeetClosed { .. } => "subbasis meets",
        }
    }

    pub fn describe(&self, fs: &FiniteFspace) -> String {
        let pt = |p: usize| fs.point_label(p);
        let detail = match *self {
            FspaceViolation::MissingMeet { p, q } => format!("{} and {} have no meet", pt(p), pt(q)),
            FspaceViolation::NoGreatest => "no greatest point".to_string(),
            FspaceViolation::NotPrincipal { a } => format!("X_{} is not generated by its generator", fs.labels[a]),
            FspaceViolation::NotSeparated { p, q } => format!("{} and {} are not separated", pt(p), pt(q)),
            FspaceViolation::NotJoinDense { p } => format!("{} is not a join of generators", pt(p)),
            FspaceViolation::SubbasisNotMeetClosed { a, b } => {
                format!("X_{} and X_{} meet outside the subbasis", fs.labels[a], fs.labels[b])
            }
        };
        format!("{}: {detail}", self.requirement())
    }
}

/// Checks the finite Fspace requirements in order: meets, subbasis,
/// join density, subbasis meets.
pub fn check_fspace(fs: &FiniteFspace) -> Result<(), FspaceViolation> {
    let np = fs.points.len();
    for p in 0..np {
        for q in p + 1..np {
            if fs.meet(p, q).is_none() {
                return Err(FspaceViolation::MissingMeet { p, q });
            }
        }
    }
    if fs.greatest().is_none() {
        return Err(FspaceViolation::NoGreatest);
    }

    for (a, &g) in fs.generators.iter().enumerate() {
        let up: Subset = (0..np).filter(|&p| fs.points[g].is_subset(fs.points[p])).collect();
        if fs.subbasis[a] != up {
            return Err(FspaceViolation::NotPrincipal { a });
        }
    }
    let signature = |p: usize| -> Subset { (0..fs.subbasis.len()).filter(|&a| fs.subbasis[a].contains(p)).collect() };
    let signatures: Vec<Subset> = (0..np).map(signature).collect();
    for p in 0..np {
        for q in p + 1..np {
            if signatures[p] == signatures[q] {
                return Err(FspaceViolation::NotSeparated { p, q });
            }
        }
    }

    for (p, sig) in signatures.iter().enumerate() {
        let below = sig.iter().map(|a| fs.points[fs.generators[a]]);
        let union = below.fold(Subset::EMPTY, Subset::union);
        let upper: Vec<usize> = (0..np).filter(|&q| union.is_subset(fs.points[q])).collect();
        let least = upper.iter().copied().find(|&q| upper.iter().all(|&r| fs.points[q].is_subset(fs.points[r])));
        if least != Some(p) {
            return Err(FspaceViolation::NotJoinDense { p });
        }
    }

    let k = fs.subbasis.len();
    for a in 0..k {
        for b in a + 1..k {
            if fs.subbasis_index(fs.subbasis[a].intersection(fs.subbasis[b])).is_none() {
                return Err(FspaceViolation::SubbasisNotMeetClosed { a, b });
            }
        }
    }
    Ok(())
}

fn space_from(alg: &AlgebraTable, mut points: Vec<Subset>, generator: impl Fn(usize) -> Subset) -> FiniteFspace {
    points.push(Subset::EMPTY);
    points.sort();
    let n = alg.len();
    let subbasis = (0..n).map(|a| (0..points.len()).filter(|&p| points[p].contains(a)).collect()).collect();
    let position: HashMap<Subset, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let generators = (0..n).map(|a| position[&generator(a)]).collect();
    FiniteFspace::new(alg.names().to_vec(), points, subbasis, generators, alg.names().to_vec())
        .expect("filters and ideals of a table are distinct sets")
}

/// Filters of `alg` plus the empty point, with `X_a = {F : a ∈ F}` generated
/// by the principal filter of `a`.
pub fn filter_space(alg: &AlgebraTable) -> FiniteFspace {
    let points = filters(alg).into_iter().map(|f| f.members()).collect();
    space_from(alg, points, |a| (0..alg.len()).filter(|&b| alg.meet(a, b) == a).collect())
}

/// Ideals of `alg` plus the empty point, with `Y_a = {I : a ∈ I}` generated
/// by the principal ideal of `a`.
pub fn ideal_space(alg: &AlgebraTable) -> FiniteFspace {
    let points = ideals(alg).into_iter().map(|i| i.members()).collect();
    space_from(alg, points, |a| (0..alg.len()).filter(|&b| alg.join(a, b) == a).collect())
}

/// `⟨X, ρ, Y⟩` with `ρ(X_a) = Ȳ_{rho[a]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSpace {
    pub left: FiniteFspace,
    pub right: FiniteFspace,
    pub rho: Vec<usize>,
}

/// A 2space with an order-dual `★ : Ȳ* → X*` (`star[c]` is the `X` index of
/// `(Ȳ_c)★`) and the least element `0̄ = Ȳ_{bottom}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSpaceStar {
    pub base: TwoSpace,
    pub star: Vec<usize>,
    pub bottom: usize,
}

/// Which conditions a 2space★ is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarGrade {
    DeMorgan,
    /// Adds `ρ(H ∩ (ρ(H))★) ⊆ ρ(H ∩ K)`.
    Involutive,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("algebra is not in {0}")]
    WrongVariety(VarietyTag),
    #[error("algebra has {0} elements; its spaces would exceed 64 points")]
    TooLarge(usize),
    #[error("preimage of {side} point {point} is not a point")]
    PreimageNotPoint { side: Side, point: String },
    #[error("map does not fit the spaces: {0}")]
    Shape(String),
}

fn check_size(alg: &AlgebraTable) -> Result<(), DualityError> {
    if alg.len() >= MAX_CARRIER {
        return Err(DualityError::TooLarge(alg.len()));
    }
    Ok(())
}

/// `S(L)`: filter and ideal spaces of a distributive bisemilattice, `ρ(X_a) = Ȳ_a`.
pub fn build_2space(alg: &AlgebraTable) -> Result<TwoSpace, DualityError> {
    check_size(alg)?;
    if !classify_variety(alg).contains(&VarietyTag::Dbs) {
        return Err(DualityError::WrongVariety(VarietyTag::Dbs));
    }
    Ok(TwoSpace { left: filter_space(alg), right: ideal_space(alg), rho: (0..alg.len()).collect() })
}

/// `S(L)` with `(Ȳ_a)★ = X_{a′}` and `0̄ = Ȳ_0`.
pub fn build_2space_star(alg: &AlgebraTable) -> Result<TwoSpaceStar, DualityError> {
    check_size(alg)?;
    if !classify_variety(alg).contains(&VarietyTag::Ddbs) {
        return Err(DualityError::WrongVariety(VarietyTag::Ddbs));
    }
    let base = build_2space(alg)?;
    let star = alg.neg_table().expect("DDBS carries a negation").to_vec();
    Ok(TwoSpaceStar { base, star, bottom: alg.zero().expect("DDBS carries 0") })
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TwoSpaceViolation {
    #[error("{side}: {detail}")]
    Fspace { side: Side, violation: FspaceViolation, detail: String },
    #[error(transparent)]
    Shape(#[from] SetAlgebraError),
    #[error("{detail}")]
    Condition { violation: Option<SetViolation>, detail: String },
}

impl TwoSpace {
    /// `X*` and `Ȳ*` as a set algebra linked by `ρ`.
    pub fn set_algebra(&self) -> Result<SetAlgebra, SetAlgebraError> {
        SetAlgebra::new(self.parts())
    }

    fn parts(&self) -> SetAlgebraParts {
        let k = self.right.subbasis.len();
        SetAlgebraParts {
            labels: self.left.labels.clone(),
            x: self.left.subbasis.clone(),
            y: (0..k).map(|c| self.right.cobasic(c)).collect(),
            theta: self.rho.clone(),
            ..Default::default()
        }
    }
}

impl TwoSpaceStar {
    pub fn set_algebra(&self) -> Result<SetAlgebra, SetAlgebraError> {
        SetAlgebra::new(SetAlgebraParts {
            star: Some(self.star.clone()),
            bottom_y: Some(self.bottom),
            ..self.base.parts()
        })
    }
}

fn condition_error(sa: &SetAlgebra) -> impl Fn(SetCheckError) -> TwoSpaceViolation + '_ {
    move |e| match e {
        SetCheckError::Fails(v) => TwoSpaceViolation::Condition { detail: v.describe(sa), violation: Some(v) },
        other => TwoSpaceViolation::Condition { violation: None, detail: other.to_string() },
    }
}

fn check_sides(ts: &TwoSpace) -> Result<(), TwoSpaceViolation> {
    for (side, fs) in [(Side::Filters, &ts.left), (Side::Ideals, &ts.right)] {
        check_fspace(fs).map_err(|v| TwoSpaceViolation::Fspace { side, detail: v.describe(fs), violation: v })?;
    }
    Ok(())
}

/// Both Fspaces, bijectivity of `ρ`, closure of `X*` and `Ȳ*`, and
/// the two distributivity conditions transported through `ρ`.
pub fn check_2space(ts: &TwoSpace) -> Result<(), TwoSpaceViolation> {
    check_sides(ts)?;
    let sa = ts.set_algebra()?;
    let err = condition_error(&sa);
    sa.check_structure().map_err(&err)?;
    sa.check_condition_bal1().map_err(&err)?;
    sa.check_condition_un().map_err(&err)
}

/// [`check_2space`] plus the `★` laws and least `0̄`, and at the involutive
/// grade the condition `ρ(H ∩ (ρ(H))★) ⊆ ρ(H ∩ K)`.
pub fn check_2space_star(ts: &TwoSpaceStar, grade: StarGrade) -> Result<(), TwoSpaceViolation> {
    check_sides(&ts.base)?;
    let sa = ts.set_algebra()?;
    let err = condition_error(&sa);
    sa.check_structure().map_err(&err)?;
    sa.check_condition_bal1().map_err(&err)?;
    sa.check_condition_un().map_err(&err)?;
    if grade == StarGrade::Involutive {
        sa.check_condition_hey().map_err(&err)?;
    }
    Ok(())
}

/// The `{∧, ∨}` algebra on `X*`: `Z·W = Z∩W`, `Z+W = ρ⁻¹(ρ(Z)∪ρ(W))`.
pub fn algebra_of_2space(ts: &TwoSpace) -> Result<AlgebraTable, TwoSpaceViolation> {
    let sa = ts.set_algebra()?;
    sa.derived_algebra().map_err(condition_error(&sa))
}

/// Adds `A† = (ρ(A))★`, `⊥ = ρ⁻¹(0̄)` and `⊤ = 0̄★`.
pub fn algebra_of_2space_star(ts: &TwoSpaceStar) -> Result<AlgebraTable, TwoSpaceViolation> {
    let sa = ts.set_algebra()?;
    sa.derived_algebra().map_err(condition_error(&sa))
}

/// Point maps of an isomorphism between two 2spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSpaceIso {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

fn point_signatures(fs: &FiniteFspace, reindex: impl Fn(usize) -> usize) -> Vec<Subset> {
    (0..fs.points.len())
        .map(|p| (0..fs.subbasis.len()).filter(|&a| fs.subbasis[a].contains(p)).map(&reindex).collect())
        .collect()
}

fn order_iso(s: &FiniteFspace, t: &FiniteFspace, reindex: impl Fn(usize) -> usize) -> Option<Vec<usize>> {
    if s.points.len() != t.points.len() || s.subbasis.len() != t.subbasis.len() {
        return None;
    }
    let target: HashMap<Subset, usize> =
        point_signatures(t, |a| a).into_iter().enumerate().map(|(q, s)| (s, q)).collect();
    let map: Vec<usize> =
        point_signatures(s, reindex).into_iter().map(|sig| target.get(&sig).copied()).collect::<Option<_>>()?;
    Homomorphism::from_map(map.clone()).inverse()?;
    let np = s.points.len();
    let preserves = (0..np)
        .all(|p| (0..np).all(|q| s.points[p].is_subset(s.points[q]) == t.points[map[p]].is_subset(t.points[map[q]])));
    preserves.then_some(map)
}

/// An isomorphism `s → t` that sends `X_a` to `X_{index[a]}` and commutes
/// with `ρ`, if one exists. Points are determined by the subbasic sets they
/// lie in, so the point maps are forced.
pub fn twospace_isomorphism(s: &TwoSpace, t: &TwoSpace, index: &[usize]) -> Option<TwoSpaceIso> {
    let k = s.rho.len();
    if index.len() != k || t.rho.len() != k {
        return None;
    }
    let s_rho_inv = Homomorphism::from_map(s.rho.clone()).inverse()?;
    // The right subbasis index induced by `index` through both ρ's.
    let right_index = |c: usize| t.rho[index[s_rho_inv.apply(c)]];
    let left = order_iso(&s.left, &t.left, |a| index[a])?;
    let right = order_iso(&s.right, &t.right, right_index)?;
    Some(TwoSpaceIso { left, right })
}

/// A pair of point maps `ψ : X → Z`, `χ : Y → W` from `⟨X, ρ, Y⟩` to `⟨Z, σ, W⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoSpaceMorphism {
    pub psi: Vec<usize>,
    pub chi: Vec<usize>,
}

impl TwoSpaceMorphism {
    pub fn identity(ts: &TwoSpace) -> Self {
        TwoSpaceMorphism { psi: (0..ts.left.points.len()).collect(), chi: (0..ts.right.points.len()).collect() }
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &TwoSpaceMorphism) -> TwoSpaceMorphism {
        TwoSpaceMorphism {
            psi: self.psi.iter().map(|&p| next.psi[p]).collect(),
            chi: self.chi.iter().map(|&p| next.chi[p]).collect(),
        }
    }
}

/// `S(f) = (f⁻¹, f⁻¹)` for `f : L → M`, a morphism from `S(M)` to `S(L)`.
pub fn dualize_hom(f: &Homomorphism, sl: &TwoSpace, sm: &TwoSpace) -> Result<TwoSpaceMorphism, DualityError> {
    if f.map().len() != sl.left.ground.len() || f.map().iter().any(|&b| b >= sm.left.ground.len()) {
        return Err(DualityError::Shape(format!("{} is not a map between the ground sets", f)));
    }
    let pull = |side: Side, from: &FiniteFspace, to: &FiniteFspace| -> Result<Vec<usize>, DualityError> {
        (0..from.points.len())
            .map(|p| {
                to.point_index(from.points[p].preimage(f.map()))
                    .ok_or_else(|| DualityError::PreimageNotPoint { side, point: from.point_label(p) })
            })
            .collect()
    };
    Ok(TwoSpaceMorphism {
        psi: pull(Side::Filters, &sm.left, &sl.left)?,
        chi: pull(Side::Ideals, &sm.right, &sl.right)?,
    })
}

/// `S(f)` at the `★` grade; the point maps are the same preimages.
pub fn dualize_hom_star(
    f: &Homomorphism,
    sl: &TwoSpaceStar,
    sm: &TwoSpaceStar,
) -> Result<TwoSpaceMorphism, DualityError> {
    dualize_hom(f, &sl.base, &sm.base)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MorphismViolation {
    #[error("point maps do not fit the spaces")]
    Shape,
    #[error("{side}: preimage of subbasic set {label} is not subbasic")]
    SubbasisPreimage { side: Side, label: String },
    #[error("{side}: points {p} and {q} lose their meet")]
    Glb { side: Side, p: String, q: String },
    #[error("{side}: greatest point not preserved")]
    Top { side: Side },
    #[error("rho square does not commute at subbasic set {label}")]
    Diagram { label: String },
    #[error("star condition fails at subbasic set {label}")]
    Star { label: String },
}

fn fits(map: &[usize], from: &FiniteFspace, to: &FiniteFspace) -> bool {
    map.len() == from.points.len() && map.iter().all(|&q| q < to.points.len())
}

/// `map⁻¹(to.X_b)` as an index into `from`'s subbasis.
fn pull_basic(map: &[usize], from: &FiniteFspace, to: &FiniteFspace, b: usize) -> Option<usize> {
    from.subbasis_index(to.subbasis[b].preimage(map))
}

/// `map⁻¹(to.X̄_b)` as an index into `from`'s cobasis.
fn pull_cobasic(map: &[usize], from: &FiniteFspace, to: &FiniteFspace, b: usize) -> Option<usize> {
    from.cobasis_index(to.cobasic(b).preimage(map))
}

fn check_point_map(side: Side, map: &[usize], from: &FiniteFspace, to: &FiniteFspace) -> Result<(), MorphismViolation> {
    for b in 0..to.subbasis.len() {
        if pull_basic(map, from, to, b).is_none() {
            return Err(MorphismViolation::SubbasisPreimage { side, label: to.labels[b].clone() });
        }
    }
    let np = from.points.len();
    for p in 0..np {
        for q in p + 1..np {
            let lhs = from.meet(p, q).map(|m| to.points[map[m]]);
            if lhs != Some(to.points[map[p]].intersection(to.points[map[q]])) {
                return Err(MorphismViolation::Glb { side, p: from.point_label(p), q: from.point_label(q) });
            }
        }
    }
    if from.greatest().map(|g| map[g]) != to.greatest() {
        return Err(MorphismViolation::Top { side });
    }
    Ok(())
}

/// Subbasis preimages, glb preservation on both sides, and the rho square
/// `ψ⁻¹ = ρ⁻¹ ∘ χ⁻¹ ∘ σ` on `Z*`.
pub fn check_morphism(m: &TwoSpaceMorphism, source: &TwoSpace, target: &TwoSpace) -> Result<(), MorphismViolation> {
    if !fits(&m.psi, &source.left, &target.left) || !fits(&m.chi, &source.right, &target.right) {
        return Err(MorphismViolation::Shape);
    }
    check_point_map(Side::Filters, &m.psi, &source.left, &target.left)?;
    for c in 0..target.right.subbasis.len() {
        if pull_cobasic(&m.chi, &source.right, &target.right, c).is_none() {
            return Err(MorphismViolation::SubbasisPreimage {
                side: Side::Ideals,
                label: target.right.labels[c].clone(),
            });
        }
    }
    check_point_map(Side::Ideals, &m.chi, &source.right, &target.right)?;
    for b in 0..target.left.subbasis.len() {
        let direct = pull_basic(&m.psi, &source.left, &target.left, b).expect("checked above");
        let around = pull_cobasic(&m.chi, &source.right, &target.right, target.rho[b]).expect("checked above");
        if source.rho[direct] != around {
            return Err(MorphismViolation::Diagram { label: target.left.labels[b].clone() });
        }
    }
    Ok(())
}

/// [`check_morphism`] plus `χ⁻¹(A^{★⁻¹}) = (ψ⁻¹(A))^{★⁻¹}` for `A ∈ Z*`.
pub fn check_morphism_star(
    m: &TwoSpaceMorphism,
    source: &TwoSpaceStar,
    target: &TwoSpaceStar,
) -> Result<(), MorphismViolation> {
    check_morphism(m, &source.base, &target.base)?;
    let source_star_inv = Homomorphism::from_map(source.star.clone()).inverse().ok_or(MorphismViolation::Shape)?;
    let target_star_inv = Homomorphism::from_map(target.star.clone()).inverse().ok_or(MorphismViolation::Shape)?;
    let (s, t) = (&source.base, &target.base);
    for b in 0..t.left.subbasis.len() {
        let lhs = pull_cobasic(&m.chi, &s.right, &t.right, target_star_inv.apply(b));
        let rhs = pull_basic(&m.psi, &s.left, &t.left, b).map(|a| source_star_inv.apply(a));
        if lhs.is_none() || lhs != rhs {
            return Err(MorphismViolation::Star { label: t.left.labels[b].clone() });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RecoverError {
    #[error("not a 2space morphism: {0}")]
    Invalid(#[from] MorphismViolation),
    #[error(transparent)]
    Space(#[from] TwoSpaceViolation),
    #[error("recovered map is not a homomorphism")]
    NotHomomorphism,
}

fn recover(m: &TwoSpaceMorphism, source: &TwoSpace, target: &TwoSpace) -> Homomorphism {
    let k = target.left.subbasis.len();
    Homomorphism::from_map(
        (0..k).map(|b| pull_basic(&m.psi, &source.left, &target.left, b).expect("checked morphism")).collect(),
    )
}

/// For a morphism `S(M) → S(L)`, the homomorphism `f : L → M` with
/// `f(b) = a` iff `ψ⁻¹(X^L_b) = X^M_a`. The result maps the subbasis indices
/// of `target` to those of `source`.
pub fn recover_hom(m: &TwoSpaceMorphism, source: &TwoSpace, target: &TwoSpace) -> Result<Homomorphism, RecoverError> {
    check_morphism(m, source, target)?;
    let f = recover(m, source, target);
    let (from, to) = (algebra_of_2space(target)?, algebra_of_2space(source)?);
    if !is_homomorphism(&from, &to, f.map(), Signature::LATTICE).expect("lattice signature is always shared") {
        return Err(RecoverError::NotHomomorphism);
    }
    Ok(f)
}

/// As [`recover_hom`], and the result also preserves `′, 0, 1`.
pub fn recover_hom_star(
    m: &TwoSpaceMorphism,
    source: &TwoSpaceStar,
    target: &TwoSpaceStar,
) -> Result<Homomorphism, RecoverError> {
    check_morphism_star(m, source, target)?;
    let f = recover(m, &source.base, &target.base);
    let (from, to) = (algebra_of_2space_star(target)?, algebra_of_2space_star(source)?);
    if !is_homomorphism(&from, &to, f.map(), Signature::FULL).expect("both carry the full signature") {
        return Err(RecoverError::NotHomomorphism);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};
    use crate::hom::{enumerate_homomorphisms, find_isomorphism};

    const ZERO: usize = 0;
    const HALF: usize = 1;
    const ONE: usize = 2;

    fn weak() -> AlgebraTable {
        builtin(BuiltinName::WeakKleene3)
    }

    #[test]
    fn weak_kleene_filter_space() {
        let fs = filter_space(&weak());
        // Empty point first, then the three filters in mask order.
        assert_eq!(fs.points().len(), 4);
        assert_eq!(fs.points()[0], Subset::EMPTY);
        assert_eq!(check_fspace(&fs), Ok(()));
        assert_eq!(check_fspace(&ideal_space(&weak())), Ok(()));
    }

    #[test]
    fn three_point_chain_space() {
        // Just the three filters of the weak Kleene algebra: a chain under ⊆.
        let w = weak();
        let points: Vec<Subset> = filters(&w).iter().map(|f| f.members()).collect();
        let subbasis = (0..3).map(|a| (0..3).filter(|&p| points[p].contains(a)).collect()).collect::<Vec<Subset>>();
        // Principal filters: up(0) = {0,1}, up(h) = universe, up(1) = {1}.
        let fs = FiniteFspace::new(w.names().to_vec(), points, subbasis, vec![1, 2, 0], w.names().to_vec()).unwrap();
        assert_eq!(check_fspace(&fs), Ok(()));
    }

    #[test]
    fn deleting_a_meet_breaks_meets() {
        // Points {0}, {1}, {0,1}: deleting the empty point loses {0} ∩ {1}.
        let ground = vec!["x".to_string(), "y".to_string()];
        let points = vec![Subset::from_indices([0]), Subset::from_indices([1]), Subset::full(2)];
        let subbasis = vec![Subset::from_indices([0, 2]), Subset::from_indices([1, 2])];
        let fs = FiniteFspace::new(ground, points, subbasis, vec![0, 1], vec!["a".into(), "b".into()]).unwrap();
        let v = check_fspace(&fs).unwrap_err();
        assert_eq!(v, FspaceViolation::MissingMeet { p: 0, q: 1 });
        assert_eq!(v.requirement(), "meets");
    }

    #[test]
    fn single_point_space() {
        let l = builtin(BuiltinName::Lattice1);
        let ts = build_2space(&l).unwrap();
        assert_eq!(check_fspace(&ts.left), Ok(()));
        assert_eq!(check_2space(&ts), Ok(()));
        assert_eq!(algebra_of_2space(&ts).unwrap(), l);
    }

    #[test]
    fn weak_kleene_2space_star() {
        let ts = build_2space_star(&weak()).unwrap();
        assert_eq!(check_2space_star(&ts, StarGrade::Involutive), Ok(()));
        let back = algebra_of_2space_star(&ts).unwrap();
        assert!(back.same_tables(&weak()));
        // up(0) + (up(h) . up(0)) = up(h)
        assert_eq!(back.join(ZERO, back.meet(HALF, ZERO)), HALF);
    }

    #[test]
    fn strong_kleene_2space() {
        let s = builtin(BuiltinName::StrongKleene3);
        let ts = build_2space_star(&s).unwrap();
        assert_eq!(check_2space_star(&ts, StarGrade::DeMorgan), Ok(()));
        assert!(check_2space_star(&ts, StarGrade::Involutive).is_err());
        assert_eq!(ts.base.set_algebra().unwrap().check_condition_latt(), Ok(()));
    }

    #[test]
    fn swapped_rho_is_rejected() {
        let mut ts = build_2space(&weak()).unwrap();
        ts.rho = vec![ZERO, ONE, HALF];
        let err = check_2space(&ts).unwrap_err();
        assert!(matches!(err, TwoSpaceViolation::Condition { violation: Some(_), .. }), "{err}");
    }

    #[test]
    fn join_order_read_off_the_ideal_space() {
        let w = weak();
        let ts = build_2space(&w).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let by_sets = ts.right.cobasic(a).is_subset(ts.right.cobasic(b));
                assert_eq!(by_sets, w.join(a, b) == b);
            }
        }
    }

    #[test]
    fn identity_dualizes_to_identity() {
        let w = weak();
        let ts = build_2space_star(&w).unwrap();
        let m = dualize_hom_star(&Homomorphism::identity(3), &ts, &ts).unwrap();
        assert_eq!(m, TwoSpaceMorphism::identity(&ts.base));
        assert_eq!(check_morphism_star(&m, &ts, &ts), Ok(()));
        assert_eq!(recover_hom_star(&m, &ts, &ts).unwrap(), Homomorphism::identity(3));
    }

    #[test]
    fn boolean_embedding() {
        let b = builtin(BuiltinName::Bool2).reduct(Signature::LATTICE);
        let w = weak().reduct(Signature::LATTICE);
        let f = Homomorphism::from_map(vec![ZERO, ONE]);
        let (sb, sw) = (build_2space(&b).unwrap(), build_2space(&w).unwrap());
        let m = dualize_hom(&f, &sb, &sw).unwrap();
        assert_eq!(check_morphism(&m, &sw, &sb), Ok(()));
        for a in 0..2 {
            let pulled = sb.left.subbasis()[a].preimage(&m.psi);
            assert_eq!(pulled, sw.left.subbasis()[f.apply(a)]);
        }
        assert_eq!(recover_hom(&m, &sw, &sb).unwrap(), f);
    }

    #[test]
    fn constant_map_is_a_morphism() {
        let w = weak().reduct(Signature::LATTICE);
        let sw = build_2space(&w).unwrap();
        let f = Homomorphism::from_map(vec![HALF; 3]);
        let m = dualize_hom(&f, &sw, &sw).unwrap();
        assert_eq!(check_morphism(&m, &sw, &sw), Ok(()));
        assert_eq!(recover_hom(&m, &sw, &sw).unwrap(), f);
    }

    #[test]
    fn non_preimage_psi_is_rejected() {
        let ts = build_2space(&weak()).unwrap();
        let mut m = TwoSpaceMorphism::identity(&ts);
        m.psi.swap(1, 2);
        assert!(check_morphism(&m, &ts, &ts).is_err());
        assert!(matches!(recover_hom(&m, &ts, &ts), Err(RecoverError::Invalid(_))));
    }

    #[test]
    fn all_builtin_homs_round_trip() {
        for a in BuiltinName::ALL {
            for b in BuiltinName::ALL {
                let (l, m) = (builtin(a).reduct(Signature::LATTICE), builtin(b).reduct(Signature::LATTICE));
                let (sl, sm) = (build_2space(&l).unwrap(), build_2space(&m).unwrap());
                for f in enumerate_homomorphisms(&l, &m, Signature::LATTICE).unwrap() {
                    let d = dualize_hom(&f, &sl, &sm).unwrap();
                    assert_eq!(recover_hom(&d, &sm, &sl).unwrap(), f, "{a:?} -> {b:?}");
                }
            }
        }
    }

    #[test]
    fn object_round_trip_is_an_isomorphism() {
        let w = weak().reduct(Signature::LATTICE);
        let ts = build_2space(&w).unwrap();
        let back = algebra_of_2space(&ts).unwrap();
        let iso = find_isomorphism(&back, &w).unwrap();
        let again = build_2space(&back).unwrap();
        assert!(twospace_isomorphism(&again, &ts, iso.map()).is_some());
        assert!(twospace_isomorphism(&again, &ts, &[ONE, HALF, ZERO]).is_none());
    }
}
