//! Filters, ideals, their prime variants, and the `↑x` / `↓x` families.
//!
//! A filter is a non-empty `≤∧`-up-set closed under `∧`; an ideal is a
//! non-empty `≤∨`-down-set closed under `∨`. The whole universe counts as both.

use thiserror::Error;

use crate::algebra::AlgebraTable;
use crate::laws::classify_variety;
use crate::laws::VarietyTag;
use crate::order::{induced_order_unchecked, OrderKind};
use crate::subset::Subset;

/// Universes up to this size are enumerated by scanning every subset.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter(pub Subset);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(pub Subset);

impl Filter {
    pub fn members(self) -> Subset {
        self.0
    }

    pub fn contains(self, a: usize) -> bool {
        self.0.contains(a)
    }
}

impl Ideal {
    pub fn members(self) -> Subset {
        self.0
    }

    pub fn contains(self, a: usize) -> bool {
        self.0.contains(a)
    }
}

/// Subsets that are `kind`-up-closed (filters) or `kind`-down-closed
/// (ideals) and closed under the matching operation.
fn closed_sets(alg: &AlgebraTable, kind: OrderKind) -> Vec<Subset> {
    let n = alg.len();
    let order = induced_order_unchecked(alg, kind);
    // For filters we need up-sets of ≤∧; for ideals, down-sets of ≤∨.
    let closure: Vec<Subset> = (0..n)
        .map(|a| match kind {
            OrderKind::Meet => order.up(a),
            OrderKind::Join => order.down(a),
        })
        .collect();
    let op = |a, b| match kind {
        OrderKind::Meet => alg.meet(a, b),
        OrderKind::Join => alg.join(a, b),
    };
    let is_closed = |s: Subset| {
        s.iter().all(|a| closure[a].is_subset(s)) && s.iter().all(|a| s.iter().all(|b| s.contains(op(a, b))))
    };
    if n <= BRUTE_FORCE_LIMIT {
        (1u64..1 << n).map(Subset).filter(|&s| is_closed(s)).collect()
    } else {
        // Every filter of a finite meet-semilattice is principal (dually for ideals).
        let mut sets: Vec<Subset> = closure.iter().copied().filter(|&s| is_closed(s)).collect();
        sets.sort();
        sets.dedup();
        sets
    }
}

/// All filters, ordered by bitmask value.
pub fn filters(alg: &AlgebraTable) -> Vec<Filter> {
    closed_sets(alg, OrderKind::Meet).into_iter().map(Filter).collect()
}

/// All ideals, ordered by bitmask value.
pub fn ideals(alg: &AlgebraTable) -> Vec<Ideal> {
    closed_sets(alg, OrderKind::Join).into_iter().map(Ideal).collect()
}

/// Proper filters `F` with `a ∨ b ∈ F ⇒ a ∈ F or b ∈ F`.
pub fn prime_filters(alg: &AlgebraTable) -> Vec<Filter> {
    filters(alg).into_iter().filter(|&f| is_prime_filter(alg, f)).collect()
}

/// Proper ideals `I` with `a ∧ b ∈ I ⇒ a ∈ I or b ∈ I`.
pub fn prime_ideals(alg: &AlgebraTable) -> Vec<Ideal> {
    ideals(alg).into_iter().filter(|&i| is_prime_ideal(alg, i)).collect()
}

pub fn is_prime_filter(alg: &AlgebraTable, f: Filter) -> bool {
    let n = alg.len();
    f.0 != Subset::full(n)
        && (0..n).all(|a| (0..n).all(|b| !f.contains(alg.join(a, b)) || f.contains(a) || f.contains(b)))
}

pub fn is_prime_ideal(alg: &AlgebraTable, i: Ideal) -> bool {
    let n = alg.len();
    i.0 != Subset::full(n)
        && (0..n).all(|a| (0..n).all(|b| !i.contains(alg.meet(a, b)) || i.contains(a) || i.contains(b)))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparationError {
    #[error("{a} <=meet {b}, so no filter can contain {a} and exclude {b}")]
    Comparable { a: String, b: String },
    #[error("separation needs a distributive bisemilattice")]
    NotDistributive,
}

/// The first prime filter containing `a` and not `b`, for `a ≰∧ b`.
///
/// # Panics
///
/// When no such filter exists in a distributive bisemilattice, which would
/// mean the enumeration is broken.
pub fn separation_witness(alg: &AlgebraTable, a: usize, b: usize) -> Result<Filter, SeparationError> {
    if alg.meet(a, b) == a {
        return Err(SeparationError::Comparable { a: alg.name(a).into(), b: alg.name(b).into() });
    }
    if !classify_variety(alg).contains(&VarietyTag::Dbs) {
        return Err(SeparationError::NotDistributive);
    }
    let found = prime_filters(alg).into_iter().find(|f| f.contains(a) && !f.contains(b));
    Ok(found.unwrap_or_else(|| {
        panic!("no prime filter separates {} from {} in a distributive bisemilattice", alg.name(a), alg.name(b))
    }))
}

/// `↑x = {F : x ∈ F}`, as a set of positions in the filter list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UpSet {
    pub element: usize,
    pub filters: Subset,
}

/// `↓x = {I : x ∉ I}`, as a set of positions in the ideal list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DownSet {
    pub element: usize,
    pub ideals: Subset,
}

/// One `↑x` per element, in universe order, over `filters(alg)`.
pub fn up_family(alg: &AlgebraTable) -> Vec<UpSet> {
    let fs = filters(alg);
    (0..alg.len())
        .map(|x| UpSet { element: x, filters: (0..fs.len()).filter(|&k| fs[k].contains(x)).collect() })
        .collect()
}

/// One `↓x` per element, in universe order, over `ideals(alg)`.
pub fn down_family(alg: &AlgebraTable) -> Vec<DownSet> {
    let is = ideals(alg);
    (0..alg.len())
        .map(|x| DownSet { element: x, ideals: (0..is.len()).filter(|&k| !is[k].contains(x)).collect() })
        .collect()
}

/// The filter generated by `seeds`: everything above some finite meet of seeds.
pub fn generated_filter(alg: &AlgebraTable, seeds: Subset) -> Subset {
    let n = alg.len();
    let mut meets = seeds;
    loop {
        let next = meets.iter().fold(meets, |acc, a| meets.iter().fold(acc, |acc, b| acc.with(alg.meet(a, b))));
        if next == meets {
            break;
        }
        meets = next;
    }
    (0..n).filter(|&b| meets.iter().any(|m| alg.meet(m, b) == m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};

    // Universe order of the three-valued algebras: 0, h, 1.
    const ZERO: usize = 0;
    const HALF: usize = 1;
    const ONE: usize = 2;

    fn set(xs: &[usize]) -> Subset {
        Subset::from_indices(xs.iter().copied())
    }

    /// Definition-level oracle: test every non-empty subset against the two
    /// filter clauses, spelled out over pairs.
    fn oracle_filters(alg: &AlgebraTable) -> Vec<Subset> {
        let n = alg.len();
        (1u64..1 << n)
            .map(Subset)
            .filter(|&s| {
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        let up_ok = !(alg.meet(a, b) == a && s.contains(a)) || s.contains(b);
                        let meet_ok = !(s.contains(a) && s.contains(b)) || s.contains(alg.meet(a, b));
                        up_ok && meet_ok
                    })
                })
            })
            .collect()
    }

    #[test]
    fn weak_kleene_filters_and_ideals() {
        let w = builtin(BuiltinName::WeakKleene3);
        let fs: Vec<Subset> = filters(&w).iter().map(|f| f.0).collect();
        assert_eq!(fs, vec![set(&[ONE]), set(&[ZERO, ONE]), set(&[ZERO, HALF, ONE])]);
        assert_eq!(fs, oracle_filters(&w));
        let is: Vec<Subset> = ideals(&w).iter().map(|i| i.0).collect();
        assert_eq!(is, vec![set(&[ZERO]), set(&[ZERO, ONE]), set(&[ZERO, HALF, ONE])]);
    }

    #[test]
    fn weak_kleene_primes() {
        let w = builtin(BuiltinName::WeakKleene3);
        let pf: Vec<Subset> = prime_filters(&w).iter().map(|f| f.0).collect();
        assert_eq!(pf, vec![set(&[ONE]), set(&[ZERO, ONE])]);
        let pi: Vec<Subset> = prime_ideals(&w).iter().map(|i| i.0).collect();
        assert_eq!(pi, vec![set(&[ZERO]), set(&[ZERO, ONE])]);
    }

    #[test]
    fn one_element_algebra() {
        let l = builtin(BuiltinName::Lattice1);
        assert_eq!(filters(&l), vec![Filter(Subset::full(1))]);
        assert!(prime_filters(&l).is_empty());
        assert!(prime_ideals(&l).is_empty());
    }

    #[test]
    fn separation_in_weak_kleene() {
        let w = builtin(BuiltinName::WeakKleene3);
        assert_eq!(separation_witness(&w, ONE, ZERO).unwrap().0, set(&[ONE]));
        assert_eq!(separation_witness(&w, ZERO, HALF).unwrap().0, set(&[ZERO, ONE]));
        assert!(matches!(separation_witness(&w, HALF, ZERO), Err(SeparationError::Comparable { .. })));
    }

    #[test]
    fn up_and_down_families() {
        let w = builtin(BuiltinName::WeakKleene3);
        let up = up_family(&w);
        // Filters in order: F1 = {1}, F2 = {0,1}, F3 = universe.
        assert_eq!(up[ZERO].filters, set(&[1, 2]));
        assert_eq!(up[ONE].filters, set(&[0, 1, 2]));
        let down = down_family(&w);
        assert_eq!(down[ZERO].ideals, Subset::EMPTY);
    }

    #[test]
    fn generated_filters_are_principal_here() {
        let w = builtin(BuiltinName::WeakKleene3);
        assert_eq!(generated_filter(&w, set(&[ZERO, ONE])), set(&[ZERO, ONE]));
        assert_eq!(generated_filter(&w, set(&[HALF])), Subset::full(3));
    }
}
