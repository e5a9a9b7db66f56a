//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own filter, order or isomorphism code.

#![allow(dead_code)]

use bisem::corpus::enumerate_exhaustive;
use bisem::{AlgebraTable, Signature, VarietyTag};

pub const VARIETIES: [VarietyTag; 6] =
    [VarietyTag::Sem, VarietyTag::Dbs, VarietyTag::Bdbs, VarietyTag::Ddbs, VarietyTag::Idbs, VarietyTag::Dlat];

/// Every class of every variety for sizes `1..=max`, labelled by origin.
pub fn corpus(max: usize) -> Vec<(String, AlgebraTable)> {
    let mut out = Vec::new();
    for n in 1..=max {
        for tag in VARIETIES {
            for (k, alg) in enumerate_exhaustive(n, tag).unwrap().into_iter().enumerate() {
                out.push((format!("{tag}/{n}/{k}"), alg));
            }
        }
    }
    out
}

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    1..(1u64 << n)
}

fn has(s: u64, a: usize) -> bool {
    s >> a & 1 == 1
}

/// Non-empty up-sets of `≤∧` closed under `∧`.
pub fn filters(alg: &AlgebraTable) -> Vec<u64> {
    let n = alg.len();
    subsets(n)
        .filter(|&s| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let up = !has(s, a) || alg.meet(a, b) != a || has(s, b);
                    let closed = !(has(s, a) && has(s, b)) || has(s, alg.meet(a, b));
                    up && closed
                })
            })
        })
        .collect()
}

/// Non-empty down-sets of `≤∨` closed under `∨`.
pub fn ideals(alg: &AlgebraTable) -> Vec<u64> {
    let n = alg.len();
    subsets(n)
        .filter(|&s| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    let down = !has(s, b) || alg.join(a, b) != b || has(s, a);
                    let closed = !(has(s, a) && has(s, b)) || has(s, alg.join(a, b));
                    down && closed
                })
            })
        })
        .collect()
}

/// Proper filters with `a ∨ b ∈ F ⇒ a ∈ F or b ∈ F`.
pub fn prime_filters(alg: &AlgebraTable) -> Vec<u64> {
    let n = alg.len();
    let full = (1u64 << n) - 1;
    filters(alg)
        .into_iter()
        .filter(|&f| f != full)
        .filter(|&f| (0..n).all(|a| (0..n).all(|b| !has(f, alg.join(a, b)) || has(f, a) || has(f, b))))
        .collect()
}

/// Proper ideals with `a ∧ b ∈ I ⇒ a ∈ I or b ∈ I`.
pub fn prime_ideals(alg: &AlgebraTable) -> Vec<u64> {
    let n = alg.len();
    let full = (1u64 << n) - 1;
    ideals(alg)
        .into_iter()
        .filter(|&i| i != full)
        .filter(|&i| (0..n).all(|a| (0..n).all(|b| !has(i, alg.meet(a, b)) || has(i, a) || has(i, b))))
        .collect()
}

/// Whether `map` preserves every operation in `sig`.
pub fn preserves(src: &AlgebraTable, dst: &AlgebraTable, map: &[usize], sig: Signature) -> bool {
    let n = src.len();
    let binary = (0..n).all(|a| {
        (0..n)
            .all(|b| map[src.meet(a, b)] == dst.meet(map[a], map[b]) && map[src.join(a, b)] == dst.join(map[a], map[b]))
    });
    let neg = !sig.neg || (0..n).all(|a| map[src.neg(a).unwrap()] == dst.neg(map[a]).unwrap());
    let zero = !sig.zero || map[src.zero().unwrap()] == dst.zero().unwrap();
    let one = !sig.one || map[src.one().unwrap()] == dst.one().unwrap();
    binary && neg && zero && one
}

/// All maps `src → dst` preserving `sig`, in lexicographic order.
pub fn homs(src: &AlgebraTable, dst: &AlgebraTable, sig: Signature) -> Vec<Vec<usize>> {
    let (n, m) = (src.len(), dst.len());
    let mut out = Vec::new();
    let mut map = vec![0; n];
    loop {
        if preserves(src, dst, &map, sig) {
            out.push(map.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Whether some bijection preserves `sig` in both directions.
pub fn isomorphic(a: &AlgebraTable, b: &AlgebraTable, sig: Signature) -> bool {
    a.len() == b.len()
        && homs(a, b, sig).into_iter().any(|map| {
            let mut seen = vec![false; b.len()];
            map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
}
