//! Homomorphisms between finite algebras: checking, enumeration and
//! isomorphism search.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraTable, Signature};

/// A total map between universes, stored as the image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    /// Wraps an image vector; no homomorphism property is checked.
    pub fn from_map(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism { map: (0..n).collect() }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism { map: self.map.iter().map(|&a| other.map[a]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &a)| i == a)
    }

    /// The inverse map when this one is a bijection onto `0..len`.
    pub fn inverse(&self) -> Option<Homomorphism> {
        let n = self.map.len();
        let mut inv = vec![usize::MAX; n];
        for (i, &a) in self.map.iter().enumerate() {
            if a >= n || inv[a] != usize::MAX {
                return None;
            }
            inv[a] = i;
        }
        Some(Homomorphism { map: inv })
    }

    /// `x->y` pairs through element names.
    pub fn describe(&self, src: &AlgebraTable, dst: &AlgebraTable) -> String {
        let parts: Vec<String> =
            self.map.iter().enumerate().map(|(a, &b)| format!("{}->{}", src.name(a), dst.name(b))).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("signature {requested} is not shared: source has {source_sig}, target has {target_sig}")]
    SignatureMismatch { requested: Signature, source_sig: Signature, target_sig: Signature },
}

fn shared(src: &AlgebraTable, dst: &AlgebraTable, sig: Signature) -> Result<(), HomError> {
    if sig.is_subset_of(src.signature()) && sig.is_subset_of(dst.signature()) {
        Ok(())
    } else {
        Err(HomError::SignatureMismatch { requested: sig, source_sig: src.signature(), target_sig: dst.signature() })
    }
}

/// Whether `map` preserves every operation in `sig`.
pub fn is_homomorphism(
    src: &AlgebraTable,
    dst: &AlgebraTable,
    map: &[usize],
    sig: Signature,
) -> Result<bool, HomError> {
    shared(src, dst, sig)?;
    if map.len() != src.len() || map.iter().any(|&b| b >= dst.len()) {
        return Ok(false);
    }
    let n = src.len();
    for a in 0..n {
        for b in 0..n {
            if map[src.meet(a, b)] != dst.meet(map[a], map[b]) || map[src.join(a, b)] != dst.join(map[a], map[b]) {
                return Ok(false);
            }
        }
        if sig.neg && map[src.neg(a).unwrap()] != dst.neg(map[a]).unwrap() {
            return Ok(false);
        }
    }
    if sig.zero && map[src.zero().unwrap()] != dst.zero().unwrap() {
        return Ok(false);
    }
    if sig.one && map[src.one().unwrap()] != dst.one().unwrap() {
        return Ok(false);
    }
    Ok(true)
}

struct Search<'a> {
    src: &'a AlgebraTable,
    dst: &'a AlgebraTable,
    sig: Signature,
    injective: bool,
    first_only: bool,
    img: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Homomorphism>,
}

impl Search<'_> {
    /// Checks every constraint whose operands and result are all among `0..=k`
    /// and that mentions `k`.
    fn consistent(&self, k: usize) -> bool {
        let (src, dst, img) = (self.src, self.dst, &self.img);
        for a in 0..=k {
            for b in 0..=k {
                if a != k && b != k {
                    // Only the result can be new.
                    let m = src.meet(a, b);
                    if m == k && img[m] != dst.meet(img[a], img[b]) {
                        return false;
                    }
                    let j = src.join(a, b);
                    if j == k && img[j] != dst.join(img[a], img[b]) {
                        return false;
                    }
                    continue;
                }
                let m = src.meet(a, b);
                if m <= k && img[m] != dst.meet(img[a], img[b]) {
                    return false;
                }
                let j = src.join(a, b);
                if j <= k && img[j] != dst.join(img[a], img[b]) {
                    return false;
                }
            }
        }
        if self.sig.neg {
            for a in 0..=k {
                let na = src.neg(a).unwrap();
                if (a == k || na == k) && na <= k && img[na] != dst.neg(img[a]).unwrap() {
                    return false;
                }
            }
        }
        if self.sig.zero && src.zero() == Some(k) && dst.zero() != Some(img[k]) {
            return false;
        }
        if self.sig.one && src.one() == Some(k) && dst.one() != Some(img[k]) {
            return false;
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.src.len() {
            self.found.push(Homomorphism { map: self.img.clone() });
            return self.first_only;
        }
        for b in 0..self.dst.len() {
            if self.injective && self.used[b] {
                continue;
            }
            self.img[k] = b;
            if !self.consistent(k) {
                continue;
            }
            self.used[b] = true;
            let stop = self.run(k + 1);
            self.used[b] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

fn search(
    src: &AlgebraTable,
    dst: &AlgebraTable,
    sig: Signature,
    injective: bool,
    first_only: bool,
) -> Vec<Homomorphism> {
    let mut s = Search {
        src,
        dst,
        sig,
        injective,
        first_only,
        img: vec![0; src.len()],
        used: vec![false; dst.len()],
        found: Vec::new(),
    };
    s.run(0);
    s.found
}

/// All maps `src → dst` preserving `sig`, in lexicographic order of the image vector.
pub fn enumerate_homomorphisms(
    src: &AlgebraTable,
    dst: &AlgebraTable,
    sig: Signature,
) -> Result<Vec<Homomorphism>, HomError> {
    shared(src, dst, sig)?;
    Ok(search(src, dst, sig, false, false))
}

/// The lexicographically first isomorphism `a → b` over their common
/// signature, if any. Algebras with different signatures are never isomorphic.
pub fn find_isomorphism(a: &AlgebraTable, b: &AlgebraTable) -> Option<Homomorphism> {
    if a.len() != b.len() || a.signature() != b.signature() {
        return None;
    }
    search(a, b, a.signature(), true, true).pop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};

    /// Brute force over all `m^n` maps, independent of the pruned search.
    fn brute_force(src: &AlgebraTable, dst: &AlgebraTable, sig: Signature) -> Vec<Vec<usize>> {
        let (n, m) = (src.len(), dst.len());
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut map = vec![0; n];
            let mut c = code;
            for slot in map.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            if is_homomorphism(src, dst, &map, sig).unwrap() {
                out.push(map);
            }
        }
        out
    }

    #[test]
    fn weak_kleene_endomorphisms() {
        let w = builtin(BuiltinName::WeakKleene3);
        let full = enumerate_homomorphisms(&w, &w, Signature::FULL).unwrap();
        assert_eq!(full, vec![Homomorphism::identity(3)]);
        assert_eq!(brute_force(&w, &w, Signature::FULL), vec![vec![0, 1, 2]]);

        let lattice = enumerate_homomorphisms(&w, &w, Signature::LATTICE).unwrap();
        assert!(lattice.contains(&Homomorphism::identity(3)));
        assert!(lattice.contains(&Homomorphism::from_map(vec![1, 1, 1])));
        let maps: Vec<Vec<usize>> = lattice.iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(maps, brute_force(&w, &w, Signature::LATTICE));
    }

    #[test]
    fn enumeration_matches_brute_force_across_builtins() {
        for a in BuiltinName::ALL {
            for b in BuiltinName::ALL {
                let (a, b) = (builtin(a), builtin(b));
                let sig = a.signature().intersection(b.signature());
                let maps: Vec<Vec<usize>> =
                    enumerate_homomorphisms(&a, &b, sig).unwrap().iter().map(|h| h.map().to_vec()).collect();
                assert_eq!(maps, brute_force(&a, &b, sig));
            }
        }
    }

    #[test]
    fn signature_mismatch() {
        let w = builtin(BuiltinName::WeakKleene3);
        let l = builtin(BuiltinName::Lattice1);
        assert!(enumerate_homomorphisms(&w, &l, Signature::FULL).is_err());
    }

    #[test]
    fn isomorphisms() {
        let w = builtin(BuiltinName::WeakKleene3);
        assert_eq!(find_isomorphism(&w, &w), Some(Homomorphism::identity(3)));
        assert_eq!(find_isomorphism(&w, &builtin(BuiltinName::Bool2)), None);
        let shuffled = w.permuted(&[2, 0, 1]);
        let iso = find_isomorphism(&w, &shuffled).unwrap();
        assert_eq!(iso.map(), &[2, 0, 1]);
        let inv = iso.inverse().unwrap();
        assert!(iso.then(&inv).is_identity());
        assert!(is_homomorphism(&shuffled, &w, inv.map(), Signature::FULL).unwrap());
    }
}
