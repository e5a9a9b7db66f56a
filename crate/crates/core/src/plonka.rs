//! Płonka sums of a semilattice-indexed family of algebras.
//!
//! For `x` in the component at `i` and `y` in the component at `j`, both
//! operands are transported along the links into the component at `i ∨ j`
//! and combined there.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::algebra::{AlgebraTable, BinOp, Signature};
use crate::hom::is_homomorphism;
use crate::laws::check_reduct;

/// An index semilattice, one component per index element, and the link maps
/// `φ(i→j)` for every `i ≤ j` in the join order of the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlonkaSystem {
    pub index: AlgebraTable,
    pub components: Vec<AlgebraTable>,
    /// Keyed by `(i, j)`. Missing diagonal entries default to the identity.
    pub links: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlonkaError {
    #[error("index is not a semilattice with meet = join: {0}")]
    IndexNotSemilattice(String),
    #[error("expected {expected} components (one per index element), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("missing link {from} -> {to}")]
    MissingLink { from: String, to: String },
    #[error("link {from} -> {to} given but {from} is not below {to} in the index")]
    UnorderedLink { from: String, to: String },
    #[error("link {from} -> {to} is not a map between the component universes")]
    LinkShape { from: String, to: String },
    #[error("link {from} -> {to} is not a meet/join homomorphism")]
    LinkNotHomomorphism { from: String, to: String },
    #[error("link {from} -> {from} is not the identity")]
    NonIdentityDiagonal { from: String },
    #[error("links are not functorial: {j} -> {k} after {i} -> {j} differs from {i} -> {k}")]
    NotFunctorial { i: String, j: String, k: String },
    #[error("sum would have {0} elements; at most 64 are supported")]
    TooLarge(usize),
}

impl PlonkaSystem {
    fn link(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.links.get(&(i, j)).map(Vec::as_slice)
    }

    /// Checks the index, the link shapes, and functoriality. Returns the
    /// completed link table (diagonal filled with identities).
    fn validated_links(&self) -> Result<BTreeMap<(usize, usize), Vec<usize>>, PlonkaError> {
        let idx = &self.index;
        let name = |i: usize| idx.name(i).to_string();
        if let Some(v) = check_reduct(idx, BinOp::Join).violation() {
            return Err(PlonkaError::IndexNotSemilattice(v.describe(idx)));
        }
        if idx.meet_rows() != idx.join_rows() {
            return Err(PlonkaError::IndexNotSemilattice("meet and join tables differ".into()));
        }
        let m = idx.len();
        if self.components.len() != m {
            return Err(PlonkaError::ComponentCount { expected: m, got: self.components.len() });
        }
        let below = |i: usize, j: usize| idx.join(i, j) == j;
        for &(i, j) in self.links.keys() {
            if i >= m || j >= m || !below(i, j) {
                let label = |x: usize| if x < m { name(x) } else { x.to_string() };
                return Err(PlonkaError::UnorderedLink { from: label(i), to: label(j) });
            }
        }
        let mut links = BTreeMap::new();
        for i in 0..m {
            for j in 0..m {
                if !below(i, j) {
                    continue;
                }
                let (src, dst) = (&self.components[i], &self.components[j]);
                let map = match self.link(i, j) {
                    Some(map) => map.to_vec(),
                    None if i == j => (0..src.len()).collect(),
                    None => return Err(PlonkaError::MissingLink { from: name(i), to: name(j) }),
                };
                if map.len() != src.len() || map.iter().any(|&b| b >= dst.len()) {
                    return Err(PlonkaError::LinkShape { from: name(i), to: name(j) });
                }
                if i == j && map.iter().enumerate().any(|(a, &b)| a != b) {
                    return Err(PlonkaError::NonIdentityDiagonal { from: name(i) });
                }
                if !is_homomorphism(src, dst, &map, Signature::LATTICE).expect("lattice signature is always shared") {
                    return Err(PlonkaError::LinkNotHomomorphism { from: name(i), to: name(j) });
                }
                links.insert((i, j), map);
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if !(below(i, j) && below(j, k)) {
                        continue;
                    }
                    let (ij, jk, ik) = (&links[&(i, j)], &links[&(j, k)], &links[&(i, k)]);
                    if ij.iter().zip(ik).any(|(&x, &direct)| jk[x] != direct) {
                        return Err(PlonkaError::NotFunctorial { i: name(i), j: name(j), k: name(k) });
                    }
                }
            }
        }
        Ok(links)
    }
}

/// Builds the `{∧, ∨}` Płonka sum. Constants and negations of the components
/// are dropped.
pub fn plonka_sum(system: &PlonkaSystem) -> Result<AlgebraTable, PlonkaError> {
    let links = system.validated_links()?;
    let idx = &system.index;
    // Global position of each (index, local element).
    let mut offset = Vec::with_capacity(idx.len());
    let mut owner = Vec::new();
    for (i, comp) in system.components.iter().enumerate() {
        offset.push(owner.len());
        owner.extend((0..comp.len()).map(|x| (i, x)));
    }
    let n = owner.len();
    if n > crate::subset::MAX_CARRIER {
        return Err(PlonkaError::TooLarge(n));
    }
    let mut seen = HashSet::new();
    let unique = owner.iter().all(|&(i, x)| seen.insert(system.components[i].name(x)));
    let names: Vec<String> = owner
        .iter()
        .map(|&(i, x)| {
            let local = system.components[i].name(x);
            if unique {
                local.to_string()
            } else {
                format!("{local}@{}", idx.name(i))
            }
        })
        .collect();

    let combine = |op: BinOp, a: usize, b: usize| {
        let ((i, x), (j, y)) = (owner[a], owner[b]);
        let k = idx.join(i, j);
        let (x, y) = (links[&(i, k)][x], links[&(j, k)][y]);
        offset[k] + system.components[k].op(op, x, y)
    };
    let table = |op: BinOp| (0..n).map(|a| (0..n).map(|b| combine(op, a, b)).collect()).collect();
    Ok(AlgebraTable::new(names, table(BinOp::Meet), table(BinOp::Join)).expect("sum tables are well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};
    use crate::hom::find_isomorphism;
    use crate::laws::check_distributive;

    fn two_chain_index() -> AlgebraTable {
        AlgebraTable::new(vec!["i", "j"], vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    fn example_system() -> PlonkaSystem {
        PlonkaSystem {
            index: two_chain_index(),
            components: vec![
                builtin(BuiltinName::Bool2).reduct(Signature::LATTICE),
                builtin(BuiltinName::Lattice1).renamed(vec!["h"]).unwrap(),
            ],
            links: BTreeMap::from([((0, 1), vec![0, 0])]),
        }
    }

    #[test]
    fn reproduces_the_weak_kleene_reduct() {
        let sum = plonka_sum(&example_system()).unwrap();
        assert_eq!(sum.names(), &["0", "1", "h"]);
        let weak = builtin(BuiltinName::WeakKleene3).reduct(Signature::LATTICE);
        assert!(find_isomorphism(&sum, &weak).is_some());
        assert!(check_distributive(&sum).holds());
    }

    #[test]
    fn single_component() {
        let index = builtin(BuiltinName::Lattice1);
        let comp = builtin(BuiltinName::StrongKleene3).reduct(Signature::LATTICE);
        let sum = plonka_sum(&PlonkaSystem { index, components: vec![comp.clone()], links: BTreeMap::new() }).unwrap();
        assert_eq!(sum, comp);
    }

    #[test]
    fn rejects_broken_systems() {
        let mut sys = example_system();
        sys.links.clear();
        assert!(matches!(plonka_sum(&sys), Err(PlonkaError::MissingLink { .. })));

        let mut sys = example_system();
        sys.links.insert((1, 0), vec![0]);
        assert!(matches!(plonka_sum(&sys), Err(PlonkaError::UnorderedLink { .. })));

        let mut sys = example_system();
        sys.index =
            AlgebraTable::new(vec!["i", "j"], vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(plonka_sum(&sys), Err(PlonkaError::IndexNotSemilattice(_))));

        // 0 -> 1, 1 -> 0 into a two-element chain is not monotone.
        let mut sys = example_system();
        sys.components[1] = builtin(BuiltinName::Bool2).reduct(Signature::LATTICE);
        sys.links.insert((0, 1), vec![1, 0]);
        assert!(matches!(plonka_sum(&sys), Err(PlonkaError::LinkNotHomomorphism { .. })));
    }

    #[test]
    fn detects_non_functorial_chains() {
        // Three-element chain index i < j < k, all components bool_2.
        let index = AlgebraTable::new(
            vec!["i", "j", "k"],
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
        )
        .unwrap();
        let b = builtin(BuiltinName::Bool2).reduct(Signature::LATTICE);
        let links = BTreeMap::from([((0, 1), vec![0, 1]), ((1, 2), vec![0, 1]), ((0, 2), vec![0, 0])]);
        let sys = PlonkaSystem { index, components: vec![b.clone(), b.clone(), b], links };
        assert!(matches!(plonka_sum(&sys), Err(PlonkaError::NotFunctorial { .. })));
    }
}
