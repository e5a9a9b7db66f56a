//! Test corpora: every small algebra of a variety up to isomorphism, and
//! seeded random Płonka sums of distributive lattices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraTable, BinOp, Signature};
use crate::hom::enumerate_homomorphisms;
use crate::laws::{check_demorgan, check_distributive, classify_variety, in_variety, VarietyTag};
use crate::plonka::{plonka_sum, PlonkaSystem};

/// Largest universe the exhaustive mode accepts.
pub const MAX_EXHAUSTIVE: usize = 5;
/// Index semilattices in the Płonka mode have at most this many elements.
pub const MAX_INDEX: usize = 3;
/// Components in the Płonka mode have at most this many elements.
pub const MAX_COMPONENT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusMode {
    Exhaustive,
    PlonkaRandom,
}

impl fmt::Display for CorpusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusMode::Exhaustive => "exhaustive",
            CorpusMode::PlonkaRandom => "plonka",
        })
    }
}

impl FromStr for CorpusMode {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(CorpusMode::Exhaustive),
            "plonka" | "plonka-random" => Ok(CorpusMode::PlonkaRandom),
            _ => Err(CorpusError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Exact size in exhaustive mode, an upper bound on the sum in Płonka mode.
    pub size: usize,
    pub variety: VarietyTag,
    pub mode: CorpusMode,
    pub seed: u64,
    /// Number of instances in Płonka mode.
    pub count: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("exhaustive enumeration needs 1 <= size <= {MAX_EXHAUSTIVE}, got {0}")]
    SizeOutOfRange(usize),
    #[error("Płonka sums need a size bound between 1 and {max}, got {0}", max = MAX_INDEX * MAX_COMPONENT)]
    PlonkaSizeOutOfRange(usize),
    #[error("Płonka sums of lattices are only generated as DBS, not {0}")]
    PlonkaVariety(VarietyTag),
    #[error("unknown corpus mode {0:?} (use exhaustive or plonka)")]
    UnknownMode(String),
}

/// Lexicographic permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// The tables of `alg` relabelled along `perm`, flattened into one vector.
/// Absent operations encode as a marker so signatures never collide.
fn encode(alg: &AlgebraTable, perm: &[usize], inv: &[usize]) -> Vec<usize> {
    let n = alg.len();
    let mut code = Vec::with_capacity(2 * n * n + n + 2);
    for op in [BinOp::Meet, BinOp::Join] {
        for x in 0..n {
            for y in 0..n {
                code.push(perm[alg.op(op, inv[x], inv[y])]);
            }
        }
    }
    match alg.neg_table() {
        Some(neg) => code.extend((0..n).map(|x| perm[neg[inv[x]]])),
        None => code.push(usize::MAX),
    }
    code.push(alg.zero().map_or(usize::MAX, |z| perm[z]));
    code.push(alg.one().map_or(usize::MAX, |o| perm[o]));
    code
}

/// The minimal encoding over all relabellings, and a permutation reaching it.
pub fn canonical_form(alg: &AlgebraTable) -> (Vec<usize>, Vec<usize>) {
    canonical_with(alg, &permutations(alg.len()))
}

fn canonical_with(alg: &AlgebraTable, perms: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut inv = vec![0; alg.len()];
    for perm in perms {
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let code = encode(alg, perm, &inv);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm.clone()));
        }
    }
    best.expect("at least one permutation")
}

/// Every labelled meet-semilattice on `0..n`, as flat tables, found through
/// the partial orders in which all pairs have a greatest lower bound.
pub fn labeled_semilattices(n: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    let mut le = vec![false; n * n];
    for code in 0..total {
        le.iter_mut().for_each(|x| *x = false);
        (0..n).for_each(|i| le[i * n + i] = true);
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => le[i * n + j] = true,
                2 => le[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !le[a * n + b] || (0..n).all(|c| !le[b * n + c] || le[a * n + c])));
        if !transitive {
            continue;
        }
        let glb = |a: usize, b: usize| {
            let lower: Vec<usize> = (0..n).filter(|&x| le[x * n + a] && le[x * n + b]).collect();
            lower.iter().copied().find(|&g| lower.iter().all(|&x| le[x * n + g]))
        };
        let table: Option<Vec<usize>> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| glb(a, b)).collect();
        if let Some(table) = table {
            out.push(table);
        }
    }
    out
}

fn dedup_sorted(algebras: impl IntoIterator<Item = AlgebraTable>, perms: &[Vec<usize>]) -> Vec<AlgebraTable> {
    let mut classes = BTreeMap::new();
    for alg in algebras {
        let (code, perm) = canonical_with(&alg, perms);
        classes.entry(code).or_insert_with(|| alg.permuted(&perm));
    }
    classes.into_values().map(with_default_names).collect()
}

fn with_default_names(alg: AlgebraTable) -> AlgebraTable {
    let names: Vec<String> = (0..alg.len()).map(|i| format!("a{i}")).collect();
    alg.renamed(names).expect("generated names are distinct")
}

/// All distributive bisemilattices of size `n`, one per isomorphism class.
fn dbs_classes(n: usize) -> Vec<AlgebraTable> {
    let perms = permutations(n);
    let labeled = labeled_semilattices(n);
    let meet_reps = dedup_sorted(labeled.iter().map(|t| AlgebraTable::from_flat(n, t.clone(), t.clone())), &perms);
    let candidates = meet_reps.iter().flat_map(|rep| {
        let meet = rep.flat(BinOp::Meet).to_vec();
        labeled.iter().filter_map(move |join| {
            let alg = AlgebraTable::from_flat(n, meet.clone(), join.clone());
            check_distributive(&alg).holds().then_some(alg)
        })
    });
    dedup_sorted(candidates, &perms)
}

/// The `∨`-unit and `∧`-unit, when both exist.
fn units(alg: &AlgebraTable) -> Option<(usize, usize)> {
    let n = alg.len();
    let zero = (0..n).find(|&z| (0..n).all(|a| alg.join(z, a) == a))?;
    let one = (0..n).find(|&o| (0..n).all(|a| alg.meet(o, a) == a))?;
    Some((zero, one))
}

fn bounded_classes(n: usize) -> Vec<AlgebraTable> {
    let perms = permutations(n);
    let bounded = dbs_classes(n).into_iter().filter_map(|mut alg| {
        let (zero, one) = units(&alg)?;
        alg.set_constants_unchecked(Some(zero), Some(one));
        Some(alg)
    });
    dedup_sorted(bounded, &perms)
}

fn demorgan_classes(n: usize) -> Vec<AlgebraTable> {
    let perms = permutations(n);
    let with_negs = bounded_classes(n).into_iter().flat_map(|base| {
        perms
            .iter()
            .filter_map(|neg| {
                let mut alg = base.clone();
                alg.set_neg_unchecked(Some(neg.clone()));
                matches!(check_demorgan(&alg), Ok(v) if v.holds()).then_some(alg)
            })
            .collect::<Vec<_>>()
    });
    dedup_sorted(with_negs, &perms)
}

/// One representative per isomorphism class of the size-`n` members of
/// `variety`, sorted by canonical encoding and named `a0, a1, ..`.
pub fn enumerate_exhaustive(n: usize, variety: VarietyTag) -> Result<Vec<AlgebraTable>, CorpusError> {
    if n == 0 || n > MAX_EXHAUSTIVE {
        return Err(CorpusError::SizeOutOfRange(n));
    }
    let pool = match variety {
        VarietyTag::Dbs | VarietyTag::Sem | VarietyTag::Dlat => dbs_classes(n),
        VarietyTag::Bdbs => bounded_classes(n),
        VarietyTag::Ddbs | VarietyTag::Idbs => demorgan_classes(n),
    };
    Ok(pool.into_iter().filter(|alg| in_variety(alg, variety)).collect())
}

/// A generated sum together with the system it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlonkaInstance {
    pub system: PlonkaSystem,
    pub sum: AlgebraTable,
}

/// Links for every comparable pair: random homomorphisms on covers of the
/// index join order, composites elsewhere.
fn random_links(
    rng: &mut ChaCha8Rng,
    index: &AlgebraTable,
    components: &[AlgebraTable],
) -> BTreeMap<(usize, usize), Vec<usize>> {
    let m = index.len();
    let below = |i: usize, j: usize| i != j && index.join(i, j) == j;
    let covers: BTreeSet<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| below(i, j) && !(0..m).any(|k| below(i, k) && below(k, j)))
        .collect();
    let mut links = BTreeMap::new();
    for &(i, j) in &covers {
        let homs = enumerate_homomorphisms(&components[i], &components[j], Signature::LATTICE)
            .expect("lattice signature is always shared");
        let pick = homs.choose(rng).expect("constant maps are lattice homomorphisms");
        links.insert((i, j), pick.map().to_vec());
    }
    // Close under composition, longest chains last; indices have at most three
    // elements so every comparable pair has a unique chain of covers.
    loop {
        let mut added = false;
        for &(i, j) in &covers {
            let extend: Vec<(usize, Vec<usize>)> = links
                .iter()
                .filter(|((_, to), _)| *to == i)
                .map(|(&(from, _), map)| (from, map.iter().map(|&x| links[&(i, j)][x]).collect()))
                .collect();
            for (from, map) in extend {
                if let std::collections::btree_map::Entry::Vacant(e) = links.entry((from, j)) {
                    e.insert(map);
                    added = true;
                }
            }
        }
        if !added {
            return links;
        }
    }
}

fn component_names(k: usize, comp: &AlgebraTable) -> AlgebraTable {
    let letter = char::from(b'a' + k as u8);
    comp.renamed((0..comp.len()).map(|i| format!("{letter}{i}")).collect()).expect("generated names are distinct")
}

/// `spec.count` seeded Płonka sums, each over a semilattice of at most three
/// elements with distributive lattices of at most four elements as
/// components, with at most `spec.size` elements in total.
pub fn generate_plonka(spec: &CorpusSpec) -> Result<Vec<PlonkaInstance>, CorpusError> {
    if spec.size == 0 || spec.size > MAX_INDEX * MAX_COMPONENT {
        return Err(CorpusError::PlonkaSizeOutOfRange(spec.size));
    }
    if spec.variety != VarietyTag::Dbs {
        return Err(CorpusError::PlonkaVariety(spec.variety));
    }
    let indices: Vec<AlgebraTable> = (1..=MAX_INDEX.min(spec.size))
        .flat_map(|n| enumerate_exhaustive(n, VarietyTag::Sem).expect("size in range"))
        .collect();
    let lattices: Vec<AlgebraTable> =
        (1..=MAX_COMPONENT).flat_map(|n| enumerate_exhaustive(n, VarietyTag::Dlat).expect("size in range")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let fitting: Vec<&AlgebraTable> = indices.iter().filter(|i| i.len() <= spec.size).collect();
        let index = (*fitting.choose(&mut rng).expect("the 1-element index always fits")).clone();
        let mut budget = spec.size - index.len();
        let mut components = Vec::with_capacity(index.len());
        for k in 0..index.len() {
            // Leave room for a 1-element component at every later index.
            let room = budget + 1;
            let options: Vec<&AlgebraTable> = lattices.iter().filter(|l| l.len() <= room).collect();
            let pick = *options.choose(&mut rng).expect("the 1-element lattice always fits");
            budget -= pick.len() - 1;
            components.push(component_names(k, pick));
        }
        let index = index
            .renamed((0..index.len()).map(|k| char::from(b'a' + k as u8).to_string()).collect())
            .expect("generated names are distinct");
        let links = random_links(&mut rng, &index, &components);
        let system = PlonkaSystem { index, components, links };
        let sum = plonka_sum(&system).expect("generated systems are valid");
        debug_assert!(classify_variety(&sum).contains(&VarietyTag::Dbs));
        out.push(PlonkaInstance { system, sum });
        // Keep the draw count independent of the size filter above.
        let _: u32 = rng.gen();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, BuiltinName};
    use crate::hom::find_isomorphism;
    use crate::laws::check_semilattice;

    /// Labelled semilattice tables found by scanning every commutative,
    /// idempotent table and testing associativity.
    fn oracle_semilattices(n: usize) -> BTreeSet<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut out = BTreeSet::new();
        for code in 0..n.pow(pairs.len() as u32) {
            let mut rows = vec![vec![0; n]; n];
            (0..n).for_each(|i| rows[i][i] = i);
            let mut c = code;
            for &(i, j) in &pairs {
                rows[i][j] = c % n;
                rows[j][i] = c % n;
                c /= n;
            }
            if check_semilattice(&rows).unwrap().holds() {
                out.insert(rows.concat());
            }
        }
        out
    }

    /// Class counts per variety via pairwise isomorphism tests instead of
    /// canonical forms, with constants and negations found by brute force.
    fn oracle_counts(n: usize) -> BTreeMap<VarietyTag, usize> {
        let tables: Vec<Vec<usize>> = oracle_semilattices(n).into_iter().collect();
        let mut reps: BTreeMap<VarietyTag, Vec<AlgebraTable>> = BTreeMap::new();
        let mut add = |tag: VarietyTag, alg: AlgebraTable| {
            let class = reps.entry(tag).or_default();
            if in_variety(&alg, tag) && class.iter().all(|r| find_isomorphism(r, &alg).is_none()) {
                class.push(alg);
            }
        };
        for m in &tables {
            for j in &tables {
                let alg = AlgebraTable::from_flat(n, m.clone(), j.clone());
                if !check_distributive(&alg).holds() {
                    continue;
                }
                for tag in [VarietyTag::Dbs, VarietyTag::Sem, VarietyTag::Dlat] {
                    add(tag, alg.clone());
                }
                for zero in 0..n {
                    for one in 0..n {
                        let bounded = alg.clone().with_zero(zero).unwrap().with_one(one).unwrap();
                        add(VarietyTag::Bdbs, bounded.clone());
                        for neg in permutations(n) {
                            let full = bounded.clone().with_neg(neg).unwrap();
                            add(VarietyTag::Ddbs, full.clone());
                            add(VarietyTag::Idbs, full);
                        }
                    }
                }
            }
        }
        reps.into_iter().map(|(tag, class)| (tag, class.len())).collect()
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
        );
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn semilattice_enumeration_matches_oracle() {
        for n in 1..=4 {
            let ours: BTreeSet<Vec<usize>> = labeled_semilattices(n).into_iter().collect();
            assert_eq!(ours, oracle_semilattices(n), "n = {n}");
        }
    }

    #[test]
    fn class_counts_match_oracle() {
        for n in 1..=4 {
            let oracle = oracle_counts(n);
            for tag in VarietyTag::ALL {
                assert_eq!(enumerate_exhaustive(n, tag).unwrap().len(), oracle[&tag], "n = {n}, {tag}");
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_exhaustive(1, VarietyTag::Dbs).unwrap().len(), 1);
        let two = enumerate_exhaustive(2, VarietyTag::Dbs).unwrap();
        let chain = builtin(BuiltinName::Bool2).reduct(Signature::LATTICE);
        assert!(two.iter().any(|a| find_isomorphism(a, &chain).is_some()));
        // Both orders chains, in opposite directions.
        let opposite =
            AlgebraTable::new(vec!["x", "y"], vec![vec![0, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(two.iter().any(|a| find_isomorphism(a, &opposite).is_some()));
        let weak = builtin(BuiltinName::WeakKleene3);
        let idbs = enumerate_exhaustive(3, VarietyTag::Idbs).unwrap();
        assert!(idbs.iter().any(|a| find_isomorphism(a, &weak).is_some()));
        assert_eq!(enumerate_exhaustive(0, VarietyTag::Dbs), Err(CorpusError::SizeOutOfRange(0)));
        assert_eq!(enumerate_exhaustive(6, VarietyTag::Dbs), Err(CorpusError::SizeOutOfRange(6)));
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        for variety in VarietyTag::ALL {
            let algs = enumerate_exhaustive(3, variety).unwrap();
            for (i, a) in algs.iter().enumerate() {
                assert!(in_variety(a, variety));
                for tag in variety.implied() {
                    assert!(in_variety(a, *tag), "{variety} member outside {tag}");
                }
                for b in &algs[i + 1..] {
                    assert!(find_isomorphism(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn plonka_generation() {
        let spec =
            CorpusSpec { size: 8, variety: VarietyTag::Dbs, mode: CorpusMode::PlonkaRandom, seed: 11, count: 40 };
        let first = generate_plonka(&spec).unwrap();
        assert_eq!(first.len(), 40);
        for inst in &first {
            assert!(inst.sum.len() <= 8);
            assert!(check_distributive(&inst.sum).holds());
        }
        assert_eq!(first, generate_plonka(&spec).unwrap());
        let other = generate_plonka(&CorpusSpec { seed: 12, ..spec.clone() }).unwrap();
        assert_ne!(first, other);
        assert!(generate_plonka(&CorpusSpec { size: 13, ..spec.clone() }).is_err());
        assert!(generate_plonka(&CorpusSpec { variety: VarietyTag::Dlat, ..spec }).is_err());
    }
}
