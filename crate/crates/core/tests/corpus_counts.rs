mod common;

use bisem::corpus::{canonical_form, enumerate_exhaustive, generate_plonka, CorpusMode, CorpusSpec};
use bisem::{classify_variety, Signature, VarietyTag};

use common::VARIETIES;

/// Classes per size, columns in the order of `VARIETIES`.
const GOLDEN: [[usize; 6]; 5] =
    [[1, 1, 1, 1, 1, 1], [1, 2, 2, 2, 2, 1], [2, 6, 3, 3, 2, 1], [5, 23, 7, 9, 5, 2], [15, 100, 17, 18, 9, 3]];

#[test]
fn golden_counts() {
    for (n, row) in GOLDEN.iter().enumerate() {
        for (tag, &want) in VARIETIES.iter().zip(row) {
            let got = enumerate_exhaustive(n + 1, *tag).unwrap();
            assert_eq!(got.len(), want, "{tag} at size {}", n + 1);
            for alg in &got {
                assert!(classify_variety(alg).contains(tag), "{tag} at size {}", n + 1);
            }
        }
    }
}

#[test]
fn classes_are_pairwise_non_isomorphic() {
    for n in 1..=4 {
        for tag in VARIETIES {
            let algs = enumerate_exhaustive(n, tag).unwrap();
            for i in 0..algs.len() {
                for j in i + 1..algs.len() {
                    let sig = algs[i].signature();
                    assert!(!common::isomorphic(&algs[i], &algs[j], sig), "{tag} size {n}: {i} ~ {j}");
                }
            }
        }
    }
}

#[test]
fn canonical_form_is_an_isomorphism_invariant() {
    for alg in enumerate_exhaustive(4, VarietyTag::Ddbs).unwrap() {
        let code = canonical_form(&alg).0;
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            assert_eq!(canonical_form(&alg.permuted(&perm)).0, code);
        }
    }
}

#[test]
fn plonka_generation_is_seeded() {
    let spec = CorpusSpec { size: 8, variety: VarietyTag::Dbs, mode: CorpusMode::PlonkaRandom, seed: 11, count: 20 };
    let a = generate_plonka(&spec).unwrap();
    let b = generate_plonka(&spec).unwrap();
    assert_eq!(a.len(), 20);
    for (x, y) in a.iter().zip(&b) {
        assert!(x.sum.same_tables(&y.sum));
        assert!(x.sum.len() <= 8);
        assert!(classify_variety(&x.sum).contains(&VarietyTag::Dbs));
        assert_eq!(x.sum.signature(), Signature::LATTICE);
    }
    let other = generate_plonka(&CorpusSpec { seed: 12, ..spec }).unwrap();
    assert!(a.iter().zip(&other).any(|(x, y)| !x.sum.same_tables(&y.sum)));
}

#[test]
fn out_of_range_requests_are_errors() {
    assert!(enumerate_exhaustive(0, VarietyTag::Dbs).is_err());
    assert!(enumerate_exhaustive(6, VarietyTag::Dbs).is_err());
    let spec = CorpusSpec { size: 8, variety: VarietyTag::Ddbs, mode: CorpusMode::PlonkaRandom, seed: 0, count: 1 };
    assert!(generate_plonka(&spec).is_err());
}
