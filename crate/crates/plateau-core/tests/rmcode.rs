//! Tests for the Reed-Muller subcode weight enumerators.
//!
//! The closed-form enumerator (driven by the generating polynomial) is
//! checked against frozen hand-computed tables and against a direct
//! codeword enumeration that evaluates every coset representative over
//! the field and counts Hamming weights.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use plateau_core::census::{FamilyId, FamilyTag};
use plateau_core::fieldpoly::PrimeModulus;
use plateau_core::oracle::EvalContext;
use plateau_core::rmcode::{code_params, weight_enumerator};
use plateau_core::Error;

fn fam(tag: FamilyTag, p: u64, n: u64) -> FamilyId {
    FamilyId::new(tag, PrimeModulus::new(p).unwrap(), n).unwrap()
}

fn as_map(rows: &plateau_core::rmcode::WeightEnumerator) -> BTreeMap<u64, BigInt> {
    let mut out = BTreeMap::new();
    for r in &rows.rows {
        // Every weight appears in exactly one row.
        assert!(
            out.insert(r.weight, r.multiplicity.clone()).is_none(),
            "duplicate weight {}",
            r.weight
        );
    }
    out
}

fn expect_map(pairs: &[(u64, u64)]) -> BTreeMap<u64, BigInt> {
    pairs.iter().map(|&(w, m)| (w, BigInt::from(m))).collect()
}

#[test]
fn frozen_table_c2_n6() {
    let e = weight_enumerator(fam(FamilyTag::C2, 2, 6)).unwrap();
    let expected = expect_map(&[
        (0, 1),
        (64, 1),
        (16, 8),
        (48, 8),
        (24, 48),
        (40, 48),
        (28, 128),
        (36, 128),
        (32, 654),
    ]);
    assert_eq!(as_map(&e), expected);
    assert_eq!(e.total(), BigInt::from(1024));
    assert_eq!(e.min_positive_weight(), 16);
}

#[test]
fn frozen_table_c1_n3() {
    let e = weight_enumerator(fam(FamilyTag::C1, 2, 3)).unwrap();
    let expected = expect_map(&[(0, 1), (8, 1), (2, 4), (6, 4), (4, 22)]);
    assert_eq!(as_map(&e), expected);
    assert_eq!(e.total(), BigInt::from(32));
}

#[test]
fn frozen_table_c1_n1() {
    let e = weight_enumerator(fam(FamilyTag::C1, 2, 1)).unwrap();
    let expected = expect_map(&[(0, 1), (2, 1), (1, 2)]);
    assert_eq!(as_map(&e), expected);
    assert_eq!(e.total(), BigInt::from(4));
    assert_eq!(e.min_positive_weight(), 1);
}

#[test]
fn weights_are_symmetric() {
    for &(tag, n) in &[
        (FamilyTag::C1, 5u64),
        (FamilyTag::C1, 8),
        (FamilyTag::C2, 10),
        (FamilyTag::C1, 13),
    ] {
        let family = fam(tag, 2, n);
        let e = weight_enumerator(family).unwrap();
        let full = 1u64 << n;
        for r in &e.rows {
            assert_eq!(
                r.multiplicity,
                e.multiplicity_of(full - r.weight),
                "{:?}: weight {} not mirrored",
                family,
                r.weight
            );
        }
        // Total mass is 2^{n+1} times the family size.
        let size = family.size();
        assert_eq!(e.total(), size * BigInt::from(2u64) * BigInt::from(full));
    }
}

#[test]
fn unsupported_inputs() {
    assert!(matches!(
        weight_enumerator(fam(FamilyTag::D, 3, 3)),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(
        weight_enumerator(fam(FamilyTag::C1, 2, 63)),
        Err(Error::Unsupported(_))
    ));
    // code_params applies to C1 with odd n only.
    assert!(code_params(fam(FamilyTag::C1, 2, 6)).is_err());
    assert!(code_params(fam(FamilyTag::C2, 2, 6)).is_err());
}

#[test]
fn code_params_frozen() {
    let p = code_params(fam(FamilyTag::C1, 2, 7)).unwrap();
    assert_eq!((p.length, p.dimension, p.min_distance), (128, 11, 56));
    let p = code_params(fam(FamilyTag::C1, 2, 3)).unwrap();
    assert_eq!((p.length, p.dimension, p.min_distance), (8, 5, 2));
    let p = code_params(fam(FamilyTag::C1, 2, 5)).unwrap();
    assert_eq!((p.length, p.dimension, p.min_distance), (32, 8, 12));
    let p = code_params(fam(FamilyTag::C1, 2, 1)).unwrap();
    assert_eq!((p.length, p.dimension, p.min_distance), (2, 2, 1));
    let p = code_params(fam(FamilyTag::C1, 2, 9)).unwrap();
    // G for n = 9: self-reciprocal primes of x^9-1 over F_2 have degrees
    // 6 (paired cubics) and 2... the minimum weight row comes from the
    // smallest k with a nonzero coefficient.
    assert_eq!(p.length, 512);
    assert_eq!(p.dimension, 14);
    let e = weight_enumerator(fam(FamilyTag::C1, 2, 9)).unwrap();
    assert_eq!(p.min_distance, e.min_positive_weight());
}

#[test]
fn histogram_matches_enumerator() {
    for family in [
        fam(FamilyTag::C1, 2, 3),
        fam(FamilyTag::C1, 2, 5),
        fam(FamilyTag::C2, 2, 6),
        fam(FamilyTag::C1, 2, 6),
        fam(FamilyTag::C2, 2, 4),
        fam(FamilyTag::C1, 2, 1),
    ] {
        let ctx = EvalContext::new(family).unwrap();
        let hist = ctx.rm_weight_histogram().unwrap();
        let closed = as_map(&weight_enumerator(family).unwrap());
        assert_eq!(hist, closed, "histogram mismatch for {:?}", family);
    }
}

#[test]
fn histogram_refusals() {
    // Odd characteristic has no binary Reed-Muller coset code.
    let ctx = EvalContext::new(fam(FamilyTag::D, 3, 3)).unwrap();
    assert!(ctx.rm_weight_histogram().is_err());
    // Beyond the enumeration limit the direct route refuses.
    let ctx = EvalContext::new(fam(FamilyTag::C1, 2, 12)).unwrap();
    assert!(matches!(
        ctx.rm_weight_histogram(),
        Err(Error::Unsupported(_))
    ));
}
