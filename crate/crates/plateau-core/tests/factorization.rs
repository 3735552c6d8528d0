//! Tests for the factorization of x^n - 1 and its grouping into prime
//! self-reciprocal parts. The factorizations are verified structurally
//! (degrees, multiplicities, explicit re-multiplication) rather than
//! against hardcoded factor lists wherever a product check is stronger.

use plateau_core::factorization::{
    cyclotomic_cosets, factor_cyclic, multiplicative_order, split_p_part,
    sr_factorization,
};
use plateau_core::fieldpoly::{is_irreducible, is_self_reciprocal, FpPoly, PrimeModulus};
use plateau_core::Error;

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

#[test]
fn split_and_order_basics() {
    assert_eq!(split_p_part(12, 2), (3, 2, 4));
    assert_eq!(split_p_part(117, 3), (13, 2, 9));
    assert_eq!(split_p_part(126, 3), (14, 2, 9));
    assert_eq!(split_p_part(180, 3), (20, 2, 9));
    assert_eq!(split_p_part(5, 3), (5, 0, 1));
    assert_eq!(split_p_part(9, 3), (1, 2, 9));
    assert_eq!(multiplicative_order(2, 3), 2);
    assert_eq!(multiplicative_order(2, 7), 3);
    assert_eq!(multiplicative_order(3, 13), 3);
    assert_eq!(multiplicative_order(3, 20), 4);
    assert_eq!(multiplicative_order(7, 1), 1);
}

#[test]
fn cosets_partition_and_reject_common_factors() {
    let cosets = cyclotomic_cosets(7, pm(2)).unwrap();
    let reps: Vec<u64> = cosets.iter().map(|c| c.representative()).collect();
    assert_eq!(reps, vec![0, 1, 3]);
    assert_eq!(cosets[1].members(), &[1, 2, 4]);
    assert_eq!(cosets[2].members(), &[3, 5, 6]);
    let total: usize = cosets.iter().map(|c| c.len()).sum();
    assert_eq!(total, 7);
    assert!(matches!(
        cyclotomic_cosets(4, pm(2)),
        Err(Error::NotCoprime { .. })
    ));
}

#[test]
fn factor_cyclic_frozen_small_cases() {
    // x^6 - 1 over F_2: (x+1)^2 (x^2+x+1)^2.
    let f6 = factor_cyclic(6, pm(2)).unwrap();
    let shapes: Vec<(Vec<u64>, u64)> = f6
        .iter()
        .map(|f| (f.poly.coeffs().to_vec(), f.multiplicity))
        .collect();
    assert_eq!(shapes, vec![(vec![1, 1], 2), (vec![1, 1, 1], 2)]);

    // x^7 - 1 over F_2: (x+1)(x^3+x+1)(x^3+x^2+1).
    let f7 = factor_cyclic(7, pm(2)).unwrap();
    let shapes: Vec<(Vec<u64>, u64)> = f7
        .iter()
        .map(|f| (f.poly.coeffs().to_vec(), f.multiplicity))
        .collect();
    assert_eq!(
        shapes,
        vec![
            (vec![1, 1], 1),
            (vec![1, 0, 1, 1], 1),
            (vec![1, 1, 0, 1], 1),
        ]
    );

    // x^4 - 1 over F_3: (x-1)(x+1)(x^2+1), i.e. coefficient vectors
    // [2,1], [1,1], [1,0,1].
    let f4 = factor_cyclic(4, pm(3)).unwrap();
    let shapes: Vec<(Vec<u64>, u64)> = f4
        .iter()
        .map(|f| (f.poly.coeffs().to_vec(), f.multiplicity))
        .collect();
    assert_eq!(shapes, vec![(vec![1, 1], 1), (vec![2, 1], 1), (vec![1, 0, 1], 1)]);
}

/// Re-multiplies a factor list and checks it equals x^n - 1, and that
/// every listed factor is monic irreducible with the uniform
/// multiplicity p^v.
fn check_factorization(n: u64, p: u64) {
    let pmod = pm(p);
    let factors = factor_cyclic(n, pmod).unwrap();
    let (_, _, pv) = split_p_part(n, p);
    let mut product = FpPoly::one(pmod);
    let mut degree_sum = 0u64;
    for f in &factors {
        assert!(f.poly.is_monic());
        assert!(is_irreducible(&f.poly).unwrap());
        assert_eq!(f.multiplicity, pv);
        degree_sum += f.poly.degree().unwrap() as u64 * f.multiplicity;
        for _ in 0..f.multiplicity {
            product = product.mul(&f.poly);
        }
    }
    assert_eq!(degree_sum, n);
    assert_eq!(product, FpPoly::x_pow_minus(pmod, n as usize, 1));
}

#[test]
fn factorizations_remultiply_exactly() {
    for (p, n) in [
        (2u64, 1u64),
        (2, 4),
        (2, 12),
        (2, 15),
        (3, 3),
        (3, 5),
        (3, 12),
        (5, 4),
        (5, 10),
        (7, 7),
    ] {
        check_factorization(n, p);
    }
}

#[test]
fn grouping_structure_small() {
    // n = 12, p = 2: v = 2, m = 3; one self-reciprocal prime x^2+x+1.
    let g = sr_factorization(12, pm(2)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (2, 3, 4));
    assert!(!g.has_x_plus_1());
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![2]);

    // n = 12, p = 3: v = 1, m = 4; x^4-1 = (x-1)(x+1)(x^2+1).
    let g = sr_factorization(12, pm(3)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (1, 4, 3));
    assert!(g.has_x_plus_1());
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![2]);

    // n = 9, p = 3: pure p-power times m = 1.
    let g = sr_factorization(9, pm(3)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (2, 1, 9));
    assert!(!g.has_x_plus_1());
    assert!(g.sr_primes().is_empty());

    // n = 10, p = 5: m = 2 contributes only x + 1.
    let g = sr_factorization(10, pm(5)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (1, 2, 5));
    assert!(g.has_x_plus_1());
    assert!(g.sr_primes().is_empty());
}

#[test]
fn grouping_pairs_non_self_reciprocal_factors() {
    // n = 14, p = 2: the two cubics x^3+x+1 and x^3+x^2+1 are mutual
    // reciprocals and must group into one degree-6 prime self-reciprocal.
    let g = sr_factorization(14, pm(2)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (1, 7, 2));
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![6]);
    let r = &g.sr_primes()[0].poly;
    assert!(is_self_reciprocal(r));
    // The product (x^3+x+1)(x^3+x^2+1).
    let p2 = pm(2);
    let expected = FpPoly::new(p2, &[1, 1, 0, 1]).mul(&FpPoly::new(p2, &[1, 0, 1, 1]));
    assert_eq!(*r, expected);
}

#[test]
fn grouping_structure_appendix_sizes() {
    // n = 117 = 9·13, p = 3: four cubic factors pair into two degree-6
    // self-reciprocal primes.
    let g = sr_factorization(117, pm(3)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (2, 13, 9));
    assert!(!g.has_x_plus_1());
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![6, 6]);

    // n = 126 = 9·14, p = 3.
    let g = sr_factorization(126, pm(3)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (2, 14, 9));
    assert!(g.has_x_plus_1());
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![6, 6]);

    // n = 180 = 9·20, p = 3: degrees {2, 4, 4, 8}.
    let g = sr_factorization(180, pm(3)).unwrap();
    assert_eq!((g.v(), g.m(), g.multiplicity()), (2, 20, 9));
    assert!(g.has_x_plus_1());
    let degs: Vec<usize> = g.sr_primes().iter().map(|r| r.degree).collect();
    assert_eq!(degs, vec![2, 4, 4, 8]);
}

#[test]
fn grouped_parts_are_self_reciprocal_and_even() {
    for (p, n) in [(2u64, 12u64), (2, 15), (2, 16), (3, 12), (5, 10), (7, 7), (3, 117)] {
        let g = sr_factorization(n, pm(p)).unwrap();
        for r in g.sr_primes() {
            assert!(r.degree % 2 == 0 && r.degree >= 2);
            assert!(is_self_reciprocal(&r.poly));
            assert_eq!(r.poly.degree(), Some(r.degree));
        }
        // Degree bookkeeping: pv·(1 + [x+1]) + pv·sum deg r_i = n.
        let pv = g.multiplicity();
        let sr_deg: u64 = g.sr_primes().iter().map(|r| r.degree as u64).sum();
        let linear = if g.has_x_plus_1() { 2 } else { 1 };
        assert_eq!(pv * linear + pv * sr_deg, n);
    }
}
