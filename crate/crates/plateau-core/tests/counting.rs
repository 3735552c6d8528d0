//! Tests for the self-reciprocal divisor-counting machinery.
//!
//! The centerpiece is an independent brute-force oracle for phi_p:
//! enumerate every palindromic polynomial of even degree below deg f and
//! count those coprime to f, then compare against both the product form
//! and the Mobius form. The divisor-sum identity (sum of phi over the
//! exponent lattice equals p^{deg f/2} - 1) and the product/divisor-sum
//! agreement for G are checked over full divisor lattices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use plateau_core::counting::{
    g_f_z, mu_p, n_f_all, n_f_t, phi_p, phi_p_mobius, phi_prime_power,
    simple_g_linear_even, simple_g_sr, PrimeElement, SrExponentVector, ZPoly,
};
use plateau_core::factorization::{sr_factorization, SrFactorization};
use plateau_core::fieldpoly::{poly_gcd, FpPoly, PrimeModulus};

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn ctx(p: u64, n: u64) -> SrFactorization {
    sr_factorization(n, pm(p)).unwrap()
}

/// The actual polynomial behind an exponent vector.
fn vector_poly(f: &SrExponentVector) -> FpPoly {
    let p = f.ctx().p();
    let mut acc = FpPoly::one(p);
    let x_minus_1 = FpPoly::new(p, &[p.get() - 1, 1]);
    let x_plus_1 = FpPoly::new(p, &[1, 1]);
    acc = acc.mul(&x_minus_1.pow(2 * f.e_minus()));
    acc = acc.mul(&x_plus_1.pow(2 * f.e_plus()));
    for (&e, r) in f.e().iter().zip(f.ctx().sr_primes()) {
        acc = acc.mul(&r.poly.pow(e));
    }
    acc
}

/// Brute-force phi_p: count the palindromic polynomials of even degree
/// below deg f that are coprime to f. Degree-0 candidates are the p - 1
/// units. Palindromic means the coefficient vector equals its reversal
/// (so the constant term is a unit automatically).
fn phi_brute(f: &SrExponentVector) -> BigInt {
    let poly = vector_poly(f);
    let p = f.ctx().p().get();
    let pmod = f.ctx().p();
    let deg_f = poly.degree().unwrap();
    let mut count = 0u64;
    let mut d = 0usize;
    while d < deg_f {
        // Free coefficients: positions 0..=d/2; position d/2 mirrors to
        // itself for even d. The shared constraint is coeff[0] != 0.
        let half = d / 2;
        let total = (p - 1) * p.pow(half as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut c = vec![0u64; d + 1];
            c[0] = 1 + rem % (p - 1);
            rem /= p - 1;
            for pos in 1..=half {
                c[pos] = rem % p;
                rem /= p;
            }
            for pos in 0..=half {
                c[d - pos] = c[pos];
            }
            let g = FpPoly::new(pmod, &c);
            let gcd = poly_gcd(&g, &poly).unwrap();
            if gcd.degree() == Some(0) {
                count += 1;
            }
        }
        d += 2;
    }
    BigInt::from(count)
}

#[test]
fn zpoly_ring_operations() {
    let a = ZPoly::new(vec![BigInt::from(1), BigInt::from(2)]);
    let b = ZPoly::new(vec![BigInt::from(3), BigInt::zero(), BigInt::from(1)]);
    let prod = a.mul(&b);
    assert_eq!(
        prod.coeffs(),
        &[BigInt::from(3), BigInt::from(6), BigInt::from(1), BigInt::from(2)]
    );
    assert_eq!(a.add(&b).coeff(0), BigInt::from(4));
    assert_eq!(a.sub(&b).coeff(2), BigInt::from(-1));
    assert_eq!(prod.eval_u64(2), BigInt::from(3 + 12 + 4 + 16));
    // Trailing zeros trim; degree of zero is None.
    assert!(ZPoly::new(vec![BigInt::zero(); 3]).is_zero());
    assert_eq!(ZPoly::zero().degree(), None);
    // scale_arg multiplies coefficient k by c^k.
    let s = b.scale_arg(2);
    assert_eq!(s.coeffs(), &[BigInt::from(3), BigInt::zero(), BigInt::from(4)]);
    // (a·b)(z) = a(z)·b(z) on a sample point.
    assert_eq!(
        prod.eval_u64(5),
        a.eval_u64(5) * b.eval_u64(5)
    );
}

#[test]
fn phi_prime_power_closed_forms() {
    // Linear squared: p^{j-1}(p-1).
    assert_eq!(
        phi_prime_power(3, PrimeElement::LinearSquared, 1).unwrap(),
        BigInt::from(2)
    );
    assert_eq!(
        phi_prime_power(3, PrimeElement::LinearSquared, 3).unwrap(),
        BigInt::from(18)
    );
    // Self-reciprocal of degree d: p^{jd/2} - p^{(j-1)d/2}.
    assert_eq!(
        phi_prime_power(3, PrimeElement::Sr { degree: 2 }, 1).unwrap(),
        BigInt::from(2)
    );
    assert_eq!(
        phi_prime_power(3, PrimeElement::Sr { degree: 2 }, 2).unwrap(),
        BigInt::from(6)
    );
    assert_eq!(
        phi_prime_power(2, PrimeElement::Sr { degree: 6 }, 2).unwrap(),
        BigInt::from(64 - 8)
    );
    assert!(phi_prime_power(3, PrimeElement::LinearSquared, 0).is_err());
}

#[test]
fn mu_p_values() {
    let c = ctx(3, 12); // primes: (x-1)^2, (x+1)^2, x^2+1
    let v = |a, b, e| SrExponentVector::new(&c, a, b, vec![e]);
    assert_eq!(mu_p(&v(0, 0, 0)), 1);
    assert_eq!(mu_p(&v(1, 0, 0)), -1);
    assert_eq!(mu_p(&v(1, 1, 0)), 1);
    assert_eq!(mu_p(&v(1, 1, 1)), -1);
    assert_eq!(mu_p(&v(2, 0, 0)), 0);
    assert_eq!(mu_p(&v(0, 1, 3)), 0);
}

#[test]
fn divisor_enumeration_counts() {
    let c = ctx(2, 12);
    let full = SrExponentVector::full_modulus(&c);
    // (x+1)^4 (x^2+x+1)^4 grouped: e_minus <= 2, e <= 4.
    assert_eq!(full.e_minus(), 2);
    assert_eq!(full.e_plus(), 0);
    assert_eq!(full.e(), &[4]);
    assert_eq!(full.degree(), 12);
    let divisors = full.divisors();
    assert_eq!(divisors.len(), 15);
    assert_eq!(full.divisor_count(), 15);
    // Each divisor appears exactly once.
    for i in 0..divisors.len() {
        for j in 0..i {
            assert_ne!(divisors[i], divisors[j]);
        }
    }
}

#[test]
fn phi_frozen_gates() {
    // phi_3((x^2+1)^2) = 6 under the all-palindromic convention
    // (2 units plus 4 coprime palindromic quadratics).
    let c = ctx(3, 12);
    let f = SrExponentVector::new(&c, 0, 0, vec![2]);
    assert_eq!(phi_p(&f), BigInt::from(6));
    assert_eq!(phi_p_mobius(&f), BigInt::from(6));
    assert_eq!(phi_brute(&f), BigInt::from(6));

    // Lattice divisor sum for (x-1)^2(x+1)^2 over F_3: phi(1) +
    // phi((x-1)^2) + phi((x+1)^2) + phi((x-1)^2(x+1)^2) = 0+2+2+4 = 8
    // = 3^2 - 1. The polynomial divisor (x-1)(x+1) is not an element of
    // the lattice; including it would break the identity.
    let f = SrExponentVector::new(&c, 1, 1, vec![0]);
    let mut total = BigInt::zero();
    f.for_each_divisor(|d| total += phi_p(d));
    assert_eq!(total, BigInt::from(8));
    assert_eq!(phi_p(&f), BigInt::from(4));
    assert_eq!(phi_brute(&f), BigInt::from(4));

    // phi_p(1) = 0 by convention in both forms.
    let one = SrExponentVector::identity(&c);
    assert_eq!(phi_p(&one), BigInt::zero());
    assert_eq!(phi_p_mobius(&one), BigInt::zero());
    assert_eq!(phi_brute(&one), BigInt::zero());
}

/// Shared sweep: for every divisor f of the full even-degree lattice of
/// (p, n), compare phi forms (optionally against brute force), check the
/// divisor-sum identity and the G product/divisor-sum agreement.
fn sweep_lattice(p: u64, n: u64, brute: bool) {
    let c = ctx(p, n);
    let full = SrExponentVector::full_modulus(&c);
    full.for_each_divisor(|f| {
        let by_product = phi_p(f);
        assert_eq!(by_product, phi_p_mobius(f), "phi forms differ at {:?}", f);
        if brute {
            assert_eq!(by_product, phi_brute(f), "brute phi differs at {:?}", f);
        }
        // Lemma: sum over the divisor lattice of f.
        let mut total = BigInt::zero();
        f.for_each_divisor(|d| total += phi_p(d));
        let expected = BigInt::from(p).pow((f.degree() / 2) as u32) - BigInt::one();
        assert_eq!(total, expected, "divisor-sum identity fails at {:?}", f);
        // G: product form equals the divisor-sum definition, and the
        // coefficients are the N(f;t) values.
        let g = g_f_z(f);
        assert_eq!(g, ZPoly::from_map(&n_f_all(f)), "G mismatch at {:?}", f);
        for t in 0..=f.degree() + 2 {
            assert_eq!(g.coeff(t as usize), n_f_t(f, t));
        }
        // Mass: G(1) = 1 + sum phi = p^{deg/2}.
        assert_eq!(g.eval_u64(1), BigInt::from(p).pow((f.degree() / 2) as u32));
    });
}

#[test]
fn lattice_sweep_2_12_with_brute_force() {
    sweep_lattice(2, 12, true);
}

#[test]
fn lattice_sweep_3_12_with_brute_force() {
    sweep_lattice(3, 12, true);
}

#[test]
fn lattice_sweep_3_9_with_brute_force() {
    sweep_lattice(3, 9, true);
}

#[test]
fn lattice_sweep_5_10_with_brute_force() {
    sweep_lattice(5, 10, true);
}

#[test]
fn lattice_sweep_2_15() {
    // Odd n: lattice of two self-reciprocal primes (degrees 4 and 8),
    // no linear-squared part.
    sweep_lattice(2, 15, true);
}

#[test]
fn g_multiplicative_across_coprime_parts() {
    // G(f·g) = G(f)·G(g) for f, g with disjoint prime support.
    let c = ctx(3, 12);
    let f = SrExponentVector::new(&c, 1, 0, vec![0]);
    let g = SrExponentVector::new(&c, 0, 1, vec![3]);
    let fg = SrExponentVector::new(&c, 1, 1, vec![3]);
    assert_eq!(g_f_z(&fg), g_f_z(&f).mul(&g_f_z(&g)));
}

#[test]
fn simple_g_matches_phi_values() {
    let g = simple_g_sr(3, 2, 3);
    assert_eq!(g.coeff(0), BigInt::one());
    for j in 1..=3usize {
        assert_eq!(
            g.coeff(2 * j),
            phi_prime_power(3, PrimeElement::Sr { degree: 2 }, j as u64).unwrap()
        );
    }
    let g = simple_g_linear_even(5, 2);
    assert_eq!(g.coeff(2), BigInt::from(4));
    assert_eq!(g.coeff(4), BigInt::from(20));
    assert_eq!(g.degree(), Some(4));
}

#[test]
fn n_f_t_conventions() {
    let c = ctx(2, 12);
    let full = SrExponentVector::full_modulus(&c);
    // t = 0 counts the empty selection once.
    assert_eq!(n_f_t(&full, 0), BigInt::one());
    // Odd t is impossible.
    assert_eq!(n_f_t(&full, 5), BigInt::zero());
    // Beyond deg f there is nothing.
    assert_eq!(n_f_t(&full, 14), BigInt::zero());
    // N(f; deg f) = phi_p of the largest divisor plus smaller same-degree
    // ones; for the full modulus of (2,12) the degree-12 divisors are
    // (x+1)^4 r^4 itself and (x+1)^0 r^... none else of degree 12 with
    // r of degree 2: e_minus=2,e=4 (deg 12) and e_minus=0... 2e+2e'...
    // enumerate: 2a + 2e = 12 with a<=2, e<=4: (a,e) = (2,4) only.
    assert_eq!(n_f_t(&full, 12), phi_p(&full));
}
