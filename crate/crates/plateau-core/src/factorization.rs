//! Factoring x^n - 1 over F_p and grouping the factors into prime
//! self-reciprocal polynomials.
//!
//! Write n = m·p^v with gcd(m, p) = 1. Then x^n - 1 = (x^m - 1)^{p^v}, and
//! x^m - 1 splits into distinct irreducibles indexed by the cyclotomic
//! cosets of p modulo m: with α a root of unity of order m in F_{p^d},
//! d = ord_m(p), the coset C_j yields the factor ∏_{i ∈ C_j}(x - α^i).
//! A factor is self-reciprocal exactly when its coset is closed under
//! negation; otherwise it pairs with the factor of the negated coset, and
//! the product of the pair is self-reciprocal. The grouped shape is
//!
//!   x^n - 1 = (x - 1)^{p^v} · [(x + 1)^{p^v}] · r_1^{p^v} ··· r_k^{p^v},
//!
//! the (x + 1) part present only for odd p and even n, and every r_i a
//! prime self-reciprocal polynomial of even degree.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::One;

use crate::fieldpoly::{poly_reciprocal, ExtElement, ExtField, FpPoly, PrimeModulus};
use crate::Error;

/// Orbit of a residue class under multiplication by p modulo m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicCoset {
    representative: u64,
    members: Vec<u64>,
}

impl CyclotomicCoset {
    /// The minimum member.
    pub fn representative(&self) -> u64 {
        self.representative
    }

    /// Members sorted ascending.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All cyclotomic cosets of p modulo m, as a partition of {0, ..., m-1}
/// ordered by representative. Requires gcd(m, p) = 1.
pub fn cyclotomic_cosets(m: u64, p: PrimeModulus) -> Result<Vec<CyclotomicCoset>, Error> {
    if gcd(m, p.get()) != 1 {
        return Err(Error::NotCoprime { m, p: p.get() });
    }
    let mut seen = vec![false; m as usize];
    let mut cosets = Vec::new();
    for j in 0..m {
        if seen[j as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = j;
        loop {
            seen[cur as usize] = true;
            members.push(cur);
            cur = (cur as u128 * p.get() as u128 % m as u128) as u64;
            if cur == j {
                break;
            }
        }
        members.sort_unstable();
        cosets.push(CyclotomicCoset { representative: j, members });
    }
    Ok(cosets)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits n as m·p^v with gcd(m, p) = 1; returns (m, v, p^v).
pub fn split_p_part(n: u64, p: u64) -> (u64, u32, u64) {
    let mut m = n;
    let mut v = 0u32;
    let mut pv = 1u64;
    while m % p == 0 {
        m /= p;
        v += 1;
        pv *= p;
    }
    (m, v, pv)
}

/// Multiplicative order of p modulo m (m coprime to p).
pub fn multiplicative_order(p: u64, m: u64) -> u64 {
    assert!(m >= 1 && gcd(m, p) == 1);
    if m == 1 {
        return 1;
    }
    let mut d = 1u64;
    let mut cur = p % m;
    while cur != 1 {
        cur = (cur as u128 * p as u128 % m as u128) as u64;
        d += 1;
    }
    d
}

/// One irreducible factor of x^n - 1 with its multiplicity p^v.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrreducibleFactor {
    pub poly: FpPoly,
    pub multiplicity: u64,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact multiplicative order m in F_{p^d}, d = ord_m(p):
/// candidates g are scanned in index order, each raised to (p^d - 1)/m,
/// and the first power with exact order m wins. Deterministic.
fn root_of_unity(field: &ExtField, m: u64) -> ExtElement {
    let exponent = (field.order_big() - BigUint::one()) / BigUint::from(m);
    let qs = prime_divisors(m);
    let mut idx: u64 = 1;
    loop {
        let g = field.element_from_index(idx);
        let alpha = field.pow(&g, &exponent);
        if !alpha.is_zero()
            && qs
                .iter()
                .all(|&q| field.pow_u64(&alpha, m / q) != field.one())
        {
            // alpha^m = g^{p^d - 1} = 1, so exact order m once no proper
            // power m/q collapses to 1.
            debug_assert!(field.pow_u64(&alpha, m) == field.one());
            return alpha;
        }
        idx += 1;
        assert!(
            idx < field.order().unwrap_or(u64::MAX),
            "no element of order {m} found"
        );
    }
}

/// ∏ (x - root) over ext-field roots, with the invariant that the result
/// has prime-subfield coefficients; returns it as an FpPoly.
fn product_of_linears(field: &ExtField, roots: &[ExtElement]) -> FpPoly {
    // Coefficient vector over the extension field, low to high.
    let mut coeffs: Vec<ExtElement> = vec![field.one()];
    for r in roots {
        let neg_r = field.neg(r);
        let mut next: Vec<ExtElement> = Vec::with_capacity(coeffs.len() + 1);
        next.push(field.mul(&coeffs[0], &neg_r));
        for i in 1..coeffs.len() {
            next.push(field.add(&coeffs[i - 1], &field.mul(&coeffs[i], &neg_r)));
        }
        next.push(coeffs.last().unwrap().clone());
        coeffs = next;
    }
    let base: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            c.as_base()
                .expect("coset product must have prime-field coefficients")
        })
        .collect();
    FpPoly::new(field.base(), &base)
}

/// Factors x^n - 1 over F_p into distinct monic irreducibles, each with
/// multiplicity p^v (n = m·p^v, gcd(m, p) = 1). Factors are sorted by
/// (degree, coefficients low-to-high) for stable output. The re-multiplied
/// product is checked against x^n - 1; failure is a bug and panics.
pub fn factor_cyclic(n: u64, p: PrimeModulus) -> Result<Vec<IrreducibleFactor>, Error> {
    assert!(n >= 1, "n must be positive");
    let (m, _v, pv) = split_p_part(n, p.get());
    let mut factors: Vec<FpPoly> = Vec::new();
    if m == 1 {
        factors.push(FpPoly::new(p, &[p.neg(1), 1]));
    } else {
        let d = multiplicative_order(p.get(), m);
        let field = ExtField::new(p, d as usize);
        let alpha = root_of_unity(&field, m);
        // Powers alpha^0 .. alpha^{m-1}.
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = field.one();
        for _ in 0..m {
            powers.push(cur.clone());
            cur = field.mul(&cur, &alpha);
        }
        for coset in cyclotomic_cosets(m, p)? {
            let roots: Vec<ExtElement> = coset
                .members()
                .iter()
                .map(|&i| powers[i as usize].clone())
                .collect();
            factors.push(product_of_linears(&field, &roots));
        }
    }
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    let mut product = FpPoly::one(p);
    for f in &factors {
        product = product.mul(&f.pow(pv));
    }
    assert_eq!(
        product,
        FpPoly::x_pow_minus(p, n as usize, 1),
        "factor product failed to reproduce x^n - 1"
    );
    Ok(factors
        .into_iter()
        .map(|poly| IrreducibleFactor { poly, multiplicity: pv })
        .collect())
}

/// A prime self-reciprocal polynomial of even degree: either an irreducible
/// self-reciprocal polynomial, or g·g* for an irreducible g with distinct
/// reciprocal g*.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SrPrime {
    pub poly: FpPoly,
    pub degree: usize,
}

/// The prime self-reciprocal factorization of x^n - 1:
/// (x-1)^{p^v} · [(x+1)^{p^v} if present] · ∏ r_i^{p^v}. For p = 2 the
/// single linear factor x - 1 = x + 1 lives in the (x - 1) slot and
/// `has_x_plus_1` is false.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SrFactorization {
    p: PrimeModulus,
    n: u64,
    v: u32,
    m: u64,
    multiplicity: u64,
    has_x_plus_1: bool,
    sr_primes: Vec<SrPrime>,
}

impl SrFactorization {
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// p-adic valuation v of n.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// The p-free part m = n / p^v.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Uniform factor multiplicity p^v.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// Whether a separate (x + 1)^{p^v} part exists (odd p, even n).
    pub fn has_x_plus_1(&self) -> bool {
        self.has_x_plus_1
    }

    /// The even-degree prime self-reciprocal factors, sorted by
    /// (degree, coefficients).
    pub fn sr_primes(&self) -> &[SrPrime] {
        &self.sr_primes
    }
}

/// Groups the irreducible factors of x^n - 1 into the prime
/// self-reciprocal structure. Consumes the output of [`factor_cyclic`].
/// Unmatched reciprocal partners or a failed re-multiplication are bugs
/// and panic.
pub fn group_self_reciprocal(
    factors: &[IrreducibleFactor],
    p: PrimeModulus,
    n: u64,
) -> SrFactorization {
    let (m, v, pv) = split_p_part(n, p.get());
    let x_minus_1 = FpPoly::new(p, &[p.neg(1), 1]);
    let x_plus_1 = FpPoly::new(p, &[1, 1]);
    let mut has_x_plus_1 = false;
    let mut rest: Vec<FpPoly> = Vec::new();
    for f in factors {
        assert_eq!(f.multiplicity, pv, "uneven multiplicities");
        if f.poly == x_minus_1 {
            continue;
        }
        if p.get() != 2 && f.poly == x_plus_1 {
            has_x_plus_1 = true;
            continue;
        }
        rest.push(f.poly.clone());
    }
    let mut sr_primes: Vec<SrPrime> = Vec::new();
    let mut used = vec![false; rest.len()];
    for i in 0..rest.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let f = &rest[i];
        let star = poly_reciprocal(f)
            .expect("irreducible factors are nonzero")
            .monic();
        let poly = if star == *f {
            f.clone()
        } else {
            let j = rest
                .iter()
                .enumerate()
                .position(|(j, g)| !used[j] && *g == star)
                .expect("reciprocal partner must be among the factors");
            used[j] = true;
            f.mul(&star)
        };
        let degree = poly.degree().unwrap();
        assert!(degree % 2 == 0, "prime self-reciprocal degree must be even");
        sr_primes.push(SrPrime { poly, degree });
    }
    sr_primes.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
    let out = SrFactorization {
        p,
        n,
        v,
        m,
        multiplicity: pv,
        has_x_plus_1,
        sr_primes,
    };
    // Degree bookkeeping: p^v + [x+1]·p^v + p^v·Σ deg r_i = n.
    let sum: u64 = out.sr_primes.iter().map(|r| r.degree as u64).sum();
    assert_eq!(
        pv + if has_x_plus_1 { pv } else { 0 } + pv * sum,
        n,
        "degree bookkeeping failed"
    );
    // Re-multiplication: the grouped parts reproduce x^n - 1 exactly.
    let mut product = x_minus_1.pow(pv);
    if has_x_plus_1 {
        product = product.mul(&x_plus_1.pow(pv));
    }
    for r in &out.sr_primes {
        product = product.mul(&r.poly.pow(pv));
    }
    assert_eq!(
        product,
        FpPoly::x_pow_minus(p, n as usize, 1),
        "grouped product failed to reproduce x^n - 1"
    );
    out
}

/// Convenience: factor and group in one step.
pub fn sr_factorization(n: u64, p: PrimeModulus) -> Result<SrFactorization, Error> {
    let factors = factor_cyclic(n, p)?;
    Ok(group_self_reciprocal(&factors, p, n))
}
