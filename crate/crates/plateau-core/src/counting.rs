//! Divisor counting on the monoid of monic self-reciprocal polynomials of
//! even degree, and the generating polynomial G(f;z).
//!
//! The monoid is freely generated by the prime elements (x-1)^2, (x+1)^2,
//! and the even-degree prime self-reciprocal factors r_i of x^n - 1, so
//! every element is an exponent vector and divisor sums run over the
//! exponent lattice. In particular (x-1)(x+1) is not an element here even
//! though it divides (x-1)^2(x+1)^2 as a polynomial; the identities below
//! (notably sum phi_p(d) = p^{deg f / 2} - 1) hold precisely for the
//! lattice convention.
//!
//! phi_p(f) counts the self-reciprocal polynomials of even degree below
//! deg f that are coprime to f (all units included, so the count of
//! degree-0 elements is p - 1); phi_p(1) = 0 by convention. It is
//! multiplicative, satisfies the Mobius-style inversion against mu_p, and
//! its generating polynomial over the divisors of f multiplies across
//! coprime parts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::factorization::SrFactorization;
use crate::Error;

/// Polynomial in z with arbitrary-precision integer coefficients, in
/// canonical form (no trailing zeros).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_map(map: &BTreeMap<u64, BigInt>) -> Self {
        let deg = map.keys().next_back().copied().unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (&t, c) in map {
            coeffs[t as usize] = c.clone();
        }
        ZPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of z^t (zero beyond the stored degree).
    pub fn coeff(&self, t: usize) -> BigInt {
        self.coeffs.get(t).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) + other.coeff(i));
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) - other.coeff(i));
        }
        ZPoly::new(out)
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_u64(&self, z: u64) -> BigInt {
        self.eval(&BigInt::from(z))
    }

    /// Substitutes z -> c·z, scaling the coefficient of z^t by c^t.
    pub fn scale_arg(&self, c: u64) -> ZPoly {
        let c = BigInt::from(c);
        let mut factor = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &factor);
            factor *= &c;
        }
        ZPoly::new(out)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// A prime element of the even-degree self-reciprocal monoid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimeElement {
    /// (x - 1)^2 or (x + 1)^2; phi_p and G depend only on p here.
    LinearSquared,
    /// A prime self-reciprocal polynomial of even degree.
    Sr { degree: usize },
}

/// phi_p of a prime power: phi_p(r^j) = p^{j·deg(r)/2} - p^{(j-1)·deg(r)/2}
/// for prime self-reciprocal r, and phi_p((x∓1)^{2j}) = p^{j-1}(p - 1).
/// Errors on j = 0.
pub fn phi_prime_power(p: u64, elem: PrimeElement, j: u64) -> Result<BigInt, Error> {
    if j == 0 {
        return Err(Error::Unsupported("phi_prime_power needs exponent >= 1"));
    }
    let p_big = BigInt::from(p);
    Ok(match elem {
        PrimeElement::LinearSquared => p_big.pow(j as u32 - 1) * (p - 1),
        PrimeElement::Sr { degree } => {
            assert!(degree >= 2 && degree % 2 == 0, "sr degree must be even");
            let h = (degree / 2) as u32;
            p_big.pow(j as u32 * h) - p_big.pow((j as u32 - 1) * h)
        }
    })
}

/// An element f = (x-1)^{2·e_minus} (x+1)^{2·e_plus} ∏ r_i^{e_i} of the
/// monoid, as an exponent vector over a fixed factorization context.
/// For p = 2 the lone linear prime (x+1)^2 = (x-1)^2 uses the e_minus
/// slot and e_plus stays zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SrExponentVector<'a> {
    ctx: &'a SrFactorization,
    e_minus: u64,
    e_plus: u64,
    e: Vec<u64>,
}

impl<'a> SrExponentVector<'a> {
    pub fn new(ctx: &'a SrFactorization, e_minus: u64, e_plus: u64, e: Vec<u64>) -> Self {
        assert_eq!(e.len(), ctx.sr_primes().len(), "exponent count mismatch");
        assert!(
            ctx.p().get() != 2 || e_plus == 0,
            "p = 2 has a single linear prime; use e_minus"
        );
        SrExponentVector { ctx, e_minus, e_plus, e }
    }

    /// The monoid identity f = 1.
    pub fn identity(ctx: &'a SrFactorization) -> Self {
        SrExponentVector::new(ctx, 0, 0, vec![0; ctx.sr_primes().len()])
    }

    /// The full even-degree self-reciprocal part of x^n - 1 itself:
    /// exponents floor(p^v / 2) on the linear squares and p^v on each r_i.
    pub fn full_modulus(ctx: &'a SrFactorization) -> Self {
        let pv = ctx.multiplicity();
        let e_plus = if ctx.has_x_plus_1() { pv / 2 } else { 0 };
        SrExponentVector::new(
            ctx,
            pv / 2,
            e_plus,
            vec![pv; ctx.sr_primes().len()],
        )
    }

    pub fn ctx(&self) -> &'a SrFactorization {
        self.ctx
    }

    pub fn e_minus(&self) -> u64 {
        self.e_minus
    }

    pub fn e_plus(&self) -> u64 {
        self.e_plus
    }

    pub fn e(&self) -> &[u64] {
        &self.e
    }

    pub fn is_identity(&self) -> bool {
        self.e_minus == 0 && self.e_plus == 0 && self.e.iter().all(|&x| x == 0)
    }

    /// Polynomial degree 2(e_minus + e_plus) + sum e_i·deg(r_i).
    pub fn degree(&self) -> u64 {
        let sr: u64 = self
            .e
            .iter()
            .zip(self.ctx.sr_primes())
            .map(|(&e, r)| e * r.degree as u64)
            .sum();
        2 * (self.e_minus + self.e_plus) + sr
    }

    /// Calls `visit` for every divisor (componentwise smaller exponent
    /// vector), the identity and self included, in mixed-radix order.
    pub fn for_each_divisor<F: FnMut(&SrExponentVector<'a>)>(&self, mut visit: F) {
        let mut d = SrExponentVector::new(self.ctx, 0, 0, vec![0; self.e.len()]);
        loop {
            visit(&d);
            // Increment the mixed-radix counter (e_minus, e_plus, e...).
            if d.e_minus < self.e_minus {
                d.e_minus += 1;
                continue;
            }
            d.e_minus = 0;
            if d.e_plus < self.e_plus {
                d.e_plus += 1;
                continue;
            }
            d.e_plus = 0;
            let mut i = 0;
            loop {
                if i == d.e.len() {
                    return;
                }
                if d.e[i] < self.e[i] {
                    d.e[i] += 1;
                    break;
                }
                d.e[i] = 0;
                i += 1;
            }
        }
    }

    pub fn divisors(&self) -> Vec<SrExponentVector<'a>> {
        let mut out = Vec::new();
        self.for_each_divisor(|d| out.push(d.clone()));
        out
    }

    /// Number of lattice divisors ∏ (e + 1).
    pub fn divisor_count(&self) -> u64 {
        let mut count = (self.e_minus + 1) * (self.e_plus + 1);
        for &e in &self.e {
            count = count.saturating_mul(e + 1);
        }
        count
    }
}

/// mu_p: zero if any exponent is >= 2, otherwise (-1)^k where k is the
/// number of prime elements with exponent 1.
pub fn mu_p(f: &SrExponentVector) -> i8 {
    let mut k = 0u32;
    for &e in [f.e_minus(), f.e_plus()].iter().chain(f.e().iter()) {
        if e >= 2 {
            return 0;
        }
        k += e as u32;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// phi_p by multiplicativity over the prime-power parts; phi_p(1) = 0.
pub fn phi_p(f: &SrExponentVector) -> BigInt {
    if f.is_identity() {
        return BigInt::zero();
    }
    let p = f.ctx().p().get();
    let mut acc = BigInt::one();
    for &j in [f.e_minus(), f.e_plus()].iter() {
        if j > 0 {
            acc *= phi_prime_power(p, PrimeElement::LinearSquared, j).unwrap();
        }
    }
    for (&j, r) in f.e().iter().zip(f.ctx().sr_primes()) {
        if j > 0 {
            acc *= phi_prime_power(p, PrimeElement::Sr { degree: r.degree }, j).unwrap();
        }
    }
    acc
}

/// phi_p by the Mobius sum phi_p(f) = sum_{d|f} mu_p(d) p^{(deg f - deg d)/2}.
/// Computed independently of the product form; the two must agree (that is
/// Lemma-level content, exercised by the identity tests). phi_p(1) = 0 by
/// the same convention as [`phi_p`].
pub fn phi_p_mobius(f: &SrExponentVector) -> BigInt {
    if f.is_identity() {
        return BigInt::zero();
    }
    let p = BigInt::from(f.ctx().p().get());
    let deg_f = f.degree();
    let mut acc = BigInt::zero();
    f.for_each_divisor(|d| {
        let m = mu_p(d);
        if m != 0 {
            let half = ((deg_f - d.degree()) / 2) as u32;
            let term = p.pow(half);
            if m > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    });
    acc
}

/// N(f;t): 1 at t = 0; the divisor sum of phi_p over degree-t divisors for
/// positive even t; 0 otherwise.
pub fn n_f_t(f: &SrExponentVector, t: u64) -> BigInt {
    if t == 0 {
        return BigInt::one();
    }
    if t % 2 != 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    f.for_each_divisor(|d| {
        if d.degree() == t {
            acc += phi_p(d);
        }
    });
    acc
}

/// All values N(f;t) at once: one divisor sweep, returned as a map from
/// even t to the sum (t = 0 maps to 1 per the definition).
pub fn n_f_all(f: &SrExponentVector) -> BTreeMap<u64, BigInt> {
    let mut map: BTreeMap<u64, BigInt> = BTreeMap::new();
    map.insert(0, BigInt::one());
    f.for_each_divisor(|d| {
        if !d.is_identity() {
            let entry = map.entry(d.degree()).or_insert_with(BigInt::zero);
            *entry += phi_p(d);
        }
    });
    map
}

/// G for a power of a prime self-reciprocal polynomial of even degree:
/// G(r^k; z) = 1 + sum_{j=1..k} (p^{j·d/2} - p^{(j-1)·d/2}) z^{j·d}.
pub fn simple_g_sr(p: u64, degree: usize, cap: u64) -> ZPoly {
    let mut coeffs = vec![BigInt::zero(); (cap as usize) * degree + 1];
    coeffs[0] = BigInt::one();
    for j in 1..=cap {
        coeffs[j as usize * degree] =
            phi_prime_power(p, PrimeElement::Sr { degree }, j).unwrap();
    }
    ZPoly::new(coeffs)
}

/// G for an even power of x ∓ 1:
/// G((x∓1)^{2·cap}; z) = 1 + sum_{j=1..cap} p^{j-1}(p - 1) z^{2j}.
pub fn simple_g_linear_even(p: u64, cap: u64) -> ZPoly {
    let mut coeffs = vec![BigInt::zero(); 2 * cap as usize + 1];
    coeffs[0] = BigInt::one();
    for j in 1..=cap {
        coeffs[2 * j as usize] =
            phi_prime_power(p, PrimeElement::LinearSquared, j).unwrap();
    }
    ZPoly::new(coeffs)
}

/// G(f;z) as the product of the prime-power factors (multiplicativity
/// across coprime parts). For small divisor lattices the coefficients are
/// cross-checked against the divisor-sum definition in debug builds.
pub fn g_f_z(f: &SrExponentVector) -> ZPoly {
    let p = f.ctx().p().get();
    let mut acc = ZPoly::one();
    for &j in [f.e_minus(), f.e_plus()].iter() {
        if j > 0 {
            acc = acc.mul(&simple_g_linear_even(p, j));
        }
    }
    for (&j, r) in f.e().iter().zip(f.ctx().sr_primes()) {
        if j > 0 {
            acc = acc.mul(&simple_g_sr(p, r.degree, j));
        }
    }
    debug_assert!(
        f.divisor_count() > 4096 || {
            let bysum = ZPoly::from_map(&n_f_all(f));
            bysum == acc
        },
        "product form of G disagrees with the divisor-sum definition"
    );
    acc
}
