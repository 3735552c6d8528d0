//! Arithmetic over F_p, polynomials over F_p, and extension fields F_{p^d}.
//!
//! Polynomials are dense coefficient vectors in canonical form (no trailing
//! zeros; the zero polynomial is the empty vector and reports degree `None`).
//! Extension fields reduce modulo a deterministic defining polynomial, so
//! every run labels field elements and factors identically.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::Error;

/// A prime modulus p ≥ 2, checked by trial division at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 2 || (p > 2 && p % 2 == 0) {
            return Err(Error::NotPrime(p));
        }
        let mut d = 3u64;
        while d <= p / d {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 2;
        }
        Ok(PrimeModulus { p })
    }

    pub fn get(self) -> u64 {
        self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = (a as u128) + (b as u128);
        let p = self.p as u128;
        (if s >= p { s - p } else { s }) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; a must be nonzero mod p.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero mod {}", self.p);
        self.pow(a % self.p, self.p - 2)
    }
}

/// Dense polynomial over F_p. Invariant: `coeffs` has no trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from low-to-high coefficients, reducing mod p
    /// and trimming trailing zeros.
    pub fn new(modulus: PrimeModulus, coeffs: &[u64]) -> Self {
        let p = modulus.get();
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { modulus, coeffs: c }
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        FpPoly { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        FpPoly::new(modulus, &[1])
    }

    pub fn constant(modulus: PrimeModulus, c: u64) -> Self {
        FpPoly::new(modulus, &[c])
    }

    /// The monomial x^deg.
    pub fn monomial(modulus: PrimeModulus, deg: usize) -> Self {
        let mut coeffs = vec![0u64; deg + 1];
        coeffs[deg] = 1;
        FpPoly { modulus, coeffs }
    }

    /// x^n - c as a polynomial (c reduced mod p); n ≥ 1.
    pub fn x_pow_minus(modulus: PrimeModulus, n: usize, c: u64) -> Self {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = modulus.neg(c % modulus.get());
        coeffs[n] = 1;
        FpPoly::new(modulus, &coeffs)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Leading coefficient; zero polynomial has none.
    pub fn lc(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Some(1)
    }

    fn check_same_modulus(&self, other: &FpPoly) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in polynomial arithmetic"
        );
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.check_same_modulus(other);
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(m.add(self.coeff(i), other.coeff(i)));
        }
        FpPoly::new(m, &out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.check_same_modulus(other);
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(m.sub(self.coeff(i), other.coeff(i)));
        }
        FpPoly::new(m, &out)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        self.check_same_modulus(other);
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(m);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        FpPoly::new(m, &out)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let m = self.modulus;
        let out: Vec<u64> = self.coeffs.iter().map(|&a| m.mul(a, c)).collect();
        FpPoly::new(m, &out)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg rem < deg divisor. Panics on a zero divisor.
    pub fn divmod(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        self.check_same_modulus(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let m = self.modulus;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (FpPoly::zero(m), self.clone());
        }
        let lead_inv = m.inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = m.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = m.sub(rem[i - dd + j], m.mul(c, b));
            }
        }
        (FpPoly::new(m, &quot), FpPoly::new(m, &rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divmod(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &FpPoly) -> FpPoly {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn monic(&self) -> FpPoly {
        match self.lc() {
            None | Some(1) => self.clone(),
            Some(l) => self.scale(self.modulus.inv(l)),
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = m.add(m.mul(acc, x), c);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut acc = FpPoly::one(self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Monic greatest common divisor. Errors: different moduli, or both inputs
/// zero.
pub fn poly_gcd(a: &FpPoly, b: &FpPoly) -> Result<FpPoly, Error> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch);
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let r = f.rem(&g);
        f = g;
        g = r;
    }
    Ok(f.monic())
}

/// The reciprocal f*(x) = x^{deg f} f(1/x), i.e. the coefficient reversal.
/// If f(0) = 0 the result has lower degree than f (the reversal drops the
/// leading zeros that were f's low zero coefficients). Errors on zero input.
pub fn poly_reciprocal(f: &FpPoly) -> Result<FpPoly, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rev = f.coeffs.clone();
    rev.reverse();
    Ok(FpPoly::new(f.modulus, &rev))
}

/// Self-reciprocal up to a unit: monic(f) equals monic(f*).
pub fn is_self_reciprocal(f: &FpPoly) -> bool {
    match poly_reciprocal(f) {
        Ok(r) => f.monic() == r.monic(),
        Err(_) => false,
    }
}

/// f^e mod m by square-and-multiply over the bits of e. The exponent is a
/// big integer because p^d - 1 style exponents overflow fixed widths.
/// Errors on a zero modulus or a modulus mismatch.
pub fn poly_powmod(f: &FpPoly, e: &BigUint, m: &FpPoly) -> Result<FpPoly, Error> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m.modulus() != f.modulus() {
        return Err(Error::ModulusMismatch);
    }
    if m.degree() == Some(0) {
        return Ok(FpPoly::zero(m.modulus()));
    }
    let mut acc = FpPoly::one(f.modulus());
    if e.is_zero() {
        return Ok(acc);
    }
    let mut base = f.rem(m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
        if i + 1 < bits {
            base = base.mul(&base).rem(m);
        }
    }
    Ok(acc)
}

/// Convenience wrapper for u64 exponents.
pub fn poly_powmod_u64(f: &FpPoly, e: u64, m: &FpPoly) -> Result<FpPoly, Error> {
    poly_powmod(f, &BigUint::from(e), m)
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

/// Irreducibility over F_p by the standard criterion: f is irreducible of
/// degree k iff x^{p^k} ≡ x (mod f) and gcd(x^{p^{k/q}} - x, f) = 1 for
/// every prime q | k. The Frobenius ladder is built incrementally from the
/// smallest exponent up, so composites with small factors exit early.
/// Unit factors are irrelevant to irreducibility, so the test runs on
/// the monic associate. Errors: zero or constant input.
pub fn is_irreducible(f: &FpPoly) -> Result<bool, Error> {
    let k = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(k) => k,
    };
    if k == 1 {
        return Ok(true);
    }
    let monic_storage;
    let f = if f.is_monic() {
        f
    } else {
        monic_storage = f.monic();
        &monic_storage
    };
    let m = f.modulus();
    let p = BigUint::from(m.get());
    let x = FpPoly::monomial(m, 1);
    // Checkpoints k/q in increasing order, then the final exponent k.
    let mut checkpoints: Vec<(usize, bool)> =
        prime_divisors(k as u64).iter().map(|&q| (k / q as usize, true)).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    checkpoints.push((k, false));
    // xq holds x^{p^steps} mod f; advance by repeated p-th powers.
    let mut xq = x.clone();
    let mut steps = 0usize;
    for (target, must_be_coprime) in checkpoints {
        while steps < target {
            xq = poly_powmod(&xq, &p, f)?;
            steps += 1;
        }
        let diff = xq.sub(&x);
        if must_be_coprime {
            let g = if diff.is_zero() { f.clone() } else { poly_gcd(&diff, f)? };
            if g.degree() != Some(0) {
                return Ok(false);
            }
        } else if !diff.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An extension field F_{p^d} represented as F_p\[x\] modulo a monic
/// irreducible defining polynomial of degree d. The defining polynomial is
/// the lexicographically first irreducible (coefficients scanned low to
/// high as base-p digits), so factor labels are stable across runs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtField {
    base: PrimeModulus,
    degree: usize,
    defining: FpPoly,
}

/// An element of an `ExtField`: a residue of degree < d. Operations go
/// through the owning field, which re-checks the degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElement {
    repr: FpPoly,
}

impl ExtElement {
    pub fn repr(&self) -> &FpPoly {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    /// The constant value if the element lies in the prime subfield.
    pub fn as_base(&self) -> Option<u64> {
        match self.repr.degree() {
            None => Some(0),
            Some(0) => Some(self.repr.coeff(0)),
            _ => None,
        }
    }
}

impl ExtField {
    /// Builds F_{p^d}, scanning for the defining polynomial.
    pub fn new(base: PrimeModulus, degree: usize) -> Self {
        assert!(degree >= 1, "field degree must be positive");
        let defining = first_irreducible(base, degree);
        ExtField { base, degree, defining }
    }

    /// Uses a caller-supplied monic irreducible defining polynomial.
    pub fn with_defining(defining: FpPoly) -> Result<Self, Error> {
        if !is_irreducible(&defining)? {
            return Err(Error::Unsupported("defining polynomial is reducible"));
        }
        Ok(ExtField {
            base: defining.modulus(),
            degree: defining.degree().unwrap(),
            defining,
        })
    }

    pub fn base(&self) -> PrimeModulus {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn defining(&self) -> &FpPoly {
        &self.defining
    }

    /// Number of field elements p^d, if it fits in u64.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.degree {
            acc = acc.checked_mul(self.base.get())?;
        }
        Some(acc)
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.base.get()).pow(self.degree as u32)
    }

    pub fn element(&self, poly: &FpPoly) -> ExtElement {
        ExtElement { repr: poly.rem(&self.defining) }
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement { repr: FpPoly::zero(self.base) }
    }

    pub fn one(&self) -> ExtElement {
        ExtElement { repr: FpPoly::one(self.base) }
    }

    pub fn from_base(&self, c: u64) -> ExtElement {
        ExtElement { repr: FpPoly::constant(self.base, c) }
    }

    /// The residue class of x, a root of the defining polynomial.
    pub fn generator_x(&self) -> ExtElement {
        self.element(&FpPoly::monomial(self.base, 1))
    }

    fn check(&self, e: &ExtElement) {
        assert!(
            e.repr.degree().map_or(true, |d| d < self.degree),
            "element degree out of range for this field"
        );
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.check(a);
        self.check(b);
        ExtElement { repr: a.repr.add(&b.repr) }
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.check(a);
        self.check(b);
        ExtElement { repr: a.repr.sub(&b.repr) }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        self.check(a);
        ExtElement { repr: FpPoly::zero(self.base).sub(&a.repr) }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.check(a);
        self.check(b);
        ExtElement { repr: a.repr.mul(&b.repr).rem(&self.defining) }
    }

    pub fn pow(&self, a: &ExtElement, e: &BigUint) -> ExtElement {
        self.check(a);
        ExtElement {
            repr: poly_powmod(&a.repr, e, &self.defining)
                .expect("defining polynomial is nonzero"),
        }
    }

    pub fn pow_u64(&self, a: &ExtElement, e: u64) -> ExtElement {
        self.pow(a, &BigUint::from(e))
    }

    /// Frobenius x -> x^p applied `times` times.
    pub fn frobenius(&self, a: &ExtElement, times: usize) -> ExtElement {
        let mut acc = a.clone();
        for _ in 0..times {
            acc = self.pow_u64(&acc, self.base.get());
        }
        acc
    }

    /// Relative trace from F_{p^d} down to F_{p^to}: the sum of the
    /// conjugates e^{p^{to·j}}, j = 0..d/to - 1. `to` must divide d.
    /// For to = 1 the result is a prime-subfield constant.
    pub fn ext_trace(&self, e: &ExtElement, to: usize) -> Result<ExtElement, Error> {
        if to == 0 || self.degree % to != 0 {
            return Err(Error::BadTraceTarget { from: self.degree, to });
        }
        self.check(e);
        let mut acc = e.clone();
        let mut conj = e.clone();
        for _ in 1..(self.degree / to) {
            conj = self.frobenius(&conj, to);
            acc = self.add(&acc, &conj);
        }
        Ok(acc)
    }

    /// Absolute trace to F_p, returned as a residue.
    pub fn abs_trace(&self, e: &ExtElement) -> u64 {
        let t = self.ext_trace(e, 1).expect("1 divides every degree");
        t.as_base().expect("absolute trace lies in the prime field")
    }

    /// Index of an element in the mixed-radix enumeration by coefficients
    /// (coefficient of x^0 is the lowest digit). Inverse of
    /// [`ExtField::element_from_index`].
    pub fn index_of(&self, e: &ExtElement) -> u64 {
        self.check(e);
        let p = self.base.get();
        let mut idx: u64 = 0;
        for i in (0..self.degree).rev() {
            idx = idx * p + e.repr.coeff(i);
        }
        idx
    }

    pub fn element_from_index(&self, mut idx: u64) -> ExtElement {
        let p = self.base.get();
        let mut coeffs = vec![0u64; self.degree];
        for c in coeffs.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        ExtElement { repr: FpPoly::new(self.base, &coeffs) }
    }
}

/// The lexicographically first monic irreducible of the given degree:
/// candidates x^d + c_{d-1}x^{d-1} + ... + c_0 are scanned with
/// (c_0, ..., c_{d-1}) as little-endian base-p digits of a counter.
fn first_irreducible(base: PrimeModulus, degree: usize) -> FpPoly {
    if degree == 1 {
        return FpPoly::monomial(base, 1);
    }
    let p = base.get();
    let mut counter = vec![0u64; degree];
    loop {
        let mut coeffs = counter.clone();
        coeffs.push(1);
        let f = FpPoly::new(base, &coeffs);
        if f.coeff(0) != 0 && is_irreducible(&f).expect("monic, degree >= 1") {
            return f;
        }
        // Increment the little-endian base-p counter.
        let mut i = 0;
        loop {
            assert!(i < degree, "no irreducible of degree {degree} found");
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}
