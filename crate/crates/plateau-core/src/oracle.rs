//! Independent ground truth for the census results.
//!
//! Three mechanisms, deliberately disjoint from the census formulas:
//!
//! * the gcd criterion: a member's plateau parameter s is the degree of
//!   gcd(x^n - 1, A(x)) for its associate polynomial A, applied here by
//!   exhaustive enumeration of a family ([`enumerate_distribution`]);
//! * direct Walsh spectra: evaluate the function over F_{p^n} and
//!   transform: an integer fast Walsh-Hadamard transform for p = 2,
//!   exact arithmetic in Z\[zeta_p\] for odd p ([`walsh_spectrum`]);
//! * direct codeword enumeration for the binary Reed-Muller subcodes
//!   ([`EvalContext::rm_weight_histogram`]).
//!
//! Everything is exact; no floating point is involved anywhere.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::census::{FamilyId, FamilyTag, PlateauDistribution};
use crate::fieldpoly::{poly_gcd, ExtElement, ExtField, FpPoly};
use crate::Error;

/// Default cap on the number of evaluations [`enumerate_distribution`]
/// will perform (2^24).
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

/// Largest n for which p = 2 Walsh spectra are computed.
pub const P2_WALSH_LIMIT: u64 = 16;

/// Cap on p^{2n} for odd-characteristic Walsh spectra (the transform
/// touches p^n field points for each of p^n linear forms).
pub const ODD_WALSH_BUDGET: u64 = 1 << 20;

/// Largest n for which direct Reed-Muller codeword enumeration runs.
pub const RM_ENUM_LIMIT: u64 = 10;

/// One member of a family: its coefficient tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticFunction {
    family: FamilyId,
    coeffs: Vec<u64>,
}

impl QuadraticFunction {
    /// Wraps a coefficient tuple, reducing entries mod p. The length
    /// must match the family's tuple length exactly.
    pub fn new(family: FamilyId, coeffs: &[u64]) -> Result<Self, Error> {
        let expected = family.tuple_len();
        if coeffs.len() != expected {
            return Err(Error::TupleLength { expected, got: coeffs.len() });
        }
        let p = family.p().get();
        Ok(QuadraticFunction {
            family,
            coeffs: coeffs.iter().map(|&c| c % p).collect(),
        })
    }

    /// The member at a given position in the canonical order: index
    /// digits little-endian base p are the coefficients.
    pub fn from_index(family: FamilyId, mut index: u64) -> Self {
        let p = family.p().get();
        let coeffs = (0..family.tuple_len())
            .map(|_| {
                let d = index % p;
                index /= p;
                d
            })
            .collect();
        assert_eq!(index, 0, "index exceeds the family size");
        QuadraticFunction { family, coeffs }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The associate polynomial A(x) of a member: the symmetrized
/// coefficient pattern whose gcd with x^n - 1 determines s.
/// C1 contributes a_i (x^i + x^{n-i}) for 1 <= i <= floor((n-1)/2);
/// C2 adds the middle term a_{n/2} x^{n/2}; D runs i from 0 to
/// floor(n/2), the even-n middle term doubling to 2 a_{n/2} x^{n/2}.
pub fn associate_poly(q: &QuadraticFunction) -> FpPoly {
    let family = q.family();
    let p = family.p();
    let n = family.n() as usize;
    let mut c = vec![0u64; n + 1];
    match family.tag() {
        FamilyTag::C1 => {
            for (k, &a) in q.coeffs().iter().enumerate() {
                let i = k + 1;
                c[i] = p.add(c[i], a);
                c[n - i] = p.add(c[n - i], a);
            }
        }
        FamilyTag::C2 => {
            let half = n / 2;
            for (k, &a) in q.coeffs().iter().enumerate() {
                let i = k + 1;
                if i < half {
                    c[i] = p.add(c[i], a);
                    c[n - i] = p.add(c[n - i], a);
                } else {
                    c[half] = p.add(c[half], a);
                }
            }
        }
        FamilyTag::D => {
            for (i, &a) in q.coeffs().iter().enumerate() {
                c[i] = p.add(c[i], a);
                c[n - i] = p.add(c[n - i], a);
            }
        }
    }
    FpPoly::new(p, &c)
}

/// The plateau parameter by the gcd criterion:
/// s = deg gcd(x^n - 1, A(x)). The zero tuple has A = 0, whose gcd with
/// x^n - 1 is x^n - 1 itself, so the zero function comes out n-plateaued
/// with no special casing.
pub fn plateau_s(q: &QuadraticFunction) -> u64 {
    let family = q.family();
    let xn1 = FpPoly::x_pow_minus(family.p(), family.n() as usize, 1);
    let a = associate_poly(q);
    let g = poly_gcd(&xn1, &a).expect("x^n - 1 is nonzero");
    g.degree().expect("gcd with nonzero polynomial is nonzero") as u64
}

/// Histogram of s over the members with indices in [start, end):
/// the parallelization unit. Merging range histograms by addition
/// reproduces [`enumerate_distribution`] exactly regardless of the
/// partition.
pub fn enumerate_range(family: FamilyId, start: u64, end: u64) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for index in start..end {
        let s = plateau_s(&QuadraticFunction::from_index(family, index));
        *hist.entry(s).or_insert(0u64) += 1;
    }
    hist
}

/// Number of members of the family, saturating at u64::MAX.
pub fn family_evaluations(family: FamilyId) -> u64 {
    let p = family.p().get();
    let mut required = 1u64;
    for _ in 0..family.tuple_len() {
        required = match required.checked_mul(p) {
            Some(r) => r,
            None => return u64::MAX,
        };
    }
    required
}

/// Exhaustive distribution of s over the family via the gcd criterion,
/// refusing families larger than the budget.
pub fn enumerate_distribution_with_budget(
    family: FamilyId,
    budget: u64,
) -> Result<PlateauDistribution, Error> {
    let required = family_evaluations(family);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let hist = enumerate_range(family, 0, required);
    let counts = hist
        .into_iter()
        .map(|(s, c)| (s, BigInt::from(c)))
        .collect();
    Ok(PlateauDistribution::from_counts(family, counts))
}

/// [`enumerate_distribution_with_budget`] at the default budget of 2^24
/// evaluations.
pub fn enumerate_distribution(family: FamilyId) -> Result<PlateauDistribution, Error> {
    enumerate_distribution_with_budget(family, DEFAULT_ENUM_BUDGET)
}

/// An exact cyclotomic integer: an element of Z\[zeta_p\] for odd prime p,
/// stored as p - 1 coefficients over the power basis {1, zeta, ...,
/// zeta^{p-2}}, reduced by 1 + zeta + ... + zeta^{p-1} = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicInt {
    p: u64,
    comps: Vec<BigInt>,
}

/// Reduces a raw coefficient vector over powers zeta^0..zeta^k (k up to
/// 2p - 4) to the power basis, folding each zeta^k with k >= p - 1 via
/// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
fn reduce_cyclotomic(p: u64, mut raw: Vec<BigInt>) -> Vec<BigInt> {
    let basis = (p - 1) as usize;
    let mut k = raw.len();
    while k > basis {
        k -= 1;
        let c = core::mem::replace(&mut raw[k], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for j in 0..basis {
            raw[k - basis + j] -= &c;
        }
    }
    raw.truncate(basis);
    raw.resize(basis, BigInt::zero());
    raw
}

impl CyclotomicInt {
    pub fn new(p: u64, comps: Vec<BigInt>) -> Self {
        assert!(p % 2 == 1 && p > 2, "CyclotomicInt requires an odd prime");
        assert_eq!(comps.len(), (p - 1) as usize, "component count must be p - 1");
        CyclotomicInt { p, comps }
    }

    /// Sum of counts\[i\]·zeta^i for i in 0..p.
    pub fn from_counts(p: u64, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let raw = counts.iter().map(|&c| BigInt::from(c)).collect();
        CyclotomicInt::new(p, reduce_cyclotomic(p, raw))
    }

    pub fn comps(&self) -> &[BigInt] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, other.p);
        let basis = (self.p - 1) as usize;
        let mut raw = vec![BigInt::zero(); 2 * basis - 1];
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.comps.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        CyclotomicInt::new(self.p, reduce_cyclotomic(self.p, raw))
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> CyclotomicInt {
        let p = self.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, a) in self.comps.iter().enumerate() {
            let e = if i == 0 { 0 } else { p - i };
            raw[e] += a;
        }
        CyclotomicInt::new(self.p, reduce_cyclotomic(self.p, raw))
    }

    /// The value as a rational integer, if all higher components vanish.
    pub fn rational(&self) -> Option<BigInt> {
        if self.comps[1..].iter().all(|c| c.is_zero()) {
            Some(self.comps[0].clone())
        } else {
            None
        }
    }
}

/// Outcome of one spectrum computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WalshReport {
    /// s recovered from the largest Walsh magnitude p^{(n+s)/2}.
    pub s_from_spectrum: u64,
    /// Number of b with nonzero Walsh value (p^{n-s} for a plateaued
    /// function).
    pub support_size: u64,
    /// Whether every magnitude was 0 or the maximum (the plateau
    /// property itself).
    pub magnitudes_ok: bool,
    /// Whether the squared magnitudes summed to exactly p^{2n}.
    pub parseval_ok: bool,
}

/// Precomputed evaluation tables for one family instance: every element
/// of F_{p^n} indexed by its coefficient vector, the Frobenius power
/// permutations, the absolute trace, and per-slot tables of the trace
/// terms Tr(x^{p^i + 1}) (relative trace for the C2 middle slot), so a
/// member's value vector is a small linear combination of table rows.
pub struct EvalContext {
    family: FamilyId,
    field: ExtField,
    nel: usize,
    tr: Vec<u8>,
    term: Vec<Vec<u8>>,
    /// lin[b][x] = Tr(b·x), built only for odd p (p = 2 uses the fast
    /// transform instead).
    lin: Vec<Vec<u8>>,
}

/// Digitwise base-p addition of element indices, which matches field
/// addition because indices are coefficient vectors in mixed radix.
fn idx_add(p: u64, mut a: u64, mut b: u64) -> u64 {
    let mut out = 0u64;
    let mut place = 1u64;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

impl EvalContext {
    pub fn new(family: FamilyId) -> Result<Self, Error> {
        let p = family.p().get();
        let n = family.n() as usize;
        if p == 2 {
            if family.n() > P2_WALSH_LIMIT {
                return Err(Error::Unsupported(
                    "direct evaluation is limited to n <= 16 in characteristic 2",
                ));
            }
        } else {
            let mut required = 1u64;
            for _ in 0..2 * n {
                required = required.saturating_mul(p);
            }
            if required > ODD_WALSH_BUDGET {
                return Err(Error::BudgetExceeded {
                    required,
                    budget: ODD_WALSH_BUDGET,
                });
            }
        }

        let field = ExtField::new(family.p(), n);
        let nel = field.order().expect("field order fits in u64") as usize;
        let elements: Vec<ExtElement> =
            (0..nel).map(|i| field.element_from_index(i as u64)).collect();

        // One Frobenius application as an index permutation; powers by
        // composition.
        let frob1: Vec<u32> = elements
            .iter()
            .map(|e| field.index_of(&field.pow_u64(e, p)) as u32)
            .collect();
        let max_slot = n / 2;
        let mut frob_pow: Vec<Vec<u32>> = Vec::with_capacity(max_slot + 1);
        frob_pow.push((0..nel as u32).collect());
        for j in 1..=max_slot {
            let prev = &frob_pow[j - 1];
            frob_pow.push((0..nel).map(|x| frob1[prev[x] as usize]).collect());
        }

        // Absolute trace via linearity: the trace of each power basis
        // monomial, then digit sums.
        let mut tr_basis = vec![0u64; n];
        for (j, t) in tr_basis.iter_mut().enumerate() {
            let mut idx = 1u64;
            for _ in 0..j {
                idx *= p;
            }
            *t = field.abs_trace(&field.element_from_index(idx));
        }
        let tr: Vec<u8> = (0..nel as u64)
            .map(|mut idx| {
                let mut acc = 0u64;
                for &tb in &tr_basis {
                    acc += (idx % p) * tb;
                    idx /= p;
                }
                (acc % p) as u8
            })
            .collect();

        // Per-slot term tables.
        let slots: Vec<usize> = match family.tag() {
            FamilyTag::C1 => (1..=((n - 1) / 2)).collect(),
            FamilyTag::C2 => (1..=n / 2).collect(),
            FamilyTag::D => (0..=n / 2).collect(),
        };
        let mut term = Vec::with_capacity(slots.len());
        for (pos, &i) in slots.iter().enumerate() {
            let c2_middle = family.tag() == FamilyTag::C2 && pos == slots.len() - 1;
            let mut row = vec![0u8; nel];
            for x in 0..nel {
                let y = field.mul(&elements[x], &elements[frob_pow[i][x] as usize]);
                let y_idx = field.index_of(&y);
                row[x] = if c2_middle {
                    // y lies in the half-degree subfield; take its
                    // absolute trace there by summing the first n/2
                    // Frobenius conjugates.
                    debug_assert_eq!(frob_pow[n / 2][y_idx as usize] as u64, y_idx);
                    let mut acc = y_idx;
                    let mut cur = y_idx;
                    for _ in 1..n / 2 {
                        cur = frob1[cur as usize] as u64;
                        acc = idx_add(p, acc, cur);
                    }
                    assert!(acc < p, "relative trace must land in the prime field");
                    acc as u8
                } else {
                    tr[y_idx as usize]
                };
            }
            term.push(row);
        }

        // Linear-form tables for odd p: Tr(b·x) is linear in the digits
        // of x, so expand from the traces of b times the basis monomials.
        let lin = if p == 2 {
            Vec::new()
        } else {
            let mut lin = Vec::with_capacity(nel);
            for b in 0..nel {
                let mut tvec = vec![0u64; n];
                let mut place = 1u64;
                for t in tvec.iter_mut() {
                    let prod = field.mul(&elements[b], &elements[place as usize]);
                    *t = tr[field.index_of(&prod) as usize] as u64;
                    place *= p;
                }
                let row: Vec<u8> = (0..nel as u64)
                    .map(|mut idx| {
                        let mut acc = 0u64;
                        for &t in &tvec {
                            acc += (idx % p) * t;
                            idx /= p;
                        }
                        (acc % p) as u8
                    })
                    .collect();
                lin.push(row);
            }
            lin
        };

        Ok(EvalContext { family, field, nel, tr, term, lin })
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// The member's value at every point of F_{p^n}, indexed like the
    /// context tables.
    pub fn values(&self, q: &QuadraticFunction) -> Vec<u8> {
        assert_eq!(q.family(), self.family, "context/function family mismatch");
        let p = self.family.p().get();
        let mut vals = vec![0u64; self.nel];
        for (a, row) in q.coeffs().iter().zip(&self.term) {
            if *a == 0 {
                continue;
            }
            for (v, &t) in vals.iter_mut().zip(row) {
                *v += a * t as u64;
            }
        }
        vals.into_iter().map(|v| (v % p) as u8).collect()
    }

    /// Exact Walsh spectrum summary for one member.
    pub fn walsh_spectrum(&self, q: &QuadraticFunction) -> WalshReport {
        let vals = self.values(q);
        if self.family.p().get() == 2 {
            self.walsh_p2(&vals)
        } else {
            self.walsh_odd(&vals)
        }
    }

    fn walsh_p2(&self, vals: &[u8]) -> WalshReport {
        let n = self.family.n() as u32;
        let mut w: Vec<i64> = vals.iter().map(|&v| 1 - 2 * v as i64).collect();
        // In-place fast Walsh-Hadamard transform.
        let mut len = 1;
        while len < self.nel {
            let mut i = 0;
            while i < self.nel {
                for j in i..i + len {
                    let a = w[j];
                    let b = w[j + len];
                    w[j] = a + b;
                    w[j + len] = a - b;
                }
                i += 2 * len;
            }
            len *= 2;
        }
        let max = w.iter().map(|v| v.unsigned_abs()).max().unwrap();
        let magnitudes_ok = w.iter().all(|v| {
            let a = v.unsigned_abs();
            a == 0 || a == max
        });
        let parseval: i128 = w.iter().map(|&v| (v as i128) * (v as i128)).sum();
        let parseval_ok = parseval == 1i128 << (2 * n);
        let support_size = w.iter().filter(|v| **v != 0).count() as u64;
        assert!(max.is_power_of_two(), "plateau magnitude must be a power of 2");
        let half = max.trailing_zeros();
        assert!(2 * half >= n, "Walsh maximum below the bent bound");
        WalshReport {
            s_from_spectrum: (2 * half - n) as u64,
            support_size,
            magnitudes_ok,
            parseval_ok,
        }
    }

    fn walsh_odd(&self, vals: &[u8]) -> WalshReport {
        let p = self.family.p().get();
        let n = self.family.n() as u32;
        let mut sq_list: Vec<BigInt> = Vec::with_capacity(self.nel);
        let mut counts = vec![0u64; p as usize];
        for b in 0..self.nel {
            counts.iter_mut().for_each(|c| *c = 0);
            let lin_row = &self.lin[b];
            for (&v, &l) in vals.iter().zip(lin_row) {
                let d = (v as u64 + p - l as u64) % p;
                counts[d as usize] += 1;
            }
            let w = CyclotomicInt::from_counts(p, &counts);
            let sq = w.mul(&w.conj());
            let r = sq
                .rational()
                .expect("squared Walsh modulus must be a rational integer");
            sq_list.push(r);
        }
        let max = sq_list.iter().max().unwrap().clone();
        let magnitudes_ok = sq_list.iter().all(|v| v.is_zero() || *v == max);
        let total: BigInt = sq_list.iter().sum();
        let parseval_ok = total == BigInt::from(p).pow(2 * n);
        let support_size = sq_list.iter().filter(|v| !v.is_zero()).count() as u64;
        // max = p^{n+s}: recover the exponent exactly.
        let mut e = 0u32;
        let mut m = max;
        let p_big = BigInt::from(p);
        while m > BigInt::one() {
            let r = &m % &p_big;
            assert!(r.is_zero(), "plateau magnitude must be a power of p");
            m = &m / &p_big;
            e += 1;
        }
        assert!(e >= n, "Walsh maximum below the bent bound");
        WalshReport {
            s_from_spectrum: (e - n) as u64,
            support_size,
            magnitudes_ok,
            parseval_ok,
        }
    }

    /// Weight of the codeword given by f(x) = vals (p = 2), i.e. the
    /// number of ones. Used with the affine completions below.
    fn wt(vals: &[u8]) -> u64 {
        vals.iter().map(|&v| v as u64).sum()
    }

    /// Full weight histogram of the Reed-Muller subcode spanned by the
    /// family and all affine functions: every codeword Q + Tr(bx) + eps
    /// is evaluated directly. Limited to p = 2 and n <= 10.
    pub fn rm_weight_histogram(&self) -> Result<BTreeMap<u64, BigInt>, Error> {
        let family = self.family;
        if family.p().get() != 2 {
            return Err(Error::Unsupported(
                "Reed-Muller enumeration covers the binary families",
            ));
        }
        if family.n() > RM_ENUM_LIMIT {
            return Err(Error::Unsupported(
                "direct codeword enumeration is limited to n <= 10",
            ));
        }
        let n = family.n() as usize;
        // Bit tables of all linear forms Tr(b·x), expanded by prefix
        // doubling from the traces of b times the basis monomials.
        let mut lin: Vec<Vec<u8>> = Vec::with_capacity(self.nel);
        for b in 0..self.nel {
            let eb = self.field.element_from_index(b as u64);
            let mut row = vec![0u8; self.nel];
            for j in 0..n {
                let basis = self.field.element_from_index(1 << j);
                let t = self.tr[self.field.index_of(&self.field.mul(&eb, &basis)) as usize];
                let block = 1usize << j;
                for x in 0..block {
                    row[block + x] = row[x] ^ t;
                }
            }
            lin.push(row);
        }

        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        let members = family_evaluations(family);
        let mut coset = vec![0u8; self.nel];
        for index in 0..members {
            let q = QuadraticFunction::from_index(family, index);
            let vals = self.values(&q);
            for row in &lin {
                for ((c, &v), &l) in coset.iter_mut().zip(&vals).zip(row) {
                    *c = v ^ l;
                }
                let w = Self::wt(&coset);
                *hist.entry(w).or_insert(0) += 1;
                *hist.entry(self.nel as u64 - w).or_insert(0) += 1;
            }
        }
        Ok(hist.into_iter().map(|(w, c)| (w, BigInt::from(c))).collect())
    }
}

/// One-shot convenience for [`EvalContext::walsh_spectrum`].
pub fn walsh_spectrum(q: &QuadraticFunction) -> Result<WalshReport, Error> {
    Ok(EvalContext::new(q.family())?.walsh_spectrum(q))
}
