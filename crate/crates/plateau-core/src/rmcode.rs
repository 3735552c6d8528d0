//! Weight enumerators of the binary Reed-Muller subcodes spanned by a
//! family together with all affine functions.
//!
//! For p = 2 the codeword attached to (Q, b, eps) is the evaluation of
//! Q(x) + Tr(bx) + eps over F_{2^n}. An s-plateaued Q contributes
//! 2^{n-s} codewords of each of the weights 2^{n-1} ± 2^{(n+s)/2 - 1}
//! and fills the rest of its coset with weight exactly 2^{n-1}. Summing
//! over the family turns the generating polynomial G(z) into the weight
//! enumerator via the substitution z -> 2z.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::census::{gen_poly, FamilyId, FamilyTag};
use crate::Error;

/// One row of a weight table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightRow {
    pub weight: u64,
    pub multiplicity: BigInt,
}

/// Weight table of one subcode, rows sorted by weight, zero
/// multiplicities omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightEnumerator {
    pub n: u64,
    pub rows: Vec<WeightRow>,
}

impl WeightEnumerator {
    pub fn total(&self) -> BigInt {
        self.rows.iter().map(|r| &r.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, weight: u64) -> BigInt {
        self.rows
            .iter()
            .find(|r| r.weight == weight)
            .map(|r| r.multiplicity.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Smallest weight of a nonzero codeword.
    pub fn min_positive_weight(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| r.weight)
            .filter(|&w| w > 0)
            .min()
            .expect("a nonempty code has a nonzero weight")
    }
}

/// Derives the weight table from the generating polynomial: with
/// A_k the coefficient of z^k in G(2z), each k > 0 contributes the two
/// rows (2^{n-1} ± 2^{n-1-k/2}, A_k), k = 0 contributes weights 0 and
/// 2^n, and the middle weight 2^{n-1} holds the remaining
/// 2^{n+1}·G(1) - 2·G(2) codewords.
pub fn weight_enumerator(family: FamilyId) -> Result<WeightEnumerator, Error> {
    if family.tag() == FamilyTag::D {
        return Err(Error::Unsupported(
            "weight enumerators cover the binary families",
        ));
    }
    let n = family.n();
    if n > 62 {
        return Err(Error::Unsupported("weights exceed 64 bits beyond n = 62"));
    }
    let g = gen_poly(family);
    let a = g.scale_arg(2);
    let half = 1u64 << (n - 1);
    let mut rows: Vec<WeightRow> = Vec::new();
    for (k, mult) in a.coeffs().iter().enumerate() {
        if mult.is_zero() {
            continue;
        }
        assert!(k % 2 == 0, "occupied degrees have the parity of n");
        let offset = 1u64 << (n - 1 - (k as u64) / 2);
        rows.push(WeightRow { weight: half - offset, multiplicity: mult.clone() });
        rows.push(WeightRow { weight: half + offset, multiplicity: mult.clone() });
    }
    let middle = BigInt::from(2).pow(n as u32 + 1) * g.eval_u64(1)
        - BigInt::from(2) * g.eval_u64(2);
    assert!(!middle.is_negative(), "middle multiplicity cannot be negative");
    if !middle.is_zero() {
        rows.push(WeightRow { weight: half, multiplicity: middle });
    }
    rows.sort_by_key(|r| r.weight);
    let we = WeightEnumerator { n, rows };

    // Conservation and symmetry: total count and zero mean offset.
    let expected_total = BigInt::from(2).pow(n as u32 + 1) * family.size();
    assert_eq!(we.total(), expected_total, "total codeword count mismatch");
    let mean_offset: BigInt = we
        .rows
        .iter()
        .map(|r| &r.multiplicity * (BigInt::from(r.weight) - BigInt::from(half)))
        .sum();
    assert!(mean_offset.is_zero(), "weights must be symmetric about 2^(n-1)");
    Ok(we)
}

/// Parameters [length, dimension, minimum distance] of a code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CodeParams {
    pub length: u64,
    pub dimension: u64,
    pub min_distance: u64,
}

/// Parameters of the C1 subcode for odd n:
/// [2^n, (3n+1)/2, 2^{n-1} - 2^{n-1-r/2}] with r the smallest degree
/// among the prime self-reciprocal factors of x^n - 1 besides x - 1.
/// The distance is read off the weight enumerator, which reproduces the
/// closed form whenever such factors exist (n >= 3; at n = 1 the code
/// is the full [2, 2, 1] affine code).
pub fn code_params(family: FamilyId) -> Result<CodeParams, Error> {
    if family.tag() != FamilyTag::C1 || family.n() % 2 == 0 {
        return Err(Error::Unsupported(
            "code parameters are stated for C1 with odd n",
        ));
    }
    let n = family.n();
    let we = weight_enumerator(family)?;
    let min_distance = we.min_positive_weight();
    let dimension = (3 * n + 1) / 2;
    if let Some(r) = family
        .factorization()
        .sr_primes()
        .iter()
        .map(|r| r.degree as u64)
        .min()
    {
        debug_assert_eq!(
            min_distance,
            (1u64 << (n - 1)) - (1u64 << (n - 1 - r / 2)),
            "enumerator distance must match the closed form"
        );
    }
    Ok(CodeParams { length: 1u64 << n, dimension, min_distance })
}
