//! The lower Hessenberg matrix family and its companion family of
//! constrained monic polynomials, with an exhaustive bijection check.
//!
//! Matrices live on index range −k..k (offset applied at the storage
//! boundary): the superdiagonal carries k+1 ones then k−1 copies of H, the
//! bottom-left k×k block is free over {0, …, H−1}, everything else is zero.
//! The companion polynomials are X^{2k+1} − f_{2k−2}X^{2k−2} − … − f_0 with
//! nonnegative f_i under per-index range and divisibility constraints.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intpoly::{charpoly_hessenberg, IntMatrix, IntPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HessFamError {
    #[error("k must be at least 1")]
    KTooSmall,
    #[error("H must be at least 1")]
    HTooSmall,
    #[error("free block needs {expected} entries, each in [0, {h})")]
    BadFreeBlock { expected: usize, h: u64 },
    #[error("coefficients violate the family constraints")]
    NotInFamily,
    #[error("family size {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: BigInt, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    k: u32,
    h: u64,
}

impl FamilyParams {
    pub fn new(k: u32, h: u64) -> Result<Self, HessFamError> {
        if k < 1 {
            return Err(HessFamError::KTooSmall);
        }
        if h < 1 {
            return Err(HessFamError::HTooSmall);
        }
        Ok(FamilyParams { k, h })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn n(&self) -> u32 {
        2 * self.k + 1
    }

    /// At H = 1 every range collapses to {0}: the family is the single
    /// polynomial X^n.
    pub fn is_degenerate(&self) -> bool {
        self.h == 1
    }
}

/// An element of the matrix family, determined by its free k×k block.
/// Block rows follow matrix rows 1..k, block columns follow matrix columns
/// −k..−1, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatrix {
    params: FamilyParams,
    free: Vec<u64>,
}

impl BMatrix {
    pub fn new(params: FamilyParams, free: Vec<u64>) -> Result<Self, HessFamError> {
        let k = params.k as usize;
        if free.len() != k * k || free.iter().any(|&e| e >= params.h) {
            return Err(HessFamError::BadFreeBlock { expected: k * k, h: params.h });
        }
        Ok(BMatrix { params, free })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    pub fn free(&self) -> &[u64] {
        &self.free
    }
}

/// Materialize the full (2k+1)×(2k+1) matrix.  All entries lie in [0, H].
pub fn build_matrix(b: &BMatrix) -> IntMatrix {
    let k = b.params.k as i64;
    let n = b.params.n() as usize;
    let off = |idx: i64| (idx + k) as usize;
    let mut entries = vec![BigInt::zero(); n * n];
    for i in -k..=(k - 1) {
        let v = if i <= 0 { BigInt::one() } else { BigInt::from(b.params.h) };
        entries[off(i) * n + off(i + 1)] = v;
    }
    for i in 1..=k {
        for j in -k..=-1 {
            let f = b.free[((i - 1) * k + (j + k)) as usize];
            entries[off(i) * n + off(j)] = BigInt::from(f);
        }
    }
    IntMatrix::new(n, entries)
}

/// Characteristic polynomial of a family matrix; always monic of degree
/// 2k+1 with vanishing X^{2k} and X^{2k−1} coefficients.
pub fn charpoly_b(b: &BMatrix) -> IntPoly {
    let m = build_matrix(b);
    let cp = charpoly_hessenberg(&m).expect("family matrices are lower Hessenberg");
    let n = b.params.n() as usize;
    assert!(cp.coeff(n - 1).is_zero(), "trace must vanish");
    assert!(cp.coeff(n - 2).is_zero(), "second coefficient must vanish");
    cp
}

/// One constrained coefficient position: the coefficient at `coeff_index`
/// is multiplier × digit with digit ∈ [0, range).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub coeff_index: u32,
    pub multiplier: BigInt,
    pub range: BigInt,
}

/// Slot descriptors in descending coefficient order: unit-multiplier slots
/// at indices 2k−2 … k−1 (ranges H, H², …, H^k), then divisible slots at
/// k−2 … 0 (multiplier H^{j−1}, range H^{k−j+1}).  Together they cover the
/// indices 0 … 2k−2 exactly once.
pub fn slot_ranges(params: FamilyParams) -> Vec<Slot> {
    let k = params.k;
    let h = BigInt::from(params.h);
    let mut slots = Vec::with_capacity(2 * k as usize - 1);
    for j in 2..=k + 1 {
        slots.push(Slot {
            coeff_index: 2 * k - j,
            multiplier: BigInt::one(),
            range: h.pow(j - 1),
        });
    }
    for j in 2..=k {
        slots.push(Slot {
            coeff_index: k - j,
            multiplier: h.pow(j - 1),
            range: h.pow(k - j + 1),
        });
    }
    slots
}

/// Number of family members, H^{k²}; cross-checked against the product of
/// slot range sizes and the count of free blocks.
pub fn family_size(params: FamilyParams) -> BigInt {
    let by_slots: BigInt = slot_ranges(params).iter().map(|s| s.range.clone()).product();
    let direct = BigInt::from(params.h).pow(params.k * params.k);
    assert_eq!(by_slots, direct, "slot ranges must multiply to H^(k*k)");
    direct
}

/// The nonnegative coefficient tuple (f_0, …, f_{2k−2}) of a family member
/// X^{2k+1} − f_{2k−2}X^{2k−2} − … − f_0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FCoefficients {
    params: FamilyParams,
    f: Vec<BigInt>,
}

impl FCoefficients {
    pub fn new(params: FamilyParams, f: Vec<BigInt>) -> Result<Self, HessFamError> {
        if f.len() != 2 * params.k as usize - 1 {
            return Err(HessFamError::NotInFamily);
        }
        for slot in slot_ranges(params) {
            let v = &f[slot.coeff_index as usize];
            if v.is_negative() {
                return Err(HessFamError::NotInFamily);
            }
            let (digit, rem) = v.div_rem(&slot.multiplier);
            if !rem.is_zero() || digit >= slot.range {
                return Err(HessFamError::NotInFamily);
            }
        }
        Ok(FCoefficients { params, f })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    /// f_i, ascending by coefficient index.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.f
    }

    /// Slot digits (quotients by the slot multiplier), in slot order.
    pub fn digits(&self) -> Vec<BigInt> {
        slot_ranges(self.params)
            .iter()
            .map(|s| &self.f[s.coeff_index as usize] / &s.multiplier)
            .collect()
    }

    pub fn to_poly(&self) -> IntPoly {
        let n = self.params.n() as usize;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        for (i, fi) in self.f.iter().enumerate() {
            coeffs[i] = -fi;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

/// Decompose a polynomial into family coefficients, or report
/// non-membership as None.
pub fn f_membership(f: &IntPoly, params: FamilyParams) -> Option<FCoefficients> {
    let n = params.n() as usize;
    if f.degree() != Some(n) || !f.is_monic() {
        return None;
    }
    if !f.coeff(n - 1).is_zero() || !f.coeff(n - 2).is_zero() {
        return None;
    }
    let fv: Vec<BigInt> = (0..n - 2).map(|i| -f.coeff(i)).collect();
    FCoefficients::new(params, fv).ok()
}

impl FCoefficients {
    /// Digits already validated by the caller.
    pub(crate) fn from_valid(params: FamilyParams, f: Vec<BigInt>) -> Self {
        debug_assert!(FCoefficients::new(params, f.clone()).is_ok());
        FCoefficients { params, f }
    }
}

/// All family members in lexicographic order of their slot digit tuples
/// (slot order as in `slot_ranges`, last slot fastest).
pub fn enumerate_f(params: FamilyParams) -> FEnumerator {
    enumerate_f_from(params, &BigInt::zero())
}

/// Restart the stream at a lexicographic position; an index at or past
/// family_size yields an exhausted stream.
pub fn enumerate_f_from(params: FamilyParams, index: &BigInt) -> FEnumerator {
    let slots = slot_ranges(params);
    let digits = mixed_radix(index, &slots);
    FEnumerator { params, slots, digits }
}

fn mixed_radix(index: &BigInt, slots: &[Slot]) -> Option<Vec<BigInt>> {
    if index.is_negative() {
        return None;
    }
    let mut digits = vec![BigInt::zero(); slots.len()];
    let mut rest = index.clone();
    for (i, slot) in slots.iter().enumerate().rev() {
        let (q, r) = rest.div_rem(&slot.range);
        digits[i] = r;
        rest = q;
    }
    if rest.is_zero() {
        Some(digits)
    } else {
        None
    }
}

pub struct FEnumerator {
    params: FamilyParams,
    slots: Vec<Slot>,
    digits: Option<Vec<BigInt>>,
}

impl Iterator for FEnumerator {
    type Item = FCoefficients;

    fn next(&mut self) -> Option<FCoefficients> {
        let digits = self.digits.as_mut()?;
        let mut f = vec![BigInt::zero(); self.slots.len()];
        for (slot, d) in self.slots.iter().zip(digits.iter()) {
            f[slot.coeff_index as usize] = &slot.multiplier * d;
        }
        let item = FCoefficients { params: self.params, f };
        let mut pos = self.slots.len();
        loop {
            if pos == 0 {
                self.digits = None;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.slots[pos].range {
                break;
            }
            digits[pos].set_zero();
        }
        Some(item)
    }
}

/// All free blocks in lexicographic (row-major digit counter) order.
pub fn enumerate_b(params: FamilyParams) -> BEnumerator {
    BEnumerator { params, free: Some(vec![0; (params.k * params.k) as usize]) }
}

/// Restart the block stream at a base-H counter position.
pub fn enumerate_b_from(params: FamilyParams, index: &BigInt) -> BEnumerator {
    let cells = (params.k * params.k) as usize;
    if index.is_negative() || *index >= BigInt::from(params.h).pow(params.k * params.k) {
        return BEnumerator { params, free: None };
    }
    let mut free = vec![0u64; cells];
    let h = BigInt::from(params.h);
    let mut rest = index.clone();
    for d in free.iter_mut().rev() {
        let (q, r) = rest.div_rem(&h);
        *d = r.to_u64().expect("digit below H");
        rest = q;
    }
    BEnumerator { params, free: Some(free) }
}

pub struct BEnumerator {
    params: FamilyParams,
    free: Option<Vec<u64>>,
}

impl Iterator for BEnumerator {
    type Item = BMatrix;

    fn next(&mut self) -> Option<BMatrix> {
        let free = self.free.as_mut()?;
        let item = BMatrix { params: self.params, free: free.clone() };
        let mut pos = free.len();
        loop {
            if pos == 0 {
                self.free = None;
                break;
            }
            pos -= 1;
            free[pos] += 1;
            if free[pos] < self.params.h {
                break;
            }
            free[pos] = 0;
        }
        Some(item)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub k: u32,
    pub h: u64,
    pub family_size: BigInt,
    /// Matrices enumerated.
    pub images: u64,
    /// Distinct characteristic polynomials among the images.
    pub distinct: u64,
    /// First violation, if any (empty on pass).
    pub violations: Vec<String>,
    /// H = 1: the whole family collapses to X^n.
    pub degenerate: bool,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verify that the characteristic polynomial map lands in the
/// polynomial family, is injective, and (by cardinality) surjective.
pub fn bijection_check(params: FamilyParams, budget: u64) -> Result<BijectionReport, HessFamError> {
    let size = family_size(params);
    if size > BigInt::from(budget) {
        return Err(HessFamError::BudgetExceeded { needed: size, budget });
    }
    let mut seen: HashSet<IntPoly> = HashSet::new();
    let mut violations = Vec::new();
    let mut images = 0u64;
    for b in enumerate_b(params) {
        let cp = charpoly_b(&b);
        images += 1;
        if violations.is_empty() && f_membership(&cp, params).is_none() {
            violations.push(format!(
                "image {} of free block {:?} is outside the family",
                cp,
                b.free()
            ));
        }
        if !seen.insert(cp.clone()) && violations.is_empty() {
            violations.push(format!("duplicate image {cp}"));
        }
    }
    let distinct = seen.len() as u64;
    if violations.is_empty() && BigInt::from(distinct) != size {
        violations.push(format!("{distinct} distinct images, expected {size}"));
    }
    Ok(BijectionReport {
        k: params.k,
        h: params.h,
        family_size: size,
        images,
        distinct,
        violations,
        degenerate: params.is_degenerate(),
    })
}
