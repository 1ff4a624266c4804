//! Closed-form lower bounds on counts of irreducible characteristic
//! polynomials, with applicability flags, and exact comparison tables
//! against census counts or certified constructive bounds.
//!
//! All three formulas share the exponent (n−1)²/4 = k², which is integral
//! exactly when n is odd; none are evaluated at even n.  Verdicts compare
//! an exact integer count against an exact rational, so a passing row is a
//! proof, not an approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::census::CensusReport;
use crate::lifting::CertifiedBound;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("source is for (n={src_n}, H={src_h}) but bounds are for (n={bnd_n}, H={bnd_h})")]
    ParamMismatch { src_n: u32, src_h: u64, bnd_n: u32, bnd_h: u64 },
}

/// A formula evaluation: the exact value when the exponent is integral,
/// plus one flag per violated applicability condition.  A formula with
/// flags is reported but never gates a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: Option<BigRational>,
    pub flags: Vec<String>,
}

impl FormulaValue {
    pub fn applicable(&self) -> bool {
        self.value.is_some() && self.flags.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub h: u64,
    /// (n/5ⁿ)·H^{(n−1)²/4}, for n = 2^j + 1; reference only.
    pub alps_rhs: FormulaValue,
    /// H^{(n−1)²/4}/n, for odd n ≥ 11; reference only.
    pub thm11_main: FormulaValue,
    /// (H−1)^{(n−1)²/4}/(2n), for odd n ≥ 5 and odd H ≥ 3; gates verdicts.
    pub thm12_rhs: FormulaValue,
}

fn exponent(n: u32) -> Option<u32> {
    if n % 2 == 0 {
        return None;
    }
    let k = (n - 1) / 2;
    let e = (n - 1) * (n - 1) / 4;
    assert_eq!(e, k * k, "exponent must match the family block size");
    Some(e)
}

pub fn eval_bounds(n: u32, h: u64) -> BoundReport {
    let e = exponent(n);
    let he = e.map(|e| BigInt::from(h).pow(e));

    let mut alps = FormulaValue { value: None, flags: Vec::new() };
    let mut thm11 = FormulaValue { value: None, flags: Vec::new() };
    let mut thm12 = FormulaValue { value: None, flags: Vec::new() };
    if n % 2 == 0 {
        let flag = "n must be odd".to_string();
        alps.flags.push(flag.clone());
        thm11.flags.push(flag.clone());
        thm12.flags.push(flag);
    } else {
        let he = he.expect("odd n has an integral exponent");
        let e = e.expect("odd n has an integral exponent");
        alps.value = Some(BigRational::new(
            BigInt::from(n) * &he,
            BigInt::from(5u32).pow(n),
        ));
        if n < 3 || !(n - 1).is_power_of_two() {
            alps.flags.push("n - 1 must be a power of 2".to_string());
        }
        thm11.value = Some(BigRational::new(he, BigInt::from(n)));
        if n < 11 {
            thm11.flags.push("requires n >= 11".to_string());
        }
        thm12.value = Some(BigRational::new(
            BigInt::from(h.saturating_sub(1)).pow(e),
            BigInt::from(2 * n),
        ));
        if n < 5 {
            thm12.flags.push("requires n >= 5".to_string());
        }
        if h % 2 == 0 {
            thm12.flags.push("requires odd H".to_string());
        }
        if h < 3 {
            thm12.flags.push("requires H >= 3".to_string());
        }
    }

    BoundReport { n, h, alps_rhs: alps, thm11_main: thm11, thm12_rhs: thm12 }
}

/// The count being compared: a census tally or a constructive bound.
#[derive(Debug, Clone, Copy)]
pub enum BoundSource<'a> {
    Census(&'a CensusReport),
    Certified(&'a CertifiedBound),
}

impl BoundSource<'_> {
    fn params(&self) -> (u32, u64) {
        match self {
            BoundSource::Census(c) => (c.n, c.h),
            BoundSource::Certified(c) => (c.n, c.h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub formula: String,
    pub computed: BigInt,
    pub bound: Option<BigRational>,
    pub flags: Vec<String>,
    /// None for reference-only or inapplicable rows; Some(ok) where the
    /// row gates the verdict.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictTable {
    pub n: u32,
    pub h: u64,
    pub rows: Vec<VerdictRow>,
}

impl VerdictTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }
}

fn row(formula: &str, computed: BigInt, fv: &FormulaValue, gates: bool) -> VerdictRow {
    let pass = if gates && fv.applicable() {
        let v = fv.value.as_ref().expect("applicable implies value");
        Some(BigRational::from_integer(computed.clone()) >= *v)
    } else {
        None
    };
    VerdictRow {
        formula: formula.to_string(),
        computed,
        bound: fv.value.clone(),
        flags: fv.flags.clone(),
        pass,
    }
}

/// Compare an exact count against the formula bounds.  Only the
/// constructive-bound formula and the census-internal degree-sum identity
/// gate the verdict; the other rows are reference points.
pub fn compare(source: BoundSource, bounds: &BoundReport) -> Result<VerdictTable, BoundsError> {
    let (src_n, src_h) = source.params();
    if src_n != bounds.n || src_h != bounds.h {
        return Err(BoundsError::ParamMismatch {
            src_n,
            src_h,
            bnd_n: bounds.n,
            bnd_h: bounds.h,
        });
    }
    let computed = match source {
        BoundSource::Census(c) => BigInt::from(c.distinct_irreducible_charpolys),
        BoundSource::Certified(c) => c.best(),
    };
    let mut rows = vec![
        row("alps_rhs", computed.clone(), &bounds.alps_rhs, false),
        row("thm11_main", computed.clone(), &bounds.thm11_main, false),
        row("thm12_rhs", computed.clone(), &bounds.thm12_rhs, true),
    ];
    if let BoundSource::Census(c) = source {
        if let Some(spec) = c.spec_count {
            let gated = c.inconclusive_count == 0;
            let need = BigInt::from(c.n) * BigInt::from(c.distinct_irreducible_charpolys);
            rows.push(VerdictRow {
                formula: "factor_degree_sum".to_string(),
                computed: BigInt::from(spec),
                bound: Some(BigRational::from_integer(need.clone())),
                flags: if gated {
                    Vec::new()
                } else {
                    vec!["inconclusive polynomials present".to_string()]
                },
                pass: if gated { Some(BigInt::from(spec) >= need) } else { None },
            });
        }
    }
    Ok(VerdictTable { n: bounds.n, h: bounds.h, rows })
}
