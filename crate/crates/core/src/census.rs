//! Exhaustive and sampled censuses of small integer matrices, grouped by
//! characteristic polynomial and classified for irreducibility over ℤ, plus
//! the cross-check tying census counts to the constructive lift bounds.
//!
//! Exact sweeps enumerate matrices as base-(H+1) (or base-(2H+1)) digit
//! counters in row-major entry order, split into contiguous counter ranges
//! per worker.  Merges go through ordered maps and exact sums, so reports
//! are identical for any worker count.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ffpoly::{enumerate_constrained_irreducibles, FFPoly};
use crate::hessfam::{charpoly_b, enumerate_b, enumerate_f, family_size, FamilyParams, HessFamError};
use crate::intpoly::{
    charpoly_interp, factor_over_z_smalldeg, irreducible_over_z, IntMatrix, IntPoly,
    IrreduciblePolicy, IrreducibilityVerdict,
};
use crate::lifting::{count_lifts_exact, enumerate_lifts, LiftError, LiftParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("{needed} matrices exceed budget {budget}")]
    BudgetExceeded { needed: BigInt, budget: u64 },
    #[error("factor sets require exact mode and n <= 4")]
    SpecPolicy,
    #[error("matrix size must be at least 1")]
    BadSize,
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Family(#[from] HessFamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryDomain {
    /// Entries in [0, H].
    Nonneg,
    /// Entries in [−H, H].
    Symmetric,
}

impl EntryDomain {
    pub fn base(&self, h: u64) -> u64 {
        match self {
            EntryDomain::Nonneg => h + 1,
            EntryDomain::Symmetric => 2 * h + 1,
        }
    }

    fn entry(&self, digit: u64, h: u64) -> BigInt {
        match self {
            EntryDomain::Nonneg => BigInt::from(digit),
            EntryDomain::Symmetric => BigInt::from(digit as i64 - h as i64),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            EntryDomain::Nonneg => "nonneg",
            EntryDomain::Symmetric => "symmetric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Exact,
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    pub n: u32,
    pub h: u64,
    pub domain: EntryDomain,
    pub mode: CensusMode,
    pub jobs: usize,
    pub budget: u64,
    /// Also compute the set of distinct irreducible factors (exact mode,
    /// n ≤ 4 only).
    pub want_spec: bool,
}

/// Point estimates from a sampled census.  All statistics are exact
/// rationals; the variance estimate is reported squared to stay rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleStats {
    pub samples: u64,
    pub irreducible_samples: u64,
    pub est_fraction: BigRational,
    pub se_squared: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub h: u64,
    pub domain: EntryDomain,
    /// Size of the full matrix domain.
    pub total_matrices: BigInt,
    /// Matrices actually processed (= total for exact mode).
    pub scanned: u64,
    pub distinct_charpolys: u64,
    pub distinct_irreducible_charpolys: u64,
    pub matrices_with_irreducible_charpoly: u64,
    /// Distinct polynomials whose irreducibility was undecidable.
    pub inconclusive_count: u64,
    /// Σ of degrees over the set of distinct irreducible factors.
    pub spec_count: Option<u64>,
    pub spec_factors: Option<Vec<IntPoly>>,
    pub sample: Option<SampleStats>,
    pub mode_label: String,
}

impl CensusReport {
    pub const CSV_HEADER: &'static str =
        "n,h,domain,total,distinct,irreducible_distinct,irreducible_matrices,spec,inconclusive,mode";

    pub fn csv_row(&self) -> String {
        let spec = self.spec_count.map(|s| s.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.h,
            self.domain.label(),
            self.scanned,
            self.distinct_charpolys,
            self.distinct_irreducible_charpolys,
            self.matrices_with_irreducible_charpoly,
            spec,
            self.inconclusive_count,
            self.mode_label,
        )
    }
}

pub fn census_run(cfg: &CensusConfig) -> Result<CensusReport, CensusError> {
    if cfg.n == 0 {
        return Err(CensusError::BadSize);
    }
    if cfg.want_spec && (cfg.n > 4 || !matches!(cfg.mode, CensusMode::Exact)) {
        return Err(CensusError::SpecPolicy);
    }
    let n = cfg.n as usize;
    let base = cfg.domain.base(cfg.h);
    let cells = n * n;
    let total = BigInt::from(base).pow(cells as u32);
    let counts = match cfg.mode {
        CensusMode::Exact => {
            if total > BigInt::from(cfg.budget) {
                return Err(CensusError::BudgetExceeded { needed: total, budget: cfg.budget });
            }
            let end = total.to_u64().expect("within budget");
            scan_partitioned(cfg.jobs, end, |c| decode_matrix(c, n, base, cfg.domain, cfg.h))
        }
        CensusMode::Sample { count, seed } => {
            scan_partitioned(cfg.jobs, count, |i| sample_matrix(i, seed, n, base, cfg.domain, cfg.h))
        }
    };

    let scanned: u64 = counts.values().sum();
    let distinct_charpolys = counts.len() as u64;
    let ordered: Vec<(&IntPoly, u64)> = counts.iter().map(|(k, v)| (k, *v)).collect();
    let (irr_distinct, irr_matrices, inconclusive) = classify_partitioned(cfg.jobs, &ordered);

    let (spec_count, spec_factors) = if cfg.want_spec {
        let mut set: BTreeSet<IntPoly> = BTreeSet::new();
        for &(poly, _) in &ordered {
            for factor in factor_over_z_smalldeg(poly).expect("census polynomials are monic, degree <= 4") {
                set.insert(factor);
            }
        }
        let count = set.iter().map(|f| f.degree().unwrap_or(0) as u64).sum();
        (Some(count), Some(set.into_iter().collect()))
    } else {
        (None, None)
    };

    let (sample, mode_label) = match cfg.mode {
        CensusMode::Exact => (None, "exact".to_string()),
        CensusMode::Sample { count, seed } => {
            let m = BigInt::from(scanned);
            let est = BigRational::new(BigInt::from(irr_matrices), m.clone());
            let se_squared =
                &est * (BigRational::one() - &est) / BigRational::from_integer(m);
            (
                Some(SampleStats {
                    samples: scanned,
                    irreducible_samples: irr_matrices,
                    est_fraction: est,
                    se_squared,
                }),
                format!("sample(count={count},seed={seed}) ESTIMATE"),
            )
        }
    };

    Ok(CensusReport {
        n: cfg.n,
        h: cfg.h,
        domain: cfg.domain,
        total_matrices: total,
        scanned,
        distinct_charpolys,
        distinct_irreducible_charpolys: irr_distinct,
        matrices_with_irreducible_charpoly: irr_matrices,
        inconclusive_count: inconclusive,
        spec_count,
        spec_factors,
        sample,
        mode_label,
    })
}

fn decode_matrix(mut c: u64, n: usize, base: u64, domain: EntryDomain, h: u64) -> IntMatrix {
    let cells = n * n;
    let mut entries = vec![BigInt::zero(); cells];
    for idx in (0..cells).rev() {
        entries[idx] = domain.entry(c % base, h);
        c /= base;
    }
    IntMatrix::new(n, entries)
}

/// Sample i draws its entries from a stream keyed by (seed, i), so any
/// partition of the index range sees the same matrices.
fn sample_matrix(i: u64, seed: u64, n: usize, base: u64, domain: EntryDomain, h: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let entries = (0..n * n).map(|_| domain.entry(rng.gen_range(0..base), h)).collect();
    IntMatrix::new(n, entries)
}

fn scan_partitioned(
    jobs: usize,
    end: u64,
    make: impl Fn(u64) -> IntMatrix + Sync,
) -> BTreeMap<IntPoly, u64> {
    let jobs = jobs.max(1).min(end.max(1) as usize);
    let chunk = end.div_ceil(jobs as u64).max(1);
    let locals: Vec<BTreeMap<IntPoly, u64>> = std::thread::scope(|scope| {
        let make = &make;
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let lo = w as u64 * chunk;
                let hi = (lo + chunk).min(end);
                scope.spawn(move || {
                    let mut local: BTreeMap<IntPoly, u64> = BTreeMap::new();
                    for c in lo..hi {
                        *local.entry(charpoly_interp(&make(c))).or_insert(0) += 1;
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut merged = BTreeMap::new();
    for local in locals {
        for (poly, c) in local {
            *merged.entry(poly).or_insert(0) += c;
        }
    }
    merged
}

/// Classify distinct polynomials in contiguous chunks of the ordered list;
/// returns (distinct irreducible, matrices with irreducible charpoly,
/// distinct inconclusive).
fn classify_partitioned(jobs: usize, ordered: &[(&IntPoly, u64)]) -> (u64, u64, u64) {
    let policy = IrreduciblePolicy::default();
    let jobs = jobs.max(1).min(ordered.len().max(1));
    let chunk = ordered.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        let policy = &policy;
        let handles: Vec<_> = ordered
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut acc = (0u64, 0u64, 0u64);
                    for &(poly, count) in part {
                        // A failed factor search certifies nothing.
                        match irreducible_over_z(poly, policy)
                            .unwrap_or(IrreducibilityVerdict::Inconclusive)
                        {
                            IrreducibilityVerdict::Irreducible(_) => {
                                acc.0 += 1;
                                acc.1 += count;
                            }
                            IrreducibilityVerdict::Reducible(_) => {}
                            IrreducibilityVerdict::Inconclusive => acc.2 += 1,
                        }
                    }
                    acc
                })
            })
            .collect();
        let mut total = (0u64, 0u64, 0u64);
        for h in handles {
            let part = h.join().expect("classify worker panicked");
            total.0 += part.0;
            total.1 += part.1;
            total.2 += part.2;
        }
        total
    })
}

/// Census-side verification of the constructive bound: every lift is the
/// characteristic polynomial of a family matrix, reduces back to its
/// source, and the family's directly-tested irreducible count dominates
/// the summed lift counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub k: u32,
    pub h: u64,
    pub p: u64,
    pub sources: u64,
    pub sum_lifts: BigInt,
    pub family_irreducible: u64,
    pub family_inconclusive: u64,
    pub violations: Vec<String>,
}

impl CrossCheckReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
            && self.sum_lifts <= BigInt::from(self.family_irreducible)
    }
}

pub fn census_vs_construction(
    params: FamilyParams,
    p: u64,
    budget: u64,
) -> Result<CrossCheckReport, CensusError> {
    let size = family_size(params);
    if size > BigInt::from(budget) {
        return Err(CensusError::BudgetExceeded { needed: size, budget });
    }
    let lp = LiftParams::new(params, p)?;
    let image: HashSet<IntPoly> = enumerate_b(params).map(|b| charpoly_b(&b)).collect();

    let mut violations = Vec::new();
    let mut sum_lifts = BigInt::zero();
    let mut lift_polys: HashSet<IntPoly> = HashSet::new();
    let sources = enumerate_constrained_irreducibles(p, params.n(), budget).map_err(LiftError::FF)?;
    for g in &sources {
        let lifts = enumerate_lifts(g, &lp, budget)?;
        debug_assert_eq!(
            BigInt::from(lifts.len()),
            count_lifts_exact(g, &lp)?.total
        );
        sum_lifts += lifts.len();
        for fc in lifts {
            let poly = fc.to_poly();
            if violations.is_empty() && !image.contains(&poly) {
                violations.push(format!("lift {poly} is not a family charpoly"));
            }
            if violations.is_empty()
                && FFPoly::from_intpoly(&poly, p).map_err(LiftError::FF)? != *g
            {
                violations.push(format!("lift {poly} does not reduce to its source"));
            }
            if !lift_polys.insert(poly.clone()) && violations.is_empty() {
                violations.push(format!("lift {poly} produced twice"));
            }
        }
    }

    // Direct test over the whole family; witness primes extended with p so
    // every lift is decidable.
    let mut policy = IrreduciblePolicy::default();
    if !policy.primes.contains(&p) {
        policy.primes.push(p);
    }
    let mut family_irreducible = 0u64;
    let mut family_inconclusive = 0u64;
    for fc in enumerate_f(params) {
        match irreducible_over_z(&fc.to_poly(), &policy)
            .unwrap_or(IrreducibilityVerdict::Inconclusive)
        {
            IrreducibilityVerdict::Irreducible(_) => family_irreducible += 1,
            IrreducibilityVerdict::Reducible(_) => {}
            IrreducibilityVerdict::Inconclusive => family_inconclusive += 1,
        }
    }

    Ok(CrossCheckReport {
        k: params.k(),
        h: params.h(),
        p,
        sources: sources.len() as u64,
        sum_lifts,
        family_irreducible,
        family_inconclusive,
        violations,
    })
}
