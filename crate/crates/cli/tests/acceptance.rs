//! Acceptance suite: the ten end-to-end checks that gate a release.  Every
//! comparison is exact integer or rational arithmetic; a criterion either
//! passes outright or the build is wrong.  Each test prints one line,
//! `criterion N: PASS (...)`, on success.

use std::collections::{BTreeMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charbound_core::bounds::{compare, eval_bounds, BoundSource};
use charbound_core::census::{
    census_run, census_vs_construction, CensusConfig, CensusMode, CensusReport, EntryDomain,
};
use charbound_core::ffpoly::{
    corollary_check, count_constrained_irreducibles, count_irreducible,
    count_irreducible_by_enumeration, enumerate_constrained_irreducibles, pi_sandwich_holds,
    pi_star_gap_holds, FFPoly,
};
use charbound_core::hessfam::{
    bijection_check, charpoly_b, enumerate_b, enumerate_f, f_membership, FamilyParams,
};
use charbound_core::intpoly::{
    charpoly_hessenberg, charpoly_interp, irreducible_over_z, IntMatrix, IntPoly,
    IrreduciblePolicy,
};
use charbound_core::lifting::{
    certified_lower_bound, choose_prime, enumerate_lifts, sum_lifts, BoundMode, LiftParams,
};
use charbound_core::DEFAULT_BUDGET;

fn pow_big(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

fn finish(criterion: u32, what: &str, start: Instant, limit: Option<Duration>) {
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        assert!(
            elapsed < limit,
            "criterion {criterion} overran its time limit: {elapsed:?} >= {limit:?}"
        );
    }
    println!("criterion {criterion}: PASS ({what}, {elapsed:.2?})");
}

#[test]
fn criterion_01_exhaustive_floor_over_degree_range() {
    let t = Instant::now();
    let rows = corollary_check(4, 20, DEFAULT_BUDGET).expect("enumeration fits the budget");
    assert_eq!(rows.len(), 17);
    for r in &rows {
        assert!(r.pass, "floor fails at n = {}: pi* = {}", r.n, r.pi_star);
        // Re-checked without rationals: 7n * pi* >= 2^n.
        let lhs = BigInt::from(7 * u64::from(r.n)) * BigInt::from(r.pi_star);
        assert!(lhs >= pow_big(2, r.n), "independent comparison fails at n = {}", r.n);
    }
    finish(1, "2^n/(7n) floor for n in [4,20]", t, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_count_sandwich_and_enumeration_agreement() {
    let t = Instant::now();
    let cap = BigInt::from(2_000_000u64);
    for p in [2u64, 3, 5, 7] {
        for n in 1u32..=12 {
            assert!(pi_sandwich_holds(p, n), "sandwich fails at (p,n) = ({p},{n})");
            let pi = count_irreducible(p, n);
            // Independent form of the lower end: p^n - n*pi <= 2*p^{n/2},
            // squared when the exponent is half-integral.
            let deficit = pow_big(p, n) - BigInt::from(n) * &pi;
            assert!(BigInt::from(n) * &pi <= pow_big(p, n), "upper end fails at ({p},{n})");
            if deficit.is_positive() {
                assert!(
                    &deficit * &deficit <= BigInt::from(4u8) * pow_big(p, n),
                    "lower end fails at ({p},{n})"
                );
            }
            if pow_big(p, n) <= cap {
                let by_enum = count_irreducible_by_enumeration(p, n, DEFAULT_BUDGET)
                    .expect("enumeration fits the budget");
                assert_eq!(pi, BigInt::from(by_enum), "formula != enumeration at ({p},{n})");
            }
        }
    }
    finish(2, "count sandwich p<=7, n<=12, plus enumeration", t, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_03_constrained_count_gap() {
    let t = Instant::now();
    for p in [2u64, 3] {
        for n in 3u32..=10 {
            let star = count_constrained_irreducibles(p, n, DEFAULT_BUDGET).unwrap();
            assert!(pi_star_gap_holds(p, n, star), "gap fails at (p,n) = ({p},{n})");
            // Independent form, scaled by p^2 to stay integral:
            // |p^2 pi* - pi| <= p^{n+2-floor(n/2)/2} + p^{n+1-floor(n/3)}.
            let pi = count_irreducible(p, n);
            let d = (pow_big(p, 2) * BigInt::from(star) - &pi).abs();
            let r = pow_big(p, n + 1 - n / 3);
            if d > r {
                let excess = &d - &r;
                // excess <= p^{n+2-m/2} with m = floor(n/2), compared squared.
                assert!(
                    &excess * &excess <= pow_big(p, 2 * (n + 2) - n / 2),
                    "gap fails at (p,n) = ({p},{n})"
                );
            }
        }
    }
    finish(3, "constrained count gap p in {2,3}, n in [3,10]", t, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_04_family_bijection() {
    let t = Instant::now();
    for (k, h) in [(1u32, 2u64), (1, 5), (2, 2), (2, 3), (3, 2)] {
        let params = FamilyParams::new(k, h).unwrap();
        let rep = bijection_check(params, DEFAULT_BUDGET).unwrap();
        assert!(rep.pass(), "bijection fails at (k,H) = ({k},{h}): {:?}", rep.violations);
        assert_eq!(BigInt::from(rep.images), rep.family_size);
        assert_eq!(rep.images, rep.distinct);
    }
    finish(4, "matrix family bijection, five (k,H) pairs", t, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_05_certified_sum_meets_threshold() {
    let t = Instant::now();
    for n in [5u32, 7, 9] {
        for h in [3u64, 5, 7, 9] {
            let k = (n - 1) / 2;
            let lp = LiftParams::new(FamilyParams::new(k, h).unwrap(), 2).unwrap();
            let (_, sum) = sum_lifts(&lp, DEFAULT_BUDGET, 1).unwrap();
            let rhs = BigRational::new(BigInt::from(h - 1).pow(k * k), BigInt::from(2 * n));
            assert!(
                BigRational::from_integer(sum.clone()) >= rhs,
                "sum of lifts {sum} below (H-1)^(k^2)/(2n) at (n,H) = ({n},{h})"
            );
            if n == 5 && h == 3 {
                assert_eq!(rhs, BigRational::new(BigInt::from(8), BigInt::from(5)));
                assert!(sum >= BigInt::from(2), "worked point (5,3) must reach 2, got {sum}");
            }
        }
    }
    finish(5, "sum of lifts vs (H-1)^(k^2)/(2n), n in {5,7,9}, H in {3,5,7,9}", t,
        Some(Duration::from_secs(5)));
}

#[test]
fn criterion_06_lift_soundness() {
    let t = Instant::now();
    let policy = IrreduciblePolicy::default();
    for h in [3u64, 5] {
        let params = FamilyParams::new(2, h).unwrap();
        let lp = LiftParams::new(params, 2).unwrap();
        let image: HashSet<IntPoly> = enumerate_b(params).map(|b| charpoly_b(&b)).collect();
        let sources = enumerate_constrained_irreducibles(2, params.n(), DEFAULT_BUDGET).unwrap();
        let mut total = 0u64;
        for g in &sources {
            for f in enumerate_lifts(g, &lp, DEFAULT_BUDGET).unwrap() {
                total += 1;
                let poly = f.to_poly();
                assert!(f_membership(&poly, params).is_some(), "lift outside the family");
                assert_eq!(&FFPoly::from_intpoly(&poly, 2).unwrap(), g,
                    "lift does not reduce to its source");
                assert!(irreducible_over_z(&poly, &policy).unwrap().is_irreducible(),
                    "uncertified lift {poly} at H = {h}");
                assert!(image.contains(&poly), "lift is not a matrix charpoly at H = {h}");
            }
        }
        let mut direct = 0u64;
        for f in enumerate_f(params) {
            if irreducible_over_z(&f.to_poly(), &policy).unwrap().is_irreducible() {
                direct += 1;
            }
        }
        assert!(total <= direct, "lift total {total} exceeds direct count {direct} at H = {h}");
        let cross = census_vs_construction(params, 2, DEFAULT_BUDGET).unwrap();
        assert!(cross.pass(), "cross-check violations at H = {h}: {:?}", cross.violations);
        assert_eq!(cross.sum_lifts, BigInt::from(total));
        assert_eq!(cross.family_irreducible, direct);
    }
    finish(6, "lift soundness at (k,H,p) = (2,3,2) and (2,5,2)", t, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_07_census_ground_truth() {
    let t = Instant::now();
    let pairs = [(2u32, 1u64), (2, 2), (2, 3), (3, 1), (3, 2)];
    let domains = [EntryDomain::Nonneg, EntryDomain::Symmetric];
    let mut reports: BTreeMap<(u32, u64, &'static str), CensusReport> = BTreeMap::new();
    for &(n, h) in &pairs {
        for domain in domains {
            let rep = census_run(&CensusConfig {
                n,
                h,
                domain,
                mode: CensusMode::Exact,
                jobs: 1,
                budget: DEFAULT_BUDGET,
                want_spec: true,
            })
            .unwrap();
            assert_eq!(rep.inconclusive_count, 0, "undecided polynomials at ({n},{h})");
            let spec = rep.spec_count.unwrap();
            assert!(
                spec >= u64::from(n) * rep.distinct_irreducible_charpolys,
                "factor-degree total too small at ({n},{h},{})",
                domain.label()
            );
            if n == 2 {
                assert_eq!(
                    rep.matrices_with_irreducible_charpoly,
                    discriminant_count(h, domain),
                    "discriminant oracle disagrees at ({n},{h},{})",
                    domain.label()
                );
            }
            reports.insert((n, h, domain.label()), rep);
        }
    }
    // Padding A to diag(A,0) multiplies the charpoly by X, so every factor
    // seen at n = 2 must reappear at n = 3.
    for h in [1u64, 2] {
        for domain in domains {
            let small: HashSet<IntPoly> = reports[&(2, h, domain.label())]
                .spec_factors
                .clone()
                .unwrap()
                .into_iter()
                .collect();
            let large: HashSet<IntPoly> = reports[&(3, h, domain.label())]
                .spec_factors
                .clone()
                .unwrap()
                .into_iter()
                .collect();
            assert!(
                small.is_subset(&large),
                "factor set shrinks from n=2 to n=3 at H = {h}, {}",
                domain.label()
            );
        }
    }
    finish(7, "census oracle equivalence at five (n,H) pairs, both domains", t,
        Some(Duration::from_secs(120)));
}

/// Matrices [[a,b],[c,d]] with X^2 - (a+d)X + (ad - bc) irreducible: the
/// discriminant (a+d)^2 - 4(ad - bc) must not be a perfect square.
fn discriminant_count(h: u64, domain: EntryDomain) -> u64 {
    let h = h as i64;
    let range: Vec<i64> = match domain {
        EntryDomain::Nonneg => (0..=h).collect(),
        EntryDomain::Symmetric => (-h..=h).collect(),
    };
    let is_square = |v: i64| {
        if v < 0 {
            return false;
        }
        let mut r = 0i64;
        while r * r < v {
            r += 1;
        }
        r * r == v
    };
    let mut count = 0;
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    let disc = (a + d) * (a + d) - 4 * (a * d - b * c);
                    if !is_square(disc) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn criterion_08_charpoly_algorithm_equivalence() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6usize);
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n.min(i + 2) {
                entries[i * n + j] = rng.gen_range(-9..=9);
            }
        }
        let m = IntMatrix::from_i64s(n, &entries);
        let by_minors = charpoly_hessenberg(&m).unwrap();
        let by_interp = charpoly_interp(&m);
        assert_eq!(by_minors, by_interp, "algorithms disagree on {m}");
        for p in [2u64, 3, 5] {
            let reduced: Vec<i64> = entries.iter().map(|e| e.rem_euclid(p as i64)).collect();
            let mr = IntMatrix::from_i64s(n, &reduced);
            let of_reduced = FFPoly::from_intpoly(&charpoly_interp(&mr), p).unwrap();
            let reduced_of = FFPoly::from_intpoly(&by_interp, p).unwrap();
            assert_eq!(of_reduced, reduced_of, "mod-{p} reduction does not commute on {m}");
        }
    }
    finish(8, "two charpoly algorithms on 1000 random matrices, mod-p commuting", t,
        Some(Duration::from_secs(30)));
}

#[test]
fn criterion_09_reports_are_jobs_invariant() {
    let t = Instant::now();
    let bin = env!("CARGO_BIN_EXE_charbound");
    let configs: Vec<Vec<&str>> = vec![
        vec!["census", "--n", "3", "--h", "1", "--domain", "symmetric", "--spec"],
        vec![
            "census", "--n", "3", "--h", "2", "--domain", "symmetric", "--mode", "sample",
            "--samples", "400", "--seed", "5", "--out", "json",
        ],
        vec!["bound", "--n", "9", "--h", "9", "--p", "2"],
    ];
    for args in &configs {
        let mut outputs = Vec::new();
        for jobs in ["1", "4", "16"] {
            let o = Command::new(bin)
                .env_remove("CHARBOUND_BUDGET")
                .args(args)
                .args(["--jobs", jobs])
                .output()
                .expect("binary runs");
            assert!(o.status.success(), "{args:?} --jobs {jobs} failed");
            outputs.push(o.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "jobs 1 vs 4 differ for {args:?}");
        assert_eq!(outputs[1], outputs[2], "jobs 4 vs 16 differ for {args:?}");
    }
    finish(9, "byte-identical reports for --jobs 1/4/16", t, None);
}

#[test]
fn criterion_10_large_height_reports() {
    let t = Instant::now();
    for h in [100u64, 1000] {
        let n = 11u32;
        let p = choose_prime(n, h).unwrap();
        let cb =
            certified_lower_bound(n, h, p, BoundMode::ExactIfFeasible, DEFAULT_BUDGET, 1).unwrap();
        let bounds = eval_bounds(n, h);
        let expect = BigRational::new(BigInt::from(h).pow(25), BigInt::from(11u32));
        assert_eq!(bounds.thm11_main.value.as_ref().unwrap(), &expect,
            "thm11_main must equal H^25/11 exactly at H = {h}");
        assert!(bounds.thm11_main.flags.is_empty());
        assert!(cb.pi_star_exact.is_none(), "source enumeration must be infeasible at p = {p}");
        assert!(cb.bound_exact.is_none());
        // Exactness of the degraded-to-product report: re-derive the
        // certified value from its own published ingredients.
        let floor = cb.pi_star_lb.floor().to_integer();
        let sources = if floor.is_positive() { floor } else { BigInt::from(0) };
        let slots = cb.per_slot_min.iter().fold(BigInt::from(1), |acc, (_, c)| acc * c);
        assert_eq!(cb.bound_certified, sources * slots, "certified product wrong at H = {h}");
        assert_eq!(cb.spec_bound, BigInt::from(11u32) * &cb.bound_certified);
        let table = compare(BoundSource::Certified(&cb), &bounds).unwrap();
        for formula in ["alps_rhs", "thm11_main", "thm12_rhs"] {
            let row = table.rows.iter().find(|r| r.formula == formula).unwrap();
            assert_eq!(row.computed, cb.bound_certified);
            assert_eq!(row.pass, None, "{formula} must not gate at even H = {h}");
        }
        assert!(table.all_pass());
        assert!(!cb.notes.is_empty(), "fallback must be recorded in the notes");
    }
    // The same report through the binary, for presence in the shipped format.
    let o = Command::new(env!("CARGO_BIN_EXE_charbound"))
        .env_remove("CHARBOUND_BUDGET")
        .args(["bound", "--n", "11", "--h", "100", "--p", "auto"])
        .output()
        .expect("binary runs");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(v["thm11_main"].is_string());
    assert!(v["certified"].as_str().unwrap().parse::<BigInt>().is_ok());
    assert_eq!(v["pass"], serde_json::json!(true));
    finish(10, "certified bound and thm11_main reported at n = 11, H in {100, 1000}", t, None);
}
