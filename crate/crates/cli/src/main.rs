//! Command line front end for the census, construction, and bound machinery.
//!
//! Every subcommand prints one self-contained report to standard output (or
//! `--out-file`), as CSV for tables and JSON for structured verdicts; the
//! resolved run configuration is embedded in each report.  Exit code 0 means
//! every gated check passed, 1 means at least one verdict failed, 2 means the
//! invocation itself was rejected.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use charbound_core::bounds::{
    compare, eval_bounds, BoundReport, BoundSource, FormulaValue, VerdictTable,
};
use charbound_core::census::{
    census_run, census_vs_construction, CensusConfig, CensusMode, CensusReport, EntryDomain,
};
use charbound_core::ffpoly::{corollary_check, enumerate_constrained_irreducibles, IrrCountReport};
use charbound_core::hessfam::{bijection_check, FamilyParams};
use charbound_core::lifting::{
    certified_lower_bound, choose_prime, enumerate_lifts, BoundMode, CertifiedBound, LiftParams,
};
use charbound_core::primes::primes_from;
use charbound_core::{rat_str, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "charbound", version, about = "Exact censuses and certified \
irreducibility bounds for bounded-height characteristic polynomials")]
struct Cli {
    /// Report format; each subcommand has a natural default.
    #[arg(long, global = true, value_enum)]
    out: Option<OutFormat>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out_file: Option<PathBuf>,

    /// Worker threads for partitionable scans; never affects report bytes.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Work ceiling; falls back to CHARBOUND_BUDGET, then a built-in default.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum DomainArg {
    Nonneg,
    Symmetric,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Exact,
    Sample,
}

#[derive(Copy, Clone, ValueEnum)]
enum BoundModeArg {
    Exact,
    Certified,
}

#[derive(Subcommand)]
enum Cmd {
    /// Census of n x n integer matrices by characteristic polynomial.
    Census {
        #[arg(long)]
        n: u32,
        /// Height bound on matrix entries.
        #[arg(long, default_value_t = 1)]
        h: u64,
        #[arg(long, value_enum, default_value_t = DomainArg::Nonneg)]
        domain: DomainArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Sample size when --mode sample.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// RNG seed when --mode sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report the distinct irreducible factor set and its total
        /// degree (exact mode, n <= 4).
        #[arg(long)]
        spec: bool,
    },
    /// Verify the matrix-to-polynomial bijection for the degree-(2k+1) family.
    BijectionCheck {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        h: u64,
    },
    /// Exact constrained irreducible counts with sandwich bounds over a range
    /// of degrees.
    PiStar {
        #[arg(long)]
        p: u64,
        /// Degree or inclusive range, e.g. 9 or 4..13.
        #[arg(long)]
        n: String,
    },
    /// Lift counts from mod-p sources into the height-H family.
    Lift {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        p: u64,
        /// List every source with its lifted polynomials.
        #[arg(long)]
        enumerate: bool,
    },
    /// Certified lower bound at one (n, H), compared against the formulas.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u64,
        /// Prime for the lift, or "auto" for the canonical choice.
        #[arg(long, default_value = "auto")]
        p: String,
        #[arg(long, value_enum, default_value_t = BoundModeArg::Exact)]
        mode: BoundModeArg,
    },
    /// Formula and bound columns over a grid of (n, H) pairs.
    BoundTable {
        /// Comma-separated degrees; entries may be ranges, e.g. 5,7..11.
        #[arg(long)]
        n_list: String,
        /// Comma-separated heights.
        #[arg(long)]
        h_list: String,
    },
    /// Enumerative check of the 2^n/(7n) floor over a degree range.
    CorollaryCheck {
        /// Degree or inclusive range, minimum 4.
        #[arg(long)]
        n: String,
    },
    /// Census-versus-construction consistency at one (k, H, p).
    CrossCheck {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        p: u64,
    },
}

struct CliError(String);

fn fail<E: std::fmt::Display>(e: E) -> CliError {
    CliError(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("CHARBOUND_BUDGET") {
        Ok(s) => s
            .parse::<u64>()
            .map_err(|_| CliError(format!("CHARBOUND_BUDGET is not a count: {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// "a..b" (inclusive) or a single value.
fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError(format!("expected a degree or inclusive range a..b, got {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok((v, v))
    }
}

/// Comma-separated values, each either a number or an inclusive range.
fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (lo, hi) = parse_range(part)?;
        out.extend((lo..=hi).map(u64::from));
    }
    if out.is_empty() {
        return Err(CliError(format!("empty list: {s:?}")));
    }
    Ok(out)
}

fn emit(text: String, out_file: &Option<PathBuf>) -> Result<(), CliError> {
    match out_file {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text(config: &Value, header: &str, rows: &[String]) -> String {
    let mut s = format!("# config: {config}\n{header}\n");
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let budget = resolve_budget(cli.budget)?;
    let jobs = cli.jobs.max(1);
    let out_file = cli.out_file.clone();
    let (text, pass) = match cli.cmd {
        Cmd::Census { n, h, domain, mode, samples, seed, spec } => {
            let domain = match domain {
                DomainArg::Nonneg => EntryDomain::Nonneg,
                DomainArg::Symmetric => EntryDomain::Symmetric,
            };
            let mode = match mode {
                ModeArg::Exact => CensusMode::Exact,
                ModeArg::Sample => CensusMode::Sample { count: samples, seed },
            };
            let cfg = CensusConfig { n, h, domain, mode, jobs, budget, want_spec: spec };
            let report = census_run(&cfg).map_err(fail)?;
            let mut config = json!({
                "subcommand": "census",
                "n": n,
                "h": h,
                "domain": domain.label(),
                "mode": match mode { CensusMode::Exact => "exact", _ => "sample" },
                "spec": spec,
                "budget": budget,
            });
            if let CensusMode::Sample { count, seed } = mode {
                config["samples"] = json!(count);
                config["seed"] = json!(seed);
            }
            let text = match cli.out.unwrap_or(OutFormat::Csv) {
                OutFormat::Csv => {
                    csv_text(&config, CensusReport::CSV_HEADER, &[report.csv_row()])
                }
                OutFormat::Json => json_text(&census_json(&config, &report)),
            };
            (text, true)
        }
        Cmd::BijectionCheck { k, h } => {
            let params = FamilyParams::new(k, h).map_err(fail)?;
            let report = bijection_check(params, budget).map_err(fail)?;
            let config = json!({
                "subcommand": "bijection-check", "k": k, "h": h, "budget": budget,
            });
            let pass = report.pass();
            let v = json!({
                "config": config,
                "k": report.k,
                "h": report.h,
                "family_size": report.family_size.to_string(),
                "images": report.images,
                "distinct": report.distinct,
                "violations": report.violations,
                "degenerate": report.degenerate,
                "pass": pass,
            });
            let text = match cli.out.unwrap_or(OutFormat::Json) {
                OutFormat::Json => json_text(&v),
                OutFormat::Csv => csv_text(
                    &config,
                    "k,h,family_size,images,distinct,violations,degenerate,pass",
                    &[format!(
                        "{},{},{},{},{},{},{},{}",
                        report.k,
                        report.h,
                        report.family_size,
                        report.images,
                        report.distinct,
                        report.violations.join(";"),
                        report.degenerate,
                        if pass { "pass" } else { "fail" }
                    )],
                ),
            };
            (text, pass)
        }
        Cmd::PiStar { p, n } => {
            let (lo, hi) = parse_range(&n)?;
            let config = json!({
                "subcommand": "pi-star", "p": p, "n_lo": lo, "n_hi": hi, "budget": budget,
            });
            let mut reports = Vec::new();
            for n in lo..=hi {
                reports.push(IrrCountReport::compute(p, n, budget).map_err(fail)?);
            }
            let pass = reports.iter().all(|r| r.verdict());
            let text = match cli.out.unwrap_or(OutFormat::Csv) {
                OutFormat::Csv => {
                    let rows: Vec<String> = reports.iter().map(|r| r.csv_row()).collect();
                    csv_text(&config, IrrCountReport::CSV_HEADER, &rows)
                }
                OutFormat::Json => {
                    let rows: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "p": r.p,
                                "n": r.n,
                                "pi": r.pi.to_string(),
                                "pi_star": r.pi_star,
                                "pi_lower": rat_str(&r.pi_lower),
                                "pi_upper": rat_str(&r.pi_upper),
                                "pi_star_lower": rat_str(&r.pi_star_lower),
                                "pi_star_upper": rat_str(&r.pi_star_upper),
                                "verdict": r.verdict(),
                            })
                        })
                        .collect();
                    json_text(&json!({ "config": config, "rows": rows, "pass": pass }))
                }
            };
            (text, pass)
        }
        Cmd::Lift { n, h, p, enumerate } => {
            let cb = certified_lower_bound(n, h, p, BoundMode::ExactIfFeasible, budget, jobs)
                .map_err(fail)?;
            let bounds = eval_bounds(n, h);
            let table = compare(BoundSource::Certified(&cb), &bounds).map_err(fail)?;
            let config = json!({
                "subcommand": "lift", "n": n, "h": h, "p": p,
                "enumerate": enumerate, "budget": budget,
            });
            let mut v = bound_json(&config, &cb, &bounds, &table);
            if enumerate {
                v["lifts"] = lift_listing(n, h, p, budget)?;
            }
            let pass = table.all_pass();
            let text = match cli.out.unwrap_or(OutFormat::Json) {
                OutFormat::Json => json_text(&v),
                OutFormat::Csv => bound_csv(&config, &cb, &bounds, pass),
            };
            (text, pass)
        }
        Cmd::Bound { n, h, p, mode } => {
            let (p, p_mode) = if p == "auto" {
                (choose_prime(n, h).map_err(fail)?, "auto")
            } else {
                let v: u64 = p
                    .parse()
                    .map_err(|_| CliError(format!("--p expects auto or a prime, got {p:?}")))?;
                (v, "explicit")
            };
            let mode = match mode {
                BoundModeArg::Exact => BoundMode::ExactIfFeasible,
                BoundModeArg::Certified => BoundMode::BoundOnly,
            };
            let cb = certified_lower_bound(n, h, p, mode, budget, jobs).map_err(fail)?;
            let bounds = eval_bounds(n, h);
            let table = compare(BoundSource::Certified(&cb), &bounds).map_err(fail)?;
            let config = json!({
                "subcommand": "bound", "n": n, "h": h, "p": p, "p_mode": p_mode,
                "mode": match mode { BoundMode::ExactIfFeasible => "exact", _ => "certified" },
                "budget": budget,
            });
            let pass = table.all_pass();
            let text = match cli.out.unwrap_or(OutFormat::Json) {
                OutFormat::Json => json_text(&bound_json(&config, &cb, &bounds, &table)),
                OutFormat::Csv => bound_csv(&config, &cb, &bounds, pass),
            };
            (text, pass)
        }
        Cmd::BoundTable { n_list, h_list } => {
            let ns = parse_list(&n_list)?;
            let hs = parse_list(&h_list)?;
            let config = json!({
                "subcommand": "bound-table", "n_list": ns, "h_list": hs, "budget": budget,
            });
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            let mut pass = true;
            for &n in &ns {
                let n = u32::try_from(n).map_err(|_| CliError(format!("degree too large: {n}")))?;
                for &h in &hs {
                    let r = table_row(n, h, budget, jobs)?;
                    pass = pass && r.verdict != "fail";
                    rows.push(r.csv());
                    json_rows.push(r.json());
                }
            }
            let text = match cli.out.unwrap_or(OutFormat::Csv) {
                OutFormat::Csv => {
                    csv_text(&config, "n,h,alps,thm11_main,thm12,sum_lifts,verdict", &rows)
                }
                OutFormat::Json => {
                    json_text(&json!({ "config": config, "rows": json_rows, "pass": pass }))
                }
            };
            (text, pass)
        }
        Cmd::CorollaryCheck { n } => {
            let (lo, hi) = parse_range(&n)?;
            let config = json!({
                "subcommand": "corollary-check", "n_lo": lo, "n_hi": hi, "budget": budget,
            });
            let rows = corollary_check(lo, hi, budget).map_err(fail)?;
            let pass = rows.iter().all(|r| r.pass);
            let text = match cli.out.unwrap_or(OutFormat::Csv) {
                OutFormat::Csv => {
                    let lines: Vec<String> = rows
                        .iter()
                        .map(|r| {
                            format!(
                                "{},{},{},{}",
                                r.n,
                                r.pi_star,
                                rat_str(&r.threshold),
                                if r.pass { "pass" } else { "fail" }
                            )
                        })
                        .collect();
                    csv_text(&config, "n,pi_star,threshold,verdict", &lines)
                }
                OutFormat::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "pi_star": r.pi_star,
                                "threshold": rat_str(&r.threshold),
                                "pass": r.pass,
                            })
                        })
                        .collect();
                    json_text(&json!({ "config": config, "rows": rows, "pass": pass }))
                }
            };
            (text, pass)
        }
        Cmd::CrossCheck { k, h, p } => {
            let params = FamilyParams::new(k, h).map_err(fail)?;
            let report = census_vs_construction(params, p, budget).map_err(fail)?;
            let config = json!({
                "subcommand": "cross-check", "k": k, "h": h, "p": p, "budget": budget,
            });
            let pass = report.pass();
            let v = json!({
                "config": config,
                "k": report.k,
                "h": report.h,
                "p": report.p,
                "sources": report.sources,
                "sum_lifts": report.sum_lifts.to_string(),
                "family_irreducible": report.family_irreducible,
                "family_inconclusive": report.family_inconclusive,
                "violations": report.violations,
                "pass": pass,
            });
            let text = match cli.out.unwrap_or(OutFormat::Json) {
                OutFormat::Json => json_text(&v),
                OutFormat::Csv => csv_text(
                    &config,
                    "k,h,p,sources,sum_lifts,family_irreducible,family_inconclusive,violations,pass",
                    &[format!(
                        "{},{},{},{},{},{},{},{},{}",
                        report.k,
                        report.h,
                        report.p,
                        report.sources,
                        report.sum_lifts,
                        report.family_irreducible,
                        report.family_inconclusive,
                        report.violations.join(";"),
                        if pass { "pass" } else { "fail" }
                    )],
                ),
            };
            (text, pass)
        }
    };
    emit(text, &out_file)?;
    Ok(pass)
}

fn census_json(config: &Value, r: &CensusReport) -> Value {
    json!({
        "config": config,
        "n": r.n,
        "h": r.h,
        "domain": r.domain.label(),
        "total_matrices": r.total_matrices.to_string(),
        "scanned": r.scanned,
        "distinct_charpolys": r.distinct_charpolys,
        "distinct_irreducible_charpolys": r.distinct_irreducible_charpolys,
        "matrices_with_irreducible_charpoly": r.matrices_with_irreducible_charpoly,
        "inconclusive": r.inconclusive_count,
        "spec_count": r.spec_count,
        "spec_factors": r.spec_factors.as_ref().map(|fs| {
            fs.iter().map(|f| f.to_string()).collect::<Vec<_>>()
        }),
        "sample": r.sample.as_ref().map(|s| json!({
            "samples": s.samples,
            "irreducible_samples": s.irreducible_samples,
            "est_fraction": rat_str(&s.est_fraction),
            "se_squared": rat_str(&s.se_squared),
        })),
        "mode": r.mode_label,
    })
}

fn bound_json(config: &Value, cb: &CertifiedBound, bounds: &BoundReport, table: &VerdictTable) -> Value {
    let verdicts: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "formula": r.formula,
                "computed": r.computed.to_string(),
                "bound": r.bound.as_ref().map(rat_str),
                "flags": r.flags,
                "pass": r.pass,
            })
        })
        .collect();
    json!({
        "config": config,
        "n": cb.n,
        "h": cb.h,
        "p": cb.p,
        "pi_star": cb.pi_star_exact,
        "pi_star_lb": rat_str(&cb.pi_star_lb),
        "per_slot_min": cb.per_slot_min.iter()
            .map(|(i, c)| json!([i, c.to_string()]))
            .collect::<Vec<_>>(),
        "sum_lifts": cb.bound_exact.as_ref().map(|b| b.to_string()),
        "certified": cb.bound_certified.to_string(),
        "spec_bound": cb.spec_bound.to_string(),
        "alps_rhs": bounds.alps_rhs.value.as_ref().map(rat_str),
        "alps_flags": bounds.alps_rhs.flags,
        "thm11_main": bounds.thm11_main.value.as_ref().map(rat_str),
        "thm11_flags": bounds.thm11_main.flags,
        "thm12_rhs": bounds.thm12_rhs.value.as_ref().map(rat_str),
        "thm12_flags": bounds.thm12_rhs.flags,
        "verdicts": verdicts,
        "notes": cb.notes,
        "pass": table.all_pass(),
    })
}

fn bound_csv(config: &Value, cb: &CertifiedBound, bounds: &BoundReport, pass: bool) -> String {
    let row = format!(
        "{},{},{},{},{},{},{},{}",
        cb.n,
        cb.h,
        cb.p,
        cb.pi_star_exact.map(|s| s.to_string()).unwrap_or_default(),
        cb.bound_exact.as_ref().map(|b| b.to_string()).unwrap_or_default(),
        cb.bound_certified,
        bounds.thm12_rhs.value.as_ref().map(rat_str).unwrap_or_default(),
        if pass { "pass" } else { "fail" }
    );
    csv_text(config, "n,h,p,pi_star,sum_lifts,certified,thm12_rhs,verdict", &[row])
}

/// Sources and their lifts, fully materialized; only reachable behind an
/// explicit flag and the budget.
fn lift_listing(n: u32, h: u64, p: u64, budget: u64) -> Result<Value, CliError> {
    let family = FamilyParams::new((n.max(1) - 1) / 2, h).map_err(fail)?;
    let lp = LiftParams::new(family, p).map_err(fail)?;
    let sources = enumerate_constrained_irreducibles(p, n, budget).map_err(fail)?;
    let mut out = Vec::new();
    for g in &sources {
        let lifts = enumerate_lifts(g, &lp, budget).map_err(fail)?;
        out.push(json!({
            "source": g.to_string(),
            "count": lifts.len(),
            "lifts": lifts.iter().map(|f| f.to_poly().to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(Value::Array(out))
}

struct TableRow {
    n: u32,
    h: u64,
    alps: String,
    thm11: String,
    thm12: String,
    sum_lifts: String,
    verdict: &'static str,
}

impl TableRow {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n, self.h, self.alps, self.thm11, self.thm12, self.sum_lifts, self.verdict
        )
    }

    fn json(&self) -> Value {
        fn opt(s: &str) -> Value {
            if s.is_empty() { Value::Null } else { Value::String(s.to_string()) }
        }
        json!({
            "n": self.n,
            "h": self.h,
            "alps": opt(&self.alps),
            "thm11_main": opt(&self.thm11),
            "thm12": opt(&self.thm12),
            "sum_lifts": opt(&self.sum_lifts),
            "verdict": self.verdict,
        })
    }
}

/// One grid cell: formula values, the exact lift sum when the family and
/// budget allow it, and the gated verdict.  The lift prime is the smallest
/// prime not dividing H.
fn table_row(n: u32, h: u64, budget: u64, jobs: usize) -> Result<TableRow, CliError> {
    let bounds = eval_bounds(n, h);
    let fmt = |v: &FormulaValue| v.value.as_ref().map(rat_str).unwrap_or_default();
    let mut sum_lifts = String::new();
    let mut verdict = "n/a";
    if n >= 3 && n % 2 == 1 && h >= 2 {
        let p = primes_from(2).find(|&p| h % p != 0).expect("some prime misses h");
        let cb = certified_lower_bound(n, h, p, BoundMode::ExactIfFeasible, budget, jobs)
            .map_err(fail)?;
        if let Some(exact) = &cb.bound_exact {
            sum_lifts = exact.to_string();
        }
        let table = compare(BoundSource::Certified(&cb), &bounds).map_err(fail)?;
        if bounds.thm12_rhs.applicable() {
            verdict = if table.all_pass() { "pass" } else { "fail" };
        }
    }
    Ok(TableRow {
        n,
        h,
        alps: fmt(&bounds.alps_rhs),
        thm11: fmt(&bounds.thm11_main),
        thm12: fmt(&bounds.thm12_rhs),
        sum_lifts,
        verdict,
    })
}
