//! Command-line surface of the toolkit.
//!
//! Exit codes are stable across subcommands: 0 when every check passes,
//! 1 when a check fails (theorem deviation above tolerance, nonpositive
//! residual-factor value, solver divergence, verdict failure), 2 for usage
//! and domain errors. The default tolerance can be overridden with the
//! `KITECC_TOL` environment variable; an explicit `--tol` wins over both.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kitecc::cc::{moment_of_inertia_from_distances, Potential};
use kitecc::kite::{
    gamma_domain_bounds, masses_kite_ac, masses_kite_b1, residual_factor, KitePlane, KitePoint,
};
use kitecc::solver::{newton_cc, scan_gamma, verify_cc, ScanSpec, VerifyVerdict};
use kitecc::{DistanceVector, Error};

use output::{fmt_f64, fmt_opt, json_bytes, Envelope};

const EXIT_CHECKS_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "kitecc",
    version,
    about = "Four-body and four-vortex central configurations with perpendicular diagonals: \
             theorem scans, kite mass tables, constrained Newton solving, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the admissible (a, c) domain; every root of F in b must be the
    /// kite plane b = 1
    VerifyTheorem(VerifyTheoremArgs),
    /// Tabulate the closed-form kite masses over one kite plane
    KiteMasses(KiteMassesArgs),
    /// Solve the constrained central-configuration system for given masses
    FindCc(FindCcArgs),
    /// Evaluate F / ((a^2-c^2)(b^2-1)) on a grid; positive everywhere for
    /// the even exponents alpha = 2 and alpha = 4
    ResidualFactor(ResidualFactorArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Power-law exponent alpha > 0 (the classical case is 1)
    #[arg(long, conflicts_with = "vortex")]
    alpha: Option<f64>,
    /// Use the point-vortex problem (beta = 2) instead of a power law
    #[arg(long)]
    vortex: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed recorded in the output config (reserved for sampled checks)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl CommonArgs {
    fn potential(&self) -> Result<Potential, String> {
        if self.vortex {
            return Ok(Potential::Vortex);
        }
        let alpha = self.alpha.unwrap_or(1.0);
        Potential::power_law(alpha).map_err(|e| e.to_string())
    }

    fn emit(&self, bytes: &[u8]) -> Result<(), String> {
        match &self.out {
            Some(path) => {
                fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
            }
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(bytes)
                    .map_err(|e| format!("cannot write to stdout: {e}"))
            }
        }
    }
}

#[derive(Args)]
struct VerifyTheoremArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid cells per axis
    #[arg(long, default_value_t = 100)]
    res: usize,
    /// Range scanned in a (defaults to the admissible interval)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    a_range: Option<Vec<f64>>,
    /// Range scanned in c (defaults to the admissible interval)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    c_range: Option<Vec<f64>>,
    /// Pass threshold on max |b_root - 1| (default 1e-9, env KITECC_TOL)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct KiteMassesArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Kite plane: b1 (vertical symmetry axis) or ac (horizontal)
    #[arg(long, value_enum)]
    plane: PlaneArg,
    /// Grid cells per axis
    #[arg(long, default_value_t = 20)]
    res: usize,
    /// Range of a (defaults to the admissible interval)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    a_range: Option<Vec<f64>>,
    /// Range of the dependent coordinate: c on the b1 plane, b on the ac
    /// plane (defaults to the admissible hull)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    dep_range: Option<Vec<f64>>,
    /// Pass threshold on the per-row residual norm (default 1e-10,
    /// env KITECC_TOL)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    B1,
    Ac,
}

#[derive(Args)]
struct FindCcArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// The four masses, comma separated (e.g. 1,1,1,1)
    #[arg(long, value_delimiter = ',')]
    masses: Vec<f64>,
    /// JSON file with the six initial distances: an array
    /// [r12, r13, r14, r23, r24, r34] or an object with those keys
    #[arg(long)]
    init: PathBuf,
    /// Inertia constraint I0 (defaults to I at the initial distances)
    #[arg(long)]
    i0: Option<f64>,
    /// Pass threshold on the verdict residual norm (default 1e-10,
    /// env KITECC_TOL)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ResidualFactorArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid cells per axis (the grid has res^3 nodes)
    #[arg(long, default_value_t = 50)]
    res: usize,
    /// Range of all three chart coordinates
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.1, 3.0])]
    range: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyTheorem(args) => run_verify_theorem(args),
        Command::KiteMasses(args) => run_kite_masses(args),
        Command::FindCc(args) => run_find_cc(args),
        Command::ResidualFactor(args) => run_residual_factor(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Tolerance resolution: explicit flag, then KITECC_TOL, then the default.
fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, String> {
    let value = match flag {
        Some(t) => t,
        None => match std::env::var("KITECC_TOL") {
            Ok(s) => s
                .parse::<f64>()
                .map_err(|_| format!("KITECC_TOL is not a number: {s:?}"))?,
            Err(_) => default,
        },
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(format!("tolerance must be positive, got {value}"))
    }
}

fn parse_range(range: &Option<Vec<f64>>, name: &str) -> Result<Option<(f64, f64)>, String> {
    match range {
        None => Ok(None),
        Some(v) => {
            let (lo, hi) = (v[0], v[1]);
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(format!("--{name} needs LO < HI, got {lo} {hi}"));
            }
            Ok(Some((lo, hi)))
        }
    }
}

/// Intersection check against the admissible interval; ranges entirely
/// outside it are a domain error (exit 2).
fn check_overlaps(range: (f64, f64), domain: (f64, f64), name: &str) -> Result<(), String> {
    if range.1 <= domain.0 || range.0 >= domain.1 {
        return Err(format!(
            "--{name} ({}, {}) lies outside the admissible domain ({:.6}, {:.6})",
            range.0, range.1, domain.0, domain.1
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- theorem

#[derive(Serialize)]
struct ScanConfig {
    mode: Potential,
    a_range: (f64, f64),
    c_range: (f64, f64),
    resolution: usize,
    root_tol: f64,
    tolerance: f64,
    seed: u64,
}

#[derive(Serialize)]
struct ScanSummary {
    cells: usize,
    skipped: usize,
    failures: usize,
    max_deviation: f64,
    all_monotone: bool,
    pass: bool,
}

fn run_verify_theorem(args: VerifyTheoremArgs) -> Result<u8, String> {
    let p = args.common.potential()?;
    let tol = resolve_tol(args.tol, 1e-9)?;
    if args.res < 2 {
        return Err(format!("--res must be at least 2, got {}", args.res));
    }
    let bounds = gamma_domain_bounds(KitePlane::B1);
    let domain = (bounds.a_min, bounds.a_max);
    let a_range = parse_range(&args.a_range, "a-range")?.unwrap_or(domain);
    let c_range = parse_range(&args.c_range, "c-range")?.unwrap_or(domain);
    check_overlaps(a_range, domain, "a-range")?;
    check_overlaps(c_range, domain, "c-range")?;

    let spec = ScanSpec {
        a_range,
        c_range,
        resolution: args.res,
        root_tol: (tol / 10.0).min(1e-12),
    };
    let report = scan_gamma(&spec, &p);
    if report.cells.is_empty() && report.failures.is_empty() {
        // Passing vacuously on zero admissible cells would be misleading.
        return Err("requested ranges contain no admissible (a, c) cells".into());
    }
    let pass = report.max_deviation < tol && report.failures.is_empty();

    let config = ScanConfig {
        mode: p,
        a_range,
        c_range,
        resolution: args.res,
        root_tol: spec.root_tol,
        tolerance: tol,
        seed: args.common.seed,
    };
    let summary = ScanSummary {
        cells: report.cells.len(),
        skipped: report.skipped,
        failures: report.failures.len(),
        max_deviation: report.max_deviation,
        all_monotone: report.all_monotone,
        pass,
    };

    let bytes = match args.common.format {
        Format::Json => json_bytes(&Envelope {
            config,
            rows: report.cells.clone(),
            summary,
        }),
        Format::Csv => {
            let mut csv = String::with_capacity(64 * (report.cells.len() + 1));
            csv.push_str("a,c,root_b,deviation,df_db_positive\n");
            for cell in &report.cells {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(cell.a),
                    fmt_f64(cell.c),
                    fmt_f64(cell.root_b),
                    fmt_f64(cell.deviation),
                    cell.df_db_positive
                ));
            }
            csv.into_bytes()
        }
    };
    args.common.emit(&bytes)?;
    eprintln!(
        "verify-theorem: {} cells, {} failures, max |b - 1| = {:.3e}, tol {:.1e} -> {}",
        report.cells.len(),
        report.failures.len(),
        report.max_deviation,
        tol,
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { 0 } else { EXIT_CHECKS_FAILED })
}

// ------------------------------------------------------------ kite masses

#[derive(Serialize)]
struct MassesConfig {
    mode: Potential,
    plane: KitePlane,
    a_range: (f64, f64),
    dep_range: (f64, f64),
    resolution: usize,
    tolerance: f64,
    seed: u64,
}

#[derive(Serialize)]
struct MassRow {
    a: f64,
    b: f64,
    c: f64,
    m1: Option<f64>,
    m2: Option<f64>,
    m3: Option<f64>,
    m4: Option<f64>,
    residual_norm: Option<f64>,
    status: &'static str,
}

#[derive(Serialize)]
struct MassesSummary {
    rows: usize,
    in_domain: usize,
    flagged: usize,
    max_residual_norm: f64,
    pass: bool,
}

fn run_kite_masses(args: KiteMassesArgs) -> Result<u8, String> {
    let p = args.common.potential()?;
    let tol = resolve_tol(args.tol, 1e-10)?;
    if args.res < 1 {
        return Err(format!("--res must be at least 1, got {}", args.res));
    }
    let plane = match args.plane {
        PlaneArg::B1 => KitePlane::B1,
        PlaneArg::Ac => KitePlane::Ac,
    };
    let bounds = gamma_domain_bounds(plane);
    let a_domain = (bounds.a_min, bounds.a_max);
    // Hull of the dependent coordinate over the whole a-interval.
    let dep_domain = match plane {
        KitePlane::B1 => (2.0 - 3.0f64.sqrt(), 3.0f64.sqrt()),
        KitePlane::Ac => (2.0 / 3.0f64.sqrt() - 1.0, 1.0),
    };
    let a_range = parse_range(&args.a_range, "a-range")?.unwrap_or(a_domain);
    let dep_range = parse_range(&args.dep_range, "dep-range")?.unwrap_or(dep_domain);
    check_overlaps(a_range, a_domain, "a-range")?;

    let res = args.res;
    let da = (a_range.1 - a_range.0) / res as f64;
    let dd = (dep_range.1 - dep_range.0) / res as f64;
    let mut rows = Vec::with_capacity(res * res);
    let mut in_domain = 0usize;
    let mut flagged = 0usize;
    let mut max_norm: f64 = 0.0;
    let mut all_ok = true;
    for i in 0..res {
        for j in 0..res {
            let a = a_range.0 + (i as f64 + 0.5) * da;
            let dep = dep_range.0 + (j as f64 + 0.5) * dd;
            let (b, c) = match plane {
                KitePlane::B1 => (1.0, dep),
                KitePlane::Ac => (dep, a),
            };
            if dep <= 0.0 || !bounds.contains(a, dep) {
                flagged += 1;
                rows.push(MassRow {
                    a,
                    b,
                    c,
                    m1: None,
                    m2: None,
                    m3: None,
                    m4: None,
                    residual_norm: None,
                    status: "out_of_domain",
                });
                continue;
            }
            let masses = match plane {
                KitePlane::B1 => masses_kite_b1(a, dep, &p),
                KitePlane::Ac => masses_kite_ac(a, dep, &p),
            };
            match masses {
                Ok(m) => {
                    let k = KitePoint::new(a, b, c, p).expect("in-domain chart point");
                    let norm = kitecc::cc::fit_multipliers(&k.config(m), &p)
                        .map(|(_, _, n)| n)
                        .unwrap_or(f64::INFINITY);
                    in_domain += 1;
                    max_norm = max_norm.max(norm);
                    if norm.is_nan() || norm >= tol {
                        all_ok = false;
                    }
                    rows.push(MassRow {
                        a,
                        b,
                        c,
                        m1: Some(m[0]),
                        m2: Some(m[1]),
                        m3: Some(m[2]),
                        m4: Some(m[3]),
                        residual_norm: Some(norm),
                        status: "ok",
                    });
                }
                Err(Error::DegenerateKite { .. }) => {
                    flagged += 1;
                    rows.push(MassRow {
                        a,
                        b,
                        c,
                        m1: None,
                        m2: None,
                        m3: None,
                        m4: None,
                        residual_norm: None,
                        status: "degenerate",
                    });
                }
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    let pass = all_ok;
    let config = MassesConfig {
        mode: p,
        plane,
        a_range,
        dep_range,
        resolution: res,
        tolerance: tol,
        seed: args.common.seed,
    };
    let summary = MassesSummary {
        rows: rows.len(),
        in_domain,
        flagged,
        max_residual_norm: max_norm,
        pass,
    };
    let bytes = match args.common.format {
        Format::Json => json_bytes(&Envelope {
            config,
            rows,
            summary,
        }),
        Format::Csv => {
            let mut csv = String::with_capacity(96 * (rows.len() + 1));
            csv.push_str("a,b,c,m1,m2,m3,m4,residual_norm,status\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    fmt_f64(r.a),
                    fmt_f64(r.b),
                    fmt_f64(r.c),
                    fmt_opt(r.m1),
                    fmt_opt(r.m2),
                    fmt_opt(r.m3),
                    fmt_opt(r.m4),
                    fmt_opt(r.residual_norm),
                    r.status
                ));
            }
            csv.into_bytes()
        }
    };
    args.common.emit(&bytes)?;
    eprintln!(
        "kite-masses: {in_domain} in-domain rows, {flagged} flagged, max residual = {max_norm:.3e} -> {}",
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { 0 } else { EXIT_CHECKS_FAILED })
}

// ---------------------------------------------------------------- find-cc

#[derive(Serialize)]
struct FindCcConfig {
    mode: Potential,
    masses: [f64; 4],
    init: [f64; 6],
    i0: f64,
    tolerance: f64,
    seed: u64,
}

#[derive(Serialize)]
struct SolutionRow {
    r12: f64,
    r13: f64,
    r14: f64,
    r23: f64,
    r24: f64,
    r34: f64,
    lambda_prime: f64,
    sigma: f64,
    iterations: usize,
    residual_norm: f64,
    verdict: VerifyVerdict,
}

#[derive(Serialize)]
struct FindCcSummary {
    converged: bool,
    all_pass: bool,
    error: Option<String>,
    final_residual: Option<f64>,
}

fn parse_init(path: &PathBuf) -> Result<DistanceVector, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("malformed init file: {e}"))?;
    let arr: [f64; 6] = if let Some(list) = value.as_array() {
        if list.len() != 6 {
            return Err(format!("init array needs 6 distances, got {}", list.len()));
        }
        let mut a = [0.0; 6];
        for (k, v) in list.iter().enumerate() {
            a[k] = v
                .as_f64()
                .ok_or_else(|| format!("init entry {k} is not a number"))?;
        }
        a
    } else if value.is_object() {
        let mut a = [0.0; 6];
        for (k, key) in ["r12", "r13", "r14", "r23", "r24", "r34"]
            .iter()
            .enumerate()
        {
            a[k] = value
                .get(key)
                .and_then(|v| v.as_f64())
                .ok_or_else(|| format!("init object is missing numeric field {key:?}"))?;
        }
        a
    } else {
        return Err("init file must be a JSON array of 6 numbers or an object".into());
    };
    DistanceVector::from_array(arr).map_err(|e| e.to_string())
}

fn run_find_cc(args: FindCcArgs) -> Result<u8, String> {
    let p = args.common.potential()?;
    let tol = resolve_tol(args.tol, 1e-10)?;
    if args.masses.len() != 4 {
        return Err(format!(
            "--masses needs 4 values, got {}",
            args.masses.len()
        ));
    }
    let masses: [f64; 4] = [
        args.masses[0],
        args.masses[1],
        args.masses[2],
        args.masses[3],
    ];
    let init = parse_init(&args.init)?;
    let i0 = match args.i0 {
        Some(v) if v > 0.0 && v.is_finite() => v,
        Some(v) => return Err(format!("--i0 must be positive, got {v}")),
        None => moment_of_inertia_from_distances(&masses, &init).map_err(|e| e.to_string())?,
    };

    let config = FindCcConfig {
        mode: p,
        masses,
        init: init.as_array(),
        i0,
        tolerance: tol,
        seed: args.common.seed,
    };

    let result = newton_cc(masses, &p, &init, i0);
    let (rows, summary, code) = match result {
        Ok(state) => {
            let verdict = verify_cc(&state.distances, &masses, &p, tol);
            let all_pass = verdict.all_pass();
            let d = state.distances;
            let row = SolutionRow {
                r12: d.r12,
                r13: d.r13,
                r14: d.r14,
                r23: d.r23,
                r24: d.r24,
                r34: d.r34,
                lambda_prime: state.lambda_prime,
                sigma: state.sigma,
                iterations: state.iterations,
                residual_norm: state.residual_norm,
                verdict,
            };
            let summary = FindCcSummary {
                converged: true,
                all_pass,
                error: None,
                final_residual: None,
            };
            (
                vec![row],
                summary,
                if all_pass { 0 } else { EXIT_CHECKS_FAILED },
            )
        }
        Err(e @ Error::InvalidParameter { .. }) => return Err(e.to_string()),
        Err(e) => {
            let final_residual = match e {
                Error::NoConvergence { residual, .. } => Some(residual),
                _ => None,
            };
            let summary = FindCcSummary {
                converged: false,
                all_pass: false,
                error: Some(e.to_string()),
                final_residual,
            };
            (Vec::new(), summary, EXIT_CHECKS_FAILED)
        }
    };

    let status_line = if summary.converged {
        format!("converged, all_pass = {}", summary.all_pass)
    } else {
        format!("failed: {}", summary.error.clone().unwrap_or_default())
    };
    let bytes = match args.common.format {
        Format::Json => json_bytes(&Envelope {
            config,
            rows,
            summary,
        }),
        Format::Csv => {
            let mut csv = String::new();
            csv.push_str(
                "status,r12,r13,r14,r23,r24,r34,lambda_prime,sigma,iterations,residual_norm,\
                 realizable,ordered_convex,masses_positive,residual_ok,consistency_ok\n",
            );
            match rows.first() {
                Some(r) => csv.push_str(&format!(
                    "converged,{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    fmt_f64(r.r12),
                    fmt_f64(r.r13),
                    fmt_f64(r.r14),
                    fmt_f64(r.r23),
                    fmt_f64(r.r24),
                    fmt_f64(r.r34),
                    fmt_f64(r.lambda_prime),
                    fmt_f64(r.sigma),
                    r.iterations,
                    fmt_f64(r.residual_norm),
                    r.verdict.realizable,
                    r.verdict.ordered_convex,
                    r.verdict.masses_positive,
                    r.verdict.residual_ok,
                    r.verdict.consistency_ok
                )),
                None => csv.push_str(&format!(
                    "diverged,,,,,,,,,,{},,,,,\n",
                    fmt_opt(summary.final_residual)
                )),
            }
            csv.into_bytes()
        }
    };
    args.common.emit(&bytes)?;
    eprintln!("find-cc: {status_line}");
    Ok(code)
}

// -------------------------------------------------------- residual factor

#[derive(Serialize)]
struct FactorConfig {
    alpha: f64,
    range: (f64, f64),
    resolution: usize,
    seed: u64,
}

#[derive(Serialize)]
struct FactorRow {
    a: f64,
    b: f64,
    c: f64,
    value: f64,
}

#[derive(Serialize)]
struct FactorSummary {
    evaluated: usize,
    skipped_guard_band: usize,
    min_value: f64,
    pass: bool,
}

fn run_residual_factor(args: ResidualFactorArgs) -> Result<u8, String> {
    let alpha = match args.common.potential()? {
        Potential::PowerLaw { alpha } if alpha == 2.0 || alpha == 4.0 => alpha,
        Potential::PowerLaw { alpha } => {
            return Err(format!(
                "residual-factor requires --alpha 2 or --alpha 4, got {alpha}"
            ))
        }
        Potential::Vortex => {
            return Err("residual-factor requires --alpha 2 or --alpha 4, not --vortex".into())
        }
    };
    let p = Potential::PowerLaw { alpha };
    if args.res < 1 {
        return Err(format!("--res must be at least 1, got {}", args.res));
    }
    let (lo, hi) = (args.range[0], args.range[1]);
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(format!("--range needs 0 < LO < HI, got {lo} {hi}"));
    }

    let n = args.res;
    let step = (hi - lo) / n as f64;
    let node = |i: usize| lo + (i as f64 + 0.5) * step;
    let mut rows = Vec::with_capacity(n * n * n);
    let mut skipped = 0usize;
    let mut min_value = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let (a, b, c) = (node(i), node(j), node(l));
                let k = KitePoint::new(a, b, c, p).expect("positive grid nodes");
                match residual_factor(&k) {
                    Ok(value) => {
                        min_value = min_value.min(value);
                        rows.push(FactorRow { a, b, c, value });
                    }
                    Err(Error::GuardBand { .. }) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    let evaluated = rows.len();
    let pass = !rows.is_empty() && min_value > 0.0;
    let config = FactorConfig {
        alpha,
        range: (lo, hi),
        resolution: n,
        seed: args.common.seed,
    };
    let summary = FactorSummary {
        evaluated,
        skipped_guard_band: skipped,
        min_value,
        pass,
    };
    let bytes = match args.common.format {
        Format::Json => json_bytes(&Envelope {
            config,
            rows,
            summary,
        }),
        Format::Csv => {
            let mut csv = String::with_capacity(48 * (rows.len() + 1));
            csv.push_str("a,b,c,value\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_f64(r.a),
                    fmt_f64(r.b),
                    fmt_f64(r.c),
                    fmt_f64(r.value)
                ));
            }
            csv.into_bytes()
        }
    };
    args.common.emit(&bytes)?;
    eprintln!(
        "residual-factor (alpha = {alpha}): {evaluated} nodes, {skipped} in guard bands, \
         min = {min_value:.6e} -> {}",
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { 0 } else { EXIT_CHECKS_FAILED })
}
