//! Command-line front end for the two-sphere image-charge solver.
//!
//! Subcommands: `sequences` (dump p_n, q_n, μ_n), `field` (evaluate h and ∇v
//! on points), `coeffs` (blow-up coefficients as JSON), `verify` (flux and
//! identity checks with a pass/fail table), `sweep` (per-ε asymptotic
//! records with rate fits).
//!
//! Exit codes: 0 success, 2 validation/parse failure (one-line diagnostic on
//! stderr), 3 when a `verify` check fails (the table is still printed).

mod output;
mod points;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bisphere_core::analysis::{assemble_report, sweep_row};
use bisphere_core::background::HarmonicPolynomial;
use bisphere_core::coefficients::{coefficient_report, potential_difference};
use bisphere_core::quadrature::{flux_h, make_rule, weighted_flux};
use bisphere_core::singular::eval_singular;
use bisphere_core::{build_sequence, SphereConfig, SphereId};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "bisphere",
    version,
    about = "Electric field between two adjacent conducting unit spheres: image-charge series, fluxes, blow-up coefficients, and asymptotic sweeps"
)]
struct Cli {
    /// Worker threads for the sweep (defaults to the rayon heuristic).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// Gap width: exactly one of the two conventions (ε = 2δ).
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GapArgs {
    /// Half-gap δ between a unit sphere and the mid-plane.
    #[arg(long)]
    delta: Option<f64>,
    /// Full gap ε = 2δ between the spheres.
    #[arg(long)]
    eps: Option<f64>,
}

impl GapArgs {
    fn delta(&self) -> f64 {
        match (self.delta, self.eps) {
            (Some(d), None) => d,
            (None, Some(e)) => e / 2.0,
            _ => unreachable!("clap group guarantees exactly one"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the image abscissas and charge weights as CSV (n, p_n, q_n, mu_n).
    Sequences {
        #[command(flatten)]
        gap: GapArgs,
        /// Certified tail tolerance for the series truncation.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate h and ∇v on a set of points; CSV x,y,z,h,vx,vy,vz,trunc_err.
    Field {
        #[command(flatten)]
        gap: GapArgs,
        /// Points file, or inline `grid:x=a:b:n,y=a:b:n,z=a:b:n`.
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blow-up coefficients and the potential difference as JSON.
    Coeffs {
        #[command(flatten)]
        gap: GapArgs,
        /// Harmonic background potential, e.g. "x" or "x^3 - 3*x*y^2".
        #[arg(long)]
        background: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Terms of the zero-gap limit series.
        #[arg(long, default_value_t = 1_000_000)]
        limit_terms: u64,
    },
    /// Run flux and identity checks; exit 3 if any residual exceeds its
    /// tolerance.
    Verify {
        #[command(flatten)]
        gap: GapArgs,
        #[arg(long, default_value = "x")]
        background: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Surface-rule order (even, 6..=128).
        #[arg(long, default_value_t = 64)]
        order: u32,
        /// Output style: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Per-ε asymptotic records and rate fits.
    Sweep {
        #[arg(long)]
        background: String,
        /// Strictly decreasing gap widths, e.g. 1e-3,1e-4,1e-5.
        #[arg(long, value_delimiter = ',', required = true)]
        eps_list: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV report path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Two-column gnuplot file (default: eps_vs_product.dat beside the
        /// CSV/JSON output, else the working directory).
        #[arg(long)]
        dat: Option<PathBuf>,
    },
}

/// Entry point shared by `main` and the tests; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        // Ignore the error if a global pool already exists (repeat calls in
        // tests); the pool size only affects scheduling, never results.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            2
        }
    }
}

fn check_tol(tol: f64) -> Result<(), String> {
    if tol > 0.0 && tol <= 1e-2 {
        Ok(())
    } else {
        Err(format!("tol must lie in (0, 1e-2], got {tol}"))
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_background(text: &str) -> Result<HarmonicPolynomial, String> {
    HarmonicPolynomial::parse(text).map_err(|e| e.to_string())
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Sequences { gap, tol, out } => {
            check_tol(tol)?;
            let seq = build_sequence(gap.delta(), tol).map_err(|e| e.to_string())?;
            write_or_print(out.as_deref(), &output::sequence_csv(&seq))?;
            Ok(0)
        }
        Command::Field {
            gap,
            points,
            tol,
            out,
        } => {
            check_tol(tol)?;
            let delta = gap.delta();
            let config = SphereConfig::from_half_gap(delta).map_err(|e| e.to_string())?;
            let seq = build_sequence(delta, tol).map_err(|e| e.to_string())?;
            let pts = points::load(&points)?;
            let mut text = String::from(output::field_csv_header());
            for p in pts {
                let fe = eval_singular(&config, &seq, p)
                    .map_err(|e| format!("{e} at ({}, {}, {})", p.x, p.y, p.z))?;
                text.push_str(&output::field_csv_row(p, &fe, &seq));
            }
            write_or_print(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Coeffs {
            gap,
            background,
            tol,
            limit_terms,
        } => {
            check_tol(tol)?;
            let h = parse_background(&background)?;
            let seq = build_sequence(gap.delta(), tol).map_err(|e| e.to_string())?;
            let rep = coefficient_report(&seq, &h, limit_terms).map_err(|e| e.to_string())?;
            print!("{}", output::coefficients_json(&rep));
            Ok(0)
        }
        Command::Verify {
            gap,
            background,
            tol,
            order,
            format,
        } => {
            check_tol(tol)?;
            run_verify(gap.delta(), &background, tol, order, &format)
        }
        Command::Sweep {
            background,
            eps_list,
            tol,
            out,
            csv,
            dat,
        } => {
            check_tol(tol)?;
            let h = parse_background(&background)?;
            run_sweep(
                &h,
                &eps_list,
                tol,
                out.as_deref(),
                csv.as_deref(),
                dat.as_deref(),
            )
        }
    }
}

struct Check {
    name: &'static str,
    value: f64,
    target: f64,
    tol: f64,
}

impl Check {
    fn residual(&self) -> f64 {
        (self.value - self.target).abs()
    }

    fn pass(&self) -> bool {
        self.residual() <= self.tol
    }
}

fn run_verify(
    delta: f64,
    background: &str,
    tol: f64,
    order: u32,
    format: &str,
) -> Result<i32, String> {
    let h = parse_background(background)?;
    let config = SphereConfig::from_half_gap(delta).map_err(|e| e.to_string())?;
    let seq = build_sequence(delta, tol).map_err(|e| e.to_string())?;
    let rule = make_rule(order).map_err(|e| e.to_string())?;

    let sum_w: f64 = rule.weights.iter().sum();
    let f1 = flux_h(&config, &seq, SphereId::D1, &rule).map_err(|e| e.to_string())?;
    let f2 = flux_h(&config, &seq, SphereId::D2, &rule).map_err(|e| e.to_string())?;
    let wf = weighted_flux(&config, &seq, &h, &rule).map_err(|e| e.to_string())?;
    let pd = potential_difference(&seq, &h);

    // Worst boundary deviation of h1 over the rule nodes.
    let mut b1: f64 = 0.0;
    let mut b2: f64 = 0.0;
    for d in &rule.nodes {
        let on1 = eval_singular(&config, &seq, config.c1 + *d).map_err(|e| e.to_string())?;
        let on2 = eval_singular(&config, &seq, config.c2 + *d).map_err(|e| e.to_string())?;
        b1 = b1.max((on1.h1 - 1.0).abs());
        b2 = b2.max(on2.h1.abs());
    }

    let checks = [
        Check {
            name: "weights_total_4pi",
            value: sum_w,
            target: 4.0 * std::f64::consts::PI,
            tol: 1e-12,
        },
        Check {
            name: "flux_d1",
            value: f1,
            target: 1.0,
            tol: 1e-6,
        },
        Check {
            name: "flux_d2",
            value: f2,
            target: -1.0,
            tol: 1e-6,
        },
        Check {
            name: "series_vs_quadrature",
            value: wf,
            target: pd,
            tol: 1e-5 * (1.0 + pd.abs()),
        },
        Check {
            name: "boundary_h1_on_d1",
            value: b1,
            target: 0.0,
            tol: 1e-8,
        },
        Check {
            name: "boundary_h1_on_d2",
            value: b2,
            target: 0.0,
            tol: 1e-8,
        },
    ];

    let all_pass = checks.iter().all(Check::pass);
    match format {
        "json" => {
            let mut text = String::from("[");
            for (i, c) in checks.iter().enumerate() {
                if i > 0 {
                    text.push_str(", ");
                }
                let _ = write!(
                    text,
                    "{{\"check\": \"{}\", \"value\": {}, \"target\": {}, \"residual\": {}, \"tol\": {}, \"pass\": {}}}",
                    c.name,
                    output::g17(c.value),
                    output::g17(c.target),
                    output::g17(c.residual()),
                    output::g17(c.tol),
                    c.pass(),
                );
            }
            text.push_str("]\n");
            print!("{text}");
        }
        "text" => {
            println!("background: {}", h.canonical_form());
            let header = format!(
                "{:<22} {:>24} {:>24} {:>12} {:>9} result",
                "check", "value", "target", "residual", "tol"
            );
            println!("{header}");
            for c in &checks {
                println!(
                    "{:<22} {:>24.16e} {:>24.16e} {:>12.3e} {:>9.1e} {}",
                    c.name,
                    c.value,
                    c.target,
                    c.residual(),
                    c.tol,
                    if c.pass() { "pass" } else { "FAIL" },
                );
            }
        }
        other => return Err(format!("unknown format '{other}' (text|json)")),
    }
    Ok(if all_pass { 0 } else { 3 })
}

fn run_sweep(
    h: &HarmonicPolynomial,
    eps_list: &[f64],
    tol: f64,
    out: Option<&Path>,
    csv: Option<&Path>,
    dat: Option<&Path>,
) -> Result<i32, String> {
    if eps_list.is_empty() {
        return Err("eps list must not be empty".to_string());
    }
    for w in eps_list.windows(2) {
        if w[1] >= w[0] {
            return Err("eps list must be strictly decreasing".to_string());
        }
    }
    // Rows are independent; compute them in parallel, then assemble a
    // deterministic (ε-sorted) report.
    use rayon::prelude::*;
    let rows: Result<Vec<_>, _> = eps_list
        .par_iter()
        .map(|&eps| sweep_row(h, eps, tol))
        .collect();
    let report = assemble_report(rows.map_err(|e| e.to_string())?);

    let json = output::sweep_json(&report, &h.canonical_form(), tol);
    let csv_text = output::sweep_csv(&report);
    let dat_text = output::sweep_dat(&report);

    if let Some(path) = out {
        std::fs::write(path, &json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if let Some(path) = csv {
        std::fs::write(path, &csv_text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let dat_path = match dat {
        Some(p) => p.to_path_buf(),
        None => {
            let dir = csv
                .and_then(Path::parent)
                .or_else(|| out.and_then(Path::parent))
                .unwrap_or_else(|| Path::new("."));
            dir.join("eps_vs_product.dat")
        }
    };
    std::fs::write(&dat_path, &dat_text)
        .map_err(|e| format!("cannot write {}: {e}", dat_path.display()))?;

    if out.is_none() && csv.is_none() {
        print!("{json}");
    } else {
        println!(
            "swept {} gap widths; limit_rate_const = {:.6e}, eta_decay_slope = {:.6e}",
            report.records.len(),
            report.limit_rate_const,
            report.eta_decay_slope,
        );
    }
    Ok(0)
}
