//! `meanbound`: power means, spread bounds and verification campaigns.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.

// `!(x >= 1.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod input;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meanbound::bounds::{
    cargo_shisha, kantorovich_bound, ln_cargo_shisha, ln_new_bound, new_bound, BoundInputs,
};
use meanbound::extremal::{gap_report, sharpness_probe};
use meanbound::format::num;
use meanbound::means::{exponential_mean, power_mean};
use meanbound::verify::{run_all, run_property, CampaignConfig, CampaignReport, Property};
use meanbound::{Error, ExtendedExponent, PositiveVector, RealVector};

use output::{Field, Format, Record};

#[derive(Parser)]
#[command(
    name = "meanbound",
    version,
    about = "Power means and their spread bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Power mean P_p(v), or exponential mean E_p(v) with --exponential.
    Mean(MeanArgs),
    /// Cargo–Shisha bound K and the bound B = exp((p−q)/8·ln²γ).
    Bound(BoundArgs),
    /// Supremum, K and B over a range of spreads.
    Sweep(SweepArgs),
    /// Gap report at one spread, or the sharpness probe along a t-sequence.
    Extremal(ExtremalArgs),
    /// Seeded property campaigns.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MeanArgs {
    /// Exponent: a real number, `inf` or `-inf`.
    #[arg(long, allow_hyphen_values = true)]
    p: ExtendedExponent,
    /// Comma-separated entries.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "input",
        required_unless_present = "input"
    )]
    values: Option<String>,
    /// File with one entry per line; `#` lines are comments.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Exponential mean of real entries instead of the power mean.
    #[arg(long)]
    exponential: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, value_enum, default_value_t = Format::Records)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma_min: f64,
    #[arg(long)]
    gamma_max: f64,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(2..))]
    steps: u32,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    scale: Scale,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, conflicts_with = "probe", required_unless_present = "probe")]
    gamma: Option<f64>,
    /// Comma-separated `t` values for the sharpness probe.
    #[arg(long)]
    probe: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Records)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign seed; falls back to MEANBOUND_SEED, then 42.
    #[arg(long, env = "MEANBOUND_SEED")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Run a single property (name or P1..P11).
    #[arg(long)]
    property: Option<Property>,
    /// Margin tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Records)]
    format: Format,
}

enum Failure {
    Domain(String),
    Usage(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Verification => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyVector
            | Error::NonFiniteEntry { .. }
            | Error::NanExponent
            | Error::UnknownProperty(_)
            | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            Error::NonPositiveEntry { .. } | Error::Domain(_) => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // prints help/version to stdout with exit 0, usage errors with 2
            e.exit();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Mean(a) => cmd_mean(&mut out, a),
        Command::Bound(a) => cmd_bound(&mut out, a),
        Command::Sweep(a) => cmd_sweep(&mut out, a),
        Command::Extremal(a) => cmd_extremal(&mut out, a),
        Command::Verify(a) => cmd_verify(&mut out, a),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Domain(m) => eprintln!("error: {m}"),
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn cmd_mean(out: &mut impl Write, a: MeanArgs) -> Outcome {
    let values = match (&a.values, &a.input) {
        (Some(s), _) => input::parse_csv_values(s),
        (None, Some(path)) => input::read_values_file(path),
        (None, None) => unreachable!("clap requires one source"),
    }
    .map_err(Failure::Usage)?;
    let m = if a.exponential {
        exponential_mean(a.p, &RealVector::new(values)?)
    } else {
        power_mean(a.p, &PositiveVector::new(values)?)
    };
    writeln!(out, "{}", num(m))?;
    Ok(())
}

fn cmd_bound(out: &mut impl Write, a: BoundArgs) -> Outcome {
    let b = BoundInputs::new(a.p, a.q, a.gamma)?;
    let mut row: Record = vec![
        ("p", Field::Num(b.p)),
        ("q", Field::Num(b.q)),
        ("gamma", Field::Num(b.gamma)),
        ("cargo_shisha", Field::Num(cargo_shisha(&b))),
        ("new_bound", Field::Num(new_bound(&b))),
        (
            "b_over_k",
            Field::Num((ln_new_bound(&b) - ln_cargo_shisha(&b)).exp()),
        ),
    ];
    if b.p == 1.0 && b.q == -1.0 {
        row.push(("kantorovich", Field::Num(kantorovich_bound(b.gamma)?)));
    }
    output::write(out, a.format, &[row])?;
    Ok(())
}

/// `steps` spreads from `lo` to `hi`, endpoints exact.
fn sweep_gammas(lo: f64, hi: f64, steps: u32, scale: Scale) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == 0 {
                return lo;
            }
            if i == last {
                return hi;
            }
            let t = f64::from(i) / f64::from(last);
            match scale {
                Scale::Linear => lo + (hi - lo) * t,
                Scale::Log => (lo.ln() + (hi.ln() - lo.ln()) * t).exp(),
            }
        })
        .collect()
}

fn cmd_sweep(out: &mut impl Write, a: SweepArgs) -> Outcome {
    if !(a.gamma_min >= 1.0) || !(a.gamma_min <= a.gamma_max) || !a.gamma_max.is_finite() {
        return Err(Failure::Usage(format!(
            "requires 1 <= gamma_min <= gamma_max < inf (got {}, {})",
            a.gamma_min, a.gamma_max
        )));
    }
    if !(a.q <= a.p) || !a.p.is_finite() || !a.q.is_finite() {
        return Err(Failure::Usage(format!(
            "requires finite q <= p (got p={}, q={})",
            a.p, a.q
        )));
    }
    let mut rows = Vec::with_capacity(a.steps as usize);
    for gamma in sweep_gammas(a.gamma_min, a.gamma_max, a.steps, a.scale) {
        let r = gap_report(a.p, a.q, gamma)?;
        rows.push(vec![
            ("gamma", Field::Num(gamma)),
            (
                "sup_estimate",
                Field::Num(r.sup_estimate.unwrap_or(f64::NAN)),
            ),
            ("cargo_shisha", Field::Num(r.cargo_shisha)),
            ("new_bound", Field::Num(r.new_bound)),
            (
                "slack_k_over_sup",
                Field::Num(r.slack_k_over_sup.unwrap_or(f64::NAN)),
            ),
            ("slack_b_over_k", Field::Num(r.slack_b_over_k)),
        ]);
    }
    output::write(out, a.format, &rows)?;
    Ok(())
}

fn cmd_extremal(out: &mut impl Write, a: ExtremalArgs) -> Outcome {
    let rows: Vec<Record> = if let Some(list) = &a.probe {
        let ts = input::parse_csv_values(list).map_err(Failure::Usage)?;
        ts.into_iter()
            .map(|t| {
                let r = sharpness_probe(a.p, a.q, t)?;
                Ok(vec![
                    ("p", Field::Num(a.p)),
                    ("q", Field::Num(a.q)),
                    ("t", Field::Num(r.t)),
                    ("normalized_ratio", Field::Num(r.normalized_ratio)),
                ])
            })
            .collect::<Result<_, Error>>()?
    } else {
        let gamma = a.gamma.expect("clap requires --gamma without --probe");
        let r = gap_report(a.p, a.q, gamma)?;
        vec![vec![
            ("p", Field::Num(r.inputs.p)),
            ("q", Field::Num(r.inputs.q)),
            ("gamma", Field::Num(r.inputs.gamma)),
            (
                "sup_estimate",
                Field::Num(r.sup_estimate.unwrap_or(f64::NAN)),
            ),
            ("cargo_shisha", Field::Num(r.cargo_shisha)),
            ("new_bound", Field::Num(r.new_bound)),
            (
                "slack_k_over_sup",
                Field::Num(r.slack_k_over_sup.unwrap_or(f64::NAN)),
            ),
            ("slack_b_over_k", Field::Num(r.slack_b_over_k)),
        ]]
    };
    output::write(out, a.format, &rows)?;
    Ok(())
}

fn report_record(r: &CampaignReport) -> Record {
    let witness = serde_json::to_value(&r.worst_witness).expect("witness serializes");
    vec![
        ("property", Field::Text(r.property.clone())),
        ("samples_run", Field::Int(r.samples_run as u64)),
        ("violations", Field::Int(r.violations as u64)),
        ("passed", Field::Bool(r.passed())),
        ("worst_margin", Field::Num(r.worst_margin)),
        ("worst_witness", Field::Json(witness)),
    ]
}

fn cmd_verify(out: &mut impl Write, a: VerifyArgs) -> Outcome {
    let cfg = CampaignConfig {
        seed: a.seed.unwrap_or(CampaignConfig::default().seed),
        samples: a.samples,
        tolerance: a.tol,
        ..CampaignConfig::default()
    };
    cfg.validate()?;
    let reports = match a.property {
        Some(p) => vec![run_property(p, &cfg)?],
        None => run_all(&cfg)?,
    };
    let rows: Vec<Record> = reports.iter().map(report_record).collect();
    output::write(out, a.format, &rows)?;
    if reports.iter().all(CampaignReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_endpoints_are_exact() {
        let g = sweep_gammas(1.0, 4.0, 4, Scale::Linear);
        assert_eq!(g, vec![1.0, 2.0, 3.0, 4.0]);
        let g = sweep_gammas(1.0, 1000.0, 4, Scale::Log);
        assert_eq!((g[0], g[3]), (1.0, 1000.0));
        assert!((g[1] - 10.0).abs() < 1e-12 && (g[2] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
