//! Command-line front end: certify models, reproduce the counterexample,
//! run convergence and bound studies.
//!
//! Exit codes: 0 when the run's criterion holds (positive verdict,
//! converged, bounds satisfied), 1 on configuration or structural errors,
//! 2 when the criterion fails as a physics outcome (indefinite Gram
//! matrix, out-of-band convergence ratio, violated bound).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use majorana_rp::clifford::CliffordElement;
use majorana_rp::config::ModelConfig;
use majorana_rp::dense::Representation;
use majorana_rp::geometry::{ReflectionGeometry, Side};
use majorana_rp::gibbs::{certify_rp_with_tol, check_bounds, rp_functional, RpVerdict, PSD_TOL};
use majorana_rp::hamiltonian::{CrossTerm, HamiltonianSpec};
use majorana_rp::sample;
use majorana_rp::trotter::{convergence_csv, convergence_table};
use majorana_rp::clifford::MonomialIndex;

#[derive(Parser)]
#[command(name = "majorana-rp", version, about = "Reflection positivity for Majorana lattice models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build the configured model and certify (or refute) reflection
    /// positivity of its Gibbs functional on the even minus algebra.
    Certify {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated inverse temperatures; overrides the config.
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<f64>>,
        /// PSD tolerance: positive iff min eig >= -tol * max(1, max eig).
        #[arg(long)]
        tol: Option<f64>,
        /// Directory for report files (default: config's run.out or `.`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// `json` writes the report; `csv` also writes the Gram spectrum.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print Tr(c1 ϑ(c1) e^{-H}) for H = -i beta c1 ϑ(c1) next to the
    /// closed form -2i sinh(beta).
    Counterexample {
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Operator-norm convergence of the Lie-product approximants.
    Trotter {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated step counts (default: powers of two 2..=1024).
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reflection-bound slacks for a model with independent halves.
    Bounds {
        #[arg(long)]
        config: PathBuf,
        /// Seed for the sampled even pairs (falls back to run.seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled pairs beside the identity pair.
        #[arg(long, default_value_t = 4)]
        pairs: usize,
        /// Slack floor (default 1e-10).
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Certify { config, beta, tol, out, format } => {
            cmd_certify(&config, beta, tol, out, format)
        }
        Command::Counterexample { beta } => cmd_counterexample(beta),
        Command::Trotter { config, k, out } => cmd_trotter(&config, k, out),
        Command::Bounds { config, seed, pairs, tol } => cmd_bounds(&config, seed, pairs, tol),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_certify(
    config_path: &PathBuf,
    beta_override: Option<Vec<f64>>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let config = ModelConfig::from_path(config_path)?;
    let model = config.build()?;
    let betas = beta_override.unwrap_or_else(|| config.betas());
    if betas.is_empty() {
        bail!("empty beta list");
    }
    let tol = tol.or(config.run.tol).unwrap_or(PSD_TOL);
    let out_dir = out.or(config.run.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))?;

    let mut any_indefinite = false;
    for &beta in &betas {
        let spec = HamiltonianSpec { beta, ..model.spec.clone() };
        let cert = certify_rp_with_tol(&spec, tol)?;
        let report_path = out_dir.join(format!("rp_report_beta{beta}.json"));
        fs::write(&report_path, serde_json::to_string_pretty(&cert.report)?)
            .with_context(|| format!("cannot write {}", report_path.display()))?;
        if format == Format::Csv {
            let csv_path = out_dir.join(format!("gram_spectrum_beta{beta}.csv"));
            fs::write(&csv_path, cert.spectrum_csv())
                .with_context(|| format!("cannot write {}", csv_path.display()))?;
        }
        let verdict = match cert.report.verdict {
            RpVerdict::Positive => "positive",
            RpVerdict::Indefinite => "indefinite",
        };
        let classification = if cert.report.classification.is_certified() {
            "certified"
        } else {
            "violated"
        };
        println!(
            "beta {beta}: verdict {verdict}, couplings {classification}, \
             min eig {:.12e}, max eig {:.12e}, report {}",
            cert.report.min_eigenvalue,
            cert.report.max_eigenvalue,
            report_path.display()
        );
        any_indefinite |= cert.report.verdict == RpVerdict::Indefinite;
    }
    Ok(ExitCode::from(if any_indefinite { 2 } else { 0 }))
}

fn counterexample_spec(beta: f64) -> anyhow::Result<HamiltonianSpec> {
    let g = ReflectionGeometry::chain(1, 1)?;
    Ok(HamiltonianSpec::cross_only(
        g,
        vec![CrossTerm::new(MonomialIndex::from_indices(&[1])?, -1.0)],
        beta,
    )?)
}

fn cmd_counterexample(beta: f64) -> anyhow::Result<ExitCode> {
    let spec = counterexample_spec(beta)?;
    let h = spec.assemble()?;
    let c1 = CliffordElement::generator(2, 1)?;
    let value = rp_functional(&c1, &c1, &h, &spec.geometry)?;
    let target = Complex64::new(0.0, -2.0 * beta.sinh());
    let deviation = (value - target).norm();
    println!("Tr(c1 theta(c1) e^-H) = {:+.16e} {:+.16e}i", value.re, value.im);
    println!("-2i sinh({beta})       = {:+.16e} {:+.16e}i", target.re, target.im);
    println!("deviation            = {deviation:.3e}");
    Ok(ExitCode::from(if deviation <= 1e-12 { 0 } else { 2 }))
}

fn cmd_trotter(
    config_path: &PathBuf,
    schedule: Option<Vec<u32>>,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let config = ModelConfig::from_path(config_path)?;
    let model = config.build()?;
    let ks = schedule.unwrap_or_else(|| (1..=10).map(|p| 1u32 << p).collect());
    if ks.is_empty() {
        bail!("empty step schedule");
    }
    let rep = Representation::new(model.geometry.num_modes())?;
    let rows = convergence_table(&model.spec, &rep, &ks)?;
    let csv = convergence_csv(&rows);
    print!("{csv}");
    if let Some(dir) = out.or(config.run.out.clone()) {
        fs::create_dir_all(&dir)?;
        let path = dir.join("trotter.csv");
        fs::write(&path, &csv).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let last = rows.last().expect("nonempty schedule");
    let converged =
        last.error <= 1e-12 || last.ratio.map(|r| (1.7..=2.3).contains(&r)).unwrap_or(false);
    Ok(ExitCode::from(if converged { 0 } else { 2 }))
}

fn cmd_bounds(
    config_path: &PathBuf,
    seed: Option<u64>,
    pair_count: usize,
    tol: Option<f64>,
) -> anyhow::Result<ExitCode> {
    let config = ModelConfig::from_path(config_path)?;
    let model = config.build()?;
    let Some(seed) = seed.or(config.run.seed) else {
        bail!("bounds needs a seed: pass --seed or set run.seed in the config");
    };
    let tol = tol.or(config.run.tol).unwrap_or(1e-10);

    let g = &model.geometry;
    let n = g.num_majoranas();
    let mut rng = sample::rng(seed);
    let id = CliffordElement::identity(n)?;
    let mut pairs = vec![(id.clone(), id)];
    for _ in 0..pair_count {
        pairs.push((
            sample::random_even_element(&mut rng, g, Side::Minus, 3, 1.0),
            sample::random_even_element(&mut rng, g, Side::Minus, 3, 1.0),
        ));
    }
    let report = check_bounds(&model.spec, &pairs)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::from(if report.min_slack >= -tol { 0 } else { 2 }))
}
