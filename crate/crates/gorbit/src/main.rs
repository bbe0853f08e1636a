//! Command-line front end. Exit code 0 only when every executed
//! certificate passes.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gorbit::catalog::{instantiate, lookup};
use gorbit::driver::{
    analyze_report, classify_report, go_check_report, load_or_build_algebra, parse_field_spec,
    recheck_g2, reproduce_g2, reproduce_spn, RunConfig,
};
use gorbit::dynamics::euler_arnold_check;
use gorbit::exactmath::Scalar;
use gorbit::gomet::{block_structure, metricform_build, MetricSpec};
use gorbit::liecore::{AlgebraDto, Element};
use gorbit::report::{report_emit, to_json_string};

#[derive(Parser)]
#[command(name = "gorbit", version, about = "Exact geodesic-orbit certification")]
struct Cli {
    /// PRNG seed for the randomized (Las Vegas) steps.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Field tower: comma-separated square-free generators ("2,3,5") or
    /// "rationals".
    #[arg(long, global = true, default_value = "2,3,5")]
    field: String,
    /// Worker threads for the parallel verification loops (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Audit mode: re-verify every certificate embedded in the report.
    #[arg(long, global = true)]
    recheck: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and emit its exact structure as JSON.
    Build {
        #[arg(long, default_value = "g2")]
        algebra: String,
    },
    /// Subalgebra analysis: dimensions, regularity, module decomposition.
    Analyze {
        #[arg(long, default_value = "g2")]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
    },
    /// Certify or refute one concrete metric.
    GoCheck {
        #[arg(long, default_value = "g2")]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
        /// e.g. '{"lambda":5,"mu":2}' or '{"mus":[1,1,1,1,1,"3/2"]}'
        #[arg(long)]
        metric: String,
    },
    /// Obstruction-driven collapse of the invariant-metric parameter space.
    Classify {
        #[arg(long, default_value = "g2")]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
    },
    /// Full reproduction pipelines.
    #[command(subcommand)]
    Reproduce(Reproduce),
    /// Floating-point Euler–Arnold cross-check (diagnostic only).
    EulerArnold {
        #[arg(long, default_value = "h1")]
        subalgebra: String,
        #[arg(long, default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
}

#[derive(Subcommand)]
enum Reproduce {
    /// The G2 classification, end to end.
    G2,
    /// The sp(n₁)⊕sp(n₂)⊕sp(n₃) ⊂ sp(n) generalized Wallach example.
    Spn {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        n3: usize,
        /// Allow the n₁+n₂+n₃ = 4 run.
        #[arg(long)]
        large: bool,
    },
}

fn emit(out: &Option<PathBuf>, json: String) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, json).map_err(|e| e.to_string()),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let field = parse_field_spec(&cli.field)?;
    let mut cfg = RunConfig::new(cli.seed, field.clone());
    cfg.recheck = cli.recheck;
    let started = Instant::now();
    let passed = match &cli.command {
        Command::Build { algebra } => {
            let alg = load_or_build_algebra(algebra, &field)?;
            let dto = AlgebraDto::from_algebra(&alg);
            emit(&cli.out, to_json_string(&dto))?;
            true
        }
        Command::Analyze { algebra, subalgebra } => {
            let alg = load_or_build_algebra(algebra, &field)?;
            let r = analyze_report(&cfg, &alg, subalgebra)?;
            emit(&cli.out, to_json_string(&r))?;
            r.passed()
        }
        Command::GoCheck { algebra, subalgebra, metric } => {
            let alg = load_or_build_algebra(algebra, &field)?;
            let r = go_check_report(&cfg, &alg, subalgebra, metric)?;
            emit(&cli.out, to_json_string(&r))?;
            r.passed()
        }
        Command::Classify { algebra, subalgebra } => {
            let alg = load_or_build_algebra(algebra, &field)?;
            let r = classify_report(&cfg, &alg, subalgebra)?;
            emit(&cli.out, to_json_string(&r))?;
            r.passed()
        }
        Command::Reproduce(Reproduce::G2) => {
            let r = reproduce_g2(&cfg);
            if cfg.recheck && r.passed() {
                recheck_g2(&r, &field)?;
                eprintln!("recheck: all embedded certificates re-verified");
            }
            let passed = r.passed();
            match &cli.out {
                Some(path) => report_emit(&r, path).map_err(|e| e.to_string())?,
                None => print!("{}", to_json_string(&r)),
            }
            passed
        }
        Command::Reproduce(Reproduce::Spn { n1, n2, n3, large }) => {
            let r = reproduce_spn(&cfg, *n1, *n2, *n3, *large)?;
            let passed = r.passed();
            match &cli.out {
                Some(path) => report_emit(&r, path).map_err(|e| e.to_string())?,
                None => print!("{}", to_json_string(&r)),
            }
            passed
        }
        Command::EulerArnold { subalgebra, t, dt } => {
            let alg = load_or_build_algebra("g2", &field)?;
            let entry =
                lookup(subalgebra).ok_or_else(|| format!("unknown subalgebra {subalgebra:?}"))?;
            let h = instantiate(entry, &alg).map_err(|e| e.to_string())?;
            let k = h.normalizer();
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let bs = block_structure(&k, &mut rng).map_err(|e| e.to_string())?;
            let metric = metricform_build(
                &bs,
                &MetricSpec {
                    center_metric: None,
                    lambdas: vec![Scalar::from_int(&field, 2); bs.ideal_count()],
                    mus: vec![Scalar::one(&field); bs.m_count()],
                },
            )
            .map_err(|e| e.join("; "))?;
            let mut x = Element::zero(&alg);
            for i in 0..alg.dim() {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    x = x.add(&Element::basis(&alg, i).scale(&Scalar::from_int(&field, c)));
                }
            }
            let r = euler_arnold_check(&metric, &h, &x, *t, *dt)?;
            let json = serde_json::json!({
                "schema_version": 1,
                "subalgebra": subalgebra,
                "horizon": t,
                "dt": dt,
                "max_deviation": r.max_deviation,
                "energy_drift": r.energy_drift,
            });
            emit(&cli.out, format!("{}\n", serde_json::to_string_pretty(&json).unwrap()))?;
            r.max_deviation < 1e-6
        }
    };
    eprintln!("completed in {:.3}s", started.elapsed().as_secs_f64());
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        #[cfg(feature = "parallel")]
        {
            if let Err(e) =
                rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global()
            {
                eprintln!("warning: could not set thread count: {e}");
            }
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more certificates did not pass");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
