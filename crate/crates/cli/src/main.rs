use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qbethe::exact::scalar_format;
use qbethe::formfactor::{ff22, ff22_analytic, twisted_ff, FfKind, FormFactorRequest, ScalarRoute};
use qbethe::scalarprod::{
    scalar_det, scalar_intermediate, scalar_sum, scaling_limit_scalar, DetKind,
};
use qbethe::suites::{run_matching, RunConfig, Status, Suite, VerificationReport};
use qbethe::{scalar_parse, ExactScalar};

#[derive(Parser, Debug)]
#[command(
    name = "qbethe",
    version,
    about = "Exact scalar products and form factors of GL(3) trigonometric Bethe vectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a randomized verification suite and emit one JSON record per check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a scalar product or form factor on explicit parameters.
    Eval {
        what: What,
        /// One or more methods, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        method: Vec<Method>,
        #[command(flatten)]
        common: Common,
    },
    /// Limits: scaling limit of the kernels or of the scalar product, and
    /// diagonal entries of the determinant matrix.
    Limit {
        kind: LimitKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    max_a: Option<usize>,
    #[arg(long)]
    max_b: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    q: Option<String>,
    /// Twist as `k1,k2,k3`.
    #[arg(long)]
    kappa: Option<String>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    threads: Option<usize>,
    /// Write report records here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSON file with run parameters; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bound on numerators and denominators of random parameters.
    #[arg(long)]
    bound: Option<i64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Scalar,
    Formfactor,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Sum,
    Intermediate,
    Det1,
    Detq2,
    Ff22,
    Ff33q2,
    Ff12q,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LimitKind {
    Q1Kernels,
    Q1Scalar,
    DiagEntry,
}

impl Common {
    fn run_config(&self) -> Result<RunConfig> {
        let mut run = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(v) = self.max_a {
            run.max_a = v;
        }
        if let Some(v) = self.max_b {
            run.max_b = v;
        }
        if let Some(v) = self.trials {
            run.trials = v;
        }
        if let Some(v) = self.seed {
            run.seed = v;
        }
        if let Some(v) = &self.q {
            run.q = v.clone();
        }
        if let Some(v) = &self.kappa {
            let parts: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
            let Ok(k) = <[String; 3]>::try_from(parts) else {
                bail!("--kappa needs three comma-separated rationals");
            };
            run.kappa = Some(k);
        }
        if let Some(v) = self.threads {
            run.threads = v;
        }
        if let Some(v) = self.bound {
            run.bound = v;
        }
        Ok(run)
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.report {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }
}

/// Writes the records and a summary line on stderr; true when all pass.
fn emit(records: &[VerificationReport], common: &Common) -> Result<bool> {
    let mut out = common.sink()?;
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    out.flush()?;
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let (pass, fail, error) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Error),
    );
    eprintln!("{pass} passed, {fail} failed, {error} errors");
    Ok(fail == 0 && error == 0)
}

/// Prints `name: value` lines and, for several values, whether they agree.
fn print_values(values: &[(String, ExactScalar)]) -> bool {
    if let [(_, v)] = values {
        println!("{}", scalar_format(v));
        return true;
    }
    for (name, v) in values {
        println!("{name}: {}", scalar_format(v));
    }
    let equal = values.windows(2).all(|w| w[0].1 == w[1].1);
    println!("verdict: {}", if equal { "equal" } else { "differ" });
    equal
}

fn eval(what: What, methods: &[Method], run: &RunConfig) -> Result<bool> {
    let cfg = run.explicit_config()?;
    let mut values = Vec::new();
    for &m in methods {
        let name = format!("{m:?}").to_lowercase();
        match (what, m) {
            (What::Scalar, Method::Sum) => values.push((name, scalar_sum(&cfg)?)),
            (What::Scalar, Method::Intermediate) => values.push((name, scalar_intermediate(&cfg)?)),
            (What::Scalar, Method::Det1) => values.push((name, scalar_det(&cfg, DetKind::S1)?)),
            (What::Scalar, Method::Detq2) => values.push((name, scalar_det(&cfg, DetKind::Sq2)?)),
            (What::Formfactor, Method::Ff22 | Method::Ff33q2 | Method::Ff12q) => {
                let (z, _, _) = run
                    .spectral()?
                    .context("form factors need z, r1_at_z and r3_at_z")?;
                match m {
                    Method::Ff22 => {
                        values.push(("ff22 interpolation".into(), ff22(&z, &cfg)?));
                        values.push(("ff22 row derivative".into(), ff22_analytic(&z, &cfg)?));
                    }
                    Method::Ff33q2 => {
                        let req = FormFactorRequest {
                            which: FfKind::Ff33Q2,
                            z,
                            cfg: cfg.clone(),
                        };
                        values.push(("ff33q2 det".into(), twisted_ff(&req, ScalarRoute::Det)?));
                        values.push(("ff33q2 sum".into(), twisted_ff(&req, ScalarRoute::Sum)?));
                    }
                    _ => {
                        let req = FormFactorRequest {
                            which: FfKind::Ff12Q,
                            z,
                            cfg: cfg.clone(),
                        };
                        values.push((name, twisted_ff(&req, ScalarRoute::Det)?));
                    }
                }
            }
            _ => bail!("method {name} does not apply to {what:?}"),
        }
    }
    Ok(print_values(&values))
}

fn limit(kind: LimitKind, common: &Common) -> Result<bool> {
    let run = common.run_config()?;
    if kind == LimitKind::Q1Scalar && run.has_explicit_sets() {
        let slopes = |s: &Option<Vec<String>>| -> Result<Vec<ExactScalar>> {
            Ok(s.iter()
                .flatten()
                .map(|x| scalar_parse(x))
                .collect::<qbethe::Result<_>>()?)
        };
        let all = [
            slopes(&run.uc)?,
            slopes(&run.vc)?,
            slopes(&run.ub)?,
            slopes(&run.vb)?,
        ];
        let lim = scaling_limit_scalar(&all, &scalar_parse(&run.c)?, &run.twist()?.k2)?;
        return Ok(print_values(&[
            ("S1 limit".into(), lim.s1),
            ("Sq2 limit".into(), lim.sq2),
            ("invariant".into(), lim.invariant),
        ]));
    }
    let prefix = match kind {
        LimitKind::Q1Kernels => "q1-kernels",
        LimitKind::Q1Scalar => "q1-scalar",
        LimitKind::DiagEntry => "diag-entry",
    };
    emit(
        &run_matching(Suite::Limits, &run, |id| id.starts_with(prefix))?,
        common,
    )
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suite, common } => {
            let run = common.run_config()?;
            emit(
                &run_matching(Suite::parse(&suite)?, &run, |_| true)?,
                &common,
            )
        }
        Command::Eval {
            what,
            method,
            common,
        } => eval(what, &method, &common.run_config()?),
        Command::Limit { kind, common } => limit(kind, &common),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
