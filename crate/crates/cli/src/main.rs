mod instance;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use greedylab_core::closedform::{l1_indicator_d, lp_indicator_d, LpIndicatorCase};
use greedylab_core::constants::theorem_harness;
use greedylab_core::functionals::{d_m_capped, d_star_m_capped, sigma_m_capped, Caps};
use greedylab_core::greedy::{greedy_ordering, greedy_residual};
use greedylab_core::space::indicator;
use greedylab_core::{Error, SpaceSpec, DEFAULT_TOL};

use instance::InstanceFile;

#[derive(Parser)]
#[command(name = "greedylab", version, about = "greedy approximation laboratory for sequence spaces", after_help = instance::SCHEMA_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Instance file (TOML); a built-in instance is used when absent
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// RNG seed for sampled suites
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Comparison tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Enumeration scope cap
    #[arg(long, default_value_t = 24)]
    max_scope: u32,
    /// Random sample count for sampled suites
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy sums of one instance vector: residuals, sigma_m, D_m, D*_m
    Greedy {
        #[command(flatten)]
        common: CommonArgs,
        /// Which instance vector to expand
        #[arg(long, default_value = "x")]
        vector: String,
        /// Largest m (default: support size)
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Indicator distance curve: closed form vs oracle over m
    Curve {
        #[command(flatten)]
        common: CommonArgs,
        /// lp exponent
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Indicator size N
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Largest m (default: 2N + 2)
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Constant estimators and the theorem harness on the instance family
    Constants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cross-check suites: closed forms vs oracles, chain, identities
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Negative-control fixture: shift closed forms to force a failure
        #[arg(long, hide = true)]
        tamper_closed_form: bool,
    },
}

/// stderr diagnostic plus process exit code; stdout stays data-only.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) | Error::ScopeTooSmall(_) => 3,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn load_instance(common: &CommonArgs) -> Result<InstanceFile, Failure> {
    match &common.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(2, format!("--in {}: {e}", path.display())))?;
            InstanceFile::parse(&text).map_err(|e| Failure::new(2, e))
        }
        None => Ok(InstanceFile::default_instance()),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::new(2, format!("--out {}: {e}", path.display()))),
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| Failure::new(2, e.to_string()))
        }
    }
}

/// 17 significant digits, '.' decimal, locale-free.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn caps(common: &CommonArgs) -> Caps {
    Caps {
        max_scope: common.max_scope,
        ..Caps::default()
    }
}

fn cmd_greedy(common: &CommonArgs, vector: &str, m_max: Option<usize>) -> Result<(), Failure> {
    let inst = load_instance(common)?;
    let x = inst.vector(vector).map_err(|e| Failure::new(2, e))?;
    let space = &inst.space;
    let caps = caps(common);
    let order = greedy_ordering(x);
    let m_max = m_max.unwrap_or_else(|| x.support_size());
    let mut table = String::from("m,selected,residual,sigma,d,d_star\n");
    for m in 0..=m_max {
        let selected = order
            .indices()
            .iter()
            .take(m)
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let residual = space.norm(&greedy_residual(x, m))?;
        let sigma = sigma_m_capped(space, x, m, inst.scope, &caps)?.value;
        let (d, ds) = if m >= 1 {
            (
                fmt(d_m_capped(space, x, m, inst.scope, &caps)?.value),
                fmt(d_star_m_capped(space, x, m, inst.scope, &caps)?.value),
            )
        } else {
            (String::new(), String::new())
        };
        table.push_str(&format!(
            "{m},{selected},{},{},{d},{ds}\n",
            fmt(residual),
            fmt(sigma)
        ));
    }
    emit(&common.out, &table)
}

fn cmd_curve(common: &CommonArgs, p: f64, n: u32, m_max: Option<u32>) -> Result<(), Failure> {
    if !(p >= 1.0) {
        return Err(Failure::new(2, format!("--p: requires p >= 1, got {p}")));
    }
    if n == 0 {
        return Err(Failure::new(2, "--n: requires N >= 1"));
    }
    let caps = caps(common);
    let m_max = m_max.unwrap_or(2 * n + 2);
    let x = indicator(&(1..=n).collect::<Vec<u32>>())?;
    let mut table = String::from("m,closed,d,d_star,delta\n");
    for m in 1..=m_max {
        let closed = if p == 1.0 {
            l1_indicator_d(n, m)
        } else {
            lp_indicator_d(&LpIndicatorCase { p, n, m })?
        };
        let scope = (n + m).min(common.max_scope);
        let space = SpaceSpec::Lp { p };
        let d = d_m_capped(&space, &x, m as usize, scope, &caps)?.value;
        let ds = d_star_m_capped(&space, &x, m as usize, scope, &caps)?.value;
        // the l1 closed form describes D_m only
        let delta = if p == 1.0 {
            (closed - d).abs()
        } else {
            (closed - d).abs().max((closed - ds).abs())
        };
        table.push_str(&format!(
            "{m},{},{},{},{}\n",
            fmt(closed),
            fmt(d),
            fmt(ds),
            fmt(delta)
        ));
    }
    emit(&common.out, &table)
}

fn cmd_constants(common: &CommonArgs) -> Result<(), Failure> {
    let inst = load_instance(common)?;
    let family = inst
        .family
        .clone()
        .ok_or_else(|| Failure::new(2, "family: missing from instance"))?;
    let report = theorem_harness(&inst.space, &family, inst.scope, common.tol)?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    emit(&common.out, &format!("{json}\n"))
}

fn cmd_verify(common: &CommonArgs, tamper: bool) -> Result<(), Failure> {
    let config = verify::VerifyConfig {
        seed: common.seed,
        tol: common.tol,
        max_scope: common.max_scope,
        samples: common.samples,
        tamper: if tamper { 1e-3 } else { 0.0 },
    };
    let report = verify::run(&config)?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    emit(&common.out, &format!("{json}\n"))?;
    if !report.pass {
        let first = report
            .suites
            .iter()
            .find_map(|s| s.first_failure.as_ref().map(|f| format!("{}: {f}", s.name)))
            .unwrap_or_default();
        return Err(Failure::new(1, format!("verification failed: {first}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Greedy {
            common,
            vector,
            m_max,
        } => cmd_greedy(common, vector, *m_max),
        Command::Curve { common, p, n, m_max } => cmd_curve(common, *p, *n, *m_max),
        Command::Constants { common } => cmd_constants(common),
        Command::Verify {
            common,
            tamper_closed_form,
        } => cmd_verify(common, *tamper_closed_form),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("greedylab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
