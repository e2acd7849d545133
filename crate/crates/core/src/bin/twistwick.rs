use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use twistwick::checks::{run_all_on, specialize_for, CheckConfig};
use twistwick::par::Exec;
use twistwick::quotient::Quotient;
use twistwick::report::{dimension_table, sha256_hex, Overall, ReportDocument};
use twistwick::specfile::SpecFile;
use twistwick::tensor::{Limits, Tensor};
use twistwick::wick::{normal_order_with_stats, OpWord};
use twistwick::{Error, Preset, Scalar, TwistSystem};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Environment variable overriding the default space-dimension cap.
const CAP_ENV: &str = "TWISTWICK_CAP";
const DEFAULT_DEGREE: usize = 4;

#[derive(Parser)]
#[command(name = "twistwick", version, about = "Check and compute with C-twisted Wick algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct Common {
    /// Highest tensor degree visited (default: the file's max_degree, else 4)
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest ambient space dimension d^n any computation may enumerate
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Exit with status 3 when any check was skipped for resource reasons
    #[arg(long)]
    strict: bool,
    /// Run on the calling thread only
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full consistency and relation suite on a spec file
    Check {
        path: PathBuf,
        /// `symbolic` or a rational value such as `-1` or `3/2`
        #[arg(long, default_value = "symbolic")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print dim J_n and dim A_n per degree
    Dims {
        path: PathBuf,
        #[arg(long, default_value = "symbolic")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Normal-order a word such as "a1 A2" and print its vacuum expectation
    NormalOrder {
        path: PathBuf,
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Write the spec file of a builtin preset
    Preset {
        name: String,
        dim: usize,
        /// Output path (stdout when omitted)
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Resource(_)) { EXIT_RESOURCE } else { EXIT_INPUT };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Loaded {
    bytes: Vec<u8>,
    spec: SpecFile,
    ts: TwistSystem,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let bytes = std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| input_error(format!("{}: not valid UTF-8", path.display())))?;
    let spec = SpecFile::parse(text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let ts = spec
        .twist_system()
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(Loaded { bytes, spec, ts })
}

fn limits(common: &Common) -> Result<Limits, Failure> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var(CAP_ENV) {
        l.max_space_dim = v
            .trim()
            .parse()
            .map_err(|_| input_error(format!("{CAP_ENV}: `{v}` is not a positive integer")))?;
    }
    if let Some(c) = common.cap {
        l.max_space_dim = c;
    }
    if l.max_space_dim == 0 {
        return Err(input_error("the cap must be positive"));
    }
    Ok(l)
}

fn parse_q(s: &str) -> Result<Option<BigRational>, Failure> {
    if s == "symbolic" {
        return Ok(None);
    }
    let v = Scalar::parse_constant(s).map_err(|e| input_error(format!("--q: {e}")))?;
    Ok(Some(v))
}

fn config(common: &Common, spec: &SpecFile, q: Option<BigRational>) -> Result<CheckConfig, Failure> {
    let max_degree = common.max_degree.or(spec.max_degree).unwrap_or(DEFAULT_DEGREE);
    if max_degree == 0 {
        return Err(input_error("--max-degree must be at least 1"));
    }
    Ok(CheckConfig {
        max_degree,
        limits: limits(common)?,
        exec: if common.sequential { Exec::Sequential } else { Exec::default() },
        q,
    })
}

fn config_echo(cfg: &CheckConfig, ts: &TwistSystem, spec: &SpecFile) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("dim".into(), ts.dim().to_string());
    m.insert("max_degree".into(), cfg.max_degree.to_string());
    m.insert("cap".into(), cfg.limits.max_space_dim.to_string());
    m.insert("max_word_len".into(), cfg.limits.max_word_len.to_string());
    let q = match (&cfg.q, spec.uses_q) {
        (_, false) => "none".to_string(),
        (None, true) => "symbolic".to_string(),
        (Some(v), true) => v.to_string(),
    };
    m.insert("q".into(), q);
    if let Some(p) = spec.preset {
        m.insert("preset".into(), p.name().into());
    }
    m
}

fn cmd_check(path: &Path, q: &str, common: &Common) -> Result<u8, Failure> {
    let loaded = load(path)?;
    let cfg = config(common, &loaded.spec, parse_q(q)?)?;
    let ts = specialize_for(&loaded.ts, &cfg).map_err(|e| input_error(format!("--q {q}: {e}")))?;
    let quotient = Quotient::new(ts, cfg.limits);
    let checks = run_all_on(&quotient, &cfg);
    let doc = ReportDocument {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_digest: sha256_hex(&loaded.bytes),
        config: config_echo(&cfg, quotient.twist(), &loaded.spec),
        dims: dimension_table(&quotient, cfg.max_degree).map_err(|e| e.to_string()),
        checks,
    };
    match common.format {
        Format::Text => print!("{}", doc.text()),
        Format::Machine => print!("{}", doc.machine()),
    }
    Ok(match doc.overall() {
        Overall::Fail => EXIT_FAIL,
        Overall::PassWithSkips if common.strict => EXIT_RESOURCE,
        _ => 0,
    })
}

fn cmd_dims(path: &Path, q: &str, common: &Common) -> Result<u8, Failure> {
    let loaded = load(path)?;
    let cfg = config(common, &loaded.spec, parse_q(q)?)?;
    let ts = specialize_for(&loaded.ts, &cfg).map_err(|e| input_error(format!("--q {q}: {e}")))?;
    let quotient = Quotient::new(ts, cfg.limits);
    let mut rows = Vec::new();
    let mut skipped = None;
    for n in 0..=cfg.max_degree {
        match dimension_table(&quotient, n) {
            Ok(t) => rows.push(*t.last().expect("nonempty table")),
            Err(e) => {
                skipped = Some(e.to_string());
                break;
            }
        }
    }
    match common.format {
        Format::Text => {
            println!("{:>3}  {:>8}  {:>8}  {:>8}", "n", "d^n", "dim J_n", "dim A_n");
            for r in &rows {
                println!("{:>3}  {:>8}  {:>8}  {:>8}", r.degree, r.ambient, r.ideal, r.quotient);
            }
            if let Some(m) = &skipped {
                println!("skipped: {m}");
            }
        }
        Format::Machine => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| json!({"degree": r.degree, "ambient": r.ambient, "ideal": r.ideal, "quotient": r.quotient}))
                .collect();
            let doc = json!({
                "report_version": twistwick::report::REPORT_VERSION,
                "input_digest": sha256_hex(&loaded.bytes),
                "dimensions": rows,
                "skipped": skipped,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
        }
    }
    Ok(if skipped.is_some() && common.strict { EXIT_RESOURCE } else { 0 })
}

fn cmd_normal_order(path: &Path, word: &str, common: &Common) -> Result<u8, Failure> {
    let loaded = load(path)?;
    let lim = limits(common)?;
    let w = OpWord::parse(word, loaded.spec.uses_q).map_err(|e| input_error(format!("word: {e}")))?;
    w.check_indices(loaded.ts.dim()).map_err(|e| input_error(format!("word: {e}")))?;
    if w.max_len() > lim.max_word_len {
        return Err(Error::Resource(format!(
            "word of length {} exceeds the maximum {}",
            w.max_len(),
            lim.max_word_len
        ))
        .into());
    }
    let (n, stats) = normal_order_with_stats(&loaded.ts, &w);
    let vac = n.coeff(&[]);
    match common.format {
        Format::Text => {
            println!("{n}");
            println!("vacuum expectation: {vac}");
            println!("rewrites: {}", stats.rewrites);
        }
        Format::Machine => {
            let doc = json!({
                "report_version": twistwick::report::REPORT_VERSION,
                "input": w.to_string(),
                "normal_order": n.to_string(),
                "vacuum_expectation": vac.to_string(),
                "rewrites": stats.rewrites,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
        }
    }
    // the rewritten word acts like the original on the vacuum
    debug_assert_eq!(
        twistwick::wick::act_on(&loaded.ts, &n, &Tensor::unit(), lim.max_word_len).ok(),
        twistwick::wick::act_on(&loaded.ts, &w, &Tensor::unit(), lim.max_word_len).ok()
    );
    Ok(0)
}

fn cmd_preset(name: &str, dim: usize, output: Option<&Path>) -> Result<u8, Failure> {
    let p: Preset = name.parse()?;
    let spec = SpecFile::from_preset(p, dim)?;
    let text = spec.write(Some(&format!("preset {} in dimension {dim}", p.name())));
    match output {
        None => print!("{text}"),
        Some(path) => std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Check { path, q, common } => cmd_check(path, q, common),
        Cmd::Dims { path, q, common } => cmd_dims(path, q, common),
        Cmd::NormalOrder { path, word, common } => cmd_normal_order(path, word, common),
        Cmd::Preset { name, dim, output } => cmd_preset(name, *dim, output.as_deref()),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
