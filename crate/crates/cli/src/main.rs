use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ringlock::fppoly::FpPoly;
use ringlock::numberlab::{classify_n, good_bad, simple_density, simple_numbers, unpleasant_survey};
use ringlock::planner::{proof_plan_with, table_row, PlanStatus, Route};
use ringlock::proofkit::{
    bn_certificate, eg_system, idempotent_certificate, p2_trace, render_certificate, verify_json, Certificate,
    Enumeration, Style,
};
use ringlock::reduction::{characteristic_certificate, reduction_certificate};
use ringlock::wedderlab::{period_index, wedderburn_status, Budget};
use ringlock::Error;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "ringlock", version, about = "Equational commutativity certificates for rings with x^n = x")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; certificate generators default to json, the rest to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout (a directory for `plan`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumArg {
    Monomial,
    Affine,
    Custom,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Terse,
    Tutorial,
}

#[derive(Subcommand)]
enum Command {
    /// Prime powers q with q - 1 | n - 1.
    Nfields { n: u64 },
    /// Characteristic certificate for n.
    CharCert { n: u64 },
    /// Reduction of n-rings with p = 0 to p^k-rings.
    ReduceCert { n: u64, p: u64 },
    /// Simple numbers up to a limit.
    Simple {
        #[arg(long)]
        limit: u64,
    },
    /// Fraction of simple numbers up to N.
    Density { big_n: u64 },
    /// Survey of unpleasant numbers at p.
    Unpleasant {
        p: u64,
        start: u64,
        end: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Bad exponents k <= kmax for p.
    Good { p: u64, kmax: u64 },
    /// Period and index of f in the composition monoid.
    Period { p: u64, k: u32, f: String },
    /// Orthogonal idempotents for T^(p^k) - T.
    EgSystem { p: u64, k: u64 },
    /// b_n record for g(a) = 0.
    Bn {
        p: u64,
        k: u64,
        g: String,
        #[arg(long = "enum", value_enum, default_value = "monomial")]
        enumeration: EnumArg,
        /// Comma-separated list for `--enum custom`, starting with T.
        #[arg(long)]
        custom: Option<String>,
    },
    /// Identities for p^2-rings with p = 0.
    P2Trace { p: u64 },
    /// Idempotent decomposition of x over F_q.
    IdemCert { p: u64, modulus: Option<String> },
    /// Status of W_{p,k,f}.
    Wstatus {
        p: u64,
        k: u32,
        f: String,
        #[arg(long)]
        saturate: bool,
        /// Overrides RINGLOCK_BUDGET, e.g. `dim=64,relations=512`.
        #[arg(long)]
        budget: Option<String>,
    },
    /// Full proof plan for n.
    Plan {
        n: u64,
        #[arg(long)]
        saturate: bool,
        #[arg(long)]
        budget: Option<String>,
    },
    /// Results table rows.
    Table { from: u64, to: u64 },
    /// Verify certificate files or plan directories.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Render a certificate as prose.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "terse")]
        style: StyleArg,
    },
}

struct Output {
    json: Value,
    text: String,
    code: u8,
    /// Certificate generators default to json.
    json_default: bool,
}

impl Output {
    fn text(json: Value, text: String) -> Self {
        Output { json, text, code: 0, json_default: false }
    }

    fn cert(c: Certificate) -> anyhow::Result<Self> {
        let text = render_certificate(&c, Style::Terse)?.trim_end().to_string();
        Ok(Output { json: serde_json::to_value(&c)?, text, code: 0, json_default: true })
    }

    fn code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn poly(p: u64, s: &str) -> anyhow::Result<FpPoly> {
    Ok(FpPoly::parse(p, s)?)
}

fn budget(arg: &Option<String>) -> anyhow::Result<Budget> {
    Ok(match arg {
        Some(s) => Budget::parse(s)?,
        None => Budget::from_env()?,
    })
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn verify_path(path: &Path, lines: &mut Vec<String>, results: &mut Vec<Value>) -> anyhow::Result<bool> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json") && p.file_name().is_some_and(|n| n != "manifest.json"))
            .collect();
        entries.sort();
        let mut ok = true;
        for e in entries {
            ok &= verify_path(&e, lines, results)?;
        }
        return Ok(ok);
    }
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let report = verify_json(&s)?;
    let name = path.display().to_string();
    match &report.failure {
        None => lines.push(format!("PASS {name} ({}, {} checks)", report.kind, report.checks.len())),
        Some(f) => lines.push(format!("FAIL {name} ({}): {f}", report.kind)),
    }
    results.push(json!({ "file": name, "report": report }));
    Ok(report.passed())
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    Ok(match &cli.command {
        Command::Nfields { n } => {
            let c = classify_n(*n)?;
            Output::text(serde_json::to_value(&c)?, join(&c.n_powers))
        }
        Command::CharCert { n } => Output::cert(characteristic_certificate(*n)?.into())?,
        Command::ReduceCert { n, p } => Output::cert(reduction_certificate(*n, *p)?.into())?,
        Command::Simple { limit } => {
            let s = simple_numbers(*limit);
            Output::text(json!({ "limit": limit, "count": s.len(), "simple": s }), join(&s))
        }
        Command::Density { big_n } => {
            let r = simple_density(*big_n)?;
            let x = *r.numer() as f64 / *r.denom() as f64;
            let count = simple_numbers(*big_n).len();
            Output::text(json!({ "n": big_n, "count": count, "density": x }), format!("{count}/{big_n} = {x:.6}"))
        }
        Command::Unpleasant { p, start, end, jobs } => {
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(*j);
            }
            let survey = pool.build()?.install(|| unpleasant_survey(*p, *start, *end))?;
            let min = survey.unpleasant.first().map_or("none".to_string(), u64::to_string);
            let text = format!(
                "simple at {p}: {}\nunpleasant: {}\nminimum: {min}\n{}",
                survey.simple_at_p,
                survey.unpleasant.len(),
                join(&survey.unpleasant)
            );
            Output::text(serde_json::to_value(&survey)?, text)
        }
        Command::Good { p, kmax } => {
            let g = good_bad(*p, *kmax)?;
            let text = format!("bad: {}\nmethods agree: {}", join(&g.bad), g.agree());
            let mut v = serde_json::to_value(&g)?;
            v["agree"] = json!(g.agree());
            Output::text(v, text)
        }
        Command::Period { p, k, f } => {
            let pi = period_index(*p, *k, &poly(*p, f)?)?;
            Output::text(serde_json::to_value(pi)?, format!("period {} index {}", pi.period, pi.index))
        }
        Command::EgSystem { p, k } => Output::cert(eg_system(*p, *k)?.into())?,
        Command::Bn { p, k, g, enumeration, custom } => {
            let e = match enumeration {
                EnumArg::Monomial => Enumeration::Monomial,
                EnumArg::Affine => Enumeration::Affine,
                EnumArg::Exhaustive => Enumeration::Exhaustive,
                EnumArg::Custom => {
                    let Some(list) = custom else { bail!(Error::InvalidArgument("--enum custom needs --custom".into())) };
                    Enumeration::Custom(list.split(',').map(|s| poly(*p, s)).collect::<anyhow::Result<_>>()?)
                }
            };
            Output::cert(bn_certificate(*p, *k, &poly(*p, g)?, &e)?.into())?
        }
        Command::P2Trace { p } => Output::cert(p2_trace(*p)?.into())?,
        Command::IdemCert { p, modulus } => {
            let m = modulus.as_deref().map(|s| poly(*p, s)).transpose()?;
            Output::cert(idempotent_certificate(*p, m.as_ref())?.into())?
        }
        Command::Wstatus { p, k, f, saturate, budget: b } => {
            let b = budget(b)?;
            let s = wedderburn_status(*p, *k, &poly(*p, f)?, saturate.then_some(&b))?;
            let code = if s.is_proven() { 0 } else { EXIT_INCONCLUSIVE };
            let text = match &s.verdict {
                ringlock::wedderlab::WVerdict::Open { period, d, note, .. } => {
                    format!("Open: period {period}, d = {d} ({note})")
                }
                ringlock::wedderlab::WVerdict::ProvenPeriodGcd { period, index, d } => {
                    format!("ProvenPeriodGcd: period {period}, index {index}, d = {d}")
                }
                _ => s.label().to_string(),
            };
            Output::text(serde_json::to_value(&s)?, text).code(code)
        }
        Command::Plan { n, saturate, budget: b } => {
            let b = budget(b)?;
            let plan = proof_plan_with(*n, saturate.then_some(&b))?;
            let manifest = plan.manifest();
            let mut text = format!("n = {n}: {:?}\n", plan.status);
            if let Some(m) = plan.coinciding {
                text += &format!("coincides with {m}\n");
            }
            for r in &plan.primes {
                let extra = match &r.route {
                    Route::OpenCase { obligations, .. } => {
                        let fs: Vec<String> = obligations.iter().map(|s| format!("W_{{{},{},{}}}", r.p, r.k, s.f)).collect();
                        format!(", open: {}", fs.join(", "))
                    }
                    Route::GcdMain { deferred: Some(_), .. } => ", certificates deferred".to_string(),
                    _ => String::new(),
                };
                text += &format!("  p = {}: k = {}, {}-ring via {:?}{extra}\n", r.p, r.k, r.target, r.route.kind());
            }
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                for (name, cert) in plan.bundle() {
                    fs::write(dir.join(name), cert.to_json())?;
                }
                fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
            }
            let code = if plan.status == PlanStatus::Complete { 0 } else { EXIT_INCONCLUSIVE };
            Output::text(serde_json::to_value(&manifest)?, text.trim_end().to_string()).code(code)
        }
        Command::Table { from, to } => {
            if from < &2 || from > to {
                bail!(Error::InvalidArgument(format!("need 2 <= from <= to, got {from}..{to}")));
            }
            let rows = (*from..=*to).map(table_row).collect::<ringlock::Result<Vec<_>>>()?;
            let text = rows.iter().map(|r| format!("{} {}", r.n, r.label)).collect::<Vec<_>>().join("\n");
            Output::text(serde_json::to_value(&rows)?, text)
        }
        Command::Verify { files } => {
            let (mut lines, mut results) = (Vec::new(), Vec::new());
            let mut ok = true;
            for f in files {
                ok &= verify_path(f, &mut lines, &mut results)?;
            }
            let out = Output::text(Value::Array(results), lines.join("\n"));
            if ok {
                out
            } else {
                out.code(EXIT_VERIFY_FAIL)
            }
        }
        Command::Render { file, style } => {
            let s = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let c = Certificate::from_json(&s)?;
            let style = match style {
                StyleArg::Terse => Style::Terse,
                StyleArg::Tutorial => Style::Tutorial,
            };
            let text = render_certificate(&c, style)?;
            Output::text(json!({ "kind": c.kind(), "text": text }), text.trim_end().to_string())
        }
    })
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_) | Error::Parse(_) | Error::CharacteristicMismatch(..) | Error::UnboundVariable(_)) => {
            EXIT_USAGE
        }
        Some(Error::BudgetExceeded(_) | Error::NoTermination { .. }) => EXIT_INCONCLUSIVE,
        _ => EXIT_VERIFY_FAIL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let json = cli.format.map_or(out.json_default, |f| f == Format::Json);
            let body = if json { serde_json::to_string_pretty(&out.json).expect("json values serialize") } else { out.text };
            let is_plan = matches!(cli.command, Command::Plan { .. });
            match (&cli.out, is_plan) {
                (Some(path), false) => {
                    if let Err(e) = fs::write(path, body + "\n") {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(EXIT_VERIFY_FAIL);
                    }
                }
                _ => println!("{body}"),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
