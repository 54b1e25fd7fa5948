//! Command-line front end. Exit codes: 0 success or agreement, 1 crosscheck
//! anomalies, 2 usage errors, 3 I/O failures.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{classify, Classification, JacobianDecision, NotWeilReason, SurfaceType};
use crate::numth::{recognize_prime_power, PrimePower};
use crate::oracle::{self, CacheDocument, OracleError, OracleOptions};
use crate::weil::{enumerate_candidates, SplitPair, WeilCandidate, MAX_ENUMERATION_Q};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALIES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weilsurf",
    version,
    about = "Abelian surfaces and genus-2 Jacobians over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Jacobian,
    NoJacobian,
    NotWeil,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify x^4 + a x^3 + b x^2 + a q x + q^2.
    Classify {
        #[arg(long)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: RecordFormat,
    },
    /// List every candidate for q with its classification.
    Enumerate {
        #[arg(long)]
        q: i64,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
        #[arg(long, value_enum, default_value = "csv")]
        format: ListFormat,
    },
    /// Compare the classifier with an exhaustive curve census.
    Crosscheck {
        #[arg(long)]
        q: u64,
        #[arg(long, env = "WEILSURF_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        allow_stretch: bool,
    },
    /// Run the curve census and write its JSON document.
    Oracle {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        allow_stretch: bool,
    },
    /// Per-q summary of the candidate census.
    Table {
        #[arg(long)]
        q: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub a: i64,
    pub b: i64,
    pub shape_ok: bool,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_weil_reason: Option<NotWeilReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_rank: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principally_polarizable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<JacobianDecision>,
}

impl From<&Classification> for OutputRecord {
    fn from(c: &Classification) -> Self {
        let f = c.candidate.field;
        OutputRecord {
            q: f.q(),
            p: f.p(),
            m: f.m(),
            a: c.candidate.a,
            b: c.candidate.b,
            shape_ok: c.shape_ok,
            surface: c.surface.name().to_string(),
            not_weil_reason: match c.surface {
                SurfaceType::NotWeil(r) => Some(r),
                _ => None,
            },
            p_rank: c.p_rank,
            simple: c.simple,
            split: c.split,
            principally_polarizable: c.principally_polarizable,
            jacobian: c.jacobian,
        }
    }
}

impl OutputRecord {
    fn text(&self) -> String {
        let mut out = format!("q={} a={} b={}: {}", self.q, self.a, self.b, self.surface);
        if let Some(r) = self.not_weil_reason {
            out += &format!(" ({})", r.code());
        }
        if let Some(p) = self.p_rank {
            out += &format!(", p-rank {p}");
        }
        match (self.simple, self.split) {
            (Some(false), Some(sp)) => out += &format!(", split (s={}, t={})", sp.s, sp.t),
            (Some(true), _) => out += ", simple",
            _ => {}
        }
        if let Some(pp) = self.principally_polarizable {
            out += if pp {
                ", principally polarizable"
            } else {
                ", not principally polarizable"
            };
        }
        if let Some(j) = self.jacobian {
            out += &if j.exists {
                ", Jacobian exists".to_string()
            } else {
                format!(", no Jacobian (rule {})", j.rule)
            };
        }
        out
    }
}

/// One CSV line; absent fields are empty cells.
#[derive(Debug, Serialize)]
struct CsvRow {
    q: u64,
    a: i64,
    b: i64,
    surface: String,
    p_rank: Option<u8>,
    simple: Option<bool>,
    s: Option<i64>,
    t: Option<i64>,
    polarizable: Option<bool>,
    jacobian: Option<bool>,
    rule: Option<String>,
}

impl From<&OutputRecord> for CsvRow {
    fn from(r: &OutputRecord) -> Self {
        CsvRow {
            q: r.q,
            a: r.a,
            b: r.b,
            surface: r.surface.clone(),
            p_rank: r.p_rank,
            simple: r.simple,
            s: r.split.map(|sp| sp.s),
            t: r.split.map(|sp| sp.t),
            polarizable: r.principally_polarizable,
            jacobian: r.jacobian.map(|j| j.exists),
            rule: r.jacobian.map(|j| j.rule.to_string()),
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.to_string(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Unsupported { .. } => EXIT_USAGE,
            OracleError::Io { .. } => EXIT_IO,
            _ => EXIT_ANOMALIES,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn field_for(q: i64) -> Result<PrimePower, Failure> {
    let not_pp = || Failure::usage(format!("q must be a prime power (got {q})"));
    let field = recognize_prime_power(q as i128)
        .map_err(|_| not_pp())?
        .ok_or_else(not_pp)?;
    if field.q() > MAX_ENUMERATION_Q {
        return Err(Failure::usage(format!(
            "q must be at most {MAX_ENUMERATION_Q} (got {q})"
        )));
    }
    Ok(field)
}

fn options(jobs: Option<usize>, cache_dir: Option<PathBuf>) -> Result<OracleOptions, Failure> {
    let mut opts = OracleOptions {
        cache_dir,
        ..OracleOptions::default()
    };
    match jobs {
        Some(0) => return Err(Failure::usage("--jobs must be positive")),
        Some(n) => opts.jobs = n,
        None => {}
    }
    Ok(opts)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Classify { q, a, b, format } => {
            let record = OutputRecord::from(&classify(&WeilCandidate::new(field_for(q)?, a, b)));
            match format {
                RecordFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&record).expect("serializable")
                )?,
                RecordFormat::Text => writeln!(out, "{}", record.text())?,
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { q, filter, format } => {
            let field = field_for(q)?;
            let candidates =
                enumerate_candidates(field).map_err(|e| Failure::usage(e.to_string()))?;
            let records: Vec<OutputRecord> = candidates
                .iter()
                .map(classify)
                .filter(|c| match filter {
                    Filter::All => true,
                    Filter::Jacobian => c.has_jacobian(),
                    Filter::NoJacobian => c.jacobian.is_some_and(|j| !j.exists),
                    Filter::NotWeil => !c.surface.is_valid(),
                })
                .map(|c| OutputRecord::from(&c))
                .collect();
            match format {
                ListFormat::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    for r in &records {
                        w.serialize(CsvRow::from(r)).map_err(Failure::io)?;
                    }
                    w.flush()?;
                }
                ListFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&records).expect("serializable")
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Crosscheck {
            q,
            cache_dir,
            jobs,
            allow_stretch,
        } => {
            let field = oracle::supported_field(q, allow_stretch)?;
            let opts = options(jobs, cache_dir)?;
            let start = Instant::now();
            let report = oracle::crosscheck(field, &opts)?;
            let census = &report.census;
            writeln!(
                out,
                "q={q}: {} models in {} realized classes{}; {} candidates, {} with a Jacobian predicted; {:.2}s",
                census.models(),
                census.realized.len(),
                if census.from_cache { " (cached)" } else { "" },
                report.candidates,
                report.classifier_positive,
                start.elapsed().as_secs_f64()
            )?;
            for x in &report.anomalies {
                writeln!(
                    out,
                    "ANOMALY ({}, {}): {:?}, classifier says {} rule {}, {} models",
                    x.a,
                    x.b,
                    x.kind,
                    x.surface,
                    x.rule.map_or("-".to_string(), |r| r.to_string()),
                    x.models
                )?;
            }
            if report.agrees() {
                writeln!(out, "agreement: 0 anomalies")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "disagreement: {} anomalies", report.anomalies.len())?;
                Ok(EXIT_ANOMALIES)
            }
        }
        Command::Oracle {
            q,
            out: path,
            jobs,
            allow_stretch,
        } => {
            let field = oracle::supported_field(q, allow_stretch)?;
            let opts = options(jobs, None)?;
            let census = oracle::realized_map(field, &opts)?;
            oracle::cache::write(&path, &CacheDocument::from_census(&census))?;
            writeln!(
                out,
                "q={q}: {} models, {} classes -> {}",
                census.models(),
                census.realized.len(),
                path.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::Table { q } => {
            let field = field_for(q)?;
            let candidates =
                enumerate_candidates(field).map_err(|e| Failure::usage(e.to_string()))?;
            write_table(out, field, &candidates)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_table(
    out: &mut dyn Write,
    field: PrimePower,
    candidates: &[WeilCandidate],
) -> std::io::Result<()> {
    let mut by_surface: BTreeMap<String, [usize; 2]> = BTreeMap::new();
    let mut by_rule: BTreeMap<String, usize> = BTreeMap::new();
    for c in candidates.iter().map(classify) {
        let name = match c.surface {
            SurfaceType::NotWeil(r) => format!("not_weil/{}", r.code()),
            s => format!(
                "{}/{}",
                s.name(),
                if c.simple == Some(true) {
                    "simple"
                } else {
                    "split"
                }
            ),
        };
        by_surface.entry(name).or_default()[c.has_jacobian() as usize] += 1;
        if let Some(j) = c.jacobian.filter(|j| !j.exists) {
            *by_rule.entry(j.rule.to_string()).or_default() += 1;
        }
    }
    writeln!(
        out,
        "q = {} (p = {}, m = {}): {} candidates",
        field.q(),
        field.p(),
        field.m(),
        candidates.len()
    )?;
    writeln!(out, "{:<26} {:>8} {:>8}", "class", "jacobian", "none")?;
    for (name, [no, yes]) in &by_surface {
        writeln!(out, "{name:<26} {yes:>8} {no:>8}")?;
    }
    writeln!(out, "{:<26} {:>8}", "obstruction rule", "classes")?;
    for (rule, n) in &by_rule {
        writeln!(out, "{rule:<26} {n:>8}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("weilsurf").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_json() {
        let (code, out, _) = run_str(&["classify", "--q", "2", "--a", "0", "--b", "3"]);
        assert_eq!(code, 0);
        let r: OutputRecord = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(r.jacobian.unwrap().rule.to_string(), "R2");
        assert!(!r.jacobian.unwrap().exists);
    }

    #[test]
    fn classify_rejects_non_prime_power() {
        let (code, _, err) = run_str(&["classify", "--q", "12", "--a", "0", "--b", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("q must be a prime power"));
    }

    #[test]
    fn negative_arguments_parse() {
        let (code, out, _) = run_str(&[
            "classify", "--q", "7", "--a", "0", "--b", "-7", "--format", "text",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("rule S0"), "{out}");
    }

    #[test]
    fn record_round_trip() {
        for (q, a, b) in [(2, 0, 3), (7, 0, 14), (4, 2, 2), (9, 1, 3), (2, 9, 0)] {
            let field = recognize_prime_power(q).unwrap().unwrap();
            let r = OutputRecord::from(&classify(&WeilCandidate::new(field, a, b)));
            let json = serde_json::to_string(&r).unwrap();
            let back: OutputRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r);
            assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
    }
}
