//! `grass-secant`: secant dimensions of Grassmannians from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use secant_core::monomial::{
    count_outside_w, dim_w_bruteforce, dim_w_formula, MonomialCaseParams, ENUMERATION_GUARD,
};
use secant_core::secant::{
    secant_report, typical_rank, ConfigFile, FieldChoice, Method, PointSource, ReportOptions,
};
use secant_core::verify::checks;
use secant_core::{Error, GrassmannParams, SecantReport};

/// Largest ambient dimension `table` sweeps without `--force`.
const TABLE_GUARD: usize = 14;

#[derive(Parser)]
#[command(
    name = "grass-secant",
    version,
    about = "Secant varieties of Grassmannians in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the s-th secant variety of G(k, n+1).
    Dim {
        /// n+1, the dimension of V (taken from --config when omitted).
        #[arg(long, required_unless_present = "config")]
        ambient: Option<usize>,
        #[arg(long, required_unless_present = "config")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "config")]
        s: Option<usize>,
    },
    /// Sweep of (n+1, k, s) with expected and computed dimensions.
    Table {
        #[arg(long)]
        ambient_max: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        s_max: usize,
    },
    /// Smallest s whose secant variety fills the Plücker space.
    TypicalRank {
        #[arg(long)]
        ambient: usize,
        #[arg(long)]
        k: usize,
    },
    /// dim W for coordinate blocks (ks <= n+1): closed form and enumeration.
    Wdim {
        #[arg(long)]
        ambient: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Recompute every known result and report PASS/FAIL.
    VerifyPaper,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, global = true, default_value_t = FieldArg::Prime)]
    field: FieldArg,
    /// Modulus for the prime field (default 2^61-1).
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random configurations tried before accepting a dimension.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Defaults to `both` for dim and `terracini` for table.
    #[arg(long, value_enum, global = true)]
    method: Option<MethodArg>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// JSON file with `ambient`, `k` and integer `subspaces`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Lift the size guard on table sweeps.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Prime,
    Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Terracini,
    Apolar,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Terracini => Method::Terracini,
            MethodArg::Apolar => Method::Apolar,
            MethodArg::Both => Method::Both,
        }
    }
}

enum Format {
    Human,
    Json,
    Csv,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnluckyPrime(_) | Error::InternalInconsistency { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let format = if cli.run.json {
        Format::Json
    } else if cli.run.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match cli.command {
        Command::Dim { ambient, k, s } => cmd_dim(&cli.run, &format, ambient, k, s),
        Command::Table {
            ambient_max,
            k_max,
            s_max,
        } => cmd_table(&cli.run, &format, ambient_max, k_max, s_max),
        Command::TypicalRank { ambient, k } => cmd_typical_rank(&cli.run, &format, ambient, k),
        Command::Wdim { ambient, k, s } => cmd_wdim(&format, ambient, k, s),
        Command::VerifyPaper => cmd_verify(&format),
    }
}

fn report_options(
    run: &RunArgs,
    default_method: Method,
) -> std::result::Result<ReportOptions, Failure> {
    let field = match (run.field, run.prime) {
        (FieldArg::Prime, p) => {
            FieldChoice::Prime(p.unwrap_or(secant_core::exactlinalg::MERSENNE_61))
        }
        (FieldArg::Rational, None) => FieldChoice::Rational,
        (FieldArg::Rational, Some(_)) => {
            return Err(Failure::usage("--prime requires --field prime"))
        }
    };
    if let FieldChoice::Prime(p) = field {
        secant_core::PrimeField::new(p)?;
    }
    Ok(ReportOptions {
        field,
        seed: run.seed,
        trials: run.trials as usize,
        method: run.method.map_or(default_method, Method::from),
        ..Default::default()
    })
}

fn read_config(path: &PathBuf) -> std::result::Result<ConfigFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
}

fn emit(text: &str) -> CmdResult {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(0)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

const CSV_HEADER: [&str; 9] = [
    "ambient",
    "k",
    "s",
    "expected",
    "computed",
    "defect",
    "w_dim",
    "w_surplus",
    "certified",
];

fn csv_text(reports: &[SecantReport]) -> std::result::Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure {
        code: 1,
        message: e.to_string(),
    };
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record([
            r.ambient.to_string(),
            r.k.to_string(),
            r.s.to_string(),
            r.expected_dim.to_string(),
            r.computed_dim.to_string(),
            r.defect.to_string(),
            r.w_dim.to_string(),
            r.w_surplus.to_string(),
            r.certified_nondefective.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn human_report(r: &SecantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "G({}, {}) in P^{}, dim {}, s = {}",
        r.k, r.ambient, r.projective_dim, r.grass_dim, r.s
    );
    let _ = writeln!(s, "expected dim   {}", r.expected_dim);
    let _ = writeln!(s, "computed dim   {}", r.computed_dim);
    if r.computed_dim == r.projective_dim {
        let _ = writeln!(s, "               fills P^{}", r.projective_dim);
    }
    let _ = writeln!(s, "dim W          {}", r.w_dim);
    let _ = writeln!(s, "defect         {}", r.defect);
    let _ = writeln!(s, "W surplus      {}", r.w_surplus);
    let field = match r.prime {
        Some(p) => format!("F_{p}"),
        None => "Q".to_string(),
    };
    let _ = writeln!(
        s,
        "method {}, field {field}, seed {}, trials {}",
        r.method.name(),
        r.seed,
        r.trials
    );
    s
}

fn cmd_dim(
    run: &RunArgs,
    format: &Format,
    ambient: Option<usize>,
    k: Option<usize>,
    s: Option<usize>,
) -> CmdResult {
    let mut opts = report_options(run, Method::Both)?;
    let (ambient, k, s) = match &run.config {
        Some(path) => {
            let file = read_config(path)?;
            let dims = (
                ambient.unwrap_or(file.ambient),
                k.unwrap_or(file.k),
                s.unwrap_or(file.subspaces.len()),
            );
            opts.source = PointSource::User(file);
            dims
        }
        None => (
            ambient.expect("required"),
            k.expect("required"),
            s.expect("required"),
        ),
    };
    let report = secant_report(ambient, k, s, &opts)?;
    match format {
        Format::Json => emit(&to_json(&report)),
        Format::Csv => emit(&csv_text(std::slice::from_ref(&report))?),
        Format::Human => emit(&human_report(&report)),
    }
}

fn cmd_table(
    run: &RunArgs,
    format: &Format,
    ambient_max: usize,
    k_max: usize,
    s_max: usize,
) -> CmdResult {
    if ambient_max > TABLE_GUARD && !run.force {
        return Err(Failure::usage(format!(
            "--ambient-max {ambient_max} exceeds {TABLE_GUARD}; pass --force to sweep anyway"
        )));
    }
    if run.config.is_some() {
        return Err(Failure::usage("table does not take --config"));
    }
    let opts = report_options(run, Method::Terracini)?;
    let mut triples = Vec::new();
    let mut skipped = 0;
    for ambient in 3..=ambient_max {
        for k in 2..=k_max.min(ambient - 1) {
            if 2 * k > ambient {
                skipped += 1;
                continue;
            }
            triples.extend((1..=s_max).map(|s| (ambient, k, s)));
        }
    }
    if skipped > 0 && s_max > 0 {
        eprintln!(
            "note: skipped {skipped} (n+1, k) pairs with 2k > n+1; G(k, n+1) = G(n+1-k, n+1)"
        );
    }
    let reports = triples
        .par_iter()
        .map(|&(a, k, s)| secant_report(a, k, s, &opts))
        .collect::<secant_core::Result<Vec<_>>>()?;
    match format {
        Format::Json => emit(&to_json(&reports)),
        Format::Csv => emit(&csv_text(&reports)?),
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>7} {:>3} {:>3} {:>8} {:>8} {:>6} {:>6} {:>9}",
                "n+1", "k", "s", "expected", "computed", "defect", "dim W", "W surplus"
            );
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{:>7} {:>3} {:>3} {:>8} {:>8} {:>6} {:>6} {:>9}",
                    r.ambient,
                    r.k,
                    r.s,
                    r.expected_dim,
                    r.computed_dim,
                    r.defect,
                    r.w_dim,
                    r.w_surplus
                );
            }
            emit(&out)
        }
    }
}

#[derive(Serialize)]
struct TypicalRankOut {
    ambient: usize,
    k: usize,
    #[serde(rename = "N")]
    projective_dim: u64,
    typical_rank: usize,
}

fn cmd_typical_rank(run: &RunArgs, format: &Format, ambient: usize, k: usize) -> CmdResult {
    let opts = report_options(run, Method::Terracini)?;
    let params = GrassmannParams::new(ambient, k)?;
    let rank = typical_rank(ambient, k, &opts)?;
    let out = TypicalRankOut {
        ambient,
        k,
        projective_dim: params.projective_dim(),
        typical_rank: rank,
    };
    match format {
        Format::Json => emit(&to_json(&out)),
        Format::Csv => emit(&format!(
            "ambient,k,N,typical_rank\n{ambient},{k},{},{rank}\n",
            out.projective_dim
        )),
        Format::Human => emit(&format!("E({k}, {ambient}) = {rank}\n")),
    }
}

#[derive(Serialize)]
struct WdimOut {
    ambient: usize,
    k: usize,
    s: usize,
    formula: u64,
    bruteforce: Option<u64>,
    outside: Option<u64>,
    agree: bool,
}

fn cmd_wdim(format: &Format, ambient: usize, k: usize, s: usize) -> CmdResult {
    let p = MonomialCaseParams::new(ambient, k, s)?;
    let formula = dim_w_formula(&p);
    let bruteforce = if ambient <= ENUMERATION_GUARD {
        Some(dim_w_bruteforce(&p)?)
    } else {
        eprintln!("note: enumeration skipped above n+1 = {ENUMERATION_GUARD}");
        None
    };
    let outside = count_outside_w(&p).ok();
    let agree = bruteforce.is_none_or(|b| b == formula);
    let out = WdimOut {
        ambient,
        k,
        s,
        formula,
        bruteforce,
        outside,
        agree,
    };
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    match format {
        Format::Json => emit(&to_json(&out))?,
        Format::Csv => emit(&format!(
            "ambient,k,s,formula,bruteforce,outside\n{ambient},{k},{s},{formula},{},{}\n",
            opt(bruteforce),
            opt(outside)
        ))?,
        Format::Human => emit(&format!(
            "dim W for G({k}, {ambient}), s = {s}\nformula      {formula}\nenumeration  {}\noutside W    {}\n",
            opt(bruteforce),
            opt(outside)
        ))?,
    };
    Ok(if agree { 0 } else { 1 })
}

#[derive(Serialize)]
struct VerifyLine {
    id: usize,
    name: &'static str,
    claim: &'static str,
    passed: bool,
    detail: String,
}

fn cmd_verify(format: &Format) -> CmdResult {
    let mut lines = Vec::new();
    let mut all = true;
    for check in checks() {
        let o = check.run();
        let passed = o.passed && o.within_time();
        all &= passed;
        if !o.within_time() {
            eprintln!(
                "check {} took {:.3}s, limit {}s",
                o.id,
                o.elapsed.as_secs_f64(),
                o.time_limit.as_secs()
            );
        }
        lines.push(VerifyLine {
            id: o.id,
            name: o.name,
            claim: o.claim,
            passed,
            detail: o.detail,
        });
    }
    match format {
        Format::Json => emit(&to_json(&lines))?,
        _ => {
            let mut out = String::new();
            for l in &lines {
                let _ = writeln!(
                    out,
                    "{} [{:>2}] {}: {} | {}",
                    if l.passed { "PASS" } else { "FAIL" },
                    l.id,
                    l.name,
                    l.claim,
                    l.detail
                );
            }
            emit(&out)?
        }
    };
    Ok(if all { 0 } else { 1 })
}
