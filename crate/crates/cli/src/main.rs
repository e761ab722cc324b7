use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qlab_core::fusionchar::{
    graded_13_char, verify_abf, verify_exact_sequence_chars, verify_grading, verify_i1_sector,
    verify_pi2pi3, verify_pmn,
};
use qlab_core::pathweights::{
    count_paths, enumerate_paths, verify_tau, verify_x_bruteforce, verify_xandf, ModelParams,
    TauTable,
};
use qlab_core::supernomial::verify_s_recurrences;
use qlab_core::vircharacters::{
    rocha_caridi, verify_gen, verify_iands, verify_nonnegativity, verify_partition_expansion,
    verify_rigged, verify_rocha2,
};
use qlab_core::{Error, QExp, QSeries, SuiteReport};

/// Prints to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

const FIVE_MODELS: [(i64, i64); 5] = [(3, 4), (4, 5), (5, 7), (4, 7), (5, 8)];

#[derive(Parser)]
#[command(name = "qlab", version, about = "Exact q-series character identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long, env = "QLAB_JOBS", global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Normalised minimal-model character q^{-Delta} chi_{r,s} through degree qmax.
    Char {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 40)]
        qmax: i64,
    },
    /// Restricted paths from a to b with m steps.
    Paths(PathsArgs),
    /// Graded pieces of the unitary (k+2, k+3) character, one series per m.
    Grading {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 6)]
        mmax: i64,
        #[arg(long, default_value_t = 40)]
        qmax: i64,
    },
    /// Runs one verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Runs every suite at its default parameters.
    All,
}

#[derive(Args)]
struct Model {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    pp: i64,
}

#[derive(Args)]
struct PathsArgs {
    #[command(flatten)]
    model: Model,
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    #[arg(long)]
    m: usize,
    /// Every path with its energy.
    #[arg(long, group = "mode")]
    list: bool,
    /// Number of paths (default).
    #[arg(long, group = "mode")]
    count: bool,
    /// Sum of q^E over the paths.
    #[arg(long, group = "mode")]
    gf: bool,
}

#[derive(Args, Default)]
struct VerifyOpts {
    /// Model; suites that take one default to (3,4), (4,5), (5,7), (4,7), (5,8).
    #[arg(long)]
    p: Option<i64>,
    /// With `tau`, the largest p' swept (default 40).
    #[arg(long)]
    pp: Option<i64>,
    /// Restricts rocha2 to a single (r, a, b).
    #[arg(long, requires_all = ["a", "b"])]
    r: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    mmax: Option<i64>,
    /// Highest degree compared.
    #[arg(long)]
    qmax: Option<i64>,
    /// Level for abf, grading and i1sector.
    #[arg(long)]
    k: Option<i64>,
    /// Size for abf, pmn and exactseq.
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Supernomial,
    Tau,
    Xandf,
    Xbrute,
    Rocha2,
    Partition,
    Gen,
    Iands,
    Nonneg,
    Rigged,
    Pi2pi3,
    Pmn,
    Exactseq,
    Abf,
    Grading,
    I1sector,
}

impl Suite {
    fn default_qmax(self) -> i64 {
        match self {
            Suite::Rigged => 20,
            Suite::Pi2pi3 => 30,
            Suite::Abf => 15,
            _ => 40,
        }
    }

    fn default_mmax(self) -> i64 {
        match self {
            Suite::Supernomial => 8,
            Suite::Xandf => 5,
            _ => 6,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn models(opts: &VerifyOpts) -> Result<Vec<ModelParams>, Error> {
    match (opts.p, opts.pp) {
        (Some(p), Some(pp)) => Ok(vec![ModelParams::new(p, pp)?]),
        (None, None) => FIVE_MODELS.iter().map(|&(p, pp)| ModelParams::new(p, pp)).collect(),
        _ => Err(Error::Precondition("--p and --pp must be given together".into())),
    }
}

fn tau_tables(opts: &VerifyOpts) -> Result<Vec<TauTable>, Error> {
    models(opts)?.into_iter().map(TauTable::new).collect()
}

fn nonneg(x: i64, name: &str) -> Result<i64, Error> {
    if x < 0 {
        Err(Error::OutOfRange(format!("--{name} must be nonnegative, got {x}")))
    } else {
        Ok(x)
    }
}

fn run_suite(suite: Suite, o: &VerifyOpts) -> Result<Vec<SuiteReport>, Error> {
    let qmax = nonneg(o.qmax.unwrap_or(suite.default_qmax()), "qmax")?;
    let mmax = nonneg(o.mmax.unwrap_or(suite.default_mmax()), "mmax")?;
    let cutoff = QExp::int(qmax + 1);
    let k = o.k.unwrap_or(1);
    Ok(match suite {
        Suite::Supernomial => vec![verify_s_recurrences(mmax + 1)],
        Suite::Tau => vec![verify_tau(o.pp.unwrap_or(40))],
        Suite::Xandf => tau_tables(o)?.iter().map(|t| verify_xandf(t, mmax as usize)).collect(),
        Suite::Xbrute => tau_tables(o)?
            .iter()
            .map(|t| verify_x_bruteforce(t, mmax as usize))
            .collect(),
        Suite::Rocha2 => {
            let mut out = Vec::new();
            for params in models(o)? {
                let cases = match (o.r, o.a, o.b) {
                    (Some(r), Some(a), Some(b)) => {
                        params.check_r(r)?;
                        params.check_s(a)?;
                        vec![(r, a, b)]
                    }
                    _ => rocha2_cases(&params)?,
                };
                out.push(verify_rocha2(&params, &cases, cutoff));
            }
            out
        }
        Suite::Partition => vec![verify_partition_expansion(5, cutoff)],
        Suite::Gen => tau_tables(o)?.iter().map(|t| verify_gen(t, mmax as usize)).collect(),
        Suite::Iands => tau_tables(o)?.iter().map(|t| verify_iands(t, mmax as usize)).collect(),
        Suite::Nonneg => models(o)?
            .iter()
            .map(|pm| verify_nonnegativity(pm, mmax as usize))
            .collect(),
        Suite::Rigged => {
            let tables = match (o.p, o.pp) {
                (Some(_), Some(_)) => tau_tables(o)?,
                _ => vec![
                    TauTable::new(ModelParams::new(3, 4)?)?,
                    TauTable::new(ModelParams::new(4, 5)?)?,
                ],
            };
            tables.iter().map(|t| verify_rigged(t, qmax + 1)).collect()
        }
        Suite::Pi2pi3 => vec![verify_pi2pi3(cutoff)],
        Suite::Pmn => vec![verify_pmn(o.n.unwrap_or(6))],
        Suite::Exactseq => vec![verify_exact_sequence_chars(o.n.unwrap_or(5))],
        Suite::Abf => {
            ModelParams::unitary(k)?;
            vec![verify_abf(k, o.n.unwrap_or(20), qmax)]
        }
        Suite::Grading => {
            let k_max = o.k.unwrap_or(3);
            ModelParams::unitary(k_max)?;
            vec![verify_grading(k_max, mmax, cutoff)]
        }
        Suite::I1sector => {
            ModelParams::unitary(k)?;
            vec![verify_i1_sector(k, mmax, cutoff)]
        }
    })
}

/// Every `(r, a)` with the minimising `b`, plus `b = a` when that differs.
fn rocha2_cases(params: &ModelParams) -> Result<Vec<(i64, i64, i64)>, Error> {
    let mut cases = Vec::new();
    for r in 1..params.p {
        for a in 1..params.pp {
            let b = params.b_of(r, a)?;
            cases.push((r, a, b));
            if b != a {
                cases.push((r, a, a));
            }
        }
    }
    Ok(cases)
}

fn default_suites() -> Vec<Suite> {
    Suite::value_variants().to_vec()
}

fn coefficients(s: &QSeries, from: i64, to: i64) -> Vec<String> {
    s.dense(from, to).iter().map(|c| c.to_string()).collect()
}

fn exp_json(e: QExp) -> Value {
    json!({ "num": e.numer(), "den": e.denom() })
}

fn emit_value(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn emit_reports(reports: &[SuiteReport], format: Format) {
    match format {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("serializable"))
                .collect();
            emit_value(&Value::Array(v));
        }
        Format::Csv => {
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                // one header for the whole stream
                let body = if i == 0 { &csv[..] } else { csv.split_once('\n').map_or("", |x| x.1) };
                let _ = std::io::stdout().lock().write_all(body.as_bytes());
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Char { model, r, s, qmax } => {
            let params = ModelParams::new(model.p, model.pp)?;
            params.check_r(r)?;
            params.check_s(s)?;
            let qmax = nonneg(qmax, "qmax")?;
            let chi = rocha_caridi(&params, r, s, QExp::int(qmax + 1));
            let coeffs = coefficients(&chi, 0, qmax + 1);
            match cli.format {
                Format::Json => emit_value(&json!({
                    "p": params.p, "pp": params.pp, "r": r, "s": s,
                    "delta": exp_json(params.delta(r, s)),
                    "qmax": qmax,
                    "coefficients": coeffs,
                })),
                Format::Csv => {
                    out!("degree,coefficient");
                    for (d, c) in coeffs.iter().enumerate() {
                        out!("{d},{c}");
                    }
                }
            }
        }
        Command::Paths(args) => {
            let params = ModelParams::new(args.model.p, args.model.pp)?;
            let pp = params.pp;
            for (name, v) in [("a", args.a), ("b", args.b)] {
                if !(1..pp).contains(&v) {
                    return Err(Error::OutOfRange(format!("--{name}={v} outside 1..{}", pp - 1)));
                }
            }
            if args.list || args.gf {
                let tau = TauTable::new(params)?;
                let paths = enumerate_paths(args.a, args.b, args.m, pp);
                if args.list {
                    let rows: Vec<(Vec<i64>, QExp)> = paths
                        .iter()
                        .map(|p| (p.steps().to_vec(), p.energy(&tau)))
                        .collect();
                    match cli.format {
                        Format::Json => emit_value(&Value::Array(
                            rows.iter()
                                .map(|(s, e)| json!({ "steps": s, "energy": exp_json(*e) }))
                                .collect(),
                        )),
                        Format::Csv => {
                            out!("steps,energy");
                            for (s, e) in rows {
                                let s: Vec<String> = s.iter().map(i64::to_string).collect();
                                out!("{},{e}", s.join(" "));
                            }
                        }
                    }
                } else {
                    let gf = QSeries::sum(
                        paths
                            .iter()
                            .map(|p| QSeries::monomial(1, p.energy(&tau)))
                            .collect::<Vec<_>>()
                            .iter(),
                    );
                    match cli.format {
                        Format::Json => emit_value(&json!({ "series": gf, "display": gf.to_string() })),
                        Format::Csv => {
                            out!("num,den,coefficient");
                            for (e, c) in gf.terms() {
                                out!("{},{},{c}", e.numer(), e.denom());
                            }
                        }
                    }
                }
            } else {
                let n = count_paths(args.a, args.b, args.m, pp);
                match cli.format {
                    Format::Json => out!("{}", json!(n.to_string())),
                    Format::Csv => out!("count\n{n}"),
                }
            }
        }
        Command::Grading { k, r, s, mmax, qmax } => {
            let params = ModelParams::unitary(k)?;
            params.check_r(r)?;
            params.check_s(s)?;
            let qmax = nonneg(qmax, "qmax")?;
            let delta = params.delta(r, s);
            let mut pieces = Vec::new();
            for m in 0..=nonneg(mmax, "mmax")? {
                let g = graded_13_char(k, r, s, m, QExp::int(qmax + 1))?;
                // coefficients of q^{Delta + d}, d = 0 ..= qmax
                pieces.push((m, coefficients(&g.shift(-delta), 0, qmax + 1), g));
            }
            match cli.format {
                Format::Json => emit_value(&json!({
                    "k": k, "r": r, "s": s,
                    "delta": exp_json(delta),
                    "qmax": qmax,
                    "pieces": pieces.iter().map(|(m, c, g)| json!({
                        "m": m, "coefficients": c, "series": g,
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out!("m,degree,coefficient");
                    for (m, c, _) in &pieces {
                        for (d, x) in c.iter().enumerate() {
                            out!("{m},{d},{x}");
                        }
                    }
                }
            }
        }
        Command::Verify { suite, opts } => {
            let reports = run_suite(suite, &opts)?;
            emit_reports(&reports, cli.format);
            return Ok(exit_for(&reports));
        }
        Command::All => {
            let opts = VerifyOpts::default();
            let mut reports = Vec::new();
            for suite in default_suites() {
                reports.extend(run_suite(suite, &opts)?);
            }
            emit_reports(&reports, cli.format);
            for r in &reports {
                eprintln!("{}", r.summary());
            }
            return Ok(exit_for(&reports));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(reports: &[SuiteReport]) -> ExitCode {
    if reports.iter().all(SuiteReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            return usage("--jobs must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return usage(e);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => usage(e),
    }
}
