use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qhsa::config::{load_datum, parse_pi, ConfigError, LoadedDatum, RunConfig, Suite};
use qhsa::core::datum::{parse_word, word_name, Weight};
use qhsa::core::ktheory::{idempotent_trunc_dim, mackey_dim_check, pairing_check, serre_categorified_check};
use qhsa::core::qhsa::Straightener;
use qhsa::core::scalar::{DimSeries, PiMode};
use qhsa::{data, explain, suites};

#[derive(Parser)]
#[command(
    name = "qhsa",
    version,
    about = "Exact checks for quiver Hecke superalgebras and covering quantum Borcherds algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct DatumArg {
    /// Datum file, or `bundled:NAME` (super, even, mixed, orthogonal).
    #[arg(long, default_value = "bundled:super")]
    config: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a report.
    Run(RunArgs),
    /// Describe the identity behind a check id or suite.
    Explain { id: String },
    /// List the suite registry.
    Suites,
    /// Validate a datum file and its Q / gamma tables.
    Validate(DatumArg),
    /// Export the Gram matrix of one weight, e.g. `--nu i:2,j:1`.
    Gram {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        max_height: u32,
    },
    /// Pass/fail table of the boson identities.
    Boson {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        max_height: Option<u32>,
        #[arg(long, default_value = "minus", value_parser = parse_pi)]
        pi: PiMode,
    },
    /// Compare dim 1_target R 1_source with {θ_source, θ_target} per degree.
    Pair {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 20)]
        order: i64,
    },
    /// Categorified Serre relation for (i, j, n), per label and degree.
    SerreCat {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Mackey dimension identity for Res_{ν,ν′} Ind (P_𝕚 ⊗ P_𝕛).
    Mackey {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        nu2: String,
        /// The word 𝕚 (its weight is μ).
        #[arg(long)]
        left: String,
        /// The word 𝕛 (its weight is μ′).
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 12)]
        order: i64,
    },
    /// Graded dimension of 1_target R e for an idempotent expression e.
    TruncDim {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        target: String,
        /// Expression such as `x(1)*t(1)*e(i,i)`.
        #[arg(long)]
        idempotent: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Straighten an expression into the basis x^u τ_w 1_𝕚.
    NormalForm {
        #[command(flatten)]
        datum: DatumArg,
        expr: String,
    },
    /// Multiply two expressions.
    Mult {
        #[command(flatten)]
        datum: DatumArg,
        left: String,
        right: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Datum file or `bundled:NAME`; repeatable. Defaults to every bundled datum.
    #[arg(long)]
    config: Vec<String>,
    /// Suite name; repeatable or comma-separated. Defaults to every suite.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long)]
    max_height: Option<u32>,
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, default_value = "minus", value_parser = parse_pi)]
    pi: PiMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report path; the timings go to `<PATH>.timings`. Without it the report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DegreeRow {
    q: i64,
    even: Vec<String>,
    odd: Vec<String>,
}

/// One row per degree, columns in the order of `series`.
fn degree_table(series: &[&DimSeries]) -> Vec<DegreeRow> {
    let order = series.iter().map(|s| s.order()).min().unwrap_or(0);
    let low = series.iter().map(|s| s.low_bound()).min().unwrap_or(0);
    (low..=order)
        .filter_map(|q| {
            let coeffs: Vec<_> = series.iter().map(|s| s.coeff(q)).collect();
            if coeffs.iter().all(|(a, b)| a == &0.into() && b == &0.into()) {
                return None;
            }
            Some(DegreeRow {
                q,
                even: coeffs.iter().map(|(a, _)| a.to_string()).collect(),
                odd: coeffs.iter().map(|(_, b)| b.to_string()).collect(),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct PairOut {
    source: String,
    target: String,
    order: i64,
    orientation: &'static str,
    columns: [&'static str; 2],
    holds: bool,
    degree: Vec<DegreeRow>,
}

#[derive(Serialize)]
struct SerreCatOut {
    i: String,
    j: String,
    n: usize,
    order: i64,
    columns: [&'static str; 2],
    holds: bool,
    label: Vec<SerreCatLabel>,
}

#[derive(Serialize)]
struct SerreCatLabel {
    label: String,
    holds: bool,
    degree: Vec<DegreeRow>,
}

#[derive(Serialize)]
struct MackeyOut {
    order: i64,
    terms: usize,
    columns: [&'static str; 2],
    holds: bool,
    degree: Vec<DegreeRow>,
}

#[derive(Serialize)]
struct TruncOut {
    target: String,
    idempotent: String,
    order: i64,
    degree: Vec<DegreeRow>,
}

#[derive(Serialize)]
struct GramOut {
    weight: String,
    kappa: String,
    words: Vec<String>,
    /// Entries divided by `kappa`.
    core: Vec<Vec<String>>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Other(String),
}

fn other<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Other(e.to_string())
}

fn load(arg: &DatumArg) -> Result<LoadedDatum, CliError> {
    let d = load_datum(&arg.config)?;
    d.hecke.validate().map_err(|violation| ConfigError::Invalid { name: d.name.clone(), violation })?;
    Ok(d)
}

fn print_toml<T: Serialize>(value: &T) -> Result<(), CliError> {
    print!("{}", toml::to_string(value).map_err(other)?);
    Ok(())
}

fn run(args: RunArgs) -> Result<bool, CliError> {
    let datums = if args.config.is_empty() {
        data::all()
    } else {
        args.config.iter().map(|c| load_datum(c)).collect::<Result<_, _>>()?
    };
    let mut cfg = RunConfig::new(datums);
    if !args.suite.is_empty() {
        let suites: Vec<Suite> = args.suite.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        cfg = cfg.with_suites(&suites);
    }
    cfg.max_height = args.max_height;
    cfg.order = args.order;
    cfg.pi = args.pi;
    cfg.seed = args.seed;
    cfg.jobs = args.jobs;
    cfg.out = args.out;
    let report = suites::run(&cfg)?;
    if cfg.out.is_some() {
        print!("{}", report.table());
    } else {
        print!("{}", report.to_toml());
    }
    Ok(report.all_passed())
}

fn dispatch(cmd: Cmd) -> Result<bool, CliError> {
    match cmd {
        Cmd::Run(args) => run(args),
        Cmd::Explain { id } => {
            print!("{}", explain::explain(&id).map_err(other)?);
            Ok(true)
        }
        Cmd::Suites => {
            for s in Suite::ALL {
                println!("{s}");
            }
            Ok(true)
        }
        Cmd::Validate(arg) => {
            let violation = match load_datum(&arg.config) {
                Ok(d) => d.hecke.validate().map(|()| d.name.clone()).map_err(|v| (d.name, v)),
                Err(ConfigError::Invalid { name, violation }) => Err((name, violation)),
                Err(e) => return Err(e.into()),
            };
            match violation {
                Ok(name) => {
                    println!("{name}: ok");
                    Ok(true)
                }
                Err((name, v)) => {
                    println!("{name}: fails axiom {}: {v}", v.axiom());
                    Ok(false)
                }
            }
        }
        Cmd::Gram { datum, nu, max_height } => {
            let l = load(&datum)?;
            let d = l.datum();
            let w = Weight::parse(&nu, d).map_err(other)?;
            let g = qhsa::core::covering::gram(d, &w, max_height).map_err(other)?;
            print_toml(&GramOut {
                weight: w.display(d).to_string(),
                kappa: g.kappa.to_string(),
                words: g.words.iter().map(|x| word_name(d, x)).collect(),
                core: g.core.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect(),
            })?;
            Ok(true)
        }
        Cmd::Boson { datum, max_height, pi } => {
            let mut cfg = RunConfig::new(vec![load(&datum)?]).with_suites(&[Suite::BosonIdentities]);
            cfg.max_height = max_height;
            cfg.pi = pi;
            let report = suites::run(&cfg)?;
            print!("{}", report.table());
            Ok(report.all_passed())
        }
        Cmd::Pair { datum, source, target, order } => {
            let l = load(&datum)?;
            let d = l.datum();
            let (s, t) = (parse_word(d, &source).map_err(other)?, parse_word(d, &target).map_err(other)?);
            let rep = pairing_check(d, &s, &t, order).map_err(other)?;
            print_toml(&PairOut {
                source: word_name(d, &s),
                target: word_name(d, &t),
                order,
                orientation: "identity",
                columns: ["dim", "form"],
                holds: rep.holds,
                degree: degree_table(&[&rep.lhs, &rep.rhs]),
            })?;
            Ok(rep.holds)
        }
        Cmd::SerreCat { datum, i, j, n, order } => {
            let l = load(&datum)?;
            let d = l.datum();
            let idx = |name: &str| d.index_of(name).ok_or_else(|| CliError::Other(format!("unknown vertex {name:?}")));
            let (vi, vj) = (idx(&i)?, idx(&j)?);
            let mut st = Straightener::new(&l.hecke);
            let rows = serre_categorified_check(&mut st, vi, vj, n, order).map_err(other)?;
            let holds = rows.iter().all(|r| r.holds());
            print_toml(&SerreCatOut {
                i,
                j,
                n,
                order,
                columns: ["even", "odd"],
                holds,
                label: rows
                    .iter()
                    .map(|r| SerreCatLabel {
                        label: word_name(d, &r.label),
                        holds: r.holds(),
                        degree: degree_table(&[&r.even_side, &r.odd_side]),
                    })
                    .collect(),
            })?;
            Ok(holds)
        }
        Cmd::Mackey { datum, nu, nu2, left, right, order } => {
            let l = load(&datum)?;
            let d = l.datum();
            let (nu, nu2) = (Weight::parse(&nu, d).map_err(other)?, Weight::parse(&nu2, d).map_err(other)?);
            let (iw, jw) = (parse_word(d, &left).map_err(other)?, parse_word(d, &right).map_err(other)?);
            let (mu, mu2) = (Weight::of_word(d.rank(), &iw), Weight::of_word(d.rank(), &jw));
            let r = mackey_dim_check(d, &nu, &nu2, &mu, &mu2, &iw, &jw, order).map_err(other)?;
            print_toml(&MackeyOut {
                order,
                terms: r.terms,
                columns: ["res-ind", "filtration"],
                holds: r.holds,
                degree: degree_table(&[&r.lhs, &r.rhs]),
            })?;
            Ok(r.holds)
        }
        Cmd::TruncDim { datum, target, idempotent, order } => {
            let l = load(&datum)?;
            let d = l.datum();
            let t = parse_word(d, &target).map_err(other)?;
            let mut st = Straightener::new(&l.hecke);
            let e = st.parse(&idempotent).map_err(other)?;
            let dim = idempotent_trunc_dim(&mut st, &t, &e, order).map_err(other)?;
            print_toml(&TruncOut {
                target: word_name(d, &t),
                idempotent: e.to_text(d),
                order,
                degree: degree_table(&[&dim]),
            })?;
            Ok(true)
        }
        Cmd::NormalForm { datum, expr } => {
            let l = load(&datum)?;
            let mut st = Straightener::new(&l.hecke);
            let e = st.parse(&expr).map_err(other)?;
            println!("{}", e.to_text(l.datum()));
            Ok(true)
        }
        Cmd::Mult { datum, left, right } => {
            let l = load(&datum)?;
            let mut st = Straightener::new(&l.hecke);
            let a = st.parse(&left).map_err(other)?;
            let b = st.parse(&right).map_err(other)?;
            println!("{}", st.mult(&a, &b).to_text(l.datum()));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
