use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use entrodist::bounds::{self, DqOptions};
use entrodist::codes::{self, LinearCode};
use entrodist::encoders::{self, LinearEncoder, SearchMode};
use entrodist::gf::{parse_matrix, prime_power, Elem};
use entrodist::packing;
use entrodist::{Error, Field, LogQValue, Matrix};

mod report;

use report::{fail, Failure, Report};

const BUDGET_ENV: &str = "ENTRODIST_BUDGET";

#[derive(Parser)]
#[command(
    name = "entrodist",
    version,
    about = "Entropy distance of linear codes and encoders over finite fields"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(q) and optionally print its tables.
    Field {
        q: u32,
        /// Reduction polynomial coefficients c_0 .. c_r, space separated.
        #[arg(long)]
        poly: Option<String>,
        /// Print addition and multiplication tables (q <= 16).
        #[arg(long)]
        tables: bool,
    },
    /// Distances and weight distribution of the code spanned by a matrix file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        budget: Option<Budget>,
    },
    /// Bounds on D_q(n, h), on the best [n, k] entropy distance, or on E_q(k, n).
    Bounds(BoundsArgs),
    /// Lower and upper bounds for binary [7, k] codes with example generators.
    Table1,
    /// Exact D_q(n, h) by enumerating subspaces.
    DqExhaustive {
        q: u32,
        n: usize,
        /// Threshold h given by its surface W, h = log_q W.
        #[arg(long)]
        h_surface: BigUint,
        #[arg(long)]
        budget: Option<Budget>,
        /// Enumerate every dimension, even those excluded by upper bounds.
        #[arg(long)]
        no_prune: bool,
    },
    /// Linear encoders.
    #[command(subcommand)]
    Encoder(EncoderCommand),
    /// Random codes and packing experiments.
    #[command(subcommand)]
    Pack(PackCommand),
}

#[derive(Args)]
struct BoundsArgs {
    /// `q n` for codes, `q k n` with --encoder.
    #[arg(required = true, num_args = 2..=3)]
    params: Vec<usize>,
    /// Bound the largest entropy distance of a k -> n encoder.
    #[arg(long)]
    encoder: bool,
    /// Bound the size of codes with entropy distance at least log_q W.
    #[arg(long, conflicts_with_all = ["k", "encoder"])]
    h_surface: Option<BigUint>,
    /// Bound the largest entropy distance of [n, k] codes.
    #[arg(long, conflicts_with = "encoder")]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum EncoderCommand {
    /// Entropy distance of the encoder x -> xG given by a matrix file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        budget: Option<Budget>,
    },
    /// Best k -> n encoder by exhaustive or random search.
    Search {
        q: u32,
        k: usize,
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        /// Matrices to draw in random mode.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        budget: Option<Budget>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum PackCommand {
    /// Exact weight spectrum summed over every C_v.
    EnsembleAvg { q: u32, n: usize, k: usize },
    /// Sample C_v until one satisfies the white condition.
    White {
        q: u32,
        n: usize,
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        max_trials: u64,
    },
    /// Packing statistics for a code and a filler set.
    Experiment {
        #[arg(long)]
        code: PathBuf,
        /// Ball radius (monomial-invariant filler).
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        radius: Option<usize>,
        /// File of filler vectors, one per line; searches monomial maps.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Ball packing at radius floor(delta n - epsilon) with a white code.
    Corollary1 {
        q: u32,
        n: usize,
        k: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        max_trials: u64,
    },
}

/// Accepts `N` or `2^E`.
#[derive(Clone, Copy, Debug)]
struct Budget(u128);

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let v = match s.split_once('^') {
            Some(("2", e)) => {
                let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{s}`"))?;
                1u128
                    .checked_shl(e)
                    .filter(|_| e < 128)
                    .ok_or_else(|| format!("`{s}` is too large"))?
            }
            Some(_) => return Err(format!("only powers of 2 are accepted, got `{s}`")),
            None => s.parse().map_err(|_| format!("invalid budget `{s}`"))?,
        };
        if v == 0 {
            return Err("budget must be positive".into());
        }
        Ok(Budget(v))
    }
}

/// Flag, then environment, then the library default.
fn budget(flag: Option<Budget>, default: u128) -> Result<u128, Failure> {
    if let Some(Budget(b)) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .parse::<Budget>()
            .map(|b| b.0)
            .map_err(|m| Failure::usage(format!("{BUDGET_ENV}: {m}"))),
        Err(_) => Ok(default),
    }
}

fn seed(s: Option<u64>) -> u64 {
    s.unwrap_or_else(|| {
        eprintln!("note: no --seed given, using seed 0");
        0
    })
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| match e {
        Error::Parse { line, message } => {
            Failure::usage(format!("{}:{line}: {message}", path.display()))
        }
        other => fail(other),
    })
}

fn read_vectors(path: &Path, field: &Field, n: usize) -> Result<Vec<Vec<Elem>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| format!("invalid element `{t}`"))
                    .and_then(|a| field.element(a).map_err(|e| e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|m| Failure::usage(format!("{}:{}: {m}", path.display(), i + 1)))?;
        if v.len() != n {
            return Err(Failure::usage(format!(
                "{}:{}: expected {n} entries, got {}",
                path.display(),
                i + 1,
                v.len()
            )));
        }
        out.push(v);
    }
    Ok(out)
}

fn rows(m: &Matrix) -> Vec<Vec<Elem>> {
    m.row_iter().map(|r| r.to_vec()).collect()
}

fn field_name(f: &Field) -> String {
    if f.is_prime_field() {
        format!("GF({})", f.order())
    } else {
        format!("GF({}^{})", f.characteristic(), f.degree())
    }
}

fn lq(q: u32, w: BigUint) -> Result<LogQValue, Failure> {
    LogQValue::new(q, w).map_err(fail)
}

fn cmd_field(q: u32, poly: Option<String>, tables: bool) -> Result<Report, Failure> {
    let (p, r) =
        prime_power(q).ok_or_else(|| Failure::infeasible(format!("{q} is not a prime power")))?;
    let coeffs = poly
        .map(|s| {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Failure::usage(format!("invalid coefficient `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let f = Field::new(p, r, coeffs.as_deref()).map_err(fail)?;
    let prim = f.primitive_element();
    let mut text = format!(
        "{}: characteristic {p}, degree {r}, order {q}\n",
        field_name(&f)
    );
    if let Some(c) = f.poly() {
        text += &format!("reduction polynomial coefficients (c_0 .. c_r): {c:?}\n");
    }
    text += &format!("primitive element: {prim}\n");
    let mut results = json!({
        "p": p, "r": r, "q": q, "poly": f.poly(), "primitive_element": prim,
    });
    if tables {
        if q > 16 {
            return Err(Failure::infeasible("tables are printed only for q <= 16"));
        }
        let els: Vec<Elem> = f.elements().collect();
        let add: Vec<Vec<Elem>> = els
            .iter()
            .map(|&a| els.iter().map(|&b| f.add(a, b)).collect())
            .collect();
        let mul: Vec<Vec<Elem>> = els
            .iter()
            .map(|&a| els.iter().map(|&b| f.mul(a, b)).collect())
            .collect();
        text += &report::grid("+", &els, &add);
        text += &report::grid("*", &els, &mul);
        results["add"] = json!(add);
        results["mul"] = json!(mul);
    }
    Ok(Report::new(
        "field",
        json!({ "q": q, "poly": coeffs }),
        results,
        text,
    ))
}

fn cmd_analyze(file: &Path, b: Option<Budget>) -> Result<Report, Failure> {
    let m = read_matrix(file)?;
    let budget = budget(b, codes::DEFAULT_BUDGET)?;
    let code = LinearCode::span(&m);
    let (n, k, q) = (code.n(), code.k(), code.q());
    let path = if k <= n - k { "direct" } else { "dual" };
    let wd = codes::weight_distribution_with_budget(&code, budget).map_err(fail)?;
    let dual_wd = codes::macwilliams_transform(&wd, &code.size()).map_err(fail)?;
    let hd = wd.hamming_distance().ok();
    let ed = wd.entropy_distance().ok();
    let dual_ed = dual_wd.entropy_distance().ok();

    let mut text = format!("[{n}, {k}] code over {}", field_name(code.field()));
    if m.rows() != k {
        text += &format!(" (matrix has {} rows, rank {k})", m.rows());
    }
    text += "\n";
    text += &format!(
        "hamming distance       {}\n",
        hd.map_or("undefined (zero code)".into(), |d| d.to_string())
    );
    text += &format!("entropy distance       {}\n", report::opt(&ed));
    text += &format!("dual entropy distance  {}\n", report::opt(&dual_ed));
    text += &format!(
        "weight distribution ({path} enumeration):\n{}",
        report::distribution(&wd)
    );
    text += &format!("weight enumerator      {}\n", wd.enumerator());
    let results = json!({
        "q": q, "n": n, "k": k, "rank": k,
        "generator": rows(code.generator()),
        "hamming_distance": hd,
        "entropy_distance": ed,
        "weight_distribution": wd,
        "enumeration": path,
        "dual_entropy_distance": dual_ed,
        "dual_weight_distribution": dual_wd,
    });
    Ok(Report::new(
        "analyze",
        json!({ "file": file, "budget": budget.to_string() }),
        results,
        text,
    ))
}

fn cmd_bounds(a: BoundsArgs) -> Result<Report, Failure> {
    let q32 = |v: usize| u32::try_from(v).map_err(|_| Failure::usage("q out of range"));
    let r = if a.encoder {
        let [q, k, n] = a.params[..] else {
            return Err(Failure::usage("--encoder takes `q k n`"));
        };
        bounds::encoder_report(q32(q)?, k, n).map_err(fail)?
    } else {
        let [q, n] = a.params[..] else {
            return Err(Failure::usage(
                "code bounds take `q n` plus --h-surface or --k",
            ));
        };
        let q = q32(q)?;
        match (a.h_surface, a.k) {
            (Some(w), None) => bounds::code_size_report(q, n, &lq(q, w)?).map_err(fail)?,
            (None, Some(k)) => bounds::max_ed_report(q, n, k).map_err(fail)?,
            _ => return Err(Failure::usage("give exactly one of --h-surface or --k")),
        }
    };
    let params = json!({ "params": a.params, "encoder": a.encoder });
    Ok(Report::new(
        "bounds",
        params,
        serde_json::to_value(&r).expect("serializable"),
        report::bounds_text(&r),
    ))
}

const TABLE1_LOWER: [u64; 6] = [35, 21, 21, 7, 7, 7];
const TABLE1_UPPER: [u64; 6] = [35, 35, 35, 21, 7, 7];
const TABLE1_EXAMPLE: [u64; 6] = [35, 35, 35, 21, 7, 7];

fn cmd_table1() -> Result<Report, Failure> {
    let rows = bounds::table1().map_err(fail)?;
    let mut text = format!(
        "{:>2}  {:<22} {:<22} {:<22} example\n",
        "k", "lower", "upper", "example ed"
    );
    let mut agree = true;
    for (i, r) in rows.iter().enumerate() {
        let expect = |w: u64| LogQValue::from_surface(2, w).expect("q = 2");
        agree &= r.lower == expect(TABLE1_LOWER[i])
            && r.upper == expect(TABLE1_UPPER[i])
            && r.example_ed == expect(TABLE1_EXAMPLE[i]);
        let ex: Vec<String> = r
            .example
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect();
        text += &format!(
            "{:>2}  {:<22} {:<22} {:<22} {}\n",
            r.k,
            r.lower.to_string(),
            r.upper.to_string(),
            r.example_ed.to_string(),
            ex.join(" ")
        );
    }
    text += if agree {
        "all rows agree with the reference values\n"
    } else {
        "MISMATCH with the reference values\n"
    };
    let results = json!({ "rows": rows, "agrees": agree });
    let rep = Report::new("table1", json!({}), results, text);
    if agree {
        Ok(rep)
    } else {
        Err(Failure::check(rep))
    }
}

fn cmd_dq(
    q: u32,
    n: usize,
    w: BigUint,
    b: Option<Budget>,
    no_prune: bool,
) -> Result<Report, Failure> {
    let h = lq(q, w)?;
    let opts = DqOptions {
        budget: budget(b, DqOptions::default().budget)?,
        prune: !no_prune,
    };
    let d = bounds::dq_exhaustive_with(q, n, &h, opts).map_err(fail)?;
    let bounds = bounds::code_size_report(q, n, &h).ok();
    let mut text = format!("D_{q}({n}, {h}) = {} (dimension {})\n", d.size, d.k);
    text += &format!("subspaces examined: {}\n", d.subspaces_examined);
    text += &format!(
        "witness generator:\n{}",
        report::matrix_text(d.witness.generator())
    );
    if let Some(b) = &bounds {
        text += &report::bounds_text(b);
    }
    let results = json!({
        "size": d.size.to_str_radix(10),
        "size_approx": report::approx(&d.size),
        "k": d.k,
        "witness": rows(d.witness.generator()),
        "subspaces_examined": d.subspaces_examined.to_string(),
        "bounds": bounds,
    });
    let params =
        json!({ "q": q, "n": n, "h": h, "budget": opts.budget.to_string(), "prune": opts.prune });
    Ok(Report::new("dq-exhaustive", params, results, text))
}

fn cmd_encoder(c: EncoderCommand) -> Result<Report, Failure> {
    match c {
        EncoderCommand::Analyze { file, budget: b } => {
            let m = read_matrix(&file)?;
            let budget = budget(b, codes::DEFAULT_BUDGET)?;
            let enc = LinearEncoder::from_matrix(&m).map_err(fail)?;
            let d = encoders::encoder_entropy_distance_with_budget(&enc, budget).map_err(fail)?;
            let bounds = bounds::encoder_report(enc.field().order(), enc.k(), enc.n()).ok();
            let mut text = format!(
                "{} -> {} encoder over {}\n",
                enc.k(),
                enc.n(),
                field_name(enc.field())
            );
            text += &report::encoder_text(&d);
            if let Some(b) = &bounds {
                text += &report::bounds_text(b);
            }
            let results = json!({ "k": enc.k(), "n": enc.n(), "distance": d, "bounds": bounds });
            Ok(Report::new(
                "encoder analyze",
                json!({ "file": file, "budget": budget.to_string() }),
                results,
                text,
            ))
        }
        EncoderCommand::Search {
            q,
            k,
            n,
            mode,
            samples,
            budget: b,
            seed: s,
        } => {
            let budget = budget(b, encoders::SEARCH_BUDGET)?;
            let (mode, seed) = match mode {
                Mode::Exhaustive => (SearchMode::Exhaustive, s.unwrap_or(0)),
                Mode::Random => (SearchMode::Random { samples }, seed(s)),
            };
            let r = encoders::encoder_search_best(q, k, n, mode, budget, seed).map_err(fail)?;
            let bounds = bounds::encoder_report(q, k, n).ok();
            let mut text = format!(
                "best {k} -> {n} encoder over GF({q}) ({} examined, {} rank-deficient)\n",
                r.examined, r.rejected
            );
            text += &report::matrix_text(r.encoder.matrix());
            text += &report::encoder_text(&r.distance);
            if let Some(b) = &bounds {
                text += &report::bounds_text(b);
            }
            let params = json!({ "q": q, "k": k, "n": n, "mode": mode, "budget": budget.to_string(), "seed": seed });
            Ok(Report::new(
                "encoder search",
                params,
                json!({ "search": r, "bounds": bounds }),
                text,
            ))
        }
    }
}

fn cmd_pack(c: PackCommand) -> Result<Report, Failure> {
    match c {
        PackCommand::EnsembleAvg { q, n, k } => {
            let r = packing::ensemble_average(q, n, k).map_err(fail)?;
            let mut text =
                format!("sum over all nonzero v of A_i(C_v), q = {q}, n = {n}, k = {k}\n");
            text += &format!("{:>3}  {:>20}  {:>20}\n", "i", "sum", "expected");
            for i in 1..=n {
                text += &format!("{i:>3}  {:>20}  {:>20}\n", r.sums[i], r.expected[i]);
            }
            text += if r.matches {
                "exact match\n"
            } else {
                "MISMATCH\n"
            };
            let matches = r.matches;
            let rep = Report::new(
                "pack ensemble-avg",
                json!({ "q": q, "n": n, "k": k }),
                json!(r),
                text,
            );
            if matches {
                Ok(rep)
            } else {
                Err(Failure::check(rep))
            }
        }
        PackCommand::White {
            q,
            n,
            k,
            seed: s,
            max_trials,
        } => {
            let seed = seed(s);
            let w = packing::find_white_code(q, n, k, seed, max_trials).map_err(fail)?;
            let mut text = format!(
                "white [{n}, {k}] code C_v with v = {} after {} trials\n",
                w.v, w.trials
            );
            text += &report::matrix_text(w.code.generator());
            text += &format!(
                "weight distribution:\n{}",
                report::distribution(&w.distribution)
            );
            let params = json!({ "q": q, "n": n, "k": k, "seed": seed, "max_trials": max_trials });
            Ok(Report::new("pack white", params, json!(w), text))
        }
        PackCommand::Experiment {
            code,
            radius,
            set,
            seed: s,
            trials,
        } => {
            let m = read_matrix(&code)?;
            let c = LinearCode::span(&m);
            let (res, params) = match (radius, set) {
                (Some(r), _) => {
                    let res = packing::packing_experiment_invariant(&c, r).map_err(fail)?;
                    (json!(res), json!({ "code": code, "radius": r }))
                }
                (None, Some(path)) => {
                    let filler = read_vectors(&path, c.field(), c.n())?;
                    let seed = seed(s);
                    let g = packing::packing_experiment_general(&c, &filler, seed, trials)
                        .map_err(fail)?;
                    (
                        json!(g),
                        json!({ "code": code, "set": path, "seed": seed, "trials": trials }),
                    )
                }
                (None, None) => return Err(Failure::usage("give --radius or --set")),
            };
            let text = report::packing_text(&res);
            Ok(Report::new("pack experiment", params, res, text))
        }
        PackCommand::Corollary1 {
            q,
            n,
            k,
            epsilon,
            seed: s,
            max_trials,
        } => {
            let seed = seed(s);
            let r = packing::corollary1_demo(q, n, k, epsilon, seed, max_trials).map_err(fail)?;
            let text = format!(
                "delta = {:.9}, gamma = {:.9}, radius = {}\nwhite code v = {}\n|S| = {}, |B| = {}, |B|/|S| = {} ~ {:.9}\n\
                 threshold 1 - gamma^epsilon = {:.9}: {}\nhypothesis |S| < q^(n-k)/n: {}, packing conditions: {}\n",
                r.delta,
                r.gamma,
                r.radius,
                r.white_v,
                r.s_size,
                r.b_size,
                r.ratio,
                r.ratio_approx,
                r.threshold,
                if r.holds { "holds" } else { "fails" },
                r.hypothesis,
                r.conditions
            );
            let params = json!({ "q": q, "n": n, "k": k, "epsilon": epsilon, "seed": seed, "max_trials": max_trials });
            Ok(Report::new("pack corollary1", params, json!(r), text))
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Field { q, poly, tables } => cmd_field(q, poly, tables),
        Command::Analyze { file, budget } => cmd_analyze(&file, budget),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Table1 => cmd_table1(),
        Command::DqExhaustive {
            q,
            n,
            h_surface,
            budget,
            no_prune,
        } => cmd_dq(q, n, h_surface, budget, no_prune),
        Command::Encoder(c) => cmd_encoder(c),
        Command::Pack(c) => cmd_pack(c),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                report::EXIT_USAGE
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let started = std::time::Instant::now();
    let outcome = run(cli);
    log::debug!("finished in {:?}", started.elapsed());
    match outcome {
        Ok(rep) => {
            rep.emit(format == Format::Json);
            ExitCode::SUCCESS
        }
        Err(f) => ExitCode::from(f.emit(format == Format::Json)),
    }
}
