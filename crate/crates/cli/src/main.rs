//! `char2lift` command-line front end.
//!
//! Exit codes: 0 success, 1 failed certificate or bound, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use char2lift::classes::{FamilySpec, SampleConfig};
use char2lift::graphs::DEFAULT_ADJACENCY_CAP;
use char2lift::tournaments::{tourn_summary, walk_poly};
use char2lift::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "char2lift", version, about = "Characteristic polynomials of ±1 matrices modulo powers of two")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Of {
    /// Adjacency matrix `A`.
    A,
    /// `J - 2A`.
    Jm2a,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the result to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    /// Graph (`P3+2*C5`, `DP4`) or tournament (`join(T1,3@V1)`) expression.
    #[arg(short = 'x', long = "expr")]
    expr: Option<String>,
    /// ±1 or 0/1 matrix, rows separated by `;`, entries by `,` or spaces.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic coefficients `c_0..c_depth` of `A` or `J - 2A`.
    Charpoly {
        #[command(flatten)]
        src: Source,
        /// Matrix the coefficients belong to (expressions only).
        #[arg(long, value_enum, default_value = "a")]
        of: Of,
        /// Highest coefficient index; defaults to the order.
        #[arg(long)]
        depth: Option<usize>,
        /// Reduce mod 2^bits; exact when absent.
        #[arg(long, env = "CHAR2LIFT_MOD_BITS")]
        mod_bits: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Walk counts `1ᵀA^k1` for `k = 0..=depth`.
    Walks {
        #[command(flatten)]
        src: Source,
        /// Highest walk length.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Reduce mod 2^bits; exact when absent.
        #[arg(long, env = "CHAR2LIFT_MOD_BITS")]
        mod_bits: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Class tuple `(c_2..c_e) mod 2^e` of `J - 2A` (expressions) or of `M` (matrices).
    Class {
        #[command(flatten)]
        src: Source,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Check that the matrix belongs to this family.
        #[arg(long)]
        family: Option<Family>,
        #[command(flatten)]
        output: Output,
    },
    /// Certify a lift graph or lift tournament.
    VerifyLift {
        /// Lift type.
        #[arg(long, value_enum)]
        kind: Kind,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Shift position for type I lifts.
        #[arg(long)]
        f: Option<u32>,
        /// Graph or tournament expression.
        #[arg(short = 'x', long = "expr")]
        expr: String,
        #[command(flatten)]
        output: Output,
    },
    /// Build a certified lift graph (default) or lift tournament.
    ConstructLift {
        /// Lift type.
        #[arg(long, value_enum)]
        kind: Kind,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Shift position for type I lifts.
        #[arg(long)]
        f: Option<u32>,
        /// Build a lift tournament instead of a graph.
        #[arg(long)]
        tournament: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive class set of a family.
    Enumerate {
        /// ±1 matrices with unit diagonal: S symmetric, T skew off the diagonal, U unrestricted.
        #[arg(long)]
        family: Family,
        /// Matrix order.
        #[arg(long)]
        n: usize,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Classes hit by pseudorandom family members.
    Sample {
        /// ±1 matrices with unit diagonal: S symmetric, T skew off the diagonal, U unrestricted.
        #[arg(long)]
        family: Family,
        /// Matrix order.
        #[arg(long)]
        n: usize,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Number of sampled members.
        #[arg(long)]
        trials: u64,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form class count.
    Predict {
        /// ±1 matrices with unit diagonal: S symmetric, T skew off the diagonal, U unrestricted.
        #[arg(long)]
        family: Family,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Parity of the order.
        #[arg(long)]
        parity: Option<Parity>,
        /// Takes the parity from this order.
        #[arg(long, conflicts_with = "parity")]
        n: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Digraph realising given residues `r_2..r_e` in the unrestricted family.
    WitnessU {
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Comma-separated `r_2,...,r_e`.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        targets: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Observed against predicted class counts.
    Report {
        /// ±1 matrices with unit diagonal: S symmetric, T skew off the diagonal, U unrestricted.
        #[arg(long)]
        family: Family,
        /// Work modulo 2^e.
        #[arg(long)]
        e: u32,
        /// Comma-separated orders.
        #[arg(long = "n", value_delimiter = ',', num_args = 1.., required = true)]
        n_list: Vec<usize>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Trials for orders beyond the exhaustive cap.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// RNG seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also fail when an observed count differs from the prediction.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized consistency checks.
    Selftest {
        /// RNG seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// A usage problem: reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

/// Library errors caused by bad input count as usage errors.
fn lib<T>(r: char2lift::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(_) | Error::Parse { .. } => Usage(e.to_string()).into(),
        other => anyhow!(other),
    })
}

enum Parsed {
    Graph(GraphExpr),
    Tourn(TournExpr),
    Matrix(IntMatrix),
}

fn parse_expr(text: &str) -> anyhow::Result<Parsed> {
    match parse_graph_expr(text) {
        Ok(g) => Ok(Parsed::Graph(g)),
        Err(ge) => match parse_tourn_expr(text) {
            Ok(t) => Ok(Parsed::Tourn(t)),
            Err(_) => usage(format!("cannot parse expression {text:?}: {ge}")),
        },
    }
}

fn parse_matrix(text: &str) -> anyhow::Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| Usage(format!("bad matrix entry {s:?}")).into()))
                .collect::<anyhow::Result<Vec<i64>>>()
        })
        .collect::<anyhow::Result<_>>()?;
    lib(Matrix::from_rows(rows))
}

fn source(src: &Source) -> anyhow::Result<Parsed> {
    match (&src.expr, &src.matrix) {
        (Some(x), None) => parse_expr(x),
        (None, Some(m)) => Ok(Parsed::Matrix(parse_matrix(m)?)),
        _ => usage("give exactly one of --expr or --matrix"),
    }
}

fn order_of(p: &Parsed) -> BigUint {
    match p {
        Parsed::Graph(g) => g.order(),
        Parsed::Tourn(t) => t.order(),
        Parsed::Matrix(m) => BigUint::from(m.n()),
    }
}

fn num(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn reduce(v: &[BigInt], bits: Option<u32>) -> anyhow::Result<Vec<BigInt>> {
    match bits {
        None => Ok(v.to_vec()),
        Some(0) => usage("--mod-bits must be positive"),
        Some(b) => {
            let m = BigInt::from(1) << b;
            Ok(v.iter().map(|x| ((x % &m) + &m) % &m).collect())
        }
    }
}

fn write_out(output: &Output, text: &str) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

/// Writes `value` as JSON or `text`; csv is only offered for class sets.
fn emit(output: &Output, value: &Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    let body = match output.format {
        Format::Json => serde_json::to_string(value)?,
        Format::Text => text(),
        Format::Csv => return usage("csv output is only available for class sets"),
    };
    write_out(output, &body)
}

fn emit_set(output: &Output, set: &ClassSet) -> anyhow::Result<()> {
    let body = match output.format {
        Format::Json => set.to_json(),
        Format::Csv => set.to_csv().trim_end().to_string(),
        Format::Text => {
            let mut s = format!(
                "{} n={} e={} {}: {} classes\n",
                set.spec.family,
                set.spec.n,
                set.spec.e,
                set.provenance.label(),
                set.len()
            );
            for t in &set.tuples {
                s.push_str(&format!("  {t}\n"));
            }
            s.trim_end().to_string()
        }
    };
    write_out(output, &body)
}

fn list(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

fn exact_charpoly(p: &Parsed, depth: usize, of: Of) -> anyhow::Result<Vec<BigInt>> {
    let (char_a, walks): (Vec<BigInt>, Vec<BigInt>) = match p {
        Parsed::Graph(g) => {
            let s = summary::<BigInt>(g, depth, depth);
            (s.char.coeffs().to_vec(), s.walks)
        }
        Parsed::Tourn(t) => {
            let s = tourn_summary::<BigInt>(t, depth);
            let w = s.walks();
            (s.char.coeffs().to_vec(), w)
        }
        Parsed::Matrix(m) => {
            if of == Of::Jm2a {
                return usage("--of jm2a applies to expressions; pass the ±1 matrix itself");
            }
            let mut c = charpoly_truncated(&m.to_ring::<BigInt>(), depth).c;
            c.resize(depth + 1, BigInt::from(0));
            return Ok(c);
        }
    };
    Ok(match of {
        Of::A => char_a,
        Of::Jm2a => lib(jm2a_coeffs(&char_a, &walks, depth))?.c,
    })
}

fn default_depth(p: &Parsed, depth: Option<usize>) -> anyhow::Result<usize> {
    match depth {
        Some(d) => Ok(d),
        None => {
            let n = order_of(p);
            if n > BigUint::from(DEFAULT_ADJACENCY_CAP) {
                usage(format!("order {n} is large; pass --depth"))
            } else {
                Ok(n.iter_u64_digits().next().unwrap_or(0) as usize)
            }
        }
    }
}

/// Enumerations with fewer adjacency bits finish too fast to need progress.
const PROGRESS_MIN_BITS: u64 = 24;

fn progress_line(done: u64, total: u64) {
    if done == total || done % (total / 20).max(1) == 0 {
        eprintln!("enumerate: {done}/{total} shards");
    }
}

fn lift_kind(kind: Kind, tournament: bool) -> LiftKind {
    match (kind, tournament) {
        (Kind::I, false) => LiftKind::GraphI,
        (Kind::II, false) => LiftKind::GraphII,
        (Kind::I, true) => LiftKind::TournI,
        (Kind::II, true) => LiftKind::TournII,
    }
}

fn check_f(kind: Kind, f: Option<u32>) -> anyhow::Result<()> {
    match (kind, f) {
        (Kind::I, None) => usage("kind I needs --f"),
        (Kind::II, Some(_)) => usage("--f does not apply to kind II"),
        _ => Ok(()),
    }
}

/// Runs one command; `Ok(false)` means a failed check (exit 1).
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Charpoly { src, of, depth, mod_bits, output } => {
            let p = source(&src)?;
            let depth = default_depth(&p, depth)?;
            let c = reduce(&exact_charpoly(&p, depth, of)?, mod_bits)?;
            let v = json!({
                "order": order_of(&p).to_string(),
                "of": if of == Of::A { "A" } else { "J-2A" },
                "depth": depth,
                "mod_bits": mod_bits,
                "coeffs": c.iter().map(num).collect::<Vec<_>>(),
            });
            emit(&output, &v, || format!("c_0..c_{depth}: {}", list(&c)))?;
        }
        Command::Walks { src, depth, mod_bits, output } => {
            let p = source(&src)?;
            let w: Vec<BigInt> = match &p {
                Parsed::Graph(g) => summary::<BigInt>(g, 0, depth).walks,
                Parsed::Tourn(t) => {
                    let wp = walk_poly::<BigInt>(t, depth + 1);
                    (0..=depth).map(|k| wp.walk(k)).collect()
                }
                Parsed::Matrix(m) => walk_counts(&m.to_ring::<BigInt>(), depth),
            };
            let w = reduce(&w, mod_bits)?;
            let v = json!({
                "order": order_of(&p).to_string(),
                "depth": depth,
                "mod_bits": mod_bits,
                "walks": w.iter().map(num).collect::<Vec<_>>(),
            });
            emit(&output, &v, || format!("1ᵀA^k1, k = 0..{depth}: {}", list(&w)))?;
        }
        Command::Class { src, e, family, output } => {
            let p = source(&src)?;
            let cs = match p {
                Parsed::Graph(g) => ClassSource::Graph(g),
                Parsed::Tourn(t) => ClassSource::Tourn(t),
                Parsed::Matrix(m) => {
                    if let Some(f) = family {
                        lib(validate_member(&m, f))?;
                    }
                    ClassSource::Matrix(m)
                }
            };
            let t = lib(extract_class(&cs, e))?;
            let v = json!({ "e": e, "class": t });
            emit(&output, &v, || t.to_string())?;
        }
        Command::VerifyLift { kind, e, f, expr, output } => {
            check_f(kind, f)?;
            let cert = match (parse_expr(&expr)?, kind) {
                (Parsed::Graph(g), Kind::I) => lib(check_lift_graph_I(&g, e, f.unwrap()))?,
                (Parsed::Graph(g), Kind::II) => lib(check_lift_graph_II(&g, e))?,
                (Parsed::Tourn(t), Kind::I) => lib(check_lift_tournament_I(&t, e, f.unwrap()))?,
                (Parsed::Tourn(t), Kind::II) => lib(check_lift_tournament_II(&t, e))?,
                (Parsed::Matrix(_), _) => unreachable!("expressions only"),
            };
            let v: Value = serde_json::from_str(&cert.to_json())?;
            emit(&output, &v, || {
                let mut s = format!("{} e={}: {}", cert.kind, e, if cert.passed { "PASS" } else { "FAIL" });
                for c in &cert.checks {
                    s.push_str(&format!("\n  {} {c}", if c.ok() { "ok  " } else { "FAIL" }));
                }
                s
            })?;
            return Ok(cert.passed);
        }
        Command::ConstructLift { kind, e, f, tournament, output } => {
            check_f(kind, f)?;
            let lk = lift_kind(kind, tournament);
            let (expr, order, cert) = if tournament {
                let t = match kind {
                    Kind::I => lib(construct_lift_tournament_I(e, f.unwrap()))?,
                    Kind::II => lib(construct_lift_tournament_II(e))?,
                };
                let cert = match kind {
                    Kind::I => lib(check_lift_tournament_I(&t, e, f.unwrap()))?,
                    Kind::II => lib(check_lift_tournament_II(&t, e))?,
                };
                (t.to_string(), t.order(), cert)
            } else {
                let g = match kind {
                    Kind::I => lib(construct_lift_graph_I(e, f.unwrap()))?,
                    Kind::II => lib(construct_lift_graph_II(e))?,
                };
                let cert = match kind {
                    Kind::I => lib(check_lift_graph_I(&g, e, f.unwrap()))?,
                    Kind::II => lib(check_lift_graph_II(&g, e))?,
                };
                (g.to_string(), g.order(), cert)
            };
            let v = json!({
                "kind": lk,
                "e": e,
                "f": f,
                "expr": expr,
                "order": order.to_string(),
                "certificate": serde_json::from_str::<Value>(&cert.to_json())?,
            });
            emit(&output, &v, || format!("{expr}\norder {order}, certificate {}", if cert.passed { "PASS" } else { "FAIL" }))?;
            return Ok(cert.passed);
        }
        Command::Enumerate { family, n, e, workers, output } => {
            let spec = lib(FamilySpec::new(family, n, e))?;
            let progress: &(dyn Fn(u64, u64) + Sync) = &progress_line;
            let progress = (spec.bits() >= PROGRESS_MIN_BITS).then_some(progress);
            let set = lib(enumerate_classes_with_progress(&spec, workers, progress))?;
            emit_set(&output, &set)?;
        }
        Command::Sample { family, n, e, trials, seed, output } => {
            let spec = lib(FamilySpec::new(family, n, e))?;
            let set = lib(sample_classes(&spec, trials, seed))?;
            emit_set(&output, &set)?;
        }
        Command::Predict { family, e, parity, n, output } => {
            let parity = parity.or(n.map(Parity::of));
            let count = lib(predicted_count(family, e, parity))?;
            let v = json!({
                "family": family,
                "e": e,
                "parity": if family == Family::U { None } else { parity },
                "count": num(&BigInt::from(count.clone())),
            });
            emit(&output, &v, || count.to_string())?;
        }
        Command::WitnessU { e, targets, output } => {
            let w = lib(um_witness(e, &targets))?;
            let v = json!({
                "e": e,
                "targets": targets,
                "d": w.d,
                "order": w.order.to_string(),
                "expr": w.expr.to_string(),
                "class": w.tuple,
            });
            emit(&output, &v, || format!("{}\norder {}, d = {:?}, class {}", w.expr, w.order, w.d, w.tuple))?;
        }
        Command::Report { family, e, n_list, workers, trials, seed, strict, output } => {
            let rows = lib(theorem_report(family, e, &n_list, workers, SampleConfig { trials, seed }))?;
            let ok = rows.iter().all(|r| r.bound_ok && (!strict || r.equal));
            let v = json!({ "family": family, "e": e, "rows": rows });
            emit(&output, &v, || {
                let mut s = format!("{:>5} {:>9} {:>10} {:>12} {:>6} {:>6}  provenance", "n", "observed", "predicted", "upper_bound", "bound", "equal");
                for r in &rows {
                    s.push_str(&format!(
                        "\n{:>5} {:>9} {:>10} {:>12} {:>6} {:>6}  {}",
                        r.n, r.observed, r.predicted, r.upper_bound, r.bound_ok, r.equal, r.provenance
                    ));
                }
                s
            })?;
            return Ok(ok);
        }
        Command::Selftest { seed, output } => {
            let results = char2lift::selftest::run(seed);
            let ok = results.iter().all(|(_, p)| *p);
            let v = json!({
                "seed": seed,
                "passed": ok,
                "checks": results.iter().map(|(n, p)| json!({ "name": n, "passed": p })).collect::<Vec<_>>(),
            });
            emit(&output, &v, || {
                results
                    .iter()
                    .map(|(n, p)| format!("{} {n}", if *p { "PASS" } else { "FAIL" }))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}\n\nRun `char2lift --help` for usage.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
