//! `dstoch`: command-line front end to `dstoch_core`.
//!
//! Exit codes: 0 success or member, 1 negative result, 2 usage or parse
//! error, 3 internal invariant violation. `DSTOCH_MAX_N` replaces every size
//! guard. Partitions are written 1-based, e.g. `(1,2)(3,4)`.

use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dstoch_core::catalog::OpIdentity;
use dstoch_core::io::{matrix_from_text, IdempotentJson};
use dstoch_core::lattice::{
    build_lattice_with_limit, meet_join_table_with_limit, MAX_LATTICE_N, MAX_TABLE_N,
};
use dstoch_core::verify::{run_suite, ReferenceData, VerifyConfig};
use dstoch_core::{
    check_membership, contains_ideal, count_idempotents, count_idempotents_of_shape, d_witness,
    describe_family, enumerate_idempotents, enumerate_int_shapes, export_dot, ideal_join,
    ideal_meet, search_block_witness, verify_d_witness, verify_lattice_laws, BlockWitnessSearch,
    Error, IdealHandle, Membership, SetPartition,
};
use serde_json::{json, Value};

const MAX_PRETTY_N: usize = 8;
const MAX_VERIFY_N: usize = 6;

#[derive(Parser)]
#[command(
    name = "dstoch",
    version,
    about = "Idempotents and ideals of doubly stochastic matrices, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the idempotents of D_n.
    Count {
        n: usize,
        /// One row per integer partition of n.
        #[arg(long)]
        by_shape: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every idempotent of D_n.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = EnumFormat::Pretty)]
        format: EnumFormat,
    },
    /// Test whether a matrix (JSON or CSV file, `-` for stdin) lies in an ideal.
    Membership {
        file: String,
        /// Generator partition, 1-based, e.g. "(1,2)(3,4)".
        #[arg(long)]
        ideal: String,
        /// `left` tests D_n·E instead of E·D_n.
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Meet, join, containment or family description of principal ideals.
    IdealOp {
        #[arg(value_enum)]
        op: IdealOpKind,
        #[arg(long)]
        n: usize,
        a: String,
        b: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Build and check a D-witness between two idempotents.
    Witness {
        #[arg(long)]
        n: usize,
        e: String,
        f: String,
        /// For different shapes, run the exhaustive block-constant search.
        #[arg(long)]
        search: bool,
    },
    /// The lattice of idempotent-generated principal ideals.
    Lattice {
        n: usize,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Dot)]
        format: LatticeFormat,
        /// Check the lattice laws exhaustively and report.
        #[arg(long)]
        check_laws: bool,
    },
    /// Run the reproduction suite.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Extra D_4 identity to check, e.g. "E_2^1 meet E_2^2 = E_1".
        #[arg(long = "identity")]
        identities: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFormat {
    Pretty,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdealOpKind {
    Meet,
    Join,
    Contains,
    Describe,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Dot,
    Json,
    Table,
    Summary,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Text for stdout plus whether the answer was positive.
struct Outcome {
    text: String,
    positive: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            positive: true,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn limit(default: usize) -> Result<usize, Failure> {
    match std::env::var("DSTOCH_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "DSTOCH_MAX_N must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(default),
    }
}

fn guard(n: usize, default: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let cap = limit(default)?;
    if n > cap {
        return Err(Error::LimitExceeded { n, limit: cap }.into());
    }
    Ok(())
}

/// JSON number when it fits in a u64, decimal string beyond that.
fn json_count(c: &impl std::fmt::Display) -> Value {
    let text = c.to_string();
    match text.parse::<u64>() {
        Ok(v) => json!(v),
        Err(_) => json!(text),
    }
}

fn pretty_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_count(n: usize, by_shape: bool, as_json: bool) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let total = count_idempotents(n);
    if !by_shape {
        return Ok(Outcome::ok(if as_json {
            pretty_json(&json!({ "n": n, "total": json_count(&total) }))
        } else {
            format!("{total}\n")
        }));
    }
    let rows: Vec<_> = enumerate_int_shapes(n)
        .into_iter()
        .map(|s| {
            (
                s.to_string(),
                s.parts().to_vec(),
                count_idempotents_of_shape(&s),
            )
        })
        .collect();
    if as_json {
        let shapes: Vec<Value> = rows
            .iter()
            .map(
                |(name, parts, c)| json!({ "shape": name, "parts": parts, "count": json_count(c) }),
            )
            .collect();
        return Ok(Outcome::ok(pretty_json(
            &json!({ "n": n, "by_shape": shapes, "total": json_count(&total) }),
        )));
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
    let mut out = String::new();
    for (name, _, c) in &rows {
        writeln!(out, "{name:<width$}  {c}").unwrap();
    }
    writeln!(out, "{:<width$}  {total}", "total").unwrap();
    Ok(Outcome::ok(out))
}

fn cmd_enumerate(n: usize, format: EnumFormat) -> CmdResult {
    match format {
        EnumFormat::Dot => {
            guard(n, MAX_LATTICE_N)?;
            let l = build_lattice_with_limit(n, usize::MAX)?;
            Ok(Outcome::ok(export_dot(&l)))
        }
        EnumFormat::Json => {
            guard(n, MAX_PRETTY_N)?;
            let records: Vec<IdempotentJson> = enumerate_idempotents(n)
                .map(|e| IdempotentJson::new(&e, true))
                .collect();
            Ok(Outcome::ok(format!(
                "{}\n",
                serde_json::to_string(&records).expect("serializable")
            )))
        }
        EnumFormat::Pretty => {
            guard(n, MAX_PRETTY_N)?;
            let mut out = String::new();
            for (i, e) in enumerate_idempotents(n).enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(
                    out,
                    "#{} {}  shape {}  rank {}",
                    i + 1,
                    e.partition(),
                    e.shape(),
                    e.rank()
                )
                .unwrap();
                writeln!(out, "{}", e.matrix()).unwrap();
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    Ok(text)
}

fn cmd_membership(file: &str, ideal: &str, side: Side) -> CmdResult {
    let m = matrix_from_text(&read_input(file)?)?;
    if !m.is_square() {
        return Ok(Outcome {
            text: format!(
                "non-member: not doubly stochastic: {}x{} matrix is not square\n",
                m.n_rows(),
                m.n_cols()
            ),
            positive: false,
        });
    }
    let handle = IdealHandle::new(SetPartition::parse_one_based(m.n_rows(), ideal)?);
    let m = if side == Side::Left { m.transpose() } else { m };
    let verdict = check_membership(&handle, &m)?;
    let side_name = match side {
        Side::Right => "E·D_n",
        Side::Left => "D_n·E",
    };
    let text = match &verdict {
        Membership::Member => format!("member of {} ({side_name})\n", handle.label()),
        Membership::RowsDiffer { .. } if side == Side::Left => {
            format!("non-member: {} (columns, after transposing)\n", verdict)
        }
        v => format!("non-member: {v}\n"),
    };
    Ok(Outcome {
        text,
        positive: verdict.is_member(),
    })
}

fn parse_ideal(n: usize, spec: &str) -> Result<IdealHandle, Failure> {
    Ok(IdealHandle::new(SetPartition::parse_one_based(n, spec)?))
}

fn ideal_line(h: &IdealHandle) -> String {
    format!(
        "{}  generator {}  rank {}\n",
        h.label(),
        h.generator(),
        h.rank()
    )
}

fn cmd_ideal_op(op: IdealOpKind, n: usize, a: &str, b: Option<&str>, as_json: bool) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let a = parse_ideal(n, a)?;
    if op == IdealOpKind::Describe {
        if b.is_some() {
            return Err(Failure::Usage("describe takes a single ideal".into()));
        }
        let d = describe_family(&a);
        return Ok(Outcome::ok(if as_json {
            pretty_json(&d)
        } else {
            format!("{d}\n")
        }));
    }
    let b = parse_ideal(
        n,
        b.ok_or_else(|| Failure::Usage("a second ideal is required".into()))?,
    )?;
    if op == IdealOpKind::Contains {
        let yes = contains_ideal(&a, &b)?;
        let text = if as_json {
            pretty_json(&json!({ "outer": a, "inner": b, "contains": yes }))
        } else {
            format!(
                "{} {} {}\n",
                a.label(),
                if yes { "contains" } else { "does not contain" },
                b.label()
            )
        };
        return Ok(Outcome {
            text,
            positive: yes,
        });
    }
    let result = match op {
        IdealOpKind::Meet => ideal_meet(&a, &b)?,
        _ => ideal_join(&a, &b)?,
    };
    Ok(Outcome::ok(if as_json {
        pretty_json(&result)
    } else {
        ideal_line(&result)
    }))
}

fn cmd_witness(n: usize, e: &str, f: &str, search: bool) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let e = parse_ideal(n, e)?.idempotent();
    let f = parse_ideal(n, f)?.idempotent();
    match d_witness(&e, &f) {
        Ok(w) => {
            if !verify_d_witness(&w, &e, &f)? {
                return Err(Failure::Internal(
                    "constructed witness failed verification".into(),
                ));
            }
            let mut out = String::new();
            writeln!(
                out,
                "E = {}  F = {}  shape {}",
                e.partition(),
                f.partition(),
                e.shape()
            )
            .unwrap();
            writeln!(out, "x =\n{}", w.x).unwrap();
            writeln!(out, "y =\n{}", w.y).unwrap();
            writeln!(out, "verified: xy = E, yx = F, x = ExF, y = FyE").unwrap();
            writeln!(out, "{}", serde_json::to_string(&w).expect("serializable")).unwrap();
            Ok(Outcome::ok(out))
        }
        Err(Error::UnsupportedCrossShape { left, right }) => {
            let mut out = format!("shapes {left} and {right} differ: no constructive witness\n");
            if !search {
                out.push_str("pass --search for the exhaustive block-constant search\n");
                return Ok(Outcome {
                    text: out,
                    positive: false,
                });
            }
            match search_block_witness(&e, &f)? {
                BlockWitnessSearch::Found(w) => {
                    writeln!(out, "search found a witness").unwrap();
                    writeln!(out, "x =\n{}", w.x).unwrap();
                    writeln!(out, "y =\n{}", w.y).unwrap();
                    writeln!(out, "{}", serde_json::to_string(&w).expect("serializable")).unwrap();
                    Ok(Outcome::ok(out))
                }
                BlockWitnessSearch::Infeasible {
                    support_pairs,
                    surviving_patterns,
                } => {
                    writeln!(
                        out,
                        "infeasible: {support_pairs} support pairs, {surviving_patterns} with the right pattern, none solvable"
                    )
                    .unwrap();
                    Ok(Outcome {
                        text: out,
                        positive: false,
                    })
                }
                BlockWitnessSearch::Undetermined { surviving_patterns } => {
                    writeln!(
                        out,
                        "undetermined: {surviving_patterns} patterns leave free parameters"
                    )
                    .unwrap();
                    Ok(Outcome {
                        text: out,
                        positive: false,
                    })
                }
            }
        }
        Err(other) => Err(other.into()),
    }
}

fn cmd_lattice(n: usize, format: LatticeFormat, check_laws: bool) -> CmdResult {
    guard(n, MAX_LATTICE_N)?;
    let l = build_lattice_with_limit(n, usize::MAX)?;
    let mut out = match format {
        LatticeFormat::Dot => export_dot(&l),
        LatticeFormat::Json => pretty_json(&l.to_json()),
        LatticeFormat::Table => {
            let table = meet_join_table_with_limit(&l, limit(MAX_TABLE_N)?)?;
            let mut out = String::new();
            for (i, node) in l.nodes().iter().enumerate() {
                writeln!(out, "{i:>3}  {}", node.label()).unwrap();
            }
            for (name, rows) in [("meet", &table.meet), ("join", &table.join)] {
                writeln!(out, "\n{name}").unwrap();
                let width = l.nodes().len().to_string().len();
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    writeln!(out, "{}", cells.join(" ")).unwrap();
                }
            }
            out
        }
        LatticeFormat::Summary => {
            let mut out = format!(
                "n = {n}: {} ideals, {} cover edges\n",
                l.nodes().len(),
                l.cover_edges().len()
            );
            for (k, size) in l.level_sizes() {
                writeln!(out, "  rank {k}: {size}").unwrap();
            }
            out
        }
    };
    if check_laws {
        let report = verify_lattice_laws(&l);
        let summary = format!(
            "laws: {} single, {} pair, {} triple checks, {} violations\n",
            report.single_checks,
            report.pair_checks,
            report.triple_checks,
            report.violations.len()
        );
        if !report.passed() {
            let first = &report.violations[0];
            return Err(Failure::Internal(format!(
                "{summary}first violation: {} at {:?}",
                first.law, first.nodes
            )));
        }
        // keep DOT and JSON parseable on stdout
        match format {
            LatticeFormat::Dot | LatticeFormat::Json => eprint!("{summary}"),
            _ => out.push_str(&summary),
        }
    }
    Ok(Outcome::ok(out))
}

fn cmd_verify(max_n: usize, seed: u64, extra: &[String], as_json: bool) -> CmdResult {
    let cap = limit(MAX_VERIFY_N)?;
    if max_n > cap {
        return Err(Error::LimitExceeded {
            n: max_n,
            limit: cap,
        }
        .into());
    }
    let mut reference = ReferenceData::default();
    for text in extra {
        let id = OpIdentity::parse(text).ok_or_else(|| {
            Failure::Usage(format!(
                "cannot parse identity {text:?}; expected e.g. \"E_2^1 meet E_2^2 = E_1\""
            ))
        })?;
        reference.identities.push(id);
    }
    let report = run_suite(&VerifyConfig { max_n, seed }, &reference);
    let text = if as_json {
        pretty_json(&report)
    } else {
        let mut out = String::new();
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "[{status}] {} {}: {}", c.id, c.name, c.detail).unwrap();
        }
        let failed = report.failures().count();
        writeln!(
            out,
            "{} of {} checks passed",
            report.checks.len() - failed,
            report.checks.len()
        )
        .unwrap();
        out
    };
    Ok(Outcome {
        text,
        positive: report.passed(),
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Count { n, by_shape, json } => cmd_count(n, by_shape, json),
        Command::Enumerate { n, format } => cmd_enumerate(n, format),
        Command::Membership { file, ideal, side } => cmd_membership(&file, &ideal, side),
        Command::IdealOp { op, n, a, b, json } => cmd_ideal_op(op, n, &a, b.as_deref(), json),
        Command::Witness { n, e, f, search } => cmd_witness(n, &e, &f, search),
        Command::Lattice {
            n,
            format,
            check_laws,
        } => cmd_lattice(n, format, check_laws),
        Command::Verify {
            max_n,
            seed,
            identities,
            json,
        } => cmd_verify(max_n, seed, &identities, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
