mod golden;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schubert_core::{
    elem_stability, elem_to_schubert, kostka_matrix, mt_tree, pieri, product_expand, schubert_bjs,
    schubert_to_elem, stable_expand, stable_expand_with, stanley_via_mt, tree_to_dot, ElemIndex,
    Error, Permutation, StableExpansion, StableOptions,
};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Exact Schubert calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Transition,
    Mt,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schubert polynomial of a permutation.
    Poly {
        w: Permutation,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a product of Schubert polynomials in the Schubert basis.
    Product {
        #[arg(required = true, num_args = 1..)]
        perms: Vec<Permutation>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stable expansion of a product of two Stanley symmetric functions.
    Stanley {
        w: Permutation,
        u: Permutation,
        #[arg(long, value_enum, default_value = "transition")]
        method: Method,
        /// Stop at the first level that adds nothing.
        #[arg(long)]
        assume_no_gap: bool,
        /// Cross-check the transition and tree methods.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the maximal-transition tree of `w × u` restricted to `m` variables.
    MtTree {
        w: Permutation,
        u: Permutation,
        #[arg(short, long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Elementary monomials and the Schubert–Kostka matrix.
    Elem {
        #[command(subcommand)]
        command: ElemCommand,
    },
    /// Reproduce reference computations.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ElemCommand {
    /// Expand `e_I` in the Schubert basis.
    Expand {
        index: ElemIndex,
        /// Also report the levels of `e_{(0^k, I)}`.
        #[arg(long)]
        levels: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// `e_r^k · S_w` by the Pieri rule.
    Pieri {
        r: usize,
        k: usize,
        w: Permutation,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand `S_v` in elementary monomials.
    ToElem {
        v: Permutation,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The Schubert–Kostka matrix of `S_n` and its inverse.
    Kostka {
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    PaperExamples,
}

impl Command {
    fn format(&self) -> Format {
        match self {
            Command::Poly { format, .. }
            | Command::Product { format, .. }
            | Command::Stanley { format, .. }
            | Command::MtTree { format, .. }
            | Command::Verify { format, .. } => *format,
            Command::Elem { command } => match command {
                ElemCommand::Expand { format, .. }
                | ElemCommand::Pieri { format, .. }
                | ElemCommand::ToElem { format, .. }
                | ElemCommand::Kostka { format, .. } => *format,
            },
        }
    }
}

enum Failure {
    Domain(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.format();
    if format == Format::Dot && !matches!(cli.command, Command::MtTree { .. }) {
        Cli::command()
            .error(
                clap::error::ErrorKind::InvalidValue,
                "--format dot is only valid for mt-tree",
            )
            .exit();
    }
    match run(cli.command, format) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(format: Format, text: String, value: impl FnOnce() -> Value) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&value()).expect("JSON values serialise")
        ),
        _ => format!("{text}\n"),
    }
}

fn run(command: Command, format: Format) -> Outcome {
    let out = match command {
        Command::Poly { w, .. } => {
            let p = schubert_bjs(&w);
            emit(format, p.to_string(), || p.to_json())
        }
        Command::Product { perms, .. } => {
            let e = product_expand(&perms)?;
            emit(format, e.to_string(), || e.to_json())
        }
        Command::Stanley {
            w,
            u,
            method,
            assume_no_gap,
            check,
            ..
        } => {
            return stanley(&w, &u, method, assume_no_gap, check, format);
        }
        Command::MtTree { w, u, m, .. } => {
            let tree = mt_tree(&Permutation::cross(&w, &u, m), m);
            match format {
                Format::Dot => tree_to_dot(&tree),
                Format::Json => emit(format, String::new(), || tree.to_json()),
                Format::Text => tree.to_text(),
            }
        }
        Command::Elem { command } => elem(command, format)?,
        Command::Verify { .. } => {
            let checks = golden::run_all();
            let ok = checks.iter().all(golden::Check::passed);
            let text = golden::to_text(&checks);
            return Ok((
                emit(format, text.trim_end().to_string(), || {
                    golden::to_json(&checks)
                }),
                ok,
            ));
        }
    };
    Ok((out, true))
}

fn stanley(
    w: &Permutation,
    u: &Permutation,
    method: Method,
    assume_no_gap: bool,
    check: bool,
    format: Format,
) -> Outcome {
    let opts = StableOptions {
        assume_no_gap,
        verify: false,
    };
    let (expansion, extra) = match method {
        Method::Transition => (stable_expand_with(w, u, opts)?, json!({})),
        Method::Mt => {
            let mt = stanley_via_mt(w, u)?;
            let extra = json!({ "m": mt.m, "padding": [mt.padding.0, mt.padding.1], "swapped": mt.swapped });
            (mt.expansion, extra)
        }
    };
    let check_result = if check {
        Some(cross_check(w, u, method, &expansion)?)
    } else {
        None
    };
    let mut value = expansion.to_json();
    value["method"] = json!(match method {
        Method::Transition => "transition",
        Method::Mt => "mt",
    });
    value["terms"] = expansion.flattened().0.to_json()["terms"].clone();
    if let (Value::Object(v), Value::Object(e)) = (&mut value, extra) {
        v.extend(e);
    }
    if let Some(c) = &check_result {
        value["check"] = json!(c);
    }
    let text = stanley_text(w, u, &expansion, check_result.as_deref());
    Ok((emit(format, text, || value), true))
}

/// Compares the two methods on the pair the tree method actually expands.
fn cross_check(
    w: &Permutation,
    u: &Permutation,
    method: Method,
    got: &StableExpansion,
) -> Result<String, Failure> {
    let mt = match stanley_via_mt(w, u) {
        Ok(mt) => mt,
        Err(e @ (Error::NotGrassmannian(_) | Error::Unsupported(_)))
            if method == Method::Transition =>
        {
            return Ok(format!("skipped ({e})"));
        }
        Err(e) => return Err(e.into()),
    };
    let (a, b) = mt.expansion.factors();
    let other = match method {
        Method::Transition if (a, b) == (w, u) => got.clone(),
        _ => stable_expand(a, b)?,
    };
    let mine = if method == Method::Mt {
        got
    } else {
        &mt.expansion
    };
    if mine.flattened() != other.flattened() {
        return Err(Failure::Check(format!(
            "methods disagree for {a} * {b}: mt gives {}, transition gives {}",
            mine.flattened(),
            other.flattened()
        )));
    }
    Ok("agree".to_string())
}

fn stanley_text(
    w: &Permutation,
    u: &Permutation,
    e: &StableExpansion,
    check: Option<&str>,
) -> String {
    let report = e.report();
    let flat = e.flattened();
    let mut s = String::new();
    let _ = writeln!(s, "F[{w}] * F[{u}] = {flat}");
    let (a, b) = e.factors();
    if (a, b) != (w, u) {
        let _ = writeln!(s, "expanded as: F[{a}] * F[{b}]");
    }
    let _ = writeln!(s, "terms: {}", flat.0.len());
    let _ = writeln!(s, "levels:");
    for (n, level) in e.trimmed_levels().iter().enumerate() {
        let words: Vec<String> = level.keys().map(Permutation::to_string).collect();
        let _ = writeln!(
            s,
            "  {n}: {}",
            if words.is_empty() {
                "-".to_string()
            } else {
                words.join(" ")
            }
        );
    }
    let num = report
        .stability_number
        .map_or("unknown".to_string(), |n| n.to_string());
    let _ = writeln!(s, "stability_number: {num}");
    let _ = writeln!(s, "conjecture_holds: {}", report.conjecture_holds);
    let ones: Vec<String> = report.one_positions.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "one_positions: {{{}}}", ones.join(","));
    let _ = writeln!(
        s,
        "one_positions_interval: {}",
        report.one_positions_interval
    );
    if let Some(c) = check {
        let _ = writeln!(s, "check: {c}");
    }
    s.trim_end().to_string()
}

fn elem(command: ElemCommand, format: Format) -> Result<String, Failure> {
    Ok(match command {
        ElemCommand::Expand { index, levels, .. } => {
            let e = elem_to_schubert(&index)?;
            if levels {
                let s = elem_stability(&index)?;
                let mut text = format!("{index} = {e}\n");
                for (n, level) in s.levels.iter().enumerate() {
                    let words: Vec<String> = level.keys().map(Permutation::to_string).collect();
                    let _ = writeln!(
                        text,
                        "  {n}: {}",
                        if words.is_empty() {
                            "-".to_string()
                        } else {
                            words.join(" ")
                        }
                    );
                }
                let _ = write!(
                    text,
                    "last_new_level: {}\npredicted_last: {}\nlast_level_agrees: {}\ntop_agrees: {}",
                    s.last_new_level.map_or("unknown".into(), |l| l.to_string()),
                    s.predicted_last,
                    s.last_level_agrees(),
                    s.top_agrees()
                );
                emit(
                    format,
                    text,
                    || json!({ "index": index, "terms": e.to_json()["terms"], "stability": s.to_json() }),
                )
            } else {
                emit(
                    format,
                    e.to_string(),
                    || json!({ "index": index, "terms": e.to_json()["terms"] }),
                )
            }
        }
        ElemCommand::Pieri { r, k, w, .. } => {
            let e = pieri(r, k, &w)?;
            emit(format, e.to_string(), || e.to_json())
        }
        ElemCommand::ToElem { v, n, .. } => {
            let e = schubert_to_elem(&v, n)?;
            emit(format, e.to_string(), || e.to_json())
        }
        ElemCommand::Kostka { n, .. } => {
            let k = kostka_matrix(n)?;
            emit(format, kostka_text(&k), || k.to_json())
        }
    })
}

fn kostka_text(k: &schubert_core::KostkaMatrix) -> String {
    let cols: Vec<String> = k
        .exponents
        .iter()
        .map(|a| {
            (1..=k.n)
                .map(|i| a.get(i).to_string())
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    let rows: Vec<String> = k
        .perms
        .iter()
        .map(|p| p.word_padded(k.n).iter().map(usize::to_string).collect())
        .collect();
    let table = |title: &str,
                 row_labels: &[String],
                 col_labels: &[String],
                 cell: &dyn Fn(usize, usize) -> String| {
        let width = col_labels
            .iter()
            .map(String::len)
            .chain(
                (0..row_labels.len())
                    .flat_map(|r| (0..col_labels.len()).map(move |c| (r, c)))
                    .map(|(r, c)| cell(r, c).len()),
            )
            .max()
            .unwrap_or(1);
        let label = row_labels.iter().map(String::len).max().unwrap_or(1);
        let mut s = format!("{title}\n{:label$}", "");
        for c in col_labels {
            let _ = write!(s, " {c:>width$}");
        }
        s.push('\n');
        for (r, name) in row_labels.iter().enumerate() {
            let _ = write!(s, "{name:label$}");
            for c in 0..col_labels.len() {
                let _ = write!(s, " {:>width$}", cell(r, c));
            }
            s.push('\n');
        }
        s
    };
    let mut s = table("K[w][a]", &rows, &cols, &|r, c| k.forward[r][c].to_string());
    s.push('\n');
    s.push_str(&table("K^-1[a][w]", &cols, &rows, &|r, c| {
        k.inverse[r][c].to_string()
    }));
    s.trim_end().to_string()
}
