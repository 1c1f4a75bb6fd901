//! `qgwords`: batch front end for word representations, finite quasigroups,
//! reversible automata and linear semisymmetrizations.
//!
//! Exit codes: 0 success, 1 domain failure (the report is printed on
//! stdout), 2 usage, syntax, I/O or malformed-JSON error (on stderr).

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qgwords::finiteqg::{CayleyTable, FiniteQuasigroup, HomotopyFile};
use qgwords::homrep::{self, OpSet};
use qgwords::linss::{self, LinSSCandidate};
use qgwords::numeval;
use qgwords::revaut::{self, AutomatonFile, Purity};
use qgwords::term::{self, Term};
use qgwords::S3Element;

#[derive(Parser)]
#[command(name = "qgwords", version, about = "Central quasigroup words and finite quasigroup checks")]
#[command(after_help = "Quote terms for the shell: a\\b must reach qgwords as a single backslash, \
e.g. qgwords rep 'a\\b'.")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the S-expression of a term.
    Parse { term: String },
    /// Print the pique representation of a term.
    Rep {
        term: String,
        /// Also print the unnormalized X-monomial form.
        #[arg(long)]
        raw: bool,
    },
    /// Decide equality of two words.
    Eq { left: String, right: String },
    /// List the generators a term does not depend on.
    Eliminate { term: String },
    /// List cancelling leaf pairs and the elimination shape they match.
    Patterns { term: String },
    /// Enumerate word classes by increasing leaf count.
    Enumerate {
        /// Comma-separated generator names.
        #[arg(long, default_value = "a", value_delimiter = ',')]
        gens: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_leaves: usize,
        /// Build words from all six operations rather than `*`, `/`, `\`.
        #[arg(long)]
        all_ops: bool,
    },
    /// Evaluate the shortest one-generator words at a = [√2, 2].
    Plot16 {
        #[arg(long, default_value_t = 16)]
        count: usize,
        /// Write <prefix>.csv and <prefix>.svg instead of printing CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a Cayley table.
    CheckQuasigroup(FileArg),
    /// Print the conjugate of a quasigroup by an element of S3.
    Conjugate {
        file: PathBuf,
        /// Word in `s` = (1 2) and `t` = (2 3), or `1`.
        #[arg(long)]
        g: String,
    },
    /// Print the semisymmetrization of a quasigroup.
    Semisymmetrize(FileArg),
    /// Check a homotopy between two quasigroups.
    CheckHomotopy(FileArg),
    /// Validate a reversible automaton and classify its state spaces.
    CheckAutomaton(FileArg),
    /// Extract the quasigroup presented by a pure automaton.
    AutomatonToQuasigroup(FileArg),
    /// Check the linear semisymmetrization conditions and axioms.
    CheckLinss(FileArg),
    /// Print the automaton of a linear semisymmetrization.
    LinssAutomaton(FileArg),
    /// Identify a linear semisymmetrization with a semisymmetrized quasigroup.
    LinssIdentify(FileArg),
}

#[derive(Args)]
struct FileArg {
    file: PathBuf,
}

enum Failure {
    /// Usage, syntax or input error: message on stderr, exit 2.
    Usage(String),
    /// Well-formed input that fails a check: report on stdout, exit 1.
    Domain { text: String, json: Value },
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(kind: &str, e: impl Display) -> Failure {
    let message = e.to_string();
    Failure::Domain {
        json: json!({ "ok": false, "error": kind, "message": message }),
        text: message,
    }
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output { text: text.into(), json }
}

fn parse_term(text: &str) -> Result<Term, Failure> {
    term::parse(text).map_err(|e| Failure::Usage(format!("{e}\n  {text}\n  {}^", " ".repeat(e.position))))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        usage(format!(
            "{}: malformed JSON at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn read_quasigroup(path: &Path) -> Result<FiniteQuasigroup, Failure> {
    let table: CayleyTable = read_json(path)?;
    FiniteQuasigroup::from_cayley(&table).map_err(|e| domain("quasigroup", e))
}

fn cayley_output(q: &FiniteQuasigroup) -> Output {
    let json = serde_json::to_value(q.to_cayley()).expect("Cayley tables serialize");
    out(q.to_string(), json)
}

fn lines<T: Display>(items: impl IntoIterator<Item = T>, empty: &str) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        empty.to_string()
    } else {
        v.join("\n")
    }
}

fn purity_text(a: &revaut::ReversibleAutomaton, p: &Purity) -> String {
    match p {
        Purity::Pure { s1, s2, .. } => format!(
            "pure: |S1| = |S2| = |S3| = {}; bijections with S3 via s1 = {}, s2 = {}",
            a.size(3),
            a.space(1)[*s1],
            a.space(2)[*s2]
        ),
        Purity::Degenerate { empty } => format!("degenerate: empty spaces {empty:?}"),
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Parse { term } => {
            let t = parse_term(&term)?;
            Ok(out(t.to_sexpr(), json!({ "sexpr": t.to_sexpr(), "term": t.to_string() })))
        }
        Command::Rep { term, raw } => {
            let t = parse_term(&term)?;
            let rep = homrep::represent(&t);
            let mut text = rep.to_string();
            let mut json = json!({ "representation": rep.to_json() });
            if raw {
                let form = homrep::raw_form(&t);
                text = format!("{form}\n{text}");
                json["raw"] = Value::String(form.to_string());
            }
            Ok(out(text, json))
        }
        Command::Eq { left, right } => {
            let (l, r) = (parse_term(&left)?, parse_term(&right)?);
            let equal = homrep::equal(&l, &r);
            Ok(out(if equal { "equal" } else { "not equal" }, json!({ "equal": equal })))
        }
        Command::Eliminate { term } => {
            let gens = homrep::eliminated_arguments(&parse_term(&term)?);
            Ok(out(lines(&gens, "none"), json!(gens)))
        }
        Command::Patterns { term } => {
            let hits = homrep::find_elimination_patterns(&parse_term(&term)?);
            let json = Value::Array(hits.iter().map(|h| h.to_json()).collect());
            Ok(out(lines(&hits, "none"), json))
        }
        Command::Enumerate { gens, max_leaves, all_ops } => {
            let names: Vec<&str> = gens.iter().map(String::as_str).collect();
            let ops = if all_ops { OpSet::AllSix } else { OpSet::Basic };
            let classes = homrep::enumerate_words(&names, max_leaves, ops).map_err(|e| domain("enumeration", e))?;
            let text = lines(classes.iter().map(|c| format!("{}\t{}", c.leaves, c.text)), "");
            let json = classes
                .iter()
                .map(|c| json!({ "leaves": c.leaves, "word": c.text, "representation": c.representation.to_json() }))
                .collect();
            Ok(out(text, Value::Array(json)))
        }
        Command::Plot16 { count, out: prefix } => {
            let plot = numeval::shortest_words_plot(count).map_err(|e| domain("plot", e))?;
            let rows: Vec<Value> = plot
                .rows
                .iter()
                .map(|r| json!({ "word": r.word, "x": r.x, "y": r.y, "exact": r.point.to_string() }))
                .collect();
            let Some(prefix) = prefix else {
                return Ok(out(plot.csv().trim_end(), Value::Array(rows)));
            };
            let csv_path = prefix.with_extension("csv");
            let svg_path = prefix.with_extension("svg");
            fs::write(&csv_path, plot.csv()).map_err(|e| usage(format!("{}: {e}", csv_path.display())))?;
            fs::write(&svg_path, plot.svg()).map_err(|e| usage(format!("{}: {e}", svg_path.display())))?;
            let text = format!("wrote {} and {} ({} points)", csv_path.display(), svg_path.display(), rows.len());
            Ok(out(text, json!({ "csv": csv_path, "svg": svg_path, "rows": rows })))
        }
        Command::CheckQuasigroup(FileArg { file }) => {
            let q = read_quasigroup(&file)?;
            let ss = q.is_semisymmetric();
            let text = format!("valid quasigroup of order {}\nsemisymmetric: {ss}", q.order());
            Ok(out(text, json!({ "ok": true, "order": q.order(), "semisymmetric": ss })))
        }
        Command::Conjugate { file, g } => {
            let g: S3Element = g.parse().map_err(usage)?;
            Ok(cayley_output(&read_quasigroup(&file)?.conjugate(g)))
        }
        Command::Semisymmetrize(FileArg { file }) => Ok(cayley_output(&read_quasigroup(&file)?.semisymmetrize())),
        Command::CheckHomotopy(FileArg { file }) => {
            let h = read_json::<HomotopyFile>(&file)?
                .into_homotopy()
                .map_err(|e| domain("quasigroup", e))?;
            h.check().map_err(|e| domain("homotopy", e))?;
            let hom = h.is_homomorphism();
            let text = if hom { "homotopy (a homomorphism)" } else { "homotopy" };
            Ok(out(text, json!({ "ok": true, "homotopy": true, "homomorphism": hom })))
        }
        Command::CheckAutomaton(FileArg { file }) => {
            let a = revaut::validate_automaton(&read_json::<AutomatonFile>(&file)?).map_err(|e| domain("automaton", e))?;
            let p = revaut::purity_analysis(&a);
            let sizes = [a.size(1), a.size(2), a.size(3)];
            let text = format!("valid automaton with |S1|, |S2|, |S3| = {sizes:?}\n{}", purity_text(&a, &p));
            Ok(out(text, json!({ "ok": true, "sizes": sizes, "purity": p })))
        }
        Command::AutomatonToQuasigroup(FileArg { file }) => {
            let a = revaut::validate_automaton(&read_json::<AutomatonFile>(&file)?).map_err(|e| domain("automaton", e))?;
            let p = revaut::purity_analysis(&a);
            let l = p.carrier_maps().ok_or_else(|| domain("automaton", purity_text(&a, &p)))?;
            let q = revaut::extract_quasigroup(&a, &l).map_err(|e| domain("automaton", e))?;
            Ok(cayley_output(&q))
        }
        Command::CheckLinss(FileArg { file }) => {
            let c: LinSSCandidate = read_json(&file)?;
            let report = linss::verify_semisymmetrized_axioms(&c).map_err(|e| domain("linss", e))?;
            let json = serde_json::to_value(&report).expect("reports serialize");
            if report.all_pass() {
                Ok(out(report.to_string(), json))
            } else {
                Err(Failure::Domain { text: report.to_string(), json })
            }
        }
        Command::LinssAutomaton(FileArg { file }) => {
            let c: LinSSCandidate = read_json(&file)?;
            let alg = linss::check_conditions(&c).map_err(|e| domain("linss", e))?;
            let dec = linss::extract_thetas(&alg).map_err(|e| domain("linss", e))?;
            let a = linss::to_automaton(&dec).map_err(|e| domain("linss", e))?;
            let json = serde_json::to_value(a.to_file()).expect("automata serialize");
            Ok(out(a.to_string(), json))
        }
        Command::LinssIdentify(FileArg { file }) => {
            let c: LinSSCandidate = read_json(&file)?;
            let alg = linss::check_conditions(&c).map_err(|e| domain("linss", e))?;
            let report = linss::identify_semisymmetrization(&alg).map_err(|e| domain("linss", e))?;
            let json = serde_json::to_value(&report).expect("reports serialize");
            let mut text = format!(
                "order of A: {}\nl3 = -theta1: {}\nextracted operation is -x+y: {}\nisomorphism onto semisymmetrization: {}",
                report.order, report.l3_is_minus_theta1, report.opposed_subtraction, report.isomorphism
            );
            if let Some(w) = &report.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            if report.all_pass() {
                Ok(out(text, json))
            } else {
                Err(Failure::Domain { text, json })
            }
        }
    }
}

/// Prints to stdout, tolerating a closed pipe (e.g. `| head`).
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let as_json = cli.json;
    let render = |text: String, json: Value| {
        if as_json {
            serde_json::to_string_pretty(&json).expect("JSON values serialize")
        } else {
            text
        }
    };
    match run(cli.command) {
        Ok(o) => {
            emit(&render(o.text, o.json));
            ExitCode::SUCCESS
        }
        Err(Failure::Domain { text, json }) => {
            emit(&render(text, json));
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

