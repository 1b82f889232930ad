use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use filtra_core::exactlin::Field;
use filtra_core::filtalg::{diff_ops_example, gr_algebra, validate_algebra};
use filtra_core::generate::{postnikov, random_monic_sequence, t_adic, RandomShape};
use filtra_core::graded::is_dualizable_graded;
use filtra_core::monoidal::{day_tensor, internal_hom_fil, is_dualizable_filtered};
use filtra_core::sequence::{
    completion, completion_map, gr, is_complete, is_graded_equivalence, is_levelwise_quasi_iso, unit_sequence, Sequence,
};
use filtra_core::specseq::{abutment, pages};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::json::{self, DecodeError, Document};
use crate::render;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl From<DecodeError> for Failure {
    fn from(e: DecodeError) -> Self {
        Failure::Domain(format!("invalid input: {e}"))
    }
}

impl From<filtra_core::Error> for Failure {
    fn from(e: filtra_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExampleName {
    TAdic,
    DiffOps,
    Postnikov,
    Random,
}

#[derive(Parser, Debug)]
#[command(name = "filtra", version, about = "Filtered chain complexes: associated graded, completion, Day convolution, spectral sequences")]
struct Cli {
    /// Output format; verbs that produce a value default to `json`, reports to `table`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Input {
    /// Input file, or `-` for standard input.
    input: String,
}

#[derive(Args, Debug)]
struct Pair {
    left: String,
    right: String,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Associated graded of a sequence.
    Gr(Input),
    /// Completion of a sequence.
    Complete(Input),
    /// Whether a sequence is complete.
    IsComplete(Input),
    /// Whether a sequence map is a graded equivalence.
    Geq(Input),
    /// Day convolution of two monic sequences.
    Tensor(Pair),
    /// Internal hom of two sequences.
    Hom(Pair),
    /// Dual `Hom(x, 1)` of a sequence and its dualizability.
    Dual(Input),
    /// Spectral sequence pages.
    Ss {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_page: u64,
    },
    /// What the spectral sequence of a bounded-below monic sequence converges to.
    Abutment(Input),
    /// Associated graded algebra of a filtered algebra.
    AlgebraGr(Input),
    /// Built-in examples.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Complex file for `postnikov`.
        input: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        d: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `q` or `fp:P`.
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
    },
    /// Check a file against the invariants of its type.
    Validate(Input),
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| format!("expected q or fp:P, got {s:?}"))?;
            let p: u32 = p.parse().map_err(|_| format!("bad modulus {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn read_input(path: &str) -> Result<Value, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(json::parse(&text)?)
}

fn read_sequence(path: &str) -> Result<Sequence, Failure> {
    match json::document_from_json(&read_input(path)?)? {
        Document::Sequence(x) => Ok(x),
        Document::Complex(c) => Ok(Sequence::constant(c)),
        other => Err(Failure::Domain(format!("{path}: expected a sequence, found a {}", other.kind()))),
    }
}

/// What a verb prints, in both formats.
struct Report {
    json: Value,
    table: String,
}

impl Verb {
    fn default_format(&self) -> Format {
        match self {
            Verb::Gr(_) | Verb::Complete(_) | Verb::Tensor(_) | Verb::Hom(_) | Verb::Example { .. } => Format::Json,
            _ => Format::Table,
        }
    }
}

fn sequence_report(x: &Sequence) -> Report {
    Report { json: json::sequence_to_json(x), table: render::sequence(x, render::DEFAULT_WIDTH) }
}

fn flag_report(flags: &[(&str, bool)]) -> Report {
    let json = Value::Object(flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect());
    let lines: Vec<(&str, String)> = flags.iter().map(|(k, v)| (*k, v.to_string())).collect();
    Report { json, table: render::facts(&lines) }
}

fn example(name: ExampleName, input: Option<&str>, d: Option<u64>, seed: u64, field: Field) -> Result<Report, Failure> {
    let need_d = || d.map(|d| d as usize).ok_or_else(|| Failure::Usage("this example needs --d".into()));
    match name {
        ExampleName::TAdic => Ok(sequence_report(&t_adic(need_d()?, field)?)),
        ExampleName::DiffOps => {
            if field != Field::Rational {
                return Err(Failure::Usage("diff-ops is defined over q only".into()));
            }
            let a = diff_ops_example(need_d()?)?;
            Ok(Report { json: json::algebra_to_json(&a), table: render::sequence(a.carrier(), render::DEFAULT_WIDTH) })
        }
        ExampleName::Postnikov => {
            let path = input.ok_or_else(|| Failure::Usage("postnikov needs a complex file".into()))?;
            let c = match json::document_from_json(&read_input(path)?)? {
                Document::Complex(c) => c,
                other => return Err(Failure::Domain(format!("{path}: expected a chain complex, found a {}", other.kind()))),
            };
            Ok(sequence_report(&postnikov(&c)?))
        }
        ExampleName::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let shape = RandomShape { degrees: 3, lowest_degree: 0, max_total_dim: 3, max_levels: 4, bounded_below: false };
            Ok(sequence_report(&random_monic_sequence(&mut rng, field, &shape)))
        }
    }
}

fn execute(verb: Verb) -> Result<Report, Failure> {
    let width = render::DEFAULT_WIDTH;
    match verb {
        Verb::Gr(i) => {
            let g = gr(&read_sequence(&i.input)?);
            Ok(Report { json: json::graded_to_json(&g), table: render::graded(&g, width) })
        }
        Verb::Complete(i) => Ok(sequence_report(&completion(&read_sequence(&i.input)?).0)),
        Verb::IsComplete(i) => Ok(flag_report(&[("complete", is_complete(&read_sequence(&i.input)?))])),
        Verb::Geq(i) => {
            let f = match json::document_from_json(&read_input(&i.input)?)? {
                Document::SequenceMap(f) => f,
                other => return Err(Failure::Domain(format!("{}: expected a sequence map, found a {}", i.input, other.kind()))),
            };
            Ok(flag_report(&[
                ("graded_equivalence", is_graded_equivalence(&f)),
                ("levelwise_quasi_iso", is_levelwise_quasi_iso(&f)),
                ("completion_levelwise_quasi_iso", is_levelwise_quasi_iso(&completion_map(&f))),
            ]))
        }
        Verb::Tensor(p) => Ok(sequence_report(&day_tensor(&read_sequence(&p.left)?, &read_sequence(&p.right)?)?)),
        Verb::Hom(p) => Ok(sequence_report(&internal_hom_fil(&read_sequence(&p.left)?, &read_sequence(&p.right)?)?)),
        Verb::Dual(i) => {
            let x = read_sequence(&i.input)?;
            let dual = internal_hom_fil(&x, &unit_sequence(x.field()))?;
            let (filtered, graded) = (is_dualizable_filtered(&x), is_dualizable_graded(&gr(&x)));
            Ok(Report {
                json: json!({"dual": json::sequence_to_json(&dual), "dualizable": filtered, "graded_dualizable": graded}),
                table: format!(
                    "{}{}",
                    render::facts(&[("dualizable", filtered.to_string()), ("graded_dualizable", graded.to_string())]),
                    render::sequence(&dual, width)
                ),
            })
        }
        Verb::Ss { input, max_page } => {
            let ps = pages(&read_sequence(&input.input)?, max_page as usize);
            Ok(Report { json: Value::Array(ps.iter().map(json::page_to_json).collect()), table: render::pages(&ps, width) })
        }
        Verb::Abutment(i) => {
            let (g, matches) = abutment(&read_sequence(&i.input)?)?;
            Ok(Report {
                json: json!({"graded": json::graded_to_json(&g), "matches": matches}),
                table: format!("{}{}", render::facts(&[("matches", matches.to_string())]), render::graded(&g, width)),
            })
        }
        Verb::AlgebraGr(i) => {
            let a = match json::document_from_json(&read_input(&i.input)?)? {
                Document::Algebra(a) => a,
                other => return Err(Failure::Domain(format!("{}: expected a filtered algebra, found a {}", i.input, other.kind()))),
            };
            validate_algebra(&a).map_err(|d| Failure::Domain(format!("invalid algebra: {d}")))?;
            let g = gr_algebra(&a)?;
            let flags = [
                ("associative", g.is_associative()),
                ("unital", g.is_unital()),
                ("commutative", g.is_commutative()),
            ];
            let mut out = json!({"algebra": json::graded_algebra_to_json(&g)});
            for (k, v) in flags {
                out[k] = json!(v);
            }
            let lines: Vec<(&str, String)> = flags.iter().map(|(k, v)| (*k, v.to_string())).collect();
            Ok(Report { json: out, table: format!("{}{}", render::facts(&lines), render::graded(g.carrier(), width)) })
        }
        Verb::Example { name, input, d, seed, field } => example(name, input.as_deref(), d, seed, field),
        Verb::Validate(i) => {
            let doc = json::document_from_json(&read_input(&i.input)?)?;
            match &doc {
                Document::Algebra(a) => validate_algebra(a).map_err(|d| Failure::Domain(format!("invalid algebra: {d}")))?,
                Document::Sequence(x) if !x.is_monic() => {
                    let table = "valid sequence (not monic)\n".to_string();
                    return Ok(Report { json: json!({"kind": doc.kind(), "valid": true, "monic": false}), table });
                }
                _ => {}
            }
            Ok(Report { json: json!({"kind": doc.kind(), "valid": true}), table: format!("valid {}\n", doc.kind()) })
        }
    }
}

/// Runs the command line and returns the exit code: 0 on success, 1 when the
/// input violates an invariant, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let format = cli.format.unwrap_or(cli.verb.default_format());
    match execute(cli.verb) {
        Ok(report) => {
            let text = match format {
                Format::Json => json::to_text(&report.json),
                Format::Table => report.table,
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
