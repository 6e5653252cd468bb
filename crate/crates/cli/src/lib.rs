//! The `ncx` command-line tool.
//!
//! Exit codes: 0 on success, 1 on malformed input or usage, 2 when the input
//! is well formed but mathematically unacceptable (an invalid complex, a root
//! of the wrong order, a non-positive argument to `ext`, ...).

pub mod document;
pub mod error;
pub mod render;
pub mod report;

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use ncomplex::{
    ah_table, clebsch_gordan, contract, decompose, ext_dim, hom_dim, random_ncomplex, tensor, NComplex, PrimeField,
    RootOfUnity, SummandMultiset,
};
use serde_json::{json, Value};

pub use document::ComplexDocument;
pub use error::CliError;
use report::{Input, Report};

#[derive(Debug, Parser)]
#[command(name = "ncx", version, about = "Exact computations with N-complexes over prime fields")]
struct Cli {
    /// Print a JSON report instead of human-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check shapes and the nilpotency law
    Validate { file: String },
    /// Amplitude cohomology table
    Ah {
        file: String,
        /// Render as a table (the default)
        #[arg(long)]
        table: bool,
    },
    /// Indecomposable summands with multiplicities
    Decompose { file: String },
    /// q-twisted tensor product
    Tensor {
        left: String,
        right: String,
        /// `auto` or an element of exact order N
        #[arg(long, default_value = "auto")]
        q: String,
        /// Skip the order check on q and report the nilpotency failure, if any
        #[arg(long)]
        diagnose: bool,
        #[arg(short = 'o')]
        output: Option<String>,
    },
    /// Contraction to an ordinary complex
    #[command(allow_negative_numbers = true)]
    Contract {
        file: String,
        /// Initial condition
        #[arg(short = 'e')]
        initial: i64,
        /// Amplitude of contraction
        #[arg(short = 'a')]
        amplitude: usize,
        #[arg(short = 'o')]
        output: Option<String>,
    },
    /// Dimension of the space of chain maps
    Hom { left: String, right: String },
    /// Dimension of Ext^n in the positive category
    Ext {
        left: String,
        right: String,
        #[arg(short = 'n')]
        degree: usize,
    },
    /// Decompose M_i^u ⊗ M_j^v and compare with the closed form
    #[command(allow_negative_numbers = true)]
    Fusion {
        #[arg(long = "N")]
        order: usize,
        #[arg(long)]
        p: u64,
        i: i64,
        u: usize,
        j: i64,
        v: usize,
    },
    /// Seeded random complex
    Random {
        #[arg(long = "N")]
        order: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        seed: u64,
        /// Degree window for summand starts, as LO:HI
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Maximum number of summands
        #[arg(long)]
        max: usize,
        #[arg(short = 'o')]
        output: Option<String>,
    },
}

/// Human text and report payload of a successful command.
struct Outcome {
    text: String,
    result: Value,
}

struct Session<'a> {
    stdin: &'a mut dyn Read,
    inputs: Vec<Input>,
}

impl Session<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let mut bytes = Vec::new();
        if path == "-" {
            self.stdin.read_to_end(&mut bytes)?;
        } else {
            bytes = std::fs::read(path).map_err(|e| CliError::Malformed(format!("{path}: {e}")))?;
        }
        self.inputs.push(Input::new(path, &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Malformed(format!("{path}: not UTF-8")))
    }

    /// Parses a document without requiring the nilpotency law.
    fn load_unchecked(&mut self, path: &str) -> Result<NComplex, CliError> {
        ComplexDocument::parse(&self.read(path)?)?.to_complex()
    }

    fn load(&mut self, path: &str) -> Result<NComplex, CliError> {
        let m = self.load_unchecked(path)?;
        m.validate().map_err(CliError::Invalid)?;
        Ok(m)
    }

    fn load_pair(&mut self, left: &str, right: &str) -> Result<(NComplex, NComplex), CliError> {
        let (a, b) = (self.load(left)?, self.load(right)?);
        if a.order() != b.order() || a.field() != b.field() {
            return Err(CliError::Malformed(format!(
                "inputs disagree: N = {}, p = {} versus N = {}, p = {}",
                a.order(),
                a.field().modulus(),
                b.order(),
                b.field().modulus()
            )));
        }
        Ok((a, b))
    }
}

fn summands_json(ms: &SummandMultiset) -> Value {
    Value::Array(
        ms.iter()
            .map(|(m, n)| json!({"i": m.start, "l": m.length, "n": n}))
            .collect(),
    )
}

fn write_complex(m: &NComplex, output: Option<&str>) -> Result<Outcome, CliError> {
    let doc = ComplexDocument::from_complex(m);
    let text = match output {
        Some(path) => {
            std::fs::write(path, doc.to_json()).map_err(|e| CliError::Malformed(format!("{path}: {e}")))?;
            format!("wrote {path}\n")
        }
        None => doc.to_json(),
    };
    let mut result = json!({ "complex": doc });
    if let Some(path) = output {
        result["output"] = json!(path);
    }
    Ok(Outcome { text, result })
}

fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Malformed(format!("window must be LO:HI with LO <= HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn field(p: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(|e| CliError::Malformed(e.to_string()))
}

fn execute(command: Command, session: &mut Session<'_>) -> Result<Outcome, CliError> {
    match command {
        Command::Validate { file } => {
            let m = session.load_unchecked(&file)?;
            m.validate().map_err(CliError::Invalid)?;
            Ok(Outcome {
                text: "ok\n".into(),
                result: json!({"N": m.order(), "dims": m.dims(), "lo": m.lo(), "p": m.field().modulus()}),
            })
        }
        Command::Ah { file, table: _ } => {
            let m = session.load(&file)?;
            let t = ah_table(&m);
            let entries: Vec<Value> = t.iter().map(|((i, a), dim)| json!({"a": a, "dim": dim, "i": i})).collect();
            Ok(Outcome {
                text: render::ah_table(&t, m.support().unwrap_or((0, 0))),
                result: json!({"acyclic": t.is_empty(), "entries": entries}),
            })
        }
        Command::Decompose { file } => {
            let ms = decompose(&session.load(&file)?)?;
            Ok(Outcome {
                text: render::summand_lines(&ms),
                result: json!({"summands": summands_json(&ms)}),
            })
        }
        Command::Tensor {
            left,
            right,
            q,
            diagnose,
            output,
        } => {
            let (a, b) = session.load_pair(&left, &right)?;
            let root = if q == "auto" {
                RootOfUnity::primitive(a.field(), a.order())?.value()
            } else {
                let v: u64 = q
                    .parse()
                    .map_err(|_| CliError::Malformed(format!("--q must be `auto` or an integer, got {q:?}")))?;
                if v >= a.field().modulus() as u64 {
                    return Err(CliError::Malformed(format!("q = {v} is not below p = {}", a.field().modulus())));
                }
                a.field().elem(v as i64)
            };
            let product = if diagnose {
                if root.is_zero() {
                    return Err(CliError::Math("q must be nonzero".into()));
                }
                let t = ncomplex::tensor::twisted_tensor(&a, &b, root)?;
                t.validate().map_err(CliError::Invalid)?;
                t
            } else {
                tensor(&a, &b, &RootOfUnity::new(root, a.order())?)?
            };
            let mut out = write_complex(&product, output.as_deref())?;
            out.result["q"] = json!(root.value());
            Ok(out)
        }
        Command::Contract {
            file,
            initial,
            amplitude,
            output,
        } => {
            let m = session.load(&file)?;
            write_complex(&contract(&m, initial, amplitude)?, output.as_deref())
        }
        Command::Hom { left, right } => {
            let (a, b) = session.load_pair(&left, &right)?;
            let dim = hom_dim(&a, &b)?;
            Ok(Outcome {
                text: format!("{dim}\n"),
                result: json!({ "dim": dim }),
            })
        }
        Command::Ext { left, right, degree } => {
            let (a, b) = session.load_pair(&left, &right)?;
            let dim = ext_dim(&a, &b, degree)?;
            Ok(Outcome {
                text: format!("{dim}\n"),
                result: json!({"dim": dim, "n": degree}),
            })
        }
        Command::Fusion { order, p, i, u, j, v } => {
            let field = field(p)?;
            let expected = clebsch_gordan(order, i, u, j, v)?;
            let q = RootOfUnity::primitive(field, order)?;
            let a = NComplex::indecomposable(field, order, i, u)?;
            let b = NComplex::indecomposable(field, order, j, v)?;
            let computed = decompose(&tensor(&a, &b, &q)?)?;
            if computed != expected {
                return Err(CliError::Math(format!(
                    "decomposition {} disagrees with the closed form {}",
                    render::summand_inline(&computed),
                    render::summand_inline(&expected)
                )));
            }
            Ok(Outcome {
                text: format!("{}\n", render::summand_inline(&computed)),
                result: json!({"q": q.value().value(), "summands": summands_json(&computed)}),
            })
        }
        Command::Random {
            order,
            p,
            seed,
            window,
            max,
            output,
        } => {
            let (lo, hi) = parse_window(&window)?;
            let (m, _) = random_ncomplex(field(p)?, order, lo..=hi, max, seed)?;
            write_complex(&m, output.as_deref())
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    let json_mode = cli.json;
    let mut session = Session { stdin, inputs: Vec::new() };
    let outcome = execute(cli.command, &mut session);
    let report = |result: Value, status: &str| Report {
        command: args.iter().skip(1).cloned().collect(),
        inputs: session.inputs.clone(),
        result,
        status: status.to_string(),
    };
    match outcome {
        Ok(out) => {
            let text = if json_mode { report(out.result, "ok").render() } else { out.text };
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let code = e.exit_code();
            if json_mode && code == 2 {
                let status = if matches!(e, CliError::Invalid(_)) { "invalid" } else { "error" };
                let _ = stdout.write_all(report(json!({"error": e.to_string()}), status).render().as_bytes());
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}
