//! Command-line front end: truncation, independence testing,
//! representative families, field utilities and finite-field embedding over
//! the shared text formats.
//!
//! Exit codes: 0 on success, 1 on domain errors (reported as
//! `ERROR <code>: <message>` on stderr), 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matrunc::field::{primitive_element, Field};
use matrunc::io;
use matrunc::repset::{repset_basis, repset_spanning};
use matrunc::truncation::{embed_finite_with_degree, randomized_truncation, truncate};

#[derive(Parser)]
#[command(
    name = "matrunc",
    version,
    about = "Deterministic rank truncation of matrices and representative families for linear matroids, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Basis,
    Spanning,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a deterministic k-truncation of a matrix file.
    Truncate {
        /// Input matrix file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of rows to truncate to.
        #[arg(long)]
        k: usize,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reinterpret the input entries over this field (Q, p, or p^l).
        #[arg(long)]
        field: Option<String>,
        /// Use the seeded randomized oracle instead of the deterministic
        /// construction (development aid; output is a plain matrix).
        #[arg(long, hide = true)]
        seed: Option<u64>,
    },
    /// Test whether a set of columns is linearly independent.
    Independent {
        /// Matrix, polynomial-matrix, or truncation file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated 1-based column indices, e.g. `1,3`.
        #[arg(long)]
        cols: String,
        /// Reinterpret the input entries over this field.
        #[arg(long)]
        field: Option<String>,
    },
    /// Compute a q-representative subfamily of a set family.
    Repset {
        /// Representation matrix of the matroid.
        #[arg(long)]
        matrix: PathBuf,
        /// Family file: one set of element labels per line.
        #[arg(long)]
        family: PathBuf,
        /// Extension budget q.
        #[arg(long)]
        q: usize,
        /// basis: at most C(p+q, p) sets; spanning: weight-aware, at most
        /// n*p*C(p+q, p) sets.
        #[arg(long, value_enum, default_value_t = Variant::Basis)]
        variant: Variant,
        /// Write the subfamily here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reinterpret the matrix entries over this field.
        #[arg(long)]
        field: Option<String>,
    },
    /// Print characteristic, order, modulus and a primitive element of a
    /// field.
    FieldInfo {
        /// Field spec: Q, a prime p, or p^l.
        #[arg(long)]
        field: String,
    },
    /// Re-express a finite-field truncation over a single extension field.
    Embed {
        /// Truncation file produced by `truncate`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Extension degree (defaults to n*k, the smallest valid choice).
        #[arg(long)]
        degree: Option<usize>,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures split by exit code: domain errors exit 1, input problems exit 2.
enum CliError {
    Domain(matrunc::Error),
    Input(String),
}

impl From<matrunc::Error> for CliError {
    fn from(e: matrunc::Error) -> CliError {
        CliError::Domain(e)
    }
}

impl From<io::ParseError> for CliError {
    fn from(e: io::ParseError) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_field_flag(flag: Option<&String>) -> Result<Option<Field>, CliError> {
    match flag {
        Some(spec) => Ok(Some(io::parse_field_spec(spec)?)),
        None => Ok(None),
    }
}

fn parse_cols(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|t| {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("invalid column index `{t}`")))?;
            if v == 0 {
                return Err(CliError::Input("column indices are 1-based".to_string()));
            }
            Ok(v - 1)
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Truncate {
            input,
            k,
            out,
            field,
            seed,
        } => {
            let field = parse_field_flag(field.as_ref())?;
            let src = read_file(&input)?;
            let (matrix, _) = io::parse_fmatrix(&src, field.as_ref())?;
            let text = match seed {
                Some(seed) => {
                    let result = randomized_truncation(&matrix, k, seed)?;
                    io::write_fmatrix(&result, None)
                }
                None => {
                    let result = truncate(&matrix, k)?;
                    io::write_truncation(&result)
                }
            };
            emit(&text, out.as_ref())
        }
        Command::Independent { input, cols, field } => {
            let field = parse_field_flag(field.as_ref())?;
            let src = read_file(&input)?;
            let cols = parse_cols(&cols)?;
            let keywords: Vec<&str> = src
                .lines()
                .filter_map(|l| l.split_whitespace().next())
                .collect();
            let verdict = if keywords.contains(&"method") {
                let t = io::parse_truncation(&src)?;
                t.matrix.independent_columns(&cols)?
            } else if keywords.contains(&"degree_bound") {
                let (m, _) = io::parse_polymatrix(&src, field.as_ref())?;
                m.independent_columns(&cols)?
            } else {
                let (m, _) = io::parse_fmatrix(&src, field.as_ref())?;
                m.independent_columns(&cols)?
            };
            println!("{verdict}");
            Ok(())
        }
        Command::Repset {
            matrix,
            family,
            q,
            variant,
            out,
            field,
        } => {
            let field = parse_field_flag(field.as_ref())?;
            let matrix_src = read_file(&matrix)?;
            let (a, labels) = io::parse_fmatrix(&matrix_src, field.as_ref())?;
            let labels = labels.unwrap_or_else(|| (1..=a.cols()).map(|i| i.to_string()).collect());
            let family_src = read_file(&family)?;
            let fam = io::parse_family(&family_src, &labels)?;
            let result = match variant {
                Variant::Basis => repset_basis(&a, &fam, q)?,
                Variant::Spanning => repset_spanning(&a, &fam, q)?,
            };
            emit(&io::write_family(&result, &labels), out.as_ref())
        }
        Command::FieldInfo { field } => {
            let field = io::parse_field_spec(&field)?;
            let mut text = format!("field {field}\n");
            text.push_str(&format!("characteristic {}\n", field.characteristic()));
            match field.size() {
                Some(size) => {
                    text.push_str(&format!("degree {}\n", field.extension_degree()));
                    text.push_str(&format!("order {size}\n"));
                    if let Some(modulus) = field.modulus() {
                        let coeffs: Vec<String> = modulus.iter().map(u64::to_string).collect();
                        text.push_str(&format!("modulus {}\n", coeffs.join(" ")));
                    }
                    let alpha = primitive_element(&field)?;
                    text.push_str(&format!("primitive {alpha}\n"));
                }
                None => text.push_str("order infinite\n"),
            }
            print!("{text}");
            Ok(())
        }
        Command::Embed { input, degree, out } => {
            let src = read_file(&input)?;
            let t = io::parse_truncation(&src)?;
            let r = degree.unwrap_or(t.n * t.k);
            let embedded = embed_finite_with_degree(&t, r)?;
            emit(&io::write_fmatrix(&embedded, None), out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            eprintln!("ERROR {}: {e}", e.code());
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
