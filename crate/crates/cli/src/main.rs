//! `symladder`: ladder documents, diagrams, descents and verification.
//!
//! Exit codes: 0 success, 1 malformed input, 2 validation failure,
//! 3 verification failure, 4 checks skipped by resource bounds under
//! `--strict`.

mod doc;
mod render;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use doc::{
    to_json, CertificateDoc, CliError, GensDoc, HeightDoc, IdealDoc, InfoDoc, Input, LadderDoc, MinorDoc,
    ReportDoc,
};
use symladder_core::biliaison::descend_chain;
use symladder_core::height::h_plus;
use symladder_core::ideal::{embed_block_matrix, from_cogenerated, CogeneratedSpec, MixedLadderIdeal};
use symladder_core::poly::groebner::{no_interrupt, ResourceBounds};
use symladder_core::poly::{verify_step, CellRing, CheckStatus, FieldSpec, PrimeField, Rationals};

#[derive(Parser)]
#[command(name = "symladder", version, about = "Symmetric mixed ladder determinantal ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a ladder or ideal document and print its canonical form.
    Validate { file: PathBuf },
    /// Draw the ladder as an ASCII grid.
    Render {
        file: PathBuf,
        /// Shade the cells that count towards the height.
        #[arg(long)]
        hplus: bool,
        /// Mark the distinguished points.
        #[arg(long)]
        points: bool,
    },
    /// Points, sizes, normalization, height and generator count.
    Info { file: PathBuf },
    /// List the generating minors.
    Gens {
        file: PathBuf,
        /// Also print each minor as a polynomial over Q.
        #[arg(long)]
        expand: bool,
    },
    /// Run the biliaison descent and emit its certificate.
    Descend {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every step of the descent with Gröbner bases.
    Verify {
        file: PathBuf,
        /// `q` or `fp:<p>`.
        #[arg(long, default_value = "fp:32003")]
        field: String,
        #[arg(long)]
        max_degree: Option<u32>,
        /// 1-based inclusive step range `a..b`.
        #[arg(long)]
        steps: Option<String>,
        /// Treat checks skipped by the bounds as failures (exit 4).
        #[arg(long)]
        strict: bool,
    },
    /// Build the cogenerated ideal of a ladder, then report as `info`.
    Cogenerated {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
    },
    /// Embed a matrix with a symmetric block, then report as `info`.
    Embed {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "n")]
        n: usize,
        /// `r1..r2,c1..c2`.
        #[arg(long)]
        block: String,
        #[arg(long = "t")]
        t: usize,
    },
}

fn read_input(path: &PathBuf) -> Result<Input, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Input::parse(&text)
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Malformed(format!("expected a range a..b, got {s:?}"));
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let lower = s.to_ascii_lowercase();
    if lower == "q" {
        return Ok(FieldSpec::Q);
    }
    let p = lower
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| CliError::Malformed(format!("unknown field {s:?}; use q or fp:<p>")))?;
    if PrimeField::new(p).is_none() {
        return Err(CliError::Malformed(format!("{p} is not a prime below 2^31")));
    }
    Ok(FieldSpec::Fp(p))
}

fn info(ideal: &MixedLadderIdeal) -> Result<String, CliError> {
    let nrm = ideal.normalize();
    let zero = nrm.is_zero();
    let height = if zero {
        HeightDoc {
            h_plus: Vec::new(),
            height: 0,
        }
    } else {
        let h = h_plus(&nrm).map_err(invalid)?;
        HeightDoc {
            h_plus: h.h_plus.iter().map(|c| [c.row, c.col]).collect(),
            height: h.height,
        }
    };
    let doc = InfoDoc {
        points: ideal.points().iter().map(|c| [c.row, c.col]).collect(),
        t: ideal.sizes().to_vec(),
        already_normalized: ideal.is_normalized(),
        normalized: IdealDoc::from_ideal(&nrm),
        zero,
        height,
        generators: nrm.enumerate_generators().len(),
    };
    Ok(to_json(&doc))
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

/// Output of a successful command and its exit code.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate { file } => {
            let out = match read_input(&file)? {
                Input::Ladder(l) => to_json(&LadderDoc::from_ladder(&l.to_ladder()?)),
                Input::Ideal(i) => to_json(&IdealDoc::from_ideal(&i.to_ideal()?)),
            };
            Ok(Outcome::ok(out))
        }
        Command::Render { file, hplus, points } => {
            let input = read_input(&file)?;
            let ladder = input.ladder()?;
            let mut shaded = BTreeSet::new();
            let mut marked = BTreeSet::new();
            if hplus || points {
                let ideal = input.ideal()?;
                if points {
                    marked = ideal.points().iter().copied().collect();
                }
                let nrm = ideal.normalize();
                if hplus && !nrm.is_zero() {
                    shaded = h_plus(&nrm).map_err(invalid)?.h_plus;
                }
            }
            Ok(Outcome::ok(render::render(&ladder, &shaded, &marked)))
        }
        Command::Info { file } => Ok(Outcome::ok(info(&read_input(&file)?.ideal()?)?)),
        Command::Gens { file, expand } => {
            let ideal = read_input(&file)?.ideal()?;
            let full = expand.then(|| CellRing::full(Rationals, ideal.ladder().n()));
            let minors = ideal
                .enumerate_generators()
                .iter()
                .map(|m| {
                    let mut d = MinorDoc::new(m);
                    if let Some(cr) = &full {
                        let p = cr.expand_minor(m).expect("minors lie in the matrix");
                        d.poly = Some(cr.ring().to_text(&p));
                    }
                    d
                })
                .collect();
            Ok(Outcome::ok(to_json(&GensDoc { minors })))
        }
        Command::Descend { file, out } => {
            let ideal = read_input(&file)?.ideal()?;
            let cert = descend_chain(&ideal).map_err(invalid)?;
            let json = to_json(&CertificateDoc::new(&cert));
            let summary = format!(
                "{}, {}, terminal: {}",
                plural(cert.biliaison_count, "biliaison", "biliaisons"),
                plural(cert.g_link_count, "G-link", "G-links"),
                plural(cert.terminal.enumerate_generators().len(), "linear form", "linear forms"),
            );
            match out {
                Some(path) => {
                    fs::write(&path, json + "\n")
                        .map_err(|e| CliError::Malformed(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Outcome::ok(summary))
                }
                None => Ok(Outcome {
                    stdout: json,
                    stderr: summary,
                    code: 0,
                }),
            }
        }
        Command::Verify {
            file,
            field,
            max_degree,
            steps,
            strict,
        } => {
            let field = parse_field(&field)?;
            let range = steps.as_deref().map(parse_range).transpose()?;
            let ideal = read_input(&file)?.ideal()?;
            let cert = descend_chain(&ideal).map_err(invalid)?;
            let mut bounds = ResourceBounds::default();
            if let Some(d) = max_degree {
                bounds.max_degree = d;
            }
            let mut reports = Vec::new();
            let (mut failed, mut skipped) = (0, 0);
            for (i, step) in cert.steps.iter().enumerate() {
                let id = i + 1;
                if range.is_some_and(|(a, b)| id < a || id > b) {
                    continue;
                }
                let rep = verify_step(step, id, field, &bounds, &no_interrupt);
                failed += rep.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
                skipped += rep.checks.iter().filter(|c| c.status == CheckStatus::Skipped).count();
                reports.push(ReportDoc::new(&rep));
            }
            let code = if failed > 0 {
                3
            } else if skipped > 0 && strict {
                4
            } else {
                0
            };
            Ok(Outcome {
                stdout: to_json(&reports),
                stderr: format!(
                    "{} verified over {}: {failed} failed, {skipped} skipped",
                    plural(reports.len(), "step", "steps"),
                    field.name()
                ),
                code,
            })
        }
        Command::Cogenerated { file, alpha } => {
            let ladder = read_input(&file)?.ladder()?;
            let ideal = from_cogenerated(&ladder, &CogeneratedSpec { alpha }).map_err(invalid)?;
            Ok(Outcome::ok(info(&ideal)?))
        }
        Command::Embed { m, n, block, t } => {
            let (rows, cols) = block
                .split_once(',')
                .ok_or_else(|| CliError::Malformed(format!("expected r1..r2,c1..c2, got {block:?}")))?;
            let (r1, r2) = parse_range(rows)?;
            let (c1, c2) = parse_range(cols)?;
            let ideal = embed_block_matrix(m, n, r1..=r2, c1..=c2, t).map_err(invalid)?;
            Ok(Outcome::ok(info(&ideal)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                let nl = if out.stdout.ends_with('\n') { "" } else { "\n" };
                let mut stdout = std::io::stdout().lock();
                let _ = write!(stdout, "{}{nl}", out.stdout);
                let _ = stdout.flush();
            }
            if !out.stderr.is_empty() {
                eprintln!("{}", out.stderr);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
