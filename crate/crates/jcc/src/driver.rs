//! The `jcc` command line: `check`, `norm` and `model`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use jcc_core::diag::Diagnostic;
use jcc_core::kernel;
use jcc_core::model::{check_soundness, interp_ctx, Judgment, Model, ModelConfig, Report, Tri};
use jcc_core::reduction::{self, ReductionConfig};

use crate::elab::Elaborator;
use crate::parser::{parse_file, parse_term};
use crate::report::write_report;
use crate::session::{Outcome, Session};

#[derive(Parser, Debug)]
#[command(name = "jcc", version, about = "Type checker and set-theoretic model evaluator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Iterations of inductive fixpoints and depth of membership derivations.
    #[arg(long, global = true, default_value_t = 32)]
    depth: usize,
    /// Reduction fuel per query.
    #[arg(long = "max-steps", global = true, default_value_t = 100_000)]
    max_steps: u64,
    /// Rank of the finite carrier standing in for `Type0`.
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Type-check every item of a file.
    Check { file: PathBuf },
    /// Print the normal form of a definition.
    Norm {
        file: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Interpret judgments of a file in the model and test `⟦t⟧ ∈ ⟦A⟧`.
    Model {
        file: PathBuf,
        /// Definition to interpret; without it every judgment of the file is tested.
        #[arg(long)]
        term: Option<String>,
        /// Type to test membership in (defaults to the declared type).
        #[arg(long = "type")]
        ty: Option<String>,
        /// Points sampled from infinite domains.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Write a key=value report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn diag_line(file: &Path, d: &Diagnostic) -> String {
    format!("{}:{}", file.display(), d)
}

/// Parses and checks a file. Returns the session and the number of rejected
/// items, or `None` on an IO error (already reported).
pub fn load(file: &Path, cfg: ReductionConfig, out: &mut dyn Write, err: &mut dyn Write) -> Option<(Session, usize)> {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{}: {}", file.display(), e);
            return None;
        }
    };
    let mut session = Session::new(cfg);
    let items = match parse_file(&text) {
        Ok(items) => items,
        Err(d) => {
            let _ = writeln!(err, "{}", diag_line(file, &d));
            return Some((session, 1));
        }
    };
    let mut rejected = 0;
    for item in &items {
        match session.run(item) {
            Ok(o) => {
                let _ = match o {
                    Outcome::Defined(names) => writeln!(out, "{} defined", names.join(", ")),
                    Outcome::Checked { term, ty } => writeln!(out, "{} : {}", term, ty),
                    Outcome::Asserted => writeln!(out, "equal"),
                    Outcome::Evaluated(v) => writeln!(out, "{}", v),
                    Outcome::Model { .. } => Ok(()),
                };
            }
            Err(d) => {
                rejected += 1;
                let _ = writeln!(err, "{}", diag_line(file, &d));
            }
        }
    }
    Some((session, rejected))
}

/// Runs the command line and returns the exit status. Results go to `out`,
/// diagnostics to `err`.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e) } else { write!(out, "{}", e) };
            return code;
        }
    };
    let rcfg = ReductionConfig { max_steps: cli.max_steps };
    match &cli.cmd {
        Cmd::Check { file } => match load(file, rcfg, out, err) {
            None => EXIT_USAGE,
            Some((_, 0)) => EXIT_OK,
            Some(_) => EXIT_REJECTED,
        },
        Cmd::Norm { file, term } => {
            let Some((session, rejected)) = load(file, rcfg, &mut std::io::sink(), err) else { return EXIT_USAGE };
            let el = Elaborator::new(session.ctx.clone(), rcfg);
            let t = match el.resolve(term, Default::default()) {
                Ok(t) => t,
                Err(d) => {
                    let _ = writeln!(err, "{}", diag_line(file, &d));
                    return EXIT_REJECTED;
                }
            };
            match reduction::normalize(&session.ctx, &t, rcfg) {
                Ok(v) => {
                    let _ = writeln!(out, "{}", jcc_core::pretty::print_in(&session.ctx, &v));
                    if rejected == 0 {
                        EXIT_OK
                    } else {
                        EXIT_REJECTED
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "{}: {}", file.display(), e);
                    EXIT_REJECTED
                }
            }
        }
        Cmd::Model { file, term, ty, samples, report } => {
            let mcfg = ModelConfig {
                universe_rank: cli.rank,
                fixpoint_depth: cli.depth,
                sample_budget: *samples,
                ..ModelConfig::default()
            };
            let Some((session, rejected)) = load(file, rcfg, &mut std::io::sink(), err) else { return EXIT_USAGE };
            let mut status = if rejected == 0 { EXIT_OK } else { EXIT_REJECTED };
            let mut all = Report::default();
            let mut depths = Vec::new();
            match term {
                Some(n) => {
                    let Some(mut j) = session.definition(n).cloned() else {
                        let _ = writeln!(err, "{}: no definition named `{}`", file.display(), n);
                        return EXIT_REJECTED;
                    };
                    if let Some(src) = ty {
                        let parsed = parse_term(src).and_then(|e| Elaborator::new(j.ctx.clone(), rcfg).expr(&e));
                        match parsed.and_then(|a| kernel::check(&j.ctx, &j.term, &a, rcfg).map(|_| a)) {
                            Ok(a) => j.ty = a,
                            Err(d) => {
                                let _ = writeln!(err, "{}", diag_line(file, &d));
                                return EXIT_REJECTED;
                            }
                        }
                    }
                    show_member(&j, mcfg, out);
                    let rep = check_soundness(std::slice::from_ref(&j), mcfg);
                    all.judgments.extend(rep.judgments);
                    depths.push(mcfg.fixpoint_depth);
                }
                None => {
                    let rep = check_soundness(&session.judgments, mcfg);
                    depths.extend(rep.judgments.iter().map(|_| mcfg.fixpoint_depth));
                    all.judgments.extend(rep.judgments);
                    for m in &session.models {
                        let c = ModelConfig { fixpoint_depth: m.depth as usize, ..mcfg };
                        let rep = check_soundness(std::slice::from_ref(&m.judgment), c);
                        depths.push(c.fixpoint_depth);
                        all.judgments.extend(rep.judgments);
                    }
                }
            }
            for (j, d) in all.judgments.iter().zip(&depths) {
                let _ = writeln!(out, "JUDGMENT {}: {} (depth={}, samples={})", j.name, j.verdict, d, j.samples);
            }
            if all.count(Tri::No) > 0 {
                status = EXIT_REJECTED;
            }
            if let Some(path) = report {
                if let Err(e) = write_report(path, file, mcfg, &all) {
                    let _ = writeln!(err, "{}: {}", path.display(), e);
                    return EXIT_USAGE;
                }
            }
            status
        }
    }
}

/// Prints `⟦t⟧` at the first valuation and whether it lies in `⟦A⟧`.
fn show_member(j: &Judgment, cfg: ModelConfig, out: &mut dyn Write) {
    let vals = match interp_ctx(&j.ctx, cfg) {
        Ok((v, _)) => v,
        Err(e) => {
            let _ = writeln!(out, "value: {}", e);
            return;
        }
    };
    let Some(g) = vals.first() else { return };
    let m = Model::new(&j.ctx, cfg);
    match m.eval(&j.term, g).and_then(|v| Ok((m.eval(&j.ty, g)?, v))) {
        Ok((a, v)) => {
            let _ = writeln!(out, "{}", v);
            let _ = writeln!(out, "member: {}", m.mem(&v, &a));
        }
        Err(e) => {
            let _ = writeln!(out, "value: {}", e);
        }
    }
}

/// Runs the command line against the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
