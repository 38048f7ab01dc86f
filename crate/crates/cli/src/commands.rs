use std::path::{Path, PathBuf};

use tcl_core::kernel::Theory;
use tcl_core::proofgraph::{read_proof, to_dot, to_latex, to_text, write_proof, ProofGraph};
use tcl_core::prover::{prove, SearchConfig, SearchOutcome, UnknownReason};
use tcl_core::semantics::{find_counter_model, format_valuation, SemanticsError};
use tcl_core::syntax::{parse_formula_with, parse_sequent_with, ParseMode, Sequent};
use tcl_core::tracecheck::{check_global_trace_condition, enumerate_basic_cycles, is_non_overlapping, Verdict as TraceVerdict};
use tcl_core::translate::{
    arith_signature, beta_translate, bundled_theory, explicit_to_cyclic, parse_theory, BetaConfig, BetaMode, LT,
};

use super::{Command, Format, Mode, OutArg, TheoryArg};

/// Process exit status for a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive = 0,
    Negative = 1,
    Unknown = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: &OutArg, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_theory(arg: &TheoryArg, named: &str) -> Result<Theory, CliError> {
    match &arg.theory {
        Some(path) if !path.exists() => match path.to_str().map(bundled_theory) {
            Some(Ok(t)) => Ok(t),
            _ => Err(CliError::Input(format!("{}: no such file or bundled theory", path.display()))),
        },
        Some(path) => parse_theory(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => bundled_theory(named).map_err(|e| CliError::Input(format!("{e}; pass --theory"))),
    }
}

fn load_proof(path: &Path) -> Result<ProofGraph, CliError> {
    read_proof(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A goal given inline or as the path of a file holding it.
fn load_goal(goal: &str, theory: &Theory) -> Result<Sequent, CliError> {
    let text = if Path::new(goal).is_file() { read(Path::new(goal))? } else { goal.to_string() };
    let mut sig = theory.signature.clone();
    parse_sequent_with(text.trim(), &mut sig, ParseMode::INFER).map_err(|e| CliError::Input(format!("goal: {e}")))
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

pub fn dispatch(cmd: Command) -> Result<Verdict, CliError> {
    match cmd {
        Command::Check { file, theory, normal } => check(&file, &theory, normal),
        Command::Prove { goal, theory, depth, max_nodes, model_size, allow_cut, global_companions, out } => {
            let theory = load_theory(&theory, "none")?;
            let goal = load_goal(&goal, &theory)?;
            let cfg = SearchConfig {
                max_depth: depth,
                max_nodes,
                allow_cut,
                theory,
                refute_size: model_size,
                global_companions,
                ..SearchConfig::default()
            };
            if depth == 0 || max_nodes == 0 {
                return Err(CliError::Input("--depth and --max-nodes must be positive".into()));
            }
            match prove(&goal, &cfg) {
                SearchOutcome::Proved(g) => {
                    let cycles = enumerate_basic_cycles(&g).map(|c| c.len()).unwrap_or(0);
                    eprintln!("proved; {}; {}", plural(g.nodes.len(), "node"), plural(cycles, "basic cycle"));
                    emit(&out, &write_proof(&g))?;
                    Ok(Verdict::Positive)
                }
                SearchOutcome::Refuted(m, v) => {
                    println!("refuted; counter-model of size {}", m.size);
                    println!("{m}");
                    println!("valuation: {}", format_valuation(&v));
                    Ok(Verdict::Negative)
                }
                SearchOutcome::Unknown(reason) => {
                    let why = match reason {
                        UnknownReason::Depth => "no proof within the depth bound",
                        UnknownReason::Budget => "search budget exhausted",
                    };
                    println!("unknown; {why}");
                    Ok(Verdict::Unknown)
                }
            }
        }
        Command::Refute { goal, theory, model_size } => {
            let theory = load_theory(&theory, "none")?;
            let goal = load_goal(&goal, &theory)?;
            match find_counter_model(&goal, model_size, &theory.sequents()) {
                Ok(Some((m, v))) => {
                    println!("counter-model of size {}", m.size);
                    println!("{m}");
                    println!("valuation: {}", format_valuation(&v));
                    Ok(Verdict::Negative)
                }
                Ok(None) => {
                    println!("no counter-model up to size {model_size}");
                    Ok(Verdict::Positive)
                }
                Err(e @ (SemanticsError::BudgetExceeded { .. } | SemanticsError::SizeAboveCap { .. })) => {
                    println!("unknown; {e}");
                    Ok(Verdict::Unknown)
                }
                Err(e) => Err(CliError::Input(e.to_string())),
            }
        }
        Command::TranslateInd { file, theory, out } => {
            let g = load_proof(&file)?;
            let theory = load_theory(&theory, &g.theory)?;
            match explicit_to_cyclic(&g, &theory) {
                Ok(c) => {
                    emit(&out, &write_proof(&c))?;
                    Ok(Verdict::Positive)
                }
                Err(e) => {
                    println!("not translated: {e}");
                    Ok(Verdict::Negative)
                }
            }
        }
        Command::TranslateBeta { file, mode, beta, out } => {
            let mut sig = arith_signature();
            if matches!(mode, Mode::Pa) {
                sig.predicates.insert(LT.to_string(), 2);
            }
            let cfg = match beta {
                Some(path) => {
                    let mut bsig = sig.clone();
                    let f = parse_formula_with(read(&path)?.trim(), &mut bsig, ParseMode::INFER)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    BetaConfig::new(f, "c", "i", "k").map_err(|e| CliError::Input(e.to_string()))?
                }
                None => BetaConfig::standard(),
            };
            let cfg = cfg.with_mode(if matches!(mode, Mode::Tc) { BetaMode::Tc } else { BetaMode::Pa });
            let f = parse_formula_with(read(&file)?.trim(), &mut sig, ParseMode::INFER)
                .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let t = beta_translate(&f, &cfg).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&out, &format!("{t}\n"))?;
            Ok(Verdict::Positive)
        }
        Command::Render { file, format, out } => {
            let g = load_proof(&file)?;
            let text = match format {
                Format::Dot => {
                    let report = check_global_trace_condition(&g);
                    let marked = report.witness.map(|w| w.period.into_iter().collect()).unwrap_or_default();
                    to_dot(&g, &marked)
                }
                Format::Tex => to_latex(&g),
                Format::Text => to_text(&g),
            };
            emit(&out, &text)?;
            Ok(Verdict::Positive)
        }
    }
}

fn check(file: &Path, theory: &TheoryArg, normal: bool) -> Result<Verdict, CliError> {
    let g = load_proof(file)?;
    let theory = load_theory(theory, &g.theory)?;
    if let Err(errors) = g.validate(&theory) {
        println!("invalid; {}", plural(errors.len(), "error"));
        for e in errors {
            println!("  {e}");
        }
        return Ok(Verdict::Negative);
    }
    let report = check_global_trace_condition(&g);
    match report.verdict {
        TraceVerdict::Accepted => {}
        TraceVerdict::Rejected => {
            println!("rejected; no progressing trace along the path");
            if let Some(w) = report.witness {
                println!("witness {w}");
            }
            return Ok(Verdict::Negative);
        }
        TraceVerdict::Indeterminate => {
            println!("unknown; trace closure exceeded its cap");
            return Ok(Verdict::Unknown);
        }
    }
    let (cycles, non_overlapping) = match (enumerate_basic_cycles(&g), is_non_overlapping(&g)) {
        (Ok(c), Ok(n)) => (c.len(), n),
        _ => {
            println!("accepted; too many basic cycles to count");
            return Ok(if normal { Verdict::Unknown } else { Verdict::Positive });
        }
    };
    let shape = if non_overlapping { "normal" } else { "not normal" };
    println!("accepted; {}; {shape}", plural(cycles, "basic cycle"));
    Ok(if normal && !non_overlapping { Verdict::Negative } else { Verdict::Positive })
}
