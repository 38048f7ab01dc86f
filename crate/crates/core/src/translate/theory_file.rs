use crate::kernel::Theory;
use crate::proofgraph::parse_signature_decl;
use crate::syntax::{parse_sequent_with, ParseMode};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoryFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("no `theory <name>` line")]
    MissingName,
    #[error("unknown bundled theory `{0}`")]
    Unknown(String),
}

const ARITH: &str = include_str!("../../../../theories/arith.tc");
const STEP: &str = include_str!("../../../../theories/step.tc");

/// Parses a theory file:
///
/// ```text
/// theory step
/// signature: const 0; fn s/1; pred p/1
/// axiom step: p(x), s(x) = y |- p(y)
/// ```
///
/// Blank lines and lines starting with `#` are ignored. Axioms must use
/// only declared symbols; undeclared identifiers are schematic variables.
pub fn parse_theory(text: &str) -> Result<Theory, TheoryFileError> {
    let mut theory: Option<Theory> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| TheoryFileError::Syntax { line: k + 1, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("theory ") {
            if theory.is_some() {
                return Err(err("second `theory` line".into()));
            }
            theory = Some(Theory::new(name.trim(), Default::default()));
        } else if let Some(decl) = line.strip_prefix("signature:") {
            let t = theory.as_mut().ok_or(TheoryFileError::MissingName)?;
            t.signature = parse_signature_decl(decl.trim()).map_err(err)?;
        } else if let Some(rest) = line.strip_prefix("axiom ") {
            let t = theory.as_mut().ok_or(TheoryFileError::MissingName)?;
            let (name, seq) = rest.split_once(':').ok_or_else(|| err("expected `axiom <name>: <sequent>`".into()))?;
            let name = name.trim();
            if name.is_empty() || t.axiom(name).is_some() {
                return Err(err(format!("bad or repeated axiom name `{name}`")));
            }
            let mut sig = t.signature.clone();
            let s = parse_sequent_with(seq, &mut sig, ParseMode::STRICT).map_err(|e| err(e.to_string()))?;
            t.axioms.push((name.to_string(), s));
        } else {
            return Err(err(format!("unrecognized line `{line}`")));
        }
    }
    theory.ok_or(TheoryFileError::MissingName)
}

/// Text form read back by [`parse_theory`].
pub fn write_theory(t: &Theory) -> String {
    let mut out = format!("theory {}\nsignature: {}\n", t.name, t.signature);
    for (name, s) in &t.axioms {
        out.push_str(&format!("axiom {name}: {s}\n"));
    }
    out
}

/// Theories shipped with the crate: `none`, `arith` and `step`.
pub fn bundled_theory(name: &str) -> Result<Theory, TheoryFileError> {
    match name {
        "none" => Ok(Theory::empty()),
        "arith" => parse_theory(ARITH),
        "step" => parse_theory(STEP),
        other => Err(TheoryFileError::Unknown(other.to_string())),
    }
}
