use std::fmt::{self, Write};

use super::{Formula, Sequent, Term, PAIR};

const PREC_BINDER: u8 = 0;
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NOT: u8 = 4;
const PREC_ATOM: u8 = 5;

pub(crate) fn fmt_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(v) | Term::Const(v) => f.write_str(v),
        Term::App(g, args) if g == PAIR && args.len() == 2 => write!(f, "<{}, {}>", args[0], args[1]),
        Term::App(g, args) => {
            write!(f, "{g}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                fmt_term(a, f)?;
            }
            f.write_char(')')
        }
    }
}

fn prec(x: &Formula) -> u8 {
    match x {
        Formula::Forall(..) | Formula::Exists(..) => PREC_BINDER,
        Formula::Implies(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(..) => PREC_NOT,
        _ => PREC_ATOM,
    }
}

fn fmt_at(x: &Formula, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // Binders are parenthesized whenever they are an operand.
    let paren = prec(x) < ctx || (prec(x) == PREC_BINDER && ctx > PREC_BINDER);
    if paren {
        f.write_char('(')?;
    }
    match x {
        Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
        Formula::Pred(p, args) if args.is_empty() => f.write_str(p)?,
        Formula::Pred(p, args) => {
            write!(f, "{p}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                fmt_term(a, f)?;
            }
            f.write_char(')')?;
        }
        Formula::Not(a) => {
            f.write_char('~')?;
            fmt_at(a, PREC_NOT, f)?;
        }
        Formula::And(a, b) => {
            fmt_at(a, PREC_AND + 1, f)?;
            f.write_str(" /\\ ")?;
            fmt_at(b, PREC_AND, f)?;
        }
        Formula::Or(a, b) => {
            fmt_at(a, PREC_OR + 1, f)?;
            f.write_str(" \\/ ")?;
            fmt_at(b, PREC_OR, f)?;
        }
        Formula::Implies(a, b) => {
            fmt_at(a, PREC_IMP + 1, f)?;
            f.write_str(" -> ")?;
            fmt_at(b, PREC_IMP, f)?;
        }
        Formula::Forall(v, body) => {
            write!(f, "forall {v}. ")?;
            fmt_at(body, PREC_BINDER, f)?;
        }
        Formula::Exists(v, body) => {
            write!(f, "exists {v}. ")?;
            fmt_at(body, PREC_BINDER, f)?;
        }
        Formula::Rtc { x: bx, y: by, body, src, dst } => {
            write!(f, "(rtc {bx} {by}. ")?;
            fmt_at(body, PREC_BINDER, f)?;
            write!(f, ")({src}, {dst})")?;
        }
    }
    if paren {
        f.write_char(')')?;
    }
    Ok(())
}

pub(crate) fn fmt_formula(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    fmt_at(x, PREC_BINDER, f)
}

pub(crate) fn fmt_sequent(s: &Sequent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let side = |fs: &std::collections::BTreeSet<Formula>| fs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let (a, b) = (side(&s.ante), side(&s.succ));
    match (a.is_empty(), b.is_empty()) {
        (true, true) => f.write_str("|-"),
        (true, false) => write!(f, "|- {b}"),
        (false, true) => write!(f, "{a} |-"),
        (false, false) => write!(f, "{a} |- {b}"),
    }
}

/// Canonical text of a formula.
pub fn print_formula(f: &Formula) -> String {
    f.canon().to_string()
}

pub fn print_sequent(s: &Sequent) -> String {
    s.to_string()
}
