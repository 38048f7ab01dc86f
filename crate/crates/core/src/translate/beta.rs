use std::collections::BTreeSet;

use super::TranslateError;
use crate::syntax::{parse_formula_with, FreshNames, Formula, ParseMode, Signature, Subst, Term};

/// Reading of the bounded quantifier `forall u <= z` in the translation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BetaMode {
    /// `u < z` is the primitive predicate `lt(u, z)`.
    #[default]
    Pa,
    /// `u < z` is `~(u = z) /\ (rtc a b. s(a) = b)(u, z)`; the output then
    /// contains RTC formulas over the successor relation.
    Tc,
}

/// Predicate symbol standing for `<` in PA mode.
pub const LT: &str = "lt";

/// Source of the default β-formula: Gödel's β-function over a Cantor-paired
/// code `c = π(a, d)`, with `k = a mod (1 + (i + 1) d)`.
pub const STANDARD_BETA: &str = "exists a. exists d. exists q. \
    add(mul(add(a, d), s(add(a, d))), mul(s(s(0)), d)) = mul(s(s(0)), c) \
    /\\ a = add(mul(q, s(mul(s(i), d))), k) \
    /\\ (exists e. add(k, s(e)) = s(mul(s(i), d)))";

/// The β-predicate template `B(c, i, k)` and the translation mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaConfig {
    pub formula: Formula,
    /// The designated free variables `[c, i, k]`.
    pub vars: [String; 3],
    pub mode: BetaMode,
}

impl BetaConfig {
    /// Checks that the free variables of `formula` are exactly `c`, `i`, `k`.
    pub fn new(formula: Formula, c: &str, i: &str, k: &str) -> Result<BetaConfig, TranslateError> {
        let vars = [c.to_string(), i.to_string(), k.to_string()];
        let want: BTreeSet<String> = vars.iter().cloned().collect();
        if want.len() != 3 {
            return Err(TranslateError::InvalidBetaFormula("the three variables must differ".into()));
        }
        let fv = formula.free_vars();
        if fv != want {
            let shown: Vec<_> = fv.into_iter().collect();
            return Err(TranslateError::InvalidBetaFormula(format!("free variables are {{{}}}", shown.join(", "))));
        }
        Ok(BetaConfig { formula: formula.canon(), vars, mode: BetaMode::Pa })
    }

    /// The bundled instance over `0, s, add, mul`.
    pub fn standard() -> BetaConfig {
        let mut sig = arith_signature().with_fn("mul", 2);
        let f = parse_formula_with(STANDARD_BETA, &mut sig, ParseMode::STRICT).expect("bundled formula parses");
        BetaConfig::new(f, "c", "i", "k").expect("bundled formula is well-formed")
    }

    pub fn with_mode(mut self, mode: BetaMode) -> Self {
        self.mode = mode;
        self
    }

    fn instance(&self, c: &Term, i: &Term, k: &Term) -> Formula {
        let s: Subst = [(self.vars[0].clone(), c.clone()), (self.vars[1].clone(), i.clone()), (self.vars[2].clone(), k.clone())].into();
        self.formula.substitute(&s)
    }
}

/// `const 0; fn s/1, add/2`.
pub fn arith_signature() -> Signature {
    Signature::new().with_const("0").with_fn("s", 1).with_fn("add", 2)
}

fn succ(t: Term) -> Term {
    Term::app("s", vec![t])
}

/// Replaces every RTC subformula by its arithmetic β-encoding. Inner RTC
/// formulas are translated first; other constructs are kept.
pub fn beta_translate(f: &Formula, cfg: &BetaConfig) -> Result<Formula, TranslateError> {
    let mut sig = arith_signature();
    let own = Signature::of_formulas([f, &cfg.formula]);
    sig.merge(&own).map_err(|e| TranslateError::SignatureMismatch(e.to_string()))?;
    if cfg.mode == BetaMode::Pa {
        sig.merge(&Signature::new().with_pred(LT, 2)).map_err(|e| TranslateError::SignatureMismatch(e.to_string()))?;
    }
    let mut avoid = BTreeSet::new();
    f.all_names_into(&mut avoid);
    cfg.formula.all_names_into(&mut avoid);
    avoid.extend(cfg.vars.iter().cloned());
    let mut fresh = FreshNames::avoiding(avoid);
    Ok(translate(&f.canon(), cfg, &mut fresh).canon())
}

fn open(body: &Formula, x: &str, fresh: &mut FreshNames) -> (String, Formula) {
    let n = fresh.fresh();
    let b = body.substitute1(x, &Term::var(&n));
    (n, b)
}

fn translate(f: &Formula, cfg: &BetaConfig, fresh: &mut FreshNames) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Pred(..) => f.clone(),
        Formula::Not(a) => Formula::not(translate(a, cfg, fresh)),
        Formula::And(a, b) => Formula::and(translate(a, cfg, fresh), translate(b, cfg, fresh)),
        Formula::Or(a, b) => Formula::or(translate(a, cfg, fresh), translate(b, cfg, fresh)),
        Formula::Implies(a, b) => Formula::implies(translate(a, cfg, fresh), translate(b, cfg, fresh)),
        Formula::Forall(x, body) => {
            let (n, b) = open(body, x, fresh);
            Formula::forall(n, translate(&b, cfg, fresh))
        }
        Formula::Exists(x, body) => {
            let (n, b) = open(body, x, fresh);
            Formula::exists(n, translate(&b, cfg, fresh))
        }
        Formula::Rtc { x, y, body, src, dst } => {
            let (nx, ny) = (fresh.fresh(), fresh.fresh());
            let s: Subst = [(x.clone(), Term::var(&nx)), (y.clone(), Term::var(&ny))].into();
            let inner = translate(&body.substitute(&s), cfg, fresh);
            let [z, c, u, v, w] = [(); 5].map(|_| Term::var(fresh.fresh()));
            let step: Subst = [(nx, v.clone()), (ny, w.clone())].into();
            let less = match cfg.mode {
                BetaMode::Pa => Formula::pred(LT, vec![u.clone(), z.clone()]),
                BetaMode::Tc => {
                    let (a, b) = (fresh.fresh(), fresh.fresh());
                    let chain = Formula::rtc(a.clone(), b.clone(), Formula::eq(succ(Term::var(&a)), Term::var(&b)), u.clone(), z.clone());
                    Formula::and(Formula::not(Formula::eq(u.clone(), z.clone())), chain)
                }
            };
            let bounded = Formula::implies(
                Formula::or(Formula::eq(u.clone(), z.clone()), less),
                exists_all(
                    [&v, &w],
                    Formula::and(
                        cfg.instance(&c, &u, &v),
                        Formula::and(cfg.instance(&c, &succ(u.clone()), &w), inner.substitute(&step)),
                    ),
                ),
            );
            let sequence = Formula::and(
                cfg.instance(&c, &Term::constant("0"), src),
                Formula::and(cfg.instance(&c, &succ(z.clone()), dst), forall_var(&u, bounded)),
            );
            Formula::or(Formula::eq(src.clone(), dst.clone()), exists_all([&z, &c], sequence))
        }
    }
}

fn forall_var(v: &Term, body: Formula) -> Formula {
    Formula::forall(v.as_var().expect("variable"), body)
}

fn exists_all<const N: usize>(vars: [&Term; N], body: Formula) -> Formula {
    vars.iter().rev().fold(body, |acc, v| Formula::exists(v.as_var().expect("variable"), acc))
}

/// Encodes the binary-tuple closure `(rtc (x1,x2) (y1,y2). φ)(s1,s2,t1,t2)`
/// through the pairing function.
#[allow(clippy::too_many_arguments)]
pub fn encode_rtc2(
    sig: &Signature,
    [x1, x2, y1, y2]: [&str; 4],
    phi: &Formula,
    [s1, s2]: [&Term; 2],
    [t1, t2]: [&Term; 2],
) -> Result<Formula, TranslateError> {
    if !sig.pair {
        return Err(TranslateError::MissingPairSymbol);
    }
    let names = [x1, x2, y1, y2];
    for (k, a) in names.iter().enumerate() {
        if names[..k].contains(a) {
            return Err(TranslateError::VariableClash(a.to_string()));
        }
    }
    let mut avoid: BTreeSet<String> = names.iter().map(|n| n.to_string()).collect();
    phi.all_names_into(&mut avoid);
    for t in [s1, s2, t1, t2] {
        t.free_vars_into(&mut avoid);
    }
    let mut fresh = FreshNames::avoiding(avoid);
    let (x, y) = (fresh.fresh(), fresh.fresh());
    let v = |n: &str| Term::var(n);
    let body = Formula::and(
        Formula::eq(v(&x), Term::pair(v(x1), v(x2))),
        Formula::and(Formula::eq(v(&y), Term::pair(v(y1), v(y2))), phi.clone()),
    );
    let body = names.iter().rev().fold(body, |acc, n| Formula::exists(*n, acc));
    Ok(Formula::rtc(x, y, body, Term::pair(s1.clone(), s2.clone()), Term::pair(t1.clone(), t2.clone())).canon())
}
