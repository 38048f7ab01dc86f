//! Local checking of rule instances. Every rule is described once, by the
//! function computing its premises from the conclusion and parameters; an
//! instance is correct iff its premises are exactly those and the side
//! conditions hold.

mod rules;
mod theory;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::syntax::{Formula, Sequent, Subst, Term};

pub use rules::{check_rule_instance, expected_premises, weakening_chain};
pub use theory::Theory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Axiom,
    WL,
    WR,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR,
    NotL,
    NotR,
    ExL,
    ExR,
    AllL,
    AllR,
    EqL1,
    EqL2,
    EqR,
    Cut,
    Subst,
    RtcRefl,
    RtcStep,
    RtcInd,
    RtcCase,
    PairInj,
    PairConstAx,
    TheoryAxiom,
}

impl RuleId {
    pub const ALL: [RuleId; 27] = [
        RuleId::Axiom,
        RuleId::WL,
        RuleId::WR,
        RuleId::AndL,
        RuleId::AndR,
        RuleId::OrL,
        RuleId::OrR,
        RuleId::ImpL,
        RuleId::ImpR,
        RuleId::NotL,
        RuleId::NotR,
        RuleId::ExL,
        RuleId::ExR,
        RuleId::AllL,
        RuleId::AllR,
        RuleId::EqL1,
        RuleId::EqL2,
        RuleId::EqR,
        RuleId::Cut,
        RuleId::Subst,
        RuleId::RtcRefl,
        RuleId::RtcStep,
        RuleId::RtcInd,
        RuleId::RtcCase,
        RuleId::PairInj,
        RuleId::PairConstAx,
        RuleId::TheoryAxiom,
    ];

    pub fn premise_count(self) -> usize {
        use RuleId::*;
        match self {
            Axiom | EqR | RtcRefl | PairConstAx | TheoryAxiom => 0,
            Cut | RtcStep | OrL | ImpL | AndR | RtcCase => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        use RuleId::*;
        match self {
            Axiom => "Axiom",
            WL => "WL",
            WR => "WR",
            AndL => "AndL",
            AndR => "AndR",
            OrL => "OrL",
            OrR => "OrR",
            ImpL => "ImpL",
            ImpR => "ImpR",
            NotL => "NotL",
            NotR => "NotR",
            ExL => "ExL",
            ExR => "ExR",
            AllL => "AllL",
            AllR => "AllR",
            EqL1 => "EqL1",
            EqL2 => "EqL2",
            EqR => "EqR",
            Cut => "Cut",
            Subst => "Subst",
            RtcRefl => "RtcRefl",
            RtcStep => "RtcStep",
            RtcInd => "RtcInd",
            RtcCase => "RtcCase",
            PairInj => "PairInj",
            PairConstAx => "PairConstAx",
            TheoryAxiom => "TheoryAxiom",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Rule-specific parameters. Which fields a rule reads:
///
/// * `principal`: every rule with a principal formula (for EqL1/EqL2 the
///   equation `s = t`).
/// * `witness`: AllL, ExR, and the intermediate term `r` of RtcStep.
/// * `eigenvars`: `[z]` for ExL, AllR, RtcCase; `[x, y]` for RtcInd.
/// * `template`: `(φ, x)` for EqL1/EqL2; `(ψ, x)` for RtcInd, with `x` the
///   first eigenvariable.
/// * `substitution`: Subst, and optionally TheoryAxiom.
/// * `source`: the premise of Subst.
/// * `cut_formula`, `contexts`: Cut, with contexts `(Γ ⊢ Δ, Σ ⊢ Π)`; both
///   default to the conclusion.
/// * `axiom`: the theory axiom name.
/// * `retain`: principal formulas stay in the premise contexts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleParams {
    pub principal: Option<Formula>,
    pub witness: Option<Term>,
    pub eigenvars: Vec<String>,
    pub template: Option<(Formula, String)>,
    pub substitution: Option<Subst>,
    pub cut_formula: Option<Formula>,
    pub source: Option<Sequent>,
    pub contexts: Option<(Sequent, Sequent)>,
    pub axiom: Option<String>,
    pub retain: bool,
}

impl RuleParams {
    pub fn principal(f: Formula) -> RuleParams {
        RuleParams { principal: Some(f.canon()), ..RuleParams::default() }
    }

    pub fn with_witness(mut self, t: Term) -> Self {
        self.witness = Some(t);
        self
    }

    pub fn with_eigenvars<I: IntoIterator<Item = S>, S: Into<String>>(mut self, vars: I) -> Self {
        self.eigenvars = vars.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_template(mut self, f: Formula, x: impl Into<String>) -> Self {
        self.template = Some((f.canon(), x.into()));
        self
    }

    pub fn with_substitution(mut self, s: Subst) -> Self {
        self.substitution = Some(s);
        self
    }

    pub fn with_source(mut self, s: Sequent) -> Self {
        self.source = Some(s);
        self
    }

    pub fn with_cut(mut self, f: Formula) -> Self {
        self.cut_formula = Some(f.canon());
        self
    }

    pub fn with_contexts(mut self, left: Sequent, right: Sequent) -> Self {
        self.contexts = Some((left, right));
        self
    }

    pub fn with_axiom(mut self, name: impl Into<String>) -> Self {
        self.axiom = Some(name.into());
        self
    }

    pub fn retaining(mut self) -> Self {
        self.retain = true;
        self
    }

    /// Parameters of a Subst node from `source` by `theta`.
    pub fn subst(source: Sequent, theta: Subst) -> RuleParams {
        RuleParams { substitution: Some(theta), source: Some(source), ..RuleParams::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub conclusion: Sequent,
    pub premises: Vec<Sequent>,
    pub params: RuleParams,
}

impl RuleInstance {
    /// Builds an instance whose premises are computed from the schema.
    pub fn derive(rule: RuleId, conclusion: Sequent, params: RuleParams) -> Result<RuleInstance, KernelError> {
        let premises = expected_premises(rule, &conclusion, &params)?;
        Ok(RuleInstance { rule, conclusion, premises, params })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("freshness violation: `{0}` occurs free in the context")]
    FreshnessViolation(String),
    #[error("symbol `{name}` used with arities {first} and {second}")]
    ArityMismatch { name: String, first: usize, second: usize },
    #[error("unknown theory axiom `{0}`")]
    UnknownTheoryAxiom(String),
    #[error("{rule} takes {expected} premises, found {found}")]
    PremiseCount { rule: RuleId, expected: usize, found: usize },
    #[error("rule not applicable: {0}")]
    NotApplicable(String),
}

/// Checks that every symbol is used with a single arity across `seqs`.
pub(crate) fn check_arities<'a>(seqs: impl IntoIterator<Item = &'a Sequent>) -> Result<(), KernelError> {
    let mut seen: BTreeMap<(u8, String), usize> = BTreeMap::new();
    let mut err = None;
    for s in seqs {
        for f in s.formulas() {
            f.visit_symbols(&mut |sym| {
                let (key, n) = match sym {
                    crate::syntax::Symbol::Const(c) => ((0, c.to_string()), 0),
                    crate::syntax::Symbol::Func(g, n) => ((0, g.to_string()), n),
                    crate::syntax::Symbol::Pred(p, n) => ((1, p.to_string()), n),
                };
                if let Some(&m) = seen.get(&key) {
                    if m != n && err.is_none() {
                        err = Some(KernelError::ArityMismatch { name: key.1.clone(), first: m, second: n });
                    }
                } else {
                    seen.insert(key, n);
                }
            });
        }
    }
    err.map_or(Ok(()), Err)
}

#[cfg(test)]
mod tests;
