use std::collections::BTreeMap;

use super::{NodeId, NodeKind, ProofGraph};
use crate::kernel::{RuleId, RuleInstance};
use crate::syntax::{Formula, Sequent};

/// One trace pair across an edge: an antecedent RTC formula of the source
/// node and one of the target node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceStep {
    pub from: Formula,
    pub to: Formula,
    pub progressing: bool,
}

/// Trace pairs of every edge `(node, premise index)` of the unfolded graph.
/// Bud edges use premise index 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceRelation {
    pub edges: BTreeMap<(NodeId, usize), Vec<TraceStep>>,
}

impl TraceRelation {
    pub fn steps(&self, node: NodeId, premise: usize) -> &[TraceStep] {
        self.edges.get(&(node, premise)).map_or(&[], Vec::as_slice)
    }
}

fn identity_steps(conclusion: &Sequent, premise: &Sequent) -> Vec<TraceStep> {
    conclusion
        .ante_rtcs()
        .into_iter()
        .filter(|f| premise.ante.contains(*f))
        .map(|f| TraceStep { from: f.clone(), to: f.clone(), progressing: false })
        .collect()
}

/// Trace pairs of rule instance `r` towards its `i`-th premise.
pub fn rule_trace_steps(r: &RuleInstance, i: usize) -> Vec<TraceStep> {
    let premise = &r.premises[i];
    match r.rule {
        RuleId::Subst => {
            let theta = r.params.substitution.clone().unwrap_or_default();
            let mut out: Vec<TraceStep> = premise
                .ante_rtcs()
                .into_iter()
                .filter_map(|to| {
                    let from = to.substitute(&theta);
                    r.conclusion.ante.contains(&from).then(|| TraceStep { from, to: to.clone(), progressing: false })
                })
                .collect();
            out.sort();
            out
        }
        RuleId::RtcCase if i == 1 => {
            let mut out = identity_steps(&r.conclusion, premise);
            if let (Some(principal @ Formula::Rtc { src, .. }), [z]) = (&r.params.principal, r.params.eigenvars.as_slice()) {
                let ancestor = principal.with_endpoints(src.clone(), crate::syntax::Term::var(z.clone())).expect("rtc");
                out.push(TraceStep { from: principal.clone(), to: ancestor, progressing: true });
            }
            out.sort();
            out
        }
        _ => identity_steps(&r.conclusion, premise),
    }
}

/// The complete per-edge trace relation of `g`.
pub fn trace_relation(g: &ProofGraph) -> TraceRelation {
    let mut rel = TraceRelation::default();
    for (&id, node) in &g.nodes {
        match &node.kind {
            NodeKind::Internal { rule, children } => {
                for i in 0..children.len().min(rule.premises.len()) {
                    rel.edges.insert((id, i), rule_trace_steps(rule, i));
                }
            }
            NodeKind::Bud { companion } => {
                let steps = g.node(*companion).map_or_else(Vec::new, |c| identity_steps(&node.sequent, &c.sequent));
                rel.edges.insert((id, 0), steps);
            }
            NodeKind::Open => {}
        }
    }
    rel
}
