//! Bounded search for cyclic proofs: iterative deepening over a fair rule
//! order, buds on substitution instances of ancestors, and acceptance
//! gated on the trace condition. Invalid goals are refuted first by a
//! small counter-model search.

mod expand;

use std::cell::Cell;

pub use expand::{expand_fair, witness_pool};

use crate::kernel::{check_rule_instance, RuleId, RuleInstance, RuleParams, Theory};
use crate::proofgraph::{NodeId, NodeKind, ProofGraph};
use crate::semantics::{find_counter_model, FiniteModel, Valuation};
use crate::syntax::{match_sequent_into, Sequent, Signature, Subst};
use crate::tracecheck::{check_global_trace_condition, TraceGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_depth: usize,
    /// Budget on the number of search states visited.
    pub max_nodes: u64,
    pub allow_cut: bool,
    pub theory: Theory,
    /// Number of fresh variables added to each node's witness pool.
    pub fresh_pool: usize,
    /// Largest model size tried by the up-front refutation; 0 disables it.
    pub refute_size: usize,
    /// Let buds point at any internal node, not only at ancestors.
    pub global_companions: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: 12,
            max_nodes: 100_000,
            allow_cut: false,
            theory: Theory::empty(),
            fresh_pool: 1,
            refute_size: 3,
            global_companions: false,
        }
    }
}

impl SearchConfig {
    pub fn with_theory(mut self, theory: Theory) -> Self {
        self.theory = theory;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// No proof within the depth bound.
    Depth,
    /// The state budget ran out.
    Budget,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Proved(ProofGraph),
    Refuted(FiniteModel, Valuation),
    Unknown(UnknownReason),
}

#[derive(Clone)]
struct Goal {
    node: NodeId,
    depth: usize,
    /// Nodes from the root down to and including `node`.
    path: Vec<NodeId>,
}

#[derive(Clone)]
struct State {
    g: ProofGraph,
    goals: Vec<Goal>,
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    limit: usize,
    visited: Cell<u64>,
    out_of_budget: Cell<bool>,
}

/// Searches for a proof of `goal`, after looking for a counter-model of
/// size at most `cfg.refute_size`.
pub fn prove(goal: &Sequent, cfg: &SearchConfig) -> SearchOutcome {
    if cfg.refute_size > 0 {
        if let Ok(Some((m, v))) = find_counter_model(goal, cfg.refute_size, &cfg.theory.sequents()) {
            return SearchOutcome::Refuted(m, v);
        }
    }
    let mut sig = Signature::of_formulas(goal.formulas());
    if sig.merge(&cfg.theory.signature).is_err() {
        return SearchOutcome::Unknown(UnknownReason::Depth);
    }
    let visited = Cell::new(0);
    for limit in 1..=cfg.max_depth {
        let search = Search { cfg, limit, visited: Cell::new(visited.get()), out_of_budget: Cell::new(false) };
        let g = ProofGraph::with_root(sig.clone(), cfg.theory.name.clone(), goal.clone());
        let root = g.root;
        let st = State { g, goals: vec![Goal { node: root, depth: 0, path: vec![root] }] };
        if let Some(p) = search.run(st) {
            return SearchOutcome::Proved(p);
        }
        if search.out_of_budget.get() {
            return SearchOutcome::Unknown(UnknownReason::Budget);
        }
        visited.set(search.visited.get());
    }
    SearchOutcome::Unknown(UnknownReason::Depth)
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let n = self.visited.get() + 1;
        self.visited.set(n);
        if n > self.cfg.max_nodes {
            self.out_of_budget.set(true);
        }
        !self.out_of_budget.get()
    }

    fn run(&self, mut st: State) -> Option<ProofGraph> {
        if !self.tick() {
            return None;
        }
        let Some(goal) = st.goals.pop() else {
            return self.accept(st.g);
        };
        let seq = st.g.sequent(goal.node).clone();
        let theory = &self.cfg.theory;

        // A closing rule never needs an alternative.
        if let Some((rule, params)) = expand::closures(&seq, theory).into_iter().next() {
            let mut next = st.clone();
            self.close(&mut next.g, goal.node, rule, params)?;
            return self.run(next);
        }
        for next in self.buds(&st, &goal) {
            if let Some(p) = self.run(next) {
                return Some(p);
            }
            if self.out_of_budget.get() {
                return None;
            }
        }
        if goal.depth >= self.limit {
            return None;
        }
        if let Some((rule, params)) = expand::invertible(&seq) {
            let next = self.step(&st, &goal, rule, params)?;
            return self.run(next);
        }
        for (rule, params) in expand_fair(&seq, self.cfg) {
            let Some(next) = self.step(&st, &goal, rule, params) else { continue };
            if let Some(p) = self.run(next) {
                return Some(p);
            }
            if self.out_of_budget.get() {
                return None;
            }
        }
        None
    }

    fn accept(&self, g: ProofGraph) -> Option<ProofGraph> {
        let ok = g.validate(&self.cfg.theory).is_ok() && check_global_trace_condition(&g).is_accepted();
        ok.then_some(g)
    }

    /// Applies a rule at the goal and pushes its premises, the first premise
    /// on top of the stack.
    fn step(&self, st: &State, goal: &Goal, rule: RuleId, params: RuleParams) -> Option<State> {
        let inst = RuleInstance::derive(rule, st.g.sequent(goal.node).clone(), params).ok()?;
        check_rule_instance(&inst, &self.cfg.theory).ok()?;
        let mut next = st.clone();
        let children = next.g.apply(goal.node, inst);
        for &c in children.iter().rev() {
            let mut path = goal.path.clone();
            path.push(c);
            next.goals.push(Goal { node: c, depth: goal.depth + 1, path });
        }
        Some(next)
    }

    /// Weakens `at` to the exact conclusion of a closing rule and applies it.
    fn close(&self, g: &mut ProofGraph, at: NodeId, rule: RuleId, params: RuleParams) -> Option<()> {
        let seq = g.sequent(at).clone();
        let target = match rule {
            RuleId::Axiom => {
                let f = params.principal.clone()?;
                Sequent::new([f.clone()], [f])
            }
            RuleId::EqR => Sequent::new([], [params.principal.clone()?]),
            RuleId::TheoryAxiom => {
                let name = params.axiom.as_ref()?;
                self.cfg.theory.axiom(name)?.substitute(params.substitution.as_ref()?)
            }
            _ => seq.clone(),
        };
        let leaf = g.weaken_to(at, &target);
        let inst = RuleInstance::derive(rule, target, params).ok()?;
        check_rule_instance(&inst, &self.cfg.theory).ok()?;
        g.apply(leaf, inst);
        Some(())
    }

    /// Ways of closing the goal with a bud: weaken it to an instance of a
    /// companion, then Subst unless the instance is the companion itself.
    /// Buds on the branch are kept only if their cycle progresses.
    fn buds(&self, st: &State, goal: &Goal) -> Vec<State> {
        let seq = st.g.sequent(goal.node);
        let mut companions: Vec<NodeId> = goal.path[..goal.path.len() - 1].to_vec();
        if self.cfg.global_companions {
            let others: Vec<NodeId> = st
                .g
                .nodes
                .iter()
                .filter(|(id, n)| matches!(n.kind, NodeKind::Internal { .. }) && !companions.contains(id))
                .map(|(id, _)| *id)
                .collect();
            companions.extend(others);
        }
        let mut out = Vec::new();
        for c in companions {
            let Some(node) = st.g.node(c) else { continue };
            if !matches!(node.kind, NodeKind::Internal { ref rule, .. } if !matches!(rule.rule, RuleId::WL | RuleId::WR | RuleId::Subst)) {
                continue;
            }
            let source = node.sequent.clone();
            for theta in match_sequent_into(&source, seq, &Subst::new(), 8) {
                let theta: Subst = theta.into_iter().filter(|(v, t)| t.as_var() != Some(v.as_str())).collect();
                let inst = source.substitute(&theta);
                if !seq.includes(&inst) {
                    continue;
                }
                let mut next = st.clone();
                let mut leaf = next.g.weaken_to(goal.node, &inst);
                if !theta.is_empty() {
                    let Ok(r) = RuleInstance::derive(RuleId::Subst, inst.clone(), RuleParams::subst(source.clone(), theta)) else {
                        continue;
                    };
                    leaf = next.g.apply(leaf, r)[0];
                }
                next.g.close_with_bud(leaf, c);
                if let Some(i) = goal.path.iter().position(|&n| n == c) {
                    if !cycle_progresses(&next.g, &goal.path[i..]) {
                        continue;
                    }
                }
                out.push(next);
            }
        }
        out
    }
}

/// Whether the cycle from the companion down `branch` and through the
/// chain of single-premise nodes below its last node back to the companion
/// carries a progressing trace.
fn cycle_progresses(g: &ProofGraph, branch: &[NodeId]) -> bool {
    let mut walk = branch.to_vec();
    let mut cur = *walk.last().expect("non-empty branch");
    while let Some(NodeKind::Internal { children, .. }) = g.node(cur).map(|n| &n.kind) {
        cur = children[0];
        walk.push(cur);
    }
    TraceGraph::new(g).walk_matrix(&walk).is_some_and(|m| m.idempotent_power().has_progressing_diagonal())
}

#[cfg(test)]
mod tests;
