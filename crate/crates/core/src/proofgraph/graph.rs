use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::kernel::{check_rule_instance, weakening_chain, KernelError, RuleId, RuleInstance, RuleParams, Theory};
use crate::syntax::{Formula, Sequent, Signature};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// A rule application; `children[i]` proves the i-th premise.
    Internal { rule: RuleInstance, children: Vec<NodeId> },
    /// A leaf closed by pointing back at an equal internal node.
    Bud { companion: NodeId },
    /// An unproved leaf of a fragment under construction.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub sequent: Sequent,
    pub kind: NodeKind,
}

/// A finite derivation graph with back-links from buds to companions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofGraph {
    pub signature: Signature,
    pub theory: String,
    pub root: NodeId,
    pub nodes: BTreeMap<NodeId, Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("node {0} does not exist")]
    MissingNode(NodeId),
    #[error("node {node}: {detail}")]
    BadPremiseLink { node: NodeId, detail: String },
    #[error("bud {bud} does not match companion {companion}")]
    BudMismatch { bud: NodeId, companion: NodeId },
    #[error("node {node}: {error}")]
    KernelError { node: NodeId, error: KernelError },
    #[error("node {0} is unreachable from the root")]
    UnreachableNode(NodeId),
    #[error("node {0} is open")]
    OpenNode(NodeId),
}

impl ProofGraph {
    pub fn new(signature: Signature, theory: impl Into<String>) -> ProofGraph {
        ProofGraph { signature, theory: theory.into(), root: 0, nodes: BTreeMap::new() }
    }

    pub fn next_id(&self) -> NodeId {
        self.nodes.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn add_open(&mut self, sequent: Sequent) -> NodeId {
        let id = self.next_id();
        self.nodes.insert(id, Node { sequent, kind: NodeKind::Open });
        id
    }

    pub fn add_bud(&mut self, sequent: Sequent, companion: NodeId) -> NodeId {
        let id = self.next_id();
        self.nodes.insert(id, Node { sequent, kind: NodeKind::Bud { companion } });
        id
    }

    pub fn add_internal(&mut self, rule: RuleInstance, children: Vec<NodeId>) -> NodeId {
        let id = self.next_id();
        self.nodes.insert(id, Node { sequent: rule.conclusion.clone(), kind: NodeKind::Internal { rule, children } });
        id
    }

    /// Turns an open node into a rule application.
    pub fn close(&mut self, id: NodeId, rule: RuleInstance, children: Vec<NodeId>) {
        let node = self.nodes.get_mut(&id).expect("node exists");
        node.kind = NodeKind::Internal { rule, children };
    }

    /// Turns an open node into a bud.
    pub fn close_with_bud(&mut self, id: NodeId, companion: NodeId) {
        let node = self.nodes.get_mut(&id).expect("node exists");
        node.kind = NodeKind::Bud { companion };
    }

    /// A graph consisting of one open root node.
    pub fn with_root(signature: Signature, theory: impl Into<String>, goal: Sequent) -> ProofGraph {
        let mut g = ProofGraph::new(signature, theory);
        g.root = g.add_open(goal);
        g
    }

    /// Closes the open node `at` with `rule` and returns fresh open nodes
    /// for its premises.
    pub fn apply(&mut self, at: NodeId, rule: RuleInstance) -> Vec<NodeId> {
        debug_assert_eq!(&rule.conclusion, self.sequent(at));
        let children: Vec<NodeId> = rule.premises.iter().map(|p| self.add_open(p.clone())).collect();
        self.close(at, rule, children.clone());
        children
    }

    /// Weakens the open node `at` down to `target` (included in its
    /// sequent) and returns the open node holding `target`.
    pub fn weaken_to(&mut self, at: NodeId, target: &Sequent) -> NodeId {
        let chain = weakening_chain(self.sequent(at), target);
        let mut cur = at;
        for inst in chain {
            cur = self.apply(cur, inst)[0];
        }
        cur
    }

    /// Closes `Γ, φ |- φ, Δ` by weakenings down to an Axiom leaf.
    pub fn close_by_axiom(&mut self, at: NodeId, phi: &Formula) {
        let target = Sequent::new([phi.clone()], [phi.clone()]);
        let leaf = self.weaken_to(at, &target);
        let ax = RuleInstance::derive(RuleId::Axiom, target, RuleParams::principal(phi.clone())).expect("axiom");
        self.apply(leaf, ax);
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    pub fn sequent(&self, id: NodeId) -> &Sequent {
        &self.nodes[&id].sequent
    }

    pub fn root_sequent(&self) -> &Sequent {
        self.sequent(self.root)
    }

    pub fn open_nodes(&self) -> Vec<NodeId> {
        self.nodes.iter().filter(|(_, n)| n.kind == NodeKind::Open).map(|(&id, _)| id).collect()
    }

    pub fn buds(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes
            .iter()
            .filter_map(|(&id, n)| match n.kind {
                NodeKind::Bud { companion } => Some((id, companion)),
                _ => None,
            })
            .collect()
    }

    pub fn rule_at(&self, id: NodeId) -> Option<&RuleInstance> {
        match &self.nodes.get(&id)?.kind {
            NodeKind::Internal { rule, .. } => Some(rule),
            _ => None,
        }
    }

    pub fn count_rule(&self, rule: RuleId) -> usize {
        self.nodes.values().filter(|n| matches!(&n.kind, NodeKind::Internal { rule: r, .. } if r.rule == rule)).count()
    }

    /// Outgoing edges of the unfolded graph: `(premise index, target)`.
    /// A bud has one edge, to its companion.
    pub fn successors(&self, id: NodeId) -> Vec<(usize, NodeId)> {
        match self.nodes.get(&id).map(|n| &n.kind) {
            Some(NodeKind::Internal { children, .. }) => children.iter().copied().enumerate().collect(),
            Some(NodeKind::Bud { companion }) => vec![(0, *companion)],
            _ => Vec::new(),
        }
    }

    /// Distinct successor nodes, in ascending order.
    pub fn successor_set(&self, id: NodeId) -> Vec<NodeId> {
        let set: BTreeSet<NodeId> = self.successors(id).into_iter().map(|(_, t)| t).collect();
        set.into_iter().collect()
    }

    /// Nodes reachable from the root, with a shortest path to each (ties
    /// broken towards smaller ids).
    pub fn root_paths(&self) -> BTreeMap<NodeId, Vec<NodeId>> {
        let mut paths = BTreeMap::new();
        if !self.nodes.contains_key(&self.root) {
            return paths;
        }
        paths.insert(self.root, vec![self.root]);
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for v in self.successor_set(u) {
                if self.nodes.contains_key(&v) && !paths.contains_key(&v) {
                    let mut p = paths[&u].clone();
                    p.push(v);
                    paths.insert(v, p);
                    queue.push_back(v);
                }
            }
        }
        paths
    }

    /// The declared signature extended with every symbol occurring in the
    /// graph.
    pub fn full_signature(&self) -> Signature {
        let mut formulas: Vec<&Formula> = Vec::new();
        for node in self.nodes.values() {
            formulas.extend(node.sequent.formulas());
            if let NodeKind::Internal { rule, .. } = &node.kind {
                let p = &rule.params;
                formulas.extend(p.principal.iter().chain(p.cut_formula.iter()));
                formulas.extend(p.template.iter().map(|(f, _)| f));
                formulas.extend(p.source.iter().flat_map(Sequent::formulas));
            }
        }
        let mut sig = self.signature.clone();
        // Symbols come from well-formed sequents, so merging cannot conflict
        // unless the graph itself is ill-formed; then the kernel reports it.
        let _ = sig.merge(&Signature::of_formulas(formulas));
        sig
    }

    /// Structural and local-rule validation; every problem is reported.
    pub fn validate(&self, theory: &Theory) -> Result<(), Vec<StructureError>> {
        validate_structure(self, theory)
    }
}

/// Checks premise links, bud/companion equality, every rule instance and
/// reachability. Open nodes are errors.
pub fn validate_structure(g: &ProofGraph, theory: &Theory) -> Result<(), Vec<StructureError>> {
    let mut errors = Vec::new();
    if !g.nodes.contains_key(&g.root) {
        errors.push(StructureError::MissingNode(g.root));
        return Err(errors);
    }
    let mut ctx = theory.clone();
    if ctx.signature.pair_const.is_none() {
        ctx.signature.pair_const = g.signature.pair_const.clone();
    }
    for (&id, node) in &g.nodes {
        match &node.kind {
            NodeKind::Open => errors.push(StructureError::OpenNode(id)),
            NodeKind::Bud { companion } => match g.nodes.get(companion) {
                None => errors.push(StructureError::MissingNode(*companion)),
                Some(c) => {
                    if !matches!(c.kind, NodeKind::Internal { .. }) || c.sequent != node.sequent {
                        errors.push(StructureError::BudMismatch { bud: id, companion: *companion });
                    }
                }
            },
            NodeKind::Internal { rule, children } => {
                if rule.conclusion != node.sequent {
                    errors.push(StructureError::BadPremiseLink {
                        node: id,
                        detail: "rule conclusion differs from the node's sequent".into(),
                    });
                }
                if children.len() != rule.premises.len() {
                    errors.push(StructureError::BadPremiseLink {
                        node: id,
                        detail: format!("{} premises but {} children", rule.premises.len(), children.len()),
                    });
                }
                for (i, (child, premise)) in children.iter().zip(&rule.premises).enumerate() {
                    match g.nodes.get(child) {
                        None => errors.push(StructureError::MissingNode(*child)),
                        Some(c) if c.sequent != *premise => errors.push(StructureError::BadPremiseLink {
                            node: id,
                            detail: format!("premise {} differs from the sequent of node {child}", i + 1),
                        }),
                        Some(_) => {}
                    }
                }
                if let Err(error) = check_rule_instance(rule, &ctx) {
                    errors.push(StructureError::KernelError { node: id, error });
                }
            }
        }
    }
    let reachable = g.root_paths();
    for &id in g.nodes.keys() {
        if !reachable.contains_key(&id) {
            errors.push(StructureError::UnreachableNode(id));
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}
