//! The global trace condition of cyclic pre-proofs, decided by a
//! size-change style composition closure and cross-checked by bounded
//! enumeration of periodic paths; basic cycles and normality.

mod cycles;
mod matrix;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

pub use cycles::{basic_cycles_progress, cycle_matrix, enumerate_basic_cycles, enumerate_basic_cycles_capped, is_non_overlapping};
pub use matrix::{EdgeMatrix, NONE, PROGRESS, RELATED};

use crate::par;
use crate::proofgraph::{trace_relation, NodeId, ProofGraph};
use crate::syntax::Formula;

/// Default cap on the number of distinct path summaries in the closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// Default cap on the number of basic cycles enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
    /// The closure grew beyond its cap.
    Indeterminate,
}

/// An ultimately periodic path `prefix (period)^ω` of the unfolded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub prefix: Vec<NodeId>,
    pub period: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub verdict: Verdict,
    /// For rejections, a path with no infinitely progressing trace.
    pub witness: Option<Witness>,
}

impl CycleReport {
    fn accepted() -> CycleReport {
        CycleReport { verdict: Verdict::Accepted, witness: None }
    }

    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prefix {:?} period {:?}", self.prefix, self.period)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceCheckError {
    #[error("more than {cap} basic cycles")]
    BudgetExceeded { cap: usize },
}

/// The unfolded graph as labelled edges with their trace matrices. Trace
/// positions of a node are its antecedent RTC formulas in canonical order.
pub struct TraceGraph {
    pub positions: BTreeMap<NodeId, Vec<Formula>>,
    /// `(source, premise index, target, matrix)`.
    pub edges: Vec<(NodeId, usize, NodeId, EdgeMatrix)>,
    out: BTreeMap<NodeId, Vec<usize>>,
}

impl TraceGraph {
    pub fn new(g: &ProofGraph) -> TraceGraph {
        let rel = trace_relation(g);
        let positions: BTreeMap<NodeId, Vec<Formula>> =
            g.nodes.iter().map(|(&id, n)| (id, n.sequent.ante_rtcs().into_iter().cloned().collect())).collect();
        let index = |node: NodeId, f: &Formula| positions[&node].iter().position(|p| p == f);
        let mut edges = Vec::new();
        let mut out: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for &u in g.nodes.keys() {
            for (i, v) in g.successors(u) {
                if !g.nodes.contains_key(&v) {
                    continue;
                }
                let mut m = EdgeMatrix::empty(positions[&u].len(), positions[&v].len());
                for step in rel.steps(u, i) {
                    if let (Some(a), Some(b)) = (index(u, &step.from), index(v, &step.to)) {
                        m.set(a, b, if step.progressing { PROGRESS } else { RELATED });
                    }
                }
                out.entry(u).or_default().push(edges.len());
                edges.push((u, i, v, m));
            }
        }
        TraceGraph { positions, edges, out }
    }

    fn out_edges(&self, u: NodeId) -> &[usize] {
        self.out.get(&u).map_or(&[], Vec::as_slice)
    }

    /// Composed matrix of a closed walk given as its node sequence; each
    /// step uses every edge between consecutive nodes.
    pub fn walk_matrix(&self, walk: &[NodeId]) -> Option<EdgeMatrix> {
        let first = *walk.first()?;
        let mut acc = EdgeMatrix::identity(self.positions[&first].len());
        for (k, &u) in walk.iter().enumerate() {
            let v = walk[(k + 1) % walk.len()];
            let mut step: Option<EdgeMatrix> = None;
            for &e in self.out_edges(u) {
                let (_, _, t, m) = &self.edges[e];
                if *t == v {
                    step = Some(match step {
                        None => m.clone(),
                        Some(mut s) => {
                            for i in 0..s.rows {
                                for j in 0..s.cols {
                                    s.set(i, j, m.get(i, j));
                                }
                            }
                            s
                        }
                    });
                }
            }
            acc = acc.compose(&step?);
        }
        Some(acc)
    }
}

/// Lexicographically least rotation of a closed walk.
pub fn canonical_rotation(walk: &[NodeId]) -> Vec<NodeId> {
    (0..walk.len())
        .map(|r| walk[r..].iter().chain(&walk[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn witness_for(g: &ProofGraph, walk: &[NodeId]) -> Witness {
    let period = canonical_rotation(walk);
    let mut prefix = g.root_paths().remove(&period[0]).unwrap_or_default();
    prefix.pop();
    Witness { prefix, period }
}

/// True iff the periodic path `walk^ω` carries an infinitely progressing
/// trace.
pub fn periodic_path_progresses(tg: &TraceGraph, walk: &[NodeId]) -> bool {
    tg.walk_matrix(walk).is_some_and(|m| m.idempotent_power().has_progressing_diagonal())
}

/// Decides the global trace condition with the default closure cap.
pub fn check_global_trace_condition(g: &ProofGraph) -> CycleReport {
    check_global_trace_condition_capped(g, DEFAULT_CLOSURE_CAP)
}

/// Closure of path summaries `(source, target, matrix)` over all non-empty
/// paths, each with a shortest path realising it. The graph is accepted
/// iff every idempotent summary of a closed path has a progressing
/// diagonal entry.
pub fn check_global_trace_condition_capped(g: &ProofGraph, cap: usize) -> CycleReport {
    let tg = TraceGraph::new(g);
    let mut seen: HashMap<(NodeId, NodeId, EdgeMatrix), usize> = HashMap::new();
    // Arena of (source, target, matrix, parent entry).
    let mut arena: Vec<(NodeId, NodeId, EdgeMatrix, Option<usize>)> = Vec::new();
    let mut queue = VecDeque::new();
    let reachable = g.root_paths();
    for (u, _, v, m) in tg.edges.iter().filter(|e| reachable.contains_key(&e.0)) {
        let key = (*u, *v, m.clone());
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
            slot.insert(arena.len());
            queue.push_back(arena.len());
            arena.push((*u, *v, m.clone(), None));
        }
    }
    // Node sequence of the path behind an arena entry, source first.
    let path_of = |arena: &Vec<(NodeId, NodeId, EdgeMatrix, Option<usize>)>, mut k: usize| {
        let mut nodes = Vec::new();
        loop {
            let (u, v, _, parent) = &arena[k];
            nodes.push(*v);
            match parent {
                Some(p) => k = *p,
                None => {
                    nodes.push(*u);
                    break;
                }
            }
        }
        nodes.reverse();
        nodes
    };
    while let Some(k) = queue.pop_front() {
        let (u, v, m) = (arena[k].0, arena[k].1, arena[k].2.clone());
        if u == v && m.is_idempotent() && !m.has_progressing_diagonal() {
            let mut walk = path_of(&arena, k);
            walk.pop();
            return CycleReport { verdict: Verdict::Rejected, witness: Some(witness_for(g, &walk)) };
        }
        for &e in tg.out_edges(v) {
            let (_, _, w, em) = &tg.edges[e];
            let key = (u, *w, m.compose(em));
            if !seen.contains_key(&key) {
                if arena.len() >= cap {
                    return CycleReport { verdict: Verdict::Indeterminate, witness: None };
                }
                seen.insert(key.clone(), arena.len());
                queue.push_back(arena.len());
                arena.push((u, *w, key.2, Some(k)));
            }
        }
    }
    CycleReport::accepted()
}

/// Bounded oracle for the same condition: every closed walk of length at
/// most `max_period` is examined through its composed matrix. Walks with
/// equal (end node, matrix) are merged, keeping the first found.
pub fn check_by_path_enumeration(g: &ProofGraph, max_period: usize) -> CycleReport {
    let tg = TraceGraph::new(g);
    let reachable = g.root_paths();
    let starts: Vec<NodeId> = reachable.keys().copied().collect();
    let failures = par::map_slice(&starts, |&start| {
        let mut seen: HashMap<(NodeId, EdgeMatrix), ()> = HashMap::new();
        let mut layer: Vec<(NodeId, EdgeMatrix, Vec<NodeId>)> =
            vec![(start, EdgeMatrix::identity(tg.positions[&start].len()), vec![start])];
        for _ in 0..max_period {
            let mut next = Vec::new();
            for (v, m, walk) in &layer {
                for &e in tg.out_edges(*v) {
                    let (_, _, w, em) = &tg.edges[e];
                    let composed = m.compose(em);
                    if *w == start && !composed.idempotent_power().has_progressing_diagonal() {
                        return Some(walk.clone());
                    }
                    if seen.insert((*w, composed.clone()), ()).is_none() {
                        let mut wk = walk.clone();
                        wk.push(*w);
                        next.push((*w, composed, wk));
                    }
                }
            }
            layer = next;
        }
        None
    });
    let best = failures.into_iter().flatten().min_by_key(|w| (w.len(), canonical_rotation(w)));
    match best {
        Some(walk) => CycleReport { verdict: Verdict::Rejected, witness: Some(witness_for(g, &walk)) },
        None => CycleReport::accepted(),
    }
}

/// Replays a rejection witness: its period must be a closed walk of the
/// graph without an infinitely progressing trace.
pub fn witness_is_valid(g: &ProofGraph, w: &Witness) -> bool {
    let tg = TraceGraph::new(g);
    let closed = !w.period.is_empty()
        && w.period.iter().enumerate().all(|(k, &u)| g.successor_set(u).contains(&w.period[(k + 1) % w.period.len()]));
    let lead: Vec<NodeId> = w.prefix.iter().chain(w.period.first()).copied().collect();
    let prefix_ok = lead.first() == Some(&g.root) && lead.windows(2).all(|p| g.successor_set(p[0]).contains(&p[1]));
    closed && prefix_ok && !periodic_path_progresses(&tg, &w.period)
}
