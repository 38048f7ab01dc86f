use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeMatrix, TraceCheckError, TraceGraph, DEFAULT_CYCLE_CAP};
use crate::proofgraph::{NodeId, ProofGraph};

struct Johnson<'a> {
    succ: &'a BTreeMap<NodeId, Vec<NodeId>>,
    start: NodeId,
    blocked: BTreeSet<NodeId>,
    blocked_by: BTreeMap<NodeId, BTreeSet<NodeId>>,
    stack: Vec<NodeId>,
    found: Vec<Vec<NodeId>>,
    cap: usize,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: NodeId) {
        self.blocked.remove(&u);
        for w in self.blocked_by.remove(&u).unwrap_or_default() {
            if self.blocked.contains(&w) {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: NodeId) -> Result<bool, TraceCheckError> {
        let mut closed = false;
        self.stack.push(v);
        self.blocked.insert(v);
        let succ = self.succ;
        let next: Vec<NodeId> = succ.get(&v).map_or_else(Vec::new, |s| s.iter().copied().filter(|&w| w >= self.start).collect());
        for &w in &next {
            if w == self.start {
                if self.found.len() >= self.cap {
                    return Err(TraceCheckError::BudgetExceeded { cap: self.cap });
                }
                self.found.push(self.stack.clone());
                closed = true;
            } else if !self.blocked.contains(&w) && self.circuit(w)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in &next {
                self.blocked_by.entry(w).or_default().insert(v);
            }
        }
        self.stack.pop();
        Ok(closed)
    }
}

/// Basic cycles with the default cap.
pub fn enumerate_basic_cycles(g: &ProofGraph) -> Result<Vec<Vec<NodeId>>, TraceCheckError> {
    enumerate_basic_cycles_capped(g, DEFAULT_CYCLE_CAP)
}

/// Every elementary cycle of the unfolded graph restricted to nodes
/// reachable from the root (Johnson's circuit enumeration). Each cycle
/// starts at its smallest node; the list is sorted.
pub fn enumerate_basic_cycles_capped(g: &ProofGraph, cap: usize) -> Result<Vec<Vec<NodeId>>, TraceCheckError> {
    let reachable = g.root_paths();
    let succ: BTreeMap<NodeId, Vec<NodeId>> = reachable
        .keys()
        .map(|&u| (u, g.successor_set(u).into_iter().filter(|v| reachable.contains_key(v)).collect()))
        .collect();
    let mut found = Vec::new();
    for &start in reachable.keys() {
        let mut j = Johnson {
            succ: &succ,
            start,
            blocked: BTreeSet::new(),
            blocked_by: BTreeMap::new(),
            stack: Vec::new(),
            found: Vec::new(),
            cap: cap.saturating_sub(found.len()),
        };
        j.circuit(start)?;
        found.extend(j.found);
    }
    found.sort();
    Ok(found)
}

/// True iff no two distinct basic cycles share a node.
pub fn is_non_overlapping(g: &ProofGraph) -> Result<bool, TraceCheckError> {
    let cycles = enumerate_basic_cycles(g)?;
    let mut used = BTreeSet::new();
    for c in &cycles {
        for &n in c {
            if !used.insert(n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Composed trace matrix once around a basic cycle.
pub fn cycle_matrix(g: &ProofGraph, cycle: &[NodeId]) -> Option<EdgeMatrix> {
    TraceGraph::new(g).walk_matrix(cycle)
}

/// True iff every basic cycle's matrix has a progressing diagonal entry
/// in some power up to the node count. For non-overlapping graphs this
/// decides the global trace condition.
pub fn basic_cycles_progress(g: &ProofGraph) -> Result<bool, TraceCheckError> {
    let tg = TraceGraph::new(g);
    let limit = g.nodes.len().max(1);
    for c in enumerate_basic_cycles(g)? {
        let Some(m) = tg.walk_matrix(&c) else { return Ok(false) };
        let mut p = m.clone();
        let mut ok = p.has_progressing_diagonal();
        for _ in 1..limit {
            if ok {
                break;
            }
            p = p.compose(&m);
            ok = p.has_progressing_diagonal();
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
