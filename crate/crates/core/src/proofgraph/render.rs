use std::collections::BTreeSet;
use std::fmt::Write;

use super::{trace_relation, NodeId, NodeKind, ProofGraph};
use crate::syntax::Sequent;

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Edges carrying a progressing trace pair are drawn
/// bold red; bud links are dashed; nodes in `highlight` (e.g. a rejection
/// witness) are filled.
pub fn to_dot(g: &ProofGraph, highlight: &BTreeSet<NodeId>) -> String {
    let rel = trace_relation(g);
    let mut out = String::new();
    writeln!(out, "digraph proof {{").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (id, node) in &g.nodes {
        let head = match &node.kind {
            NodeKind::Internal { rule, .. } => rule.rule.to_string(),
            NodeKind::Bud { companion } => format!("bud -> {companion}"),
            NodeKind::Open => "open".to_string(),
        };
        let fill = if highlight.contains(id) { ", style=filled, fillcolor=\"#ffe0a0\"" } else { "" };
        let root = if *id == g.root { ", peripheries=2" } else { "" };
        writeln!(out, "  n{id} [label=\"{id}: {}\\n{}\"{fill}{root}];", dot_escape(&head), dot_escape(&node.sequent.to_string()))
            .unwrap();
    }
    for (id, node) in &g.nodes {
        match &node.kind {
            NodeKind::Internal { children, .. } => {
                for (i, c) in children.iter().enumerate() {
                    let progressing = rel.steps(*id, i).iter().any(|s| s.progressing);
                    let style = if progressing { ", color=red, penwidth=2" } else { "" };
                    writeln!(out, "  n{id} -> n{c} [label=\"{}\"{style}];", i + 1).unwrap();
                }
            }
            NodeKind::Bud { companion } => {
                writeln!(out, "  n{id} -> n{companion} [style=dashed, constraint=false];").unwrap();
            }
            NodeKind::Open => {}
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Converts the ASCII concrete syntax of a sequent to LaTeX math.
fn tex_sequent(s: &Sequent) -> String {
    let text = s.to_string();
    let mut out = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let rest: String = chars[i..chars.len().min(i + 7)].iter().collect();
        let (tex, used) = if rest.starts_with("/\\") {
            ("\\land ".to_string(), 2)
        } else if rest.starts_with("\\/") {
            ("\\lor ".to_string(), 2)
        } else if rest.starts_with("->") {
            ("\\to ".to_string(), 2)
        } else if rest.starts_with("|-") {
            ("\\vdash ".to_string(), 2)
        } else if rest.starts_with("forall ") {
            ("\\forall ".to_string(), 7)
        } else if rest.starts_with("exists ") {
            ("\\exists ".to_string(), 7)
        } else if rest.starts_with("rtc ") {
            ("\\mathsf{RTC}\\,".to_string(), 4)
        } else {
            match chars[i] {
                '~' => ("\\lnot ".to_string(), 1),
                '_' => ("\\_".to_string(), 1),
                '<' => ("\\langle ".to_string(), 1),
                '>' => ("\\rangle ".to_string(), 1),
                c => (c.to_string(), 1),
            }
        };
        out.push_str(&tex);
        i += used;
    }
    out
}

/// A `bussproofs` proof tree. Buds are leaves tagged with their companion,
/// companions are tagged with their own id.
pub fn to_latex(g: &ProofGraph) -> String {
    let companions: BTreeSet<NodeId> = g.buds().into_iter().map(|(_, c)| c).collect();
    let mut body = String::new();
    let mut visiting = BTreeSet::new();
    emit_tex(g, g.root, &companions, &mut visiting, &mut body);
    format!(
        "% requires \\usepackage{{bussproofs}}\n\\begin{{prooftree}}\n{body}\\end{{prooftree}}\n"
    )
}

fn emit_tex(g: &ProofGraph, id: NodeId, companions: &BTreeSet<NodeId>, visiting: &mut BTreeSet<NodeId>, out: &mut String) {
    let node = &g.nodes[&id];
    let tag = if companions.contains(&id) { format!("\\;(\\dagger_{{{id}}})") } else { String::new() };
    let seq = tex_sequent(&node.sequent);
    match &node.kind {
        NodeKind::Internal { rule, children } if visiting.insert(id) => {
            if children.is_empty() {
                writeln!(out, "\\AxiomC{{}}").unwrap();
            }
            for c in children {
                emit_tex(g, *c, companions, visiting, out);
            }
            writeln!(out, "\\RightLabel{{\\scriptsize {}}}", rule.rule).unwrap();
            let inf = match children.len() {
                0 | 1 => "UnaryInfC",
                2 => "BinaryInfC",
                _ => "TrinaryInfC",
            };
            writeln!(out, "\\{inf}{{${seq}{tag}$}}").unwrap();
            visiting.remove(&id);
        }
        NodeKind::Bud { companion } => {
            writeln!(out, "\\AxiomC{{${seq}\\;(\\dagger_{{{companion}}})$}}").unwrap();
        }
        _ => writeln!(out, "\\AxiomC{{${seq}$}}").unwrap(),
    }
}

/// Indented plain-text tree; buds print their companion id.
pub fn to_text(g: &ProofGraph) -> String {
    let mut out = String::new();
    let mut seen = BTreeSet::new();
    emit_text(g, g.root, 0, &mut seen, &mut out);
    out
}

fn emit_text(g: &ProofGraph, id: NodeId, depth: usize, seen: &mut BTreeSet<NodeId>, out: &mut String) {
    let node = &g.nodes[&id];
    let pad = "  ".repeat(depth);
    match &node.kind {
        NodeKind::Internal { rule, children } => {
            writeln!(out, "{pad}[{id}] {}   ({})", node.sequent, rule.rule).unwrap();
            if seen.insert(id) {
                for c in children {
                    emit_text(g, *c, depth + 1, seen, out);
                }
            }
        }
        NodeKind::Bud { companion } => writeln!(out, "{pad}[{id}] {}   (bud -> {companion})", node.sequent).unwrap(),
        NodeKind::Open => writeln!(out, "{pad}[{id}] {}   (open)", node.sequent).unwrap(),
    }
}
