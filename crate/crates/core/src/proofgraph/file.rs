//! Line-oriented proof files.
//!
//! ```text
//! tcproof 1
//! signature: const a, b; fn s/1; pred p/2; pair c
//! theory: none
//! root 0
//! node 0 : A |- B ; rule=RtcCase ; params={principal: F ; eigenvars: [z]} ; premises=[1, 2]
//! node 3 : A |- B ; bud -> 0
//! node 4 : A |- B ; open
//! ```
//!
//! Parameter entries are separated by `;` and may be, in any order:
//! `principal: F`, `witness: t`, `eigenvars: [x, y]`, `template: [x] F`,
//! `subst: [x := t, y := u]`, `cut: F`, `source: S`, `left: S`, `right: S`,
//! `axiom: name` and the flag `retain`. Blank lines and lines starting
//! with `#` are ignored. Formulas and sequents use the ordinary concrete
//! syntax; fresh `_vN` names are allowed.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Node, NodeId, NodeKind, ProofGraph};
use crate::kernel::{RuleId, RuleInstance, RuleParams};
use crate::syntax::{ParseError, ParseMode, Parser, Sequent, Signature, Subst, Tok};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ProofFileError {
    #[error("line {line}: {error}")]
    Parse { line: usize, error: ParseError },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

fn fmt_params(p: &RuleParams) -> String {
    let mut parts = Vec::new();
    if let Some(f) = &p.principal {
        parts.push(format!("principal: {f}"));
    }
    if let Some(t) = &p.witness {
        parts.push(format!("witness: {t}"));
    }
    if !p.eigenvars.is_empty() {
        parts.push(format!("eigenvars: [{}]", p.eigenvars.join(", ")));
    }
    if let Some((f, x)) = &p.template {
        parts.push(format!("template: [{x}] {f}"));
    }
    if let Some(theta) = &p.substitution {
        let maps: Vec<String> = theta.iter().map(|(x, t)| format!("{x} := {t}")).collect();
        parts.push(format!("subst: [{}]", maps.join(", ")));
    }
    if let Some(f) = &p.cut_formula {
        parts.push(format!("cut: {f}"));
    }
    if let Some(s) = &p.source {
        parts.push(format!("source: {s}"));
    }
    if let Some((l, r)) = &p.contexts {
        parts.push(format!("left: {l}"));
        parts.push(format!("right: {r}"));
    }
    if let Some(a) = &p.axiom {
        parts.push(format!("axiom: {a}"));
    }
    if p.retain {
        parts.push("retain".to_string());
    }
    format!("{{{}}}", parts.join(" ; "))
}

/// Serializes a graph; the output is a deterministic function of the graph.
pub fn write_proof(g: &ProofGraph) -> String {
    let mut out = String::new();
    writeln!(out, "tcproof {FORMAT_VERSION}").unwrap();
    writeln!(out, "signature: {}", g.full_signature()).unwrap();
    writeln!(out, "theory: {}", g.theory).unwrap();
    writeln!(out, "root {}", g.root).unwrap();
    for (id, node) in &g.nodes {
        match &node.kind {
            NodeKind::Internal { rule, children } => {
                let kids: Vec<String> = children.iter().map(usize::to_string).collect();
                writeln!(
                    out,
                    "node {id} : {} ; rule={} ; params={} ; premises=[{}]",
                    node.sequent,
                    rule.rule,
                    fmt_params(&rule.params),
                    kids.join(", ")
                )
                .unwrap();
            }
            NodeKind::Bud { companion } => writeln!(out, "node {id} : {} ; bud -> {companion}", node.sequent).unwrap(),
            NodeKind::Open => writeln!(out, "node {id} : {} ; open", node.sequent).unwrap(),
        }
    }
    out
}

/// Parses `const a, b; fn s/1; pred p/2; pair c`.
pub fn parse_signature_decl(text: &str) -> Result<Signature, String> {
    let mut sig = Signature::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (kw, rest) = part.split_once(char::is_whitespace).unwrap_or((part, ""));
        let items = rest.split(',').map(str::trim).filter(|s| !s.is_empty());
        match kw {
            "const" => items.for_each(|c| {
                sig.constants.insert(c.to_string());
            }),
            "fn" | "pred" => {
                for item in items {
                    let (name, arity) =
                        item.split_once('/').ok_or_else(|| format!("expected `name/arity`, found `{item}`"))?;
                    let arity: usize = arity.trim().parse().map_err(|_| format!("bad arity in `{item}`"))?;
                    if kw == "fn" {
                        sig.functions.insert(name.trim().to_string(), arity);
                    } else {
                        sig.predicates.insert(name.trim().to_string(), arity);
                    }
                }
            }
            "pair" => {
                let designated = rest.trim();
                sig = sig.with_pair((!designated.is_empty()).then_some(designated));
            }
            other => return Err(format!("unknown signature entry `{other}`")),
        }
    }
    Ok(sig)
}

fn parse_id(p: &mut Parser<'_>) -> Result<NodeId, ParseError> {
    let at = p.offset();
    let word = p.ident()?;
    word.parse().map_err(|_| ParseError::Syntax { pos: at, expected: format!("a node id, found `{word}`") })
}

fn parse_params(p: &mut Parser<'_>) -> Result<RuleParams, ParseError> {
    let mut params = RuleParams::default();
    let mut left: Option<Sequent> = None;
    let mut right: Option<Sequent> = None;
    p.expect(&Tok::LBrace)?;
    if p.eat(&Tok::RBrace) {
        return Ok(params);
    }
    loop {
        let at = p.offset();
        let key = p.ident()?;
        if key == "retain" {
            params.retain = true;
        } else {
            p.expect(&Tok::Colon)?;
            match key.as_str() {
                "principal" => params.principal = Some(p.formula()?.canon()),
                "witness" => params.witness = Some(p.term()?),
                "eigenvars" => {
                    p.expect(&Tok::LBrack)?;
                    while !p.eat(&Tok::RBrack) {
                        params.eigenvars.push(p.ident()?);
                        p.eat(&Tok::Comma);
                    }
                }
                "template" => {
                    p.expect(&Tok::LBrack)?;
                    let x = p.ident()?;
                    p.expect(&Tok::RBrack)?;
                    params.template = Some((p.formula()?.canon(), x));
                }
                "subst" => {
                    let mut theta = Subst::new();
                    p.expect(&Tok::LBrack)?;
                    while !p.eat(&Tok::RBrack) {
                        let x = p.ident()?;
                        p.expect(&Tok::Assign)?;
                        theta.insert(x, p.term()?);
                        p.eat(&Tok::Comma);
                    }
                    params.substitution = Some(theta);
                }
                "cut" => params.cut_formula = Some(p.formula()?.canon()),
                "source" => params.source = Some(p.sequent()?),
                "left" => left = Some(p.sequent()?),
                "right" => right = Some(p.sequent()?),
                "axiom" => params.axiom = Some(p.ident()?),
                _ => return Err(ParseError::Syntax { pos: at, expected: format!("a parameter name, found `{key}`") }),
            }
        }
        if p.eat(&Tok::RBrace) {
            break;
        }
        p.expect(&Tok::Semi)?;
    }
    if let (Some(l), Some(r)) = (left, right) {
        params.contexts = Some((l, r));
    }
    Ok(params)
}

enum Parsed {
    Internal { rule: RuleId, params: RuleParams, children: Vec<NodeId> },
    Bud(NodeId),
    Open,
}

fn parse_node_line(text: &str, sig: &Signature) -> Result<(NodeId, Sequent, Parsed), ParseError> {
    let mut scratch = sig.clone();
    let mut p = Parser::new(text, &mut scratch, ParseMode::MACHINE)?;
    let kw = p.ident()?;
    if kw != "node" {
        return Err(ParseError::Syntax { pos: 0, expected: "`node`".into() });
    }
    let id = parse_id(&mut p)?;
    p.expect(&Tok::Colon)?;
    let sequent = p.sequent()?;
    p.expect(&Tok::Semi)?;
    let at = p.offset();
    let kind = p.ident()?;
    let parsed = match kind.as_str() {
        "bud" => {
            p.expect(&Tok::Arrow)?;
            Parsed::Bud(parse_id(&mut p)?)
        }
        "open" => Parsed::Open,
        "rule" => {
            p.expect(&Tok::Eq)?;
            let at = p.offset();
            let name = p.ident()?;
            let rule: RuleId = name.parse().map_err(|e: String| ParseError::Syntax { pos: at, expected: e })?;
            p.expect(&Tok::Semi)?;
            let key = p.ident()?;
            if key != "params" {
                return Err(p.error("`params`"));
            }
            p.expect(&Tok::Eq)?;
            let params = parse_params(&mut p)?;
            p.expect(&Tok::Semi)?;
            let key = p.ident()?;
            if key != "premises" {
                return Err(p.error("`premises`"));
            }
            p.expect(&Tok::Eq)?;
            p.expect(&Tok::LBrack)?;
            let mut children = Vec::new();
            while !p.eat(&Tok::RBrack) {
                children.push(parse_id(&mut p)?);
                p.eat(&Tok::Comma);
            }
            Parsed::Internal { rule, params, children }
        }
        other => return Err(ParseError::Syntax { pos: at, expected: format!("`rule`, `bud` or `open`, found `{other}`") }),
    };
    p.expect_end()?;
    Ok((id, sequent, parsed))
}

/// Parses a proof file. Rule instances get their premises from the
/// sequents of their children, so a wrong link surfaces in validation.
pub fn read_proof(text: &str) -> Result<ProofGraph, ProofFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let malformed = |line: usize, msg: &str| ProofFileError::Malformed { line, msg: msg.to_string() };
    let (n, header) = lines.next().ok_or_else(|| malformed(1, "empty proof file"))?;
    if header != format!("tcproof {FORMAT_VERSION}") {
        return Err(malformed(n, "expected header `tcproof 1`"));
    }
    let mut signature = Signature::new();
    let mut theory = "none".to_string();
    let mut root: Option<NodeId> = None;
    let mut parsed: Vec<(usize, NodeId, Sequent, Parsed)> = Vec::new();
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("signature:") {
            signature = parse_signature_decl(rest).map_err(|m| malformed(n, &m))?;
        } else if let Some(rest) = line.strip_prefix("theory:") {
            theory = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("root ") {
            root = Some(rest.trim().parse().map_err(|_| malformed(n, "bad root id"))?);
        } else if line.starts_with("node ") {
            let (id, seq, kind) = parse_node_line(line, &signature).map_err(|error| ProofFileError::Parse { line: n, error })?;
            parsed.push((n, id, seq, kind));
        } else {
            return Err(malformed(n, "expected `signature:`, `theory:`, `root` or `node`"));
        }
    }
    let sequents: BTreeMap<NodeId, Sequent> = parsed.iter().map(|(_, id, s, _)| (*id, s.clone())).collect();
    let mut g = ProofGraph::new(signature, theory);
    g.root = root.ok_or_else(|| malformed(0, "missing `root` line"))?;
    for (n, id, sequent, kind) in parsed {
        let kind = match kind {
            Parsed::Bud(c) => NodeKind::Bud { companion: c },
            Parsed::Open => NodeKind::Open,
            Parsed::Internal { rule, params, children } => {
                let premises = children
                    .iter()
                    .map(|c| sequents.get(c).cloned().ok_or_else(|| malformed(n, &format!("unknown node {c}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                NodeKind::Internal { rule: RuleInstance { rule, conclusion: sequent.clone(), premises, params }, children }
            }
        };
        if g.nodes.insert(id, Node { sequent, kind }).is_some() {
            return Err(malformed(n, &format!("duplicate node {id}")));
        }
    }
    Ok(g)
}
