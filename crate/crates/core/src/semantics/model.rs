use std::collections::BTreeMap;
use std::fmt::{self, Write};

use crate::syntax::{Parser, ParseError, ParseMode, Signature, Tok};

/// Interpretation of an n-ary function symbol: a total table indexed by the
/// mixed-radix encoding of the argument tuple (first argument most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnTable {
    pub arity: usize,
    pub table: Vec<usize>,
}

/// Interpretation of an n-ary predicate, as a membership table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredTable {
    pub arity: usize,
    pub table: Vec<bool>,
}

/// A finite first-order structure over the domain `{0, .., size - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    pub size: usize,
    pub consts: BTreeMap<String, usize>,
    pub funcs: BTreeMap<String, FnTable>,
    pub preds: BTreeMap<String, PredTable>,
}

/// Assignment of domain elements to variables.
pub type Valuation = BTreeMap<String, usize>;

pub(crate) fn tuple_index(args: &[usize], size: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

pub(crate) fn index_tuple(mut index: usize, arity: usize, size: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    out
}

impl FiniteModel {
    /// A model of the given size where everything is interpreted by 0 / false.
    pub fn empty(size: usize, sig: &Signature) -> FiniteModel {
        assert!(size > 0, "domains are non-empty");
        FiniteModel {
            size,
            consts: sig.constants.iter().map(|c| (c.clone(), 0)).collect(),
            funcs: sig
                .functions
                .iter()
                .map(|(f, &n)| (f.clone(), FnTable { arity: n, table: vec![0; size.pow(n as u32)] }))
                .collect(),
            preds: sig
                .predicates
                .iter()
                .map(|(p, &n)| (p.clone(), PredTable { arity: n, table: vec![false; size.pow(n as u32)] }))
                .collect(),
        }
    }

    pub fn set_const(&mut self, c: &str, value: usize) -> &mut Self {
        self.consts.insert(c.to_string(), value);
        self
    }

    pub fn set_pred(&mut self, p: &str, arity: usize, tuples: &[&[usize]]) -> &mut Self {
        let mut table = vec![false; self.size.pow(arity as u32)];
        for t in tuples {
            assert_eq!(t.len(), arity);
            table[tuple_index(t, self.size)] = true;
        }
        self.preds.insert(p.to_string(), PredTable { arity, table });
        self
    }

    pub fn set_fn(&mut self, f: &str, arity: usize, table: Vec<usize>) -> &mut Self {
        assert_eq!(table.len(), self.size.pow(arity as u32));
        self.funcs.insert(f.to_string(), FnTable { arity, table });
        self
    }

    pub fn apply(&self, f: &str, args: &[usize]) -> Option<usize> {
        let t = self.funcs.get(f)?;
        (t.arity == args.len()).then(|| t.table[tuple_index(args, self.size)])
    }

    pub fn holds(&self, p: &str, args: &[usize]) -> Option<bool> {
        let t = self.preds.get(p)?;
        (t.arity == args.len()).then(|| t.table[tuple_index(args, self.size)])
    }

    /// True iff every table is total and in range.
    pub fn is_well_formed(&self) -> bool {
        self.size > 0
            && self.consts.values().all(|&c| c < self.size)
            && self.funcs.values().all(|t| t.table.len() == self.size.pow(t.arity as u32) && t.table.iter().all(|&e| e < self.size))
            && self.preds.values().all(|t| t.table.len() == self.size.pow(t.arity as u32))
    }
}

impl fmt::Display for FiniteModel {
    /// `model { size = 3; const a = 0; fn s = [1, 2, 0]; pred E = {(0, 1)}; }`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model {{ size = {};", self.size)?;
        for (c, v) in &self.consts {
            write!(f, " const {c} = {v};")?;
        }
        for (g, t) in &self.funcs {
            let entries: Vec<String> = t.table.iter().map(usize::to_string).collect();
            write!(f, " fn {g} = [{}];", entries.join(", "))?;
        }
        for (p, t) in &self.preds {
            let mut tuples = String::new();
            for (i, _) in t.table.iter().enumerate().filter(|(_, &b)| b) {
                if !tuples.is_empty() {
                    tuples.push_str(", ");
                }
                let args: Vec<String> = index_tuple(i, t.arity, self.size).iter().map(usize::to_string).collect();
                write!(tuples, "({})", args.join(", "))?;
            }
            write!(f, " pred {p} = {{{tuples}}};")?;
        }
        write!(f, " }}")
    }
}

pub fn format_valuation(v: &Valuation) -> String {
    let body: Vec<String> = v.iter().map(|(x, a)| format!(" {x} = {a};")).collect();
    format!("valuation {{{} }}", body.concat())
}

#[derive(Debug, thiserror::Error)]
pub enum ModelParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("malformed model: {0}")]
    Malformed(String),
}

fn number(p: &mut Parser<'_>) -> Result<usize, ModelParseError> {
    let at = p.offset();
    let word = p.ident()?;
    word.parse().map_err(|_| ModelParseError::Malformed(format!("expected a number at offset {at}, found `{word}`")))
}

/// Parses the dump produced by `Display for FiniteModel`. Predicate and
/// function arities are recovered from `sig` when present, otherwise from
/// the tuples and table lengths.
pub fn parse_model(text: &str, sig: &Signature) -> Result<FiniteModel, ModelParseError> {
    let mut scratch = Signature::new();
    let mut p = Parser::new(text, &mut scratch, ParseMode::MACHINE)?;
    let kw = p.ident()?;
    if kw != "model" {
        return Err(ModelParseError::Malformed("expected `model`".into()));
    }
    p.expect(&Tok::LBrace)?;
    let head = p.ident()?;
    if head != "size" {
        return Err(ModelParseError::Malformed("expected `size` first".into()));
    }
    p.expect(&Tok::Eq)?;
    let size = number(&mut p)?;
    if size == 0 {
        return Err(ModelParseError::Malformed("size must be positive".into()));
    }
    p.expect(&Tok::Semi)?;
    let mut m = FiniteModel { size, consts: BTreeMap::new(), funcs: BTreeMap::new(), preds: BTreeMap::new() };
    while !p.eat(&Tok::RBrace) {
        let kind = p.ident()?;
        let name = p.ident()?;
        p.expect(&Tok::Eq)?;
        match kind.as_str() {
            "const" => {
                m.consts.insert(name, number(&mut p)?);
            }
            "fn" => {
                p.expect(&Tok::LBrack)?;
                let mut table = Vec::new();
                if !p.eat(&Tok::RBrack) {
                    table.push(number(&mut p)?);
                    while p.eat(&Tok::Comma) {
                        table.push(number(&mut p)?);
                    }
                    p.expect(&Tok::RBrack)?;
                }
                let arity = match sig.function_arity(&name) {
                    Some(n) => n,
                    None => (0..=8)
                        .find(|&n| size.pow(n) == table.len())
                        .ok_or_else(|| ModelParseError::Malformed(format!("table of `{name}` has bad length")))?
                        as usize,
                };
                m.funcs.insert(name, FnTable { arity, table });
            }
            "pred" => {
                p.expect(&Tok::LBrace)?;
                let mut tuples: Vec<Vec<usize>> = Vec::new();
                while !p.eat(&Tok::RBrace) {
                    p.expect(&Tok::LParen)?;
                    let mut t = Vec::new();
                    if !p.eat(&Tok::RParen) {
                        t.push(number(&mut p)?);
                        while p.eat(&Tok::Comma) {
                            t.push(number(&mut p)?);
                        }
                        p.expect(&Tok::RParen)?;
                    }
                    tuples.push(t);
                    p.eat(&Tok::Comma);
                }
                let arity = sig
                    .predicate_arity(&name)
                    .or_else(|| tuples.first().map(Vec::len))
                    .ok_or_else(|| ModelParseError::Malformed(format!("cannot infer arity of `{name}`")))?;
                let mut table = vec![false; size.pow(arity as u32)];
                for t in &tuples {
                    if t.len() != arity || t.iter().any(|&e| e >= size) {
                        return Err(ModelParseError::Malformed(format!("bad tuple for `{name}`")));
                    }
                    table[tuple_index(t, size)] = true;
                }
                m.preds.insert(name, PredTable { arity, table });
            }
            other => return Err(ModelParseError::Malformed(format!("unknown entry kind `{other}`"))),
        }
        p.expect(&Tok::Semi)?;
    }
    p.expect_end()?;
    if !m.is_well_formed() {
        return Err(ModelParseError::Malformed("table out of range".into()));
    }
    Ok(m)
}
