//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! term    := ident | ident "(" term ("," term)* ")" | "<" term "," term ">"
//! atom    := term "=" term | ident | ident "(" term ("," term)* ")" | "bot" | "top"
//! form    := atom | "~" form | form "/\" form | form "\/" form | form "->" form
//!          | "forall" ident "." form | "exists" ident "." form
//!          | "(" "rtc" ident ident "." form ")" "(" term "," term ")" | "(" form ")"
//! sequent := [form ("," form)*] "|-" [form ("," form)*]
//! ```
//!
//! `~` binds tightest, then `/\`, `\/`, `->`; all binary connectives
//! associate to the right. Quantifier bodies extend as far as possible.
//! `top` and `bot` are sugar for `forall u. u = u` and its negation.

use super::{is_bound_name, is_reserved_name, Formula, Sequent, Signature, Term, PAIR};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Tilde,
    And,
    Or,
    Arrow,
    Turnstile,
    Lt,
    Gt,
    Semi,
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    Colon,
    Assign,
    Slash,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::Slash => "`/`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("symbol `{name}` at offset {pos} takes {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        pos: usize,
    },
    #[error("reserved name `{name}` at offset {pos}")]
    Reserved { name: String, pos: usize },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownSymbol { pos, .. }
            | ParseError::ArityMismatch { pos, .. }
            | ParseError::Reserved { pos, .. } => *pos,
        }
    }
}

/// How strictly symbols are resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseMode {
    /// Undeclared functions and predicates are added to the signature on
    /// first use; all-digit identifiers become constants.
    pub infer: bool,
    /// Accept `_v` fresh names, as written by the tools themselves.
    pub allow_reserved: bool,
}

impl ParseMode {
    pub const STRICT: ParseMode = ParseMode { infer: false, allow_reserved: false };
    pub const INFER: ParseMode = ParseMode { infer: true, allow_reserved: false };
    pub const MACHINE: ParseMode = ParseMode { infer: false, allow_reserved: true };
}

const KEYWORDS: [&str; 5] = ["forall", "exists", "rtc", "bot", "top"];

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut offsets = Vec::with_capacity(bytes.len());
    let mut off = 0;
    for c in &bytes {
        offsets.push(off);
        off += c.len_utf8();
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = offsets[i];
        let next = bytes.get(i + 1).copied();
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match (c, next) {
            ('/', Some('\\')) => (Tok::And, 2),
            ('\\', Some('/')) => (Tok::Or, 2),
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('|', Some('-')) => (Tok::Turnstile, 2),
            (':', Some('=')) => (Tok::Assign, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            ('=', _) => (Tok::Eq, 1),
            ('~', _) => (Tok::Tilde, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            (';', _) => (Tok::Semi, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('[', _) => (Tok::LBrack, 1),
            (']', _) => (Tok::RBrack, 1),
            (':', _) => (Tok::Colon, 1),
            ('/', _) => (Tok::Slash, 1),
            (c, _) if is_ident_char(c) => {
                let mut j = i;
                while j < bytes.len() && is_ident_char(bytes[j]) {
                    j += 1;
                }
                let word: String = bytes[i..j].iter().collect();
                (Tok::Ident(word), j - i)
            }
            (c, _) => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: format!("a token, found character {c:?}"),
                })
            }
        };
        out.push((tok, pos));
        i += len;
    }
    Ok(out)
}

/// Token-level parser, also used by the proof and theory file readers.
pub struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    sig: &'s mut Signature,
    mode: ParseMode,
    bound: Vec<String>,
}

impl<'s> Parser<'s> {
    pub fn new(text: &str, sig: &'s mut Signature, mode: ParseMode) -> Result<Parser<'s>, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
            sig,
            mode,
            bound: Vec::new(),
        })
    }

    /// Offset of the next token (or of the end of input).
    pub fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error(&self, expected: impl Into<String>) -> ParseError {
        let expected = expected.into();
        let expected = match self.peek() {
            Some(t) => format!("{expected}, found {}", t.describe()),
            None => format!("{expected}, found end of input"),
        };
        ParseError::Syntax { pos: self.offset(), expected }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(tok.describe()))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("an identifier")),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub fn signature(&self) -> &Signature {
        self.sig
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        let pos = self.offset();
        let name = self.ident()?;
        if KEYWORDS.contains(&name.as_str()) || self.sig.is_const(&name) {
            return Err(ParseError::Syntax {
                pos,
                expected: format!("a variable name, found `{name}`"),
            });
        }
        if !is_bound_name(&name) && is_reserved_name(&name) && !self.mode.allow_reserved {
            return Err(ParseError::Reserved { name, pos });
        }
        Ok(name)
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.offset();
        match self.peek().cloned() {
            Some(Tok::Lt) => {
                self.pos += 1;
                if !self.sig.pair {
                    if self.mode.infer {
                        self.sig.pair = true;
                        self.sig.functions.insert(PAIR.to_string(), 2);
                    } else {
                        return Err(ParseError::UnknownSymbol { name: PAIR.into(), pos });
                    }
                }
                let a = self.term()?;
                self.expect(&Tok::Comma)?;
                let b = self.term()?;
                self.expect(&Tok::Gt)?;
                Ok(Term::pair(a, b))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    let args = self.args()?;
                    self.resolve_function(&name, args, pos)
                } else {
                    self.resolve_bare(&name, pos)
                }
            }
            _ => Err(self.error("a term")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(&Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    fn resolve_function(&mut self, name: &str, args: Vec<Term>, pos: usize) -> Result<Term, ParseError> {
        match self.sig.function_arity(name) {
            Some(n) if n == args.len() => Ok(Term::App(name.to_string(), args)),
            Some(n) => Err(ParseError::ArityMismatch {
                name: name.to_string(),
                expected: n,
                found: args.len(),
                pos,
            }),
            None if self.mode.infer && !self.sig.predicates.contains_key(name) && !self.sig.is_const(name) => {
                self.sig.functions.insert(name.to_string(), args.len());
                Ok(Term::App(name.to_string(), args))
            }
            None => Err(ParseError::UnknownSymbol { name: name.to_string(), pos }),
        }
    }

    fn resolve_bare(&mut self, name: &str, pos: usize) -> Result<Term, ParseError> {
        if self.sig.is_const(name) {
            return Ok(Term::Const(name.to_string()));
        }
        if KEYWORDS.contains(&name) {
            return Err(ParseError::Syntax {
                pos,
                expected: format!("a term, found keyword `{name}`"),
            });
        }
        if self.sig.functions.contains_key(name) || self.sig.predicates.contains_key(name) {
            return Err(ParseError::ArityMismatch {
                name: name.to_string(),
                expected: self.sig.function_arity(name).or(self.sig.predicate_arity(name)).unwrap_or(0),
                found: 0,
                pos,
            });
        }
        if self.mode.infer && name.bytes().all(|b| b.is_ascii_digit()) {
            self.sig.constants.insert(name.to_string());
            return Ok(Term::Const(name.to_string()));
        }
        let allowed = if is_bound_name(name) {
            self.bound.iter().any(|b| b == name)
        } else {
            !is_reserved_name(name) || self.mode.allow_reserved
        };
        if !allowed {
            return Err(ParseError::Reserved { name: name.to_string(), pos });
        }
        Ok(Term::Var(name.to_string()))
    }

    pub fn starts_formula(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::LParen | Tok::Tilde | Tok::Lt))
    }

    /// Parses one formula (not canonicalized).
    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conjunction()?;
        if self.eat(&Tok::Or) {
            let rhs = self.disjunction()?;
            Ok(Formula::or(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::And) {
            let rhs = self.conjunction()?;
            Ok(Formula::and(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(kw)) if kw == "forall" || kw == "exists" => {
                self.pos += 1;
                let x = self.binder_name()?;
                self.expect(&Tok::Dot)?;
                self.bound.push(x.clone());
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                Ok(if kw == "forall" { Formula::forall(x, body) } else { Formula::exists(x, body) })
            }
            Some(Tok::LParen) if self.peek_at(1) == Some(&Tok::Ident("rtc".into())) => self.rtc(),
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(_)) | Some(Tok::Lt) => self.atom(),
            _ => Err(self.error("a formula")),
        }
    }

    fn rtc(&mut self) -> Result<Formula, ParseError> {
        self.expect(&Tok::LParen)?;
        self.pos += 1; // `rtc`
        let xpos = self.offset();
        let x = self.binder_name()?;
        let y = self.binder_name()?;
        if x == y {
            return Err(ParseError::Syntax {
                pos: xpos,
                expected: "two distinct bound variables".into(),
            });
        }
        self.expect(&Tok::Dot)?;
        self.bound.push(x.clone());
        self.bound.push(y.clone());
        let body = self.formula();
        self.bound.pop();
        self.bound.pop();
        let body = body?;
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::LParen)?;
        let src = self.term()?;
        self.expect(&Tok::Comma)?;
        let dst = self.term()?;
        self.expect(&Tok::RParen)?;
        Ok(Formula::rtc(x, y, body, src, dst))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.offset();
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            match name.as_str() {
                "bot" => {
                    self.pos += 1;
                    return Ok(Formula::bot());
                }
                "top" => {
                    self.pos += 1;
                    return Ok(Formula::top());
                }
                _ => {}
            }
            let has_args = self.peek_at(1) == Some(&Tok::LParen);
            if let Some(n) = self.sig.predicate_arity(&name) {
                self.pos += 1;
                let args = if has_args { self.args()? } else { Vec::new() };
                if args.len() != n {
                    return Err(ParseError::ArityMismatch {
                        name,
                        expected: n,
                        found: args.len(),
                        pos,
                    });
                }
                return Ok(Formula::Pred(name, args));
            }
            let undeclared = self.sig.function_arity(&name).is_none() && !self.sig.is_const(&name);
            if has_args && undeclared {
                if !self.mode.infer {
                    return Err(ParseError::UnknownSymbol { name, pos });
                }
                self.pos += 1;
                let args = self.args()?;
                if self.peek() == Some(&Tok::Eq) {
                    let lhs = self.resolve_function(&name, args, pos)?;
                    return self.equation_rest(lhs);
                }
                self.sig.predicates.insert(name.clone(), args.len());
                return Ok(Formula::Pred(name, args));
            }
            if !has_args && undeclared && self.mode.infer && self.peek_at(1) != Some(&Tok::Eq) && !KEYWORDS.contains(&name.as_str()) {
                // A bare identifier in formula position is a propositional atom.
                if !name.bytes().all(|b| b.is_ascii_digit()) && !is_reserved_name(&name) {
                    self.pos += 1;
                    self.sig.predicates.insert(name.clone(), 0);
                    return Ok(Formula::Pred(name, Vec::new()));
                }
            }
        }
        let lhs = self.term()?;
        self.equation_rest(lhs)
    }

    fn equation_rest(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        if !self.eat(&Tok::Eq) {
            return Err(self.error("`=`"));
        }
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn formula_list(&mut self, out: &mut Vec<Formula>) -> Result<(), ParseError> {
        if !self.starts_formula() {
            return Ok(());
        }
        out.push(self.formula()?.canon());
        while self.eat(&Tok::Comma) {
            out.push(self.formula()?.canon());
        }
        Ok(())
    }

    /// Parses `forms |- forms`.
    pub fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let mut ante = Vec::new();
        self.formula_list(&mut ante)?;
        self.expect(&Tok::Turnstile)?;
        let mut succ = Vec::new();
        self.formula_list(&mut succ)?;
        Ok(Sequent::new(ante, succ))
    }
}

/// Parses a closed piece of text as one formula over `sig`, returning its
/// canonical form.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut sig = sig.clone();
    parse_formula_with(text, &mut sig, ParseMode::STRICT)
}

pub fn parse_formula_with(text: &str, sig: &mut Signature, mode: ParseMode) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig, mode)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f.canon())
}

pub fn parse_sequent(text: &str, sig: &Signature) -> Result<Sequent, ParseError> {
    let mut sig = sig.clone();
    parse_sequent_with(text, &mut sig, ParseMode::STRICT)
}

pub fn parse_sequent_with(text: &str, sig: &mut Signature, mode: ParseMode) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text, sig, mode)?;
    let s = p.sequent()?;
    p.expect_end()?;
    Ok(s)
}

pub fn parse_term_with(text: &str, sig: &mut Signature, mode: ParseMode) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig, mode)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}
