//! Parser for group spec files:
//!
//! ```text
//! graph { vertices: a, b; edges: a-b; group a = Z; group b = Z/2; }
//! ```
//!
//! Whitespace is free and `#` starts a comment running to the end of the line.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use gpw_core::{Graph, GroupContext, VertexGroup};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    Int(u64),
    Punct(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Name(n) => write!(f, "`{n}`"),
            Token::Int(i) => write!(f, "`{i}`"),
            Token::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn error(pos: Pos, message: impl Into<String>) -> SpecError {
    SpecError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<(Token, Pos)>, Pos), SpecError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut pos);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                name.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            tokens.push((Token::Name(name), start));
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            let value = digits.parse().map_err(|_| error(start, "integer out of range"))?;
            tokens.push((Token::Int(value), start));
        } else if "{}:;,-=/".contains(c) {
            chars.next();
            advance(c, &mut pos);
            tokens.push((Token::Punct(c), start));
        } else {
            return Err(error(start, format!("unexpected character `{c}`")));
        }
    }
    Ok((tokens, pos))
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    next: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.next).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self, expected: &str) -> Result<(Token, Pos), SpecError> {
        let token = self
            .tokens
            .get(self.next)
            .cloned()
            .ok_or_else(|| error(self.end, format!("expected {expected}, found end of input")))?;
        self.next += 1;
        Ok(token)
    }

    fn punct(&mut self, c: char) -> Result<Pos, SpecError> {
        match self.bump(&format!("`{c}`"))? {
            (Token::Punct(p), pos) if p == c => Ok(pos),
            (other, pos) => Err(error(pos, format!("expected `{c}`, found {other}"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), SpecError> {
        match self.bump(&format!("`{word}`"))? {
            (Token::Name(n), _) if n == word => Ok(()),
            (other, pos) => Err(error(pos, format!("expected `{word}`, found {other}"))),
        }
    }

    fn name(&mut self) -> Result<(String, Pos), SpecError> {
        match self.bump("a vertex name")? {
            (Token::Name(n), pos) => Ok((n, pos)),
            (other, pos) => Err(error(pos, format!("expected a vertex name, found {other}"))),
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Token::Name(n)) if n == word)
    }
}

/// Parses a spec file into a graph-product context.
pub fn parse_spec(text: &str) -> Result<Arc<GroupContext>, SpecError> {
    let (tokens, end) = tokenize(text)?;
    let mut p = Parser { tokens, next: 0, end };
    p.keyword("graph")?;
    p.punct('{')?;
    p.keyword("vertices")?;
    p.punct(':')?;
    let mut names: Vec<String> = Vec::new();
    let mut index = HashMap::new();
    loop {
        let (name, pos) = p.name()?;
        if index.insert(name.clone(), names.len()).is_some() {
            return Err(error(pos, format!("duplicate vertex `{name}`")));
        }
        names.push(name);
        if p.peek() == Some(&Token::Punct(',')) {
            p.next += 1;
        } else {
            break;
        }
    }
    p.punct(';')?;
    let lookup = |name: &str, pos: Pos| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| error(pos, format!("unknown vertex `{name}`")))
    };
    let mut edges = Vec::new();
    if p.at_keyword("edges") {
        p.next += 1;
        p.punct(':')?;
        loop {
            let (a, pos) = p.name()?;
            let a = lookup(&a, pos)?;
            p.punct('-')?;
            let (b, pos_b) = p.name()?;
            let b = lookup(&b, pos_b)?;
            if a == b {
                return Err(error(pos, format!("loop edge at `{}`", names[a])));
            }
            edges.push((a, b));
            if p.peek() == Some(&Token::Punct(',')) {
                p.next += 1;
            } else {
                break;
            }
        }
        p.punct(';')?;
    }
    let mut groups: Vec<Option<VertexGroup>> = vec![None; names.len()];
    while p.at_keyword("group") {
        p.next += 1;
        let (name, pos) = p.name()?;
        let v = lookup(&name, pos)?;
        p.punct('=')?;
        let group = match p.bump("`Z` or `Z/n`")? {
            (Token::Name(z), _) if z == "Z" => {
                if p.peek() == Some(&Token::Punct('/')) {
                    p.next += 1;
                    match p.bump("the order n")? {
                        (Token::Int(n), _) if n >= 2 => VertexGroup::Finite(n),
                        (Token::Int(n), pos) => {
                            return Err(error(
                                pos,
                                format!("finite vertex groups need order at least 2, got {n}"),
                            ))
                        }
                        (other, pos) => return Err(error(pos, format!("expected the order n, found {other}"))),
                    }
                } else {
                    VertexGroup::Infinite
                }
            }
            (other, pos) => return Err(error(pos, format!("expected `Z` or `Z/n`, found {other}"))),
        };
        if groups[v].replace(group).is_some() {
            return Err(error(pos, format!("group of `{name}` declared twice")));
        }
        p.punct(';')?;
    }
    let close = p.pos();
    p.punct('}')?;
    if let Some(missing) = groups.iter().position(Option::is_none) {
        return Err(error(close, format!("missing group for vertex `{}`", names[missing])));
    }
    if p.next < p.tokens.len() {
        let (token, pos) = p.tokens[p.next].clone();
        return Err(error(pos, format!("unexpected {token} after the closing `}}`")));
    }
    let graph = Graph::new(names, edges).map_err(|e| error(Pos { line: 1, column: 1 }, e.to_string()))?;
    let groups = groups.into_iter().map(|g| g.expect("checked above")).collect();
    GroupContext::new(graph, groups).map_err(|e| error(Pos { line: 1, column: 1 }, e.to_string()))
}

/// Reads a word-set file: one word per line, `#` starts a comment.
pub fn parse_word_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect()
}
