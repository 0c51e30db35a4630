//! Text format for programs and model states.
//!
//! ```text
//! % the travel example
//! b | l :- not p.
//! l | p.
//! ```
//!
//! A rule is `head (":-" body)? "."`, the head is atoms separated by `|`,
//! the body is literals separated by `,`, and a literal is `atom` or
//! `not atom`. Atoms match `[a-zA-Z_][a-zA-Z0-9_]*`. `%` starts a line
//! comment. Repeated atoms in a head or body, and repeated rules, collapse.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{named, AtomSet, Disjunction, ModelState, Program, Rule, Symbols};

/// 1-based position in the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    Not,
    Bar,
    If,
    Comma,
    Dot,
    Eof,
}

impl fmt::Display for Token<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(name) => write!(f, "atom `{name}`"),
            Token::Not => f.write_str("`not`"),
            Token::Bar => f.write_str("`|`"),
            Token::If => f.write_str("`:-`"),
            Token::Comma => f.write_str("`,`"),
            Token::Dot => f.write_str("`.`"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn span(&self) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.bump(c);
            } else if c == '%' {
                while let Some(c) = self.peek_char() {
                    if c == '\n' {
                        break;
                    }
                    self.bump(c);
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(Token<'a>, SourceSpan)> {
        self.skip_trivia();
        let span = self.span();
        let Some(c) = self.peek_char() else {
            return Ok((Token::Eof, span));
        };
        let token = match c {
            '|' => {
                self.bump(c);
                Token::Bar
            }
            ',' => {
                self.bump(c);
                Token::Comma
            }
            '.' => {
                self.bump(c);
                Token::Dot
            }
            ':' => {
                self.bump(c);
                if self.peek_char() != Some('-') {
                    return Err(syntax(span, "expected `:-`"));
                }
                self.bump('-');
                Token::If
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek_char() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.bump(c);
                    } else {
                        break;
                    }
                }
                match &self.text[start..self.pos] {
                    "not" => Token::Not,
                    name => Token::Ident(name),
                }
            }
            other => return Err(syntax(span, format!("unexpected character `{other}`"))),
        };
        Ok((token, span))
    }
}

fn syntax(span: SourceSpan, message: impl Into<String>) -> Error {
    Error::Syntax {
        span,
        message: message.into(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: (Token<'a>, SourceSpan),
    symbols: Symbols,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(Token<'a>, SourceSpan)> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.current, next))
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T> {
        let (token, span) = &self.current;
        Err(syntax(*span, format!("expected {expected}, found {token}")))
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut head = AtomSet::new();
        loop {
            match self.current.0 {
                Token::Ident(name) => {
                    head.insert(self.symbols.intern(name));
                    self.advance()?;
                }
                Token::Not => {
                    return Err(syntax(
                        self.current.1,
                        "`not` is not allowed in a rule head",
                    ))
                }
                Token::If if head.is_empty() => {
                    return Err(syntax(self.current.1, "rule head is empty"))
                }
                _ => return self.unexpected("an atom"),
            }
            match self.current.0 {
                Token::Bar => {
                    self.advance()?;
                }
                _ => break,
            }
        }
        let mut pos = AtomSet::new();
        let mut neg = AtomSet::new();
        if self.current.0 == Token::If {
            self.advance()?;
            loop {
                let negated = self.current.0 == Token::Not;
                if negated {
                    self.advance()?;
                }
                match self.current.0 {
                    Token::Ident(name) => {
                        let atom = self.symbols.intern(name);
                        if negated {
                            neg.insert(atom);
                        } else {
                            pos.insert(atom);
                        }
                        self.advance()?;
                    }
                    _ => return self.unexpected("a body literal"),
                }
                if self.current.0 == Token::Comma {
                    self.advance()?;
                } else {
                    break;
                }
            }
        }
        if self.current.0 != Token::Dot {
            return self.unexpected("`.`");
        }
        self.advance()?;
        Ok(Rule::new(head, pos, neg).expect("head checked nonempty"))
    }
}

/// Parses a program. Atom ids follow first occurrence in `text`.
pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with(text, Symbols::new())
}

/// Parses a program, interning into an existing symbol table first.
pub fn parse_program_with(text: &str, symbols: Symbols) -> Result<Program> {
    let mut lexer = Lexer::new(text);
    let current = lexer.next()?;
    let mut parser = Parser {
        lexer,
        current,
        symbols,
    };
    let mut rules = Vec::new();
    while parser.current.0 != Token::Eof {
        rules.push(parser.rule()?);
    }
    Ok(Program::new(Arc::new(parser.symbols), rules))
}

/// One rule per line, in id order.
pub fn render_program(program: &Program) -> String {
    program.to_string()
}

pub fn render_rule(symbols: &Symbols, rule: &Rule) -> String {
    named(symbols, rule).to_string()
}

/// Positive disjunctions as `a | b`, then false atoms as `not a`, one per line.
pub fn render_state(symbols: &Symbols, state: &ModelState) -> String {
    let mut out = String::new();
    for d in state.pos() {
        out.push_str(&named(symbols, d).to_string());
        out.push('\n');
    }
    for a in state.false_atoms() {
        out.push_str("not ");
        out.push_str(symbols.name(a));
        out.push('\n');
    }
    out
}

/// Machine-readable form of a model state relative to a program's base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub true_disjunctions: Vec<Vec<String>>,
    pub false_atoms: Vec<String>,
    pub undefined_atoms: Vec<String>,
}

impl StateJson {
    /// Undefined atoms are the base atoms neither true as a unit nor false.
    pub fn new(symbols: &Symbols, base: &AtomSet, state: &ModelState) -> Self {
        let names = |s: &AtomSet| s.iter().map(|a| symbols.name(a).to_owned()).collect();
        let decided = state.true_atoms().union(state.false_atoms());
        StateJson {
            true_disjunctions: state.pos().iter().map(|d| names(d.atoms())).collect(),
            false_atoms: names(state.false_atoms()),
            undefined_atoms: names(&base.difference(&decided)),
        }
    }

    /// Rebuilds the state; unknown atom names are rejected.
    pub fn to_state(&self, symbols: &Symbols) -> Option<ModelState> {
        let atoms = |names: &[String]| -> Option<AtomSet> {
            names.iter().map(|n| symbols.lookup(n)).collect()
        };
        let pos: Vec<Disjunction> = self
            .true_disjunctions
            .iter()
            .map(|d| atoms(d).and_then(Disjunction::new))
            .collect::<Option<_>>()?;
        Some(ModelState::from_parts(&pos, atoms(&self.false_atoms)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_span(text: &str) -> SourceSpan {
        match parse_program(text) {
            Err(Error::Syntax { span, .. }) => span,
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn duplicates_collapse() {
        let p = parse_program("a | b :- c, c.").unwrap();
        assert_eq!(render_program(&p), "a | b :- c.\n");
        let p = parse_program("a | a. a.").unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn travel_program() {
        let p = parse_program("b | l :- not p.  l | p.").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.base().len(), 3);
        assert_eq!(render_program(&p), "b | l :- not p.\nl | p.\n");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(err_span("a :- ."), SourceSpan { line: 1, column: 6 });
        assert_eq!(err_span("a.\n:- b."), SourceSpan { line: 2, column: 1 });
        assert_eq!(err_span("not a."), SourceSpan { line: 1, column: 1 });
        assert_eq!(err_span("a | not b."), SourceSpan { line: 1, column: 5 });
        assert_eq!(err_span("a :- b"), SourceSpan { line: 1, column: 7 });
        assert_eq!(err_span("a :- b; c."), SourceSpan { line: 1, column: 7 });
        assert_eq!(err_span("a : b."), SourceSpan { line: 1, column: 3 });
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_program("% header\n a|b:-c ,not   d. % trailing\n\n").unwrap();
        assert_eq!(render_program(&p), "a | b :- c, not d.\n");
        assert_eq!(render_program(&parse_program("").unwrap()), "");
    }

    #[test]
    fn render_reparses_to_equal_program() {
        let text = "a | b :- c, not d.\nc | e :- g, not f.\na | d :- not b.\ng.\n";
        let p = parse_program(text).unwrap();
        assert_eq!(parse_program(&render_program(&p)).unwrap(), p);
        // ids of the reparsed program differ, equality is by name
        let p = parse_program("a | b. a :- c.").unwrap();
        let rendered = render_program(&p);
        assert_eq!(parse_program(&rendered).unwrap(), p);
        assert_eq!(render_program(&parse_program(&rendered).unwrap()), rendered);
    }

    #[test]
    fn state_rendering() {
        let p = parse_program("a | b. d. c :- not d.").unwrap();
        let s = p.symbols();
        let at = |n: &str| s.lookup(n).unwrap();
        let ab = Disjunction::new([at("a"), at("b")].into_iter().collect()).unwrap();
        let d = Disjunction::unit(at("d"));
        let state = ModelState::from_parts([&ab, &d], AtomSet::singleton(at("c")));
        assert_eq!(render_state(s, &state), "a | b\nd\nnot c\n");
        assert_eq!(render_state(s, &ModelState::new()), "");

        let json = StateJson::new(s, p.base(), &state);
        assert_eq!(json.true_disjunctions, vec![vec!["a", "b"], vec!["d"]]);
        assert_eq!(json.false_atoms, vec!["c"]);
        assert_eq!(json.undefined_atoms, vec!["a", "b"]);
        let text = serde_json::to_string(&json).unwrap();
        let back: StateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_state(s).unwrap(), state);
    }
}
