//! Text syntax for diagram terms: `(c f g ...)`, `(t f g ...)`, `(tr f)` and the atoms
//! `mu eta delta eps h id empty sigma`. A `#` starts a comment running to the end of the line.

use super::term::{compose_all, tensor_all, trace, Generator, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

struct Lexed {
    token: Token,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<Lexed> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut word: Option<(String, usize, usize)> = None;
    let mut in_comment = false;
    let flush = |word: &mut Option<(String, usize, usize)>, out: &mut Vec<Lexed>| {
        if let Some((w, l, c)) = word.take() {
            out.push(Lexed { token: Token::Word(w), line: l, column: c });
        }
    };
    for ch in text.chars() {
        match ch {
            _ if in_comment => in_comment = ch != '\n',
            '#' => {
                flush(&mut word, &mut out);
                in_comment = true;
            }
            '(' | ')' => {
                flush(&mut word, &mut out);
                let token = if ch == '(' { Token::Open } else { Token::Close };
                out.push(Lexed { token, line, column });
            }
            c if c.is_whitespace() => flush(&mut word, &mut out),
            c => match &mut word {
                Some((w, _, _)) => w.push(c),
                None => word = Some((c.to_string(), line, column)),
            },
        }
        if ch == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    flush(&mut word, &mut out);
    out
}

struct Parser {
    tokens: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn err(&self, at: Option<&Lexed>, message: impl Into<String>) -> Error {
        let (line, column) = at.map_or(self.end, |t| (t.line, t.column));
        Error::Parse { line, column, message: message.into() }
    }

    fn next(&mut self) -> Option<&Lexed> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos;
        let Some(tok) = self.next().map(|t| t.token.clone()) else {
            return Err(self.err(None, "unexpected end of input"));
        };
        match &tok {
            Token::Close => Err(self.err(self.tokens.get(pos), "unexpected ')'")),
            Token::Word(w) => atom(w).ok_or_else(|| self.err(self.tokens.get(pos), format!("unknown atom '{w}'"))),
            Token::Open => {
                let head_pos = self.pos;
                let head = match self.next().map(|t| &t.token) {
                    Some(Token::Word(w)) => w.clone(),
                    _ => return Err(self.err(self.tokens.get(head_pos), "expected 'c', 't' or 'tr' after '('")),
                };
                let mut args = Vec::new();
                loop {
                    match self.tokens.get(self.pos).map(|t| &t.token) {
                        Some(Token::Close) => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.err(None, "unclosed '('")),
                        _ => args.push(self.term()?),
                    }
                }
                let at = self.tokens.get(head_pos);
                match head.as_str() {
                    "c" | "t" if args.len() < 2 => Err(self.err(at, format!("'{head}' needs at least two arguments"))),
                    "c" => Ok(compose_all(args)),
                    "t" => Ok(tensor_all(args)),
                    "tr" if args.len() == 1 => Ok(trace(args.pop().unwrap())),
                    "tr" => Err(self.err(at, "'tr' takes exactly one argument")),
                    other => Err(self.err(at, format!("unknown operator '{other}'"))),
                }
            }
        }
    }
}

fn atom(w: &str) -> Option<Term> {
    Some(match w {
        "mu" => Term::Gen(Generator::Mu),
        "eta" => Term::Gen(Generator::Eta),
        "delta" => Term::Gen(Generator::Delta),
        "eps" => Term::Gen(Generator::Eps),
        "h" => Term::Gen(Generator::H),
        "id" => Term::Id,
        "empty" => Term::Empty,
        "sigma" => Term::Sym,
        _ => return None,
    })
}

/// Parses and arity-checks a term.
pub fn parse_term(text: &str) -> Result<Term> {
    let tokens = lex(text);
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { tokens, pos: 0, end };
    let term = p.term()?;
    if let Some(extra) = p.tokens.get(p.pos) {
        return Err(p.err(Some(extra), "trailing input after the term"));
    }
    term.arity()?;
    Ok(term)
}
