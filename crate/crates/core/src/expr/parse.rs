use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Atom, ExprError, ShuffleExpr};
use crate::automata::{Alphabet, Dfa};

/// Maps identifiers to loaded automata.
pub type AtomTable = BTreeMap<String, Arc<Dfa>>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Union,
    Shuffle,
    Concat,
    Star,
    Iter,
    Open,
    Close,
    Epsilon,
    Empty,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '|' => Token::Union,
            '@' => Token::Shuffle,
            '.' => Token::Concat,
            '*' => Token::Star,
            '%' => Token::Iter,
            '(' => Token::Open,
            ')' => Token::Close,
            'ε' => Token::Epsilon,
            '∅' => Token::Empty,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = c.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                Token::Ident(ident)
            }
            other => {
                return Err(ExprError::Syntax {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    atoms: &'a AtomTable,
    alphabet: Option<Alphabet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn nary(
        &mut self,
        op: Token,
        build: fn(Vec<ShuffleExpr>) -> ShuffleExpr,
        next: fn(&mut Self) -> Result<ShuffleExpr, ExprError>,
    ) -> Result<ShuffleExpr, ExprError> {
        let mut items = vec![next(self)?];
        while self.eat(&op) {
            items.push(next(self)?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            build(items)
        })
    }

    fn union(&mut self) -> Result<ShuffleExpr, ExprError> {
        self.nary(Token::Union, ShuffleExpr::Union, Self::shuffle)
    }

    fn shuffle(&mut self) -> Result<ShuffleExpr, ExprError> {
        self.nary(Token::Shuffle, ShuffleExpr::Shuffle, Self::concat)
    }

    fn concat(&mut self) -> Result<ShuffleExpr, ExprError> {
        self.nary(Token::Concat, ShuffleExpr::Concat, Self::postfix)
    }

    fn postfix(&mut self) -> Result<ShuffleExpr, ExprError> {
        let mut e = self.primary()?;
        loop {
            if self.eat(&Token::Star) {
                e = ShuffleExpr::star(e);
            } else if self.eat(&Token::Iter) {
                e = ShuffleExpr::iter_shuffle(e);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> Result<ShuffleExpr, ExprError> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or(ExprError::Syntax {
            pos,
            message: "unexpected end of expression".into(),
        })?;
        self.at += 1;
        match tok {
            Token::Open => {
                let e = self.union()?;
                if !self.eat(&Token::Close) {
                    return Err(ExprError::Syntax {
                        pos: self.pos(),
                        message: "expected ')'".into(),
                    });
                }
                Ok(e)
            }
            Token::Epsilon => Ok(ShuffleExpr::Epsilon),
            Token::Empty => Ok(ShuffleExpr::Empty),
            Token::Ident(name) => {
                let dfa = self
                    .atoms
                    .get(&name)
                    .ok_or_else(|| ExprError::UnknownAtom {
                        name: name.clone(),
                        pos,
                    })?;
                match &self.alphabet {
                    Some(a) if a != dfa.alphabet() => {
                        return Err(ExprError::AlphabetMismatch {
                            atom: name,
                            expected: a.to_string(),
                            found: dfa.alphabet().to_string(),
                        })
                    }
                    Some(_) => {}
                    None => self.alphabet = Some(dfa.alphabet().clone()),
                }
                Ok(ShuffleExpr::Atom(Atom {
                    name,
                    dfa: Arc::clone(dfa),
                }))
            }
            _ => Err(ExprError::Syntax {
                pos,
                message: "expected an atom or '('".into(),
            }),
        }
    }
}

/// Parses an expression. Precedence from tightest: postfix `*` and `%`,
/// then `.`, then `@`, then `|`.
pub fn parse(text: &str, atoms: &AtomTable) -> Result<ShuffleExpr, ExprError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        at: 0,
        end: text.len(),
        atoms,
        alphabet: None,
    };
    let e = p.union()?;
    if p.at < p.tokens.len() {
        return Err(ExprError::Syntax {
            pos: p.pos(),
            message: "trailing input".into(),
        });
    }
    Ok(e)
}
