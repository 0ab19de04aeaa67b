//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?
//! atom   := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
//! ```

use thiserror::Error;

use super::{BinaryOp, Expr, UnaryOp};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Number(&'a str),
    Ident(&'a str),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Number(s) => format!("number `{s}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Op(c) => format!("`{c}`"),
            Token::LParen => "`(`".to_string(),
            Token::RParen => "`)`".to_string(),
            Token::End => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_whitespace(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek_byte(&self, at: usize) -> Option<u8> {
        self.src.as_bytes().get(at).copied()
    }

    fn digits_from(&self, mut at: usize) -> usize {
        while matches!(self.peek_byte(at), Some(b'0'..=b'9')) {
            at += 1;
        }
        at
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Token<'a>, usize), ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        let Some(ch) = self.src[start..].chars().next() else {
            return Ok((Token::End, start));
        };
        let tok = match ch {
            '0'..='9' | '.' => {
                let mut end = self.digits_from(start);
                let int_digits = end - start;
                let mut frac_digits = 0;
                if self.peek_byte(end) == Some(b'.') {
                    let after = self.digits_from(end + 1);
                    frac_digits = after - end - 1;
                    end = after;
                }
                if int_digits == 0 && frac_digits == 0 {
                    return Err(ParseError::Syntax {
                        offset: start,
                        expected: "digits".to_string(),
                        found: "`.`".to_string(),
                    });
                }
                // An exponent is only consumed when digits follow, so `2e` stays `2` then `e`.
                if matches!(self.peek_byte(end), Some(b'e' | b'E')) {
                    let mut at = end + 1;
                    if matches!(self.peek_byte(at), Some(b'+' | b'-')) {
                        at += 1;
                    }
                    let exp_end = self.digits_from(at);
                    if exp_end > at {
                        end = exp_end;
                    }
                }
                self.pos = end;
                Token::Number(&self.src[start..end])
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = self.src[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.src.len() - start);
                self.pos = start + len;
                Token::Ident(&self.src[start..start + len])
            }
            '+' | '-' | '*' | '/' | '^' => {
                self.pos += 1;
                Token::Op(ch)
            }
            '(' => {
                self.pos += 1;
                Token::LParen
            }
            ')' => {
                self.pos += 1;
                Token::RParen
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: "expression".to_string(),
                    found: format!("character `{other}`"),
                })
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token<'a>,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (current, offset) = lexer.next()?;
        Ok(Parser {
            lexer,
            current,
            offset,
        })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, offset) = self.lexer.next()?;
        self.current = tok;
        self.offset = offset;
        Ok(())
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset,
            expected: expected.to_string(),
            found: self.current.describe(),
        }
    }

    fn expect(&mut self, tok: Token<'static>, expected: &str) -> Result<(), ParseError> {
        if self.current == tok {
            self.advance()
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.current {
                Token::Op('+') => BinaryOp::Add,
                Token::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.advance()?;
            lhs = Expr::binary(op, lhs, self.term()?);
        }
    }

    fn term<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.current {
                Token::Op('*') => BinaryOp::Mul,
                Token::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.advance()?;
            lhs = Expr::binary(op, lhs, self.factor()?);
        }
    }

    fn factor<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        if self.current == Token::Op('-') {
            self.advance()?;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.current == Token::Op('^') {
            self.advance()?;
            return Ok(base.pow(self.factor()?));
        }
        Ok(base)
    }

    fn atom<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        match self.current.clone() {
            Token::Number(text) => {
                let value = text.parse::<T>().map_err(|_| ParseError::Syntax {
                    offset: self.offset,
                    expected: "number".to_string(),
                    found: format!("`{text}`"),
                })?;
                if !value.is_finite() {
                    return Err(ParseError::Syntax {
                        offset: self.offset,
                        expected: "finite number".to_string(),
                        found: format!("`{text}`"),
                    });
                }
                self.advance()?;
                Ok(Expr::Constant(value))
            }
            Token::Ident(name) => {
                let at = self.offset;
                self.advance()?;
                match name {
                    "x" => Ok(Expr::Variable),
                    "pi" => Ok(Expr::Constant(T::PI())),
                    "e" => Ok(Expr::Constant(T::E())),
                    _ => match UnaryOp::from_name(name) {
                        Some(op) => {
                            self.expect(Token::LParen, "`(` after function name")?;
                            let arg = self.expr()?;
                            self.expect(Token::RParen, "`)`")?;
                            Ok(Expr::unary(op, arg))
                        }
                        None => Err(ParseError::UnknownIdentifier {
                            offset: at,
                            name: name.to_string(),
                        }),
                    },
                }
            }
            Token::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

/// Parses `text` into an expression tree in the variable `x`.
pub fn parse<T: Real>(text: &str) -> Result<Expr<T>, ParseError> {
    let mut parser = Parser::new(text)?;
    let expr = parser.expr()?;
    if parser.current != Token::End {
        return Err(parser.unexpected("operator or end of input"));
    }
    Ok(expr)
}
