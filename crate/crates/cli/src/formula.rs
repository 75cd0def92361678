//! Parser for event formulas.
//!
//! ```text
//! expr    := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | primary
//! primary := NAME | 'true' | 'false' | '(' expr ')'
//! ```
//!
//! `&` binds tighter than `|`; both associate to the left.

use cohere_core::logic::EventExpr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unexpected character {found:?} at offset {at}")]
    Unexpected { found: char, at: usize },
    #[error("unexpected end of formula")]
    End,
    #[error("invalid atom name {0:?}")]
    Name(String),
    #[error("trailing input at offset {0}")]
    Trailing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        let token = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push((at, Token::Name(name)));
                continue;
            }
            found => return Err(FormulaError::Unexpected { found, at }),
        };
        chars.next();
        out.push((at, token));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(at, _)| *at)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<EventExpr, FormulaError> {
        let mut left = self.and()?;
        while self.eat(&Token::Or) {
            left = left | self.and()?;
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<EventExpr, FormulaError> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            left = left & self.unary()?;
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<EventExpr, FormulaError> {
        if self.eat(&Token::Not) {
            return Ok(!self.unary()?);
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<EventExpr, FormulaError> {
        let at = self.offset();
        let Some((_, token)) = self.tokens.get(self.pos).cloned() else {
            return Err(FormulaError::End);
        };
        self.pos += 1;
        match token {
            Token::Name(name) => match name.as_str() {
                "true" => Ok(EventExpr::True),
                "false" => Ok(EventExpr::False),
                _ => EventExpr::atom(&name).map_err(|_| FormulaError::Name(name)),
            },
            Token::Open => {
                let inner = self.expr()?;
                if !self.eat(&Token::Close) {
                    return match self.tokens.get(self.pos) {
                        Some((at, _)) => Err(FormulaError::Unexpected { found: symbol(self.peek()), at: *at }),
                        None => Err(FormulaError::End),
                    };
                }
                Ok(inner)
            }
            other => Err(FormulaError::Unexpected { found: symbol(Some(&other)), at }),
        }
    }
}

fn symbol(token: Option<&Token>) -> char {
    match token {
        Some(Token::Not) => '!',
        Some(Token::And) => '&',
        Some(Token::Or) => '|',
        Some(Token::Open) => '(',
        Some(Token::Close) => ')',
        Some(Token::Name(n)) => n.chars().next().unwrap_or(' '),
        None => ' ',
    }
}

pub fn parse_formula(text: &str) -> Result<EventExpr, FormulaError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, len: text.len() };
    let expr = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(FormulaError::Trailing(p.offset()));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> EventExpr {
        EventExpr::atom(n).unwrap()
    }

    #[test]
    fn precedence_and_grouping() {
        assert_eq!(parse_formula("A | B & C").unwrap(), v("A") | (v("B") & v("C")));
        assert_eq!(parse_formula("(A | B) & !C").unwrap(), (v("A") | v("B")) & !v("C"));
        assert_eq!(parse_formula("!!A").unwrap(), !!v("A"));
        assert_eq!(parse_formula("A & B & C").unwrap(), (v("A") & v("B")) & v("C"));
        assert_eq!(parse_formula(" true|false ").unwrap(), EventExpr::True | EventExpr::False);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_formula("A &"), Err(FormulaError::End));
        assert_eq!(parse_formula("A $ B"), Err(FormulaError::Unexpected { found: '$', at: 2 }));
        assert_eq!(parse_formula("(A | B"), Err(FormulaError::End));
        assert_eq!(parse_formula("A B"), Err(FormulaError::Trailing(2)));
        assert_eq!(parse_formula("1A"), Err(FormulaError::Name("1A".into())));
        assert_eq!(parse_formula(""), Err(FormulaError::End));
    }

    #[test]
    fn display_round_trip() {
        for text in ["A", "!(A | B)", "A & (B | C)", "A | (B | C)", "(A & B) & C", "A & (B & C)", "!H & X", "true"] {
            let e = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&e.to_string()).unwrap(), e, "{text}");
        }
    }
}
