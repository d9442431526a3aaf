//! Tokenizer for linear expressions such as `13*L - 2*d0 + 1/2 d1` or
//! `12L-d0`.
//!
//! The grammar is a signed sum of terms. A term is an optional rational
//! coefficient (`p` or `p/q`), an optional `*`, and an optional symbol made of
//! letters followed by digits. At least one of coefficient and symbol must be
//! present. Interpretation of the symbols is up to the caller.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub symbol: Option<Symbol>,
    /// Character position of the start of the term.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub index: Option<String>,
    pub pos: usize,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

pub fn parse_terms(input: &str) -> Result<Vec<Term>> {
    let mut cur = Cursor {
        chars: input.chars().collect(),
        pos: 0,
    };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty expression"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some(c) if is_minus(c) => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.error(format!("expected '+' or '-', found {c:?}"))),
            None => break,
        }
        first = false;
        cur.skip_ws();
        let term_pos = cur.pos;

        let mut coeff = None;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let numer = cur.take_while(|c| c.is_ascii_digit());
            let mut literal = numer;
            if cur.peek() == Some('/') {
                cur.pos += 1;
                let denom = cur.take_while(|c| c.is_ascii_digit());
                if denom.is_empty() {
                    return Err(cur.error("expected denominator after '/'"));
                }
                literal = format!("{literal}/{denom}");
            }
            let value: Rational = literal.parse().map_err(|_| Error::Parse {
                pos: term_pos,
                msg: format!("invalid rational literal {literal:?}"),
            })?;
            coeff = Some(value);
            cur.skip_ws();
        }

        let mut star = false;
        if cur.peek() == Some('*') {
            if coeff.is_none() {
                return Err(cur.error("'*' without a coefficient"));
            }
            star = true;
            cur.pos += 1;
            cur.skip_ws();
        }

        let mut symbol = None;
        if cur.peek().is_some_and(|c| c.is_alphabetic()) {
            let pos = cur.pos;
            let name = cur.take_while(char::is_alphabetic);
            let digits = cur.take_while(|c| c.is_ascii_digit());
            symbol = Some(Symbol {
                name,
                index: (!digits.is_empty()).then_some(digits),
                pos,
            });
        } else if star {
            return Err(cur.error("expected a symbol after '*'"));
        }

        if coeff.is_none() && symbol.is_none() {
            return Err(match cur.peek() {
                Some(c) => cur.error(format!("unexpected character {c:?}")),
                None => cur.error("unexpected end of input"),
            });
        }
        let mut coeff = coeff.unwrap_or_else(Rational::one);
        if negative {
            coeff = -coeff;
        }
        terms.push(Term {
            coeff,
            symbol,
            pos: term_pos,
        });
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(terms: &[Term]) -> Vec<(String, Option<String>, String)> {
        terms
            .iter()
            .map(|t| {
                let s = t.symbol.as_ref();
                (
                    t.coeff.to_string(),
                    s.map(|s| s.index.clone()).unwrap_or_default(),
                    s.map(|s| s.name.clone()).unwrap_or_default(),
                )
            })
            .map(|(c, i, n)| (n, i, c))
            .collect()
    }

    #[test]
    fn standard_form() {
        let t = parse_terms("13*L - 2*d0 - 1/2*d1").unwrap();
        assert_eq!(
            names(&t),
            vec![
                ("L".into(), None, "13".into()),
                ("d".into(), Some("0".into()), "-2".into()),
                ("d".into(), Some("1".into()), "-1/2".into()),
            ]
        );
    }

    #[test]
    fn shorthand_forms() {
        let t = parse_terms("12L-d0").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].coeff, Rational::integer(12));
        assert_eq!(t[1].coeff, Rational::integer(-1));
        let t = parse_terms("-lambda").unwrap();
        assert_eq!(t[0].coeff, Rational::integer(-1));
        assert_eq!(t[0].symbol.as_ref().unwrap().name, "lambda");
        let t = parse_terms("0").unwrap();
        assert!(t[0].symbol.is_none());
        assert!(t[0].coeff.is_zero());
    }

    #[test]
    fn unicode_minus() {
        let t = parse_terms("12L \u{2212} d0").unwrap();
        assert_eq!(t[1].coeff, Rational::integer(-1));
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_terms("13*L - ").unwrap_err(),
            Error::Parse {
                pos: 7,
                msg: "unexpected end of input".into()
            }
        );
        match parse_terms("13*L ? d0").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 5),
            e => panic!("{e:?}"),
        }
        match parse_terms("3/ L").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 2),
            e => panic!("{e:?}"),
        }
        assert!(parse_terms("").is_err());
        assert!(parse_terms("2 *").is_err());
        assert!(parse_terms("L d0").is_err());
    }
}
