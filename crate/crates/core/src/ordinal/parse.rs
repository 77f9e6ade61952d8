//! Text grammar for ordinals:
//!
//! ```text
//! ordinal := term ("+" term)* | "0"
//! term    := "w" ["^(" ordinal ")" | "^" natural] ["*" coeff] | natural
//! ```
//!
//! Whitespace is insignificant. Input must already be in Cantor normal form.

use thiserror::Error;

use super::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid ordinal at byte {pos}: {msg}")]
pub struct ParseOrdinalError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(s: &str) -> Result<Ordinal, ParseOrdinalError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let ord = p.ordinal()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ord)
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseOrdinalError {
        ParseOrdinalError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseOrdinalError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn natural(&mut self) -> Result<u64, ParseOrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ParseOrdinalError {
            pos: start,
            msg: "number too large".into(),
        })
    }

    fn ordinal(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        let start = self.pos;
        let mut terms: Vec<(Ordinal, u64, usize)> = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if terms.len() == 1 && terms[0].1 == 0 {
            return Ok(Ordinal::zero());
        }
        for (i, (exp, coeff, pos)) in terms.iter().enumerate() {
            if *coeff == 0 {
                return Err(ParseOrdinalError {
                    pos: *pos,
                    msg: "zero term inside a sum".into(),
                });
            }
            if i > 0 && *exp >= terms[i - 1].0 {
                return Err(ParseOrdinalError {
                    pos: *pos,
                    msg: format!(
                        "not in Cantor normal form: exponent {} follows exponent {}",
                        exp,
                        terms[i - 1].0
                    ),
                });
            }
        }
        Ordinal::from_terms(terms.into_iter().map(|(e, c, _)| (e, c))).map_err(|e| {
            ParseOrdinalError {
                pos: start,
                msg: e.to_string(),
            }
        })
    }

    fn term(&mut self) -> Result<(Ordinal, u64, usize), ParseOrdinalError> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let mut exponent = Ordinal::one();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        exponent = self.ordinal()?;
                        self.expect(b')')?;
                    } else {
                        exponent = Ordinal::nat(self.natural()?);
                    }
                }
                let mut coeff = 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    coeff = self.natural()?;
                    if coeff == 0 {
                        return Err(self.error("coefficient must be positive"));
                    }
                }
                Ok((exponent, coeff, pos))
            }
            Some(c) if c.is_ascii_digit() => Ok((Ordinal::zero(), self.natural()?, pos)),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
