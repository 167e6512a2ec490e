use super::monomial::VarSet;
use super::scalar::Scalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    src: &'a str,
    i: usize,
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let mut p = Parser {
        s: src.as_bytes(),
        src,
        i: 0,
    };
    let v = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at byte {} in {:?}", msg, self.i, self.src))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let neg = if self.peek() == Some(b'-') {
                self.i += 1;
                true
            } else {
                false
            };
            let e = self.integer()? as i32;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        self.src[start..self.i]
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::int(self.integer()?)),
            Some(b'-') => {
                self.i += 1;
                Ok(-self.atom()?)
            }
            Some(_) => {
                let start = self.i;
                let rest = &self.src[start..];
                let len: usize = rest
                    .char_indices()
                    .take_while(|(_, ch)| ch.is_alphanumeric() || *ch == '_')
                    .map(|(i, ch)| i + ch.len_utf8())
                    .last()
                    .unwrap_or(0);
                if len == 0 {
                    return Err(self.err("unexpected character"));
                }
                let name = &rest[..len];
                self.i += len;
                let v = VarSet::index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable {:?}", name)))?;
                Ok(Scalar::var(v))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}
