use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, Rational, ScalarVector, UNIT_SYMBOL};

/// Parses a Q-linear combination of `1` and named symbols, such as
/// `1/2 + 2/3*t1 - t2` or `-3*tau`.
///
/// Grammar: `expr := [sign] term (sign term)*`, `term := number ['*' ident] | ident`,
/// with `number := digits ['/' digits]` and `ident := [A-Za-z_][A-Za-z0-9_]*`.
/// Whitespace may separate tokens.
pub fn parse_scalar_expr(src: &str) -> Result<ScalarVector> {
    Parser { src, pos: 0 }.expr()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.src[..self.pos].chars().count() + 1), message)
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(true)
            }
            Some('-') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        self.take_while(|c| c.is_ascii_digit());
        if self.peek() == Some('/') {
            self.pos += 1;
            if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                return Err(self.error("expected denominator digits"));
            }
        }
        let text = &self.src[start..self.pos];
        parse_rational(text).map_err(|_| {
            self.pos = start;
            self.error(format!("invalid number {text:?}"))
        })
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.error("expected a number or a symbol")),
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string())
    }

    fn term(&mut self) -> Result<ScalarVector> {
        self.skip_ws();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let q = self.number()?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                let name = self.ident()?;
                return Ok(ScalarVector::term(&name, q));
            }
            return Ok(ScalarVector::term(UNIT_SYMBOL, q));
        }
        let name = self.ident()?;
        Ok(ScalarVector::symbol(&name))
    }

    fn expr(mut self) -> Result<ScalarVector> {
        let mut acc = ScalarVector::zero();
        let mut positive = self.sign().unwrap_or(true);
        loop {
            let t = self.term()?;
            acc = if positive { &acc + &t } else { &acc - &t };
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(acc);
            }
            positive = self.sign().ok_or_else(|| self.error("expected '+' or '-'"))?;
        }
    }
}
