//! Parser and evaluator for model-algebra expressions: sums and products of
//! the idempotents `x11`/`x12`, the group-like `d`, rational literals,
//! embedded words `w(1:g 2:h)`, characters `chi(1:g 2:h)`, and `star(...)`.
//! Errors carry the byte offset where parsing stopped.

use freewreath::groups::{FreeProductWord, GroupSpec};
use freewreath::model2::{character, ModelElement};
use freewreath::ncalg::{coeff_ratio, Coeff};
use freewreath::{Error, Result};

pub fn parse(group: &GroupSpec, text: &str) -> Result<ModelElement> {
    let mut p = Parser {
        group,
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let value = p.sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.fail("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    group: &'a GroupSpec,
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail(&self, message: &str) -> Error {
        Error::Parse(format!(
            "at byte {} of {:?}: {message}",
            self.pos, self.text
        ))
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected {:?}", c as char)))
        }
    }

    fn sum(&mut self) -> Result<ModelElement> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<ModelElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ModelElement> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.rational()?;
                Ok(ModelElement::one(self.group).scale(&value))
            }
            Some(c) if c.is_ascii_alphabetic() => self.named(),
            _ => Err(self.fail("expected a factor")),
        }
    }

    fn rational(&mut self) -> Result<Coeff> {
        let numerator = self.integer()?;
        if self.eat(b'/') {
            let denominator = self.integer()?;
            if denominator == 0 {
                return Err(self.fail("zero denominator"));
            }
            Ok(coeff_ratio(numerator, denominator))
        } else {
            Ok(coeff_ratio(numerator, 1))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected digits"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.fail("integer out of range"))
    }

    fn named(&mut self) -> Result<ModelElement> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        match name {
            "x11" => Ok(ModelElement::x11(self.group)),
            "x12" => Ok(ModelElement::x12(self.group)),
            "d" => Ok(ModelElement::sign(self.group)),
            "chi" => {
                let w = self.word_argument()?;
                character(&w)
            }
            "w" => {
                let w = self.word_argument()?;
                Ok(ModelElement::embed_word(&w))
            }
            "star" => {
                self.expect(b'(')?;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(inner.star())
            }
            _ => {
                self.pos = start;
                Err(self.fail(&format!(
                    "unknown name {name:?} (expected x11, x12, d, chi, w, or star)"
                )))
            }
        }
    }

    /// Raw text up to the matching `)`, handed to the word parser.
    fn word_argument(&mut self) -> Result<FreeProductWord> {
        self.expect(b'(')?;
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|&c| c != b')') {
            self.pos += 1;
        }
        if self.bytes.get(self.pos) != Some(&b')') {
            return Err(self.fail("unclosed word argument"));
        }
        let raw = self.text[start..self.pos].trim();
        self.pos += 1;
        let raw = if raw.is_empty() { "e" } else { raw };
        FreeProductWord::parse(self.group, raw)
    }
}
