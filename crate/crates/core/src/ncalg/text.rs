//! Canonical text form for words, polynomials, and tensors.
//!
//! Terms are rendered leading-first (descending monomial order), with the
//! sign folded into the separator. `parse` is an exact inverse on canonical
//! output, which is what the serialization round-trip tests pin down.

use super::{Alphabet, Coeff, GenSymbol, Letter, NCPoly, TensorPoly, Word};
use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::sync::Arc;

pub fn render_letter(alphabet: &Alphabet, l: &Letter) -> String {
    let mut s = alphabet.get(l.id()).render();
    if l.starred() {
        s.push('*');
    }
    s
}

pub fn render_word(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.0.iter()
        .map(|l| render_letter(alphabet, l))
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_term(out: &mut String, first: bool, c: &Coeff, body: Option<String>) {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push_str("- ");
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    match body {
        None => out.push_str(&mag.to_string()),
        Some(b) => {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push(' ');
            }
            out.push_str(&b);
        }
    }
}

impl NCPoly {
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            let body = if w.is_empty() {
                None
            } else {
                Some(render_word(&self.alphabet, w))
            };
            push_term(&mut out, first, c, body);
            first = false;
        }
        out
    }

    pub fn parse(alphabet: &Arc<Alphabet>, s: &str) -> Result<NCPoly> {
        let tokens = tokenize(s)?;
        let mut p = Parser::new(alphabet, &tokens);
        let poly = p.poly()?;
        p.finish()?;
        Ok(poly)
    }
}

impl TensorPoly {
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (legs, c) in self.terms.iter().rev() {
            let body = legs
                .iter()
                .map(|w| render_word(&self.alphabet, w))
                .collect::<Vec<_>>()
                .join(" ⊗ ");
            push_term(&mut out, first, c, Some(body));
            first = false;
        }
        out
    }

    pub fn parse(alphabet: &Arc<Alphabet>, rank: usize, s: &str) -> Result<TensorPoly> {
        let tokens = tokenize(s)?;
        let mut p = Parser::new(alphabet, &tokens);
        let tensor = p.tensor(rank)?;
        p.finish()?;
        Ok(tensor)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    LParen,
    RParen,
    Comma,
    Star,
    Plus,
    Minus,
    Slash,
    Tensor,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            ',' => {
                chars.next();
                out.push(Tok::Comma);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '⊗' => {
                chars.next();
                out.push(Tok::Tensor);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n.parse().expect("digits parse as BigInt")));
            }
            c if c.is_ascii_alphabetic() => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Name(n));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alphabet: &'a Arc<Alphabet>,
    tokens: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(alphabet: &'a Arc<Alphabet>, tokens: &'a [Tok]) -> Self {
        Parser {
            alphabet,
            tokens,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "trailing input from token {}",
                self.pos
            )))
        }
    }

    /// coefficient := INT ('/' INT)?   (sign comes from the caller)
    fn number(&mut self) -> Result<Coeff> {
        let n = match self.next() {
            Some(Tok::Num(n)) => n.clone(),
            got => return Err(Error::Parse(format!("expected number, got {got:?}"))),
        };
        if self.peek() == Some(&Tok::Slash) {
            self.next();
            match self.next() {
                Some(Tok::Num(d)) if !d.is_zero() => Ok(BigRational::new(n, d.clone())),
                got => Err(Error::Parse(format!("bad denominator {got:?}"))),
            }
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    /// letter := NAME ('(' INT (',' INT)* ')')? '*'?
    fn letter(&mut self) -> Result<Letter> {
        let name = match self.next() {
            Some(Tok::Name(n)) => n.clone(),
            got => return Err(Error::Parse(format!("expected generator, got {got:?}"))),
        };
        let mut indices = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            loop {
                match self.next() {
                    Some(Tok::Num(n)) => {
                        indices.push(
                            n.to_string().parse::<u32>().map_err(|_| {
                                Error::Parse(format!("index out of range in {name}"))
                            })?,
                        );
                    }
                    got => return Err(Error::Parse(format!("expected index, got {got:?}"))),
                }
                match self.next() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    got => return Err(Error::Parse(format!("expected , or ), got {got:?}"))),
                }
            }
        }
        let id = self.alphabet.find(&name, &indices).ok_or_else(|| {
            Error::UnknownGenerator(GenSymbol::new(&name, &indices, true).render())
        })?;
        let starred = if self.peek() == Some(&Tok::Star) {
            self.next();
            true
        } else {
            false
        };
        if starred && self.alphabet.get(id).selfadjoint {
            return Err(Error::Parse(format!(
                "star on self-adjoint generator {}",
                self.alphabet.get(id).render()
            )));
        }
        Ok(Letter::new(id, starred))
    }

    /// term := coeff? letter*   (a bare coeff is a constant term; a bare "1"
    /// coefficient marks the empty word)
    fn term(&mut self) -> Result<(Word, Coeff)> {
        let mut coeff = Coeff::one();
        let mut saw_number = false;
        if matches!(self.peek(), Some(Tok::Num(_))) {
            coeff = self.number()?;
            saw_number = true;
        }
        let mut letters = Vec::new();
        while matches!(self.peek(), Some(Tok::Name(_))) {
            letters.push(self.letter()?);
        }
        if letters.is_empty() && !saw_number {
            return Err(Error::Parse(format!(
                "expected a term, got {:?}",
                self.peek()
            )));
        }
        Ok((Word(letters), coeff))
    }

    fn poly(&mut self) -> Result<NCPoly> {
        let mut out = NCPoly::zero(self.alphabet);
        let mut sign = Coeff::one();
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            sign = -Coeff::one();
        }
        loop {
            let (w, c) = self.term()?;
            out.add_term(w, c * sign.clone());
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = Coeff::one();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -Coeff::one();
                }
                _ => break,
            }
        }
        Ok(out)
    }

    /// leg := '1' | letter+
    fn tensor_leg(&mut self) -> Result<Word> {
        match self.peek() {
            Some(Tok::Num(n)) if n.is_one() => {
                self.next();
                Ok(Word::empty())
            }
            Some(Tok::Name(_)) => {
                let mut letters = Vec::new();
                while matches!(self.peek(), Some(Tok::Name(_))) {
                    letters.push(self.letter()?);
                }
                Ok(Word(letters))
            }
            got => Err(Error::Parse(format!("expected tensor leg, got {got:?}"))),
        }
    }

    /// tensor-term := coeff? leg ('⊗' leg){rank-1}
    ///
    /// A leading number followed by another number or a generator is a
    /// coefficient; otherwise it is the scalar leg "1".
    fn tensor(&mut self, rank: usize) -> Result<TensorPoly> {
        let mut out = TensorPoly::zero(self.alphabet, rank);
        let mut sign = Coeff::one();
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            sign = -Coeff::one();
        }
        loop {
            let mut coeff = Coeff::one();
            if matches!(self.peek(), Some(Tok::Num(_))) {
                let save = self.pos;
                let c = self.number()?;
                if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Name(_))) {
                    coeff = c;
                } else {
                    self.pos = save;
                }
            }
            let mut legs = vec![self.tensor_leg()?];
            while self.peek() == Some(&Tok::Tensor) {
                self.next();
                legs.push(self.tensor_leg()?);
            }
            if legs.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: legs.len(),
                });
            }
            out.add_term(legs, coeff * sign.clone());
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    sign = Coeff::one();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -Coeff::one();
                }
                _ => break,
            }
        }
        Ok(out)
    }
}
