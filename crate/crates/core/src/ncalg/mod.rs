//! Free *-algebra over the rationals on an interned generator alphabet,
//! plus tensor squares and cubes of it.
//!
//! Words are flat letter sequences; a letter is a generator id with a star
//! bit (always clear for self-adjoint generators). The monomial order is
//! degree-lexicographic with generators ordered by declaration; this single
//! order drives polynomial normal forms, rewriting, and rendering.

mod text;

pub use text::{render_letter, render_word};

use crate::error::{Error, Result};
use num::{BigRational, One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub type Coeff = BigRational;

pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

pub fn coeff_ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(num.into(), den.into())
}

/// Interned generator id; the numeric order is the declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

/// A generator: a name, an integer index tuple, and a self-adjointness flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSymbol {
    pub name: String,
    pub indices: Vec<u32>,
    pub selfadjoint: bool,
}

impl GenSymbol {
    pub fn new(name: &str, indices: &[u32], selfadjoint: bool) -> Self {
        GenSymbol {
            name: name.to_string(),
            indices: indices.to_vec(),
            selfadjoint,
        }
    }

    pub fn render(&self) -> String {
        if self.indices.is_empty() {
            self.name.clone()
        } else {
            let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
            format!("{}({})", self.name, idx.join(","))
        }
    }
}

/// Ordered, interned set of generators. The declaration order fixes the
/// monomial order of every polynomial over this alphabet.
#[derive(Debug, Default)]
pub struct Alphabet {
    symbols: Vec<GenSymbol>,
    lookup: HashMap<(String, Vec<u32>), SymbolId>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    pub fn add(&mut self, sym: GenSymbol) -> Result<SymbolId> {
        let key = (sym.name.clone(), sym.indices.clone());
        if self.lookup.contains_key(&key) {
            return Err(Error::DuplicateGenerator(sym.render()));
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.lookup.insert(key, id);
        self.symbols.push(sym);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, id: SymbolId) -> &GenSymbol {
        &self.symbols[id.0 as usize]
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.symbols
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.symbols.len() as u32).map(SymbolId)
    }

    pub fn find(&self, name: &str, indices: &[u32]) -> Option<SymbolId> {
        self.lookup
            .get(&(name.to_string(), indices.to_vec()))
            .copied()
    }
}

/// Two alphabets are compatible when they are the same allocation or equal
/// symbol-for-symbol.
pub fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if same_alphabet(a, b) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// One letter of a word: a generator id plus a star bit, packed so that the
/// derived order is (id, star).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(id: SymbolId, starred: bool) -> Self {
        Letter((id.0 << 1) | starred as u32)
    }

    pub fn id(&self) -> SymbolId {
        SymbolId(self.0 >> 1)
    }

    pub fn starred(&self) -> bool {
        self.0 & 1 == 1
    }
}

/// A word in the free algebra, ordered degree-lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Star reverses the word and toggles star bits on non-self-adjoint letters.
    pub fn star(&self, alphabet: &Alphabet) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| {
                    if alphabet.get(l.id()).selfadjoint {
                        *l
                    } else {
                        Letter::new(l.id(), !l.starred())
                    }
                })
                .collect(),
        )
    }
}

/// Noncommutative polynomial: a finite rational combination of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Coeff>,
}

impl NCPoly {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NCPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        NCPoly::constant(alphabet, Coeff::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: Coeff) -> Self {
        let mut p = NCPoly::zero(alphabet);
        if !c.is_zero() {
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    pub fn from_word(alphabet: &Arc<Alphabet>, w: Word) -> Self {
        let mut p = NCPoly::zero(alphabet);
        p.terms.insert(w, Coeff::one());
        p
    }

    pub fn generator(alphabet: &Arc<Alphabet>, id: SymbolId) -> Self {
        NCPoly::from_word(alphabet, Word(vec![Letter::new(id, false)]))
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: Vec<(Word, Coeff)>) -> Self {
        let mut p = NCPoly::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Word, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |w| w.len())
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_alphabet(&self.alphabet, &other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return NCPoly::zero(&self.alphabet);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_alphabet(&self.alphabet, &other.alphabet)?;
        let mut out = NCPoly::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Antimultiplicative star; coefficients are rational, so unconjugated.
    pub fn star(&self) -> Self {
        let mut out = NCPoly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.star(&self.alphabet), c.clone());
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Coeff::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a scalar point, sending every letter of a symbol
    /// (starred or not) to the same rational value.
    pub fn eval(&self, value: &dyn Fn(SymbolId) -> Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for (w, c) in &self.terms {
            let mut prod = c.clone();
            for l in &w.0 {
                if prod.is_zero() {
                    break;
                }
                prod *= value(l.id());
            }
            acc += prod;
        }
        acc
    }

    /// Transports the polynomial to another alphabet along a symbol map.
    pub fn remap(&self, target: &Arc<Alphabet>, f: &dyn Fn(SymbolId) -> SymbolId) -> NCPoly {
        let mut out = NCPoly::zero(target);
        for (w, c) in &self.terms {
            let word = Word(
                w.0.iter()
                    .map(|l| Letter::new(f(l.id()), l.starred()))
                    .collect(),
            );
            out.add_term(word, c.clone());
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Element of the tensor square or cube of the free algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorPoly {
    alphabet: Arc<Alphabet>,
    rank: usize,
    terms: BTreeMap<Vec<Word>, Coeff>,
}

impl TensorPoly {
    pub fn zero(alphabet: &Arc<Alphabet>, rank: usize) -> Self {
        assert!(rank == 2 || rank == 3, "tensor rank must be 2 or 3");
        TensorPoly {
            alphabet: alphabet.clone(),
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>, rank: usize) -> Self {
        let mut t = TensorPoly::zero(alphabet, rank);
        t.terms.insert(vec![Word::empty(); rank], Coeff::one());
        t
    }

    pub fn from_legs(alphabet: &Arc<Alphabet>, legs: Vec<Word>) -> Self {
        let mut t = TensorPoly::zero(alphabet, legs.len());
        t.terms.insert(legs, Coeff::one());
        t
    }

    /// Tensor product of whole polynomials, expanded bilinearly.
    pub fn from_polys(legs: &[&NCPoly]) -> Result<Self> {
        assert!(legs.len() == 2 || legs.len() == 3);
        let alphabet = legs[0].alphabet();
        for p in legs {
            check_alphabet(alphabet, p.alphabet())?;
        }
        let mut t = TensorPoly::zero(alphabet, legs.len());
        let mut stack: Vec<(Vec<Word>, Coeff)> = vec![(Vec::new(), Coeff::one())];
        for p in legs {
            let mut next = Vec::new();
            for (prefix, c) in &stack {
                for (w, cw) in p.terms() {
                    let mut legs_v = prefix.clone();
                    legs_v.push(w.clone());
                    next.push((legs_v, c.clone() * cw.clone()));
                }
            }
            stack = next;
        }
        for (legs_v, c) in stack {
            t.add_term(legs_v, c);
        }
        Ok(t)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, legs: Vec<Word>, c: Coeff) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(legs);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        check_alphabet(&self.alphabet, &other.alphabet)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (legs, c) in &other.terms {
            out.add_term(legs.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return TensorPoly::zero(&self.alphabet, self.rank);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    /// Legwise multiplication: (a (x) b)(c (x) d) = ac (x) bd.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = TensorPoly::zero(&self.alphabet, self.rank);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                let legs: Vec<Word> = l1.iter().zip(l2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(legs, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Legwise star (the star of a tensor product algebra).
    pub fn star(&self) -> Self {
        let mut out = TensorPoly::zero(&self.alphabet, self.rank);
        for (legs, c) in &self.terms {
            let starred: Vec<Word> = legs.iter().map(|w| w.star(&self.alphabet)).collect();
            out.add_term(starred, c.clone());
        }
        out
    }

    pub fn remap(&self, target: &Arc<Alphabet>, f: &dyn Fn(SymbolId) -> SymbolId) -> TensorPoly {
        let mut out = TensorPoly::zero(target, self.rank);
        for (legs, c) in &self.terms {
            let mapped: Vec<Word> = legs
                .iter()
                .map(|w| {
                    Word(
                        w.0.iter()
                            .map(|l| Letter::new(f(l.id()), l.starred()))
                            .collect(),
                    )
                })
                .collect();
            out.add_term(mapped, c.clone());
        }
        out
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Generator images of a homomorphism into the algebra `T` lives in.
/// Images of starred letters are the star of the unstarred image.
#[derive(Debug, Clone)]
pub struct GenImages<T> {
    target: Arc<Alphabet>,
    map: BTreeMap<u32, T>,
}

impl<T> GenImages<T> {
    pub fn new(target: &Arc<Alphabet>) -> Self {
        GenImages {
            target: target.clone(),
            map: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, id: SymbolId, image: T) {
        self.map.insert(id.0, image);
    }

    pub fn get(&self, id: SymbolId) -> Option<&T> {
        self.map.get(&id.0)
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &T)> {
        self.map.iter().map(|(k, v)| (SymbolId(*k), v))
    }
}

/// Target-algebra operations needed to push a polynomial through a
/// generator-image map.
pub trait AlgebraOps: Clone {
    fn alg_one(alphabet: &Arc<Alphabet>) -> Self;
    fn alg_zero(alphabet: &Arc<Alphabet>) -> Self;
    fn alg_mul(&self, other: &Self) -> Result<Self>;
    fn alg_add(&self, other: &Self) -> Result<Self>;
    fn alg_scale(&self, c: &Coeff) -> Self;
    fn alg_star(&self) -> Self;
}

impl AlgebraOps for NCPoly {
    fn alg_one(alphabet: &Arc<Alphabet>) -> Self {
        NCPoly::one(alphabet)
    }
    fn alg_zero(alphabet: &Arc<Alphabet>) -> Self {
        NCPoly::zero(alphabet)
    }
    fn alg_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn alg_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn alg_scale(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn alg_star(&self) -> Self {
        self.star()
    }
}

impl AlgebraOps for TensorPoly {
    fn alg_one(alphabet: &Arc<Alphabet>) -> Self {
        TensorPoly::one(alphabet, 2)
    }
    fn alg_zero(alphabet: &Arc<Alphabet>) -> Self {
        TensorPoly::zero(alphabet, 2)
    }
    fn alg_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn alg_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn alg_scale(&self, c: &Coeff) -> Self {
        self.scale(c)
    }
    fn alg_star(&self) -> Self {
        self.star()
    }
}

/// Extends generator images to the whole free algebra, homomorphically, or
/// antihomomorphically (reversed products) when `anti` is set.
pub fn apply_hom_generic<T: AlgebraOps>(
    p: &NCPoly,
    images: &GenImages<T>,
    anti: bool,
) -> Result<T> {
    let mut acc = T::alg_zero(&images.target);
    for (w, c) in p.terms() {
        let mut prod = T::alg_one(&images.target);
        let letters: Vec<&Letter> = if anti {
            w.0.iter().rev().collect()
        } else {
            w.0.iter().collect()
        };
        for l in letters {
            let base = images
                .get(l.id())
                .ok_or_else(|| Error::MissingImage(p.alphabet().get(l.id()).render()))?;
            let img = if l.starred() {
                base.alg_star()
            } else {
                base.clone()
            };
            prod = prod.alg_mul(&img)?;
        }
        acc = acc.alg_add(&prod.alg_scale(c))?;
    }
    Ok(acc)
}

pub fn apply_hom(p: &NCPoly, images: &GenImages<NCPoly>, anti: bool) -> Result<NCPoly> {
    apply_hom_generic(p, images, anti)
}

pub fn apply_hom_tensor(
    p: &NCPoly,
    images: &GenImages<TensorPoly>,
    anti: bool,
) -> Result<TensorPoly> {
    apply_hom_generic(p, images, anti)
}

/// Evaluates a character given on generators (starred letters take the same
/// rational value, matching a *-character with rational values).
pub fn apply_counit(p: &NCPoly, counit: &BTreeMap<u32, Coeff>) -> Result<Coeff> {
    let mut acc = Coeff::zero();
    for (w, c) in p.terms() {
        let mut prod = c.clone();
        for l in &w.0 {
            if prod.is_zero() {
                break;
            }
            let v = counit
                .get(&l.id().0)
                .ok_or_else(|| Error::MissingImage(p.alphabet().get(l.id()).render()))?;
            prod *= v.clone();
        }
        acc += prod;
    }
    Ok(acc)
}
