//! Finitely presented *-algebras with Hopf structure data on generators.
//!
//! A [`Presentation`] is an alphabet of generators, a list of relations (each
//! read as `p = 0`), and optionally the comultiplication / counit / antipode
//! images of every generator. Builders cover the magic unitary algebra, group
//! algebras of finite groups, free wreath products, the grid algebras over a
//! group (finite and specialized cyclic presentations), free products, and
//! the two graph symmetry presentations.
//!
//! Relation lists are normalized on construction: zero polynomials dropped,
//! duplicates (up to a scalar) removed, and the list closed under the star
//! operation so that the stored ideal is a *-ideal.

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::groups::GroupSpec;
use crate::ncalg::{
    coeff_int, Alphabet, Coeff, GenImages, GenSymbol, Letter, NCPoly, SymbolId, TensorPoly, Word,
};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

/// Comultiplication, counit, and antipode images keyed by generator id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HopfData {
    pub delta: BTreeMap<u32, TensorPoly>,
    pub counit: BTreeMap<u32, Coeff>,
    pub antipode: BTreeMap<u32, NCPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub label: String,
    pub alphabet: Arc<Alphabet>,
    pub relations: Vec<NCPoly>,
    pub hopf: Option<HopfData>,
}

fn word1(id: SymbolId) -> Word {
    Word(vec![Letter::new(id, false)])
}

fn word1_star(id: SymbolId) -> Word {
    Word(vec![Letter::new(id, true)])
}

fn word2(a: SymbolId, b: SymbolId) -> Word {
    Word(vec![Letter::new(a, false), Letter::new(b, false)])
}

fn word_pow(id: SymbolId, k: usize) -> Word {
    Word(vec![Letter::new(id, false); k])
}

fn poly(alphabet: &Arc<Alphabet>, terms: Vec<(Word, i64)>) -> NCPoly {
    NCPoly::from_terms(
        alphabet,
        terms.into_iter().map(|(w, c)| (w, coeff_int(c))).collect(),
    )
}

/// Drops zeros, removes scalar-multiple duplicates, and appends the star of
/// any relation not already implied, preserving first-seen order.
fn normalize_relations(relations: Vec<NCPoly>) -> Vec<NCPoly> {
    let mut out: Vec<NCPoly> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        if seen.insert(r.monic().render()) {
            out.push(r);
        }
    }
    let mut i = 0;
    while i < out.len() {
        let s = out[i].star();
        if seen.insert(s.monic().render()) {
            out.push(s);
        }
        i += 1;
    }
    out
}

impl Presentation {
    /// Normalizes the relation list and checks that any Hopf data covers
    /// every generator.
    pub fn new(
        label: String,
        alphabet: Arc<Alphabet>,
        relations: Vec<NCPoly>,
        hopf: Option<HopfData>,
    ) -> Result<Self> {
        if let Some(h) = &hopf {
            for id in alphabet.ids() {
                if !h.delta.contains_key(&id.0)
                    || !h.counit.contains_key(&id.0)
                    || !h.antipode.contains_key(&id.0)
                {
                    return Err(Error::MissingHopfData(alphabet.get(id).render()));
                }
            }
        }
        Ok(Presentation {
            label,
            alphabet,
            relations: normalize_relations(relations),
            hopf,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(|r| r.degree()).max().unwrap_or(0)
    }

    pub fn generator_poly(&self, id: SymbolId) -> NCPoly {
        NCPoly::generator(&self.alphabet, id)
    }

    pub fn hopf_data(&self) -> Result<&HopfData> {
        self.hopf
            .as_ref()
            .ok_or_else(|| Error::MissingHopfData(self.label.clone()))
    }

    pub fn delta_images(&self) -> Result<GenImages<TensorPoly>> {
        let h = self.hopf_data()?;
        let mut images = GenImages::new(&self.alphabet);
        for id in self.alphabet.ids() {
            images.insert(id, h.delta[&id.0].clone());
        }
        Ok(images)
    }

    pub fn antipode_images(&self) -> Result<GenImages<NCPoly>> {
        let h = self.hopf_data()?;
        let mut images = GenImages::new(&self.alphabet);
        for id in self.alphabet.ids() {
            images.insert(id, h.antipode[&id.0].clone());
        }
        Ok(images)
    }

    pub fn counit_values(&self) -> Result<&BTreeMap<u32, Coeff>> {
        Ok(&self.hopf_data()?.counit)
    }
}

/// Relations of an n x n magic unitary over the grid `at(i, j)`:
/// entries in a row or column are orthogonal idempotents, rows and columns
/// sum to 1.
fn magic_relations(
    alphabet: &Arc<Alphabet>,
    n: usize,
    at: &dyn Fn(usize, usize) -> SymbolId,
) -> Vec<NCPoly> {
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let mut terms = vec![(word2(at(i, j), at(i, k)), 1)];
                if j == k {
                    terms.push((word1(at(i, j)), -1));
                }
                rels.push(poly(alphabet, terms));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let mut terms = vec![(word2(at(j, i), at(k, i)), 1)];
                if j == k {
                    terms.push((word1(at(j, i)), -1));
                }
                rels.push(poly(alphabet, terms));
            }
        }
    }
    for i in 1..=n {
        let mut row = vec![(Word::empty(), -1)];
        let mut col = vec![(Word::empty(), -1)];
        for l in 1..=n {
            row.push((word1(at(i, l)), 1));
            col.push((word1(at(l, i)), 1));
        }
        rels.push(poly(alphabet, row));
        rels.push(poly(alphabet, col));
    }
    rels
}

/// The standard Hopf structure on a magic grid: matrix comultiplication,
/// Kronecker counit, transpose antipode.
fn magic_hopf(
    alphabet: &Arc<Alphabet>,
    n: usize,
    at: &dyn Fn(usize, usize) -> SymbolId,
    hopf: &mut HopfData,
) {
    for i in 1..=n {
        for j in 1..=n {
            let id = at(i, j);
            let mut d = TensorPoly::zero(alphabet, 2);
            for k in 1..=n {
                d.add_term(vec![word1(at(i, k)), word1(at(k, j))], Coeff::one());
            }
            hopf.delta.insert(id.0, d);
            hopf.counit
                .insert(id.0, if i == j { Coeff::one() } else { Coeff::zero() });
            hopf.antipode
                .insert(id.0, NCPoly::from_word(alphabet, word1(at(j, i))));
        }
    }
}

/// The quantum permutation algebra on n points: an n x n grid of
/// self-adjoint generators forming a magic unitary.
pub fn magic_unitary(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("magic unitary needs n >= 1".into()));
    }
    let mut alphabet = Alphabet::new();
    for i in 1..=n {
        for j in 1..=n {
            alphabet.add(GenSymbol::new("x", &[i as u32, j as u32], true))?;
        }
    }
    let alphabet = Arc::new(alphabet);
    let at = move |i: usize, j: usize| SymbolId(((i - 1) * n + (j - 1)) as u32);
    let relations = magic_relations(&alphabet, n, &at);
    let mut hopf = HopfData::default();
    magic_hopf(&alphabet, n, &at, &mut hopf);
    Presentation::new(format!("magic({n})"), alphabet, relations, Some(hopf))
}

/// The group algebra of a finite group, with one generator per element and
/// group-like Hopf structure.
pub fn group_algebra(g: &GroupSpec) -> Result<Presentation> {
    let elements = g.elements().ok_or_else(|| {
        Error::InfiniteGroup(
            "group_algebra needs a finite group; for Z use the specialized grid presentation"
                .into(),
        )
    })?;
    let mut alphabet = Alphabet::new();
    for e in &elements {
        let selfadjoint = *e == g.inv(e)?;
        alphabet.add(GenSymbol::new("u", &[g.element_index(e)?], selfadjoint))?;
    }
    let alphabet = Arc::new(alphabet);
    let uid = |idx: u32| SymbolId(idx);

    let mut relations = Vec::new();
    let e_idx = g.element_index(&g.identity())?;
    relations.push(poly(
        &alphabet,
        vec![(word1(uid(e_idx)), 1), (Word::empty(), -1)],
    ));
    for a in &elements {
        for b in &elements {
            let (ai, bi) = (g.element_index(a)?, g.element_index(b)?);
            let ci = g.element_index(&g.mul(a, b)?)?;
            relations.push(poly(
                &alphabet,
                vec![(word2(uid(ai), uid(bi)), 1), (word1(uid(ci)), -1)],
            ));
        }
    }
    for e in &elements {
        let inv = g.inv(e)?;
        if *e != inv {
            let (i, j) = (g.element_index(e)?, g.element_index(&inv)?);
            relations.push(poly(
                &alphabet,
                vec![(word1_star(uid(i)), 1), (word1(uid(j)), -1)],
            ));
        }
    }

    let mut hopf = HopfData::default();
    for e in &elements {
        let i = g.element_index(e)?;
        let mut d = TensorPoly::zero(&alphabet, 2);
        d.add_term(vec![word1(uid(i)), word1(uid(i))], Coeff::one());
        hopf.delta.insert(i, d);
        hopf.counit.insert(i, Coeff::one());
        let j = g.element_index(&g.inv(e)?)?;
        hopf.antipode
            .insert(i, NCPoly::from_word(&alphabet, word1(uid(j))));
    }
    Presentation::new(
        format!("group_algebra({})", g.describe()),
        alphabet,
        relations,
        Some(hopf),
    )
}

/// Free wreath product of a presented Hopf algebra by the quantum
/// permutation algebra on n points: n leg-tagged copies of the input, a
/// magic unitary block, and commutators making each copy commute with its
/// row of the block.
pub fn free_wreath(a: &Presentation, n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("free wreath product needs n >= 1".into()));
    }
    let hopf_a = a.hopf_data()?;
    let base = a.alphabet.len() as u32;
    let mut alphabet = Alphabet::new();
    for k in 1..=n {
        for sym in a.alphabet.symbols() {
            alphabet.add(GenSymbol::new(
                &format!("{}{}", sym.name, k),
                &sym.indices,
                sym.selfadjoint,
            ))?;
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            alphabet.add(GenSymbol::new("x", &[i as u32, j as u32], true))?;
        }
    }
    let alphabet = Arc::new(alphabet);
    let tag = move |k: usize, id: SymbolId| SymbolId((k as u32 - 1) * base + id.0);
    let x = move |i: usize, j: usize| SymbolId(n as u32 * base + ((i - 1) * n + (j - 1)) as u32);
    let tag_word = |w: &Word, k: usize| -> Word {
        Word(
            w.0.iter()
                .map(|l| Letter::new(tag(k, l.id()), l.starred()))
                .collect(),
        )
    };

    let mut relations = Vec::new();
    for k in 1..=n {
        for r in &a.relations {
            relations.push(r.remap(&alphabet, &|id| tag(k, id)));
        }
    }
    relations.extend(magic_relations(&alphabet, n, &x));
    for k in 1..=n {
        for gid in a.alphabet.ids() {
            for i in 1..=n {
                let nu = Letter::new(tag(k, gid), false);
                let xk = Letter::new(x(k, i), false);
                relations.push(poly(
                    &alphabet,
                    vec![(Word(vec![nu, xk]), 1), (Word(vec![xk, nu]), -1)],
                ));
            }
        }
    }

    let mut hopf = HopfData::default();
    for k in 1..=n {
        for gid in a.alphabet.ids() {
            let wid = tag(k, gid);
            let mut d = TensorPoly::zero(&alphabet, 2);
            for (legs, c) in hopf_a.delta[&gid.0].terms() {
                for kp in 1..=n {
                    let left = tag_word(&legs[0], k).concat(&word1(x(k, kp)));
                    let right = tag_word(&legs[1], kp);
                    d.add_term(vec![left, right], c.clone());
                }
            }
            hopf.delta.insert(wid.0, d);
            hopf.counit.insert(wid.0, hopf_a.counit[&gid.0].clone());
            let mut s = NCPoly::zero(&alphabet);
            for (w, c) in hopf_a.antipode[&gid.0].terms() {
                for kp in 1..=n {
                    s.add_term(tag_word(w, kp).concat(&word1(x(kp, k))), c.clone());
                }
            }
            hopf.antipode.insert(wid.0, s);
        }
    }
    magic_hopf(&alphabet, n, &x, &mut hopf);
    Presentation::new(
        format!("wreath({}, {n})", a.label),
        alphabet,
        relations,
        Some(hopf),
    )
}

/// Which presentation of the grid algebra over a group to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnGVariant {
    /// Element-indexed generators a(i,j,g) for a finite group.
    Finite,
    /// One generator a(i,j) per cell; only for cyclic groups (finite or Z).
    Specialized,
}

/// The universal algebra A_n(G) generated by an n x n grid of partial
/// symmetries twisted by a group G.
pub fn a_n_g(g: &GroupSpec, n: usize, variant: AnGVariant) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("grid presentation needs n >= 1".into()));
    }
    match variant {
        AnGVariant::Finite => a_n_g_finite(g, n),
        AnGVariant::Specialized => match g {
            GroupSpec::Cyclic(p) => a_n_g_cyclic(*p, n),
            GroupSpec::InfiniteCyclic => a_n_g_z(n),
            GroupSpec::Table(_) => Err(Error::Invalid(
                "the specialized presentation needs a cyclic group".into(),
            )),
        },
    }
}

fn a_n_g_finite(g: &GroupSpec, n: usize) -> Result<Presentation> {
    let elements = g.elements().ok_or_else(|| {
        Error::InfiniteGroup("element-indexed presentation needs a finite group".into())
    })?;
    let m = elements.len() as u32;
    let mut alphabet = Alphabet::new();
    for i in 1..=n {
        for j in 1..=n {
            for e in &elements {
                let selfadjoint = *e == g.inv(e)?;
                alphabet.add(GenSymbol::new(
                    "a",
                    &[i as u32, j as u32, g.element_index(e)?],
                    selfadjoint,
                ))?;
            }
        }
    }
    let alphabet = Arc::new(alphabet);
    let at = move |i: usize, j: usize, gi: u32| {
        SymbolId(((i as u32 - 1) * n as u32 + (j as u32 - 1)) * m + gi)
    };

    let mut relations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for a in &elements {
                    for b in &elements {
                        let (ai, bi) = (g.element_index(a)?, g.element_index(b)?);
                        let ci = g.element_index(&g.mul(a, b)?)?;
                        let mut row = vec![(word2(at(i, j, ai), at(i, k, bi)), 1)];
                        if j == k {
                            row.push((word1(at(i, j, ci)), -1));
                        }
                        relations.push(poly(&alphabet, row));
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for a in &elements {
                    for b in &elements {
                        let (ai, bi) = (g.element_index(a)?, g.element_index(b)?);
                        let ci = g.element_index(&g.mul(a, b)?)?;
                        let mut col = vec![(word2(at(j, i, ai), at(k, i, bi)), 1)];
                        if j == k {
                            col.push((word1(at(j, i, ci)), -1));
                        }
                        relations.push(poly(&alphabet, col));
                    }
                }
            }
        }
    }
    let e_idx = g.element_index(&g.identity())?;
    for i in 1..=n {
        let mut row = vec![(Word::empty(), -1)];
        let mut col = vec![(Word::empty(), -1)];
        for l in 1..=n {
            row.push((word1(at(i, l, e_idx)), 1));
            col.push((word1(at(l, i, e_idx)), 1));
        }
        relations.push(poly(&alphabet, row));
        relations.push(poly(&alphabet, col));
    }
    for i in 1..=n {
        for j in 1..=n {
            for e in &elements {
                let inv = g.inv(e)?;
                if *e != inv {
                    let (gi, hi) = (g.element_index(e)?, g.element_index(&inv)?);
                    relations.push(poly(
                        &alphabet,
                        vec![(word1_star(at(i, j, gi)), 1), (word1(at(i, j, hi)), -1)],
                    ));
                }
            }
        }
    }

    let mut hopf = HopfData::default();
    for i in 1..=n {
        for j in 1..=n {
            for e in &elements {
                let gi = g.element_index(e)?;
                let id = at(i, j, gi);
                let mut d = TensorPoly::zero(&alphabet, 2);
                for k in 1..=n {
                    d.add_term(vec![word1(at(i, k, gi)), word1(at(k, j, gi))], Coeff::one());
                }
                hopf.delta.insert(id.0, d);
                hopf.counit
                    .insert(id.0, if i == j { Coeff::one() } else { Coeff::zero() });
                let inv_idx = g.element_index(&g.inv(e)?)?;
                hopf.antipode
                    .insert(id.0, NCPoly::from_word(&alphabet, word1(at(j, i, inv_idx))));
            }
        }
    }
    Presentation::new(
        format!("a_n_G({}, {n})", g.describe()),
        alphabet,
        relations,
        Some(hopf),
    )
}

fn a_n_g_cyclic(p: u32, n: usize) -> Result<Presentation> {
    if p < 2 {
        return Err(Error::Invalid(
            "specialized cyclic presentation needs order >= 2".into(),
        ));
    }
    let p = p as usize;
    let mut alphabet = Alphabet::new();
    for i in 1..=n {
        for j in 1..=n {
            alphabet.add(GenSymbol::new("a", &[i as u32, j as u32], p == 2))?;
        }
    }
    let alphabet = Arc::new(alphabet);
    let at = move |i: usize, j: usize| SymbolId(((i - 1) * n + (j - 1)) as u32);

    let mut relations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if j != k {
                    relations.push(poly(&alphabet, vec![(word2(at(i, j), at(i, k)), 1)]));
                    relations.push(poly(&alphabet, vec![(word2(at(j, i), at(k, i)), 1)]));
                }
            }
        }
    }
    for i in 1..=n {
        let mut row = vec![(Word::empty(), -1)];
        let mut col = vec![(Word::empty(), -1)];
        for l in 1..=n {
            row.push((word_pow(at(i, l), p), 1));
            col.push((word_pow(at(l, i), p), 1));
        }
        relations.push(poly(&alphabet, row));
        relations.push(poly(&alphabet, col));
    }
    if p > 2 {
        for i in 1..=n {
            for j in 1..=n {
                relations.push(poly(
                    &alphabet,
                    vec![(word1_star(at(i, j)), 1), (word_pow(at(i, j), p - 1), -1)],
                ));
            }
        }
    }

    let mut hopf = HopfData::default();
    for i in 1..=n {
        for j in 1..=n {
            let id = at(i, j);
            let mut d = TensorPoly::zero(&alphabet, 2);
            for k in 1..=n {
                d.add_term(vec![word1(at(i, k)), word1(at(k, j))], Coeff::one());
            }
            hopf.delta.insert(id.0, d);
            hopf.counit
                .insert(id.0, if i == j { Coeff::one() } else { Coeff::zero() });
            hopf.antipode.insert(
                id.0,
                NCPoly::from_word(&alphabet, word_pow(at(j, i), p - 1)),
            );
        }
    }
    Presentation::new(
        format!("a_n_G(Z/{p}, {n})"),
        alphabet,
        relations,
        Some(hopf),
    )
}

fn a_n_g_z(n: usize) -> Result<Presentation> {
    let mut alphabet = Alphabet::new();
    for i in 1..=n {
        for j in 1..=n {
            alphabet.add(GenSymbol::new("a", &[i as u32, j as u32], false))?;
        }
    }
    let alphabet = Arc::new(alphabet);
    let at = move |i: usize, j: usize| SymbolId(((i - 1) * n + (j - 1)) as u32);
    let lw = |id: SymbolId, s1: bool, id2: SymbolId, s2: bool| {
        Word(vec![Letter::new(id, s1), Letter::new(id2, s2)])
    };

    let mut relations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if j == k {
                    continue;
                }
                for (s1, s2) in [(false, false), (false, true), (true, false), (true, true)] {
                    relations.push(poly(&alphabet, vec![(lw(at(i, j), s1, at(i, k), s2), 1)]));
                    relations.push(poly(&alphabet, vec![(lw(at(j, i), s1, at(k, i), s2), 1)]));
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            relations.push(poly(
                &alphabet,
                vec![
                    (lw(at(i, j), true, at(i, j), false), 1),
                    (lw(at(i, j), false, at(i, j), true), -1),
                ],
            ));
        }
    }
    for i in 1..=n {
        let mut row = vec![(Word::empty(), -1)];
        let mut col = vec![(Word::empty(), -1)];
        for l in 1..=n {
            row.push((lw(at(i, l), true, at(i, l), false), 1));
            col.push((lw(at(l, i), true, at(l, i), false), 1));
        }
        relations.push(poly(&alphabet, row));
        relations.push(poly(&alphabet, col));
    }

    let mut hopf = HopfData::default();
    for i in 1..=n {
        for j in 1..=n {
            let id = at(i, j);
            let mut d = TensorPoly::zero(&alphabet, 2);
            for k in 1..=n {
                d.add_term(vec![word1(at(i, k)), word1(at(k, j))], Coeff::one());
            }
            hopf.delta.insert(id.0, d);
            hopf.counit
                .insert(id.0, if i == j { Coeff::one() } else { Coeff::zero() });
            hopf.antipode
                .insert(id.0, NCPoly::from_word(&alphabet, word1_star(at(j, i))));
        }
    }
    Presentation::new(format!("a_n_G(Z, {n})"), alphabet, relations, Some(hopf))
}

/// Which sum relations close off a graph symmetry presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphVariant {
    /// Edge-indexed quadratic sums.
    Standard,
    /// Linear row/column exchange sums.
    Prime,
}

/// The quantum symmetry presentation of a finite graph: a magic unitary
/// indexed by vertices, annihilation across edge/non-edge pairs, commutation
/// along edge pairs, and one of the two sum families.
pub fn graph_aut(g: &Graph, variant: GraphVariant) -> Result<Presentation> {
    let tag = match variant {
        GraphVariant::Standard => "standard",
        GraphVariant::Prime => "prime",
    };
    graph_aut_impl(
        g,
        variant == GraphVariant::Standard,
        variant == GraphVariant::Prime,
        tag,
    )
}

/// Both sum families at once. Generates the same ideal as either variant but
/// completes faster; used internally when verifying the wreath decomposition.
pub fn graph_aut_combined(g: &Graph) -> Result<Presentation> {
    graph_aut_impl(g, true, true, "combined")
}

fn graph_aut_impl(
    g: &Graph,
    standard_sums: bool,
    prime_sums: bool,
    tag: &str,
) -> Result<Presentation> {
    let m = g.vertex_count();
    let mut alphabet = Alphabet::new();
    for i in 1..=m {
        for j in 1..=m {
            alphabet.add(GenSymbol::new("X", &[i as u32, j as u32], true))?;
        }
    }
    let alphabet = Arc::new(alphabet);
    let at = move |i: usize, j: usize| SymbolId(((i - 1) * m + (j - 1)) as u32);

    let mut relations = magic_relations(&alphabet, m, &at);
    for (a, b) in g.edges() {
        for i in 1..=m {
            for k in 1..=m {
                if g.has_edge(i, k) {
                    continue;
                }
                for (u, v) in [
                    (at(a, i), at(b, k)),
                    (at(b, k), at(a, i)),
                    (at(i, a), at(k, b)),
                    (at(k, b), at(i, a)),
                ] {
                    relations.push(poly(&alphabet, vec![(word2(u, v), 1)]));
                }
            }
        }
    }
    for (a, b) in g.edges() {
        for (ap, bp) in g.edges() {
            let (u, v) = (at(a, ap), at(b, bp));
            if u != v {
                relations.push(poly(&alphabet, vec![(word2(u, v), 1), (word2(v, u), -1)]));
            }
        }
    }
    if standard_sums {
        for (a, b) in g.edges() {
            let mut inbound = vec![(Word::empty(), -1)];
            let mut outbound = vec![(Word::empty(), -1)];
            for (ap, bp) in g.edges() {
                inbound.push((word2(at(ap, a), at(bp, b)), 1));
                outbound.push((word2(at(a, ap), at(b, bp)), 1));
            }
            relations.push(poly(&alphabet, inbound));
            relations.push(poly(&alphabet, outbound));
        }
    }
    if prime_sums {
        for i in 1..=m {
            for j in 1..=m {
                let mut rows = Vec::new();
                let mut cols = Vec::new();
                for k in 1..=m {
                    if g.has_edge(k, j) {
                        rows.push((word1(at(i, k)), 1));
                        cols.push((word1(at(k, i)), 1));
                    }
                    if g.has_edge(i, k) {
                        rows.push((word1(at(k, j)), -1));
                        cols.push((word1(at(j, k)), -1));
                    }
                }
                relations.push(poly(&alphabet, rows));
                relations.push(poly(&alphabet, cols));
            }
        }
    }

    let mut hopf = HopfData::default();
    magic_hopf(&alphabet, m, &at, &mut hopf);
    Presentation::new(
        format!("graph_aut(m={m}, e={}, {tag})", g.edge_count()),
        alphabet,
        relations,
        Some(hopf),
    )
}

/// Free product of two presentations: disjoint union of generators and
/// relations, Hopf data preserved blockwise when both sides carry it.
pub fn free_product_pres(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    let mut alphabet = Alphabet::new();
    for s in p1.alphabet.symbols() {
        alphabet.add(s.clone())?;
    }
    for s in p2.alphabet.symbols() {
        alphabet.add(s.clone())?;
    }
    let alphabet = Arc::new(alphabet);
    let off = p1.alphabet.len() as u32;
    let keep = |id: SymbolId| id;
    let shift = move |id: SymbolId| SymbolId(id.0 + off);

    let mut relations: Vec<NCPoly> = Vec::new();
    relations.extend(p1.relations.iter().map(|r| r.remap(&alphabet, &keep)));
    relations.extend(p2.relations.iter().map(|r| r.remap(&alphabet, &shift)));

    let hopf = match (&p1.hopf, &p2.hopf) {
        (Some(h1), Some(h2)) => {
            let mut h = HopfData::default();
            for (gid, d) in &h1.delta {
                h.delta.insert(*gid, d.remap(&alphabet, &keep));
            }
            for (gid, c) in &h1.counit {
                h.counit.insert(*gid, c.clone());
            }
            for (gid, s) in &h1.antipode {
                h.antipode.insert(*gid, s.remap(&alphabet, &keep));
            }
            for (gid, d) in &h2.delta {
                h.delta.insert(gid + off, d.remap(&alphabet, &shift));
            }
            for (gid, c) in &h2.counit {
                h.counit.insert(gid + off, c.clone());
            }
            for (gid, s) in &h2.antipode {
                h.antipode.insert(gid + off, s.remap(&alphabet, &shift));
            }
            Some(h)
        }
        _ => None,
    };
    Presentation::new(
        format!("free_product({}, {})", p1.label, p2.label),
        alphabet,
        relations,
        hopf,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorDoc {
    pub name: String,
    pub indices: Vec<u32>,
    pub selfadjoint: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HopfDoc {
    pub delta: BTreeMap<String, String>,
    pub counit: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, String>,
}

/// Serialization form of a presentation; every polynomial is stored in its
/// canonical rendering so round trips are bit-exact.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationDoc {
    pub label: String,
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfDoc>,
}

fn parse_symbol_key(alphabet: &Arc<Alphabet>, key: &str) -> Result<SymbolId> {
    let p = NCPoly::parse(alphabet, key)?;
    if let Some((w, c)) = p.leading() {
        if p.num_terms() == 1 && w.len() == 1 && !w.0[0].starred() && c.is_one() {
            return Ok(w.0[0].id());
        }
    }
    Err(Error::Parse(format!("not a generator key: {key:?}")))
}

impl Presentation {
    pub fn to_doc(&self) -> PresentationDoc {
        let generators = self
            .alphabet
            .symbols()
            .iter()
            .map(|s| GeneratorDoc {
                name: s.name.clone(),
                indices: s.indices.clone(),
                selfadjoint: s.selfadjoint,
            })
            .collect();
        let relations = self.relations.iter().map(|r| r.render()).collect();
        let hopf = self.hopf.as_ref().map(|h| {
            let key = |gid: &u32| self.alphabet.get(SymbolId(*gid)).render();
            HopfDoc {
                delta: h.delta.iter().map(|(g, d)| (key(g), d.render())).collect(),
                counit: h
                    .counit
                    .iter()
                    .map(|(g, c)| (key(g), c.to_string()))
                    .collect(),
                antipode: h
                    .antipode
                    .iter()
                    .map(|(g, s)| (key(g), s.render()))
                    .collect(),
            }
        });
        PresentationDoc {
            label: self.label.clone(),
            generators,
            relations,
            hopf,
        }
    }

    pub fn from_doc(doc: &PresentationDoc) -> Result<Presentation> {
        let mut alphabet = Alphabet::new();
        for g in &doc.generators {
            alphabet.add(GenSymbol::new(&g.name, &g.indices, g.selfadjoint))?;
        }
        let alphabet = Arc::new(alphabet);
        let mut relations = Vec::new();
        for r in &doc.relations {
            relations.push(NCPoly::parse(&alphabet, r)?);
        }
        let hopf = match &doc.hopf {
            None => None,
            Some(h) => {
                let mut data = HopfData::default();
                for (k, v) in &h.delta {
                    let id = parse_symbol_key(&alphabet, k)?;
                    data.delta.insert(id.0, TensorPoly::parse(&alphabet, 2, v)?);
                }
                for (k, v) in &h.counit {
                    let id = parse_symbol_key(&alphabet, k)?;
                    let c = Coeff::from_str(v)
                        .map_err(|e| Error::Parse(format!("bad counit value {v:?}: {e}")))?;
                    data.counit.insert(id.0, c);
                }
                for (k, v) in &h.antipode {
                    let id = parse_symbol_key(&alphabet, k)?;
                    data.antipode.insert(id.0, NCPoly::parse(&alphabet, v)?);
                }
                Some(data)
            }
        };
        Presentation::new(doc.label.clone(), alphabet, relations, hopf)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("presentation doc serializes")
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Presentation::from_doc(&doc)
    }
}
