//! Groups and reduced words in the free product G * G.
//!
//! A word alternates letters from two copies ("legs") of the same group G.
//! Reduced form: no identity letters, and adjacent letters always come from
//! different legs (same-leg neighbours are merged by multiplying in G).
//! The swap `tau` exchanges the two legs; it is the order-two automorphism
//! of G * G that the fusion theory is built on.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Finite group given by its multiplication table.
///
/// Validation is O(m^3): closure, identity, inverses, associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Builds and validates a table group. `table[a][b]` is the index of a*b.
    pub fn new(name: &str, names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::InvalidGroupTable("empty element list".into()));
        }
        if table.len() != m || table.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidGroupTable(format!(
                "table must be {m}x{m} to match the element list"
            )));
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &ab) in row.iter().enumerate() {
                if ab >= m {
                    return Err(Error::InvalidGroupTable(format!(
                        "entry ({a},{b}) = {ab} out of range"
                    )));
                }
            }
        }
        let identity = (0..m).find(|&e| (0..m).all(|a| table[e][a] == a && table[a][e] == a));
        let identity =
            identity.ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; m];
        for a in 0..m {
            match (0..m).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::InvalidGroupTable(format!(
                        "element {} has no inverse",
                        names[a]
                    )))
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            name: name.to_string(),
            names,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }
}

/// A group usable as the base of a free product: cyclic Z/p, infinite
/// cyclic Z, or an explicit finite multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    InfiniteCyclic,
    Table(Arc<GroupTable>),
}

/// An element of a `GroupSpec`: a residue, an integer exponent, or a table index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Cyclic(u32),
    Int(i64),
    Index(usize),
}

/// Key giving the canonical total order on elements of one group.
/// Integers are interleaved (0, -1, 1, -2, 2, ...) so the order is total.
fn element_key(e: &GroupElement) -> u64 {
    match e {
        GroupElement::Cyclic(r) => *r as u64,
        GroupElement::Index(i) => *i as u64,
        GroupElement::Int(n) => {
            if *n >= 0 {
                (*n as u64) << 1
            } else {
                (((-(n + 1)) as u64) << 1) | 1
            }
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        element_key(self).cmp(&element_key(other))
    }
}

impl GroupSpec {
    pub fn cyclic(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::Invalid("cyclic group order must be positive".into()));
        }
        Ok(GroupSpec::Cyclic(p))
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Cyclic(_) => GroupElement::Cyclic(0),
            GroupSpec::InfiniteCyclic => GroupElement::Int(0),
            GroupSpec::Table(t) => GroupElement::Index(t.identity),
        }
    }

    pub fn is_identity(&self, e: &GroupElement) -> bool {
        *e == self.identity()
    }

    fn check(&self, e: &GroupElement) -> Result<()> {
        let ok = match (self, e) {
            (GroupSpec::Cyclic(p), GroupElement::Cyclic(r)) => r < p,
            (GroupSpec::InfiniteCyclic, GroupElement::Int(_)) => true,
            (GroupSpec::Table(t), GroupElement::Index(i)) => *i < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadElement(format!("{e:?}")))
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (GroupSpec::Cyclic(p), GroupElement::Cyclic(x), GroupElement::Cyclic(y)) => {
                GroupElement::Cyclic((x + y) % p)
            }
            (GroupSpec::InfiniteCyclic, GroupElement::Int(x), GroupElement::Int(y)) => {
                GroupElement::Int(x + y)
            }
            (GroupSpec::Table(t), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(t.table[*x][*y])
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupSpec::Cyclic(p), GroupElement::Cyclic(x)) => GroupElement::Cyclic((p - x) % p),
            (GroupSpec::InfiniteCyclic, GroupElement::Int(x)) => GroupElement::Int(-x),
            (GroupSpec::Table(t), GroupElement::Index(x)) => GroupElement::Index(t.inverse[*x]),
            _ => unreachable!(),
        })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(p) => Some(*p as usize),
            GroupSpec::InfiniteCyclic => None,
            GroupSpec::Table(t) => Some(t.order()),
        }
    }

    /// All elements in canonical order; `None` for the infinite cyclic group.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupSpec::Cyclic(p) => Some((0..*p).map(GroupElement::Cyclic).collect()),
            GroupSpec::InfiniteCyclic => None,
            GroupSpec::Table(t) => Some((0..t.order()).map(GroupElement::Index).collect()),
        }
    }

    /// Non-identity elements in canonical order; `None` for Z.
    pub fn nontrivial_elements(&self) -> Option<Vec<GroupElement>> {
        let id = self.identity();
        self.elements()
            .map(|v| v.into_iter().filter(|e| *e != id).collect())
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSpec::Cyclic(p) => format!("Z/{p}"),
            GroupSpec::InfiniteCyclic => "Z".to_string(),
            GroupSpec::Table(t) => t.name.clone(),
        }
    }

    pub fn element_name(&self, e: &GroupElement) -> String {
        match (self, e) {
            (GroupSpec::Table(t), GroupElement::Index(i)) => t.names[*i].clone(),
            (_, GroupElement::Cyclic(r)) => r.to_string(),
            (_, GroupElement::Int(n)) => n.to_string(),
            _ => format!("{e:?}"),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        match self {
            GroupSpec::Cyclic(p) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                Ok(GroupElement::Cyclic(n.rem_euclid(*p as i64) as u32))
            }
            GroupSpec::InfiniteCyclic => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))?;
                Ok(GroupElement::Int(n))
            }
            GroupSpec::Table(t) => t
                .names
                .iter()
                .position(|n| n == s)
                .map(GroupElement::Index)
                .ok_or_else(|| Error::Parse(format!("unknown element {s:?}"))),
        }
    }

    /// Integer index used by generator naming (residue or table index).
    /// Errors for Z, whose elements cannot index a finite generating set.
    pub fn element_index(&self, e: &GroupElement) -> Result<u32> {
        self.check(e)?;
        match e {
            GroupElement::Cyclic(r) => Ok(*r),
            GroupElement::Index(i) => Ok(*i as u32),
            GroupElement::Int(_) => Err(Error::InfiniteGroup("Z".into())),
        }
    }

    pub fn element_from_index(&self, idx: u32) -> Result<GroupElement> {
        let e = match self {
            GroupSpec::Cyclic(_) => GroupElement::Cyclic(idx),
            GroupSpec::Table(_) => GroupElement::Index(idx as usize),
            GroupSpec::InfiniteCyclic => return Err(Error::InfiniteGroup("Z".into())),
        };
        self.check(&e)?;
        Ok(e)
    }
}

/// Reduced word in the free product G * G.
///
/// Letters are (leg, element) pairs with leg 1 or 2; reduced form is kept
/// as an invariant by every constructor and operation.
#[derive(Debug, Clone)]
pub struct FreeProductWord {
    group: GroupSpec,
    letters: Vec<(u8, GroupElement)>,
}

impl PartialEq for FreeProductWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for FreeProductWord {}

impl std::hash::Hash for FreeProductWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for FreeProductWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by length, then lexicographically on (leg, element) pairs.
impl Ord for FreeProductWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            for (a, b) in self.letters.iter().zip(&other.letters) {
                let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl FreeProductWord {
    pub fn empty(group: &GroupSpec) -> Self {
        FreeProductWord {
            group: group.clone(),
            letters: Vec::new(),
        }
    }

    /// Single-letter word nu_leg(e); the identity element gives the empty word.
    pub fn letter(group: &GroupSpec, leg: u8, e: GroupElement) -> Result<Self> {
        if leg != 1 && leg != 2 {
            return Err(Error::BadLeg(leg));
        }
        group.check(&e)?;
        let mut w = FreeProductWord::empty(group);
        if !group.is_identity(&e) {
            w.letters.push((leg, e));
        }
        Ok(w)
    }

    /// Builds a word from an arbitrary letter sequence, reducing as it goes.
    pub fn from_letters<I>(group: &GroupSpec, seq: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u8, GroupElement)>,
    {
        let mut w = FreeProductWord::empty(group);
        for (leg, e) in seq {
            w = w.mul(&FreeProductWord::letter(group, leg, e)?)?;
        }
        Ok(w)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn letters(&self) -> &[(u8, GroupElement)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product in G * G, merging and cancelling at the seam.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut letters = self.letters.clone();
        for &(leg, e) in &other.letters {
            match letters.last() {
                Some(&(last_leg, last_e)) if last_leg == leg => {
                    let merged = self.group.mul(&last_e, &e)?;
                    letters.pop();
                    if !self.group.is_identity(&merged) {
                        letters.push((leg, merged));
                    }
                }
                _ => letters.push((leg, e)),
            }
        }
        Ok(FreeProductWord {
            group: self.group.clone(),
            letters,
        })
    }

    pub fn inv(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|(leg, e)| (*leg, self.group.inv(e).expect("element belongs to group")))
            .collect();
        FreeProductWord {
            group: self.group.clone(),
            letters,
        }
    }

    /// The leg-swap automorphism of G * G.
    pub fn tau(&self) -> Self {
        let letters = self.letters.iter().map(|&(leg, e)| (3 - leg, e)).collect();
        FreeProductWord {
            group: self.group.clone(),
            letters,
        }
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = FreeProductWord::empty(&self.group);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Parses the `1:g 2:h` syntax; `e` (or the empty string) is the empty word.
    pub fn parse(group: &GroupSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(FreeProductWord::empty(group));
        }
        let mut seq = Vec::new();
        for tok in s.split_whitespace() {
            let (leg_s, elem_s) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad letter {tok:?}, expected leg:element")))?;
            let leg: u8 = leg_s
                .parse()
                .map_err(|_| Error::Parse(format!("bad leg in {tok:?}")))?;
            if leg != 1 && leg != 2 {
                return Err(Error::BadLeg(leg));
            }
            let e = group.parse_element(elem_s)?;
            seq.push((leg, e));
        }
        FreeProductWord::from_letters(group, seq)
    }

    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        self.letters
            .iter()
            .map(|(leg, e)| format!("{leg}:{}", self.group.element_name(e)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All reduced words of length at most `max_len`, in canonical order.
/// Requires a finite group.
pub fn enumerate_words(group: &GroupSpec, max_len: usize) -> Result<Vec<FreeProductWord>> {
    let gens = group
        .nontrivial_elements()
        .ok_or_else(|| Error::InfiniteGroup(group.describe()))?;
    let mut out = vec![FreeProductWord::empty(group)];
    let mut layer: Vec<FreeProductWord> = vec![FreeProductWord::empty(group)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            let last_leg = w.letters.last().map(|(l, _)| *l);
            for leg in [1u8, 2] {
                if Some(leg) == last_leg {
                    continue;
                }
                for e in &gens {
                    let mut ext = w.clone();
                    ext.letters.push((leg, *e));
                    next.push(ext);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32) -> GroupSpec {
        GroupSpec::cyclic(p).unwrap()
    }

    fn w(group: &GroupSpec, s: &str) -> FreeProductWord {
        FreeProductWord::parse(group, s).unwrap()
    }

    #[test]
    fn table_group_validation() {
        // Z/2 as a table
        let t = GroupTable::new(
            "C2",
            vec!["e".into(), "g".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(t.order(), 2);

        // broken associativity: left cancellation fails
        let bad = GroupTable::new(
            "bad",
            vec!["e".into(), "a".into(), "b".into()],
            vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn mul_reduces_at_seam() {
        let g = z(3);
        let a = w(&g, "1:1 2:1");
        let b = w(&g, "2:2 1:1");
        // 2:1 and 2:2 merge to identity, then 1:1 and 1:1 merge to 1:2
        assert_eq!(a.mul(&b).unwrap(), w(&g, "1:2"));
    }

    #[test]
    fn cascading_cancellation() {
        let g = z(2);
        let a = w(&g, "1:1 2:1 1:1");
        assert_eq!(a.mul(&a.inv()).unwrap(), FreeProductWord::empty(&g));
        assert_eq!(a.inv().mul(&a).unwrap(), FreeProductWord::empty(&g));
    }

    #[test]
    fn identity_letters_vanish() {
        let g = z(3);
        let e = FreeProductWord::letter(&g, 1, GroupElement::Cyclic(0)).unwrap();
        assert!(e.is_empty());
        assert_eq!(w(&g, "1:0 2:1 1:0"), w(&g, "2:1"));
    }

    #[test]
    fn tau_is_an_involutive_homomorphism() {
        let g = z(3);
        for a in enumerate_words(&g, 3).unwrap() {
            assert_eq!(a.tau().tau(), a);
            for b in enumerate_words(&g, 2).unwrap() {
                assert_eq!(a.tau().mul(&b.tau()).unwrap(), a.mul(&b).unwrap().tau());
            }
        }
    }

    #[test]
    fn tau_fixes_only_the_unit() {
        for p in [2u32, 3] {
            let g = z(p);
            for a in enumerate_words(&g, 4).unwrap() {
                assert_eq!(a.tau() == a, a.is_empty(), "word {a}");
            }
        }
    }

    #[test]
    fn length_subadditive() {
        let g = z(3);
        let words = enumerate_words(&g, 3).unwrap();
        for a in &words {
            for b in &words {
                let ab = a.mul(b).unwrap();
                assert!(ab.len() <= a.len() + b.len());
            }
        }
    }

    #[test]
    fn z2_words_of_equal_length_are_tau_related() {
        // over Z/2 there are exactly two reduced words of each positive
        // length, swapped by tau
        let g = z(2);
        let words = enumerate_words(&g, 6).unwrap();
        for a in &words {
            for b in &words {
                if a.len() == b.len() {
                    assert!(*a == *b || *a == b.tau(), "{a} vs {b}");
                } else {
                    assert!(*a != *b && *a != b.tau());
                }
            }
        }
    }

    #[test]
    fn word_count_over_z3() {
        // 2 * 2^L words of each length L >= 1, plus the empty word
        let g = z(3);
        let words = enumerate_words(&g, 3).unwrap();
        assert_eq!(words.len(), 1 + 4 + 8 + 16);
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let g = z(3);
        let e = FreeProductWord::empty(&g);
        assert!(e < w(&g, "1:1"));
        assert!(w(&g, "1:1") < w(&g, "1:2"));
        assert!(w(&g, "1:2") < w(&g, "2:1"));
        assert!(w(&g, "2:2") < w(&g, "1:1 2:1"));
    }

    #[test]
    fn parse_render_round_trip() {
        let g = z(3);
        for word in enumerate_words(&g, 3).unwrap() {
            assert_eq!(w(&g, &word.render()), word);
        }
        assert_eq!(FreeProductWord::parse(&g, "e").unwrap().render(), "e");
    }

    #[test]
    fn infinite_cyclic_words() {
        let g = GroupSpec::InfiniteCyclic;
        let a = w(&g, "1:2 2:-1 1:-2");
        assert_eq!(a.len(), 3);
        assert_eq!(a.inv().render(), "1:2 2:1 1:-2");
        assert!(enumerate_words(&g, 2).is_err());
    }

    #[test]
    fn group_mismatch_rejected() {
        let a = w(&z(2), "1:1");
        let b = w(&z(3), "1:1");
        assert_eq!(a.mul(&b), Err(Error::GroupMismatch));
    }
}
