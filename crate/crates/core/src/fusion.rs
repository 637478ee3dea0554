//! Fusion semiring of the two-point wreath product.
//!
//! Irreducibles are the trivial class, the one-dimensional sign class d,
//! and a two-dimensional class v_x for every nonempty reduced word x in
//! G*G, with v_x ≅ v_{τ(x)}. Tensor products decompose by a short case
//! analysis; every multiplicity produced here can be cross-checked against
//! the Haar-state pairing of characters in the concrete model, and
//! `cross_check_with_model` does exactly that.

use crate::error::{Error, Result};
use crate::groups::{enumerate_words, FreeProductWord, GroupSpec};
use crate::model2::{self, ModelElement};
use std::collections::BTreeMap;
use std::fmt;

/// Isomorphism class of an irreducible corepresentation. V words are kept
/// canonical: the smaller of the two τ-orbit representatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum IrrepLabel {
    Trivial,
    Sign,
    V(FreeProductWord),
}

impl IrrepLabel {
    /// Canonical label of the class of v_x. Fails on the empty word, which
    /// names no two-dimensional class.
    pub fn v(x: &FreeProductWord) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Invalid(
                "the empty word labels no two-dimensional class".into(),
            ));
        }
        let t = x.tau();
        Ok(IrrepLabel::V(if t < *x { t } else { x.clone() }))
    }

    pub fn dim(&self) -> u64 {
        match self {
            IrrepLabel::Trivial | IrrepLabel::Sign => 1,
            IrrepLabel::V(_) => 2,
        }
    }

    pub fn conjugate(&self) -> Self {
        match self {
            IrrepLabel::V(x) => IrrepLabel::v(&x.inv()).expect("nonempty word"),
            other => other.clone(),
        }
    }

    pub fn word(&self) -> Option<&FreeProductWord> {
        match self {
            IrrepLabel::V(x) => Some(x),
            _ => None,
        }
    }

    /// Word length of the class; 0 for the one-dimensional classes.
    pub fn word_len(&self) -> usize {
        self.word().map_or(0, FreeProductWord::len)
    }

    pub fn render(&self) -> String {
        match self {
            IrrepLabel::Trivial => "C".to_string(),
            IrrepLabel::Sign => "d".to_string(),
            IrrepLabel::V(x) => format!("v({x})"),
        }
    }

    /// Character of the class in the concrete model.
    pub fn character(&self, group: &GroupSpec) -> Result<ModelElement> {
        match self {
            IrrepLabel::Trivial => Ok(ModelElement::one(group)),
            IrrepLabel::Sign => Ok(ModelElement::sign(group)),
            IrrepLabel::V(x) => {
                if x.group() != group {
                    return Err(Error::GroupMismatch);
                }
                model2::character(x)
            }
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn canonical_label(x: &FreeProductWord) -> Result<IrrepLabel> {
    IrrepLabel::v(x)
}

/// Multiset of irreducible classes with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionSum {
    terms: BTreeMap<IrrepLabel, u64>,
}

impl FusionSum {
    pub fn empty() -> Self {
        FusionSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn of(labels: &[IrrepLabel]) -> Self {
        let mut s = FusionSum::empty();
        for l in labels {
            s.insert(l.clone(), 1);
        }
        s
    }

    pub fn insert(&mut self, label: IrrepLabel, mult: u64) {
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &IrrepLabel) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, u64)> {
        self.terms.iter().map(|(l, m)| (l, *m))
    }

    pub fn num_classes(&self) -> usize {
        self.terms.len()
    }

    /// Total dimension Σ multiplicity · dim.
    pub fn dim(&self) -> u64 {
        self.terms.iter().map(|(l, m)| l.dim() * m).sum()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(l, m)| {
                if *m == 1 {
                    l.render()
                } else {
                    format!("{m}·{}", l.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

impl fmt::Display for FusionSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Decomposes a ⊗ b into irreducible classes.
///
/// The one-dimensional classes act as expected (trivial is the unit, the
/// sign class squares to it and absorbs into V classes). For V classes the
/// dichotomy is: if b's orbit contains x⁻¹ the product contains the trivial
/// and sign classes plus v_{xτ(x)⁻¹}, otherwise it splits as
/// v_{xy} ⊕ v_{xτ(y)}.
pub fn tensor_decompose(a: &IrrepLabel, b: &IrrepLabel) -> Result<FusionSum> {
    use IrrepLabel::*;
    Ok(match (a, b) {
        (Trivial, other) | (other, Trivial) => FusionSum::of(std::slice::from_ref(other)),
        (Sign, Sign) => FusionSum::of(&[Trivial]),
        (Sign, V(x)) | (V(x), Sign) => FusionSum::of(&[IrrepLabel::v(x)?]),
        (V(x), V(y)) => {
            if a.conjugate() == *b {
                let w = x.mul(&x.tau().inv())?;
                FusionSum::of(&[Trivial, Sign, IrrepLabel::v(&w)?])
            } else {
                let p = x.mul(y)?;
                let q = x.mul(&y.tau())?;
                FusionSum::of(&[IrrepLabel::v(&p)?, IrrepLabel::v(&q)?])
            }
        }
    })
}

/// Extends the decomposition bilinearly to sums; used for associativity.
pub fn tensor_sum(s: &FusionSum, t: &FusionSum) -> Result<FusionSum> {
    let mut out = FusionSum::empty();
    for (a, ma) in s.iter() {
        for (b, mb) in t.iter() {
            for (c, mc) in tensor_decompose(a, b)?.iter() {
                out.insert(c.clone(), ma * mb * mc);
            }
        }
    }
    Ok(out)
}

/// Every class with word length at most `max_len`, in canonical order.
pub fn all_labels(group: &GroupSpec, max_len: usize) -> Result<Vec<IrrepLabel>> {
    let mut out = vec![IrrepLabel::Trivial, IrrepLabel::Sign];
    for w in enumerate_words(group, max_len)? {
        if w.is_empty() {
            continue;
        }
        let label = IrrepLabel::v(&w)?;
        if label.word() == Some(&w) {
            out.push(label);
        }
    }
    Ok(out)
}

/// Outcome of the commutativity scan over bounded label pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commutativity {
    CommutativeUpTo {
        bound: usize,
    },
    Witness {
        a: IrrepLabel,
        b: IrrepLabel,
        ab: FusionSum,
        ba: FusionSum,
    },
}

impl Commutativity {
    pub fn is_commutative(&self) -> bool {
        matches!(self, Commutativity::CommutativeUpTo { .. })
    }

    pub fn render(&self) -> String {
        match self {
            Commutativity::CommutativeUpTo { bound } => {
                format!("commutative up to bound {bound}")
            }
            Commutativity::Witness { a, b, ab, ba } => {
                format!("witness: {a} ⊗ {b} = {ab} but {b} ⊗ {a} = {ba}")
            }
        }
    }
}

impl fmt::Display for Commutativity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Scans all label pairs with word length ≤ `max_len` and reports the first
/// pair whose products differ, if any.
pub fn commutativity_check(group: &GroupSpec, max_len: usize) -> Result<Commutativity> {
    let labels = all_labels(group, max_len)?;
    for a in &labels {
        for b in &labels {
            let ab = tensor_decompose(a, b)?;
            let ba = tensor_decompose(b, a)?;
            if ab != ba {
                return Ok(Commutativity::Witness {
                    a: a.clone(),
                    b: b.clone(),
                    ab,
                    ba,
                });
            }
        }
    }
    Ok(Commutativity::CommutativeUpTo { bound: max_len })
}

/// The alternative every word satisfies over Z/2 but not over larger
/// groups: either x² = 1 or x commutes with its swap τ(x).
pub fn dichotomy_holds(x: &FreeProductWord) -> Result<bool> {
    if x.pow(2)?.is_empty() {
        return Ok(true);
    }
    Ok(x.mul(&x.tau())? == x.tau().mul(x)?)
}

/// One line of the O(2) comparison table.
#[derive(Debug, Clone)]
pub struct O2Row {
    pub left: String,
    pub right: String,
    pub product: String,
    pub expected: String,
    pub matches: bool,
}

/// Comparison of the Z/2 fusion table against the O(2) rules, after
/// relabelling the two-dimensional class of word length i as v_i.
#[derive(Debug, Clone)]
pub struct O2Report {
    pub max_len: usize,
    pub rows: Vec<O2Row>,
}

impl O2Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// O(2) shadow of a class: v_0 is trivial, d is the determinant class, and
/// v_i (i ≥ 1) are the two-dimensional rotation classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum O2Label {
    V(usize),
    D,
}

impl O2Label {
    fn render(self) -> String {
        match self {
            O2Label::V(i) => format!("v{i}"),
            O2Label::D => "d".to_string(),
        }
    }

    /// Display order: v0, then d, then v1, v2, ...
    fn sort_key(self) -> (usize, usize) {
        match self {
            O2Label::V(0) => (0, 0),
            O2Label::D => (1, 0),
            O2Label::V(i) => (2, i),
        }
    }
}

fn o2_shadow(label: &IrrepLabel) -> O2Label {
    match label {
        IrrepLabel::Trivial => O2Label::V(0),
        IrrepLabel::Sign => O2Label::D,
        IrrepLabel::V(x) => O2Label::V(x.len()),
    }
}

fn o2_rules(a: O2Label, b: O2Label) -> Vec<O2Label> {
    use O2Label::*;
    match (a, b) {
        (V(0), other) | (other, V(0)) => vec![other],
        (D, D) => vec![V(0)],
        (D, V(i)) | (V(i), D) => vec![V(i)],
        (V(i), V(j)) if i == j => vec![V(0), D, V(2 * i)],
        (V(i), V(j)) => vec![V(i + j), V(i.abs_diff(j))],
    }
}

fn render_o2_multiset(labels: &mut [O2Label]) -> String {
    labels.sort_by_key(|l| l.sort_key());
    labels
        .iter()
        .map(|l| l.render())
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// Builds the fusion table over Z/2 through length `max_len` and checks it
/// against the O(2) rules. Only makes sense for a two-element group, where
/// word length determines the class.
pub fn o2_table(group: &GroupSpec, max_len: usize) -> Result<O2Report> {
    if group.order() != Some(2) {
        return Err(Error::Invalid(format!(
            "the O(2) comparison needs a two-element group, got {}",
            group.describe()
        )));
    }
    let labels = all_labels(group, max_len)?;
    // the relabelling is well defined only if each length names one class
    let mut seen = BTreeMap::new();
    for l in &labels {
        if let IrrepLabel::V(x) = l {
            if let Some(prev) = seen.insert(x.len(), l.clone()) {
                return Err(Error::Invalid(format!(
                    "length {} labels both {prev} and {l}",
                    x.len()
                )));
            }
        }
    }
    let mut rows = Vec::new();
    for a in &labels {
        for b in &labels {
            let product = tensor_decompose(a, b)?;
            let mut got = Vec::new();
            for (l, m) in product.iter() {
                for _ in 0..m {
                    got.push(o2_shadow(l));
                }
            }
            let mut expected = o2_rules(o2_shadow(a), o2_shadow(b));
            let matches = {
                let mut g = got.clone();
                let mut e = expected.clone();
                g.sort();
                e.sort();
                g == e
            };
            rows.push(O2Row {
                left: o2_shadow(a).render(),
                right: o2_shadow(b).render(),
                product: render_o2_multiset(&mut got),
                expected: render_o2_multiset(&mut expected),
                matches,
            });
        }
    }
    Ok(O2Report { max_len, rows })
}

/// Summary of an oracle sweep: how many pairs and candidate classes were
/// compared against the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleReport {
    pub pairs: usize,
    pub candidates: usize,
}

/// Multiplicity of `w` in a ⊗ b straight from the model: h(χ_a χ_b χ_w*).
pub fn oracle_multiplicity(
    a: &IrrepLabel,
    b: &IrrepLabel,
    w: &IrrepLabel,
    group: &GroupSpec,
) -> Result<u64> {
    if let (IrrepLabel::V(x), IrrepLabel::V(y)) = (a, b) {
        return model2::multiplicity(x, y, &w.character(group)?);
    }
    let prod = a.character(group)?.mul(&b.character(group)?)?;
    let value = model2::pairing(&prod, &w.character(group)?)?;
    if !value.is_integer() || value < num::Zero::zero() {
        return Err(Error::Invalid(format!(
            "oracle pairing produced {value}, not a natural number"
        )));
    }
    u64::try_from(&value.to_integer())
        .map_err(|_| Error::Invalid("oracle multiplicity out of range".into()))
}

/// Checks `tensor_decompose` against the model on every label pair with
/// word length ≤ `max_len`: each candidate class up to the combined length
/// must appear with exactly the multiplicity the Haar pairing reports, and
/// dimensions must balance. The first discrepancy aborts with a
/// description; a clean sweep returns the counts.
pub fn cross_check_with_model(group: &GroupSpec, max_len: usize) -> Result<OracleReport> {
    let labels = all_labels(group, max_len)?;
    let candidates = all_labels(group, 2 * max_len)?;
    let mut chi = BTreeMap::new();
    for l in labels.iter().chain(&candidates) {
        chi.entry(l.clone()).or_insert(l.character(group)?);
    }
    let mut pairs = 0;
    let mut checked = 0;
    for a in &labels {
        for b in &labels {
            pairs += 1;
            let sum = tensor_decompose(a, b)?;
            if sum.dim() != a.dim() * b.dim() {
                return Err(Error::Invalid(format!(
                    "dimension mismatch: {a} ⊗ {b} = {sum} has dimension {}, expected {}",
                    sum.dim(),
                    a.dim() * b.dim()
                )));
            }
            let reach = a.word_len() + b.word_len();
            let prod = chi[a].mul(&chi[b])?;
            for w in candidates.iter().filter(|w| w.word_len() <= reach) {
                checked += 1;
                let value = model2::pairing(&prod, &chi[w])?;
                let expected = sum.multiplicity(w);
                if value != crate::ncalg::coeff_int(expected as i64) {
                    return Err(Error::Invalid(format!(
                        "multiplicity mismatch for {w} in {a} ⊗ {b}: \
                         decomposition says {expected}, model pairing says {value}"
                    )));
                }
            }
        }
    }
    Ok(OracleReport {
        pairs,
        candidates: checked,
    })
}
