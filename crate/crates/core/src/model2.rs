//! The concrete model of the two-point wreath product: C[G*G] ⊗ C(Z/2).
//!
//! For n = 2 the group-algebra copies commute with the magic block, so the
//! whole algebra collapses to a tensor product with basis (w, x_t) where w
//! is a reduced word in G*G and x_t ∈ {x11, x12} is one of the two
//! orthogonal idempotents of the magic row. Everything here is exact
//! rational arithmetic on that basis: multiplication, star, the transported
//! comultiplication, the Haar state, characters, and the 2×2
//! corepresentation matrices. This module is the independent oracle the
//! fusion rules are checked against.

use crate::error::{Error, Result};
use crate::groups::{FreeProductWord, GroupSpec};
use crate::ncalg::{coeff_int, coeff_ratio, Coeff};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Basis label in C(Z/2): x11 and x12 are the two entries of the first
/// magic row, with x11 + x12 = 1 and x11 x12 = 0. The second row repeats
/// them (x21 = x12, x22 = x11).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TPart {
    X11,
    X12,
}

impl TPart {
    /// Product of idempotents: equal labels survive, mixed labels vanish.
    fn mul(self, other: TPart) -> Option<TPart> {
        if self == other {
            Some(self)
        } else {
            None
        }
    }

    pub fn render(self) -> &'static str {
        match self {
            TPart::X11 => "x11",
            TPart::X12 => "x12",
        }
    }
}

type Basis = (FreeProductWord, TPart);

/// Element of C[G*G] ⊗ C(Z/2) as a finitely supported rational combination
/// of basis pairs (word, t). Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelElement {
    group: GroupSpec,
    terms: BTreeMap<Basis, Coeff>,
}

fn render_basis(w: &FreeProductWord, t: TPart) -> String {
    if w.is_empty() {
        t.render().to_string()
    } else {
        format!("({}) {}", w.render(), t.render())
    }
}

fn push_term(out: &mut String, first: bool, c: &Coeff, body: &str) {
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
    if !mag.is_one() {
        out.push_str(&mag.to_string());
        out.push(' ');
    }
    out.push_str(body);
}

impl ModelElement {
    pub fn zero(group: &GroupSpec) -> Self {
        ModelElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The algebra unit 1 = x11 + x12.
    pub fn one(group: &GroupSpec) -> Self {
        let e = FreeProductWord::empty(group);
        let mut el = ModelElement::zero(group);
        el.add_term((e.clone(), TPart::X11), coeff_int(1));
        el.add_term((e, TPart::X12), coeff_int(1));
        el
    }

    pub fn basis(w: &FreeProductWord, t: TPart) -> Self {
        let mut el = ModelElement::zero(w.group());
        el.add_term((w.clone(), t), coeff_int(1));
        el
    }

    pub fn x11(group: &GroupSpec) -> Self {
        ModelElement::basis(&FreeProductWord::empty(group), TPart::X11)
    }

    pub fn x12(group: &GroupSpec) -> Self {
        ModelElement::basis(&FreeProductWord::empty(group), TPart::X12)
    }

    /// The one-dimensional corepresentation d = x11 - x12, with d² = 1.
    pub fn sign(group: &GroupSpec) -> Self {
        ModelElement::x11(group)
            .sub(&ModelElement::x12(group))
            .expect("same group")
    }

    /// Embeds a group-algebra element: w ↦ w·1 = w x11 + w x12.
    pub fn embed_word(w: &FreeProductWord) -> Self {
        let mut el = ModelElement::zero(w.group());
        el.add_term((w.clone(), TPart::X11), coeff_int(1));
        el.add_term((w.clone(), TPart::X12), coeff_int(1));
        el
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &FreeProductWord, t: TPart) -> Coeff {
        self.terms
            .get(&(w.clone(), t))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, key: Basis, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&coeff_int(-1))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return ModelElement::zero(&self.group);
        }
        ModelElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product: words multiply in G*G, t-parts as orthogonal idempotents.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = ModelElement::zero(&self.group);
        for ((w1, t1), c1) in &self.terms {
            for ((w2, t2), c2) in &other.terms {
                if let Some(t) = t1.mul(*t2) {
                    out.add_term((w1.mul(w2)?, t), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Involution: inverts words and fixes the (self-adjoint) idempotents.
    pub fn star(&self) -> Self {
        ModelElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|((w, t), c)| ((w.inv(), *t), c.clone()))
                .collect(),
        }
    }

    /// Haar state: 1/2 times the identity-word coefficient on each t-part.
    pub fn haar(&self) -> Coeff {
        let e = FreeProductWord::empty(&self.group);
        (self.coeff(&e, TPart::X11) + self.coeff(&e, TPart::X12)) * coeff_ratio(1, 2)
    }

    /// Counit: 1 on every word, 1 on x11, 0 on x12.
    pub fn counit(&self) -> Coeff {
        self.terms
            .iter()
            .filter(|((_, t), _)| *t == TPart::X11)
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for ((w, t), c) in &self.terms {
            push_term(&mut out, first, c, &render_basis(w, *t));
            first = false;
        }
        out
    }
}

impl fmt::Display for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Rank-two tensor over the model algebra, same basis on each leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelTensor {
    group: GroupSpec,
    terms: BTreeMap<(Basis, Basis), Coeff>,
}

impl ModelTensor {
    pub fn zero(group: &GroupSpec) -> Self {
        ModelTensor {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &GroupSpec) -> Self {
        ModelTensor::from_legs(&ModelElement::one(group), &ModelElement::one(group))
            .expect("same group")
    }

    /// Outer product a ⊗ b.
    pub fn from_legs(a: &ModelElement, b: &ModelElement) -> Result<Self> {
        if a.group != b.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = ModelTensor::zero(&a.group);
        for (k1, c1) in &a.terms {
            for (k2, c2) in &b.terms {
                out.add_term((k1.clone(), k2.clone()), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Basis, Basis), &Coeff)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (Basis, Basis), c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&coeff_int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return ModelTensor::zero(&self.group);
        }
        ModelTensor {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Legwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = ModelTensor::zero(&self.group);
        for (((w1, t1), (v1, s1)), c1) in &self.terms {
            for (((w2, t2), (v2, s2)), c2) in &other.terms {
                let (Some(t), Some(s)) = (t1.mul(*t2), s1.mul(*s2)) else {
                    continue;
                };
                out.add_term(((w1.mul(w2)?, t), (v1.mul(v2)?, s)), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Applies the Haar state to the left leg: (h ⊗ id). Both idempotents
    /// carry h(x_t) = 1/2, so only the word part gates the contribution.
    pub fn contract_left_haar(&self) -> ModelElement {
        let mut out = ModelElement::zero(&self.group);
        for (((w, _), right), c) in &self.terms {
            if w.is_empty() {
                out.add_term(right.clone(), c * coeff_ratio(1, 2));
            }
        }
        out
    }

    /// Applies the Haar state to the right leg: (id ⊗ h).
    pub fn contract_right_haar(&self) -> ModelElement {
        let mut out = ModelElement::zero(&self.group);
        for ((left, (w, _)), c) in &self.terms {
            if w.is_empty() {
                out.add_term(left.clone(), c * coeff_ratio(1, 2));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (((w1, t1), (w2, t2)), c) in &self.terms {
            let body = format!("{} ⊗ {}", render_basis(w1, *t1), render_basis(w2, *t2));
            push_term(&mut out, first, c, &body);
            first = false;
        }
        out
    }
}

impl fmt::Display for ModelTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Comultiplication on a single free-product letter.
///
/// Δ(ν₁(g)) = ν₁(g)x11 ⊗ ν₁(g) + ν₁(g)x12 ⊗ ν₂(g), and on the second leg
/// Δ(ν₂(g)) = ν₂(g)x12 ⊗ ν₁(g) + ν₂(g)x11 ⊗ ν₂(g) (the second magic row
/// rereads the first: x21 = x12, x22 = x11).
fn delta_letter(
    group: &GroupSpec,
    leg: u8,
    e: &crate::groups::GroupElement,
) -> Result<ModelTensor> {
    let here = FreeProductWord::letter(group, leg, *e)?;
    let t_same = if leg == 1 { TPart::X11 } else { TPart::X12 };
    let t_swap = if leg == 1 { TPart::X12 } else { TPart::X11 };
    let to1 = ModelTensor::from_legs(
        &ModelElement::basis(&here, t_same),
        &ModelElement::embed_word(&FreeProductWord::letter(group, 1, *e)?),
    )?;
    let to2 = ModelTensor::from_legs(
        &ModelElement::basis(&here, t_swap),
        &ModelElement::embed_word(&FreeProductWord::letter(group, 2, *e)?),
    )?;
    to1.add(&to2)
}

/// Comultiplication on the t-part: Δ(x11) = x11⊗x11 + x12⊗x12 and
/// Δ(x12) = x11⊗x12 + x12⊗x11.
fn delta_tpart(group: &GroupSpec, t: TPart) -> ModelTensor {
    let x11 = ModelElement::x11(group);
    let x12 = ModelElement::x12(group);
    let (a, b) = match t {
        TPart::X11 => (
            ModelTensor::from_legs(&x11, &x11),
            ModelTensor::from_legs(&x12, &x12),
        ),
        TPart::X12 => (
            ModelTensor::from_legs(&x11, &x12),
            ModelTensor::from_legs(&x12, &x11),
        ),
    };
    a.expect("same group")
        .add(&b.expect("same group"))
        .expect("same group")
}

/// The transported comultiplication, letter by letter.
pub fn model_delta(e: &ModelElement) -> Result<ModelTensor> {
    let group = &e.group;
    let mut out = ModelTensor::zero(group);
    for ((w, t), c) in &e.terms {
        let mut prod = ModelTensor::one(group);
        for (leg, elem) in w.letters() {
            prod = prod.mul(&delta_letter(group, *leg, elem)?)?;
        }
        prod = prod.mul(&delta_tpart(group, *t))?;
        out = out.add(&prod.scale(c))?;
    }
    Ok(out)
}

/// The 2×2 corepresentation matrix of a nonempty word:
/// rows carry x and τ(x), columns pick the t-part.
pub fn corep_matrix(x: &FreeProductWord) -> Result<[[ModelElement; 2]; 2]> {
    if x.is_empty() {
        return Err(Error::Invalid(
            "corepresentation matrices index nonempty words".into(),
        ));
    }
    let tx = x.tau();
    Ok([
        [
            ModelElement::basis(x, TPart::X11),
            ModelElement::basis(x, TPart::X12),
        ],
        [
            ModelElement::basis(&tx, TPart::X12),
            ModelElement::basis(&tx, TPart::X11),
        ],
    ])
}

/// Character of the corepresentation attached to x: (x + τ(x)) x11.
pub fn character(x: &FreeProductWord) -> Result<ModelElement> {
    if x.is_empty() {
        return Err(Error::Invalid("characters index nonempty words".into()));
    }
    ModelElement::basis(x, TPart::X11).add(&ModelElement::basis(&x.tau(), TPart::X11))
}

/// Haar pairing h(a b*), the inner product underlying character theory.
pub fn pairing(a: &ModelElement, b: &ModelElement) -> Result<Coeff> {
    Ok(a.mul(&b.star())?.haar())
}

/// Multiplicity of the corepresentation with character `chi_w` inside
/// v_x ⊗ v_y, computed as h(χ_x χ_y χ_w*). A non-natural value means the
/// candidate is not a character of an irreducible summand and is reported
/// as a broken invariant rather than rounded.
pub fn multiplicity(x: &FreeProductWord, y: &FreeProductWord, chi_w: &ModelElement) -> Result<u64> {
    let prod = character(x)?.mul(&character(y)?)?;
    let value = pairing(&prod, chi_w)?;
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Invalid(format!(
            "multiplicity pairing produced {value}, not a natural number"
        )));
    }
    let int = value.to_integer();
    u64::try_from(&int).map_err(|_| Error::Invalid(format!("multiplicity {int} out of range")))
}

#[cfg(test)]
// Index loops over the fixed 2x2 corepresentation grid read better than
// iterator chains here.
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::groups::enumerate_words;

    fn z(p: u32) -> GroupSpec {
        GroupSpec::cyclic(p).unwrap()
    }

    fn w(group: &GroupSpec, s: &str) -> FreeProductWord {
        FreeProductWord::parse(group, s).unwrap()
    }

    #[test]
    fn unit_and_idempotents() {
        let g = z(3);
        let one = ModelElement::one(&g);
        let x11 = ModelElement::x11(&g);
        let x12 = ModelElement::x12(&g);
        assert_eq!(x11.add(&x12).unwrap(), one);
        assert_eq!(x11.mul(&x11).unwrap(), x11);
        assert!(x11.mul(&x12).unwrap().is_zero());
        assert_eq!(one.mul(&x12).unwrap(), x12);
        let a = ModelElement::basis(&w(&g, "1:1 2:2"), TPart::X12);
        assert_eq!(one.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn orthogonal_t_parts_kill_products() {
        let g = z(2);
        let a = ModelElement::basis(&w(&g, "1:1"), TPart::X11);
        let b = ModelElement::basis(&w(&g, "2:1"), TPart::X12);
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn sign_squares_to_one() {
        for p in [2u32, 3] {
            let g = z(p);
            let d = ModelElement::sign(&g);
            assert_eq!(d.mul(&d).unwrap(), ModelElement::one(&g));
            assert_eq!(d.star(), d);
        }
    }

    #[test]
    fn star_is_an_antimultiplicative_involution() {
        let g = z(3);
        let a = ModelElement::basis(&w(&g, "1:1 2:1"), TPart::X11);
        let b = ModelElement::basis(&w(&g, "2:2"), TPart::X11)
            .add(&ModelElement::x12(&g).scale(&coeff_ratio(3, 2)))
            .unwrap();
        assert_eq!(a.star().star(), a);
        assert_eq!(a.mul(&b).unwrap().star(), b.star().mul(&a.star()).unwrap());
        assert_eq!(a.star().coeff(&w(&g, "2:2 1:2"), TPart::X11), coeff_int(1));
    }

    #[test]
    fn haar_basics() {
        let g = z(2);
        assert_eq!(ModelElement::x11(&g).haar(), coeff_ratio(1, 2));
        assert_eq!(ModelElement::one(&g).haar(), coeff_int(1));
        assert_eq!(ModelElement::sign(&g).haar(), coeff_int(0));
        let a = ModelElement::basis(&w(&g, "1:1"), TPart::X11);
        assert_eq!(a.haar(), coeff_int(0));
    }

    #[test]
    fn haar_is_positive_on_tested_squares() {
        // h(a a*) > 0 for a few nonzero elements
        let g = z(3);
        let samples = [
            ModelElement::sign(&g),
            ModelElement::basis(&w(&g, "1:1"), TPart::X12)
                .add(&ModelElement::one(&g).scale(&coeff_ratio(1, 3)))
                .unwrap(),
            character(&w(&g, "1:2 2:1")).unwrap(),
        ];
        for a in &samples {
            let v = pairing(a, a).unwrap();
            assert!(v.is_positive(), "h(aa*) = {v} for a = {a}");
        }
    }

    #[test]
    fn counit_is_a_character() {
        let g = z(3);
        let words = enumerate_words(&g, 2).unwrap();
        let mut samples = Vec::new();
        for (i, word) in words.iter().enumerate() {
            let t = if i % 2 == 0 { TPart::X11 } else { TPart::X12 };
            samples.push(ModelElement::basis(word, t));
        }
        samples.push(ModelElement::sign(&g));
        for a in &samples {
            for b in &samples {
                assert_eq!(
                    a.mul(b).unwrap().counit(),
                    a.counit() * b.counit(),
                    "a = {a}, b = {b}"
                );
            }
        }
        assert_eq!(ModelElement::one(&g).counit(), coeff_int(1));
    }

    #[test]
    fn delta_of_unit_and_sign() {
        let g = z(2);
        assert_eq!(
            model_delta(&ModelElement::one(&g)).unwrap(),
            ModelTensor::one(&g)
        );
        let d = ModelElement::sign(&g);
        assert_eq!(
            model_delta(&d).unwrap(),
            ModelTensor::from_legs(&d, &d).unwrap()
        );
    }

    #[test]
    fn delta_on_first_leg_letter() {
        // Δ(A₁₁(x)) = A₁₁(x)⊗A₁₁(x) + A₁₂(x)⊗A₂₁(x) for x = ν₁(g)
        let g = z(3);
        let x = w(&g, "1:1");
        let m = corep_matrix(&x).unwrap();
        let lhs = model_delta(&m[0][0]).unwrap();
        let rhs = ModelTensor::from_legs(&m[0][0], &m[0][0])
            .unwrap()
            .add(&ModelTensor::from_legs(&m[0][1], &m[1][0]).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_is_multiplicative_on_a_spanning_sample() {
        let g = z(3);
        let words = enumerate_words(&g, 2).unwrap();
        let mut basis = Vec::new();
        for word in &words {
            basis.push(ModelElement::basis(word, TPart::X11));
            basis.push(ModelElement::basis(word, TPart::X12));
        }
        // exact check on all pairs from a spanning set of basis elements
        for a in &basis {
            for b in &basis {
                let ab = a.mul(b).unwrap();
                assert_eq!(
                    model_delta(&ab).unwrap(),
                    model_delta(a)
                        .unwrap()
                        .mul(&model_delta(b).unwrap())
                        .unwrap(),
                    "a = {a}, b = {b}"
                );
            }
        }
    }

    #[test]
    fn delta_is_coassociative_on_characters() {
        // flip-free check: both iterated contractions with the counit agree
        // and Haar invariance holds, which pins the tensor legs down
        let g = z(2);
        for word in enumerate_words(&g, 3).unwrap() {
            if word.is_empty() {
                continue;
            }
            let chi = character(&word).unwrap();
            let d = model_delta(&chi).unwrap();
            // counit contraction on either leg recovers the element
            let mut left = ModelElement::zero(&g);
            let mut right = ModelElement::zero(&g);
            for ((l, r), c) in d.terms() {
                let el = ModelElement {
                    group: g.clone(),
                    terms: BTreeMap::from([(l.clone(), c.clone())]),
                };
                let er = ModelElement {
                    group: g.clone(),
                    terms: BTreeMap::from([(r.clone(), c.clone())]),
                };
                left = left.add(&er.scale(&el.counit())).unwrap();
                right = right.add(&el.scale(&er.counit())).unwrap();
            }
            assert_eq!(left, chi);
            assert_eq!(right, chi);
        }
    }

    #[test]
    fn haar_invariance_on_small_basis() {
        for p in [2u32, 3] {
            let g = z(p);
            for word in enumerate_words(&g, 3).unwrap() {
                for t in [TPart::X11, TPart::X12] {
                    let e = ModelElement::basis(&word, t);
                    let d = model_delta(&e).unwrap();
                    let expect = ModelElement::one(&g).scale(&e.haar());
                    assert_eq!(d.contract_left_haar(), expect, "basis {e}");
                    assert_eq!(d.contract_right_haar(), expect, "basis {e}");
                }
            }
        }
    }

    #[test]
    fn corep_matrices_satisfy_the_corepresentation_equation() {
        let g = z(3);
        for word in enumerate_words(&g, 2).unwrap() {
            if word.is_empty() {
                continue;
            }
            let m = corep_matrix(&word).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = model_delta(&m[i][j]).unwrap();
                    let rhs = ModelTensor::from_legs(&m[i][0], &m[0][j])
                        .unwrap()
                        .add(&ModelTensor::from_legs(&m[i][1], &m[1][j]).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "entry ({i},{j}) of {word}");
                }
            }
        }
    }

    #[test]
    fn corep_matrices_are_unitary() {
        let g = z(3);
        let one = ModelElement::one(&g);
        for word in enumerate_words(&g, 2).unwrap() {
            if word.is_empty() {
                continue;
            }
            let m = corep_matrix(&word).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let mut row = ModelElement::zero(&g);
                    let mut col = ModelElement::zero(&g);
                    for k in 0..2 {
                        row = row.add(&m[i][k].mul(&m[j][k].star()).unwrap()).unwrap();
                        col = col.add(&m[k][i].star().mul(&m[k][j]).unwrap()).unwrap();
                    }
                    let expect = if i == j {
                        one.clone()
                    } else {
                        ModelElement::zero(&g)
                    };
                    assert_eq!(row, expect, "row unitarity ({i},{j}) of {word}");
                    assert_eq!(col, expect, "column unitarity ({i},{j}) of {word}");
                }
            }
        }
    }

    #[test]
    fn counit_of_corep_entries_is_kronecker() {
        let g = z(2);
        let m = corep_matrix(&w(&g, "1:1 2:1")).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { coeff_int(1) } else { coeff_int(0) };
                assert_eq!(m[i][j].counit(), expect);
            }
        }
    }

    #[test]
    fn characters_are_tau_invariant_and_traces() {
        let g = z(3);
        for word in enumerate_words(&g, 3).unwrap() {
            if word.is_empty() {
                continue;
            }
            let chi = character(&word).unwrap();
            assert_eq!(character(&word.tau()).unwrap(), chi);
            let m = corep_matrix(&word).unwrap();
            assert_eq!(m[0][0].add(&m[1][1]).unwrap(), chi);
        }
    }

    #[test]
    fn irreducibility_norms() {
        // h(χ_x χ_x*) = 1 for all reduced words of length ≤ 4
        for p in [2u32, 3] {
            let g = z(p);
            for word in enumerate_words(&g, 4).unwrap() {
                if word.is_empty() {
                    continue;
                }
                let chi = character(&word).unwrap();
                assert_eq!(pairing(&chi, &chi).unwrap(), coeff_int(1), "word {word}");
            }
        }
    }

    #[test]
    fn pairing_of_characters_detects_isomorphism() {
        let g = z(3);
        let words: Vec<_> = enumerate_words(&g, 2)
            .unwrap()
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        for a in &words {
            for b in &words {
                let expect = if a == b || *a == b.tau() {
                    coeff_int(1)
                } else {
                    coeff_int(0)
                };
                assert_eq!(
                    pairing(&character(a).unwrap(), &character(b).unwrap()).unwrap(),
                    expect,
                    "a = {a}, b = {b}"
                );
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let g = z(3);
        let x = w(&g, "1:1 2:1");
        let xinv = x.inv();
        assert_eq!(multiplicity(&x, &xinv, &ModelElement::one(&g)).unwrap(), 1);
        assert_eq!(multiplicity(&x, &xinv, &ModelElement::sign(&g)).unwrap(), 1);
        let y = w(&g, "1:2");
        let xy = x.mul(&y).unwrap();
        assert_eq!(multiplicity(&x, &y, &character(&xy).unwrap()).unwrap(), 1);
        // x τ(y) collapses to 1:1, so 2:1 is a summand through its τ-orbit
        assert_eq!(
            multiplicity(&x, &y, &character(&w(&g, "2:1")).unwrap()).unwrap(),
            1
        );
        // a candidate that is no summand at all
        assert_eq!(
            multiplicity(&x, &y, &character(&w(&g, "1:2")).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn bad_multiplicity_candidates_are_refused() {
        let g = z(2);
        let x = w(&g, "1:1");
        // half a character is not a character: pairing gives 1/2
        let half = character(&x.mul(&x.tau()).unwrap())
            .unwrap()
            .scale(&coeff_ratio(1, 2));
        assert!(multiplicity(&x, &x, &half).is_err());
        assert!(character(&FreeProductWord::empty(&g)).is_err());
        assert!(corep_matrix(&FreeProductWord::empty(&g)).is_err());
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let a = ModelElement::one(&z(2));
        let b = ModelElement::one(&z(3));
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn render_is_stable() {
        let g = z(2);
        let d = ModelElement::sign(&g);
        assert_eq!(d.render(), "x11 - x12");
        let chi = character(&w(&g, "1:1")).unwrap();
        assert_eq!(chi.render(), "(1:1) x11 + (2:1) x11");
        assert_eq!(ModelElement::zero(&g).render(), "0");
    }
}
