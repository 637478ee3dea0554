//! Randomized algebraic laws across the word, polynomial, rewriting, model,
//! and fusion layers. Strategies generate plain data; each case materializes
//! it against a shared alphabet or group so equality is exact.

use std::sync::OnceLock;

use proptest::prelude::*;

use freewreath::fusion::{all_labels, tensor_decompose, tensor_sum, FusionSum};
use freewreath::groups::{FreeProductWord, GroupElement, GroupSpec};
use freewreath::model2::{model_delta, ModelElement, TPart};
use freewreath::ncalg::{coeff_int, Letter, NCPoly, SymbolId, Word};
use freewreath::presentations::{magic_unitary, Presentation};
use freewreath::rewrite::{complete, orient, RewriteSystem, Verdict};

fn z3() -> GroupSpec {
    GroupSpec::Cyclic(3)
}

fn magic3() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| magic_unitary(3).unwrap())
}

fn magic3_rs() -> &'static RewriteSystem {
    static RS: OnceLock<RewriteSystem> = OnceLock::new();
    RS.get_or_init(|| {
        let rs = orient(magic3()).unwrap();
        complete(&rs, rs.default_bounds()).unwrap()
    })
}

type Letters = Vec<(u8, u32)>;

fn letters() -> impl Strategy<Value = Letters> {
    proptest::collection::vec((1u8..=2, 1u32..=2), 0..6)
}

fn build_word(letters: &Letters) -> FreeProductWord {
    let g = z3();
    let seq = letters
        .iter()
        .map(|&(leg, r)| (leg, GroupElement::Cyclic(r)));
    FreeProductWord::from_letters(&g, seq).unwrap()
}

type PolyData = Vec<(Vec<u32>, i64)>;

fn poly_data() -> impl Strategy<Value = PolyData> {
    proptest::collection::vec((proptest::collection::vec(0u32..9, 0..4), -3i64..=3), 0..5)
}

fn build_poly(data: &PolyData) -> NCPoly {
    let p = magic3();
    NCPoly::from_terms(
        &p.alphabet,
        data.iter()
            .map(|(ids, c)| {
                let w = Word(
                    ids.iter()
                        .map(|&i| Letter::new(SymbolId(i), false))
                        .collect(),
                );
                (w, coeff_int(*c))
            })
            .collect(),
    )
}

type ModelData = Vec<(Letters, bool, i64)>;

fn model_data() -> impl Strategy<Value = ModelData> {
    proptest::collection::vec(
        (
            proptest::collection::vec((1u8..=2, 1u32..=2), 0..3),
            any::<bool>(),
            -2i64..=2,
        ),
        0..4,
    )
}

fn build_model(data: &ModelData) -> ModelElement {
    let g = z3();
    let mut acc = ModelElement::zero(&g);
    for (letters, upper, c) in data {
        let t = if *upper { TPart::X11 } else { TPart::X12 };
        let term = ModelElement::basis(&build_word(letters), t).scale(&coeff_int(*c));
        acc = acc.add(&term).unwrap();
    }
    acc
}

proptest! {
    #[test]
    fn word_multiplication_is_associative(a in letters(), b in letters(), c in letters()) {
        let (a, b, c) = (build_word(&a), build_word(&b), build_word(&c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_inverses_cancel(a in letters()) {
        let a = build_word(&a);
        prop_assert!(a.mul(&a.inv()).unwrap().is_empty());
        prop_assert_eq!(a.inv().inv(), a);
    }

    #[test]
    fn leg_swap_is_a_homomorphic_involution(a in letters(), b in letters()) {
        let (a, b) = (build_word(&a), build_word(&b));
        prop_assert_eq!(a.tau().tau(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().tau(), a.tau().mul(&b.tau()).unwrap());
    }

    #[test]
    fn word_render_parse_roundtrip(a in letters()) {
        let a = build_word(&a);
        prop_assert_eq!(FreeProductWord::parse(&z3(), &a.render()).unwrap(), a);
    }

    #[test]
    fn polynomial_ring_laws_hold(a in poly_data(), b in poly_data(), c in poly_data()) {
        let (a, b, c) = (build_poly(&a), build_poly(&b), build_poly(&c));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let distributed = a.add(&b).unwrap().mul(&c).unwrap();
        prop_assert_eq!(
            distributed,
            a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
        );
        let assoc_left = a.mul(&b).unwrap().mul(&c).unwrap();
        prop_assert_eq!(assoc_left, a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn polynomial_star_is_an_antiinvolution(a in poly_data(), b in poly_data()) {
        let (a, b) = (build_poly(&a), build_poly(&b));
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().star(), b.star().mul(&a.star()).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent(a in poly_data()) {
        let a = build_poly(&a);
        let rs = magic3_rs();
        let nf = rs.normal_form(&a).unwrap();
        prop_assert_eq!(rs.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn membership_certificates_replay_to_the_input(a in poly_data()) {
        let a = build_poly(&a);
        let rs = magic3_rs();
        let m = rs.is_zero_mod(&a).unwrap();
        prop_assert_eq!(rs.replay(&m).unwrap(), a);
    }

    #[test]
    fn ideal_products_reduce_to_zero(
        r in 0usize..100,
        u in proptest::collection::vec(0u32..9, 0..2),
        v in proptest::collection::vec(0u32..9, 0..2),
    ) {
        let p = magic3();
        let relation = &p.relations[r % p.relations.len()];
        let wrap = |ids: &[u32]| {
            let w = Word(ids.iter().map(|&i| Letter::new(SymbolId(i), false)).collect());
            NCPoly::from_word(&p.alphabet, w)
        };
        let sandwiched = wrap(&u).mul(relation).unwrap().mul(&wrap(&v)).unwrap();
        let m = magic3_rs().is_zero_mod(&sandwiched).unwrap();
        prop_assert_eq!(m.verdict, Verdict::Zero);
    }

    #[test]
    fn serialized_systems_reduce_identically(a in poly_data()) {
        static ROUNDTRIP: OnceLock<RewriteSystem> = OnceLock::new();
        let back = ROUNDTRIP
            .get_or_init(|| RewriteSystem::from_json(&magic3_rs().to_json()).unwrap());
        let a = build_poly(&a);
        prop_assert_eq!(
            back.normal_form(&a).unwrap(),
            magic3_rs().normal_form(&a).unwrap()
        );
    }

    #[test]
    fn model_star_is_an_antiinvolution(a in model_data(), b in model_data()) {
        let (a, b) = (build_model(&a), build_model(&b));
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().star(), b.star().mul(&a.star()).unwrap());
    }

    #[test]
    fn model_counit_is_multiplicative(a in model_data(), b in model_data()) {
        let (a, b) = (build_model(&a), build_model(&b));
        prop_assert_eq!(a.mul(&b).unwrap().counit(), a.counit() * b.counit());
    }

    #[test]
    fn model_haar_state_is_invariant(a in model_data()) {
        let a = build_model(&a);
        let expected = ModelElement::one(&z3()).scale(&a.haar());
        let spread = model_delta(&a).unwrap();
        prop_assert_eq!(spread.contract_left_haar(), expected.clone());
        prop_assert_eq!(spread.contract_right_haar(), expected);
    }

    #[test]
    fn fusion_dimensions_are_multiplicative(i in 0usize..64, j in 0usize..64) {
        let labels = all_labels(&z3(), 3).unwrap();
        let a = &labels[i % labels.len()];
        let b = &labels[j % labels.len()];
        let sum = tensor_decompose(a, b).unwrap();
        prop_assert_eq!(sum.dim(), a.dim() * b.dim());
    }

    #[test]
    fn fusion_conjugation_reverses_products(i in 0usize..64, j in 0usize..64) {
        let labels = all_labels(&z3(), 3).unwrap();
        let a = &labels[i % labels.len()];
        let b = &labels[j % labels.len()];
        let forward = tensor_decompose(a, b).unwrap();
        let mut conjugated = FusionSum::empty();
        for (label, mult) in forward.iter() {
            conjugated.insert(label.conjugate(), mult);
        }
        prop_assert_eq!(
            tensor_decompose(&b.conjugate(), &a.conjugate()).unwrap(),
            conjugated
        );
    }

    #[test]
    fn fusion_is_associative(i in 0usize..16, j in 0usize..16, k in 0usize..16) {
        let labels = all_labels(&z3(), 2).unwrap();
        let a = &labels[i % labels.len()];
        let b = &labels[j % labels.len()];
        let c = &labels[k % labels.len()];
        let left =
            tensor_sum(&tensor_decompose(a, b).unwrap(), &FusionSum::of(std::slice::from_ref(c))).unwrap();
        let right =
            tensor_sum(&FusionSum::of(std::slice::from_ref(a)), &tensor_decompose(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn completion_is_deterministic() {
    let first = {
        let rs = orient(magic3()).unwrap();
        complete(&rs, rs.default_bounds()).unwrap()
    };
    let second = {
        let rs = orient(magic3()).unwrap();
        complete(&rs, rs.default_bounds()).unwrap()
    };
    assert_eq!(first.to_json(), second.to_json());
}
