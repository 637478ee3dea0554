//! Checks that a presentation's Hopf data is meaningful: the structure maps
//! descend to the quotient algebra, and the Hopf axioms hold on generators.
//!
//! Everything is certified through the rewrite module, so a passing item is
//! an ideal-membership certificate and a failing item is merely
//! inconclusive at the configured bound — never a disproof.

use crate::error::Result;
use crate::ncalg::{
    apply_counit, apply_hom, apply_hom_tensor, Coeff, GenImages, NCPoly, TensorPoly, Word,
};
use crate::presentations::Presentation;
use crate::rewrite::{complete, orient, Bounds, RewriteSystem, Verdict};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// One verified identity: which check, on which relation or generator.
/// Failing membership checks keep their reduction trace as a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub subject: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
}

impl CheckItem {
    fn passed(&self) -> bool {
        self.verdict == Verdict::Zero
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed())
    }
}

/// Combined outcome of [`check_well_defined`] and [`check_axioms`].
#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub label: String,
    pub completion_degree: usize,
    pub saturated: bool,
    pub well_defined: CheckReport,
    pub axioms: CheckReport,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.well_defined.passed() && self.axioms.passed()
    }
}

pub(crate) fn scalar_item(check: &str, subject: String, value: Coeff) -> CheckItem {
    use num::Zero;
    let verdict = if value.is_zero() {
        Verdict::Zero
    } else {
        Verdict::Inconclusive
    };
    CheckItem {
        check: check.into(),
        subject,
        verdict,
        residual: (!value.is_zero()).then(|| value.to_string()),
        trace: None,
    }
}

pub(crate) fn poly_item(
    check: &str,
    subject: String,
    rs: &RewriteSystem,
    p: &NCPoly,
) -> Result<CheckItem> {
    let m = rs.is_zero_mod(p)?;
    let failed = m.verdict == Verdict::Inconclusive;
    Ok(CheckItem {
        check: check.into(),
        subject,
        verdict: m.verdict,
        residual: failed.then(|| m.residual.render()),
        trace: failed.then(|| rs.render_trace(&m.trace)),
    })
}

pub(crate) fn tensor_item(
    check: &str,
    subject: String,
    rs: &RewriteSystem,
    t: &TensorPoly,
) -> Result<CheckItem> {
    let m = rs.is_zero_mod_tensor(t)?;
    Ok(CheckItem {
        check: check.into(),
        subject,
        verdict: m.verdict,
        residual: (m.verdict == Verdict::Inconclusive).then(|| m.residual.render()),
        trace: None,
    })
}

/// Every relation must be killed by all three structure maps: its
/// comultiplication image by the two-sided tensor ideal, its counit value
/// exactly, and its antipode image by the ideal itself.
pub fn check_well_defined(p: &Presentation, rs: &RewriteSystem) -> Result<CheckReport> {
    let delta = p.delta_images()?;
    let antipode = p.antipode_images()?;
    let counit = p.counit_values()?;
    let items: Result<Vec<Vec<CheckItem>>> = p
        .relations
        .par_iter()
        .map(|r| {
            let subject = r.render();
            let d = apply_hom_tensor(r, &delta, false)?;
            let s = apply_hom(r, &antipode, true)?;
            Ok(vec![
                tensor_item("delta", subject.clone(), rs, &d)?,
                scalar_item("counit", subject.clone(), apply_counit(r, counit)?),
                poly_item("antipode", subject, rs, &s)?,
            ])
        })
        .collect();
    Ok(CheckReport {
        label: p.label.clone(),
        items: items?.into_iter().flatten().collect(),
    })
}

/// Applies the comultiplication to one leg of a rank-2 tensor, producing the
/// rank-3 expansions (Δ⊗id)t and (id⊗Δ)t.
fn delta_on_leg(t: &TensorPoly, leg: usize, delta: &GenImages<TensorPoly>) -> Result<TensorPoly> {
    let alphabet = t.alphabet();
    let mut out = TensorPoly::zero(alphabet, 3);
    for (legs, c) in t.terms() {
        let expanded = apply_hom_tensor(
            &NCPoly::from_word(alphabet, legs[leg].clone()),
            delta,
            false,
        )?;
        for (dlegs, dc) in expanded.terms() {
            let full: Vec<Word> = if leg == 0 {
                vec![dlegs[0].clone(), dlegs[1].clone(), legs[1].clone()]
            } else {
                vec![legs[0].clone(), dlegs[0].clone(), dlegs[1].clone()]
            };
            out.add_term(full, c.clone() * dc.clone());
        }
    }
    Ok(out)
}

/// Contracts one leg of a rank-2 tensor with the counit.
fn counit_contract(t: &TensorPoly, leg: usize, counit: &BTreeMap<u32, Coeff>) -> Result<NCPoly> {
    let alphabet = t.alphabet();
    let mut out = NCPoly::zero(alphabet);
    for (legs, c) in t.terms() {
        let v = apply_counit(&NCPoly::from_word(alphabet, legs[leg].clone()), counit)?;
        out.add_term(legs[1 - leg].clone(), c.clone() * v);
    }
    Ok(out)
}

/// Convolves the antipode against one leg: m(S⊗id)Δ or m(id⊗S)Δ.
fn antipode_convolve(t: &TensorPoly, leg: usize, antipode: &GenImages<NCPoly>) -> Result<NCPoly> {
    let alphabet = t.alphabet();
    let mut out = NCPoly::zero(alphabet);
    for (legs, c) in t.terms() {
        let s = apply_hom(
            &NCPoly::from_word(alphabet, legs[leg].clone()),
            antipode,
            true,
        )?;
        let other = NCPoly::from_word(alphabet, legs[1 - leg].clone());
        let prod = if leg == 0 {
            s.mul(&other)?
        } else {
            other.mul(&s)?
        };
        out = out.add(&prod.scale(c))?;
    }
    Ok(out)
}

/// Coassociativity, the counit law, and the antipode law, instantiated on
/// every generator and certified modulo the relations.
pub fn check_axioms(p: &Presentation, rs: &RewriteSystem) -> Result<CheckReport> {
    let delta = p.delta_images()?;
    let antipode = p.antipode_images()?;
    let counit = p.counit_values()?;
    let ids: Vec<_> = p.alphabet.ids().collect();
    let items: Result<Vec<Vec<CheckItem>>> = ids
        .par_iter()
        .map(|&gid| {
            let subject = p.alphabet.get(gid).render();
            let g = p.generator_poly(gid);
            let d = &p.hopf_data()?.delta[&gid.0];

            let coassoc = delta_on_leg(d, 0, &delta)?.sub(&delta_on_leg(d, 1, &delta)?)?;
            let left_counit = counit_contract(d, 0, counit)?.sub(&g)?;
            let right_counit = counit_contract(d, 1, counit)?.sub(&g)?;
            let eps = NCPoly::constant(&p.alphabet, p.hopf_data()?.counit[&gid.0].clone());
            let left_antipode = antipode_convolve(d, 0, &antipode)?.sub(&eps)?;
            let right_antipode = antipode_convolve(d, 1, &antipode)?.sub(&eps)?;

            Ok(vec![
                tensor_item("coassociativity", subject.clone(), rs, &coassoc)?,
                poly_item("counit left", subject.clone(), rs, &left_counit)?,
                poly_item("counit right", subject.clone(), rs, &right_counit)?,
                poly_item("antipode left", subject.clone(), rs, &left_antipode)?,
                poly_item("antipode right", subject, rs, &right_antipode)?,
            ])
        })
        .collect();
    Ok(CheckReport {
        label: p.label.clone(),
        items: items?.into_iter().flatten().collect(),
    })
}

/// Orients and completes the presentation, then runs both check families.
pub fn verify_presentation(p: &Presentation, bounds: Option<Bounds>) -> Result<HopfReport> {
    let rs = orient(p)?;
    let bounds = bounds.unwrap_or_else(|| rs.default_bounds());
    let rs = complete(&rs, bounds)?;
    Ok(HopfReport {
        label: p.label.clone(),
        completion_degree: rs.completion_degree(),
        saturated: rs.saturated(),
        well_defined: check_well_defined(p, &rs)?,
        axioms: check_axioms(p, &rs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;
    use crate::presentations::{
        a_n_g, free_wreath, group_algebra, magic_unitary, AnGVariant, Presentation,
    };
    use std::sync::Arc;

    fn assert_all_pass(report: &HopfReport) {
        if let Some(item) = report.well_defined.first_failure() {
            panic!(
                "{}: {} on {:?} failed with residual {:?}",
                report.label, item.check, item.subject, item.residual
            );
        }
        if let Some(item) = report.axioms.first_failure() {
            panic!(
                "{}: {} on {:?} failed with residual {:?}",
                report.label, item.check, item.subject, item.residual
            );
        }
    }

    #[test]
    fn magic_unitaries_are_hopf() {
        for n in [1, 2, 3] {
            let report = verify_presentation(&magic_unitary(n).unwrap(), None).unwrap();
            assert_all_pass(&report);
            assert!(report.passed());
        }
    }

    #[test]
    fn group_algebras_are_hopf() {
        for p in [2u32, 3] {
            let pres = group_algebra(&GroupSpec::cyclic(p).unwrap()).unwrap();
            assert_all_pass(&verify_presentation(&pres, None).unwrap());
        }
    }

    #[test]
    fn wreath_of_z2_is_hopf() {
        let a = group_algebra(&GroupSpec::cyclic(2).unwrap()).unwrap();
        let pres = free_wreath(&a, 2).unwrap();
        assert_all_pass(&verify_presentation(&pres, None).unwrap());
    }

    #[test]
    fn grid_algebra_specialized_z2_is_hopf() {
        let pres = a_n_g(&GroupSpec::cyclic(2).unwrap(), 2, AnGVariant::Specialized).unwrap();
        assert_all_pass(&verify_presentation(&pres, None).unwrap());
    }

    #[test]
    fn corrupted_relation_is_caught() {
        let p = magic_unitary(3).unwrap();
        // flip the sign of the linear part of the first idempotency relation
        let mut relations = p.relations.clone();
        let idx = relations
            .iter()
            .position(|r| r.render() == "x(1,1) x(1,1) - x(1,1)")
            .unwrap();
        relations[idx] = NCPoly::parse(&p.alphabet, "x(1,1) x(1,1) + x(1,1)").unwrap();
        let bad = Presentation::new(
            p.label.clone(),
            Arc::clone(&p.alphabet),
            relations,
            p.hopf.clone(),
        )
        .unwrap();
        let report = verify_presentation(&bad, None).unwrap();
        assert!(!report.passed());
        let item = report
            .well_defined
            .items
            .iter()
            .find(|i| i.check == "counit" && i.subject == "x(1,1) x(1,1) + x(1,1)")
            .unwrap();
        assert_eq!(item.verdict, Verdict::Inconclusive);
        assert_eq!(item.residual.as_deref(), Some("2"));
    }

    #[test]
    fn report_serializes() {
        let report = verify_presentation(&magic_unitary(2).unwrap(), None).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"verdict\":\"Zero\""));
        assert!(json.contains("coassociativity"));
    }
}
