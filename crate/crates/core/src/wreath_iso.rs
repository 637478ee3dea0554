//! Certified generator dictionaries between two presentations of the same
//! quantum symmetry object: the automorphism algebra of `n` disjoint copies
//! of a connected graph on one side, and the free wreath product of the
//! single-copy algebra by the magic `n x n` algebra on the other.
//!
//! Nothing here trusts the dictionary: both maps are checked to kill every
//! defining relation, to invert each other on generators, and to respect
//! comultiplication, all by ideal-membership reduction against completed
//! rewrite systems. A parallel family of block-projection checks certifies
//! the combinatorial facts the inverse map relies on.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::groups::GroupSpec;
use crate::hopf_verify::{poly_item, scalar_item, tensor_item, CheckItem, CheckReport};
use crate::ncalg::{
    apply_counit, apply_hom, apply_hom_tensor, coeff_int, Alphabet, Coeff, GenImages, Letter,
    NCPoly, SymbolId, TensorPoly, Word,
};
use crate::presentations::{
    a_n_g, free_wreath, graph_aut_combined, group_algebra, AnGVariant, Presentation,
};
use crate::rewrite::{complete, orient, BoundsOverride, RewriteSystem};

fn sym(alphabet: &Arc<Alphabet>, name: &str, indices: &[u32]) -> SymbolId {
    alphabet
        .find(name, indices)
        .unwrap_or_else(|| panic!("generator {name}{indices:?} missing from alphabet"))
}

fn gen_word(ids: &[SymbolId]) -> Word {
    Word(ids.iter().map(|&id| Letter::new(id, false)).collect())
}

/// Both presentations for `n >= 1` copies of a connected graph, with the
/// candidate mutually inverse homomorphisms as generator images.
///
/// The source algebra is presented on one magic unitary indexed by the union
/// graph's vertices; the target is the free wreath product of the single-copy
/// algebra by the magic `n x n` algebra. `phi` sends the entry at vertices
/// `(i of copy k, j of copy l)` to `X_k(i,j) x(k,l)`; `psi` sends a copy
/// entry to the sum of its translates across column blocks and a magic entry
/// to the block projection of the union unitary.
pub struct GraphIso {
    pub graph: Graph,
    pub copies: usize,
    pub source: Presentation,
    pub target: Presentation,
    pub phi: GenImages<NCPoly>,
    pub psi: GenImages<NCPoly>,
}

impl GraphIso {
    pub fn new(g: &Graph, n: usize) -> Result<GraphIso> {
        if n == 0 {
            return Err(Error::Invalid("need at least one copy".into()));
        }
        if !g.is_connected() {
            return Err(Error::Invalid(
                "copy symmetries only assemble into a free wreath product over a \
                 connected graph"
                    .into(),
            ));
        }
        let m = g.vertex_count();
        let source = graph_aut_combined(&g.disjoint_union(n)?)?;
        let target = free_wreath(&graph_aut_combined(g)?, n)?;
        let vertex = |k: usize, i: usize| ((k - 1) * m + i) as u32;

        let mut phi = GenImages::new(&target.alphabet);
        for k in 1..=n {
            for l in 1..=n {
                for i in 1..=m {
                    for j in 1..=m {
                        let id = sym(&source.alphabet, "X", &[vertex(k, i), vertex(l, j)]);
                        let copy = sym(&target.alphabet, &format!("X{k}"), &[i as u32, j as u32]);
                        let magic = sym(&target.alphabet, "x", &[k as u32, l as u32]);
                        phi.insert(
                            id,
                            NCPoly::from_word(&target.alphabet, gen_word(&[copy, magic])),
                        );
                    }
                }
            }
        }

        // The magic entry maps to the block projection read off the first
        // column of block l; `lemma_checks` certifies every column gives the
        // same element mod the ideal.
        let mut psi = GenImages::new(&source.alphabet);
        for k in 1..=n {
            for i in 1..=m {
                for j in 1..=m {
                    let id = sym(&target.alphabet, &format!("X{k}"), &[i as u32, j as u32]);
                    let terms = (1..=n)
                        .map(|l| {
                            let x = sym(&source.alphabet, "X", &[vertex(k, i), vertex(l, j)]);
                            (gen_word(&[x]), coeff_int(1))
                        })
                        .collect();
                    psi.insert(id, NCPoly::from_terms(&source.alphabet, terms));
                }
            }
        }
        for k in 1..=n {
            for l in 1..=n {
                let id = sym(&target.alphabet, "x", &[k as u32, l as u32]);
                psi.insert(id, block_projection(&source, m, k, l, 1));
            }
        }

        Ok(GraphIso {
            graph: g.clone(),
            copies: n,
            source,
            target,
            phi,
            psi,
        })
    }

    /// Sum of union-unitary entries over the rows of copy `k`, at column
    /// vertex `column` of copy `l`.
    pub fn projection(&self, k: usize, l: usize, column: usize) -> NCPoly {
        block_projection(&self.source, self.graph.vertex_count(), k, l, column)
    }
}

fn block_projection(source: &Presentation, m: usize, k: usize, l: usize, column: usize) -> NCPoly {
    let terms = (1..=m)
        .map(|r| {
            let x = sym(
                &source.alphabet,
                "X",
                &[((k - 1) * m + r) as u32, ((l - 1) * m + column) as u32],
            );
            (gen_word(&[x]), coeff_int(1))
        })
        .collect();
    NCPoly::from_terms(&source.alphabet, terms)
}

/// Orients a presentation and saturates it under its default bounds, with
/// any explicitly set caps applied on top.
pub fn complete_presentation(p: &Presentation, over: BoundsOverride) -> Result<RewriteSystem> {
    let rs = orient(p)?;
    let bounds = over.apply(rs.default_bounds());
    complete(&rs, bounds)
}

/// Maps every source relation through `images` and reduces it against the
/// target's completed ideal.
pub fn verify_hom(
    source: &Presentation,
    images: &GenImages<NCPoly>,
    target_rs: &RewriteSystem,
    label: &str,
) -> Result<CheckReport> {
    let items = source
        .relations
        .par_iter()
        .map(|r| {
            let image = apply_hom(r, images, false)?;
            poly_item("relation image", r.render(), target_rs, &image)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport {
        label: label.into(),
        items,
    })
}

/// Round-trips every generator through `psi . phi` and `phi . psi`, reducing
/// the difference from the generator itself in the matching algebra.
pub fn verify_inverse(
    source: &Presentation,
    target: &Presentation,
    phi: &GenImages<NCPoly>,
    psi: &GenImages<NCPoly>,
    source_rs: &RewriteSystem,
    target_rs: &RewriteSystem,
) -> Result<CheckReport> {
    let source_ids: Vec<SymbolId> = source.alphabet.ids().collect();
    let target_ids: Vec<SymbolId> = target.alphabet.ids().collect();
    let mut items = source_ids
        .par_iter()
        .map(|&id| {
            let g = source.generator_poly(id);
            let round = apply_hom(&apply_hom(&g, phi, false)?, psi, false)?;
            poly_item(
                "psi after phi",
                source.alphabet.get(id).render(),
                source_rs,
                &round.sub(&g)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut back = target_ids
        .par_iter()
        .map(|&id| {
            let g = target.generator_poly(id);
            let round = apply_hom(&apply_hom(&g, psi, false)?, phi, false)?;
            poly_item(
                "phi after psi",
                target.alphabet.get(id).render(),
                target_rs,
                &round.sub(&g)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    items.append(&mut back);
    Ok(CheckReport {
        label: "mutual inverses".into(),
        items,
    })
}

enum Payload {
    Poly(NCPoly),
    Scalar(Coeff),
    Tensor(TensorPoly),
}

/// Certifies the block-projection facts the inverse dictionary rests on:
/// the projections are independent of the chosen column, form two magic
/// families (orthogonal idempotents summing to one along rows and columns),
/// have the Kronecker counit and the matrix-style comultiplication, and the
/// union unitary vanishes on entry pairs that mix row or column blocks.
pub fn lemma_checks(iso: &GraphIso, source_rs: &RewriteSystem) -> Result<CheckReport> {
    let n = iso.copies;
    let m = iso.graph.vertex_count();
    let source = &iso.source;
    let delta = source.delta_images()?;
    let counit = source.counit_values()?;
    let p = |k: usize, l: usize| iso.projection(k, l, 1);
    let entry = |k: usize, i: usize, l: usize, j: usize| {
        sym(
            &source.alphabet,
            "X",
            &[((k - 1) * m + i) as u32, ((l - 1) * m + j) as u32],
        )
    };

    let mut checks: Vec<(&'static str, String, Payload)> = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            for i in 1..=m {
                for j in i + 1..=m {
                    checks.push((
                        "projection column",
                        format!("P({k},{l}) via column {i} vs {j}"),
                        Payload::Poly(iso.projection(k, l, i).sub(&iso.projection(k, l, j))?),
                    ));
                }
            }
        }
    }
    for l in 1..=n {
        for k in 1..=n {
            for kp in 1..=n {
                let mut prod = p(k, l).mul(&p(kp, l))?;
                if k == kp {
                    prod = prod.sub(&p(k, l))?;
                }
                checks.push((
                    "projection orthogonality",
                    format!("P({k},{l}) P({kp},{l})"),
                    Payload::Poly(prod),
                ));
                let mut flipped = p(l, k).mul(&p(l, kp))?;
                if k == kp {
                    flipped = flipped.sub(&p(l, k))?;
                }
                checks.push((
                    "projection orthogonality",
                    format!("P({l},{k}) P({l},{kp})"),
                    Payload::Poly(flipped),
                ));
            }
        }
    }
    let one = NCPoly::one(&source.alphabet);
    for l in 1..=n {
        let mut row = NCPoly::zero(&source.alphabet);
        let mut col = NCPoly::zero(&source.alphabet);
        for k in 1..=n {
            row = row.add(&p(k, l))?;
            col = col.add(&p(l, k))?;
        }
        checks.push((
            "projection partition",
            format!("sum over k of P(k,{l})"),
            Payload::Poly(row.sub(&one)?),
        ));
        checks.push((
            "projection partition",
            format!("sum over k of P({l},k)"),
            Payload::Poly(col.sub(&one)?),
        ));
    }
    for k in 1..=n {
        for l in 1..=n {
            let expected = coeff_int(if k == l { 1 } else { 0 });
            checks.push((
                "projection counit",
                format!("P({k},{l})"),
                Payload::Scalar(apply_counit(&p(k, l), counit)? - expected),
            ));
            let mut rhs = TensorPoly::zero(&source.alphabet, 2);
            for mid in 1..=n {
                rhs = rhs.add(&TensorPoly::from_polys(&[&p(k, mid), &p(mid, l)])?)?;
            }
            checks.push((
                "projection comultiplication",
                format!("P({k},{l})"),
                Payload::Tensor(apply_hom_tensor(&p(k, l), &delta, false)?.sub(&rhs)?),
            ));
        }
    }
    for k in 1..=n {
        for kp in k + 1..=n {
            for l in 1..=n {
                for i in 1..=m {
                    for ip in 1..=m {
                        for j in 1..=m {
                            for jp in 1..=m {
                                let pairs = [
                                    ("cross-block rows", entry(k, i, l, j), entry(kp, ip, l, jp)),
                                    (
                                        "cross-block columns",
                                        entry(l, j, k, i),
                                        entry(l, jp, kp, ip),
                                    ),
                                ];
                                for (check, a, b) in pairs {
                                    let ab = source.alphabet.get(a).render();
                                    let ba = source.alphabet.get(b).render();
                                    checks.push((
                                        check,
                                        format!("{ab} {ba}"),
                                        Payload::Poly(NCPoly::from_word(
                                            &source.alphabet,
                                            gen_word(&[a, b]),
                                        )),
                                    ));
                                    checks.push((
                                        check,
                                        format!("{ba} {ab}"),
                                        Payload::Poly(NCPoly::from_word(
                                            &source.alphabet,
                                            gen_word(&[b, a]),
                                        )),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let items = checks
        .into_par_iter()
        .map(|(check, subject, payload)| match payload {
            Payload::Poly(q) => poly_item(check, subject, source_rs, &q),
            Payload::Scalar(c) => Ok(scalar_item(check, subject, c)),
            Payload::Tensor(t) => tensor_item(check, subject, source_rs, &t),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport {
        label: "block projection lemmas".into(),
        items,
    })
}

fn map_tensor_legs(
    t: &TensorPoly,
    images: &GenImages<NCPoly>,
    source: &Arc<Alphabet>,
) -> Result<TensorPoly> {
    let mut acc = TensorPoly::zero(images.target(), t.rank());
    for (legs, c) in t.terms() {
        let mapped: Vec<NCPoly> = legs
            .iter()
            .map(|w| apply_hom(&NCPoly::from_word(source, w.clone()), images, false))
            .collect::<Result<_>>()?;
        let refs: Vec<&NCPoly> = mapped.iter().collect();
        acc = acc.add(&TensorPoly::from_polys(&refs)?.scale(c))?;
    }
    Ok(acc)
}

/// Checks that `phi` intertwines comultiplication: for every source
/// generator, the target comultiplication of its image agrees with the
/// legwise image of its source comultiplication, mod the tensor ideal.
pub fn coaction_check(
    source: &Presentation,
    phi: &GenImages<NCPoly>,
    target: &Presentation,
    target_rs: &RewriteSystem,
) -> Result<CheckReport> {
    let source_delta = source.delta_images()?;
    let target_delta = target.delta_images()?;
    let ids: Vec<SymbolId> = source.alphabet.ids().collect();
    let items = ids
        .par_iter()
        .map(|&id| {
            let image = phi
                .get(id)
                .ok_or_else(|| Error::Invalid("missing generator image".into()))?;
            let lhs = apply_hom_tensor(image, &target_delta, false)?;
            let spread = source_delta
                .get(id)
                .ok_or_else(|| Error::Invalid("missing comultiplication image".into()))?;
            let rhs = map_tensor_legs(spread, phi, &source.alphabet)?;
            tensor_item(
                "coaction",
                source.alphabet.get(id).render(),
                target_rs,
                &lhs.sub(&rhs)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport {
        label: "comultiplication intertwining".into(),
        items,
    })
}

/// Outcome of a full dictionary verification between two presentations.
#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub label: String,
    pub source_completion_degree: usize,
    pub source_saturated: bool,
    pub target_completion_degree: usize,
    pub target_saturated: bool,
    pub phi: CheckReport,
    pub psi: CheckReport,
    pub inverse: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<CheckReport>,
    pub coaction: CheckReport,
}

impl IsoReport {
    pub fn reports(&self) -> Vec<&CheckReport> {
        let mut out = vec![&self.phi, &self.psi, &self.inverse];
        if let Some(l) = &self.lemmas {
            out.push(l);
        }
        out.push(&self.coaction);
        out
    }

    pub fn passed(&self) -> bool {
        self.reports().iter().all(|r| r.passed())
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.reports().into_iter().find_map(|r| r.first_failure())
    }
}

/// Builds both presentations for `n` copies of `g`, completes them, and runs
/// the whole battery: relation preservation both ways, mutual inversion on
/// generators, the block-projection lemmas, and comultiplication
/// intertwining for `phi`.
pub fn verify_iso(g: &Graph, n: usize, over: BoundsOverride) -> Result<IsoReport> {
    let iso = GraphIso::new(g, n)?;
    let source_rs = complete_presentation(&iso.source, over)?;
    let target_rs = complete_presentation(&iso.target, over)?;
    Ok(IsoReport {
        label: format!("{} = {}", iso.source.label, iso.target.label),
        source_completion_degree: source_rs.completion_degree(),
        source_saturated: source_rs.saturated(),
        target_completion_degree: target_rs.completion_degree(),
        target_saturated: target_rs.saturated(),
        phi: verify_hom(&iso.source, &iso.phi, &target_rs, "phi preserves relations")?,
        psi: verify_hom(&iso.target, &iso.psi, &source_rs, "psi preserves relations")?,
        inverse: verify_inverse(
            &iso.source,
            &iso.target,
            &iso.phi,
            &iso.psi,
            &source_rs,
            &target_rs,
        )?,
        lemmas: Some(lemma_checks(&iso, &source_rs)?),
        coaction: coaction_check(&iso.source, &iso.phi, &iso.target, &target_rs)?,
    })
}

/// Generator dictionary between the free wreath product of a finite group
/// algebra and the grid presentation on `n x n x |G|` entries: `phi` sends
/// a group-like copy generator to its row sum of grid entries and a magic
/// entry to the grid entry at the identity; `psi` sends a grid entry to the
/// product of the matching copy generator and magic entry.
pub struct GroupIso {
    pub group: GroupSpec,
    pub copies: usize,
    pub source: Presentation,
    pub target: Presentation,
    pub phi: GenImages<NCPoly>,
    pub psi: GenImages<NCPoly>,
}

impl GroupIso {
    pub fn new(group: &GroupSpec, n: usize) -> Result<GroupIso> {
        if n == 0 {
            return Err(Error::Invalid("need at least one copy".into()));
        }
        let elements = group
            .elements()
            .ok_or_else(|| Error::InfiniteGroup(group.describe()))?;
        let source = free_wreath(&group_algebra(group)?, n)?;
        let target = a_n_g(group, n, AnGVariant::Finite)?;
        let identity = group.element_index(&group.identity())?;

        let mut phi = GenImages::new(&target.alphabet);
        for k in 1..=n {
            for e in &elements {
                let gi = group.element_index(e)?;
                let id = sym(&source.alphabet, &format!("u{k}"), &[gi]);
                let terms = (1..=n)
                    .map(|j| {
                        let a = sym(&target.alphabet, "a", &[k as u32, j as u32, gi]);
                        (gen_word(&[a]), coeff_int(1))
                    })
                    .collect();
                phi.insert(id, NCPoly::from_terms(&target.alphabet, terms));
            }
            for l in 1..=n {
                let id = sym(&source.alphabet, "x", &[k as u32, l as u32]);
                let a = sym(&target.alphabet, "a", &[k as u32, l as u32, identity]);
                phi.insert(id, target.generator_poly(a));
            }
        }

        let mut psi = GenImages::new(&source.alphabet);
        for i in 1..=n {
            for j in 1..=n {
                for e in &elements {
                    let gi = group.element_index(e)?;
                    let id = sym(&target.alphabet, "a", &[i as u32, j as u32, gi]);
                    let u = sym(&source.alphabet, &format!("u{i}"), &[gi]);
                    let x = sym(&source.alphabet, "x", &[i as u32, j as u32]);
                    psi.insert(id, NCPoly::from_word(&source.alphabet, gen_word(&[u, x])));
                }
            }
        }

        Ok(GroupIso {
            group: group.clone(),
            copies: n,
            source,
            target,
            phi,
            psi,
        })
    }
}

/// Same battery as [`verify_iso`] for the group-algebra dictionary; there is
/// no union unitary here, so the block-projection lemmas do not apply.
pub fn verify_group_iso(group: &GroupSpec, n: usize, over: BoundsOverride) -> Result<IsoReport> {
    let iso = GroupIso::new(group, n)?;
    let source_rs = complete_presentation(&iso.source, over)?;
    let target_rs = complete_presentation(&iso.target, over)?;
    Ok(IsoReport {
        label: format!("{} = {}", iso.source.label, iso.target.label),
        source_completion_degree: source_rs.completion_degree(),
        source_saturated: source_rs.saturated(),
        target_completion_degree: target_rs.completion_degree(),
        target_saturated: target_rs.saturated(),
        phi: verify_hom(&iso.source, &iso.phi, &target_rs, "phi preserves relations")?,
        psi: verify_hom(&iso.target, &iso.psi, &source_rs, "psi preserves relations")?,
        inverse: verify_inverse(
            &iso.source,
            &iso.target,
            &iso.phi,
            &iso.psi,
            &source_rs,
            &target_rs,
        )?,
        lemmas: None,
        coaction: coaction_check(&iso.source, &iso.phi, &iso.target, &target_rs)?,
    })
}
