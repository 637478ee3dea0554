//! Bounded-degree noncommutative rewriting.
//!
//! Relations are oriented into rules `lhs -> rhs` by their leading monomial
//! under the degree-lexicographic order, inter-reduced, and optionally
//! completed by resolving overlap ambiguities up to a degree bound. Normal
//! forms certify ideal membership: a [`Verdict::Zero`] answer comes with a
//! replayable trace expressing the input as a sum of `left·relation·right`
//! products. The converse direction is never claimed — a nonzero normal form
//! only reports [`Verdict::Inconclusive`].

use crate::error::{Error, Result};
use crate::ncalg::{render_word, same_alphabet, Alphabet, Coeff, Letter, NCPoly, TensorPoly, Word};
use crate::presentations::{GeneratorDoc, Presentation};
use num::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

pub const DEFAULT_MAX_RULES: usize = 20_000;

/// Degree and size caps for completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: usize,
    pub max_rules: usize,
}

/// Partial caps: unset fields fall back to the system's own defaults, so one
/// override can apply to presentations with different natural degrees.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundsOverride {
    pub max_degree: Option<usize>,
    pub max_rules: Option<usize>,
}

impl BoundsOverride {
    pub fn apply(&self, mut bounds: Bounds) -> Bounds {
        if let Some(d) = self.max_degree {
            bounds.max_degree = d;
        }
        if let Some(r) = self.max_rules {
            bounds.max_rules = r;
        }
        bounds
    }
}

/// A reduction rule: the leading word rewrites to a strictly smaller
/// polynomial, with the leading coefficient normalized away.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: NCPoly,
}

impl RewriteRule {
    fn orient(p: &NCPoly) -> Result<RewriteRule> {
        let monic = p.monic();
        let lhs = match monic.leading() {
            Some((w, _)) => w.clone(),
            None => return Err(Error::Invalid("cannot orient the zero polynomial".into())),
        };
        if lhs.is_empty() {
            return Err(Error::Invalid(
                "the relations force 1 = 0; the quotient algebra is trivial".into(),
            ));
        }
        let mut rhs = monic.neg();
        rhs.add_term(lhs.clone(), Coeff::one());
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &NCPoly {
        &self.rhs
    }

    pub fn degree(&self) -> usize {
        self.lhs.len()
    }

    fn as_poly(&self) -> NCPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), Coeff::one());
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Zero,
    Inconclusive,
}

/// One reduction step: the monomial `left · lhs(rule) · right` was rewritten.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub coeff: Coeff,
    pub left: Word,
    pub rule: usize,
    pub right: Word,
}

/// Outcome of an ideal-membership test, with the reduction log.
/// `Zero` is sound: replaying the trace reconstructs the input exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub verdict: Verdict,
    pub residual: NCPoly,
    pub trace: Vec<TraceStep>,
}

/// Membership outcome for tensors, legs reduced independently.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorMembership {
    pub verdict: Verdict,
    pub residual: TensorPoly,
}

fn contains_subword(hay: &Word, needle: &Word) -> bool {
    hay.len() >= needle.len() && hay.0.windows(needle.len()).any(|w| w == needle.0)
}

/// Proper overlaps where a suffix of `a` is a prefix of `b`; returns the
/// overlap length and the ambiguity word `a · b[t..]`.
fn overlaps(a: &Word, b: &Word) -> Vec<(usize, Word)> {
    let mut out = Vec::new();
    for t in 1..a.len().min(b.len()) {
        if a.0[a.len() - t..] == b.0[..t] {
            out.push((t, Word([&a.0[..], &b.0[t..]].concat())));
        }
    }
    out
}

/// Mutable rule store shared by orientation and completion. Rules are only
/// ever deactivated, never removed, so indices in flight stay valid.
#[derive(Debug, Clone)]
struct Work {
    alphabet: Arc<Alphabet>,
    rules: Vec<RewriteRule>,
    alive: Vec<bool>,
    live: usize,
    index: BTreeMap<Letter, Vec<usize>>,
}

impl Work {
    fn new(alphabet: Arc<Alphabet>) -> Self {
        Work {
            alphabet,
            rules: Vec::new(),
            alive: Vec::new(),
            live: 0,
            index: BTreeMap::new(),
        }
    }

    fn push_rule(&mut self, rule: RewriteRule) -> usize {
        let id = self.rules.len();
        self.index.entry(rule.lhs.0[0]).or_default().push(id);
        self.rules.push(rule);
        self.alive.push(true);
        self.live += 1;
        id
    }

    fn deactivate(&mut self, id: usize) {
        if self.alive[id] {
            self.alive[id] = false;
            self.live -= 1;
        }
    }

    /// Leftmost reducible position, lowest rule id on ties.
    fn find_reduction(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            if let Some(cands) = self.index.get(&w.0[pos]) {
                for &rid in cands {
                    if !self.alive[rid] {
                        continue;
                    }
                    let l = &self.rules[rid].lhs;
                    if pos + l.len() <= w.len() && w.0[pos..pos + l.len()] == l.0[..] {
                        return Some((rid, pos));
                    }
                }
            }
        }
        None
    }

    /// Reduces the leading monomial until it is irreducible, then peels it
    /// off; terminates because every step strictly lowers the leading word.
    fn reduce(&self, p: &NCPoly, mut trace: Option<&mut Vec<TraceStep>>) -> NCPoly {
        let mut work = p.clone();
        let mut nf = NCPoly::zero(&self.alphabet);
        while let Some((w, c)) = work.leading().map(|(w, c)| (w.clone(), c.clone())) {
            match self.find_reduction(&w) {
                Some((rid, pos)) => {
                    let len = self.rules[rid].lhs.len();
                    let left = Word(w.0[..pos].to_vec());
                    let right = Word(w.0[pos + len..].to_vec());
                    work.add_term(w, -c.clone());
                    for (m, d) in self.rules[rid].rhs.terms() {
                        work.add_term(left.concat(m).concat(&right), c.clone() * d.clone());
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep {
                            coeff: c,
                            left,
                            rule: rid,
                            right,
                        });
                    }
                }
                None => {
                    work.add_term(w.clone(), -c.clone());
                    nf.add_term(w, c);
                }
            }
        }
        nf
    }

    /// Reduces `p`, orients the remainder, and installs it, requeueing any
    /// rule whose left side just became reducible. Returns the new rule id.
    fn add_poly(&mut self, p: &NCPoly, pending: &mut VecDeque<NCPoly>) -> Result<Option<usize>> {
        let r = self.reduce(p, None);
        if r.is_zero() {
            return Ok(None);
        }
        let rule = RewriteRule::orient(&r)?;
        for rid in 0..self.rules.len() {
            if self.alive[rid] && contains_subword(&self.rules[rid].lhs, &rule.lhs) {
                pending.push_back(self.rules[rid].as_poly());
                self.deactivate(rid);
            }
        }
        Ok(Some(self.push_rule(rule)))
    }

    /// Brings every right side to normal form; left sides are untouched, so
    /// inter-reducedness is preserved.
    fn tail_reduce(&mut self) {
        for rid in 0..self.rules.len() {
            if !self.alive[rid] {
                continue;
            }
            let rhs = self.rules[rid].rhs.clone();
            self.rules[rid].rhs = self.reduce(&rhs, None);
        }
    }

    fn finish(mut self, completion_degree: usize, saturated: bool) -> RewriteSystem {
        self.tail_reduce();
        let mut compact = Work::new(Arc::clone(&self.alphabet));
        for (rid, rule) in self.rules.into_iter().enumerate() {
            if self.alive[rid] {
                compact.push_rule(rule);
            }
        }
        RewriteSystem {
            work: compact,
            completion_degree,
            saturated,
        }
    }
}

/// An inter-reduced, possibly completed rewriting system over one alphabet.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    work: Work,
    completion_degree: usize,
    saturated: bool,
}

/// Orients a presentation's relations and inter-reduces them. The result
/// depends only on the presentation, not on any completion bound.
pub fn orient(p: &Presentation) -> Result<RewriteSystem> {
    let mut work = Work::new(Arc::clone(&p.alphabet));
    let mut pending: VecDeque<NCPoly> = p.relations.iter().cloned().collect();
    while let Some(q) = pending.pop_front() {
        work.add_poly(&q, &mut pending)?;
    }
    let degree = work
        .rules
        .iter()
        .zip(&work.alive)
        .filter(|(_, a)| **a)
        .map(|(r, _)| r.degree())
        .max()
        .unwrap_or(0);
    Ok(work.finish(degree, false))
}

/// Resolves all overlap ambiguities whose ambiguity word has degree at most
/// `bounds.max_degree`. If the rule cap is hit the partial system comes back
/// with `saturated = false`; otherwise the system is confluent up to the
/// bound.
pub fn complete(rs: &RewriteSystem, bounds: Bounds) -> Result<RewriteSystem> {
    if bounds.max_degree < rs.max_rule_degree() {
        return Err(Error::Invalid(format!(
            "completion degree {} is below the largest rule degree {}",
            bounds.max_degree,
            rs.max_rule_degree()
        )));
    }
    let mut work = Work::new(Arc::clone(rs.alphabet()));
    for rule in rs.rules() {
        work.push_rule(rule.clone());
    }
    // queue ordered by ambiguity word, so shorter overlaps resolve first
    let mut queue: BTreeSet<(Word, usize, usize, usize)> = BTreeSet::new();
    let enqueue =
        |queue: &mut BTreeSet<(Word, usize, usize, usize)>, work: &Work, i: usize, j: usize| {
            for (t, w) in overlaps(&work.rules[i].lhs, &work.rules[j].lhs) {
                if w.len() <= bounds.max_degree {
                    queue.insert((w, i, j, t));
                }
            }
        };
    for i in 0..work.rules.len() {
        for j in 0..work.rules.len() {
            enqueue(&mut queue, &work, i, j);
        }
    }

    let mut pending: VecDeque<NCPoly> = VecDeque::new();
    let mut truncated = false;
    loop {
        if work.live > bounds.max_rules {
            truncated = true;
            break;
        }
        if let Some(q) = pending.pop_front() {
            if let Some(new_id) = work.add_poly(&q, &mut pending)? {
                for k in 0..work.rules.len() {
                    if work.alive[k] {
                        enqueue(&mut queue, &work, new_id, k);
                        if k != new_id {
                            enqueue(&mut queue, &work, k, new_id);
                        }
                    }
                }
            }
            continue;
        }
        let Some(entry) = queue.iter().next().cloned() else {
            break;
        };
        queue.remove(&entry);
        let (_, i, j, t) = entry;
        if !work.alive[i] || !work.alive[j] {
            continue;
        }
        // the ambiguity word reduces two ways; their difference must vanish
        let (lhs_i, lhs_j) = (&work.rules[i].lhs, &work.rules[j].lhs);
        let suffix = Word(lhs_j.0[t..].to_vec());
        let prefix = Word(lhs_i.0[..lhs_i.len() - t].to_vec());
        let mut sp = NCPoly::zero(&work.alphabet);
        for (m, c) in work.rules[i].rhs.terms() {
            sp.add_term(m.concat(&suffix), c.clone());
        }
        for (m, c) in work.rules[j].rhs.terms() {
            sp.add_term(prefix.concat(m), -c.clone());
        }
        pending.push_back(sp);
    }
    let saturated = !truncated && queue.is_empty() && pending.is_empty();
    Ok(work.finish(bounds.max_degree, saturated))
}

impl RewriteSystem {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.work.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.work.rules
    }

    pub fn rule(&self, id: usize) -> &RewriteRule {
        &self.work.rules[id]
    }

    pub fn completion_degree(&self) -> usize {
        self.completion_degree
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn max_rule_degree(&self) -> usize {
        self.work
            .rules
            .iter()
            .map(|r| r.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn default_bounds(&self) -> Bounds {
        Bounds {
            max_degree: 2 * self.max_rule_degree() + 2,
            max_rules: DEFAULT_MAX_RULES,
        }
    }

    fn check_alphabet(&self, other: &Arc<Alphabet>) -> Result<()> {
        if same_alphabet(&self.work.alphabet, other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.check_alphabet(p.alphabet())?;
        Ok(self.work.reduce(p, None))
    }

    pub fn is_zero_mod(&self, p: &NCPoly) -> Result<Membership> {
        self.check_alphabet(p.alphabet())?;
        let mut trace = Vec::new();
        let residual = self.work.reduce(p, Some(&mut trace));
        let verdict = if residual.is_zero() {
            Verdict::Zero
        } else {
            Verdict::Inconclusive
        };
        Ok(Membership {
            verdict,
            residual,
            trace,
        })
    }

    /// Reduces every leg of every term and recollects. Sound for membership
    /// in the ideal of the tensor power because that ideal is generated by
    /// relations acting on a single leg.
    pub fn is_zero_mod_tensor(&self, t: &TensorPoly) -> Result<TensorMembership> {
        self.check_alphabet(t.alphabet())?;
        let mut total = TensorPoly::zero(&self.work.alphabet, t.rank());
        for (legs, c) in t.terms() {
            let reduced: Vec<NCPoly> = legs
                .iter()
                .map(|w| {
                    self.work
                        .reduce(&NCPoly::from_word(&self.work.alphabet, w.clone()), None)
                })
                .collect();
            let refs: Vec<&NCPoly> = reduced.iter().collect();
            let prod = TensorPoly::from_polys(&refs)?;
            total = total.add(&prod.scale(c))?;
        }
        let verdict = if total.is_zero() {
            Verdict::Zero
        } else {
            Verdict::Inconclusive
        };
        Ok(TensorMembership {
            verdict,
            residual: total,
        })
    }

    /// Reconstructs the input of a membership run from its certificate:
    /// sum of `coeff · left · (lhs − rhs) · right` over the trace, plus the
    /// residual.
    pub fn replay(&self, m: &Membership) -> Result<NCPoly> {
        self.check_alphabet(m.residual.alphabet())?;
        let mut acc = m.residual.clone();
        for step in &m.trace {
            let rule = &self.work.rules[step.rule];
            acc.add_term(
                step.left.concat(&rule.lhs).concat(&step.right),
                step.coeff.clone(),
            );
            for (w, d) in rule.rhs.terms() {
                acc.add_term(
                    step.left.concat(w).concat(&step.right),
                    -(step.coeff.clone() * d.clone()),
                );
            }
        }
        Ok(acc)
    }

    pub fn render_trace(&self, trace: &[TraceStep]) -> String {
        let mut out = String::new();
        for step in trace {
            let word = step
                .left
                .concat(&self.work.rules[step.rule].lhs)
                .concat(&step.right);
            out.push_str(&format!(
                "{} → rule#{}\n",
                render_word(&self.work.alphabet, &word),
                step.rule
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RuleDoc {
    pub lhs: String,
    pub rhs: String,
}

/// Serialization form of a rewrite system, self-contained with its alphabet.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RewriteSystemDoc {
    pub generators: Vec<GeneratorDoc>,
    pub rules: Vec<RuleDoc>,
    pub completion_degree: usize,
    pub saturated: bool,
}

fn parse_word(alphabet: &Arc<Alphabet>, s: &str) -> Result<Word> {
    let p = NCPoly::parse(alphabet, s)?;
    match p.leading() {
        Some((w, c)) if p.num_terms() == 1 && c.is_one() => Ok(w.clone()),
        _ => Err(Error::Parse(format!("not a word: {s:?}"))),
    }
}

impl RewriteSystem {
    pub fn to_doc(&self) -> RewriteSystemDoc {
        let generators = self
            .work
            .alphabet
            .symbols()
            .iter()
            .map(|s| GeneratorDoc {
                name: s.name.clone(),
                indices: s.indices.clone(),
                selfadjoint: s.selfadjoint,
            })
            .collect();
        let rules = self
            .work
            .rules
            .iter()
            .map(|r| RuleDoc {
                lhs: render_word(&self.work.alphabet, &r.lhs),
                rhs: r.rhs.render(),
            })
            .collect();
        RewriteSystemDoc {
            generators,
            rules,
            completion_degree: self.completion_degree,
            saturated: self.saturated,
        }
    }

    pub fn from_doc(doc: &RewriteSystemDoc) -> Result<RewriteSystem> {
        let mut alphabet = Alphabet::new();
        for g in &doc.generators {
            alphabet.add(crate::ncalg::GenSymbol::new(
                &g.name,
                &g.indices,
                g.selfadjoint,
            ))?;
        }
        let alphabet = Arc::new(alphabet);
        let mut work = Work::new(Arc::clone(&alphabet));
        for r in &doc.rules {
            let lhs = parse_word(&alphabet, &r.lhs)?;
            if lhs.is_empty() {
                return Err(Error::Parse("rule with empty left side".into()));
            }
            let rhs = NCPoly::parse(&alphabet, &r.rhs)?;
            work.push_rule(RewriteRule { lhs, rhs });
        }
        Ok(RewriteSystem {
            work,
            completion_degree: doc.completion_degree,
            saturated: doc.saturated,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("rewrite system doc serializes")
    }

    pub fn from_json(text: &str) -> Result<RewriteSystem> {
        let doc: RewriteSystemDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        RewriteSystem::from_doc(&doc)
    }
}
