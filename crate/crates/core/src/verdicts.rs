//! Decision procedures for `Sp`-distinction with replayable certificates.
//!
//! Every procedure is one-directional where the underlying facts are: a
//! definite [`Outcome`] names the [`Rule`] that closes the case, and every
//! other case is reported as [`Outcome::Inconclusive`].

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, validation, Result};
use crate::half::HalfInt;
use crate::orbits::{exists_relevant, glf_half_factor, sp_factor, BlockSpec, SearchOutcome};
use crate::segcalc::{
    conj_symplectic_sqint, glf_dist_generic, glf_dist_sqint, is_ladder, meets_reducibility_set, sp_dist_ladder,
    CuspLine, LineClass, Multisegment, Segment,
};
use crate::signgraph::{decompose, path_v0, path_v1, tau, walk, PathForm, Pattern, SignTuple};
use crate::tri::Tri;
use crate::Config;

// ---------------------------------------------------------------------------
// Verdicts.

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Distinguished,
    NotDistinguished,
    Inconclusive,
}

/// The fact a definite verdict rests on.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Discrete series whose Jordan block and signs meet a vanishing condition.
    DiscreteSeriesVanishing,
    /// Tempered representation with a Jordan entry meeting a vanishing condition.
    TemperedVanishing,
    /// Even ladder fiber: distinction of the fiber forces the ladder pairing.
    EvenLadderPairing,
    /// Even paired ladder, `s` even, irreducible induction: distinguished.
    EvenLadderEvenHalf,
    /// Even paired ladder, `s` odd, irreducible induction: not distinguished.
    EvenLadderOddHalf,
    /// Odd middle segment length forces nontrivial partial cuspidal support.
    PartialCuspidalSupport,
    /// Odd ladder with a trivial partial cuspidal support fiber.
    OddLadderVanishing,
    /// Speh representation with `m` odd.
    SpehOdd,
    /// Speh representation with `m` even and irreducible induction.
    SpehEven,
    /// Standard module with irreducible generic `GL` part.
    StandardModule,
    /// Induction from a `GL(F)`-half part and an `Sp`-distinguished part.
    HereditaryInduction,
    /// Segments on pairwise unrelated lines.
    DistinctLines,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DsCondition {
    /// `t` is odd.
    OddT,
    /// `x_{2i-1} > x_{2i} + 2` for some `i ≤ t/2`.
    JordanGap,
    /// `ε_{t+2} = ε_{t+1}`.
    RepeatedSign,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemperedCondition {
    NonSelfDual,
    ParityMismatch,
    Dominates,
}

/// Base of the stable base change fiber of a ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum FiberBase {
    Trivial,
    /// `τ^+(ρ, a)` for a middle segment of even length `a`.
    TauPlus { line: String, a: usize },
    NontrivialPartialSupport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub gl_part: Multisegment,
    #[serde(flatten)]
    pub base: FiberBase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    DiscreteSeries {
        line: String,
        condition: DsCondition,
        t: usize,
        /// 1-based index at which the condition holds.
        witness: usize,
        jordan: Vec<i64>,
        eps: SignTuple,
    },
    Tempered {
        segment: Segment,
        a: usize,
        condition: TemperedCondition,
        jordan: Vec<i64>,
        /// The domination condition holds only because `jordan` is empty.
        #[serde(rename = "vacuous-bound")]
        vacuous: bool,
    },
    Ladder {
        ladder: Multisegment,
        t: usize,
        pairing: Option<bool>,
        /// `Δ_s ∩ 𝒮 = ∅` for the even case.
        irreducible: Option<bool>,
        middle: Option<Segment>,
        support: Option<Box<Verdict>>,
    },
    Speh {
        delta: Segment,
        m: usize,
        ladder: Multisegment,
        inner: Box<Verdict>,
    },
    StandardModule {
        twisted: Multisegment,
        involution: Option<Vec<usize>>,
        /// Every fixed point of `involution` has exponent zero.
        tempered: Option<bool>,
    },
    Hereditary {
        part1: Multisegment,
        part2: Multisegment,
    },
    DistinctLines {
        twisted: Vec<Segment>,
        verdicts: Vec<Tri>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub theorem: Option<Rule>,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    fn definite(outcome: Outcome, rule: Rule, certificate: Certificate) -> Self {
        Verdict { outcome, theorem: Some(rule), certificate, notes: Vec::new() }
    }

    fn inconclusive(certificate: Certificate, note: impl Into<String>) -> Self {
        Verdict { outcome: Outcome::Inconclusive, theorem: None, certificate, notes: vec![note.into()] }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_distinguished(&self) -> bool {
        self.outcome == Outcome::Distinguished
    }

    pub fn is_not_distinguished(&self) -> bool {
        self.outcome == Outcome::NotDistinguished
    }

    /// Recomputes the verdict from the data in its certificate.
    pub fn replay(&self, config: &Config) -> Result<bool> {
        let again = match &self.certificate {
            Certificate::None => return Ok(self.outcome == Outcome::Inconclusive),
            Certificate::DiscreteSeries { condition, t, witness, jordan, eps, .. } => {
                return Ok(self.outcome == Outcome::NotDistinguished
                    && line_t(eps) == Some(*t)
                    && ds_condition(jordan, eps, *t) == Some((*condition, *witness)));
            }
            Certificate::Tempered { segment, condition, jordan, vacuous, .. } => {
                return Ok(self.outcome == Outcome::NotDistinguished
                    && tempered_condition(segment, jordan) == Some((*condition, *vacuous)));
            }
            Certificate::Ladder { ladder, .. } => ladder_bc(ladder)?.verdict,
            Certificate::Speh { delta, m, .. } => speh_verdict(delta, *m)?,
            Certificate::StandardModule { twisted, .. } => {
                standard_module_verdict(&twisted.shift(HalfInt::HALF), config)?
            }
            Certificate::Hereditary { part1, part2 } => hered_sufficient(part1, part2, config)?,
            Certificate::DistinctLines { twisted, .. } => {
                let m: Multisegment = twisted.iter().map(|s| s.shift(HalfInt::HALF)).collect();
                distinct_lines_verdict(&m, config)?
            }
        };
        Ok(again == *self)
    }
}

// ---------------------------------------------------------------------------
// Admissible data.

/// One Jordan block: `a_1 > ⋯ > a_k ≥ 0` with signs `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumEntry {
    pub line: CuspLine,
    pub a: Vec<HalfInt>,
    pub eps: SignTuple,
}

impl DatumEntry {
    pub fn k(&self) -> usize {
        self.a.len()
    }
}

/// A discrete series with trivial partial cuspidal support, one entry per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleDatum {
    entries: Vec<DatumEntry>,
}

impl AdmissibleDatum {
    /// Checks every clause and names the first violated one.
    pub fn new(entries: Vec<DatumEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &entries {
            let id = &e.line.id;
            if !seen.insert(id.clone()) {
                return Err(validation("distinct lines", format!("line {id} appears twice")));
            }
            let k = e.k();
            if k == 0 || e.eps.len() != k {
                return Err(validation(
                    "block length",
                    format!("line {id}: {k} exponents and {} signs", e.eps.len()),
                ));
            }
            if e.a.windows(2).any(|w| w[0] <= w[1]) || e.a[k - 1] < 0 {
                return Err(validation("strictly decreasing", format!("line {id}: exponents must decrease to ≥ 0")));
            }
            match e.line.class {
                LineClass::Odd => {
                    if k % 2 == 1 {
                        return Err(validation("odd line block size", format!("line {id}: k = {k} is odd")));
                    }
                    if let Some(x) = e.a.iter().find(|x| !x.is_integer()) {
                        return Err(validation("odd line integrality", format!("line {id}: {x} is not an integer")));
                    }
                }
                LineClass::Even => {
                    if let Some(x) = e.a.iter().find(|x| x.is_integer()) {
                        return Err(validation("even line half-integrality", format!("line {id}: {x} is an integer")));
                    }
                }
                LineClass::NonSelfDual(_) => {
                    return Err(validation("self-dual line", format!("line {id} is not conjugate-self-dual")));
                }
            }
            let t = tau(&e.eps);
            if t != 0 && t != 1 {
                return Err(validation("sign component", format!("line {id}: {} has index {t}", e.eps)));
            }
        }
        Ok(AdmissibleDatum { entries })
    }

    pub fn entries(&self) -> &[DatumEntry] {
        &self.entries
    }

    pub fn entry(&self, line: &str) -> Option<&DatumEntry> {
        self.entries.iter().find(|e| &*e.line.id == line)
    }

    /// Total length of the `GL` part of `I_π`, that is `Σ (2a_i + 1) / 2`.
    pub fn support(&self) -> usize {
        self.entries.iter().flat_map(|e| jordan(e)).sum::<i64>() as usize / 2
    }
}

/// `x_i = 2a_i + 1` on `line`.
pub fn jordan_of(d: &AdmissibleDatum, line: &str) -> Result<Vec<i64>> {
    let e = d.entry(line).ok_or_else(|| precondition("jordan set", format!("no entry for line {line}")))?;
    Ok(jordan(e))
}

fn jordan(e: &DatumEntry) -> Vec<i64> {
    e.a.iter().map(|x| x.doubled() + 1).collect()
}

/// `t` for one line, `None` when `k > 1` and the signs alternate throughout.
pub fn line_t(eps: &SignTuple) -> Option<usize> {
    if eps.len() == 1 {
        return Some(1);
    }
    let (_, blocks) = decompose(eps)?;
    (blocks.len() > 1).then_some(blocks[0])
}

fn ds_condition(x: &[i64], eps: &SignTuple, t: usize) -> Option<(DsCondition, usize)> {
    if t % 2 == 1 {
        return Some((DsCondition::OddT, t));
    }
    if let Some(i) = (1..=t / 2).find(|&i| x[2 * i - 2] > x[2 * i - 1] + 2) {
        return Some((DsCondition::JordanGap, i));
    }
    if t + 2 <= eps.len() && eps.get(t + 2) == eps.get(t + 1) {
        return Some((DsCondition::RepeatedSign, t + 1));
    }
    None
}

/// First line meeting a vanishing condition.
fn ds_witness(d: &AdmissibleDatum) -> Option<(&DatumEntry, usize, DsCondition, usize)> {
    d.entries.iter().find_map(|e| {
        let t = line_t(&e.eps)?;
        let (c, w) = ds_condition(&jordan(e), &e.eps, t)?;
        Some((e, t, c, w))
    })
}

/// Discrete series vanishing from Jordan blocks and signs.
pub fn ds_vanishing(d: &AdmissibleDatum) -> Verdict {
    match ds_witness(d) {
        Some((e, t, condition, witness)) => Verdict::definite(
            Outcome::NotDistinguished,
            Rule::DiscreteSeriesVanishing,
            Certificate::DiscreteSeries {
                line: e.line.id.to_string(),
                condition,
                t,
                witness,
                jordan: jordan(e),
                eps: e.eps.clone(),
            },
        ),
        None => Verdict::inconclusive(Certificate::None, "no line meets a vanishing condition"),
    }
}

/// Segments of `I_ρ(a, ε, ι)` for one line, in history order, plus the
/// leftover `[-a_z, -1/2]` when `ε` reaches `f_1`.
pub fn line_segments(e: &DatumEntry, path: &Pattern) -> Result<(Vec<Segment>, Option<Segment>)> {
    let (sink, history) = walk(&e.eps, path)?;
    let target = tau(&e.eps);
    if sink != SignTuple::alternating(target as usize) {
        return Err(precondition("path sink", format!("{path:?} ends at {sink}, not f_{target}")));
    }
    let a = |i: usize| e.a[i - 1];
    let segs = history
        .pairs()
        .iter()
        .map(|&(x, y)| Segment::new(e.line.clone(), -a(x), a(y)))
        .collect::<Result<Vec<_>>>()?;
    let used: HashSet<usize> = history.pairs().iter().flat_map(|&(x, y)| [x, y]).collect();
    let leftover = (1..=e.k())
        .find(|i| !used.contains(i))
        .map(|z| Segment::new(e.line.clone(), -a(z), -HalfInt::HALF))
        .transpose()?;
    Ok((segs, leftover))
}

/// Blocks of `I_π` for one path per line, concatenated in entry order.
pub fn build_i_pi(d: &AdmissibleDatum, paths: &[Pattern]) -> Result<Vec<Segment>> {
    if paths.len() != d.entries.len() {
        return Err(precondition("path choice", format!("{} paths for {} lines", paths.len(), d.entries.len())));
    }
    let mut out = Vec::new();
    for (e, p) in d.entries.iter().zip(paths) {
        let (segs, leftover) = line_segments(e, p)?;
        out.extend(segs);
        out.extend(leftover);
    }
    Ok(out)
}

/// The default constrained path for a line.
pub fn default_path(eps: &SignTuple, form: PathForm) -> Result<Pattern> {
    match tau(eps) {
        0 => path_v0(eps, form),
        _ if *eps == SignTuple::alternating(1) => Ok(Pattern::default()),
        _ => path_v1(eps, form),
    }
}

/// Result of replaying a vanishing verdict through the orbit engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Replay {
    NotApplicable,
    Replayed {
        line: String,
        condition: DsCondition,
        paths: Vec<Pattern>,
        blocks: Vec<Segment>,
        outcome: SearchOutcome,
    },
}

impl Replay {
    pub fn is_none_certified(&self) -> bool {
        matches!(self, Replay::Replayed { outcome, .. } if outcome.is_none_certified())
    }
}

/// Realizes the datum as a quotient of `I_π` built from constrained paths
/// and searches its inducing data for a relevant orbit.
///
/// The witness line goes last; when its path ends at `x = 1` the leftover
/// segment is moved in front of the final nested family.
pub fn cross_validate_ds(d: &AdmissibleDatum, config: &Config) -> Result<Replay> {
    let Some((target, t, condition, _)) = ds_witness(d) else {
        return Ok(Replay::NotApplicable);
    };
    let form = if condition == DsCondition::RepeatedSign { PathForm::Variant } else { PathForm::Standard };
    let mut blocks = Vec::new();
    let mut paths = Vec::new();
    for e in d.entries.iter().filter(|e| e.line.id != target.line.id) {
        let p = default_path(&e.eps, PathForm::Standard)?;
        let (segs, leftover) = line_segments(e, &p)?;
        blocks.extend(segs);
        blocks.extend(leftover);
        paths.push(p);
    }
    let p = default_path(&target.eps, form)?;
    let (mut segs, leftover) = line_segments(target, &p)?;
    if let Some(l) = leftover {
        if p.labels().last() == Some(&1) {
            let k = if form == PathForm::Variant { t + 1 } else { t };
            let at = segs.len().saturating_sub(k);
            segs.insert(at, l);
        } else {
            segs.push(l);
        }
    }
    blocks.extend(segs);
    paths.push(p);
    let specs: Vec<BlockSpec> = blocks.iter().cloned().map(BlockSpec::L).collect();
    let outcome = exists_relevant(&specs, config)?;
    Ok(Replay::Replayed { line: target.line.id.to_string(), condition, paths, blocks, outcome })
}

// ---------------------------------------------------------------------------
// Tempered representations.

/// A tempered representation `δ_1 × ⋯ × δ_t ⋊ π_ds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemperedDatum {
    gl_pairs: Vec<Segment>,
    ds: AdmissibleDatum,
}

impl TemperedDatum {
    pub fn new(gl_pairs: Vec<Segment>, ds: AdmissibleDatum) -> Result<Self> {
        if let Some(s) = gl_pairs.iter().find(|s| s.exponent() != HalfInt::ZERO) {
            return Err(validation("centered segment", format!("{s} has nonzero exponent")));
        }
        Ok(TemperedDatum { gl_pairs, ds })
    }

    pub fn gl_pairs(&self) -> &[Segment] {
        &self.gl_pairs
    }

    pub fn ds(&self) -> &AdmissibleDatum {
        &self.ds
    }
}

fn tempered_condition(s: &Segment, jordan: &[i64]) -> Option<(TemperedCondition, bool)> {
    if !s.line().is_self_dual() {
        return Some((TemperedCondition::NonSelfDual, false));
    }
    let a = s.len() as i64;
    if !jordan.is_empty() && jordan.iter().all(|b| (a - b).rem_euclid(2) == 1) {
        return Some((TemperedCondition::ParityMismatch, false));
    }
    if jordan.iter().all(|&b| b <= a) {
        return Some((TemperedCondition::Dominates, jordan.is_empty()));
    }
    None
}

/// Tempered vanishing, checked over the `GL` pairs.
pub fn tempered_vanishing(td: &TemperedDatum) -> Verdict {
    for s in &td.gl_pairs {
        let jordan = td.ds.entry(&s.line().id).map(jordan).unwrap_or_default();
        if let Some((condition, vacuous)) = tempered_condition(s, &jordan) {
            let v = Verdict::definite(
                Outcome::NotDistinguished,
                Rule::TemperedVanishing,
                Certificate::Tempered { segment: s.clone(), a: s.len(), condition, jordan, vacuous },
            );
            return if vacuous { v.with_note("vacuous-bound: the line carries no discrete series entries") } else { v };
        }
    }
    Verdict::inconclusive(Certificate::None, "no GL pair meets a vanishing condition")
}

// ---------------------------------------------------------------------------
// Ladders and Speh representations.

/// Stable base change analysis of a conjugate-self-dual ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderBc {
    pub in_image: Tri,
    pub fiber: Option<Fiber>,
    pub verdict: Verdict,
}

fn is_conj_self_dual_ladder(segs: &[Segment]) -> bool {
    let t = segs.len();
    (0..t).all(|i| segs[t - 1 - i] == segs[i].conj_dual())
}

/// Ladder order: beginnings and ends strictly decreasing.
fn ladder_order(m: &Multisegment) -> Vec<Segment> {
    m.segments().to_vec()
}

pub fn ladder_bc(m: &Multisegment) -> Result<LadderBc> {
    if m.is_empty() || !is_ladder(m) {
        return Err(precondition("ladder", format!("{m} is not a nonempty ladder")));
    }
    let segs = ladder_order(m);
    if !is_conj_self_dual_ladder(&segs) {
        return Err(precondition("conjugate self-duality", format!("{m} is not conjugate-self-dual")));
    }
    let t = segs.len();
    let base_cert = |pairing, irreducible, middle, support| Certificate::Ladder {
        ladder: m.clone(),
        t,
        pairing,
        irreducible,
        middle,
        support,
    };
    let gl_part: Multisegment = segs[..t / 2].iter().cloned().collect();

    if t % 2 == 0 {
        let fiber = Fiber { gl_part: gl_part.clone(), base: FiberBase::Trivial };
        let pairing = sp_dist_ladder(m)?;
        let verdict = if !pairing {
            Verdict::definite(
                Outcome::NotDistinguished,
                Rule::EvenLadderPairing,
                base_cert(Some(false), None, None, None),
            )
        } else {
            let s = t / 2;
            let irreducible = !meets_reducibility_set(&segs[s - 1]);
            match (s % 2 == 0, irreducible) {
                (true, true) => {
                    let support = hered_sufficient(&Multisegment::empty(), &gl_part, &Config::default())?;
                    Verdict::definite(
                        Outcome::Distinguished,
                        Rule::EvenLadderEvenHalf,
                        base_cert(Some(true), Some(true), None, Some(Box::new(support))),
                    )
                }
                (true, false) => Verdict::inconclusive(
                    base_cert(Some(true), Some(false), None, None),
                    "τ′ distinguished, irreducibility fails",
                ),
                (false, true) => Verdict::definite(
                    Outcome::NotDistinguished,
                    Rule::EvenLadderOddHalf,
                    base_cert(Some(true), Some(true), None, None),
                ),
                (false, false) => Verdict::inconclusive(
                    base_cert(Some(true), Some(false), None, None),
                    "s odd and the induced representation may reduce",
                ),
            }
        };
        return Ok(LadderBc { in_image: Tri::Yes, fiber: Some(fiber), verdict });
    }

    let k = (t - 1) / 2;
    let mid = segs[k].clone();
    let in_image = Tri::from(conj_symplectic_sqint(&mid)?);
    if in_image.is_no() {
        let verdict = Verdict::inconclusive(
            base_cert(None, None, Some(mid), None),
            "not in the image of stable base change",
        );
        return Ok(LadderBc { in_image, fiber: None, verdict });
    }
    let a = mid.len();
    let base = if a % 2 == 1 {
        FiberBase::NontrivialPartialSupport
    } else {
        FiberBase::TauPlus { line: mid.line().id.to_string(), a }
    };
    let fiber = Fiber { gl_part, base };
    let verdict = if a % 2 == 1 {
        Verdict::definite(
            Outcome::NotDistinguished,
            Rule::PartialCuspidalSupport,
            base_cert(None, None, Some(mid), None),
        )
    } else if k == 0 || segs[k - 1].a() != HalfInt::from_doubled(3) {
        Verdict::definite(
            Outcome::NotDistinguished,
            Rule::OddLadderVanishing,
            base_cert(None, None, Some(mid), None),
        )
    } else {
        Verdict::inconclusive(base_cert(None, None, Some(mid), None), "b(Δ_k) = ν^{3/2}ρ is not covered")
    };
    Ok(LadderBc { in_image, fiber: Some(fiber), verdict })
}

/// The Speh ladder `(ν^{(m-1)/2}δ, ..., ν^{(1-m)/2}δ)`.
pub fn speh_ladder(delta: &Segment, m: usize) -> Multisegment {
    (0..m).map(|i| delta.shift(HalfInt::from_doubled(m as i64 - 1 - 2 * i as i64))).collect()
}

/// Speh representations `U(δ, m)` in the image of stable base change.
pub fn speh_verdict(delta: &Segment, m: usize) -> Result<Verdict> {
    if m == 0 {
        return Err(precondition("speh length", "m must be positive"));
    }
    if !delta.is_conj_self_dual() || delta.exponent() != HalfInt::ZERO {
        return Err(precondition("speh self-duality", format!("{delta} is not conjugate-self-dual")));
    }
    let ladder = speh_ladder(delta, m);
    let bc = ladder_bc(&ladder)?;
    if bc.in_image.is_no() {
        return Err(precondition("speh base change image", format!("{delta} is not conjugate-symplectic")));
    }
    let inner = Box::new(bc.verdict);
    let cert = Certificate::Speh { delta: delta.clone(), m, ladder, inner: inner.clone() };
    Ok(match (m % 2, inner.outcome) {
        (1, _) => Verdict::definite(Outcome::NotDistinguished, Rule::SpehOdd, cert),
        (0, Outcome::Inconclusive) => {
            Verdict { outcome: Outcome::Inconclusive, theorem: None, certificate: cert, notes: inner.notes.clone() }
        }
        (_, outcome) => Verdict::definite(outcome, Rule::SpehEven, cert),
    })
}

// ---------------------------------------------------------------------------
// Standard modules and sufficient conditions.

/// `L(Δ_1) × ⋯ × L(Δ_t) ⋊ 1_0` with positive exponents and irreducible `GL` part.
pub fn standard_module_verdict(m: &Multisegment, config: &Config) -> Result<Verdict> {
    if let Some(s) = m.segments().iter().find(|s| s.exponent() <= 0) {
        return Err(precondition("positive exponents", format!("{s} has exponent {}", s.exponent())));
    }
    if !m.pairwise_unlinked() {
        return Err(precondition("generic multisegment", format!("{m} has linked segments")));
    }
    let twisted = m.shift(-HalfInt::HALF);
    let g = glf_dist_generic(&twisted, config.sqint_rule)?;
    let tempered = g.witness.as_ref().map(|w| {
        w.iter().enumerate().all(|(i, &j)| i != j || twisted.segments()[i].exponent() == HalfInt::ZERO)
    });
    let cert = Certificate::StandardModule { twisted, involution: g.witness, tempered };
    Ok(match g.verdict {
        Tri::Yes => {
            let v = Verdict::definite(Outcome::Distinguished, Rule::StandardModule, cert);
            if tempered == Some(true) {
                v.with_note("tempered: ν^{-1/2}π is tempered")
            } else {
                v
            }
        }
        Tri::No => Verdict::definite(Outcome::NotDistinguished, Rule::StandardModule, cert),
        Tri::Unknown => Verdict::inconclusive(cert, "GL(F)-distinction of a factor is undecided"),
    })
}

/// `L(part1) × L(part2) ⋊ 1_0` is distinguished when `ν^{-1/2}L(part1)` is
/// `GL(F)`-distinguished and `L(part2)` is `Sp`-distinguished.
pub fn hered_sufficient(part1: &Multisegment, part2: &Multisegment, config: &Config) -> Result<Verdict> {
    let p1 = if part1.is_empty() { Tri::Yes } else { glf_half_factor(part1, config.sqint_rule) };
    let p2 = if part2.is_empty() { Tri::Yes } else { sp_factor(part2) };
    if p1.is_no() || p2.is_no() {
        return Err(precondition("hereditary inputs", format!("GL(F)-half {p1}, Sp {p2}")));
    }
    let cert = Certificate::Hereditary { part1: part1.clone(), part2: part2.clone() };
    Ok(if (p1 & p2).is_yes() {
        Verdict::definite(Outcome::Distinguished, Rule::HereditaryInduction, cert)
    } else {
        Verdict::inconclusive(cert, "an input predicate is undecided")
    })
}

/// `L(Δ_1) × ⋯ × L(Δ_t) ⋊ 1_0` with segments on pairwise unrelated lines.
pub fn distinct_lines_verdict(m: &Multisegment, config: &Config) -> Result<Verdict> {
    let segs = m.segments();
    for (i, s) in segs.iter().enumerate() {
        for r in &segs[i + 1..] {
            if r.line().id == s.line().id || r.line().id == s.line().conj_dual().id {
                return Err(precondition("distinct lines", format!("{s} and {r} share a line up to duality")));
            }
        }
    }
    let twisted: Vec<Segment> = segs.iter().map(|s| s.shift(-HalfInt::HALF)).collect();
    let verdicts: Vec<Tri> = twisted.iter().map(|s| glf_dist_sqint(s, config.sqint_rule)).collect();
    let all = Tri::all(verdicts.iter().copied());
    let cert = Certificate::DistinctLines { twisted, verdicts };
    Ok(match all {
        Tri::Yes => Verdict::definite(Outcome::Distinguished, Rule::DistinctLines, cert),
        Tri::No => Verdict::definite(Outcome::NotDistinguished, Rule::DistinctLines, cert),
        Tri::Unknown => Verdict::inconclusive(cert, "GL(F)-distinction of a segment is undecided"),
    })
}
