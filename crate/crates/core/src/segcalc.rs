//! Segments and multisegments over formal cuspidal lines.
//!
//! A segment `[a, b]@ρ` is the set `{ν^a ρ, ν^(a+1) ρ, ..., ν^b ρ}`, where
//! `b - a` is a non-negative integer and endpoints live in `½ℤ`. A line is
//! conjugate-self-dual of parity `Even` or `Odd`, or belongs to a pair of
//! mutually dual `NonSelfDual` lines.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, validation, Result};
use crate::half::HalfInt;
use crate::tri::Tri;

/// Parity class of a cuspidal line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineClass {
    Even,
    Odd,
    NonSelfDual(Arc<str>),
}

impl LineClass {
    pub fn is_self_dual(&self) -> bool {
        !matches!(self, LineClass::NonSelfDual(_))
    }

    /// `η = +1` for even lines and `-1` for odd lines.
    pub fn eta(&self) -> Option<i64> {
        match self {
            LineClass::Even => Some(1),
            LineClass::Odd => Some(-1),
            LineClass::NonSelfDual(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspLine {
    pub id: Arc<str>,
    pub class: LineClass,
}

impl CuspLine {
    pub fn even(id: &str) -> Self {
        CuspLine { id: id.into(), class: LineClass::Even }
    }

    pub fn odd(id: &str) -> Self {
        CuspLine { id: id.into(), class: LineClass::Odd }
    }

    /// A pair of mutually dual non-self-dual lines.
    pub fn nonsd_pair(id: &str, partner: &str) -> (Self, Self) {
        (
            CuspLine { id: id.into(), class: LineClass::NonSelfDual(partner.into()) },
            CuspLine { id: partner.into(), class: LineClass::NonSelfDual(id.into()) },
        )
    }

    /// The line of `ρ̄^∨`.
    pub fn conj_dual(&self) -> CuspLine {
        match &self.class {
            LineClass::NonSelfDual(partner) => {
                CuspLine { id: partner.clone(), class: LineClass::NonSelfDual(self.id.clone()) }
            }
            _ => self.clone(),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.class.is_self_dual()
    }
}

impl fmt::Display for CuspLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A registry of lines with consistent partner links.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineTable {
    lines: BTreeMap<Arc<str>, CuspLine>,
}

impl LineTable {
    pub fn new(lines: impl IntoIterator<Item = CuspLine>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for line in lines {
            if map.insert(line.id.clone(), line.clone()).is_some() {
                return Err(validation("line table", format!("line {} declared twice", line.id)));
            }
        }
        for line in map.values() {
            if let LineClass::NonSelfDual(partner) = &line.class {
                if *partner == line.id {
                    return Err(validation("line table", format!("line {} is its own partner", line.id)));
                }
                match map.get(partner) {
                    Some(p) if p.class == LineClass::NonSelfDual(line.id.clone()) => {}
                    _ => {
                        return Err(validation(
                            "line table",
                            format!("partner {partner} of {} missing or not reciprocal", line.id),
                        ))
                    }
                }
            }
        }
        Ok(LineTable { lines: map })
    }

    pub fn get(&self, id: &str) -> Result<&CuspLine> {
        self.lines.get(id).ok_or_else(|| validation("line reference", format!("unknown line {id}")))
    }

    pub fn lines(&self) -> impl Iterator<Item = &CuspLine> {
        self.lines.values()
    }
}

/// A nonempty segment `[a, b]` on a cuspidal line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    line: CuspLine,
    a: HalfInt,
    b: HalfInt,
}

impl Segment {
    pub fn new(line: CuspLine, a: HalfInt, b: HalfInt) -> Result<Self> {
        match b.int_diff(a) {
            Some(d) if d >= 0 => Ok(Segment { line, a, b }),
            _ => Err(validation("segment endpoints", format!("[{a}, {b}] is not a nonempty segment"))),
        }
    }

    /// `[a, b]` from doubled endpoints.
    pub fn from_doubled(line: CuspLine, a2: i64, b2: i64) -> Result<Self> {
        Self::new(line, HalfInt::from_doubled(a2), HalfInt::from_doubled(b2))
    }

    /// `[a, b]`, or `None` when `b < a`.
    pub fn try_new(line: CuspLine, a: HalfInt, b: HalfInt) -> Option<Self> {
        Self::new(line, a, b).ok()
    }

    pub fn line(&self) -> &CuspLine {
        &self.line
    }

    /// Beginning `a`.
    pub fn a(&self) -> HalfInt {
        self.a
    }

    /// End `b`.
    pub fn b(&self) -> HalfInt {
        self.b
    }

    /// Number of points `ℓ = b - a + 1`.
    pub fn len(&self) -> usize {
        (self.b.int_diff(self.a).expect("integral length") + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shift(&self, x: HalfInt) -> Segment {
        Segment { line: self.line.clone(), a: self.a + x, b: self.b + x }
    }

    /// `[a, b]@ρ ↦ [-b, -a]@ρ̄^∨`.
    pub fn conj_dual(&self) -> Segment {
        Segment { line: self.line.conj_dual(), a: -self.b, b: -self.a }
    }

    /// `(a + b) / 2`.
    pub fn exponent(&self) -> HalfInt {
        self.a.midpoint(self.b).expect("endpoints differ by an integer")
    }

    pub fn points(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len() as i64).map(move |i| self.a + HalfInt::from_int(i))
    }

    pub fn contains(&self, x: HalfInt) -> bool {
        self.a <= x && x <= self.b && x.same_coset(self.a)
    }

    /// Same line, union a segment, and union different from both.
    pub fn linked(&self, other: &Segment) -> bool {
        if self.line != other.line || !self.a.same_coset(other.a) {
            return false;
        }
        let lo = self.a.min(other.a);
        let hi = self.b.max(other.b);
        let joins = self.a.max(other.a) <= self.b.min(other.b) + HalfInt::ONE;
        let differs = (lo, hi) != (self.a, self.b) && (lo, hi) != (other.a, other.b);
        joins && differs
    }

    /// `self` precedes `other`: linked and `other` begins strictly later.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.linked(other) && other.a > self.a
    }

    /// Whether `self` is the conjugate-dual of itself.
    pub fn is_conj_self_dual(&self) -> bool {
        self.conj_dual() == *self
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.line.id, Reverse(self.a), Reverse(self.b), &self.line.class).cmp(&(
            &other.line.id,
            Reverse(other.a),
            Reverse(other.b),
            &other.line.class,
        ))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]@{}", self.a, self.b, self.line)
    }
}

/// A finite multiset of segments, stored in standard order.
///
/// Standard order groups segments by line id; within a line beginnings and
/// then ends weakly decrease. No segment precedes a later one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.sort();
        Multisegment { segs }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn single(s: Segment) -> Self {
        Multisegment { segs: vec![s] }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    /// Number of segments.
    pub fn count(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// Total number of support points.
    pub fn size(&self) -> usize {
        self.segs.iter().map(Segment::len).sum()
    }

    pub fn shift(&self, x: HalfInt) -> Multisegment {
        Multisegment::new(self.segs.iter().map(|s| s.shift(x)).collect())
    }

    pub fn conj_dual(&self) -> Multisegment {
        Multisegment::new(self.segs.iter().map(Segment::conj_dual).collect())
    }

    /// Support points `(line id, x)` with multiplicity, sorted.
    pub fn support(&self) -> Vec<(Arc<str>, HalfInt)> {
        let mut pts: Vec<_> = self.segs.iter().flat_map(|s| s.points().map(|x| (s.line.id.clone(), x))).collect();
        pts.sort();
        pts
    }

    pub fn lines(&self) -> Vec<CuspLine> {
        let mut ls: Vec<CuspLine> = self.segs.iter().map(|s| s.line.clone()).collect();
        ls.dedup();
        ls
    }

    pub fn pairwise_unlinked(&self) -> bool {
        self.segs.iter().enumerate().all(|(i, s)| self.segs[i + 1..].iter().all(|t| !s.linked(t)))
    }

    /// Concatenation as multisets.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.segs.iter().chain(&other.segs).cloned().collect())
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        Multisegment::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for LineClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            LineClass::Even => ser.serialize_str("even"),
            LineClass::Odd => ser.serialize_str("odd"),
            LineClass::NonSelfDual(partner) => {
                let mut map = ser.serialize_map(Some(1))?;
                map.serialize_entry("nonsd", &**partner)?;
                map.end()
            }
        }
    }
}

impl Serialize for CuspLine {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("CuspLine", 2)?;
        st.serialize_field("id", &*self.id)?;
        st.serialize_field("class", &self.class)?;
        st.end()
    }
}

/// Wire form `{"line": id, "a2": int, "b2": int}` with doubled endpoints.
impl Serialize for Segment {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Segment", 3)?;
        st.serialize_field("line", &*self.line.id)?;
        st.serialize_field("a2", &self.a.doubled())?;
        st.serialize_field("b2", &self.b.doubled())?;
        st.end()
    }
}

impl Serialize for Multisegment {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.segs.serialize(ser)
    }
}

/// The segments of `m` in standard order.
pub fn std_sort(m: &Multisegment) -> Vec<Segment> {
    m.segs.clone()
}

/// One line, one `ℤ`-coset, beginnings and ends strictly decreasing.
pub fn is_ladder(m: &Multisegment) -> bool {
    let segs = &m.segs;
    let Some(first) = segs.first() else { return true };
    segs.iter().all(|s| s.line == first.line && s.a.same_coset(first.a))
        && segs.windows(2).all(|w| w[0].a > w[1].a && w[0].b > w[1].b)
}

/// A ladder whose consecutive segments differ by exactly `ν`.
pub fn is_speh(m: &Multisegment) -> bool {
    is_ladder(m)
        && m.segs.windows(2).all(|w| w[0].a == w[1].a + HalfInt::ONE && w[0].b == w[1].b + HalfInt::ONE)
}

/// The Zelevinsky involution by end-chain extraction, line by line.
pub fn mw_dual_general(m: &Multisegment) -> Multisegment {
    let mut out = Vec::new();
    for line in m.lines() {
        let mut segs: Vec<(HalfInt, HalfInt)> =
            m.segs.iter().filter(|s| s.line == line).map(|s| (s.a, s.b)).collect();
        while !segs.is_empty() {
            let mut chain = Vec::new();
            chain.push(pick(&segs, &chain, |_, _| true).expect("nonempty"));
            while let Some(next) = pick(&segs, &chain, |(a, b), (ca, cb)| b == cb - HalfInt::ONE && a < ca)
            {
                chain.push(next);
            }
            let e = segs[chain[0]].1;
            let r = HalfInt::from_int(chain.len() as i64);
            out.push(Segment { line: line.clone(), a: e - r + HalfInt::ONE, b: e });
            for &j in &chain {
                segs[j].1 -= HalfInt::ONE;
            }
            segs.retain(|&(a, b)| b >= a);
        }
    }
    Multisegment::new(out)
}

/// Among unused segments satisfying `ok` relative to the last chosen one (or
/// any segment when the chain is empty), the one with the largest end and then
/// the largest beginning.
fn pick(
    segs: &[(HalfInt, HalfInt)],
    chain: &[usize],
    ok: impl Fn((HalfInt, HalfInt), (HalfInt, HalfInt)) -> bool,
) -> Option<usize> {
    let last = chain.last().map(|&j| segs[j]);
    (0..segs.len())
        .filter(|j| !chain.contains(j))
        .filter(|&j| last.map_or(true, |c| ok(segs[j], c)))
        .max_by_key(|&j| (segs[j].1, segs[j].0, Reverse(j)))
}

/// The Zelevinsky involution of a ladder.
///
/// On a ladder the segment ending highest comes first, and each chain is the
/// maximal initial run of unit end-steps; shortened ladders stay ladders.
pub fn mw_dual_ladder(m: &Multisegment) -> Result<Multisegment> {
    if !is_ladder(m) {
        return Err(precondition("ladder dual", format!("{m} is not a ladder")));
    }
    let Some(line) = m.segs.first().map(|s| s.line.clone()) else { return Ok(Multisegment::empty()) };
    let mut segs: Vec<(HalfInt, HalfInt)> = m.segs.iter().map(|s| (s.a, s.b)).collect();
    let mut out = Vec::new();
    while let Some(&(_, e)) = segs.first() {
        let mut r = 1;
        while r < segs.len() && segs[r].1 == segs[r - 1].1 - HalfInt::ONE {
            r += 1;
        }
        out.push(Segment { line: line.clone(), a: e - HalfInt::from_int(r as i64) + HalfInt::ONE, b: e });
        for s in &mut segs[..r] {
            s.1 -= HalfInt::ONE;
        }
        segs.retain(|&(a, b)| b >= a);
    }
    Ok(Multisegment::new(out))
}

/// `m ↦ m^t` with `Z(m) = L(m^t)`; ladders take the fast path.
pub fn mw_dual(m: &Multisegment) -> Multisegment {
    if is_ladder(m) {
        mw_dual_ladder(m).expect("checked ladder")
    } else {
        mw_dual_general(m)
    }
}

/// Langlands data of the cuspidal ladder `Z([a, b])`.
pub fn zelevinsky_segment(s: &Segment) -> Multisegment {
    s.points().map(|x| Segment { line: s.line.clone(), a: x, b: x }).collect()
}

/// Ladder pairing `Δ_{2i-1} = νΔ_{2i}` with an even number of segments.
pub fn sp_dist_ladder(m: &Multisegment) -> Result<bool> {
    if !is_ladder(m) {
        return Err(precondition("ladder pairing", format!("{m} is not a ladder")));
    }
    Ok(m.count() % 2 == 0 && m.segs.chunks(2).all(|p| p[0] == p[1].shift(HalfInt::ONE)))
}

/// How `GL(F)`-distinction of `L([a, b])` is decided for `ℓ > 1`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SqintRule {
    /// `(-1)^(ℓ-1) η = +1` decides.
    #[default]
    Parity,
    /// `Unknown` whenever `ℓ > 1` and the parity rule would be needed.
    Conservative,
}

fn parity_sign(s: &Segment) -> Option<i64> {
    let eta = s.line.class.eta()?;
    let sign = if s.len() % 2 == 1 { 1 } else { -1 };
    Some(sign * eta)
}

/// `GL(F)`-distinction of the essentially square-integrable `L(s)`.
pub fn glf_dist_sqint(s: &Segment, rule: SqintRule) -> Tri {
    if !s.line.is_self_dual() || s.exponent() != HalfInt::ZERO || !s.is_conj_self_dual() {
        return Tri::No;
    }
    if s.len() > 1 && rule == SqintRule::Conservative {
        return Tri::Unknown;
    }
    Tri::from(parity_sign(s) == Some(1))
}

/// Whether the conjugate-self-dual `L(s)` has a conjugate-symplectic parameter.
pub fn conj_symplectic_sqint(s: &Segment) -> Result<bool> {
    if !s.is_conj_self_dual() || s.exponent() != HalfInt::ZERO {
        return Err(precondition("conjugate-symplectic test", format!("{s} is not conjugate-self-dual")));
    }
    Ok(parity_sign(s) == Some(-1))
}

/// `ν^x ρ ⋊ 1_0` reducible: `x = ±1/2` on even lines, `x = 0` on odd lines.
pub fn in_reducibility_set(line: &CuspLine, x: HalfInt) -> bool {
    match line.class {
        LineClass::Even => x.abs() == HalfInt::HALF,
        LineClass::Odd => x == HalfInt::ZERO,
        LineClass::NonSelfDual(_) => false,
    }
}

/// Whether some point of `s` lies in the reducibility set.
pub fn meets_reducibility_set(s: &Segment) -> bool {
    s.points().any(|x| in_reducibility_set(&s.line, x))
}

/// Outcome of the involution criterion for generic representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericDist {
    pub verdict: Tri,
    /// A witness involution on segment indices (standard order) when `Yes`.
    pub witness: Option<Vec<usize>>,
}

/// `GL(F)`-distinction of the generic `L(m)`: some involution `w` has
/// `Δ_{w(i)} = conj_dual(Δ_i)` everywhere and distinguished fixed points.
///
/// Identical segments are interchangeable, so the search reduces to counts:
/// a non-self-dual class must be matched by its dual class, and an odd count
/// of a self-dual segment forces one fixed point of that segment.
pub fn glf_dist_generic(m: &Multisegment, rule: SqintRule) -> Result<GenericDist> {
    if !m.pairwise_unlinked() {
        return Err(precondition("generic multisegment", format!("{m} has linked segments")));
    }
    let segs = &m.segs;
    let mut classes: BTreeMap<&Segment, Vec<usize>> = BTreeMap::new();
    for (i, s) in segs.iter().enumerate() {
        classes.entry(s).or_default().push(i);
    }
    let mut verdict = Tri::Yes;
    let mut w: Vec<usize> = (0..segs.len()).collect();
    for (s, idx) in &classes {
        let d = s.conj_dual();
        if d == **s {
            for p in idx.chunks(2) {
                if let [i, j] = *p {
                    w[i] = j;
                    w[j] = i;
                }
            }
            if idx.len() % 2 == 1 {
                verdict = verdict & glf_dist_sqint(s, rule);
            }
        } else {
            match classes.get(&d) {
                Some(didx) if didx.len() == idx.len() => {
                    for (&i, &j) in idx.iter().zip(didx) {
                        w[i] = j;
                        w[j] = i;
                    }
                }
                _ => verdict = Tri::No,
            }
        }
    }
    let witness = verdict.is_yes().then_some(w);
    Ok(GenericDist { verdict, witness })
}
