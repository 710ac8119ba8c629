//! Jacquet-module splitting for segment and ladder blocks.
//!
//! Sizes are counted in support points. Compositions read left to right: the
//! first factor of `L(Δ)` carries the end of `Δ`, the first factor of `Z(Δ)`
//! carries its beginning.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::half::HalfInt;
use crate::segcalc::{is_ladder, Multisegment, Segment};

/// An ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// All compositions of `n` into exactly `parts` parts, lexicographically.
    pub fn all_with_parts(n: usize, parts: usize) -> Vec<Composition> {
        fn go(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if parts == 0 {
                if n == 0 {
                    out.push(Composition(prefix.clone()));
                }
                return;
            }
            if n < parts {
                return;
            }
            for first in 1..=n - (parts - 1) {
                prefix.push(first);
                go(n - first, parts - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, parts, &mut Vec::new(), &mut out);
        out
    }

    /// All `2^(n-1)` compositions of `n > 0`, by number of parts then lexicographically.
    pub fn all(n: usize) -> Vec<Composition> {
        (1..=n).flat_map(|p| Self::all_with_parts(n, p)).collect()
    }
}

fn check_size(s: &Segment, c: &Composition) -> Result<()> {
    if c.total() != s.len() || c.0.contains(&0) {
        return Err(precondition(
            "composition size",
            format!("{c:?} does not split {s} of length {}", s.len()),
        ));
    }
    Ok(())
}

fn h(n: usize) -> HalfInt {
    HalfInt::from_int(n as i64)
}

/// End-first splitting of `L(s)`.
pub fn split_l(s: &Segment, c: &Composition) -> Result<Vec<Segment>> {
    check_size(s, c)?;
    let mut top = s.b();
    let mut out = Vec::with_capacity(c.len());
    for &p in c.parts() {
        let lo = top - h(p) + HalfInt::ONE;
        out.push(Segment::new(s.line().clone(), lo, top)?);
        top = lo - HalfInt::ONE;
    }
    Ok(out)
}

/// Beginning-first splitting of `Z(s)`.
pub fn split_z(s: &Segment, c: &Composition) -> Result<Vec<Segment>> {
    check_size(s, c)?;
    let mut bottom = s.a();
    let mut out = Vec::with_capacity(c.len());
    for &p in c.parts() {
        let hi = bottom + h(p) - HalfInt::ONE;
        out.push(Segment::new(s.line().clone(), bottom, hi)?);
        bottom = hi + HalfInt::ONE;
    }
    Ok(out)
}

/// All two-block splittings of the ladder `L(m)` with the left part of size
/// `left_size`.
///
/// Each segment `[a_i, b_i]` is cut at `x_i ∈ [a_i, b_i + 1]` with the `x_i`
/// strictly decreasing; the left part keeps `[x_i, b_i]`, the right part keeps
/// `[a_i, x_i - 1]`, and empty pieces are dropped.
pub fn split_ladder(m: &Multisegment, left_size: usize) -> Result<Vec<(Multisegment, Multisegment)>> {
    if !is_ladder(m) {
        return Err(precondition("ladder splitting", format!("{m} is not a ladder")));
    }
    if left_size > m.size() {
        return Err(precondition("ladder splitting", format!("left size {left_size} exceeds {}", m.size())));
    }
    let segs = m.segments();
    let mut out = Vec::new();
    let mut cuts = Vec::with_capacity(segs.len());
    cut_points(segs, 0, left_size, None, &mut cuts, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn cut_points(
    segs: &[Segment],
    i: usize,
    remaining: usize,
    prev: Option<HalfInt>,
    cuts: &mut Vec<HalfInt>,
    out: &mut Vec<(Multisegment, Multisegment)>,
) {
    if i == segs.len() {
        if remaining == 0 {
            let line = segs[0].line();
            let left = segs.iter().zip(cuts.iter()).filter_map(|(s, &x)| Segment::try_new(line.clone(), x, s.b()));
            let right = segs
                .iter()
                .zip(cuts.iter())
                .filter_map(|(s, &x)| Segment::try_new(line.clone(), s.a(), x - HalfInt::ONE));
            out.push((left.collect(), right.collect()));
        }
        return;
    }
    let s = &segs[i];
    let later: usize = segs[i + 1..].iter().map(Segment::len).sum();
    for taken in 0..=s.len().min(remaining) {
        if remaining - taken > later {
            continue;
        }
        let x = s.b() + HalfInt::ONE - h(taken);
        if prev.is_some_and(|p| x >= p) {
            continue;
        }
        cuts.push(x);
        cut_points(segs, i + 1, remaining - taken, Some(x), cuts, out);
        cuts.pop();
    }
}

/// All factorizations of `L(m)` along `c`, as ordered lists of ladders.
pub fn ladder_terms(m: &Multisegment, c: &Composition) -> Result<Vec<Vec<Multisegment>>> {
    if c.total() != m.size() || c.0.contains(&0) {
        return Err(precondition("composition size", format!("{c:?} does not split {m}")));
    }
    let mut terms = vec![(Vec::new(), m.clone())];
    for &p in c.parts() {
        let mut next = Vec::new();
        for (done, rest) in terms {
            for (left, right) in split_ladder(&rest, p)? {
                let mut d: Vec<Multisegment> = done.clone();
                d.push(left);
                next.push((d, right));
            }
        }
        terms = next;
    }
    Ok(terms.into_iter().map(|(d, _)| d).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segcalc::CuspLine;

    fn seg(a2: i64, b2: i64) -> Segment {
        Segment::from_doubled(CuspLine::even("r"), a2, b2).unwrap()
    }

    fn ms(v: &[(i64, i64)]) -> Multisegment {
        v.iter().map(|&(a, b)| seg(2 * a, 2 * b)).collect()
    }

    #[test]
    fn compositions() {
        assert_eq!(Composition::all(3).len(), 4);
        assert_eq!(Composition::all(3)[0], Composition(vec![3]));
        assert_eq!(Composition::all_with_parts(4, 2), vec![Composition(vec![1, 3]), Composition(vec![2, 2]), Composition(vec![3, 1])]);
    }

    #[test]
    fn split_l_examples() {
        let s = seg(0, 4);
        assert_eq!(split_l(&s, &Composition(vec![3])).unwrap(), vec![seg(0, 4)]);
        assert_eq!(split_l(&s, &Composition(vec![1, 2])).unwrap(), vec![seg(4, 4), seg(0, 2)]);
        assert_eq!(split_l(&s, &Composition(vec![2, 1])).unwrap(), vec![seg(2, 4), seg(0, 0)]);
        assert!(split_l(&s, &Composition(vec![2, 2])).is_err());
    }

    #[test]
    fn split_z_examples() {
        let s = seg(0, 4);
        assert_eq!(split_z(&s, &Composition(vec![1, 2])).unwrap(), vec![seg(0, 0), seg(2, 4)]);
        assert_eq!(split_z(&s, &Composition(vec![3])).unwrap(), vec![seg(0, 4)]);
    }

    #[test]
    fn split_ladder_examples() {
        let m = ms(&[(1, 2), (0, 1)]);
        let got = split_ladder(&m, 2).unwrap();
        let mut want = vec![
            (ms(&[(2, 2), (1, 1)]), ms(&[(1, 1), (0, 0)])),
            (ms(&[(0, 1)]), ms(&[(1, 2)])),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(split_ladder(&m, 0).unwrap(), vec![(Multisegment::empty(), m.clone())]);
        assert_eq!(split_ladder(&m, 4).unwrap(), vec![(m.clone(), Multisegment::empty())]);
    }

    #[test]
    fn cuspidal_ladder_splits_like_z() {
        let s = seg(-2, 6);
        let z = crate::segcalc::zelevinsky_segment(&s);
        for c in Composition::all(s.len()) {
            let terms = ladder_terms(&z, &c).unwrap();
            let want: Vec<Multisegment> =
                split_z(&s, &c).unwrap().iter().map(crate::segcalc::zelevinsky_segment).collect();
            assert_eq!(terms, vec![want]);
        }
    }

    #[test]
    fn single_segment_ladder_splits_like_l() {
        let s = seg(-3, 5);
        for c in Composition::all(s.len()) {
            let terms = ladder_terms(&Multisegment::single(s.clone()), &c).unwrap();
            let want: Vec<Multisegment> = split_l(&s, &c).unwrap().into_iter().map(Multisegment::single).collect();
            assert_eq!(terms, vec![want]);
        }
    }
}
