//! Brute-force oracles shared by the integration tests.
//!
//! Everything here is written from the definitions, without calling the
//! library routine it is compared against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use unidist::segcalc::{CuspLine, LineClass, Multisegment, Segment};
use unidist::weylinv::SignedPermutation;
use unidist::HalfInt;

// ---------------------------------------------------------------------------
// Sign tuples.

pub fn tuple_of(bits: u64, k: usize) -> Vec<i8> {
    (0..k).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Length of the first maximal alternating run.
pub fn first_run(e: &[i8]) -> usize {
    (1..e.len()).find(|&i| e[i - 1] == e[i]).unwrap_or(e.len())
}

/// `e_1 * len` when `e` alternates throughout, `0` on the empty tuple.
pub fn alternating_index(e: &[i8]) -> Option<i64> {
    if e.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(e.first().map_or(0, |&s| s as i64 * e.len() as i64))
}

/// Follows labels, deleting `(e_i, e_{i+1})` when equal; returns the sink
/// and the original positions of every deleted pair.
pub fn walk_oracle(e: &[i8], labels: &[usize]) -> Option<(Vec<i8>, Vec<(usize, usize)>)> {
    let mut cur: Vec<(usize, i8)> = e.iter().enumerate().map(|(i, &s)| (i + 1, s)).collect();
    let mut hist = Vec::new();
    for &l in labels {
        if l == 0 || l >= cur.len() || cur[l - 1].1 != cur[l].1 {
            return None;
        }
        hist.push((cur[l - 1].0, cur[l].0));
        cur.drain(l - 1..=l);
    }
    Some((cur.into_iter().map(|(_, s)| s).collect(), hist))
}

/// No `x_i < x_j < y_i < y_j`, and from the second step on the open interval
/// `(x_s, y_s)` was used up earlier.
pub fn history_oracle(h: &[(usize, usize)]) -> bool {
    let crossing = h.iter().any(|&(xi, yi)| h.iter().any(|&(xj, yj)| xi < xj && xj < yi && yi < yj));
    let between = (1..h.len()).all(|s| {
        let (x, y) = h[s];
        (x + 1..y).all(|i| h[..s].iter().any(|&(a, b)| a == i || b == i))
    });
    !crossing && between
}

/// Shape check for constrained paths: the pattern ends in the descending run
/// `head, head-1, ..., x` and every earlier label exceeds `head + 1`.
pub fn shape_oracle(e: &[i8], labels: &[usize], target: i64, variant: bool) -> bool {
    let t1 = first_run(e);
    let head = if variant { t1 + 1 } else { t1 };
    let allowed: Vec<usize> = match (target, variant, t1) {
        (0, _, _) => vec![1],
        (_, false, 1) => vec![1],
        _ => vec![1, 2],
    };
    allowed.iter().any(|&x| {
        if x > head {
            return false;
        }
        let run: Vec<usize> = (x..=head).rev().collect();
        labels.len() >= run.len()
            && labels[labels.len() - run.len()..] == run[..]
            && labels[..labels.len() - run.len()].iter().all(|&l| l > head + 1)
    })
}

// ---------------------------------------------------------------------------
// Signed permutations through their action on coordinates.

pub fn basis(n: usize, j: usize) -> Vec<i32> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

/// The signed permutation matrix, column `j` being the image of `e_j`.
pub fn matrix(w: &SignedPermutation) -> Vec<Vec<i32>> {
    (0..w.n()).map(|j| w.act(&basis(w.n(), j))).collect()
}

pub fn compose(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = a.len();
    b.iter()
        .map(|col| {
            let mut out = vec![0; n];
            for (k, &x) in col.iter().enumerate() {
                for i in 0..n {
                    out[i] += a[k][i] * x;
                }
            }
            out
        })
        .collect()
}

/// Diagonal matrix of the sign change on `set` (bitmask, bit `i-1` for `i`).
pub fn sign_matrix(n: usize, set: u32) -> Vec<Vec<i32>> {
    (0..n).map(|j| {
        let mut v = basis(n, j);
        if set >> j & 1 == 1 {
            v[j] = -1;
        }
        v
    })
    .collect()
}

/// The set of a diagonal sign matrix, or `None` if not diagonal.
pub fn diagonal_set(m: &[Vec<i32>]) -> Option<u32> {
    let mut set = 0;
    for (j, col) in m.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            if (i != j && x != 0) || (i == j && x.abs() != 1) {
                return None;
            }
        }
        if col[j] == -1 {
            set |= 1 << j;
        }
    }
    Some(set)
}

pub fn transpose(m: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

/// The `c`-sets of an element read off its matrix: fixed coordinates with
/// sign `-1` (`c_+`), `+1` (`c_-`), moved coordinates, and moved `i < τ(i)`.
pub fn c_sets_oracle(m: &[Vec<i32>]) -> [u32; 4] {
    let mut out = [0u32; 4];
    for (j, col) in m.iter().enumerate() {
        let i = col.iter().position(|&x| x != 0).expect("permutation column");
        if i == j {
            out[if col[i] < 0 { 0 } else { 1 }] |= 1 << j;
        } else {
            out[2] |= 1 << j;
            if j < i {
                out[3] |= 1 << j;
            }
        }
    }
    out
}

pub fn every_element(n: usize) -> Vec<SignedPermutation> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(n) {
        for c in 0..1u32 << n {
            out.push(SignedPermutation::new(p.clone(), c).expect("valid element"));
        }
    }
    out
}

pub fn simple_root_oracle(n: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; n];
    if i == n {
        v[n - 1] = 2;
    } else {
        v[i - 1] = 1;
        v[i] = -1;
    }
    v
}

/// Positive roots have first nonzero coordinate positive.
pub fn is_negative(v: &[i32]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

/// For each subset `Π` of simple roots, the element of the subgroup generated
/// by `Π` sending all of `Π` to negative roots, kept when it acts by `-1` on `Π`.
pub fn minimal_involutions_oracle(n: usize) -> BTreeSet<SignedPermutation> {
    let mut out = BTreeSet::new();
    for pi in 0..1u32 << n {
        let gens: Vec<usize> = (1..=n).filter(|i| pi >> (i - 1) & 1 == 1).collect();
        let mut group = BTreeSet::from([SignedPermutation::identity(n)]);
        let mut frontier = vec![SignedPermutation::identity(n)];
        while let Some(g) = frontier.pop() {
            for &i in &gens {
                let h = SignedPermutation::simple_reflection(n, i).multiply(&g).unwrap();
                if group.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        let longest: Vec<&SignedPermutation> = group
            .iter()
            .filter(|w| gens.iter().all(|&i| is_negative(&w.act(&simple_root_oracle(n, i)))))
            .collect();
        assert_eq!(longest.len(), 1, "a finite Coxeter group has one longest element");
        let w = longest[0];
        let acts_by_minus = gens.iter().all(|&i| {
            let a = simple_root_oracle(n, i);
            w.act(&a) == a.iter().map(|x| -x).collect::<Vec<_>>()
        });
        if acts_by_minus {
            out.insert(w.clone());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Orbit shapes.

/// Every composition of `n`, from the subsets of cut positions.
pub fn compositions_oracle(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << (n - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut len = 1;
            for p in 1..n {
                if cuts >> (p - 1) & 1 == 1 {
                    parts.push(len);
                    len = 1;
                } else {
                    len += 1;
                }
            }
            parts.push(len);
            parts
        })
        .collect()
}

/// Every involution of `{0, ..., m-1}` as an image vector.
pub fn involutions_oracle(m: usize) -> Vec<Vec<usize>> {
    fn go(tau: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = tau.iter().position(Option::is_none) else {
            out.push(tau.iter().map(|t| t.unwrap()).collect());
            return;
        };
        for j in i..tau.len() {
            if tau[j].is_none() {
                tau[i] = Some(j);
                tau[j] = Some(i);
                go(tau, out);
                tau[i] = None;
                tau[j] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; m], &mut out);
    out
}

/// A raw shape: per-block parts, membership of every flattened factor in
/// `c`, and the involution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawShape {
    pub splits: Vec<Vec<usize>>,
    pub c: Vec<bool>,
    pub tau: Vec<usize>,
}

/// All `(split, c, τ)` triples filtered against the orbit constraints.
pub fn brute_force_shapes(sizes: &[usize]) -> BTreeSet<RawShape> {
    let mut split_lists: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &n in sizes {
        split_lists = split_lists
            .into_iter()
            .flat_map(|prefix| {
                compositions_oracle(n).into_iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    let mut out = BTreeSet::new();
    for splits in split_lists {
        let rows: Vec<usize> = splits.iter().enumerate().flat_map(|(i, c)| std::iter::repeat(i).take(c.len())).collect();
        let cols: Vec<usize> = splits.iter().flat_map(|c| 1..=c.len()).collect();
        let m = rows.len();
        let invs = involutions_oracle(m);
        for mask in 0..1u32 << m {
            let c: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            // c must be a final stretch of every row.
            let suffix_ok = (0..m).all(|i| !c[i] || (i + 1 < m && rows[i + 1] == rows[i]).then(|| c[i + 1]).unwrap_or(true));
            if !suffix_ok {
                continue;
            }
            for tau in &invs {
                if (0..m).any(|i| c[tau[i]] != c[i]) {
                    continue;
                }
                let mono = (0..m).all(|x| {
                    (0..m).all(|y| {
                        if rows[x] != rows[y] || cols[x] >= cols[y] || c[x] != c[y] {
                            return true;
                        }
                        let (rx, ry) = (rows[tau[x]], rows[tau[y]]);
                        if c[x] { rx > ry } else { rx < ry }
                    })
                });
                let injective = (0..m).all(|x| {
                    (0..m).all(|y| x == y || rows[x] != rows[y] || c[x] != c[y] || rows[tau[x]] != rows[tau[y]])
                });
                if mono && injective {
                    out.insert(RawShape { splits: splits.clone(), c: c.clone(), tau: tau.clone() });
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Segments.

pub fn half(d: i64) -> HalfInt {
    HalfInt::from_doubled(d)
}

pub fn seg(line: &CuspLine, a2: i64, b2: i64) -> Segment {
    Segment::from_doubled(line.clone(), a2, b2).expect("valid segment")
}

/// Linkedness from the definition: the union is a segment and neither
/// contains the other.
pub fn linked_oracle(x: &Segment, y: &Segment) -> bool {
    if x.line() != y.line() || !(x.a() - y.a()).is_integer() {
        return false;
    }
    let (a1, b1, a2, b2) = (x.a(), x.b(), y.a(), y.b());
    let contains = |a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt| a <= c && d <= b;
    if contains(a1, b1, a2, b2) || contains(a2, b2, a1, b1) {
        return false;
    }
    let lo = if a1 < a2 { (a1, b1, a2) } else { (a2, b2, a1) };
    lo.2 <= lo.1 + HalfInt::ONE
}

/// `GL(F)`-distinction of `L(Δ)` for one segment: exponent zero,
/// conjugate-self-dual, and `(-1)^(ℓ-1) η = +1`.
pub fn glf_sqint_oracle(s: &Segment) -> bool {
    let eta = match s.line().class {
        LineClass::Even => 1,
        LineClass::Odd => -1,
        LineClass::NonSelfDual(_) => return false,
    };
    let sign = if s.len() % 2 == 1 { 1 } else { -1 };
    s.a() == -s.b() && sign * eta == 1
}

/// Involution criterion for generic `L(m)`, by trying every involution.
pub fn generic_dist_oracle(segs: &[Segment]) -> Option<Vec<usize>> {
    involutions_oracle(segs.len()).into_iter().find(|w| {
        (0..segs.len()).all(|i| {
            if w[i] == i {
                glf_sqint_oracle(&segs[i])
            } else {
                segs[w[i]] == segs[i].conj_dual()
            }
        })
    })
}

/// Points of a multisegment as a sorted multiset.
pub fn points(m: &Multisegment) -> Vec<(String, HalfInt)> {
    let mut v: Vec<(String, HalfInt)> =
        m.segments().iter().flat_map(|s| s.points().map(move |x| (s.line().id.to_string(), x))).collect();
    v.sort();
    v
}
