//! B-avoiding subsets of `[n]`, the difference-avoiding capacity bound on
//! one-dimensional windows, and the diagonal DAG sets of axial windows.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::clique::max_independent_set;
use crate::bitset::Bitset;
use crate::limits::Limits;
use crate::rational::Rational;
use crate::window::{cell_index, window_graph_with, RecoverySet};
use crate::{Error, Result};

/// A largest subset of `[n]` whose pairwise differences avoid `b`. Among the
/// optimal sets the lexicographically smallest is returned when the dynamic
/// program applies (`n * 2^max(b)` within the table cap); otherwise exact
/// search handles `n` up to the exhaustive cap.
pub fn max_b_avoiding(b: &[u64], n: usize, limits: &Limits) -> Result<Vec<usize>> {
    if b.is_empty() || b.contains(&0) {
        return Err(Error::Invalid(
            "B must be a nonempty set of positive integers".into(),
        ));
    }
    let max_b = *b.iter().max().unwrap();
    let table = if max_b < 64 {
        (n as u128 + 1) << max_b
    } else {
        u128::MAX
    };
    if table <= limits.avoiding_table && n < u16::MAX as usize {
        return Ok(avoiding_dp(b, n));
    }
    if n <= limits.avoiding_exhaustive {
        return Ok(avoiding_exhaustive(b, n));
    }
    Err(Error::CapExceeded {
        what: "B-avoiding search",
        size: n as u128,
        cap: limits.avoiding_exhaustive as u128,
    })
}

/// Dynamic program over the last `max(b)` membership bits.
fn avoiding_dp(b: &[u64], n: usize) -> Vec<usize> {
    let width = *b.iter().max().unwrap() as usize;
    let states = 1usize << width;
    let mask = states - 1;
    // Bit i of a state says whether position x - 1 - i was taken.
    let forbidden = b.iter().fold(0usize, |m, &d| m | 1 << (d - 1));
    let next = |s: usize, take: bool| ((s << 1) | take as usize) & mask;
    let mut best = vec![0u16; (n + 1) * states];
    for x in (0..n).rev() {
        for s in 0..states {
            let skip = best[(x + 1) * states + next(s, false)];
            let take = if s & forbidden == 0 {
                best[(x + 1) * states + next(s, true)] + 1
            } else {
                0
            };
            best[x * states + s] = skip.max(take);
        }
    }
    let mut set = Vec::new();
    let mut s = 0;
    for x in 0..n {
        let here = best[x * states + s];
        if s & forbidden == 0 && best[(x + 1) * states + next(s, true)] + 1 == here {
            set.push(x);
            s = next(s, true);
        } else {
            s = next(s, false);
        }
    }
    set
}

fn avoiding_exhaustive(b: &[u64], n: usize) -> Vec<usize> {
    let adj: Vec<Bitset> = (0..n)
        .map(|x| {
            let near = b
                .iter()
                .flat_map(|&d| [x as i64 - d as i64, x as i64 + d as i64]);
            Bitset::from_indices(
                n,
                near.filter(|&y| y >= 0 && (y as usize) < n)
                    .map(|y| y as usize),
            )
        })
        .collect();
    max_independent_set(&adj)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AvoidingPoint {
    pub n: usize,
    /// Largest set avoiding the negative offset magnitudes.
    pub left: Vec<usize>,
    /// Largest set avoiding the positive offset magnitudes.
    pub right: Vec<usize>,
    /// `1 - max(|left|, |right|) / n`.
    pub bound: Rational,
}

/// Per-window upper bounds `1 - max(a_n^left, a_n^right) / n` for a
/// one-dimensional recovery set. Both witnesses are checked to be DAG sets
/// of the window graph.
pub fn diff_avoiding_bound(
    recovery: &RecoverySet,
    ns: &[usize],
    limits: &Limits,
) -> Result<Vec<AvoidingPoint>> {
    let (left_b, right_b) = recovery.split_1d()?;
    let mut out = Vec::new();
    for &n in ns {
        let side = |bs: &[u64]| {
            if bs.is_empty() {
                Ok((0..n).collect())
            } else {
                max_b_avoiding(bs, n, limits)
            }
        };
        let left = side(&left_b)?;
        let right = side(&right_b)?;
        if n > recovery.max_magnitude() as usize {
            let w = window_graph_with(recovery, n, limits)?;
            for set in [&left, &right] {
                if !w.graph.is_dag(set)?.is_acyclic() {
                    return Err(Error::BadWitness {
                        kind: "diff_avoiding",
                        reason: format!("avoiding set at n={n} is not a DAG set"),
                    });
                }
            }
        }
        let best = left.len().max(right.len());
        let bound = Rational::new(BigInt::from(n - best), BigInt::from(n.max(1)));
        out.push(AvoidingPoint {
            n,
            left,
            right,
            bound,
        });
    }
    Ok(out)
}

/// Cells `(x, y)` of `[n]^2` on the diagonals `x - y ≡ 0 (mod t + 1)`,
/// i.e. the union of `(k(t+1), 0) + (i, i)` and `(0, k(t+1)) + (i, i)`,
/// as indices `x + n * y`. Checked to be a DAG set of the axial window
/// `axial(t, t, t, t)` when the window exists.
pub fn axial_dag_set(t: usize, n: usize, limits: &Limits) -> Result<Vec<usize>> {
    if t == 0 || !n.is_multiple_of(t + 1) {
        return Err(Error::Divisibility(format!(
            "t + 1 = {} must divide n = {n}",
            t + 1
        )));
    }
    let step = (t + 1) as i64;
    let mut set = Vec::new();
    for y in 0..n as i64 {
        for x in 0..n as i64 {
            if (x - y).rem_euclid(step) == 0 {
                set.push(cell_index(n, 2, (x, y)).unwrap());
            }
        }
    }
    if n > t {
        let r = RecoverySet::axial(t as i64, t as i64, t as i64, t as i64)?;
        let w = window_graph_with(&r, n, limits)?;
        if !w.graph.is_dag(&set)?.is_acyclic() {
            return Err(Error::BadWitness {
                kind: "axial",
                reason: "diagonal set is not a DAG set".into(),
            });
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn avoiding_examples() {
        assert_eq!(max_b_avoiding(&[1, 2], 7, &lim()).unwrap(), vec![0, 3, 6]);
        assert_eq!(
            max_b_avoiding(&[1, 2, 4], 9, &lim()).unwrap(),
            vec![0, 3, 6]
        );
        assert_eq!(max_b_avoiding(&[1], 6, &lim()).unwrap().len(), 3);
    }

    #[test]
    fn dp_matches_exhaustive() {
        for b in [
            vec![1u64],
            vec![1, 2],
            vec![1, 2, 4],
            vec![2, 3],
            vec![3, 5],
        ] {
            for n in 1..20 {
                assert_eq!(
                    avoiding_dp(&b, n).len(),
                    avoiding_exhaustive(&b, n).len(),
                    "{b:?} {n}"
                );
            }
        }
    }

    #[test]
    fn caps() {
        let tight = Limits {
            avoiding_table: 0,
            avoiding_exhaustive: 5,
            ..lim()
        };
        assert!(max_b_avoiding(&[1], 5, &tight).is_ok());
        assert!(matches!(
            max_b_avoiding(&[1], 6, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn difference_bounds() {
        let r = RecoverySet::interval(1, 1).unwrap();
        let pts = diff_avoiding_bound(&r, &[6, 7], &lim()).unwrap();
        assert_eq!(pts[0].bound, ratio(1, 2));
        assert_eq!(pts[1].bound, ratio(3, 7));
        let r = RecoverySet::from_offsets(1, &[(-4, 0), (-2, 0), (-1, 0), (1, 0), (2, 0), (4, 0)])
            .unwrap();
        let pts = diff_avoiding_bound(&r, &[30], &lim()).unwrap();
        assert_eq!(pts[0].bound, ratio(2, 3));
    }

    #[test]
    fn axial_sets() {
        assert_eq!(axial_dag_set(1, 2, &lim()).unwrap(), vec![0, 3]);
        assert_eq!(axial_dag_set(1, 8, &lim()).unwrap().len(), 32);
        assert_eq!(axial_dag_set(2, 9, &lim()).unwrap().len(), 27);
        assert!(axial_dag_set(2, 8, &lim()).is_err());
    }
}
