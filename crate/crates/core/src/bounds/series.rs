//! Per-window capacity bounds and their extrapolation to the infinite lattice.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::exact::mais;
use crate::construct::{lattice_points, TilingKind};
use crate::limits::Limits;
use crate::rational::Rational;
use crate::window::{window_graph_with, RecoverySet};
use crate::{Error, Result};

/// How the per-window bound `c_n = 1 - |S|/N` gets its DAG set `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesBound {
    /// A maximum acyclic induced subgraph, by exact search.
    Mais,
    /// The points of an anticode tiling lattice, checked to be a DAG set.
    Lattice(TilingKind),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint {
    pub n: usize,
    /// Cells in the window (`n` or `n^2`).
    pub cells: usize,
    pub dag_set: Vec<usize>,
    /// `c_n = 1 - |S| / cells`.
    pub value: Rational,
    /// `|boundary| / cells`: the window's restriction of an infinite system
    /// has rate at most `c_n` plus this.
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowSeries {
    pub points: Vec<SeriesPoint>,
    /// Largest `c_n` over the later half of the schedule. An estimate of
    /// the limit superior, not a proof.
    pub estimate: Rational,
}

pub fn window_series(
    recovery: &RecoverySet,
    ns: &[usize],
    bound: SeriesBound,
    limits: &Limits,
) -> Result<WindowSeries> {
    if ns.is_empty() {
        return Err(Error::Invalid("empty window schedule".into()));
    }
    let mut points = Vec::new();
    for &n in ns {
        let w = window_graph_with(recovery, n, limits)?;
        let set = match bound {
            SeriesBound::Mais => mais(&w.graph, limits)?,
            SeriesBound::Lattice(kind) => {
                if w.dim() != 2 {
                    return Err(Error::Invalid(
                        "lattice sets need a two-dimensional window".into(),
                    ));
                }
                lattice_points(kind, n)?
            }
        };
        if !w.graph.is_dag(&set)?.is_acyclic() {
            return Err(Error::BadWitness {
                kind: "mais",
                reason: format!("window n={n}: set is not a DAG set"),
            });
        }
        let cells = w.cell_count();
        let frac = |num: usize| Rational::new(BigInt::from(num), BigInt::from(cells));
        points.push(SeriesPoint {
            n,
            cells,
            value: frac(cells - set.len()),
            slack: frac(w.boundary.len()),
            dag_set: set,
        });
    }
    let tail = points.len() / 2;
    let estimate = points[tail..]
        .iter()
        .map(|p| p.value.clone())
        .max()
        .unwrap();
    Ok(WindowSeries { points, estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::window::Metric;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn intervals() {
        let s = window_series(
            &RecoverySet::interval(1, 1).unwrap(),
            &[4, 6, 8],
            SeriesBound::Mais,
            &lim(),
        )
        .unwrap();
        assert!(s.points.iter().all(|p| p.value == ratio(1, 2)));
        let s = window_series(
            &RecoverySet::interval(2, 2).unwrap(),
            &[6, 9, 12],
            SeriesBound::Mais,
            &lim(),
        )
        .unwrap();
        assert_eq!(s.estimate, ratio(2, 3));
    }

    #[test]
    fn lattice_windows() {
        let r = RecoverySet::ball(Metric::Linf, 1).unwrap();
        let s = window_series(
            &r,
            &[8],
            SeriesBound::Lattice(TilingKind::Linf { r: 1 }),
            &lim(),
        )
        .unwrap();
        assert_eq!(s.estimate, ratio(3, 4));
        let r = RecoverySet::ball(Metric::L1, 2).unwrap();
        let s = window_series(
            &r,
            &[10],
            SeriesBound::Lattice(TilingKind::L1 { r: 2 }),
            &lim(),
        )
        .unwrap();
        assert_eq!(s.estimate, ratio(4, 5));
    }
}
