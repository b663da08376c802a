//! Recovery sets on `Z` and `Z^2` and the finite window graphs they induce.
//!
//! Cell `(x, y)` of an `n x n` window has index `x + n * y` and label
//! `[x, y]`; in one dimension cell `x` has index `x` and label `[x]`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::limits::Limits;
use crate::{Error, Result};

/// Offset `(dx, dy)`; one-dimensional sets keep `dy = 0`.
pub type Offset = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    L1,
    Linf,
}

impl Metric {
    pub fn distance(self, a: Offset, b: Offset) -> i64 {
        let (dx, dy) = ((a.0 - b.0).abs(), (a.1 - b.1).abs());
        match self {
            Metric::L1 => dx + dy,
            Metric::Linf => dx.max(dy),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "l1",
            Metric::Linf => "linf",
        }
    }
}

/// The parametrized recovery-set families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryKind {
    /// `{1..r} ∪ {-l..-1}` on `Z`.
    Interval { l: i64, r: i64 },
    /// `{-l, r}` on `Z`.
    Pair { l: i64, r: i64 },
    /// Nonzero points of the ball of the given radius in `Z^2`.
    Ball { metric: Metric, radius: i64 },
    /// `[-l, r] x [-b, a]` without the origin, with `0 <= r < l` and `0 <= b < a`.
    Rect { l: i64, r: i64, b: i64, a: i64 },
    /// `([-l, r] x {0}) ∪ ({0} x [-b, a])` without the origin.
    Axial { l: i64, r: i64, b: i64, a: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverySet {
    dim: u8,
    offsets: Vec<Offset>,
}

impl RecoverySet {
    /// An arbitrary recovery set. Offsets are sorted and deduplicated.
    pub fn from_offsets(dim: u8, offsets: &[Offset]) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::RecoverySet(format!("dimension {dim} is not 1 or 2")));
        }
        let set: BTreeSet<Offset> = offsets.iter().copied().collect();
        if set.contains(&(0, 0)) {
            return Err(Error::RecoverySet("the zero offset is not allowed".into()));
        }
        if dim == 1 && set.iter().any(|o| o.1 != 0) {
            return Err(Error::RecoverySet(
                "one-dimensional offsets need dy = 0".into(),
            ));
        }
        if set.is_empty() {
            return Err(Error::RecoverySet("empty recovery set".into()));
        }
        Ok(RecoverySet {
            dim,
            offsets: set.into_iter().collect(),
        })
    }

    pub fn new(kind: RecoveryKind) -> Result<Self> {
        let positive = |name: &str, v: i64| {
            if v >= 1 {
                Ok(())
            } else {
                Err(Error::RecoverySet(format!(
                    "{name} = {v} must be at least 1"
                )))
            }
        };
        match kind {
            RecoveryKind::Interval { l, r } => {
                positive("l", l)?;
                positive("r", r)?;
                let offsets: Vec<Offset> = (-l..=r).filter(|&d| d != 0).map(|d| (d, 0)).collect();
                Self::from_offsets(1, &offsets)
            }
            RecoveryKind::Pair { l, r } => {
                positive("l", l)?;
                positive("r", r)?;
                Self::from_offsets(1, &[(-l, 0), (r, 0)])
            }
            RecoveryKind::Ball { metric, radius } => {
                positive("radius", radius)?;
                let mut offsets = Vec::new();
                for dy in -radius..=radius {
                    for dx in -radius..=radius {
                        if (dx, dy) != (0, 0) && metric.distance((dx, dy), (0, 0)) <= radius {
                            offsets.push((dx, dy));
                        }
                    }
                }
                Self::from_offsets(2, &offsets)
            }
            RecoveryKind::Rect { l, r, b, a } => {
                positive("l", l)?;
                positive("a", a)?;
                if !(0 <= r && r < l && 0 <= b && b < a) {
                    return Err(Error::RecoverySet(format!(
                        "rect needs 0 <= r < l and 0 <= b < a, got l={l} r={r} b={b} a={a}"
                    )));
                }
                let mut offsets = Vec::new();
                for dy in -b..=a {
                    for dx in -l..=r {
                        if (dx, dy) != (0, 0) {
                            offsets.push((dx, dy));
                        }
                    }
                }
                Self::from_offsets(2, &offsets)
            }
            RecoveryKind::Axial { l, r, b, a } => {
                for (name, v) in [("l", l), ("r", r), ("b", b), ("a", a)] {
                    positive(name, v)?;
                }
                let mut offsets: Vec<Offset> =
                    (-l..=r).filter(|&d| d != 0).map(|d| (d, 0)).collect();
                offsets.extend((-b..=a).filter(|&d| d != 0).map(|d| (0, d)));
                Self::from_offsets(2, &offsets)
            }
        }
    }

    pub fn interval(l: i64, r: i64) -> Result<Self> {
        Self::new(RecoveryKind::Interval { l, r })
    }

    pub fn pair(l: i64, r: i64) -> Result<Self> {
        Self::new(RecoveryKind::Pair { l, r })
    }

    pub fn ball(metric: Metric, radius: i64) -> Result<Self> {
        Self::new(RecoveryKind::Ball { metric, radius })
    }

    pub fn rect(l: i64, r: i64, b: i64, a: i64) -> Result<Self> {
        Self::new(RecoveryKind::Rect { l, r, b, a })
    }

    pub fn axial(l: i64, r: i64, b: i64, a: i64) -> Result<Self> {
        Self::new(RecoveryKind::Axial { l, r, b, a })
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn offsets(&self) -> &[Offset] {
        &self.offsets
    }

    pub fn contains(&self, offset: Offset) -> bool {
        self.offsets.binary_search(&offset).is_ok()
    }

    /// Largest absolute coordinate over all offsets.
    pub fn max_magnitude(&self) -> i64 {
        self.offsets
            .iter()
            .map(|o| o.0.abs().max(o.1.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.offsets.iter().all(|&(x, y)| self.contains((-x, -y)))
    }

    /// Magnitudes of the negative and positive offsets of a one-dimensional set.
    pub fn split_1d(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        if self.dim != 1 {
            return Err(Error::RecoverySet("expected a one-dimensional set".into()));
        }
        let left = self
            .offsets
            .iter()
            .filter(|o| o.0 < 0)
            .map(|o| o.0.unsigned_abs())
            .collect();
        let right = self
            .offsets
            .iter()
            .filter(|o| o.0 > 0)
            .map(|o| o.0 as u64)
            .collect();
        Ok((left, right))
    }
}

/// `Z_R` (or `Z^2_R`) restricted to `[n]` (or `[n]^2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowGraph {
    pub graph: Graph,
    pub n: usize,
    pub recovery: RecoverySet,
    /// Cells whose recovery set leaves the window, ascending.
    pub boundary: Vec<usize>,
    /// The remaining cells, ascending.
    pub interior: Vec<usize>,
}

impl WindowGraph {
    pub fn dim(&self) -> u8 {
        self.recovery.dim
    }

    pub fn cell_count(&self) -> usize {
        self.graph.n()
    }

    /// Coordinates of a cell index.
    pub fn coords(&self, v: usize) -> Offset {
        cell_coords(self.n, self.dim(), v)
    }

    /// Index of in-window coordinates.
    pub fn index(&self, p: Offset) -> Option<usize> {
        cell_index(self.n, self.dim(), p)
    }
}

pub fn cell_coords(n: usize, dim: u8, v: usize) -> Offset {
    if dim == 1 {
        (v as i64, 0)
    } else {
        ((v % n) as i64, (v / n) as i64)
    }
}

pub fn cell_index(n: usize, dim: u8, p: Offset) -> Option<usize> {
    let inside = |c: i64| c >= 0 && (c as usize) < n;
    match dim {
        1 => (p.1 == 0 && inside(p.0)).then_some(p.0 as usize),
        _ => (inside(p.0) && inside(p.1)).then(|| p.0 as usize + n * p.1 as usize),
    }
}

pub fn window_graph(recovery: &RecoverySet, n: usize) -> Result<WindowGraph> {
    window_graph_with(recovery, n, &Limits::default())
}

/// Builds the window graph, rejecting sides at or below the largest offset
/// magnitude and sides beyond the configured caps.
pub fn window_graph_with(recovery: &RecoverySet, n: usize, limits: &Limits) -> Result<WindowGraph> {
    let dim = recovery.dim;
    let max = if dim == 1 {
        limits.window_side_1d
    } else {
        limits.window_side_2d
    };
    if n > max {
        return Err(Error::WindowTooLarge { n, max });
    }
    let min = recovery.max_magnitude() as usize;
    if n <= min {
        return Err(Error::WindowTooSmall { n, min });
    }
    let cells = if dim == 1 { n } else { n * n };
    let mut edges = Vec::new();
    let mut boundary = Vec::new();
    let mut interior = Vec::new();
    for v in 0..cells {
        let p = cell_coords(n, dim, v);
        let mut exits = false;
        for &o in &recovery.offsets {
            match cell_index(n, dim, (p.0 + o.0, p.1 + o.1)) {
                Some(u) => edges.push((v, u)),
                None => exits = true,
            }
        }
        if exits {
            boundary.push(v);
        } else {
            interior.push(v);
        }
    }
    let labels = (0..cells)
        .map(|v| {
            let p = cell_coords(n, dim, v);
            if dim == 1 {
                alloc::vec![p.0]
            } else {
                alloc::vec![p.0, p.1]
            }
        })
        .collect();
    let graph = Graph::new(cells, &edges, true)?.with_labels(labels)?;
    Ok(WindowGraph {
        graph,
        n,
        recovery: recovery.clone(),
        boundary,
        interior,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn recovery_set_examples() {
        assert_eq!(
            RecoverySet::interval(1, 1).unwrap().offsets(),
            &[(-1, 0), (1, 0)]
        );
        assert_eq!(
            RecoverySet::pair(6, 4).unwrap().offsets(),
            &[(-6, 0), (4, 0)]
        );
        let ball = RecoverySet::ball(Metric::L1, 1).unwrap();
        assert_eq!(ball.offsets(), &[(-1, 0), (0, -1), (0, 1), (1, 0)]);
        assert_eq!(RecoverySet::axial(1, 1, 1, 1).unwrap(), ball);
        assert!(RecoverySet::ball(Metric::Linf, 0).is_err());
        assert!(RecoverySet::interval(0, 1).is_err());
        assert!(RecoverySet::rect(1, 1, 0, 1).is_err());
        assert_eq!(
            RecoverySet::rect(2, 1, 1, 2).unwrap().offsets().len(),
            4 * 4 - 1
        );
    }

    #[test]
    fn interval_window() {
        let w = window_graph(&RecoverySet::interval(2, 2).unwrap(), 6).unwrap();
        assert_eq!(w.graph.out_neighbors(3), &[1, 2, 4, 5]);
        assert_eq!(w.boundary, vec![0, 1, 4, 5]);
        assert_eq!(w.interior, vec![2, 3]);
    }

    #[test]
    fn pair_window_is_all_boundary() {
        let w = window_graph(&RecoverySet::pair(6, 4).unwrap(), 8).unwrap();
        assert_eq!(w.boundary, (0..8).collect::<Vec<_>>());
        let w = window_graph(&RecoverySet::pair(6, 4).unwrap(), 10).unwrap();
        assert!(w.interior.is_empty());
        let w = window_graph(&RecoverySet::pair(6, 4).unwrap(), 11).unwrap();
        assert_eq!(w.interior, vec![6]);
    }

    #[test]
    fn linf_window_interior() {
        let w = window_graph(&RecoverySet::ball(Metric::Linf, 1).unwrap(), 4).unwrap();
        assert_eq!(w.cell_count(), 16);
        let interior: Vec<Offset> = w.interior.iter().map(|&v| w.coords(v)).collect();
        assert_eq!(interior, vec![(1, 1), (2, 1), (1, 2), (2, 2)]);
    }

    #[test]
    fn size_checks() {
        let r = RecoverySet::interval(2, 2).unwrap();
        assert_eq!(
            window_graph(&r, 2),
            Err(Error::WindowTooSmall { n: 2, min: 2 })
        );
        let b = RecoverySet::ball(Metric::L1, 1).unwrap();
        assert_eq!(
            window_graph(&b, 65),
            Err(Error::WindowTooLarge { n: 65, max: 64 })
        );
    }
}
