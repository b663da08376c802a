//! Anticode tilings of square windows and the parity codes they carry.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::graph::Graph;
use crate::linear::LinearCode;
use crate::rational::Rational;
use crate::window::{cell_index, Metric, Offset};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TilingKind {
    /// Squares of side `r + 1`: anticodes of `l_inf` diameter `r`.
    Linf { r: usize },
    /// Largest `l1` anticodes of diameter `r`.
    L1 { r: usize },
    /// Boxes of `(r + 1) x (b + 1)` cells.
    Rect { r: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub n: usize,
    pub kind: Option<TilingKind>,
    /// Tiles as ascending cell indices (`x + n * y`), sorted by first cell.
    pub tiles: Vec<Vec<usize>>,
    /// Cells covered by the tiles, ascending.
    pub region: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingCode {
    pub code: LinearCode,
    /// `(covered cells - tiles) / covered cells`.
    pub interior_rate: Rational,
    pub pinned: Vec<usize>,
}

/// Cells of the prototype anticode, anchored at the origin.
pub fn anticode_shape(kind: TilingKind) -> Vec<Offset> {
    match kind {
        TilingKind::Linf { r } => box_cells(r + 1, r + 1),
        TilingKind::Rect { r, b } => box_cells(r + 1, b + 1),
        TilingKind::L1 { r } if r % 2 == 0 => {
            let h = (r / 2) as i64;
            let mut cells = Vec::new();
            for y in -h..=h {
                for x in -h..=h {
                    if x.abs() + y.abs() <= h {
                        cells.push((x, y));
                    }
                }
            }
            cells
        }
        TilingKind::L1 { r } => {
            // Start from a horizontal domino and grow by l1 neighbors.
            let mut cells: BTreeSet<Offset> = [(0, 0), (1, 0)].into_iter().collect();
            for _ in 0..(r - 1) / 2 {
                let grown: Vec<Offset> = cells
                    .iter()
                    .flat_map(|&(x, y)| [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)])
                    .collect();
                cells.extend(grown);
            }
            cells.into_iter().collect()
        }
    }
}

fn box_cells(w: usize, h: usize) -> Vec<Offset> {
    (0..h as i64)
        .flat_map(|y| (0..w as i64).map(move |x| (x, y)))
        .collect()
}

/// A lattice in Hermite normal form: generated by `(a, 0)` and `(b, c)`
/// with `0 <= b < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lattice {
    a: i64,
    b: i64,
    c: i64,
}

impl Lattice {
    fn residue(self, (x, y): Offset) -> Offset {
        let t = y.div_euclid(self.c);
        ((x - t * self.b).rem_euclid(self.a), y - t * self.c)
    }

    fn contains(self, p: Offset) -> bool {
        self.residue(p) == (0, 0)
    }

    /// Is some nonzero lattice vector within `l1` distance `r` of the origin?
    /// A vector `i (a, 0) + j (b, c)` of norm at most `r` has `|j| <= r` and
    /// `|i| <= r + r b`, so the search is exhaustive.
    fn has_short_vector(self, r: i64) -> bool {
        let span = r + r * self.b;
        (-r..=r).any(|j| {
            (-span..=span).any(|i| {
                let (x, y) = (i * self.a + j * self.b, j * self.c);
                (x, y) != (0, 0) && x.abs() + y.abs() <= r
            })
        })
    }
}

/// First HNF lattice (by `a`, then `b`) whose translates of `shape` tile
/// the plane and whose points are pairwise more than `r` apart in `l1`.
/// With determinant `|shape|`, tiling holds iff the residues of the shape's
/// cells are distinct.
fn find_lattice(shape: &[Offset], r: i64) -> Option<Lattice> {
    let size = shape.len() as i64;
    for a in 1..=size {
        if size % a != 0 {
            continue;
        }
        for b in 0..a {
            let lattice = Lattice { a, b, c: size / a };
            let residues: BTreeSet<Offset> = shape.iter().map(|&p| lattice.residue(p)).collect();
            if residues.len() == shape.len() && !lattice.has_short_vector(r) {
                return Some(lattice);
            }
        }
    }
    None
}

fn lattice_for(kind: TilingKind, shape: &[Offset]) -> Result<Lattice> {
    match kind {
        TilingKind::Linf { r } => Ok(Lattice {
            a: r as i64 + 1,
            b: 0,
            c: r as i64 + 1,
        }),
        TilingKind::Rect { r, b } => Ok(Lattice {
            a: r as i64 + 1,
            b: 0,
            c: b as i64 + 1,
        }),
        TilingKind::L1 { r } if r % 2 == 0 => {
            // The lattice spanned by (h, h + 1) and (h + 1, -h). Its rows are
            // one apart and the sum of the generators, (2h + 1, 1), gives the
            // shift between consecutive rows.
            let h = (r / 2) as i64;
            let a = 2 * h * h + 2 * h + 1;
            Ok(Lattice {
                a,
                b: (2 * h + 1) % a,
                c: 1,
            })
        }
        TilingKind::L1 { r } => find_lattice(shape, r as i64)
            .ok_or_else(|| Error::Invalid("the l1 anticode admits no lattice tiling".into())),
    }
}

/// Translates of the anticode along its tiling lattice, keeping the tiles
/// that fit inside `[n]^2`. Box shapes require the side to be a multiple of
/// the box dimensions so that the whole window is covered.
pub fn lattice_tiling(kind: TilingKind, n: usize) -> Result<Tiling> {
    let (w, h) = match kind {
        TilingKind::Linf { r } => (r + 1, r + 1),
        TilingKind::Rect { r, b } => (r + 1, b + 1),
        TilingKind::L1 { r } => {
            if r == 0 {
                return Err(Error::Invalid("anticode diameter must be positive".into()));
            }
            (1, 1)
        }
    };
    if !n.is_multiple_of(w) || !n.is_multiple_of(h) {
        return Err(Error::Divisibility(format!(
            "box {w} x {h} does not divide the window side {n}"
        )));
    }
    let shape = anticode_shape(kind);
    let lattice = lattice_for(kind, &shape)?;
    let reach = shape
        .iter()
        .map(|p| p.0.abs().max(p.1.abs()))
        .max()
        .unwrap_or(0);
    let mut tiles = Vec::new();
    let span = n as i64 + reach;
    for cy in -reach..span {
        for cx in -reach..span {
            if !lattice.contains((cx, cy)) {
                continue;
            }
            let cells: Option<Vec<usize>> = shape
                .iter()
                .map(|&(dx, dy)| cell_index(n, 2, (cx + dx, cy + dy)))
                .collect();
            if let Some(mut cells) = cells {
                cells.sort_unstable();
                tiles.push(cells);
            }
        }
    }
    tiles.sort();
    let mut region: Vec<usize> = tiles.iter().flatten().copied().collect();
    region.sort_unstable();
    Ok(Tiling {
        n,
        kind: Some(kind),
        tiles,
        region,
    })
}

/// Cells of `[n]^2` lying on the tiling lattice of `kind`, as indices
/// `x + n * y`. The lattice is a code whose points are pairwise farther
/// apart than the anticode diameter.
pub fn lattice_points(kind: TilingKind, n: usize) -> Result<Vec<usize>> {
    if let TilingKind::L1 { r: 0 } = kind {
        return Err(Error::Invalid("anticode diameter must be positive".into()));
    }
    let lattice = lattice_for(kind, &anticode_shape(kind))?;
    let mut out = Vec::new();
    for y in 0..n as i64 {
        for x in 0..n as i64 {
            if lattice.contains((x, y)) {
                out.push(x as usize + n * y as usize);
            }
        }
    }
    Ok(out)
}

/// Tiles are disjoint cliques of `g` and cover `region` exactly.
pub fn verify_tiling(t: &Tiling, g: &Graph) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, tile) in t.tiles.iter().enumerate() {
        for &v in tile {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::NotAPartition(format!(
                    "cell {v} is in two tiles (second: {i})"
                )));
            }
        }
        for (a, &u) in tile.iter().enumerate() {
            for &v in &tile[a + 1..] {
                if !g.mutual(u, v) {
                    return Err(Error::NotAClique { part: i, u, v });
                }
            }
        }
    }
    let region: BTreeSet<usize> = t.region.iter().copied().collect();
    if seen != region {
        return Err(Error::NotAPartition(
            "tiles do not cover the declared region exactly".into(),
        ));
    }
    Ok(())
}

/// One parity check per tile; cells outside the tiled region are pinned to 0.
pub fn tiling_code(t: &Tiling, g: &Graph, q: u32) -> Result<TilingCode> {
    verify_tiling(t, g)?;
    let n = g.n();
    let mut checks = Vec::new();
    let mut covered = vec![false; n];
    for tile in &t.tiles {
        let mut row = vec![0u32; n];
        for &v in tile {
            row[v] = 1;
            covered[v] = true;
        }
        checks.push(row);
    }
    let pinned: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
    for &v in &pinned {
        let mut row = vec![0u32; n];
        row[v] = 1;
        checks.push(row);
    }
    let code = LinearCode::from_parity_checks(q, 1, n, &checks)?;
    let cells = t.region.len();
    if cells == 0 {
        return Err(Error::Invalid("the tiling covers no cell".into()));
    }
    let interior_rate = Rational::new(BigInt::from(cells - t.tiles.len()), BigInt::from(cells));
    Ok(TilingCode {
        code,
        interior_rate,
        pinned,
    })
}

impl TilingKind {
    /// The recovery metric whose anticodes this tiling uses, if any.
    pub fn metric(self) -> Option<Metric> {
        match self {
            TilingKind::Linf { .. } => Some(Metric::Linf),
            TilingKind::L1 { .. } => Some(Metric::L1),
            TilingKind::Rect { .. } => None,
        }
    }
}
