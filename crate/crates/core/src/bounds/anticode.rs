//! Anticode sizes and the code-anticode bound.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::clique::max_clique;
use crate::bitset::Bitset;
use crate::rational::Rational;
use crate::window::{Metric, Offset};

/// Closed-form size of a largest anticode of diameter `d` in `Z^2`.
pub fn anticode_max(metric: Metric, d: u64) -> u64 {
    match metric {
        Metric::Linf => (d + 1) * (d + 1),
        Metric::L1 if d.is_multiple_of(2) => d * d / 2 + d + 1,
        Metric::L1 => (d + 1) * (d + 1) / 2,
    }
}

/// A largest anticode of diameter `d` inside the box `[side]^2`, by exact
/// clique search on the "distance at most `d`" graph.
pub fn brute_anticode(metric: Metric, d: u64, side: usize) -> Vec<Offset> {
    let cells: Vec<Offset> = (0..side as i64)
        .flat_map(|y| (0..side as i64).map(move |x| (x, y)))
        .collect();
    let adj: Vec<Bitset> = cells
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let near = cells
                .iter()
                .enumerate()
                .filter(|&(j, &b)| j != i && metric.distance(a, b) <= d as i64)
                .map(|(j, _)| j);
            Bitset::from_indices(cells.len(), near)
        })
        .collect();
    max_clique(&adj).into_iter().map(|i| cells[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeAnticodeBound {
    /// `floor(n / D)`: most codewords at pairwise distance above the anticode diameter.
    pub max_code: u64,
    /// `1 - 1/D`, only when a tiling by anticodes is known.
    pub capacity: Option<Rational>,
}

pub fn code_anticode_bound(
    n_vertices: u64,
    anticode_size: u64,
    tiling_exists: bool,
) -> CodeAnticodeBound {
    let d = anticode_size.max(1);
    CodeAnticodeBound {
        max_code: n_vertices / d,
        capacity: tiling_exists.then(|| Rational::new(BigInt::from(d - 1), BigInt::from(d))),
    }
}
