//! Code constructions. All of them are linear over a prime field and come
//! back as [`LinearCode`]s; small ones can be listed with
//! [`LinearCode::enumerate`].

mod tiling;

pub use tiling::{
    anticode_shape, lattice_points, lattice_tiling, tiling_code, verify_tiling, Tiling, TilingCode,
    TilingKind,
};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::code::Code;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::linear::LinearCode;
use crate::rational::{ratio, Rational};
use crate::{Error, Result};

/// Checks that `parts` partition `0..n` into cliques of mutually adjacent vertices.
pub fn check_clique_partition(g: &Graph, parts: &[Vec<usize>]) -> Result<()> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::NotAPartition(format!("part {i} is empty")));
        }
        for &v in part {
            g.check_vertex(v)?;
            if owner[v] != usize::MAX {
                return Err(Error::NotAPartition(format!(
                    "vertex {v} lies in parts {} and {i}",
                    owner[v]
                )));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::NotAPartition(format!("vertex {v} is not covered")));
    }
    for (i, part) in parts.iter().enumerate() {
        for (a, &u) in part.iter().enumerate() {
            for &v in &part[a + 1..] {
                if !g.mutual(u, v) {
                    return Err(Error::NotAClique { part: i, u, v });
                }
            }
        }
    }
    Ok(())
}

/// One parity check per clique; rate `1 - #parts / n`.
pub fn clique_partition_code(g: &Graph, parts: &[Vec<usize>], q: u32) -> Result<LinearCode> {
    check_clique_partition(g, parts)?;
    let n = g.n();
    let checks: Vec<Vec<u32>> = parts
        .iter()
        .map(|part| {
            let mut row = vec![0; n];
            for &v in part {
                row[v] = 1;
            }
            row
        })
        .collect();
    LinearCode::from_parity_checks(q, 1, n, &checks)
}

/// Row parity on the `n x n` row/column torus (vertex `i * n + j`).
pub fn torus_row_parity(n: usize, q: u32) -> Result<LinearCode> {
    let g = crate::graph::torus_rowcol_graph(n)?;
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| i * n + j).collect())
        .collect();
    clique_partition_code(&g, &rows, q)
}

/// Each edge carries a free symbol; a vertex stores the symbols of its
/// incident edges (sorted edge order), zero-padded to the maximum degree.
pub fn edge_to_vertex_code(g: &Graph, q: u32) -> Result<LinearCode> {
    if g.is_directed() {
        return Err(Error::DirectedInput("edge_to_vertex_code"));
    }
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let level = (0..n).map(|v| g.degree(v)).max().unwrap_or(1);
    let mut next_slot = vec![0usize; n];
    let mut rows = Vec::new();
    for (u, v) in g.edges() {
        let mut row = vec![0u32; n * level];
        for w in [u, v] {
            row[w * level + next_slot[w]] = 1;
            next_slot[w] += 1;
        }
        rows.push(row);
    }
    LinearCode::from_generator(q, level as u32, n, rows)
}

/// Matched vertices repeat each other's symbol; unmatched ones hold 0.
pub fn matching_code(g: &Graph, matching: &[(usize, usize)], q: u32) -> Result<LinearCode> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut rows = Vec::new();
    for &(u, v) in matching {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if u == v || !g.mutual(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        for w in [u, v] {
            if used[w] {
                return Err(Error::OverlappingMatching(w));
            }
            used[w] = true;
        }
        let mut row = vec![0; n];
        row[u] = 1;
        row[v] = 1;
        rows.push(row);
    }
    LinearCode::from_generator(q, 1, n, rows)
}

/// Code on the window `[n]` of `Z_{{-l, r}}`: within each block of `m = l + r`
/// positions, a word is constant on residue classes mod `d = gcd(l, r)`, so
/// positions `km + [d]` carry the information. Rate `d / m`.
pub fn gcd_scheme_code(l: usize, r: usize, n: usize, q: u32) -> Result<(LinearCode, Rational)> {
    if l == 0 || r == 0 {
        return Err(Error::Invalid("l and r must be positive".into()));
    }
    let m = l + r;
    if !n.is_multiple_of(m) {
        return Err(Error::Divisibility(format!(
            "l + r = {m} does not divide n = {n}"
        )));
    }
    let d = crate::rational::gcd(l as u64, r as u64) as usize;
    let mut rows = Vec::new();
    for block in 0..n / m {
        for c in 0..d {
            let mut row = vec![0; n];
            for j in 0..m / d {
                row[block * m + c + d * j] = 1;
            }
            rows.push(row);
        }
    }
    let code = LinearCode::from_generator(q, 1, n, rows)?;
    Ok((code, ratio(d as i64, m as i64)))
}

/// `rows` independent copies of a code on `[n]`, row `y` at cells
/// `y * n .. (y + 1) * n` (cell `(x, y)` has index `x + n * y`).
pub fn stacked_linear_code(c1d: &LinearCode, rows: usize) -> Result<LinearCode> {
    let copies = vec![c1d.clone(); rows];
    LinearCode::direct_sum(&copies)
}

/// Explicit-word version of [`stacked_linear_code`]: every `rows`-tuple of words.
pub fn stacked_code(c1d: &Code, rows: usize, limits: &Limits) -> Result<Code> {
    let size = (c1d.len() as u128)
        .checked_pow(rows as u32)
        .unwrap_or(u128::MAX);
    if size > limits.enumeration {
        return Err(Error::CapExceeded {
            what: "stacked code",
            size,
            cap: limits.enumeration,
        });
    }
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..rows {
        let mut next = Vec::with_capacity(words.len() * c1d.len());
        for prefix in &words {
            for w in c1d.words() {
                let mut word = prefix.clone();
                word.extend_from_slice(w);
                next.push(word);
            }
        }
        words = next;
    }
    Code::new(c1d.q(), c1d.level(), c1d.n() * rows, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Scope;
    use crate::window::{window_graph, RecoverySet};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn clique_codes() {
        let k3 = Graph::complete(3);
        let c = clique_partition_code(&k3, &[vec![0, 1, 2]], 2).unwrap();
        assert_eq!(c.rate().exact, Some(ratio(2, 3)));
        assert!(c.verify(&k3, Scope::All).unwrap().passed());
        let c6 = Graph::cycle(6);
        let c = clique_partition_code(&c6, &[vec![0, 1], vec![2, 3], vec![4, 5]], 2).unwrap();
        assert_eq!(c.rate().exact, Some(ratio(1, 2)));
        assert_eq!(
            clique_partition_code(&c6, &[vec![0, 1, 2], vec![3, 4, 5]], 2),
            Err(Error::NotAClique {
                part: 0,
                u: 0,
                v: 2
            })
        );
        let torus = torus_row_parity(3, 2).unwrap();
        assert_eq!(torus.rate().exact, Some(ratio(2, 3)));
    }

    #[test]
    fn edge_to_vertex() {
        let c5 = Graph::cycle(5);
        let c = edge_to_vertex_code(&c5, 2).unwrap();
        assert_eq!((c.level(), c.dimension()), (2, 5));
        assert_eq!(c.rate().exact, Some(ratio(1, 2)));
        let explicit = c.enumerate(&limits()).unwrap();
        assert_eq!(explicit.len(), 32);
        assert!(explicit.verify(&c5, Scope::All).unwrap().passed());
        let k2 = edge_to_vertex_code(&Graph::complete(2), 3)
            .unwrap()
            .enumerate(&limits())
            .unwrap();
        assert_eq!(k2.len(), 3);
        assert_eq!(k2.rate().exact, Some(ratio(1, 2)));
        assert_eq!(
            edge_to_vertex_code(&Graph::new(2, &[], false).unwrap(), 2),
            Err(Error::IsolatedVertex(0))
        );
    }

    #[test]
    fn matchings() {
        let c5 = Graph::cycle(5);
        let c = matching_code(&c5, &[(0, 1), (2, 3)], 2).unwrap();
        assert_eq!(c.rate().exact, Some(ratio(2, 5)));
        assert!(c.verify(&c5, Scope::All).unwrap().passed());
        assert_eq!(
            matching_code(&c5, &[(0, 1), (1, 2)], 2),
            Err(Error::OverlappingMatching(1))
        );
        assert_eq!(
            matching_code(&c5, &[(0, 2)], 2),
            Err(Error::MissingEdge(0, 2))
        );
        let k2 = matching_code(&Graph::complete(2), &[(0, 1)], 2)
            .unwrap()
            .enumerate(&limits())
            .unwrap();
        assert_eq!(
            k2.words().collect::<Vec<_>>(),
            vec![&[0, 0][..], &[1, 1][..]]
        );
    }

    #[test]
    fn gcd_scheme() {
        for (l, r, n, q, rate) in [
            (6, 4, 20, 3, ratio(1, 5)),
            (1, 1, 10, 2, ratio(1, 2)),
            (2, 4, 12, 2, ratio(1, 3)),
        ] {
            let (code, interior_rate) = gcd_scheme_code(l, r, n, q).unwrap();
            assert_eq!(interior_rate, rate);
            assert_eq!(code.rate().exact, Some(rate));
            let w = window_graph(&RecoverySet::pair(l as i64, r as i64).unwrap(), n).unwrap();
            assert!(code
                .verify(&w.graph, Scope::Subset(&w.interior))
                .unwrap()
                .passed());
        }
        assert!(matches!(
            gcd_scheme_code(6, 4, 21, 3),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn stacking() {
        let (c, _) = gcd_scheme_code(1, 1, 6, 2).unwrap();
        let stacked = stacked_linear_code(&c, 6).unwrap();
        assert_eq!(stacked.rate().exact, Some(ratio(1, 2)));
        let w = window_graph(&RecoverySet::axial(1, 1, 1, 1).unwrap(), 6).unwrap();
        assert!(stacked
            .verify(&w.graph, Scope::Subset(&w.interior))
            .unwrap()
            .passed());
        let single = Code::new(2, 1, 3, vec![vec![0, 1, 0]]).unwrap();
        assert_eq!(stacked_code(&single, 4, &limits()).unwrap().len(), 1);
    }
}
