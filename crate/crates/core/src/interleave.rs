//! Interleaving a storage code across an orthogonal partition family.
//!
//! Vertex `t` of the base graph becomes the fiber `(t, 0) .. (t, s - 1)`;
//! fiber vertex `(t, mu)` has index `t * s + mu`. Given `ks` seed codewords
//! `x^1 .. x^ks`, vertex `(t, mu)` stores the column `mu` of the `k x s`
//! matrix `X_t` with entries `x^{M(i, j)}_t`, where `M` is the matrix
//! assigned to the color of `t`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::code::Code;
use crate::design::OrthogonalPartitionFamily;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::linear::LinearCode;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub c: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let c = colors.iter().map(|&x| x + 1).max().unwrap_or(0);
        Coloring { colors, c }
    }

    /// Adjacent vertices (in either direction) must differ.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: self.colors.len(),
            });
        }
        for (u, v) in g.adjacent_pairs() {
            if self.colors[u] == self.colors[v] {
                return Err(Error::ImproperColoring(u, v));
            }
        }
        Ok(())
    }
}

/// Saturation-degree greedy coloring: repeatedly color the uncolored vertex
/// with the most distinct neighbor colors, breaking ties by degree and then
/// by smallest id, using the smallest free color.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let adj = g.adjacency_bitsets();
    let degree: Vec<usize> = adj.iter().map(|a| a.count()).collect();
    let mut colors = vec![usize::MAX; n];
    let mut seen: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by(|&a, &b| {
                (seen[a].len(), degree[a])
                    .cmp(&(seen[b].len(), degree[b]))
                    .then(b.cmp(&a))
            })
            .expect("an uncolored vertex remains");
        let color = (0..)
            .find(|c| !seen[v].contains(c))
            .expect("a free color exists");
        colors[v] = color;
        for u in adj[v].iter() {
            seen[u].insert(color);
        }
    }
    Coloring::new(colors)
}

/// Colors cell `t` of a one-dimensional window with `t mod (l + r + 1)`.
pub fn mod_coloring(n: usize, l: usize, r: usize) -> Coloring {
    let period = l + r + 1;
    Coloring {
        colors: (0..n).map(|t| t % period).collect(),
        c: period.min(n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavedGraph {
    pub base: Graph,
    pub family: OrthogonalPartitionFamily,
    pub coloring: Coloring,
    pub graph: Graph,
    /// Matrix index of each color.
    pub color_to_matrix: Vec<usize>,
    /// `column_of[m][x]`: column of symbol `x` (1-based) in matrix `m`.
    column_of: Vec<Vec<usize>>,
}

pub fn build_interleaved_graph(
    g: &Graph,
    coloring: &Coloring,
    family: &OrthogonalPartitionFamily,
) -> Result<InterleavedGraph> {
    coloring.check(g)?;
    if coloring.c > family.size() {
        return Err(Error::TooFewMatrices {
            colors: coloring.c,
            matrices: family.size(),
        });
    }
    crate::design::verify_family(family).map_err(Error::InvalidFamily)?;
    let s = family.s;
    let column_of: Vec<Vec<usize>> = family
        .matrices
        .iter()
        .map(|m| {
            let mut col = vec![0; family.k * s + 1];
            for row in m {
                for (j, &x) in row.iter().enumerate() {
                    col[x as usize] = j;
                }
            }
            col
        })
        .collect();
    let color_to_matrix: Vec<usize> = (0..coloring.c).collect();
    let matrix_of = |t: usize| color_to_matrix[coloring.colors[t]];
    let mut edges = Vec::new();
    for t in 0..g.n() {
        let mt = &family.matrices[matrix_of(t)];
        for &u in g.out_neighbors(t) {
            let mu_of = &column_of[matrix_of(u)];
            for mu in 0..s {
                let targets: BTreeSet<usize> =
                    mt.iter().map(|row| mu_of[row[mu] as usize]).collect();
                for nu in targets {
                    edges.push((t * s + mu, u * s + nu));
                }
            }
        }
    }
    let labels = (0..g.n() * s)
        .map(|v| vec![(v / s) as i64, (v % s) as i64])
        .collect();
    let graph = Graph::new(g.n() * s, &edges, true)?.with_labels(labels)?;
    Ok(InterleavedGraph {
        base: g.clone(),
        family: family.clone(),
        coloring: coloring.clone(),
        graph,
        color_to_matrix,
        column_of,
    })
}

/// How many seed words an interleaved word consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every `ks`-tuple of seed words, in lexicographic order of indices.
    Full,
    /// `count` tuples drawn with a ChaCha8 stream seeded by `seed`.
    Sample { seed: u64, count: usize },
}

impl InterleavedGraph {
    pub fn k(&self) -> usize {
        self.family.k
    }

    pub fn s(&self) -> usize {
        self.family.s
    }

    pub fn vertex(&self, t: usize, mu: usize) -> usize {
        t * self.s() + mu
    }

    pub fn matrix_of(&self, t: usize) -> usize {
        self.color_to_matrix[self.coloring.colors[t]]
    }

    /// 1-based seed index stored at row `i` of vertex `(t, mu)`.
    pub fn seed_index(&self, t: usize, mu: usize, i: usize) -> usize {
        self.family.matrices[self.matrix_of(t)][i][mu] as usize
    }

    /// The fiber `{(v, 0) .. (v, s - 1)}` of every `v` in `set`.
    pub fn lift_set(&self, set: &[usize]) -> Vec<usize> {
        let mut lifted: Vec<usize> = set
            .iter()
            .flat_map(|&v| (0..self.s()).map(move |mu| (v, mu)))
            .map(|(v, mu)| self.vertex(v, mu))
            .collect();
        lifted.sort_unstable();
        lifted.dedup();
        lifted
    }

    /// The vertices holding `x^lambda_u` for the neighbors `u` of `t`, where
    /// `lambda` is the seed index at row `j` (0-based) of `(t, mu)`.
    pub fn partial_recovery_neighbors(&self, t: usize, mu: usize, j: usize) -> Result<Vec<usize>> {
        self.base.check_vertex(t)?;
        if mu >= self.s() || j >= self.k() {
            return Err(Error::Invalid(alloc::format!(
                "column {mu} or row {j} outside {} x {}",
                self.k(),
                self.s()
            )));
        }
        let lambda = self.seed_index(t, mu, j);
        let mut out: Vec<usize> = self
            .base
            .out_neighbors(t)
            .iter()
            .map(|&u| self.vertex(u, self.column_of[self.matrix_of(u)][lambda]))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Interleaves `ks` seed words (packed symbols of level `seed_level`
    /// over base `q`) into one word over level `k * seed_level`.
    pub fn interleave_tuple(&self, seeds: &[&[u32]], q: u32, seed_level: u32) -> Result<Vec<u32>> {
        let (k, s, n) = (self.k(), self.s(), self.base.n());
        if seeds.len() != k * s {
            return Err(Error::SeedCount {
                expected: k * s,
                got: seeds.len(),
            });
        }
        if let Some(w) = seeds.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: w.len(),
            });
        }
        let radix = (q as u64).pow(seed_level);
        if (radix as u128).pow(k as u32) > u32::MAX as u128 {
            return Err(Error::InvalidCode("interleaved alphabet too large".into()));
        }
        let mut word = Vec::with_capacity(n * s);
        for t in 0..n {
            for mu in 0..s {
                let symbol = (0..k).fold(0u64, |acc, i| {
                    acc * radix + seeds[self.seed_index(t, mu, i) - 1][t] as u64
                });
                word.push(symbol as u32);
            }
        }
        Ok(word)
    }

    /// The `k x ns` array whose column `(t, mu)` lists the seed symbols
    /// stored at that vertex, top row first.
    pub fn as_array(&self, word: &[u32], q: u32, seed_level: u32) -> Vec<Vec<u32>> {
        let radix = (q as u64).pow(seed_level);
        let k = self.k();
        let mut rows = vec![Vec::with_capacity(word.len()); k];
        for &symbol in word {
            let mut rest = symbol as u64;
            for i in (0..k).rev() {
                rows[i].push((rest % radix) as u32);
                rest /= radix;
            }
        }
        rows
    }

    pub fn interleaved_code(&self, seed: &Code, mode: Mode, limits: &Limits) -> Result<Code> {
        if seed.n() != self.base.n() {
            return Err(Error::LengthMismatch {
                expected: self.base.n(),
                got: seed.n(),
            });
        }
        let ks = self.k() * self.s();
        let level = seed.level() * self.k() as u32;
        crate::code::alphabet_size(seed.q(), level)?;
        let count = seed.len();
        let mut words = Vec::new();
        let mut emit = |indices: &[usize]| -> Result<()> {
            let tuple: Vec<&[u32]> = indices.iter().map(|&i| seed.word(i)).collect();
            words.push(self.interleave_tuple(&tuple, seed.q(), seed.level())?);
            Ok(())
        };
        match mode {
            Mode::Full => {
                let size = (count as u128).checked_pow(ks as u32).unwrap_or(u128::MAX);
                if size > limits.enumeration {
                    return Err(Error::UseSampleMode {
                        size,
                        cap: limits.enumeration,
                    });
                }
                let mut indices = vec![0usize; ks];
                loop {
                    emit(&indices)?;
                    // Odometer with the last seed varying fastest.
                    let mut i = ks;
                    while i > 0 {
                        indices[i - 1] += 1;
                        if indices[i - 1] < count {
                            break;
                        }
                        indices[i - 1] = 0;
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                }
            }
            Mode::Sample {
                seed: value,
                count: samples,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(value);
                let mut indices = vec![0usize; ks];
                for _ in 0..samples {
                    for slot in indices.iter_mut() {
                        *slot = ((rng.next_u64() as u128 * count as u128) >> 64) as usize;
                    }
                    emit(&indices)?;
                }
            }
        }
        Code::new(seed.q(), level, self.graph.n(), words)
    }

    /// The interleaved code of a linear seed, as a linear code of dimension
    /// `ks * dim`.
    pub fn interleaved_linear_code(&self, seed: &LinearCode) -> Result<LinearCode> {
        if seed.n() != self.base.n() {
            return Err(Error::LengthMismatch {
                expected: self.base.n(),
                got: seed.n(),
            });
        }
        let (k, s, n) = (self.k(), self.s(), self.base.n());
        let sl = seed.level() as usize;
        let level = sl * k;
        let mut rows = Vec::with_capacity(k * s * seed.dimension());
        for lambda in 1..=k * s {
            for g in seed.generator() {
                let mut row = vec![0u32; n * s * level];
                for t in 0..n {
                    let m = &self.family.matrices[self.matrix_of(t)];
                    let mu = self.column_of[self.matrix_of(t)][lambda];
                    let i = m
                        .iter()
                        .position(|r| r[mu] as usize == lambda)
                        .expect("symbol present");
                    let base = self.vertex(t, mu) * level + i * sl;
                    row[base..base + sl].copy_from_slice(&g[t * sl..(t + 1) * sl]);
                }
                rows.push(row);
            }
        }
        LinearCode::from_generator(seed.q(), level as u32, n * s, rows)
    }
}
