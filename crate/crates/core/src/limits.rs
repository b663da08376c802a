//! Size caps for the exact algorithms. Requests beyond a cap are rejected,
//! never silently truncated or handed to a heuristic.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest side of a one-dimensional window.
    pub window_side_1d: usize,
    /// Largest side of a two-dimensional window.
    pub window_side_2d: usize,
    /// Largest explicit word list built by enumeration.
    pub enumeration: u128,
    /// Largest ambient space `q^n` searched by parity-check enumeration.
    pub parity_space: u128,
    /// Vertex cap for exact maximum independent set.
    pub independence: usize,
    /// Vertex cap for exact maximum acyclic induced subgraph on non-symmetric digraphs.
    pub mais: usize,
    /// Vertex cap for exact minimum clique partition.
    pub clique_cover: usize,
    /// Largest `q^n` for the brute-force conflict-graph oracle.
    pub oracle_words: u128,
    /// Largest `n` searched exhaustively for B-avoiding sets.
    pub avoiding_exhaustive: usize,
    /// Largest `n * 2^max(B)` table for the B-avoiding dynamic program.
    pub avoiding_table: u128,
    /// Largest number of `(A, B)` pairs examined while enumerating gadgets.
    pub gadget_pairs: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            window_side_1d: 4096,
            window_side_2d: 64,
            enumeration: 1 << 20,
            parity_space: 1 << 24,
            independence: 64,
            mais: 24,
            clique_cover: 24,
            oracle_words: 1 << 12,
            avoiding_exhaustive: 40,
            avoiding_table: 1 << 24,
            gadget_pairs: 2_000_000,
        }
    }
}

impl Limits {
    /// Multiplies every cap by `factor` (vertex caps grow linearly).
    pub fn scaled(self, factor: usize) -> Self {
        let f = factor.max(1);
        Limits {
            window_side_1d: self.window_side_1d * f,
            window_side_2d: self.window_side_2d * f,
            enumeration: self.enumeration * f as u128,
            parity_space: self.parity_space * f as u128,
            independence: self.independence * f,
            mais: self.mais * f,
            clique_cover: self.clique_cover * f,
            oracle_words: self.oracle_words * f as u128,
            avoiding_exhaustive: self.avoiding_exhaustive * f,
            avoiding_table: self.avoiding_table * f as u128,
            gadget_pairs: self.gadget_pairs * f as u128,
        }
    }
}
