//! Finite directed graphs with sorted adjacency.
//!
//! Undirected graphs are stored as symmetric digraphs: `u` is an
//! out-neighbor of `v` exactly when `v` is an out-neighbor of `u`. The
//! `directed` flag only records how the graph was specified, so a DAG check
//! on an undirected edge finds the 2-cycle it induces.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::Bitset;
use crate::{Error, Result};

/// Integer coordinates attached to a vertex (window cell, torus cell, ...).
pub type Label = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Vec<Vec<usize>>,
    labels: Option<Vec<Label>>,
}

/// Outcome of [`Graph::is_dag`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DagCheck {
    /// A topological order of the subset: every arc goes from an earlier to a later vertex.
    Acyclic(Vec<usize>),
    /// A directed cycle inside the subset, smallest vertex first.
    Cyclic(Vec<usize>),
}

impl DagCheck {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, DagCheck::Acyclic(_))
    }
}

impl Graph {
    /// Builds a graph on `0..n`. Undirected input is symmetrized; duplicate
    /// edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)], directed: bool) -> Result<Self> {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            sets[u].insert(v);
            if !directed {
                sets[v].insert(u);
            }
        }
        let out = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Graph {
            n,
            directed,
            out,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                got: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges, false).expect("complete graph is well formed")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges, false).expect("cycle is well formed")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges, false).expect("path is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&Label> {
        self.labels.as_ref().map(|l| &l[v])
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Adjacent in at least one direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Adjacent in both directions (each is in the other's recovery set).
    pub fn mutual(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.out[u].iter().all(|&v| self.has_arc(v, u)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Arcs `(u, v)` in order; for undirected graphs each edge once with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (u, outs) in self.out.iter().enumerate() {
            for &v in outs {
                if self.directed || u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// Unordered pairs adjacent in either direction, `u < v`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for (u, outs) in self.out.iter().enumerate() {
            for &v in outs {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        pairs.into_iter().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Adjacency in either direction as bitsets.
    pub fn adjacency_bitsets(&self) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(self.n); self.n];
        for (u, outs) in self.out.iter().enumerate() {
            for &v in outs {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NoSuchVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Subgraph induced on `subset`, with vertices renumbered in ascending
    /// order of the original ids. Labels are carried over.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        let mut vertices: Vec<usize> = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            self.check_vertex(v)?;
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let out = vertices
            .iter()
            .map(|&v| {
                self.out[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v].clone()).collect());
        Ok(Graph {
            n: vertices.len(),
            directed: self.directed,
            out,
            labels,
        })
    }

    /// Decides whether `subset` induces a DAG. Returns a topological order
    /// (smallest available vertex first) or a directed cycle.
    pub fn is_dag(&self, subset: &[usize]) -> Result<DagCheck> {
        let mut inside = Bitset::new(self.n);
        for &v in subset {
            self.check_vertex(v)?;
            inside.insert(v);
        }
        let mut indegree = vec![0usize; self.n];
        for v in inside.iter() {
            for &u in &self.out[v] {
                if inside.contains(u) {
                    indegree[u] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = inside.iter().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(inside.count());
        let mut remaining = inside.clone();
        while let Some(v) = ready.pop_first() {
            order.push(v);
            remaining.remove(v);
            for &u in &self.out[v] {
                if remaining.contains(u) {
                    indegree[u] -= 1;
                    if indegree[u] == 0 {
                        ready.insert(u);
                    }
                }
            }
        }
        if remaining.is_empty() {
            return Ok(DagCheck::Acyclic(order));
        }
        // Every leftover vertex has a leftover predecessor: walk backwards
        // until a vertex repeats.
        let start = remaining.first().expect("nonempty");
        let mut position = vec![usize::MAX; self.n];
        let mut walk = Vec::new();
        let mut v = start;
        while position[v] == usize::MAX {
            position[v] = walk.len();
            walk.push(v);
            v = (0..self.n)
                .find(|&p| remaining.contains(p) && self.has_arc(p, v))
                .expect("leftover vertex has a leftover predecessor");
        }
        let mut cycle: Vec<usize> = walk[position[v]..].to_vec();
        cycle.reverse();
        let min_pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        cycle.rotate_left(min_pos);
        Ok(DagCheck::Cyclic(cycle))
    }

    /// True iff no three vertices are pairwise adjacent (in either direction).
    pub fn is_triangle_free(&self) -> bool {
        let adj = self.adjacency_bitsets();
        for u in 0..self.n {
            for v in adj[u].iter().filter(|&v| v > u) {
                if adj[u].iter().any(|w| w > v && adj[v].contains(w)) {
                    return false;
                }
            }
        }
        true
    }

    /// Cartesian product `self □ other` on `V1 × V2`, vertex `(u, u')` at
    /// index `u * |V2| + u'`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph> {
        if self.directed || other.directed {
            return Err(Error::DirectedInput("cartesian_product"));
        }
        let (n1, n2) = (self.n, other.n);
        let mut edges = Vec::new();
        for u in 0..n1 {
            for (a, b) in other.edges() {
                edges.push((u * n2 + a, u * n2 + b));
            }
        }
        for (a, b) in self.edges() {
            for w in 0..n2 {
                edges.push((a * n2 + w, b * n2 + w));
            }
        }
        let labels = (0..n1)
            .flat_map(|u| (0..n2).map(move |w| (u, w)))
            .map(|(u, w)| {
                let mut label = self.label(u).cloned().unwrap_or_else(|| vec![u as i64]);
                label.extend(other.label(w).cloned().unwrap_or_else(|| vec![w as i64]));
                label
            })
            .collect();
        Graph::new(n1 * n2, &edges, false)?.with_labels(labels)
    }
}

/// The `n × n` torus where two cells are adjacent iff they share a row or a
/// column (Hamming distance one over `Z_n^2`). Cell `(i, j)` has index `i * n + j`.
pub fn torus_rowcol_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TorusTooSmall(n));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                edges.push((idx(i, j), idx(i, k)));
                edges.push((idx(j, i), idx(k, i)));
            }
        }
    }
    let labels = (0..n * n)
        .map(|v| vec![(v / n) as i64, (v % n) as i64])
        .collect();
    Graph::new(n * n, &edges, false)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_isolated_vertex() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], false).unwrap();
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(c5, Graph::cycle(5));
        let single = Graph::new(1, &[], false).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.degree(0), 0);
        let tri = Graph::new(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap();
        assert!((0..3).all(|v| tri.degree(v) == 1));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, &[(1, 1)], false), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 3)], false),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        );
    }

    #[test]
    fn dag_checks() {
        let tri = Graph::new(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap();
        assert_eq!(
            tri.is_dag(&[0, 1, 2]).unwrap(),
            DagCheck::Cyclic(vec![0, 1, 2])
        );
        assert_eq!(tri.is_dag(&[0, 1]).unwrap(), DagCheck::Acyclic(vec![0, 1]));
        let k2 = Graph::complete(2);
        assert_eq!(k2.is_dag(&[0, 1]).unwrap(), DagCheck::Cyclic(vec![0, 1]));
        assert!(k2.is_dag(&[]).unwrap().is_acyclic());
        assert!(k2.is_dag(&[2]).is_err());
    }

    #[test]
    fn triangle_freeness() {
        assert!(Graph::cycle(5).is_triangle_free());
        assert!(!Graph::complete(3).is_triangle_free());
        let cube = Graph::cycle(4)
            .cartesian_product(&Graph::complete(2))
            .unwrap();
        assert!(cube.is_triangle_free());
    }

    #[test]
    fn products() {
        let k2 = Graph::complete(2);
        let square = k2.cartesian_product(&k2).unwrap();
        assert_eq!(square.edge_count(), 4);
        assert!((0..4).all(|v| square.degree(v) == 2));
        let cube = Graph::cycle(4).cartesian_product(&k2).unwrap();
        assert_eq!((cube.n(), cube.edge_count()), (8, 12));
        let prism = Graph::cycle(5).cartesian_product(&k2).unwrap();
        assert_eq!((prism.n(), prism.edge_count()), (10, 15));
        let directed = Graph::new(2, &[(0, 1)], true).unwrap();
        assert!(directed.cartesian_product(&k2).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.induced_subgraph(&[0, 1]).unwrap(), Graph::complete(2));
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced_subgraph(&[0, 2]).unwrap().arc_count(), 0);
        assert_eq!(c5.induced_subgraph(&[0, 1, 2]).unwrap(), Graph::path(3));
    }

    #[test]
    fn torus_degrees() {
        assert_eq!(torus_rowcol_graph(2), Err(Error::TorusTooSmall(2)));
        for n in 3..6 {
            let t = torus_rowcol_graph(n).unwrap();
            assert!((0..n * n).all(|v| t.degree(v) == 2 * (n - 1)));
        }
        let t = torus_rowcol_graph(3).unwrap();
        assert_eq!(t.out_neighbors(0), &[1, 2, 3, 6]);
    }
}
