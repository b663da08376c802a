//! Exact graph parameters: independence number, maximum acyclic induced
//! subgraph, minimum clique partition and maximum matching.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::clique::max_independent_set;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::{Error, Result};

fn cap(what: &'static str, size: usize, cap: usize) -> Error {
    Error::CapExceeded {
        what,
        size: size as u128,
        cap: cap as u128,
    }
}

/// A maximum independent set (arcs in either direction count as edges).
pub fn independence_number(g: &Graph, limits: &Limits) -> Result<Vec<usize>> {
    if g.n() > limits.independence {
        return Err(cap("independence number", g.n(), limits.independence));
    }
    Ok(max_independent_set(&g.adjacency_bitsets()))
}

/// A maximum set inducing an acyclic subgraph. Symmetric graphs reduce to
/// independent sets; other digraphs use branch and bound.
pub fn mais(g: &Graph, limits: &Limits) -> Result<Vec<usize>> {
    if g.is_symmetric() {
        return independence_number(g, limits);
    }
    let n = g.n();
    if n > limits.mais || n > 64 {
        return Err(cap(
            "maximum acyclic induced subgraph",
            n,
            limits.mais.min(64),
        ));
    }
    let mut out = vec![0u64; n];
    let mut inn = vec![0u64; n];
    for (u, v) in g.edges() {
        out[u] |= 1 << v;
        inn[v] |= 1 << u;
    }
    let mutual: Vec<u64> = (0..n).map(|v| out[v] & inn[v]).collect();
    let mut search = DagSearch {
        out,
        inn,
        mutual,
        best: 0,
        best_size: 0,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.run(all, 0);
    Ok(bits(search.best).collect())
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(b)
    })
}

struct DagSearch {
    out: Vec<u64>,
    inn: Vec<u64>,
    mutual: Vec<u64>,
    best: u64,
    best_size: u32,
}

impl DagSearch {
    /// Would adding `v` to the acyclic set `set` close a directed cycle?
    fn closes_cycle(&self, v: usize, set: u64) -> bool {
        let mut reach = self.out[v] & set;
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.out[u] & set;
            }
            next &= !reach;
            reach |= next;
            frontier = next;
        }
        reach & self.inn[v] != 0
    }

    fn run(&mut self, candidates: u64, set: u64) {
        let mut cands = 0;
        for u in bits(candidates) {
            if !self.closes_cycle(u, set) {
                cands |= 1 << u;
            }
        }
        // Each 2-cycle among the candidates costs at least one vertex.
        let mut free = cands;
        let mut pairs = 0;
        for u in bits(cands) {
            if free & (1 << u) == 0 {
                continue;
            }
            let partner = self.mutual[u] & free & !(1u64 << u);
            if partner != 0 {
                free &= !(1 << u);
                free &= !(1 << partner.trailing_zeros());
                pairs += 1;
            }
        }
        let size = set.count_ones();
        // The empty set is the initial incumbent, so only strict gains matter.
        if size + cands.count_ones() - pairs <= self.best_size {
            return;
        }
        if cands == 0 {
            self.best = set;
            self.best_size = size;
            return;
        }
        let v = cands.trailing_zeros() as usize;
        let rest = cands & !(1 << v);
        self.run(rest, set | (1 << v));
        self.run(rest, set);
    }
}

/// A minimum partition of the vertices into cliques of mutually adjacent vertices.
pub fn clique_cover_number(g: &Graph, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > limits.clique_cover || n > 64 {
        return Err(cap("clique cover", n, limits.clique_cover.min(64)));
    }
    let mutual: Vec<u64> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && g.mutual(u, v))
                .fold(0u64, |m, u| m | 1 << u)
        })
        .collect();
    // Greedy start: each vertex joins the first part it fits.
    let mut greedy: Vec<u64> = Vec::new();
    for (v, m) in mutual.iter().enumerate() {
        match greedy.iter_mut().find(|p| **p & !m == 0) {
            Some(p) => *p |= 1 << v,
            None => greedy.push(1 << v),
        }
    }
    let mut best = greedy;
    let mut parts = Vec::new();
    cover_search(&mutual, 0, &mut parts, &mut best);
    let mut out: Vec<Vec<usize>> = best.into_iter().map(|p| bits(p).collect()).collect();
    out.sort();
    Ok(out)
}

fn cover_search(mutual: &[u64], v: usize, parts: &mut Vec<u64>, best: &mut Vec<u64>) {
    if parts.len() >= best.len() {
        return;
    }
    if v == mutual.len() {
        best.clone_from(parts);
        return;
    }
    for i in 0..parts.len() {
        if parts[i] & !mutual[v] == 0 {
            parts[i] |= 1 << v;
            cover_search(mutual, v + 1, parts, best);
            parts[i] &= !(1 << v);
        }
    }
    parts.push(1 << v);
    cover_search(mutual, v + 1, parts, best);
    parts.pop();
}

/// A maximum matching of the underlying undirected graph (Edmonds' blossom
/// algorithm). Pairs come back as `(u, v)` with `u < v`, sorted.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = g.adjacency_bitsets().iter().map(|a| a.to_vec()).collect();
    let mut blossom = Blossom {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
    };
    for root in 0..n {
        if blossom.mate[root] == NONE {
            if let Some(mut v) = blossom.augmenting_path(root) {
                while v != NONE {
                    let pv = blossom.parent[v];
                    let next = blossom.mate[pv];
                    blossom.mate[v] = pv;
                    blossom.mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    (0..n)
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| (v, blossom.mate[v]))
        .collect()
}

const NONE: usize = usize::MAX;

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
}

impl Blossom {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != b {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free endpoint of
    /// an augmenting path, with `parent` links describing the path.
    fn augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        let mut used = vec![false; n];
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let current = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, current, to, &mut in_blossom);
                    self.mark_path(to, current, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = current;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::torus_rowcol_graph;
    use crate::window::{window_graph, RecoverySet};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn independence_examples() {
        assert_eq!(
            independence_number(&Graph::cycle(5), &lim()).unwrap().len(),
            2
        );
        assert_eq!(
            independence_number(&Graph::complete(6), &lim())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            independence_number(&torus_rowcol_graph(3).unwrap(), &lim())
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn mais_examples() {
        let tri = Graph::new(3, &[(0, 1), (1, 2), (2, 0)], true).unwrap();
        assert_eq!(mais(&tri, &lim()).unwrap().len(), 2);
        let w = window_graph(&RecoverySet::interval(2, 2).unwrap(), 6).unwrap();
        assert_eq!(mais(&w.graph, &lim()).unwrap().len(), 2);
        let w = window_graph(&RecoverySet::pair(6, 4).unwrap(), 10).unwrap();
        let set = mais(&w.graph, &lim()).unwrap();
        assert!(w.graph.is_dag(&set).unwrap().is_acyclic());
        assert_eq!(set.len(), brute_dag(&w.graph));
        let empty = Graph::new(0, &[], true).unwrap();
        assert!(mais(&empty, &lim()).unwrap().is_empty());
    }

    fn brute_dag(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|m| {
                let set: Vec<usize> = (0..g.n()).filter(|v| m & (1 << v) != 0).collect();
                g.is_dag(&set).unwrap().is_acyclic()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn clique_covers() {
        assert_eq!(
            clique_cover_number(&Graph::cycle(5), &lim()).unwrap().len(),
            3
        );
        assert_eq!(
            clique_cover_number(&Graph::complete(3), &lim())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            clique_cover_number(&Graph::cycle(6), &lim()).unwrap().len(),
            3
        );
    }

    #[test]
    fn matchings() {
        assert_eq!(max_matching(&Graph::cycle(5)).len(), 2);
        assert_eq!(max_matching(&Graph::complete(4)).len(), 2);
        assert_eq!(max_matching(&Graph::path(4)).len(), 2);
        // Two triangles joined by an edge force a blossom contraction.
        let g = Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
            false,
        )
        .unwrap();
        assert_eq!(max_matching(&g).len(), 3);
    }
}
