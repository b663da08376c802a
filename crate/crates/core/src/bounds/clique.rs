//! Exact maximum clique by branch and bound with greedy-coloring bounds.

use alloc::vec::Vec;

use crate::bitset::Bitset;

/// A maximum clique of the graph given by symmetric adjacency bitsets,
/// returned in ascending order. Deterministic for a given input.
pub(crate) fn max_clique(adj: &[Bitset]) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, Bitset::full(adj.len()), &mut best);
    best.sort_unstable();
    best
}

/// A maximum independent set: a maximum clique of the complement.
pub(crate) fn max_independent_set(adj: &[Bitset]) -> Vec<usize> {
    max_clique(&complement(adj))
}

pub(crate) fn complement(adj: &[Bitset]) -> Vec<Bitset> {
    let n = adj.len();
    adj.iter()
        .enumerate()
        .map(|(v, a)| {
            let mut c = Bitset::full(n);
            c.difference_with(a);
            c.remove(v);
            c
        })
        .collect()
}

fn expand(adj: &[Bitset], current: &mut Vec<usize>, mut candidates: Bitset, best: &mut Vec<usize>) {
    let (order, bounds) = color_sort(adj, &candidates);
    for idx in (0..order.len()).rev() {
        if current.len() + bounds[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        current.push(v);
        let next = candidates.intersection(&adj[v]);
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        candidates.remove(v);
    }
}

/// Greedy sequential coloring of the candidates. Vertices come back grouped
/// by color with the color number as an upper bound on the clique size
/// reachable from that prefix.
fn color_sort(adj: &[Bitset], candidates: &Bitset) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = candidates.clone();
    let mut order = Vec::with_capacity(candidates.count());
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = class.first() {
            uncolored.remove(v);
            class.remove(v);
            class.difference_with(&adj[v]);
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn small_graphs() {
        assert_eq!(max_clique(&Graph::complete(4).adjacency_bitsets()).len(), 4);
        assert_eq!(max_clique(&Graph::cycle(5).adjacency_bitsets()).len(), 2);
        assert_eq!(
            max_independent_set(&Graph::cycle(5).adjacency_bitsets()).len(),
            2
        );
        assert_eq!(
            max_independent_set(&Graph::cycle(6).adjacency_bitsets()).len(),
            3
        );
        assert!(max_clique(&[]).is_empty());
    }
}
