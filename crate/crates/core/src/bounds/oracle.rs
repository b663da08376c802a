//! Brute-force largest storage code at a fixed alphabet size.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::clique::max_independent_set;
use crate::bitset::Bitset;
use crate::code::Code;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::{Error, Result};

/// A largest storage code on `g` over `[q]`: a maximum independent set of the
/// conflict graph on all `q^n` words, where `x` and `y` conflict when some
/// vertex sees equal neighborhoods but different values.
pub fn oracle_max_code(g: &Graph, q: u32, limits: &Limits) -> Result<Code> {
    if q < 2 {
        return Err(Error::InvalidCode(alloc::format!(
            "alphabet size {q} is below 2"
        )));
    }
    let n = g.n();
    let space = (q as u128)
        .checked_pow(n as u32)
        .filter(|&s| s <= limits.oracle_words);
    let Some(space) = space else {
        let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        return Err(Error::CapExceeded {
            what: "oracle word space",
            size,
            cap: limits.oracle_words,
        });
    };
    let space = space as usize;
    let words: Vec<Vec<u32>> = (0..space)
        .map(|mut i| {
            let mut w = vec![0u32; n];
            for d in w.iter_mut().rev() {
                *d = (i % q as usize) as u32;
                i /= q as usize;
            }
            w
        })
        .collect();
    let mut adj = vec![Bitset::new(space); space];
    for v in 0..n {
        let nbrs = g.out_neighbors(v);
        let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            groups
                .entry(nbrs.iter().map(|&u| w[u]).collect())
                .or_default()
                .push(i);
        }
        for group in groups.values() {
            for (a, &i) in group.iter().enumerate() {
                for &j in &group[a + 1..] {
                    if words[i][v] != words[j][v] {
                        adj[i].insert(j);
                        adj[j].insert(i);
                    }
                }
            }
        }
    }
    let chosen = max_independent_set(&adj);
    Code::new(
        q,
        1,
        n,
        chosen.into_iter().map(|i| words[i].clone()).collect(),
    )
}
