//! The interleaving example on the triangle: what the procedure produces
//! and why the printed bottom row cannot be right.

use stoc_core::design::example_family_2x3;
use stoc_core::graph::Graph;
use stoc_core::interleave::{build_interleaved_graph, greedy_coloring};
use stoc_core::linear::LinearCode;
use stoc_lab::presets::example_array;

const TOP: [u32; 9] = [1, 0, 0, 1, 2, 0, 1, 2, 2];
const FAITHFUL_BOTTOM: [u32; 9] = [2, 1, 1, 1, 0, 2, 0, 2, 0];
const PRINTED_BOTTOM: [u32; 9] = [2, 1, 1, 1, 2, 2, 0, 0, 0];

fn column_digits(top: &[u32], bottom: &[u32]) -> Vec<u32> {
    top.iter().zip(bottom).flat_map(|(&a, &b)| [a, b]).collect()
}

#[test]
fn example_array_is_the_faithful_interleaving() {
    let array = example_array().unwrap();
    assert_eq!(array[0], TOP);
    assert_eq!(array[1], FAITHFUL_BOTTOM);
}

#[test]
fn printed_array_is_not_an_interleaved_codeword() {
    let k3 = Graph::complete(3);
    let ig = build_interleaved_graph(&k3, &greedy_coloring(&k3), &example_family_2x3()).unwrap();
    let seed = LinearCode::from_parity_checks(3, 1, 3, &[vec![1, 1, 1]]).unwrap();
    let code = ig.interleaved_linear_code(&seed).unwrap();
    assert!(code.contains_digits(&column_digits(&TOP, &FAITHFUL_BOTTOM)));
    // Every tuple of seed codewords lands in this code, so no choice of
    // seeds reproduces the printed array.
    assert!(!code.contains_digits(&column_digits(&TOP, &PRINTED_BOTTOM)));
}
