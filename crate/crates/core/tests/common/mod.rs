//! Shared strategies and brute-force reference computations.

#![allow(dead_code)]

use proptest::prelude::*;
use qdeck::graph::Graph;
use qdeck::pauli::PauliOperator;
use qdeck::stabilizer::generators;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(FIXTURES).join(rel)
}

/// A graph on `n` vertices in `lo..=hi`, edges drawn from an arbitrary bit pattern.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).expect("valid edges")
        })
    })
}

pub fn connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graph(lo, hi).prop_filter("connected", Graph::is_connected)
}

/// Weight histogram by multiplying generators out, one subset at a time.
pub fn brute_force_counts(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let spec = generators(g);
    let gens: Vec<PauliOperator> = (0..n).map(|i| spec.element(1 << i)).collect();
    let mut counts = vec![0u64; n + 1];
    for subset in 0u32..(1 << n) {
        let mut p = PauliOperator::identity(n).expect("small n");
        for (i, gi) in gens.iter().enumerate() {
            if subset >> i & 1 == 1 {
                p = p.multiply(gi).expect("same size");
            }
        }
        counts[p.weight()] += 1;
    }
    counts
}
