//! The cube hypergraph state: weights from the dense oracle.
//!
//! Its even-weight sum is neither `2^(n-1)` nor `2^n`, so no graph state
//! (and nothing LU-equivalent to one) shares its distribution.

use std::error::Error;
use std::time::Instant;

use qdeck::dense::{build_state, weight_distribution_dense};
use qdeck::enumerator::even_weight_sum;
use qdeck::graph::Hypergraph;
use qdeck::legitimacy::check_graph_type;
use qdeck::rational::render;

pub fn run() -> Result<(), Box<dyn Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/cube_hypergraph.txt");
    let h = Hypergraph::parse(&std::fs::read_to_string(path)?)?;
    let start = Instant::now();
    let a = weight_distribution_dense(&build_state(&h)?)?;
    println!("A = [{}]  ({:.2?})", a.to_strings().join(", "), start.elapsed());
    println!("Ae = {}", render(&even_weight_sum(&a)));
    let verdict = check_graph_type(&a);
    println!("graph_type: {:?}, {}", verdict.status, verdict.detail);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
