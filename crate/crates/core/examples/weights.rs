//! Weight distributions of graph states from the stabilizer engine.
//!
//! Prints `A_0..A_n`, the even-weight sum, the graph-state type and the
//! cut-relation residuals for a few standard graphs, then checks that a local
//! complementation leaves the distribution unchanged.

use std::error::Error;

use qdeck::enumerator::{cut_relation_residuals, even_weight_sum};
use qdeck::graph::Graph;
use qdeck::rational::render;
use qdeck::stabilizer::{classify_type, generators, weight_distribution};

pub fn run() -> Result<(), Box<dyn Error>> {
    let graphs = [
        ("triangle", Graph::complete(3)),
        ("ring5", Graph::ring(5)),
        ("K6", Graph::complete(6)),
        ("star7", Graph::star(7)),
        ("empty4", Graph::empty(4)?),
    ];
    for (name, g) in &graphs {
        let a = weight_distribution(&generators(g))?;
        let residuals: Vec<String> = cut_relation_residuals(&a)?.iter().map(render).collect();
        println!(
            "{name:>8}: A = [{}]  Ae = {}  {}  cut residuals [{}]",
            a.to_strings().join(", "),
            render(&even_weight_sum(&a)),
            classify_type(&a),
            residuals.join(", ")
        );
        let lc = g.local_complement(0)?;
        assert_eq!(weight_distribution(&generators(&lc))?, a);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
