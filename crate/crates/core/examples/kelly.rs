//! Kelly's lemma on classical decks: `Σ_cards s(F, card) / (n - |V_F|)` must
//! equal the integer `s(F, G)`. A single extra edge on one card of `P_4`
//! makes the count for `F = K_2` equal `7/2`.

use std::error::Error;
use std::path::Path;

use qdeck::graph::{kelly_check, Graph, Hypergraph};
use qdeck::rational::render;

fn read_graph(path: &Path) -> Result<Graph, Box<dyn Error>> {
    Ok(Hypergraph::parse(&std::fs::read_to_string(path)?)?.to_marked_graph()?.graph)
}

fn read_dir(dir: &Path) -> Result<Vec<Graph>, Box<dyn Error>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    paths.sort();
    paths.iter().map(|p| read_graph(p)).collect()
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/kelly");
    for probe_name in ["probe_k2.txt", "probe_p3.txt"] {
        let probe = read_graph(&root.join(probe_name))?;
        for deck_name in ["p4", "p4_tampered"] {
            let deck = read_dir(&root.join(deck_name))?;
            let res = kelly_check(&deck, &probe, deck.len())?;
            println!("{deck_name:<12} {probe_name:<13} value {:>4}  pass {}", render(&res.value), res.pass);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
