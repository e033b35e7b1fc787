//! Deck legitimacy on the five-qubit ring.
//!
//! The genuine three-qubit deck is not refuted and the completion LP finds
//! `A_4 = 15, A_5 = 6`. Swapping two cards for a look-alike mixture breaks
//! the cut relation and the deck is rejected.

use std::error::Error;

use qdeck::deck::{extract_deck, infer_low_weights, read_deck, DeckSource};
use qdeck::graph::Graph;
use qdeck::legitimacy::{judge, Assumptions};

pub fn run() -> Result<(), Box<dyn Error>> {
    let assume = Assumptions { pure: true, graph_state: true };
    let deck = extract_deck(DeckSource::Graph(&Graph::ring(5)), 3, 7)?;
    let tampered = read_deck(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ring5_tampered_deck3.json"))?;
    for (name, deck) in [("genuine", deck), ("tampered", tampered)] {
        let low = infer_low_weights(&deck)?;
        let report = judge(&deck, assume)?;
        println!("{name}: A_0..A_3 = [{}] -> {}", low.to_strings().join(", "), report.verdict);
        for c in &report.checks {
            println!("  {:<24} {:?}  {}", c.name, c.status, c.values.join("; "));
        }
        if let Some(lp) = &report.lp {
            println!("  lp feasible={} verified={} witness={:?}", lp.feasible, lp.verified, lp.witness);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
