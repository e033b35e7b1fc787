//! Regenerates every file under `crates/core/fixtures/`.
//!
//! ```text
//! cargo run --example fixtures
//! ```
//!
//! The output is deterministic; the `fixtures_are_current` integration test
//! fails if the checked-in files drift from what this produces.

use std::path::{Path, PathBuf};

use nalgebra::DVector;
use num::Zero;
use qdeck::deck::{extract_deck, serialize_deck, DeckSource, MixtureTerm, QuantumCard, QuantumDeck};
use qdeck::dense::{ghz_theta, weight_distribution_dense, DenseState, C64};
use qdeck::graph::{Graph, Hypergraph};
use qdeck::rational::{binomial_q, frac, int, render, Rational};
use serde_json::json;

/// Weight of the GHZ component in every six-qubit card of the ten-qubit scenario.
pub fn ten_qubit_q() -> Rational {
    frac(3, 35)
}

pub fn cube_hypergraph() -> Hypergraph {
    let mut h = Hypergraph::new(8).expect("8 qubits");
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                h.add_edge(&[v, v | bit]).expect("cube edge");
            }
        }
    }
    h.add_edge(&[0, 3, 5]).expect("hyperedge");
    h
}

/// Equal mixture of four marked three-vertex graphs with weights `[1, 0, 3/8, 11/8]`.
pub fn tampered_ring_card() -> QuantumCard {
    let term = |edges: &[[usize; 2]], marks: &[usize]| {
        let mut g = Hypergraph::new(3).expect("3 qubits");
        for e in edges {
            g.add_edge(e).expect("edge");
        }
        for &v in marks {
            g.add_edge(&[v]).expect("z mark");
        }
        MixtureTerm { weight: frac(1, 4), graph: g, sign: 1 }
    };
    QuantumCard::mixture(vec![
        term(&[[0, 1], [0, 2]], &[]),
        term(&[[0, 1], [0, 2]], &[1]),
        term(&[[0, 1], [0, 2]], &[0, 2]),
        term(&[[0, 2], [1, 2]], &[]),
    ])
    .expect("normalized mixture")
}

/// Ring-5 three-qubit deck with its first two nearest-neighbour-traced cards replaced.
pub fn tampered_ring_deck() -> QuantumDeck {
    let mut deck = extract_deck(DeckSource::Graph(&Graph::ring(5)), 3, 0).expect("ring deck");
    let nn = [int(1), int(0), int(0), int(1)];
    let mut replaced = 0;
    for card in deck.cards.iter_mut() {
        if replaced < 2 && card.weights().expect("card weights").values() == nn.as_slice() {
            *card = tampered_ring_card();
            replaced += 1;
        }
    }
    assert_eq!(replaced, 2);
    deck
}

pub fn bell_deck() -> QuantumDeck {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let amps = DVector::from_vec(vec![C64::new(s, 0.0), C64::zero(), C64::zero(), C64::new(s, 0.0)]);
    let bell = DenseState::pure(amps).expect("normalized");
    let cards = (0..3).map(|_| QuantumCard::dense(bell.clone())).collect();
    QuantumDeck::new(3, 2, cards).expect("bell deck")
}

/// Reduced six-body weights of ten qubits whose cards are `(1-q)·1/64 + q-weighted GHZ₆ correlations`:
/// `A_j(card) = q·A_j(GHZ₆)` for `j >= 1`.
pub fn ten_qubit_reduced(q: &Rational) -> Vec<Rational> {
    let ghz = weight_distribution_dense(&ghz_theta(6, 0.0).expect("ghz")).expect("ghz weights");
    let cards = binomial_q(10, 6);
    ghz.values()
        .iter()
        .enumerate()
        .map(|(j, a)| if j == 0 { cards.clone() } else { &cards * q * a })
        .collect()
}

fn weights_json(n: usize, values: &[Rational]) -> String {
    let v: Vec<String> = values.iter().map(render).collect();
    serde_json::to_string_pretty(&json!({"n": n, "weights": v})).expect("json") + "\n"
}

/// `(relative path, contents)` for every fixture.
pub fn all_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut put = |path: &str, text: String| out.push((path.to_string(), text));
    let k3 = Graph::complete(3);
    let ring = Graph::ring(5);
    put("triangle.txt", k3.to_hypergraph().to_text());
    put("ring5.txt", ring.to_hypergraph().to_text());
    put("cube_hypergraph.txt", cube_hypergraph().to_text());
    put("bell_deck.json", serialize_deck(&bell_deck()) + "\n");
    put("ring5_deck3.json", serialize_deck(&extract_deck(DeckSource::Graph(&ring), 3, 0).expect("deck")) + "\n");
    put("ring5_tampered_deck3.json", serialize_deck(&tampered_ring_deck()) + "\n");
    let card4 = extract_deck(DeckSource::Graph(&ring), 4, 0).expect("deck");
    let single = QuantumDeck::new(5, 4, vec![card4.cards[0].clone()]).expect("one card");
    put("ring5_card4.json", serialize_deck(&single) + "\n");
    let reduced: Vec<String> = ten_qubit_reduced(&ten_qubit_q()).iter().map(render).collect();
    put(
        "ten_qubit_ghz6_reduced.json",
        serde_json::to_string_pretty(&json!({"n": 10, "m": 6, "reduced": reduced})).expect("json") + "\n",
    );
    put("ame7_weights.json", weights_json(7, &[1, 0, 0, 0, 35, 42, 28, 22].map(int)));
    let mut low = vec![int(0); 10];
    low[0] = int(1);
    put("open24_weights.json", weights_json(24, &low));

    let p4 = Graph::path(4);
    put("kelly/probe_k2.txt", Graph::complete(2).to_hypergraph().to_text());
    put("kelly/probe_p3.txt", Graph::path(3).to_hypergraph().to_text());
    let deck = p4.classical_deck();
    for (i, card) in deck.iter().enumerate() {
        put(&format!("kelly/p4/card{i}.txt"), card.to_hypergraph().to_text());
    }
    let mut tampered = deck.clone();
    let victim = tampered.iter().position(|c| c.edge_count() == 2).expect("a path card");
    let mut edges = tampered[victim].edges();
    let extra = (0..3).flat_map(|u| (u + 1..3).map(move |v| (u, v))).find(|&(u, v)| !tampered[victim].has_edge(u, v));
    edges.push(extra.expect("a missing edge"));
    tampered[victim] = Graph::from_edges(3, &edges).expect("tampered card");
    for (i, card) in tampered.iter().enumerate() {
        put(&format!("kelly/p4_tampered/card{i}.txt"), card.to_hypergraph().to_text());
    }
    out
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[allow(dead_code)]
fn main() -> std::io::Result<()> {
    let root = fixture_dir();
    for (rel, text) in all_fixtures() {
        let path = root.join(&rel);
        std::fs::create_dir_all(path.parent().expect("nested path"))?;
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
