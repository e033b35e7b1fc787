//! Reconstruction of a graph state from one `(n-1)`-qubit card.
//!
//! Writing the joint state as `(|α>|0> + |β>|1>) / √2` with real sign vectors
//! `α, β` (amplitudes `±2^{-(n-1)/2}`), the card is `(αα^T + ββ^T) / (2·2^{n-1})`.
//! Both sign vectors are read off the scaled card, peeled into Z-marked graphs,
//! and their Z-mark difference is the neighbourhood of the missing vertex.

use nalgebra::DMatrix;
use num::complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{full_mask, iter_bits, VertexSet};
use crate::deck::{DeckError, QuantumCard};
use crate::dense::{self, partial_trace, DenseError, TOL};
use crate::graph::{Graph, MarkedGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconstructError {
    #[error("not a graph-state card: {0}")]
    NotGraphStateCard(String),
    #[error("inconsistent card: the two sign vectors carry different edge sets")]
    InconsistentCard,
    #[error("card has {card} qubits, expected n - 1 = {expected}")]
    SizeMismatch { card: usize, expected: usize },
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Deck(#[from] DeckError),
}

fn not_graph(msg: impl Into<String>) -> ReconstructError {
    ReconstructError::NotGraphStateCard(msg.into())
}

/// Signs `±1` of the computational-basis amplitudes, first entry `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self, ReconstructError> {
        if signs.is_empty() || !signs.len().is_power_of_two() {
            return Err(not_graph("sign vector length must be a power of two"));
        }
        if signs[0] != 1 || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(not_graph("sign vector must be ±1 with first entry +1"));
        }
        Ok(SignVector(signs))
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    /// `Σ_i s_i t_i`.
    pub fn overlap(&self, other: &SignVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| (a * b) as i64).sum()
    }
}

/// Sign pattern `(-1)^(#edges inside j + |M ∩ j|)` of a Z-marked graph state.
pub fn graph_signs(g: &MarkedGraph) -> SignVector {
    let adj = g.graph.adjacency();
    let signs = (0..=full_mask(g.n()))
        .map(|j| {
            let inside: u32 = iter_bits(j).map(|v| (adj[v] & j).count_ones()).sum::<u32>() / 2;
            if (inside + (g.z_marks & j).count_ones()).is_multiple_of(2) { 1 } else { -1 }
        })
        .collect();
    SignVector(signs)
}

fn scaled_card(card: &DMatrix<C64>) -> Result<Vec<Vec<i8>>, ReconstructError> {
    let d = card.nrows();
    let scale = 2.0 * d as f64;
    let mut out = vec![vec![0i8; d]; d];
    for r in 0..d {
        for c in 0..d {
            let v = card[(r, c)] * scale;
            if v.im.abs() > TOL * scale {
                return Err(not_graph("card has imaginary entries"));
            }
            let k = v.re.round();
            if (v.re - k).abs() > TOL * scale || ![-2.0, 0.0, 2.0].contains(&k) {
                return Err(not_graph(format!("scaled entry {:.6} at ({r},{c}) outside {{-2, 0, 2}}", v.re)));
            }
            out[r][c] = k as i8;
        }
    }
    Ok(out)
}

/// Factors a card into `(α, β)` with `α_m = -β_m = +1` at the first zero of row 0.
pub fn recover_sign_vectors(card: &QuantumCard) -> Result<(SignVector, SignVector), ReconstructError> {
    let c = scaled_card(&card.density_matrix()?)?;
    let d = c.len();
    let mut alpha = vec![0i8; d];
    let mut beta = vec![0i8; d];
    let first_zero = c[0].iter().position(|&x| x == 0);
    for l in 0..d {
        match c[0][l] {
            2 => (alpha[l], beta[l]) = (1, 1),
            -2 => (alpha[l], beta[l]) = (-1, -1),
            _ => {
                let m = first_zero.expect("a zero exists");
                let a = c[m][l] / 2;
                if a == 0 {
                    return Err(not_graph("card is not a rank-two sign mixture"));
                }
                (alpha[l], beta[l]) = (a, -a);
            }
        }
    }
    for r in 0..d {
        for l in 0..d {
            if alpha[r] * alpha[l] + beta[r] * beta[l] != c[r][l] {
                return Err(not_graph("card is not (αα^T + ββ^T) / 2^n for sign vectors α, β"));
            }
        }
    }
    Ok((SignVector::new(alpha)?, SignVector::new(beta)?))
}

/// Peels a sign vector into Z-marks (weight-1 signs) and edges (weight-2 signs);
/// any sign left over at higher weight would need a hyperedge.
pub fn signs_to_gates(s: &SignVector) -> Result<MarkedGraph, ReconstructError> {
    let k = s.qubits();
    let v = s.as_slice();
    let z_marks: VertexSet = (0..k).filter(|&q| v[1 << q] == -1).fold(0, |m, q| m | 1 << q);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if v[(1 << a) | (1 << b)] * v[1 << a] * v[1 << b] == -1 {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::from_edges(k, &edges).map_err(|e| not_graph(e.to_string()))?;
    let g = MarkedGraph { graph, z_marks, sign: 1 };
    if graph_signs(&g) != *s {
        return Err(not_graph("residual sign at weight >= 3 requires a hypergraph gate"));
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateView {
    pub edges: Vec<(usize, usize)>,
    pub zmarks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub n: usize,
    /// Joint graphs with the missing vertex appended as vertex `n - 1`. They
    /// share all edges and differ in the Z-marks `Z^{N(j)}`, i.e. by `X_j`.
    pub candidates: [MarkedGraph; 2],
    /// `N(j)` of the missing vertex in card labels.
    pub neighborhood: VertexSet,
    /// Position of the re-attached vertex.
    pub missing_vertex_rank: usize,
    /// Rank one: the missing vertex is isolated and nothing ties it to the card.
    pub isolated: bool,
    /// Every candidate is only fixed up to `Z_j` on the missing vertex.
    pub z_ambiguity: bool,
    pub alpha: SignVector,
    pub beta: SignVector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionView {
    pub n: usize,
    pub candidates: Vec<CandidateView>,
    pub neighborhood: Vec<usize>,
    pub missing_vertex_rank: usize,
    pub isolated: bool,
    pub z_ambiguity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl ReconstructionResult {
    pub fn view(&self, verified: Option<bool>) -> ReconstructionView {
        ReconstructionView {
            n: self.n,
            candidates: self
                .candidates
                .iter()
                .map(|c| CandidateView { edges: c.graph.edges(), zmarks: iter_bits(c.z_marks).collect() })
                .collect(),
            neighborhood: iter_bits(self.neighborhood).collect(),
            missing_vertex_rank: self.missing_vertex_rank,
            isolated: self.isolated,
            z_ambiguity: self.z_ambiguity,
            verified,
        }
    }
}

/// Rebuilds an `n`-vertex graph state from one of its `(n-1)`-qubit cards.
pub fn reconstruct_from_card(card: &QuantumCard, n: usize) -> Result<ReconstructionResult, ReconstructError> {
    if n < 2 || card.m() + 1 != n {
        return Err(ReconstructError::SizeMismatch { card: card.m(), expected: n.saturating_sub(1) });
    }
    let (alpha, beta) = recover_sign_vectors(card)?;
    let a = signs_to_gates(&alpha)?;
    let b = signs_to_gates(&beta)?;
    if a.graph != b.graph {
        return Err(ReconstructError::InconsistentCard);
    }
    let neighborhood = a.z_marks ^ b.z_marks;
    let j = n - 1;
    let mut edges = a.graph.edges();
    edges.extend(iter_bits(neighborhood).map(|i| (i, j)));
    let joint = Graph::from_edges(n, &edges).map_err(|e| not_graph(e.to_string()))?;
    let candidates = [
        MarkedGraph { graph: joint.clone(), z_marks: a.z_marks, sign: 1 },
        MarkedGraph { graph: joint, z_marks: b.z_marks, sign: 1 },
    ];
    Ok(ReconstructionResult {
        n,
        candidates,
        neighborhood,
        missing_vertex_rank: j,
        isolated: alpha == beta,
        z_ambiguity: true,
        alpha,
        beta,
    })
}

/// True iff tracing the appended vertex out of every candidate reproduces the card (1e-9).
pub fn verify_reconstruction(result: &ReconstructionResult, card: &QuantumCard) -> Result<bool, ReconstructError> {
    let target = card.to_dense()?;
    let keep = full_mask(result.n - 1);
    for c in &result.candidates {
        let joint = dense::build_state(&c.to_hypergraph())?;
        if !partial_trace(&joint, keep)?.approx_eq(&target, TOL) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{extract_deck, DeckSource};
    use crate::dense::{build_state, random_mixed_state};
    use crate::bits::compress;

    fn card_of(g: &Graph, missing: usize) -> QuantumCard {
        let keep = full_mask(g.n()) & !(1 << missing);
        QuantumCard::dense(partial_trace(&build_state(&g.to_hypergraph()).unwrap(), keep).unwrap())
    }

    #[test]
    fn rank_one_card() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let card = card_of(&g, 3);
        let (a, b) = recover_sign_vectors(&card).unwrap();
        assert_eq!(a, b);
        let r = reconstruct_from_card(&card, 4).unwrap();
        assert!(r.isolated && r.neighborhood == 0);
        assert!(verify_reconstruction(&r, &card).unwrap());
        let plus = QuantumCard::dense(build_state(&Graph::empty(3).unwrap().to_hypergraph()).unwrap());
        let (a, _) = recover_sign_vectors(&plus).unwrap();
        assert!(a.as_slice().iter().all(|&s| s == 1));
    }

    #[test]
    fn triangle_card() {
        let card = card_of(&Graph::complete(3), 2);
        let (a, b) = recover_sign_vectors(&card).unwrap();
        assert_eq!(a.overlap(&b), 0);
        let k2 = graph_signs(&MarkedGraph::unmarked(Graph::complete(2)));
        let zz = graph_signs(&MarkedGraph { graph: Graph::complete(2), z_marks: 0b11, sign: 1 });
        assert!((a == k2 && b == zz) || (a == zz && b == k2));
        let r = reconstruct_from_card(&card, 3).unwrap();
        assert_eq!(r.candidates[0].graph, Graph::complete(3));
        assert!(verify_reconstruction(&r, &card).unwrap());
    }

    #[test]
    fn peeling() {
        assert_eq!(signs_to_gates(&SignVector::new(vec![1; 8]).unwrap()).unwrap(), MarkedGraph::unmarked(Graph::empty(3).unwrap()));
        let z0 = signs_to_gates(&SignVector::new(vec![1, -1, 1, -1]).unwrap()).unwrap();
        assert_eq!((z0.z_marks, z0.graph.edge_count()), (0b01, 0));
        let cz = signs_to_gates(&SignVector::new(vec![1, 1, 1, -1]).unwrap()).unwrap();
        assert_eq!((cz.z_marks, cz.graph.edges()), (0, vec![(0, 1)]));
        let ccz = SignVector::new(vec![1, 1, 1, 1, 1, 1, 1, -1]).unwrap();
        assert!(matches!(signs_to_gates(&ccz), Err(ReconstructError::NotGraphStateCard(_))));
    }

    #[test]
    fn ring_round_trip() {
        let ring = Graph::ring(5);
        let deck = extract_deck(DeckSource::Graph(&ring), 4, 0).unwrap();
        for card in &deck.cards {
            let r = reconstruct_from_card(card, 5).unwrap();
            assert!(r.candidates[0].graph.is_isomorphic(&ring));
            assert!(verify_reconstruction(&r, card).unwrap());
        }
        for j in 0..5 {
            let r = reconstruct_from_card(&card_of(&ring, j), 5).unwrap();
            let rest = (full_mask(5) & !(1 << j)) as u64;
            assert_eq!(r.neighborhood as u64, compress(ring.adjacency()[j] as u64, rest));
        }
    }

    #[test]
    fn perturbed_candidate_fails() {
        let ring = Graph::ring(5);
        let card = card_of(&ring, 4);
        let mut r = reconstruct_from_card(&card, 5).unwrap();
        let (u, v) = r.candidates[0].graph.edges()[0];
        let edges: Vec<_> = r.candidates[0].graph.edges().into_iter().filter(|&e| e != (u, v)).collect();
        r.candidates[0].graph = Graph::from_edges(5, &edges).unwrap();
        assert!(!verify_reconstruction(&r, &card).unwrap());
    }

    #[test]
    fn random_card_rejected() {
        let card = QuantumCard::dense(random_mixed_state(3, 4, 1).unwrap());
        assert!(matches!(reconstruct_from_card(&card, 4), Err(ReconstructError::NotGraphStateCard(_))));
        assert!(matches!(reconstruct_from_card(&card, 6), Err(ReconstructError::SizeMismatch { .. })));
    }
}
