//! Quantum cards and decks.
//!
//! A card is an unlabeled marginal, stored either densely or as a convex
//! mixture of Z-marked (hyper)graph states. Mixture cards of graph states are
//! evaluated exactly: the term for X-part `I` contributes `w_t ε_t(I)` to the
//! Pauli with Z-part `z_t(I)`, and terms landing on the same Pauli are summed
//! before squaring.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num::complex::Complex64 as C64;
use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bits::{full_mask, k_subsets, VertexSet};
use crate::dense::{self, partial_trace, snap_weights, DenseError, DenseState};
use crate::enumerator::{ReducedWeightDistribution, WeightDistribution, WeightError};
use crate::graph::{Graph, Hypergraph, MarkedGraph};
use crate::rational::{binomial, from_f64, int, render, to_f64, value_to_rational, Rational};
use crate::stabilizer::{generators, marked_marginal_mixture, z_part};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeckError {
    #[error("{pointer}: {msg}")]
    Schema { pointer: String, msg: String },
    #[error("card size {m} exceeds joint size {n}")]
    BadCardSize { m: usize, n: usize },
    #[error("deck incomplete: {have} cards, C({n},{m}) = {want} required")]
    Incomplete { n: usize, m: usize, have: usize, want: String },
    #[error("cards of different sizes in one deck")]
    MixedSizes,
    #[error("mixture not normalized")]
    NotNormalized,
    #[error("negative mixture weight")]
    NegativeWeight,
    #[error("empty mixture")]
    EmptyMixture,
    #[error(transparent)]
    Dense(#[from] DenseError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error("{0}")]
    Source(String),
}

fn schema(pointer: impl Into<String>, msg: impl Into<String>) -> DeckError {
    DeckError::Schema { pointer: pointer.into(), msg: msg.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureTerm {
    pub weight: Rational,
    pub graph: Hypergraph,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CardForm {
    Dense(DenseState),
    Mixture(Vec<MixtureTerm>),
}

/// An unlabeled marginal on `m` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCard {
    m: usize,
    form: CardForm,
}

impl QuantumCard {
    pub fn dense(state: DenseState) -> Self {
        QuantumCard { m: state.n(), form: CardForm::Dense(state) }
    }

    /// Validates that weights are nonnegative, sum to one and all terms share `m`.
    pub fn mixture(terms: Vec<MixtureTerm>) -> Result<Self, DeckError> {
        let m = terms.first().ok_or(DeckError::EmptyMixture)?.graph.n();
        if terms.iter().any(|t| t.graph.n() != m) {
            return Err(DeckError::MixedSizes);
        }
        if terms.iter().any(|t| t.weight.is_negative()) {
            return Err(DeckError::NegativeWeight);
        }
        if terms.iter().map(|t| &t.weight).sum::<Rational>() != int(1) {
            return Err(DeckError::NotNormalized);
        }
        Ok(QuantumCard { m, form: CardForm::Mixture(terms) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn form(&self) -> &CardForm {
        &self.form
    }

    pub fn to_dense(&self) -> Result<DenseState, DeckError> {
        match &self.form {
            CardForm::Dense(s) => Ok(s.clone()),
            CardForm::Mixture(terms) => {
                let parts = terms
                    .iter()
                    .map(|t| Ok((to_f64(&t.weight), dense::build_state(&t.graph)?)))
                    .collect::<Result<Vec<_>, DenseError>>()?;
                Ok(DenseState::mixture(&parts)?)
            }
        }
    }

    pub fn density_matrix(&self) -> Result<DMatrix<C64>, DeckError> {
        Ok(self.to_dense()?.density_matrix())
    }

    /// `A_j(ρ_card)`: exact for graph mixtures, snapped (or approximate) for dense cards
    /// and hypergraph mixtures.
    pub fn weights(&self) -> Result<WeightDistribution, DeckError> {
        if let CardForm::Mixture(terms) = &self.form {
            if let Some(values) = mixture_weights(self.m, terms) {
                return Ok(WeightDistribution::new(self.m, values)?);
            }
        }
        let state = self.to_dense()?;
        Ok(snap_weights(self.m, &dense::weight_values(&state), 2 * self.m as u32))
    }
}

/// Exact weights of a mixture of Z-marked graph states; `None` when a term has hyperedges.
fn mixture_weights(m: usize, terms: &[MixtureTerm]) -> Option<Vec<Rational>> {
    if m == 0 {
        return Some(vec![int(1)]);
    }
    let prepared = terms
        .iter()
        .map(|t| {
            let mg = t.graph.to_marked_graph().ok()?;
            Some((t.weight.clone(), generators(&mg.graph), mg.z_marks))
        })
        .collect::<Option<Vec<_>>>()?;
    let mut a = vec![Rational::zero(); m + 1];
    let mut acc: HashMap<VertexSet, Rational> = HashMap::new();
    for i in 0..=full_mask(m) {
        acc.clear();
        for (w, spec, marks) in &prepared {
            let z = z_part(spec.graph.adjacency(), i);
            let flip = (i & marks).count_ones() % 2 == 1;
            let eps = spec.element_sign(i) * if flip { -1 } else { 1 };
            let e = acc.entry(z).or_insert_with(Rational::zero);
            if eps > 0 {
                *e += w;
            } else {
                *e -= w;
            }
        }
        for (z, v) in &acc {
            if !v.is_zero() {
                a[(i | z).count_ones() as usize] += v * v;
            }
        }
    }
    Some(a)
}

/// A (putatively complete) collection of unlabeled `m`-qubit cards of an `n`-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDeck {
    pub n: usize,
    pub m: usize,
    pub cards: Vec<QuantumCard>,
    /// Shuffle seed used at extraction, recorded for reproducibility.
    pub seed: Option<u64>,
}

impl QuantumDeck {
    pub fn new(n: usize, m: usize, cards: Vec<QuantumCard>) -> Result<Self, DeckError> {
        if m > n {
            return Err(DeckError::BadCardSize { m, n });
        }
        if cards.iter().any(|c| c.m != m) {
            return Err(DeckError::MixedSizes);
        }
        Ok(QuantumDeck { n, m, cards, seed: None })
    }

    pub fn is_complete(&self) -> bool {
        binomial(self.n as i64, self.m as i64) == self.cards.len().into()
    }

    fn require_complete(&self) -> Result<(), DeckError> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(DeckError::Incomplete {
                n: self.n,
                m: self.m,
                have: self.cards.len(),
                want: binomial(self.n as i64, self.m as i64).to_string(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum DeckSource<'a> {
    Graph(&'a Graph),
    Marked(&'a MarkedGraph),
    Hypergraph(&'a Hypergraph),
    Dense(&'a DenseState),
}

impl DeckSource<'_> {
    fn n(&self) -> usize {
        match self {
            DeckSource::Graph(g) => g.n(),
            DeckSource::Marked(g) => g.n(),
            DeckSource::Hypergraph(h) => h.n(),
            DeckSource::Dense(s) => s.n(),
        }
    }
}

fn card_for_subset(source: &DeckSource<'_>, subset: VertexSet) -> Result<QuantumCard, DeckError> {
    let mixture = |mg: &MarkedGraph| -> Result<QuantumCard, DeckError> {
        let terms = marked_marginal_mixture(mg, subset)
            .map_err(|e| DeckError::Source(e.to_string()))?
            .into_iter()
            .map(|(weight, t)| MixtureTerm { weight, graph: t.to_hypergraph(), sign: t.sign })
            .collect();
        QuantumCard::mixture(terms)
    };
    match source {
        DeckSource::Graph(g) => mixture(&MarkedGraph::unmarked((*g).clone())),
        DeckSource::Marked(g) => mixture(g),
        DeckSource::Hypergraph(h) => match h.to_marked_graph() {
            Ok(mg) => mixture(&mg),
            Err(_) => Ok(QuantumCard::dense(partial_trace(&dense::build_state(h)?, subset)?)),
        },
        DeckSource::Dense(s) => Ok(QuantumCard::dense(partial_trace(s, subset)?)),
    }
}

/// All `C(n, m)` marginals with labels discarded and card order shuffled by `seed`.
/// Qubit order inside a card follows the original labels.
pub fn extract_deck(source: DeckSource<'_>, m: usize, seed: u64) -> Result<QuantumDeck, DeckError> {
    let n = source.n();
    if m > n {
        return Err(DeckError::BadCardSize { m, n });
    }
    if let DeckSource::Hypergraph(h) = source {
        if h.to_marked_graph().is_err() && n > dense::STATE_CAP {
            return Err(DenseError::CapExceeded { n, cap: dense::STATE_CAP }.into());
        }
    }
    let mut cards = k_subsets(n, m)
        .into_par_iter()
        .map(|s| card_for_subset(&source, s))
        .collect::<Result<Vec<_>, _>>()?;
    cards.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(QuantumDeck { n, m, cards, seed: Some(seed) })
}

/// `A_j^m = Σ_cards A_j(card)`.
pub fn deck_reduced_weights(deck: &QuantumDeck) -> Result<ReducedWeightDistribution, DeckError> {
    deck.require_complete()?;
    let per_card = deck.cards.par_iter().map(|c| c.weights()).collect::<Result<Vec<_>, _>>()?;
    let mut values = vec![Rational::zero(); deck.m + 1];
    let mut exact = true;
    for w in &per_card {
        exact &= w.is_exact();
        for (acc, v) in values.iter_mut().zip(w.values()) {
            *acc += v;
        }
    }
    Ok(ReducedWeightDistribution::new(deck.n, deck.m, values, exact)?)
}

/// `A_0..A_m` of the putative joint state.
pub fn infer_low_weights(deck: &QuantumDeck) -> Result<WeightDistribution, DeckError> {
    Ok(deck_reduced_weights(deck)?.infer_low_weights()?)
}

fn matrix_json(m: &DMatrix<C64>, part: impl Fn(&C64) -> f64) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| json!(part(&m[(r, c)]))).collect())).collect())
}

fn card_to_json(card: &QuantumCard) -> Value {
    match &card.form {
        CardForm::Dense(s) => {
            let rho = s.density_matrix();
            json!({"form": "dense", "re": matrix_json(&rho, |z| z.re), "im": matrix_json(&rho, |z| z.im)})
        }
        CardForm::Mixture(terms) => json!({
            "form": "mixture",
            "terms": terms.iter().map(|t| json!({
                "w": render(&t.weight),
                "graph": serde_json::to_value(&t.graph).expect("hypergraph serializes"),
                "sign": t.sign,
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn deck_to_json(deck: &QuantumDeck) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(deck.n));
    obj.insert("m".into(), json!(deck.m));
    if let Some(seed) = deck.seed {
        obj.insert("seed".into(), json!(seed));
    }
    obj.insert("cards".into(), Value::Array(deck.cards.iter().map(card_to_json).collect()));
    Value::Object(obj)
}

pub fn serialize_deck(deck: &QuantumDeck) -> String {
    serde_json::to_string_pretty(&deck_to_json(deck)).expect("json value serializes")
}

pub fn write_deck(deck: &QuantumDeck, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, serialize_deck(deck) + "\n")
}

fn get_usize(obj: &Map<String, Value>, key: &str, at: &str) -> Result<usize, DeckError> {
    obj.get(key)
        .ok_or_else(|| schema(at, format!("missing field \"{key}\"")))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| schema(format!("{at}/{key}"), "expected a nonnegative integer"))
}

fn parse_matrix(v: Option<&Value>, at: &str) -> Result<Vec<Vec<f64>>, DeckError> {
    let rows = v.and_then(Value::as_array).ok_or_else(|| schema(at, "expected a matrix"))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let row = row.as_array().ok_or_else(|| schema(format!("{at}/{r}"), "expected a row"))?;
            row.iter()
                .enumerate()
                .map(|(c, x)| {
                    value_to_rational(x)
                        .map(|q| to_f64(&q))
                        .map_err(|e| schema(format!("{at}/{r}/{c}"), e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn parse_card(v: &Value, at: &str) -> Result<QuantumCard, DeckError> {
    let obj = v.as_object().ok_or_else(|| schema(at, "expected an object"))?;
    match obj.get("form").and_then(Value::as_str) {
        Some("dense") => {
            let re = parse_matrix(obj.get("re"), &format!("{at}/re"))?;
            let im = match obj.get("im") {
                Some(_) => parse_matrix(obj.get("im"), &format!("{at}/im"))?,
                None => vec![vec![0.0; re.len()]; re.len()],
            };
            let d = re.len();
            if d == 0 || re.iter().chain(&im).any(|r| r.len() != d) || im.len() != d {
                return Err(schema(at, "matrix not square"));
            }
            let rho = DMatrix::from_fn(d, d, |r, c| C64::new(re[r][c], im[r][c]));
            DenseState::mixed(rho).map(QuantumCard::dense).map_err(|e| schema(at, e.to_string()))
        }
        Some("mixture") => {
            let terms_at = format!("{at}/terms");
            let raw = obj.get("terms").and_then(Value::as_array).ok_or_else(|| schema(&terms_at, "expected an array"))?;
            let terms = raw
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let tat = format!("{terms_at}/{k}");
                    let o = t.as_object().ok_or_else(|| schema(&tat, "expected an object"))?;
                    let weight = value_to_rational(o.get("w").ok_or_else(|| schema(&tat, "missing field \"w\""))?)
                        .map_err(|e| schema(format!("{tat}/w"), e.to_string()))?;
                    let graph: Hypergraph = serde_json::from_value(o.get("graph").cloned().ok_or_else(|| schema(&tat, "missing field \"graph\""))?)
                        .map_err(|e| schema(format!("{tat}/graph"), e.to_string()))?;
                    let sign = match o.get("sign").map(|s| s.as_i64()) {
                        None | Some(Some(1)) => 1,
                        Some(Some(-1)) => -1,
                        _ => return Err(schema(format!("{tat}/sign"), "expected 1 or -1")),
                    };
                    Ok(MixtureTerm { weight, graph, sign })
                })
                .collect::<Result<Vec<_>, _>>()?;
            QuantumCard::mixture(terms).map_err(|e| schema(at, e.to_string()))
        }
        Some(other) => Err(schema(format!("{at}/form"), format!("unknown card form {other:?}"))),
        None => Err(schema(at, "missing field \"form\"")),
    }
}

fn deck_from_value(obj: &Map<String, Value>) -> Result<QuantumDeck, DeckError> {
    let n = get_usize(obj, "n", "")?;
    let m = get_usize(obj, "m", "")?;
    let raw = obj.get("cards").and_then(Value::as_array).ok_or_else(|| schema("/cards", "expected an array"))?;
    let cards = raw.iter().enumerate().map(|(i, c)| parse_card(c, &format!("/cards/{i}"))).collect::<Result<Vec<_>, _>>()?;
    for (i, c) in cards.iter().enumerate() {
        if c.m != m {
            return Err(schema(format!("/cards/{i}"), format!("card has {} qubits, deck declares m = {m}", c.m)));
        }
    }
    let mut deck = QuantumDeck::new(n, m, cards).map_err(|e| schema("", e.to_string()))?;
    deck.seed = obj.get("seed").and_then(Value::as_u64);
    Ok(deck)
}

pub fn parse_deck(text: &str) -> Result<QuantumDeck, DeckError> {
    match parse_document(text)? {
        DeckDocument::Deck(d) => Ok(d),
        _ => Err(schema("/cards", "missing field \"cards\"")),
    }
}

/// A single card: either a card object or a deck holding exactly one card.
pub fn parse_card_json(text: &str) -> Result<QuantumCard, DeckError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("", e.to_string()))?;
    if v.get("cards").is_some() {
        let mut deck = parse_deck(text)?;
        if deck.cards.len() != 1 {
            return Err(schema("/cards", format!("expected exactly one card, found {}", deck.cards.len())));
        }
        return Ok(deck.cards.remove(0));
    }
    parse_card(&v, "")
}

pub fn read_deck(path: &std::path::Path) -> Result<QuantumDeck, DeckError> {
    let text = std::fs::read_to_string(path).map_err(|e| DeckError::Source(format!("{}: {e}", path.display())))?;
    parse_deck(&text)
}

/// Anything `deck check` accepts: a deck, a (possibly partial) weight
/// distribution `{"n", "weights"}`, or deck-derived reduced weights `{"n", "m", "reduced"}`.
#[derive(Debug, Clone, PartialEq)]
pub enum DeckDocument {
    Deck(QuantumDeck),
    Weights(WeightDistribution),
    Reduced(ReducedWeightDistribution),
}

fn rational_list(v: &Value, at: &str) -> Result<(Vec<Rational>, bool), DeckError> {
    let arr = v.as_array().ok_or_else(|| schema(at, "expected an array"))?;
    let mut exact = true;
    let vals = arr
        .iter()
        .enumerate()
        .map(|(i, x)| {
            exact &= !x.as_f64().is_some_and(|_| x.is_f64());
            value_to_rational(x).map_err(|e| schema(format!("{at}/{i}"), e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((vals, exact))
}

pub fn parse_document(text: &str) -> Result<DeckDocument, DeckError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    if obj.contains_key("cards") {
        return deck_from_value(obj).map(DeckDocument::Deck);
    }
    let n = get_usize(obj, "n", "")?;
    let declared_exact = obj.get("exact").and_then(Value::as_bool);
    if let Some(w) = obj.get("weights") {
        let (vals, exact) = rational_list(w, "/weights")?;
        let exact = declared_exact.unwrap_or(exact);
        let dist = if exact { WeightDistribution::new(n, vals) } else { WeightDistribution::approximate(n, vals) };
        return dist.map(DeckDocument::Weights).map_err(|e| schema("/weights", e.to_string()));
    }
    if let Some(r) = obj.get("reduced") {
        let m = get_usize(obj, "m", "")?;
        let (vals, exact) = rational_list(r, "/reduced")?;
        return ReducedWeightDistribution::new(n, m, vals, declared_exact.unwrap_or(exact))
            .map(DeckDocument::Reduced)
            .map_err(|e| schema("/reduced", e.to_string()));
    }
    Err(schema("", "expected one of \"cards\", \"weights\", \"reduced\""))
}

/// Reduced weights from floats, e.g. a deck evaluated numerically outside this crate.
pub fn reduced_from_floats(n: usize, m: usize, values: &[f64]) -> Result<ReducedWeightDistribution, DeckError> {
    let vals = values.iter().map(|&v| from_f64(v).unwrap_or_default()).collect();
    Ok(ReducedWeightDistribution::new(n, m, vals, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::reduce_weights;
    use crate::rational::frac;
    use crate::stabilizer::weight_distribution;

    fn bell_card() -> QuantumCard {
        let mut h = Hypergraph::new(2).unwrap();
        h.add_edge(&[0, 1]).unwrap();
        QuantumCard::mixture(vec![MixtureTerm { weight: int(1), graph: h, sign: 1 }]).unwrap()
    }

    #[test]
    fn ring_deck() {
        let ring = Graph::ring(5);
        let deck = extract_deck(DeckSource::Graph(&ring), 3, 1).unwrap();
        assert_eq!(deck.cards.len(), 10);
        let four_term = deck
            .cards
            .iter()
            .filter(|c| matches!(c.form(), CardForm::Mixture(t) if t.len() == 4))
            .count();
        assert_eq!(four_term, 10);
        for c in &deck.cards {
            assert_eq!(c.weights().unwrap().values(), [1, 0, 0, 1].map(int).as_slice());
        }
        let am = deck_reduced_weights(&deck).unwrap();
        let full = weight_distribution(&generators(&ring)).unwrap();
        assert_eq!(am, reduce_weights(&full, 3).unwrap());
        assert_eq!(infer_low_weights(&deck).unwrap().values(), &full.values()[..4]);
    }

    #[test]
    fn full_card_and_triangle_pairs() {
        let k3 = Graph::complete(3);
        let whole = extract_deck(DeckSource::Graph(&k3), 3, 0).unwrap();
        assert_eq!(whole.cards.len(), 1);
        assert_eq!(deck_reduced_weights(&whole).unwrap().values, [1, 0, 3, 4].map(int).to_vec());
        let pairs = extract_deck(DeckSource::Graph(&k3), 2, 0).unwrap();
        assert_eq!(pairs.cards.len(), 3);
        assert!(pairs.cards.windows(2).all(|w| w[0] == w[1]));
        let dense_pair = partial_trace(&dense::build_state(&k3.to_hypergraph()).unwrap(), 0b011).unwrap();
        assert!(pairs.cards[0].to_dense().unwrap().approx_eq(&dense_pair, 1e-12));
    }

    #[test]
    fn bell_deck_sum() {
        let deck = QuantumDeck::new(3, 2, vec![bell_card(), bell_card(), bell_card()]).unwrap();
        let am = deck_reduced_weights(&deck).unwrap();
        assert_eq!(am.values[2], int(9));
        assert_eq!(infer_low_weights(&deck).unwrap().values()[2], int(9));
    }

    #[test]
    fn product_deck_binomials() {
        let e = Graph::empty(6).unwrap();
        for m in 0..=6 {
            let low = infer_low_weights(&extract_deck(DeckSource::Graph(&e), m, 3).unwrap()).unwrap();
            let want: Vec<Rational> = (0..=m).map(|j| Rational::from_integer(binomial(6, j as i64))).collect();
            assert_eq!(low.values(), want.as_slice());
        }
    }

    #[test]
    fn dense_and_mixture_forms_agree() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let state = dense::build_state(&g.to_hypergraph()).unwrap();
        for m in 1..=5 {
            let a = deck_reduced_weights(&extract_deck(DeckSource::Graph(&g), m, 9).unwrap()).unwrap();
            let b = deck_reduced_weights(&extract_deck(DeckSource::Dense(&state), m, 9).unwrap()).unwrap();
            assert_eq!(a.values, b.values);
            assert!(a.exact && b.exact);
        }
    }

    #[test]
    fn json_round_trip() {
        let ring = Graph::ring(5);
        let deck = extract_deck(DeckSource::Graph(&ring), 3, 4).unwrap();
        assert_eq!(parse_deck(&serialize_deck(&deck)).unwrap(), deck);
        let r = dense::random_mixed_state(2, 2, 5).unwrap();
        let dense_deck = extract_deck(DeckSource::Dense(&r), 1, 2).unwrap();
        assert_eq!(parse_deck(&serialize_deck(&dense_deck)).unwrap(), dense_deck);
    }

    #[test]
    fn validation_errors() {
        let bad = r#"{"n":2,"m":1,"cards":[{"form":"dense","re":[[0.5,0.1],[0.2,0.5]],"im":[[0,0],[0,0]]}]}"#;
        let err = parse_deck(bad).unwrap_err().to_string();
        assert!(err.contains("/cards/0") && err.contains("card not Hermitian"), "{err}");
        let bad = r#"{"n":2,"m":1,"cards":[{"form":"mixture","terms":[{"w":"3/4","graph":{"n":1,"edges":[],"hyper":[],"zmarks":[]},"sign":1}]}]}"#;
        let err = parse_deck(bad).unwrap_err().to_string();
        assert!(err.contains("mixture not normalized"), "{err}");
        let bad = r#"{"n":2,"m":1,"cards":[{"form":"mixture","terms":[{"w":"x","graph":{"n":1},"sign":1}]}]}"#;
        assert!(parse_deck(bad).unwrap_err().to_string().starts_with("/cards/0/terms/0/w"));
    }

    #[test]
    fn documents() {
        match parse_document(r#"{"n":7,"weights":[1,0,0,0,35,42,28,22]}"#).unwrap() {
            DeckDocument::Weights(w) => assert!(w.is_complete() && w.is_exact()),
            other => panic!("{other:?}"),
        }
        match parse_document(r#"{"n":10,"m":6,"reduced":["210","0","3/7"]}"#) {
            Err(DeckError::Schema { pointer, .. }) => assert_eq!(pointer, "/reduced"),
            other => panic!("{other:?}"),
        }
        match parse_document(r#"{"n":3,"weights":[1,0,0.375]}"#).unwrap() {
            DeckDocument::Weights(w) => {
                assert!(!w.is_exact());
                assert_eq!(w.values()[2], frac(3, 8));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incomplete_deck_rejected() {
        let deck = QuantumDeck::new(3, 2, vec![bell_card()]).unwrap();
        assert!(matches!(deck_reduced_weights(&deck), Err(DeckError::Incomplete { .. })));
    }

    #[test]
    fn shuffle_is_seeded_and_label_free() {
        let g = Graph::path(6);
        let a = extract_deck(DeckSource::Graph(&g), 3, 1).unwrap();
        let b = extract_deck(DeckSource::Graph(&g), 3, 1).unwrap();
        let c = extract_deck(DeckSource::Graph(&g), 3, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(deck_reduced_weights(&a).unwrap(), deck_reduced_weights(&c).unwrap());
    }
}
