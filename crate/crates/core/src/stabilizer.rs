//! Graph-state stabilizer enumeration.
//!
//! The stabilizer element for a subset `I` of generators has X-part `I` and
//! Z-part `⊕_{i∈I} adj[i]`, so its weight is `popcount(I | z)`. Weight counting
//! walks all `2^n` subsets in Gray-code order (one row XOR per step) and splits
//! the walk into contiguous ranges with private histograms.

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::{compress, expand, full_mask, iter_bits, VertexSet};
use crate::enumerator::{even_weight_sum, WeightDistribution};
use crate::graph::{Graph, MarkedGraph};
use crate::pauli::PauliOperator;
use crate::rational::{int, pow2, Rational};

/// Largest vertex count accepted by the full enumeration.
pub const ENUMERATION_CAP: usize = 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("{n} vertices exceed the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("subset mask {0:#b} not contained in the vertex set")]
    BadSubset(u32),
}

/// Generators `g_i = X_i ⊗ Z_{N(i)}` of a graph state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerSpec {
    pub graph: Graph,
    pub generators: Vec<PauliOperator>,
}

pub fn generators(graph: &Graph) -> StabilizerSpec {
    let n = graph.n();
    let generators = (0..n)
        .map(|i| PauliOperator::new(n, 1 << i, graph.adjacency()[i], 0).expect("valid graph masks"))
        .collect::<Vec<_>>();
    debug_assert!(generators
        .iter()
        .enumerate()
        .all(|(i, g)| generators[i + 1..].iter().all(|h| g.commutes(h).unwrap())));
    StabilizerSpec { graph: graph.clone(), generators }
}

impl StabilizerSpec {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `Π_{i∈I} g_i` with its exact sign.
    pub fn element(&self, subset: VertexSet) -> PauliOperator {
        let n = self.n();
        let mut acc = PauliOperator::identity(n.max(1)).expect("n >= 1");
        for i in iter_bits(subset) {
            acc = acc.multiply(&self.generators[i]).expect("same n");
        }
        acc
    }

    /// All `2^n` signed stabilizer elements, indexed by subset mask.
    pub fn elements(&self) -> Vec<PauliOperator> {
        (0..1u32 << self.n()).map(|s| self.element(s)).collect()
    }

    /// Sign `±1` of the element with X-part `subset`.
    pub fn element_sign(&self, subset: VertexSet) -> i8 {
        self.element(subset).sign().expect("stabilizer elements are Hermitian")
    }
}

/// Z-part of the element with X-part `subset`.
#[inline]
pub fn z_part(adj: &[VertexSet], subset: VertexSet) -> VertexSet {
    iter_bits(subset).fold(0, |z, i| z ^ adj[i])
}

fn worker_count() -> usize {
    std::env::var("QDECK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Histogram of `popcount(g | z)` over Gray indices `start..end` (subsets of the low bits).
fn gray_range_histogram(adj: &[VertexSet], start: u64, end: u64, filter: VertexSet, out_len: usize) -> Vec<u64> {
    let mut hist = vec![0u64; out_len];
    if start >= end {
        return hist;
    }
    let mut g = (start ^ (start >> 1)) as VertexSet;
    let mut z = z_part(adj, g);
    let mut i = start;
    loop {
        let supp = g | z;
        if supp & !filter == 0 {
            hist[supp.count_ones() as usize] += 1;
        }
        i += 1;
        if i == end {
            break;
        }
        let bit = i.trailing_zeros();
        g ^= 1 << bit;
        z ^= adj[bit as usize];
    }
    hist
}

fn parallel_histogram(adj: &[VertexSet], bits: usize, filter: VertexSet, out_len: usize) -> Vec<u64> {
    let total = 1u64 << bits;
    let workers = worker_count();
    let chunks = if total < 1 << 12 { 1 } else { (workers * 4) as u64 };
    let step = total.div_ceil(chunks);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| gray_range_histogram(adj, c * step, ((c + 1) * step).min(total), filter, out_len))
            .reduce(
                || vec![0u64; out_len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    if workers != rayon::current_num_threads() {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    } else {
        run()
    }
}

/// Raw counts `A_j = #{I : wt(s_I) = j}`.
pub fn weight_counts(spec: &StabilizerSpec) -> Result<Vec<u64>, EngineError> {
    let n = spec.n();
    if n > ENUMERATION_CAP {
        return Err(EngineError::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    Ok(parallel_histogram(spec.graph.adjacency(), n, full_mask(n), n + 1))
}

/// Exact weight distribution of the graph state.
pub fn weight_distribution(spec: &StabilizerSpec) -> Result<WeightDistribution, EngineError> {
    let counts = weight_counts(spec)?;
    Ok(WeightDistribution::from_counts(spec.n(), &counts).expect("A_0 = 1 by construction"))
}

/// `A_j^S`: elements of weight `j` supported inside `subset`, for `j = 0..|S|`.
pub fn support_restricted_weights(spec: &StabilizerSpec, subset: VertexSet) -> Result<Vec<u64>, EngineError> {
    let n = spec.n();
    if subset & !full_mask(n) != 0 {
        return Err(EngineError::BadSubset(subset));
    }
    if n > ENUMERATION_CAP {
        return Err(EngineError::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    // only X-parts inside S can qualify: walk subsets of S through compressed indices
    let k = subset.count_ones() as usize;
    let rows: Vec<VertexSet> = iter_bits(subset).map(|i| spec.graph.adjacency()[i]).collect();
    let hist = parallel_histogram_mapped(&rows, k, subset, n);
    Ok(hist[..=k].to_vec())
}

/// Like [`parallel_histogram`] but the walked index bits map onto `rows`, whose
/// X-part is `expand(g, subset)`.
fn parallel_histogram_mapped(rows: &[VertexSet], k: usize, subset: VertexSet, n: usize) -> Vec<u64> {
    let total = 1u64 << k;
    let mut hist = vec![0u64; n + 1];
    let mut g: u64 = 0;
    let mut z: VertexSet = 0;
    for i in 0..total {
        if i > 0 {
            let bit = i.trailing_zeros() as usize;
            g ^= 1 << bit;
            z ^= rows[bit];
        }
        let supp = expand(g, subset as u64) as VertexSet | z;
        if supp & !subset == 0 {
            hist[supp.count_ones() as usize] += 1;
        }
    }
    hist
}

/// Decomposes the marginal of `|G><G|` on `subset` into an equal mixture of
/// `2^(n-|S|)` Z-marked graph states on `|S|` vertices (relabelled in order).
///
/// Each traced vertex `j` splits a term into its deleted graph and its shrunken
/// graph (Z-marks toggled on the current `N(j)`).
pub fn marginal_mixture(graph: &Graph, subset: VertexSet) -> Result<Vec<(Rational, MarkedGraph)>, EngineError> {
    marked_marginal_mixture(&MarkedGraph::unmarked(graph.clone()), subset)
}

/// [`marginal_mixture`] for a Z-marked graph; marks on kept vertices carry over.
pub fn marked_marginal_mixture(source: &MarkedGraph, subset: VertexSet) -> Result<Vec<(Rational, MarkedGraph)>, EngineError> {
    let graph = &source.graph;
    let n = graph.n();
    if subset & !full_mask(n) != 0 {
        return Err(EngineError::BadSubset(subset));
    }
    let traced = full_mask(n) & !subset;
    // work on full-size adjacency, clearing rows of traced vertices as we go
    let mut terms: Vec<(Vec<VertexSet>, VertexSet, i8)> = vec![(graph.adjacency().to_vec(), source.z_marks, source.sign)];
    for j in iter_bits(traced) {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (adj, marks, sign) in terms {
            let nb = adj[j];
            let mut cut = adj;
            for w in iter_bits(nb) {
                cut[w] &= !(1 << j);
            }
            cut[j] = 0;
            let shrink_sign = if marks >> j & 1 == 1 { -sign } else { sign };
            let clear = !(1u32 << j);
            next.push((cut.clone(), marks & clear, sign));
            next.push((cut, (marks ^ nb) & clear, shrink_sign));
        }
        terms = next;
    }
    let weight = pow2(-(traced.count_ones() as i64));
    Ok(terms
        .into_iter()
        .map(|(adj, marks, sign)| {
            let full = Graph::from_adjacency(adj).expect("symmetric");
            let graph = full.induced(subset);
            let z_marks = compress(marks as u64, subset as u64) as VertexSet;
            (weight.clone(), MarkedGraph { graph, z_marks, sign })
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum GraphType {
    #[serde(rename = "type I")]
    TypeI,
    #[serde(rename = "type II")]
    TypeII,
    #[serde(rename = "not a graph state")]
    NotGraphState,
}

impl std::fmt::Display for GraphType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphType::TypeI => "type I",
            GraphType::TypeII => "type II",
            GraphType::NotGraphState => "not a graph state",
        })
    }
}

/// Type I iff the even-weight sum is `2^(n-1)`, type II iff it is `2^n`.
pub fn classify_type(a: &WeightDistribution) -> GraphType {
    classify_projector_type(a, 0)
}

/// Same test for a state proportional to a rank-`2^q` stabilizer projector:
/// the even-weight sum must be `2^(n-q-1)` or `2^(n-q)`.
pub fn classify_projector_type(a: &WeightDistribution, q: usize) -> GraphType {
    let n = a.n() as i64;
    let ae = even_weight_sum(a);
    if !a.is_complete() || a.values()[0] != int(1) {
        return GraphType::NotGraphState;
    }
    if ae == pow2(n - q as i64 - 1) {
        GraphType::TypeI
    } else if ae == pow2(n - q as i64) {
        GraphType::TypeII
    } else {
        GraphType::NotGraphState
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(g: &Graph) -> Vec<u64> {
        weight_counts(&generators(g)).unwrap()
    }

    #[test]
    fn generator_strings() {
        let spec = generators(&Graph::complete(3));
        let s: Vec<String> = spec.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(s, vec!["XZZ", "ZXZ", "ZZX"]);
        let e = generators(&Graph::empty(3).unwrap());
        assert!(e.generators.iter().enumerate().all(|(i, g)| g.x_mask() == 1 << i && g.z_mask() == 0));
        let r = generators(&Graph::ring(5));
        assert_eq!(r.generators[0].to_string(), "XZIIZ");
        assert_eq!(r.generators[2].to_string(), "IZXZI");
    }

    #[test]
    fn triangle_stabilizer() {
        let spec = generators(&Graph::complete(3));
        assert!(spec.element(0).is_identity());
        assert_eq!(spec.element(0b111).to_string(), "-XXX");
        assert_eq!(spec.element(0b011).to_string(), "YYI");
        let mut all: Vec<String> = spec.elements().iter().map(|p| p.to_string()).collect();
        all.sort();
        let mut want = vec!["III", "IYY", "YIY", "YYI", "XZZ", "ZXZ", "ZZX", "-XXX"];
        want.sort();
        assert_eq!(all, want);
    }

    #[test]
    fn distributions() {
        assert_eq!(counts(&Graph::complete(3)), vec![1, 0, 3, 4]);
        assert_eq!(counts(&Graph::complete(6)), vec![1, 0, 15, 0, 15, 0, 33]);
        assert_eq!(counts(&Graph::ring(5)), vec![1, 0, 0, 10, 15, 6]);
        for n in 1..=10 {
            let c = counts(&Graph::empty(n).unwrap());
            let binom: Vec<u64> = (0..=n).map(|j| crate::rational::binomial(n as i64, j as i64).try_into().unwrap()).collect();
            assert_eq!(c, binom);
        }
        let big = Graph::empty(29).unwrap();
        assert!(matches!(weight_counts(&generators(&big)), Err(EngineError::CapExceeded { .. })));
    }

    #[test]
    fn gray_walk_independent_of_chunking() {
        let g = Graph::ring(14);
        let adj = g.adjacency();
        let whole = gray_range_histogram(adj, 0, 1 << 14, full_mask(14), 15);
        let mut split = vec![0u64; 15];
        for (a, b) in [(0u64, 5u64), (5, 4000), (4000, 1 << 14)] {
            for (x, y) in split.iter_mut().zip(gray_range_histogram(adj, a, b, full_mask(14), 15)) {
                *x += y;
            }
        }
        assert_eq!(whole, split);
    }

    #[test]
    fn restricted_weights() {
        let spec = generators(&Graph::complete(3));
        assert_eq!(support_restricted_weights(&spec, 0b111).unwrap(), vec![1, 0, 3, 4]);
        assert_eq!(support_restricted_weights(&spec, 0b011).unwrap(), vec![1, 0, 1]);
        assert_eq!(support_restricted_weights(&spec, 0).unwrap(), vec![1]);
        assert!(support_restricted_weights(&spec, 0b1000).is_err());
    }

    #[test]
    fn triangle_marginal() {
        let terms = marginal_mixture(&Graph::complete(3), 0b011).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(w, t)| *w == crate::rational::frac(1, 2) && t.graph == Graph::complete(2)));
        let marks: Vec<u32> = terms.iter().map(|(_, t)| t.z_marks).collect();
        assert_eq!(marks, vec![0, 0b11]);
        let whole = marginal_mixture(&Graph::complete(3), 0b111).unwrap();
        assert_eq!(whole, vec![(int(1), MarkedGraph::unmarked(Graph::complete(3)))]);
    }

    #[test]
    fn ring_nearest_neighbour_marginal() {
        // tracing out adjacent vertices 3 and 4 of the 5-ring leaves the path 0-1-2
        let terms = marginal_mixture(&Graph::ring(5), 0b00111).unwrap();
        assert_eq!(terms.len(), 4);
        let mut marks: Vec<u32> = terms.iter().map(|(_, t)| t.z_marks).collect();
        marks.sort();
        assert_eq!(marks, vec![0b000, 0b001, 0b100, 0b101]);
        assert!(terms.iter().all(|(_, t)| t.graph == Graph::path(3)));
    }

    #[test]
    fn type_classification() {
        let k3 = weight_distribution(&generators(&Graph::complete(3))).unwrap();
        assert_eq!(classify_type(&k3), GraphType::TypeI);
        let k6 = weight_distribution(&generators(&Graph::complete(6))).unwrap();
        assert_eq!(classify_type(&k6), GraphType::TypeII);
        let cube = WeightDistribution::from_ints(8, &[1, 0, 0, 0, 30, 48, 96, 48, 33]).unwrap();
        assert_eq!(classify_type(&cube), GraphType::NotGraphState);
        // rank-2 marginal of the triangle (q = 1) and rank-4 ring marginal (q = 2)
        let k3_pair = WeightDistribution::from_ints(2, &[1, 0, 1]).unwrap();
        assert_eq!(classify_projector_type(&k3_pair, 1), GraphType::TypeII);
        let ring_card = WeightDistribution::from_ints(3, &[1, 0, 0, 1]).unwrap();
        assert_eq!(classify_projector_type(&ring_card, 2), GraphType::TypeI);
    }
}
