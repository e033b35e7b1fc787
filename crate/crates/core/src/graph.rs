//! Simple graphs, hypergraphs and Z-marked graphs.
//!
//! Vertices are `0..n` with `n <= 32`; vertex subsets are `u32` masks. Besides the
//! quantum-side operations (deletion, shrinking, local complementation) this module
//! carries the classical deck machinery: subgraph counting and Kelly's condition.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{compress, full_mask, iter_bits, mask_from_indices, VertexSet};
use crate::rational::{int, Rational};
use crate::MAX_QUBITS;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex count {0} exceeds 32")]
    TooManyVertices(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("empty edge")]
    EmptyEdge,
    #[error("hypergraph has edges of size > 2; not a simple graph")]
    NotSimple,
    #[error("malformed deck: {0}")]
    MalformedDeck(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph stored as adjacency masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_QUBITS {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(vec![u.min(v), u.max(v)]));
            }
            g.toggle_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and loops.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_QUBITS {
            return Err(GraphError::TooManyVertices(n));
        }
        let full = full_mask(n);
        for (u, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 31 - row.leading_zeros() as usize, n });
            }
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            for v in iter_bits(row) {
                if adj[v] >> u & 1 == 0 {
                    return Err(GraphError::Parse { line: 0, msg: format!("asymmetric adjacency at ({u},{v})") });
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let full = full_mask(n);
        Graph { n, adj: (0..n).map(|v| full & !(1 << v)).collect() }
    }

    pub fn ring(n: usize) -> Self {
        let mut g = Graph { n, adj: vec![0; n] };
        if n >= 3 {
            for v in 0..n {
                g.toggle_edge(v, (v + 1) % n);
            }
        } else if n == 2 {
            g.toggle_edge(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph { n, adj: vec![0; n] };
        for v in 1..n {
            g.toggle_edge(v - 1, v);
        }
        g
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Self {
        let mut g = Graph { n, adj: vec![0; n] };
        for v in 1..n {
            g.toggle_edge(0, v);
        }
        g
    }

    /// Erdős-Rényi sample with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph { n, adj: vec![0; n] };
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.toggle_edge(u, v);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in iter_bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: VertexSet = 1;
        let mut frontier: VertexSet = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full_mask(self.n)
    }

    /// Induced subgraph on `subset`, relabelled so the `k`-th smallest vertex becomes `k`.
    pub fn induced(&self, subset: VertexSet) -> Graph {
        let adj = iter_bits(subset)
            .map(|v| compress((self.adj[v] & subset) as u64, subset as u64) as VertexSet)
            .collect();
        Graph { n: subset.count_ones() as usize, adj }
    }

    /// The vertex-deleted subgraph on `n - 1` vertices (indices above `v` shift down).
    pub fn vertex_delete(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        Ok(self.induced(full_mask(self.n) & !(1 << v)))
    }

    /// The vertex-shrunken graph: the deleted graph with Z-marks on `N(v)`.
    pub fn vertex_shrink(&self, v: usize) -> Result<MarkedGraph, GraphError> {
        let graph = self.vertex_delete(v)?;
        let rest = full_mask(self.n) & !(1 << v);
        let z_marks = compress(self.adj[v] as u64, rest as u64) as VertexSet;
        Ok(MarkedGraph { graph, z_marks, sign: 1 })
    }

    /// Complements the subgraph induced on `N(v)`.
    pub fn local_complement(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        let nb = self.adj[v];
        for u in iter_bits(nb) {
            g.adj[u] ^= nb & !(1 << u);
        }
        Ok(g)
    }

    /// The `n` vertex-deleted subgraphs, in vertex order (unlabeled multiset semantics).
    pub fn classical_deck(&self) -> Vec<Graph> {
        (0..self.n).map(|v| self.vertex_delete(v).expect("in range")).collect()
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0; self.n];
        for (u, &pu) in perm.iter().enumerate() {
            adj[pu] = iter_bits(self.adj[u]).fold(0, |m, w| m | 1 << perm[w]);
        }
        Graph { n: self.n, adj }
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| (1 << u) | (1 << v)).collect(),
            z_marks: 0,
        }
    }

    /// Canonical representative of the isomorphism class (small `n`).
    ///
    /// Vertices are first split into classes by an isomorphism-invariant colour
    /// (degree, then sorted neighbour degrees); the minimum adjacency encoding is
    /// taken over all class-respecting orderings.
    pub fn canonical_form(&self) -> Graph {
        let n = self.n;
        if n <= 1 {
            return self.clone();
        }
        let colour: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nd: Vec<usize> = iter_bits(self.adj[v]).map(|w| self.degree(w)).collect();
                nd.sort_unstable();
                (self.degree(v), nd)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| colour[a].cmp(&colour[b]));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match classes.last_mut() {
                Some(c) if colour[c[0]] == colour[v] => c.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let mut best: Option<Vec<VertexSet>> = None;
        let mut slots = Vec::with_capacity(n);
        canonical_search(self, &classes, 0, &mut slots, &mut best);
        Graph { n, adj: best.expect("at least one ordering") }
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Enumerates orderings class by class; `slots[k]` is the old vertex placed at position `k`.
fn canonical_search(
    g: &Graph,
    classes: &[Vec<usize>],
    ci: usize,
    slots: &mut Vec<usize>,
    best: &mut Option<Vec<VertexSet>>,
) {
    if ci == classes.len() {
        let mut pos = vec![0usize; g.n];
        for (k, &v) in slots.iter().enumerate() {
            pos[v] = k;
        }
        let adj: Vec<VertexSet> = slots
            .iter()
            .map(|&v| iter_bits(g.adj[v]).fold(0, |m, w| m | 1 << pos[w]))
            .collect();
        if best.as_ref().is_none_or(|b| adj < *b) {
            *best = Some(adj);
        }
        return;
    }
    let mut class = classes[ci].clone();
    permute_class(&mut class, 0, &mut |perm: &[usize]| {
        let base = slots.len();
        slots.extend_from_slice(perm);
        canonical_search(g, classes, ci + 1, slots, best);
        slots.truncate(base);
    });
}

fn permute_class(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_class(items, k + 1, f);
        items.swap(k, i);
    }
}

/// All graphs on `n` vertices up to isomorphism, as canonical forms (sorted).
///
/// Built by extending every class on `n - 1` vertices with a new vertex attached
/// to each possible neighbourhood, then deduplicating canonical forms.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut current: BTreeSet<Graph> = BTreeSet::new();
    current.insert(Graph { n: 0, adj: vec![] });
    for k in 1..=n {
        let mut next = BTreeSet::new();
        for g in &current {
            for nb in 0..(1u32 << (k - 1)) {
                let mut adj = g.adj.clone();
                adj.push(nb);
                for v in iter_bits(nb) {
                    adj[v] |= 1 << (k - 1);
                }
                next.insert(Graph { n: k, adj }.canonical_form());
            }
        }
        current = next;
    }
    current.into_iter().collect()
}

/// A graph with one-edges (local Z gates) and a global sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub z_marks: VertexSet,
    pub sign: i8,
}

impl MarkedGraph {
    pub fn unmarked(graph: Graph) -> Self {
        MarkedGraph { graph, z_marks: 0, sign: 1 }
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        let mut h = self.graph.to_hypergraph();
        h.z_marks = self.z_marks;
        h
    }
}

/// Hypergraph with edges of size `>= 2`; one-edges live in `z_marks`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<VertexSet>,
    z_marks: VertexSet,
}

impl Hypergraph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_QUBITS {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Hypergraph { n, edges: BTreeSet::new(), z_marks: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().copied()
    }

    pub fn z_marks(&self) -> VertexSet {
        self.z_marks
    }

    pub fn has_hyperedges(&self) -> bool {
        self.edges.iter().any(|e| e.count_ones() > 2)
    }

    /// Adds an edge given as vertex list; size-1 edges become Z-marks.
    /// Rejects duplicates.
    pub fn add_edge(&mut self, vertices: &[usize]) -> Result<(), GraphError> {
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let e = mask_from_indices(vertices.iter().copied());
        if e.count_ones() as usize != vertices.len() {
            return Err(GraphError::DuplicateEdge(vertices.to_vec()));
        }
        match e.count_ones() {
            0 => Err(GraphError::EmptyEdge),
            1 => {
                if self.z_marks & e != 0 {
                    return Err(GraphError::DuplicateEdge(vertices.to_vec()));
                }
                self.z_marks |= e;
                Ok(())
            }
            _ => {
                if !self.edges.insert(e) {
                    return Err(GraphError::DuplicateEdge(iter_bits(e).collect()));
                }
                Ok(())
            }
        }
    }

    /// Adds an edge mod 2: gates are involutions, so a repeated edge cancels.
    fn toggle_edge_mask(&mut self, e: VertexSet) -> i8 {
        match e.count_ones() {
            0 => -1,
            1 => {
                self.z_marks ^= e;
                1
            }
            _ => {
                if !self.edges.remove(&e) {
                    self.edges.insert(e);
                }
                1
            }
        }
    }

    /// Shrinks vertex `v`: every edge `e ∋ v` becomes `e \ {v}` (combined mod 2).
    /// Returns the hypergraph on `n - 1` vertices and the global sign picked up
    /// from a shrunken one-edge (the empty gate is the scalar `-1`).
    pub fn vertex_shrink(&self, v: usize) -> Result<(Hypergraph, i8), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let rest = (full_mask(self.n) & !(1 << v)) as u64;
        let squeeze = |e: VertexSet| compress(e as u64, rest) as VertexSet;
        let mut out = Hypergraph::new(self.n - 1)?;
        let mut sign = 1i8;
        out.z_marks = squeeze(self.z_marks);
        if self.z_marks >> v & 1 == 1 {
            sign = -sign;
        }
        for &e in &self.edges {
            sign *= out.toggle_edge_mask(squeeze(e & !(1 << v)));
        }
        Ok((out, sign))
    }

    /// Deletes vertex `v` together with every incident edge and mark.
    pub fn vertex_delete(&self, v: usize) -> Result<Hypergraph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let rest = (full_mask(self.n) & !(1 << v)) as u64;
        let squeeze = |e: VertexSet| compress(e as u64, rest) as VertexSet;
        Ok(Hypergraph {
            n: self.n - 1,
            edges: self.edges.iter().filter(|&&e| e >> v & 1 == 0).map(|&e| squeeze(e)).collect(),
            z_marks: squeeze(self.z_marks),
        })
    }

    /// Simple-graph view; fails if any edge has more than two vertices.
    pub fn to_marked_graph(&self) -> Result<MarkedGraph, GraphError> {
        if self.has_hyperedges() {
            return Err(GraphError::NotSimple);
        }
        let mut graph = Graph::empty(self.n)?;
        for &e in &self.edges {
            let mut it = iter_bits(e);
            let (u, v) = (it.next().unwrap(), it.next().unwrap());
            graph.toggle_edge(u, v);
        }
        Ok(MarkedGraph { graph, z_marks: self.z_marks, sign: 1 })
    }

    /// Parses the text graph format: `n=<int>`, then `u v`, `h: v1 v2 ...`, `z: v1 ...`.
    pub fn parse(text: &str) -> Result<Hypergraph, GraphError> {
        let mut h: Option<Hypergraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| GraphError::Parse { line: line_no, msg };
            if let Some(rest) = line.strip_prefix("n=") {
                if h.is_some() {
                    return Err(perr("repeated header".into()));
                }
                let n: usize = rest.trim().parse().map_err(|_| perr(format!("bad vertex count {rest:?}")))?;
                h = Some(Hypergraph::new(n).map_err(|e| perr(e.to_string()))?);
                continue;
            }
            let hg = h.as_mut().ok_or_else(|| perr("missing header line n=<int>".into()))?;
            let (kind, body) = if let Some(r) = line.strip_prefix("h:") {
                ('h', r)
            } else if let Some(r) = line.strip_prefix("z:") {
                ('z', r)
            } else {
                ('e', line)
            };
            let vs: Vec<usize> = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad vertex {t:?}"))))
                .collect::<Result<_, _>>()?;
            match kind {
                'z' => {
                    for v in vs {
                        hg.add_edge(&[v]).map_err(|e| perr(e.to_string()))?;
                    }
                }
                'e' if vs.len() != 2 => return Err(perr("edge line needs exactly two vertices".into())),
                _ => {
                    if vs.len() == 2 && vs[0] == vs[1] {
                        return Err(perr(GraphError::SelfLoop(vs[0]).to_string()));
                    }
                    hg.add_edge(&vs).map_err(|e| perr(e.to_string()))?
                }
            }
        }
        h.ok_or(GraphError::Parse { line: 0, msg: "empty graph file".into() })
    }

    /// Renders the text graph format accepted by [`Hypergraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for &e in &self.edges {
            let vs: Vec<String> = iter_bits(e).map(|v| v.to_string()).collect();
            if vs.len() == 2 {
                s.push_str(&format!("{} {}\n", vs[0], vs[1]));
            } else {
                s.push_str(&format!("h: {}\n", vs.join(" ")));
            }
        }
        if self.z_marks != 0 {
            let vs: Vec<String> = iter_bits(self.z_marks).map(|v| v.to_string()).collect();
            s.push_str(&format!("z: {}\n", vs.join(" ")));
        }
        s
    }
}

/// JSON shape used inside deck files: `{"n":..,"edges":[[u,v]],"hyper":[[..]],"zmarks":[..]}`.
#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    #[serde(default)]
    edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    hyper: Vec<Vec<usize>>,
    #[serde(default)]
    zmarks: Vec<usize>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = GraphError;

    fn try_from(j: HypergraphJson) -> Result<Self, GraphError> {
        let mut h = Hypergraph::new(j.n)?;
        for e in j.edges.iter().chain(j.hyper.iter()) {
            if e.len() < 2 {
                return Err(GraphError::EmptyEdge);
            }
            h.add_edge(e)?;
        }
        for &v in &j.zmarks {
            h.add_edge(&[v])?;
        }
        Ok(h)
    }
}

impl From<Hypergraph> for HypergraphJson {
    fn from(h: Hypergraph) -> Self {
        let (mut edges, mut hyper) = (Vec::new(), Vec::new());
        for &e in &h.edges {
            let vs: Vec<usize> = iter_bits(e).collect();
            if vs.len() == 2 {
                edges.push(vs);
            } else {
                hyper.push(vs);
            }
        }
        HypergraphJson { n: h.n, edges, hyper, zmarks: iter_bits(h.z_marks).collect() }
    }
}

/// Number of edge-preserving injections of `f` into `g`.
fn count_embeddings(g: &Graph, f: &Graph) -> u64 {
    fn rec(g: &Graph, f: &Graph, k: usize, map: &mut Vec<usize>, used: VertexSet) -> u64 {
        if k == f.n {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.n {
            if used >> v & 1 == 1 {
                continue;
            }
            // every F-edge from k back to an earlier vertex must land on a G-edge
            let ok = iter_bits(f.adj[k] & full_mask(k)).all(|w| g.has_edge(v, map[w]));
            if ok {
                map.push(v);
                total += rec(g, f, k + 1, map, used | 1 << v);
                map.pop();
            }
        }
        total
    }
    if f.n > g.n {
        return 0;
    }
    rec(g, f, 0, &mut Vec::with_capacity(f.n), 0)
}

/// Number of (not necessarily induced) copies of `f` in `g`.
pub fn subgraph_count(g: &Graph, f: &Graph) -> u64 {
    let aut = count_embeddings(f, f);
    count_embeddings(g, f) / aut
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KellyResult {
    #[serde(with = "crate::rational::serde_one")]
    pub value: Rational,
    pub pass: bool,
}

/// Kelly's condition: `Σ_i count(G_i, F) / (n - |V_F|)` must be an integer.
pub fn kelly_check(deck: &[Graph], probe: &Graph, n: usize) -> Result<KellyResult, GraphError> {
    if deck.len() != n {
        return Err(GraphError::MalformedDeck(format!("expected {n} cards, got {}", deck.len())));
    }
    if let Some(c) = deck.iter().find(|c| c.n + 1 != n) {
        return Err(GraphError::MalformedDeck(format!("card with {} vertices, expected {}", c.n, n - 1)));
    }
    if probe.n >= n {
        return Err(GraphError::MalformedDeck(format!("probe has {} vertices, needs fewer than {n}", probe.n)));
    }
    let total: u64 = deck.iter().map(|c| subgraph_count(c, probe)).sum();
    let value = int(total as i64) / int((n - probe.n) as i64);
    let pass = value.is_integer();
    Ok(KellyResult { value, pass })
}

/// Distinct isomorphism classes in a multiset of graphs (used for deck comparisons).
pub fn canonical_multiset(cards: &[Graph]) -> Vec<Graph> {
    let mut v: Vec<Graph> = cards.iter().map(Graph::canonical_form).collect();
    v.sort();
    v
}

pub fn distinct_classes(cards: &[Graph]) -> usize {
    cards.iter().map(Graph::canonical_form).collect::<HashSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn neighborhoods() {
        assert_eq!(Graph::complete(3).neighborhood(0).unwrap(), 0b110);
        assert_eq!(Graph::ring(5).neighborhood(2).unwrap(), 0b01010);
        assert_eq!(Graph::empty(3).unwrap().neighborhood(1).unwrap(), 0);
        assert!(Graph::ring(5).neighborhood(5).is_err());
    }

    #[test]
    fn deletion() {
        for v in 0..3 {
            assert_eq!(Graph::complete(3).vertex_delete(v).unwrap(), Graph::complete(2));
        }
        for v in 0..5 {
            assert!(Graph::ring(5).vertex_delete(v).unwrap().is_isomorphic(&Graph::path(4)));
        }
        let single = Graph::empty(1).unwrap().vertex_delete(0).unwrap();
        assert_eq!(single.n(), 0);
    }

    #[test]
    fn shrinking_simple_graphs() {
        let s = Graph::complete(3).vertex_shrink(2).unwrap();
        assert_eq!(s.graph, Graph::complete(2));
        assert_eq!(s.z_marks, 0b11);
        let e = Graph::empty(4).unwrap().vertex_shrink(1).unwrap();
        assert_eq!(e.z_marks, 0);
        assert_eq!(e.graph.edge_count(), 0);
        // shrink/delete consistency
        let g = Graph::ring(6);
        for v in 0..6 {
            assert_eq!(g.vertex_shrink(v).unwrap().graph, g.vertex_delete(v).unwrap());
        }
    }

    #[test]
    fn shrinking_hyperedges() {
        let mut h = Hypergraph::new(4).unwrap();
        h.add_edge(&[0, 1, 3]).unwrap();
        let (s, sign) = h.vertex_shrink(3).unwrap();
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![0b011]);
        assert_eq!(sign, 1);
        // a two-edge shrinks to a one-edge, a marked vertex to the scalar -1
        let mut k = Hypergraph::new(2).unwrap();
        k.add_edge(&[0, 1]).unwrap();
        k.add_edge(&[1]).unwrap();
        let (s, sign) = k.vertex_shrink(1).unwrap();
        assert_eq!(s.z_marks(), 0b1);
        assert_eq!(sign, -1);
        // edges that collide after shrinking cancel
        let mut c = Hypergraph::new(3).unwrap();
        c.add_edge(&[0, 1, 2]).unwrap();
        c.add_edge(&[0, 1]).unwrap();
        let (s, _) = c.vertex_shrink(2).unwrap();
        assert_eq!(s.edges().count(), 0);
    }

    #[test]
    fn local_complementation() {
        let lc = Graph::star(4).local_complement(0).unwrap();
        assert!(lc.has_edge(1, 2) && lc.has_edge(1, 3) && lc.has_edge(2, 3));
        assert_eq!(lc.edge_count(), 6);
        let k3 = Graph::complete(3).local_complement(0).unwrap();
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2)]);
        assert!(k3.is_isomorphic(&Graph::path(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = Graph::random(7, 0.5, &mut rng);
            for v in 0..7 {
                assert_eq!(g.local_complement(v).unwrap().local_complement(v).unwrap(), g);
            }
        }
    }

    #[test]
    fn decks() {
        assert!(Graph::complete(3).classical_deck().iter().all(|c| *c == Graph::complete(2)));
        let p3 = Graph::path(3).classical_deck();
        let edges: Vec<usize> = p3.iter().map(Graph::edge_count).collect();
        assert_eq!(edges, vec![1, 0, 1]);
        let e = Graph::empty(4).unwrap().classical_deck();
        assert!(e.iter().all(|c| c.n() == 3 && c.edge_count() == 0));
    }

    #[test]
    fn subgraph_counts() {
        assert_eq!(subgraph_count(&Graph::complete(3), &Graph::complete(2)), 3);
        assert_eq!(subgraph_count(&Graph::complete(4), &Graph::complete(3)), 4);
        assert_eq!(subgraph_count(&Graph::complete(3), &Graph::path(3)), 3);
        assert_eq!(subgraph_count(&Graph::path(3), &Graph::complete(3)), 0);
    }

    #[test]
    fn kelly() {
        let r = kelly_check(&Graph::complete(3).classical_deck(), &Graph::complete(2), 3).unwrap();
        assert_eq!(r, KellyResult { value: int(3), pass: true });
        let mut deck = Graph::path(4).classical_deck();
        let r = kelly_check(&deck, &Graph::complete(2), 4).unwrap();
        assert_eq!(r.value, int(3));
        // tamper: add an edge to the card obtained by deleting vertex 1 (K1 ∪ K2)
        deck[1].toggle_edge(0, 1);
        let r = kelly_check(&deck, &Graph::complete(2), 4).unwrap();
        assert_eq!(r.value, crate::rational::frac(7, 2));
        assert!(!r.pass);
        assert!(kelly_check(&deck[..3], &Graph::complete(2), 4).is_err());
    }

    #[test]
    fn canonical_forms_and_enumeration() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let connected = nonisomorphic_graphs(5).iter().filter(|g| g.is_connected()).count();
        assert_eq!(connected, 21);
        let g = Graph::ring(6);
        let h = g.permuted(&[3, 5, 0, 1, 4, 2]);
        assert_eq!(g.canonical_form(), h.canonical_form());
        assert!(!g.is_isomorphic(&Graph::path(6)));
    }

    #[test]
    fn text_format() {
        let text = "n=5\n0 1\n1 2 # comment\nh: 0 2 4\nz: 3\n";
        let h = Hypergraph::parse(text).unwrap();
        assert_eq!(h.n(), 5);
        assert!(h.has_hyperedges());
        assert_eq!(h.z_marks(), 0b1000);
        assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
        assert!(matches!(Hypergraph::parse("0 1\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(Hypergraph::parse("n=3\n0 1\n1 0\n").is_err());
        assert!(Hypergraph::parse("n=3\n0 3\n").is_err());
        assert!(Hypergraph::parse("n=3\n1 1\n").is_err());
    }
}
