//! Brute-force density-matrix oracle for small `n`.
//!
//! Basis index convention matches [`PauliOperator::apply_to_basis`]: qubit `q`
//! is bit `q` of the computational index.

use nalgebra::{DMatrix, DVector};
pub use num::complex::Complex64 as C64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{compress, expand, full_mask, iter_bits, VertexSet};
use crate::enumerator::WeightDistribution;
use crate::graph::Hypergraph;
use crate::pauli::PauliOperator;
use crate::rational::{from_f64, snap_dyadic, Rational};

/// Absolute tolerance for every float comparison in the oracle.
pub const TOL: f64 = 1e-9;
/// Largest state built by the oracle.
pub const STATE_CAP: usize = 10;
/// Largest state for the `4^n` weight loop and the state inversion.
pub const WEIGHT_CAP: usize = 8;
/// Largest state for the subset-sum operator check.
pub const SHADOW_CAP: usize = 6;
/// PSD validation of mixed inputs is skipped above this dimension.
const PSD_CHECK_DIM: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DenseError {
    #[error("{n} qubits exceed the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension {0} is not a power of two")]
    BadDimension(usize),
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("state vector not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("card not Hermitian")]
    NotHermitian,
    #[error("trace {0} differs from 1")]
    BadTrace(f64),
    #[error("not positive semidefinite (min eigenvalue {0})")]
    NotPsd(f64),
    #[error("subset {0:#b} outside the qubit range")]
    BadSubset(VertexSet),
    #[error("state inversion formulas disagree by {0}")]
    InversionMismatch(f64),
    #[error("operation requires at least {need} qubits, got {n}")]
    TooSmall { n: usize, need: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Pure(DVector<C64>),
    Mixed(DMatrix<C64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    kind: StateKind,
}

fn qubits_for_dim(dim: usize) -> Result<usize, DenseError> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(DenseError::BadDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// `i^k` as a complex number.
#[inline]
pub fn i_pow(k: u8) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// In-place Walsh-Hadamard transform (unnormalized).
fn fwht(v: &mut [C64]) {
    let mut h = 1;
    while h < v.len() {
        for block in (0..v.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

pub fn min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

impl DenseState {
    pub fn pure(amplitudes: DVector<C64>) -> Result<Self, DenseError> {
        let n = qubits_for_dim(amplitudes.len())?;
        if n > STATE_CAP {
            return Err(DenseError::CapExceeded { n, cap: STATE_CAP });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > TOL {
            return Err(DenseError::NotNormalized(norm));
        }
        Ok(DenseState { n, kind: StateKind::Pure(amplitudes) })
    }

    /// Validates Hermiticity, unit trace and (for dimension `<= 256`) PSD.
    pub fn mixed(rho: DMatrix<C64>) -> Result<Self, DenseError> {
        if rho.nrows() != rho.ncols() {
            return Err(DenseError::BadDimension(rho.nrows().max(rho.ncols())));
        }
        let n = qubits_for_dim(rho.nrows())?;
        if n > STATE_CAP {
            return Err(DenseError::CapExceeded { n, cap: STATE_CAP });
        }
        if max_abs_diff(&rho, &rho.adjoint()) > TOL {
            return Err(DenseError::NotHermitian);
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(DenseError::BadTrace(tr.re));
        }
        if rho.nrows() <= PSD_CHECK_DIM {
            let e = min_eigenvalue(&rho);
            if e < -TOL {
                return Err(DenseError::NotPsd(e));
            }
        }
        Ok(DenseState { n, kind: StateKind::Mixed(rho) })
    }

    /// Skips validation; for operators that are states by construction.
    fn mixed_unchecked(rho: DMatrix<C64>) -> Self {
        let n = rho.nrows().trailing_zeros() as usize;
        DenseState { n, kind: StateKind::Mixed(rho) }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let d = 1usize << n;
        Self::mixed_unchecked(DMatrix::identity(d, d) / C64::new(d as f64, 0.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    pub fn is_pure_vector(&self) -> bool {
        matches!(self.kind, StateKind::Pure(_))
    }

    pub fn amplitudes(&self) -> Option<&DVector<C64>> {
        match &self.kind {
            StateKind::Pure(v) => Some(v),
            StateKind::Mixed(_) => None,
        }
    }

    pub fn density_matrix(&self) -> DMatrix<C64> {
        match &self.kind {
            StateKind::Pure(v) => v * v.adjoint(),
            StateKind::Mixed(m) => m.clone(),
        }
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.kind {
            StateKind::Pure(_) => 1.0,
            StateKind::Mixed(m) => m.iter().map(|x| x.norm_sqr()).sum(),
        }
    }

    /// `<self|other>` for pure vectors.
    pub fn inner(&self, other: &DenseState) -> Option<C64> {
        match (&self.kind, &other.kind) {
            (StateKind::Pure(a), StateKind::Pure(b)) if a.len() == b.len() => Some(a.dotc(b)),
            _ => None,
        }
    }

    /// Entrywise density-matrix comparison.
    pub fn approx_eq(&self, other: &DenseState, tol: f64) -> bool {
        self.n == other.n && max_abs_diff(&self.density_matrix(), &other.density_matrix()) <= tol
    }

    /// Convex combination of states on the same qubit count.
    pub fn mixture(terms: &[(f64, DenseState)]) -> Result<DenseState, DenseError> {
        let first = terms.first().ok_or(DenseError::BadDimension(0))?;
        let d = first.1.dim();
        let mut rho = DMatrix::<C64>::zeros(d, d);
        for (w, s) in terms {
            if s.n != first.1.n {
                return Err(DenseError::DimensionMismatch(first.1.n, s.n));
            }
            rho += s.density_matrix() * C64::new(*w, 0.0);
        }
        DenseState::mixed(rho)
    }
}

/// Applies every (hyper)edge gate and every Z-mark to `|+>^⊗n`.
/// Amplitudes are `±2^(-n/2)` with the sign `(-1)^(#edges inside j + |z ∩ j|)`.
pub fn build_state(h: &Hypergraph) -> Result<DenseState, DenseError> {
    let n = h.n();
    if n > STATE_CAP {
        return Err(DenseError::CapExceeded { n, cap: STATE_CAP });
    }
    if n == 0 {
        return Err(DenseError::TooSmall { n, need: 1 });
    }
    let edges: Vec<VertexSet> = h.edges().collect();
    let amp = (0.5f64).powf(n as f64 / 2.0);
    let v = DVector::from_iterator(
        1 << n,
        (0..1u32 << n).map(|j| {
            let flips = edges.iter().filter(|&&e| e & j == e).count() + (h.z_marks() & j).count_ones() as usize;
            C64::new(if flips.is_multiple_of(2) { amp } else { -amp }, 0.0)
        }),
    );
    Ok(DenseState { n, kind: StateKind::Pure(v) })
}

/// Reduced state on `subset`, qubits relabelled in increasing order.
pub fn partial_trace(state: &DenseState, subset: VertexSet) -> Result<DenseState, DenseError> {
    let n = state.n;
    if subset & !full_mask(n) != 0 {
        return Err(DenseError::BadSubset(subset));
    }
    if subset == full_mask(n) {
        return Ok(state.clone());
    }
    let k = subset.count_ones() as usize;
    let rest = (full_mask(n) & !subset) as u64;
    let s = subset as u64;
    let (dk, dr) = (1usize << k, 1usize << (n - k));
    let mut out = DMatrix::<C64>::zeros(dk, dk);
    match &state.kind {
        StateKind::Pure(psi) => {
            for c in 0..dr as u64 {
                let ec = expand(c, rest);
                let col: Vec<C64> = (0..dk as u64).map(|a| psi[(expand(a, s) | ec) as usize]).collect();
                for a in 0..dk {
                    for b in 0..dk {
                        out[(a, b)] += col[a] * col[b].conj();
                    }
                }
            }
        }
        StateKind::Mixed(rho) => {
            for a in 0..dk as u64 {
                let ea = expand(a, s);
                for b in 0..dk as u64 {
                    let eb = expand(b, s);
                    let mut acc = C64::zero();
                    for c in 0..dr as u64 {
                        let ec = expand(c, rest);
                        acc += rho[((ea | ec) as usize, (eb | ec) as usize)];
                    }
                    out[(a as usize, b as usize)] = acc;
                }
            }
        }
    }
    Ok(DenseState::mixed_unchecked(out))
}

/// `ρ_S ⊗ 1_{S^c}` as a full `2^n` operator (the identity is unnormalized).
fn embed_marginal(rho_s: &DMatrix<C64>, subset: VertexSet, n: usize) -> DMatrix<C64> {
    let d = 1usize << n;
    let rest = full_mask(n) & !subset;
    let mut out = DMatrix::<C64>::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            if (a as u32 ^ b as u32) & rest == 0 {
                out[(a, b)] = rho_s[(compress(a as u64, subset as u64) as usize, compress(b as u64, subset as u64) as usize)];
            }
        }
    }
    out
}

/// Matrix of a Pauli operator in the computational basis.
pub fn pauli_matrix(p: &PauliOperator) -> DMatrix<C64> {
    let d = 1usize << p.n();
    let mut m = DMatrix::<C64>::zeros(d, d);
    for j in 0..d as u64 {
        let (row, k) = p.apply_to_basis(j);
        m[(row as usize, j as usize)] = i_pow(k);
    }
    m
}

/// `tr(Pρ)`; real for Hermitian `P`.
pub fn pauli_expectation(state: &DenseState, p: &PauliOperator) -> Result<C64, DenseError> {
    if p.n() != state.n {
        return Err(DenseError::DimensionMismatch(state.n, p.n()));
    }
    let x = p.x_mask() as usize;
    let mut acc = C64::zero();
    for l in 0..state.dim() {
        let (_, k) = p.apply_to_basis(l as u64);
        let entry = match &state.kind {
            StateKind::Pure(psi) => psi[l] * psi[l ^ x].conj(),
            StateKind::Mixed(rho) => rho[(l, l ^ x)],
        };
        acc += i_pow(k) * entry;
    }
    Ok(acc)
}

/// Calls `f(x, W)` where `W[z] = i^(-|x∧z|) tr(P_{x,z} ρ)`, for every X-part `x`.
fn for_each_x_spectrum(rho: &DMatrix<C64>, mut f: impl FnMut(usize, &[C64])) {
    let d = rho.nrows();
    let mut buf = vec![C64::zero(); d];
    for x in 0..d {
        for (l, b) in buf.iter_mut().enumerate() {
            *b = rho[(l, l ^ x)];
        }
        fwht(&mut buf);
        f(x, &buf);
    }
}

/// Float weights `A_j = Σ_{wt(P)=j} tr(Pρ)²` via one Walsh-Hadamard transform per X-part.
pub fn weight_values(state: &DenseState) -> Vec<f64> {
    let n = state.n;
    let rho = state.density_matrix();
    let mut a = vec![0.0; n + 1];
    for_each_x_spectrum(&rho, |x, w| {
        for (z, wz) in w.iter().enumerate() {
            a[(x | z).count_ones() as usize] += wz.norm_sqr();
        }
    });
    a
}

/// Snaps float weights to rationals with denominator `2^bits`; falls back to an approximate distribution.
pub fn snap_weights(n: usize, values: &[f64], bits: u32) -> WeightDistribution {
    let snapped: Option<Vec<Rational>> = values.iter().map(|&v| snap_dyadic(v, bits, TOL)).collect();
    match snapped {
        Some(exact) => WeightDistribution::new(n, exact.clone())
            .or_else(|_| WeightDistribution::approximate(n, exact))
            .expect("length n + 1"),
        None => {
            let approx = values.iter().map(|&v| from_f64(v).unwrap_or_default()).collect();
            WeightDistribution::approximate(n, approx).expect("length n + 1")
        }
    }
}

/// Weight distribution by brute force, exact after snapping to `k / 4^n`.
pub fn weight_distribution_dense(state: &DenseState) -> Result<WeightDistribution, DenseError> {
    if state.n > WEIGHT_CAP {
        return Err(DenseError::CapExceeded { n: state.n, cap: WEIGHT_CAP });
    }
    Ok(snap_weights(state.n, &weight_values(state), 2 * state.n as u32))
}

/// Sign flip of every odd-weight Bloch component.
fn inversion_bloch(rho: &DMatrix<C64>) -> DMatrix<C64> {
    let d = rho.nrows();
    let mut out = DMatrix::<C64>::zeros(d, d);
    let scale = 1.0 / d as f64;
    for_each_x_spectrum(rho, |x, w| {
        let mut buf: Vec<C64> = w
            .iter()
            .enumerate()
            .map(|(z, wz)| {
                let flips = (x | z).count_ones() + (x & z).count_ones();
                if flips % 2 == 0 { *wz } else { -*wz }
            })
            .collect();
        fwht(&mut buf);
        for (l, v) in buf.iter().enumerate() {
            out[(l ^ x, l)] = v * scale;
        }
    });
    out
}

/// `Y^⊗n ρ^T Y^⊗n`, entrywise `(-1)^(|a|+|b|) ρ[~b, ~a]`.
fn inversion_spin_flip(rho: &DMatrix<C64>) -> DMatrix<C64> {
    let d = rho.nrows();
    let mask = d - 1;
    DMatrix::from_fn(d, d, |a, b| {
        let v = rho[(b ^ mask, a ^ mask)];
        if (a.count_ones() + b.count_ones()) % 2 == 0 { v } else { -v }
    })
}

/// `Σ_S (-1)^|S ∩ T| ρ_S ⊗ 1_{S^c}` over all subsets `S`.
fn subset_sum_operator(state: &DenseState, t: VertexSet) -> DMatrix<C64> {
    let n = state.n;
    let d = state.dim();
    let mut out = DMatrix::<C64>::zeros(d, d);
    for s in 0..=full_mask(n) {
        let rho_s = partial_trace(state, s).expect("subset in range").density_matrix();
        let term = embed_marginal(&rho_s, s, n);
        if (s & t).count_ones().is_multiple_of(2) {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

/// Universal state inversion, computed by the Bloch-sign formula and checked
/// against the spin-flip and subset-sum forms.
pub fn state_inversion(state: &DenseState) -> Result<DenseState, DenseError> {
    let n = state.n;
    if n > WEIGHT_CAP {
        return Err(DenseError::CapExceeded { n, cap: WEIGHT_CAP });
    }
    let rho = state.density_matrix();
    let bloch = inversion_bloch(&rho);
    let flip = inversion_spin_flip(&rho);
    let sum = subset_sum_operator(state, full_mask(n));
    let err = max_abs_diff(&bloch, &flip).max(max_abs_diff(&bloch, &sum));
    if err > TOL {
        return Err(DenseError::InversionMismatch(err));
    }
    Ok(DenseState::mixed_unchecked(bloch))
}

/// Minimum eigenvalue of `Σ_S (-1)^|S ∩ T| ρ_S ⊗ 1_{S^c}`.
pub fn shadow_operator_check(state: &DenseState, t: VertexSet) -> Result<f64, DenseError> {
    let n = state.n;
    if n > SHADOW_CAP {
        return Err(DenseError::CapExceeded { n, cap: SHADOW_CAP });
    }
    if t & !full_mask(n) != 0 {
        return Err(DenseError::BadSubset(t));
    }
    Ok(min_eigenvalue(&subset_sum_operator(state, t)))
}

/// `tr(ρ_S²)` for the reduction on `subset`.
pub fn marginal_purity(state: &DenseState, subset: VertexSet) -> Result<f64, DenseError> {
    Ok(partial_trace(state, subset)?.purity())
}

/// `S_L(ρ_S) = 2 (1 - tr ρ_S²)`.
pub fn linear_entropy(state: &DenseState, subset: VertexSet) -> Result<f64, DenseError> {
    Ok(2.0 * (1.0 - marginal_purity(state, subset)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearEntropyReport {
    /// `(n-1) Σ_i S_L(ρ_i) - Σ_{i<j} S_L(ρ_ij)`.
    pub cor1: f64,
    /// `Σ_i S_L(ρ_i) + Σ_{i<j} S_L(ρ_ij) - Σ_{i<j<k} S_L(ρ_ijk)`; `None` below three qubits.
    pub cor2: Option<f64>,
    /// The three-body inequality summed over every triple and every choice of
    /// the excluded qubit: `C(n-1,2) Σ_i S_L(ρ_i) + (n-2) Σ_{i<j} S_L(ρ_ij) - 3 Σ_{i<j<k} S_L(ρ_ijk)`.
    pub cor2_symmetrized: Option<f64>,
}

pub fn linear_entropy_report(state: &DenseState) -> Result<LinearEntropyReport, DenseError> {
    let n = state.n;
    if n < 2 {
        return Err(DenseError::TooSmall { n, need: 2 });
    }
    let sums: Vec<f64> = (1..=3.min(n))
        .map(|k| {
            crate::bits::k_subsets(n, k)
                .into_iter()
                .map(|s| linear_entropy(state, s).expect("subset in range"))
                .sum()
        })
        .collect();
    let nf = n as f64;
    let cor1 = (nf - 1.0) * sums[0] - sums[1];
    let (cor2, cor2_symmetrized) = if n >= 3 {
        (
            Some(sums[0] + sums[1] - sums[2]),
            Some((nf - 1.0) * (nf - 2.0) / 2.0 * sums[0] + (nf - 2.0) * sums[1] - 3.0 * sums[2]),
        )
    } else {
        (None, None)
    };
    Ok(LinearEntropyReport { cor1, cor2, cor2_symmetrized })
}

/// `(|0…0> + e^{iθ}|1…1>) / √2`.
pub fn ghz_theta(n: usize, theta: f64) -> Result<DenseState, DenseError> {
    if n < 2 {
        return Err(DenseError::TooSmall { n, need: 2 });
    }
    if n > STATE_CAP {
        return Err(DenseError::CapExceeded { n, cap: STATE_CAP });
    }
    let d = 1usize << n;
    let mut v = DVector::<C64>::zeros(d);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    v[0] = C64::new(r, 0.0);
    v[d - 1] = C64::from_polar(r, theta);
    DenseState::pure(v)
}

/// Seeded random state `Σ_i w_i U_i|e_i><e_i|U_i†` of the given rank, built as
/// `G G† / tr(G G†)` from a complex Gaussian `2^n × rank` matrix.
pub fn random_mixed_state(n: usize, rank: usize, seed: u64) -> Result<DenseState, DenseError> {
    if n > STATE_CAP {
        return Err(DenseError::CapExceeded { n, cap: STATE_CAP });
    }
    let d = 1usize << n;
    let rank = rank.clamp(1, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<C64>::from_fn(d, rank, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut rho = &g * g.adjoint();
    let tr = rho.trace();
    rho /= tr;
    // restore exact Hermiticity after rounding
    let rho = (&rho + rho.adjoint()) * C64::new(0.5, 0.0);
    Ok(DenseState::mixed_unchecked(rho))
}

/// Positions of `subset` bits, for labelling marginals in reports.
pub fn subset_label(subset: VertexSet) -> Vec<usize> {
    iter_bits(subset).collect()
}
