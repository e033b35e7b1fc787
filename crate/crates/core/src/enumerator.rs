//! Weight-distribution calculus.
//!
//! Everything here is exact rational arithmetic. A [`WeightDistribution`] may be
//! partial (only `A_0..A_m` known), which is what a complete `m`-deck yields.
//! Distributions computed from floating-point density matrices that could not be
//! snapped to exact values carry `exact == false`; consumers then compare with a
//! tolerance instead of exact equality.

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{binomial, binomial_q, int, pow2, render, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("A_0 must equal 1, got {0}")]
    BadNormalization(String),
    #[error("negative weight A_{index} = {value}")]
    Negative { index: usize, value: String },
    #[error("{len} weights given for n = {n}")]
    BadLength { n: usize, len: usize },
    #[error("distribution known only up to A_{known}, A_{needed} required")]
    Incomplete { known: usize, needed: usize },
    #[error("m = {m} out of range 0..={n}")]
    OutOfRange { m: usize, n: usize },
    #[error("local dimension must be at least 2")]
    BadLocalDim,
}

/// Absolute slack used when a distribution is flagged inexact.
pub const APPROX_TOL: f64 = 1e-9;

/// `(A_0, .., A_k)` of an `n`-party state; complete when `k == n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    n: usize,
    #[serde(with = "crate::rational::serde_vec")]
    values: Vec<Rational>,
    #[serde(default = "default_dim")]
    local_dim: u32,
    #[serde(default = "default_exact")]
    exact: bool,
}

fn default_dim() -> u32 {
    2
}
fn default_exact() -> bool {
    true
}

impl WeightDistribution {
    /// Validates `A_0 = 1` and `A_j >= 0`; fewer than `n + 1` values give a partial distribution.
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self, WeightError> {
        Self::build(n, values, 2, true)
    }

    /// Weights derived from floating point data; validated with [`APPROX_TOL`].
    pub fn approximate(n: usize, values: Vec<Rational>) -> Result<Self, WeightError> {
        Self::build(n, values, 2, false)
    }

    pub fn from_counts(n: usize, counts: &[u64]) -> Result<Self, WeightError> {
        Self::new(n, counts.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_ints(n: usize, counts: &[i64]) -> Result<Self, WeightError> {
        Self::new(n, counts.iter().map(|&c| int(c)).collect())
    }

    fn build(n: usize, values: Vec<Rational>, local_dim: u32, exact: bool) -> Result<Self, WeightError> {
        if values.is_empty() || values.len() > n + 1 {
            return Err(WeightError::BadLength { n, len: values.len() });
        }
        if local_dim < 2 {
            return Err(WeightError::BadLocalDim);
        }
        let tol = if exact { Rational::zero() } else { crate::rational::from_f64(APPROX_TOL).unwrap() };
        if (&values[0] - int(1)).abs() > tol {
            return Err(WeightError::BadNormalization(render(&values[0])));
        }
        for (index, v) in values.iter().enumerate() {
            if v < &-tol.clone() {
                return Err(WeightError::Negative { index, value: render(v) });
            }
        }
        Ok(WeightDistribution { n, values, local_dim, exact })
    }

    pub fn with_local_dim(mut self, d: u32) -> Result<Self, WeightError> {
        if d < 2 {
            return Err(WeightError::BadLocalDim);
        }
        self.local_dim = d;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn values(&self) -> &[Rational] {
        &self.values
    }
    pub fn local_dim(&self) -> u32 {
        self.local_dim
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn is_complete(&self) -> bool {
        self.values.len() == self.n + 1
    }
    /// Largest known index.
    pub fn known_up_to(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, j: usize) -> Option<&Rational> {
        self.values.get(j)
    }

    fn require(&self, needed: usize) -> Result<(), WeightError> {
        if needed > self.known_up_to() {
            Err(WeightError::Incomplete { known: self.known_up_to(), needed })
        } else {
            Ok(())
        }
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Extends a partial distribution with a tail `A_{m+1}, ..`.
    pub fn extended(&self, tail: &[Rational]) -> Result<Self, WeightError> {
        let mut values = self.values.clone();
        values.extend_from_slice(tail);
        Self::build(self.n, values, self.local_dim, self.exact)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(render).collect()
    }
}

/// `A_j^m = C(n-j, n-m) A_j` for `j = 0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedWeightDistribution {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::rational::serde_vec")]
    pub values: Vec<Rational>,
    #[serde(default = "default_exact")]
    pub exact: bool,
}

impl ReducedWeightDistribution {
    pub fn new(n: usize, m: usize, values: Vec<Rational>, exact: bool) -> Result<Self, WeightError> {
        if m > n {
            return Err(WeightError::OutOfRange { m, n });
        }
        if values.len() != m + 1 {
            return Err(WeightError::BadLength { n: m, len: values.len() });
        }
        Ok(ReducedWeightDistribution { n, m, values, exact })
    }

    /// Recovers `A_0..A_m` via `A_j = A_j^m / C(n-j, n-m)`.
    pub fn infer_low_weights(&self) -> Result<WeightDistribution, WeightError> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, a)| a / binomial_q((self.n - j) as i64, (self.n - self.m) as i64))
            .collect();
        if self.exact {
            WeightDistribution::new(self.n, values)
        } else {
            WeightDistribution::approximate(self.n, values)
        }
    }
}

pub fn reduce_weights(a: &WeightDistribution, m: usize) -> Result<ReducedWeightDistribution, WeightError> {
    let n = a.n;
    if m > n {
        return Err(WeightError::OutOfRange { m, n });
    }
    a.require(m)?;
    let values = (0..=m)
        .map(|j| binomial_q((n - j) as i64, (n - m) as i64) * &a.values[j])
        .collect();
    Ok(ReducedWeightDistribution { n, m, values, exact: a.exact })
}

/// Krawtchouk polynomial `K_j(k, n) = Σ_α (-1)^α 3^(j-α) C(n-k, j-α) C(k, α)`.
pub fn krawtchouk(j: usize, k: usize, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for alpha in 0..=j {
        let term = BigInt::from(3).pow((j - alpha) as u32)
            * binomial(n as i64 - k as i64, (j - alpha) as i64)
            * binomial(k as i64, alpha as i64);
        if alpha % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn shadow_of(values: &[Rational], len: usize) -> Vec<Rational> {
    let n = len - 1;
    (0..=n)
        .map(|j| {
            values.iter().enumerate().fold(Rational::zero(), |acc, (k, a)| {
                let kr = Rational::from_integer(krawtchouk(j, k, n)) * a;
                if k % 2 == 0 {
                    acc + kr
                } else {
                    acc - kr
                }
            })
        })
        .collect()
}

/// `S_j = Σ_k (-1)^k K_j(k, n) A_k` for `j = 0..n`.
pub fn shadow_coefficients(a: &WeightDistribution) -> Result<Vec<Rational>, WeightError> {
    a.require(a.n)?;
    Ok(shadow_of(&a.values, a.n + 1))
}

/// `S_j^m = Σ_k (-1)^k K_j(k, m) A_k^m` for `j = 0..m`.
pub fn shadow_reduced(am: &ReducedWeightDistribution) -> Vec<Rational> {
    shadow_of(&am.values, am.m + 1)
}

/// One cut relation as a linear form `Σ_j coeffs[j] A_j = 0` over `A_0..A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutRelation {
    pub n: usize,
    pub m: usize,
    pub coeffs: Vec<Rational>,
}

impl CutRelation {
    /// `2^-m Σ_{j<=m} C(n-j, n-m) A_j - 2^-(n-m) Σ_{j<=n-m} C(n-j, m) A_j`.
    pub fn new(n: usize, m: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (j, c) in coeffs.iter_mut().enumerate().take(m + 1) {
            *c += binomial_q((n - j) as i64, (n - m) as i64) * pow2(-(m as i64));
        }
        for (j, c) in coeffs.iter_mut().enumerate().take(n - m + 1) {
            *c -= binomial_q((n - j) as i64, m as i64) * pow2(-((n - m) as i64));
        }
        CutRelation { n, m, coeffs }
    }

    /// Highest index with a nonzero coefficient (`None` for the trivial relation).
    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        self.max_index().is_none()
    }

    pub fn residual(&self, values: &[Rational]) -> Rational {
        self.coeffs.iter().zip(values).map(|(c, a)| c * a).sum()
    }

    /// Integer form `Σ_{j>=1} c_j A_j = rhs` with coprime coefficients and a
    /// positive leading coefficient.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        use num::Integer;
        let lcm = self.coeffs.iter().fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c /= &g;
            }
        }
        if let Some(top) = ints.iter().rposition(|c| !c.is_zero()) {
            if ints[top].is_negative() {
                for c in ints.iter_mut() {
                    *c = -c.clone();
                }
            }
        }
        let rhs = -ints[0].clone();
        ints[0] = BigInt::zero();
        (ints, rhs)
    }

    /// Human-readable form, e.g. `-2 A1 + A2 + A3 = 10`.
    pub fn render(&self) -> String {
        let (c, rhs) = self.integer_form();
        let mut s = String::new();
        for (j, cj) in c.iter().enumerate().skip(1) {
            if cj.is_zero() {
                continue;
            }
            let mag = cj.abs();
            let sign = match (s.is_empty(), cj.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if mag == BigInt::from(1) { String::new() } else { format!("{mag} ") };
            s.push_str(&format!("{sign}{coef}A{j}"));
        }
        if s.is_empty() {
            s.push('0');
        }
        format!("{s} = {rhs}")
    }
}

/// The cut relations for `m = 1..=floor(n/2)`; the `m = n/2` one is identically zero.
pub fn cut_relations(n: usize) -> Vec<CutRelation> {
    (1..=n / 2).map(|m| CutRelation::new(n, m)).collect()
}

/// Residuals of every cut relation on a complete distribution.
pub fn cut_relation_residuals(a: &WeightDistribution) -> Result<Vec<Rational>, WeightError> {
    a.require(a.n)?;
    Ok(cut_relations(a.n).iter().map(|r| r.residual(&a.values)).collect())
}

/// `Σ_{|S|=k} tr ρ_S² = D^-k Σ_{j<=k} C(n-j, n-k) A_j`, with the flag set when the
/// value is below `C(n, k)` (entanglement across some `k | n-k` cut for pure states).
pub fn average_marginal_purity(a: &WeightDistribution, k: usize) -> Result<(Rational, bool), WeightError> {
    let n = a.n;
    if k > n {
        return Err(WeightError::OutOfRange { m: k, n });
    }
    a.require(k)?;
    let d = Rational::from_integer(BigInt::from(a.local_dim)).pow(-(k as i32));
    let sum: Rational = (0..=k)
        .map(|j| binomial_q((n - j) as i64, (n - k) as i64) * &a.values[j])
        .sum();
    let value = d * sum;
    let entangled = value < binomial_q(n as i64, k as i64);
    Ok((value, entangled))
}

/// Pure product state on `n` parties of local dimension `d`: `A_j = (d-1)^j C(n, j)`.
pub fn product_distribution(n: usize, d: u32) -> Result<WeightDistribution, WeightError> {
    if d < 2 {
        return Err(WeightError::BadLocalDim);
    }
    let values = (0..=n)
        .map(|j| Rational::from_integer(BigInt::from(d - 1).pow(j as u32) * binomial(n as i64, j as i64)))
        .collect();
    WeightDistribution::new(n, values)?.with_local_dim(d)
}

/// `Σ_j A_{2j}` over the known entries.
pub fn even_weight_sum(a: &WeightDistribution) -> Rational {
    a.values.iter().step_by(2).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn wd(n: usize, v: &[i64]) -> WeightDistribution {
        WeightDistribution::from_ints(n, v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn validation() {
        assert!(WeightDistribution::from_ints(3, &[2, 0]).is_err());
        assert!(WeightDistribution::from_ints(3, &[1, -1]).is_err());
        assert!(WeightDistribution::from_ints(1, &[1, 0, 0]).is_err());
        let p = wd(5, &[1, 0, 0]);
        assert!(!p.is_complete());
        assert_eq!(p.known_up_to(), 2);
    }

    #[test]
    fn reductions() {
        let k3 = wd(3, &[1, 0, 3, 4]);
        assert_eq!(reduce_weights(&k3, 3).unwrap().values, k3.values);
        assert_eq!(reduce_weights(&k3, 2).unwrap().values, ints(&[3, 0, 3]));
        assert!(reduce_weights(&k3, 4).is_err());
        let r = reduce_weights(&k3, 2).unwrap();
        assert_eq!(r.infer_low_weights().unwrap().values(), &ints(&[1, 0, 3])[..]);
    }

    #[test]
    fn krawtchouk_values() {
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(krawtchouk(0, k, n), BigInt::from(1));
                assert_eq!(krawtchouk(1, k, n), BigInt::from(3 * (n as i64 - k as i64) - k as i64));
            }
            for j in 0..=n {
                assert_eq!(krawtchouk(j, 0, n), BigInt::from(3).pow(j as u32) * binomial(n as i64, j as i64));
            }
        }
    }

    #[test]
    fn shadows() {
        assert_eq!(shadow_coefficients(&wd(2, &[1, 2, 1])).unwrap()[0], int(0));
        assert_eq!(shadow_coefficients(&wd(3, &[1, 0, 3, 4])).unwrap()[0], int(0));
        let ame = shadow_coefficients(&wd(7, &[1, 0, 0, 0, 35, 42, 28, 22])).unwrap();
        assert!(ame.iter().all(|s| !s.is_negative()));
        let k3 = reduce_weights(&wd(3, &[1, 0, 3, 4]), 2).unwrap();
        assert_eq!(shadow_reduced(&k3)[0], int(6));
        // product state reductions: S_0^m = 0
        for n in 2..7 {
            let p = product_distribution(n, 2).unwrap();
            for m in 1..=n {
                assert_eq!(shadow_reduced(&reduce_weights(&p, m).unwrap())[0], int(0));
            }
        }
    }

    #[test]
    fn cut_relation_forms() {
        let rels = cut_relations(5);
        assert_eq!(rels[1].render(), "-2 A1 + A2 + A3 = 10");
        assert_eq!(rels[0].render(), "-4 A1 + 3 A2 + 2 A3 + A4 = 35");
        let r3 = CutRelation::new(3, 1);
        assert_eq!(r3.render(), "A2 = 3");
        let r10 = CutRelation::new(10, 4);
        assert_eq!(r10.render(), "-210 A1 - 42 A2 + 7 A3 + 11 A4 + 5 A5 + A6 = 630");
        assert!(CutRelation::new(6, 3).is_trivial());
        assert_eq!(r10.max_index(), Some(6));
    }

    #[test]
    fn residuals_vanish_on_known_states() {
        for a in [wd(3, &[1, 0, 3, 4]), wd(5, &[1, 0, 0, 10, 15, 6]), wd(7, &[1, 0, 0, 0, 35, 42, 28, 22])] {
            assert!(cut_relation_residuals(&a).unwrap().iter().all(Zero::is_zero));
        }
        assert!(cut_relation_residuals(&wd(5, &[1, 0])).is_err());
    }

    #[test]
    fn purities() {
        let p = product_distribution(4, 2).unwrap();
        for k in 0..=4 {
            let (v, ent) = average_marginal_purity(&p, k).unwrap();
            assert_eq!(v, binomial_q(4, k as i64));
            assert!(!ent);
        }
        let (v, ent) = average_marginal_purity(&wd(3, &[1, 0, 3, 4]), 1).unwrap();
        assert_eq!((v, ent), (frac(3, 2), true));
        let (v, _) = average_marginal_purity(&wd(5, &[1, 0, 0, 10, 15, 6]), 1).unwrap();
        assert_eq!(v, frac(5, 2));
    }

    #[test]
    fn products_and_even_sums() {
        assert_eq!(product_distribution(3, 2).unwrap().values(), &ints(&[1, 3, 3, 1])[..]);
        assert_eq!(product_distribution(1, 2).unwrap().values(), &ints(&[1, 1])[..]);
        assert_eq!(product_distribution(2, 3).unwrap().values(), &ints(&[1, 4, 4])[..]);
        assert!(product_distribution(2, 1).is_err());
        assert_eq!(even_weight_sum(&wd(8, &[1, 0, 0, 0, 30, 48, 96, 48, 33])), int(160));
        assert_eq!(even_weight_sum(&wd(3, &[1, 0, 3, 4])), int(4));
        assert_eq!(even_weight_sum(&wd(2, &[1, 2, 1])), int(2));
    }
}
