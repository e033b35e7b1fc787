//! Exact rational feasibility LP.
//!
//! Decides whether `x >= 0` with rows `a·x >= b` / `a·x = b` has a solution,
//! by phase-1 simplex on a dense tableau with Bland's rule. The outcome is
//! either a witness `x` or a Farkas certificate `λ` (`λ_i >= 0` on `>=` rows,
//! free on equalities) with `Σ λ_i a_i <= 0` componentwise and `Σ λ_i b_i > 0`.
//! Both are checked exactly by [`LpOutcome::verify`].

use num::{Signed, Zero};
use serde::Serialize;

use crate::rational::{int, serde_one, serde_vec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowKind {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub label: String,
    #[serde(with = "serde_vec")]
    pub coeffs: Vec<Rational>,
    pub kind: RowKind,
    #[serde(with = "serde_one")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpProblem {
    pub num_vars: usize,
    pub rows: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpOutcome {
    Feasible {
        #[serde(with = "serde_vec")]
        witness: Vec<Rational>,
    },
    Infeasible {
        #[serde(with = "serde_vec")]
        certificate: Vec<Rational>,
    },
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem { num_vars, rows: Vec::new() }
    }

    pub fn push(&mut self, label: impl Into<String>, coeffs: Vec<Rational>, kind: RowKind, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "row length");
        self.rows.push(Constraint { label: label.into(), coeffs, kind, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::phase_one(self).run()
    }
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }

    /// Exact check of the witness against every row, or of the certificate's
    /// sign pattern, combination and contradiction.
    pub fn verify(&self, lp: &LpProblem) -> bool {
        match self {
            LpOutcome::Feasible { witness } => {
                witness.len() == lp.num_vars
                    && witness.iter().all(|x| !x.is_negative())
                    && lp.rows.iter().all(|r| {
                        let lhs: Rational = r.coeffs.iter().zip(witness).map(|(a, x)| a * x).sum();
                        match r.kind {
                            RowKind::Ge => lhs >= r.rhs,
                            RowKind::Eq => lhs == r.rhs,
                        }
                    })
            }
            LpOutcome::Infeasible { certificate } => {
                if certificate.len() != lp.rows.len() {
                    return false;
                }
                let signs_ok = lp.rows.iter().zip(certificate).all(|(r, l)| r.kind == RowKind::Eq || !l.is_negative());
                let combo_ok = (0..lp.num_vars).all(|j| {
                    let s: Rational = lp.rows.iter().zip(certificate).map(|(r, l)| l * &r.coeffs[j]).sum();
                    !s.is_positive()
                });
                let rhs: Rational = lp.rows.iter().zip(certificate).map(|(r, l)| l * &r.rhs).sum();
                signs_ok && combo_ok && rhs.is_positive()
            }
        }
    }
}

/// Columns: original variables, one surplus per `>=` row, one artificial per row.
struct Tableau {
    m: usize,
    num_vars: usize,
    art_start: usize,
    cols: usize,
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs of the phase-1 objective `Σ artificials`.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// `-1` where a row was negated to make its right-hand side nonnegative.
    flip: Vec<Rational>,
}

impl Tableau {
    fn phase_one(lp: &LpProblem) -> Self {
        let m = lp.rows.len();
        let surplus_rows: Vec<usize> = (0..m).filter(|&i| lp.rows[i].kind == RowKind::Ge).collect();
        let art_start = lp.num_vars + surplus_rows.len();
        let cols = art_start + m;
        let mut a = vec![vec![Rational::zero(); cols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut flip = Vec::with_capacity(m);
        for (i, row) in lp.rows.iter().enumerate() {
            let s = if row.rhs.is_negative() { int(-1) } else { int(1) };
            for (aij, c) in a[i].iter_mut().zip(&row.coeffs) {
                *aij = c * &s;
            }
            if let Some(k) = surplus_rows.iter().position(|&r| r == i) {
                a[i][lp.num_vars + k] = -&s;
            }
            a[i][art_start + i] = int(1);
            rhs.push(&row.rhs * &s);
            flip.push(s);
        }
        let mut cost = vec![Rational::zero(); cols];
        for (j, c) in cost.iter_mut().enumerate().take(art_start) {
            *c = -a.iter().map(|r| &r[j]).sum::<Rational>();
        }
        Tableau { m, num_vars: lp.num_vars, art_start, cols, a, rhs, cost, basis: (art_start..cols).collect(), flip }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for v in self.a[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.a[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i != r && !self.a[i][c].is_zero() {
                let f = self.a[i][c].clone();
                for (v, pv) in self.a[i].iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn run(mut self) -> LpOutcome {
        // Bland: lowest-index entering column, lowest-index leaving variable on ratio ties.
        while let Some(c) = (0..self.cols).find(|&j| self.cost[j].is_negative()) {
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if self.a[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.a[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            // the phase-1 objective is bounded below by 0, so a leaving row always exists
            let (r, _) = best.expect("phase-1 objective is bounded");
            self.pivot(r, c);
        }
        let objective: Rational = (0..self.m).filter(|&i| self.basis[i] >= self.art_start).map(|i| self.rhs[i].clone()).sum();
        if objective.is_zero() {
            let mut x = vec![Rational::zero(); self.num_vars];
            for (i, &b) in self.basis.iter().enumerate() {
                if b < self.num_vars {
                    x[b] = self.rhs[i].clone();
                }
            }
            LpOutcome::Feasible { witness: x }
        } else {
            // duals of the standardized rows: reduced cost of artificial i is 1 - y_i
            let certificate = (0..self.m)
                .map(|i| (int(1) - &self.cost[self.art_start + i]) * &self.flip[i])
                .collect();
            LpOutcome::Infeasible { certificate }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn feasible_box() {
        let mut lp = LpProblem::new(2);
        lp.push("sum", ints(&[1, 1]), RowKind::Eq, int(3));
        lp.push("x0>=1", ints(&[1, 0]), RowKind::Ge, int(1));
        lp.push("-x1>=-1", ints(&[0, -1]), RowKind::Ge, int(-1));
        let out = lp.solve();
        assert!(out.is_feasible());
        assert!(out.verify(&lp));
    }

    #[test]
    fn infeasible_with_certificate() {
        let mut lp = LpProblem::new(2);
        lp.push("sum", ints(&[1, 1]), RowKind::Eq, int(1));
        lp.push("x0>=2", ints(&[1, 0]), RowKind::Ge, int(2));
        let out = lp.solve();
        assert!(!out.is_feasible());
        assert!(out.verify(&lp));
    }

    #[test]
    fn fractional_and_negative_rhs() {
        let mut lp = LpProblem::new(3);
        lp.push("a", vec![frac(1, 2), int(-1), int(0)], RowKind::Eq, frac(-3, 4));
        lp.push("b", ints(&[0, 1, 1]), RowKind::Eq, int(2));
        lp.push("c", ints(&[1, 0, -1]), RowKind::Ge, int(-5));
        let out = lp.solve();
        assert!(out.verify(&lp), "{out:?}");
        assert!(out.is_feasible());
        let mut bad = lp.clone();
        bad.push("d", ints(&[0, 0, 1]), RowKind::Ge, int(3));
        let out = bad.solve();
        assert!(!out.is_feasible());
        assert!(out.verify(&bad));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let mut lp = LpProblem::new(1);
        lp.push("x<=-1", ints(&[-1]), RowKind::Ge, int(1));
        let out = lp.solve();
        assert!(out.verify(&lp));
        let forged = LpOutcome::Infeasible { certificate: vec![int(-1)] };
        assert!(!forged.verify(&lp));
        let forged = LpOutcome::Feasible { witness: vec![int(0)] };
        assert!(!forged.verify(&lp));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example as a feasibility system plus a bound that makes it infeasible
        let mut lp = LpProblem::new(4);
        lp.push("r1", vec![frac(-1, 4), int(8), int(1), int(-9)], RowKind::Ge, int(0));
        lp.push("r2", vec![frac(-1, 2), int(12), frac(1, 2), int(-3)], RowKind::Ge, int(0));
        lp.push("r3", ints(&[0, 0, -1, 0]), RowKind::Ge, int(-1));
        assert!(lp.solve().verify(&lp));
        lp.push("r4", ints(&[0, 0, 1, 0]), RowKind::Ge, int(2));
        let out = lp.solve();
        assert!(!out.is_feasible() && out.verify(&lp));
    }
}
