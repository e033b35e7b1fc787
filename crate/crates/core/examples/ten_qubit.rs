//! Ten qubits whose six-body marginals all equal `(1-q)·1/64` plus a
//! `q`-weighted share of GHZ₆ correlations.
//!
//! The only cut relation that closes on `A_0..A_6` fixes `q = 3/35`. At that
//! value no nonnegative completion `A_7..A_10` exists, and the LP returns an
//! exactly verified Farkas certificate.

use std::error::Error;
use std::time::Instant;

use qdeck::dense::{ghz_theta, weight_distribution_dense};
use qdeck::enumerator::{CutRelation, ReducedWeightDistribution};
use qdeck::legitimacy::{judge_reduced, lp_completion, Assumptions};
use qdeck::rational::{binomial_q, int, render, Rational};

pub const N: usize = 10;
pub const M: usize = 6;

/// Reduced weights `A_j^6` of the deck for a given `q`.
pub fn reduced(q: &Rational) -> Result<ReducedWeightDistribution, Box<dyn Error>> {
    let ghz = weight_distribution_dense(&ghz_theta(M, 0.0)?)?;
    let cards = binomial_q(N as i64, M as i64);
    let values = ghz
        .values()
        .iter()
        .enumerate()
        .map(|(j, a)| if j == 0 { cards.clone() } else { &cards * q * a })
        .collect();
    Ok(ReducedWeightDistribution::new(N, M, values, true)?)
}

/// The `q` forced by the closed cut relation (the residual is affine in `q`).
pub fn forced_q() -> Result<(CutRelation, Rational), Box<dyn Error>> {
    let rel = (1..=N / 2)
        .map(|m| CutRelation::new(N, m))
        .find(|r| r.max_index().is_some_and(|k| k <= M))
        .ok_or("no closed relation")?;
    let r0 = rel.residual(reduced(&int(0))?.infer_low_weights()?.values());
    let r1 = rel.residual(reduced(&int(1))?.infer_low_weights()?.values());
    Ok((rel, &r0 / (&r0 - &r1)))
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let start = Instant::now();
    let (rel, q) = forced_q()?;
    println!("closed relation (m = {}): {}", rel.m, rel.render());
    println!("forced q = {}", render(&q));
    let low = reduced(&q)?.infer_low_weights()?;
    println!("A_0..A_6 = [{}]", low.to_strings().join(", "));
    let (_, outcome, report) = lp_completion(&low, true);
    println!("lp feasible={} verified={} rows={}", outcome.is_feasible(), report.verified, report.rows);
    for entry in report.certificate.iter().flatten() {
        println!("  {:>12} x {}", entry.multiplier, entry.row);
    }
    let verdict = judge_reduced(&reduced(&q)?, Assumptions { pure: true, graph_state: false })?.verdict;
    println!("verdict: {verdict}  ({:.2?})", start.elapsed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
