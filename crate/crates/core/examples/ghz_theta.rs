//! Marginals do not determine the state: every `(n-1)`-body reduction of
//! `(|0…0> + e^{iθ}|1…1>)/√2` is independent of `θ`, yet `θ = 0` and `θ = π`
//! give orthogonal states.

use std::error::Error;

use qdeck::bits::k_subsets;
use qdeck::dense::{ghz_theta, partial_trace};

/// Largest entrywise deviation between `(n-1)`-marginals of `θ = 0` and `θ`.
pub fn marginal_deviation(n: usize, theta: f64) -> Result<f64, Box<dyn Error>> {
    let a = ghz_theta(n, 0.0)?;
    let b = ghz_theta(n, theta)?;
    let mut worst = 0.0f64;
    for s in k_subsets(n, n - 1) {
        let d = partial_trace(&a, s)?.density_matrix() - partial_trace(&b, s)?.density_matrix();
        worst = d.iter().map(|z| z.norm()).fold(worst, f64::max);
    }
    Ok(worst)
}

pub fn run() -> Result<(), Box<dyn Error>> {
    for n in 4..=6 {
        let overlap = ghz_theta(n, 0.0)?.inner(&ghz_theta(n, std::f64::consts::PI)?).ok_or("pure states")?.norm();
        let worst = [0.3, 1.0, std::f64::consts::PI]
            .into_iter()
            .map(|t| marginal_deviation(n, t))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("n = {n}: max marginal deviation {worst:.1e}, |<GHZ_0|GHZ_pi>| = {overlap:.1e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
