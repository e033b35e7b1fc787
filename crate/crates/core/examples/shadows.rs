//! Shadow inequalities and linear-entropy bounds on random mixed states.

use std::error::Error;

use qdeck::bits::full_mask;
use qdeck::dense::{linear_entropy_report, random_mixed_state, shadow_operator_check, weight_values};
use qdeck::enumerator::{shadow_coefficients, WeightDistribution};
use qdeck::rational::{from_f64, to_f64};

pub fn run() -> Result<(), Box<dyn Error>> {
    for (seed, n) in [(1u64, 3usize), (2, 4), (3, 5)] {
        let rho = random_mixed_state(n, 2, seed)?;
        let values = weight_values(&rho).iter().map(|&v| from_f64(v).ok_or("finite weight")).collect::<Result<Vec<_>, _>>()?;
        let a = WeightDistribution::approximate(n, values)?;
        let shadow: Vec<f64> = shadow_coefficients(&a)?.iter().map(to_f64).collect();
        let min_shadow = shadow.iter().copied().fold(f64::INFINITY, f64::min);
        let entropy = linear_entropy_report(&rho)?;
        let op = shadow_operator_check(&rho, full_mask(n))?;
        println!(
            "seed {seed} n {n}: min S_j {min_shadow:.3e}  cor1 {:.4}  cor2 {:?}  min eig(T = all) {op:.3e}",
            entropy.cor1, entropy.cor2
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
