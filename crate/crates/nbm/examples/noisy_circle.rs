//! Recovering a circle equation from noisy samples.
//!
//! Twenty points on the unit circle at equally spaced angles, each coordinate
//! jittered by less than 1e-4, with the tolerance set to the noise level. The
//! first almost vanishing polynomial comes out as `x^2 + y^2 - 1` up to the
//! noise scale, while the order ideal keeps growing past it: the samples have
//! only eleven distinct y-values, so powers of y stay independent all the way
//! up to y^10 and the basis reaches (nearly) one term per point.
//!
//! Run with: `cargo run --example noisy_circle`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nbm::monomials::{PowerProduct, TermOrdering};
use nbm::nbm::nbm;
use nbm::points::EmpiricalPointSet;

fn main() -> nbm::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let noise = 1e-4;
    let count = 20;
    let rows: Vec<Vec<f64>> = (0..count)
        .map(|j| {
            // starting the grid at angle zero pairs the samples across both
            // axes: sin takes only 11 distinct values, cos only 11, which is
            // what lets every power of y up to y^10 stay independent
            let theta = std::f64::consts::TAU * j as f64 / count as f64;
            let jitter = |rng: &mut ChaCha8Rng| (rng.gen::<f64>() * 2.0 - 1.0) * 0.99 * noise;
            vec![
                theta.cos() + jitter(&mut rng),
                theta.sin() + jitter(&mut rng),
            ]
        })
        .collect();
    let x = EmpiricalPointSet::new(rows, vec![noise, noise])?;
    let result = nbm(&x, &TermOrdering::deglex(2))?;

    println!("{} noisy circle samples, tolerance {noise:e}", x.len());
    println!(
        "order ideal has {} of {} possible terms",
        result.order_ideal.len(),
        x.len()
    );
    println!();

    let g = &result.polynomials[0];
    println!("first polynomial: {}", g.render(5));
    println!("  score {:.3e}", g.score);
    let c_x2 = g
        .coefficient_of(&PowerProduct::new(vec![2, 0]))
        .unwrap_or(0.0);
    let c_y2 = g
        .coefficient_of(&PowerProduct::new(vec![0, 2]))
        .unwrap_or(0.0);
    let c_1 = g
        .coefficient_of(&PowerProduct::new(vec![0, 0]))
        .unwrap_or(0.0);
    println!("  x^2 coefficient {c_x2:.6}");
    println!("  y^2 coefficient {c_y2:.6}  (circle: 1)");
    println!("  constant        {c_1:.6}  (circle: -1)");
    println!();
    println!(
        "{} more polynomials close the ideal at degree {}",
        result.polynomials.len() - 1,
        {
            result
                .polynomials
                .iter()
                .map(|g| g.degree)
                .max()
                .unwrap_or(0)
        }
    );
    Ok(())
}
