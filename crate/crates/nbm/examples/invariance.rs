//! The order ideal does not depend on units or origin.
//!
//! Scaling each coordinate (with the tolerance scaled along) or translating
//! all points leaves the computed order ideal unchanged. The checks here use
//! power-of-two scale factors and integer shifts so the transformed
//! coordinates are floating-point exact and the comparison is noise-free.
//!
//! Run with: `cargo run --example invariance`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nbm::monomials::TermOrdering;
use nbm::nbm::nbm;
use nbm::points::EmpiricalPointSet;
use nbm::verify::{
    check_scaling_invariance, check_translation_invariance, random_integer_translation,
    random_power_of_two_scaling,
};

fn main() -> nbm::Result<()> {
    let x = EmpiricalPointSet::new(
        vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.1, 3.0]],
        vec![0.15, 0.0],
    )?;
    let ordering = TermOrdering::deglex(2);
    let base = nbm(&x, &ordering)?;
    println!("base order ideal: {}", base.order_ideal.render());
    println!();

    // a hand-picked transform pair, then twenty random ones of each kind
    println!(
        "scale by (2, 4):      invariant = {}",
        check_scaling_invariance(&x, &[2.0, 4.0], &ordering)?
    );
    println!(
        "translate by (-3,-2): invariant = {}",
        check_translation_invariance(&x, &[-3.0, -2.0], &ordering)?
    );
    println!();

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut all_scaling = true;
    let mut all_translation = true;
    for _ in 0..20 {
        let d = random_power_of_two_scaling(x.n_vars(), &mut rng);
        all_scaling &= check_scaling_invariance(&x, &d, &ordering)?;
        let v = random_integer_translation(x.n_vars(), &mut rng);
        all_translation &= check_translation_invariance(&x, &v, &ordering)?;
    }
    println!("20 random power-of-two scalings: all invariant = {all_scaling}");
    println!("20 random integer translations:  all invariant = {all_translation}");
    println!();

    // the polynomials themselves do change coordinates, of course: compare
    // the line through the scaled points with the original one
    let scaled = nbm(&x.scale(&[2.0, 4.0])?, &ordering)?;
    println!("original g1: {}", base.polynomials[0].render(5));
    println!("scaled   g1: {}", scaled.polynomials[0].render(5));
    Ok(())
}
