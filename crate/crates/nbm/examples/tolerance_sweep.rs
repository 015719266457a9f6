//! The tolerance decides which geometry the points are allowed to have.
//!
//! Five points sit close to both the hyperbola `xy = 6` and the circle
//! `x^2 + y^2 - 12x - 12y + 47 = 0` (they miss each curve by a few
//! thousandths). At a loose tolerance both relations surface as almost
//! vanishing polynomials with leading terms `xy` and `x^2` -- two curves that
//! cannot actually share five points, which is the tolerance talking, not the
//! geometry. At a tight tolerance the circle relation no longer fits inside
//! the admissible wiggle room: `x^2` joins the order ideal instead and only
//! the hyperbola survives, next to two exactly-vanishing cubics.
//!
//! Run with: `cargo run --example tolerance_sweep`

use nbm::monomials::TermOrdering;
use nbm::nbm::nbm;
use nbm::points::EmpiricalPointSet;

fn run_at(eps: f64) -> nbm::Result<()> {
    let x = EmpiricalPointSet::new(
        vec![
            vec![1.0, 6.0],
            vec![2.0, 3.0],
            vec![2.449, 2.449],
            vec![3.0, 2.0],
            vec![6.0, 1.0],
        ],
        vec![eps, eps],
    )?;
    let result = nbm(&x, &TermOrdering::deglex(2))?;
    println!("tolerance {eps}:");
    println!("  order ideal: {}", result.order_ideal.render());
    for g in &result.polynomials {
        println!(
            "  [{}] {}   (score {:.2e})",
            g.leading_term.render(),
            g.render(4),
            g.score
        );
    }
    println!();
    Ok(())
}

fn main() -> nbm::Result<()> {
    // loose: the points may be moved onto the hyperbola and the circle,
    // so xy and x^2 become dependent terms
    run_at(0.018)?;
    // tight: the residuals now dominate their perturbation bounds and the
    // order ideal grows a different tail
    run_at(0.001)?;
    Ok(())
}
