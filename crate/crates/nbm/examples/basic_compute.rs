//! Smallest end-to-end run: three nearly collinear points.
//!
//! The x-coordinates are trusted only to 0.15 while the y-coordinates are
//! exact. Because an admissible nudge of the x-coordinates puts all three
//! points on one line, `x` is classified as dependent on `{1, y}` and the
//! run returns a degree-one almost vanishing polynomial, even though the
//! recorded points are not collinear.
//!
//! Run with: `cargo run --example basic_compute`

use nbm::monomials::TermOrdering;
use nbm::nbm::nbm;
use nbm::points::EmpiricalPointSet;

fn main() -> nbm::Result<()> {
    let x = EmpiricalPointSet::new(
        vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.1, 3.0]],
        vec![0.15, 0.0],
    )?;
    let ordering = TermOrdering::deglex(2);
    let result = nbm(&x, &ordering)?;

    println!("points ({} in {} variables):", x.len(), x.n_vars());
    for i in 0..x.len() {
        println!("  p{i} = ({}, {})", x.coordinate(i, 0), x.coordinate(i, 1));
    }
    println!("tolerance: ({}, {})", x.tolerance()[0], x.tolerance()[1]);
    println!();

    println!("order ideal: {}", result.order_ideal.render());
    for (i, g) in result.polynomials.iter().enumerate() {
        println!("g{} = {}", i + 1, g.render(5));
        println!("     score {:.4e} (relative size of g(X))", g.score);
    }
    println!();

    println!("classification log:");
    for step in &result.steps {
        let max_residual = step.residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let max_bound = step.bound.iter().fold(0.0f64, |m, b| m.max(*b));
        println!(
            "  {:<4} -> {:?} (max |residual| {:.3e}, max bound {:.3e})",
            step.term.render(),
            step.decision,
            max_residual,
            max_bound
        );
    }
    println!();
    println!(
        "diagnostics: unit_box={} well_separated={} quotient_basis={}",
        result.diagnostics.coordinates_in_unit_box,
        result.diagnostics.well_separated,
        result.diagnostics.quotient_basis
    );
    Ok(())
}
