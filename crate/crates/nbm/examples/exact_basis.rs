//! Exact rational Groebner bases as a ground truth.
//!
//! The exact loop runs the same candidate enumeration as the numerical one
//! but decides dependence by exact linear algebra over arbitrary-precision
//! rationals, so its output is the reduced Groebner basis of the vanishing
//! ideal. Decimal inputs like `5.1` are converted exactly (51/10), never
//! through floating point.
//!
//! Run with: `cargo run --example exact_basis`

use nbm::exact::{exact_bm, rational_from_decimal, rational_to_string, RationalPointSet};
use nbm::monomials::TermOrdering;

fn show(label: &str, rows: &[[&str; 2]]) -> nbm::Result<()> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|c| (*c).to_owned()).collect())
        .collect();
    let x = RationalPointSet::from_decimal_rows(&cells)?;
    let result = exact_bm(&x, &TermOrdering::deglex(2))?;
    println!("{label}:");
    println!("  quotient basis: {}", result.order_ideal.render());
    for g in &result.polynomials {
        println!("  {}", g.render());
    }
    println!();
    Ok(())
}

fn main() -> nbm::Result<()> {
    let q = rational_from_decimal("5.1")?;
    println!(
        "decimal conversion is exact: 5.1 -> {q} = {}",
        rational_to_string(&q)
    );
    println!();

    // three points just off a common line: a full quotient basis and three quadrics
    show(
        "points (1,1), (3,2), (5.1,3)",
        &[["1", "1"], ["3", "2"], ["5.1", "3"]],
    )?;

    // snapping 5.1 to 5 aligns the points: the basis collapses to a line
    // equation plus one cubic in y
    show(
        "points (1,1), (3,2), (5,3)",
        &[["1", "1"], ["3", "2"], ["5", "3"]],
    )?;

    // the numerical loop at tolerance 0.15 on the x-coordinates treats the
    // first data set like the second: compare `cargo run --example basic_compute`
    Ok(())
}
