//! A numerical order ideal that no exact run can produce.
//!
//! Four points near the corners of a square admit the order ideal
//! `{1, y, x, xy}` once the tolerance is allowed to snap them onto the pair
//! of quadrics `y^2 = const`, `x^2 = const`. Exact arithmetic on the
//! unperturbed points has no such freedom: whichever of the four candidate
//! term orderings is used, the exact quotient basis comes out different.
//!
//! Run with: `cargo run --example ordering_comparison`

use nbm::exact::{exact_bm, RationalPointSet};
use nbm::monomials::{OrderingScheme, TermOrdering};
use nbm::nbm::nbm;
use nbm::points::EmpiricalPointSet;

fn main() -> nbm::Result<()> {
    let rows = [
        ["1.1", "1.1"],
        ["0.9", "-1.1"],
        ["-0.9", "0.9"],
        ["-1.1", "-0.9"],
    ];
    let x = EmpiricalPointSet::new(
        rows.iter()
            .map(|r| r.iter().map(|c| c.parse().unwrap()).collect())
            .collect(),
        vec![0.12, 0.12],
    )?;
    let numeric = nbm(&x, &TermOrdering::deglex(2))?;
    println!(
        "numerical order ideal (tolerance 0.12): {}",
        numeric.order_ideal.render()
    );
    for g in &numeric.polynomials {
        println!("  {}", g.render(5));
    }
    println!();

    let rational = RationalPointSet::from_decimal_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|c| (*c).to_owned()).collect())
            .collect::<Vec<_>>(),
    )?;
    let orderings = [
        (
            "deglex x > y",
            TermOrdering::new(OrderingScheme::DegLex, vec![0, 1])?,
        ),
        (
            "deglex y > x",
            TermOrdering::new(OrderingScheme::DegLex, vec![1, 0])?,
        ),
        (
            "lex x > y",
            TermOrdering::new(OrderingScheme::Lex, vec![0, 1])?,
        ),
        (
            "lex y > x",
            TermOrdering::new(OrderingScheme::Lex, vec![1, 0])?,
        ),
    ];
    println!("exact quotient bases of the unperturbed points:");
    for (label, ordering) in &orderings {
        let exact = exact_bm(&rational, ordering)?;
        let same = exact.order_ideal == numeric.order_ideal;
        println!(
            "  {label:<12} -> {}{}",
            exact.order_ideal.render(),
            if same {
                "  (matches the numerical ideal!)"
            } else {
                ""
            }
        );
    }
    println!();
    println!(
        "none of the exact runs produces {}: that ideal only exists",
        numeric.order_ideal.render()
    );
    println!("for the perturbed points the tolerance allows.");
    Ok(())
}
