//! What the dependence decision actually compares.
//!
//! For a candidate term `t`, the loop fits `t(X)` on the current basis and
//! asks whether the residual could vanish for admissibly moved points. The
//! bound it uses is componentwise: `|I - M M^+| * sum_k eps_k |d_k t(X) -
//! M_{d_k O}(X) alpha|`. This example prints the residual next to the bound
//! for the decisive step of the nearly collinear data set, then shows the
//! first-order predictors behind the bound converging at second order.
//!
//! Run with: `cargo run --example sensitivity`

use nbm::monomials::{OrderIdealState, PowerProduct, TermOrdering};
use nbm::numerics::{dependence_bound, least_squares};
use nbm::points::{eval_matrix, eval_vector, EmpiricalPointSet};
use nbm::verify::first_order_convergence;

fn main() -> nbm::Result<()> {
    let x = EmpiricalPointSet::new(
        vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.1, 3.0]],
        vec![0.15, 0.0],
    )?;
    let ordering = TermOrdering::deglex(2);

    // the decisive step: t = x against the basis {1, y}
    let basis = [PowerProduct::new(vec![0, 0]), PowerProduct::new(vec![0, 1])];
    let t = PowerProduct::new(vec![1, 0]);
    let m = eval_matrix(&basis, &x);
    let sol = least_squares(&m, &eval_vector(&t, &x))?;
    let bound = dependence_bound(&x, &m, &t, &sol)?;

    println!(
        "fit of x(X) on {{1, y}}: alpha = ({:.5}, {:.5})",
        sol.alpha[0], sol.alpha[1]
    );
    println!("component   residual      bound      |residual| <= bound");
    for i in 0..x.len() {
        println!(
            "  p{i}      {:>9.6}   {:>9.6}        {}",
            sol.residual[i],
            bound.bound[i],
            sol.residual[i].abs() <= bound.bound[i]
        );
    }
    println!("every component is dominated, so x depends on {{1, y}} and");
    println!("g = x - alpha_2 y - alpha_1 joins the output.");
    println!();

    // convergence of the first-order predictors: on a curved configuration
    // halving the perturbation scale divides the prediction error by ~4
    let curved = EmpiricalPointSet::new(
        vec![
            vec![1.0, 6.0],
            vec![2.0, 3.0],
            vec![2.449, 2.449],
            vec![3.0, 2.0],
            vec![6.0, 1.0],
        ],
        vec![0.018, 0.018],
    )?;
    let o = OrderIdealState::from_terms(
        vec![
            PowerProduct::new(vec![0, 0]),
            PowerProduct::new(vec![0, 1]),
            PowerProduct::new(vec![1, 0]),
            PowerProduct::new(vec![0, 2]),
        ],
        &ordering,
    )?;
    let report = first_order_convergence(&curved, &o, &PowerProduct::new(vec![1, 1]), 5)?;
    println!("prediction error of the first-order model for xy on {{1, y, x, y^2}}:");
    for (h, (re, ae)) in report
        .scales
        .iter()
        .zip(report.residual_errors.iter().zip(&report.alpha_errors))
    {
        println!("  scale {h:<5} residual error {re:.3e}   coefficient error {ae:.3e}");
    }
    println!(
        "error ratios under halving: {:?} (quadratic decay targets 4)",
        report.residual_ratios
    );

    // on the collinear data set the fit depends linearly on the only movable
    // coordinates, so the predictor is exact and there is nothing to decay
    let o_line = OrderIdealState::from_terms(basis.to_vec(), &ordering)?;
    let exact_report = first_order_convergence(&x, &o_line, &t, 23)?;
    println!();
    println!(
        "same test on the collinear configuration: exact = {}",
        exact_report.exact
    );
    Ok(())
}
