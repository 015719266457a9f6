//! The numerical basis loop: order ideal plus almost vanishing polynomials.
//!
//! Candidates are corner terms of the growing order ideal, visited in
//! ascending term order. Each candidate's evaluation vector is fitted against
//! the accepted basis; the residual is compared componentwise against a
//! tolerance-driven bound. Candidates whose residual strictly dominates the
//! bound in every meaningful component join the order ideal, the rest become
//! leading terms of monic almost vanishing polynomials.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomials::{next_candidate, OrderIdealState, PowerProduct, TermOrdering};
use crate::numerics::{dependence_bound, least_squares, DependenceBound, LeastSquaresSolution};
use crate::points::{eval_matrix, eval_vector, EmpiricalPointSet};

/// Classification of one candidate term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    /// Some residual component cleared its bound: the term joined the order
    /// ideal.
    Independent,
    /// The term became the leading term of an almost vanishing polynomial.
    Dependent,
}

/// One entry of the classification log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbmStep {
    /// Candidate term.
    pub term: PowerProduct,
    /// Least-squares residual at this step.
    pub residual: Vec<f64>,
    /// Componentwise dependence bound at this step.
    pub bound: Vec<f64>,
    /// Outcome.
    pub decision: Decision,
}

/// A monic polynomial that almost vanishes on the point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlmostVanishingPoly {
    /// Leading term in the chosen ordering.
    pub leading_term: PowerProduct,
    /// Support, descending in the ordering; the first entry is the leading term.
    pub support: Vec<PowerProduct>,
    /// Coefficients aligned with `support`; the first entry is `1`.
    pub coefficients: Vec<f64>,
    /// `||g(X)||_2 / ||coefficients||_2` at construction time.
    pub score: f64,
    /// Euclidean norm of the construction residual.
    pub residual_norm: f64,
    /// Total degree (largest degree among support terms with nonzero coefficient).
    pub degree: u32,
}

impl AlmostVanishingPoly {
    /// Assembles the monic polynomial `t - sum alpha_i t_i` from a fit.
    #[must_use]
    pub fn from_fit(t: &PowerProduct, basis: &[PowerProduct], sol: &LeastSquaresSolution) -> Self {
        let mut support = vec![t.clone()];
        let mut coefficients = vec![1.0];
        for j in (0..basis.len()).rev() {
            support.push(basis[j].clone());
            coefficients.push(-sol.alpha[j]);
        }
        let residual_norm = sol.residual.norm();
        let coefficient_norm = coefficients.iter().map(|c| c * c).sum::<f64>().sqrt();
        let degree = support
            .iter()
            .zip(&coefficients)
            .filter(|(_, &c)| c != 0.0)
            .map(|(term, _)| term.total_degree())
            .max()
            .unwrap_or(0);
        Self {
            leading_term: t.clone(),
            support,
            coefficients,
            score: residual_norm / coefficient_norm,
            residual_norm,
            degree,
        }
    }

    /// Euclidean norm of the coefficient vector.
    #[must_use]
    pub fn coefficient_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Coefficient attached to `term`, if it appears in the support.
    #[must_use]
    pub fn coefficient_of(&self, term: &PowerProduct) -> Option<f64> {
        self.support
            .iter()
            .position(|u| u == term)
            .map(|j| self.coefficients[j])
    }

    /// Evaluation vector `g(X)`.
    #[must_use]
    pub fn evaluate(&self, x: &EmpiricalPointSet) -> DVector<f64> {
        let mut out = DVector::zeros(x.len());
        for (term, &c) in self.support.iter().zip(&self.coefficients) {
            out += eval_vector(term, x) * c;
        }
        out
    }

    /// Evaluation at a single point.
    #[must_use]
    pub fn evaluate_at(&self, point: &[f64]) -> f64 {
        self.support
            .iter()
            .zip(&self.coefficients)
            .map(|(term, &c)| {
                c * (0..term.n_vars())
                    .fold(1.0, |acc, k| acc * point[k].powi(term.degree_in(k) as i32))
            })
            .sum()
    }

    /// Renders like `x - 2.05000 y + 1.06667` with the given decimal digits.
    #[must_use]
    pub fn render(&self, digits: usize) -> String {
        let mut out = self.support[0].render();
        for (term, &c) in self.support.iter().zip(&self.coefficients).skip(1) {
            out.push_str(if c < 0.0 { " - " } else { " + " });
            out.push_str(&format!("{:.digits$}", c.abs()));
            if !term.is_one() {
                out.push(' ');
                out.push_str(&term.render());
            }
        }
        out
    }
}

/// Relative size of the evaluation of `g` on `x`: `||g(X)||_2 / ||c||_2`.
#[must_use]
pub fn score(g: &AlmostVanishingPoly, x: &EmpiricalPointSet) -> f64 {
    g.evaluate(x).norm() / g.coefficient_norm()
}

/// Structural flags reported with every run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// All coordinates lie in `[-1, 1]` (hypothesis of the score bound).
    pub coordinates_in_unit_box: bool,
    /// No two points are indistinguishable within twice the tolerance.
    pub well_separated: bool,
    /// The order ideal has exactly one term per point.
    pub quotient_basis: bool,
}

/// Full output of a numerical basis run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbmResult {
    /// The accepted order ideal, ascending in the run's ordering.
    pub order_ideal: OrderIdealState,
    /// Almost vanishing polynomials, in discovery order.
    pub polynomials: Vec<AlmostVanishingPoly>,
    /// Classification log, one entry per candidate.
    pub steps: Vec<NbmStep>,
    /// Structural flags.
    pub diagnostics: Diagnostics,
}

impl NbmResult {
    /// Leading terms of the polynomials, in discovery order.
    #[must_use]
    pub fn leading_terms(&self) -> Vec<PowerProduct> {
        self.polynomials
            .iter()
            .map(|g| g.leading_term.clone())
            .collect()
    }

    /// Basis terms accepted before `t` was classified (a prefix of the order ideal).
    #[must_use]
    pub fn basis_before(&self, t: &PowerProduct, ordering: &TermOrdering) -> Vec<PowerProduct> {
        self.order_ideal
            .terms()
            .iter()
            .filter(|u| ordering.compare(u, t) == std::cmp::Ordering::Less)
            .cloned()
            .collect()
    }
}

/// Behaviour when two points are indistinguishable within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeparationPolicy {
    /// Record the violation in the diagnostics and continue.
    #[default]
    Warn,
    /// Refuse to run.
    Error,
}

/// Tunable behaviour of the basis loop.
#[derive(Debug, Clone, Copy, Default)]
pub struct NbmOptions {
    /// Policy for separation violations.
    pub separation: SeparationPolicy,
}

/// Componentwise dependence decision with a floating-point noise floor.
///
/// A perturbation within tolerance can cancel the residual vector only if it
/// can cancel every component at once, and the first-order reach of admissible
/// perturbations in component `i` is `bound_i`. The candidate is therefore
/// dependent exactly when `|residual_i| <= bound_i` in every component;
/// a single component with `|residual_i| > bound_i` certifies independence.
/// Components where both sides sit below the noise floor carry no signal and
/// cannot certify. A residual whose norm is below the floor is always
/// dependent.
#[must_use]
pub fn is_numerically_dependent(residual: &DVector<f64>, bound: &DependenceBound) -> bool {
    assert_eq!(
        residual.len(),
        bound.bound.len(),
        "residual/bound length mismatch"
    );
    let eta = bound.noise_floor;
    if residual.norm() <= eta {
        return true;
    }
    for i in 0..residual.len() {
        let r = residual[i].abs();
        let b = bound.bound[i];
        if r < eta && b < eta {
            continue;
        }
        if r > b {
            return false;
        }
    }
    true
}

/// Runs the numerical basis loop with default options.
pub fn nbm(x: &EmpiricalPointSet, ordering: &TermOrdering) -> Result<NbmResult> {
    nbm_with_options(x, ordering, NbmOptions::default())
}

/// Runs the numerical basis loop.
pub fn nbm_with_options(
    x: &EmpiricalPointSet,
    ordering: &TermOrdering,
    options: NbmOptions,
) -> Result<NbmResult> {
    if ordering.n_vars() != x.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "ordering over {} variables, points over {}",
            ordering.n_vars(),
            x.n_vars()
        )));
    }
    let violations = x.separation_violations();
    if options.separation == SeparationPolicy::Error && !violations.is_empty() {
        let (i, j) = violations[0];
        return Err(Error::NotWellSeparated(format!(
            "points {i} and {j} are indistinguishable within twice the tolerance"
        )));
    }

    let mut o = OrderIdealState::new(x.n_vars());
    let mut polynomials = Vec::new();
    let mut leading_terms: Vec<PowerProduct> = Vec::new();
    let mut processed: Vec<PowerProduct> = Vec::new();
    let mut steps = Vec::new();

    while let Some(t) = next_candidate(&o, &leading_terms, &processed, ordering) {
        let m = eval_matrix(o.terms(), x);
        let b = eval_vector(&t, x);
        let sol = least_squares(&m, &b)?;
        if !sol.rank_ok {
            return Err(Error::RankDeficient {
                smallest: sol.smallest_singular_value,
                threshold: x.len() as f64 * f64::EPSILON,
            });
        }
        let bound = dependence_bound(x, &m, &t, &sol)?;
        // a square invertible basis spans all of R^s, so further candidates are
        // exactly dependent regardless of the computed residual's roundoff
        let dependent = o.len() == x.len() || is_numerically_dependent(&sol.residual, &bound);
        steps.push(NbmStep {
            term: t.clone(),
            residual: sol.residual.iter().copied().collect(),
            bound: bound.bound.iter().copied().collect(),
            decision: if dependent {
                Decision::Dependent
            } else {
                Decision::Independent
            },
        });
        processed.push(t.clone());
        if dependent {
            polynomials.push(AlmostVanishingPoly::from_fit(&t, o.terms(), &sol));
            leading_terms.push(t);
        } else {
            o.insert(t, ordering);
        }
    }

    let diagnostics = Diagnostics {
        coordinates_in_unit_box: x.coordinates_in_unit_box(),
        well_separated: violations.is_empty(),
        quotient_basis: o.len() == x.len(),
    };
    Ok(NbmResult {
        order_ideal: o,
        polynomials,
        steps,
        diagnostics,
    })
}
