//! Least squares, projectors, dependence bounds, and first-order sensitivity.
//!
//! Everything runs through a rank-revealing SVD; normal equations are never
//! formed. The dependence bound is the componentwise tolerance bound that the
//! classification loop compares against the least-squares residual, and the
//! first-order deltas predict how residual and coefficients move under an
//! admissible perturbation of the points.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::monomials::PowerProduct;
use crate::points::{
    eval_partial, eval_partial_matrix, eval_vector, EmpiricalPointSet, EvaluationMatrix,
    PerturbationSample,
};

/// Result of an overdetermined least-squares solve `M alpha ≈ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresSolution {
    /// Coefficients, one per matrix column.
    pub alpha: DVector<f64>,
    /// Residual `b - M alpha`.
    pub residual: DVector<f64>,
    /// True when the smallest singular value clears the rank threshold.
    pub rank_ok: bool,
    /// Smallest singular value of `M` (infinite for zero columns).
    pub smallest_singular_value: f64,
}

/// Thin SVD pieces of an evaluation matrix with `rows >= cols`.
struct ThinSvd {
    u: DMatrix<f64>,
    singular_values: DVector<f64>,
    v_t: DMatrix<f64>,
}

fn thin_svd(m: &DMatrix<f64>) -> Result<ThinSvd> {
    let svd = m.clone().svd(true, true);
    let u = svd
        .u
        .ok_or_else(|| Error::Config("SVD failed to produce U".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Config("SVD failed to produce V^T".into()))?;
    Ok(ThinSvd {
        u,
        singular_values: svd.singular_values,
        v_t,
    })
}

/// Rank threshold: `rows * machine_epsilon * largest_singular_value`.
#[must_use]
pub fn rank_threshold(rows: usize, largest: f64) -> f64 {
    rows as f64 * f64::EPSILON * largest
}

/// Smallest and largest singular values; `(inf, 0)` when the matrix has no columns.
#[must_use]
pub fn singular_extremes(m: &DMatrix<f64>) -> (f64, f64) {
    if m.ncols() == 0 || m.nrows() == 0 {
        return (f64::INFINITY, 0.0);
    }
    let sv = m.clone().singular_values();
    (sv.min(), sv.max())
}

/// Solves `M alpha ≈ b` by SVD; zero columns give an empty `alpha` and `residual = b`.
pub fn least_squares(m: &EvaluationMatrix, b: &DVector<f64>) -> Result<LeastSquaresSolution> {
    let s = m.nrows();
    let k = m.ncols();
    if b.len() != s {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} entries, matrix has {s} rows",
            b.len()
        )));
    }
    if k == 0 {
        return Ok(LeastSquaresSolution {
            alpha: DVector::zeros(0),
            residual: b.clone(),
            rank_ok: true,
            smallest_singular_value: f64::INFINITY,
        });
    }
    if k > s {
        return Err(Error::DimensionMismatch(format!(
            "{k} columns exceed {s} rows"
        )));
    }
    let ThinSvd {
        u,
        singular_values,
        v_t,
    } = thin_svd(m.entries())?;
    let largest = singular_values.max();
    let smallest = singular_values.min();
    let threshold = rank_threshold(s, largest);
    let rank_ok = smallest > threshold;
    // pseudo-inverse application with a cutoff only when the rank test failed
    let cutoff = if rank_ok { 0.0 } else { threshold };
    let ut_b = u.transpose() * b;
    let scaled = DVector::from_fn(k, |j, _| {
        let sv = singular_values[j];
        if sv > cutoff {
            ut_b[j] / sv
        } else {
            0.0
        }
    });
    let alpha = v_t.transpose() * scaled;
    let residual = b - m.entries() * &alpha;
    Ok(LeastSquaresSolution {
        alpha,
        residual,
        rank_ok,
        smallest_singular_value: smallest,
    })
}

/// Orthogonal-complement projector `I - M M^+` onto the cokernel of `M`.
///
/// Requires full column rank; a zero-column matrix gives the identity and a
/// square invertible one gives the zero matrix.
pub fn projector_complement(m: &EvaluationMatrix) -> Result<DMatrix<f64>> {
    let s = m.nrows();
    let k = m.ncols();
    if k == 0 {
        return Ok(DMatrix::identity(s, s));
    }
    if k > s {
        return Err(Error::DimensionMismatch(format!(
            "{k} columns exceed {s} rows"
        )));
    }
    let ThinSvd {
        u, singular_values, ..
    } = thin_svd(m.entries())?;
    let largest = singular_values.max();
    let smallest = singular_values.min();
    let threshold = rank_threshold(s, largest);
    if smallest <= threshold {
        return Err(Error::RankDeficient {
            smallest,
            threshold,
        });
    }
    Ok(DMatrix::identity(s, s) - &u * u.transpose())
}

/// Componentwise dependence bound for a candidate term against a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DependenceBound {
    /// The bound vector compared against the residual, one entry per point.
    pub bound: DVector<f64>,
    /// Per-variable contributions before projection: `eps_k * |d_k t(X) - M_{d_k O} alpha|`.
    pub per_variable_terms: Vec<DVector<f64>>,
    /// Floating-point noise floor `s * machine_epsilon * (||t(X)||_2 +
    /// ||M||_F ||alpha||_2)`, the roundoff scale of the residual computation.
    pub noise_floor: f64,
}

/// Builds the dependence bound for candidate `t` fitted on the columns of `m`.
///
/// `m` must be the evaluation matrix of the current basis on `x`, and `sol`
/// the least-squares solution of `t(X)` against it.
pub fn dependence_bound(
    x: &EmpiricalPointSet,
    m: &EvaluationMatrix,
    t: &PowerProduct,
    sol: &LeastSquaresSolution,
) -> Result<DependenceBound> {
    let s = x.len();
    let n = x.n_vars();
    let mut per_variable_terms = Vec::with_capacity(n);
    let mut summed = DVector::zeros(s);
    for k in 0..n {
        let eps = x.tolerance()[k];
        let term = if eps == 0.0 {
            DVector::zeros(s)
        } else {
            let dt = eval_partial(&t.formal_partial(k), x);
            let dm = eval_partial_matrix(m.column_terms(), k, x);
            (dt - dm * &sol.alpha).abs() * eps
        };
        summed += &term;
        per_variable_terms.push(term);
    }
    let projector_abs = projector_complement(m)?.abs();
    let bound = projector_abs * summed;
    // backward-error floor: accounts for roundoff in b and in the solve itself
    let solve_scale = eval_vector(t, x).norm() + m.entries().norm() * sol.alpha.norm();
    let noise_floor = s as f64 * f64::EPSILON * solve_scale;
    Ok(DependenceBound {
        bound,
        per_variable_terms,
        noise_floor,
    })
}

/// First-order predictions for the residual and coefficient changes under a perturbation.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderDeltas {
    /// Predicted change of the residual vector.
    pub delta_residual: DVector<f64>,
    /// Predicted change of the least-squares coefficients.
    pub delta_alpha: DVector<f64>,
}

/// First-order sensitivity of the fit of `t(X)` on the columns of `m` under offsets `e`.
pub fn first_order_deltas(
    x: &EmpiricalPointSet,
    m: &EvaluationMatrix,
    t: &PowerProduct,
    sol: &LeastSquaresSolution,
    e: &PerturbationSample,
) -> Result<FirstOrderDeltas> {
    let s = x.len();
    let k_cols = m.ncols();
    let n = x.n_vars();

    // forcing = sum_k E_k (d_k t(X) - M_{d_k O} alpha); coupling = sum_k M_{d_k O}^T E_k rho
    let mut forcing = DVector::zeros(s);
    let mut coupling = DVector::zeros(k_cols);
    for k in 0..n {
        let ek = e.column(k);
        let dt = eval_partial(&t.formal_partial(k), x);
        let dm = eval_partial_matrix(m.column_terms(), k, x);
        let direction = dt - &dm * &sol.alpha;
        forcing += ek.component_mul(&direction);
        coupling += dm.transpose() * ek.component_mul(&sol.residual);
    }

    if k_cols == 0 {
        return Ok(FirstOrderDeltas {
            delta_residual: forcing,
            delta_alpha: DVector::zeros(0),
        });
    }

    let ThinSvd {
        u,
        singular_values,
        v_t,
    } = thin_svd(m.entries())?;
    let largest = singular_values.max();
    let smallest = singular_values.min();
    let threshold = rank_threshold(s, largest);
    if smallest <= threshold {
        return Err(Error::RankDeficient {
            smallest,
            threshold,
        });
    }
    let v = v_t.transpose();
    let sigma_inv = DMatrix::from_diagonal(&singular_values.map(|sv| 1.0 / sv));
    let pseudo_inverse = &v * &sigma_inv * u.transpose();
    // (M^T M)^{-1} = V Sigma^{-2} V^T, assembled from the SVD
    let gram_inverse = &v * &sigma_inv * &sigma_inv * v.transpose();

    let projector = DMatrix::identity(s, s) - &u * u.transpose();
    let delta_residual = projector * &forcing - pseudo_inverse.transpose() * &coupling;
    let delta_alpha = &pseudo_inverse * forcing + gram_inverse * coupling;
    Ok(FirstOrderDeltas {
        delta_residual,
        delta_alpha,
    })
}
