//! Property harness for the numerical basis computation.
//!
//! Checks the structural guarantees the algorithm is supposed to deliver:
//! invariance of the order ideal under coordinate scalings and translations,
//! Monte-Carlo rank stability of the evaluation matrix under admissible
//! perturbations, the almost-vanishing score budget, vanishing on a claimed
//! perturbed zero set, closeness to the border-basis coefficients, quadratic
//! decay of the first-order sensitivity predictors, and a brute-force search
//! for the minimal residual over the admissible perturbation box.

use nalgebra::DVector;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomials::{OrderIdealState, PowerProduct, TermOrdering};
use crate::nbm::{nbm, score, AlmostVanishingPoly, NbmResult, NbmStep};
use crate::numerics::{first_order_deltas, least_squares, rank_threshold, singular_extremes};
use crate::points::{
    eval_matrix, eval_vector, perturb, sample_admissible, EmpiricalPointSet, PerturbationSample,
};

/// Outcome of a single property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckOutcome {
    /// The property held.
    Passed,
    /// The property failed; `detail` names the first witness.
    Failed {
        /// Human-readable description of the violation.
        detail: String,
    },
    /// The check's hypothesis was not met, so nothing was tested.
    Skipped {
        /// Why the check did not apply.
        reason: String,
    },
}

impl CheckOutcome {
    /// True unless the check failed (skipped checks do not count as failures).
    #[must_use]
    pub fn is_ok(&self) -> bool {
        !matches!(self, CheckOutcome::Failed { .. })
    }
}

// ---------------------------------------------------------------------------
// invariance of the order ideal under exact coordinate transformations
// ---------------------------------------------------------------------------

/// True iff scaling coordinate `k` by `factors[k]` (tolerance scales along)
/// leaves the computed order ideal unchanged.
pub fn check_scaling_invariance(
    x: &EmpiricalPointSet,
    factors: &[f64],
    ordering: &TermOrdering,
) -> Result<bool> {
    if factors.contains(&0.0) {
        return Err(Error::Config("scale factors must be nonzero".into()));
    }
    let base = nbm(x, ordering)?;
    let scaled = nbm(&x.scale(factors)?, ordering)?;
    Ok(base.order_ideal == scaled.order_ideal)
}

/// True iff translating every point by `shift` (tolerance unchanged) leaves
/// the computed order ideal unchanged.
pub fn check_translation_invariance(
    x: &EmpiricalPointSet,
    shift: &[f64],
    ordering: &TermOrdering,
) -> Result<bool> {
    let base = nbm(x, ordering)?;
    let moved = nbm(&x.translate(shift)?, ordering)?;
    Ok(base.order_ideal == moved.order_ideal)
}

/// Per-coordinate scale factors `2^k`, `k` uniform in `[-3, 3]`.
///
/// Powers of two keep the scaled coordinates floating-point exact, so the
/// invariance comparison is free of representation noise.
pub fn random_power_of_two_scaling<R: Rng + ?Sized>(n_vars: usize, rng: &mut R) -> Vec<f64> {
    (0..n_vars)
        .map(|_| 2.0f64.powi(rng.gen_range(-3..=3)))
        .collect()
}

/// Small-integer translation vector; integers are exactly representable.
pub fn random_integer_translation<R: Rng + ?Sized>(n_vars: usize, rng: &mut R) -> Vec<f64> {
    (0..n_vars)
        .map(|_| f64::from(rng.gen_range(-8i32..=8)))
        .collect()
}

// ---------------------------------------------------------------------------
// Monte-Carlo rank stability
// ---------------------------------------------------------------------------

/// Summary statistics of classification margins `|residual_i| - bound_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginSummary {
    /// Number of margins summarized (components across all logged steps).
    pub count: usize,
    /// Smallest margin.
    pub min: f64,
    /// Largest margin.
    pub max: f64,
    /// Mean margin.
    pub mean: f64,
}

impl MarginSummary {
    /// Flattens the per-component margins of a step log.
    #[must_use]
    pub fn from_steps(steps: &[NbmStep]) -> Self {
        let margins: Vec<f64> = steps
            .iter()
            .flat_map(|step| {
                step.residual
                    .iter()
                    .zip(&step.bound)
                    .map(|(r, b)| r.abs() - b)
            })
            .collect();
        if margins.is_empty() {
            return Self {
                count: 0,
                min: 0.0,
                max: 0.0,
                mean: 0.0,
            };
        }
        let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
        let max = margins.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = margins.iter().sum::<f64>() / margins.len() as f64;
        Self {
            count: margins.len(),
            min,
            max,
            mean,
        }
    }
}

/// Empirical rank-stability evidence for an order ideal's evaluation matrix.
///
/// Stability is reported, never certified: the summary exposes the smallest
/// singular value seen and the classification margins instead of a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    /// Number of admissible perturbations sampled.
    pub trials: usize,
    /// Trials whose evaluation matrix fell below the numerical-rank threshold.
    pub rank_failures: usize,
    /// Smallest singular value observed across all trials.
    pub min_smallest_singular_value: f64,
    /// Margins from the originating run's step log.
    pub margin_histogram: MarginSummary,
}

/// Samples `trials` admissible perturbations of `x` and records the numerical
/// rank of the order ideal's evaluation matrix at each.
///
/// Each trial is a pure function of `(x, o, seed, index)`, so reports are
/// reproducible and trials could be evaluated in any order.
#[must_use]
pub fn monte_carlo_stability(
    x: &EmpiricalPointSet,
    o: &OrderIdealState,
    steps: &[NbmStep],
    trials: usize,
    seed: u64,
) -> StabilityReport {
    let s = x.len();
    let mut rank_failures = 0;
    let mut min_smallest = f64::INFINITY;
    for index in 0..trials {
        let trial_seed = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let sample = sample_admissible(x, trial_seed);
        let moved = perturb(x, &sample).expect("sampled offsets are admissible by construction");
        let m = eval_matrix(o.terms(), &moved);
        let (smallest, largest) = singular_extremes(m.entries());
        if smallest <= rank_threshold(s, largest) {
            rank_failures += 1;
        }
        if smallest < min_smallest {
            min_smallest = smallest;
        }
    }
    StabilityReport {
        trials,
        rank_failures,
        min_smallest_singular_value: if trials == 0 { 0.0 } else { min_smallest },
        margin_histogram: MarginSummary::from_steps(steps),
    }
}

// ---------------------------------------------------------------------------
// almost-vanishing score budget
// ---------------------------------------------------------------------------

fn score_budget(g: &AlmostVanishingPoly, x: &EmpiricalPointSet) -> f64 {
    x.len() as f64 * f64::from(g.degree) * x.eps_sum()
}

/// Checks `score(g) < s * deg(g) * sum(eps)` for every computed polynomial.
///
/// The budget is only meaningful for coordinates inside the unit box and a
/// nonzero tolerance; outside those hypotheses the check is skipped.
#[must_use]
pub fn check_p1(result: &NbmResult, x: &EmpiricalPointSet) -> CheckOutcome {
    if !result.diagnostics.coordinates_in_unit_box {
        return CheckOutcome::Skipped {
            reason: "coordinates leave the unit box; the score budget does not apply".into(),
        };
    }
    if x.eps_sum() == 0.0 {
        return CheckOutcome::Skipped {
            reason: "zero tolerance: the score budget is empty".into(),
        };
    }
    for g in &result.polynomials {
        let budget = score_budget(g, x);
        if g.score >= budget {
            return CheckOutcome::Failed {
                detail: format!(
                    "score {:.3e} of {} reaches its budget {budget:.3e}",
                    g.score, g.leading_term
                ),
            };
        }
    }
    CheckOutcome::Passed
}

/// Re-scores every polynomial at one sampled admissible perturbation.
///
/// Moving every coordinate by less than its tolerance can add at most another
/// unit-box score budget to first order, so the perturbed budget is doubled.
#[must_use]
pub fn check_p1_perturbed(result: &NbmResult, x: &EmpiricalPointSet, seed: u64) -> CheckOutcome {
    if !result.diagnostics.coordinates_in_unit_box {
        return CheckOutcome::Skipped {
            reason: "coordinates leave the unit box; the score budget does not apply".into(),
        };
    }
    if x.eps_sum() == 0.0 {
        return CheckOutcome::Skipped {
            reason: "zero tolerance: the score budget is empty".into(),
        };
    }
    let moved = match perturb(x, &sample_admissible(x, seed)) {
        Ok(moved) => moved,
        Err(err) => {
            return CheckOutcome::Failed {
                detail: err.to_string(),
            }
        }
    };
    for g in &result.polynomials {
        let budget = 2.0 * score_budget(g, x);
        let moved_score = score(g, &moved);
        if moved_score >= budget {
            return CheckOutcome::Failed {
                detail: format!(
                    "perturbed score {moved_score:.3e} of {} reaches its budget {budget:.3e}",
                    g.leading_term
                ),
            };
        }
    }
    CheckOutcome::Passed
}

// ---------------------------------------------------------------------------
// vanishing on a claimed perturbed zero set
// ---------------------------------------------------------------------------

/// True iff `claimed_zero_set` is an admissible perturbation of `x` and every
/// polynomial evaluates below `rel_tol * ||coefficients||` at every claimed zero.
pub fn check_p2_on_zero_set(
    polys: &[AlmostVanishingPoly],
    claimed_zero_set: &EmpiricalPointSet,
    x: &EmpiricalPointSet,
    rel_tol: f64,
) -> Result<bool> {
    if claimed_zero_set.len() != x.len() || claimed_zero_set.n_vars() != x.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "claimed zero set is {}x{}, input is {}x{}",
            claimed_zero_set.len(),
            claimed_zero_set.n_vars(),
            x.len(),
            x.n_vars()
        )));
    }
    let offsets: Vec<Vec<f64>> = (0..x.len())
        .map(|i| {
            (0..x.n_vars())
                .map(|k| claimed_zero_set.coordinate(i, k) - x.coordinate(i, k))
                .collect()
        })
        .collect();
    match PerturbationSample::new(offsets, x) {
        Ok(_) => {}
        Err(Error::InadmissiblePerturbation(_)) => return Ok(false),
        Err(err) => return Err(err),
    }
    for g in polys {
        let limit = rel_tol * g.coefficient_norm();
        for i in 0..claimed_zero_set.len() {
            if g.evaluate_at(&claimed_zero_set.point(i)).abs() > limit {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// distance to the border-basis coefficients
// ---------------------------------------------------------------------------

/// Distance of one polynomial's coefficients from its border interpolant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorderDistance {
    /// Leading term of the polynomial compared.
    pub leading_term: PowerProduct,
    /// Relative coefficient distance `||c_border - c|| / ||c||`.
    pub distance: f64,
    /// Allowed distance `deg(g) * cond(M) * sum(eps)` plus a roundoff floor.
    pub bound: f64,
    /// Whether `distance <= bound`.
    pub passed: bool,
}

/// Border-comparison report; empty `entries` with a reason when skipped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorderReport {
    /// Reason the comparison did not apply, if any.
    pub skipped: Option<String>,
    /// Two-norm condition number of the order ideal's evaluation matrix.
    pub condition_number: f64,
    /// Per-polynomial distances.
    pub entries: Vec<BorderDistance>,
}

impl BorderReport {
    /// True when every compared polynomial sits within its distance bound.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Compares each polynomial against the exact interpolant of its leading term
/// on the order ideal (the border-basis polynomial for that term).
///
/// Requires the order ideal to index all points (`#O = s`), so that the
/// interpolation system is square and invertible.
pub fn check_p3_border(result: &NbmResult, x: &EmpiricalPointSet) -> Result<BorderReport> {
    let s = x.len();
    if result.order_ideal.len() != s {
        return Ok(BorderReport {
            skipped: Some(format!(
                "order ideal has {} elements for {s} points; the interpolation system is not square",
                result.order_ideal.len()
            )),
            condition_number: 0.0,
            entries: Vec::new(),
        });
    }
    let m = eval_matrix(result.order_ideal.terms(), x);
    let (smallest, largest) = singular_extremes(m.entries());
    let threshold = rank_threshold(s, largest);
    if smallest <= threshold {
        return Err(Error::RankDeficient {
            smallest,
            threshold,
        });
    }
    let condition_number = largest / smallest;
    let lu = m.entries().clone().lu();
    let mut entries = Vec::with_capacity(result.polynomials.len());
    for g in &result.polynomials {
        let rhs = eval_vector(&g.leading_term, x);
        let beta = lu.solve(&rhs).ok_or(Error::RankDeficient {
            smallest,
            threshold,
        })?;
        // border support: leading term, then the full order ideal descending
        let mut gap_sq = 0.0;
        for (j, term) in result.order_ideal.terms().iter().enumerate() {
            let border_coeff = -beta[j];
            let got = g.coefficient_of(term).unwrap_or(0.0);
            gap_sq += (border_coeff - got).powi(2);
        }
        let distance = gap_sq.sqrt() / g.coefficient_norm();
        let bound = f64::from(g.degree) * condition_number * x.eps_sum()
            + 64.0 * s as f64 * f64::EPSILON * condition_number;
        entries.push(BorderDistance {
            leading_term: g.leading_term.clone(),
            distance,
            bound,
            passed: distance <= bound,
        });
    }
    Ok(BorderReport {
        skipped: None,
        condition_number,
        entries,
    })
}

// ---------------------------------------------------------------------------
// brute-force dependence oracle
// ---------------------------------------------------------------------------

/// Perturbation coordinates that can actually move (nonzero tolerance).
const ORACLE_DIMENSION_CAP: usize = 8;
const ORACLE_CELL_CAP: u128 = 4_000_000;

/// Smallest residual norm of fitting `t` on the order ideal over the open
/// admissible box, found by grid search plus local pattern refinement.
///
/// Leading terms of the computed basis should admit near-zero minima; order
/// ideal members should stay bounded away from zero.
pub fn dependence_oracle(
    x: &EmpiricalPointSet,
    o: &OrderIdealState,
    t: &PowerProduct,
    grid_density: usize,
) -> Result<f64> {
    if o.len() > x.len() {
        return Err(Error::DimensionMismatch(format!(
            "order ideal has {} elements for {} points",
            o.len(),
            x.len()
        )));
    }
    let s = x.len();
    let n = x.n_vars();
    let free: Vec<(usize, usize)> = (0..s)
        .flat_map(|i| (0..n).map(move |k| (i, k)))
        .filter(|&(_, k)| x.tolerance()[k] > 0.0)
        .collect();
    if free.len() > ORACLE_DIMENSION_CAP {
        return Err(Error::TooManyDimensions {
            dims: free.len(),
            cap: ORACLE_DIMENSION_CAP,
        });
    }
    let density = grid_density.max(1);
    let cells = (density as u128).pow(free.len() as u32);
    if cells > ORACLE_CELL_CAP {
        return Err(Error::Config(format!(
            "oracle grid has {cells} cells; lower the density or the tolerance dimensions"
        )));
    }

    let residual_norm = |offsets: &[f64]| -> f64 {
        let rows: Vec<Vec<f64>> = (0..s)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let moved = free
                            .iter()
                            .position(|&(fi, fk)| fi == i && fk == k)
                            .map_or(0.0, |j| offsets[j]);
                        x.coordinate(i, k) + moved
                    })
                    .collect()
            })
            .collect();
        let moved = EmpiricalPointSet::new(rows, x.tolerance().to_vec())
            .expect("offsets stay strictly inside the tolerance box");
        let m = eval_matrix(o.terms(), &moved);
        let b = eval_vector(t, &moved);
        least_squares(&m, &b).map_or(f64::INFINITY, |sol| sol.residual.norm())
    };

    // the unperturbed residual first, so exact dependence is found immediately
    let mut best_offsets = vec![0.0; free.len()];
    let mut best = residual_norm(&best_offsets);

    // interior grid: coordinate j takes eps * (-1 + (2c+1)/density), strictly inside
    let mut counter = vec![0usize; free.len()];
    if !free.is_empty() {
        loop {
            let offsets: Vec<f64> = counter
                .iter()
                .zip(&free)
                .map(|(&c, &(_, k))| x.tolerance()[k] * ((2 * c + 1) as f64 / density as f64 - 1.0))
                .collect();
            let value = residual_norm(&offsets);
            if value < best {
                best = value;
                best_offsets = offsets;
            }
            let mut dim = 0;
            loop {
                counter[dim] += 1;
                if counter[dim] < density {
                    break;
                }
                counter[dim] = 0;
                dim += 1;
                if dim == free.len() {
                    break;
                }
            }
            if dim == free.len() {
                break;
            }
        }
    }

    // local pattern refinement: axis steps, halved whenever no axis improves
    let mut steps: Vec<f64> = free
        .iter()
        .map(|&(_, k)| 2.0 * x.tolerance()[k] / density as f64)
        .collect();
    for _ in 0..50 {
        let mut improved = false;
        for j in 0..free.len() {
            let limit = x.tolerance()[free[j].1] * (1.0 - 1e-12);
            for direction in [1.0, -1.0] {
                let mut candidate = best_offsets.clone();
                candidate[j] = (candidate[j] + direction * steps[j]).clamp(-limit, limit);
                let value = residual_norm(&candidate);
                if value < best {
                    best = value;
                    best_offsets = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            for step in &mut steps {
                *step *= 0.5;
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// first-order predictor convergence
// ---------------------------------------------------------------------------

/// Prediction errors of the first-order sensitivity formulas under halving of
/// the perturbation scale.
///
/// The residual and coefficient channels are judged separately: a square
/// basis, for instance, pins the residual at zero for every input while the
/// coefficients still move, so only the coefficient ratios carry information
/// there.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Perturbation scales tested, descending.
    pub scales: Vec<f64>,
    /// Residual-prediction error at each scale.
    pub residual_errors: Vec<f64>,
    /// Coefficient-prediction error at each scale.
    pub alpha_errors: Vec<f64>,
    /// Consecutive residual error ratios (empty when `residual_exact`).
    pub residual_ratios: Vec<f64>,
    /// Consecutive coefficient error ratios (empty when `alpha_exact`).
    pub alpha_ratios: Vec<f64>,
    /// Residual errors sit at roundoff level; their ratios carry no information.
    pub residual_exact: bool,
    /// Coefficient errors sit at roundoff level; their ratios carry no information.
    pub alpha_exact: bool,
    /// Both channels are at roundoff level.
    pub exact: bool,
}

impl ConvergenceReport {
    /// True when each channel is either exact or has every ratio in `[lo, hi]`.
    #[must_use]
    pub fn quadratic(&self, lo: f64, hi: f64) -> bool {
        let in_window = |ratios: &[f64]| ratios.iter().all(|r| (lo..=hi).contains(r));
        (self.residual_exact || in_window(&self.residual_ratios))
            && (self.alpha_exact || in_window(&self.alpha_ratios))
    }
}

/// Measures how fast the first-order predictors converge as one admissible
/// perturbation direction is scaled by 1, 1/2, 1/4.
///
/// A second-order-accurate predictor shows error ratios near 4; configurations
/// where the fit depends linearly on the perturbation are flagged `exact`.
pub fn first_order_convergence(
    x: &EmpiricalPointSet,
    o: &OrderIdealState,
    t: &PowerProduct,
    seed: u64,
) -> Result<ConvergenceReport> {
    let m = eval_matrix(o.terms(), x);
    let b = eval_vector(t, x);
    let sol = least_squares(&m, &b)?;
    let direction = sample_admissible(x, seed);

    let scales = vec![1.0, 0.5, 0.25];
    let mut residual_errors = Vec::with_capacity(scales.len());
    let mut alpha_errors = Vec::with_capacity(scales.len());
    for &h in &scales {
        let e = direction.scaled(h);
        let predicted = first_order_deltas(x, &m, t, &sol, &e)?;
        let moved = perturb(x, &e)?;
        let m2 = eval_matrix(o.terms(), &moved);
        let sol2 = least_squares(&m2, &eval_vector(t, &moved))?;
        residual_errors.push((&sol2.residual - &sol.residual - predicted.delta_residual).norm());
        alpha_errors.push((&sol2.alpha - &sol.alpha - predicted.delta_alpha).norm());
    }

    // below these scales the "error" is dominated by roundoff, not curvature;
    // the residual floor mirrors the backward-error scale of computing
    // b - M alpha, the coefficient floor the scale of alpha itself
    let residual_noise = 1e-12 * (1.0 + b.norm() + m.entries().norm() * sol.alpha.norm());
    let alpha_noise = 1e-12 * (1.0 + sol.alpha.norm());
    let residual_exact = residual_errors.iter().all(|&err| err <= residual_noise);
    let alpha_exact = alpha_errors.iter().all(|&err| err <= alpha_noise);
    let ratio_chain = |errors: &[f64]| -> Vec<f64> {
        errors
            .windows(2)
            .map(|w| w[0] / w[1].max(f64::MIN_POSITIVE))
            .collect()
    };
    let residual_ratios = if residual_exact {
        Vec::new()
    } else {
        ratio_chain(&residual_errors)
    };
    let alpha_ratios = if alpha_exact {
        Vec::new()
    } else {
        ratio_chain(&alpha_errors)
    };
    Ok(ConvergenceReport {
        scales,
        residual_errors,
        alpha_errors,
        residual_ratios,
        alpha_ratios,
        residual_exact,
        alpha_exact,
        exact: residual_exact && alpha_exact,
    })
}

/// Residual of fitting `t(X)` on the order ideal at the unperturbed points.
pub fn unperturbed_residual(
    x: &EmpiricalPointSet,
    o: &OrderIdealState,
    t: &PowerProduct,
) -> Result<DVector<f64>> {
    let m = eval_matrix(o.terms(), x);
    let b = eval_vector(t, x);
    Ok(least_squares(&m, &b)?.residual)
}
