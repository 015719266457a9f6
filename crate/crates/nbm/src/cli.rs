//! Command-line front end: argument parsing, data ingestion, subcommand
//! dispatch, and report emission in text or JSON.
//!
//! Exit codes: `0` success, `1` at least one enabled check failed, `2` the
//! run itself failed (I/O, parsing, rank fault, bad configuration).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{exact_bm, rational_to_string, RationalPointSet};
use crate::monomials::{OrderIdealState, PowerProduct, TermOrdering};
use crate::nbm::{nbm_with_options, AlmostVanishingPoly, NbmOptions, NbmResult, SeparationPolicy};
use crate::numerics::least_squares;
use crate::points::{eval_matrix, eval_vector, EmpiricalPointSet, PointInput};
use crate::verify::{
    check_p1, check_p1_perturbed, check_p2_on_zero_set, check_p3_border, check_scaling_invariance,
    check_translation_invariance, dependence_oracle, first_order_convergence,
    monte_carlo_stability, random_integer_translation, random_power_of_two_scaling, CheckOutcome,
};

/// Top-level argument grammar.
#[derive(Debug, Parser)]
#[command(
    name = "nbm",
    version,
    about = "Order ideals and almost vanishing polynomials for limited-precision point sets"
)]
pub struct Cli {
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Available subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the order ideal and almost vanishing polynomials
    Compute(ComputeArgs),
    /// Exact rational Groebner basis of the vanishing ideal (ignores tolerance)
    Exact(ExactArgs),
    /// Run property checks and report pass/fail per check
    Verify(VerifyArgs),
    /// Monte-Carlo rank stability of the computed order ideal
    Stability(StabilityArgs),
    /// Brute-force minimal residual over the admissible box for one term
    Oracle(OracleArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input points file: CSV rows or JSON {"points": [...], "tolerance": [...]}
    pub input: PathBuf,
    /// Tolerance: one value for all coordinates or a comma-separated list
    #[arg(long, value_name = "EPS[,EPS...]")]
    pub tol: Option<String>,
    /// Term ordering such as `deglex:x,y` or `lex:y,x` (greatest variable first)
    #[arg(long, value_name = "SPEC")]
    pub order: Option<String>,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Decimal digits for coefficients in text reports (1-17)
    #[arg(long, default_value_t = 5)]
    pub digits: usize,
    /// Treat indistinguishable points as an error instead of a diagnostic
    #[arg(long = "well-separated", value_enum, default_value = "warn")]
    pub well_separated: SeparationFlag,
    /// Rescale into the unit box (power-of-two scale, snapped shift) before
    /// classifying; polynomials are re-fitted on the original coordinates
    #[arg(long = "unit-box-rescale")]
    pub unit_box_rescale: bool,
}

/// Arguments of `compute`.
#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
    /// Append the per-candidate classification log to the text report
    #[arg(long = "step-log")]
    pub step_log: bool,
}

/// Arguments of `exact`.
#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
}

/// Arguments of `verify`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
    /// Run every applicable check (default when no check flag is given)
    #[arg(long)]
    pub all: bool,
    /// Order-ideal invariance under random power-of-two scalings
    #[arg(long)]
    pub scaling: bool,
    /// Order-ideal invariance under random integer translations
    #[arg(long)]
    pub translation: bool,
    /// Almost-vanishing score budget (skipped outside the unit box)
    #[arg(long)]
    pub p1: bool,
    /// Border-basis coefficient distances (skipped for non-square systems)
    #[arg(long)]
    pub p3: bool,
    /// Quadratic decay of the first-order sensitivity predictors
    #[arg(long)]
    pub convergence: bool,
    /// Check vanishing on a claimed perturbed zero set from this file
    #[arg(long = "zero-set", value_name = "FILE")]
    pub zero_set: Option<PathBuf>,
    /// Relative evaluation tolerance for --zero-set
    #[arg(long = "zero-set-tol", default_value_t = 1e-8)]
    pub zero_set_tol: f64,
    /// Rounds per invariance check
    #[arg(long, default_value_t = 20)]
    pub rounds: usize,
    /// Seed for random transforms and perturbation directions
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Arguments of `stability`.
#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
    /// Number of admissible perturbations to sample
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Arguments of `oracle`.
#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
    /// Candidate term, e.g. `x`, `x y`, `x^2`
    #[arg(long)]
    pub term: String,
    /// Grid points per free perturbation coordinate
    #[arg(long, default_value_t = 7)]
    pub grid: usize,
}

/// Report format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Machine-readable JSON.
    Json,
    /// Human-readable text.
    Text,
}

/// Separation policy as a command-line value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeparationFlag {
    /// Record violations in the diagnostics and continue.
    Warn,
    /// Refuse to run on indistinguishable points.
    Error,
}

impl From<SeparationFlag> for SeparationPolicy {
    fn from(flag: SeparationFlag) -> Self {
        match flag {
            SeparationFlag::Warn => SeparationPolicy::Warn,
            SeparationFlag::Error => SeparationPolicy::Error,
        }
    }
}

/// What the invocation is computing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Numerical basis computation.
    Compute,
    /// Exact rational basis computation.
    Exact,
    /// Property checks.
    Verify,
    /// Monte-Carlo stability report.
    Stability,
    /// Brute-force dependence search.
    Oracle,
}

/// Resolved configuration shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Points file.
    pub input_path: PathBuf,
    /// Parsed tolerance override (length 1 broadcasts to all coordinates).
    pub tolerance: Option<Vec<f64>>,
    /// Term-ordering spec string, resolved against the data's variable count.
    pub ordering: Option<String>,
    /// Subcommand kind.
    pub mode: Mode,
    /// Report format.
    pub output_format: OutputFormat,
    /// Decimal digits for text reports.
    pub digits: usize,
    /// Rescale into the unit box before classification.
    pub unit_box_rescale: bool,
    /// Behaviour on indistinguishable points.
    pub well_separated_policy: SeparationPolicy,
    /// Seed for randomized checks and sampling.
    pub seed: u64,
    /// Trial count for randomized checks and sampling.
    pub trials: usize,
}

impl RunConfig {
    /// Builds and validates a configuration from shared flags.
    pub fn from_common(common: &CommonArgs, mode: Mode, seed: u64, trials: usize) -> Result<Self> {
        let tolerance = common.tol.as_deref().map(parse_tolerance).transpose()?;
        let config = Self {
            input_path: common.input.clone(),
            tolerance,
            ordering: common.order.clone(),
            mode,
            output_format: common.format,
            digits: common.digits,
            unit_box_rescale: common.unit_box_rescale,
            well_separated_policy: common.well_separated.into(),
            seed,
            trials,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks the field invariants.
    pub fn validate(&self) -> Result<()> {
        if !(1..=17).contains(&self.digits) {
            return Err(Error::Config(format!(
                "digits must lie in 1..=17, got {}",
                self.digits
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if let Some(tol) = &self.tolerance {
            if tol.is_empty() {
                return Err(Error::Config("tolerance list is empty".into()));
            }
        }
        Ok(())
    }
}

/// Parses `0.15,0` or a single scalar into a tolerance vector.
pub fn parse_tolerance(text: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|piece| {
            let trimmed = piece.trim();
            trimmed
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad tolerance entry `{trimmed}`")))
        })
        .collect::<Result<Vec<f64>>>()?;
    for &v in &values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Parse(format!(
                "tolerance entries must be finite and >= 0, got {v}"
            )));
        }
    }
    Ok(values)
}

/// Loads the input file and applies the tolerance override.
pub fn load_points(config: &RunConfig) -> Result<EmpiricalPointSet> {
    PointInput::from_path(&config.input_path)?.into_point_set(config.tolerance.clone())
}

/// Resolves the ordering spec against the data's variable count.
pub fn resolve_ordering(spec: Option<&str>, n_vars: usize) -> Result<TermOrdering> {
    match spec {
        Some(text) => TermOrdering::parse(text, n_vars),
        None => Ok(TermOrdering::deglex(n_vars)),
    }
}

// ---------------------------------------------------------------------------
// unit-box rescaling
// ---------------------------------------------------------------------------

/// Affine map `x' = (x + shift) * scale` taking all coordinates into `[-1, 1]`.
///
/// Scales are powers of two and shifts are snapped to a `2^-20` grid, so the
/// transform introduces at most one rounding per coordinate and the order
/// ideal matches the untransformed run's except in borderline classifications.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitBoxTransform {
    /// Per-coordinate shift applied before scaling.
    pub shift: Vec<f64>,
    /// Per-coordinate power-of-two scale factor.
    pub scale: Vec<f64>,
}

impl UnitBoxTransform {
    const SNAP: f64 = 1_048_576.0; // 2^20

    /// Centers and shrinks the coordinate ranges of `x` into the unit box.
    #[must_use]
    pub fn for_points(x: &EmpiricalPointSet) -> Self {
        let n = x.n_vars();
        let mut shift = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        for k in 0..n {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for i in 0..x.len() {
                lo = lo.min(x.coordinate(i, k));
                hi = hi.max(x.coordinate(i, k));
            }
            let center = (lo + hi) / 2.0;
            let snapped = (center * Self::SNAP).round() / Self::SNAP;
            let spread = (0..x.len())
                .map(|i| (x.coordinate(i, k) - snapped).abs())
                .fold(0.0f64, f64::max);
            let factor = if spread == 0.0 {
                1.0
            } else {
                // spread in [2^e, 2^(e+1)) maps to [1/2, 1)
                2.0f64.powi(-(spread.log2().floor() as i32 + 1))
            };
            shift.push(-snapped);
            scale.push(factor);
        }
        Self { shift, scale }
    }

    /// Applies the transform; the tolerance scales along with the coordinates.
    pub fn apply(&self, x: &EmpiricalPointSet) -> Result<EmpiricalPointSet> {
        x.translate(&self.shift)?.scale(&self.scale)
    }
}

/// Re-fits every polynomial's coefficients on `original`, keeping the order
/// ideal, supports, and step decisions of the (transformed) run.
pub fn refit_on_original(
    run: &NbmResult,
    original: &EmpiricalPointSet,
    ordering: &TermOrdering,
) -> Result<NbmResult> {
    let mut polynomials = Vec::with_capacity(run.polynomials.len());
    for g in &run.polynomials {
        let basis = run.basis_before(&g.leading_term, ordering);
        let m = eval_matrix(&basis, original);
        let b = eval_vector(&g.leading_term, original);
        let sol = least_squares(&m, &b)?;
        polynomials.push(AlmostVanishingPoly::from_fit(&g.leading_term, &basis, &sol));
    }
    Ok(NbmResult {
        order_ideal: run.order_ideal.clone(),
        polynomials,
        steps: run.steps.clone(),
        diagnostics: run.diagnostics,
    })
}

/// Loads points, resolves the ordering, and runs the basis loop per config.
///
/// With `unit_box_rescale` the classification happens on the boxed
/// coordinates and the returned polynomials are re-fitted on the originals.
pub fn compute_with_config(
    config: &RunConfig,
) -> Result<(EmpiricalPointSet, TermOrdering, NbmResult)> {
    let x = load_points(config)?;
    let ordering = resolve_ordering(config.ordering.as_deref(), x.n_vars())?;
    let options = NbmOptions {
        separation: config.well_separated_policy,
    };
    let result = if config.unit_box_rescale {
        let boxed = UnitBoxTransform::for_points(&x).apply(&x)?;
        let run = nbm_with_options(&boxed, &ordering, options)?;
        refit_on_original(&run, &x, &ordering)?
    } else {
        nbm_with_options(&x, &ordering, options)?
    };
    Ok((x, ordering, result))
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

fn render_tolerance(x: &EmpiricalPointSet) -> String {
    let parts: Vec<String> = x.tolerance().iter().map(ToString::to_string).collect();
    parts.join(", ")
}

/// Runs the numerical computation and writes the report.
pub fn cmd_compute(config: &RunConfig, step_log: bool, out: &mut dyn Write) -> Result<()> {
    let (x, ordering, result) = compute_with_config(config)?;
    match config.output_format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
        }
        OutputFormat::Text => {
            writeln!(out, "points: {} in {} variables", x.len(), x.n_vars())?;
            writeln!(out, "tolerance: {}", render_tolerance(&x))?;
            writeln!(out, "ordering: {}", ordering.render())?;
            writeln!(out, "order ideal: {}", result.order_ideal.render())?;
            for (idx, g) in result.polynomials.iter().enumerate() {
                writeln!(out, "g{} = {}", idx + 1, g.render(config.digits))?;
                writeln!(
                    out,
                    "     leading term {}, degree {}, score {:.prec$e}",
                    g.leading_term,
                    g.degree,
                    g.score,
                    prec = config.digits
                )?;
            }
            let d = result.diagnostics;
            writeln!(
                out,
                "diagnostics: unit_box={} well_separated={} quotient_basis={}",
                d.coordinates_in_unit_box, d.well_separated, d.quotient_basis
            )?;
            if step_log {
                for step in &result.steps {
                    writeln!(out, "step {}: {:?}", step.term, step.decision)?;
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ExactPolyReport {
    leading_term: String,
    support: Vec<String>,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct ExactReport {
    order_ideal: Vec<String>,
    polynomials: Vec<ExactPolyReport>,
}

/// Runs the exact rational computation and writes the report.
pub fn cmd_exact(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let input = PointInput::from_path(&config.input_path)?;
    let x = RationalPointSet::from_decimal_rows(input.rows())?;
    let ordering = resolve_ordering(config.ordering.as_deref(), x.n_vars())?;
    let result = exact_bm(&x, &ordering)?;
    match config.output_format {
        OutputFormat::Json => {
            let report = ExactReport {
                order_ideal: result
                    .order_ideal
                    .terms()
                    .iter()
                    .map(PowerProduct::render)
                    .collect(),
                polynomials: result
                    .polynomials
                    .iter()
                    .map(|g| ExactPolyReport {
                        leading_term: g.leading_term.render(),
                        support: g.support.iter().map(PowerProduct::render).collect(),
                        coefficients: g.coefficients.iter().map(rational_to_string).collect(),
                    })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "points: {} in {} variables (exact rational)",
                x.len(),
                x.n_vars()
            )?;
            writeln!(out, "ordering: {}", ordering.render())?;
            writeln!(out, "order ideal: {}", result.order_ideal.render())?;
            for (idx, g) in result.polynomials.iter().enumerate() {
                writeln!(out, "g{} = {}", idx + 1, g.render())?;
            }
        }
    }
    Ok(())
}

/// Which verify checks are enabled.
#[derive(Debug, Clone)]
pub struct VerifyChecks {
    /// Scaling-invariance rounds.
    pub scaling: bool,
    /// Translation-invariance rounds.
    pub translation: bool,
    /// Score-budget check.
    pub p1: bool,
    /// Border-distance check.
    pub p3: bool,
    /// Predictor-convergence check.
    pub convergence: bool,
    /// Claimed zero set to test, if any.
    pub zero_set: Option<PathBuf>,
    /// Relative evaluation tolerance for the zero-set check.
    pub zero_set_tol: f64,
    /// Rounds per invariance check.
    pub rounds: usize,
}

impl VerifyChecks {
    fn from_args(args: &VerifyArgs) -> Self {
        let any_flag = args.scaling || args.translation || args.p1 || args.p3 || args.convergence;
        let everything = args.all || !any_flag;
        Self {
            scaling: everything || args.scaling,
            translation: everything || args.translation,
            p1: everything || args.p1,
            p3: everything || args.p3,
            convergence: everything || args.convergence,
            zero_set: args.zero_set.clone(),
            zero_set_tol: args.zero_set_tol,
            rounds: args.rounds,
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    name: &'static str,
    #[serde(flatten)]
    outcome: CheckOutcome,
}

#[derive(Serialize)]
struct VerifyReport {
    checks: Vec<CheckReport>,
    passed: bool,
}

fn outcome_line(report: &CheckReport) -> String {
    match &report.outcome {
        CheckOutcome::Passed => format!("check {}: pass", report.name),
        CheckOutcome::Failed { detail } => format!("check {}: FAIL — {detail}", report.name),
        CheckOutcome::Skipped { reason } => format!("check {}: skip — {reason}", report.name),
    }
}

/// Runs the enabled property checks; `Ok(true)` when none failed.
pub fn cmd_verify(config: &RunConfig, checks: &VerifyChecks, out: &mut dyn Write) -> Result<bool> {
    let mut x = load_points(config)?;
    if config.unit_box_rescale {
        x = UnitBoxTransform::for_points(&x).apply(&x)?;
    }
    let ordering = resolve_ordering(config.ordering.as_deref(), x.n_vars())?;
    let options = NbmOptions {
        separation: config.well_separated_policy,
    };
    let result = nbm_with_options(&x, &ordering, options)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut reports = Vec::new();

    if checks.scaling {
        let mut outcome = CheckOutcome::Passed;
        for round in 0..checks.rounds {
            let d = random_power_of_two_scaling(x.n_vars(), &mut rng);
            if !check_scaling_invariance(&x, &d, &ordering)? {
                outcome = CheckOutcome::Failed {
                    detail: format!("round {round}: scaling by {d:?} changed the order ideal"),
                };
                break;
            }
        }
        reports.push(CheckReport {
            name: "scaling-invariance",
            outcome,
        });
    }
    if checks.translation {
        let mut outcome = CheckOutcome::Passed;
        for round in 0..checks.rounds {
            let v = random_integer_translation(x.n_vars(), &mut rng);
            if !check_translation_invariance(&x, &v, &ordering)? {
                outcome = CheckOutcome::Failed {
                    detail: format!("round {round}: translating by {v:?} changed the order ideal"),
                };
                break;
            }
        }
        reports.push(CheckReport {
            name: "translation-invariance",
            outcome,
        });
    }
    if checks.p1 {
        reports.push(CheckReport {
            name: "score-budget",
            outcome: check_p1(&result, &x),
        });
        reports.push(CheckReport {
            name: "score-budget-perturbed",
            outcome: check_p1_perturbed(&result, &x, config.seed),
        });
    }
    if let Some(path) = &checks.zero_set {
        let claimed = PointInput::from_path(path)?.into_point_set(Some(x.tolerance().to_vec()))?;
        let ok = check_p2_on_zero_set(&result.polynomials, &claimed, &x, checks.zero_set_tol)?;
        let outcome = if ok {
            CheckOutcome::Passed
        } else {
            CheckOutcome::Failed {
                detail: format!(
                    "claimed zero set is inadmissible or some polynomial exceeds {:.1e} * ||c|| on it",
                    checks.zero_set_tol
                ),
            }
        };
        reports.push(CheckReport {
            name: "zero-set",
            outcome,
        });
    }
    if checks.p3 {
        let border = check_p3_border(&result, &x)?;
        let outcome = match border.skipped {
            Some(reason) => CheckOutcome::Skipped { reason },
            None if border.passed() => CheckOutcome::Passed,
            None => {
                let worst = border
                    .entries
                    .iter()
                    .max_by(|a, b| a.distance.total_cmp(&b.distance))
                    .expect("non-skipped border report has entries");
                CheckOutcome::Failed {
                    detail: format!(
                        "border distance {:.3e} of {} exceeds its bound {:.3e}",
                        worst.distance, worst.leading_term, worst.bound
                    ),
                }
            }
        };
        reports.push(CheckReport {
            name: "border-distance",
            outcome,
        });
    }
    if checks.convergence {
        let mut outcome = CheckOutcome::Passed;
        if result.polynomials.is_empty() {
            outcome = CheckOutcome::Skipped {
                reason: "no polynomials to test".into(),
            };
        }
        for (idx, g) in result.polynomials.iter().enumerate() {
            let basis = result.basis_before(&g.leading_term, &ordering);
            let o = OrderIdealState::from_terms(basis, &ordering)?;
            let report =
                first_order_convergence(&x, &o, &g.leading_term, config.seed + idx as u64)?;
            if !report.quadratic(3.0, 5.0) {
                outcome = CheckOutcome::Failed {
                    detail: format!(
                        "term {}: ratios {:?} / {:?} leave [3, 5]",
                        g.leading_term, report.residual_ratios, report.alpha_ratios
                    ),
                };
                break;
            }
        }
        reports.push(CheckReport {
            name: "predictor-convergence",
            outcome,
        });
    }

    let passed = reports.iter().all(|r| r.outcome.is_ok());
    match config.output_format {
        OutputFormat::Json => {
            let report = VerifyReport {
                checks: reports,
                passed,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Text => {
            for report in &reports {
                writeln!(out, "{}", outcome_line(report))?;
            }
            writeln!(out, "verdict: {}", if passed { "pass" } else { "FAIL" })?;
        }
    }
    Ok(passed)
}

/// Runs the Monte-Carlo stability report.
pub fn cmd_stability(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let mut x = load_points(config)?;
    if config.unit_box_rescale {
        x = UnitBoxTransform::for_points(&x).apply(&x)?;
    }
    let ordering = resolve_ordering(config.ordering.as_deref(), x.n_vars())?;
    let options = NbmOptions {
        separation: config.well_separated_policy,
    };
    let result = nbm_with_options(&x, &ordering, options)?;
    let report = monte_carlo_stability(
        &x,
        &result.order_ideal,
        &result.steps,
        config.trials,
        config.seed,
    );
    match config.output_format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Text => {
            writeln!(out, "order ideal: {}", result.order_ideal.render())?;
            writeln!(out, "trials: {}", report.trials)?;
            writeln!(out, "rank failures: {}", report.rank_failures)?;
            writeln!(
                out,
                "min smallest singular value: {:.prec$e}",
                report.min_smallest_singular_value,
                prec = config.digits
            )?;
            let m = &report.margin_histogram;
            writeln!(
                out,
                "margins: count {}, min {:.prec$e}, max {:.prec$e}, mean {:.prec$e}",
                m.count,
                m.min,
                m.max,
                m.mean,
                prec = config.digits
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleReport {
    term: String,
    classification: &'static str,
    minimum: f64,
    grid_density: usize,
}

/// Runs the brute-force dependence search for one term.
pub fn cmd_oracle(config: &RunConfig, term: &str, grid: usize, out: &mut dyn Write) -> Result<()> {
    let x = load_points(config)?;
    let ordering = resolve_ordering(config.ordering.as_deref(), x.n_vars())?;
    let options = NbmOptions {
        separation: config.well_separated_policy,
    };
    let result = nbm_with_options(&x, &ordering, options)?;
    let t = PowerProduct::parse(term, x.n_vars())?;
    let basis = result.basis_before(&t, &ordering);
    let o = OrderIdealState::from_terms(basis, &ordering)?;
    let minimum = dependence_oracle(&x, &o, &t, grid)?;
    let classification = if result.order_ideal.contains(&t) {
        "order_ideal"
    } else if result.leading_terms().contains(&t) {
        "leading_term"
    } else {
        "unprocessed"
    };
    match config.output_format {
        OutputFormat::Json => {
            let report = OracleReport {
                term: t.render(),
                classification,
                minimum,
                grid_density: grid,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Text => {
            writeln!(out, "term {} ({classification})", t.render())?;
            writeln!(out, "basis: {}", o.render())?;
            writeln!(
                out,
                "minimum residual norm over the admissible box: {:.prec$e}",
                minimum,
                prec = config.digits
            )?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Compute(args) => {
            let config = RunConfig::from_common(&args.common, Mode::Compute, 0, 1)?;
            cmd_compute(&config, args.step_log, out)?;
            Ok(true)
        }
        Command::Exact(args) => {
            let config = RunConfig::from_common(&args.common, Mode::Exact, 0, 1)?;
            cmd_exact(&config, out)?;
            Ok(true)
        }
        Command::Verify(args) => {
            let config =
                RunConfig::from_common(&args.common, Mode::Verify, args.seed, args.rounds.max(1))?;
            let checks = VerifyChecks::from_args(&args);
            cmd_verify(&config, &checks, out)
        }
        Command::Stability(args) => {
            let config =
                RunConfig::from_common(&args.common, Mode::Stability, args.seed, args.trials)?;
            cmd_stability(&config, out)?;
            Ok(true)
        }
        Command::Oracle(args) => {
            let config = RunConfig::from_common(&args.common, Mode::Oracle, 0, 1)?;
            cmd_oracle(&config, &args.term, args.grid, out)?;
            Ok(true)
        }
    }
}

/// Executes a parsed invocation; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(error) => {
            let _ = writeln!(err, "error: {error}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, contents: &str) -> PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!("nbm-cli-{}-{name}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn aligned_csv() -> PathBuf {
        write_temp("aligned.csv", "x,y\n1,1\n3,2\n5.1,3\n")
    }

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::parse_from(args);
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn tolerance_parsing_accepts_scalars_and_lists() {
        assert_eq!(parse_tolerance("0.15,0").unwrap(), vec![0.15, 0.0]);
        assert_eq!(parse_tolerance("1e-4").unwrap(), vec![1e-4]);
        assert!(parse_tolerance("0.1,oops").is_err());
        assert!(parse_tolerance("-0.1").is_err());
        assert!(parse_tolerance("inf").is_err());
    }

    #[test]
    fn config_invariants_are_enforced() {
        let common = CommonArgs {
            input: PathBuf::from("pts.csv"),
            tol: Some("0.1".into()),
            order: None,
            format: OutputFormat::Text,
            digits: 5,
            well_separated: SeparationFlag::Warn,
            unit_box_rescale: false,
        };
        assert!(RunConfig::from_common(&common, Mode::Compute, 0, 1).is_ok());
        let mut bad_digits = RunConfig::from_common(&common, Mode::Compute, 0, 1).unwrap();
        bad_digits.digits = 0;
        assert!(bad_digits.validate().is_err());
        bad_digits.digits = 18;
        assert!(bad_digits.validate().is_err());
        let mut bad_trials = RunConfig::from_common(&common, Mode::Stability, 0, 1).unwrap();
        bad_trials.trials = 0;
        assert!(bad_trials.validate().is_err());
    }

    #[test]
    fn compute_json_round_trips_and_matches_the_text_decisions() {
        let path = aligned_csv();
        let path = path.to_str().unwrap();
        let (code, json_out, err) = run_cli(&[
            "nbm", "compute", path, "--tol", "0.15,0", "--format", "json",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        let parsed: NbmResult = serde_json::from_str(&json_out).unwrap();
        assert_eq!(parsed.order_ideal.render(), "{ 1, y, y^2 }");
        assert_eq!(parsed.polynomials.len(), 2);

        let (code, text_out, _) = run_cli(&[
            "nbm",
            "compute",
            path,
            "--tol",
            "0.15,0",
            "--format",
            "text",
            "--step-log",
        ]);
        assert_eq!(code, 0);
        assert!(
            text_out.contains("order ideal: { 1, y, y^2 }"),
            "{text_out}"
        );
        assert!(
            text_out.contains("g1 = x - 2.05000 y + 1.06667"),
            "{text_out}"
        );
        assert!(text_out.contains("step x: Dependent"), "{text_out}");
        assert!(text_out.contains("step y^2: Independent"), "{text_out}");
        // text and JSON agree on every decision
        for step in &parsed.steps {
            assert!(text_out.contains(&format!("step {}: {:?}", step.term, step.decision)));
        }
    }

    #[test]
    fn exact_reports_the_rational_basis() {
        let path = aligned_csv();
        let (code, out, _) = run_cli(&["nbm", "exact", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("order ideal: { 1, y, x }"), "{out}");
        assert!(out.contains("y^2 - 20 x + 37 y - 18"), "{out}");
        assert!(out.contains("x y - 43 x + 81 y - 39"), "{out}");
        assert!(out.contains("x^2 - 90.1 x + 172.2 y - 83.1"), "{out}");

        let (code, json_out, _) =
            run_cli(&["nbm", "exact", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&json_out).unwrap();
        assert_eq!(value["order_ideal"], serde_json::json!(["1", "y", "x"]));
        assert_eq!(value["polynomials"][2]["coefficients"][1], "-90.1");
    }

    #[test]
    fn verify_all_passes_on_the_aligned_dataset() {
        let path = aligned_csv();
        let (code, out, err) = run_cli(&[
            "nbm",
            "verify",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--all",
        ]);
        assert_eq!(code, 0, "stdout: {out}\nstderr: {err}");
        assert!(out.contains("check scaling-invariance: pass"), "{out}");
        assert!(out.contains("check translation-invariance: pass"), "{out}");
        assert!(out.contains("check score-budget: skip"), "{out}");
        assert!(out.contains("check border-distance: pass"), "{out}");
        assert!(out.contains("check predictor-convergence: pass"), "{out}");
        assert!(out.contains("verdict: pass"), "{out}");
    }

    #[test]
    fn verify_zero_set_failure_sets_exit_code_one() {
        let path = aligned_csv();
        // the original points are not a zero set of the computed polynomials
        let (code, out, _) = run_cli(&[
            "nbm",
            "verify",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--scaling",
            "--zero-set",
            path.to_str().unwrap(),
            "--zero-set-tol",
            "1e-10",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("check zero-set: FAIL"), "{out}");
        assert!(out.contains("verdict: FAIL"), "{out}");
    }

    #[test]
    fn verify_accepts_the_aligned_zero_set_witness() {
        let path = aligned_csv();
        let witness = write_temp(
            "aligned-witness.csv",
            "x,y\n0.983333333333333333,1\n3.033333333333333333,2\n5.083333333333333333,3\n",
        );
        let (code, out, _) = run_cli(&[
            "nbm",
            "verify",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--scaling",
            "--zero-set",
            witness.to_str().unwrap(),
            "--zero-set-tol",
            "1e-10",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("check zero-set: pass"), "{out}");
    }

    #[test]
    fn stability_json_exposes_the_report_fields() {
        let path = aligned_csv();
        let (code, out, _) = run_cli(&[
            "nbm",
            "stability",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--trials",
            "50",
            "--seed",
            "7",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["trials"], 50);
        assert_eq!(value["rank_failures"], 0);
        assert!(value["min_smallest_singular_value"].as_f64().unwrap() > 0.0);
        assert_eq!(value["margin_histogram"]["count"], 15);
    }

    #[test]
    fn oracle_distinguishes_movable_and_frozen_terms() {
        let path = aligned_csv();
        let (code, out, _) = run_cli(&[
            "nbm",
            "oracle",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--term",
            "x",
            "--grid",
            "9",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["classification"], "leading_term");
        assert!(value["minimum"].as_f64().unwrap() < 1e-6, "{value}");

        let (code, out, _) = run_cli(&[
            "nbm",
            "oracle",
            path.to_str().unwrap(),
            "--tol",
            "0.15,0",
            "--term",
            "y",
            "--grid",
            "9",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["classification"], "order_ideal");
        assert!(value["minimum"].as_f64().unwrap() > 1.0, "{value}");
    }

    #[test]
    fn missing_input_exits_with_code_two() {
        let (code, _, err) = run_cli(&["nbm", "compute", "/no/such/file.csv", "--tol", "0.1"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"), "{err}");
    }

    #[test]
    fn unit_box_rescale_keeps_the_order_ideal_and_refits_coefficients() {
        let path = aligned_csv();
        let common = CommonArgs {
            input: path.clone(),
            tol: Some("0.15,0".into()),
            order: None,
            format: OutputFormat::Json,
            digits: 5,
            well_separated: SeparationFlag::Warn,
            unit_box_rescale: true,
        };
        let config = RunConfig::from_common(&common, Mode::Compute, 0, 1).unwrap();
        let (x, _, rescaled) = compute_with_config(&config).unwrap();

        let plain_config = RunConfig {
            unit_box_rescale: false,
            ..config
        };
        let (_, _, plain) = compute_with_config(&plain_config).unwrap();

        assert_eq!(rescaled.order_ideal, plain.order_ideal);
        assert!(rescaled.diagnostics.coordinates_in_unit_box);
        assert!(!x.coordinates_in_unit_box());
        for (a, b) in rescaled.polynomials.iter().zip(&plain.polynomials) {
            assert_eq!(a.support, b.support);
            for (ca, cb) in a.coefficients.iter().zip(&b.coefficients) {
                assert!((ca - cb).abs() < 1e-9, "{ca} vs {cb}");
            }
        }
    }

    #[test]
    fn unit_box_transform_uses_exact_factors() {
        let x = EmpiricalPointSet::new(
            vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.1, 3.0]],
            vec![0.15, 0.0],
        )
        .unwrap();
        let transform = UnitBoxTransform::for_points(&x);
        for &factor in &transform.scale {
            assert_eq!(factor.log2().fract(), 0.0, "{factor} is not a power of two");
        }
        for &shift in &transform.shift {
            assert_eq!(
                (shift * 1_048_576.0).fract(),
                0.0,
                "{shift} is off the snap grid"
            );
        }
        let boxed = transform.apply(&x).unwrap();
        assert!(boxed.coordinates_in_unit_box());
    }
}
