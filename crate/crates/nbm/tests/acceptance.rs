//! Acceptance gate: ten end-to-end checks that pin the library's observable
//! behaviour — golden basis runs, the exact-rational oracle, the vanishing
//! and invariance properties, convergence of the sensitivity predictors, and
//! the structural invariants under fuzzing.
//!
//! Each check prints one `acceptance N (...): pass` line on success; run with
//! `cargo test --test acceptance -- --nocapture` to see all ten.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nbm::exact::{exact_bm, rational_from_decimal, ExactBmResult, RationalPointSet};
use nbm::monomials::{OrderIdealState, PowerProduct, TermOrdering};
use nbm::nbm::{nbm, AlmostVanishingPoly, NbmResult};
use nbm::points::{EmpiricalPointSet, PointInput};
use nbm::verify::{
    check_p1, check_p2_on_zero_set, check_scaling_invariance, check_translation_invariance,
    first_order_convergence, random_integer_translation, random_power_of_two_scaling,
};

// ---------------------------------------------------------------------------
// fixtures and helpers
// ---------------------------------------------------------------------------

fn data_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn load(name: &str, tolerance: &[f64]) -> EmpiricalPointSet {
    PointInput::from_path(&data_path(name))
        .expect("fixture readable")
        .into_point_set(Some(tolerance.to_vec()))
        .expect("fixture well formed")
}

fn pp(exponents: &[u32]) -> PowerProduct {
    PowerProduct::new(exponents.to_vec())
}

fn term(text: &str) -> PowerProduct {
    PowerProduct::parse(text, 2).expect("valid term")
}

fn term_set(names: &[&str]) -> Vec<PowerProduct> {
    names.iter().map(|t| term(t)).collect()
}

/// Twenty noisy samples of the unit circle at equally spaced angles,
/// jitter strictly below `noise`, fixed seed.
fn noisy_circle(noise: f64, seed: u64) -> EmpiricalPointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = 20;
    let rows: Vec<Vec<f64>> = (0..count)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / f64::from(count);
            let jitter = |rng: &mut ChaCha8Rng| (rng.gen::<f64>() * 2.0 - 1.0) * 0.99 * noise;
            vec![
                theta.cos() + jitter(&mut rng),
                theta.sin() + jitter(&mut rng),
            ]
        })
        .collect();
    EmpiricalPointSet::new(rows, vec![noise, noise]).expect("circle fixture valid")
}

/// Asserts that `g` has exactly the expected support and that each
/// coefficient matches within `tol` (absolute).
fn assert_poly_matches(g: &AlmostVanishingPoly, expected: &[(&str, f64)], tol: f64) {
    let expected_terms: Vec<PowerProduct> = expected.iter().map(|(t, _)| term(t)).collect();
    assert_eq!(
        g.support,
        expected_terms,
        "support of {} should be {:?}",
        g.leading_term,
        expected.iter().map(|(t, _)| *t).collect::<Vec<_>>()
    );
    for (text, want) in expected {
        let got = g.coefficient_of(&term(text)).expect("term in support");
        assert!(
            (got - want).abs() <= tol,
            "coefficient of {text} in {}: got {got}, want {want} (tol {tol})",
            g.leading_term
        );
    }
}

/// Structural invariants every run must satisfy; `check_budget` additionally
/// asserts the score budget when the input sits in the unit box.
fn assert_structural_invariants(
    result: &NbmResult,
    x: &EmpiricalPointSet,
    ordering: &TermOrdering,
) {
    // the order ideal is factor-closed and no larger than the point count
    let reconstructed = OrderIdealState::from_terms(result.order_ideal.terms().to_vec(), ordering)
        .expect("order ideal must be factor-closed");
    assert_eq!(&reconstructed, &result.order_ideal);
    assert!(
        result.order_ideal.len() <= x.len(),
        "order ideal has {} terms for {} points",
        result.order_ideal.len(),
        x.len()
    );

    // leading terms are exactly the corners of the order ideal
    let mut corners = result.order_ideal.corner_set();
    let mut leading = result.leading_terms();
    corners.sort_by(|a, b| ordering.compare(a, b));
    leading.sort_by(|a, b| ordering.compare(a, b));
    assert_eq!(leading, corners, "leading terms must equal the corner set");

    // polynomials are monic with strictly descending support inside O
    for g in &result.polynomials {
        assert_eq!(g.coefficients[0], 1.0, "{} is monic", g.leading_term);
        assert_eq!(g.support[0], g.leading_term);
        for w in g.support.windows(2) {
            assert_eq!(
                ordering.compare(&w[0], &w[1]),
                std::cmp::Ordering::Greater,
                "support of {} must descend strictly",
                g.leading_term
            );
        }
        for t in &g.support[1..] {
            assert!(
                result.order_ideal.terms().contains(t),
                "support term {t} of {} must lie in the order ideal",
                g.leading_term
            );
        }
    }

    // score budget on unit-box inputs with a positive tolerance
    if result.diagnostics.coordinates_in_unit_box && x.eps_sum() > 0.0 {
        let outcome = check_p1(result, x);
        assert!(outcome.is_ok(), "score budget violated: {outcome:?}");
    }
}

fn exact_order_ideal(result: &ExactBmResult) -> Vec<PowerProduct> {
    result.order_ideal.terms().to_vec()
}

// ---------------------------------------------------------------------------
// 1. nearly collinear points: golden basis, scores, timing
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_aligned_golden_run() {
    let x = load("aligned.csv", &[0.15, 0.0]);
    let ordering = TermOrdering::deglex(2);
    let started = Instant::now();
    let result = nbm(&x, &ordering).expect("run succeeds");
    let elapsed = started.elapsed();

    assert_eq!(
        result.order_ideal.terms(),
        &[pp(&[0, 0]), pp(&[0, 1]), pp(&[0, 2])]
    );
    assert_eq!(result.polynomials.len(), 2);
    assert_poly_matches(
        &result.polynomials[0],
        &[("x", 1.0), ("y", -2.05), ("1", 1.06667)],
        1e-4,
    );
    assert_poly_matches(
        &result.polynomials[1],
        &[("y^3", 1.0), ("y^2", -6.0), ("y", 11.0), ("1", -6.0)],
        1e-4,
    );
    let score = result.polynomials[0].score;
    assert!(
        (score - 0.0162).abs() <= 2e-4,
        "score {score} should be 0.0162 +- 2e-4"
    );
    assert!(elapsed.as_secs_f64() < 0.1, "run took {elapsed:?}");
    println!("acceptance 1 (aligned golden run): pass");
}

// ---------------------------------------------------------------------------
// 2. hyperbola/circle points at two tolerances
// ---------------------------------------------------------------------------

#[test]
fn acceptance_02_hyperbola_circle_two_tolerances() {
    let ordering = TermOrdering::deglex(2);

    let x = load("hyperbola_circle.csv", &[0.018, 0.018]);
    let started = Instant::now();
    let loose = nbm(&x, &ordering).expect("run succeeds");
    let loose_elapsed = started.elapsed();
    assert_eq!(
        loose.order_ideal.terms(),
        term_set(&["1", "y", "x", "y^2", "y^3"])
    );
    assert_eq!(loose.polynomials.len(), 3);
    assert_poly_matches(
        &loose.polynomials[0],
        &[
            ("x y", 1.0),
            ("y^2", 0.00008),
            ("x", -0.00064),
            ("y", -0.00125),
            ("1", -5.99501),
        ],
        1e-3,
    );
    assert_poly_matches(
        &loose.polynomials[1],
        &[
            ("x^2", 1.0),
            ("y^2", 0.99199),
            ("x", -11.94095),
            ("y", -11.88550),
            ("1", 46.54436),
        ],
        1e-3,
    );
    assert_poly_matches(
        &loose.polynomials[2],
        &[
            ("y^4", 1.0),
            ("y^3", -14.477),
            ("y^2", 76.7241),
            ("x", -14.8620),
            ("y", -188.4194),
            ("1", 214.3446),
        ],
        1e-3,
    );
    assert!(
        loose_elapsed.as_secs_f64() < 0.1,
        "loose run took {loose_elapsed:?}"
    );

    let x = load("hyperbola_circle.csv", &[0.001, 0.001]);
    let started = Instant::now();
    let tight = nbm(&x, &ordering).expect("run succeeds");
    let tight_elapsed = started.elapsed();
    assert_eq!(
        tight.order_ideal.terms(),
        term_set(&["1", "y", "x", "y^2", "x^2"])
    );
    assert_eq!(tight.polynomials.len(), 3);
    assert_poly_matches(
        &tight.polynomials[0],
        &[
            ("x y", 1.0),
            ("y^2", 0.00008),
            ("x", -0.00064),
            ("y", -0.00125),
            ("1", -5.9950),
        ],
        1e-3,
    );
    assert_poly_matches(
        &tight.polynomials[1],
        &[
            ("y^3", 1.0),
            ("x^2", -2.3444),
            ("y^2", -14.3444),
            ("x", 34.1336),
            ("y", 75.1336),
            ("1", -182.1901),
        ],
        1e-3,
    );
    assert_poly_matches(
        &tight.polynomials[2],
        &[
            ("x^3", 1.0),
            ("x^2", -14.3444),
            ("y^2", -2.3444),
            ("x", 75.1336),
            ("y", 34.1336),
            ("1", -182.1901),
        ],
        1e-3,
    );
    assert!(
        tight_elapsed.as_secs_f64() < 0.1,
        "tight run took {tight_elapsed:?}"
    );
    println!("acceptance 2 (hyperbola/circle, both tolerances): pass");
}

// ---------------------------------------------------------------------------
// 3. near-square points: an order ideal no exact run can produce
// ---------------------------------------------------------------------------

#[test]
fn acceptance_03_near_square_unreachable_ideal() {
    let ordering = TermOrdering::deglex(2);
    let x = load("near_square.csv", &[0.12, 0.12]);
    let result = nbm(&x, &ordering).expect("run succeeds");

    let numerical: Vec<PowerProduct> = term_set(&["1", "y", "x", "x y"]);
    assert_eq!(result.order_ideal.terms(), numerical);
    assert_eq!(result.polynomials.len(), 2);
    assert_poly_matches(
        &result.polynomials[0],
        &[("y^2", 1.0), ("x", -0.19998), ("y", 0.01980), ("1", -1.01)],
        1e-4,
    );
    assert_poly_matches(
        &result.polynomials[1],
        &[
            ("x^2", 1.0),
            ("x y", -0.20199),
            ("x", 0.00201),
            ("y", 0.01999),
            ("1", -0.98980),
        ],
        1e-4,
    );

    // the same coordinates in exact arithmetic, under all four orderings,
    // give one of the four classical quotient bases and never {1, y, x, xy}
    let rows: Vec<Vec<String>> = ["1.1,1.1", "0.9,-1.1", "-0.9,0.9", "-1.1,-0.9"]
        .iter()
        .map(|row| row.split(',').map(str::to_owned).collect())
        .collect();
    let exact_points = RationalPointSet::from_decimal_rows(&rows).expect("rational rows");
    let classical: Vec<Vec<PowerProduct>> = vec![
        term_set(&["1", "x", "x^2", "x^3"]),
        term_set(&["1", "y", "y^2", "y^3"]),
        term_set(&["1", "y", "x", "x^2"]),
        term_set(&["1", "y", "x", "y^2"]),
    ];
    let orderings = ["deglex:x,y", "deglex:y,x", "lex:x,y", "lex:y,x"];
    for spec in orderings {
        let ord = TermOrdering::parse(spec, 2).expect("valid ordering");
        let exact = exact_bm(&exact_points, &ord).expect("exact run succeeds");
        let mut basis = exact_order_ideal(&exact);
        basis.sort_by(|a, b| ordering.compare(a, b));
        assert!(
            classical.contains(&basis),
            "exact basis under {spec} should be one of the four classical ones, got {basis:?}"
        );
        assert_ne!(
            basis, numerical,
            "exact run under {spec} must not reach the numerical ideal"
        );
    }
    println!("acceptance 3 (near-square unreachable ideal): pass");
}

// ---------------------------------------------------------------------------
// 4. exact rational oracle reproduces both reference bases bit-exactly
// ---------------------------------------------------------------------------

#[test]
fn acceptance_04_exact_oracle_bit_exact() {
    let ordering = TermOrdering::deglex(2);

    let rows: Vec<Vec<String>> = [["1", "1"], ["3", "2"], ["5.1", "3"]]
        .iter()
        .map(|row| row.iter().map(|c| (*c).to_owned()).collect())
        .collect();
    let x = RationalPointSet::from_decimal_rows(&rows).expect("rational rows");
    let result = exact_bm(&x, &ordering).expect("exact run succeeds");
    assert_eq!(exact_order_ideal(&result), term_set(&["1", "y", "x"]));
    assert_eq!(result.polynomials.len(), 3);
    let rat = |text: &str| rational_from_decimal(text).expect("valid decimal");
    let expect_exact = |poly_idx: usize, pairs: &[(&str, &str)]| {
        let g = &result.polynomials[poly_idx];
        for (t, value) in pairs {
            assert_eq!(
                g.coefficient_of(&term(t)).expect("term present"),
                &rat(value),
                "coefficient of {t} in polynomial {poly_idx}"
            );
        }
    };
    expect_exact(0, &[("y^2", "1"), ("x", "-20"), ("y", "37"), ("1", "-18")]);
    expect_exact(1, &[("x y", "1"), ("x", "-43"), ("y", "81"), ("1", "-39")]);
    expect_exact(
        2,
        &[("x^2", "1"), ("x", "-90.1"), ("y", "172.2"), ("1", "-83.1")],
    );

    let rows: Vec<Vec<String>> = [["1", "1"], ["3", "2"], ["5", "3"]]
        .iter()
        .map(|row| row.iter().map(|c| (*c).to_owned()).collect())
        .collect();
    let x = RationalPointSet::from_decimal_rows(&rows).expect("rational rows");
    let result = exact_bm(&x, &ordering).expect("exact run succeeds");
    assert_eq!(exact_order_ideal(&result), term_set(&["1", "y", "y^2"]));
    assert_eq!(result.polynomials.len(), 2);
    let g = &result.polynomials[0];
    assert_eq!(g.coefficient_of(&term("x")).unwrap(), &rat("1"));
    assert_eq!(g.coefficient_of(&term("y")).unwrap(), &rat("-2"));
    assert_eq!(g.coefficient_of(&term("1")).unwrap(), &rat("1"));
    let g = &result.polynomials[1];
    assert_eq!(g.coefficient_of(&term("y^3")).unwrap(), &rat("1"));
    assert_eq!(g.coefficient_of(&term("y^2")).unwrap(), &rat("-6"));
    assert_eq!(g.coefficient_of(&term("y")).unwrap(), &rat("11"));
    assert_eq!(g.coefficient_of(&term("1")).unwrap(), &rat("-6"));
    println!("acceptance 4 (exact oracle bit-exact): pass");
}

// ---------------------------------------------------------------------------
// 5. the computed polynomials vanish on an admissible witness configuration
// ---------------------------------------------------------------------------

#[test]
fn acceptance_05_vanishing_on_admissible_witness() {
    let x = load("aligned.csv", &[0.15, 0.0]);
    let result = nbm(&x, &TermOrdering::deglex(2)).expect("run succeeds");

    // hand-computed zero set of G: x-coordinates moved by less than 0.15,
    // y-coordinates untouched
    let witness = EmpiricalPointSet::new(
        vec![
            vec![59.0 / 60.0, 1.0],
            vec![91.0 / 30.0, 2.0],
            vec![61.0 / 12.0, 3.0],
        ],
        vec![0.15, 0.0],
    )
    .expect("witness well formed");
    let vanishes = check_p2_on_zero_set(&result.polynomials, &witness, &x, 1e-10)
        .expect("comparable point sets");
    assert!(
        vanishes,
        "every polynomial must vanish on the admissible witness"
    );
    println!("acceptance 5 (vanishing on admissible witness): pass");
}

// ---------------------------------------------------------------------------
// 6. noisy circle: the circle equation surfaces first
// ---------------------------------------------------------------------------

#[test]
fn acceptance_06_noisy_circle_recovery() {
    let x = noisy_circle(1e-4, 2026);
    let result = nbm(&x, &TermOrdering::deglex(2)).expect("run succeeds");

    let size = result.order_ideal.len();
    assert!(
        (19..=20).contains(&size),
        "order ideal has {size} terms, expected 19 or 20"
    );

    let g = &result.polynomials[0];
    assert_eq!(g.leading_term, term("x^2"));
    let c_y2 = g.coefficient_of(&term("y^2")).expect("y^2 in support");
    let c_1 = g.coefficient_of(&term("1")).expect("1 in support");
    assert!((c_y2 - 1.0).abs() <= 1e-3, "y^2 coefficient {c_y2}");
    assert!((c_1 + 1.0).abs() <= 1e-3, "constant {c_1}");
    for (t, &c) in g.support.iter().zip(&g.coefficients) {
        if *t != term("x^2") && *t != term("y^2") && *t != term("1") {
            assert!(c.abs() <= 1e-3, "stray coefficient {c} on {t}");
        }
    }
    assert!(g.score <= 5e-4, "score {} should be at most 5e-4", g.score);
    println!("acceptance 6 (noisy circle recovery): pass");
}

// ---------------------------------------------------------------------------
// 7. order ideal invariance under exact scalings and translations
// ---------------------------------------------------------------------------

#[test]
fn acceptance_07_scaling_and_translation_invariance() {
    let ordering = TermOrdering::deglex(2);
    let datasets = vec![
        ("aligned", load("aligned.csv", &[0.15, 0.0])),
        (
            "hyperbola_circle",
            load("hyperbola_circle.csv", &[0.018, 0.018]),
        ),
        ("near_square", load("near_square.csv", &[0.12, 0.12])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, x) in &datasets {
        for round in 0..20 {
            let factors = random_power_of_two_scaling(x.n_vars(), &mut rng);
            assert!(
                check_scaling_invariance(x, &factors, &ordering).expect("scaling comparable"),
                "{name}: order ideal changed under scaling {factors:?} (round {round})"
            );
            let shift = random_integer_translation(x.n_vars(), &mut rng);
            assert!(
                check_translation_invariance(x, &shift, &ordering).expect("translation comparable"),
                "{name}: order ideal changed under translation {shift:?} (round {round})"
            );
        }
    }
    println!("acceptance 7 (scaling/translation invariance, 20 rounds each): pass");
}

// ---------------------------------------------------------------------------
// 8. first-order sensitivity predictors converge at second order
// ---------------------------------------------------------------------------

#[test]
fn acceptance_08_sensitivity_predictor_convergence() {
    let ordering = TermOrdering::deglex(2);

    // the decisive configuration of the aligned run: basis {1, y}, candidate x;
    // only x-coordinates may move and they enter the fit linearly, so the
    // predictors are exact there (better than any finite convergence order)
    let x = load("aligned.csv", &[0.15, 0.0]);
    let o = OrderIdealState::from_terms(term_set(&["1", "y"]), &ordering).expect("factor-closed");
    for seed in 0..10 {
        let report = first_order_convergence(&x, &o, &term("x"), seed).expect("measurable");
        assert!(
            report.quadratic(3.0, 5.0),
            "seed {seed}: predictors neither exact nor quadratic: {report:?}"
        );
    }

    // a genuinely nonlinear configuration must show measurable ratios near 4
    let x = load("hyperbola_circle.csv", &[0.018, 0.018]);
    let o = OrderIdealState::from_terms(term_set(&["1", "y", "x", "y^2"]), &ordering)
        .expect("factor-closed");
    let report = first_order_convergence(&x, &o, &term("x y"), 7).expect("measurable");
    assert!(!report.exact, "curved configuration should not be exact");
    assert!(
        report.quadratic(3.0, 5.0),
        "ratios outside [3, 5]: {report:?}"
    );
    println!("acceptance 8 (sensitivity predictor convergence): pass");
}

// ---------------------------------------------------------------------------
// 9. zero tolerance agrees with the exact rational loop
// ---------------------------------------------------------------------------

#[test]
fn acceptance_09_zero_tolerance_matches_exact_loop() {
    let started = Instant::now();
    let ordering = TermOrdering::deglex(2);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..50 {
        let s = rng.gen_range(1..=6);
        let mut rows: Vec<Vec<i32>> = Vec::with_capacity(s);
        while rows.len() < s {
            let row = vec![rng.gen_range(-200..=200), rng.gen_range(-200..=200)];
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
        // hundredths rendered as exact decimal text, e.g. -150 -> "-1.50"
        let decimal = |k: i32| {
            format!(
                "{}{}.{:02}",
                if k < 0 { "-" } else { "" },
                (k / 100).abs(),
                (k % 100).abs()
            )
        };
        let float_rows: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(|&k| f64::from(k) / 100.0).collect())
            .collect();
        let cell_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|&k| decimal(k)).collect())
            .collect();

        let x = EmpiricalPointSet::new(float_rows, vec![0.0, 0.0]).expect("valid set");
        let numerical = nbm(&x, &ordering).expect("run succeeds");
        let exact_points = RationalPointSet::from_decimal_rows(&cell_rows).expect("rational rows");
        let exact = exact_bm(&exact_points, &ordering).expect("exact run succeeds");

        assert_eq!(
            numerical.order_ideal.terms(),
            exact.order_ideal.terms(),
            "case {case}: order ideals differ for rows {rows:?}"
        );
        assert_eq!(
            numerical.polynomials.len(),
            exact.polynomials.len(),
            "case {case}"
        );
        for (g, h) in numerical.polynomials.iter().zip(&exact.polynomials) {
            assert_eq!(g.support, h.support, "case {case}: supports differ");
            for (&a, b) in g.coefficients.iter().zip(h.coefficients_f64()) {
                assert!(
                    (a - b).abs() <= 1e-10 * (1.0 + b.abs()),
                    "case {case}: coefficient {a} vs exact {b}"
                );
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "50 comparisons took {elapsed:?}"
    );
    println!("acceptance 9 (zero tolerance matches exact loop, 50 sets): pass");
}

// ---------------------------------------------------------------------------
// 10. structural invariants on goldens and 200 fuzz inputs
// ---------------------------------------------------------------------------

#[test]
fn acceptance_10_structural_invariants_and_score_budget() {
    let ordering2 = TermOrdering::deglex(2);
    let goldens = vec![
        (load("aligned.csv", &[0.15, 0.0]), ordering2.clone()),
        (
            load("hyperbola_circle.csv", &[0.018, 0.018]),
            ordering2.clone(),
        ),
        (
            load("hyperbola_circle.csv", &[0.001, 0.001]),
            ordering2.clone(),
        ),
        (load("near_square.csv", &[0.12, 0.12]), ordering2.clone()),
        (noisy_circle(1e-4, 2026), ordering2.clone()),
    ];
    for (x, ordering) in &goldens {
        let result = nbm(x, ordering).expect("golden run succeeds");
        assert_structural_invariants(&result, x, ordering);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut budget_checked = 0usize;
    for case in 0..200 {
        let n = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=8);
        let rows: Vec<Vec<f64>> = (0..s)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())
            .collect();
        let tolerance: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.75) {
                    rng.gen_range(1e-4..=0.1)
                } else {
                    0.0
                }
            })
            .collect();
        let x = EmpiricalPointSet::new(rows, tolerance).expect("fuzz input valid");
        let ordering = TermOrdering::deglex(n);
        let result = match nbm(&x, &ordering) {
            Ok(result) => result,
            Err(err) => panic!("fuzz case {case} failed: {err}"),
        };
        if result.diagnostics.coordinates_in_unit_box && x.eps_sum() > 0.0 {
            budget_checked += 1;
        }
        assert_structural_invariants(&result, &x, &ordering);
    }
    assert!(
        budget_checked >= 100,
        "only {budget_checked} fuzz cases exercised the score budget"
    );
    println!(
        "acceptance 10 (structural invariants, 5 goldens + 200 fuzz inputs, {budget_checked} budget checks): pass"
    );
}
