//! File-based pipeline: CSV in, JSON/text reports out.
//!
//! The same entry points the `nbm` binary uses are callable as a library.
//! This example writes a small CSV, builds a run configuration, and emits a
//! JSON compute report, a text verification report, and an exact-basis
//! report for the identical input.
//!
//! Run with: `cargo run --example file_reports`

use nbm::cli::{cmd_compute, cmd_exact, cmd_verify, Mode, OutputFormat, RunConfig, VerifyChecks};
use nbm::nbm::SeparationPolicy;

fn main() -> nbm::Result<()> {
    let mut path = std::env::temp_dir();
    path.push("nbm-example-aligned.csv");
    std::fs::write(&path, "x,y\n1,1\n3,2\n5.1,3\n")?;

    let config = RunConfig {
        input_path: path.clone(),
        tolerance: Some(vec![0.15, 0.0]),
        ordering: Some("deglex:x,y".into()),
        mode: Mode::Compute,
        output_format: OutputFormat::Json,
        digits: 5,
        unit_box_rescale: false,
        well_separated_policy: SeparationPolicy::Warn,
        seed: 0,
        trials: 1,
    };
    config.validate()?;

    println!("--- compute, JSON ---");
    let mut stdout = std::io::stdout();
    cmd_compute(&config, false, &mut stdout)?;

    println!("--- verify --all, text ---");
    let verify_config = RunConfig {
        mode: Mode::Verify,
        output_format: OutputFormat::Text,
        ..config.clone()
    };
    let checks = VerifyChecks {
        scaling: true,
        translation: true,
        p1: true,
        p3: true,
        convergence: true,
        zero_set: None,
        zero_set_tol: 1e-8,
        rounds: 20,
    };
    let all_passed = cmd_verify(&verify_config, &checks, &mut stdout)?;
    println!("(process exit code would be {})", i32::from(!all_passed));

    println!("--- exact basis, text ---");
    let exact_config = RunConfig {
        mode: Mode::Exact,
        output_format: OutputFormat::Text,
        ..config
    };
    cmd_exact(&exact_config, &mut stdout)?;

    std::fs::remove_file(&path).ok();
    Ok(())
}
