//! Order ideals and almost vanishing polynomials for limited-precision points.
//!
//! Given `s` points in `R^n` whose coordinates are only trusted up to a
//! componentwise tolerance, the basis loop in [`nbm`] computes a monomial
//! basis `O` of the quotient algebra (an order ideal) together with a set of
//! monic polynomials that almost vanish at the points: each candidate term is
//! fitted on the current basis by least squares, and the residual is compared
//! componentwise against a first-order perturbation bound, so that terms
//! which *could* vanish under some admissible movement of the points are
//! turned into polynomials instead of basis elements.
//!
//! The crate is organized bottom-up:
//!
//! - [`monomials`]: power products, term orderings, order ideals, corner sets;
//! - [`points`]: empirical point sets with tolerances, admissible
//!   perturbations, evaluation vectors and matrices, CSV/JSON ingestion;
//! - [`numerics`]: rank-revealing least squares, orthogonal projectors,
//!   dependence bounds, first-order sensitivity predictors;
//! - [`nbm`]: the basis loop, decision rule, scores, and the JSON result;
//! - [`exact`]: the same loop over exact rationals (zero tolerance), used as
//!   an independent oracle;
//! - [`verify`]: invariance, stability, vanishing, border-distance, and
//!   convergence checks;
//! - [`cli`]: the command-line front end used by the `nbm` binary.
//!
//! The `examples/` directory is the fastest tour: each file is a runnable
//! walkthrough of one capability.
//!
//! ```
//! use nbm::monomials::TermOrdering;
//! use nbm::nbm::nbm;
//! use nbm::points::EmpiricalPointSet;
//!
//! // three nearly collinear points; x is trusted to 0.15, y is exact
//! let x = EmpiricalPointSet::new(
//!     vec![vec![1.0, 1.0], vec![3.0, 2.0], vec![5.1, 3.0]],
//!     vec![0.15, 0.0],
//! )?;
//! let result = nbm(&x, &TermOrdering::deglex(2))?;
//! assert_eq!(result.order_ideal.render(), "{ 1, y, y^2 }");
//! assert_eq!(result.polynomials[0].render(5), "x - 2.05000 y + 1.06667");
//! # Ok::<(), nbm::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod monomials;
pub mod nbm;
pub mod numerics;
pub mod points;
pub mod verify;

pub use error::{Error, Result};
pub use monomials::{OrderIdealState, PowerProduct, TermOrdering};
pub use nbm::{nbm as compute_basis, AlmostVanishingPoly, NbmResult};
pub use points::EmpiricalPointSet;
