//! Limited-precision point sets, admissible perturbations, and evaluation.
//!
//! A point set carries a componentwise tolerance vector: the true but unknown
//! points may sit anywhere inside an open box of half-width `tolerance[k]`
//! around each stored coordinate. Perturbation samples stay strictly inside
//! that box, and evaluation builds the vectors/matrices consumed by the
//! numerical dependence tests.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomials::{FormalPartial, PowerProduct};

/// `s` points in `R^n` with a componentwise tolerance vector.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalPointSet {
    coordinates: DMatrix<f64>,
    tolerance: Vec<f64>,
}

impl EmpiricalPointSet {
    /// Builds a point set from row vectors and a tolerance per coordinate.
    pub fn new(rows: Vec<Vec<f64>>, tolerance: Vec<f64>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Config(
                "point set must contain at least one point".into(),
            ));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Config(
                "points must have at least one coordinate".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has {} coordinates, expected {n}",
                    row.len()
                )));
            }
            for &c in row {
                if !c.is_finite() {
                    return Err(Error::NonFinite(format!("coordinate {c} in point {i}")));
                }
            }
        }
        if tolerance.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "tolerance has {} entries, points have {n} coordinates",
                tolerance.len()
            )));
        }
        for &e in &tolerance {
            if !e.is_finite() || e < 0.0 {
                return Err(Error::Config(format!(
                    "tolerance entries must be finite and >= 0, got {e}"
                )));
            }
        }
        let s = rows.len();
        let coordinates = DMatrix::from_fn(s, n, |i, k| rows[i][k]);
        Ok(Self {
            coordinates,
            tolerance,
        })
    }

    /// Number of points.
    #[must_use]
    pub fn len(&self) -> usize {
        self.coordinates.nrows()
    }

    /// Always false: construction rejects empty sets.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of variables.
    #[must_use]
    pub fn n_vars(&self) -> usize {
        self.coordinates.ncols()
    }

    /// Coordinate `k` of point `i`.
    #[must_use]
    pub fn coordinate(&self, i: usize, k: usize) -> f64 {
        self.coordinates[(i, k)]
    }

    /// Point `i` as a row of coordinates.
    #[must_use]
    pub fn point(&self, i: usize) -> Vec<f64> {
        (0..self.n_vars())
            .map(|k| self.coordinates[(i, k)])
            .collect()
    }

    /// Componentwise tolerance vector.
    #[must_use]
    pub fn tolerance(&self) -> &[f64] {
        &self.tolerance
    }

    /// Largest tolerance entry.
    #[must_use]
    pub fn eps_max(&self) -> f64 {
        self.tolerance.iter().copied().fold(0.0, f64::max)
    }

    /// Sum of the tolerance entries.
    #[must_use]
    pub fn eps_sum(&self) -> f64 {
        self.tolerance.iter().sum()
    }

    /// True when every coordinate lies in `[-1, 1]`.
    #[must_use]
    pub fn coordinates_in_unit_box(&self) -> bool {
        self.coordinates.iter().all(|&c| c.abs() <= 1.0)
    }

    /// Pairs of points whose tolerance boxes make them mutually indistinguishable.
    ///
    /// A pair violates separation when, in every coordinate `k`, the rows differ
    /// by less than `2 * tolerance[k]` (a coordinate with zero tolerance counts
    /// only when the rows agree there exactly).
    #[must_use]
    pub fn separation_violations(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let close = (0..self.n_vars()).all(|k| {
                    let d = (self.coordinates[(i, k)] - self.coordinates[(j, k)]).abs();
                    let eps = self.tolerance[k];
                    if eps == 0.0 {
                        d == 0.0
                    } else {
                        d < 2.0 * eps
                    }
                });
                if close {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    /// True when no pair of points violates separation.
    #[must_use]
    pub fn is_well_separated(&self) -> bool {
        self.separation_violations().is_empty()
    }

    /// Componentwise scaling by nonzero factors; tolerance scales by `|d_k|`.
    pub fn scale(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.n_vars() {
            return Err(Error::DimensionMismatch(format!(
                "{} scale factors for {} variables",
                factors.len(),
                self.n_vars()
            )));
        }
        if factors.iter().any(|&d| d == 0.0 || !d.is_finite()) {
            return Err(Error::Config(
                "scale factors must be finite and nonzero".into(),
            ));
        }
        let coordinates = DMatrix::from_fn(self.len(), self.n_vars(), |i, k| {
            self.coordinates[(i, k)] * factors[k]
        });
        let tolerance = self
            .tolerance
            .iter()
            .zip(factors)
            .map(|(e, d)| e * d.abs())
            .collect();
        Ok(Self {
            coordinates,
            tolerance,
        })
    }

    /// Componentwise translation; tolerance is unchanged.
    pub fn translate(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.n_vars() {
            return Err(Error::DimensionMismatch(format!(
                "{} shift entries for {} variables",
                shift.len(),
                self.n_vars()
            )));
        }
        if shift.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("translation entry".into()));
        }
        let coordinates = DMatrix::from_fn(self.len(), self.n_vars(), |i, k| {
            self.coordinates[(i, k)] + shift[k]
        });
        Ok(Self {
            coordinates,
            tolerance: self.tolerance.clone(),
        })
    }
}

/// A componentwise perturbation of a point set, strictly inside the tolerance box.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSample {
    offsets: DMatrix<f64>,
}

impl PerturbationSample {
    /// Builds a sample from offset rows, validating admissibility for `x`.
    ///
    /// Each offset must satisfy `|e| < tolerance[k]`, except that a zero offset
    /// (the coordinate left untouched) is always admissible.
    pub fn new(offsets: Vec<Vec<f64>>, x: &EmpiricalPointSet) -> Result<Self> {
        let s = x.len();
        let n = x.n_vars();
        if offsets.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "{} offset rows for {s} points",
                offsets.len()
            )));
        }
        for (i, row) in offsets.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "offset row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (k, &e) in row.iter().enumerate() {
                if !e.is_finite() {
                    return Err(Error::NonFinite(format!("offset ({i},{k})")));
                }
                if e != 0.0 && e.abs() >= x.tolerance()[k] {
                    return Err(Error::InadmissiblePerturbation(format!(
                        "offset {e} at point {i}, coordinate {k} exceeds tolerance {}",
                        x.tolerance()[k]
                    )));
                }
            }
        }
        Ok(Self {
            offsets: DMatrix::from_fn(s, n, |i, k| offsets[i][k]),
        })
    }

    /// The all-zero perturbation.
    #[must_use]
    pub fn zero(s: usize, n: usize) -> Self {
        Self {
            offsets: DMatrix::zeros(s, n),
        }
    }

    /// Offset at point `i`, coordinate `k`.
    #[must_use]
    pub fn offset(&self, i: usize, k: usize) -> f64 {
        self.offsets[(i, k)]
    }

    /// Column `k` of the offsets (the diagonal of `E_k`).
    #[must_use]
    pub fn column(&self, k: usize) -> DVector<f64> {
        self.offsets.column(k).into_owned()
    }

    /// Offsets scaled by `h`; admissible whenever `|h| <= 1` and `self` is.
    #[must_use]
    pub fn scaled(&self, h: f64) -> Self {
        Self {
            offsets: &self.offsets * h,
        }
    }

    /// Largest absolute offset.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.offsets.iter().fold(0.0, |m, &e| m.max(e.abs()))
    }
}

/// Applies a perturbation, keeping the tolerance vector.
pub fn perturb(x: &EmpiricalPointSet, e: &PerturbationSample) -> Result<EmpiricalPointSet> {
    if e.offsets.nrows() != x.len() || e.offsets.ncols() != x.n_vars() {
        return Err(Error::DimensionMismatch(
            "perturbation shape does not match point set".into(),
        ));
    }
    let rows: Vec<Vec<f64>> = (0..x.len())
        .map(|i| {
            (0..x.n_vars())
                .map(|k| x.coordinate(i, k) + e.offset(i, k))
                .collect()
        })
        .collect();
    EmpiricalPointSet::new(rows, x.tolerance().to_vec())
}

/// Draws a uniform admissible perturbation, deterministic in `seed`.
///
/// Offsets are uniform on the open interval `(-tolerance[k], tolerance[k])`;
/// coordinates with zero tolerance receive zero offsets.
#[must_use]
pub fn sample_admissible(x: &EmpiricalPointSet, seed: u64) -> PerturbationSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = x.len();
    let n = x.n_vars();
    let offsets = DMatrix::from_fn(s, n, |_i, k| {
        let eps = x.tolerance()[k];
        if eps == 0.0 {
            return 0.0;
        }
        loop {
            let u: f64 = rng.gen::<f64>().mul_add(2.0, -1.0); // [-1, 1)
            let e = eps * u;
            if e.abs() < eps {
                return e;
            }
        }
    });
    PerturbationSample { offsets }
}

/// Evaluation vector `t(X)`: one entry per point.
#[must_use]
pub fn eval_vector(t: &PowerProduct, x: &EmpiricalPointSet) -> DVector<f64> {
    assert_eq!(t.n_vars(), x.n_vars(), "power product dimension mismatch");
    DVector::from_fn(x.len(), |i, _| {
        (0..x.n_vars()).fold(1.0, |acc, k| {
            acc * x.coordinate(i, k).powi(t.degree_in(k) as i32)
        })
    })
}

/// Evaluation of a formal partial: the zero marker maps to the zero vector.
#[must_use]
pub fn eval_partial(p: &FormalPartial, x: &EmpiricalPointSet) -> DVector<f64> {
    match p {
        FormalPartial::Zero => DVector::zeros(x.len()),
        FormalPartial::Term {
            coefficient,
            quotient,
        } => eval_vector(quotient, x) * f64::from(*coefficient),
    }
}

/// An evaluation matrix together with the terms labelling its columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationMatrix {
    entries: DMatrix<f64>,
    column_terms: Vec<PowerProduct>,
}

impl EvaluationMatrix {
    /// Matrix entries (`s` rows, one column per term).
    #[must_use]
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Terms labelling the columns.
    #[must_use]
    pub fn column_terms(&self) -> &[PowerProduct] {
        &self.column_terms
    }

    /// Number of rows.
    #[must_use]
    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    /// Number of columns.
    #[must_use]
    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }
}

/// Evaluation matrix of a term list: column `j` is `terms[j](X)`.
#[must_use]
pub fn eval_matrix(terms: &[PowerProduct], x: &EmpiricalPointSet) -> EvaluationMatrix {
    let s = x.len();
    let mut entries = DMatrix::zeros(s, terms.len());
    for (j, t) in terms.iter().enumerate() {
        entries.set_column(j, &eval_vector(t, x));
    }
    EvaluationMatrix {
        entries,
        column_terms: terms.to_vec(),
    }
}

/// Matrix of formal partials: column `j` is `d/dx[k] terms[j]` evaluated on `X`.
#[must_use]
pub fn eval_partial_matrix(
    terms: &[PowerProduct],
    k: usize,
    x: &EmpiricalPointSet,
) -> DMatrix<f64> {
    let s = x.len();
    let mut entries = DMatrix::zeros(s, terms.len());
    for (j, t) in terms.iter().enumerate() {
        entries.set_column(j, &eval_partial(&t.formal_partial(k), x));
    }
    entries
}

/// Parsed point input: raw decimal cells plus an optional tolerance from the file.
#[derive(Debug, Clone, PartialEq)]
pub struct PointInput {
    rows: Vec<Vec<String>>,
    tolerance: Option<Vec<f64>>,
}

/// JSON file schema for point input.
#[derive(Debug, Serialize, Deserialize)]
struct PointFile {
    points: Vec<Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<Vec<f64>>,
}

impl PointInput {
    /// Builds directly from raw decimal cells.
    #[must_use]
    pub fn from_cells(rows: Vec<Vec<String>>, tolerance: Option<Vec<f64>>) -> Self {
        Self { rows, tolerance }
    }

    /// Reads a CSV file: one point per row, optional non-numeric header row.
    pub fn from_csv_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(false)
            .from_reader(reader);
        let mut rows: Vec<Vec<String>> = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let cells: Vec<String> = record.iter().map(str::to_owned).collect();
            if cells.iter().all(|c| c.is_empty()) {
                continue;
            }
            rows.push(cells);
        }
        if let Some(first) = rows.first() {
            if first.iter().any(|c| c.parse::<f64>().is_err()) {
                rows.remove(0);
            }
        }
        if rows.is_empty() {
            return Err(Error::Parse("no data rows in CSV input".into()));
        }
        Ok(Self {
            rows,
            tolerance: None,
        })
    }

    /// Reads a JSON file `{"points": [[…]], "tolerance": […]}`.
    ///
    /// Number literals are re-rendered through their shortest round-trip form,
    /// exact for decimals with at most 15 significant digits.
    pub fn from_json_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let file: PointFile = serde_json::from_reader(reader)?;
        let mut rows = Vec::new();
        for row in &file.points {
            let mut cells = Vec::new();
            for value in row {
                match value {
                    serde_json::Value::Number(n) => cells.push(n.to_string()),
                    other => {
                        return Err(Error::Parse(format!("non-numeric point entry {other}")));
                    }
                }
            }
            rows.push(cells);
        }
        if rows.is_empty() {
            return Err(Error::Parse("no points in JSON input".into()));
        }
        Ok(Self {
            rows,
            tolerance: file.tolerance,
        })
    }

    /// Reads from a path, dispatching on the `.json` extension, CSV otherwise.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        {
            Self::from_json_reader(file)
        } else {
            Self::from_csv_reader(file)
        }
    }

    /// Raw decimal cells, one row per point.
    #[must_use]
    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// Tolerance carried by the file, if any.
    #[must_use]
    pub fn tolerance(&self) -> Option<&[f64]> {
        self.tolerance.as_deref()
    }

    /// Parses all cells as `f64` rows.
    pub fn f64_rows(&self) -> Result<Vec<Vec<f64>>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        c.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad number `{c}`")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds the point set using the file tolerance unless overridden.
    pub fn into_point_set(
        &self,
        tolerance_override: Option<Vec<f64>>,
    ) -> Result<EmpiricalPointSet> {
        let rows = self.f64_rows()?;
        let n = rows.first().map_or(0, Vec::len);
        let tolerance = match tolerance_override.or_else(|| self.tolerance.clone()) {
            Some(t) => {
                if t.len() == 1 && n > 1 {
                    vec![t[0]; n]
                } else {
                    t
                }
            }
            None => {
                return Err(Error::Config(
                    "no tolerance given: pass --tol or include `tolerance` in the input file"
                        .into(),
                ))
            }
        };
        EmpiricalPointSet::new(rows, tolerance)
    }
}
