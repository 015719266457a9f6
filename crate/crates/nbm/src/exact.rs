//! Exact rational counterpart of the numerical basis loop.
//!
//! Runs the same candidate enumeration over points with exact rational
//! coordinates and a zero tolerance, deciding dependence by exact linear
//! algebra (Gaussian elimination over `BigRational`). The output is the
//! reduced Gröbner basis of the vanishing ideal of the points together with
//! the monomial basis of the quotient algebra, and serves as the independent
//! oracle for the floating-point loop at zero tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomials::{next_candidate, OrderIdealState, PowerProduct, TermOrdering};

/// Parses a decimal literal (`5.1`, `-0.125`, `2.5e-3`) into an exact rational.
pub fn rational_from_decimal(text: &str) -> Result<BigRational> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let (mantissa, exponent) = match trimmed.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{text}`")))?;
            (m, exp)
        }
        None => (trimmed, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("bad number `{text}`")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("bad number `{text}`")));
    }
    let joined = format!("{int_part}{frac_part}");
    let unsigned: BigInt = joined
        .parse()
        .map_err(|_| Error::Parse(format!("bad number `{text}`")))?;
    let numer = unsigned * BigInt::from(sign);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let rational = if shift >= 0 {
        BigRational::from_integer(numer * ten.pow(shift as u32))
    } else {
        BigRational::new(numer, ten.pow(shift.unsigned_abs()))
    };
    Ok(rational)
}

/// Renders a rational as a finite decimal when possible, else as `p/q`.
#[must_use]
pub fn rational_to_string(r: &BigRational) -> String {
    let reduced = r.reduced();
    let denom = reduced.denom();
    if denom.is_one() {
        return reduced.numer().to_string();
    }
    // denominators of the form 2^a 5^b have finite decimal expansions
    let mut d = denom.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", reduced.numer(), reduced.denom());
    }
    let places = twos.max(fives);
    let scale = BigInt::from(10).pow(places);
    let scaled = reduced.numer() * &scale / denom;
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let padded = format!("{digits:0>width$}", width = places as usize + 1);
    let split = padded.len() - places as usize;
    let (int_part, frac_part) = padded.split_at(split);
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

/// Points with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPointSet {
    coordinates: Vec<Vec<BigRational>>,
}

impl RationalPointSet {
    /// Builds from coordinate rows.
    pub fn new(coordinates: Vec<Vec<BigRational>>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::Config(
                "point set must contain at least one point".into(),
            ));
        }
        let n = coordinates[0].len();
        if n == 0 {
            return Err(Error::Config(
                "points must have at least one coordinate".into(),
            ));
        }
        for (i, row) in coordinates.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has {} coordinates, expected {n}",
                    row.len()
                )));
            }
        }
        Ok(Self { coordinates })
    }

    /// Builds from raw decimal cells (for example CSV rows).
    pub fn from_decimal_rows(rows: &[Vec<String>]) -> Result<Self> {
        let coordinates = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| rational_from_decimal(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coordinates)
    }

    /// Number of points.
    #[must_use]
    pub fn len(&self) -> usize {
        self.coordinates.len()
    }

    /// Always false: construction rejects empty sets.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of variables.
    #[must_use]
    pub fn n_vars(&self) -> usize {
        self.coordinates[0].len()
    }

    /// Coordinate `k` of point `i`.
    #[must_use]
    pub fn coordinate(&self, i: usize, k: usize) -> &BigRational {
        &self.coordinates[i][k]
    }

    /// Exact evaluation vector `t(X)`.
    #[must_use]
    pub fn eval(&self, t: &PowerProduct) -> Vec<BigRational> {
        self.coordinates
            .iter()
            .map(|row| {
                let mut acc = BigRational::one();
                for (k, coord) in row.iter().enumerate() {
                    for _ in 0..t.degree_in(k) {
                        acc *= coord;
                    }
                }
                acc
            })
            .collect()
    }

    /// Nearest-double projection of the coordinates.
    #[must_use]
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.coordinates
            .iter()
            .map(|row| row.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// A monic polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPoly {
    /// Leading term in the run's ordering.
    pub leading_term: PowerProduct,
    /// Support, descending; first entry is the leading term.
    pub support: Vec<PowerProduct>,
    /// Coefficients aligned with `support`; first entry is `1`.
    pub coefficients: Vec<BigRational>,
}

impl ExactPoly {
    /// Coefficient attached to `term`, if present in the support.
    #[must_use]
    pub fn coefficient_of(&self, term: &PowerProduct) -> Option<&BigRational> {
        self.support
            .iter()
            .position(|u| u == term)
            .map(|j| &self.coefficients[j])
    }

    /// Coefficients as nearest doubles.
    #[must_use]
    pub fn coefficients_f64(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Exact evaluation at one rational point given by a coordinate row.
    #[must_use]
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (term, c) in self.support.iter().zip(&self.coefficients) {
            let mut acc = c.clone();
            for (k, coord) in point.iter().enumerate() {
                for _ in 0..term.degree_in(k) {
                    acc *= coord;
                }
            }
            total += acc;
        }
        total
    }

    /// Renders like `x^2 - 90.1 x + 172.2 y - 83.1`.
    #[must_use]
    pub fn render(&self) -> String {
        let mut out = self.support[0].render();
        for (term, c) in self.support.iter().zip(&self.coefficients).skip(1) {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&rational_to_string(&c.abs()));
            if !term.is_one() {
                out.push(' ');
                out.push_str(&term.render());
            }
        }
        out
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Output of the exact loop: quotient basis plus reduced Gröbner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBmResult {
    /// Monomial basis of the quotient algebra, ascending in the run's ordering.
    pub order_ideal: OrderIdealState,
    /// Gröbner basis elements, in discovery order.
    pub polynomials: Vec<ExactPoly>,
}

/// Solves `M alpha = b` exactly, returning `None` when `b` is outside the column space.
///
/// `m` is given row-major with full column rank.
fn solve_exact(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let s = m.len();
    let k = if s == 0 { 0 } else { m[0].len() };
    if k == 0 {
        return if b.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    // augmented Gauss-Jordan elimination
    let mut a: Vec<Vec<BigRational>> = (0..s)
        .map(|i| {
            let mut row = m[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..k {
        let Some(found) = (pivot_row..s).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, found);
        let inv = a[pivot_row][col].recip();
        for entry in &mut a[pivot_row][col..=k] {
            *entry *= &inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row[col..=k].iter_mut().zip(&pivot[col..=k]) {
                    *entry -= &factor * p;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == s {
            break;
        }
    }
    // inconsistent row: zero coefficients with nonzero right-hand side
    if a[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut alpha = vec![BigRational::zero(); k];
    for &(r, c) in &pivots {
        alpha[c] = a[r][k].clone();
    }
    Some(alpha)
}

/// Exact basis loop: Gröbner basis of the vanishing ideal and quotient basis.
pub fn exact_bm(x: &RationalPointSet, ordering: &TermOrdering) -> Result<ExactBmResult> {
    if ordering.n_vars() != x.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "ordering over {} variables, points over {}",
            ordering.n_vars(),
            x.n_vars()
        )));
    }
    let mut o = OrderIdealState::new(x.n_vars());
    let mut polynomials = Vec::new();
    let mut leading_terms: Vec<PowerProduct> = Vec::new();
    let mut processed: Vec<PowerProduct> = Vec::new();

    while let Some(t) = next_candidate(&o, &leading_terms, &processed, ordering) {
        let m: Vec<Vec<BigRational>> = (0..x.len())
            .map(|i| o.terms().iter().map(|u| x.eval(u)[i].clone()).collect())
            .collect();
        let b = x.eval(&t);
        processed.push(t.clone());
        match solve_exact(&m, &b) {
            Some(alpha) => {
                let mut support = vec![t.clone()];
                let mut coefficients = vec![BigRational::one()];
                for j in (0..o.terms().len()).rev() {
                    support.push(o.terms()[j].clone());
                    coefficients.push(-alpha[j].clone());
                }
                polynomials.push(ExactPoly {
                    leading_term: t.clone(),
                    support,
                    coefficients,
                });
                leading_terms.push(t);
            }
            None => o.insert(t, ordering),
        }
    }
    Ok(ExactBmResult {
        order_ideal: o,
        polynomials,
    })
}
