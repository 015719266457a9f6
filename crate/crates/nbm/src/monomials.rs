//! Power products, term orderings, order ideals, and corner sets.
//!
//! A power product is a monomial with coefficient one, stored as an exponent
//! vector. Term orderings (degree-lexicographic and lexicographic, with an
//! arbitrary variable priority) drive candidate enumeration; order ideals are
//! factor-closed sets of power products whose corner set supplies the
//! candidates that a border-basis style loop classifies one at a time.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Names used when rendering/parsing variables in low dimension.
const ALIASES: [&str; 3] = ["x", "y", "z"];

/// A monomial `x[1]^e1 … x[n]^en`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerProduct {
    exponents: Vec<u32>,
}

impl PowerProduct {
    /// Builds a power product from an exponent vector.
    #[must_use]
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    /// The constant power product `1` in `n` variables.
    #[must_use]
    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    /// The single variable `x[k]` (0-based `k`) in `n` variables.
    #[must_use]
    pub fn var(n: usize, k: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[k] = 1;
        Self { exponents }
    }

    /// Number of variables.
    #[must_use]
    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent vector.
    #[must_use]
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Total degree.
    #[must_use]
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Exponent of variable `k` (0-based).
    #[must_use]
    pub fn degree_in(&self, k: usize) -> u32 {
        self.exponents[k]
    }

    /// True for the constant `1`.
    #[must_use]
    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Product with another power product of the same dimension.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.n_vars(),
            other.n_vars(),
            "power product dimension mismatch"
        );
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Product with the single variable `x[k]`.
    #[must_use]
    pub fn mul_var(&self, k: usize) -> Self {
        let mut exponents = self.exponents.clone();
        exponents[k] += 1;
        Self { exponents }
    }

    /// Quotient by `x[k]`, or `None` when `x[k]` does not divide `self`.
    #[must_use]
    pub fn div_var(&self, k: usize) -> Option<Self> {
        if self.exponents[k] == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[k] -= 1;
        Some(Self { exponents })
    }

    /// True when `self` divides `other` componentwise.
    #[must_use]
    pub fn divides(&self, other: &Self) -> bool {
        self.n_vars() == other.n_vars()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    /// Formal partial derivative with respect to `x[k]` (0-based).
    ///
    /// Returns the exponent as coefficient together with the quotient
    /// `self / x[k]`, or the zero marker when `x[k]` does not occur.
    #[must_use]
    pub fn formal_partial(&self, k: usize) -> FormalPartial {
        match self.div_var(k) {
            Some(quotient) => FormalPartial::Term {
                coefficient: self.exponents[k],
                quotient,
            },
            None => FormalPartial::Zero,
        }
    }

    /// Renders with indexed variables, e.g. `x[1]^2 x[2]`.
    #[must_use]
    pub fn render_indexed(&self) -> String {
        if self.is_one() {
            return "1".to_owned();
        }
        let mut parts = Vec::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x[{}]", k + 1)),
                _ => parts.push(format!("x[{}]^{}", k + 1, e)),
            }
        }
        parts.join(" ")
    }

    /// Renders with `x, y, z` aliases; falls back to indexed form when `n > 3`.
    #[must_use]
    pub fn render(&self) -> String {
        if self.n_vars() > ALIASES.len() {
            return self.render_indexed();
        }
        if self.is_one() {
            return "1".to_owned();
        }
        let mut parts = Vec::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ALIASES[k].to_owned()),
                _ => parts.push(format!("{}^{}", ALIASES[k], e)),
            }
        }
        parts.join(" ")
    }

    /// Parses either rendering (`x^2 y`, `x[1]^2 x[2]`, `1`); `*` separators allowed.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut exponents = vec![0u32; n];
        let cleaned = text.replace('*', " ");
        let trimmed = cleaned.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty power product".into()));
        }
        if trimmed == "1" {
            return Ok(Self { exponents });
        }
        for factor in trimmed.split_whitespace() {
            let (var_text, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (v, exp)
                }
                None => (factor, 1),
            };
            let k = parse_variable(var_text, n)?;
            exponents[k] += exp;
        }
        Ok(Self { exponents })
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses `x`, `y`, `z` or `x[i]` into a 0-based variable index.
fn parse_variable(text: &str, n: usize) -> Result<usize> {
    if let Some(idx) = ALIASES.iter().position(|&a| a == text) {
        if idx < n {
            return Ok(idx);
        }
        return Err(Error::Parse(format!(
            "variable `{text}` out of range for {n} variables"
        )));
    }
    let inner = text
        .strip_prefix("x[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unknown variable `{text}`")))?;
    let i: usize = inner
        .parse()
        .map_err(|_| Error::Parse(format!("bad variable index `{text}`")))?;
    if i == 0 || i > n {
        return Err(Error::Parse(format!(
            "variable index {i} out of range 1..={n}"
        )));
    }
    Ok(i - 1)
}

/// Formal partial derivative of a power product: either zero or a scaled power product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormalPartial {
    /// The variable does not occur; evaluates to the zero vector everywhere.
    Zero,
    /// `coefficient * quotient` with `coefficient` the original exponent.
    Term {
        coefficient: u32,
        quotient: PowerProduct,
    },
}

/// Comparison scheme for term orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderingScheme {
    /// Total degree first, lexicographic tie-break.
    DegLex,
    /// Pure lexicographic.
    Lex,
}

/// A multiplication-compatible term ordering with explicit variable priority.
///
/// `priority[0]` is the greatest variable (0-based index), so the textbook
/// `DegLex, x > y` in two variables is `priority = [0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrdering {
    scheme: OrderingScheme,
    priority: Vec<usize>,
}

impl TermOrdering {
    /// Builds an ordering after validating that `priority` permutes `0..n`.
    pub fn new(scheme: OrderingScheme, priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &k in &priority {
            if k >= n || seen[k] {
                return Err(Error::Config(format!(
                    "variable priority {priority:?} is not a permutation of 0..{n}"
                )));
            }
            seen[k] = true;
        }
        Ok(Self { scheme, priority })
    }

    /// Degree-lexicographic with natural priority `x[1] > x[2] > …`.
    #[must_use]
    pub fn deglex(n: usize) -> Self {
        Self {
            scheme: OrderingScheme::DegLex,
            priority: (0..n).collect(),
        }
    }

    /// Lexicographic with natural priority `x[1] > x[2] > …`.
    #[must_use]
    pub fn lex(n: usize) -> Self {
        Self {
            scheme: OrderingScheme::Lex,
            priority: (0..n).collect(),
        }
    }

    /// Number of variables.
    #[must_use]
    pub fn n_vars(&self) -> usize {
        self.priority.len()
    }

    /// Scheme of this ordering.
    #[must_use]
    pub fn scheme(&self) -> OrderingScheme {
        self.scheme
    }

    /// Variable priority, greatest variable first (0-based indices).
    #[must_use]
    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Compares two power products of matching dimension.
    #[must_use]
    pub fn compare(&self, a: &PowerProduct, b: &PowerProduct) -> Ordering {
        assert_eq!(
            a.n_vars(),
            self.n_vars(),
            "power product dimension mismatch"
        );
        assert_eq!(
            b.n_vars(),
            self.n_vars(),
            "power product dimension mismatch"
        );
        if self.scheme == OrderingScheme::DegLex {
            match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        for &k in &self.priority {
            match a.degree_in(k).cmp(&b.degree_in(k)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Parses `deglex:x,y` / `lex:x[2],x[1]`; the variable list is optional and
    /// runs from greatest to least.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (scheme_text, vars_text) = match text.split_once(':') {
            Some((s, v)) => (s, Some(v)),
            None => (text, None),
        };
        let scheme = match scheme_text.trim().to_ascii_lowercase().as_str() {
            "deglex" => OrderingScheme::DegLex,
            "lex" => OrderingScheme::Lex,
            other => return Err(Error::Parse(format!("unknown ordering scheme `{other}`"))),
        };
        let priority = match vars_text {
            None => (0..n).collect(),
            Some(list) => {
                let names: Vec<&str> = list.split(',').map(str::trim).collect();
                if names.len() != n {
                    return Err(Error::Parse(format!(
                        "ordering lists {} variables but points have {n}",
                        names.len()
                    )));
                }
                names
                    .iter()
                    .map(|name| parse_variable(name, n))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Self::new(scheme, priority)
    }

    /// Renders back to the `deglex:x,y` flag syntax.
    #[must_use]
    pub fn render(&self) -> String {
        let scheme = match self.scheme {
            OrderingScheme::DegLex => "deglex",
            OrderingScheme::Lex => "lex",
        };
        let n = self.n_vars();
        let vars: Vec<String> = self
            .priority
            .iter()
            .map(|&k| {
                if n <= ALIASES.len() {
                    ALIASES[k].to_owned()
                } else {
                    format!("x[{}]", k + 1)
                }
            })
            .collect();
        format!("{scheme}:{}", vars.join(","))
    }
}

impl fmt::Display for TermOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A factor-closed set of power products, kept sorted ascending in a term ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OrderIdealState {
    terms: Vec<PowerProduct>,
    #[serde(skip)]
    n_vars: usize,
}

impl<'de> Deserialize<'de> for OrderIdealState {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let terms = Vec::<PowerProduct>::deserialize(deserializer)?;
        let n_vars = terms.first().map_or(0, PowerProduct::n_vars);
        Ok(Self { terms, n_vars })
    }
}

impl OrderIdealState {
    /// Empty order ideal over `n` variables.
    #[must_use]
    pub fn new(n_vars: usize) -> Self {
        Self {
            terms: Vec::new(),
            n_vars,
        }
    }

    /// Builds from arbitrary term order, validating factor-closedness and sorting ascending.
    pub fn from_terms(terms: Vec<PowerProduct>, ordering: &TermOrdering) -> Result<Self> {
        let n_vars = ordering.n_vars();
        let mut state = Self {
            terms: Vec::new(),
            n_vars,
        };
        for t in &terms {
            if t.n_vars() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "term {t} has {} variables, expected {n_vars}",
                    t.n_vars()
                )));
            }
        }
        for t in &terms {
            for k in 0..n_vars {
                if let Some(q) = t.div_var(k) {
                    if !terms.contains(&q) {
                        return Err(Error::NotFactorClosed(q.render()));
                    }
                }
            }
        }
        let mut sorted = terms;
        sorted.sort_by(|a, b| ordering.compare(a, b));
        sorted.dedup();
        state.terms = sorted;
        Ok(state)
    }

    /// Number of variables.
    #[must_use]
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of terms.
    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no term has been accepted yet.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order of the ordering used to build the state.
    #[must_use]
    pub fn terms(&self) -> &[PowerProduct] {
        &self.terms
    }

    /// Membership test.
    #[must_use]
    pub fn contains(&self, t: &PowerProduct) -> bool {
        self.terms.contains(t)
    }

    /// Inserts a new term, keeping the ascending order under `ordering`.
    ///
    /// The caller must only insert corner-set elements so the state stays
    /// factor-closed; this is asserted in debug builds.
    pub fn insert(&mut self, t: PowerProduct, ordering: &TermOrdering) {
        debug_assert!(
            (0..self.n_vars).all(|k| match t.div_var(k) {
                Some(q) => self.contains(&q),
                None => true,
            }),
            "inserting {t} would break factor-closedness"
        );
        let pos = self
            .terms
            .iter()
            .position(|u| ordering.compare(&t, u) == Ordering::Less)
            .unwrap_or(self.terms.len());
        self.terms.insert(pos, t);
    }

    /// Corner set: terms outside the ideal all of whose variable-quotients lie inside.
    ///
    /// Result is sorted canonically (total degree, then exponents) and does not
    /// depend on the storage order of the state. The corner set of the empty
    /// state is `{1}`.
    #[must_use]
    pub fn corner_set(&self) -> Vec<PowerProduct> {
        let n = self.n_vars;
        if self.terms.is_empty() {
            return vec![PowerProduct::one(n)];
        }
        let mut corners: Vec<PowerProduct> = Vec::new();
        for t in &self.terms {
            for k in 0..n {
                let c = t.mul_var(k);
                if corners.contains(&c) || self.contains(&c) {
                    continue;
                }
                let closed = (0..n).all(|j| match c.div_var(j) {
                    Some(q) => self.contains(&q),
                    None => true,
                });
                if closed {
                    corners.push(c);
                }
            }
        }
        corners.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| a.exponents().cmp(b.exponents()))
        });
        corners
    }

    /// Renders as `{ 1, y, y^2 }`.
    #[must_use]
    pub fn render(&self) -> String {
        let inner: Vec<String> = self.terms.iter().map(PowerProduct::render).collect();
        format!("{{ {} }}", inner.join(", "))
    }
}

/// Next unclassified candidate: the σ-smallest corner of `o` that is neither
/// already processed nor a multiple of a leading term. `None` means the
/// enumeration is exhausted.
#[must_use]
pub fn next_candidate(
    o: &OrderIdealState,
    leading_terms: &[PowerProduct],
    processed: &[PowerProduct],
    ordering: &TermOrdering,
) -> Option<PowerProduct> {
    o.corner_set()
        .into_iter()
        .filter(|c| !processed.contains(c))
        .filter(|c| !leading_terms.iter().any(|lt| lt.divides(c)))
        .min_by(|a, b| ordering.compare(a, b))
}
