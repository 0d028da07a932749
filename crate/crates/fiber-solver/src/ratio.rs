use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::FiberError;

/// Exact rational scalar used wherever algebraic identities are checked
/// without rounding.
pub type Rational = Ratio<i128>;

/// A frequency ratio `n1:n2:n3` of the three nonzero modes.
///
/// Stored in canonical form: sorted ascending and reduced by the greatest
/// common divisor, so `6:4:2` and `1:2:3` compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResonanceRatio {
    n1: u32,
    n2: u32,
    n3: u32,
}

impl ResonanceRatio {
    /// Canonicalises and validates a ratio.
    pub fn new(n1: u32, n2: u32, n3: u32) -> Result<Self, FiberError> {
        if n1 == 0 || n2 == 0 || n3 == 0 {
            return Err(FiberError::InvalidRatio(n1, n2, n3));
        }
        let mut v = [n1, n2, n3];
        v.sort_unstable();
        let g = v[0].gcd(&v[1]).gcd(&v[2]);
        Ok(Self {
            n1: v[0] / g,
            n2: v[1] / g,
            n3: v[2] / g,
        })
    }

    /// The canonical components `(n1, n2, n3)` with `n1 <= n2 <= n3`.
    pub fn parts(&self) -> (u32, u32, u32) {
        (self.n1, self.n2, self.n3)
    }
}

impl fmt::Display for ResonanceRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.n1, self.n2, self.n3)
    }
}

impl FromStr for ResonanceRatio {
    type Err = FiberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(FiberError::RatioParse(s.to_string()));
        }
        let mut n = [0u32; 3];
        for (slot, part) in n.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| FiberError::RatioParse(s.to_string()))?;
        }
        Self::new(n[0], n[1], n[2])
    }
}

/// The three positive eigenvalues realising a resonance, scaled to sum
/// to one and sorted descending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetSpectrum {
    lambda: [f64; 3],
}

impl TargetSpectrum {
    /// Builds a spectrum from three positive eigenvalues, sorting them
    /// descending and rescaling so that they sum to one.
    pub fn new(values: [f64; 3]) -> Result<Self, FiberError> {
        for &v in &values {
            if !(v.is_finite() && v > 0.0) {
                return Err(FiberError::OutOfDomain {
                    name: "lambda",
                    value: v,
                    domain: "(0, inf)",
                });
            }
        }
        let total: f64 = values.iter().sum();
        let mut lambda = values.map(|v| v / total);
        lambda.sort_by(|x, y| y.partial_cmp(x).unwrap());
        Ok(Self { lambda })
    }

    /// Eigenvalues `(lambda_1, lambda_2, lambda_3)`, descending.
    pub fn values(&self) -> [f64; 3] {
        self.lambda
    }

    /// Product of the eigenvalues.
    pub fn xi(&self) -> f64 {
        self.lambda[0] * self.lambda[1] * self.lambda[2]
    }

    /// Second elementary symmetric function of the eigenvalues.
    pub fn eta(&self) -> f64 {
        self.lambda[0] * self.lambda[1]
            + self.lambda[1] * self.lambda[2]
            + self.lambda[2] * self.lambda[0]
    }
}

///// Scales the squared ratio components to eigenvalues summing to one:
/// `lambda_i = n_i^2 / (n1^2 + n2^2 + n3^2)`, sorted descending.
pub fn target_spectrum(r: &ResonanceRatio) -> TargetSpectrum {
    let (n1, n2, n3) = r.parts();
    let sq = [n3 as f64, n2 as f64, n1 as f64].map(|n| n * n);
    let total: f64 = sq.iter().sum();
    TargetSpectrum {
        lambda: sq.map(|s| s / total),
    }
}

/// The symmetric-function pair `(xi, eta)` characterising the fiber.
pub fn xi_eta(t: &TargetSpectrum) -> (f64, f64) {
    (t.xi(), t.eta())
}

/// Exact rational `(xi, eta)` straight from the ratio components, for
/// algebraic identity checks that must hold without rounding.
pub fn xi_eta_exact(r: &ResonanceRatio) -> (Rational, Rational) {
    let (n1, n2, n3) = r.parts();
    let s = [n1, n2, n3].map(|n| Rational::from_integer((n as i128) * (n as i128)));
    let total: Rational = s[0] + s[1] + s[2];
    let l = s.map(|v| v / total);
    let xi = l[0] * l[1] * l[2];
    let eta = l[0] * l[1] + l[1] * l[2] + l[2] * l[0];
    (xi, eta)
}
