//! The rank-two Picard lattice `ℤH ⊕ ℤC` of a K3 surface of type (2, 3)
//! containing a curve `C` of genus `g` with `H·C = d = g − s`.
//!
//! Gram matrix `[[6, d], [d, 2g − 2]]`. All values are `i64`; parameters are
//! capped at [`MAX_PARAM`] so products of the sizes used by the scans stay
//! far from overflow.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bqf::{self, BqfError, QuadraticForm, RepDecision};

pub const MAX_PARAM: i64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("parameter {0} exceeds the supported magnitude {MAX_PARAM}")]
    OutOfRange(i64),
    #[error(transparent)]
    Form(#[from] BqfError),
}

/// Which family of hypotheses a pair `(g, s)` falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `s ≥ −1` and `g ≥ max{4s + 14, 12}`.
    Strong,
    /// `s ≥ 1` and `g = 4s + 12`.
    Relaxed,
    Outside,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Strong => "strong",
            Regime::Relaxed => "relaxed",
            Regime::Outside => "outside",
        })
    }
}

/// The pair `(g, s)`; `d = g − s` is derived.
///
/// Only `g ≥ 2` is enforced. Values of `s` below −1 are accepted so that
/// degenerate lattices can be examined; they always land in
/// [`Regime::Outside`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct K3Config {
    g: i64,
    s: i64,
}

impl K3Config {
    pub fn new(g: i64, s: i64) -> Result<Self, LatticeError> {
        for v in [g, s] {
            if v.abs() > MAX_PARAM {
                return Err(LatticeError::OutOfRange(v));
            }
        }
        if g < 2 {
            return Err(LatticeError::GenusTooSmall(g));
        }
        Ok(Self { g, s })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn d(&self) -> i64 {
        self.g - self.s
    }

    pub fn is_strong(&self) -> bool {
        self.s >= -1 && self.g >= (4 * self.s + 14).max(12)
    }

    pub fn is_relaxed(&self) -> bool {
        self.s >= 1 && self.g == 4 * self.s + 12
    }

    pub fn regime(&self) -> Regime {
        if self.is_strong() {
            Regime::Strong
        } else if self.is_relaxed() {
            Regime::Relaxed
        } else {
            Regime::Outside
        }
    }

    /// `d² − 12(g − 1)`: the discriminant of `3m² + dmn + (g − 1)n²`, and a
    /// quarter of that of `D²`.
    pub fn reduced_discriminant(&self) -> i64 {
        self.d() * self.d() - 12 * (self.g - 1)
    }

    /// `D² = 6m² + 2dmn + (2g − 2)n²`.
    pub fn square_form(&self) -> QuadraticForm {
        QuadraticForm::new(6, 2 * self.d(), 2 * self.g - 2)
    }

    /// `D²/2 = 3m² + dmn + (g − 1)n²`.
    pub fn half_square_form(&self) -> QuadraticForm {
        QuadraticForm::new(3, self.d(), self.g - 1)
    }
}

impl fmt::Display for K3Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, s={}, d={})", self.g, self.s, self.d())
    }
}

/// The class `mH + nC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub m: i64,
    pub n: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { m: 0, n: 0 };
    pub const H: DivisorClass = DivisorClass { m: 1, n: 0 };
    pub const C: DivisorClass = DivisorClass { m: 0, n: 1 };

    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.m + rhs.m, self.n + rhs.n)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.m - rhs.m, self.n - rhs.n)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        Self::new(-self.m, -self.n)
    }
}

/// Intersection pairing.
pub fn pair(cfg: &K3Config, x: DivisorClass, y: DivisorClass) -> i64 {
    6 * x.m * y.m + cfg.d() * (x.m * y.n + x.n * y.m) + (2 * cfg.g - 2) * x.n * y.n
}

pub fn self_intersection(cfg: &K3Config, x: DivisorClass) -> i64 {
    pair(cfg, x, x)
}

/// `D·H = 6m + dn`.
pub fn deg_h(cfg: &K3Config, x: DivisorClass) -> i64 {
    6 * x.m + cfg.d() * x.n
}

/// `D·C = md + n(2g − 2)`.
pub fn deg_c(cfg: &K3Config, x: DivisorClass) -> i64 {
    x.m * cfg.d() + x.n * (2 * cfg.g - 2)
}

/// A nonzero class with `D² = 0`, when the lattice has one.
pub fn isotropic_class(cfg: &K3Config) -> Option<DivisorClass> {
    let (m, n) = bqf::isotropic_vector(&cfg.square_form())?;
    let m = i64::try_from(m).expect("isotropic vector of a lattice form fits in i64");
    let n = i64::try_from(n).expect("isotropic vector of a lattice form fits in i64");
    Some(DivisorClass::new(m, n))
}

/// Whether some nonzero class has `D² = 0`.
pub fn square_zero_status(cfg: &K3Config) -> bool {
    bqf::represents_zero_nontrivially(&cfg.square_form())
}

/// Decides whether a class with `D² = −2` exists, i.e. whether
/// `3m² + dmn + (g − 1)n²` takes the value −1.
///
/// Requires `d² − 12(g − 1)` positive and not a square; otherwise the
/// underlying form error is returned.
pub fn minus_two_status(cfg: &K3Config) -> Result<RepDecision, LatticeError> {
    Ok(bqf::represents(&cfg.half_square_form(), &BigInt::from(-1))?)
}

/// Classes in the box `|m|, |n| ≤ radius` that could be irreducible curves
/// (`D·H > 0`, `D² ≥ −2`) yet meet `C` non-positively.
///
/// The candidacy filter over-approximates the irreducible classes, so an
/// empty result corroborates ampleness of `C` on the box; it is not a proof.
pub fn ample_obstruction_scan(cfg: &K3Config, radius: i64) -> Vec<DivisorClass> {
    (-radius..=radius)
        .into_par_iter()
        .flat_map_iter(|m| {
            (-radius..=radius).filter_map(move |n| {
                let x = DivisorClass::new(m, n);
                let candidate = deg_h(cfg, x) > 0 && self_intersection(cfg, x) >= -2;
                (candidate && deg_c(cfg, x) <= 0).then_some(x)
            })
        })
        .collect()
}
