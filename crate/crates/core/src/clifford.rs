//! Clifford-index numerics and the certified minimization of
//! `f(m, n) = D·C − D² − 2` over the classes that could compute the Clifford
//! index of `C`.

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bqf::RepDecision;
use crate::lattice::{self, DivisorClass, K3Config, LatticeError};
use crate::rational::ExactRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("d² − 12(g − 1) = {0} is not positive for {1}")]
    NotHyperbolic(i64, K3Config),
    #[error("d² − 12(g − 1) = {0} is a perfect square for {1}")]
    SquareDiscriminant(i64, K3Config),
    #[error("the lattice of {0} has a class of square zero")]
    SquareZeroClass(K3Config),
    #[error("the lattice of {cfg} has a (−2)-class: {decision}")]
    MinusTwoClass {
        cfg: K3Config,
        decision: RepDecision,
    },
    #[error("box radius must be at least 1")]
    InvalidRadius,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `γ = (d − 2(h⁰ − n)) / n` for a bundle of rank `n`, degree `d` and `h⁰`
/// sections. Only meaningful for `h⁰ ≥ 2n` as in the rank-`n` Clifford index;
/// that side condition is not checked here.
///
/// Panics if `rank` is zero.
pub fn gamma(rank: u32, degree: i64, h0: i64) -> ExactRational {
    assert!(rank >= 1, "rank must be positive");
    let n = i64::from(rank);
    ExactRational::new(degree - 2 * (h0 - n), n)
}

/// Maximal Clifford index `⌊(g − 1)/2⌋`.
pub fn gamma1_max(g: i64) -> i64 {
    (g - 1).div_euclid(2)
}

/// Gonality `d_r = g + r − ⌊g/(r + 1)⌋` of a general curve.
pub fn gonality(g: i64, r: i64) -> i64 {
    g + r - g.div_euclid(r + 1)
}

/// `min{γ₁, d₄/2 − 2}` for a general curve of genus `g`.
pub fn mercat_lower_bound(g: i64) -> ExactRational {
    let from_d4 = ExactRational::new(gonality(g, 4), 2) - ExactRational::from_integer(2);
    ExactRational::from_integer(gamma1_max(g)).min(from_d4)
}

/// `f(m, n) = −6m² + (1 − 2n)dm + (n − n²)(2g − 2) − 2`.
pub fn f_value(cfg: &K3Config, m: i64, n: i64) -> i64 {
    let d = cfg.d();
    -6 * m * m + (1 - 2 * n) * d * m + (n - n * n) * (2 * cfg.g() - 2) - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    /// `3m² + mnd + n²(g − 1) > 0`
    pub positive_square: bool,
    /// `2 < 6m + nd < d − 2`
    pub degree_window: bool,
    /// `md + (2n − 1)(g − 1) ≤ 0`
    pub half_degree: bool,
}

impl Constraints {
    pub fn all(&self) -> bool {
        self.positive_square && self.degree_window && self.half_degree
    }
}

pub fn constraints(cfg: &K3Config, m: i64, n: i64) -> Constraints {
    let (d, g) = (cfg.d(), cfg.g());
    let deg = 6 * m + n * d;
    Constraints {
        positive_square: 3 * m * m + m * n * d + n * n * (g - 1) > 0,
        degree_window: 2 < deg && deg < d - 2,
        half_degree: m * d + (2 * n - 1) * (g - 1) <= 0,
    }
}

/// Position of `b = (d − √(d² − 12(g − 1)))/6`, the smaller root of
/// `6x² − 2dx + 2g − 2`, against 1, 4/3 and 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootBounds {
    pub b_gt_1: bool,
    pub b_lt_4_3: bool,
    pub b_lt_3_2: bool,
}

fn hyperbolic_discriminant(cfg: &K3Config) -> Result<i64, CliffordError> {
    let disc = cfg.reduced_discriminant();
    if disc <= 0 {
        return Err(CliffordError::NotHyperbolic(disc, *cfg));
    }
    let r = disc.sqrt();
    if r * r == disc {
        return Err(CliffordError::SquareDiscriminant(disc, *cfg));
    }
    Ok(disc)
}

pub fn roots_ab_checks(cfg: &K3Config) -> Result<RootBounds, CliffordError> {
    let disc = hyperbolic_discriminant(cfg)?;
    let d = cfg.d();
    // 6b < k  ⟺  d − k < √Δ′, and 6b > k  ⟺  d − k > √Δ′.
    let below = |k: i64| d - k < 0 || (d - k) * (d - k) < disc;
    let above = |k: i64| d - k > 0 && (d - k) * (d - k) > disc;
    Ok(RootBounds {
        b_gt_1: above(6),
        b_lt_4_3: below(8),
        b_lt_3_2: below(9),
    })
}

/// Every `(m, n)` meeting the positivity and degree-window constraints has
/// `|n|·√Δ′ < d − 2`; this returns `⌊(d − 2)/√Δ′⌋ + 1`.
pub fn search_radius(cfg: &K3Config) -> Result<i64, CliffordError> {
    let disc = hyperbolic_discriminant(cfg)?;
    let span = (cfg.d() - 2).max(0);
    Ok((span * span / disc).sqrt() + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordReport {
    /// `None` when the region is empty.
    pub min_value: Option<i64>,
    pub argmin: Option<DivisorClass>,
    pub region_size: u64,
    pub bound_n: i64,
    /// `⌊(g − 1)/2⌋`
    pub target: i64,
    pub pass: bool,
}

#[derive(Clone, Copy)]
struct Slice {
    best: Option<(i64, DivisorClass)>,
    count: u64,
}

impl Slice {
    const EMPTY: Slice = Slice {
        best: None,
        count: 0,
    };

    fn visit(mut self, cfg: &K3Config, x: DivisorClass) -> Self {
        if constraints(cfg, x.m, x.n).all() {
            self.count += 1;
            let v = f_value(cfg, x.m, x.n);
            self.best = Self::better(self.best, Some((v, x)));
        }
        self
    }

    // smallest value, ties to the lexicographically smallest (n, m)
    fn better(
        a: Option<(i64, DivisorClass)>,
        b: Option<(i64, DivisorClass)>,
    ) -> Option<(i64, DivisorClass)> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(p), Some(q)) => {
                let key = |(v, c): (i64, DivisorClass)| (v, c.n, c.m);
                Some(if key(q) < key(p) { q } else { p })
            }
        }
    }

    fn merge(self, other: Slice) -> Slice {
        Slice {
            best: Self::better(self.best, other.best),
            count: self.count + other.count,
        }
    }

    fn into_report(self, cfg: &K3Config, bound_n: i64) -> CliffordReport {
        let target = gamma1_max(cfg.g());
        CliffordReport {
            min_value: self.best.map(|(v, _)| v),
            argmin: self.best.map(|(_, c)| c),
            region_size: self.count,
            bound_n,
            target,
            pass: self.best.is_none_or(|(v, _)| v >= target),
        }
    }
}

/// Exact minimum of `f` over the finite region cut out by the three
/// constraints.
///
/// For each `|n| ≤` [`search_radius`], the degree window confines `m` to the
/// open strip `((2 − nd)/6, (d − 2 − nd)/6)`; every integer there is tested
/// against all three constraints exactly. Only requires `d² − 12(g − 1)` to
/// be positive and non-square; see [`verify_clifford`] for the checked
/// entry point.
pub fn minimize_over_region(cfg: &K3Config) -> Result<CliffordReport, CliffordError> {
    let bound = search_radius(cfg)?;
    let d = cfg.d();
    let slice = (-bound..=bound)
        .into_par_iter()
        .map(|n| {
            let lo = (2 - n * d).div_euclid(6) + 1;
            let hi = -(-(d - 2 - n * d)).div_euclid(6) - 1;
            (lo..=hi).fold(Slice::EMPTY, |acc, m| {
                acc.visit(cfg, DivisorClass::new(m, n))
            })
        })
        .reduce(|| Slice::EMPTY, Slice::merge);
    Ok(slice.into_report(cfg, bound))
}

/// Checks that the lattice is hyperbolic with no class of square zero and
/// then runs [`minimize_over_region`]. A passing report means
/// `f ≥ ⌊(g − 1)/2⌋` on the whole region, which is the inequality behind
/// maximal Clifford index.
///
/// The absence of (−2)-classes is a hypothesis of the surrounding argument,
/// not of the minimization; [`crate::certify`] checks it separately and
/// [`verify_clifford_strict`] bundles both.
pub fn verify_clifford(cfg: &K3Config) -> Result<CliffordReport, CliffordError> {
    hyperbolic_discriminant(cfg)?;
    if lattice::square_zero_status(cfg) {
        return Err(CliffordError::SquareZeroClass(*cfg));
    }
    minimize_over_region(cfg)
}

/// [`verify_clifford`], additionally rejecting lattices with a (−2)-class.
pub fn verify_clifford_strict(cfg: &K3Config) -> Result<CliffordReport, CliffordError> {
    hyperbolic_discriminant(cfg)?;
    let decision = lattice::minus_two_status(cfg)?;
    if decision.is_witness() {
        return Err(CliffordError::MinusTwoClass {
            cfg: *cfg,
            decision,
        });
    }
    verify_clifford(cfg)
}

/// The same minimization by a naive double loop over `|m|, |n| ≤ radius`.
pub fn brute_force_min_f(cfg: &K3Config, radius: i64) -> Result<CliffordReport, CliffordError> {
    if radius < 1 {
        return Err(CliffordError::InvalidRadius);
    }
    let mut slice = Slice::EMPTY;
    for n in -radius..=radius {
        for m in -radius..=radius {
            slice = slice.visit(cfg, DivisorClass::new(m, n));
        }
    }
    Ok(slice.into_report(cfg, radius))
}
