//! Certificate assembly for a pair `(g, s)`.
//!
//! A certificate evaluates every numerical hypothesis of the construction
//! (genus/twist regime, no isotropic class, no (−2)-class, the Clifford
//! inequality) and records the derived invariants: the maximal Clifford index
//! `γ₁`, the bundle invariant `γ(E) = d/2 − 2`, the gap `γ₁ − γ(E)`, and the
//! expected dimension of `B(2, d, 4)`.
//!
//! `TheoremApplies` means the numerical hypotheses were verified. The
//! geometric inputs (existence of the surface, of the computing divisor and
//! of the bundle) are listed in [`CITED_DEPENDENCIES`] and not re-proved.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bqf::{self, RepDecision};
use crate::clifford::{self, CliffordReport, RootBounds};
use crate::lattice::{self, DivisorClass, K3Config, LatticeError};
use crate::rational::ExactRational;

pub use crate::lattice::Regime;

/// Box radius of the ampleness corroboration scan recorded in certificates.
pub const AMPLE_SCAN_RADIUS: i64 = 20;

/// `h⁰(O_C(H|_C))`, a constant of the construction.
pub const H0_H_RESTRICTED: i64 = 5;

pub const CITED_DEPENDENCIES: [&str; 4] = [
    "existence of a K3 surface of type (2,3) with Picard lattice ZH + ZC and the given Gram matrix",
    "existence of an effective divisor computing the Clifford index when it is not maximal",
    "projective normality of H restricted to C (h0 = 5)",
    "existence of the stable rank-two bundle E with h0(E) = 4 from the generated line bundle H|_C",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Config(#[from] LatticeError),
}

/// Why a certificate does not conclude.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FailReason {
    RegimeOutside,
    Lemma21PerfectSquare,
    SquareZeroClass,
    MinusTwoClass,
    MinusTwoUndecided(String),
    CliffordBelowTarget,
    CliffordNotRun,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::RegimeOutside => f.write_str("regime_outside"),
            FailReason::Lemma21PerfectSquare => f.write_str("discriminant_perfect_square"),
            FailReason::SquareZeroClass => f.write_str("square_zero_class"),
            FailReason::MinusTwoClass => f.write_str("minus_two_class"),
            FailReason::MinusTwoUndecided(_) => f.write_str("minus_two_undecided"),
            FailReason::CliffordBelowTarget => f.write_str("clifford_below_target"),
            FailReason::CliffordNotRun => f.write_str("clifford_not_run"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conclusion {
    TheoremApplies,
    HypothesesFail(Vec<FailReason>),
}

impl Conclusion {
    pub fn applies(&self) -> bool {
        matches!(self, Conclusion::TheoremApplies)
    }
}

/// `theorem_applies` or `hypotheses_fail:<reason>;<reason>...`
impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::TheoremApplies => f.write_str("theorem_applies"),
            Conclusion::HypothesesFail(reasons) => {
                f.write_str("hypotheses_fail:")?;
                for (i, r) in reasons.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            verdict: &'static str,
            reasons: Vec<String>,
        }
        let wire = match self {
            Conclusion::TheoremApplies => Wire {
                verdict: "theorem_applies",
                reasons: Vec::new(),
            },
            Conclusion::HypothesesFail(rs) => Wire {
                verdict: "hypotheses_fail",
                reasons: rs.iter().map(ToString::to_string).collect(),
            },
        };
        wire.serialize(serializer)
    }
}

/// The five hypothesis flags the conclusion is aggregated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub regime_ok: bool,
    pub lemma21_ok: bool,
    pub square_zero_free: bool,
    pub minus_two_free: bool,
    pub clifford_pass: bool,
}

impl HypothesisFlags {
    pub const ALL_HOLD: HypothesisFlags = HypothesisFlags {
        regime_ok: true,
        lemma21_ok: true,
        square_zero_free: true,
        minus_two_free: true,
        clifford_pass: true,
    };

    pub fn all(&self) -> bool {
        self.regime_ok
            && self.lemma21_ok
            && self.square_zero_free
            && self.minus_two_free
            && self.clifford_pass
    }
}

/// `s ≥ −1 ∧ g ≥ max{4s + 14, 12}` is strong; `s ≥ 1 ∧ g = 4s + 12` is
/// relaxed.
pub fn check_hypotheses(g: i64, s: i64) -> Regime {
    if s >= -1 && g >= (4 * s + 14).max(12) {
        Regime::Strong
    } else if s >= 1 && g == 4 * s + 12 {
        Regime::Relaxed
    } else {
        Regime::Outside
    }
}

/// True iff `d² − 6(2g − 2)` is not a perfect square (negative values are
/// not squares).
pub fn lemma21_check(g: i64, s: i64) -> bool {
    let d = g - s;
    let v = BigInt::from(d) * d - BigInt::from(6) * (2 * g - 2);
    v < BigInt::from(0) || !bqf::integer_sqrt(&v).expect("nonnegative").is_some()
}

/// `n²(g − 1) + 1 − k(k − d + n(g − 1))` for `B(n, d, k)`.
pub fn brill_noether_expected_dim(g: i64, rank: i64, degree: i64, sections: i64) -> i64 {
    rank * rank * (g - 1) + 1 - sections * (sections - degree + rank * (g - 1))
}

/// Expected dimension of `B(2, g − s, 4)`, which is `−4s − 11`.
pub fn expected_dim_bn24(g: i64, s: i64) -> i64 {
    let dim = -4 * s - 11;
    debug_assert_eq!(dim, brill_noether_expected_dim(g, 2, g - s, 4));
    dim
}

/// `γ(E) = (g − s)/2 − 2` for the rank-two bundle with four sections.
pub fn gamma_e(g: i64, s: i64) -> ExactRational {
    clifford::gamma(2, g - s, 4)
}

/// `⌊(g − 1)/2⌋ − ((g − s)/2 − 2)`.
pub fn gap_lower_bound(g: i64, s: i64) -> ExactRational {
    ExactRational::from_integer(clifford::gamma1_max(g)) - gamma_e(g, s)
}

pub fn conclude(flags: &HypothesisFlags) -> Conclusion {
    if flags.all() {
        return Conclusion::TheoremApplies;
    }
    let mut reasons = Vec::new();
    if !flags.regime_ok {
        reasons.push(FailReason::RegimeOutside);
    }
    if !flags.lemma21_ok {
        reasons.push(FailReason::Lemma21PerfectSquare);
    }
    if !flags.square_zero_free {
        reasons.push(FailReason::SquareZeroClass);
    }
    if !flags.minus_two_free {
        reasons.push(FailReason::MinusTwoClass);
    }
    if !flags.clifford_pass {
        reasons.push(FailReason::CliffordBelowTarget);
    }
    Conclusion::HypothesesFail(reasons)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmpleScan {
    pub radius: i64,
    pub flagged: Vec<DivisorClass>,
}

impl AmpleScan {
    pub fn clean(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// The full verdict record for one `(g, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub g: i64,
    pub s: i64,
    pub d: i64,
    pub regime: Regime,
    pub lemma21_ok: bool,
    pub square_zero_free: bool,
    /// `None` when `d² − 12(g − 1)` is not positive or is a square.
    pub minus_two: Option<RepDecision>,
    pub root_bounds: Option<RootBounds>,
    /// `None` when its preconditions fail.
    pub clifford: Option<CliffordReport>,
    pub ample_scan: AmpleScan,
    pub gamma1: i64,
    #[serde(rename = "gamma_E")]
    pub gamma_e: ExactRational,
    pub gap_lower_bound: ExactRational,
    /// `min{γ₁, d₄/2 − 2}` for a general curve of the same genus.
    pub general_curve_bound: ExactRational,
    pub expected_dim: i64,
    /// `(C − H)²`
    pub lemma31_square: i64,
    pub h0_h_restricted: i64,
    pub conclusion: Conclusion,
    pub cited_dependencies: Vec<&'static str>,
}

impl Certificate {
    pub fn flags(&self) -> HypothesisFlags {
        HypothesisFlags {
            regime_ok: self.regime != Regime::Outside,
            lemma21_ok: self.lemma21_ok,
            square_zero_free: self.square_zero_free,
            minus_two_free: self.minus_two.as_ref().is_some_and(|d| !d.is_witness()),
            clifford_pass: self.clifford.as_ref().is_some_and(|c| c.pass),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub ample_radius: i64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            ample_radius: AMPLE_SCAN_RADIUS,
        }
    }
}

pub fn build_certificate(g: i64, s: i64) -> Result<Certificate, CertifyError> {
    build_certificate_with(g, s, &CertifyOptions::default())
}

/// Fails only when `(g, s)` is not a valid lattice configuration
/// (`g < 2` or out of range); every hypothesis failure is reported in the
/// certificate's conclusion instead.
pub fn build_certificate_with(
    g: i64,
    s: i64,
    opts: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    let cfg = K3Config::new(g, s)?;
    let regime = check_hypotheses(g, s);
    let lemma21_ok = lemma21_check(g, s);
    let square_zero_free = !lattice::square_zero_status(&cfg);
    let root_bounds = clifford::roots_ab_checks(&cfg).ok();

    let minus_two = lattice::minus_two_status(&cfg);
    let minus_two_free = matches!(&minus_two, Ok(d) if !d.is_witness());
    let clifford = (square_zero_free && minus_two_free)
        .then(|| clifford::minimize_over_region(&cfg).ok())
        .flatten();

    let c_minus_h = DivisorClass::C - DivisorClass::H;
    let mut conclusion = conclude(&HypothesisFlags {
        regime_ok: regime != Regime::Outside,
        lemma21_ok,
        square_zero_free,
        minus_two_free,
        clifford_pass: clifford.as_ref().is_some_and(|c| c.pass),
    });
    if let Conclusion::HypothesesFail(reasons) = &mut conclusion {
        if let Err(e) = &minus_two {
            if let Some(r) = reasons
                .iter_mut()
                .find(|r| **r == FailReason::MinusTwoClass)
            {
                *r = FailReason::MinusTwoUndecided(e.to_string());
            }
        }
        if clifford.is_none() {
            if let Some(r) = reasons
                .iter_mut()
                .find(|r| **r == FailReason::CliffordBelowTarget)
            {
                *r = FailReason::CliffordNotRun;
            }
        }
    }

    Ok(Certificate {
        g,
        s,
        d: cfg.d(),
        regime,
        lemma21_ok,
        square_zero_free,
        minus_two: minus_two.ok(),
        root_bounds,
        clifford,
        ample_scan: AmpleScan {
            radius: opts.ample_radius,
            flagged: lattice::ample_obstruction_scan(&cfg, opts.ample_radius),
        },
        gamma1: clifford::gamma1_max(g),
        gamma_e: gamma_e(g, s),
        gap_lower_bound: gap_lower_bound(g, s),
        general_curve_bound: clifford::mercat_lower_bound(g),
        expected_dim: expected_dim_bn24(g, s),
        lemma31_square: lattice::self_intersection(&cfg, c_minus_h),
        h0_h_restricted: H0_H_RESTRICTED,
        conclusion,
        cited_dependencies: CITED_DEPENDENCIES.to_vec(),
    })
}

/// Certificates for every `g` in `g_range` and `s` in `s_range`, ordered by
/// `g` then `s`. Cells with `g < 2` are skipped.
pub fn certify_grid(
    g_range: std::ops::RangeInclusive<i64>,
    s_range: std::ops::RangeInclusive<i64>,
    opts: &CertifyOptions,
) -> Result<Vec<Certificate>, CertifyError> {
    let cells: Vec<(i64, i64)> = g_range
        .filter(|&g| g >= 2)
        .flat_map(|g| s_range.clone().map(move |s| (g, s)))
        .collect();
    cells
        .into_par_iter()
        .map(|(g, s)| build_certificate_with(g, s, opts))
        .collect()
}
