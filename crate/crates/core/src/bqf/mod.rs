//! Integer binary quadratic forms `a·m² + b·m·n + c·n²`.
//!
//! Everything here runs on arbitrary-precision integers. The central entry
//! point is [`represents`], a complete decision for whether an indefinite,
//! anisotropic form takes one of the values ±1, ±2.

mod cycle;
mod pell;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use cycle::{reduce, represents_via_cycle, ReducedForm, Transform};
pub use pell::{pell_fundamental, pell_search_bound, represents_via_pell};

/// Moduli tried by the fast obstruction path of [`represents`].
pub const DEFAULT_MODULI: [u64; 6] = [3, 4, 5, 8, 9, 16];

/// Radius of the small box scanned before the Pell and cycle machinery.
pub const SMALL_BOX_RADIUS: i64 = 4;

/// Largest Pell-class search range (number of `n` values) [`represents`]
/// accepts before switching to reduction cycles.
pub const PELL_SEARCH_LIMIT: u64 = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BqfError {
    #[error("integer square root of negative value {0}")]
    NegativeRadicand(BigInt),
    #[error("Pell parameter {0} must be positive")]
    NonPositivePell(BigInt),
    #[error("Pell parameter {0} is a perfect square")]
    SquarePell(BigInt),
    #[error("modulus {0} is below 2")]
    InvalidModulus(u64),
    #[error("form {form} has discriminant {disc}, which is not positive")]
    NotIndefinite {
        form: Box<QuadraticForm>,
        disc: BigInt,
    },
    #[error("form {0} has a perfect-square discriminant; use the isotropic-vector test")]
    Isotropic(Box<QuadraticForm>),
    #[error("target {0} is outside the complete decision range |t| in {{1, 2}}")]
    UnsupportedTarget(BigInt),
}

/// The form `a·m² + b·m·n + c·n²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn eval(&self, m: &BigInt, n: &BigInt) -> BigInt {
        &self.a * m * m + &self.b * m * n + &self.c * n * n
    }

    /// Evaluation on machine integers, for brute-force scans.
    pub fn eval_i64(&self, m: i64, n: i64) -> BigInt {
        self.eval(&BigInt::from(m), &BigInt::from(n))
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(self)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `b² − 4ac`.
pub fn discriminant(f: &QuadraticForm) -> BigInt {
    &f.b * &f.b - BigInt::from(4) * &f.a * &f.c
}

/// Exact square root: `Some(r)` with `r ≥ 0` and `r² = n`, or `None` when `n`
/// is not a perfect square.
pub fn integer_sqrt(n: &BigInt) -> Result<Option<BigInt>, BqfError> {
    if n.is_negative() {
        return Err(BqfError::NegativeRadicand(n.clone()));
    }
    let r = n.sqrt();
    Ok((&r * &r == *n).then_some(r))
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && matches!(integer_sqrt(n), Ok(Some(_)))
}

/// A nonzero integer vector `(m, n)` with `Q(m, n) = 0`, if one exists.
///
/// Such a vector exists exactly when the discriminant is a perfect square;
/// the forms with `a = 0` or `c = 0` have the obvious witnesses `(1, 0)` and
/// `(0, 1)`.
pub fn isotropic_vector(f: &QuadraticForm) -> Option<(BigInt, BigInt)> {
    if f.a.is_zero() {
        return Some((BigInt::one(), BigInt::zero()));
    }
    if f.c.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let disc = discriminant(f);
    if disc.is_negative() {
        return None;
    }
    let root = integer_sqrt(&disc).ok().flatten()?;
    // m/n = (−b + r) / 2a, written in lowest terms.
    let num = &root - &f.b;
    let den = BigInt::from(2) * &f.a;
    let g = num.gcd(&den);
    let (mut m, mut n) = (num / &g, den / &g);
    if n.is_negative() {
        m = -m;
        n = -n;
    }
    debug_assert!(f.eval(&m, &n).is_zero());
    Some((m, n))
}

pub fn represents_zero_nontrivially(f: &QuadraticForm) -> bool {
    isotropic_vector(f).is_some()
}

/// First modulus `k` in `moduli` for which `Q(m, n) ≡ t (mod k)` has no
/// solution in residues.
pub fn modular_obstruction(
    f: &QuadraticForm,
    t: &BigInt,
    moduli: &[u64],
) -> Result<Option<u64>, BqfError> {
    for &k in moduli {
        if k < 2 {
            return Err(BqfError::InvalidModulus(k));
        }
        if residue_obstructs(f, t, k) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exhaustive residue scan modulo `k`.
pub fn residue_obstructs(f: &QuadraticForm, t: &BigInt, k: u64) -> bool {
    let modulus = BigInt::from(k);
    let reduce = |x: &BigInt| -> u128 {
        x.mod_floor(&modulus)
            .try_into()
            .expect("residue fits in u128")
    };
    let (a, b, c, target) = (reduce(&f.a), reduce(&f.b), reduce(&f.c), reduce(t));
    let k = u128::from(k);
    for m in 0..k {
        for n in 0..k {
            if (a * m * m + b * m * n + c * n * n) % k == target {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepMethod {
    ModScan,
    BruteForce,
    PellSearch,
    ReductionCycle,
}

impl fmt::Display for RepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepMethod::ModScan => "mod_scan",
            RepMethod::BruteForce => "brute_force",
            RepMethod::PellSearch => "pell_search",
            RepMethod::ReductionCycle => "reduction_cycle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepStatus {
    Witness { m: BigInt, n: BigInt },
    ObstructedMod(u64),
    NoneProved,
}

impl RepStatus {
    pub fn is_witness(&self) -> bool {
        matches!(self, RepStatus::Witness { .. })
    }
}

/// Outcome of a representability query, with the method that settled it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDecision {
    pub status: RepStatus,
    pub method: RepMethod,
}

impl RepDecision {
    fn witness(m: BigInt, n: BigInt, method: RepMethod) -> Self {
        Self {
            status: RepStatus::Witness { m, n },
            method,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.status.is_witness()
    }
}

impl fmt::Display for RepDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            RepStatus::Witness { m, n } => write!(f, "Witness({m}, {n})")?,
            RepStatus::ObstructedMod(k) => write!(f, "ObstructedMod({k})")?,
            RepStatus::NoneProved => f.write_str("NoneProved")?,
        }
        write!(f, " via {}", self.method)
    }
}

// Witness coordinates can exceed any fixed width, so they travel as strings.
impl Serialize for RepDecision {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            status: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            m: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            n: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            modulus: Option<u64>,
            method: &'a RepMethod,
        }
        let wire = match &self.status {
            RepStatus::Witness { m, n } => Wire {
                status: "witness",
                m: Some(m.to_string()),
                n: Some(n.to_string()),
                modulus: None,
                method: &self.method,
            },
            RepStatus::ObstructedMod(k) => Wire {
                status: "obstructed_mod",
                m: None,
                n: None,
                modulus: Some(*k),
                method: &self.method,
            },
            RepStatus::NoneProved => Wire {
                status: "none_proved",
                m: None,
                n: None,
                modulus: None,
                method: &self.method,
            },
        };
        wire.serialize(serializer)
    }
}

fn check_target(t: &BigInt) -> Result<(), BqfError> {
    let mag = t.abs();
    if mag != BigInt::one() && mag != BigInt::from(2) {
        return Err(BqfError::UnsupportedTarget(t.clone()));
    }
    Ok(())
}

/// Checks the contract shared by the complete decision routes: positive
/// non-square discriminant and `|t| ∈ {1, 2}`.
pub(crate) fn check_decidable(f: &QuadraticForm, t: &BigInt) -> Result<BigInt, BqfError> {
    check_target(t)?;
    let disc = discriminant(f);
    if !disc.is_positive() {
        return Err(BqfError::NotIndefinite {
            form: Box::new(f.clone()),
            disc,
        });
    }
    if is_square(&disc) {
        return Err(BqfError::Isotropic(Box::new(f.clone())));
    }
    Ok(disc)
}

/// Deterministic scan of `|m|, |n| ≤ radius`, shell by shell, trying
/// nonnegative coordinates before negative ones.
pub fn search_box(f: &QuadraticForm, t: &BigInt, radius: i64) -> Option<(i64, i64)> {
    let order = |r: i64| (0..=r).flat_map(|v| if v == 0 { vec![0] } else { vec![v, -v] });
    for shell in 0..=radius {
        for m in order(shell) {
            for n in order(shell) {
                if m.abs().max(n.abs()) != shell {
                    continue;
                }
                if f.eval_i64(m, n) == *t {
                    return Some((m, n));
                }
            }
        }
    }
    None
}

/// Decides whether `f` takes the value `t`, for `|t| ∈ {1, 2}` and `f`
/// indefinite with non-square discriminant.
///
/// Routes, in order: residue obstruction on [`DEFAULT_MODULI`], a small box
/// scan, the Pell class search when its range is at most
/// [`PELL_SEARCH_LIMIT`], and otherwise the reduction cycle. Each route that
/// returns `NoneProved` is complete on its own.
///
/// A residue obstruction is a proof for any form, so it is reported before
/// the discriminant is checked.
pub fn represents(f: &QuadraticForm, t: &BigInt) -> Result<RepDecision, BqfError> {
    check_target(t)?;
    if let Some(k) = modular_obstruction(f, t, &DEFAULT_MODULI)? {
        return Ok(RepDecision {
            status: RepStatus::ObstructedMod(k),
            method: RepMethod::ModScan,
        });
    }
    let disc = check_decidable(f, t)?;
    if let Some((m, n)) = search_box(f, t, SMALL_BOX_RADIUS) {
        return Ok(RepDecision::witness(
            m.into(),
            n.into(),
            RepMethod::BruteForce,
        ));
    }
    let bound = pell_search_bound(f, t, &disc)?;
    if bound <= BigInt::from(PELL_SEARCH_LIMIT) {
        represents_via_pell(f, t)
    } else {
        represents_via_cycle(f, t)
    }
}
