use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    check_decidable, integer_sqrt, is_square, BqfError, QuadraticForm, RepDecision, RepMethod,
    RepStatus,
};

/// Least positive solution of `x² − D·y² = 1`, read off the convergents of
/// the continued fraction of `√D`.
pub fn pell_fundamental(d: &BigInt) -> Result<(BigInt, BigInt), BqfError> {
    if !d.is_positive() {
        return Err(BqfError::NonPositivePell(d.clone()));
    }
    if is_square(d) {
        return Err(BqfError::SquarePell(d.clone()));
    }
    let a0 = d.sqrt();
    // Partial quotients of √D via (m + √D) / q, with q | D − m².
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut y) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - d * &y * &y == BigInt::one() {
            return Ok((p, y));
        }
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let p_next = &a * &p + &p_prev;
        let y_next = &a * &y + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut y, y_next);
    }
}

/// Upper bound on `n` for class representatives of `Q(m, n) = t`.
///
/// With `x = 2am + bn` the equation becomes `x² − Δn² = 4at`. Each orbit of
/// solutions under the unit `x₁ + y₁√Δ` has a representative with
/// `0 ≤ n ≤ √(|4at|·(x₁ + 1) / (2Δ))`; the value returned is that bound
/// rounded up plus one.
pub fn pell_search_bound(f: &QuadraticForm, t: &BigInt, disc: &BigInt) -> Result<BigInt, BqfError> {
    let (x1, _) = pell_fundamental(disc)?;
    let rhs = (BigInt::from(4) * &f.a * t).abs();
    let radicand = Integer::div_ceil(&(rhs * (x1 + BigInt::one())), &(BigInt::from(2) * disc));
    let mut root = radicand.sqrt();
    if &root * &root < radicand {
        root += 1;
    }
    Ok(root + 1)
}

/// Complete decision by enumerating the generalized Pell equation
/// `x² − Δn² = 4at` over the class-representative range from
/// [`pell_search_bound`] and keeping solutions with `x ≡ bn (mod 2a)`.
///
/// The running time is linear in the bound, which grows like `√x₁`; callers
/// with large fundamental units should prefer the reduction cycle.
pub fn represents_via_pell(f: &QuadraticForm, t: &BigInt) -> Result<RepDecision, BqfError> {
    let disc = check_decidable(f, t)?;
    let bound = pell_search_bound(f, t, &disc)?;
    let rhs = BigInt::from(4) * &f.a * t;
    let two_a = BigInt::from(2) * &f.a;
    let mut n = BigInt::zero();
    while n <= bound {
        let value = &rhs + &disc * &n * &n;
        if !value.is_negative() {
            if let Some(x) = integer_sqrt(&value)? {
                for x in [x.clone(), -x] {
                    let (m, rem) = (&x - &f.b * &n).div_rem(&two_a);
                    if rem.is_zero() {
                        debug_assert_eq!(f.eval(&m, &n), *t);
                        return Ok(RepDecision {
                            status: RepStatus::Witness { m, n },
                            method: RepMethod::PellSearch,
                        });
                    }
                }
            }
        }
        n += 1;
    }
    Ok(RepDecision {
        status: RepStatus::NoneProved,
        method: RepMethod::PellSearch,
    })
}
