//! Gauss reduction and cycles of reduced indefinite forms.
//!
//! A form `(a, b, c)` of non-square discriminant `Δ > 0` is reduced when
//! `|√Δ − 2|a|| < b < √Δ`. The step [`rho`] sends `(a, b, c)` to
//! `(c, b', a')` with `b' ≡ −b (mod 2c)`; iterated from any form it reaches a
//! reduced one, and on reduced forms it is a permutation whose orbits (the
//! cycles) are exactly the proper equivalence classes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_decidable, BqfError, QuadraticForm, RepDecision, RepMethod, RepStatus};

/// A 2×2 integer matrix `[[p, q], [r, s]]` of determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Transform {
    pub fn identity() -> Self {
        Self {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    fn mul(&self, rhs: &Transform) -> Transform {
        Transform {
            p: &self.p * &rhs.p + &self.q * &rhs.r,
            q: &self.p * &rhs.q + &self.q * &rhs.s,
            r: &self.r * &rhs.p + &self.s * &rhs.r,
            s: &self.r * &rhs.q + &self.s * &rhs.s,
        }
    }

    fn inverse(&self) -> Transform {
        Transform {
            p: self.s.clone(),
            q: -&self.q,
            r: -&self.r,
            s: self.p.clone(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }
}

/// `form = original ∘ transform`, i.e. `form(X, Y) = original(p·X + q·Y, r·X + s·Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub form: QuadraticForm,
    pub transform: Transform,
}

fn is_reduced(f: &QuadraticForm, isqrt_disc: &BigInt) -> bool {
    let two_a = BigInt::from(2) * f.a.abs();
    f.b.is_positive()
        && f.b <= *isqrt_disc
        && &two_a + &f.b > *isqrt_disc
        && &two_a - &f.b <= *isqrt_disc
}

/// One reduction step; returns the new form and the step matrix
/// `[[0, −1], [1, k]]`.
fn rho(f: &QuadraticForm, disc: &BigInt, isqrt_disc: &BigInt) -> (QuadraticForm, Transform) {
    let c_abs = f.c.abs();
    let two_c = BigInt::from(2) * &c_abs;
    let b_new = if c_abs > *isqrt_disc {
        // −|c| < b' ≤ |c|
        let r = (-&f.b).mod_floor(&two_c);
        if r > c_abs {
            r - &two_c
        } else {
            r
        }
    } else {
        // √Δ − 2|c| < b' < √Δ
        isqrt_disc - (isqrt_disc + &f.b).mod_floor(&two_c)
    };
    let k = (&b_new + &f.b) / (BigInt::from(2) * &f.c);
    let a_new = (&b_new * &b_new - disc) / (BigInt::from(4) * &f.c);
    let step = Transform {
        p: BigInt::zero(),
        q: BigInt::from(-1),
        r: BigInt::one(),
        s: k,
    };
    (QuadraticForm::new(f.c.clone(), b_new, a_new), step)
}

/// Reduces an indefinite form of non-square discriminant.
pub fn reduce(f: &QuadraticForm) -> Result<ReducedForm, BqfError> {
    let disc = f.discriminant();
    if !disc.is_positive() {
        return Err(BqfError::NotIndefinite {
            form: Box::new(f.clone()),
            disc,
        });
    }
    if super::is_square(&disc) {
        return Err(BqfError::Isotropic(Box::new(f.clone())));
    }
    let root = disc.sqrt();
    Ok(reduce_with(f, &disc, &root))
}

fn reduce_with(f: &QuadraticForm, disc: &BigInt, root: &BigInt) -> ReducedForm {
    let mut form = f.clone();
    let mut transform = Transform::identity();
    while !is_reduced(&form, root) {
        let (next, step) = rho(&form, disc, root);
        form = next;
        transform = transform.mul(&step);
    }
    ReducedForm { form, transform }
}

/// The cycle of a reduced form, each entry carrying the transform from the
/// starting form.
fn cycle_of(start: &QuadraticForm, disc: &BigInt, root: &BigInt) -> Vec<ReducedForm> {
    let mut out = vec![ReducedForm {
        form: start.clone(),
        transform: Transform::identity(),
    }];
    loop {
        let last = out.last().expect("cycle is nonempty");
        let (next, step) = rho(&last.form, disc, root);
        if next == *start {
            return out;
        }
        let transform = last.transform.mul(&step);
        out.push(ReducedForm {
            form: next,
            transform,
        });
    }
}

/// Complete decision by proper-equivalence testing.
///
/// Since `|t| ∈ {1, 2}` is squarefree, every representation is primitive, so
/// `f` takes the value `t` iff it is properly equivalent to some
/// `(t, B, (B² − Δ)/4t)` with `B` ranging over residues mod `2|t|`. Both
/// sides are reduced and `f`'s cycle is searched for the target.
pub fn represents_via_cycle(f: &QuadraticForm, t: &BigInt) -> Result<RepDecision, BqfError> {
    let disc = check_decidable(f, t)?;
    let root = disc.sqrt();
    let start = reduce_with(f, &disc, &root);
    let cycle: Vec<ReducedForm> = cycle_of(&start.form, &disc, &root);
    let index: HashMap<&QuadraticForm, usize> = cycle
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.form, i))
        .collect();

    let four_t = BigInt::from(4) * t;
    let two_abs_t = BigInt::from(2) * t.abs();
    let mut b = BigInt::zero();
    while b < two_abs_t {
        let numer = &b * &b - &disc;
        if numer.is_multiple_of(&four_t) {
            let target = QuadraticForm::new(t.clone(), b.clone(), numer / &four_t);
            let reduced = reduce_with(&target, &disc, &root);
            if let Some(&i) = index.get(&reduced.form) {
                // f ∘ (M_f · R_i) = target ∘ M_t, so f ∘ (M_f · R_i · M_t⁻¹) = target
                let w = start
                    .transform
                    .mul(&cycle[i].transform)
                    .mul(&reduced.transform.inverse());
                let (m, n) = (w.p, w.r);
                debug_assert_eq!(f.eval(&m, &n), *t);
                return Ok(RepDecision {
                    status: RepStatus::Witness { m, n },
                    method: RepMethod::ReductionCycle,
                });
            }
        }
        b += 1;
    }
    Ok(RepDecision {
        status: RepStatus::NoneProved,
        method: RepMethod::ReductionCycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(f: &QuadraticForm, m: &Transform) -> QuadraticForm {
        // coefficients of f(pX + qY, rX + sY)
        let a = f.eval(&m.p, &m.r);
        let c = f.eval(&m.q, &m.s);
        let b = BigInt::from(2) * &f.a * &m.p * &m.q
            + &f.b * (&m.p * &m.s + &m.q * &m.r)
            + BigInt::from(2) * &f.c * &m.r * &m.s;
        QuadraticForm::new(a, b, c)
    }

    #[test]
    fn reduction_transform_is_consistent() {
        for (a, b, c) in [
            (3, 14, 13),
            (3, 21, 21),
            (-7, 3, 11),
            (5, 101, -2),
            (13, 40, 29),
        ] {
            let f = QuadraticForm::new(a, b, c);
            let r = reduce(&f).unwrap();
            assert_eq!(r.transform.det(), BigInt::one());
            assert_eq!(apply(&f, &r.transform), r.form);
            let root = f.discriminant().sqrt();
            assert!(is_reduced(&r.form, &root));
        }
    }

    #[test]
    fn cycle_closes_and_stays_reduced() {
        let f = QuadraticForm::new(3, 14, 13);
        let disc = f.discriminant();
        let root = disc.sqrt();
        let start = reduce(&f).unwrap();
        let cycle = cycle_of(&start.form, &disc, &root);
        assert!(!cycle.is_empty());
        for entry in &cycle {
            assert!(is_reduced(&entry.form, &root));
            assert_eq!(entry.form.discriminant(), disc);
            assert_eq!(apply(&start.form, &entry.transform), entry.form);
        }
    }

    #[test]
    fn cycle_route_examples() {
        let minus_one = BigInt::from(-1);
        let f = QuadraticForm::new(3, 7, 3);
        let d = represents_via_cycle(&f, &minus_one).unwrap();
        let RepStatus::Witness { m, n } = &d.status else {
            panic!("expected witness");
        };
        assert_eq!(f.eval(m, n), minus_one);

        // x² − 3y² never takes −1 (mod 3 or mod 4)
        let d = represents_via_cycle(&QuadraticForm::new(1, 0, -3), &minus_one).unwrap();
        assert_eq!(d.status, RepStatus::NoneProved);
        assert_eq!(d.method, RepMethod::ReductionCycle);

        // x² − 34y² = −1 passes every local test yet has no solution
        let d = represents_via_cycle(&QuadraticForm::new(1, 0, -34), &minus_one).unwrap();
        assert_eq!(d.status, RepStatus::NoneProved);
    }
}
