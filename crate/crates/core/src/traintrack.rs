//! Branch weights of the framed train track carrying a `p/q`-lashing, and the
//! positive-braid formulas evaluated from them.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Twist parameters `a = (a_1, ..., a_n)` of the 3-braid, the twist count `m`
/// and the lashing slope `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LashingParams<T> {
    a: Vec<T>,
    m: T,
    p: T,
    q: T,
}

impl<T: Scalar> LashingParams<T> {
    pub fn new(a: Vec<T>, m: T, p: T, q: T) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidLashing("need at least one twist parameter".into()));
        }
        if a.iter().chain([&m, &p, &q]).any(|v| v.is_negative()) {
            return Err(Error::InvalidLashing("parameters must be non-negative".into()));
        }
        if p.gcd(&q) != T::one() {
            return Err(Error::InvalidLashing(format!("p = {p} and q = {q} are not coprime")));
        }
        Ok(Self { a, m, p, q })
    }

    pub fn from_i64s(a: &[i64], m: i64, p: i64, q: i64) -> Result<Self> {
        Self::new(a.iter().copied().map(T::lit).collect(), T::lit(m), T::lit(p), T::lit(q))
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn m(&self) -> &T {
        &self.m
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    fn n(&self) -> usize {
        self.a.len()
    }
}

/// `(x_0, ..., x_n)` and `(y_0, ..., y_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrackWeights<T> {
    pub xs: Vec<T>,
    pub ys: Vec<T>,
}

impl<T: Scalar> TrackWeights<T> {
    pub fn x_n(&self) -> &T {
        self.xs.last().expect("n >= 1")
    }

    pub fn y_n(&self) -> &T {
        self.ys.last().expect("n >= 1")
    }
}

pub fn weights<T: Scalar>(params: &LashingParams<T>) -> TrackWeights<T> {
    let LashingParams { a, m, p, q } = params;
    let (p, q) = (p.clone(), q.clone());
    let two = T::lit(2);
    // p + (m+1)(p+q), shared by x_1 and every odd step.
    let base = p.clone() + (m.clone() + T::one()) * (p.clone() + q.clone());
    let mut xs = vec![T::zero(), (a[0].clone() + two.clone()) * base.clone()];
    let mut ys = vec![T::zero(), T::zero()];
    for i in 2..=a.len() {
        let (x, y) = (xs[i - 1].clone(), ys[i - 1].clone());
        let ai = a[i - 1].clone();
        if i % 2 == 0 {
            let dy = ai * (x.clone() - two.clone() * p.clone() - q.clone());
            xs.push(x);
            ys.push(y + dy);
        } else {
            xs.push(x + ai * (y.clone() + base.clone()));
            ys.push(y);
        }
    }
    TrackWeights { xs, ys }
}

/// Closed forms for `(x_3, y_3)` when the braid has three twist regions.
pub fn weights_closed_n3<T: Scalar>(params: &LashingParams<T>) -> Result<(T, T)> {
    if params.n() != 3 {
        return Err(Error::WrongLength {
            expected: 3,
            found: params.n(),
        });
    }
    let l = T::lit;
    let (a1, a2, a3) = (params.a[0].clone(), params.a[1].clone(), params.a[2].clone());
    let (m, p, q) = (params.m.clone(), params.p.clone(), params.q.clone());
    let a32 = a3.clone() * a2.clone();
    let c = a32.clone() * (a1.clone() + l(2)) + a3 + a1.clone() + l(2);
    let x3 =
        (c.clone() * (m.clone() + l(2)) - l(2) * a32.clone()) * p.clone() + (c * (m.clone() + l(1)) - a32) * q.clone();
    let e = a2.clone() * (a1 + l(2));
    let y3 = (e.clone() * (m.clone() + l(2)) - l(2) * a2.clone()) * p + (e * (m + l(1)) - a2) * q;
    Ok((x3, y3))
}

/// Integral slope of the alternating surgery on the lashing.
pub fn lambda_alt<T: Scalar>(params: &LashingParams<T>) -> T {
    let w = weights(params);
    let (x, y) = (w.x_n().clone(), w.y_n().clone());
    let (m, p, q) = (params.m.clone(), params.p.clone(), params.q.clone());
    let l = T::lit;
    (l(3) + m.clone()) * p.clone() * p.clone()
        + m.clone() * q.clone() * q.clone()
        + x.clone() * x.clone()
        + x.clone() * y.clone()
        + (-l(4) * x.clone() - m.clone() * x.clone() - l(2) * y.clone()) * p.clone()
        + (-x.clone() - m.clone() * x - y) * q.clone()
        + (l(1) + l(2) * m) * p * q
}

/// The genus polynomial exactly as printed. It does not reproduce tabulated
/// genera and is reported for comparison only; see [`crate::family`].
pub fn genus_formula_printed<T: Scalar>(params: &LashingParams<T>) -> T {
    let w = weights(params);
    let (x, y) = (w.x_n().clone(), w.y_n().clone());
    let (m, p, q) = (params.m.clone(), params.p.clone(), params.q.clone());
    let l = T::lit;
    l(1) + (l(5) + l(2) * m.clone()) * p.clone() * p.clone() + (l(1) + l(2) * m.clone()) * q.clone() * q.clone()
        - l(2) * x.clone()
        + x.clone() * x.clone()
        + x.clone() * y.clone()
        + (l(4) + m.clone() - l(4) * x.clone() - m.clone() * x.clone() - l(2) * y.clone()) * p.clone()
        + (l(1) + m.clone() - x.clone() - m.clone() * x - y) * q.clone()
        + (l(4) + l(4) * m) * p * q
}

/// Outcome of the train-track switch check `x_n >= (m+2)(p+q) + 2p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchReport {
    pub holds: bool,
    pub equality: bool,
    pub m_and_a1_zero: bool,
}

pub fn switch_condition<T: Scalar>(params: &LashingParams<T>) -> SwitchReport {
    let w = weights(params);
    let (m, p, q) = (&params.m, &params.p, &params.q);
    let bound = (m.clone() + T::lit(2)) * (p.clone() + q.clone()) + T::lit(2) * p.clone();
    SwitchReport {
        holds: *w.x_n() >= bound,
        equality: *w.x_n() == bound,
        m_and_a1_zero: m.is_zero() && params.a[0].is_zero(),
    }
}

/// `x_n - 2p - q`, a model for the strand count of the braided closure.
///
/// Agrees with both explicitly published braids (12 and 29 strands); not
/// established beyond them. `None` when the value is not positive.
pub fn strand_count_model<T: Scalar>(params: &LashingParams<T>) -> Option<T> {
    let w = weights(params);
    let s = w.x_n().clone() - T::lit(2) * params.p.clone() - params.q.clone();
    s.is_positive().then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn lp(a: &[i64], m: i64, p: i64, q: i64) -> LashingParams<i64> {
        LashingParams::from_i64s(a, m, p, q).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(LashingParams::<i64>::from_i64s(&[], 0, 1, 0).is_err());
        assert!(LashingParams::<i64>::from_i64s(&[1], -1, 1, 0).is_err());
        assert!(LashingParams::<i64>::from_i64s(&[1], 0, 2, 4).is_err());
        assert!(LashingParams::<i64>::from_i64s(&[1], 0, 0, 0).is_err());
    }

    #[test]
    fn weight_examples() {
        let w = weights(&lp(&[1, 1, 0], 1, 1, 1));
        assert_eq!((*w.x_n(), *w.y_n()), (15, 12));
        assert_eq!(w.xs, vec![0, 15, 15, 15]);
        let w = weights(&lp(&[1, 1, 1], 1, 1, 1));
        assert_eq!((*w.x_n(), *w.y_n()), (32, 12));
        for (m, p, q) in [(0, 1, 0), (3, 2, 5), (1, 0, 1)] {
            assert_eq!(weights(&lp(&[4], m, p, q)).ys[1], 0);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(weights_closed_n3(&lp(&[1, 1, 0], 1, 1, 1)).unwrap(), (15, 12));
        assert_eq!(weights_closed_n3(&lp(&[0, 0, 0], 0, 1, 0)).unwrap(), (4, 0));
        assert_eq!(weights_closed_n3(&lp(&[1, 1, 1], 1, 1, 2)).unwrap(), (45, 17));
        assert!(matches!(
            weights_closed_n3(&lp(&[1, 1], 1, 1, 1)),
            Err(Error::WrongLength { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_alt(&lp(&[1, 1, 0], 1, 1, 1)), 272);
        assert_eq!(lambda_alt(&lp(&[1, 1, 1], 1, 1, 1)), 1156);
        assert_eq!(lambda_alt(&lp(&[1, 0, 0], 2, 1, 2)), 563);
        assert_eq!(lambda_alt(&lp(&[1, 1, 1], 1, 1, 2)), 2331);
    }

    #[test]
    fn printed_genus_smallest() {
        // x = 4, y = 0: 1 + 5 - 8 + 16 - 12.
        assert_eq!(genus_formula_printed(&lp(&[0], 0, 1, 0)), 2);
        assert_eq!(genus_formula_printed(&lp(&[1, 1, 0], 1, 1, 1)), 260);
    }

    #[test]
    fn switch_examples() {
        let s = switch_condition(&lp(&[1, 1, 0], 1, 1, 1));
        assert!(s.holds && !s.equality && !s.m_and_a1_zero);
        let s = switch_condition(&lp(&[0], 0, 1, 0));
        assert!(s.holds && s.equality && s.m_and_a1_zero);
        for m in 1..5 {
            for a1 in 0..4 {
                for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 3)] {
                    let s = switch_condition(&lp(&[a1, 2, 1], m, p, q));
                    assert!(s.holds && !s.equality);
                }
            }
        }
    }

    #[test]
    fn strand_model() {
        assert_eq!(strand_count_model(&lp(&[1, 1, 0], 1, 1, 1)), Some(12));
        assert_eq!(strand_count_model(&lp(&[1, 1, 1], 1, 1, 1)), Some(29));
        assert_eq!(strand_count_model(&lp(&[0], 0, 1, 0)), Some(2));
    }

    #[test]
    fn bigint_matches_i64() {
        let p = LashingParams::<BigInt>::from_i64s(&[1, 1, 1], 1, 1, 1).unwrap();
        assert_eq!(lambda_alt(&p), BigInt::from(1156));
    }

    #[test]
    fn weights_are_monotone_with_structure() {
        for a in [vec![3, 0, 2, 5, 1], vec![0, 0, 0, 0], vec![2, 2, 2, 2, 2, 2]] {
            let w = weights(&lp(&a, 2, 3, 2));
            assert!(w.xs.windows(2).all(|v| v[0] <= v[1]));
            assert!(w.ys.iter().all(|y| *y >= 0));
            for k in 1..w.xs.len() / 2 + 1 {
                if 2 * k < w.xs.len() {
                    assert_eq!(w.xs[2 * k], w.xs[2 * k - 1]);
                }
                if 2 * k + 1 < w.ys.len() {
                    assert_eq!(w.ys[2 * k + 1], w.ys[2 * k]);
                }
            }
        }
    }
}
