//! Slopes on the projective rational line and continued fractions in the
//! `[r_n, ..., r_1] = -1/(r_n - 1/(r_{n-1} - ... - 1/r_1))` convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A reduced fraction `num/den` with `den >= 0`; `1/0` is the slope ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope<T> {
    num: T,
    den: T,
}

impl<T: Scalar> Slope<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::IndeterminateSlope);
        }
        Ok(Self::reduce(num, den))
    }

    // Caller guarantees (num, den) != (0, 0).
    fn reduce(num: T, den: T) -> Self {
        if den.is_zero() {
            return Self::infinity();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Slope { num, den }
    }

    pub fn infinity() -> Self {
        Slope {
            num: T::one(),
            den: T::zero(),
        }
    }

    pub fn integer(n: T) -> Self {
        Slope { num: n, den: T::one() }
    }

    pub fn zero() -> Self {
        Self::integer(T::zero())
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Strictly positive and finite.
    pub fn is_positive(&self) -> bool {
        !self.is_infinite() && self.num.is_positive()
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Slope {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// `-1/x`, with `-1/0 = ∞` and `-1/∞ = 0`.
    pub fn neg_recip(&self) -> Self {
        Self::reduce(-self.den.clone(), self.num.clone())
    }

    /// `x + k`, with `∞ + k = ∞`.
    pub fn add_int(&self, k: &T) -> Self {
        Self::reduce(self.num.clone() + k.clone() * self.den.clone(), self.den.clone())
    }

    /// Exact sum of two finite slopes; `None` if either is ∞.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_infinite() || other.is_infinite() {
            return None;
        }
        Some(Self::reduce(
            self.num.clone() * other.den.clone() + other.num.clone() * self.den.clone(),
            self.den.clone() * other.den.clone(),
        ))
    }
}

impl<T: Scalar> fmt::Display for Slope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<T: Scalar> FromStr for Slope<T> {
    type Err = Error;

    /// Accepts `p/q`, a bare integer `p`, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::infinity());
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map(T::lit)
                .map_err(|e| Error::Parse(format!("bad slope {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None => Ok(Self::integer(parse(s)?)),
        }
    }
}

/// A non-empty coefficient sequence `(r_n, ..., r_1)`, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> ContinuedFraction<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().copied().map(T::lit).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `[r_n, ..., r_1] -> [r_n, ..., r_1 + 1, 1]`, which has the same value.
    pub fn append_one(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.last_mut().expect("non-empty");
        *last = last.clone() + T::one();
        coeffs.push(T::one());
        Self { coeffs }
    }
}

impl<T: Scalar> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Evaluates `[r_n, ..., r_1]` on the projective line; total on every input.
pub fn cf_eval<T: Scalar>(cf: &ContinuedFraction<T>) -> Slope<T> {
    // [r_n, rest] = -1/(r_n + [rest]) with [] = 0.
    cf.coeffs
        .iter()
        .rev()
        .fold(Slope::zero(), |tail, r| tail.add_int(r).neg_recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionStyle {
    /// Odd length `(-b_n, b_{n-1}, ..., b_2, -b_1)` with every `b_j >= 0`.
    AlternatingNonnegative,
    /// Any expansion of odd length.
    OddLength,
}

pub fn cf_expand<T: Scalar>(s: &Slope<T>, style: ExpansionStyle) -> Result<ContinuedFraction<T>> {
    if s.is_infinite() {
        return Err(Error::InfiniteSlope(s.to_string()));
    }
    let cf = match style {
        ExpansionStyle::AlternatingNonnegative => expand_alternating(s)?,
        ExpansionStyle::OddLength => expand_floor(s),
    };
    Ok(if cf.len() % 2 == 0 { cf.append_one() } else { cf })
}

// With b = regular continued fraction of q/p, p/q = 1/(b_n + 1/(b_{n-1} + ... + 1/b_1)),
// which in this convention reads [-b_n, b_{n-1}, -b_{n-2}, ...].
fn expand_alternating<T: Scalar>(s: &Slope<T>) -> Result<ContinuedFraction<T>> {
    if !s.is_positive() {
        return Err(Error::NonPositiveSlope(s.to_string()));
    }
    let mut b = regular_cf(s.den().clone(), s.num().clone());
    if b.len().is_multiple_of(2) {
        // Splitting the last term a into (a - 1, 1) preserves the value.
        let last = b.pop().expect("non-empty");
        b.push(last - T::one());
        b.push(T::one());
    }
    let coeffs = b
        .into_iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { -v } else { v })
        .collect();
    ContinuedFraction::new(coeffs)
}

/// Regular continued fraction `[c_0; c_1, ..., c_k]` of `num/den` for `num >= 0`, `den > 0`.
fn regular_cf<T: Scalar>(mut num: T, mut den: T) -> Vec<T> {
    let mut out = Vec::new();
    while !den.is_zero() {
        let (quot, rem) = num.div_mod_floor(&den);
        out.push(quot);
        num = den;
        den = rem;
    }
    out
}

// x = -1/(r + y): take r = floor(-1/x), leaving y in [0, 1) with a smaller denominator.
fn expand_floor<T: Scalar>(s: &Slope<T>) -> ContinuedFraction<T> {
    if s.is_zero() {
        return ContinuedFraction {
            coeffs: vec![T::one(), T::one(), T::one()],
        };
    }
    let mut coeffs = Vec::new();
    let mut x = s.clone();
    while !x.is_zero() {
        let z = x.neg_recip();
        let r = z.num().div_floor(z.den());
        x = z.add_int(&-r.clone());
        coeffs.push(r);
    }
    ContinuedFraction { coeffs }
}

/// The triple of surgery coefficients `(+1, -q/(p+q), -p/(p+q))` for a `p/q`-lashing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MontesinosTriple<T> {
    pub nu: Slope<T>,
    pub mu: Slope<T>,
    pub lambda: Slope<T>,
}

fn montesinos_domain<T: Scalar>(s: &Slope<T>) -> Result<()> {
    if s.is_infinite() || s.num().is_negative() {
        return Err(Error::OutsideMontesinosDomain(s.to_string()));
    }
    Ok(())
}

pub fn montesinos_triple<T: Scalar>(s: &Slope<T>) -> Result<MontesinosTriple<T>> {
    montesinos_domain(s)?;
    let (p, q) = (s.num().clone(), s.den().clone());
    let sum = p.clone() + q.clone();
    Ok(MontesinosTriple {
        nu: Slope::integer(T::one()),
        mu: Slope::new(-q, sum.clone())?,
        lambda: Slope::new(-p, sum)?,
    })
}

/// Continued fractions for `-p/(p+q)` and `-q/(p+q)` built from an expansion
/// `p/q = [r_n, ..., r_1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MontesinosCf<T> {
    /// The expansion of `p/q` the two forms are derived from.
    pub base: ContinuedFraction<T>,
    /// `[1 - r_n, -r_{n-1}, ..., -r_1] = -p/(p+q)`.
    pub neg_p: ContinuedFraction<T>,
    /// `[1, r_n, ..., r_1] = -q/(p+q)`.
    pub neg_q: ContinuedFraction<T>,
}

pub fn montesinos_triple_cf<T: Scalar>(s: &Slope<T>) -> Result<MontesinosCf<T>> {
    montesinos_domain(s)?;
    let style = if s.is_zero() {
        ExpansionStyle::OddLength
    } else {
        ExpansionStyle::AlternatingNonnegative
    };
    let base = cf_expand(s, style)?;
    let r = base.coeffs();
    let mut neg_p: Vec<T> = r.iter().map(|c| -c.clone()).collect();
    neg_p[0] = T::one() - r[0].clone();
    let neg_q = std::iter::once(T::one()).chain(r.iter().cloned()).collect();
    Ok(MontesinosCf {
        neg_p: ContinuedFraction::new(neg_p)?,
        neg_q: ContinuedFraction::new(neg_q)?,
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn sl(n: i64, d: i64) -> Slope<i64> {
        Slope::new(n, d).unwrap()
    }

    fn cf(c: &[i64]) -> ContinuedFraction<i64> {
        ContinuedFraction::from_i64s(c).unwrap()
    }

    #[test]
    fn slope_canonical_form() {
        assert_eq!(sl(2, -4), sl(-1, 2));
        assert_eq!(sl(-7, 0), Slope::infinity());
        assert_eq!(sl(0, -3), Slope::zero());
        assert!(Slope::<i64>::new(0, 0).is_err());
        assert_eq!("3/-6".parse::<Slope<i64>>().unwrap(), sl(-1, 2));
        assert_eq!("inf".parse::<Slope<i64>>().unwrap(), Slope::infinity());
        assert_eq!(sl(3, 2).to_string(), "3/2");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf_eval(&cf(&[3])), sl(-1, 3));
        assert_eq!(cf_eval(&cf(&[0, 1, -1, 1])), sl(3, 2));
        assert_eq!(cf_eval(&cf(&[1, 1, 1])), sl(0, 1));
        assert_eq!(cf_eval(&cf(&[0])), Slope::infinity());
        // [1, 0] passes through ∞ at the inner level.
        assert_eq!(cf_eval(&cf(&[1, 0])), sl(0, 1));
        assert!(ContinuedFraction::<i64>::new(vec![]).is_err());
    }

    #[test]
    fn expand_examples() {
        let alt = ExpansionStyle::AlternatingNonnegative;
        assert_eq!(cf_expand(&sl(1, 2), alt).unwrap(), cf(&[-2]));
        assert_eq!(cf_expand(&sl(2, 3), alt).unwrap(), cf(&[-1, 1, -1]));
        assert_eq!(cf_expand(&sl(-1, 2), ExpansionStyle::OddLength).unwrap(), cf(&[2]));
        assert!(cf_expand(&Slope::<i64>::infinity(), ExpansionStyle::OddLength).is_err());
        assert!(cf_expand(&sl(-1, 2), alt).is_err());
        assert!(cf_expand(&sl(0, 1), alt).is_err());
        assert_eq!(
            cf_eval(&cf_expand(&sl(0, 1), ExpansionStyle::OddLength).unwrap()),
            sl(0, 1)
        );
    }

    #[test]
    fn alternating_expansion_brute_force_agrees() {
        // Exhaustive search over b_j in 0..=4, lengths 1 and 3.
        let alt = ExpansionStyle::AlternatingNonnegative;
        for b1 in 0..=4i64 {
            let v = cf_eval(&cf(&[-b1]));
            if v.is_positive() {
                assert_eq!(cf_eval(&cf_expand(&v, alt).unwrap()), v);
            }
            for b2 in 0..=4 {
                for b3 in 0..=4 {
                    let v = cf_eval(&cf(&[-b3, b2, -b1]));
                    if v.is_positive() {
                        assert_eq!(cf_eval(&cf_expand(&v, alt).unwrap()), v);
                    }
                }
            }
        }
        // 2/3 is hit by b = (1, 1, 1) and nothing shorter.
        assert!((0..=10).all(|b| cf_eval(&cf(&[-b])) != sl(2, 3)));
        assert_eq!(cf_eval(&cf(&[-1, 1, -1])), sl(2, 3));
    }

    #[test]
    fn triple_examples() {
        let t = montesinos_triple(&sl(1, 1)).unwrap();
        assert_eq!((t.nu, t.mu, t.lambda), (sl(1, 1), sl(-1, 2), sl(-1, 2)));
        let t = montesinos_triple(&sl(1, 2)).unwrap();
        assert_eq!((t.mu, t.lambda), (sl(-2, 3), sl(-1, 3)));
        let t = montesinos_triple(&sl(0, 1)).unwrap();
        assert_eq!((t.mu, t.lambda), (sl(-1, 1), sl(0, 1)));
        assert!(montesinos_triple(&sl(-1, 2)).is_err());
        assert!(montesinos_triple(&Slope::<i64>::infinity()).is_err());
    }

    #[test]
    fn triple_cf_examples() {
        let m = montesinos_triple_cf(&sl(1, 1)).unwrap();
        assert_eq!((m.neg_p.clone(), m.neg_q.clone()), (cf(&[2]), cf(&[1, -1])));
        assert_eq!(cf_eval(&m.neg_p), sl(-1, 2));
        assert_eq!(cf_eval(&m.neg_q), sl(-1, 2));
        let m = montesinos_triple_cf(&sl(1, 2)).unwrap();
        assert_eq!((m.neg_p.clone(), m.neg_q.clone()), (cf(&[3]), cf(&[1, -2])));
        assert_eq!(cf_eval(&m.neg_p), sl(-1, 3));
        assert_eq!(cf_eval(&m.neg_q), sl(-2, 3));
        let m = montesinos_triple_cf(&sl(0, 1)).unwrap();
        assert_eq!(cf_eval(&m.neg_p), sl(0, 1));
        assert_eq!(cf_eval(&m.neg_q), sl(-1, 1));
    }

    #[test]
    fn bigint_path_matches_i64() {
        let big = ContinuedFraction::<BigInt>::from_i64s(&[0, 1, -1, 1]).unwrap();
        assert_eq!(cf_eval(&big).to_string(), "3/2");
        let huge = Slope::new(BigInt::from(10).pow(40) + 1u8, BigInt::from(3).pow(50)).unwrap();
        let e = cf_expand(&huge, ExpansionStyle::AlternatingNonnegative).unwrap();
        assert_eq!(cf_eval(&e), huge);
    }

    proptest! {
        #[test]
        fn append_identity(coeffs in prop::collection::vec(-6i64..=6, 1..10)) {
            let c = cf(&coeffs);
            prop_assert_eq!(cf_eval(&c), cf_eval(&c.append_one()));
        }

        #[test]
        fn odd_length_roundtrip_any_sign(p in -300i64..=300, q in 1i64..=300) {
            let s = sl(p, q);
            let e = cf_expand(&s, ExpansionStyle::OddLength).unwrap();
            prop_assert_eq!(e.len() % 2, 1);
            prop_assert_eq!(cf_eval(&e), s);
        }

        #[test]
        fn alternating_signs(p in 1i64..=300, q in 1i64..=300) {
            let e = cf_expand(&sl(p, q), ExpansionStyle::AlternatingNonnegative).unwrap();
            prop_assert_eq!(e.len() % 2, 1);
            for (i, c) in e.coeffs().iter().enumerate() {
                if i % 2 == 0 { prop_assert!(*c <= 0) } else { prop_assert!(*c >= 0) }
            }
        }

        #[test]
        fn returned_slopes_are_canonical(coeffs in prop::collection::vec(-9i64..=9, 1..8)) {
            let v = cf_eval(&cf(&coeffs));
            prop_assert!(*v.den() >= 0);
            prop_assert_eq!(num_integer::gcd(*v.num(), *v.den()), 1);
            if v.is_infinite() { prop_assert_eq!(*v.num(), 1) }
        }
    }
}
