//! Dehn twists of the once-punctured torus acting on `H_1(T) = ℤ⟨μ, λ⟩`.
//!
//! In the oriented basis `⟨μ, λ⟩` the twists are `φ_μ = [[1, 1], [0, 1]]` and
//! `φ_λ = [[1, 0], [-1, 1]]`. A word `(r_n, ..., r_1)` of odd length stands for
//! `φ_λ^{r_n} ∘ ... ∘ φ_μ^{r_2} ∘ φ_λ^{r_1}`, and sends `μ` to the curve whose
//! slope is the continued fraction `[r_n, ..., r_1]`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use crate::contfrac::Slope;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A 2×2 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Scalar> Mat2<T> {
    pub fn identity() -> Self {
        Mat2([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    /// `φ_μ^k`.
    pub fn twist_mu(k: T) -> Self {
        Mat2([[T::one(), k], [T::zero(), T::one()]])
    }

    /// `φ_λ^k`.
    pub fn twist_lambda(k: T) -> Self {
        Mat2([[T::one(), T::zero()], [-k, T::one()]])
    }

    pub fn det(&self) -> T {
        let [[a, b], [c, d]] = &self.0;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn apply(&self, v: (T, T)) -> (T, T) {
        let [[a, b], [c, d]] = &self.0;
        (
            a.clone() * v.0.clone() + b.clone() * v.1.clone(),
            c.clone() * v.0 + d.clone() * v.1,
        )
    }
}

impl<T: Scalar> Mul for &Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: &Mat2<T>) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

/// A primitive class `p[μ] + q[λ]` in `H_1(T)`.
///
/// The stored coordinates are an oriented representative; equality and hashing
/// treat a class and its negation as the same unoriented curve.
#[derive(Clone, Debug)]
pub struct CurveClass<T> {
    mu: T,
    lambda: T,
}

impl<T: Scalar> CurveClass<T> {
    pub fn new(mu: T, lambda: T) -> Result<Self> {
        if mu.gcd(&lambda) != T::one() {
            return Err(Error::NotPrimitive(mu.to_string(), lambda.to_string()));
        }
        Ok(Self { mu, lambda })
    }

    pub fn mu_coeff(&self) -> &T {
        &self.mu
    }

    pub fn lambda_coeff(&self) -> &T {
        &self.lambda
    }

    /// The representative with `λ`-coefficient `>= 0`, and `μ`-coefficient 1 when that is 0.
    pub fn canonical(&self) -> Self {
        let flip = self.lambda.is_negative() || (self.lambda.is_zero() && self.mu.is_negative());
        if flip {
            Self {
                mu: -self.mu.clone(),
                lambda: -self.lambda.clone(),
            }
        } else {
            self.clone()
        }
    }

    pub fn slope(&self) -> Slope<T> {
        Slope::new(self.mu.clone(), self.lambda.clone()).expect("primitive class is non-zero")
    }

    /// `q p' - p q'` for `self = (p, q)`, `other = (p', q')`.
    pub fn algebraic_intersection(&self, other: &Self) -> T {
        other.mu.clone() * self.lambda.clone() - self.mu.clone() * other.lambda.clone()
    }
}

impl<T: Scalar> PartialEq for CurveClass<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.mu == b.mu && a.lambda == b.lambda
    }
}

impl<T: Scalar> Eq for CurveClass<T> {}

impl<T: Scalar> Hash for CurveClass<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.mu.hash(state);
        c.lambda.hash(state);
    }
}

impl<T: Scalar> fmt::Display for CurveClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        write!(f, "({}, {})", c.mu, c.lambda)
    }
}

/// Odd-length twist exponents `(r_n, ..., r_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWord<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TwistWord<T> {
    /// Even-length input gets a zero exponent prepended (an identity `φ_λ^0`).
    pub fn new(mut coeffs: Vec<T>) -> Self {
        if coeffs.len().is_multiple_of(2) {
            coeffs.insert(0, T::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(T::lit).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

pub fn twist_matrix<T: Scalar>(w: &TwistWord<T>) -> Mat2<T> {
    let n = w.coeffs.len();
    w.coeffs.iter().enumerate().fold(Mat2::identity(), |acc, (i, r)| {
        // Counting from the right, odd positions twist along λ.
        let from_right = n - i;
        let g = if from_right % 2 == 1 {
            Mat2::twist_lambda(r.clone())
        } else {
            Mat2::twist_mu(r.clone())
        };
        &acc * &g
    })
}

/// Slope of the image of `μ` under the twist word.
pub fn twist_slope<T: Scalar>(w: &TwistWord<T>) -> Slope<T> {
    let (p, q) = twist_matrix(w).apply((T::one(), T::zero()));
    Slope::new(p, q).expect("SL(2,Z) image of mu is primitive")
}

fn check_unimodular<T: Scalar>(k: &CurveClass<T>, l: &CurveClass<T>) -> Result<()> {
    let d = k.algebraic_intersection(l);
    if d.abs() != T::one() {
        return Err(Error::NotUnimodular(d.abs().to_string()));
    }
    Ok(())
}

/// The class `(p + N p', q + N q')` for `K = (p, q)`, `L = (p', q')`, as oriented.
pub fn twist_family_slope<T: Scalar>(k: &CurveClass<T>, l: &CurveClass<T>, n: &T) -> Result<CurveClass<T>> {
    check_unimodular(k, l)?;
    let mu = k.mu.clone() + n.clone() * l.mu.clone();
    let lambda = k.lambda.clone() + n.clone() * l.lambda.clone();
    Ok(CurveClass::new(mu, lambda)?.canonical())
}

/// Intersection numbers of `K^n = K + nL` with `μ`, `λ` and `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionProfile<T> {
    pub mu: T,
    pub lambda: T,
    pub nu: T,
}

impl<T: Scalar> IntersectionProfile<T> {
    pub fn is_distinct_nonzero(&self) -> bool {
        let z = T::zero();
        self.mu != z
            && self.lambda != z
            && self.nu != z
            && self.mu != self.lambda
            && self.mu != self.nu
            && self.lambda != self.nu
    }

    pub fn has_odd_entry(&self) -> bool {
        [&self.mu, &self.lambda, &self.nu].iter().any(|v| v.is_odd())
    }
}

pub fn intersection_profile<T: Scalar>(k: &CurveClass<T>, l: &CurveClass<T>, n: &T) -> Result<IntersectionProfile<T>> {
    check_unimodular(k, l)?;
    let pn = k.mu.clone() + l.mu.clone() * n.clone();
    let qn = k.lambda.clone() + l.lambda.clone() * n.clone();
    // A zero coordinate counts as matching either sign.
    let opposite = (pn.is_positive() && qn.is_negative()) || (pn.is_negative() && qn.is_positive());
    let sum = pn.abs() + qn.abs();
    let nu = if opposite { sum - T::lit(2) } else { sum };
    Ok(IntersectionProfile {
        mu: qn.abs(),
        lambda: pn.abs(),
        nu,
    })
}

/// Least `N_0 >= 0` with a distinct non-zero profile for every `N_0 <= n <= search_bound`.
pub fn stability_threshold<T: Scalar>(k: &CurveClass<T>, l: &CurveClass<T>, search_bound: u64) -> Result<u64> {
    check_unimodular(k, l)?;
    let mut threshold = None;
    for n in 0..=search_bound {
        let prof = intersection_profile(k, l, &T::from_u64(n).expect("bound fits scalar"))?;
        if !prof.has_odd_entry() {
            return Err(Error::NoOddEntry(n));
        }
        match (prof.is_distinct_nonzero(), threshold) {
            (true, None) => threshold = Some(n),
            (false, _) => threshold = None,
            _ => {}
        }
    }
    threshold.ok_or(Error::ThresholdNotFound { bound: search_bound })
}
