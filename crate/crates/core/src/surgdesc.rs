//! Rational surgery diagrams on links of unknots and the first homology of the
//! surgered manifold.
//!
//! For a diagram with coefficients `p_i/q_i` and linking numbers `lk_ij`, the
//! group `H_1` is presented by the meridians `μ_i` subject to one relation per
//! component, `p_i μ_i + q_i Σ_j lk_ij μ_j = 0`. An ∞ coefficient (`1/0`)
//! degenerates to `μ_i = 0`, which is exactly a trivial filling.

use std::fmt;

use crate::contfrac::{cf_eval, ContinuedFraction, Slope};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSurgeryDiagram<T> {
    coefficients: Vec<Slope<T>>,
    linking: Matrix<T>,
}

impl<T: Scalar> RationalSurgeryDiagram<T> {
    pub fn new(coefficients: Vec<Slope<T>>, linking: Matrix<T>) -> Result<Self> {
        if !linking.is_square() || linking.rows() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                coefficients: coefficients.len(),
                dim: linking.rows(),
            });
        }
        let n = linking.rows();
        for i in 0..n {
            if !linking.get(i, i).is_zero() {
                return Err(Error::NonZeroDiagonal(i));
            }
            for j in 0..i {
                if linking.get(i, j) != linking.get(j, i) {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { coefficients, linking })
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Slope<T>] {
        &self.coefficients
    }

    pub fn linking(&self) -> &Matrix<T> {
        &self.linking
    }

    /// Relabels components so that new component `i` is old component `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len(), "permutation length");
        Self {
            coefficients: perm.iter().map(|&k| self.coefficients[k].clone()).collect(),
            linking: Matrix::from_fn(self.len(), self.len(), |i, j| {
                self.linking.get(perm[i], perm[j]).clone()
            }),
        }
    }

    /// Plain-text form: the component count, then `id p/q lk: v_1 ... v_n` per component.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            let lk: Vec<String> = self.linking.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&format!("{} {} lk: {}\n", i + 1, c, lk.join(" ")));
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(msg);
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("missing component count".into()))?
            .parse()
            .map_err(|e| bad(format!("component count: {e}")))?;
        let mut coefficients = Vec::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| bad(format!("missing component {}", k + 1)))?;
            let (head, lk) = line
                .split_once("lk:")
                .ok_or_else(|| bad(format!("no `lk:` in {line:?}")))?;
            let mut head = head.split_whitespace();
            let id: usize = head
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(format!("bad id in {line:?}")))?;
            if id != k + 1 {
                return Err(bad(format!("expected component {}, found {id}", k + 1)));
            }
            coefficients.push(
                head.next()
                    .ok_or_else(|| bad(format!("no coefficient in {line:?}")))?
                    .parse()?,
            );
            let row = lk
                .split_whitespace()
                .map(|v| {
                    v.parse::<i64>()
                        .map(T::lit)
                        .map_err(|e| bad(format!("linking entry {v:?}: {e}")))
                })
                .collect::<Result<Vec<T>>>()?;
            if row.len() != n {
                return Err(bad(format!("component {} has {} linking entries", k + 1, row.len())));
            }
            rows.push(row);
        }
        Self::new(coefficients, Matrix::from_rows(rows))
    }
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ ... ⊕ ℤ/d_k` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Order<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl<T: Scalar> fmt::Display for Order<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

impl<T: Scalar> AbelianGroup<T> {
    pub fn cyclic_torsion(torsion: Vec<T>) -> Self {
        Self { free_rank: 0, torsion }
    }

    pub fn order(&self) -> Order<T> {
        if self.free_rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion.iter().fold(T::one(), |acc, d| acc * d.clone()))
        }
    }
}

impl<T: Scalar> fmt::Display for AbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn h1_presentation<T: Scalar>(d: &RationalSurgeryDiagram<T>) -> Matrix<T> {
    let n = d.len();
    Matrix::from_fn(n, n, |i, j| {
        let c = &d.coefficients[i];
        if i == j {
            c.num().clone()
        } else {
            c.den().clone() * d.linking.get(i, j).clone()
        }
    })
}

pub fn h1_group<T: Scalar>(d: &RationalSurgeryDiagram<T>) -> AbelianGroup<T> {
    let snf = smith_normal_form(&h1_presentation(d));
    AbelianGroup {
        free_rank: snf.free_rank,
        torsion: snf.torsion(),
    }
}

/// `|det|` of the presentation matrix, computed independently of the Smith form.
pub fn h1_order<T: Scalar>(d: &RationalSurgeryDiagram<T>) -> Order<T> {
    let det = h1_presentation(d).determinant();
    if det.is_zero() {
        Order::Infinite
    } else {
        Order::Finite(det.abs())
    }
}

/// Ambient manifold of the lashing family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    S3,
    S1xS2,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::S3 => "S3",
            Variant::S1xS2 => "S1xS2",
        })
    }
}

/// Number of components of the three-twist-region surgery description.
pub const FAMILY_COMPONENTS: usize = 16;

/// Off-diagonal linking numbers of the family diagram (all components oriented
/// clockwise); the diagonal carries the surgery coefficients and is zero here.
pub const FAMILY_LINKING: [[i8; FAMILY_COMPONENTS]; FAMILY_COMPONENTS] = [
    [0, 0, 0, -1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, -1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, -1, -1, 1, 0, 0, 0, 0, -1, 1, -1, 1, -1],
    [-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0],
];

const fn is_valid_linking<const N: usize>(m: &[[i8; N]; N]) -> bool {
    let mut i = 0;
    while i < N {
        if m[i][i] != 0 {
            return false;
        }
        let mut j = 0;
        while j < N {
            if m[i][j] != m[j][i] {
                return false;
            }
            j += 1;
        }
        i += 1;
    }
    true
}

const _: () = assert!(
    is_valid_linking(&FAMILY_LINKING),
    "family linking matrix must be symmetric"
);

/// Parameters of the family diagram: the braid `α = σ_1^{-a3} σ_2^{a2} σ_1^{-a1}`,
/// the twist count `m`, and the last two terms `b2, b1` of the lashing slope
/// `p/q = [..., b2, -b1]` (terms beyond these are zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramParams<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub m: T,
    pub b1: T,
    pub b2: T,
}

impl<T: Scalar> DiagramParams<T> {
    pub fn from_i64s(a1: i64, a2: i64, a3: i64, m: i64, b1: i64, b2: i64) -> Self {
        let l = T::lit;
        Self {
            a1: l(a1),
            a2: l(a2),
            a3: l(a3),
            m: l(m),
            b1: l(b1),
            b2: l(b2),
        }
    }
}

/// The coefficient `[0, a1, -a2, a3]` of the first component, or
/// `[0, a1, -a2, a3 + 1]` for the `S¹×S²` variant.
pub fn leading_coefficient<T: Scalar>(params: &DiagramParams<T>, variant: Variant) -> Slope<T> {
    let last = match variant {
        Variant::S3 => params.a3.clone(),
        Variant::S1xS2 => params.a3.clone() + T::one(),
    };
    let cf = ContinuedFraction::new(vec![T::zero(), params.a1.clone(), -params.a2.clone(), last])
        .expect("four coefficients");
    cf_eval(&cf)
}

/// The family surgery diagram with surgery coefficient `r` on the lashing itself.
pub fn family_diagram<T: Scalar>(
    params: &DiagramParams<T>,
    r: &Slope<T>,
    variant: Variant,
) -> Result<RationalSurgeryDiagram<T>> {
    family_diagram_with(&FAMILY_LINKING, params, r, variant)
}

/// [`family_diagram`] over an arbitrary linking template.
pub fn family_diagram_with<T: Scalar>(
    template: &[[i8; FAMILY_COMPONENTS]; FAMILY_COMPONENTS],
    params: &DiagramParams<T>,
    r: &Slope<T>,
    variant: Variant,
) -> Result<RationalSurgeryDiagram<T>> {
    let DiagramParams { a1, a2, a3, m, b1, b2 } = params;
    if [a1, a2, a3, m, b1, b2].iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidLashing("diagram parameters must be non-negative".into()));
    }
    let int = |v: T| Slope::integer(v);
    let frac = |n: i64, d: &T| Slope::new(T::lit(n), d.clone()).expect("numerator is non-zero");
    let coefficients = vec![
        leading_coefficient(params, variant),
        int(m.clone()),
        int(T::one()),
        int(-T::one()),
        int(T::one()),
        int(-T::one()),
        int(-a1.clone() - T::one()),
        int(-a3.clone()),
        int(T::one()),
        frac(1, m),
        int(a2.clone()),
        frac(-1, b2),
        frac(1, b1),
        r.clone(),
        frac(-1, b1),
        frac(1, b2),
    ];
    let linking = Matrix::from_fn(FAMILY_COMPONENTS, FAMILY_COMPONENTS, |i, j| {
        T::lit(template[i][j].into())
    });
    RationalSurgeryDiagram::new(coefficients, linking)
}

/// `|-389 - r - b1(563 + 778 b2) - b1²(204 + 563 b2 + 389 b2²)|`, the homology order
/// at `a1 = a2 = a3 = m = 1`.
pub fn closed_form_order<T: Scalar>(b1: &T, b2: &T, r: &T) -> T {
    let l = T::lit;
    let v = -l(389)
        - r.clone()
        - b1.clone() * (l(563) + l(778) * b2.clone())
        - b1.clone() * b1.clone() * (l(204) + l(563) * b2.clone() + l(389) * b2.clone() * b2.clone());
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sl(n: i64, d: i64) -> Slope<i64> {
        Slope::new(n, d).unwrap()
    }

    fn diagram(coeffs: Vec<Slope<i64>>, lk: &[&[i64]]) -> RationalSurgeryDiagram<i64> {
        RationalSurgeryDiagram::new(coeffs, Matrix::from_rows(lk.iter().map(|r| r.to_vec()).collect())).unwrap()
    }

    #[test]
    fn template_transcription() {
        let m = Matrix::from_fn(16, 16, |i, j| i64::from(FAMILY_LINKING[i][j]));
        assert!(m.is_symmetric());
        // Printed closed form (a1 a2 a3 + a1 + a3) / (a2 a3 + 1).
        for a1 in 0..5 {
            for a2 in 0..5 {
                for a3 in 0..5 {
                    let p = DiagramParams::from_i64s(a1, a2, a3, 1, 1, 0);
                    let want = Slope::new(a1 * a2 * a3 + a1 + a3, a2 * a3 + 1).unwrap();
                    assert_eq!(leading_coefficient(&p, Variant::S3), want);
                }
            }
        }
    }

    #[test]
    fn family_diagram_examples() {
        let d = family_diagram(&DiagramParams::from_i64s(1, 1, 1, 1, 1, 0), &sl(0, 1), Variant::S3).unwrap();
        assert_eq!(d.coefficients()[0], sl(3, 2));
        assert_eq!(d.coefficients()[9], sl(1, 1));
        assert!(d.coefficients()[11].is_infinite());
        assert!(d.coefficients()[15].is_infinite());
        assert!(d.linking().is_symmetric());
        let d = family_diagram(&DiagramParams::from_i64s(0, 1, 0, 1, 1, 0), &sl(0, 1), Variant::S1xS2).unwrap();
        assert_eq!(d.coefficients()[0], sl(1, 2));
        let d = family_diagram(&DiagramParams::from_i64s(1, 1, 1, 0, 1, 0), &sl(0, 1), Variant::S3).unwrap();
        assert_eq!(d.coefficients()[1], sl(0, 1));
        assert!(d.coefficients()[9].is_infinite());
        assert!(family_diagram(&DiagramParams::from_i64s(-1, 1, 1, 0, 1, 0), &sl(0, 1), Variant::S3).is_err());
    }

    #[test]
    fn presentation_examples() {
        let lens = diagram(vec![sl(5, 1)], &[&[0]]);
        assert_eq!(h1_presentation(&lens), Matrix::from_rows(vec![vec![5]]));
        assert_eq!(h1_group(&lens), AbelianGroup::cyclic_torsion(vec![5]));
        let zero = diagram(vec![sl(0, 1)], &[&[0]]);
        assert_eq!(
            h1_group(&zero),
            AbelianGroup {
                free_rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(h1_order(&zero), Order::Infinite);
        // Hopf link with an ∞-filled component: the other coefficient alone survives.
        let hopf = diagram(vec![Slope::infinity(), sl(7, 2)], &[&[0, 1], &[1, 0]]);
        assert_eq!(h1_presentation(&hopf), Matrix::from_rows(vec![vec![1, 0], vec![2, 7]]));
        assert_eq!(h1_group(&hopf), AbelianGroup::cyclic_torsion(vec![7]));
        assert_eq!(h1_order(&hopf), Order::Finite(7));
    }

    #[test]
    fn table2_groups() {
        let g = |a1, a2, a3, m, b1| {
            h1_group(
                &family_diagram(
                    &DiagramParams::from_i64s(a1, a2, a3, m, b1, 0),
                    &sl(0, 1),
                    Variant::S1xS2,
                )
                .unwrap(),
            )
        };
        assert_eq!(g(0, 1, 0, 1, 1), AbelianGroup::cyclic_torsion(vec![256]));
        assert_eq!(g(0, 1, 0, 1, 2), AbelianGroup::cyclic_torsion(vec![23, 23]));
        assert_eq!(g(0, 1, 1, 1, 2), AbelianGroup::cyclic_torsion(vec![2, 800]));
    }

    #[test]
    fn order_examples() {
        let o = |b1, r| {
            h1_order(&family_diagram(&DiagramParams::from_i64s(1, 1, 1, 1, b1, 0), &sl(r, 1), Variant::S3).unwrap())
        };
        assert_eq!(o(1, 0), Order::Finite(1156));
        assert_eq!(o(2, 0), Order::Finite(2331));
        assert_eq!(o(1, -1156), Order::Infinite);
        assert_eq!(closed_form_order(&1i64, &0, &0), 1156);
        assert_eq!(closed_form_order(&2i64, &0, &0), 2331);
        assert_eq!(closed_form_order(&0i64, &0, &0), 389);
    }

    #[test]
    fn group_display() {
        assert_eq!(AbelianGroup::cyclic_torsion(vec![23i64, 23]).to_string(), "Z/23 + Z/23");
        assert_eq!(
            AbelianGroup::<i64> {
                free_rank: 2,
                torsion: vec![3]
            }
            .to_string(),
            "Z^2 + Z/3"
        );
        assert_eq!(AbelianGroup::<i64>::cyclic_torsion(vec![]).to_string(), "0");
    }

    #[test]
    fn diagram_validation() {
        let asym = Matrix::from_rows(vec![vec![0, 1], vec![2, 0]]);
        assert!(matches!(
            RationalSurgeryDiagram::new(vec![sl(1, 1), sl(1, 1)], asym),
            Err(Error::NotSymmetric(1, 0))
        ));
        let diag = Matrix::from_rows(vec![vec![1]]);
        assert!(RationalSurgeryDiagram::new(vec![sl(1, 1)], diag).is_err());
        assert!(RationalSurgeryDiagram::new(vec![sl(1, 1)], Matrix::<i64>::zeros(2, 2)).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let d = family_diagram(
            &DiagramParams::<BigInt>::from_i64s(1, 1, 1, 1, 1, 0),
            &Slope::zero(),
            Variant::S3,
        )
        .unwrap();
        let text = d.to_text();
        assert!(text.starts_with("16\n1 3/2 lk: 0 0 0 -1 0 0 1 1 0 0 0 0 1 0 1 0\n"));
        assert_eq!(
            RationalSurgeryDiagram::from_text(&format!("# header\n{text}")).unwrap(),
            d
        );
        assert!(RationalSurgeryDiagram::<i64>::from_text("2\n1 1/1 lk: 0 1\n").is_err());
    }

    #[test]
    fn permutation_invariance() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let d = family_diagram(&DiagramParams::from_i64s(1, 1, 0, 1, 2, 0), &sl(0, 1), Variant::S1xS2).unwrap();
        let g = h1_group(&d);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..16).collect();
            perm.shuffle(&mut rng);
            assert_eq!(h1_group(&d.permuted(&perm)), g);
        }
    }
}
