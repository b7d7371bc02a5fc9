//! Dense integer matrices, the Smith normal form and a fraction-free determinant.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= k * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() - k.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// `col[dst] -= k * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() - k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    /// Determinant by Bareiss fraction-free elimination. Panics on a non-square matrix.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j).clone() * a.get(k, k).clone() - a.get(i, k).clone() * a.get(k, j).clone())
                        / prev.clone();
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Diagonal of the Smith normal form of a relation matrix, read as the cokernel
/// `ℤ^cols / rowspace`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmithForm<T> {
    /// Non-zero diagonal entries, positive, each dividing the next (units included).
    pub invariant_factors: Vec<T>,
    pub free_rank: usize,
}

impl<T: Scalar> SmithForm<T> {
    /// The invariant factors `>= 2`.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Exact Smith normal form.
///
/// Pivots on the smallest non-zero magnitude in the remaining block, ties broken
/// by lowest row then lowest column.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    a.row_axpy(i, t, &q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    a.col_axpy(j, t, &q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if !dirty {
                // Row and column are clear; the pivot must also divide the rest.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // Fold the offending row in and keep reducing.
                        a.row_axpy(t, i, &-T::one());
                        continue;
                    }
                }
            }
            let Some((pi, pj)) = smallest_in_cross(&a, t) else {
                unreachable!()
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    SmithForm {
        free_rank: cols - diag.len(),
        invariant_factors: diag,
    }
}

fn smallest_entry<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

// Smallest non-zero entry in row t and column t (pivot included).
fn smallest_in_cross<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let cells = (t..a.rows).map(|i| (i, t)).chain((t + 1..a.cols).map(|j| (t, j)));
    let mut best: Option<(T, usize, usize)> = None;
    for (i, j) in cells {
        let v = a.get(i, j).abs();
        if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v < *b) {
            best = Some((v, i, j));
        }
    }
    best.map(|(_, i, j)| (i, j))
}
