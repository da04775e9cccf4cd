//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss): rows are scaled to integers once,
//! the integer echelon form is computed without rational arithmetic, and
//! rational divisions happen only in final back-substitution.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, rat_big, Rational};
use super::LinalgError;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer entries given row-major as machine integers.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        RationalMatrix {
            rows,
            cols,
            entries: data.iter().map(|&x| super::rational::rat(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn matmul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        RationalMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Rational::zero();
            for k in 0..self.cols {
                s += &self[(i, k)] * &other[(k, j)];
            }
            s
        })
    }

    pub fn scaled(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Clears denominators row by row; the result has the same nullspace,
    /// rank, and row space. Returns the integer rows and the per-row scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let l = denominator_lcm(row);
            out.push(
                row.iter()
                    .map(|x| {
                        let s = x * rat_big(l.clone());
                        debug_assert!(s.denom().is_one());
                        s.numer().clone()
                    })
                    .collect(),
            );
            scales.push(l);
        }
        (out, scales)
    }

    /// Rank over the rationals via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss_echelon(&mut m).pivots.len()
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "det needs a square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let (mut m, scales) = self.integer_rows();
        let ech = bareiss_echelon(&mut m);
        if ech.pivots.len() < self.rows {
            return Rational::zero();
        }
        // For full rank, the last pivot of the Bareiss sweep is the integer
        // determinant up to the row-swap sign.
        let d = ech.last_pivot;
        let mut scale = BigInt::one();
        for s in scales {
            scale *= s;
        }
        let signed = if ech.sign < 0 { -d } else { d };
        Rational::new(signed, scale)
    }

    /// Basis of the right nullspace, presented in reduced echelon style: one
    /// vector per free column, with a 1 there and support otherwise only on
    /// pivot columns. Empty exactly when the matrix is injective.
    pub fn nullspace_exact(&self) -> Vec<Vec<Rational>> {
        let (mut m, _) = self.integer_rows();
        let ech = bareiss_echelon(&mut m);
        let pivots = &ech.pivots;
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &(_, c) in pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            // Echelon rows bottom-up: solve for each pivot variable.
            for &(r, c) in pivots.iter().rev() {
                let mut s = Rational::zero();
                for j in (c + 1)..self.cols {
                    if !m[r][j].is_zero() && !x[j].is_zero() {
                        s += rat_big(m[r][j].clone()) * &x[j];
                    }
                }
                x[c] = -s / rat_big(m[r][c].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// Rank of a symmetric matrix; rejects asymmetric input.
    pub fn symmetric_rank(&self) -> Result<usize, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        Ok(self.rank())
    }

    /// Multiplies a vector on the right.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for j in 0..self.cols {
                    s += &self[(i, j)] * &v[j];
                }
                s
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

struct Echelon {
    /// (row, col) of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
    /// Pivot of the last elimination step (determinant for full-rank square).
    last_pivot: BigInt,
    /// Row-swap sign.
    sign: i8,
}

/// One-step fraction-free (Bareiss) elimination to row echelon form, in
/// place. Every intermediate division is exact.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> Echelon {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let q = &num / &prev;
                debug_assert_eq!(&q * &prev, num);
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon {
        pivots,
        last_pivot: prev,
        sign,
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    #[test]
    fn identity_has_trivial_nullspace() {
        let m = RationalMatrix::identity(3);
        assert!(m.nullspace_exact().is_empty());
        assert_eq!(m.rank(), 3);
        assert_eq!(m.det(), rat(1));
    }

    #[test]
    fn single_row_nullspace() {
        let m = RationalMatrix::from_i64(1, 2, &[1, 1]);
        let basis = m.nullspace_exact();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rat(-1), rat(1)]);
        for v in &basis {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_matches_hand_values() {
        let m = RationalMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, -1, 0, 4, 5]);
        // expansion by hand: 2*(15+4) - 0 + 1*(4-0) = 42
        assert_eq!(m.det(), rat(42));
        let singular = RationalMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(singular.det(), rat(0));
    }

    #[test]
    fn rational_entries_are_exact() {
        let mut m = RationalMatrix::zero(2, 2);
        m[(0, 0)] = Rational::new(1.into(), 2.into());
        m[(0, 1)] = rat(1);
        m[(1, 0)] = rat(1);
        m[(1, 1)] = Rational::new(2.into(), 3.into());
        // det = 1/3 - 1
        assert_eq!(m.det(), Rational::new((-2).into(), 3.into()));
    }

    #[test]
    fn symmetric_rank_basics() {
        assert_eq!(RationalMatrix::zero(3, 3).symmetric_rank().unwrap(), 0);
        let d = RationalMatrix::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(d.symmetric_rank().unwrap(), 2);
        let asym = RationalMatrix::from_i64(2, 2, &[0, 1, 0, 0]);
        assert!(asym.symmetric_rank().is_err());
    }

    #[test]
    fn nullspace_vectors_satisfy_system() {
        let m = RationalMatrix::from_i64(2, 4, &[1, 2, 3, 4, 0, 1, 1, 1]);
        let basis = m.nullspace_exact();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }
}
