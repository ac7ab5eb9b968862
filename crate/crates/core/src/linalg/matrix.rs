use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, Integer, One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::{from_usize, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from nested rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!("ragged rows: expected {c} columns, found {}", bad.len())));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter().map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect(),
        )
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square()?;
        Ok((0..n).fold(Rational::zero(), |acc, i| acc + &self[(i, i)]))
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().fold(Rational::zero(), |acc, a| acc + a)).collect()
    }

    /// The submatrix `E[rows | cols]`, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange { index: i, dim: self.rows });
            }
        }
        for &j in cols {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange { index: j, dim: self.cols });
            }
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |a, b| self[(rows[a], cols[b])].clone()))
    }

    /// Submatrix with the given rows and columns removed.
    pub fn delete(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Matrix> {
        let keep_rows = complement(self.rows, del_rows)?;
        let keep_cols = complement(self.cols, del_cols)?;
        self.select(&keep_rows, &keep_cols)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to integers by the lcm of its denominators;
    /// the result is divided back by the product of the scales. The empty
    /// matrix has determinant 1.
    pub fn det(&self) -> Result<Rational> {
        let n = self.require_square()?;
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
            m.push(row.iter().map(|a| a.numer() * (&l / a.denom())).collect());
            scale *= l;
        }
        Ok(Rational::new(bareiss_det(m), scale))
    }

    /// Determinant by plain rational Gaussian elimination. Independent of
    /// [`Matrix::det`]; kept for cross-checking.
    pub fn det_gauss(&self) -> Result<Rational> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let factor = &a[(i, k)] / &pivot;
                for j in k..n {
                    let sub = &factor * &a[(k, j)];
                    a[(i, j)] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Determinant of the submatrix left after deleting the given rows and
    /// columns. The two sets must have equal size.
    pub fn minor_det(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Rational> {
        self.require_square()?;
        let keep_rows = complement(self.rows, del_rows)?;
        let keep_cols = complement(self.cols, del_cols)?;
        if keep_rows.len() != keep_cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "deleting {} distinct rows but {} distinct columns",
                self.rows - keep_rows.len(),
                self.cols - keep_cols.len()
            )));
        }
        self.select(&keep_rows, &keep_cols)?.det()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solve `self · X = rhs` by Gauss–Jordan elimination.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        let n = self.require_square()?;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch(format!(
                "system has {n} equations but right-hand side has {} rows",
                rhs.rows
            )));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, k);
            b.swap_rows(p, k);
            let inv = a[(k, k)].recip();
            for j in 0..n {
                a[(k, j)] *= &inv;
            }
            for j in 0..b.cols {
                b[(k, j)] *= &inv;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in k..n {
                    let sub = &factor * &a[(k, j)];
                    a[(i, j)] -= sub;
                }
                for j in 0..b.cols {
                    let sub = &factor * &b[(k, j)];
                    b[(i, j)] -= sub;
                }
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        self.solve(&Matrix::identity(n))
    }

    /// Schur complement `D - C A^{-1} B`, where `A` is the principal block on
    /// `block` and `D` the principal block on the remaining indices (kept in
    /// increasing order).
    pub fn schur_complement(&self, block: &[usize]) -> Result<Matrix> {
        let n = self.require_square()?;
        let rest = complement(n, block)?;
        if rest.len() + block.len() != n {
            return Err(Error::DimensionMismatch("block indices repeat".into()));
        }
        let a = self.select(block, block)?;
        let b = self.select(block, &rest)?;
        let c = self.select(&rest, block)?;
        let d = self.select(&rest, &rest)?;
        if block.is_empty() {
            return Ok(d);
        }
        let a_inv_b = a.solve(&b).map_err(|e| match e {
            Error::Singular => Error::SingularBlock,
            other => other,
        })?;
        d.sub(&c.mul(&a_inv_b)?)
    }

    /// Characteristic polynomial `det(xI - A)` and `M_n` from the
    /// Faddeev–LeVerrier recurrence. `adj(A) = (-1)^{n-1} M_n`.
    fn faddeev_leverrier(&self) -> Result<(Polynomial, Matrix)> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m)?;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next)?;
            coeffs[n - k] = -am.trace()? / from_usize(k);
            m = next;
        }
        Ok((Polynomial::new(coeffs), m))
    }

    /// Monic characteristic polynomial `det(xI - A)`.
    pub fn char_poly(&self) -> Result<Polynomial> {
        Ok(self.faddeev_leverrier()?.0)
    }

    /// Adjugate (transposed cofactor matrix), valid for singular matrices.
    pub fn adjugate(&self) -> Result<Matrix> {
        let (_, m) = self.faddeev_leverrier()?;
        if self.rows.is_multiple_of(2) {
            Ok(m.scale(&-Rational::one()))
        } else {
            Ok(m)
        }
    }
}

/// Sorted indices in `0..n` not listed in `removed`.
fn complement(n: usize, removed: &[usize]) -> Result<Vec<usize>> {
    let mut drop = vec![false; n];
    for &i in removed {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        drop[i] = true;
    }
    Ok((0..n).filter(|&i| !drop[i]).collect())
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(p, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Sign `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows).unwrap()
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[&[2, -1], &[-1, 2]]).det().unwrap(), int(3));
        assert_eq!(Matrix::zeros(0, 0).det().unwrap(), int(1));
        let k3 = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(k3.det().unwrap(), int(0));
        assert_eq!(k3.det_gauss().unwrap(), int(0));
    }

    #[test]
    fn det_needs_pivot_swap() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // expansion: 0*(0*8-3*-3) - 1*(1*8-3*4) + 2*(1*-3-0*4) = 4 - 6
        assert_eq!(a.det().unwrap(), int(-2));
        assert_eq!(a.det_gauss().unwrap(), int(-2));
    }

    #[test]
    fn det_with_fractions() {
        let a = Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(2, 5)]]).unwrap();
        assert_eq!(a.det().unwrap(), rat(1, 5) - rat(1, 12));
    }

    #[test]
    fn not_square() {
        assert_eq!(Matrix::zeros(2, 3).det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert!(matches!(Matrix::zeros(1, 2).char_poly(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn minors_of_bidirected_triangle_laplacian() {
        let l = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(l.minor_det(&[0], &[0]).unwrap(), int(3));
        assert_eq!(l.minor_det(&[0], &[1]).unwrap(), int(-3));
        assert_eq!(l.minor_det(&[], &[]).unwrap(), l.det().unwrap());
        assert!(matches!(l.minor_det(&[3], &[0]), Err(Error::IndexOutOfRange { index: 3, dim: 3 })));
        let c3 = m(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]);
        assert_eq!(c3.minor_det(&[0], &[0]).unwrap(), int(1));
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        let a = m(&[&[2, -1], &[-1, 2]]);
        let expected = m(&[&[2, 1], &[1, 2]]).scale(&rat(1, 3));
        assert_eq!(a.inverse().unwrap(), expected);
        let c3 = m(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]);
        assert_eq!(c3.inverse(), Err(Error::Singular));
    }

    #[test]
    fn schur_examples() {
        let l = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(l.schur_complement(&[0, 1]).unwrap(), Matrix::zeros(1, 1));
        assert_eq!(Matrix::identity(4).schur_complement(&[0, 1]).unwrap(), Matrix::identity(2));
        let s = l.schur_complement(&[2]).unwrap();
        let expected = Matrix::from_rows(vec![vec![rat(3, 2), rat(-3, 2)], vec![rat(-3, 2), rat(3, 2)]]).unwrap();
        assert_eq!(s, expected);
        let c3 = m(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]);
        // principal block on {0,1} of C3's Laplacian is invertible, on all three it is not
        assert!(c3.schur_complement(&[0, 1]).is_ok());
        assert_eq!(c3.schur_complement(&[0, 1, 2]), Err(Error::SingularBlock));
    }

    #[test]
    fn char_poly_examples() {
        let p = Matrix::identity(2).char_poly().unwrap();
        assert_eq!(p, Polynomial::new(vec![int(1), int(-2), int(1)]));
        let t = Matrix::from_fn(3, 3, |i, j| if i == j { int(0) } else { rat(1, 2) });
        assert_eq!(t.char_poly().unwrap(), Polynomial::new(vec![rat(-1, 4), rat(-3, 4), int(0), int(1)]));
        assert_eq!(Matrix::zeros(2, 2).char_poly().unwrap(), Polynomial::monomial(2));
        assert_eq!(Matrix::zeros(0, 0).char_poly().unwrap(), Polynomial::one());
    }

    #[test]
    fn adjugate_matches_cofactors() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let adj = a.adjugate().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let cof = sign(i + j) * a.minor_det(&[j], &[i]).unwrap();
                assert_eq!(adj[(i, j)], cof);
            }
        }
        let even = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(even.adjugate().unwrap(), m(&[&[2, 1], &[1, 2]]));
    }

    #[test]
    fn display_grid() {
        let a = Matrix::from_rows(vec![vec![rat(3, 2), int(-1)]]).unwrap();
        assert_eq!(a.to_string(), "[3/2  -1]\n");
    }
}
