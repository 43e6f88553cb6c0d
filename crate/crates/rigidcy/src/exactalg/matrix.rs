//! Exact dense linear algebra over a generic field.
//!
//! Everything here is plain fraction arithmetic — no pivoting heuristics beyond
//! "first nonzero", so results (rref, kernel bases) are deterministic functions
//! of the input, which the golden tests rely on.

use super::field::Field;
use super::poly::Poly;
use std::fmt;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    a: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        Mat { rows, cols, a }
    }

    /// Diagonal matrix from integer entries, handy in tests.
    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .zip(&rhs.a)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = aik.mul(rhs.at(k, j));
                    let c = out.at_mut(i, j);
                    *c = c.add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut t = F::zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    /// Kronecker product; index (i1,i2) ↦ i1·n2 + i2 on both sides.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(
            self.rows * rhs.rows,
            self.cols * rhs.cols,
            |i, j| {
                let (i1, i2) = (i / rhs.rows, i % rhs.rows);
                let (j1, j2) = (j / rhs.cols, j % rhs.cols);
                self.at(i1, j1).mul(rhs.at(i2, j2))
            },
        )
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        Self::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                rhs.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    /// Assemble an r×c grid of equally-sized blocks.
    pub fn from_blocks(grid: &[Vec<Mat<F>>]) -> Self {
        let mut out: Option<Mat<F>> = None;
        for row in grid {
            let mut rowm: Option<Mat<F>> = None;
            for b in row {
                rowm = Some(match rowm {
                    None => b.clone(),
                    Some(m) => m.hstack(b),
                });
            }
            let rowm = rowm.expect("empty block row");
            out = Some(match out {
                None => rowm,
                Some(m) => m.vstack(&rowm),
            });
        }
        out.expect("empty block grid")
    }

    /// Reduced row echelon form. Returns (rref, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column j at or below row r
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, j).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, j).inv().unwrap();
            for k in j..m.cols {
                let v = m.at(r, k).mul(&inv);
                *m.at_mut(r, k) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, j).is_zero() {
                    continue;
                }
                let f = m.at(i, j).clone();
                for k in j..m.cols {
                    let v = m.at(i, k).sub(&f.mul(m.at(r, k)));
                    *m.at_mut(i, k) = v;
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel. One vector per free column, in ascending
    /// column order, with entry 1 at the free column — fully deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let piv_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        for j in 0..self.cols {
            if piv_of_col[j].is_some() {
                continue;
            }
            let mut vker = vec![F::zero(); self.cols];
            vker[j] = F::one();
            for (k, pc) in piv_of_col.iter().enumerate() {
                if let Some(row) = pc {
                    vker[k] = r.at(*row, j).neg();
                }
            }
            out.push(vker);
        }
        out
    }

    /// Solve self·x = b for each column of b; `None` if inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // inconsistent if any pivot falls in the b-block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                *x.at_mut(c, j) = r.at(row, self.cols + j).clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(r.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        ))
    }

    /// Characteristic polynomial det(xI - A) by the Faddeev–LeVerrier recursion
    /// (division-free except by small integers, fine in characteristic 0).
    pub fn char_poly(&self) -> Poly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = am
                .trace()
                .mul(&F::from_int(k as i64).inv().unwrap())
                .neg();
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                let d = m.at_mut(i, i);
                *d = d.add(&c);
            }
        }
        Poly::new(coeffs)
    }

    pub fn det(&self) -> F {
        let cp = self.char_poly();
        let c0 = cp.coeff(0);
        if self.rows % 2 == 1 {
            c0.neg()
        } else {
            c0
        }
    }

    /// Flatten row-major.
    pub fn vec(&self) -> Vec<F> {
        self.a.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, a: Vec<F>) -> Self {
        assert_eq!(a.len(), rows * cols);
        Mat { rows, cols, a }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{qq, rat, Rat};

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = m(&[&[3], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inverse(), None);
    }

    #[test]
    fn kernel_is_deterministic() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        // free columns 1 and 2, ascending, unit entry at the free column
        assert_eq!(k[0], vec![rat(-2), rat(1), rat(0)]);
        assert_eq!(k[1], vec![rat(-3), rat(0), rat(1)]);
    }

    #[test]
    fn char_poly_and_det() {
        let a = m(&[&[2, 1], &[1, 2]]);
        let cp = a.char_poly();
        // x^2 - 4x + 3
        assert_eq!(cp.coeffs(), &[rat(3), rat(-4), rat(1)]);
        assert_eq!(a.det(), rat(3));
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.det(), rat(-1));
        let c = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(c.det(), rat(-2));
    }

    #[test]
    fn kron_indexing() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let e = Mat::<Rat>::identity(2);
        let k = a.kron(&e);
        assert_eq!(k.nrows(), 4);
        assert_eq!(*k.at(0, 0), rat(1));
        assert_eq!(*k.at(0, 2), rat(2));
        assert_eq!(*k.at(1, 3), rat(2));
        assert_eq!(*k.at(2, 0), rat(3));
    }

    #[test]
    fn rational_entries() {
        let a = Mat::from_rows(vec![vec![qq(1, 2), qq(1, 3)], vec![qq(1, 4), qq(1, 5)]]);
        let i = a.inverse().unwrap();
        assert!(a.mul(&i).is_identity());
    }
}
