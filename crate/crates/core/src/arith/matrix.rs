//! Dense matrices over F_p with plain Gaussian elimination.

use std::fmt;

use super::field::Fp;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Matrix { modulus, rows, cols, data: vec![Fp::zero(modulus); rows * cols] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Matrix::zeros(n, n, modulus);
        for i in 0..n {
            m[(i, i)] = Fp::one(modulus);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<Fp>], cols: usize, modulus: u64) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols, modulus);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]], modulus: u64) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fp>> =
            rows.iter().map(|r| r.iter().map(|&v| Fp::new(v, modulus)).collect()).collect();
        Matrix::from_rows(&rows, cols, modulus)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[Fp] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fp> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(Fp::zero(self.modulus), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] *= inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(r, j)];
                    m[(i, j)] -= factor * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// increasing order of the free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Fp>> {
        let ech = self.rref();
        let p = self.modulus;
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &ech.pivots {
                v[c] = true;
            }
            v
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fp::zero(p); self.cols];
                v[free] = Fp::one(p);
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = -ech.matrix[(r, free)];
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = rhs`, or `None` when `rhs` is outside the column space.
    pub fn solve(&self, rhs: &[Fp]) -> Option<Vec<Fp>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.modulus);
        aug.set_block(0, 0, self);
        for (i, &b) in rhs.iter().enumerate() {
            aug[(i, self.cols)] = b;
        }
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fp::zero(self.modulus); self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.matrix[(r, self.cols)];
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.modulus);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n, self.modulus));
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.modulus);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = ech.matrix[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Indices of standard basis vectors of the codomain completing a basis
    /// of the column space, chosen greedily by index.
    pub fn cokernel_complement(&self) -> Vec<usize> {
        let mut cols: Vec<Vec<Fp>> = (0..self.cols).map(|j| self.column(j)).collect();
        let base_rank = Matrix::from_rows(&cols, self.rows, self.modulus).rank();
        let mut rank = base_rank;
        let mut chosen = Vec::new();
        for i in 0..self.rows {
            let mut e = vec![Fp::zero(self.modulus); self.rows];
            e[i] = Fp::one(self.modulus);
            cols.push(e);
            let r = Matrix::from_rows(&cols, self.rows, self.modulus).rank();
            if r > rank {
                rank = r;
                chosen.push(i);
            } else {
                cols.pop();
            }
        }
        chosen
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fp;
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fp {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
