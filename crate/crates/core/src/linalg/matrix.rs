use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use super::field::{Field, FieldScalar};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {}", self.rows, self.cols, self.field.prime())?;
        for r in 0..self.rows {
            let row: Vec<u64> = self.row(r).iter().map(|x| x.value()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldScalar;

    fn index(&self, (r, c): (usize, usize)) -> &FieldScalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldScalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![FieldScalar::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = FieldScalar::ONE;
        }
        m
    }

    /// Builds a matrix from signed integer rows (reduced mod p).
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = field.from_i64(v);
            }
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<FieldScalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[FieldScalar]) -> Vec<FieldScalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldScalar::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)];
            }
        }
        out
    }

    /// Reduces `self` to reduced row echelon form in place and returns the
    /// pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            if p != next {
                for j in c..cols {
                    self.data.swap(p * cols + j, next * cols + j);
                }
            }
            let inv = f.inv(self[(next, c)]);
            for j in c..cols {
                self[(next, j)] = f.mul(self[(next, j)], inv);
            }
            for r in 0..self.rows {
                if r == next {
                    continue;
                }
                let factor = self[(r, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let pv = self[(next, j)];
                    if !pv.is_zero() {
                        self[(r, j)] = f.sub(self[(r, j)], f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminating along the shorter side keeps the work proportional to min(rows, cols).
        if self.rows > self.cols {
            self.transpose().row_reduce().len()
        } else {
            self.clone().row_reduce().len()
        }
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<FieldScalar>> {
        let f = self.field;
        let mut reduced = self.clone();
        let pivots = reduced.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldScalar::ZERO; self.cols];
                v[free] = FieldScalar::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(reduced[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Uniformly random element of the kernel: a random combination of a
    /// kernel basis.
    pub fn random_kernel_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldScalar> {
        combine_randomly(self.field, self.cols, &self.nullspace(), rng)
    }
}

/// Random linear combination of `basis` (vectors of length `len`).
pub fn combine_randomly<R: Rng + ?Sized>(
    field: Field,
    len: usize,
    basis: &[Vec<FieldScalar>],
    rng: &mut R,
) -> Vec<FieldScalar> {
    let mut out = vec![FieldScalar::ZERO; len];
    for b in basis {
        let c = field.random(rng);
        for (o, &x) in out.iter_mut().zip(b) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn small() -> Field {
        Field::new(101).unwrap()
    }

    #[test]
    fn rank_basics() {
        let f = Field::default();
        assert_eq!(Matrix::zeros(f, 3, 4).rank(), 0);
        assert_eq!(Matrix::identity(f, 5).rank(), 5);
        assert_eq!(Matrix::zeros(f, 0, 3).rank(), 0);
        for (y, z) in [(3, 7), (0, 5), (4, 0), (0, 0)] {
            let m = Matrix::from_rows(f, &[vec![y, z], vec![y, z]]);
            let expected = if y == 0 && z == 0 { 0 } else { 1 };
            assert_eq!(m.rank(), expected);
        }
    }

    #[test]
    fn nullspace_basics() {
        let f = Field::default();
        assert!(Matrix::identity(f, 4).nullspace().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 3).nullspace().len(), 3);
        let a = Matrix::from_rows(f, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_sampling() {
        let f = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let id = Matrix::identity(f, 3);
        assert!(id.random_kernel_element(&mut rng).iter().all(|x| x.is_zero()));

        let a = Matrix::from_rows(f, &[vec![1, 1, 0, 0]]);
        let v1 = a.random_kernel_element(&mut ChaCha8Rng::seed_from_u64(7));
        let v2 = a.random_kernel_element(&mut ChaCha8Rng::seed_from_u64(8));
        assert!(a.apply(&v1).iter().all(|x| x.is_zero()));
        assert!(a.apply(&v2).iter().all(|x| x.is_zero()));
        assert_ne!(v1, v2);
    }

    /// Generic rank of a fixed symbolic matrix of linear forms is 3;
    /// random evaluations over a large field never underestimate it.
    #[test]
    fn schwartz_zippel_no_underestimates() {
        let f = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        // rows: (x, y, 0, x+y), (0, x, y, z), (z, 0, x, y), (x, x, x, x)
        for _ in 0..10_000 {
            let x = f.random(&mut rng);
            let y = f.random(&mut rng);
            let z = f.random(&mut rng);
            let mut m = Matrix::zeros(f, 4, 4);
            let xy = f.add(x, y);
            let rows = [[x, y, FieldScalar::ZERO, xy], [FieldScalar::ZERO, x, y, z], [z, FieldScalar::ZERO, x, y], [x, x, x, x]];
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            assert_eq!(m.rank(), 4);
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..7, cols in 0usize..7, seed in any::<u64>(), zero_rows in 0usize..3) {
            let f = small();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut a = Matrix::random(f, rows, cols, &mut rng);
            for r in 0..zero_rows.min(rows) {
                for c in 0..cols {
                    a[(r, c)] = FieldScalar::ZERO;
                }
            }
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.len(), cols);
            for v in &ns {
                prop_assert!(a.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn rank_permutation_invariant(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            let f = small();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // low-rank product so that rank < min(rows, cols) happens often
            let inner = rng.gen_range(0..=rows.min(cols));
            let a = Matrix::random(f, rows, inner, &mut rng).mul(&Matrix::random(f, inner, cols, &mut rng));
            let mut rp: Vec<usize> = (0..rows).collect();
            let mut cp: Vec<usize> = (0..cols).collect();
            rp.reverse();
            cp.rotate_left(seed as usize % cols);
            prop_assert_eq!(a.rank(), a.select(&rp, &cp).rank());
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
