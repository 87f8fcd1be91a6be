use crate::linalg::{Field, FieldScalar, Matrix};

/// A rectangular block of unknowns (or of equations), stored row-major from `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    fn at(&self, r: usize, c: usize) -> usize {
        self.offset + r * self.cols + c
    }

    /// Reads this block out of a solution vector.
    pub fn extract(&self, field: Field, v: &[FieldScalar]) -> Matrix {
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = v[self.at(r, c)];
            }
        }
        m
    }
}

/// Assembles a homogeneous linear system whose unknowns are matrices and
/// whose equations are sums of terms `±X·A` and `±B·X`.
pub struct SystemBuilder {
    field: Field,
    vars: usize,
    eqs: usize,
    entries: Vec<(usize, usize, FieldScalar)>,
}

impl SystemBuilder {
    pub fn new(field: Field) -> Self {
        SystemBuilder { field, vars: 0, eqs: 0, entries: Vec::new() }
    }

    pub fn unknown(&mut self, rows: usize, cols: usize) -> Block {
        let b = Block { offset: self.vars, rows, cols };
        self.vars += rows * cols;
        b
    }

    pub fn equation(&mut self, rows: usize, cols: usize) -> Block {
        let b = Block { offset: self.eqs, rows, cols };
        self.eqs += rows * cols;
        b
    }

    pub fn num_unknowns(&self) -> usize {
        self.vars
    }

    /// Adds `sign · X·A` to the equation block.
    pub fn add_x_a(&mut self, eq: Block, x: Block, a: &Matrix, negate: bool) {
        debug_assert_eq!((x.rows, x.cols, a.cols()), (eq.rows, a.rows(), eq.cols));
        for r in 0..eq.rows {
            for k in 0..x.cols {
                for c in 0..eq.cols {
                    let v = a[(k, c)];
                    if !v.is_zero() {
                        let v = if negate { self.field.neg(v) } else { v };
                        self.entries.push((eq.at(r, c), x.at(r, k), v));
                    }
                }
            }
        }
    }

    /// Adds `sign · B·X` to the equation block.
    pub fn add_b_x(&mut self, eq: Block, b: &Matrix, x: Block, negate: bool) {
        debug_assert_eq!((b.rows(), b.cols(), x.cols), (eq.rows, x.rows, eq.cols));
        for r in 0..eq.rows {
            for k in 0..x.rows {
                let v = b[(r, k)];
                if v.is_zero() {
                    continue;
                }
                let v = if negate { self.field.neg(v) } else { v };
                for c in 0..eq.cols {
                    self.entries.push((eq.at(r, c), x.at(k, c), v));
                }
            }
        }
    }

    pub fn build(self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.eqs, self.vars);
        for (r, c, v) in self.entries {
            m[(r, c)] = self.field.add(m[(r, c)], v);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutant_of_a_jordan_block() {
        // X·J - J·X = 0 for a 3x3 nilpotent Jordan block has a 3-dimensional solution space.
        let f = Field::default();
        let j = Matrix::from_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let mut sb = SystemBuilder::new(f);
        let x = sb.unknown(3, 3);
        let eq = sb.equation(3, 3);
        sb.add_x_a(eq, x, &j, false);
        sb.add_b_x(eq, &j, x, true);
        let sys = sb.build();
        let ns = sys.nullspace();
        assert_eq!(ns.len(), 3);
        for v in &ns {
            let xm = x.extract(f, v);
            assert_eq!(xm.mul(&j), j.mul(&xm));
        }
    }
}
