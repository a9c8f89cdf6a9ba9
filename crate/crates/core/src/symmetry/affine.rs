use num_traits::Zero;

use crate::error::Result;
use crate::exactla::{Matrix, Rational, Subspace};

/// Matrices `base + sum_i y_i dirs[i]`.
#[derive(Clone, Debug)]
pub struct AffineFamily {
    pub base: Matrix,
    pub dirs: Vec<Matrix>,
}

impl AffineFamily {
    pub fn at(&self, y: &[Rational]) -> Matrix {
        let mut out = self.base.clone();
        for (c, d) in y.iter().zip(&self.dirs) {
            if !c.is_zero() {
                out = &out + &d.scale(c);
            }
        }
        out
    }

    /// Parameters with `g(y) * src ⊆ dst` for every pair, or `None` when the
    /// linear system is inconsistent.
    pub fn solve_maps(&self, pairs: &[(&Subspace, &Subspace)]) -> Result<Option<Vec<Rational>>> {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs = Vec::new();
        for (src, dst) in pairs {
            let ann = dst.annihilator();
            let b = src.basis();
            let base = &(&ann * &self.base) * b;
            let dirs: Vec<Matrix> = self.dirs.iter().map(|d| &(&ann * d) * b).collect();
            for i in 0..base.rows() {
                for j in 0..base.cols() {
                    rows.push(dirs.iter().map(|d| d[(i, j)].clone()).collect());
                    rhs.push(-&base[(i, j)]);
                }
            }
        }
        if rows.is_empty() {
            return Ok(Some(vec![Rational::zero(); self.dirs.len()]));
        }
        if self.dirs.is_empty() {
            return Ok(rhs.iter().all(Zero::is_zero).then(Vec::new));
        }
        Ok(Matrix::from_rows(rows)?.solve(&rhs))
    }
}
