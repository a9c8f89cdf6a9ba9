use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::rational::int;
use crate::exactla::{Matrix, Rational};
use crate::rootdata::{standard_omega, LQSpec, Series};

/// The ambient realization of `K`: matrix size, the grading weights of the
/// basis vectors and the positions of the `L'`, `R_3`, `L` and `R_{n+1}` blocks.
///
/// A weight-lower-triangular matrix (entries with `weight(row) >= weight(col)`)
/// has the zero pattern of the displays; the weight-diagonal part is the Levi
/// factor and the strictly lower part is `n`.
#[derive(Clone, Debug)]
pub struct KModel {
    pub spec: LQSpec,
    pub size: usize,
    pub weights: Vec<u8>,
    pub omega: Option<Matrix>,
    pub mu_scale: Rational,
}

impl KModel {
    pub fn new(spec: LQSpec) -> Result<Self> {
        Self::with_mu_scale(spec, Rational::one())
    }

    pub fn with_mu_scale(spec: LQSpec, mu_scale: Rational) -> Result<Self> {
        spec.validate()?;
        let n = spec.n;
        let (size, weights, omega) = match spec.series {
            Series::A => {
                let mut w = vec![0, 0, 1];
                w.extend(std::iter::repeat(2).take(n - 3));
                w.push(3);
                (n + 1, w, None)
            }
            Series::C => {
                let mut w = vec![0, 0, 1];
                w.extend(std::iter::repeat(2).take(n - 3));
                w.extend([4, 4, 3]);
                w.extend(std::iter::repeat(2).take(n - 3));
                (2 * n, w, Some(standard_omega(n)))
            }
        };
        Ok(KModel { spec, size, weights, omega, mu_scale })
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Indices of the `L` block inside the big matrix, in the order used by rootdata.
    pub fn l_indices(&self) -> Vec<usize> {
        let n = self.n();
        match self.spec.series {
            Series::A => (3..n).collect(),
            Series::C => (3..n).chain(n + 3..2 * n).collect(),
        }
    }

    /// Position of the curvature target slot.
    pub fn mu_target(&self) -> (usize, usize) {
        match self.spec.series {
            Series::A => (self.n(), 2),
            Series::C => (self.n() + 2, 2),
        }
    }

    pub fn r3_index(&self) -> usize {
        2
    }

    /// Index of the `R_{n+1}` entry (series A) or of `f_3` (series C).
    pub fn last_levi_index(&self) -> usize {
        match self.spec.series {
            Series::A => self.n(),
            Series::C => self.n() + 2,
        }
    }

    pub fn is_z_slot(&self, r: usize, c: usize) -> bool {
        c == 2 && r >= 3 && r < self.n()
    }

    fn check_size(&self, m: &Matrix) -> Result<()> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}x{} matrix, got {}x{}",
                self.size,
                self.size,
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    /// Zero above the weight diagonal.
    pub fn has_k_pattern(&self, m: &Matrix) -> Result<bool> {
        self.check_size(m)?;
        let w = &self.weights;
        Ok((0..self.size).all(|r| (0..self.size).all(|c| w[r] >= w[c] || m[(r, c)].is_zero())))
    }

    /// Weight-diagonal part.
    pub fn levi_part(&self, m: &Matrix) -> Matrix {
        let w = &self.weights;
        Matrix::from_fn(self.size, self.size, |r, c| if w[r] == w[c] { m[(r, c)].clone() } else { Rational::zero() })
    }

    pub fn is_levi(&self, m: &Matrix) -> Result<bool> {
        Ok(self.has_k_pattern(m)? && &self.levi_part(m) == m)
    }

    /// Membership in the ambient Lie algebra (`gl` or `sp`).
    pub fn in_ambient_algebra(&self, x: &Matrix) -> bool {
        match &self.omega {
            None => true,
            Some(j) => (&(&x.transpose() * j) + &(j * x)).is_zero(),
        }
    }

    /// Strictly below the weight diagonal and in the ambient algebra.
    pub fn in_n(&self, x: &Matrix) -> bool {
        let w = &self.weights;
        x.rows() == self.size
            && x.cols() == self.size
            && self.in_ambient_algebra(x)
            && (0..self.size).all(|r| (0..self.size).all(|c| w[r] > w[c] || x[(r, c)].is_zero()))
    }

    /// The multiplier `lambda` with `g^T J g = lambda J` (series C), `1` for series A.
    pub fn multiplier(&self, g: &Matrix) -> Option<Rational> {
        match &self.omega {
            None => Some(Rational::one()),
            Some(j) => {
                let lhs = &(&g.transpose() * j) * g;
                let lambda = lhs[(0, self.n())].clone();
                (!lambda.is_zero() && lhs == j.scale(&lambda)).then_some(lambda)
            }
        }
    }

    pub fn l_prime(&self, levi: &Matrix) -> Matrix {
        levi.submatrix(&[0, 1], &[0, 1])
    }

    pub fn l_block(&self, levi: &Matrix) -> Matrix {
        let idx = self.l_indices();
        levi.submatrix(&idx, &idx)
    }

    /// The scalar by which `Ad` of a Levi element rescales the curvature:
    /// `Ad` is an automorphism of the deformed bracket iff this equals `1`.
    /// A: `det(L') R_3^{-3} R_{n+1}`; C: `lambda det(L') R_3^{-4}`.
    pub fn curvature_factor(&self, levi: &Matrix) -> Result<Rational> {
        let dl = self.l_prime(levi).determinant()?;
        let r3 = &levi[(2, 2)];
        if r3.is_zero() || dl.is_zero() {
            return Err(Error::Singular);
        }
        Ok(match self.spec.series {
            Series::A => &dl * &levi[(self.n(), self.n())] / (r3 * r3 * r3),
            Series::C => {
                let lambda = self
                    .multiplier(levi)
                    .ok_or_else(|| Error::NotInGroup("Levi part is not conformally symplectic".into()))?;
                lambda * dl / (r3 * r3 * r3 * r3)
            }
        })
    }

    /// The remaining displayed constraint: A: `(det(L') R_3 det(L) R_{n+1})^2 = 1`;
    /// C: multiplier `+-1`.
    pub fn normalization_holds(&self, levi: &Matrix) -> Result<bool> {
        match self.spec.series {
            Series::A => {
                let d = levi.determinant()?;
                Ok(&d * &d == Rational::one())
            }
            Series::C => Ok(self.multiplier(levi).is_some_and(|l| &l * &l == Rational::one())),
        }
    }

    /// Builds a Levi element from its blocks; for C the `f`-entries of `L'` and
    /// `R_3` are filled in from the multiplier of `l`.
    pub fn embed_levi(&self, l_prime: &Matrix, r3: &Rational, l: &Matrix, r_last: Option<&Rational>) -> Result<Matrix> {
        let mut g = Matrix::zeros(self.size, self.size);
        for i in 0..2 {
            for j in 0..2 {
                g[(i, j)] = l_prime[(i, j)].clone();
            }
        }
        g[(2, 2)] = r3.clone();
        let idx = self.l_indices();
        if l.rows() != idx.len() {
            return Err(Error::DimensionMismatch("L block has the wrong size".into()));
        }
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                g[(i, j)] = l[(a, b)].clone();
            }
        }
        match self.spec.series {
            Series::A => {
                let r = r_last.ok_or_else(|| Error::InvalidParameters("series A needs R_{n+1}".into()))?;
                g[(self.n(), self.n())] = r.clone();
            }
            Series::C => {
                let m = self.n() - 3;
                let lambda = standard_lagrangian_multiplier(l, m)
                    .ok_or_else(|| Error::NotInGroup("L is not conformally symplectic".into()))?;
                let n = self.n();
                let fpart = l_prime.inverse()?.transpose().scale(&lambda);
                for i in 0..2 {
                    for j in 0..2 {
                        g[(n + i, n + j)] = fpart[(i, j)].clone();
                    }
                }
                g[(n + 2, n + 2)] = &lambda / r3;
            }
        }
        Ok(g)
    }

    /// Sign pattern as a diagonal matrix.
    pub fn diag_signs(&self, signs: &[i64]) -> Matrix {
        Matrix::diag(&signs.iter().map(|&s| int(s)).collect::<Vec<_>>())
    }
}

fn standard_lagrangian_multiplier(l: &Matrix, m: usize) -> Option<Rational> {
    let j = standard_omega(m);
    let lhs = &(&l.transpose() * &j) * l;
    let lambda = lhs[(0, m)].clone();
    (!lambda.is_zero() && lhs == j.scale(&lambda)).then_some(lambda)
}
