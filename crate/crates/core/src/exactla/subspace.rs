//! Linear subspaces of `Q^n` in a canonical form.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A subspace stored by a basis in reduced column echelon form, so two values
/// are equal exactly when they span the same space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Span of the given vectors (they need not be independent).
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let as_rows = Matrix::from_fn(vectors.len(), ambient, |i, j| vectors[i][j].clone());
        let (r, pivots) = as_rows.rref();
        let basis = Matrix::from_fn(ambient, pivots.len(), |i, j| r[(j, i)].clone());
        Subspace { ambient, basis }
    }

    pub fn column_span(m: &Matrix) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Rational>> = indices.iter().map(|&i| unit_vector(ambient, i)).collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        self.basis.solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.columns().iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Self::span(self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = Matrix::from_fn(self.ambient, p + q, |i, j| {
            if j < p { self.basis[(i, j)].clone() } else { -other.basis[(i, j - p)].clone() }
        });
        let vs: Vec<Vec<Rational>> = stacked
            .kernel()
            .iter()
            .map(|x| self.basis.mul_vec(&x[..p]))
            .collect();
        Ok(Self::span(self.ambient, &vs))
    }

    /// A complement built greedily from standard basis vectors in index order.
    pub fn complement(&self) -> Subspace {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for i in 0..self.ambient {
            if current.dim() == self.ambient {
                break;
            }
            let e = unit_vector(self.ambient, i);
            if !current.contains(&e) {
                let mut vs = current.basis_vectors();
                vs.push(e.clone());
                current = Self::span(self.ambient, &vs);
                chosen.push(e);
            }
        }
        Self::span(self.ambient, &chosen)
    }

    /// Image under an invertible matrix.
    pub fn act(&self, g: &Matrix) -> Result<Subspace> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix acting on Q^{}",
                g.rows(),
                g.cols(),
                self.ambient
            )));
        }
        if g.rank() < self.ambient {
            return Err(Error::Singular);
        }
        Ok(Self::column_span(&(g * &self.basis)))
    }

    /// Rows of a matrix `N` with `N v = 0` exactly for `v` in the subspace.
    pub fn annihilator(&self) -> Matrix {
        let rows = self.basis.transpose().kernel();
        Matrix::from_fn(rows.len(), self.ambient, |i, j| rows[i][j].clone())
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = num_traits::One::one();
    v
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient: usize,
    basis: Matrix,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr { ambient: self.ambient, basis: self.basis.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        if r.basis.rows() != r.ambient {
            return Err(serde::de::Error::custom("basis rows differ from ambient dimension"));
        }
        Ok(Subspace::column_span(&r.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn intersection_examples() {
        let a = Subspace::span(2, &[v(&[1, 0])]);
        let b = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(2));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let p = Subspace::coordinate(3, &[0, 1]);
        let q = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(p.intersect(&q).unwrap(), Subspace::coordinate(3, &[1]));
    }

    #[test]
    fn sum_examples() {
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[1]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::coordinate(3, &[0, 1]));
        assert_eq!(a.sum(&Subspace::zero(3)).unwrap(), a);
        assert!(a.sum(&Subspace::zero(2)).is_err());
        assert!(a.intersect(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::coordinate(3, &[0]).complement(), Subspace::coordinate(3, &[1, 2]));
        assert_eq!(Subspace::full(3).complement(), Subspace::zero(3));
    }

    #[test]
    fn act_examples() {
        let s = Subspace::coordinate(3, &[0]);
        assert_eq!(s.act(&Matrix::identity(3)).unwrap(), s);
        let swap = Matrix::from_ints(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(s.act(&swap).unwrap(), Subspace::coordinate(3, &[1]));
        assert_eq!(s.act(&Matrix::zeros(3, 3)), Err(Error::Singular));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 0])]);
        let n = a.annihilator();
        assert_eq!(n.rows(), 2);
        for b in a.basis_vectors() {
            assert!(n.mul_vec(&b).iter().all(Zero::is_zero));
        }
        assert!(!n.mul_vec(&v(&[1, 0, 0, 0])).iter().all(Zero::is_zero));
    }
}
