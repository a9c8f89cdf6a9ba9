//! The |1|-graded algebras `l = l_{-1} + l_0 + l_1` for the Grassmannian node of
//! `gl(m)` (series A) and the Lagrangian node of `csp(2m)` (series C).
//!
//! Indices are intrinsic: the ambient basis is `e_1..e_m` for A and
//! `e_1..e_m, f_1..f_m` for C, stored 0-based. The crossed node is the simple
//! root whose reflection swaps `e_k, e_{k+1}` (A) or `e_m, f_m` (C).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::rational::{int, Rational};
use crate::exactla::Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Series {
    A,
    C,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::C => write!(f, "C"),
        }
    }
}

/// Parameters of one member of the two series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LQSpec {
    pub series: Series,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
}

impl LQSpec {
    pub fn a(n: usize, l: usize) -> Result<Self> {
        let s = LQSpec { series: Series::A, n, l: Some(l) };
        s.validate()?;
        Ok(s)
    }

    pub fn c(n: usize) -> Result<Self> {
        let s = LQSpec { series: Series::C, n, l: None };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self.series {
            Series::A => {
                let l = self.l.ok_or_else(|| {
                    Error::InvalidParameters("series A needs the parameter l".into())
                })?;
                if l <= 3 {
                    return Err(Error::InvalidParameters(format!("series A needs l > 3, got l = {l}")));
                }
                if self.n < 2 * l - 1 {
                    return Err(Error::InvalidParameters(format!(
                        "series A needs n >= 2l - 1, got n = {}, l = {l}",
                        self.n
                    )));
                }
            }
            Series::C => {
                if self.l.is_some() {
                    return Err(Error::InvalidParameters("series C takes no parameter l".into()));
                }
                if self.n <= 4 {
                    return Err(Error::InvalidParameters(format!("series C needs n > 4, got n = {}", self.n)));
                }
            }
        }
        Ok(())
    }

    /// Rank parameter `m = n - 3`.
    pub fn m(&self) -> usize {
        self.n - 3
    }

    /// Dimension of the planes parametrized by `L/Q`.
    pub fn k(&self) -> usize {
        match self.series {
            Series::A => self.l.expect("validated") - 3,
            Series::C => self.m(),
        }
    }

    /// Size of the matrices realizing `L`.
    pub fn ambient(&self) -> usize {
        match self.series {
            Series::A => self.m(),
            Series::C => 2 * self.m(),
        }
    }

    /// Coordinates spanning the base point of `L/Q`.
    pub fn base_indices(&self) -> Vec<usize> {
        (0..self.k()).collect()
    }

    pub fn is_base_index(&self, i: usize) -> bool {
        i < self.k()
    }
}

impl fmt::Display for LQSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l {
            Some(l) => write!(f, "{}(n={}, l={})", self.series, self.n, l),
            None => write!(f, "{}(n={})", self.series, self.n),
        }
    }
}

/// A root of `l`, indices 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Root {
    /// `e_i - e_j`, `i != j`.
    Diff(usize, usize),
    /// `sign * (e_i + e_j)`, `i < j`.
    Sum(usize, usize, i8),
    /// `sign * 2 e_i`.
    Long(usize, i8),
}

impl Root {
    pub fn is_positive(&self) -> bool {
        match *self {
            Root::Diff(i, j) => i < j,
            Root::Sum(_, _, s) | Root::Long(_, s) => s > 0,
        }
    }

    pub fn negate(&self) -> Root {
        match *self {
            Root::Diff(i, j) => Root::Diff(j, i),
            Root::Sum(i, j, s) => Root::Sum(i, j, -s),
            Root::Long(i, s) => Root::Long(i, -s),
        }
    }

    /// `alpha(H)` where `H` has torus coordinates `h`.
    pub fn eval(&self, h: &[Rational]) -> Rational {
        match *self {
            Root::Diff(i, j) => &h[i] - &h[j],
            Root::Sum(i, j, s) => (&h[i] + &h[j]) * int(s as i64),
            Root::Long(i, s) => &h[i] * int(2 * s as i64),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Root::Diff(i, j) => format!("e{}-e{}", i + 1, j + 1),
            Root::Sum(i, j, s) if s > 0 => format!("e{}+e{}", i + 1, j + 1),
            Root::Sum(i, j, _) => format!("-e{}-e{}", i + 1, j + 1),
            Root::Long(i, s) if s > 0 => format!("2e{}", i + 1),
            Root::Long(i, _) => format!("-2e{}", i + 1),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The graded algebra with its root-space realization.
#[derive(Clone, Debug)]
pub struct GradedLie {
    spec: LQSpec,
    roots: Vec<(Root, Matrix)>,
    omega: Option<Matrix>,
}

impl GradedLie {
    pub fn new(spec: LQSpec) -> Result<Self> {
        spec.validate()?;
        let m = spec.m();
        let mut roots = Vec::new();
        match spec.series {
            Series::A => {
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            roots.push((Root::Diff(i, j), Matrix::unit(m, i, j)));
                        }
                    }
                }
            }
            Series::C => {
                let d = 2 * m;
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            let x = &Matrix::unit(d, i, j) - &Matrix::unit(d, m + j, m + i);
                            roots.push((Root::Diff(i, j), x));
                        }
                    }
                }
                for i in 0..m {
                    for j in i + 1..m {
                        let p = &Matrix::unit(d, i, m + j) + &Matrix::unit(d, j, m + i);
                        let q = &Matrix::unit(d, m + i, j) + &Matrix::unit(d, m + j, i);
                        roots.push((Root::Sum(i, j, 1), p));
                        roots.push((Root::Sum(i, j, -1), q));
                    }
                }
                for i in 0..m {
                    roots.push((Root::Long(i, 1), Matrix::unit(d, i, m + i)));
                    roots.push((Root::Long(i, -1), Matrix::unit(d, m + i, i)));
                }
            }
        }
        let omega = match spec.series {
            Series::A => None,
            Series::C => Some(standard_omega(m)),
        };
        Ok(GradedLie { spec, roots, omega })
    }

    pub fn spec(&self) -> &LQSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.ambient()
    }

    /// The symplectic form `Omega(e_i, f_j) = delta_ij` as a Gram matrix (series C).
    pub fn omega(&self) -> Option<&Matrix> {
        self.omega.as_ref()
    }

    pub fn root_spaces(&self) -> &[(Root, Matrix)] {
        &self.roots
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.roots.iter().map(|(r, _)| *r)
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots().filter(Root::is_positive).collect()
    }

    pub fn root_vector(&self, r: Root) -> Result<&Matrix> {
        self.roots
            .iter()
            .find(|(q, _)| *q == r)
            .map(|(_, x)| x)
            .ok_or_else(|| Error::NotInAlgebra(format!("{r} is not a root of {}", self.spec)))
    }

    /// The crossed simple root.
    pub fn alpha0(&self) -> Root {
        match self.spec.series {
            Series::A => Root::Diff(self.spec.k() - 1, self.spec.k()),
            Series::C => Root::Long(self.spec.m() - 1, 1),
        }
    }

    /// Coefficient of the crossed simple root in `r`.
    pub fn grading_component(&self, r: Root) -> Result<i32> {
        self.root_vector(r)?;
        let k = self.spec.k();
        Ok(match r {
            Root::Diff(i, j) if self.spec.series == Series::A => {
                match (i < k, j < k) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => 0,
                }
            }
            Root::Diff(..) => 0,
            Root::Sum(_, _, s) | Root::Long(_, s) => s as i32,
        })
    }

    pub fn graded_roots(&self, degree: i32) -> Vec<Root> {
        self.roots()
            .filter(|&r| self.grading_component(r).expect("own root") == degree)
            .collect()
    }

    pub fn graded_basis(&self, degree: i32) -> Vec<Matrix> {
        self.graded_roots(degree)
            .into_iter()
            .map(|r| self.root_vector(r).expect("own root").clone())
            .collect()
    }

    /// Torus coordinates of the diagonal element `H`, or `None` when `H` is not
    /// in the Cartan subalgebra.
    pub fn torus_coordinates(&self, h: &Matrix) -> Option<Vec<Rational>> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if i != j && !h[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        let m = self.spec.m();
        match self.spec.series {
            Series::A => Some((0..m).map(|i| h[(i, i)].clone()).collect()),
            Series::C => {
                // csp Cartan: diag(h + c, -h + c); the central part cancels in every root.
                let c = (0..m).map(|i| &h[(i, i)] + &h[(m + i, m + i)]).collect::<Vec<_>>();
                if c.iter().any(|x| x != &c[0]) {
                    return None;
                }
                let half = &c[0] / int(2);
                Some((0..m).map(|i| &h[(i, i)] - &half).collect())
            }
        }
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        let d = self.dim();
        if x.rows() != d || x.cols() != d {
            return false;
        }
        match &self.omega {
            None => true,
            Some(j) => {
                let mm = &(&x.transpose() * j) + &(j * x);
                let c = mm[(0, self.spec.m())].clone();
                mm == j.scale(&c)
            }
        }
    }

    fn check_member(&self, x: &Matrix) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInAlgebra(format!("matrix is not in the Lie algebra of {}", self.spec)))
        }
    }

    pub fn bracket(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(x.commutator(y))
    }

    /// When `x` is a multiple of a single root vector, that root and multiple.
    pub fn root_of(&self, x: &Matrix) -> Option<(Root, Rational)> {
        if x.is_zero() {
            return None;
        }
        self.roots.iter().find_map(|(r, v)| {
            let (pos, val) = leading_entry(v);
            let c = &x[pos] / val;
            (!c.is_zero() && &v.scale(&c) == x).then_some((*r, c))
        })
    }

    /// Coefficients of `x` over the given root vectors, or `None` when `x` is
    /// not in their span. Root vectors have disjoint supports, so each
    /// coefficient is read off one entry and the sum is rechecked.
    pub fn coordinates(&self, x: &Matrix, roots: &[Root]) -> Option<Vec<Rational>> {
        let mut coeffs = Vec::with_capacity(roots.len());
        let mut rebuilt = Matrix::zeros(x.rows(), x.cols());
        for &r in roots {
            let v = self.root_vector(r).ok()?;
            let (pos, val) = leading_entry(v);
            let c = &x[pos] / val;
            rebuilt = &rebuilt + &v.scale(&c);
            coeffs.push(c);
        }
        (&rebuilt == x).then_some(coeffs)
    }

    pub fn combine(&self, roots: &[Root], coeffs: &[Rational]) -> Matrix {
        assert_eq!(roots.len(), coeffs.len());
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (r, c) in roots.iter().zip(coeffs) {
            if !c.is_zero() {
                out = &out + &self.root_vector(*r).expect("own root").scale(c);
            }
        }
        out
    }

    /// Component of `x` in `l_{-1}`: the block mapping base coordinates to the rest.
    pub fn project_minus(&self, x: &Matrix) -> Matrix {
        let s = self.spec;
        Matrix::from_fn(x.rows(), x.cols(), |r, c| {
            if !s.is_base_index(r) && s.is_base_index(c) { x[(r, c)].clone() } else { Rational::zero() }
        })
    }

    /// `x` lies in the parabolic `q` (block upper triangular).
    pub fn in_parabolic(&self, x: &Matrix) -> bool {
        self.project_minus(x).is_zero()
    }

    /// The element acting as `-id` on `l_{-1}` and trivially on `l_0`:
    /// `-1` on the base coordinates and `+1` elsewhere.
    pub fn s_element(&self) -> Matrix {
        let s = self.spec;
        let entries: Vec<i64> =
            (0..self.dim()).map(|i| if s.is_base_index(i) { -1 } else { 1 }).collect();
        Matrix::diag_ints(&entries)
    }

    /// Positive root vectors, the nilradical `b_+` of the Borel.
    pub fn b_plus_basis(&self) -> Vec<Matrix> {
        self.roots
            .iter()
            .filter(|(r, _)| r.is_positive())
            .map(|(_, v)| v.clone())
            .collect()
    }
}

impl GradedLie {
    /// Multiplier `lambda` with `g^T J g = lambda J`, or `None` when `g` is not
    /// conformally symplectic (series C only).
    pub fn conformal_multiplier(&self, g: &Matrix) -> Option<Rational> {
        let j = self.omega.as_ref()?;
        let d = self.dim();
        if g.rows() != d || g.cols() != d {
            return None;
        }
        let lhs = &(&g.transpose() * j) * g;
        let lambda = lhs[(0, self.spec.m())].clone();
        (!lambda.is_zero() && lhs == j.scale(&lambda)).then_some(lambda)
    }

    /// Membership in the group `L`: invertible (A) or conformally symplectic (C).
    pub fn check_group(&self, g: &Matrix) -> Result<()> {
        let d = self.dim();
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch(format!("expected a {d}x{d} matrix")));
        }
        match self.spec.series {
            Series::A => {
                if g.determinant()?.is_zero() {
                    return Err(Error::NotInGroup("matrix is singular".into()));
                }
            }
            Series::C => {
                if self.conformal_multiplier(g).is_none() {
                    return Err(Error::NotInGroup("matrix is not conformally symplectic".into()));
                }
            }
        }
        Ok(())
    }
}

/// `[[0, I], [-I, 0]]`, so `x^T J y = Omega(x, y)` with `Omega(e_i, f_j) = delta_ij`.
pub fn standard_omega(m: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(i, m + i)] = Rational::one();
        j[(m + i, i)] = -Rational::one();
    }
    j
}

fn leading_entry(v: &Matrix) -> ((usize, usize), &Rational) {
    for r in 0..v.rows() {
        for c in 0..v.cols() {
            if !v[(r, c)].is_zero() {
                return ((r, c), &v[(r, c)]);
            }
        }
    }
    panic!("zero root vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::frac;

    #[test]
    fn parameter_bounds() {
        assert!(LQSpec::a(7, 4).is_ok());
        assert!(matches!(LQSpec::a(7, 3), Err(Error::InvalidParameters(_))));
        assert!(LQSpec::a(6, 4).is_err());
        assert!(LQSpec::c(4).is_err());
        let s = LQSpec::a(9, 5).unwrap();
        assert_eq!((s.m(), s.k(), s.ambient()), (6, 2, 6));
        let c = LQSpec::c(6).unwrap();
        assert_eq!((c.m(), c.k(), c.ambient()), (3, 3, 6));
    }

    #[test]
    fn spec_json() {
        let a = LQSpec::a(7, 4).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"series":"A","n":7,"l":4}"#);
        let c = LQSpec::c(5).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"series":"C","n":5}"#);
        let back: LQSpec = serde_json::from_str(r#"{"series":"C","n":5}"#).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn root_counts() {
        let a = GradedLie::new(LQSpec::a(7, 4).unwrap()).unwrap();
        assert_eq!(a.root_spaces().len(), 12);
        let c = GradedLie::new(LQSpec::c(5).unwrap()).unwrap();
        assert_eq!(c.root_spaces().len(), 8);
    }

    #[test]
    fn grading_examples() {
        let a = GradedLie::new(LQSpec::a(9, 5).unwrap()).unwrap();
        assert_eq!(a.grading_component(a.alpha0()).unwrap(), 1);
        assert_eq!(a.grading_component(Root::Diff(0, 1)).unwrap(), 0);
        assert_eq!(a.grading_component(Root::Diff(3, 4)).unwrap(), 0);
        assert!(a.grading_component(Root::Long(0, 1)).is_err());
        // k(m-k) = 2*4
        assert_eq!(a.graded_roots(-1).len(), 8);
        let c = GradedLie::new(LQSpec::c(6).unwrap()).unwrap();
        assert_eq!(c.grading_component(c.alpha0()).unwrap(), 1);
        // m(m+1)/2
        assert_eq!(c.graded_roots(-1).len(), 6);
    }

    #[test]
    fn root_vectors_are_eigenvectors() {
        for spec in [LQSpec::a(7, 4).unwrap(), LQSpec::c(6).unwrap()] {
            let g = GradedLie::new(spec).unwrap();
            let m = spec.m();
            let h: Vec<Rational> = (0..m).map(|i| frac(2 * i as i64 + 1, 3)).collect();
            let hm = match spec.series {
                Series::A => Matrix::diag(&h),
                Series::C => {
                    let mut all = h.clone();
                    all.extend(h.iter().map(|x| -x));
                    Matrix::diag(&all)
                }
            };
            assert_eq!(g.torus_coordinates(&hm).unwrap(), h);
            for (r, e) in g.root_spaces() {
                assert_eq!(hm.commutator(e), e.scale(&r.eval(&h)), "root {r}");
                assert!(g.contains(e));
            }
        }
    }

    #[test]
    fn s_element_examples() {
        let a = GradedLie::new(LQSpec::a(7, 4).unwrap()).unwrap();
        assert_eq!(a.s_element(), Matrix::diag_ints(&[-1, 1, 1, 1]));
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(5).unwrap()] {
            let g = GradedLie::new(spec).unwrap();
            let s = g.s_element();
            let si = s.inverse().unwrap();
            for x in g.graded_basis(-1) {
                assert_eq!(&(&s * &x) * &si, -&x);
            }
            for y in g.graded_basis(1) {
                assert_eq!(&(&s * &y) * &si, -&y);
            }
            for z in g.graded_basis(0) {
                assert_eq!(&(&s * &z) * &si, z);
            }
        }
    }

    #[test]
    fn bracket_basics() {
        let g = GradedLie::new(LQSpec::c(5).unwrap()).unwrap();
        let x = g.root_vector(Root::Sum(0, 1, 1)).unwrap().clone();
        assert!(g.bracket(&x, &x).unwrap().is_zero());
        let plus = g.graded_basis(1);
        for a in &plus {
            for b in &plus {
                assert!(g.bracket(a, b).unwrap().is_zero());
            }
        }
        let not_in = Matrix::unit(4, 0, 1);
        assert!(g.bracket(&not_in, &x).is_err());
    }

    #[test]
    fn root_of_and_coordinates() {
        let g = GradedLie::new(LQSpec::c(6).unwrap()).unwrap();
        let r = Root::Sum(0, 2, -1);
        let x = g.root_vector(r).unwrap().scale(&frac(-3, 2));
        assert_eq!(g.root_of(&x), Some((r, frac(-3, 2))));
        let roots = g.positive_roots();
        let coeffs: Vec<Rational> = (0..roots.len()).map(|i| int(i as i64 - 2)).collect();
        let y = g.combine(&roots, &coeffs);
        assert_eq!(g.coordinates(&y, &roots).unwrap(), coeffs);
        assert!(g.coordinates(&Matrix::identity(6), &roots).is_none());
    }
}
