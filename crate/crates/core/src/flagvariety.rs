//! `L/Q` as the Grassmannian of `k`-planes (A) or the Lagrangian Grassmannian (C).

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::rootdata::{GradedLie, LQSpec, Series};
use crate::schubert::CellDecomposition;
use crate::weyl::{double_coset_reps, levi_weyl_group, HasseElt};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagPoint {
    spec: LQSpec,
    subspace: Subspace,
}

impl FlagPoint {
    pub fn new(g: &GradedLie, subspace: Subspace) -> Result<Self> {
        let spec = *g.spec();
        if subspace.ambient() != spec.ambient() || subspace.dim() != spec.k() {
            return Err(Error::DimensionMismatch(format!(
                "{spec} needs a {}-plane in dimension {}, got dimension {} in {}",
                spec.k(),
                spec.ambient(),
                subspace.dim(),
                subspace.ambient()
            )));
        }
        if let Some(j) = g.omega() {
            let b = subspace.basis();
            if !(&(&b.transpose() * j) * b).is_zero() {
                return Err(Error::Precondition("subspace is not isotropic".into()));
            }
        }
        Ok(FlagPoint { spec, subspace })
    }

    pub fn spec(&self) -> &LQSpec {
        &self.spec
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn act(&self, g: &GradedLie, m: &Matrix) -> Result<FlagPoint> {
        g.check_group(m)?;
        FlagPoint::new(g, self.subspace.act(m)?)
    }

    /// A group element carrying the basepoint to this point.
    pub fn frame(&self, cd: &CellDecomposition) -> Result<Matrix> {
        cd.point_of(&cd.decompose_subspace(&self.subspace)?)
    }
}

impl Serialize for FlagPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FlagPoint", 2)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("basis", self.subspace.basis())?;
        st.end()
    }
}

pub fn basepoint(g: &GradedLie) -> FlagPoint {
    let spec = g.spec();
    FlagPoint { spec: *spec, subspace: Subspace::coordinate(spec.ambient(), &spec.base_indices()) }
}

pub fn in_q(g: &GradedLie, m: &Matrix) -> Result<bool> {
    g.check_group(m)?;
    let base = basepoint(g);
    Ok(base.subspace.act(m)? == base.subspace)
}

pub fn csp_multiplier(g: &GradedLie, m: &Matrix) -> Result<Rational> {
    if g.spec().series != Series::C {
        return Err(Error::Precondition("the multiplier is defined for series C".into()));
    }
    g.conformal_multiplier(m)
        .ok_or_else(|| Error::NotInGroup("matrix is not conformally symplectic".into()))
}

pub fn relative_position(a: &FlagPoint, b: &FlagPoint) -> Result<usize> {
    if a.spec != b.spec {
        return Err(Error::Precondition(format!("points of {} and {}", a.spec, b.spec)));
    }
    Ok(a.subspace.intersect(&b.subspace)?.dim())
}

/// The pair is in the position of the basepoint and its image under the length-one reflection.
pub fn theorem_condition(a: &FlagPoint, b: &FlagPoint) -> Result<bool> {
    if a == b {
        return Err(Error::Precondition("the two points coincide".into()));
    }
    Ok(relative_position(a, b)? + 1 == a.spec.k())
}

/// Index in `double_coset_reps` of the class of `l_1^{-1} l_2` for frames `l_i` of the points.
pub fn double_coset_class(cd: &CellDecomposition, a: &FlagPoint, b: &FlagPoint) -> Result<usize> {
    let g = cd.lie();
    let spec = g.spec();
    let l1 = a.frame(cd)?;
    let moved = b.subspace.act(&l1.inverse()?)?;
    let cell = cd.decompose_subspace(&moved)?;
    let levi = levi_weyl_group(spec);
    let key = cell.w.w.coset_key(spec);
    double_coset_reps(g)
        .iter()
        .position(|r| levi.iter().any(|u| u.compose(&r.w).coset_key(spec) == key))
        .ok_or_else(|| Error::Inconsistent("no double coset contains the cell".into()))
}

/// Second route to `theorem_condition`: the pair lies in the double coset of the length-one element.
pub fn theorem_condition_via_double_coset(cd: &CellDecomposition, a: &FlagPoint, b: &FlagPoint) -> Result<bool> {
    if a == b {
        return Err(Error::Precondition("the two points coincide".into()));
    }
    let reps: Vec<HasseElt> = double_coset_reps(cd.lie());
    Ok(reps[double_coset_class(cd, a, b)?].length == 1)
}

pub fn is_isotropic(g: &GradedLie, s: &Subspace) -> bool {
    match g.omega() {
        None => true,
        Some(j) => {
            let b = s.basis();
            (&(&b.transpose() * j) * b).entries().iter().all(Rational::is_zero)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::int;
    use crate::exactla::subspace::unit_vector;
    use crate::weyl::length_one_element;

    fn lie(spec: LQSpec) -> GradedLie {
        GradedLie::new(spec).unwrap()
    }

    fn point(g: &GradedLie, vecs: &[Vec<Rational>]) -> FlagPoint {
        FlagPoint::new(g, Subspace::span(g.dim(), vecs)).unwrap()
    }

    #[test]
    fn basepoints() {
        let a = lie(LQSpec::a(7, 4).unwrap());
        assert_eq!(basepoint(&a).subspace().basis_vectors(), vec![unit_vector(4, 0)]);
        let c = lie(LQSpec::c(5).unwrap());
        let b = basepoint(&c);
        assert_eq!(b.subspace().dim(), 2);
        assert!(is_isotropic(&c, b.subspace()));
        assert!(FlagPoint::new(&c, Subspace::coordinate(4, &[0, 2])).is_err());
    }

    #[test]
    fn q_membership() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            assert!(in_q(&g, &Matrix::identity(spec.ambient())).unwrap());
            let v = length_one_element(&g).w.matrix(&spec).unwrap();
            assert!(!in_q(&g, &v).unwrap());
            let mut q = Matrix::identity(spec.ambient());
            for x in g.graded_basis(1).iter().chain(&g.graded_basis(0)) {
                q = &q * &(&Matrix::identity(spec.ambient()) + x);
            }
            assert!(in_q(&g, &q).unwrap());
        }
    }

    #[test]
    fn multiplier_examples() {
        let g = lie(LQSpec::c(5).unwrap());
        assert_eq!(csp_multiplier(&g, &Matrix::identity(4)).unwrap(), int(1));
        // Swap e_2 with f_2 and negate f_1: an anti-symplectic e-f exchange.
        let mut x = Matrix::zeros(4, 4);
        x[(0, 0)] = int(1);
        x[(2, 2)] = int(-1);
        x[(1, 3)] = int(1);
        x[(3, 1)] = int(1);
        assert_eq!(csp_multiplier(&g, &x).unwrap(), int(-1));
        // The symplectic realization of the length-one reflection.
        let v = length_one_element(&g).w.matrix(g.spec()).unwrap();
        assert_eq!(csp_multiplier(&g, &v).unwrap(), int(1));
        assert_eq!(csp_multiplier(&g, &g.s_element()).unwrap(), int(-1));
        assert!(csp_multiplier(&g, &Matrix::unit(4, 0, 0)).is_err());
    }

    #[test]
    fn positions_and_condition() {
        let g = lie(LQSpec::a(7, 4).unwrap());
        let l1 = point(&g, &[unit_vector(4, 0)]);
        let l2 = point(&g, &[unit_vector(4, 1)]);
        assert_eq!(relative_position(&l1, &l1).unwrap(), 1);
        assert_eq!(relative_position(&l1, &l2).unwrap(), 0);
        assert!(theorem_condition(&l1, &l2).unwrap());
        assert!(theorem_condition(&l1, &l1).is_err());

        let g6 = lie(LQSpec::a(9, 5).unwrap());
        let p = point(&g6, &[unit_vector(6, 0), unit_vector(6, 1)]);
        let q = point(&g6, &[unit_vector(6, 2), unit_vector(6, 3)]);
        assert!(!theorem_condition(&p, &q).unwrap());
        let v = length_one_element(&g6).w.matrix(g6.spec()).unwrap();
        let vp = basepoint(&g6).act(&g6, &v).unwrap();
        assert!(theorem_condition(&basepoint(&g6), &vp).unwrap());
    }

    #[test]
    fn double_coset_reps_realize_each_position_once() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::a(11, 6).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            let cd = CellDecomposition::new(g.clone());
            let base = basepoint(&g);
            let mut seen = Vec::new();
            for (i, r) in double_coset_reps(&g).iter().enumerate() {
                let p = base.act(&g, &r.w.matrix(&spec).unwrap()).unwrap();
                let pos = relative_position(&base, &p).unwrap();
                assert!(!seen.contains(&pos));
                seen.push(pos);
                assert_eq!(double_coset_class(&cd, &base, &p).unwrap(), i);
            }
            assert_eq!(seen.len(), spec.k() + 1);
        }
    }

    #[test]
    fn both_routes_agree_on_cells() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            let cd = CellDecomposition::new(g.clone());
            let base = basepoint(&g);
            for h in cd.cells().iter().skip(1) {
                for c in cd.sample_cell(h, &crate::schubert::SamplingScheme { cap: 6, random: 2, ..Default::default() }) {
                    let p = FlagPoint::new(&g, cd.subspace_of(&c).unwrap()).unwrap();
                    assert_eq!(
                        theorem_condition(&base, &p).unwrap(),
                        theorem_condition_via_double_coset(&cd, &base, &p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn flag_point_json() {
        let g = lie(LQSpec::a(7, 4).unwrap());
        let s = serde_json::to_string(&basepoint(&g)).unwrap();
        assert_eq!(s, r#"{"spec":{"series":"A","n":7,"l":4},"basis":[["1"],["0"],["0"],["0"]]}"#);
    }
}
