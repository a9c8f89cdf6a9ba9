//! Symmetries of the flat model at points of `L/Q` away from two removed points.
//!
//! Every symmetry at `x = exp(Z) w Q` is projectively `g_x s exp(Y) g_x^{-1}`
//! with `g_x = exp(Z) w` and `Y` in `l_1`. Since `Y^2 = 0` this is affine in
//! `Y`, so each endpoint condition is an exact linear system in `Y`.

pub mod affine;
pub mod geometric;
pub mod report;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::flagvariety::basepoint;
use crate::rootdata::GradedLie;
use crate::schubert::{CellDecomposition, SchubertCoord};
use crate::weyl::{length_one_element, HasseElt};

pub use affine::AffineFamily;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Preserving,
    Swapping,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymmetryWitness {
    pub g: Matrix,
    pub base: SchubertCoord,
    #[serde(rename = "Y")]
    pub y: Matrix,
    pub kind: Kind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointClassification {
    pub base: SchubertCoord,
    pub preserving: Option<SymmetryWitness>,
    pub swapping: Option<SymmetryWitness>,
}

impl PointClassification {
    pub fn preserving_exists(&self) -> bool {
        self.preserving.is_some()
    }

    pub fn swapping_exists(&self) -> bool {
        self.swapping.is_some()
    }

    pub fn witness(&self) -> Option<&SymmetryWitness> {
        self.preserving.as_ref().or(self.swapping.as_ref())
    }
}

impl Serialize for PointClassification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PointClassification", 4)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("preserving_exists", &self.preserving_exists())?;
        st.serialize_field("swapping_exists", &self.swapping_exists())?;
        st.serialize_field("witness", &self.witness())?;
        st.end()
    }
}

/// `s exp(-Ad_s Y) exp(Y)` for `Y` in `l_1`.
pub fn flat_symmetry(g: &GradedLie, y: &Matrix) -> Result<Matrix> {
    if g.coordinates(y, &g.graded_roots(1)).is_none() {
        return Err(Error::NotInAlgebra("Y is not in l_1".into()));
    }
    let s = g.s_element();
    let ad_s_y = &(&s * y) * &s.inverse()?;
    Ok(&(&s * &(-&ad_s_y).exp_nilpotent()?) * &y.exp_nilpotent()?)
}

fn levi_part(g: &GradedLie, h: &Matrix) -> Matrix {
    let spec = g.spec();
    Matrix::from_fn(h.rows(), h.cols(), |r, c| {
        if spec.is_base_index(r) == spec.is_base_index(c) { h[(r, c)].clone() } else { Rational::zero() }
    })
}

/// `g` fixes the point of `x` and acts on its tangent space as `-id`.
pub fn is_symmetry_at(cd: &CellDecomposition, g: &Matrix, x: &SchubertCoord) -> Result<bool> {
    let lie = cd.lie();
    if lie.check_group(g).is_err() {
        return Ok(false);
    }
    let gx = cd.point_of(x)?;
    let h = &(&gx.inverse()? * g) * &gx;
    if !lie.in_parabolic(&h) {
        return Ok(false);
    }
    let levi = levi_part(lie, &h);
    let levi_inv = levi.inverse()?;
    Ok(lie.graded_basis(-1).iter().all(|e| &(&levi * e) * &levi_inv == -e))
}

/// All symmetries at `x`, parametrized by the `l_1` coordinates of `Y`.
pub fn symmetry_family(cd: &CellDecomposition, x: &SchubertCoord) -> Result<AffineFamily> {
    let lie = cd.lie();
    let gx = cd.point_of(x)?;
    let gx_inv = gx.inverse()?;
    let left = &gx * &lie.s_element();
    let conj = |m: &Matrix| &(&left * m) * &gx_inv;
    let base = conj(&Matrix::identity(lie.dim()));
    let dirs = lie.graded_basis(1).iter().map(conj).collect();
    Ok(AffineFamily { base, dirs })
}

/// Evidence that a point in the length-one cell has no symmetry when the
/// second removed point lies in a longer double coset.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LongCosetCertificate {
    /// `Ad_{v^{-1}} Z` is a nonzero element of `l_{-1}`.
    pub ad_inverse_in_l_minus: bool,
    /// On the diagonal of `exp(e^Z Ad_w(Y) e^{-Z})` every entry is `1` except at the
    /// two positions of the crossed root, which sum to `2`, for all `Y` in `l_1`.
    pub diagonal_obstruction: bool,
    pub preserving_infeasible: bool,
    pub swapping_infeasible: bool,
}

impl LongCosetCertificate {
    pub fn holds(&self) -> bool {
        self.ad_inverse_in_l_minus && self.diagonal_obstruction && self.preserving_infeasible && self.swapping_infeasible
    }
}

/// The two removed points `eQ` and `vQ`.
#[derive(Clone, Debug)]
pub struct Setting<'a> {
    pub cd: &'a CellDecomposition,
    pub v: HasseElt,
    v_matrix: Matrix,
    origin: Subspace,
    v_point: Subspace,
}

impl<'a> Setting<'a> {
    pub fn new(cd: &'a CellDecomposition, v: HasseElt) -> Result<Self> {
        if v.w.is_identity() {
            return Err(Error::Precondition("v = identity: the two removed points coincide".into()));
        }
        let lie = cd.lie();
        let v_matrix = v.w.matrix(lie.spec())?;
        let origin = basepoint(lie).subspace().clone();
        let v_point = origin.act(&v_matrix)?;
        Ok(Setting { cd, v, v_matrix, origin, v_point })
    }

    pub fn origin(&self) -> &Subspace {
        &self.origin
    }

    pub fn v_point(&self) -> &Subspace {
        &self.v_point
    }

    pub fn is_removed(&self, x: &SchubertCoord) -> Result<bool> {
        let p = self.cd.subspace_of(x)?;
        Ok(p == self.origin || p == self.v_point)
    }

    fn check_point(&self, x: &SchubertCoord) -> Result<()> {
        if self.is_removed(x)? {
            return Err(Error::Precondition("x is one of the removed points".into()));
        }
        Ok(())
    }

    fn check_length_one(&self) -> Result<()> {
        if self.v.length != 1 {
            return Err(Error::Precondition("v must be the length-one element".into()));
        }
        Ok(())
    }

    fn endpoints_ok(&self, g: &Matrix, kind: Kind) -> Result<bool> {
        let a = self.origin.act(g)?;
        let b = self.v_point.act(g)?;
        Ok(match kind {
            Kind::Preserving => a == self.origin && b == self.v_point,
            Kind::Swapping => a == self.v_point && b == self.origin,
        })
    }

    /// Witness soundness: a symmetry at its base point with the right endpoint behaviour.
    pub fn verify_witness(&self, w: &SymmetryWitness) -> Result<bool> {
        let lie = self.cd.lie();
        let y_ok = lie.coordinates(&w.y, &lie.graded_roots(1)).is_some();
        Ok(y_ok && is_symmetry_at(self.cd, &w.g, &w.base)? && self.endpoints_ok(&w.g, w.kind)?)
    }

    fn witness(&self, x: &SchubertCoord, fam: &AffineFamily, y: &[Rational], kind: Kind) -> Result<SymmetryWitness> {
        let lie = self.cd.lie();
        let w = SymmetryWitness {
            g: fam.at(y),
            base: x.clone(),
            y: lie.combine(&lie.graded_roots(1), y),
            kind,
        };
        if !self.verify_witness(&w)? {
            return Err(Error::Inconsistent("solved symmetry failed verification".into()));
        }
        Ok(w)
    }

    fn decide(&self, x: &SchubertCoord, kind: Kind) -> Result<Option<SymmetryWitness>> {
        self.check_point(x)?;
        let fam = symmetry_family(self.cd, x)?;
        let (o, v) = (&self.origin, &self.v_point);
        let pairs = match kind {
            Kind::Preserving => [(o, o), (v, v)],
            Kind::Swapping => [(o, v), (v, o)],
        };
        match fam.solve_maps(&pairs)? {
            None => Ok(None),
            Some(y) => self.witness(x, &fam, &y, kind).map(Some),
        }
    }

    /// Exact decision over all symmetries at `x`.
    pub fn decide_preserving(&self, x: &SchubertCoord) -> Result<Option<SymmetryWitness>> {
        self.decide(x, Kind::Preserving)
    }

    pub fn decide_swapping(&self, x: &SchubertCoord) -> Result<Option<SymmetryWitness>> {
        self.decide(x, Kind::Swapping)
    }

    /// The candidate with `Y = 0`, offered exactly when `Z` has no component on the crossed root.
    pub fn exists_preserving(&self, x: &SchubertCoord) -> Result<Option<SymmetryWitness>> {
        self.check_length_one()?;
        self.check_point(x)?;
        let lie = self.cd.lie();
        if !x.alpha0_coefficient(lie).is_zero() {
            return Ok(None);
        }
        let fam = symmetry_family(self.cd, x)?;
        let w = SymmetryWitness {
            g: fam.base.clone(),
            base: x.clone(),
            y: Matrix::zeros(lie.dim(), lie.dim()),
            kind: Kind::Preserving,
        };
        Ok(self.verify_witness(&w)?.then_some(w))
    }

    /// One-parameter family `Ad_w(Y) = y E_{-alpha_0}`, with `y` fixed by the
    /// vanishing of the diagonal entry of `exp(e^Z Ad_w(Y) e^{-Z})` in the row of `E_{-alpha_0}`.
    pub fn exists_swapping(&self, x: &SchubertCoord) -> Result<Option<SymmetryWitness>> {
        self.check_length_one()?;
        self.check_point(x)?;
        let lie = self.cd.lie();
        let a0 = lie.alpha0();
        if !x.w.inversion_set.contains(&a0) {
            return Ok(None);
        }
        let spec = lie.spec();
        let wm = x.w.w.matrix(spec)?;
        let wm_inv = wm.inverse()?;
        let e_neg = lie.root_vector(a0.negate())?;
        let dir = &(&wm_inv * e_neg) * &wm;
        let fam1 = {
            let full = symmetry_family(self.cd, x)?;
            let coords = lie
                .coordinates(&dir, &lie.graded_roots(1))
                .ok_or_else(|| Error::Inconsistent("Ad_w^{-1} E_{-alpha_0} is not in l_1".into()))?;
            AffineFamily { base: full.base.clone(), dirs: vec![&full.at(&coords) - &full.base] }
        };
        let a = x.alpha0_coefficient(lie);
        let y = if a.is_zero() {
            let (o, v) = (&self.origin, &self.v_point);
            match fam1.solve_maps(&[(o, v), (v, o)])? {
                None => return Ok(None),
                Some(y) => y[0].clone(),
            }
        } else {
            let z = x.z(lie);
            let ez = z.exp_nilpotent()?;
            let ez_inv = (-&z).exp_nilpotent()?;
            let xdir = &(&ez * e_neg) * &ez_inv;
            let p = distinguished_row(e_neg);
            let c = xdir[(p, p)].clone();
            if c.is_zero() {
                return Ok(None);
            }
            -Rational::one() / c
        };
        let w = SymmetryWitness {
            g: fam1.at(std::slice::from_ref(&y)),
            base: x.clone(),
            y: dir.scale(&y),
            kind: Kind::Swapping,
        };
        Ok(self.verify_witness(&w)?.then_some(w))
    }

    /// Coefficient `y` used by `exists_swapping`, read back from a witness.
    pub fn swapping_coefficient(&self, w: &SymmetryWitness) -> Result<Rational> {
        let lie = self.cd.lie();
        let wm = w.base.w.w.matrix(lie.spec())?;
        let ad = &(&wm * &w.y) * &wm.inverse()?;
        match lie.root_of(&ad) {
            Some((r, c)) if r == lie.alpha0().negate() => Ok(c),
            _ if ad.is_zero() => Ok(Rational::zero()),
            _ => Err(Error::Inconsistent("Ad_w(Y) is not on the root -alpha_0".into())),
        }
    }

    /// Certificate at `x = (length-one w, Z != 0)` for a longer `v`.
    pub fn long_coset_certificate(&self, x: &SchubertCoord) -> Result<LongCosetCertificate> {
        let lie = self.cd.lie();
        if self.v.length <= 1 {
            return Err(Error::Precondition("v must have length greater than one".into()));
        }
        if x.w != length_one_element(lie) || x.is_zero() {
            return Err(Error::Precondition("x must be a nonzero point of the length-one cell".into()));
        }
        let z = x.z(lie);
        let ad_inv = &(&self.v_matrix.inverse()? * &z) * &self.v_matrix;
        let ad_inverse_in_l_minus = !ad_inv.is_zero() && lie.coordinates(&ad_inv, &lie.graded_roots(-1)).is_some();

        let wm = x.w.w.matrix(lie.spec())?;
        let wm_inv = wm.inverse()?;
        let ez = z.exp_nilpotent()?;
        let ez_inv = (-&z).exp_nilpotent()?;
        let e_neg = lie.root_vector(lie.alpha0().negate())?;
        let e_pos = lie.root_vector(lie.alpha0())?;
        let (p0, p1) = (distinguished_row(e_pos), distinguished_row(e_neg));
        let mut diagonal_obstruction = true;
        for b in lie.graded_basis(1) {
            let xm = &(&ez * &(&(&wm * &b) * &wm_inv)) * &ez_inv;
            if !(&xm * &xm).is_zero() {
                diagonal_obstruction = false;
                break;
            }
            let off = (0..lie.dim()).filter(|&i| i != p0 && i != p1).all(|i| xm[(i, i)].is_zero());
            if !off || !(&xm[(p0, p0)] + &xm[(p1, p1)]).is_zero() {
                diagonal_obstruction = false;
                break;
            }
        }
        Ok(LongCosetCertificate {
            ad_inverse_in_l_minus,
            diagonal_obstruction,
            preserving_infeasible: self.decide_preserving(x)?.is_none(),
            swapping_infeasible: self.decide_swapping(x)?.is_none(),
        })
    }

    pub fn no_symmetry_long_coset(&self, x: &SchubertCoord) -> Result<bool> {
        Ok(self.long_coset_certificate(x)?.holds())
    }

    /// Exact classification of one point. With `v` of length one the
    /// constructive witnesses are preferred and checked against the exact decision.
    pub fn classify(&self, x: &SchubertCoord) -> Result<PointClassification> {
        let exact_p = self.decide_preserving(x)?;
        let exact_s = self.decide_swapping(x)?;
        let (preserving, swapping) = if self.v.length == 1 {
            let p = self.exists_preserving(x)?;
            let s = self.exists_swapping(x)?;
            if p.is_some() != exact_p.is_some() || s.is_some() != exact_s.is_some() {
                return Err(Error::Inconsistent(format!(
                    "constructive and exact engines disagree at {}",
                    serde_json::to_string(x).unwrap_or_default()
                )));
            }
            (p, s)
        } else {
            (exact_p, exact_s)
        };
        Ok(PointClassification { base: x.clone(), preserving, swapping })
    }
}

/// Row of the single nonzero entry of a root vector whose support is one entry.
fn distinguished_row(e: &Matrix) -> usize {
    (0..e.rows())
        .find(|&r| (0..e.cols()).any(|c| !e[(r, c)].is_zero()))
        .expect("nonzero root vector")
}
