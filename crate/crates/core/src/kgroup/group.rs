//! `K = exp(n) ⋊ Ḡ` with the product `exp(C(X_1, Ad_{g_1} X_2)) g_1 g_2`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::rational::{frac, int, to_string};
use crate::exactla::{Matrix, Rational};
use crate::kgroup::nil::NilAlgebra;
use crate::rootdata::{GradedLie, LQSpec, Series};

/// `exp(x) * levi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KElement {
    pub x: Matrix,
    pub levi: Matrix,
}

#[derive(Clone, Debug)]
pub struct KGroup {
    pub nil: NilAlgebra,
}

impl KGroup {
    pub fn new(nil: NilAlgebra) -> Self {
        KGroup { nil }
    }

    fn size(&self) -> usize {
        self.nil.model.size
    }

    pub fn identity(&self) -> KElement {
        KElement { x: Matrix::zeros(self.size(), self.size()), levi: Matrix::identity(self.size()) }
    }

    pub fn matrix(&self, k: &KElement) -> Result<Matrix> {
        Ok(&k.x.exp_nilpotent()? * &k.levi)
    }

    /// Levi element constraints: pattern, normalization, and `Ad` preserving the deformed bracket.
    pub fn levi_in_k(&self, g: &Matrix) -> Result<bool> {
        let model = &self.nil.model;
        if !model.is_levi(g)? || g.determinant()?.is_zero() {
            return Ok(false);
        }
        if model.multiplier(g).is_none() || !model.normalization_holds(g)? {
            return Ok(false);
        }
        Ok(model.curvature_factor(g)? == Rational::one())
    }

    pub fn ad(&self, g: &Matrix, x: &Matrix) -> Result<Matrix> {
        let y = &(g * x) * &g.inverse()?;
        if !self.nil.contains(&y) {
            return Err(Error::Inconsistent("Ad of the Levi factor leaves n".into()));
        }
        Ok(y)
    }

    /// Factor a matrix as `exp(X) g` with `X` in `n` and `g` in the Levi factor.
    pub fn levi_decompose(&self, m: &Matrix) -> Result<KElement> {
        let model = &self.nil.model;
        if !model.has_k_pattern(m)? {
            return Err(Error::NotInGroup("matrix violates the zero pattern of K".into()));
        }
        let levi = model.levi_part(m);
        let u = m * &levi.inverse().map_err(|_| Error::NotInGroup("singular Levi part".into()))?;
        let x = u.log_unipotent()?;
        if !self.nil.contains(&x) {
            return Err(Error::NotInGroup("unipotent part is not in exp(n)".into()));
        }
        let k = KElement { x, levi };
        if &self.matrix(&k)? != m {
            return Err(Error::Inconsistent("Levi decomposition does not recompose".into()));
        }
        Ok(k)
    }

    /// Membership of an ambient matrix: pattern, Levi constraints, and for C the
    /// symplectic structure (which fixes the `*` entries; recomposition compares them).
    pub fn in_k(&self, m: &Matrix) -> Result<bool> {
        let model = &self.nil.model;
        if m.rows() != model.size || m.cols() != model.size {
            return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix", model.size)));
        }
        if !model.has_k_pattern(m)? {
            return Ok(false);
        }
        if model.spec.series == Series::C && model.multiplier(m).is_none() {
            return Ok(false);
        }
        let Ok(k) = self.levi_decompose(m) else {
            return Ok(false);
        };
        self.levi_in_k(&k.levi)
    }

    pub fn product(&self, a: &KElement, b: &KElement) -> Result<KElement> {
        let moved = self.ad(&a.levi, &b.x)?;
        Ok(KElement { x: self.nil.bch(&a.x, &moved), levi: &a.levi * &b.levi })
    }

    pub fn inverse(&self, a: &KElement) -> Result<KElement> {
        let gi = a.levi.inverse()?;
        Ok(KElement { x: -&self.ad(&gi, &a.x)?, levi: gi })
    }

    pub fn random_nil<R: Rng>(&self, rng: &mut R) -> Matrix {
        let s = self.size();
        let mut x = Matrix::zeros(s, s);
        for (_, b) in self.nil.basis() {
            let c = frac(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            if !c.is_zero() {
                x = &x + &b.scale(&c);
            }
        }
        x
    }

    /// A random Levi element satisfying every constraint, optionally only inside `Q' x Q`.
    pub fn random_levi<R: Rng>(&self, rng: &mut R, parabolic: bool) -> Result<Matrix> {
        let model = &self.nil.model;
        let spec = model.spec;
        let r3 = [int(1), int(-1), int(2), frac(1, 2), int(-2)][rng.gen_range(0..5)].clone();
        let mut lp = random_invertible(rng, 2, parabolic.then_some(1))?;
        let l = random_l(rng, &spec, parabolic)?;
        match spec.series {
            Series::A => {
                // det(L') R_3^{-3} R_{n+1} = 1, then det(L) fixes the overall determinant to 1.
                let r_last = &(&r3 * &r3 * &r3) / lp.determinant()?;
                let mut l = l;
                let target = Rational::one() / (lp.determinant()? * &r3 * &r_last);
                let dl = l.determinant()?;
                let f = target / dl;
                for c in 0..l.cols() {
                    l[(0, c)] = &l[(0, c)] * &f;
                }
                model.embed_levi(&lp, &r3, &l, Some(&r_last))
            }
            Series::C => {
                // Symplectic: det(L') = R_3^4.
                let target = &r3 * &r3 * &r3 * &r3;
                let f = target / lp.determinant()?;
                for c in 0..2 {
                    lp[(0, c)] = &lp[(0, c)] * &f;
                }
                model.embed_levi(&lp, &r3, &l, None)
            }
        }
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Result<KElement> {
        Ok(KElement { x: self.random_nil(rng), levi: self.random_levi(rng, false)? })
    }
}

/// Random invertible integer matrix; `lower_zero = Some(k)` forces the block below row/column `k` to vanish.
fn random_invertible<R: Rng>(rng: &mut R, size: usize, lower_zero: Option<usize>) -> Result<Matrix> {
    loop {
        let m = Matrix::from_fn(size, size, |r, c| match lower_zero {
            Some(k) if r >= k && c < k => Rational::zero(),
            _ => int(rng.gen_range(-2..=2)),
        });
        if !m.determinant()?.is_zero() {
            return Ok(m);
        }
    }
}

/// Random element of `L` (or of `Q`), built from root-group factors and a torus element.
fn random_l<R: Rng>(rng: &mut R, spec: &LQSpec, parabolic: bool) -> Result<Matrix> {
    let g = GradedLie::new(*spec)?;
    let d = g.dim();
    let mut out = Matrix::identity(d);
    for _ in 0..6 {
        let roots: Vec<_> = g
            .roots()
            .filter(|r| !parabolic || g.grading_component(*r).map(|c| c >= 0).unwrap_or(false))
            .collect();
        let r = roots[rng.gen_range(0..roots.len())];
        let t = int(rng.gen_range(-2..=2));
        out = &out * &(&Matrix::identity(d) + &g.root_vector(r)?.scale(&t));
    }
    let m = spec.m();
    let torus: Vec<Rational> = (0..m).map(|_| [int(1), int(-1), int(2), frac(1, 2)][rng.gen_range(0..4)].clone()).collect();
    let diag = match spec.series {
        Series::A => Matrix::diag(&torus),
        Series::C => {
            let mut all = torus.clone();
            all.extend(torus.iter().map(|t| Rational::one() / t));
            Matrix::diag(&all)
        }
    };
    Ok(&out * &diag)
}

impl KElement {
    /// Named slots of the ambient matrix (1-based positions), zero slots omitted.
    pub fn slots(&self, group: &KGroup) -> Result<Vec<(String, Rational)>> {
        let m = group.matrix(self)?;
        let model = &group.nil.model;
        let w = &model.weights;
        let mut out = vec![("R3".to_string(), m[(2, 2)].clone())];
        if model.spec.series == Series::A {
            out.push((format!("R{}", model.n() + 1), m[(model.n(), model.n())].clone()));
        }
        for r in 0..model.size {
            for c in 0..model.size {
                if w[r] > w[c] && !m[(r, c)].is_zero() {
                    let tag = if model.is_z_slot(r, c) { "Z" } else { "N" };
                    out.push((format!("{tag}{},{}", r + 1, c + 1), m[(r, c)].clone()));
                }
            }
        }
        Ok(out)
    }
}

/// JSON form: the ambient matrix plus the slot map.
pub struct KElementJson<'a>(pub &'a KGroup, pub &'a KElement);

impl Serialize for KElementJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.0.matrix(self.1).map_err(serde::ser::Error::custom)?;
        let slots = self.1.slots(self.0).map_err(serde::ser::Error::custom)?;
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("matrix", &m)?;
        let slot_map: std::collections::BTreeMap<String, String> =
            slots.into_iter().map(|(k, v)| (k, to_string(&v))).collect();
        map.serialize_entry("slots", &slot_map)?;
        map.end()
    }
}
