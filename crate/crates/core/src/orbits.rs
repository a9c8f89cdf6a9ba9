//! Orbits of the automorphism group of the geometry with two points removed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::rational::{frac, int};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::flagvariety::{basepoint, theorem_condition, FlagPoint};
use crate::kgroup::NilAlgebra;
use crate::rootdata::{GradedLie, Root, Series};
use crate::weyl::length_one_element;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitInvariant {
    pub d_both: usize,
    pub d_sum: usize,
    pub d_union: usize,
}

impl OrbitInvariant {
    pub fn as_array(&self) -> [usize; 3] {
        [self.d_both, self.d_sum, self.d_union]
    }
}

/// JSON form `[d_both, d_sum, d_union]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Triple(pub OrbitInvariant);

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_array().serialize(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AutComponent {
    Identity,
    Swapping,
}

/// Dimension of `W ∩ (W1 ∪ W2)` as an algebraic set: the larger of the two linear pieces.
pub fn union_dimension(w: &Subspace, w1: &Subspace, w2: &Subspace) -> Result<usize> {
    Ok(w.intersect(w1)?.dim().max(w.intersect(w2)?.dim()))
}

pub fn invariant_triple(w3: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<OrbitInvariant> {
    if !theorem_condition(w1, w2)? {
        return Err(Error::Precondition("the removed points are not in the length-one position".into()));
    }
    if w3 == w1 || w3 == w2 {
        return Err(Error::Precondition("the point coincides with a removed point".into()));
    }
    let (a, b1, b2) = (w3.subspace(), w1.subspace(), w2.subspace());
    Ok(OrbitInvariant {
        d_both: a.intersect(&b1.intersect(b2)?)?.dim(),
        d_sum: a.intersect(&b1.sum(b2)?)?.dim(),
        d_union: union_dimension(a, b1, b2)?,
    })
}

/// The flat model with the basepoint and its image under the length-one element removed.
pub struct Punctured<'a> {
    pub lie: &'a GradedLie,
    pub w1: FlagPoint,
    pub w2: FlagPoint,
    pub v: Matrix,
    /// The two basis indices exchanged by `v`.
    pub pair: (usize, usize),
    stabilizing_roots: Vec<Root>,
}

impl<'a> Punctured<'a> {
    pub fn new(lie: &'a GradedLie) -> Result<Self> {
        let w1 = basepoint(lie);
        let v = length_one_element(lie).w.matrix(lie.spec())?;
        let w2 = w1.act(lie, &v)?;
        let moved: Vec<usize> = (0..v.cols()).filter(|&c| v.column(c) != crate::exactla::subspace::unit_vector(v.rows(), c)).collect();
        let pair = (moved[0], moved[1]);
        let mut stabilizing_roots = Vec::new();
        for r in lie.roots() {
            let e = lie.root_vector(r)?;
            let fixes = |w: &FlagPoint| w.subspace().basis_vectors().iter().all(|b| w.subspace().contains(&e.mul_vec(b)));
            if fixes(&w1) && fixes(&w2) {
                stabilizing_roots.push(r);
            }
        }
        Ok(Punctured { lie, w1, w2, v, pair, stabilizing_roots })
    }

    pub fn triple(&self, w3: &FlagPoint) -> Result<OrbitInvariant> {
        invariant_triple(w3, &self.w1, &self.w2)
    }

    /// Identity if `g` fixes both removed points, swapping if it exchanges them.
    pub fn component_membership(&self, g: &Matrix) -> Result<Option<AutComponent>> {
        self.lie.check_group(g)?;
        let a = self.w1.act(self.lie, g)?;
        let b = self.w2.act(self.lie, g)?;
        let (i, j) = self.pair;
        let label = if a == self.w1 && b == self.w2 {
            AutComponent::Identity
        } else if a == self.w2 && b == self.w1 {
            AutComponent::Swapping
        } else {
            return Ok(None);
        };
        // Entry pattern on the exchanged pair: off-diagonal zero, respectively diagonal zero.
        let pattern = match label {
            AutComponent::Identity => g[(i, j)] == int(0) && g[(j, i)] == int(0),
            AutComponent::Swapping => g[(i, i)] == int(0) && g[(j, j)] == int(0),
        };
        if !pattern {
            return Err(Error::Inconsistent("component element violates the entry pattern".into()));
        }
        Ok(Some(label))
    }

    /// Random element of the identity component: root-group factors fixing both points and a torus element.
    pub fn random_identity_element<R: Rng>(&self, rng: &mut R) -> Result<Matrix> {
        let d = self.lie.spec().ambient();
        let mut out = Matrix::identity(d);
        for _ in 0..6 {
            let r = self.stabilizing_roots[rng.gen_range(0..self.stabilizing_roots.len())];
            let t = frac(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            out = &out * &(&Matrix::identity(d) + &self.lie.root_vector(r)?.scale(&t));
        }
        let choices = [int(1), int(-1), int(2), frac(1, 3), int(-3)];
        let m = self.lie.spec().m();
        let t: Vec<Rational> = (0..m).map(|_| choices[rng.gen_range(0..choices.len())].clone()).collect();
        let torus = match self.lie.spec().series {
            Series::A => Matrix::diag(&t),
            Series::C => {
                let lambda = [int(1), int(-1)][rng.gen_range(0..2)].clone();
                let mut all = t.clone();
                all.extend(t.iter().map(|x| &lambda / x));
                Matrix::diag(&all)
            }
        };
        Ok(&out * &torus)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, component: AutComponent) -> Result<Matrix> {
        let g = self.random_identity_element(rng)?;
        Ok(match component {
            AutComponent::Identity => g,
            AutComponent::Swapping => &self.v * &g,
        })
    }

    /// Seeded search for `g` in the given component with `g W3 = W4`.
    ///
    /// The conditions `g W1 ⊆ W1`, `g W2 ⊆ W2` (or exchanged) and `g W3 ⊆ W4` are linear in the
    /// entries of `g`; random points of that solution space are tried and verified exactly.
    pub fn find_transporter(&self, w3: &FlagPoint, w4: &FlagPoint, component: AutComponent, seed: u64, tries: usize) -> Result<Option<Matrix>> {
        let d = self.lie.spec().ambient();
        let (t1, t2) = match component {
            AutComponent::Identity => (&self.w1, &self.w2),
            AutComponent::Swapping => (&self.w2, &self.w1),
        };
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (src, dst) in [(&self.w1, t1), (&self.w2, t2), (w3, w4)] {
            let ann = dst.subspace().annihilator();
            for b in src.subspace().basis_vectors() {
                // (ann * g * b)_r = sum_{i,j} ann[r,i] g[i,j] b[j]
                for r in 0..ann.rows() {
                    let mut row = vec![int(0); d * d];
                    for i in 0..d {
                        for j in 0..d {
                            row[i * d + j] = &ann[(r, i)] * &b[j];
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let system = Matrix::from_fn(rows.len(), d * d, |i, j| rows[i][j].clone());
        let kernel = system.kernel();
        if kernel.is_empty() {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..tries {
            let mut flat = vec![int(0); d * d];
            for k in &kernel {
                let c = int(rng.gen_range(-9..=9));
                for (f, x) in flat.iter_mut().zip(k) {
                    *f += &c * x;
                }
            }
            let g = Matrix::from_fn(d, d, |i, j| flat[i * d + j].clone());
            if self.lie.check_group(&g).is_err() {
                continue;
            }
            if w3.act(self.lie, &g)? == *w4 && self.component_membership(&g)? == Some(component) {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// A point of the homogeneous model: a class of the nilpotent factor, a line in the plane and a flag point.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub nil: Matrix,
    pub line: Vec<Rational>,
    pub flag: FlagPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transporter {
    pub component: AutComponent,
    /// Acts on the flag factor.
    pub flag: Matrix,
    /// Acts on the line factor.
    pub line: Matrix,
    /// Left translation on the nilpotent factor.
    pub nil: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub triples: (Triple, Triple),
    pub same_orbit: bool,
    pub transporter: Option<Transporter>,
}

/// `g` with `g p` proportional to `q`.
pub fn line_transporter(p: &[Rational], q: &[Rational]) -> Result<Matrix> {
    let complete = |x: &[Rational]| -> Result<Matrix> {
        if x.len() != 2 || x.iter().all(|c| *c == int(0)) {
            return Err(Error::Precondition("a line needs a nonzero vector in the plane".into()));
        }
        let other = if x[0] == int(0) { [int(1), int(0)] } else { [int(0), int(1)] };
        Ok(Matrix::from_fn(2, 2, |r, c| if c == 0 { x[r].clone() } else { other[r].clone() }))
    };
    let (bp, bq) = (complete(p)?, complete(q)?);
    let g = &bq * &bp.inverse()?;
    let image = g.mul_vec(p);
    if Subspace::span(2, &[image]) != Subspace::span(2, &[q.to_vec()]) {
        return Err(Error::Inconsistent("line transporter failed".into()));
    }
    Ok(g)
}

/// `D` with `C(D, X) = Y` in the deformed nilpotent group.
pub fn nil_transporter(nil: &NilAlgebra, x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if !nil.contains(x) || !nil.contains(y) {
        return Err(Error::NotInAlgebra("nil label outside n".into()));
    }
    let d = nil.bch(y, &-x);
    if nil.bch(&d, x) != *y {
        return Err(Error::Inconsistent("nil transporter failed".into()));
    }
    Ok(d)
}

/// Compares two points: same orbit exactly when the triples agree; a transporter is searched for
/// in both components and is absent when the search fails.
pub fn same_orbit(pm: &Punctured, nil: &NilAlgebra, p: &OrbitPoint, q: &OrbitPoint, seed: u64) -> Result<Comparison> {
    let (tp, tq) = (pm.triple(&p.flag)?, pm.triple(&q.flag)?);
    let line = line_transporter(&p.line, &q.line)?;
    let nil_part = nil_transporter(nil, &p.nil, &q.nil)?;
    let same = tp == tq;
    let mut transporter = None;
    if same {
        for component in [AutComponent::Identity, AutComponent::Swapping] {
            if let Some(g) = pm.find_transporter(&p.flag, &q.flag, component, seed, 20)? {
                transporter = Some(Transporter { component, flag: g, line: line.clone(), nil: nil_part.clone() });
                break;
            }
        }
    }
    Ok(Comparison { triples: (Triple(tp), Triple(tq)), same_orbit: same, transporter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgroup::KModel;
    use crate::rootdata::LQSpec;

    fn pt(lie: &GradedLie, vs: &[Vec<i64>]) -> FlagPoint {
        let d = lie.spec().ambient();
        let vs: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        let s = Subspace::span(d, &vs);
        FlagPoint::new(lie, s).unwrap()
    }

    #[test]
    fn triple_examples() {
        // A(9,5): k = 2 in dimension 6, W1 = <e1,e2>, W2 = <e1,e3>.
        let lie = GradedLie::new(LQSpec::a(9, 5).unwrap()).unwrap();
        let pm = Punctured::new(&lie).unwrap();
        assert_eq!(pm.w2, pt(&lie, &[vec![1, 0, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]]));
        let transverse = pt(&lie, &[vec![0, 0, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0]]);
        assert_eq!(pm.triple(&transverse).unwrap().as_array(), [0, 0, 0]);
        // Inside W1+W2, meeting W1 in the line of e2 and missing W1 ∩ W2.
        let inside = pt(&lie, &[vec![0, 1, 0, 0, 0, 0], vec![1, 0, 1, 0, 0, 0]]);
        assert_eq!(pm.triple(&inside).unwrap().as_array(), [0, 2, 1]);
        assert!(pm.triple(&pm.w1).is_err());
        let far = pt(&lie, &[vec![0, 0, 0, 1, 0, 0], vec![0, 0, 0, 0, 0, 1]]);
        assert!(invariant_triple(&transverse, &pm.w1, &far).is_err());
    }

    #[test]
    fn component_examples() {
        let lie = GradedLie::new(LQSpec::a(7, 4).unwrap()).unwrap();
        let pm = Punctured::new(&lie).unwrap();
        assert_eq!(pm.component_membership(&Matrix::identity(4)).unwrap(), Some(AutComponent::Identity));
        assert_eq!(pm.component_membership(&pm.v).unwrap(), Some(AutComponent::Swapping));
        // e1 -> e3 moves W1 off both removed points.
        let g = Matrix::from_ints(&[vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1]]);
        assert_eq!(pm.component_membership(&g).unwrap(), None);
        let c = GradedLie::new(LQSpec::c(5).unwrap()).unwrap();
        let pc = Punctured::new(&c).unwrap();
        assert_eq!(pc.component_membership(&pc.v).unwrap(), Some(AutComponent::Swapping));
    }

    #[test]
    fn components_multiply_like_z2() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(5).unwrap()] {
            let lie = GradedLie::new(spec).unwrap();
            let pm = Punctured::new(&lie).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let comps = [AutComponent::Identity, AutComponent::Swapping];
            for i in 0..20 {
                let (ca, cb) = (comps[i % 2], comps[(i / 2) % 2]);
                let a = pm.random_element(&mut rng, ca).unwrap();
                let b = pm.random_element(&mut rng, cb).unwrap();
                assert_eq!(pm.component_membership(&a).unwrap(), Some(ca));
                let expected = if ca == cb { AutComponent::Identity } else { AutComponent::Swapping };
                assert_eq!(pm.component_membership(&(&a * &b)).unwrap(), Some(expected));
            }
        }
    }

    #[test]
    fn transporters() {
        let spec = LQSpec::a(7, 4).unwrap();
        let lie = GradedLie::new(spec).unwrap();
        let pm = Punctured::new(&lie).unwrap();
        let nil = NilAlgebra::new(KModel::new(spec).unwrap()).unwrap();
        let mk = |v: Vec<i64>, line: [i64; 2], x: &Matrix| OrbitPoint {
            nil: x.clone(),
            line: line.iter().map(|&c| int(c)).collect(),
            flag: pt(&lie, &[v]),
        };
        let zero = Matrix::zeros(8, 8);
        let x = nil.basis()[0].1.clone();
        let a = mk(vec![1, 1, 0, 0], [1, 0], &zero);
        let b = mk(vec![2, -3, 0, 0], [1, 1], &x);
        let c = mk(vec![0, 1, 1, 0], [0, 1], &zero);
        let r = same_orbit(&pm, &nil, &a, &b, 0).unwrap();
        assert!(r.same_orbit);
        let t = r.transporter.unwrap();
        assert_eq!(a.flag.act(&lie, &t.flag).unwrap(), b.flag);
        let r = same_orbit(&pm, &nil, &a, &c, 0).unwrap();
        assert!(!r.same_orbit && r.transporter.is_none());
        let r = same_orbit(&pm, &nil, &a, &a, 0).unwrap();
        assert!(r.same_orbit && r.transporter.is_some());
    }
}
