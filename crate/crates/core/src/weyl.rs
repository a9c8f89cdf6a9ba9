//! Weyl groups of `l` and `l_0` as (signed) permutations, minimal coset
//! representatives and double cosets.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational};
use crate::rootdata::{GradedLie, LQSpec, Root, Series};

/// A signed permutation `e_j -> signs[j] * e_{perm[j]}`. For series A every sign is `+1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct WeylElt {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElt {
    pub fn identity(m: usize) -> Self {
        WeylElt { perm: (0..m).collect(), signs: vec![1; m] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = perm.len();
        if signs.len() != m || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidParameters("bad sign vector".into()));
        }
        let seen: BTreeSet<usize> = perm.iter().copied().collect();
        if seen.len() != m || perm.iter().any(|&p| p >= m) {
            return Err(Error::InvalidParameters(format!("{perm:?} is not a permutation")));
        }
        Ok(WeylElt { perm, signs })
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        Self::new(perm, vec![1; m])
    }

    /// One-line notation, 1-based, negative entries for sign changes.
    pub fn from_one_line(line: &[i64]) -> Result<Self> {
        let mut perm = Vec::with_capacity(line.len());
        let mut signs = Vec::with_capacity(line.len());
        for &x in line {
            if x == 0 {
                return Err(Error::Parse("one-line entries are nonzero".into()));
            }
            perm.push(x.unsigned_abs() as usize - 1);
            signs.push(if x > 0 { 1 } else { -1 });
        }
        Self::new(perm, signs)
    }

    pub fn one_line(&self) -> Vec<i64> {
        self.perm.iter().zip(&self.signs).map(|(&p, &s)| s as i64 * (p as i64 + 1)).collect()
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_unsigned(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn is_identity(&self) -> bool {
        self.is_unsigned() && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&j, &s)| s * self.signs[j]).collect();
        WeylElt { perm, signs }
    }

    pub fn inverse(&self) -> WeylElt {
        let m = self.rank();
        let mut perm = vec![0; m];
        let mut signs = vec![1; m];
        for j in 0..m {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        WeylElt { perm, signs }
    }

    /// Image of a root under the reflection action.
    pub fn apply_root(&self, r: Root) -> Root {
        let terms: Vec<(i8, usize)> = match r {
            Root::Diff(i, j) => vec![(1, i), (-1, j)],
            Root::Sum(i, j, s) => vec![(s, i), (s, j)],
            Root::Long(i, s) => vec![(2 * s, i)],
        };
        let mapped: Vec<(i8, usize)> =
            terms.into_iter().map(|(c, i)| (c * self.signs[i], self.perm[i])).collect();
        match mapped.as_slice() {
            [(c, i)] => Root::Long(*i, c.signum()),
            [(a, i), (b, j)] if a == b => Root::Sum(*i.min(j), *i.max(j), *a),
            [(a, i), (_, j)] => {
                if *a > 0 { Root::Diff(*i, *j) } else { Root::Diff(*j, *i) }
            }
            _ => unreachable!(),
        }
    }

    /// Matrix realization. Series A: `P e_j = e_{perm[j]}`. Series C: a `+` sign
    /// sends `e_j -> e_{perm[j]}, f_j -> f_{perm[j]}`, a `-` sign sends
    /// `e_j -> f_{perm[j]}, f_j -> -e_{perm[j]}`; the result is symplectic.
    pub fn matrix(&self, spec: &LQSpec) -> Result<Matrix> {
        let m = spec.m();
        if self.rank() != m {
            return Err(Error::DimensionMismatch(format!("Weyl element of rank {} for {spec}", self.rank())));
        }
        match spec.series {
            Series::A => {
                if !self.is_unsigned() {
                    return Err(Error::InvalidParameters("series A has no sign changes".into()));
                }
                let mut p = Matrix::zeros(m, m);
                for j in 0..m {
                    p[(self.perm[j], j)] = Rational::one();
                }
                Ok(p)
            }
            Series::C => {
                let mut p = Matrix::zeros(2 * m, 2 * m);
                for j in 0..m {
                    let t = self.perm[j];
                    if self.signs[j] > 0 {
                        p[(t, j)] = Rational::one();
                        p[(m + t, m + j)] = Rational::one();
                    } else {
                        p[(m + t, j)] = Rational::one();
                        p[(t, m + j)] = -Rational::one();
                    }
                }
                Ok(p)
            }
        }
    }

    /// Positive roots sent negative by the inverse.
    pub fn inversion_set(&self, g: &GradedLie) -> Vec<Root> {
        let inv = self.inverse();
        g.roots().filter(|r| r.is_positive() && !inv.apply_root(*r).is_positive()).collect()
    }

    pub fn length(&self, g: &GradedLie) -> usize {
        self.inversion_set(g).len()
    }

    /// Label of the left coset `w W(l_0)`: the coordinate point `w·Q`.
    pub fn coset_key(&self, spec: &LQSpec) -> Vec<i64> {
        match spec.series {
            Series::A => {
                let mut v: Vec<i64> = (0..spec.k()).map(|j| self.perm[j] as i64).collect();
                v.sort_unstable();
                v
            }
            Series::C => {
                let mut v = vec![0; spec.m()];
                for j in 0..spec.m() {
                    v[self.perm[j]] = self.signs[j] as i64;
                }
                v
            }
        }
    }
}

impl Serialize for WeylElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        WeylElt::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// A minimal representative of a coset of `W(l_0)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HasseElt {
    pub w: WeylElt,
    pub length: usize,
    #[serde(serialize_with = "serialize_roots")]
    pub inversion_set: Vec<Root>,
}

fn serialize_roots<S: Serializer>(roots: &[Root], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(roots.iter().map(Root::label))
}

impl HasseElt {
    pub fn of(g: &GradedLie, w: WeylElt) -> Self {
        let inversion_set = w.inversion_set(g);
        HasseElt { length: inversion_set.len(), w, inversion_set }
    }
}

/// All elements of `W(l)`.
pub fn weyl_group(spec: &LQSpec) -> Vec<WeylElt> {
    let m = spec.m();
    let perms = (0..m).permutations(m);
    match spec.series {
        Series::A => perms.map(|p| WeylElt { signs: vec![1; m], perm: p }).collect(),
        Series::C => {
            let mut out = Vec::new();
            for p in perms {
                for mask in 0..(1u32 << m) {
                    let signs = (0..m).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                    out.push(WeylElt { perm: p.clone(), signs });
                }
            }
            out
        }
    }
}

/// All elements of `W(l_0)`.
pub fn levi_weyl_group(spec: &LQSpec) -> Vec<WeylElt> {
    let m = spec.m();
    match spec.series {
        Series::A => {
            let k = spec.k();
            let mut out = Vec::new();
            for a in (0..k).permutations(k) {
                for b in (k..m).permutations(m - k) {
                    let perm: Vec<usize> = a.iter().chain(&b).copied().collect();
                    out.push(WeylElt { perm, signs: vec![1; m] });
                }
            }
            out
        }
        Series::C => (0..m).permutations(m).map(|p| WeylElt { perm: p, signs: vec![1; m] }).collect(),
    }
}

fn sort_key(h: &HasseElt) -> (usize, Vec<i64>) {
    (h.length, h.w.one_line())
}

/// Minimal coset representatives of `W(l)/W(l_0)`, sorted by length then one-line notation.
pub fn hasse_diagram(g: &GradedLie) -> Vec<HasseElt> {
    let spec = g.spec();
    let mut best: BTreeMap<Vec<i64>, HasseElt> = BTreeMap::new();
    for w in weyl_group(spec) {
        let key = w.coset_key(spec);
        let h = HasseElt::of(g, w);
        match best.get(&key) {
            Some(old) if sort_key(old) <= sort_key(&h) => {}
            _ => {
                best.insert(key, h);
            }
        }
    }
    let mut out: Vec<HasseElt> = best.into_values().collect();
    out.sort_by_key(sort_key);
    out
}

/// The simple reflection at the crossed node.
pub fn length_one_element(g: &GradedLie) -> HasseElt {
    let spec = g.spec();
    let m = spec.m();
    let w = match spec.series {
        Series::A => {
            let k = spec.k();
            let mut perm: Vec<usize> = (0..m).collect();
            perm.swap(k - 1, k);
            WeylElt { perm, signs: vec![1; m] }
        }
        Series::C => {
            let mut signs = vec![1; m];
            signs[m - 1] = -1;
            WeylElt { perm: (0..m).collect(), signs }
        }
    };
    HasseElt::of(g, w)
}

/// Shortest representative of each class of `W(l_0)\W(l)/W(l_0)`.
pub fn double_coset_reps(g: &GradedLie) -> Vec<HasseElt> {
    let spec = g.spec();
    let hasse = hasse_diagram(g);
    let levi = levi_weyl_group(spec);
    let index: BTreeMap<Vec<i64>, usize> =
        hasse.iter().enumerate().map(|(i, h)| (h.w.coset_key(spec), i)).collect();
    let mut class = vec![usize::MAX; hasse.len()];
    let mut reps = Vec::new();
    // `hasse` is sorted, so the first unvisited element is the class minimum.
    for i in 0..hasse.len() {
        if class[i] != usize::MAX {
            continue;
        }
        for u in &levi {
            let j = index[&u.compose(&hasse[i].w).coset_key(spec)];
            class[j] = reps.len();
        }
        reps.push(hasse[i].clone());
    }
    reps
}

/// `W x W^{-1}` for the matrix realization of `w`.
pub fn ad_on_algebra(g: &GradedLie, w: &WeylElt, x: &Matrix) -> Result<Matrix> {
    if !g.contains(x) {
        return Err(Error::NotInAlgebra(format!("matrix is not in the Lie algebra of {}", g.spec())));
    }
    let p = w.matrix(g.spec())?;
    Ok(&(&p * x) * &p.inverse()?)
}

/// Scalar `c` with `Ad_w E_r = c E_{w r}`.
pub fn root_image_coefficient(g: &GradedLie, w: &WeylElt, r: Root) -> Result<Rational> {
    let img = ad_on_algebra(g, w, g.root_vector(r)?)?;
    let (root, c) = g
        .root_of(&img)
        .ok_or_else(|| Error::NotInAlgebra("image is not a root vector".into()))?;
    debug_assert_eq!(root, w.apply_root(r));
    if c.is_zero() {
        return Err(Error::Singular);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(spec: LQSpec) -> GradedLie {
        GradedLie::new(spec).unwrap()
    }

    #[test]
    fn hasse_sizes() {
        let g = lie(LQSpec::a(7, 4).unwrap());
        let h = hasse_diagram(&g);
        assert_eq!(h.iter().map(|x| x.length).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(hasse_diagram(&lie(LQSpec::a(9, 5).unwrap())).len(), 15);
        // Lagrangian cells: 2^m.
        assert_eq!(hasse_diagram(&lie(LQSpec::c(6).unwrap())).len(), 8);
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(6).unwrap()] {
            let h = hasse_diagram(&lie(spec));
            assert!(h[0].w.is_identity() && h[0].length == 0);
        }
    }

    #[test]
    fn hasse_elements_are_coset_minima() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            let levi = levi_weyl_group(&spec);
            for h in hasse_diagram(&g) {
                for u in &levi {
                    let wu = h.w.compose(u);
                    assert_eq!(wu.coset_key(&spec), h.w.coset_key(&spec));
                    assert!(wu.length(&g) >= h.length);
                }
                // Inverse images of the inversion set lie in l_{-1}.
                let inv = h.w.inverse();
                for r in &h.inversion_set {
                    assert_eq!(g.grading_component(inv.apply_root(*r)).unwrap(), -1);
                }
            }
        }
    }

    #[test]
    fn length_one() {
        let g = lie(LQSpec::a(7, 4).unwrap());
        let v = length_one_element(&g);
        assert_eq!(v.w.one_line(), vec![2, 1, 3, 4]);
        assert_eq!(v.length, 1);
        assert_eq!(v.inversion_set, vec![g.alpha0()]);
        let c = lie(LQSpec::c(5).unwrap());
        let v = length_one_element(&c);
        assert_eq!(v.w.one_line(), vec![1, -2]);
        assert_eq!(v.inversion_set, vec![c.alpha0()]);
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            let ones: Vec<_> = hasse_diagram(&g).into_iter().filter(|h| h.length == 1).collect();
            assert_eq!(ones, vec![length_one_element(&g)]);
        }
    }

    #[test]
    fn double_cosets() {
        let counts = |spec: LQSpec| double_coset_reps(&lie(spec)).iter().map(|h| h.length).collect::<Vec<_>>();
        assert_eq!(counts(LQSpec::a(7, 4).unwrap()), vec![0, 1]);
        assert_eq!(counts(LQSpec::a(9, 5).unwrap()), vec![0, 1, 4]);
        assert_eq!(counts(LQSpec::a(11, 6).unwrap()).len(), 4);
        assert_eq!(counts(LQSpec::c(6).unwrap()), vec![0, 1, 3, 6]);
    }

    #[test]
    fn one_line_json() {
        let w = WeylElt::from_one_line(&[2, -1]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,-1]");
        let back: WeylElt = serde_json::from_str("[2,-1]").unwrap();
        assert_eq!(back, w);
        assert!(WeylElt::from_one_line(&[1, 1]).is_err());
    }

    #[test]
    fn matrices_match_root_action() {
        for spec in [LQSpec::a(7, 4).unwrap(), LQSpec::c(6).unwrap()] {
            let g = lie(spec);
            for w in weyl_group(&spec).into_iter().step_by(7) {
                let p = w.matrix(&spec).unwrap();
                if spec.series == Series::C {
                    let j = g.omega().unwrap();
                    assert_eq!(&(&p.transpose() * j) * &p, j.clone());
                }
                for r in g.roots() {
                    let img = ad_on_algebra(&g, &w, g.root_vector(r).unwrap()).unwrap();
                    assert_eq!(g.root_of(&img).unwrap().0, w.apply_root(r));
                }
                assert_eq!(w.compose(&w.inverse()), WeylElt::identity(spec.m()));
            }
        }
    }

    #[test]
    fn length_one_sends_alpha0_to_minus() {
        for spec in [LQSpec::a(9, 5).unwrap(), LQSpec::c(5).unwrap()] {
            let g = lie(spec);
            let v = length_one_element(&g);
            let x = g.root_vector(g.alpha0()).unwrap();
            let img = ad_on_algebra(&g, &v.w, x).unwrap();
            assert_eq!(g.root_of(&img).unwrap().0, g.alpha0().negate());
        }
    }
}
