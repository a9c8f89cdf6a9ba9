//! Schubert cells of `L/Q`: every point is `exp(Z) w Q` for a unique minimal
//! coset representative `w` and `Z` in the span of the inversion set of `w`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::rational::{frac, int, to_string};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::rootdata::{GradedLie, Root, Series};
use crate::weyl::{hasse_diagram, HasseElt, WeylElt};

/// A point `exp(Z) w Q`, with `Z` stored by its coefficients over the cell roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchubertCoord {
    pub w: HasseElt,
    pub coeffs: Vec<Rational>,
}

impl SchubertCoord {
    pub fn origin(w: HasseElt) -> Self {
        let coeffs = vec![Rational::zero(); w.length];
        SchubertCoord { w, coeffs }
    }

    pub fn from_coeffs(w: HasseElt, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != w.length {
            return Err(Error::DimensionMismatch(format!(
                "cell of dimension {} got {} coefficients",
                w.length,
                coeffs.len()
            )));
        }
        Ok(SchubertCoord { w, coeffs })
    }

    /// Accepts `Z` as a matrix, checking that it lies in the cell space.
    pub fn from_matrix(g: &GradedLie, w: HasseElt, z: &Matrix) -> Result<Self> {
        let coeffs = g
            .coordinates(z, &w.inversion_set)
            .ok_or_else(|| Error::NotInAlgebra("Z is outside the cell space".into()))?;
        Ok(SchubertCoord { w, coeffs })
    }

    pub fn z(&self, g: &GradedLie) -> Matrix {
        g.combine(&self.w.inversion_set, &self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `Z` on the crossed simple root (zero when that root is not in the cell).
    pub fn alpha0_coefficient(&self, g: &GradedLie) -> Rational {
        let a0 = g.alpha0();
        self.w
            .inversion_set
            .iter()
            .position(|r| *r == a0)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(Rational::zero)
    }
}

impl Serialize for SchubertCoord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Z<'a>(&'a [Root], &'a [Rational]);
        impl Serialize for Z<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (r, c) in self.0.iter().zip(self.1) {
                    map.serialize_entry(&r.label(), &to_string(c))?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("w", &self.w.w)?;
        map.serialize_entry("Z", &Z(&self.w.inversion_set, &self.coeffs))?;
        map.end()
    }
}

/// Finite sampling of a cell: an integer grid in odometer order plus seeded random rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingScheme {
    pub grid_radius: i64,
    pub cap: usize,
    pub random: usize,
    pub seed: u64,
}

impl Default for SamplingScheme {
    fn default() -> Self {
        SamplingScheme { grid_radius: 2, cap: 200, random: 20, seed: 0 }
    }
}

/// The Hasse diagram of one graded algebra together with the cell machinery.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    lie: GradedLie,
    cells: Vec<HasseElt>,
}

impl CellDecomposition {
    pub fn new(lie: GradedLie) -> Self {
        let cells = hasse_diagram(&lie);
        CellDecomposition { lie, cells }
    }

    pub fn lie(&self) -> &GradedLie {
        &self.lie
    }

    pub fn cells(&self) -> &[HasseElt] {
        &self.cells
    }

    pub fn cell_of(&self, w: &WeylElt) -> Result<&HasseElt> {
        self.cells
            .iter()
            .find(|h| &h.w == w)
            .ok_or_else(|| Error::InvalidParameters(format!("{:?} is not a minimal coset representative", w.one_line())))
    }

    /// Positive roots `beta` with `Ad_{w^{-1}} E_beta` in `l_{-1}`.
    pub fn cell_space(&self, w: &HasseElt) -> Vec<Root> {
        w.inversion_set.clone()
    }

    /// `exp(Z) * (matrix of w)`.
    pub fn point_of(&self, c: &SchubertCoord) -> Result<Matrix> {
        let spec = self.lie.spec();
        let e = c.z(&self.lie).exp_nilpotent()?;
        Ok(&e * &c.w.w.matrix(spec)?)
    }

    /// The point of `L/Q` as a subspace.
    pub fn subspace_of(&self, c: &SchubertCoord) -> Result<Subspace> {
        let p = self.point_of(c)?;
        Ok(Subspace::column_span(&p.submatrix(&(0..p.rows()).collect::<Vec<_>>(), &self.lie.spec().base_indices())))
    }

    /// Coordinates ordered so that the positive part of `l` is strictly upper triangular.
    pub fn borel_order(&self) -> Vec<usize> {
        let spec = self.lie.spec();
        let m = spec.m();
        match spec.series {
            Series::A => (0..m).collect(),
            Series::C => (0..m).chain((0..m).rev().map(|j| m + j)).collect(),
        }
    }

    /// The unique cell coordinate of `g Q`.
    pub fn decompose(&self, g: &Matrix) -> Result<SchubertCoord> {
        self.lie.check_group(g)?;
        let spec = self.lie.spec();
        let d = spec.ambient();
        let base = spec.base_indices();
        let cols = g.submatrix(&(0..d).collect::<Vec<_>>(), &base);
        self.decompose_subspace(&Subspace::column_span(&cols))
    }

    /// Cell coordinate of a point of `L/Q` given as a subspace.
    pub fn decompose_subspace(&self, w_space: &Subspace) -> Result<SchubertCoord> {
        let spec = self.lie.spec();
        let d = spec.ambient();
        if w_space.ambient() != d || w_space.dim() != spec.k() {
            return Err(Error::DimensionMismatch(format!("expected a {}-plane in dimension {d}", spec.k())));
        }
        // Echelon form with the lowest entries (in Borel order) as pivots.
        let order = self.borel_order();
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        let vecs = w_space.basis_vectors();
        let permuted = Matrix::from_fn(vecs.len(), d, |r, c| vecs[r][rev[c]].clone());
        let (rref, pivots) = permuted.rref();
        let pivot_coords: Vec<usize> = pivots.iter().map(|&p| rev[p]).collect();
        let reduced: Vec<Vec<Rational>> = (0..pivots.len())
            .map(|r| {
                let mut v = vec![Rational::zero(); d];
                for c in 0..d {
                    v[rev[c]] = rref[(r, c)].clone();
                }
                v
            })
            .collect();

        let key = match spec.series {
            Series::A => {
                let mut s: Vec<i64> = pivot_coords.iter().map(|&p| p as i64).collect();
                s.sort_unstable();
                s
            }
            Series::C => {
                let m = spec.m();
                let mut v = vec![0i64; m];
                for &p in &pivot_coords {
                    let (t, sgn) = if p < m { (p, 1) } else { (p - m, -1) };
                    if v[t] != 0 {
                        return Err(Error::NotInGroup("subspace is not Lagrangian".into()));
                    }
                    v[t] = sgn;
                }
                v
            }
        };
        let cell = self
            .cells
            .iter()
            .find(|h| h.w.coset_key(spec) == key)
            .ok_or_else(|| Error::NotInGroup("pivot pattern matches no cell".into()))?;

        // Solve Z e_b = v_b - e_b for every pivot b.
        let roots = &cell.inversion_set;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (b, v) in pivot_coords.iter().zip(&reduced) {
            for p in 0..d {
                rows.push(
                    roots
                        .iter()
                        .map(|r| self.lie.root_vector(*r).expect("own root")[(p, *b)].clone())
                        .collect::<Vec<_>>(),
                );
                let e = if p == *b { Rational::one() } else { Rational::zero() };
                rhs.push(&v[p] - e);
            }
        }
        let coeffs = if roots.is_empty() {
            Vec::new()
        } else {
            let sys = Matrix::from_rows(rows)?;
            sys.solve(&rhs).ok_or_else(|| Error::Inconsistent("cell coordinates have no solution".into()))?
        };
        let coord = SchubertCoord::from_coeffs(cell.clone(), coeffs)?;
        if &self.subspace_of(&coord)? != w_space {
            return Err(Error::NotInGroup("subspace is not a point of L/Q".into()));
        }
        Ok(coord)
    }

    /// Deterministic sample of a cell; the first point is always `Z = 0`.
    pub fn sample_cell(&self, w: &HasseElt, scheme: &SamplingScheme) -> Vec<SchubertCoord> {
        let dim = w.length;
        if dim == 0 {
            return vec![SchubertCoord::origin(w.clone())];
        }
        let values: Vec<i64> = std::iter::once(0)
            .chain((1..=scheme.grid_radius).flat_map(|v| [v, -v]))
            .collect();
        let base = values.len();
        let total = (base as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        let count = (scheme.cap as u128).min(total) as usize;
        let mut grid: Vec<Vec<Rational>> = (0..count)
            .map(|mut idx| {
                (0..dim)
                    .map(|_| {
                        let v = values[idx % base];
                        idx /= base;
                        int(v)
                    })
                    .collect()
            })
            .collect();

        if let Some(a) = w.inversion_set.iter().position(|r| *r == self.lie.alpha0()) {
            let has_nonzero = grid.iter().any(|c| !c[a].is_zero());
            if !has_nonzero && grid.len() > 1 && scheme.grid_radius > 0 {
                let mut forced = vec![Rational::zero(); dim];
                forced[a] = Rational::one();
                *grid.last_mut().expect("nonempty") = forced;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(scheme.seed ^ cell_salt(&w.w));
        for _ in 0..scheme.random {
            grid.push((0..dim).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect());
        }

        let mut seen = BTreeSet::new();
        grid.into_iter()
            .filter(|c| seen.insert(c.clone()))
            .map(|c| SchubertCoord { w: w.clone(), coeffs: c })
            .collect()
    }

    /// Samples of every cell, keyed by position in the Hasse diagram.
    pub fn sample_all(&self, scheme: &SamplingScheme) -> BTreeMap<usize, Vec<SchubertCoord>> {
        self.cells.iter().enumerate().map(|(i, h)| (i, self.sample_cell(h, scheme))).collect()
    }
}

fn cell_salt(w: &WeylElt) -> u64 {
    // FNV-1a over the one-line notation.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in w.one_line() {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::LQSpec;
    use crate::weyl::length_one_element;

    fn cells(spec: LQSpec) -> CellDecomposition {
        CellDecomposition::new(GradedLie::new(spec).unwrap())
    }

    fn specs() -> Vec<LQSpec> {
        vec![LQSpec::a(7, 4).unwrap(), LQSpec::a(9, 5).unwrap(), LQSpec::c(5).unwrap(), LQSpec::c(6).unwrap()]
    }

    #[test]
    fn borel_order_makes_positive_part_upper_triangular() {
        for spec in specs() {
            let cd = cells(spec);
            let order = cd.borel_order();
            let pos: Vec<usize> = {
                let mut p = vec![0; order.len()];
                for (i, &c) in order.iter().enumerate() {
                    p[c] = i;
                }
                p
            };
            for x in cd.lie().b_plus_basis() {
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        if !x[(r, c)].is_zero() {
                            assert!(pos[r] < pos[c]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cell_dimension_is_length_and_top_cell_is_open() {
        for spec in specs() {
            let cd = cells(spec);
            let top = cd.cells().iter().map(|h| cd.cell_space(h).len()).max().unwrap();
            assert_eq!(top, cd.lie().graded_roots(-1).len());
            for h in cd.cells() {
                assert_eq!(cd.cell_space(h).len(), h.length);
            }
        }
    }

    #[test]
    fn length_one_point_shape() {
        let cd = cells(LQSpec::a(7, 4).unwrap());
        let v = length_one_element(cd.lie());
        let c = SchubertCoord::from_coeffs(v, vec![int(3)]).unwrap();
        let p = cd.point_of(&c).unwrap();
        // exp(t E_12) * (1 2): columns e_2 + t e_1 and e_1.
        assert_eq!(p, Matrix::from_ints(&[vec![3, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]));
    }

    #[test]
    fn identity_decomposes_to_origin() {
        for spec in specs() {
            let cd = cells(spec);
            let c = cd.decompose(&Matrix::identity(spec.ambient())).unwrap();
            assert!(c.w.w.is_identity() && c.coeffs.is_empty());
        }
    }

    #[test]
    fn round_trip_on_samples() {
        let scheme = SamplingScheme { cap: 30, random: 5, ..Default::default() };
        for spec in specs() {
            let cd = cells(spec);
            for h in cd.cells() {
                for c in cd.sample_cell(h, &scheme) {
                    let g = cd.point_of(&c).unwrap();
                    assert_eq!(cd.decompose(&g).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn decompose_ignores_right_q_action() {
        let spec = LQSpec::a(9, 5).unwrap();
        let cd = cells(spec);
        let q = Matrix::from_ints(&[
            vec![2, 1, 3, 0, 1, 0],
            vec![1, 1, 0, 2, 0, 1],
            vec![0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 2, 0],
            vec![0, 0, 1, 0, 1, 0],
            vec![0, 0, 0, 0, 3, 1],
        ]);
        assert!(cd.lie().in_parabolic(&q));
        let top = cd.cells().last().unwrap().clone();
        let c = cd.sample_cell(&top, &SamplingScheme { cap: 10, random: 3, ..Default::default() });
        for x in c {
            let g = cd.point_of(&x).unwrap();
            assert_eq!(cd.decompose(&(&g * &q)).unwrap(), x);
        }
    }

    #[test]
    fn decompose_rejects_non_members() {
        let cd = cells(LQSpec::c(5).unwrap());
        let mut g = Matrix::identity(4);
        g[(0, 1)] = int(1);
        assert!(matches!(cd.decompose(&g), Err(Error::NotInGroup(_))));
        let a = cells(LQSpec::a(7, 4).unwrap());
        assert!(a.decompose(&Matrix::zeros(4, 4)).is_err());
    }

    #[test]
    fn sampling_contract() {
        let cd = cells(LQSpec::a(7, 4).unwrap());
        let id = cd.cells()[0].clone();
        assert_eq!(cd.sample_cell(&id, &SamplingScheme::default()).len(), 1);
        let v = length_one_element(cd.lie());
        let s = cd.sample_cell(&v, &SamplingScheme { cap: 5, random: 0, ..Default::default() });
        assert_eq!(s.len(), 5);
        assert!(s[0].is_zero());
        let scheme = SamplingScheme::default();
        assert_eq!(cd.sample_cell(&v, &scheme), cd.sample_cell(&v, &scheme));
        let big = cells(LQSpec::c(6).unwrap());
        for h in big.cells() {
            let s = big.sample_cell(h, &SamplingScheme { cap: 4, random: 2, ..Default::default() });
            if h.inversion_set.contains(&big.lie().alpha0()) {
                assert!(s.iter().any(|c| c.alpha0_coefficient(big.lie()).is_zero()));
                assert!(s.iter().any(|c| !c.alpha0_coefficient(big.lie()).is_zero()));
            }
            for c in s {
                assert_eq!(c.coeffs.len(), h.length);
            }
        }
    }

    #[test]
    fn coord_json() {
        let cd = cells(LQSpec::c(5).unwrap());
        let v = length_one_element(cd.lie());
        let c = SchubertCoord::from_coeffs(v, vec![frac(-3, 2)]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"w":[1,-2],"Z":{"2e2":"-3/2"}}"#);
    }
}
