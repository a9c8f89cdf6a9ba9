//! Symmetries read directly off subspaces. A symmetry at `W` is `+1` on `W` and
//! `-1` on a complement `U`; writing `U` as the graph of `B: U0 -> W` over a
//! fixed complement `U0` makes the symmetry affine in `B`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::flagvariety::{theorem_condition, FlagPoint};
use crate::rootdata::{GradedLie, Series};
use crate::symmetry::AffineFamily;

/// A complement of `w` in which `B` is unconstrained (A) or a transverse coordinate Lagrangian (C).
fn reference_complement(g: &GradedLie, w: &Subspace) -> Result<Subspace> {
    match g.spec().series {
        Series::A => Ok(w.complement()),
        Series::C => {
            let m = g.spec().m();
            for mask in 0..(1usize << m) {
                let idx: Vec<usize> = (0..m).map(|t| if mask >> t & 1 == 1 { m + t } else { t }).collect();
                let u0 = Subspace::coordinate(2 * m, &idx);
                if w.intersect(&u0)?.dim() == 0 {
                    return Ok(u0);
                }
            }
            Err(Error::Inconsistent("no transverse coordinate Lagrangian".into()))
        }
    }
}

/// Every symmetry at `w`, as an affine family.
pub fn involution_family(g: &GradedLie, w: &FlagPoint) -> Result<AffineFamily> {
    let ws = w.subspace();
    let d = ws.ambient();
    let k = ws.dim();
    let u0 = reference_complement(g, ws)?;
    let mut cols = ws.basis_vectors();
    cols.extend(u0.basis_vectors());
    let m = Matrix::from_columns(d, &cols);
    let m_inv = m.inverse()?;
    let conj = |x: &Matrix| &(&m * x) * &m_inv;
    let sign: Vec<i64> = (0..d).map(|i| if i < k { 1 } else { -1 }).collect();
    let base = conj(&Matrix::diag_ints(&sign));

    // B as a k x (d-k) block; raw directions are its matrix units.
    let raw: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..d - k).map(move |j| (i, j))).collect();
    let block = |coeffs: &[Rational]| {
        let mut x = Matrix::zeros(d, d);
        for ((i, j), c) in raw.iter().zip(coeffs) {
            x[(*i, k + j)] = c * Rational::from_integer((-2).into());
        }
        x
    };
    let params: Vec<Vec<Rational>> = match g.omega() {
        None => (0..raw.len())
            .map(|t| (0..raw.len()).map(|s| if s == t { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect(),
        Some(j) => {
            // The graph of B is Lagrangian: Omega(u, Bu') + Omega(Bu, u') = 0.
            let wb = ws.basis();
            let ub = u0.basis();
            let mut rows = Vec::new();
            for a in 0..d - k {
                for b in 0..d - k {
                    let row = raw
                        .iter()
                        .map(|&(i, jj)| {
                            let mut r = Rational::zero();
                            // B e_jj = w_i, so Omega(u_a, B u_b) picks up [jj == b] Omega(u_a, w_i).
                            if jj == b {
                                r += omega(j, &ub.column(a), &wb.column(i));
                            }
                            if jj == a {
                                r += omega(j, &wb.column(i), &ub.column(b));
                            }
                            r
                        })
                        .collect();
                    rows.push(row);
                }
            }
            Matrix::from_rows(rows)?.kernel()
        }
    };
    let dirs = params.iter().map(|p| conj(&block(p))).collect();
    Ok(AffineFamily { base, dirs })
}

fn omega(j: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(j.mul_vec(y)).map(|(a, b)| a * b).sum()
}

/// `g` fixes `w` pointwise and is `-id` on the quotient by `w`.
pub fn is_geometric_symmetry(w: &Subspace, g: &Matrix) -> bool {
    let d = w.ambient();
    let id = Matrix::identity(d);
    let plus = g + &id;
    let minus = g - &id;
    w.basis_vectors().iter().all(|v| minus.mul_vec(v).iter().all(Zero::is_zero))
        && (0..d).all(|c| w.contains(&plus.column(c)))
}

fn check_preconditions(w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<()> {
    if w == w1 || w == w2 {
        return Err(Error::Precondition("W coincides with a removed point".into()));
    }
    if !theorem_condition(w1, w2)? {
        return Err(Error::Precondition("W1, W2 are not in the length-one position".into()));
    }
    Ok(())
}

/// Solve the endpoint conditions over all symmetries at `w`; no position precondition.
pub fn solve_symmetry(g: &GradedLie, w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint, swap: bool) -> Result<Option<Matrix>> {
    let fam = involution_family(g, w)?;
    let (a, b) = (w1.subspace(), w2.subspace());
    let pairs = if swap { [(a, b), (b, a)] } else { [(a, a), (b, b)] };
    let Some(y) = fam.solve_maps(&pairs)? else {
        return Ok(None);
    };
    let m = fam.at(&y);
    let ok = is_geometric_symmetry(w.subspace(), &m)
        && &m * &m == Matrix::identity(m.rows())
        && g.check_group(&m).is_ok()
        && a.act(&m)? == if swap { b.clone() } else { a.clone() }
        && b.act(&m)? == if swap { a.clone() } else { b.clone() };
    if !ok {
        return Err(Error::Inconsistent("geometric symmetry failed verification".into()));
    }
    Ok(Some(m))
}

pub fn geometric_exists_preserving(g: &GradedLie, w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<Option<Matrix>> {
    check_preconditions(w, w1, w2)?;
    solve_symmetry(g, w, w1, w2, false)
}

pub fn geometric_exists_swapping(g: &GradedLie, w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<Option<Matrix>> {
    check_preconditions(w, w1, w2)?;
    solve_symmetry(g, w, w1, w2, true)
}

/// `W ∩ (W1 + W2)` lies in `W1` or in `W2`.
pub fn containment_criterion(w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<bool> {
    let s = w.subspace().intersect(&w1.subspace().sum(w2.subspace())?)?;
    Ok(w1.subspace().contains_subspace(&s) || w2.subspace().contains_subspace(&s))
}

/// `W ∩ (W1 + W2) = (W ∩ W1) + (W ∩ W2)`.
pub fn splitting_criterion(w: &FlagPoint, w1: &FlagPoint, w2: &FlagPoint) -> Result<bool> {
    let ws = w.subspace();
    let s = ws.intersect(&w1.subspace().sum(w2.subspace())?)?;
    let split = ws.intersect(w1.subspace())?.sum(&ws.intersect(w2.subspace())?)?;
    Ok(s == split)
}
