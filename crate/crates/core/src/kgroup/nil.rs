//! The nilradical `n` with its deformed bracket and BCH product.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::rational::int;
use crate::exactla::{Matrix, Rational};
use crate::kgroup::model::KModel;
use crate::rootdata::Series;

#[derive(Clone, Debug)]
pub struct NilAlgebra {
    pub model: KModel,
    basis: Vec<(String, Matrix)>,
    class: usize,
}

impl NilAlgebra {
    pub fn new(model: KModel) -> Result<Self> {
        let basis = nil_basis(&model);
        let mut alg = NilAlgebra { model, basis, class: usize::MAX };
        alg.class = alg.compute_class()?;
        Ok(alg)
    }

    pub fn basis(&self) -> &[(String, Matrix)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Nilpotency class of `(n, deformed bracket)`.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.model.in_n(x)
    }

    pub fn z_basis(&self) -> Vec<Matrix> {
        self.basis.iter().filter(|(l, _)| l.starts_with('Z')).map(|(_, x)| x.clone()).collect()
    }

    /// The curvature term: antisymmetric in the `(3,1)`, `(3,2)` entries, valued in the target slot.
    pub fn mu(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let s = self.model.size;
        let det = &x[(2, 0)] * &y[(2, 1)] - &x[(2, 1)] * &y[(2, 0)];
        let mut out = Matrix::zeros(s, s);
        out[self.model.mu_target()] = det * &self.model.mu_scale;
        out
    }

    pub fn bracket(&self, x: &Matrix, y: &Matrix) -> Matrix {
        &x.commutator(y) + &self.mu(x, y)
    }

    fn check(&self, x: &Matrix) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInAlgebra("element is not in n".into()))
        }
    }

    pub fn checked_bracket(&self, x: &Matrix, y: &Matrix) -> Result<Matrix> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket(x, y))
    }

    fn compute_class(&self) -> Result<usize> {
        let all: Vec<Matrix> = self.basis.iter().map(|(_, x)| x.clone()).collect();
        let mut current = all.clone();
        for c in 1..=self.model.size {
            let next: Vec<Matrix> = all
                .iter()
                .flat_map(|a| current.iter().map(move |b| (a, b)))
                .map(|(a, b)| self.bracket(a, b))
                .filter(|x| !x.is_zero())
                .collect();
            let next = span_basis(&next);
            if next.is_empty() {
                return Ok(c);
            }
            current = next;
        }
        Err(Error::NotNilpotent)
    }

    /// Baker-Campbell-Hausdorff product in the deformed bracket (Dynkin's form),
    /// truncated at the nilpotency class.
    pub fn bch(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.model.size, self.model.size);
        for k in 1..=self.class {
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            for pairs in compositions(k, self.class) {
                // pairs: (r_i, s_i) with r_i + s_i >= 1.
                let total: usize = pairs.iter().map(|(r, s)| r + s).sum();
                let mut word = Vec::with_capacity(total);
                let mut denom = Rational::from_integer(total.into());
                for (r, s) in &pairs {
                    word.extend(std::iter::repeat(true).take(*r));
                    word.extend(std::iter::repeat(false).take(*s));
                    denom *= factorial(*r) * factorial(*s);
                }
                let term = self.nested(&word, x, y);
                if term.is_zero() {
                    continue;
                }
                let coeff = &sign / (Rational::from_integer(k.into()) * denom);
                out = &out + &term.scale(&coeff);
            }
        }
        out
    }

    /// `[w_1, [w_2, ..., [w_{N-1}, w_N]]]`, letters `true = x`, `false = y`.
    fn nested(&self, word: &[bool], x: &Matrix, y: &Matrix) -> Matrix {
        let pick = |b: bool| if b { x } else { y };
        let mut acc = pick(*word.last().expect("nonempty word")).clone();
        for &b in word[..word.len() - 1].iter().rev() {
            acc = self.bracket(pick(b), &acc);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Sequences of `k` pairs `(r, s)` with `r + s >= 1` and total at most `max`.
fn compositions(k: usize, max: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(k: usize, budget: usize, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let remaining = k - prefix.len() - 1;
        for t in 1..=budget.saturating_sub(remaining) {
            for r in 0..=t {
                prefix.push((r, t - r));
                go(k, budget - t, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= max {
        go(k, max, &mut Vec::new(), &mut out);
    }
    out
}

/// A basis of the span, as matrices.
pub(crate) fn span_basis(mats: &[Matrix]) -> Vec<Matrix> {
    if mats.is_empty() {
        return Vec::new();
    }
    let (r, c) = (mats[0].rows(), mats[0].cols());
    let rows: Vec<Vec<Rational>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let (rref, pivots) = Matrix::from_rows(rows).expect("equal sizes").rref();
    (0..pivots.len()).map(|i| Matrix::from_fn(r, c, |a, b| rref[(i, a * c + b)].clone())).collect()
}

fn nil_basis(model: &KModel) -> Vec<(String, Matrix)> {
    let s = model.size;
    let w = &model.weights;
    let label = |r: usize, c: usize| {
        if model.is_z_slot(r, c) { format!("Z{},{}", r + 1, c + 1) } else { format!("N{},{}", r + 1, c + 1) }
    };
    let mut out = Vec::new();
    match model.spec.series {
        Series::A => {
            for r in 0..s {
                for c in 0..s {
                    if w[r] > w[c] {
                        out.push((label(r, c), Matrix::unit(s, r, c)));
                    }
                }
            }
        }
        Series::C => {
            let n = model.n();
            for i in 0..n {
                for j in 0..n {
                    if w[i] > w[j] {
                        out.push((label(i, j), &Matrix::unit(s, i, j) - &Matrix::unit(s, n + j, n + i)));
                    }
                }
            }
            for i in 0..n {
                for j in i..n {
                    if w[n + j] > w[i] {
                        let x = if i == j {
                            Matrix::unit(s, n + i, i)
                        } else {
                            &Matrix::unit(s, n + j, i) + &Matrix::unit(s, n + i, j)
                        };
                        out.push((label(n + j, i), x));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::frac;
    use crate::rootdata::LQSpec;

    fn algebras() -> Vec<NilAlgebra> {
        [LQSpec::a(7, 4).unwrap(), LQSpec::c(5).unwrap()]
            .into_iter()
            .map(|s| NilAlgebra::new(KModel::new(s).unwrap()).unwrap())
            .collect()
    }

    fn sample(alg: &NilAlgebra, seed: i64) -> Matrix {
        let mut out = Matrix::zeros(alg.model.size, alg.model.size);
        for (i, (_, b)) in alg.basis().iter().enumerate() {
            let c = frac((seed * 31 + i as i64 * 17) % 7 - 3, 1 + (i as i64 + seed) % 3);
            out = &out + &b.scale(&c);
        }
        out
    }

    #[test]
    fn dimensions_and_class() {
        let a = &algebras()[0];
        // 2 + 4*3 + 7 strictly lower entries for n = 7.
        assert_eq!(a.dim(), 21);
        assert_eq!(a.z_basis().len(), 4);
        assert_eq!(a.class(), 3);
        let c = &algebras()[1];
        assert!(c.basis().iter().all(|(_, x)| c.contains(x)));
        assert_eq!(c.class(), 4);
    }

    #[test]
    fn compositions_count() {
        // Pairs (r,s) with r+s = t: t+1 choices; k = 1, max = 2 gives 2 + 3.
        assert_eq!(compositions(1, 2).len(), 5);
        assert_eq!(compositions(3, 2).len(), 0);
    }

    #[test]
    fn bch_matches_matrix_log_without_curvature() {
        for spec in [LQSpec::a(7, 4).unwrap(), LQSpec::c(5).unwrap()] {
            let alg = NilAlgebra::new(KModel::with_mu_scale(spec, <Rational as num_traits::Zero>::zero()).unwrap()).unwrap();
            for seed in 0..4 {
                let x = sample(&alg, seed);
                let y = sample(&alg, seed + 11);
                let prod = &x.exp_nilpotent().unwrap() * &y.exp_nilpotent().unwrap();
                assert_eq!(alg.bch(&x, &y), prod.log_unipotent().unwrap());
            }
        }
    }

    #[test]
    fn bch_basics() {
        for alg in algebras() {
            let x = sample(&alg, 3);
            let zero = Matrix::zeros(alg.model.size, alg.model.size);
            assert_eq!(alg.bch(&x, &zero), x);
            assert!(alg.bch(&x, &-&x).is_zero());
            assert!(alg.bracket(&x, &x).is_zero());
        }
    }
}
