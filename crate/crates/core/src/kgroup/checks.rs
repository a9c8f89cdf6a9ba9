//! The elements `s`, `s̄` and structural checks of the `K` construction.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactla::rational::int;
use crate::exactla::{Matrix, Rational};
use crate::kgroup::group::{KElement, KGroup};
use crate::kgroup::model::KModel;
use crate::kgroup::nil::span_basis;
use crate::rootdata::Series;

/// Twice the grading element of `(G, P)` on the basis vectors.
fn grading(model: &KModel) -> Vec<i64> {
    let n = model.n();
    match model.spec.series {
        Series::A => {
            let l = model.spec.l.expect("validated");
            (0..=n).map(|i| if i == 0 { 6 } else if i == 1 { 4 } else if i < l { 2 } else { 0 }).collect()
        }
        Series::C => {
            let e: Vec<i64> = (0..n).map(|i| if i == 0 { 5 } else if i == 1 { 3 } else { 1 }).collect();
            e.iter().copied().chain(e.iter().map(|x| -x)).collect()
        }
    }
}

/// A basis of `g_{-1}` for `(G, P)`.
pub fn g_minus_one(model: &KModel) -> Vec<Matrix> {
    let h = grading(model);
    let s = model.size;
    let mut out = Vec::new();
    match model.spec.series {
        Series::A => {
            let step = 2;
            for r in 0..s {
                for c in 0..s {
                    if h[r] - h[c] == -step {
                        out.push(Matrix::unit(s, r, c));
                    }
                }
            }
        }
        Series::C => {
            let n = model.n();
            for i in 0..n {
                for j in 0..n {
                    if i != j && h[i] - h[j] == -2 {
                        out.push(&Matrix::unit(s, i, j) - &Matrix::unit(s, n + j, n + i));
                    }
                }
            }
            for i in 0..n {
                for j in i..n {
                    if h[i] + h[j] == -2 {
                        out.push(if i == j { Matrix::unit(s, i, n + i) } else { &Matrix::unit(s, i, n + j) + &Matrix::unit(s, j, n + i) });
                    }
                    if -h[i] - h[j] == -2 {
                        out.push(if i == j { Matrix::unit(s, n + i, i) } else { &Matrix::unit(s, n + i, j) + &Matrix::unit(s, n + j, i) });
                    }
                }
            }
        }
    }
    out
}

/// `s` for `(G, P)` and the element `s̄` of the Levi factor acting as `-id` on `g_{-1}`.
pub fn s_and_sbar(model: &KModel) -> (Matrix, Matrix) {
    let n = model.n();
    let s = match model.spec.series {
        Series::A => {
            let l = model.spec.l.expect("validated");
            let signs: Vec<i64> = (0..=n).map(|i| if i == 1 || i >= l { -1 } else { 1 }).collect();
            model.diag_signs(&signs)
        }
        Series::C => {
            // Multiplier -1: the f-entries are -1 divided by the e-entries.
            let e: Vec<i64> = (0..n).map(|i| if i == 1 { -1 } else { 1 }).collect();
            let signs: Vec<i64> = e.iter().copied().chain(e.iter().map(|x| -x)).collect();
            model.diag_signs(&signs)
        }
    };
    (s.clone(), s)
}

/// The alternative diagonal pattern for `s̄`: `(1,-1,1,...,1,-1,...,-1,1)` with exactly `l`
/// entries `1` (A). For C it agrees with `s_and_sbar`.
pub fn displayed_sbar(model: &KModel) -> Matrix {
    let n = model.n();
    match model.spec.series {
        Series::A => {
            let l = model.spec.l.expect("validated");
            let signs: Vec<i64> = (0..=n).map(|i| if i == 1 || (i >= l && i < n) { -1 } else { 1 }).collect();
            model.diag_signs(&signs)
        }
        Series::C => s_and_sbar(model).1,
    }
}

pub fn acts_as_minus_id(g: &Matrix, basis: &[Matrix]) -> Result<bool> {
    let gi = g.inverse()?;
    Ok(basis.iter().all(|x| &(&(g * x) * &gi) == &-x))
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

#[derive(Clone, Debug, Serialize)]
pub struct KCheckReport {
    pub spec: crate::rootdata::LQSpec,
    #[serde(with = "crate::exactla::rational::serde_str")]
    pub mu_scale: Rational,
    pub seed: u64,
    pub samples: usize,
    pub dim_n: usize,
    pub nilpotency_class: usize,
    pub s: Matrix,
    pub sbar: Matrix,
    pub checks: Vec<Check>,
    /// Statements of the construction that the computation contradicts.
    pub findings: Vec<Check>,
}

impl KCheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().chain(&self.findings).find(|c| c.name == name)
    }
}

fn ad_is_automorphism(group: &KGroup, g: &Matrix) -> Result<bool> {
    let nil = &group.nil;
    let basis: Vec<&Matrix> = nil.basis().iter().map(|(_, x)| x).collect();
    let gi = g.inverse()?;
    let ad = |x: &Matrix| &(g * x) * &gi;
    for (i, x) in basis.iter().enumerate() {
        let ax = ad(x);
        if !nil.contains(&ax) {
            return Ok(false);
        }
        for y in &basis[i + 1..] {
            if ad(&nil.bracket(x, y)) != nil.bracket(&ax, &ad(y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn in_span(x: &Matrix, basis: &[Matrix]) -> bool {
    let mut all = basis.to_vec();
    all.push(x.clone());
    span_basis(&all).len() == span_basis(basis).len()
}

/// Levi element in `Q' x Q`: `L'` fixes the line of `e_1`, `L` preserves the base plane.
fn in_levi_parabolic(model: &KModel, g: &Matrix) -> bool {
    let l = model.l_block(g);
    let k = model.spec.k();
    model.l_prime(g)[(1, 0)].is_zero() && (k..l.rows()).all(|r| (0..k).all(|c| l[(r, c)].is_zero()))
}

fn fixes_flag_points(model: &KModel, g: &Matrix) -> Result<bool> {
    use crate::exactla::Subspace;
    let lp = model.l_prime(g);
    let line = Subspace::coordinate(2, &[0]);
    let l = model.l_block(g);
    let base = Subspace::coordinate(l.rows(), &model.spec.base_indices());
    Ok(line.act(&lp)? == line && base.act(&l)? == base)
}

pub fn check_k(group: &KGroup, seed: u64, samples: usize) -> Result<KCheckReport> {
    let nil = &group.nil;
    let model = &nil.model;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let basis: Vec<Matrix> = nil.basis().iter().map(|(_, x)| x.clone()).collect();
    let dim = basis.len();

    let closed = basis.iter().all(|x| basis.iter().all(|y| nil.contains(&nil.bracket(x, y))));
    checks.push(check("bracket_closure", closed, format!("all {} basis pairs", dim * dim)));

    let mut jacobi_fail = 0usize;
    let mut triples = 0usize;
    for i in 0..dim {
        for j in i + 1..dim {
            let xy = nil.bracket(&basis[i], &basis[j]);
            for k in j + 1..dim {
                triples += 1;
                let a = nil.bracket(&xy, &basis[k]);
                let b = nil.bracket(&nil.bracket(&basis[j], &basis[k]), &basis[i]);
                let c = nil.bracket(&nil.bracket(&basis[k], &basis[i]), &basis[j]);
                if !(&(&a + &b) + &c).is_zero() {
                    jacobi_fail += 1;
                }
            }
        }
    }
    checks.push(check("jacobi", jacobi_fail == 0, format!("{triples} basis triples, {jacobi_fail} failures")));

    let deformed = basis.iter().any(|x| basis.iter().any(|y| !nil.mu(x, y).is_zero()));
    checks.push(check(
        "deformation_nontrivial",
        deformed,
        if deformed { "bracket differs from the matrix commutator" } else { "bracket equals the matrix commutator" },
    ));

    let elems: Vec<KElement> = (0..samples).map(|_| group.random_element(&mut rng)).collect::<Result<_>>()?;
    let mut assoc_fail = 0;
    let mut inv_fail = 0;
    let mut closure_fail = 0;
    let mut member_fail = 0;
    let id = group.identity();
    for i in 0..samples {
        let (a, b, c) = (&elems[i], &elems[(i + 1) % samples], &elems[(i + 2) % samples]);
        if !group.in_k(&group.matrix(a)?)? {
            member_fail += 1;
        }
        let ab_c = group.product(&group.product(a, b)?, c)?;
        let a_bc = group.product(a, &group.product(b, c)?)?;
        if ab_c != a_bc {
            assoc_fail += 1;
        }
        let inv = group.inverse(a)?;
        if group.product(a, &inv)? != id || group.product(&inv, a)? != id {
            inv_fail += 1;
        }
        let ab = group.product(a, b)?;
        if !group.in_k(&group.matrix(&ab)?)? || !group.in_k(&group.matrix(&inv)?)? {
            closure_fail += 1;
        }
    }
    checks.push(check("random_elements_in_k", member_fail == 0, format!("{samples} samples, {member_fail} failures")));
    checks.push(check("associativity", assoc_fail == 0, format!("{samples} triples, {assoc_fail} failures")));
    checks.push(check("inverses", inv_fail == 0, format!("{samples} samples, {inv_fail} failures")));
    checks.push(check("in_k_closure", closure_fail == 0, format!("{samples} products and inverses, {closure_fail} failures")));

    let mut roundtrip_fail = 0;
    for e in &elems {
        if group.levi_decompose(&group.matrix(e)?)? != *e {
            roundtrip_fail += 1;
        }
    }
    checks.push(check("levi_decompose_roundtrip", roundtrip_fail == 0, format!("{samples} samples, {roundtrip_fail} failures")));

    // Away from the curvature inputs the product is matrix multiplication.
    let mut flat_fail = 0;
    for i in 0..samples.min(20) {
        let strip = |x: &Matrix| {
            let mut y = x.clone();
            y[(2, 0)] = Rational::zero();
            y[(2, 1)] = Rational::zero();
            if model.spec.series == Series::C {
                let n = model.n();
                y[(n, n + 2)] = Rational::zero();
                y[(n + 1, n + 2)] = Rational::zero();
            }
            y
        };
        let a = KElement { x: strip(&elems[i].x), levi: elems[i].levi.clone() };
        let b = KElement { x: strip(&elems[(i + 1) % samples].x), levi: elems[(i + 1) % samples].levi.clone() };
        if group.matrix(&group.product(&a, &b)?)? != &group.matrix(&a)? * &group.matrix(&b)? {
            flat_fail += 1;
        }
    }
    checks.push(check("product_matches_matrices_off_curvature", flat_fail == 0, format!("{flat_fail} failures")));

    // The subgroup H = exp(n0) ⋊ (Q' x Q).
    let z = nil.z_basis();
    let n0_closed = z.iter().all(|a| z.iter().all(|b| in_span(&nil.bracket(a, b), &z)));
    let mu_off_n0 = z.iter().all(|a| basis.iter().all(|b| nil.mu(a, b).is_zero()));
    checks.push(check("n0_subalgebra", n0_closed && mu_off_n0, format!("{} Z slots", z.len())));
    let mut norm_fail = 0;
    let mut h_fail = 0;
    let mut stab_fail = 0;
    for _ in 0..samples.min(30) {
        let p = group.random_levi(&mut rng, true)?;
        if !z.iter().all(|x| group.ad(&p, x).map(|y| in_span(&y, &z)).unwrap_or(false)) {
            norm_fail += 1;
        }
        let zx = {
            let mut acc = Matrix::zeros(model.size, model.size);
            for (i, b) in z.iter().enumerate() {
                acc = &acc + &b.scale(&int(i as i64 % 3 - 1));
            }
            acc
        };
        let h1 = KElement { x: zx.clone(), levi: p.clone() };
        let h2 = KElement { x: -&zx, levi: group.random_levi(&mut rng, true)? };
        let prod = group.product(&h1, &h2)?;
        let inv = group.inverse(&h1)?;
        for h in [&prod, &inv] {
            if !in_span(&h.x, &z) || !in_levi_parabolic(model, &h.levi) {
                h_fail += 1;
            }
        }
        for g in [p, group.random_levi(&mut rng, false)?] {
            if in_levi_parabolic(model, &g) != fixes_flag_points(model, &g)? {
                stab_fail += 1;
            }
        }
    }
    checks.push(check("pbar_normalizes_n0", norm_fail == 0, format!("{norm_fail} failures")));
    checks.push(check("h_closed", h_fail == 0, format!("{h_fail} failures")));
    checks.push(check("levi_stabilizer_is_qprime_times_q", stab_fail == 0, format!("{stab_fail} failures")));

    // s and s̄.
    let (s, sbar) = s_and_sbar(model);
    let gm1 = g_minus_one(model);
    checks.push(check("s_minus_id_on_g_minus1", acts_as_minus_id(&s, &gm1)?, format!("{} basis elements", gm1.len())));
    checks.push(check("sbar_minus_id_on_g_minus1", acts_as_minus_id(&sbar, &gm1)?, format!("{} basis elements", gm1.len())));
    let in_levi = model.is_levi(&sbar)? && in_levi_parabolic(model, &sbar) && model.normalization_holds(&sbar)?;
    let lambda = model.multiplier(&sbar).unwrap_or_else(Rational::zero);
    checks.push(check(
        "sbar_in_levi_of_h",
        in_levi,
        format!("multiplier {}", crate::exactla::rational::to_string(&lambda)),
    ));
    let factor = model.curvature_factor(&sbar)?;
    checks.push(check(
        "sbar_automorphism_of_n",
        factor == Rational::one() && ad_is_automorphism(group, &sbar)?,
        format!("curvature factor {}", crate::exactla::rational::to_string(&factor)),
    ));
    let sq = &sbar * &sbar;
    checks.push(check("sbar_involution", sq == Matrix::identity(model.size).scale(&sq[(0, 0)]), "s̄² is scalar"));

    let mut findings = Vec::new();
    let shown = displayed_sbar(model);
    if shown != sbar {
        let minus = acts_as_minus_id(&shown, &gm1)?;
        let f = model.curvature_factor(&shown)?;
        findings.push(check(
            "displayed_sbar_pattern",
            minus && f == Rational::one(),
            format!(
                "diag {:?}: -id on g_-1 = {minus}, curvature factor {}",
                (0..model.size).map(|i| crate::exactla::rational::to_string(&shown[(i, i)])).collect::<Vec<_>>(),
                crate::exactla::rational::to_string(&f)
            ),
        ));
    }
    let findings = findings.into_iter().filter(|f| !f.passed).collect();

    Ok(KCheckReport {
        spec: model.spec,
        mu_scale: model.mu_scale.clone(),
        seed,
        samples,
        dim_n: dim,
        nilpotency_class: nil.class(),
        s,
        sbar,
        checks,
        findings,
    })
}
