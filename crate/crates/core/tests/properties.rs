use proptest::prelude::*;
use symflag::exactla::rational::int;
use symflag::exactla::{Matrix, Rational, Subspace};
use symflag::rootdata::{GradedLie, LQSpec};
use symflag::schubert::{CellDecomposition, SchubertCoord};
use symflag::weyl::{weyl_group, WeylElt};

fn vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(int), dim), 0..=count)
}

fn invertible(dim: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, dim * dim)
        .prop_map(move |xs| Matrix::from_fn(dim, dim, |r, c| int(xs[r * dim + c])))
        .prop_filter("invertible", |m| m.rank() == m.rows())
}

fn strictly_lower(dim: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, dim * dim)
        .prop_map(move |xs| Matrix::from_fn(dim, dim, |r, c| if r > c { int(xs[r * dim + c]) } else { int(0) }))
}

proptest! {
    #[test]
    fn modular_dimension_law(a in vectors(5, 4), b in vectors(5, 4)) {
        let (p, q) = (Subspace::span(5, &a), Subspace::span(5, &b));
        let sum = p.sum(&q).unwrap();
        let meet = p.intersect(&q).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), p.dim() + q.dim());
        prop_assert!(sum.contains_subspace(&p) && p.contains_subspace(&meet) && q.contains_subspace(&meet));
    }

    #[test]
    fn action_composes(a in vectors(4, 3), g in invertible(4), h in invertible(4)) {
        let s = Subspace::span(4, &a);
        prop_assert_eq!(s.act(&h).unwrap().act(&g).unwrap(), s.act(&(&g * &h)).unwrap());
        prop_assert_eq!(s.act(&g).unwrap().act(&g.inverse().unwrap()).unwrap(), s);
    }

    #[test]
    fn exp_log_round_trip(x in strictly_lower(4)) {
        let e = x.exp_nilpotent().unwrap();
        prop_assert_eq!(e.log_unipotent().unwrap(), x.clone());
        prop_assert_eq!(e.inverse().unwrap(), (-&x).exp_nilpotent().unwrap());
    }

    #[test]
    fn weyl_matrices_are_homomorphic(i in 0usize..48, j in 0usize..48) {
        let spec = LQSpec::c(6).unwrap();
        let group: Vec<WeylElt> = weyl_group(&spec);
        let (u, v) = (&group[i % group.len()], &group[j % group.len()]);
        let lhs = u.compose(v).matrix(&spec).unwrap();
        let rhs = &u.matrix(&spec).unwrap() * &v.matrix(&spec).unwrap();
        // Sign changes are realized up to sign, so the products differ by a diagonal ±1 element.
        let t = &lhs.inverse().unwrap() * &rhs;
        for r in 0..6 {
            for c in 0..6 {
                let ok = if r == c { t[(r, c)] == int(1) || t[(r, c)] == int(-1) } else { t[(r, c)] == int(0) };
                prop_assert!(ok);
            }
        }
        prop_assert!(u.compose(&u.inverse()).is_identity());
    }

    #[test]
    fn schubert_round_trip(cell in 0usize..8, coeffs in prop::collection::vec(-4i64..=4, 6)) {
        let cd = CellDecomposition::new(GradedLie::new(LQSpec::c(6).unwrap()).unwrap());
        let h = cd.cells()[cell].clone();
        let c = SchubertCoord::from_coeffs(h.clone(), coeffs[..h.length].iter().map(|&x| int(x)).collect()).unwrap();
        prop_assert_eq!(cd.decompose(&cd.point_of(&c).unwrap()).unwrap(), c);
    }
}
