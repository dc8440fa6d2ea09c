use itertools::Itertools;
use lgdual::lg::{dualize, generic_sections, is_kopaseptic, order_matrix, sum_models, ChowClass, LgModel, LinearData};
use lgdual::linalg::{cokernel, hnf_col_with_transform, snf, Matrix};
use lgdual::polyhedra::{feasibility, Feasibility, Halfspaces, Inequality};
use lgdual::selfdual::{classify_cy, matrix_self_dual, model_self_dual, product_self_dual};
use lgdual::toric::p1_bundle;
use lgdual::{IntMatrix, Integer};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(m, n)| {
        proptest::collection::vec(-bound..=bound, m * n)
            .prop_map(move |v| IntMatrix::new(m, n, v.into_iter().map(Integer::from).collect()).unwrap())
    })
}

fn degrees(max_len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, 1..=max_len)
}

fn default_model(d: &[i64]) -> LgModel {
    LgModel::with_default_class(p1_bundle(d), generic_sections(d)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_decomposition_replays(a in matrix(4, 4, 20)) {
        let s = snf(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.s.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| *d > Integer::zero()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(f.len(), a.rank());
    }

    #[test]
    fn hermite_decomposition_replays(a in matrix(4, 4, 20)) {
        let d = hnf_col_with_transform(&a);
        prop_assert_eq!(&a * &d.transform, d.h.clone());
        prop_assert_eq!(&d.transform * &d.inverse, IntMatrix::identity(a.ncols()));
        prop_assert_eq!(hnf_col_with_transform(&d.h).h, d.h);
    }

    #[test]
    fn cokernel_presentation(a in matrix(5, 3, 6)) {
        let g = cokernel(&a);
        prop_assert_eq!(g.free_rank, a.nrows() - a.rank());
        let fp = g.free_projection();
        prop_assert!((&fp * &a).is_zero());
        prop_assert_eq!(&fp * &g.section, IntMatrix::identity(g.free_rank));
        for (k, d) in g.torsion.iter().enumerate() {
            let row = g.projection.row(g.free_rank + k);
            for j in 0..a.ncols() {
                let v: Integer = row.iter().zip(a.col(j)).map(|(x, y)| x * y).sum();
                prop_assert!((v % d).is_zero());
            }
        }
    }

    #[test]
    fn feasibility_answers_are_certified(
        rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), -3i64..=3, any::<bool>()), 1..6)
    ) {
        let ineqs: Vec<Inequality<i64>> = rows
            .iter()
            .map(|(c, b, s)| Inequality::new(c.iter().map(|&v| Rational64::from_integer(v)).collect(), Rational64::from_integer(*b), *s))
            .collect();
        match feasibility(&ineqs, 2) {
            Feasibility::Feasible(x) => prop_assert!(ineqs.iter().all(|r| r.holds_at(&x))),
            Feasibility::Infeasible(c) => prop_assert!(c.verify(&ineqs, 2)),
        }
    }

    #[test]
    fn facets_cut_out_the_same_set(
        rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), -2i64..=2), 2..6)
    ) {
        prop_assume!(rows.iter().all(|(c, _)| c.iter().any(|&v| v != 0)));
        let c = Matrix::<i64>::from_rows(2, rows.iter().map(|r| r.0.clone()).collect()).unwrap();
        let offset: Vec<i64> = rows.iter().map(|r| r.1).collect();
        let h = Halfspaces::with_integer_offset(c.clone(), &offset).unwrap();
        let Ok(f) = h.facets() else { return Ok(()) };
        let kept = Halfspaces::with_integer_offset(c.select_rows(&f.irredundant), &f.irredundant.iter().map(|&i| offset[i]).collect_vec()).unwrap();
        for (x, y) in (-8i64..=8).cartesian_product(-8i64..=8) {
            let p = [Rational64::new(x, 2), Rational64::new(y, 2)];
            prop_assert_eq!(h.contains(&p), kept.contains(&p));
        }
        // every kept row is needed
        for (a, &i) in f.irredundant.iter().enumerate() {
            let mut sys: Vec<Inequality<i64>> = kept.inequalities().into_iter().enumerate().filter(|&(b, _)| b != a).map(|(_, r)| r).collect();
            let own = &kept.inequalities()[a];
            sys.push(Inequality::new(own.coeffs.iter().map(|v| -v).collect(), -own.constant, true));
            prop_assert!(feasibility(&sys, 2).is_feasible(), "row {} is redundant", i);
        }
    }

    #[test]
    fn verdict_ignores_summand_order(d in degrees(3, -3, 1), seed in any::<u64>()) {
        let mut p = d.clone();
        let n = p.len();
        for i in (1..n).rev() {
            p.swap(i, (seed as usize >> (i * 3)) % (i + 1));
        }
        let (a, b) = (model_self_dual(&d), model_self_dual(&p));
        prop_assert_eq!(a.self_dual, b.self_dual);
        prop_assert_eq!(a.matrix_self_dual, b.matrix_self_dual);
        prop_assert_eq!(a.strong_cy, b.strong_cy);
    }

    #[test]
    fn kopaseptic_ignores_row_order(d in degrees(2, -3, 0), seed in any::<u64>()) {
        let data = default_model(&d).default_linear_data();
        let r = data.a.nrows();
        let mut p: Vec<usize> = (0..r).collect();
        for i in (1..r).rev() {
            p.swap(i, (seed as usize >> (i * 3)) % (i + 1));
        }
        let a = data.a.select_rows(&p);
        let lift = p.iter().map(|&i| data.k.lift()[i].clone()).collect();
        let k = ChowClass::new(cokernel(&a), lift).unwrap();
        let permuted = LinearData::new(a, k, data.b.clone(), data.l.clone()).unwrap();
        let (x, y) = (is_kopaseptic(&data), is_kopaseptic(&permuted));
        prop_assert_eq!(x.passes(), y.passes());
        prop_assert_eq!(x.first_failure(), y.first_failure());
        if let (Some(kx), Some(ky)) = (&x.k_map, &y.k_map) {
            for (new, &old) in p.iter().enumerate() {
                prop_assert_eq!(kx[old].is_some(), ky[new].is_some());
            }
        }
    }

    #[test]
    fn sum_has_block_diagonal_data(d1 in degrees(2, -3, 1), d2 in degrees(2, -3, 1)) {
        let (m1, m2) = (default_model(&d1), default_model(&d2));
        let s = sum_models(&m1, &m2);
        prop_assert_eq!(s.mon_matrix(), m1.mon_matrix().direct_sum(&m2.mon_matrix()));
        prop_assert_eq!(s.variety.dv.clone(), m1.variety.dv.direct_sum(&m2.variety.dv));
        prop_assert!(s.k_class.equivalent(&ChowClass::new(s.variety.chow_group(),
            m1.k_class.lift().iter().chain(m2.k_class.lift()).cloned().collect()).unwrap()).unwrap());
    }

    #[test]
    fn generic_sections_are_regular(d in degrees(4, -5, 3)) {
        let x = p1_bundle(&d);
        let w = generic_sections(&d);
        let orders = order_matrix(&x, &w).unwrap();
        for (i, v) in x.dv.rows().enumerate() {
            for (k, t) in w.terms().iter().enumerate() {
                let pairing: Integer = v.iter().zip(&t.exponent).map(|(a, b)| a * b).sum();
                prop_assert_eq!(&orders[(i, k)], &pairing);
                prop_assert!(pairing >= Integer::zero());
            }
        }
    }

    #[test]
    fn witnesses_replay(d in degrees(3, -4, 1)) {
        let v = model_self_dual(&d);
        let x = p1_bundle(&d);
        let w = generic_sections(&d);
        if let Some(wit) = &v.witness {
            prop_assert!(wit.verify_matrices(&x.dv, &w.mon_matrix()));
            prop_assert!(wit.verify(&x, &w));
        }
        prop_assert_eq!(v.self_dual, v.witness.is_some());
        prop_assert!(!v.self_dual || v.matrix_self_dual);
    }

    #[test]
    fn double_dual_returns_the_variety(d in degrees(2, -3, 0)) {
        let m = default_model(&d);
        let data = m.default_linear_data();
        prop_assume!(is_kopaseptic(&data).passes() && is_kopaseptic(&data.swapped()).passes());
        let dual = dualize(&data).unwrap();
        let back_data = dual.linear_data(data.k.clone()).unwrap();
        let back = dualize(&back_data).unwrap();
        if is_kopaseptic(&data).k_map_is_identity() {
            prop_assert_eq!(back.variety.dv.clone(), m.variety.dv.clone());
        }
        prop_assert!(matrix_self_dual(&back.variety.dv, &back.variety.dv).unwrap().is_some());
    }
}

type Rational64 = num_rational::Ratio<i64>;

#[test]
fn classification_is_stable_in_the_degree_bound() {
    let hits = |bound: i64| -> Vec<Vec<i64>> {
        classify_cy(3, bound).into_iter().filter(|v| v.strong_cy && v.self_dual).map(|v| v.degrees).collect()
    };
    for bound in 2..=6 {
        assert_eq!(hits(bound), vec![vec![-2], vec![-1, -1]], "bound {bound}");
    }
}

#[test]
fn products_with_the_dual_are_self_dual() {
    for d in [vec![-2], vec![-1, -1], vec![-1], vec![-3], vec![-2, 0]] {
        let m = default_model(&d);
        let w = product_self_dual(&m).unwrap_or_else(|e| panic!("{d:?}: {e}"));
        let dual = dualize(&m.default_linear_data()).unwrap();
        let s = sum_models(&m, &dual);
        assert!(w.verify_matrices(&s.variety.dv, &s.mon_matrix()), "{d:?}");
        let u = &w.basis_change;
        assert_eq!(&(u * u), &IntMatrix::identity(u.nrows()));
        assert!(u.det().unwrap().abs() == Integer::one());
    }
}
