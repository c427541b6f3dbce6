use proptest::prelude::*;

use widefin::cells::{green_cells, MultiSemigroup};
use widefin::coxeter::{graded_rank, parse_matrix, poincare, LaurentPoly};
use widefin::exactlin::{kernel_basis, ratio, Mat};

fn matrix() -> impl Strategy<Value = Mat> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec((-4i64..5, 1i64..4), c), r)
            .prop_map(move |rows| Mat::from_rows(rows.into_iter().map(|row| row.into_iter().map(|(n, d)| ratio(n, d)).collect()).collect(), c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kernel_vectors_are_killed(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    // A rectangular band on p×q with identity adjoined: (a,b)(c,d) = (a,d).
    #[test]
    fn rectangular_band_cells(p in 1usize..4, q in 1usize..4) {
        let mut labels = vec!["1".to_string()];
        for a in 0..p { for b in 0..q { labels.push(format!("{a}_{b}")); } }
        let mut ms = MultiSemigroup::new(labels);
        let idx = |a: usize, b: usize| 1 + a * q + b;
        ms.add_product(0, 0, 0, 1);
        for x in 1..=p * q {
            ms.add_product(0, x, x, 1);
            ms.add_product(x, 0, x, 1);
        }
        for a in 0..p { for b in 0..q { for c in 0..p { for d in 0..q {
            ms.add_product(idx(a, b), idx(c, d), idx(a, d), 1);
        }}}}
        let cells = green_cells(&ms).unwrap();
        prop_assert_eq!(cells.j_cells.len(), 2);
        prop_assert_eq!(cells.l_cells.len(), q + 1);
        prop_assert_eq!(cells.r_cells.len(), p + 1);
        prop_assert_eq!(cells.h_cells.len(), p * q + 1);
    }

    // Dihedral groups: π(q) = (1 + q)(1 + q + ... + q^{m-1}).
    #[test]
    fn dihedral_poincare(m in 2u64..13) {
        let w = parse_matrix(&format!("1 {m}\n{m} 1")).unwrap();
        let p = poincare(&w, &[0, 1]).unwrap();
        let mut want = LaurentPoly::zero();
        for k in 0..m as i64 {
            want.add_term(k, 1);
            want.add_term(k + 1, 1);
        }
        prop_assert_eq!(p, want);
        let r = graded_rank(&w, &[0], &[0, 1]).unwrap();
        prop_assert!(r.is_palindromic(2 * (m as i64 - 1)));
        prop_assert_eq!(r.eval_one(), m as i64);
    }
}
