use gwtower::abelian::{cokernel, kernel_basis, localize, smith_normal_form, AbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn sparse_matrix(max: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec((0..r.max(1), 0..c.max(1), -entry..=entry), 0..=(r * c).min(3 * max))
            .prop_map(move |t| {
                let t = if r == 0 || c == 0 { vec![] } else { t };
                IntMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, v)| (i, j, BigInt::from(v))))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_contract(m in sparse_matrix(10, 30)) {
        let r = smith_normal_form(&m);
        prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.d.clone());
        prop_assert!(r.u.determinant().abs().is_one());
        prop_assert!(r.v.determinant().abs().is_one());
        let diag = r.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for (i, j, v) in r.d.iter() {
            prop_assert!(i == j && v.is_positive());
        }
    }

    #[test]
    fn kernel_is_saturated(m in sparse_matrix(9, 20)) {
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert!(smith_normal_form(&k).diagonal().iter().all(One::is_one));
        prop_assert_eq!(k.cols(), m.cols() - smith_normal_form(&m).diagonal().len());
    }

    #[test]
    fn cokernel_ignores_permutations(m in sparse_matrix(8, 12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let g = cokernel(&m);
        prop_assert_eq!(cokernel(&m.permute_rows(&rp).permute_cols(&cp)), g.clone());
        // extra columns that are zero leave the cokernel alone
        let wider = m.transpose().vstack(&IntMatrix::zeros(2, m.rows())).transpose();
        prop_assert_eq!(cokernel(&wider), g);
    }

    #[test]
    fn localize_is_idempotent(rank in 0usize..4, orders in proptest::collection::vec(2i64..200, 0..5), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let g = AbelianGroup::from_cyclic_orders(rank, &orders.iter().map(|&o| o.into()).collect::<Vec<_>>());
        let once = localize(&g, p).unwrap();
        prop_assert_eq!(localize(&once, p).unwrap(), once);
    }
}
