use gwtower::collapse::{
    collapse_region, collapse_region_with, extensions_split, thm_b_vanishes, thm_b_vanishes_with, thm_c_assembly,
    weight_obstruction, ConstantVariant, Verdict,
};
use gwtower::homotopy::cyclotomic_weight;
use proptest::prelude::*;

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|j| j * j <= k).all(|j| k % j != 0)).collect()
}

#[test]
fn every_grid_point_has_a_witness() {
    let ps = primes_upto(200);
    for d in [3u32, 4] {
        for r in 3..=12 {
            for s in 3..=10 {
                for t in 0..=40u64 {
                    let hit = ps
                        .iter()
                        .any(|&p| thm_b_vanishes(p, d, r, s, t).unwrap().verdict == Verdict::Vanishes);
                    assert!(hit, "no witness at d={d} r={r} s={s} t={t}");
                }
            }
        }
    }
}

#[test]
fn r_two_vanishes_for_large_primes() {
    // (p-1)(d-2) ≥ 2 once p > 2, so d₂ is never on the allowed lattice
    for p in [3u64, 5, 7] {
        let c = thm_b_vanishes(p, 3, 2, 3, 0).unwrap();
        assert_eq!(c.verdict, Verdict::Vanishes);
        assert!(c.recheck().unwrap());
    }
}

#[test]
fn report_contributions_sit_on_cyclotomic_weights() {
    for &p in &PRIMES[1..6] {
        for d in [3u32, 4, 5] {
            for i in -2..=4 {
                let rep = thm_c_assembly(p, d, 5, i).unwrap();
                for c in &rep.contributions {
                    assert_eq!(c.t as i64 - c.s as i64, i);
                    assert!(cyclotomic_weight(d, c.t).is_some(), "p={p} d={d} i={i} at {:?}", (c.s, c.t));
                }
                assert_eq!(rep.empty, rep.contributions.is_empty());
            }
        }
    }
}

proptest! {
    #[test]
    fn certificates_recheck(p in prop::sample::select(PRIMES.to_vec()), d in 3u32..8, r in 1u32..40, s in 0u32..20, t in 0u64..200, cor in any::<bool>()) {
        let v = if cor { ConstantVariant::Corollary } else { ConstantVariant::Conservative };
        let c = thm_b_vanishes_with(v, p, d, r, s, t).unwrap();
        prop_assert!(c.recheck().unwrap());
        prop_assert_eq!(c.variant, v);
    }

    #[test]
    fn vanishing_is_monotone_in_s_and_t(p in prop::sample::select(PRIMES.to_vec()), d in 3u32..8, r in 1u32..40, s in 0u32..20, t in 1u64..200) {
        if thm_b_vanishes(p, d, r, s, t).unwrap().verdict == Verdict::Vanishes {
            prop_assert_eq!(thm_b_vanishes(p, d, r, s + 1, t).unwrap().verdict, Verdict::Vanishes);
            prop_assert_eq!(thm_b_vanishes(p, d, r, s, t - 1).unwrap().verdict, Verdict::Vanishes);
        }
    }

    #[test]
    fn lattice_rows_never_vanish(p in prop::sample::select(PRIMES.to_vec()), d in 3u32..8, k in 0u32..5, s in 0u32..20, t in 0u64..200) {
        let r = 1 + k * (p as u32 - 1) * (d - 2);
        prop_assert_eq!(thm_b_vanishes(p, d, r, s, t).unwrap().verdict, Verdict::Inapplicable);
    }

    #[test]
    fn weight_obstruction_is_symmetric_and_periodic(m in -500i64..500, n in -500i64..500, p in prop::sample::select(PRIMES.to_vec())) {
        let a = weight_obstruction(m, n, p).unwrap();
        prop_assert_eq!(a, weight_obstruction(n, m, p).unwrap());
        prop_assert_eq!(a, weight_obstruction(m + p as i64 - 1, n, p).unwrap());
        prop_assert!(!weight_obstruction(m, m, p).unwrap());
    }

    #[test]
    fn splitting_is_order_independent(mut w in prop::collection::vec(-50i64..50, 1..8), p in prop::sample::select(PRIMES.to_vec())) {
        let a = extensions_split(&w, p).unwrap();
        w.reverse();
        prop_assert_eq!(a, extensions_split(&w, p).unwrap());
        if a {
            // distinct weights within a window shorter than p-1 are always obstructed
            for x in &w {
                for y in &w {
                    prop_assert_eq!(weight_obstruction(*x, *y, p).unwrap(), x != y);
                }
            }
        }
    }

    #[test]
    fn region_agrees_with_vanishing(p in prop::sample::select(PRIMES[1..].to_vec()), d in 3u32..7, n in 1u32..12, s in 1u32..12, t in 0u64..80) {
        let reg = collapse_region(p, d, n).unwrap();
        if reg.contains(s, t) {
            // inside the region every d_r with r ≥ 2 below the first lattice row vanishes
            let r = 2;
            prop_assert_eq!(thm_b_vanishes(p, d, r, s, t).unwrap().verdict, Verdict::Vanishes);
        }
        let cor = collapse_region_with(ConstantVariant::Corollary, p, d, n).unwrap();
        prop_assert!(!reg.contains(s, t) || cor.contains(s, t));
    }
}
