use gwtower::lie::{full_support_count, is_lyndon, lyndon_words, witt_count};
use num_bigint::BigUint;

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn lyndon_counts_match_witt() {
    for k in 1..=5 {
        for n in 1..=10 {
            let words = lyndon_words(k, n);
            assert_eq!(BigUint::from(words.len()), witt_count(k as u64, n as u64), "k={k} n={n}");
            assert!(words.iter().all(|w| is_lyndon(w.letters())));
            assert!(words.windows(2).all(|p| p[0].letters() < p[1].letters()));
        }
    }
}

#[test]
fn supports_partition_witt_counts() {
    // every word uses some subset of the letters, exactly
    for k in 1..=6u64 {
        for n in 1..=9u64 {
            let total: BigUint = (1..=k).map(|j| binomial(k, j) * full_support_count(j, n)).sum();
            assert_eq!(total, witt_count(k, n), "k={k} n={n}");
        }
    }
}

#[test]
fn full_support_by_hand() {
    for k in 1..=4usize {
        for n in 1..=8usize {
            let direct = lyndon_words(k, n)
                .iter()
                .filter(|w| (1..=k as u8).all(|a| w.letters().contains(&a)))
                .count();
            assert_eq!(BigUint::from(direct), full_support_count(k as u64, n as u64));
        }
    }
}
