//! Word-by-word count of the rational E¹ of the homotopy spectral sequence.
//!
//! Basic words are listed explicitly when there are at most `LIST_LIMIT`
//! words to scan; longer lengths use the multigraded necklace count.

use std::collections::HashMap;
use std::sync::Mutex;

pub const LIST_LIMIT: u64 = 1 << 20;

fn rotation_minimal(w: &[u8]) -> bool {
    (1..w.len()).all(|r| {
        let rot: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
        w < &rot[..]
    })
}

/// Lyndon words of length `n` on `k` letters using every letter, listed.
pub fn listed(k: u64, n: u64) -> u64 {
    let mut w = vec![0u8; n as usize];
    let mut count = 0;
    loop {
        let full = (0..k as u8).all(|a| w.contains(&a));
        if full && rotation_minimal(&w) {
            count += 1;
        }
        // next word in base k
        let mut i = 0;
        loop {
            if i == w.len() {
                return count;
            }
            w[i] += 1;
            if u64::from(w[i]) < k {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn mobius(n: u64) -> i128 {
    let (mut m, mut x, mut p) = (1i128, n, 2);
    while p * p <= x {
        if x % p == 0 {
            x /= p;
            if x % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if x > 1 {
        m = -m;
    }
    m
}

fn multinomial(parts: &[u64]) -> i128 {
    let mut acc: i128 = 1;
    let mut total = 0;
    for &a in parts {
        for i in 1..=a {
            total += 1;
            acc = acc * total / i as i128;
        }
    }
    acc
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Same count through content vectors: Lyndon words of content `α` number
/// `(1/n) Σ_{e | gcd α} μ(e) (n/e)! / Π (αᵢ/e)!`.
pub fn by_content(k: u64, n: u64) -> u64 {
    fn go(k: u64, left: u64, acc: &mut Vec<u64>, total: &mut i128, n: u64) {
        if acc.len() as u64 == k - 1 {
            if left == 0 {
                return;
            }
            acc.push(left);
            let g = acc.iter().fold(0, |g, &a| gcd(g, a));
            let mut s = 0;
            for e in (1..=g).filter(|e| g % e == 0) {
                let parts: Vec<u64> = acc.iter().map(|a| a / e).collect();
                s += mobius(e) * multinomial(&parts);
            }
            *total += s / n as i128;
            acc.pop();
            return;
        }
        for a in 1..left {
            acc.push(a);
            go(k, left - a, acc, total, n);
            acc.pop();
        }
    }
    if k == 0 || n < k {
        return 0;
    }
    if k == 1 {
        return u64::from(n == 1);
    }
    let mut total = 0;
    go(k, n, &mut Vec::new(), &mut total, n);
    total as u64
}

pub fn basic_words(k: u64, n: u64) -> u64 {
    static MEMO: Mutex<Option<HashMap<(u64, u64), u64>>> = Mutex::new(None);
    if let Some(&v) = MEMO.lock().unwrap().get_or_insert_with(HashMap::new).get(&(k, n)) {
        return v;
    }
    let v = if (k as f64).powi(n as i32) <= LIST_LIMIT as f64 { listed(k, n) } else { by_content(k, n) };
    MEMO.lock().unwrap().as_mut().unwrap().insert((k, n), v);
    v
}

/// Each basic word of length `n` gives `S^m`, `m = n(d-2)+1`; its rational
/// homotopy sits in degree `m`, and also `2m-1` when `m` is even.
pub fn e1_dim(d: u32, s: u32, t: u64) -> u64 {
    if s < 3 {
        return 0;
    }
    let k = u64::from(s - 1);
    let c = u64::from(d) - 2;
    let mut total = 0;
    for n in 1..=t {
        let m = n * c + 1;
        if m > t {
            break;
        }
        let hits = u64::from(m == t) + u64::from(m % 2 == 0 && 2 * m - 1 == t);
        if hits > 0 {
            total += hits * basic_words(k, n);
        }
    }
    total
}
