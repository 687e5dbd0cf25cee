//! Reference values computed from cyclic decompositions, independently of the library's normal forms.
#![allow(dead_code)]

use std::path::PathBuf;

use dimlab::abelian::FgAbelian;
use dimlab::Int;
use rand::Rng;

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// Invariant factors of `⊕ Z/n` over the given orders (0 meaning `Z`), via primary parts.
pub fn invariants_of_cyclics(orders: &[i64]) -> Vec<i64> {
    let free = orders.iter().filter(|&&n| n == 0).count();
    let mut primary: Vec<(i64, Vec<i64>)> = Vec::new();
    for &n in orders.iter().filter(|&&n| n > 1) {
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                let mut q = 1;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                }
                match primary.iter_mut().find(|(b, _)| *b == p) {
                    Some((_, powers)) => powers.push(q),
                    None => primary.push((p, vec![q])),
                }
            }
            p += 1;
        }
    }
    for (_, powers) in &mut primary {
        powers.sort_unstable_by(|a, b| b.cmp(a));
    }
    let len = primary.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut inv: Vec<i64> = (0..len).map(|i| primary.iter().map(|(_, v)| v.get(i).copied().unwrap_or(1)).product()).collect();
    inv.reverse();
    inv.extend(std::iter::repeat_n(0, free));
    inv
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn invariants(a: &FgAbelian) -> Vec<i64> {
    a.invariant_factors().iter().map(|x| x.to_i64().expect("small invariant")).collect()
}

/// `L_1SP²(⊕ Z/a_i)`: one `Z/gcd(a_i, a_j)` for every pair of finite cyclic summands.
pub fn l1sp2_oracle(orders: &[i64]) -> Vec<i64> {
    let t: Vec<i64> = orders.iter().copied().filter(|&n| n > 0).collect();
    let pairs: Vec<i64> = (0..t.len()).flat_map(|i| (i + 1..t.len()).map(move |j| (i, j))).map(|(i, j)| gcd(t[i], t[j])).collect();
    invariants_of_cyclics(&pairs)
}

/// `|Tor(A, A)|` for finite `A = ⊕ Z/a_i`.
pub fn tor_square_order(orders: &[i64]) -> i64 {
    orders.iter().flat_map(|&a| orders.iter().map(move |&b| gcd(a, b))).product()
}

pub fn order_of(inv: &[i64]) -> Option<i64> {
    inv.iter().try_fold(1, |acc, &n| (n != 0).then_some(acc * n))
}

/// Up to four cyclic summands of order at most 12, `Z` included as order 0.
pub fn random_orders(rng: &mut impl Rng) -> Vec<i64> {
    let n = rng.gen_range(1..=4);
    (0..n).map(|_| if rng.gen_bool(0.15) { 0 } else { rng.gen_range(1..=12) }).collect()
}

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

