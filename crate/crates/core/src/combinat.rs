//! Compositions, partitions, permutations and shuffles.
//!
//! Permutations are 0-based vectors: `s[i]` is the image of `i`.
//! A permutation acts on tuples by moving entries: `(s·l)[s[i]] = l[i]`.

use alloc::vec;
use alloc::vec::Vec;

pub type Perm = Vec<usize>;

/// All compositions of `total` (ordered tuples of positive parts).
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=rest {
            cur.push(k);
            go(rest - k, cur, out);
            cur.pop();
        }
    }
    if total > 0 {
        go(total, &mut cur, &mut out);
    }
    out
}

/// Partitions of `total` as non-increasing tuples.
pub fn partitions(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a multiset, in lexicographic order.
pub fn arrangements(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = parts.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Advance to the next lexicographic arrangement; false when wrapped.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn permutations(n: usize) -> Vec<Perm> {
    let mut cur: Perm = (0..n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

pub fn inverse(s: &[usize]) -> Perm {
    let mut r = vec![0; s.len()];
    for (i, &x) in s.iter().enumerate() {
        r[x] = i;
    }
    r
}

/// (a ∘ b)(i) = a(b(i)).
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

/// `(s·l)[s[i]] = l[i]`.
pub fn act<T: Clone>(s: &[usize], l: &[T]) -> Vec<T> {
    let mut out = l.to_vec();
    for (i, x) in l.iter().enumerate() {
        out[s[i]] = x.clone();
    }
    out
}

/// Shuffles of the blocks {1..n-s} and {n-s+1..n}: increasing on the first
/// block; on the second block increasing, or decreasing when `reversed`.
/// There are binomial(n, s) of them.
pub fn shuffles(n: usize, s: usize, reversed: bool) -> Vec<Perm> {
    assert!(s <= n);
    let mut out = Vec::new();
    // choose the image set of the first block
    let mut mask: Vec<bool> = (0..n).map(|i| i >= s).collect();
    mask.sort_unstable();
    loop {
        let first: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        let mut second: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
        if reversed {
            second.reverse();
        }
        let mut s_perm = first;
        s_perm.extend(second);
        out.push(s_perm);
        if !next_permutation(&mut mask) {
            break;
        }
    }
    out
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
