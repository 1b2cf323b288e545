//! Library results against independent computations: Möbius counts,
//! brute-force linear extensions, rational arithmetic and matrix powers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use postlie_core::combinat::{act, compositions, partitions, permutations, shuffles};
use postlie_core::fdalgebra::FdAlgebra;
use postlie_core::freelie::{lyndon_basis, Symbol};
use postlie_core::freepostlie::{corolla_forest, corolla_multiplicity, enumerate_linearizations};
use postlie_core::pstruct;
use postlie_core::scalars::{field_make, Field, Scalar};

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[test]
fn lyndon_counts_match_necklace_formula() {
    for m in 1..=3u32 {
        let alphabet: Vec<Symbol> = (0..m).map(Symbol).collect();
        for d in 1..=6u64 {
            let sum: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * (m as i64).pow((d / e) as u32)).sum();
            assert_eq!(lyndon_basis(&alphabet, d as usize).len() as i64, sum / d as i64, "m={m} d={d}");
        }
    }
}

/// Linear extensions of the corolla poset by dynamic programming over
/// down-sets: leaves of a corolla form a chain (rightmost smallest) below
/// its root, and the root of corolla i lies above all of corollas 1..i.
fn linear_extensions(parts: &[u32]) -> u64 {
    let mut below: Vec<u32> = Vec::new();
    let mut earlier = 0u32;
    for &l in parts {
        let first = below.len();
        for k in 0..l as usize - 1 {
            // leaf k sits above leaf k + 1
            below.push(if k + 2 < l as usize { 1 << (first + k + 1) } else { 0 });
        }
        let corolla: u32 = (first..below.len()).map(|i| 1 << i).sum();
        below.push(earlier | corolla);
        earlier |= corolla | 1 << (below.len() - 1);
    }
    let n = below.len();
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for set in 0..1usize << n {
        if ways[set] == 0 {
            continue;
        }
        for v in 0..n {
            if set >> v & 1 == 0 && below[v] as usize & !set == 0 {
                ways[set | 1 << v] += ways[set];
            }
        }
    }
    ways[(1 << n) - 1]
}

#[test]
fn corolla_counts_match_brute_force() {
    for n in 1..=7 {
        for c in compositions(n) {
            let brute = linear_extensions(&c);
            assert_eq!(corolla_multiplicity(&c), brute, "{c:?}");
            assert_eq!(enumerate_linearizations(&corolla_forest(&c)).unwrap().len() as u64, brute, "{c:?}");
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn friedrich_sums_vanish_in_rationals_mod_p() {
    for p in [3u32, 5, 7] {
        let f = Field::prime(p);
        for lam in partitions(p).into_iter().filter(|l| l.len() >= 2) {
            let n = lam.len();
            for s in 1..n {
                for reversed in [false, true] {
                    for beta in permutations(n).into_iter().step_by(7) {
                        let base = act(&beta, &lam);
                        let (mut num, mut den) = (0i128, 1i128);
                        for alpha in shuffles(n, n - s, reversed) {
                            let l = act(&alpha, &base);
                            let mut c = 1i128;
                            let mut acc = 0i128;
                            for &x in &l[..n - 1] {
                                acc += x as i128;
                                c *= acc;
                            }
                            num = num * c + den;
                            den *= c;
                            let g = gcd(num, den);
                            num /= g;
                            den /= g;
                        }
                        assert_eq!(num.rem_euclid(p as i128), 0, "p={p} λ={lam:?} s={s} β={beta:?}");
                        let lib = pstruct::friedrich_sum(&lam, s, &beta, reversed, f).unwrap();
                        assert!(lib.is_zero());
                    }
                }
            }
        }
    }
}

type Mat = Vec<Vec<Scalar>>;

fn mat_mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Scalar::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// gl_n with x^{[p]} = x^p; the p-map of a general element must be the
/// matrix power even though only basis values are stored.
#[test]
fn gl_pmap_is_matrix_power() {
    let gf9 = field_make(3, Some(&[1, 0, 1])).unwrap();
    for (f, n) in [(Field::prime(2), 3), (Field::prime(3), 2), (Field::prime(5), 2), (Field::prime(7), 2), (gf9, 2)] {
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut a = FdAlgebra::new(f, d);
        let unit = |k: usize| {
            let mut v = vec![Scalar::ZERO; d];
            v[k] = Scalar::ONE;
            v
        };
        for (i, j, k, l) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))) {
            if idx(i, j) >= idx(k, l) {
                continue;
            }
            let mut v = vec![Scalar::ZERO; d];
            if j == k {
                v[idx(i, l)] = f.add(v[idx(i, l)], Scalar::ONE);
            }
            if l == i {
                v[idx(k, j)] = f.sub(v[idx(k, j)], Scalar::ONE);
            }
            a.set_bracket(idx(i, j), idx(k, l), v);
        }
        for i in 0..n {
            for j in 0..n {
                a.set_pmap(idx(i, j), if i == j { unit(idx(i, i)) } else { vec![Scalar::ZERO; d] });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = a.random_element(&mut rng);
            let m: Mat = (0..n).map(|i| (0..n).map(|j| x[idx(i, j)]).collect()).collect();
            let mut power = m.clone();
            for _ in 1..f.p() {
                power = mat_mul(&f, &power, &m);
            }
            let want: Vec<Scalar> = power.into_iter().flatten().collect();
            assert_eq!(a.eval_pmap(&x).unwrap(), want, "{f}");
        }
    }
}
