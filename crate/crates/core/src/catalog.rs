//! Hard-coded example algebras, the tensor construction on k[t]/(t^p),
//! and truncated quasi-shuffle algebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fdalgebra::{self, zero_table, FdAlgebra, FdError, PostLieOps, Table};
use crate::linalg::{self, add, zeros, Matrix, Vector};
use crate::report::{CheckReport, Tally, Witness};
use crate::scalars::{field_make, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownEntry(String),
    BadParams,
    OutOfRange,
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownEntry(n) => write!(f, "unknown catalog entry `{n}`"),
            CatalogError::BadParams => f.write_str("wrong number or range of parameters"),
            CatalogError::OutOfRange => f.write_str("size out of range"),
        }
    }
}

impl core::error::Error for CatalogError {}

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lie,
    Restricted,
    PostLie,
    TriviallyRestricted,
    RestrictedPostLie,
    SubAdjacent,
    Derivations,
    RotaBaxter,
    QuasiShuffle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Lie,
        Suite::Restricted,
        Suite::PostLie,
        Suite::TriviallyRestricted,
        Suite::RestrictedPostLie,
        Suite::SubAdjacent,
        Suite::Derivations,
        Suite::RotaBaxter,
        Suite::QuasiShuffle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lie => "lie",
            Suite::Restricted => "restricted",
            Suite::PostLie => "postlie",
            Suite::TriviallyRestricted => "trivially-restricted",
            Suite::RestrictedPostLie => "restricted-postlie",
            Suite::SubAdjacent => "subadjacent",
            Suite::Derivations => "derivations",
            Suite::RotaBaxter => "rota-baxter",
            Suite::QuasiShuffle => "quasi-shuffle",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

const TRIVIALLY_RESTRICTED: &[Suite] = &[
    Suite::Lie,
    Suite::Restricted,
    Suite::PostLie,
    Suite::TriviallyRestricted,
    Suite::RestrictedPostLie,
    Suite::SubAdjacent,
];

pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub field: &'static str,
    pub summary: &'static str,
    /// The suites every parameter value is claimed to pass.
    pub claims: &'static [Suite],
}

pub static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "dim2-p3-family1",
        params: &["lambda"],
        field: "GF(3)",
        summary: "[e1,e2]=e2, e1^[3]=e1; e1▶e2=-e2, e2▶e2=λe2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "dim2-p3-family2",
        params: &["lambda"],
        field: "GF(3)",
        summary: "[e1,e2]=e2, e1^[3]=e1; e1▶e1=λe2, e1▶e2=e2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "dim2-p3-family3",
        params: &["lambda"],
        field: "GF(3)",
        summary: "same tables as family 2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "dim2-p3-family4",
        params: &["lambda"],
        field: "GF(3)",
        summary: "[e1,e2]=e2, e1^[3]=e1; e1▶e1=λe2, e2▶e1=e2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "dim3-p2-triangle1",
        params: &["alpha", "beta"],
        field: "GF(2)",
        summary: "[e2,e3]=e2, e3^[2]=e3; e3▶e2=αe2, e3▶e3=βe2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "dim3-p2-triangle2",
        params: &["xi"],
        field: "GF(2)",
        summary: "[e2,e3]=e2, e3^[2]=e3; e1▶e3=ξe2",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "heisenberg-p3",
        params: &["mu", "gamma", "theta"],
        field: "GF(3)",
        summary: "[e1,e2]=e3, e1^[3]=e3; e1▶e1=μe3, e1▶e2=γe3, e2▶e1=θe3",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "sl2-p3-gf9",
        params: &[],
        field: "GF(9), t^2=2",
        summary: "sl2 with e_i^[3]=-e_i; e1▶=-ad e1, e2▶=e3▶=-ad((1+t)e2+(2t+1)e3)",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "sl2-p3-gf9-corrected",
        params: &[],
        field: "GF(9), t^2=2",
        summary: "as sl2-p3-gf9 with α = t-1, β = 2t-1",
        claims: TRIVIALLY_RESTRICTED,
    },
    CatalogEntry {
        name: "tensor-witt",
        params: &["p"],
        field: "GF(p), p in {2,3}",
        summary: "k[t]/(t^p) ⊗ Der, (a⊗f)▶(b⊗g) = af(b)⊗g",
        claims: &[
            Suite::Lie,
            Suite::Restricted,
            Suite::PostLie,
            Suite::TriviallyRestricted,
            Suite::RestrictedPostLie,
            Suite::SubAdjacent,
            Suite::Derivations,
        ],
    },
    CatalogEntry {
        name: "quasi-shuffle",
        params: &["p", "N"],
        field: "GF(p), p in {2,3}",
        summary: "Hoffman quasi-shuffle words of weight <= N, N <= 6",
        claims: &[Suite::Lie, Suite::Restricted, Suite::PostLie, Suite::RestrictedPostLie, Suite::QuasiShuffle],
    },
    CatalogEntry {
        name: "n4-rota-baxter",
        params: &["p"],
        field: "GF(p), p in {3,5,7}",
        summary: "strictly upper triangular 4x4 matrices, ▶ from R = -projection onto span(e23,e24,e34)",
        claims: &[Suite::Lie, Suite::Restricted, Suite::PostLie, Suite::RotaBaxter],
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownEntry(name.into()))
}

/// An instantiated entry with the auxiliary data its claims refer to.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: FdAlgebra,
    pub claims: Vec<Suite>,
    pub derivations: Vec<(String, Matrix)>,
    pub rota_baxter: Option<Matrix>,
    pub quasi_shuffle: Option<QuasiShuffleAlgebra>,
}

impl Built {
    fn plain(algebra: FdAlgebra, claims: &[Suite]) -> Self {
        Built { algebra, claims: claims.to_vec(), derivations: Vec::new(), rota_baxter: None, quasi_shuffle: None }
    }
}

fn small_param(params: &[i64], allowed: &[i64]) -> Result<u32, CatalogError> {
    match params {
        [v] if allowed.contains(v) => Ok(*v as u32),
        [_] => Err(CatalogError::OutOfRange),
        _ => Err(CatalogError::BadParams),
    }
}

/// Builds a catalog entry. Parameters are integers, reduced into the
/// entry's field; for `tensor-witt`, `quasi-shuffle` and `n4-rota-baxter`
/// they are sizes.
pub fn catalog_build_full(name: &str, params: &[i64]) -> Result<Built, CatalogError> {
    let e = entry(name)?;
    if params.len() != e.params.len() {
        return Err(CatalogError::BadParams);
    }
    let f3 = Field::prime(3);
    let s = |f: &Field, i: usize| f.from_int(params[i]);
    Ok(match name {
        "dim2-p3-family1" => Built::plain(dim2_p3(1, s(&f3, 0)), e.claims),
        "dim2-p3-family2" => Built::plain(dim2_p3(2, s(&f3, 0)), e.claims),
        "dim2-p3-family3" => Built::plain(dim2_p3(3, s(&f3, 0)), e.claims),
        "dim2-p3-family4" => Built::plain(dim2_p3(4, s(&f3, 0)), e.claims),
        "dim3-p2-triangle1" => {
            let f = Field::prime(2);
            Built::plain(dim3_p2_triangle1(s(&f, 0), s(&f, 1)), e.claims)
        }
        "dim3-p2-triangle2" => Built::plain(dim3_p2_triangle2(s(&Field::prime(2), 0)), e.claims),
        "heisenberg-p3" => Built::plain(heisenberg_p3(s(&f3, 0), s(&f3, 1), s(&f3, 2)), e.claims),
        "sl2-p3-gf9" => Built::plain(sl2_p3_gf9(), e.claims),
        "sl2-p3-gf9-corrected" => Built::plain(sl2_p3_gf9_corrected(), e.claims),
        "tensor-witt" => {
            let p = small_param(params, &[2, 3])?;
            let a = tensor_witt(p)?;
            let mut b = Built::plain(a, e.claims);
            b.derivations = tensor_witt_derivations(&b.algebra);
            b
        }
        "quasi-shuffle" => {
            let p = match params[0] {
                2 | 3 => params[0] as u32,
                _ => return Err(CatalogError::OutOfRange),
            };
            let n = match params[1] {
                1..=6 => params[1] as u32,
                _ => return Err(CatalogError::OutOfRange),
            };
            let q = quasi_shuffle_build(n, Field::prime(p))?;
            let mut b = Built::plain(q.as_fd_algebra(), e.claims);
            b.quasi_shuffle = Some(q);
            b
        }
        "n4-rota-baxter" => {
            let p = small_param(params, &[3, 5, 7])?;
            let (a, r) = n4_rota_baxter(Field::prime(p));
            let mut b = Built::plain(a, e.claims);
            b.rota_baxter = Some(r);
            b
        }
        _ => unreachable!("every entry is handled"),
    })
}

pub fn catalog_build(name: &str, params: &[i64]) -> Result<FdAlgebra, CatalogError> {
    catalog_build_full(name, params).map(|b| b.algebra)
}

/// The listed examples over every parameter value in their prime fields,
/// with tensor-witt for p = 2, 3 and quasi-shuffle for N ≤ 4: (name, params).
pub fn listed_instances() -> Vec<(&'static str, Vec<i64>)> {
    let mut out = Vec::new();
    for name in ["dim2-p3-family1", "dim2-p3-family2", "dim2-p3-family3", "dim2-p3-family4"] {
        for l in 0..3 {
            out.push((name, vec![l]));
        }
    }
    for a in 0..2 {
        for b in 0..2 {
            out.push(("dim3-p2-triangle1", vec![a, b]));
        }
    }
    for x in 0..2 {
        out.push(("dim3-p2-triangle2", vec![x]));
    }
    for m in 0..3 {
        for g in 0..3 {
            for t in 0..3 {
                out.push(("heisenberg-p3", vec![m, g, t]));
            }
        }
    }
    out.push(("sl2-p3-gf9", vec![]));
    out.push(("tensor-witt", vec![2]));
    out.push(("tensor-witt", vec![3]));
    for p in [2, 3] {
        for n in 1..=4 {
            out.push(("quasi-shuffle", vec![p, n]));
        }
    }
    out
}

/// [e1,e2] = e2, e1^{[3]} = e1, e2^{[3]} = 0 over GF(3) with one of the
/// four listed products.
pub fn dim2_p3(family: u32, lambda: Scalar) -> FdAlgebra {
    let f = Field::prime(3);
    let (o, one) = (Scalar::ZERO, Scalar::ONE);
    let m1 = f.neg(one);
    let mut a = FdAlgebra::new(f, 2);
    a.set_bracket(0, 1, a.vector(&[0, 1]));
    a.set_pmap(0, a.vector(&[1, 0]));
    a.set_pmap(1, a.vector(&[0, 0]));
    let (t11, t12, t21, t22) = match family {
        1 => ([o, o], [o, m1], [o, o], [o, lambda]),
        2 | 3 => ([o, lambda], [o, one], [o, o], [o, o]),
        _ => ([o, lambda], [o, o], [o, one], [o, o]),
    };
    a.set_triangle(0, 0, t11.to_vec());
    a.set_triangle(0, 1, t12.to_vec());
    a.set_triangle(1, 0, t21.to_vec());
    a.set_triangle(1, 1, t22.to_vec());
    a
}

/// [e2,e3] = e2, e3^{[2]} = e3, e1^{[2]} = e2^{[2]} = 0 over GF(2).
fn dim3_p2_base() -> FdAlgebra {
    let mut a = FdAlgebra::new(Field::prime(2), 3);
    a.set_bracket(1, 2, a.vector(&[0, 1, 0]));
    a.set_pmap(0, zeros(3));
    a.set_pmap(1, zeros(3));
    a.set_pmap(2, a.vector(&[0, 0, 1]));
    a.set_triangle(0, 0, zeros(3));
    a
}

pub fn dim3_p2_triangle1(alpha: Scalar, beta: Scalar) -> FdAlgebra {
    let mut a = dim3_p2_base();
    a.set_triangle(2, 1, vec![Scalar::ZERO, alpha, Scalar::ZERO]);
    a.set_triangle(2, 2, vec![Scalar::ZERO, beta, Scalar::ZERO]);
    a
}

pub fn dim3_p2_triangle2(xi: Scalar) -> FdAlgebra {
    let mut a = dim3_p2_base();
    a.set_triangle(0, 2, vec![Scalar::ZERO, xi, Scalar::ZERO]);
    a
}

/// Span{e1⊗e1*, e2⊗e2*, e2⊗e3*}, the restricted derivations of the
/// dim3-p2 Lie algebra as listed.
pub fn dim3_p2_listed_derivations() -> Vec<Matrix> {
    let f = Field::prime(2);
    let e = |r: usize, c: usize| {
        let mut m = vec![zeros(3); 3];
        m[r][c] = f.one();
        m
    };
    vec![e(0, 0), e(1, 1), e(1, 2)]
}

pub fn heisenberg_p3(mu: Scalar, gamma: Scalar, theta: Scalar) -> FdAlgebra {
    let mut a = FdAlgebra::new(Field::prime(3), 3);
    let z = Scalar::ZERO;
    a.set_bracket(0, 1, a.vector(&[0, 0, 1]));
    a.set_pmap(0, a.vector(&[0, 0, 1]));
    a.set_pmap(1, zeros(3));
    a.set_pmap(2, zeros(3));
    a.set_triangle(0, 0, vec![z, z, mu]);
    a.set_triangle(0, 1, vec![z, z, gamma]);
    a.set_triangle(1, 0, vec![z, z, theta]);
    a
}

/// GF(9) as GF(3)[t]/(t² − 2).
pub fn gf9() -> Field {
    field_make(3, Some(&[1, 0, 1])).expect("t^2+1 is irreducible mod 3")
}

pub fn sl2_p3_gf9() -> FdAlgebra {
    let f = gf9();
    sl2_p3(f.from_coeffs(&[1, 1]).expect("in range"), f.from_coeffs(&[2, 1]).expect("in range"))
}

/// The same product with α = √2 − 1, β = 2√2 − 1, which is post-Lie.
pub fn sl2_p3_gf9_corrected() -> FdAlgebra {
    let f = gf9();
    sl2_p3(f.from_coeffs(&[1, 2]).expect("in range"), f.from_coeffs(&[2, 2]).expect("in range"))
}

/// sl2 over GF(9) with e_i^{[3]} = −e_i, e1▶y = −[e1, y] and
/// e2▶y = e3▶y = −[αe2 + βe3, y].
pub fn sl2_p3(alpha: Scalar, beta: Scalar) -> FdAlgebra {
    let f = gf9();
    let mut a = FdAlgebra::new(f, 3);
    a.set_bracket(1, 2, a.vector(&[1, 0, 0]));
    a.set_bracket(2, 0, a.vector(&[0, 1, 0]));
    a.set_bracket(0, 1, a.vector(&[0, 0, 1]));
    for i in 0..3 {
        let mut v = zeros(3);
        v[i] = f.neg(f.one());
        a.set_pmap(i, v);
    }
    let u = vec![Scalar::ZERO, alpha, beta];
    let m1 = f.neg(f.one());
    for j in 0..3 {
        let ej = a.unit(j);
        let r1 = linalg::scale(&f, m1, &a.eval_bracket(&a.unit(0), &ej).expect("dims"));
        let r2 = linalg::scale(&f, m1, &a.eval_bracket(&u, &ej).expect("dims"));
        a.set_triangle(0, j, r1);
        a.set_triangle(1, j, r2.clone());
        a.set_triangle(2, j, r2);
    }
    a
}

/// t^i∂ as a p×p matrix on the basis t^0, …, t^{p−1}.
fn witt_operator(f: &Field, p: usize, i: usize) -> Matrix {
    let mut m = vec![zeros(p); p];
    for b in 1..p {
        let k = b + i - 1;
        if k < p {
            m[k][b] = f.from_int(b as i64);
        }
    }
    m
}

/// The derivation with the given matrix, as coordinates on t^i∂; a
/// derivation of k[t]/(t^p) is fixed by its value on t.
fn witt_coords(m: &Matrix) -> Vector {
    linalg::column(m, 1)
}

/// k[t]/(t^p) ⊗ Der(k[t]/(t^p)) on the basis t^a⊗t^i∂, index a·p + i.
pub fn tensor_witt(p: u32) -> Result<FdAlgebra, CatalogError> {
    if !(p == 2 || p == 3) {
        return Err(CatalogError::OutOfRange);
    }
    let f = Field::prime(p);
    let n = p as usize;
    let ops: Vec<Matrix> = (0..n).map(|i| witt_operator(&f, n, i)).collect();
    let mut a = FdAlgebra::new(f, n * n);
    a.names = (0..n * n).map(|k| witt_name(k / n, k % n)).collect();
    let idx = |a: usize, i: usize| a * n + i;
    let put = |coeff: &Vector, deg: usize| {
        // t^deg ⊗ Σ_k coeff[k] t^k∂
        let mut v = zeros(n * n);
        if deg < n {
            for k in 0..n {
                v[idx(deg, k)] = coeff[k];
            }
        }
        v
    };
    for (a1, i) in (0..n).flat_map(|a1| (0..n).map(move |i| (a1, i))) {
        for (b1, j) in (0..n).flat_map(|b1| (0..n).map(move |j| (b1, j))) {
            let comm = linalg::mat_sub(&f, &linalg::mat_mul(&f, &ops[i], &ops[j]), &linalg::mat_mul(&f, &ops[j], &ops[i]));
            a.bracket[idx(a1, i)][idx(b1, j)] = put(&witt_coords(&comm), a1 + b1);
            // t^{a1} · (t^i∂)(t^{b1}) ⊗ t^j∂
            let image = linalg::column(&ops[i], b1);
            let mut v = zeros(n * n);
            for (deg, &c) in image.iter().enumerate() {
                if !c.is_zero() && a1 + deg < n {
                    v[idx(a1 + deg, j)] = f.add(v[idx(a1 + deg, j)], c);
                }
            }
            a.set_triangle(idx(a1, i), idx(b1, j), v);
        }
        let pow = witt_coords(&linalg::mat_pow(&f, &ops[i], p));
        let deg = if a1 == 0 { 0 } else { n };
        a.set_pmap(idx(a1, i), put(&pow, deg));
    }
    Ok(a)
}

fn witt_name(a: usize, i: usize) -> String {
    let t = |k: usize| match k {
        0 => String::from("1"),
        1 => String::from("t"),
        k => format!("t{k}"),
    };
    let d = match i {
        0 => String::from("d"),
        1 => String::from("td"),
        i => format!("t{i}d"),
    };
    format!("{}⊗{}", t(a), d)
}

/// d_{a,f}(b⊗g) = af(b)⊗g for every pair of basis elements a, f.
pub fn tensor_witt_derivations(a: &FdAlgebra) -> Vec<(String, Matrix)> {
    (0..a.dim)
        .map(|k| {
            let cols: Vec<Vector> = (0..a.dim).map(|j| a.eval_triangle(&a.unit(k), &a.unit(j)).expect("table")).collect();
            (format!("d[{}]", a.names[k]), linalg::from_columns(&cols, a.dim))
        })
        .collect()
}

/// Strictly upper triangular 4×4 matrices with x^{[p]} = x^p, and the
/// Rota–Baxter operator R = −(projection onto span(e23, e24, e34) along
/// span(e12, e13, e14)), whose induced product x▶y = [Rx, y] is attached.
pub fn n4_rota_baxter(f: Field) -> (FdAlgebra, Matrix) {
    let pos = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut a = FdAlgebra::new(f, 6);
    a.names = pos.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    for (x, &(i, j)) in pos.iter().enumerate() {
        for (y, &(k, l)) in pos.iter().enumerate() {
            // E_ij E_kl − E_kl E_ij
            let mut v = zeros(6);
            if j == k {
                let z = pos.iter().position(|&q| q == (i, l)).expect("upper");
                v[z] = f.add(v[z], f.one());
            }
            if l == i {
                let z = pos.iter().position(|&q| q == (k, j)).expect("upper");
                v[z] = f.sub(v[z], f.one());
            }
            a.bracket[x][y] = v;
        }
        a.set_pmap(x, zeros(6));
    }
    let mut r = vec![zeros(6); 6];
    for k in 3..6 {
        r[k][k] = f.neg(f.one());
    }
    let desc = fdalgebra::adjoint_module(&a);
    let a = fdalgebra::induced_postlie(&desc, &r).expect("square");
    (a, r)
}

/// A weight-graded word over letters z_1, z_2, …; `[2, 1]` is z₂z₁.
pub type Word = Vec<u32>;

fn weight(w: &[u32]) -> u32 {
    w.iter().sum()
}

/// Truncated Hoffman quasi-shuffle algebra.
#[derive(Clone, Debug)]
pub struct QuasiShuffleAlgebra {
    pub n: u32,
    pub field: Field,
    /// Nonempty words of weight ≤ n.
    pub words: Vec<Word>,
    pub prec: Table,
    pub succ: Table,
    pub dot: Table,
}

type WordSum = BTreeMap<Word, i64>;

struct QsBuilder {
    n: u32,
    memo: BTreeMap<(Word, Word), WordSum>,
}

fn merge(into: &mut WordSum, from: &WordSum, c: i64) {
    for (w, &k) in from {
        *into.entry(w.clone()).or_insert(0) += c * k;
    }
}

fn prepend(letter: u32, s: &WordSum) -> WordSum {
    s.iter()
        .map(|(w, &c)| {
            let mut v = vec![letter];
            v.extend_from_slice(w);
            (v, c)
        })
        .collect()
}

impl QsBuilder {
    fn cut(&self, s: WordSum) -> WordSum {
        s.into_iter().filter(|(w, c)| *c != 0 && weight(w) <= self.n).collect()
    }

    fn single(w: &[u32]) -> WordSum {
        let mut s = WordSum::new();
        s.insert(w.to_vec(), 1);
        s
    }

    /// u ⋆ v, with the empty word as unit.
    fn star(&mut self, u: &[u32], v: &[u32]) -> WordSum {
        if u.is_empty() {
            return Self::single(v);
        }
        if v.is_empty() {
            return Self::single(u);
        }
        if weight(u) + weight(v) > self.n {
            return WordSum::new();
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let mut out = self.prec(u, v);
        let s = self.succ(u, v);
        merge(&mut out, &s, 1);
        let d = self.dot(u, v);
        merge(&mut out, &d, 1);
        let out = self.cut(out);
        self.memo.insert(key, out.clone());
        out
    }

    fn prec(&mut self, u: &[u32], v: &[u32]) -> WordSum {
        let s = self.star(&u[1..], v);
        self.cut(prepend(u[0], &s))
    }

    fn succ(&mut self, u: &[u32], v: &[u32]) -> WordSum {
        let s = self.star(u, &v[1..]);
        self.cut(prepend(v[0], &s))
    }

    fn dot(&mut self, u: &[u32], v: &[u32]) -> WordSum {
        let s = self.star(&u[1..], &v[1..]);
        self.cut(prepend(u[0] + v[0], &s))
    }
}

/// The four products of two words, as integer combinations of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QsProducts {
    pub prec: WordSum,
    pub succ: WordSum,
    pub dot: WordSum,
    pub star: WordSum,
}

/// Products of nonempty words of weight ≤ `n`, truncated at weight `n`.
pub fn qs_products(n: u32, u: &[u32], v: &[u32]) -> Result<QsProducts, CatalogError> {
    if u.is_empty() || v.is_empty() || u.contains(&0) || v.contains(&0) {
        return Err(CatalogError::BadParams);
    }
    let mut b = QsBuilder { n, memo: BTreeMap::new() };
    Ok(QsProducts { prec: b.prec(u, v), succ: b.succ(u, v), dot: b.dot(u, v), star: b.star(u, v) })
}

fn compositions_upto(n: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for w in 1..=n {
        out.extend(crate::combinat::compositions(w));
    }
    out
}

pub fn quasi_shuffle_build(n: u32, field: Field) -> Result<QuasiShuffleAlgebra, CatalogError> {
    if n == 0 || n > 6 {
        return Err(CatalogError::OutOfRange);
    }
    let words = compositions_upto(n);
    let index: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = words.len();
    let mut b = QsBuilder { n, memo: BTreeMap::new() };
    let to_vec = |s: &WordSum| {
        let mut v = zeros(dim);
        for (w, &c) in s {
            v[index[w]] = field.add(v[index[w]], field.from_int(c));
        }
        v
    };
    let (mut prec, mut succ, mut dot) = (zero_table(dim), zero_table(dim), zero_table(dim));
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            prec[i][j] = to_vec(&b.prec(u, v));
            succ[i][j] = to_vec(&b.succ(u, v));
            dot[i][j] = to_vec(&b.dot(u, v));
        }
    }
    Ok(QuasiShuffleAlgebra { n, field, words, prec, succ, dot })
}

fn bil(f: &Field, t: &Table, x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = zeros(x.len());
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                linalg::axpy(f, &mut out, f.mul(xi, yj), &t[i][j]);
            }
        }
    }
    out
}

impl QuasiShuffleAlgebra {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.iter().map(|l| format!("z{l}")).collect::<Vec<_>>().join(""))
            .collect()
    }

    pub fn prec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bil(&self.field, &self.prec, x, y)
    }

    pub fn succ(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bil(&self.field, &self.succ, x, y)
    }

    pub fn dot(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bil(&self.field, &self.dot, x, y)
    }

    pub fn star(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        add(f, &add(f, &self.prec(x, y), &self.succ(x, y)), &self.dot(x, y))
    }

    /// a ▶ b = b ≺ a − a ≻ b.
    pub fn triangle(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        linalg::sub(&self.field, &self.prec(b, a), &self.succ(a, b))
    }

    /// [a, b]_· = a·b − b·a.
    pub fn dot_bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        linalg::sub(&self.field, &self.dot(a, b), &self.dot(b, a))
    }

    fn power(&self, x: &[Scalar], mul: impl Fn(&[Scalar], &[Scalar]) -> Vector) -> Vector {
        let mut v = x.to_vec();
        for _ in 1..self.field.p() {
            v = mul(&v, x);
        }
        v
    }

    pub fn star_power(&self, x: &[Scalar]) -> Vector {
        self.power(x, |a, b| self.star(a, b))
    }

    pub fn dot_power(&self, x: &[Scalar]) -> Vector {
        self.power(x, |a, b| self.dot(a, b))
    }

    /// The tables (A, [−,−]_·, ▶) with x^{[p]} = x^{·p} on the basis.
    pub fn as_fd_algebra(&self) -> FdAlgebra {
        let n = self.dim();
        let mut a = FdAlgebra::new(self.field, n);
        a.names = self.names();
        for i in 0..n {
            let ei = a.unit(i);
            for j in 0..n {
                let ej = a.unit(j);
                a.bracket[i][j] = self.dot_bracket(&ei, &ej);
                a.set_triangle(i, j, self.triangle(&ei, &ej));
            }
            a.set_pmap(i, self.dot_power(&ei));
        }
        a
    }

    /// The six defining relations and associativity of · and ⋆, on all
    /// basis triples; L_x^p = L_{x⋆p} and R_x^p = R_{x⋆p} on basis and
    /// random elements.
    pub fn check_axioms(&self, seed: u64) -> CheckReport {
        let f = &self.field;
        let names = self.names();
        let n = self.dim();
        let fmt = |v: &[Scalar]| fdalgebra::fmt_vector(f, &names, v);
        type Rel<'a> = (&'a str, &'a dyn Fn(&[Scalar], &[Scalar], &[Scalar]) -> (Vector, Vector));
        let rels: [Rel<'_>; 8] = [
            ("qs.prec_prec", &|a, b, c| (self.prec(&self.prec(a, b), c), self.prec(a, &self.star(b, c)))),
            ("qs.succ_succ", &|a, b, c| (self.succ(a, &self.succ(b, c)), self.succ(&self.star(a, b), c))),
            ("qs.succ_prec", &|a, b, c| (self.prec(&self.succ(a, b), c), self.succ(a, &self.prec(b, c)))),
            ("qs.dot_prec", &|a, b, c| (self.prec(&self.dot(a, b), c), self.dot(a, &self.prec(b, c)))),
            ("qs.succ_dot", &|a, b, c| (self.dot(&self.succ(a, b), c), self.succ(a, &self.dot(b, c)))),
            ("qs.dot_succ", &|a, b, c| (self.dot(a, &self.succ(b, c)), self.dot(&self.prec(a, b), c))),
            ("qs.dot_assoc", &|a, b, c| (self.dot(&self.dot(a, b), c), self.dot(a, &self.dot(b, c)))),
            ("qs.star_assoc", &|a, b, c| (self.star(&self.star(a, b), c), self.star(a, &self.star(b, c)))),
        ];
        let mut r = CheckReport::new();
        let basis: Vec<Vector> = (0..n).map(|i| linalg::unit(n, i)).collect();
        for (name, rel) in rels {
            let mut t = Tally::new(name);
            for a in &basis {
                for b in &basis {
                    for c in &basis {
                        let (l, rr) = rel(a, b, c);
                        t.check(l == rr, || Witness { inputs: vec![fmt(a), fmt(b), fmt(c)], lhs: fmt(&l), rhs: fmt(&rr) });
                    }
                }
            }
            r.push(t.finish(None));
        }
        let p = f.p();
        let mut lt = Tally::new("qs.left_power");
        let mut rt = Tally::new("qs.right_power");
        let mut lr = Tally::new("qs.lr_commute");
        let mut one = |x: &[Scalar], y: &[Scalar]| {
            let xp = self.star_power(x);
            let mut l = y.to_vec();
            let mut rr = y.to_vec();
            for _ in 0..p {
                l = self.prec(&l, x);
                rr = self.succ(x, &rr);
            }
            let lp = self.prec(y, &xp);
            lt.check(l == lp, || Witness { inputs: vec![fmt(x), fmt(y)], lhs: fmt(&l), rhs: fmt(&lp) });
            let rp = self.succ(&xp, y);
            rt.check(rr == rp, || Witness { inputs: vec![fmt(x), fmt(y)], lhs: fmt(&rr), rhs: fmt(&rp) });
            let a = self.prec(&self.succ(x, y), x);
            let b = self.succ(x, &self.prec(y, x));
            lr.check(a == b, || Witness { inputs: vec![fmt(x), fmt(y)], lhs: fmt(&a), rhs: fmt(&b) });
        };
        for x in &basis {
            for y in &basis {
                one(x, y);
            }
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..fdalgebra::RANDOM_SAMPLES {
            let x = fdalgebra::random_vector(f, n, &mut rng);
            let y = fdalgebra::random_vector(f, n, &mut rng);
            one(&x, &y);
        }
        r.push(lt.finish(Some(seed)));
        r.push(rt.finish(Some(seed)));
        r.push(lr.finish(Some(seed)));
        r
    }
}

/// The restricted post-Lie check of (A, ▶, (−)^{⋆p}, [−,−]_·, (−)^{·p}).
pub fn qs_restricted_postlie_check(q: &QuasiShuffleAlgebra, seed: u64) -> CheckReport {
    let names = q.names();
    let ops = PostLieOps {
        field: q.field,
        dim: q.dim(),
        names: &names,
        bracket: &|x, y| q.dot_bracket(x, y),
        triangle: &|x, y| q.triangle(x, y),
        pmap: &|x| q.dot_power(x),
        pmap_triangle: &|x| q.star_power(x),
    };
    fdalgebra::check_restricted_postlie_ops(&ops, seed)
}

/// Runs `suites` on `a`. Suites that need auxiliary data take it from
/// `built`; the quasi-shuffle p-map x^{⋆p} comes from `built` as well.
pub fn run_suites(a: &FdAlgebra, suites: &[Suite], built: &Built, seed: u64) -> Result<CheckReport, FdError> {
    let mut r = CheckReport::new();
    for &s in suites {
        let part = match s {
            Suite::Lie => fdalgebra::check_lie(a),
            Suite::Restricted => fdalgebra::check_restricted(a, seed)?,
            Suite::PostLie => fdalgebra::check_postlie(a)?,
            Suite::TriviallyRestricted => fdalgebra::check_trivially_restricted(a, seed)?,
            Suite::RestrictedPostLie => match &built.quasi_shuffle {
                Some(q) => {
                    let star = |x: &[Scalar]| q.star_power(x);
                    fdalgebra::check_restricted_postlie(a, Some(&star), seed)?
                }
                None => fdalgebra::check_restricted_postlie(a, None, seed)?,
            },
            Suite::SubAdjacent => fdalgebra::sub_adjacent_restricted_check(a, seed)?,
            Suite::Derivations => {
                let mut d = CheckReport::new();
                for (name, m) in &built.derivations {
                    d.extend_prefixed(name, fdalgebra::check_restricted_derivation(a, m, seed)?);
                }
                d
            }
            Suite::RotaBaxter => {
                let mut d = CheckReport::new();
                if let Some(rb) = &built.rota_baxter {
                    d.extend(fdalgebra::check_rota_baxter(a, rb)?);
                    let ind = fdalgebra::induced_postlie(&fdalgebra::adjoint_module(a), rb)?;
                    let mut t = Tally::new("rota_baxter.induced_product");
                    let same = ind.postlie == a.postlie;
                    t.check(same, || Witness {
                        inputs: vec![],
                        lhs: String::from("attached ▶ table"),
                        rhs: String::from("x▶y = [Rx, y]"),
                    });
                    d.push(t.finish(None));
                }
                d
            }
            Suite::QuasiShuffle => match &built.quasi_shuffle {
                Some(q) => q.check_axioms(seed),
                None => CheckReport::new(),
            },
        };
        r.extend_prefixed(s.name(), part);
    }
    Ok(r)
}

/// Runs the claimed suites of a built entry.
pub fn check_claims(built: &Built, seed: u64) -> Result<CheckReport, FdError> {
    run_suites(&built.algebra, &built.claims, built, seed)
}

/// First failing check among `suites` on `a`, stopping after the first
/// suite that fails.
pub fn first_failure(a: &FdAlgebra, suites: &[Suite], built: &Built, seed: u64) -> Option<(String, Witness)> {
    for &s in suites {
        let Ok(r) = run_suites(a, &[s], built, seed) else {
            return Some((String::from(s.name()), Witness { inputs: vec![], lhs: String::from("error"), rhs: String::new() }));
        };
        let fail = r.failures().next().map(|rec| {
            let w = rec.witness.clone().unwrap_or(Witness { inputs: vec![], lhs: String::new(), rhs: String::new() });
            (rec.axiom.clone(), w)
        });
        if fail.is_some() {
            return fail;
        }
    }
    None
}

/// −id, an O-operator on the adjoint module of any Lie algebra.
pub fn minus_identity(a: &FdAlgebra) -> Matrix {
    let f = &a.field;
    linalg::identity(a.dim).iter().map(|r| linalg::scale(f, f.neg(f.one()), r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &WordSum) -> Vec<(Word, i64)> {
        s.iter().map(|(w, &c)| (w.clone(), c)).collect()
    }

    #[test]
    fn qs_small_products() {
        let p = qs_products(4, &[1], &[1]).unwrap();
        assert_eq!(word(&p.dot), vec![(vec![2], 1)]);
        assert_eq!(word(&p.prec), vec![(vec![1, 1], 1)]);
        assert_eq!(word(&p.star), vec![(vec![1, 1], 2), (vec![2], 1)]);
        assert!(qs_products(1, &[1], &[1]).unwrap().star.is_empty());
    }

    #[test]
    fn qs_axioms_hold() {
        for p in [2, 3] {
            let q = quasi_shuffle_build(4, Field::prime(p)).unwrap();
            assert_eq!(q.dim(), 15);
            assert!(q.check_axioms(1).passed());
            assert!(qs_restricted_postlie_check(&q, 1).passed());
        }
    }

    #[test]
    fn qs_star_square_z1() {
        let q = quasi_shuffle_build(4, Field::prime(2)).unwrap();
        let z1 = linalg::unit(q.dim(), 0);
        let z2 = q.words.iter().position(|w| w == &vec![2]).unwrap();
        assert_eq!(q.star_power(&z1), linalg::unit(q.dim(), z2));
    }

    #[test]
    fn witt_small() {
        let a = tensor_witt(2).unwrap();
        assert_eq!(a.dim, 4);
        let f = a.field;
        // (t∂)² = t∂ and ∂² = 0
        let pm = a.pmap.as_ref().unwrap();
        assert_eq!(pm[1], linalg::unit(4, 1));
        assert_eq!(pm[0], zeros(4));
        // [∂, t∂] = ∂
        assert_eq!(a.bracket[0][1], linalg::unit(4, 0));
        let _ = f;
    }

    #[test]
    fn listed_tables() {
        let a = catalog_build("dim2-p3-family1", &[1]).unwrap();
        let t = a.postlie.as_ref().unwrap();
        assert_eq!(t[0][1], a.vector(&[0, -1]));
        assert_eq!(t[1][1], a.vector(&[0, 1]));
        assert_eq!(a.sub_adjacent_pmap(&a.unit(0)).unwrap(), a.unit(0));
        let s = catalog_build("sl2-p3-gf9", &[]).unwrap();
        assert_eq!(s.field.order(), 9);
        assert!(matches!(catalog_build("nope", &[]), Err(CatalogError::UnknownEntry(_))));
        assert_eq!(catalog_build("heisenberg-p3", &[1]).unwrap_err(), CatalogError::BadParams);
        assert_eq!(catalog_build("tensor-witt", &[5]).unwrap_err(), CatalogError::OutOfRange);
    }

    #[test]
    fn rota_baxter_entry() {
        let b = catalog_build_full("n4-rota-baxter", &[3]).unwrap();
        assert!(check_claims(&b, 2).unwrap().passed());
    }

    #[test]
    fn dim3_derivations() {
        let a = dim3_p2_triangle1(Scalar::ZERO, Scalar::ZERO);
        let solved = fdalgebra::restricted_derivations(&a).unwrap();
        let listed = dim3_p2_listed_derivations();
        let flat = |ms: &[Matrix]| ms.iter().map(|m| m.concat()).collect::<Vec<_>>();
        let f = a.field;
        assert_eq!(solved.len(), listed.len());
        for m in flat(&listed) {
            assert!(linalg::in_span(&f, &flat(&solved), &m));
        }
    }
}
