//! Finite-dimensional algebras given by structure constants, and checkers
//! for the restricted Lie, post-Lie and derived notions.
//!
//! Bilinear tables are `t[i][j]`, the product of basis elements `i` and
//! `j`. Maps are matrices acting on coordinate columns.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, add, in_span, is_zero, mat_vec, scale, sub, unit, zeros, Matrix, Vector};
use crate::pstruct::{self, PostLieContext};
use crate::report::{CheckRecord, CheckReport, Tally, Witness};
use crate::scalars::{Field, Scalar};

/// Random instances drawn for every axiom that is not multilinear.
pub const RANDOM_SAMPLES: usize = 200;

/// Largest characteristic in which the sub-adjacent p-map is evaluated.
pub const MAX_FD_PRIME: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdError {
    DimensionMismatch,
    MissingPMap,
    MissingPostLie,
    Singular,
    OutOfRange,
}

impl fmt::Display for FdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FdError::DimensionMismatch => "dimension mismatch",
            FdError::MissingPMap => "algebra has no p-map table",
            FdError::MissingPostLie => "algebra has no post-Lie table",
            FdError::Singular => "matrix is not invertible",
            FdError::OutOfRange => "characteristic out of range",
        })
    }
}

impl core::error::Error for FdError {}

pub type Table = Vec<Vec<Vector>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra {
    pub field: Field,
    pub dim: usize,
    pub names: Vec<String>,
    pub bracket: Table,
    /// e_i^{[p]}
    pub pmap: Option<Vec<Vector>>,
    /// e_i ▶ e_j
    pub postlie: Option<Table>,
}

pub fn zero_table(dim: usize) -> Table {
    vec![vec![zeros(dim); dim]; dim]
}

fn bilinear(f: &Field, t: &Table, x: &[Scalar], y: &[Scalar]) -> Vector {
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

pub fn random_vector(f: &Field, dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..dim).map(|_| f.random(rng)).collect()
}

/// `2·e1 + t·e3`, or `0`.
pub fn fmt_vector(f: &Field, names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if c != Scalar::ONE {
            let s = f.fmt_scalar(c);
            if s.contains('+') {
                out.push_str(&format!("({s})·"));
            } else {
                out.push_str(&format!("{s}·"));
            }
        }
        out.push_str(&names[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// y ↦ f(f(⋯ f(y))) with `n` applications.
fn iterate(n: u32, y: &[Scalar], f: impl Fn(&[Scalar]) -> Vector) -> Vector {
    let mut v = y.to_vec();
    for _ in 0..n {
        v = f(&v);
    }
    v
}

/// Σ_i s_i(x, y), where i·s_i is the λ^{i−1} coefficient of (ad_{λx+y})^{p−1}(x).
pub fn jacobson_sum(f: &Field, br: &dyn Fn(&[Scalar], &[Scalar]) -> Vector, x: &[Scalar], y: &[Scalar]) -> Vector {
    let p = f.p() as usize;
    let n = x.len();
    // ad(λx + y)(x) = [y, x]
    let base = br(y, x);
    if base.iter().all(|c| c.is_zero()) {
        return zeros(n);
    }
    let mut poly: Vec<Vector> = vec![base];
    for _ in 0..p - 2 {
        let mut next = vec![zeros(n); poly.len() + 1];
        for (k, v) in poly.iter().enumerate() {
            next[k] = add(f, &next[k], &br(y, v));
            next[k + 1] = add(f, &next[k + 1], &br(x, v));
        }
        poly = next;
    }
    let mut out = zeros(n);
    for i in 1..p {
        linalg::axpy(f, &mut out, f.inv_int(i as i64), &poly[i - 1]);
    }
    out
}

/// Σ over (x_1, …, x_p) ∈ {x, y}^p with x_{p−1} = y, x_p = x of
/// (1/#x) [x_1, [x_2, ⋯ [x_{p−1}, x_p]]].
pub fn jacobson_sum_explicit(
    f: &Field,
    br: &dyn Fn(&[Scalar], &[Scalar]) -> Vector,
    x: &[Scalar],
    y: &[Scalar],
) -> Vector {
    let p = f.p() as usize;
    let mut out = zeros(x.len());
    let base = br(y, x);
    if p == 2 {
        return base;
    }
    for mask in 0u32..1 << (p - 2) {
        // bit k set: x_{k+1} = x
        let nx = mask.count_ones() as i64 + 1;
        let mut v = base.clone();
        for k in (0..p - 2).rev() {
            v = if mask >> k & 1 == 1 { br(x, &v) } else { br(y, &v) };
        }
        linalg::axpy(f, &mut out, f.inv_int(nx), &v);
    }
    out
}

impl FdAlgebra {
    /// Abelian algebra with basis `e1, …, en` and no further tables.
    pub fn new(field: Field, dim: usize) -> Self {
        FdAlgebra {
            field,
            dim,
            names: (1..=dim).map(|i| format!("e{i}")).collect(),
            bracket: zero_table(dim),
            pmap: None,
            postlie: None,
        }
    }

    /// Sets [e_i, e_j] = v and [e_j, e_i] = −v.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) {
        self.bracket[j][i] = scale(&self.field, self.field.neg(Scalar::ONE), &v);
        self.bracket[i][j] = v;
    }

    pub fn set_pmap(&mut self, i: usize, v: Vector) {
        let dim = self.dim;
        self.pmap.get_or_insert_with(|| vec![zeros(dim); dim])[i] = v;
    }

    pub fn set_triangle(&mut self, i: usize, j: usize, v: Vector) {
        let dim = self.dim;
        self.postlie.get_or_insert_with(|| zero_table(dim))[i][j] = v;
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit(self.dim, i)
    }

    /// Builds a vector from integer coordinates.
    pub fn vector(&self, coords: &[i64]) -> Vector {
        coords.iter().map(|&c| self.field.from_int(c)).collect()
    }

    pub fn fmt(&self, v: &[Scalar]) -> String {
        fmt_vector(&self.field, &self.names, v)
    }

    fn dims(&self, vs: &[&[Scalar]]) -> Result<(), FdError> {
        if vs.iter().all(|v| v.len() == self.dim) {
            Ok(())
        } else {
            Err(FdError::DimensionMismatch)
        }
    }

    pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bilinear(&self.field, &self.bracket, x, y)
    }

    pub(crate) fn tri(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        match &self.postlie {
            Some(t) => bilinear(&self.field, t, x, y),
            None => zeros(self.dim),
        }
    }

    pub fn eval_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, FdError> {
        self.dims(&[x, y])?;
        Ok(self.br(x, y))
    }

    pub fn eval_triangle(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, FdError> {
        self.dims(&[x, y])?;
        if self.postlie.is_none() {
            return Err(FdError::MissingPostLie);
        }
        Ok(self.tri(x, y))
    }

    /// x^{[p]}, extended from the basis by the Jacobson identities,
    /// adding basis components in the given order.
    pub fn eval_pmap_ordered(&self, x: &[Scalar], order: &[usize]) -> Result<Vector, FdError> {
        self.dims(&[x])?;
        let table = self.pmap.as_ref().ok_or(FdError::MissingPMap)?;
        let f = &self.field;
        let br = |a: &[Scalar], b: &[Scalar]| self.br(a, b);
        let mut acc = zeros(self.dim);
        let mut acc_p = zeros(self.dim);
        for &i in order {
            if x[i].is_zero() {
                continue;
            }
            let z = scale(f, x[i], &self.unit(i));
            let zp = scale(f, f.frobenius(x[i]), &table[i]);
            let s = jacobson_sum(f, &br, &acc, &z);
            acc_p = add(f, &add(f, &acc_p, &zp), &s);
            acc = add(f, &acc, &z);
        }
        Ok(acc_p)
    }

    pub fn eval_pmap(&self, x: &[Scalar]) -> Result<Vector, FdError> {
        let order: Vec<usize> = (0..self.dim).collect();
        self.eval_pmap_ordered(x, &order)
    }

    fn pm(&self, x: &[Scalar]) -> Vector {
        self.eval_pmap(x).expect("p-map table present")
    }

    fn context(&self) -> Result<FdContext<'_>, FdError> {
        if self.pmap.is_none() {
            return Err(FdError::MissingPMap);
        }
        if self.postlie.is_none() {
            return Err(FdError::MissingPostLie);
        }
        if self.p() > MAX_FD_PRIME {
            return Err(FdError::OutOfRange);
        }
        Ok(FdContext { alg: self })
    }

    /// x^{[p]▶} evaluated directly from the defining sum.
    pub fn sub_adjacent_pmap(&self, x: &[Scalar]) -> Result<Vector, FdError> {
        self.dims(&[x])?;
        let ctx = self.context()?;
        pstruct::sub_adjacent_pmap(&ctx, &x.to_vec()).map_err(|_| FdError::OutOfRange)
    }

    fn pmt(&self, x: &[Scalar]) -> Vector {
        self.sub_adjacent_pmap(x).expect("tables present")
    }

    /// ⟦x, y⟧ = [x, y] + x▶y − y▶x.
    pub fn sub_adjacent_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        sub(f, &add(f, &self.br(x, y), &self.tri(x, y)), &self.tri(y, x))
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Vector {
        random_vector(&self.field, self.dim, rng)
    }
}

/// The algebra as a [`PostLieContext`] on coordinate vectors.
pub struct FdContext<'a> {
    alg: &'a FdAlgebra,
}

impl PostLieContext for FdContext<'_> {
    type Elt = Vector;
    fn field(&self) -> Field {
        self.alg.field
    }
    fn zero(&self) -> Vector {
        zeros(self.alg.dim)
    }
    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        add(&self.alg.field, a, b)
    }
    fn scale(&self, c: Scalar, a: &Vector) -> Vector {
        scale(&self.alg.field, c, a)
    }
    fn bracket(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.br(a, b)
    }
    fn triangle(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.tri(a, b)
    }
    fn pmap(&self, a: &Vector) -> Vector {
        self.alg.pm(a)
    }
    fn max_prime(&self) -> u32 {
        MAX_FD_PRIME
    }
}

impl FdAlgebra {
    pub fn as_context(&self) -> Result<FdContext<'_>, FdError> {
        self.context()
    }
}

type BinOp<'a> = &'a dyn Fn(&[Scalar], &[Scalar]) -> Vector;
type UnOp<'a> = &'a dyn Fn(&[Scalar]) -> Vector;

/// A Lie bracket and p-map on k^dim given as functions.
pub struct LieOps<'a> {
    pub field: Field,
    pub dim: usize,
    pub names: &'a [String],
    pub bracket: BinOp<'a>,
    pub pmap: UnOp<'a>,
}

/// A post-Lie algebra with both p-maps given as functions.
pub struct PostLieOps<'a> {
    pub field: Field,
    pub dim: usize,
    pub names: &'a [String],
    pub bracket: BinOp<'a>,
    pub triangle: BinOp<'a>,
    /// x^{[p]}
    pub pmap: UnOp<'a>,
    /// x^{[p]▶}
    pub pmap_triangle: UnOp<'a>,
}

struct Checker<'a> {
    field: Field,
    names: &'a [String],
    dim: usize,
    seed: u64,
}

impl Checker<'_> {
    fn fmt(&self, v: &[Scalar]) -> String {
        fmt_vector(&self.field, self.names, v)
    }

    fn basis(&self) -> Vec<Vector> {
        (0..self.dim).map(|i| unit(self.dim, i)).collect()
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn record(&self, t: &mut Tally, lhs: Vector, rhs: Vector, inputs: &[&[Scalar]]) {
        let ok = lhs == rhs;
        t.check(ok, || Witness {
            inputs: inputs.iter().map(|v| self.fmt(v)).collect(),
            lhs: self.fmt(&lhs),
            rhs: self.fmt(&rhs),
        });
    }

    /// Every basis triple.
    fn triples(&self, axiom: &str, eq: impl Fn(&[Scalar], &[Scalar], &[Scalar]) -> (Vector, Vector)) -> CheckRecord {
        let mut t = Tally::new(axiom);
        let b = self.basis();
        for x in &b {
            for y in &b {
                for z in &b {
                    let (l, r) = eq(x, y, z);
                    self.record(&mut t, l, r, &[x, y, z]);
                }
            }
        }
        t.finish(None)
    }

    fn pairs(&self, axiom: &str, eq: impl Fn(&[Scalar], &[Scalar]) -> (Vector, Vector)) -> CheckRecord {
        let mut t = Tally::new(axiom);
        let b = self.basis();
        for x in &b {
            for y in &b {
                let (l, r) = eq(x, y);
                self.record(&mut t, l, r, &[x, y]);
            }
        }
        t.finish(None)
    }

    /// Basis pairs, then [`RANDOM_SAMPLES`] random pairs.
    fn pairs_random(&self, axiom: &str, eq: impl Fn(&[Scalar], &[Scalar]) -> (Vector, Vector)) -> CheckRecord {
        let mut t = Tally::new(axiom);
        let b = self.basis();
        for x in &b {
            for y in &b {
                let (l, r) = eq(x, y);
                self.record(&mut t, l, r, &[x, y]);
            }
        }
        let mut rng = self.rng();
        for _ in 0..RANDOM_SAMPLES {
            let x = random_vector(&self.field, self.dim, &mut rng);
            let y = random_vector(&self.field, self.dim, &mut rng);
            let (l, r) = eq(&x, &y);
            self.record(&mut t, l, r, &[&x, &y]);
        }
        t.finish(Some(self.seed))
    }

    /// Random pairs only.
    fn random_pairs(&self, axiom: &str, eq: impl Fn(&[Scalar], &[Scalar]) -> (Vector, Vector)) -> CheckRecord {
        let mut t = Tally::new(axiom);
        let mut rng = self.rng();
        for _ in 0..RANDOM_SAMPLES {
            let x = random_vector(&self.field, self.dim, &mut rng);
            let y = random_vector(&self.field, self.dim, &mut rng);
            let (l, r) = eq(&x, &y);
            self.record(&mut t, l, r, &[&x, &y]);
        }
        t.finish(Some(self.seed))
    }

    /// Basis vectors, then random vectors.
    fn singles_random(&self, axiom: &str, eq: impl Fn(&[Scalar]) -> (Vector, Vector)) -> CheckRecord {
        let mut t = Tally::new(axiom);
        for x in self.basis() {
            let (l, r) = eq(&x);
            self.record(&mut t, l, r, &[&x]);
        }
        let mut rng = self.rng();
        for _ in 0..RANDOM_SAMPLES {
            let x = random_vector(&self.field, self.dim, &mut rng);
            let (l, r) = eq(&x);
            self.record(&mut t, l, r, &[&x]);
        }
        t.finish(Some(self.seed))
    }
}

fn checker<'a>(field: Field, names: &'a [String], dim: usize, seed: u64) -> Checker<'a> {
    Checker { field, names, dim, seed }
}

/// Alternating bracket and Jacobi identity on basis elements.
pub fn check_lie_ops(ops: &LieOps<'_>) -> CheckReport {
    let c = checker(ops.field, ops.names, ops.dim, 0);
    let f = &ops.field;
    let br = ops.bracket;
    let mut r = CheckReport::new();
    r.push(c.pairs("lie.antisymmetry", |x, y| {
        let l = br(x, y);
        let rr = if x == y { zeros(ops.dim) } else { scale(f, f.neg(Scalar::ONE), &br(y, x)) };
        (l, rr)
    }));
    r.push(c.triples("lie.jacobi", |x, y, z| {
        let s = add(f, &add(f, &br(x, &br(y, z)), &br(y, &br(z, x))), &br(z, &br(x, y)));
        (s, zeros(ops.dim))
    }));
    r
}

/// The restricted-Lie axioms beyond the Lie axioms: p-semilinearity,
/// ad_{x^{[p]}} = (ad_x)^p and the Jacobson identities in both forms.
pub fn check_restricted_ops(ops: &LieOps<'_>, seed: u64) -> CheckReport {
    let c = checker(ops.field, ops.names, ops.dim, seed);
    let f = &ops.field;
    let p = f.p();
    let br = ops.bracket;
    let pm = ops.pmap;
    let mut r = CheckReport::new();
    let mut t = Tally::new("restricted.basis_criterion");
    for x in c.basis() {
        let xp = pm(&x);
        for y in c.basis() {
            let l = br(&xp, &y);
            let rr = iterate(p, &y, |v| br(&x, v));
            c.record(&mut t, l, rr, &[&x, &y]);
        }
    }
    r.push(t.finish(None));
    r.push(c.random_pairs("restricted.semilinear", |x, y| {
        // y supplies the scalar: its first coordinate, or 1 if empty
        let lam = y.first().copied().unwrap_or(Scalar::ONE);
        (pm(&scale(f, lam, x)), scale(f, f.frobenius(lam), &pm(x)))
    }));
    r.push(c.random_pairs("restricted.ad_power", |x, y| {
        (br(&pm(x), y), iterate(p, y, |v| br(x, v)))
    }));
    r.push(c.random_pairs("restricted.jacobson", |x, y| {
        let l = pm(&add(f, x, y));
        let rr = add(f, &add(f, &pm(x), &pm(y)), &jacobson_sum(f, &br, x, y));
        (l, rr)
    }));
    r.push(c.random_pairs("restricted.jacobson_explicit", |x, y| {
        let l = pm(&add(f, x, y));
        let rr = add(f, &add(f, &pm(x), &pm(y)), &jacobson_sum_explicit(f, &br, x, y));
        (l, rr)
    }));
    r
}

pub fn check_lie(a: &FdAlgebra) -> CheckReport {
    let c = checker(a.field, &a.names, a.dim, 0);
    let f = &a.field;
    let ops = LieOps { field: a.field, dim: a.dim, names: &a.names, bracket: &|x, y| a.br(x, y), pmap: &|x| x.to_vec() };
    let mut r = check_lie_ops(&ops);
    // tables must be literally antisymmetric, also on the diagonal
    let mut t = Tally::new("lie.table_antisymmetry");
    for i in 0..a.dim {
        for j in 0..a.dim {
            let l = a.bracket[i][j].clone();
            let rr = scale(f, f.neg(Scalar::ONE), &a.bracket[j][i]);
            let rr = if i == j { zeros(a.dim) } else { rr };
            c.record(&mut t, l, rr, &[&a.unit(i), &a.unit(j)]);
        }
    }
    r.push(t.finish(None));
    r
}

/// Lie axioms, the restricted axioms, and independence of the basis order
/// used to extend the p-map.
pub fn check_restricted(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    if a.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let mut r = check_lie(a);
    let br = |x: &[Scalar], y: &[Scalar]| a.br(x, y);
    let pm = |x: &[Scalar]| a.pm(x);
    let ops = LieOps { field: a.field, dim: a.dim, names: &a.names, bracket: &br, pmap: &pm };
    r.extend(check_restricted_ops(&ops, seed));
    let c = checker(a.field, &a.names, a.dim, seed);
    let rev: Vec<usize> = (0..a.dim).rev().collect();
    r.push(c.random_pairs("restricted.order_independence", |x, _| {
        (a.pm(x), a.eval_pmap_ordered(x, &rev).expect("table present"))
    }));
    Ok(r)
}

/// x▶[y,z] = [x▶y,z] + [y,x▶z] and [x,y]▶z = a(x,y,z) − a(y,x,z).
pub fn check_postlie_ops(field: Field, dim: usize, names: &[String], br: BinOp<'_>, tri: BinOp<'_>) -> CheckReport {
    let c = checker(field, names, dim, 0);
    let f = &field;
    let mut r = CheckReport::new();
    r.push(c.triples("postlie.derivation", |x, y, z| {
        (tri(x, &br(y, z)), add(f, &br(&tri(x, y), z), &br(y, &tri(x, z))))
    }));
    let assoc = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| sub(f, &tri(x, &tri(y, z)), &tri(&tri(x, y), z));
    r.push(c.triples("postlie.associator", |x, y, z| (tri(&br(x, y), z), sub(f, &assoc(x, y, z), &assoc(y, x, z)))));
    r
}

pub fn check_postlie(a: &FdAlgebra) -> Result<CheckReport, FdError> {
    if a.postlie.is_none() {
        return Err(FdError::MissingPostLie);
    }
    Ok(check_postlie_ops(a.field, a.dim, &a.names, &|x, y| a.br(x, y), &|x, y| a.tri(x, y)))
}

/// x^{[p]▶}▶y = x▶(⋯(x▶y)) and y▶x^{[p]} = ad_x^{p−1}(y▶x).
pub fn check_trivially_restricted(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    a.context()?;
    let c = checker(a.field, &a.names, a.dim, seed);
    let p = a.p();
    let mut r = CheckReport::new();
    r.push(c.pairs_random("trivially_restricted.pmap_action", |x, y| {
        (a.tri(&a.pmt(x), y), iterate(p, y, |v| a.tri(x, v)))
    }));
    r.push(c.pairs_random("trivially_restricted.restricted_derivation", |x, y| {
        (a.tri(y, &a.pm(x)), iterate(p - 1, &a.tri(y, x), |v| a.br(x, v)))
    }));
    Ok(r)
}

/// The specialized characteristic-2 axioms:
/// x▶y^{[2]} = [x▶y, y] and x^{[2]}▶y = x▶(x▶y) + (x▶x)▶y.
pub fn check_trivially_restricted_p2(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    a.context()?;
    if a.p() != 2 {
        return Err(FdError::OutOfRange);
    }
    let c = checker(a.field, &a.names, a.dim, seed);
    let f = &a.field;
    let mut r = CheckReport::new();
    r.push(c.pairs_random("p2.pmap_action", |x, y| {
        (a.tri(&a.pm(x), y), add(f, &a.tri(x, &a.tri(x, y)), &a.tri(&a.tri(x, x), y)))
    }));
    r.push(c.pairs_random("p2.restricted_derivation", |x, y| {
        // with the roles of x, y as in the generic check
        (a.tri(y, &a.pm(x)), a.br(&a.tri(y, x), x))
    }));
    Ok(r)
}

/// The specialized characteristic-3 axioms: x▶y^{[3]} = ad_y²(x▶y) and the
/// five-term expansion of x^{[3]}▶y.
pub fn check_trivially_restricted_p3(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    a.context()?;
    if a.p() != 3 {
        return Err(FdError::OutOfRange);
    }
    let c = checker(a.field, &a.names, a.dim, seed);
    let f = &a.field;
    let t = |x: &[Scalar], y: &[Scalar]| a.tri(x, y);
    let mut r = CheckReport::new();
    r.push(c.pairs_random("p3.pmap_action", |x, y| {
        let xx = t(x, x);
        let terms = [
            t(x, &t(x, &t(x, y))),
            scale(f, f.from_int(2), &t(&xx, &t(x, y))),
            t(x, &t(&xx, y)),
            t(&t(&xx, x), y),
            t(&t(x, &xx), y),
        ];
        let rhs = terms.iter().fold(zeros(a.dim), |acc, v| add(f, &acc, v));
        (t(&a.pm(x), y), rhs)
    }));
    r.push(c.pairs_random("p3.restricted_derivation", |x, y| {
        (a.tri(y, &a.pm(x)), a.br(x, &a.br(x, &a.tri(y, x))))
    }));
    Ok(r)
}

/// Restricted Lie algebra, post-Lie algebra, and the two axioms.
pub fn check_trivially_restricted_definition(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    let mut r = check_restricted(a, seed)?;
    r.extend(check_postlie(a)?);
    r.extend(check_trivially_restricted(a, seed)?);
    Ok(r)
}

/// Same as [`check_trivially_restricted_definition`] with the specialized
/// p = 2 or p = 3 axioms.
pub fn check_trivially_restricted_definition_specialized(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    let mut r = check_restricted(a, seed)?;
    r.extend(check_postlie(a)?);
    r.extend(match a.p() {
        2 => check_trivially_restricted_p2(a, seed)?,
        3 => check_trivially_restricted_p3(a, seed)?,
        _ => return Err(FdError::OutOfRange),
    });
    Ok(r)
}

/// The six items of a restricted post-Lie algebra.
pub fn check_restricted_postlie_ops(ops: &PostLieOps<'_>, seed: u64) -> CheckReport {
    let f = &ops.field;
    let p = f.p();
    let (br, tri, pm, pmt) = (ops.bracket, ops.triangle, ops.pmap, ops.pmap_triangle);
    let c = checker(ops.field, ops.names, ops.dim, seed);
    let sbr = |x: &[Scalar], y: &[Scalar]| sub(f, &add(f, &br(x, y), &tri(x, y)), &tri(y, x));
    let mut r = CheckReport::new();

    r.extend_prefixed("item1", check_postlie_ops(ops.field, ops.dim, ops.names, br, tri));

    let lie = LieOps { field: ops.field, dim: ops.dim, names: ops.names, bracket: br, pmap: pm };
    let mut item2 = check_lie_ops(&lie);
    item2.extend(check_restricted_ops(&lie, seed));
    r.extend_prefixed("item2", item2);

    let mut item3 = CheckReport::new();
    item3.push(c.random_pairs("semilinear", |x, y| {
        let lam = y.first().copied().unwrap_or(Scalar::ONE);
        (pmt(&scale(f, lam, x)), scale(f, f.frobenius(lam), &pmt(x)))
    }));
    item3.push(c.random_pairs("jacobson", |x, y| {
        let rhs = add(f, &add(f, &pmt(x), &pmt(y)), &jacobson_sum_explicit(f, &sbr, x, y));
        (pmt(&add(f, x, y)), rhs)
    }));
    r.extend_prefixed("item3", item3);

    r.push({
        let mut rec = c.pairs_random("item4", |x, y| {
            let xp = pmt(x);
            let l = add(f, &br(&xp, y), &tri(&xp, y));
            let rr = add(f, &tri(y, &xp), &iterate(p, y, |v| sbr(x, v)));
            (l, rr)
        });
        rec.axiom = "item4.sub_adjacent_power".into();
        rec
    });

    let mut item5 = CheckReport::new();
    item5.push(c.triples("leibniz", |x, y, z| (tri(x, &br(y, z)), add(f, &br(&tri(x, y), z), &br(y, &tri(x, z))))));
    item5.push(c.pairs_random("pmap", |x, y| (tri(x, &pm(y)), iterate(p - 1, &tri(x, y), |v| br(y, v)))));
    r.extend_prefixed("item5", item5);

    r.push({
        let mut rec = c.pairs_random("item6", |x, y| (tri(&pmt(x), y), iterate(p, y, |v| tri(x, v))));
        rec.axiom = "item6.pmap_action".into();
        rec
    });
    r
}

/// Restricted post-Lie check, with x^{[p]▶} taken from `abstract_pmap` when
/// given and from the defining sum otherwise.
pub fn check_restricted_postlie(a: &FdAlgebra, abstract_pmap: Option<UnOp<'_>>, seed: u64) -> Result<CheckReport, FdError> {
    a.context()?;
    let own = |x: &[Scalar]| a.pmt(x);
    let ops = PostLieOps {
        field: a.field,
        dim: a.dim,
        names: &a.names,
        bracket: &|x, y| a.br(x, y),
        triangle: &|x, y| a.tri(x, y),
        pmap: &|x| a.pm(x),
        pmap_triangle: abstract_pmap.unwrap_or(&own),
    };
    Ok(check_restricted_postlie_ops(&ops, seed))
}

/// (g, ⟦−,−⟧) with the basis p-map e_i^{[p]▶}; no post-Lie table.
pub fn sub_adjacent(a: &FdAlgebra) -> Result<FdAlgebra, FdError> {
    a.context()?;
    let mut s = FdAlgebra::new(a.field, a.dim);
    s.names = a.names.clone();
    for i in 0..a.dim {
        for j in 0..a.dim {
            s.bracket[i][j] = a.sub_adjacent_bracket(&a.unit(i), &a.unit(j));
        }
        s.set_pmap(i, a.pmt(&a.unit(i)));
    }
    Ok(s)
}

/// Restrictedness of the sub-adjacent algebra, both with its p-map
/// extended from the basis and with x^{[p]▶} evaluated directly on every
/// input, and ▶ as a restricted representation of it.
pub fn sub_adjacent_restricted_check(a: &FdAlgebra, seed: u64) -> Result<CheckReport, FdError> {
    let s = sub_adjacent(a)?;
    let f = &a.field;
    let p = a.p();
    let mut r = CheckReport::new();
    r.extend_prefixed("tables", check_restricted(&s, seed)?);
    let direct = LieOps {
        field: a.field,
        dim: a.dim,
        names: &a.names,
        bracket: &|x, y| a.sub_adjacent_bracket(x, y),
        pmap: &|x| a.pmt(x),
    };
    r.extend_prefixed("direct", check_restricted_ops(&direct, seed));
    let c = checker(a.field, &a.names, a.dim, seed);
    let mut rep = CheckReport::new();
    rep.push(c.triples("morphism", |x, y, z| {
        (a.tri(&a.sub_adjacent_bracket(x, y), z), sub(f, &a.tri(x, &a.tri(y, z)), &a.tri(y, &a.tri(x, z))))
    }));
    rep.push(c.pairs_random("pmap", |x, y| (a.tri(&a.pmt(x), y), iterate(p, y, |v| a.tri(x, v)))));
    r.extend_prefixed("representation", rep);
    Ok(r)
}

fn check_square(m: &Matrix, rows: usize, cols: usize) -> Result<(), FdError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(FdError::DimensionMismatch);
    }
    Ok(())
}

/// d[x,y] = [dx,y] + [x,dy] and d(x^{[p]}) = ad_x^{p−1}(dx).
pub fn check_restricted_derivation(a: &FdAlgebra, d: &Matrix, seed: u64) -> Result<CheckReport, FdError> {
    check_square(d, a.dim, a.dim)?;
    if a.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let f = &a.field;
    let p = a.p();
    let c = checker(a.field, &a.names, a.dim, seed);
    let dm = |v: &[Scalar]| mat_vec(f, d, v);
    let mut r = CheckReport::new();
    r.push(c.pairs("derivation.leibniz", |x, y| (dm(&a.br(x, y)), add(f, &a.br(&dm(x), y), &a.br(x, &dm(y))))));
    r.push(c.singles_random("derivation.pmap", |x| (dm(&a.pm(x)), iterate(p - 1, &dm(x), |v| a.br(x, v)))));
    Ok(r)
}

/// φ[x,y] = [φx,φy] and φ(x^{[p]}) = φ(x)^{[p]}.
pub fn check_restricted_morphism(src: &FdAlgebra, dst: &FdAlgebra, phi: &Matrix, seed: u64) -> Result<CheckReport, FdError> {
    check_square(phi, dst.dim, src.dim)?;
    if src.field != dst.field {
        return Err(FdError::DimensionMismatch);
    }
    if src.pmap.is_none() || dst.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let f = &src.field;
    let c = checker(src.field, &src.names, src.dim, seed);
    let ph = |v: &[Scalar]| mat_vec(f, phi, v);
    let mut r = CheckReport::new();
    r.push(c.pairs("morphism.bracket", |x, y| (ph(&src.br(x, y)), dst.br(&ph(x), &ph(y)))));
    r.push(c.singles_random("morphism.pmap", |x| (ph(&src.pm(x)), dst.pm(&ph(x)))));
    Ok(r)
}

/// An action of `acting` on `target`: `action[i][j]` is a_i ▶ x_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModuleDesc {
    pub acting: FdAlgebra,
    pub target: FdAlgebra,
    pub action: Table,
    /// Also enforce the two p-map axioms.
    pub restricted: bool,
}

impl LieModuleDesc {
    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> Vector {
        let f = &self.target.field;
        let mut out = zeros(self.target.dim);
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    linalg::axpy(f, &mut out, f.mul(ai, xj), &self.action[i][j]);
                }
            }
        }
        out
    }
}

/// (g, ad, g).
pub fn adjoint_module(a: &FdAlgebra) -> LieModuleDesc {
    LieModuleDesc { acting: a.clone(), target: a.clone(), action: a.bracket.clone(), restricted: a.pmap.is_some() }
}

fn random_pairs_across(
    f: &Field,
    da: usize,
    dg: usize,
    seed: u64,
    mut each: impl FnMut(&[Scalar], &[Scalar]),
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        let a = random_vector(f, da, &mut rng);
        let x = random_vector(f, dg, &mut rng);
        each(&a, &x);
    }
}

/// The left-module axioms, plus the two p-map axioms when `restricted`.
pub fn check_restricted_module(desc: &LieModuleDesc, seed: u64) -> Result<CheckReport, FdError> {
    let (am, g) = (&desc.acting, &desc.target);
    if am.field != g.field || desc.action.len() != am.dim || desc.action.iter().any(|r| r.len() != g.dim) {
        return Err(FdError::DimensionMismatch);
    }
    let f = &g.field;
    let p = g.p();
    let fa = |v: &[Scalar]| am.fmt(v);
    let fg = |v: &[Scalar]| g.fmt(v);
    let mut r = CheckReport::new();
    let mut t1 = Tally::new("module.derivation");
    let mut t2 = Tally::new("module.representation");
    for i in 0..am.dim {
        let a = am.unit(i);
        for j in 0..g.dim {
            let x = g.unit(j);
            for k in 0..g.dim {
                let y = g.unit(k);
                let l = desc.act(&a, &g.br(&x, &y));
                let rr = add(f, &g.br(&desc.act(&a, &x), &y), &g.br(&x, &desc.act(&a, &y)));
                t1.check(l == rr, || Witness { inputs: vec![fa(&a), fg(&x), fg(&y)], lhs: fg(&l), rhs: fg(&rr) });
            }
            for k in 0..am.dim {
                let b = am.unit(k);
                let l = desc.act(&am.br(&a, &b), &x);
                let rr = sub(f, &desc.act(&a, &desc.act(&b, &x)), &desc.act(&b, &desc.act(&a, &x)));
                t2.check(l == rr, || Witness { inputs: vec![fa(&a), fa(&b), fg(&x)], lhs: fg(&l), rhs: fg(&rr) });
            }
        }
    }
    r.push(t1.finish(None));
    r.push(t2.finish(None));
    if !desc.restricted {
        return Ok(r);
    }
    if am.pmap.is_none() || g.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let mut t3 = Tally::new("module.restricted_derivation");
    let mut t4 = Tally::new("module.restricted_action");
    let mut both = |a: &[Scalar], x: &[Scalar]| {
        let l = desc.act(a, &g.pm(x));
        let rr = iterate(p - 1, &desc.act(a, x), |v| g.br(x, v));
        t3.check(l == rr, || Witness { inputs: vec![fa(a), fg(x)], lhs: fg(&l), rhs: fg(&rr) });
        let l = desc.act(&am.pm(a), x);
        let rr = iterate(p, x, |v| desc.act(a, v));
        t4.check(l == rr, || Witness { inputs: vec![fa(a), fg(x)], lhs: fg(&l), rhs: fg(&rr) });
    };
    for i in 0..am.dim {
        for j in 0..g.dim {
            both(&am.unit(i), &g.unit(j));
        }
    }
    random_pairs_across(f, am.dim, g.dim, seed, &mut both);
    r.push(t3.finish(Some(seed)));
    r.push(t4.finish(Some(seed)));
    Ok(r)
}

/// [θx, θy] = θ([x,y] + θx▶y − θy▶x).
pub fn check_o_operator(desc: &LieModuleDesc, theta: &Matrix) -> Result<CheckReport, FdError> {
    let (am, g) = (&desc.acting, &desc.target);
    check_square(theta, am.dim, g.dim)?;
    let f = &g.field;
    let th = |v: &[Scalar]| mat_vec(f, theta, v);
    let c = checker(g.field, &g.names, g.dim, 0);
    let mut t = Tally::new("o_operator.identity");
    for x in c.basis() {
        for y in c.basis() {
            let l = am.br(&th(&x), &th(&y));
            let inner = sub(f, &add(f, &g.br(&x, &y), &desc.act(&th(&x), &y)), &desc.act(&th(&y), &x));
            let rr = th(&inner);
            t.check(l == rr, || Witness { inputs: vec![g.fmt(&x), g.fmt(&y)], lhs: am.fmt(&l), rhs: am.fmt(&rr) });
        }
    }
    let mut r = CheckReport::new();
    r.push(t.finish(None));
    Ok(r)
}

/// [Rx, Ry] = R([Rx, y] + [x, Ry] + [x, y]).
pub fn check_rota_baxter(a: &FdAlgebra, rb: &Matrix) -> Result<CheckReport, FdError> {
    check_square(rb, a.dim, a.dim)?;
    let f = &a.field;
    let rm = |v: &[Scalar]| mat_vec(f, rb, v);
    let c = checker(a.field, &a.names, a.dim, 0);
    let mut r = CheckReport::new();
    r.push(c.pairs("rota_baxter.identity", |x, y| {
        let inner = add(f, &add(f, &a.br(&rm(x), y), &a.br(x, &rm(y))), &a.br(x, y));
        (a.br(&rm(x), &rm(y)), rm(&inner))
    }));
    Ok(r)
}

/// The target algebra with x ▶_θ y = θ(x) ▶ y.
pub fn induced_postlie(desc: &LieModuleDesc, theta: &Matrix) -> Result<FdAlgebra, FdError> {
    let g = &desc.target;
    check_square(theta, desc.acting.dim, g.dim)?;
    let mut out = g.clone();
    let mut t = zero_table(g.dim);
    for (i, row) in t.iter_mut().enumerate() {
        let th = mat_vec(&g.field, theta, &g.unit(i));
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = desc.act(&th, &g.unit(j));
        }
    }
    out.postlie = Some(t);
    Ok(out)
}

/// θ(x^{[p]▶θ}) = θ(x)^{[p]}.
pub fn check_trivially_restricted_o_operator(desc: &LieModuleDesc, theta: &Matrix, seed: u64) -> Result<CheckReport, FdError> {
    let ind = induced_postlie(desc, theta)?;
    ind.context()?;
    let am = &desc.acting;
    if am.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let f = &ind.field;
    let th = |v: &[Scalar]| mat_vec(f, theta, v);
    let mut t = Tally::new("o_operator.trivially_restricted");
    let mut one = |x: &[Scalar]| {
        let l = th(&ind.pmt(x));
        let rr = am.pm(&th(x));
        t.check(l == rr, || Witness { inputs: vec![ind.fmt(x)], lhs: am.fmt(&l), rhs: am.fmt(&rr) });
    };
    for i in 0..ind.dim {
        one(&ind.unit(i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        let x = ind.random_element(&mut rng);
        one(&x);
    }
    let mut r = CheckReport::new();
    r.push(t.finish(Some(seed)));
    Ok(r)
}

/// (x_1 ⋯ x_n) ▶ y by xE▶y = x▶(E▶y) − (x▶E)▶y, with x▶E by the Leibniz rule.
pub fn env_action(a: &FdAlgebra, word: &[Vector], y: &[Scalar]) -> Result<Vector, FdError> {
    if a.postlie.is_none() {
        return Err(FdError::MissingPostLie);
    }
    if word.iter().any(|w| w.len() != a.dim) || y.len() != a.dim {
        return Err(FdError::DimensionMismatch);
    }
    fn go(a: &FdAlgebra, word: &[Vector], y: &[Scalar]) -> Vector {
        let f = &a.field;
        match word {
            [] => y.to_vec(),
            [x] => a.tri(x, y),
            [x, rest @ ..] => {
                let mut out = a.tri(x, &go(a, rest, y));
                for i in 0..rest.len() {
                    let mut w = rest.to_vec();
                    w[i] = a.tri(x, &rest[i]);
                    out = sub(f, &out, &go(a, &w, y));
                }
                out
            }
        }
    }
    Ok(go(a, word, y))
}

/// D(x)(y) = x▶(⋯(x▶y)) − x^{[p]▶}▶y.
pub fn d_map(a: &FdAlgebra, x: &[Scalar], y: &[Scalar]) -> Result<Vector, FdError> {
    a.context()?;
    a.dims(&[x, y])?;
    let f = &a.field;
    Ok(sub(f, &iterate(a.p(), y, |v| a.tri(x, v)), &a.tri(&a.pmt(x), y)))
}

/// D(x) is a ▶-derivation and commutes with D(y), on the given inputs;
/// D(x)(z) also agrees with (x^p − x^{[p]})▶z computed in the envelope.
pub fn d_check(a: &FdAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<CheckReport, FdError> {
    a.context()?;
    a.dims(&[x, y, z])?;
    let f = &a.field;
    let d = |u: &[Scalar], v: &[Scalar]| d_map(a, u, v).expect("checked");
    let w = |l: Vector, r: Vector, t: &mut Tally| {
        let ok = l == r;
        t.check(ok, || Witness { inputs: vec![a.fmt(x), a.fmt(y), a.fmt(z)], lhs: a.fmt(&l), rhs: a.fmt(&r) });
    };
    let mut r = CheckReport::new();
    let mut t = Tally::new("d.triangle_derivation");
    w(d(x, &a.tri(y, z)), add(f, &a.tri(&d(x, y), z), &a.tri(y, &d(x, z))), &mut t);
    r.push(t.finish(None));
    let mut t = Tally::new("d.commute");
    w(d(x, &d(y, z)), d(y, &d(x, z)), &mut t);
    r.push(t.finish(None));
    let mut t = Tally::new("d.envelope");
    let word = vec![x.to_vec(); a.p() as usize];
    let env = sub(f, &env_action(a, &word, z)?, &a.tri(&a.pm(x), z));
    w(d(x, z), env, &mut t);
    r.push(t.finish(None));
    Ok(r)
}

/// Basis of Z_k: Z_1 = g, Z_{k+1} = [g, Z_k].
pub fn lower_central_series(a: &FdAlgebra, k: usize) -> Vec<Vector> {
    let f = &a.field;
    let mut z: Vec<Vector> = (0..a.dim).map(|i| a.unit(i)).collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for i in 0..a.dim {
            for v in &z {
                next.push(a.br(&a.unit(i), v));
            }
        }
        z = linalg::span_basis(f, &next);
    }
    z
}

pub fn lcs_membership(a: &FdAlgebra, v: &[Scalar], k: usize) -> bool {
    let z = lower_central_series(a, k);
    if z.is_empty() {
        return is_zero(v);
    }
    in_span(&a.field, &z, v)
}

/// Basis of the space of restricted derivations, solved from the linear
/// conditions on basis elements.
pub fn restricted_derivations(a: &FdAlgebra) -> Result<Vec<Matrix>, FdError> {
    if a.pmap.is_none() {
        return Err(FdError::MissingPMap);
    }
    let n = a.dim;
    let f = &a.field;
    let p = a.p();
    // unknown d[r][c] at index r*n + c; each condition is a linear form
    let image = |v: &[Scalar], r: usize| -> Vector {
        // coefficient vector of (d v)_r in the unknowns
        let mut row = zeros(n * n);
        for (c, &vc) in v.iter().enumerate() {
            row[r * n + c] = vc;
        }
        row
    };
    let mut rows: Vec<Vector> = Vec::new();
    // Leibniz: d[e_i,e_j] − [d e_i, e_j] − [e_i, d e_j] = 0
    for i in 0..n {
        for j in 0..n {
            let bij = a.br(&a.unit(i), &a.unit(j));
            for r in 0..n {
                let mut row = image(&bij, r);
                for k in 0..n {
                    // d e_i = Σ_k d[k][i] e_k
                    let c1 = a.br(&a.unit(k), &a.unit(j))[r];
                    let c2 = a.br(&a.unit(i), &a.unit(k))[r];
                    row[k * n + i] = f.sub(row[k * n + i], c1);
                    row[k * n + j] = f.sub(row[k * n + j], c2);
                }
                rows.push(row);
            }
        }
    }
    // d(e_i^{[p]}) − ad_{e_i}^{p−1}(d e_i) = 0
    for i in 0..n {
        let ep = a.pm(&a.unit(i));
        for r in 0..n {
            let mut row = image(&ep, r);
            for k in 0..n {
                let c = iterate(p - 1, &a.unit(k), |v| a.br(&a.unit(i), v))[r];
                row[k * n + i] = f.sub(row[k * n + i], c);
            }
            rows.push(row);
        }
    }
    let ns = linalg::nullspace(f, &rows, n * n);
    Ok(ns.into_iter().map(|v| (0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect()).collect())
}

/// The same algebra in the basis given by the columns of `basis`.
pub fn change_basis(a: &FdAlgebra, basis: &Matrix) -> Result<FdAlgebra, FdError> {
    check_square(basis, a.dim, a.dim)?;
    let f = &a.field;
    let inv = linalg::inverse(f, basis).ok_or(FdError::Singular)?;
    let col = |j: usize| linalg::column(basis, j);
    let back = |v: &[Scalar]| mat_vec(f, &inv, v);
    let mut out = FdAlgebra::new(a.field, a.dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            out.bracket[i][j] = back(&a.br(&col(i), &col(j)));
        }
    }
    if a.pmap.is_some() {
        for i in 0..a.dim {
            out.set_pmap(i, back(&a.pm(&col(i))));
        }
    }
    if a.postlie.is_some() {
        for i in 0..a.dim {
            for j in 0..a.dim {
                out.set_triangle(i, j, back(&a.tri(&col(i), &col(j))));
            }
        }
    }
    Ok(out)
}

/// Which table a mutation touched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Bracket,
    PMap,
    PostLie,
}

/// Every algebra obtained by adding 1 to a single structure constant:
/// a coordinate of [e_i, e_j] for i < j (with [e_j, e_i] kept opposite),
/// of e_i^{[p]}, or of e_i ▶ e_j.
pub fn single_mutations(a: &FdAlgebra) -> impl Iterator<Item = (TableKind, String, FdAlgebra)> + '_ {
    let n = a.dim;
    let mut sites = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            sites.extend((0..n).map(|k| (TableKind::Bracket, i, j, k)));
        }
    }
    if a.pmap.is_some() {
        for i in 0..n {
            sites.extend((0..n).map(|k| (TableKind::PMap, i, 0, k)));
        }
    }
    if a.postlie.is_some() {
        for i in 0..n {
            for j in 0..n {
                sites.extend((0..n).map(|k| (TableKind::PostLie, i, j, k)));
            }
        }
    }
    sites.into_iter().map(move |(kind, i, j, k)| {
        let f = &a.field;
        let bump = |v: &Vector| {
            let mut w = v.clone();
            w[k] = f.add(w[k], Scalar::ONE);
            w
        };
        let mut m = a.clone();
        let what = match kind {
            TableKind::Bracket => {
                m.set_bracket(i, j, bump(&a.bracket[i][j]));
                format!("[{},{}]_{}", a.names[i], a.names[j], a.names[k])
            }
            TableKind::PMap => {
                m.set_pmap(i, bump(&a.pmap.as_ref().expect("checked")[i]));
                format!("{}^[p]_{}", a.names[i], a.names[k])
            }
            TableKind::PostLie => {
                m.set_triangle(i, j, bump(&a.postlie.as_ref().expect("checked")[i][j]));
                format!("{}▶{}_{}", a.names[i], a.names[j], a.names[k])
            }
        };
        (kind, what, m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(mu: i64, gamma: i64, theta: i64) -> FdAlgebra {
        let mut a = FdAlgebra::new(Field::prime(3), 3);
        a.set_bracket(0, 1, a.vector(&[0, 0, 1]));
        a.set_pmap(0, a.vector(&[0, 0, 1]));
        a.set_triangle(0, 0, a.vector(&[0, 0, mu]));
        a.set_triangle(0, 1, a.vector(&[0, 0, gamma]));
        a.set_triangle(1, 0, a.vector(&[0, 0, theta]));
        a
    }

    #[test]
    fn evaluators() {
        let a = heisenberg(1, 0, 2);
        let e = |i| a.unit(i);
        assert_eq!(a.eval_bracket(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(a.eval_triangle(&e(0), &e(0)).unwrap(), e(2));
        assert_eq!(a.eval_pmap(&add(&a.field, &e(0), &e(1))).unwrap(), e(2));
        assert_eq!(a.eval_bracket(&e(0), &[Scalar::ONE]), Err(FdError::DimensionMismatch));
        let plain = FdAlgebra::new(Field::prime(3), 2);
        assert_eq!(plain.eval_pmap(&plain.unit(0)), Err(FdError::MissingPMap));
        assert_eq!(plain.eval_triangle(&plain.unit(0), &plain.unit(1)), Err(FdError::MissingPostLie));
    }

    #[test]
    fn heisenberg_passes() {
        let a = heisenberg(1, 2, 1);
        assert!(check_restricted(&a, 1).unwrap().passed());
        assert!(check_postlie(&a).unwrap().passed());
        assert!(check_trivially_restricted(&a, 1).unwrap().passed());
        assert!(check_trivially_restricted_p3(&a, 1).unwrap().passed());
        let s = sub_adjacent(&a).unwrap();
        // ⟦e1,e2⟧ = (1 + γ − θ) e3
        assert_eq!(s.bracket[0][1], a.vector(&[0, 0, 2]));
        assert!(sub_adjacent_restricted_check(&a, 1).unwrap().passed());
    }

    #[test]
    fn jacobi_mutation_has_witness() {
        let mut a = FdAlgebra::new(Field::prime(3), 3);
        a.set_bracket(0, 1, a.vector(&[0, 0, 1]));
        a.set_bracket(1, 2, a.vector(&[1, 0, 0]));
        a.set_bracket(0, 2, a.vector(&[0, 0, 1]));
        let r = check_lie(&a);
        let rec = r.get("lie.jacobi").unwrap();
        assert!(rec.witness.is_some());
    }

    #[test]
    fn jacobson_forms_agree() {
        // gl_2 over GF(5) and GF(7) with x^{[p]} = x^p
        for p in [2, 3, 5, 7] {
            let f = Field::prime(p);
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            let br = |x: &[Scalar], y: &[Scalar]| {
                let m = |v: &[Scalar]| vec![v[..2].to_vec(), v[2..].to_vec()];
                let (a, b) = (m(x), m(y));
                let c = linalg::mat_sub(&f, &linalg::mat_mul(&f, &a, &b), &linalg::mat_mul(&f, &b, &a));
                c.concat()
            };
            let pw = |x: &[Scalar]| linalg::mat_pow(&f, &vec![x[..2].to_vec(), x[2..].to_vec()], p).concat();
            for _ in 0..20 {
                let x = random_vector(&f, 4, &mut rng);
                let y = random_vector(&f, 4, &mut rng);
                let lhs = pw(&add(&f, &x, &y));
                let base = add(&f, &pw(&x), &pw(&y));
                assert_eq!(lhs, add(&f, &base, &jacobson_sum(&f, &br, &x, &y)), "p={p}");
                assert_eq!(lhs, add(&f, &base, &jacobson_sum_explicit(&f, &br, &x, &y)), "p={p}");
            }
        }
    }

    #[test]
    fn abelian_any_semilinear_map() {
        let f = Field::prime(5);
        let mut a = FdAlgebra::new(f, 2);
        a.set_pmap(0, a.vector(&[2, 3]));
        a.set_pmap(1, a.vector(&[0, 4]));
        assert!(check_restricted(&a, 3).unwrap().passed());
    }

    #[test]
    fn rota_baxter_trivial() {
        let mut a = FdAlgebra::new(Field::prime(3), 3);
        a.set_bracket(0, 1, a.vector(&[0, 0, 1]));
        let z = vec![zeros(3); 3];
        assert!(check_rota_baxter(&a, &z).unwrap().passed());
        let minus: Matrix = linalg::identity(3).iter().map(|r| scale(&a.field, a.field.neg(Scalar::ONE), r)).collect();
        assert!(check_rota_baxter(&a, &minus).unwrap().passed());
        assert!(check_o_operator(&adjoint_module(&a), &minus).unwrap().passed());
    }

    #[test]
    fn env_action_unit() {
        let a = heisenberg(1, 1, 1);
        let y = a.vector(&[1, 2, 0]);
        assert_eq!(env_action(&a, &[], &y).unwrap(), y);
    }

    #[test]
    fn basis_change_roundtrip() {
        let a = heisenberg(2, 1, 0);
        let p = vec![a.vector(&[1, 1, 0]), a.vector(&[0, 1, 0]), a.vector(&[0, 2, 1])];
        let b = change_basis(&a, &p).unwrap();
        assert!(check_trivially_restricted_definition(&b, 4).unwrap().passed());
        let back = change_basis(&b, &linalg::inverse(&a.field, &p).unwrap()).unwrap();
        assert_eq!(back.bracket, a.bracket);
        assert_eq!(back.postlie, a.postlie);
        assert_eq!(back.pmap, a.pmap);
    }
}
