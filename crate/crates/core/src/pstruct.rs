//! Coefficients of the sub-adjacent p-map and its simplified expansions.
//!
//! Everything here is generic over a [`PostLieContext`]; the free envelope
//! and finite-dimensional algebras both implement it.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinat::{act, arrangements, compositions, shuffles};
use crate::freelie::{nested_symbols, LieElt, Symbol};
use crate::freepostlie::{env_triangle, EnvElt};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PstructError {
    OutOfRange,
}

impl fmt::Display for PstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PstructError::OutOfRange => f.write_str("argument out of range"),
        }
    }
}

impl core::error::Error for PstructError {}

/// A post-Lie algebra together with a p-map on its Lie bracket.
pub trait PostLieContext {
    type Elt: Clone + PartialEq;
    fn field(&self) -> Field;
    fn zero(&self) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn scale(&self, c: Scalar, a: &Self::Elt) -> Self::Elt;
    fn bracket(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn triangle(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    /// x^{[p]}
    fn pmap(&self, a: &Self::Elt) -> Self::Elt;
    /// Largest characteristic this context is evaluated in.
    fn max_prime(&self) -> u32;
}

/// The free post-Lie algebra inside its envelope; x^{[p]} is the word x^p.
#[derive(Clone, Copy, Debug)]
pub struct FreeContext {
    pub field: Field,
}

impl PostLieContext for FreeContext {
    type Elt = EnvElt;
    fn field(&self) -> Field {
        self.field
    }
    fn zero(&self) -> EnvElt {
        EnvElt::zero(self.field)
    }
    fn add(&self, a: &EnvElt, b: &EnvElt) -> EnvElt {
        a.add(b)
    }
    fn scale(&self, c: Scalar, a: &EnvElt) -> EnvElt {
        a.scale(c)
    }
    fn bracket(&self, a: &EnvElt, b: &EnvElt) -> EnvElt {
        a.commutator(b)
    }
    fn triangle(&self, a: &EnvElt, b: &EnvElt) -> EnvElt {
        env_triangle(a, b)
    }
    fn pmap(&self, a: &EnvElt) -> EnvElt {
        a.pow(self.field.p())
    }
    fn max_prime(&self) -> u32 {
        5
    }
}

/// C = ∏_{v<n} (ℓ_1 + ⋯ + ℓ_v), reduced into the field.
pub fn coefficient_c(parts: &[u32], field: Field) -> Scalar {
    let mut acc = 0i64;
    let mut c = Scalar::ONE;
    for &l in &parts[..parts.len().saturating_sub(1)] {
        acc += l as i64;
        c = field.mul(c, field.from_int(acc));
    }
    c
}

/// (p−1)! / ∏(ℓ_i − 1)!
fn factorial_ratio(parts: &[u32], field: Field) -> Scalar {
    let den = parts.iter().fold(Scalar::ONE, |acc, &l| field.mul(acc, field.factorial(l - 1)));
    field.div(field.factorial(field.p() - 1), den).expect("factorials below p are units")
}

fn c_inv(parts: &[u32], field: Field) -> Scalar {
    field.inv(coefficient_c(parts, field)).expect("partial sums below p are units")
}

/// (1/n) · (p−1)!/∏(ℓ_i−1)! · C⁻¹, the weight of [x^{•ℓ_1} ⋯ x^{•ℓ_n}].
pub fn pmap_weight(parts: &[u32], field: Field) -> Scalar {
    let n = field.inv_int(parts.len() as i64);
    field.mul(field.mul(n, factorial_ratio(parts, field)), c_inv(parts, field))
}

fn check_prime<C: PostLieContext>(ctx: &C) -> Result<u32, PstructError> {
    let p = ctx.field().p();
    if p > ctx.max_prime() {
        return Err(PstructError::OutOfRange);
    }
    Ok(p)
}

/// `[x^{•1}, …, x^{•p}]`, index 0 unused.
fn bullet_powers<C: PostLieContext>(ctx: &C, x: &C::Elt, p: u32) -> Vec<C::Elt> {
    let mut out = vec![ctx.zero(), x.clone()];
    for k in 2..=p as usize {
        let next = ctx.triangle(x, &out[k - 1]);
        out.push(next);
    }
    out
}

/// Right-nested brackets of bullet powers, memoized on suffixes.
struct Nested<'a, C: PostLieContext> {
    ctx: &'a C,
    bullets: Vec<C::Elt>,
    memo: BTreeMap<Vec<u32>, C::Elt>,
}

impl<C: PostLieContext> Nested<'_, C> {
    fn get(&mut self, parts: &[u32]) -> C::Elt {
        if parts.len() == 1 {
            return self.bullets[parts[0] as usize].clone();
        }
        if let Some(v) = self.memo.get(parts) {
            return v.clone();
        }
        let inner = self.get(&parts[1..]);
        let v = self.ctx.bracket(&self.bullets[parts[0] as usize], &inner);
        self.memo.insert(parts.to_vec(), v.clone());
        v
    }
}

fn weighted_sum<C: PostLieContext>(
    ctx: &C,
    x: &C::Elt,
    p: u32,
    terms: impl Iterator<Item = (Vec<u32>, Scalar)>,
) -> C::Elt {
    let mut nested = Nested { ctx, bullets: bullet_powers(ctx, x, p), memo: BTreeMap::new() };
    let mut acc = ctx.zero();
    for (parts, w) in terms {
        if w.is_zero() {
            continue;
        }
        let b = nested.get(&parts);
        acc = ctx.add(&acc, &ctx.scale(w, &b));
    }
    acc
}

/// x^{[p]▶} = x^{[p]} + Σ_{n<p} (1/n) Σ_ℓ (p−1)!/∏(ℓ_i−1)! · C⁻¹ · [x^{•ℓ_1} ⋯ x^{•ℓ_n}].
pub fn sub_adjacent_pmap<C: PostLieContext>(ctx: &C, x: &C::Elt) -> Result<C::Elt, PstructError> {
    let p = check_prime(ctx)?;
    let f = ctx.field();
    let terms = compositions(p).into_iter().filter(|c| c.len() < p as usize).map(|c| {
        let w = pmap_weight(&c, f);
        (c, w)
    });
    let corr = weighted_sum(ctx, x, p, terms);
    Ok(ctx.add(&ctx.pmap(x), &corr))
}

/// L(x): the part of the sum with n ≥ 2 and some ℓ_j ≥ 2.
pub fn l_closed_form<C: PostLieContext>(ctx: &C, x: &C::Elt) -> Result<C::Elt, PstructError> {
    let p = check_prime(ctx)?;
    let f = ctx.field();
    let terms = compositions(p).into_iter().filter(|c| c.len() >= 2 && c.len() < p as usize).map(|c| {
        let w = pmap_weight(&c, f);
        (c, w)
    });
    Ok(weighted_sum(ctx, x, p, terms))
}

/// C⁻¹(ℓ) + Σ_{s=1}^{n−1} Σ_σ (−1)^{s+1} C⁻¹(σ·ℓ), σ increasing on the
/// first n−s slots, decreasing on the last s, with σ(n−s+1) = n.
fn reversed_shuffle_inner(parts: &[u32], field: Field) -> Scalar {
    let n = parts.len();
    let mut inner = c_inv(parts, field);
    for s in 1..n {
        let sign = if s % 2 == 1 { Scalar::ONE } else { field.neg(Scalar::ONE) };
        for sigma in shuffles(n, s, true) {
            if sigma[n - s] != n - 1 {
                continue;
            }
            inner = field.add(inner, field.mul(sign, c_inv(&act(&sigma, parts), field)));
        }
    }
    inner
}

/// Weight of `[x_ℓ]` in the simplified expansion, for ℓ ending in its
/// strict maximum K occurring m_K times:
/// (1/(m_K·n)) · (p−1)!/∏(ℓ_i−1)! · (reversed shuffle sum).
pub fn expansion_weight(parts: &[u32], field: Field) -> Scalar {
    let n = parts.len();
    let k = parts[n - 1];
    let mk = parts.iter().filter(|&&l| l == k).count();
    let lead = field.inv_int((mk * n) as i64);
    field.mul(field.mul(lead, factorial_ratio(parts, field)), reversed_shuffle_inner(parts, field))
}

/// Tuples with n ≥ 2, ℓ_n ≥ 2, ℓ_n ≥ ℓ_i and ℓ_n > ℓ_{n−1}, generated directly.
pub fn expansion_tuples(p: u32) -> Vec<Vec<u32>> {
    fn prefixes(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 1..=rest.min(max) {
            cur.push(l);
            prefixes(rest - l, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 2..p {
        let mut pre = Vec::new();
        prefixes(p - k, k, &mut Vec::new(), &mut pre);
        for mut c in pre {
            if c.last().is_some_and(|&l| l < k) {
                c.push(k);
                out.push(c);
            }
        }
    }
    out
}

/// x^{[p]} + x^{•p} + Σ_ℓ expansion_weight(ℓ) · [x^{•ℓ_1} ⋯ x^{•ℓ_n}].
pub fn expansion_theorem<C: PostLieContext>(ctx: &C, x: &C::Elt) -> Result<C::Elt, PstructError> {
    let p = check_prime(ctx)?;
    let f = ctx.field();
    let mut terms: Vec<(Vec<u32>, Scalar)> = vec![(vec![p], Scalar::ONE)];
    terms.extend(expansion_tuples(p).into_iter().map(|c| {
        let w = expansion_weight(&c, f);
        (c, w)
    }));
    let corr = weighted_sum(ctx, x, p, terms.into_iter());
    Ok(ctx.add(&ctx.pmap(x), &corr))
}

fn symbols(parts: &[u32]) -> Vec<Symbol> {
    parts.iter().map(|&l| Symbol(l)).collect()
}

/// P_λ = (1/n) (p−1)!/∏(ℓ_i−1)! Σ_{ℓ ∼ λ} C⁻¹_ℓ [x_{ℓ_1} ⋯ x_{ℓ_n}] in the
/// free Lie algebra on symbols x_1, …, x_p (symbol `Symbol(k)` is x_k).
pub fn p_lambda(lam: &[u32], field: Field) -> LieElt {
    let p = field.p();
    let alphabet = p + 1;
    let mut acc = LieElt::zero(field, alphabet);
    if lam.len() >= p as usize {
        // λ = 1^p: every bracket is [x_1, …, x_1] = 0
        return acc;
    }
    for l in arrangements(lam) {
        let b = nested_symbols(field, alphabet, &symbols(&l)).expect("symbols below alphabet");
        acc = acc.add(&b.scale(c_inv(&l, field))).expect("same algebra");
    }
    acc.scale(pmap_weight_without_c(lam, field))
}

fn pmap_weight_without_c(parts: &[u32], field: Field) -> Scalar {
    field.mul(field.inv_int(parts.len() as i64), factorial_ratio(parts, field))
}

/// P_λ regrouped over the arrangements ending in the strict maximum.
pub fn general_p_expansion(lam: &[u32], field: Field) -> Result<LieElt, PstructError> {
    let p = field.p();
    let n = lam.len();
    if n == 0 || lam.iter().sum::<u32>() != p {
        return Err(PstructError::OutOfRange);
    }
    let alphabet = p + 1;
    let k = *lam.iter().max().expect("nonempty");
    let mut acc = LieElt::zero(field, alphabet);
    for l in arrangements(lam) {
        if l[n - 1] != k || (n >= 2 && l[n - 2] >= k) {
            continue;
        }
        let b = nested_symbols(field, alphabet, &symbols(&l)).expect("symbols below alphabet");
        acc = acc.add(&b.scale(expansion_weight(&l, field))).expect("same algebra");
    }
    Ok(acc)
}

/// Σ_{α ∈ Sh(s, n−s)} C⁻¹(αβ·ℓ); with `reversed` the second block of α
/// is decreasing. Vanishes for every composition ℓ of p.
pub fn friedrich_sum(
    ell: &[u32],
    s: usize,
    beta: &[usize],
    reversed: bool,
    field: Field,
) -> Result<Scalar, PstructError> {
    let n = ell.len();
    if n < 2 || !(1..n).contains(&s) || beta.len() != n || ell.iter().sum::<u32>() != field.p() {
        return Err(PstructError::OutOfRange);
    }
    let mut seen = vec![false; n];
    for &b in beta {
        if b >= n || seen[b] {
            return Err(PstructError::OutOfRange);
        }
        seen[b] = true;
    }
    let base = act(beta, ell);
    Ok(shuffles(n, n - s, reversed)
        .iter()
        .fold(Scalar::ZERO, |acc, alpha| field.add(acc, c_inv(&act(alpha, &base), field))))
}

/// λ = 1^{n−1}(p−n+1) as a non-increasing tuple.
pub fn hook_partition(p: u32, n: u32) -> Vec<u32> {
    let mut v = vec![p - n + 1];
    v.extend(core::iter::repeat_n(1, n as usize - 1));
    v
}

/// `sign · [x_1, …, x_1, x_{p−n+1}]` with n−1 copies of x_1.
pub fn hook_bracket(n: u32, sign: Scalar, field: Field) -> LieElt {
    let p = field.p();
    let mut syms = vec![Symbol(1); n as usize - 1];
    syms.push(Symbol(p - n + 1));
    nested_symbols(field, p + 1, &syms).expect("symbols below alphabet").scale(sign)
}

/// Value of P_λ on the hook λ = 1^{n−1}(p−n+1): (−1)^{n−1} [x_1, …, x_1, x_{p−n+1}].
pub fn hook_closed_form(n: u32, field: Field) -> Result<LieElt, PstructError> {
    if n == 0 || n > field.p() {
        return Err(PstructError::OutOfRange);
    }
    let sign = if n % 2 == 1 { Scalar::ONE } else { field.neg(Scalar::ONE) };
    Ok(hook_bracket(n, sign, field))
}
