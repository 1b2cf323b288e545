//! The free post-Lie algebra on one generator `•`: planar rooted trees,
//! its envelope (words of trees), the extended product ▶, the star
//! product and corolla-forest combinatorics.
//!
//! Grafting is root-only: `t1 ▶ t2` attaches `t1` as the new leftmost
//! child of the root of `t2`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinat::{compositions, factorial, permutations};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeError {
    OutOfRange,
    NotCorollaForest,
    /// Byte offset of the first bad character.
    Parse(usize),
}

impl fmt::Display for FreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeError::OutOfRange => f.write_str("argument out of range"),
            FreeError::NotCorollaForest => f.write_str("forest contains a tree of depth > 1"),
            FreeError::Parse(at) => write!(f, "malformed tree string at offset {at}"),
        }
    }
}

impl core::error::Error for FreeError {}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    pub children: Vec<PlanarTree>,
}

impl PlanarTree {
    /// The single node `•`.
    pub fn node() -> Self {
        PlanarTree { children: Vec::new() }
    }

    pub fn corolla(leaves: usize) -> Self {
        PlanarTree { children: vec![PlanarTree::node(); leaves] }
    }

    pub fn chain(n: usize) -> Self {
        let mut t = PlanarTree::node();
        for _ in 1..n {
            t = PlanarTree { children: vec![t] };
        }
        t
    }

    pub fn nodes(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::nodes).sum::<usize>()
    }

    pub fn is_corolla(&self) -> bool {
        self.children.iter().all(|c| c.children.is_empty())
    }

    pub fn parse(s: &str) -> Result<Self, FreeError> {
        let f = Forest::parse(s)?;
        match <[PlanarTree; 1]>::try_from(f.0) {
            Ok([t]) => Ok(t),
            Err(_) => Err(FreeError::Parse(0)),
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A word of trees; the empty forest is the envelope unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(pub Vec<PlanarTree>);

impl Forest {
    pub fn unit() -> Self {
        Forest(Vec::new())
    }

    pub fn nodes(&self) -> usize {
        self.0.iter().map(PlanarTree::nodes).sum()
    }

    pub fn concat(&self, o: &Forest) -> Forest {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Forest(v)
    }

    /// Nested-parentheses format: `(()())` is a root with two leaves,
    /// `()()` two single nodes; the empty string is the unit.
    pub fn parse(s: &str) -> Result<Self, FreeError> {
        let bytes = s.as_bytes();
        let mut stack: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => stack.push(Vec::new()),
                b')' => {
                    if stack.len() < 2 {
                        return Err(FreeError::Parse(i));
                    }
                    let children = stack.pop().expect("checked");
                    stack.last_mut().expect("checked").push(PlanarTree { children });
                }
                _ => return Err(FreeError::Parse(i)),
            }
        }
        if stack.len() != 1 {
            return Err(FreeError::Parse(bytes.len()));
        }
        Ok(Forest(stack.pop().expect("checked")))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn graft(t1: &PlanarTree, t2: &PlanarTree) -> PlanarTree {
    let mut t = t2.clone();
    t.children.insert(0, t1.clone());
    t
}

type Terms = BTreeMap<Forest, Scalar>;

fn add_term(f: &Field, t: &mut Terms, k: Forest, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = f.add(*e.get(), c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn add_scaled(f: &Field, acc: &mut Terms, c: Scalar, t: &Terms) {
    if c.is_zero() {
        return;
    }
    for (k, &v) in t {
        add_term(f, acc, k.clone(), f.mul(c, v));
    }
}

/// Element of the envelope: a linear combination of forests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElt {
    field: Field,
    terms: Terms,
}

impl EnvElt {
    pub fn zero(field: Field) -> Self {
        EnvElt { field, terms: Terms::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::forest(field, Forest::unit())
    }

    pub fn forest(field: Field, f: Forest) -> Self {
        let mut terms = Terms::new();
        terms.insert(f, Scalar::ONE);
        EnvElt { field, terms }
    }

    pub fn tree(field: Field, t: PlanarTree) -> Self {
        Self::forest(field, Forest(vec![t]))
    }

    /// The generator `•`.
    pub fn x(field: Field) -> Self {
        Self::tree(field, PlanarTree::node())
    }

    pub fn from_terms(field: Field, it: impl IntoIterator<Item = (Forest, Scalar)>) -> Self {
        let mut terms = Terms::new();
        for (k, c) in it {
            add_term(&field, &mut terms, k, c);
        }
        EnvElt { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Forest, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, k: &Forest) -> Scalar {
        self.terms.get(k).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &EnvElt) -> EnvElt {
        let mut r = self.clone();
        add_scaled(&self.field, &mut r.terms, Scalar::ONE, &o.terms);
        r
    }

    pub fn sub(&self, o: &EnvElt) -> EnvElt {
        let mut r = self.clone();
        add_scaled(&self.field, &mut r.terms, self.field.neg(Scalar::ONE), &o.terms);
        r
    }

    pub fn scale(&self, c: Scalar) -> EnvElt {
        let mut r = EnvElt::zero(self.field);
        add_scaled(&self.field, &mut r.terms, c, &self.terms);
        r
    }

    /// Concatenation product.
    pub fn mul(&self, o: &EnvElt) -> EnvElt {
        let f = self.field;
        let mut r = EnvElt::zero(f);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                add_term(&f, &mut r.terms, a.concat(b), f.mul(ca, cb));
            }
        }
        r
    }

    pub fn commutator(&self, o: &EnvElt) -> EnvElt {
        self.mul(o).sub(&o.mul(self))
    }

    /// Concatenation power.
    pub fn pow(&self, n: u32) -> EnvElt {
        let mut acc = EnvElt::one(self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest node count among the terms (0 for the zero element).
    pub fn max_nodes(&self) -> usize {
        self.terms.keys().map(Forest::nodes).max().unwrap_or(0)
    }
}

impl fmt::Display for EnvElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c != Scalar::ONE {
                write!(f, "{}·", self.field.fmt_scalar(c))?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Memoized evaluation of ▶ on basis forests.
struct Triangle<'a> {
    field: &'a Field,
    memo: BTreeMap<(Forest, Forest), Terms>,
}

impl Triangle<'_> {
    /// A single tree acting on a word by the Leibniz rule.
    fn tree_on(&self, x: &PlanarTree, w: &Forest) -> Terms {
        let mut out = Terms::new();
        for i in 0..w.0.len() {
            let mut v = w.0.clone();
            v[i] = graft(x, &w.0[i]);
            add_term(self.field, &mut out, Forest(v), Scalar::ONE);
        }
        out
    }

    fn forests(&mut self, e: &Forest, w: &Forest) -> Terms {
        let f = self.field;
        if e.0.is_empty() {
            let mut t = Terms::new();
            t.insert(w.clone(), Scalar::ONE);
            return t;
        }
        if w.0.is_empty() {
            return Terms::new();
        }
        if e.0.len() == 1 {
            return self.tree_on(&e.0[0], w);
        }
        let key = (e.clone(), w.clone());
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        // xE ▶ F = x ▶ (E ▶ F) − (x ▶ E) ▶ F
        let x = &e.0[0];
        let rest = Forest(e.0[1..].to_vec());
        let mut out = Terms::new();
        let inner = self.forests(&rest, w);
        for (g, &c) in &inner {
            let t = self.tree_on(x, g);
            add_scaled(f, &mut out, c, &t);
        }
        let xe = self.tree_on(x, &rest);
        let minus = f.neg(Scalar::ONE);
        for (g, &c) in &xe {
            let t = self.forests(g, w);
            add_scaled(f, &mut out, f.mul(minus, c), &t);
        }
        self.memo.insert(key, out.clone());
        out
    }

    fn elts(&mut self, a: &Terms, b: &Terms) -> Terms {
        let f = self.field;
        let mut out = Terms::new();
        for (e, &ce) in a {
            for (w, &cw) in b {
                let t = self.forests(e, w);
                add_scaled(f, &mut out, f.mul(ce, cw), &t);
            }
        }
        out
    }
}

/// The extension of ▶ to the envelope.
pub fn env_triangle(e: &EnvElt, f: &EnvElt) -> EnvElt {
    let mut t = Triangle { field: &e.field, memo: BTreeMap::new() };
    let terms = t.elts(&e.terms, &f.terms);
    EnvElt { field: e.field, terms }
}

/// Unshuffle coproduct of a forest: all (subword, complementary subword) pairs.
pub fn coproduct_forest(w: &Forest) -> Vec<(Forest, Forest)> {
    let n = w.0.len();
    (0u32..1 << n)
        .map(|mask| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, t) in w.0.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(t.clone());
                } else {
                    b.push(t.clone());
                }
            }
            (Forest(a), Forest(b))
        })
        .collect()
}

/// Δ(E) − E⊗1 − 1⊗E, with zero coefficients dropped.
pub fn reduced_coproduct(e: &EnvElt) -> BTreeMap<(Forest, Forest), Scalar> {
    let f = e.field;
    let mut out: BTreeMap<(Forest, Forest), Scalar> = BTreeMap::new();
    for (w, &c) in &e.terms {
        for (a, b) in coproduct_forest(w) {
            if a.0.is_empty() || b.0.is_empty() {
                continue;
            }
            let s = out.entry((a, b)).or_insert(Scalar::ZERO);
            *s = f.add(*s, c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn is_primitive(e: &EnvElt) -> bool {
    e.terms.keys().all(|w| !w.0.is_empty()) && reduced_coproduct(e).is_empty()
}

/// E ⋆ F = E₍₁₎ (E₍₂₎ ▶ F).
pub fn star(e: &EnvElt, g: &EnvElt) -> EnvElt {
    let f = e.field;
    let mut tri = Triangle { field: &f, memo: BTreeMap::new() };
    let mut out = Terms::new();
    for (w, &cw) in &e.terms {
        for (a, b) in coproduct_forest(w) {
            for (v, &cv) in &g.terms {
                let acted = tri.forests(&b, v);
                for (h, &ch) in &acted {
                    add_term(&f, &mut out, a.concat(h), f.mul(f.mul(cw, cv), ch));
                }
            }
        }
    }
    EnvElt { field: f, terms: out }
}

/// `e ⋆ e ⋆ ⋯ ⋆ e` (n factors, n ≥ 1).
pub fn star_power(e: &EnvElt, n: u32) -> EnvElt {
    let mut acc = EnvElt::one(e.field);
    for _ in 0..n {
        acc = star(e, &acc);
    }
    acc
}

/// x^{•n} = x ▶ (x ▶ ⋯ (x ▶ x)): the corolla with n−1 leaves.
pub fn bullet_power(n: usize) -> Result<PlanarTree, FreeError> {
    if n == 0 {
        return Err(FreeError::OutOfRange);
    }
    let x = PlanarTree::node();
    let mut t = x.clone();
    for _ in 1..n {
        t = graft(&x, &t);
    }
    Ok(t)
}

/// The forest of corollas with `parts[i]` nodes in corolla `i`.
pub fn corolla_forest(parts: &[u32]) -> Forest {
    Forest(parts.iter().map(|&l| PlanarTree::corolla(l as usize - 1)).collect())
}

/// n! / ((ℓ_1−1)!⋯(ℓ_k−1)! · ℓ_1(ℓ_1+ℓ_2)⋯(ℓ_1+⋯+ℓ_k)).
pub fn corolla_multiplicity(parts: &[u32]) -> u64 {
    let n: u32 = parts.iter().sum();
    let mut den = 1u64;
    let mut acc = 0u64;
    for &l in parts {
        den *= factorial(l - 1);
        acc += l as u64;
        den *= acc;
    }
    factorial(n) / den
}

/// Closed form of •^{⋆n} as a sum over corolla forests.
pub fn corolla_star_expansion(n: u32, field: Field) -> Result<EnvElt, FreeError> {
    if !(1..=7).contains(&n) {
        return Err(FreeError::OutOfRange);
    }
    Ok(EnvElt::from_terms(
        field,
        compositions(n)
            .into_iter()
            .map(|c| (corolla_forest(&c), field.from_int(corolla_multiplicity(&c) as i64))),
    ))
}

/// A labeling of the nodes of a corolla forest, listed in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub forest: Forest,
    pub labels: Vec<usize>,
}

/// All labelings by {1..n} that decrease along the order: within a corolla
/// the root is above its leaves and the leaves form a chain with the
/// rightmost smallest; the root of corolla `i` is above every node of the
/// corollas to its left.
pub fn enumerate_linearizations(c: &Forest) -> Result<Vec<Linearization>, FreeError> {
    if !c.0.iter().all(PlanarTree::is_corolla) {
        return Err(FreeError::NotCorollaForest);
    }
    let n = c.nodes();
    // (a, b): label(a) > label(b), nodes in preorder
    let mut above = Vec::new();
    let mut start = 0;
    for t in &c.0 {
        let root = start;
        let k = t.children.len();
        for i in 0..start {
            above.push((root, i));
        }
        for j in 0..k {
            above.push((root, root + 1 + j));
            if j + 1 < k {
                above.push((root + 1 + j, root + 2 + j));
            }
        }
        start += 1 + k;
    }
    Ok(permutations(n)
        .into_iter()
        .filter(|perm| above.iter().all(|&(a, b)| perm[a] > perm[b]))
        .map(|perm| Linearization { forest: c.clone(), labels: perm.iter().map(|&v| v + 1).collect() })
        .collect())
}

/// L(x) = x^{⋆p} − x^p − x^{•p} for x = •, in characteristic p ∈ {2, 3, 5}.
pub fn l_of_x(field: Field) -> Result<EnvElt, FreeError> {
    let p = field.p();
    if ![2, 3, 5].contains(&p) {
        return Err(FreeError::OutOfRange);
    }
    let x = EnvElt::x(field);
    let bullet = EnvElt::tree(field, bullet_power(p as usize)?);
    Ok(star_power(&x, p).sub(&x.pow(p)).sub(&bullet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn t(s: &str) -> PlanarTree {
        PlanarTree::parse(s).unwrap()
    }
    fn e(k: Field, s: &[(i64, &str)]) -> EnvElt {
        EnvElt::from_terms(k, s.iter().map(|&(c, w)| (Forest::parse(w).unwrap(), k.from_int(c))))
    }

    #[test]
    fn grafting() {
        assert_eq!(graft(&t("()"), &t("()")), t("(())"));
        assert_eq!(graft(&t("()"), &t("(())")), t("(()())"));
        assert_eq!(graft(&t("(())"), &t("()")), PlanarTree::chain(3));
        assert_eq!(t("(()())").to_string(), "(()())");
        assert!(Forest::parse("(()").is_err());
        assert!(Forest::parse("())").is_err());
        assert!(PlanarTree::parse("()()").is_err());
        assert_eq!(Forest::parse("").unwrap(), Forest::unit());
    }

    #[test]
    fn triangle_examples() {
        let k = Field::prime(7);
        let x = EnvElt::x(k);
        let xx = x.mul(&x);
        assert_eq!(env_triangle(&x, &xx), e(k, &[(1, "(())()"), (1, "()(())")]));
        assert_eq!(env_triangle(&EnvElt::one(k), &xx), xx);
        assert_eq!(env_triangle(&xx, &x), e(k, &[(1, "(()())"), (-1, "((()))")]));
        assert!(env_triangle(&x, &EnvElt::one(k)).is_zero());
    }

    #[test]
    fn star_examples() {
        let k = Field::prime(7);
        let x = EnvElt::x(k);
        assert_eq!(star(&x, &x), e(k, &[(1, "()()"), (1, "(())")]));
        assert_eq!(star(&x, &EnvElt::one(k)), x);
        assert_eq!(star(&EnvElt::one(k), &x), x);
        let three = e(k, &[(1, "()()()"), (1, "(())()"), (2, "()(())"), (1, "(()())")]);
        assert_eq!(star_power(&x, 3), three);
        assert_eq!(corolla_star_expansion(3, k).unwrap(), three);
    }

    #[test]
    fn bullets() {
        assert_eq!(bullet_power(1).unwrap(), t("()"));
        assert_eq!(bullet_power(2).unwrap(), t("(())"));
        assert_eq!(bullet_power(3).unwrap(), t("(()())"));
        assert_eq!(bullet_power(0), Err(FreeError::OutOfRange));
    }

    #[test]
    fn linearization_counts() {
        let count = |s: &str| enumerate_linearizations(&Forest::parse(s).unwrap()).unwrap().len();
        assert_eq!(count("()"), 1);
        assert_eq!(count("(())"), 1);
        assert_eq!(count("()()"), 1);
        assert_eq!(count("()(())"), 2);
        assert_eq!(
            enumerate_linearizations(&Forest::parse("((()))").unwrap()),
            Err(FreeError::NotCorollaForest)
        );
    }

    #[test]
    fn l_small() {
        assert!(l_of_x(Field::prime(2)).unwrap().is_zero());
        let k = Field::prime(3);
        assert_eq!(l_of_x(k).unwrap(), e(k, &[(1, "(())()"), (-1, "()(())")]));
        assert_eq!(l_of_x(Field::prime(7)), Err(FreeError::OutOfRange));
    }

    #[test]
    fn primitivity() {
        let k = Field::prime(5);
        let x = EnvElt::x(k);
        assert!(is_primitive(&x));
        assert!(!is_primitive(&x.mul(&x)));
        assert!(is_primitive(&x.commutator(&EnvElt::tree(k, t("(())")))));
    }
}
