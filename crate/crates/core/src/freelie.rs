//! Free Lie algebras on an ordered alphabet, normalized onto the Lyndon basis.
//!
//! The basis element attached to a Lyndon word `w` is its standard
//! bracketing `P(w)`: `P(a) = a`, `P(w) = [P(u), P(v)]` where `v` is the
//! longest proper Lyndon suffix of `w`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinat::{act, compose, inverse, shuffles};
use crate::report::{CheckReport, Tally, Witness};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

pub type Word = Vec<Symbol>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieError {
    AlphabetMismatch,
    FieldMismatch,
    EmptyInput,
    OutOfRange,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieError::AlphabetMismatch => "operands live over different alphabets",
            LieError::FieldMismatch => "operands live over different fields",
            LieError::EmptyInput => "empty bracket",
            LieError::OutOfRange => "argument out of range",
        })
    }
}

impl core::error::Error for LieError {}

/// Element of the free Lie algebra on symbols `0..alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElt {
    field: Field,
    alphabet: u32,
    terms: BTreeMap<Word, Scalar>,
}

type Terms = BTreeMap<Word, Scalar>;

fn add_term(f: &Field, t: &mut Terms, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(w) {
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
    for (w, &v) in t {
        add_term(f, acc, w.clone(), f.mul(c, v));
    }
}

pub fn is_lyndon(w: &[Symbol]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w[i..] > *w)
}

/// `(u, v)` with `v` the longest proper Lyndon suffix. `w` must be Lyndon of length ≥ 2.
pub fn standard_factorization(w: &[Symbol]) -> (&[Symbol], &[Symbol]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("length at least 2");
    (&w[..i], &w[i..])
}

/// Lyndon words of length `degree` over the given sorted alphabet (Duval's algorithm).
pub fn lyndon_basis(alphabet: &[Symbol], degree: usize) -> Vec<Word> {
    let k = alphabet.len();
    let mut out = Vec::new();
    if k == 0 || degree == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == degree {
            out.push(w.iter().map(|&i| alphabet[i]).collect());
        }
        let m = w.len();
        while w.len() < degree {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last + 1 == k {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Standard bracketing of a Lyndon word as a string, e.g. `[x0,[x0,x1]]`.
pub fn bracketing(w: &[Symbol]) -> String {
    if w.len() == 1 {
        return format!("x{}", w[0].0);
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", bracketing(u), bracketing(v))
}

struct Normalizer<'a> {
    field: &'a Field,
    memo: BTreeMap<(Word, Word), Terms>,
}

impl Normalizer<'_> {
    /// [P(u), P(v)] for Lyndon u, v, in the Lyndon basis.
    fn words(&mut self, u: &[Symbol], v: &[Symbol]) -> Terms {
        if u == v {
            return Terms::new();
        }
        if u > v {
            let t = self.words(v, u);
            let f = self.field;
            return t.into_iter().map(|(w, c)| (w, f.neg(c))).collect();
        }
        if let Some(t) = self.memo.get(&(u.to_vec(), v.to_vec())) {
            return t.clone();
        }
        let out = if u.len() == 1 || standard_factorization(u).1 >= v {
            let mut w = u.to_vec();
            w.extend_from_slice(v);
            let mut t = Terms::new();
            t.insert(w, Scalar::ONE);
            t
        } else {
            let (u1, u2) = standard_factorization(u);
            let (u1, u2) = (u1.to_vec(), u2.to_vec());
            let single = |w: &Word| -> Terms {
                let mut t = Terms::new();
                t.insert(w.clone(), Scalar::ONE);
                t
            };
            let u1t = single(&u1);
            let u2t = single(&u2);
            let vt = single(&v.to_vec());
            // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
            let a = self.terms(&u2t, &vt);
            let a = self.terms(&u1t, &a);
            let b = self.terms(&u1t, &vt);
            let b = self.terms(&b, &u2t);
            let mut out = a;
            add_scaled(self.field, &mut out, Scalar::ONE, &b);
            out
        };
        self.memo.insert((u.to_vec(), v.to_vec()), out.clone());
        out
    }

    fn terms(&mut self, a: &Terms, b: &Terms) -> Terms {
        let f = self.field;
        let mut out = Terms::new();
        for (u, &cu) in a {
            for (v, &cv) in b {
                let t = self.words(u, v);
                add_scaled(f, &mut out, f.mul(cu, cv), &t);
            }
        }
        out
    }
}

impl LieElt {
    pub fn zero(field: Field, alphabet: u32) -> Self {
        LieElt { field, alphabet, terms: Terms::new() }
    }

    pub fn generator(field: Field, alphabet: u32, s: Symbol) -> Result<Self, LieError> {
        if s.0 >= alphabet {
            return Err(LieError::OutOfRange);
        }
        let mut e = Self::zero(field, alphabet);
        e.terms.insert(vec![s], Scalar::ONE);
        Ok(e)
    }

    /// The basis element P(w) of a Lyndon word.
    pub fn basis(field: Field, alphabet: u32, w: &[Symbol]) -> Result<Self, LieError> {
        if !is_lyndon(w) || w.iter().any(|s| s.0 >= alphabet) {
            return Err(LieError::OutOfRange);
        }
        let mut e = Self::zero(field, alphabet);
        e.terms.insert(w.to_vec(), Scalar::ONE);
        Ok(e)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &[Symbol]) -> Scalar {
        self.terms.get(w).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, o: &LieElt) -> Result<(), LieError> {
        if self.field != o.field {
            return Err(LieError::FieldMismatch);
        }
        if self.alphabet != o.alphabet {
            return Err(LieError::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &LieElt) -> Result<LieElt, LieError> {
        self.compatible(o)?;
        let mut r = self.clone();
        add_scaled(&self.field, &mut r.terms, Scalar::ONE, &o.terms);
        Ok(r)
    }

    pub fn sub(&self, o: &LieElt) -> Result<LieElt, LieError> {
        self.add(&o.scale(self.field.neg(Scalar::ONE)))
    }

    pub fn scale(&self, c: Scalar) -> LieElt {
        let f = self.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(w, &v)| {
                let x = f.mul(c, v);
                (!x.is_zero()).then(|| (w.clone(), x))
            })
            .collect();
        LieElt { field: f, alphabet: self.alphabet, terms }
    }

    /// Expansion in the free associative algebra (commutator brackets).
    pub fn to_tensor(&self) -> BTreeMap<Word, Scalar> {
        let f = self.field;
        let mut memo: BTreeMap<Word, Terms> = BTreeMap::new();
        fn expand(f: &Field, w: &[Symbol], memo: &mut BTreeMap<Word, Terms>) -> Terms {
            if let Some(t) = memo.get(w) {
                return t.clone();
            }
            let out = if w.len() == 1 {
                let mut t = Terms::new();
                t.insert(w.to_vec(), Scalar::ONE);
                t
            } else {
                let (u, v) = standard_factorization(w);
                let pu = expand(f, u, memo);
                let pv = expand(f, v, memo);
                let mut t = Terms::new();
                for (a, &ca) in &pu {
                    for (b, &cb) in &pv {
                        let c = f.mul(ca, cb);
                        let mut ab = a.clone();
                        ab.extend_from_slice(b);
                        add_term(f, &mut t, ab, c);
                        let mut ba = b.clone();
                        ba.extend_from_slice(a);
                        add_term(f, &mut t, ba, f.neg(c));
                    }
                }
                t
            };
            memo.insert(w.to_vec(), out.clone());
            out
        }
        let mut acc = Terms::new();
        for (w, &c) in &self.terms {
            let t = expand(&f, w, &mut memo);
            add_scaled(&f, &mut acc, c, &t);
        }
        acc
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c != Scalar::ONE {
                write!(f, "{}·", self.field.fmt_scalar(c))?;
            }
            f.write_str(&bracketing(w))?;
        }
        Ok(())
    }
}

pub fn lie_bracket(a: &LieElt, b: &LieElt) -> Result<LieElt, LieError> {
    a.compatible(b)?;
    let mut n = Normalizer { field: &a.field, memo: BTreeMap::new() };
    let terms = n.terms(&a.terms, &b.terms);
    Ok(LieElt { field: a.field, alphabet: a.alphabet, terms })
}

/// [x1, [x2, [..., [x_{n-1}, x_n]]]].
pub fn right_nested_bracket(elts: &[LieElt]) -> Result<LieElt, LieError> {
    let (last, rest) = elts.split_last().ok_or(LieError::EmptyInput)?;
    for e in rest {
        e.compatible(last)?;
    }
    let mut n = Normalizer { field: &last.field, memo: BTreeMap::new() };
    let mut acc = last.terms.clone();
    for e in rest.iter().rev() {
        acc = n.terms(&e.terms, &acc);
    }
    Ok(LieElt { field: last.field, alphabet: last.alphabet, terms: acc })
}

/// Right-nested bracket of generators.
pub fn nested_symbols(field: Field, alphabet: u32, syms: &[Symbol]) -> Result<LieElt, LieError> {
    let gens = syms
        .iter()
        .map(|&s| LieElt::generator(field, alphabet, s))
        .collect::<Result<Vec<_>, _>>()?;
    right_nested_bracket(&gens)
}

/// Verify, for symbols x_1 < ... < x_n, the rewriting
/// `[x_1 ⋯ x_{j-1} x_n x_j ⋯ x_{n-1}] = Σ_s Σ_σ (-1)^s [x_{σc·ℓ}]`
/// over σ with σ⁻¹ a block shuffle reversed on its last `s` entries,
/// (σ∘c)(n) = n and σ⁻¹(n-s+1) ≠ n, where c moves n to j.
pub fn check_unshuffle_rewrite(n: usize, j: usize, field: Field) -> Result<CheckReport, LieError> {
    if !(2..=6).contains(&n) || !(1..n).contains(&j) {
        return Err(LieError::OutOfRange);
    }
    let alphabet = n as u32;
    let ell: Vec<Symbol> = (0..n as u32).map(Symbol).collect();
    // c: n ↦ j, increasing on the rest (0-based: n-1 ↦ j-1)
    let mut c = vec![0usize; n];
    c[n - 1] = j - 1;
    let mut k = 0;
    for slot in c.iter_mut().take(n - 1) {
        if k == j - 1 {
            k += 1;
        }
        *slot = k;
        k += 1;
    }
    let lhs = nested_symbols(field, alphabet, &act(&c, &ell))?;
    let mut rhs = LieElt::zero(field, alphabet);
    for s in 1..n {
        let sign = if s % 2 == 0 { Scalar::ONE } else { field.neg(Scalar::ONE) };
        for t in shuffles(n, s, true) {
            let sigma = inverse(&t);
            let sc = compose(&sigma, &c);
            if sc[n - 1] != n - 1 || t[n - s] == n - 1 {
                continue;
            }
            let term = nested_symbols(field, alphabet, &act(&sc, &ell))?;
            rhs = rhs.add(&term.scale(sign))?;
        }
    }
    let mut tally = Tally::new("freelie.unshuffle_rewrite");
    tally.check(lhs == rhs, || Witness {
        inputs: vec![format!("n={n}"), format!("j={j}")],
        lhs: format!("{lhs}"),
        rhs: format!("{rhs}"),
    });
    let mut report = CheckReport::new();
    report.push(tally.finish(None));
    Ok(report)
}
