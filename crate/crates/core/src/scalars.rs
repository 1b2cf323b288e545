//! Exact arithmetic in GF(p) and GF(p^k) for k ≤ 3.
//!
//! A [`Field`] is a small copyable descriptor; [`Scalar`]s are plain
//! coefficient arrays and every operation goes through the field.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 3;

/// A prime large enough that every multiplicity we count (at most 7!) is
/// represented exactly.
pub const EXACT_COUNT_PRIME: u32 = 2_147_483_647;

/// Extension fields are only built over primes below this bound, so that
/// irreducibility can be decided by exhaustive root search.
pub const MAX_EXTENSION_PRIME: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarError {
    NotPrime(u32),
    ReducibleModulus,
    /// Modulus not monic, of unsupported degree, or with coefficients out of range.
    BadModulus,
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::NotPrime(p) => write!(f, "{p} is not prime"),
            ScalarError::ReducibleModulus => f.write_str("modulus is reducible"),
            ScalarError::BadModulus => f.write_str("modulus must be monic of degree 2 or 3 with reduced coefficients"),
            ScalarError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl core::error::Error for ScalarError {}

/// An element of some field; coefficient `i` multiplies `t^i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(pub [u32; MAX_DEGREE]);

impl Scalar {
    pub const ZERO: Scalar = Scalar([0; MAX_DEGREE]);
    pub const ONE: Scalar = Scalar([1, 0, 0]);

    pub fn is_zero(&self) -> bool {
        *self == Scalar::ZERO
    }
}

/// GF(p) or GF(p^k) = GF(p)[t]/(m(t)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    degree: usize,
    /// m(t) = t^degree + low[degree-1] t^(degree-1) + ... + low[0]
    low: [u32; MAX_DEGREE],
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Build a field descriptor. The modulus is listed from the leading
/// coefficient down to the constant term, so `[1, 0, 1]` is `t² + 1`.
pub fn field_make(p: u32, modulus: Option<&[u32]>) -> Result<Field, ScalarError> {
    if !is_prime(p) {
        return Err(ScalarError::NotPrime(p));
    }
    let Some(m) = modulus else {
        return Ok(Field::prime(p));
    };
    let degree = m.len().saturating_sub(1);
    if !(2..=MAX_DEGREE).contains(&degree) || m[0] != 1 || m.iter().any(|&c| c >= p) {
        return Err(ScalarError::BadModulus);
    }
    if p >= MAX_EXTENSION_PRIME {
        return Err(ScalarError::BadModulus);
    }
    let mut low = [0u32; MAX_DEGREE];
    for i in 0..degree {
        low[i] = m[degree - i];
    }
    // Degree ≤ 3: irreducible iff no root in GF(p).
    let has_root = (0..p).any(|r| {
        let r = r as u64;
        let mut acc = 1u64;
        for &c in &m[1..] {
            acc = (acc * r + c as u64) % p as u64;
        }
        acc == 0
    });
    if has_root {
        return Err(ScalarError::ReducibleModulus);
    }
    Ok(Field { p, degree, low })
}

impl Field {
    /// The prime field GF(p). The caller guarantees primality.
    pub const fn prime(p: u32) -> Field {
        Field { p, degree: 1, low: [0; MAX_DEGREE] }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, p^degree.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree as u32)
    }

    /// Modulus coefficients from leading to constant; `None` for a prime field.
    pub fn modulus(&self) -> Option<Vec<u32>> {
        if self.degree == 1 {
            return None;
        }
        let mut m = Vec::with_capacity(self.degree + 1);
        m.push(1);
        for i in (0..self.degree).rev() {
            m.push(self.low[i]);
        }
        Some(m)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    /// The generator `t` of an extension (the root of the modulus).
    pub fn gen(&self) -> Scalar {
        if self.degree == 1 {
            return Scalar::ZERO;
        }
        Scalar([0, 1, 0])
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        let r = n.rem_euclid(self.p as i64) as u32;
        Scalar([r, 0, 0])
    }

    /// Coefficients with the constant term last, as in algebra files.
    pub fn to_coeffs(&self, a: Scalar) -> Vec<u32> {
        (0..self.degree).rev().map(|i| a.0[i]).collect()
    }

    /// Inverse of [`Field::to_coeffs`]; `None` on wrong length or unreduced entries.
    pub fn from_coeffs(&self, c: &[u32]) -> Option<Scalar> {
        if c.len() != self.degree || c.iter().any(|&x| x >= self.p) {
            return None;
        }
        let mut s = Scalar::ZERO;
        for (i, &x) in c.iter().rev().enumerate() {
            s.0[i] = x;
        }
        Some(s)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.degree == 1 {
            return Scalar([((a.0[0] as u64 + b.0[0] as u64) % self.p as u64) as u32, 0, 0]);
        }
        let mut r = Scalar::ZERO;
        for i in 0..self.degree {
            let s = a.0[i] as u64 + b.0[i] as u64;
            r.0[i] = (s % self.p as u64) as u32;
        }
        r
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        if self.degree == 1 {
            return Scalar([if a.0[0] == 0 { 0 } else { self.p - a.0[0] }, 0, 0]);
        }
        let mut r = Scalar::ZERO;
        for i in 0..self.degree {
            r.0[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        r
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.p as u64;
        if self.degree == 1 {
            return Scalar([((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 0, 0]);
        }
        let d = self.degree;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % p;
            }
        }
        // t^d = -sum low[i] t^i
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let sub = c * self.low[i] as u64 % p;
                prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
            }
        }
        let mut r = Scalar::ZERO;
        for i in 0..d {
            r.0[i] = prod[i] as u32;
        }
        r
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar, ScalarError> {
        if a.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.p as u64)
    }

    /// Inverse of a nonzero integer; the caller guarantees `p ∤ n`.
    pub fn inv_int(&self, n: i64) -> Scalar {
        self.inv(self.from_int(n)).expect("integer divisible by the characteristic")
    }

    /// n! reduced into the field.
    pub fn factorial(&self, n: u32) -> Scalar {
        (1..=n as i64).fold(Scalar::ONE, |acc, k| self.mul(acc, self.from_int(k)))
    }

    /// Every element, in a fixed order (zero first, then one, ...).
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let p = self.p as u64;
        let d = self.degree;
        (0..self.order()).map(move |mut k| {
            let mut s = Scalar::ZERO;
            for i in 0..d {
                s.0[i] = (k % p) as u32;
                k /= p;
            }
            s
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let mut s = Scalar::ZERO;
        for i in 0..self.degree {
            s.0[i] = rng.gen_range(0..self.p);
        }
        s
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Human-readable form: `2`, `t`, `2t+1`, `t^2+2`.
    pub fn fmt_scalar(&self, a: Scalar) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for i in (0..self.degree).rev() {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (i, c) {
                (0, c) => write!(out, "{c}").unwrap(),
                (1, 1) => out.push('t'),
                (1, c) => write!(out, "{c}t").unwrap(),
                (i, 1) => write!(out, "t^{i}").unwrap(),
                (i, c) => write!(out, "{c}t^{i}").unwrap(),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.degree)
        }
    }
}
