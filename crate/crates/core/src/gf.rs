//! Arithmetic in GF(p^s) and on the projective line GF(p^s) ∪ {∞}.
//!
//! An element is stored as a single integer `enc` in `[0, q)`. Read in base
//! p, its digits are the coefficients of the residue polynomial in x, with
//! the constant term least significant. Multiplication is schoolbook
//! polynomial multiplication followed by reduction modulo the field modulus.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported field size.
pub const MAX_Q: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{s} exceeds the supported maximum")]
    TooLarge { p: u32, s: u32 },
    #[error("modulus needs {expected} coefficients, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    CoefficientRange(u32),
    #[error("modulus is reducible over the prime field")]
    Reducible,
    #[error("element {enc} does not belong to a field of size {q}")]
    OutOfRange { enc: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// A field element, meaningful only relative to one [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Wraps an encoding without a range check; see [`FieldSpec::elem`].
    pub const fn from_enc(enc: u32) -> Fq {
        Fq(enc)
    }

    pub const fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of GF(q) ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjElem {
    Finite(Fq),
    Infinity,
}

impl ProjElem {
    pub fn finite(self) -> Option<Fq> {
        match self {
            ProjElem::Finite(a) => Some(a),
            ProjElem::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ProjElem::Infinity)
    }
}

impl From<Fq> for ProjElem {
    fn from(a: Fq) -> Self {
        ProjElem::Finite(a)
    }
}

impl fmt::Display for ProjElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjElem::Finite(a) => write!(f, "{a}"),
            ProjElem::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ProjElem {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ProjElem::Infinity);
        }
        s.parse::<u32>()
            .map(|e| ProjElem::Finite(Fq(e)))
            .map_err(|_| FieldError::Parse(s.to_string()))
    }
}

/// A concrete realization of GF(p^s).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Fq,
    // modulus as a bit mask, used when p = 2
    mod_bits: u64,
}

impl FieldSpec {
    /// Builds GF(p^s). Without an explicit modulus the monic irreducible of
    /// degree s with the smallest encoding is used.
    pub fn new(p: u32, s: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if s == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(s)
            .filter(|&q| q <= MAX_Q)
            .ok_or(FieldError::TooLarge { p, s })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != s as usize + 1 {
                    return Err(FieldError::ModulusLength { expected: s as usize + 1, got: m.len() });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientRange(c));
                }
                if m[s as usize] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !is_irreducible(p, m) {
                    return Err(FieldError::Reducible);
                }
                m.to_vec()
            }
            None => default_modulus(p, s),
        };
        let mod_bits = if p == 2 {
            modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let mut field = FieldSpec { p, s, q: q as u32, modulus, primitive: Fq::ONE, mod_bits };
        field.primitive = field.find_primitive();
        Ok(field)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<FieldSpec, FieldError> {
        FieldSpec::new(p, 1, None)
    }

    /// GF(q) for a prime power q, with the default modulus.
    pub fn with_order(q: u32) -> Result<FieldSpec, FieldError> {
        let (p, s) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        FieldSpec::new(p, s, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Fq {
        self.primitive
    }

    /// Checked conversion from an encoding.
    pub fn elem(&self, enc: u32) -> Result<Fq, FieldError> {
        if enc < self.q {
            Ok(Fq(enc))
        } else {
            Err(FieldError::OutOfRange { enc, q: self.q })
        }
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.q
    }

    pub fn contains_proj(&self, a: ProjElem) -> bool {
        a.finite().is_none_or(|x| self.contains(x))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// The image of an integer under Z → GF(p) ⊆ GF(q).
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.s == 1 {
            let c = a.0 + b.0;
            return Fq(if c >= self.p { c - self.p } else { c });
        }
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u64, 1u64);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d as u64 * place;
            place *= self.p as u64;
            x /= self.p;
            y /= self.p;
        }
        Fq(out as u32)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.s == 1 {
            return Fq(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u64, 1u64);
        while x > 0 {
            let d = (self.p - x % self.p) % self.p;
            out += d as u64 * place;
            place *= self.p as u64;
            x /= self.p;
        }
        Fq(out as u32)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.s == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if self.p == 2 {
            return Fq(self.mul_binary(a.0, b.0));
        }
        self.mul_general(a.0, b.0)
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let mut prod = 0u64;
        let mut x = a as u64;
        let mut y = b as u64;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let s = self.s as usize;
        for d in (s..2 * s - 1).rev() {
            if prod >> d & 1 == 1 {
                prod ^= self.mod_bits << (d - s);
            }
        }
        prod as u32
    }

    fn mul_general(&self, a: u32, b: u32) -> Fq {
        let s = self.s as usize;
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 64];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for d in (s..2 * s - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // subtract c * x^(d-s) * modulus; the leading term cancels prod[d]
            for i in 0..s {
                let m = self.modulus[i] as u64;
                prod[d - s + i] = (prod[d - s + i] + c * ((p - m) % p)) % p;
            }
            prod[d] = 0;
        }
        let mut out = 0u64;
        for i in (0..s).rev() {
            out = out * p + prod[i];
        }
        Fq(out as u32)
    }

    fn digits(&self, mut a: u32) -> [u64; 32] {
        let mut d = [0u64; 32];
        let mut i = 0;
        while a > 0 {
            d[i] = (a % self.p) as u64;
            a /= self.p;
            i += 1;
        }
        d
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow_u(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for e ≥ 0 (0^0 = 1).
    pub fn pow_u(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^e for any integer e; negative exponents need a ≠ 0.
    pub fn pow(&self, a: Fq, e: i64) -> Result<Fq, FieldError> {
        if e >= 0 {
            return Ok(self.pow_u(a, e as u64));
        }
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let r = e.rem_euclid(self.q as i64 - 1);
        Ok(self.pow_u(a, r as u64))
    }

    /// Whether a is a nonzero square. In characteristic 2 every nonzero
    /// element is a square.
    pub fn is_square(&self, a: Fq) -> bool {
        if a.0 == 0 {
            return false;
        }
        if self.p == 2 {
            return true;
        }
        self.pow_u(a, (self.q as u64 - 1) / 2) == Fq::ONE
    }

    /// Discrete logarithm to the base of the primitive element, by search.
    pub fn log(&self, a: Fq) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let mut x = Fq::ONE;
        for i in 0..self.q - 1 {
            if x == a {
                return Some(i);
            }
            x = self.mul(x, self.primitive);
        }
        None
    }

    fn find_primitive(&self) -> Fq {
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        (1..self.q)
            .map(Fq)
            .find(|&a| factors.iter().all(|&r| self.pow_u(a, order / r) != Fq::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn proj_inv(&self, a: ProjElem) -> ProjElem {
        match a {
            ProjElem::Infinity => ProjElem::Finite(Fq::ZERO),
            ProjElem::Finite(x) if x.0 == 0 => ProjElem::Infinity,
            ProjElem::Finite(x) => ProjElem::Finite(self.inv(x).expect("nonzero")),
        }
    }

    pub fn proj_add(&self, a: ProjElem, b: Fq) -> ProjElem {
        match a {
            ProjElem::Infinity => ProjElem::Infinity,
            ProjElem::Finite(x) => ProjElem::Finite(self.add(x, b)),
        }
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Fq>>(&self, it: I) -> Fq {
        it.into_iter().fold(Fq::ZERO, |acc, x| self.add(acc, x))
    }

    /// Product of a sequence of elements.
    pub fn product<I: IntoIterator<Item = Fq>>(&self, it: I) -> Fq {
        it.into_iter().fold(Fq::ONE, |acc, x| self.mul(acc, x))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.s)
    }
}

/// Field arithmetic behind a trait so that algorithms can run on an
/// instrumented field, see [`CountingOps`].
pub trait FieldOps {
    fn spec(&self) -> &FieldSpec;
    fn add(&self, a: Fq, b: Fq) -> Fq;
    fn sub(&self, a: Fq, b: Fq) -> Fq;
    fn mul(&self, a: Fq, b: Fq) -> Fq;
    fn neg(&self, a: Fq) -> Fq;
    fn inv(&self, a: Fq) -> Result<Fq, FieldError>;

    fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, bi))
    }

    fn pow_u(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base } else { self.mul(acc, base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }
}

impl FieldOps for FieldSpec {
    fn spec(&self) -> &FieldSpec {
        self
    }
    fn add(&self, a: Fq, b: Fq) -> Fq {
        FieldSpec::add(self, a, b)
    }
    fn sub(&self, a: Fq, b: Fq) -> Fq {
        FieldSpec::sub(self, a, b)
    }
    fn mul(&self, a: Fq, b: Fq) -> Fq {
        FieldSpec::mul(self, a, b)
    }
    fn neg(&self, a: Fq) -> Fq {
        FieldSpec::neg(self, a)
    }
    fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        FieldSpec::inv(self, a)
    }
    fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        FieldSpec::div(self, a, b)
    }
    fn pow_u(&self, a: Fq, e: u64) -> Fq {
        FieldSpec::pow_u(self, a, e)
    }
}

/// Wraps a field and counts every add, sub, mul, neg and inv performed
/// through it.
#[derive(Debug)]
pub struct CountingOps<'a> {
    spec: &'a FieldSpec,
    count: Cell<u64>,
}

impl<'a> CountingOps<'a> {
    pub fn new(spec: &'a FieldSpec) -> Self {
        CountingOps { spec, count: Cell::new(0) }
    }

    pub fn count(&self) -> u64 {
        self.count.get()
    }

    pub fn reset(&self) {
        self.count.set(0);
    }

    fn tick(&self) {
        self.count.set(self.count.get() + 1);
    }
}

impl FieldOps for CountingOps<'_> {
    fn spec(&self) -> &FieldSpec {
        self.spec
    }
    fn add(&self, a: Fq, b: Fq) -> Fq {
        self.tick();
        self.spec.add(a, b)
    }
    fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.tick();
        self.spec.sub(a, b)
    }
    fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.tick();
        self.spec.mul(a, b)
    }
    fn neg(&self, a: Fq) -> Fq {
        self.tick();
        self.spec.neg(a)
    }
    fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        self.tick();
        self.spec.inv(a)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^s, or returns None if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q as u64);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0] as u32;
    let mut s = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    Some((p, s))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn default_modulus(p: u32, s: u32) -> Vec<u32> {
    if s == 1 {
        return vec![0, 1];
    }
    let q = (p as u64).pow(s);
    (0..q)
        .map(|low| {
            let mut m = digits_of(low, p, s as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(p, m))
        .expect("an irreducible polynomial exists in every degree")
}

fn digits_of(mut x: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (x % p as u64) as u32;
        x /= p as u64;
    }
    out
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits_of(low, p, d);
            divisor.push(1);
            if poly_rem_is_zero(p, m, &divisor) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, num: &[u32], monic: &[u32]) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    for top in (d..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            let idx = top - d + i;
            r[idx] = (r[idx] + c * ((p - monic[i] as u64 % p) % p)) % p;
        }
    }
    r[..d].iter().all(|&c| c % p == 0)
}
