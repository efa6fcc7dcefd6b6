//! Finite fields `F_q`, `q = p^k`, built as `F_p[x]/(m)` for a canonical
//! primitive modulus `m`.
//!
//! Elements are stored by their integer encoding `sum coeffs[i] * p^i`, so
//! `F_q` is identified with `0..q`. The modulus is the primitive monic
//! polynomial of degree `k` with the smallest encoding, which makes the class
//! of `x` a generator of `F_q^*` and every downstream output reproducible.
//!
//! Multiplication goes through log/antilog tables built once at construction
//! from the schoolbook routine [`FieldSpec::mul_schoolbook`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the field size accepted by [`FieldSpec::new`].
pub const DEFAULT_FIELD_CAP: u64 = 64;

/// An element of `F_q`, identified with its encoding in `0..q`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an encoding without range checking; see [`FieldSpec::element`].
    pub const fn from_encoding_unchecked(enc: u32) -> Self {
        FieldElement(enc)
    }

    pub const fn encoding(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[i] = eta^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[e]` for `e != 0`; `log[0]` is unused.
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// A finite field `F_q` with its canonical modulus.
///
/// Cheap to clone: the tables live behind an `Arc`.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k && self.t.modulus == other.t.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self)
    }
}

/// Serializes as `p^k:modulus-encoding`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{}", self.t.p, self.t.k, self.modulus_encoding())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|p| q % p == 0).unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, k))
}

fn digits(mut enc: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let c = enc % p;
            enc /= p;
            c
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the monic `modulus` (length `k + 1`).
fn poly_mulmod(x: &[u32], y: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi * yj) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        for (i, &mi) in modulus[..k].iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p - c) * mi) % p;
        }
        prod[deg] = 0;
    }
    prod.truncate(k);
    prod
}

/// Multiplicative order of `x` modulo `modulus`, if it is at most `bound`.
fn order_of_x(modulus: &[u32], p: u32, bound: u32) -> Option<u32> {
    let k = modulus.len() - 1;
    let mut one = vec![0u32; k];
    one[0] = 1;
    let mut x = vec![0u32; k];
    if k == 1 {
        // x is congruent to -m_0
        x[0] = (p - modulus[0]) % p;
    } else {
        x[1] = 1;
    }
    let mut cur = x.clone();
    for i in 1..=bound {
        if cur == one {
            return Some(i);
        }
        cur = poly_mulmod(&cur, &x, modulus, p);
    }
    None
}

/// True if `modulus` (monic, little-endian, degree `k`) is primitive over `F_p`.
pub fn is_primitive_modulus(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() as u32 - 1;
    if modulus[0] == 0 {
        return false;
    }
    let q = p.pow(k);
    order_of_x(modulus, p, q - 1) == Some(q - 1)
}

impl FieldSpec {
    /// The canonical field of order `p^k`, with `p^k <= 64`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_cap(p, k, DEFAULT_FIELD_CAP)
    }

    /// The canonical field of order `q`, which must be a prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)?;
        Self::new(p, k)
    }

    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let q = p.checked_pow(k).filter(|&q| q <= cap).ok_or(Error::TooLarge {
            what: "field size",
            value: (p as u128).saturating_pow(k),
            cap: cap as u128,
        })?;
        let (p, q) = (p as u32, q as u32);

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|lower| {
                    let mut m = digits(lower, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_primitive_modulus(m, p))
                .expect("a primitive polynomial exists in every degree")
        };

        let primitive = if k >= 2 {
            p
        } else if p == 2 {
            1
        } else {
            (2..p)
                .find(|&g| {
                    let mut cur = g;
                    let mut order = 1;
                    while cur != 1 {
                        cur = cur * g % p;
                        order += 1;
                    }
                    order == p - 1
                })
                .expect("F_p^* is cyclic")
        };

        let mut t = Tables {
            p,
            k,
            q,
            modulus,
            primitive,
            exp: Vec::new(),
            log: vec![0; q as usize],
            add: vec![0; (q * q) as usize],
            neg: vec![0; q as usize],
        };
        for x in 0..q {
            let dx = digits(x, p, k);
            let nx: Vec<u32> = dx.iter().map(|&c| (p - c) % p).collect();
            t.neg[x as usize] = undigits(&nx, p);
            for y in 0..q {
                let dy = digits(y, p, k);
                let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                t.add[(x * q + y) as usize] = undigits(&s, p);
            }
        }
        let mut field = FieldSpec { t: Arc::new(t) };
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut cur = 1u32;
        for _ in 0..(q - 1) {
            exp.push(cur);
            cur = field.mul_schoolbook(FieldElement(cur), FieldElement(primitive)).0;
        }
        debug_assert_eq!(cur, 1);
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        exp.extend_from_within(..);
        let t = Arc::get_mut(&mut field.t).expect("unique during construction");
        t.exp = exp;
        t.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn k(&self) -> u32 {
        self.t.k
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Coefficients of the modulus, little-endian, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn modulus_encoding(&self) -> u64 {
        self.t
            .modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.t.p as u64 + c as u64)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, enc: u32) -> Result<FieldElement> {
        if enc < self.t.q {
            Ok(FieldElement(enc))
        } else {
            Err(Error::Parse(format!("{enc} is not an element of F_{}", self.t.q)))
        }
    }

    /// All elements in encoding order: `0, 1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.t.q).map(FieldElement)
    }

    /// The nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.t.q).map(FieldElement)
    }

    pub fn coeffs(&self, e: FieldElement) -> Vec<u32> {
        digits(e.0, self.t.p, self.t.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.t.k as usize || coeffs.iter().any(|&c| c >= self.t.p) {
            return Err(Error::Parse(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(FieldElement(undigits(coeffs, self.t.p)))
    }

    /// The generator `eta` of `F_q^*`: the class of `x` when `k >= 2`, the
    /// smallest generator of `F_p^*` otherwise.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.t.primitive)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.t.add[x.idx() * self.t.q as usize + y.idx()])
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[x.idx()])
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[x.idx()] + t.log[y.idx()]) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let l = t.log[x.idx()];
        Ok(FieldElement(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^n`, with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let e = (t.log[x.idx()] as u64 * (n % (t.q as u64 - 1))) % (t.q as u64 - 1);
        FieldElement(t.exp[e as usize])
    }

    /// `eta^i` for the primitive element `eta`.
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.t.exp[(i % (self.t.q as u64 - 1)) as usize])
    }

    /// Discrete logarithm to base `eta` of a nonzero element.
    pub fn log(&self, x: FieldElement) -> Result<u32> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.t.log[x.idx()])
    }

    /// Product by polynomial multiplication and reduction, without tables.
    pub fn mul_schoolbook(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let t = &*self.t;
        if t.k == 1 {
            return FieldElement(x.0 * y.0 % t.p);
        }
        let r = poly_mulmod(
            &digits(x.0, t.p, t.k),
            &digits(y.0, t.p, t.k),
            &t.modulus,
            t.p,
        );
        FieldElement(undigits(&r, t.p))
    }

    /// Multiplicative order of a nonzero element, by repeated multiplication.
    pub fn order(&self, x: FieldElement) -> Result<u32> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut cur = x;
        let mut n = 1;
        while cur != FieldElement::ONE {
            cur = self.mul(cur, x);
            n += 1;
        }
        Ok(n)
    }
}
