//! Finite fields F_{p^k} with table-driven arithmetic.
//!
//! Elements are stored as the integer `sum d_i p^i` of their coefficient
//! vector in the polynomial basis `1, X, ..., X^{k-1}` modulo the context's
//! defining polynomial. The defining polynomial is the lexicographically
//! smallest monic irreducible of degree `k`, so two contexts with the same
//! `(p, k)` agree element for element.

mod embed;
pub(crate) mod fp_poly;
pub mod linalg;
mod subspace;

pub use embed::{embed, rank_over_subfield, Embedding};
pub use subspace::FpSubspace;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest field order a context will tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

/// A field element, encoded as `sum d_i p^i` over its basis coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Integer encoding of the coefficient vector.
    pub fn index(self) -> u32 {
        self.0
    }

    /// Element with the given encoding. Range is checked by the context that uses it.
    pub fn from_index(i: u32) -> Self {
        Elem(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
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

/// Arithmetic context for F_{p^k}.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    trace: Vec<u16>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Builds F_{p^k} with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        let q = Self::check_size(p, k)?;
        let lower_count = q;
        for code in 0..lower_count {
            let mut f = digits_of(code, p, k as usize);
            f.push(1);
            if fp_poly::is_irreducible(&f, p) {
                return Self::with_modulus(p, &f);
            }
        }
        Err(Error::Internal(format!("no irreducible of degree {k} over F_{p}")))
    }

    /// Builds a context from an explicit monic irreducible modulus (little-endian digits).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::Parameter("modulus must have degree >= 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        let q = Self::check_size(p, k)?;
        if modulus.iter().any(|&c| c >= p) || modulus[k as usize] != 1 {
            return Err(Error::Parameter(format!(
                "modulus must be monic with coefficients in [0, {p})"
            )));
        }
        if !fp_poly::is_irreducible(modulus, p) {
            return Err(Error::Parameter(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let one = [1u32];
        let mut generator_digits = Vec::new();
        let mut generator = Elem::ZERO;
        for cand in 1..q {
            let d = digits_of(cand, p, k as usize);
            let primitive = factors.iter().all(|&l| {
                let mut r = fp_poly::powmod(&d, order / l, modulus, p);
                fp_poly::trim(&mut r);
                r != one
            });
            if primitive {
                generator = Elem(cand);
                generator_digits = d;
                break;
            }
        }
        if order == 0 || generator.is_zero() {
            generator = Elem::ONE;
            generator_digits = vec![1];
        }

        let qn = q as usize;
        let mut exp = vec![0u32; 2 * (qn - 1).max(1)];
        let mut log = vec![NO_LOG; qn];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let mut scratch = vec![0u64; 2 * k as usize];
        let nz_gen: Vec<(usize, u64)> = generator_digits
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c as u64))
            .collect();
        for (i, slot) in exp.iter_mut().take(qn - 1).enumerate() {
            let e = encode_digits(&cur, p);
            if log[e as usize] != NO_LOG {
                return Err(Error::Internal(format!("generator search failed for F_{p}^{k}")));
            }
            *slot = e;
            log[e as usize] = i as u32;
            mul_by_sparse(&mut cur, &nz_gen, modulus, p, &mut scratch);
        }
        exp.copy_within(0..qn - 1, qn - 1);

        let mut ctx = FieldContext {
            p,
            k,
            q,
            modulus: modulus.to_vec(),
            generator,
            exp,
            log,
            zech: Vec::new(),
            trace: Vec::new(),
        };
        if p != 2 {
            let mut zech = vec![NO_LOG; qn - 1];
            for (i, z) in zech.iter_mut().enumerate() {
                let mut v = ctx.exp[i];
                let d0 = v % p;
                v = v - d0 + (d0 + 1) % p;
                if v != 0 {
                    *z = ctx.log[v as usize];
                }
            }
            ctx.zech = zech;
        }
        let basis_trace: Vec<u32> = (0..k)
            .map(|i| {
                let x = Elem(p.pow(i));
                let mut acc = Elem::ZERO;
                let mut y = x;
                for _ in 0..k {
                    acc = ctx.add(acc, y);
                    y = ctx.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        let mut trace = vec![0u16; qn];
        for (x, t) in trace.iter_mut().enumerate() {
            let mut v = x as u32;
            let mut acc = 0u32;
            for &bt in &basis_trace {
                acc = (acc + (v % p) * bt) % p;
                v /= p;
            }
            *t = acc as u16;
        }
        ctx.trace = trace;
        Ok(ctx)
    }

    fn check_size(p: u32, k: u32) -> Result<u32> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::Parameter("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE);
        match q {
            Some(q) => Ok(q as u32),
            None => Err(Error::Budget {
                what: "field size",
                required: (p as u64).checked_pow(k).unwrap_or(u64::MAX),
                limit: MAX_FIELD_SIZE,
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, little-endian digits, monic of degree `k`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest-encoding generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        digits_of(x.0, self.p, self.k as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<Elem> {
        if d.len() > self.k as usize || d.iter().any(|&c| c >= self.p) {
            return Err(Error::Parameter(format!(
                "digit vector {d:?} is not an element of F_{}^{}",
                self.p, self.k
            )));
        }
        Ok(Elem(encode_digits(d, self.p)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    /// Discrete logarithm to the base [`Self::primitive_element`].
    pub fn log(&self, x: Elem) -> Option<u32> {
        let l = self.log[x.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let (la, lb) = (self.log[a.0 as usize], self.log[b.0 as usize]);
        let n = self.q - 1;
        let diff = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[diff as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            Elem(self.exp[(la + z) as usize])
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.q - 1) / 2;
        Elem(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(Elem(self.exp[((n - l) % n.max(1)) as usize]))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (e % n)) % n) as usize])
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.0 as usize] as u32
    }

    /// Exponent `j` with chi_a(s) = omega^j, where chi_a(s) = omega^{Tr(a s)}.
    pub fn char_exponent(&self, a: Elem, s: Elem) -> u32 {
        self.trace(self.mul(a, s))
    }

    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.p as u64)
    }

    /// Order of a nonzero element in the multiplicative group.
    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / num_integer::gcd(l, n))
    }
}

pub(crate) fn digits_of(mut v: u32, p: u32, k: usize) -> Vec<u32> {
    let mut d = vec![0u32; k];
    for slot in d.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    d
}

pub(crate) fn encode_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// `cur <- cur * g mod modulus` where `g` is given by its nonzero digits.
fn mul_by_sparse(cur: &mut [u32], g: &[(usize, u64)], modulus: &[u32], p: u32, scratch: &mut [u64]) {
    let k = cur.len();
    let p64 = p as u64;
    scratch.iter_mut().for_each(|s| *s = 0);
    for &(j, gj) in g {
        for (i, &c) in cur.iter().enumerate() {
            if c != 0 {
                scratch[i + j] = (scratch[i + j] + gj * c as u64) % p64;
            }
        }
    }
    for top in (k..2 * k).rev() {
        let c = scratch[top];
        if c == 0 {
            continue;
        }
        scratch[top] = 0;
        let shift = top - k;
        for (i, &m) in modulus[..k].iter().enumerate() {
            if m != 0 {
                scratch[shift + i] = (scratch[shift + i] + (p64 - c) * m as u64) % p64;
            }
        }
    }
    for (c, s) in cur.iter_mut().zip(scratch.iter()) {
        *c = *s as u32;
    }
}
