//! Univariate polynomials over a [`FieldContext`], base-u expansions and
//! the invariant polynomials of translation and scaling groups.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::gf::{Elem, FieldContext, FpSubspace};
use crate::{Error, Rational, Result};

/// Dense polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(Elem::ONE, 1)
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    pub fn add(&self, o: &Poly, f: &FieldContext) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: &FieldContext) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldContext) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: Elem, f: &FieldContext) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `X^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, o: &Poly, f: &FieldContext) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.coeffs.len() <= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let b_nz: Vec<(usize, Elem)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        let mut out = vec![Elem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for &(j, bj) in &b_nz {
                out[i + j] = f.add(out[i + j], f.mul(ai, bj));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly, f: &FieldContext) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if n < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = f.inv(d.coeffs[dd]);
        let d_nz: Vec<(usize, Elem)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
            .collect();
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; n - dd + 1];
        for top in (dd..=n).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            q[shift] = c;
            r[top] = Elem::ZERO;
            for &(i, di) in &d_nz {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn pow(&self, mut e: u64, f: &FieldContext) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn eval(&self, x: Elem, f: &FieldContext) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &FieldContext) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Whether every nonzero term has exponent `p^i`.
    pub fn is_linearized(&self, p: u32) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(e, c)| c.is_zero() || is_power_of(e as u64, p as u64))
    }
}

fn is_power_of(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e % p == 0 {
        e /= p;
    }
    e == 1
}

/// Degree in a base-u expansion: the largest degree among the digits,
/// or minus infinity for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseDegree {
    MinusInfinity,
    Finite(usize),
}

impl PartialOrd for BaseDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BaseDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BaseDegree::MinusInfinity, BaseDegree::MinusInfinity) => Ordering::Equal,
            (BaseDegree::MinusInfinity, _) => Ordering::Less,
            (_, BaseDegree::MinusInfinity) => Ordering::Greater,
            (BaseDegree::Finite(a), BaseDegree::Finite(b)) => a.cmp(b),
        }
    }
}

impl BaseDegree {
    pub fn from_degree(d: Option<usize>) -> Self {
        d.map_or(BaseDegree::MinusInfinity, BaseDegree::Finite)
    }

    /// Strict comparison `self < bound` against an exact rational.
    pub fn is_below(self, bound: Rational) -> bool {
        match self {
            BaseDegree::MinusInfinity => true,
            BaseDegree::Finite(d) => Rational::from_integer(d as i64) < bound,
        }
    }

    /// Sum of degrees, absorbing minus infinity.
    pub fn plus(self, o: BaseDegree) -> BaseDegree {
        match (self, o) {
            (BaseDegree::Finite(a), BaseDegree::Finite(b)) => BaseDegree::Finite(a + b),
            _ => BaseDegree::MinusInfinity,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            BaseDegree::Finite(d) => Some(d),
            BaseDegree::MinusInfinity => None,
        }
    }
}

/// `f = sum_i c_i u^i` with every `deg c_i < deg u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseUExpansion {
    u: Poly,
    digits: Vec<Poly>,
}

impl BaseUExpansion {
    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn digits(&self) -> &[Poly] {
        &self.digits
    }

    pub fn degree(&self) -> BaseDegree {
        self.digits
            .iter()
            .map(|c| BaseDegree::from_degree(c.degree()))
            .max()
            .unwrap_or(BaseDegree::MinusInfinity)
    }

    /// Reassembles `f` by Horner evaluation at `u`.
    pub fn recompose(&self, f: &FieldContext) -> Poly {
        self.digits
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(&self.u, f).add(c, f))
    }
}

fn check_base(u: &Poly) -> Result<usize> {
    match u.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::Parameter("expansion base must be nonconstant".into())),
    }
}

/// Iterated Euclidean division of `f` by `u`.
pub fn base_u_expand(f: &Poly, u: &Poly, field: &FieldContext) -> Result<BaseUExpansion> {
    let du = check_base(u)?;
    let mut digits = Vec::new();
    if u.coeffs[..du].iter().all(|c| c.is_zero()) {
        // u = c X^du: digits are coefficient blocks rescaled by powers of c^{-1}.
        let cinv = field.inv(u.coeffs[du]);
        let mut scale = Elem::ONE;
        for block in f.coeffs.chunks(du) {
            digits.push(Poly::from_coeffs(block.iter().map(|&a| field.mul(a, scale)).collect()));
            scale = field.mul(scale, cinv);
        }
    } else {
        let mut cur = f.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(u, field);
            digits.push(r);
            cur = q;
        }
    }
    Ok(BaseUExpansion { u: u.clone(), digits })
}

/// Largest digit degree in the base-u expansion of `f`.
pub fn deg_u(f: &Poly, u: &Poly, field: &FieldContext) -> Result<BaseDegree> {
    Ok(base_u_expand(f, u, field)?.degree())
}

/// `prod_{x in points} (X - x)`.
pub fn vanishing_poly(points: &[Elem], f: &FieldContext) -> Poly {
    let mut acc = Poly::one();
    for &x in points {
        acc = acc.mul(&Poly::from_coeffs(vec![f.neg(x), Elem::ONE]), f);
    }
    acc
}

/// Invariant polynomial of a translation group: the subspace's vanishing polynomial.
pub fn translation_invariant_poly(g: &FpSubspace, f: &FieldContext) -> Poly {
    vanishing_poly(&g.points(f), f)
}

/// Invariant polynomial of the scaling group of the given order: `X^order`.
pub fn scaling_invariant_poly(order: u64) -> Poly {
    Poly::monomial(Elem::ONE, order as usize)
}

/// Newton interpolation through the points `(xs[i], ys[i])`, `xs` distinct.
pub fn interpolate(xs: &[Elem], ys: &[Elem], f: &FieldContext) -> Poly {
    assert_eq!(xs.len(), ys.len(), "interpolation needs matching lengths");
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - level]);
            dd[i] = f.div(num, den);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        acc = acc.mul(&Poly::from_coeffs(vec![f.neg(xs[i]), Elem::ONE]), f);
        acc = acc.add(&Poly::constant(dd[i]), f);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldContext {
        FieldContext::new(2, 1).unwrap()
    }

    fn p(v: &[u32]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&c| Elem::from_index(c)).collect())
    }

    #[test]
    fn base_x2_plus_1_example() {
        let f = f2();
        // X^5 + X + 1 = X (X^2+1)^2 + 1
        let e = base_u_expand(&p(&[1, 1, 0, 0, 0, 1]), &p(&[1, 0, 1]), &f).unwrap();
        assert_eq!(e.digits(), &[p(&[1]), Poly::zero(), p(&[0, 1])]);
        assert_eq!(e.degree(), BaseDegree::Finite(1));
    }

    #[test]
    fn base_u_of_u_and_zero() {
        let f = f2();
        let u = p(&[1, 1, 1]);
        let e = base_u_expand(&u, &u, &f).unwrap();
        assert_eq!(e.digits(), &[Poly::zero(), Poly::one()]);
        assert_eq!(deg_u(&Poly::zero(), &u, &f).unwrap(), BaseDegree::MinusInfinity);
        assert!(base_u_expand(&u, &Poly::one(), &f).is_err());
    }

    #[test]
    fn monomial_base_matches_division() {
        let f = FieldContext::new(3, 2).unwrap();
        let fx: Poly = Poly::from_coeffs((0..40).map(|i| Elem::from_index((i * 7 + 3) % 9)).collect());
        let u = Poly::monomial(Elem::from_index(5), 6);
        let fast = base_u_expand(&fx, &u, &f).unwrap();
        let mut slow = Vec::new();
        let mut cur = fx.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(&u, &f);
            slow.push(r);
            cur = q;
        }
        assert_eq!(fast.digits(), &slow[..]);
        assert_eq!(fast.recompose(&f), fx);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = FieldContext::new(5, 2).unwrap();
        let poly = Poly::from_coeffs((0..6).map(|i| Elem::from_index(i * 4 + 1)).collect());
        let xs: Vec<Elem> = (3..12).map(Elem::from_index).collect();
        let ys: Vec<Elem> = xs.iter().map(|&x| poly.eval(x, &f)).collect();
        assert_eq!(interpolate(&xs, &ys, &f), poly);
    }

    #[test]
    fn base_degree_order() {
        assert!(BaseDegree::MinusInfinity < BaseDegree::Finite(0));
        assert!(BaseDegree::MinusInfinity.is_below(Rational::new(-3, 1)));
        assert!(BaseDegree::Finite(2).is_below(Rational::new(5, 2)));
        assert!(!BaseDegree::Finite(2).is_below(Rational::new(2, 1)));
    }
}
