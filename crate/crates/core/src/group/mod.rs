//! Translation and scaling subgroups of the affine group of a field,
//! the semidirect product `A = S ⋊ H`, free points and orbits.

mod instance;

pub use instance::{Family, Instance, InstanceParams, Instantiation};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::linalg::{nullspace, PrimeField};
use crate::gf::{Elem, FieldContext, FpSubspace};
use crate::poly::{translation_invariant_poly, Poly};
use crate::{Error, Result};

/// Additive subgroup acting by translation, with its invariant polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationGroup {
    pub points: FpSubspace,
    pub invariant_poly: Poly,
}

impl TranslationGroup {
    pub fn new(points: FpSubspace, f: &FieldContext) -> Self {
        let invariant_poly = translation_invariant_poly(&points, f);
        TranslationGroup { points, invariant_poly }
    }

    pub fn size(&self, f: &FieldContext) -> u64 {
        self.points.size(f)
    }
}

/// Cyclic multiplicative subgroup acting by scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingGroup {
    pub generator: Elem,
    pub order: u64,
}

impl ScalingGroup {
    pub fn new(generator: Elem, f: &FieldContext) -> Result<Self> {
        let order = f
            .multiplicative_order(generator)
            .ok_or_else(|| Error::Parameter("scaling generator must be nonzero".into()))?;
        Ok(ScalingGroup { generator, order })
    }

    /// Elements in generator-power order, starting at 1.
    pub fn elements(&self, f: &FieldContext) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut x = Elem::ONE;
        for _ in 0..self.order {
            out.push(x);
            x = f.mul(x, self.generator);
        }
        out
    }

    pub fn contains(&self, f: &FieldContext, x: Elem) -> bool {
        !x.is_zero() && f.pow(x, self.order) == Elem::ONE
    }

    pub fn invariant_poly(&self) -> Poly {
        crate::poly::scaling_invariant_poly(self.order)
    }
}

/// The map `x -> scale * x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    pub shift: Elem,
    pub scale: Elem,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            shift: Elem::ZERO,
            scale: Elem::ONE,
        }
    }

    pub fn apply(&self, x: Elem, f: &FieldContext) -> Elem {
        f.add(f.mul(self.scale, x), self.shift)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap, f: &FieldContext) -> AffineMap {
        AffineMap {
            shift: f.add(self.shift, f.mul(self.scale, other.shift)),
            scale: f.mul(self.scale, other.scale),
        }
    }

    pub fn inverse(&self, f: &FieldContext) -> AffineMap {
        let hi = f.inv(self.scale);
        AffineMap {
            shift: f.neg(f.mul(hi, self.shift)),
            scale: hi,
        }
    }
}

/// `A = S ⋊ H` for an `H`-invariant subspace `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupA {
    pub s: FpSubspace,
    pub h: ScalingGroup,
}

impl GroupA {
    pub fn new(s: FpSubspace, h: ScalingGroup, f: &FieldContext) -> Result<Self> {
        if s.scaled(f, h.generator) != s {
            return Err(Error::Configuration(
                "translation subspace is not invariant under scaling".into(),
            ));
        }
        Ok(GroupA { s, h })
    }

    pub fn order(&self, f: &FieldContext) -> u64 {
        self.s.size(f) * self.h.order
    }

    /// All maps, translation-major: edge id `s_idx * |H| + h_idx` with `S` in
    /// increasing encoding order and `H` in generator-power order.
    pub fn elements(&self, f: &FieldContext) -> Vec<AffineMap> {
        let hs = self.h.elements(f);
        let mut out = Vec::with_capacity((self.s.size(f) * self.h.order) as usize);
        for s in self.s.points(f) {
            for &h in &hs {
                out.push(AffineMap { shift: s, scale: h });
            }
        }
        out
    }
}

/// Root space of a separable linearized polynomial, as the kernel of the
/// F_p-linear map `x -> g(x)`.
pub fn roots_of_linearized(g: &Poly, f: &FieldContext) -> Result<FpSubspace> {
    let p = f.characteristic();
    let deg = g.degree().unwrap_or(0);
    if deg == 0 || !g.is_linearized(p) {
        return Err(Error::Parameter("polynomial is not linearized".into()));
    }
    if g.coeff(1).is_zero() {
        return Err(Error::Parameter("linearized polynomial is not separable".into()));
    }
    let k = f.degree() as usize;
    let images: Vec<Vec<u32>> = (0..k)
        .map(|i| f.digits(g.eval(Elem::from_index(p.pow(i as u32)), f)))
        .collect();
    let rows: Vec<Vec<u32>> = (0..k).map(|r| images.iter().map(|col| col[r]).collect()).collect();
    let ker = nullspace(&PrimeField { p }, &rows, k);
    let space = FpSubspace::span(f, ker.iter().map(|v| f.from_digits(v).expect("digits in range")));
    if space.size(f) != deg as u64 {
        return Err(Error::Configuration(format!(
            "ambient field F_{}^{} holds only {} of the {} roots",
            p,
            f.degree(),
            space.size(f),
            deg
        )));
    }
    Ok(space)
}

/// Smallest `H`-invariant F_p-subspace containing `G`.
pub fn closure(g: &FpSubspace, h: &ScalingGroup, f: &FieldContext) -> FpSubspace {
    let mut s = g.clone();
    loop {
        let mut next = s.clone();
        for b in s.basis(f) {
            next.insert(f, f.mul(h.generator, b));
        }
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

/// First element, in encoding order, with trivial stabilizer in `A`.
pub fn find_free_point(a: &GroupA, f: &FieldContext) -> Result<Elem> {
    if (f.size() as u64) < a.order(f) {
        return Err(Error::Configuration(format!(
            "ambient field of size {} is smaller than |A| = {}",
            f.size(),
            a.order(f)
        )));
    }
    let nontrivial: Vec<Elem> = a.h.elements(f).into_iter().skip(1).collect();
    f.elements()
        .find(|&x| {
            nontrivial
                .iter()
                .all(|&h| !a.s.contains(f, f.mul(f.sub(Elem::ONE, h), x)))
        })
        .ok_or_else(|| Error::Configuration("no free point for A in the ambient field".into()))
}

/// Orbit of `alpha` in the order of `maps`; fails if two maps agree on `alpha`.
pub fn orbit(maps: &[AffineMap], alpha: Elem, f: &FieldContext) -> Result<Vec<Elem>> {
    let mut seen = vec![false; f.size() as usize];
    let mut out = Vec::with_capacity(maps.len());
    for phi in maps {
        let y = phi.apply(alpha, f);
        if core::mem::replace(&mut seen[y.index() as usize], true) {
            return Err(Error::Configuration("point is not free: orbit repeats".into()));
        }
        out.push(y);
    }
    Ok(out)
}
