use alloc::format;
use alloc::vec::Vec;

use super::{closure, find_free_point, orbit, roots_of_linearized, AffineMap, GroupA, ScalingGroup, TranslationGroup};
use crate::gf::{is_prime, Elem, Embedding, FieldContext, FpSubspace};
use crate::poly::Poly;
use crate::{Error, Rational, Result};

/// Parameter family without its continuous parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    First,
    Second,
}

/// Parameter family. The second carries `gamma = |H| / (p^{m+1} - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instantiation {
    First,
    Second { gamma: Rational },
}

impl Instantiation {
    pub fn family(&self) -> Family {
        match self {
            Instantiation::First => Family::First,
            Instantiation::Second { .. } => Family::Second,
        }
    }

    pub fn gamma(&self) -> Rational {
        match self {
            Instantiation::First => Rational::from_integer(1),
            Instantiation::Second { gamma } => *gamma,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    pub p: u32,
    pub m: u32,
    pub instantiation: Instantiation,
}

impl InstanceParams {
    pub fn first(p: u32, m: u32) -> Self {
        InstanceParams {
            p,
            m,
            instantiation: Instantiation::First,
        }
    }

    pub fn second(p: u32, m: u32, gamma: Rational) -> Self {
        InstanceParams {
            p,
            m,
            instantiation: Instantiation::Second { gamma },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p as u64) {
            return Err(Error::NotPrime(self.p as u64));
        }
        if self.m < 2 {
            return Err(Error::Parameter(format!("m = {} must be at least 2", self.m)));
        }
        self.scaling_index().map(|_| ())
    }

    /// Index `a` of `H` in F_{p^{m+1}}^×, from `gamma = 1/a`; 1 for the first family.
    pub fn scaling_index(&self) -> Result<u64> {
        let Instantiation::Second { gamma } = self.instantiation else {
            return Ok(1);
        };
        let (num, den) = (*gamma.numer(), *gamma.denom());
        if num != 1 || den < 1 {
            return Err(Error::Parameter(format!(
                "gamma = {num}/{den} must be 1/a for a positive integer a"
            )));
        }
        if (self.p as i64 - 1) % den != 0 {
            return Err(Error::Parameter(format!(
                "gamma = 1/{den} requires {den} to divide p - 1 = {}",
                self.p - 1
            )));
        }
        Ok(den as u64)
    }

    pub fn g_size(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn h_size(&self) -> u64 {
        let p = self.p as u64;
        match self.instantiation {
            Instantiation::First => p.pow(self.m) - 1,
            Instantiation::Second { .. } => (p.pow(self.m + 1) - 1) / self.scaling_index().unwrap_or(1),
        }
    }

    /// Invariant polynomial of `G` with coefficients in F_p (indices < p).
    pub fn translation_poly(&self) -> Poly {
        let pm = (self.p as usize).pow(self.m);
        let mut c = alloc::vec![Elem::ZERO; pm + 1];
        c[pm] = Elem::ONE;
        match self.instantiation {
            Instantiation::First => {
                c[self.p as usize] = Elem::ONE;
                c[1] = Elem::ONE;
            }
            Instantiation::Second { .. } => c[1] = Elem::from_index(self.p - 1),
        }
        Poly::from_coeffs(c)
    }
}

/// A fully constructed instance: field, groups, free point and evaluation set.
#[derive(Clone, Debug)]
pub struct Instance {
    pub params: InstanceParams,
    pub field: FieldContext,
    pub g: TranslationGroup,
    pub h: ScalingGroup,
    pub a: GroupA,
    pub alpha: Elem,
    pub maps: Vec<AffineMap>,
    pub omega: Vec<Elem>,
    s_points: Vec<Elem>,
    h_elems: Vec<Elem>,
}

fn splitting_degree(g: &Poly, fp: &FieldContext) -> Result<u32> {
    let x = Poly::x();
    let mut cur = x.clone();
    for d in 1..=64 {
        cur = cur.pow(fp.characteristic() as u64, fp).div_rem(g, fp).1;
        if cur == x {
            return Ok(d);
        }
    }
    Err(Error::Configuration(
        "translation polynomial does not split in a small extension".into(),
    ))
}

impl Instance {
    pub fn build(params: InstanceParams) -> Result<Self> {
        params.validate()?;
        let (p, m) = (params.p, params.m);
        match params.instantiation {
            Instantiation::First => {
                let fp = FieldContext::new(p, 1)?;
                let s_deg = splitting_degree(&params.translation_poly(), &fp)?;
                let l0 = num_integer::lcm(s_deg, m);
                let sub = FieldContext::new(p, m)?;
                let mut l = l0;
                loop {
                    let field = FieldContext::new(p, l)?;
                    let emb = Embedding::new(&sub, &field)?;
                    let h_gen = emb.apply(sub.primitive_element());
                    let g_space = roots_of_linearized(&params.translation_poly(), &field)?;
                    let h = ScalingGroup::new(h_gen, &field)?;
                    let s = closure(&g_space, &h, &field);
                    if (field.size() as u64) >= s.size(&field) * h.order {
                        return Self::assemble(params, field, g_space, h_gen, None);
                    }
                    l += l0;
                }
            }
            Instantiation::Second { .. } => {
                let a = params.scaling_index()?;
                let field = FieldContext::new(p, 2 * m * (m + 1))?;
                let sub = FieldContext::new(p, m + 1)?;
                let emb = Embedding::new(&sub, &field)?;
                let h_gen = field.pow(emb.apply(sub.primitive_element()), a);
                let g_space = roots_of_linearized(&params.translation_poly(), &field)?;
                Self::assemble(params, field, g_space, h_gen, None)
            }
        }
    }

    /// Rebuilds an instance from stored components, validating each against the parameters.
    pub fn from_parts(
        params: InstanceParams,
        field: FieldContext,
        g_basis: &[Elem],
        h_generator: Elem,
        alpha: Elem,
    ) -> Result<Self> {
        params.validate()?;
        if field.characteristic() != params.p {
            return Err(Error::Configuration("field characteristic does not match p".into()));
        }
        if g_basis
            .iter()
            .chain([&h_generator, &alpha])
            .any(|&x| !field.contains(x))
        {
            return Err(Error::Configuration("stored element outside the field".into()));
        }
        let g_space = FpSubspace::span(&field, g_basis.iter().copied());
        Self::assemble(params, field, g_space, h_generator, Some(alpha))
    }

    fn assemble(
        params: InstanceParams,
        field: FieldContext,
        g_space: FpSubspace,
        h_gen: Elem,
        alpha: Option<Elem>,
    ) -> Result<Self> {
        let g = TranslationGroup::new(g_space, &field);
        if g.invariant_poly != params.translation_poly() {
            return Err(Error::Configuration(
                "translation subgroup does not match the family's invariant polynomial".into(),
            ));
        }
        let h = ScalingGroup::new(h_gen, &field)?;
        if h.order != params.h_size() {
            return Err(Error::Configuration(format!(
                "scaling subgroup has order {}, expected {}",
                h.order,
                params.h_size()
            )));
        }
        let s = closure(&g.points, &h, &field);
        let a = GroupA::new(s, h.clone(), &field)?;
        let alpha = match alpha {
            Some(x) => x,
            None => find_free_point(&a, &field)?,
        };
        let maps = a.elements(&field);
        let omega = orbit(&maps, alpha, &field)?;
        let s_points = a.s.points(&field);
        let h_elems = h.elements(&field);
        Ok(Instance {
            params,
            field,
            g,
            h,
            a,
            alpha,
            maps,
            omega,
            s_points,
            h_elems,
        })
    }

    /// Code length `|A|`.
    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn g_size(&self) -> usize {
        self.g.invariant_poly.degree().unwrap_or(0)
    }

    pub fn h_size(&self) -> usize {
        self.h.order as usize
    }

    pub fn s(&self) -> &FpSubspace {
        &self.a.s
    }

    /// Points of `S` in increasing encoding order.
    pub fn s_points(&self) -> &[Elem] {
        &self.s_points
    }

    /// Elements of `H` in generator-power order.
    pub fn h_elements(&self) -> &[Elem] {
        &self.h_elems
    }

    /// Position of `x` in [`Self::s_points`].
    pub fn s_index(&self, x: Elem) -> Option<usize> {
        self.s_points.binary_search(&x).ok()
    }

    /// Invariant polynomial of `H`, `X^{|H|}`.
    pub fn h_poly(&self) -> Poly {
        self.h.invariant_poly()
    }
}
