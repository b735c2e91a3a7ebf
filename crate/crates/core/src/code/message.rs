use alloc::vec;
use alloc::vec::Vec;

use super::{check_constraints, count_below, CodeParams};
use crate::gf::linalg::nullspace;
use crate::gf::{Elem, FieldContext};
use crate::group::Instance;
use crate::poly::Poly;
use crate::{Error, Rational, Result};

/// `W = U ∩ V`, with `U` the polynomials of small base-g degree and `V`
/// those of small base-h degree, both below degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageSpace {
    basis: Vec<Poly>,
    dim_u: usize,
    dim_v: usize,
    params: CodeParams,
    g: Poly,
    h: Poly,
}

impl MessageSpace {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// Membership by the defining degree constraints.
    pub fn contains(&self, poly: &Poly, f: &FieldContext) -> bool {
        check_constraints(poly, &self.g, &self.h, &self.params, f).is_ok()
    }

    pub fn combination(&self, coords: &[Elem], f: &FieldContext) -> Result<Poly> {
        if coords.len() != self.basis.len() {
            return Err(Error::LengthMismatch {
                expected: self.basis.len(),
                found: coords.len(),
            });
        }
        let mut acc = Poly::zero();
        for (&c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c, f), f);
            }
        }
        Ok(acc)
    }
}

pub fn message_space(inst: &Instance, params: &CodeParams) -> Result<MessageSpace> {
    params.validate(inst.n())?;
    message_space_for(&inst.g.invariant_poly, &inst.h_poly(), params, &inst.field)
}

fn padded(p: &Poly, d: usize) -> Vec<Elem> {
    let mut v = p.coeffs().to_vec();
    v.resize(d, Elem::ZERO);
    v
}

/// Products `X^i u^j` with `i < r deg u` and total degree below `D`.
fn spanning_products(u: &Poly, r: Rational, d: usize, f: &FieldContext) -> Vec<Poly> {
    let du = u.degree().unwrap_or(0);
    let width = count_below(r * Rational::from_integer(du as i64)) as usize;
    let mut out = Vec::new();
    let mut uj = Poly::one();
    while uj.degree().is_some_and(|deg| deg < d) {
        let deg = uj.degree().unwrap_or(0);
        for i in 0..width.min(d - deg) {
            out.push(uj.shift(i));
        }
        uj = uj.mul(u, f);
    }
    out
}

/// Message space for explicit invariant polynomials `g` and `h`.
pub fn message_space_for(g: &Poly, h: &Poly, params: &CodeParams, f: &FieldContext) -> Result<MessageSpace> {
    let d = params.d;
    let u_basis = spanning_products(g, params.r, d, f);
    let v_basis = spanning_products(h, params.r, d, f);
    let v_rows: Vec<Vec<Elem>> = v_basis.iter().map(|p| padded(p, d)).collect();
    let v_perp = nullspace(f, &v_rows, d);
    let perp_sparse: Vec<Vec<(usize, Elem)>> = v_perp
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (i, c))
                .collect()
        })
        .collect();
    // Row j, column i: <u_i, v_perp_j>. Its kernel gives the U-coordinates of U ∩ V.
    let constraints: Vec<Vec<Elem>> = perp_sparse
        .iter()
        .map(|w| {
            u_basis
                .iter()
                .map(|u| {
                    w.iter()
                        .fold(Elem::ZERO, |acc, &(i, c)| f.add(acc, f.mul(c, u.coeff(i))))
                })
                .collect()
        })
        .collect();
    let coords = if constraints.is_empty() {
        (0..u_basis.len())
            .map(|i| {
                let mut v = vec![Elem::ZERO; u_basis.len()];
                v[i] = Elem::ONE;
                v
            })
            .collect()
    } else {
        nullspace(f, &constraints, u_basis.len())
    };
    let basis = coords
        .iter()
        .map(|a| {
            let mut acc = vec![Elem::ZERO; d];
            for (&c, u) in a.iter().zip(&u_basis) {
                if c.is_zero() {
                    continue;
                }
                for (slot, &x) in acc.iter_mut().zip(u.coeffs()) {
                    if !x.is_zero() {
                        *slot = f.add(*slot, f.mul(c, x));
                    }
                }
            }
            Poly::from_coeffs(acc)
        })
        .collect();
    Ok(MessageSpace {
        basis,
        dim_u: u_basis.len(),
        dim_v: v_basis.len(),
        params: *params,
        g: g.clone(),
        h: h.clone(),
    })
}
