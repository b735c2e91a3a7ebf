//! Message spaces, encoding, local Reed-Solomon checks and distance.
//!
//! A message is a polynomial `f` with `deg f < D`, `deg_g f < r|G|` and
//! `deg_h f < r|H|`; its codeword is the evaluation vector on the orbit.

mod distance;
mod local;
mod message;
mod weights;

pub use distance::{
    exhaustive_min_distance, generator_matrix, information_set_min_distance, min_distance, DistanceMethod,
    DistanceResult, DEFAULT_DISTANCE_BUDGET,
};
pub use local::{check_local_rs, schur_check, LocalReport, VertexCheck};
pub use message::{message_space, message_space_for, MessageSpace};
pub use weights::{for_each_admissible_monomial, monomial_count, weight, weight_direct};

use alloc::format;
use alloc::vec::Vec;

use crate::gf::{Elem, FieldContext};
use crate::group::Instance;
use crate::poly::{deg_u, Poly};
use crate::{Error, Rational, Result};

/// Rate parameter `r` and global degree bound `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub r: Rational,
    pub d: usize,
}

impl CodeParams {
    pub fn new(r: Rational, d: usize) -> Self {
        CodeParams { r, d }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if self.r <= zero || self.r >= one {
            return Err(Error::Parameter(format!(
                "r = {} must lie strictly between 0 and 1",
                self.r
            )));
        }
        if self.d == 0 || self.d > n {
            return Err(Error::Parameter(format!(
                "D = {} must satisfy 1 <= D <= n = {n}",
                self.d
            )));
        }
        Ok(())
    }

    /// `rho = D / n`.
    pub fn rho(&self, n: usize) -> Rational {
        Rational::new(self.d as i64, n as i64)
    }
}

/// Number of integers `j >= 0` with `j < x`.
pub fn count_below(x: Rational) -> u64 {
    if x <= Rational::from_integer(0) {
        0
    } else {
        x.ceil().to_integer() as u64
    }
}

/// Evaluations of a message polynomial on the orbit, in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub values: Vec<Elem>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Checks the three degree constraints, naming the first one that fails.
pub fn check_constraints(poly: &Poly, g: &Poly, h: &Poly, params: &CodeParams, f: &FieldContext) -> Result<()> {
    if let Some(d) = poly.degree() {
        if d >= params.d {
            return Err(Error::ConstraintViolation {
                bound: "global degree",
                detail: format!("deg f = {d} is not below D = {}", params.d),
            });
        }
    }
    for (u, name) in [(g, "translation-local degree"), (h, "scaling-local degree")] {
        let du = deg_u(poly, u, f)?;
        let len = u.degree().unwrap_or(0) as i64;
        let bound = params.r * Rational::from_integer(len);
        if !du.is_below(bound) {
            return Err(Error::ConstraintViolation {
                bound: name,
                detail: format!("base-u degree {:?} is not below r * {len} = {bound}", du.finite()),
            });
        }
    }
    Ok(())
}

pub fn evaluate(poly: &Poly, points: &[Elem], f: &FieldContext) -> Codeword {
    Codeword {
        values: points.iter().map(|&x| poly.eval(x, f)).collect(),
    }
}

/// Encodes a message polynomial after validating the constraints.
pub fn encode(poly: &Poly, inst: &Instance, params: &CodeParams) -> Result<Codeword> {
    params.validate(inst.n())?;
    check_constraints(poly, &inst.g.invariant_poly, &inst.h_poly(), params, &inst.field)?;
    Ok(evaluate(poly, &inst.omega, &inst.field))
}

/// Encodes coordinates with respect to the message-space basis.
pub fn encode_coordinates(coords: &[Elem], ms: &MessageSpace, inst: &Instance) -> Result<Codeword> {
    let poly = ms.combination(coords, &inst.field)?;
    encode(&poly, inst, ms.params())
}
