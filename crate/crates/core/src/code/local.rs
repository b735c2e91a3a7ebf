use alloc::vec::Vec;

use super::{count_below, CodeParams, Codeword};
use crate::graph::{CosetGraph, Side};
use crate::group::Instance;
use crate::poly::interpolate;
use crate::{Error, Rational, Result};

/// Outcome of the degree test at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCheck {
    pub side: Side,
    pub vertex: usize,
    pub length: usize,
    /// Degree of the interpolant, `None` for the zero function.
    pub degree: Option<usize>,
    /// Interpolant must have degree strictly below this.
    pub limit: usize,
    /// Every function on the vertex passes.
    pub vacuous: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub vertices: Vec<VertexCheck>,
}

impl LocalReport {
    pub fn all_pass(&self) -> bool {
        self.vertices.iter().all(|v| v.passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VertexCheck> {
        self.vertices.iter().filter(|v| !v.passes)
    }

    pub fn vacuous_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.vacuous).count()
    }
}

fn run(
    values: &[crate::gf::Elem],
    graph: &CosetGraph,
    inst: &Instance,
    limit: impl Fn(usize) -> usize,
) -> Result<LocalReport> {
    if values.len() != inst.n() || graph.edges().len() != inst.n() {
        return Err(Error::LengthMismatch {
            expected: inst.n(),
            found: values.len(),
        });
    }
    let f = &inst.field;
    let mut vertices = Vec::new();
    for side in [Side::Left, Side::Right] {
        for (vertex, edges) in graph.incidence(side).into_iter().enumerate() {
            let xs: Vec<_> = edges.iter().map(|&e| inst.omega[e]).collect();
            let ys: Vec<_> = edges.iter().map(|&e| values[e]).collect();
            let degree = interpolate(&xs, &ys, f).degree();
            let length = edges.len();
            let lim = limit(length);
            vertices.push(VertexCheck {
                side,
                vertex,
                length,
                degree,
                limit: lim,
                vacuous: lim >= length,
                passes: degree.is_none_or(|d| d < lim),
            });
        }
    }
    Ok(LocalReport { vertices })
}

/// Checks that every vertex view interpolates to degree `< r * length`.
pub fn check_local_rs(cw: &Codeword, graph: &CosetGraph, inst: &Instance, params: &CodeParams) -> Result<LocalReport> {
    let r = params.r;
    run(&cw.values, graph, inst, |len| {
        count_below(r * Rational::from_integer(len as i64)) as usize
    })
}

/// Checks the coordinatewise product of two codewords against the doubled
/// local bound `2k - 1`, where `k` is the local dimension.
pub fn schur_check(
    a: &Codeword,
    b: &Codeword,
    graph: &CosetGraph,
    inst: &Instance,
    params: &CodeParams,
) -> Result<LocalReport> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let f = &inst.field;
    let prod: Vec<_> = a.values.iter().zip(&b.values).map(|(&x, &y)| f.mul(x, y)).collect();
    let r = params.r;
    run(&prod, graph, inst, |len| {
        let k = count_below(r * Rational::from_integer(len as i64)) as usize;
        (2 * k).saturating_sub(1)
    })
}
