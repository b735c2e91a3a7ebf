//! The coset graph of an instance and its second singular value.
//!
//! Edges are the maps of `A` (edge id = position in [`Instance::maps`]).
//! The map `(s, h)` joins the left vertex `(h, s + G)` to the right vertex
//! `h^{-1} s`, so left vertices carry `|G|` edges and right vertices `|H|`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::gf::{Elem, FieldContext, FpSubspace};
use crate::group::{Family, Instance, ScalingGroup};
use crate::{Error, Result};

/// Default cap on either side of the biadjacency matrix for the dense SVD.
pub const DEFAULT_SVD_MAX_SIDE: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Bipartite multigraph given by its edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(u32, u32)>,
}

impl CosetGraph {
    pub fn from_edges(left_count: usize, right_count: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if edges
            .iter()
            .any(|&(l, r)| l as usize >= left_count || r as usize >= right_count)
        {
            return Err(Error::Parameter("edge endpoint out of range".into()));
        }
        Ok(CosetGraph {
            left_count,
            right_count,
            edges,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// `(left, right)` endpoints indexed by edge id.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Edge ids at each vertex of a side, in increasing order.
    pub fn incidence(&self, side: Side) -> Vec<Vec<usize>> {
        let count = match side {
            Side::Left => self.left_count,
            Side::Right => self.right_count,
        };
        let mut out = vec![Vec::new(); count];
        for (e, &(l, r)) in self.edges.iter().enumerate() {
            let v = if side == Side::Left { l } else { r };
            out[v as usize].push(e);
        }
        out
    }

    /// Common degree of a side, `None` if the side is irregular.
    pub fn degree(&self, side: Side) -> Option<usize> {
        let inc = self.incidence(side);
        let d = inc.first()?.len();
        inc.iter().all(|v| v.len() == d).then_some(d)
    }

    pub fn is_biregular(&self) -> bool {
        self.degree(Side::Left).is_some() && self.degree(Side::Right).is_some()
    }

    /// No two edges share both endpoints.
    pub fn is_simple(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).all(|w| w[0] != w[1])
    }

    /// Edge multiplicities, left-major.
    pub fn biadjacency(&self) -> Vec<Vec<u32>> {
        let mut b = vec![vec![0u32; self.right_count]; self.left_count];
        for &(l, r) in &self.edges {
            b[l as usize][r as usize] += 1;
        }
        b
    }

    /// `N = B^T B`: number of two-step paths between right vertices.
    pub fn two_step_counts(&self) -> Vec<Vec<u64>> {
        let mut n = vec![vec![0u64; self.right_count]; self.right_count];
        for nbrs in self.incidence(Side::Left) {
            for &e1 in &nbrs {
                for &e2 in &nbrs {
                    n[self.edges[e1].1 as usize][self.edges[e2].1 as usize] += 1;
                }
            }
        }
        n
    }
}

/// Smallest encoding in the coset `s + G`.
pub fn coset_rep(s: Elem, g_points: &[Elem], f: &FieldContext) -> Elem {
    g_points.iter().map(|&g| f.add(s, g)).min().unwrap_or(s)
}

/// Builds the coset graph. Left vertices are numbered by first appearance
/// along the edge order; right vertices by position in `S`.
pub fn build_graph(inst: &Instance) -> Result<CosetGraph> {
    let f = &inst.field;
    let g_points = inst.g.points.points(f);
    let mut left_ids: BTreeMap<(Elem, Elem), u32> = BTreeMap::new();
    let mut edges = Vec::with_capacity(inst.maps.len());
    for phi in &inst.maps {
        let key = (phi.scale, coset_rep(phi.shift, &g_points, f));
        let next = left_ids.len() as u32;
        let l = *left_ids.entry(key).or_insert(next);
        let right = f.mul(f.inv(phi.scale), phi.shift);
        let r = inst
            .s_index(right)
            .ok_or_else(|| Error::Internal("right endpoint outside S".into()))?;
        edges.push((l, r as u32));
    }
    CosetGraph::from_edges(left_ids.len(), inst.s_points().len(), edges)
}

/// Largest and second largest singular values of a normalized biadjacency matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularPair {
    pub sigma1: f64,
    pub sigma2: f64,
}

/// Dense SVD of `T = B / sqrt(d_L d_R)` for a biregular graph.
pub fn sigma2_svd(graph: &CosetGraph, max_side: usize) -> Result<SingularPair> {
    let side = graph.left_count.max(graph.right_count);
    if side > max_side {
        return Err(Error::Budget {
            what: "SVD matrix side",
            required: side as u64,
            limit: max_side as u64,
        });
    }
    let (Some(dl), Some(dr)) = (graph.degree(Side::Left), graph.degree(Side::Right)) else {
        return Err(Error::Parameter("graph is not biregular".into()));
    };
    let scale = 1.0 / libm::sqrt((dl * dr) as f64);
    let mut t = DMatrix::<f64>::zeros(graph.left_count, graph.right_count);
    for &(l, r) in &graph.edges {
        t[(l as usize, r as usize)] += scale;
    }
    let mut sv: Vec<f64> = t.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(SingularPair {
        sigma1: sv.first().copied().unwrap_or(0.0),
        sigma2: sv.get(1).copied().unwrap_or(0.0),
    })
}

/// `sigma_2 = sqrt(max_count / |H|)` with the maximizing frequency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sigma2Exact {
    pub max_count: u64,
    pub h_order: u64,
    pub maximizer: Option<Elem>,
}

impl Sigma2Exact {
    pub fn value(&self) -> f64 {
        libm::sqrt(self.max_count as f64 / self.h_order as f64)
    }

    /// `sigma_2^2` as an exact fraction `(max_count, |H|)`.
    pub fn squared(&self) -> (u64, u64) {
        (self.max_count, self.h_order)
    }
}

fn in_dual(y: Elem, basis: &[Elem], f: &FieldContext) -> bool {
    basis.iter().all(|&b| f.trace(f.mul(y, b)) == 0)
}

/// `#{h in H : h^{-1} a in G^⊥}`, the eigenvalue of `|H| T^*T` on `chi_a`.
pub fn eigenvalue_count(a: Elem, g: &FpSubspace, h_elems: &[Elem], f: &FieldContext) -> u64 {
    let gb = g.basis(f);
    h_elems.iter().filter(|&&h| in_dual(f.mul(f.inv(h), a), &gb, f)).count() as u64
}

/// Exact `sigma_2` by maximizing the eigenvalue count over `a` outside `S^⊥`.
pub fn sigma2_exact(g: &FpSubspace, h: &ScalingGroup, s: &FpSubspace, f: &FieldContext) -> Sigma2Exact {
    let gb = g.basis(f);
    let sb = s.basis(f);
    let h_inv: Vec<Elem> = h.elements(f).iter().map(|&x| f.inv(x)).collect();
    let mut best = Sigma2Exact {
        max_count: 0,
        h_order: h.order,
        maximizer: None,
    };
    for a in f.elements() {
        if in_dual(a, &sb, f) {
            continue;
        }
        let c = h_inv.iter().filter(|&&hi| in_dual(f.mul(hi, a), &gb, f)).count() as u64;
        if best.maximizer.is_none() || c > best.max_count {
            best.max_count = c;
            best.maximizer = Some(a);
        }
    }
    best
}

/// Exponent histogram of `sum_{h in H} omega^{Tr(a h)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSum {
    pub histogram: Vec<u64>,
}

impl CharSum {
    pub fn new(a: Elem, h_elems: &[Elem], f: &FieldContext) -> Self {
        let mut histogram = vec![0u64; f.characteristic() as usize];
        for &h in h_elems {
            histogram[f.char_exponent(a, h) as usize] += 1;
        }
        CharSum { histogram }
    }

    /// Exact integer value when the sum lies in Z, which happens iff the
    /// counts at every nonzero exponent agree.
    pub fn as_integer(&self) -> Option<i64> {
        let rest = &self.histogram[1..];
        let c = rest.first().copied().unwrap_or(0);
        rest.iter()
            .all(|&x| x == c)
            .then(|| self.histogram[0] as i64 - c as i64)
    }

    pub fn magnitude(&self) -> f64 {
        let p = self.histogram.len() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, &c) in self.histogram.iter().enumerate() {
            let t = 2.0 * core::f64::consts::PI * j as f64 / p;
            re += c as f64 * libm::cos(t);
            im += c as f64 * libm::sin(t);
        }
        libm::sqrt(re * re + im * im)
    }
}

/// Largest character-sum magnitude over `a` outside `H^⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharSumMax {
    pub value: f64,
    pub maximizer: Option<Elem>,
    pub sum: Option<CharSum>,
}

pub fn char_sum_max(h_elems: &[Elem], f: &FieldContext) -> CharSumMax {
    let mut best = CharSumMax {
        value: 0.0,
        maximizer: None,
        sum: None,
    };
    let n = h_elems.len() as u64;
    for a in f.elements() {
        let cs = CharSum::new(a, h_elems, f);
        if cs.histogram[0] == n {
            continue;
        }
        let v = cs.magnitude();
        if best.maximizer.is_none() || v > best.value + 1e-12 {
            best = CharSumMax {
                value: v,
                maximizer: Some(a),
                sum: Some(cs),
            };
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBounds {
    /// `sqrt(1/p + M/|H|)`.
    pub general: f64,
    /// Family-specific form with `M` replaced by its known bound.
    pub instance: f64,
}

pub fn spectral_bounds(p: u32, m: u32, char_max: f64, h_order: u64, family: Family) -> SpectralBounds {
    let pf = p as f64;
    let general = libm::sqrt(1.0 / pf + char_max / h_order as f64);
    let instance = match family {
        Family::First => libm::sqrt(1.0 / pf + 1.0 / (libm::pow(pf, m as f64) - 1.0)),
        Family::Second => {
            let q = libm::pow(pf, (m + 1) as f64);
            libm::sqrt(1.0 / pf + libm::sqrt(q) / h_order as f64)
        }
    };
    SpectralBounds { general, instance }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub sigma2_exact: Sigma2Exact,
    /// `None` when the dense SVD is over budget.
    pub svd: Option<SingularPair>,
    pub char_sum_max: CharSumMax,
    pub bounds: SpectralBounds,
}

impl SpectralReport {
    pub fn svd_agreement(&self) -> Option<f64> {
        self.svd.map(|s| libm::fabs(s.sigma2 - self.sigma2_exact.value()))
    }
}

pub fn spectral_report(inst: &Instance, graph: &CosetGraph, max_side: usize) -> Result<SpectralReport> {
    let f = &inst.field;
    let svd = match sigma2_svd(graph, max_side) {
        Ok(s) => Some(s),
        Err(Error::Budget { .. }) => None,
        Err(e) => return Err(e),
    };
    let sigma2_exact = sigma2_exact(&inst.g.points, &inst.h, inst.s(), f);
    let cs = char_sum_max(inst.h_elements(), f);
    let bounds = spectral_bounds(
        inst.params.p,
        inst.params.m,
        cs.value,
        inst.h.order,
        inst.params.instantiation.family(),
    );
    Ok(SpectralReport {
        sigma2_exact,
        svd,
        char_sum_max: cs,
        bounds,
    })
}

/// `P[s][s']`: number of pairs `(g, h)` with `s' = s + h^{-1} g`.
pub fn transition_counts(inst: &Instance) -> Vec<Vec<u64>> {
    let f = &inst.field;
    let s = inst.s_points();
    let g_points = inst.g.points.points(f);
    let h_inv: Vec<Elem> = inst.h_elements().iter().map(|&h| f.inv(h)).collect();
    let mut out = vec![vec![0u64; s.len()]; s.len()];
    for (i, &x) in s.iter().enumerate() {
        for &hi in &h_inv {
            for &g in &g_points {
                let y = f.add(x, f.mul(hi, g));
                out[i][inst.s_index(y).expect("S is H-invariant")] += 1;
            }
        }
    }
    out
}
