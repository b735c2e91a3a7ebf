//! Report sections. Each section is a JSON value plus the inequalities it checked.

use aecode_core::bounds::{counting_baseline, distance_bounds, rate_lower_bound, volume_first, volume_second};
use aecode_core::code::{
    check_local_rs, encode_coordinates, generator_matrix, message_space, min_distance, monomial_count, schur_check,
    CodeParams, Codeword, DistanceMethod, LocalReport, MessageSpace,
};
use aecode_core::gf::Elem;
use aecode_core::graph::{spectral_report, CosetGraph, Side};
use aecode_core::group::{Family, Instance};
use aecode_core::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{format_rational, Budgets};
use crate::format::fixed;
use crate::CliError;

/// Slack for comparisons between floating-point quantities.
pub const FLOAT_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub relation: &'static str,
    pub rhs: f64,
    pub holds: bool,
}

impl Check {
    pub fn le(name: &str, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs: fixed(lhs),
            relation: "<=",
            rhs: fixed(rhs),
            holds: lhs <= rhs + FLOAT_SLACK,
        }
    }

    pub fn ge(name: &str, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs: fixed(lhs),
            relation: ">=",
            rhs: fixed(rhs),
            holds: lhs + FLOAT_SLACK >= rhs,
        }
    }

    pub fn close(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            lhs: fixed(lhs),
            relation: "~=",
            rhs: fixed(rhs),
            holds: (lhs - rhs).abs() <= tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub value: Value,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn code_params(inst: &Instance, r: Rational, d: usize) -> Result<CodeParams, CliError> {
    let cp = CodeParams::new(r, d);
    cp.validate(inst.n())?;
    Ok(cp)
}

fn rho_f64(cp: &CodeParams, n: usize) -> f64 {
    cp.d as f64 / n as f64
}

pub fn spectrum_section(inst: &Instance, graph: &CosetGraph, budgets: &Budgets) -> Result<Section, CliError> {
    let rep = spectral_report(inst, graph, budgets.svd_max_side)?;
    let f = &inst.field;
    let exact = rep.sigma2_exact.value();
    let (num, den) = rep.sigma2_exact.squared();
    let cs = &rep.char_sum_max;
    let mut checks = vec![
        Check::le("sigma2_exact <= bound_instance", exact, rep.bounds.instance),
        Check::le("sigma2_exact <= bound_general", exact, rep.bounds.general),
    ];
    match inst.params.instantiation.family() {
        Family::First => checks.push(Check::close("M == 1", cs.value, 1.0, 1e-9)),
        Family::Second => {
            let q = (inst.params.p as f64).powi(inst.params.m as i32 + 1);
            checks.push(Check::le("M <= sqrt(p^(m+1))", cs.value, q.sqrt()));
        }
    }
    let (sigma1_svd, sigma2_svd) = match rep.svd {
        Some(s) => {
            checks.push(Check::close("|sigma1_svd - 1| <= 1e-9", s.sigma1, 1.0, 1e-9));
            checks.push(Check::close(
                "|sigma2_svd - sigma2_exact| <= 1e-9",
                s.sigma2,
                exact,
                1e-9,
            ));
            (json!(fixed(s.sigma1)), json!(fixed(s.sigma2)))
        }
        None => (json!("skipped: budget"), json!("skipped: budget")),
    };
    let value = json!({
        "left_vertices": graph.left_count(),
        "right_vertices": graph.right_count(),
        "left_degree": graph.degree(Side::Left),
        "right_degree": graph.degree(Side::Right),
        "sigma2_exact": fixed(exact),
        "sigma2_exact_squared": format!("{num}/{den}"),
        "sigma2_maximizer": rep.sigma2_exact.maximizer.map(|a| f.digits(a)),
        "sigma1_svd": sigma1_svd,
        "sigma2_svd": sigma2_svd,
        "M": fixed(cs.value),
        "M_integer": cs.sum.as_ref().and_then(|s| s.as_integer()),
        "bound_general": fixed(rep.bounds.general),
        "bound_instance": fixed(rep.bounds.instance),
    });
    Ok(Section { value, checks })
}

pub fn rate_section(inst: &Instance, cp: &CodeParams) -> Result<(Section, MessageSpace), CliError> {
    let ms = message_space(inst, cp)?;
    let n = inst.n();
    let params = &inst.params;
    let count = monomial_count(params, cp.r, cp.d as u64)?;
    let rate = ms.dim() as f64 / n as f64;
    let baseline = counting_baseline(cp.r, cp.d as u64, n as u64);
    let rho = cp.rho(n);
    let gamma = params.instantiation.gamma();
    let family = params.instantiation.family();
    let volume = match family {
        Family::First => volume_first(cp.r, rho, params.m)?,
        Family::Second => volume_second(cp.r, rho, params.m, gamma)?,
    };
    let checks = vec![
        Check::ge("dim >= monomial_count", ms.dim() as f64, count as f64),
        Check::ge("rate >= counting_baseline", rate, baseline),
    ];
    let value = json!({
        "r": format_rational(cp.r),
        "D": cp.d,
        "n": n,
        "rho": fixed(rho_f64(cp, n)),
        "dim_U": ms.dim_u(),
        "dim_V": ms.dim_v(),
        "dim": ms.dim(),
        "rate": fixed(rate),
        "monomial_count": count,
        "rate_lb_counting": fixed(baseline),
        "volume": fixed(volume),
        "rate_lb_polytope_asymptotic": fixed(rate_lower_bound(family, cp.r, rho, params.m, gamma)?),
    });
    Ok((Section { value, checks }, ms))
}

pub fn distance_section(
    inst: &Instance,
    ms: &MessageSpace,
    cp: &CodeParams,
    sigma2: f64,
    budget: u64,
) -> Result<Section, CliError> {
    let n = inst.n();
    let db = distance_bounds(cp.r, cp.rho(n), sigma2);
    let singleton_lb = n - cp.d + 1;
    let expander_lb = (n as f64 * db.expander - 1e-9).ceil().max(0.0) as usize;
    let gen = generator_matrix(ms, inst);
    let bounds = json!({
        "algebraic": fixed(db.algebraic),
        "expander": fixed(db.expander),
        "weight_lb_algebraic": singleton_lb,
        "weight_lb_expander": expander_lb,
    });
    if gen.is_empty() {
        return Ok(Section {
            value: json!({ "status": "skipped: zero code", "bounds": bounds }),
            checks: vec![],
        });
    }
    match min_distance(&gen, &inst.field, budget) {
        Ok(res) => {
            let method = match res.method {
                DistanceMethod::Exhaustive => json!({ "kind": "exhaustive" }),
                DistanceMethod::InformationSets {
                    full_sets,
                    partial_sets,
                    level,
                } => json!({
                    "kind": "information_sets",
                    "full_sets": full_sets,
                    "partial_sets": partial_sets,
                    "level": level,
                }),
            };
            let d = res.distance as f64;
            let checks = vec![
                Check::ge("distance >= n - D + 1", d, singleton_lb as f64),
                Check::ge("distance >= ceil(n * expander_bound)", d, expander_lb as f64),
                Check::le("distance <= n - dim + 1", d, (n - ms.dim() + 1) as f64),
            ];
            let value = json!({
                "status": "computed",
                "distance": res.distance,
                "relative_distance": fixed(d / n as f64),
                "method": method,
                "codewords_examined": res.examined,
                "bounds": bounds,
            });
            Ok(Section { value, checks })
        }
        Err(Error::Budget { required, limit, .. }) => Ok(Section {
            value: json!({ "status": "skipped: budget", "required": required, "budget": limit, "bounds": bounds }),
            checks: vec![],
        }),
        Err(e) => Err(e.into()),
    }
}

fn local_json(rep: &LocalReport) -> Value {
    let vertices: Vec<Value> = rep
        .vertices
        .iter()
        .map(|v| {
            json!({
                "side": if v.side == Side::Left { "left" } else { "right" },
                "vertex": v.vertex,
                "length": v.length,
                "degree": v.degree,
                "limit": v.limit,
                "vacuous": v.vacuous,
                "pass": v.passes,
            })
        })
        .collect();
    json!({
        "vertex_count": rep.vertices.len(),
        "vacuous": rep.vacuous_count(),
        "failing": rep.failures().count(),
        "vertices": vertices,
    })
}

/// Local checks on one supplied codeword.
pub fn verify_codeword(
    inst: &Instance,
    graph: &CosetGraph,
    cp: &CodeParams,
    cw: &Codeword,
) -> Result<Section, CliError> {
    let rep = check_local_rs(cw, graph, inst, cp)?;
    let failing = rep.failures().count();
    Ok(Section {
        value: local_json(&rep),
        checks: vec![Check::le("failing vertices", failing as f64, 0.0)],
    })
}

/// Local checks on every basis codeword and Schur checks on random basis pairs.
pub fn verify_basis(
    inst: &Instance,
    graph: &CosetGraph,
    ms: &MessageSpace,
    cp: &CodeParams,
    seed: u64,
    pairs: usize,
) -> Result<Section, CliError> {
    let k = ms.dim();
    let unit = |i: usize| -> Vec<Elem> { (0..k).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect() };
    let mut basis_fail = 0usize;
    let mut cws = Vec::with_capacity(k);
    for i in 0..k {
        let cw = encode_coordinates(&unit(i), ms, inst)?;
        if !check_local_rs(&cw, graph, inst, cp)?.all_pass() {
            basis_fail += 1;
        }
        cws.push(cw);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut schur_fail = 0usize;
    let mut vacuous = 0usize;
    let mut tested = 0usize;
    if k > 0 {
        for _ in 0..pairs {
            let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
            let rep = schur_check(&cws[a], &cws[b], graph, inst, cp)?;
            tested += 1;
            vacuous += rep.vacuous_count();
            if !rep.all_pass() {
                schur_fail += 1;
            }
        }
    }
    Ok(Section {
        value: json!({
            "basis_codewords": k,
            "basis_failing": basis_fail,
            "schur_pairs": tested,
            "schur_failing": schur_fail,
            "schur_vacuous_vertex_checks": vacuous,
        }),
        checks: vec![
            Check::le("basis codewords failing local check", basis_fail as f64, 0.0),
            Check::le("schur pairs failing doubled-degree check", schur_fail as f64, 0.0),
        ],
    })
}
