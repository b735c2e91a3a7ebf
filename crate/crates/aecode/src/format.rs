//! JSON and CSV file formats.
//!
//! Field elements are little-endian digit arrays over F_p; polynomials are
//! arrays of elements in ascending degree. Every JSON document carries
//! `schema_version`.

use std::io::Write;

use aecode_core::code::Codeword;
use aecode_core::gf::{Elem, FieldContext};
use aecode_core::graph::{CosetGraph, Side};
use aecode_core::group::Instance;
use aecode_core::poly::Poly;
use serde::{Deserialize, Serialize};

use crate::config::InstanceConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Decimal places kept in every float written to JSON.
pub const FLOAT_DECIMALS: i32 = 12;

pub fn fixed(x: f64) -> f64 {
    let s = 10f64.powi(FLOAT_DECIMALS);
    let v = (x * s).round() / s;
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

pub type Digits = Vec<u32>;

pub fn elem_to_json(f: &FieldContext, x: Elem) -> Digits {
    f.digits(x)
}

pub fn elem_from_json(f: &FieldContext, d: &[u32]) -> Result<Elem, CliError> {
    Ok(f.from_digits(d)?)
}

pub fn poly_to_json(f: &FieldContext, p: &Poly) -> Vec<Digits> {
    p.coeffs().iter().map(|&c| f.digits(c)).collect()
}

pub fn poly_from_json(f: &FieldContext, c: &[Digits]) -> Result<Poly, CliError> {
    Ok(Poly::from_coeffs(
        c.iter().map(|d| elem_from_json(f, d)).collect::<Result<_, _>>()?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    pub modulus: Digits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationJson {
    pub size: u64,
    pub basis: Vec<Digits>,
    pub invariant_poly: Vec<Digits>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingJson {
    pub order: u64,
    pub generator: Digits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub size: u64,
    pub basis: Vec<Digits>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub left_vertices: usize,
    pub right_vertices: usize,
    pub edges: usize,
    pub left_degree: Option<usize>,
    pub right_degree: Option<usize>,
    pub simple: bool,
}

impl GraphSummary {
    pub fn of(g: &CosetGraph) -> Self {
        GraphSummary {
            left_vertices: g.left_count(),
            right_vertices: g.right_count(),
            edges: g.edges().len(),
            left_degree: g.degree(Side::Left),
            right_degree: g.degree(Side::Right),
            simple: g.is_simple(),
        }
    }
}

/// Instance bundle: one file feeds every analysis command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub config: InstanceConfig,
    pub field: FieldJson,
    pub n: usize,
    #[serde(rename = "G")]
    pub g: TranslationJson,
    #[serde(rename = "H")]
    pub h: ScalingJson,
    #[serde(rename = "S")]
    pub s: SubspaceJson,
    pub alpha: Digits,
    pub omega: Vec<Digits>,
    pub graph: GraphSummary,
}

impl Bundle {
    pub fn new(config: InstanceConfig, inst: &Instance, graph: &CosetGraph) -> Self {
        let f = &inst.field;
        Bundle {
            schema_version: SCHEMA_VERSION,
            config,
            field: FieldJson {
                p: f.characteristic(),
                k: f.degree(),
                modulus: f.modulus().to_vec(),
            },
            n: inst.n(),
            g: TranslationJson {
                size: inst.g.size(f),
                basis: inst.g.points.basis(f).iter().map(|&b| f.digits(b)).collect(),
                invariant_poly: poly_to_json(f, &inst.g.invariant_poly),
            },
            h: ScalingJson {
                order: inst.h.order,
                generator: f.digits(inst.h.generator),
            },
            s: SubspaceJson {
                size: inst.s().size(f),
                basis: inst.s().basis(f).iter().map(|&b| f.digits(b)).collect(),
            },
            alpha: f.digits(inst.alpha),
            omega: inst.omega.iter().map(|&x| f.digits(x)).collect(),
            graph: GraphSummary::of(graph),
        }
    }

    /// Rebuilds the instance and checks it against the stored orbit and subspace.
    pub fn instance(&self) -> Result<Instance, CliError> {
        check_schema(self.schema_version)?;
        let params = self.config.params()?;
        let field = FieldContext::with_modulus(self.field.p, &self.field.modulus)?;
        if field.degree() != self.field.k {
            return Err(CliError::Format("field degree does not match modulus".into()));
        }
        let g_basis: Vec<Elem> = self
            .g
            .basis
            .iter()
            .map(|d| elem_from_json(&field, d))
            .collect::<Result<_, _>>()?;
        let h_gen = elem_from_json(&field, &self.h.generator)?;
        let alpha = elem_from_json(&field, &self.alpha)?;
        let inst = Instance::from_parts(params, field, &g_basis, h_gen, alpha)?;
        let f = &inst.field;
        let omega: Vec<Digits> = inst.omega.iter().map(|&x| f.digits(x)).collect();
        let s_basis: Vec<Digits> = inst.s().basis(f).iter().map(|&b| f.digits(b)).collect();
        if omega != self.omega || s_basis != self.s.basis || inst.n() != self.n {
            return Err(CliError::Format(
                "bundle is inconsistent with its own parameters".into(),
            ));
        }
        Ok(inst)
    }
}

pub fn check_schema(v: u32) -> Result<(), CliError> {
    if v != SCHEMA_VERSION {
        return Err(CliError::Format(format!(
            "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordFile {
    pub schema_version: u32,
    pub n: usize,
    pub values: Vec<Digits>,
}

impl CodewordFile {
    pub fn new(f: &FieldContext, cw: &Codeword) -> Self {
        CodewordFile {
            schema_version: SCHEMA_VERSION,
            n: cw.len(),
            values: cw.values.iter().map(|&x| f.digits(x)).collect(),
        }
    }

    pub fn codeword(&self, f: &FieldContext) -> Result<Codeword, CliError> {
        check_schema(self.schema_version)?;
        if self.values.len() != self.n {
            return Err(CliError::Format(format!(
                "codeword lists {} values but n = {}",
                self.values.len(),
                self.n
            )));
        }
        Ok(Codeword {
            values: self
                .values
                .iter()
                .map(|d| elem_from_json(f, d))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// A message given either by basis coordinates or as a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Digits>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<Digits>>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// Edge list with header `edge_id,left_idx,right_idx`.
pub fn write_edges_csv<W: Write>(g: &CosetGraph, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge_id", "left_idx", "right_idx"])?;
    for (e, &(l, r)) in g.edges().iter().enumerate() {
        w.write_record([e.to_string(), l.to_string(), r.to_string()])?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Parses an edge list written by [`write_edges_csv`].
pub fn read_edges_csv<R: std::io::Read>(input: R) -> Result<Vec<(usize, u32, u32)>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["edge_id", "left_idx", "right_idx"] {
        return Err(CliError::Format(format!("unexpected edge header {header:?}")));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<u64, CliError> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Format(format!("bad edge row {rec:?}")))
        };
        out.push((num(0)? as usize, num(1)? as u32, num(2)? as u32));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_precision() {
        assert_eq!(fixed(0.123456789012345), 0.123456789012);
        assert_eq!(fixed(-1e-15), 0.0);
    }
}
