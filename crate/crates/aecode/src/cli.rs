//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 when every checked inequality holds, 1 when one fails,
//! 2 on errors (printed as JSON with `schema_version` and `error`).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use aecode_core::bounds::{bound_report, Polytope};
use aecode_core::code::{encode, encode_coordinates, message_space, monomial_count};
use aecode_core::graph::{build_graph, sigma2_exact};
use aecode_core::group::{Family, Instance, InstanceParams, Instantiation};
use aecode_core::Rational;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    code_params, distance_section, rate_section, spectrum_section, verify_basis, verify_codeword, Check, Section,
};
use crate::config::{format_rational, parse_rational, Budgets, DegreeSpec, InstanceConfig};
use crate::format::{
    elem_from_json, fixed, poly_from_json, read_json, to_json_string, write_edges_csv, Bundle, CodewordFile,
    MessageFile, SCHEMA_VERSION,
};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "aecode",
    version,
    about = "Affine-invariant expander codes: build, analyse, encode, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an instance and write its bundle.
    Instantiate(InstantiateArgs),
    /// Write the coset graph edge list as CSV.
    Graph(BundleArgs),
    /// Exact and numeric second singular value with the spectral bounds.
    Spectrum(BundleArgs),
    /// Message-space dimension against the rate bounds.
    Rate(CodeArgs),
    /// Encode a message file into a codeword file.
    Encode(EncodeArgs),
    /// Run the local Reed-Solomon check on a codeword file.
    Verify(VerifyArgs),
    /// Minimum distance under the enumeration budget.
    Distance(DistanceArgs),
    /// Combined JSON report.
    Report(ReportArgs),
    /// Bound table over a parameter grid, as CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct InstantiateArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: u32,
    /// I or II.
    #[arg(long = "inst", default_value = "I")]
    pub instantiation: String,
    /// Scaling fraction 1/a for instantiation II.
    #[arg(long, default_value = "1")]
    pub gamma: String,
    /// Local rate a/b.
    #[arg(long, default_value = "1/2")]
    pub r: String,
    /// Global degree bound: integer, "n", or a fraction a/b of n.
    #[arg(long = "D", default_value = "n")]
    pub d: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    #[command(flatten)]
    pub bundle: BundleArgs,
    /// Override the bundle's local rate.
    #[arg(long)]
    pub r: Option<String>,
    /// Override the bundle's global degree bound.
    #[arg(long = "D")]
    pub d: Option<String>,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub message: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub codeword: PathBuf,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Codeword budget; defaults to AECODE_DISTANCE_BUDGET or 2^24.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub spectrum: bool,
    #[arg(long)]
    pub rate: bool,
    #[arg(long)]
    pub distance: bool,
    #[arg(long)]
    pub verify: bool,
    /// Codeword file checked by --verify instead of the basis codewords.
    #[arg(long)]
    pub codeword: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long = "inst", default_value = "I")]
    pub instantiation: String,
    /// Comma-separated values of m.
    #[arg(long, default_value = "2,3")]
    pub m: String,
    /// Comma-separated values of gamma (instantiation II).
    #[arg(long, default_value = "1")]
    pub gamma: String,
    #[arg(long, default_value = "1/4,1/2,3/4")]
    pub r: String,
    #[arg(long, default_value = "1/4,1/2,3/4,1")]
    pub rho: String,
    /// Comma-separated primes; adds discrete monomial counts per prime.
    #[arg(long)]
    pub p: Option<String>,
    /// Adds a Monte Carlo volume column (AECODE_MC_SAMPLES samples).
    #[arg(long)]
    pub monte_carlo: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a subcommand: its main artifact and whether every check held.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out_path = match &cli.command {
        Command::Instantiate(a) => a.out.clone(),
        Command::Graph(a) | Command::Spectrum(a) => a.out.clone(),
        Command::Rate(a) => a.bundle.out.clone(),
        Command::Encode(a) => a.code.bundle.out.clone(),
        Command::Verify(a) => a.code.bundle.out.clone(),
        Command::Distance(a) => a.code.bundle.out.clone(),
        Command::Report(a) => a.code.bundle.out.clone(),
        Command::Sweep(a) => a.out.clone(),
    };
    let result = run(cli.command).and_then(|o| {
        match &out_path {
            Some(p) => std::fs::write(p, &o.text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
            None => {
                let mut so = std::io::stdout().lock();
                so.write_all(o.text.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        Ok(o.ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            print!("{}", to_json_string(&doc));
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    let budgets = Budgets::from_env()?;
    match cmd {
        Command::Instantiate(a) => instantiate(a),
        Command::Graph(a) => {
            let (_, inst) = load(&a.bundle)?;
            let g = build_graph(&inst)?;
            let mut buf = Vec::new();
            write_edges_csv(&g, &mut buf)?;
            Ok(Output {
                text: String::from_utf8(buf).expect("csv is utf-8"),
                ok: true,
            })
        }
        Command::Spectrum(a) => {
            let (_, inst) = load(&a.bundle)?;
            let g = build_graph(&inst)?;
            let s = spectrum_section(&inst, &g, &budgets)?;
            Ok(document(vec![("spectrum", s)]))
        }
        Command::Rate(a) => {
            let (inst, cp) = load_code(&a)?;
            let (s, _) = rate_section(&inst, &cp)?;
            Ok(document(vec![("rate", s)]))
        }
        Command::Encode(a) => encode_cmd(a),
        Command::Verify(a) => {
            let (inst, cp) = load_code(&a.code)?;
            let g = build_graph(&inst)?;
            let cw: CodewordFile = read_json(&a.codeword)?;
            let s = verify_codeword(&inst, &g, &cp, &cw.codeword(&inst.field)?)?;
            Ok(document(vec![("verify", s)]))
        }
        Command::Distance(a) => {
            let (inst, cp) = load_code(&a.code)?;
            let ms = message_space(&inst, &cp)?;
            let sigma2 = sigma2_exact(&inst.g.points, &inst.h, inst.s(), &inst.field).value();
            let s = distance_section(&inst, &ms, &cp, sigma2, a.budget.unwrap_or(budgets.distance))?;
            Ok(document(vec![("distance", s)]))
        }
        Command::Report(a) => report(a, &budgets),
        Command::Sweep(a) => sweep(a, &budgets),
    }
}

fn document(sections: Vec<(&str, Section)>) -> Output {
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    let mut checks: Vec<Check> = Vec::new();
    for (name, s) in sections {
        doc.insert(name.into(), s.value);
        checks.extend(s.checks.into_iter().map(|mut c| {
            c.name = format!("{name}: {}", c.name);
            c
        }));
    }
    let ok = checks.iter().all(|c| c.holds);
    doc.insert(
        "checks".into(),
        serde_json::to_value(&checks).expect("checks serialize"),
    );
    doc.insert("all_hold".into(), json!(ok));
    Output {
        text: to_json_string(&Value::Object(doc)),
        ok,
    }
}

fn instantiate(a: InstantiateArgs) -> Result<Output, CliError> {
    let gamma = parse_rational(&a.gamma)?;
    let r = parse_rational(&a.r)?;
    let mut config = InstanceConfig {
        p: a.p,
        m: a.m,
        instantiation: a.instantiation.clone(),
        gamma: format_rational(gamma),
        r: format_rational(r),
        d: 0,
        seed: a.seed,
    };
    let params = config.params()?;
    let inst = Instance::build(params)?;
    config.d = DegreeSpec::parse(&a.d)?.resolve(inst.n());
    code_params(&inst, r, config.d)?;
    let g = build_graph(&inst)?;
    Ok(Output {
        text: to_json_string(&Bundle::new(config, &inst, &g)),
        ok: true,
    })
}

fn load(path: &std::path::Path) -> Result<(Bundle, Instance), CliError> {
    let b: Bundle = read_json(path)?;
    let inst = b.instance()?;
    Ok((b, inst))
}

fn load_code(a: &CodeArgs) -> Result<(Instance, aecode_core::code::CodeParams), CliError> {
    let (b, inst) = load(&a.bundle.bundle)?;
    let r = match &a.r {
        Some(s) => parse_rational(s)?,
        None => b.config.rate()?,
    };
    let d = match &a.d {
        Some(s) => DegreeSpec::parse(s)?.resolve(inst.n()),
        None => b.config.d,
    };
    let cp = code_params(&inst, r, d)?;
    Ok((inst, cp))
}

fn encode_cmd(a: EncodeArgs) -> Result<Output, CliError> {
    let (inst, cp) = load_code(&a.code)?;
    let msg: MessageFile = read_json(&a.message)?;
    crate::format::check_schema(msg.schema_version)?;
    let f = &inst.field;
    let cw = match (&msg.coordinates, &msg.polynomial) {
        (Some(c), None) => {
            let ms = message_space(&inst, &cp)?;
            let coords = c.iter().map(|d| elem_from_json(f, d)).collect::<Result<Vec<_>, _>>()?;
            encode_coordinates(&coords, &ms, &inst)?
        }
        (None, Some(p)) => encode(&poly_from_json(f, p)?, &inst, &cp)?,
        _ => {
            return Err(CliError::Format(
                "message needs exactly one of coordinates or polynomial".into(),
            ))
        }
    };
    Ok(Output {
        text: to_json_string(&CodewordFile::new(f, &cw)),
        ok: true,
    })
}

fn report(a: ReportArgs, budgets: &Budgets) -> Result<Output, CliError> {
    let all = !(a.spectrum || a.rate || a.distance || a.verify);
    let (inst, cp) = load_code(&a.code)?;
    let (b, _) = load(&a.code.bundle.bundle)?;
    let g = build_graph(&inst)?;
    let mut sections = Vec::new();
    let mut sigma2 = None;
    if all || a.spectrum {
        let s = spectrum_section(&inst, &g, budgets)?;
        sigma2 = s.value["sigma2_exact"].as_f64();
        sections.push(("spectrum", s));
    }
    let mut ms = None;
    if all || a.rate {
        let (s, space) = rate_section(&inst, &cp)?;
        ms = Some(space);
        sections.push(("rate", s));
    }
    let need_ms = all || a.distance || (a.verify && a.codeword.is_none());
    if need_ms && ms.is_none() {
        ms = Some(message_space(&inst, &cp)?);
    }
    if all || a.distance {
        let s2 = match sigma2 {
            Some(v) => v,
            None => sigma2_exact(&inst.g.points, &inst.h, inst.s(), &inst.field).value(),
        };
        let space = ms.as_ref().expect("message space computed");
        sections.push(("distance", distance_section(&inst, space, &cp, s2, budgets.distance)?));
    }
    if all || a.verify {
        let s = match &a.codeword {
            Some(path) => {
                let cw: CodewordFile = read_json(path)?;
                verify_codeword(&inst, &g, &cp, &cw.codeword(&inst.field)?)?
            }
            None => {
                let space = ms.as_ref().expect("message space computed");
                verify_basis(&inst, &g, space, &cp, b.config.seed, 10)?
            }
        };
        sections.push(("verify", s));
    }
    let mut out = document(sections);
    let mut doc: Value = serde_json::from_str(&out.text).expect("own output parses");
    doc["config"] = serde_json::to_value(&b.config).expect("config serializes");
    doc["config"]["r"] = json!(format_rational(cp.r));
    doc["config"]["D"] = json!(cp.d);
    doc["n"] = json!(inst.n());
    out.text = to_json_string(&doc);
    Ok(out)
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| f(x.trim()))
        .collect()
}

fn sweep(a: SweepArgs, budgets: &Budgets) -> Result<Output, CliError> {
    let family = match a.instantiation.as_str() {
        "I" => Family::First,
        "II" => Family::Second,
        other => {
            return Err(CliError::Config(format!(
                "instantiation must be I or II, got {other:?}"
            )))
        }
    };
    let parse_u32 = |x: &str| {
        x.parse::<u32>()
            .map_err(|_| CliError::Config(format!("expected an integer, got {x:?}")))
    };
    let ms = parse_list(&a.m, parse_u32)?;
    let gammas = match family {
        Family::First => vec![Rational::from_integer(1)],
        Family::Second => parse_list(&a.gamma, parse_rational)?,
    };
    let rs = parse_list(&a.r, parse_rational)?;
    let rhos = parse_list(&a.rho, parse_rational)?;
    let ps: Vec<Option<u32>> = match &a.p {
        Some(s) => parse_list(s, parse_u32)?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "instantiation",
        "m",
        "gamma",
        "r",
        "rho",
        "volume",
        "rate_lb_polytope",
        "dist_lb_algebraic",
        "dist_lb_expander_asymptotic",
        "rate_lb_counting_asymptotic",
        "mc_volume",
        "mc_std_error",
        "p",
        "monomial_count",
        "monomial_count_normalized",
    ])?;
    let f12 = |x: f64| format!("{:.12}", fixed(x));
    for &m in &ms {
        for &gamma in &gammas {
            for &r in &rs {
                for &rho in &rhos {
                    let rep = bound_report(family, r, rho, m, gamma, None, None)?;
                    let (rf, rhof, gf) = (to_f(r), to_f(rho), to_f(gamma));
                    let counting = ((2.0 * rf - 1.0) * rhof).max(0.0);
                    let (mc_v, mc_e) = if a.monte_carlo {
                        let poly = match family {
                            Family::First => Polytope::first(rf, rhof, m),
                            Family::Second => Polytope::second(rf, rhof, m, gf),
                        };
                        let est = crate::parallel::volume_monte_carlo(&poly, budgets.mc_samples, a.seed);
                        (f12(est.estimate()), f12(est.std_error()))
                    } else {
                        (String::new(), String::new())
                    };
                    for &p in &ps {
                        let (p_s, count_s, norm_s) = match p {
                            Some(p) => {
                                let params = match family {
                                    Family::First => InstanceParams::first(p, m),
                                    Family::Second => InstanceParams {
                                        p,
                                        m,
                                        instantiation: Instantiation::Second { gamma },
                                    },
                                };
                                let n = params.nominal_length();
                                let d = (rho * Rational::from_integer(n as i64)).floor().to_integer() as u64;
                                let count = monomial_count(&params, r, d)?;
                                let exp = match family {
                                    Family::First => m * m + m,
                                    Family::Second => m * m + 2 * m + 1,
                                };
                                let norm = count as f64 / (p as f64).powi(exp as i32);
                                (p.to_string(), count.to_string(), f12(norm))
                            }
                            None => (String::new(), String::new(), String::new()),
                        };
                        w.write_record([
                            a.instantiation.clone(),
                            m.to_string(),
                            format_rational(gamma),
                            format_rational(r),
                            format_rational(rho),
                            f12(rep.volume),
                            f12(rep.rate_polytope),
                            f12(rep.distance.algebraic),
                            f12(rep.distance.expander),
                            f12(counting),
                            mc_v.clone(),
                            mc_e.clone(),
                            p_s,
                            count_s,
                            norm_s,
                        ])?;
                    }
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Output {
        text: String::from_utf8(bytes).expect("csv is utf-8"),
        ok: true,
    })
}

fn to_f(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
