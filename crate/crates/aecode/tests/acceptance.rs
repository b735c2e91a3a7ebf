//! Acceptance criteria. One line per criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use aecode_core::bounds::{volume_first, volume_second, Polytope};
use aecode_core::code::{
    check_local_rs, encode, generator_matrix, message_space, min_distance, monomial_count, schur_check, weight,
    weight_direct, CodeParams, Codeword, DEFAULT_DISTANCE_BUDGET,
};
use aecode_core::gf::{Elem, FieldContext};
use aecode_core::graph::{build_graph, char_sum_max, sigma2_exact, spectral_report, Side, DEFAULT_SVD_MAX_SIDE};
use aecode_core::group::{Family, Instance, InstanceParams, ScalingGroup};
use aecode_core::poly::{base_u_expand, deg_u, BaseDegree, Poly};
use aecode_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

const TOL: f64 = 1e-9;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn first(p: u32, m: u32) -> Instance {
    Instance::build(InstanceParams::first(p, m)).unwrap()
}

fn second(p: u32, m: u32, gamma: Rational) -> Instance {
    Instance::build(InstanceParams::second(p, m, gamma)).unwrap()
}

fn structure(inst: &Instance, dims: (usize, usize, usize, usize), s_size: usize, n: usize) -> Outcome {
    let g = build_graph(inst).map_err(|e| e.to_string())?;
    let got = (inst.g_size(), inst.h_size(), inst.s_points().len(), inst.n());
    ensure!(got == (dims.0, dims.1, s_size, n), "|G|,|H|,|S|,n = {got:?}");
    ensure!(g.is_simple() && g.is_biregular(), "graph not simple and biregular");
    let deg = (g.degree(Side::Left), g.degree(Side::Right));
    ensure!(deg == (Some(dims.0), Some(dims.1)), "degrees {deg:?}");
    ensure!(
        (g.left_count(), g.right_count()) == (dims.2, dims.3),
        "vertices {}/{}",
        g.left_count(),
        g.right_count()
    );
    Ok(format!(
        "|G|={} |H|={} |S|={} n={} vertices {}/{}",
        got.0, got.1, got.2, got.3, dims.2, dims.3
    ))
}

fn c1() -> Outcome {
    structure(&first(2, 2), (4, 3, 12, 16), 16, 48)
}

fn c2() -> Outcome {
    let inst = second(2, 2, q(1, 1));
    let f = &inst.field;
    let subfield: Vec<Elem> = f.elements().filter(|&x| f.pow(x, 64) == x).collect();
    ensure!(
        inst.s_points() == subfield.as_slice(),
        "S is not the 64-element subfield"
    );
    structure(&inst, (4, 7, 112, 64), 64, 448).map(|s| s + " S=F_64")
}

fn c3() -> Outcome {
    let mut worst: f64 = 0.0;
    for inst in [first(2, 2), first(3, 2), second(2, 2, q(1, 1))] {
        let g = build_graph(&inst).map_err(|e| e.to_string())?;
        let rep = spectral_report(&inst, &g, DEFAULT_SVD_MAX_SIDE).map_err(|e| e.to_string())?;
        let gap = rep.svd_agreement().ok_or("SVD skipped")?;
        ensure!(gap <= TOL, "|svd - exact| = {gap:e}");
        worst = worst.max(gap);
    }
    Ok(format!("3 instances, max |sigma2_svd - sigma2_exact| = {worst:.1e}"))
}

fn subgroup(f: &FieldContext, order: u64) -> Vec<Elem> {
    let g = f.pow(f.primitive_element(), (f.size() as u64 - 1) / order);
    ScalingGroup::new(g, f).unwrap().elements(f)
}

fn c4() -> Outcome {
    let insts = [
        first(2, 2),
        first(3, 2),
        first(2, 3),
        second(2, 2, q(1, 1)),
        second(3, 2, q(1, 2)),
    ];
    let mut lines = Vec::new();
    for inst in &insts {
        let f = &inst.field;
        let s2 = sigma2_exact(&inst.g.points, &inst.h, inst.s(), f).value();
        let (p, m) = (inst.params.p as f64, inst.params.m as i32);
        let bound = match inst.params.instantiation.family() {
            Family::First => {
                let cs = char_sum_max(inst.h_elements(), f);
                let exact = cs.sum.as_ref().and_then(|s| s.as_integer());
                ensure!(exact.map(i64::abs) == Some(1), "M = {exact:?} for first family");
                (1.0 / p + 1.0 / (p.powi(m) - 1.0)).sqrt()
            }
            Family::Second => (1.0 / p + p.powi(m + 1).sqrt() / inst.h_size() as f64).sqrt(),
        };
        ensure!(s2 <= bound + TOL, "sigma2 {s2} > {bound}");
        lines.push(format!("{s2:.4}<={bound:.4}"));
    }
    let mut subgroups = 0;
    for (p, k) in [(2, 3), (3, 2), (2, 4), (3, 3)] {
        let f = FieldContext::new(p, k).unwrap();
        let q1 = f.size() as u64 - 1;
        for d in (1..=q1).filter(|d| q1 % d == 0) {
            let m = char_sum_max(&subgroup(&f, d), &f).value;
            ensure!(m <= (f.size() as f64).sqrt() + TOL, "q={} |H|={d}: M={m}", f.size());
            subgroups += 1;
        }
    }
    Ok(format!(
        "sigma2 {}; Gauss bound on {subgroups} subgroups",
        lines.join(" ")
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, p: u32, len: usize) -> Poly {
    Poly::from_coeffs((0..len).map(|_| Elem::from_index(rng.random_range(0..p))).collect())
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2u32, 3] {
        let f = FieldContext::new(p, 1).unwrap();
        for _ in 0..1000 {
            let du = rng.random_range(2..=8);
            let mut u = random_poly(&mut rng, p, du);
            u = u.add(&Poly::monomial(Elem::from_index(rng.random_range(1..p)), du), &f);
            let len = rng.random_range(0..40);
            let a = random_poly(&mut rng, p, len);
            let len = rng.random_range(0..40);
            let b = random_poly(&mut rng, p, len);
            let lhs = deg_u(&a.mul(&b, &f), &u, &f).map_err(|e| e.to_string())?;
            let rhs = deg_u(&a, &u, &f).unwrap().plus(deg_u(&b, &u, &f).unwrap());
            ensure!(lhs <= rhs, "subadditivity fails over F_{p}");
            let e = base_u_expand(&a, &u, &f).unwrap();
            ensure!(e.recompose(&f) == a, "reconstruction fails over F_{p}");
            ensure!(
                e.digits().iter().all(|c| c.degree().is_none_or(|d| d < du)),
                "digit degree"
            );
        }
    }
    Ok("1000 triples each over F_2 and F_3".into())
}

fn c6() -> Outcome {
    let mut checked = 0;
    for (p, m) in [(2, 2), (3, 2), (2, 3)] {
        for (params, family, top) in [
            (InstanceParams::first(p, m), Family::First, m * m),
            (InstanceParams::second(p, m, q(1, 1)), Family::Second, m * (m + 1)),
        ] {
            for k in 0..=top {
                let direct = weight_direct(k, &params).map_err(|e| e.to_string())?;
                let closed = weight(k, p, m, family);
                ensure!(
                    direct == BaseDegree::Finite(closed as usize),
                    "({p},{m},{family:?}) k={k}: {direct:?} vs {closed}"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} weights"))
}

fn c7() -> Outcome {
    let mut cases = 0;
    for inst in [first(2, 2), first(3, 2), second(2, 2, q(1, 1))] {
        let f = &inst.field;
        let n = inst.n();
        let (g, h) = (&inst.g.invariant_poly, inst.h_poly());
        let (gs, hs) = (
            Rational::from_integer(inst.g_size() as i64),
            Rational::from_integer(inst.h_size() as i64),
        );
        for r in [q(1, 4), q(1, 2), q(3, 4)] {
            for d in [n, 5 * n / 6] {
                let ms = message_space(&inst, &CodeParams::new(r, d)).map_err(|e| e.to_string())?;
                let count = monomial_count(&inst.params, r, d as u64).map_err(|e| e.to_string())?;
                let tag = format!("n={n} r={r} D={d}");
                ensure!(count <= ms.dim() as u64, "{tag}: count {count} > dim {}", ms.dim());
                let baseline = 2 * (Rational::from_integer(d as i64) * r).floor().to_integer() - d as i64;
                ensure!(ms.dim() as i64 >= baseline, "{tag}: dim {} < {baseline}", ms.dim());
                for b in ms.basis() {
                    ensure!(b.degree().is_none_or(|x| x < d), "{tag}: global degree");
                    ensure!(
                        deg_u(b, g, f).unwrap().is_below(r * gs),
                        "{tag}: translation-local degree"
                    );
                    ensure!(deg_u(b, &h, f).unwrap().is_below(r * hs), "{tag}: scaling-local degree");
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (instance, r, D) cases"))
}

fn c8() -> Outcome {
    let inst = first(2, 2);
    let graph = build_graph(&inst).unwrap();
    let cp = CodeParams::new(q(1, 2), inst.n());
    let ms = message_space(&inst, &cp).map_err(|e| e.to_string())?;
    let cws: Vec<Codeword> = ms.basis().iter().map(|b| encode(b, &inst, &cp).unwrap()).collect();
    for (i, c) in cws.iter().enumerate() {
        let rep = check_local_rs(c, &graph, &inst, &cp).map_err(|e| e.to_string())?;
        ensure!(rep.vertices.len() == 28, "{} vertices", rep.vertices.len());
        ensure!(rep.all_pass(), "basis codeword {i} fails");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let (a, b) = (rng.random_range(0..cws.len()), rng.random_range(0..cws.len()));
        let rep = schur_check(&cws[a], &cws[b], &graph, &inst, &cp).map_err(|e| e.to_string())?;
        ensure!(rep.all_pass(), "Schur product of basis {a} and {b} fails");
    }
    Ok(format!("{} basis codewords on 28 vertices, 10 Schur pairs", cws.len()))
}

fn c9() -> Outcome {
    let inst = first(2, 2);
    let n = inst.n();
    let r = q(1, 2);
    let s2 = sigma2_exact(&inst.g.points, &inst.h, inst.s(), &inst.field).value();
    let expander = 0.5 * (0.5 - s2).max(0.0);
    let mut out = Vec::new();
    for d in [n, 5 * n / 6] {
        let ms = message_space(&inst, &CodeParams::new(r, d)).map_err(|e| e.to_string())?;
        let res = min_distance(&generator_matrix(&ms, &inst), &inst.field, DEFAULT_DISTANCE_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure!(res.distance > n - d, "D={d}: distance {} < {}", res.distance, n - d + 1);
        let need = (n as f64 * expander).ceil() as usize;
        ensure!(res.distance >= need, "D={d}: distance {} < {need}", res.distance);
        out.push(res.distance);
    }
    ensure!(out[1] >= out[0], "subcode distance {} < {}", out[1], out[0]);
    Ok(format!("d(D=48)={} d(D=40)={}", out[0], out[1]))
}

fn to_f(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn c10() -> Outcome {
    let samples = 10_000_000;
    let points = [
        (q(1, 2), q(1, 1)),
        (q(1, 2), q(1, 2)),
        (q(1, 2), q(1, 4)),
        (q(3, 4), q(1, 2)),
        (q(1, 4), q(3, 4)),
    ];
    let mut worst: f64 = 0.0;
    for (i, &(r, rho)) in points.iter().enumerate() {
        let exact = volume_first(r, rho, 2).map_err(|e| e.to_string())?;
        let est = aecode::parallel::volume_monte_carlo(&Polytope::first(to_f(r), to_f(rho), 2), samples, i as u64);
        let z = (est.estimate() - exact).abs() / est.std_error();
        ensure!(
            z <= 3.0,
            "first r={r} rho={rho}: {} vs {exact} ({z:.2} se)",
            est.estimate()
        );
        worst = worst.max(z);
        // Last second-family point moves to a scaled-down gamma.
        let (r, rho, gamma) = if i == 4 {
            (q(3, 4), q(1, 1), q(1, 2))
        } else {
            (r, rho, q(1, 1))
        };
        let exact = volume_second(r, rho, 2, gamma).map_err(|e| e.to_string())?;
        let poly = Polytope::second(to_f(r), to_f(rho), 2, to_f(gamma));
        let est = aecode::parallel::volume_monte_carlo(&poly, samples, 100 + i as u64);
        let z = (est.estimate() - exact).abs() / est.std_error();
        ensure!(
            z <= 3.0,
            "second r={r} rho={rho}: {} vs {exact} ({z:.2} se)",
            est.estimate()
        );
        worst = worst.max(z);
    }
    let plateau = volume_first(q(1, 2), q(1, 2), 2).unwrap();
    ensure!(
        volume_first(q(1, 2), q(1, 1), 2).unwrap() == plateau,
        "no plateau above r"
    );
    Ok(format!("10 points at 1e7 samples, max deviation {worst:.2} se"))
}

fn c11() -> Outcome {
    let (m, r) = (2u32, q(1, 2));
    let vol = volume_first(r, q(1, 1), m).unwrap();
    let mut ratios = Vec::new();
    for p in [2u32, 3, 5] {
        let params = InstanceParams::first(p, m);
        let d = params.nominal_length();
        let count = monomial_count(&params, r, d).map_err(|e| e.to_string())?;
        ratios.push((p, count, count as f64 / (p as f64).powi((m * m + m) as i32)));
    }
    let shown: Vec<String> = ratios.iter().map(|(p, c, x)| format!("p={p}: {c} -> {x:.6}")).collect();
    let shown = format!("{}; volume {vol:.6}", shown.join(", "));
    ensure!(
        ratios.windows(2).all(|w| w[0].2 <= w[1].2),
        "not nondecreasing: {shown}"
    );
    ensure!(
        ratios.iter().all(|x| x.2 <= vol + 0.02),
        "exceeds volume + 0.02: {shown}"
    );
    Ok(shown)
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("instance I(2,2) structure", c1, Some(Duration::from_secs(1))),
        ("instance II(2,2,1) structure", c2, Some(Duration::from_secs(5))),
        (
            "exact and SVD second singular value agree",
            c3,
            Some(Duration::from_secs(60)),
        ),
        ("spectral and Gauss-sum bounds", c4, None),
        ("base-u degree subadditivity and reconstruction", c5, None),
        ("closed-form weights", c6, Some(Duration::from_secs(30))),
        ("rate chain and basis constraints", c7, None),
        ("local Reed-Solomon and Schur checks", c8, Some(Duration::from_secs(60))),
        ("minimum distance bounds", c9, None),
        ("polytope volumes against Monte Carlo", c10, None),
        ("normalized monomial counts approach the volume", c11, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = start.elapsed();
        let res = match (res, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} [{took:.2?}]: {detail}", i + 1);
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
