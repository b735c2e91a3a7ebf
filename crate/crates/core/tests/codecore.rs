use std::collections::HashSet;

use aecode_core::code::{
    check_constraints, check_local_rs, encode, encode_coordinates, evaluate, exhaustive_min_distance,
    for_each_admissible_monomial, generator_matrix, information_set_min_distance, message_space, min_distance,
    monomial_count, schur_check, weight, weight_direct, CodeParams, Codeword, DistanceMethod, DEFAULT_DISTANCE_BUDGET,
};
use aecode_core::gf::{Elem, FieldContext};
use aecode_core::graph::{build_graph, Side};
use aecode_core::group::{Family, Instance, InstanceParams};
use aecode_core::poly::{deg_u, BaseDegree, Poly};
use aecode_core::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn i22() -> Instance {
    Instance::build(InstanceParams::first(2, 2)).unwrap()
}

fn half(d: usize) -> CodeParams {
    CodeParams::new(Rational::new(1, 2), d)
}

#[test]
fn dimensions_regression() {
    let inst = i22();
    let expect = [
        (48, (1, 4), (12, 16, 1)),
        (48, (1, 2), (24, 32, 11)),
        (48, (3, 4), (36, 48, 36)),
        (40, (1, 4), (10, 14, 1)),
        (40, (1, 2), (20, 27, 10)),
        (40, (3, 4), (30, 40, 30)),
    ];
    for (d, (a, b), dims) in expect {
        let ms = message_space(&inst, &CodeParams::new(Rational::new(a, b), d)).unwrap();
        assert_eq!((ms.dim_u(), ms.dim_v(), ms.dim()), dims, "D={d} r={a}/{b}");
    }
}

#[test]
fn constants_always_belong() {
    let inst = i22();
    for (a, b) in [(1, 10), (1, 4), (1, 2)] {
        let ms = message_space(&inst, &CodeParams::new(Rational::new(a, b), 48)).unwrap();
        assert!(ms.dim() >= 1);
        assert!(ms.contains(&Poly::one(), &inst.field));
        assert!(ms.contains(&Poly::zero(), &inst.field));
    }
}

#[test]
fn basis_passes_independent_degree_checks() {
    let inst = i22();
    let f = &inst.field;
    let (g, h) = (&inst.g.invariant_poly, &inst.h_poly());
    for d in [48, 40] {
        for (a, b) in [(1, 4), (1, 2), (3, 4)] {
            let r = Rational::new(a, b);
            let ms = message_space(&inst, &CodeParams::new(r, d)).unwrap();
            for p in ms.basis() {
                assert!(p.degree().unwrap() < d);
                assert!(deg_u(p, g, f).unwrap().is_below(r * Rational::from_integer(4)));
                assert!(deg_u(p, h, f).unwrap().is_below(r * Rational::from_integer(3)));
            }
        }
    }
}

#[test]
fn constraint_violations_are_named() {
    let inst = i22();
    let f = &inst.field;
    let (g, h) = (&inst.g.invariant_poly, &inst.h_poly());
    let cp = half(40);
    let name = |p: &Poly| match check_constraints(p, g, h, &cp, f).unwrap_err() {
        aecode_core::Error::ConstraintViolation { bound, .. } => bound,
        e => panic!("{e:?}"),
    };
    assert_eq!(name(&Poly::monomial(Elem::ONE, 45)), "global degree");
    assert_eq!(name(&Poly::monomial(Elem::ONE, 2)), "translation-local degree");
    // X * g: base-g digit X (degree 1 < 2) but base-h degree is 2.
    assert_eq!(name(&g.shift(1).shift(1).shift(0)), "translation-local degree");
    assert_eq!(name(&g.shift(1)), "scaling-local degree");
    assert_eq!(
        encode(&g.shift(1), &inst, &cp).unwrap_err().kind(),
        "constraint_violation"
    );
}

#[test]
fn encode_examples() {
    let inst = i22();
    let cp = half(48);
    assert!(encode(&Poly::zero(), &inst, &cp)
        .unwrap()
        .values
        .iter()
        .all(|v| v.is_zero()));
    assert!(encode(&Poly::one(), &inst, &cp)
        .unwrap()
        .values
        .iter()
        .all(|&v| v == Elem::ONE));
    let ms = message_space(&inst, &cp).unwrap();
    let gen = generator_matrix(&ms, &inst);
    let distinct: HashSet<&Vec<Elem>> = gen.iter().collect();
    assert_eq!(distinct.len(), ms.dim());
    // Injective on the whole space: the generator matrix has full rank.
    let mut rows = gen.clone();
    let piv = aecode_core::gf::linalg::rref(&inst.field, &mut rows);
    assert_eq!(piv.len(), ms.dim());
    let coords = vec![Elem::ONE; ms.dim()];
    let cw = encode_coordinates(&coords, &ms, &inst).unwrap();
    let sum = gen.iter().fold(vec![Elem::ZERO; 48], |acc, r| {
        acc.iter().zip(r).map(|(&a, &b)| inst.field.add(a, b)).collect()
    });
    assert_eq!(cw.values, sum);
}

#[test]
fn local_checks_on_basis_and_negative_control() {
    let inst = i22();
    let graph = build_graph(&inst).unwrap();
    let cp = half(48);
    let ms = message_space(&inst, &cp).unwrap();
    let zero = Codeword {
        values: vec![Elem::ZERO; 48],
    };
    assert!(check_local_rs(&zero, &graph, &inst, &cp).unwrap().all_pass());
    for b in ms.basis() {
        let rep = check_local_rs(&encode(b, &inst, &cp).unwrap(), &graph, &inst, &cp).unwrap();
        assert_eq!(rep.vertices.len(), 28);
        assert!(rep.all_pass());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut caught = 0;
    for _ in 0..100 {
        let v = Codeword {
            values: (0..48).map(|_| Elem::from_index(rng.random_range(0..64))).collect(),
        };
        if !check_local_rs(&v, &graph, &inst, &cp).unwrap().all_pass() {
            caught += 1;
        }
    }
    assert!(caught >= 99);
    let short = Codeword {
        values: vec![Elem::ZERO; 47],
    };
    assert_eq!(
        check_local_rs(&short, &graph, &inst, &cp).unwrap_err().kind(),
        "length_mismatch"
    );
}

#[test]
fn local_checks_touch_each_coordinate_once_per_side() {
    let inst = i22();
    let graph = build_graph(&inst).unwrap();
    for side in [Side::Left, Side::Right] {
        let mut hits = vec![0; inst.n()];
        for es in graph.incidence(side) {
            for e in es {
                hits[e] += 1;
            }
        }
        assert!(hits.iter().all(|&h| h == 1));
    }
}

#[test]
fn schur_products() {
    let inst = i22();
    let graph = build_graph(&inst).unwrap();
    let cp = half(48);
    let ms = message_space(&inst, &cp).unwrap();
    let cws: Vec<Codeword> = ms.basis().iter().map(|b| encode(b, &inst, &cp).unwrap()).collect();
    let ones = encode(&Poly::one(), &inst, &cp).unwrap();
    for c in &cws {
        assert!(schur_check(c, &ones, &graph, &inst, &cp).unwrap().all_pass());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let (a, b) = (rng.random_range(0..cws.len()), rng.random_range(0..cws.len()));
        assert!(schur_check(&cws[a], &cws[b], &graph, &inst, &cp).unwrap().all_pass());
    }
    // r = 1/4 keeps the doubled bound below the vertex length.
    let quarter = CodeParams::new(Rational::new(1, 4), 48);
    let rep = schur_check(&ones, &ones, &graph, &inst, &quarter).unwrap();
    assert_eq!(rep.vacuous_count(), 0);
}

#[test]
fn distance_regression() {
    let inst = i22();
    let mut dists = Vec::new();
    for d in [48, 40] {
        let ms = message_space(&inst, &half(d)).unwrap();
        let gen = generator_matrix(&ms, &inst);
        let res = min_distance(&gen, &inst.field, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert!(res.distance > 48 - d);
        assert_eq!(res.witness.iter().filter(|x| !x.is_zero()).count(), res.distance);
        dists.push(res.distance);
    }
    assert_eq!(dists, vec![16, 16]);
    assert!(dists[1] >= dists[0]);
}

#[test]
fn constant_code_has_full_distance() {
    let inst = i22();
    let ms = message_space(&inst, &CodeParams::new(Rational::new(1, 4), 48)).unwrap();
    assert_eq!(ms.dim(), 1);
    let res = min_distance(&generator_matrix(&ms, &inst), &inst.field, DEFAULT_DISTANCE_BUDGET).unwrap();
    assert_eq!(res.distance, 48);
    assert_eq!(res.method, DistanceMethod::Exhaustive);
}

#[test]
fn budget_refusal() {
    let inst = i22();
    let ms = message_space(&inst, &half(48)).unwrap();
    let e = min_distance(&generator_matrix(&ms, &inst), &inst.field, 1000).unwrap_err();
    assert_eq!(e.kind(), "budget");
}

fn random_code(seed: u64, p: u32, k: u32, rows: usize, n: usize) -> (FieldContext, Vec<Vec<Elem>>) {
    let f = FieldContext::new(p, k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = (0..rows)
        .map(|_| {
            (0..n)
                .map(|_| Elem::from_index(rng.random_range(0..f.size())))
                .collect()
        })
        .collect();
    (f, gen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn information_sets_agree_with_exhaustion(seed in 0u64..1_000_000, which in 0usize..3) {
        let (p, k, rows, n) = [(2, 1, 8, 24), (2, 2, 5, 18), (3, 1, 6, 16)][which];
        let (f, gen) = random_code(seed, p, k, rows, n);
        let a = exhaustive_min_distance(&gen, &f, u64::MAX).unwrap();
        let b = information_set_min_distance(&gen, &f, u64::MAX).unwrap();
        prop_assert_eq!(a.distance, b.distance);
    }
}

#[test]
fn closed_form_weights_match_direct_computation() {
    for (p, m) in [(2, 2), (3, 2), (2, 3)] {
        let first = InstanceParams::first(p, m);
        for k in 0..=m * m {
            assert_eq!(
                weight_direct(k, &first).unwrap(),
                BaseDegree::Finite(weight(k, p, m, Family::First) as usize)
            );
        }
        let second = InstanceParams::second(p, m, Rational::from_integer(1));
        for k in 0..=m * (m + 1) {
            assert_eq!(
                weight_direct(k, &second).unwrap(),
                BaseDegree::Finite(weight(k, p, m, Family::Second) as usize)
            );
        }
    }
}

#[test]
fn weight_patterns() {
    assert!((0..8).all(|k| weight(k, 2, 2, Family::First) == 2));
    assert_eq!(
        (0..6).map(|k| weight(k, 3, 3, Family::First)).collect::<Vec<_>>(),
        vec![3, 9, 9, 3, 9, 9]
    );
    assert_eq!(
        (0..6).map(|k| weight(k, 2, 2, Family::Second)).collect::<Vec<_>>(),
        vec![4, 2, 4, 4, 2, 4]
    );
}

fn counted(params: &InstanceParams, r: Rational, d: u64) -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    for_each_admissible_monomial(params, r, d, |i, j| v.push((i, j))).unwrap();
    v
}

#[test]
fn counted_monomials_lie_in_the_message_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases = [
        (InstanceParams::first(2, 2), Rational::new(1, 2)),
        (InstanceParams::first(2, 2), Rational::new(3, 4)),
        (InstanceParams::first(3, 2), Rational::new(1, 2)),
        (InstanceParams::first(3, 2), Rational::new(3, 4)),
        (
            InstanceParams::second(2, 2, Rational::from_integer(1)),
            Rational::new(3, 4),
        ),
    ];
    for (params, r) in cases {
        let inst = Instance::build(params).unwrap();
        let f = &inst.field;
        let n = inst.n();
        for d in [n, 5 * n / 6] {
            let cp = CodeParams::new(r, d);
            let pairs = counted(&params, r, d as u64);
            let picks: Vec<(u64, u64)> = if pairs.len() <= 100 {
                pairs.clone()
            } else {
                (0..100).map(|_| pairs[rng.random_range(0..pairs.len())]).collect()
            };
            for (i, j) in picks {
                let m = inst.g.invariant_poly.pow(i, f).shift(j as usize);
                check_constraints(&m, &inst.g.invariant_poly, &inst.h_poly(), &cp, f).unwrap();
            }
            // Distinct degrees: g^i X^j has degree i p^m + j with j < p^m.
            let degs: HashSet<u64> = pairs.iter().map(|&(i, j)| i * inst.g_size() as u64 + j).collect();
            assert_eq!(degs.len(), pairs.len());
        }
    }
}

#[test]
fn count_examples() {
    let p = InstanceParams::first(2, 2);
    assert_eq!(monomial_count(&p, Rational::from_integer(0), 48).unwrap(), 0);
    assert_eq!(monomial_count(&p, Rational::new(1, 2), 48).unwrap(), 2);
    let inst = i22();
    let ms = message_space(&inst, &half(48)).unwrap();
    assert!(2 <= ms.dim());
}

#[test]
fn evaluate_matches_pointwise() {
    let inst = i22();
    let f = &inst.field;
    let poly = Poly::from_coeffs(vec![Elem::from_index(3), Elem::ONE, Elem::from_index(9)]);
    let cw = evaluate(&poly, &inst.omega, f);
    for (k, &x) in inst.omega.iter().enumerate() {
        assert_eq!(cw.values[k], poly.eval(x, f));
    }
}
