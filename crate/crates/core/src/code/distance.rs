use alloc::vec;
use alloc::vec::Vec;

use super::MessageSpace;
use crate::gf::linalg::rref;
use crate::gf::{Elem, FieldContext};
use crate::group::Instance;
use crate::{Error, Result};

/// Default cap on the number of codewords examined.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    /// Every codeword up to scalar multiples.
    Exhaustive,
    /// Enumeration over disjoint information sets up to message weight `level`.
    InformationSets {
        full_sets: usize,
        partial_sets: usize,
        level: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: usize,
    pub method: DistanceMethod,
    pub examined: u64,
    /// A codeword of minimum weight.
    pub witness: Vec<Elem>,
}

/// Rows are the codewords of the message-space basis.
pub fn generator_matrix(ms: &MessageSpace, inst: &Instance) -> Vec<Vec<Elem>> {
    ms.basis()
        .iter()
        .map(|b| super::evaluate(b, &inst.omega, &inst.field).values)
        .collect()
}

fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

fn axpy(acc: &mut [Elem], c: Elem, row: &[Elem], f: &FieldContext) {
    if c.is_zero() {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(row) {
        if !x.is_zero() {
            *a = f.add(*a, f.mul(c, x));
        }
    }
}

fn check_rows(gen: &[Vec<Elem>]) -> Result<usize> {
    let n = gen
        .first()
        .map(|r| r.len())
        .ok_or_else(|| Error::Parameter("code has dimension 0".into()))?;
    if let Some(r) = gen.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: r.len(),
        });
    }
    Ok(n)
}

/// Minimum distance of the row space, exhaustive when `q^k <= budget`.
pub fn min_distance(gen: &[Vec<Elem>], f: &FieldContext, budget: u64) -> Result<DistanceResult> {
    let k = gen.len() as u32;
    match (f.size() as u64).checked_pow(k) {
        Some(total) if total <= budget => exhaustive_min_distance(gen, f, budget),
        _ => information_set_min_distance(gen, f, budget),
    }
}

/// Enumerates every codeword whose last nonzero message coefficient is 1.
pub fn exhaustive_min_distance(gen: &[Vec<Elem>], f: &FieldContext, budget: u64) -> Result<DistanceResult> {
    let n = check_rows(gen)?;
    let k = gen.len();
    let q = f.size() as u64;
    let total = q.checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::Budget {
            what: "exhaustive enumeration",
            required: total,
            limit: budget,
        });
    }
    let mut best: Option<(usize, Vec<Elem>)> = None;
    let mut examined = 0u64;
    for lead in 0..k {
        let mut cw = gen[lead].clone();
        let mut digits = vec![0u32; lead];
        loop {
            examined += 1;
            let w = weight(&cw);
            if w > 0 && best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, cw.clone()));
            }
            let mut pos = 0;
            loop {
                if pos == lead {
                    break;
                }
                let old = Elem::from_index(digits[pos]);
                digits[pos] = (digits[pos] + 1) % q as u32;
                let new = Elem::from_index(digits[pos]);
                axpy(&mut cw, f.sub(new, old), &gen[pos], f);
                if digits[pos] != 0 {
                    break;
                }
                pos += 1;
            }
            if pos == lead {
                break;
            }
        }
    }
    let (distance, witness) = best.ok_or_else(|| Error::Parameter("generator rows are dependent".into()))?;
    debug_assert_eq!(witness.len(), n);
    Ok(DistanceResult {
        distance,
        method: DistanceMethod::Exhaustive,
        examined,
        witness,
    })
}

struct InfoSet {
    rows: Vec<Vec<Elem>>,
    rank: usize,
    done: usize,
}

/// Generator matrices systematic on disjoint column sets, greedily chosen.
fn information_sets(gen: &[Vec<Elem>], f: &FieldContext) -> Result<Vec<InfoSet>> {
    let n = check_rows(gen)?;
    let k = gen.len();
    let mut full = gen.to_vec();
    if rref(f, &mut full).len() != k {
        return Err(Error::Parameter("generator rows are dependent".into()));
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut sets = Vec::new();
    while !remaining.is_empty() {
        let mut sub: Vec<Vec<Elem>> = gen.iter().map(|r| remaining.iter().map(|&c| r[c]).collect()).collect();
        let piv: Vec<usize> = rref(f, &mut sub).into_iter().map(|c| remaining[c]).collect();
        if piv.is_empty() {
            break;
        }
        let mut order: Vec<usize> = piv.clone();
        if piv.len() < k {
            // Complete to k independent columns using columns outside the set.
            let mut chosen = piv.clone();
            for c in 0..n {
                if chosen.len() == k {
                    break;
                }
                if chosen.contains(&c) {
                    continue;
                }
                chosen.push(c);
                let mut t: Vec<Vec<Elem>> = gen.iter().map(|r| chosen.iter().map(|&j| r[j]).collect()).collect();
                if rref(f, &mut t).len() < chosen.len() {
                    chosen.pop();
                }
            }
            order = chosen;
        }
        let rest: Vec<usize> = (0..n).filter(|c| !order.contains(c)).collect();
        order.extend(rest);
        let mut perm: Vec<Vec<Elem>> = gen.iter().map(|r| order.iter().map(|&c| r[c]).collect()).collect();
        rref(f, &mut perm);
        let rows = perm
            .iter()
            .map(|r| {
                let mut out = vec![Elem::ZERO; n];
                for (&c, &x) in order.iter().zip(r) {
                    out[c] = x;
                }
                out
            })
            .collect();
        sets.push(InfoSet {
            rows,
            rank: piv.len(),
            done: 0,
        });
        remaining.retain(|c| !piv.contains(c));
    }
    Ok(sets)
}

/// Calls `visit` on every message of weight exactly `w` whose first nonzero
/// coefficient is 1. Stops early when `visit` returns false.
fn for_each_message(k: usize, w: usize, q: u32, mut visit: impl FnMut(&[usize], &[u32]) -> bool) -> bool {
    let mut support: Vec<usize> = (0..w).collect();
    loop {
        let mut coeffs = vec![1u32; w];
        loop {
            if !visit(&support, &coeffs) {
                return false;
            }
            let mut pos = 1;
            while pos < w {
                if coeffs[pos] + 1 < q {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = 1;
                pos += 1;
            }
            if pos >= w {
                break;
            }
        }
        let mut i = w;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if support[i] < k - w + i {
                support[i] += 1;
                for j in i + 1..w {
                    support[j] = support[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimum distance by enumeration over disjoint information sets, stopping
/// once the weight lower bound meets the best codeword found.
pub fn information_set_min_distance(gen: &[Vec<Elem>], f: &FieldContext, budget: u64) -> Result<DistanceResult> {
    let k = gen.len();
    let mut sets = information_sets(gen, f)?;
    let q = f.size();
    let n = gen[0].len();
    let mut best: Option<(usize, Vec<Elem>)> = None;
    let mut examined = 0u64;
    let contribution = |s: &InfoSet| (s.done + 1).saturating_sub(k - s.rank);
    let full_sets = sets.iter().filter(|s| s.rank == k).count();
    let partial_sets = sets.len() - full_sets;
    for level in 1..=k {
        for si in 0..sets.len() {
            if (level + 1).saturating_sub(k - sets[si].rank) == 0 {
                continue;
            }
            while sets[si].done < level {
                let w = sets[si].done + 1;
                let rows = &sets[si].rows;
                let mut over = false;
                let mut cw = vec![Elem::ZERO; n];
                for_each_message(k, w, q, |support, coeffs| {
                    examined += 1;
                    if examined > budget {
                        over = true;
                        return false;
                    }
                    cw.iter_mut().for_each(|x| *x = Elem::ZERO);
                    for (&i, &c) in support.iter().zip(coeffs) {
                        axpy(&mut cw, Elem::from_index(c), &rows[i], f);
                    }
                    let wt = weight(&cw);
                    if best.as_ref().is_none_or(|(bw, _)| wt < *bw) {
                        best = Some((wt, cw.clone()));
                    }
                    true
                });
                if over {
                    return Err(Error::Budget {
                        what: "information-set enumeration",
                        required: examined,
                        limit: budget,
                    });
                }
                sets[si].done = w;
            }
            let lower: usize = sets.iter().map(contribution).sum();
            let exhausted = sets.iter().any(|s| s.rank == k && s.done == k);
            if let Some((bw, cw)) = &best {
                if *bw <= lower || exhausted {
                    return Ok(DistanceResult {
                        distance: *bw,
                        method: DistanceMethod::InformationSets {
                            full_sets,
                            partial_sets,
                            level,
                        },
                        examined,
                        witness: cw.clone(),
                    });
                }
            }
        }
    }
    Err(Error::Internal("information-set enumeration did not terminate".into()))
}
