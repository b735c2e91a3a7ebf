use alloc::format;

use super::count_below;
use crate::gf::FieldContext;
use crate::group::{Family, InstanceParams, Instantiation};
use crate::poly::{deg_u, BaseDegree};
use crate::{Error, Rational, Result};

/// Closed-form `deg_h(g^{p^k})`.
pub fn weight(k: u32, p: u32, m: u32, family: Family) -> u64 {
    let p = p as u64;
    match family {
        Family::First => {
            let j = k % m;
            if j == m - 1 {
                p.pow(m - 1)
            } else {
                p.pow(j + 1)
            }
        }
        Family::Second => {
            let j = k % (m + 1);
            if j == 0 {
                p.pow(m)
            } else {
                p.pow(j)
            }
        }
    }
}

/// `deg_h(g^{p^k})` computed from the polynomials over F_p.
pub fn weight_direct(k: u32, params: &InstanceParams) -> Result<BaseDegree> {
    params.validate()?;
    let fp = FieldContext::new(params.p, 1)?;
    let pk = (params.p as u64)
        .checked_pow(k)
        .ok_or_else(|| Error::Parameter(format!("p^{k} overflows")))?;
    let gk = params.translation_poly().pow(pk, &fp);
    let h = crate::poly::scaling_invariant_poly(params.h_size());
    deg_u(&gk, &h, &fp)
}

/// Visits every admissible pair `(i, j)`: the monomial `g^i X^j` with the
/// base-p digits of `i` weighted by [`weight`] satisfying the local and
/// global constraints.
pub fn for_each_admissible_monomial(
    params: &InstanceParams,
    r: Rational,
    d: u64,
    mut visit: impl FnMut(u64, u64),
) -> Result<()> {
    params.validate()?;
    let (p, m) = (params.p, params.m);
    let pm = (p as u64).pow(m);
    let h = params.h_size() as i64;
    let j_local_g = count_below(r * Rational::from_integer(pm as i64));
    let family = params.instantiation.family();
    let mut i = 0u64;
    while i * pm < d {
        let mut s = 0u64;
        let (mut v, mut k) = (i, 0u32);
        while v > 0 {
            s += (v % p as u64) * weight(k, p, m, family);
            v /= p as u64;
            k += 1;
        }
        let j_local_h = count_below(r * Rational::from_integer(h) - Rational::from_integer(s as i64));
        let j_max = j_local_g.min(j_local_h).min(d - i * pm);
        for j in 0..j_max {
            visit(i, j);
        }
        i += 1;
    }
    Ok(())
}

/// Number of admissible monomials.
pub fn monomial_count(params: &InstanceParams, r: Rational, d: u64) -> Result<u64> {
    let mut count = 0u64;
    for_each_admissible_monomial(params, r, d, |_, _| count += 1)?;
    Ok(count)
}

impl InstanceParams {
    /// `p^{m^2 + m}` for the first family, `p^{m(m+1)} gamma (p^{m+1} - 1)` for the second.
    pub fn nominal_length(&self) -> u64 {
        let p = self.p as u64;
        match self.instantiation {
            Instantiation::First => p.pow(self.m * self.m) * (p.pow(self.m) - 1),
            Instantiation::Second { .. } => p.pow(self.m * (self.m + 1)) * self.h_size(),
        }
    }
}
