//! Dense Gaussian elimination over a field.

use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, FieldContext};

/// Scalar arithmetic needed by elimination.
pub trait Scalars {
    type E: Copy + PartialEq + core::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    fn inv(&self, a: Self::E) -> Self::E;
    fn is_zero(&self, a: Self::E) -> bool {
        a == self.zero()
    }
}

impl Scalars for FieldContext {
    type E = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        FieldContext::add(self, a, b)
    }
    fn sub(&self, a: Elem, b: Elem) -> Elem {
        FieldContext::sub(self, a, b)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        FieldContext::mul(self, a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        FieldContext::inv(self, a)
    }
}

/// Integers modulo a prime, with `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u32,
}

impl Scalars for PrimeField {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        super::fp_poly::inv_mod(a, self.p)
    }
}

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Scalars>(f: &F, rows: &mut Vec<Vec<F::E>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !f.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        if inv != f.one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = core::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (c..ncols).filter(|&j| !f.is_zero(pivot_row[j])).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c];
            if f.is_zero(factor) {
                continue;
            }
            for &j in &nz {
                row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Scalars>(f: &F, rows: &[Vec<F::E>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
pub fn nullspace<F: Scalars>(f: &F, rows: &[Vec<F::E>], ncols: usize) -> Vec<Vec<F::E>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            let x = row[free];
            if !f.is_zero(x) {
                v[pc] = f.sub(f.zero(), x);
            }
        }
        out.push(v);
    }
    out
}
