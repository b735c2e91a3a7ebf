use alloc::vec::Vec;

use super::linalg::{nullspace, PrimeField, Scalars};
use super::{Elem, FieldContext};

/// An F_p-linear subspace of a field, kept in canonical reduced echelon form
/// over the digit coordinates. Equality of values is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FpSubspace {
    rows: Vec<(usize, Vec<u32>)>,
}

impl FpSubspace {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The whole field as a subspace of itself.
    pub fn whole(f: &FieldContext) -> Self {
        Self::span(f, (0..f.degree()).map(|i| Elem::from_index(f.characteristic().pow(i))))
    }

    /// F_p-span of the given elements.
    pub fn span(f: &FieldContext, gens: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::zero();
        for g in gens {
            s.insert(f, g);
        }
        s
    }

    /// Adds `x` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, f: &FieldContext, x: Elem) -> bool {
        let fp = PrimeField { p: f.characteristic() };
        let mut v = f.digits(x);
        self.reduce(&fp, &mut v);
        let Some(pc) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = fp.inv(v[pc]);
        for c in v.iter_mut() {
            *c = fp.mul(*c, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let factor = row[pc];
            if factor != 0 {
                for (r, &n) in row.iter_mut().zip(&v) {
                    *r = fp.sub(*r, fp.mul(factor, n));
                }
            }
        }
        let at = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(at, (pc, v));
        true
    }

    fn reduce(&self, fp: &PrimeField, v: &mut [u32]) {
        for (pc, row) in &self.rows {
            let factor = v[*pc];
            if factor != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = fp.sub(*x, fp.mul(factor, r));
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of points, `p^dim`.
    pub fn size(&self, f: &FieldContext) -> u64 {
        (f.characteristic() as u64).pow(self.dim() as u32)
    }

    /// Canonical basis (the echelon rows) as field elements.
    pub fn basis(&self, f: &FieldContext) -> Vec<Elem> {
        self.rows
            .iter()
            .map(|(_, d)| Elem::from_index(super::encode_digits(d, f.characteristic())))
            .collect()
    }

    pub fn contains(&self, f: &FieldContext, x: Elem) -> bool {
        let fp = PrimeField { p: f.characteristic() };
        let mut v = f.digits(x);
        self.reduce(&fp, &mut v);
        v.iter().all(|&c| c == 0)
    }

    /// All points in increasing encoding order.
    pub fn points(&self, f: &FieldContext) -> Vec<Elem> {
        let basis = self.basis(f);
        let mut pts = alloc::vec![Elem::ZERO];
        for b in basis {
            let mut next = Vec::with_capacity(pts.len() * f.characteristic() as usize);
            let mut mult = Elem::ZERO;
            for _ in 0..f.characteristic() {
                next.extend(pts.iter().map(|&x| f.add(x, mult)));
                mult = f.add(mult, b);
            }
            pts = next;
        }
        pts.sort_unstable();
        pts
    }

    pub fn is_subspace_of(&self, f: &FieldContext, other: &FpSubspace) -> bool {
        self.basis(f).into_iter().all(|b| other.contains(f, b))
    }

    /// `{c m : m in self}` for a nonzero scalar `c`.
    pub fn scaled(&self, f: &FieldContext, c: Elem) -> FpSubspace {
        Self::span(f, self.basis(f).into_iter().map(|b| f.mul(c, b)))
    }

    /// Trace-dual `{a : Tr(a m) = 0 for all m in self}`.
    pub fn dual(&self, f: &FieldContext) -> FpSubspace {
        let p = f.characteristic();
        let k = f.degree() as usize;
        let rows: Vec<Vec<u32>> = self
            .basis(f)
            .into_iter()
            .map(|m| {
                (0..k)
                    .map(|j| f.trace(f.mul(Elem::from_index(p.pow(j as u32)), m)))
                    .collect()
            })
            .collect();
        let ns = nullspace(&PrimeField { p }, &rows, k);
        Self::span(f, ns.iter().map(|v| Elem::from_index(super::encode_digits(v, p))))
    }

    /// Whether the given elements are F_p-linearly independent.
    pub fn are_independent(f: &FieldContext, elems: &[Elem]) -> bool {
        Self::span(f, elems.iter().copied()).dim() == elems.len()
    }
}
