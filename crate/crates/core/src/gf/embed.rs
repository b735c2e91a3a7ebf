use alloc::format;
use alloc::vec::Vec;

use super::linalg::{rank, rref, PrimeField};
use super::{encode_digits, Elem, FieldContext, FpSubspace};
use crate::{Error, Result};

/// Field homomorphism from a subfield context into an ambient context,
/// fixed by sending `X` to the smallest-encoding root of the subfield modulus.
#[derive(Clone, Debug)]
pub struct Embedding<'a> {
    sub: &'a FieldContext,
    ambient: &'a FieldContext,
    basis_images: Vec<Elem>,
}

impl<'a> Embedding<'a> {
    pub fn new(sub: &'a FieldContext, ambient: &'a FieldContext) -> Result<Self> {
        if sub.characteristic() != ambient.characteristic() || ambient.degree() % sub.degree() != 0 {
            return Err(Error::Parameter(format!(
                "F_{}^{} does not embed in F_{}^{}",
                sub.characteristic(),
                sub.degree(),
                ambient.characteristic(),
                ambient.degree()
            )));
        }
        let m: Vec<Elem> = sub.modulus().iter().map(|&c| Elem::from_index(c)).collect();
        let root = ambient
            .elements()
            .find(|&x| {
                m.iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| ambient.add(ambient.mul(acc, x), c))
                    .is_zero()
            })
            .ok_or_else(|| Error::Internal("subfield modulus has no root in ambient field".into()))?;
        let basis_images = (0..sub.degree()).map(|i| ambient.pow(root, i as u64)).collect();
        Ok(Embedding {
            sub,
            ambient,
            basis_images,
        })
    }

    /// Image of `X` in the ambient field.
    pub fn root(&self) -> Elem {
        self.basis_images.get(1).copied().unwrap_or(Elem::ONE)
    }

    pub fn sub(&self) -> &FieldContext {
        self.sub
    }

    pub fn ambient(&self) -> &FieldContext {
        self.ambient
    }

    pub fn apply(&self, x: Elem) -> Elem {
        let f = self.ambient;
        self.sub
            .digits(x)
            .iter()
            .zip(&self.basis_images)
            .fold(Elem::ZERO, |acc, (&d, &b)| f.add(acc, f.mul(Elem::from_index(d), b)))
    }
}

/// Embeds a single subfield element.
pub fn embed(x: Elem, sub: &FieldContext, ambient: &FieldContext) -> Result<Elem> {
    Ok(Embedding::new(sub, ambient)?.apply(x))
}

/// Rank over the embedded subfield K of a list of ambient elements,
/// computed from coordinates in an explicit K-basis of the ambient field.
pub fn rank_over_subfield(emb: &Embedding<'_>, vectors: &[Elem]) -> usize {
    let (f, k) = (emb.ambient, emb.sub);
    let p = f.characteristic();
    let ks = k.degree() as usize;
    let t = (f.degree() / k.degree()) as usize;
    let kappa = &emb.basis_images;

    let mut kbasis: Vec<Elem> = Vec::new();
    let mut span = FpSubspace::zero();
    for b in f.elements().skip(1) {
        if kbasis.len() == t {
            break;
        }
        let mut trial = span.clone();
        for &c in kappa {
            trial.insert(f, f.mul(c, b));
        }
        if trial.dim() == span.dim() + ks {
            span = trial;
            kbasis.push(b);
        }
    }

    // Columns of the F_p-linear map e -> sum e_{ij} kappa_i b_j.
    let cols: Vec<Vec<u32>> = kbasis
        .iter()
        .flat_map(|&b| kappa.iter().map(move |&c| f.digits(f.mul(c, b))))
        .collect();
    let n = cols.len();
    let fp = PrimeField { p };
    let coords: Vec<Vec<Elem>> = vectors
        .iter()
        .map(|&v| {
            let target = f.digits(v);
            let mut aug: Vec<Vec<u32>> = (0..n)
                .map(|row| {
                    let mut r: Vec<u32> = cols.iter().map(|c| c[row]).collect();
                    r.push(target[row]);
                    r
                })
                .collect();
            let piv = rref(&fp, &mut aug);
            let mut e = alloc::vec![0u32; n];
            for (row, &c) in aug.iter().zip(&piv) {
                e[c] = row[n];
            }
            (0..t)
                .map(|j| Elem::from_index(encode_digits(&e[j * ks..(j + 1) * ks], p)))
                .collect()
        })
        .collect();
    rank(k, &coords)
}
