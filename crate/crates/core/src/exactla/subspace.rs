use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{nullspace, rref};
use crate::error::Error;
use crate::field::Field;

/// A linear subspace of `F^ambient`, stored by its reduced row echelon basis.
/// Equal subspaces have identical stored bases.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self, Error> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        let mut basis = vectors;
        let pivots = rref(&field, &mut basis, ambient);
        Ok(Subspace {
            field,
            ambient,
            basis,
            pivots,
        })
    }

    /// Span of integer vectors.
    pub fn span_i64(field: F, ambient: usize, vectors: &[Vec<i64>]) -> Result<Self, Error> {
        let conv = vectors
            .iter()
            .map(|v| v.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::span(field, ambient, conv)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Self::span(self.field.clone(), self.ambient, v)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(f.clone(), self.ambient));
        }
        // x·A = y·B  ⇔  (x, y) annihilates [A; -B] from the left
        let cols: Vec<Vec<F::Elem>> = (0..self.ambient)
            .map(|j| {
                self.basis
                    .iter()
                    .map(|r| r[j].clone())
                    .chain(other.basis.iter().map(|r| f.neg(&r[j])))
                    .collect()
            })
            .collect();
        let sols = nullspace(f, &cols, a + b);
        let vecs = sols
            .iter()
            .map(|s| {
                let mut v = vec![f.zero(); self.ambient];
                for (coef, row) in s[..a].iter().zip(&self.basis) {
                    if f.is_zero(coef) {
                        continue;
                    }
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj = f.add(vj, &f.mul(coef, rj));
                    }
                }
                v
            })
            .collect();
        Self::span(f.clone(), self.ambient, vecs)
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if v.len() != self.ambient {
            return None;
        }
        let f = &self.field;
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (x, r) in rest.iter_mut().zip(row) {
                *x = f.sub_mul(x, c, r);
            }
        }
        rest.iter().all(|x| f.is_zero(x)).then_some(coords)
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, Error> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.coordinates(v).is_some())
    }

    pub fn is_subspace_of(&self, big: &Self) -> bool {
        self.ambient == big.ambient && self.basis.iter().all(|v| big.coordinates(v).is_some())
    }

    /// `dim(big) - dim(small)` for `small ⊆ big`.
    pub fn quotient_dim(big: &Self, small: &Self) -> Result<usize, Error> {
        big.check(small)?;
        if !small.is_subspace_of(big) {
            return Err(Error::NotContained);
        }
        Ok(big.dim() - small.dim())
    }
}
