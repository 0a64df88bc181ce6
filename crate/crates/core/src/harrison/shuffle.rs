use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::combinations;
use crate::error::Error;
use crate::exactla::{cohomology_classes, modular_rank_bound, nullspace, sparse_rank, SparseRow};
use crate::field::Field;

/// How the shuffle condition on Harrison cochains is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ShuffleConvention {
    /// `Σ_π sgn(π) φ(π·λ) = 0` over the `(p, n−p)`-shuffles, for `1 ≤ p < n`.
    #[default]
    Vanishing,
    /// `Σ_π sgn(π) φ(π·λ) = φ(λ)`; kept for experiments, not a complex in general.
    Invariant,
}

#[derive(Clone, Debug)]
struct Level<E> {
    tuples: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    /// For each tuple of the previous level: `(tuple here, coefficient)` in `δ`.
    cofaces: Vec<Vec<(usize, i64)>>,
    /// Block (multiset of entries) of each tuple.
    block_of: Vec<usize>,
    /// The shuffle conditions of each block, as integer rows over the tuples.
    constraints: Vec<Vec<Vec<(usize, i64)>>>,
    basis: Vec<SparseRow<E>>,
}

/// Inhomogeneous Harrison cochains on a finite monoid-like set `K`: level `q`
/// holds the shuffle-vanishing functions on `S_q(K) = {λ ∈ K^q : Σλ ∈ K}`.
#[derive(Clone, Debug)]
pub struct ShuffleComplex<F: Field> {
    field: F,
    points: Vec<Vec<i64>>,
    levels: Vec<Level<F::Elem>>,
}

/// `(p, n−p)`-shuffles as position permutations `π` (the `v`-th entry of the
/// shuffled word is `λ_{π[v]}`) with their signs.
fn shuffles(n: usize, p: usize) -> Vec<(Vec<usize>, i64)> {
    combinations(n, p)
        .into_iter()
        .map(|first| {
            let mut perm = vec![0; n];
            let (mut a, mut b) = (0, p);
            let mut inversions = 0;
            for v in 0..n {
                if first.contains(&v) {
                    perm[v] = a;
                    a += 1;
                    inversions += b - p;
                } else {
                    perm[v] = b;
                    b += 1;
                }
            }
            (perm, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// The arrangements of a multiset `0^{m_0} 1^{m_1} ...`, its shuffle
/// conditions and the cochains satisfying them.
#[derive(Clone, Debug)]
struct BlockShape<E> {
    words: Vec<Vec<usize>>,
    position: BTreeMap<Vec<usize>, usize>,
    constraints: Vec<Vec<(usize, i64)>>,
    kernel: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> BlockShape<E> {
    fn new<F: Field<Elem = E>>(
        field: &F,
        pattern: &[usize],
        splits: &[Vec<(Vec<usize>, i64)>],
        convention: ShuffleConvention,
    ) -> Self {
        let mut words = vec![pattern.to_vec()];
        let mut seen: BTreeSet<Vec<usize>> = words.iter().cloned().collect();
        let mut i = 0;
        while i < words.len() {
            for a in 0..pattern.len() {
                for b in a + 1..pattern.len() {
                    let mut w = words[i].clone();
                    w.swap(a, b);
                    if seen.insert(w.clone()) {
                        words.push(w);
                    }
                }
            }
            i += 1;
        }
        words.sort();
        let position: BTreeMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
        for (g, lam) in words.iter().enumerate() {
            for sh in splits {
                let mut row = vec![0i64; words.len()];
                for (perm, sign) in sh {
                    let word: Vec<usize> = perm.iter().map(|&k| lam[k]).collect();
                    row[position[&word]] += sign;
                }
                if convention == ShuffleConvention::Invariant {
                    row[g] -= 1;
                }
                let sparse: Vec<(usize, i64)> =
                    row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect();
                if !sparse.is_empty() {
                    rows.insert(sparse);
                }
            }
        }
        let dense: Vec<Vec<E>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![field.zero(); words.len()];
                for &(j, c) in r {
                    v[j] = field.from_i64(c);
                }
                v
            })
            .collect();
        let kernel = nullspace(field, &dense, words.len())
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, x)| !field.is_zero(x)).collect())
            .collect();
        BlockShape { words, position, constraints: rows.into_iter().collect(), kernel }
    }
}

impl<F: Field> ShuffleComplex<F> {
    pub fn new(field: &F, points: &[Vec<i64>], n_max: usize) -> Result<Self, Error> {
        Self::with_convention(field, points, n_max, ShuffleConvention::Vanishing)
    }

    pub fn with_convention(
        field: &F,
        points: &[Vec<i64>],
        n_max: usize,
        convention: ShuffleConvention,
    ) -> Result<Self, Error> {
        if n_max < 2 {
            return Err(Error::LevelTooLow(n_max));
        }
        let mut sorted = points.to_vec();
        sorted.sort();
        sorted.dedup();
        let lookup: BTreeMap<Vec<i64>, usize> = sorted
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let plus = |a: usize, b: usize| -> Option<usize> {
            let s: Vec<i64> = sorted[a]
                .iter()
                .zip(&sorted[b])
                .map(|(x, y)| x + y)
                .collect();
            lookup.get(&s).copied()
        };
        let mut levels: Vec<Level<F::Elem>> = Vec::with_capacity(n_max);
        let m = sorted.len();
        let first_tuples: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
        let first_basis = (0..m).map(|i| vec![(i, field.one())]).collect();
        levels.push(Level {
            index: first_tuples
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, t)| (t, i))
                .collect(),
            tuples: first_tuples,
            cofaces: Vec::new(),
            block_of: vec![0; m],
            constraints: vec![Vec::new(); m],
            basis: first_basis,
        });
        let mut sums: Vec<usize> = (0..m).collect();
        let mut patterns: BTreeMap<Vec<usize>, BlockShape<F::Elem>> = BTreeMap::new();

        for q in 2..=n_max {
            let prev = levels.last().unwrap();
            let mut tuples = Vec::new();
            let mut new_sums = Vec::new();
            for (t, &s) in prev.tuples.iter().zip(&sums) {
                for x in 0..m {
                    if let Some(s2) = plus(s, x) {
                        let mut t2 = t.clone();
                        t2.push(x);
                        tuples.push(t2);
                        new_sums.push(s2);
                    }
                }
            }
            let splits: Vec<Vec<(Vec<usize>, i64)>> = (1..q).map(|p| shuffles(q, p)).collect();
            let index: BTreeMap<Vec<usize>, usize> = tuples
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, t)| (t, i))
                .collect();

            let missing = |what: &[usize]| {
                Error::NotMonoidLike(format!(
                    "{:?} is missing",
                    what.iter().map(|&i| &sorted[i]).collect::<Vec<_>>()
                ))
            };
            let mut cofaces: Vec<Vec<(usize, i64)>> = vec![Vec::new(); prev.tuples.len()];
            for (li, lam) in tuples.iter().enumerate() {
                let mut push = |face: Vec<usize>, c: i64| -> Result<(), Error> {
                    let fi = *prev.index.get(&face).ok_or_else(|| missing(&face))?;
                    cofaces[fi].push((li, c));
                    Ok(())
                };
                push(lam[1..].to_vec(), 1)?;
                for v in 1..q {
                    let merged =
                        plus(lam[v - 1], lam[v]).ok_or_else(|| missing(&lam[v - 1..=v]))?;
                    let mut face = lam[..v - 1].to_vec();
                    face.push(merged);
                    face.extend_from_slice(&lam[v + 1..]);
                    push(face, if v % 2 == 0 { 1 } else { -1 })?;
                }
                push(lam[..q - 1].to_vec(), if q % 2 == 0 { 1 } else { -1 })?;
            }

            let mut blocks: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for (i, t) in tuples.iter().enumerate() {
                let mut key = t.clone();
                key.sort_unstable();
                blocks.entry(key).or_default().push(i);
            }
            let mut basis = Vec::new();
            let mut block_of = vec![0; tuples.len()];
            let mut constraints = Vec::with_capacity(blocks.len());
            for (key, members) in &blocks {
                // relabel the multiset by 0, 1, 2, ... so blocks of the same shape share work
                let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
                for &x in key {
                    let next = labels.len();
                    labels.entry(x).or_insert(next);
                }
                let pattern: Vec<usize> = key.iter().map(|x| labels[x]).collect();
                let shape = patterns
                    .entry(pattern.clone())
                    .or_insert_with(|| BlockShape::new(field, &pattern, &splits, convention));
                if shape.words.len() != members.len() {
                    let present: Vec<Vec<usize>> = members.iter().map(|&g| tuples[g].clone()).collect();
                    let absent = shape
                        .words
                        .iter()
                        .map(|w| {
                            let inv: BTreeMap<usize, usize> = labels.iter().map(|(a, b)| (*b, *a)).collect();
                            w.iter().map(|l| inv[l]).collect::<Vec<usize>>()
                        })
                        .find(|w| !present.contains(w))
                        .unwrap_or_default();
                    return Err(missing(&absent));
                }
                // member position of each canonical word
                let mut at = vec![0; members.len()];
                for &g in members {
                    let w: Vec<usize> = tuples[g].iter().map(|x| labels[x]).collect();
                    at[shape.position[&w]] = g;
                    block_of[g] = constraints.len();
                }
                constraints.push(
                    shape
                        .constraints
                        .iter()
                        .map(|row| row.iter().map(|&(j, c)| (at[j], c)).collect())
                        .collect::<Vec<Vec<(usize, i64)>>>(),
                );
                for v in &shape.kernel {
                    let mut sparse: SparseRow<F::Elem> = v.iter().map(|(j, x)| (at[*j], x.clone())).collect();
                    sparse.sort_by_key(|a| a.0);
                    basis.push(sparse);
                }
            }
            basis.sort_by(|a, b| a[0].0.cmp(&b[0].0));
            levels.push(Level {
                tuples,
                index,
                cofaces,
                block_of,
                constraints,
                basis,
            });
            sums = new_sums;
        }
        Ok(ShuffleComplex {
            field: field.clone(),
            points: sorted,
            levels,
        })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    /// `|S_q(K)|`
    pub fn num_tuples(&self, q: usize) -> usize {
        self.levels[q - 1].tuples.len()
    }

    pub fn tuples(&self, q: usize) -> &[Vec<usize>] {
        &self.levels[q - 1].tuples
    }

    /// Dimension of the shuffle-vanishing cochains at level `q`.
    pub fn cochain_dim(&self, q: usize) -> usize {
        if q == 0 {
            return 0;
        }
        self.levels[q - 1].basis.len()
    }

    pub fn cochain_basis(&self, q: usize) -> &[SparseRow<F::Elem>] {
        &self.levels[q - 1].basis
    }

    /// `δ^{q}φ` for a cochain `φ` of level `q − 1`.
    pub fn delta(&self, q: usize, phi: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let f = &self.field;
        let level = &self.levels[q - 1];
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (t, v) in phi {
            for &(l, c) in &level.cofaces[*t] {
                let e = acc.entry(l).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(&f.from_i64(c), v));
            }
        }
        acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
    }

    fn images(&self, q: usize) -> Vec<SparseRow<F::Elem>> {
        if q < 2 || q > self.levels.len() {
            return Vec::new();
        }
        self.levels[q - 2].basis.iter().map(|b| self.delta(q, b)).collect()
    }

    /// `dim HA^q(K)`, for `1 ≤ q < max_level`.
    pub fn cohomology_dim(&self, q: usize) -> Result<usize, Error> {
        if q == 0 || q >= self.levels.len() {
            return Err(Error::LevelExceeded {
                requested: q,
                max: self.levels.len().saturating_sub(1),
            });
        }
        let (out, inc) = (self.images(q + 1), self.images(q));
        let dim = self.cochain_dim(q);
        // ranks mod p are lower bounds, so a modular zero is exact
        if self.field.characteristic() == 0 {
            if let (Some(a), Some(b)) = (modular_rank_bound(&self.field, &out), modular_rank_bound(&self.field, &inc)) {
                if a + b == dim {
                    return Ok(0);
                }
            }
        }
        Ok(dim - sparse_rank(&self.field, out) - sparse_rank(&self.field, inc))
    }

    /// Cocycles of level `q` representing a basis of `HA^q(K)`, as dense
    /// vectors over `S_q(K)`.
    pub fn cohomology_basis(&self, q: usize) -> Result<Vec<Vec<F::Elem>>, Error> {
        if q == 0 || q >= self.levels.len() {
            return Err(Error::LevelExceeded {
                requested: q,
                max: self.levels.len().saturating_sub(1),
            });
        }
        let f = &self.field;
        let dense = |row: &SparseRow<F::Elem>, len: usize| {
            let mut v = vec![f.zero(); len];
            for (j, x) in row {
                v[*j] = x.clone();
            }
            v
        };
        let (here, next) = (self.num_tuples(q), self.num_tuples(q + 1));
        let basis: Vec<Vec<F::Elem>> = self
            .cochain_basis(q)
            .iter()
            .map(|b| dense(b, here))
            .collect();
        let images: Vec<Vec<F::Elem>> = self
            .cochain_basis(q)
            .iter()
            .map(|b| dense(&self.delta(q + 1, b), next))
            .collect();
        let boundaries: Vec<Vec<F::Elem>> = if q >= 2 {
            self.cochain_basis(q - 1)
                .iter()
                .map(|b| dense(&self.delta(q, b), here))
                .collect()
        } else {
            Vec::new()
        };
        Ok(cohomology_classes(
            f,
            &basis,
            &images,
            next,
            &boundaries,
            here,
        ))
    }

    /// `δ^{q+1} ∘ δ^q = 0` on the level `q − 1` cochains, and `δ^q` lands in
    /// the shuffle-vanishing cochains.
    pub fn check_complex(&self, q: usize) -> bool {
        if q < 2 || q + 1 > self.levels.len() {
            return true;
        }
        let f = &self.field;
        let level = &self.levels[q - 1];
        self.levels[q - 2].basis.iter().all(|b| {
            let d1 = self.delta(q, b);
            let values: BTreeMap<usize, &F::Elem> = d1.iter().map(|(i, x)| (*i, x)).collect();
            let mut touched: Vec<usize> = d1.iter().map(|(i, _)| level.block_of[*i]).collect();
            touched.sort_unstable();
            touched.dedup();
            let in_subspace = touched.iter().flat_map(|&k| &level.constraints[k]).all(|row| {
                let mut acc = f.zero();
                for (i, c) in row {
                    if let Some(x) = values.get(i) {
                        acc = f.add(&acc, &f.mul(&f.from_i64(*c), x));
                    }
                }
                f.is_zero(&acc)
            });
            in_subspace && self.delta(q + 1, &d1).is_empty()
        })
    }
}

/// `dim HA^q(K)` for a finite monoid-like `K`.
pub fn harrison_cohomology<F: Field>(
    field: &F,
    points: &[Vec<i64>],
    q: usize,
) -> Result<usize, Error> {
    if q == 0 {
        return Err(Error::LevelTooLow(q));
    }
    ShuffleComplex::new(field, points, (q + 1).max(2))?.cohomology_dim(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn singleton() {
        let c = ShuffleComplex::new(&Rationals, &pts(&[&[1, 0]]), 3).unwrap();
        assert_eq!(c.cochain_dim(1), 1);
        assert_eq!(c.cochain_dim(2), 0);
        assert_eq!(c.cohomology_dim(1).unwrap(), 1);
        assert_eq!(c.cohomology_dim(2).unwrap(), 0);
    }

    #[test]
    fn quadrant_diamond() {
        let k = pts(&[&[0, 1], &[1, 0], &[1, 1]]);
        let c = ShuffleComplex::new(&Rationals, &k, 3).unwrap();
        assert_eq!(c.num_tuples(2), 2);
        assert_eq!(c.cochain_dim(1), 3);
        assert_eq!(c.cochain_dim(2), 1);
        assert_eq!(c.num_tuples(3), 0);
        assert_eq!(c.cohomology_dim(1).unwrap(), 2);
        assert_eq!(c.cohomology_dim(2).unwrap(), 0);
        assert_eq!(
            harrison_cohomology(&PrimeField::new(5).unwrap(), &k, 2).unwrap(),
            0
        );
    }

    #[test]
    fn delta_at_level_two() {
        let k = pts(&[&[0, 1], &[1, 0], &[1, 1]]);
        let q = Rationals;
        let c = ShuffleComplex::new(&q, &k, 2).unwrap();
        // φ = indicator of (1,1)
        let phi = vec![(2, q.one())];
        let d = c.delta(2, &phi);
        assert_eq!(d, vec![(0, q.from_i64(-1)), (1, q.from_i64(-1))]);
        // φ = indicator of (0,1): δφ(λ₁,λ₂) = φ(λ₂) + φ(λ₁)
        let d = c.delta(2, &vec![(0, q.one())]);
        assert_eq!(d, vec![(0, q.one()), (1, q.one())]);
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(2, 1);
        assert_eq!(s, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        assert_eq!(shuffles(3, 1).len(), 3);
        // abcd, acdb, cabd, cdab are even; acbd, cadb are odd
        assert_eq!(shuffles(4, 2).iter().map(|x| x.1).sum::<i64>(), 2);
    }

    #[test]
    fn level_too_low() {
        assert_eq!(
            ShuffleComplex::new(&Rationals, &pts(&[&[1]]), 1).unwrap_err(),
            Error::LevelTooLow(1)
        );
    }

    #[test]
    fn not_monoid_like() {
        // (3,1) − (1,1) = (2,0) lies in Λ₊ but not in K
        let k = pts(&[&[1, 0], &[1, 1], &[2, 1], &[3, 1]]);
        assert!(matches!(
            ShuffleComplex::new(&Rationals, &k, 3),
            Err(Error::NotMonoidLike(_))
        ));
    }

    #[test]
    fn complex_on_a_line() {
        let k: Vec<Vec<i64>> = (1..=6).map(|i| vec![i]).collect();
        let c = ShuffleComplex::new(&Rationals, &k, 4).unwrap();
        for q in 2..4 {
            assert!(c.check_complex(q));
        }
        assert_eq!(c.cohomology_dim(1).unwrap(), 1);
        assert_eq!(c.cohomology_dim(2).unwrap(), 0);
        assert_eq!(c.cohomology_basis(1).unwrap().len(), 1);
    }
}
