//! Dense and sparse elimination over a [`Field`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, PrimeField};

/// Brings `rows` (each of length `ncols`) into reduced row echelon form in
/// place, dropping zero rows. Pivots are normalized to 1 and chosen at the
/// lowest available column. Returns the pivot columns.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        if !field.is_one(&rows[r][col]) {
            for v in rows[r].iter_mut().skip(col) {
                *v = field.mul(v, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for j in col..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub_mul(&row[j], &c, &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut ech = Echelon::new(field.clone(), ncols);
    for row in rows {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Basis of the right kernel `{x : A·x = 0}` of the matrix with the given rows.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut r = rows.to_vec();
    let pivots = rref(field, &mut r, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `Σ x_j·columns[j] = target`, free variables set to zero.
pub fn solve<F: Field>(
    field: &F,
    columns: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let k = columns.len();
    let mut rows: Vec<Vec<F::Elem>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<F::Elem> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![field.zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Cocycles representing a basis of `Z/B`, where `Z` is the kernel of the
/// map sending `basis[i]` to `images[i]` (vectors of length `image_len`)
/// and `B` is spanned by `boundaries`. All of `basis` and `boundaries` have
/// length `len`.
pub fn cohomology_classes<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    images: &[Vec<F::Elem>],
    image_len: usize,
    boundaries: &[Vec<F::Elem>],
    len: usize,
) -> Vec<Vec<F::Elem>> {
    // relations α with Σ αᵢ imagesᵢ = 0
    let rows: Vec<Vec<F::Elem>> = (0..image_len)
        .map(|j| images.iter().map(|v| v[j].clone()).collect())
        .collect();
    let kernel = nullspace(field, &rows, basis.len());
    let mut ech = Echelon::new(field.clone(), len);
    for b in boundaries {
        ech.insert(b.clone());
    }
    let mut out = Vec::new();
    for alpha in kernel {
        let mut z = vec![field.zero(); len];
        for (a, b) in alpha.iter().zip(basis) {
            if field.is_zero(a) {
                continue;
            }
            for (zj, bj) in z.iter_mut().zip(b) {
                *zj = field.add(zj, &field.mul(a, bj));
            }
        }
        if ech.insert(z.clone()) {
            out.push(z);
        }
    }
    out
}

/// `A·v` for a dense matrix given by rows.
pub fn mat_vec<F: Field>(field: &F, rows: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if field.is_zero(a) || field.is_zero(b) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, b))
                }
            })
        })
        .collect()
}

/// `A·B` for dense matrices given by rows (`A` is `r×k`, `B` is `k×c`).
pub fn mat_mul<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
    c: usize,
) -> Vec<Vec<F::Elem>> {
    a.iter()
        .map(|row| {
            let mut out = vec![field.zero(); c];
            for (k, x) in row.iter().enumerate() {
                if field.is_zero(x) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !field.is_zero(y) {
                        *o = field.add(o, &field.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

/// Incrementally built row echelon form. Rows are stored with leading
/// coefficient 1 but are not back-substituted.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivot_of_col: BTreeMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_of_col: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` against the stored rows, in order of pivot column.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (&col, &ri) in &self.pivot_of_col {
            if f.is_zero(&v[col]) {
                continue;
            }
            let c = v[col].clone();
            let row = &self.rows[ri];
            for j in col..self.ncols {
                if !f.is_zero(&row[j]) {
                    v[j] = f.sub_mul(&v[j], &c, &row[j]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let mut r = self.reduce(v);
        let f = &self.field;
        let Some(lead) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[lead]).expect("nonzero lead");
        for x in r.iter_mut().skip(lead) {
            *x = f.mul(x, &inv);
        }
        self.pivot_of_col.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.rows
    }
}

/// Sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Rank of a sparse matrix. Singleton rows and columns are peeled off first,
/// the rest goes through left-looking elimination.
pub fn sparse_rank<F: Field>(
    field: &F,
    rows: impl IntoIterator<Item = SparseRow<F::Elem>>,
) -> usize {
    let (peeled, mut rest) = peel(rows.into_iter().filter(|r| !r.is_empty()).collect());
    rest.sort_by_key(Vec::len);
    let mut pivots: BTreeMap<usize, SparseRow<F::Elem>> = BTreeMap::new();
    for row in rest {
        if let Some(r) = sparse_reduce(field, &pivots, row) {
            pivots.insert(r[0].0, r);
        }
    }
    peeled + pivots.len()
}

/// Removes rows that are alone in some column (each adds one to the rank)
/// and rows with a single entry (adding one and clearing their column),
/// until neither is left. Returns the rank found and the remaining rows.
fn peel<E: Clone>(rows: Vec<SparseRow<E>>) -> (usize, Vec<SparseRow<E>>) {
    let ncols = rows.iter().filter_map(|r| r.last()).map(|(j, _)| j + 1).max().unwrap_or(0);
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut dead_col = vec![false; ncols];
    let mut col_count: Vec<usize> = col_rows.iter().map(Vec::len).collect();
    let mut row_len: Vec<usize> = rows.iter().map(Vec::len).collect();
    let mut cols: Vec<usize> = (0..ncols).filter(|&j| col_count[j] == 1).collect();
    let mut singles: Vec<usize> = (0..rows.len()).filter(|&i| row_len[i] == 1).collect();
    let mut rank = 0;
    loop {
        if let Some(j) = cols.pop() {
            if dead_col[j] || col_count[j] != 1 {
                continue;
            }
            let i = *col_rows[j].iter().find(|&&i| alive[i]).expect("counted row");
            alive[i] = false;
            rank += 1;
            for (k, _) in &rows[i] {
                if !dead_col[*k] {
                    col_count[*k] -= 1;
                    if col_count[*k] == 1 {
                        cols.push(*k);
                    }
                }
            }
        } else if let Some(i) = singles.pop() {
            if !alive[i] || row_len[i] != 1 {
                continue;
            }
            let j = rows[i].iter().map(|(k, _)| *k).find(|&k| !dead_col[k]).expect("live entry");
            alive[i] = false;
            rank += 1;
            dead_col[j] = true;
            for &other in &col_rows[j] {
                if alive[other] {
                    row_len[other] -= 1;
                    match row_len[other] {
                        0 => alive[other] = false,
                        1 => singles.push(other),
                        _ => {}
                    }
                    if row_len[other] == 0 {
                        for (k, _) in &rows[other] {
                            if !dead_col[*k] {
                                col_count[*k] -= 1;
                            }
                        }
                    }
                }
            }
        } else {
            break;
        }
    }
    let rest = rows
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(r, _)| r.into_iter().filter(|(k, _)| !dead_col[*k]).collect())
        .collect();
    (rank, rest)
}

/// A lower bound for the rank from the reduction mod a large prime; `None`
/// if the entries do not reduce.
pub fn modular_rank_bound<F: Field>(field: &F, rows: &[SparseRow<F::Elem>]) -> Option<usize> {
    let p = PrimeField::new(4_294_967_291).expect("prime");
    let mut reduced = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row {
            let y = field.reduce_mod(x, &p)?;
            if y.0 != 0 {
                r.push((*j, y));
            }
        }
        reduced.push(r);
    }
    Some(sparse_rank(&p, reduced))
}

fn sparse_reduce<F: Field>(
    field: &F,
    pivots: &BTreeMap<usize, SparseRow<F::Elem>>,
    mut row: SparseRow<F::Elem>,
) -> Option<SparseRow<F::Elem>> {
    loop {
        let (lead, c) = row.first()?.clone();
        let Some(p) = pivots.get(&lead) else {
            let inv = field.inv(&c).expect("nonzero lead");
            for (_, v) in row.iter_mut() {
                *v = field.mul(v, &inv);
            }
            return Some(row);
        };
        row = sparse_axpy(field, &row, &field.neg(&c), p);
    }
}

/// `a + c·b`
pub fn sparse_axpy<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    c: &F::Elem,
    b: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
