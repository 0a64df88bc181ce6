//! Integer matrices with arbitrary-precision entries and their normal forms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Dense row-major matrix over ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. Every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows converted back to machine integers.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>, Error> {
        (0..self.rows).map(|i| to_i64_vec(self.row(i))).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -core::mem::take(v);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] -= q * s;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] -= q * s;
            }
        }
    }

    /// Replaces rows `a`, `b` by `(x·a + y·b, u·a + v·b)`.
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            if ra.is_zero() && rb.is_zero() {
                continue;
            }
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = u * &ra + v * &rb;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>, Error> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(format!("{x}"))))
        .collect()
}

pub fn to_big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Row-style Hermite normal form: returns `(h, u)` with `u·m = h`, `u` unimodular,
/// `h` in row echelon form with positive pivots and the entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pr = 0;
    for col in 0..m.cols {
        if pr == m.rows {
            break;
        }
        for i in pr + 1..m.rows {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(pr, col).clone();
            let b = h.get(i, col).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            // [x y; -b/g a/g] has determinant 1
            h.combine_rows(pr, i, &x, &y, &-&b_g, &a_g);
            u.combine_rows(pr, i, &x, &y, &-&b_g, &a_g);
        }
        if h.get(pr, col).is_zero() {
            continue;
        }
        if h.get(pr, col).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let piv = h.get(pr, col).clone();
        for i in 0..pr {
            let q = h.get(i, col).div_floor(&piv);
            h.sub_row_multiple(i, pr, &q);
            u.sub_row_multiple(i, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

/// Number of nonzero rows of an echelon matrix.
fn echelon_rank(h: &IntMatrix) -> usize {
    (0..h.rows)
        .take_while(|&i| h.row(i).iter().any(|v| !v.is_zero()))
        .count()
}

/// Nonzero elementary divisors `d₁ | d₂ | …` (all positive).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let piv = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(&piv);
                    a.sub_row_multiple(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(&piv);
                    a.sub_col_multiple(j, t, &q);
                    if !a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder into the pivot position
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..r {
                    let v = a.get(i, t);
                    if !v.is_zero() && v.abs() < a.get(bi, bj).abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..c {
                    let v = a.get(t, j);
                    if !v.is_zero() && v.abs() < a.get(bi, bj).abs() {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                continue;
            }
            let mut bad_row = None;
            'search: for i in t + 1..r {
                for j in t + 1..c {
                    if !a.get(i, j).is_multiple_of(&piv) {
                        bad_row = Some(i);
                        break 'search;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    // row t += row i, then the next pass shrinks the pivot
                    a.sub_row_multiple(t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    diag
}

/// Saturated lattice basis of `{x ∈ ℤ^cols : m·x = 0}`, returned in Hermite
/// normal form so the basis is canonical.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let r = echelon_rank(&h);
    let kernel_rows: Vec<Vec<BigInt>> = (r..m.cols).map(|i| u.row_vec(i)).collect();
    if kernel_rows.is_empty() {
        return kernel_rows;
    }
    let (hk, _) = hermite_normal_form(&IntMatrix::from_big_rows(&kernel_rows, m.cols));
    (0..echelon_rank(&hk)).map(|i| hk.row_vec(i)).collect()
}

/// Kernel basis for `i64` input, converted back to `i64`.
pub fn integer_kernel_i64(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>, Error> {
    integer_kernel(&IntMatrix::from_rows(rows, cols))
        .iter()
        .map(|v| to_i64_vec(v))
        .collect()
}

/// An integral solution of `m·x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = echelon_rank(&h);
    let mut rest: Vec<BigInt> = b.to_vec();
    let mut x = vec![BigInt::zero(); m.cols];
    for k in 0..rank {
        let row = h.row(k);
        let p = row
            .iter()
            .position(|v| !v.is_zero())
            .expect("nonzero echelon row");
        let (z, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        if z.is_zero() {
            continue;
        }
        for (r, hv) in rest.iter_mut().zip(row) {
            *r -= &z * hv;
        }
        for (xi, uv) in x.iter_mut().zip(u.row(k)) {
            *xi += &z * uv;
        }
    }
    if rest.iter().all(Zero::is_zero) {
        Some(x)
    } else {
        None
    }
}

/// Rank over ℚ.
pub fn int_rank(m: &IntMatrix) -> usize {
    echelon_rank(&hermite_normal_form(m).0)
}

/// Determinant of a square matrix (fraction-free Bareiss elimination).
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let (h, u) = hermite_normal_form(m);
    if h == IntMatrix::identity(m.rows) {
        Some(u)
    } else {
        None
    }
}

/// gcd of the entries (0 for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}
