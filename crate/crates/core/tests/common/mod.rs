//! Brute-force oracles that share no code with the library beyond the cone input.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    BigRational::from_integer(BigInt::from(x))
}

/// Rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `r ∈ σ^∨` straight from the inequalities.
pub fn in_dual(rays: &[Vec<i64>], r: &[i64]) -> bool {
    rays.iter().all(|a| dot(a, r) >= 0)
}

/// A polynomial as a map from exponent vectors to integer coefficients.
pub type Poly = BTreeMap<Vec<u32>, i64>;

pub fn poly(terms: &[(i64, &[u32])]) -> Poly {
    let mut p = Poly::new();
    for &(c, e) in terms {
        *p.entry(e.to_vec()).or_insert(0) += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

pub fn derivative(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        if e[i] > 0 {
            let mut e2 = e.clone();
            e2[i] -= 1;
            *out.entry(e2).or_insert(0) += c * e[i] as i64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// A graded polynomial ring `k[x_1..x_m]` with `deg x_j = e_j ∈ M`.
pub struct GradedRing {
    pub degrees: Vec<Vec<i64>>,
}

impl GradedRing {
    pub fn degree_of(&self, e: &[u32]) -> Vec<i64> {
        let n = self.degrees[0].len();
        (0..n).map(|k| e.iter().zip(&self.degrees).map(|(&a, d)| a as i64 * d[k]).sum()).collect()
    }

    /// All monomials of degree `d`; `weight` is a functional positive on every `e_j`.
    pub fn monomials(&self, d: &[i64], weight: &[i64]) -> Vec<Vec<u32>> {
        let target = dot(weight, d);
        if target < 0 {
            return Vec::new();
        }
        let w: Vec<i64> = self.degrees.iter().map(|e| dot(weight, e)).collect();
        assert!(w.iter().all(|&x| x > 0), "weight must be positive on the generators");
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.degrees.len()];
        fn rec(j: usize, left: i64, w: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if j == w.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut k = 0;
            while k as i64 * w[j] <= left {
                cur[j] = k;
                rec(j + 1, left - k as i64 * w[j], w, cur, out);
                k += 1;
            }
            cur[j] = 0;
        }
        rec(0, target, &w, &mut cur, &mut out);
        out.retain(|e| self.degree_of(e) == d);
        out
    }

    fn poly_degree(&self, p: &Poly) -> Vec<i64> {
        let mut it = p.keys().map(|e| self.degree_of(e));
        let d = it.next().expect("nonzero polynomial");
        assert!(it.all(|x| x == d), "inhomogeneous polynomial");
        d
    }

    /// `dim (k[x]/J)_d` for the ideal `J` generated by homogeneous `gens`.
    pub fn quotient_dim(&self, gens: &[Poly], d: &[i64], weight: &[i64]) -> usize {
        let basis = self.monomials(d, weight);
        let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_empty()) {
            let gd = self.poly_degree(g);
            let rest: Vec<i64> = d.iter().zip(&gd).map(|(a, b)| a - b).collect();
            for m in self.monomials(&rest, weight) {
                let mut row = vec![Q::zero(); basis.len()];
                for (e, &c) in g {
                    let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index[&prod]] += q(c);
                }
                rows.push(row);
            }
        }
        basis.len() - rank(rows)
    }
}

/// `dim T¹(−R)` of the hypersurface `k[x]/(f)` as the graded piece of the
/// Tjurina algebra `k[x]/(f, ∂f)` in degree `deg f − R`.
pub fn tjurina_t1(ring: &GradedRing, f: &Poly, r: &[i64], weight: &[i64]) -> usize {
    let df = ring.poly_degree(f);
    let d: Vec<i64> = df.iter().zip(r).map(|(a, b)| a - b).collect();
    let mut gens = vec![f.clone()];
    for i in 0..ring.degrees.len() {
        gens.push(derivative(f, i));
    }
    ring.quotient_dim(&gens, &d, weight)
}

/// `dim T¹(−R)` of `A = k[x]/I = k[σ^∨ ∩ M]` from a presentation: the
/// cokernel of `Der_k(P)_{−R} → Hom_P(I, A)_{−R}`. The generators of `I` are
/// `f`, the syzygies among them are the rows of `syz`. Every graded piece of
/// `A` is `k·χ^d` for `d ∈ σ^∨ ∩ M` and zero otherwise.
pub fn presentation_t1(ring: &GradedRing, rays: &[Vec<i64>], f: &[Poly], syz: &[Vec<Poly>], r: &[i64]) -> usize {
    let shift = |d: &[i64]| -> Vec<i64> { d.iter().zip(r).map(|(a, b)| a - b).collect() };
    let fdeg: Vec<Vec<i64>> = f.iter().map(|p| ring.poly_degree(p)).collect();
    // slot j is live when χ^{deg f_j − R} exists in A
    let live: Vec<bool> = fdeg.iter().map(|d| in_dual(rays, &shift(d))).collect();
    let coeff_sum = |p: &Poly| -> i64 { p.values().sum() };

    // Hom: c ∈ k^{live} with Σ_j s_kj c_j = 0 for every syzygy
    let mut eqs: Vec<Vec<Q>> = Vec::new();
    for s in syz {
        let mut row = vec![Q::zero(); f.len()];
        let mut nonzero = false;
        for (j, p) in s.iter().enumerate() {
            if live[j] && !p.is_empty() {
                let sd = ring.poly_degree(p);
                let total: Vec<i64> = sd.iter().zip(&shift(&fdeg[j])).map(|(a, b)| a + b).collect();
                if in_dual(rays, &total) {
                    row[j] = q(coeff_sum(p));
                    nonzero = true;
                }
            }
        }
        if nonzero {
            eqs.push(row);
        }
    }
    let nlive = live.iter().filter(|&&b| b).count();
    let hom = nlive - rank(eqs);

    // images of χ^{e_i − R} ∂_i
    let mut images = Vec::new();
    for (i, e) in ring.degrees.iter().enumerate() {
        if !in_dual(rays, &shift(e)) {
            continue;
        }
        let row: Vec<Q> = f
            .iter()
            .enumerate()
            .map(|(j, p)| if live[j] { q(coeff_sum(&derivative(p, i))) } else { Q::zero() })
            .collect();
        images.push(row);
    }
    hom - rank(images)
}

/// `Λ₊ ∩ (R − int σ^∨)` by scanning a box; panics if the box is too small.
pub fn brute_diamond(rays: &[Vec<i64>], r: &[i64], radius: i64) -> BTreeSet<Vec<i64>> {
    let n = r.len();
    let mut out = BTreeSet::new();
    let mut cur = vec![-radius; n];
    loop {
        if cur.iter().any(|&x| x != 0) && rays.iter().all(|a| dot(a, &cur) >= 0 && dot(a, &cur) < dot(a, r)) {
            assert!(cur.iter().all(|x| x.abs() < radius), "box too small");
            out.insert(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            cur[k] += 1;
            if cur[k] <= radius {
                break;
            }
            cur[k] = -radius;
            k += 1;
        }
    }
}

/// Relations `a − b` between monomials of total degree `≤ max_deg` in the
/// Hilbert basis whose common value satisfies `⟨a^i, ·⟩ < R_i` for `i ∈ tau`.
pub fn brute_ko_relations(
    rays: &[Vec<i64>],
    basis: &[Vec<i64>],
    tau: &[usize],
    r: &[i64],
    max_deg: u32,
) -> Vec<Vec<Q>> {
    let m = basis.len();
    let n = r.len();
    let mut by_value: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut cur = vec![0u32; m];
    fn rec(j: usize, left: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if j == cur.len() {
            f(cur);
            return;
        }
        for k in 0..=left {
            cur[j] = k;
            rec(j + 1, left - k, cur, f);
        }
        cur[j] = 0;
    }
    rec(0, max_deg, &mut cur, &mut |e: &[u32]| {
        if e.iter().all(|&x| x == 0) {
            return;
        }
        let v: Vec<i64> = (0..n).map(|k| e.iter().zip(basis).map(|(&a, b)| a as i64 * b[k]).sum()).collect();
        if tau.iter().all(|&i| dot(&rays[i], &v) < dot(&rays[i], r)) {
            by_value.entry(v).or_default().push(e.to_vec());
        }
    });
    let mut out = Vec::new();
    for monos in by_value.values() {
        for b in &monos[1..] {
            out.push(monos[0].iter().zip(b).map(|(&x, &y)| q(x as i64 - y as i64)).collect());
        }
    }
    out
}

pub fn one() -> Q {
    Q::one()
}
