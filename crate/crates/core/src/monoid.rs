//! The monoid `Λ = σ^∨ ∩ M`, its Hilbert basis, and the sets
//! `K_τ^R = Λ₊ ∩ (R − int τ^∨)` through finite descriptors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cone::{combinations, dot, Cone};
use crate::error::Error;
use crate::exactla::{
    determinant, hermite_normal_form, integer_kernel_i64, rref, to_i64_vec, unimodular_inverse,
    IntMatrix, Subspace,
};
use crate::field::{Field, Rationals};

/// Membership in `Λ`.
pub fn contains(cone: &Cone, r: &[i64]) -> bool {
    cone.contains_dual(r)
}

/// A degree `R ∈ M` with its ray pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    r: Vec<i64>,
    pairings: Vec<i64>,
}

impl Degree {
    pub fn new(cone: &Cone, r: Vec<i64>) -> Result<Degree, Error> {
        if r.len() != cone.rank() {
            return Err(Error::DimensionMismatch {
                expected: cone.rank(),
                found: r.len(),
            });
        }
        let pairings = cone.pairings(&r);
        Ok(Degree { r, pairings })
    }

    pub fn vector(&self) -> &[i64] {
        &self.r
    }

    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    pub fn pairing(&self, i: usize) -> i64 {
        self.pairings[i]
    }

    /// `K_i^R` is empty for every ray, so `Tⁿ(−R) = 0` for `n ≥ 1`.
    pub fn all_nonpositive(&self) -> bool {
        self.pairings.iter().all(|&p| p <= 0)
    }
}

/// Hilbert basis `E` of `Λ` with its relation lattice `L(E) = ker(ℤ^E → M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    elements: Vec<Vec<i64>>,
    relations: Vec<Vec<i64>>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Saturated basis of `L(E)`.
    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// `π(q) = Σ q_e e`
    pub fn project(&self, q: &[i64]) -> Vec<i64> {
        let n = self.elements.first().map_or(0, Vec::len);
        let mut out = vec![0i64; n];
        for (c, e) in q.iter().zip(&self.elements) {
            for (o, x) in out.iter_mut().zip(e) {
                *o += c * x;
            }
        }
        out
    }
}

fn rational_inverse_transpose(s: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = s.len();
    let q = Rationals;
    // rows of [Sᵀ | I]
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| q.from_i64(s[j][i])).collect();
            row.extend((0..n).map(|j| if i == j { q.one() } else { q.zero() }));
            row
        })
        .collect();
    rref(&q, &mut rows, 2 * n);
    rows.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Minimal generating set of `Λ`. Requires a full-dimensional cone, so that
/// `σ^∨` is pointed.
pub fn hilbert_basis(cone: &Cone) -> Result<HilbertBasis, Error> {
    if !cone.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let n = cone.rank();
    let dual = cone.facet_normals();
    let mut candidates: BTreeSet<Vec<i64>> = dual.iter().cloned().collect();
    for subset in combinations(dual.len(), n) {
        let s: Vec<Vec<i64>> = subset.iter().map(|&i| dual[i].clone()).collect();
        let smat = IntMatrix::from_rows(&s, n);
        if determinant(&smat).is_zero() {
            continue;
        }
        let inv_t = rational_inverse_transpose(&s);
        let (h, _) = hermite_normal_form(&smat);
        let diag: Vec<i64> = (0..n)
            .map(|i| to_i64_vec(&[h.get(i, i).clone()]).map(|v| v[0]))
            .collect::<Result<_, _>>()?;
        // coset representatives of ℤⁿ / ℤS, folded into the half-open parallelepiped
        let mut x = vec![0i64; n];
        loop {
            let mut p = x.clone();
            for (j, row) in inv_t.iter().enumerate() {
                let lambda: BigRational = row
                    .iter()
                    .zip(&x)
                    .map(|(a, &b)| a * BigRational::from_integer(BigInt::from(b)))
                    .sum();
                let fl = lambda.numer().div_floor(lambda.denom());
                let fl = to_i64_vec(&[fl])?[0];
                if fl != 0 {
                    for (pk, sk) in p.iter_mut().zip(&s[j]) {
                        *pk -= fl * sk;
                    }
                }
            }
            if p.iter().any(|&v| v != 0) {
                candidates.insert(p);
            }
            let Some(k) = (0..n).rev().find(|&k| x[k] + 1 < diag[k]) else {
                break;
            };
            x[k] += 1;
            for v in x.iter_mut().skip(k + 1) {
                *v = 0;
            }
        }
    }
    let grading: Vec<i64> = (0..n)
        .map(|j| cone.rays().iter().map(|a| a[j]).sum())
        .collect();
    let mut cands: Vec<Vec<i64>> = candidates.into_iter().collect();
    cands.sort_by(|a, b| (dot(&grading, a), a).cmp(&(dot(&grading, b), b)));
    let mut elements: Vec<Vec<i64>> = Vec::new();
    for x in cands {
        let splits = elements.iter().any(|e| {
            let d: Vec<i64> = x.iter().zip(e).map(|(a, b)| a - b).collect();
            cone.contains_dual(&d)
        });
        if !splits {
            elements.push(x);
        }
    }
    let columns_as_rows: Vec<Vec<i64>> = (0..n)
        .map(|j| elements.iter().map(|e| e[j]).collect())
        .collect();
    let relations = integer_kernel_i64(&columns_as_rows, elements.len())?;
    Ok(HilbertBasis {
        elements,
        relations,
    })
}

/// Indices of the elements of `E` lying in `K_τ^R`.
pub fn restricted_basis(
    cone: &Cone,
    basis: &HilbertBasis,
    face: usize,
    degree: &Degree,
) -> Vec<usize> {
    let f = cone.face(face);
    basis
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            f.rays()
                .iter()
                .all(|&i| dot(cone.ray(i), e) < degree.pairing(i))
        })
        .map(|(k, _)| k)
        .collect()
}

/// Finite description of `K_τ^R`.
///
/// With `V` unimodular such that the pairings of `τ`'s rays with `v_1..v_d`
/// are an echelon matrix and `v_{d+1..n}` span `τ^⊥ ∩ M`, the quotient
/// `M/(τ^⊥ ∩ M)` gets coordinates `z_1..z_d`. The set is the union over the
/// quotient points `x̄` of `(lift_x̄ + τ^⊥) ∩ Λ₊`.
#[derive(Clone, Debug)]
pub struct KSet {
    face: usize,
    degree: Vec<i64>,
    d: usize,
    vinv: Vec<Vec<i64>>,
    perp: Vec<Vec<i64>>,
    points: Vec<Vec<i64>>,
    lifts: Vec<Vec<i64>>,
    lift_perp: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl KSet {
    pub fn new(cone: &Cone, face: usize, degree: &Degree) -> Result<KSet, Error> {
        if !cone.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let n = cone.rank();
        let f = cone.face(face);
        let tau = f.rays();
        let d = f.dim();
        let (h, v) = if tau.is_empty() {
            (IntMatrix::zeros(0, 0), IntMatrix::identity(n))
        } else {
            let a: Vec<Vec<i64>> = tau.iter().map(|&i| cone.ray(i).to_vec()).collect();
            let (h, u) = hermite_normal_form(&IntMatrix::from_rows(&a, n).transpose());
            (h, u.transpose())
        };
        let vinv = unimodular_inverse(&v)
            .expect("HNF transform is unimodular")
            .to_i64_rows()?;
        let vcols: Vec<Vec<i64>> = (0..n)
            .map(|j| to_i64_vec(&v.column(j)))
            .collect::<Result<_, _>>()?;
        let perp = vcols[d..].to_vec();
        let witness = f.witness().to_vec();

        let mut kset = KSet {
            face,
            degree: degree.vector().to_vec(),
            d,
            vinv,
            perp,
            points: Vec::new(),
            lifts: Vec::new(),
            lift_perp: Vec::new(),
            index: BTreeMap::new(),
        };
        if tau.iter().any(|&i| degree.pairing(i) <= 0) {
            return Ok(kset);
        }

        // h[j][c]: pairing of ray tau[c] with v_j; rows 0..d are echelon
        let hrows: Vec<Vec<i64>> = if tau.is_empty() {
            Vec::new()
        } else {
            h.to_i64_rows()?
        };
        let pivots: Vec<usize> = (0..d)
            .map(|j| hrows[j].iter().position(|&x| x != 0).expect("echelon row"))
            .collect();
        let bound: Vec<i64> = tau.iter().map(|&i| degree.pairing(i) - 1).collect();
        let mut found: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut z = vec![0i64; d];
        enumerate_box(&hrows, &pivots, &bound, &mut z, 0, &mut found);
        let is_top = face == cone.top_face();
        found.retain(|(_, z)| !(is_top && z.iter().all(|&x| x == 0)));
        found.sort();

        for (_, z) in found {
            let mut base = vec![0i64; n];
            for (zj, vj) in z.iter().zip(&vcols) {
                for (b, x) in base.iter_mut().zip(vj) {
                    *b += zj * x;
                }
            }
            let mut t = 0i64;
            for (i, a) in cone.rays().iter().enumerate() {
                if f.contains_ray(i) {
                    continue;
                }
                let (pb, pw) = (dot(a, &base), dot(a, &witness));
                if pb < 0 {
                    t = t.max(Integer::div_ceil(&-pb, &pw));
                }
            }
            if t == 0 && base.iter().all(|&x| x == 0) {
                t = 1;
            }
            let lift: Vec<i64> = base.iter().zip(&witness).map(|(b, w)| b + t * w).collect();
            let full = mat_vec_i64(&kset.vinv, &lift);
            kset.index.insert(z.clone(), kset.points.len());
            kset.points.push(z);
            kset.lift_perp.push(full[d..].to_vec());
            kset.lifts.push(lift);
        }
        Ok(kset)
    }

    pub fn face(&self) -> usize {
        self.face
    }

    /// The same set with every lift moved by `t·w`, `w` the face witness.
    pub fn shifted(&self, cone: &Cone, t: i64) -> KSet {
        let w = cone.face(self.face).witness();
        let mut out = self.clone();
        for (lift, lp) in out.lifts.iter_mut().zip(out.lift_perp.iter_mut()) {
            for (x, wx) in lift.iter_mut().zip(w) {
                *x += t * wx;
            }
            *lp = mat_vec_i64(&self.vinv, lift)[self.d..].to_vec();
        }
        out
    }

    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of quotient points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// `dim τ`, the rank of the quotient lattice.
    pub fn quotient_rank(&self) -> usize {
        self.d
    }

    /// Lattice basis of `τ^⊥ ∩ M`.
    pub fn perp_basis(&self) -> &[Vec<i64>] {
        &self.perp
    }

    /// Quotient coordinates of the points `x̄`.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Chosen representative in `K_τ^R` for each quotient point.
    pub fn lifts(&self) -> &[Vec<i64>] {
        &self.lifts
    }

    pub fn point_index(&self, z: &[i64]) -> Option<usize> {
        self.index.get(z).copied()
    }

    /// Index of `x̄ + ȳ` when it is again a quotient point.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let z: Vec<i64> = self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| x + y)
            .collect();
        self.point_index(&z)
    }

    /// Coordinates of `q ∈ τ^⊥ ∩ M` in the perp basis.
    pub fn perp_coords(&self, q: &[i64]) -> Vec<i64> {
        mat_vec_i64(&self.vinv, q)[self.d..].to_vec()
    }

    /// Perp coordinates of `lift_a + lift_b − lift_{a+b}`.
    pub fn defect_coords(&self, a: usize, b: usize, ab: usize) -> Vec<i64> {
        (0..self.perp.len())
            .map(|j| self.lift_perp[a][j] + self.lift_perp[b][j] - self.lift_perp[ab][j])
            .collect()
    }

    /// The quotient point of `r` and the perp coordinates of `r − lift`,
    /// when the quotient point belongs to the set.
    pub fn locate(&self, r: &[i64]) -> Option<(usize, Vec<i64>)> {
        let full = mat_vec_i64(&self.vinv, r);
        let k = self.point_index(&full[..self.d])?;
        let q = full[self.d..]
            .iter()
            .zip(&self.lift_perp[k])
            .map(|(a, b)| a - b)
            .collect();
        Some((k, q))
    }

    /// Membership of `r` in `K_τ^R`.
    pub fn contains(&self, cone: &Cone, r: &[i64]) -> bool {
        if r.iter().all(|&x| x == 0) || !cone.contains_dual(r) {
            return false;
        }
        cone.face(self.face)
            .rays()
            .iter()
            .all(|&i| dot(cone.ray(i), r) < dot(cone.ray(i), &self.degree))
    }

    /// `span_k K_τ^R` inside `M_k`.
    pub fn span<F: Field>(&self, field: &F) -> Subspace<F> {
        let n = self.vinv.len();
        if self.is_empty() {
            return Subspace::zero(field.clone(), n);
        }
        let mut gens = self.perp.clone();
        gens.extend(self.lifts.iter().cloned());
        Subspace::span_i64(field.clone(), n, &gens).expect("vectors live in M")
    }
}

fn enumerate_box(
    h: &[Vec<i64>],
    pivots: &[usize],
    bound: &[i64],
    z: &mut Vec<i64>,
    j: usize,
    out: &mut Vec<(i64, Vec<i64>)>,
) {
    let d = pivots.len();
    if j == d {
        let pairs: Vec<i64> = (0..bound.len())
            .map(|c| (0..d).map(|l| z[l] * h[l][c]).sum())
            .collect();
        if pairs.iter().zip(bound).all(|(&p, &b)| 0 <= p && p <= b) {
            out.push((pairs.iter().sum(), z.clone()));
        }
        return;
    }
    let c = pivots[j];
    let base: i64 = (0..j).map(|l| z[l] * h[l][c]).sum();
    let piv = h[j][c];
    let lo = Integer::div_ceil(&-base, &piv);
    let hi = Integer::div_floor(&(bound[c] - base), &piv);
    for v in lo..=hi {
        z[j] = v;
        enumerate_box(h, pivots, bound, z, j + 1, out);
    }
    z[j] = 0;
}

fn mat_vec_i64(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| dot(r, v)).collect()
}

/// The finite set `K_σ^R`, sorted.
pub fn diamond(cone: &Cone, degree: &Degree) -> Result<Vec<Vec<i64>>, Error> {
    let k = KSet::new(cone, cone.top_face(), degree)?;
    let mut pts = k.lifts().to_vec();
    pts.sort();
    Ok(pts)
}
