//! Rational polyhedral cones in `N = ℤⁿ`: dual cone, face lattice with
//! orientations, smoothness and Gorenstein data.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exactla::{
    determinant, int_rank, integer_kernel_i64, smith_normal_form, solve_integer, to_big_vec,
    to_i64_vec, IntMatrix,
};

/// `⟨a, r⟩`
pub fn dot(a: &[i64], r: &[i64]) -> i64 {
    a.iter().zip(r).map(|(x, y)| x * y).sum()
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = crate::exactla::content(v).abs();
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn rank_of(vs: &[&Vec<i64>], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = vs.iter().map(|v| (*v).clone()).collect();
    int_rank(&IntMatrix::from_rows(&rows, n))
}

/// A face of a cone, keyed by the indices of the rays it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    rays: Vec<usize>,
    dim: usize,
    orientation: Vec<usize>,
    witness: Vec<i64>,
}

impl Face {
    /// Sorted ray indices; empty for the zero face.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ray indices of the lexicographically first spanning subset, in order.
    pub fn orientation(&self) -> &[usize] {
        &self.orientation
    }

    /// `w ∈ M` with `⟨a^i,w⟩ = 0` for the rays of the face and `> 0` for the others.
    pub fn witness(&self) -> &[i64] {
        &self.witness
    }

    pub fn contains_ray(&self, i: usize) -> bool {
        self.rays.binary_search(&i).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.rays.iter().all(|i| other.contains_ray(*i))
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vec<i64>>,
    dim: usize,
    perp: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    faces: Vec<Face>,
    by_dim: Vec<Vec<usize>>,
}

impl Cone {
    /// Validates the rays (primitive, distinct, irredundant, pointed) and
    /// builds the face lattice.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>) -> Result<Cone, Error> {
        if rays.is_empty() {
            return Err(Error::NoRays);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::ZeroRay(i));
            }
            if crate::exactla::content(r).abs() != 1 {
                return Err(Error::NotPrimitive {
                    index: i,
                    ray: r.clone(),
                });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(Error::DuplicateRay(i, j));
                }
            }
        }

        let perp = integer_kernel_i64(&rays, rank)?;
        let dim = rank - perp.len();
        // coordinates of the rays in a basis of the saturated lattice they span
        let (local, to_m) = if perp.is_empty() {
            (rays.clone(), None)
        } else {
            let basis = integer_kernel_i64(&perp, rank)?;
            let bmat = IntMatrix::from_columns(&basis, rank);
            let mut local = Vec::with_capacity(rays.len());
            for r in &rays {
                let c =
                    solve_integer(&bmat, &to_big_vec(r)).expect("ray lies in its own span lattice");
                local.push(to_i64_vec(&c)?);
            }
            (local, Some(bmat.transpose()))
        };

        let mut normals: Vec<Vec<i64>> = Vec::new();
        for subset in combinations(rays.len(), dim - 1) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| local[i].clone()).collect();
            let ker = integer_kernel_i64(&rows, dim)?;
            if ker.len() != 1 {
                continue;
            }
            let mut u = ker.into_iter().next().unwrap();
            let pairs: Vec<i64> = local.iter().map(|a| dot(a, &u)).collect();
            if pairs.iter().any(|&p| p < 0) {
                if pairs.iter().any(|&p| p > 0) {
                    continue;
                }
                u.iter_mut().for_each(|x| *x = -*x);
            }
            if !normals.contains(&u) {
                normals.push(u);
            }
        }
        let normal_refs: Vec<&Vec<i64>> = normals.iter().collect();
        if rank_of(&normal_refs, dim) != dim {
            return Err(Error::NotPointed);
        }

        let facets: Vec<Vec<i64>> = match &to_m {
            None => normals.clone(),
            Some(bt) => normals
                .iter()
                .map(|u| {
                    let x = solve_integer(bt, &to_big_vec(u)).expect("saturated span lattice");
                    to_i64_vec(&x)
                })
                .collect::<Result<_, _>>()?,
        };
        let facet_sets: Vec<BTreeSet<usize>> = normals
            .iter()
            .map(|u| {
                (0..rays.len())
                    .filter(|&i| dot(&local[i], u) == 0)
                    .collect()
            })
            .collect();

        // faces are the intersections of facets, plus the cone itself
        let all: BTreeSet<usize> = (0..rays.len()).collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        for fs in &facet_sets {
            let current: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
            for s in current {
                sets.insert(s.intersection(fs).cloned().collect());
            }
        }

        for i in 0..rays.len() {
            let minimal = sets
                .iter()
                .filter(|s| s.contains(&i))
                .min_by_key(|s| s.len())
                .unwrap();
            let members: Vec<&Vec<i64>> = minimal.iter().map(|&j| &rays[j]).collect();
            if rank_of(&members, rank) != 1 {
                return Err(Error::RedundantRay(i));
            }
        }

        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| {
                let idx: Vec<usize> = s.into_iter().collect();
                let members: Vec<&Vec<i64>> = idx.iter().map(|&j| &rays[j]).collect();
                let d = rank_of(&members, rank);
                let mut orientation = Vec::new();
                let mut chosen: Vec<&Vec<i64>> = Vec::new();
                for &j in &idx {
                    chosen.push(&rays[j]);
                    if rank_of(&chosen, rank) == chosen.len() {
                        orientation.push(j);
                    } else {
                        chosen.pop();
                    }
                }
                let mut witness = vec![0i64; rank];
                for (u, fs) in facets.iter().zip(&facet_sets) {
                    if idx.iter().all(|j| fs.contains(j)) {
                        for (w, x) in witness.iter_mut().zip(u) {
                            *w += x;
                        }
                    }
                }
                Face {
                    rays: idx,
                    dim: d,
                    orientation,
                    witness,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        let mut by_dim = vec![Vec::new(); dim + 1];
        for (k, f) in faces.iter().enumerate() {
            by_dim[f.dim].push(k);
        }
        let mut facets = facets;
        facets.sort();
        Ok(Cone {
            rank,
            rays,
            dim,
            perp,
            facets,
            faces,
            by_dim,
        })
    }

    /// Like [`Cone::new`], dividing every ray by its content first.
    pub fn from_rays_primitivized(rank: usize, rays: Vec<Vec<i64>>) -> Result<Cone, Error> {
        let rays = rays.iter().map(|r| primitive(r)).collect();
        Cone::new(rank, rays)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// Lattice basis of `σ^⊥ ∩ M`.
    pub fn perp_basis(&self) -> &[Vec<i64>] {
        &self.perp
    }

    /// Primitive inner normals of the facets, sorted. For a full-dimensional
    /// cone these are the rays of `σ^∨`.
    pub fn facet_normals(&self) -> &[Vec<i64>] {
        &self.facets
    }

    /// Generators of `σ^∨`: the facet normals, followed by `±` a basis of
    /// `σ^⊥` when the cone is not full-dimensional.
    pub fn dual_cone(&self) -> Vec<Vec<i64>> {
        let mut out = self.facets.clone();
        for p in &self.perp {
            out.push(p.clone());
            out.push(p.iter().map(|x| -x).collect());
        }
        out
    }

    /// `⟨a^i, r⟩` for every ray.
    pub fn pairings(&self, r: &[i64]) -> Vec<i64> {
        self.rays.iter().map(|a| dot(a, r)).collect()
    }

    /// Membership in `Λ = σ^∨ ∩ M`.
    pub fn contains_dual(&self, r: &[i64]) -> bool {
        self.rays.iter().all(|a| dot(a, r) >= 0)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, k: usize) -> &Face {
        &self.faces[k]
    }

    /// Indices of the faces of dimension `p`, ordered by ray set.
    pub fn faces_of_dim(&self, p: usize) -> &[usize] {
        self.by_dim.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn zero_face(&self) -> usize {
        0
    }

    pub fn top_face(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn face_index(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.faces.iter().position(|f| f.rays == key)
    }

    /// Index of the face `{i}` for ray `i`.
    pub fn ray_face(&self, i: usize) -> usize {
        self.face_index(&[i]).expect("rays are faces")
    }

    /// Pairs `(τ, τ′)` with `τ ⊂ τ′` and `dim τ′ = dim τ + 1`.
    pub fn covering_pairs(&self, p: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &t in self.faces_of_dim(p) {
            for &u in self.faces_of_dim(p + 1) {
                if self.faces[t].is_subface_of(&self.faces[u]) {
                    out.push((t, u));
                }
            }
        }
        out
    }

    /// Sign comparing the orientation of `τ` extended by an inward ray of
    /// `τ′` with the orientation of `τ′`.
    pub fn incidence_sign(&self, t: usize, u: usize) -> Result<i32, Error> {
        let (ft, fu) = (&self.faces[t], &self.faces[u]);
        if fu.dim != ft.dim + 1 || !ft.is_subface_of(fu) {
            return Err(Error::NotIncident(t, u));
        }
        let v = *fu
            .rays
            .iter()
            .find(|i| !ft.contains_ray(**i))
            .expect("larger face has a new ray");
        let mut x: Vec<Vec<i64>> = ft
            .orientation
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        x.push(self.rays[v].clone());
        let y: Vec<Vec<i64>> = fu
            .orientation
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        let d = fu.dim;
        for cols in combinations(self.rank, d) {
            let minor = |m: &[Vec<i64>]| {
                let rows: Vec<Vec<i64>> = m
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c]).collect())
                    .collect();
                determinant(&IntMatrix::from_rows(&rows, d))
            };
            let dy = minor(&y);
            if dy.is_zero() {
                continue;
            }
            let dx = minor(&x);
            return Ok(if dx.is_positive() == dy.is_positive() {
                1
            } else {
                -1
            });
        }
        unreachable!("orientation rays are independent")
    }

    /// Generated by part of a ℤ-basis of `N`.
    pub fn is_smooth(&self, k: usize) -> bool {
        let f = &self.faces[k];
        if f.rays.len() != f.dim {
            return false;
        }
        if f.dim == 0 {
            return true;
        }
        let rows: Vec<Vec<i64>> = f.rays.iter().map(|&i| self.rays[i].clone()).collect();
        let d = smith_normal_form(&IntMatrix::from_rows(&rows, self.rank));
        d.len() == f.dim && d.iter().all(|x| *x == BigInt::from(1))
    }

    pub fn is_smooth_cone(&self) -> bool {
        self.is_smooth(self.top_face())
    }

    /// Every proper face smooth, i.e. the singular locus is at most the fixed point.
    pub fn is_isolated(&self) -> bool {
        (0..self.top_face()).all(|k| self.is_smooth(k))
    }

    /// For a 2-face `⟨a^i, a^j⟩`, some `r ∈ M` with both pairings equal to 1.
    pub fn gorenstein_r(&self, k: usize) -> Result<Option<Vec<i64>>, Error> {
        let f = &self.faces[k];
        if f.dim != 2 || f.rays.len() != 2 {
            return Err(Error::NotTwoDimensional(k));
        }
        Ok(self.solve_all_ones(&f.rays))
    }

    /// Every 2-face admits an `r(i,j)`.
    pub fn is_gorenstein_codim2(&self) -> bool {
        self.faces_of_dim(2)
            .iter()
            .all(|&k| matches!(self.gorenstein_r(k), Ok(Some(_))))
    }

    /// `r ∈ M` with `⟨a^i, r⟩ = 1` for all rays, when the cone is Gorenstein.
    pub fn gorenstein_degree(&self) -> Option<Vec<i64>> {
        let all: Vec<usize> = (0..self.rays.len()).collect();
        self.solve_all_ones(&all)
    }

    fn solve_all_ones(&self, idx: &[usize]) -> Option<Vec<i64>> {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        let m = IntMatrix::from_rows(&rows, self.rank);
        let x = solve_integer(&m, &vec![BigInt::from(1); idx.len()])?;
        to_i64_vec(&x).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: &[&[i64]]) -> Cone {
        Cone::new(rays[0].len(), rays.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn quadric() -> Cone {
        cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])
    }

    #[test]
    fn dual_of_quadrant_and_a1() {
        assert_eq!(
            cone(&[&[1, 0], &[0, 1]]).dual_cone(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            cone(&[&[1, 0], &[1, 2]]).dual_cone(),
            vec![vec![0, 1], vec![2, -1]]
        );
        let q = quadric();
        assert_eq!(q.dual_cone().len(), 4);
        for u in q.dual_cone() {
            assert!(q.contains_dual(&u));
            assert_eq!(q.pairings(&u).iter().filter(|&&p| p == 0).count(), 2);
        }
    }

    #[test]
    fn face_counts() {
        let counts = |c: &Cone| {
            (0..=c.dim())
                .map(|p| c.faces_of_dim(p).len())
                .collect::<Vec<_>>()
        };
        assert_eq!(counts(&cone(&[&[1, 0], &[0, 1]])), vec![1, 2, 1]);
        assert_eq!(counts(&quadric()), vec![1, 4, 4, 1]);
        let ray = cone(&[&[1, 0]]);
        assert_eq!(counts(&ray), vec![1, 1]);
        assert!(!ray.is_full_dimensional());
        assert_eq!(ray.face(ray.zero_face()).rays(), &[] as &[usize]);
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(Cone::new(2, vec![]).unwrap_err(), Error::NoRays);
        assert!(matches!(
            Cone::new(2, vec![vec![2, 0]]),
            Err(Error::NotPrimitive { index: 0, .. })
        ));
        assert_eq!(
            Cone::new(2, vec![vec![1, 0], vec![-1, 0]]).unwrap_err(),
            Error::NotPointed
        );
        assert_eq!(
            Cone::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap_err(),
            Error::RedundantRay(1)
        );
        assert_eq!(
            Cone::new(2, vec![vec![1, 0], vec![1, 0]]).unwrap_err(),
            Error::DuplicateRay(0, 1)
        );
        assert_eq!(
            Cone::new(2, vec![vec![0, 0]]).unwrap_err(),
            Error::ZeroRay(0)
        );
        assert!(matches!(
            Cone::new(2, vec![vec![1, 0, 0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        let c = Cone::from_rays_primitivized(2, vec![vec![2, 0], vec![3, 3]]).unwrap();
        assert_eq!(c.rays(), &[vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn witnesses_cut_out_faces() {
        for c in [
            quadric(),
            cone(&[&[1, 0], &[1, 2]]),
            cone(&[&[1, 0, 0], &[0, 1, 0]]),
        ] {
            for f in c.faces() {
                for (i, p) in c.pairings(f.witness()).iter().enumerate() {
                    assert_eq!(*p == 0, f.contains_ray(i));
                    assert!(*p >= 0);
                }
            }
        }
    }

    #[test]
    fn incidence_signs() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        let top = quad.top_face();
        let s1 = quad.incidence_sign(quad.ray_face(0), top).unwrap();
        let s2 = quad.incidence_sign(quad.ray_face(1), top).unwrap();
        assert_eq!(s1, -s2);
        assert_eq!(quad.incidence_sign(0, quad.ray_face(1)).unwrap(), 1);
        assert_eq!(quad.incidence_sign(0, top), Err(Error::NotIncident(0, top)));
    }

    #[test]
    fn smoothness() {
        let a1 = cone(&[&[1, 0], &[1, 2]]);
        assert!(!a1.is_smooth(a1.top_face()));
        assert!(a1.is_smooth(a1.ray_face(1)));
        assert!(a1.is_smooth(0));
        assert!(a1.is_isolated());
        assert!(cone(&[&[1, 0], &[0, 1]]).is_smooth_cone());
        let q = quadric();
        assert!(!q.is_smooth_cone());
        assert!(q.is_isolated());
    }

    #[test]
    fn gorenstein_data() {
        let q = quadric();
        let face = q.face_index(&[0, 1]).unwrap();
        let r = q.gorenstein_r(face).unwrap().unwrap();
        assert_eq!(dot(q.ray(0), &r), 1);
        assert_eq!(dot(q.ray(1), &r), 1);
        assert!(q.is_gorenstein_codim2());
        assert_eq!(q.gorenstein_degree(), Some(vec![0, 0, 1]));
        let a1 = cone(&[&[1, 0], &[1, 2]]);
        assert_eq!(a1.gorenstein_r(a1.top_face()).unwrap(), Some(vec![1, 0]));
        let a2 = cone(&[&[1, 0], &[1, 3]]);
        assert_eq!(a2.gorenstein_r(a2.top_face()).unwrap(), Some(vec![1, 0]));
        // the cone over the twisted cubic is not Gorenstein
        let tc = cone(&[&[0, 1], &[3, -1]]);
        assert_eq!(tc.gorenstein_r(tc.top_face()).unwrap(), None);
        assert_eq!(
            a1.gorenstein_r(a1.ray_face(0)),
            Err(Error::NotTwoDimensional(a1.ray_face(0)))
        );
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(1, 2).is_empty());
    }
}
