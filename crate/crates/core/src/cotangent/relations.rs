use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::{dot, Cone};
use crate::exactla::{rank, solve, Subspace};
use crate::field::{Field, Rationals};
use crate::monoid::{restricted_basis, Degree, HilbertBasis};

/// `L_ℚ(E′)`: rational relations among the elements of `E` supported on `subset`.
pub fn relation_space(basis: &HilbertBasis, subset: &[usize]) -> Subspace<Rationals> {
    let q = Rationals;
    let total = basis.len();
    if subset.is_empty() {
        return Subspace::zero(q, total);
    }
    let n = basis.elements()[0].len();
    let rows: Vec<Vec<_>> = (0..n).map(|j| subset.iter().map(|&e| q.from_i64(basis.elements()[e][j])).collect()).collect();
    let vecs = crate::exactla::nullspace(&q, &rows, subset.len())
        .into_iter()
        .map(|v| {
            let mut full = vec![q.zero(); total];
            for (x, &e) in v.into_iter().zip(subset) {
                full[e] = x;
            }
            full
        })
        .collect();
    Subspace::span(q, total, vecs).expect("lengths")
}

/// `ko-L_ℚ(E_τ^R)`: the span of the relations `q` with `π(q⁺) ∈ K_τ^R`.
///
/// Split `E_τ^R` into `E′ = E_τ^R ∩ τ^⊥` and the rest `E″`. Two monomials in
/// `E_τ^R` with the same image in `K_τ^R` differ, modulo `L(E′)`, by a
/// difference of their `E″`-parts, and those parts have the same `τ`-pairings.
/// Conversely any two `E″`-monomials with equal `τ`-pairings below `R` are
/// completed by `E′`-monomials to a relation of this kind. So besides
/// `L(E′)` it suffices to link each `E″`-monomial to one representative per
/// pairing value, and by induction only one-step extensions are needed.
pub fn ko_relation_space(cone: &Cone, basis: &HilbertBasis, face: usize, degree: &Degree) -> Subspace<Rationals> {
    let q = Rationals;
    let total = basis.len();
    let tau = cone.face(face).rays().to_vec();
    let e_tau = restricted_basis(cone, basis, face, degree);
    let phi = |e: usize| -> Vec<i64> { tau.iter().map(|&i| dot(cone.ray(i), &basis.elements()[e])).collect() };
    let (e_perp, e_rest): (Vec<usize>, Vec<usize>) = e_tau.iter().partition(|&&e| phi(e).iter().all(|&x| x == 0));
    let bound: Vec<i64> = tau.iter().map(|&i| degree.pairing(i)).collect();

    let mut gens: Vec<Vec<_>> = relation_space(basis, &e_perp).basis().to_vec();

    // representatives by pairing value, in order of increasing total pairing
    let mut reps: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    reps.insert(vec![0; tau.len()], vec![0; total]);
    let mut frontier = vec![vec![0i64; tau.len()]];
    let mut steps: Vec<(Vec<i64>, usize, Vec<i64>)> = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for &e in &e_rest {
                let w: Vec<i64> = v.iter().zip(phi(e)).map(|(a, b)| a + b).collect();
                if w.iter().zip(&bound).any(|(x, b)| x >= b) {
                    continue;
                }
                if !reps.contains_key(&w) {
                    let mut m = reps[v].clone();
                    m[e] += 1;
                    reps.insert(w.clone(), m);
                    next.push(w.clone());
                }
                steps.push((v.clone(), e, w));
            }
        }
        next.sort();
        frontier = next;
    }

    let perp_cols: Vec<Vec<_>> = e_perp
        .iter()
        .map(|&e| basis.elements()[e].iter().map(|&x| q.from_i64(x)).collect())
        .collect();
    for (v, e, w) in steps {
        let mut m: Vec<i64> = reps[&v].clone();
        m[e] += 1;
        let diff: Vec<i64> = m.iter().zip(&reps[&w]).map(|(a, b)| a - b).collect();
        if diff.iter().all(|&x| x == 0) {
            continue;
        }
        let image = basis.project(&diff);
        let target: Vec<_> = image.iter().map(|&x| q.from_i64(-x)).collect();
        let c = solve(&q, &perp_cols, &target).expect("difference lies in the span of E ∩ τ^⊥");
        let mut g: Vec<_> = diff.iter().map(|&x| q.from_i64(x)).collect();
        for (ci, &e) in c.iter().zip(&e_perp) {
            g[e] = q.add(&g[e], ci);
        }
        gens.push(g);
    }
    Subspace::span(q, total, gens).expect("lengths")
}

/// `(dim T¹(−R), dim T²(−R))` from the relation lattice of the Hilbert basis.
pub fn relation_dims(cone: &Cone, basis: &HilbertBasis, degree: &Degree) -> (usize, usize) {
    let q = Rationals;
    let rays: Vec<usize> = cone.faces_of_dim(1).to_vec();
    let l_i: Vec<Subspace<Rationals>> =
        rays.iter().map(|&f| relation_space(basis, &restricted_basis(cone, basis, f, degree))).collect();
    let mut union: Vec<usize> = rays.iter().flat_map(|&f| restricted_basis(cone, basis, f, degree)).collect();
    union.sort_unstable();
    union.dedup();
    let l_union = relation_space(basis, &union);
    let sum = l_i.iter().fold(Subspace::zero(q, basis.len()), |acc, s| acc.sum(s).expect("lengths"));
    let t1 = l_union.dim() - sum.dim();

    // ker(⊕ L(E_i) → L(E)) modulo the image of ⊕ ko-L(E_ij)
    let total: usize = l_i.iter().map(Subspace::dim).sum();
    let kernel = total - sum.dim();
    let offsets: Vec<usize> = l_i.iter().scan(0, |acc, s| {
        let o = *acc;
        *acc += s.dim();
        Some(o)
    }).collect();
    let mut image_rows = Vec::new();
    for &f in cone.faces_of_dim(2) {
        let ko = ko_relation_space(cone, basis, f, degree);
        for g in ko.basis() {
            let mut row = vec![q.zero(); total];
            for (k, &rf) in rays.iter().enumerate() {
                if !cone.face(rf).is_subface_of(cone.face(f)) {
                    continue;
                }
                let sign = cone.incidence_sign(rf, f).expect("covering pair");
                let coords = l_i[k].coordinates(g).expect("ko-L(E_ij) ⊆ L(E_i)");
                for (j, c) in coords.into_iter().enumerate() {
                    row[offsets[k] + j] = if sign > 0 { c } else { q.neg(&c) };
                }
            }
            image_rows.push(row);
        }
    }
    let t2 = kernel - rank(&q, &image_rows, total);
    (t1, t2)
}
