use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::Cone;
use crate::error::Error;
use crate::exactla::{nullspace, Echelon, Subspace};
use crate::field::Field;
use crate::monoid::KSet;

/// `Hom°(K_τ^R, k)`, the quasilinear functions on a K-set.
///
/// A function is stored as `(ℓ, c)`: `ℓ` gives its values on `τ^⊥ ∩ M` in
/// the descriptor's perp basis and `c_x̄ = f(lift_x̄)`, so that
/// `f(lift_x̄ + q) = c_x̄ + ℓ(q)`.
#[derive(Clone, Debug)]
pub struct QuasilinearSpace<F: Field> {
    nperp: usize,
    npoints: usize,
    space: Subspace<F>,
}

type Form<E> = BTreeMap<usize, E>;

fn add_into<F: Field>(field: &F, acc: &mut Form<F::Elem>, form: &Form<F::Elem>, c: &F::Elem) {
    for (k, v) in form {
        let e = acc.entry(*k).or_insert_with(|| field.zero());
        *e = field.add(e, &field.mul(c, v));
        if field.is_zero(e) {
            acc.remove(k);
        }
    }
}

impl<F: Field> QuasilinearSpace<F> {
    pub fn new(field: &F, k: &KSet) -> QuasilinearSpace<F> {
        let p = k.perp_basis().len();
        let m = k.len();
        let ambient = p + m;
        if m == 0 {
            return QuasilinearSpace {
                nperp: p,
                npoints: 0,
                space: Subspace::zero(field.clone(), ambient),
            };
        }
        let one = field.one();
        let minus = field.neg(&one);
        let ell = |coords: &[i64]| -> Form<F::Elem> {
            coords
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (j, field.from_i64(x)))
                .collect()
        };

        let mut by_target: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
        for a in 0..m {
            for b in a..m {
                if let Some(ab) = k.sum_index(a, b) {
                    by_target[ab].push((a, b));
                }
            }
        }

        // express every c_x̄ through ℓ and the values at indecomposable points
        let mut nfree = p;
        let mut forms: Vec<Form<F::Elem>> = Vec::with_capacity(m);
        let mut defining: Vec<Option<(usize, usize)>> = vec![None; m];
        for x in 0..m {
            let pairs = &by_target[x];
            let form = if pairs.contains(&(x, x)) {
                // the zero class: c_0̄ = ℓ(w)
                defining[x] = Some((x, x));
                ell(&k.defect_coords(x, x, x))
            } else if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a != x && b != x) {
                defining[x] = Some((a, b));
                let mut f = forms[a].clone();
                add_into(field, &mut f, &forms[b], &one);
                add_into(field, &mut f, &ell(&k.defect_coords(a, b, x)), &minus);
                f
            } else {
                nfree += 1;
                Form::from([(nfree - 1, one.clone())])
            };
            forms.push(form);
        }

        let span_dim = k.span(field).dim();
        let target_rank = nfree.saturating_sub(span_dim);
        let mut ech = Echelon::new(field.clone(), nfree);
        'outer: for (x, pairs) in by_target.iter().enumerate() {
            for &(a, b) in pairs {
                if ech.rank() >= target_rank {
                    break 'outer;
                }
                if defining[x] == Some((a, b)) {
                    continue;
                }
                let mut row = forms[a].clone();
                add_into(field, &mut row, &forms[b], &one);
                add_into(field, &mut row, &forms[x], &minus);
                add_into(field, &mut row, &ell(&k.defect_coords(a, b, x)), &minus);
                if row.is_empty() {
                    continue;
                }
                let mut dense = vec![field.zero(); nfree];
                for (j, v) in row {
                    dense[j] = v;
                }
                ech.insert(dense);
            }
        }

        let sols = nullspace(field, ech.rows(), nfree);
        let vectors: Vec<Vec<F::Elem>> = sols
            .iter()
            .map(|y| {
                let mut v = y[..p].to_vec();
                for form in &forms {
                    let val = form.iter().fold(field.zero(), |acc, (j, c)| {
                        field.add(&acc, &field.mul(c, &y[*j]))
                    });
                    v.push(val);
                }
                v
            })
            .collect();
        let space = Subspace::span(field.clone(), ambient, vectors).expect("ambient length");
        QuasilinearSpace {
            nperp: p,
            npoints: m,
            space,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `dim τ^⊥ + #quotient points`, the length of a coordinate vector.
    pub fn ambient(&self) -> usize {
        self.nperp + self.npoints
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        self.space.basis()
    }
}

/// Value at `r ∈ K` of the function with coordinates `f`.
pub fn evaluate<F: Field>(
    field: &F,
    cone: &Cone,
    k: &KSet,
    f: &[F::Elem],
    r: &[i64],
) -> Result<F::Elem, Error> {
    if !k.contains(cone, r) {
        return Err(Error::NotInSet(r.to_vec()));
    }
    let (x, q) = k.locate(r).ok_or_else(|| Error::NotInSet(r.to_vec()))?;
    let p = k.perp_basis().len();
    let mut v = f[p + x].clone();
    for (c, l) in q.iter().zip(&f[..p]) {
        if *c != 0 {
            v = field.add(&v, &field.mul(&field.from_i64(*c), l));
        }
    }
    Ok(v)
}

/// Matrix (rows indexed by target coordinates) restricting functions on
/// `src` to `dst ⊆ src`.
pub fn restriction_matrix<F: Field>(field: &F, src: &KSet, dst: &KSet) -> Vec<Vec<F::Elem>> {
    let (ps, pd) = (src.perp_basis().len(), dst.perp_basis().len());
    let cols = ps + src.len();
    let mut rows = Vec::with_capacity(pd + dst.len());
    if dst.is_empty() {
        for _ in 0..pd {
            rows.push(vec![field.zero(); cols]);
        }
        return rows;
    }
    for q in dst.perp_basis() {
        let mut row = vec![field.zero(); cols];
        for (j, c) in src.perp_coords(q).iter().enumerate() {
            row[j] = field.from_i64(*c);
        }
        rows.push(row);
    }
    for lift in dst.lifts() {
        let (x, q) = src
            .locate(lift)
            .expect("target set is contained in the source set");
        let mut row = vec![field.zero(); cols];
        for (j, c) in q.iter().enumerate() {
            row[j] = field.from_i64(*c);
        }
        row[ps + x] = field.one();
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{mat_vec, rank};
    use crate::field::Rationals;
    use crate::monoid::Degree;

    fn cone(rays: &[&[i64]]) -> Cone {
        Cone::new(rays[0].len(), rays.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn kset(c: &Cone, face: usize, r: &[i64]) -> KSet {
        KSet::new(c, face, &Degree::new(c, r.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn a1_dimensions() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let q = Rationals;
        let edge = kset(&c, c.ray_face(0), &[2, 0]);
        assert_eq!(QuasilinearSpace::new(&q, &edge).dim(), 2);
        let top = kset(&c, c.top_face(), &[2, 0]);
        assert_eq!(QuasilinearSpace::new(&q, &top).dim(), 1);
        let empty = kset(&c, c.ray_face(1), &[0, 0]);
        assert_eq!(QuasilinearSpace::new(&q, &empty).dim(), 0);
        assert_eq!(QuasilinearSpace::new(&q, &kset(&c, 0, &[0, 0])).dim(), 2);
    }

    #[test]
    fn restriction_a1_edge_to_top_is_onto() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let q = Rationals;
        let src = kset(&c, c.ray_face(0), &[2, 0]);
        let dst = kset(&c, c.top_face(), &[2, 0]);
        let m = restriction_matrix(&q, &src, &dst);
        let ql = QuasilinearSpace::new(&q, &src);
        let images: Vec<_> = ql.basis().iter().map(|b| mat_vec(&q, &m, b)).collect();
        assert_eq!(rank(&q, &images, dst.perp_basis().len() + dst.len()), 1);
    }

    #[test]
    fn linear_functional_restricts_to_itself() {
        let c = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let q = Rationals;
        let u = [2i64, -1, 3];
        let src = kset(&c, 0, &[1, 1, 3]);
        let face = c.face_index(&[0, 1]).unwrap();
        let dst = kset(&c, face, &[1, 1, 3]);
        // on Λ₊ the function r ↦ ⟨u, r⟩ has ℓ = u and c = ⟨u, w⟩
        let mut f: Vec<_> = u.iter().map(|&x| q.from_i64(x)).collect();
        f.push(q.from_i64(crate::cone::dot(&u, &src.lifts()[0])));
        let g = mat_vec(&q, &restriction_matrix(&q, &src, &dst), &f);
        for lift in dst.lifts() {
            assert_eq!(
                evaluate(&q, &c, &dst, &g, lift).unwrap(),
                q.from_i64(crate::cone::dot(&u, lift))
            );
        }
        assert!(QuasilinearSpace::new(&q, &dst)
            .space()
            .contains(&g)
            .unwrap());
    }

    #[test]
    fn evaluate_rejects_outside_points() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let q = Rationals;
        let k = kset(&c, c.top_face(), &[2, 0]);
        let f = vec![q.one()];
        assert_eq!(evaluate(&q, &c, &k, &f, &[1, 0]).unwrap(), q.one());
        assert_eq!(
            evaluate(&q, &c, &k, &f, &[0, 1]),
            Err(Error::NotInSet(vec![0, 1]))
        );
    }
}
