mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use toric_harrison::cone::Cone;
use toric_harrison::cotangent::{box_degrees, Calculator, DegreeData, FaceComplex};
use toric_harrison::exactla::{
    determinant, hermite_normal_form, int_rank, integer_kernel, smith_normal_form, IntMatrix, Subspace,
};
use toric_harrison::harrison::{QuasilinearSpace, ShuffleComplex};
use toric_harrison::monoid::{diamond, Degree, KSet};
use toric_harrison::Rationals;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn cone_2d() -> impl Strategy<Value = Cone> {
    (prop::collection::vec(-3i64..=3, 2), prop::collection::vec(-3i64..=3, 2))
        .prop_filter_map("independent rays", |(a, b)| {
            if a[0] * b[1] - a[1] * b[0] == 0 {
                return None;
            }
            Cone::from_rays_primitivized(2, vec![a, b]).ok()
        })
}

fn cone_3d() -> impl Strategy<Value = Cone> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..=4).prop_filter_map("pointed cone", |rays| {
        let n = rays.len();
        let c = Cone::from_rays_primitivized(3, rays).ok()?;
        (c.is_full_dimensional() && c.rays().len() == n && small(&c)).then_some(c)
    })
}

/// Keeps the Hilbert basis and the diamonds on the radius-1 box small.
fn small(c: &Cone) -> bool {
    toric_harrison::monoid::hilbert_basis(c).is_ok_and(|hb| hb.len() <= 8)
        && box_degrees(&vec![(-1, 2); c.rank()])
            .iter()
            .all(|r| diamond(c, &Degree::new(c, r.clone()).unwrap()).unwrap().len() <= 25)
}

fn any_cone() -> impl Strategy<Value = Cone> {
    prop_oneof![cone_2d(), cone_3d()]
}

fn with_degree(c: Cone) -> impl Strategy<Value = (Cone, Vec<i64>)> {
    let n = c.rank();
    (Just(c), prop::collection::vec(-1i64..=2, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hermite_contract(rows in matrix(3, 4)) {
        let m = IntMatrix::from_rows(&rows, 4);
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert_eq!(determinant(&u).abs(), BigInt::from(1));
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) {
                Some(p) => {
                    prop_assert!(last_pivot.is_none_or(|q| p > q));
                    prop_assert!(h.get(i, p).is_positive());
                    for k in 0..i {
                        prop_assert!(!h.get(k, p).is_negative() && h.get(k, p) < h.get(i, p));
                    }
                    last_pivot = Some(p);
                }
                None => last_pivot = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn smith_contract(rows in matrix(3, 3)) {
        let m = IntMatrix::from_rows(&rows, 3);
        let d = smith_normal_form(&m);
        prop_assert_eq!(d.len(), int_rank(&m));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if d.len() == 3 {
            let prod: BigInt = d.iter().product();
            prop_assert_eq!(prod, determinant(&m).abs());
        }
    }

    #[test]
    fn kernel_is_saturated(rows in matrix(2, 4)) {
        let m = IntMatrix::from_rows(&rows, 4);
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), 4 - int_rank(&m));
        for v in &k {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let km = IntMatrix::from_big_rows(&k, 4);
            prop_assert!(smith_normal_form(&km).iter().all(|x| *x == BigInt::from(1)));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(3, 5), b in matrix(3, 5)) {
        let q = Rationals;
        let u = Subspace::span_i64(q, 5, &a).unwrap();
        let w = Subspace::span_i64(q, 5, &b).unwrap();
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum));
    }

    #[test]
    fn dual_of_dual(c in any_cone()) {
        let dual = Cone::new(c.rank(), c.facet_normals().to_vec()).unwrap();
        let mut back = dual.facet_normals().to_vec();
        let mut rays = c.rays().to_vec();
        back.sort();
        rays.sort();
        prop_assert_eq!(back, rays);
    }

    #[test]
    fn face_complexes_square_to_zero((c, r) in any_cone().prop_flat_map(with_degree)) {
        let data = DegreeData::new(&c, Degree::new(&c, r).unwrap()).unwrap();
        prop_assert!(FaceComplex::span(&Rationals, &c, &data).check());
        prop_assert!(FaceComplex::quasilinear(&Rationals, &c, &data).check());
    }

    #[test]
    fn face_ksets_are_intersections((c, r) in any_cone().prop_flat_map(with_degree)) {
        let degree = Degree::new(&c, r.clone()).unwrap();
        let radius = 6;
        let points = box_degrees(&vec![(-radius, radius); c.rank()]);
        for face in c.faces() {
            let k = c.face_index(face.rays()).unwrap();
            let set = KSet::new(&c, k, &degree).unwrap();
            for p in &points {
                let expected = c.contains_dual(p)
                    && p.iter().any(|&x| x != 0)
                    && face.rays().iter().all(|&i| c.pairings(p)[i] < degree.pairing(i));
                prop_assert_eq!(set.contains(&c, p), expected, "face {:?} point {:?}", face.rays(), p);
            }
        }
    }

    #[test]
    fn lifts_locate_to_themselves((c, r) in any_cone().prop_flat_map(with_degree)) {
        let degree = Degree::new(&c, r).unwrap();
        for k in 0..c.faces().len() {
            let set = KSet::new(&c, k, &degree).unwrap();
            for (i, lift) in set.lifts().iter().enumerate() {
                prop_assert!(set.contains(&c, lift));
                let (j, q) = set.locate(lift).unwrap();
                prop_assert_eq!(j, i);
                prop_assert!(q.iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn diamond_matches_brute_force((c, r) in any_cone().prop_flat_map(with_degree)) {
        let k = diamond(&c, &Degree::new(&c, r.clone()).unwrap()).unwrap();
        let brute = common::brute_diamond(c.rays(), &r, 40);
        prop_assert_eq!(k.into_iter().collect::<std::collections::BTreeSet<_>>(), brute);
    }

    #[test]
    fn harrison_one_is_quasilinear((c, r) in any_cone().prop_flat_map(with_degree)) {
        let degree = Degree::new(&c, r).unwrap();
        let k = diamond(&c, &degree).unwrap();
        prop_assume!(!k.is_empty());
        let h = ShuffleComplex::new(&Rationals, &k, 3).unwrap();
        let top = KSet::new(&c, c.top_face(), &degree).unwrap();
        prop_assert_eq!(h.cohomology_dim(1).unwrap(), QuasilinearSpace::new(&Rationals, &top).dim());
        prop_assert!(h.check_complex(2));
    }

    #[test]
    fn ray_order_does_not_matter((c, r) in cone_2d().prop_flat_map(with_degree)) {
        let mut rays = c.rays().to_vec();
        rays.reverse();
        let flipped = Cone::new(c.rank(), rays).unwrap();
        let a = Calculator::new(Rationals, c).unwrap().t(&r, &[0, 1, 2]).unwrap();
        let b = Calculator::new(Rationals, flipped).unwrap().t(&r, &[0, 1, 2]).unwrap();
        for n in 0..=2 {
            prop_assert_eq!(a.dim(n), b.dim(n));
        }
    }
}

#[test]
fn ray_order_does_not_matter_in_dimension_three() {
    let rays = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
    let base = Calculator::new(Rationals, Cone::new(3, rays.clone()).unwrap()).unwrap();
    let perm = vec![rays[2].clone(), rays[0].clone(), rays[3].clone(), rays[1].clone()];
    let other = Calculator::new(Rationals, Cone::new(3, perm).unwrap()).unwrap();
    for r in box_degrees(&[(-1, 2), (-1, 2), (-1, 2)]) {
        let a = base.t(&r, &[0, 1, 2]).unwrap();
        let b = other.t(&r, &[0, 1, 2]).unwrap();
        assert_eq!(a.entries.iter().map(|e| e.dim).collect::<Vec<_>>(), b.entries.iter().map(|e| e.dim).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_characteristic((c, r) in any_cone().prop_flat_map(with_degree)) {
        let data = DegreeData::new(&c, Degree::new(&c, r).unwrap()).unwrap();
        for fc in [FaceComplex::span(&Rationals, &c, &data), FaceComplex::quasilinear(&Rationals, &c, &data)] {
            let sign = |p: usize| if p.is_multiple_of(2) { 1i64 } else { -1 };
            let terms: i64 = (0..=fc.top()).map(|p| sign(p) * fc.term_dim(p) as i64).sum();
            let cohom: i64 = (0..=fc.top()).map(|p| sign(p) * fc.cohomology_dim(p) as i64).sum();
            prop_assert_eq!(terms, cohom);
        }
    }
}

/// Pushing a class along the witness of a smooth face eventually kills it.
#[test]
fn witnesses_of_smooth_faces_annihilate() {
    let cones = [
        Cone::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap(),
        Cone::new(2, vec![vec![0, 1], vec![3, -1]]).unwrap(),
        Cone::new(3, vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap(),
    ];
    for c in cones {
        let calc = Calculator::new(Rationals, c.clone()).unwrap();
        let smooth: Vec<usize> = (1..c.faces().len() - 1).filter(|&k| c.is_smooth(k)).collect();
        assert!(!smooth.is_empty());
        for r in box_degrees(&vec![(-1, 3); c.rank()]) {
            for n in 1..=2 {
                if calc.t(&r, &[n]).unwrap().dim(n) == Some(0) {
                    continue;
                }
                for &k in &smooth {
                    let s = c.face(k).witness().to_vec();
                    let mut current = r.clone();
                    let mut steps = 0;
                    loop {
                        let m = calc.multiplication_map(n, &current, &s).unwrap();
                        current = current.iter().zip(&s).map(|(a, b)| a - b).collect();
                        if m.iter().flatten().all(num_traits::Zero::is_zero) {
                            break;
                        }
                        steps += 1;
                        assert!(steps < 20, "no annihilation for {:?} at {r:?}", c.rays());
                    }
                }
            }
        }
    }
}
