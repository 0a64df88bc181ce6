use alloc::vec;
use alloc::vec::Vec;

use crate::cone::Cone;
use crate::exactla::{cohomology_classes, mat_vec, solve, Echelon, Subspace};
use crate::field::Field;
use crate::harrison::{restriction_matrix, QuasilinearSpace};
use crate::monoid::{Degree, KSet};

/// The K-sets of every face for one degree.
#[derive(Clone, Debug)]
pub struct DegreeData {
    degree: Degree,
    ksets: Vec<KSet>,
}

impl DegreeData {
    pub fn new(cone: &Cone, degree: Degree) -> Result<DegreeData, crate::Error> {
        let ksets = (0..cone.faces().len()).map(|f| KSet::new(cone, f, &degree)).collect::<Result<_, _>>()?;
        Ok(DegreeData { degree, ksets })
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn kset(&self, face: usize) -> &KSet {
        &self.ksets[face]
    }
}

#[derive(Clone, Debug)]
struct Block<E> {
    face: usize,
    offset: usize,
    ambient: usize,
    basis: Vec<Vec<E>>,
}

#[derive(Clone, Debug)]
struct Edge<E> {
    src: usize,
    dst: usize,
    sign: i32,
    matrix: Vec<Vec<E>>,
}

/// A complex indexed by face dimension: term `p` is the direct sum over the
/// `p`-dimensional faces `τ` of a subspace `W_τ` of some coordinate space,
/// and the differential is the signed sum of per-inclusion maps.
#[derive(Clone, Debug)]
pub struct FaceComplex<F: Field> {
    field: F,
    terms: Vec<Vec<Block<F::Elem>>>,
    lens: Vec<usize>,
    /// `edges[p]`: maps from term `p` to term `p + 1`, indexed by block.
    edges: Vec<Vec<Edge<F::Elem>>>,
}

/// Per-face data a complex is assembled from.
trait FaceSpaces<F: Field> {
    fn ambient(&self, face: usize) -> usize;
    fn basis(&self, face: usize) -> Vec<Vec<F::Elem>>;
    fn map(&self, from: usize, to: usize) -> Vec<Vec<F::Elem>>;
}

impl<F: Field> FaceComplex<F> {
    fn assemble(field: &F, cone: &Cone, spaces: &impl FaceSpaces<F>) -> FaceComplex<F> {
        let mut terms = Vec::new();
        let mut lens = Vec::new();
        for p in 0..=cone.dim() {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for &face in cone.faces_of_dim(p) {
                let ambient = spaces.ambient(face);
                blocks.push(Block { face, offset, ambient, basis: spaces.basis(face) });
                offset += ambient;
            }
            terms.push(blocks);
            lens.push(offset);
        }
        let mut edges = Vec::new();
        for p in 0..cone.dim() {
            let mut list = Vec::new();
            for (si, s) in terms[p].iter().enumerate() {
                for (di, d) in terms[p + 1].iter().enumerate() {
                    if !cone.face(s.face).is_subface_of(cone.face(d.face)) {
                        continue;
                    }
                    let sign = cone.incidence_sign(s.face, d.face).expect("covering pair");
                    list.push(Edge { src: si, dst: di, sign, matrix: spaces.map(s.face, d.face) });
                }
            }
            edges.push(list);
        }
        FaceComplex { field: field.clone(), terms, lens, edges }
    }

    /// The complex `(span_k K_•^R)^*`, each dual identified with coordinates
    /// on the echelon basis of the span.
    pub fn span(field: &F, cone: &Cone, data: &DegreeData) -> FaceComplex<F> {
        let spans: Vec<Subspace<F>> = (0..cone.faces().len()).map(|f| data.kset(f).span(field)).collect();
        Self::assemble(field, cone, &SpanSpaces { field: field.clone(), spans })
    }

    /// The complex `Hom°(K_•^R, k)` of quasilinear functions.
    pub fn quasilinear(field: &F, cone: &Cone, data: &DegreeData) -> FaceComplex<F> {
        let spaces: Vec<QuasilinearSpace<F>> =
            (0..cone.faces().len()).map(|f| QuasilinearSpace::new(field, data.kset(f))).collect();
        Self::assemble(field, cone, &QuasilinearSpaces { field: field.clone(), data, spaces })
    }

    /// Highest term index, `dim σ`.
    pub fn top(&self) -> usize {
        self.terms.len() - 1
    }

    /// Length of coordinate vectors of term `p`.
    pub fn coordinate_len(&self, p: usize) -> usize {
        self.lens.get(p).copied().unwrap_or(0)
    }

    pub fn term_dim(&self, p: usize) -> usize {
        self.terms.get(p).map_or(0, |t| t.iter().map(|b| b.basis.len()).sum())
    }

    /// Basis of term `p` as coordinate vectors.
    pub fn term_basis(&self, p: usize) -> Vec<Vec<F::Elem>> {
        let Some(term) = self.terms.get(p) else { return Vec::new() };
        let len = self.lens[p];
        let mut out = Vec::new();
        for b in term {
            for v in &b.basis {
                let mut full = vec![self.field.zero(); len];
                full[b.offset..b.offset + b.ambient].clone_from_slice(v);
                out.push(full);
            }
        }
        out
    }

    /// The differential from term `p` to term `p + 1`.
    pub fn differential(&self, p: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.coordinate_len(p + 1)];
        let Some(edges) = self.edges.get(p) else { return out };
        for e in edges {
            let s = &self.terms[p][e.src];
            let d = &self.terms[p + 1][e.dst];
            let piece = &v[s.offset..s.offset + s.ambient];
            if piece.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            for (o, x) in out[d.offset..d.offset + d.ambient].iter_mut().zip(mat_vec(f, &e.matrix, piece)) {
                *o = if e.sign > 0 { f.add(o, &x) } else { f.sub(o, &x) };
            }
        }
        out
    }

    fn images(&self, p: usize) -> Vec<Vec<F::Elem>> {
        self.term_basis(p).iter().map(|b| self.differential(p, b)).collect()
    }

    fn image_rank(&self, p: usize) -> usize {
        if p > self.top() {
            return 0;
        }
        let mut ech = Echelon::new(self.field.clone(), self.coordinate_len(p + 1));
        for v in self.images(p) {
            ech.insert(v);
        }
        ech.rank()
    }

    pub fn cohomology_dim(&self, p: usize) -> usize {
        if p > self.top() {
            return 0;
        }
        let incoming = if p == 0 { 0 } else { self.image_rank(p - 1) };
        self.term_dim(p) - self.image_rank(p) - incoming
    }

    /// Cocycles representing a basis of `H^p`, deterministic for given input.
    pub fn cohomology_basis(&self, p: usize) -> Vec<Vec<F::Elem>> {
        if p > self.top() {
            return Vec::new();
        }
        let boundaries = if p == 0 { Vec::new() } else { self.images(p - 1) };
        cohomology_classes(
            &self.field,
            &self.term_basis(p),
            &self.images(p),
            self.coordinate_len(p + 1),
            &boundaries,
            self.coordinate_len(p),
        )
    }

    /// Coordinates of the class of a cocycle `z` in [`Self::cohomology_basis`].
    pub fn class_coordinates(&self, p: usize, z: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let reps = self.cohomology_basis(p);
        let mut cols = reps.clone();
        if p > 0 {
            cols.extend(self.images(p - 1));
        }
        let x = solve(&self.field, &cols, z)?;
        Some(x[..reps.len()].to_vec())
    }

    /// `d∘d = 0`, and each differential maps the chosen subspaces into each other.
    pub fn check(&self) -> bool {
        let f = &self.field;
        for p in 0..self.top() {
            let next = Subspace::span(f.clone(), self.coordinate_len(p + 1), self.term_basis(p + 1)).expect("lengths");
            for b in self.term_basis(p) {
                let d1 = self.differential(p, &b);
                if !next.contains(&d1).expect("lengths") {
                    return false;
                }
                if !self.differential(p + 1, &d1).iter().all(|x| f.is_zero(x)) {
                    return false;
                }
            }
        }
        true
    }

    /// Applies a chain map given by per-face matrices to a vector of term `p`,
    /// producing a vector of term `p` of `target`.
    pub fn map_into(&self, target: &FaceComplex<F>, p: usize, maps: &[Vec<Vec<F::Elem>>], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); target.coordinate_len(p)];
        for (s, d) in self.terms[p].iter().zip(&target.terms[p]) {
            let piece = &v[s.offset..s.offset + s.ambient];
            for (o, x) in out[d.offset..d.offset + d.ambient].iter_mut().zip(mat_vec(f, &maps[s.face], piece)) {
                *o = x;
            }
        }
        out
    }
}

struct SpanSpaces<F: Field> {
    field: F,
    spans: Vec<Subspace<F>>,
}

impl<F: Field> FaceSpaces<F> for SpanSpaces<F> {
    fn ambient(&self, face: usize) -> usize {
        self.spans[face].dim()
    }

    fn basis(&self, face: usize) -> Vec<Vec<F::Elem>> {
        unit_vectors(&self.field, self.spans[face].dim())
    }

    fn map(&self, from: usize, to: usize) -> Vec<Vec<F::Elem>> {
        span_restriction(&self.spans[from], &self.spans[to])
    }
}

struct QuasilinearSpaces<'a, F: Field> {
    field: F,
    data: &'a DegreeData,
    spaces: Vec<QuasilinearSpace<F>>,
}

impl<F: Field> FaceSpaces<F> for QuasilinearSpaces<'_, F> {
    fn ambient(&self, face: usize) -> usize {
        self.spaces[face].ambient()
    }

    fn basis(&self, face: usize) -> Vec<Vec<F::Elem>> {
        self.spaces[face].basis().to_vec()
    }

    fn map(&self, from: usize, to: usize) -> Vec<Vec<F::Elem>> {
        restriction_matrix(&self.field, self.data.kset(from), self.data.kset(to))
    }
}

fn unit_vectors<F: Field>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|i| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        })
        .collect()
}

/// Dual of the inclusion `small ⊆ big`: a functional given by its values on
/// the basis of `big` goes to its values on the basis of `small`.
pub fn span_restriction<F: Field>(big: &Subspace<F>, small: &Subspace<F>) -> Vec<Vec<F::Elem>> {
    small
        .basis()
        .iter()
        .map(|b| big.coordinates(b).expect("spans shrink along inclusions"))
        .collect()
}

/// Per-face matrices of the chain map between the complexes of two degrees
/// `R` and `R − s`, induced by `K^{R−s}_τ ⊆ K^R_τ`.
pub fn quasilinear_chain_map<F: Field>(field: &F, cone: &Cone, from: &DegreeData, to: &DegreeData) -> Vec<Vec<Vec<F::Elem>>> {
    (0..cone.faces().len()).map(|f| restriction_matrix(field, from.kset(f), to.kset(f))).collect()
}

pub fn span_chain_map<F: Field>(field: &F, cone: &Cone, from: &DegreeData, to: &DegreeData) -> Vec<Vec<Vec<F::Elem>>> {
    (0..cone.faces().len()).map(|f| span_restriction(&from.kset(f).span(field), &to.kset(f).span(field))).collect()
}
