//! `Tⁿ_A(−R)` for `A = k[σ^∨ ∩ M]`, assembled from the face-indexed complexes.

mod complex;
mod relations;
mod report;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

pub use complex::{quasilinear_chain_map, span_chain_map, span_restriction, DegreeData, FaceComplex};
pub use relations::{ko_relation_space, relation_dims, relation_space};
pub use report::{CheckStatus, CohomologyReport, Entry, Path};

use crate::cone::{dot, Cone};
use crate::error::Error;
use crate::exactla::{Echelon, Subspace};
use crate::field::Field;
use crate::harrison::ShuffleComplex;
use crate::monoid::{diamond, hilbert_basis, Degree, HilbertBasis, KSet};

/// Default highest Harrison cochain level.
pub const DEFAULT_N_MAX: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Run every applicable path and compare dimensions.
    pub verify: bool,
    /// Attach cocycle representatives to the report entries.
    pub emit_basis: bool,
    /// Highest Harrison cochain level built for the isolated path.
    pub n_max: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { verify: false, emit_basis: false, n_max: DEFAULT_N_MAX }
    }
}

/// Result of the three-dimensional Gorenstein formula for `T²(−R)`.
#[derive(Clone, Debug)]
pub struct Gorenstein3d<E> {
    pub dim: usize,
    /// Vectors of `M_k` completing `span_k K_σ^R` to `⋂ span_k K_τ^R` over the 2-faces.
    pub basis: Vec<Vec<E>>,
}

/// All lattice points of a box, in lexicographic order.
pub fn box_degrees(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Computes graded cotangent cohomology for one cone over one field.
#[derive(Clone, Debug)]
pub struct Calculator<F: Field> {
    field: F,
    cone: Cone,
    hilbert: HilbertBasis,
    options: Options,
}

impl<F: Field> Calculator<F> {
    pub fn new(field: F, cone: Cone) -> Result<Self, Error> {
        let hilbert = hilbert_basis(&cone)?;
        Ok(Calculator { field, cone, hilbert, options: Options::default() })
    }

    pub fn with_options(mut self, options: Options) -> Self {
        self.options = options;
        self
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn hilbert_basis(&self) -> &HilbertBasis {
        &self.hilbert
    }

    /// Per ray, one more than the largest pairing with the Hilbert basis. If
    /// every `⟨a^i, R⟩` exceeds this, all `E_i^R = E` and `T¹(−R) = 0`.
    pub fn suggested_pairing_bound(&self) -> Vec<i64> {
        self.cone
            .rays()
            .iter()
            .map(|a| self.hilbert.elements().iter().map(|e| dot(a, e)).max().unwrap_or(0) + 1)
            .collect()
    }

    pub fn degree(&self, r: &[i64]) -> Result<Degree, Error> {
        Degree::new(&self.cone, r.to_vec())
    }

    pub fn degree_data(&self, r: &[i64]) -> Result<DegreeData, Error> {
        DegreeData::new(&self.cone, self.degree(r)?)
    }

    pub fn span_complex(&self, r: &[i64]) -> Result<FaceComplex<F>, Error> {
        Ok(FaceComplex::span(&self.field, &self.cone, &self.degree_data(r)?))
    }

    pub fn quasilinear_complex(&self, r: &[i64]) -> Result<FaceComplex<F>, Error> {
        Ok(FaceComplex::quasilinear(&self.field, &self.cone, &self.degree_data(r)?))
    }

    fn basis_strings(&self, vs: Vec<Vec<F::Elem>>) -> Vec<Vec<alloc::string::String>> {
        vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
    }

    fn entry_from(&self, n: usize, path: Path, c: &FaceComplex<F>) -> Entry {
        let mut e = Entry::new(n, c.cohomology_dim(n), path);
        if self.options.emit_basis {
            e.basis = Some(self.basis_strings(c.cohomology_basis(n)));
        }
        e
    }

    /// `T⁰, T¹, T²` at `−R` for the requested `n ≤ 2`.
    pub fn t_general(&self, r: &[i64], ns: &[usize]) -> Result<CohomologyReport, Error> {
        if let Some(&n) = ns.iter().find(|&&n| n > 2) {
            return Err(Error::IncompatiblePath(format!("the general formulas stop at n = 2, asked for n = {n}")));
        }
        let verify = self.options.verify;
        let data = self.degree_data(r)?;
        let gor2 = self.cone.is_gorenstein_codim2();
        let wants = |n: usize| ns.contains(&n);
        let need_span = wants(0) || wants(1) || (wants(2) && gor2);
        let need_ql = (wants(2) && !gor2) || verify;
        let span = need_span.then(|| FaceComplex::span(&self.field, &self.cone, &data));
        let ql = need_ql.then(|| FaceComplex::quasilinear(&self.field, &self.cone, &data));
        let relations = (verify && self.field.characteristic() == 0 && (wants(1) || wants(2)))
            .then(|| relation_dims(&self.cone, &self.hilbert, data.degree()));

        let mut entries = Vec::new();
        let mut ns_sorted = ns.to_vec();
        ns_sorted.sort_unstable();
        ns_sorted.dedup();
        for n in ns_sorted {
            let mut e = match (n, gor2) {
                (0 | 1, _) | (2, true) => self.entry_from(n, Path::Span, span.as_ref().unwrap()),
                _ => self.entry_from(n, Path::Quasilinear, ql.as_ref().unwrap()),
            };
            if verify {
                if e.path == Path::Span {
                    e.record(Path::Quasilinear, ql.as_ref().unwrap().cohomology_dim(n));
                } else if gor2 {
                    e.record(Path::Span, span.as_ref().unwrap().cohomology_dim(n));
                }
                if let Some((t1, t2)) = relations {
                    match n {
                        1 => e.record(Path::Relations, t1),
                        2 => e.record(Path::Relations, t2),
                        _ => {}
                    }
                }
                if n == 2 && self.gorenstein3d_applies() {
                    e.record(Path::Gorenstein3d, self.t2_gorenstein3d(r)?.dim);
                }
            }
            entries.push(e);
        }
        Ok(CohomologyReport { degree: r.to_vec(), entries })
    }

    fn gorenstein3d_applies(&self) -> bool {
        self.cone.rank() == 3 && self.cone.gorenstein_degree().is_some()
    }

    /// `T²(−R)` for a three-dimensional Gorenstein cone as
    /// `⋂_τ span_k K_τ^R / span_k K_σ^R` over the 2-faces `τ`.
    pub fn t2_gorenstein3d(&self, r: &[i64]) -> Result<Gorenstein3d<F::Elem>, Error> {
        if !self.gorenstein3d_applies() {
            return Err(Error::Hypothesis("not a three-dimensional Gorenstein cone".into()));
        }
        let degree = self.degree(r)?;
        let f = &self.field;
        let mut meet = Subspace::full(f.clone(), 3);
        for &face in self.cone.faces_of_dim(2) {
            meet = meet.intersect(&KSet::new(&self.cone, face, &degree)?.span(f))?;
        }
        let top = KSet::new(&self.cone, self.cone.top_face(), &degree)?.span(f);
        let dim = Subspace::quotient_dim(&meet, &top)
            .map_err(|_| Error::CrossCheck(format!("span of K_σ^R is not inside the 2-face spans at R = {r:?}")))?;
        let mut ech = Echelon::new(f.clone(), 3);
        for b in top.basis() {
            ech.insert(b.clone());
        }
        let basis = meet.basis().iter().filter(|b| ech.insert((*b).clone())).cloned().collect();
        Ok(Gorenstein3d { dim, basis })
    }

    /// `(dim T¹(−R), dim T²(−R))` through the relation lattice; needs characteristic 0.
    pub fn t_via_relations(&self, r: &[i64]) -> Result<(usize, usize), Error> {
        if self.field.characteristic() != 0 {
            return Err(Error::FieldNotSupported);
        }
        Ok(relation_dims(&self.cone, &self.hilbert, &self.degree(r)?))
    }

    fn require_isolated(&self) -> Result<(), Error> {
        if self.cone.is_isolated() {
            Ok(())
        } else {
            Err(Error::Hypothesis("the cone has a singular proper face".into()))
        }
    }

    /// Path and, for the Harrison path, the level used by `t_isolated`.
    fn isolated_path(&self, n: usize) -> Result<(Path, usize), Error> {
        let d = self.cone.dim();
        if n < d {
            Ok((Path::Span, 0))
        } else if n == d {
            Ok((Path::Quasilinear, 0))
        } else {
            let q = n - d + 1;
            if q + 1 > self.options.n_max {
                return Err(Error::LevelExceeded { requested: q + 1, max: self.options.n_max });
            }
            Ok((Path::IsolatedHarrison, q))
        }
    }

    fn isolated_entry(&self, r: &[i64], n: usize) -> Result<Entry, Error> {
        self.require_isolated()?;
        let (path, q) = self.isolated_path(n)?;
        match path {
            Path::Span => Ok(self.entry_from(n, path, &self.span_complex(r)?)),
            Path::Quasilinear => Ok(self.entry_from(n, path, &self.quasilinear_complex(r)?)),
            _ => {
                let k = diamond(&self.cone, &self.degree(r)?)?;
                let c = ShuffleComplex::new(&self.field, &k, q + 1)?;
                let mut e = Entry::new(n, c.cohomology_dim(q)?, path);
                if self.options.emit_basis {
                    e.basis = Some(self.basis_strings(c.cohomology_basis(q)?));
                }
                Ok(e)
            }
        }
    }

    /// `dim Tⁿ(−R)` for an isolated singularity, any `n`.
    pub fn t_isolated(&self, r: &[i64], n: usize) -> Result<usize, Error> {
        Ok(self.isolated_entry(r, n)?.dim)
    }

    /// Largest `n` the isolated path reaches with the configured `n_max`.
    pub fn max_isolated_n(&self) -> usize {
        self.cone.dim() + self.options.n_max.saturating_sub(2)
    }

    /// Report for the requested `n`: the general formulas up to 2, the
    /// isolated-singularity path beyond.
    pub fn t(&self, r: &[i64], ns: &[usize]) -> Result<CohomologyReport, Error> {
        let degree = self.degree(r)?;
        let low: Vec<usize> = ns.iter().copied().filter(|&n| n <= 2).collect();
        let high: Vec<usize> = ns.iter().copied().filter(|&n| n > 2).collect();
        if !high.is_empty() {
            self.require_isolated()?;
        }
        let fast = degree.all_nonpositive() && !self.options.verify;
        let mut report = if fast {
            let mut entries = Vec::new();
            if low.contains(&0) {
                entries.extend(self.t_general(r, &[0])?.entries);
            }
            let mut rest: Vec<usize> = low.iter().chain(&high).copied().filter(|&n| n > 0).collect();
            rest.sort_unstable();
            rest.dedup();
            for n in rest {
                let mut e = Entry::new(n, 0, Path::Vanishing);
                if self.options.emit_basis {
                    e.basis = Some(Vec::new());
                }
                entries.push(e);
            }
            return Ok(CohomologyReport { degree: r.to_vec(), entries });
        } else {
            self.t_general(r, &low)?
        };
        let mut high_sorted = high;
        high_sorted.sort_unstable();
        high_sorted.dedup();
        for n in high_sorted {
            report.entries.push(self.isolated_entry(r, n)?);
        }
        Ok(report)
    }

    /// Matrix of `[·x^s]: Tⁿ(−R) → Tⁿ(−(R − s))` in the cohomology bases of
    /// the complexes of the two degrees.
    pub fn multiplication_map(&self, n: usize, r: &[i64], s: &[i64]) -> Result<Vec<Vec<F::Elem>>, Error> {
        if !self.cone.contains_dual(s) {
            return Err(Error::Hypothesis(format!("{s:?} is not in the monoid")));
        }
        let path = if n <= 2 {
            Path::Quasilinear
        } else {
            self.require_isolated()?;
            self.isolated_path(n)?.0
        };
        let target: Vec<i64> = r.iter().zip(s).map(|(a, b)| a - b).collect();
        let from = self.degree_data(r)?;
        let to = self.degree_data(&target)?;
        let (src, dst, maps) = match path {
            Path::Quasilinear => (
                FaceComplex::quasilinear(&self.field, &self.cone, &from),
                FaceComplex::quasilinear(&self.field, &self.cone, &to),
                quasilinear_chain_map(&self.field, &self.cone, &from, &to),
            ),
            Path::Span => (
                FaceComplex::span(&self.field, &self.cone, &from),
                FaceComplex::span(&self.field, &self.cone, &to),
                span_chain_map(&self.field, &self.cone, &from, &to),
            ),
            other => {
                return Err(Error::IncompatiblePath(format!("no multiplication map on the {other} path for n = {n}")));
            }
        };
        let reps = src.cohomology_basis(n);
        let target_dim = dst.cohomology_dim(n);
        let mut columns = Vec::with_capacity(reps.len());
        for z in &reps {
            let image = src.map_into(&dst, n, &maps, z);
            let coords = dst
                .class_coordinates(n, &image)
                .ok_or_else(|| Error::CrossCheck("image of a cocycle is not a cocycle".into()))?;
            columns.push(coords);
        }
        Ok((0..target_dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect())
    }

    /// Reports for every degree in the box. Degrees where every `K_i^R` is
    /// empty are left out unless `n = 0` is requested.
    pub fn degree_scan(&self, bounds: &[(i64, i64)], ns: &[usize]) -> Result<Vec<CohomologyReport>, Error> {
        let mut out = Vec::new();
        for r in box_degrees(bounds) {
            if self.skip_in_scan(&r, ns)? {
                continue;
            }
            out.push(self.t(&r, ns)?);
        }
        Ok(out)
    }

    /// Whether [`Self::degree_scan`] leaves `r` out.
    pub fn skip_in_scan(&self, r: &[i64], ns: &[usize]) -> Result<bool, Error> {
        Ok(!ns.contains(&0) && self.degree(r)?.all_nonpositive())
    }
}
