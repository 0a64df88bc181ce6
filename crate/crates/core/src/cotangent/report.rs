use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// How a dimension was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Path {
    /// Cohomology of `(span_k K_•^R)^*`.
    Span,
    /// Cohomology of the quasilinear complex `Hom°(K_•^R, k)`.
    Quasilinear,
    /// The quotient formula for three-dimensional Gorenstein cones.
    Gorenstein3d,
    /// Relation lattice of the Hilbert basis.
    Relations,
    /// Harrison cohomology of the diamond `K_σ^R`.
    IsolatedHarrison,
    /// All `K_i^R` empty, so `Tⁿ(−R) = 0` for `n ≥ 1`.
    Vanishing,
}

impl Path {
    pub fn name(self) -> &'static str {
        match self {
            Path::Span => "span",
            Path::Quasilinear => "quasilinear",
            Path::Gorenstein3d => "gorenstein3d",
            Path::Relations => "relations",
            Path::IsolatedHarrison => "isolated-harrison",
            Path::Vanishing => "vanishing",
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Unchecked,
    Agreed,
    Mismatch,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Unchecked => "unchecked",
            CheckStatus::Agreed => "agreed",
            CheckStatus::Mismatch => "mismatch",
        }
    }
}

/// One `Tⁿ(−R)` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub n: usize,
    pub dim: usize,
    pub path: Path,
    /// Dimensions found by the other applicable paths, in verification mode.
    pub checks: Vec<(Path, usize)>,
    pub status: CheckStatus,
    /// Cocycle coordinates in the parametrization of `path`, when requested.
    pub basis: Option<Vec<Vec<String>>>,
}

impl Entry {
    pub fn new(n: usize, dim: usize, path: Path) -> Entry {
        Entry { n, dim, path, checks: Vec::new(), status: CheckStatus::Unchecked, basis: None }
    }

    pub(crate) fn record(&mut self, path: Path, dim: usize) {
        self.checks.push((path, dim));
        self.status = if self.status != CheckStatus::Mismatch && dim == self.dim {
            CheckStatus::Agreed
        } else {
            CheckStatus::Mismatch
        };
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: Vec<i64>,
    pub entries: Vec<Entry>,
}

impl CohomologyReport {
    pub fn get(&self, n: usize) -> Option<&Entry> {
        self.entries.iter().find(|e| e.n == n)
    }

    pub fn dim(&self, n: usize) -> Option<usize> {
        self.get(n).map(|e| e.dim)
    }

    pub fn has_mismatch(&self) -> bool {
        self.entries.iter().any(|e| e.status == CheckStatus::Mismatch)
    }

    pub fn is_zero_above(&self, n: usize) -> bool {
        self.entries.iter().filter(|e| e.n > n).all(|e| e.dim == 0)
    }
}
