use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::input::ConeInput;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeSummary {
    pub rank: usize,
    pub dim: usize,
    pub full_dimensional: bool,
    pub rays: Vec<Vec<i64>>,
    /// Inner facet normals; together with ±`perp_basis` they generate the dual cone.
    pub dual_rays: Vec<Vec<i64>>,
    pub perp_basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceSummary {
    pub dim: usize,
    pub rays: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub smooth: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub smooth: bool,
    pub isolated: bool,
    pub gorenstein_codim2: bool,
    pub gorenstein_degree: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfoDocument {
    pub command: String,
    pub input: ConeInput,
    pub field: String,
    pub cone: ConeSummary,
    pub face_counts: Vec<usize>,
    pub faces: Vec<FaceSummary>,
    pub hilbert_basis: Option<Vec<Vec<i64>>>,
    pub classification: Classification,
    pub suggested_pairing_bound: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PathDim {
    pub path: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryReport {
    pub n: usize,
    pub dim: usize,
    pub path: String,
    pub status: String,
    pub checks: Vec<PathDim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: Vec<i64>,
    pub entries: Vec<EntryReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Total {
    pub n: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: Vec<i64>,
    pub n: usize,
    pub dims: Vec<PathDim>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossCheck {
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TOptions {
    pub n: Vec<usize>,
    pub verify: bool,
    pub emit_basis: bool,
    pub nonzero: bool,
    pub n_max: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TDocument {
    pub command: String,
    pub input: ConeInput,
    pub field: String,
    pub options: TOptions,
    pub hilbert_basis: Vec<Vec<i64>>,
    pub face_counts: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
    pub skipped_degrees: usize,
    pub totals: Vec<Total>,
    pub cross_check: CrossCheck,
    pub suggested_pairing_bound: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelDim {
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarrisonDocument {
    pub command: String,
    pub input: ConeInput,
    pub field: String,
    pub hilbert_basis: Vec<Vec<i64>>,
    pub face_counts: Vec<usize>,
    pub degree: Vec<i64>,
    pub diamond: Vec<Vec<i64>>,
    pub cohomology: Vec<LevelDim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn vectors(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| vector(v)).collect::<Vec<_>>().join(" ")
}

impl InfoDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.cone;
        let _ = writeln!(s, "cone       rank {} dim {}{}", c.rank, c.dim, if c.full_dimensional { "" } else { " (not full-dimensional)" });
        let _ = writeln!(s, "field      {}", self.field);
        let _ = writeln!(s, "rays       {}", vectors(&c.rays));
        let _ = writeln!(s, "dual rays  {}", vectors(&c.dual_rays));
        if !c.perp_basis.is_empty() {
            let _ = writeln!(s, "perp       {}", vectors(&c.perp_basis));
        }
        match &self.hilbert_basis {
            Some(hb) => {
                let _ = writeln!(s, "hilbert    {} elements: {}", hb.len(), vectors(hb));
            }
            None => {
                let _ = writeln!(s, "hilbert    not computed (cone is not full-dimensional)");
            }
        }
        let counts: Vec<String> = self.face_counts.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "faces      {} by dimension", counts.join(", "));
        for f in &self.faces {
            let names = match &f.labels {
                Some(l) => l.join(" "),
                None => format!("{:?}", f.rays),
            };
            let _ = writeln!(s, "  dim {}  {:<20} {}", f.dim, names, if f.smooth { "smooth" } else { "singular" });
        }
        let k = &self.classification;
        let _ = writeln!(s, "smooth     {}", k.smooth);
        let _ = writeln!(s, "isolated   {}", k.isolated);
        let _ = writeln!(s, "gorenstein in codimension 2: {}", k.gorenstein_codim2);
        match &k.gorenstein_degree {
            Some(r) => {
                let _ = writeln!(s, "gorenstein degree {}", vector(r));
            }
            None => {
                let _ = writeln!(s, "not gorenstein");
            }
        }
        s
    }
}

impl TDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}  verify {}  n {:?}", self.field, self.options.verify, self.options.n);
        let _ = writeln!(s, "{:<16} {:>3} {:>5}  {:<18} check", "degree", "n", "dim", "path");
        for d in &self.degrees {
            for e in &d.entries {
                let checks: Vec<String> = e.checks.iter().map(|c| format!("{}={}", c.path, c.dim)).collect();
                let status = if checks.is_empty() { e.status.clone() } else { format!("{} [{}]", e.status, checks.join(" ")) };
                let _ = writeln!(s, "{:<16} {:>3} {:>5}  {:<18} {}", vector(&d.degree), e.n, e.dim, e.path, status);
                if let Some(basis) = &e.basis {
                    for b in basis {
                        let _ = writeln!(s, "{:<16}            [{}]", "", b.join(", "));
                    }
                }
            }
        }
        if self.skipped_degrees > 0 {
            let _ = writeln!(s, "{} degrees with all pairings ≤ 0 skipped (Tⁿ = 0 for n ≥ 1)", self.skipped_degrees);
        }
        for t in &self.totals {
            let _ = writeln!(s, "total T{}: {}", t.n, t.dim);
        }
        if self.options.verify {
            let _ = writeln!(s, "cross-checks: {} compared, {} mismatches", self.cross_check.compared, self.cross_check.mismatches.len());
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "time {} ms", t.total_ms);
        }
        s
    }
}

impl HarrisonDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "degree  {}", vector(&self.degree));
        let _ = writeln!(s, "diamond {} points: {}", self.diamond.len(), vectors(&self.diamond));
        for l in &self.cohomology {
            let _ = writeln!(s, "HA{}     {}", l.q, l.dim);
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "time {} ms", t.total_ms);
        }
        s
    }
}
