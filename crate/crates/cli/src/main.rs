//! `toric-t`: graded cotangent cohomology of affine toric varieties.

mod input;
mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use toric_harrison::cone::Cone;
use toric_harrison::cotangent::{CheckStatus, CohomologyReport, Calculator, Options, DEFAULT_N_MAX};
use toric_harrison::harrison::ShuffleComplex;
use toric_harrison::monoid::{diamond, hilbert_basis, Degree};
use toric_harrison::{Error, Field, FieldSpec, PrimeField, Rationals};

use input::ConeInput;
use report::*;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn geometry(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        CliError { code: 4, message: message.into() }
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        CliError { code: 5, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let code = match e {
            Error::DimensionMismatch { .. } | Error::NotPrimitive { .. } | Error::InvalidModulus(_) => 2,
            Error::NoRays | Error::ZeroRay(_) | Error::DuplicateRay(..) | Error::RedundantRay(_) | Error::NotPointed => 3,
            Error::CrossCheck(_) => 4,
            Error::NotFullDimensional
            | Error::LevelTooLow(_)
            | Error::LevelExceeded { .. }
            | Error::Hypothesis(_)
            | Error::FieldNotSupported
            | Error::IncompatiblePath(_)
            | Error::NotMonoidLike(_) => 5,
            _ => 1,
        };
        CliError { code, message }
    }
}

#[derive(Parser)]
#[command(name = "toric-t", version, about = "Cotangent cohomology Tⁿ(−R) of affine toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Cone description: {"rank": n, "rays": [[...], ...], "field": "Q" | {"mod": p}}
    file: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Replace non-primitive rays by their primitive generators
    #[arg(long)]
    primitivize: bool,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Rays, dual cone, faces, Hilbert basis and classification
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions of Tⁿ(−R) for one degree or a box of degrees
    T {
        #[command(flatten)]
        common: Common,
        /// Single degree, e.g. 2,0
        #[arg(long, allow_hyphen_values = true, conflicts_with = "bounds", required_unless_present = "bounds")]
        degree: Option<String>,
        /// Radius, or lo:hi per coordinate, e.g. -1:3,0:2
        #[arg(long = "box", id = "bounds", allow_hyphen_values = true)]
        bounds: Option<String>,
        /// Cohomology degrees, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2], conflicts_with = "all_n")]
        n: Vec<usize>,
        /// Leave out zero entries and degrees without nonzero entries
        #[arg(long)]
        nonzero: bool,
        /// Every n up to the configured Harrison level (isolated singularities only)
        #[arg(long)]
        all_n: bool,
        /// Run every applicable path and compare
        #[arg(long)]
        verify: bool,
        /// Include cocycle representatives
        #[arg(long)]
        emit_basis: bool,
        /// Highest Harrison level used for n > 2
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
        /// Worker threads for degree scans (0: one per core)
        #[arg(long, env = "TORIC_T_WORKERS", default_value_t = 0)]
        workers: usize,
    },
    /// Harrison cohomology HA^q of the diamond of a degree
    Harrison {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Highest q
        #[arg(long, default_value_t = 3)]
        qmax: usize,
    },
}

fn parse_degree(s: &str, rank: usize) -> Result<Vec<i64>, CliError> {
    let r = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::parse(format!("bad degree {s:?}: {e}")))?;
    if r.len() != rank {
        return Err(CliError::parse(format!("degree {s:?} has {} coordinates, expected {rank}", r.len())));
    }
    Ok(r)
}

fn parse_box(s: &str, rank: usize) -> Result<Vec<(i64, i64)>, CliError> {
    let bad = |why: String| CliError::parse(format!("bad box {s:?}: {why}"));
    if !s.contains(':') {
        let r: i64 = s.trim().parse().map_err(|e| bad(format!("{e}")))?;
        if r < 0 {
            return Err(bad("negative radius".into()));
        }
        return Ok(vec![(-r, r); rank]);
    }
    let bounds = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part.split_once(':').ok_or_else(|| bad(format!("{part:?} is not lo:hi")))?;
            let lo: i64 = lo.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let hi: i64 = hi.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if lo > hi {
                return Err(bad(format!("{lo} > {hi}")));
            }
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if bounds.len() != rank {
        return Err(bad(format!("{} ranges for rank {rank}", bounds.len())));
    }
    Ok(bounds)
}

fn face_counts(cone: &Cone) -> Vec<usize> {
    (0..=cone.dim()).map(|p| cone.faces_of_dim(p).len()).collect()
}

fn elapsed(start: Instant, on: bool) -> Option<Timing> {
    on.then(|| Timing { total_ms: start.elapsed().as_millis() as u64 })
}

fn info(input: &ConeInput, cone: &Cone, field: FieldSpec) -> Result<InfoDocument, CliError> {
    let faces = cone
        .faces()
        .iter()
        .enumerate()
        .map(|(k, f)| FaceSummary {
            dim: f.dim(),
            rays: f.rays().to_vec(),
            labels: input.labels.as_ref().map(|l| f.rays().iter().map(|&i| l[i].clone()).collect()),
            smooth: cone.is_smooth(k),
        })
        .collect();
    let (hb, bound) = if cone.is_full_dimensional() {
        let calc = Calculator::new(Rationals, cone.clone())?;
        (Some(calc.hilbert_basis().elements().to_vec()), Some(calc.suggested_pairing_bound()))
    } else {
        (None, None)
    };
    Ok(InfoDocument {
        command: "info".into(),
        input: input.clone(),
        field: field.to_string(),
        cone: ConeSummary {
            rank: cone.rank(),
            dim: cone.dim(),
            full_dimensional: cone.is_full_dimensional(),
            rays: cone.rays().to_vec(),
            dual_rays: cone.facet_normals().to_vec(),
            perp_basis: cone.perp_basis().to_vec(),
        },
        face_counts: face_counts(cone),
        faces,
        hilbert_basis: hb,
        classification: Classification {
            smooth: cone.is_smooth_cone(),
            isolated: cone.is_isolated(),
            gorenstein_codim2: cone.is_gorenstein_codim2(),
            gorenstein_degree: cone.gorenstein_degree(),
        },
        suggested_pairing_bound: bound,
    })
}

struct TRequest {
    degrees: Vec<Vec<i64>>,
    scan: bool,
    ns: Option<Vec<usize>>,
    options: Options,
    workers: usize,
    nonzero: bool,
}

fn entry_report(e: &toric_harrison::cotangent::Entry) -> EntryReport {
    EntryReport {
        n: e.n,
        dim: e.dim,
        path: e.path.name().into(),
        status: e.status.name().into(),
        checks: e.checks.iter().map(|(p, d)| PathDim { path: p.name().into(), dim: *d }).collect(),
        basis: e.basis.clone(),
    }
}

fn cohomology<F: Field>(
    field: F,
    cone: Cone,
    input: &ConeInput,
    req: TRequest,
) -> Result<TDocument, CliError> {
    if !cone.is_full_dimensional() {
        return Err(CliError::hypothesis("Tⁿ needs a full-dimensional cone"));
    }
    let field_name = field_name(&field);
    let calc = Calculator::new(field, cone)?.with_options(req.options);
    let ns = match req.ns {
        Some(mut ns) => {
            ns.sort_unstable();
            ns.dedup();
            ns
        }
        None => {
            if !calc.cone().is_isolated() {
                return Err(CliError::hypothesis("--all-n needs an isolated singularity"));
            }
            (0..=calc.max_isolated_n()).collect()
        }
    };
    if ns.iter().any(|&n| n > 2) && !calc.cone().is_isolated() {
        return Err(CliError::hypothesis("Tⁿ for n > 2 is only available for isolated singularities"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(req.workers)
        .build()
        .map_err(|e| CliError { code: 1, message: e.to_string() })?;
    let results: Vec<Result<Option<CohomologyReport>, Error>> = pool.install(|| {
        req.degrees
            .par_iter()
            .map(|r| {
                if req.scan && calc.skip_in_scan(r, &ns)? {
                    return Ok(None);
                }
                calc.t(r, &ns).map(Some)
            })
            .collect()
    });
    let mut degrees = Vec::new();
    let mut skipped = 0;
    let mut totals: Vec<Total> = ns.iter().map(|&n| Total { n, dim: 0 }).collect();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for res in results {
        let Some(rep) = res? else {
            skipped += 1;
            continue;
        };
        for e in &rep.entries {
            if let Some(t) = totals.iter_mut().find(|t| t.n == e.n) {
                t.dim += e.dim;
            }
            match e.status {
                CheckStatus::Unchecked => {}
                CheckStatus::Agreed => compared += 1,
                CheckStatus::Mismatch => {
                    compared += 1;
                    let mut dims = vec![PathDim { path: e.path.name().into(), dim: e.dim }];
                    dims.extend(e.checks.iter().map(|(p, d)| PathDim { path: p.name().into(), dim: *d }));
                    mismatches.push(Mismatch { degree: rep.degree.clone(), n: e.n, dims });
                }
            }
        }
        let entries: Vec<EntryReport> =
            rep.entries.iter().filter(|e| !req.nonzero || e.dim > 0).map(entry_report).collect();
        if !entries.is_empty() {
            degrees.push(DegreeReport { degree: rep.degree.clone(), entries });
        }
    }
    Ok(TDocument {
        command: "t".into(),
        input: input.clone(),
        field: field_name,
        options: TOptions { n: ns, verify: req.options.verify, emit_basis: req.options.emit_basis, nonzero: req.nonzero, n_max: req.options.n_max },
        hilbert_basis: calc.hilbert_basis().elements().to_vec(),
        face_counts: face_counts(calc.cone()),
        degrees,
        skipped_degrees: skipped,
        totals,
        cross_check: CrossCheck { compared, mismatches },
        suggested_pairing_bound: calc.suggested_pairing_bound(),
        timing: None,
    })
}

fn harrison<F: Field>(
    field: F,
    cone: Cone,
    input: &ConeInput,
    r: Vec<i64>,
    qmax: usize,
) -> Result<HarrisonDocument, CliError> {
    if !cone.is_full_dimensional() {
        return Err(CliError::hypothesis("the diamond needs a full-dimensional cone"));
    }
    if qmax == 0 {
        return Err(CliError::parse("--qmax must be at least 1"));
    }
    let degree = Degree::new(&cone, r.clone())?;
    let points = diamond(&cone, &degree)?;
    let complex = ShuffleComplex::new(&field, &points, qmax + 1)?;
    let cohomology = (1..=qmax)
        .map(|q| Ok(LevelDim { q, dim: complex.cohomology_dim(q)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(HarrisonDocument {
        command: "harrison".into(),
        input: input.clone(),
        field: field_name(&field),
        hilbert_basis: hilbert_basis(&cone)?.elements().to_vec(),
        face_counts: face_counts(&cone),
        degree: r,
        diamond: complex.points().to_vec(),
        cohomology,
        timing: None,
    })
}

fn field_name<F: Field>(field: &F) -> String {
    match field.characteristic() {
        0 => FieldSpec::Rationals,
        p => FieldSpec::Prime(p),
    }
    .to_string()
}

/// Output text and whether a cross-check failed.
fn render<T: Serialize>(doc: &T, text: impl FnOnce(&T) -> String, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(doc),
    }
}

fn load(common: &Common) -> Result<(ConeInput, Cone, FieldSpec), CliError> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", common.file.display())))?;
    let input = ConeInput::parse(&text)?;
    let field = input.field()?;
    let cone = input.cone(common.primitivize)?;
    Ok((input, cone, field))
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let start = Instant::now();
    match cli.command {
        Command::Info { common } => {
            let (input, cone, field) = load(&common)?;
            let doc = info(&input, &cone, field)?;
            Ok((render(&doc, InfoDocument::to_text, common.format), false))
        }
        Command::T { common, degree, bounds, n, nonzero, all_n, verify, emit_basis, nmax, workers } => {
            let (input, cone, field) = load(&common)?;
            let (degrees, scan) = match (degree, bounds) {
                (Some(d), _) => (vec![parse_degree(&d, cone.rank())?], false),
                (None, Some(b)) => (toric_harrison::cotangent::box_degrees(&parse_box(&b, cone.rank())?), true),
                (None, None) => return Err(CliError::parse("give --degree or --box")),
            };
            if nmax < 2 {
                return Err(CliError::parse("--nmax must be at least 2"));
            }
            let req = TRequest {
                degrees,
                scan,
                ns: (!all_n).then_some(n),
                options: Options { verify, emit_basis, n_max: nmax },
                workers,
                nonzero,
            };
            let mut doc = match field {
                FieldSpec::Rationals => cohomology(Rationals, cone, &input, req)?,
                FieldSpec::Prime(p) => cohomology(PrimeField::new(p)?, cone, &input, req)?,
            };
            doc.timing = elapsed(start, common.timing);
            let failed = !doc.cross_check.mismatches.is_empty();
            Ok((render(&doc, TDocument::to_text, common.format), failed))
        }
        Command::Harrison { common, degree, qmax } => {
            let (input, cone, field) = load(&common)?;
            let r = parse_degree(&degree, cone.rank())?;
            let mut doc = match field {
                FieldSpec::Rationals => harrison(Rationals, cone, &input, r, qmax)?,
                FieldSpec::Prime(p) => harrison(PrimeField::new(p)?, cone, &input, r, qmax)?,
            };
            doc.timing = elapsed(start, common.timing);
            Ok((render(&doc, HarrisonDocument::to_text, common.format), false))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, failed)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            if failed {
                eprintln!("error: {}", CliError::verification("paths disagree, see cross_check").message);
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
