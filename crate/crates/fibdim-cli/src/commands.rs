//! Subcommand implementations and the mapping from failures to process
//! exit codes.
//!
//! Every failure is classified into one of four kinds — parse, shape,
//! not-stabilized, internal — rendered as a single machine-parsable line
//! on stderr, and turned into the documented exit status (2, 3, 4, 5).
//! Hilbert-based commands share one degree-cap policy: the cap is
//! `--max-degree` when given, else the library default, with one retry at
//! twice the cap when the difference table has not stabilized.

use crate::cache::Cache;
use crate::fmod::{self, ModuleSpec};
use crate::report::{
    content_digest, point_texts, to_json, AxiomEcho, FdReport, HilbertReport, InputEcho,
    KernelEcho, LatticeReport, ModelReport, SamuelReport, WitnessCmdReport,
};
use fibdim::fiber::{fiber_dim_generic, find_maximal_point, FdMethod};
use fibdim::graded::{GradedSubmodule, HilbertTable, Submodule, DEFAULT_CAP_SLACK};
use fibdim::lattice::{lattice_check, witness_report};
use fibdim::matrix::{rank_generic, Matrix};
use fibdim::models::{graded_axiom_check, GradedModelSpace, WeightSequence};
use fibdim::multiplicity::{quotient_table_from_dims, samuel_from_dims};
use fibdim::poly::PolyVec;
use fibdim::Error;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Failure classified by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: unreadable or malformed input, bad flag values, unknown
    /// presets, invalid weights.
    Parse(String),
    /// Exit 3: mismatched shapes, or inhomogeneous input where a graded
    /// computation is required.
    Shape(String),
    /// Exit 4: a difference table did not stabilize below the cap even
    /// after the doubling retry, or a cap is below a precondition.
    NotStabilized(String),
    /// Exit 5: an identity that holds by construction failed — a bug,
    /// never bad input.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Shape(_) => 3,
            CliError::NotStabilized(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    /// One machine-parsable line: `error[<kind>]: <message>`.
    pub fn render(&self) -> String {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m),
            CliError::Shape(m) => ("shape", m),
            CliError::NotStabilized(m) => ("not-stabilized", m),
            CliError::Internal(m) => ("internal", m),
        };
        let one_line = message.split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error[{kind}]: {one_line}")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let text = e.to_string();
        match e {
            Error::ShapeMismatch(_) | Error::Inhomogeneous(_) => CliError::Shape(text),
            Error::CapTooSmall(_) | Error::NotStabilized(_) => CliError::NotStabilized(text),
            Error::InvalidWeights(_) | Error::UnknownPreset(_) => CliError::Parse(text),
            Error::Inconsistent(_)
            | Error::PointNotMaximal(_)
            | Error::SearchExhausted(_)
            | Error::IdentityViolated(_) => CliError::Internal(text),
        }
    }
}

/// One parsed input file plus the canonical text its digests key on.
struct Loaded {
    spec: ModuleSpec,
    path: String,
    /// Canonical serialization without the label: the mathematical
    /// content, shared by the digest and the cache key.
    content: String,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let spec = fmod::parse(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let content = fmod::serialize(&spec.module, None);
    Ok(Loaded { spec, path: path.display().to_string(), content })
}

impl Loaded {
    fn echo(&self) -> InputEcho {
        let m = &self.spec.module;
        InputEcho {
            path: self.path.clone(),
            digest: content_digest(&self.content),
            label: self.spec.label.clone(),
            n: m.vars(),
            rank: m.ambient_rank(),
            generators: m.generators().len(),
            homogeneous: m.is_homogeneous(),
        }
    }
}

fn require_homogeneous(loaded: &Loaded, command: &str) -> Result<(), CliError> {
    if loaded.spec.module.is_homogeneous() {
        return Ok(());
    }
    Err(CliError::Shape(format!(
        "inhomogeneous input: '{command}' requires homogeneous generators, \
         but {} has a mixed-degree generator",
        loaded.path
    )))
}

fn require_matching_shapes(a: &Loaded, b: &Loaded) -> Result<(), CliError> {
    let (ma, mb) = (&a.spec.module, &b.spec.module);
    if ma.vars() != mb.vars() || ma.ambient_rank() != mb.ambient_rank() {
        return Err(CliError::Shape(format!(
            "shape mismatch: {} has (n = {}, N = {}) but {} has (n = {}, N = {})",
            a.path,
            ma.vars(),
            ma.ambient_rank(),
            b.path,
            mb.vars(),
            mb.ambient_rank()
        )));
    }
    Ok(())
}

/// The library's default degree cap for a module.
fn default_cap(m: &Submodule) -> usize {
    m.max_generator_degree() + m.vars() + DEFAULT_CAP_SLACK
}

/// Component dimensions at exactly this cap, through the cache when one
/// is open.
fn dims_at(
    module: &Submodule,
    cap: usize,
    cache: Option<&Cache>,
    content: &str,
) -> Result<Vec<usize>, CliError> {
    let key = Cache::key(content, cap);
    if let Some(c) = cache {
        if let Some(dims) = c.load(&key) {
            if dims.len() == cap + 1 {
                return Ok(dims);
            }
        }
    }
    let graded = GradedSubmodule::with_cap(module.clone(), cap)?;
    let dims = graded.hilbert_table(cap).map_err(|e| match e {
        Error::CapTooSmall(m) => {
            CliError::NotStabilized(format!("cap too small: {m}; raise --max-degree"))
        }
        other => other.into(),
    })?;
    let dims = dims.dims().to_vec();
    if let Some(c) = cache {
        c.store(&key, &dims);
    }
    Ok(dims)
}

/// Component dimensions with a stabilized difference table, retrying once
/// at twice the cap.  Returns the dimensions and the cap that succeeded.
fn stabilized_dims(
    module: &Submodule,
    cap0: usize,
    cache: Option<&Cache>,
    content: &str,
) -> Result<(Vec<usize>, usize), CliError> {
    for cap in [cap0, cap0.saturating_mul(2)] {
        let dims = dims_at(module, cap, cache, content)?;
        if HilbertTable::analyze(dims.clone(), module.vars(), module.vars()).stabilized() {
            return Ok((dims, cap));
        }
    }
    Err(CliError::NotStabilized(format!(
        "difference table did not stabilize below degree {} (retried once at twice the cap); \
         raise --max-degree",
        cap0.saturating_mul(2)
    )))
}

fn leading(table: &HilbertTable) -> Result<usize, CliError> {
    let value = table.leading_value()?;
    Ok(usize::try_from(value).expect("dimension tables have nonnegative leading values"))
}

pub fn cmd_fd(
    file: &Path,
    seed: u64,
    max_degree: Option<usize>,
    translate: Option<&str>,
    cache: Option<&Cache>,
) -> Result<FdReport, CliError> {
    let loaded = load(file)?;
    let mut module = loaded.spec.module.clone();

    let mut translate_echo = None;
    if let Some(text) = translate {
        let offset = fmod::parse_rat_vector(text)
            .map_err(|m| CliError::Parse(format!("--translate: {m}")))?;
        module = module.translate(&offset)?;
        translate_echo = Some(point_texts(&offset));
    }

    let fd = fiber_dim_generic(&module);
    let mut methods = BTreeMap::new();
    methods.insert(FdMethod::GenericRank.to_string(), fd);

    let mut warnings = Vec::new();
    let mut cap_used = None;
    if module.is_homogeneous() {
        // The analyzed module may differ from the file (translation), so
        // key the cache on its own canonical form.
        let content = fmod::serialize(&module, None);
        let cap0 = max_degree.unwrap_or_else(|| default_cap(&module));
        let (dims, cap) = stabilized_dims(&module, cap0, cache, &content)?;
        let n = module.vars();
        let component_table = HilbertTable::analyze(dims.clone(), n, n);
        methods.insert(FdMethod::HilbertLeading.to_string(), leading(&component_table)?);
        methods.insert(
            FdMethod::LimitFormula.to_string(),
            leading(&quotient_table_from_dims(&dims, n))?,
        );
        cap_used = Some(cap);
    } else {
        let reason = if translate_echo.is_some() && loaded.spec.module.is_homogeneous() {
            "translation made the module inhomogeneous"
        } else {
            "input is inhomogeneous"
        };
        warnings.push(format!("{reason}; Hilbert-based methods skipped (generic rank only)"));
    }

    let witness_point = find_maximal_point(&module, seed)?;
    let agree = methods.values().all(|&v| v == fd);

    Ok(FdReport {
        command: "fd",
        input: loaded.echo(),
        seed,
        translate: translate_echo,
        cap: cap_used,
        fd,
        methods,
        agree,
        witness_point: point_texts(&witness_point),
        warnings,
    })
}

pub fn cmd_hilbert(
    file: &Path,
    max_degree: Option<usize>,
    cache: Option<&Cache>,
) -> Result<HilbertReport, CliError> {
    let loaded = load(file)?;
    require_homogeneous(&loaded, "hilbert")?;
    let module = &loaded.spec.module;

    let cap0 = max_degree.unwrap_or_else(|| default_cap(module));
    let (dims, cap) = stabilized_dims(module, cap0, cache, &loaded.content)?;
    let table = HilbertTable::analyze(dims.clone(), module.vars(), module.vars());
    let leading_value = leading(&table)?;

    Ok(HilbertReport {
        command: "hilbert",
        input: loaded.echo(),
        cap,
        dims,
        partial_sums: table.partial_sums().to_vec(),
        stabilization_degree: table
            .stabilization_degree()
            .expect("stabilized_dims guarantees a stabilized table"),
        leading_value,
    })
}

pub fn cmd_samuel(
    file: &Path,
    max_degree: Option<usize>,
    cache: Option<&Cache>,
) -> Result<SamuelReport, CliError> {
    let loaded = load(file)?;
    require_homogeneous(&loaded, "samuel")?;
    let module = &loaded.spec.module;

    let cap0 = max_degree.unwrap_or_else(|| default_cap(module));
    let (dims, cap) = stabilized_dims(module, cap0, cache, &loaded.content)?;
    let report = samuel_from_dims(&dims, module.vars(), module.ambient_rank()).map_err(
        |e| match e {
            Error::NotStabilized(m) => {
                CliError::NotStabilized(format!("not stabilized: {m}; raise --max-degree"))
            }
            other => other.into(),
        },
    )?;

    Ok(SamuelReport {
        command: "samuel",
        input: loaded.echo(),
        cap,
        c_t: report.c_t,
        c_s: report.c_s,
        fd_limit: report.fd_limit,
        stabilization_degree: report.stabilization_degree,
        quotient_dims: report.table.dims().to_vec(),
    })
}

pub fn cmd_lattice(
    file1: &Path,
    file2: &Path,
    seed: u64,
    max_degree: Option<usize>,
    include_witnesses: bool,
) -> Result<LatticeReport, CliError> {
    let l1 = load(file1)?;
    let l2 = load(file2)?;
    require_matching_shapes(&l1, &l2)?;
    require_homogeneous(&l1, "lattice")?;
    require_homogeneous(&l2, "lattice")?;

    let m1 = &l1.spec.module;
    let m2 = &l2.spec.module;
    let cap0 = max_degree.unwrap_or_else(|| {
        m1.max_generator_degree() + m2.max_generator_degree() + m1.vars() + DEFAULT_CAP_SLACK
    });
    let g1 = GradedSubmodule::with_cap(m1.clone(), cap0)?;
    let g2 = GradedSubmodule::with_cap(m2.clone(), cap0)?;
    let report = lattice_check(&g1, &g2, Some(cap0), seed)?;

    let n = m1.vars();
    Ok(LatticeReport {
        command: "lattice",
        inputs: vec![l1.echo(), l2.echo()],
        seed,
        cap: cap0,
        fd1: report.fd1,
        fd2: report.fd2,
        fd_sum: report.fd_sum,
        fd_intersection: report.fd_cap,
        d_prime: report.d_prime,
        equality_holds: report.equality_holds,
        point: point_texts(&report.point),
        witness_count: report.witnesses.len(),
        witnesses: include_witnesses
            .then(|| report.witnesses.iter().map(|w| fmod::polyvec_texts(w, n)).collect()),
        witnesses_human: if include_witnesses {
            report.witnesses.iter().map(polyvec_human).collect()
        } else {
            Vec::new()
        },
    })
}

pub fn cmd_witness(file1: &Path, file2: &Path, seed: u64) -> Result<WitnessCmdReport, CliError> {
    let l1 = load(file1)?;
    let l2 = load(file2)?;
    require_matching_shapes(&l1, &l2)?;

    let m1 = &l1.spec.module;
    let m2 = &l2.spec.module;
    let report = witness_report(m1, m2, seed)?;

    let witness_rank = if report.witnesses.is_empty() {
        0
    } else {
        let rows = report.witnesses.iter().map(|w| w.entries().to_vec()).collect();
        rank_generic(&Matrix::from_rows(rows).expect("witnesses share the ambient rank"))
    };
    if witness_rank != report.d_prime {
        return Err(CliError::Internal(format!(
            "identity violated: witness stack has generic rank {witness_rank}, expected d' = {}",
            report.d_prime
        )));
    }

    let n = m1.vars();
    Ok(WitnessCmdReport {
        command: "witness",
        inputs: vec![l1.echo(), l2.echo()],
        seed,
        fd1: report.fd1,
        fd2: report.fd2,
        fd_sum: report.fd_sum,
        d_prime: report.d_prime,
        witness_rank,
        point: point_texts(&report.point),
        witnesses: report.witnesses.iter().map(|w| fmod::polyvec_texts(w, n)).collect(),
        witnesses_human: report.witnesses.iter().map(polyvec_human).collect(),
    })
}

pub fn cmd_model(
    preset: &str,
    file: &Path,
    max_degree: Option<usize>,
    explicit_weights: Option<&str>,
    kernel_at: Option<&str>,
) -> Result<ModelReport, CliError> {
    let loaded = load(file)?;
    require_homogeneous(&loaded, "model")?;
    let module = &loaded.spec.module;
    let n = module.vars();
    let rank = module.ambient_rank();

    let weights = if preset == "explicit" {
        let text = explicit_weights.ok_or_else(|| {
            CliError::Parse("preset 'explicit' needs --weights with a rational prefix".into())
        })?;
        let prefix = fmod::parse_rat_vector(text)
            .map_err(|m| CliError::Parse(format!("--weights: {m}")))?;
        WeightSequence::explicit(prefix)?
    } else {
        if explicit_weights.is_some() {
            return Err(CliError::Parse(
                "--weights only applies to the 'explicit' preset".into(),
            ));
        }
        WeightSequence::preset(preset, n)?
    };

    let kernel_points = kernel_at.map(parse_kernel_points).transpose()?;

    // An explicit prefix bounds the usable cap; presets have closed forms
    // for every index, so probing never cuts them short.
    let requested = max_degree.unwrap_or_else(|| default_cap(module));
    let available = available_cap(&weights, requested.saturating_mul(2));
    let cap0 = match max_degree {
        Some(c) if c > available => {
            return Err(CliError::Parse(format!(
                "--max-degree {c} exceeds the explicit weight prefix (last index {available})"
            )))
        }
        Some(c) => c,
        None => requested.min(available),
    };
    let mut caps = vec![cap0];
    let doubled = cap0.saturating_mul(2).min(available);
    if doubled > cap0 {
        caps.push(doubled);
    }
    for cap in caps {
        let graded = GradedSubmodule::with_cap(module.clone(), cap)?;
        let space = GradedModelSpace::new(n, rank, weights.clone(), cap)?;
        let projections: Vec<usize> = (0..=cap + 1)
            .map(|k| space.projection_dims(&graded, k))
            .collect::<Result<_, _>>()?;
        let analyzed = HilbertTable::analyze(projections.clone(), n, n + 1);
        if !analyzed.stabilized() {
            continue;
        }
        let fd_projection = leading(&analyzed)?;

        let axioms = graded_axiom_check(&space, cap);
        let weight_prefix: Vec<String> = (0..=cap.min(8))
            .map(|k| space.weights().weight(k).map(|a| a.to_string()))
            .collect::<Result<_, _>>()?;
        let kernel = match &kernel_points {
            Some((z, w)) => Some(KernelEcho {
                z: point_texts(z),
                w: point_texts(w),
                truncation: cap,
                value: space.kernel_eval(z, w, cap)?.to_string(),
            }),
            None => None,
        };

        return Ok(ModelReport {
            command: "model",
            preset: space.weights().name().to_string(),
            input: loaded.echo(),
            cap,
            weight_prefix,
            projection_dims: projections,
            fd_projection,
            axioms: AxiomEcho {
                degree_shift: axioms.degree_shift,
                spanning: axioms.spanning,
                closed_range_checked: axioms.closed_range_checked,
                cap: axioms.cap,
            },
            kernel,
        });
    }
    let remedy = if preset == "explicit" {
        "supply a longer --weights prefix"
    } else {
        "raise --max-degree"
    };
    Err(CliError::NotStabilized(format!(
        "projection table did not stabilize below degree {doubled}; {remedy}"
    )))
}

/// Largest cap (at most `limit`) for which every weight is available.
fn available_cap(weights: &WeightSequence, limit: usize) -> usize {
    let mut cap = 0;
    while cap < limit && weights.weight(cap + 1).is_ok() {
        cap += 1;
    }
    cap
}

fn parse_kernel_points(text: &str) -> Result<(Vec<fibdim::Rat>, Vec<fibdim::Rat>), CliError> {
    let Some((z_text, w_text)) = text.split_once(';') else {
        return Err(CliError::Parse(
            "--kernel-at needs two points separated by ';' (example: \"1/2,0;1,1\")".into(),
        ));
    };
    let z = fmod::parse_rat_vector(z_text)
        .map_err(|m| CliError::Parse(format!("--kernel-at z: {m}")))?;
    let w = fmod::parse_rat_vector(w_text)
        .map_err(|m| CliError::Parse(format!("--kernel-at w: {m}")))?;
    Ok((z, w))
}

fn polyvec_human(v: &PolyVec) -> String {
    let mut s = String::from("(");
    for (i, p) in v.entries().iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{p}");
    }
    s.push(')');
    s
}

/// Render a finished report: JSON (machine surface, no timing) or the
/// human form.
pub fn render<T: serde::Serialize>(json: bool, report: &T, human: String) -> String {
    if json {
        to_json(report)
    } else {
        human
    }
}
