//! Fiber dimensions: symbolic generic rank, pointwise evaluation, and the
//! deterministic search for maximal points.
//!
//! The fiber of a submodule M ⊆ ℚ[z]^N at λ is M(λ) = {f(λ) : f ∈ M} =
//! span{g_i(λ)} ⊆ ℚ^N, so its dimension is the rank of the evaluated
//! generator matrix.  The fiber dimension fd(M) = max_λ dim M(λ) equals
//! the symbolic rank of the generator matrix over the rational function
//! field: the set of points attaining it is the complement of a proper
//! algebraic set, hence dense, and it contains rational points of small
//! height.  Sampling therefore escalates coordinate heights 1, 10, 100, …
//! so that early witnesses have small coordinates; the stream is a seeded
//! ChaCha generator and completely reproducible.
//!
//! Inhomogeneous submodules are accepted throughout this module — only
//! the Hilbert-based routes of [`crate::graded`] and
//! [`crate::multiplicity`] require a grading.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{GradedSubmodule, Submodule};
use crate::matrix::{rank_exact, rank_generic};
use crate::multiplicity;
use crate::{Int, Rat};

/// Default number of points tried before a maximal-point search gives up.
pub const DEFAULT_SAMPLE_BUDGET: usize = 1000;

/// Samples per height block; the height multiplies by 10 between blocks.
const SAMPLES_PER_HEIGHT: usize = 50;

/// Largest height exponent (10^12) used by the escalation schedule.
const MAX_HEIGHT_EXP: u32 = 12;

/// Deterministic stream of rational points with escalating height.
pub struct PointSampler {
    rng: ChaCha8Rng,
    n: usize,
    count: usize,
}

impl PointSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), n, count: 0 }
    }

    /// Next point; coordinates are p/q with |p| ≤ h and 1 ≤ q ≤ h where
    /// h = 10^(sample_index / 50), capped at 10^12.
    pub fn next_point(&mut self) -> Vec<Rat> {
        let exp = ((self.count / SAMPLES_PER_HEIGHT) as u32).min(MAX_HEIGHT_EXP);
        self.count += 1;
        let h = 10u64.pow(exp);
        (0..self.n)
            .map(|_| {
                let numer = (self.rng.next_u64() % (2 * h + 1)) as i128 - h as i128;
                let denom = 1 + self.rng.next_u64() % h;
                Rat::new(Int::from(numer), Int::from(denom))
            })
            .collect()
    }
}

/// fd(M): symbolic rank of the generator matrix over the function field.
pub fn fiber_dim_generic(m: &Submodule) -> usize {
    rank_generic(&m.generator_matrix())
}

/// dim M(λ): rank of the generators evaluated at the point.
pub fn fiber_dim_at(m: &Submodule, point: &[Rat]) -> Result<usize> {
    Ok(rank_exact(&m.eval_rows(point)?))
}

/// Codimension of the fiber inside ℚ^N.
pub fn cokernel_dim_at(m: &Submodule, point: &[Rat]) -> Result<usize> {
    Ok(m.ambient_rank() - fiber_dim_at(m, point)?)
}

/// First sampled point where M attains its generic fiber dimension.
pub fn find_maximal_point(m: &Submodule, seed: u64) -> Result<Vec<Rat>> {
    common_maximal_point_with_budget(&[m], seed, DEFAULT_SAMPLE_BUDGET)
}

/// First sampled point where every listed module attains its generic
/// fiber dimension simultaneously.  The modules must share the variable
/// count n.
pub fn common_maximal_point(modules: &[&Submodule], seed: u64) -> Result<Vec<Rat>> {
    common_maximal_point_with_budget(modules, seed, DEFAULT_SAMPLE_BUDGET)
}

/// Same with an explicit sample budget.
pub fn common_maximal_point_with_budget(
    modules: &[&Submodule],
    seed: u64,
    budget: usize,
) -> Result<Vec<Rat>> {
    let Some(first) = modules.first() else {
        return Err(Error::ShapeMismatch("no modules to sample for".into()));
    };
    let n = first.vars();
    if modules.iter().any(|m| m.vars() != n) {
        return Err(Error::ShapeMismatch(
            "modules must share the variable count for a common point".into(),
        ));
    }
    let targets: Vec<usize> = modules.iter().map(|m| fiber_dim_generic(m)).collect();
    let mut sampler = PointSampler::new(n, seed);
    for _ in 0..budget {
        let point = sampler.next_point();
        let hit = modules
            .iter()
            .zip(&targets)
            .all(|(m, &t)| fiber_dim_at(m, &point).map_or(false, |d| d == t));
        if hit {
            return Ok(point);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no common maximal point among {budget} samples (seed {seed}); \
         this indicates a bug, since maximal points are generic"
    )))
}

/// Which route produced a fiber-dimension value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FdMethod {
    /// Symbolic rank over the rational function field.
    GenericRank,
    /// Stabilized (n−1)-th difference of the component dimension table.
    HilbertLeading,
    /// n!-normalized leading term of the quotient codimension table.
    LimitFormula,
}

impl fmt::Display for FdMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FdMethod::GenericRank => write!(f, "generic_rank"),
            FdMethod::HilbertLeading => write!(f, "hilbert_leading"),
            FdMethod::LimitFormula => write!(f, "limit_formula"),
        }
    }
}

/// Fiber dimension report with per-method values and a witness point.
#[derive(Clone, Debug)]
pub struct FiberReport {
    /// The fiber dimension (generic-rank value, cross-checked).
    pub fd: usize,
    /// Value per applicable method; Hilbert-based entries are absent for
    /// inhomogeneous input.
    pub method_values: BTreeMap<FdMethod, usize>,
    /// A sampled point attaining fd.
    pub witness_point: Vec<Rat>,
    /// All computed methods returned the same value.
    pub agree: bool,
}

/// Compute fd by every applicable route and cross-check.
///
/// `cap` overrides the degree cap of the Hilbert-based routes; tables that
/// fail to stabilize retry once with the cap doubled before erroring.
pub fn fiber_report(m: &Submodule, seed: u64, cap: Option<usize>) -> Result<FiberReport> {
    let fd = fiber_dim_generic(m);
    let mut method_values = BTreeMap::new();
    method_values.insert(FdMethod::GenericRank, fd);

    if m.is_homogeneous() {
        let graded = GradedSubmodule::new(m.clone())?;
        let cap = cap.unwrap_or_else(|| graded.cap());
        let table = retry_doubling(cap, |c| {
            let t = graded.hilbert_table(c)?;
            t.leading_value()?;
            Ok(t)
        })?;
        let hilbert = table.leading_value()?;
        method_values.insert(FdMethod::HilbertLeading, usize::try_from(hilbert).unwrap());

        let limit = retry_doubling(cap, |c| multiplicity::fd_by_limit_formula(&graded, c))?;
        method_values.insert(FdMethod::LimitFormula, limit);
    }

    let witness_point = find_maximal_point(m, seed)?;
    let agree = method_values.values().all(|&v| v == fd);
    Ok(FiberReport { fd, method_values, witness_point, agree })
}

/// Run a cap-dependent computation, retrying once with the cap doubled
/// when the table fails to stabilize.
pub fn retry_doubling<T>(cap: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
    match f(cap) {
        Err(Error::NotStabilized(_)) => f(cap * 2),
        other => other,
    }
}
