//! Graded submodules of free polynomial modules and their Hilbert data.
//!
//! A [`Submodule`] is a finitely generated ℚ[z₁,…,zₙ]-submodule of the
//! free module ℚ[z]^N presented by explicit generator vectors; arbitrary
//! generators are accepted here because the evaluation-based fiber
//! operations do not need a grading.  A [`GradedSubmodule`] wraps a
//! submodule whose generators are homogeneous vectors and gives access to
//! the graded components M_j: for each degree, the span of all z^α·g_i of
//! that degree inside the finite-dimensional coordinate space (ℚ[z]^N)_j.
//!
//! Component bases are computed by the sparse integer echelon engine and
//! cached per degree in a write-once map: the computation is deterministic,
//! so racing writers produce identical values and the first insert wins.
//!
//! Stabilization of Hilbert data is detected by a trailing window: an
//! iterated finite difference must be constant on at least n+2 consecutive
//! trailing entries.  The window guards against accidental zeros; a
//! sequence that fails it reports "not stabilized" rather than guessing.

use std::collections::BTreeMap;
use std::ops::Deref;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::matrix::{sparse_rowspace_intersect, Echelon, Matrix, SparseVec};
use crate::poly::{monomial_count, monomial_rank, monomials_of_degree, Monomial, PolyVec};
use crate::{Int, QMatrix, Rat};

/// Extra degrees materialized above the generator degrees by default:
/// n + 2 for the stabilization window plus slack for the window to settle.
pub const DEFAULT_CAP_SLACK: usize = 8;

/// Finitely generated submodule of ℚ[z₁,…,zₙ]^N given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    n: usize,
    rank_free: usize,
    generators: Vec<PolyVec>,
}

impl Submodule {
    /// Validate shapes: n ≥ 1, N ≥ 1, every generator has N entries and
    /// uses only variables z₁,…,zₙ.
    pub fn new(n: usize, rank_free: usize, generators: Vec<PolyVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("need at least one variable".into()));
        }
        if rank_free == 0 {
            return Err(Error::ShapeMismatch("free module rank N must be positive".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != rank_free {
                return Err(Error::ShapeMismatch(format!(
                    "generator {} has {} entries, expected {}",
                    i + 1,
                    g.len(),
                    rank_free
                )));
            }
            if g.min_vars() > n {
                return Err(Error::ShapeMismatch(format!(
                    "generator {} uses variable z{} beyond n = {}",
                    i + 1,
                    g.min_vars(),
                    n
                )));
            }
        }
        Ok(Submodule { n, rank_free, generators })
    }

    /// Number of variables n.
    pub fn vars(&self) -> usize {
        self.n
    }

    /// Rank N of the ambient free module.
    pub fn ambient_rank(&self) -> usize {
        self.rank_free
    }

    pub fn generators(&self) -> &[PolyVec] {
        &self.generators
    }

    /// True when there is no nonzero generator.
    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// All generators homogeneous (the zero vector counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree().is_ok())
    }

    /// Largest generator degree (0 when all generators are zero).
    pub fn max_generator_degree(&self) -> usize {
        self.generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Generator matrix over ℚ[z] with one row per generator (g × N); its
    /// symbolic rank is the fiber dimension.
    pub fn generator_matrix(&self) -> crate::PolyMatrix {
        Matrix::from_rows(self.generators.iter().map(|g| g.entries().to_vec()).collect())
            .expect("validated shapes")
    }

    /// Evaluation of all generators at a point, one row per generator
    /// (g × N); the row space is the fiber M(λ).
    pub fn eval_rows(&self, point: &[Rat]) -> Result<QMatrix> {
        if point.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.n
            )));
        }
        if self.generators.is_empty() {
            return Ok(Matrix::zeros(0, self.rank_free));
        }
        Matrix::from_rows(self.generators.iter().map(|g| g.eval(point)).collect())
    }

    /// Generator indices ordered by (degree, position); zero generators
    /// sort last.  Lift solvers use this order so that solutions sit on
    /// the lowest-degree generators.
    pub fn degree_sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.generators.len()).collect();
        idx.sort_by_key(|&i| (self.generators[i].degree().map_or(usize::MAX, |d| d), i));
        idx
    }

    /// Substitute z ↦ z + offset in every generator.
    pub fn translate(&self, offset: &[Rat]) -> Result<Submodule> {
        if offset.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "shift vector has {} coordinates, expected {}",
                offset.len(),
                self.n
            )));
        }
        Submodule::new(
            self.n,
            self.rank_free,
            self.generators.iter().map(|g| g.substitute_shift(offset)).collect(),
        )
    }
}

/// Sum of two submodules of the same free module: concatenated generators.
pub fn module_sum(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.n != b.n || a.rank_free != b.rank_free {
        return Err(Error::ShapeMismatch(format!(
            "summing modules over (n={}, N={}) and (n={}, N={})",
            a.n, a.rank_free, b.n, b.rank_free
        )));
    }
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    Submodule::new(a.n, a.rank_free, gens)
}

/// Basis of one graded component M_j in flattened coordinates.
///
/// Coordinates: entry k of the vector contributes the block
/// [k·m_j, (k+1)·m_j) where m_j = C(j+n−1, n−1), indexed inside the block
/// by the rank of the monomial among the degree-j monomials in descending
/// lexicographic order.
#[derive(Debug)]
pub struct ComponentBasis {
    degree: usize,
    ambient_dim: usize,
    basis: Echelon,
}

impl ComponentBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension N·C(j+n−1, n−1) of the full graded piece (ℚ[z]^N)_j.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// dim M_j.
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Echelon basis rows (integer, content-free).
    pub fn rows(&self) -> &[SparseVec] {
        self.basis.rows()
    }

    /// Whether a coordinate vector lies in the span.
    pub fn contains(&self, coords: SparseVec) -> bool {
        self.basis.contains(coords)
    }

    /// Basis as a dense rational matrix, rows sorted by leading column.
    pub fn to_matrix(&self) -> QMatrix {
        let mut rows = self.basis.rows().to_vec();
        rows.sort_by_key(|r| r.leading_col());
        if rows.is_empty() {
            return Matrix::zeros(0, self.ambient_dim);
        }
        Matrix::from_rows(rows.iter().map(|r| r.to_rat_row(self.ambient_dim)).collect())
            .expect("uniform width")
    }
}

/// Coordinates of a homogeneous vector of the given degree, flattened as
/// described on [`ComponentBasis`].  Integer input avoids transient
/// rationals in the hot spanning loop.
fn coords_from_int_terms(
    entries: &[Vec<(Monomial, Int)>],
    shift: Option<&Monomial>,
    n: usize,
    degree: usize,
) -> SparseVec {
    let m_count = monomial_count(n, degree);
    let mut pairs = Vec::new();
    for (k, terms) in entries.iter().enumerate() {
        for (m, c) in terms {
            let full = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            debug_assert_eq!(full.degree(), degree);
            pairs.push((k * m_count + monomial_rank(&full, n), c.clone()));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Coordinates of one homogeneous part of a rational polynomial vector.
pub fn component_coords(part: &PolyVec, n: usize, degree: usize) -> Result<SparseVec> {
    let m_count = monomial_count(n, degree);
    let ambient = part.len() * m_count;
    let mut dense = vec![Rat::from_integer(Int::from(0)); ambient];
    for (k, p) in part.entries().iter().enumerate() {
        for (m, c) in p.terms() {
            if m.degree() != degree {
                return Err(Error::ShapeMismatch(format!(
                    "term of degree {} in a degree-{} component",
                    m.degree(),
                    degree
                )));
            }
            if !m.fits_vars(n) {
                return Err(Error::ShapeMismatch(format!(
                    "monomial {m} uses a variable beyond n = {n}"
                )));
            }
            dense[k * m_count + monomial_rank(m, n)] = c.clone();
        }
    }
    Ok(SparseVec::from_rat_row(&dense))
}

/// Homogeneous submodule with cached graded component bases.
#[derive(Debug)]
pub struct GradedSubmodule {
    base: Submodule,
    cap: usize,
    /// Generators with cleared denominators: (degree, integer terms per
    /// entry).  Zero generators are dropped — they span nothing.
    int_generators: Vec<(usize, Vec<Vec<(Monomial, Int)>>)>,
    cache: Mutex<BTreeMap<usize, Arc<ComponentBasis>>>,
}

impl Deref for GradedSubmodule {
    type Target = Submodule;
    fn deref(&self) -> &Submodule {
        &self.base
    }
}

impl GradedSubmodule {
    /// Wrap a submodule with homogeneous generators; the degree cap for
    /// table queries defaults to max generator degree + n + 8.
    pub fn new(base: Submodule) -> Result<Self> {
        let cap = base.max_generator_degree() + base.vars() + DEFAULT_CAP_SLACK;
        Self::with_cap(base, cap)
    }

    /// Same with an explicit cap.
    pub fn with_cap(base: Submodule, cap: usize) -> Result<Self> {
        let mut int_generators = Vec::new();
        for (i, g) in base.generators().iter().enumerate() {
            let degree = g.homogeneous_degree().map_err(|_| {
                Error::Inhomogeneous(format!(
                    "generator {} = {g} is not homogeneous; the graded engine requires \
                     homogeneous generators",
                    i + 1
                ))
            })?;
            let Some(degree) = degree else { continue };
            let entries: Vec<Vec<(Monomial, Int)>> = g
                .entries()
                .iter()
                .map(|p| p.integer_scaled().0)
                .collect();
            int_generators.push((degree, entries));
        }
        Ok(GradedSubmodule {
            base,
            cap,
            int_generators,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// The underlying presentation.
    pub fn base(&self) -> &Submodule {
        &self.base
    }

    /// Degree cap for jet queries.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Basis of the graded component M_j, computed on first use.
    pub fn component_basis(&self, degree: usize) -> Arc<ComponentBasis> {
        if let Some(hit) = self.cache.lock().unwrap().get(&degree) {
            return Arc::clone(hit);
        }
        let computed = Arc::new(self.compute_component(degree));
        let mut cache = self.cache.lock().unwrap();
        // Write-once: a racing thread computed the identical value.
        Arc::clone(cache.entry(degree).or_insert(computed))
    }

    fn compute_component(&self, degree: usize) -> ComponentBasis {
        let n = self.base.vars();
        let ambient_dim = self.base.ambient_rank() * monomial_count(n, degree);
        let mut basis = Echelon::new();
        for (gen_degree, entries) in &self.int_generators {
            if *gen_degree > degree {
                continue;
            }
            let shift_degree = degree - gen_degree;
            if shift_degree == 0 {
                basis.insert(coords_from_int_terms(entries, None, n, degree));
                continue;
            }
            for alpha in monomials_of_degree(n, shift_degree) {
                basis.insert(coords_from_int_terms(entries, Some(&alpha), n, degree));
            }
        }
        ComponentBasis { degree, ambient_dim, basis }
    }

    /// dim M_j.
    pub fn component_dim(&self, degree: usize) -> usize {
        self.component_basis(degree).dim()
    }

    /// Hilbert table of component dimensions for degrees 0..=cap.
    ///
    /// Requires cap ≥ max generator degree + n + 2 so the stabilization
    /// window has room below the cap.
    pub fn hilbert_table(&self, cap: usize) -> Result<HilbertTable> {
        let need = self.base.max_generator_degree() + self.base.vars() + 2;
        if cap < need {
            return Err(Error::CapTooSmall(format!(
                "cap {cap} below max generator degree + n + 2 = {need}"
            )));
        }
        let dims: Vec<usize> = (0..=cap).map(|j| self.component_dim(j)).collect();
        Ok(HilbertTable::analyze(dims, self.base.vars(), self.base.vars()))
    }

    /// dim ⊕_{j≤k} M_j.  Requires k ≤ cap.
    pub fn jet_dimension(&self, k: usize) -> Result<usize> {
        if k > self.cap {
            return Err(Error::CapTooSmall(format!(
                "jet degree {k} above the materialized cap {}",
                self.cap
            )));
        }
        Ok((0..=k).map(|j| self.component_dim(j)).sum())
    }

    /// Whether f lies in the module: every homogeneous part must reduce to
    /// zero against the component basis of its degree.
    pub fn membership(&self, f: &PolyVec) -> Result<bool> {
        if f.len() != self.base.ambient_rank() {
            return Err(Error::ShapeMismatch(format!(
                "vector has {} entries, module lives in rank {}",
                f.len(),
                self.base.ambient_rank()
            )));
        }
        if f.min_vars() > self.base.vars() {
            return Err(Error::ShapeMismatch(format!(
                "vector uses variable z{} beyond n = {}",
                f.min_vars(),
                self.base.vars()
            )));
        }
        for (degree, part) in f.homogeneous_components() {
            let coords = component_coords(&part, self.base.vars(), degree)?;
            if !self.component_basis(degree).contains(coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Degree-wise intersection bases (M₁)_j ∩ (M₂)_j for j = 0..=cap.
///
/// For homogeneous submodules these are exactly the graded components of
/// M₁ ∩ M₂, so their dimension table is the Hilbert function of the
/// intersection module.
pub fn module_intersect_upto(
    a: &GradedSubmodule,
    b: &GradedSubmodule,
    cap: usize,
) -> Result<Vec<ComponentBasis>> {
    if a.vars() != b.vars() || a.ambient_rank() != b.ambient_rank() {
        return Err(Error::ShapeMismatch(format!(
            "intersecting modules over (n={}, N={}) and (n={}, N={})",
            a.vars(),
            a.ambient_rank(),
            b.vars(),
            b.ambient_rank()
        )));
    }
    let mut out = Vec::with_capacity(cap + 1);
    for j in 0..=cap {
        let ba = a.component_basis(j);
        let bb = b.component_basis(j);
        let ambient = ba.ambient_dim();
        let rows = sparse_rowspace_intersect(ba.rows(), bb.rows(), ambient);
        let mut ech = Echelon::new();
        for r in rows {
            ech.insert(r);
        }
        debug_assert_eq!(
            ech.rank(),
            ba.dim() + bb.dim() - {
                let mut sum = Echelon::new();
                for r in ba.rows().iter().chain(bb.rows()) {
                    sum.insert(r.clone());
                }
                sum.rank()
            },
            "intersection dimension must satisfy the Grassmann identity"
        );
        out.push(ComponentBasis { degree: j, ambient_dim: ambient, basis: ech });
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Hilbert tables and finite differences
// ---------------------------------------------------------------------

/// One forward difference: out[k] = seq[k+1] − seq[k].
pub fn forward_difference(seq: &[i64]) -> Vec<i64> {
    seq.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Longest constant suffix of at least `window` entries: (value, start
/// index); `None` when the suffix is shorter than the window.
pub fn trailing_constant(seq: &[i64], window: usize) -> Option<(i64, usize)> {
    let last = *seq.last()?;
    let mut start = seq.len() - 1;
    while start > 0 && seq[start - 1] == last {
        start -= 1;
    }
    (seq.len() - start >= window).then_some((last, start))
}

/// Dimension table with partial sums and iterated finite differences.
///
/// `dims[j]` is the value at degree/index j; `partial_sums[k]` is
/// Σ_{j<k} dims[j]; `diffs[i]` is the i-th forward difference of `dims`.
/// The table is *stabilized* when the `diff_order`-th difference vanishes
/// on a trailing window of length ≥ n+2 (diff_order is n for component
/// dimension tables, n+1 for quotient codimension tables, matching the
/// degree of the eventual polynomial plus one).
#[derive(Clone, Debug)]
pub struct HilbertTable {
    dims: Vec<usize>,
    partial_sums: Vec<usize>,
    diffs: Vec<Vec<i64>>,
    stabilized: bool,
    stabilization_degree: Option<usize>,
    n: usize,
    diff_order: usize,
}

impl HilbertTable {
    /// Analyze a dimension sequence.
    pub fn analyze(dims: Vec<usize>, n: usize, diff_order: usize) -> Self {
        let mut partial_sums = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0usize;
        partial_sums.push(0);
        for &d in &dims {
            acc += d;
            partial_sums.push(acc);
        }
        let mut diffs: Vec<Vec<i64>> = vec![dims.iter().map(|&d| d as i64).collect()];
        for _ in 0..diff_order {
            let next = forward_difference(diffs.last().unwrap());
            diffs.push(next);
        }
        let window = n + 2;
        let tail = trailing_constant(&diffs[diff_order], window);
        let stabilized = matches!(tail, Some((0, _)));
        let stabilization_degree = match tail {
            Some((0, start)) => Some(start),
            _ => None,
        };
        HilbertTable {
            dims,
            partial_sums,
            diffs,
            stabilized,
            stabilization_degree,
            n,
            diff_order,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// partial_sums[k] = Σ_{j<k} dims[j]; one entry longer than dims.
    pub fn partial_sums(&self) -> &[usize] {
        &self.partial_sums
    }

    /// i-th forward difference of dims (i ≤ diff_order).
    pub fn diffs(&self, order: usize) -> &[i64] {
        &self.diffs[order]
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    /// Index from which the (diff_order−1)-th difference is constant.
    pub fn stabilization_degree(&self) -> Option<usize> {
        self.stabilization_degree
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    /// The (diff_order−1)-th difference on its stable tail — the quantity
    /// the table exists to extract (the module rank for component tables,
    /// the n!-normalized limit for quotient tables).  Errors with
    /// `NotStabilized` when the window criterion failed below the cap.
    pub fn leading_value(&self) -> Result<i64> {
        if !self.stabilized {
            return Err(Error::NotStabilized(format!(
                "order-{} difference has no zero trailing window of length {} below cap {}",
                self.diff_order,
                self.n + 2,
                self.dims.len().saturating_sub(1)
            )));
        }
        Ok(*self.diffs[self.diff_order - 1]
            .last()
            .expect("stabilized table has a nonempty leading difference"))
    }

    /// Value of the order-th difference on its trailing constant window
    /// (length ≥ n+2); errors with `NotStabilized` when no such window
    /// exists below the cap.
    pub fn stable_value(&self, order: usize) -> Result<i64> {
        let seq = self.diffs.get(order).ok_or_else(|| {
            Error::NotStabilized(format!("difference order {order} not materialized"))
        })?;
        trailing_constant(seq, self.n + 2)
            .map(|(v, _)| v)
            .ok_or_else(|| {
                Error::NotStabilized(format!(
                    "order-{order} difference has no constant trailing window of length {} \
                     below cap {}",
                    self.n + 2,
                    self.dims.len().saturating_sub(1)
                ))
            })
    }
}
