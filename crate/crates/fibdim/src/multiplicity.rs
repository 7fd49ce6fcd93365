//! Samuel multiplicities of quotient tuples and the limit formula for the
//! fiber dimension.
//!
//! Write X = ℚ[z]^N and let Y ⊆ X be a homogeneous submodule.  For the
//! coordinate multiplication tuple T on X, the ideal powers M_k(T)·X are
//! exactly the vectors all of whose terms have degree ≥ k, so
//!
//!   dim X / M_k            = N·C(k−1+n, n)          (ambient table),
//!   dim (Y + M_k) / M_k    = Σ_{j<k} dim Y_j         (quotient table),
//!   dim X / (Y + M_k)      = the difference           (independent route).
//!
//! All three sequences eventually agree with polynomials in k of degree n;
//! their n!-normalized leading terms — extracted exactly as stabilized
//! n-th finite differences — are the Samuel multiplicity c(T) = N, the
//! fiber dimension fd(Y), and the quotient multiplicity c(S).  The report
//! verifies c(T) = N rather than assuming it, and recomputes c(S) on the
//! independent third route before trusting c(S) = c(T) − fd(Y).

use crate::error::{Error, Result};
use crate::fiber::retry_doubling;
use crate::graded::{GradedSubmodule, HilbertTable};
use crate::poly::binomial;

/// Samuel multiplicity data for the pair Y ⊆ X = ℚ[z]^N.
#[derive(Clone, Debug)]
pub struct MultiplicityReport {
    /// Multiplicity of the ambient coordinate tuple; always N, verified.
    pub c_t: usize,
    /// Multiplicity of the quotient tuple on X/Y.
    pub c_s: usize,
    /// fd(Y) extracted by the limit formula.
    pub fd_limit: usize,
    /// Index from which the n-th difference of the quotient table is
    /// constant.
    pub stabilization_degree: usize,
    /// The quotient codimension table k ↦ dim (Y + M_k)/M_k.
    pub table: HilbertTable,
}

/// Quotient codimension table: entry k is dim (Y + M_k)/M_k = Σ_{j<k}
/// dim Y_j, for k = 0..=cap+1.  Analyzed with difference order n+1 (the
/// entries grow like a degree-n polynomial).
pub fn quotient_codim_table(y: &GradedSubmodule, cap: usize) -> Result<HilbertTable> {
    let t = y.hilbert_table(cap)?;
    Ok(quotient_table_from_dims(t.dims(), y.vars()))
}

/// Same table built from a precomputed component-dimension sequence
/// (entry j = dim Y_j for j = 0..=cap), for callers that obtained the
/// dimensions elsewhere.
pub fn quotient_table_from_dims(dims: &[usize], n: usize) -> HilbertTable {
    let mut sums = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0usize;
    sums.push(0);
    for &d in dims {
        acc += d;
        sums.push(acc);
    }
    HilbertTable::analyze(sums, n, n + 1)
}

/// Ambient codimension table: entry k is dim X/M_k = N·C(k−1+n, n), the
/// count of monomials of degree < k in n variables times N.
pub fn ambient_codim_table(n: usize, rank_free: usize, cap: usize) -> HilbertTable {
    let values: Vec<usize> = (0..=cap + 1)
        .map(|k| if k == 0 { 0 } else { rank_free * binomial(k - 1 + n, n) })
        .collect();
    HilbertTable::analyze(values, n, n + 1)
}

/// fd(Y) as the n!-normalized limit of dim(Y + M_k)/M_k over k^n — i.e.
/// the stabilized n-th finite difference of the quotient table.
pub fn fd_by_limit_formula(y: &GradedSubmodule, cap: usize) -> Result<usize> {
    let value = quotient_codim_table(y, cap)?.leading_value()?;
    Ok(usize::try_from(value).expect("codimension tables are nondecreasing"))
}

/// Full multiplicity report; a table that fails to stabilize retries once
/// with the cap doubled before surfacing the error.
pub fn samuel_quotient(y: &GradedSubmodule, cap: usize) -> Result<MultiplicityReport> {
    retry_doubling(cap, |c| samuel_quotient_at_cap(y, c))
}

fn samuel_quotient_at_cap(y: &GradedSubmodule, cap: usize) -> Result<MultiplicityReport> {
    let dims = y.hilbert_table(cap)?.dims().to_vec();
    samuel_from_dims(&dims, y.vars(), y.ambient_rank())
}

/// Multiplicity report from a precomputed component-dimension sequence
/// (entry j = dim Y_j for j = 0..=cap).  All identity checks from
/// [`samuel_quotient`] still run; only the componentwise dimension
/// computation is skipped.
pub fn samuel_from_dims(dims: &[usize], n: usize, rank_free: usize) -> Result<MultiplicityReport> {
    let cap = dims.len().saturating_sub(1);

    let table = quotient_table_from_dims(dims, n);
    let fd_limit = usize::try_from(table.leading_value()?).expect("nonnegative");

    // c(T) for the ambient tuple: computed from the monomial counts and
    // checked against N instead of being assumed.
    let ambient = ambient_codim_table(n, rank_free, cap);
    let c_t = usize::try_from(ambient.leading_value()?).expect("nonnegative");
    if c_t != rank_free {
        return Err(Error::IdentityViolated(format!(
            "ambient Samuel multiplicity came out as {c_t}, expected N = {rank_free}"
        )));
    }

    let c_s = c_t - fd_limit;

    // Independent route: dim X/(Y + M_k) = ambient − quotient entrywise.
    let residual: Vec<usize> = ambient
        .dims()
        .iter()
        .zip(table.dims())
        .map(|(&x, &q)| x - q)
        .collect();
    let residual_table = HilbertTable::analyze(residual, n, n + 1);
    let c_s_independent = usize::try_from(residual_table.leading_value()?).expect("nonnegative");
    if c_s_independent != c_s {
        return Err(Error::IdentityViolated(format!(
            "quotient multiplicity mismatch: direct {c_s_independent} vs c(T) − fd = {c_s}"
        )));
    }

    let stabilization_degree = table
        .stabilization_degree()
        .expect("leading_value succeeded, so the window criterion held");

    Ok(MultiplicityReport { c_t, c_s, fd_limit, stabilization_degree, table })
}
