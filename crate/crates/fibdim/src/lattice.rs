//! The lattice identity for fiber dimensions and its constructive witness
//! algorithm.
//!
//! For submodules M₁, M₂ ⊆ ℚ[z]^N the fiber dimension is submodular:
//!
//!   fd(M₁ + M₂) + fd(M₁ ∩ M₂) ≥ fd(M₁) + fd(M₂),
//!
//! with equality when both modules are homogeneous.  The surplus
//! d′ = fd(M₁) + fd(M₂) − fd(M₁+M₂) is realized by explicit polynomial
//! witnesses: at a point λ that is simultaneously maximal for M₁, M₂ and
//! M₁+M₂, the fibers V₁ = M₁(λ) and V₂ = M₂(λ) intersect in a space E of
//! dimension exactly d′, and this module constructs u₁,…,u_{d′} lying in
//! M₁ ∩ M₂ whose values u_j(λ) form a basis of E.
//!
//! The construction follows the proof shape.  Pick bases E₁ (complement of
//! E in V₁, size d₁), E₂ (complement in V₂, size d₂) and E itself, giving
//! d = d₁ + d₂ + d′ vectors e₁,…,e_d spanning V₁ + V₂; complete them to a
//! basis B of ℚ^N.  Lift each eᵢ through the relevant module with constant
//! coefficients — Fᵢ ∈ M₁ over E₁ ∪ E, Gᵢ ∈ M₂ over E₂ ∪ E — and record the
//! first d B-coordinates of the lifts as polynomial columns: Δ₀ (square,
//! Δ₀(λ) = I) holds F₁..F_{d₁}, G₁..G_{d₂} and the E-lifts from M₁, while
//! Δ₁ holds the E-lifts from M₂.  Division-free elimination via the
//! adjugate, Γ = adj(Δ₀)·Δ₁, produces kernel columns of [Δ₀ | Δ₁]:
//!
//!   r_j = (γ_{1j}, …, γ_{dj}, 0, …, −det Δ₀, …, 0)ᵗ.
//!
//! An element of M₁ + M₂ whose first d B-coordinates vanish identically is
//! zero — near λ those coordinates embed every fiber, since the lifts of
//! e₁..e_d stay independent wherever det θ ≠ 0.  Applied to the combination
//! Σ r_j[c]·(lift behind column c), this forces the M₁-side and M₂-side of
//! each kernel relation to agree as polynomial vectors:
//!
//!   u_j = Σ_{i≤d₁} γ_{ij} Fᵢ + Σ_ν γ_{d₁+d₂+ν,j} F_{d₁+ν}
//!       = det Δ₀ · G_{d₂+j} − Σ_{i≤d₂} γ_{d₁+i,j} Gᵢ,
//!
//! exhibiting u_j ∈ M₁ ∩ M₂ with u_j(λ) = e_{d₁+d₂+j}.  Every identity the
//! proof relies on is checked coefficient-exactly at runtime and an
//! [`Error::IdentityViolated`] is raised if any fails, so a returned
//! witness list is a verified certificate.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fiber::{common_maximal_point, fiber_dim_at, fiber_dim_generic, retry_doubling};
use crate::graded::{
    module_intersect_upto, module_sum, GradedSubmodule, HilbertTable, Submodule,
    DEFAULT_CAP_SLACK,
};
use crate::matrix::{
    adjugate, determinant, inverse, rank_exact, row_basis, rowspace_intersect, solve_exact,
    Matrix,
};
use crate::poly::{MultiPoly, PolyVec};
use crate::{PolyMatrix, QMatrix, Rat};

/// All intermediate data of the witness construction at one point, with the
/// proof's identities verified during assembly.
#[derive(Clone, Debug)]
pub struct WitnessScaffold {
    point: Vec<Rat>,
    e_vectors: Vec<Vec<Rat>>,
    d1: usize,
    d2: usize,
    d_prime: usize,
    basis: QMatrix,
    basis_inverse: QMatrix,
    f_lifts: Vec<PolyVec>,
    g_lifts: Vec<PolyVec>,
    theta: PolyMatrix,
    adjugate_theta: PolyMatrix,
    det_theta: MultiPoly,
    delta0: PolyMatrix,
    delta1: PolyMatrix,
    det_delta0: MultiPoly,
    gamma: PolyMatrix,
    kernel_cols: Vec<Vec<MultiPoly>>,
}

impl WitnessScaffold {
    /// The common maximal point λ the scaffold is anchored at.
    pub fn point(&self) -> &[Rat] {
        &self.point
    }

    /// The frame e₁,…,e_d: a basis of E₁, then E₂, then E = V₁ ∩ V₂.
    pub fn e_vectors(&self) -> &[Vec<Rat>] {
        &self.e_vectors
    }

    /// Size of the complement of E inside V₁.
    pub fn d1(&self) -> usize {
        self.d1
    }

    /// Size of the complement of E inside V₂.
    pub fn d2(&self) -> usize {
        self.d2
    }

    /// dim E = dim(V₁ ∩ V₂); the number of witnesses produced.
    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    /// d = d₁ + d₂ + d′ = dim(V₁ + V₂).
    pub fn d(&self) -> usize {
        self.d1 + self.d2 + self.d_prime
    }

    /// The completed basis of ℚ^N, e-frame first, as matrix columns.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// B⁻¹; its leading d rows read off the coordinates the proof tracks.
    pub fn basis_inverse(&self) -> &QMatrix {
        &self.basis_inverse
    }

    /// Lifts of the E₁ frame then the E frame through M₁.
    pub fn f_lifts(&self) -> &[PolyVec] {
        &self.f_lifts
    }

    /// Lifts of the E₂ frame then the E frame through M₂.
    pub fn g_lifts(&self) -> &[PolyVec] {
        &self.g_lifts
    }

    /// First d B-coordinates of lifts of e₁..e_d through M₁ + M₂; θ(λ) = I.
    pub fn theta(&self) -> &PolyMatrix {
        &self.theta
    }

    /// adj(θ), satisfying adj(θ)·θ = det(θ)·I.
    pub fn adjugate_theta(&self) -> &PolyMatrix {
        &self.adjugate_theta
    }

    /// det θ; nonvanishing marks the neighbourhood where the frame embeds
    /// every fiber of M₁ + M₂.
    pub fn det_theta(&self) -> &MultiPoly {
        &self.det_theta
    }

    /// The square block of lift coordinates; Δ₀(λ) = I.
    pub fn delta0(&self) -> &PolyMatrix {
        &self.delta0
    }

    /// Coordinates of the E-lifts through M₂ (d × d′).
    pub fn delta1(&self) -> &PolyMatrix {
        &self.delta1
    }

    /// det Δ₀, the denominator-free pivot; equals 1 at λ.
    pub fn det_delta0(&self) -> &MultiPoly {
        &self.det_delta0
    }

    /// Γ = adj(Δ₀)·Δ₁.
    pub fn gamma(&self) -> &PolyMatrix {
        &self.gamma
    }

    /// The verified kernel columns r_j of [Δ₀ | Δ₁], each of length d + d′.
    pub fn kernel_columns(&self) -> &[Vec<MultiPoly>] {
        &self.kernel_cols
    }

    /// Assemble the d′ intersection witnesses.  For each kernel column the
    /// M₁-side combination u_j and the M₂-side combination v_j are formed
    /// independently and must agree coefficient-for-coefficient; the values
    /// u_j(λ) must reproduce the E frame and hence have rank d′.
    pub fn extract_witnesses(&self) -> Result<Vec<PolyVec>> {
        let rank_free = self.basis.rows();
        let (d1, d2, d_prime) = (self.d1, self.d2, self.d_prime);
        let mut witnesses = Vec::with_capacity(d_prime);
        for j in 0..d_prime {
            let mut u = PolyVec::zero(rank_free);
            for i in 0..d1 {
                u = &u + &self.f_lifts[i].scale_poly(&self.gamma[(i, j)]);
            }
            for nu in 0..d_prime {
                u = &u + &self.f_lifts[d1 + nu].scale_poly(&self.gamma[(d1 + d2 + nu, j)]);
            }
            let mut v = self.g_lifts[d2 + j].scale_poly(&self.det_delta0);
            for i in 0..d2 {
                v = &v - &self.g_lifts[i].scale_poly(&self.gamma[(d1 + i, j)]);
            }
            if u != v {
                return Err(Error::IdentityViolated(format!(
                    "witness {j}: combination through the first module differs from the one \
                     through the second"
                )));
            }
            if u.eval(&self.point) != self.e_vectors[d1 + d2 + j] {
                return Err(Error::IdentityViolated(format!(
                    "witness {j} does not evaluate to its frame vector at the anchor point"
                )));
            }
            witnesses.push(u);
        }
        if d_prime > 0 {
            let values: Vec<Vec<Rat>> =
                witnesses.iter().map(|w| w.eval(&self.point)).collect();
            if rank_exact(&Matrix::from_rows(values)?) != d_prime {
                return Err(Error::IdentityViolated(
                    "witness values fail to span the fiber intersection".into(),
                ));
            }
        }
        Ok(witnesses)
    }
}

/// Append to `picked` every row of `candidates` that enlarges its span, in
/// order; returns the appended rows.  `picked` must be independent.
fn extend_independent(picked: &mut Vec<Vec<Rat>>, candidates: &QMatrix) -> Result<Vec<Vec<Rat>>> {
    let mut appended = Vec::new();
    for r in 0..candidates.rows() {
        let row = candidates.row(r).to_vec();
        let mut trial = picked.clone();
        trial.push(row.clone());
        if rank_exact(&Matrix::from_rows(trial)?) > picked.len() {
            picked.push(row.clone());
            appended.push(row);
        }
    }
    Ok(appended)
}

/// The first `d` coordinates of a polynomial vector in the basis B, i.e.
/// the leading entries of B⁻¹·v with polynomial arithmetic.
fn first_coords(v: &PolyVec, basis_inverse: &QMatrix, d: usize) -> Vec<MultiPoly> {
    (0..d)
        .map(|r| {
            let mut acc = MultiPoly::zero();
            for c in 0..v.len() {
                acc = &acc + &v.entry(c).scale(&basis_inverse[(r, c)]);
            }
            acc
        })
        .collect()
}

/// Lift a fiber vector through the module: find f ∈ M with f(λ) = value as
/// a constant-coefficient combination of the generators, preferring the
/// lowest-degree generators.
fn lift_through(m: &Submodule, point: &[Rat], value: &[Rat]) -> Result<PolyVec> {
    let order = m.degree_sorted_indices();
    let evals = m.eval_rows(point)?;
    let rows: Vec<Vec<Rat>> = order.iter().map(|&i| evals.row(i).to_vec()).collect();
    let coeffs = solve_exact(&Matrix::from_rows(rows)?, value)?;
    let mut f = PolyVec::zero(m.ambient_rank());
    for (c, &gi) in coeffs.iter().zip(&order) {
        if !c.is_zero() {
            f = &f + &m.generators()[gi].scale(c);
        }
    }
    debug_assert_eq!(f.eval(point).as_slice(), value);
    Ok(f)
}

fn evaluates_to_identity(m: &PolyMatrix, point: &[Rat]) -> bool {
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            let value = m[(r, c)].eval(point);
            if r == c {
                value.is_one()
            } else {
                value.is_zero()
            }
        })
    })
}

/// Run the witness construction at `point`, which must be maximal for M₁,
/// M₂ and M₁ + M₂ simultaneously; every structural identity of the proof is
/// verified exactly along the way.
pub fn build_witness_scaffold(
    m1: &Submodule,
    m2: &Submodule,
    point: &[Rat],
) -> Result<WitnessScaffold> {
    if m1.vars() != m2.vars() || m1.ambient_rank() != m2.ambient_rank() {
        return Err(Error::ShapeMismatch(format!(
            "witness construction over (n={}, N={}) and (n={}, N={})",
            m1.vars(),
            m1.ambient_rank(),
            m2.vars(),
            m2.ambient_rank()
        )));
    }
    let sum = module_sum(m1, m2)?;
    for (label, m) in [("first module", m1), ("second module", m2), ("sum", &sum)] {
        let at_point = fiber_dim_at(m, point)?;
        let generic = fiber_dim_generic(m);
        if at_point != generic {
            return Err(Error::PointNotMaximal(format!(
                "{label}: fiber dimension {at_point} at the point but {generic} generically"
            )));
        }
    }
    let rank_free = m1.ambient_rank();

    let v1 = row_basis(&m1.eval_rows(point)?);
    let v2 = row_basis(&m2.eval_rows(point)?);
    let e = rowspace_intersect(&v1, &v2)?;
    let d_prime = e.rows();
    let e_rows: Vec<Vec<Rat>> = (0..d_prime).map(|r| e.row(r).to_vec()).collect();

    let mut span1 = e_rows.clone();
    let e1 = extend_independent(&mut span1, &v1)?;
    let mut span2 = e_rows.clone();
    let e2 = extend_independent(&mut span2, &v2)?;
    let (d1, d2) = (e1.len(), e2.len());
    let d = d1 + d2 + d_prime;
    if d != fiber_dim_at(&sum, point)? {
        return Err(Error::Inconsistent(format!(
            "frame size {d} differs from the fiber dimension of the sum"
        )));
    }

    let mut e_vectors: Vec<Vec<Rat>> = Vec::with_capacity(d);
    e_vectors.extend(e1);
    e_vectors.extend(e2);
    e_vectors.extend(e_rows);

    let mut completed = e_vectors.clone();
    extend_independent(&mut completed, &Matrix::identity(rank_free))?;
    if completed.len() != rank_free {
        return Err(Error::Inconsistent(
            "standard completion failed to reach a full basis".into(),
        ));
    }
    let basis = Matrix::from_rows(completed)?.transpose();
    let basis_inverse = inverse(&basis)
        .ok_or_else(|| Error::Inconsistent("completed frame is not a basis".into()))?;

    let mut f_lifts = Vec::with_capacity(d1 + d_prime);
    for i in 0..d1 {
        f_lifts.push(lift_through(m1, point, &e_vectors[i])?);
    }
    for nu in 0..d_prime {
        f_lifts.push(lift_through(m1, point, &e_vectors[d1 + d2 + nu])?);
    }
    let mut g_lifts = Vec::with_capacity(d2 + d_prime);
    for i in 0..d2 {
        g_lifts.push(lift_through(m2, point, &e_vectors[d1 + i])?);
    }
    for nu in 0..d_prime {
        g_lifts.push(lift_through(m2, point, &e_vectors[d1 + d2 + nu])?);
    }

    let theta_cols: Vec<Vec<MultiPoly>> = e_vectors
        .iter()
        .map(|target| Ok(first_coords(&lift_through(&sum, point, target)?, &basis_inverse, d)))
        .collect::<Result<_>>()?;
    let theta = Matrix::from_fn(d, d, |r, c| theta_cols[c][r].clone());
    if !evaluates_to_identity(&theta, point) {
        return Err(Error::IdentityViolated(
            "theta does not evaluate to the identity at the anchor point".into(),
        ));
    }
    let adjugate_theta = adjugate(&theta);
    let det_theta = determinant(&theta);
    let product = adjugate_theta.mul(&theta)?;
    for r in 0..d {
        for c in 0..d {
            let expected = if r == c { det_theta.clone() } else { MultiPoly::zero() };
            if product[(r, c)] != expected {
                return Err(Error::IdentityViolated(
                    "adjugate identity adj(theta)*theta = det(theta)*I failed".into(),
                ));
            }
        }
    }

    let mut delta0_cols: Vec<Vec<MultiPoly>> = Vec::with_capacity(d);
    for i in 0..d1 {
        delta0_cols.push(first_coords(&f_lifts[i], &basis_inverse, d));
    }
    for i in 0..d2 {
        delta0_cols.push(first_coords(&g_lifts[i], &basis_inverse, d));
    }
    for nu in 0..d_prime {
        delta0_cols.push(first_coords(&f_lifts[d1 + nu], &basis_inverse, d));
    }
    let delta0 = Matrix::from_fn(d, d, |r, c| delta0_cols[c][r].clone());
    if !evaluates_to_identity(&delta0, point) {
        return Err(Error::IdentityViolated(
            "delta0 does not evaluate to the identity at the anchor point".into(),
        ));
    }
    let delta1_cols: Vec<Vec<MultiPoly>> = (0..d_prime)
        .map(|nu| first_coords(&g_lifts[d2 + nu], &basis_inverse, d))
        .collect();
    let delta1 = Matrix::from_fn(d, d_prime, |r, c| delta1_cols[c][r].clone());

    let det_delta0 = determinant(&delta0);
    if !det_delta0.eval(point).is_one() {
        return Err(Error::IdentityViolated(
            "det(delta0) is not 1 at the anchor point".into(),
        ));
    }
    let gamma = adjugate(&delta0).mul(&delta1)?;

    let delta = Matrix::from_fn(d, d + d_prime, |r, c| {
        if c < d {
            delta0[(r, c)].clone()
        } else {
            delta1[(r, c - d)].clone()
        }
    });
    let mut kernel_cols = Vec::with_capacity(d_prime);
    for j in 0..d_prime {
        let mut col: Vec<MultiPoly> = (0..d).map(|i| gamma[(i, j)].clone()).collect();
        for k in 0..d_prime {
            col.push(if k == j { -det_delta0.clone() } else { MultiPoly::zero() });
        }
        let image = delta.apply(&col)?;
        if image.iter().any(|p| !p.is_zero()) {
            return Err(Error::IdentityViolated(format!(
                "kernel column {j} is not annihilated by [delta0 | delta1]"
            )));
        }
        kernel_cols.push(col);
    }

    Ok(WitnessScaffold {
        point: point.to_vec(),
        e_vectors,
        d1,
        d2,
        d_prime,
        basis,
        basis_inverse,
        f_lifts,
        g_lifts,
        theta,
        adjugate_theta,
        det_theta,
        delta0,
        delta1,
        det_delta0,
        gamma,
        kernel_cols,
    })
}

/// Witness construction outcome for a (possibly inhomogeneous) pair.  The
/// d′ verified witnesses certify fd(M₁ ∩ M₂) ≥ fd(M₁) + fd(M₂) − fd(M₁+M₂).
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub fd1: usize,
    pub fd2: usize,
    pub fd_sum: usize,
    pub d_prime: usize,
    pub point: Vec<Rat>,
    pub witnesses: Vec<PolyVec>,
}

/// Find a common maximal point (seeded, deterministic) and run the witness
/// construction there.
pub fn witness_report(m1: &Submodule, m2: &Submodule, seed: u64) -> Result<WitnessReport> {
    let sum = module_sum(m1, m2)?;
    let point = common_maximal_point(&[m1, m2, &sum], seed)?;
    let scaffold = build_witness_scaffold(m1, m2, &point)?;
    let witnesses = scaffold.extract_witnesses()?;
    Ok(WitnessReport {
        fd1: fiber_dim_generic(m1),
        fd2: fiber_dim_generic(m2),
        fd_sum: fiber_dim_generic(&sum),
        d_prime: scaffold.d_prime(),
        point,
        witnesses,
    })
}

/// fd(M₁ ∩ M₂) through the graded route: intersect the modules degree by
/// degree up to the cap and take the stabilized leading value of the
/// resulting Hilbert table.
pub fn fd_intersection(a: &GradedSubmodule, b: &GradedSubmodule, cap: usize) -> Result<usize> {
    let components = module_intersect_upto(a, b, cap)?;
    let dims: Vec<usize> = components.iter().map(|c| c.dim()).collect();
    let table = HilbertTable::analyze(dims, a.vars(), a.vars());
    Ok(usize::try_from(table.leading_value()?).expect("dimension counts are nonnegative"))
}

/// Verdict of the lattice identity on a homogeneous pair.  `fd_cap` comes
/// from the degreewise intersection — an independent route — and
/// `equality_holds` records whether it matches d′ = fd₁ + fd₂ − fd(M₁+M₂).
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub fd1: usize,
    pub fd2: usize,
    pub fd_sum: usize,
    pub fd_cap: usize,
    pub d_prime: usize,
    pub equality_holds: bool,
    pub point: Vec<Rat>,
    pub witnesses: Vec<PolyVec>,
}

/// Evaluate both sides of the lattice identity on a homogeneous pair and
/// construct the witnesses.  `cap` bounds the degreewise intersection (a
/// degree-sum based default is used when absent, with one doubling retry).
pub fn lattice_check(
    m1: &GradedSubmodule,
    m2: &GradedSubmodule,
    cap: Option<usize>,
    seed: u64,
) -> Result<LatticeReport> {
    let sum = module_sum(m1.base(), m2.base())?;
    let fd1 = fiber_dim_generic(m1.base());
    let fd2 = fiber_dim_generic(m2.base());
    let fd_sum = fiber_dim_generic(&sum);
    let d_prime = fd1 + fd2 - fd_sum;

    let cap0 = cap.unwrap_or_else(|| {
        m1.base().max_generator_degree()
            + m2.base().max_generator_degree()
            + m1.vars()
            + DEFAULT_CAP_SLACK
    });
    let fd_cap = retry_doubling(cap0, |c| fd_intersection(m1, m2, c))?;

    let point = common_maximal_point(&[m1.base(), m2.base(), &sum], seed)?;
    let scaffold = build_witness_scaffold(m1.base(), m2.base(), &point)?;
    let witnesses = scaffold.extract_witnesses()?;

    Ok(LatticeReport {
        fd1,
        fd2,
        fd_sum,
        fd_cap,
        d_prime,
        equality_holds: fd_cap == d_prime,
        point,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rat;

    fn module(n: usize, rank: usize, gens: Vec<Vec<MultiPoly>>) -> Submodule {
        Submodule::new(n, rank, gens.into_iter().map(PolyVec::new).collect()).unwrap()
    }

    fn graded(m: Submodule) -> GradedSubmodule {
        GradedSubmodule::new(m).unwrap()
    }

    fn z(i: usize) -> MultiPoly {
        MultiPoly::variable(i)
    }

    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    fn nil() -> MultiPoly {
        MultiPoly::zero()
    }

    /// M₁ = span{(1,0), (0,z)} and M₂ = span{(0,1)} in one variable.
    fn worked_pair() -> (Submodule, Submodule) {
        let m1 = module(1, 2, vec![vec![one(), nil()], vec![nil(), z(0)]]);
        let m2 = module(1, 2, vec![vec![nil(), one()]]);
        (m1, m2)
    }

    #[test]
    fn worked_pair_satisfies_the_identity_with_one_witness() {
        let (m1, m2) = worked_pair();
        let report = lattice_check(&graded(m1.clone()), &graded(m2.clone()), None, 7).unwrap();
        assert_eq!(
            (report.fd1, report.fd2, report.fd_sum, report.fd_cap),
            (2, 1, 2, 1)
        );
        assert_eq!(report.d_prime, 1);
        assert!(report.equality_holds);
        assert_eq!(report.witnesses.len(), 1);

        // The intersection is 0 × (z), so the witness is c·(0, z).
        let w = &report.witnesses[0];
        assert!(w.entry(0).is_zero());
        assert_eq!(w.entry(1).num_terms(), 1);
        assert_eq!(w.entry(1).degree(), Some(1));

        // Independent membership route through the graded structure.
        for m in [m1, m2] {
            assert!(graded(m).membership(w).unwrap());
        }
    }

    #[test]
    fn constant_pair_scaffold_is_the_identity_frame() {
        // Both modules are spanned by constant vectors, so every lift is
        // constant and theta, delta0 collapse to identity matrices.
        let m1 = module(1, 2, vec![vec![one(), nil()]]);
        let m2 = module(1, 2, vec![vec![one(), nil()], vec![nil(), one()]]);
        let point = common_maximal_point(&[&m1, &m2], 3).unwrap();
        let s = build_witness_scaffold(&m1, &m2, &point).unwrap();
        assert_eq!((s.d1(), s.d2(), s.d_prime(), s.d()), (0, 1, 1, 2));
        assert!(evaluates_to_identity(s.theta(), &[rat(0, 1)]));
        assert!(s.det_theta().is_one());
        assert!(s.det_delta0().is_one());
        let witnesses = s.extract_witnesses().unwrap();
        assert_eq!(witnesses.len(), 1);
        // The witness lies in M₁ ∩ M₂ = span{(1,0)} and is constant.
        assert_eq!(witnesses[0].degree(), Some(0));
        assert!(witnesses[0].entry(1).is_zero());
    }

    #[test]
    fn transversal_ideals_multiply_into_the_witness() {
        // (z₁) ∩ (z₂) = (z₁z₂): the single witness must be c·z₁z₂.
        let m1 = module(2, 1, vec![vec![z(0)]]);
        let m2 = module(2, 1, vec![vec![z(1)]]);
        let report = lattice_check(&graded(m1), &graded(m2), None, 11).unwrap();
        assert_eq!(
            (report.fd1, report.fd2, report.fd_sum, report.fd_cap),
            (1, 1, 1, 1)
        );
        assert!(report.equality_holds);
        let w = &report.witnesses[0];
        assert_eq!(w.entry(0).num_terms(), 1);
        let (monomial, _) = w.entry(0).leading().unwrap();
        assert_eq!(*monomial, Monomial::new(vec![1, 1]));
    }

    #[test]
    fn disjoint_constant_pair_has_no_witnesses() {
        let m1 = module(1, 2, vec![vec![one(), nil()]]);
        let m2 = module(1, 2, vec![vec![nil(), one()]]);
        let report = lattice_check(&graded(m1), &graded(m2), None, 5).unwrap();
        assert_eq!((report.d_prime, report.fd_cap), (0, 0));
        assert!(report.equality_holds);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn nested_scaled_pair_keeps_the_fiber_dimension() {
        // M₁ = m·M₂ sits inside M₂ with finite codimension; both have
        // fiber dimension 1 and the intersection is M₁ itself.
        let m2 = module(2, 2, vec![vec![z(0), z(1)]]);
        let m1 = module(
            2,
            2,
            vec![
                vec![&z(0) * &z(0), &z(0) * &z(1)],
                vec![&z(0) * &z(1), &z(1) * &z(1)],
            ],
        );
        let report = lattice_check(&graded(m1), &graded(m2), None, 13).unwrap();
        assert_eq!(
            (report.fd1, report.fd2, report.fd_sum, report.fd_cap),
            (1, 1, 1, 1)
        );
        assert!(report.equality_holds);
        assert_eq!(report.witnesses.len(), 1);
    }

    #[test]
    fn inhomogeneous_pair_yields_a_verified_witness() {
        // (1+z) ∩ (z) = (z + z²); the construction does not need grading.
        let m1 = module(1, 1, vec![vec![&one() + &z(0)]]);
        let m2 = module(1, 1, vec![vec![z(0)]]);
        let report = witness_report(&m1, &m2, 19).unwrap();
        assert_eq!((report.fd1, report.fd2, report.fd_sum), (1, 1, 1));
        assert_eq!(report.d_prime, 1);
        let w = &report.witnesses[0];
        // c·(z + z²): two terms with equal coefficients.
        assert_eq!(w.entry(0).num_terms(), 2);
        let coeffs: Vec<Rat> = w.entry(0).terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs[0], coeffs[1]);
        assert_eq!(w.degree(), Some(2));
    }

    #[test]
    fn witness_count_certifies_the_inequality_for_inhomogeneous_pairs() {
        let m1 = module(
            2,
            2,
            vec![vec![&one() + &z(0), nil()], vec![nil(), z(1)]],
        );
        let m2 = module(2, 2, vec![vec![one(), one()]]);
        let report = witness_report(&m1, &m2, 23).unwrap();
        assert_eq!(report.witnesses.len(), report.d_prime);
        assert_eq!(report.d_prime, report.fd1 + report.fd2 - report.fd_sum);
    }

    #[test]
    fn non_maximal_point_is_rejected() {
        let m = module(2, 1, vec![vec![z(0)], vec![z(1)]]);
        let origin = [rat(0, 1), rat(0, 1)];
        let err = build_witness_scaffold(&m, &m, &origin).unwrap_err();
        assert!(matches!(err, Error::PointNotMaximal(_)));
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let m1 = module(1, 1, vec![vec![z(0)]]);
        let m2 = module(2, 1, vec![vec![z(0)]]);
        let err = build_witness_scaffold(&m1, &m2, &[rat(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn scaffold_exposes_consistent_kernel_data() {
        let (m1, m2) = worked_pair();
        let point = {
            let sum = module_sum(&m1, &m2).unwrap();
            common_maximal_point(&[&m1, &m2, &sum], 7).unwrap()
        };
        let s = build_witness_scaffold(&m1, &m2, &point).unwrap();
        assert_eq!(s.kernel_columns().len(), s.d_prime());
        for col in s.kernel_columns() {
            assert_eq!(col.len(), s.d() + s.d_prime());
        }
        assert!(s.det_delta0().eval(s.point()).is_one());
        assert_eq!(s.gamma().rows(), s.d());
        assert_eq!(s.gamma().cols(), s.d_prime());
        assert_eq!(s.e_vectors().len(), s.d());
        assert_eq!(s.f_lifts().len(), s.d1() + s.d_prime());
        assert_eq!(s.g_lifts().len(), s.d2() + s.d_prime());
        assert_eq!(s.adjugate_theta().rows(), s.d());
        assert_eq!(s.basis().rows(), 2);
    }

    #[test]
    fn equality_holds_across_assorted_homogeneous_pairs() {
        let pairs: Vec<(Submodule, Submodule)> = vec![
            worked_pair(),
            (
                module(2, 1, vec![vec![z(0)], vec![z(1)]]),
                module(2, 1, vec![vec![z(0)]]),
            ),
            (
                module(2, 2, vec![vec![z(0), z(1)]]),
                module(2, 2, vec![vec![z(1), z(0)]]),
            ),
            (
                module(3, 1, vec![vec![z(0)], vec![z(1)]]),
                module(3, 1, vec![vec![z(2)]]),
            ),
        ];
        for (seed, (m1, m2)) in pairs.into_iter().enumerate() {
            let report =
                lattice_check(&graded(m1), &graded(m2), None, 31 + seed as u64).unwrap();
            assert!(
                report.equality_holds,
                "fd_cap {} vs d' {}",
                report.fd_cap, report.d_prime
            );
            assert_eq!(report.witnesses.len(), report.d_prime);
        }
    }
}
