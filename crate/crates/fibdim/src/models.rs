//! Graded functional Hilbert model spaces: weight sequences a_k, kernels
//! K(z,w) = f(⟨z,w⟩)·1 with f(t) = Σ a_k t^k, and the orthogonal-projection
//! reading of the limit formula.
//!
//! A weight sequence with a_0 = 1, a_k > 0 and bounded consecutive ratios
//! determines a space in which distinct vector monomials are orthogonal and
//! ⟨z^α, z^α⟩ = α!/(|α|!·a_{|α|}).  The space is the orthogonal sum of its
//! degree components ℍ_k ⊗ ℂ^N, so the projection P_k onto the orthogonal
//! complement of M_k(T)·H is the projection onto degrees < k, and for a
//! homogeneous submodule Y
//!
//!   dim P_k Y = Σ_{j<k} dim Y_j,
//!
//! independently of the weights — the same table the Samuel-multiplicity
//! limit formula differences.  Everything here is evaluated over ℚ: on
//! rational points the Hermitian pairing coincides with the bilinear one,
//! so conjugation never enters.

use num_integer::binomial as int_binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded::GradedSubmodule;
use crate::poly::{monomial_count, monomials_of_degree, monomial_rank, Monomial};
use crate::{Int, Rat};

/// A one-variable power series f(t) = Σ a_k t^k with a_0 = 1 and a_k > 0,
/// given by a named preset (closed form, any index) or an explicit rational
/// prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSequence {
    name: String,
    kind: WeightKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum WeightKind {
    /// a_k = 1, f(t) = 1/(1−t).
    DruryArveson,
    /// a_k = C(k+n−1, k), f(t) = (1−t)^{−n}.
    HardyBall { n: usize },
    /// a_k = C(k+n, k), f(t) = (1−t)^{−(n+1)}.
    BergmanBall { n: usize },
    /// A finite prefix; indices past the end are an error.
    Explicit(Vec<Rat>),
}

impl WeightSequence {
    /// Look up a named preset over the ball in ℂ^n.
    pub fn preset(name: &str, n: usize) -> Result<WeightSequence> {
        let kind = match name {
            "drury-arveson" => WeightKind::DruryArveson,
            "hardy-ball" => WeightKind::HardyBall { n },
            "bergman-ball" => WeightKind::BergmanBall { n },
            other => {
                return Err(Error::UnknownPreset(format!(
                    "no weight preset named {other:?}; known presets: drury-arveson, \
                     hardy-ball, bergman-ball"
                )))
            }
        };
        Ok(WeightSequence { name: name.to_string(), kind })
    }

    /// Wrap an explicit prefix (a_0, a_1, …); a_0 must be 1 and every
    /// entry positive.
    pub fn explicit(prefix: Vec<Rat>) -> Result<WeightSequence> {
        match prefix.first() {
            None => {
                return Err(Error::InvalidWeights(
                    "explicit weight sequence must contain a_0".into(),
                ))
            }
            Some(a0) if !a0.is_one() => {
                return Err(Error::InvalidWeights(format!("a_0 = {a0}, expected 1")))
            }
            _ => {}
        }
        if let Some((k, a)) = prefix.iter().enumerate().find(|(_, a)| !a.is_positive()) {
            return Err(Error::InvalidWeights(format!("a_{k} = {a} is not positive")));
        }
        Ok(WeightSequence { name: "explicit".to_string(), kind: WeightKind::Explicit(prefix) })
    }

    /// The preset name, or "explicit".
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The weight a_k.
    pub fn weight(&self, k: usize) -> Result<Rat> {
        match &self.kind {
            WeightKind::DruryArveson => Ok(Rat::one()),
            WeightKind::HardyBall { n } => {
                Ok(Rat::from(Int::from(int_binomial(k + n.saturating_sub(1), k))))
            }
            WeightKind::BergmanBall { n } => Ok(Rat::from(Int::from(int_binomial(k + n, k)))),
            WeightKind::Explicit(prefix) => prefix.get(k).cloned().ok_or_else(|| {
                Error::CapTooSmall(format!(
                    "weight a_{k} requested but the explicit prefix ends at a_{}",
                    prefix.len() - 1
                ))
            }),
        }
    }

    /// Min and max of the consecutive ratios a_k/a_{k+1} for k < k_max.
    /// Positivity of the weights makes both bounds positive; the sequence
    /// is admissible when such bounds exist at every scale.
    pub fn ratio_bounds(&self, k_max: usize) -> Result<(Rat, Rat)> {
        if k_max == 0 {
            return Err(Error::InvalidWeights(
                "ratio bounds need at least the ratio a_0/a_1".into(),
            ));
        }
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for k in 0..k_max {
            let ratio = self.weight(k)? / self.weight(k + 1)?;
            lo = Some(match lo {
                Some(l) => l.min(ratio.clone()),
                None => ratio.clone(),
            });
            hi = Some(match hi {
                Some(h) => h.max(ratio),
                None => ratio,
            });
        }
        Ok((lo.expect("k_max > 0"), hi.expect("k_max > 0")))
    }
}

/// The graded model space ⊕_k ℍ_k ⊗ ℂ^N attached to a weight sequence,
/// materialized up to the truncation degree `cap`.
#[derive(Clone, Debug)]
pub struct GradedModelSpace {
    n: usize,
    rank_free: usize,
    weights: WeightSequence,
    cap: usize,
}

impl GradedModelSpace {
    /// Validate the weights up to the cap (a_0 = 1, positivity, prefix
    /// long enough) and build the space.
    pub fn new(
        n: usize,
        rank_free: usize,
        weights: WeightSequence,
        cap: usize,
    ) -> Result<GradedModelSpace> {
        if n == 0 || rank_free == 0 {
            return Err(Error::ShapeMismatch(format!(
                "model space needs n ≥ 1 and N ≥ 1, got n = {n}, N = {rank_free}"
            )));
        }
        if !weights.weight(0)?.is_one() {
            return Err(Error::InvalidWeights("a_0 must be 1".into()));
        }
        for k in 0..=cap {
            let a = weights.weight(k)?;
            if !a.is_positive() {
                return Err(Error::InvalidWeights(format!("a_{k} = {a} is not positive")));
            }
        }
        Ok(GradedModelSpace { n, rank_free, weights, cap })
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank_free
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// dim ℍ_k ⊗ ℂ^N: the full degree-k component.
    pub fn component_dim(&self, k: usize) -> usize {
        self.rank_free * monomial_count(self.n, k)
    }

    /// The truncated kernel Σ_{k≤k_max} a_k ⟨z,w⟩^k at rational points;
    /// the pairing is bilinear, which on rational points agrees with the
    /// Hermitian one.
    pub fn kernel_eval(&self, z: &[Rat], w: &[Rat], k_max: usize) -> Result<Rat> {
        if z.len() != self.n || w.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "kernel points need {} coordinates, got {} and {}",
                self.n,
                z.len(),
                w.len()
            )));
        }
        if k_max > self.cap {
            return Err(Error::CapTooSmall(format!(
                "kernel truncation {k_max} above the space cap {}",
                self.cap
            )));
        }
        let pairing: Rat = z.iter().zip(w).map(|(a, b)| a * b).sum();
        let mut power = Rat::one();
        let mut acc = Rat::zero();
        for k in 0..=k_max {
            acc += self.weights.weight(k)? * &power;
            power *= &pairing;
        }
        Ok(acc)
    }

    /// ⟨z^α, z^α⟩ = α!/(|α|!·a_{|α|}), the squared norm of a monomial.
    /// Confirmed against symbolic expansion of the kernel in the tests
    /// before anything relies on it.
    pub fn monomial_norm_squared(&self, alpha: &Monomial) -> Result<Rat> {
        if !alpha.fits_vars(self.n) {
            return Err(Error::ShapeMismatch(format!(
                "monomial {alpha} uses more than {} variables",
                self.n
            )));
        }
        let total = alpha.degree();
        let alpha_fact: Int = (0..self.n)
            .map(|i| factorial(alpha.exponent(i) as usize))
            .product();
        let numer = Rat::from(alpha_fact);
        let denom = Rat::from(factorial(total)) * self.weights.weight(total)?;
        Ok(numer / denom)
    }

    /// dim P_k Y = Σ_{j<k} dim Y_j: the dimension of the projection of Y
    /// onto the orthogonal complement of M_k(T)·H, which is the span of
    /// the components of degree < k.
    pub fn projection_dims(&self, y: &GradedSubmodule, k: usize) -> Result<usize> {
        if y.vars() != self.n || y.ambient_rank() != self.rank_free {
            return Err(Error::ShapeMismatch(format!(
                "submodule over (n={}, N={}) inside a model space with (n={}, N={})",
                y.vars(),
                y.ambient_rank(),
                self.n,
                self.rank_free
            )));
        }
        if k > self.cap + 1 {
            return Err(Error::CapTooSmall(format!(
                "projection at degree {k} needs components up to {}, above the cap {}",
                k.saturating_sub(1),
                self.cap
            )));
        }
        Ok((0..k).map(|j| y.component_dim(j)).sum())
    }
}

/// Outcome of checking the graded-tuple axioms on a truncation.  Axiom
/// (ii) — closed range of the row operator — is an infinite-dimensional
/// statement invisible at any truncation, so it is reported as unchecked
/// rather than silently passing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    /// (i): each coordinate multiplication maps ℍ_k ⊗ ℂ^N into ℍ_{k+1} ⊗ ℂ^N.
    pub degree_shift: bool,
    /// (iii): the monomials z^α e_i with |α| = k exhaust ℍ_k ⊗ ℂ^N.
    pub spanning: bool,
    /// (ii) is never checkable at a truncation; always false, meaning
    /// "not verified", never "failed".
    pub closed_range_checked: bool,
    /// Degree up to which (i) and (iii) were verified.
    pub cap: usize,
}

impl AxiomCheck {
    /// Whether every checkable axiom held.
    pub fn passed(&self) -> bool {
        self.degree_shift && self.spanning
    }
}

/// Verify axioms (i) and (iii) of a graded tuple on the model space up to
/// `cap` by exact monomial bookkeeping.
pub fn graded_axiom_check(space: &GradedModelSpace, cap: usize) -> AxiomCheck {
    let n = space.vars();

    // (i): z_j · z^α has degree |α| + 1 and lands on a monomial that the
    // degree-(|α|+1) enumeration knows at the rank the order predicts.
    let mut degree_shift = true;
    for k in 0..cap {
        let next = monomials_of_degree(n, k + 1);
        for alpha in monomials_of_degree(n, k) {
            for j in 0..n {
                let shifted = alpha.mul(&Monomial::var(j));
                let rank = monomial_rank(&shifted, n);
                if shifted.degree() != k + 1 || next.get(rank) != Some(&shifted) {
                    degree_shift = false;
                }
            }
        }
    }

    // (iii): the span of {z^α e_i : |α| = k} is all of ℍ_k ⊗ ℂ^N — the
    // enumeration must hit every rank below the component dimension
    // exactly once.
    let mut spanning = true;
    for k in 0..=cap {
        let monomials = monomials_of_degree(n, k);
        let count = monomial_count(n, k);
        if monomials.len() != count {
            spanning = false;
            continue;
        }
        let mut seen = vec![false; count];
        for m in &monomials {
            let rank = monomial_rank(m, n);
            if rank >= count || seen[rank] {
                spanning = false;
            } else {
                seen[rank] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            spanning = false;
        }
    }

    AxiomCheck { degree_shift, spanning, closed_range_checked: false, cap }
}

fn factorial(k: usize) -> Int {
    let mut acc = Int::one();
    for i in 2..=k {
        acc *= Int::from(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Submodule;
    use crate::multiplicity::quotient_codim_table;
    use crate::poly::{MultiPoly, PolyVec};
    use crate::rat;

    fn da_space(n: usize, rank: usize, cap: usize) -> GradedModelSpace {
        let w = WeightSequence::preset("drury-arveson", n).unwrap();
        GradedModelSpace::new(n, rank, w, cap).unwrap()
    }

    fn ideal_z1_z2() -> GradedSubmodule {
        let gens = vec![
            PolyVec::new(vec![MultiPoly::variable(0)]),
            PolyVec::new(vec![MultiPoly::variable(1)]),
        ];
        GradedSubmodule::new(Submodule::new(2, 1, gens).unwrap()).unwrap()
    }

    #[test]
    fn preset_weight_prefixes_match_their_closed_forms() {
        let da = WeightSequence::preset("drury-arveson", 2).unwrap();
        let hardy = WeightSequence::preset("hardy-ball", 2).unwrap();
        let bergman = WeightSequence::preset("bergman-ball", 2).unwrap();
        for k in 0..4 {
            assert_eq!(da.weight(k).unwrap(), rat(1, 1));
            assert_eq!(hardy.weight(k).unwrap(), rat(k as i64 + 1, 1));
        }
        let bergman_prefix: Vec<Rat> = (0..4).map(|k| bergman.weight(k).unwrap()).collect();
        assert_eq!(bergman_prefix, vec![rat(1, 1), rat(3, 1), rat(6, 1), rat(10, 1)]);
    }

    #[test]
    fn explicit_weights_validate_and_expose_ratios() {
        let w = WeightSequence::explicit(vec![rat(1, 1), rat(1, 2), rat(1, 4)]).unwrap();
        assert_eq!(w.ratio_bounds(2).unwrap(), (rat(2, 1), rat(2, 1)));
        assert!(matches!(
            w.weight(3).unwrap_err(),
            Error::CapTooSmall(_)
        ));

        let bad_head = WeightSequence::explicit(vec![rat(2, 1)]);
        assert!(matches!(bad_head.unwrap_err(), Error::InvalidWeights(_)));
        let bad_sign = WeightSequence::explicit(vec![rat(1, 1), rat(0, 1)]);
        assert!(matches!(bad_sign.unwrap_err(), Error::InvalidWeights(_)));
        let unknown = WeightSequence::preset("szego", 2);
        assert!(matches!(unknown.unwrap_err(), Error::UnknownPreset(_)));
    }

    #[test]
    fn preset_ratio_bounds_stay_in_their_documented_ranges() {
        let da = WeightSequence::preset("drury-arveson", 3).unwrap();
        assert_eq!(da.ratio_bounds(6).unwrap(), (rat(1, 1), rat(1, 1)));
        // Hardy on the 2-ball: a_k/a_{k+1} = (k+1)/(k+2) climbs from 1/2
        // towards 1.
        let hardy = WeightSequence::preset("hardy-ball", 2).unwrap();
        let (lo, hi) = hardy.ratio_bounds(5).unwrap();
        assert_eq!(lo, rat(1, 2));
        assert!(hi < rat(1, 1) && hi >= lo);
    }

    #[test]
    fn kernel_eval_reproduces_the_pinned_partial_sums() {
        // w = 0 gives a_0 = 1 regardless of z.
        let s1 = da_space(2, 1, 6);
        assert_eq!(
            s1.kernel_eval(&[rat(3, 7), rat(-1, 2)], &[rat(0, 1), rat(0, 1)], 5).unwrap(),
            rat(1, 1)
        );
        // Drury-Arveson, ⟨z,w⟩ = 1/2, K = 3: the geometric partial sum.
        let s2 = da_space(1, 1, 6);
        assert_eq!(s2.kernel_eval(&[rat(1, 2)], &[rat(1, 1)], 3).unwrap(), rat(15, 8));
        // Hardy on the 2-ball, ⟨z,w⟩ = 1/2, K = 2.
        let hardy = WeightSequence::preset("hardy-ball", 2).unwrap();
        let s3 = GradedModelSpace::new(2, 1, hardy, 6).unwrap();
        assert_eq!(
            s3.kernel_eval(&[rat(1, 2), rat(0, 1)], &[rat(1, 1), rat(5, 1)], 2).unwrap(),
            rat(11, 4)
        );
    }

    #[test]
    fn kernel_truncations_grow_monotonically_for_nonnegative_pairing() {
        let space = da_space(1, 1, 8);
        let mut last = rat(0, 1);
        for k in 0..=8 {
            let value = space.kernel_eval(&[rat(1, 3)], &[rat(1, 1)], k).unwrap();
            assert!(value > last);
            last = value;
        }
        assert!(matches!(
            space.kernel_eval(&[rat(1, 3)], &[rat(1, 1)], 9).unwrap_err(),
            Error::CapTooSmall(_)
        ));
    }

    #[test]
    fn projection_dims_match_the_quotient_codimension_table() {
        let y = ideal_z1_z2();
        let table = quotient_codim_table(&y, 11).unwrap();
        for preset in ["drury-arveson", "hardy-ball", "bergman-ball"] {
            let w = WeightSequence::preset(preset, 2).unwrap();
            let space = GradedModelSpace::new(2, 1, w, 12).unwrap();
            for k in 0..=12 {
                assert_eq!(space.projection_dims(&y, k).unwrap(), table.dims()[k]);
            }
        }
    }

    #[test]
    fn projection_dims_pinned_values() {
        // ideal(z1, z2) in the Drury-Arveson space on the 2-ball at k = 3:
        // 0 + 2 + 3 = 5.
        let space = da_space(2, 1, 8);
        assert_eq!(space.projection_dims(&ideal_z1_z2(), 3).unwrap(), 5);

        // The zero module projects to 0 at every degree.
        let zero =
            GradedSubmodule::new(Submodule::new(2, 1, vec![PolyVec::zero(1)]).unwrap()).unwrap();
        for k in 0..=8 {
            assert_eq!(space.projection_dims(&zero, k).unwrap(), 0);
        }

        // The full space in one variable: dim P_k = k.
        let full = GradedSubmodule::new(
            Submodule::new(1, 1, vec![PolyVec::new(vec![MultiPoly::one()])]).unwrap(),
        )
        .unwrap();
        let line = da_space(1, 1, 8);
        assert_eq!(line.projection_dims(&full, 4).unwrap(), 4);

        assert!(matches!(
            space.projection_dims(&ideal_z1_z2(), 10).unwrap_err(),
            Error::CapTooSmall(_)
        ));
    }

    #[test]
    fn differenced_projection_dims_recover_the_fiber_dimension() {
        use crate::fiber::fiber_dim_generic;
        use crate::graded::HilbertTable;

        let tangent = GradedSubmodule::new(
            Submodule::new(
                2,
                2,
                vec![PolyVec::new(vec![MultiPoly::variable(0), MultiPoly::variable(1)])],
            )
            .unwrap(),
        )
        .unwrap();
        let space = da_space(2, 2, 12);
        let dims: Vec<usize> =
            (0..=13).map(|k| space.projection_dims(&tangent, k).unwrap()).collect();
        let table = HilbertTable::analyze(dims, 2, 3);
        assert_eq!(
            table.leading_value().unwrap(),
            fiber_dim_generic(tangent.base()) as i64
        );
    }

    #[test]
    fn axiom_check_passes_and_flags_closed_range_unchecked() {
        let preset_space = da_space(3, 2, 5);
        let report = graded_axiom_check(&preset_space, 5);
        assert!(report.degree_shift && report.spanning && report.passed());
        assert!(!report.closed_range_checked);

        let explicit = WeightSequence::explicit(vec![
            rat(1, 1),
            rat(1, 2),
            rat(1, 4),
            rat(1, 8),
            rat(1, 16),
            rat(1, 32),
        ])
        .unwrap();
        let space = GradedModelSpace::new(2, 1, explicit, 5).unwrap();
        let report = graded_axiom_check(&space, 5);
        assert!(report.passed() && !report.closed_range_checked);
        assert_eq!(report.cap, 5);
    }

    #[test]
    fn monomial_norms_match_symbolic_kernel_expansion() {
        // Oracle for ⟨z^α, z^α⟩ = α!/(|α|!·a_{|α|}): expand the truncated
        // kernel Σ_k a_k (Σ_i z_i w_i)^k as a polynomial in 2n variables
        // (z first, then w) and read off the coefficient of z^α w^α, which
        // must be the reciprocal of the squared norm.
        for n in 1..=2usize {
            for preset in ["drury-arveson", "hardy-ball", "bergman-ball"] {
                let weights = WeightSequence::preset(preset, n).unwrap();
                let space = GradedModelSpace::new(n, 1, weights.clone(), 6).unwrap();

                let mut pairing = MultiPoly::zero();
                for i in 0..n {
                    pairing = &pairing
                        + &(&MultiPoly::variable(i) * &MultiPoly::variable(n + i));
                }
                let mut kernel = MultiPoly::zero();
                for k in 0..=3 {
                    kernel = &kernel + &pairing.pow(k).scale(&weights.weight(k).unwrap());
                }

                for degree in 0..=3usize {
                    for alpha in monomials_of_degree(n, degree) {
                        let mut exps: Vec<u32> =
                            (0..n).map(|i| alpha.exponent(i)).collect();
                        exps.extend((0..n).map(|i| alpha.exponent(i)));
                        let diag = Monomial::new(exps);
                        let coeff = kernel
                            .terms()
                            .find(|(m, _)| **m == diag)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rat::zero);
                        let norm = space.monomial_norm_squared(&alpha).unwrap();
                        assert_eq!(coeff * norm, rat(1, 1), "preset {preset}, α = {alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_norm_rejects_foreign_variables() {
        let space = da_space(2, 1, 5);
        let err = space.monomial_norm_squared(&Monomial::new(vec![1, 0, 2])).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn component_dims_scale_with_the_free_rank() {
        let space = da_space(2, 3, 5);
        assert_eq!(space.component_dim(0), 3);
        assert_eq!(space.component_dim(1), 6);
        assert_eq!(space.component_dim(4), 15);
    }
}
