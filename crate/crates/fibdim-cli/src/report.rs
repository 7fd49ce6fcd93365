//! Report structures for every subcommand, in machine-readable (JSON)
//! and human-readable forms.
//!
//! The JSON form is the committed surface: identical inputs, seed and cap
//! produce byte-identical documents, so it carries no timing and renders
//! every rational as an exact string.  Elapsed time is appended to the
//! human form only, by the driver.

use fibdim::Rat;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// SHA-256 digest of a module's canonical serialization, with the scheme
/// prefixed so reports are self-describing.
pub fn content_digest(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{:x}", hasher.finalize())
}

/// Exact decimal-free rendering of a rational ("p" or "p/q").
pub fn rat_text(r: &Rat) -> String {
    r.to_string()
}

/// A point as its list of exact coordinate strings.
pub fn point_texts(point: &[Rat]) -> Vec<String> {
    point.iter().map(rat_text).collect()
}

/// Echo of one input file as parsed.
#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub rank: usize,
    pub generators: usize,
    pub homogeneous: bool,
}

impl InputEcho {
    fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "  input:  {}", self.path);
        if let Some(label) = &self.label {
            let _ = writeln!(s, "  label:  {label}");
        }
        let _ = writeln!(
            s,
            "  module: n = {}, N = {}, {} generator{}, {}",
            self.n,
            self.rank,
            self.generators,
            if self.generators == 1 { "" } else { "s" },
            if self.homogeneous { "homogeneous" } else { "inhomogeneous" }
        );
        let _ = writeln!(s, "  digest: {}", self.digest);
        s
    }
}

/// `fd` subcommand report.
#[derive(Debug, Serialize)]
pub struct FdReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translate: Option<Vec<String>>,
    /// Cap used by the Hilbert-based methods; absent for inhomogeneous
    /// input, where only the generic-rank method applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub fd: usize,
    pub methods: BTreeMap<String, usize>,
    pub agree: bool,
    pub witness_point: Vec<String>,
    pub warnings: Vec<String>,
}

impl FdReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "fiber dimension");
        s.push_str(&self.input.human());
        if let Some(t) = &self.translate {
            let _ = writeln!(s, "  translate: ({})", t.join(", "));
        }
        let _ = writeln!(s, "  fd = {}", self.fd);
        let _ = writeln!(s, "  methods:");
        for (name, value) in &self.methods {
            let _ = writeln!(s, "    {name:<16} {value}");
        }
        let _ = writeln!(s, "  agree: {}", yes_no(self.agree));
        let _ = writeln!(
            s,
            "  witness point: {}",
            format!("({})", self.witness_point.join(", "))
        );
        if let Some(cap) = self.cap {
            let _ = writeln!(s, "  cap used: {cap}");
        }
        let _ = writeln!(s, "  seed: {}", self.seed);
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    }
}

/// `hilbert` subcommand report.
#[derive(Debug, Serialize)]
pub struct HilbertReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub cap: usize,
    /// dims[k] = dim M_k for k = 0..=cap.
    pub dims: Vec<usize>,
    /// partial_sums[k] = Σ_{j<k} dim M_j for k = 0..=cap+1.
    pub partial_sums: Vec<usize>,
    pub stabilization_degree: usize,
    /// Stabilized (n−1)-th difference of k ↦ dim M_k: the fiber dimension.
    pub leading_value: usize,
}

impl HilbertReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "hilbert table");
        s.push_str(&self.input.human());
        let _ = writeln!(s, "  cap used: {}", self.cap);
        let _ = writeln!(s, "  degree k | dim M_k | sum over j <= k");
        for (k, &d) in self.dims.iter().enumerate() {
            let _ = writeln!(s, "  {k:>8} | {d:>7} | {:>15}", self.partial_sums[k + 1]);
        }
        let _ = writeln!(s, "  stabilization degree: {}", self.stabilization_degree);
        let _ = writeln!(s, "  leading value (fd): {}", self.leading_value);
        s
    }
}

/// `samuel` subcommand report.
#[derive(Debug, Serialize)]
pub struct SamuelReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub cap: usize,
    pub c_t: usize,
    pub c_s: usize,
    pub fd_limit: usize,
    pub stabilization_degree: usize,
    /// quotient_dims[k] = dim (Y + M_k)/M_k for k = 0..=cap+1.
    pub quotient_dims: Vec<usize>,
}

impl SamuelReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "samuel multiplicities");
        s.push_str(&self.input.human());
        let _ = writeln!(s, "  c(T) = {}   (ambient tuple; equals N)", self.c_t);
        let _ = writeln!(s, "  c(S) = {}   (quotient tuple)", self.c_s);
        let _ = writeln!(s, "  fd   = {}   (limit formula)", self.fd_limit);
        let _ = writeln!(
            s,
            "  identity c(T) = c(S) + fd: {} = {} + {}",
            self.c_t, self.c_s, self.fd_limit
        );
        let _ = writeln!(s, "  stabilization degree: {}", self.stabilization_degree);
        let _ = writeln!(s, "  cap used: {}", self.cap);
        s
    }
}

/// One witness as its list of component strings in term syntax.
pub type WitnessTexts = Vec<String>;

/// `lattice` subcommand report.
#[derive(Debug, Serialize)]
pub struct LatticeReport {
    pub command: &'static str,
    pub inputs: Vec<InputEcho>,
    pub seed: u64,
    pub cap: usize,
    pub fd1: usize,
    pub fd2: usize,
    pub fd_sum: usize,
    pub fd_intersection: usize,
    pub d_prime: usize,
    pub equality_holds: bool,
    pub point: Vec<String>,
    pub witness_count: usize,
    /// Present only under --witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessTexts>>,
    /// Human-form witnesses, never serialized.
    #[serde(skip)]
    pub witnesses_human: Vec<String>,
}

impl LatticeReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lattice identity");
        for input in &self.inputs {
            s.push_str(&input.human());
        }
        let _ = writeln!(
            s,
            "  fd(M1) = {}, fd(M2) = {}, fd(M1+M2) = {}",
            self.fd1, self.fd2, self.fd_sum
        );
        let _ = writeln!(
            s,
            "  fd(M1 ∩ M2) = {}   (degreewise intersection, cap {})",
            self.fd_intersection, self.cap
        );
        let _ = writeln!(
            s,
            "  identity fd(M1+M2) + fd(M1∩M2) = fd(M1) + fd(M2): {} + {} = {} + {} — {}",
            self.fd_sum,
            self.fd_intersection,
            self.fd1,
            self.fd2,
            if self.equality_holds { "holds" } else { "VIOLATED" }
        );
        let _ = writeln!(s, "  d' = {}", self.d_prime);
        let _ = writeln!(s, "  point: ({})", self.point.join(", "));
        let _ = writeln!(s, "  witnesses: {}", self.witness_count);
        for (i, w) in self.witnesses_human.iter().enumerate() {
            let _ = writeln!(s, "    witness {}: {w}", i + 1);
        }
        let _ = writeln!(s, "  seed: {}", self.seed);
        s
    }
}

/// `witness` subcommand report.
#[derive(Debug, Serialize)]
pub struct WitnessCmdReport {
    pub command: &'static str,
    pub inputs: Vec<InputEcho>,
    pub seed: u64,
    pub fd1: usize,
    pub fd2: usize,
    pub fd_sum: usize,
    pub d_prime: usize,
    /// Generic rank of the stacked witnesses; certifies
    /// fd1 + fd2 ≥ fd_sum + witness_rank.
    pub witness_rank: usize,
    pub point: Vec<String>,
    pub witnesses: Vec<WitnessTexts>,
    #[serde(skip)]
    pub witnesses_human: Vec<String>,
}

impl WitnessCmdReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "intersection witnesses");
        for input in &self.inputs {
            s.push_str(&input.human());
        }
        let _ = writeln!(
            s,
            "  fd(M1) = {}, fd(M2) = {}, fd(M1+M2) = {}",
            self.fd1, self.fd2, self.fd_sum
        );
        let _ = writeln!(s, "  d' = fd(M1) + fd(M2) − fd(M1+M2) = {}", self.d_prime);
        let _ = writeln!(s, "  witness rank: {}", self.witness_rank);
        let _ = writeln!(
            s,
            "  inequality fd(M1) + fd(M2) ≥ fd(M1+M2) + rank: {} + {} ≥ {} + {}",
            self.fd1, self.fd2, self.fd_sum, self.witness_rank
        );
        let _ = writeln!(s, "  point: ({})", self.point.join(", "));
        for (i, w) in self.witnesses_human.iter().enumerate() {
            let _ = writeln!(s, "  witness {}: {w}", i + 1);
        }
        let _ = writeln!(s, "  seed: {}", self.seed);
        s
    }
}

/// Axiom-check slice of a model report.
#[derive(Debug, Serialize)]
pub struct AxiomEcho {
    pub degree_shift: bool,
    pub spanning: bool,
    /// Always false: closed range is not checkable at a truncation.
    pub closed_range_checked: bool,
    pub cap: usize,
}

/// Kernel-evaluation slice of a model report.
#[derive(Debug, Serialize)]
pub struct KernelEcho {
    pub z: Vec<String>,
    pub w: Vec<String>,
    pub truncation: usize,
    pub value: String,
}

/// `model` subcommand report.
#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub command: &'static str,
    pub preset: String,
    pub input: InputEcho,
    pub cap: usize,
    /// The first few weights a_0, a_1, … as exact strings.
    pub weight_prefix: Vec<String>,
    /// projection_dims[k] = dim P_k Y for k = 0..=cap+1.
    pub projection_dims: Vec<usize>,
    /// fd via the projection formula: stabilized n-th difference of
    /// k ↦ dim P_k Y, n!-normalized.
    pub fd_projection: usize,
    pub axioms: AxiomEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelEcho>,
}

impl ModelReport {
    pub fn human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graded model space: {}", self.preset);
        s.push_str(&self.input.human());
        let _ = writeln!(s, "  weights: {}, …", self.weight_prefix.join(", "));
        let _ = writeln!(s, "  cap used: {}", self.cap);
        let _ = writeln!(s, "  k | dim P_k Y");
        for (k, &d) in self.projection_dims.iter().enumerate() {
            let _ = writeln!(s, "  {k:>2} | {d}");
        }
        let _ = writeln!(s, "  fd via projection formula: {}", self.fd_projection);
        let _ = writeln!(
            s,
            "  axioms: degree shift {}, spanning {}, closed range not checkable at a truncation",
            yes_no(self.axioms.degree_shift),
            yes_no(self.axioms.spanning)
        );
        if let Some(kernel) = &self.kernel {
            let _ = writeln!(
                s,
                "  kernel K(z, w) truncated at {}: z = ({}), w = ({}) → {}",
                kernel.truncation,
                kernel.z.join(", "),
                kernel.w.join(", "),
                kernel.value
            );
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Render any report as its machine-readable JSON document.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}
