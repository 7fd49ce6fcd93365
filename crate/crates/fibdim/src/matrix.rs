//! Exact linear algebra: dense matrices over any exact scalar, plus a
//! sparse integer echelon engine for the graded component computations.
//!
//! Ranks and determinants use fraction-free (Bareiss-style) elimination:
//! every division is by an earlier pivot and is exact in any integral
//! domain by the Sylvester identity, which keeps intermediate entries at
//! minor-determinant size instead of exploding.  Over polynomial entries
//! the pivot search prefers the lowest-degree nonzero entry.
//!
//! Solving and row-space canonicalization work over a field (here ℚ) with
//! plain reduced row echelon form — those matrices are small.  The heavy
//! component-basis work runs on `SparseVec`/`Echelon`: integer rows with
//! per-step content stripping, inserted online against pivot rows.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, IntegralDomain, RingScalar};
use crate::{Int, Rat};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    /// Matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows: {} vs {}",
                    r.len(),
                    ncols
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    /// Matrix built entrywise.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl<T: RingScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        Matrix::from_fn(k, k, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Matrix product.
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(r, k)].clone() * other[(k, c)].clone();
            }
            acc
        }))
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "applying {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    acc = acc + self[(r, c)].clone() * v[c].clone();
                }
                acc
            })
            .collect())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Rank by fraction-free elimination with full pivoting; valid over any
/// integral domain.  Pivot choice takes the nonzero entry of least
/// `pivot_weight` in the remaining block, so polynomial matrices pivot on
/// their lowest-degree entries.
pub fn rank_fraction_free<T: IntegralDomain>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev: Option<T> = None;
    let mut k = 0;
    while k < rows && k < cols {
        let mut pivot: Option<(usize, usize, u64)> = None;
        for r in k..rows {
            for c in k..cols {
                if !a[(r, c)].is_zero() {
                    let w = a[(r, c)].pivot_weight();
                    if pivot.map_or(true, |(_, _, pw)| w < pw) {
                        pivot = Some((r, c, w));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = pivot else { break };
        a.swap_rows(k, pr);
        a.swap_cols(k, pc);
        for r in k + 1..rows {
            for c in k + 1..cols {
                let num = a[(k, k)].clone() * a[(r, c)].clone()
                    - a[(r, k)].clone() * a[(k, c)].clone();
                let v = match &prev {
                    Some(p) => num.exact_div(p),
                    None => num,
                };
                a.set(r, c, v);
            }
        }
        for r in k + 1..rows {
            a.set(r, k, T::zero());
        }
        prev = Some(a[(k, k)].clone());
        k += 1;
    }
    k
}

/// Rank of a rational matrix.  The independent naive-elimination oracle
/// used to validate this lives in the test suite.
pub fn rank_exact(m: &Matrix<Rat>) -> usize {
    rank_fraction_free(m)
}

/// Symbolic rank of a polynomial matrix over the rational function field;
/// equals the fiber rank at every point outside a proper algebraic set.
pub fn rank_generic(m: &Matrix<crate::poly::MultiPoly>) -> usize {
    rank_fraction_free(m)
}

/// Determinant by cofactor expansion along the first row; exponential in
/// size, used only on the small (≤ ~6×6) matrices of the witness builder,
/// where it avoids pivot-sign bookkeeping entirely.  det of the empty
/// matrix is 1.
pub fn determinant<T: RingScalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    match m.rows {
        0 => T::one(),
        1 => m[(0, 0)].clone(),
        _ => {
            let mut acc = T::zero();
            for c in 0..m.cols {
                if m[(0, c)].is_zero() {
                    continue;
                }
                let cofactor = determinant(&minor(m, 0, c));
                let signed = if c % 2 == 0 {
                    cofactor
                } else {
                    -cofactor
                };
                acc = acc + m[(0, c)].clone() * signed;
            }
            acc
        }
    }
}

/// Matrix with row `skip_r` and column `skip_c` removed.
fn minor<T: Clone>(m: &Matrix<T>, skip_r: usize, skip_c: usize) -> Matrix<T> {
    Matrix::from_fn(m.rows - 1, m.cols - 1, |r, c| {
        let rr = if r < skip_r { r } else { r + 1 };
        let cc = if c < skip_c { c } else { c + 1 };
        m[(rr, cc)].clone()
    })
}

/// Classical adjugate: adj(m)·m = m·adj(m) = det(m)·I.
pub fn adjugate<T: RingScalar>(m: &Matrix<T>) -> Matrix<T> {
    assert_eq!(m.rows, m.cols, "adjugate of a non-square matrix");
    Matrix::from_fn(m.rows, m.cols, |r, c| {
        // adj[r][c] is the (c, r) cofactor.
        let d = determinant(&minor(m, c, r));
        if (r + c) % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: FieldScalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m[(row, col)].clone();
        for c in col..m.cols {
            let v = m[(row, c)].clone() / inv.clone();
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for c in col..m.cols {
                let v = m[(r, c)].clone() - factor.clone() * m[(row, c)].clone();
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn row_basis(m: &Matrix<Rat>) -> Matrix<Rat> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let rank = pivots.len();
    Matrix::from_fn(rank, m.cols, |r, c| a[(r, c)].clone())
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse(m: &Matrix<Rat>) -> Option<Matrix<Rat>> {
    assert_eq!(m.rows, m.cols);
    let k = m.rows;
    let mut aug = Matrix::from_fn(k, 2 * k, |r, c| {
        if c < k {
            m[(r, c)].clone()
        } else if c - k == r {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(Matrix::from_fn(k, k, |r, c| aug[(r, c + k)].clone()))
}

/// Solve xᵀ·m = rhs, expressing rhs as a combination of the rows of m.
///
/// rhs must have `m.cols()` entries; the solution has `m.rows()` entries.
/// Free coordinates are set to zero, so the support falls on the earliest
/// rows able to produce rhs — callers exploit this by ordering rows by
/// degree.  An rhs outside the row space yields `Error::Inconsistent`.
pub fn solve_exact(m: &Matrix<Rat>, rhs: &[Rat]) -> Result<Vec<Rat>> {
    if rhs.len() != m.cols {
        return Err(Error::ShapeMismatch(format!(
            "rhs length {} does not match column count {}",
            rhs.len(),
            m.cols
        )));
    }
    // Augmented system on the transpose: columns of mᵀ are the rows of m.
    let mut aug = Matrix::from_fn(m.cols, m.rows + 1, |r, c| {
        if c < m.rows {
            m[(c, r)].clone()
        } else {
            rhs[r].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.contains(&m.rows) {
        return Err(Error::Inconsistent("rhs outside the row space".into()));
    }
    let mut x = vec![Rat::zero(); m.rows];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = aug[(i, m.rows)].clone();
    }
    Ok(x)
}

// ---------------------------------------------------------------------
// Sparse integer echelon engine
// ---------------------------------------------------------------------

/// Sparse integer row: strictly increasing column indices, no zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Int)>,
}

impl SparseVec {
    /// Build from (column, value) pairs; sorts, merges duplicates, drops
    /// zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Int)>) -> Self {
        pairs.sort_by_key(|&(c, _)| c);
        let mut entries: Vec<(usize, Int)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Clear denominators of a dense rational row.
    pub fn from_rat_row(row: &[Rat]) -> Self {
        let mut denom = Int::one();
        for v in row {
            if !v.is_zero() {
                denom = denom.lcm(v.denom());
            }
        }
        SparseVec::from_pairs(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.numer() * (&denom / v.denom())))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading_col(&self) -> Option<usize> {
        self.entries.first().map(|&(c, _)| c)
    }

    pub fn entries(&self) -> &[(usize, Int)] {
        &self.entries
    }

    pub fn coeff(&self, col: usize) -> Option<&Int> {
        self.entries
            .binary_search_by_key(&col, |&(c, _)| c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Divide out the gcd of all entries and make the leading entry
    /// positive.
    fn normalize(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut g = Int::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if self.entries[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in &mut self.entries {
                *v = v.exact_divides(&g);
            }
        }
    }

    /// self ← a·self + b·other, merged in one pass.
    fn axpy(&self, a: &Int, b: &Int, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ci, vi) = &self.entries[i];
            let (cj, vj) = &other.entries[j];
            match ci.cmp(cj) {
                std::cmp::Ordering::Less => {
                    out.push((*ci, a * vi));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*cj, b * vj));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a * vi + b * vj;
                    if !v.is_zero() {
                        out.push((*ci, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (c, v) in &self.entries[i..] {
            out.push((*c, a * v));
        }
        for (c, v) in &other.entries[j..] {
            out.push((*c, b * v));
        }
        SparseVec { entries: out }
    }

    /// Dense rational form with the given width.
    pub fn to_rat_row(&self, cols: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); cols];
        for (c, v) in &self.entries {
            out[*c] = Rat::from_integer(v.clone());
        }
        out
    }

    /// Shift all column indices by a signed offset.
    fn shift_cols(&self, offset: isize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(c, v)| ((*c as isize + offset) as usize, v.clone()))
                .collect(),
        }
    }
}

trait ExactDivides {
    fn exact_divides(&self, g: &Int) -> Int;
}

impl ExactDivides for Int {
    fn exact_divides(&self, g: &Int) -> Int {
        let q = self / g;
        debug_assert!(&q * g == *self);
        q
    }
}

/// Online row-echelon accumulator over ℤ (representing a ℚ-row space).
///
/// Rows are reduced against existing pivots by cross-multiplication (no
/// divisions except exact content stripping), so everything stays in ℤ
/// while spanning the same ℚ-row space.  Pivot rows keep distinct leading
/// columns, giving an echelon basis usable for rank, span membership and
/// intersection extraction.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    lead_to_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce a row against the pivots; the remainder is zero
    /// exactly when the input lies in the accumulated row space.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let Some(lead) = v.leading_col() else { return v };
            let Some(&ri) = self.lead_to_row.get(&lead) else { return v };
            let pivot = &self.rows[ri];
            let a = pivot.coeff(lead).expect("pivot leading entry").clone();
            let b = -v.coeff(lead).expect("leading entry").clone();
            v = v.axpy(&a, &b, pivot);
            v.normalize();
        }
    }

    /// Insert a row; returns true when it was independent (rank grew).
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some(lead) = r.leading_col() else { return false };
        r.normalize();
        self.lead_to_row.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Pivot rows sorted by leading column.
    pub fn into_sorted_rows(mut self) -> Vec<SparseVec> {
        self.rows.sort_by_key(|r| r.leading_col());
        self.rows
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

/// Basis of the intersection of two ℚ-row spaces given by sparse integer
/// rows of width `cols`, via the Zassenhaus trick: echelon-reduce the
/// block rows [a | a] and [b | 0]; rows whose left half vanished have
/// right halves spanning the intersection.
pub fn sparse_rowspace_intersect(a: &[SparseVec], b: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for r in a {
        let doubled = SparseVec::from_pairs(
            r.entries()
                .iter()
                .flat_map(|(c, v)| [(*c, v.clone()), (*c + cols, v.clone())])
                .collect(),
        );
        ech.insert(doubled);
    }
    for r in b {
        ech.insert(r.clone());
    }
    ech.into_sorted_rows()
        .into_iter()
        .filter(|r| r.leading_col().map_or(false, |c| c >= cols))
        .map(|r| r.shift_cols(-(cols as isize)))
        .collect()
}

/// Intersection of the row spaces of two rational matrices (same width);
/// returns a matrix whose rows form a basis.
pub fn rowspace_intersect(a: &Matrix<Rat>, b: &Matrix<Rat>) -> Result<Matrix<Rat>> {
    if a.cols != b.cols {
        return Err(Error::ShapeMismatch(format!(
            "intersecting row spaces of widths {} and {}",
            a.cols, b.cols
        )));
    }
    let cols = a.cols;
    let sa: Vec<SparseVec> = (0..a.rows).map(|r| SparseVec::from_rat_row(a.row(r))).collect();
    let sb: Vec<SparseVec> = (0..b.rows).map(|r| SparseVec::from_rat_row(b.row(r))).collect();
    let rows = sparse_rowspace_intersect(&sa, &sb, cols);
    let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.to_rat_row(cols)).collect();
    if dense.is_empty() {
        return Ok(Matrix::zeros(0, cols));
    }
    Matrix::from_rows(dense)
}
