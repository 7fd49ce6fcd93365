//! The `.fmod` module-description format: parsing and canonical
//! serialization.
//!
//! A file describes one finitely generated submodule of ℚ[z₁,…,zₙ]^N as a
//! line-oriented text document:
//!
//! ```text
//! # comments run from '#' to the end of the line
//! n 2                      # number of variables (required, once)
//! N 1                      # rank of the ambient free module (required, once)
//! label maximal ideal      # optional free-text label
//! gen                      # opens a generator block of exactly N poly lines
//! poly 1:1,0               # terms are coeff:e1,...,en; coeff is p or p/q
//! gen
//! poly 1:0,1 -3/2:2,0      # several terms, whitespace-separated
//! ```
//!
//! A component that is identically zero is written as the single token
//! `0`.  Coefficients are exact integers or rationals — no floating-point
//! literals are accepted.  Duplicate monomials within one line are summed.
//!
//! [`serialize`] emits a canonical form (terms once per monomial, leading
//! term first, no zero coefficients), so parse → serialize → parse is the
//! identity on values and serialize is a fixpoint on canonical text.

use fibdim::graded::Submodule;
use fibdim::poly::{Monomial, MultiPoly, PolyVec};
use fibdim::{Int, Rat};
use num_traits::Zero;
use std::fmt;

/// A parsed module file: the submodule plus its optional label.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub module: Submodule,
    pub label: Option<String>,
}

/// Parse failure with the 1-based line it occurred on (0 for end-of-file
/// conditions).
#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "at end of file: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parse a `.fmod` document.
pub fn parse(text: &str) -> Result<ModuleSpec, ParseError> {
    let mut n: Option<usize> = None;
    let mut rank: Option<usize> = None;
    let mut label: Option<String> = None;
    let mut generators: Vec<PolyVec> = Vec::new();
    // Components of the generator block currently being read, if any.
    let mut open_gen: Option<Vec<MultiPoly>> = None;
    let mut open_gen_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };

        match keyword {
            "n" => {
                if n.is_some() {
                    return err(lineno, "duplicate 'n' directive");
                }
                n = Some(parse_count(lineno, rest, "n")?);
            }
            "N" => {
                if rank.is_some() {
                    return err(lineno, "duplicate 'N' directive");
                }
                rank = Some(parse_count(lineno, rest, "N")?);
            }
            "label" => {
                if label.is_some() {
                    return err(lineno, "duplicate 'label' directive");
                }
                if rest.is_empty() {
                    return err(lineno, "'label' needs text after it");
                }
                label = Some(rest.to_string());
            }
            "gen" => {
                if !rest.is_empty() {
                    return err(lineno, "'gen' takes no arguments");
                }
                let (_, rank) = header(lineno, n, rank)?;
                close_gen(&mut open_gen, open_gen_line, rank, &mut generators)?;
                open_gen = Some(Vec::new());
                open_gen_line = lineno;
            }
            "poly" => {
                let (n, rank) = header(lineno, n, rank)?;
                let Some(components) = open_gen.as_mut() else {
                    return err(lineno, "'poly' outside a 'gen' block");
                };
                if components.len() == rank {
                    return err(
                        lineno,
                        format!("generator already has N = {rank} components; expected 'gen'"),
                    );
                }
                components.push(parse_poly(lineno, rest, n)?);
            }
            other => {
                return err(
                    lineno,
                    format!("unknown directive '{other}' (expected n, N, label, gen or poly)"),
                );
            }
        }
    }

    let (n, rank) = header(0, n, rank)?;
    close_gen(&mut open_gen, open_gen_line, rank, &mut generators)?;
    let module = Submodule::new(n, rank, generators)
        .map_err(|e| ParseError { line: 0, message: e.to_string() })?;
    Ok(ModuleSpec { module, label })
}

fn header(
    lineno: usize,
    n: Option<usize>,
    rank: Option<usize>,
) -> Result<(usize, usize), ParseError> {
    match (n, rank) {
        (Some(n), Some(rank)) => Ok((n, rank)),
        (None, _) => err(lineno, "'n' must be declared before this point"),
        (_, None) => err(lineno, "'N' must be declared before this point"),
    }
}

fn close_gen(
    open: &mut Option<Vec<MultiPoly>>,
    opened_at: usize,
    rank: usize,
    generators: &mut Vec<PolyVec>,
) -> Result<(), ParseError> {
    if let Some(components) = open.take() {
        if components.len() != rank {
            return err(
                opened_at,
                format!(
                    "generator has {} components, expected N = {rank}",
                    components.len()
                ),
            );
        }
        generators.push(PolyVec::new(components));
    }
    Ok(())
}

fn parse_count(lineno: usize, text: &str, what: &str) -> Result<usize, ParseError> {
    let value: usize = text
        .parse()
        .map_err(|_| ParseError {
            line: lineno,
            message: format!("'{what}' needs a positive integer, got '{text}'"),
        })?;
    if value == 0 {
        return err(lineno, format!("'{what}' must be at least 1"));
    }
    Ok(value)
}

fn parse_poly(lineno: usize, text: &str, n: usize) -> Result<MultiPoly, ParseError> {
    if text.is_empty() {
        return err(lineno, "'poly' needs terms or the zero token '0'");
    }
    if text == "0" {
        return Ok(MultiPoly::zero());
    }
    let mut poly = MultiPoly::zero();
    for token in text.split_whitespace() {
        let (coeff, monomial) = parse_term(lineno, token, n)?;
        poly = poly + MultiPoly::term(monomial, coeff);
    }
    Ok(poly)
}

fn parse_term(lineno: usize, token: &str, n: usize) -> Result<(Rat, Monomial), ParseError> {
    let Some((coeff_text, exps_text)) = token.split_once(':') else {
        return err(
            lineno,
            format!("term '{token}' is missing ':' (expected coeff:e1,...,en)"),
        );
    };
    let coeff = parse_rat(coeff_text).map_err(|m| ParseError {
        line: lineno,
        message: format!("term '{token}': {m}"),
    })?;
    let mut exps = Vec::with_capacity(n);
    for part in exps_text.split(',') {
        let e: u32 = part.trim().parse().map_err(|_| ParseError {
            line: lineno,
            message: format!("term '{token}': exponent '{part}' is not a non-negative integer"),
        })?;
        exps.push(e);
    }
    if exps.len() != n {
        return err(
            lineno,
            format!(
                "term '{token}' has {} exponents, expected n = {n}",
                exps.len()
            ),
        );
    }
    Ok((coeff, Monomial::new(exps)))
}

/// Parse an exact rational literal `p` or `p/q` (q positive after
/// normalization).  Floating-point syntax is rejected.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    if text.contains(['.', 'e', 'E']) {
        return Err(format!(
            "'{text}' looks like a floating-point literal; only exact integers and \
             rationals p/q are accepted"
        ));
    }
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let numer: Int = numer_text
        .parse()
        .map_err(|_| format!("'{numer_text}' is not an integer"))?;
    let denom: Int = denom_text
        .parse()
        .map_err(|_| format!("'{denom_text}' is not an integer"))?;
    if denom.is_zero() {
        return Err("denominator must be nonzero".into());
    }
    Ok(Rat::new(numer, denom))
}

/// Parse a comma-separated vector of rational literals.
pub fn parse_rat_vector(text: &str) -> Result<Vec<Rat>, String> {
    text.split(',').map(parse_rat).collect()
}

/// Canonical serialization: directives in fixed order, one generator per
/// `gen` block, each polynomial with its terms leading-first and each
/// monomial appearing once.
pub fn serialize(module: &Submodule, label: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", module.vars()));
    out.push_str(&format!("N {}\n", module.ambient_rank()));
    if let Some(label) = label {
        if !label.is_empty() {
            out.push_str(&format!("label {label}\n"));
        }
    }
    for g in module.generators() {
        out.push_str("gen\n");
        for p in g.entries() {
            out.push_str("poly ");
            out.push_str(&poly_text(p, module.vars()));
            out.push('\n');
        }
    }
    out
}

/// One polynomial as whitespace-separated canonical terms (`0` when zero).
pub fn poly_text(p: &MultiPoly, n: usize) -> String {
    let mut terms: Vec<String> = p.terms().map(|(m, c)| term_text(m, c, n)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.reverse(); // terms() ascends in graded lex order; emit leading first
    terms.join(" ")
}

fn term_text(monomial: &Monomial, coeff: &Rat, n: usize) -> String {
    let exps: Vec<String> = monomial.dense(n).iter().map(u32::to_string).collect();
    format!("{coeff}:{}", exps.join(","))
}

/// A polynomial vector as its list of canonical component strings.
pub fn polyvec_texts(v: &PolyVec, n: usize) -> Vec<String> {
    v.entries().iter().map(|p| poly_text(p, n)).collect()
}
