//! Exact-rational polynomial machinery for the MoM results: interpolation of
//! counts, degree certification against the growth laws, and the golden
//! reference table of pre-expanded polynomials.

use crate::counting::{count_constrained_so, count_constrained_sp, CountConfig};
use crate::error::{Error, Result};
use crate::numeric::{interpolate, rational};
use crate::{Count, Group, Rational, RationalPolynomial};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::OnceLock;

/// Wire format of a polynomial: ascending coefficients in canonical
/// lowest-terms strings, one per degree. This is the contract for the CLI and
/// the golden-table file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialJson {
    pub degree: usize,
    pub coefficients: Vec<String>,
}

/// Renders a rational in canonical lowest-terms form (`p` or `p/q`).
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn polynomial_to_json(p: &RationalPolynomial) -> PolynomialJson {
    if p.is_zero() {
        return PolynomialJson { degree: 0, coefficients: vec!["0".into()] };
    }
    PolynomialJson {
        degree: p.degree(),
        coefficients: p.coefficients().iter().map(rational_string).collect(),
    }
}

pub fn polynomial_from_json(json: &PolynomialJson) -> Result<RationalPolynomial> {
    if json.coefficients.len() != json.degree + 1 {
        return Err(Error::invalid(format!(
            "polynomial of degree {} must list {} coefficients, got {}",
            json.degree,
            json.degree + 1,
            json.coefficients.len()
        )));
    }
    let coeffs: Result<Vec<Rational>> = json
        .coefficients
        .iter()
        .map(|s| {
            Rational::from_str(s)
                .map_err(|e| Error::invalid(format!("bad rational {s:?}: {e}")))
        })
        .collect();
    let p = RationalPolynomial::new(coeffs?);
    if !p.is_zero() && p.degree() != json.degree {
        return Err(Error::invalid(format!(
            "leading coefficient is zero: stated degree {} but actual {}",
            json.degree,
            p.degree()
        )));
    }
    Ok(p)
}

/// Exact evaluation at an integer argument.
pub fn evaluate(p: &RationalPolynomial, n: i64) -> Rational {
    p.evaluate(&rational(n))
}

/// A certified MoM polynomial.
#[derive(Debug, Clone)]
pub struct MomResult {
    pub group: Group,
    pub k: usize,
    pub beta: usize,
    pub polynomial: RationalPolynomial,
    pub expected_degree: usize,
    pub leading: Rational,
}

/// Computes `MoM_G(N)(k, beta)` as an exact polynomial: counts at
/// `N = 0..=D` are interpolated, then the result is certified by (a) a fresh
/// count at the extra node `D+1`, and (b) the degree and leading-positivity
/// laws. Counts at distinct `N` run in parallel.
pub fn mom_polynomial(group: Group, k: usize, beta: usize, cfg: &CountConfig) -> Result<MomResult> {
    if k < 1 || beta < 1 {
        return Err(Error::invalid("k and beta must be >= 1"));
    }
    let degree = group.mom_degree(k, beta);
    let counts: Result<Vec<Count>> = (0..=degree as i64 + 1)
        .into_par_iter()
        .map(|n| {
            let result = match group {
                Group::Sp => count_constrained_sp(n, k, beta, cfg)?,
                Group::So => count_constrained_so(n, k, beta, cfg)?,
            };
            Ok(result.value)
        })
        .collect();
    let counts = counts?;
    let samples: Vec<(Rational, Rational)> = counts
        .iter()
        .take(degree + 1)
        .enumerate()
        .map(|(n, c)| (rational(n as i64), Rational::from_integer(BigInt::from(c.clone()))))
        .collect();
    let polynomial = interpolate(&samples)?;
    // Certification node: a degree-D fit through D+1 points would silently
    // mask a counting bug without it.
    let extra = evaluate(&polynomial, degree as i64 + 1);
    let fresh = Rational::from_integer(BigInt::from(counts[degree + 1].clone()));
    if extra != fresh {
        return Err(Error::Integrity(format!(
            "{group}(k={k}, beta={beta}): interpolant predicts {extra} at N={} but the count is {fresh}",
            degree + 1
        )));
    }
    if polynomial.is_zero() || polynomial.degree() != degree {
        return Err(Error::Integrity(format!(
            "{group}(k={k}, beta={beta}): certified degree {} differs from the expected {degree}",
            polynomial.degree()
        )));
    }
    let leading = polynomial.leading();
    if !leading.is_positive() {
        return Err(Error::Integrity(format!(
            "{group}(k={k}, beta={beta}): leading coefficient {leading} is not positive"
        )));
    }
    Ok(MomResult { group, k, beta, polynomial, expected_degree: degree, leading })
}

#[derive(Debug, Deserialize)]
struct GoldenEntry {
    group: Group,
    k: usize,
    beta: usize,
    polynomial: PolynomialJson,
}

#[derive(Debug, Deserialize)]
struct GoldenTable {
    entries: Vec<GoldenEntry>,
}

/// Raw bytes of the shipped golden table (its checksum is pinned in tests).
pub const GOLDEN_TABLE_JSON: &str = include_str!("../data/golden.json");

fn golden_table() -> &'static Vec<(Group, usize, usize, RationalPolynomial)> {
    static TABLE: OnceLock<Vec<(Group, usize, usize, RationalPolynomial)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let table: GoldenTable =
            serde_json::from_str(GOLDEN_TABLE_JSON).expect("golden table must parse");
        table
            .entries
            .into_iter()
            .map(|e| {
                let p = polynomial_from_json(&e.polynomial).expect("golden polynomial must parse");
                (e.group, e.k, e.beta, p)
            })
            .collect()
    })
}

/// Parameters present in the golden table, in file order.
pub fn reference_entries() -> Vec<(Group, usize, usize)> {
    golden_table().iter().map(|(g, k, b, _)| (*g, *k, *b)).collect()
}

/// The pre-expanded reference polynomial, when the table has the entry.
pub fn reference_polynomial(group: Group, k: usize, beta: usize) -> Option<RationalPolynomial> {
    golden_table()
        .iter()
        .find(|(g, kk, bb, _)| *g == group && *kk == k && *bb == beta)
        .map(|(_, _, _, p)| p.clone())
}
