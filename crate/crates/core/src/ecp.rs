//! Error-correcting pairs.
//!
//! `(A, B)` is a t-error-correcting pair for `C` when `A ⋆ B ⊥ C`,
//! `dim A > t`, `d(B^⊥) > t` and `d(A) + d(C) > n`. The orthogonality is
//! checked against the span of all pairwise products.

use crate::code::{evaluate_monomial, star_product_orthogonal, CodeError, Distance, LinearCode, Provenance, ToricCode};
use crate::gf::{Fe, FieldSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EcpError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("no minimum distance available for {0}")]
    DistanceUnavailable(&'static str),
    #[error("constructed pair is not orthogonal to the code")]
    NotOrthogonal,
}

/// Known distances; missing entries are brute-forced within the budget.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EcpDistances {
    pub a: Option<Distance>,
    pub c: Option<Distance>,
    pub b_perp: Option<Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcpReport {
    pub n: usize,
    pub t: usize,
    /// `A ⋆ B ⊥ C`
    pub orthogonal: bool,
    pub dim_a: usize,
    /// `dim A > t`
    pub dim_a_exceeds_t: bool,
    pub d_b_perp: Distance,
    /// `d(B^⊥) > t`
    pub d_b_perp_exceeds_t: bool,
    pub d_a: Distance,
    pub d_c: Distance,
    /// `d(A) + d(C) > n`
    pub distance_sum_exceeds_n: bool,
}

impl EcpReport {
    pub fn all_hold(&self) -> bool {
        self.orthogonal && self.dim_a_exceeds_t && self.d_b_perp_exceeds_t && self.distance_sum_exceeds_n
    }
}

fn distance_of(
    which: &'static str,
    known: Option<Distance>,
    code: impl FnOnce() -> LinearCode,
    budget: u64,
) -> Result<Distance, EcpError> {
    if let Some(d) = known {
        return Ok(d);
    }
    match code().min_distance_bruteforce(budget) {
        Ok(d) => Ok(Distance::new(d, Provenance::BruteForce)),
        Err(CodeError::BudgetExceeded { .. }) => Err(EcpError::DistanceUnavailable(which)),
        Err(e) => Err(e.into()),
    }
}

/// Evaluates the four pair conditions.
pub fn is_ecp(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    t: usize,
    distances: &EcpDistances,
    budget: u64,
) -> Result<EcpReport, EcpError> {
    let n = c.len();
    for other in [a, b] {
        if other.len() != n {
            return Err(CodeError::LengthMismatch {
                expected: n,
                got: other.len(),
            }
            .into());
        }
    }
    let orthogonal = star_product_orthogonal(a, b, c)?;
    let d_a = distance_of("A", distances.a, || a.clone(), budget)?;
    let d_c = distance_of("C", distances.c, || c.clone(), budget)?;
    let d_b_perp = distance_of("B^⊥", distances.b_perp, || b.dual(), budget)?;
    Ok(EcpReport {
        n,
        t,
        orthogonal,
        dim_a: a.dimension(),
        dim_a_exceeds_t: a.dimension() > t,
        d_b_perp,
        d_b_perp_exceeds_t: d_b_perp.value > t,
        d_a,
        d_c,
        distance_sum_exceeds_n: d_a.value + d_c.value > n,
    })
}

/// `A = C_helper`, `B` the dual of the product code `C_{U+Ũ}`.
#[derive(Debug, Clone)]
pub struct ToricPair {
    pub a: LinearCode,
    pub b: LinearCode,
    /// The product code whose dual is `B`.
    pub sum: ToricCode,
}

/// Builds the pair for `code` from the helper code. `B` comes from the
/// exponent complement of `U + Ũ`, and `A ⋆ B ⊥ C` is re-verified
/// numerically.
pub fn toric_pair(code: &ToricCode, helper: &ToricCode) -> Result<ToricPair, EcpError> {
    if !code.is_full_torus() || !helper.is_full_torus() {
        return Err(CodeError::NotFullTorus.into());
    }
    if code.field() != helper.field() {
        return Err(CodeError::FieldMismatch.into());
    }
    let q = code.field().size();
    let sum_exponents = code
        .exponents()
        .sumset(helper.exponents())
        .map_err(CodeError::from)?
        .reduce_into_h(q)
        .map_err(CodeError::from)?;
    let sum = ToricCode::new(code.field(), &sum_exponents)?;
    let a = helper.linear();
    let b = sum.dual_code()?.linear();
    if !star_product_orthogonal(&a, &b, &code.linear())? {
        return Err(EcpError::NotOrthogonal);
    }
    Ok(ToricPair { a, b, sum })
}

/// `<π(X^u), π(X^v)>` over the full torus of dimension `u.len()`.
pub fn inner_product_check(u: &[i64], v: &[i64], field: &FieldSpec) -> Fe {
    field
        .torus_points(u.len())
        .iter()
        .fold(Fe::ZERO, |acc, p| {
            field.add(acc, field.mul(evaluate_monomial(field, u, p), evaluate_monomial(field, v, p)))
        })
}
