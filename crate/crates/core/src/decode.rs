//! Kernel-based decoding of toric codes.
//!
//! For a code `C` on exponents `U`, a helper code on `Ũ` and the product
//! code on `U + Ũ`, a received word `y` determines the linear map
//!
//! ```text
//! (g, h) -> (g(P) y(P) - h(P))_P,   g in F_q<Ũ>, h in F_q<U + Ũ>
//! ```
//!
//! Every kernel element has `g` vanishing on the error support as long as
//! the error weight stays below the product code's minimum distance. The
//! message is then the unique solution of the evaluation system restricted
//! to the points where `g` is nonzero.

use crate::code::{
    hamming_weight, CodeError, Codeword, Distance, LinearCode, Provenance, ToricCode, DEFAULT_DISTANCE_BUDGET,
};
use crate::ecp::{self, EcpDistances, EcpError, EcpReport};
use crate::ffla::{FflaError, FqMatrix, Solution};
use crate::gf::{Fe, FieldSpec};
use crate::lattice::{simplex_distance, ExponentSet, LatticeError, LatticePolytope};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecodeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("codes do not form a decoder pair: {0}")]
    MismatchedCodes(String),
    #[error("no minimum distance available for the {0} code")]
    DistanceUnavailable(&'static str),
    #[error("received word has length {got}, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Where a code's exponents come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentSource {
    Polytope(LatticePolytope),
    Exponents(ExponentSet),
}

impl ExponentSource {
    pub fn exponents(&self) -> ExponentSet {
        match self {
            Self::Polytope(p) => p.lattice_points(),
            Self::Exponents(u) => u.clone(),
        }
    }

    fn axis_simplex(&self) -> Option<i64> {
        match self {
            Self::Polytope(p) => p.as_axis_simplex(),
            Self::Exponents(_) => None,
        }
    }
}

/// User-declared distances, consulted only when neither the simplex formula
/// nor a budgeted exhaustive search applies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceOverrides {
    #[serde(default)]
    pub code: Option<usize>,
    #[serde(default)]
    pub helper: Option<usize>,
    #[serde(default)]
    pub sum: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOptions {
    pub budget: u64,
    pub overrides: DistanceOverrides,
}

impl Default for PairOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_DISTANCE_BUDGET,
            overrides: DistanceOverrides::default(),
        }
    }
}

/// The code being decoded, its helper code, their product code and the
/// target error count.
#[derive(Debug, Clone)]
pub struct DecoderPair {
    code: ToricCode,
    helper: ToricCode,
    sum: ToricCode,
    t: usize,
    d_code: Distance,
    d_helper: Distance,
    d_sum: Distance,
}

/// Outcome of checking the three decoding premises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub helper_size: usize,
    pub sum_size: usize,
    pub d_code: Distance,
    pub d_helper: Distance,
    pub d_sum: Distance,
    /// `|Ũ| > t`
    pub helper_exceeds_t: bool,
    /// `d(C_sum) > t`
    pub sum_distance_exceeds_t: bool,
    /// `d(C_helper) > n - d(C)`
    pub helper_distance_exceeds_redundancy: bool,
    /// Largest `t` meeting the first two conditions, when the third holds.
    pub max_t: Option<usize>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.helper_exceeds_t && self.sum_distance_exceeds_t && self.helper_distance_exceeds_redundancy
    }
}

/// A kernel element `(g, h)`, as coefficient vectors over the helper and
/// product exponent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelElement {
    pub g: Vec<Fe>,
    pub h: Vec<Fe>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    ConditionsViolated,
    NoNonzeroLocator,
    RecoveryInconsistent,
    RecoveryAmbiguous,
    ResidualTooHeavy,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ConditionsViolated => "conditions_violated",
            Self::NoNonzeroLocator => "no_nonzero_locator",
            Self::RecoveryInconsistent => "recovery_inconsistent",
            Self::RecoveryAmbiguous => "recovery_ambiguous",
            Self::ResidualTooHeavy => "residual_too_heavy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    Failure(FailureReason),
}

impl DecodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Success => "success",
            Self::Failure(r) => r.as_str(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub message: Option<Vec<Fe>>,
    pub codeword: Option<Codeword>,
    pub error_vector: Option<Vec<Fe>>,
    pub error_support: Vec<usize>,
    pub residual_weight: Option<usize>,
}

impl DecodeOutcome {
    fn failure(reason: FailureReason) -> Self {
        Self {
            status: DecodeStatus::Failure(reason),
            message: None,
            codeword: None,
            error_vector: None,
            error_support: Vec::new(),
            residual_weight: None,
        }
    }

    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }

    pub fn record(&self) -> OutcomeRecord {
        let (status, reason) = match self.status {
            DecodeStatus::Success => ("success", None),
            DecodeStatus::Failure(r) => ("failure", Some(r)),
        };
        OutcomeRecord {
            status: status.to_owned(),
            reason,
            message: self.message.clone(),
            error_support: self.error_support.clone(),
            residual_weight: self.residual_weight,
        }
    }
}

/// JSON form of a [`DecodeOutcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub status: String,
    pub reason: Option<FailureReason>,
    pub message: Option<Vec<Fe>>,
    pub error_support: Vec<usize>,
    pub residual_weight: Option<usize>,
}

fn resolve_distance(
    which: &'static str,
    code: &ToricCode,
    simplex: Option<i64>,
    declared: Option<usize>,
    budget: u64,
) -> Result<Distance, DecodeError> {
    let q = code.field().size();
    if let Some(a) = simplex.filter(|&a| a <= q as i64 - 2) {
        if code.exponents().dim() == 2 {
            return Ok(Distance::new(simplex_distance(q, a)?, Provenance::Formula));
        }
    }
    match code.min_distance_bruteforce(budget) {
        Ok(d) => Ok(Distance::new(d, Provenance::BruteForce)),
        Err(CodeError::BudgetExceeded { .. }) => declared
            .map(|d| Distance::new(d, Provenance::Declared))
            .ok_or(DecodeError::DistanceUnavailable(which)),
        Err(e) => Err(e.into()),
    }
}

impl DecoderPair {
    /// Builds the three full-torus codes and resolves their distances.
    /// The code and helper exponents must already lie in `H`; the product
    /// exponents are reduced into `H`, failing on collisions.
    pub fn new(
        field: &Arc<FieldSpec>,
        code: &ExponentSource,
        helper: &ExponentSource,
        t: usize,
        options: PairOptions,
    ) -> Result<Self, DecodeError> {
        let q = field.size();
        let (u, u_tilde) = (code.exponents(), helper.exponents());
        u.require_in_h(q)?;
        u_tilde.require_in_h(q)?;
        let (sum_exponents, sum_simplex) = match (code, helper) {
            (ExponentSource::Polytope(p), ExponentSource::Polytope(pt)) => {
                let s = p.minkowski_sum(pt);
                (s.lattice_points(), s.as_axis_simplex())
            }
            _ => (u.sumset(&u_tilde)?, None),
        };
        let sum_exponents = sum_exponents.reduce_into_h(q)?;

        let c = ToricCode::new(field, &u)?;
        let c_tilde = ToricCode::new(field, &u_tilde)?;
        let c_sum = ToricCode::new(field, &sum_exponents)?;
        let ov = options.overrides;
        let d_code = resolve_distance("code", &c, code.axis_simplex(), ov.code, options.budget)?;
        let d_helper = resolve_distance("helper", &c_tilde, helper.axis_simplex(), ov.helper, options.budget)?;
        let d_sum = resolve_distance("sum", &c_sum, sum_simplex, ov.sum, options.budget)?;
        Self::from_codes(c, c_tilde, c_sum, t, [d_code, d_helper, d_sum])
    }

    /// Assembles a pair from prebuilt codes and distances
    /// `[d(C), d(C_helper), d(C_sum)]`.
    pub fn from_codes(
        code: ToricCode,
        helper: ToricCode,
        sum: ToricCode,
        t: usize,
        distances: [Distance; 3],
    ) -> Result<Self, DecodeError> {
        let n = code.len();
        if helper.len() != n || sum.len() != n {
            return Err(DecodeError::MismatchedCodes("codes have different lengths".into()));
        }
        if code.field() != helper.field() || code.field() != sum.field() {
            return Err(DecodeError::MismatchedCodes("codes are over different fields".into()));
        }
        if !(code.is_full_torus() && helper.is_full_torus() && sum.is_full_torus()) {
            return Err(DecodeError::Code(CodeError::NotFullTorus));
        }
        let products = code.exponents().sumset(helper.exponents())?.reduce_into_h(code.field().size())?;
        if let Some(w) = products.iter().find(|w| !sum.exponents().contains(w)) {
            return Err(DecodeError::MismatchedCodes(format!(
                "product exponent {w:?} missing from the sum code"
            )));
        }
        if sum.dimension() != sum.exponents().len() || helper.dimension() != helper.exponents().len() {
            return Err(DecodeError::MismatchedCodes("evaluation is not injective".into()));
        }
        let [d_code, d_helper, d_sum] = distances;
        Ok(Self {
            code,
            helper,
            sum,
            t,
            d_code,
            d_helper,
            d_sum,
        })
    }

    pub fn code(&self) -> &ToricCode {
        &self.code
    }

    pub fn helper(&self) -> &ToricCode {
        &self.helper
    }

    pub fn sum(&self) -> &ToricCode {
        &self.sum
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Same codes, different target error count.
    pub fn with_t(&self, t: usize) -> Self {
        Self { t, ..self.clone() }
    }

    pub fn distances(&self) -> [Distance; 3] {
        [self.d_code, self.d_helper, self.d_sum]
    }

    pub fn check_conditions(&self) -> ConditionReport {
        let n = self.len();
        let helper_size = self.helper.exponents().len();
        let helper_exceeds_t = helper_size > self.t;
        let sum_distance_exceeds_t = self.d_sum.value > self.t;
        let helper_distance_exceeds_redundancy = self.d_helper.value + self.d_code.value > n;
        let max_t = helper_distance_exceeds_redundancy
            .then(|| helper_size.min(self.d_sum.value).checked_sub(1))
            .flatten();
        ConditionReport {
            t: self.t,
            n,
            k: self.code.dimension(),
            helper_size,
            sum_size: self.sum.exponents().len(),
            d_code: self.d_code,
            d_helper: self.d_helper,
            d_sum: self.d_sum,
            helper_exceeds_t,
            sum_distance_exceeds_t,
            helper_distance_exceeds_redundancy,
            max_t,
        }
    }

    fn check_len(&self, y: &[Fe]) -> Result<(), DecodeError> {
        if y.len() != self.len() {
            return Err(DecodeError::LengthMismatch {
                expected: self.len(),
                got: y.len(),
            });
        }
        Ok(())
    }

    /// The `n x (|Ũ| + |U+Ũ|)` matrix of `(g, h) -> g*y - h`, one row per
    /// torus point.
    pub fn build_kernel_matrix(&self, y: &[Fe]) -> Result<FqMatrix, DecodeError> {
        self.check_len(y)?;
        let field = self.code.field();
        let gh = self.helper.generator();
        let gs = self.sum.generator();
        let (a, b) = (gh.rows(), gs.rows());
        let mut m = FqMatrix::zeros(field, self.len(), a + b);
        for (p, &yp) in y.iter().enumerate() {
            let row = m.row_mut(p);
            for (i, x) in row[..a].iter_mut().enumerate() {
                *x = field.mul(gh.get(i, p), yp);
            }
            for j in 0..b {
                row[a + j] = field.neg(gs.get(j, p));
            }
        }
        Ok(m)
    }

    /// Kernel basis of the map, split into `(g, h)` blocks, in deterministic
    /// rref order.
    pub fn kernel_elements(&self, y: &[Fe]) -> Result<Vec<KernelElement>, DecodeError> {
        let m = self.build_kernel_matrix(y)?;
        let a = self.helper.exponents().len();
        Ok(m.kernel_basis()
            .into_iter()
            .map(|mut v| {
                let h = v.split_off(a);
                KernelElement { g: v, h }
            })
            .collect())
    }

    /// First kernel basis element with a nonzero locator block.
    pub fn find_locator(&self, y: &[Fe]) -> Result<Result<KernelElement, FailureReason>, DecodeError> {
        Ok(self
            .kernel_elements(y)?
            .into_iter()
            .find(|k| k.g.iter().any(|x| !x.is_zero()))
            .ok_or(FailureReason::NoNonzeroLocator))
    }

    /// Positions where the helper-code function with coefficients `g`
    /// vanishes.
    pub fn zero_set(&self, g: &[Fe]) -> Result<Vec<usize>, DecodeError> {
        Ok(zero_set(&self.helper, g)?)
    }

    /// Solves for the message using only positions outside `zeros`.
    pub fn recover_message(
        &self,
        y: &[Fe],
        zeros: &[usize],
    ) -> Result<Result<Vec<Fe>, FailureReason>, DecodeError> {
        self.check_len(y)?;
        let mut skip = vec![false; self.len()];
        for &z in zeros {
            skip[z] = true;
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !skip[i]).collect();
        let system = self.code.generator().select_columns(&keep).transpose();
        let rhs: Vec<Fe> = keep.iter().map(|&i| y[i]).collect();
        Ok(match system.solve(&rhs) {
            Ok(Solution::Unique(f)) => Ok(f),
            Ok(Solution::Underdetermined { .. }) => Err(FailureReason::RecoveryAmbiguous),
            Err(FflaError::Inconsistent) => Err(FailureReason::RecoveryInconsistent),
            Err(e) => return Err(DecodeError::Code(e.into())),
        })
    }

    /// Full pipeline: locator, zero set, message recovery, re-encoding and a
    /// final residual weight check against `t`.
    pub fn decode(&self, y: &[Fe]) -> Result<DecodeOutcome, DecodeError> {
        self.check_len(y)?;
        if !self.check_conditions().all_hold() {
            return Ok(DecodeOutcome::failure(FailureReason::ConditionsViolated));
        }
        let locator = match self.find_locator(y)? {
            Ok(k) => k,
            Err(r) => return Ok(DecodeOutcome::failure(r)),
        };
        let zeros = self.zero_set(&locator.g)?;
        let message = match self.recover_message(y, &zeros)? {
            Ok(f) => f,
            Err(r) => return Ok(DecodeOutcome::failure(r)),
        };
        let field = self.code.field();
        let codeword = self.code.encode(&message)?;
        let error: Vec<Fe> = y.iter().zip(&codeword).map(|(&a, &b)| field.sub(a, b)).collect();
        let weight = hamming_weight(&error);
        if weight > self.t {
            return Ok(DecodeOutcome {
                residual_weight: Some(weight),
                ..DecodeOutcome::failure(FailureReason::ResidualTooHeavy)
            });
        }
        Ok(DecodeOutcome {
            status: DecodeStatus::Success,
            error_support: error.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect(),
            message: Some(message),
            codeword: Some(codeword),
            error_vector: Some(error),
            residual_weight: Some(weight),
        })
    }

    /// The pair viewed as an error-correcting pair: `A` the helper code,
    /// `B` the dual of the product code, with `d(B^⊥) = d(C_sum)`.
    pub fn ecp_report(&self) -> Result<EcpReport, EcpError> {
        let pair = ecp::toric_pair(&self.code, &self.helper)?;
        let dists = EcpDistances {
            a: Some(self.d_helper),
            c: Some(self.d_code),
            b_perp: Some(Distance::new(self.d_sum.value, Provenance::Duality)),
        };
        ecp::is_ecp(&pair.a, &pair.b, &self.code.linear(), self.t, &dists, DEFAULT_DISTANCE_BUDGET)
    }

    pub fn code_linear(&self) -> LinearCode {
        self.code.linear()
    }
}

/// Positions at which `sum_i g[i] X^{u_i}` vanishes, over `code`'s points.
pub fn zero_set(code: &ToricCode, g: &[Fe]) -> Result<Vec<usize>, CodeError> {
    Ok(code
        .encode(g)?
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| i)
        .collect())
}
