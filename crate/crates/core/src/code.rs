//! Toric codes: evaluation of monomials at torus points, Schur products,
//! duals and minimum distance utilities.

use crate::ffla::{FflaError, FqMatrix};
use crate::gf::{Fe, FieldDescriptor, FieldSpec, GfError};
use crate::lattice::{ExponentSet, LatticeError, LatticePolytope};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Default cap on `q^k` for exhaustive minimum distance searches.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 10_000_000;

pub type Codeword = Vec<Fe>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    LinearAlgebra(#[from] FflaError),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operation requires a code on the full torus")]
    NotFullTorus,
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error("exhaustive search over {size} messages exceeds budget {budget}")]
    BudgetExceeded { size: f64, budget: u64 },
    #[error("code descriptor inconsistent: {0}")]
    BadDescriptor(String),
}

/// How a minimum distance value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Closed form `(q-1)(q-1-a)` for an axis simplex.
    Formula,
    /// Exhaustive search over all nonzero messages.
    BruteForce,
    /// Transferred through a duality identity.
    Duality,
    /// Supplied by the user.
    Declared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub provenance: Provenance,
}

impl Distance {
    pub fn new(value: usize, provenance: Provenance) -> Self {
        Self { value, provenance }
    }
}

/// `X^u(P)`; negative exponents act through inverses.
pub fn evaluate_monomial(field: &FieldSpec, u: &[i64], point: &[Fe]) -> Fe {
    debug_assert_eq!(u.len(), point.len());
    let e: i64 = u
        .iter()
        .zip(point)
        .map(|(&ui, &x)| ui * field.log(x).expect("torus points have nonzero coordinates") as i64)
        .sum();
    field.exp(e)
}

pub fn hamming_weight(c: &[Fe]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

fn check_len(expected: usize, got: usize) -> Result<(), CodeError> {
    if expected == got {
        Ok(())
    } else {
        Err(CodeError::LengthMismatch { expected, got })
    }
}

/// Standard inner product `sum_l c_l d_l`.
pub fn inner_product(field: &FieldSpec, c: &[Fe], d: &[Fe]) -> Result<Fe, CodeError> {
    check_len(c.len(), d.len())?;
    Ok(field.dot(c, d))
}

/// Coordinatewise product.
pub fn schur(field: &FieldSpec, c: &[Fe], d: &[Fe]) -> Result<Codeword, CodeError> {
    check_len(c.len(), d.len())?;
    Ok(c.iter().zip(d).map(|(&a, &b)| field.mul(a, b)).collect())
}

/// A linear code given by a basis in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    basis: FqMatrix,
}

impl LinearCode {
    /// Row space of `generator`.
    pub fn from_generator(generator: &FqMatrix) -> Self {
        let (r, pivots) = generator.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self {
            basis: FqMatrix::from_rows(generator.field(), generator.cols(), rows).expect("rows have equal length"),
        }
    }

    /// All of `F_q^n`.
    pub fn full_space(field: &Arc<FieldSpec>, n: usize) -> Self {
        Self {
            basis: FqMatrix::identity(field, n),
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.basis.field()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &[Fe]) -> Result<bool, CodeError> {
        Ok(self.basis.row_space_contains(v)?)
    }

    /// Whether every word of `other` lies in this code.
    pub fn contains_code(&self, other: &LinearCode) -> Result<bool, CodeError> {
        check_len(self.len(), other.len())?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(stacked.rank() == self.dimension())
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> Self {
        let kernel = self.basis.kernel_basis();
        Self::from_generator(
            &FqMatrix::from_rows(self.field(), self.len(), kernel).expect("kernel vectors have length n"),
        )
    }

    /// Whether every word of `self` is orthogonal to every word of `other`.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> Result<bool, CodeError> {
        check_len(self.len(), other.len())?;
        Ok(self.basis.mul(&other.basis.transpose())?.is_zero())
    }

    /// Minimum Hamming weight of a nonzero codeword by exhaustive search
    /// over messages whose leading nonzero coefficient is 1. The zero code
    /// reports `n + 1`, which exceeds every weight.
    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize, CodeError> {
        let k = self.dimension();
        let n = self.len();
        if k == 0 {
            return Ok(n + 1);
        }
        let field = self.field();
        let q = field.size() as u64;
        let size = (q as f64).powi(k as i32);
        if size > budget as f64 {
            return Err(CodeError::BudgetExceeded { size, budget });
        }
        // step[i][v]: added to the codeword when digit i moves from value v to v + 1 (mod q)
        let step: Vec<Vec<Vec<Fe>>> = (0..k)
            .map(|i| {
                let row = self.basis.row(i);
                (0..q as u32)
                    .map(|v| {
                        let next = Fe::from_raw((v + 1) % q as u32);
                        let delta = field.sub(next, Fe::from_raw(v));
                        row.iter().map(|&x| field.mul(delta, x)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut best = n + 1;
        for lead in 0..k {
            let mut cw = self.basis.row(lead).to_vec();
            let mut digits = vec![0u32; k];
            loop {
                best = best.min(hamming_weight(&cw));
                let mut i = k;
                loop {
                    if i == lead + 1 {
                        break;
                    }
                    i -= 1;
                    let v = digits[i];
                    for (c, &s) in cw.iter_mut().zip(&step[i][v as usize]) {
                        *c = field.add(*c, s);
                    }
                    digits[i] = (v + 1) % q as u32;
                    if digits[i] != 0 {
                        break;
                    }
                }
                if (lead + 1..k).all(|j| digits[j] == 0) {
                    break;
                }
            }
        }
        Ok(best)
    }
}

/// Matrix whose rows are all pairwise Schur products of basis rows, `a`
/// rows outermost.
pub fn star_product_rows(a: &LinearCode, b: &LinearCode) -> Result<FqMatrix, CodeError> {
    check_len(a.len(), b.len())?;
    if a.field() != b.field() {
        return Err(CodeError::FieldMismatch);
    }
    let field = a.field();
    let rows = a
        .basis
        .row_iter()
        .flat_map(|x| b.basis.row_iter().map(move |y| schur(field, x, y).expect("equal lengths")))
        .collect();
    Ok(FqMatrix::from_rows(field, a.len(), rows)?)
}

/// Span of all pairwise Schur products of generator rows.
pub fn star_product_code(a: &LinearCode, b: &LinearCode) -> Result<LinearCode, CodeError> {
    Ok(LinearCode::from_generator(&star_product_rows(a, b)?))
}

/// Whether `A ⋆ B ⊥ C`, checked as `P · G_C^T = 0` for the matrix `P` of
/// pairwise products.
pub fn star_product_orthogonal(a: &LinearCode, b: &LinearCode, c: &LinearCode) -> Result<bool, CodeError> {
    check_len(a.len(), c.len())?;
    Ok(star_product_rows(a, b)?.mul(&c.basis.transpose())?.is_zero())
}

/// Evaluation code of the monomials `X^u`, `u in U`, at an ordered set of
/// torus points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricCode {
    field: Arc<FieldSpec>,
    exponents: ExponentSet,
    points: Vec<Vec<Fe>>,
    full_torus: bool,
    generator: FqMatrix,
    dimension: usize,
}

impl ToricCode {
    /// Code on the full torus. Exponents are reduced into `H`.
    pub fn new(field: &Arc<FieldSpec>, exponents: &ExponentSet) -> Result<Self, CodeError> {
        let points = field.torus_points(exponents.dim());
        Self::build(field, exponents, points, true)
    }

    pub fn from_polytope(field: &Arc<FieldSpec>, polytope: &LatticePolytope) -> Result<Self, CodeError> {
        Self::new(field, &polytope.lattice_points())
    }

    /// Code evaluated only at `points` (a punctured toric code).
    pub fn on_points(field: &Arc<FieldSpec>, exponents: &ExponentSet, points: Vec<Vec<Fe>>) -> Result<Self, CodeError> {
        let r = exponents.dim();
        for p in &points {
            check_len(r, p.len())?;
            if p.iter().any(|x| x.is_zero() || x.value() >= field.size()) {
                return Err(CodeError::BadDescriptor(format!("{p:?} is not a torus point")));
            }
        }
        let full = points == field.torus_points(r);
        Self::build(field, exponents, points, full)
    }

    fn build(field: &Arc<FieldSpec>, exponents: &ExponentSet, points: Vec<Vec<Fe>>, full_torus: bool) -> Result<Self, CodeError> {
        let exponents = exponents.reduce_into_h(field.size())?;
        let rows = exponents
            .iter()
            .map(|u| points.iter().map(|p| evaluate_monomial(field, u, p)).collect())
            .collect();
        let generator = FqMatrix::from_rows(field, points.len(), rows)?;
        let dimension = generator.rank();
        Ok(Self {
            field: Arc::clone(field),
            exponents,
            points,
            full_torus,
            generator,
            dimension,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn points(&self) -> &[Vec<Fe>] {
        &self.points
    }

    pub fn is_full_torus(&self) -> bool {
        self.full_torus
    }

    /// `|U| x n` matrix with `G[i][j] = X^{u_i}(P_j)`.
    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    /// Code length n.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension k = rank of the generator matrix.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Evaluates `f = sum_i msg[i] X^{u_i}` at every point. `msg` holds one
    /// coefficient per exponent in sorted exponent order.
    pub fn encode(&self, msg: &[Fe]) -> Result<Codeword, CodeError> {
        check_len(self.exponents.len(), msg.len())?;
        Ok(self.generator.vec_mul(msg)?)
    }

    pub fn linear(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator)
    }

    /// Dual code: the toric code on `H \ reduce(-U)` over the full torus.
    pub fn dual_code(&self) -> Result<ToricCode, CodeError> {
        if !self.full_torus {
            return Err(CodeError::NotFullTorus);
        }
        let dual_exponents = self.exponents.complement_in_h(self.field.size())?;
        ToricCode::new(&self.field, &dual_exponents)
    }

    pub fn min_distance_bruteforce(&self, budget: u64) -> Result<usize, CodeError> {
        self.linear().min_distance_bruteforce(budget)
    }

    pub fn descriptor(&self) -> Result<CodeDescriptor, CodeError> {
        if !self.full_torus {
            return Err(CodeError::NotFullTorus);
        }
        Ok(CodeDescriptor {
            field: self.field.descriptor(),
            exponents: self.exponents.clone(),
            n: self.len(),
            k: self.dimension,
        })
    }

    /// Rebuilds a full-torus code and checks the recorded `n` and `k`.
    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<Self, CodeError> {
        let field = Arc::new(FieldSpec::from_descriptor(&desc.field)?);
        let code = Self::new(&field, &desc.exponents)?;
        if code.len() != desc.n || code.dimension() != desc.k {
            return Err(CodeError::BadDescriptor(format!(
                "descriptor says n={} k={}, rebuilt code has n={} k={}",
                desc.n,
                desc.k,
                code.len(),
                code.dimension()
            )));
        }
        Ok(code)
    }
}

/// On-disk description of a full-torus toric code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub exponents: ExponentSet,
    pub n: usize,
    pub k: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::lattice::{simplex_distance, BoxH};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32, m: u32) -> Arc<FieldSpec> {
        Arc::new(build_field(p, m, None).unwrap())
    }

    fn simplex_code(f: &Arc<FieldSpec>, a: i64) -> ToricCode {
        ToricCode::from_polytope(f, &LatticePolytope::simplex(a)).unwrap()
    }

    fn random_msg(f: &FieldSpec, k: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        (0..k).map(|_| Fe::from_raw(rng.random_range(0..f.size()))).collect()
    }

    /// Evaluates `sum_u c_u X^u` term by term with repeated multiplication.
    fn eval_poly(f: &FieldSpec, terms: &[(Vec<i64>, Fe)], p: &[Fe]) -> Fe {
        terms.iter().fold(Fe::ZERO, |acc, (u, c)| {
            let mut term = *c;
            for (&e, &x) in u.iter().zip(p) {
                for _ in 0..e {
                    term = f.mul(term, x);
                }
            }
            f.add(acc, term)
        })
    }

    #[test]
    fn monomial_evaluation() {
        let f16 = gf(2, 4);
        let g = f16.generator();
        assert_eq!(evaluate_monomial(&f16, &[1, 1], &[g, g]), f16.mul(g, g));
        assert_eq!(evaluate_monomial(&f16, &[0, 0], &[g, Fe::from_raw(7)]), Fe::ONE);
        let f5 = gf(5, 1);
        for p in f5.torus_points(2) {
            assert_eq!(evaluate_monomial(&f5, &[4, 0], &p), Fe::ONE);
            let inv = f5.inv(p[0]).unwrap();
            assert_eq!(evaluate_monomial(&f5, &[-1, 0], &p), inv);
        }
    }

    #[test]
    fn build_examples() {
        let f16 = gf(2, 4);
        let c = simplex_code(&f16, 4);
        assert_eq!((c.len(), c.dimension()), (225, 15));
        assert_eq!(c.dimension(), (4 + 1) * (4 + 2) / 2);

        let f5 = gf(5, 1);
        let rep = ToricCode::new(&f5, &ExponentSet::new(2, vec![vec![0, 0]]).unwrap()).unwrap();
        assert_eq!((rep.len(), rep.dimension()), (16, 1));
        assert!(rep.generator().row(0).iter().all(|&x| x == Fe::ONE));

        let c1 = simplex_code(&f5, 1);
        assert_eq!((c1.len(), c1.dimension()), (16, 3));
    }

    #[test]
    fn collision_is_rejected() {
        let f5 = gf(5, 1);
        let u = ExponentSet::new(2, vec![vec![0, 0], vec![4, 0]]).unwrap();
        assert!(matches!(
            ToricCode::new(&f5, &u),
            Err(CodeError::Lattice(LatticeError::ExponentCollision { .. }))
        ));
    }

    #[test]
    fn encode_matches_direct_evaluation() {
        let f5 = gf(5, 1);
        let c = simplex_code(&f5, 1);
        assert_eq!(c.encode(&[Fe::ZERO; 3]).unwrap(), vec![Fe::ZERO; 16]);
        for i in 0..3 {
            let mut e = vec![Fe::ZERO; 3];
            e[i] = Fe::ONE;
            assert_eq!(c.encode(&e).unwrap(), c.generator().row(i));
        }
        // f = 1 + X + Y; exponents sort as (0,0), (0,1), (1,0)
        let cw = c.encode(&[Fe::ONE; 3]).unwrap();
        let terms = vec![(vec![0, 0], Fe::ONE), (vec![1, 0], Fe::ONE), (vec![0, 1], Fe::ONE)];
        for (p, &v) in c.points().iter().zip(&cw) {
            assert_eq!(v, eval_poly(&f5, &terms, p));
        }
        assert!(matches!(c.encode(&[Fe::ONE; 2]), Err(CodeError::LengthMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn schur_products() {
        let f5 = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = simplex_code(&f5, 1);
        let b = simplex_code(&f5, 2);
        let c = a.encode(&random_msg(&f5, 3, &mut rng)).unwrap();
        assert_eq!(schur(&f5, &c, &[Fe::ONE; 16]).unwrap(), c);
        assert_eq!(schur(&f5, &c, &[Fe::ZERO; 16]).unwrap(), vec![Fe::ZERO; 16]);
        assert!(schur(&f5, &c, &[Fe::ONE]).is_err());

        // product of polynomials, then evaluation
        let fa = random_msg(&f5, 3, &mut rng);
        let fb = random_msg(&f5, 6, &mut rng);
        let prod = schur(&f5, &a.encode(&fa).unwrap(), &b.encode(&fb).unwrap()).unwrap();
        let mut terms = Vec::new();
        for (u, &cu) in a.exponents().iter().zip(&fa) {
            for (v, &cv) in b.exponents().iter().zip(&fb) {
                terms.push((vec![u[0] + v[0], u[1] + v[1]], f5.mul(cu, cv)));
            }
        }
        for (p, &v) in a.points().iter().zip(&prod) {
            assert_eq!(v, eval_poly(&f5, &terms, p));
        }
    }

    #[test]
    fn star_products() {
        let f5 = gf(5, 1);
        let rep = ToricCode::new(&f5, &ExponentSet::new(2, vec![vec![0, 0]]).unwrap()).unwrap().linear();
        assert_eq!(star_product_code(&rep, &rep).unwrap(), rep);

        let a = simplex_code(&f5, 1);
        let b = simplex_code(&f5, 1);
        let sum = simplex_code(&f5, 2);
        let star = star_product_code(&a.linear(), &b.linear()).unwrap();
        assert!(sum.linear().contains_code(&star).unwrap());
        let sum_points = LatticePolytope::simplex(1)
            .minkowski_sum(&LatticePolytope::simplex(1))
            .lattice_points();
        assert!(star.dimension() <= sum_points.len());
    }

    #[test]
    fn dual_examples() {
        let f5 = gf(5, 1);
        let full = ToricCode::new(&f5, &BoxH::new(5, 2).as_set()).unwrap();
        let d = full.dual_code().unwrap();
        assert_eq!(d.dimension(), 0);

        let rep = ToricCode::new(&f5, &ExponentSet::new(2, vec![vec![0, 0]]).unwrap()).unwrap();
        let d = rep.dual_code().unwrap();
        assert_eq!(d.dimension(), 15);
        assert!(d.generator().mul_vec(&[Fe::ONE; 16]).unwrap().iter().all(|x| x.is_zero()));
        assert!(rep.generator().mul(&d.generator().transpose()).unwrap().is_zero());

        let f16 = gf(2, 4);
        let c = simplex_code(&f16, 4);
        assert_eq!(c.dimension() + c.dual_code().unwrap().dimension(), 225);

        let pts = f5.torus_points(2)[..10].to_vec();
        let punct = ToricCode::on_points(&f5, rep.exponents(), pts).unwrap();
        assert_eq!(punct.dual_code(), Err(CodeError::NotFullTorus));
    }

    #[test]
    fn toric_dual_agrees_with_kernel_dual() {
        let f7 = gf(7, 1);
        let c = simplex_code(&f7, 2);
        let via_exponents = c.dual_code().unwrap().linear();
        let via_kernel = c.linear().dual();
        assert_eq!(via_exponents, via_kernel);
    }

    #[test]
    fn brute_force_distances() {
        let f5 = gf(5, 1);
        let rep = ToricCode::new(&f5, &ExponentSet::new(2, vec![vec![0, 0]]).unwrap()).unwrap();
        assert_eq!(rep.min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET).unwrap(), 16);
        assert_eq!(simplex_code(&f5, 1).min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET).unwrap(), 12);
        assert_eq!(simplex_code(&f5, 2).min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET).unwrap(), 8);
        assert!(matches!(
            simplex_code(&gf(2, 4), 4).min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET),
            Err(CodeError::BudgetExceeded { .. })
        ));
        let full = LinearCode::full_space(&f5, 4);
        assert_eq!(full.min_distance_bruteforce(1000).unwrap(), 1);
    }

    /// Weight enumeration over every message, without the projective shortcut.
    fn naive_distance(c: &ToricCode) -> usize {
        let f = c.field();
        let k = c.exponents().len();
        let q = f.size() as usize;
        (1..q.pow(k as u32))
            .map(|mut idx| {
                let msg: Vec<Fe> = (0..k)
                    .map(|_| {
                        let v = idx % q;
                        idx /= q;
                        Fe::from_raw(v as u32)
                    })
                    .collect();
                hamming_weight(&c.encode(&msg).unwrap())
            })
            .min()
            .unwrap()
    }

    #[test]
    fn projective_search_matches_naive() {
        let f3 = gf(3, 1);
        let f4 = gf(2, 2);
        for (f, a) in [(&f3, 0), (&f3, 1), (&f4, 1), (&f4, 2)] {
            let c = simplex_code(f, a);
            assert_eq!(c.min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET).unwrap(), naive_distance(&c));
        }
        let f5 = gf(5, 1);
        let odd = ToricCode::new(&f5, &ExponentSet::new(2, vec![vec![0, 0], vec![2, 1], vec![3, 3]]).unwrap()).unwrap();
        assert_eq!(odd.min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET).unwrap(), naive_distance(&odd));
    }

    #[test]
    fn brute_force_matches_simplex_formula() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (2, 2)] {
            let f = gf(p, m);
            let q = f.size();
            for a in 0..=(q as i64 - 2) {
                let c = simplex_code(&f, a);
                match c.min_distance_bruteforce(DEFAULT_DISTANCE_BUDGET) {
                    Ok(d) => assert_eq!(d, simplex_distance(q, a).unwrap(), "q={q} a={a}"),
                    Err(CodeError::BudgetExceeded { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn weights_and_inner_products() {
        let f5 = gf(5, 1);
        assert_eq!(hamming_weight(&[Fe::ZERO; 5]), 0);
        let c = vec![Fe::ONE, Fe::from_raw(3), Fe::ZERO];
        assert_eq!(hamming_weight(&c), 2);
        assert_eq!(inner_product(&f5, &c, &[Fe::ZERO; 3]).unwrap(), Fe::ZERO);
        assert!(inner_product(&f5, &c, &[Fe::ZERO; 2]).is_err());
        let pts = f5.torus_points(2);
        for u in BoxH::new(5, 2).points() {
            for v in BoxH::new(5, 2).points() {
                let cu: Vec<Fe> = pts.iter().map(|p| evaluate_monomial(&f5, &u, p)).collect();
                let cv: Vec<Fe> = pts.iter().map(|p| evaluate_monomial(&f5, &v, p)).collect();
                let ip = inner_product(&f5, &cu, &cv).unwrap();
                let opposite = (0..2).all(|i| (u[i] + v[i]).rem_euclid(4) == 0);
                assert_eq!(ip.is_zero(), !opposite, "u={u:?} v={v:?}");
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let f16 = gf(2, 4);
        let c = simplex_code(&f16, 4);
        let desc = c.descriptor().unwrap();
        let json = serde_json::to_string(&desc).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(ToricCode::from_descriptor(&back).unwrap(), c);
        let mut bad = desc.clone();
        bad.k = 14;
        assert!(matches!(ToricCode::from_descriptor(&bad), Err(CodeError::BadDescriptor(_))));
    }
}
