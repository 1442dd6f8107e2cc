//! Exhaustive and linear-algebraic searches over small instances.

use std::time::{Duration, Instant};

use crate::algebra::{tuples, Arg, HomAlgebra, LinearFunctional, OperatorKind, StructureTensor, WeightedOperator};
use crate::error::{Error, Result};
use crate::field::{vector, FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::par;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Cap on the exhaustive list of admissible functionals.
pub const DEFAULT_FUNCTIONAL_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_dim: usize,
    pub max_p: u64,
    pub max_results: Option<usize>,
    /// Largest number of candidate matrices a scan may visit.
    pub budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_dim: 3,
            max_p: 5,
            max_results: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub algebra: HomAlgebra,
    pub weight: Scalar,
    pub kind: OperatorKind,
    pub limits: SearchLimits,
    pub jobs: usize,
}

impl SearchSpec {
    pub fn new(algebra: HomAlgebra, weight: Scalar, kind: OperatorKind) -> Self {
        SearchSpec {
            algebra,
            weight,
            kind,
            limits: SearchLimits::default(),
            jobs: 1,
        }
    }

    pub fn with_limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub operators: Vec<WeightedOperator>,
    pub candidates_scanned: u64,
    pub elapsed: Duration,
}

/// Number of `dim × dim` matrices over `F_p`, or `None` on overflow.
fn candidate_count(p: u64, dim: usize) -> Option<u64> {
    p.checked_pow(u32::try_from(dim * dim).ok()?)
}

fn check_budget(field: FieldSpec, dim: usize, budget: u64) -> Result<u64> {
    let p = match field {
        FieldSpec::Rationals => return Err(Error::RationalsUnsupported),
        FieldSpec::PrimeField(p) => p,
    };
    match candidate_count(p, dim) {
        Some(n) if n <= budget => Ok(n),
        Some(n) => Err(Error::BudgetExceeded {
            candidates: n.to_string(),
            budget,
        }),
        None => Err(Error::BudgetExceeded {
            candidates: format!("{p}^{}", dim * dim),
            budget,
        }),
    }
}

/// Row-major lexicographic odometer over residues.
struct Odometer {
    p: u64,
    digits: Vec<u64>,
    done: bool,
}

impl Odometer {
    fn new(p: u64, len: usize) -> Self {
        Odometer {
            p,
            digits: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

fn matrix_from_residues(field: FieldSpec, dim: usize, digits: &[u64]) -> Matrix {
    let entries = digits.iter().map(|&r| field.from_i64(r as i64)).collect();
    Matrix::new(field, dim, dim, entries).expect("square shape")
}

/// Every `dim × dim` matrix over `F_p` in row-major lexicographic order.
pub fn all_matrices(field: FieldSpec, dim: usize, budget: u64) -> Result<Vec<Matrix>> {
    check_budget(field, dim, budget)?;
    let p = field.characteristic();
    Ok(Odometer::new(p, dim * dim)
        .map(|d| matrix_from_residues(field, dim, &d))
        .collect())
}

pub fn invertible_matrices(field: FieldSpec, dim: usize, budget: u64) -> Result<Vec<Matrix>> {
    Ok(all_matrices(field, dim, budget)?
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect())
}

/// Tuples ordered so that those with nonzero structure constants come first.
fn fail_fast_order(t: &StructureTensor) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = tuples(t.dim(), t.arity()).collect();
    all.sort_by_key(|tu| vector::is_zero(t.get(tu)));
    all
}

/// `(mask, λ^{|I|-1})` for every nonempty subset with a nonzero coefficient.
fn subset_weights(arity: usize, weight: &Scalar) -> Vec<(Vec<bool>, Scalar)> {
    (1u32..(1 << arity))
        .filter_map(|mask| {
            let coeff = weight.pow(mask.count_ones() - 1);
            (!coeff.is_zero()).then(|| ((0..arity).map(|s| mask >> s & 1 == 1).collect(), coeff))
        })
        .collect()
}

/// Precomputed data for repeated Rota-Baxter / derivation probes on one algebra.
pub struct Prober<'a> {
    algebra: &'a HomAlgebra,
    order: Vec<Vec<usize>>,
    masks: Vec<(Vec<bool>, Scalar)>,
    weight: Scalar,
    twist_columns: Option<Vec<Vec<Scalar>>>,
}

impl<'a> Prober<'a> {
    pub fn new(algebra: &'a HomAlgebra, weight: &Scalar) -> Result<Self> {
        algebra.field().ensure_same(&weight.field())?;
        let twist_columns = (!algebra.twist().is_identity()).then(|| algebra.twist().columns());
        Ok(Prober {
            algebra,
            order: fail_fast_order(algebra.tensor()),
            masks: subset_weights(algebra.arity(), weight),
            weight: weight.clone(),
            twist_columns,
        })
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    /// Rota-Baxter identity on basis tuples, stopping at the first failure.
    pub fn is_rota_baxter(&self, p: &Matrix) -> bool {
        let t = self.algebra.tensor();
        let cols = p.columns();
        let mut args: Vec<Arg<'_>> = Vec::with_capacity(t.arity());
        for tu in &self.order {
            args.clear();
            args.extend(tu.iter().map(|&i| Arg::Vector(&cols[i])));
            let lhs = t.eval_args(&args);
            let mut inner = t.field().zero_vec(t.dim());
            for (mask, coeff) in &self.masks {
                args.clear();
                args.extend(tu.iter().zip(mask).map(|(&i, &inside)| {
                    if inside {
                        Arg::Basis(i)
                    } else {
                        Arg::Vector(&cols[i])
                    }
                }));
                vector::axpy(&mut inner, coeff, &t.eval_args(&args));
            }
            if lhs != p.apply(&inner) {
                return false;
            }
        }
        true
    }

    /// Weighted derivation identity and `dα = αd`, stopping at the first failure.
    pub fn is_weighted_derivation(&self, d: &Matrix) -> bool {
        if !d.commutes(self.algebra.twist()).unwrap_or(false) {
            return false;
        }
        let t = self.algebra.tensor();
        let cols = d.columns();
        let outside = |i: usize| match &self.twist_columns {
            Some(a) => Arg::Vector(&a[i]),
            None => Arg::Basis(i),
        };
        let mut args: Vec<Arg<'_>> = Vec::with_capacity(t.arity());
        for tu in &self.order {
            let lhs = d.apply(t.get(tu));
            let mut rhs = t.field().zero_vec(t.dim());
            for (mask, coeff) in &self.masks {
                args.clear();
                args.extend(tu.iter().zip(mask).map(|(&i, &inside)| {
                    if inside {
                        Arg::Vector(&cols[i])
                    } else {
                        outside(i)
                    }
                }));
                vector::axpy(&mut rhs, coeff, &t.eval_args(&args));
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

fn enumerate_with<F>(spec: &SearchSpec, accept: F) -> Result<SearchResult>
where
    F: Fn(&Prober<'_>, &Matrix) -> bool + Sync + Send,
{
    let start = Instant::now();
    let a = &spec.algebra;
    let field = a.field();
    let dim = a.dim();
    if matches!(field, FieldSpec::Rationals) {
        return Err(Error::RationalsUnsupported);
    }
    if dim > spec.limits.max_dim {
        return Err(Error::Bounds(format!(
            "dimension {dim} exceeds the search limit {}",
            spec.limits.max_dim
        )));
    }
    let p = field.characteristic();
    if p > spec.limits.max_p {
        return Err(Error::Bounds(format!("p = {p} exceeds the search limit {}", spec.limits.max_p)));
    }
    let total = check_budget(field, dim, spec.limits.budget)?;
    let prober = Prober::new(a, &spec.weight)?;
    // one chunk per first row; chunk order is lexicographic order
    let first_rows: Vec<Vec<u64>> = Odometer::new(p, dim).collect();
    let chunks = par::map_ordered(spec.jobs, first_rows, |row| {
        let mut found = Vec::new();
        let mut digits = row.clone();
        digits.resize(dim * dim, 0);
        for rest in Odometer::new(p, dim * dim - dim) {
            digits[dim..].copy_from_slice(&rest);
            let m = matrix_from_residues(field, dim, &digits);
            if accept(&prober, &m) {
                found.push(m);
            }
        }
        found
    });
    let mut matrices: Vec<Matrix> = chunks.into_iter().flatten().collect();
    if let Some(cap) = spec.limits.max_results {
        matrices.truncate(cap);
    }
    let operators = matrices
        .into_iter()
        .map(|m| WeightedOperator::new(m, spec.weight.clone(), spec.kind))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult {
        operators,
        candidates_scanned: total,
        elapsed: start.elapsed(),
    })
}

fn require_search_kind(spec: &SearchSpec, expected: OperatorKind) -> Result<()> {
    if spec.kind != expected {
        return Err(Error::WrongKind {
            expected: expected.to_string(),
            found: spec.kind.to_string(),
        });
    }
    Ok(())
}

/// All matrices over `F_p` that are Rota-Baxter operators of the given weight.
pub fn enumerate_rota_baxter(spec: &SearchSpec) -> Result<SearchResult> {
    require_search_kind(spec, OperatorKind::RotaBaxter)?;
    enumerate_with(spec, |pr, m| pr.is_rota_baxter(m))
}

/// All matrices over `F_p` that are derivations of the given weight.
pub fn enumerate_weighted_derivations(spec: &SearchSpec) -> Result<SearchResult> {
    require_search_kind(spec, OperatorKind::Derivation)?;
    enumerate_with(spec, |pr, m| pr.is_weighted_derivation(m))
}

/// Dispatch on `spec.kind`.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult> {
    match spec.kind {
        OperatorKind::RotaBaxter => enumerate_rota_baxter(spec),
        OperatorKind::Derivation => enumerate_weighted_derivations(spec),
        OperatorKind::AlphaKDerivation(_) => Err(Error::WrongKind {
            expected: "rota-baxter or derivation".into(),
            found: spec.kind.to_string(),
        }),
    }
}

fn elementary(field: FieldSpec, dim: usize, r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zeros(field, dim, dim);
    m.set(r, c, field.one());
    m
}

/// Basis of `{D : D(xy) = D(x)α^k(y) + α^k(x)D(y), Dα = αD}`.
pub fn solve_linear_derivations(a: &HomAlgebra, k: u32) -> Result<Vec<Matrix>> {
    a.require_arity(2)?;
    let field = a.field();
    let dim = a.dim();
    let alpha = a.twist();
    let ak = alpha.pow(k)?;
    let t = a.tensor();
    // residual of each elementary matrix; the system is linear in D
    let mut columns = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            let e = elementary(field, dim, r, c);
            let res = t
                .map_output(&e)?
                .sub(&t.compose_slots(&[Some(&e), Some(&ak)])?)?
                .sub(&t.compose_slots(&[Some(&ak), Some(&e)])?)?;
            let mut col = res.raw().to_vec();
            col.extend(e.mul(alpha)?.sub(&alpha.mul(&e)?)?.entries().iter().cloned());
            columns.push(col);
        }
    }
    let system = Matrix::from_columns(field, &columns)?;
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::new(field, dim, dim, v).expect("square shape"))
        .collect())
}

/// Functionals vanishing on all bracket values, plus the admissible ones.
#[derive(Clone, Debug)]
pub struct AdmissibleFunctionals {
    pub linear_basis: Vec<LinearFunctional>,
    /// Every admissible functional over a small prime field, in
    /// lexicographic order of coefficients on `linear_basis`.
    pub exhaustive: Option<Vec<LinearFunctional>>,
}

/// `f(⟨…⟩) = 0` and `f∘α`, `f` linearly dependent.
pub fn is_admissible(a: &HomAlgebra, f: &LinearFunctional) -> bool {
    if f.dim() != a.dim() || f.field() != a.field() {
        return false;
    }
    let t = a.tensor();
    if tuples(a.dim(), a.arity()).any(|tu| !f.apply(t.get(&tu)).is_zero()) {
        return false;
    }
    let fa = f.compose(a.twist());
    let pair = Matrix::from_rows(a.field(), vec![fa.covector().to_vec(), f.covector().to_vec()])
        .expect("equal lengths");
    pair.rank() <= 1
}

pub fn admissible_functionals(a: &HomAlgebra) -> Result<AdmissibleFunctionals> {
    admissible_functionals_with_budget(a, DEFAULT_FUNCTIONAL_BUDGET)
}

pub fn admissible_functionals_with_budget(a: &HomAlgebra, budget: u64) -> Result<AdmissibleFunctionals> {
    a.require_arity(2)?;
    let field = a.field();
    let dim = a.dim();
    let t = a.tensor();
    let mut rows: Vec<Vec<Scalar>> = tuples(dim, 2)
        .map(|tu| t.get(&tu).to_vec())
        .filter(|v| !vector::is_zero(v))
        .collect();
    if rows.is_empty() {
        rows.push(field.zero_vec(dim));
    }
    let values = Matrix::from_rows(field, rows)?;
    let linear_basis: Vec<LinearFunctional> = values
        .kernel_basis()
        .into_iter()
        .map(|v| LinearFunctional::new(field, v))
        .collect::<Result<_>>()?;
    let exhaustive = match field {
        FieldSpec::Rationals => None,
        FieldSpec::PrimeField(p) => {
            let k = linear_basis.len();
            match p.checked_pow(k as u32) {
                Some(n) if n <= budget => {
                    let mut out = Vec::new();
                    for coeffs in Odometer::new(p, k) {
                        let mut cov = field.zero_vec(dim);
                        for (c, b) in coeffs.iter().zip(&linear_basis) {
                            vector::axpy(&mut cov, &field.from_i64(*c as i64), b.covector());
                        }
                        let f = LinearFunctional::new(field, cov)?;
                        if is_admissible(a, &f) {
                            out.push(f);
                        }
                    }
                    Some(out)
                }
                _ => None,
            }
        }
    };
    Ok(AdmissibleFunctionals {
        linear_basis,
        exhaustive,
    })
}

/// Small structure populations over prime fields, used as test fixtures.
pub mod fixtures {
    use super::*;

    fn residue_vectors(field: FieldSpec, dim: usize) -> Vec<Vec<Scalar>> {
        Odometer::new(field.characteristic(), dim)
            .map(|d| d.iter().map(|&r| field.from_i64(r as i64)).collect())
            .collect()
    }

    fn guard(field: FieldSpec, free: usize, dim: usize, budget: u64) -> Result<()> {
        if matches!(field, FieldSpec::Rationals) {
            return Err(Error::RationalsUnsupported);
        }
        let p = field.characteristic();
        match p.checked_pow((free * dim) as u32) {
            Some(n) if n <= budget => Ok(()),
            _ => Err(Error::BudgetExceeded {
                candidates: format!("{p}^{}", free * dim),
                budget,
            }),
        }
    }

    /// Tensors built from a choice of value for each free slot.
    fn assemble<F>(field: FieldSpec, dim: usize, arity: usize, free: &[Vec<usize>], place: F) -> Vec<StructureTensor>
    where
        F: Fn(&mut StructureTensor, &[usize], &[Scalar]),
    {
        let vecs = residue_vectors(field, dim);
        let mut out = Vec::new();
        for choice in Odometer::new(vecs.len() as u64, free.len()) {
            let mut t = StructureTensor::zero(field, dim, arity).expect("bounded shape");
            for (slot, &c) in free.iter().zip(&choice) {
                place(&mut t, slot, &vecs[c as usize]);
            }
            out.push(t);
        }
        out
    }

    /// Every binary tensor on `dim` generators.
    pub fn binary_tensors(field: FieldSpec, dim: usize, budget: u64) -> Result<Vec<StructureTensor>> {
        let free: Vec<Vec<usize>> = tuples(dim, 2).collect();
        guard(field, free.len(), dim, budget)?;
        Ok(assemble(field, dim, 2, &free, |t, s, v| {
            t.set(s, v.to_vec()).expect("in range")
        }))
    }

    /// Every symmetric binary tensor.
    pub fn symmetric_binary_tensors(field: FieldSpec, dim: usize, budget: u64) -> Result<Vec<StructureTensor>> {
        let free: Vec<Vec<usize>> = tuples(dim, 2).filter(|t| t[0] <= t[1]).collect();
        guard(field, free.len(), dim, budget)?;
        Ok(assemble(field, dim, 2, &free, |t, s, v| {
            t.set(s, v.to_vec()).expect("in range");
            t.set(&[s[1], s[0]], v.to_vec()).expect("in range");
        }))
    }

    /// Every ternary tensor alternating in its last two slots.
    pub fn alternating_tail_ternary(field: FieldSpec, dim: usize, budget: u64) -> Result<Vec<StructureTensor>> {
        let free: Vec<Vec<usize>> = tuples(dim, 3).filter(|t| t[1] < t[2]).collect();
        guard(field, free.len(), dim, budget)?;
        Ok(assemble(field, dim, 3, &free, |t, s, v| {
            t.set(s, v.to_vec()).expect("in range");
            t.set(&[s[0], s[2], s[1]], vector::neg(v)).expect("in range");
        }))
    }

    /// Pair every tensor with every twist and keep the algebras accepted by `keep`.
    pub fn algebras<F>(tensors: &[StructureTensor], twists: &[Matrix], jobs: usize, keep: F) -> Vec<HomAlgebra>
    where
        F: Fn(&HomAlgebra) -> bool + Sync + Send,
    {
        let pairs: Vec<(usize, usize)> = (0..tensors.len())
            .flat_map(|i| (0..twists.len()).map(move |j| (i, j)))
            .collect();
        par::map_ordered(jobs, pairs, |(i, j)| {
            let a = HomAlgebra::new(tensors[i].clone(), twists[j].clone()).ok()?;
            keep(&a).then_some(a)
        })
        .into_iter()
        .flatten()
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Checker;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn abelian_accepts_every_matrix() {
        let a = HomAlgebra::untwisted(StructureTensor::zero(f2(), 2, 2).unwrap());
        let spec = SearchSpec::new(a, f2().zero(), OperatorKind::RotaBaxter);
        let r = enumerate_rota_baxter(&spec).unwrap();
        assert_eq!(r.operators.len(), 16);
        assert_eq!(r.candidates_scanned, 16);
        assert!(r.operators[0].matrix.is_zero());
        assert_eq!(r.operators[1].matrix.residues().unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn rationals_and_budget_are_refused() {
        let a = HomAlgebra::untwisted(StructureTensor::zero(FieldSpec::Rationals, 2, 2).unwrap());
        let spec = SearchSpec::new(a, FieldSpec::Rationals.zero(), OperatorKind::RotaBaxter);
        assert!(matches!(enumerate_rota_baxter(&spec), Err(Error::RationalsUnsupported)));
        let a = HomAlgebra::untwisted(StructureTensor::zero(f2(), 3, 2).unwrap());
        let mut spec = SearchSpec::new(a, f2().zero(), OperatorKind::RotaBaxter);
        spec.limits.budget = 100;
        assert!(matches!(enumerate_rota_baxter(&spec), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn probes_agree_with_checker_on_full_scan() {
        let field = f2();
        let t = StructureTensor::from_entries(field, 2, 2, &[(vec![1, 1], field.basis_vec(2, 1))]).unwrap();
        let checker = Checker::default();
        for twist in all_matrices(field, 2, 100).unwrap() {
            let a = HomAlgebra::new(t.clone(), twist).unwrap();
            for w in [field.zero(), field.one()] {
                let pr = Prober::new(&a, &w).unwrap();
                for m in all_matrices(field, 2, 100).unwrap() {
                    assert_eq!(pr.is_rota_baxter(&m), checker.rota_baxter_matrix(&a, &m, &w).unwrap().pass);
                    let d = WeightedOperator::derivation(m.clone(), w.clone()).unwrap();
                    assert_eq!(pr.is_weighted_derivation(&m), checker.derivation_weight(&a, &d).unwrap().pass);
                }
            }
        }
    }

    #[test]
    fn heisenberg_derivations_have_dimension_six() {
        let q = FieldSpec::Rationals;
        let t = StructureTensor::from_entries(
            q,
            3,
            2,
            &[(vec![1, 2], q.basis_vec(3, 2)), (vec![2, 1], vector::neg(&q.basis_vec(3, 2)))],
        )
        .unwrap();
        let h = HomAlgebra::untwisted(t);
        let basis = solve_linear_derivations(&h, 0).unwrap();
        assert_eq!(basis.len(), 6);
        let checker = Checker::default();
        for d in &basis {
            assert!(checker.alpha_k_derivation(&h, d, 0).unwrap().pass);
        }
    }

    #[test]
    fn heisenberg_functionals_skip_the_center() {
        let q = FieldSpec::Rationals;
        let t = StructureTensor::from_entries(q, 3, 2, &[(vec![1, 2], q.basis_vec(3, 2))]).unwrap();
        let r = admissible_functionals(&HomAlgebra::untwisted(t)).unwrap();
        assert_eq!(r.linear_basis.len(), 2);
        assert!(r.linear_basis.iter().all(|f| f.at(2).is_zero()));
        assert!(r.exhaustive.is_none());
    }

    #[test]
    fn alternating_tail_population_size() {
        let ts = fixtures::alternating_tail_ternary(f2(), 2, 1 << 20).unwrap();
        assert_eq!(ts.len(), 16);
        let all = fixtures::binary_tensors(f2(), 2, 1 << 20).unwrap();
        assert_eq!(all.len(), 256);
        let sym = fixtures::symmetric_binary_tensors(f2(), 2, 1 << 20).unwrap();
        assert_eq!(sym.len(), 64);
    }
}
