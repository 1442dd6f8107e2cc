//! Structure-constant representation of n-ary Hom-algebras.
//!
//! A [`StructureTensor`] stores the coefficient vector of the product on
//! every basis tuple, densely. Binary products, Lie brackets and ternary
//! brackets all share this type; the arity is a runtime property.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{vector, FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::report::{AxiomReport, ReportBuilder, DEFAULT_VIOLATION_LIMIT};

pub const MAX_DIM: usize = 8;
pub const MAX_ARITY: usize = 4;

/// Lexicographic odometer over `[0, dim)^len`.
#[derive(Clone, Debug)]
pub struct Tuples {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.dim {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}

/// All index tuples of length `len` over `[0, dim)` in lexicographic order.
pub fn tuples(dim: usize, len: usize) -> Tuples {
    Tuples {
        dim,
        next: if dim == 0 && len > 0 {
            None
        } else {
            Some(vec![0; len])
        },
    }
}

/// Permutations of `0..n` paired with their signs (+1 / -1), in
/// lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// One argument of a bracket evaluation: a basis vector or a general vector.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vector(&'a [Scalar]),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    field: FieldSpec,
    dim: usize,
    arity: usize,
    data: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zero(field: FieldSpec, dim: usize, arity: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Bounds(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if !(2..=MAX_ARITY).contains(&arity) {
            return Err(Error::Bounds(format!("arity {arity} outside 2..={MAX_ARITY}")));
        }
        Ok(Self::zero_unchecked(field, dim, arity))
    }

    fn zero_unchecked(field: FieldSpec, dim: usize, arity: usize) -> Self {
        StructureTensor {
            field,
            dim,
            arity,
            data: vec![field.zero(); dim.pow(arity as u32) * dim],
        }
    }

    /// Tensor whose value on each basis tuple (0-based) is `f(tuple)`.
    pub fn from_fn(
        field: FieldSpec,
        dim: usize,
        arity: usize,
        f: impl Fn(&[usize]) -> Vec<Scalar>,
    ) -> Result<Self> {
        let mut t = Self::zero(field, dim, arity)?;
        for tup in tuples(dim, arity) {
            let v = f(&tup);
            t.set(&tup, v)?;
        }
        Ok(t)
    }

    /// Build from sparse `(1-based tuple, coefficient vector)` entries.
    pub fn from_entries(
        field: FieldSpec,
        dim: usize,
        arity: usize,
        entries: &[(Vec<usize>, Vec<Scalar>)],
    ) -> Result<Self> {
        let mut t = Self::zero(field, dim, arity)?;
        for (tuple, value) in entries {
            if tuple.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::Bounds(format!("index tuple {tuple:?} outside 1..={dim}")));
            }
            let zero_based: Vec<usize> = tuple.iter().map(|i| i - 1).collect();
            t.set(&zero_based, value.clone())?;
        }
        Ok(t)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &i| acc * self.dim + i) * self.dim
    }

    /// Coefficient vector on a basis tuple (0-based indices).
    pub fn get(&self, tuple: &[usize]) -> &[Scalar] {
        let o = self.offset(tuple);
        &self.data[o..o + self.dim]
    }

    pub fn set(&mut self, tuple: &[usize], value: Vec<Scalar>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        if tuple.iter().any(|&i| i >= self.dim) || value.len() != self.dim {
            return Err(Error::dim(format!(
                "entry {tuple:?} with {} coefficients in dimension {}",
                value.len(),
                self.dim
            )));
        }
        if let Some(bad) = value.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: bad.field().to_string(),
            });
        }
        let o = self.offset(tuple);
        self.data[o..o + self.dim].clone_from_slice(&value);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    /// Nonzero entries as `(0-based tuple, vector)` in lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<usize>, Vec<Scalar>)> {
        tuples(self.dim, self.arity)
            .filter_map(|t| {
                let v = self.get(&t);
                (!vector::is_zero(v)).then(|| (t.clone(), v.to_vec()))
            })
            .collect()
    }

    /// Multilinear evaluation; basis arguments are plain index lookups.
    pub fn eval_args(&self, args: &[Arg<'_>]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity, "argument count vs arity");
        let supports: Vec<Vec<(usize, Option<&Scalar>)>> = args
            .iter()
            .map(|a| match a {
                Arg::Basis(i) => vec![(*i, None)],
                Arg::Vector(v) => v
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(i, s)| (i, Some(s)))
                    .collect(),
            })
            .collect();
        let mut out = self.field.zero_vec(self.dim);
        self.accumulate(&supports, 0, 0, None, &mut out);
        out
    }

    fn accumulate(
        &self,
        supports: &[Vec<(usize, Option<&Scalar>)>],
        slot: usize,
        offset: usize,
        coeff: Option<&Scalar>,
        out: &mut [Scalar],
    ) {
        if slot == supports.len() {
            let base = offset * self.dim;
            let entry = &self.data[base..base + self.dim];
            match coeff {
                None => vector::add_assign(out, entry),
                Some(c) => vector::axpy(out, c, entry),
            }
            return;
        }
        for &(i, s) in &supports[slot] {
            let next = offset * self.dim + i;
            match (coeff, s) {
                (None, s) => self.accumulate(supports, slot + 1, next, s, out),
                (Some(c), None) => self.accumulate(supports, slot + 1, next, Some(c), out),
                (Some(c), Some(s)) => {
                    let prod = c * s;
                    self.accumulate(supports, slot + 1, next, Some(&prod), out)
                }
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            if a.len() != self.dim {
                return Err(Error::dim(format!(
                    "argument of length {} in dimension {}",
                    a.len(),
                    self.dim
                )));
            }
            if let Some(bad) = a.iter().find(|s| s.field() != self.field) {
                return Err(Error::FieldMismatch {
                    expected: self.field.to_string(),
                    found: bad.field().to_string(),
                });
            }
        }
        let args: Vec<Arg<'_>> = args.iter().map(|a| Arg::Vector(a)).collect();
        Ok(self.eval_args(&args))
    }

    fn check_map(&self, m: &Matrix) -> Result<()> {
        self.field.ensure_same(&m.field())?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::dim(format!(
                "{}x{} map on a {}-dimensional algebra",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Precompose slot `slot` with `m`: the result on `(.., e_i, ..)` is the
    /// original bracket on `(.., m e_i, ..)`.
    pub fn compose_slot(&self, slot: usize, m: &Matrix) -> Result<StructureTensor> {
        self.check_map(m)?;
        if slot >= self.arity {
            return Err(Error::Bounds(format!("slot {slot} of an arity-{} bracket", self.arity)));
        }
        let mut out = Self::zero_unchecked(self.field, self.dim, self.arity);
        let d = self.dim;
        for t in tuples(d, self.arity) {
            let mut acc = self.field.zero_vec(d);
            let mut src = t.clone();
            for a in 0..d {
                let c = m.get(a, t[slot]);
                if c.is_zero() {
                    continue;
                }
                src[slot] = a;
                vector::axpy(&mut acc, c, self.get(&src));
            }
            let o = out.offset(&t);
            out.data[o..o + d].clone_from_slice(&acc);
        }
        Ok(out)
    }

    /// Precompose every slot `s` for which `maps[s]` is `Some`.
    pub fn compose_slots(&self, maps: &[Option<&Matrix>]) -> Result<StructureTensor> {
        if maps.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: maps.len(),
            });
        }
        let mut t = self.clone();
        for (slot, m) in maps.iter().enumerate() {
            if let Some(m) = m {
                if !m.is_identity() {
                    t = t.compose_slot(slot, m)?;
                }
            }
        }
        Ok(t)
    }

    /// Postcompose with `m`: `m ∘ ⟨…⟩`.
    pub fn map_output(&self, m: &Matrix) -> Result<StructureTensor> {
        self.check_map(m)?;
        let d = self.dim;
        let mut out = self.clone();
        for chunk in 0..self.data.len() / d {
            let v = m.apply(&self.data[chunk * d..(chunk + 1) * d]);
            out.data[chunk * d..(chunk + 1) * d].clone_from_slice(&v);
        }
        Ok(out)
    }

    fn same_shape(&self, other: &StructureTensor) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.dim != other.dim || self.arity != other.arity {
            return Err(Error::dim("tensor shapes differ"));
        }
        Ok(())
    }

    pub fn add(&self, other: &StructureTensor) -> Result<StructureTensor> {
        self.same_shape(other)?;
        Ok(StructureTensor {
            data: vector::add(&self.data, &other.data),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &StructureTensor) -> Result<StructureTensor> {
        self.same_shape(other)?;
        Ok(StructureTensor {
            data: vector::sub(&self.data, &other.data),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> StructureTensor {
        StructureTensor {
            data: vector::scale(s, &self.data),
            ..self.clone()
        }
    }

    /// `self += s * other`
    pub(crate) fn axpy(&mut self, s: &Scalar, other: &StructureTensor) {
        vector::axpy(&mut self.data, s, &other.data);
    }

    pub(crate) fn raw(&self) -> &[Scalar] {
        &self.data
    }
}

/// `Σ_{∅≠I} λ^{|I|-1} ⟨m_1 x_1, …, m_n x_n⟩` with `m_s = inside` for
/// `s ∈ I` and `m_s = outside` otherwise. `None` stands for the identity.
pub fn subset_sum(
    t: &StructureTensor,
    inside: Option<&Matrix>,
    outside: Option<&Matrix>,
    weight: &Scalar,
) -> Result<StructureTensor> {
    t.field().ensure_same(&weight.field())?;
    let n = t.arity();
    let mut acc = StructureTensor::zero_unchecked(t.field(), t.dim(), n);
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones();
        let coeff = weight.pow(size - 1);
        if coeff.is_zero() {
            continue;
        }
        let maps: Vec<Option<&Matrix>> = (0..n)
            .map(|s| if mask >> s & 1 == 1 { inside } else { outside })
            .collect();
        let term = t.compose_slots(&maps)?;
        acc.axpy(&coeff, &term);
    }
    Ok(acc)
}

/// Extend a tensor given on strictly increasing tuples to the unique
/// skew-symmetric tensor agreeing with it there.
pub fn skew_symmetrize(t: &StructureTensor) -> Result<StructureTensor> {
    let n = t.arity();
    let perms = signed_permutations(n);
    let mut out = StructureTensor::zero_unchecked(t.field(), t.dim(), n);
    for (tuple, value) in t.nonzero_entries() {
        if !tuple.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotIncreasing(tuple.iter().map(|i| i + 1).collect()));
        }
        let neg = vector::neg(&value);
        for (p, sign) in &perms {
            let permuted: Vec<usize> = p.iter().map(|&k| tuple[k]).collect();
            let v = if *sign == 1 { value.clone() } else { neg.clone() };
            out.set(&permuted, v)?;
        }
    }
    Ok(out)
}

/// The restriction of a tensor to strictly increasing tuples.
pub fn increasing_part(t: &StructureTensor) -> StructureTensor {
    let mut out = StructureTensor::zero_unchecked(t.field(), t.dim(), t.arity());
    for (tuple, value) in t.nonzero_entries() {
        if tuple.windows(2).all(|w| w[0] < w[1]) {
            out.set(&tuple, value).expect("same shape");
        }
    }
    out
}

/// Every transposition of two slots negates the bracket, and tuples with a
/// repeated index map to zero. Probes all `d^n` tuples.
pub fn is_skew_symmetric(t: &StructureTensor) -> AxiomReport {
    skew_report(t, DEFAULT_VIOLATION_LIMIT)
}

pub(crate) fn skew_report(t: &StructureTensor, limit: usize) -> AxiomReport {
    let n = t.arity();
    let mut rb = ReportBuilder::new(
        "skew-symmetric",
        "[.., x_i, .., x_j, ..] = -[.., x_j, .., x_i, ..]; zero on repeated arguments",
        limit,
    );
    let zero = t.field().zero_vec(t.dim());
    for tuple in tuples(t.dim(), n) {
        let value = t.get(&tuple).to_vec();
        let repeated = (0..n).any(|a| (a + 1..n).any(|b| tuple[a] == tuple[b]));
        if repeated {
            rb.compare(&tuple, value, zero.clone());
            continue;
        }
        let mut rhs = None;
        'outer: for a in 0..n {
            for b in a + 1..n {
                let mut sw = tuple.clone();
                sw.swap(a, b);
                let neg = vector::neg(t.get(&sw));
                if neg != value {
                    rhs = Some(neg);
                    break 'outer;
                }
            }
        }
        let rhs = rhs.unwrap_or_else(|| value.clone());
        rb.compare(&tuple, value, rhs);
    }
    rb.finish()
}

/// The twisted algebra `(L, ⟨…⟩, α)`.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    pub name: Option<String>,
    tensor: StructureTensor,
    twist: Matrix,
}

impl HomAlgebra {
    pub fn new(tensor: StructureTensor, twist: Matrix) -> Result<Self> {
        tensor.check_map(&twist)?;
        Ok(HomAlgebra {
            name: None,
            tensor,
            twist,
        })
    }

    /// Untwisted algebra (`α = id`).
    pub fn untwisted(tensor: StructureTensor) -> Self {
        let twist = Matrix::identity(tensor.field(), tensor.dim());
        HomAlgebra {
            name: None,
            tensor,
            twist,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("<unnamed>")
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    pub fn with_twist(&self, twist: Matrix) -> Result<HomAlgebra> {
        let mut a = HomAlgebra::new(self.tensor.clone(), twist)?;
        a.name = self.name.clone();
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim
    }

    pub fn arity(&self) -> usize {
        self.tensor.arity
    }

    pub fn field(&self) -> FieldSpec {
        self.tensor.field
    }

    pub fn eval_bracket(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>> {
        self.tensor.eval(args)
    }

    pub(crate) fn check_map(&self, m: &Matrix) -> Result<()> {
        self.tensor.check_map(m)
    }

    pub(crate) fn require_arity(&self, n: usize) -> Result<()> {
        if self.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: self.arity(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for HomAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (dim {}, arity {}, over {}), twist {}",
            self.label(),
            self.dim(),
            self.arity(),
            self.field(),
            self.twist
        )?;
        for (t, v) in self.tensor.nonzero_entries() {
            let idx: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c}*e{}", k + 1))
                .collect();
            writeln!(f, "  [{}] = {}", idx.join(","), terms.join(" + "))?;
        }
        Ok(())
    }
}

/// Equal dimension, arity, field, twist and structure constants.
pub fn algebra_equal(a: &HomAlgebra, b: &HomAlgebra) -> bool {
    a.tensor == b.tensor && a.twist == b.twist
}

/// A covector `f ∈ L*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    field: FieldSpec,
    covector: Vec<Scalar>,
}

impl LinearFunctional {
    pub fn new(field: FieldSpec, covector: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = covector.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(LinearFunctional { field, covector })
    }

    pub fn from_i64(field: FieldSpec, xs: &[i64]) -> Self {
        LinearFunctional {
            field,
            covector: vector::from_i64(field, xs),
        }
    }

    /// Dual basis covector `e_i*` (0-based).
    pub fn dual_basis(field: FieldSpec, dim: usize, i: usize) -> Self {
        LinearFunctional {
            field,
            covector: field.basis_vec(dim, i),
        }
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        LinearFunctional {
            field,
            covector: field.zero_vec(dim),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.covector.len()
    }

    pub fn covector(&self) -> &[Scalar] {
        &self.covector
    }

    pub fn at(&self, i: usize) -> &Scalar {
        &self.covector[i]
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.covector)
    }

    pub fn apply(&self, v: &[Scalar]) -> Scalar {
        vector::dot(&self.covector, v, self.field)
    }

    /// `f ∘ m`
    pub fn compose(&self, m: &Matrix) -> LinearFunctional {
        let covector = (0..m.cols()).map(|c| self.apply(&m.column(c))).collect();
        LinearFunctional {
            field: self.field,
            covector,
        }
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::dim(format!(
                "functional of length {} on a {dim}-dimensional algebra",
                self.dim()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    RotaBaxter,
    Derivation,
    AlphaKDerivation(u32),
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::RotaBaxter => write!(f, "rota-baxter"),
            OperatorKind::Derivation => write!(f, "derivation"),
            OperatorKind::AlphaKDerivation(k) => write!(f, "alpha-{k}-derivation"),
        }
    }
}

/// A linear operator with a weight `λ`: Rota-Baxter operators, weighted
/// derivations and α^k-derivations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedOperator {
    pub matrix: Matrix,
    pub weight: Scalar,
    pub kind: OperatorKind,
}

impl WeightedOperator {
    pub fn new(matrix: Matrix, weight: Scalar, kind: OperatorKind) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dim("operator matrix must be square"));
        }
        matrix.field().ensure_same(&weight.field())?;
        Ok(WeightedOperator {
            matrix,
            weight,
            kind,
        })
    }

    pub fn rota_baxter(matrix: Matrix, weight: Scalar) -> Result<Self> {
        Self::new(matrix, weight, OperatorKind::RotaBaxter)
    }

    pub fn derivation(matrix: Matrix, weight: Scalar) -> Result<Self> {
        Self::new(matrix, weight, OperatorKind::Derivation)
    }

    pub fn alpha_k(matrix: Matrix, k: u32) -> Result<Self> {
        let zero = matrix.field().zero();
        Self::new(matrix, zero, OperatorKind::AlphaKDerivation(k))
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub(crate) fn require_kind(&self, expected: OperatorKind) -> Result<()> {
        let same = matches!(
            (self.kind, expected),
            (OperatorKind::RotaBaxter, OperatorKind::RotaBaxter)
                | (OperatorKind::Derivation, OperatorKind::Derivation)
                | (OperatorKind::AlphaKDerivation(_), OperatorKind::AlphaKDerivation(_))
        );
        if !same {
            return Err(Error::WrongKind {
                expected: expected.to_string(),
                found: self.kind.to_string(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(field: FieldSpec, d: usize, i: usize) -> Vec<Scalar> {
        field.basis_vec(d, i)
    }

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<Vec<usize>> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).count(), 1);
        assert_eq!(tuples(4, 3).count(), 64);
    }

    #[test]
    fn permutation_signs_match_parity() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        let sum: i64 = perms.iter().map(|(_, s)| s).sum();
        assert_eq!(sum, 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(perms[3], (vec![1, 2, 0], 1));
    }

    #[test]
    fn zero_tensor_evaluates_to_zero() {
        let t = StructureTensor::zero(q(), 3, 2).unwrap();
        let x = vector::from_i64(q(), &[1, 2, 3]);
        assert!(vector::is_zero(&t.eval(&[&x, &x]).unwrap()));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(StructureTensor::zero(q(), 9, 2).is_err());
        assert!(StructureTensor::zero(q(), 3, 5).is_err());
        assert!(StructureTensor::zero(q(), 3, 1).is_err());
        assert!(StructureTensor::from_entries(q(), 2, 2, &[(vec![1, 3], e(q(), 2, 0))]).is_err());
    }

    #[test]
    fn eval_checks_shapes() {
        let t = StructureTensor::zero(q(), 2, 2).unwrap();
        let x = vector::from_i64(q(), &[1, 2]);
        let y = vector::from_i64(q(), &[1, 2, 3]);
        assert!(matches!(t.eval(&[&x]), Err(Error::ArityMismatch { .. })));
        assert!(t.eval(&[&x, &y]).is_err());
    }

    #[test]
    fn skew_symmetrize_binary_and_ternary() {
        let t = StructureTensor::from_entries(q(), 3, 2, &[(vec![1, 2], e(q(), 3, 2))]).unwrap();
        let s = skew_symmetrize(&t).unwrap();
        assert_eq!(s.get(&[1, 0]), vector::neg(&e(q(), 3, 2)).as_slice());
        assert!(is_skew_symmetric(&s).pass);

        let t = StructureTensor::from_entries(q(), 4, 3, &[(vec![1, 2, 3], e(q(), 4, 3))]).unwrap();
        let s = skew_symmetrize(&t).unwrap();
        assert_eq!(s.nonzero_entries().len(), 6);
        for (p, sign) in signed_permutations(3) {
            let tuple: Vec<usize> = p.iter().map(|&k| [0, 1, 2][k]).collect();
            assert_eq!(s.get(&tuple)[3], q().from_i64(sign));
        }
        assert!(is_skew_symmetric(&s).pass);
        assert!(skew_symmetrize(&StructureTensor::zero(q(), 2, 2).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn skew_symmetrize_rejects_non_increasing_input() {
        let t = StructureTensor::from_entries(q(), 3, 2, &[(vec![2, 1], e(q(), 3, 0))]).unwrap();
        assert!(matches!(skew_symmetrize(&t), Err(Error::NotIncreasing(v)) if v == vec![2, 1]));
    }

    #[test]
    fn symmetric_product_is_not_skew() {
        let t = StructureTensor::from_entries(
            q(),
            2,
            2,
            &[(vec![1, 2], e(q(), 2, 0)), (vec![2, 1], e(q(), 2, 0))],
        )
        .unwrap();
        let r = is_skew_symmetric(&t);
        assert!(!r.pass);
        assert_eq!(r.first_tuple(), Some(&[1, 2][..]));
    }

    #[test]
    fn repeated_index_must_vanish_in_characteristic_two() {
        let f2 = FieldSpec::PrimeField(2);
        let t = StructureTensor::from_entries(f2, 2, 2, &[(vec![1, 1], e(f2, 2, 1))]).unwrap();
        assert!(!is_skew_symmetric(&t).pass);
    }

    #[test]
    fn compose_slot_matches_direct_evaluation() {
        let f = FieldSpec::PrimeField(5);
        let t = StructureTensor::from_fn(f, 2, 2, |tu| {
            vector::from_i64(f, &[(tu[0] + 2 * tu[1]) as i64, (3 * tu[0] * tu[1] + 1) as i64])
        })
        .unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let c = t.compose_slot(1, &m).unwrap();
        for tu in tuples(2, 2) {
            let x = e(f, 2, tu[0]);
            let y = m.apply(&e(f, 2, tu[1]));
            assert_eq!(c.get(&tu), t.eval(&[&x, &y]).unwrap().as_slice());
        }
    }

    #[test]
    fn weighted_operator_validation() {
        let m = Matrix::zeros(q(), 2, 3);
        assert!(WeightedOperator::rota_baxter(m, q().zero()).is_err());
        let m = Matrix::zeros(q(), 2, 2);
        assert!(WeightedOperator::rota_baxter(m, FieldSpec::PrimeField(2).zero()).is_err());
    }
}
