//! Exhaustive identity checkers.
//!
//! Every identity here is multilinear in each argument, so checking it on
//! all basis tuples decides it on all vectors. Tuples are visited in
//! lexicographic order and reports keep the first failures.

use crate::algebra::{
    skew_report, subset_sum, tuples, Arg, HomAlgebra, LinearFunctional, OperatorKind,
    StructureTensor, WeightedOperator,
};
use crate::error::Result;
use crate::field::{vector, Scalar};
use crate::matrix::Matrix;
use crate::par;
use crate::report::{AxiomReport, ReportBuilder, DEFAULT_VIOLATION_LIMIT};

/// The three written ternary forms of the Hom-Nambu identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NambuForm {
    /// `[αy2, αy3, [x1,x2,x3]] = Σ_i [αx1, .., [x_i,y2,y3], .., αx3]`
    Fundamental,
    /// `[[x1,x2,x3], αy2, αy3] = Σ_cyc [[x1,y2,y3], αx2, αx3]`
    Cyclic,
    /// `[[x1,x2,x3], αy2, αy3] = Σ_i [αx1, .., [x_i,y2,y3], .., αx3]`
    RightDerivation,
}

impl NambuForm {
    pub const ALL: [NambuForm; 3] = [
        NambuForm::Fundamental,
        NambuForm::Cyclic,
        NambuForm::RightDerivation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NambuForm::Fundamental => "nambu-fundamental",
            NambuForm::Cyclic => "nambu-cyclic",
            NambuForm::RightDerivation => "nambu-right-derivation",
        }
    }

    fn identity(self) -> &'static str {
        match self {
            NambuForm::Fundamental => {
                "[a(y2),a(y3),[x1,x2,x3]] = [[x1,y2,y3],a(x2),a(x3)] + [a(x1),[x2,y2,y3],a(x3)] + [a(x1),a(x2),[x3,y2,y3]]"
            }
            NambuForm::Cyclic => {
                "[[x1,x2,x3],a(y2),a(y3)] = [[x1,y2,y3],a(x2),a(x3)] + [[x2,y2,y3],a(x3),a(x1)] + [[x3,y2,y3],a(x1),a(x2)]"
            }
            NambuForm::RightDerivation => {
                "[[x1,x2,x3],a(y2),a(y3)] = [[x1,y2,y3],a(x2),a(x3)] + [a(x1),[x2,y2,y3],a(x3)] + [a(x1),a(x2),[x3,y2,y3]]"
            }
        }
    }
}

/// Which "lies in a kernel" condition to test on `(L, f, P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelVariant {
    /// `f(x)[Py,Pz] + cyc ∈ Ker(P+λ)` for a Lie bracket.
    LieBracket,
    /// Same with the commutator `u∗v − v∗u` of a preLie product.
    PreLieCommutator,
    /// `f(x)(P(γy)∘Pz − Pz∘P(γy)) + cyc ∈ Ker(P+λ)` on an associative product.
    CentroidTwisted(Matrix),
    /// `det[f; DP; P] ∈ Ker(P+λ)` on a commutative product.
    Determinant(Matrix),
    /// `[f(x)Py − f(y)Px, z] + cyc ∈ Ker P²`.
    SquareNilpotent,
}

impl KernelVariant {
    pub fn name(&self) -> &'static str {
        match self {
            KernelVariant::LieBracket => "kernel-lie-bracket",
            KernelVariant::PreLieCommutator => "kernel-prelie-commutator",
            KernelVariant::CentroidTwisted(_) => "kernel-centroid-twisted",
            KernelVariant::Determinant(_) => "kernel-determinant",
            KernelVariant::SquareNilpotent => "kernel-square-nilpotent",
        }
    }
}

/// Checker configuration: counterexample cap and worker count.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub limit: usize,
    pub jobs: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            limit: DEFAULT_VIOLATION_LIMIT,
            jobs: 1,
        }
    }
}

fn require_square_map(a: &HomAlgebra, m: &Matrix) -> Result<()> {
    a.check_map(m)
}

fn scalar_vec(s: Scalar) -> Vec<Scalar> {
    vec![s]
}

/// `f_i g(j,k) + f_j g(k,i) + f_k g(i,j)` for a binary tensor `g`.
pub(crate) fn cyclic_functional_sum(
    f: &LinearFunctional,
    g: &StructureTensor,
    i: usize,
    j: usize,
    k: usize,
) -> Vec<Scalar> {
    let mut out = f.field().zero_vec(g.dim());
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let fa = f.at(a);
        if !fa.is_zero() {
            vector::axpy(&mut out, fa, g.get(&[b, c]));
        }
    }
    out
}

/// `g(j,k) − g(k,j)` as a tensor.
pub(crate) fn antisymmetrized(g: &StructureTensor) -> StructureTensor {
    let d = g.dim();
    StructureTensor::from_fn(g.field(), d, 2, |t| vector::sub(g.get(&[t[0], t[1]]), g.get(&[t[1], t[0]])))
        .expect("same shape")
}

impl Checker {
    pub fn new(limit: usize, jobs: usize) -> Self {
        Checker {
            limit: limit.max(1),
            jobs: jobs.max(1),
        }
    }

    /// Evaluate `f` on every tuple in `[0,dim)^len`, partitioned by first index.
    fn scan<F>(&self, axiom: &str, identity: &str, dim: usize, len: usize, f: F) -> AxiomReport
    where
        F: Fn(&[usize]) -> (Vec<Scalar>, Vec<Scalar>) + Sync + Send,
    {
        let limit = self.limit;
        let chunks = par::map_ordered(self.jobs, (0..dim).collect(), |first| {
            let mut rb = ReportBuilder::new(axiom, identity, limit);
            let mut tuple = vec![first; len];
            for rest in tuples(dim, len - 1) {
                tuple[1..].copy_from_slice(&rest);
                let (lhs, rhs) = f(&tuple);
                rb.compare(&tuple, lhs, rhs);
            }
            rb
        });
        let mut chunks = chunks.into_iter();
        let mut rb = chunks
            .next()
            .unwrap_or_else(|| ReportBuilder::new(axiom, identity, limit));
        for c in chunks {
            rb.absorb(c);
        }
        rb.finish()
    }

    fn tensor_equality(&self, axiom: &str, identity: &str, lhs: &StructureTensor, rhs: &StructureTensor) -> AxiomReport {
        self.scan(axiom, identity, lhs.dim(), lhs.arity(), |t| {
            (lhs.get(t).to_vec(), rhs.get(t).to_vec())
        })
    }

    fn combine(&self, axiom: &str, identity: &str, parts: Vec<AxiomReport>) -> AxiomReport {
        AxiomReport::combine(axiom, identity, parts, self.limit)
    }

    /// `m(x) = y` column-by-column comparison of two matrices.
    fn matrix_equality(&self, axiom: &str, identity: &str, lhs: &Matrix, rhs: &Matrix) -> AxiomReport {
        self.scan(axiom, identity, lhs.cols(), 1, |t| (lhs.column(t[0]), rhs.column(t[0])))
    }

    pub fn commutation(&self, name: &str, a: &Matrix, b: &Matrix) -> Result<AxiomReport> {
        let ab = a.mul(b)?;
        let ba = b.mul(a)?;
        Ok(self.matrix_equality(name, "A(B(e_j)) = B(A(e_j))", &ab, &ba))
    }

    pub fn anticommutation(&self, name: &str, a: &Matrix, b: &Matrix) -> Result<AxiomReport> {
        let ab = a.mul(b)?;
        let ba = b.mul(a)?.scale(&a.field().from_i64(-1));
        Ok(self.matrix_equality(name, "A(B(e_j)) = -B(A(e_j))", &ab, &ba))
    }

    pub fn identity_twist(&self, a: &HomAlgebra) -> AxiomReport {
        let id = Matrix::identity(a.field(), a.dim());
        self.matrix_equality("untwisted", "a(e_j) = e_j", a.twist(), &id)
    }

    pub fn invertible(&self, name: &str, m: &Matrix) -> AxiomReport {
        let mut rb = ReportBuilder::new(name, "rank = dimension", self.limit);
        // counts compared as rationals so they cannot wrap mod p
        let f = crate::field::FieldSpec::Rationals;
        rb.compare(
            &[],
            scalar_vec(f.from_i64(m.rank() as i64)),
            scalar_vec(f.from_i64(m.rows() as i64)),
        );
        rb.finish()
    }

    /// `m⟨x1..xn⟩ = ⟨m x1, …, m xn⟩`.
    pub fn endomorphism(&self, name: &str, a: &HomAlgebra, m: &Matrix) -> Result<AxiomReport> {
        require_square_map(a, m)?;
        let t = a.tensor();
        let lhs = t.map_output(m)?;
        let rhs = t.compose_slots(&vec![Some(m); a.arity()])?;
        Ok(self.tensor_equality(name, "m(<x1,..,xn>) = <m(x1),..,m(xn)>", &lhs, &rhs))
    }

    pub fn multiplicative(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        let mut r = self.endomorphism("multiplicative", a, a.twist())?;
        r.identity = "a(<x1,..,xn>) = <a(x1),..,a(xn)>".into();
        Ok(r)
    }

    /// Tensors with the twist applied on every slot except `skip`.
    fn twisted_except(&self, a: &HomAlgebra) -> Result<Vec<StructureTensor>> {
        let n = a.arity();
        (0..n)
            .map(|skip| {
                let maps: Vec<Option<&Matrix>> = (0..n)
                    .map(|s| if s == skip { None } else { Some(a.twist()) })
                    .collect();
                a.tensor().compose_slots(&maps)
            })
            .collect()
    }

    /// The n-ary Hom-Nambu identity on tuples `(y2..yn, x1..xn)`.
    pub fn hom_nambu(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        let n = a.arity();
        let t = a.tensor();
        let tw = self.twisted_except(a)?;
        Ok(self.scan(
            "hom-nambu",
            "[a(y2),..,a(yn),[x1,..,xn]] = sum_i [a(x1),..,[x_i,y2,..,yn],..,a(xn)]",
            a.dim(),
            2 * n - 1,
            |tuple| {
                let (ys, xs) = tuple.split_at(n - 1);
                let inner = t.get(xs).to_vec();
                let mut args: Vec<Arg<'_>> = ys.iter().map(|&y| Arg::Basis(y)).collect();
                args.push(Arg::Vector(&inner));
                let lhs = tw[n - 1].eval_args(&args);
                let mut rhs = a.field().zero_vec(a.dim());
                let mut key = vec![0; n];
                key[1..].copy_from_slice(ys);
                for i in 0..n {
                    key[0] = xs[i];
                    let v = t.get(&key);
                    if vector::is_zero(v) {
                        continue;
                    }
                    let args: Vec<Arg<'_>> = (0..n)
                        .map(|s| if s == i { Arg::Vector(v) } else { Arg::Basis(xs[s]) })
                        .collect();
                    vector::add_assign(&mut rhs, &tw[i].eval_args(&args));
                }
                (lhs, rhs)
            },
        ))
    }

    /// One of the written ternary forms, on tuples `(x1,x2,x3,y2,y3)`.
    pub fn nambu_form(&self, a: &HomAlgebra, form: NambuForm) -> Result<AxiomReport> {
        a.require_arity(3)?;
        let t = a.tensor();
        let tw = self.twisted_except(a)?;
        Ok(self.scan(form.name(), form.identity(), a.dim(), 5, |tu| {
            let (x, y2, y3) = (&tu[..3], tu[3], tu[4]);
            let inner = |xi: usize| t.get(&[xi, y2, y3]);
            let lhs = match form {
                NambuForm::Fundamental => {
                    let v = t.get(x);
                    tw[2].eval_args(&[Arg::Basis(y2), Arg::Basis(y3), Arg::Vector(v)])
                }
                NambuForm::Cyclic | NambuForm::RightDerivation => {
                    let v = t.get(x);
                    tw[0].eval_args(&[Arg::Vector(v), Arg::Basis(y2), Arg::Basis(y3)])
                }
            };
            let mut rhs = a.field().zero_vec(a.dim());
            match form {
                NambuForm::Cyclic => {
                    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                        let v = inner(x[i]);
                        let term = tw[0].eval_args(&[Arg::Vector(v), Arg::Basis(x[j]), Arg::Basis(x[k])]);
                        vector::add_assign(&mut rhs, &term);
                    }
                }
                NambuForm::Fundamental | NambuForm::RightDerivation => {
                    for i in 0..3 {
                        let v = inner(x[i]);
                        let args: Vec<Arg<'_>> = (0..3)
                            .map(|s| if s == i { Arg::Vector(v) } else { Arg::Basis(x[s]) })
                            .collect();
                        vector::add_assign(&mut rhs, &tw[i].eval_args(&args));
                    }
                }
            }
            (lhs, rhs)
        }))
    }

    pub fn hom_associative(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        a.require_arity(2)?;
        let t = a.tensor();
        let left = t.compose_slot(0, a.twist())?;
        let right = t.compose_slot(1, a.twist())?;
        Ok(self.scan("hom-associative", "a(x)(yz) = (xy)a(z)", a.dim(), 3, |tu| {
            let yz = t.get(&tu[1..]);
            let xy = t.get(&tu[..2]);
            (
                left.eval_args(&[Arg::Basis(tu[0]), Arg::Vector(yz)]),
                right.eval_args(&[Arg::Vector(xy), Arg::Basis(tu[2])]),
            )
        }))
    }

    pub fn commutative(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        a.require_arity(2)?;
        let t = a.tensor();
        Ok(self.scan("commutative", "xy = yx", a.dim(), 2, |tu| {
            (t.get(tu).to_vec(), t.get(&[tu[1], tu[0]]).to_vec())
        }))
    }

    pub fn hom_prelie(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        a.require_arity(2)?;
        let t = a.tensor();
        let left = t.compose_slot(0, a.twist())?;
        let right = t.compose_slot(1, a.twist())?;
        let assoc = |x: usize, y: usize, z: usize| {
            let l = left.eval_args(&[Arg::Basis(x), Arg::Vector(t.get(&[y, z]))]);
            let r = right.eval_args(&[Arg::Vector(t.get(&[x, y])), Arg::Basis(z)]);
            vector::sub(&l, &r)
        };
        Ok(self.scan(
            "hom-prelie",
            "a(x)*(y*z) - (x*y)*a(z) = a(y)*(x*z) - (y*x)*a(z)",
            a.dim(),
            3,
            |tu| (assoc(tu[0], tu[1], tu[2]), assoc(tu[1], tu[0], tu[2])),
        ))
    }

    /// Cyclic Hom-Jacobi sum alone.
    pub fn hom_jacobi(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        a.require_arity(2)?;
        let t = a.tensor();
        let left = t.compose_slot(0, a.twist())?;
        let zero = a.field().zero_vec(a.dim());
        Ok(self.scan(
            "hom-jacobi",
            "[a(x),[y,z]] + [a(y),[z,x]] + [a(z),[x,y]] = 0",
            a.dim(),
            3,
            |tu| {
                let mut sum = zero.clone();
                for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                    let v = t.get(&[tu[j], tu[k]]);
                    vector::add_assign(&mut sum, &left.eval_args(&[Arg::Basis(tu[i]), Arg::Vector(v)]));
                }
                (sum, zero.clone())
            },
        ))
    }

    pub fn skew_symmetric(&self, t: &StructureTensor) -> AxiomReport {
        skew_report(t, self.limit)
    }

    pub fn hom_lie(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        let parts = vec![self.skew_symmetric(a.tensor()), self.hom_jacobi(a)?];
        Ok(self.combine("hom-lie", "skew-symmetric and cyclic Hom-Jacobi", parts))
    }

    pub fn hom_lie_triple(&self, a: &HomAlgebra) -> Result<AxiomReport> {
        a.require_arity(3)?;
        let t = a.tensor();
        let d = a.dim();
        let zero = a.field().zero_vec(d);
        // [x,y,y] = 0 for all vectors: zero on the diagonal, alternating off it
        let alternating = self.scan("lie-triple-alternating", "[x,y,y] = 0", d, 3, |tu| {
            let v = t.get(tu).to_vec();
            if tu[1] == tu[2] {
                (v, zero.clone())
            } else {
                (v, vector::neg(t.get(&[tu[0], tu[2], tu[1]])))
            }
        });
        let sum = self.scan(
            "lie-triple-sum",
            "[x,y,z] + [y,x,z] + [z,x,y] = 0",
            d,
            3,
            |tu| {
                let (x, y, z) = (tu[0], tu[1], tu[2]);
                let mut s = t.get(&[x, y, z]).to_vec();
                vector::add_assign(&mut s, t.get(&[y, x, z]));
                vector::add_assign(&mut s, t.get(&[z, x, y]));
                (s, zero.clone())
            },
        );
        let mut triple = self.nambu_form(a, NambuForm::RightDerivation)?;
        triple.axiom = "lie-triple-identity".into();
        Ok(self.combine(
            "hom-lie-triple",
            "[x,y,y] = 0; [x,y,z]+[y,x,z]+[z,x,y] = 0; [[x,y,z],a(u),a(v)] = [[x,u,v],a(y),a(z)] + [a(x),[y,u,v],a(z)] + [a(x),a(y),[z,u,v]]",
            vec![alternating, sum, triple],
        ))
    }

    pub fn centroid(&self, a: &HomAlgebra, m: &Matrix) -> Result<AxiomReport> {
        a.require_arity(2)?;
        require_square_map(a, m)?;
        let t = a.tensor();
        let out = t.map_output(m)?;
        let first = t.compose_slot(0, m)?;
        let second = t.compose_slot(1, m)?;
        let parts = vec![
            self.tensor_equality("centroid-left", "m(xy) = m(x)y", &out, &first),
            self.tensor_equality("centroid-right", "m(xy) = x m(y)", &out, &second),
        ];
        Ok(self.combine("centroid", "m(xy) = m(x)y = x m(y)", parts))
    }

    pub fn involution(&self, a: &HomAlgebra, w: &Matrix) -> Result<AxiomReport> {
        a.require_arity(2)?;
        require_square_map(a, w)?;
        let sq = w.mul(w)?;
        let id = Matrix::identity(a.field(), a.dim());
        let parts = vec![
            self.matrix_equality("involution-square", "w(w(x)) = x", &sq, &id),
            self.endomorphism("involution-multiplicative", a, w)?,
        ];
        Ok(self.combine("involution", "w(xy) = w(x)w(y), w^2 = id", parts))
    }

    pub fn alpha_k_derivation(&self, a: &HomAlgebra, dm: &Matrix, k: u32) -> Result<AxiomReport> {
        a.require_arity(2)?;
        require_square_map(a, dm)?;
        let ak = a.twist().pow(k)?;
        let t = a.tensor();
        let lhs = t.map_output(dm)?;
        let rhs = t
            .compose_slots(&[Some(dm), Some(&ak)])?
            .add(&t.compose_slots(&[Some(&ak), Some(dm)])?)?;
        let parts = vec![
            self.commutation("commutes-with-twist", dm, a.twist())?,
            self.tensor_equality("alpha-k-leibniz", "D(xy) = D(x)a^k(y) + a^k(x)D(y)", &lhs, &rhs),
        ];
        Ok(self.combine(
            "alpha-k-derivation",
            "D(xy) = D(x)a^k(y) + a^k(x)D(y), D a = a D",
            parts,
        ))
    }

    /// Plain Leibniz rule `D(xy) = D(x)y + xD(y)`, no twist condition.
    pub fn leibniz(&self, a: &HomAlgebra, dm: &Matrix) -> Result<AxiomReport> {
        a.require_arity(2)?;
        require_square_map(a, dm)?;
        let t = a.tensor();
        let lhs = t.map_output(dm)?;
        let rhs = t.compose_slot(0, dm)?.add(&t.compose_slot(1, dm)?)?;
        Ok(self.tensor_equality("leibniz", "D(xy) = D(x)y + xD(y)", &lhs, &rhs))
    }

    /// Weighted derivation on an n-ary algebra, including `dα = αd`.
    pub fn derivation_weight(&self, a: &HomAlgebra, op: &WeightedOperator) -> Result<AxiomReport> {
        op.require_kind(OperatorKind::Derivation)?;
        require_square_map(a, &op.matrix)?;
        a.field().ensure_same(&op.weight.field())?;
        let parts = vec![
            self.commutation("commutes-with-twist", &op.matrix, a.twist())?,
            self.derivation_identity(a, &op.matrix, &op.weight)?,
        ];
        Ok(self.combine(
            "derivation-weight",
            "d<x1,..,xn> = sum_{I} l^{|I|-1} <d or a>, d a = a d",
            parts,
        ))
    }

    /// Only the subset-sum identity of a weighted derivation.
    pub fn derivation_identity(&self, a: &HomAlgebra, dm: &Matrix, weight: &Scalar) -> Result<AxiomReport> {
        require_square_map(a, dm)?;
        let t = a.tensor();
        let lhs = t.map_output(dm)?;
        let rhs = subset_sum(t, Some(dm), Some(a.twist()), weight)?;
        Ok(self.tensor_equality(
            "derivation-identity",
            "d<x1,..,xn> = sum_{I nonempty} l^{|I|-1} <d on I, a off I>",
            &lhs,
            &rhs,
        ))
    }

    pub fn rota_baxter(&self, a: &HomAlgebra, op: &WeightedOperator) -> Result<AxiomReport> {
        op.require_kind(OperatorKind::RotaBaxter)?;
        self.rota_baxter_matrix(a, &op.matrix, &op.weight)
    }

    pub fn rota_baxter_matrix(&self, a: &HomAlgebra, p: &Matrix, weight: &Scalar) -> Result<AxiomReport> {
        require_square_map(a, p)?;
        let t = a.tensor();
        let lhs = t.compose_slots(&vec![Some(p); a.arity()])?;
        let rhs = subset_sum(t, None, Some(p), weight)?.map_output(p)?;
        Ok(self.tensor_equality(
            "rota-baxter",
            "<P x1,..,P xn> = P(sum_{I nonempty} l^{|I|-1} <id on I, P off I>)",
            &lhs,
            &rhs,
        ))
    }

    pub fn kernel_condition(
        &self,
        base: &HomAlgebra,
        f: &LinearFunctional,
        op: &WeightedOperator,
        variant: &KernelVariant,
    ) -> Result<AxiomReport> {
        base.require_arity(2)?;
        f.check_dim(base.dim())?;
        require_square_map(base, &op.matrix)?;
        base.field().ensure_same(&f.field())?;
        let field = base.field();
        let d = base.dim();
        let p = &op.matrix;
        let t = base.tensor();
        let id = Matrix::identity(field, d);
        let target = match variant {
            KernelVariant::SquareNilpotent => p.mul(p)?,
            _ => p.add(&id.scale(&op.weight))?,
        };
        // g(j,k) so that the expression is f_i g(j,k) + f_j g(k,i) + f_k g(i,j)
        let g = match variant {
            KernelVariant::LieBracket => t.compose_slots(&[Some(p), Some(p)])?,
            KernelVariant::PreLieCommutator => antisymmetrized(&t.compose_slots(&[Some(p), Some(p)])?),
            KernelVariant::CentroidTwisted(gamma) => {
                require_square_map(base, gamma)?;
                let pg = p.mul(gamma)?;
                let first = t.compose_slots(&[Some(&pg), Some(p)])?;
                let second = t.compose_slots(&[Some(p), Some(&pg)])?;
                StructureTensor::from_fn(field, d, 2, |tu| {
                    vector::sub(first.get(&[tu[0], tu[1]]), second.get(&[tu[1], tu[0]]))
                })?
            }
            KernelVariant::Determinant(dm) => {
                require_square_map(base, dm)?;
                let dp = dm.mul(p)?;
                // det[f; DP; P] expanded along the scalar row
                let h = t.compose_slots(&[Some(&dp), Some(p)])?;
                antisymmetrized(&h)
            }
            KernelVariant::SquareNilpotent => {
                // [f(x)Py − f(y)Px, z] + cyc regrouped as f_i q(j,k) − f_i q(k,j)
                let q = t.compose_slot(0, p)?;
                antisymmetrized(&q)
            }
        };
        let zero = field.zero_vec(d);
        Ok(self.scan(
            variant.name(),
            match variant {
                KernelVariant::SquareNilpotent => "P^2(expression) = 0 on all basis triples",
                _ => "(P + l id)(expression) = 0 on all basis triples",
            },
            d,
            3,
            |tu| {
                let e = cyclic_functional_sum(f, &g, tu[0], tu[1], tu[2]);
                (target.apply(&e), zero.clone())
            },
        ))
    }

    /// `f(⟨x1..xn⟩) = 0` on basis tuples.
    pub fn functional_annihilates(&self, a: &HomAlgebra, f: &LinearFunctional) -> Result<AxiomReport> {
        f.check_dim(a.dim())?;
        let t = a.tensor();
        let zero = scalar_vec(a.field().zero());
        Ok(self.scan("functional-annihilates", "f(<x1,..,xn>) = 0", a.dim(), a.arity(), |tu| {
            (scalar_vec(f.apply(t.get(tu))), zero.clone())
        }))
    }

    /// `f(α(x))f(y) = f(α(y))f(x)`.
    pub fn functional_alpha_compatible(&self, a: &HomAlgebra, f: &LinearFunctional) -> Result<AxiomReport> {
        f.check_dim(a.dim())?;
        let fa = f.compose(a.twist());
        Ok(self.scan(
            "functional-twist-compatible",
            "f(a(x))f(y) = f(a(y))f(x)",
            a.dim(),
            2,
            |tu| {
                let (x, y) = (tu[0], tu[1]);
                (scalar_vec(fa.at(x) * f.at(y)), scalar_vec(fa.at(y) * f.at(x)))
            },
        ))
    }

    /// `f(D(x)y) = f(xD(y))`.
    pub fn functional_derivation_symmetric(
        &self,
        a: &HomAlgebra,
        f: &LinearFunctional,
        dm: &Matrix,
    ) -> Result<AxiomReport> {
        a.require_arity(2)?;
        f.check_dim(a.dim())?;
        require_square_map(a, dm)?;
        let t = a.tensor();
        let left = t.compose_slot(0, dm)?;
        let right = t.compose_slot(1, dm)?;
        Ok(self.scan("functional-derivation-symmetric", "f(D(x)y) = f(xD(y))", a.dim(), 2, |tu| {
            (scalar_vec(f.apply(left.get(tu))), scalar_vec(f.apply(right.get(tu))))
        }))
    }

    /// `f(P(x)∗y − y∗P(x)) = f(P(y)∗x − x∗P(y))`.
    pub fn prelie_operator_functional(
        &self,
        a: &HomAlgebra,
        f: &LinearFunctional,
        p: &Matrix,
    ) -> Result<AxiomReport> {
        a.require_arity(2)?;
        f.check_dim(a.dim())?;
        require_square_map(a, p)?;
        let t = a.tensor();
        let left = t.compose_slot(0, p)?;
        let right = t.compose_slot(1, p)?;
        let side = |x: usize, y: usize| f.apply(&vector::sub(left.get(&[x, y]), right.get(&[y, x])));
        Ok(self.scan(
            "prelie-operator-functional",
            "f(P(x)*y - y*P(x)) = f(P(y)*x - x*P(y))",
            a.dim(),
            2,
            |tu| (scalar_vec(side(tu[0], tu[1])), scalar_vec(side(tu[1], tu[0]))),
        ))
    }

    /// `f(x)(P²y∗P²z − P²z∗P²y) + cyc = 0`.
    pub fn prelie_square_condition(
        &self,
        a: &HomAlgebra,
        f: &LinearFunctional,
        p: &Matrix,
    ) -> Result<AxiomReport> {
        a.require_arity(2)?;
        f.check_dim(a.dim())?;
        require_square_map(a, p)?;
        let p2 = p.mul(p)?;
        let g = antisymmetrized(&a.tensor().compose_slots(&[Some(&p2), Some(&p2)])?);
        let zero = a.field().zero_vec(a.dim());
        Ok(self.scan(
            "prelie-square-condition",
            "f(x)(P^2y*P^2z - P^2z*P^2y) + cyclic = 0",
            a.dim(),
            3,
            |tu| (cyclic_functional_sum(f, &g, tu[0], tu[1], tu[2]), zero.clone()),
        ))
    }
}

macro_rules! default_checker {
    ($(#[$m:meta])* $name:ident => $method:ident ( $($arg:ident : $ty:ty),* ) ) => {
        $(#[$m])*
        pub fn $name($($arg: $ty),*) -> Result<AxiomReport> {
            Checker::default().$method($($arg),*)
        }
    };
}

/// Names of the checks that need nothing beyond the algebra itself.
pub const ALGEBRA_AXIOMS: &[&str] = &[
    "multiplicative",
    "hom-nambu",
    "nambu-fundamental",
    "nambu-cyclic",
    "nambu-right-derivation",
    "hom-associative",
    "commutative",
    "hom-prelie",
    "hom-jacobi",
    "skew-symmetric",
    "hom-lie",
    "hom-lie-triple",
];

impl Checker {
    /// Run an algebra-only check by its kebab-case name; `None` if unknown.
    pub fn by_name(&self, name: &str, a: &HomAlgebra) -> Option<Result<AxiomReport>> {
        Some(match name {
            "multiplicative" => self.multiplicative(a),
            "hom-nambu" => self.hom_nambu(a),
            "nambu-fundamental" => self.nambu_form(a, NambuForm::Fundamental),
            "nambu-cyclic" => self.nambu_form(a, NambuForm::Cyclic),
            "nambu-right-derivation" => self.nambu_form(a, NambuForm::RightDerivation),
            "hom-associative" => self.hom_associative(a),
            "commutative" => self.commutative(a),
            "hom-prelie" => self.hom_prelie(a),
            "hom-jacobi" => self.hom_jacobi(a),
            "skew-symmetric" => Ok(self.skew_symmetric(a.tensor())),
            "hom-lie" => self.hom_lie(a),
            "hom-lie-triple" => self.hom_lie_triple(a),
            _ => return None,
        })
    }
}

default_checker!(check_multiplicative => multiplicative(a: &HomAlgebra));
default_checker!(check_hom_nambu => hom_nambu(a: &HomAlgebra));
default_checker!(check_nambu_form => nambu_form(a: &HomAlgebra, form: NambuForm));
default_checker!(check_hom_associative => hom_associative(a: &HomAlgebra));
default_checker!(check_commutative => commutative(a: &HomAlgebra));
default_checker!(check_hom_prelie => hom_prelie(a: &HomAlgebra));
default_checker!(check_hom_lie => hom_lie(a: &HomAlgebra));
default_checker!(check_hom_lie_triple => hom_lie_triple(a: &HomAlgebra));
default_checker!(check_centroid => centroid(a: &HomAlgebra, m: &Matrix));
default_checker!(check_involution => involution(a: &HomAlgebra, w: &Matrix));
default_checker!(check_alpha_k_derivation => alpha_k_derivation(a: &HomAlgebra, d: &Matrix, k: u32));
default_checker!(check_leibniz => leibniz(a: &HomAlgebra, d: &Matrix));
default_checker!(check_derivation_weight => derivation_weight(a: &HomAlgebra, d: &WeightedOperator));
default_checker!(check_rota_baxter => rota_baxter(a: &HomAlgebra, p: &WeightedOperator));
default_checker!(check_kernel_condition => kernel_condition(
    base: &HomAlgebra, f: &LinearFunctional, p: &WeightedOperator, variant: &KernelVariant
));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::error::Error;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(d: usize, i: usize) -> Vec<Scalar> {
        q().basis_vec(d, i)
    }

    fn heisenberg() -> HomAlgebra {
        let t = StructureTensor::from_entries(q(), 3, 2, &[(vec![1, 2], e(3, 2))]).unwrap();
        HomAlgebra::untwisted(crate::algebra::skew_symmetrize(&t).unwrap())
    }

    fn truncated_poly() -> HomAlgebra {
        let t = StructureTensor::from_fn(q(), 4, 2, |tu| {
            let s = tu[0] + tu[1];
            if s < 4 {
                e(4, s)
            } else {
                q().zero_vec(4)
            }
        })
        .unwrap();
        HomAlgebra::untwisted(t)
    }

    fn n4() -> HomAlgebra {
        let t = StructureTensor::from_entries(q(), 4, 3, &[(vec![1, 2, 3], e(4, 3))]).unwrap();
        HomAlgebra::untwisted(crate::algebra::skew_symmetrize(&t).unwrap())
    }

    #[test]
    fn heisenberg_with_diagonal_twist_is_multiplicative() {
        let a = heisenberg()
            .with_twist(Matrix::diagonal(q(), &vector::from_i64(q(), &[1, 1, 2])))
            .unwrap();
        assert!(!check_multiplicative(&a).unwrap().pass);
        let a = heisenberg()
            .with_twist(Matrix::diagonal(q(), &vector::from_i64(q(), &[1, 2, 2])))
            .unwrap();
        assert!(check_multiplicative(&a).unwrap().pass);
    }

    #[test]
    fn heisenberg_is_lie_not_commutative() {
        let h = heisenberg();
        assert!(check_hom_lie(&h).unwrap().pass);
        let c = check_commutative(&h).unwrap();
        assert!(!c.pass);
        assert_eq!(c.first_tuple(), Some(&[1, 2][..]));
        // two-step nilpotent, so the product is associative as well
        assert!(check_hom_associative(&h).unwrap().pass);
        let aff = StructureTensor::from_entries(q(), 2, 2, &[(vec![1, 2], e(2, 1))]).unwrap();
        let aff = HomAlgebra::untwisted(crate::algebra::skew_symmetrize(&aff).unwrap());
        let r = check_hom_associative(&aff).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_tuple(), Some(&[1, 1, 2][..]));
    }

    #[test]
    fn truncated_polynomials_are_commutative_associative() {
        let t4 = truncated_poly();
        assert!(check_hom_associative(&t4).unwrap().pass);
        assert!(check_commutative(&t4).unwrap().pass);
        assert!(check_hom_prelie(&t4).unwrap().pass);
        let r = check_hom_lie(&t4).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violations[0].part.as_deref(), Some("skew-symmetric"));
    }

    #[test]
    fn three_lie_algebra_satisfies_all_nambu_forms() {
        let a = n4();
        assert!(check_hom_nambu(&a).unwrap().pass);
        for form in NambuForm::ALL {
            assert!(check_nambu_form(&a, form).unwrap().pass, "{form:?}");
        }
        assert_eq!(check_hom_nambu(&a).unwrap().checked, 4u64.pow(5));
    }

    #[test]
    fn identity_derivation_fails_on_heisenberg() {
        let r = check_alpha_k_derivation(&heisenberg(), &Matrix::identity(q(), 3), 0).unwrap();
        assert!(!r.pass);
        let v = &r.violations[0];
        assert_eq!(v.tuple, vec![1, 2]);
        assert_eq!(v.lhs, e(3, 2));
        assert_eq!(v.rhs, vector::scale(&q().from_i64(2), &e(3, 2)));
    }

    #[test]
    fn zero_operators_pass() {
        let a = n4();
        let z = Matrix::zeros(q(), 4, 4);
        for w in [0, 1, 5] {
            let p = WeightedOperator::rota_baxter(z.clone(), q().from_i64(w)).unwrap();
            assert!(check_rota_baxter(&a, &p).unwrap().pass);
            let d = WeightedOperator::derivation(z.clone(), q().from_i64(w)).unwrap();
            assert!(check_derivation_weight(&a, &d).unwrap().pass);
        }
    }

    #[test]
    fn projection_is_rota_baxter_on_three_lie() {
        let p = Matrix::diagonal(q(), &vector::from_i64(q(), &[0, 0, 0, 1]));
        let op = WeightedOperator::rota_baxter(p, q().zero()).unwrap();
        assert!(check_rota_baxter(&n4(), &op).unwrap().pass);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let op = WeightedOperator::derivation(Matrix::zeros(q(), 4, 4), q().zero()).unwrap();
        assert!(matches!(check_rota_baxter(&n4(), &op), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn lie_triple_alternating_failure_is_reported_first() {
        let t = StructureTensor::from_entries(q(), 2, 3, &[(vec![1, 2, 2], e(2, 0))]).unwrap();
        let r = check_hom_lie_triple(&HomAlgebra::untwisted(t)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_tuple(), Some(&[1, 2, 2][..]));
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let f5 = FieldSpec::PrimeField(5);
        let t = StructureTensor::from_fn(f5, 3, 3, |tu| {
            vector::from_i64(f5, &[(tu[0] * tu[1]) as i64, (tu[2] + 1) as i64, (tu[0] + 2 * tu[2]) as i64])
        })
        .unwrap();
        let twisted = HomAlgebra::new(t, Matrix::from_i64(f5, &[&[1, 2, 0], &[0, 1, 0], &[3, 0, 4]])).unwrap();
        let seq = Checker::new(3, 1).hom_nambu(&twisted).unwrap();
        let par = Checker::new(3, 4).hom_nambu(&twisted).unwrap();
        assert_eq!(seq, par);
        assert!(!seq.pass);
        assert_eq!(seq.violations.len(), 3);
    }

    #[test]
    fn multiplication_by_t_is_in_the_centroid() {
        let mut m = Matrix::zeros(q(), 4, 4);
        for i in 0..3 {
            m.set(i + 1, i, q().one());
        }
        assert!(check_centroid(&truncated_poly(), &m).unwrap().pass);
        assert!(check_centroid(&truncated_poly(), &Matrix::identity(q(), 4).scale(&q().from_i64(2)))
            .unwrap()
            .pass);
    }

    #[test]
    fn nilpotent_is_not_an_involution() {
        let w = Matrix::from_i64(q(), &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let r = check_involution(&truncated_poly(), &w).unwrap();
        assert!(!r.pass);
        let parity = Matrix::diagonal(q(), &vector::from_i64(q(), &[1, -1, 1, -1]));
        assert!(check_involution(&truncated_poly(), &parity).unwrap().pass);
    }
}
