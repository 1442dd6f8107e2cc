//! Named example algebras, operators and searched finite-field fixtures.
//!
//! The shipped JSON bundles under `catalog/` are generated by [`generate`];
//! a test keeps them in sync.

use crate::algebra::{skew_symmetrize, HomAlgebra, LinearFunctional, StructureTensor, WeightedOperator};
use crate::axioms::Checker;
use crate::bundle::{parse_bundle, AlgebraBundle};
use crate::error::Result;
use crate::field::{vector, FieldSpec};
use crate::matrix::Matrix;
use crate::search::{self, fixtures, SearchSpec};
use crate::OperatorKind;

pub const CATALOG_Q: &str = include_str!("../catalog/catalog_q.json");
pub const CATALOG_F2: &str = include_str!("../catalog/catalog_f2.json");
pub const CATALOG_F3: &str = include_str!("../catalog/catalog_f3.json");

/// Shipped bundle files and their contents.
pub fn shipped() -> [(&'static str, &'static str); 3] {
    [
        ("catalog_q.json", CATALOG_Q),
        ("catalog_f2.json", CATALOG_F2),
        ("catalog_f3.json", CATALOG_F3),
    ]
}

/// Parses every shipped bundle.
pub fn load() -> Result<Vec<(&'static str, AlgebraBundle)>> {
    shipped()
        .into_iter()
        .map(|(name, text)| Ok((name, parse_bundle(text)?)))
        .collect()
}

pub fn load_file(name: &str) -> Result<AlgebraBundle> {
    let text = shipped()
        .into_iter()
        .find(|(n, _)| *n == name || *n == format!("{name}.json") || *n == format!("catalog_{name}.json"))
        .map(|(_, t)| t)
        .ok_or_else(|| crate::Error::Semantic(format!("no shipped catalog {name:?}")))?;
    parse_bundle(text)
}

fn skew_binary(field: FieldSpec, dim: usize, entries: &[(usize, usize, usize)]) -> StructureTensor {
    let e: Vec<(Vec<usize>, Vec<_>)> = entries
        .iter()
        .map(|&(i, j, k)| (vec![i, j], field.basis_vec(dim, k - 1)))
        .collect();
    let t = StructureTensor::from_entries(field, dim, 2, &e).expect("catalog shape");
    skew_symmetrize(&t).expect("increasing entries")
}

pub fn abelian(field: FieldSpec, dim: usize, arity: usize) -> HomAlgebra {
    HomAlgebra::untwisted(StructureTensor::zero(field, dim, arity).expect("catalog shape"))
        .named(format!("abelian_{dim}_{arity}"))
}

/// Heisenberg: `[e1,e2] = e3`.
pub fn h3(field: FieldSpec) -> HomAlgebra {
    HomAlgebra::untwisted(skew_binary(field, 3, &[(1, 2, 3)])).named("H3")
}

/// Affine algebra plus a central line: `[e1,e2] = e2`.
pub fn aff2c(field: FieldSpec) -> HomAlgebra {
    HomAlgebra::untwisted(skew_binary(field, 3, &[(1, 2, 2)])).named("AFF2C")
}

/// The 4-dimensional 3-Lie algebra with `[e1,e2,e3] = e4`.
pub fn n4(field: FieldSpec) -> HomAlgebra {
    let t = StructureTensor::from_entries(field, 4, 3, &[(vec![1, 2, 3], field.basis_vec(4, 3))])
        .expect("catalog shape");
    HomAlgebra::untwisted(skew_symmetrize(&t).expect("increasing entries")).named("N4")
}

/// Truncated polynomials `K[t]/(t^4)` on the basis `1, t, t², t³`.
pub fn t4(field: FieldSpec) -> HomAlgebra {
    let t = StructureTensor::from_fn(field, 4, 2, |tu| {
        if tu[0] + tu[1] < 4 {
            field.basis_vec(4, tu[0] + tu[1])
        } else {
            field.zero_vec(4)
        }
    })
    .expect("catalog shape");
    HomAlgebra::untwisted(t).named("T4")
}

/// Dimension 2 with the single product `e1·e1 = e2`.
pub fn square_line(field: FieldSpec) -> HomAlgebra {
    let t = StructureTensor::from_entries(field, 2, 2, &[(vec![1, 1], field.basis_vec(2, 1))])
        .expect("catalog shape");
    HomAlgebra::untwisted(t).named("C11")
}

/// `t^k ↦ c(k) t^{k+shift}` on T4.
fn t4_map(field: FieldSpec, shift: i64, coeff: impl Fn(i64) -> i64) -> Matrix {
    let cols: Vec<Vec<_>> = (0..4i64)
        .map(|k| {
            let target = k + shift;
            if (0..4).contains(&target) {
                vector::scale(&field.from_i64(coeff(k)), &field.basis_vec(4, target as usize))
            } else {
                field.zero_vec(4)
            }
        })
        .collect();
    Matrix::from_columns(field, &cols).expect("square")
}

pub fn t4_d_dt(field: FieldSpec) -> Matrix {
    t4_map(field, -1, |k| k)
}

pub fn t4_euler(field: FieldSpec) -> Matrix {
    t4_map(field, 0, |k| k)
}

pub fn t4_t2_d_dt(field: FieldSpec) -> Matrix {
    t4_map(field, 1, |k| k)
}

pub fn t4_mul_t(field: FieldSpec) -> Matrix {
    t4_map(field, 1, |_| 1)
}

/// `t ↦ −t`.
pub fn t4_omega(field: FieldSpec) -> Matrix {
    t4_map(field, 0, |k| if k % 2 == 0 { 1 } else { -1 })
}

fn functionals(field: FieldSpec, dim: usize) -> Vec<(String, LinearFunctional)> {
    (0..dim)
        .map(|i| (format!("f{}", i + 1), LinearFunctional::dual_basis(field, dim, i)))
        .collect()
}

fn common_bundle(field: FieldSpec) -> AlgebraBundle {
    let mut b = AlgebraBundle::empty(field);
    b.push_algebra("abelian_2_2", abelian(field, 2, 2));
    b.push_algebra("abelian_3_2", abelian(field, 3, 2));
    b.push_algebra("abelian_3_3", abelian(field, 3, 3));
    b.push_algebra("H3", h3(field));
    b.push_algebra("AFF2C", aff2c(field));
    b.push_algebra("N4", n4(field));
    b.push_algebra("T4", t4(field));
    b.push_algebra("C11", square_line(field));
    b.functionals = functionals(field, 3);
    let mut p = Matrix::zeros(field, 4, 4);
    p.set(3, 3, field.one());
    b.operators.push((
        "P_N4".into(),
        WeightedOperator::rota_baxter(p, field.zero()).expect("square"),
    ));
    b.maps = vec![
        ("Dt".into(), t4_d_dt(field)),
        ("euler".into(), t4_euler(field)),
        ("t2Dt".into(), t4_t2_d_dt(field)),
        ("mul_t".into(), t4_mul_t(field)),
        ("omega".into(), t4_omega(field)),
    ];
    b
}

/// Searched populations stored under stable names.
fn searched_f2(b: &mut AlgebraBundle) -> Result<()> {
    let field = b.field;
    let checker = Checker::default();
    let twists = search::all_matrices(field, 2, 16)?;
    let tensors = fixtures::binary_tensors(field, 2, 1 << 12)?;
    let prelie = fixtures::algebras(&tensors, &twists, 1, |a| {
        !crate::axioms::check_commutative(a).map(|r| r.pass).unwrap_or(true)
            && checker.hom_prelie(a).map(|r| r.pass).unwrap_or(false)
            && checker.multiplicative(a).map(|r| r.pass).unwrap_or(false)
    });
    let (plain, twisted): (Vec<_>, Vec<_>) = prelie.into_iter().partition(|a| a.twist().is_identity());
    let twisted: Vec<_> = twisted.into_iter().filter(|a| a.twist().is_invertible()).collect();
    for (i, a) in plain.into_iter().take(2).chain(twisted.into_iter().take(2)).enumerate() {
        b.push_algebra(format!("prelie_f2_{}", i + 1), a);
    }
    let ternary = fixtures::alternating_tail_ternary(field, 2, 1 << 12)?;
    let triples = fixtures::algebras(&ternary, &twists, 1, |a| {
        !a.tensor().is_zero()
            && a.twist().is_invertible()
            && checker.multiplicative(a).map(|r| r.pass).unwrap_or(false)
            && checker.hom_lie_triple(a).map(|r| r.pass).unwrap_or(false)
    });
    for (i, a) in triples.into_iter().take(3).enumerate() {
        b.push_algebra(format!("lie_triple_f2_{}", i + 1), a);
    }
    Ok(())
}

fn searched_f3(b: &mut AlgebraBundle) -> Result<()> {
    let field = b.field;
    for w in [0i64, 1] {
        let spec = SearchSpec::new(aff2c(field), field.from_i64(w), OperatorKind::RotaBaxter);
        let found = search::enumerate_rota_baxter(&spec)?;
        let nonzero: Vec<_> = found
            .operators
            .into_iter()
            .filter(|o| !o.matrix.is_zero() && !o.matrix.is_identity())
            .collect();
        // first and last in lexicographic order
        for (tag, op) in [("a", nonzero.first()), ("b", nonzero.last())] {
            if let Some(op) = op {
                b.operators.push((format!("rb_AFF2C_w{w}_{tag}"), op.clone()));
            }
        }
    }
    Ok(())
}

/// Rebuild every shipped bundle from code.
pub fn generate() -> Result<Vec<(&'static str, AlgebraBundle)>> {
    let q = common_bundle(FieldSpec::Rationals);
    let mut f2 = common_bundle(FieldSpec::prime(2)?);
    searched_f2(&mut f2)?;
    let mut f3 = common_bundle(FieldSpec::prime(3)?);
    searched_f3(&mut f3)?;
    Ok(vec![
        ("catalog_q.json", q),
        ("catalog_f2.json", f2),
        ("catalog_f3.json", f3),
    ])
}

/// Axioms each catalog algebra is declared to satisfy, by name.
pub fn declared_axioms(algebra: &str) -> &'static [&'static str] {
    match algebra {
        "abelian_2_2" | "abelian_3_2" => &["multiplicative", "hom-lie", "hom-associative", "commutative", "hom-prelie"],
        "abelian_3_3" => &["multiplicative", "skew-symmetric", "hom-nambu", "hom-lie-triple"],
        "H3" | "AFF2C" => &["multiplicative", "hom-lie"],
        "N4" => &["multiplicative", "skew-symmetric", "hom-nambu", "nambu-fundamental", "nambu-cyclic", "nambu-right-derivation"],
        "T4" | "C11" => &["multiplicative", "hom-associative", "commutative", "hom-prelie"],
        n if n.starts_with("prelie_") => &["multiplicative", "hom-prelie"],
        n if n.starts_with("lie_triple_") => &["multiplicative", "hom-lie-triple"],
        _ => &[],
    }
}
