//! Independent oracles over plain `u64` residues.
//!
//! Everything here is written directly from the defining identities with
//! explicit loops and spelled-out terms. It shares no evaluation code with
//! the library: only the structure constants are read out of it.

#![allow(dead_code)]

use hom_nambu::algebra::tuples;
use hom_nambu::{HomAlgebra, LinearFunctional, Matrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Vector = Vec<u64>;
/// Row-major square matrix.
pub type Mat = Vec<Vec<u64>>;

#[derive(Clone, Debug)]
pub struct Table {
    pub p: u64,
    pub d: usize,
    pub n: usize,
    /// `c[idx(t)]` is the bracket of the basis tuple `t`.
    pub c: Vec<Vector>,
    pub alpha: Mat,
}

pub fn residues(v: &[hom_nambu::Scalar]) -> Vector {
    v.iter().map(|s| s.residue().expect("prime field")).collect()
}

pub fn mat(m: &Matrix) -> Mat {
    m.row_vecs().iter().map(|r| residues(r)).collect()
}

pub fn covector(f: &LinearFunctional) -> Vector {
    residues(f.covector())
}

pub fn table(a: &HomAlgebra) -> Table {
    let (d, n) = (a.dim(), a.arity());
    let p = a.field().characteristic();
    let mut c = vec![vec![0; d]; d.pow(n as u32)];
    for t in tuples(d, n) {
        let i = index(d, &t);
        c[i] = residues(a.tensor().get(&t));
    }
    Table { p, d, n, c, alpha: mat(a.twist()) }
}

fn index(d: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn to_matrix(a: &HomAlgebra, m: &Mat) -> Matrix {
    let f = a.field();
    let rows: Vec<Vec<_>> = m
        .iter()
        .map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect())
        .collect();
    Matrix::from_rows(f, rows).unwrap()
}

// ---- vector and matrix arithmetic mod p ----

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

pub fn scale(p: u64, s: u64, a: &[u64]) -> Vector {
    a.iter().map(|x| s % p * x % p).collect()
}

pub fn sum(p: u64, d: usize, vs: &[Vector]) -> Vector {
    vs.iter().fold(vec![0; d], |acc, v| add(p, &acc, v))
}

pub fn apply(p: u64, m: &Mat, v: &[u64]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

pub fn mat_mul(p: u64, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| (acc + a[i][k] * b[k][j]) % p)).collect())
        .collect()
}

pub fn identity(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn commute(p: u64, a: &Mat, b: &Mat) -> bool {
    mat_mul(p, a, b) == mat_mul(p, b, a)
}

pub fn dot(p: u64, f: &[u64], v: &[u64]) -> u64 {
    f.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p)
}

pub fn basis(d: usize, i: usize) -> Vector {
    (0..d).map(|j| u64::from(i == j)).collect()
}

pub fn neg(p: u64, x: u64) -> u64 {
    (p - x % p) % p
}

/// Every vector of `F_p^d`.
pub fn all_vectors(p: u64, d: usize) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vector| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, p: u64, d: usize) -> Mat {
    (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..p)).collect()).collect()
}

// ---- bracket evaluation ----

impl Table {
    pub fn basis(&self, i: usize) -> Vector {
        basis(self.d, i)
    }

    /// Multilinear expansion over the support of each argument.
    pub fn br(&self, xs: &[&[u64]]) -> Vector {
        assert_eq!(xs.len(), self.n);
        let p = self.p;
        let mut out = vec![0; self.d];
        let mut t = vec![0usize; self.n];
        loop {
            let coeff = t.iter().zip(xs).fold(1, |acc, (&i, x)| acc * x[i] % p);
            if coeff != 0 {
                let v = &self.c[index(self.d, &t)];
                for k in 0..self.d {
                    out[k] = (out[k] + coeff * v[k]) % p;
                }
            }
            // odometer
            let mut s = self.n;
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                t[s] += 1;
                if t[s] < self.d {
                    break;
                }
                t[s] = 0;
            }
        }
    }

    pub fn b2(&self, x: &[u64], y: &[u64]) -> Vector {
        self.br(&[x, y])
    }

    pub fn b3(&self, x: &[u64], y: &[u64], z: &[u64]) -> Vector {
        self.br(&[x, y, z])
    }

    pub fn al(&self, x: &[u64]) -> Vector {
        apply(self.p, &self.alpha, x)
    }

    fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.d).map(|i| self.basis(i)).collect()
    }

    pub fn from_fn(p: u64, d: usize, n: usize, alpha: Mat, f: impl Fn(&[usize]) -> Vector) -> Table {
        let mut c = vec![vec![0; d]; d.pow(n as u32)];
        for t in tuples(d, n) {
            c[index(d, &t)] = f(&t);
        }
        Table { p, d, n, c, alpha }
    }
}

// ---- binary identities ----

/// `P(x)P(y) = P(P(x)y + xP(y) + λxy)`.
pub fn binary_rota_baxter(t: &Table, pm: &Mat, l: u64) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    for x in &e {
        for y in &e {
            let (px, py) = (apply(p, pm, x), apply(p, pm, y));
            let lhs = t.b2(&px, &py);
            let inner = sum(p, t.d, &[t.b2(&px, y), t.b2(x, &py), scale(p, l, &t.b2(x, y))]);
            if lhs != apply(p, pm, &inner) {
                return false;
            }
        }
    }
    true
}

/// `d(xy) = d(x)α(y) + α(x)d(y) + λd(x)d(y)` together with `dα = αd`.
pub fn binary_derivation(t: &Table, dm: &Mat, l: u64) -> bool {
    let p = t.p;
    if !commute(p, dm, &t.alpha) {
        return false;
    }
    let e = t.basis_vectors();
    for x in &e {
        for y in &e {
            let (dx, dy, ax, ay) = (apply(p, dm, x), apply(p, dm, y), t.al(x), t.al(y));
            let lhs = apply(p, dm, &t.b2(x, y));
            let rhs = sum(p, t.d, &[t.b2(&dx, &ay), t.b2(&ax, &dy), scale(p, l, &t.b2(&dx, &dy))]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn commutative(t: &Table) -> bool {
    let e = t.basis_vectors();
    e.iter().all(|x| e.iter().all(|y| t.b2(x, y) == t.b2(y, x)))
}

pub fn skew2(t: &Table) -> bool {
    let e = t.basis_vectors();
    e.iter().all(|x| e.iter().all(|y| add(t.p, &t.b2(x, y), &t.b2(y, x)).iter().all(|&c| c == 0)))
        && e.iter().all(|x| t.b2(x, x).iter().all(|&c| c == 0))
}

/// `[αx,[y,z]] + [αy,[z,x]] + [αz,[x,y]] = 0` plus skew-symmetry.
pub fn hom_lie(t: &Table) -> bool {
    if !skew2(t) {
        return false;
    }
    let e = t.basis_vectors();
    for x in &e {
        for y in &e {
            for z in &e {
                let s = sum(
                    t.p,
                    t.d,
                    &[
                        t.b2(&t.al(x), &t.b2(y, z)),
                        t.b2(&t.al(y), &t.b2(z, x)),
                        t.b2(&t.al(z), &t.b2(x, y)),
                    ],
                );
                if s.iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// `α(x)(yz) = (xy)α(z)`.
pub fn hom_associative(t: &Table) -> bool {
    let e = t.basis_vectors();
    e.iter().all(|x| {
        e.iter().all(|y| {
            e.iter()
                .all(|z| t.b2(&t.al(x), &t.b2(y, z)) == t.b2(&t.b2(x, y), &t.al(z)))
        })
    })
}

/// `(xy)α(z) − α(x)(yz) = (yx)α(z) − α(y)(xz)`.
pub fn hom_prelie(t: &Table) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    let assoc = |x: &[u64], y: &[u64], z: &[u64]| sub(p, &t.b2(&t.b2(x, y), &t.al(z)), &t.b2(&t.al(x), &t.b2(y, z)));
    e.iter()
        .all(|x| e.iter().all(|y| e.iter().all(|z| assoc(x, y, z) == assoc(y, x, z))))
}

pub fn multiplicative(t: &Table) -> bool {
    let p = t.p;
    tuples(t.d, t.n).all(|tu| {
        let args: Vec<Vector> = tu.iter().map(|&i| t.al(&t.basis(i))).collect();
        let refs: Vec<&[u64]> = args.iter().map(|v| v.as_slice()).collect();
        apply(p, &t.alpha, &t.c[index(t.d, &tu)]) == t.br(&refs)
    })
}

// ---- ternary identities ----

/// `⟨Px1,Px2,Px3⟩ = P(⟨Px1,Px2,x3⟩ + ⟨Px1,x2,Px3⟩ + ⟨x1,Px2,Px3⟩
///   + λ⟨Px1,x2,x3⟩ + λ⟨x1,Px2,x3⟩ + λ⟨x1,x2,Px3⟩ + λ²⟨x1,x2,x3⟩)`.
pub fn ternary_rota_baxter(t: &Table, pm: &Mat, l: u64) -> bool {
    let p = t.p;
    let l2 = l * l % p;
    let e = t.basis_vectors();
    for x1 in &e {
        for x2 in &e {
            for x3 in &e {
                let (p1, p2, p3) = (apply(p, pm, x1), apply(p, pm, x2), apply(p, pm, x3));
                let lhs = t.b3(&p1, &p2, &p3);
                let inner = sum(
                    p,
                    t.d,
                    &[
                        t.b3(&p1, &p2, x3),
                        t.b3(&p1, x2, &p3),
                        t.b3(x1, &p2, &p3),
                        scale(p, l, &t.b3(&p1, x2, x3)),
                        scale(p, l, &t.b3(x1, &p2, x3)),
                        scale(p, l, &t.b3(x1, x2, &p3)),
                        scale(p, l2, &t.b3(x1, x2, x3)),
                    ],
                );
                if lhs != apply(p, pm, &inner) {
                    return false;
                }
            }
        }
    }
    true
}

/// `d⟨x1,x2,x3⟩ = ⟨dx1,αx2,αx3⟩ + ⟨αx1,dx2,αx3⟩ + ⟨αx1,αx2,dx3⟩ +
/// λ⟨dx1,dx2,αx3⟩ + λ⟨dx1,αx2,dx3⟩ + λ⟨αx1,dx2,dx3⟩ + λ²⟨dx1,dx2,dx3⟩`.
/// The ternary identity alone; no commutation with α.
pub fn ternary_derivation(t: &Table, dm: &Mat, l: u64) -> bool {
    let p = t.p;
    let l2 = l * l % p;
    let e = t.basis_vectors();
    for x1 in &e {
        for x2 in &e {
            for x3 in &e {
                let (d1, d2, d3) = (apply(p, dm, x1), apply(p, dm, x2), apply(p, dm, x3));
                let (a1, a2, a3) = (t.al(x1), t.al(x2), t.al(x3));
                let lhs = apply(p, dm, &t.b3(x1, x2, x3));
                let rhs = sum(
                    p,
                    t.d,
                    &[
                        t.b3(&d1, &a2, &a3),
                        t.b3(&a1, &d2, &a3),
                        t.b3(&a1, &a2, &d3),
                        scale(p, l, &t.b3(&d1, &d2, &a3)),
                        scale(p, l, &t.b3(&d1, &a2, &d3)),
                        scale(p, l, &t.b3(&a1, &d2, &d3)),
                        scale(p, l2, &t.b3(&d1, &d2, &d3)),
                    ],
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

pub fn skew3(t: &Table) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    for x in &e {
        for y in &e {
            for z in &e {
                let v = t.b3(x, y, z);
                let swaps = [t.b3(y, x, z), t.b3(x, z, y), t.b3(z, y, x)];
                if swaps.iter().any(|s| add(p, &v, s).iter().any(|&c| c != 0)) {
                    return false;
                }
            }
        }
        for y in &e {
            if t.b3(x, x, y).iter().chain(t.b3(x, y, y).iter()).chain(t.b3(x, y, x).iter()).any(|&c| c != 0) {
                return false;
            }
        }
    }
    true
}

/// Which written ternary form of the Hom-Nambu identity to test.
#[derive(Clone, Copy, Debug)]
pub enum Form {
    /// `[αy2,αy3,[x1,x2,x3]] = [[x1,y2,y3],αx2,αx3] + [αx1,[x2,y2,y3],αx3] + [αx1,αx2,[x3,y2,y3]]`
    Fundamental,
    /// `[[x1,x2,x3],αy2,αy3] = [[x1,y2,y3],αx2,αx3] + [[x2,y2,y3],αx3,αx1] + [[x3,y2,y3],αx1,αx2]`
    Cyclic,
    /// `[[x1,x2,x3],αy2,αy3] = [[x1,y2,y3],αx2,αx3] + [αx1,[x2,y2,y3],αx3] + [αx1,αx2,[x3,y2,y3]]`
    RightDerivation,
}

pub fn nambu(t: &Table, form: Form) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    for x1 in &e {
        for x2 in &e {
            for x3 in &e {
                let inner = t.b3(x1, x2, x3);
                for y2 in &e {
                    for y3 in &e {
                        let (a1, a2, a3, b2, b3) = (t.al(x1), t.al(x2), t.al(x3), t.al(y2), t.al(y3));
                        let (i1, i2, i3) = (t.b3(x1, y2, y3), t.b3(x2, y2, y3), t.b3(x3, y2, y3));
                        let (lhs, rhs) = match form {
                            Form::Fundamental => (
                                t.b3(&b2, &b3, &inner),
                                sum(p, t.d, &[t.b3(&i1, &a2, &a3), t.b3(&a1, &i2, &a3), t.b3(&a1, &a2, &i3)]),
                            ),
                            Form::Cyclic => (
                                t.b3(&inner, &b2, &b3),
                                sum(p, t.d, &[t.b3(&i1, &a2, &a3), t.b3(&i2, &a3, &a1), t.b3(&i3, &a1, &a2)]),
                            ),
                            Form::RightDerivation => (
                                t.b3(&inner, &b2, &b3),
                                sum(p, t.d, &[t.b3(&i1, &a2, &a3), t.b3(&a1, &i2, &a3), t.b3(&a1, &a2, &i3)]),
                            ),
                        };
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The three conditions of a Hom-Lie triple system, condition (1) tested
/// on every vector `y` rather than through polarization.
pub fn lie_triple(t: &Table) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    for x in &e {
        for y in all_vectors(p, t.d) {
            if t.b3(x, &y, &y).iter().any(|&c| c != 0) {
                return false;
            }
        }
    }
    for x in &e {
        for y in &e {
            for z in &e {
                let s = sum(p, t.d, &[t.b3(x, y, z), t.b3(y, x, z), t.b3(z, x, y)]);
                if s.iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
    }
    for x in &e {
        for y in &e {
            for z in &e {
                let inner = t.b3(x, y, z);
                for u in &e {
                    for v in &e {
                        let (ax, ay, az) = (t.al(x), t.al(y), t.al(z));
                        let lhs = t.b3(&inner, &t.al(u), &t.al(v));
                        let rhs = sum(
                            p,
                            t.d,
                            &[
                                t.b3(&t.b3(x, u, v), &ay, &az),
                                t.b3(&ax, &t.b3(y, u, v), &az),
                                t.b3(&ax, &ay, &t.b3(z, u, v)),
                            ],
                        );
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

// ---- constructions written out ----

/// `[x,y,z]_f = f(x)[y,z] + f(y)[z,x] + f(z)[x,y]`.
pub fn functional_bracket(t: &Table, f: &[u64]) -> Table {
    let p = t.p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let (x, y, z) = (t.basis(c[0]), t.basis(c[1]), t.basis(c[2]));
        sum(
            p,
            t.d,
            &[
                scale(p, dot(p, f, &x), &t.b2(&y, &z)),
                scale(p, dot(p, f, &y), &t.b2(&z, &x)),
                scale(p, dot(p, f, &z), &t.b2(&x, &y)),
            ],
        )
    })
}

/// The seven-term derived bracket `[x1,x2,x3]_P`.
pub fn derived_bracket(t: &Table, pm: &Mat, l: u64) -> Table {
    let p = t.p;
    let l2 = l * l % p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let (x1, x2, x3) = (t.basis(c[0]), t.basis(c[1]), t.basis(c[2]));
        let (p1, p2, p3) = (apply(p, pm, &x1), apply(p, pm, &x2), apply(p, pm, &x3));
        sum(
            p,
            t.d,
            &[
                t.b3(&p1, &p2, &x3),
                t.b3(&p1, &x2, &p3),
                t.b3(&x1, &p2, &p3),
                scale(p, l, &t.b3(&p1, &x2, &x3)),
                scale(p, l, &t.b3(&x1, &p2, &x3)),
                scale(p, l, &t.b3(&x1, &x2, &p3)),
                scale(p, l2, &t.b3(&x1, &x2, &x3)),
            ],
        )
    })
}

/// The expanded functional-and-operator bracket, term by term.
pub fn bracket_f_p(t: &Table, f: &[u64], pm: &Mat, l: u64) -> Table {
    let p = t.p;
    let l2 = l * l % p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let xs = [t.basis(c[0]), t.basis(c[1]), t.basis(c[2])];
        let mut acc = vec![0; t.d];
        for (a, b, cc) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let (x, y, z) = (&xs[a], &xs[b], &xs[cc]);
            let (px, py, pz) = (apply(p, pm, x), apply(p, pm, y), apply(p, pm, z));
            let first = sum(p, t.d, &[t.b2(&py, z), t.b2(y, &pz), scale(p, l, &t.b2(y, z))]);
            let second = sum(
                p,
                t.d,
                &[t.b2(&py, &pz), scale(p, l, &t.b2(&py, z)), scale(p, l, &t.b2(y, &pz)), scale(p, l2, &t.b2(y, z))],
            );
            acc = add(p, &acc, &scale(p, dot(p, f, &px), &first));
            acc = add(p, &acc, &scale(p, dot(p, f, x), &second));
        }
        acc
    })
}

/// `(P + λ)(f(x)[Py,Pz] + f(y)[Pz,Px] + f(z)[Px,Py]) = 0` on all triples.
pub fn kernel_lie(t: &Table, f: &[u64], pm: &Mat, l: u64) -> bool {
    let p = t.p;
    let e = t.basis_vectors();
    for x in &e {
        for y in &e {
            for z in &e {
                let (px, py, pz) = (apply(p, pm, x), apply(p, pm, y), apply(p, pm, z));
                let s = sum(
                    p,
                    t.d,
                    &[
                        scale(p, dot(p, f, x), &t.b2(&py, &pz)),
                        scale(p, dot(p, f, y), &t.b2(&pz, &px)),
                        scale(p, dot(p, f, z), &t.b2(&px, &py)),
                    ],
                );
                let out = add(p, &apply(p, pm, &s), &scale(p, l, &s));
                if out.iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// The six-permutation determinant of a 3×3 array of algebra elements,
/// columns indexed first: `Σ sgn(σ) (c0[σ0]·c1[σ1])·c2[σ2]`.
pub fn det3(t: &Table, cols: &[[Vector; 3]; 3]) -> Vector {
    let p = t.p;
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    let mut acc = vec![0; t.d];
    for (s, even) in perms {
        let term = t.b2(&t.b2(&cols[0][s[0]], &cols[1][s[1]]), &cols[2][s[2]]);
        acc = if even { add(p, &acc, &term) } else { sub(p, &acc, &term) };
    }
    acc
}

/// Rows `ω(·)`, `·`, `D(·)` as a 3×3 determinant with scalar-free entries:
/// `Σ sgn(σ) ω(x_{σ0}) · x_{σ1} · D(x_{σ2})`.
pub fn omega_d_bracket(t: &Table, w: &Mat, dm: &Mat) -> Table {
    let p = t.p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let xs = [t.basis(c[0]), t.basis(c[1]), t.basis(c[2])];
        let perms: [([usize; 3], bool); 6] = [
            ([0, 1, 2], true),
            ([1, 2, 0], true),
            ([2, 0, 1], true),
            ([0, 2, 1], false),
            ([2, 1, 0], false),
            ([1, 0, 2], false),
        ];
        let mut acc = vec![0; t.d];
        for (s, even) in perms {
            let term = t.b2(&t.b2(&apply(p, w, &xs[s[0]]), &xs[s[1]]), &apply(p, dm, &xs[s[2]]));
            acc = if even { add(p, &acc, &term) } else { sub(p, &acc, &term) };
        }
        acc
    })
}

/// Rows `f`, `D`, `id`: `Σ sgn(σ) f(x_{σ0}) D(x_{σ1})·x_{σ2}`.
pub fn det_fd_bracket(t: &Table, f: &[u64], dm: &Mat) -> Table {
    let p = t.p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let xs = [t.basis(c[0]), t.basis(c[1]), t.basis(c[2])];
        let perms: [([usize; 3], bool); 6] = [
            ([0, 1, 2], true),
            ([1, 2, 0], true),
            ([2, 0, 1], true),
            ([0, 2, 1], false),
            ([2, 1, 0], false),
            ([1, 0, 2], false),
        ];
        let mut acc = vec![0; t.d];
        for (s, even) in perms {
            let term = scale(p, dot(p, f, &xs[s[0]]), &t.b2(&apply(p, dm, &xs[s[1]]), &xs[s[2]]));
            acc = if even { add(p, &acc, &term) } else { sub(p, &acc, &term) };
        }
        acc
    })
}

/// `[f(x)Py − f(y)Px, z]_∗ + [f(z)Px − f(x)Pz, y]_∗ + [f(y)Pz − f(z)Py, x]_∗`
/// with `[u,v]_∗ = u∗v − v∗u`.
pub fn prelie_operator_bracket(t: &Table, f: &[u64], pm: &Mat) -> Table {
    let p = t.p;
    Table::from_fn(p, t.d, 3, t.alpha.clone(), |c| {
        let (x, y, z) = (t.basis(c[0]), t.basis(c[1]), t.basis(c[2]));
        let comm = |u: &[u64], v: &[u64]| sub(p, &t.b2(u, v), &t.b2(v, u));
        let lin = |a: &Vector, b: &Vector| {
            let (pa, pb) = (apply(p, pm, a), apply(p, pm, b));
            sub(p, &scale(p, dot(p, f, a), &pb), &scale(p, dot(p, f, b), &pa))
        };
        sum(p, t.d, &[comm(&lin(&x, &y), &z), comm(&lin(&z, &x), &y), comm(&lin(&y, &z), &x)])
    })
}
