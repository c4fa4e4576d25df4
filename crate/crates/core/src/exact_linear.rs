//! Multilinear algebra of the fixed three-dimensional space `V`.
//!
//! Vectors of `V` are written in the basis `e0, e1, e2`, covectors in the
//! dual basis `z0, z1, z2`. Bivectors are stored as covectors through the
//! triple product: `(v∧w)(u) = det[u|v|w]`, so that `e1∧e2 = z0`,
//! `e0∧e2 = −z1` and `e0∧e1 = z2`. Dually `z1∧z2 = e0`, `z2∧z0 = e1`,
//! `z0∧z1 = e2`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{Algebra, Field, Ring};
use crate::scalar::Scalar;

macro_rules! triple_type {
    ($name:ident, $sym:literal) => {
        #[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
        pub struct $name<R = Scalar>(pub [R; 3]);

        impl<R: Ring> $name<R> {
            pub fn new(a: R, b: R, c: R) -> Self {
                $name([a, b, c])
            }

            pub fn zero() -> Self {
                $name([R::zero(), R::zero(), R::zero()])
            }

            pub fn basis(i: usize) -> Self {
                let mut c = [R::zero(), R::zero(), R::zero()];
                c[i] = R::one();
                $name(c)
            }

            pub fn coords(&self) -> &[R; 3] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(R::is_zero)
            }

            pub fn scale(&self, c: &R) -> Self {
                $name(self.0.clone().map(|x| x * c.clone()))
            }

            pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> $name<S> {
                $name([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
            }
        }

        impl<R: Field> $name<R> {
            /// First nonzero coordinate scaled to 1.
            pub fn normalized(&self) -> Self {
                let v = linalg::normalize_first(&self.0);
                $name([v[0].clone(), v[1].clone(), v[2].clone()])
            }

            pub fn proj_eq(&self, other: &Self) -> bool {
                linalg::proj_eq(&self.0, &other.0)
            }
        }

        impl<R: Ring> Add for $name<R> {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                let [a, b, c] = self.0;
                let [x, y, z] = o.0;
                $name([a + x, b + y, c + z])
            }
        }

        impl<R: Ring> Sub for $name<R> {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                let [a, b, c] = self.0;
                let [x, y, z] = o.0;
                $name([a - x, b - y, c - z])
            }
        }

        impl<R: Ring> Neg for $name<R> {
            type Output = Self;
            fn neg(self) -> Self {
                $name(self.0.map(|x| -x))
            }
        }

        impl fmt::Display for $name<Scalar> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (i, c) in self.0.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let sep = if first { "" } else { " + " };
                    first = false;
                    if *c == Scalar::one() {
                        write!(f, "{sep}{}{i}", $sym)?;
                    } else {
                        write!(f, "{sep}{c}*{}{i}", $sym)?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    };
}

triple_type!(VecV, "e");
triple_type!(CovecV, "z");

/// `∧²V`, stored in covector coordinates.
pub type Bivector<R = Scalar> = CovecV<R>;

fn cross<R: Ring>(a: &[R; 3], b: &[R; 3]) -> [R; 3] {
    let c = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn dot<R: Ring>(a: &[R; 3], b: &[R; 3]) -> R {
    a.iter()
        .zip(b)
        .fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<R: Ring> CovecV<R> {
    /// Pairing with a vector.
    pub fn eval(&self, v: &VecV<R>) -> R {
        dot(&self.0, &v.0)
    }
}

impl<R: Ring> VecV<R> {
    pub fn pair(&self, a: &CovecV<R>) -> R {
        dot(&self.0, &a.0)
    }
}

pub fn wedge<R: Ring>(v: &VecV<R>, w: &VecV<R>) -> Bivector<R> {
    CovecV(cross(&v.0, &w.0))
}

/// `∧²V* ≅ V`.
pub fn covector_wedge<R: Ring>(a: &CovecV<R>, b: &CovecV<R>) -> VecV<R> {
    VecV(cross(&a.0, &b.0))
}

/// `v ∧ β ∈ ∧³V ≅ k` for a vector and a bivector.
pub fn wedge3<R: Ring>(v: &VecV<R>, b: &Bivector<R>) -> R {
    b.eval(v)
}

/// Which projective plane a quadratic form is a conic in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Ambient {
    /// An element of `S²V`, a conic in `P(V*)`.
    OnDual,
    /// An element of `S²V* ≅ S²(∧²V)`, a conic in `P(V)`.
    OnV,
}

impl Ambient {
    pub fn flip(self) -> Ambient {
        match self {
            Ambient::OnDual => Ambient::OnV,
            Ambient::OnV => Ambient::OnDual,
        }
    }
}

/// Linear forms whose symmetric products are quadratic forms.
pub trait Linear<R> {
    /// Ambient of the quadratic forms built from these linear forms.
    const AMBIENT: Ambient;
    fn lin_coords(&self) -> &[R; 3];
    fn from_coords(c: [R; 3]) -> Self;
}

impl<R> Linear<R> for VecV<R> {
    const AMBIENT: Ambient = Ambient::OnDual;
    fn lin_coords(&self) -> &[R; 3] {
        &self.0
    }
    fn from_coords(c: [R; 3]) -> Self {
        VecV(c)
    }
}

impl<R> Linear<R> for CovecV<R> {
    const AMBIENT: Ambient = Ambient::OnV;
    fn lin_coords(&self) -> &[R; 3] {
        &self.0
    }
    fn from_coords(c: [R; 3]) -> Self {
        CovecV(c)
    }
}

/// Triples such as `[ξ, ω, η]` or `[ξ∧ω, ξ∧η, ω∧η]`, viewed as one point of a
/// nine-dimensional projective space.
pub mod triple {
    use super::Linear;
    use crate::linalg;
    use crate::ring::{Field, Ring};

    pub fn flat<R: Clone, L: Linear<R>>(t: &[L; 3]) -> Vec<R> {
        t.iter().flat_map(|l| l.lin_coords().iter().cloned()).collect()
    }

    pub fn is_zero<R: Ring, L: Linear<R>>(t: &[L; 3]) -> bool {
        t.iter().all(|l| l.lin_coords().iter().all(R::is_zero))
    }

    pub fn proj_eq<R: Field, L: Linear<R>>(a: &[L; 3], b: &[L; 3]) -> bool {
        linalg::proj_eq(&flat(a), &flat(b))
    }

    /// First nonzero coordinate of the concatenation scaled to 1.
    pub fn normalized<R: Field, L: Linear<R>>(t: &[L; 3]) -> [L; 3] {
        let f = linalg::normalize_first(&flat(t));
        std::array::from_fn(|k| L::from_coords(std::array::from_fn(|i| f[3 * k + i].clone())))
    }

    pub fn scale<R: Ring, L: Linear<R>>(t: &[L; 3], c: &R) -> [L; 3] {
        std::array::from_fn(|k| {
            L::from_coords(t[k].lin_coords().clone().map(|x| x * c.clone()))
        })
    }
}

/// Symmetric 3×3 matrix together with the plane it defines a conic in.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct QuadraticForm<R = Scalar> {
    matrix: [[R; 3]; 3],
    ambient: Ambient,
}

impl<R: Ring> QuadraticForm<R> {
    pub fn new(matrix: [[R; 3]; 3], ambient: Ambient) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidPoint("quadratic form matrix is not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { matrix, ambient })
    }

    pub fn zero(ambient: Ambient) -> Self {
        QuadraticForm {
            matrix: std::array::from_fn(|_| std::array::from_fn(|_| R::zero())),
            ambient,
        }
    }

    pub fn matrix(&self) -> &[[R; 3]; 3] {
        &self.matrix
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(R::is_zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(QuadraticForm {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.matrix[i][j].clone() + other.matrix[i][j].clone())
            }),
            ambient: self.ambient,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, c: &R) -> Self {
        QuadraticForm {
            matrix: self.matrix.clone().map(|row| row.map(|x| x * c.clone())),
            ambient: self.ambient,
        }
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> QuadraticForm<S> {
        QuadraticForm {
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.matrix[i][j]))),
            ambient: self.ambient,
        }
    }

    /// `uᵀ M u`.
    pub fn eval(&self, u: &[R; 3]) -> R {
        let mut acc = R::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + u[i].clone() * self.matrix[i][j].clone() * u[j].clone();
            }
        }
        acc
    }

    /// Bilinear polarization `uᵀ M w`.
    pub fn polar(&self, u: &[R; 3], w: &[R; 3]) -> R {
        let mut acc = R::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + u[i].clone() * self.matrix[i][j].clone() * w[j].clone();
            }
        }
        acc
    }

    pub fn det(&self) -> R {
        linalg::det3(&self.matrix)
    }

    /// Classical adjugate; the result lives on the other plane.
    pub fn adjugate(&self) -> Self {
        QuadraticForm {
            matrix: linalg::adjugate3(&self.matrix),
            ambient: self.ambient.flip(),
        }
    }

    /// Coefficient of the monomial `c_i c_j` (`i <= j`) in the expanded
    /// polynomial.
    pub fn monomial_coeff(&self, i: usize, j: usize) -> R {
        if i == j {
            self.matrix[i][i].clone()
        } else {
            self.matrix[i][j].clone() + self.matrix[j][i].clone()
        }
    }
}

impl<R: Algebra> QuadraticForm<R> {
    /// `a ⊙ b`, with matrix `(abᵀ + baᵀ)/2`.
    pub fn sym_product<L: Linear<R>>(a: &L, b: &L) -> Self {
        let (a, b) = (a.lin_coords(), b.lin_coords());
        let half = Scalar::frac(1, 2);
        QuadraticForm {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (a[i].clone() * b[j].clone() + b[i].clone() * a[j].clone()).scale_by(&half)
                })
            }),
            ambient: L::AMBIENT,
        }
    }

    pub fn square<L: Linear<R>>(a: &L) -> Self {
        Self::sym_product(a, a)
    }
}

impl<R: Field> QuadraticForm<R> {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && linalg::proj_eq(
                &self.matrix.iter().flatten().cloned().collect::<Vec<_>>(),
                &other.matrix.iter().flatten().cloned().collect::<Vec<_>>(),
            )
    }
}

pub fn sym_product<L: Linear<Scalar>>(a: &L, b: &L) -> QuadraticForm {
    QuadraticForm::sym_product(a, b)
}

pub fn adjugate(q: &QuadraticForm) -> QuadraticForm {
    q.adjugate()
}

impl fmt::Display for QuadraticForm<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.ambient {
            Ambient::OnDual => "e",
            Ambient::OnV => "z",
        };
        let mut first = true;
        for i in 0..3 {
            for j in i..3 {
                let c = self.monomial_coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mono = if i == j {
                    format!("{var}{i}^2")
                } else {
                    format!("{var}{i}*{var}{j}")
                };
                let sep = if first { "" } else { " + " };
                first = false;
                if c == Scalar::one() {
                    write!(f, "{sep}{mono}")?;
                } else {
                    write!(f, "{sep}{c}*{mono}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum ConicKind {
    Zero,
    DoubleLine,
    LinePair,
    Smooth,
}

impl ConicKind {
    pub fn from_rank(rank: usize) -> ConicKind {
        match rank {
            0 => ConicKind::Zero,
            1 => ConicKind::DoubleLine,
            2 => ConicKind::LinePair,
            _ => ConicKind::Smooth,
        }
    }
}

/// Rank type of a conic with its linear factors when it is degenerate.
///
/// Factors are coordinate triples of linear forms on the conic's plane:
/// vectors of `V` for a form on `P(V*)`, covectors for a form on `P(V)`.
/// They are normalized (first nonzero coordinate 1) and sorted.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct ConicClass {
    pub kind: ConicKind,
    pub ambient: Ambient,
    pub factors: Vec<[Scalar; 3]>,
    /// Quadratic extension the factors live in, if any.
    pub ext: Option<i64>,
}

/// Linear factors `(p, q)`, meaning `p·s + q·t`, of the binary form
/// `a·s² + b·s·t + c·t²` (not identically zero), normalized and sorted.
pub fn factor_binary(a: &Scalar, b: &Scalar, c: &Scalar, ctx: Option<i64>) -> Result<[[Scalar; 2]; 2]> {
    let two = Scalar::int(2);
    let mut out = if a.is_zero() {
        [[Scalar::zero(), Scalar::one()], [b.clone(), c.clone()]]
    } else {
        let disc = b.clone() * b.clone() - Scalar::int(4) * a.clone() * c.clone();
        let ctx = Scalar::common_ext([a, b, c])?.or(ctx);
        let r = disc.sqrt_in(ctx)?;
        let denom = (two * a.clone()).inv();
        let rho1 = (-b.clone() + r.clone()) * denom.clone();
        let rho2 = (-b.clone() - r) * denom;
        [[Scalar::one(), -rho1], [Scalar::one(), -rho2]]
    };
    for f in out.iter_mut() {
        let n = linalg::normalize_first(f);
        *f = [n[0].clone(), n[1].clone()];
    }
    out.sort();
    Ok(out)
}

/// Zeros `(s : t)` of `a·s² + b·s·t + c·t²`, normalized and sorted; a
/// double root is listed twice.
pub fn binary_roots(a: &Scalar, b: &Scalar, c: &Scalar, ctx: Option<i64>) -> Result<[[Scalar; 2]; 2]> {
    let f = factor_binary(a, b, c, ctx)?;
    let mut roots = f.map(|[p, q]| {
        let n = linalg::normalize_first(&[-q, p]);
        [n[0].clone(), n[1].clone()]
    });
    roots.sort();
    Ok(roots)
}

pub fn classify_form(q: &QuadraticForm) -> Result<ConicClass> {
    let rows: Vec<Vec<Scalar>> = q.matrix.iter().map(|r| r.to_vec()).collect();
    let rank = linalg::rank(&rows);
    let kind = ConicKind::from_rank(rank);
    let factors = match rank {
        1 => {
            let row = rows.iter().find(|r| r.iter().any(|x| !x.is_zero())).unwrap();
            let n = linalg::normalize_first(row);
            let f = [n[0].clone(), n[1].clone(), n[2].clone()];
            vec![f.clone(), f]
        }
        2 => {
            let k = linalg::kernel(&rows, 3).remove(0);
            let p = (0..3).find(|&i| !k[i].is_zero()).unwrap();
            let (i, j) = match p {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let m = &q.matrix;
            let a = m[i][i].clone();
            let b = m[i][j].clone() * Scalar::int(2);
            let c = m[j][j].clone();
            let lin = factor_binary(&a, &b, &c, None)?;
            let mut fs: Vec<[Scalar; 3]> = lin
                .iter()
                .map(|[li, lj]| {
                    let mut l = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
                    l[p] = -(li.clone() * k[i].clone() + lj.clone() * k[j].clone()) * k[p].inv();
                    l[i] = li.clone();
                    l[j] = lj.clone();
                    let n = linalg::normalize_first(&l);
                    [n[0].clone(), n[1].clone(), n[2].clone()]
                })
                .collect();
            fs.sort();
            fs
        }
        _ => Vec::new(),
    };
    let ext = Scalar::common_ext(factors.iter().flatten())?;
    Ok(ConicClass {
        kind,
        ambient: q.ambient,
        factors,
        ext,
    })
}

/// Product of two linear forms given by coordinates, as a form on `ambient`.
pub fn product_form(a: &[Scalar; 3], b: &[Scalar; 3], ambient: Ambient) -> QuadraticForm {
    match ambient {
        Ambient::OnDual => sym_product(&VecV(a.clone()), &VecV(b.clone())),
        Ambient::OnV => sym_product(&CovecV(a.clone()), &CovecV(b.clone())),
    }
}
