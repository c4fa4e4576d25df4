//! 2×2 matrices of vectors of `V`: determinant conics, Plücker
//! coordinates, second Beilinson matrices and singularities of the
//! associated sheaves.

use crate::error::{Error, Result};
use crate::exact_linear::{
    classify_form, triple, wedge, wedge3, Bivector, ConicKind, CovecV, QuadraticForm, VecV,
};
use crate::linalg;
use crate::ring::{Algebra, Field, Ring};
use crate::scalar::Scalar;

/// `[ξ, ω, η]`
pub type Phi<R = Scalar> = [Bivector<R>; 3];
/// `[ξ∧ω, ξ∧η, ω∧η]`
pub type Psi<R = Scalar> = [VecV<R>; 3];

/// 2×2 matrix `[[x, x′], [y, y′]]` with entries in `V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PencilMatrix<R = Scalar> {
    pub x: VecV<R>,
    pub xp: VecV<R>,
    pub y: VecV<R>,
    pub yp: VecV<R>,
}

/// Serialized as `{"rows": [[x, x′], [y, y′]]}`.
impl<R: serde::Serialize> serde::Serialize for PencilMatrix<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Rows<'a, R> {
            rows: [[&'a VecV<R>; 2]; 2],
        }
        Rows {
            rows: [[&self.x, &self.xp], [&self.y, &self.yp]],
        }
        .serialize(s)
    }
}

impl<'de, R: serde::Deserialize<'de>> serde::Deserialize<'de> for PencilMatrix<R> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Rows<R> {
            rows: [[VecV<R>; 2]; 2],
        }
        let Rows { rows } = Rows::deserialize(de)?;
        let [[x, xp], [y, yp]] = rows;
        Ok(PencilMatrix { x, xp, y, yp })
    }
}

/// A 2×2 matrix over the base ring, used for the group actions.
pub type Mat2<R = Scalar> = [[R; 2]; 2];

impl<R: Ring> PencilMatrix<R> {
    pub fn new(x: VecV<R>, xp: VecV<R>, y: VecV<R>, yp: VecV<R>) -> Self {
        PencilMatrix { x, xp, y, yp }
    }

    pub fn from_rows(rows: [[VecV<R>; 2]; 2]) -> Self {
        let [[x, xp], [y, yp]] = rows;
        PencilMatrix { x, xp, y, yp }
    }

    pub fn rows(&self) -> [[&VecV<R>; 2]; 2] {
        [[&self.x, &self.xp], [&self.y, &self.yp]]
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> PencilMatrix<S> {
        PencilMatrix {
            x: self.x.map(&f),
            xp: self.xp.map(&f),
            y: self.y.map(&f),
            yp: self.yp.map(&f),
        }
    }

    /// Rows as vectors of `k² ⊗ V ≅ k⁶`.
    pub fn row_vectors(&self) -> [Vec<R>; 2] {
        let cat = |a: &VecV<R>, b: &VecV<R>| a.0.iter().chain(b.0.iter()).cloned().collect();
        [cat(&self.x, &self.xp), cat(&self.y, &self.yp)]
    }

    /// `(x∧y, x∧y′ + x′∧y, x′∧y′)`
    pub fn phi(&self) -> Phi<R> {
        [
            wedge(&self.x, &self.y),
            wedge(&self.x, &self.yp) + wedge(&self.xp, &self.y),
            wedge(&self.xp, &self.yp),
        ]
    }

    /// `A ∧ [[ξ, ω, η, 0], [0, ξ, ω, η]]`, which vanishes on the blow-up.
    pub fn relation(&self, phi: &Phi<R>) -> [[R; 4]; 2] {
        let [xi, om, eta] = phi;
        let row = |a: &VecV<R>, b: &VecV<R>| {
            [
                wedge3(a, xi),
                wedge3(a, om) + wedge3(b, xi),
                wedge3(a, eta) + wedge3(b, om),
                wedge3(b, eta),
            ]
        };
        [row(&self.x, &self.xp), row(&self.y, &self.yp)]
    }

    /// Right action `A ↦ A·g`.
    pub fn act_right(&self, g: &Mat2<R>) -> Self {
        let [[a, b], [c, d]] = g;
        let comb = |u: &VecV<R>, v: &VecV<R>, s: &R, t: &R| u.scale(s) + v.scale(t);
        PencilMatrix {
            x: comb(&self.x, &self.xp, a, c),
            xp: comb(&self.x, &self.xp, b, d),
            y: comb(&self.y, &self.yp, a, c),
            yp: comb(&self.y, &self.yp, b, d),
        }
    }

    /// Row operations `A ↦ g·A`.
    pub fn act_left(&self, g: &Mat2<R>) -> Self {
        let [[a, b], [c, d]] = g;
        let comb = |u: &VecV<R>, v: &VecV<R>, s: &R, t: &R| u.scale(s) + v.scale(t);
        PencilMatrix {
            x: comb(&self.x, &self.y, a, b),
            xp: comb(&self.xp, &self.yp, a, b),
            y: comb(&self.x, &self.y, c, d),
            yp: comb(&self.xp, &self.yp, c, d),
        }
    }

    /// Apply a linear map of `V` (matrix acting on coordinate columns)
    /// to every entry.
    pub fn change_basis(&self, m: &[[R; 3]; 3]) -> Self {
        let ap = |v: &VecV<R>| {
            VecV(std::array::from_fn(|i| {
                (0..3).fold(R::zero(), |acc, k| acc + m[i][k].clone() * v.0[k].clone())
            }))
        };
        PencilMatrix {
            x: ap(&self.x),
            xp: ap(&self.xp),
            y: ap(&self.y),
            yp: ap(&self.yp),
        }
    }
}

impl<R: Algebra> PencilMatrix<R> {
    /// `x·y′ − x′·y ∈ S²V`.
    pub fn det_form(&self) -> QuadraticForm<R> {
        QuadraticForm::sym_product(&self.x, &self.yp)
            .checked_sub(&QuadraticForm::sym_product(&self.xp, &self.y))
            .expect("both products live on P(V*)")
    }
}

impl<R: Field> PencilMatrix<R> {
    pub fn rows_independent(&self) -> bool {
        linalg::rank(&self.row_vectors()) == 2
    }

    /// Same row span in `k² ⊗ V`.
    pub fn same_span(&self, other: &Self) -> bool {
        linalg::same_row_space(&self.row_vectors(), &other.row_vectors())
    }
}

pub fn det_pencil(a: &PencilMatrix) -> QuadraticForm {
    a.det_form()
}

/// Point of the Grassmannian `G₂(k² ⊗ V)`: a pencil up to row operations.
#[derive(Clone, Debug)]
pub struct GrassPoint(PencilMatrix);

impl GrassPoint {
    pub fn new(a: PencilMatrix) -> Result<Self> {
        if !a.rows_independent() {
            return Err(Error::DegenerateRows);
        }
        Ok(GrassPoint(a))
    }

    pub fn representative(&self) -> &PencilMatrix {
        &self.0
    }
}

impl PartialEq for GrassPoint {
    fn eq(&self, other: &Self) -> bool {
        self.0.same_span(&other.0)
    }
}

/// Plücker coordinates `(q; ξ, ω, η)`, defined up to a common scalar.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct PlueckerPoint {
    pub q: QuadraticForm,
    pub phi: Phi,
}

impl PlueckerPoint {
    pub fn proj_eq(&self, other: &Self) -> bool {
        let flat = |p: &PlueckerPoint| {
            let mut v: Vec<Scalar> = p.q.matrix().iter().flatten().cloned().collect();
            v.extend(triple::flat(&p.phi));
            v
        };
        linalg::proj_eq(&flat(self), &flat(other))
    }
}

pub fn pluecker(a: &PencilMatrix) -> Result<PlueckerPoint> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    let phi = a.phi();
    debug_assert!(a.relation(&phi).iter().flatten().all(Ring::is_zero));
    Ok(PlueckerPoint {
        q: a.det_form(),
        phi,
    })
}

pub fn is_in_zg(a: &PencilMatrix) -> Result<bool> {
    Ok(triple::is_zero(&pluecker(a)?.phi))
}

/// 2×4 matrix of covectors. Column `j` is the functional
/// `(v₁, v₂) ↦ b[0][j](v₁) + b[1][j](v₂)` on `k² ⊗ V`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CovecMatrix<R = Scalar> {
    pub b: [[CovecV<R>; 4]; 2],
}

impl<R: Ring> CovecMatrix<R> {
    /// Column `j` as a vector of `k⁶`.
    pub fn column(&self, j: usize) -> Vec<R> {
        self.b[0][j].0.iter().chain(self.b[1][j].0.iter()).cloned().collect()
    }

    pub fn columns(&self) -> Vec<Vec<R>> {
        (0..4).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(cols: &[Vec<R>]) -> Self {
        CovecMatrix {
            b: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    CovecV(std::array::from_fn(|k| cols[j][3 * i + k].clone()))
                })
            }),
        }
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> CovecMatrix<S> {
        CovecMatrix {
            b: std::array::from_fn(|i| std::array::from_fn(|j| self.b[i][j].map(&f))),
        }
    }
}

impl<R: Field> CovecMatrix<R> {
    /// Same column span in `k⁶`.
    pub fn same_span(&self, other: &Self) -> bool {
        linalg::same_row_space(&self.columns(), &other.columns())
    }
}

/// Basis of the annihilator of the row span, in reduced form, as the four
/// columns of `B`.
pub fn beilinson_b(a: &PencilMatrix) -> Result<CovecMatrix> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    let k = linalg::kernel(&a.row_vectors(), 6);
    debug_assert_eq!(k.len(), 4);
    Ok(CovecMatrix::from_columns(&k))
}

/// `[[x, 0], [z, y]]` equivalent to the input.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Triangular {
    pub x: VecV,
    pub y: VecV,
    pub z: VecV,
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct SingularityReport {
    /// Absent when the determinant conic is smooth.
    pub triangular: Option<Triangular>,
    /// Normalized and sorted.
    pub singular_points: Vec<VecV>,
    /// `{[x], [y]}`, sorted; present when the sheaf is not stable.
    pub s_equivalence_pair: Option<[VecV; 2]>,
    pub locally_free: bool,
}

/// Triangularize `A` and read off where the sheaf fails to be locally free.
pub fn sheaf_singularities(a: &PencilMatrix) -> Result<SingularityReport> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    let q = a.det_form();
    let class = classify_form(&q)?;
    match class.kind {
        ConicKind::Zero => return Err(Error::DetZero),
        ConicKind::Smooth => {
            return Ok(SingularityReport {
                triangular: None,
                singular_points: Vec::new(),
                s_equivalence_pair: None,
                locally_free: true,
            })
        }
        _ => {}
    }
    let mut candidates = class.factors.clone();
    candidates.dedup();
    for f in candidates {
        if let Some(t) = triangularize(a, &VecV(f)) {
            let mut singular = vec![t.x.normalized()];
            let span = [t.x.0.to_vec(), t.y.0.to_vec()];
            let mut with_z = span.to_vec();
            with_z.push(t.z.0.to_vec());
            if linalg::rank(&with_z) == linalg::rank(&span) {
                singular.push(t.y.normalized());
            }
            singular.sort_by(|u, v| u.0.cmp(&v.0));
            singular.dedup();
            let mut pair = [t.x.normalized(), t.y.normalized()];
            pair.sort_by(|u, v| u.0.cmp(&v.0));
            return Ok(SingularityReport {
                triangular: Some(t),
                singular_points: singular,
                s_equivalence_pair: Some(pair),
                locally_free: false,
            });
        }
    }
    Err(Error::Unsupported(
        "no factor of det(A) admits a triangular form".into(),
    ))
}

/// Find `g, h` with `g·A·h = [[f, 0], [z, y]]`.
fn triangularize(a: &PencilMatrix, f: &VecV) -> Option<Triangular> {
    // Rows a·A whose entries are both multiples of f: u ∈ k·f ⇔ u∧f = 0.
    let w = |u: &VecV| wedge(u, f).0.to_vec();
    let cols = [
        [w(&a.x), w(&a.xp)].concat(),
        [w(&a.y), w(&a.yp)].concat(),
    ];
    let m: Vec<Vec<Scalar>> = (0..6).map(|i| vec![cols[0][i].clone(), cols[1][i].clone()]).collect();
    let ker = linalg::kernel(&m, 2);
    let coeffs = ker.first()?;
    let (a1, a2) = (coeffs[0].clone(), coeffs[1].clone());
    let other = if a1.is_zero() {
        [Scalar::one(), Scalar::zero()]
    } else {
        [Scalar::zero(), Scalar::one()]
    };
    let g = [[a1, a2], other];
    let ga = a.act_left(&g);
    let p = (0..3).find(|&i| !f.0[i].is_zero())?;
    let lambda = ga.x.0[p].clone() * f.0[p].inv();
    let mu = ga.xp.0[p].clone() * f.0[p].inv();
    let h = if lambda.is_zero() {
        [[Scalar::zero(), Scalar::one()], [Scalar::one(), Scalar::zero()]]
    } else {
        [[Scalar::one(), -mu], [Scalar::zero(), lambda]]
    };
    let t = ga.act_right(&h);
    debug_assert!(t.xp.is_zero());
    Some(Triangular {
        x: f.clone(),
        y: t.yp,
        z: t.y,
    })
}
