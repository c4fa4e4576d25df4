//! The right `SL₂` action on pencils and on the blow-up coordinates,
//! normal forms of `[ξ, ω, η]` under it, and the diagonal-torus weights.

use crate::error::{Error, Result};
use crate::exact_linear::{binary_roots, triple, Bivector, QuadraticForm, VecV};
use crate::kirwan_strata::Stability;
use crate::linalg;
use crate::pencil::{Mat2, PencilMatrix, Phi, Psi};
use crate::ring::{Field, Ring};
use crate::scalar::Scalar;

/// Element of `SL₂`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct GroupElement(Mat2);

impl GroupElement {
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        if det != Scalar::one() {
            return Err(Error::InvalidPoint(format!("group element has determinant {det}, not 1")));
        }
        Ok(GroupElement(m))
    }

    pub fn identity() -> Self {
        GroupElement([[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]])
    }

    /// `diag(a, a⁻¹)`
    pub fn diagonal(a: &Scalar) -> Self {
        GroupElement([[a.clone(), Scalar::zero()], [Scalar::zero(), a.inv()]])
    }

    /// The matrix with columns `c1` and `c2 / det(c1|c2)`.
    fn from_columns(c1: [Scalar; 2], c2: [Scalar; 2]) -> Result<Self> {
        let det = c1[0].clone() * c2[1].clone() - c1[1].clone() * c2[0].clone();
        if det.is_zero() {
            return Err(Error::InvalidPoint("dependent columns for a group element".into()));
        }
        let inv = det.inv();
        let c2 = c2.map(|x| x * inv.clone());
        Ok(GroupElement([
            [c1[0].clone(), c2[0].clone()],
            [c1[1].clone(), c2[1].clone()],
        ]))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let (a, b) = (&self.0, &other.0);
        GroupElement(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone())
        }))
    }

    pub fn inverse(&self) -> GroupElement {
        let [[a, b], [c, d]] = self.0.clone();
        GroupElement([[d, -b], [-c, a]])
    }
}

/// Matrix of `S²g` acting on row triples `(ξ, ω, η)`.
pub fn sym2<R: Ring>(g: &Mat2<R>) -> [[R; 3]; 3] {
    let [[a, b], [c, d]] = g.clone();
    let two = R::from_i64(2);
    [
        [a.clone() * a.clone(), two.clone() * a.clone() * b.clone(), b.clone() * b.clone()],
        [a.clone() * c.clone(), a.clone() * d.clone() + b.clone() * c.clone(), b.clone() * d.clone()],
        [c.clone() * c.clone(), two * c * d.clone(), d.clone() * d],
    ]
}

/// Matrix by which `g` acts on `(ξ∧ω, ξ∧η, ω∧η)`.
pub fn wedge_action_matrix<R: Ring>(g: &Mat2<R>) -> [[R; 3]; 3] {
    let [[a, b], [c, d]] = g.clone();
    let two = R::from_i64(2);
    [
        [a.clone() * a.clone(), a.clone() * b.clone(), b.clone() * b.clone()],
        [two.clone() * a.clone() * c.clone(), a.clone() * d.clone() + b.clone() * c.clone(), two * b.clone() * d.clone()],
        [c.clone() * c.clone(), c.clone() * d.clone(), d.clone() * d],
    ]
}

fn row_times<R: Ring, T: Clone + std::ops::Add<Output = T>>(
    t: &[T; 3],
    m: &[[R; 3]; 3],
    scale: impl Fn(&T, &R) -> T,
) -> [T; 3] {
    std::array::from_fn(|j| {
        let s0 = scale(&t[0], &m[0][j]);
        let s1 = scale(&t[1], &m[1][j]);
        let s2 = scale(&t[2], &m[2][j]);
        s0 + s1 + s2
    })
}

pub fn act_phi<R: Ring>(phi: &Phi<R>, g: &Mat2<R>) -> Phi<R> {
    row_times(phi, &sym2(g), |v: &Bivector<R>, c| v.scale(c))
}

pub fn act_psi<R: Ring>(psi: &Psi<R>, g: &Mat2<R>) -> Psi<R> {
    row_times(psi, &wedge_action_matrix(g), |v: &VecV<R>, c| v.scale(c))
}

pub fn act_pencil<R: Ring>(a: &PencilMatrix<R>, g: &Mat2<R>) -> PencilMatrix<R> {
    a.act_right(g)
}

/// `(ξ∧ω, ξ∧η, ω∧η)`
pub fn wedge_triple<R: Ring>(phi: &Phi<R>) -> Psi<R> {
    use crate::exact_linear::covector_wedge as w;
    [w(&phi[0], &phi[1]), w(&phi[0], &phi[2]), w(&phi[1], &phi[2])]
}

/// `ω⊙ω − 4ξ⊙η`, a form on `P(V)`.
pub fn disc<R: crate::ring::Algebra>(phi: &Phi<R>) -> QuadraticForm<R> {
    let [xi, om, eta] = phi;
    QuadraticForm::square(om)
        .checked_sub(&QuadraticForm::sym_product(xi, eta).scale(&R::from_i64(4)))
        .expect("bivector forms share an ambient")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum CanonicalKind {
    /// `[ξ′, 0, 0]`
    Null,
    /// `ξ′ = 0` (possibly also `η′ = 0`)
    Square,
    /// `[ξ′, 0, η′]`
    Product,
    Generic,
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CanonicalClass {
    pub kind: CanonicalKind,
    pub witness: Option<GroupElement>,
    /// `phi·S²g` for the witness `g` (the input itself for `Generic`).
    pub reduced: Phi,
}

/// Components of `ξS² + ωST + ηT²` as binary quadratics `(a, b, c)`.
fn components(phi: &Phi) -> Vec<[Scalar; 3]> {
    (0..3)
        .map(|k| [phi[0].0[k].clone(), phi[1].0[k].clone(), phi[2].0[k].clone()])
        .collect()
}

fn binary_eval(q: &[Scalar; 3], r: &[Scalar; 2]) -> Scalar {
    q[0].clone() * r[0].clone() * r[0].clone()
        + q[1].clone() * r[0].clone() * r[1].clone()
        + q[2].clone() * r[1].clone() * r[1].clone()
}

/// Some `u` with `det(r|u) = 1`.
fn complete(r: &[Scalar; 2]) -> [Scalar; 2] {
    if !r[0].is_zero() {
        [Scalar::zero(), r[0].inv()]
    } else {
        [-r[1].inv(), Scalar::zero()]
    }
}

/// Quadratic apolar to every form of a two-dimensional span.
fn apolar(span: &[Vec<Scalar>]) -> [Scalar; 3] {
    // Pairing (a,b,c)·(a′,b′,c′) ↦ 2ac′ − bb′ + 2ca′ vanishes exactly when
    // the roots of one form separate those of the other harmonically.
    let g = |q: &[Scalar]| [Scalar::int(2) * q[2].clone(), -q[1].clone(), Scalar::int(2) * q[0].clone()];
    let rows: Vec<Vec<Scalar>> = span.iter().map(|q| g(q).to_vec()).collect();
    let k = linalg::kernel(&rows, 3);
    [k[0][0].clone(), k[0][1].clone(), k[0][2].clone()]
}

pub fn canonical_reduce(phi: &Phi) -> Result<CanonicalClass> {
    if triple::is_zero(phi) {
        return Err(Error::ZeroPhi);
    }
    let ctx = Scalar::common_ext(triple::flat(phi).iter())?;
    let rank = disc(phi).rank();
    let comps = components(phi);
    let span = linalg::row_space(&comps.iter().map(|q| q.to_vec()).collect::<Vec<_>>());
    let (kind, witness) = match rank {
        0 => {
            // Φ = l(S,T)²·v; move the root of l to the second column.
            let q = &span[0];
            let [r, _] = binary_roots(&q[0], &q[1], &q[2], ctx)?;
            let g = GroupElement::from_columns(complete(&r).map(|x| -x), r)?;
            (CanonicalKind::Null, g)
        }
        1 => {
            let g = if span.len() == 1 {
                // All components proportional: send both roots to (1:0), (0:1).
                let q = &span[0];
                let [r1, r2] = binary_roots(&q[0], &q[1], &q[2], ctx)?;
                GroupElement::from_columns(r1, r2)?
            } else {
                // Common root of the span; it is the double root of the apolar form.
                let j = apolar(&span);
                let [r, _] = binary_roots(&j[0], &j[1], &j[2], ctx)?;
                let r = [r[0].clone(), r[1].clone()];
                GroupElement::from_columns(r.clone(), complete(&r))?
            };
            (CanonicalKind::Square, g)
        }
        2 => {
            let j = apolar(&span);
            let [r1, r2] = binary_roots(&j[0], &j[1], &j[2], ctx)?;
            (CanonicalKind::Product, GroupElement::from_columns(r1, r2)?)
        }
        _ => {
            return Ok(CanonicalClass {
                kind: CanonicalKind::Generic,
                witness: None,
                reduced: phi.clone(),
            })
        }
    };
    let reduced = act_phi(phi, witness.matrix());
    debug_assert!(shape_matches(kind, &reduced), "{kind:?} witness failed: {reduced:?}");
    debug_assert!(comps.iter().all(|q| kind != CanonicalKind::Null
        || binary_eval(q, &[witness.0[0][1].clone(), witness.0[1][1].clone()]).is_zero()));
    Ok(CanonicalClass {
        kind,
        witness: Some(witness),
        reduced,
    })
}

/// Whether `phi` already has the normal form of `kind`.
pub fn shape_matches(kind: CanonicalKind, phi: &Phi) -> bool {
    match kind {
        CanonicalKind::Null => phi[1].is_zero() && phi[2].is_zero(),
        CanonicalKind::Square => phi[0].is_zero() || phi[2].is_zero(),
        CanonicalKind::Product => phi[1].is_zero(),
        CanonicalKind::Generic => true,
    }
}

/// Weights of `diag(s, s⁻¹)` on the nonzero coordinates of a point of the
/// first blow-up in its Plücker embedding, sorted.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct WeightSpectrum {
    pub weights: Vec<i32>,
}

impl WeightSpectrum {
    /// Verdict of the Hilbert–Mumford test for the diagonal torus and its
    /// inverse alone.
    pub fn torus_verdict(&self) -> Stability {
        let w = &self.weights;
        if w.is_empty() || w.iter().all(|&x| x > 0) || w.iter().all(|&x| x < 0) {
            Stability::Unstable
        } else if w.iter().all(|&x| x >= 0) || w.iter().all(|&x| x <= 0) {
            Stability::ProperlySemistable
        } else {
            Stability::Stable
        }
    }
}

/// The point `([A], [ξ, ω, η])` sits in
/// `(∧²k² ⊗ S²V ⊕ S²k² ⊗ ∧²V) ⊗ (S²k² ⊗ ∧²V)`; the torus acts with weight
/// 0 on `∧²k²` and with weights 2, 0, −2 on the three slots of `S²k²`.
pub fn weight_spectrum(base: &PencilMatrix, phi: &Phi) -> WeightSpectrum {
    let nnz = |v: &Bivector| v.0.iter().filter(|c| !c.is_zero()).count();
    let q = base.det_form();
    let q_nnz = {
        let m = q.matrix();
        (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).filter(|&(i, j)| !m[i][j].is_zero()).count()
    };
    let pa = base.phi();
    let slot_w = [2, 0, -2];
    let mut first: Vec<(i32, usize)> = vec![(0, q_nnz)];
    first.extend((0..3).map(|k| (slot_w[k], nnz(&pa[k]))));
    let second: Vec<(i32, usize)> = (0..3).map(|k| (slot_w[k], nnz(&phi[k]))).collect();
    let mut weights = Vec::new();
    for &(w1, n1) in &first {
        for &(w2, n2) in &second {
            weights.extend(std::iter::repeat_n(w1 + w2, n1 * n2));
        }
    }
    weights.sort();
    WeightSpectrum { weights }
}
