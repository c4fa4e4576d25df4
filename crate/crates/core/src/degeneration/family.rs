//! One-parameter families `A(t)` with polynomial entries and their limits
//! in the second blow-up.

use crate::error::{Error, Result};
use crate::exact_linear::{triple, CovecV, VecV};
use crate::group_action::wedge_triple;
use crate::kirwan_strata::{XTildePoint, YPoint};
use crate::linalg;
use crate::pencil::{CovecMatrix, Mat2, PencilMatrix, Phi, Psi};
use crate::poly::{Poly, RatFunc};
use crate::ring::{Field, Ring};
use crate::scalar::Scalar;

const SATURATION_STEPS: usize = 1000;

/// `A(t)`, a 2×2 matrix with entries in `V ⊗ k[t]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PencilFamily {
    pub a: PencilMatrix<Poly>,
}

impl PencilFamily {
    pub fn new(a: PencilMatrix<Poly>) -> Self {
        PencilFamily { a }
    }

    /// `A₀ + t·A₁ + t²·A₂ + …`
    pub fn from_coeffs(coeffs: &[PencilMatrix]) -> Self {
        let entry = |pick: fn(&PencilMatrix) -> &VecV| {
            VecV(std::array::from_fn(|i| {
                Poly::new(coeffs.iter().map(|c| pick(c).0[i].clone()).collect())
            }))
        };
        PencilFamily {
            a: PencilMatrix::new(entry(|m| &m.x), entry(|m| &m.xp), entry(|m| &m.y), entry(|m| &m.yp)),
        }
    }

    pub fn constant(a: &PencilMatrix) -> Self {
        PencilFamily::from_coeffs(std::slice::from_ref(a))
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> PencilMatrix {
        self.a.map(|p| p.coeff(k))
    }

    pub fn degree(&self) -> usize {
        self.a
            .row_vectors()
            .iter()
            .flatten()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn at(&self, t: &Scalar) -> PencilMatrix {
        self.a.map(|p| p.eval(t))
    }

    pub fn at_zero(&self) -> PencilMatrix {
        self.coeff(0)
    }

    /// Substitute `t ↦ c·t^k`.
    pub fn reparametrize(&self, c: &Scalar, k: usize) -> Self {
        PencilFamily::new(self.a.map(|p| p.substitute_power(c, k)))
    }

    pub fn act_right(&self, g: &Mat2) -> Self {
        PencilFamily::new(self.a.act_right(&lift2(g)))
    }

    pub fn act_left(&self, g: &Mat2) -> Self {
        PencilFamily::new(self.a.act_left(&lift2(g)))
    }

    pub fn change_basis(&self, m: &[[Scalar; 3]; 3]) -> Self {
        PencilFamily::new(self.a.change_basis(&m.clone().map(|r| r.map(Poly::constant))))
    }

    pub fn phi(&self) -> Phi<Poly> {
        self.a.phi()
    }

    pub fn rows_independent(&self) -> bool {
        let rows = self.a.row_vectors().map(|r| r.into_iter().map(RatFunc::from).collect::<Vec<_>>());
        linalg::rank(&rows) == 2
    }

    /// The generic member must have independent rows and a smooth
    /// determinant conic.
    pub fn check_generic(&self) -> Result<()> {
        if !self.rows_independent() {
            return Err(Error::IllPosedFamily("rows are dependent for every t".into()));
        }
        if linalg::det3(self.a.det_form().matrix()).is_zero() {
            return Err(Error::Unstable("the generic member of the family is not stable".into()));
        }
        Ok(())
    }

    /// Equivalent family over `k(t)` whose value at `t = 0` has independent
    /// rows; that value is the limit in the Grassmannian.
    pub fn saturated(&self) -> Result<PencilFamily> {
        let rows = saturate_rows(&self.a.row_vectors())?;
        let entry = |r: &[Poly], s: usize| VecV(std::array::from_fn(|i| r[3 * s + i].clone()));
        Ok(PencilFamily::new(PencilMatrix::new(
            entry(&rows[0], 0),
            entry(&rows[0], 1),
            entry(&rows[1], 0),
            entry(&rows[1], 1),
        )))
    }
}

/// `c·t^power`, one term of a family entry.
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    coeff: VecV,
    power: usize,
}

fn entry_terms(v: &VecV<Poly>) -> Vec<TermJson> {
    let deg = v.0.iter().filter_map(Poly::degree).max();
    (0..deg.map_or(0, |d| d + 1))
        .map(|k| TermJson {
            coeff: v.map(|p| p.coeff(k)),
            power: k,
        })
        .filter(|t| !t.coeff.is_zero())
        .collect()
}

fn entry_from_terms(terms: &[TermJson]) -> VecV<Poly> {
    VecV(std::array::from_fn(|i| {
        terms
            .iter()
            .fold(Poly::zero(), |acc, t| acc + Poly::monomial(t.coeff.0[i].clone(), t.power))
    }))
}

/// `{"rows": [[entry, entry], [entry, entry]]}`, each entry a list of
/// `{"coeff": vec, "power": n}`.
impl serde::Serialize for PencilFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Rows {
            rows: [[Vec<TermJson>; 2]; 2],
        }
        let a = &self.a;
        Rows {
            rows: [
                [entry_terms(&a.x), entry_terms(&a.xp)],
                [entry_terms(&a.y), entry_terms(&a.yp)],
            ],
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for PencilFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Rows {
            rows: [[Vec<TermJson>; 2]; 2],
        }
        let Rows { rows } = Rows::deserialize(de)?;
        let [[x, xp], [y, yp]] = rows;
        Ok(PencilFamily::new(PencilMatrix::new(
            entry_from_terms(&x),
            entry_from_terms(&xp),
            entry_from_terms(&y),
            entry_from_terms(&yp),
        )))
    }
}

fn lift2(g: &Mat2) -> Mat2<Poly> {
    g.clone().map(|r| r.map(Poly::constant))
}

/// Row operations over `k(t)` keeping the rows polynomial until their
/// values at `t = 0` are independent.
pub fn saturate_rows(rows: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>> {
    let mut rows = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    for _ in 0..SATURATION_STEPS {
        let m0: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(Poly::at_zero).collect()).collect();
        let lk = linalg::left_kernel(&m0);
        let Some(c) = lk.first() else {
            return Ok(rows);
        };
        let i = c.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero");
        let comb: Vec<Poly> = (0..cols)
            .map(|j| {
                rows.iter()
                    .zip(c)
                    .fold(Poly::zero(), |acc, (r, ck)| acc + r[j].scale(ck))
            })
            .collect();
        if comb.iter().all(Ring::is_zero) {
            return Err(Error::IllPosedFamily("rows are dependent for every t".into()));
        }
        rows[i] = comb.iter().map(|p| p.shift_down(1)).collect();
    }
    Err(Error::IllPosedFamily("saturation did not terminate".into()))
}

/// Saturated second Beilinson matrix `B(t)` of a family: its columns span
/// the annihilator of the rows over `k(t)` and stay independent at `t = 0`.
pub fn beilinson_family(fam: &PencilFamily) -> Result<CovecMatrix<Poly>> {
    fam.check_generic()?;
    let rows = fam.a.row_vectors().map(|r| r.into_iter().map(RatFunc::from).collect::<Vec<_>>());
    let ker = linalg::kernel(&rows, 6);
    let cols: Vec<Vec<Poly>> = ker.iter().map(|v| clear_denominators(v)).collect();
    let cols = saturate_rows(&cols)?;
    Ok(CovecMatrix::from_columns(&cols))
}

fn clear_denominators(v: &[RatFunc]) -> Vec<Poly> {
    let l = v.iter().fold(Poly::one(), |l, x| {
        let g = Poly::gcd(&l, x.denom());
        (l * x.denom().clone()).div_rem(&g).0
    });
    let polys: Vec<Poly> = v
        .iter()
        .map(|x| (x.numer().clone() * l.clone()).div_rem(x.denom()).0)
        .collect();
    let g = polys.iter().fold(Poly::zero(), |g, p| Poly::gcd(&g, p));
    polys.iter().map(|p| p.div_rem(&g).0).collect()
}

/// Limit in `Y` of the lift of `A(t)`, `t ≠ 0`, as `t → 0`.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct FamilyLimit {
    pub point: YPoint,
    /// Family with saturated rows; its value at 0 is the base of the limit.
    pub saturated: PencilFamily,
    /// Orders of vanishing of `phi(t)` and `psi(t)` at `t = 0`.
    pub phi_order: usize,
    pub psi_order: usize,
}

fn leading<L: crate::exact_linear::Linear<Poly>>(t: &[L; 3]) -> Option<(usize, Vec<Poly>)> {
    let flat = triple::flat(t);
    let order = flat.iter().filter_map(Poly::order).min()?;
    Some((order, flat))
}

fn leading_phi(phi: &Phi<Poly>) -> Option<(usize, Phi)> {
    let (m, flat) = leading(phi)?;
    Some((m, std::array::from_fn(|k| CovecV(std::array::from_fn(|i| flat[3 * k + i].coeff(m))))))
}

fn leading_psi(psi: &Psi<Poly>) -> Option<(usize, Psi)> {
    let (m, flat) = leading(psi)?;
    Some((m, std::array::from_fn(|k| VecV(std::array::from_fn(|i| flat[3 * k + i].coeff(m))))))
}

/// `phi(t)` divided by its order of vanishing.
pub fn normalized_phi(fam: &PencilFamily) -> Option<(usize, Phi<Poly>)> {
    let phi = fam.phi();
    let (m, _) = leading(&phi)?;
    Some((m, phi.map(|b| b.map(|p| p.shift_down(m)))))
}

pub fn limit_lift(fam: &PencilFamily) -> Result<FamilyLimit> {
    fam.check_generic()?;
    let saturated = fam.saturated()?;
    let base = saturated.at_zero();
    let phi_t = saturated.phi();
    let (phi_order, phi0) =
        leading_phi(&phi_t).ok_or_else(|| Error::IllPosedFamily("phi(t) vanishes identically".into()))?;
    let (psi_order, psi0) = leading_psi(&wedge_triple(&phi_t))
        .ok_or_else(|| Error::IllPosedFamily("the family lies in the closure of G.Z_R".into()))?;
    let x = XTildePoint::new(base, phi0)?;
    let point = YPoint::new(x, psi0)?;
    Ok(FamilyLimit {
        point,
        saturated,
        phi_order,
        psi_order,
    })
}

pub(crate) fn inverse2(m: &Mat2) -> Result<Mat2> {
    let [[a, b], [c, d]] = m.clone();
    let det = a.clone() * d.clone() - b.clone() * c.clone();
    if det.is_zero() {
        return Err(Error::InvalidPoint("singular 2x2 matrix".into()));
    }
    let i = det.inv();
    Ok([[d * i.clone(), -b * i.clone()], [-c * i.clone(), a * i]])
}

/// `λ` with `u = λ·v` (`v ≠ 0`), if it exists.
pub(crate) fn ratio(u: &VecV, v: &VecV) -> Option<Scalar> {
    let p = v.0.iter().position(|x| !x.is_zero())?;
    let lambda = u.0[p].div(&v.0[p]);
    (*u == v.scale(&lambda)).then_some(lambda)
}

/// Left-multiply so that the value at zero becomes exactly `diag(x, y)`,
/// given that its rows span `{(x, 0), (0, y)}`.
pub(crate) fn normalize_to_diag(fam: &PencilFamily, x: &VecV, y: &VecV) -> Result<PencilFamily> {
    let a0 = fam.at_zero();
    let bad = || Error::InvalidPoint("the limit pencil is not of the expected diagonal form".into());
    let n = [
        [ratio(&a0.x, x).ok_or_else(bad)?, ratio(&a0.xp, y).ok_or_else(bad)?],
        [ratio(&a0.y, x).ok_or_else(bad)?, ratio(&a0.yp, y).ok_or_else(bad)?],
    ];
    let out = fam.act_left(&inverse2(&n)?);
    debug_assert_eq!(out.at_zero(), PencilMatrix::new(x.clone(), VecV::zero(), VecV::zero(), y.clone()));
    Ok(out)
}

/// Invertible `M` with `M·x = e0` and, when given, `M·y = e2`.
pub(crate) fn basis_sending(x: &VecV, y: Option<&VecV>) -> Result<[[Scalar; 3]; 3]> {
    let cols: Vec<[Scalar; 3]> = match y {
        None => {
            let p = x.0.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPhi)?;
            let mut cols = vec![x.0.clone()];
            cols.extend((0..3).filter(|&i| i != p).map(|i| VecV::<Scalar>::basis(i).0));
            cols
        }
        Some(y) => (0..3)
            .map(|k| vec![x.0.clone(), VecV::<Scalar>::basis(k).0, y.0.clone()])
            .find(|c| !linalg::det3(&transpose(c)).is_zero())
            .ok_or_else(|| Error::InvalidPoint("the two points coincide".into()))?,
    };
    let p = transpose(&cols);
    linalg::inverse3(&p).ok_or_else(|| Error::InvalidPoint("degenerate basis".into()))
}

fn transpose(cols: &[[Scalar; 3]]) -> [[Scalar; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}
