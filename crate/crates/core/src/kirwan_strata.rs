//! Points of the two Kirwan blow-ups `X̃ = Bl_{Z_G} X` and
//! `Y = Bl_{closure(GZ_R)} X̃`, their strata and their stability.

use crate::error::{Error, Result};
use crate::exact_linear::{classify_form, triple, ConicClass, ConicKind};
use crate::group_action::{act_phi, act_psi, disc, wedge_triple};
use crate::linalg;
use crate::pencil::{Mat2, PencilMatrix, Phi, Psi};
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Stability {
    Stable,
    ProperlySemistable,
    Unstable,
}

/// `([A], [ξ, ω, η])` on the first blow-up.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct XTildePoint {
    pub base: PencilMatrix,
    pub phi: Phi,
}

impl XTildePoint {
    /// Checks that the pair lies on the blow-up: the rows of `A` are
    /// independent, its own wedges are a multiple of `phi`, and
    /// `A ∧ [[ξ, ω, η, 0], [0, ξ, ω, η]] = 0`.
    pub fn new(base: PencilMatrix, phi: Phi) -> Result<Self> {
        if !base.rows_independent() {
            return Err(Error::DegenerateRows);
        }
        if triple::is_zero(&phi) {
            return Err(Error::ZeroPhi);
        }
        let own = base.phi();
        if !triple::is_zero(&own) && !triple::proj_eq(&own, &phi) {
            return Err(Error::InvalidPoint(
                "phi is not proportional to the wedges of the pencil".into(),
            ));
        }
        if !base.relation(&phi).iter().flatten().all(Ring::is_zero) {
            return Err(Error::InvalidPoint(
                "the pencil and phi violate the wedge relation".into(),
            ));
        }
        Ok(XTildePoint {
            base,
            phi: triple::normalized(&phi),
        })
    }

    pub fn act(&self, g: &Mat2) -> XTildePoint {
        XTildePoint {
            base: self.base.act_right(g),
            phi: triple::normalized(&act_phi(&self.phi, g)),
        }
    }

    pub fn proj_eq(&self, other: &XTildePoint) -> bool {
        self.base.same_span(&other.base) && triple::proj_eq(&self.phi, &other.phi)
    }
}

/// A point of `Y`: a point of `X̃` with `[ξ∧ω, ξ∧η, ω∧η]` or its limit.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct YPoint {
    pub xpoint: XTildePoint,
    pub psi: Psi,
}

impl YPoint {
    /// Off `closure(GZ_R)` `psi` must be proportional to the wedges of
    /// `phi`; over it any nonzero `psi` is accepted.
    pub fn new(xpoint: XTildePoint, psi: Psi) -> Result<Self> {
        if triple::is_zero(&psi) {
            return Err(Error::InvalidPoint("psi is zero".into()));
        }
        let own = wedge_triple(&xpoint.phi);
        if !triple::is_zero(&own) && !triple::proj_eq(&own, &psi) {
            return Err(Error::InvalidPoint(
                "psi is not proportional to the wedges of phi".into(),
            ));
        }
        Ok(YPoint {
            xpoint,
            psi: triple::normalized(&psi),
        })
    }

    pub fn act(&self, g: &Mat2) -> YPoint {
        YPoint {
            xpoint: self.xpoint.act(g),
            psi: triple::normalized(&act_psi(&self.psi, g)),
        }
    }

    pub fn proj_eq(&self, other: &YPoint) -> bool {
        self.xpoint.proj_eq(&other.xpoint) && triple::proj_eq(&self.psi, &other.psi)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct StratumFlags {
    pub in_eg: bool,
    /// Proper transform of the closure of `{det(A) a square}`.
    pub in_h0: bool,
    /// Proper transform of the closure of `{det(A) degenerate}`.
    pub in_h1: bool,
    pub in_zr: bool,
    pub in_gzr: bool,
    pub in_gzr_closure: bool,
    pub det_class: ConicClass,
    pub disc_class: ConicClass,
}

pub fn lift_to_xtilde(a: &PencilMatrix) -> Result<XTildePoint> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    let phi = a.phi();
    if triple::is_zero(&phi) {
        return Err(Error::InZG);
    }
    XTildePoint::new(a.clone(), phi)
}

/// Semistable iff `det(A) ≠ 0`, stable iff `det(A)` is a smooth conic.
pub fn stability_x(a: &PencilMatrix) -> Result<Stability> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    Ok(match classify_form(&a.det_form())?.kind {
        ConicKind::Zero => Stability::Unstable,
        ConicKind::Smooth => Stability::Stable,
        _ => Stability::ProperlySemistable,
    })
}

/// Dimension of the intersection of the row span with `V ⊕ 0` (`slot = 0`)
/// or `0 ⊕ V` (`slot = 1`).
fn meet_dim(a: &PencilMatrix, slot: usize) -> usize {
    let mut rows: Vec<Vec<Scalar>> = a.row_vectors().to_vec();
    for i in 0..3 {
        let mut r = vec![Scalar::zero(); 6];
        r[3 * slot + i] = Scalar::one();
        rows.push(r);
    }
    5 - linalg::rank(&rows)
}

pub fn strata(p: &XTildePoint) -> Result<StratumFlags> {
    let in_eg = triple::is_zero(&p.base.phi());
    let det_class = classify_form(&p.base.det_form())?;
    let disc_class = classify_form(&disc(&p.phi))?;
    let verdict = verdict(in_eg, &det_class, &disc_class);
    let in_gzr_closure = triple::is_zero(&wedge_triple(&p.phi));
    let in_gzr = in_gzr_closure && verdict != Stability::Unstable;
    let in_zr = p.phi[0].is_zero()
        && p.phi[2].is_zero()
        && meet_dim(&p.base, 0) == 1
        && meet_dim(&p.base, 1) == 1;
    let (in_h0, in_h1) = if in_eg {
        (verdict == Stability::Unstable, verdict != Stability::Stable)
    } else {
        let rank = det_class.kind as usize;
        (rank <= ConicKind::DoubleLine as usize, rank <= ConicKind::LinePair as usize)
    };
    Ok(StratumFlags {
        in_eg,
        in_h0,
        in_h1,
        in_zr,
        in_gzr,
        in_gzr_closure,
        det_class,
        disc_class,
    })
}

fn verdict(in_eg: bool, det: &ConicClass, disc: &ConicClass) -> Stability {
    if det.kind == ConicKind::Zero || disc.kind == ConicKind::Zero {
        Stability::Unstable
    } else if (!in_eg && det.kind == ConicKind::Smooth) || (in_eg && disc.kind == ConicKind::LinePair) {
        Stability::Stable
    } else {
        Stability::ProperlySemistable
    }
}

/// Semistable iff `det(A)` and `ω² − 4ξη` are both nonzero; stable iff in
/// addition `det(A)` is smooth (off `E_G`) or `ω² − 4ξη` is not a square
/// (on `E_G`).
pub fn stability_xtilde(p: &XTildePoint) -> Result<Stability> {
    let f = strata(p)?;
    Ok(verdict(f.in_eg, &f.det_class, &f.disc_class))
}

pub fn lift_to_y(p: &XTildePoint) -> Result<YPoint> {
    let psi = wedge_triple(&p.phi);
    if triple::is_zero(&psi) {
        return Err(Error::InGzrClosure);
    }
    YPoint::new(p.clone(), psi)
}

/// Every semistable point of `Y` is stable: points over `GZ_R` and over
/// stable points of `X̃` are stable, all others unstable.
pub fn stability_y(y: &YPoint) -> Result<Stability> {
    let f = strata(&y.xpoint)?;
    let below = verdict(f.in_eg, &f.det_class, &f.disc_class);
    Ok(if below == Stability::Stable || f.in_gzr {
        Stability::Stable
    } else {
        Stability::Unstable
    })
}
