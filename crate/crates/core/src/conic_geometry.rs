//! Jumping-line conics, their duals and the complete conics attached to
//! points of the first blow-up.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linear::{binary_roots, classify_form, wedge, ConicKind, CovecV, QuadraticForm, VecV};
use crate::group_action::disc;
use crate::kirwan_strata::{stability_xtilde, Stability, XTildePoint};
use crate::pencil::{det_pencil, PencilMatrix};
use crate::ring::Ring;
use crate::scalar::Scalar;

pub fn jumping_conic(a: &PencilMatrix) -> Result<QuadraticForm> {
    if !a.rows_independent() {
        return Err(Error::DegenerateRows);
    }
    Ok(det_pencil(a))
}

/// `ω² − 4ξη` on `V`.
pub fn dual_conic(p: &XTildePoint) -> Result<QuadraticForm> {
    let q = disc(&p.phi);
    if q.is_zero() {
        return Err(Error::Unstable("omega^2 - 4 xi eta vanishes".into()));
    }
    Ok(q)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualDatum {
    Dual(QuadraticForm),
    /// Two points of the double line `{x = 0} ⊂ P(V*)`, listed twice when
    /// they coincide.
    Enrichment(Vec<CovecV>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CompleteConic {
    pub primal: QuadraticForm,
    #[serde(flatten)]
    pub dual: DualDatum,
}

impl CompleteConic {
    pub fn is_double_point(&self) -> bool {
        matches!(&self.dual, DualDatum::Enrichment(p) if p.len() == 2 && p[0] == p[1])
    }
}

pub fn complete_conic(p: &XTildePoint) -> Result<CompleteConic> {
    if stability_xtilde(p)? == Stability::Unstable {
        return Err(Error::Unstable("the point is not semistable".into()));
    }
    let primal = p.base.det_form();
    let class = classify_form(&primal)?;
    let dual = if class.kind == ConicKind::DoubleLine {
        let x = VecV(class.factors[0].clone());
        let pivot = x.0.iter().position(|c| !c.is_zero()).expect("nonzero factor");
        let complement: Vec<VecV> = (0..3).filter(|&i| i != pivot).map(VecV::basis).collect();
        DualDatum::Enrichment(enrichment(&x, &disc(&p.phi), [&complement[0], &complement[1]])?)
    } else {
        DualDatum::Dual(dual_conic(p)?)
    };
    Ok(CompleteConic { primal, dual })
}

/// Lines through `[x]` on which `ω² − 4ξη` vanishes, as points `x ∧ m` of
/// `P(V*)`, with `m` running over the span of `complement`.
pub fn enrichment(x: &VecV, q: &QuadraticForm, complement: [&VecV; 2]) -> Result<Vec<CovecV>> {
    let [a, b] = complement;
    let (ca, cb) = (&a.0, &b.0);
    let coeffs = [q.eval(ca), q.polar(ca, cb) * Scalar::int(2), q.eval(cb)];
    if coeffs.iter().all(Ring::is_zero) {
        return Err(Error::Unstable("the residual binary form vanishes".into()));
    }
    let roots = binary_roots(&coeffs[0], &coeffs[1], &coeffs[2], None)?;
    let mut pts: Vec<CovecV> = roots
        .iter()
        .map(|[s, t]| wedge(x, &(a.scale(s) + b.scale(t))).normalized())
        .collect();
    pts.sort_by(|u, v| u.0.cmp(&v.0));
    Ok(pts)
}
