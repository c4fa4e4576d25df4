use kirwan_core::conic_geometry::{complete_conic, dual_conic, CompleteConic};
use kirwan_core::degeneration::{
    beilinson_family, classify_with_limit, exceptional_conic_type1, tree_bundle_descriptor, BlowupChart,
    DegenerationType, ExceptionalConic, FamilyLimit, PencilFamily, SymMatrix, TreeBundleDescriptor,
};
use kirwan_core::exact_linear::{classify_form, ConicClass, QuadraticForm};
use kirwan_core::group_action::{canonical_reduce, disc, weight_spectrum, CanonicalClass, WeightSpectrum};
use kirwan_core::kirwan_strata::{
    lift_to_xtilde, lift_to_y, stability_x, stability_xtilde, stability_y, strata, Stability, StratumFlags,
    XTildePoint, YPoint,
};
use kirwan_core::pencil::{is_in_zg, sheaf_singularities, PencilMatrix, SingularityReport};
use kirwan_core::trees::enumerate;
use kirwan_core::Error;
use serde::Serialize;
use serde_json::Value;

use crate::input::{self, PencilOrFamily, PhiInput, PointInput};
use crate::report::{CliError, Output};

#[derive(Serialize)]
pub struct XTildeReport {
    pub point: XTildePoint,
    pub strata: StratumFlags,
    pub stability: Stability,
}

#[derive(Serialize)]
pub struct YReport {
    pub point: YPoint,
    pub stability: Stability,
}

#[derive(Serialize)]
struct PencilReport {
    det: QuadraticForm,
    det_class: ConicClass,
    in_zg: bool,
    stability_x: Stability,
    xtilde: Option<XTildeReport>,
    y: Option<YReport>,
    singularities: Option<SingularityReport>,
    complete_conic: Option<CompleteConic>,
}

fn xtilde_report(p: XTildePoint) -> Result<XTildeReport, CliError> {
    Ok(XTildeReport {
        strata: strata(&p)?,
        stability: stability_xtilde(&p)?,
        point: p,
    })
}

fn y_report(y: YPoint) -> Result<YReport, CliError> {
    Ok(YReport {
        stability: stability_y(&y)?,
        point: y,
    })
}

/// `Ok(None)` with a note for the errors that only mean "not defined here".
fn optional<T>(r: Result<T, Error>, what: &str, notes: &mut Vec<String>) -> Result<Option<T>, CliError> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e @ (Error::InZG | Error::InGzrClosure | Error::DetZero | Error::Unstable(_))) => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// Verdict on the Grassmannian together with the full report.
pub fn pencil_summary(a: &PencilMatrix) -> Result<(Stability, Value), CliError> {
    let (report, _) = classify_pencil_inner(a)?;
    Ok((report.stability_x, serde_json::to_value(&report).expect("reports serialize")))
}

fn classify_pencil_inner(a: &PencilMatrix) -> Result<(PencilReport, Vec<String>), CliError> {
    let mut notes = Vec::new();
    let det = a.det_form();
    let det_class = classify_form(&det)?;
    let in_zg = is_in_zg(a)?;
    let stability_x = stability_x(a)?;
    let xtilde_point = optional(lift_to_xtilde(a), "first blow-up", &mut notes)?;
    let (xtilde, y, complete) = match xtilde_point {
        Some(p) => {
            let y = optional(lift_to_y(&p), "second blow-up", &mut notes)?.map(y_report).transpose()?;
            let c = optional(complete_conic(&p), "complete conic", &mut notes)?;
            (Some(xtilde_report(p)?), y, c)
        }
        None => (None, None, None),
    };
    let singularities = optional(sheaf_singularities(a), "singularities", &mut notes)?;
    Ok((
        PencilReport {
            det,
            det_class,
            in_zg,
            stability_x,
            xtilde,
            y,
            singularities,
            complete_conic: complete,
        },
        notes,
    ))
}

pub fn classify_pencil(v: &Value) -> Result<Output, CliError> {
    let a = input::pencil(v)?;
    let (report, notes) = classify_pencil_inner(&a)?;
    Output::new(report, notes)
}

#[derive(Serialize)]
pub struct FamilyReport {
    #[serde(rename = "type")]
    pub kind: DegenerationType,
    pub limit: FamilyLimit,
    /// `B(t)` with its columns as displayed rows, in coordinates `x0, x1, x2`.
    pub b_matrix: Vec<String>,
    pub descriptor: Option<TreeBundleDescriptor>,
    pub exceptional_conic: Option<ExceptionalConic>,
}

pub fn family_report(f: &PencilFamily) -> Result<(FamilyReport, Vec<String>), CliError> {
    let mut notes = Vec::new();
    let (kind, limit) = classify_with_limit(f)?;
    let b = beilinson_family(f)?;
    let b_matrix = SymMatrix::from_chart_matrix(&b, &BlowupChart::identity("x"))
        .to_string()
        .lines()
        .map(String::from)
        .collect();
    let descriptor = if kind == DegenerationType::NotSemistable {
        notes.push("the limit is not semistable; no tree bundle".into());
        None
    } else {
        let d = tree_bundle_descriptor(f)?;
        notes.extend(d.notes.iter().cloned());
        Some(d)
    };
    let exceptional_conic = match kind {
        DegenerationType::Type1 => Some(exceptional_conic_type1(f)?),
        _ => None,
    };
    Ok((
        FamilyReport {
            kind,
            limit,
            b_matrix,
            descriptor,
            exceptional_conic,
        },
        notes,
    ))
}

pub fn classify_family(v: &Value) -> Result<Output, CliError> {
    let f = input::family(v)?;
    let (report, notes) = family_report(&f)?;
    Output::new(report, notes)
}

#[derive(Serialize)]
struct PencilLift {
    xtilde: XTildeReport,
    y: Option<YReport>,
}

pub fn lift(v: &Value) -> Result<Output, CliError> {
    match input::pencil_or_family(v)? {
        PencilOrFamily::Pencil(a) => {
            let mut notes = Vec::new();
            let p = lift_to_xtilde(&a)?;
            let y = optional(lift_to_y(&p), "second blow-up", &mut notes)?.map(y_report).transpose()?;
            Output::new(
                PencilLift {
                    xtilde: xtilde_report(p)?,
                    y,
                },
                notes,
            )
        }
        PencilOrFamily::Family(f) => {
            let limit = kirwan_core::degeneration::limit_lift(&f)?;
            let stability = stability_y(&limit.point)?;
            Output::new(serde_json::json!({ "limit": limit, "stability": stability }), Vec::new())
        }
    }
}

#[derive(Serialize)]
struct CanonicalReport {
    #[serde(flatten)]
    class: CanonicalClass,
    disc: QuadraticForm,
    disc_class: ConicClass,
    /// Torus weights of the reduced point, when a pencil was given.
    weights: Option<WeightSpectrum>,
    torus_verdict: Option<Stability>,
    stability: Option<Stability>,
}

pub fn canonical(v: &Value) -> Result<Output, CliError> {
    let (phi, point) = match input::phi_or_pencil(v)? {
        PhiInput::Phi(phi) => (phi, None),
        PhiInput::Pencil(a) => {
            let p = lift_to_xtilde(&a)?;
            (p.phi.clone(), Some(p))
        }
    };
    let class = canonical_reduce(&phi)?;
    let q = disc(&phi);
    let disc_class = classify_form(&q)?;
    let (weights, torus_verdict, stability) = match &point {
        Some(p) => {
            let moved = match &class.witness {
                Some(g) => p.act(g.matrix()),
                None => p.clone(),
            };
            let w = weight_spectrum(&moved.base, &moved.phi);
            let verdict = w.torus_verdict();
            (Some(w), Some(verdict), Some(stability_xtilde(p)?))
        }
        None => (None, None, None),
    };
    Output::new(
        CanonicalReport {
            class,
            disc: q,
            disc_class,
            weights,
            torus_verdict,
            stability,
        },
        Vec::new(),
    )
}

pub fn trees(charge: u32, bound: u32) -> Result<Output, CliError> {
    let e = enumerate(charge, bound)?;
    let notes = vec![format!(
        "{} weighted trees and {} shapes of total charge {charge}",
        e.weighted.len(),
        e.shapes.len()
    )];
    Output::new(e, notes)
}

#[derive(Serialize)]
struct DualReport {
    dual: QuadraticForm,
    dual_class: ConicClass,
    complete_conic: Option<CompleteConic>,
}

pub fn dual(v: &Value) -> Result<Output, CliError> {
    let p = match input::point_or_pencil(v)? {
        PointInput::Point(p) => p,
        PointInput::Pencil(a) => lift_to_xtilde(&a)?,
    };
    let mut notes = Vec::new();
    let d = dual_conic(&p)?;
    let complete = optional(complete_conic(&p), "complete conic", &mut notes)?;
    Output::new(
        DualReport {
            dual_class: classify_form(&d)?,
            dual: d,
            complete_conic: complete,
        },
        notes,
    )
}
