//! Request payloads.

use kirwan_core::degeneration::PencilFamily;
use kirwan_core::exact_linear::CovecV;
use kirwan_core::kirwan_strata::XTildePoint;
use kirwan_core::pencil::{PencilMatrix, Phi};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::report::CliError;

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))
}

fn from_value<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| CliError::Schema(format!("expected {what}: {e}")))
}

/// `{"rows": [[x, x'], [y, y']]}` with vectors of three scalars.
pub fn pencil(v: &Value) -> Result<PencilMatrix, CliError> {
    from_value(v, "a pencil {\"rows\": [[x, x'], [y, y']]}")
}

/// `{"rows": ...}` with entries given as lists of `{"coeff", "power"}`.
pub fn family(v: &Value) -> Result<PencilFamily, CliError> {
    from_value(v, "a family {\"rows\": [[entry, entry], [entry, entry]]}")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiJson {
    phi: [CovecV; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointJson {
    base: PencilMatrix,
    phi: [CovecV; 3],
}

pub enum PencilOrFamily {
    Pencil(PencilMatrix),
    Family(PencilFamily),
}

/// Vectors in the first entry mean a pencil, term lists a family.
pub fn pencil_or_family(v: &Value) -> Result<PencilOrFamily, CliError> {
    let first = v.pointer("/rows/0/0");
    if first.and_then(Value::as_array).and_then(|a| a.first()).is_some_and(Value::is_object) {
        Ok(PencilOrFamily::Family(family(v)?))
    } else {
        Ok(PencilOrFamily::Pencil(pencil(v)?))
    }
}

pub enum PhiInput {
    Phi(Phi),
    Pencil(PencilMatrix),
}

pub fn phi_or_pencil(v: &Value) -> Result<PhiInput, CliError> {
    if v.get("phi").is_some() {
        Ok(PhiInput::Phi(from_value::<PhiJson>(v, "{\"phi\": [xi, omega, eta]}")?.phi))
    } else {
        Ok(PhiInput::Pencil(pencil(v)?))
    }
}

pub enum PointInput {
    Point(XTildePoint),
    Pencil(PencilMatrix),
}

pub fn point_or_pencil(v: &Value) -> Result<PointInput, CliError> {
    if v.get("base").is_some() {
        let p: PointJson = from_value(v, "{\"base\": pencil, \"phi\": [xi, omega, eta]}")?;
        Ok(PointInput::Point(XTildePoint::new(p.base, p.phi)?))
    } else {
        Ok(PointInput::Pencil(pencil(v)?))
    }
}
