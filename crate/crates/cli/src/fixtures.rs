//! Built-in corpus: the degeneration families of each type and a few
//! stable pencils, with their expected classification.

use kirwan_core::degeneration::DegenerationType;
use kirwan_core::exact_linear::{triple, CovecV, VecV};
use kirwan_core::kirwan_strata::Stability;
use kirwan_core::Scalar;
use serde::Serialize;
use serde_json::Value;

use crate::commands;
use crate::input;
use crate::report::{CliError, Output};

enum Expect {
    Family {
        kind: DegenerationType,
        phi: [[i64; 3]; 3],
        psi: [[i64; 3]; 3],
    },
    Pencil(Stability),
}

struct Fixture {
    name: &'static str,
    text: &'static str,
    expect: Expect,
}

fn corpus() -> Vec<Fixture> {
    use DegenerationType::*;
    let family = |kind, phi, psi| Expect::Family { kind, phi, psi };
    let stable = || Expect::Pencil(Stability::Stable);
    vec![
        Fixture {
            name: "single_point_t",
            text: include_str!("../fixtures/single_point_t.json"),
            expect: family(Type1, [[0, 1, 0], [0, 0, 0], [0, 0, 1]], [[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
        },
        Fixture {
            name: "two_points_t",
            text: include_str!("../fixtures/two_points_t.json"),
            expect: family(Type2, [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [[1, 0, 0], [0, 0, 0], [0, 0, 1]]),
        },
        Fixture {
            name: "two_points_t2",
            text: include_str!("../fixtures/two_points_t2.json"),
            expect: family(Type2, [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [[1, 0, 0], [0, 0, 0], [0, 0, 1]]),
        },
        Fixture {
            name: "two_stage",
            text: include_str!("../fixtures/two_stage.json"),
            expect: family(Type3, [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [[1, 0, 0], [0, 0, 0], [1, 0, 0]]),
        },
        Fixture {
            name: "stable_1",
            text: include_str!("../fixtures/stable_1.json"),
            expect: stable(),
        },
        Fixture {
            name: "stable_2",
            text: include_str!("../fixtures/stable_2.json"),
            expect: stable(),
        },
        Fixture {
            name: "stable_3",
            text: include_str!("../fixtures/stable_3.json"),
            expect: stable(),
        },
        Fixture {
            name: "stable_4",
            text: include_str!("../fixtures/stable_4.json"),
            expect: stable(),
        },
        Fixture {
            name: "stable_5",
            text: include_str!("../fixtures/stable_5.json"),
            expect: stable(),
        },
    ]
}

/// All fixture inputs keyed by name.
pub fn corpus_json() -> Value {
    Value::Object(
        corpus()
            .iter()
            .map(|f| (f.name.to_string(), serde_json::from_str(f.text).expect("fixtures are valid JSON")))
            .collect(),
    )
}

#[derive(Serialize)]
struct Row {
    name: &'static str,
    expected: String,
    found: String,
    ok: bool,
    /// Tree of the limiting tree bundle, in canonical encoding.
    tree: Option<String>,
    detail: Value,
}

fn ints<L: kirwan_core::exact_linear::Linear<Scalar>>(rows: [[i64; 3]; 3], mk: fn(Scalar, Scalar, Scalar) -> L) -> [L; 3] {
    rows.map(|[a, b, c]| mk(Scalar::int(a), Scalar::int(b), Scalar::int(c)))
}

pub fn run() -> Result<Output, CliError> {
    let mut rows = Vec::new();
    let mut failures = 0;
    for f in corpus() {
        let v = input::parse_json(f.text)?;
        let row = match f.expect {
            Expect::Family { kind, phi, psi } => {
                let (report, _) = commands::family_report(&input::family(&v)?)?;
                let point = &report.limit.point;
                let ok = report.kind == kind
                    && triple::proj_eq(&point.xpoint.phi, &ints(phi, CovecV::<Scalar>::new))
                    && triple::proj_eq(&point.psi, &ints(psi, VecV::<Scalar>::new));
                Row {
                    name: f.name,
                    expected: format!("{kind:?}"),
                    found: format!("{:?}", report.kind),
                    ok,
                    tree: report.descriptor.as_ref().map(|d| d.tree.canonical()),
                    detail: serde_json::json!({
                        "phi": point.xpoint.phi,
                        "psi": point.psi,
                        "b_matrix": report.b_matrix,
                    }),
                }
            }
            Expect::Pencil(expected) => {
                let (found, detail) = commands::pencil_summary(&input::pencil(&v)?)?;
                Row {
                    name: f.name,
                    expected: format!("{expected:?}"),
                    found: format!("{found:?}"),
                    ok: found == expected,
                    tree: None,
                    detail: serde_json::json!({ "det": detail["det"], "det_class": detail["det_class"]["kind"] }),
                }
            }
        };
        failures += usize::from(!row.ok);
        rows.push(row);
    }
    let notes = vec![format!("{} of {} fixtures as expected", rows.len() - failures, rows.len())];
    Output::new(rows, notes)
}
