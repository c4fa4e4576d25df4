//! Classification of one-parameter degenerations and the tree bundles
//! they limit to.

use serde::Serialize;

use super::chart::{proper_transform_matrix, BlowupChart};
use super::family::{
    basis_sending, beilinson_family, limit_lift, normalize_to_diag, normalized_phi, FamilyLimit, PencilFamily,
};
use crate::error::{Error, Result};
use crate::exact_linear::{binary_roots, classify_form, Ambient, CovecV, QuadraticForm, VecV};
use crate::group_action::{canonical_reduce, disc};
use crate::kirwan_strata::{stability_y, strata, Stability};
use crate::linalg;
use crate::pencil::CovecMatrix;
use crate::poly::Poly;
use crate::ring::{Field, Ring};
use crate::scalar::Scalar;
use crate::trees::{WeightedTree, ROOT};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, serde::Deserialize)]
pub enum DegenerationType {
    /// Stable limit off the exceptional divisors.
    Type0,
    Type1,
    Type2,
    Type3,
    NotSemistable,
}

/// Classification together with the limit it was read from.
pub fn classify_with_limit(fam: &PencilFamily) -> Result<(DegenerationType, FamilyLimit)> {
    let limit = limit_lift(fam)?;
    if stability_y(&limit.point)? == Stability::Unstable {
        return Ok((DegenerationType::NotSemistable, limit));
    }
    let f = strata(&limit.point.xpoint)?;
    let kind = match (f.in_eg, f.in_gzr) {
        (false, false) => DegenerationType::Type0,
        (true, false) => DegenerationType::Type1,
        (false, true) => DegenerationType::Type2,
        (true, true) => DegenerationType::Type3,
    };
    Ok((kind, limit))
}

pub fn classify_family(fam: &PencilFamily) -> Result<DegenerationType> {
    Ok(classify_with_limit(fam)?.0)
}

fn first_nonzero<'a>(vs: impl IntoIterator<Item = &'a VecV>) -> Result<VecV> {
    vs.into_iter()
        .find(|v| !v.is_zero())
        .map(VecV::normalized)
        .ok_or_else(|| Error::InvalidPoint("zero limit pencil".into()))
}

/// Family moved so that its value at zero is `diag(e0, e0)`, with the
/// double point `[x]` in the original coordinates.
fn normalize_double_point(limit: &FamilyLimit) -> Result<(PencilFamily, VecV, [[Scalar; 3]; 3])> {
    let a0 = limit.saturated.at_zero();
    let x = first_nonzero([&a0.x, &a0.xp, &a0.y, &a0.yp])?;
    let fam = normalize_to_diag(&limit.saturated, &x, &x)?;
    let m = basis_sending(&x, None)?;
    Ok((fam.change_basis(&m), x, m))
}

/// The conic on the exceptional plane over the double point of a type 1
/// limit, in coordinates `(u0, u1, u2)` with `t·z0 = s·u0`, `z_i = s·u_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExceptionalConic {
    pub conic: QuadraticForm,
    /// `Γ ∩ {u0 = 0}`.
    pub marked_points: [[Scalar; 3]; 2],
    /// `Γ(0, u1, u2)` as coefficients of `u1², u1·u2, u2²`.
    pub line_restriction: [Scalar; 3],
    /// Coordinate change applied to `V` (the double point goes to `e0`).
    pub normalization: [[Scalar; 3]; 3],
}

pub fn exceptional_conic_type1(fam: &PencilFamily) -> Result<ExceptionalConic> {
    let (kind, limit) = classify_with_limit(fam)?;
    if kind != DegenerationType::Type1 {
        return Err(Error::WrongType(format!("expected Type1, found {kind:?}")));
    }
    let (norm, _, m) = normalize_double_point(&limit)?;
    let (order, phi) = normalized_phi(&norm).ok_or(Error::ZeroPhi)?;
    let q = disc(&phi);
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).collect();
    // z0 = u0 / t^order; clear the lowest power of t and evaluate at t = 0.
    let shift = |i: usize, j: usize| (usize::from(i == 0) + usize::from(j == 0)) * order;
    let lowest = pairs
        .iter()
        .filter_map(|&(i, j)| q.monomial_coeff(i, j).order().map(|o| o as i64 - shift(i, j) as i64))
        .min()
        .ok_or_else(|| Error::IllPosedFamily("the family conic vanishes identically".into()))?;
    let coeff = |i: usize, j: usize| {
        let k = lowest + shift(i, j) as i64;
        if k < 0 {
            Scalar::zero()
        } else {
            q.monomial_coeff(i, j).coeff(k as usize)
        }
    };
    let half = Scalar::frac(1, 2);
    let matrix: [[Scalar; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                coeff(i, i)
            } else {
                coeff(i.min(j), i.max(j)) * half.clone()
            }
        })
    });
    let conic = QuadraticForm::new(matrix, Ambient::OnV)?;
    let line_restriction = [coeff(1, 1), coeff(1, 2), coeff(2, 2)];
    if line_restriction.iter().all(Ring::is_zero) {
        return Err(Error::Unsupported("the exceptional line lies on the conic".into()));
    }
    let [r1, r2] = binary_roots(&line_restriction[0], &line_restriction[1], &line_restriction[2], None)?;
    let lift = |r: [Scalar; 2]| {
        let [a, b] = r;
        [Scalar::zero(), a, b]
    };
    Ok(ExceptionalConic {
        conic,
        marked_points: [lift(r1), lift(r2)],
        line_restriction,
        normalization: m,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum ComponentDatum {
    /// The blown-up plane; `conic` is the limit determinant conic when
    /// nothing is blown up.
    Root {
        blown_up: Vec<VecV>,
        conic: Option<QuadraticForm>,
    },
    StableLeaf {
        conic: QuadraticForm,
        marked_points: Vec<[Scalar; 3]>,
    },
    /// Singular point of the sheaf on an exceptional plane, off the line
    /// `gluing_line` along which the plane meets its predecessor.
    ChargeOneLeaf {
        point: [Scalar; 3],
        gluing_line: [Scalar; 3],
    },
    IntermediatePlane {
        blown_up: Vec<[Scalar; 3]>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Component {
    pub vertex: String,
    pub datum: ComponentDatum,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TreeBundleDescriptor {
    #[serde(rename = "type")]
    pub kind: DegenerationType,
    pub tree: WeightedTree,
    pub components: Vec<Component>,
    pub notes: Vec<String>,
}

fn component(vertex: &str, datum: ComponentDatum) -> Component {
    Component {
        vertex: vertex.into(),
        datum,
    }
}

pub fn tree_bundle_descriptor(fam: &PencilFamily) -> Result<TreeBundleDescriptor> {
    let (kind, limit) = classify_with_limit(fam)?;
    let mut notes = Vec::new();
    let (tree, components) = match kind {
        DegenerationType::NotSemistable => {
            return Err(Error::Unstable("the limit of the family is not semistable".into()))
        }
        DegenerationType::Type0 => (
            WeightedTree::trivial(2),
            vec![component(
                ROOT,
                ComponentDatum::Root {
                    blown_up: Vec::new(),
                    conic: Some(limit.point.xpoint.base.det_form()),
                },
            )],
        ),
        DegenerationType::Type1 => {
            let (_, x, _) = normalize_double_point(&limit)?;
            let g = exceptional_conic_type1(fam)?;
            (
                WeightedTree::from_edges(&[(ROOT, None, 0), ("D", Some(ROOT), 2)]),
                vec![
                    component(
                        ROOT,
                        ComponentDatum::Root {
                            blown_up: vec![x],
                            conic: None,
                        },
                    ),
                    component(
                        "D",
                        ComponentDatum::StableLeaf {
                            conic: g.conic,
                            marked_points: g.marked_points.to_vec(),
                        },
                    ),
                ],
            )
        }
        DegenerationType::Type2 => {
            let (points, q) = with_base_change(&limit, &mut notes, type2_points)?;
            (
                WeightedTree::from_edges(&[(ROOT, None, 0), ("D0", Some(ROOT), 1), ("D2", Some(ROOT), 1)]),
                vec![
                    component(
                        ROOT,
                        ComponentDatum::Root {
                            blown_up: points.to_vec(),
                            conic: None,
                        },
                    ),
                    component("D0", leaf(&q[0])),
                    component("D2", leaf(&q[1])),
                ],
            )
        }
        DegenerationType::Type3 => {
            let (x, (p, q)) = with_base_change(&limit, &mut notes, type3_points)?;
            (
                WeightedTree::from_edges(&[
                    (ROOT, None, 0),
                    ("D", Some(ROOT), 0),
                    ("S0", Some("D"), 1),
                    ("S2", Some("D"), 1),
                ]),
                vec![
                    component(
                        ROOT,
                        ComponentDatum::Root {
                            blown_up: vec![x],
                            conic: None,
                        },
                    ),
                    component(
                        "D",
                        ComponentDatum::IntermediatePlane {
                            blown_up: p.to_vec(),
                        },
                    ),
                    component("S0", leaf(&q[0])),
                    component("S2", leaf(&q[1])),
                ],
            )
        }
    };
    debug_assert!(tree.is_valid() && tree.total_charge() == 2);
    Ok(TreeBundleDescriptor {
        kind,
        tree,
        components,
        notes,
    })
}

/// A singular point on an exceptional plane with its chart.
#[derive(Clone, Debug)]
struct LeafPoint {
    point: [Scalar; 3],
    pivot: usize,
}

fn leaf(q: &LeafPoint) -> ComponentDatum {
    ComponentDatum::ChargeOneLeaf {
        point: q.point.clone(),
        gluing_line: VecV::<Scalar>::basis(q.pivot).0,
    }
}

/// Runs `f` on the saturated family and, if a singular point is missing,
/// once more after the base change `t ↦ t²`.
fn with_base_change<T>(
    limit: &FamilyLimit,
    notes: &mut Vec<String>,
    f: fn(&PencilFamily) -> Result<Option<T>>,
) -> Result<T> {
    if let Some(out) = f(&limit.saturated)? {
        return Ok(out);
    }
    let doubled = limit.saturated.reparametrize(&Scalar::one(), 2);
    match f(&doubled)? {
        Some(out) => {
            notes.push("the sheaf is locally free along the central fibre; singular points read after the base change t -> t^2".into());
            Ok(out)
        }
        None => Err(Error::Unsupported(
            "no singular point on an exceptional plane even after the base change t -> t^2".into(),
        )),
    }
}

/// Points where `row(U)` (linear forms on the exceptional plane at `t = 0`)
/// is proportional to the constant row `w`.
fn rank_drop(row: &[CovecV<Poly>; 4], w: &[Scalar; 4]) -> Result<Option<[Scalar; 3]>> {
    if w.iter().all(Ring::is_zero) {
        return Err(Error::Unsupported("both rows vanish at the blown-up point".into()));
    }
    let lin = |j: usize| row[j].0.clone().map(|p| p.at_zero());
    let mut eqs = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let (la, lb) = (lin(a), lin(b));
            eqs.push(
                (0..3)
                    .map(|k| la[k].clone() * w[b].clone() - lb[k].clone() * w[a].clone())
                    .collect::<Vec<_>>(),
            );
        }
    }
    let ker = linalg::kernel(&eqs, 3);
    match ker.len() {
        0 => Ok(None),
        1 => {
            let n = linalg::normalize_first(&ker[0]);
            Ok(Some([n[0].clone(), n[1].clone(), n[2].clone()]))
        }
        _ => Err(Error::Unsupported("a line of singular points on an exceptional plane".into())),
    }
}

fn eval_row_at(b: &CovecMatrix<Poly>, row: usize, p: &[Scalar; 3]) -> [Scalar; 4] {
    std::array::from_fn(|j| (0..3).fold(Scalar::zero(), |acc, k| acc + b.b[row][j].0[k].at_zero() * p[k].clone()))
}

/// Singular points on the two exceptional planes of a two-point chart.
fn two_point_leaves(first: &CovecMatrix<Poly>, chart: &BlowupChart) -> Result<Option<[LeafPoint; 2]>> {
    let bz = proper_transform_matrix(first, chart)?;
    let mut out = Vec::new();
    for i in 0..2 {
        let c = chart.rows[i].as_ref().expect("two-point chart");
        let w = eval_row_at(first, 1 - i, &c.point);
        let Some(q) = rank_drop(&bz.b[i], &w)? else {
            return Ok(None);
        };
        if q[c.pivot()].is_zero() {
            return Err(Error::Unsupported("singular point on the gluing line".into()));
        }
        out.push(LeafPoint {
            point: q,
            pivot: c.pivot(),
        });
    }
    let [a, b]: [LeafPoint; 2] = out.try_into().expect("two leaves");
    Ok(Some([a, b]))
}

/// Factor points of `det(A(0))` (original coordinates) and the leaf points
/// in the normalized charts.
fn type2_points(fam: &PencilFamily) -> Result<Option<([VecV; 2], [LeafPoint; 2])>> {
    let a0 = fam.at_zero();
    let phi0 = a0.phi();
    let class = canonical_reduce(&phi0)?;
    let g = class.witness.as_ref().map_or_else(
        || [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]],
        |g| g.matrix().clone(),
    );
    let moved = fam.act_right(&g);
    let m0 = moved.at_zero();
    let x = first_nonzero([&m0.x, &m0.y])?;
    let y = first_nonzero([&m0.xp, &m0.yp])?;
    let diag = normalize_to_diag(&moved, &x, &y)?;
    let m = basis_sending(&x, Some(&y))?;
    let norm = diag.change_basis(&m);
    let b = beilinson_family(&norm)?;
    let e = |i| VecV::<Scalar>::basis(i).0;
    let chart = BlowupChart::two_point(e(0), e(2), "x")?;
    let mut factors = classify_form(&a0.det_form())?.factors.into_iter().map(VecV).collect::<Vec<_>>();
    factors.dedup();
    let factors: [VecV; 2] = factors
        .try_into()
        .map_err(|_| Error::InvalidPoint("det(A(0)) is not a pair of distinct lines".into()))?;
    Ok(two_point_leaves(&b, &chart)?.map(|q| (factors, q)))
}

/// Both rows vanish at the double point; find the two points of the
/// exceptional plane where the proper transform drops rank, and the rows
/// vanishing there.
fn split_rows(bz: &CovecMatrix<Poly>) -> Result<([[Scalar; 3]; 2], CovecMatrix<Poly>)> {
    // M(λ, μ): the four entries of λ·row0 + μ·row1 at t = 0 as rows of
    // coefficients, with λ a polynomial variable and μ = 1.
    let at0 = |i: usize, j: usize, k: usize| bz.b[i][j].0[k].at_zero();
    let m_poly: Vec<[Poly; 3]> = (0..4)
        .map(|j| std::array::from_fn(|k| Poly::new(vec![at0(1, j, k), at0(0, j, k)])))
        .collect();
    let mut g = Poly::zero();
    for skip in 0..4 {
        let rows: Vec<&[Poly; 3]> = m_poly.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, r)| r).collect();
        let minor = linalg::det3(&[rows[0].clone(), rows[1].clone(), rows[2].clone()]);
        g = Poly::gcd(&g, &minor);
    }
    if g.is_zero() {
        return Err(Error::Unsupported("the proper transform drops rank along a curve".into()));
    }
    let square_free = g.div_rem(&Poly::gcd(&g, &g.derivative())).0;
    let mut combos: Vec<[Scalar; 2]> = match square_free.degree() {
        Some(0) => Vec::new(),
        Some(1) => vec![[-square_free.coeff(0) * square_free.coeff(1).inv(), Scalar::one()]],
        Some(2) => {
            let [r1, r2] =
                binary_roots(&square_free.coeff(2), &square_free.coeff(1), &square_free.coeff(0), None)?;
            [r1, r2]
                .into_iter()
                .map(|[s, t]| [s * t.inv(), Scalar::one()])
                .collect()
        }
        _ => return Err(Error::Unsupported("more than two singular points".into())),
    };
    let at_infinity: Vec<Vec<Scalar>> = (0..4).map(|j| (0..3).map(|k| at0(0, j, k)).collect()).collect();
    if linalg::rank(&at_infinity) < 3 {
        combos.push([Scalar::one(), Scalar::zero()]);
    }
    let mut found: Vec<([Scalar; 3], [Scalar; 2])> = Vec::new();
    for c in combos {
        let m: Vec<Vec<Scalar>> = (0..4)
            .map(|j| (0..3).map(|k| c[0].clone() * at0(0, j, k) + c[1].clone() * at0(1, j, k)).collect())
            .collect();
        let ker = linalg::kernel(&m, 3);
        if ker.len() != 1 {
            return Err(Error::Unsupported("degenerate singular locus on the exceptional plane".into()));
        }
        let n = linalg::normalize_first(&ker[0]);
        found.push(([n[0].clone(), n[1].clone(), n[2].clone()], c));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    if found.len() != 2 || found[0].0 == found[1].0 {
        return Err(Error::Unsupported(format!(
            "expected two singular points on the exceptional plane, found {}",
            found.len()
        )));
    }
    let row = |c: &[Scalar; 2]| -> [CovecV<Poly>; 4] {
        std::array::from_fn(|j| {
            CovecV(std::array::from_fn(|k| {
                bz.b[0][j].0[k].scale(&c[0]) + bz.b[1][j].0[k].scale(&c[1])
            }))
        })
    };
    let split = CovecMatrix {
        b: [row(&found[0].1), row(&found[1].1)],
    };
    Ok(([found[0].0.clone(), found[1].0.clone()], split))
}

/// Double point (original coordinates), the two points blown up on the
/// intermediate plane and the leaf points.
type Type3Points = (VecV, ([[Scalar; 3]; 2], [LeafPoint; 2]));

fn type3_points(fam: &PencilFamily) -> Result<Option<Type3Points>> {
    let a0 = fam.at_zero();
    let x = first_nonzero([&a0.x, &a0.xp, &a0.y, &a0.yp])?;
    let norm = normalize_to_diag(fam, &x, &x)?.change_basis(&basis_sending(&x, None)?);
    let b = beilinson_family(&norm)?;
    let first = BlowupChart::single_point(VecV::<Scalar>::basis(0).0, "x", "y", "s")?;
    let bz1 = proper_transform_matrix(&b, &first)?;
    let (p, split) = split_rows(&bz1)?;
    let second = BlowupChart::two_point(p[0].clone(), p[1].clone(), "y")?;
    Ok(two_point_leaves(&split, &second)?.map(|q| (x, (p, q))))
}
