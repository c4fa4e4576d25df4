//! Charts of blow-ups of `C × P` at points of the central fibre, proper
//! transforms of `B(t)` and the symbolic elementary transformation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linear::CovecV;
use crate::pencil::CovecMatrix;
use crate::poly::Poly;
use crate::ring::{Field, Ring};
use crate::scalar::Scalar;

/// Blow-up of `(t = 0, [p])`.
///
/// With `k` the last nonzero coordinate of `p` (scaled to 1) and
/// `f_i = x_i − p_i·x_k`, the chart is `t·x_k = s·U_k`, `f_i = s·U_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PointChart {
    pub point: [Scalar; 3],
    pub section: String,
    pub coord: String,
}

impl PointChart {
    pub fn new(point: [Scalar; 3], section: &str, coord: &str) -> Result<Self> {
        let k = point
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidPoint("zero point".into()))?;
        let inv = point[k].inv();
        Ok(PointChart {
            point: point.map(|c| c * inv.clone()),
            section: section.to_string(),
            coord: coord.to_string(),
        })
    }

    pub fn pivot(&self) -> usize {
        self.point.iter().rposition(|c| !c.is_zero()).expect("nonzero point")
    }

    pub fn coord_names(&self) -> [String; 3] {
        std::array::from_fn(|i| format!("{}{i}", self.coord))
    }

    /// The substitutions as text, in the source coordinates `source`.
    pub fn rules(&self, source: &str) -> Vec<String> {
        let k = self.pivot();
        (0..3)
            .map(|i| {
                let lhs = if i == k {
                    format!("t*{source}{k}")
                } else if self.point[i].is_zero() {
                    format!("{source}{i}")
                } else {
                    format!("{source}{i} - ({})*{source}{k}", self.point[i])
                };
                format!("{lhs} = {}*{}{i}", self.section, self.coord)
            })
            .collect()
    }

    /// `β / s` in chart coordinates, if `β` vanishes on the exceptional
    /// divisor.
    pub fn transform(&self, beta: &CovecV<Poly>) -> Option<CovecV<Poly>> {
        let k = self.pivot();
        let c_t = (0..3).fold(Poly::zero(), |acc, i| acc + beta.0[i].scale(&self.point[i]));
        if !c_t.at_zero().is_zero() {
            return None;
        }
        let mut out = beta.0.clone();
        out[k] = c_t.shift_down(1);
        Some(CovecV(out))
    }

    /// `s·γ` rewritten in the source coordinates.
    pub fn untransform(&self, gamma: &CovecV<Poly>) -> CovecV<Poly> {
        let k = self.pivot();
        let mut out = gamma.0.clone();
        out[k] = (0..3)
            .filter(|&i| i != k)
            .fold(gamma.0[k].shift_up(1), |acc, i| acc - gamma.0[i].scale(&self.point[i]));
        CovecV(out)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DivisorRelation {
    pub name: String,
    pub relation: String,
}

fn divisor(name: &str, relation: &str) -> DivisorRelation {
    DivisorRelation {
        name: name.into(),
        relation: relation.into(),
    }
}

/// One chart per row of `B`; rows without a chart are left alone.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlowupChart {
    pub source: String,
    pub rows: [Option<PointChart>; 2],
    pub divisors: Vec<DivisorRelation>,
}

impl BlowupChart {
    pub fn identity(source: &str) -> Self {
        BlowupChart {
            source: source.into(),
            rows: [None, None],
            divisors: vec![divisor("F", "central fibre")],
        }
    }

    /// Both rows divided by the section of one exceptional divisor.
    pub fn single_point(p: [Scalar; 3], source: &str, coord: &str, section: &str) -> Result<Self> {
        let c = PointChart::new(p, section, coord)?;
        Ok(BlowupChart {
            source: source.into(),
            rows: [Some(c.clone()), Some(c)],
            divisors: vec![
                divisor("H", "pullback of a line"),
                divisor("D", &format!("exceptional divisor, zero set of {section}")),
                divisor("P~", "proper transform of the central fibre, F - D"),
            ],
        })
    }

    /// Row 0 blown up at `p0` (coordinates `u`, section `s0`), row 1 at
    /// `p2` (coordinates `v`, section `s2`).
    pub fn two_point(p0: [Scalar; 3], p2: [Scalar; 3], source: &str) -> Result<Self> {
        Ok(BlowupChart {
            source: source.into(),
            rows: [Some(PointChart::new(p0, "s0", "u")?), Some(PointChart::new(p2, "s2", "v")?)],
            divisors: vec![
                divisor("H", "pullback of a line"),
                divisor("D0", "exceptional divisor, zero set of s0"),
                divisor("D2", "exceptional divisor, zero set of s2"),
                divisor("P~", "proper transform of the central fibre, F - D0 - D2"),
            ],
        })
    }

    pub fn row_coord_names(&self, row: usize) -> [String; 3] {
        match &self.rows[row] {
            Some(c) => c.coord_names(),
            None => std::array::from_fn(|i| format!("{}{i}", self.source)),
        }
    }
}

/// `B_Z` with `B(t)[i][j] = s_i·B_Z[i][j]`, `s_i` the section of row `i`.
pub fn proper_transform_matrix(b: &CovecMatrix<Poly>, chart: &BlowupChart) -> Result<CovecMatrix<Poly>> {
    let mut out = b.clone();
    for (i, c) in chart.rows.iter().enumerate() {
        let Some(c) = c else { continue };
        for j in 0..4 {
            out.b[i][j] = c.transform(&b.b[i][j]).ok_or_else(|| Error::Indivisible {
                row: i,
                col: j,
                section: c.section.clone(),
            })?;
        }
    }
    Ok(out)
}

/// Re-substitutes the chart and compares with `b`.
pub fn check_decomposition(b: &CovecMatrix<Poly>, bz: &CovecMatrix<Poly>, chart: &BlowupChart) -> bool {
    (0..2).all(|i| {
        (0..4).all(|j| match &chart.rows[i] {
            Some(c) => c.untransform(&bz.b[i][j]) == b.b[i][j],
            None => bz.b[i][j] == b.b[i][j],
        })
    })
}

/// `coeff·t^power·symbol`
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Term {
    pub coeff: Scalar,
    pub power: u32,
    pub symbol: String,
}

/// Linear combination of chart symbols with coefficients in `k[t]`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct LinExpr {
    terms: Vec<Term>,
}

impl LinExpr {
    pub fn zero() -> Self {
        LinExpr::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: BTreeMap<(String, u32), Scalar> = BTreeMap::new();
        for t in terms {
            let e = acc.entry((t.symbol, t.power)).or_insert_with(Scalar::zero);
            *e = e.clone() + t.coeff;
        }
        LinExpr {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((symbol, power), coeff)| Term { coeff, power, symbol })
                .collect(),
        }
    }

    /// `t^power·symbol`
    pub fn symbol(symbol: &str, power: u32) -> Self {
        LinExpr::from_terms([Term {
            coeff: Scalar::one(),
            power,
            symbol: symbol.into(),
        }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c_i(t)·names_i` for a covector with polynomial coefficients.
    pub fn from_covector(c: &CovecV<Poly>, names: &[String; 3]) -> Self {
        LinExpr::from_terms((0..3).flat_map(|i| {
            c.0[i].coeffs().iter().enumerate().map(move |(k, a)| Term {
                coeff: a.clone(),
                power: k as u32,
                symbol: names[i].clone(),
            })
        }))
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if t.coeff != Scalar::one() {
                write!(f, "({})*", t.coeff)?;
            }
            match t.power {
                0 => {}
                1 => write!(f, "t*")?,
                p => write!(f, "t^{p}*")?,
            }
            write!(f, "{}", t.symbol)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymMatrix {
    pub entries: [[LinExpr; 4]; 2],
}

impl SymMatrix {
    /// Writes `B_Z` with the coordinate names of its chart.
    pub fn from_chart_matrix(bz: &CovecMatrix<Poly>, chart: &BlowupChart) -> Self {
        SymMatrix {
            entries: std::array::from_fn(|i| {
                let names = chart.row_coord_names(i);
                std::array::from_fn(|j| LinExpr::from_covector(&bz.b[i][j], &names))
            }),
        }
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `t^power·source = section·target`
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SubstRule {
    pub power: u32,
    pub source: String,
    pub section: String,
    pub target: String,
}

/// Substitution rules plus the section dividing each column.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ElementaryChart {
    pub rules: Vec<SubstRule>,
    pub column_sections: [Option<String>; 4],
}

impl ElementaryChart {
    /// `t·u0 = s0·ut0`, `t·v2 = s2·vt2`, `u1 = s2·ub1`, `v1 = s0·vb1`;
    /// columns 1 and 2 divided by `s2` and `s0`.
    pub fn two_point_default() -> Self {
        let rule = |power, source: &str, section: &str, target: &str| SubstRule {
            power,
            source: source.into(),
            section: section.into(),
            target: target.into(),
        };
        ElementaryChart {
            rules: vec![
                rule(1, "u0", "s0", "ut0"),
                rule(1, "v2", "s2", "vt2"),
                rule(0, "u1", "s2", "ub1"),
                rule(0, "v1", "s0", "vb1"),
            ],
            column_sections: [None, Some("s2".into()), Some("s0".into()), None],
        }
    }
}

/// Left factor `L` of `B_Z = L·diag(σ_j)`, with `σ_j` the column sections.
pub fn elementary_transform_matrix(bz: &SymMatrix, chart: &ElementaryChart) -> Result<SymMatrix> {
    let mut out = bz.clone();
    for (j, section) in chart.column_sections.iter().enumerate() {
        let Some(section) = section else { continue };
        for i in 0..2 {
            let mut terms = Vec::new();
            for t in bz.entries[i][j].terms() {
                let rule = chart
                    .rules
                    .iter()
                    .find(|r| &r.section == section && r.source == t.symbol && t.power >= r.power)
                    .ok_or_else(|| Error::Indivisible {
                        row: i,
                        col: j,
                        section: section.clone(),
                    })?;
                terms.push(Term {
                    coeff: t.coeff.clone(),
                    power: t.power - rule.power,
                    symbol: rule.target.clone(),
                });
            }
            out.entries[i][j] = LinExpr::from_terms(terms);
        }
    }
    Ok(out)
}

/// Multiplies the columns of `left` back by their sections and compares.
pub fn check_elementary(bz: &SymMatrix, left: &SymMatrix, chart: &ElementaryChart) -> bool {
    (0..4).all(|j| {
        (0..2).all(|i| match &chart.column_sections[j] {
            None => left.entries[i][j] == bz.entries[i][j],
            Some(section) => {
                let back: Option<Vec<Term>> = left.entries[i][j]
                    .terms()
                    .iter()
                    .map(|t| {
                        let r = chart.rules.iter().find(|r| &r.section == section && r.target == t.symbol)?;
                        Some(Term {
                            coeff: t.coeff.clone(),
                            power: t.power + r.power,
                            symbol: r.source.clone(),
                        })
                    })
                    .collect();
                back.is_some_and(|b| LinExpr::from_terms(b) == bz.entries[i][j])
            }
        })
    })
}
