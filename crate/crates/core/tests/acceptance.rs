//! Acceptance run: one PASS/FAIL line per criterion. All comparisons are
//! exact (tolerance 0) unless a time bound is stated.

mod common;

use std::time::{Duration, Instant};

use common::*;
use kirwan_core::conic_geometry::dual_conic;
use kirwan_core::degeneration::{
    beilinson_family, check_decomposition, check_elementary, classify_with_limit, elementary_transform_matrix,
    exceptional_conic_type1, proper_transform_matrix, tree_bundle_descriptor, BlowupChart, DegenerationType,
    ElementaryChart, LinExpr, PencilFamily, SymMatrix,
};
use kirwan_core::exact_linear::{adjugate, triple, wedge, Ambient, CovecV, QuadraticForm, VecV};
use kirwan_core::group_action::{act_phi, act_psi, canonical_reduce, disc, weight_spectrum, wedge_triple};
use kirwan_core::kirwan_strata::{lift_to_xtilde, lift_to_y, stability_xtilde, stability_y, Stability, XTildePoint, YPoint};
use kirwan_core::pencil::{pluecker, sheaf_singularities, CovecMatrix, PencilMatrix, PlueckerPoint};
use kirwan_core::poly::{Poly, RatFunc};
use kirwan_core::ring::Ring;
use kirwan_core::trees::{enumerate, tree_iso, DEFAULT_CHARGE_BOUND};
use kirwan_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn det2(g: &kirwan_core::pencil::Mat2) -> Scalar {
    g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone()
}

fn plucker_relation(r: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    for k in 0..500 {
        let a = pencil(r);
        let rel = a.relation(&a.phi());
        ensure(rel.iter().flatten().all(Ring::is_zero), || format!("pencil {k}: {a:?}"))?;
    }
    let dt = start.elapsed();
    ensure(dt < Duration::from_secs(5), || format!("took {dt:?}"))?;
    Ok(format!("500 pencils, relation = 0 exactly, {:.3} s < 5 s", dt.as_secs_f64()))
}

fn equivariance(r: &mut ChaCha8Rng) -> Outcome {
    for k in 0..200 {
        let a = pencil(r);
        let g = gl2(r);
        let moved = pluecker(&a.act_right(&g)).map_err(|e| e.to_string())?;
        let p = pluecker(&a).map_err(|e| e.to_string())?;
        let expect = PlueckerPoint {
            q: p.q.scale(&det2(&g)),
            phi: act_phi(&p.phi, &g),
        };
        ensure(moved == expect && moved.proj_eq(&expect), || format!("pluecker, pair {k}"))?;
        let lhs = wedge_triple(&act_phi(&p.phi, &g));
        let rhs = act_psi(&wedge_triple(&p.phi), &g);
        ensure(triple::proj_eq(&lhs, &rhs), || format!("second wedge map, pair {k}"))?;
    }
    Ok("200 (A, g) pairs, first and second wedge maps equivariant".into())
}

fn dual_identity(r: &mut ChaCha8Rng) -> Outcome {
    let c = s(-4);
    for k in 0..200 {
        let a = pencil(r);
        let lhs = disc(&a.phi());
        let rhs = adjugate(&a.det_form()).scale(&c);
        ensure(lhs == rhs, || format!("pencil {k}: {a:?}"))?;
    }
    let a = PencilMatrix::new(e(0), e(1), -e(2), e(0));
    let d = dual_conic(&lift_to_xtilde(&a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(d == adjugate(&a.det_form()).scale(&c), || "worked case".into())?;
    Ok("200 pencils, disc(phi) = -4 adj(det A) exactly".into())
}

/// Verdict of the torus weights after moving `phi` to its normal form.
fn torus_after_reduction(p: &XTildePoint) -> Result<Stability, String> {
    let class = canonical_reduce(&p.phi).map_err(|e| e.to_string())?;
    let q = match &class.witness {
        Some(g) => p.act(g.matrix()),
        None => p.clone(),
    };
    Ok(weight_spectrum(&q.base, &q.phi).torus_verdict())
}

fn canonical_forms() -> Vec<XTildePoint> {
    let eg = |phi: [CovecV; 3]| XTildePoint::new(diag(e(0), e(0)), phi).expect("point of E_G");
    let off = |a: PencilMatrix| lift_to_xtilde(&a).expect("off Z_G");
    let zero = CovecV::zero;
    vec![
        eg([z(0, 1, 0), zero(), zero()]),
        eg([zero(), z(0, 1, 0), zero()]),
        eg([zero(), z(0, 1, 0), z(0, 0, 1)]),
        eg([z(0, 1, 0), zero(), z(0, 0, 1)]),
        off(diag(e(0), e(2))),
        off(PencilMatrix::new(e(0), e(1), -e(2), e(0))),
        off(PencilMatrix::new(e(0), e(1), VecV::zero(), e(0))),
        off(PencilMatrix::new(e(0), e(1), VecV::zero(), e(2))),
        off(PencilMatrix::new(e(0), VecV::zero(), e(1), VecV::zero())),
    ]
}

fn random_xtilde(r: &mut ChaCha8Rng) -> Option<XTildePoint> {
    match r.gen_range(0..5) {
        0 => lift_to_xtilde(&pencil(r)).ok(),
        1 => eg_point(r),
        2 => {
            let (x, y, w) = (nonzero_vector(r), nonzero_vector(r), vector(r));
            lift_to_xtilde(&PencilMatrix::new(x, VecV::zero(), w, y).act_right(&gl2(r))).ok()
        }
        3 => {
            let (x, w) = (nonzero_vector(r), nonzero_vector(r));
            lift_to_xtilde(&PencilMatrix::new(x.clone(), w, VecV::zero(), x).act_right(&gl2(r))).ok()
        }
        _ => {
            let forms = canonical_forms();
            Some(forms[r.gen_range(0..forms.len())].act(&gl2(r)))
        }
    }
}

fn weight_oracle(r: &mut ChaCha8Rng) -> Outcome {
    let check = |p: &XTildePoint, what: &str| -> Result<Stability, String> {
        let verdict = stability_xtilde(p).map_err(|e| e.to_string())?;
        let torus = torus_after_reduction(p)?;
        ensure(verdict == torus, || format!("{what}: verdict {verdict:?}, weights {torus:?}: {p:?}"))?;
        Ok(verdict)
    };
    let forms = canonical_forms();
    for (k, p) in forms.iter().enumerate() {
        check(p, &format!("canonical form {k}"))?;
    }
    let mut seen = std::collections::BTreeMap::new();
    let mut n = 0;
    while n < 100 {
        let Some(p) = random_xtilde(r) else { continue };
        let v = check(&p, &format!("random point {n}"))?;
        *seen.entry(format!("{v:?}")).or_insert(0) += 1;
        n += 1;
    }
    ensure(seen.len() == 3, || format!("sweep missed a verdict: {seen:?}"))?;
    Ok(format!("{} canonical forms + 100 random points agree ({seen:?})", forms.len()))
}

/// `Σ c·t^k·x_i`
fn lin(terms: &[(Scalar, usize, usize)]) -> CovecV<Poly> {
    let mut out = CovecV::<Poly>::zero();
    for (c, k, i) in terms {
        out.0[*i] = out.0[*i].clone() + Poly::monomial(c.clone(), *k);
    }
    out
}

fn x1(i: usize) -> CovecV<Poly> {
    lin(&[(s(1), 0, i)])
}

fn tx(c: Scalar, k: usize, i: usize) -> CovecV<Poly> {
    lin(&[(c, k, i)])
}

fn covmat(rows: [[CovecV<Poly>; 4]; 2]) -> CovecMatrix<Poly> {
    CovecMatrix { b: rows }
}

fn same_module(a: &CovecMatrix<Poly>, b: &CovecMatrix<Poly>) -> bool {
    let to_rat = |m: &CovecMatrix<Poly>| m.map(|p| RatFunc::from(p.clone()));
    let at0 = |m: &CovecMatrix<Poly>| m.map(Poly::at_zero);
    let full = |m: &CovecMatrix<Poly>| kirwan_core::linalg::rank(&at0(m).columns()) == 4;
    to_rat(a).same_span(&to_rat(b)) && full(a) && full(b)
}

fn golden_transforms(r: &mut ChaCha8Rng) -> Outcome {
    let zero = CovecV::<Poly>::zero;
    let one = || s(1);
    let err = |e: kirwan_core::Error| e.to_string();
    // single blow-up at [e0]
    for _ in 0..5 {
        let (a, b) = (nonzero_scalar(r), nonzero_scalar(r));
        let fam = first_example_family(&a, &b);
        let reference = covmat([
            [x1(1), x1(2), tx(a.clone(), 1, 0), zero()],
            [zero(), tx(b.clone(), 1, 0), x1(1), x1(2)],
        ]);
        ensure(same_module(&beilinson_family(&fam).map_err(err)?, &reference), || format!("B(t), a = {a}, b = {b}"))?;
        let chart = BlowupChart::single_point([one(), s(0), s(0)], "x", "u", "s").map_err(err)?;
        let bz = proper_transform_matrix(&reference, &chart).map_err(err)?;
        let expect = covmat([
            [x1(1), x1(2), tx(a.clone(), 0, 0), zero()],
            [zero(), tx(b.clone(), 0, 0), x1(1), x1(2)],
        ]);
        ensure(bz == expect && check_decomposition(&reference, &bz, &chart), || format!("B_Z, a = {a}, b = {b}"))?;
    }
    // two points, t and t^2
    let two = BlowupChart::two_point([one(), s(0), s(0)], [s(0), s(0), one()], "x").map_err(err)?;
    let mut bz2 = None;
    for k in [1, 2] {
        let fam = type2_family(k);
        let reference = covmat([
            [x1(2), x1(1), tx(one(), k, 0), zero()],
            [zero(), tx(one(), k, 2), x1(1), x1(0)],
        ]);
        ensure(same_module(&beilinson_family(&fam).map_err(err)?, &reference), || format!("B(t) with t^{k}"))?;
        let bz = proper_transform_matrix(&reference, &two).map_err(err)?;
        let expect = covmat([
            [x1(2), x1(1), tx(one(), k - 1, 0), zero()],
            [zero(), tx(one(), k - 1, 2), x1(1), x1(0)],
        ]);
        ensure(bz == expect && check_decomposition(&reference, &bz, &two), || format!("B_Z with t^{k}"))?;
        if k == 2 {
            bz2 = Some(bz);
        }
    }
    let sym = SymMatrix::from_chart_matrix(&bz2.expect("t^2 case"), &two);
    let u = |name: &str, k| LinExpr::symbol(name, k);
    ensure(
        sym.entries
            == [
                [u("u2", 0), u("u1", 0), u("u0", 1), LinExpr::zero()],
                [LinExpr::zero(), u("v2", 1), u("v1", 0), u("v0", 0)],
            ],
        || format!("symbolic B_Z:\n{sym}"),
    )?;
    let chart = ElementaryChart::two_point_default();
    let left = elementary_transform_matrix(&sym, &chart).map_err(err)?;
    let expect = SymMatrix {
        entries: [
            [u("u2", 0), u("ub1", 0), u("ut0", 0), LinExpr::zero()],
            [LinExpr::zero(), u("vt2", 0), u("vb1", 0), u("v0", 0)],
        ],
    };
    ensure(left == expect && check_elementary(&sym, &left, &chart), || format!("elementary transform:\n{left}"))?;
    // two consecutive blow-ups
    let fam = type3_family();
    let reference = covmat([
        [x1(2), x1(1), tx(one(), 3, 0), zero()],
        [zero(), tx(one(), 2, 2), x1(1), lin(&[(one(), 1, 0), (s(-1), 0, 2)])],
    ]);
    ensure(same_module(&beilinson_family(&fam).map_err(err)?, &reference), || "B(t), two stages".into())?;
    let first = BlowupChart::single_point([one(), s(0), s(0)], "x", "y", "s").map_err(err)?;
    let bz = proper_transform_matrix(&reference, &first).map_err(err)?;
    let expect = covmat([
        [x1(2), x1(1), tx(one(), 2, 0), zero()],
        [zero(), tx(one(), 2, 2), x1(1), lin(&[(one(), 0, 0), (s(-1), 0, 2)])],
    ]);
    ensure(bz == expect && check_decomposition(&reference, &bz, &first), || "first stage".into())?;
    let second = BlowupChart::two_point([one(), s(0), s(0)], [one(), s(0), one()], "y").map_err(err)?;
    let bzz = proper_transform_matrix(&bz, &second).map_err(err)?;
    let expect = covmat([
        [x1(2), x1(1), tx(one(), 1, 0), zero()],
        [zero(), tx(one(), 1, 2), x1(1), x1(0)],
    ]);
    ensure(bzz == expect && check_decomposition(&bz, &bzz, &second), || "second stage".into())?;
    Ok("B(t) for all families, B_Z for one/two points and both stages, elementary transform: exact".into())
}

fn classification() -> Outcome {
    let zero = CovecV::zero;
    let cases: [(&str, PencilFamily, DegenerationType, [CovecV; 3], [VecV; 3]); 4] = [
        ("type 1", type1_family(), DegenerationType::Type1, [z(0, 1, 0), zero(), z(0, 0, 1)], [VecV::zero(), e(0), VecV::zero()]),
        ("type 2 (t)", type2_family(1), DegenerationType::Type2, [zero(), z(0, 1, 0), zero()], [e(0), VecV::zero(), e(2)]),
        ("type 2 (t^2)", type2_family(2), DegenerationType::Type2, [zero(), z(0, 1, 0), zero()], [e(0), VecV::zero(), e(2)]),
        ("type 3", type3_family(), DegenerationType::Type3, [zero(), z(0, 1, 0), zero()], [e(0), VecV::zero(), e(0)]),
    ];
    for (name, fam, kind, phi, psi) in cases {
        let (got, limit) = classify_with_limit(&fam).map_err(|e| format!("{name}: {e}"))?;
        ensure(got == kind, || format!("{name}: classified as {got:?}"))?;
        ensure(triple::proj_eq(&limit.point.xpoint.phi, &phi), || format!("{name}: phi {:?}", limit.point.xpoint.phi))?;
        ensure(triple::proj_eq(&limit.point.psi, &psi), || format!("{name}: psi {:?}", limit.point.psi))?;
    }
    Ok("Type1/Type2/Type3 with the expected limit coordinates".into())
}

/// `diag(e0, e0) + t·[[x, x′], [y, y′]]` with the normalization making the
/// limit `([diag(e0, e0)], [z2, 0, −z1])`.
fn transversal_family(p: &[Scalar; 6]) -> PencilFamily {
    let [x0, x1, x2, y0, yp0, xp0] = p.clone();
    let x = VecV::new(x0, x1.clone(), x2.clone());
    let xp = VecV::new(xp0, s(0), s(-1));
    let y = VecV::new(y0, s(1), s(0));
    let yp = VecV::new(yp0, x1, x2);
    family(&[diag(e(0), e(0)), PencilMatrix::new(x, xp, y, yp)])
}

fn exceptional_conic(r: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    let mut tries = 0;
    while done < 20 {
        tries += 1;
        ensure(tries < 200, || "too few admissible parameter draws".into())?;
        let p: [Scalar; 6] = std::array::from_fn(|_| scalar(r));
        let fam = transversal_family(&p);
        if fam.check_generic().is_err() {
            continue;
        }
        let g = exceptional_conic_type1(&fam).map_err(|e| format!("{p:?}: {e}"))?;
        let (x1, x2) = (p[1].clone(), p[2].clone());
        // u0² − 4(u2 − x2·u0)(−u1 + x1·u0)
        let m00 = s(1) + s(4) * x1.clone() * x2.clone();
        let expect = QuadraticForm::new(
            [
                [m00, -s(2) * x2.clone(), -s(2) * x1.clone()],
                [-s(2) * x2, s(0), s(2)],
                [-s(2) * x1, s(2), s(0)],
            ],
            Ambient::OnV,
        )
        .map_err(|e| e.to_string())?;
        ensure(g.conic.proj_eq(&expect), || format!("{p:?}: {:?}", g.conic))?;
        let l = &g.line_restriction;
        ensure(l[0].is_zero() && !l[1].is_zero() && l[2].is_zero(), || format!("{p:?}: line {l:?}"))?;
        done += 1;
    }
    Ok("20 random parameter sets: conic and u1*u2 exact".into())
}

fn singularity_notice() -> Outcome {
    let err = |e: kirwan_core::Error| e.to_string();
    let a = sheaf_singularities(&PencilMatrix::new(e(0), VecV::zero(), e(1), e(2))).map_err(err)?;
    ensure(a.singular_points == vec![e(0)] && !a.locally_free, || format!("extension: {a:?}"))?;
    let b = sheaf_singularities(&diag(e(0), e(2))).map_err(err)?;
    let mut pts = b.singular_points.clone();
    pts.sort_by(|u, v| u.0.cmp(&v.0));
    let mut expect = vec![e(0), e(2)];
    expect.sort_by(|u, v| u.0.cmp(&v.0));
    ensure(pts == expect, || format!("split: {b:?}"))?;
    Ok("[[e0,0],[e1,e2]] singular at [e0] only; [[e0,0],[0,e2]] at [e0] and [e2]".into())
}

fn tree_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3u32 {
        let lib = enumerate(n, DEFAULT_CHARGE_BOUND).map_err(|e| e.to_string())?;
        let ours: std::collections::BTreeSet<_> = lib.weighted.iter().map(brute_encoding).collect();
        ensure(ours.len() == lib.weighted.len(), || format!("n = {n}: duplicate classes"))?;
        let oracle = brute_trees(n, 2 * n as usize + 1);
        ensure(ours == oracle, || format!("n = {n}: {} vs oracle {}", ours.len(), oracle.len()))?;
        counts.push(ours.len());
    }
    ensure(counts[0] == 2 && counts[1] == 6, || format!("counts {counts:?}"))?;
    let two = enumerate(2, DEFAULT_CHARGE_BOUND).map_err(|e| e.to_string())?;
    for fam in [type1_family(), type2_family(2), type3_family()] {
        let d = tree_bundle_descriptor(&fam).map_err(|e| e.to_string())?;
        ensure(two.weighted.iter().any(|t| tree_iso(t, &d.tree)), || format!("{:?} tree missing", d.kind))?;
    }
    Ok(format!("counts {counts:?} match the exhaustive oracle; the three limit trees occur for n = 2"))
}

fn random_y(r: &mut ChaCha8Rng) -> Option<YPoint> {
    let any_psi = |r: &mut ChaCha8Rng| loop {
        let p = [vector(r), vector(r), vector(r)];
        if !triple::is_zero(&p) {
            return p;
        }
    };
    match r.gen_range(0..4) {
        0 => lift_to_y(&lift_to_xtilde(&pencil(r)).ok()?).ok(),
        1 => lift_to_y(&eg_point(r)?).ok(),
        2 => {
            // over the closure of G.Z_R: any psi
            let (x, y) = (nonzero_vector(r), nonzero_vector(r));
            let base = diag(x.clone(), y).act_right(&gl2(r));
            let phi = if base.phi().iter().all(CovecV::is_zero) {
                act_phi(&[CovecV::zero(), wedge(&x, &nonzero_vector(r)), CovecV::zero()], &gl2(r))
            } else {
                base.phi()
            };
            YPoint::new(XTildePoint::new(base, phi).ok()?, any_psi(r)).ok()
        }
        _ => {
            let x = nonzero_vector(r);
            let base = diag(x.clone(), x.clone()).act_right(&gl2(r));
            let phi = [wedge(&x, &nonzero_vector(r)), CovecV::zero(), CovecV::zero()];
            YPoint::new(XTildePoint::new(base, act_phi(&phi, &gl2(r))).ok()?, any_psi(r)).ok()
        }
    }
}

fn y_stability(r: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    let mut seen = std::collections::BTreeMap::new();
    while n < 200 {
        let Some(y) = random_y(r) else { continue };
        let v = stability_y(&y).map_err(|e| e.to_string())?;
        ensure(v != Stability::ProperlySemistable, || format!("point {n}: {y:?}"))?;
        let g = gl2(r);
        let w = stability_y(&y.act(&g)).map_err(|e| e.to_string())?;
        ensure(v == w, || format!("point {n}: {v:?} vs {w:?} after g"))?;
        *seen.entry(format!("{v:?}")).or_insert(0) += 1;
        n += 1;
    }
    ensure(seen.len() == 2, || format!("sweep missed a verdict: {seen:?}"))?;
    Ok(format!("200 points, never properly semistable, G-invariant ({seen:?})"))
}

fn main() {
    let start = Instant::now();
    let mut r = rng(0x5eed);
    let mut results: Vec<(&str, Outcome)> = vec![
        ("Pluecker relation", plucker_relation(&mut r)),
        ("equivariance", equivariance(&mut r)),
        ("dual-conic identity", dual_identity(&mut r)),
        ("stability vs weight oracle", weight_oracle(&mut r)),
        ("golden matrices", golden_transforms(&mut r)),
        ("degeneration classification", classification()),
        ("exceptional conic", exceptional_conic(&mut r)),
        ("singularity notice", singularity_notice()),
        ("tree enumeration", tree_counts()),
        ("Y-stability", y_stability(&mut r)),
    ];
    let dt = start.elapsed();
    results.push((
        "runtime",
        if dt < Duration::from_secs(60) {
            Ok(format!("acceptance run {:.2} s < 60 s", dt.as_secs_f64()))
        } else {
            Err(format!("acceptance run {:.2} s", dt.as_secs_f64()))
        },
    ));
    let mut failed = 0;
    for (k, (name, res)) in results.iter().enumerate() {
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
