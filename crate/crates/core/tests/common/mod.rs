#![allow(dead_code)]

use kirwan_core::degeneration::PencilFamily;
use kirwan_core::exact_linear::{wedge, CovecV, VecV};
use kirwan_core::kirwan_strata::XTildePoint;
use kirwan_core::pencil::{Mat2, PencilMatrix};
use kirwan_core::ring::{Field, Ring};
use kirwan_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

pub fn e(i: usize) -> VecV {
    VecV::basis(i)
}

pub fn z(a: i64, b: i64, c: i64) -> CovecV {
    CovecV::new(s(a), s(b), s(c))
}

pub fn v(a: i64, b: i64, c: i64) -> VecV {
    VecV::new(s(a), s(b), s(c))
}

pub fn scalar(r: &mut ChaCha8Rng) -> Scalar {
    let p = r.gen_range(-4..=4);
    if r.gen_bool(0.2) {
        Scalar::frac(p, r.gen_range(1..=3))
    } else {
        s(p)
    }
}

pub fn nonzero_scalar(r: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = scalar(r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn vector(r: &mut ChaCha8Rng) -> VecV {
    VecV::new(scalar(r), scalar(r), scalar(r))
}

pub fn nonzero_vector(r: &mut ChaCha8Rng) -> VecV {
    loop {
        let x = vector(r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn pencil(r: &mut ChaCha8Rng) -> PencilMatrix {
    loop {
        let a = PencilMatrix::new(vector(r), vector(r), vector(r), vector(r));
        if a.rows_independent() {
            return a;
        }
    }
}

/// Random pencil off `Z_G`.
pub fn pencil_off_zg(r: &mut ChaCha8Rng) -> PencilMatrix {
    loop {
        let a = pencil(r);
        if !a.phi().iter().all(CovecV::is_zero) {
            return a;
        }
    }
}

pub fn gl2(r: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let g = [[scalar(r), scalar(r)], [scalar(r), scalar(r)]];
        let det = g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone();
        if !det.is_zero() {
            return g;
        }
    }
}

pub fn sl2(r: &mut ChaCha8Rng) -> Mat2 {
    let (a, b, c) = (scalar(r), scalar(r), nonzero_scalar(r));
    let upper = [[s(1), a], [s(0), s(1)]];
    let lower = [[s(1), s(0)], [b, s(1)]];
    let d = [[c.clone(), s(0)], [s(0), c.inv()]];
    mul2(&mul2(&upper, &lower), &d)
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()))
}

pub fn gl3(r: &mut ChaCha8Rng) -> [[Scalar; 3]; 3] {
    loop {
        let m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| scalar(r)));
        if !kirwan_core::linalg::det3(&m).is_zero() {
            return m;
        }
    }
}

pub fn diag(x: VecV, y: VecV) -> PencilMatrix {
    PencilMatrix::new(x, VecV::zero(), VecV::zero(), y)
}

/// Random point of the exceptional divisor over `Z_G`:
/// `([x ⊗ h], [x∧u, x∧w, x∧v])`.
pub fn eg_point(r: &mut ChaCha8Rng) -> Option<XTildePoint> {
    let x = nonzero_vector(r);
    let base = diag(x.clone(), x.clone()).act_right(&gl2(r));
    let phi = [wedge(&x, &vector(r)), wedge(&x, &vector(r)), wedge(&x, &vector(r))];
    XTildePoint::new(base, phi).ok()
}

/// `A₀ + t·A₁ + …`
pub fn family(coeffs: &[PencilMatrix]) -> PencilFamily {
    PencilFamily::from_coeffs(coeffs)
}

pub fn zero_pencil() -> PencilMatrix {
    PencilMatrix::new(VecV::zero(), VecV::zero(), VecV::zero(), VecV::zero())
}

/// `A₀ + t^k·A₁`
pub fn family_power(a0: PencilMatrix, k: usize, a1: PencilMatrix) -> PencilFamily {
    let mut coeffs = vec![a0];
    coeffs.resize(k, zero_pencil());
    coeffs.push(a1);
    family(&coeffs)
}

/// `[[e0, t·e1], [t·e2, e0]]`
pub fn type1_family() -> PencilFamily {
    family(&[diag(e(0), e(0)), PencilMatrix::new(VecV::zero(), e(1), e(2), VecV::zero())])
}

/// `[[e0, −t^k·e1], [−t^k·e1, e2]]`
pub fn type2_family(k: usize) -> PencilFamily {
    family_power(diag(e(0), e(2)), k, PencilMatrix::new(VecV::zero(), -e(1), -e(1), VecV::zero()))
}

/// `[[e0, −t³·e1], [−t³·e1, e0 + t·e2]]`
pub fn type3_family() -> PencilFamily {
    let mut coeffs = vec![diag(e(0), e(0)), diag(VecV::zero(), e(2)), zero_pencil()];
    coeffs.push(PencilMatrix::new(VecV::zero(), -e(1), -e(1), VecV::zero()));
    family(&coeffs)
}

/// `[[e0, −t·a·e1], [t·b·e2, −e0]]`
pub fn first_example_family(a: &Scalar, b: &Scalar) -> PencilFamily {
    family(&[
        diag(e(0), -e(0)),
        PencilMatrix::new(VecV::zero(), -e(1).scale(a), e(2).scale(b), VecV::zero()),
    ])
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Smallest relabelling of a rooted tree (root at 0, `parent[0]` ignored)
/// over all permutations fixing the root.
pub fn brute_canonical(parent: &[usize], charge: &[u32]) -> Vec<(usize, u32)> {
    let n = parent.len();
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            let sigma: Vec<usize> = std::iter::once(0).chain(p.iter().map(|i| i + 1)).collect();
            let mut out = vec![(0, 0); n];
            for old in 0..n {
                let par = if old == 0 { 0 } else { sigma[parent[old]] };
                out[sigma[old]] = (par, charge[old]);
            }
            out
        })
        .min()
        .expect("at least one permutation")
}

fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Weighted trees of total charge `n` with at most `max_vertices`
/// vertices, found by running through every parent array
/// (`parent[i] < i`) and every charge assignment.
pub fn brute_trees(n: u32, max_vertices: usize) -> std::collections::BTreeSet<Vec<(usize, u32)>> {
    let mut out = std::collections::BTreeSet::new();
    for size in 1..=max_vertices {
        let mut parents = vec![vec![0usize]];
        for i in 1..size {
            parents = parents
                .into_iter()
                .flat_map(|p| {
                    (0..i).map(move |q| {
                        let mut p = p.clone();
                        p.push(q);
                        p
                    })
                })
                .collect();
        }
        for parent in &parents {
            let mut kids = vec![0usize; size];
            for &q in &parent[1..] {
                kids[q] += 1;
            }
            for charge in compositions(n, size) {
                let ok = (1..size).all(|v| charge[v] > 0 || kids[v] >= 2);
                if ok {
                    out.insert(brute_canonical(parent, &charge));
                }
            }
        }
    }
    out
}

/// The same encoding for a tree produced by the library.
pub fn brute_encoding(t: &kirwan_core::trees::WeightedTree) -> Vec<(usize, u32)> {
    let root = t.root().expect("rooted").to_string();
    let mut order = vec![root.clone()];
    order.extend(t.vertices.iter().filter(|v| **v != root).cloned());
    let index = |v: &str| order.iter().position(|w| w == v).expect("known vertex");
    let parent: Vec<usize> = order.iter().map(|v| t.parent.get(v).map_or(0, |p| index(p))).collect();
    let charge: Vec<u32> = order.iter().map(|v| t.charge[v]).collect();
    brute_canonical(&parent, &charge)
}
