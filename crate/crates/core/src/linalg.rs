//! Dense exact linear algebra over any [`Field`].

use crate::ring::{Field, Ring};

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Basis of the right null space `{v : M v = 0}`, one vector per free
/// column, in reduced form.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Left null space `{c : cᵀ M = 0}`.
pub fn left_kernel<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let t: Vec<Vec<F>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    kernel(&t, rows)
}

/// Canonical basis of the row span (nonzero rows of the RREF).
pub fn row_space<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut r = m.to_vec();
    let k = rref(&mut r).len();
    r.truncate(k);
    r
}

pub fn same_row_space<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    row_space(a) == row_space(b)
}

pub fn det3<R: Ring>(m: &[[R; 3]; 3]) -> R {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// Classical adjugate (transpose of the cofactor matrix).
pub fn adjugate3<R: Ring>(m: &[[R; 3]; 3]) -> [[R; 3]; 3] {
    let c = |i: usize, j: usize| m[i][j].clone();
    let cof = |i: usize, j: usize| {
        let (r0, r1) = [(1, 2), (0, 2), (0, 1)][i];
        let (c0, c1) = [(1, 2), (0, 2), (0, 1)][j];
        let minor = c(r0, c0) * c(r1, c1) - c(r0, c1) * c(r1, c0);
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

/// Inverse of an invertible 3×3 matrix.
pub fn inverse3<F: Field>(m: &[[F; 3]; 3]) -> Option<[[F; 3]; 3]> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    let inv = d.inv();
    let adj = adjugate3(m);
    Some(adj.map(|row| row.map(|x| x * inv.clone())))
}

pub fn mat3_mul<R: Ring>(a: &[[R; 3]; 3], b: &[[R; 3]; 3]) -> [[R; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(R::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

/// Projective equality of two coordinate lists: `a = λ b` for some λ ≠ 0.
pub fn proj_eq<F: Field>(a: &[F], b: &[F]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Ring::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let lambda = a[i].div(&b[i]);
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == y.clone() * lambda.clone())
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_first<F: Field>(v: &[F]) -> Vec<F> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(p) => {
            let inv = p.inv();
            v.iter().map(|x| x.clone() * inv.clone()).collect()
        }
    }
}
