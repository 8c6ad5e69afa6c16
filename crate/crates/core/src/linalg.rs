//! Fixed-size complex matrix kernels.
//!
//! Everything here operates on stack arrays `[[Cx<T>; C]; R]` (row major).
//! Dimensions never exceed 4, so the routines favour accuracy over speed:
//! cyclic Jacobi for Hermitian eigenproblems and one-sided (Hestenes)
//! Jacobi for singular values, both of which resolve small eigen/singular
//! values to full absolute precision.

use crate::scalar::{cone, czero, Cx, Real};

pub type MatRC<T, const R: usize, const C: usize> = [[Cx<T>; C]; R];
pub type Mat<T, const N: usize> = MatRC<T, N, N>;
pub type Mat2<T> = Mat<T, 2>;
pub type Mat4<T> = Mat<T, 4>;
pub type Vec4<T> = [Cx<T>; 4];

pub fn zeros<T: Real, const R: usize, const C: usize>() -> MatRC<T, R, C> {
    [[czero(); C]; R]
}

pub fn identity<T: Real, const N: usize>() -> Mat<T, N> {
    let mut m = zeros::<T, N, N>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = cone();
    }
    m
}

pub fn matmul<T: Real, const R: usize, const K: usize, const C: usize>(
    a: &MatRC<T, R, K>,
    b: &MatRC<T, K, C>,
) -> MatRC<T, R, C> {
    let mut out = zeros::<T, R, C>();
    for i in 0..R {
        for k in 0..K {
            let aik = a[i][k];
            if aik.re == T::zero() && aik.im == T::zero() {
                continue;
            }
            for j in 0..C {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec<T: Real, const R: usize, const C: usize>(
    a: &MatRC<T, R, C>,
    x: &[Cx<T>; C],
) -> [Cx<T>; R] {
    let mut out = [czero(); R];
    for i in 0..R {
        for j in 0..C {
            out[i] += a[i][j] * x[j];
        }
    }
    out
}

pub fn adjoint<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> MatRC<T, C, R> {
    let mut out = zeros::<T, C, R>();
    for i in 0..R {
        for j in 0..C {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn transpose<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> MatRC<T, C, R> {
    let mut out = zeros::<T, C, R>();
    for i in 0..R {
        for j in 0..C {
            out[j][i] = a[i][j];
        }
    }
    out
}

pub fn conjugate<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> MatRC<T, R, C> {
    let mut out = *a;
    for row in out.iter_mut() {
        for z in row.iter_mut() {
            *z = z.conj();
        }
    }
    out
}

pub fn scale<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>, s: Cx<T>) -> MatRC<T, R, C> {
    let mut out = *a;
    for row in out.iter_mut() {
        for z in row.iter_mut() {
            *z *= s;
        }
    }
    out
}

pub fn add<T: Real, const R: usize, const C: usize>(
    a: &MatRC<T, R, C>,
    b: &MatRC<T, R, C>,
) -> MatRC<T, R, C> {
    let mut out = *a;
    for i in 0..R {
        for j in 0..C {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn sub<T: Real, const R: usize, const C: usize>(
    a: &MatRC<T, R, C>,
    b: &MatRC<T, R, C>,
) -> MatRC<T, R, C> {
    let mut out = *a;
    for i in 0..R {
        for j in 0..C {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn trace<T: Real, const N: usize>(a: &Mat<T, N>) -> Cx<T> {
    (0..N).fold(czero(), |acc, i| acc + a[i][i])
}

pub fn det2<T: Real>(a: &Mat2<T>) -> Cx<T> {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Adjugate `Det(M) M^{-1}`, defined for singular `M` as well.
pub fn adjugate2<T: Real>(a: &Mat2<T>) -> Mat2<T> {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

/// Determinant by Laplace expansion; only used for N ≤ 4 and in checks.
pub fn det4<T: Real>(a: &Mat4<T>) -> Cx<T> {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    // expansion along the first two rows
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let sign = [1.0, -1.0, 1.0, 1.0, -1.0, 1.0];
    let mut acc = czero();
    for (k, &(c0, c1)) in pairs.iter().enumerate() {
        let (d0, d1) = pairs[5 - k];
        let term = minor(0, 1, c0, c1) * minor(2, 3, d0, d1);
        if sign[k] > 0.0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn frobenius_sq<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> T {
    a.iter().flatten().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

pub fn max_abs<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> T {
    a.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
}

/// `max |a_ij - conj(a_ji)|`.
pub fn hermiticity_defect<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

pub fn norm_sq<T: Real, const N: usize>(x: &[Cx<T>; N]) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// Jacobi rotation annihilating the off-diagonal entry of the Hermitian
/// block `[[app, apq], [conj(apq), aqq]]`.
///
/// Returns `(c, s, phase)` for `J = [[c, s], [-s·phase, c·phase]]` acting on
/// columns `(p, q)`, with `phase = e^{-i arg apq}`.
fn rotation<T: Real>(app: T, aqq: T, apq: Cx<T>) -> (T, T, Cx<T>) {
    let r = apq.norm();
    let phase = apq.conj() / r;
    let two = T::one() + T::one();
    let zeta = (aqq - app) / (two * r);
    let t = if zeta >= T::zero() {
        T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
    } else {
        -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, t * c, phase)
}

/// `A ← A J` on columns `p, q`.
fn rotate_columns<T: Real, const R: usize, const C: usize>(
    a: &mut MatRC<T, R, C>,
    p: usize,
    q: usize,
    (c, s, phase): (T, T, Cx<T>),
) {
    for row in a.iter_mut() {
        let ap = row[p];
        let aq = row[q] * phase;
        row[p] = ap * c - aq * s;
        row[q] = ap * s + aq * c;
    }
}

/// `A ← J† A` on rows `p, q`.
fn rotate_rows<T: Real, const N: usize>(a: &mut Mat<T, N>, p: usize, q: usize, (c, s, phase): (T, T, Cx<T>)) {
    let ph = phase.conj();
    for j in 0..N {
        let ap = a[p][j];
        let aq = a[q][j] * ph;
        a[p][j] = ap * c - aq * s;
        a[q][j] = ap * s + aq * c;
    }
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<T: Real, const N: usize> {
    /// Eigenvalues in descending order.
    pub values: [T; N],
    /// Eigenvectors stored as columns, matching `values`.
    pub vectors: Mat<T, N>,
}

pub fn hermitian_eigen<T: Real, const N: usize>(a: &Mat<T, N>) -> HermitianEigen<T, N> {
    let mut m = *a;
    // exact Hermitian symmetrization of the input
    for i in 0..N {
        m[i][i] = Cx::new(m[i][i].re, T::zero());
        for j in (i + 1)..N {
            let half = T::one() / (T::one() + T::one());
            let avg = (m[i][j] + m[j][i].conj()) * half;
            m[i][j] = avg;
            m[j][i] = avg.conj();
        }
    }
    let mut v = identity::<T, N>();
    let scale = frobenius_sq(&m).sqrt();
    let eps = T::epsilon();
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..N {
            for q in (p + 1)..N {
                off += m[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= eps * eps.sqrt() * scale || off == T::zero() {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = m[p][q];
                if apq.norm() <= eps * eps * scale {
                    continue;
                }
                let rot = rotation(m[p][p].re, m[q][q].re, apq);
                rotate_columns(&mut m, p, q, rot);
                rotate_rows(&mut m, p, q, rot);
                m[p][q] = czero();
                m[q][p] = czero();
                m[p][p].im = T::zero();
                m[q][q].im = T::zero();
                rotate_columns(&mut v, p, q, rot);
            }
        }
    }
    let mut order: [usize; N] = core::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[j][j].re.partial_cmp(&m[i][i].re).unwrap_or(core::cmp::Ordering::Equal));
    let values = core::array::from_fn(|k| m[order[k]][order[k]].re);
    let mut vectors = zeros::<T, N, N>();
    for (k, &src) in order.iter().enumerate() {
        for i in 0..N {
            vectors[i][k] = v[i][src];
        }
    }
    HermitianEigen { values, vectors }
}

/// Singular value decomposition `A = U Σ V†`.
#[derive(Clone, Copy, Debug)]
pub struct Svd<T: Real, const R: usize, const C: usize> {
    /// Singular values in descending order (length `C`; trailing entries are
    /// zero when `C > R`).
    pub values: [T; C],
    /// Left singular vectors as columns; a column is zero where the singular
    /// value vanishes exactly.
    pub u: MatRC<T, R, C>,
    /// Right singular vectors as columns (unitary).
    pub v: Mat<T, C>,
}

/// One-sided Jacobi SVD.
pub fn svd<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>) -> Svd<T, R, C> {
    let mut w = *a;
    let mut v = identity::<T, C>();
    let eps = T::epsilon();
    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..C {
            for q in (p + 1)..C {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = czero::<T>();
                for row in w.iter() {
                    alpha += row[p].norm_sqr();
                    beta += row[q].norm_sqr();
                    gamma += row[p].conj() * row[q];
                }
                if gamma.norm() <= eps * (alpha * beta).sqrt() || gamma.norm() == T::zero() {
                    continue;
                }
                rotated = true;
                let rot = rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, rot);
                rotate_columns(&mut v, p, q, rot);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: [T; C] = core::array::from_fn(|j| w.iter().fold(T::zero(), |acc, r| acc + r[j].norm_sqr()).sqrt());
    let mut order: [usize; C] = core::array::from_fn(|i| i);
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(core::cmp::Ordering::Equal));
    let values = core::array::from_fn(|k| norms[order[k]]);
    let mut u = zeros::<T, R, C>();
    let mut vs = zeros::<T, C, C>();
    for (k, &src) in order.iter().enumerate() {
        let n = norms[src];
        for i in 0..R {
            u[i][k] = if n > T::zero() { w[i][src] / n } else { czero() };
        }
        for i in 0..C {
            vs[i][k] = v[i][src];
        }
    }
    Svd { values, u, v: vs }
}

/// Numerical rank: singular values above `rel · σ_max`.
pub fn rank<T: Real, const R: usize, const C: usize>(a: &MatRC<T, R, C>, rel: T) -> usize {
    let s = svd(a).values;
    if s[0] == T::zero() {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * s[0]).count()
}

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues below `floor · λ_max` are treated as zero.
pub fn psd_sqrt<T: Real, const N: usize>(a: &Mat<T, N>, floor: T) -> Mat<T, N> {
    let eig = hermitian_eigen(a);
    let top = eig.values[0].max(T::zero());
    let mut out = zeros::<T, N, N>();
    for k in 0..N {
        let lam = eig.values[k];
        if lam <= floor * top || lam <= T::zero() {
            continue;
        }
        let r = lam.sqrt();
        for i in 0..N {
            for j in 0..N {
                out[i][j] += eig.vectors[i][k] * eig.vectors[j][k].conj() * r;
            }
        }
    }
    out
}
