//! Five-parameter local-unitary normal form
//! `λ0|000⟩ + λ1e^{iφ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩`.
//!
//! Party A rotates the slice pencil so that the new `C₀` is singular, i.e.
//! onto a root of `Det(xC₀ + yC₁) = 0`; B and C then diagonalize that
//! slice and diagonal phases make every coefficient but one real.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::scalar::{cone, czero, lit, principal_arg, tol, Cx, Real};
use crate::state::{apply_local, index, slices, LocalOperator, OperatorKind, PureState};
use crate::invariants::discriminant;
use crate::twistor::to_twistor;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalForm<T: Real> {
    /// `λ0 … λ4`, all nonnegative.
    pub lambdas: [T; 5],
    /// Phase on the `|100⟩` coefficient, in `[0, 2π)`.
    pub phase: T,
    /// Which root of the Schläfli quadratic (1 or 2, solver order).
    pub root_index: u8,
    /// Multiplicity of that root.
    pub multiplicity: u8,
    /// Homogeneous root `(x : y)`, unit length.
    pub root: [Cx<T>; 2],
    /// Local unitary taking the canonical state back to the input.
    pub transform: LocalOperator<T>,
    /// `‖transform·canonical − input‖ / √N`.
    pub residual: T,
    /// Phase of the twistor discriminant, recorded next to `phase` for comparison.
    pub discriminant_phase: T,
}

impl<T: Real> CanonicalForm<T> {
    pub fn state(&self) -> PureState<T> {
        canonical_state(&self.lambdas, self.phase)
    }
}

pub fn canonical_state<T: Real>(lambdas: &[T; 5], phase: T) -> PureState<T> {
    let r = |x: T| Cx::new(x, T::zero());
    let mut amps = [czero(); 8];
    amps[index(0, 0, 0)] = r(lambdas[0]);
    amps[index(1, 0, 0)] = Cx::from_polar(lambdas[1], phase);
    amps[index(1, 0, 1)] = r(lambdas[2]);
    amps[index(1, 1, 0)] = r(lambdas[3]);
    amps[index(1, 1, 1)] = r(lambdas[4]);
    PureState::new(amps).expect("finite lambdas")
}

/// Roots `(x : y)` of `a x² + b xy + c y²`, cancellation-free. `None`
/// when the form vanishes identically.
fn quadratic_roots<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, scale: T) -> Option<[[Cx<T>; 2]; 2]> {
    let tiny = tol::<T>(1e-14) * scale;
    if a.norm() <= tiny && b.norm() <= tiny && c.norm() <= tiny {
        return None;
    }
    let disc = b * b - a * c * lit::<T>(4.0);
    let mut root = disc.sqrt();
    if (b.conj() * root).re < T::zero() {
        root = -root;
    }
    let q = (b + root) * lit::<T>(-0.5);
    if q.norm() > T::zero() {
        return Some([[q, a], [c, q]]);
    }
    // b = 0 and ac = 0: a single double root
    let r = if a.norm() >= c.norm() { [czero(), cone()] } else { [cone(), czero()] };
    Some([r, r])
}

fn unit2<T: Real>(v: [Cx<T>; 2]) -> [Cx<T>; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Unitary with first row `(x, y)` and determinant one.
fn row_unitary<T: Real>(r: [Cx<T>; 2]) -> Mat2<T> {
    [[r[0], r[1]], [-r[1].conj(), r[0].conj()]]
}

/// Complete the left singular vectors of a 2×2 SVD to a unitary.
fn complete<T: Real>(u: &Mat2<T>) -> Mat2<T> {
    let c0 = [u[0][0], u[1][0]];
    if c0[0].norm_sqr() + c0[1].norm_sqr() == T::zero() {
        return linalg::identity();
    }
    let c1 = [u[0][1], u[1][1]];
    if c1[0].norm_sqr() + c1[1].norm_sqr() > T::zero() {
        return *u;
    }
    [[c0[0], -c0[1].conj()], [c0[1], c0[0].conj()]]
}

fn diag<T: Real>(p: T, q: T) -> Mat2<T> {
    [[Cx::from_polar(T::one(), p), czero()], [czero(), Cx::from_polar(T::one(), q)]]
}

fn form_for_root<T: Real>(state: &PureState<T>, xy: [Cx<T>; 2], root_index: u8, multiplicity: u8) -> Result<CanonicalForm<T>> {
    let xy = unit2(xy);
    let ua = row_unitary(xy);
    let unit = LocalOperator::new([ua, linalg::identity(), linalg::identity()], [OperatorKind::Unitary; 3])?;
    let rotated = apply_local(state, &unit);
    let c0 = slices(&rotated).c0;
    let sv = linalg::svd(&c0);
    let ub = linalg::adjoint(&complete(&sv.u));
    let uc = linalg::transpose(&sv.v);
    let aligned = apply_local(
        state,
        &LocalOperator::new([ua, ub, uc], [OperatorKind::Unitary; 3])?,
    );

    // Phase bookkeeping: amplitude (a,b,c) picks up a_a + b_b + c_c with
    // a0 = b0 = c0 = 0; λ0 is already real and nonnegative.
    let e = |a, b, c| aligned.amp(a, b, c);
    let arg = |z: Cx<T>| principal_arg(z);
    let th = tol::<T>(1e-14) * state.norm_sq().sqrt();
    let zero = |z: Cx<T>| z.norm() <= th;
    let (e100, e101, e110, e111) = (e(1, 0, 0), e(1, 0, 1), e(1, 1, 0), e(1, 1, 1));
    let (a1, b1, c1) = if zero(e111) {
        let a1 = -arg(e100);
        (a1, -arg(e110) - a1, -arg(e101) - a1)
    } else if zero(e101) {
        let a1 = -arg(e100);
        let b1 = -arg(e110) - a1;
        (a1, b1, -arg(e111) - a1 - b1)
    } else if zero(e110) {
        let a1 = -arg(e100);
        let c1 = -arg(e101) - a1;
        (a1, -arg(e111) - a1 - c1, c1)
    } else {
        let a1 = arg(e111) - arg(e110) - arg(e101);
        (a1, -arg(e110) - a1, -arg(e101) - a1)
    };
    let z = T::zero();
    let phases = [diag(z, a1), diag(z, b1), diag(z, c1)];
    let full = LocalOperator::new(
        [
            linalg::matmul(&phases[0], &ua),
            linalg::matmul(&phases[1], &ub),
            linalg::matmul(&phases[2], &uc),
        ],
        [OperatorKind::Unitary; 3],
    )?;
    let chi = apply_local(state, &full);
    let lambdas = [
        chi.amp(0, 0, 0).norm(),
        chi.amp(1, 0, 0).norm(),
        chi.amp(1, 0, 1).norm(),
        chi.amp(1, 1, 0).norm(),
        chi.amp(1, 1, 1).norm(),
    ];
    let two_pi = T::PI() + T::PI();
    let phase = if zero(chi.amp(1, 0, 0)) {
        z
    } else {
        let p = arg(chi.amp(1, 0, 0));
        let p = if p < z { p + two_pi } else { p };
        // −0.0…01 + 2π rounds to 2π
        if p >= two_pi {
            z
        } else {
            p
        }
    };
    let transform = full.adjoint();
    let rebuilt = apply_local(&canonical_state(&lambdas, phase), &transform);
    let residual = rebuilt.distance(state) / state.norm_sq().sqrt();
    Ok(CanonicalForm {
        lambdas,
        phase,
        root_index,
        multiplicity,
        root: xy,
        transform,
        residual,
        discriminant_phase: principal_arg(discriminant(&to_twistor(state))),
    })
}

/// Canonical forms of a non-null state: two when `τ_ABC > tol` (one per
/// root of the Schläfli quadratic), otherwise one with multiplicity 2.
/// Ordered by descending λ0, ties broken by descending λ4.
pub fn acin_canonical<T: Real>(state: &PureState<T>, tau_tol: T) -> Result<Vec<CanonicalForm<T>>> {
    if state.is_null() {
        return Err(Error::NullState);
    }
    let n = state.norm_sq();
    let s = slices(state);
    let a = linalg::det2(&s.c0);
    let c = linalg::det2(&s.c1);
    let b = linalg::trace(&linalg::matmul(&linalg::adjugate2(&s.c0), &s.c1));
    let tau = discriminant(&to_twistor(state)).norm() * lit::<T>(4.0) / (n * n);

    let Some(roots) = quadratic_roots(a, b, c, n) else {
        // every slice combination singular: rotate the dominant combination
        // into C₀
        let m: linalg::MatRC<T, 2, 4> = [
            [s.c0[0][0], s.c0[0][1], s.c0[1][0], s.c0[1][1]],
            [s.c1[0][0], s.c1[0][1], s.c1[1][0], s.c1[1][1]],
        ];
        let g = linalg::matmul(&m, &linalg::adjoint(&m));
        let top = linalg::hermitian_eigen(&g).vectors;
        let xy = [top[0][0].conj(), top[1][0].conj()];
        return Ok(vec![form_for_root(state, xy, 1, 2)?]);
    };

    let mut forms = if tau > tau_tol {
        vec![form_for_root(state, roots[0], 1, 1)?, form_for_root(state, roots[1], 2, 1)?]
    } else {
        // at a true double root √disc is pure roundoff, so the root is only
        // good to √ε; the midpoint −b/2 is exact there
        let half = b * lit::<T>(-0.5);
        let mid = if a.norm() >= c.norm() { [half, a] } else { [c, half] };
        let near = form_for_root(state, roots[0], 1, 2)?;
        let exact = form_for_root(state, mid, 1, 2)?;
        vec![if exact.residual <= near.residual { exact } else { near }]
    };
    let eps = tol::<T>(1e-12) * n.sqrt();
    forms.sort_by(|p, q| {
        let key = |f: &CanonicalForm<T>| (f.lambdas[0], f.lambdas[4]);
        let (p0, p4) = key(p);
        let (q0, q4) = key(q);
        if (p0 - q0).abs() > eps {
            q0.partial_cmp(&p0).unwrap()
        } else {
            q4.partial_cmp(&p4).unwrap_or(core::cmp::Ordering::Equal)
        }
    });
    Ok(forms)
}
