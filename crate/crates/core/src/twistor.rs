//! Magic-basis correspondence between the A-slices of a state and the
//! twistor pair `(Z, W)`, plus the `GL(2,ℂ)` gauge action of party A.
//!
//! `C_{0bc} = Z^μ (E_μ)_{bc} / √2` and `C_{1bc} = W^μ (E_μ)_{bc} / √2` with
//! `E_k = −iσ_k` (k = 1, 2, 3) and `E_4 = I`. The Eₘ are trace-orthogonal,
//! `Tr(E_μ E_ν†) = 2δ_μν`, which gives the inverse `Z^ν = Tr(C₀E_ν†)/√2`.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2, Mat4, MatRC, Vec4};
use crate::scalar::{ci, cone, czero, lit, tol, Cx, Real};
use crate::state::{slices, PureState, SlicePair};

/// The four magic-basis matrices `E₁, E₂, E₃, E₄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagicBasis<T: Real> {
    pub e: [Mat2<T>; 4],
}

impl<T: Real> Default for MagicBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> MagicBasis<T> {
    pub fn new() -> Self {
        let o = cone::<T>();
        let z = czero::<T>();
        let i = ci::<T>();
        Self {
            e: [
                // −iσ₁
                [[z, -i], [-i, z]],
                // −iσ₂
                [[z, -o], [o, z]],
                // −iσ₃
                [[-i, z], [z, i]],
                [[o, z], [z, o]],
            ],
        }
    }

    /// Unitary `M` with `vec(C)_{2b+c} = Σ_μ M_{(2b+c),μ} Z^μ` when
    /// `C = Z^μE_μ/√2`; columns are `vec(E_μ)/√2`.
    pub fn change_of_basis(&self) -> Mat4<T> {
        let r = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
        let mut m = linalg::zeros::<T, 4, 4>();
        for (mu, e) in self.e.iter().enumerate() {
            for b in 0..2 {
                for c in 0..2 {
                    m[2 * b + c][mu] = e[b][c] * r;
                }
            }
        }
        m
    }
}

/// The two complex 4-vectors extracted from the A-slices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistorPair<T: Real> {
    pub z: Vec4<T>,
    pub w: Vec4<T>,
}

impl<T: Real> TwistorPair<T> {
    pub fn new(z: Vec4<T>, w: Vec4<T>) -> Self {
        Self { z, w }
    }

    /// `‖Z‖² + ‖W‖²`, equal to the norm of the source state.
    pub fn norm_sq(&self) -> T {
        linalg::norm_sq(&self.z) + linalg::norm_sq(&self.w)
    }

    /// 4×2 matrix with columns `Z`, `W`.
    pub fn stack(&self) -> MatRC<T, 4, 2> {
        core::array::from_fn(|m| [self.z[m], self.w[m]])
    }

    /// Whether `Z` and `W` are linearly dependent: the smaller singular value
    /// of the stack is below `1e-10` of the larger one.
    pub fn is_degenerate(&self) -> bool {
        let s = linalg::svd(&self.stack()).values;
        s[0] == T::zero() || s[1] <= tol::<T>(1e-10) * s[0]
    }

    /// `ρ_BC` in the magic basis: `Z^μ conj(Z^ν) + W^μ conj(W^ν)`.
    pub fn magic_rho_bc(&self) -> Mat4<T> {
        core::array::from_fn(|m| core::array::from_fn(|n| self.z[m] * self.z[n].conj() + self.w[m] * self.w[n].conj()))
    }
}

fn components<T: Real>(basis: &MagicBasis<T>, c: &Mat2<T>) -> Vec4<T> {
    let r = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
    core::array::from_fn(|nu| {
        let e = &basis.e[nu];
        let mut acc = czero();
        for b in 0..2 {
            for k in 0..2 {
                acc += c[b][k] * e[b][k].conj();
            }
        }
        acc * r
    })
}

fn assemble<T: Real>(basis: &MagicBasis<T>, v: &Vec4<T>) -> Mat2<T> {
    let r = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let mut out = linalg::zeros::<T, 2, 2>();
    for (mu, e) in basis.e.iter().enumerate() {
        out = linalg::add(&out, &linalg::scale(e, v[mu] * r));
    }
    out
}

pub fn to_twistor<T: Real>(state: &PureState<T>) -> TwistorPair<T> {
    let basis = MagicBasis::new();
    let s = slices(state);
    TwistorPair {
        z: components(&basis, &s.c0),
        w: components(&basis, &s.c1),
    }
}

pub fn from_twistor<T: Real>(pair: &TwistorPair<T>) -> PureState<T> {
    let basis = MagicBasis::new();
    SlicePair {
        c0: assemble(&basis, &pair.z),
        c1: assemble(&basis, &pair.w),
    }
    .to_state()
}

/// `x·y = Σ x^μ y^μ`, no conjugation.
pub fn bilinear_dot<T: Real>(x: &Vec4<T>, y: &Vec4<T>) -> Cx<T> {
    x.iter().zip(y.iter()).fold(czero(), |acc, (a, b)| acc + *a * *b)
}

/// `⟨x|y⟩ = Σ conj(x^μ) y^μ`.
pub fn hermitian_dot<T: Real>(x: &Vec4<T>, y: &Vec4<T>) -> Cx<T> {
    x.iter().zip(y.iter()).fold(czero(), |acc, (a, b)| acc + a.conj() * *b)
}

/// `Det ρ_A = ‖Z‖²‖W‖² − |⟨Z|W⟩|²`.
pub fn det_rho_a<T: Real>(pair: &TwistorPair<T>) -> T {
    let zz = linalg::norm_sq(&pair.z);
    let ww = linalg::norm_sq(&pair.w);
    zz * ww - hermitian_dot(&pair.z, &pair.w).norm_sqr()
}

/// Element `[[α, β], [γ, δ]]` of `GL(2,ℂ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeElement<T: Real> {
    m: Mat2<T>,
}

impl<T: Real> GaugeElement<T> {
    pub fn new(m: Mat2<T>) -> Result<Self> {
        if linalg::det2(&m).norm() <= tol::<T>(1e-12) * linalg::frobenius_sq(&m) {
            return Err(Error::SingularGauge);
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    /// `αδ − βγ`.
    pub fn det(&self) -> Cx<T> {
        linalg::det2(&self.m)
    }
}

/// `Z' = αZ + βW`, `W' = γZ + δW`.
pub fn gauge_act<T: Real>(g: &GaugeElement<T>, pair: &TwistorPair<T>) -> TwistorPair<T> {
    let [[a, b], [c, d]] = g.m;
    TwistorPair {
        z: core::array::from_fn(|m| a * pair.z[m] + b * pair.w[m]),
        w: core::array::from_fn(|m| c * pair.z[m] + d * pair.w[m]),
    }
}
