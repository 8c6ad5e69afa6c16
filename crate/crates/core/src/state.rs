//! Amplitude-level representation of three-qubit pure states.
//!
//! Amplitudes are indexed `abc` in binary order `000, 001, …, 111` with `a`
//! the most significant bit (party A), `b` party B and `c` party C. States
//! are never normalized implicitly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2, Mat4};
use crate::scalar::{cone, czero, lit, tol, Cx, Real};

/// Flat amplitude index of `|abc⟩`.
#[inline]
pub const fn index(a: usize, b: usize, c: usize) -> usize {
    (a << 2) | (b << 1) | c
}

/// Unnormalized three-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState<T: Real> {
    amps: [Cx<T>; 8],
}

impl<T: Real> PureState<T> {
    /// Builds a state from eight finite amplitudes.
    pub fn new(amps: [Cx<T>; 8]) -> Result<Self> {
        if let Some(index) = amps.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { amps })
    }

    pub fn zero() -> Self {
        Self { amps: [czero(); 8] }
    }

    /// Computational basis state `|abc⟩` given its flat index.
    pub fn basis(idx: usize) -> Self {
        let mut s = Self::zero();
        s.amps[idx] = cone();
        s
    }

    /// `α|000⟩ + β|111⟩`.
    pub fn ghz(alpha: Cx<T>, beta: Cx<T>) -> Self {
        let mut s = Self::zero();
        s.amps[0] = alpha;
        s.amps[7] = beta;
        s
    }

    /// `α|100⟩ + β|010⟩ + γ|001⟩`.
    pub fn w(alpha: Cx<T>, beta: Cx<T>, gamma: Cx<T>) -> Self {
        let mut s = Self::zero();
        s.amps[index(1, 0, 0)] = alpha;
        s.amps[index(0, 1, 0)] = beta;
        s.amps[index(0, 0, 1)] = gamma;
        s
    }

    pub fn amplitudes(&self) -> &[Cx<T>; 8] {
        &self.amps
    }

    #[inline]
    pub fn amp(&self, a: usize, b: usize, c: usize) -> Cx<T> {
        self.amps[index(a, b, c)]
    }

    /// Squared norm `N = ⟨ψ|ψ⟩`.
    pub fn norm_sq(&self) -> T {
        linalg::norm_sq(&self.amps)
    }

    /// True when every amplitude is exactly zero.
    pub fn is_null(&self) -> bool {
        self.amps.iter().all(|z| z.re == T::zero() && z.im == T::zero())
    }

    pub fn scaled(&self, s: Cx<T>) -> Self {
        Self {
            amps: self.amps.map(|z| z * s),
        }
    }

    /// Copy rescaled to unit norm; `None` for the null state.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n <= T::zero() || !n.is_normal() {
            return None;
        }
        Some(self.scaled(Cx::new(T::one() / n.sqrt(), T::zero())))
    }

    /// Euclidean distance to another state.
    pub fn distance(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(T::zero(), |acc, (a, b)| acc + (*a - *b).norm_sqr())
            .sqrt()
    }

    /// Permutes the parties: `out_{x0 x1 x2} = in_{abc}` where `perm[k]` is
    /// the input party placed in output slot `k`.
    pub fn permute_parties(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            let bits = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
            let j = index(bits[perm[0]], bits[perm[1]], bits[perm[2]]);
            out.amps[j] = self.amps[i];
        }
        out
    }
}

/// Validating constructor from any slice of amplitudes.
pub fn state_from_amplitudes<T: Real>(raw: &[Cx<T>]) -> Result<PureState<T>> {
    let amps: [Cx<T>; 8] = raw.try_into().map_err(|_| Error::WrongLength {
        expected: 8,
        found: raw.len(),
    })?;
    PureState::new(amps)
}

/// The two A-slices `(C_a)[b][c] = C_abc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePair<T: Real> {
    pub c0: Mat2<T>,
    pub c1: Mat2<T>,
}

impl<T: Real> SlicePair<T> {
    pub fn get(&self, a: usize) -> &Mat2<T> {
        if a == 0 {
            &self.c0
        } else {
            &self.c1
        }
    }

    pub fn to_state(&self) -> PureState<T> {
        let mut amps = [czero(); 8];
        for b in 0..2 {
            for c in 0..2 {
                amps[index(0, b, c)] = self.c0[b][c];
                amps[index(1, b, c)] = self.c1[b][c];
            }
        }
        PureState { amps }
    }
}

pub fn slices<T: Real>(state: &PureState<T>) -> SlicePair<T> {
    let slice = |a| [[state.amp(a, 0, 0), state.amp(a, 0, 1)], [state.amp(a, 1, 0), state.amp(a, 1, 1)]];
    SlicePair {
        c0: slice(0),
        c1: slice(1),
    }
}

/// Subsystem kept by a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
    AB,
    AC,
    BC,
}

impl Subsystem {
    /// Kept parties (0 = A, 1 = B, 2 = C), most significant first.
    pub fn parties(self) -> &'static [usize] {
        match self {
            Subsystem::A => &[0],
            Subsystem::B => &[1],
            Subsystem::C => &[2],
            Subsystem::AB => &[0, 1],
            Subsystem::AC => &[0, 2],
            Subsystem::BC => &[1, 2],
        }
    }

    pub fn dim(self) -> usize {
        1 << self.parties().len()
    }
}

/// Reduced density matrix of one or two qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    label: Subsystem,
    dim: usize,
    entries: Vec<Cx<T>>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn from_mat4(label: Subsystem, m: &Mat4<T>) -> Self {
        Self {
            label,
            dim: 4,
            entries: m.iter().flatten().copied().collect(),
        }
    }

    pub fn from_mat2(label: Subsystem, m: &Mat2<T>) -> Self {
        Self {
            label,
            dim: 2,
            entries: m.iter().flatten().copied().collect(),
        }
    }

    pub fn label(&self) -> Subsystem {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).re)
    }

    pub fn as_mat4(&self) -> Option<Mat4<T>> {
        (self.dim == 4).then(|| core::array::from_fn(|i| core::array::from_fn(|j| self.get(i, j))))
    }

    pub fn as_mat2(&self) -> Option<Mat2<T>> {
        (self.dim == 2).then(|| core::array::from_fn(|i| core::array::from_fn(|j| self.get(i, j))))
    }

    pub fn max_entry(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Determinant (real for Hermitian input).
    pub fn det(&self) -> T {
        match self.dim {
            2 => linalg::det2(&self.as_mat2().unwrap()).re,
            _ => linalg::det4(&self.as_mat4().unwrap()).re,
        }
    }
}

pub fn reduced_density<T: Real>(state: &PureState<T>, subsystem: Subsystem) -> DensityMatrix<T> {
    let kept = subsystem.parties();
    let traced: Vec<usize> = (0..3).filter(|p| !kept.contains(p)).collect();
    let dim = subsystem.dim();
    let tdim = 1 << traced.len();
    let compose = |k: usize, t: usize| {
        let mut bits = [0usize; 3];
        for (pos, &party) in kept.iter().enumerate() {
            bits[party] = (k >> (kept.len() - 1 - pos)) & 1;
        }
        for (pos, &party) in traced.iter().enumerate() {
            bits[party] = (t >> (traced.len() - 1 - pos)) & 1;
        }
        index(bits[0], bits[1], bits[2])
    };
    let mut entries = vec![czero(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = czero();
            for t in 0..tdim {
                acc += state.amps[compose(i, t)] * state.amps[compose(j, t)].conj();
            }
            entries[i * dim + j] = acc;
        }
    }
    DensityMatrix {
        label: subsystem,
        dim,
        entries,
    }
}

/// `σ_y ⊗ σ_y` in the computational basis (real, symmetric).
pub fn sigma_yy<T: Real>() -> Mat4<T> {
    let o = cone::<T>();
    let z = czero::<T>();
    [[z, z, z, -o], [z, z, o, z], [z, o, z, z], [-o, z, z, z]]
}

/// Spin-flipped operator `(σ_y⊗σ_y) ρ̄ (σ_y⊗σ_y)`.
pub fn spin_flip<T: Real>(rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    let m = rho.as_mat4().ok_or(Error::Dimension {
        expected: 4,
        found: rho.dim,
    })?;
    let y = sigma_yy::<T>();
    let out = linalg::matmul(&linalg::matmul(&y, &linalg::conjugate(&m)), &y);
    Ok(DensityMatrix::from_mat4(rho.label, &out))
}

/// `Tr(ρ ρ̃)` for a two-qubit density matrix.
pub fn flip_trace<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let m = rho.as_mat4().ok_or(Error::Dimension {
        expected: 4,
        found: rho.dim,
    })?;
    let flipped = spin_flip(rho)?.as_mat4().unwrap();
    Ok(linalg::trace(&linalg::matmul(&m, &flipped)).re)
}

/// Spectrum of `ρρ̃` and the Wootters two-tangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairTangle<T: Real> {
    /// Eigenvalues of `ρρ̃`, descending, clipped at zero.
    pub eigenvalues: [T; 4],
    /// `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)²`.
    pub tangle: T,
}

/// Two-tangle (squared concurrence) of a two-qubit density matrix.
///
/// The square roots `√λᵢ` are obtained as singular values of
/// `conj(√ρ)(σ_y⊗σ_y)√ρ`, whose Gram matrix is `√ρ ρ̃ √ρ`; this keeps the
/// vanishing roots at round-off level instead of `√ε`.
pub fn pair_tangle<T: Real>(rho: &DensityMatrix<T>) -> Result<PairTangle<T>> {
    let m = rho.as_mat4().ok_or(Error::Dimension {
        expected: 4,
        found: rho.dim,
    })?;
    let defect = rho.hermiticity_defect();
    if defect > tol::<T>(1e-12) * rho.max_entry().max(T::min_positive_value()) {
        return Err(Error::NotHermitian(defect.to_f64().unwrap_or(f64::NAN)));
    }
    let root = linalg::psd_sqrt(&m, lit::<T>(64.0) * T::epsilon());
    let r = linalg::matmul(&linalg::matmul(&linalg::conjugate(&root), &sigma_yy()), &root);
    let s = linalg::svd(&r).values;
    let eigenvalues = s.map(|x| x * x);
    let c = s[0] - s[1] - s[2] - s[3];
    let tangle = if c > T::zero() { c * c } else { T::zero() };
    Ok(PairTangle { eigenvalues, tangle })
}

/// Kempe invariant `Tr(A³ + B³ + 3C†CA + 3CC†B)` with `A = C₀C₀†`,
/// `B = C₁C₁†`, `C = C₀C₁†`. Homogeneous of degree 6.
pub fn kempe_xi<T: Real>(state: &PureState<T>) -> Result<T> {
    use linalg::{adjoint, matmul, trace};
    let s = slices(state);
    let a = matmul(&s.c0, &adjoint(&s.c0));
    let b = matmul(&s.c1, &adjoint(&s.c1));
    let c = matmul(&s.c0, &adjoint(&s.c1));
    let three = lit::<T>(3.0);
    let a3 = trace(&matmul(&matmul(&a, &a), &a));
    let b3 = trace(&matmul(&matmul(&b, &b), &b));
    let cca = trace(&matmul(&matmul(&adjoint(&c), &c), &a));
    let ccb = trace(&matmul(&matmul(&c, &adjoint(&c)), &b));
    let xi = a3 + b3 + cca * three + ccb * three;
    let n = state.norm_sq();
    let limit = tol::<T>(1e-12) * (n * n * n).max(T::min_positive_value());
    if xi.im.abs() > limit {
        return Err(Error::Consistency {
            check: "kempe-real",
            residual: xi.im.abs().to_f64().unwrap_or(f64::NAN),
            tolerance: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(xi.re)
}

/// Declared class of a local factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Unitary,
    SpecialLinear,
    GeneralInvertible,
}

impl OperatorKind {
    fn name(self) -> &'static str {
        match self {
            OperatorKind::Unitary => "unitary",
            OperatorKind::SpecialLinear => "special-linear",
            OperatorKind::GeneralInvertible => "general-invertible",
        }
    }
}

/// Product operator `op_A ⊗ op_B ⊗ op_C`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalOperator<T: Real> {
    factors: [Mat2<T>; 3],
    kinds: [OperatorKind; 3],
}

const PARTY: [char; 3] = ['A', 'B', 'C'];

impl<T: Real> LocalOperator<T> {
    pub fn new(factors: [Mat2<T>; 3], kinds: [OperatorKind; 3]) -> Result<Self> {
        for (k, (op, kind)) in factors.iter().zip(kinds.iter()).enumerate() {
            let party = PARTY[k];
            let det = linalg::det2(op);
            if det.norm() <= tol::<T>(1e-12) * linalg::frobenius_sq(op) {
                return Err(Error::SingularOperator { party });
            }
            let ok = match kind {
                OperatorKind::Unitary => {
                    let g = linalg::matmul(&linalg::adjoint(op), op);
                    linalg::frobenius_sq(&linalg::sub(&g, &linalg::identity())).sqrt() <= tol::<T>(1e-10)
                }
                OperatorKind::SpecialLinear => (det - cone()).norm() <= tol::<T>(1e-10),
                OperatorKind::GeneralInvertible => true,
            };
            if !ok {
                return Err(Error::KindMismatch {
                    party,
                    kind: kind.name(),
                });
            }
        }
        Ok(Self { factors, kinds })
    }

    pub fn identity() -> Self {
        Self {
            factors: [linalg::identity(); 3],
            kinds: [OperatorKind::Unitary; 3],
        }
    }

    /// `g ⊗ I ⊗ I`.
    pub fn on_a(g: Mat2<T>, kind: OperatorKind) -> Result<Self> {
        Self::new(
            [g, linalg::identity(), linalg::identity()],
            [kind, OperatorKind::Unitary, OperatorKind::Unitary],
        )
    }

    pub fn factors(&self) -> &[Mat2<T>; 3] {
        &self.factors
    }

    pub fn kinds(&self) -> [OperatorKind; 3] {
        self.kinds
    }

    /// Factorwise adjoint; the inverse when every factor is unitary.
    pub fn adjoint(&self) -> Self {
        Self {
            factors: self.factors.map(|f| linalg::adjoint(&f)),
            kinds: self.kinds,
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let factors = core::array::from_fn(|k| linalg::matmul(&self.factors[k], &other.factors[k]));
        let kinds = core::array::from_fn(|k| {
            if self.kinds[k] == other.kinds[k] {
                self.kinds[k]
            } else {
                OperatorKind::GeneralInvertible
            }
        });
        Self { factors, kinds }
    }
}

/// `C'_{abc} = Σ (opA)_{aa'} (opB)_{bb'} (opC)_{cc'} C_{a'b'c'}`.
pub fn apply_local<T: Real>(state: &PureState<T>, op: &LocalOperator<T>) -> PureState<T> {
    let [fa, fb, fc] = &op.factors;
    let mut out = PureState::zero();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                let mut acc = czero();
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let ab = fa[a][a2] * fb[b][b2];
                        for c2 in 0..2 {
                            acc += ab * fc[c][c2] * state.amp(a2, b2, c2);
                        }
                    }
                }
                out.amps[index(a, b, c)] = acc;
            }
        }
    }
    out
}
