//! Random states and random local operators.
//!
//! Every state is drawn from its own ChaCha stream keyed by `(seed, index)`,
//! so a sample depends on nothing but those two numbers.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::classify::SloccLabel;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::scalar::{czero, lit, Cx, Real};
use crate::state::{apply_local, LocalOperator, OperatorKind, PureState};

pub const DEFAULT_BOUND: f64 = 10.0;
pub const MAX_TRIES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnsembleKind {
    /// Eight independent standard complex Gaussian amplitudes.
    Gaussian,
    /// Gaussian, then normalized.
    SphereUniform,
    /// A fixed class representative hit by a random local operator.
    ClassConditioned(SloccLabel),
    /// `α|000⟩ + β|111⟩` with random `(α, β)` on the unit sphere, then a
    /// random local unitary.
    GeneralizedGhz,
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleKind::Gaussian => f.write_str("gaussian"),
            EnsembleKind::SphereUniform => f.write_str("sphere-uniform"),
            EnsembleKind::ClassConditioned(l) => write!(f, "class:{l}"),
            EnsembleKind::GeneralizedGhz => f.write_str("generalized-ghz"),
        }
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    /// `gaussian`, `sphere-uniform`, `generalized-ghz` or `class:<Label>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "gaussian" => return Ok(EnsembleKind::Gaussian),
            "sphere-uniform" | "sphere" => return Ok(EnsembleKind::SphereUniform),
            "generalized-ghz" => return Ok(EnsembleKind::GeneralizedGhz),
            _ => {}
        }
        let label = lower
            .strip_prefix("class:")
            .or_else(|| lower.strip_prefix("class-conditioned:"))
            .ok_or_else(|| Error::InvalidEnsemble(format!("unknown ensemble `{s}`")))?;
        match SloccLabel::parse(label) {
            Some(SloccLabel::Null) | None => Err(Error::InvalidEnsemble(format!("no class representative for `{label}`"))),
            Some(l) => Ok(EnsembleKind::ClassConditioned(l)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub count: usize,
    pub seed: u64,
    /// Largest accepted condition number of a sampled operator factor.
    pub bound: f64,
    /// Operator family used for class-conditioned scrambling.
    pub scramble: OperatorKind,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, count: usize, seed: u64) -> Result<Self> {
        let spec = Self {
            kind,
            count,
            seed,
            bound: DEFAULT_BOUND,
            scramble: OperatorKind::GeneralInvertible,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_bound(mut self, bound: f64) -> Result<Self> {
        self.bound = bound;
        self.validate()?;
        Ok(self)
    }

    pub fn with_scramble(mut self, kind: OperatorKind) -> Self {
        self.scramble = kind;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidEnsemble("count must be at least 1".into()));
        }
        if !(self.bound >= 1.0) {
            return Err(Error::InvalidEnsemble(format!("condition bound {} is below 1", self.bound)));
        }
        if self.kind == EnsembleKind::ClassConditioned(SloccLabel::Null) {
            return Err(Error::InvalidEnsemble("the null class has no representative".into()));
        }
        Ok(())
    }

    /// Generator for state `index`; draws after the state are free for the
    /// caller (e.g. extra operators), still reproducible per index.
    pub fn rng(&self, index: usize) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Cx<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Cx::new(lit(re * s), lit(im * s))
}

fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    core::array::from_fn(|_| core::array::from_fn(|_| complex_gaussian(rng)))
}

/// Haar unitary: Gram–Schmidt on a Gaussian matrix with the phases of
/// the triangular factor removed.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    loop {
        let g = gaussian_matrix::<T, R>(rng);
        let c0 = [g[0][0], g[1][0]];
        let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
        if n0 == T::zero() {
            continue;
        }
        let q0 = [c0[0] / n0, c0[1] / n0];
        let c1 = [g[0][1], g[1][1]];
        let proj = q0[0].conj() * c1[0] + q0[1].conj() * c1[1];
        let r1 = [c1[0] - q0[0] * proj, c1[1] - q0[1] * proj];
        let n1 = (r1[0].norm_sqr() + r1[1].norm_sqr()).sqrt();
        if n1 == T::zero() {
            continue;
        }
        // the diagonal of R is (n0, n1), already real positive
        return [[q0[0], r1[0] / n1], [q0[1], r1[1] / n1]];
    }
}

pub fn condition_number<T: Real>(m: &Mat2<T>) -> T {
    let s = linalg::svd(m).values;
    if s[1] == T::zero() {
        T::infinity()
    } else {
        s[0] / s[1]
    }
}

fn random_factor<T: Real, R: Rng + ?Sized>(kind: OperatorKind, bound: T, rng: &mut R) -> Result<Mat2<T>> {
    if kind == OperatorKind::Unitary {
        return Ok(haar_unitary(rng));
    }
    for _ in 0..MAX_TRIES {
        let mut g = gaussian_matrix::<T, R>(rng);
        if kind == OperatorKind::SpecialLinear {
            let d = linalg::det2(&g);
            if d.norm() == T::zero() {
                continue;
            }
            g = linalg::scale(&g, Cx::new(T::one(), T::zero()) / d.sqrt());
        }
        if condition_number(&g) <= bound {
            return Ok(g);
        }
    }
    Err(Error::RejectionExhausted(MAX_TRIES))
}

/// One random factor per party, each of the given kind.
pub fn random_local<T: Real, R: Rng + ?Sized>(kind: OperatorKind, bound: T, rng: &mut R) -> Result<LocalOperator<T>> {
    let f0 = random_factor(kind, bound, rng)?;
    let f1 = random_factor(kind, bound, rng)?;
    let f2 = random_factor(kind, bound, rng)?;
    LocalOperator::new([f0, f1, f2], [kind; 3])
}

/// Fixed representative of a class; `None` for `Null`.
pub fn representative<T: Real>(label: SloccLabel) -> Option<PureState<T>> {
    let h = Cx::new(lit::<T>(std::f64::consts::FRAC_1_SQRT_2), T::zero());
    let z = czero();
    Some(match label {
        SloccLabel::Null => return None,
        SloccLabel::FullySeparable => PureState::basis(0),
        SloccLabel::BiseparableA => PureState::w(z, h, h),
        SloccLabel::BiseparableB => PureState::w(h, z, h),
        SloccLabel::BiseparableC => PureState::w(h, h, z),
        SloccLabel::WClass => {
            let k = Cx::new(lit::<T>(1.0 / 3f64.sqrt()), T::zero());
            PureState::w(k, k, k)
        }
        SloccLabel::GHZClass => PureState::ghz(h, h),
    })
}

/// State `index` of the ensemble.
pub fn sample_state<T: Real>(spec: &EnsembleSpec, index: usize) -> Result<PureState<T>> {
    sample_with(spec, &mut spec.rng(index))
}

/// Like [`sample_state`] but continuing on a caller-owned stream.
pub fn sample_with<T: Real, R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<PureState<T>> {
    spec.validate()?;
    let gaussian = |rng: &mut R| PureState::new(core::array::from_fn(|_| complex_gaussian::<T, R>(rng)));
    match spec.kind {
        EnsembleKind::Gaussian => gaussian(rng),
        EnsembleKind::SphereUniform => loop {
            if let Some(s) = gaussian(rng)?.normalized() {
                return Ok(s);
            }
        },
        EnsembleKind::ClassConditioned(label) => {
            let rep = representative::<T>(label).expect("validated label");
            let op = random_local(spec.scramble, lit::<T>(spec.bound), rng)?;
            Ok(apply_local(&rep, &op).normalized().expect("invertible image of a nonzero state"))
        }
        EnsembleKind::GeneralizedGhz => {
            let ab = loop {
                let v = [complex_gaussian::<T, R>(rng), complex_gaussian(rng)];
                let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
                if n > T::zero() {
                    break [v[0] / n, v[1] / n];
                }
            };
            let op = random_local(OperatorKind::Unitary, T::one(), rng)?;
            Ok(apply_local(&PureState::ghz(ab[0], ab[1]), &op))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, DEFAULT_TOL};
    use crate::invariants::three_tangle_twistor;
    use crate::twistor::to_twistor;

    #[test]
    fn sphere_samples_are_normalized() {
        let spec = EnsembleSpec::new(EnsembleKind::SphereUniform, 100, 3).unwrap();
        for i in 0..100 {
            let s: PureState<f64> = sample_state(&spec, i).unwrap();
            assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn samples_are_reproducible_per_index() {
        let spec = EnsembleSpec::new(EnsembleKind::Gaussian, 10, 42).unwrap();
        let a: PureState<f64> = sample_state(&spec, 0).unwrap();
        let b: PureState<f64> = sample_state(&spec, 0).unwrap();
        assert_eq!(a, b);
        let c: PureState<f64> = sample_state(&spec, 1).unwrap();
        assert_ne!(a, c);
        let other = EnsembleSpec::new(EnsembleKind::Gaussian, 10, 43).unwrap();
        assert_ne!(a, sample_state::<f64>(&other, 0).unwrap());
    }

    #[test]
    fn w_class_samples_have_no_three_tangle() {
        let spec = EnsembleSpec::new(EnsembleKind::ClassConditioned(SloccLabel::WClass), 200, 9).unwrap();
        for i in 0..200 {
            let s: PureState<f64> = sample_state(&spec, i).unwrap();
            assert!(three_tangle_twistor(&to_twistor(&s)) <= 1e-10 * s.norm_sq().powi(2));
        }
    }

    #[test]
    fn class_samples_keep_their_label() {
        for label in &SloccLabel::ALL[1..] {
            let spec = EnsembleSpec::new(EnsembleKind::ClassConditioned(*label), 50, 1).unwrap();
            for i in 0..50 {
                let s: PureState<f64> = sample_state(&spec, i).unwrap();
                assert_eq!(classify(&s, DEFAULT_TOL).label, *label, "index {i}");
            }
        }
    }

    #[test]
    fn operator_kinds_meet_their_contracts() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..200 {
            let u = random_local::<f64, _>(OperatorKind::Unitary, 10.0, &mut rng).unwrap();
            for f in u.factors() {
                let g = linalg::matmul(&linalg::adjoint(f), f);
                assert!(linalg::frobenius_sq(&linalg::sub(&g, &linalg::identity())).sqrt() <= 1e-10);
            }
            let sl = random_local::<f64, _>(OperatorKind::SpecialLinear, 10.0, &mut rng).unwrap();
            for f in sl.factors() {
                assert!((linalg::det2(f) - Cx::new(1.0, 0.0)).norm() <= 1e-10);
                assert!(condition_number(f) <= 10.0);
            }
            let gl = random_local::<f64, _>(OperatorKind::GeneralInvertible, 10.0, &mut rng).unwrap();
            for f in gl.factors() {
                assert!(condition_number(f) <= 10.0);
            }
        }
    }

    #[test]
    fn impossible_bound_exhausts() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let r = random_local::<f64, _>(OperatorKind::GeneralInvertible, 1.0, &mut rng);
        assert_eq!(r.unwrap_err(), Error::RejectionExhausted(MAX_TRIES));
    }

    #[test]
    fn spec_validation() {
        assert!(EnsembleSpec::new(EnsembleKind::Gaussian, 0, 1).is_err());
        assert!(EnsembleSpec::new(EnsembleKind::ClassConditioned(SloccLabel::Null), 1, 1).is_err());
        assert!("class:Null".parse::<EnsembleKind>().is_err());
        assert_eq!("class:WClass".parse::<EnsembleKind>().unwrap(), EnsembleKind::ClassConditioned(SloccLabel::WClass));
        assert_eq!("sphere-uniform".parse::<EnsembleKind>().unwrap(), EnsembleKind::SphereUniform);
        for k in [EnsembleKind::Gaussian, EnsembleKind::GeneralizedGhz, EnsembleKind::ClassConditioned(SloccLabel::BiseparableB)] {
            assert_eq!(k.to_string().parse::<EnsembleKind>().unwrap(), k);
        }
    }
}
