//! Scalar entanglement invariants of a three-qubit pure state, each
//! computed along two independent routes where one exists.
//!
//! Vanishing tests are scale-relative: a quantity homogeneous of degree
//! `d` in the amplitudes is compared against `tol·N^{d/2}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::plucker::{self, hodge_dual, plucker, plucker_residual};
use crate::scalar::{czero, lit, principal_arg, rel_diff, rel_diff_cx, tol, Cx, Real};
use crate::state::{flip_trace, kempe_xi, pair_tangle, reduced_density, slices, PureState, Subsystem};
use crate::twistor::{bilinear_dot, to_twistor, TwistorPair};

/// A single qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    pub fn subsystem(self) -> Subsystem {
        match self {
            Party::A => Subsystem::A,
            Party::B => Subsystem::B,
            Party::C => Subsystem::C,
        }
    }
}

/// A pair of qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub fn subsystem(self) -> Subsystem {
        match self {
            Pair::AB => Subsystem::AB,
            Pair::AC => Subsystem::AC,
            Pair::BC => Subsystem::BC,
        }
    }
}

fn consistency<T: Real>(check: &'static str, residual: T, tolerance: T) -> Result<()> {
    if residual <= tolerance {
        Ok(())
    } else {
        Err(Error::Consistency {
            check,
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Degree-4 Cayley polynomial in the amplitudes.
pub fn hyperdeterminant_polynomial<T: Real>(state: &PureState<T>) -> Cx<T> {
    let c = |a, b, k| state.amp(a, b, k);
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let squares = c(0, 0, 0) * c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 1)
        + c(0, 0, 1) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 0)
        + c(0, 1, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 0, 1)
        + c(1, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(0, 1, 1);
    let mixed = c(0, 0, 0) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 1)
        + c(0, 0, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 1, 1)
        + c(0, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(1, 1, 1)
        + c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 1) * c(1, 1, 0)
        + c(0, 0, 1) * c(1, 0, 0) * c(0, 1, 1) * c(1, 1, 0)
        + c(0, 1, 0) * c(1, 0, 0) * c(0, 1, 1) * c(1, 0, 1);
    let cross = c(0, 0, 0) * c(0, 1, 1) * c(1, 0, 1) * c(1, 1, 0) + c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0) * c(1, 1, 1);
    squares - mixed * two + cross * four
}

/// Discriminant of `Det(xC₀ + yC₁)`: `[Tr(C₀′C₁)]² − 4 Det(C₀′C₁)` with
/// `C₀′` the adjugate of `C₀`.
pub fn hyperdeterminant_schlafli<T: Real>(state: &PureState<T>) -> Cx<T> {
    let s = slices(state);
    let m = linalg::matmul(&linalg::adjugate2(&s.c0), &s.c1);
    let t = linalg::trace(&m);
    t * t - linalg::det2(&m) * lit::<T>(4.0)
}

/// Cayley hyperdeterminant `D(C)`; both routes must agree to `1e-10`
/// relative (floor `N²`). The Schläfli value is returned.
pub fn hyperdeterminant<T: Real>(state: &PureState<T>) -> Result<Cx<T>> {
    let poly = hyperdeterminant_polynomial(state);
    let sch = hyperdeterminant_schlafli(state);
    let n = state.norm_sq();
    consistency("hyperdeterminant-paths", rel_diff_cx(poly, sch, n * n), tol::<T>(1e-10))?;
    Ok(sch)
}

/// `(Z·W)² − (Z·Z)(W·W)`; equal to `D(C)`.
pub fn discriminant<T: Real>(pair: &TwistorPair<T>) -> Cx<T> {
    let zw = bilinear_dot(&pair.z, &pair.w);
    zw * zw - bilinear_dot(&pair.z, &pair.z) * bilinear_dot(&pair.w, &pair.w)
}

/// `4|(Z·Z)(W·W) − (Z·W)²|`.
pub fn three_tangle_twistor<T: Real>(pair: &TwistorPair<T>) -> T {
    discriminant(pair).norm() * lit::<T>(4.0)
}

/// Three-tangle via the twistor pair, checked against `4|D(C)|`.
pub fn three_tangle<T: Real>(state: &PureState<T>) -> Result<T> {
    let tau = three_tangle_twistor(&to_twistor(state));
    let d = hyperdeterminant(state)?;
    let n = state.norm_sq();
    consistency("three-tangle-paths", rel_diff(tau, d.norm() * lit::<T>(4.0), n * n), tol::<T>(1e-10))?;
    Ok(tau)
}

/// `|Z·Z|² + |W·W|² + 2|Z·W|²`.
fn bc_flip<T: Real>(pair: &TwistorPair<T>) -> T {
    let zz = bilinear_dot(&pair.z, &pair.z).norm_sqr();
    let ww = bilinear_dot(&pair.w, &pair.w).norm_sqr();
    let zw = bilinear_dot(&pair.z, &pair.w).norm_sqr();
    zz + ww + zw * lit::<T>(2.0)
}

/// One-vs-rest tangle from the bivector alone (no density matrices).
pub fn tau_one_vs_rest_twistor<T: Real>(pair: &TwistorPair<T>, party: Party) -> T {
    let p = plucker(pair);
    let dual = hodge_dual(&p);
    let pp = p.contract_conj(&p).re;
    let dp = dual.contract_conj(&p).re;
    let two = lit::<T>(2.0);
    match party {
        Party::A => pp * two,
        Party::B => bc_flip(pair) + pp + dp,
        Party::C => bc_flip(pair) + pp - dp,
    }
}

/// `4·Det ρ_X`.
pub fn tau_one_vs_rest_oracle<T: Real>(state: &PureState<T>, party: Party) -> T {
    reduced_density(state, party.subsystem()).det() * lit::<T>(4.0)
}

/// Tangle between `party` and the remaining pair, checked against the
/// reduced-density oracle.
pub fn tau_one_vs_rest<T: Real>(state: &PureState<T>, party: Party) -> Result<T> {
    let tau = tau_one_vs_rest_twistor(&to_twistor(state), party);
    let oracle = tau_one_vs_rest_oracle(state, party);
    let n = state.norm_sq();
    consistency("one-vs-rest-oracle", rel_diff(tau, oracle, n * n), tol::<T>(1e-10))?;
    Ok(tau)
}

/// `Tr(ρρ̃)` of a reduced pair from the twistor pair.
pub fn pair_flip_trace_twistor<T: Real>(pair: &TwistorPair<T>, which: Pair) -> T {
    let p = plucker(pair);
    let dual = hodge_dual(&p);
    let pp = p.contract_conj(&p).re;
    let dp = dual.contract_conj(&p).re;
    match which {
        Pair::AB => pp + dp,
        Pair::AC => pp - dp,
        Pair::BC => bc_flip(pair),
    }
}

/// `Tr(ρρ̃)`, checked against the direct matrix product.
pub fn pair_flip_trace<T: Real>(state: &PureState<T>, which: Pair) -> Result<T> {
    let v = pair_flip_trace_twistor(&to_twistor(state), which);
    let oracle = flip_trace(&reduced_density(state, which.subsystem()))?;
    let n = state.norm_sq();
    consistency("flip-trace-oracle", rel_diff(v, oracle, n * n), tol::<T>(1e-10))?;
    Ok(v)
}

/// `Tr(ρ_BCρ̃_BC) − 2(Det ρ_B + Det ρ_C − Det ρ_A)`.
pub fn flip_trace_identity_residual<T: Real>(state: &PureState<T>) -> T {
    let lhs = flip_trace(&reduced_density(state, Subsystem::BC)).unwrap_or(T::nan());
    let det = |s| reduced_density(state, s).det();
    let rhs = (det(Subsystem::B) + det(Subsystem::C) - det(Subsystem::A)) * lit::<T>(2.0);
    (lhs - rhs).abs()
}

/// Wootters two-tangles `(τ_AB, τ_AC, τ_BC)`.
pub fn two_tangles<T: Real>(state: &PureState<T>) -> (T, T, T) {
    let t = |s| pair_tangle(&reduced_density(state, s)).map(|p| p.tangle).unwrap_or(T::nan());
    (t(Subsystem::AB), t(Subsystem::AC), t(Subsystem::BC))
}

/// `τ_A(BC) − τ_ABC − τ_AB − τ_AC`.
pub fn ckw_residual<T: Real>(state: &PureState<T>) -> T {
    let pair = to_twistor(state);
    let (ab, ac, _) = two_tangles(state);
    tau_one_vs_rest_twistor(&pair, Party::A) - three_tangle_twistor(&pair) - ab - ac
}

/// `4·Tr(ρ_BC P†P)` with `ρ_BC` in the magic basis (complex; the imaginary
/// part is round-off).
fn omega_complex<T: Real>(pair: &TwistorPair<T>) -> Cx<T> {
    let p = plucker(pair).matrix();
    let pdp = linalg::matmul(&linalg::adjoint(&p), &p);
    linalg::trace(&linalg::matmul(&pair.magic_rho_bc(), &pdp)) * lit::<T>(4.0)
}

/// `(ω, Λ, N)` with `Λ = N(τ_A(BC) + τ_B(AC) + τ_C(AB))`.
pub fn omega_lambda<T: Real>(state: &PureState<T>) -> (T, T, T) {
    let pair = to_twistor(state);
    let n = state.norm_sq();
    let lambda = Party::ALL
        .iter()
        .fold(T::zero(), |acc, &p| acc + tau_one_vs_rest_twistor(&pair, p))
        * n;
    (omega_complex(&pair).re, lambda, n)
}

/// `|ξ − N³ − (3/8)(ω − Λ)|`.
pub fn kempe_identity_residual<T: Real>(state: &PureState<T>) -> Result<T> {
    let xi = kempe_xi(state)?;
    let (omega, lambda, n) = omega_lambda(state);
    Ok((xi - n * n * n - lit::<T>(0.375) * (omega - lambda)).abs())
}

/// `σ = ω − N·τ_ABC`.
pub fn sigma<T: Real>(state: &PureState<T>) -> T {
    let pair = to_twistor(state);
    omega_complex(&pair).re - state.norm_sq() * three_tangle_twistor(&pair)
}

/// `½(‖U₊‖² + ‖U₋‖² + ‖V₊‖² + ‖V₋‖²)` from the principal-direction
/// vectors as printed. Kept for comparison only; it does not agree with
/// [`sigma`] (it is ½ on the balanced GHZ state).
pub fn sigma_null_directions<T: Real>(state: &PureState<T>) -> T {
    match plucker::principal_null_directions(&to_twistor(state)) {
        Ok(pd) => {
            let s = linalg::norm_sq(&pd.u_plus)
                + linalg::norm_sq(&pd.u_minus)
                + linalg::norm_sq(&pd.v_plus)
                + linalg::norm_sq(&pd.v_minus);
            s * lit::<T>(0.5)
        }
        // dependent Z, W: P = 0 and μ = 0, so all four vectors vanish
        Err(_) => T::zero(),
    }
}

/// Outcome of one internal cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Diagnostic {
    fn new<T: Real>(name: &str, residual: T, tolerance: T) -> Self {
        let residual = residual.to_f64().unwrap_or(f64::NAN);
        let tolerance = tolerance.to_f64().unwrap_or(f64::NAN);
        Self {
            name: name.to_string(),
            residual,
            tolerance,
            // NaN residuals fail
            passed: residual <= tolerance,
        }
    }
}

/// Every scalar invariant of a state plus the cross-checks run to get them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport<T: Real> {
    pub n: T,
    /// Hyperdeterminant, `[re, im]`.
    pub d: Cx<T>,
    pub tau_abc: T,
    pub tau_a_bc: T,
    pub tau_b_ac: T,
    pub tau_c_ab: T,
    pub tau_ab: T,
    pub tau_ac: T,
    pub tau_bc: T,
    pub xi: T,
    pub omega: T,
    pub lambda_sum: T,
    pub sigma: T,
    /// Alternative σ from the principal-direction vectors; comparison only.
    pub sigma_directions: T,
    /// `arg[(Z·W)² − (Z·Z)(W·W)]`.
    pub phi: T,
    pub ckw_residual: T,
    pub kempe_residual: T,
    pub null: bool,
    pub diagnostics: Vec<Diagnostic>,
}

/// Degree of homogeneity in the amplitudes of each numeric report field.
pub const DEGREES: [(&str, u32); 17] = [
    ("n", 2),
    ("d", 4),
    ("tau_abc", 4),
    ("tau_a_bc", 4),
    ("tau_b_ac", 4),
    ("tau_c_ab", 4),
    ("tau_ab", 4),
    ("tau_ac", 4),
    ("tau_bc", 4),
    ("xi", 6),
    ("omega", 6),
    ("lambda_sum", 6),
    ("sigma", 6),
    ("sigma_directions", 6),
    ("phi", 0),
    ("ckw_residual", 4),
    ("kempe_residual", 6),
];

impl<T: Real> InvariantReport<T> {
    /// Numeric fields by name, `d` as its modulus; in [`DEGREES`] order.
    pub fn fields(&self) -> [(&'static str, T); 17] {
        let v = [
            self.n,
            self.d.norm(),
            self.tau_abc,
            self.tau_a_bc,
            self.tau_b_ac,
            self.tau_c_ab,
            self.tau_ab,
            self.tau_ac,
            self.tau_bc,
            self.xi,
            self.omega,
            self.lambda_sum,
            self.sigma,
            self.sigma_directions,
            self.phi,
            self.ckw_residual,
            self.kempe_residual,
        ];
        core::array::from_fn(|k| (DEGREES[k].0, v[k]))
    }

    pub fn all_passed(&self) -> bool {
        self.diagnostics.iter().all(|d| d.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.passed)
    }

    fn null_report() -> Self {
        let z = T::zero();
        Self {
            n: z,
            d: czero(),
            tau_abc: z,
            tau_a_bc: z,
            tau_b_ac: z,
            tau_c_ab: z,
            tau_ab: z,
            tau_ac: z,
            tau_bc: z,
            xi: z,
            omega: z,
            lambda_sum: z,
            sigma: z,
            sigma_directions: z,
            phi: z,
            ckw_residual: z,
            kempe_residual: z,
            null: true,
            diagnostics: Vec::new(),
        }
    }
}

/// All invariants with every cross-check recorded as a named diagnostic.
pub fn full_report<T: Real>(state: &PureState<T>) -> InvariantReport<T> {
    if state.is_null() {
        return InvariantReport::null_report();
    }
    let mut diag = Vec::new();
    let n = state.norm_sq();
    let (n2, n3) = (n * n, n * n * n);
    let rel = tol::<T>(1e-10);
    let pair = to_twistor(state);

    let d_poly = hyperdeterminant_polynomial(state);
    let d = hyperdeterminant_schlafli(state);
    diag.push(Diagnostic::new("hyperdeterminant-paths", rel_diff_cx(d_poly, d, n2), rel));
    let disc = discriminant(&pair);
    diag.push(Diagnostic::new("discriminant-vs-hyperdeterminant", rel_diff_cx(disc, d, n2), rel));

    let four = lit::<T>(4.0);
    let tau_abc = three_tangle_twistor(&pair);
    diag.push(Diagnostic::new("three-tangle-paths", rel_diff(tau_abc, d.norm() * four, n2), rel));

    let p = plucker(&pair);
    diag.push(Diagnostic::new(
        "plucker-residual",
        plucker_residual(&p).norm(),
        tol::<T>(1e-12) * p.norm_sq().max(T::min_positive_value()),
    ));

    let taus = Party::ALL.map(|party| {
        let t = tau_one_vs_rest_twistor(&pair, party);
        let name = match party {
            Party::A => "tau-a-oracle",
            Party::B => "tau-b-oracle",
            Party::C => "tau-c-oracle",
        };
        diag.push(Diagnostic::new(name, rel_diff(t, tau_one_vs_rest_oracle(state, party), n2), rel));
        t
    });
    let [tau_a_bc, tau_b_ac, tau_c_ab] = taus;

    for which in Pair::ALL {
        let v = pair_flip_trace_twistor(&pair, which);
        let oracle = flip_trace(&reduced_density(state, which.subsystem())).unwrap_or(T::nan());
        let name = match which {
            Pair::AB => "flip-trace-ab-oracle",
            Pair::AC => "flip-trace-ac-oracle",
            Pair::BC => "flip-trace-bc-oracle",
        };
        diag.push(Diagnostic::new(name, rel_diff(v, oracle, n2), rel));
    }
    diag.push(Diagnostic::new("flip-trace-identity", flip_trace_identity_residual(state) / n2, rel));

    let (tau_ab, tau_ac, tau_bc) = two_tangles(state);
    let ckw = tau_a_bc - tau_abc - tau_ab - tau_ac;
    diag.push(Diagnostic::new("ckw", ckw.abs(), tol::<T>(1e-8) * n2));
    diag.push(Diagnostic::new("monogamy", (tau_abc - tau_a_bc).max(T::zero()), tol::<T>(1e-10) * n2));

    let all_taus = [tau_abc, tau_a_bc, tau_b_ac, tau_c_ab, tau_ab, tau_ac, tau_bc];
    let low = all_taus.iter().fold(T::zero(), |acc, &t| acc.max(-t));
    diag.push(Diagnostic::new("tau-nonnegative", low, tol::<T>(1e-10) * n2));
    let unit = (n - T::one()).abs() <= tol::<T>(1e-9);
    if unit {
        let high = all_taus.iter().fold(T::zero(), |acc, &t| acc.max(t - T::one()));
        diag.push(Diagnostic::new("tau-at-most-one", high, tol::<T>(1e-9)));
    }

    let (xi, xi_ok) = match kempe_xi(state) {
        Ok(x) => (x, true),
        Err(_) => (T::nan(), false),
    };
    if !xi_ok {
        diag.push(Diagnostic::new("kempe-real", T::infinity(), tol::<T>(1e-12) * n3));
    }
    let omega_c = omega_complex(&pair);
    diag.push(Diagnostic::new("omega-real", omega_c.im.abs(), tol::<T>(1e-12) * n3));
    let omega = omega_c.re;
    let lambda_sum = n * (tau_a_bc + tau_b_ac + tau_c_ab);
    let kempe_residual = (xi - n3 - lit::<T>(0.375) * (omega - lambda_sum)).abs();
    diag.push(Diagnostic::new(
        "kempe-identity",
        kempe_residual,
        tol::<T>(1e-9) * n3.max(xi.abs()),
    ));

    let sigma = omega - n * tau_abc;
    diag.push(Diagnostic::new("sigma-nonnegative", (-sigma).max(T::zero()), tol::<T>(1e-10) * n3));
    if unit {
        diag.push(Diagnostic::new("sigma-at-most-one", (sigma - T::one()).max(T::zero()), tol::<T>(1e-9)));
    }

    InvariantReport {
        n,
        d,
        tau_abc,
        tau_a_bc,
        tau_b_ac,
        tau_c_ab,
        tau_ab,
        tau_ac,
        tau_bc,
        xi,
        omega,
        lambda_sum,
        sigma,
        sigma_directions: sigma_null_directions(state),
        phi: principal_arg(disc),
        ckw_residual: ckw,
        kempe_residual,
        null: false,
        diagnostics: diag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Cx<f64> {
        crate::scalar::cx(re, im)
    }

    const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn ghz() -> PureState<f64> {
        PureState::ghz(cx(S2, 0.0), cx(S2, 0.0))
    }

    fn w3() -> PureState<f64> {
        let k = cx(1.0 / 3f64.sqrt(), 0.0);
        PureState::w(k, k, k)
    }

    fn psi_minus() -> PureState<f64> {
        PureState::w(cx(S2, 0.0), czero(), cx(S2, 0.0))
    }

    fn psi_plus() -> PureState<f64> {
        PureState::w(cx(S2, 0.0), cx(S2, 0.0), czero())
    }

    fn product() -> PureState<f64> {
        PureState::basis(0)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn pseudo(seed: u64) -> PureState<f64> {
        let f = |k: u64| ((seed as f64 * 0.7548776662 + k as f64 * 0.5698402909).fract() - 0.5) * 2.0;
        PureState::new(core::array::from_fn(|k| cx(f(k as u64), f(k as u64 + 8)))).unwrap()
    }

    #[test]
    fn hyperdeterminant_examples() {
        let s = PureState::ghz(cx(0.6, 0.0), cx(0.0, 0.8));
        let expected = cx(0.6, 0.0) * cx(0.6, 0.0) * cx(0.0, 0.8) * cx(0.0, 0.8);
        assert!((hyperdeterminant(&s).unwrap() - expected).norm() < 1e-15);
        assert!((hyperdeterminant(&ghz()).unwrap() - cx(0.25, 0.0)).norm() < 1e-15);
        assert!(hyperdeterminant(&w3()).unwrap().norm() < 1e-15);
        assert_eq!(hyperdeterminant(&product()).unwrap(), czero());
    }

    #[test]
    fn hyperdeterminant_paths_agree_off_anchor() {
        for seed in 0..200 {
            let s = pseudo(seed);
            let (a, b) = (hyperdeterminant_polynomial(&s), hyperdeterminant_schlafli(&s));
            assert!(rel_diff_cx(a, b, s.norm_sq().powi(2)) < 1e-12, "seed {seed}");
            assert!((discriminant(&to_twistor(&s)) - b).norm() < 1e-12 * s.norm_sq().powi(2));
        }
    }

    #[test]
    fn three_tangle_examples() {
        assert!(close(three_tangle(&ghz()).unwrap(), 1.0));
        assert!(three_tangle(&w3()).unwrap().abs() < 1e-15);
        let w = PureState::w(cx(0.3, 0.1), cx(-0.5, 0.2), cx(0.1, 0.7));
        assert!(three_tangle(&w).unwrap().abs() < 1e-15);
        assert!(three_tangle(&psi_minus()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn three_tangle_equals_twice_q_of_dual() {
        for seed in 0..50 {
            let pair = to_twistor(&pseudo(seed));
            let p = plucker(&pair);
            let q = plucker::q_form(&p, &hodge_dual(&p)).norm() * 2.0;
            assert!((q - three_tangle_twistor(&pair)).abs() < 1e-12);
        }
    }

    #[test]
    fn one_vs_rest_examples() {
        for p in Party::ALL {
            assert!(close(tau_one_vs_rest(&ghz(), p).unwrap(), 1.0));
            assert!(close(tau_one_vs_rest(&w3(), p).unwrap(), 8.0 / 9.0));
        }
        let s = psi_minus();
        assert!(tau_one_vs_rest(&s, Party::B).unwrap().abs() < 1e-15);
        assert!(close(tau_one_vs_rest(&s, Party::C).unwrap(), 1.0));
        assert!(close(tau_one_vs_rest(&s, Party::A).unwrap(), 1.0));
        let s = psi_plus();
        assert!(tau_one_vs_rest(&s, Party::C).unwrap().abs() < 1e-15);
        assert!(close(tau_one_vs_rest(&s, Party::B).unwrap(), 1.0));
    }

    #[test]
    fn one_vs_rest_matches_oracle_off_anchor() {
        for seed in 0..200 {
            let s = pseudo(seed);
            for p in Party::ALL {
                assert!(tau_one_vs_rest(&s, p).is_ok(), "seed {seed} {p:?}");
            }
        }
    }

    #[test]
    fn flip_trace_examples() {
        assert!(close(pair_flip_trace(&ghz(), Pair::BC).unwrap(), 0.5));
        assert!(pair_flip_trace(&psi_minus(), Pair::AB).unwrap().abs() < 1e-15);
        assert!(close(pair_flip_trace(&psi_minus(), Pair::AC).unwrap(), 1.0));
        for seed in 0..100 {
            let s = pseudo(seed);
            for which in Pair::ALL {
                assert!(pair_flip_trace(&s, which).is_ok());
            }
            assert!(flip_trace_identity_residual(&s) < 1e-12 * s.norm_sq().powi(2));
        }
    }

    #[test]
    fn two_tangle_examples() {
        let (ab, ac, _) = two_tangles(&w3());
        assert!((ab - 4.0 / 9.0).abs() < 1e-12 && (ac - 4.0 / 9.0).abs() < 1e-12);
        assert!(ckw_residual(&w3()).abs() < 1e-12);
        let (ab, ac, bc) = two_tangles(&ghz());
        assert!(ab.abs() < 1e-12 && ac.abs() < 1e-12 && bc.abs() < 1e-12);
        assert!(ckw_residual(&ghz()).abs() < 1e-12);
        assert_eq!(two_tangles(&product()), (0.0, 0.0, 0.0));
    }

    #[test]
    fn omega_lambda_examples() {
        let (o, l, n) = omega_lambda(&ghz());
        assert!(close(o, 1.0) && close(l, 3.0) && close(n, 1.0));
        let (o, l, _) = omega_lambda(&w3());
        assert!(close(o, 16.0 / 27.0) && close(l, 8.0 / 3.0));
        assert_eq!(omega_lambda(&product()), (0.0, 0.0, 1.0));
    }

    #[test]
    fn kempe_identity_examples() {
        assert!(kempe_identity_residual(&ghz()).unwrap() < 1e-14);
        assert!(kempe_identity_residual(&w3()).unwrap() < 1e-14);
        for seed in 0..200 {
            let s = pseudo(seed);
            let n3 = s.norm_sq().powi(3);
            assert!(kempe_identity_residual(&s).unwrap() < 1e-11 * n3, "seed {seed}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma(&ghz()).abs() < 1e-15);
        let s = PureState::ghz(cx(0.6, 0.0), cx(0.0, 0.8));
        assert!(sigma(&s).abs() < 1e-15);
        assert!(close(sigma(&w3()), 16.0 / 27.0));
        assert_eq!(sigma(&product()), 0.0);
    }

    #[test]
    fn sigma_from_directions_differs_on_ghz() {
        assert!(close(sigma_null_directions(&ghz()), 0.5));
        assert_eq!(sigma_null_directions(&product()), 0.0);
    }

    #[test]
    fn report_anchors() {
        let r = full_report(&ghz());
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(close(r.tau_abc, 1.0) && close(r.tau_a_bc, 1.0) && close(r.tau_b_ac, 1.0) && close(r.tau_c_ab, 1.0));
        assert!(r.tau_ab.abs() < 1e-12 && r.tau_ac.abs() < 1e-12);
        assert!(close(r.xi, 0.25) && close(r.omega, 1.0) && close(r.lambda_sum, 3.0));
        assert!(r.sigma.abs() < 1e-12 && r.phi.abs() < 1e-12);

        let r = full_report(&w3());
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.tau_abc.abs() < 1e-12);
        assert!(close(r.tau_ab, 4.0 / 9.0) && close(r.tau_ac, 4.0 / 9.0));
        assert!(close(r.xi, 2.0 / 9.0) && close(r.omega, 16.0 / 27.0) && close(r.sigma, 16.0 / 27.0));

        let r = full_report(&PureState::<f64>::zero());
        assert!(r.null && r.diagnostics.is_empty() && r.n == 0.0);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = full_report(&pseudo(7));
        let text = serde_json::to_string(&r).unwrap();
        let back: InvariantReport<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn single_precision_report() {
        let k = crate::scalar::cx::<f32>(1.0 / 3f64.sqrt(), 0.0);
        let r = full_report(&PureState::w(k, k, k));
        assert!((r.tau_ab - 4.0 / 9.0).abs() < 1e-5);
        assert!(r.tau_abc.abs() < 1e-6);
        let names: Vec<_> = r.failures().map(|d| d.name.clone()).collect();
        assert!(names.is_empty(), "{names:?}");
    }
}
