//! Reference values on the standard states, used by `selftest`.

use serde::Serialize;

use crate::invariants::full_report;
use crate::plucker::{hodge_dual, plucker};
use crate::scalar::Cx;
use crate::state::PureState;
use crate::twistor::to_twistor;

pub const ANCHOR_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Anchor {
    pub state: &'static str,
    pub quantity: &'static str,
    pub expected: f64,
    pub actual: f64,
    pub passed: bool,
}

const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn ghz() -> PureState<f64> {
    PureState::ghz(Cx::new(S2, 0.0), Cx::new(S2, 0.0))
}

pub fn w_state() -> PureState<f64> {
    let k = Cx::new(1.0 / 3f64.sqrt(), 0.0);
    PureState::w(k, k, k)
}

/// `(|100⟩ + |001⟩)/√2`: B factors out.
pub fn psi_minus() -> PureState<f64> {
    PureState::w(Cx::new(S2, 0.0), Cx::new(0.0, 0.0), Cx::new(S2, 0.0))
}

/// `(|100⟩ + |010⟩)/√2`: C factors out.
pub fn psi_plus() -> PureState<f64> {
    PureState::w(Cx::new(S2, 0.0), Cx::new(S2, 0.0), Cx::new(0.0, 0.0))
}

pub fn anchor_table() -> Vec<Anchor> {
    let mut out = Vec::new();
    let mut push = |state, quantity, expected: f64, actual: f64| {
        out.push(Anchor {
            state,
            quantity,
            expected,
            actual,
            passed: (expected - actual).abs() <= ANCHOR_TOL,
        })
    };

    let g = full_report(&ghz());
    let p34 = plucker(&to_twistor(&ghz())).get(2, 3);
    for (q, e, a) in [
        ("tau_ABC", 1.0, g.tau_abc),
        ("tau_A(BC)", 1.0, g.tau_a_bc),
        ("tau_B(AC)", 1.0, g.tau_b_ac),
        ("tau_C(AB)", 1.0, g.tau_c_ab),
        ("tau_AB", 0.0, g.tau_ab),
        ("tau_AC", 0.0, g.tau_ac),
        ("xi", 0.25, g.xi),
        ("omega", 1.0, g.omega),
        ("Lambda", 3.0, g.lambda_sum),
        ("sigma", 0.0, g.sigma),
        ("Re P^34", 0.0, p34.re),
        ("Im P^34", 0.5, p34.im),
    ] {
        push("GHZ", q, e, a);
    }

    let w = full_report(&w_state());
    for (q, e, a) in [
        ("tau_ABC", 0.0, w.tau_abc),
        ("tau_A(BC)", 8.0 / 9.0, w.tau_a_bc),
        ("tau_B(AC)", 8.0 / 9.0, w.tau_b_ac),
        ("tau_C(AB)", 8.0 / 9.0, w.tau_c_ab),
        ("tau_AB", 4.0 / 9.0, w.tau_ab),
        ("tau_AC", 4.0 / 9.0, w.tau_ac),
        ("xi", 2.0 / 9.0, w.xi),
        ("omega", 16.0 / 27.0, w.omega),
        ("Lambda", 8.0 / 3.0, w.lambda_sum),
        ("sigma", 16.0 / 27.0, w.sigma),
    ] {
        push("W", q, e, a);
    }

    let m = full_report(&psi_minus());
    let p = plucker(&to_twistor(&psi_minus()));
    push("psi-", "|*P + P|", 0.0, hodge_dual(&p).add(&p).norm());
    push("psi-", "tau_B(AC)", 0.0, m.tau_b_ac);
    push("psi-", "tau_C(AB)", 1.0, m.tau_c_ab);

    let pl = full_report(&psi_plus());
    let p = plucker(&to_twistor(&psi_plus()));
    push("psi+", "|*P - P|", 0.0, hodge_dual(&p).sub(&p).norm());
    push("psi+", "tau_C(AB)", 0.0, pl.tau_c_ab);
    out
}
