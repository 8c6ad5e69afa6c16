//! SLOCC class of a three-qubit pure state from the vanishing pattern of
//! the tangles, with geometric witnesses attached as cross-checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::invariants::{three_tangle_twistor, tau_one_vs_rest_twistor, Party};
use crate::plucker::{self, hodge_dual, is_alpha_plane, is_beta_plane, null_line_check, plane_of, plucker};
use crate::scalar::Real;
use crate::state::PureState;
use crate::twistor::to_twistor;

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SloccLabel {
    Null,
    FullySeparable,
    /// A ⊗ (BC).
    #[serde(rename = "Biseparable_A_BC")]
    BiseparableA,
    /// B ⊗ (AC).
    #[serde(rename = "Biseparable_B_AC")]
    BiseparableB,
    /// C ⊗ (AB).
    #[serde(rename = "Biseparable_C_AB")]
    BiseparableC,
    WClass,
    GHZClass,
}

impl SloccLabel {
    pub const ALL: [SloccLabel; 7] = [
        SloccLabel::Null,
        SloccLabel::FullySeparable,
        SloccLabel::BiseparableA,
        SloccLabel::BiseparableB,
        SloccLabel::BiseparableC,
        SloccLabel::WClass,
        SloccLabel::GHZClass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SloccLabel::Null => "Null",
            SloccLabel::FullySeparable => "FullySeparable",
            SloccLabel::BiseparableA => "Biseparable_A_BC",
            SloccLabel::BiseparableB => "Biseparable_B_AC",
            SloccLabel::BiseparableC => "Biseparable_C_AB",
            SloccLabel::WClass => "WClass",
            SloccLabel::GHZClass => "GHZClass",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|l| l.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for SloccLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Quantities the verdict was read from, all on the normalized copy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    pub tau_abc: f64,
    pub tau_a_bc: f64,
    pub tau_b_ac: f64,
    pub tau_c_ab: f64,
    pub degenerate_pair: bool,
    pub alpha_plane: bool,
    pub beta_plane: bool,
    /// `dim(P ∩ ∗P)`; absent for a degenerate pair.
    pub dual_intersection_dimension: Option<usize>,
    /// Whether the line through `P` and `∗P` lies in the quadric.
    pub null_line: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SloccClass {
    pub label: SloccLabel,
    pub witnesses: Witnesses,
    pub tolerance: f64,
    /// Witness conflicts; empty when everything agrees.
    pub diagnostics: Vec<String>,
}

impl SloccClass {
    pub fn consistent(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

pub fn classify<T: Real>(state: &PureState<T>, tol: T) -> SloccClass {
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
    let tolerance = f(tol);
    let Some(unit) = state.normalized() else {
        return SloccClass {
            label: SloccLabel::Null,
            witnesses: Witnesses {
                tau_abc: 0.0,
                tau_a_bc: 0.0,
                tau_b_ac: 0.0,
                tau_c_ab: 0.0,
                degenerate_pair: true,
                alpha_plane: false,
                beta_plane: false,
                dual_intersection_dimension: None,
                null_line: None,
            },
            tolerance,
            diagnostics: Vec::new(),
        };
    };

    let pair = to_twistor(&unit);
    let tau_abc = three_tangle_twistor(&pair);
    let [ta, tb, tc] = Party::ALL.map(|p| tau_one_vs_rest_twistor(&pair, p));
    let degenerate = pair.is_degenerate();
    let p = plucker(&pair);

    let dual_dim = if degenerate {
        None
    } else {
        plane_of(&hodge_dual(&p)).map(|d| plucker::intersection_dimension(&pair, &d))
    };
    let null_line = if degenerate { None } else { null_line_check(&p, tol).ok() };
    let witnesses = Witnesses {
        tau_abc: f(tau_abc),
        tau_a_bc: f(ta),
        tau_b_ac: f(tb),
        tau_c_ab: f(tc),
        degenerate_pair: degenerate,
        alpha_plane: is_alpha_plane(&pair, tol),
        beta_plane: is_beta_plane(&pair, tol),
        dual_intersection_dimension: dual_dim,
        null_line,
    };

    let mut diagnostics = Vec::new();
    let live = [ta > tol, tb > tol, tc > tol];
    let label = if tau_abc > tol {
        SloccLabel::GHZClass
    } else {
        match live {
            [true, true, true] => SloccLabel::WClass,
            [false, true, true] => SloccLabel::BiseparableA,
            [true, false, true] => SloccLabel::BiseparableB,
            [true, true, false] => SloccLabel::BiseparableC,
            [false, false, false] => SloccLabel::FullySeparable,
            _ => {
                diagnostics.push(format!(
                    "tau pattern {live:?} has exactly one nonvanishing one-vs-rest tangle; reported as FullySeparable"
                ));
                SloccLabel::FullySeparable
            }
        }
    };

    match label {
        SloccLabel::GHZClass if !live.iter().all(|&x| x) => {
            diagnostics.push("nonzero three-tangle with a vanishing one-vs-rest tangle".into());
        }
        SloccLabel::WClass => {
            if witnesses.null_line != Some(true) {
                diagnostics.push("W-class state fails the null-line check".into());
            }
            if witnesses.dual_intersection_dimension != Some(1) {
                diagnostics.push(format!(
                    "W-class state has dual-intersection dimension {:?}, expected 1",
                    witnesses.dual_intersection_dimension
                ));
            }
        }
        SloccLabel::BiseparableA if !degenerate => {
            diagnostics.push("A-separable state with independent twistor vectors".into());
        }
        SloccLabel::BiseparableB if !witnesses.beta_plane => {
            diagnostics.push("B-separable state is not a beta-plane".into());
        }
        SloccLabel::BiseparableC if !witnesses.alpha_plane => {
            diagnostics.push("C-separable state is not an alpha-plane".into());
        }
        SloccLabel::FullySeparable if !degenerate => {
            // a product state has rank-one slices spanning at most a line
            diagnostics.push("fully separable state with independent twistor vectors".into());
        }
        _ => {}
    }

    SloccClass {
        label,
        witnesses,
        tolerance,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{czero, Cx};

    fn cx(re: f64, im: f64) -> Cx<f64> {
        crate::scalar::cx(re, im)
    }

    const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn run(s: &PureState<f64>) -> SloccClass {
        classify(s, DEFAULT_TOL)
    }

    #[test]
    fn representatives() {
        let r = run(&PureState::ghz(cx(S2, 0.0), cx(S2, 0.0)));
        assert_eq!(r.label, SloccLabel::GHZClass);
        assert!(r.consistent());

        let k = cx(1.0 / 3f64.sqrt(), 0.0);
        let r = run(&PureState::w(k, k, k));
        assert_eq!(r.label, SloccLabel::WClass);
        assert_eq!(r.witnesses.dual_intersection_dimension, Some(1));
        assert_eq!(r.witnesses.null_line, Some(true));
        assert!(r.consistent(), "{:?}", r.diagnostics);

        let r = run(&PureState::w(cx(S2, 0.0), czero(), cx(S2, 0.0)));
        assert_eq!(r.label, SloccLabel::BiseparableB);
        assert!(r.witnesses.beta_plane && r.consistent());

        let r = run(&PureState::w(cx(S2, 0.0), cx(S2, 0.0), czero()));
        assert_eq!(r.label, SloccLabel::BiseparableC);
        assert!(r.witnesses.alpha_plane && r.consistent());

        // |0⟩ ⊗ (|01⟩ + |10⟩)/√2
        let r = run(&PureState::w(czero(), cx(S2, 0.0), cx(S2, 0.0)));
        assert_eq!(r.label, SloccLabel::BiseparableA);
        assert!(r.witnesses.degenerate_pair && r.consistent());

        let r = run(&PureState::basis(5));
        assert_eq!(r.label, SloccLabel::FullySeparable);
        assert!(r.consistent());

        assert_eq!(run(&PureState::zero()).label, SloccLabel::Null);
    }

    #[test]
    fn scale_does_not_matter() {
        let s = PureState::ghz(cx(0.6, 0.0), cx(0.8, 0.0)).scaled(cx(1e-3, 1e3));
        assert_eq!(run(&s).label, SloccLabel::GHZClass);
    }

    #[test]
    fn label_names_round_trip() {
        for l in SloccLabel::ALL {
            assert_eq!(SloccLabel::parse(l.name()), Some(l));
            let json = serde_json::to_string(&l).unwrap();
            assert_eq!(json, format!("\"{}\"", l.name()));
        }
    }
}
