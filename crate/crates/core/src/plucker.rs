//! Bivector algebra on the Klein quadric.
//!
//! Conventions: `ε_{1234} = +1`, indices raised and lowered with the
//! identity metric, `∗P_{μν} = ½ ε_{μνρσ} P^{ρσ}` and
//! `Q(P₁, P₂) = ½ ε_{μνρσ} P₁^{μν} P₂^{ρσ}`. With this normalization
//! `Q(P, P)` is four times the Plücker residual and `τ_ABC = 2|Q(P, ∗P)|`.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat4, Vec4};
use crate::scalar::{czero, lit, principal_arg, tol, Cx, Real};
use crate::twistor::{bilinear_dot, TwistorPair};

/// Index pairs `(μ, ν)`, μ < ν, in storage order 12, 13, 14, 23, 24, 34.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Antisymmetric `P^{μν}` stored by its six independent components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bivector<T: Real> {
    c: [Cx<T>; 6],
}

fn slot(mu: usize, nu: usize) -> Option<(usize, bool)> {
    let (lo, hi, flip) = if mu < nu { (mu, nu, false) } else { (nu, mu, true) };
    PAIRS.iter().position(|&p| p == (lo, hi)).map(|k| (k, flip))
}

impl<T: Real> Bivector<T> {
    /// From components in the order `P12, P13, P14, P23, P24, P34`.
    pub fn from_components(c: [Cx<T>; 6]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: [czero(); 6] }
    }

    pub fn components(&self) -> &[Cx<T>; 6] {
        &self.c
    }

    /// `P^{μν}` with 0-based indices.
    pub fn get(&self, mu: usize, nu: usize) -> Cx<T> {
        match slot(mu, nu) {
            None => czero(),
            Some((k, false)) => self.c[k],
            Some((k, true)) => -self.c[k],
        }
    }

    pub fn matrix(&self) -> Mat4<T> {
        core::array::from_fn(|m| core::array::from_fn(|n| self.get(m, n)))
    }

    /// `Σ_{μ<ν} |P^{μν}|²`.
    pub fn norm_sq(&self) -> T {
        self.c.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            c: core::array::from_fn(|k| self.c[k] + o.c[k]),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            c: core::array::from_fn(|k| self.c[k] - o.c[k]),
        }
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self { c: self.c.map(|z| z * s) }
    }

    /// Full contraction `Σ_{μν} A^{μν} conj(B^{μν})` over all ordered pairs.
    pub fn contract_conj(&self, other: &Self) -> Cx<T> {
        let two = lit::<T>(2.0);
        self.c.iter().zip(other.c.iter()).fold(czero(), |acc, (a, b)| acc + *a * b.conj()) * two
    }

    /// Full contraction `Σ_{μν} A^{μν} B^{μν}`.
    pub fn contract(&self, other: &Self) -> Cx<T> {
        let two = lit::<T>(2.0);
        self.c.iter().zip(other.c.iter()).fold(czero(), |acc, (a, b)| acc + *a * *b) * two
    }

    /// `(P v)^μ = P^{μν} v_ν`.
    pub fn apply(&self, v: &Vec4<T>) -> Vec4<T> {
        linalg::matvec(&self.matrix(), v)
    }
}

/// `P^{μν} = Z^μW^ν − Z^νW^μ`.
pub fn plucker<T: Real>(pair: &TwistorPair<T>) -> Bivector<T> {
    let (z, w) = (&pair.z, &pair.w);
    Bivector {
        c: PAIRS.map(|(m, n)| z[m] * w[n] - z[n] * w[m]),
    }
}

/// `P¹²P³⁴ − P¹³P²⁴ + P²³P¹⁴`; zero exactly for separable bivectors.
pub fn plucker_residual<T: Real>(p: &Bivector<T>) -> Cx<T> {
    let [p12, p13, p14, p23, p24, p34] = p.c;
    p12 * p34 - p13 * p24 + p23 * p14
}

/// Whether the residual is within `1e-12·‖P‖²`.
pub fn is_separable<T: Real>(p: &Bivector<T>) -> bool {
    plucker_residual(p).norm() <= tol::<T>(1e-12) * p.norm_sq()
}

pub fn hodge_dual<T: Real>(p: &Bivector<T>) -> Bivector<T> {
    let [p12, p13, p14, p23, p24, p34] = p.c;
    Bivector {
        c: [p34, -p24, p23, p14, -p13, p12],
    }
}

pub fn q_form<T: Real>(a: &Bivector<T>, b: &Bivector<T>) -> Cx<T> {
    let [a12, a13, a14, a23, a24, a34] = a.c;
    let [b12, b13, b14, b23, b24, b34] = b.c;
    let s = a12 * b34 + a34 * b12 - a13 * b24 - a24 * b13 + a14 * b23 + a23 * b14;
    s * lit::<T>(2.0)
}

/// A pair `(Z', W')` with `Z'∧W' = P`, for nonzero separable `P`.
pub fn plane_of<T: Real>(p: &Bivector<T>) -> Option<TwistorPair<T>> {
    let (k, _) = p
        .c
        .iter()
        .enumerate()
        .fold((0, T::zero()), |best, (k, z)| if z.norm() > best.1 { (k, z.norm()) } else { best });
    let pivot = p.c[k];
    if pivot.norm() == T::zero() {
        return None;
    }
    let (i, j) = PAIRS[k];
    let m = p.matrix();
    let col = |c: usize| -> Vec4<T> { core::array::from_fn(|r| m[r][c]) };
    let zi = col(i).map(|x| x / pivot);
    Some(TwistorPair::new(zi, col(j)))
}

/// Outcome of a plane-intersection test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Intersection<T: Real> {
    /// `Q(P₁, P₂)`.
    pub q: Cx<T>,
    /// Decision from `|Q| ≤ 1e-10·‖P₁‖‖P₂‖`.
    pub by_q: bool,
    /// `4 − rank[Z₁, W₁, Z₂, W₂]`.
    pub dimension: usize,
}

impl<T: Real> Intersection<T> {
    /// Whether the Q-criterion and the rank oracle agree.
    pub fn consistent(&self) -> bool {
        self.by_q == (self.dimension > 0)
    }
}

pub fn planes_intersect<T: Real>(first: &TwistorPair<T>, second: &TwistorPair<T>) -> Result<Intersection<T>> {
    if first.is_degenerate() || second.is_degenerate() {
        return Err(Error::DegeneratePair);
    }
    let (p1, p2) = (plucker(first), plucker(second));
    let q = q_form(&p1, &p2);
    let by_q = q.norm() <= tol::<T>(1e-10) * p1.norm() * p2.norm();
    Ok(Intersection {
        q,
        by_q,
        dimension: intersection_dimension(first, second),
    })
}

/// Rank oracle `4 − rank[Z₁, W₁, Z₂, W₂]` (singular values above `1e-10·σ_max`).
pub fn intersection_dimension<T: Real>(first: &TwistorPair<T>, second: &TwistorPair<T>) -> usize {
    let stack: Mat4<T> = core::array::from_fn(|m| [first.z[m], first.w[m], second.z[m], second.w[m]]);
    4 - linalg::rank(&stack, tol::<T>(1e-10))
}

fn totally_null_with<T: Real>(pair: &TwistorPair<T>, sign: T, tolerance: T) -> bool {
    if pair.is_degenerate() {
        return false;
    }
    let p = plucker(pair);
    let dual = hodge_dual(&p);
    let defect = dual.sub(&p.scale(Cx::new(sign, T::zero()))).norm();
    let nz = linalg::norm_sq(&pair.z);
    let nw = linalg::norm_sq(&pair.w);
    defect <= tolerance * p.norm()
        && bilinear_dot(&pair.z, &pair.w).norm() <= tolerance * (nz * nw).sqrt()
        && bilinear_dot(&pair.z, &pair.z).norm() <= tolerance * nz
        && bilinear_dot(&pair.w, &pair.w).norm() <= tolerance * nw
}

/// Self-dual plane spanned by orthogonal (hence null) vectors.
pub fn is_alpha_plane<T: Real>(pair: &TwistorPair<T>, tolerance: T) -> bool {
    totally_null_with(pair, T::one(), tolerance)
}

/// Anti-self-dual plane spanned by orthogonal (hence null) vectors.
pub fn is_beta_plane<T: Real>(pair: &TwistorPair<T>, tolerance: T) -> bool {
    totally_null_with(pair, -T::one(), tolerance)
}

/// Principal null directions of the plane `λZ + κW`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalDirections<T: Real> {
    /// `Z_ν P^{νμ} ± μ Z^μ` as printed.
    pub u_plus: Vec4<T>,
    pub u_minus: Vec4<T>,
    /// `P^{μν} W_ν ± μ W^μ` as printed.
    pub v_plus: Vec4<T>,
    pub v_minus: Vec4<T>,
    /// `arg[(Z·W)² − (Z·Z)(W·W)]` in (−π, π].
    pub phi: T,
    /// `½√τ_ABC`.
    pub eigen_magnitude: T,
    /// `μ = ½√τ_ABC e^{iφ/2}`.
    pub mu: Cx<T>,
    /// Unit null directions: two (`+` branch first) or one when degenerate.
    pub directions: Vec<Vec4<T>>,
    /// `P^{μν}D_ν = eigenvalue · D^μ` for each entry of `directions`.
    pub eigenvalues: Vec<Cx<T>>,
    /// 1 for two distinct directions, 2 for a repeated one.
    pub multiplicity: u8,
}

fn unit<T: Real>(v: &Vec4<T>) -> Vec4<T> {
    let n = linalg::norm_sq(v).sqrt();
    v.map(|x| x / n)
}

pub fn principal_null_directions<T: Real>(pair: &TwistorPair<T>) -> Result<PrincipalDirections<T>> {
    if pair.is_degenerate() {
        return Err(Error::DegeneratePair);
    }
    let (z, w) = (&pair.z, &pair.w);
    let zz = bilinear_dot(z, z);
    let ww = bilinear_dot(w, w);
    let zw = bilinear_dot(z, w);
    let disc = zw * zw - zz * ww;
    let phi = principal_arg(disc);
    let half = lit::<T>(0.5);
    let mag = disc.norm().sqrt();
    let mu = Cx::from_polar(mag, phi * half);

    let p = plucker(pair);
    let pz = p.apply(z);
    let pw = p.apply(w);
    let u_plus: Vec4<T> = core::array::from_fn(|m| -pz[m] + mu * z[m]);
    let u_minus: Vec4<T> = core::array::from_fn(|m| -pz[m] - mu * z[m]);
    let v_plus: Vec4<T> = core::array::from_fn(|m| pw[m] + mu * w[m]);
    let v_minus: Vec4<T> = core::array::from_fn(|m| pw[m] - mu * w[m]);

    let scale = pair.norm_sq();
    let pick = |a: &Vec4<T>, b: &Vec4<T>| {
        if linalg::norm_sq(a) >= linalg::norm_sq(b) {
            *a
        } else {
            *b
        }
    };
    let (directions, eigenvalues, multiplicity) = if disc.norm() > tol::<T>(1e-12) * scale * scale {
        // U_s and V_{-s} span the same line; P U_s = −sμ U_s.
        let plus = unit(&pick(&u_plus, &v_minus));
        let minus = unit(&pick(&u_minus, &v_plus));
        (vec![plus, minus], vec![-mu, mu], 1)
    } else {
        let best = [u_minus, v_plus, v_minus].iter().fold(u_plus, |acc, c| pick(&acc, c));
        let d = if linalg::norm_sq(&best) > tol::<T>(1e-24) * scale * scale {
            best
        } else {
            // totally null plane: every direction is null
            *z
        };
        (vec![unit(&d)], vec![czero()], 2)
    };

    Ok(PrincipalDirections {
        u_plus,
        u_minus,
        v_plus,
        v_minus,
        phi,
        eigen_magnitude: mag,
        mu,
        directions,
        eigenvalues,
        multiplicity,
    })
}

/// Whether the line through `P` and `∗P` lies in the Klein quadric: the
/// coefficients `Q(P,P)`, `Q(P,∗P)`, `Q(∗P,∗P)` all vanish within
/// `tolerance·‖P‖²`.
pub fn null_line_check<T: Real>(p: &Bivector<T>, tolerance: T) -> Result<bool> {
    let residual = plucker_residual(p).norm();
    if residual > tol::<T>(1e-12).max(tolerance) * p.norm_sq() {
        return Err(Error::NotSeparable(residual.to_f64().unwrap_or(f64::NAN)));
    }
    let dual = hodge_dual(p);
    let limit = tolerance * p.norm_sq();
    Ok([q_form(p, p), q_form(p, &dual), q_form(&dual, &dual)]
        .iter()
        .all(|c| c.norm() <= limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ci;
    fn cx(re: f64, im: f64) -> Cx<f64> {
        crate::scalar::cx(re, im)
    }
    use crate::state::PureState;
    use crate::twistor::to_twistor;

    const S2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn ghz() -> TwistorPair<f64> {
        to_twistor(&PureState::ghz(cx(S2, 0.0), cx(S2, 0.0)))
    }

    fn w3() -> TwistorPair<f64> {
        let k = cx(1.0 / 3f64.sqrt(), 0.0);
        to_twistor(&PureState::w(k, k, k))
    }

    fn psi_minus() -> TwistorPair<f64> {
        to_twistor(&PureState::w(cx(S2, 0.0), czero(), cx(S2, 0.0)))
    }

    fn psi_plus() -> TwistorPair<f64> {
        to_twistor(&PureState::w(cx(S2, 0.0), cx(S2, 0.0), czero()))
    }

    fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> f64 {
        let p = [i, j, k, l];
        let mut sign = 1.0;
        for a in 0..4 {
            for b in (a + 1)..4 {
                if p[a] == p[b] {
                    return 0.0;
                }
                if p[a] > p[b] {
                    sign = -sign;
                }
            }
        }
        sign
    }

    /// Four-index ε contractions written out in full.
    fn brute_dual(p: &Bivector<f64>) -> Mat4<f64> {
        let m = p.matrix();
        core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                let mut acc = czero();
                for c in 0..4 {
                    for d in 0..4 {
                        acc += m[c][d] * (0.5 * levi_civita(a, b, c, d));
                    }
                }
                acc
            })
        })
    }

    fn brute_q(p1: &Bivector<f64>, p2: &Bivector<f64>) -> Cx<f64> {
        let (a, b) = (p1.matrix(), p2.matrix());
        let mut acc = czero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        acc += a[i][j] * b[k][l] * levi_civita(i, j, k, l);
                    }
                }
            }
        }
        acc * 0.5
    }

    fn sample_pair(seed: u64) -> TwistorPair<f64> {
        let f = |k: u64| ((seed as f64 * 0.7548776662 + k as f64 * 0.5698402909).fract() - 0.5) * 2.0;
        TwistorPair::new(
            core::array::from_fn(|m| cx(f(m as u64), f(m as u64 + 4))),
            core::array::from_fn(|m| cx(f(m as u64 + 8), f(m as u64 + 12))),
        )
    }

    #[test]
    fn plucker_examples() {
        let p = plucker(&ghz());
        let c = p.components();
        assert!((c[5] - ci::<f64>() * 0.5).norm() < 1e-15);
        assert!(c[..5].iter().all(|z| z.norm() < 1e-16));

        let p = plucker(&psi_minus());
        let c = p.components();
        assert!((c[1] - cx(-0.25, 0.0)).norm() < 1e-15);
        assert!((c[2] - cx(0.0, 0.25)).norm() < 1e-15);
        assert!((c[3] - cx(0.0, -0.25)).norm() < 1e-15);
        assert!((c[4] - cx(-0.25, 0.0)).norm() < 1e-15);

        let v = sample_pair(3).z;
        assert_eq!(plucker(&TwistorPair::new(v, v)).norm_sq(), 0.0);
    }

    #[test]
    fn residual_examples() {
        assert!(plucker_residual(&plucker(&sample_pair(1))).norm() < 1e-15);
        let o = cx(1.0, 0.0);
        let z = czero();
        let p = Bivector::from_components([o, z, z, z, z, o]);
        assert_eq!(plucker_residual(&p), o);
        assert!(!is_separable(&p));
        assert_eq!(plucker_residual(&plucker(&ghz())).norm(), 0.0);
    }

    #[test]
    fn dual_matches_epsilon_contraction() {
        for seed in 0..20 {
            let p = plucker(&sample_pair(seed)).add(&Bivector::from_components(core::array::from_fn(|k| cx(k as f64, 0.3))));
            let d = hodge_dual(&p).matrix();
            let oracle = brute_dual(&p);
            for a in 0..4 {
                for b in 0..4 {
                    assert!((d[a][b] - oracle[a][b]).norm() < 1e-14);
                }
            }
            assert_eq!(hodge_dual(&hodge_dual(&p)), p);
            let other = plucker(&sample_pair(seed + 100));
            assert!((q_form(&p, &other) - brute_q(&p, &other)).norm() < 1e-13);
            assert!((q_form(&p, &p) - plucker_residual(&p) * 4.0).norm() < 1e-13);
        }
    }

    #[test]
    fn dual_examples() {
        let d = hodge_dual(&plucker(&ghz()));
        assert!((d.components()[0] - ci::<f64>() * 0.5).norm() < 1e-15);
        assert!(d.components()[1..].iter().all(|z| z.norm() < 1e-16));
        let p = plucker(&psi_minus());
        assert!(hodge_dual(&p).add(&p).norm() < 1e-15);
        let p = plucker(&psi_plus());
        assert!(hodge_dual(&p).sub(&p).norm() < 1e-15);
    }

    #[test]
    fn q_form_examples() {
        let p = plucker(&ghz());
        let q = q_form(&p, &hodge_dual(&p));
        assert!((q - cx(-0.5, 0.0)).norm() < 1e-15);
        let p = plucker(&w3());
        assert!(q_form(&p, &hodge_dual(&p)).norm() < 1e-15);
        assert!(q_form(&p, &p).norm() < 1e-15);
    }

    #[test]
    fn plane_factorization() {
        for seed in 0..10 {
            let p = plucker(&sample_pair(seed));
            let f = plane_of(&p).unwrap();
            assert!(plucker(&f).sub(&p).norm() < 1e-13 * p.norm());
        }
        assert!(plane_of(&Bivector::<f64>::zero()).is_none());
    }

    #[test]
    fn intersection_examples() {
        let g = ghz();
        let hit = planes_intersect(&g, &g).unwrap();
        assert!(hit.by_q && hit.dimension == 2);

        let dual = plane_of(&hodge_dual(&plucker(&g))).unwrap();
        let hit = planes_intersect(&g, &dual).unwrap();
        assert!(!hit.by_q && hit.dimension == 0);
        assert!((hit.q.norm() - 0.5).abs() < 1e-12);

        let w = w3();
        let dual = plane_of(&hodge_dual(&plucker(&w))).unwrap();
        let hit = planes_intersect(&w, &dual).unwrap();
        assert!(hit.by_q && hit.dimension == 1 && hit.consistent());

        let deg = TwistorPair::new(g.z, g.z);
        assert_eq!(planes_intersect(&deg, &g), Err(Error::DegeneratePair));
    }

    #[test]
    fn plane_predicates() {
        assert!(is_beta_plane(&psi_minus(), 1e-12));
        assert!(!is_alpha_plane(&psi_minus(), 1e-12));
        assert!(is_alpha_plane(&psi_plus(), 1e-12));
        assert!(!is_beta_plane(&psi_plus(), 1e-12));
        assert!(!is_alpha_plane(&ghz(), 1e-12) && !is_beta_plane(&ghz(), 1e-12));
    }

    #[test]
    fn ghz_principal_directions() {
        let g = ghz();
        let pd = principal_null_directions(&g).unwrap();
        assert!(pd.phi.abs() < 1e-15);
        assert!((pd.mu - cx(0.5, 0.0)).norm() < 1e-15);
        let p = plucker(&g);
        let pz = p.apply(&g.z);
        let pw = p.apply(&g.w);
        for m in 0..4 {
            assert!((pz[m] - g.z[m] * 0.5).norm() < 1e-15);
            assert!((pw[m] + g.w[m] * 0.5).norm() < 1e-15);
        }
        assert_eq!(pd.multiplicity, 1);
        for (d, ev) in pd.directions.iter().zip(pd.eigenvalues.iter()) {
            let pd_ = p.apply(d);
            for m in 0..4 {
                assert!((pd_[m] - *ev * d[m]).norm() < 1e-14);
            }
            assert!(bilinear_dot(d, d).norm() < 1e-14);
        }
        // the literal formulas: U₊ and V₊ vanish, U₋ = −Z, V₋ = −W
        assert!(linalg::norm_sq(&pd.u_plus) < 1e-30 && linalg::norm_sq(&pd.v_plus) < 1e-30);
        assert!((linalg::norm_sq(&pd.u_minus) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn w_principal_direction_is_repeated() {
        let w = w3();
        let pd = principal_null_directions(&w).unwrap();
        assert_eq!(pd.multiplicity, 2);
        assert_eq!(pd.directions.len(), 1);
        assert!(linalg::norm_sq(&pd.v_plus) < 1e-30 && linalg::norm_sq(&pd.v_minus) < 1e-30);
        let d = &pd.directions[0];
        assert!(bilinear_dot(d, d).norm() < 1e-14);
    }

    #[test]
    fn generic_directions_are_null_and_independent() {
        for seed in 0..50 {
            let pair = sample_pair(seed);
            let pd = principal_null_directions(&pair).unwrap();
            assert_eq!(pd.directions.len(), 2);
            let p = plucker(&pair);
            for (d, ev) in pd.directions.iter().zip(pd.eigenvalues.iter()) {
                assert!(bilinear_dot(d, d).norm() < 1e-12);
                let pd_ = p.apply(d);
                let res: f64 = (0..4).map(|m| (pd_[m] - *ev * d[m]).norm_sqr()).sum::<f64>().sqrt();
                assert!(res < 1e-12 * ev.norm().max(1.0), "seed {seed}: {res}");
            }
            let two = TwistorPair::new(pd.directions[0], pd.directions[1]);
            assert!(!two.is_degenerate());
        }
    }

    #[test]
    fn null_line_examples() {
        assert!(null_line_check(&plucker(&w3()), 1e-10).unwrap());
        assert!(!null_line_check(&plucker(&ghz()), 1e-10).unwrap());
        assert!(null_line_check(&plucker(&psi_minus()), 1e-10).unwrap());
        let o = cx(1.0, 0.0);
        let z = czero();
        let bad = Bivector::from_components([o, z, z, z, z, o]);
        assert!(matches!(null_line_check(&bad, 1e-10), Err(Error::NotSeparable(_))));
    }
}
