//! Physical configuration: unit system, kinetic-operator ordering parameters,
//! named Hamiltonian presets, and mass profiles with analytic derivatives.
//!
//! The single-band kinetic operator for a carrier whose mass varies with
//! position is a one-parameter-family ambiguity: with T ∝ mᵅ p mᵝ p mᵞ
//! (symmetrized), any triple with α + β + γ = −1 is a legitimate Hermitian
//! choice, and the literature presets differ only in that triple. Everything
//! downstream keeps ħ and the reference mass m₀ symbolic so physical units
//! can be restored by configuration.

use crate::error::{Error, Result};
use crate::numerics::{central_derivative, central_second_derivative};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Tolerance on the ordering-parameter constraint α + β + γ = −1.
pub const ORDERING_SUM_TOL: f64 = 1e-12;

/// Relative tolerance for the analytic-vs-finite-difference derivative check.
pub const DERIVATIVE_CHECK_TOL: f64 = 1e-6;

/// Action and mass scales. Defaults are dimensionless ħ = m₀ = 1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct UnitSystem {
    pub hbar: f64,
    pub m0: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem { hbar: 1.0, m0: 1.0 }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, m0: f64) -> Result<Self> {
        if !(hbar > 0.0) || !(m0 > 0.0) {
            return Err(Error::config(format!(
                "unit scales must be positive: hbar={hbar}, m0={m0}"
            )));
        }
        Ok(UnitSystem { hbar, m0 })
    }

    /// ħ²/2m₀, the constant-mass kinetic prefactor.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.m0)
    }
}

/// The kinetic-ordering triple (α, β, γ) with α + β + γ = −1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingParameters {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl OrderingParameters {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let sum = alpha + beta + gamma;
        if (sum + 1.0).abs() > ORDERING_SUM_TOL {
            return Err(Error::config(format!(
                "ordering parameters must satisfy alpha + beta + gamma = -1; got sum = {sum}"
            )));
        }
        Ok(OrderingParameters { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// α + γ — the coefficient multiplying m·m″ in the modification term.
    pub fn sum_outer(&self) -> f64 {
        self.alpha + self.gamma
    }

    /// αγ + α + γ — the coefficient multiplying m′² in the modification term.
    pub fn cross_outer(&self) -> f64 {
        self.alpha * self.gamma + self.alpha + self.gamma
    }
}

/// Named orderings from the single-band effective-mass literature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianPreset {
    /// (0, −1, 0)
    BenDanielDuke,
    /// (−1, 0, 0)
    GoraWilliams,
    /// (−1/2, 0, −1/2)
    ZhuKroemer,
    /// (0, −1/2, −1/2)
    LiKuhn,
}

impl HamiltonianPreset {
    pub const ALL: [HamiltonianPreset; 4] = [
        HamiltonianPreset::BenDanielDuke,
        HamiltonianPreset::GoraWilliams,
        HamiltonianPreset::ZhuKroemer,
        HamiltonianPreset::LiKuhn,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            HamiltonianPreset::BenDanielDuke => "BDD",
            HamiltonianPreset::GoraWilliams => "G-W",
            HamiltonianPreset::ZhuKroemer => "Z-K",
            HamiltonianPreset::LiKuhn => "L-K",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "bdd" | "ben_daniel_duke" | "bendanielduke" => Ok(HamiltonianPreset::BenDanielDuke),
            "gw" | "g-w" | "gora_williams" | "gorawilliams" | "bastard" => {
                Ok(HamiltonianPreset::GoraWilliams)
            }
            "zk" | "z-k" | "zhu_kroemer" | "zhukroemer" => Ok(HamiltonianPreset::ZhuKroemer),
            "lk" | "l-k" | "li_kuhn" | "likuhn" => Ok(HamiltonianPreset::LiKuhn),
            other => Err(Error::config(format!("unknown Hamiltonian preset '{other}'"))),
        }
    }
}

/// Ordering triple for a named preset.
pub fn ordering_params_for(preset: HamiltonianPreset) -> OrderingParameters {
    let (a, b, g) = match preset {
        HamiltonianPreset::BenDanielDuke => (0.0, -1.0, 0.0),
        HamiltonianPreset::GoraWilliams => (-1.0, 0.0, 0.0),
        HamiltonianPreset::ZhuKroemer => (-0.5, 0.0, -0.5),
        HamiltonianPreset::LiKuhn => (0.0, -0.5, -0.5),
    };
    OrderingParameters::new(a, b, g).expect("preset triples satisfy the sum rule")
}

/// Mass and its first two spatial derivatives at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassPoint {
    pub m: f64,
    pub dm: f64,
    pub d2m: f64,
}

type MassFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A positive mass function m(z) with analytic first and second derivatives.
///
/// Closed-form variants cover the shipped applications; `UserDefined` must
/// supply its own derivatives (no automatic differentiation) and is validated
/// against central finite differences by [`validate_derivatives`].
#[derive(Clone)]
pub enum MassProfile {
    /// m(z) = m₀ everywhere.
    Constant { m0: f64 },
    /// m(z) = m₀ e^{λz}; λ may take either sign.
    Exponential { m0: f64, lambda: f64 },
    /// m(z) = m₀ ((a + q²)/(1 + q²))² with q = λ̄ z; a > 0, λ̄ > 0.
    /// Bounded between m₀ and a²m₀, approaching m₀ at a → 1.
    RationalSquared { m0: f64, a: f64, lambda_bar: f64 },
    UserDefined {
        m: MassFn,
        dm: MassFn,
        d2m: MassFn,
    },
}

impl std::fmt::Debug for MassProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MassProfile::Constant { m0 } => write!(f, "Constant {{ m0: {m0} }}"),
            MassProfile::Exponential { m0, lambda } => {
                write!(f, "Exponential {{ m0: {m0}, lambda: {lambda} }}")
            }
            MassProfile::RationalSquared { m0, a, lambda_bar } => {
                write!(f, "RationalSquared {{ m0: {m0}, a: {a}, lambda_bar: {lambda_bar} }}")
            }
            MassProfile::UserDefined { .. } => write!(f, "UserDefined {{ .. }}"),
        }
    }
}

impl MassProfile {
    pub fn constant(m0: f64) -> Result<Self> {
        if !(m0 > 0.0) {
            return Err(Error::config(format!("constant mass must be positive, got {m0}")));
        }
        Ok(MassProfile::Constant { m0 })
    }

    pub fn exponential(m0: f64, lambda: f64) -> Result<Self> {
        if !(m0 > 0.0) {
            return Err(Error::config(format!("mass scale must be positive, got {m0}")));
        }
        if !lambda.is_finite() {
            return Err(Error::config("exponential rate must be finite"));
        }
        Ok(MassProfile::Exponential { m0, lambda })
    }

    pub fn rational_squared(m0: f64, a: f64, lambda_bar: f64) -> Result<Self> {
        if !(m0 > 0.0) {
            return Err(Error::config(format!("mass scale must be positive, got {m0}")));
        }
        if !(a > 0.0) {
            return Err(Error::config(format!("profile parameter a must be positive, got {a}")));
        }
        if !(lambda_bar > 0.0) {
            return Err(Error::config(format!(
                "width parameter lambda_bar must be positive, got {lambda_bar}"
            )));
        }
        Ok(MassProfile::RationalSquared { m0, a, lambda_bar })
    }

    pub fn user_defined(
        m: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dm: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2m: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        MassProfile::UserDefined {
            m: Arc::new(m),
            dm: Arc::new(dm),
            d2m: Arc::new(d2m),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, MassProfile::Constant { .. })
    }
}

/// Evaluate m, m′, m″ at z.
pub fn mass_eval(profile: &MassProfile, z: f64) -> Result<MassPoint> {
    if !z.is_finite() {
        return Err(Error::domain(format!("mass evaluation at non-finite z = {z}")));
    }
    match profile {
        MassProfile::Constant { m0 } => Ok(MassPoint {
            m: *m0,
            dm: 0.0,
            d2m: 0.0,
        }),
        MassProfile::Exponential { m0, lambda } => {
            let m = m0 * (lambda * z).exp();
            Ok(MassPoint {
                m,
                dm: lambda * m,
                d2m: lambda * lambda * m,
            })
        }
        MassProfile::RationalSquared { m0, a, lambda_bar } => {
            let q = lambda_bar * z;
            let q2 = q * q;
            let p = 1.0 + q2;
            let d = a + q2;
            let g = d / p;
            let m = m0 * g * g;
            // dm/dq = 4 q (1-a) D / P³ ;  d²m/dq² = 4 (1-a) (DP + 2q²P - 6q²D) / P⁴
            let dm_dq = 4.0 * q * (1.0 - a) * d / p.powi(3);
            let d2m_dq2 = 4.0 * (1.0 - a) * (d * p + 2.0 * q2 * p - 6.0 * q2 * d) / p.powi(4);
            Ok(MassPoint {
                m,
                dm: m0 * lambda_bar * dm_dq,
                d2m: m0 * lambda_bar * lambda_bar * d2m_dq2,
            })
        }
        MassProfile::UserDefined { m, dm, d2m } => {
            let mv = m(z);
            if !(mv > 0.0) {
                return Err(Error::domain(format!(
                    "user-defined mass is non-positive at z = {z}: m = {mv}"
                )));
            }
            Ok(MassPoint {
                m: mv,
                dm: dm(z),
                d2m: d2m(z),
            })
        }
    }
}

/// Check the profile's analytic derivatives against five-point central
/// differences at each point of `grid`, to relative tolerance
/// [`DERIVATIVE_CHECK_TOL`]. Returns the worst relative deviation.
pub fn validate_derivatives(profile: &MassProfile, grid: &[f64]) -> Result<f64> {
    let f = |z: f64| mass_eval(profile, z).map(|p| p.m).unwrap_or(f64::NAN);
    let mut worst: f64 = 0.0;
    for &z in grid {
        let pt = mass_eval(profile, z)?;
        let h = 1e-4 * z.abs().max(1.0);
        let scale = pt.m.abs().max(1.0);
        let fd1 = central_derivative(f, z, h);
        let fd2 = central_second_derivative(f, z, h);
        worst = worst.max((pt.dm - fd1).abs() / scale.max(pt.dm.abs()));
        worst = worst.max((pt.d2m - fd2).abs() / scale.max(pt.d2m.abs()));
    }
    if worst > DERIVATIVE_CHECK_TOL {
        return Err(Error::domain(format!(
            "profile derivatives disagree with finite differences: worst relative deviation {worst:.3e}"
        )));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_table() {
        let bdd = ordering_params_for(HamiltonianPreset::BenDanielDuke);
        assert_eq!((bdd.alpha(), bdd.beta(), bdd.gamma()), (0.0, -1.0, 0.0));
        let gw = ordering_params_for(HamiltonianPreset::GoraWilliams);
        assert_eq!((gw.alpha(), gw.beta(), gw.gamma()), (-1.0, 0.0, 0.0));
        let zk = ordering_params_for(HamiltonianPreset::ZhuKroemer);
        assert_eq!((zk.alpha(), zk.beta(), zk.gamma()), (-0.5, 0.0, -0.5));
        let lk = ordering_params_for(HamiltonianPreset::LiKuhn);
        assert_eq!((lk.alpha(), lk.beta(), lk.gamma()), (0.0, -0.5, -0.5));
        for p in HamiltonianPreset::ALL {
            let o = ordering_params_for(p);
            assert!((o.alpha() + o.beta() + o.gamma() + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_preset_name_rejected() {
        assert!(HamiltonianPreset::from_name("von_roos").is_err());
        assert!(HamiltonianPreset::from_name("zhu_kroemer").is_ok());
    }

    #[test]
    fn ordering_sum_constraint_enforced() {
        assert!(OrderingParameters::new(0.0, -1.0, 0.0).is_ok());
        assert!(OrderingParameters::new(0.0, -1.0, 1e-11).is_err());
        // just inside tolerance
        assert!(OrderingParameters::new(0.0, -1.0, 5e-13).is_ok());
    }

    #[test]
    fn mass_eval_constant() {
        let p = MassProfile::constant(1.0).unwrap();
        let pt = mass_eval(&p, 3.7).unwrap();
        assert_eq!((pt.m, pt.dm, pt.d2m), (1.0, 0.0, 0.0));
    }

    #[test]
    fn mass_eval_exponential_at_origin() {
        let p = MassProfile::exponential(1.0, 1.0).unwrap();
        let pt = mass_eval(&p, 0.0).unwrap();
        assert_eq!((pt.m, pt.dm, pt.d2m), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rational_profile_reduces_to_constant_at_a_one() {
        let p = MassProfile::rational_squared(1.0, 1.0, 1.3).unwrap();
        for z in [-4.0, -0.5, 0.0, 0.7, 11.0] {
            let pt = mass_eval(&p, z).unwrap();
            assert_eq!(pt.m, 1.0);
            assert_eq!(pt.dm, 0.0);
            assert_eq!(pt.d2m, 0.0);
        }
    }

    #[test]
    fn rational_profile_second_derivative_at_origin() {
        // m''(0) = 4 m0 λ̄² a (1-a)
        let p = MassProfile::rational_squared(1.0, 2.0, 1.0).unwrap();
        let pt = mass_eval(&p, 0.0).unwrap();
        assert_eq!(pt.m, 4.0);
        assert_eq!(pt.dm, 0.0);
        assert!((pt.d2m - (-8.0)).abs() < 1e-14);
    }

    #[test]
    fn rational_parameter_validation() {
        assert!(MassProfile::rational_squared(1.0, 0.0, 1.0).is_err());
        assert!(MassProfile::rational_squared(1.0, -2.0, 1.0).is_err());
        assert!(MassProfile::rational_squared(1.0, 2.0, 0.0).is_err());
        assert!(MassProfile::rational_squared(1.0, 2.0, -1.0).is_err());
        assert!(MassProfile::rational_squared(1.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn derivative_validation_closed_forms() {
        let grid: Vec<f64> = (-20..=20).map(|i| i as f64 * 0.25).collect();
        for profile in [
            MassProfile::constant(0.8).unwrap(),
            MassProfile::exponential(1.0, 1.0).unwrap(),
            MassProfile::exponential(2.0, -0.6).unwrap(),
            MassProfile::rational_squared(1.0, 2.0, 1.0).unwrap(),
            MassProfile::rational_squared(0.5, 0.3, 2.2).unwrap(),
        ] {
            let worst = validate_derivatives(&profile, &grid).unwrap();
            assert!(worst <= DERIVATIVE_CHECK_TOL, "{profile:?}: {worst:.3e}");
        }
    }

    #[test]
    fn user_defined_negative_mass_is_domain_error() {
        let p = MassProfile::user_defined(|z| 1.0 - z, |_| -1.0, |_| 0.0);
        assert!(mass_eval(&p, 0.0).is_ok());
        assert!(matches!(mass_eval(&p, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn user_defined_bad_derivatives_fail_validation() {
        let p = MassProfile::user_defined(|z: f64| z.exp(), |z: f64| 1.5 * z.exp(), |z: f64| z.exp());
        let grid = [0.0, 0.5];
        assert!(validate_derivatives(&p, &grid).is_err());
    }
}
