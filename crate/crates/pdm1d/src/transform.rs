//! Coordinate transformation between the variable-mass and constant-mass
//! pictures.
//!
//! The change of variables
//!
//! ```text
//! z̃(z) = (1/√m₀) ∫ √m(t) dt,     ψ(z) = ν(z) ψ̃(z̃),     ν = (m/m₀)^{1/4}
//! ```
//!
//! turns the divergence-form variable-mass equation into a constant-mass one
//! whose potential is `V_eff(z) + V_m(z)` read along the map, where
//!
//! ```text
//! V_m = (ħ²/32m³) (7m′² − 4mm″)
//! ```
//!
//! is the mass-generated part. Choosing `V_eff = V_ES(z̃) − V_m` for an
//! exactly solvable `V_ES` therefore hands the variable-mass problem the
//! spectrum of `V_ES`; that composition is [`effective_from_solvable`].
//!
//! Since m > 0 the map is strictly increasing, and ν² equals dz̃/dz, so the
//! substitution preserves L² norms on corresponding intervals.

use crate::effpot::{PotentialModel, PotentialTag};
use crate::error::{Error, Result};
use crate::model::{mass_eval, MassProfile, UnitSystem};
use crate::numerics::quadrature;
use crate::numerics::rootfind::monotone_solve;
use crate::numerics::sampled_integral;
use crate::numerics::spline::CubicSpline;

/// Inversion accuracy: |forward(inverse(z̃)) − z̃| below this.
pub const INVERSE_TOL: f64 = 1e-12;

/// Strictly increasing map between the physical coordinate and the
/// constant-mass coordinate of a profile.
///
/// Closed forms are used for the shipped profiles; anything else falls back
/// to adaptive quadrature of √(m/m₀) (and monotone root finding for the
/// inverse). The integration constant is fixed per family: the exponential
/// map sends the vanishing-mass end to z̃ = 0, every other family maps
/// z = 0 to z̃ = 0.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    profile: MassProfile,
    units: UnitSystem,
    analytic: bool,
}

impl CoordinateMap {
    pub fn new(profile: MassProfile, units: UnitSystem) -> Self {
        let analytic = !matches!(profile, MassProfile::UserDefined { .. });
        CoordinateMap {
            profile,
            units,
            analytic,
        }
    }

    pub fn profile(&self) -> &MassProfile {
        &self.profile
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    /// Whether the forward map has a closed form.
    pub fn is_analytic(&self) -> bool {
        self.analytic
    }

    /// dz̃/dz = √(m(z)/m₀) — the local stretching of the map.
    pub fn slope(&self, z: f64) -> Result<f64> {
        Ok((mass_eval(&self.profile, z)?.m / self.units.m0).sqrt())
    }
}

/// The mapped coordinate z̃ at z.
pub fn forward_map(map: &CoordinateMap, z: f64) -> Result<f64> {
    let m0 = map.units.m0;
    match &map.profile {
        MassProfile::Constant { m0: mp } => Ok((mp / m0).sqrt() * z),
        MassProfile::Exponential { m0: mp, lambda } => {
            if *lambda == 0.0 {
                return Ok((mp / m0).sqrt() * z);
            }
            Ok((mp / m0).sqrt() * (2.0 / lambda) * (0.5 * lambda * z).exp())
        }
        MassProfile::RationalSquared { m0: mp, a, lambda_bar } => {
            let q = lambda_bar * z;
            Ok((mp / m0).sqrt() * (z + (a - 1.0) / lambda_bar * q.atan()))
        }
        MassProfile::UserDefined { .. } => {
            let profile = map.profile.clone();
            quadrature::integrate(
                move |t| {
                    mass_eval(&profile, t)
                        .map(|p| (p.m / m0).sqrt())
                        .unwrap_or(f64::NAN)
                },
                0.0,
                z,
                quadrature::DEFAULT_TOL,
            )
        }
    }
}

/// The physical coordinate z with forward_map(z) = z̃.
pub fn inverse_map(map: &CoordinateMap, zt: f64) -> Result<f64> {
    let m0 = map.units.m0;
    match &map.profile {
        MassProfile::Constant { m0: mp } => Ok(zt / (mp / m0).sqrt()),
        MassProfile::Exponential { m0: mp, lambda } => {
            if *lambda == 0.0 {
                return Ok(zt / (mp / m0).sqrt());
            }
            let scaled = lambda * zt / (2.0 * (mp / m0).sqrt());
            if scaled <= 0.0 {
                return Err(Error::domain(format!(
                    "z̃ = {zt} lies outside the image of the exponential map (λ = {lambda})"
                )));
            }
            Ok(2.0 / lambda * scaled.ln())
        }
        _ => {
            let fwd = |z: f64| forward_map(map, z).unwrap_or(f64::NAN);
            let slope = |z: f64| map.slope(z).unwrap_or(f64::NAN);
            monotone_solve(fwd, slope, zt, 0.0, INVERSE_TOL)
        }
    }
}

/// The wavefunction prefactor ν(z) = (m(z)/m₀)^{1/4}.
pub fn nu_factor(map: &CoordinateMap, z: f64) -> Result<f64> {
    Ok((mass_eval(&map.profile, z)?.m / map.units.m0).powf(0.25))
}

/// The mass-generated potential V_m = (ħ²/32m³)(7m′² − 4mm″).
pub fn mass_term_potential(profile: &MassProfile, z: f64, units: &UnitSystem) -> Result<f64> {
    let pt = mass_eval(profile, z)?;
    let h2 = units.hbar * units.hbar;
    Ok(h2 / (32.0 * pt.m.powi(3)) * (7.0 * pt.dm * pt.dm - 4.0 * pt.m * pt.d2m))
}

/// Compose a solvable constant-mass potential into the variable-mass picture:
/// z ↦ V_ES(z̃(z)) − V_m(z).
///
/// Feeding the result to the variable-mass solver reproduces the spectrum of
/// `V_ES` in the constant-mass picture (on the image of the map, with the
/// boundary conditions the map induces there).
pub fn effective_from_solvable(v_es: &PotentialModel, map: &CoordinateMap) -> PotentialModel {
    let v = v_es.clone();
    let map = map.clone();
    PotentialModel::new(
        PotentialTag::Effective,
        v_es.params().clone(),
        move |z| match (forward_map(&map, z), mass_term_potential(&map.profile, z, &map.units)) {
            (Ok(zt), Ok(vm)) => v.eval(zt) - vm,
            _ => f64::NAN,
        },
    )
}

/// A wavefunction carried from the constant-mass picture to the physical one.
#[derive(Clone, Debug)]
pub struct MappedWavefunction {
    /// ψ(z) = ν(z)·ψ̃(z̃(z)) on the requested grid.
    pub values: Vec<f64>,
    /// ∫|ψ|² dz over the grid (should match the input-side norm).
    pub norm_squared: f64,
}

/// Map grid samples of ψ̃(z̃) to ψ(z) = ν(z)·ψ̃(z̃(z)) on `z_grid`.
///
/// ψ̃ between samples comes from a C² cubic spline; any z whose image leaves
/// the sampled z̃ range is an extrapolation error. If ψ̃ is normalized on its
/// own grid, the output norm is 1 up to interpolation and quadrature error,
/// because ν² is exactly the Jacobian of the map.
pub fn map_wavefunction(
    zt_grid: &[f64],
    psi_tilde: &[f64],
    map: &CoordinateMap,
    z_grid: &[f64],
) -> Result<MappedWavefunction> {
    let spline = CubicSpline::new(zt_grid, psi_tilde)?;
    let mut values = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let zt = forward_map(map, z)?;
        if !spline.covers(zt) {
            return Err(Error::domain(format!(
                "z = {z} maps to z̃ = {zt}, beyond the sampled support [{}, {}]",
                zt_grid[0],
                zt_grid[zt_grid.len() - 1]
            )));
        }
        values.push(nu_factor(map, z)? * spline.eval(zt)?);
    }
    let density: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm_squared = sampled_integral(z_grid, &density);
    Ok(MappedWavefunction {
        values,
        norm_squared,
    })
}
