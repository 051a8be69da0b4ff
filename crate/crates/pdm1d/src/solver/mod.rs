//! Finite-difference bound-state oracle.
//!
//! The divergence-form kinetic term −(ħ²/2) d/dz[(1/m) dψ/dz] is discretized
//! on a uniform grid with the inverse mass evaluated at half-grid midpoints:
//!
//! ```text
//! row i:  diag = (ħ²/2h²)(1/m_{i+½} + 1/m_{i−½}) + V(zᵢ)
//!         off  = −(ħ²/2h²)(1/m_{i+½})
//! ```
//!
//! which is symmetric by construction and second-order for smooth m. The box
//! is Dirichlet on both ends by default; the left end can instead carry a
//! Robin condition ψ′ = c·ψ for problems whose natural behaviour at a
//! soft (vanishing-mass) edge is a prescribed logarithmic derivative.

pub mod tridiag;

use crate::effpot::PotentialModel;
use crate::error::{Error, Result};
use crate::model::{mass_eval, MassProfile, UnitSystem};
use serde::{Deserialize, Serialize};

/// Uniform Dirichlet box: `n` interior points, spacing h = (zmax−zmin)/(n+1).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Grid {
    pub zmin: f64,
    pub zmax: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(zmin: f64, zmax: f64, n: usize) -> Result<Self> {
        if !(zmax > zmin) {
            return Err(Error::config(format!(
                "grid needs zmax > zmin, got [{zmin}, {zmax}]"
            )));
        }
        if n < 3 {
            return Err(Error::config("grid needs at least 3 interior points"));
        }
        Ok(Grid { zmin, zmax, n })
    }

    pub fn h(&self) -> f64 {
        (self.zmax - self.zmin) / (self.n as f64 + 1.0)
    }

    /// Interior node i (0-based), z = zmin + (i+1)h.
    pub fn node(&self, i: usize) -> f64 {
        self.zmin + (i as f64 + 1.0) * self.h()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

/// Boundary condition at the left box edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LeftBoundary {
    /// ψ(zmin) = 0.
    Dirichlet,
    /// ψ′(zmin) = c·ψ(zmin).
    Robin { log_derivative: f64 },
}

/// Eigenvalues, grid-sampled eigenfunctions, and per-state residual norms.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// Ascending bound-state energies.
    pub eigenvalues: Vec<f64>,
    /// Normalized so that h·Σψᵢ² = 1 for each state.
    pub eigenfunctions: Vec<Vec<f64>>,
    pub grid: Grid,
    /// ‖(H−E)ψ‖₂/‖ψ‖₂ per state, from the assembled matrix.
    pub residuals: Vec<f64>,
}

impl SpectrumResult {
    /// Number of interior sign changes of state k.
    pub fn sign_changes(&self, k: usize) -> usize {
        let v = &self.eigenfunctions[k];
        let scale = v.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let thresh = 1e-9 * scale;
        let mut count = 0;
        let mut last = 0.0f64;
        for &x in v {
            if x.abs() <= thresh {
                continue;
            }
            if last != 0.0 && x.signum() != last.signum() {
                count += 1;
            }
            last = x;
        }
        count
    }

    /// h·Σψ² for state k (should be 1).
    pub fn norm_squared(&self, k: usize) -> f64 {
        let h = self.grid.h();
        crate::numerics::accum::dot2(&self.eigenfunctions[k], &self.eigenfunctions[k]) * h
    }
}

struct Assembled {
    diag: Vec<f64>,
    off: Vec<f64>,
}

fn assemble(
    v_eff: &PotentialModel,
    profile: &MassProfile,
    grid: &Grid,
    units: &UnitSystem,
    left: LeftBoundary,
) -> Result<Assembled> {
    let n = grid.n;
    let h = grid.h();
    let kin = units.hbar * units.hbar / (2.0 * h * h);

    // inverse mass at half-grid points: im[i] = 1/m(zmin + (i+1/2)h), i = 0..n
    let mut im = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let z = grid.zmin + (i as f64 + 0.5) * h;
        im.push(1.0 / mass_eval(profile, z)?.m);
    }

    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for i in 0..n {
        let z = grid.node(i);
        let v = v_eff.eval(z);
        if !v.is_finite() {
            return Err(Error::domain(format!(
                "potential sample is not finite at z = {z}: {v}"
            )));
        }
        diag.push(kin * (im[i] + im[i + 1]) + v);
        if i + 1 < n {
            off.push(-kin * im[i + 1]);
        }
    }

    if let LeftBoundary::Robin { log_derivative: c } = left {
        // Fold the boundary node in as the ghost value ψ(zmin) = e^{−ch}·ψ₀,
        // exact for solutions growing like e^{cz} off the left edge. Only the
        // first diagonal changes, so the matrix stays symmetric; Dirichlet is
        // the e^{−ch} → 0 limit of the same row.
        diag[0] -= kin * im[0] * (-c * h).exp();
    }

    Ok(Assembled { diag, off })
}

fn thread_count() -> usize {
    std::env::var("PDM1D_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

/// Bound states of the variable-mass problem with effective potential `v_eff`.
pub fn solve_pdm(
    v_eff: &PotentialModel,
    profile: &MassProfile,
    grid: &Grid,
    k: usize,
    units: &UnitSystem,
) -> Result<SpectrumResult> {
    solve_pdm_with_boundary(v_eff, profile, grid, k, units, LeftBoundary::Dirichlet)
}

/// As [`solve_pdm`], with an explicit left boundary condition.
pub fn solve_pdm_with_boundary(
    v_eff: &PotentialModel,
    profile: &MassProfile,
    grid: &Grid,
    k: usize,
    units: &UnitSystem,
    left: LeftBoundary,
) -> Result<SpectrumResult> {
    if k > grid.n {
        return Err(Error::config(format!(
            "requested {k} states from a grid with {} interior points",
            grid.n
        )));
    }
    let asm = assemble(v_eff, profile, grid, units, left)?;
    let (values, mut vectors) =
        tridiag::eigenpairs_threaded(&asm.diag, &asm.off, k, thread_count())?;
    let mut residuals = Vec::with_capacity(k);
    for (lam, v) in values.iter().zip(vectors.iter()) {
        residuals.push(tridiag::residual_norm(&asm.diag, &asm.off, *lam, v));
    }
    // Normalize to h·Σψ² = 1.
    let h = grid.h();
    for v in vectors.iter_mut() {
        let norm = (crate::numerics::accum::dot2(v, v) * h).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(SpectrumResult {
        eigenvalues: values,
        eigenfunctions: vectors,
        grid: *grid,
        residuals,
    })
}

/// Constant-mass limit: the half-grid scheme degenerates to the standard
/// three-point Laplacian.
pub fn solve_constant_mass(
    v: &PotentialModel,
    grid: &Grid,
    k: usize,
    units: &UnitSystem,
) -> Result<SpectrumResult> {
    let profile = MassProfile::constant(units.m0)?;
    solve_pdm(v, &profile, grid, k, units)
}

/// The k smallest eigenvalues of a symmetric tridiagonal matrix.
pub fn tridiag_eigen(diag: &[f64], off: &[f64], k: usize) -> Result<Vec<f64>> {
    tridiag::eigenvalues(diag, off, k)
}

/// Pick a box and resolution adequate for the lowest k+1 states.
///
/// A coarse pre-solve estimates E_k; sides where the potential confines are
/// cut at the outermost classical turning point plus eight local decay
/// lengths, sides where it does not (mass-driven confinement) are extended
/// by doubling until E_k stops moving. The spacing resolves the shortest
/// local oscillation length by a factor of 20.
pub fn auto_domain(
    v_eff: &PotentialModel,
    profile: &MassProfile,
    k: usize,
    units: &UnitSystem,
) -> Result<Grid> {
    let mut zmin = -8.0f64;
    let mut zmax = 8.0f64;
    let coarse_n = 1200;
    let mut prev_ek: Option<f64> = None;
    let mut ek = f64::NAN;
    let mut confined = (false, false);
    let mut settled = false;

    for _ in 0..8 {
        let grid = Grid::new(zmin, zmax, coarse_n)?;
        let spec = solve_pdm(v_eff, profile, &grid, k + 1, units)?;
        ek = spec.eigenvalues[k];

        let samples = grid.nodes();
        let vals: Vec<f64> = samples.iter().map(|&z| v_eff.eval(z)).collect();
        let left_wall = vals.first().map(|&v| v > ek).unwrap_or(false);
        let right_wall = vals.last().map(|&v| v > ek).unwrap_or(false);
        confined = (left_wall, right_wall);
        if left_wall && right_wall {
            settled = true;
            break;
        }
        // Unconfined side(s): accept once E_k is stable under extension.
        // The scale floor keeps a free-particle spectrum (E → 0 like 1/L²)
        // from ever looking converged.
        if let Some(prev) = prev_ek {
            if (ek - prev).abs() <= 1e-6 * ek.abs().max(1e-3) {
                settled = true;
                break;
            }
        }
        prev_ek = Some(ek);
        if !left_wall {
            zmin *= 2.0;
        }
        if !right_wall {
            zmax *= 2.0;
        }
    }
    if !ek.is_finite() {
        return Err(Error::numerical("pre-solve failed while scanning the domain"));
    }
    if !settled {
        return Err(Error::numerical(
            "no confinement detected within the scan range; supply a manual grid",
        ));
    }

    // Trim or pad each side.
    let grid = Grid::new(zmin, zmax, coarse_n)?;
    let samples = grid.nodes();
    let vals: Vec<f64> = samples.iter().map(|&z| v_eff.eval(z)).collect();
    let allowed: Vec<usize> = (0..samples.len()).filter(|&i| vals[i] <= ek).collect();
    if allowed.is_empty() {
        return Err(Error::numerical(
            "no classically allowed region found; supply a manual grid",
        ));
    }
    let decay_pad = |idx: usize, dir: f64| -> f64 {
        let mut z = samples[idx];
        let step = dir * (zmax - zmin) / 200.0;
        for _ in 0..200 {
            z += step;
            if let Ok(pt) = mass_eval(profile, z) {
                let v = v_eff.eval(z);
                if v > ek {
                    let kappa = (2.0 * pt.m * (v - ek)).sqrt() / units.hbar;
                    if kappa > 0.0 {
                        return 8.0 / kappa;
                    }
                }
            }
        }
        0.25 * (zmax - zmin)
    };
    let lo = if confined.0 {
        let tp = samples[allowed[0]];
        tp - decay_pad(allowed[0], -1.0)
    } else {
        zmin
    };
    let hi = if confined.1 {
        let tp = samples[*allowed.last().unwrap()];
        tp + decay_pad(*allowed.last().unwrap(), 1.0)
    } else {
        zmax
    };

    // Resolution: shortest local oscillation length over the allowed region.
    let mut min_wavelength = f64::INFINITY;
    for &i in &allowed {
        let pt = mass_eval(profile, samples[i])?;
        let p2 = 2.0 * pt.m * (ek - vals[i]);
        if p2 > 0.0 {
            let lam = 2.0 * std::f64::consts::PI * units.hbar / p2.sqrt();
            min_wavelength = min_wavelength.min(lam);
        }
    }
    let h_target = if min_wavelength.is_finite() {
        min_wavelength / 20.0
    } else {
        (hi - lo) / 2000.0
    };
    let n = (((hi - lo) / h_target).ceil() as usize).clamp(coarse_n, 400_000);
    Grid::new(lo, hi, n)
}
