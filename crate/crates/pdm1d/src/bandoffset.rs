//! Interband transition energies and the band-offset ratio of a quantum well.
//!
//! The offset ratio Q splits the band-gap difference ΔE_g of a
//! heterojunction between the conduction and valence band wells:
//! V_cb = Q·ΔE_g and V_vb = (1−Q)·ΔE_g. A transition energy is
//! E_T = E_e + E_h + E_G with the carrier energies measured from their
//! respective well bottoms. Fitting a measured E_T with a different kinetic
//! ordering then asks: which Q′ makes ordering A reproduce ordering B's
//! transition energy? That root is [`solve_band_offset`].
//!
//! The depth scale Q multiplies the bare well shape only; the ordering
//! modification U_αγ depends on the mass profile alone and is therefore
//! depth-independent. With constant masses every ordering is identical and
//! the root sits at Q′ = Q exactly; with a graded mass the offset shifts by
//! however much the ordering corrections rebalance the two wells.

use crate::effpot::{effective_potential, PotentialModel};
use crate::error::{Error, Result};
use crate::model::{ordering_params_for, HamiltonianPreset, MassProfile, UnitSystem};
use crate::solver::{solve_pdm, Grid};

/// One carrier species: its mass profile, a depth-1 well shape (values in
/// [−1, 0], far-field 0), and the grid its bound state is computed on.
#[derive(Clone, Debug)]
pub struct CarrierChannel {
    pub profile: MassProfile,
    pub shape: PotentialModel,
    pub grid: Grid,
}

/// Electron and hole channels plus the band-gap energies.
#[derive(Clone, Debug)]
pub struct WellModel {
    pub electron: CarrierChannel,
    pub hole: CarrierChannel,
    /// Band gap of the well material.
    pub e_gap: f64,
    /// Band-gap difference split by the offset ratio.
    pub delta_gap: f64,
}

impl WellModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_gap > 0.0) || !(self.delta_gap > 0.0) {
            return Err(Error::config(format!(
                "band gaps must be positive: EG = {}, dEg = {}",
                self.e_gap, self.delta_gap
            )));
        }
        Ok(())
    }
}

/// E_T = E_e + E_h + E_G.
pub fn transition_energy(e_e: f64, e_h: f64, e_gap: f64) -> f64 {
    e_e + e_h + e_gap
}

/// Carrier confinement energy above its well bottom for depth `depth`:
/// solve the effective problem for the level `n`, then reference the
/// eigenvalue to −depth (the shape minimum). Deeper wells confine harder,
/// so this is non-decreasing in `depth`.
pub fn carrier_energy(
    channel: &CarrierChannel,
    preset: HamiltonianPreset,
    depth: f64,
    n: usize,
    units: &UnitSystem,
) -> Result<f64> {
    let bare = channel.shape.clone();
    let scaled = PotentialModel::new(
        bare.tag(),
        bare.params().clone(),
        move |z| depth * bare.eval(z),
    );
    let ordering = ordering_params_for(preset);
    let v_eff = effective_potential(&scaled, &channel.profile, &ordering, units);
    let spec = solve_pdm(&v_eff, &channel.profile, &channel.grid, n + 1, units)?;
    Ok(spec.eigenvalues[n] + depth)
}

/// Transition energy of the well under one ordering at offset ratio `q`.
pub fn transition_energy_at(
    well: &WellModel,
    preset: HamiltonianPreset,
    q: f64,
    levels: (usize, usize),
    units: &UnitSystem,
) -> Result<f64> {
    if !(0.0 < q && q < 1.0) {
        return Err(Error::config(format!("offset ratio must be in (0, 1), got {q}")));
    }
    let e_e = carrier_energy(&well.electron, preset, q * well.delta_gap, levels.0, units)?;
    let e_h = carrier_energy(&well.hole, preset, (1.0 - q) * well.delta_gap, levels.1, units)?;
    Ok(transition_energy(e_e, e_h, well.e_gap))
}

/// Outcome of a band-offset solve.
#[derive(Clone, Debug)]
pub enum BandOffset {
    Solved {
        q: f64,
        iterations: usize,
        /// (Q, g(Q)) samples of the objective, including the bracket scan.
        g_profile: Vec<(f64, f64)>,
    },
    /// The objective has no sign change in (ε, 1−ε); the profile is returned
    /// so the caller can see how flat or one-sided it is.
    NoSolution { g_profile: Vec<(f64, f64)> },
}

/// Find Q_A with E_T^A(Q_A) = E_T^B(Q_B) by bisection on
/// g(Q) = E_T^A(Q) − E_T^B(Q_B).
pub fn solve_band_offset(
    well: &WellModel,
    preset_a: HamiltonianPreset,
    preset_b: HamiltonianPreset,
    q_b: f64,
    levels: (usize, usize),
    units: &UnitSystem,
) -> Result<BandOffset> {
    well.validate()?;
    let target = transition_energy_at(well, preset_b, q_b, levels, units)?;
    let g = |q: f64| -> Result<f64> {
        Ok(transition_energy_at(well, preset_a, q, levels, units)? - target)
    };

    // Coarse scan for a sign change; channels that fail to bind at some Q
    // are simply skipped.
    let eps = 1e-3;
    let scan_points = 17;
    let mut profile_samples = Vec::new();
    let mut bracket: Option<(f64, f64, f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..scan_points {
        let q = eps + (1.0 - 2.0 * eps) * i as f64 / (scan_points - 1) as f64;
        match g(q) {
            Ok(val) => {
                profile_samples.push((q, val));
                if let Some((pq, pv)) = prev {
                    if pv == 0.0 || pv * val < 0.0 {
                        bracket = bracket.or(Some((pq, pv, q, val)));
                    }
                }
                prev = Some((q, val));
            }
            Err(_) => {
                prev = None;
            }
        }
    }
    let Some((mut lo, mut glo, mut hi, mut ghi)) = bracket else {
        return Ok(BandOffset::NoSolution {
            g_profile: profile_samples,
        });
    };

    let tol_g = 1e-8 * target.abs().max(1.0);
    let mut iterations = 0;
    let mut best = 0.5 * (lo + hi);
    for _ in 0..200 {
        iterations += 1;
        if glo == 0.0 {
            best = lo;
            break;
        }
        if ghi == 0.0 {
            best = hi;
            break;
        }
        let mid = 0.5 * (lo + hi);
        best = mid;
        let gmid = g(mid)?;
        profile_samples.push((mid, gmid));
        if gmid.abs() < tol_g && (hi - lo) < 1e-10 {
            break;
        }
        if glo * gmid <= 0.0 {
            hi = mid;
            ghi = gmid;
        } else {
            lo = mid;
            glo = gmid;
        }
        if (hi - lo) < 1e-12 {
            best = 0.5 * (lo + hi);
            break;
        }
    }
    profile_samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(BandOffset::Solved {
        q: best,
        iterations,
        g_profile: profile_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effpot::PotentialModel;

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    // Narrow well and light mass for the electron, wide well and unit mass
    // for the hole: the two confinement energies respond to depth at very
    // different rates, so the transition energy is strictly monotone in Q
    // and offset solves are well conditioned.
    fn asymmetric_well(electron_profile: MassProfile) -> WellModel {
        WellModel {
            electron: CarrierChannel {
                profile: electron_profile,
                shape: PotentialModel::bare(|z: f64| -1.0 / (1.4 * z).cosh().powi(2)),
                grid: Grid::new(-14.0, 14.0, 2400).unwrap(),
            },
            hole: CarrierChannel {
                profile: MassProfile::constant(1.0).unwrap(),
                shape: PotentialModel::bare(|z: f64| -1.0 / (0.35 * z).cosh().powi(2)),
                grid: Grid::new(-30.0, 30.0, 2400).unwrap(),
            },
            e_gap: 1.0,
            delta_gap: 2.0,
        }
    }

    fn constant_mass_well() -> WellModel {
        asymmetric_well(MassProfile::constant(0.2).unwrap())
    }

    #[test]
    fn transition_energy_is_a_sum() {
        assert!((transition_energy(0.1, 0.05, 1.4) - 1.55).abs() < 1e-15);
        assert_eq!(transition_energy(0.0, 0.0, 1.4), 1.4);
    }

    #[test]
    fn carrier_energy_monotone_in_depth() {
        let well = constant_mass_well();
        let u = units();
        let e_shallow =
            carrier_energy(&well.electron, HamiltonianPreset::BenDanielDuke, 0.6, 0, &u).unwrap();
        let e_deep =
            carrier_energy(&well.electron, HamiltonianPreset::BenDanielDuke, 1.2, 0, &u).unwrap();
        assert!(e_shallow > 0.0, "confinement energy must sit above the well bottom");
        assert!(e_deep >= e_shallow, "{e_deep} < {e_shallow}");
    }

    #[test]
    fn constant_mass_presets_share_the_offset() {
        let well = constant_mass_well();
        let u = units();
        for (a, b) in [
            (HamiltonianPreset::GoraWilliams, HamiltonianPreset::BenDanielDuke),
            (HamiltonianPreset::ZhuKroemer, HamiltonianPreset::LiKuhn),
        ] {
            match solve_band_offset(&well, a, b, 0.6, (0, 0), &u).unwrap() {
                BandOffset::Solved { q, .. } => {
                    assert!((q - 0.6).abs() < 1e-8, "{a:?} vs {b:?}: q = {q}");
                }
                BandOffset::NoSolution { .. } => panic!("no solution for {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn offset_solve_round_trips() {
        // Solve A against B, then B against the result: back to the start.
        let mut well = constant_mass_well();
        well.electron.profile = MassProfile::rational_squared(0.2, 1.5, 1.0).unwrap();
        let u = units();
        let (a, b) = (HamiltonianPreset::GoraWilliams, HamiltonianPreset::BenDanielDuke);
        let q_ab = match solve_band_offset(&well, a, b, 0.55, (0, 0), &u).unwrap() {
            BandOffset::Solved { q, .. } => q,
            BandOffset::NoSolution { .. } => panic!("forward solve failed"),
        };
        let q_back = match solve_band_offset(&well, b, a, q_ab, (0, 0), &u).unwrap() {
            BandOffset::Solved { q, .. } => q,
            BandOffset::NoSolution { .. } => panic!("reverse solve failed"),
        };
        assert!((q_back - 0.55).abs() < 1e-6, "round trip drifted to {q_back}");
    }

    #[test]
    fn graded_mass_shifts_the_offset() {
        let mut well = constant_mass_well();
        well.electron.profile = MassProfile::rational_squared(0.2, 1.5, 1.0).unwrap();
        let u = units();
        match solve_band_offset(
            &well,
            HamiltonianPreset::GoraWilliams,
            HamiltonianPreset::BenDanielDuke,
            0.55,
            (0, 0),
            &u,
        )
        .unwrap()
        {
            BandOffset::Solved { q, .. } => {
                // the ordering correction rebalances the wells appreciably
                assert!(q > 0.6, "ordering correction left Q unchanged: {q}");
            }
            BandOffset::NoSolution { .. } => panic!("expected a solution"),
        }
    }

    #[test]
    fn unreachable_target_reports_profile() {
        // A target transition below anything preset A can produce: shrink
        // the hole well so B's target (computed with a deep electron well)
        // cannot be matched. Construct directly: compare against a target
        // from a much larger gap.
        let well = constant_mass_well();
        let mut shifted = well.clone();
        shifted.e_gap = 5.0; // A's floor sits above B's whole range
        let u = units();
        let target_well = constant_mass_well();
        let target =
            transition_energy_at(&target_well, HamiltonianPreset::BenDanielDuke, 0.5, (0, 0), &u)
                .unwrap();
        // emulate solve_band_offset's scan against the foreign target
        let mut found_sign_change = false;
        let mut prev: Option<f64> = None;
        for i in 0..17 {
            let q = 1e-3 + (1.0 - 2e-3) * i as f64 / 16.0;
            let g = transition_energy_at(&shifted, HamiltonianPreset::GoraWilliams, q, (0, 0), &u)
                .unwrap()
                - target;
            if let Some(p) = prev {
                if p * g < 0.0 {
                    found_sign_change = true;
                }
            }
            prev = Some(g);
        }
        assert!(!found_sign_change, "target should be unreachable");
    }
}
