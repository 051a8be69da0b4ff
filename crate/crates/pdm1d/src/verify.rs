//! End-to-end verification suite.
//!
//! Every headline property of the toolkit is pinned here as a named check
//! with an explicit tolerance and an achieved deviation: ordering
//! equivalence for both application profiles, transformation consistency,
//! oracle sanity and convergence order, partner-potential identities,
//! wavefunction mapping, modification-term algebra, and the band-offset
//! analysis. The CLI `verify` subcommand prints and serializes the report;
//! the acceptance test target asserts it.
//!
//! Checks marked `required: false` are recorded findings rather than gates —
//! chiefly the boundary behaviour of the exponential-mass family, where the
//! mapped problem lives on a half-line and a truncated Dirichlet box keeps
//! only every other oscillator level.

use crate::analytic::{
    exp_case_effective_potential, ho_spectrum, ho_wavefunction, pt_spectrum,
    rational_case_effective_potential, OscillatorParams, PoschlTellerParams,
};
use crate::bandoffset::{
    solve_band_offset, transition_energy, BandOffset, CarrierChannel, WellModel,
};
use crate::effpot::{effective_potential, modification_term, PotentialModel, PotentialTag};
use crate::error::Result;
use crate::model::{
    mass_eval, ordering_params_for, HamiltonianPreset, MassProfile, UnitSystem,
};
use crate::numerics::accum::dot2_iter;
use crate::numerics::sampled_integral;
use crate::solver::{
    solve_constant_mass, solve_pdm, solve_pdm_with_boundary, Grid, LeftBoundary,
};
use crate::susy::{
    exp_superpotential, partner_potentials, rational_superpotential, shape_invariance_residual,
    susy_spectrum, InverseBranch, ShapeInvariance,
};
use crate::transform::{map_wavefunction, mass_term_potential, CoordinateMap};
use serde::Serialize;

/// One named check with its tolerance and the deviation actually achieved.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    /// Infinite for pure recordings.
    pub tolerance: f64,
    pub achieved: f64,
    pub passed: bool,
    /// Required checks gate the suite; the rest are documented findings.
    pub required: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn new(label: &str) -> Self {
        VerifyReport {
            label: label.to_string(),
            checks: Vec::new(),
        }
    }

    fn gate(&mut self, id: &str, description: &str, tolerance: f64, achieved: f64) {
        self.checks.push(CheckResult {
            id: id.to_string(),
            description: description.to_string(),
            tolerance,
            achieved,
            passed: achieved <= tolerance,
            required: true,
            notes: Vec::new(),
        });
    }

    fn record(&mut self, id: &str, description: &str, achieved: f64, notes: Vec<String>) {
        self.checks.push(CheckResult {
            id: id.to_string(),
            description: description.to_string(),
            tolerance: f64::INFINITY,
            achieved,
            passed: true,
            required: false,
            notes,
        });
    }

    fn note_last(&mut self, note: String) {
        if let Some(c) = self.checks.last_mut() {
            c.notes.push(note);
        }
    }

    fn merge(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_required_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    /// One line per check, stable formatting.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let kind = if c.required { "" } else { " [recorded]" };
            if c.tolerance.is_finite() {
                out.push_str(&format!(
                    "[{status}]{kind} {} — {} (tolerance {:.3e}, achieved {:.3e})\n",
                    c.id, c.description, c.tolerance, c.achieved
                ));
            } else {
                out.push_str(&format!(
                    "[{status}]{kind} {} — {} (recorded value {:.6e})\n",
                    c.id, c.description, c.achieved
                ));
            }
            for n in &c.notes {
                out.push_str(&format!("         · {n}\n"));
            }
        }
        let verdict = if self.all_required_passed() {
            "ALL REQUIRED CHECKS PASSED"
        } else {
            "REQUIRED CHECK FAILURES PRESENT"
        };
        out.push_str(&format!("{verdict} ({} checks)\n", self.checks.len()));
        out
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + i as f64 * h).collect()
}

fn grid_with_spacing(zmin: f64, zmax: f64, h: f64) -> Result<Grid> {
    let n = ((zmax - zmin) / h).round() as usize - 1;
    Grid::new(zmin, zmax, n)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// The four per-ordering effective potentials of the exponential case:
/// each ordering's solvable bare well plus its own modification term.
fn exp_case_effective_family(
    v0: f64,
    lambda: f64,
    units: &UnitSystem,
) -> Result<Vec<(HamiltonianPreset, PotentialModel)>> {
    let profile = MassProfile::exponential(units.m0, lambda)?;
    HamiltonianPreset::ALL
        .iter()
        .map(|&preset| {
            let bare = exp_case_effective_potential(preset, v0, lambda, units)?;
            let eff = effective_potential(
                &bare,
                &profile,
                &ordering_params_for(preset),
                units,
            );
            Ok((preset, eff))
        })
        .collect()
}

fn rational_case_effective_family(
    p: &PoschlTellerParams,
    units: &UnitSystem,
) -> Result<Vec<(HamiltonianPreset, PotentialModel)>> {
    let profile = MassProfile::rational_squared(units.m0, p.a, p.lambda_bar)?;
    HamiltonianPreset::ALL
        .iter()
        .map(|&preset| {
            let bare = rational_case_effective_potential(preset, p, units)?;
            let eff = effective_potential(
                &bare,
                &profile,
                &ordering_params_for(preset),
                units,
            );
            Ok((preset, eff))
        })
        .collect()
}

/// Criteria for the exponential-mass application (ordering equivalence,
/// transformation consistency, partner identities, wavefunction mapping).
pub fn verify_exponential() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("exponential");
    let u = UnitSystem::default();
    let lambda = 1.0;
    let osc = OscillatorParams::new(1.0)?;
    let v0 = 4.0 * osc.stiffness / (lambda * lambda);
    let delta = osc.delta(&u);
    let profile = MassProfile::exponential(1.0, lambda)?;
    let family = exp_case_effective_family(v0, lambda, &u)?;
    let k = 4;
    let h = 0.01;
    let zmax = 6.0;

    // ---- C1: one effective equation, doubling-certified box --------------
    let mut stage_values: Vec<Vec<f64>> = Vec::new();
    for zmin in [-8.0, -16.0, -32.0, -64.0] {
        let grid = grid_with_spacing(zmin, zmax, h)?;
        let spec = solve_pdm(&family[0].1, &profile, &grid, k, &u)?;
        stage_values.push(spec.eigenvalues);
    }
    let cert_dev = max_abs_diff(&stage_values[2], &stage_values[3]);
    rep.gate(
        "C1.domain",
        "exponential case: 4 lowest levels stable under doubling the soft-side box edge",
        1e-6,
        cert_dev,
    );
    rep.note_last(format!(
        "levels on the final box: {}",
        stage_values[3]
            .iter()
            .map(|e| format!("{e:.10}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));

    let grid32 = grid_with_spacing(-32.0, zmax, h)?;
    let mut spectra = Vec::new();
    let mut worst_residual: f64 = 0.0;
    for (_, veff) in &family {
        let spec = solve_pdm(veff, &profile, &grid32, k, &u)?;
        for (res, ev) in spec.residuals.iter().zip(spec.eigenvalues.iter()) {
            worst_residual = worst_residual.max(res / ev.abs().max(1.0));
        }
        spectra.push(spec.eigenvalues);
    }
    let mut pairwise: f64 = 0.0;
    for i in 0..spectra.len() {
        for j in i + 1..spectra.len() {
            pairwise = pairwise.max(max_abs_diff(&spectra[i], &spectra[j]));
        }
    }
    rep.gate(
        "C1.pairwise",
        "exponential case: all four ordering presets are isospectral (4 lowest levels)",
        1e-6,
        pairwise,
    );
    rep.note_last(
        "each preset pairs its own solvable bare well with its own modification term; \
         the four effective equations coincide analytically, so this gate checks the \
         assembled pipeline end to end"
            .to_string(),
    );
    rep.gate(
        "C1.residual",
        "exponential case: eigenpair residuals ‖(H−E)ψ‖/max(1,|E|) on the graded matrix",
        1e-6,
        worst_residual,
    );

    // Recorded: where the levels actually sit relative to the oscillator
    // ladder. Richardson-extrapolate an h and h/2 pair for a sharp number.
    let grid32_fine = grid_with_spacing(-32.0, zmax, h / 2.0)?;
    let fine = solve_pdm(&family[0].1, &profile, &grid32_fine, k, &u)?.eigenvalues;
    let richardson: Vec<f64> = (0..k)
        .map(|n| (4.0 * fine[n] - stage_values[2][n]) / 3.0)
        .collect();
    let full_ladder: Vec<f64> = (0..k).map(|n| ho_spectrum(&osc, n, &u)).collect();
    let odd_ladder: Vec<f64> = (0..k)
        .map(|n| (2 * n + 1) as f64 * delta + 0.5 * delta)
        .collect();
    let dev_full = max_abs_diff(&richardson, &full_ladder);
    let dev_odd = max_abs_diff(&richardson, &odd_ladder);
    rep.record(
        "C1.ladder",
        "deviation of the computed levels from the full oscillator ladder (n+1/2)ħω",
        dev_full,
        vec![
            format!(
                "extrapolated levels: {}",
                richardson
                    .iter()
                    .map(|e| format!("{e:.8}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!(
                "they match the odd-index sub-ladder (2n+1+1/2)ħω to {dev_odd:.3e}: the map \
                 sends the full line to a half-line, and a Dirichlet box keeps only the \
                 odd oscillator states"
            ),
            "no single self-adjoint realization of the variable-mass operator carries the \
             full ladder; even and odd towers belong to different boundary conditions at \
             the vanishing-mass edge"
                .to_string(),
        ],
    );

    // Recorded: reading the closed-form wells directly as effective
    // potentials (no modification term) produces four *different* mapped
    // problems, distinguished by an inverse-square barrier.
    let mut direct_notes = Vec::new();
    let mut worst_direct: f64 = 0.0;
    for (preset, c_pot) in [
        (HamiltonianPreset::BenDanielDuke, -3.0f64),
        (HamiltonianPreset::GoraWilliams, 5.0),
        (HamiltonianPreset::ZhuKroemer, 1.0),
        (HamiltonianPreset::LiKuhn, 1.0),
    ] {
        let bare = exp_case_effective_potential(preset, v0, lambda, &u)?;
        let coarse = solve_pdm(&bare, &profile, &grid32, 2, &u)?.eigenvalues;
        let fine = solve_pdm(&bare, &profile, &grid32_fine, 2, &u)?.eigenvalues;
        let e0 = (4.0 * fine[0] - coarse[0]) / 3.0;
        let c_barrier = (c_pot + 3.0) / 4.0;
        let l = 0.5 * (-1.0 + (1.0 + 4.0 * c_barrier).sqrt());
        let predicted = delta * (1.5 + l);
        worst_direct = worst_direct.max((e0 - predicted).abs());
        direct_notes.push(format!(
            "{}: ground level {e0:.6} vs half-line prediction {predicted:.6} \
             (inverse-square barrier strength {c_barrier:.3})",
            preset.label()
        ));
    }
    rep.record(
        "C1.direct",
        "closed-form wells used directly as effective potentials are NOT isospectral: \
         each maps to an oscillator with a different inverse-square barrier",
        worst_direct,
        direct_notes,
    );

    // ---- C2: transformation consistency ----------------------------------
    let map = CoordinateMap::new(profile.clone(), u);
    let composed = crate::transform::effective_from_solvable(&osc.potential(), &map);
    let closed = exp_case_effective_potential(HamiltonianPreset::BenDanielDuke, v0, lambda, &u)?;
    let mut dev: f64 = 0.0;
    for z in linspace(-6.0, 4.0, 1001) {
        dev = dev.max((composed.eval(z) - closed.eval(z)).abs());
    }
    rep.gate(
        "C2.compose",
        "oscillator mapped through the coordinate change equals the closed-form well",
        1e-12,
        dev,
    );

    // ---- C5: partner identities ------------------------------------------
    let w = exp_superpotential(lambda, delta, &u)?;
    let pair = partner_potentials(&w, &profile, &u);
    let shift_grid = linspace(-4.0, 4.0, 1001);
    let mut shift_dev: f64 = 0.0;
    for &z in &shift_grid {
        shift_dev = shift_dev.max((pair.v2.eval(z) - pair.v1.eval(z) - delta).abs());
    }
    rep.gate(
        "C5.shift",
        "partner potentials differ by the uniform level spacing δ",
        1e-10,
        shift_dev,
    );

    let si = shape_invariance_residual(&pair, &pair.v1, &shift_grid);
    let r_dev = match si {
        ShapeInvariance::Invariant { r } => (r - delta).abs(),
        ShapeInvariance::Broken { max_deviation, .. } => max_deviation.max(1.0),
    };
    rep.gate(
        "C5.shape",
        "shape-invariance remainder equals δ with unchanged parameters",
        1e-8,
        r_dev,
    );

    let chain = vec![delta; k];
    let mut chain_dev: f64 = 0.0;
    for n in 0..k {
        let algebraic = susy_spectrum(&chain, n)? + 0.5 * delta;
        chain_dev = chain_dev.max((algebraic - ho_spectrum(&osc, n, &u)).abs());
    }
    rep.gate(
        "C5.chain",
        "algebraic chain spectrum plus ground offset reproduces (n+1/2)ħω exactly",
        1e-12,
        chain_dev,
    );

    // The mapped image of the first partner must be the shifted oscillator;
    // then the full-line solve of that image is the spectral oracle.
    let mut image_dev: f64 = 0.0;
    for x in linspace(0.05, 10.0, 400) {
        let z = crate::transform::inverse_map(&map, x)?;
        let mapped = pair.v1.eval(z) + mass_term_potential(&profile, z, &u)?;
        let analytic_image = osc.stiffness * x * x - 0.5 * delta;
        image_dev = image_dev.max((mapped - analytic_image).abs());
    }
    rep.gate(
        "C5.image",
        "first partner maps to the oscillator shifted down by δ/2",
        1e-9,
        image_dev,
    );

    let shifted_osc = osc.potential().shifted(-0.5 * delta);
    let oracle_grid = Grid::new(-12.0, 12.0, 24000)?;
    let oracle = solve_constant_mass(&shifted_osc, &oracle_grid, k, &u)?;
    let mut fd_dev: f64 = 0.0;
    for n in 0..k {
        let algebraic = susy_spectrum(&chain, n)?;
        fd_dev = fd_dev.max((oracle.eigenvalues[n] - algebraic).abs());
    }
    rep.gate(
        "C5.oracle",
        "chain spectrum matches the grid oracle of the mapped partner problem",
        1e-5,
        fd_dev,
    );
    rep.gate(
        "C5.ground",
        "first-partner ground state sits at zero (unbroken supersymmetry)",
        1e-5,
        oracle.eigenvalues[0].abs(),
    );

    // The same zero mode seen directly in the physical frame. The box needs
    // the boundary condition of the zero-energy solution at the
    // vanishing-mass edge: log-slope m′/4m plus the curvature correction
    // −(m₀δ/ħ²)√(m/m₀)·z̃ of the mapped flat mode (plain Dirichlet keeps the
    // odd tower instead, see below).
    let robin_zmin = -12.0;
    let robin_grid = grid_with_spacing(robin_zmin, 4.0, 0.0008)?;
    let zt_edge = crate::transform::forward_map(&map, robin_zmin)?;
    let m_edge = mass_eval(&profile, robin_zmin)?.m;
    let c_edge = 0.25 * lambda
        - (m_edge / u.m0).sqrt() * (u.m0 * delta / (u.hbar * u.hbar)) * zt_edge;
    let robin = solve_pdm_with_boundary(
        &pair.v1,
        &profile,
        &robin_grid,
        2,
        &u,
        LeftBoundary::Robin {
            log_derivative: c_edge,
        },
    )?;
    rep.gate(
        "C5.ground_pdm",
        "zero mode recovered in the physical frame with the soft-edge Robin condition",
        1e-5,
        robin.eigenvalues[0].abs(),
    );
    rep.note_last(format!(
        "next Robin level {:.6} ≈ 2δ = {:.6} (even tower; its edge correction is          energy-dependent and not imposed here)",
        robin.eigenvalues[1],
        2.0 * delta
    ));
    let dirichlet = solve_pdm(&pair.v1, &profile, &robin_grid, 1, &u)?;
    rep.record(
        "C5.ground_dirichlet",
        "Dirichlet box ground state of the first partner (odd tower: δ, 3δ, ...)",
        (dirichlet.eigenvalues[0] - delta).abs(),
        vec![format!(
            "E₀ = {:.8} vs δ = {delta:.8}; the Dirichlet realization excludes the zero mode",
            dirichlet.eigenvalues[0]
        )],
    );

    // ---- C6: wavefunction mapping ----------------------------------------
    let nt = 12001;
    let zt_grid = linspace(0.0, 12.0, nt);
    let mut psi_raw = Vec::with_capacity(nt);
    for &x in &zt_grid {
        psi_raw.push(ho_wavefunction(&osc, 0, x, &u)?);
    }
    let density: Vec<f64> = psi_raw.iter().map(|v| v * v).collect();
    let scale = sampled_integral(&zt_grid, &density).sqrt().recip();
    let psi_tilde: Vec<f64> = psi_raw.iter().map(|v| v * scale).collect();

    let z_grid = linspace(-32.0, 2.5, 6901);
    let mapped = map_wavefunction(&zt_grid, &psi_tilde, &map, &z_grid)?;
    rep.gate(
        "C6.norm",
        "mapped ground state preserves its L² norm",
        1e-6,
        (mapped.norm_squared - 1.0).abs(),
    );

    let window = linspace(-6.0, 2.5, 1701);
    let wmapped = map_wavefunction(&zt_grid, &psi_tilde, &map, &window)?;
    let hwin = window[1] - window[0];
    let kin = u.hbar * u.hbar / (2.0 * hwin * hwin);
    let energy = 0.5 * delta;
    let veff = &family[0].1;
    let mut res_sq = 0.0;
    let mut norm_sq = 0.0;
    for i in 1..window.len() - 1 {
        let z = window[i];
        let im_minus = 1.0 / mass_eval(&profile, z - 0.5 * hwin)?.m;
        let im_plus = 1.0 / mass_eval(&profile, z + 0.5 * hwin)?.m;
        let row = dot2_iter([
            (-kin * im_minus, wmapped.values[i - 1]),
            (kin * (im_minus + im_plus) + veff.eval(z) - energy, wmapped.values[i]),
            (-kin * im_plus, wmapped.values[i + 1]),
        ]);
        res_sq += row * row;
        norm_sq += wmapped.values[i] * wmapped.values[i];
    }
    rep.gate(
        "C6.residual",
        "mapped ground state satisfies the variable-mass equation at E = δ/2",
        1e-4,
        (res_sq / norm_sq).sqrt(),
    );
    rep.note_last(
        "this level is absent from the Dirichlet-box spectrum: the function solves the \
         differential equation but belongs to the even-sector boundary condition"
            .to_string(),
    );

    // ---- C7 (exponential parts): modification-term algebra ----------------
    rep.merge(verify_modification_terms()?);

    Ok(rep)
}

/// Modification-term algebra across the shipped profiles.
fn verify_modification_terms() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("modification");
    let u = UnitSystem::default();
    let zs = linspace(-4.0, 4.0, 801);
    let profiles = [
        ("constant", MassProfile::constant(1.0)?),
        ("exponential", MassProfile::exponential(1.0, 1.0)?),
        ("rational", MassProfile::rational_squared(1.0, 2.0, 1.0)?),
    ];

    let bdd = ordering_params_for(HamiltonianPreset::BenDanielDuke);
    let mut u_bdd: f64 = 0.0;
    for (_, p) in &profiles {
        for &z in &zs {
            u_bdd = u_bdd.max(modification_term(p, &bdd, z, &u)?.abs());
        }
    }
    rep.gate(
        "C7.base",
        "base ordering has no modification term on any shipped profile",
        1e-15,
        u_bdd,
    );

    // closed forms for the exponential profile
    let gw = ordering_params_for(HamiltonianPreset::GoraWilliams);
    let zk = ordering_params_for(HamiltonianPreset::ZhuKroemer);
    let lk = ordering_params_for(HamiltonianPreset::LiKuhn);
    let exp_profile = &profiles[1].1;
    let mut closed_dev: f64 = 0.0;
    for &z in &zs {
        let e = (-z).exp();
        let u_gw = modification_term(exp_profile, &gw, z, &u)?;
        let u_zk = modification_term(exp_profile, &zk, z, &u)?;
        closed_dev = closed_dev.max((u_gw + 0.25 * e).abs());
        closed_dev = closed_dev.max((u_zk + 0.125 * e).abs());
    }
    rep.gate(
        "C7.closed",
        "exponential-profile modification terms match their closed forms −ħ²λ²e^{−λz}/4m₀ and /8m₀",
        1e-12,
        closed_dev,
    );

    // symmetric-half vs one-sided-half orderings agree exactly when
    // m·m″ = m′² (log-linear mass), and only then
    let mut same_dev: f64 = 0.0;
    for (name, p) in &profiles[..2] {
        for &z in &zs {
            let d = (modification_term(p, &zk, z, &u)? - modification_term(p, &lk, z, &u)?).abs();
            same_dev = same_dev.max(d);
            let _ = name;
        }
    }
    rep.gate(
        "C7.halves",
        "symmetric and one-sided half orderings coincide for constant and exponential masses",
        1e-12,
        same_dev,
    );
    let rational = &profiles[2].1;
    let mut rational_gap: f64 = 0.0;
    for &z in &zs {
        rational_gap = rational_gap.max(
            (modification_term(rational, &zk, z, &u)? - modification_term(rational, &lk, z, &u)?)
                .abs(),
        );
    }
    rep.record(
        "C7.halves_rational",
        "for the rational profile the two half orderings genuinely differ (m·m″ ≠ m′²)",
        rational_gap,
        vec![format!(
            "max |U_ZK − U_LK| = {rational_gap:.6e} over z ∈ [−4, 4]; their closed-form \
             wells differ correspondingly"
        )],
    );

    // decomposition: each ordering's bare well plus its own modification is
    // one and the same effective potential
    let family = exp_case_effective_family(4.0, 1.0, &u)?;
    let zs_exp = linspace(-6.0, 4.0, 1001);
    let mut dec_dev: f64 = 0.0;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            for &z in &zs_exp {
                dec_dev = dec_dev.max((family[i].1.eval(z) - family[j].1.eval(z)).abs());
            }
        }
    }
    rep.gate(
        "C7.decompose_exp",
        "exponential case: the four (bare + modification) combinations agree pointwise",
        1e-12,
        dec_dev,
    );

    let pt = PoschlTellerParams::new(1.0, 1.0, 2.0)?;
    let rat_family = rational_case_effective_family(&pt, &u)?;
    let zs_rat = linspace(-8.0, 8.0, 1001);
    let mut dec_rat: f64 = 0.0;
    for i in 0..rat_family.len() {
        for j in i + 1..rat_family.len() {
            for &z in &zs_rat {
                dec_rat = dec_rat.max((rat_family[i].1.eval(z) - rat_family[j].1.eval(z)).abs());
            }
        }
    }
    rep.gate(
        "C7.decompose_rational",
        "rational case: the four (bare + modification) combinations agree pointwise",
        1e-12,
        dec_rat,
    );
    Ok(rep)
}

/// Criteria for the rational-mass application (sech² well equivalence and
/// the spectrum-form adjudication).
pub fn verify_rational() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("rational");
    let u = UnitSystem::default();

    // ---- C4a: a → 1 reduction --------------------------------------------
    let pt1 = PoschlTellerParams::new(1.0, 1.0, 1.0)?;
    let v_pt = pt1.potential_const_mass(&u);
    let mut reduce_dev: f64 = 0.0;
    for preset in HamiltonianPreset::ALL {
        let v = rational_case_effective_potential(preset, &pt1, &u)?;
        for z in linspace(-10.0, 10.0, 1001) {
            reduce_dev = reduce_dev.max((v.eval(z) - v_pt.eval(z)).abs());
        }
    }
    rep.gate(
        "C4.reduce",
        "at a = 1 all ordering wells reduce to the plain sech² well",
        1e-12,
        reduce_dev,
    );

    let const_grid = Grid::new(-40.0, 40.0, 24000)?;
    let const_spec = solve_constant_mass(&v_pt, &const_grid, 1, &u)?;
    rep.gate(
        "C4.const_ground",
        "constant-mass sech² ground state at −A²",
        1e-5,
        (const_spec.eigenvalues[0] - pt_spectrum(&pt1, 0, &u)?).abs(),
    );

    // ---- C4b: a = 2 isospectrality and the spectrum form ------------------
    let pt = PoschlTellerParams::new(1.0, 1.0, 2.0)?;
    let profile = MassProfile::rational_squared(1.0, pt.a, pt.lambda_bar)?;
    let family = rational_case_effective_family(&pt, &u)?;
    let n_bound = pt.n_max(&u) + 1;
    let grid = Grid::new(-20.0, 20.0, 10000)?;
    let mut spectra = Vec::new();
    for (_, veff) in &family {
        let spec = solve_pdm(veff, &profile, &grid, n_bound, &u)?;
        spectra.push(spec.eigenvalues);
    }
    let mut pairwise: f64 = 0.0;
    for i in 0..spectra.len() {
        for j in i + 1..spectra.len() {
            pairwise = pairwise.max(max_abs_diff(&spectra[i], &spectra[j]));
        }
    }
    rep.gate(
        "C4.pairwise",
        "rational case: all four ordering presets are isospectral over the bound states",
        1e-6,
        pairwise,
    );

    let mut ladder_dev: f64 = 0.0;
    for n in 0..n_bound {
        ladder_dev = ladder_dev.max((spectra[0][n] - pt_spectrum(&pt, n, &u)?).abs());
    }
    rep.gate(
        "C4.ladder",
        "bound levels match the squared ladder −(A − n·b)²",
        1e-5,
        ladder_dev,
    );
    let unsquared = -(pt.depth - pt.step(&u));
    rep.note_last(format!(
        "computed E₁ = {:.8}; the squared form gives {:.8}, an unsquared reading would \
         give {unsquared:.8} — the grid oracle settles the exponent",
        spectra[0][1],
        pt_spectrum(&pt, 1, &u)?
    ));

    // the well holds exactly two levels: the next box state sits near the
    // continuum edge
    let spill = solve_pdm(&family[0].1, &profile, &grid, n_bound + 1, &u)?;
    rep.record(
        "C4.count",
        "first level beyond the closed-form bound count sits at the continuum edge",
        spill.eigenvalues[n_bound],
        vec![format!(
            "E_{} = {:.6e} ≥ −1e−3 (box-limited continuum state)",
            n_bound, spill.eigenvalues[n_bound]
        )],
    );

    // ---- C4/susy: superpotential branch adjudication ----------------------
    let base = rational_case_effective_potential(HamiltonianPreset::BenDanielDuke, &pt, &u)?;
    let offset = pt.depth * pt.depth;
    let gz = linspace(-4.0, 4.0, 801);
    let pair_tan = partner_potentials(
        &rational_superpotential(&pt, InverseBranch::ArcTan, &u),
        &profile,
        &u,
    );
    let mut tan_dev: f64 = 0.0;
    for &z in &gz {
        tan_dev = tan_dev.max((pair_tan.v1.eval(z) - base.eval(z) - offset).abs());
    }
    rep.gate(
        "C4.susy_identity",
        "first partner of the circular-branch superpotential equals the base well + A²",
        1e-6,
        tan_dev,
    );

    let gz_inner = linspace(-0.9, 0.9, 181);
    let pair_tanh = partner_potentials(
        &rational_superpotential(&pt, InverseBranch::ArTanh, &u),
        &profile,
        &u,
    );
    let mut tanh_dev: f64 = 0.0;
    for &z in &gz_inner {
        tanh_dev = tanh_dev.max((pair_tanh.v1.eval(z) - base.eval(z) - offset).abs());
    }
    rep.record(
        "C4.susy_branch",
        "hyperbolic-branch superpotential fails the same identity (rejected)",
        tanh_dev,
        vec![
            "the inner inverse function must be the circular arctangent, matching the \
             coordinate map of the rational profile"
                .to_string(),
        ],
    );

    // PT chain algebra against the closed ladder
    let b = pt.step(&u);
    let r1 = pt.depth * pt.depth - (pt.depth - b) * (pt.depth - b);
    let e1_chain = -pt.depth * pt.depth + susy_spectrum(&[r1], 1)?;
    rep.gate(
        "C4.susy_chain",
        "one-step chain energy matches the closed-form first excited level",
        1e-12,
        (e1_chain - pt_spectrum(&pt, 1, &u)?).abs(),
    );

    Ok(rep)
}

/// Constant-mass oracle sanity (ground level and convergence order).
pub fn verify_oracle() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("oracle");
    let u = UnitSystem::default();
    let v = PotentialModel::new(PotentialTag::Solvable, [], |x: f64| 0.5 * x * x);

    let grid = Grid::new(-12.0, 12.0, 4000)?;
    let e0 = solve_constant_mass(&v, &grid, 1, &u)?.eigenvalues[0];
    rep.gate(
        "C3.ground",
        "constant-mass oscillator ground state at ω = 1",
        1e-5,
        (e0 - 0.5).abs(),
    );

    let grid_half = Grid::new(-12.0, 12.0, 8001)?;
    let e0_half = solve_constant_mass(&v, &grid_half, 1, &u)?.eigenvalues[0];
    let ratio = (e0 - 0.5).abs() / (e0_half - 0.5).abs();
    let ratio_dev = (ratio - 4.0).abs();
    rep.gate(
        "C3.order",
        "halving the spacing shrinks the ground-level error fourfold (second-order scheme)",
        0.8,
        ratio_dev,
    );
    rep.note_last(format!(
        "errors {:.6e} → {:.6e}, ratio {ratio:.3}",
        (e0 - 0.5).abs(),
        (e0_half - 0.5).abs()
    ));

    Ok(rep)
}

/// Band-offset analysis: ordering-independence with constant masses, and the
/// recorded behaviour for graded masses under both depth couplings.
pub fn verify_band_offset() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("bandoffset");
    let u = UnitSystem::default();

    // ---- C8a: constant masses — every pair shares the offset -------------
    let make_well = |electron_profile: MassProfile| WellModel {
        electron: CarrierChannel {
            profile: electron_profile,
            shape: PotentialModel::bare(|z: f64| -1.0 / (1.4 * z).cosh().powi(2)),
            grid: Grid::new(-14.0, 14.0, 1700).unwrap(),
        },
        hole: CarrierChannel {
            profile: MassProfile::constant(1.0).unwrap(),
            shape: PotentialModel::bare(|z: f64| -1.0 / (0.35 * z).cosh().powi(2)),
            grid: Grid::new(-30.0, 30.0, 2000).unwrap(),
        },
        e_gap: 1.0,
        delta_gap: 2.0,
    };
    let well = make_well(MassProfile::constant(0.2)?);
    let q_b = 0.6;
    let mut worst_q: f64 = 0.0;
    let presets = HamiltonianPreset::ALL;
    for i in 0..presets.len() {
        for j in i + 1..presets.len() {
            match solve_band_offset(&well, presets[i], presets[j], q_b, (0, 0), &u)? {
                BandOffset::Solved { q, .. } => worst_q = worst_q.max((q - q_b).abs()),
                BandOffset::NoSolution { .. } => worst_q = worst_q.max(1.0),
            }
        }
    }
    rep.gate(
        "C8.constant",
        "constant masses: fitted offset ratio identical across all preset pairs",
        1e-8,
        worst_q,
    );

    // ---- C8b: exponential masses, solvable depth coupling ----------------
    // Depth scale enters as the strength of each ordering's own solvable
    // bare well; the effective equations then coincide and the fitted offset
    // cannot move. Electron and hole carry different grading rates so the
    // transition energy is strictly monotone in Q.
    let lambda_e = 1.4;
    let lambda_h = 0.7;
    let e_profile = MassProfile::exponential(1.0, lambda_e)?;
    let h_profile = MassProfile::exponential(1.0, lambda_h)?;
    let e_grid = grid_with_spacing(-24.0, 6.0, 0.01)?;
    let h_grid = grid_with_spacing(-46.0, 8.0, 0.01)?;
    let delta_gap = 2.0;
    let e_gap = 1.0;
    let carrier = |preset: HamiltonianPreset,
                   profile: &MassProfile,
                   grid: &Grid,
                   lambda: f64,
                   depth: f64|
     -> Result<f64> {
        let bare = exp_case_effective_potential(preset, depth, lambda, &u)?;
        let veff = effective_potential(&bare, profile, &ordering_params_for(preset), &u);
        Ok(solve_pdm(&veff, profile, grid, 1, &u)?.eigenvalues[0])
    };
    let et = |preset: HamiltonianPreset, q: f64| -> Result<f64> {
        let ee = carrier(preset, &e_profile, &e_grid, lambda_e, q * delta_gap)?;
        let eh = carrier(preset, &h_profile, &h_grid, lambda_h, (1.0 - q) * delta_gap)?;
        Ok(transition_energy(ee, eh, e_gap))
    };
    let target = et(HamiltonianPreset::BenDanielDuke, q_b)?;
    // bisection on g(q) = E_T^GW(q) − target
    let mut lo = 0.05;
    let mut hi = 0.95;
    let mut glo = et(HamiltonianPreset::GoraWilliams, lo)? - target;
    let ghi = et(HamiltonianPreset::GoraWilliams, hi)? - target;
    let mut g_profile = vec![(lo, glo), (hi, ghi)];
    let q_matched = if glo * ghi > 0.0 {
        f64::NAN
    } else {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let gm = et(HamiltonianPreset::GoraWilliams, mid)? - target;
            g_profile.push((mid, gm));
            if glo * gm <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                glo = gm;
            }
            if hi - lo < 1e-10 {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    rep.gate(
        "C8.exp_matched",
        "exponential masses, solvable depth coupling: fitted offset ratio unchanged",
        1e-8,
        (q_matched - q_b).abs(),
    );
    g_profile.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let g_text: Vec<String> = g_profile
        .iter()
        .take(8)
        .map(|(q, g)| format!("g({q:.4}) = {g:+.3e}"))
        .collect();
    rep.note_last(format!("objective profile: {}", g_text.join(", ")));

    // ---- C8c: exponential masses, shared bare well (recorded) ------------
    // If instead one insists on a single shared bare well, the non-base
    // orderings acquire an attractive inverse-square tail in the mapped
    // frame stronger than the critical coupling: box energies never settle,
    // so no offset fit is meaningful. Record the collapse rate.
    let shared_bare = exp_case_effective_potential(
        HamiltonianPreset::BenDanielDuke,
        q_b * delta_gap,
        lambda_e,
        &u,
    )?;
    let gw_eff = effective_potential(
        &shared_bare,
        &e_profile,
        &ordering_params_for(HamiltonianPreset::GoraWilliams),
        &u,
    );
    let e16 = solve_pdm(&gw_eff, &e_profile, &grid_with_spacing(-16.0, 8.0, 0.01)?, 1, &u)?
        .eigenvalues[0];
    let e32 = solve_pdm(&gw_eff, &e_profile, &grid_with_spacing(-32.0, 8.0, 0.01)?, 1, &u)?
        .eigenvalues[0];
    rep.record(
        "C8.exp_shared",
        "exponential masses, shared bare well: no domain-stable spectrum for non-base orderings",
        (e32 - e16).abs(),
        vec![
            format!("ground level falls from {e16:.4} to {e32:.4} when the soft edge moves out"),
            "the ordering correction −ħ²λ²e^{−λz}/4m maps to an attractive inverse-square \
             barrier below the stability threshold, so the box spectrum is unbounded below \
             in the infinite-domain limit; an offset fit under this parameterization is \
             ill-posed"
                .to_string(),
        ],
    );

    // ---- C8d: rational-mass electron, shared bare well (recorded) --------
    let graded = make_well(MassProfile::rational_squared(0.2, 1.5, 1.0)?);
    let mut notes = Vec::new();
    let mut worst_shift: f64 = 0.0;
    for preset in [
        HamiltonianPreset::GoraWilliams,
        HamiltonianPreset::ZhuKroemer,
        HamiltonianPreset::LiKuhn,
    ] {
        match solve_band_offset(&graded, preset, HamiltonianPreset::BenDanielDuke, 0.55, (0, 0), &u)? {
            BandOffset::Solved { q, .. } => {
                worst_shift = worst_shift.max((q - 0.55).abs());
                notes.push(format!(
                    "{} reproduces the base-ordering transition only at Q = {q:.6} (vs 0.55)",
                    preset.label()
                ));
            }
            BandOffset::NoSolution { g_profile } => {
                notes.push(format!(
                    "{}: no offset in (0,1) matches (objective range {:+.3e} … {:+.3e})",
                    preset.label(),
                    g_profile.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
                    g_profile.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
                ));
            }
        }
    }
    rep.record(
        "C8.graded_shared",
        "graded electron mass, shared bare well: fitted offset depends on the ordering",
        worst_shift,
        notes,
    );

    Ok(rep)
}

/// The full suite.
pub fn verify_all() -> Result<VerifyReport> {
    let mut rep = VerifyReport::new("all");
    rep.merge(verify_oracle()?);
    rep.merge(verify_exponential()?);
    rep.merge(verify_rational()?);
    rep.merge(verify_band_offset()?);
    Ok(rep)
}
