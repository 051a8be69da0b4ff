//! Ordering-dependent effective potential.
//!
//! Replacing the operator-ordered kinetic term by the divergence form
//! −(ħ²/2) d/dz[(1/m) d/dz] pushes the ordering dependence into the potential:
//!
//! ```text
//! V_eff(z) = V(z) + U_αγ(z),
//! U_αγ(z) = −(ħ²/4m³) [ (α+γ) m m″ − 2(αγ+α+γ) m′² ].
//! ```
//!
//! U vanishes identically for a constant mass (every ordering then agrees)
//! and for the (0, −1, 0) ordering, whose outer exponents are zero.

use crate::error::Result;
use crate::model::{mass_eval, MassProfile, OrderingParameters, UnitSystem};
use std::collections::BTreeMap;
use std::sync::Arc;

/// What a potential represents, for bookkeeping and output labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialTag {
    /// A physical potential profile as supplied.
    Bare,
    /// Bare plus an ordering modification term.
    Effective,
    /// A closed-form solvable family (oscillator, sech² well, ...).
    Solvable,
    /// One of a supersymmetric partner pair.
    Partner,
}

/// A scalar potential V(z) with metadata.
///
/// Evaluation is a shared pure closure, so models compose cheaply and can be
/// sampled from multiple threads. Nothing is cached; callers put values on
/// grids themselves.
#[derive(Clone)]
pub struct PotentialModel {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    tag: PotentialTag,
    params: BTreeMap<String, f64>,
}

impl std::fmt::Debug for PotentialModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PotentialModel {{ tag: {:?}, params: {:?} }}", self.tag, self.params)
    }
}

impl PotentialModel {
    pub fn new(
        tag: PotentialTag,
        params: impl IntoIterator<Item = (String, f64)>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        PotentialModel {
            eval: Arc::new(eval),
            tag,
            params: params.into_iter().collect(),
        }
    }

    /// Bare potential with no named parameters.
    pub fn bare(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(PotentialTag::Bare, [], eval)
    }

    pub fn eval(&self, z: f64) -> f64 {
        (self.eval)(z)
    }

    pub fn tag(&self) -> PotentialTag {
        self.tag
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn with_tag(mut self, tag: PotentialTag) -> Self {
        self.tag = tag;
        self
    }

    /// Pointwise sum, keeping the left operand's metadata.
    pub fn add(&self, other: &PotentialModel) -> PotentialModel {
        let a = self.eval.clone();
        let b = other.eval.clone();
        PotentialModel {
            eval: Arc::new(move |z| a(z) + b(z)),
            tag: self.tag,
            params: self.params.clone(),
        }
    }

    /// Pointwise shift by a constant.
    pub fn shifted(&self, offset: f64) -> PotentialModel {
        let a = self.eval.clone();
        PotentialModel {
            eval: Arc::new(move |z| a(z) + offset),
            tag: self.tag,
            params: self.params.clone(),
        }
    }
}

/// The modification term U_αγ(z) produced by mass gradients.
pub fn modification_term(
    profile: &MassProfile,
    params: &OrderingParameters,
    z: f64,
    units: &UnitSystem,
) -> Result<f64> {
    let pt = mass_eval(profile, z)?;
    let s = params.sum_outer();
    let t = params.cross_outer();
    if s == 0.0 && t == 0.0 {
        return Ok(0.0);
    }
    let h2 = units.hbar * units.hbar;
    Ok(-(h2 / (4.0 * pt.m.powi(3))) * (s * pt.m * pt.d2m - 2.0 * t * pt.dm * pt.dm))
}

/// V(z) + U_αγ(z) as a new model tagged `Effective`.
///
/// U is computed from (m, m′, m″) at each evaluation point, so the same model
/// serves closed-form checks and the finite-difference solver without
/// committing to a grid.
pub fn effective_potential(
    bare: &PotentialModel,
    profile: &MassProfile,
    params: &OrderingParameters,
    units: &UnitSystem,
) -> PotentialModel {
    let bare_eval = bare.eval.clone();
    let profile = profile.clone();
    let params = *params;
    let units = *units;
    PotentialModel {
        eval: Arc::new(move |z| {
            bare_eval(z) + modification_term(&profile, &params, z, &units).unwrap_or(f64::NAN)
        }),
        tag: PotentialTag::Effective,
        params: bare.params.clone(),
    }
}
