//! Adaptive Gauss–Legendre quadrature with nested error estimation.
//!
//! Each panel is integrated with a 10-point and a 21-point rule; the
//! difference drives bisection refinement, Gauss–Kronrod style. Nodes and
//! weights are computed once by Newton iteration on the Legendre recurrence,
//! which keeps the table self-validating (exactness on polynomials is part of
//! the test suite).

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Absolute tolerance used by the coordinate map when no closed form exists.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Maximum bisection depth before giving up.
pub const MAX_DEPTH: u32 = 30;

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Legendre polynomial value and derivative at x by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // derivative from P_n and P_{n-1}
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-based starting guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(10), gauss_legendre(21)))
}

fn apply(rule: &Rule, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    worst: &mut f64,
) -> Result<f64> {
    let coarse = apply(&rules().0, f, a, b);
    let fine = apply(&rules().1, f, a, b);
    let err = (fine - coarse).abs();
    if err <= tol.max(f64::EPSILON * fine.abs()) {
        return Ok(fine);
    }
    if depth >= MAX_DEPTH {
        *worst = worst.max(err);
        return Err(Error::numerical(format!(
            "quadrature did not converge on [{a}, {b}]: requested {tol:.3e}, achieved {err:.3e}"
        )));
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, 0.5 * tol, depth + 1, worst)?;
    let right = adapt(f, mid, b, 0.5 * tol, depth + 1, worst)?;
    Ok(left + right)
}

/// ∫ₐᵇ f dx to absolute tolerance `tol`. Handles a > b by sign flip.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut worst = 0.0;
    adapt(&f, lo, hi, tol, 0, &mut worst).map(|v| sign * v)
}
