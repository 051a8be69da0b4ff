//! Small numerical kernels: compensated accumulation, adaptive quadrature,
//! monotone root bracketing, and cubic-spline interpolation.

pub mod accum;
pub mod quadrature;
pub mod rootfind;
pub mod spline;

/// Integrate sampled values over a monotone grid.
///
/// Uses composite Simpson when the grid is uniform with an even interval
/// count (O(h⁴)), otherwise a compensated trapezoid rule.
pub fn sampled_integral(grid: &[f64], values: &[f64]) -> f64 {
    assert_eq!(grid.len(), values.len());
    let n = grid.len();
    if n < 2 {
        return 0.0;
    }
    let h = grid[1] - grid[0];
    let uniform = grid
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1e-12));
    if uniform && n >= 3 && (n - 1) % 2 == 0 {
        let weighted = (0..n).map(|i| {
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * values[i]
        });
        accum::kahan_sum(weighted) * h / 3.0
    } else {
        accum::kahan_sum(
            (0..n - 1).map(|i| 0.5 * (grid[i + 1] - grid[i]) * (values[i] + values[i + 1])),
        )
    }
}

/// Five-point central first derivative, error O(h⁴).
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) + 8.0 * (f(x + h) - f(x - h)) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Five-point central second derivative, error O(h⁴).
pub fn central_second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_on_uniform_grid() {
        let n = 1001;
        let h = 2.0 / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let vals: Vec<f64> = grid.iter().map(|&x| x.exp()).collect();
        let v = sampled_integral(&grid, &vals);
        let exact = 2.0f64.exp() - 1.0;
        assert!((v - exact).abs() < 1e-11, "v={v}, exact={exact}");
    }

    #[test]
    fn trapezoid_on_irregular_grid() {
        let grid = [0.0, 0.1, 0.35, 0.5, 1.0];
        let vals: Vec<f64> = grid.iter().map(|&x: &f64| 2.0 * x).collect();
        // exact for linear integrands
        assert!((sampled_integral(&grid, &vals) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivatives_of_exp() {
        let d = central_derivative(f64::exp, 0.3, 1e-3);
        let d2 = central_second_derivative(f64::exp, 0.3, 1e-3);
        let exact = 0.3f64.exp();
        assert!((d - exact).abs() < 1e-11, "d={d}, exact={exact}");
        assert!((d2 - exact).abs() < 1e-8, "d2={d2}, exact={exact}");
    }
}
