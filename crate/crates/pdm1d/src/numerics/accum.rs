//! Compensated floating-point accumulation.
//!
//! The solver assembles matrices whose entries span many orders of magnitude
//! (the inverse mass blows up wherever the mass profile decays), so norms,
//! dot products, and eigen-residuals are accumulated with error-free
//! transformations instead of naive sums.

/// Knuth two-sum: returns (s, e) with s = fl(a + b) and a + b = s + e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Two-product via FMA: returns (p, e) with p = fl(a·b) and a·b = p + e exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Kahan–Babuška compensated sum.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let (s, e) = two_sum(sum, v);
        sum = s;
        comp += e;
    }
    sum + comp
}

/// Dot product with a single compensation pass (Ogita–Rump–Oishi `dot2`).
///
/// Accurate to roughly machine precision even when the plain sum suffers
/// catastrophic cancellation.
pub fn dot2(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (&x, &y) in a.iter().zip(b.iter()) {
        let (p, ep) = two_prod(x, y);
        let (s, es) = two_sum(sum, p);
        sum = s;
        comp += ep + es;
    }
    sum + comp
}

/// Compensated evaluation of Σ aᵢ·bᵢ over an iterator of pairs.
pub fn dot2_iter(pairs: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (x, y) in pairs {
        let (p, ep) = two_prod(x, y);
        let (s, es) = two_sum(sum, p);
        sum = s;
        comp += ep + es;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_cancelled_term() {
        // 1e16 + 1 - 1e16 = 1: naive summation loses the 1.
        let s = kahan_sum([1e16, 1.0, -1e16]);
        assert_eq!(s, 1.0);
    }

    #[test]
    fn dot2_cancellation() {
        let a = [1e8, 1.0, -1e8];
        let b = [1e8, 0.5, 1e8];
        // exact: 1e16 + 0.5 - 1e16 = 0.5
        assert_eq!(dot2(&a, &b), 0.5);
    }
}
