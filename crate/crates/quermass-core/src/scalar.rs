//! Scalar inequalities used by the body theorems: the reverse-Minkowski
//! style bound for `p`-th power gaps, and the two-ratio product bound.

use crate::error::{Error, Result};
use crate::fp;

/// For positive sequences a, b with a1^p - sum(ai^p) > 0 (i >= 2) and same
/// for b, returns RHS - LHS of
///   (a1^p - sum ai^p)^(1/p) + (b1^p - sum bi^p)^(1/p)
///     <= ((a1+b1)^p - sum (ai+bi)^p)^(1/p).
/// Nonnegative; zero iff a and b are proportional.
pub fn bellman_check(a: &[f64], b: &[f64], p: f64) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::HypothesisViolated);
    }
    if !(p > 1.0) {
        return Err(Error::HypothesisViolated);
    }
    for &x in a.iter().chain(b.iter()) {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::HypothesisViolated);
        }
    }
    let gap = |s: &[f64]| -> f64 {
        let mut g = fp::powf_nn(s[0], p);
        for &x in &s[1..] {
            g -= fp::powf_nn(x, p);
        }
        g
    };
    let (ga, gb) = (gap(a), gap(b));
    if !(ga > 0.0) || !(gb > 0.0) {
        return Err(Error::HypothesisViolated);
    }
    let sum: alloc::vec::Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let gs = gap(&sum);
    Ok(fp::powf_nn(gs, 1.0 / p) - fp::powf_nn(ga, 1.0 / p) - fp::powf_nn(gb, 1.0 / p))
}

/// For a > b > 0, c > d > 0, 0 < alpha < 1 (beta = 1 - alpha), returns
///   a^alpha c^beta - b^alpha d^beta - (a-b)^alpha (c-d)^beta.
/// Nonnegative; zero iff a/b = c/d.
pub fn scalar_product_gap_check(a: f64, b: f64, c: f64, d: f64, alpha: f64) -> Result<f64> {
    if !(a > b && b > 0.0 && c > d && d > 0.0) {
        return Err(Error::HypothesisViolated);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::HypothesisViolated);
    }
    let beta = 1.0 - alpha;
    Ok(fp::powf_nn(a, alpha) * fp::powf_nn(c, beta)
        - fp::powf_nn(b, alpha) * fp::powf_nn(d, beta)
        - fp::powf_nn(a - b, alpha) * fp::powf_nn(c - d, beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_sequences_give_zero() {
        assert!(bellman_check(&[2.0, 1.0], &[2.0, 1.0], 2.0).unwrap().abs() < 1e-12);
        assert!(bellman_check(&[2.0, 1.0], &[4.0, 2.0], 3.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn bellman_known_value() {
        // (25-4)^(1/2) - 3^(1/2) - 8^(1/2)
        let want = 21.0f64.sqrt() - 3.0f64.sqrt() - 8.0f64.sqrt();
        let got = bellman_check(&[2.0, 1.0], &[3.0, 1.0], 2.0).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.0221).abs() < 5e-4);
    }

    #[test]
    fn bellman_rejects_bad_hypotheses() {
        assert!(bellman_check(&[1.0, 2.0], &[3.0, 1.0], 2.0).is_err());
        assert!(bellman_check(&[2.0], &[3.0], 2.0).is_err());
        assert!(bellman_check(&[2.0, 1.0], &[3.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn product_gap_equality_and_value() {
        assert!(scalar_product_gap_check(4.0, 2.0, 6.0, 3.0, 0.5).unwrap().abs() < 1e-12);
        assert!(scalar_product_gap_check(10.0, 1.0, 10.0, 1.0, 0.3).unwrap().abs() < 1e-12);
        let want = 32.0f64.sqrt() - 2.0 - 12.0f64.sqrt();
        let got = scalar_product_gap_check(4.0, 2.0, 8.0, 2.0, 0.5).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.1928).abs() < 5e-4);
    }

    #[test]
    fn product_gap_matches_minimization_form() {
        // The gap equals min over x > b of x^a c^b' - (x-b)^a (c-d)^b'
        // attained at x = b c / d, where the minimum value is b^a d^b'.
        let (b, c, d, alpha) = (2.0, 8.0, 2.0, 0.5);
        let beta = 1.0 - alpha;
        let f = |x: f64| fp::powf_nn(x, alpha) * fp::powf_nn(c, beta)
            - fp::powf_nn(x - b, alpha) * fp::powf_nn(c - d, beta);
        let xstar = b * c / d;
        let mut min = f64::INFINITY;
        let mut k = 0;
        while k <= 4000 {
            let x = b + 1e-6 + (k as f64) * 0.005;
            if f(x) < min {
                min = f(x);
            }
            k += 1;
        }
        assert!((f(xstar) - fp::powf_nn(b, alpha) * fp::powf_nn(d, beta)).abs() < 1e-12);
        assert!(min >= f(xstar) - 1e-8);
    }
}
