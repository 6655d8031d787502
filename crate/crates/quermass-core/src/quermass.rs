//! Quermassintegrals: closed forms for polytopes in dimensions 2 and 3,
//! plus an independent cross-check that fits the Steiner polynomial
//! V(K + tB) = sum_i C(n,i) W_i t^i through sampled parallel-body volumes.

use crate::ball::ball_approx;
use crate::body::{kappa, Body};
use crate::error::{Error, Result};
use crate::fp;
use alloc::vec::Vec;

/// W_i(K). n=2: (area, perimeter/2, pi). n=3: (volume, surface/3,
/// mean curvature integral/3, 4pi/3). Degenerate conventions follow Steiner
/// continuity: a point has W_i = 0 for i < n; a segment of length l has
/// W = (0, l, pi) in 2D and (0, 0, pi*l/3, 4pi/3) in 3D.
pub fn quermassintegral(k: &Body, i: usize) -> Result<f64> {
    let n = k.dim();
    if i > n {
        return Err(Error::IndexOutOfRange);
    }
    if i == n {
        return Ok(kappa(n));
    }
    Ok(match (n, i) {
        (2, 0) => k.volume(),
        (2, 1) => k.boundary_measure() / 2.0,
        (3, 0) => k.volume(),
        (3, 1) => k.boundary_measure() / 3.0,
        (3, 2) => k.mean_curvature() / 3.0,
        _ => unreachable!(),
    })
}

pub fn quermass_vector(k: &Body) -> Vec<f64> {
    (0..=k.dim()).map(|i| quermassintegral(k, i).unwrap()).collect()
}

#[derive(Clone, Debug)]
pub struct SteinerFit {
    /// Midpoints of the inscribed/circumscribed estimates, entry i = W_i.
    pub values: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl SteinerFit {
    pub fn half_width(&self, i: usize) -> f64 {
        0.5 * fp::abs(self.upper[i] - self.lower[i])
    }
}

/// Samples V(K + t*B) at 2n+5 radii for the inscribed and circumscribed
/// ball approximations, solves the least-squares fit for the Steiner
/// coefficients, and returns the bracket midpoints.
pub fn steiner_fit(k: &Body, level: u32) -> Result<SteinerFit> {
    let n = k.dim();
    let diam = k.diameter();
    if !(diam > 0.0) {
        return Err(Error::DegenerateHull);
    }
    let mut ts: Vec<f64> = alloc::vec![0.25, 0.5, 0.75, 1.0];
    ts.extend_from_slice(if n == 2 {
        &[0.1, 0.45, 0.9][..]
    } else {
        &[0.1, 0.45, 0.65, 0.9][..]
    });
    for t in ts.iter_mut() {
        *t *= diam;
    }

    let ball = ball_approx(n, level)?;
    let mut fits: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    for (slot, b) in [&ball.inscribed, &ball.circumscribed].iter().enumerate() {
        let mut rows: Vec<(f64, f64)> = Vec::with_capacity(ts.len());
        for &t in &ts {
            let tb = b.scale_translate(t, &[0.0; 3])?;
            let sum = k.minkowski_sum(&tb)?;
            rows.push((t, sum.volume()));
        }
        fits[slot] = fit_steiner_coeffs(n, &rows)?;
    }
    let [lo_fit, hi_fit] = fits;
    let mut values = Vec::with_capacity(n + 1);
    let mut lower = Vec::with_capacity(n + 1);
    let mut upper = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (a, b) = (lo_fit[i], hi_fit[i]);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        lower.push(lo);
        upper.push(hi);
        values.push(0.5 * (lo + hi));
    }
    Ok(SteinerFit { values, lower, upper })
}

/// Least squares for W_i in V(t) = sum_i C(n,i) W_i t^i via the normal
/// equations; the system is (n+1) x (n+1), solved by Gaussian elimination
/// with partial pivoting.
fn fit_steiner_coeffs(n: usize, rows: &[(f64, f64)]) -> Result<Vec<f64>> {
    let m = n + 1;
    let mut ata = alloc::vec![0.0f64; m * m];
    let mut atb = alloc::vec![0.0f64; m];
    for &(t, v) in rows {
        let mut basis = alloc::vec![0.0f64; m];
        for (i, slot) in basis.iter_mut().enumerate() {
            *slot = binomial(n, i) * powi(t, i);
        }
        for r in 0..m {
            for c in 0..m {
                ata[r * m + c] += basis[r] * basis[c];
            }
            atb[r] += basis[r] * v;
        }
    }
    solve_dense(&mut ata, &mut atb, m)?;
    Ok(atb)
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut num = 1.0f64;
    let mut den = 1.0f64;
    for j in 0..k.min(n - k) {
        num *= (n - j) as f64;
        den *= (j + 1) as f64;
    }
    num / den
}

fn powi(x: f64, k: usize) -> f64 {
    let mut r = 1.0;
    for _ in 0..k {
        r *= x;
    }
    r
}

fn solve_dense(a: &mut [f64], b: &mut [f64], m: usize) -> Result<()> {
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if fp::abs(a[r * m + col]) > fp::abs(a[piv * m + col]) {
                piv = r;
            }
        }
        if fp::abs(a[piv * m + col]) < 1e-300 {
            return Err(Error::ConstructionFailed);
        }
        if piv != col {
            for c in 0..m {
                a.swap(col * m + c, piv * m + c);
            }
            b.swap(col, piv);
        }
        let d = a[col * m + col];
        for r in col + 1..m {
            let f = a[r * m + col] / d;
            if f == 0.0 {
                continue;
            }
            for c in col..m {
                a[r * m + c] -= f * a[col * m + c];
            }
            b[r] -= f * b[col];
        }
    }
    for col in (0..m).rev() {
        let mut s = b[col];
        for c in col + 1..m {
            s -= a[col * m + c] * b[c];
        }
        b[col] = s / a[col * m + col];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Body;
    use crate::fp::PI;

    fn cube_body() -> Body {
        let mut rows = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    rows.push([x, y, z]);
                }
            }
        }
        Body::from_rows(3, &rows).unwrap()
    }

    fn square_body() -> Body {
        Body::from_rows(2, &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]])
            .unwrap()
    }

    #[test]
    fn closed_forms_on_unit_cube_and_square() {
        let c = cube_body();
        assert!((quermassintegral(&c, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((quermassintegral(&c, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((quermassintegral(&c, 2).unwrap() - PI).abs() < 1e-9);
        assert!((quermassintegral(&c, 3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
        let s = square_body();
        assert!((quermassintegral(&s, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((quermassintegral(&s, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((quermassintegral(&s, 2).unwrap() - PI).abs() < 1e-12);
        assert!(quermassintegral(&s, 3).is_err());
    }

    #[test]
    fn degenerate_conventions() {
        let pt2 = Body::from_rows_allow_degenerate(2, &[[3.0, 4.0, 0.0]]).unwrap();
        assert_eq!(quermassintegral(&pt2, 0).unwrap(), 0.0);
        assert_eq!(quermassintegral(&pt2, 1).unwrap(), 0.0);
        assert!((quermassintegral(&pt2, 2).unwrap() - PI).abs() < 1e-12);
        let seg2 =
            Body::from_rows_allow_degenerate(2, &[[0.0, 0.0, 0.0], [2.0, 0.0, 0.0]]).unwrap();
        assert_eq!(quermassintegral(&seg2, 0).unwrap(), 0.0);
        assert!((quermassintegral(&seg2, 1).unwrap() - 2.0).abs() < 1e-12);
        let seg3 =
            Body::from_rows_allow_degenerate(3, &[[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]]).unwrap();
        assert_eq!(quermassintegral(&seg3, 1).unwrap(), 0.0);
        assert!((quermassintegral(&seg3, 2).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn steiner_fit_square_level8() {
        let fit = steiner_fit(&square_body(), 8).unwrap();
        for (got, want) in fit.values.iter().zip([1.0, 2.0, PI]) {
            assert!(
                (got - want).abs() <= 1e-6 * want,
                "got {got}, want {want}"
            );
        }
    }

    #[test]
    fn steiner_fit_segment_2d() {
        let seg =
            Body::from_rows_allow_degenerate(2, &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        let fit = steiner_fit(&seg, 8).unwrap();
        assert!(fit.values[0].abs() < 1e-9);
        assert!((fit.values[1] - 1.0).abs() < 1e-6);
        assert!((fit.values[2] - PI).abs() < 1e-6 * PI);
    }

    #[test]
    fn steiner_fit_cube_level3() {
        // The inscribed/circumscribed coefficients bracket the closed form
        // exactly (mixed volumes are monotone per slot); midpoints only need
        // to be near. The margins cover fit conditioning, not geometry.
        let fit = steiner_fit(&cube_body(), 3).unwrap();
        let want = [1.0, 2.0, PI, 4.0 * PI / 3.0];
        for (i, want) in want.into_iter().enumerate() {
            assert!(
                fit.lower[i] - 1e-6 <= want && want <= fit.upper[i] + 1e-6,
                "i={i}: want {want} outside [{}, {}]",
                fit.lower[i],
                fit.upper[i]
            );
            let got = fit.values[i];
            assert!((got - want).abs() <= 1e-2 * want, "i={i}: got {got}, want {want}");
        }
    }
}
