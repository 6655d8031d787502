//! Firey combinations lambda.K +_p mu.L: the body whose support function
//! satisfies h^p = lambda h_K^p + mu h_L^p, and the mixed p-quermassintegrals
//! W_{p,i}(K,L) = (p/(n-i)) lim_{e->0+} (W_i(K +_p e.L) - W_i(K)) / e.
//!
//! At p = 1 support functions add, so the combination is the exact Minkowski
//! sum of the scaled bodies and the quotient below is a polynomial in e of
//! degree at most two; the three-point extrapolation then carries no
//! truncation error at all. For p > 1 the body is realized as a Wulff shape
//! over a fixed grid augmented with both bodies' facet normals, which makes
//! dilate pairs (L = cK) exact as well.

use crate::body::Body;
use crate::error::{Error, Result};
use crate::fp;
use crate::grid::{base_dirs, wulff_shape, GridDirs};
use crate::meas::Meas;
use crate::quermass::quermass_vector;
use alloc::vec::Vec;

/// Base step for the one-sided difference quotients in `W_{p,i}`.
pub const PQ_BASE_STEP: f64 = 1e-3;

/// The sampling grid for L_p combinations of `k` and `l`: base directions at
/// `level` plus both bodies' facet normals and one direction inside each
/// vertex normal cone. The facet normals make the Wulff shape of either
/// body alone exact; the cone directions make the touch-point hull of
/// either body alone exact, so both sides of the bracket collapse onto the
/// body at a zero combination weight.
pub fn firey_dirs(k: &Body, l: &Body, level: u32) -> Result<GridDirs> {
    if k.dim() != l.dim() {
        return Err(Error::DimensionMismatch);
    }
    base_dirs(k.dim(), level)?
        .augment_with_facets(&[k, l])?
        .augment_with_vertex_cones(&[k, l])
}

fn sample_supports(b: &Body, dirs: &GridDirs) -> Vec<f64> {
    match (b, dirs) {
        (Body::Two(p), GridDirs::Two(ds)) => ds.iter().map(|d| p.support(*d)).collect(),
        (Body::Three(p), GridDirs::Three(ds)) => ds.iter().map(|d| p.support(*d)).collect(),
        _ => Vec::new(),
    }
}

fn scaled_minkowski(lambda: f64, k: &Body, mu: f64, l: &Body) -> Result<Body> {
    let zero = [0.0; 3];
    if lambda == 0.0 {
        return l.scale_translate(mu, &zero);
    }
    if mu == 0.0 {
        return k.scale_translate(lambda, &zero);
    }
    k.scale_translate(lambda, &zero)?
        .minkowski_sum(&l.scale_translate(mu, &zero)?)
}

pub fn firey_combine(
    p: f64,
    lambda: f64,
    k: &Body,
    mu: f64,
    l: &Body,
    dirs: &GridDirs,
) -> Result<Body> {
    if k.dim() != l.dim() || dirs.dim() != k.dim() {
        return Err(Error::DimensionMismatch);
    }
    if !(p >= 1.0) || !(lambda >= 0.0) || !(mu >= 0.0) || !(lambda + mu > 0.0) {
        return Err(Error::HypothesisViolated);
    }
    if p == 1.0 {
        return scaled_minkowski(lambda, k, mu, l);
    }
    let hk = sample_supports(k, dirs);
    let hl = sample_supports(l, dirs);
    for (a, b) in hk.iter().zip(&hl) {
        if !(*a > 0.0 && *b > 0.0) {
            return Err(Error::OriginNotInterior);
        }
    }
    let inv = 1.0 / p;
    let grid = dirs.sample(|i| {
        fp::pow(lambda * fp::pow(hk[i], p) + mu * fp::pow(hl[i], p), inv)
    });
    wulff_shape(&grid)
}

fn dir_rows(dirs: &GridDirs) -> Vec<[f64; 3]> {
    match dirs {
        GridDirs::Two(ds) => ds.iter().map(|d| [d.x, d.y, 0.0]).collect(),
        GridDirs::Three(ds) => ds.iter().map(|d| [d.x, d.y, d.z]).collect(),
    }
}

fn argmax_row(rows: &[[f64; 3]], d: [f64; 3]) -> ([f64; 3], f64) {
    let mut best = rows[0];
    let mut h = best[0] * d[0] + best[1] * d[1] + best[2] * d[2];
    for v in &rows[1..] {
        let s = v[0] * d[0] + v[1] * d[1] + v[2] * d[2];
        if s > h {
            h = s;
            best = *v;
        }
    }
    (best, h)
}

/// Inner and outer realizations of the combination. The sampled support
/// function is exact, so its touch points h^(1-p) (lambda h_K^(p-1) x_K +
/// mu h_L^(p-1) x_L) lie on the true boundary and their hull sits inside,
/// while the Wulff intersection sits outside. Dilate pairs collapse the
/// bracket to zero width because their facet normals are all in the grid.
pub fn firey_combine_bracket(
    p: f64,
    lambda: f64,
    k: &Body,
    mu: f64,
    l: &Body,
    dirs: &GridDirs,
) -> Result<(Body, Body)> {
    let outer = firey_combine(p, lambda, k, mu, l, dirs)?;
    if p == 1.0 {
        return Ok((outer.clone(), outer));
    }
    let kv = k.vertex_rows();
    let lv = l.vertex_rows();
    let mut rows = Vec::with_capacity(dirs.len());
    for d in dir_rows(dirs) {
        let (xk, hk) = argmax_row(&kv, d);
        let (xl, hl) = argmax_row(&lv, d);
        let h = fp::pow(lambda * fp::pow(hk, p) + mu * fp::pow(hl, p), 1.0 / p);
        let a = lambda * fp::pow(hk, p - 1.0) * fp::pow(h, 1.0 - p);
        let b = mu * fp::pow(hl, p - 1.0) * fp::pow(h, 1.0 - p);
        rows.push([
            a * xk[0] + b * xl[0],
            a * xk[1] + b * xl[1],
            a * xk[2] + b * xl[2],
        ]);
    }
    Ok((Body::from_rows(k.dim(), &rows)?, outer))
}

/// `W_{p,i}(K,L)` for all i in `0..n` from one set of combined bodies. The
/// three quotients at e in {h, 2h, 4h} are extrapolated by
/// (8q(h) - 6q(2h) + q(4h)) / 3, which cancels both the e and e^2 terms.
pub fn mixed_p_quermassintegral_all(
    k: &Body,
    l: &Body,
    p: f64,
    level: u32,
) -> Result<Vec<f64>> {
    Ok(mixed_p_quermassintegral_all_meas(k, l, p, level)?
        .into_iter()
        .map(|m| m.val)
        .collect())
}

/// Same quotient extrapolation, but each value carries an error estimate.
/// For p = 1 the combination is an exact polytope, the quotient is an exact
/// polynomial in e, and only divided-difference rounding remains. For p > 1
/// each quotient is evaluated on both ends of the inner/outer bracket; the
/// midpoints feed the extrapolation and the half-widths, weighted by the
/// extrapolation coefficients, enter the uncertainty next to the truncation
/// gap. The bracket pins the grid discretization bias that a one-sided
/// Wulff evaluation would silently keep.
pub fn mixed_p_quermassintegral_all_meas(
    k: &Body,
    l: &Body,
    p: f64,
    level: u32,
) -> Result<Vec<Meas>> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    if !(p >= 1.0) {
        return Err(Error::HypothesisViolated);
    }
    let base = quermass_vector(k);
    let dirs = if p == 1.0 {
        None
    } else {
        Some(firey_dirs(k, l, level)?)
    };
    let h = PQ_BASE_STEP;
    let mut quotients: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut spreads: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (slot, eps) in [h, 2.0 * h, 4.0 * h].into_iter().enumerate() {
        let (wlo, whi) = match &dirs {
            None => {
                let w = quermass_vector(&scaled_minkowski(1.0, k, eps, l)?);
                (w.clone(), w)
            }
            Some(d) => {
                let (inner, outer) = firey_combine_bracket(p, 1.0, k, eps, l, d)?;
                (quermass_vector(&inner), quermass_vector(&outer))
            }
        };
        quotients[slot] = (0..n)
            .map(|i| (0.5 * (wlo[i] + whi[i]) - base[i]) / eps)
            .collect();
        spreads[slot] = (0..n).map(|i| 0.5 * (whi[i] - wlo[i]) / eps).collect();
    }
    let [q1, q2, q4] = quotients;
    let [s1, s2, s4] = spreads;
    Ok((0..n)
        .map(|i| {
            let factor = p / (n - i) as f64;
            let three = (8.0 * q1[i] - 6.0 * q2[i] + q4[i]) / 3.0;
            let two = 2.0 * q1[i] - q2[i];
            let cancel = 8.0 * f64::EPSILON / h * fp::abs(base[i]);
            let trunc = if p == 1.0 { 0.0 } else { fp::abs(three - two) };
            let spread = (8.0 * s1[i] + 6.0 * s2[i] + s4[i]) / 3.0;
            Meas {
                val: factor * three,
                unc: factor * (trunc + cancel + spread),
            }
        })
        .collect())
}

pub fn mixed_p_quermassintegral(
    k: &Body,
    l: &Body,
    i: usize,
    p: f64,
    level: u32,
) -> Result<f64> {
    if i >= k.dim() {
        return Err(Error::IndexOutOfRange);
    }
    Ok(mixed_p_quermassintegral_all(k, l, p, level)?[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball_approx;
    use crate::body::Body;
    use crate::quermass::quermassintegral;

    fn centered_cube() -> Body {
        Body::from_rows(
            3,
            &[
                [-1.0, -1.0, -1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
                [1.0, -1.0, 1.0],
                [-1.0, 1.0, 1.0],
                [1.0, 1.0, 1.0],
            ],
        )
        .unwrap()
    }

    fn centered_square() -> Body {
        Body::from_rows(2, &[[-1.0, -1.0, 0.0], [1.0, -1.0, 0.0], [1.0, 1.0, 0.0], [-1.0, 1.0, 0.0]])
            .unwrap()
    }

    fn wide_diamond() -> Body {
        Body::from_rows(2, &[[-2.0, 0.0, 0.0], [0.0, -1.0, 0.0], [2.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
            .unwrap()
    }

    #[test]
    fn p1_matches_minkowski_sum_and_wulff_route() {
        let k = centered_square();
        let l = wide_diamond();
        let dirs = firey_dirs(&k, &l, 3).unwrap();
        let combined = firey_combine(1.0, 1.0, &k, 1.0, &l, &dirs).unwrap();
        let sum = k.minkowski_sum(&l).unwrap();
        let probes = dirs.sample(|_| 0.0).dirs();
        assert!(combined.grid_distance(&sum, &probes).unwrap() <= 1e-12);

        // In 2D the sum's edge normals all come from the summands, so the
        // Wulff shape of the sampled combined support is the sum exactly.
        let hk = sample_supports(&k, &dirs);
        let hl = sample_supports(&l, &dirs);
        let wulff = wulff_shape(&dirs.sample(|i| hk[i] + hl[i])).unwrap();
        assert!(wulff.grid_distance(&sum, &probes).unwrap() <= 1e-9);
    }

    #[test]
    fn diagonal_gives_dilate() {
        let k = centered_cube();
        let dirs = firey_dirs(&k, &k, 3).unwrap();
        let probes = dirs.sample(|_| 0.0).dirs();
        for p in [1.0, 1.5, 2.0, 3.0] {
            let c = firey_combine(p, 1.0, &k, 1.0, &k, &dirs).unwrap();
            let want = k.scale_translate(fp::pow(2.0, 1.0 / p), &[0.0; 3]).unwrap();
            assert!(c.grid_distance(&want, &probes).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn disk_self_combination_is_sqrt2_disk() {
        let disk = ball_approx(2, 8).unwrap().inscribed;
        let dirs = firey_dirs(&disk, &disk, 3).unwrap();
        let c = firey_combine(2.0, 1.0, &disk, 1.0, &disk, &dirs).unwrap();
        let want = disk.scale_translate(2.0f64.sqrt(), &[0.0; 3]).unwrap();
        let probes = dirs.sample(|_| 0.0).dirs();
        assert!(c.grid_distance(&want, &probes).unwrap() <= 1e-9);
    }

    #[test]
    fn origin_must_be_interior_for_p_above_one() {
        let k = centered_square();
        let shifted = k.scale_translate(1.0, &[5.0, 0.0, 0.0]).unwrap();
        let dirs = firey_dirs(&k, &shifted, 3).unwrap();
        assert!(matches!(
            firey_combine(2.0, 1.0, &k, 1.0, &shifted, &dirs),
            Err(Error::OriginNotInterior)
        ));
    }

    #[test]
    fn pq_diagonal_recovers_quermassintegrals() {
        let k = centered_cube();
        for p in [1.0, 1.5, 2.0, 3.0] {
            let all = mixed_p_quermassintegral_all(&k, &k, p, 3).unwrap();
            for (i, got) in all.iter().enumerate() {
                let want = quermassintegral(&k, i).unwrap();
                assert!(
                    fp::abs(got - want) <= 1e-6 * want,
                    "p={p} i={i}: got {got}, want {want}"
                );
            }
        }
        let sq = centered_square();
        let w20 = mixed_p_quermassintegral(&sq, &sq, 0, 2.0, 3).unwrap();
        assert!(fp::abs(w20 - 4.0) <= 1e-9);
    }

    #[test]
    fn pq_dilate_scales_by_c_to_the_p() {
        let k = centered_cube();
        let c = 0.5;
        let ck = k.scale_translate(c, &[0.0; 3]).unwrap();
        for p in [1.0, 2.0] {
            for i in 0..3 {
                let got = mixed_p_quermassintegral(&k, &ck, i, p, 3).unwrap();
                let want = fp::pow(c, p) * quermassintegral(&k, i).unwrap();
                assert!(
                    fp::abs(got - want) <= 1e-8 * want,
                    "p={p} i={i}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn pq_p1_i0_matches_mixed_volume() {
        let k = Body::from_rows(
            3,
            &[
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
                [1.0, 0.0, 1.0],
                [0.0, 1.0, 1.0],
                [1.0, 1.0, 1.0],
            ],
        )
        .unwrap();
        let seg =
            Body::from_rows_allow_degenerate(3, &[[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let got = mixed_p_quermassintegral(&k, &seg, 0, 1.0, 3).unwrap();
        let want = crate::mixed::mixed_volume(&[&k, &k, &seg]).unwrap();
        assert!(fp::abs(want - 1.0 / 3.0) <= 1e-9);
        assert!(fp::abs(got - want) <= 1e-9, "got {got}, want {want}");
    }
}
