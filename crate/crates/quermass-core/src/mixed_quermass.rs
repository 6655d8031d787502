//! Mixed quermassintegrals W_i(K,L): the mixed volume with n-i-1 copies of
//! K, i copies of the unit ball, and one copy of L. Ball slots are filled
//! with inscribed and circumscribed polytopal approximations, giving a
//! bracket (mixed volumes are monotone in every slot); the reported value is
//! the midpoint with the half-width as uncertainty.

use crate::area_measure::{edge_atoms2, mixed_atoms3, self_atoms3};
use crate::ball::ball_approx;
use crate::body::Body;
use crate::error::{Error, Result};
use crate::meas::{self, Meas};
use crate::mixed::mixed_volume;
use crate::quermass::quermassintegral;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedRoute {
    /// Subset-sum inclusion-exclusion over the full body list.
    InclusionExclusion,
    /// Support values of the last body against the area measure of the rest.
    SupportMeasure,
}

pub fn mixed_quermassintegral(
    k: &Body,
    l: &Body,
    i: usize,
    level: u32,
    route: MixedRoute,
) -> Result<Meas> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    if i >= n {
        return Err(Error::IndexOutOfRange);
    }
    if i == 0 {
        // No ball slot; both routes are exact.
        let v = match (route, k, l) {
            (MixedRoute::InclusionExclusion, _, _) => {
                let mut args: Vec<&Body> = Vec::with_capacity(n);
                for _ in 0..n - 1 {
                    args.push(k);
                }
                args.push(l);
                mixed_volume(&args)?
            }
            (MixedRoute::SupportMeasure, Body::Two(pk), Body::Two(pl)) => {
                edge_atoms2(pl).mixed_area_with(pk)
            }
            (MixedRoute::SupportMeasure, Body::Three(pk), Body::Three(pl)) => {
                self_atoms3(pk).mixed_volume_with(pl)
            }
            _ => return Err(Error::DimensionMismatch),
        };
        return Ok(meas::exact(v));
    }
    let ball = ball_approx(n, level)?;
    let mut vals = [0.0f64; 2];
    for (slot, b) in [&ball.inscribed, &ball.circumscribed].iter().enumerate() {
        vals[slot] = match route {
            MixedRoute::InclusionExclusion => {
                let mut args: Vec<&Body> = Vec::with_capacity(n);
                for _ in 0..n - 1 - i {
                    args.push(k);
                }
                for _ in 0..i {
                    args.push(b);
                }
                args.push(l);
                mixed_volume(&args)?
            }
            MixedRoute::SupportMeasure => match (k, l, b) {
                (Body::Two(_), Body::Two(pl), Body::Two(pb)) => {
                    // n = 2, i = 1: V(B, L).
                    edge_atoms2(pl).mixed_area_with(pb)
                }
                (Body::Three(pk), Body::Three(pl), Body::Three(pb)) => {
                    if i == 1 {
                        mixed_atoms3(pk, pb)?.mixed_volume_with(pl)
                    } else {
                        self_atoms3(pb).mixed_volume_with(pl)
                    }
                }
                _ => return Err(Error::DimensionMismatch),
            },
        };
    }
    Ok(meas::bracket(vals[0], vals[1]))
}

/// Independent oracle for W_i(K,L): W_i(K + tL) is a polynomial in t of
/// degree n-i, so its one-sided derivative at 0 comes out exactly from
/// forward differences on n-i+1 nodes; W_i(K,L) = f'(0)/(n-i).
pub fn mixed_quermassintegral_via_quotient(k: &Body, l: &Body, i: usize) -> Result<f64> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    if i >= n {
        return Err(Error::IndexOutOfRange);
    }
    let d = n - i;
    let coeffs: &[f64] = match d {
        1 => &[-1.0, 1.0],
        2 => &[-1.5, 2.0, -0.5],
        _ => &[-11.0 / 6.0, 3.0, -1.5, 1.0 / 3.0],
    };
    let h = 1.0 / d as f64;
    let mut deriv = coeffs[0] * quermassintegral(k, i)?;
    for (j, c) in coeffs.iter().enumerate().skip(1) {
        let t = j as f64 * h;
        let scaled = l.scale_translate(t, &[0.0; 3])?;
        let sum = k.minkowski_sum(&scaled)?;
        deriv += c * quermassintegral(&sum, i)?;
    }
    Ok(deriv / (h * d as f64))
}

/// W_i(K) - W_i(D) for D contained in K; D may be degenerate (a point
/// contributes 0 for i < n).
pub fn quermass_difference(k: &Body, d: &Body, i: usize) -> Result<f64> {
    let n = k.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    if i >= n {
        return Err(Error::IndexOutOfRange);
    }
    if !k.contains(d, 1e-9 * k.diameter())? {
        return Err(Error::NotNested);
    }
    Ok(quermassintegral(k, i)? - quermassintegral(d, i)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp;

    #[test]
    fn support_measure_route_matches_inclusion_exclusion() {
        use crate::area_measure::mixed_atoms3;
        use crate::ball::ball_approx;
        use crate::mixed::mixed_volume;
        let k = unit_cube();
        let l = octahedron();
        for level in [0u32, 1, 2] {
            let ball = ball_approx(3, level).unwrap();
            for b in [&ball.inscribed, &ball.circumscribed] {
                let ie = mixed_volume(&[&k, b, &l]).unwrap();
                let atoms = mixed_atoms3(k.three(), b.three()).unwrap();
                let sm = atoms.mixed_volume_with(l.three());
                assert!(
                    fp::abs(sm - ie) <= 1e-10 * (1.0 + fp::abs(ie)),
                    "level {level}: sm {sm} vs ie {ie}"
                );
            }
        }
    }

    fn unit_cube() -> Body {
        Body::from_rows(
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
        .unwrap()
    }

    fn square(s: f64) -> Body {
        Body::from_rows(2, &[[0.0, 0.0, 0.0], [s, 0.0, 0.0], [s, s, 0.0], [0.0, s, 0.0]])
            .unwrap()
    }

    fn octahedron() -> Body {
        Body::from_rows(
            3,
            &[
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn i0_examples_are_exact() {
        let k = square(1.0);
        let l = square(2.0);
        for route in [MixedRoute::InclusionExclusion, MixedRoute::SupportMeasure] {
            let m = mixed_quermassintegral(&k, &l, 0, 3, route).unwrap();
            assert!(fp::abs(m.val - 2.0) <= 1e-9, "{route:?}: {}", m.val);
            assert_eq!(m.unc, 0.0);
        }
        let c = unit_cube();
        let m = mixed_quermassintegral(&c, &c, 0, 3, MixedRoute::SupportMeasure).unwrap();
        assert!(fp::abs(m.val - 1.0) <= 1e-12);
    }

    #[test]
    fn diagonal_brackets_quermassintegral() {
        let c = unit_cube();
        for i in 0..3 {
            let want = quermassintegral(&c, i).unwrap();
            for route in [MixedRoute::InclusionExclusion, MixedRoute::SupportMeasure] {
                let m = mixed_quermassintegral(&c, &c, i, 3, route).unwrap();
                assert!(
                    fp::abs(m.val - want) <= m.unc + 1e-9 * want,
                    "i={i} {route:?}: got {} +- {}, want {want}",
                    m.val,
                    m.unc
                );
            }
        }
    }

    #[test]
    fn routes_agree_with_quotient_oracle() {
        let k = unit_cube();
        let l = octahedron();
        for i in 0..3 {
            let oracle = mixed_quermassintegral_via_quotient(&k, &l, i).unwrap();
            for route in [MixedRoute::InclusionExclusion, MixedRoute::SupportMeasure] {
                let m = mixed_quermassintegral(&k, &l, i, 3, route).unwrap();
                assert!(
                    fp::abs(m.val - oracle) <= m.unc + 1e-9 * fp::abs(oracle),
                    "i={i} {route:?}: got {} +- {}, oracle {oracle}",
                    m.val,
                    m.unc
                );
            }
        }
    }

    #[test]
    fn quotient_oracle_known_values() {
        let k = unit_cube();
        // V(K,K,L) for L a unit segment along z is 1/3.
        let seg =
            Body::from_rows_allow_degenerate(3, &[[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let got = mixed_quermassintegral_via_quotient(&k, &seg, 0).unwrap();
        assert!(fp::abs(got - 1.0 / 3.0) <= 1e-9, "got {got}");
        // 2D: V(K,L) = 2 for unit and doubled squares.
        let got2 = mixed_quermassintegral_via_quotient(&square(1.0), &square(2.0), 0).unwrap();
        assert!(fp::abs(got2 - 2.0) <= 1e-9, "got {got2}");
    }

    #[test]
    fn quermass_difference_examples() {
        let big = square(2.0);
        let small = square(1.0);
        assert!(fp::abs(quermass_difference(&big, &small, 0).unwrap() - 3.0) <= 1e-12);
        assert_eq!(quermass_difference(&big, &big, 1).unwrap(), 0.0);
        let pt = Body::from_rows_allow_degenerate(2, &[[0.5, 0.5, 0.0]]).unwrap();
        assert!(
            fp::abs(quermass_difference(&big, &pt, 0).unwrap() - big.volume()) <= 1e-12
        );
        assert!(matches!(
            quermass_difference(&small, &big, 0),
            Err(Error::NotNested)
        ));
    }
}
