//! Projection bodies and mixed projection bodies. The support value of
//! Pi(K_1,...,K_{n-1}) at a unit u is n V(K_1,...,K_{n-1}, seg_u) with seg_u
//! the segment from -u/2 to u/2. Expanding that mixed volume over the
//! discrete mixed area measure of the slot bodies turns Pi into a zonotope
//! with one generator s_v v per atom (v, s_v), so supports and
//! quermassintegrals of projection bodies evaluate exactly; the segment
//! route is kept as the defining form and as an independent oracle.

use crate::area_measure::{edge_atoms2, mixed_atoms3, self_atoms3, SupportAtoms2, SupportAtoms3};
use crate::ball::ball_approx;
use crate::body::{Body, Dir};
use crate::error::{Error, Result};
use crate::grid::{wulff_shape, GridDirs};
use crate::meas::{self, Meas};
use crate::mixed::mixed_volume;
use crate::zonotope::Zonotope;
use alloc::vec::Vec;

fn check_slots(bodies: &[&Body]) -> Result<usize> {
    let n = match bodies.first() {
        Some(b) => b.dim(),
        None => return Err(Error::WrongArity),
    };
    if bodies.len() != n - 1 {
        return Err(Error::WrongArity);
    }
    for b in bodies {
        if b.dim() != n {
            return Err(Error::DimensionMismatch);
        }
        if !b.is_full_dim() {
            return Err(Error::DegenerateHull);
        }
    }
    Ok(n)
}

/// h_{Pi(K_1,...,K_{n-1})}(u) = n V(K_1,...,K_{n-1}, seg_u), the defining
/// segment mixed volume, via inclusion-exclusion.
pub fn projection_support(bodies: &[&Body], u: &Dir) -> Result<f64> {
    let n = check_slots(bodies)?;
    if u.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    let seg = match u {
        Dir::Two(u) => Body::from_rows_allow_degenerate(
            2,
            &[[-0.5 * u.x, -0.5 * u.y, 0.0], [0.5 * u.x, 0.5 * u.y, 0.0]],
        )?,
        Dir::Three(u) => Body::from_rows_allow_degenerate(
            3,
            &[
                [-0.5 * u.x, -0.5 * u.y, -0.5 * u.z],
                [0.5 * u.x, 0.5 * u.y, 0.5 * u.z],
            ],
        )?,
    };
    let mut slots: Vec<&Body> = bodies.to_vec();
    slots.push(&seg);
    Ok(n as f64 * mixed_volume(&slots)?)
}

/// Pi(K_1,...,K_{n-1}) as a zonotope: generators s_v v over the atoms of the
/// mixed area measure of the slot bodies. Supports agree with
/// `projection_support` and quermassintegrals are exact.
pub fn projection_zonotope(bodies: &[&Body]) -> Result<Zonotope> {
    let n = check_slots(bodies)?;
    match n {
        2 => {
            let atoms: SupportAtoms2 = edge_atoms2(bodies[0].two());
            Ok(Zonotope::Two(
                atoms
                    .dirs
                    .iter()
                    .zip(&atoms.weights)
                    .map(|(v, s)| *v * *s)
                    .collect(),
            ))
        }
        _ => {
            let (a, b) = (bodies[0].three(), bodies[1].three());
            let atoms: SupportAtoms3 = if core::ptr::eq(a, b) {
                self_atoms3(a)
            } else {
                mixed_atoms3(a, b)?
            };
            Ok(Zonotope::Three(
                atoms
                    .dirs
                    .iter()
                    .zip(&atoms.weights)
                    .map(|(v, s)| *v * *s)
                    .collect(),
            ))
        }
    }
}

/// The projection body as a polytope: Wulff shape of the zonotope support
/// sampled on `grid`. Circumscribes the true body, with equality whenever
/// the grid covers its facet normals.
pub fn projection_body(bodies: &[&Body], grid: &GridDirs) -> Result<Body> {
    let n = check_slots(bodies)?;
    if grid.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    let z = projection_zonotope(bodies)?;
    let sampled = match (grid, &z) {
        (GridDirs::Two(ds), Zonotope::Two(_)) => grid.sample(|i| z.support2(ds[i])),
        (GridDirs::Three(ds), Zonotope::Three(_)) => grid.sample(|i| z.support3(ds[i])),
        _ => return Err(Error::DimensionMismatch),
    };
    wulff_shape(&sampled)
}

/// Pi_j(K, L): j slots hold L, the other n-1-j hold K.
pub fn mixed_projection_zonotope(k: &Body, l: &Body, j: usize) -> Result<Zonotope> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::DimensionMismatch);
    }
    if j > n - 1 {
        return Err(Error::IndexOutOfRange);
    }
    let mut slots: Vec<&Body> = Vec::with_capacity(n - 1);
    for s in 0..n - 1 {
        slots.push(if s < n - 1 - j { k } else { l });
    }
    projection_zonotope(&slots)
}

/// Pi_j(K) = Pi(K,...,K,B,...,B) with j ball slots, bracketed by the
/// inscribed and circumscribed ball approximations at `level`. For j = 0 the
/// two zonotopes coincide.
pub fn pi_j_zonotope_bracket(k: &Body, j: usize, level: u32) -> Result<(Zonotope, Zonotope)> {
    let n = k.dim();
    if j > n - 1 {
        return Err(Error::IndexOutOfRange);
    }
    if j == 0 {
        let z = mixed_projection_zonotope(k, k, 0)?;
        return Ok((z.clone(), z));
    }
    let ball = ball_approx(n, level)?;
    Ok((
        mixed_projection_zonotope(k, &ball.inscribed, j)?,
        mixed_projection_zonotope(k, &ball.circumscribed, j)?,
    ))
}

/// W_i(Pi_j K) with the ball slots bracketed: monotonicity of mixed volumes
/// in each slot nests the two zonotopes around the true body, and
/// quermassintegrals are monotone under inclusion.
pub fn pi_j_quermass(k: &Body, j: usize, i: usize, level: u32) -> Result<Meas> {
    let n = k.dim();
    if i > n {
        return Err(Error::IndexOutOfRange);
    }
    let (lo, hi) = pi_j_zonotope_bracket(k, j, level)?;
    let a = lo.quermassintegral(i)?;
    if j == 0 {
        return Ok(meas::exact(a));
    }
    Ok(meas::bracket(a, hi.quermassintegral(i)?))
}
