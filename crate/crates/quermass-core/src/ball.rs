//! Polytopal unit-ball approximations. The inscribed body has all vertices
//! on the sphere; the circumscribed body is its polar dual, so every facet
//! is tangent to the sphere. Together they bracket any functional that is
//! monotone in the ball argument.
//!
//! 2D: regular m-gons with m = 8 * 2^level (level <= 12).
//! 3D: icosahedral subdivisions with 10 * 4^level + 2 vertices (level <= 6).

use crate::body::Body;
use crate::error::{Error, Result};
use crate::fp;
use crate::poly2::Poly2;
use crate::poly3::Poly3;
use crate::vec::{v2, v3, V2, V3};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct BallApprox {
    pub dim: usize,
    pub level: u32,
    pub inscribed: Body,
    pub circumscribed: Body,
}

pub const MAX_LEVEL_2D: u32 = 12;
pub const MAX_LEVEL_3D: u32 = 6;

pub fn ball_approx(dim: usize, level: u32) -> Result<BallApprox> {
    match dim {
        2 => {
            if level > MAX_LEVEL_2D {
                return Err(Error::LevelTooHigh);
            }
            let m = 8usize << level;
            let ins: Vec<V2> = (0..m)
                .map(|k| {
                    let a = 2.0 * fp::PI * k as f64 / m as f64;
                    v2(fp::cos(a), fp::sin(a))
                })
                .collect();
            // Polar dual: vertices offset by half a step, pushed out so the
            // edges touch the circle at the inscribed body's vertex angles.
            let r = 1.0 / fp::cos(fp::PI / m as f64);
            let cir: Vec<V2> = (0..m)
                .map(|k| {
                    let a = 2.0 * fp::PI * (k as f64 + 0.5) / m as f64;
                    v2(r * fp::cos(a), r * fp::sin(a))
                })
                .collect();
            Ok(BallApprox {
                dim,
                level,
                inscribed: Body::Two(Poly2::from_points(&ins)?),
                circumscribed: Body::Two(Poly2::from_points(&cir)?),
            })
        }
        3 => {
            if level > MAX_LEVEL_3D {
                return Err(Error::LevelTooHigh);
            }
            let (verts, faces) = icosphere(level);
            let ins = Poly3::from_points(&verts)?;
            let mut dual: Vec<V3> = Vec::with_capacity(faces.len());
            for f in ins.face_planes() {
                dual.push(f.normal * (1.0 / f.offset));
            }
            let cir = Poly3::from_points(&dual)?;
            Ok(BallApprox {
                dim,
                level,
                inscribed: Body::Three(ins),
                circumscribed: Body::Three(cir),
            })
        }
        _ => Err(Error::DimensionMismatch),
    }
}

/// Unit icosahedron subdivided `level` times, midpoints re-projected to the
/// sphere. Returns vertices and a consistent outward triangulation.
pub fn icosphere(level: u32) -> (Vec<V3>, Vec<[u32; 3]>) {
    let phi = (1.0 + fp::sqrt(5.0)) / 2.0;
    let mut verts: Vec<V3> = [
        v3(-1.0, phi, 0.0),
        v3(1.0, phi, 0.0),
        v3(-1.0, -phi, 0.0),
        v3(1.0, -phi, 0.0),
        v3(0.0, -1.0, phi),
        v3(0.0, 1.0, phi),
        v3(0.0, -1.0, -phi),
        v3(0.0, 1.0, -phi),
        v3(phi, 0.0, -1.0),
        v3(phi, 0.0, 1.0),
        v3(-phi, 0.0, -1.0),
        v3(-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|v| v.normalized())
    .collect();
    let mut faces: Vec<[u32; 3]> = alloc::vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        let mut midpoint = |a: u32, b: u32, verts: &mut Vec<V3>| -> u32 {
            let key = (a.min(b), a.max(b));
            if let Some(&id) = mid.get(&key) {
                return id;
            }
            let p = ((verts[a as usize] + verts[b as usize]) * 0.5).normalized();
            verts.push(p);
            let id = (verts.len() - 1) as u32;
            mid.insert(key, id);
            id
        };
        let mut next = Vec::with_capacity(4 * faces.len());
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    (verts, faces)
}

/// Unit directions used by support grids: icosphere vertices.
pub fn sphere_dirs(level: u32) -> Vec<V3> {
    icosphere(level).0
}
