//! Direction grids and Wulff shapes (intersections of the halfspaces
//! carved out by sampled support values). The polytope whose support was
//! sampled is contained in its Wulff shape, with equality whenever the grid
//! contains all of its facet normals.

use crate::ball::sphere_dirs;
use crate::body::{Body, Dir};
use crate::error::{Error, Result};
use crate::poly2::{halfplane_intersection, hull2, Poly2};
use crate::poly3::{dedupe_normals, Poly3};
use crate::vec::{v2, V2, V3};
use alloc::vec::Vec;

pub const MAX_GRID_LEVEL_2D: u32 = 12;
pub const MAX_GRID_LEVEL_3D: u32 = 6;

/// Sampled support function: unit directions with one value per direction.
#[derive(Clone, Debug)]
pub enum SupportGrid {
    Two { dirs: Vec<V2>, values: Vec<f64> },
    Three { dirs: Vec<V3>, values: Vec<f64> },
}

impl SupportGrid {
    pub fn dim(&self) -> usize {
        match self {
            SupportGrid::Two { .. } => 2,
            SupportGrid::Three { .. } => 3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SupportGrid::Two { dirs, .. } => dirs.len(),
            SupportGrid::Three { dirs, .. } => dirs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dirs(&self) -> Vec<Dir> {
        match self {
            SupportGrid::Two { dirs, .. } => dirs.iter().map(|d| Dir::Two(*d)).collect(),
            SupportGrid::Three { dirs, .. } => dirs.iter().map(|d| Dir::Three(*d)).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            SupportGrid::Two { values, .. } => values,
            SupportGrid::Three { values, .. } => values,
        }
    }
}

/// Base grid: 64 * 2^level uniform angles in 2D, icosphere vertices in 3D.
pub fn base_dirs(dim: usize, level: u32) -> Result<GridDirs> {
    match dim {
        2 => {
            if level > MAX_GRID_LEVEL_2D {
                return Err(Error::LevelTooHigh);
            }
            let m = 64usize << level;
            Ok(GridDirs::Two(
                (0..m)
                    .map(|k| {
                        let a = 2.0 * crate::fp::PI * k as f64 / m as f64;
                        v2(crate::fp::cos(a), crate::fp::sin(a))
                    })
                    .collect(),
            ))
        }
        3 => {
            if level > MAX_GRID_LEVEL_3D {
                return Err(Error::LevelTooHigh);
            }
            Ok(GridDirs::Three(sphere_dirs(level)))
        }
        _ => Err(Error::DimensionMismatch),
    }
}

#[derive(Clone, Debug)]
pub enum GridDirs {
    Two(Vec<V2>),
    Three(Vec<V3>),
}

impl GridDirs {
    pub fn dim(&self) -> usize {
        match self {
            GridDirs::Two(_) => 2,
            GridDirs::Three(_) => 3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GridDirs::Two(d) => d.len(),
            GridDirs::Three(d) => d.len(),
        }
    }

    /// Append the facet normals of the given bodies and merge duplicates.
    pub fn augment_with_facets(&self, bodies: &[&Body]) -> Result<GridDirs> {
        match self {
            GridDirs::Two(dirs) => {
                let mut out = dirs.clone();
                for b in bodies {
                    match b {
                        Body::Two(p) => out.extend(p.edges().iter().map(|e| e.normal)),
                        _ => return Err(Error::DimensionMismatch),
                    }
                }
                // The 2D sweep tolerates duplicates; trim exact repeats only.
                out.sort_unstable_by(|a, b| a.lex_cmp(*b));
                out.dedup_by(|a, b| a.dist(*b) <= 1e-12);
                Ok(GridDirs::Two(out))
            }
            GridDirs::Three(dirs) => {
                let mut out = dirs.clone();
                for b in bodies {
                    match b {
                        Body::Three(p) => out.extend(p.facet_normals()),
                        _ => return Err(Error::DimensionMismatch),
                    }
                }
                dedupe_normals(&mut out);
                Ok(GridDirs::Three(out))
            }
        }
    }

    /// Append one direction per vertex of the given bodies, chosen inside
    /// that vertex's normal cone (the mean of its incident facet normals),
    /// so the vertex is the strict support maximizer there. Degenerate
    /// bodies contribute nothing.
    pub fn augment_with_vertex_cones(&self, bodies: &[&Body]) -> Result<GridDirs> {
        match self {
            GridDirs::Two(dirs) => {
                let mut out = dirs.clone();
                for b in bodies {
                    let p = match b {
                        Body::Two(p) => p,
                        _ => return Err(Error::DimensionMismatch),
                    };
                    let edges = p.edges();
                    let m = edges.len();
                    for i in 0..m {
                        let prev = &edges[(i + m - 1) % m];
                        let cone = (prev.normal + edges[i].normal).normalized();
                        if cone.norm() > 0.5 {
                            out.push(cone);
                        }
                    }
                }
                out.sort_unstable_by(|a, b| a.lex_cmp(*b));
                out.dedup_by(|a, b| a.dist(*b) <= 1e-12);
                Ok(GridDirs::Two(out))
            }
            GridDirs::Three(dirs) => {
                let mut out = dirs.clone();
                for b in bodies {
                    let p = match b {
                        Body::Three(p) => p,
                        _ => return Err(Error::DimensionMismatch),
                    };
                    let mut acc = alloc::vec![V3::ZERO; p.verts().len()];
                    for (f, plane) in p.faces().iter().zip(p.face_planes()) {
                        for &v in f {
                            acc[v as usize] = acc[v as usize] + plane.normal;
                        }
                    }
                    for a in acc {
                        let cone = a.normalized();
                        if cone.norm() > 0.5 {
                            out.push(cone);
                        }
                    }
                }
                dedupe_normals(&mut out);
                Ok(GridDirs::Three(out))
            }
        }
    }

    pub fn sample(&self, f: impl Fn(usize) -> f64) -> SupportGrid {
        match self {
            GridDirs::Two(dirs) => SupportGrid::Two {
                dirs: dirs.clone(),
                values: (0..dirs.len()).map(f).collect(),
            },
            GridDirs::Three(dirs) => SupportGrid::Three {
                dirs: dirs.clone(),
                values: (0..dirs.len()).map(f).collect(),
            },
        }
    }
}

/// Intersection of the halfspaces `<x,u> <= h(u)` over the grid. All values
/// must be positive (origin interior).
pub fn wulff_shape(grid: &SupportGrid) -> Result<Body> {
    match grid {
        SupportGrid::Two { dirs, values } => {
            let p = halfplane_intersection(dirs, values)?;
            Ok(Body::Two(p))
        }
        SupportGrid::Three { dirs, values } => {
            if dirs.len() < 4 {
                return Err(Error::GridTooCoarse);
            }
            for h in values {
                if !(*h > 0.0) || !h.is_finite() {
                    return Err(Error::OriginNotInterior);
                }
            }
            let dual: Vec<V3> = dirs
                .iter()
                .zip(values)
                .map(|(u, h)| *u * (1.0 / h))
                .collect();
            let hull = Poly3::from_points(&dual).map_err(|_| Error::GridTooCoarse)?;
            let mut verts: Vec<V3> = Vec::with_capacity(hull.faces().len());
            for f in hull.faces() {
                let (a, b, c) = (
                    hull.verts()[f[0] as usize],
                    hull.verts()[f[1] as usize],
                    hull.verts()[f[2] as usize],
                );
                // Vertex of the Wulff shape: the point at distance-1 duality
                // from all three dual points, x with <x,a>=<x,b>=<x,c>=1.
                let det = a.dot(b.cross(c));
                if crate::fp::abs(det) < 1e-300 {
                    continue;
                }
                let x = (b.cross(c) + c.cross(a) + a.cross(b)) * (1.0 / det);
                verts.push(x);
            }
            Ok(Body::Three(Poly3::from_points(&verts)?))
        }
    }
}

/// Convenience: hull of a 2D point set as a `Body`.
pub fn hull_body_2d(pts: &[V2]) -> Result<Body> {
    let verts = hull2(pts);
    Ok(Body::Two(Poly2::from_points(&verts)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec::v3;

    #[test]
    fn wulff_of_cube_support_is_cube() {
        let dirs = alloc::vec![
            v3(1.0, 0.0, 0.0),
            v3(-1.0, 0.0, 0.0),
            v3(0.0, 1.0, 0.0),
            v3(0.0, -1.0, 0.0),
            v3(0.0, 0.0, 1.0),
            v3(0.0, 0.0, -1.0),
            v3(1.0, 1.0, 1.0).normalized(),
        ];
        let values = alloc::vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0f64.sqrt() + 0.5];
        let grid = SupportGrid::Three { dirs, values };
        let w = wulff_shape(&grid).unwrap();
        assert!((w.volume() - 8.0).abs() < 1e-9);
        assert_eq!(w.vertex_count(), 8);
    }

    #[test]
    fn wulff_rejects_nonpositive_support() {
        let dirs = alloc::vec![v3(1.0, 0.0, 0.0), v3(-1.0, 0.0, 0.0), v3(0.0, 1.0, 0.0), v3(0.0, -1.0, 0.0)];
        let values = alloc::vec![1.0, -0.5, 1.0, 1.0];
        let grid = SupportGrid::Three { dirs, values };
        assert!(matches!(
            wulff_shape(&grid),
            Err(Error::OriginNotInterior)
        ));
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(base_dirs(2, 3).unwrap().len(), 512);
        assert_eq!(base_dirs(3, 3).unwrap().len(), 642);
        assert!(base_dirs(3, 7).is_err());
    }
}
