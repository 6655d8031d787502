//! Dimension-dispatching facade over the 2D and 3D polytope kernels. All
//! higher layers (functionals, projections, verification) work with `Body`
//! and `Dir` so the same suite code runs in both dimensions.

use crate::error::{Error, Result};
use crate::poly2::Poly2;
use crate::poly3::Poly3;
use crate::vec::{v2, v3, V2, V3};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Dir {
    Two(V2),
    Three(V3),
}

impl Dir {
    pub fn dim(&self) -> usize {
        match self {
            Dir::Two(_) => 2,
            Dir::Three(_) => 3,
        }
    }
}

/// A convex body given by its vertices, hulled and canonicalized on
/// construction. Rank below the ambient dimension marks a point or segment.
#[derive(Clone, Debug)]
pub enum Body {
    Two(Poly2),
    Three(Poly3),
}

impl Body {
    /// Hull a coordinate list. Row length fixes the ambient dimension.
    pub fn from_rows(dim: usize, rows: &[[f64; 3]]) -> Result<Body> {
        match dim {
            2 => {
                let pts: Vec<V2> = rows.iter().map(|r| v2(r[0], r[1])).collect();
                Ok(Body::Two(Poly2::from_points(&pts)?))
            }
            3 => {
                let pts: Vec<V3> = rows.iter().map(|r| v3(r[0], r[1], r[2])).collect();
                Ok(Body::Three(Poly3::from_points(&pts)?))
            }
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn from_rows_allow_degenerate(dim: usize, rows: &[[f64; 3]]) -> Result<Body> {
        match dim {
            2 => {
                let pts: Vec<V2> = rows.iter().map(|r| v2(r[0], r[1])).collect();
                Ok(Body::Two(Poly2::from_points_allow_degenerate(&pts)?))
            }
            3 => {
                let pts: Vec<V3> = rows.iter().map(|r| v3(r[0], r[1], r[2])).collect();
                Ok(Body::Three(Poly3::from_points_allow_degenerate(&pts)?))
            }
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Two(_) => 2,
            Body::Three(_) => 3,
        }
    }

    /// Affine rank: 0 point, 1 segment, dim() full-dimensional.
    pub fn rank(&self) -> usize {
        match self {
            Body::Two(p) => p.rank() as usize,
            Body::Three(p) => p.rank() as usize,
        }
    }

    pub fn is_full_dim(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Body::Two(p) => p.verts().len(),
            Body::Three(p) => p.verts().len(),
        }
    }

    pub fn vertex_rows(&self) -> Vec<[f64; 3]> {
        match self {
            Body::Two(p) => p.verts().iter().map(|v| [v.x, v.y, 0.0]).collect(),
            Body::Three(p) => p.verts().iter().map(|v| [v.x, v.y, v.z]).collect(),
        }
    }

    pub fn two(&self) -> &Poly2 {
        match self {
            Body::Two(p) => p,
            _ => panic!("expected a 2D body"),
        }
    }

    pub fn three(&self) -> &Poly3 {
        match self {
            Body::Three(p) => p,
            _ => panic!("expected a 3D body"),
        }
    }

    pub fn support(&self, u: &Dir) -> Result<f64> {
        match (self, u) {
            (Body::Two(p), Dir::Two(d)) => Ok(p.support(*d)),
            (Body::Three(p), Dir::Three(d)) => Ok(p.support(*d)),
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn minkowski_sum(&self, other: &Body) -> Result<Body> {
        match (self, other) {
            (Body::Two(a), Body::Two(b)) => Ok(Body::Two(a.minkowski_sum(b)?)),
            (Body::Three(a), Body::Three(b)) => Ok(Body::Three(a.minkowski_sum(b)?)),
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn scale_translate(&self, lambda: f64, t: &[f64]) -> Result<Body> {
        match self {
            Body::Two(p) => Ok(Body::Two(p.scale_translate(lambda, v2(t[0], t[1]))?)),
            Body::Three(p) => Ok(Body::Three(p.scale_translate(
                lambda,
                v3(t[0], t[1], t.get(2).copied().unwrap_or(0.0)),
            )?)),
        }
    }

    pub fn translate_to_centroid_origin(&self) -> Body {
        match self {
            Body::Two(p) => Body::Two(p.translate(-p.centroid())),
            Body::Three(p) => Body::Three(p.translate(-p.centroid())),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Body::Two(p) => p.area(),
            Body::Three(p) => p.volume(),
        }
    }

    /// Boundary measure: perimeter in 2D, surface area in 3D.
    pub fn boundary_measure(&self) -> f64 {
        match self {
            Body::Two(p) => p.perimeter(),
            Body::Three(p) => p.surface_area(),
        }
    }

    /// Integrated mean curvature (3D); total turning 2*pi in 2D.
    pub fn mean_curvature(&self) -> f64 {
        match self {
            Body::Two(p) => {
                if p.rank() == 0 {
                    0.0
                } else {
                    2.0 * crate::fp::PI
                }
            }
            Body::Three(p) => p.mean_curvature(),
        }
    }

    pub fn centroid(&self) -> [f64; 3] {
        match self {
            Body::Two(p) => [p.centroid().x, p.centroid().y, 0.0],
            Body::Three(p) => [p.centroid().x, p.centroid().y, p.centroid().z],
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Body::Two(p) => p.diameter(),
            Body::Three(p) => p.diameter(),
        }
    }

    pub fn contains(&self, inner: &Body, slack: f64) -> Result<bool> {
        match (self, inner) {
            (Body::Two(a), Body::Two(b)) => Ok(a.contains(b, slack)),
            (Body::Three(a), Body::Three(b)) => Ok(a.contains(b, slack)),
            _ => Err(Error::DimensionMismatch),
        }
    }

    /// Outward facet normals as directions (coplanar duplicates merged).
    pub fn facet_dirs(&self) -> Vec<Dir> {
        match self {
            Body::Two(p) => p.edges().iter().map(|e| Dir::Two(e.normal)).collect(),
            Body::Three(p) => p.facet_normals().into_iter().map(Dir::Three).collect(),
        }
    }

    /// Largest support-difference over a set of directions.
    pub fn grid_distance(&self, other: &Body, dirs: &[Dir]) -> Result<f64> {
        let mut d = 0.0f64;
        for u in dirs {
            d = d.max(crate::fp::abs(self.support(u)? - other.support(u)?));
        }
        Ok(d)
    }

    /// Origin strictly interior (all facet offsets positive).
    pub fn origin_interior(&self) -> bool {
        match self {
            Body::Two(p) => {
                p.rank() == 2 && p.edges().iter().all(|e| e.offset > 1e-12 * p.diameter())
            }
            Body::Three(p) => {
                p.rank() == 3
                    && p.face_planes()
                        .iter()
                        .all(|f| f.offset > 1e-12 * p.diameter())
            }
        }
    }
}

/// Unit volume of the ball in the given dimension.
pub fn kappa(dim: usize) -> f64 {
    match dim {
        2 => crate::fp::PI,
        _ => 4.0 * crate::fp::PI / 3.0,
    }
}
