//! Convex polygons as vertex lists in canonical order (counterclockwise,
//! starting from the lexicographically smallest vertex). Degenerate bodies
//! (single points and segments) are carried with `rank < 2` so difference
//! functionals can take a point or segment as the inner body.

use crate::error::{Error, Result};
use crate::fp;
use crate::vec::{v2, V2};
use alloc::vec::Vec;

/// Near-duplicate vertices closer than this (times the diameter) merge.
const MERGE_REL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Edge2 {
    /// Outward unit normal.
    pub normal: V2,
    /// Support value along `normal`.
    pub offset: f64,
    pub len: f64,
}

#[derive(Clone, Debug)]
pub struct Poly2 {
    verts: Vec<V2>,
    rank: u8,
    area: f64,
    perimeter: f64,
    centroid: V2,
    diameter: f64,
    edges: Vec<Edge2>,
}

fn bbox_scale(pts: &[V2]) -> f64 {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for p in pts {
        lo = v2(lo.x.min(p.x), lo.y.min(p.y));
        hi = v2(hi.x.max(p.x), hi.y.max(p.y));
    }
    hi.dist(lo)
}

/// Andrew's monotone chain over deduplicated points. Returns CCW vertices
/// starting at the lexicographic minimum; collinear interior points drop.
///
/// The turn test is Shewchuk's exact orientation predicate. An epsilon test
/// is not merely imprecise here, it is inconsistent with the lexicographic
/// sort: a column of points with ulp-level x offsets and a large y spread
/// sorts by those offsets, and an epsilon turn test then declares the whole
/// column flat and can pop a true corner against a long chord, losing a fat
/// triangle of area (not a sliver). Exact signs make sort and turn agree and
/// the chain is then correct for the points as given.
pub fn hull2(points: &[V2]) -> Vec<V2> {
    let mut pts: Vec<V2> = points.to_vec();
    pts.sort_unstable_by(|a, b| a.lex_cmp(*b));
    let scale = bbox_scale(&pts).max(f64::MIN_POSITIVE);
    let merge = MERGE_REL * scale;
    pts.dedup_by(|a, b| a.dist(*b) <= merge);
    if pts.len() < 3 {
        return pts;
    }
    let turn_ok = |a: V2, b: V2, c: V2| {
        robust::orient2d(
            robust::Coord { x: a.x, y: a.y },
            robust::Coord { x: b.x, y: b.y },
            robust::Coord { x: c.x, y: c.y },
        ) > 0.0
    };
    let build = |iter: &mut dyn Iterator<Item = V2>| {
        let mut chain: Vec<V2> = Vec::new();
        for p in iter {
            while chain.len() >= 2 && !turn_ok(chain[chain.len() - 2], chain[chain.len() - 1], p) {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    let mut hull = lower;
    hull.pop();
    hull.extend_from_slice(&upper[..upper.len().saturating_sub(1)]);
    if hull.len() < 3 {
        // All points collinear within tolerance: endpoints only.
        return alloc::vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

impl Poly2 {
    /// Hull the input and build a full-dimensional polygon.
    pub fn from_points(points: &[V2]) -> Result<Poly2> {
        let p = Self::from_points_allow_degenerate(points)?;
        if p.rank < 2 {
            return Err(Error::DegenerateHull);
        }
        Ok(p)
    }

    /// Same, but a point or segment input is represented rather than rejected.
    pub fn from_points_allow_degenerate(points: &[V2]) -> Result<Poly2> {
        if points.is_empty() {
            return Err(Error::DegenerateHull);
        }
        for p in points {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::DegenerateHull);
            }
        }
        let verts = hull2(points);
        Ok(Self::from_hull(verts))
    }

    fn from_hull(verts: Vec<V2>) -> Poly2 {
        let rank = match verts.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        let n = verts.len();
        let mut area = 0.0;
        let mut perimeter = 0.0;
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut edges = Vec::new();
        if rank == 2 {
            for i in 0..n {
                let a = verts[i];
                let b = verts[(i + 1) % n];
                let w = a.cross(b);
                area += w;
                cx += (a.x + b.x) * w;
                cy += (a.y + b.y) * w;
                let e = b - a;
                let len = e.norm();
                perimeter += len;
                let normal = v2(e.y / len, -e.x / len);
                edges.push(Edge2 {
                    normal,
                    offset: normal.dot(a),
                    len,
                });
            }
            area *= 0.5;
            cx /= 6.0 * area;
            cy /= 6.0 * area;
        } else if rank == 1 {
            // Closed-curve boundary of a segment counts both sides.
            perimeter = 2.0 * verts[0].dist(verts[1]);
            cx = 0.5 * (verts[0].x + verts[1].x);
            cy = 0.5 * (verts[0].y + verts[1].y);
        } else {
            cx = verts[0].x;
            cy = verts[0].y;
        }
        let mut diameter = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                diameter = diameter.max(verts[i].dist(verts[j]));
            }
        }
        Poly2 {
            verts,
            rank,
            area,
            perimeter,
            centroid: v2(cx, cy),
            diameter,
            edges,
        }
    }

    pub fn verts(&self) -> &[V2] {
        &self.verts
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn centroid(&self) -> V2 {
        self.centroid
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Edges with outward unit normals; empty for degenerate bodies.
    pub fn edges(&self) -> &[Edge2] {
        &self.edges
    }

    pub fn support(&self, u: V2) -> f64 {
        let mut h = f64::NEG_INFINITY;
        for v in &self.verts {
            h = h.max(v.dot(u));
        }
        h
    }

    /// Vertices attaining the support value within `tol`.
    pub fn support_set(&self, u: V2, tol: f64) -> Vec<V2> {
        let h = self.support(u);
        self.verts
            .iter()
            .copied()
            .filter(|v| v.dot(u) >= h - tol)
            .collect()
    }

    pub fn minkowski_sum(&self, other: &Poly2) -> Result<Poly2> {
        let mut pts = Vec::with_capacity(self.verts.len() * other.verts.len());
        for a in &self.verts {
            for b in &other.verts {
                pts.push(*a + *b);
            }
        }
        Poly2::from_points_allow_degenerate(&pts)
    }

    pub fn scale_translate(&self, lambda: f64, t: V2) -> Result<Poly2> {
        if !(lambda > 0.0) || !t.x.is_finite() || !t.y.is_finite() {
            return Err(Error::DegenerateHull);
        }
        let verts: Vec<V2> = self.verts.iter().map(|v| *v * lambda + t).collect();
        Ok(Self::from_hull(verts))
    }

    pub fn translate(&self, t: V2) -> Poly2 {
        self.scale_translate(1.0, t).unwrap()
    }

    /// Every vertex of `inner` on or inside each edge line, within `slack`.
    pub fn contains(&self, inner: &Poly2, slack: f64) -> bool {
        if self.rank == 2 {
            inner.verts.iter().all(|v| {
                self.edges
                    .iter()
                    .all(|e| e.normal.dot(*v) <= e.offset + slack)
            })
        } else {
            inner
                .verts
                .iter()
                .all(|v| dist_to_segment(*v, self.verts[0], *self.verts.last().unwrap()) <= slack)
        }
    }

    pub fn contains_point(&self, p: V2, slack: f64) -> bool {
        self.edges
            .iter()
            .all(|e| e.normal.dot(p) <= e.offset + slack)
    }
}

fn dist_to_segment(p: V2, a: V2, b: V2) -> f64 {
    let ab = b - a;
    let denom = ab.dot(ab);
    if denom == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / denom).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Area of the hull of a point cloud; zero when degenerate. Used by
/// inclusion-exclusion, which needs volumes of Minkowski sums that may
/// collapse below full dimension.
pub fn hull_area(points: &[V2]) -> f64 {
    let verts = hull2(points);
    if verts.len() < 3 {
        return 0.0;
    }
    let mut area = 0.0;
    for i in 0..verts.len() {
        area += verts[i].cross(verts[(i + 1) % verts.len()]);
    }
    0.5 * area
}

/// Intersection of halfplanes `<x, dirs[k]> <= offsets[k]` with all offsets
/// positive (origin strictly interior), computed through the polar dual:
/// dual points `u/h` are hulled and each dual edge contributes one vertex.
pub fn halfplane_intersection(dirs: &[V2], offsets: &[f64]) -> Result<Poly2> {
    if dirs.len() != offsets.len() || dirs.len() < 3 {
        return Err(Error::GridTooCoarse);
    }
    for h in offsets {
        if !(*h > 0.0) || !h.is_finite() {
            return Err(Error::OriginNotInterior);
        }
    }
    let dual: Vec<V2> = dirs
        .iter()
        .zip(offsets)
        .map(|(u, h)| v2(u.x / h, u.y / h))
        .collect();
    let dual_hull = hull2(&dual);
    if dual_hull.len() < 3 {
        return Err(Error::GridTooCoarse);
    }
    let m = dual_hull.len();
    let mut verts = Vec::with_capacity(m);
    for i in 0..m {
        let a = dual_hull[i];
        let b = dual_hull[(i + 1) % m];
        // Solve <x, a> = 1, <x, b> = 1.
        let det = a.cross(b);
        if fp::abs(det) < 1e-300 {
            continue;
        }
        verts.push(v2((b.y - a.y) / det, (a.x - b.x) / det));
    }
    Poly2::from_points(&verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Poly2 {
        Poly2::from_points(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = Poly2::from_points(&[
            v2(0.0, 0.0),
            v2(1.0, 0.0),
            v2(1.0, 1.0),
            v2(0.0, 1.0),
            v2(0.5, 0.5),
            v2(0.5, 0.0),
        ])
        .unwrap();
        assert_eq!(p.verts().len(), 4);
        assert_eq!(p.verts()[0], v2(0.0, 0.0));
        assert!((p.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_order_is_ccw_from_lex_min() {
        let p = square();
        let v = p.verts();
        assert_eq!(v[0], v2(0.0, 0.0));
        assert_eq!(v[1], v2(1.0, 0.0));
        assert_eq!(v[2], v2(1.0, 1.0));
        assert_eq!(v[3], v2(0.0, 1.0));
    }

    #[test]
    fn minkowski_square_plus_square() {
        let p = square();
        let s = p.minkowski_sum(&p).unwrap();
        assert!((s.area() - 4.0).abs() < 1e-12);
        assert!((s.perimeter() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn segment_measures() {
        let s =
            Poly2::from_points_allow_degenerate(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(0.5, 0.0)])
                .unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.verts().len(), 2);
        assert_eq!(s.area(), 0.0);
        assert!((s.perimeter() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn large_regular_polygon_survives_collinearity_filter() {
        let m = 8192;
        let pts: Vec<V2> = (0..m)
            .map(|k| {
                let a = 2.0 * fp::PI * (k as f64) / (m as f64);
                v2(fp::cos(a), fp::sin(a))
            })
            .collect();
        let p = Poly2::from_points(&pts).unwrap();
        assert_eq!(p.verts().len(), m);
        let exact = (m as f64) / 2.0 * fp::sin(2.0 * fp::PI / m as f64);
        assert!((p.area() - exact).abs() < 1e-12);
        assert!((p.area() - fp::PI).abs() < 1e-6);
    }

    #[test]
    fn halfplane_intersection_recovers_square() {
        let dirs = [v2(1.0, 0.0), v2(0.0, 1.0), v2(-1.0, 0.0), v2(0.0, -1.0)];
        let offs = [1.0, 1.0, 1.0, 1.0];
        let p = halfplane_intersection(&dirs, &offs).unwrap();
        assert_eq!(p.verts().len(), 4);
        assert!((p.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn support_of_square() {
        let p = square();
        assert!((p.support(v2(1.0, 0.0)) - 1.0).abs() < 1e-15);
        let d = v2(1.0, 1.0).normalized();
        assert!((p.support(d) - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn contains_respects_slack() {
        let p = square();
        let inner = p.scale_translate(0.5, v2(0.25, 0.25)).unwrap();
        assert!(p.contains(&inner, 1e-12));
        assert!(!inner.contains(&p, 1e-12));
    }
}
