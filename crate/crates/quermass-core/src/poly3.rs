//! Convex polytopes in 3-space: canonical vertex/face lists plus the three
//! boundary integrals every quermassintegral needs (volume, surface area,
//! integrated mean curvature). Points and segments are carried as rank 0/1
//! bodies; flat polygons are not representable and reject.

use crate::error::{Error, Result};
use crate::fp;
use crate::hull3::{dedupe_points, hull3, FLAT_REL, MERGE_REL};
use crate::vec::{det3, v3, V3};
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct Facet3 {
    /// Outward unit normal of the face plane.
    pub normal: V3,
    pub offset: f64,
    pub area: f64,
}

#[derive(Clone, Debug)]
pub struct Poly3 {
    verts: Vec<V3>,
    /// Triangles, CCW from outside, indices into `verts`. Empty when rank < 3.
    faces: Vec<[u32; 3]>,
    rank: u8,
    vol: f64,
    surface: f64,
    mean_curv: f64,
    centroid: V3,
    diameter: f64,
    face_planes: Vec<Facet3>,
}

impl Poly3 {
    pub fn from_points(points: &[V3]) -> Result<Poly3> {
        let p = Self::from_points_allow_degenerate(points)?;
        if p.rank < 3 {
            return Err(Error::DegenerateHull);
        }
        Ok(p)
    }

    /// Points and segments are represented; planar inputs still reject.
    pub fn from_points_allow_degenerate(points: &[V3]) -> Result<Poly3> {
        if points.is_empty() {
            return Err(Error::DegenerateHull);
        }
        for p in points {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(Error::DegenerateHull);
            }
        }
        let mut lo = points[0];
        let mut hi = points[0];
        for p in points {
            lo = v3(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = v3(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        let scale = hi.dist(lo);
        if scale <= f64::MIN_POSITIVE {
            return Ok(Self::point(points[0]));
        }
        let pts = dedupe_points(points, MERGE_REL * scale);
        if pts.len() == 1 {
            return Ok(Self::point(pts[0]));
        }
        // Collinearity test against the farthest-point chord: the farthest
        // point from pts[0], then the farthest point from that one. For a
        // collinear set both passes land on endpoints, so the chord is the
        // carrier line itself (a bbox corner would not be on it).
        let (mut a, mut best) = (pts[0], -1.0);
        for p in &pts {
            let d = p.dist(pts[0]);
            if d > best {
                best = d;
                a = *p;
            }
        }
        let (mut b, mut best) = (pts[0], -1.0);
        for p in &pts {
            let d = p.dist(a);
            if d > best {
                best = d;
                b = *p;
            }
        }
        let dir = (b - a) * (1.0 / best);
        let mut line_dev = 0.0f64;
        let (mut t_lo, mut t_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            let r = *p - a;
            let t = r.dot(dir);
            t_lo = t_lo.min(t);
            t_hi = t_hi.max(t);
            line_dev = line_dev.max((r - dir * t).norm());
        }
        if line_dev <= FLAT_REL * scale {
            return Ok(Self::segment(a + dir * t_lo, a + dir * t_hi));
        }
        let raw = hull3(&pts)?;
        Ok(Self::from_hull(raw.points, raw.faces))
    }

    fn point(p: V3) -> Poly3 {
        Poly3 {
            verts: alloc::vec![p],
            faces: Vec::new(),
            rank: 0,
            vol: 0.0,
            surface: 0.0,
            mean_curv: 0.0,
            centroid: p,
            diameter: 0.0,
            face_planes: Vec::new(),
        }
    }

    fn segment(a: V3, b: V3) -> Poly3 {
        let len = a.dist(b);
        let verts = if b.lex_cmp(a) == core::cmp::Ordering::Less {
            alloc::vec![b, a]
        } else {
            alloc::vec![a, b]
        };
        Poly3 {
            centroid: (a + b) * 0.5,
            verts,
            faces: Vec::new(),
            rank: 1,
            vol: 0.0,
            surface: 0.0,
            // Steiner coefficient of t^2 in vol(seg + tB) is pi*len, so the
            // convention W_2(segment) = pi*len/3 corresponds to M = pi*len.
            mean_curv: fp::PI * len,
            diameter: len,
            face_planes: Vec::new(),
        }
    }

    /// Canonicalize a hull (vertices lexicographic, faces rotated to
    /// smallest index first and sorted) and integrate all measures.
    fn from_hull(points: Vec<V3>, faces: Vec<[u32; 3]>) -> Poly3 {
        // Keep only points referenced by a face, sorted lexicographically.
        let mut used = alloc::vec![u32::MAX; points.len()];
        let mut order: Vec<u32> = faces.iter().flatten().copied().collect();
        order.sort_unstable();
        order.dedup();
        order.sort_unstable_by(|&a, &b| points[a as usize].lex_cmp(points[b as usize]));
        let verts: Vec<V3> = order.iter().map(|&i| points[i as usize]).collect();
        for (new_id, &oi) in order.iter().enumerate() {
            used[oi as usize] = new_id as u32;
        }
        let mut new_faces: Vec<[u32; 3]> = faces
            .iter()
            .map(|f| {
                let mut t = [used[f[0] as usize], used[f[1] as usize], used[f[2] as usize]];
                // Rotate so the smallest index leads; orientation preserved.
                let k = (0..3).min_by_key(|&k| t[k]).unwrap();
                t.rotate_left(k);
                t
            })
            .collect();
        new_faces.sort_unstable();

        let n = verts.len();
        let base = verts[0];
        let mut vol = 0.0;
        let mut surface = 0.0;
        let mut cx = V3::ZERO;
        let mut face_planes = Vec::with_capacity(new_faces.len());
        for f in &new_faces {
            let (a, b, c) = (
                verts[f[0] as usize],
                verts[f[1] as usize],
                verts[f[2] as usize],
            );
            let cr = (b - a).cross(c - a);
            let area = 0.5 * cr.norm();
            surface += area;
            let w = det3(base, a, b, c);
            vol += w;
            cx = cx + (base + a + b + c) * (w / 4.0);
            let normal = cr * (0.5 / area.max(f64::MIN_POSITIVE));
            face_planes.push(Facet3 {
                normal,
                offset: normal.dot(a),
                area,
            });
        }
        vol /= 6.0;
        let centroid = cx * (1.0 / (6.0 * vol));

        let diameter = if n <= 1024 {
            let mut d = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    d = d.max(verts[i].dist(verts[j]));
                }
            }
            d
        } else {
            // Bounding-box diagonal stands in for huge intermediate hulls.
            let mut lo = verts[0];
            let mut hi = verts[0];
            for p in &verts {
                lo = v3(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
                hi = v3(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
            }
            hi.dist(lo)
        };

        // Pair each directed edge with its reverse to find the two faces
        // incident to it.
        let mut edges: Vec<(u64, u32)> = Vec::with_capacity(3 * new_faces.len());
        for (fi, f) in new_faces.iter().enumerate() {
            for k in 0..3 {
                let (i, j) = (f[k], f[(k + 1) % 3]);
                let key = if i < j {
                    ((i as u64) << 32) | j as u64
                } else {
                    ((j as u64) << 32) | i as u64
                };
                edges.push((key, fi as u32));
            }
        }
        edges.sort_unstable();

        // Hulls of point sets with near-coplanar clusters contain slivers
        // whose area sits at rounding scale, so their cross products point
        // anywhere. A sliver lies in the plane of the face across its
        // longest edge up to the same rounding; borrow that plane so the
        // dihedral sums below see zero turning instead of noise.
        let floor = 1e-13 * diameter * diameter;
        let mut weak: Vec<u32> = (0..new_faces.len() as u32)
            .filter(|&f| face_planes[f as usize].area <= floor)
            .collect();
        if !weak.is_empty() && new_faces.len() >= 4 {
            let is_weak = |w: &[u32], f: u32| w.binary_search(&f).is_ok();
            loop {
                let mut fixed: Vec<u32> = Vec::new();
                for &wf in &weak {
                    let f = new_faces[wf as usize];
                    let mut es: Vec<(f64, u64)> = (0..3)
                        .map(|k| {
                            let (i, j) = (f[k], f[(k + 1) % 3]);
                            let key = if i < j {
                                ((i as u64) << 32) | j as u64
                            } else {
                                ((j as u64) << 32) | i as u64
                            };
                            (verts[i as usize].dist(verts[j as usize]), key)
                        })
                        .collect();
                    es.sort_by(|a, b| b.0.total_cmp(&a.0));
                    'edge: for (_, key) in es {
                        let at = edges.partition_point(|e| e.0 < key);
                        for e in &edges[at..] {
                            if e.0 != key {
                                break;
                            }
                            if e.1 != wf && !is_weak(&weak, e.1) {
                                let (nrm, off) = {
                                    let src = &face_planes[e.1 as usize];
                                    (src.normal, src.offset)
                                };
                                face_planes[wf as usize].normal = nrm;
                                face_planes[wf as usize].offset = off;
                                fixed.push(wf);
                                break 'edge;
                            }
                        }
                    }
                }
                if fixed.is_empty() {
                    break;
                }
                weak.retain(|f| !fixed.contains(f));
                if weak.is_empty() {
                    break;
                }
            }
        }

        // Mean curvature: sum of edge length times exterior dihedral angle,
        // halved.
        let mut mean_curv = 0.0;
        let mut e = 0;
        while e + 1 < edges.len() {
            if edges[e].0 == edges[e + 1].0 {
                let i = (edges[e].0 >> 32) as u32;
                let j = (edges[e].0 & 0xffff_ffff) as u32;
                let len = verts[i as usize].dist(verts[j as usize]);
                let d = face_planes[edges[e].1 as usize]
                    .normal
                    .dot(face_planes[edges[e + 1].1 as usize].normal);
                // Coplanar splits snap to zero turning angle.
                let theta = if d >= 1.0 - 1e-12 { 0.0 } else { fp::acos(d) };
                mean_curv += 0.5 * len * theta;
                e += 2;
            } else {
                e += 1;
            }
        }

        Poly3 {
            verts,
            faces: new_faces,
            rank: 3,
            vol,
            surface,
            mean_curv,
            centroid,
            diameter,
            face_planes,
        }
    }

    pub fn verts(&self) -> &[V3] {
        &self.verts
    }

    pub fn faces(&self) -> &[[u32; 3]] {
        &self.faces
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn volume(&self) -> f64 {
        self.vol
    }

    pub fn surface_area(&self) -> f64 {
        self.surface
    }

    /// Integral of mean curvature over the boundary: edge lengths times
    /// exterior dihedral angles, halved. For a segment, pi times its length.
    pub fn mean_curvature(&self) -> f64 {
        self.mean_curv
    }

    pub fn centroid(&self) -> V3 {
        self.centroid
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Per-triangle planes (normals not merged across coplanar splits).
    pub fn face_planes(&self) -> &[Facet3] {
        &self.face_planes
    }

    pub fn support(&self, u: V3) -> f64 {
        let mut h = f64::NEG_INFINITY;
        for v in &self.verts {
            h = h.max(v.dot(u));
        }
        h
    }

    pub fn support_set(&self, u: V3, tol: f64) -> Vec<V3> {
        let h = self.support(u);
        self.verts
            .iter()
            .copied()
            .filter(|v| v.dot(u) >= h - tol)
            .collect()
    }

    /// Face normals with coplanar duplicates merged (tolerance on the unit
    /// sphere). Offsets come from the support function.
    pub fn facet_normals(&self) -> Vec<V3> {
        let mut ns: Vec<V3> = self.face_planes.iter().map(|f| f.normal).collect();
        dedupe_normals(&mut ns);
        ns
    }

    pub fn minkowski_sum(&self, other: &Poly3) -> Result<Poly3> {
        Poly3::from_points_allow_degenerate(&sum_points(self.verts(), other.verts()))
    }

    pub fn scale_translate(&self, lambda: f64, t: V3) -> Result<Poly3> {
        if !(lambda > 0.0) || !(t.x.is_finite() && t.y.is_finite() && t.z.is_finite()) {
            return Err(Error::DegenerateHull);
        }
        let verts: Vec<V3> = self.verts.iter().map(|v| *v * lambda + t).collect();
        match self.rank {
            3 => Ok(Self::from_hull(verts, self.faces.clone())),
            1 => Ok(Self::segment(verts[0], verts[1])),
            _ => Ok(Self::point(verts[0])),
        }
    }

    pub fn translate(&self, t: V3) -> Poly3 {
        self.scale_translate(1.0, t).unwrap()
    }

    pub fn contains(&self, inner: &Poly3, slack: f64) -> bool {
        if self.rank == 3 {
            inner.verts.iter().all(|v| {
                self.face_planes
                    .iter()
                    .all(|f| f.normal.dot(*v) <= f.offset + slack)
            })
        } else if self.rank == 1 {
            let (a, b) = (self.verts[0], self.verts[1]);
            inner.verts.iter().all(|p| {
                let ab = b - a;
                let t = ((*p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
                p.dist(a + ab * t) <= slack
            })
        } else {
            inner.verts.iter().all(|p| p.dist(self.verts[0]) <= slack)
        }
    }

    pub fn contains_point(&self, p: V3, slack: f64) -> bool {
        self.face_planes
            .iter()
            .all(|f| f.normal.dot(p) <= f.offset + slack)
    }
}

/// All pairwise vertex sums: the candidate set of the Minkowski sum.
pub fn sum_points(a: &[V3], b: &[V3]) -> Vec<V3> {
    let mut pts = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            pts.push(*p + *q);
        }
    }
    pts
}

/// Hull volume of a raw point cloud; zero when degenerate. This is what
/// inclusion-exclusion needs, without paying for canonicalization.
pub fn hull_volume(points: &[V3]) -> f64 {
    let mut lo = points[0];
    let mut hi = points[0];
    for p in points {
        lo = v3(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = v3(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    let scale = hi.dist(lo);
    if scale <= f64::MIN_POSITIVE {
        return 0.0;
    }
    let pts = dedupe_points(points, MERGE_REL * scale);
    match hull3(&pts) {
        Ok(h) => {
            let base = h.points[h.faces[0][0] as usize];
            let mut vol = 0.0;
            for f in &h.faces {
                vol += det3(
                    base,
                    h.points[f[0] as usize],
                    h.points[f[1] as usize],
                    h.points[f[2] as usize],
                );
            }
            vol / 6.0
        }
        Err(_) => 0.0,
    }
}

/// Merge near-identical unit normals in place (lexicographic sort plus a
/// windowed scan, same scheme as point dedup).
pub fn dedupe_normals(ns: &mut Vec<V3>) {
    const TOL: f64 = 1e-8;
    ns.sort_unstable_by(|a, b| a.lex_cmp(*b));
    let mut dead = alloc::vec![false; ns.len()];
    for i in 0..ns.len() {
        if dead[i] {
            continue;
        }
        let p = ns[i];
        let mut j = i + 1;
        while j < ns.len() && ns[j].x - p.x <= TOL {
            if !dead[j] && ns[j].dist(p) <= TOL {
                dead[j] = true;
            }
            j += 1;
        }
    }
    let mut k = 0;
    ns.retain(|_| {
        k += 1;
        !dead[k - 1]
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cube() -> Poly3 {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(v3(x, y, z));
                }
            }
        }
        Poly3::from_points(&v).unwrap()
    }

    pub fn octahedron() -> Poly3 {
        Poly3::from_points(&[
            v3(1.0, 0.0, 0.0),
            v3(-1.0, 0.0, 0.0),
            v3(0.0, 1.0, 0.0),
            v3(0.0, -1.0, 0.0),
            v3(0.0, 0.0, 1.0),
            v3(0.0, 0.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn cube_measures() {
        let c = cube();
        assert!((c.volume() - 1.0).abs() < 1e-12);
        assert!((c.surface_area() - 6.0).abs() < 1e-12);
        // 12 edges of length 1, each with exterior dihedral pi/2, halved.
        assert!((c.mean_curvature() - 3.0 * fp::PI).abs() < 1e-9);
        assert!((c.centroid().dist(v3(0.5, 0.5, 0.5))) < 1e-12);
        assert_eq!(c.facet_normals().len(), 6);
        assert!((c.diameter() - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn octahedron_volume() {
        // Two pyramids over the unit square cross-section: 2 * (1/3) * 2 = 4/3.
        let o = octahedron();
        assert!((o.volume() - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(o.verts().len(), 6);
        assert_eq!(o.faces().len(), 8);
    }

    #[test]
    fn minkowski_cube_plus_cube() {
        let c = cube();
        let s = c.minkowski_sum(&c).unwrap();
        assert!((s.volume() - 8.0).abs() < 1e-12);
        assert_eq!(s.verts().len(), 8);
    }

    #[test]
    fn minkowski_cube_plus_segment() {
        let c = cube();
        let seg = Poly3::from_points_allow_degenerate(&[
            v3(0.0, 0.0, 0.0),
            v3(0.0, 0.0, 2.0),
        ])
        .unwrap();
        assert_eq!(seg.rank(), 1);
        let s = c.minkowski_sum(&seg).unwrap();
        assert!((s.volume() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn segment_mean_curvature_convention() {
        let seg = Poly3::from_points_allow_degenerate(&[v3(0.0, 0.0, 0.0), v3(2.0, 0.0, 0.0)])
            .unwrap();
        assert!((seg.mean_curvature() - 2.0 * fp::PI).abs() < 1e-12);
    }

    #[test]
    fn canonical_vertex_order_is_lexicographic() {
        let c = cube();
        for w in c.verts().windows(2) {
            assert_eq!(w[0].lex_cmp(w[1]), core::cmp::Ordering::Less);
        }
    }

    #[test]
    fn contains_nested_scaled_copy() {
        let c = cube();
        let inner = c.scale_translate(0.5, v3(0.2, 0.2, 0.2)).unwrap();
        assert!(c.contains(&inner, 1e-12));
        assert!(!inner.contains(&c, 1e-12));
    }

    #[test]
    fn flat_input_rejects_even_when_degenerates_allowed() {
        let flat: Vec<V3> = (0..9)
            .map(|i| v3((i % 3) as f64, (i / 3) as f64, 0.0))
            .collect();
        assert!(Poly3::from_points_allow_degenerate(&flat).is_err());
    }
}
