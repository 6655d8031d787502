//! 3D convex hull: quickhull with face adjacency, conflict lists, and exact
//! orientation predicates.
//!
//! Points closer than `MERGE_REL` times the bounding-box diagonal merge
//! before hulling. Side-of-plane decisions run through adaptive exact
//! arithmetic, so inputs with many exactly coplanar points (Minkowski sums
//! of homothets, zonotope vertex sets) hull correctly: a point exactly on a
//! face plane is never treated as visible from it, and an apex exactly
//! coplanar with existing faces replaces them instead of leaving stale
//! geometry behind. Output faces are triangles forming a closed manifold
//! (coplanar facets stay triangulated; downstream consumers merge normals
//! where it matters).

use crate::error::{Error, Result};
use crate::vec::{v3, V3};
use alloc::vec::Vec;
use robust::{orient3d, Coord3D};

pub const FLAT_REL: f64 = 1e-9;
pub const MERGE_REL: f64 = 1e-10;

fn coord(p: V3) -> Coord3D<f64> {
    Coord3D { x: p.x, y: p.y, z: p.z }
}

/// Exact side of the plane through face vertices `v` that `p` lies on.
/// Faces wind counterclockwise seen from outside, so negative means
/// strictly outside, zero exactly on the plane.
fn side(points: &[V3], v: [u32; 3], p: V3) -> f64 {
    orient3d(
        coord(points[v[0] as usize]),
        coord(points[v[1] as usize]),
        coord(points[v[2] as usize]),
        coord(p),
    )
}

pub struct RawHull {
    pub points: Vec<V3>,
    /// Indices into `points`, counterclockwise seen from outside.
    pub faces: Vec<[u32; 3]>,
}

struct Face {
    v: [u32; 3],
    /// nb[k] is the face across edge (v[k], v[k+1]).
    nb: [u32; 3],
    normal: V3,
    offset: f64,
    pts: Vec<u32>,
    far: f64,
    far_id: u32,
    alive: bool,
}

impl Face {
    fn dist(&self, p: V3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    fn push_pt(&mut self, id: u32, d: f64) {
        self.pts.push(id);
        if self.pts.len() == 1 || d > self.far {
            self.far = d;
            self.far_id = id;
        }
    }
}

fn bbox_diag(pts: &[V3]) -> f64 {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for p in pts {
        lo = v3(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = v3(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    hi.dist(lo)
}

/// Sort lexicographically and merge clusters of near-duplicates. Sorting
/// bounds the scan: a duplicate of `p` can only sit in the window of points
/// whose x-coordinate is within `merge` of `p.x`.
pub fn dedupe_points(points: &[V3], merge: f64) -> Vec<V3> {
    let mut pts: Vec<V3> = points.to_vec();
    pts.sort_unstable_by(|a, b| a.lex_cmp(*b));
    let mut dead = alloc::vec![false; pts.len()];
    for i in 0..pts.len() {
        if dead[i] {
            continue;
        }
        let p = pts[i];
        let mut j = i + 1;
        while j < pts.len() && pts[j].x - p.x <= merge {
            if !dead[j] && pts[j].dist(p) <= merge {
                dead[j] = true;
            }
            j += 1;
        }
    }
    pts.iter()
        .zip(&dead)
        .filter(|(_, &d)| !d)
        .map(|(p, _)| *p)
        .collect()
}

fn face_of(points: &[V3], a: u32, b: u32, c: u32) -> (V3, f64) {
    let pa = points[a as usize];
    let n = (points[b as usize] - pa).cross(points[c as usize] - pa).normalized();
    (n, n.dot(pa))
}

/// Quickhull with exact visibility tests. `points` must already be
/// deduplicated and affinely 3-dimensional at the `FLAT_REL` tolerance, or
/// `DegenerateHull` returns.
pub fn hull3(points: &[V3]) -> Result<RawHull> {
    let n = points.len();
    if n < 4 {
        return Err(Error::DegenerateHull);
    }
    let scale = bbox_diag(points).max(f64::MIN_POSITIVE);
    let eps = FLAT_REL * scale;

    // Initial tetrahedron from extreme points.
    let mut lo = [0usize; 3];
    let mut hi = [0usize; 3];
    for (i, p) in points.iter().enumerate() {
        let c = [p.x, p.y, p.z];
        for k in 0..3 {
            let cl = points[lo[k]];
            let ch = points[hi[k]];
            if c[k] < [cl.x, cl.y, cl.z][k] {
                lo[k] = i;
            }
            if c[k] > [ch.x, ch.y, ch.z][k] {
                hi[k] = i;
            }
        }
    }
    let cand: [usize; 6] = [lo[0], lo[1], lo[2], hi[0], hi[1], hi[2]];
    let (mut i0, mut i1, mut best) = (cand[0], cand[0], -1.0);
    for &a in &cand {
        for &b in &cand {
            let d = points[a].dist(points[b]);
            if d > best {
                best = d;
                i0 = a;
                i1 = b;
            }
        }
    }
    if best <= eps {
        return Err(Error::DegenerateHull);
    }
    let dir = (points[i1] - points[i0]) * (1.0 / best);
    let (mut i2, mut best2) = (i0, -1.0);
    for (i, p) in points.iter().enumerate() {
        let r = *p - points[i0];
        let d = (r - dir * r.dot(dir)).norm();
        if d > best2 {
            best2 = d;
            i2 = i;
        }
    }
    if best2 <= eps {
        return Err(Error::DegenerateHull);
    }
    let nrm = (points[i1] - points[i0])
        .cross(points[i2] - points[i0])
        .normalized();
    let (mut i3, mut best3) = (i0, -1.0);
    for (i, p) in points.iter().enumerate() {
        let d = crate::fp::abs(nrm.dot(*p - points[i0]));
        if d > best3 {
            best3 = d;
            i3 = i;
        }
    }
    if best3 <= eps {
        return Err(Error::DegenerateHull);
    }

    let mut faces: Vec<Face> = Vec::new();
    let quad = [i0 as u32, i1 as u32, i2 as u32, i3 as u32];
    let inner = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        let (mut va, mut vb, vc) = (quad[a], quad[b], quad[c]);
        let (mut nx, mut off) = face_of(points, va, vb, vc);
        if nx.dot(inner) - off > 0.0 {
            core::mem::swap(&mut va, &mut vb);
            let r = face_of(points, va, vb, vc);
            nx = r.0;
            off = r.1;
        }
        faces.push(Face {
            v: [va, vb, vc],
            nb: [0; 3],
            normal: nx,
            offset: off,
            pts: Vec::new(),
            far: f64::NEG_INFINITY,
            far_id: 0,
            alive: true,
        });
    }
    link_all(&mut faces);

    // Conflict assignment: each point goes to the first face it is strictly
    // outside of. The float distance only ranks candidates for the apex.
    for i in 0..n as u32 {
        if quad.contains(&i) {
            continue;
        }
        let p = points[i as usize];
        for f in faces.iter_mut() {
            if side(points, f.v, p) < 0.0 {
                let d = f.dist(p);
                f.push_pt(i, d);
                break;
            }
        }
    }

    let mut stack: Vec<u32> = (0..4).filter(|&f| !faces[f as usize].pts.is_empty()).collect();
    let mut mark: Vec<u32> = alloc::vec![0; 16];
    let mut gen = 0u32;

    while let Some(fid) = stack.pop() {
        let f = &faces[fid as usize];
        if !f.alive || f.pts.is_empty() {
            continue;
        }
        let apex = f.far_id;
        let p = points[apex as usize];

        // Find the region to replace by flood fill. A face joins when the
        // apex is outside or exactly on its plane; folding the coplanar
        // faces in keeps the region connected (it is the full weakly
        // visible set) and guarantees the apex is never collinear with a
        // horizon edge, since that would put it on the outer face's plane.
        let (visible, horizon) = match visible_region(&faces, fid, points, p, &mut mark, &mut gen)
        {
            Some(r) => r,
            None => return Err(Error::DegenerateHull),
        };

        // Build the fan of new faces around the horizon.
        let first_new = faces.len() as u32;
        let m = horizon.len() as u32;
        for (k, &(a, b, outer)) in horizon.iter().enumerate() {
            let (nrm, off) = face_of(points, a, b, apex);
            let id = first_new + k as u32;
            let next = first_new + ((k as u32 + 1) % m);
            let prev = first_new + ((k as u32 + m - 1) % m);
            faces.push(Face {
                v: [a, b, apex],
                nb: [outer, next, prev],
                normal: nrm,
                offset: off,
                pts: Vec::new(),
                far: f64::NEG_INFINITY,
                far_id: 0,
                alive: true,
            });
            // Point the outer face back at us.
            let of = &mut faces[outer as usize];
            for k2 in 0..3 {
                if of.v[k2] == b && of.v[(k2 + 1) % 3] == a {
                    of.nb[k2] = id;
                }
            }
        }

        // Re-home the conflict points of the dead region.
        let mut orphans: Vec<u32> = Vec::new();
        for &vf in &visible {
            let f = &mut faces[vf as usize];
            f.alive = false;
            orphans.append(&mut f.pts);
        }
        for q in orphans {
            if q == apex {
                continue;
            }
            let pq = points[q as usize];
            for k in 0..m {
                let f = &mut faces[(first_new + k) as usize];
                if side(points, f.v, pq) < 0.0 {
                    let d = f.dist(pq);
                    f.push_pt(q, d);
                    break;
                }
            }
        }
        for k in 0..m {
            if !faces[(first_new + k) as usize].pts.is_empty() {
                stack.push(first_new + k);
            }
        }
    }

    let out_faces: Vec<[u32; 3]> = faces
        .iter()
        .filter(|f| f.alive)
        .map(|f| f.v)
        .collect();
    Ok(RawHull {
        points: points.to_vec(),
        faces: out_faces,
    })
}

/// Flood-fill the faces weakly visible from `p` (strictly outside or
/// exactly coplanar) starting at `start`, then walk the horizon. Returns
/// None when the horizon is not a single closed cycle.
#[allow(clippy::type_complexity)]
fn visible_region(
    faces: &[Face],
    start: u32,
    points: &[V3],
    p: V3,
    mark: &mut Vec<u32>,
    gen: &mut u32,
) -> Option<(Vec<u32>, Vec<(u32, u32, u32)>)> {
    *gen += 1;
    if mark.len() < faces.len() {
        mark.resize(faces.len(), 0);
    }
    let g = *gen;
    let mut visible = alloc::vec![start];
    mark[start as usize] = g;
    let mut head = 0;
    while head < visible.len() {
        let fid = visible[head] as usize;
        head += 1;
        for k in 0..3 {
            let nb = faces[fid].nb[k];
            if mark[nb as usize] != g && faces[nb as usize].alive {
                if side(points, faces[nb as usize].v, p) <= 0.0 {
                    mark[nb as usize] = g;
                    visible.push(nb);
                }
            }
        }
    }
    // Horizon edges, directed as they appear on visible faces.
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    for &vf in &visible {
        let f = &faces[vf as usize];
        for k in 0..3 {
            if mark[f.nb[k] as usize] != g {
                edges.push((f.v[k], f.v[(k + 1) % 3], f.nb[k]));
            }
        }
    }
    if edges.is_empty() {
        return None;
    }
    // Chain them into one cycle.
    let mut cycle = Vec::with_capacity(edges.len());
    let mut used = alloc::vec![false; edges.len()];
    cycle.push(edges[0]);
    used[0] = true;
    while cycle.len() < edges.len() {
        let tail = cycle.last().unwrap().1;
        let mut found = false;
        for (i, e) in edges.iter().enumerate() {
            if !used[i] && e.0 == tail {
                cycle.push(*e);
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    if cycle.last().unwrap().1 != cycle[0].0 {
        return None;
    }
    Some((visible, cycle))
}

fn link_all(faces: &mut [Face]) {
    let m = faces.len();
    for i in 0..m {
        for k in 0..3 {
            let a = faces[i].v[k];
            let b = faces[i].v[(k + 1) % 3];
            let mut partner = u32::MAX;
            for (j, g) in faces.iter().enumerate() {
                if i == j {
                    continue;
                }
                for k2 in 0..3 {
                    if g.v[k2] == b && g.v[(k2 + 1) % 3] == a {
                        partner = j as u32;
                    }
                }
            }
            faces[i].nb[k] = partner;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_pts() -> Vec<V3> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(v3(x, y, z));
                }
            }
        }
        v
    }

    fn hull_vol(h: &RawHull) -> f64 {
        let c = h.points[h.faces[0][0] as usize];
        let mut vol = 0.0;
        for f in &h.faces {
            vol += crate::vec::det3(
                c,
                h.points[f[0] as usize],
                h.points[f[1] as usize],
                h.points[f[2] as usize],
            );
        }
        vol / 6.0
    }

    #[test]
    fn cube_hull() {
        let mut pts = cube_pts();
        pts.push(v3(0.5, 0.5, 0.5));
        pts.push(v3(0.5, 0.5, 0.0));
        pts.push(v3(0.5, 0.0, 0.0));
        let h = hull3(&pts).unwrap();
        let mut used: Vec<u32> = h.faces.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 8, "only the 8 corners are vertices");
        assert!((hull_vol(&h) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs_error() {
        assert!(hull3(&[v3(0.0, 0.0, 0.0); 5]).is_err());
        let line: Vec<V3> = (0..10).map(|i| v3(i as f64, 0.0, 0.0)).collect();
        assert!(hull3(&line).is_err());
        let flat: Vec<V3> = (0..10)
            .map(|i| v3((i % 4) as f64, (i / 4) as f64, 0.0))
            .collect();
        assert!(hull3(&flat).is_err());
    }

    #[test]
    fn random_points_on_sphere_all_survive() {
        // splitmix-style generator, fixed seed
        let mut s = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            s = s.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        let pts: Vec<V3> = (0..500)
            .map(|_| {
                let z: f64 = 2.0 * next() - 1.0;
                let t = 2.0 * crate::fp::PI * next();
                let r = (1.0 - z * z).sqrt();
                v3(r * crate::fp::cos(t), r * crate::fp::sin(t), z)
            })
            .collect();
        let h = hull3(&pts).unwrap();
        let mut used: Vec<u32> = h.faces.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 500, "every point on the sphere is extreme");
        // Euler: V - E + F = 2 with E = 3F/2 for triangulations.
        assert_eq!(h.faces.len(), 2 * 500 - 4);
    }
}
