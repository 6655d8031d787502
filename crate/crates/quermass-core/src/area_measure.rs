//! Discrete mixed area measures of polytopes. In 3D, S(A,B;.) is atomic on
//! finitely many directions with weight the planar mixed area of the two
//! support sets; it gives mixed volumes as
//!   V(C,A,B) = (1/3) sum_u h_C(u) S(A,B;u),
//! which lets a many-vertex body (a ball approximation, say) sit in the
//! support slot without ever entering a hull. The 2D analogue weights edge
//! normals with edge lengths.

use crate::error::{Error, Result};
use crate::poly2::{hull_area, Poly2};
use crate::poly3::{dedupe_normals, Poly3};
use crate::vec::{v2, V2, V3};
use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;

#[derive(Clone, Debug, Default)]
pub struct SupportAtoms3 {
    pub dirs: Vec<V3>,
    pub weights: Vec<f64>,
}

impl SupportAtoms3 {
    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// (1/3) sum h_C(u) s_u over the atoms.
    pub fn mixed_volume_with(&self, c: &Poly3) -> f64 {
        let mut acc = 0.0;
        for (u, w) in self.dirs.iter().zip(&self.weights) {
            acc += c.support(*u) * w;
        }
        acc / 3.0
    }

    /// Same contraction against an exact Euclidean ball of radius r.
    pub fn mixed_volume_with_ball(&self, r: f64) -> f64 {
        let total: f64 = self.weights.iter().sum();
        r * total / 3.0
    }
}

/// Atoms of S(A,A;.): facet normals weighted by facet areas.
pub fn self_atoms3(a: &Poly3) -> SupportAtoms3 {
    let mut dirs: Vec<V3> = a.face_planes().iter().map(|f| f.normal).collect();
    dedupe_normals(&mut dirs);
    let mut weights = alloc::vec![0.0f64; dirs.len()];
    for f in a.face_planes() {
        let mut best = 0;
        let mut bd = -2.0;
        for (i, u) in dirs.iter().enumerate() {
            let d = u.dot(f.normal);
            if d > bd {
                bd = d;
                best = i;
            }
        }
        weights[best] += f.area;
    }
    SupportAtoms3 { dirs, weights }
}

/// Facet and edge skeleton of a polytope, as needed on the Gauss sphere:
/// true facets recovered by merging coplanar hull triangles, and the edges
/// between distinct facets together with their two incident facet normals
/// (the endpoints of the edge's arc of outward normals).
///
/// Triangles merge through a point-on-plane test rather than by comparing
/// normals: a sliver triangle cut from a many-vertex coplanar face can carry
/// a badly wobbled normal, but its vertices still sit exactly on the face
/// plane of its well-shaped neighbors.
struct Skeleton3 {
    normals: Vec<V3>,
    /// (edge vector, incident facet normal, incident facet normal).
    edges: Vec<(V3, V3, V3)>,
}

fn skeleton3(p: &Poly3) -> Skeleton3 {
    let faces = p.faces();
    let planes = p.face_planes();
    let verts = p.verts();
    let tol = 1e-9 * p.diameter().max(1e-12);

    fn find(parent: &mut [u32], mut i: u32) -> u32 {
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    let mut parent: Vec<u32> = (0..faces.len() as u32).collect();

    // Each undirected vertex pair is shared by exactly two triangles.
    let mut seen: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut shared: Vec<(u32, u32, u32, u32)> = Vec::with_capacity(3 * faces.len() / 2);
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let a = f[k];
            let b = f[(k + 1) % 3];
            let key = if a < b { (a, b) } else { (b, a) };
            match seen.entry(key) {
                Entry::Vacant(e) => {
                    e.insert(fi as u32);
                }
                Entry::Occupied(e) => shared.push((*e.get(), fi as u32, a, b)),
            }
        }
    }
    let on_plane = |tri: u32, pl: &crate::poly3::Facet3| {
        faces[tri as usize]
            .iter()
            .all(|&v| (pl.normal.dot(verts[v as usize]) - pl.offset).abs() <= tol)
    };
    for &(f, g, _, _) in &shared {
        if on_plane(f, &planes[g as usize]) || on_plane(g, &planes[f as usize]) {
            let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
            if rf != rg {
                parent[rf as usize] = rg;
            }
        }
    }

    let mut cluster: Vec<u32> = alloc::vec![u32::MAX; faces.len()];
    let mut acc: Vec<V3> = Vec::new();
    let mut first: Vec<u32> = Vec::new();
    for fi in 0..faces.len() as u32 {
        let root = find(&mut parent, fi) as usize;
        if cluster[root] == u32::MAX {
            cluster[root] = acc.len() as u32;
            acc.push(V3 {
                x: 0.0,
                y: 0.0,
                z: 0.0,
            });
            first.push(fi);
        }
        cluster[fi as usize] = cluster[root];
        let c = cluster[fi as usize] as usize;
        acc[c] = acc[c] + planes[fi as usize].normal * planes[fi as usize].area;
    }
    let normals: Vec<V3> = acc
        .iter()
        .zip(&first)
        .map(|(a, &fi)| {
            if a.norm() > 0.0 {
                a.normalized()
            } else {
                planes[fi as usize].normal
            }
        })
        .collect();

    let mut edges = Vec::new();
    for &(f, g, a, b) in &shared {
        let (cf, cg) = (cluster[f as usize], cluster[g as usize]);
        if cf != cg {
            edges.push((
                verts[b as usize] - verts[a as usize],
                normals[cf as usize],
                normals[cg as usize],
            ));
        }
    }
    Skeleton3 { normals, edges }
}

/// Is u inside the closed arc of outward normals swept from n1 to n2 around
/// the edge direction d? All four vectors are coplanar up to rounding; the
/// test compares signed sines around the edge axis.
fn in_normal_arc(u: V3, d: V3, n1: V3, n2: V3) -> bool {
    let axis = d.normalized();
    let c12 = n1.cross(n2).dot(axis);
    if c12.abs() <= 1e-12 {
        return false;
    }
    const ETA: f64 = 1e-10;
    let s1 = n1.cross(u).dot(axis);
    let s2 = u.cross(n2).dot(axis);
    if c12 > 0.0 {
        s1 >= -ETA && s2 >= -ETA
    } else {
        s1 <= ETA && s2 <= ETA
    }
}

/// Atoms of S(A,B;.) placed directly from the Gauss-sphere structure of the
/// two bodies, with weight the planar mixed area of the support sets F(A,u)
/// and F(B,u). An atom can only sit where F(A,u)+F(B,u) is two-dimensional:
/// at a facet normal of A or B, or where the normal arcs of an edge of A and
/// an edge of B cross (u = cross of the edge vectors, filtered to lie in both
/// arcs). Hulling A+B and reading its facets is tempting but unsound: a
/// many-vertex coplanar facet of the sum can come back triangulated with
/// folded slivers whose total area overshoots the facet.
///
/// Support-set capture (3e-8 of scale) deliberately exceeds the direction
/// dedup window (1e-8): when two nearly coincident atom directions merge,
/// the survivor's support sets still swallow both faces, so no weight is
/// lost, only smeared by a harmless second-order amount.
pub fn mixed_atoms3(a: &Poly3, b: &Poly3) -> Result<SupportAtoms3> {
    if core::ptr::eq(a, b) {
        return Ok(self_atoms3(a));
    }
    if a.rank() < 3 || b.rank() < 3 {
        return Err(Error::DegenerateHull);
    }
    let sa = skeleton3(a);
    let sb = skeleton3(b);
    let scale = a.diameter().max(b.diameter()).max(1e-12);
    let tol = 3e-8 * scale;

    let mut cands: Vec<V3> = Vec::with_capacity(sa.normals.len() + sb.normals.len());
    cands.extend_from_slice(&sa.normals);
    cands.extend_from_slice(&sb.normals);
    for (da, m1, m2) in &sa.edges {
        for (db, n1, n2) in &sb.edges {
            let c = da.cross(*db);
            let nn = c.norm();
            if nn <= 1e-12 * da.norm() * db.norm() {
                continue;
            }
            let u = c * (1.0 / nn);
            for cand in [u, u * -1.0] {
                if in_normal_arc(cand, *da, *m1, *m2) && in_normal_arc(cand, *db, *n1, *n2) {
                    cands.push(cand);
                }
            }
        }
    }
    dedupe_normals(&mut cands);

    let mut dirs = Vec::with_capacity(cands.len());
    let mut weights = Vec::with_capacity(cands.len());
    for u in cands {
        let fa = a.support_set(u, tol);
        let fb = b.support_set(u, tol);
        let w = planar_mixed_area(u, &fa, &fb);
        if w > 0.0 {
            dirs.push(u);
            weights.push(w);
        }
    }
    Ok(SupportAtoms3 { dirs, weights })
}

/// Planar mixed area of two faces orthogonal to u, via
/// (area(P+Q) - area(P) - area(Q)) / 2 in a shared in-plane basis.
pub(crate) fn planar_mixed_area(u: V3, fa: &[V3], fb: &[V3]) -> f64 {
    if fa.len() < 2 && fb.len() < 2 {
        return 0.0;
    }
    let e1 = u.any_orthonormal();
    let e2 = u.cross(e1);
    let proj = |pts: &[V3]| -> Vec<V2> {
        pts.iter().map(|p| v2(p.dot(e1), p.dot(e2))).collect()
    };
    let pa = proj(fa);
    let pb = proj(fb);
    let mut sum = Vec::with_capacity(pa.len() * pb.len());
    for x in &pa {
        for y in &pb {
            sum.push(*x + *y);
        }
    }
    let area_sum = hull_area(&sum);
    let area_a = if pa.len() > 2 { hull_area(&pa) } else { 0.0 };
    let area_b = if pb.len() > 2 { hull_area(&pb) } else { 0.0 };
    0.5 * (area_sum - area_a - area_b)
}

#[derive(Clone, Debug, Default)]
pub struct SupportAtoms2 {
    pub dirs: Vec<V2>,
    pub weights: Vec<f64>,
}

impl SupportAtoms2 {
    /// (1/2) sum h_C(u) s_u: the planar mixed area V(C, A).
    pub fn mixed_area_with(&self, c: &Poly2) -> f64 {
        let mut acc = 0.0;
        for (u, w) in self.dirs.iter().zip(&self.weights) {
            acc += c.support(*u) * w;
        }
        acc / 2.0
    }

    pub fn mixed_area_with_ball(&self, r: f64) -> f64 {
        let total: f64 = self.weights.iter().sum();
        r * total / 2.0
    }
}

/// Edge normals of A weighted by edge lengths: the atoms of S(A;.) in 2D.
pub fn edge_atoms2(a: &Poly2) -> SupportAtoms2 {
    let mut dirs = Vec::with_capacity(a.edges().len());
    let mut weights = Vec::with_capacity(a.edges().len());
    for e in a.edges() {
        dirs.push(e.normal);
        weights.push(e.len);
    }
    SupportAtoms2 { dirs, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly3::Poly3;
    use crate::vec::v3;

    fn cube() -> Poly3 {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push(v3(x, y, z));
                }
            }
        }
        Poly3::from_points(&pts).unwrap()
    }

    fn octahedron() -> Poly3 {
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
    fn self_atoms_total_surface() {
        let c = cube();
        let atoms = self_atoms3(&c);
        assert_eq!(atoms.len(), 6);
        let total: f64 = atoms.weights.iter().sum();
        assert!((total - 6.0).abs() < 1e-9);
        // V(C,C,C) = (1/3) sum h(u) area(u) = volume.
        assert!((atoms.mixed_volume_with(&c) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fast_route_matches_inclusion_exclusion() {
        let c = cube();
        let o = octahedron();
        let atoms = mixed_atoms3(&c, &o).unwrap();
        // V(C,C,O) via atoms of S(C,O) contracted with h_C.
        let fast = atoms.mixed_volume_with(&c);
        // Inclusion-exclusion for the multiset (C,C,O).
        let vol = |p: &Poly3| p.volume();
        let co = c.minkowski_sum(&o).unwrap();
        let cc = c.scale_translate(2.0, v3(0.0, 0.0, 0.0)).unwrap();
        let cco = cc.minkowski_sum(&o).unwrap();
        let slow = (vol(&cco) - vol(&cc) - 2.0 * vol(&co) + 2.0 * vol(&c) + vol(&o)) / 6.0;
        assert!(
            (fast - slow).abs() < 1e-9 * slow.abs(),
            "fast {fast}, slow {slow}"
        );
        // And the other contraction, V(O,C,O) against S(C,O).
        let fast2 = atoms.mixed_volume_with(&o);
        let oo = o.scale_translate(2.0, v3(0.0, 0.0, 0.0)).unwrap();
        let coo = c.minkowski_sum(&oo).unwrap();
        let slow2 = (vol(&coo) - vol(&oo) - 2.0 * vol(&co) + 2.0 * vol(&o) + vol(&c)) / 6.0;
        assert!(
            (fast2 - slow2).abs() < 1e-9 * slow2.abs(),
            "fast {fast2}, slow {slow2}"
        );
    }

    #[test]
    fn edge_atoms_recover_perimeter_and_area() {
        let sq = crate::poly2::Poly2::from_points(&[
            v2(0.0, 0.0),
            v2(2.0, 0.0),
            v2(2.0, 2.0),
            v2(0.0, 2.0),
        ])
        .unwrap();
        let atoms = edge_atoms2(&sq);
        let total: f64 = atoms.weights.iter().sum();
        assert!((total - 8.0).abs() < 1e-12);
        assert!((atoms.mixed_area_with(&sq) - 4.0).abs() < 1e-12);
    }
}
