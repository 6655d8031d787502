//! Mixed volumes by inclusion-exclusion over subset sums:
//!   V(K_1,...,K_n) = (1/n!) sum over nonempty S of (-1)^(n-|S|) vol(sum_S K_i).
//! Repeated bodies are grouped so a multiset like (K,K,L) costs five hull
//! volumes instead of seven, and integer multiples are dilations rather
//! than iterated sums.

use crate::body::Body;
use crate::error::{Error, Result};
use crate::poly2::hull_area;
use crate::poly3::{hull_volume, sum_points};
use crate::quermass::binomial;
use crate::vec::{V2, V3};
use alloc::vec::Vec;

pub fn mixed_volume(bodies: &[&Body]) -> Result<f64> {
    if bodies.is_empty() {
        return Err(Error::WrongArity);
    }
    let n = bodies[0].dim();
    if bodies.len() != n {
        return Err(Error::WrongArity);
    }
    if bodies.iter().any(|b| b.dim() != n) {
        return Err(Error::DimensionMismatch);
    }

    // Group repeats by pointer identity (callers pass the same reference for
    // repeated slots) or by cheap structural equality.
    let mut groups: Vec<(&Body, usize)> = Vec::new();
    'outer: for b in bodies {
        for g in groups.iter_mut() {
            if core::ptr::eq(g.0, *b) || same_vertices(g.0, b) {
                g.1 += 1;
                continue 'outer;
            }
        }
        groups.push((b, 1));
    }

    let mut total = 0.0f64;
    let mut counts = alloc::vec![0usize; groups.len()];
    // Odometer over multiplicity choices (k_1..k_m), skipping all-zero.
    loop {
        let mut idx = 0;
        loop {
            if idx == counts.len() {
                let factorial: f64 = (1..=n).map(|v| v as f64).product();
                return Ok(total / factorial);
            }
            counts[idx] += 1;
            if counts[idx] <= groups[idx].1 {
                break;
            }
            counts[idx] = 0;
            idx += 1;
        }

        let picked: usize = counts.iter().sum();
        let mut coeff = if (n - picked) % 2 == 0 { 1.0 } else { -1.0 };
        for (g, &k) in groups.iter().zip(&counts) {
            coeff *= binomial(g.1, k);
        }
        total += coeff * volume_of_scaled_sum(&groups, &counts)?;
    }
}

fn same_vertices(a: &Body, b: &Body) -> bool {
    if a.dim() != b.dim() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let ra = a.vertex_rows();
    let rb = b.vertex_rows();
    ra.iter().zip(&rb).all(|(x, y)| x == y)
}

/// vol(sum of k_j copies of body_j) with integer copies realized as
/// dilations and the pairwise sums hulled in between to keep point counts
/// down. Degenerate totals contribute zero.
fn volume_of_scaled_sum(groups: &[(&Body, usize)], counts: &[usize]) -> Result<f64> {
    let dim = groups[0].0.dim();
    match dim {
        2 => {
            let mut acc: Option<Vec<V2>> = None;
            for ((b, _), &k) in groups.iter().zip(counts) {
                if k == 0 {
                    continue;
                }
                let verts: Vec<V2> = b.two().verts().iter().map(|v| *v * k as f64).collect();
                acc = Some(match acc {
                    None => verts,
                    Some(prev) => {
                        let mut out = Vec::with_capacity(prev.len() * verts.len());
                        for a in &prev {
                            for c in &verts {
                                out.push(*a + *c);
                            }
                        }
                        crate::poly2::hull2(&out)
                    }
                });
            }
            Ok(acc.map(|pts| hull_area(&pts)).unwrap_or(0.0))
        }
        3 => {
            let mut acc: Option<Vec<V3>> = None;
            for ((b, _), &k) in groups.iter().zip(counts) {
                if k == 0 {
                    continue;
                }
                let verts: Vec<V3> = b.three().verts().iter().map(|v| *v * k as f64).collect();
                acc = Some(match acc {
                    None => verts,
                    Some(prev) => {
                        let summed = sum_points(&prev, &verts);
                        match crate::poly3::Poly3::from_points(&summed) {
                            Ok(p) => p.verts().to_vec(),
                            Err(_) => summed,
                        }
                    }
                });
            }
            Ok(acc.map(|pts| hull_volume(&pts)).unwrap_or(0.0))
        }
        _ => Err(Error::DimensionMismatch),
    }
}

/// Planar mixed area V(A,B) with V(A,A) = area(A):
/// (area(A+B) - area(A) - area(B)) / 2.
pub fn mixed_area2(a: &Body, b: &Body) -> Result<f64> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::DimensionMismatch);
    }
    let sum = a.minkowski_sum(b)?;
    Ok(0.5 * (sum.volume() - a.volume() - b.volume()))
}
