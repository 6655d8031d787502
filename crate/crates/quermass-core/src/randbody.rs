//! Seeded random test bodies and nested homothet pairs. Three families:
//! gaussian hulls (smooth-ish), zonotopes (centrally symmetric), and
//! simplex-like hulls of dim+2 points (extremal corners). Counterexamples to
//! mixed-volume conjectures tend to hide at shape extremes, so the families
//! deliberately bracket the smooth/symmetric/spiky range.

use crate::body::{Body, Dir};
use crate::error::{Error, Result};
use crate::rng::{normal, rng_for, uniform, uniform_in};
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyKind {
    HullOfGaussians,
    RandomZonotope,
    RandomSimplexLike,
}

pub const BODY_KINDS: [BodyKind; 3] = [
    BodyKind::HullOfGaussians,
    BodyKind::RandomZonotope,
    BodyKind::RandomSimplexLike,
];

fn gauss_row(r: &mut ChaCha8Rng, dim: usize) -> [f64; 3] {
    [
        normal(r),
        normal(r),
        if dim == 3 { normal(r) } else { 0.0 },
    ]
}

fn raw_body(r: &mut ChaCha8Rng, dim: usize, kind: BodyKind) -> Result<Body> {
    match kind {
        BodyKind::HullOfGaussians => {
            // Facet counts drive a cubic cost in the projection-body volume
            // of sums, so the 3d cloud stays moderate.
            let m = if dim == 3 { 18 } else { 20 };
            let rows: Vec<[f64; 3]> = (0..m).map(|_| gauss_row(r, dim)).collect();
            Body::from_rows(dim, &rows)
        }
        BodyKind::RandomZonotope => {
            let gens: Vec<[f64; 3]> = (0..6).map(|_| gauss_row(r, dim)).collect();
            let mut rows = Vec::with_capacity(1 << 6);
            for mask in 0..1u32 << 6 {
                let mut p = [0.0f64; 3];
                for (b, g) in gens.iter().enumerate() {
                    let s = if mask >> b & 1 == 1 { 0.5 } else { -0.5 };
                    p[0] += s * g[0];
                    p[1] += s * g[1];
                    p[2] += s * g[2];
                }
                rows.push(p);
            }
            Body::from_rows(dim, &rows)
        }
        BodyKind::RandomSimplexLike => {
            let rows: Vec<[f64; 3]> = (0..dim + 2).map(|_| gauss_row(r, dim)).collect();
            Body::from_rows(dim, &rows)
        }
    }
}

/// Deterministic in (seed, dim, kind): recentered at the centroid and
/// rescaled to a diameter drawn from [1, 4].
pub fn random_body(seed: u64, dim: usize, kind: BodyKind) -> Result<Body> {
    if dim != 2 && dim != 3 {
        return Err(Error::DimensionMismatch);
    }
    let mut r = rng_for(seed);
    let body = loop {
        // Degenerate draws have probability zero but the loop keeps the
        // function total without breaking determinism.
        match raw_body(&mut r, dim, kind) {
            Ok(b) => break b,
            Err(_) => continue,
        }
    };
    let body = body.translate_to_centroid_origin();
    let target = uniform_in(&mut r, 1.0, 4.0);
    body.scale_translate(target / body.diameter(), &[0.0; 3])
}

/// A theorem instance: D sits inside K, D' = ratio.D + t, and when L takes
/// part D' sits inside L.
#[derive(Clone, Debug)]
pub struct BodyPair {
    pub k: Body,
    pub l: Option<Body>,
    pub d: Body,
    pub dprime: Body,
    pub homothety_ratio: f64,
    pub t: [f64; 3],
    pub seed: u64,
}

fn support_all(b: &Body, dirs: &[Dir]) -> Result<Vec<f64>> {
    dirs.iter().map(|u| b.support(u)).collect()
}

fn unit_jitter(r: &mut ChaCha8Rng, dim: usize) -> [f64; 3] {
    loop {
        let g = gauss_row(r, dim);
        let n = crate::fp::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        if n > 1e-12 {
            return [g[0] / n, g[1] / n, g[2] / n];
        }
    }
}

/// D = shrink.(K - c) + c about K's centroid; D' = ratio.D + t with t drawn
/// from the seed, pulled inside L when L is given.
pub fn nested_pair(
    k: &Body,
    l: Option<&Body>,
    shrink: f64,
    ratio: f64,
    seed: u64,
) -> Result<BodyPair> {
    if !(shrink > 0.0 && shrink <= 1.0) || !(ratio > 0.0) {
        return Err(Error::HypothesisViolated);
    }
    if let Some(l) = l {
        if l.dim() != k.dim() {
            return Err(Error::DimensionMismatch);
        }
    }
    let dim = k.dim();
    let c = k.centroid();
    let d = k.scale_translate(
        shrink,
        &[
            c[0] * (1.0 - shrink),
            c[1] * (1.0 - shrink),
            c[2] * (1.0 - shrink),
        ],
    )?;
    let base = d.scale_translate(ratio, &[0.0; 3])?;
    let mut r = rng_for(seed);
    let t = match l {
        Some(l) => {
            let cl = l.centroid();
            let cb = base.centroid();
            let t0 = [cl[0] - cb[0], cl[1] - cb[1], cl[2] - cb[2]];
            let dirs = l.facet_dirs();
            let hl = support_all(l, &dirs)?;
            let hb = support_all(&base, &dirs)?;
            let mut margin = f64::INFINITY;
            for ((u, hl), hb) in dirs.iter().zip(&hl).zip(&hb) {
                let dot = match u {
                    Dir::Two(u) => u.x * t0[0] + u.y * t0[1],
                    Dir::Three(u) => u.x * t0[0] + u.y * t0[1] + u.z * t0[2],
                };
                margin = margin.min(hl - hb - dot);
            }
            if margin < -1e-12 * l.diameter() {
                return Err(Error::CannotNest);
            }
            let rho = 0.9 * margin.max(0.0) * uniform(&mut r);
            let j = unit_jitter(&mut r, dim);
            [t0[0] + rho * j[0], t0[1] + rho * j[1], t0[2] + rho * j[2]]
        }
        None => {
            let rho = 0.05 * d.diameter() * uniform(&mut r);
            let j = unit_jitter(&mut r, dim);
            [rho * j[0], rho * j[1], rho * j[2]]
        }
    };
    let dprime = base.scale_translate(1.0, &t)?;
    let pair = BodyPair {
        k: k.clone(),
        l: l.cloned(),
        d,
        dprime,
        homothety_ratio: ratio,
        t,
        seed,
    };
    pair.validate()?;
    Ok(pair)
}

impl BodyPair {
    /// Re-derives every invariant: nesting, the recorded homothety, and the
    /// optional D' in L condition.
    pub fn validate(&self) -> Result<()> {
        if !self.k.contains(&self.d, 1e-9 * self.k.diameter())? {
            return Err(Error::NotNested);
        }
        let rebuilt = self.d.scale_translate(self.homothety_ratio, &self.t)?;
        let dirs = self.dprime.facet_dirs();
        if self.dprime.grid_distance(&rebuilt, &dirs)? > 1e-10 {
            return Err(Error::ConstructionFailed);
        }
        if let Some(l) = &self.l {
            if !l.contains(&self.dprime, 1e-9 * l.diameter())? {
                return Err(Error::CannotNest);
            }
        }
        Ok(())
    }
}
