//! Zonotopes as generator lists, Z = sum of segments [-g/2, g/2], so
//! h_Z(u) = (1/2) sum |<u, g_k>|. Projection bodies are zonotopes whose
//! generators come from discrete area measures, and their quermassintegrals
//! have exact combinatorial forms:
//!   3D: W_0 = sum over triples |det|, W_1 = (2/3) sum over pairs |cross|,
//!       W_2 = (pi/3) sum |g|.
//!   2D: W_0 = sum over pairs |cross|, W_1 = sum |g|.

use crate::body::Dir;
use crate::error::{Error, Result};
use crate::fp;
use crate::vec::{V2, V3};
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub enum Zonotope {
    Two(Vec<V2>),
    Three(Vec<V3>),
}

impl Zonotope {
    pub fn dim(&self) -> usize {
        match self {
            Zonotope::Two(_) => 2,
            Zonotope::Three(_) => 3,
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            Zonotope::Two(g) => g.len(),
            Zonotope::Three(g) => g.len(),
        }
    }

    pub fn support(&self, u: &Dir) -> Result<f64> {
        match (self, u) {
            (Zonotope::Two(gens), Dir::Two(u)) => {
                Ok(0.5 * gens.iter().map(|g| fp::abs(g.dot(*u))).sum::<f64>())
            }
            (Zonotope::Three(gens), Dir::Three(u)) => {
                Ok(0.5 * gens.iter().map(|g| fp::abs(g.dot(*u))).sum::<f64>())
            }
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn support2(&self, u: V2) -> f64 {
        match self {
            Zonotope::Two(gens) => 0.5 * gens.iter().map(|g| fp::abs(g.dot(u))).sum::<f64>(),
            Zonotope::Three(_) => 0.0,
        }
    }

    pub fn support3(&self, u: V3) -> f64 {
        match self {
            Zonotope::Three(gens) => 0.5 * gens.iter().map(|g| fp::abs(g.dot(u))).sum::<f64>(),
            Zonotope::Two(_) => 0.0,
        }
    }

    pub fn scale(&self, c: f64) -> Zonotope {
        match self {
            Zonotope::Two(g) => Zonotope::Two(g.iter().map(|v| *v * c).collect()),
            Zonotope::Three(g) => Zonotope::Three(g.iter().map(|v| *v * c).collect()),
        }
    }

    /// Minkowski sum: generator lists concatenate.
    pub fn sum(&self, other: &Zonotope) -> Result<Zonotope> {
        match (self, other) {
            (Zonotope::Two(a), Zonotope::Two(b)) => {
                let mut g = a.clone();
                g.extend_from_slice(b);
                Ok(Zonotope::Two(g))
            }
            (Zonotope::Three(a), Zonotope::Three(b)) => {
                let mut g = a.clone();
                g.extend_from_slice(b);
                Ok(Zonotope::Three(g))
            }
            _ => Err(Error::DimensionMismatch),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Zonotope::Two(g) => {
                let mut acc = 0.0;
                for i in 0..g.len() {
                    for j in i + 1..g.len() {
                        acc += fp::abs(g[i].cross(g[j]));
                    }
                }
                acc
            }
            Zonotope::Three(g) => {
                let n = g.len();
                let mut acc = 0.0;
                for i in 0..n {
                    for j in i + 1..n {
                        let cij = g[i].cross(g[j]);
                        for k in j + 1..n {
                            acc += fp::abs(cij.dot(g[k]));
                        }
                    }
                }
                acc
            }
        }
    }

    pub fn quermassintegral(&self, i: usize) -> Result<f64> {
        let n = self.dim();
        if i > n {
            return Err(Error::IndexOutOfRange);
        }
        if i == n {
            return Ok(crate::body::kappa(n));
        }
        match self {
            Zonotope::Two(g) => Ok(match i {
                0 => self.volume(),
                _ => g.iter().map(|v| v.norm()).sum::<f64>(),
            }),
            Zonotope::Three(g) => Ok(match i {
                0 => self.volume(),
                1 => {
                    let mut acc = 0.0;
                    for a in 0..g.len() {
                        for b in a + 1..g.len() {
                            acc += g[a].cross(g[b]).norm();
                        }
                    }
                    2.0 * acc / 3.0
                }
                _ => fp::PI / 3.0 * g.iter().map(|v| v.norm()).sum::<f64>(),
            }),
        }
    }
}
