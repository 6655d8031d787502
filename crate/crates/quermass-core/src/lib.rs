#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod area_measure;
pub mod ball;
pub mod body;
pub mod check;
pub mod error;
pub mod firey;
pub mod fp;
pub mod grid;
pub mod hull3;
pub mod meas;
pub mod mixed;
pub mod mixed_quermass;
pub mod poly2;
pub mod poly3;
pub mod projection;
pub mod quermass;
pub mod randbody;
pub mod rng;
pub mod scalar;
pub mod vec;
pub mod zonotope;
