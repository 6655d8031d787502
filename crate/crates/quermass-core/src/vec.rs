//! Plain 2- and 3-component vectors. Small enough that hand-rolled ops beat
//! pulling a linear-algebra crate into a `no_std` build.

use crate::fp;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct V2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct V3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn v2(x: f64, y: f64) -> V2 {
    V2 { x, y }
}

pub const fn v3(x: f64, y: f64, z: f64) -> V3 {
    V3 { x, y, z }
}

impl V2 {
    pub const ZERO: V2 = v2(0.0, 0.0);

    #[inline]
    pub fn dot(self, o: V2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product of the embedded vectors.
    #[inline]
    pub fn cross(self, o: V2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        fp::hypot(self.x, self.y)
    }

    #[inline]
    pub fn dist(self, o: V2) -> f64 {
        (self - o).norm()
    }

    /// Rotate by +90 degrees.
    #[inline]
    pub fn perp(self) -> V2 {
        v2(-self.y, self.x)
    }

    pub fn normalized(self) -> V2 {
        let n = self.norm();
        v2(self.x / n, self.y / n)
    }

    pub fn lex_cmp(self, o: V2) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap()
            .then(self.y.partial_cmp(&o.y).unwrap())
    }
}

impl V3 {
    pub const ZERO: V3 = v3(0.0, 0.0, 0.0);

    #[inline]
    pub fn dot(self, o: V3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: V3) -> V3 {
        v3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        fp::sqrt(self.dot(self))
    }

    #[inline]
    pub fn dist(self, o: V3) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> V3 {
        let n = self.norm();
        v3(self.x / n, self.y / n, self.z / n)
    }

    /// Any unit vector orthogonal to `self` (assumed nonzero).
    pub fn any_orthonormal(self) -> V3 {
        let a = if fp::abs(self.x) <= fp::abs(self.y) && fp::abs(self.x) <= fp::abs(self.z) {
            v3(1.0, 0.0, 0.0)
        } else if fp::abs(self.y) <= fp::abs(self.z) {
            v3(0.0, 1.0, 0.0)
        } else {
            v3(0.0, 0.0, 1.0)
        };
        self.cross(a).normalized()
    }

    pub fn lex_cmp(self, o: V3) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap()
            .then(self.y.partial_cmp(&o.y).unwrap())
            .then(self.z.partial_cmp(&o.z).unwrap())
    }
}

impl Add for V2 {
    type Output = V2;
    #[inline]
    fn add(self, o: V2) -> V2 {
        v2(self.x + o.x, self.y + o.y)
    }
}

impl Sub for V2 {
    type Output = V2;
    #[inline]
    fn sub(self, o: V2) -> V2 {
        v2(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for V2 {
    type Output = V2;
    #[inline]
    fn mul(self, s: f64) -> V2 {
        v2(self.x * s, self.y * s)
    }
}

impl Neg for V2 {
    type Output = V2;
    #[inline]
    fn neg(self) -> V2 {
        v2(-self.x, -self.y)
    }
}

impl Add for V3 {
    type Output = V3;
    #[inline]
    fn add(self, o: V3) -> V3 {
        v3(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for V3 {
    type Output = V3;
    #[inline]
    fn sub(self, o: V3) -> V3 {
        v3(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for V3 {
    type Output = V3;
    #[inline]
    fn mul(self, s: f64) -> V3 {
        v3(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for V3 {
    type Output = V3;
    #[inline]
    fn neg(self) -> V3 {
        v3(-self.x, -self.y, -self.z)
    }
}

/// Signed volume of the parallelepiped spanned by `b-a`, `c-a`, `d-a`.
#[inline]
pub fn det3(a: V3, b: V3, c: V3, d: V3) -> f64 {
    (b - a).cross(c - a).dot(d - a)
}
