//! Value-with-uncertainty arithmetic. Uncertainties are half-widths of
//! inscribed/circumscribed brackets and propagate first-order; exact
//! quantities carry zero.

use crate::fp;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Meas {
    pub val: f64,
    pub unc: f64,
}

pub fn exact(val: f64) -> Meas {
    Meas { val, unc: 0.0 }
}

pub fn bracket(lo: f64, hi: f64) -> Meas {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    Meas {
        val: 0.5 * (lo + hi),
        unc: 0.5 * (hi - lo),
    }
}

impl Meas {
    pub fn add(self, o: Meas) -> Meas {
        Meas {
            val: self.val + o.val,
            unc: self.unc + o.unc,
        }
    }

    pub fn sub(self, o: Meas) -> Meas {
        Meas {
            val: self.val - o.val,
            unc: self.unc + o.unc,
        }
    }

    pub fn mul(self, o: Meas) -> Meas {
        Meas {
            val: self.val * o.val,
            unc: fp::abs(self.val) * o.unc + fp::abs(o.val) * self.unc + self.unc * o.unc,
        }
    }

    pub fn scale(self, c: f64) -> Meas {
        Meas {
            val: c * self.val,
            unc: fp::abs(c) * self.unc,
        }
    }

    /// Power with a nonnegative-clamped base; derivative-based propagation.
    pub fn powf(self, e: f64) -> Meas {
        let x = if self.val > 0.0 { self.val } else { 0.0 };
        let val = fp::powf_nn(x, e);
        let unc = if x > 0.0 && self.unc > 0.0 {
            fp::abs(e) * fp::powf_nn(x, e - 1.0) * self.unc
        } else if self.unc > 0.0 {
            // Base collapsed to zero: bound by the value at the bracket top.
            fp::powf_nn(x + self.unc, e)
        } else {
            0.0
        };
        Meas { val, unc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_and_propagation() {
        let m = bracket(1.0, 1.2);
        assert_eq!(m.val, 1.1);
        assert!((m.unc - 0.1).abs() < 1e-15);
        let s = m.add(exact(2.0));
        assert_eq!(s.val, 3.1);
        assert!((s.unc - 0.1).abs() < 1e-15);
        let p = exact(4.0).powf(0.5);
        assert_eq!(p.val, 2.0);
        assert_eq!(p.unc, 0.0);
        let q = Meas { val: 4.0, unc: 0.4 }.powf(0.5);
        assert!((q.unc - 0.5 * 0.25_f64.sqrt() * 0.4).abs() < 1e-15);
    }
}
