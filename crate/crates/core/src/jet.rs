//! Order-2 forward-mode jets in two variables.
//!
//! A [`Jet2`] carries a value together with its first and second partial
//! derivatives with respect to the two surface parameters (x, y). Arithmetic
//! and elementary functions propagate derivatives exactly (no truncation
//! beyond order 2), so surface jets are exact up to rounding.

use crate::error::{Error, Result};
use crate::tol::TOL_ZERO;

/// Value plus exact partial derivatives up to order 2 at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
}

impl Jet2 {
    /// Constant jet.
    pub fn constant(c: f64) -> Self {
        Jet2 { v: c, dx: 0.0, dy: 0.0, dxx: 0.0, dxy: 0.0, dyy: 0.0 }
    }

    /// The first coordinate as a jet at value `x0`.
    pub fn var_x(x0: f64) -> Self {
        Jet2 { v: x0, dx: 1.0, dy: 0.0, dxx: 0.0, dxy: 0.0, dyy: 0.0 }
    }

    /// The second coordinate as a jet at value `y0`.
    pub fn var_y(y0: f64) -> Self {
        Jet2 { v: y0, dx: 0.0, dy: 1.0, dxx: 0.0, dxy: 0.0, dyy: 0.0 }
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
            dxx: self.dxx + o.dxx,
            dxy: self.dxy + o.dxy,
            dyy: self.dyy + o.dyy,
        }
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: self.v - o.v,
            dx: self.dx - o.dx,
            dy: self.dy - o.dy,
            dxx: self.dxx - o.dxx,
            dxy: self.dxy - o.dxy,
            dyy: self.dyy - o.dyy,
        }
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 { v: -self.v, dx: -self.dx, dy: -self.dy, dxx: -self.dxx, dxy: -self.dxy, dyy: -self.dyy }
    }

    pub fn scale(&self, c: f64) -> Jet2 {
        Jet2 {
            v: c * self.v,
            dx: c * self.dx,
            dy: c * self.dy,
            dxx: c * self.dxx,
            dxy: c * self.dxy,
            dyy: c * self.dyy,
        }
    }

    /// Leibniz product rule through order 2.
    pub fn mul(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            dx: self.dx * o.v + self.v * o.dx,
            dy: self.dy * o.v + self.v * o.dy,
            dxx: self.dxx * o.v + 2.0 * self.dx * o.dx + self.v * o.dxx,
            dxy: self.dxy * o.v + self.dx * o.dy + self.dy * o.dx + self.v * o.dxy,
            dyy: self.dyy * o.v + 2.0 * self.dy * o.dy + self.v * o.dyy,
        }
    }

    /// Reciprocal 1/self; errors when the value is numerically zero.
    pub fn recip(&self) -> Result<Jet2> {
        if self.v.abs() <= TOL_ZERO {
            return Err(Error::DivisionByZero);
        }
        let r = 1.0 / self.v;
        let r2 = r * r;
        let r3 = r2 * r;
        Ok(Jet2 {
            v: r,
            dx: -self.dx * r2,
            dy: -self.dy * r2,
            dxx: (2.0 * self.dx * self.dx - self.v * self.dxx) * r3,
            dxy: (2.0 * self.dx * self.dy - self.v * self.dxy) * r3,
            dyy: (2.0 * self.dy * self.dy - self.v * self.dyy) * r3,
        })
    }

    pub fn div(&self, o: &Jet2) -> Result<Jet2> {
        Ok(self.mul(&o.recip()?))
    }

    /// Composition with a scalar function given its value and first two
    /// derivatives at `self.v`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        Jet2 {
            v: f0,
            dx: f1 * self.dx,
            dy: f1 * self.dy,
            dxx: f2 * self.dx * self.dx + f1 * self.dxx,
            dxy: f2 * self.dx * self.dy + f1 * self.dxy,
            dyy: f2 * self.dy * self.dy + f1 * self.dyy,
        }
    }

    pub fn sin(&self) -> Jet2 {
        self.chain(self.v.sin(), self.v.cos(), -self.v.sin())
    }

    pub fn cos(&self) -> Jet2 {
        self.chain(self.v.cos(), -self.v.sin(), -self.v.cos())
    }

    pub fn sinh(&self) -> Jet2 {
        self.chain(self.v.sinh(), self.v.cosh(), self.v.sinh())
    }

    pub fn cosh(&self) -> Jet2 {
        self.chain(self.v.cosh(), self.v.sinh(), self.v.cosh())
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    /// Natural logarithm; requires a strictly positive value.
    pub fn ln(&self) -> Result<Jet2> {
        if self.v <= 0.0 {
            return Err(Error::Domain { func: "ln", value: self.v });
        }
        let r = 1.0 / self.v;
        Ok(self.chain(self.v.ln(), r, -r * r))
    }

    /// Square root; requires a strictly positive value (the jet of √ is
    /// singular at 0).
    pub fn sqrt(&self) -> Result<Jet2> {
        if self.v <= 0.0 {
            return Err(Error::Domain { func: "sqrt", value: self.v });
        }
        let s = self.v.sqrt();
        Ok(self.chain(s, 0.5 / s, -0.25 / (s * self.v)))
    }

    /// Integer power. `n = 0` gives the constant 1 (also at value 0);
    /// negative exponents error on a zero base.
    pub fn powi(&self, n: i32) -> Result<Jet2> {
        match n {
            0 => Ok(Jet2::constant(1.0)),
            1 => Ok(*self),
            _ if n >= 2 => {
                let f0 = self.v.powi(n);
                let f1 = f64::from(n) * self.v.powi(n - 1);
                let f2 = f64::from(n) * f64::from(n - 1) * self.v.powi(n - 2);
                Ok(self.chain(f0, f1, f2))
            }
            _ => {
                if self.v.abs() <= TOL_ZERO {
                    return Err(Error::DivisionByZero);
                }
                let f0 = self.v.powi(n);
                let f1 = f64::from(n) * self.v.powi(n - 1);
                let f2 = f64::from(n) * f64::from(n - 1) * self.v.powi(n - 2);
                Ok(self.chain(f0, f1, f2))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reciprocal_frozen_values() {
        // 1/x at x=2: value 1/2, d/dx = −1/4, d²/dx² = 1/4.
        let j = Jet2::var_x(2.0).recip().unwrap();
        assert_eq!(j.v, 0.5);
        assert_eq!(j.dx, -0.25);
        assert_eq!(j.dxx, 0.25);
        assert_eq!(j.dy, 0.0);
    }

    #[test]
    fn hand_differentiated_composite() {
        // h(x,y) = (x+y)^2 / 2 at (1,0): value 1/2, all five partials 1.
        let x = Jet2::var_x(1.0);
        let y = Jet2::var_y(0.0);
        let h = x.add(&y).powi(2).unwrap().scale(0.5);
        assert_eq!(h.v, 0.5);
        assert_eq!(h.dx, 1.0);
        assert_eq!(h.dy, 1.0);
        assert_eq!(h.dxx, 1.0);
        assert_eq!(h.dxy, 1.0);
        assert_eq!(h.dyy, 1.0);
    }

    #[test]
    fn division_by_zero_detected() {
        assert_eq!(Jet2::var_x(0.0).recip(), Err(Error::DivisionByZero));
        assert_eq!(Jet2::var_x(0.0).powi(-2), Err(Error::DivisionByZero));
        assert!(matches!(
            Jet2::var_x(-1.0).ln(),
            Err(Error::Domain { func: "ln", .. })
        ));
        assert!(matches!(
            Jet2::var_x(-1.0).sqrt(),
            Err(Error::Domain { func: "sqrt", .. })
        ));
        // x^0 is the constant 1, even at x = 0.
        assert_eq!(Jet2::var_x(0.0).powi(0).unwrap(), Jet2::constant(1.0));
        // x^1 at 0 is fine.
        assert_eq!(Jet2::var_x(0.0).powi(1).unwrap().dx, 1.0);
        // x^2 at 0 is fine (second derivative 2).
        assert_eq!(Jet2::var_x(0.0).powi(2).unwrap().dxx, 2.0);
    }

    /// Evaluate a two-variable scalar function built from jets.
    fn eval_composite(x: f64, y: f64) -> Jet2 {
        // f(x,y) = exp(x·y)·sin(x) + cosh(y)/(2+cos(x)) − sqrt(3+x+y)
        let jx = Jet2::var_x(x);
        let jy = Jet2::var_y(y);
        let t1 = jx.mul(&jy).exp().mul(&jx.sin());
        let t2 = jy.cosh().div(&Jet2::constant(2.0).add(&jx.cos())).unwrap();
        let t3 = Jet2::constant(3.0).add(&jx).add(&jy).sqrt().unwrap();
        t1.add(&t2).sub(&t3)
    }

    #[test]
    fn jets_match_central_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = 1e-4;
        for _ in 0..50 {
            let x = rng.gen_range(-1.0..1.0);
            let y = rng.gen_range(-1.0..1.0);
            let j = eval_composite(x, y);
            let fp = |a: f64, b: f64| eval_composite(a, b).v;
            let dx = (fp(x + h, y) - fp(x - h, y)) / (2.0 * h);
            let dy = (fp(x, y + h) - fp(x, y - h)) / (2.0 * h);
            let dxx = (fp(x + h, y) - 2.0 * fp(x, y) + fp(x - h, y)) / (h * h);
            let dyy = (fp(x, y + h) - 2.0 * fp(x, y) + fp(x, y - h)) / (h * h);
            let dxy = (fp(x + h, y + h) - fp(x + h, y - h) - fp(x - h, y + h)
                + fp(x - h, y - h))
                / (4.0 * h * h);
            let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + b.abs());
            assert!(rel(j.dx, dx) <= 1e-5, "dx: jet {} fd {}", j.dx, dx);
            assert!(rel(j.dy, dy) <= 1e-5, "dy: jet {} fd {}", j.dy, dy);
            assert!(rel(j.dxx, dxx) <= 1e-5, "dxx: jet {} fd {}", j.dxx, dxx);
            assert!(rel(j.dxy, dxy) <= 1e-5, "dxy: jet {} fd {}", j.dxy, dxy);
            assert!(rel(j.dyy, dyy) <= 1e-5, "dyy: jet {} fd {}", j.dyy, dyy);
        }
    }

    #[test]
    fn elementary_functions_match_finite_differences_individually() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let h = 1e-5;
        type F = (fn(&Jet2) -> Jet2, fn(f64) -> f64, &'static str);
        let funcs: Vec<F> = vec![
            (|j| j.sin(), |v| v.sin(), "sin"),
            (|j| j.cos(), |v| v.cos(), "cos"),
            (|j| j.sinh(), |v| v.sinh(), "sinh"),
            (|j| j.cosh(), |v| v.cosh(), "cosh"),
            (|j| j.exp(), |v| v.exp(), "exp"),
        ];
        for (jf, sf, name) in funcs {
            for _ in 0..50 {
                let x = rng.gen_range(-1.5..1.5);
                let j = jf(&Jet2::var_x(x));
                let d1 = (sf(x + h) - sf(x - h)) / (2.0 * h);
                let d2 = (sf(x + h) - 2.0 * sf(x) + sf(x - h)) / (h * h);
                assert!((j.dx - d1).abs() / (1.0 + d1.abs()) <= 1e-5, "{name} first");
                assert!((j.dxx - d2).abs() / (1.0 + d2.abs()) <= 1e-4, "{name} second");
            }
        }
        // ln and sqrt on positive arguments.
        for _ in 0..50 {
            let x: f64 = rng.gen_range(0.5..3.0);
            let j = Jet2::var_x(x).ln().unwrap();
            let d1 = ((x + h).ln() - (x - h).ln()) / (2.0 * h);
            assert!((j.dx - d1).abs() <= 1e-6);
            let j = Jet2::var_x(x).sqrt().unwrap();
            let d1 = ((x + h).sqrt() - (x - h).sqrt()) / (2.0 * h);
            assert!((j.dx - d1).abs() <= 1e-6);
        }
    }
}
