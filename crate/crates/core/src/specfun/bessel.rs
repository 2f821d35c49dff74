//! Modified Bessel function K of complex order by trapezoidal quadrature of
//! K_nu(x) = (1/2) int_R exp(-x cosh t + nu t) dt along the shifted line
//! Im t = theta, with theta at the saddle height so that no cancellation
//! occurs for large imaginary order.

use num_complex::Complex64;

use crate::error::{Error, Result};

struct Contour {
    nu: Complex64,
    x: f64,
    shift: Complex64,
}

impl Contour {
    fn new(nu: Complex64, x: f64) -> Self {
        let tau = nu.im;
        let theta = (tau.abs() / x)
            .min(1.0)
            .asin()
            .min(std::f64::consts::FRAC_PI_2 - 0.1)
            * tau.signum();
        Contour {
            nu,
            x,
            shift: Complex64::new(0.0, theta),
        }
    }

    fn at(&self, t: f64) -> Complex64 {
        let u = t + self.shift;
        (-self.x * u.cosh() + self.nu * u).exp()
    }

    /// Log-magnitude of the integrand on the contour.
    fn log_mag(&self, t: f64) -> f64 {
        -self.x * t.cosh() * self.shift.im.cos() + self.nu.re * t - self.nu.im * self.shift.im
    }

    /// Half-width beyond which the integrand is negligible against its peak.
    fn limits(&self) -> (f64, f64) {
        let peak = (-200..=200)
            .map(|k| self.log_mag(k as f64 * 0.05))
            .fold(f64::MIN, f64::max);
        let mut hi = 0.5;
        while self.log_mag(hi) > peak - 48.0 && hi < 60.0 {
            hi += 0.25;
        }
        let mut lo = -0.5;
        while self.log_mag(lo) > peak - 48.0 && lo > -60.0 {
            lo -= 0.25;
        }
        (lo, hi)
    }
}

pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K-Bessel needs x > 0, got {x}")));
    }
    let c = Contour::new(nu, x);
    let (lo, hi) = c.limits();
    let mut n = (((hi - lo) / 0.1).ceil() as usize).max(16);
    let mut h = (hi - lo) / n as f64;
    let mut sum = 0.5 * (c.at(lo) + c.at(hi));
    for k in 1..n {
        sum += c.at(lo + k as f64 * h);
    }
    let mut estimate = 0.5 * sum * h;
    for _ in 0..12 {
        let mut mid = Complex64::new(0.0, 0.0);
        for k in 0..n {
            mid += c.at(lo + (k as f64 + 0.5) * h);
        }
        sum += mid;
        n *= 2;
        h *= 0.5;
        let next = 0.5 * sum * h;
        if (next - estimate).norm() <= 1e-14 * next.norm() {
            return Ok(next);
        }
        estimate = next;
    }
    Ok(estimate)
}
