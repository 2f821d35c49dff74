//! Upper incomplete gamma function of complex order.

use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{Error, Result};

const TINY: f64 = 1e-300;

/// Legendre continued fraction, valid for x > 0 and all s.
fn continued_fraction(s: Complex64, x: f64) -> Result<Complex64> {
    let mut b = x + 1.0 - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for n in 1..200_000 {
        let an = -(n as f64) * (n as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((s * x.ln() - x).exp() * h);
        }
    }
    Err(Error::Numerical(format!(
        "incomplete gamma continued fraction failed at s={s}, x={x}"
    )))
}

/// Lower incomplete gamma by its power series.
fn lower_series(s: Complex64, x: f64) -> Result<Complex64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    for n in 1..2000 {
        term *= x / (s + n as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            return Ok((s * x.ln() - x).exp() * sum);
        }
    }
    Err(Error::Numerical(format!(
        "incomplete gamma series failed at s={s}, x={x}"
    )))
}

/// Gamma(s, x) for x > 0.
pub fn incomplete_gamma_upper(s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "incomplete gamma needs x > 0, got {x}"
        )));
    }
    let near_pole = s.re < 0.5 && (s.re - s.re.round()).hypot(s.im) < 0.25;
    if x >= 1.5 + 0.2 * s.im.abs().min(10.0) || near_pole {
        return continued_fraction(s, x);
    }
    if s.re < 0.5 {
        // Gamma(s, x) = (Gamma(s + 1, x) - x^s e^{-x}) / s
        let k = (0.5 - s.re).ceil() as usize;
        let mut val = incomplete_gamma_upper(s + k as f64, x)?;
        for j in (0..k).rev() {
            let sj = s + j as f64;
            val = (val - (sj * x.ln() - x).exp()) / sj;
        }
        return Ok(val);
    }
    Ok(gamma(s)? - lower_series(s, x)?)
}
