//! Complex Gamma, log-Gamma and digamma.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn pole_check(s: Complex64) -> Result<()> {
    if s.re <= 0.5
        && s.im.abs() < 1e-14
        && (s.re - s.re.round()).abs() < 1e-14
        && s.re.round() <= 0.0
    {
        return Err(Error::Singular(format!("Gamma pole at {s}")));
    }
    Ok(())
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    // Lanczos, valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Real log Gamma for x > 0.
pub fn ln_gamma_real(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_real(x + 1.0) - x.ln();
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Principal-ish branch of log Gamma (continuous in Im s for Re s >= 1/2).
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    pole_check(s)?;
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        let sin = (PI * s).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - ln_gamma_right(1.0 - s))
    }
}

pub fn gamma(s: Complex64) -> Result<Complex64> {
    pole_check(s)?;
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s).exp())
    } else {
        let sin = (PI * s).sin();
        Ok(PI / (sin * ln_gamma_right(1.0 - s).exp()))
    }
}

/// Gamma(a) / Gamma(b) via log-Gamma, stable for large imaginary parts.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
}

/// Digamma psi(s) = Gamma'/Gamma.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    pole_check(s)?;
    if s.re < 0.5 {
        // psi(1 - s) - psi(s) = pi cot(pi s)
        let cot = (PI * s).cos() / (PI * s).sin();
        return Ok(digamma(1.0 - s)? - PI * cot);
    }
    let mut z = s;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 15.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // asymptotic series with B_{2k} / (2k)
    const B2K: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in B2K.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((gamma(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma(c(-0.5, 0.0)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
        assert!(gamma(c(0.0, 0.0)).is_err());
        assert!(gamma(c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn reflection_identity() {
        for s in [c(0.3, 2.0), c(0.5, 7.0), c(-1.3, 0.4), c(0.1, -3.0)] {
            let lhs = gamma(s).unwrap() * gamma(1.0 - s).unwrap();
            let rhs = PI / (PI * s).sin();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0), "{s}");
        }
    }

    #[test]
    fn recurrence_and_conjugation() {
        for s in [c(0.7, 1.1), c(2.5, -4.0), c(0.5, 16.0)] {
            let a = gamma(s + 1.0).unwrap();
            let b = s * gamma(s).unwrap();
            assert!((a - b).norm() < 1e-13 * a.norm());
            assert!(
                (gamma(s.conj()).unwrap() - gamma(s).unwrap().conj()).norm() < 1e-14 * a.norm()
            );
        }
    }

    #[test]
    fn real_log_gamma() {
        assert!((ln_gamma_real(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_gamma_real(10.0) - 362880f64.ln()).abs() < 1e-12);
        assert!((ln_gamma_real(1e-3) - ln_gamma(c(1e-3, 0.0)).unwrap().re).abs() < 1e-12);
    }

    #[test]
    fn digamma_values_and_finite_difference() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap() + euler).norm() < 1e-14);
        assert!((digamma(c(0.5, 0.0)).unwrap() + euler + 2.0 * 2f64.ln()).norm() < 1e-14);
        for s in [c(0.25, 0.5), c(0.5, 3.0), c(3.0, -2.0), c(-0.7, 1.0)] {
            let h = 1e-5;
            let fd = (ln_gamma(s + h).unwrap() - ln_gamma(s - h).unwrap()) / (2.0 * h);
            assert!((fd - digamma(s).unwrap()).norm() < 1e-8, "{s}");
        }
    }
}
