//! Riemann and Hurwitz zeta (with s-derivative) by Euler-Maclaurin summation,
//! completed zeta, and Dirichlet L-functions of quadratic characters.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, gamma, ln_gamma_real};
use super::EULER_GAMMA;
use crate::classgroup::Discriminant;
use crate::error::{Error, Result};

/// B_{2k} / (2k)! for k = 1..=12.
const BERN_OVER_FACT: [f64; 12] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
];

/// Euler-Maclaurin tuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    /// Number of Bernoulli correction terms (at most 12).
    pub terms: usize,
    /// Direct-summation length is `base + scale * |s|`.
    pub base: f64,
    pub scale: f64,
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig {
            terms: 10,
            base: 12.0,
            scale: 1.0,
        }
    }
}

impl EmConfig {
    /// A strictly more accurate configuration, for stability checks.
    pub fn doubled(self) -> Self {
        EmConfig {
            terms: 12,
            base: 2.0 * self.base,
            scale: 2.0 * self.scale,
        }
    }

    fn cutoff(&self, s: Complex64) -> usize {
        (self.base + self.scale * s.norm()).ceil() as usize
    }
}

/// (u^{1-s} - 1)/(s - 1) and its s-derivative; entire in s.
fn regularized_pole(s: Complex64, ln_u: f64) -> (Complex64, Complex64) {
    let eps = s - 1.0;
    if (eps * ln_u).norm() < 0.5 {
        // sum_{k>=1} (-L)^k eps^{k-1} / k!
        let mut val = Complex64::new(0.0, 0.0);
        let mut der = Complex64::new(0.0, 0.0);
        let mut coef = 1.0; // (-L)^k / k!
        let mut eps_pow_km2 = Complex64::new(0.0, 0.0); // eps^{k-2}
        let mut eps_pow_km1 = Complex64::new(1.0, 0.0); // eps^{k-1}
        for k in 1..60 {
            coef *= -ln_u / k as f64;
            val += coef * eps_pow_km1;
            if k >= 2 {
                der += coef * (k - 1) as f64 * eps_pow_km2;
            }
            eps_pow_km2 = eps_pow_km1;
            eps_pow_km1 *= eps;
            if coef.abs() * (k as f64) * eps_pow_km2.norm().max(1.0) < 1e-18 {
                break;
            }
        }
        (val, der)
    } else {
        let e = (-eps * ln_u).exp();
        let val = (e - 1.0) / eps;
        let der = -ln_u * e / eps - (e - 1.0) / (eps * eps);
        (val, der)
    }
}

/// Euler-Maclaurin evaluation of sum_{n>=0} (n+x)^{-s} and its s-derivative.
/// With `regularize`, the pole part 1/(s-1) is removed (entire result).
fn hurwitz_em(s: Complex64, x: f64, cfg: EmConfig, regularize: bool) -> (Complex64, Complex64) {
    let n = cfg.cutoff(s);
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let u = k as f64 + x;
        let lu = u.ln();
        let t = (-s * lu).exp();
        val += t;
        der -= lu * t;
    }
    let u = n as f64 + x;
    let lu = u.ln();
    let u_ms = (-s * lu).exp();
    if regularize {
        let (pv, pd) = regularized_pole(s, lu);
        val += pv;
        der += pd;
    } else {
        let eps = s - 1.0;
        let u1 = u_ms * u;
        val += u1 / eps;
        der += -lu * u1 / eps - u1 / (eps * eps);
    }
    val += 0.5 * u_ms;
    der -= 0.5 * lu * u_ms;
    // sum_k B2k/(2k)! * poch(s, 2k-1) * u^{-s-2k+1}
    let mut poch = s;
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut upow = u_ms / u; // u^{-s-1}
    let inv_u2 = 1.0 / (u * u);
    for (k, &b) in BERN_OVER_FACT.iter().enumerate().take(cfg.terms) {
        val += b * poch * upow;
        der += b * (dpoch - lu * poch) * upow;
        // advance poch(s, 2k-1) -> poch(s, 2k+1)
        for j in [2 * k + 1, 2 * k + 2] {
            let f = s + j as f64;
            dpoch = dpoch * f + poch;
            poch *= f;
        }
        upow *= inv_u2;
    }
    (val, der)
}

fn check_pole(s: Complex64) -> Result<()> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Singular("zeta pole at s = 1".into()));
    }
    Ok(())
}

/// Hurwitz zeta zeta(s, x) (order 0) or its s-derivative (order 1), x in (0, 1].
pub fn hurwitz_zeta(s: Complex64, x: f64, order: u8) -> Result<Complex64> {
    hurwitz_zeta_with(s, x, order, EmConfig::default())
}

pub fn hurwitz_zeta_with(s: Complex64, x: f64, order: u8, cfg: EmConfig) -> Result<Complex64> {
    check_pole(s)?;
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!(
            "Hurwitz parameter {x} outside (0, 1]"
        )));
    }
    let (v, d) = hurwitz_em(s, x, cfg, false);
    match order {
        0 => Ok(v),
        1 => Ok(d),
        _ => Err(Error::Domain("derivative order must be 0 or 1".into())),
    }
}

pub fn zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0, 0)
}

/// zeta and zeta' together.
pub fn zeta_with_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    check_pole(s)?;
    Ok(hurwitz_em(s, 1.0, EmConfig::default(), false))
}

/// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s).
pub fn xi(s: Complex64) -> Result<Complex64> {
    Ok(Complex64::new(PI, 0.0).powc(-s / 2.0) * gamma(s / 2.0)? * zeta(s)?)
}

/// xi'/xi(s) = -(log pi)/2 + psi(s/2)/2 + zeta'/zeta(s).
pub fn xi_logderiv(s: Complex64) -> Result<Complex64> {
    let (z, zp) = zeta_with_derivative(s)?;
    if z.norm() < 1e-9 {
        return Err(Error::Singular(format!("zeta vanishes near {s}")));
    }
    Ok(-0.5 * PI.ln() + 0.5 * digamma(s / 2.0)? + zp / z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaBundle {
    pub zeta: Complex64,
    pub zeta_prime: Complex64,
    pub xi: Complex64,
    pub xi_logderiv: Complex64,
}

pub fn zeta_bundle(s: Complex64) -> Result<ZetaBundle> {
    let (z, zp) = zeta_with_derivative(s)?;
    let xi_v = Complex64::new(PI, 0.0).powc(-s / 2.0) * gamma(s / 2.0)? * z;
    if z.norm() < 1e-9 {
        return Err(Error::Singular(format!("zeta vanishes near {s}")));
    }
    let xl = -0.5 * PI.ln() + 0.5 * digamma(s / 2.0)? + zp / z;
    Ok(ZetaBundle {
        zeta: z,
        zeta_prime: zp,
        xi: xi_v,
        xi_logderiv: xl,
    })
}

/// zeta'/zeta(2), used throughout.
pub fn zeta_logderiv_at_2() -> f64 {
    let (z, zp) = zeta_with_derivative(Complex64::new(2.0, 0.0)).unwrap();
    (zp / z).re
}

/// Kronecker-limit constant c = gamma - log 2 - zeta'/zeta(2).
pub fn kronecker_constant() -> f64 {
    EULER_GAMMA - 2f64.ln() - zeta_logderiv_at_2()
}

/// L(s, chi_D) or L'(s, chi_D) through the Hurwitz expansion
/// L(s) = |D|^{-s} sum_a chi_D(a) zeta(s, a/|D|). Exactly at s = 1 the
/// value and derivative come from the functional equation and log-Gamma sums.
pub fn dirichlet_l(s: Complex64, d: Discriminant, order: u8) -> Result<Complex64> {
    if order > 1 {
        return Err(Error::Domain("derivative order must be 0 or 1".into()));
    }
    if s == Complex64::new(1.0, 0.0) {
        let (l1, l1p) = l_at_one(d);
        return Ok(Complex64::new(if order == 0 { l1 } else { l1p }, 0.0));
    }
    let (v, dv) = dirichlet_l_hurwitz(s, d, EmConfig::default());
    Ok(if order == 0 { v } else { dv })
}

/// Hurwitz-route L(s, chi_D) and L'(s, chi_D), valid for every s including s = 1.
pub fn dirichlet_l_hurwitz(s: Complex64, d: Discriminant, cfg: EmConfig) -> (Complex64, Complex64) {
    let q = d.abs();
    let qf = q as f64;
    let mut sv = Complex64::new(0.0, 0.0);
    let mut sd = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let chi = d.chi(a as i64);
        if chi == 0 {
            continue;
        }
        let (v, dv) = hurwitz_em(s, a as f64 / qf, cfg, true);
        let c = chi as f64;
        sv += c * v;
        sd += c * dv;
    }
    let qs = (-s * qf.ln()).exp();
    (qs * sv, qs * (sd - qf.ln() * sv))
}

/// (L(1, chi_D), L'(1, chi_D)) for an odd real primitive character, via
/// L(0) = -(1/q) sum chi(a) a, L'(0) = -log q L(0) + sum chi(a) log Gamma(a/q),
/// and the completed functional equation.
pub fn l_at_one(d: Discriminant) -> (f64, f64) {
    let q = d.abs();
    let qf = q as f64;
    let mut first = 0.0;
    let mut lg = 0.0;
    for a in 1..q {
        let chi = d.chi(a as i64) as f64;
        if chi == 0.0 {
            continue;
        }
        first += chi * a as f64;
        lg += chi * ln_gamma_real(a as f64 / qf);
    }
    let l0 = -first / qf;
    let l0p = -qf.ln() * l0 + lg;
    let l1 = PI * l0 / qf.sqrt();
    let logderiv1 = -(qf / PI).ln() + EULER_GAMMA + 2f64.ln() - l0p / l0;
    (l1, l1 * logderiv1)
}
