//! Real-analytic Eisenstein series for SL2(Z) and Gamma_0(N).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::arith::{gcd_i64, sigma_complex};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre_on;
use crate::specfun::modular::log_abs_im_eta4;
use crate::specfun::{bessel_k, gamma_ratio, kronecker_constant, ln_gamma, xi, zeta};
use crate::upper::{reduce_to_fundamental_domain, UpperHalfPoint};

type C = Complex64;

/// E(s, z) split as zeta(2s) E = constant_term + tail, at the reduced point.
#[derive(Debug, Clone, Copy)]
pub struct EisensteinValue {
    pub value: C,
    /// zeta(2s) y^s + pi^{2s-1} Gamma(1-s)/Gamma(s) zeta(2-2s) y^{1-s}
    pub constant_term: C,
    /// The non-constant Fourier modes of zeta(2s) E.
    pub tail: C,
}

impl EisensteinValue {
    /// zeta(2s) E(s, z)
    pub fn completed(&self) -> C {
        self.constant_term + self.tail
    }
}

fn check_poles(s: C) -> Result<()> {
    if (s - 1.0).norm() < 1e-3 {
        return Err(Error::Singular(format!("E(s,z) has a pole at s=1 (s={s})")));
    }
    if (s - 0.5).norm() < 1e-3 {
        return Err(Error::Singular(format!(
            "constant term is ill-conditioned at s=1/2 (s={s})"
        )));
    }
    if s.norm() < 1e-3 {
        return Err(Error::Singular(format!("E(s,z) has a pole at s=0 (s={s})")));
    }
    Ok(())
}

/// Non-constant part of zeta(2s) E(s, z) at a point with y bounded below.
fn fourier_tail(s: C, z: UpperHalfPoint) -> Result<C> {
    let nu = s - 0.5;
    // 4 pi^s / Gamma(s), in log form to keep large |Im s| finite
    let pref = (s * PI.ln() - ln_gamma(s)?).exp() * 4.0 * z.y.sqrt();
    let cutoff = 2.0 * PI * z.y + 45.0 + s.im.abs() * PI / 2.0;
    let mut acc = C::new(0.0, 0.0);
    let mut n = 1u64;
    loop {
        let arg = 2.0 * PI * n as f64 * z.y;
        if arg > cutoff {
            break;
        }
        let nf = n as f64;
        let term = (nu * nf.ln()).exp() * sigma_complex(n, 1.0 - 2.0 * s) * bessel_k(nu, arg)?;
        acc += term * (2.0 * PI * nf * z.x).cos();
        n += 1;
    }
    Ok(pref * acc)
}

/// zeta(2s) phi(s) = pi^{2s-1} Gamma(1-s)/Gamma(s) zeta(2-2s), written through
/// xi(2s-1) = xi(2-2s) on the right half plane to avoid Gamma poles.
fn scattering_numerator(s: C) -> Result<C> {
    if s.re > 0.5 {
        Ok(PI.sqrt() * gamma_ratio(s - 0.5, s)? * zeta(2.0 * s - 1.0)?)
    } else {
        Ok(((2.0 * s - 1.0) * PI.ln()).exp() * gamma_ratio(1.0 - s, s)? * zeta(2.0 - 2.0 * s)?)
    }
}

/// Fourier expansion of E(s, z), valid for all s away from 0, 1/2, 1. The
/// point is first reduced to the standard fundamental domain.
pub fn e_fourier(s: C, z: UpperHalfPoint) -> Result<EisensteinValue> {
    check_poles(s)?;
    let (w, _) = reduce_to_fundamental_domain(z);
    let z2s = zeta(2.0 * s)?;
    let ly = w.y.ln();
    let second = scattering_numerator(s)?;
    let constant_term = z2s * (s * ly).exp() + second * ((1.0 - s) * ly).exp();
    let tail = fourier_tail(s, w)?;
    Ok(EisensteinValue {
        value: (constant_term + tail) / z2s,
        constant_term,
        tail,
    })
}

/// E(s, z)
pub fn eisenstein(s: C, z: UpperHalfPoint) -> Result<C> {
    Ok(e_fourier(s, z)?.value)
}

/// zeta(2s) E(s, z), finite at s = 1/2.
pub fn eisenstein_completed(s: C, z: UpperHalfPoint) -> Result<C> {
    if (s - 0.5).norm() < 1e-3 {
        // average over a small circle: the function is analytic there
        let r = 0.01;
        let k = 16;
        let mut acc = C::new(0.0, 0.0);
        for j in 0..k {
            let p = C::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / k as f64);
            acc += e_fourier(s + p, z)?.completed();
        }
        return Ok(acc / k as f64);
    }
    Ok(e_fourier(s, z)?.completed())
}

/// C-infinity step: 0 on (-inf, 0], 1 on [1, inf).
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

/// Direct lattice evaluation for Re s >= 1.1: y^s sum' |m z + n|^{-2s} / (2 zeta(2s)),
/// with a smooth radial cutoff at `radius` and the exact integral of the
/// remainder. Independent of the Fourier expansion.
pub fn e_direct_with(s: C, z: UpperHalfPoint, radius: f64) -> Result<C> {
    if s.re < 1.1 {
        return Err(Error::Domain(format!(
            "direct Eisenstein sum diverges for Re s = {}",
            s.re
        )));
    }
    let (w, _) = reduce_to_fundamental_domain(z);
    let r_max = 2.0 * radius;
    let m_max = (r_max / w.y).ceil() as i64;
    let mut sum = C::new(0.0, 0.0);
    for m in -m_max..=m_max {
        let im = m as f64 * w.y;
        let rest = r_max * r_max - im * im;
        if rest < 0.0 {
            continue;
        }
        let re0 = m as f64 * w.x;
        let half = rest.sqrt();
        let n_lo = (-re0 - half).floor() as i64;
        let n_hi = (-re0 + half).ceil() as i64;
        for n in n_lo..=n_hi {
            if m == 0 && n == 0 {
                continue;
            }
            let re = re0 + n as f64;
            let r2 = re * re + im * im;
            let weight = 1.0 - smooth_step(r2.sqrt() / radius - 1.0);
            if weight == 0.0 {
                continue;
            }
            sum += weight * (-s * r2.ln()).exp();
        }
    }
    // (1/y) int |v|^{-2s} phi(|v|/R) dA, phi = 1 - weight
    let mut inner = C::new(0.0, 0.0);
    for (u, wt) in gauss_legendre_on(60, 1.0, 2.0) {
        inner += wt * smooth_step(u - 1.0) * ((1.0 - 2.0 * s) * u.ln()).exp();
    }
    inner += ((2.0 - 2.0 * s) * 2f64.ln()).exp() / (2.0 * s - 2.0);
    let tail = 2.0 * PI / w.y * ((2.0 - 2.0 * s) * radius.ln()).exp() * inner;
    Ok((s * w.y.ln()).exp() * (sum + tail) / (2.0 * zeta(2.0 * s)?))
}

pub fn e_direct(s: C, z: UpperHalfPoint) -> Result<C> {
    let (w, _) = reduce_to_fundamental_domain(z);
    e_direct_with(s, z, 25.0 * w.y.max(1.0))
}

/// Laurent data at s = 1: E(s, z) = pole_coeff (1/(s-1) + constant) + O(s-1).
#[derive(Debug, Clone, Copy)]
pub struct KroneckerExpansion {
    pub pole_coeff: f64,
    pub constant: f64,
}

pub fn e_kronecker_expansion(z: UpperHalfPoint) -> KroneckerExpansion {
    KroneckerExpansion {
        pole_coeff: 3.0 / PI,
        constant: -log_abs_im_eta4(z) + 2.0 * kronecker_constant(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cusp {
    Infinity,
    Zero,
}

/// Eisenstein series of Gamma_0(N) at the cusps infinity and 0, through the
/// level-one series.
pub fn e_level_n(cusp: Cusp, s: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    let nf = n as f64;
    let ns = (s * nf.ln()).exp();
    let den = ns - 1.0 / ns;
    if den.norm() < 1e-6 {
        return Err(Error::Singular(format!("N^s - N^-s vanishes at s={s}")));
    }
    let e1 = eisenstein(s, z)?;
    let en = eisenstein(s, z.scale(nf))?;
    Ok(match cusp {
        Cusp::Infinity => (en - e1 / ns) / den,
        Cusp::Zero => (e1 - en / ns) / den,
    })
}

pub type Matrix2 = [[C; 2]; 2];

pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_inv(a: &Matrix2) -> Result<Matrix2> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.norm() < 1e-300 {
        return Err(Error::Singular("singular 2x2 matrix".into()));
    }
    Ok([
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ])
}

/// M(s) = xi(2s) [[1, N^s], [N^s, 1]]
pub fn m_matrix(s: C, n: i64) -> Result<Matrix2> {
    let x = xi(2.0 * s)?;
    let ns = (s * (n as f64).ln()).exp();
    Ok([[x, x * ns], [x * ns, x]])
}

/// Scattering matrix of Gamma_0(N) for the cusps (infinity, 0).
pub fn scattering_matrix(s: C, n: i64) -> Result<Matrix2> {
    if (s - 0.5).norm() < 1e-9 || (s - 1.0).norm() < 1e-9 {
        return Err(Error::Singular(format!("scattering matrix at s={s}")));
    }
    let ratio = xi(2.0 * s - 1.0)? / xi(2.0 * s)?;
    let nf = n as f64;
    let n2s = (2.0 * s * nf.ln()).exp();
    let off = (s * nf.ln()).exp() - ((1.0 - s) * nf.ln()).exp();
    let f = ratio / (n2s - 1.0);
    let diag = f * (nf - 1.0);
    Ok([[diag, f * off], [f * off, diag]])
}

/// psi_0: 0 below 1, 1 above 2, quintic smoothstep in between.
pub fn psi0(t: f64) -> f64 {
    if t <= 1.0 {
        0.0
    } else if t >= 2.0 {
        1.0
    } else {
        let u = t - 1.0;
        u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
    }
}

/// Incomplete Eisenstein series sum over Gamma_infinity \ Gamma of psi0(Im(gz) / Y).
pub fn e_incomplete(z: UpperHalfPoint, big_y: f64) -> Result<f64> {
    if !(big_y > 1.0) {
        return Err(Error::Domain(format!(
            "incomplete Eisenstein series needs Y > 1, got {big_y}"
        )));
    }
    // only |cz + d|^2 <= y / Y contributes
    let bound = z.y / big_y;
    let mut acc = psi0(z.y / big_y);
    let c_max = (bound.sqrt() / z.y).floor() as i64;
    for c in 1..=c_max {
        let cf = c as f64;
        let rest = bound - cf * cf * z.y * z.y;
        if rest < 0.0 {
            continue;
        }
        let half = rest.sqrt();
        let lo = (-cf * z.x - half).floor() as i64;
        let hi = (-cf * z.x + half).ceil() as i64;
        for d in lo..=hi {
            if gcd_i64(c, d) != 1 {
                continue;
            }
            let re = cf * z.x + d as f64;
            let height = z.y / (re * re + cf * cf * z.y * z.y);
            acc += psi0(height / big_y);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upper::{fricke, Modular};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn direct_sum_invariance() {
        let s = c(2.0, 0.0);
        let z = p(0.2, 1.5);
        let a = e_direct(s, z).unwrap();
        let b = e_direct(s, z.translate(1.0)).unwrap();
        assert!((a - b).norm() < 1e-10);
        let z = p(0.3, 2.0);
        let a = e_direct(s, z).unwrap();
        let b = e_direct(s, Modular::S.apply(z)).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn direct_matches_fourier() {
        let pts = [
            p(0.0, 1.0),
            p(-0.5, 0.8660254037844386),
            p(0.1, 1.3),
            p(0.45, 2.0),
            p(-0.2, 3.5),
            p(0.3, 1.0),
            p(-0.4, 1.1),
            p(0.05, 5.0),
            p(0.25, 1.7),
            p(-0.33, 2.6),
        ];
        for s in [c(1.5, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(1.2, 4.0)] {
            for z in pts {
                let a = e_direct(s, z).unwrap();
                let b = e_fourier(s, z).unwrap().value;
                assert!(
                    (a - b).norm() < 1e-9 * b.norm(),
                    "s={s} z={z:?}: {a} vs {b}"
                );
            }
        }
        // E(2, i) = 4 zeta(2) L(2, chi_-4) / (2 zeta(4)) = 3 * catalan * 2 zeta(2)... via lattice of Z[i]
        let e = e_fourier(c(2.0, 0.0), p(0.0, 1.0)).unwrap().value;
        let catalan = 0.915_965_594_177_219;
        let z2 = PI * PI / 6.0;
        let z4 = PI.powi(4) / 90.0;
        assert!((e.re - 2.0 * z2 * catalan / z4).abs() < 1e-12);
    }

    #[test]
    fn fourier_symmetry_and_functional_equation() {
        let s = c(0.5, 3.0);
        let z = p(0.1, 1.25);
        let a = e_fourier(s, z).unwrap().completed();
        let b = e_fourier(s, Modular::S.apply(z)).unwrap().completed();
        assert!((a - b).norm() < 1e-9 * a.norm());
        // xi(2s) E(s) = xi(2-2s) E(1-s)
        for s in [c(0.4, 2.0), c(0.3, 0.7), c(0.7, 11.0), c(2.5, 1.0)] {
            for z in [p(0.0, 1.0), p(0.3, 2.2), p(-0.45, 0.95)] {
                let lhs = xi(2.0 * s).unwrap() * eisenstein(s, z).unwrap();
                let rhs = xi(2.0 - 2.0 * s).unwrap() * eisenstein(1.0 - s, z).unwrap();
                assert!((lhs - rhs).norm() < 1e-9 * lhs.norm(), "s={s} z={z:?}");
                let ta =
                    xi(2.0 * s).unwrap() / zeta(2.0 * s).unwrap() * e_fourier(s, z).unwrap().tail;
                let tb = xi(2.0 - 2.0 * s).unwrap() / zeta(2.0 - 2.0 * s).unwrap()
                    * e_fourier(1.0 - s, z).unwrap().tail;
                assert!((ta - tb).norm() < 1e-8 * ta.norm().max(1e-3));
            }
        }
    }

    #[test]
    fn tail_decays_in_the_cusp() {
        for t in [4.0, 10.0] {
            let s = c(0.5, t);
            let mut prev = e_fourier(s, p(0.2, 5.0)).unwrap().tail.norm();
            for y in [10.0, 20.0, 40.0] {
                let cur = e_fourier(s, p(0.2, y)).unwrap().tail.norm();
                assert!(cur < prev / 16.0, "t={t} y={y}: {cur} vs {prev}");
                prev = cur;
            }
        }
    }

    #[test]
    fn kronecker_limit() {
        let z = p(0.0, 2.0);
        let k = e_kronecker_expansion(z);
        let f = |h: f64| PI / 3.0 * eisenstein(c(1.0 + h, 0.0), z).unwrap().re - 1.0 / h;
        // f(h) = constant + a h + b h^2 + ...
        let (h1, h2, h3) = (0.04, 0.02, 0.01);
        let r1 = 2.0 * f(h2) - f(h1);
        let r2 = 2.0 * f(h3) - f(h2);
        let limit = (4.0 * r2 - r1) / 3.0;
        assert!(
            (limit - k.constant).abs() < 1e-5,
            "{limit} vs {}",
            k.constant
        );
        let k2 = e_kronecker_expansion(z.translate(1.0));
        assert!((k.constant - k2.constant).abs() < 1e-12);
        let cst = kronecker_constant();
        assert!(
            (cst - (0.577_215_664_901_532_9 - 2f64.ln() + 0.569_960_993_094_532_8)).abs() < 1e-9
        );
    }

    #[test]
    fn level_n_relations() {
        let s = c(0.5, 2.0);
        let n = 3;
        let z = p(0.1, 1.2);
        let einf = e_level_n(Cusp::Infinity, s, z, n).unwrap();
        let e0 = e_level_n(Cusp::Zero, s, z, n).unwrap();
        let e = eisenstein(s, z).unwrap();
        let ns = (s * 3f64.ln()).exp();
        assert!((e - einf - ns * e0).norm() < 1e-10 * e.norm());
        let f = e_level_n(Cusp::Infinity, s, fricke(z, n), n).unwrap();
        assert!((e0 - f).norm() < 1e-9 * e0.norm());
        // Gamma_0(N) invariance
        let g = Modular::new(1, 0, n, 1);
        let a = e_level_n(Cusp::Infinity, s, g.apply(z), n).unwrap();
        assert!((a - einf).norm() < 1e-9 * einf.norm());
        let a = e_level_n(Cusp::Infinity, s, z.translate(1.0), n).unwrap();
        assert!((a - einf).norm() < 1e-9 * einf.norm());
        assert!(e_level_n(Cusp::Infinity, c(0.0, PI / 3f64.ln()), z, n).is_err());
    }

    #[test]
    fn scattering_matrix_identities() {
        let s = c(0.5, 3.0);
        let a = scattering_matrix(s, 5).unwrap();
        let b = scattering_matrix(1.0 - s, 5).unwrap();
        let prod = mat_mul(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((prod[i][j] - id).norm() < 1e-10);
            }
        }
        let s = c(0.7, 1.0);
        let direct = scattering_matrix(s, 7).unwrap();
        let via = mat_mul(
            &mat_inv(&m_matrix(s, 7).unwrap()).unwrap(),
            &m_matrix(1.0 - s, 7).unwrap(),
        );
        for i in 0..2 {
            for j in 0..2 {
                assert!((direct[i][j] - via[i][j]).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn level_n_constant_term() {
        let s = c(0.7, 1.0);
        let n = 5;
        let phi = scattering_matrix(s, n).unwrap()[0][0];
        let rem = |y: f64| {
            let z = p(0.0, y);
            e_level_n(Cusp::Infinity, s, z, n).unwrap()
                - (s * y.ln()).exp()
                - phi * ((1.0 - s) * y.ln()).exp()
        };
        let (a, b) = (rem(20.0).norm(), rem(40.0).norm());
        assert!(a < 1e-9 && b < a.max(1e-13));
    }

    #[test]
    fn incomplete_examples() {
        assert!((e_incomplete(p(0.1, 10.0), 5.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(e_incomplete(p(0.3, 1.0), 50.0).unwrap(), 0.0);
        for i in 0..100 {
            let z = p(
                (i as f64 * 0.37).sin() * 0.5,
                0.01 + (i as f64 * 0.11).cos().abs() * 4.0,
            );
            assert!(e_incomplete(z, 1.5).unwrap() >= 0.0);
        }
        // invariance
        let z = p(0.3, 0.02);
        let a = e_incomplete(z, 1.2).unwrap();
        let b = e_incomplete(Modular::new(2, 1, 1, 1).apply(z), 1.2).unwrap();
        assert!((a - b).abs() < 1e-9);
        assert!(a > 0.0);
    }
}
