//! The regularized functions B(s, z), B(s1, s2, z), R(s1, s2, z) and C(s, z).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::eisenstein::{e_fourier, eisenstein};
use crate::error::{Error, Result};
use crate::specfun::modular::log_abs_im_eta4;
use crate::specfun::{gamma_ratio, kronecker_constant, ln_gamma, xi, xi_logderiv, zeta};
use crate::upper::UpperHalfPoint;

type C = Complex64;

const GUARD: f64 = 1e-3;

fn cpow(base: f64, e: C) -> C {
    (e * base.ln()).exp()
}

/// s-dependent constants of B(s, z) on the critical line.
#[derive(Debug, Clone, Copy)]
pub struct BContext {
    pub s: C,
    zeta2s: C,
    coef_e2s: C,
    log_term: f64,
    xi_term: f64,
}

impl BContext {
    pub fn new(s: C) -> Result<Self> {
        if (s - 0.5).norm() <= GUARD {
            return Err(Error::Singular(format!(
                "B(s,z) excluded near s=1/2 (s={s})"
            )));
        }
        let zeta2s = zeta(2.0 * s)?;
        let z2 = zeta2s.norm_sqr();
        // pi^{1-2s} Gamma(s)/Gamma(1-s) zeta(2s)^2
        let coef_e2s = cpow(PI, 1.0 - 2.0 * s) * gamma_ratio(s, 1.0 - s)? * zeta2s * zeta2s;
        Ok(BContext {
            s,
            zeta2s,
            coef_e2s,
            log_term: 6.0 / PI * z2,
            xi_term: 12.0 / PI * z2 * xi_logderiv(2.0 * s)?.re,
        })
    }

    /// B(s, z); real for Re s = 1/2.
    pub fn eval(&self, z: UpperHalfPoint) -> Result<f64> {
        let e = e_fourier(self.s, z)?.completed();
        let e2 = eisenstein(2.0 * self.s, z)?;
        let kron = -log_abs_im_eta4(z) + 2.0 * kronecker_constant();
        Ok(e.norm_sqr() - 2.0 * (self.coef_e2s * e2).re - self.log_term * kron - self.xi_term)
    }

    pub fn zeta2s(&self) -> C {
        self.zeta2s
    }
}

pub fn b_func(s: C, z: UpperHalfPoint) -> Result<f64> {
    BContext::new(s)?.eval(z)
}

fn strip_guard(s1: C, s2: C) -> Result<()> {
    for (name, v) in [("s1", s1), ("s2", s2)] {
        if !(v.re > 0.25 && v.re < 0.75) {
            return Err(Error::Domain(format!("{name}={v} outside 1/4 < Re < 3/4")));
        }
    }
    let lines = [
        (s1 - 0.5).norm(),
        (s2 - 0.5).norm(),
        (s1 + s2 - 1.0).norm(),
        (s1 - s2).norm(),
    ];
    if lines.iter().any(|&d| d <= GUARD) {
        return Err(Error::Singular(format!(
            "({s1}, {s2}) too close to a singular line"
        )));
    }
    Ok(())
}

/// The four-term combination B(s1, s2, z) without guards.
fn b_combination(s1: C, s2: C, z: UpperHalfPoint) -> Result<C> {
    let (z1, z2) = (zeta(2.0 * s1)?, zeta(2.0 * s2)?);
    let (w1, w2) = (zeta(2.0 - 2.0 * s1)?, zeta(2.0 - 2.0 * s2)?);
    let f1 = cpow(PI, 2.0 * s1 - 1.0) * gamma_ratio(1.0 - s1, s1)?;
    let f2 = cpow(PI, 2.0 * s2 - 1.0) * gamma_ratio(1.0 - s2, s2)?;
    Ok(z1 * z2 * eisenstein(s1 + s2, z)?
        + f2 * z1 * w2 * eisenstein(1.0 + s1 - s2, z)?
        + f1 * w1 * z2 * eisenstein(1.0 + s2 - s1, z)?
        + f1 * f2 * w1 * w2 * eisenstein(2.0 - s1 - s2, z)?)
}

/// B(s1, s2, z) multiplied by pi^{-s1-s2} Gamma(s1) Gamma(s2), written with
/// xi; symmetric under s1 -> 1 - s1 and s2 -> 1 - s2.
pub fn b_combination_completed(s1: C, s2: C, z: UpperHalfPoint) -> Result<C> {
    strip_guard(s1, s2)?;
    let (x1, x2) = (xi(2.0 * s1)?, xi(2.0 * s2)?);
    let (y1, y2) = (xi(2.0 - 2.0 * s1)?, xi(2.0 - 2.0 * s2)?);
    Ok(x1 * x2 * eisenstein(s1 + s2, z)?
        + x1 * y2 * eisenstein(1.0 + s1 - s2, z)?
        + y1 * x2 * eisenstein(1.0 + s2 - s1, z)?
        + y1 * y2 * eisenstein(2.0 - s1 - s2, z)?)
}

pub fn b_combination_raw(s1: C, s2: C, z: UpperHalfPoint) -> Result<C> {
    strip_guard(s1, s2)?;
    b_combination(s1, s2, z)
}

/// zeta(2s1) zeta(2s2) E(s1, z) E(s2, z) - B(s1, s2, z)
pub fn b_two(s1: C, s2: C, z: UpperHalfPoint) -> Result<C> {
    strip_guard(s1, s2)?;
    let e1 = e_fourier(s1, z)?.completed();
    let e2 = e_fourier(s2, z)?.completed();
    Ok(e1 * e2 - b_combination(s1, s2, z)?)
}

/// Mean of f over a circle of radius r about c, k equally spaced nodes; for
/// f holomorphic in the disc this is f(c) up to O((r/rho)^k).
pub fn circle_mean<F: Fn(C) -> Result<C>>(f: F, c: C, r: f64, k: usize) -> Result<C> {
    let mut acc = C::new(0.0, 0.0);
    for j in 0..k {
        let p = C::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / k as f64);
        acc += f(c + p)?;
    }
    Ok(acc / k as f64)
}

/// E(u, z) and E(u, N z), from which both cusp series of Gamma_0(N) follow.
struct LevelPair {
    e_inf: C,
    e_zero: C,
}

fn level_pair(u: C, z: UpperHalfPoint, n: i64) -> Result<LevelPair> {
    let nu = cpow(n as f64, u);
    let den = nu - 1.0 / nu;
    if den.norm() < 1e-6 {
        return Err(Error::Singular(format!("N^u - N^-u vanishes at u={u}")));
    }
    let e1 = eisenstein(u, z)?;
    let en = eisenstein(u, z.scale(n as f64))?;
    Ok(LevelPair {
        e_inf: (en - e1 / nu) / den,
        e_zero: (e1 - en / nu) / den,
    })
}

/// R(s1, s2, z) times pi^{-s1-s2} Gamma(s1) Gamma(s2): the eight-term
/// combination of Gamma_0(N) Eisenstein series.
pub fn r_completed(s1: C, s2: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    strip_guard(s1, s2)?;
    r_completed_unguarded(s1, s2, z, n)
}

fn r_completed_unguarded(s1: C, s2: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    let nf = n as f64;
    let (x1, x2) = (xi(2.0 * s1)?, xi(2.0 * s2)?);
    let (y1, y2) = (xi(2.0 - 2.0 * s1)?, xi(2.0 - 2.0 * s2)?);
    let a = level_pair(s1 + s2, z, n)?;
    let b = level_pair(1.0 + s2 - s1, z, n)?;
    let c = level_pair(1.0 + s1 - s2, z, n)?;
    let d = level_pair(2.0 - s1 - s2, z, n)?;
    Ok(x1 * x2 * (cpow(nf, s2) * a.e_inf + cpow(nf, s1) * a.e_zero)
        + y1 * x2 * (cpow(nf, s2) * b.e_inf + cpow(nf, 1.0 - s1) * b.e_zero)
        + x1 * y2 * (cpow(nf, 1.0 - s2) * c.e_inf + cpow(nf, s1) * c.e_zero)
        + y1 * y2 * (cpow(nf, 1.0 - s2) * d.e_inf + cpow(nf, 1.0 - s1) * d.e_zero))
}

fn gamma_factor(s1: C, s2: C) -> Result<C> {
    Ok((-(s1 + s2) * PI.ln() + ln_gamma(s1)? + ln_gamma(s2)?).exp())
}

pub fn r_func(s1: C, s2: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    Ok(r_completed(s1, s2, z, n)? / gamma_factor(s1, s2)?)
}

/// Laurent constant at s = 1 of E(s, w): E = 3/(pi (s-1)) + k(w) + O(s-1).
fn kronecker_constant_term(w: UpperHalfPoint) -> f64 {
    3.0 / PI * (-log_abs_im_eta4(w) + 2.0 * kronecker_constant())
}

/// Laurent data at s = 1 of E_infinity and E_0 of level N: common residue
/// and the two constant terms.
pub fn level_n_laurent(z: UpperHalfPoint, n: i64) -> (f64, f64, f64) {
    let nf = n as f64;
    let rho = 3.0 / PI;
    let ln = nf.ln();
    let g0 = nf / (nf * nf - 1.0);
    let g1 = -ln * (nf + 1.0 / nf) / (nf - 1.0 / nf).powi(2);
    let k1 = kronecker_constant_term(z);
    let kn = kronecker_constant_term(z.scale(nf));
    let shared = g1 * rho * (1.0 - 1.0 / nf) + g0 * rho * ln / nf;
    let c_inf = shared + g0 * (kn - k1 / nf);
    let c_zero = shared + g0 * (k1 - kn / nf);
    (rho / (nf + 1.0), c_inf, c_zero)
}

/// s-dependent constants of R(s, 1-s, z) at level N.
#[derive(Debug, Clone, Copy)]
pub struct RLineContext {
    pub s: C,
    pub n: i64,
    x1: C,
    x2: C,
    d1: C,
    d2: C,
    inv_gamma: C,
}

impl RLineContext {
    pub fn new(s: C, n: i64) -> Result<Self> {
        if (s - 0.5).norm() <= GUARD {
            return Err(Error::Singular(format!(
                "R(s,1-s) excluded near s=1/2 (s={s})"
            )));
        }
        if n < 2 {
            return Err(Error::Domain(format!("level N={n} must be at least 2")));
        }
        Ok(RLineContext {
            s,
            n,
            x1: xi(2.0 * s)?,
            x2: xi(2.0 - 2.0 * s)?,
            d1: xi_logderiv(2.0 * s)?,
            d2: xi_logderiv(2.0 - 2.0 * s)?,
            inv_gamma: 1.0 / gamma_factor(s, 1.0 - s)?,
        })
    }

    /// R(s, 1-s, z): the poles of the first and last brackets cancel between
    /// the two cusps, leaving derivatives of the xi factors against the
    /// common residue plus the Laurent constants of E_inf and E_0 at 1.
    pub fn eval(&self, z: UpperHalfPoint) -> Result<C> {
        let (s, n) = (self.s, self.n);
        let nf = n as f64;
        let ln = nf.ln();
        let (x1, x2, d1, d2) = (self.x1, self.x2, self.d1, self.d2);
        let p = x1 * x2;
        let (n_s, n_1s) = (cpow(nf, s), cpow(nf, 1.0 - s));
        let a_inf = p * n_1s;
        let a_zero = p * n_s;
        let b_inf = p * n_s;
        let b_zero = p * n_1s;
        let da_inf = a_inf * (2.0 * d2 + ln);
        let da_zero = a_zero * 2.0 * d2;
        let db_inf = b_inf * (-2.0 * d1 - ln);
        let db_zero = b_zero * (-2.0 * d1);
        let (rho, c_inf, c_zero) = level_n_laurent(z, n);
        let singular = rho * (da_inf - db_inf + da_zero - db_zero)
            + (a_inf + b_inf) * c_inf
            + (a_zero + b_zero) * c_zero;
        let l2 = level_pair(2.0 - 2.0 * s, z, n)?;
        let l3 = level_pair(2.0 * s, z, n)?;
        let regular =
            x2 * x2 * n_1s * (l2.e_inf + l2.e_zero) + x1 * x1 * n_s * (l3.e_inf + l3.e_zero);
        Ok((singular + regular) * self.inv_gamma)
    }
}

/// R(s, 1-s, z) on the singular line s1 + s2 = 1.
pub fn r_on_line(s: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    RLineContext::new(s, n)?.eval(z)
}

/// Same value through a Cauchy mean in s2 about 1 - s.
pub fn r_on_line_cauchy(s: C, z: UpperHalfPoint, n: i64, radius: f64, nodes: usize) -> Result<C> {
    circle_mean(
        |s2| Ok(r_completed_unguarded(s, s2, z, n)? / gamma_factor(s, s2)?),
        1.0 - s,
        radius,
        nodes,
    )
}

/// s-dependent constants of C(s, z).
#[derive(Debug, Clone, Copy)]
pub struct CContext {
    pub s: C,
    pub n: i64,
    zeta2s_sq: f64,
    r: RLineContext,
}

impl CContext {
    pub fn new(s: C, n: i64) -> Result<Self> {
        if (s - 0.5).norm() <= GUARD {
            return Err(Error::Singular(format!(
                "C(s,z) excluded near s=1/2 (s={s})"
            )));
        }
        Ok(CContext {
            s,
            n,
            zeta2s_sq: zeta(2.0 * s)?.norm_sqr(),
            r: RLineContext::new(s, n)?,
        })
    }

    /// |zeta(2s)|^2 E(s, z) E(1-s, N z)
    pub fn psi(&self, z: UpperHalfPoint) -> Result<C> {
        let a = eisenstein(self.s, z)?;
        let b = eisenstein(1.0 - self.s, z.scale(self.n as f64))?;
        Ok(self.zeta2s_sq * a * b)
    }

    pub fn eval(&self, z: UpperHalfPoint) -> Result<C> {
        Ok(self.psi(z)? - self.r.eval(z)?)
    }

    pub fn r(&self, z: UpperHalfPoint) -> Result<C> {
        self.r.eval(z)
    }
}

pub fn c_func(s: C, z: UpperHalfPoint, n: i64) -> Result<C> {
    CContext::new(s, n)?.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{e_level_n, Cusp};
    use crate::upper::{fricke, Modular};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn b_is_real_and_invariant() {
        let s = c(0.5, 2.0);
        let ctx = BContext::new(s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let z = p(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..3.0));
            let e = e_fourier(s, z).unwrap().completed();
            let e2 = eisenstein(2.0 * s, z).unwrap();
            // each summand is real: |.|^2, 2 Re, real logs
            let imag = (ctx.coef_e2s * e2 + (ctx.coef_e2s * e2).conj()).im;
            assert!(imag.abs() < 1e-10 && e.norm_sqr().is_finite());
            let a = ctx.eval(z).unwrap();
            let b = ctx.eval(Modular::new(1, 2, 2, 5).apply(z)).unwrap();
            assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        }
        assert!(BContext::new(c(0.5, 0.0005)).is_err());
    }

    #[test]
    fn two_variable_forms_agree_and_are_symmetric() {
        let z = p(0.1, 1.3);
        let (s1, s2) = (c(0.4, 1.0), c(0.6, -0.5));
        let raw = b_combination_raw(s1, s2, z).unwrap() * gamma_factor(s1, s2).unwrap();
        let done = b_combination_completed(s1, s2, z).unwrap();
        assert!((raw - done).norm() < 1e-10 * done.norm());
        let flipped = b_combination_completed(1.0 - s1, s2, z).unwrap();
        assert!((flipped - done).norm() < 1e-8 * done.norm());
        let flipped = b_combination_completed(s1, 1.0 - s2, z).unwrap();
        assert!((flipped - done).norm() < 1e-8 * done.norm());
    }

    #[test]
    fn b_two_in_the_cusp_is_its_leftover_constant_terms() {
        // High in the cusp only the phi(u) y^{1-u} parts of the four
        // subtracted series survive; every Fourier mode is below e^{-2 pi y}.
        let (s1, s2) = (c(0.4, 1.0), c(0.6, -0.5));
        let z = p(0.1, 12.0);
        let (z1, z2) = (zeta(2.0 * s1).unwrap(), zeta(2.0 * s2).unwrap());
        let (w1, w2) = (zeta(2.0 - 2.0 * s1).unwrap(), zeta(2.0 - 2.0 * s2).unwrap());
        let f1 = cpow(PI, 2.0 * s1 - 1.0) * gamma_ratio(1.0 - s1, s1).unwrap();
        let f2 = cpow(PI, 2.0 * s2 - 1.0) * gamma_ratio(1.0 - s2, s2).unwrap();
        let leftover = |u: C| {
            let v = e_fourier(u, z).unwrap();
            v.constant_term / zeta(2.0 * u).unwrap() - cpow(z.y, u)
        };
        let predicted = -(z1 * z2 * leftover(s1 + s2)
            + f2 * z1 * w2 * leftover(1.0 + s1 - s2)
            + f1 * w1 * z2 * leftover(1.0 + s2 - s1)
            + f1 * f2 * w1 * w2 * leftover(2.0 - s1 - s2));
        let got = b_two(s1, s2, z).unwrap();
        let scale =
            (e_fourier(s1, z).unwrap().completed() * e_fourier(s2, z).unwrap().completed()).norm();
        assert!(
            (got - predicted).norm() < 1e-12 * scale,
            "{got} vs {predicted}"
        );
    }

    #[test]
    fn b_two_limit_on_the_line_is_b() {
        for (s, z) in [
            (c(0.5, 2.0), p(0.1, 1.3)),
            (c(0.5, 4.0), p(-0.3, 2.5)),
            (c(0.5, 1.0), p(0.45, 0.95)),
        ] {
            let lim = circle_mean(|s2| b_two(s, s2, z), 1.0 - s, 0.1, 24).unwrap();
            let b = b_func(s, z).unwrap();
            assert!(
                (lim.re - b).abs() < 1e-6 * b.abs().max(1.0)
                    && lim.im.abs() < 1e-6 * b.abs().max(1.0),
                "{lim} vs {b}"
            );
        }
    }

    #[test]
    fn r_symmetry_and_invariance() {
        let n = 3;
        let z = p(0.15, 0.9);
        let (s1, s2) = (c(0.45, 1.5), c(0.62, -0.7));
        let a = r_completed(s1, s2, z, n).unwrap();
        let b = r_completed(1.0 - s1, s2, z, n).unwrap();
        assert!((a - b).norm() < 1e-7 * a.norm(), "{a} {b}");
        let b = r_completed(s1, 1.0 - s2, z, n).unwrap();
        assert!((a - b).norm() < 1e-7 * a.norm());
        let g = Modular::new(1, 0, n, 1);
        let b = r_completed(s1, s2, g.apply(z), n).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm());
    }

    #[test]
    fn level_n_laurent_constants() {
        let n = 5;
        let z = p(0.2, 1.1);
        let (rho, c_inf, c_zero) = level_n_laurent(z, n);
        assert!((rho - 3.0 / (6.0 * PI)).abs() < 1e-15);
        for (cusp, cst) in [(Cusp::Infinity, c_inf), (Cusp::Zero, c_zero)] {
            let f = |h: f64| e_level_n(cusp, c(1.0 + h, 0.0), z, n).unwrap().re - rho / h;
            let g = |h: f64| 0.5 * (f(h) + f(-h));
            let (h1, h2) = (0.02, 0.01);
            let limit = (4.0 * g(h2) - g(h1)) / 3.0;
            assert!((limit - cst).abs() < 1e-6, "{limit} vs {cst}");
        }
    }

    #[test]
    fn r_on_line_matches_cauchy_mean() {
        for (s, z, n) in [
            (c(0.5, 2.0), p(0.1, 1.2), 3),
            (c(0.5, 5.0), p(-0.4, 0.5), 7),
            (c(0.5, 1.0), p(0.3, 0.2), 2),
        ] {
            let a = r_on_line(s, z, n).unwrap();
            let b = r_on_line_cauchy(s, z, n, 0.1, 24).unwrap();
            assert!(
                (a - b).norm() < 1e-7 * a.norm().max(1.0),
                "s={s}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn c_is_gamma0_invariant_with_log_growth() {
        let n = 3;
        let s = c(0.5, 2.0);
        let ctx = CContext::new(s, n).unwrap();
        let z = p(0.12, 0.7);
        let a = ctx.eval(z).unwrap();
        for g in [
            Modular::new(1, 0, n, 1),
            Modular::new(1, 1, 0, 1),
            Modular::new(2, 1, 3 * n, 1 + 3 * n / 2),
        ] {
            if g.det() != 1 {
                continue;
            }
            let b = ctx.eval(g.apply(z)).unwrap();
            assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
        }
        let at = |y: f64| {
            (
                ctx.eval(p(0.1, y)).unwrap().norm(),
                ctx.psi(p(0.1, y)).unwrap().norm(),
            )
        };
        let ((c10, p10), (c40, p40)) = (at(10.0), at(40.0));
        // psi grows like y, C only logarithmically
        assert!(p40 / p10 > 3.0, "{p10} {p40}");
        assert!(c40 / c10 < 2.0, "{c10} {c40}");
        // cusp 0
        let w10 = fricke(p(0.1, 10.0), n);
        let w40 = fricke(p(0.1, 40.0), n);
        assert!(ctx.eval(w40).unwrap().norm() / ctx.eval(w10).unwrap().norm() < 2.0);
        assert!(ctx.psi(w40).unwrap().norm() / ctx.psi(w10).unwrap().norm() > 3.0);
    }
}
