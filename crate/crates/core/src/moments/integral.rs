//! Truncated integrals of B and C over fundamental domains.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::quad::gauss_legendre_on;
use crate::specfun::{gamma_ratio, kronecker_constant, xi_logderiv, zeta};
use crate::upper::{Modular, UpperHalfPoint};

use super::regularized::{BContext, CContext};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntegralKind {
    B,
    C,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralReport {
    pub kind: IntegralKind,
    pub s: (f64, f64),
    pub n: i64,
    pub y_top: f64,
    /// Mean over the truncated domain (normalized measure).
    pub value: C,
    pub error_estimate: f64,
    /// Contribution of the cut-off cusp regions, from the constant terms.
    pub tail: C,
}

impl IntegralReport {
    /// value + tail: the full regularized mean, zero by Maass-Selberg.
    pub fn completed(&self) -> C {
        self.value + self.tail
    }
}

/// Nodes and weights of dx dy / y^2 over the standard fundamental domain cut
/// at height `top`: two x halves, then [boundary, 1] and dyadic y pieces.
fn domain_nodes(top: f64, nx: usize, ny: usize) -> Vec<(UpperHalfPoint, f64)> {
    let mut out = Vec::new();
    for (xa, xb) in [(-0.5, 0.0), (0.0, 0.5)] {
        for (x, wx) in gauss_legendre_on(nx, xa, xb) {
            let mut cuts = vec![(1.0 - x * x).sqrt(), 1.0];
            let mut y = 2.0;
            while y < top {
                cuts.push(y);
                y *= 2.0;
            }
            cuts.push(top);
            for piece in cuts.windows(2) {
                for (y, wy) in gauss_legendre_on(ny, piece[0], piece[1]) {
                    out.push((UpperHalfPoint { x, y }, wx * wy / (y * y)));
                }
            }
        }
    }
    out
}

fn weighted_sum<F>(exec: Exec, nodes: &[(UpperHalfPoint, f64)], f: F) -> Result<C>
where
    F: Fn(UpperHalfPoint) -> Result<C> + Sync + Send,
{
    let vals = par::map(exec, nodes, |(z, w)| f(*z).map(|v| v * *w));
    let mut acc = C::new(0.0, 0.0);
    for v in vals {
        acc += v?;
    }
    Ok(acc)
}

/// Integral of the B function over the truncated fundamental domain.
fn b_integral(ctx: &BContext, top: f64, order: (usize, usize), exec: Exec) -> Result<C> {
    let nodes = domain_nodes(top, order.0, order.1);
    Ok(weighted_sum(exec, &nodes, |z| ctx.eval(z).map(|v| C::new(v, 0.0)))? * (3.0 / PI))
}

/// Integral of C over a fundamental domain of Gamma_0(N): the identity and
/// S T^k (0 <= k < N) translates of the standard domain, cut at height Y at
/// both cusps (height N Y in the coordinate of the S T^k translates).
fn c_integral(ctx: &CContext, top: f64, order: (usize, usize), exec: Exec) -> Result<C> {
    let n = ctx.n;
    let mut acc = weighted_sum(exec, &domain_nodes(top, order.0, order.1), |z| ctx.eval(z))?;
    let cusp_nodes = domain_nodes(top * n as f64, order.0, order.1);
    for k in 0..n {
        let g = Modular::S.mul(&Modular::translation(k));
        acc += weighted_sum(exec, &cusp_nodes, |w| ctx.eval(g.apply(w)))?;
    }
    Ok(acc * (3.0 / (PI * (n + 1) as f64)))
}

/// Integral from Y to infinity of the constant term of B(s, .), in the
/// normalized measure.
pub fn b_tail(s: C, top: f64) -> Result<f64> {
    let z2s = zeta(2.0 * s)?;
    let zs = z2s.norm_sqr();
    let coef = (PI.ln() * (1.0 - 2.0 * s)).exp() * gamma_ratio(s, 1.0 - s)? * z2s * z2s;
    let u = 2.0 * s;
    let phi = PI.sqrt() * gamma_ratio(u - 0.5, u)? * zeta(2.0 * u - 1.0)? / zeta(2.0 * u)?;
    let oscillating = -2.0 * (coef * phi * (-u * top.ln()).exp() / u).re;
    let log_part = 6.0 / PI * zs * (top.ln() + 1.0) / top;
    let constant = -12.0 / PI * zs * (kronecker_constant() + xi_logderiv(2.0 * s)?.re) / top;
    Ok(3.0 / PI * (oscillating + log_part + constant))
}

/// Integral of f(y) dy / y^2 over [start, infinity), dyadic pieces up to
/// start * 2^48; f may grow logarithmically.
fn cusp_integral<F: Fn(f64) -> Result<C>>(f: F, start: f64) -> Result<C> {
    let mut acc = C::new(0.0, 0.0);
    let mut a = start;
    for _ in 0..48 {
        for (y, w) in gauss_legendre_on(12, a, 2.0 * a) {
            acc += f(y)? * (w / (y * y));
        }
        a *= 2.0;
    }
    Ok(acc)
}

/// Cut-off cusp contribution of C at both cusps; above height 5 the
/// non-constant modes are below e^{-10 pi}, so one point per height suffices
/// (the S T^k translates together sweep a full period N of the cusp 0).
fn c_tail(ctx: &CContext, top: f64) -> Result<C> {
    let n = ctx.n as f64;
    let at_inf = cusp_integral(|y| ctx.eval(UpperHalfPoint { x: 0.0, y }), top)?;
    let at_zero = cusp_integral(
        |y| ctx.eval(Modular::S.apply(UpperHalfPoint { x: 0.0, y })),
        top * n,
    )?;
    Ok((at_inf + at_zero * n) * (3.0 / (PI * (n + 1.0))))
}

const ORDERS: [(usize, usize); 3] = [(24, 16), (32, 20), (48, 28)];

/// Truncated mean of B (n ignored) or C (level n) at cusp height Y, with the
/// difference between two quadrature orders as error estimate.
pub fn regularized_integral(
    kind: IntegralKind,
    s: C,
    n: i64,
    top: f64,
    exec: Exec,
) -> Result<IntegralReport> {
    if !(5.0..=100.0).contains(&top) {
        return Err(Error::Domain(format!(
            "truncation height Y={top} outside [5, 100]"
        )));
    }
    let eval = |order| -> Result<C> {
        match kind {
            IntegralKind::B => b_integral(&BContext::new(s)?, top, order, exec),
            IntegralKind::C => c_integral(&CContext::new(s, n)?, top, order, exec),
        }
    };
    let mut prev = eval(ORDERS[0])?;
    for &order in &ORDERS[1..] {
        let next = eval(order)?;
        let err = (next - prev).norm();
        if err < 1e-6 {
            let tail = match kind {
                IntegralKind::B => C::new(b_tail(s, top)?, 0.0),
                IntegralKind::C => c_tail(&CContext::new(s, n)?, top)?,
            };
            return Ok(IntegralReport {
                kind,
                s: (s.re, s.im),
                n: if kind == IntegralKind::C { n } else { 1 },
                y_top: top,
                value: next,
                error_estimate: err,
                tail,
            });
        }
        prev = next;
    }
    Err(Error::Numerical(format!(
        "truncated integral did not reach 1e-6 at Y={top}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn domain_measure() {
        // area of the full domain is pi/3; cut at Y loses 1/Y
        let nodes = domain_nodes(20.0, 24, 16);
        let area: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert!((area - (PI / 3.0 - 1.0 / 20.0)).abs() < 1e-12);
    }

    #[test]
    fn b_constant_term_matches_tail_density() {
        // d/dY of the tail is minus the x-mean of B at height Y
        let s = c(0.5, 2.0);
        let ctx = BContext::new(s).unwrap();
        let y = 9.0;
        let mean: f64 = gauss_legendre_on(16, -0.5, 0.5)
            .into_iter()
            .map(|(x, w)| w * ctx.eval(UpperHalfPoint { x, y }).unwrap())
            .sum();
        let hstep = 1e-3;
        let deriv = (b_tail(s, y + hstep).unwrap() - b_tail(s, y - hstep).unwrap()) / (2.0 * hstep);
        assert!(
            (deriv + 3.0 / PI * mean / (y * y)).abs() < 1e-7,
            "{deriv} {mean}"
        );
    }

    #[test]
    fn b_integral_completes_to_zero() {
        let s = c(0.5, 2.0);
        let r = regularized_integral(IntegralKind::B, s, 1, 10.0, Exec::default()).unwrap();
        assert!(r.error_estimate < 1e-6);
        assert!(r.value.im.abs() < 1e-12);
        assert!(r.completed().norm() < 1e-10, "{r:?}");
        let numeric = cusp_integral(
            |y| {
                let ctx = BContext::new(s)?;
                Ok(C::new(ctx.eval(UpperHalfPoint { x: 0.0, y })?, 0.0))
            },
            10.0,
        )
        .unwrap();
        assert!((numeric.re * 3.0 / PI - r.tail.re).abs() < 1e-10);
    }

    #[test]
    fn c_integral_completes_to_zero() {
        let r =
            regularized_integral(IntegralKind::C, c(0.5, 2.0), 2, 8.0, Exec::default()).unwrap();
        assert!(r.error_estimate < 1e-6);
        assert!(r.completed().norm() < 1e-8, "{r:?}");
    }
}
