//! Averages over Heegner points and the diagonal of automorphic kernels.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::classgroup::ClassGroup;
use crate::eisenstein::eisenstein;
use crate::error::{Error, Result};
use crate::heegner::heegner_points;
use crate::quad::gauss_legendre_on;
use crate::specfun::modular::{log_abs_im_eta4, log_abs_im_jprime};
use crate::upper::{hyperbolic_distance, Modular, UpperHalfPoint};

use super::regularized::BContext;

type C = Complex64;

/// Smooth bump of compact support in the hyperbolic distance:
/// k(d) = exp(1 - 1/(1 - (d/R)^2)) for d < R, 0 beyond; k(0) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelProfile {
    pub radius: f64,
}

pub const MAX_KERNEL_RADIUS: f64 = 6.0;

impl KernelProfile {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= MAX_KERNEL_RADIUS) {
            return Err(Error::Domain(format!(
                "kernel radius {radius} outside (0, {MAX_KERNEL_RADIUS}]"
            )));
        }
        Ok(KernelProfile { radius })
    }

    pub fn eval(&self, d: f64) -> f64 {
        let t = d / self.radius;
        if t >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - t * t)).exp()
        }
    }

    /// 2 int_0^inf k(u) u^{-1/2} du with k read as a function of its own
    /// argument (here the distance).
    pub fn a2_literal(&self) -> f64 {
        // u = v^2 removes the endpoint singularity: 4 int_0^sqrt(R) k(v^2) dv
        let top = self.radius.sqrt();
        4.0 * integrate_smooth(|v| self.eval(v * v), top)
    }

    /// Coefficient of the cusp growth K(z, z) ~ c y: the same integral with k
    /// read as a function of u = sinh^2(d/2), i.e. 2 int_0^R k(d) cosh(d/2) dd.
    pub fn cusp_coefficient(&self) -> f64 {
        2.0 * integrate_smooth(|d| self.eval(d) * (0.5 * d).cosh(), self.radius)
    }
}

fn integrate_smooth<F: Fn(f64) -> f64>(f: F, top: f64) -> f64 {
    let pieces = 16;
    let h = top / pieces as f64;
    (0..pieces)
        .map(|i| {
            gauss_legendre_on(24, i as f64 * h, (i + 1) as f64 * h)
                .into_iter()
                .map(|(x, w)| w * f(x))
                .sum::<f64>()
        })
        .sum()
}

/// Cap on the number of group elements enumerated for one point.
const ENUMERATION_CAP: usize = 2_000_000;

/// K(z, z) = sum over PSL_2(Z) of k(d(z, gamma z)). Elements are enumerated
/// by their bottom row (c, d), using Im(gamma z) = y/|cz+d|^2 >= y e^{-R},
/// then by the translates T^m gamma within distance R.
pub fn kernel_diagonal(k: &KernelProfile, z: UpperHalfPoint) -> Result<f64> {
    let r = k.radius;
    let bound = r.exp();
    let (x, y) = (z.x, z.y);
    let cosh_r = r.cosh();
    let mut total = 0.0;
    let mut count = 0usize;
    let cmax = (bound / (y * y)).sqrt().floor() as i64;
    for c in 0..=cmax {
        // |cz + d|^2 = (c x + d)^2 + c^2 y^2 <= e^R
        let room = bound - (c as f64 * y).powi(2);
        if room < 0.0 {
            break;
        }
        let half = room.sqrt();
        let (dlo, dhi) = if c == 0 {
            (1, 1)
        } else {
            (
                (-c as f64 * x - half).ceil() as i64,
                (-c as f64 * x + half).floor() as i64,
            )
        };
        for d in dlo..=dhi {
            if crate::arith::gcd_i64(c, d) != 1 {
                continue;
            }
            // a d - b c = 1
            let (a, b) = if c == 0 {
                (1, 0)
            } else {
                let (_, u, v) = crate::arith::ext_gcd(d as i128, c as i128);
                (u as i64, -(v as i64))
            };
            let g = Modular::new(a, b, c, d);
            let w = g.apply(z);
            // cosh d(z, w + m) <= cosh R  <=>  (x - w.x - m)^2 <= 2 y w.y (cosh R - 1) - (y - w.y)^2
            let span = 2.0 * y * w.y * (cosh_r - 1.0) - (y - w.y).powi(2);
            if span < 0.0 {
                continue;
            }
            let reach = span.sqrt();
            let centre = x - w.x;
            for m in (centre - reach).ceil() as i64..=(centre + reach).floor() as i64 {
                let img = UpperHalfPoint {
                    x: w.x + m as f64,
                    y: w.y,
                };
                total += k.eval(hyperbolic_distance(z, img));
                count += 1;
                if count > ENUMERATION_CAP {
                    return Err(Error::Domain(format!(
                        "kernel enumeration exceeded {ENUMERATION_CAP} elements"
                    )));
                }
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AverageIntegrand {
    /// log|Im z eta(z)^4|
    LogEta4,
    /// log|Im z j'(z)|
    LogJPrime,
    Eisenstein(C),
    B(C),
    Kernel(KernelProfile),
}

/// (1/h) sum over classes of f(tau^A).
pub fn heegner_average(integrand: AverageIntegrand, group: &ClassGroup) -> Result<C> {
    let pts = heegner_points(group);
    let b_ctx = match integrand {
        AverageIntegrand::B(s) => Some(BContext::new(s)?),
        _ => None,
    };
    let mut acc = C::new(0.0, 0.0);
    for p in &pts {
        let z = p.coords;
        acc += match integrand {
            AverageIntegrand::LogEta4 => C::new(log_abs_im_eta4(z), 0.0),
            AverageIntegrand::LogJPrime => C::new(log_abs_im_jprime(z), 0.0),
            AverageIntegrand::Eisenstein(s) => eisenstein(s, z)?,
            AverageIntegrand::B(_) => C::new(b_ctx.as_ref().unwrap().eval(z)?, 0.0),
            AverageIntegrand::Kernel(k) => C::new(kernel_diagonal(&k, z)?, 0.0),
        };
    }
    Ok(acc / pts.len() as f64)
}

/// Expected slope of the kernel average against L_D: (3/pi) times the cusp
/// growth coefficient.
pub fn kernel_slope(k: &KernelProfile) -> f64 {
    3.0 / PI * k.cusp_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::Discriminant;
    use crate::lfuncs::ld_quantity;
    use crate::specfun::{zeta, EULER_GAMMA};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(d: i64) -> ClassGroup {
        ClassGroup::new(Discriminant::new(d).unwrap()).unwrap()
    }

    #[test]
    fn exact_average_of_log_eta() {
        for d in [-7, -23, -163, -455] {
            let g = group(d);
            let avg = heegner_average(AverageIntegrand::LogEta4, &g).unwrap().re;
            let ld = ld_quantity(g.disc).value;
            assert!((avg + ld + 2f64.ln() - EULER_GAMMA).abs() < 1e-8, "D={d}");
        }
    }

    #[test]
    fn eisenstein_average_matches_hecke_route() {
        let s = C::new(0.5, 5.0);
        for d in [-23, -84, -4] {
            let g = group(d);
            let avg = heegner_average(AverageIntegrand::Eisenstein(s), &g).unwrap();
            let disc = g.disc;
            let zk = zeta(s).unwrap() * crate::specfun::dirichlet_l(s, disc, 0).unwrap();
            let closed =
                g.w() as f64 / g.h() as f64 * (s * (disc.sqrt_abs() / 2.0).ln()).exp() * zk
                    / zeta(2.0 * s).unwrap();
            assert!(
                (avg - closed).norm() < 1e-7 * closed.norm().max(1.0),
                "D={d}: {avg} {closed}"
            );
        }
    }

    #[test]
    fn kernel_high_in_the_cusp() {
        let k = KernelProfile::new(2.0).unwrap();
        let z = UpperHalfPoint::new(0.3, 50.0).unwrap();
        let got = kernel_diagonal(&k, z).unwrap();
        let mut expect = k.eval(0.0);
        let mut m = 1;
        loop {
            let d = hyperbolic_distance(
                z,
                UpperHalfPoint {
                    x: z.x + m as f64,
                    y: z.y,
                },
            );
            if d >= k.radius {
                break;
            }
            expect += 2.0 * k.eval(d);
            m += 1;
        }
        assert!((got - expect).abs() < 1e-12 * expect);
        let d1 = hyperbolic_distance(
            z,
            UpperHalfPoint {
                x: z.x + 1.0,
                y: z.y,
            },
        );
        assert!((d1 - 1.0 / 50.0).abs() < 1e-5);
        // growth ~ cusp_coefficient * y
        assert!((got / 50.0 - k.cusp_coefficient()).abs() < 1e-3 * k.cusp_coefficient());
    }

    #[test]
    fn kernel_is_invariant() {
        let k = KernelProfile::new(3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..8 {
            let z = UpperHalfPoint::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.5)).unwrap();
            let a = kernel_diagonal(&k, z).unwrap();
            for g in [
                Modular::new(2, 1, 1, 1),
                Modular::new(1, 3, 0, 1),
                Modular::new(5, 2, 2, 1),
            ] {
                let b = kernel_diagonal(&k, g.apply(z)).unwrap();
                assert!((a - b).abs() < 1e-10 * a.max(1.0), "{a} {b}");
            }
        }
        assert!(KernelProfile::new(7.0).is_err());
    }

    #[test]
    fn kernel_brute_force_agreement() {
        // all matrices with entries up to 12
        let k = KernelProfile::new(2.5).unwrap();
        let z = UpperHalfPoint::new(0.17, 1.05).unwrap();
        let mut brute = 0.0;
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                for c in 0i64..=12 {
                    for d in -12i64..=12 {
                        if a * d - b * c != 1 || (c == 0 && d < 0) {
                            continue;
                        }
                        brute += k.eval(hyperbolic_distance(z, Modular::new(a, b, c, d).apply(z)));
                    }
                }
            }
        }
        let got = kernel_diagonal(&k, z).unwrap();
        assert!((got - brute).abs() < 1e-12 * got, "{got} {brute}");
    }
}
