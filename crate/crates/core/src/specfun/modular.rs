//! Dedekind eta, the discriminant, j and j' from q-expansions.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::arith::sigma_int;
use crate::upper::{reduce_to_fundamental_domain, UpperHalfPoint};

#[derive(Debug, Clone, Copy)]
pub struct ModularValues {
    pub eta: Complex64,
    /// log(Im z |eta(z)|^4), modular invariant.
    pub log_abs_im_eta4: f64,
    pub delta: Complex64,
    pub j: Complex64,
    pub j_prime: Complex64,
    /// log |Im z j'(z)|, modular invariant.
    pub log_abs_im_jprime: f64,
}

fn nome(z: UpperHalfPoint) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * z.to_complex()).exp()
}

/// A branch of log eta(z) = pi i z / 12 + sum log(1 - q^n).
pub fn log_eta(z: UpperHalfPoint) -> Complex64 {
    let q = nome(z);
    let mut acc = Complex64::new(0.0, PI / 12.0) * z.to_complex();
    let mut qn = q;
    for _ in 0..100_000 {
        if qn.norm() < 1e-18 {
            break;
        }
        acc += (1.0 - qn).ln();
        qn *= q;
    }
    acc
}

pub fn eta(z: UpperHalfPoint) -> Complex64 {
    log_eta(z).exp()
}

/// log(Im z |eta(z)|^4)
pub fn log_abs_im_eta4(z: UpperHalfPoint) -> f64 {
    let (w, _) = reduce_to_fundamental_domain(z);
    w.y.ln() + 4.0 * log_eta(w).re
}

fn q_series(q: Complex64, coeff: impl Fn(u64) -> f64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qn = q;
    let mut n = 1u64;
    while (qn.norm() * (n as f64).powi(5) >= 1e-18 * acc.norm()) && n < 10_000 {
        acc += coeff(n) * qn;
        qn *= q;
        n += 1;
    }
    acc
}

pub fn e4(z: UpperHalfPoint) -> Complex64 {
    q_series(nome(z), |n| 240.0 * sigma_int(n, 3))
}

pub fn e6(z: UpperHalfPoint) -> Complex64 {
    q_series(nome(z), |n| -504.0 * sigma_int(n, 5))
}

struct Reduced {
    j: Complex64,
    j_prime: Complex64,
    log_abs_jprime: f64,
}

fn at_reduced(w: UpperHalfPoint) -> Reduced {
    let le = log_eta(w);
    let log_delta = 24.0 * le;
    let a = e4(w);
    let b = e6(w);
    let j = (3.0 * a.ln() - log_delta).exp();
    // q dj/dq = -E4^2 E6 / Delta, j' = 2 pi i q dj/dq
    let log_jp = 2.0 * a.ln() + b.ln() - log_delta + Complex64::new((2.0 * PI).ln(), 0.0);
    let j_prime = -Complex64::i() * log_jp.exp();
    Reduced {
        j,
        j_prime,
        log_abs_jprime: log_jp.re,
    }
}

pub fn modular_values(z: UpperHalfPoint) -> ModularValues {
    let (w, g) = reduce_to_fundamental_domain(z);
    let le = log_eta(z);
    let r = at_reduced(w);
    let f = g.factor(z);
    ModularValues {
        eta: le.exp(),
        log_abs_im_eta4: w.y.ln() + 4.0 * log_eta(w).re,
        delta: (24.0 * le).exp(),
        j: r.j,
        j_prime: r.j_prime / (f * f),
        log_abs_im_jprime: w.y.ln() + r.log_abs_jprime,
    }
}

/// log |Im z j'(z)|
pub fn log_abs_im_jprime(z: UpperHalfPoint) -> f64 {
    let (w, _) = reduce_to_fundamental_domain(z);
    w.y.ln() + at_reduced(w).log_abs_jprime
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upper::Modular;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn cm_values_of_j() {
        let v = modular_values(p(0.0, 1.0));
        assert!((v.j - 1728.0).norm() < 1e-8, "{}", v.j);
        let v = modular_values(p(0.5, 3f64.sqrt() / 2.0));
        assert!(v.j.norm() < 1e-8, "{}", v.j);
        // j((1 + sqrt(-163))/2) = -640320^3
        let v = modular_values(p(0.5, 163f64.sqrt() / 2.0));
        let exact = -(640320f64).powi(3);
        assert!(((v.j.re - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn eta_at_i() {
        // eta(i) = Gamma(1/4) / (2 pi^{3/4})
        let g14 = 3.625_609_908_221_908_3;
        let exact = g14 / (2.0 * PI.powf(0.75));
        assert!((eta(p(0.0, 1.0)) - exact).norm() < 1e-14);
    }

    #[test]
    fn eta_transformations() {
        let z = p(1.0 / 3.0, 2.0);
        let zc = z.to_complex();
        let lhs = eta(Modular::S.apply(z)).norm();
        let rhs = zc.norm().sqrt() * eta(z).norm();
        assert!((lhs - rhs).abs() < 1e-10);
        let e1 = eta(z.translate(1.0));
        let e0 = eta(z) * Complex64::new(0.0, PI / 12.0).exp();
        assert!((e1 - e0).norm() < 1e-12);
    }

    #[test]
    fn delta_is_eta_power_and_matches_eisenstein() {
        let z = p(0.1, 1.1);
        let v = modular_values(z);
        let lhs = 1728.0 * v.delta;
        let rhs = e4(z).powi(3) - e6(z).powi(2);
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn invariance_under_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let z = p(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.5));
            let g = loop {
                let a = rng.gen_range(-6i64..=6);
                let c = rng.gen_range(1i64..=6);
                if crate::arith::gcd_i64(a, c) == 1 {
                    let (_, x, y) = crate::arith::ext_gcd(a as i128, c as i128);
                    // a x + c y = 1  =>  (a, -y; c, x)
                    break Modular::new(a, -(y as i64), c, x as i64);
                }
            };
            assert_eq!(g.det(), 1);
            let gz = g.apply(z);
            let a = modular_values(z);
            let b = modular_values(gz);
            // direct evaluation at gz, without reduction
            let direct = gz.y.ln() + 4.0 * log_eta(gz).re;
            assert!(
                (direct - a.log_abs_im_eta4).abs() < 1e-10,
                "{direct} {}",
                a.log_abs_im_eta4
            );
            assert!((a.log_abs_im_eta4 - b.log_abs_im_eta4).abs() < 1e-10);
            assert!((a.log_abs_im_jprime - b.log_abs_im_jprime).abs() < 1e-9);
            assert!((a.j - b.j).norm() < 1e-9 * a.j.norm().max(1.0));
        }
    }

    #[test]
    fn j_prime_matches_finite_difference() {
        for z in [p(0.1, 1.2), p(-0.3, 0.9), p(0.45, 2.0), p(1.7, 0.8)] {
            let h = 1e-5;
            let fd =
                (modular_values(z.translate(h)).j - modular_values(z.translate(-h)).j) / (2.0 * h);
            let jp = modular_values(z).j_prime;
            assert!((fd - jp).norm() < 1e-7 * jp.norm(), "{z:?}: {fd} vs {jp}");
            let direct = z.y.ln() + jp.norm().ln();
            assert!((direct - modular_values(z).log_abs_im_jprime).abs() < 1e-9);
        }
    }
}
