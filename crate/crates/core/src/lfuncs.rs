//! Partial zeta functions of ideal classes, class group L-functions and the
//! quantity L_D = log|D|/2 + L'/L(1, chi_D).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::classgroup::{ClassCharacter, ClassGroup, Discriminant, QuadForm};
use crate::eisenstein::eisenstein;
use crate::error::{Error, Result};
use crate::heegner::heegner_point;
use crate::quad::gauss_legendre_on;
use crate::specfun::zeta::l_at_one;
use crate::specfun::{gamma, incomplete_gamma_upper, zeta};

type C = Complex64;

/// Lattice points enter the theta continuation while Q-hat = 2Q/sqrt|D| stays below this.
const THETA_CUTOFF: f64 = 14.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialZetaMethod {
    DirectSum,
    IncompleteGamma,
}

#[derive(Debug, Clone, Copy)]
pub struct PartialZetaValue {
    pub value: C,
    pub form: QuadForm,
    pub method: PartialZetaMethod,
}

/// Lattice vectors (m, n) != 0 with Q(m, n) <= bound, with their values.
pub fn ellipse_points(f: &QuadForm, bound: f64) -> Vec<(i64, i64, f64)> {
    let (a, b) = (f.a as f64, f.b as f64);
    let dabs = (-f.discriminant()) as f64;
    let n_max = (4.0 * a * bound / dabs).sqrt().floor() as i64;
    let mut out = Vec::new();
    for n in -n_max..=n_max {
        let nf = n as f64;
        let disc = 4.0 * a * bound - dabs * nf * nf;
        if disc < 0.0 {
            continue;
        }
        let half = disc.sqrt() / (2.0 * a);
        let centre = -b * nf / (2.0 * a);
        for m in (centre - half).ceil() as i64..=(centre + half).floor() as i64 {
            if m == 0 && n == 0 {
                continue;
            }
            let q = f.eval(m as f64, nf);
            if q <= bound {
                out.push((m, n, q));
            }
        }
    }
    out
}

/// Sum of Q^{-s} over nonzero lattice points, Re s >= 1.1, by a smoothly
/// truncated sum plus the exact integral of the truncated part.
fn epstein_direct(s: C, f: &QuadForm) -> C {
    let sqrt_d = ((-f.discriminant()) as f64).sqrt();
    let radius = 800.0 * f.a.max(f.c) as f64;
    let step = |t: f64| -> f64 {
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            let a = (-1.0 / t).exp();
            a / (a + (-1.0 / (1.0 - t)).exp())
        }
    };
    let mut sum = C::new(0.0, 0.0);
    for (_, _, q) in ellipse_points(f, 2.0 * radius) {
        let weight = 1.0 - step(q / radius - 1.0);
        if weight > 0.0 {
            sum += weight * (-s * q.ln()).exp();
        }
    }
    // area of {Q <= r} is 2 pi r / sqrt|D|
    let mut inner = C::new(0.0, 0.0);
    for (u, wt) in gauss_legendre_on(60, 1.0, 2.0) {
        inner += wt * step(u - 1.0) * (-s * u.ln()).exp();
    }
    inner += ((1.0 - s) * 2f64.ln()).exp() / (s - 1.0);
    sum + 2.0 * PI / sqrt_d * ((1.0 - s) * radius.ln()).exp() * inner
}

/// F(s) = sum'[(pi Qh)^{-s} Gamma(s, pi Qh) + (pi Qh)^{s-1} Gamma(1-s, pi Qh)] - 1/s - 1/(1-s)
/// with Qh = 2 Q / sqrt|D|.
pub fn theta_completed(s: C, f: &QuadForm) -> Result<C> {
    let sqrt_d = ((-f.discriminant()) as f64).sqrt();
    let bound = THETA_CUTOFF * sqrt_d / 2.0;
    let mut acc = C::new(0.0, 0.0);
    for (_, _, q) in ellipse_points(f, bound) {
        let x = PI * 2.0 * q / sqrt_d;
        let lx = x.ln();
        acc += (-s * lx).exp() * incomplete_gamma_upper(s, x)?;
        acc += ((s - 1.0) * lx).exp() * incomplete_gamma_upper(1.0 - s, x)?;
    }
    Ok(acc - 1.0 / s - 1.0 / (1.0 - s))
}

/// Number of lattice points used by the theta continuation.
pub fn theta_point_count(f: &QuadForm) -> usize {
    let sqrt_d = ((-f.discriminant()) as f64).sqrt();
    ellipse_points(f, THETA_CUTOFF * sqrt_d / 2.0).len()
}

/// Epstein zeta Z_Q(s) = sum' Q(m, n)^{-s}.
pub fn epstein_zeta(s: C, f: &QuadForm, method: PartialZetaMethod) -> Result<C> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Singular("Epstein zeta has a pole at s=1".into()));
    }
    match method {
        PartialZetaMethod::DirectSum => {
            if s.re < 1.1 {
                return Err(Error::Domain(format!(
                    "direct Epstein sum needs Re s >= 1.1, got {}",
                    s.re
                )));
            }
            Ok(epstein_direct(s, f))
        }
        PartialZetaMethod::IncompleteGamma => {
            let sqrt_d = ((-f.discriminant()) as f64).sqrt();
            let scale = (s * (2.0 * PI / sqrt_d).ln()).exp();
            Ok(scale * theta_completed(s, f)? / gamma(s)?)
        }
    }
}

/// Partial zeta function of the ideal class of `form`: the sum of N(a)^{-s}
/// over integral ideals a in the class, i.e. Z_Q(s) divided by the number of
/// units.
pub fn partial_zeta_with(
    s: C,
    form: &QuadForm,
    method: PartialZetaMethod,
) -> Result<PartialZetaValue> {
    let d = Discriminant::new(form.discriminant())?;
    let units = d.unit_count() as f64;
    let value = epstein_zeta(s, form, method)? / units;
    Ok(PartialZetaValue {
        value,
        form: *form,
        method,
    })
}

pub fn partial_zeta(s: C, form: &QuadForm) -> Result<PartialZetaValue> {
    let method = if s.re >= 1.1 {
        PartialZetaMethod::DirectSum
    } else {
        PartialZetaMethod::IncompleteGamma
    };
    partial_zeta_with(s, form, method)
}

/// All partial zeta values of a class group, in class order.
pub fn partial_zetas(s: C, group: &ClassGroup) -> Result<Vec<C>> {
    group
        .elements
        .iter()
        .map(|f| partial_zeta(s, f).map(|v| v.value))
        .collect()
}

/// L(s, chi) = sum over classes of chi(A) zeta(s, A).
pub fn class_character_l(s: C, chi: &ClassCharacter, group: &ClassGroup) -> Result<C> {
    let values = partial_zetas(s, group)?;
    Ok(character_sum(chi, &values))
}

pub fn character_sum(chi: &ClassCharacter, partial: &[C]) -> C {
    chi.values.iter().zip(partial).map(|(c, z)| c * z).sum()
}

/// |E(s, tau^A) - w (sqrt|D|/2)^s zeta(s, A) / zeta(2s)| with E from its
/// Fourier expansion and zeta(s, A) from the theta continuation.
pub fn hecke_residual(s: C, class_index: usize, group: &ClassGroup) -> Result<f64> {
    if (s - 1.0).norm() < 1e-3 || (s - 0.5).norm() < 1e-3 {
        return Err(Error::Singular(format!(
            "hecke_residual excluded near s={s}"
        )));
    }
    let p = heegner_point(group, class_index);
    let e = eisenstein(s, p.coords)?;
    let pz = partial_zeta_with(s, &p.form, PartialZetaMethod::IncompleteGamma)?.value;
    let d = group.disc;
    let rhs = group.w() as f64 * (s * (d.sqrt_abs() / 2.0).ln()).exp() * pz / zeta(2.0 * s)?;
    Ok((e - rhs).norm())
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LDQuantity {
    pub d: i64,
    pub l1: f64,
    pub l1_prime: f64,
    pub value: f64,
}

pub fn ld_quantity(d: Discriminant) -> LDQuantity {
    let (l1, l1_prime) = l_at_one(d);
    LDQuantity {
        d: d.value(),
        l1,
        l1_prime,
        value: 0.5 * (d.abs() as f64).ln() + l1_prime / l1,
    }
}
