//! Scans over discriminants and levels; results are sorted by D (then N).

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::primes_up_to;
use crate::classgroup::{fundamental_discriminants, kronecker_chi, ClassGroup, Discriminant};
use crate::error::Result;
use crate::lfuncs::ld_quantity;
use crate::par::{self, Exec};
use crate::specfun::{dirichlet_l, zeta};

use super::average::{heegner_average, AverageIntegrand};
use super::identities::{theorem_a, twisted, MomentReport, TwistedReport};

type C = Complex64;

fn collect<T>(rows: Vec<Result<T>>) -> Result<Vec<T>> {
    rows.into_iter().collect()
}

/// theorem_a for every fundamental D in [dmin, dmax].
pub fn remainder_scan(dmin: i64, dmax: i64, s: C, exec: Exec) -> Result<Vec<MomentReport>> {
    let ds = fundamental_discriminants(dmin, dmax);
    collect(par::map(exec, &ds, |&d| theorem_a(d, s)))
}

/// twisted(D, N, s) over primes N <= nmax split in K.
pub fn twisted_scan(d: Discriminant, nmax: i64, s: C, exec: Exec) -> Result<Vec<TwistedReport>> {
    let ns: Vec<i64> = primes_up_to(nmax.max(0) as usize)
        .into_iter()
        .filter(|&p| kronecker_chi(d, p) == 1)
        .collect();
    collect(par::map(exec, &ns, |&n| twisted(d, n, s)))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeylRow {
    pub d: i64,
    pub h: usize,
    /// (1/h) sum E(s, tau^A)
    pub e_average: C,
    /// (w/h) (sqrt|D|/2)^s zeta(s) L(s, chi_D) / zeta(2s)
    pub e_closed: C,
    /// (1/h) sum B(s, tau^A)
    pub b_average: f64,
    pub ld: f64,
}

pub fn weyl_scan(dmin: i64, dmax: i64, s: C, exec: Exec) -> Result<Vec<WeylRow>> {
    let ds = fundamental_discriminants(dmin, dmax);
    collect(par::map(exec, &ds, |&d| -> Result<WeylRow> {
        let g = ClassGroup::new(d)?;
        let e_average = heegner_average(AverageIntegrand::Eisenstein(s), &g)?;
        let zk = zeta(s)? * dirichlet_l(s, d, 0)?;
        let e_closed = g.w() as f64 / g.h() as f64 * (s * (d.sqrt_abs() / 2.0).ln()).exp() * zk
            / zeta(2.0 * s)?;
        let b_average = heegner_average(AverageIntegrand::B(s), &g)?.re;
        Ok(WeylRow {
            d: d.value(),
            h: g.h(),
            e_average,
            e_closed,
            b_average,
            ld: ld_quantity(d).value,
        })
    }))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AverageRow {
    pub d: i64,
    pub h: usize,
    pub ld: f64,
    pub average: f64,
}

/// (1/h) sum f(tau^A) against L_D for the given discriminants.
pub fn average_scan(
    ds: &[Discriminant],
    integrand: AverageIntegrand,
    exec: Exec,
) -> Result<Vec<AverageRow>> {
    collect(par::map(exec, ds, |&d| -> Result<AverageRow> {
        let g = ClassGroup::new(d)?;
        let average = heegner_average(integrand, &g)?.re;
        Ok(AverageRow {
            d: d.value(),
            h: g.h(),
            ld: ld_quantity(d).value,
            average,
        })
    }))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LdRow {
    pub d: i64,
    pub ld: f64,
    pub ratio: f64,
}

/// L_D / log|D| over fundamental D in [dmin, dmax].
pub fn ld_scan(dmin: i64, dmax: i64, exec: Exec) -> Vec<LdRow> {
    let ds = fundamental_discriminants(dmin, dmax);
    par::map(exec, &ds, |&d| {
        let ld = ld_quantity(d).value;
        LdRow {
            d: d.value(),
            ld,
            ratio: ld / (d.abs() as f64).ln(),
        }
    })
}

/// `count` fundamental discriminants spread evenly over [dmin, dmax].
pub fn spread_discriminants(dmin: i64, dmax: i64, count: usize) -> Vec<Discriminant> {
    let all = fundamental_discriminants(dmin, dmax);
    if all.len() <= count {
        return all;
    }
    (0..count)
        .map(|i| all[i * (all.len() - 1) / (count - 1).max(1)])
        .collect()
}
