use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use heegner_core::classgroup::{kronecker_chi, split_ideal_classes, ClassGroup, Discriminant};
use heegner_core::eisenstein::{e_level_n, eisenstein, Cusp};
use heegner_core::heegner::{heegner_point, heegner_points, level_n_points};
use heegner_core::lfuncs::{hecke_residual, ld_quantity};
use heegner_core::moments::scan::{remainder_scan, twisted_scan, weyl_scan};
use heegner_core::moments::{
    heegner_average, moment_identity, regularized_integral, theorem_a, twisted, AverageIntegrand,
    BContext, IntegralKind,
};
use heegner_core::par::Exec;
use heegner_core::record::{Suite, VerificationRecord};
use heegner_core::specfun::modular::log_abs_im_eta4;
use heegner_core::specfun::{kronecker_constant, modular_values, EULER_GAMMA};
use heegner_core::upper::{Modular, UpperHalfPoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{write_records, write_rows};
use crate::{complex, Cli, Command, CuspArg, EvalKind, KindArg, ScanKind, VerifySuite};

type C = Complex64;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(heegner_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use heegner_core::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Core(E::Numerical(_) | E::Overflow) => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<heegner_core::Error> for CliError {
    fn from(e: heegner_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn disc(d: i64) -> Res<Discriminant> {
    Ok(Discriminant::new(d)?)
}

fn point((x, y): (f64, f64)) -> Res<UpperHalfPoint> {
    Ok(UpperHalfPoint::new(x, y)?)
}

fn critical(t: f64) -> C {
    C::new(0.5, t)
}

fn ms(t0: Instant) -> u64 {
    t0.elapsed().as_millis() as u64
}

fn record(suite: Suite, d: Discriminant, s: C) -> VerificationRecord {
    let mut r = VerificationRecord::new(suite, d.value());
    r.s_re = s.re;
    r.s_im = s.im;
    r
}

/// Every residual finite and within tolerance.
fn within(rows: &[VerificationRecord], tol: f64) -> bool {
    rows.iter()
        .all(|r| r.residual_finite() && r.residual_or_remainder.abs() <= tol)
}

pub fn run(cli: &Cli) -> Res<bool> {
    let c = &cli.common;
    let tol = |default: f64| c.tol.unwrap_or(default);
    match &cli.command {
        Command::Classgroup { disc: d } => {
            let g = ClassGroup::new(disc(*d)?)?;
            write_rows(&classgroup_rows(&g), c.format, None)?;
            Ok(true)
        }
        Command::Heegner { disc: d, level } => {
            let g = ClassGroup::new(disc(*d)?)?;
            write_rows(&heegner_rows(&g, *level)?, c.format, None)?;
            Ok(true)
        }
        Command::Eval {
            what,
            s,
            z,
            level,
            cusp,
        } => {
            let row = eval_row(*what, s.map(complex), point(*z)?, *level, *cusp)?;
            write_rows(&[row], c.format, None)?;
            Ok(true)
        }
        Command::Verify { suite, disc: d, s } => {
            let d = disc(*d)?;
            let (rows, default) = match suite {
                VerifySuite::Hecke => (
                    verify_hecke(d, s.map(complex).unwrap_or(C::new(0.5, 5.0)))?,
                    1e-8,
                ),
                VerifySuite::Kronecker => (verify_kronecker(d, c.seed)?, 1e-5),
                VerifySuite::Average => (verify_average(d)?, 1e-8),
                VerifySuite::Identities => (
                    verify_identities(d, s.map(complex).unwrap_or(C::new(0.5, 3.0)), c.seed)?,
                    1e-6,
                ),
            };
            write_records(&rows, c.format, None)?;
            Ok(within(&rows, tol(default)))
        }
        Command::Moment { disc: d, t } => {
            let (row, identity) = moment_row(disc(*d)?, critical(*t))?;
            write_records(&[row], c.format, None)?;
            Ok(identity <= tol(1e-6))
        }
        Command::Twisted { disc: d, n, t } => {
            let rows = twisted_rows(disc(*d)?, *n, critical(*t))?;
            write_records(&rows, c.format, None)?;
            Ok(within(&rows, tol(1e-6)))
        }
        Command::Scan {
            kind,
            dmin,
            dmax,
            t,
            nmax,
            out,
            sequential,
        } => {
            if dmin > dmax {
                return Err(CliError::Input(format!(
                    "--dmin {dmin} exceeds --dmax {dmax}"
                )));
            }
            let exec = if *sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            let s = critical(*t);
            let (mut rows, checked) = match kind {
                ScanKind::Remainder => (scan_remainder(*dmin, *dmax, s, exec)?, false),
                ScanKind::TwistedScaling => (scan_twisted(*dmin, *dmax, *nmax, s, exec)?, true),
                ScanKind::Weyl => (scan_weyl(*dmin, *dmax, s, exec)?, true),
            };
            rows.sort_by_key(|r| (r.d, r.n));
            write_records(&rows, c.format, Some(out))?;
            Ok(if checked {
                within(&rows, tol(1e-6))
            } else {
                rows.iter().all(|r| r.residual_finite())
            })
        }
        Command::Integral { kind, t, n, y } => {
            let row = integral_row(*kind, critical(*t), *n, *y)?;
            write_records(&[row], c.format, None)?;
            Ok(within(&[row], tol(1e-6)))
        }
    }
}

#[derive(Serialize)]
struct ClassRow {
    #[serde(rename = "D")]
    d: i64,
    h: usize,
    class_index: usize,
    a: i64,
    b: i64,
    c: i64,
    order: u64,
}

fn classgroup_rows(g: &ClassGroup) -> Vec<ClassRow> {
    (0..g.h())
        .map(|i| {
            let f = g.elements[i];
            ClassRow {
                d: g.disc.value(),
                h: g.h(),
                class_index: i,
                a: f.a,
                b: f.b,
                c: f.c,
                order: g.order(i),
            }
        })
        .collect()
}

#[derive(Serialize)]
struct HeegnerRow {
    #[serde(rename = "D")]
    d: i64,
    level: i64,
    class_index: usize,
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    #[serde(rename = "C")]
    c: i64,
    x: f64,
    y: f64,
}

fn heegner_rows(g: &ClassGroup, level: Option<i64>) -> Res<Vec<HeegnerRow>> {
    let pts = match level {
        None | Some(1) => heegner_points(g),
        Some(n) => {
            let split = split_ideal_classes(g, n)?;
            level_n_points(g, n, split.beta)?
        }
    };
    Ok(pts
        .iter()
        .map(|p| HeegnerRow {
            d: g.disc.value(),
            level: p.level,
            class_index: p.class_index,
            a: p.form.a,
            b: p.form.b,
            c: p.form.c,
            x: p.coords.x,
            y: p.coords.y,
        })
        .collect())
}

#[derive(Serialize)]
struct EvalRow {
    quantity: &'static str,
    s_re: Option<f64>,
    s_im: Option<f64>,
    x: f64,
    y: f64,
    #[serde(rename = "N")]
    n: i64,
    cusp: &'static str,
    re: f64,
    im: f64,
}

fn eval_row(
    what: EvalKind,
    s: Option<C>,
    z: UpperHalfPoint,
    level: Option<i64>,
    cusp: CuspArg,
) -> Res<EvalRow> {
    let (quantity, cusp_name, n, v) = match what {
        EvalKind::Eisenstein => {
            let s = s.ok_or_else(|| CliError::Input("eval eisenstein needs --s".into()))?;
            match level {
                None | Some(1) => ("eisenstein", "inf", 1, eisenstein(s, z)?),
                Some(n) => {
                    let (name, cusp) = match cusp {
                        CuspArg::Inf => ("inf", Cusp::Infinity),
                        CuspArg::Zero => ("0", Cusp::Zero),
                    };
                    ("eisenstein", name, n, e_level_n(cusp, s, z, n)?)
                }
            }
        }
        EvalKind::Eta => ("eta", "", 1, modular_values(z).eta),
        EvalKind::J => ("j", "", 1, modular_values(z).j),
    };
    Ok(EvalRow {
        quantity,
        s_re: s.map(|s| s.re),
        s_im: s.map(|s| s.im),
        x: z.x,
        y: z.y,
        n,
        cusp: cusp_name,
        re: v.re,
        im: v.im,
    })
}

fn verify_hecke(d: Discriminant, s: C) -> Res<Vec<VerificationRecord>> {
    let g = ClassGroup::new(d)?;
    let ld = ld_quantity(d).value;
    let mut rows = Vec::new();
    for idx in 0..g.h() {
        let t0 = Instant::now();
        let e = eisenstein(s, heegner_point(&g, idx).coords)?;
        let res = hecke_residual(s, idx, &g)?;
        let mut r = record(Suite::Hecke, d, s);
        r.lhs = e.norm();
        r.rhs_or_main = e.norm();
        r.residual_or_remainder = res / e.norm();
        r.h = g.h();
        r.ld = ld;
        r.runtime_ms = ms(t0);
        rows.push(r);
    }
    Ok(rows)
}

/// Constant term at s = 1 of (pi/3) E(s, z) - 1/(s-1), by symmetric
/// Richardson extrapolation.
fn kronecker_constant_numeric(z: UpperHalfPoint) -> Res<f64> {
    let f =
        |h: f64| -> Res<f64> { Ok((PI / 3.0 * eisenstein(C::new(1.0 + h, 0.0), z)?).re - 1.0 / h) };
    let g = |h: f64| -> Res<f64> { Ok(0.5 * (f(h)? + f(-h)?)) };
    Ok((4.0 * g(0.01)? - g(0.02)?) / 3.0)
}

fn verify_kronecker(d: Discriminant, seed: u64) -> Res<Vec<VerificationRecord>> {
    let g = ClassGroup::new(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zs: Vec<UpperHalfPoint> = heegner_points(&g).iter().map(|p| p.coords).collect();
    for _ in 0..4 {
        zs.push(UpperHalfPoint {
            x: rng.gen_range(-0.5..0.5),
            y: rng.gen_range(0.2..3.0),
        });
    }
    let mut rows = Vec::new();
    for z in zs {
        let t0 = Instant::now();
        let lhs = kronecker_constant_numeric(z)?;
        let rhs = -log_abs_im_eta4(z) + 2.0 * kronecker_constant();
        let mut r = record(Suite::Kronecker, d, C::new(1.0, 0.0));
        r.lhs = lhs;
        r.rhs_or_main = rhs;
        r.residual_or_remainder = (lhs - rhs).abs();
        r.h = g.h();
        r.runtime_ms = ms(t0);
        rows.push(r);
    }
    Ok(rows)
}

fn verify_average(d: Discriminant) -> Res<Vec<VerificationRecord>> {
    let t0 = Instant::now();
    let g = ClassGroup::new(d)?;
    let lhs = -heegner_average(AverageIntegrand::LogEta4, &g)?.re;
    let ld = ld_quantity(d).value;
    let rhs = ld + 2f64.ln() - EULER_GAMMA;
    let mut r = VerificationRecord::new(Suite::Average, d.value());
    r.lhs = lhs;
    r.rhs_or_main = rhs;
    r.residual_or_remainder = (lhs - rhs).abs();
    r.h = g.h();
    r.ld = ld;
    r.runtime_ms = ms(t0);
    Ok(vec![r])
}

/// Moment identity, the twisted identity and its R + C decomposition at the
/// smallest split prime, and modular invariance of B on a random grid.
fn verify_identities(d: Discriminant, s: C, seed: u64) -> Res<Vec<VerificationRecord>> {
    let mut rows = Vec::new();
    let t0 = Instant::now();
    let m = moment_identity(d, s)?;
    let mut r = record(Suite::Identities, d, s);
    r.lhs = m.geom;
    r.rhs_or_main = m.main_term;
    r.residual_or_remainder = m.remainder;
    r.h = m.h;
    r.ld = m.ld;
    r.runtime_ms = ms(t0);
    rows.push(r);

    if let Some(n) =
        (2..200).find(|&p| heegner_core::arith::is_prime(p) && kronecker_chi(d, p) == 1)
    {
        rows.extend(twisted_rows(d, n, s)?.into_iter().map(|mut r| {
            r.suite = Suite::Identities;
            r
        }));
    }

    let ctx = BContext::new(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Modular::new(2, 1, 7, 4);
    for _ in 0..4 {
        let t0 = Instant::now();
        let z = UpperHalfPoint {
            x: rng.gen_range(-0.5..0.5),
            y: rng.gen_range(0.9..3.0),
        };
        let a = ctx.eval(z)?;
        let b = ctx.eval(g.apply(z))?;
        let mut r = record(Suite::Identities, d, s);
        r.lhs = a;
        r.rhs_or_main = b;
        r.residual_or_remainder = (a - b).abs() / a.abs().max(1.0);
        r.h = m.h;
        r.ld = m.ld;
        r.runtime_ms = ms(t0);
        rows.push(r);
    }
    Ok(rows)
}

/// The theorem_a record and the relative residual of its two pipelines.
fn moment_row(d: Discriminant, s: C) -> Res<(VerificationRecord, f64)> {
    let t0 = Instant::now();
    let a = theorem_a(d, s)?;
    let mut r = record(Suite::Moment, d, s);
    r.lhs = a.lhs;
    r.rhs_or_main = a.main_term;
    r.residual_or_remainder = a.remainder;
    r.h = a.h;
    r.ld = a.ld;
    r.runtime_ms = ms(t0);
    Ok((r, (a.lhs - a.geom).abs() / a.lhs))
}

/// Two rows: the character/Heegner identity and the R + C decomposition.
fn twisted_rows(d: Discriminant, n: i64, s: C) -> Res<Vec<VerificationRecord>> {
    let t0 = Instant::now();
    let t = twisted(d, n, s)?;
    let h = ClassGroup::new(d)?.h();
    let ld = ld_quantity(d).value;
    let mut a = record(Suite::Twisted, d, s);
    a.n = n;
    a.lhs = t.twisted_value.norm();
    a.rhs_or_main = t.geometric.norm();
    a.residual_or_remainder = t.identity_residual;
    a.h = h;
    a.ld = ld;
    a.runtime_ms = ms(t0);
    let mut b = a;
    b.lhs = (t.r_average + t.c_average).norm();
    b.rhs_or_main = t.r_average.norm();
    b.residual_or_remainder = t.decomposition_residual;
    Ok(vec![a, b])
}

fn scan_remainder(dmin: i64, dmax: i64, s: C, exec: Exec) -> Res<Vec<VerificationRecord>> {
    Ok(remainder_scan(dmin, dmax, s, exec)?
        .into_iter()
        .map(|a| {
            let mut r = VerificationRecord::new(Suite::Remainder, a.d);
            r.s_re = s.re;
            r.s_im = s.im;
            r.lhs = a.lhs;
            r.rhs_or_main = a.main_term;
            r.residual_or_remainder = a.remainder;
            r.h = a.h;
            r.ld = a.ld;
            r
        })
        .collect())
}

/// One row per (D, split N): lhs |twisted|, rhs N^{-1/2} (log N)^3,
/// residual of the twisted identity.
fn scan_twisted(dmin: i64, dmax: i64, nmax: i64, s: C, exec: Exec) -> Res<Vec<VerificationRecord>> {
    let mut rows = Vec::new();
    for d in heegner_core::classgroup::fundamental_discriminants(dmin, dmax) {
        let h = ClassGroup::new(d)?.h();
        let ld = ld_quantity(d).value;
        for t in twisted_scan(d, nmax, s, exec)? {
            let nf = t.n as f64;
            let mut r = record(Suite::TwistedScaling, d, s);
            r.n = t.n;
            r.lhs = t.twisted_value.norm();
            r.rhs_or_main = nf.powf(-0.5) * nf.ln().powi(3);
            r.residual_or_remainder = t.identity_residual.max(t.decomposition_residual);
            r.h = h;
            r.ld = ld;
            rows.push(r);
        }
    }
    Ok(rows)
}

/// lhs |(1/h) sum E(s, tau)|, rhs the closed form, residual relative.
fn scan_weyl(dmin: i64, dmax: i64, s: C, exec: Exec) -> Res<Vec<VerificationRecord>> {
    Ok(weyl_scan(dmin, dmax, s, exec)?
        .into_iter()
        .map(|w| {
            let mut r = VerificationRecord::new(Suite::Weyl, w.d);
            r.s_re = s.re;
            r.s_im = s.im;
            r.lhs = w.e_average.norm();
            r.rhs_or_main = w.e_closed.norm();
            r.residual_or_remainder = (w.e_average - w.e_closed).norm() / w.e_closed.norm();
            r.h = w.h;
            r.ld = w.ld;
            r
        })
        .collect())
}

/// lhs the truncated mean, rhs minus the cusp tail; residual their sum.
fn integral_row(kind: KindArg, s: C, n: Option<i64>, y: f64) -> Res<VerificationRecord> {
    let t0 = Instant::now();
    let (kind, n) = match (kind, n) {
        (KindArg::B, _) => (IntegralKind::B, 1),
        (KindArg::C, Some(n)) if n >= 2 && heegner_core::arith::is_prime(n) => (IntegralKind::C, n),
        (KindArg::C, _) => return Err(CliError::Input("--kind C needs a prime --N".into())),
    };
    let rep = regularized_integral(kind, s, n, y, Exec::Parallel)?;
    let mut r = VerificationRecord::new(Suite::Integral, 0);
    r.n = if kind == IntegralKind::C { n } else { 0 };
    r.s_re = s.re;
    r.s_im = s.im;
    r.lhs = rep.value.re;
    r.rhs_or_main = -rep.tail.re;
    r.residual_or_remainder = rep.completed().norm();
    r.runtime_ms = ms(t0);
    Ok(r)
}
