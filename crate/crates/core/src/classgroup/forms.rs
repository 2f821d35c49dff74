use crate::arith::{gcd, isqrt};
use crate::error::{Error, Result};

use super::Discriminant;

/// Positive definite binary quadratic form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    /// Form with leading coefficient `a`, middle `b`, and `c` fixed by the discriminant.
    pub fn from_ab(a: i64, b: i64, d: i64) -> Result<Self> {
        let num = (b as i128) * (b as i128) - d as i128;
        let den = 4 * a as i128;
        if a <= 0 || num % den != 0 {
            return Err(Error::Domain(format!(
                "no form ({a},{b},*) of discriminant {d}"
            )));
        }
        Ok(QuadForm {
            a,
            b,
            c: narrow(num / den)?,
        })
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The form (a, -b, c), representing the inverse class.
    pub fn conjugate(&self) -> Self {
        QuadForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
    }

    pub fn eval(&self, m: f64, n: f64) -> f64 {
        self.a as f64 * m * m + self.b as f64 * m * n + self.c as f64 * n * n
    }

    /// Root in the upper half plane of a x^2 + b x + c: (-b + sqrt(D)) / 2a.
    pub fn root(&self) -> (f64, f64) {
        let d = self.discriminant();
        let a2 = 2.0 * self.a as f64;
        (-(self.b as f64) / a2, ((-d) as f64).sqrt() / a2)
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Gauss reduction to the unique reduced representative of the class.
pub fn reduce_form(f: QuadForm) -> QuadForm {
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    assert!(
        a > 0 && b * b - 4 * a * c < 0,
        "form must be positive definite"
    );
    loop {
        // bring b into (-a, a] via x -> x + r y
        let r = (a - b).div_euclid(2 * a);
        if r != 0 {
            c += r * (b + a * r);
            b += 2 * a * r;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        } else {
            break;
        }
    }
    if a == c && b < 0 {
        b = -b;
    }
    QuadForm {
        a: a as i64,
        b: b as i64,
        c: c as i64,
    }
}

/// All reduced forms of discriminant D, principal form first.
pub fn reduced_forms(d: Discriminant) -> Vec<QuadForm> {
    let dv = d.value() as i128;
    let amax = isqrt(-dv / 3);
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in -a..=a {
            let num = b * b - dv;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm {
                a: a as i64,
                b: b as i64,
                c: c as i64,
            };
            if f.is_reduced() {
                out.push(f);
            }
        }
    }
    // (a, |b|) ascending, positive b before its conjugate
    out.sort_by_key(|f| (f.a, f.b.abs(), f.b < 0, f.c));
    out
}

// Elements of the maximal order written as x + y*omega, omega = (D + sqrt D)/2,
// omega^2 = D omega - D(D-1)/4.
fn mul_order(d: i128, (x1, y1): (i128, i128), (x2, y2): (i128, i128)) -> (i128, i128) {
    let norm_term = d * (d - 1) / 4;
    (
        x1 * x2 - y1 * y2 * norm_term,
        x1 * y2 + x2 * y1 + y1 * y2 * d,
    )
}

/// Z-basis of the ideal attached to (a, b, c): a Z + ((-b + sqrt D)/2) Z.
fn ideal_basis(f: &QuadForm, d: i128) -> [(i128, i128); 2] {
    let b = f.b as i128;
    [(f.a as i128, 0), ((-b - d) / 2, 1)]
}

/// Hermite normal form of a rank-2 sublattice of Z^2 given by generators.
/// Returns (n, m, k) with basis {(n, 0), (m, k)}, n, k > 0, 0 <= m < n.
fn hermite(mut rows: Vec<(i128, i128)>) -> (i128, i128, i128) {
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.1 != 0)
            .min_by_key(|(_, r)| r.1.abs())
            .map(|(i, _)| i)
            .expect("lattice must have full rank");
        let p = rows[pivot];
        let mut done = true;
        for (i, r) in rows.iter_mut().enumerate() {
            if i != pivot && r.1 != 0 {
                let q = r.1.div_euclid(p.1);
                r.0 -= q * p.0;
                r.1 -= q * p.1;
                if r.1 != 0 {
                    done = false;
                }
            }
        }
        if done {
            let (mut m, mut k) = rows[pivot];
            if k < 0 {
                m = -m;
                k = -k;
            }
            let n = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != pivot)
                .fold(0, |g, (_, r)| gcd(g, r.0));
            return (n, m.rem_euclid(n), k);
        }
    }
}

/// Gauss composition through multiplication of the attached ideals.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let df = f.discriminant();
    let dg = g.discriminant();
    if df != dg {
        return Err(Error::DiscriminantMismatch(df, dg));
    }
    let d = df as i128;
    let [a1, g1] = ideal_basis(f, d);
    let [a2, g2] = ideal_basis(g, d);
    let gens = vec![
        mul_order(d, a1, a2),
        mul_order(d, a1, g2),
        mul_order(d, g1, a2),
        mul_order(d, g1, g2),
    ];
    let (n, m, k) = hermite(gens);
    if n % k != 0 || m % k != 0 {
        return Err(Error::Numerical(
            "ideal product is not k times a primitive ideal".into(),
        ));
    }
    let a = n / k;
    let b = -2 * (m / k) - d;
    let num = b * b - d;
    if num % (4 * a) != 0 {
        return Err(Error::Numerical("composed form has non-integral c".into()));
    }
    let c = num / (4 * a);
    Ok(reduce_form(QuadForm {
        a: narrow(a)?,
        b: narrow(b)?,
        c: narrow(c)?,
    }))
}
