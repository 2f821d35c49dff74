//! Points of the upper half plane, modular matrices and reduction to the
//! standard fundamental domain.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "({x}, {y}) is not in the upper half plane"
            )));
        }
        Ok(UpperHalfPoint { x, y })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// N z.
    pub fn scale(self, n: f64) -> Self {
        UpperHalfPoint {
            x: n * self.x,
            y: n * self.y,
        }
    }

    pub fn translate(self, t: f64) -> Self {
        UpperHalfPoint {
            x: self.x + t,
            y: self.y,
        }
    }

    pub fn in_fundamental_domain(self) -> bool {
        self.x >= -0.5 - 1e-12
            && self.x <= 0.5 + 1e-12
            && self.x * self.x + self.y * self.y >= 1.0 - 1e-12
    }
}

/// Integer 2x2 matrix of determinant 1 acting by Moebius transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modular {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Modular {
    pub const IDENTITY: Modular = Modular {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: Modular = Modular {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Modular { a, b, c, d }
    }

    pub fn translation(n: i64) -> Self {
        Modular {
            a: 1,
            b: n,
            c: 0,
            d: 1,
        }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// self * other
    pub fn mul(&self, o: &Modular) -> Modular {
        Modular {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn apply(&self, z: UpperHalfPoint) -> UpperHalfPoint {
        let zc = z.to_complex();
        let w = (self.a as f64 * zc + self.b as f64) / (self.c as f64 * zc + self.d as f64);
        UpperHalfPoint { x: w.re, y: w.im }
    }

    /// Automorphy factor c z + d.
    pub fn factor(&self, z: UpperHalfPoint) -> Complex64 {
        self.c as f64 * z.to_complex() + self.d as f64
    }
}

/// Reduce z into the standard fundamental domain: |x| <= 1/2, |z| >= 1, with
/// x in [-1/2, 1/2) and x <= 0 on the unit circle. Returns (z', g), z' = g z.
pub fn reduce_to_fundamental_domain(z: UpperHalfPoint) -> (UpperHalfPoint, Modular) {
    const EPS: f64 = 1e-11;
    let mut w = z;
    let mut g = Modular::IDENTITY;
    for _ in 0..10_000 {
        let n = (w.x + 0.5 + EPS).floor();
        if n != 0.0 {
            w.x -= n;
            g = Modular::translation(-(n as i64)).mul(&g);
        }
        let r2 = w.x * w.x + w.y * w.y;
        if r2 < 1.0 - EPS {
            w = Modular::S.apply(w);
            g = Modular::S.mul(&g);
        } else {
            break;
        }
    }
    if (w.x * w.x + w.y * w.y - 1.0).abs() <= EPS && w.x > EPS {
        w = Modular::S.apply(w);
        g = Modular::S.mul(&g);
    }
    (w, g)
}

/// Fricke involution z -> -1/(N z).
pub fn fricke(z: UpperHalfPoint, n: i64) -> UpperHalfPoint {
    let w = -1.0 / (n as f64 * z.to_complex());
    UpperHalfPoint { x: w.re, y: w.im }
}

/// Hyperbolic distance.
pub fn hyperbolic_distance(z: UpperHalfPoint, w: UpperHalfPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    // 2 asinh(|z - w| / (2 sqrt(y y'))), accurate for nearby points
    2.0 * ((dx * dx + dy * dy).sqrt() / (2.0 * (z.y * w.y).sqrt())).asinh()
}
