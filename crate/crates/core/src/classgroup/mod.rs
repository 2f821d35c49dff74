//! Imaginary quadratic class groups via positive definite binary quadratic forms.

mod forms;
mod group;

pub use forms::{compose, reduce_form, reduced_forms, QuadForm};
pub use group::{split_ideal_classes, ClassCharacter, ClassGroup, SplitClasses};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

/// A fundamental negative discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Discriminant(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// Half the number of units of the ring of integers: 3, 2 or 1.
    pub fn w(self) -> u32 {
        match self.0 {
            -3 => 3,
            -4 => 2,
            _ => 1,
        }
    }

    /// Number of units (2w).
    pub fn unit_count(self) -> u32 {
        2 * self.w()
    }

    pub fn chi(self, n: i64) -> i32 {
        kronecker_chi(self, n)
    }

    pub fn sqrt_abs(self) -> f64 {
        (self.abs() as f64).sqrt()
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(m),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental negative discriminants in `[dmin, dmax]`, sorted by decreasing value
/// (i.e. increasing |D|).
pub fn fundamental_discriminants(dmin: i64, dmax: i64) -> Vec<Discriminant> {
    let hi = dmax.min(-3);
    (dmin..=hi)
        .rev()
        .filter(|&d| is_fundamental(d))
        .map(Discriminant)
        .collect()
}

/// Kronecker symbol (a / n) for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a / n), n odd positive
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The quadratic character attached to D.
pub fn kronecker_chi(d: Discriminant, n: i64) -> i32 {
    kronecker(d.value(), n)
}
