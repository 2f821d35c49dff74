//! Heegner points of level 1 and level N.

use crate::arith::ext_gcd;
use crate::classgroup::{reduce_form, split_ideal_classes, ClassGroup, QuadForm};
use crate::error::{Error, Result};
pub use crate::upper::{fricke, reduce_to_fundamental_domain, Modular, UpperHalfPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeegnerPoint {
    pub level: i64,
    pub class_index: usize,
    pub coords: UpperHalfPoint,
    pub form: QuadForm,
}

fn root_point(f: &QuadForm) -> UpperHalfPoint {
    let (x, y) = f.root();
    UpperHalfPoint { x, y }
}

/// The point attached to a class, taken from its reduced form, so it lies in
/// the standard fundamental domain.
pub fn heegner_point(group: &ClassGroup, class_index: usize) -> HeegnerPoint {
    let form = group.elements[class_index];
    HeegnerPoint {
        level: 1,
        class_index,
        coords: root_point(&form),
        form,
    }
}

pub fn heegner_points(group: &ClassGroup) -> Vec<HeegnerPoint> {
    (0..group.h()).map(|i| heegner_point(group, i)).collect()
}

/// A properly equivalent form whose first coefficient is prime to n.
fn coprime_leading(f: QuadForm, n: i64) -> QuadForm {
    if f.a % n != 0 {
        return f;
    }
    for p in 0i64..=n {
        for q in 1i64..=n {
            let (g, r0, s0) = ext_gcd(p as i128, q as i128);
            if g != 1 {
                continue;
            }
            let a = f.a * p * p + f.b * p * q + f.c * q * q;
            if a % n == 0 {
                continue;
            }
            // p s - q r = 1 with s = r0, r = -s0
            let (r, s) = (-(s0 as i64), r0 as i64);
            let b = 2 * f.a * p * r + f.b * (p * s + q * r) + 2 * f.c * q * s;
            let c = f.a * r * r + f.b * r * s + f.c * s * s;
            return QuadForm::new(a, b, c);
        }
    }
    unreachable!("a primitive form represents a value prime to the prime {n}")
}

/// Level-N Heegner points attached to the ideal n = (N, (-beta + sqrt D)/2):
/// one form (A, B, C) per class with N | A and B = beta (mod 2N), so that
/// N tau_n^A reduces to the level-1 point of A[n]^{-1}.
pub fn level_n_points(group: &ClassGroup, n: i64, beta: i64) -> Result<Vec<HeegnerPoint>> {
    let split = split_ideal_classes(group, n)?;
    let d = group.disc.value();
    if (beta as i128 * beta as i128 - d as i128).rem_euclid(4 * n as i128) != 0 {
        return Err(Error::Domain(format!(
            "beta={beta} is not a square root of {d} mod {}",
            4 * n
        )));
    }
    let class_n = if (beta - split.beta).rem_euclid(2 * n) == 0 {
        split.class_n
    } else {
        split.class_nbar
    };
    let two_n = 2 * n;
    let mut out = Vec::with_capacity(group.h());
    for idx in 0..group.h() {
        // g in A[n]^{-1}; the ideal product g * n then lies in A.
        let target = group.mul(idx, group.inverse(class_n));
        let g = coprime_leading(group.elements[target], n);
        let a2 = 2 * g.a;
        // B = g.b (mod 2 g.a), B = beta (mod 2N)
        let (_, u, _) = ext_gcd(g.a as i128, n as i128);
        let m = a2 as i128 * n as i128;
        let diff = (beta - g.b) as i128 / 2;
        let k = (diff * u).rem_euclid(n as i128);
        let mut b = (g.b as i128 + a2 as i128 * k).rem_euclid(m);
        let big_a = g.a as i128 * n as i128;
        if b > big_a {
            b -= 2 * big_a;
        }
        debug_assert_eq!((b - g.b as i128).rem_euclid(a2 as i128), 0);
        debug_assert_eq!((b - beta as i128).rem_euclid(two_n as i128), 0);
        let form = QuadForm::from_ab(big_a as i64, b as i64, d)?;
        debug_assert_eq!(group.class_of(&reduce_form(form)).ok(), Some(idx));
        out.push(HeegnerPoint {
            level: n,
            class_index: idx,
            coords: root_point(&form),
            form,
        });
    }
    Ok(out)
}
