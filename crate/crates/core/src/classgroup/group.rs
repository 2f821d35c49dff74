use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::forms::{compose, reduce_form, reduced_forms, QuadForm};
use super::{kronecker_chi, Discriminant};
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A unitary character of the class group, as its values on the class list.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassCharacter {
    /// Exponent vector k: chi(g_i) = exp(2 pi i k_i / n_i).
    pub label: Vec<u64>,
    pub values: Vec<Complex64>,
}

impl ClassCharacter {
    pub fn is_trivial(&self) -> bool {
        self.label.iter().all(|&k| k == 0)
    }

    pub fn conj(&self) -> ClassCharacter {
        ClassCharacter {
            label: self.label.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }
}

/// Class group of a fundamental discriminant with its full group law.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub disc: Discriminant,
    /// Reduced forms, principal form first.
    pub elements: Vec<QuadForm>,
    /// Cyclic decomposition as (generator index, order).
    pub cyclic_factors: Vec<(usize, u64)>,
    /// Row-major h x h table of composed class indices.
    table: Vec<u32>,
    /// Exponent vector of each element with respect to the cyclic factors.
    exponents: Vec<Vec<u64>>,
    index: HashMap<QuadForm, usize>,
}

impl ClassGroup {
    pub fn new(disc: Discriminant) -> Result<Self> {
        let elements = reduced_forms(disc);
        let h = elements.len();
        let index: HashMap<QuadForm, usize> =
            elements.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut table = vec![0u32; h * h];
        for i in 0..h {
            for j in i..h {
                let k = index[&compose(&elements[i], &elements[j])?] as u32;
                table[i * h + j] = k;
                table[j * h + i] = k;
            }
        }
        let mut group = ClassGroup {
            disc,
            elements,
            cyclic_factors: Vec::new(),
            table,
            exponents: Vec::new(),
            index,
        };
        group.decompose();
        Ok(group)
    }

    pub fn h(&self) -> usize {
        self.elements.len()
    }

    pub fn w(&self) -> u32 {
        self.disc.w()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.h() + j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&reduce_form(self.elements[i].conjugate())]
    }

    /// Class index of an arbitrary form of discriminant D.
    pub fn class_of(&self, f: &QuadForm) -> Result<usize> {
        if f.discriminant() != self.disc.value() {
            return Err(Error::DiscriminantMismatch(
                f.discriminant(),
                self.disc.value(),
            ));
        }
        Ok(self.index[&reduce_form(*f)])
    }

    pub fn pow(&self, i: usize, mut e: u64) -> usize {
        let mut acc = self.identity();
        let mut base = i;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, i: usize) -> u64 {
        let mut x = i;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    pub fn exponents(&self, i: usize) -> &[u64] {
        &self.exponents[i]
    }

    /// Greedy invariant-factor decomposition: repeatedly take a coset of maximal
    /// order in G/H and a representative whose order equals that quotient order.
    fn decompose(&mut self) {
        let h = self.h();
        let mut in_sub = vec![false; h];
        in_sub[0] = true;
        let mut sub = vec![0usize];
        let mut factors: Vec<(usize, u64)> = Vec::new();
        while sub.len() < h {
            let quotient_order = |x: usize, in_sub: &[bool]| {
                let mut y = x;
                let mut m = 1;
                while !in_sub[y] {
                    y = self.mul(y, x);
                    m += 1;
                }
                m
            };
            let (best, m) = (0..h)
                .filter(|&x| !in_sub[x])
                .map(|x| (x, quotient_order(x, &in_sub)))
                .max_by_key(|&(x, m)| (m, std::cmp::Reverse(x)))
                .unwrap();
            let gen = sub
                .iter()
                .map(|&s| self.mul(best, s))
                .find(|&y| self.order(y) == m)
                .expect("coset of maximal quotient order contains an element of that order");
            // H <- H x <gen>
            let mut new_sub = Vec::with_capacity(sub.len() * m as usize);
            let mut p = self.identity();
            for _ in 0..m {
                for &s in &sub {
                    new_sub.push(self.mul(p, s));
                }
                p = self.mul(p, gen);
            }
            for &x in &new_sub {
                in_sub[x] = true;
            }
            sub = new_sub;
            factors.push((gen, m));
        }
        // exponent vectors by enumerating products of generator powers
        let mut exps = vec![Vec::new(); h];
        let mut stack: Vec<(usize, Vec<u64>)> = vec![(self.identity(), Vec::new())];
        for &(g, n) in &factors {
            let mut next = Vec::with_capacity(stack.len() * n as usize);
            for (x, e) in &stack {
                let mut y = *x;
                for k in 0..n {
                    let mut e2 = e.clone();
                    e2.push(k);
                    next.push((y, e2));
                    y = self.mul(y, g);
                }
            }
            stack = next;
        }
        for (x, e) in stack {
            exps[x] = e;
        }
        self.cyclic_factors = factors;
        self.exponents = exps;
    }

    /// All h characters, trivial character first.
    pub fn characters(&self) -> Vec<ClassCharacter> {
        let orders: Vec<u64> = self.cyclic_factors.iter().map(|f| f.1).collect();
        let mut labels: Vec<Vec<u64>> = vec![Vec::new()];
        for &n in &orders {
            labels = labels
                .into_iter()
                .flat_map(|l| {
                    (0..n).map(move |k| {
                        let mut l2 = l.clone();
                        l2.push(k);
                        l2
                    })
                })
                .collect();
        }
        labels
            .into_iter()
            .map(|label| {
                let values = self
                    .exponents
                    .iter()
                    .map(|e| {
                        let phase: f64 = label
                            .iter()
                            .zip(e)
                            .zip(&orders)
                            .map(|((&k, &x), &n)| ((k * x) % n) as f64 / n as f64)
                            .sum();
                        Complex64::from_polar(1.0, 2.0 * PI * phase)
                    })
                    .collect();
                ClassCharacter { label, values }
            })
            .collect()
    }
}

/// Classes of the two prime ideals above a split prime N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitClasses {
    pub beta: i64,
    pub form_n: QuadForm,
    pub form_nbar: QuadForm,
    pub class_n: usize,
    pub class_nbar: usize,
}

/// Smallest beta in [0, 2N) with beta^2 = D (mod 4N), and the classes of
/// (N, beta, *) and (N, -beta, *).
pub fn split_ideal_classes(group: &ClassGroup, n: i64) -> Result<SplitClasses> {
    let d = group.disc;
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if kronecker_chi(d, n) != 1 {
        return Err(Error::NotSplit { d: d.value(), n });
    }
    let dv = d.value() as i128;
    let modulus = 4 * n as i128;
    let beta = (0..2 * n as i128)
        .find(|b| (b * b - dv).rem_euclid(modulus) == 0)
        .ok_or(Error::NotSplit { d: d.value(), n })? as i64;
    let form_n = QuadForm::from_ab(n, beta, d.value())?;
    let form_nbar = QuadForm::from_ab(n, -beta, d.value())?;
    Ok(SplitClasses {
        beta,
        form_n,
        form_nbar,
        class_n: group.class_of(&form_n)?,
        class_nbar: group.class_of(&form_nbar)?,
    })
}
