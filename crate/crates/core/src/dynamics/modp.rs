//! Univariate arithmetic modulo the Mersenne prime 2^61 - 1, used to bound
//! degrees from below without coefficient growth.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::polyring::{BPoly, BigRat, Var};

pub(crate) const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

/// Image of a rational in F_p, or `None` if p divides the denominator.
pub(crate) fn reduce(c: &BigRat) -> Option<u64> {
    let p = BigInt::from(P);
    let n = ((c.numer() % &p) + &p) % &p;
    let d = c.denom() % &p;
    if d.is_zero() {
        return None;
    }
    let n = n.to_u64().expect("reduced below p");
    let d = d.to_u64().expect("reduced below p");
    Some(mulmod(n, powmod(d, P - 2)))
}

/// Dense polynomial over F_p; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly(Vec<u64>);

impl ModPoly {
    pub(crate) fn linear(c0: u64, c1: u64) -> Self {
        ModPoly::new(vec![c0 % P, c1 % P])
    }

    fn new(mut v: Vec<u64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        ModPoly(v)
    }

    fn constant(c: u64) -> Self {
        ModPoly::new(vec![c])
    }

    pub(crate) fn degree(&self) -> Option<u32> {
        self.0.len().checked_sub(1).map(|d| d as u32)
    }

    fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return ModPoly(Vec::new());
        }
        let mut out = vec![0u128; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                // a*b < 2^122; reduce before the sum can overflow
                let acc = &mut out[i + j];
                *acc += a as u128 * b as u128;
                if *acc >= 1 << 126 {
                    *acc %= P as u128;
                }
            }
        }
        ModPoly::new(out.into_iter().map(|c| (c % P as u128) as u64).collect())
    }

    fn add_scaled(&mut self, other: &ModPoly, c: u64) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (s, &o) in self.0.iter_mut().zip(&other.0) {
            *s = (*s + mulmod(o, c)) % P;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

/// A polynomial with coefficients already reduced mod p.
#[derive(Clone, Debug)]
pub(crate) struct ModBPoly {
    terms: Vec<(u32, u32, u64)>,
    deg_x: u32,
    deg_y: u32,
}

impl ModBPoly {
    pub(crate) fn reduce(p: &BPoly) -> Option<Self> {
        let terms = p
            .terms()
            .map(|(m, c)| reduce(c).map(|c| (m.x, m.y, c)))
            .collect::<Option<Vec<_>>>()?;
        Some(ModBPoly {
            terms,
            deg_x: p.degree_in(Var::X).unwrap_or(0),
            deg_y: p.degree_in(Var::Y).unwrap_or(0),
        })
    }

    /// `p(u, v)` in F_p[t].
    pub(crate) fn eval(&self, u: &ModPoly, v: &ModPoly) -> ModPoly {
        let pows = |base: &ModPoly, n: u32| {
            let mut out = vec![ModPoly::constant(1)];
            for k in 1..=n as usize {
                out.push(out[k - 1].mul(base));
            }
            out
        };
        let us = pows(u, self.deg_x);
        let vs = pows(v, self.deg_y);
        let mut acc = ModPoly(Vec::new());
        for &(i, j, c) in &self.terms {
            acc.add_scaled(&us[i as usize].mul(&vs[j as usize]), c);
        }
        acc
    }
}
