use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::BigRat;

/// Dense univariate polynomial in `x` with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<BigRat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(BigRat::one(), 1)
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: BigRat, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRat::zero(); n + 1];
        coeffs[n] = c;
        UPoly { coeffs }
    }

    /// Builds from coefficients lowest degree first; trailing zeros are dropped.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        let mut p = UPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRat> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRat::from_integer(i.into()))
                .collect(),
        )
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / BigRat::from_integer((i + 1).into()));
        }
        Self::from_coeffs(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * at + c)
    }

    /// `a(x + c)`, expanded exactly.
    pub fn shift(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        // Horner in the shifted variable: acc <- acc * (x + c) + coeff.
        let step = UPoly::from_coeffs(vec![c.clone(), BigRat::one()]);
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, k| {
            &(&acc * &step) + &UPoly::constant(k.clone())
        })
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if nd < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRat::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    /// Exact quotient if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        match self.leading_coeff() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Multiplies by the least common multiple of the denominators, giving
    /// integer coefficients. Returns the scaled polynomial and the factor.
    pub fn clear_denominators(&self) -> (UPoly, BigRat) {
        let lcm = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let factor = BigRat::from_integer(lcm);
        (self.scale(&factor), factor)
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, k| {
            &(&acc * inner) + &UPoly::constant(k.clone())
        })
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i as u32, 0));
        super::bpoly::write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(UPoly::zero().degree(), None);
        assert_eq!(UPoly::from_i64(&[0, 0, 0]).degree(), None);
        assert_eq!(UPoly::from_i64(&[5]).degree(), Some(0));
    }

    #[test]
    fn shift_examples() {
        let sq = UPoly::from_i64(&[0, 0, 1]);
        assert_eq!(sq.shift(&int(1)), UPoly::from_i64(&[1, 2, 1]));
        assert_eq!(sq.shift(&int(0)), sq);
        // oracle: (x-1)^3 - (x-1) expanded by hand = x^3 - 3x^2 + 2x
        let cubic = UPoly::from_i64(&[0, -1, 0, 1]);
        let by_compose = cubic.compose(&UPoly::from_i64(&[-1, 1]));
        assert_eq!(by_compose, UPoly::from_i64(&[0, 2, -3, 1]));
        assert_eq!(cubic.shift(&int(-1)), by_compose);
    }

    #[test]
    fn shift_inverts() {
        let a = UPoly::from_coeffs(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        let c = rat(-3, 2);
        assert_eq!(a.shift(&c).shift(&-&c), a);
    }

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_i64(&[-1, 1]); // x - 1
        assert_eq!(a.exact_div(&b), Some(UPoly::from_i64(&[1, 1])));
        assert_eq!(b.exact_div(&a), None);
        let c = UPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&c), UPoly::from_i64(&[1, 1]));
        assert_eq!(a.gcd(&UPoly::from_i64(&[3])), UPoly::one());
    }

    #[test]
    fn calculus() {
        let p = UPoly::from_i64(&[0, 0, 3]);
        assert_eq!(p.derivative(), UPoly::from_i64(&[0, 6]));
        assert_eq!(
            UPoly::from_i64(&[0, 0, 3]).antiderivative(),
            UPoly::from_i64(&[0, 0, 0, 1])
        );
        assert_eq!(p.antiderivative().derivative(), p);
        assert_eq!(p.eval(&int(2)), int(12));
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_i64(&[1, 0, -2]).to_string(), "-2*x^2 + 1");
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}
