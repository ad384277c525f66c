use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{BigRat, PolyError, UPoly};

/// One of the two ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

/// The monomial `x^x * y^y`, ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn exp(self, var: Var) -> u32 {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }

    fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.x + rhs.x, self.y + rhs.y)
    }
}

/// Sparse bivariate polynomial in `x`, `y` with rational coefficients.
///
/// No zero coefficient is ever stored. Iteration order is ascending in the
/// graded-lex monomial order, so the leading term is the last entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BPoly {
    terms: BTreeMap<Monomial, BigRat>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::term(BigRat::one(), Monomial::new(1, 0)),
            Var::Y => Self::term(BigRat::one(), Monomial::new(0, 1)),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: BigRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BPoly { terms }
    }

    /// Builds from `(x-exponent, y-exponent, coefficient)` triples, summing
    /// repeated monomials.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigRat)>,
    {
        let mut p = BPoly::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// Embeds a univariate polynomial, reading its variable as `var`.
    pub fn from_upoly(u: &UPoly, var: Var) -> Self {
        Self::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            match var {
                Var::X => (k, 0, c.clone()),
                Var::Y => (0, k, c.clone()),
            }
        }))
    }

    /// Rebuilds `sum_k coeffs[k](other) * var^k` where each coefficient is a
    /// univariate polynomial in the other variable.
    pub fn from_coeffs_in(var: Var, coeffs: &[UPoly]) -> Self {
        let mut p = BPoly::zero();
        for (k, u) in coeffs.iter().enumerate() {
            for (l, c) in u.coeffs().iter().enumerate() {
                let m = match var {
                    Var::X => Monomial::new(k as u32, l as u32),
                    Var::Y => Monomial::new(l as u32, k as u32),
                };
                p.add_term(m, c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRat> {
        self.is_constant().then(|| self.coeff(Monomial::ONE))
    }

    pub fn coeff(&self, m: Monomial) -> BigRat {
        self.terms.get(&m).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &BigRat)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &BigRat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Total degree, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in a single variable, or `None` for zero.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    /// True if the variable does not occur.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.terms.keys().all(|m| m.exp(var) == 0)
    }

    /// Reads the polynomial as univariate in `x` when it is free of `y`.
    pub fn to_upoly_x(&self) -> Option<UPoly> {
        if !self.is_free_of(Var::Y) {
            return None;
        }
        let coeffs = self.coeffs_in(Var::X).iter().map(|u| u.coeff(0)).collect();
        Some(UPoly::from_coeffs(coeffs))
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a univariate polynomial in the other variable.
    pub fn coeffs_in(&self, var: Var) -> Vec<UPoly> {
        let Some(d) = self.degree_in(var) else {
            return Vec::new();
        };
        let other = var.other();
        let mut rows: Vec<Vec<BigRat>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.exp(var) as usize];
            let l = m.exp(other) as usize;
            if row.len() <= l {
                row.resize(l + 1, BigRat::zero());
            }
            row[l] = c.clone();
        }
        rows.into_iter().map(UPoly::from_coeffs).collect()
    }

    /// Leading coefficient with respect to `var` (a polynomial in the other
    /// variable); zero for the zero polynomial.
    pub fn leading_coeff_in(&self, var: Var) -> UPoly {
        self.coeffs_in(var).pop().unwrap_or_else(UPoly::zero)
    }

    /// Fixes `var = value`, leaving a univariate polynomial in the other
    /// variable.
    pub fn specialize(&self, var: Var, value: &BigRat) -> UPoly {
        let coeffs = self.coeffs_in(var.other());
        UPoly::from_coeffs(coeffs.iter().map(|u| u.eval(value)).collect())
    }

    pub fn eval(&self, x: &BigRat, y: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for (m, c) in &self.terms {
            acc += c * pow(x, m.x) * pow(y, m.y);
        }
        acc
    }

    pub fn scale(&self, c: &BigRat) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn mul_term(&self, m: Monomial, c: &BigRat) -> BPoly {
        if c.is_zero() {
            return BPoly::zero();
        }
        BPoly {
            terms: self.terms.iter().map(|(n, a)| (*n * m, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> BPoly {
        let mut base = self.clone();
        let mut acc = BPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: Var) -> BPoly {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let m2 = match var {
                Var::X => Monomial::new(m.x - 1, m.y),
                Var::Y => Monomial::new(m.x, m.y - 1),
            };
            out.insert(m2, c * BigRat::from_integer(e.into()));
        }
        BPoly { terms: out }
    }

    /// Image under the ring endomorphism `x -> img_x`, `y -> img_y`.
    pub fn substitute(&self, img_x: &BPoly, img_y: &BPoly) -> BPoly {
        let (Some(dx), Some(dy)) = (self.degree_in(Var::X), self.degree_in(Var::Y)) else {
            return BPoly::zero();
        };
        let xs = powers(img_x, dx);
        let ys = powers(img_y, dy);
        // Group by y-exponent so each power of img_y is multiplied once.
        let mut out = BPoly::zero();
        for (j, row) in self.coeffs_in(Var::Y).iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            let mut inner = BPoly::zero();
            for (i, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    inner = &inner + &xs[i].scale(c);
                }
            }
            out = &out + &(&inner * &ys[j]);
        }
        out
    }

    /// Quotient `h` with `self = h * divisor`, if the division is exact.
    pub fn exact_divide(&self, divisor: &BPoly) -> Result<Option<BPoly>, PolyError> {
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = BPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = Monomial::new(m.x - lm.x, m.y - lm.y);
            let qc = c / &lc;
            rem = &rem - &divisor.mul_term(qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// `f_x * g_y - f_y * g_x`.
    pub fn jacobian(f: &BPoly, g: &BPoly) -> BPoly {
        &(&f.partial(Var::X) * &g.partial(Var::Y)) - &(&f.partial(Var::Y) * &g.partial(Var::X))
    }
}

fn pow(b: &BigRat, e: u32) -> BigRat {
    num_traits::pow(b.clone(), e as usize)
}

fn powers(p: &BPoly, upto: u32) -> Vec<BPoly> {
    let mut out = Vec::with_capacity(upto as usize + 1);
    out.push(BPoly::one());
    for k in 1..=upto as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl Add for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl Sub for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(*m * *n, a * b);
            }
        }
        out
    }
}

impl Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for BPoly {
            type Output = BPoly;
            fn $m(self, rhs: BPoly) -> BPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        -&self
    }
}

impl From<&UPoly> for BPoly {
    fn from(u: &UPoly) -> BPoly {
        BPoly::from_upoly(u, Var::X)
    }
}

/// Orders polynomials by their terms from the leading one down, comparing
/// monomials first and coefficients second.
impl Ord for BPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((m1, c1)), Some((m2, c2))) => {
                    let o = m1.cmp(m2).then_with(|| c1.cmp(c2));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl PartialOrd for BPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("x", i), ("y", j)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes terms given leading-first as `(coeff, x-exp, y-exp)`.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigRat, u32, u32)>,
{
    let mut empty = true;
    for (c, i, j) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        match (empty, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        empty = false;
        if i == 0 && j == 0 {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write_monomial(f, i, j)?;
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

/// Canonical form: graded-lex descending, `x` before `y`, explicit `*`.
impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().rev().map(|(m, c)| (c.clone(), m.x, m.y)),
        )
    }
}
