//! Derivations of `k[x, y]`, the Shamsuddin normal form, and Darboux
//! (invariant principal ideal) witnesses.

use std::fmt;

use crate::polyring::{BPoly, UPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("invariant_check needs a nonzero polynomial")]
    ZeroPolynomial,
}

/// The derivation `dx * d/dx + dy * d/dy`, determined by the images of the
/// two variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub dx: BPoly,
    pub dy: BPoly,
}

impl Derivation {
    pub fn new(dx: BPoly, dy: BPoly) -> Self {
        Derivation { dx, dy }
    }

    /// `d/dx`.
    pub fn partial_x() -> Self {
        Derivation::new(BPoly::one(), BPoly::zero())
    }

    /// Image of a variable.
    pub fn image(&self, var: Var) -> &BPoly {
        match var {
            Var::X => &self.dx,
            Var::Y => &self.dy,
        }
    }

    pub fn apply(&self, p: &BPoly) -> BPoly {
        &(&self.dx * &p.partial(Var::X)) + &(&self.dy * &p.partial(Var::Y))
    }

    /// Recognizes `d/dx + (a(x) y + b(x)) d/dy`.
    pub fn to_shamsuddin(&self) -> Option<ShamsuddinForm> {
        if self.dx != BPoly::one() || self.dy.degree_in(Var::Y).unwrap_or(0) > 1 {
            return None;
        }
        let mut rows = self.dy.coeffs_in(Var::Y).into_iter();
        let b = rows.next().unwrap_or_default();
        let a = rows.next().unwrap_or_default();
        Some(ShamsuddinForm { a, b })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx={}; dy={}", self.dx, self.dy)
    }
}

/// `D = d/dx + (a(x) y + b(x)) d/dy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShamsuddinForm {
    pub a: UPoly,
    pub b: UPoly,
}

impl ShamsuddinForm {
    pub fn new(a: UPoly, b: UPoly) -> Self {
        ShamsuddinForm { a, b }
    }

    pub fn from_i64(a: &[i64], b: &[i64]) -> Self {
        ShamsuddinForm::new(UPoly::from_i64(a), UPoly::from_i64(b))
    }

    pub fn to_derivation(&self) -> Derivation {
        let dy = &(&BPoly::from(&self.a) * &BPoly::y()) + &BPoly::from(&self.b);
        Derivation::new(BPoly::one(), dy)
    }
}

impl fmt::Display for ShamsuddinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shamsuddin a={}; b={}", self.a, self.b)
    }
}

/// A nonconstant `f` with `D(f) = cofactor * f`, so that the ideal `(f)` is
/// `D`-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxWitness {
    f: BPoly,
    cofactor: BPoly,
}

impl DarbouxWitness {
    pub fn f(&self) -> &BPoly {
        &self.f
    }

    pub fn cofactor(&self) -> &BPoly {
        &self.cofactor
    }

    /// Recomputes `D(f) - cofactor * f` and checks it vanishes.
    pub fn verify(&self, d: &Derivation) -> bool {
        !self.f.is_constant() && (&d.apply(&self.f) - &(&self.cofactor * &self.f)).is_zero()
    }
}

impl fmt::Display for DarbouxWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f={}; cofactor={}", self.f, self.cofactor)
    }
}

/// Returns the witness for `(f)` when `f` is nonconstant and divides `D(f)`.
pub fn invariant_check(
    d: &Derivation,
    f: &BPoly,
) -> Result<Option<DarbouxWitness>, DerivationError> {
    if f.is_zero() {
        return Err(DerivationError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(None);
    }
    let image = d.apply(f);
    let cofactor = image.exact_divide(f).expect("f is nonzero");
    Ok(cofactor.map(|cofactor| DarbouxWitness {
        f: f.clone(),
        cofactor,
    }))
}

/// Invariant ideals that exist whenever `a = 0` or `b = 0`: `(y)` with
/// cofactor `a` when `b = 0`, and `(y - h)` with `h' = b`, `h(0) = 0`, when
/// `a = 0`.
pub fn lemma_witness(sf: &ShamsuddinForm) -> Option<DarbouxWitness> {
    if sf.b.is_zero() {
        return Some(DarbouxWitness {
            f: BPoly::y(),
            cofactor: BPoly::from(&sf.a),
        });
    }
    if sf.a.is_zero() {
        let h = sf.b.antiderivative();
        return Some(DarbouxWitness {
            f: &BPoly::y() - &BPoly::from(&h),
            cofactor: BPoly::zero(),
        });
    }
    None
}

/// `y - r` with cofactor `a`, valid whenever `r' = a r + b`.
pub(crate) fn ode_witness(sf: &ShamsuddinForm, r: &UPoly) -> DarbouxWitness {
    DarbouxWitness {
        f: &BPoly::y() - &BPoly::from(r),
        cofactor: BPoly::from(&sf.a),
    }
}
