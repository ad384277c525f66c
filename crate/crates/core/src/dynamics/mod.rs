//! Polynomial endomorphisms of `k[x, y]`: composition, automorphism checks,
//! degree growth under iteration, fixed points and finite order.

mod degree;
mod fixed;
mod modp;

pub use degree::{degree_sequence, degree_sequence_with_budget, DegreeEvidence, DynDegreeEstimate};
pub use fixed::{fixed_points, ClosureVerdict, FixedPointReport};

use std::fmt;

use num_traits::Zero;

use crate::polyring::{BPoly, BigRat, Monomial, Var};

/// Largest number of stored terms (both components) an exact iterate may
/// reach before iteration gives up.
pub const TERM_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("iteration blow-up: term budget exceeded after n={last_completed}")]
    IterationBlowUp { last_completed: usize },
    #[error("identity map: every point fixed")]
    IdentityMap,
    #[error("n_max must be at least 1")]
    ZeroIterations,
}

/// The ring endomorphism `x -> f`, `y -> g`.
///
/// The derived ordering compares `f` first, then `g`, each by its
/// graded-lex term sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyMap {
    pub f: BPoly,
    pub g: BPoly,
}

impl PolyMap {
    pub fn new(f: BPoly, g: BPoly) -> Self {
        PolyMap { f, g }
    }

    pub fn identity() -> Self {
        PolyMap::new(BPoly::x(), BPoly::y())
    }

    pub fn is_identity(&self) -> bool {
        self.f == BPoly::x() && self.g == BPoly::y()
    }

    pub fn component(&self, var: Var) -> &BPoly {
        match var {
            Var::X => &self.f,
            Var::Y => &self.g,
        }
    }

    /// `max(deg f, deg g)`; `None` only for the zero map.
    pub fn degree(&self) -> Option<u32> {
        self.f.degree().max(self.g.degree())
    }

    pub fn num_terms(&self) -> usize {
        self.f.num_terms() + self.g.num_terms()
    }

    /// Image of a polynomial: `p(f, g)`.
    pub fn apply(&self, p: &BPoly) -> BPoly {
        p.substitute(&self.f, &self.g)
    }

    /// `(f(x0, y0), g(x0, y0))`.
    pub fn eval(&self, x: &BigRat, y: &BigRat) -> (BigRat, BigRat) {
        (self.f.eval(x, y), self.g.eval(x, y))
    }

    pub fn jacobian(&self) -> BPoly {
        BPoly::jacobian(&self.f, &self.g)
    }

    /// `self ∘ other`: the map with components `self.f(other.f, other.g)`
    /// and `self.g(other.f, other.g)`.
    pub fn compose(&self, other: &PolyMap) -> PolyMap {
        PolyMap::new(other.apply(&self.f), other.apply(&self.g))
    }

    /// `self` composed with itself `n` times (`n = 0` gives the identity).
    pub fn iterate(&self, n: usize) -> PolyMap {
        (0..n).fold(PolyMap::identity(), |acc, _| self.compose(&acc))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// `compose(rho, sigma)`.
pub fn compose(rho: &PolyMap, sigma: &PolyMap) -> PolyMap {
    rho.compose(sigma)
}

/// A map whose Jacobian determinant is the nonzero constant `jacobian_det`.
///
/// A constant Jacobian is only a necessary condition for invertibility.
/// `inverse` is filled in when an explicit two-sided inverse was built and
/// checked; otherwise the certificate is necessary-condition-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCert {
    pub map: PolyMap,
    pub jacobian_det: BigRat,
    pub inverse: Option<PolyMap>,
}

impl AutomorphismCert {
    pub fn necessary_condition_only(&self) -> bool {
        self.inverse.is_none()
    }

    pub fn verify(&self) -> bool {
        let det_ok = !self.jacobian_det.is_zero()
            && self.map.jacobian() == BPoly::constant(self.jacobian_det.clone());
        let inv_ok = self.inverse.as_ref().is_none_or(|inv| {
            self.map.compose(inv).is_identity() && inv.compose(&self.map).is_identity()
        });
        det_ok && inv_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an automorphism: Jacobian determinant {determinant} is not a nonzero constant")]
pub struct JacobianRejection {
    pub determinant: BPoly,
}

/// Accepts maps with a nonzero constant Jacobian determinant and tries to
/// build an inverse by reducing the map to an affine one with elementary
/// triangular steps.
pub fn validate_automorphism(rho: &PolyMap) -> Result<AutomorphismCert, JacobianRejection> {
    let det = rho.jacobian();
    match det.as_constant() {
        Some(c) if !c.is_zero() => Ok(AutomorphismCert {
            map: rho.clone(),
            jacobian_det: c,
            inverse: tame_inverse(rho),
        }),
        _ => Err(JacobianRejection { determinant: det }),
    }
}

/// Highest-degree homogeneous part.
fn top_form(p: &BPoly) -> BPoly {
    let Some(d) = p.degree() else {
        return BPoly::zero();
    };
    BPoly::from_terms(
        p.terms()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.x, m.y, c.clone())),
    )
}

/// Left inverse of an affine map with invertible linear part.
fn affine_inverse(l: &PolyMap) -> Option<PolyMap> {
    if l.degree().unwrap_or(0) > 1 {
        return None;
    }
    let c = |p: &BPoly, x, y| p.coeff(Monomial::new(x, y));
    let (p, q, r) = (c(&l.f, 1, 0), c(&l.f, 0, 1), c(&l.f, 0, 0));
    let (s, t, u) = (c(&l.g, 1, 0), c(&l.g, 0, 1), c(&l.g, 0, 0));
    let det = &p * &t - &q * &s;
    if det.is_zero() {
        return None;
    }
    let row = |alpha: BigRat, beta: BigRat| {
        let gamma = -(&alpha * &r + &beta * &u);
        BPoly::from_terms([(1, 0, alpha), (0, 1, beta), (0, 0, gamma)])
    };
    Some(PolyMap::new(
        row(&t / &det, -&q / &det),
        row(-&s / &det, &p / &det),
    ))
}

/// Inverse by degree reduction: while the map is not affine, the top form of
/// the higher-degree component must be a scalar multiple of a power of the
/// other component's top form; subtracting that multiple is composition with
/// an elementary map `(x - c y^k, y)` or `(x, y - c x^k)`.
fn tame_inverse(rho: &PolyMap) -> Option<PolyMap> {
    let mut cur = rho.clone();
    // invariant: cur = steps ∘ rho
    let mut steps = PolyMap::identity();
    loop {
        let df = cur.f.degree()?;
        let dg = cur.g.degree()?;
        if df <= 1 && dg <= 1 {
            let sigma = affine_inverse(&cur)?.compose(&steps);
            let ok = sigma.compose(rho).is_identity() && rho.compose(&sigma).is_identity();
            return ok.then_some(sigma);
        }
        let reduce_f = df >= dg;
        let (hi, lo, dh, dl) = if reduce_f {
            (&cur.f, &cur.g, df, dg)
        } else {
            (&cur.g, &cur.f, dg, df)
        };
        if dl == 0 || dh % dl != 0 {
            return None;
        }
        let k = dh / dl;
        let lo_pow = top_form(lo).pow(k);
        let top = top_form(hi);
        let (_, lc_top) = top.leading_term()?;
        let (_, lc_pow) = lo_pow.leading_term()?;
        let scale = lc_top / lc_pow;
        if top != lo_pow.scale(&scale) {
            return None;
        }
        let elementary = if reduce_f {
            PolyMap::new(&BPoly::x() - &BPoly::y().pow(k).scale(&scale), BPoly::y())
        } else {
            PolyMap::new(BPoly::x(), &BPoly::y() - &BPoly::x().pow(k).scale(&scale))
        };
        cur = elementary.compose(&cur);
        steps = elementary.compose(&steps);
        if cur.num_terms() > TERM_BUDGET {
            return None;
        }
    }
}

/// Smallest `n <= n_max` with `rho^n = id`. Iteration also stops (with
/// `None`) if an iterate exceeds [`TERM_BUDGET`].
pub fn order_detect(rho: &PolyMap, n_max: usize) -> Option<usize> {
    let mut cur = rho.clone();
    for n in 1..=n_max {
        if cur.is_identity() {
            return Some(n);
        }
        if n == n_max {
            break;
        }
        cur = rho.compose(&cur);
        if cur.num_terms() > TERM_BUDGET {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_map;
    use crate::polyring::{int, rat};

    fn m(s: &str) -> PolyMap {
        parse_map(s).unwrap()
    }

    #[test]
    fn composition_examples() {
        let rho = m("(x+y^2, 3*y-1)");
        assert_eq!(rho.compose(&PolyMap::identity()), rho);
        assert_eq!(PolyMap::identity().compose(&rho), rho);
        assert_eq!(m("(x+1, y)").compose(&m("(x+1, y)")), m("(x+2, y)"));
        // oracle: direct substitution of (y, y^2+x) into itself
        let h = m("(y, y^2+x)");
        assert_eq!(h.compose(&h), m("(y^2+x, (y^2+x)^2+y)"));
        assert_eq!(h.iterate(2), h.compose(&h));
        assert_eq!(h.iterate(0), PolyMap::identity());
    }

    #[test]
    fn validation_examples() {
        let cert = validate_automorphism(&m("(x+y^2, y)")).unwrap();
        // oracle: det [[1, 2y], [0, 1]] = 1
        assert_eq!(cert.jacobian_det, int(1));
        assert_eq!(cert.inverse, Some(m("(x-y^2, y)")));
        assert!(cert.verify());

        let rej = validate_automorphism(&m("(x^2, y)")).unwrap_err();
        assert_eq!(rej.determinant, crate::expr::parse_poly("2*x").unwrap());

        let cert = validate_automorphism(&m("(x+1, 2*y)")).unwrap();
        assert_eq!(cert.jacobian_det, int(2));
        assert_eq!(cert.inverse, Some(m("(x-1, y/2)")));
        assert!(cert.verify());
    }

    #[test]
    fn inverse_of_tame_compositions() {
        let a = m("(x + y^3 - 2*y, y)");
        let b = m("(x, y + 1/2*x^2)");
        let l = m("(2*x + y + 1, x - y)");
        let rho = l.compose(&a.compose(&b));
        let cert = validate_automorphism(&rho).unwrap();
        let inv = cert.inverse.clone().expect("tame map is inverted");
        assert!(rho.compose(&inv).is_identity());
        assert!(cert.verify());
        assert_eq!(cert.jacobian_det, int(-3));

        // constant Jacobian but not recognized: left as necessary-condition-only
        let cert = validate_automorphism(&m("(x, y)")).unwrap();
        assert_eq!(cert.inverse, Some(PolyMap::identity()));
        assert!(validate_automorphism(&m("(x+y, x+y)")).is_err());
        assert!(!AutomorphismCert {
            map: m("(x, y)"),
            jacobian_det: rat(1, 2),
            inverse: None
        }
        .verify());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_detect(&m("(-x, -y)"), 10), Some(2));
        // oracle: (y,-x) -> (-x,-y) -> (-y,x) -> (x,y)
        let r = m("(y, -x)");
        assert_eq!(r.iterate(2), m("(-x, -y)"));
        assert_eq!(r.iterate(3), m("(-y, x)"));
        assert_eq!(order_detect(&r, 10), Some(4));
        assert_eq!(order_detect(&r, 3), None);
        assert_eq!(order_detect(&m("(x+1, y)"), 10), None);
        assert_eq!(order_detect(&PolyMap::identity(), 1), Some(1));
    }
}
