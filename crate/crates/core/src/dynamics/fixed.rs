//! Fixed points of polynomial maps: rational points plus a verdict on
//! existence over the algebraic closure.

use std::fmt;

use num_traits::Zero;

use super::{DynamicsError, PolyMap};
use crate::polyring::{rational_roots, resultant, BPoly, BigRat, UPoly, Var};

/// What can be certified about fixed points over the algebraic closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    ExistsOverClosure,
    NoneOverClosure,
    InfinitelyMany,
    /// A leading-coefficient degeneracy left the question open.
    Unknown,
}

impl fmt::Display for ClosureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureVerdict::ExistsOverClosure => "ExistsOverClosure",
            ClosureVerdict::NoneOverClosure => "NoneOverClosure",
            ClosureVerdict::InfinitelyMany => "InfinitelyMany",
            ClosureVerdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    /// Rational fixed points, sorted. Left empty when the fixed locus is a
    /// curve.
    pub rational_points: Vec<(BigRat, BigRat)>,
    pub closure_verdict: ClosureVerdict,
}

impl FixedPointReport {
    /// Re-evaluates the map at every listed point.
    pub fn verify(&self, rho: &PolyMap) -> bool {
        self.rational_points
            .iter()
            .all(|(x, y)| rho.eval(x, y) == (x.clone(), y.clone()))
    }
}

impl fmt::Display for FixedPointReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self
            .rational_points
            .iter()
            .map(|(x, y)| format!("({x}, {y})"))
            .collect();
        write!(
            f,
            "rational: [{}]; closure: {}",
            pts.join(", "),
            self.closure_verdict
        )
    }
}

/// Solves `f - x = 0`, `g - y = 0`.
pub fn fixed_points(rho: &PolyMap) -> Result<FixedPointReport, DynamicsError> {
    if rho.is_identity() {
        return Err(DynamicsError::IdentityMap);
    }
    let p = &rho.f - &BPoly::x();
    let q = &rho.g - &BPoly::y();
    let report = |rational_points, closure_verdict| FixedPointReport {
        rational_points,
        closure_verdict,
    };

    // one equation vanishes identically or is a nonzero constant
    for (a, b) in [(&p, &q), (&q, &p)] {
        if a.as_constant().is_some_and(|c| !c.is_zero()) {
            return Ok(report(Vec::new(), ClosureVerdict::NoneOverClosure));
        }
        if a.is_zero() {
            // b is nonzero here since rho is not the identity
            let verdict = if b.is_constant() {
                ClosureVerdict::NoneOverClosure
            } else {
                ClosureVerdict::InfinitelyMany
            };
            return Ok(report(Vec::new(), verdict));
        }
    }

    // a common factor of positive degree in some variable zeroes that resultant
    for var in [Var::Y, Var::X] {
        if p.degree_in(var) > Some(0) && q.degree_in(var) > Some(0) {
            let r = resultant(&p, &q, var).expect("both inputs have positive degree");
            if r.is_zero() {
                return Ok(report(Vec::new(), ClosureVerdict::InfinitelyMany));
            }
        }
    }

    if p.is_free_of(Var::Y) && q.is_free_of(Var::Y) {
        // both in k[x] and coprime: no common root
        return Ok(report(Vec::new(), ClosureVerdict::NoneOverClosure));
    }
    let r_x = resultant(&p, &q, Var::Y).expect("one input involves y");
    let points = rational_points(&p, &q, &r_x);
    let verdict = closure_verdict(&p, &q, &r_x, Var::Y)
        .or_else(|| {
            if p.is_free_of(Var::X) && q.is_free_of(Var::X) {
                return None;
            }
            let r_y = resultant(&p, &q, Var::X).ok()?;
            closure_verdict(&p, &q, &r_y, Var::X)
        })
        .unwrap_or(ClosureVerdict::Unknown);
    Ok(report(points, verdict))
}

/// Verdict from `res = Res_var(p, q)`, or `None` if degeneracy blocks it.
fn closure_verdict(p: &BPoly, q: &BPoly, res: &UPoly, var: Var) -> Option<ClosureVerdict> {
    if res.is_constant() {
        return Some(ClosureVerdict::NoneOverClosure);
    }
    // Roots of res where the two leading coefficients do not both vanish
    // extend to common solutions.
    let common_lc = p.leading_coeff_in(var).gcd(&q.leading_coeff_in(var));
    let mut rest = res.clone();
    loop {
        let g = rest.gcd(&common_lc);
        if g.is_constant() {
            break;
        }
        rest = rest.exact_div(&g).expect("gcd divides");
    }
    (!rest.is_constant()).then_some(ClosureVerdict::ExistsOverClosure)
}

fn rational_points(p: &BPoly, q: &BPoly, r_x: &UPoly) -> Vec<(BigRat, BigRat)> {
    let Ok(xs) = rational_roots(r_x) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for x0 in xs {
        let py = p.specialize(Var::X, &x0);
        let qy = q.specialize(Var::X, &x0);
        let common = py.gcd(&qy);
        if common.is_zero() || common.is_constant() {
            continue;
        }
        for y0 in rational_roots(&common).unwrap_or_default() {
            if p.eval(&x0, &y0).is_zero() && q.eval(&x0, &y0).is_zero() {
                out.push((x0.clone(), y0));
            }
        }
    }
    out.sort();
    out
}
