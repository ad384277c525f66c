//! Simplicity of Shamsuddin derivations.
//!
//! `d/dx + (a y + b) d/dy` is simple exactly when `r' = a r + b` has no
//! polynomial solution `r` in `k[x]`. When a solution exists, `(y - r)` is a
//! proper invariant ideal and serves as the witness.

use std::fmt;

use num_traits::Zero;

use crate::derivation::{ode_witness, DarbouxWitness, ShamsuddinForm};
use crate::polyring::{linalg, BigRat, UPoly};

/// Outcome of solving `r' = a r + b` over `k[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OdeVerdict {
    Solution(UPoly),
    NoSolution,
}

impl OdeVerdict {
    pub fn solution(&self) -> Option<&UPoly> {
        match self {
            OdeVerdict::Solution(r) => Some(r),
            OdeVerdict::NoSolution => None,
        }
    }

    pub fn is_solution(&self) -> bool {
        self.solution().is_some()
    }

    /// For a `Solution`, recomputes `r' - a r - b`. `NoSolution` has nothing
    /// to substitute and always passes.
    pub fn verify(&self, a: &UPoly, b: &UPoly) -> bool {
        match self {
            OdeVerdict::Solution(r) => residual(a, b, r).is_zero(),
            OdeVerdict::NoSolution => true,
        }
    }
}

impl fmt::Display for OdeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeVerdict::Solution(r) => write!(f, "solution r={r}"),
            OdeVerdict::NoSolution => f.write_str("no polynomial solution"),
        }
    }
}

/// `r' - a r - b`.
pub fn residual(a: &UPoly, b: &UPoly, r: &UPoly) -> UPoly {
    &(&r.derivative() - &(a * r)) - b
}

/// Finds the polynomial solutions of `r' = a r + b`.
///
/// With `a = 0` the antiderivative of `b` (zero constant term) is returned.
/// With `a != 0` a solution is unique: a nonzero solution `r` has
/// `deg r' < deg(a r)`, so the leading term of `a r` must cancel against `b`
/// and `deg r = deg b - deg a`. The coefficients are then forced one at a
/// time from the top degree down.
pub fn solve_linear_ode(a: &UPoly, b: &UPoly) -> OdeVerdict {
    let Some(da) = a.degree() else {
        return OdeVerdict::Solution(b.antiderivative());
    };
    let Some(db) = b.degree() else {
        return OdeVerdict::Solution(UPoly::zero());
    };
    if db < da {
        return OdeVerdict::NoSolution;
    }
    let n = db - da;
    let lc = a.leading_coeff().expect("nonzero").clone();
    let mut r = vec![BigRat::zero(); n + 1];
    let coeff = |r: &[BigRat], j: usize| r.get(j).cloned().unwrap_or_else(BigRat::zero);
    for k in (0..=n).rev() {
        // coefficient of x^m in r' - a r - b, with m = k + deg a
        let m = k + da;
        let mut acc = BigRat::from_integer((m + 1).into()) * coeff(&r, m + 1) - b.coeff(m);
        for i in 0..da {
            acc -= a.coeff(i) * coeff(&r, m - i);
        }
        r[k] = acc / &lc;
    }
    let r = UPoly::from_coeffs(r);
    if residual(a, b, &r).is_zero() {
        OdeVerdict::Solution(r)
    } else {
        OdeVerdict::NoSolution
    }
}

/// Independent check for [`solve_linear_ode`]: for every candidate degree
/// `0..=max_deg`, sets up all coefficient equations of `r' - a r - b = 0` as a
/// dense system and solves it by Gauss-Jordan elimination.
pub fn ode_brute_oracle(a: &UPoly, b: &UPoly, max_deg: usize) -> OdeVerdict {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    for n in 0..=max_deg {
        let top = (n + da).max(db).max(n);
        let mut rows = Vec::with_capacity(top + 1);
        let mut rhs = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let row: Vec<BigRat> = (0..=n)
                .map(|j| {
                    let mut c = BigRat::zero();
                    if j == m + 1 {
                        c += BigRat::from_integer(j.into());
                    }
                    if j <= m {
                        c -= a.coeff(m - j);
                    }
                    c
                })
                .collect();
            rows.push(row);
            rhs.push(b.coeff(m));
        }
        if let Some(sol) = linalg::solve(rows, rhs) {
            return OdeVerdict::Solution(UPoly::from_coeffs(sol));
        }
    }
    OdeVerdict::NoSolution
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    NotSimple(DarbouxWitness),
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::Simple)
    }

    pub fn witness(&self) -> Option<&DarbouxWitness> {
        match self {
            SimplicityVerdict::Simple => None,
            SimplicityVerdict::NotSimple(w) => Some(w),
        }
    }
}

impl fmt::Display for SimplicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicityVerdict::Simple => f.write_str("Simple"),
            SimplicityVerdict::NotSimple(w) => write!(f, "NotSimple ({w})"),
        }
    }
}

/// Decides simplicity; a `NotSimple` verdict carries `y - r` with cofactor
/// `a`, since `D(y - r) = a y + b - (a r + b) = a (y - r)`.
pub fn shamsuddin_is_simple(sf: &ShamsuddinForm) -> SimplicityVerdict {
    match solve_linear_ode(&sf.a, &sf.b) {
        OdeVerdict::NoSolution => SimplicityVerdict::Simple,
        OdeVerdict::Solution(r) => SimplicityVerdict::NotSimple(ode_witness(sf, &r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::polyring::BPoly;

    fn u(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    #[test]
    fn ode_examples() {
        assert_eq!(
            solve_linear_ode(&u(&[0, 1]), &u(&[1])),
            OdeVerdict::NoSolution
        );
        assert_eq!(
            solve_linear_ode(&u(&[]), &u(&[0, 0, 3])),
            OdeVerdict::Solution(u(&[0, 0, 0, 1]))
        );
        // oracle: r = -x - 1 gives r' = -1 and 2(-x - 1) + 2x + 1 = -1
        let r = u(&[-1, -1]);
        assert!(residual(&u(&[2]), &u(&[1, 2]), &r).is_zero());
        assert_eq!(
            solve_linear_ode(&u(&[2]), &u(&[1, 2])),
            OdeVerdict::Solution(r)
        );
        assert_eq!(
            solve_linear_ode(&u(&[1]), &u(&[])),
            OdeVerdict::Solution(UPoly::zero())
        );
    }

    #[test]
    fn brute_oracle_examples() {
        assert_eq!(
            ode_brute_oracle(&u(&[0, 1]), &u(&[1]), 10),
            OdeVerdict::NoSolution
        );
        assert_eq!(
            ode_brute_oracle(&u(&[2]), &u(&[1, 2]), 5),
            OdeVerdict::Solution(u(&[-1, -1]))
        );
        assert_eq!(
            ode_brute_oracle(&u(&[]), &u(&[]), 0),
            OdeVerdict::Solution(UPoly::zero())
        );
    }

    #[test]
    fn degree_gate_and_late_inconsistency() {
        // deg b >= deg a but the low-order equations fail: a = x, b = x^2
        // forces r = -x, then r' - a r - b = -1 != 0
        assert_eq!(
            solve_linear_ode(&u(&[0, 1]), &u(&[0, 0, 1])),
            OdeVerdict::NoSolution
        );
        assert_eq!(
            ode_brute_oracle(&u(&[0, 1]), &u(&[0, 0, 1]), 3),
            OdeVerdict::NoSolution
        );
        // a = x, b = x^2 - 1 has r = -x
        assert_eq!(
            solve_linear_ode(&u(&[0, 1]), &u(&[-1, 0, 1])),
            OdeVerdict::Solution(u(&[0, -1]))
        );
    }

    #[test]
    fn simplicity_examples() {
        assert!(shamsuddin_is_simple(&ShamsuddinForm::from_i64(&[0, 1], &[1])).is_simple());

        let sf = ShamsuddinForm::from_i64(&[0, 1], &[]);
        let v = shamsuddin_is_simple(&sf);
        let w = v.witness().unwrap();
        assert_eq!((w.f(), w.cofactor()), (&BPoly::y(), &BPoly::x()));

        // r = -1 solves r' = r + 1
        let sf = ShamsuddinForm::from_i64(&[1], &[1]);
        let w = shamsuddin_is_simple(&sf).witness().cloned().unwrap();
        assert_eq!(w.f(), &parse_poly("y + 1").unwrap());
        assert_eq!(w.cofactor(), &BPoly::one());
        assert!(w.verify(&sf.to_derivation()));

        // oracle: r = p + q x, r' = q = 5(p + q x) + x gives q = -1/5, p = -1/25
        let sf = ShamsuddinForm::from_i64(&[5], &[0, 1]);
        let v = shamsuddin_is_simple(&sf);
        let w = v.witness().unwrap();
        assert_eq!(w.f(), &parse_poly("y + 1/5*x + 1/25").unwrap());
        assert!(w.verify(&sf.to_derivation()));
    }

    #[test]
    fn degenerate_forms_are_never_simple() {
        for (a, b) in [
            (&[0, 1][..], &[][..]),
            (&[], &[0, 0, 3]),
            (&[], &[]),
            (&[7], &[1, 2, 3]),
        ] {
            let sf = ShamsuddinForm::from_i64(a, b);
            let v = shamsuddin_is_simple(&sf);
            assert!(!v.is_simple(), "{sf}");
            assert!(v.witness().unwrap().verify(&sf.to_derivation()));
        }
    }
}
