//! Automorphisms commuting with a derivation.
//!
//! [`shamsuddin_isotropy`] replays the argument that a simple Shamsuddin
//! derivation commutes only with the identity, re-checking every polynomial
//! identity and ODE outcome it relies on for the concrete `(a, b)`.
//! [`brute_force_isotropy`] is an independent exhaustive search over a finite
//! box of candidate maps, usable for any derivation.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::derivation::{DarbouxWitness, Derivation, ShamsuddinForm};
use crate::dynamics::PolyMap;
use crate::polyring::{int, rat, BPoly, BigRat, Monomial, UPoly, Var};
use crate::simplicity::{shamsuddin_is_simple, solve_linear_ode, OdeVerdict, SimplicityVerdict};

pub const DEFAULT_DEG_BOUND: u32 = 2;
pub const DEFAULT_PAIR_BUDGET: usize = 10_000_000;

/// Largest `s` for which the `y^s` coefficient argument in step S1 is
/// re-checked.
pub const S1_Y_DEGREE_BOUND: u32 = 8;

pub fn default_grid() -> Vec<BigRat> {
    vec![int(-1), int(0), int(1)]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsotropyError {
    #[error("derivation not simple: invariant ideal ({})", .0.f())]
    NotSimple(DarbouxWitness),
    #[error("certificate step {step} failed: {label}")]
    StepFailed { step: StepId, label: String },
    #[error("search box too large: {candidates} candidates exceed the budget of {budget}")]
    SearchBoxTooLarge { candidates: usize, budget: usize },
    #[error("invalid search box: {0}")]
    InvalidBox(&'static str),
}

/// True iff `rho(D(x)) = D(rho(x))` and `rho(D(y)) = D(rho(y))`, which
/// means `rho D = D rho` on all of `k[x, y]`.
pub fn commutes(d: &Derivation, rho: &PolyMap) -> bool {
    rho.apply(&d.dx) == d.apply(&rho.f) && rho.apply(&d.dy) == d.apply(&rho.g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepId {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for StepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One checkable fact inside a certificate step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    /// `lhs = rhs` as polynomials.
    Identity {
        label: String,
        lhs: BPoly,
        rhs: BPoly,
    },
    /// `solve_linear_ode(a, b)` returns `expected`.
    Ode {
        label: String,
        a: UPoly,
        b: UPoly,
        expected: OdeVerdict,
    },
    /// `deg a >= 1`.
    Nonconstant { label: String, a: UPoly },
}

impl Fact {
    pub fn label(&self) -> &str {
        match self {
            Fact::Identity { label, .. }
            | Fact::Ode { label, .. }
            | Fact::Nonconstant { label, .. } => label,
        }
    }

    /// Recomputes the fact.
    pub fn holds(&self) -> bool {
        match self {
            Fact::Identity { lhs, rhs, .. } => lhs == rhs,
            Fact::Ode { a, b, expected, .. } => {
                let got = solve_linear_ode(a, b);
                &got == expected && got.verify(a, b)
            }
            Fact::Nonconstant { a, .. } => a.degree().is_some_and(|d| d >= 1),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Identity { label, lhs, rhs } => write!(f, "{label}: {lhs} = {rhs}"),
            Fact::Ode {
                label,
                a,
                b,
                expected,
            } => {
                write!(f, "{label}: r' = ({a})*r + ({b}) -> {expected}")
            }
            Fact::Nonconstant { label, a } => write!(f, "{label}: deg({a}) >= 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertStep {
    pub id: StepId,
    pub claim: String,
    pub facts: Vec<Fact>,
}

impl CertStep {
    pub fn holds(&self) -> bool {
        self.facts.iter().all(Fact::holds)
    }
}

/// Machine-checked replay of the triviality argument for one simple
/// Shamsuddin derivation. Only built when every fact holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyCertificate {
    pub form: ShamsuddinForm,
    pub steps: Vec<CertStep>,
}

impl IsotropyCertificate {
    /// The isotropy group is `{identity}`.
    pub fn conclusion(&self) -> &'static str {
        "trivial"
    }

    pub fn is_complete(&self) -> bool {
        let ids: Vec<StepId> = self.steps.iter().map(|s| s.id).collect();
        ids == [StepId::S1, StepId::S2, StepId::S3, StepId::S4]
    }

    /// Rebuilds the certificate from the form and checks it matches and
    /// every fact holds.
    pub fn verify(&self) -> bool {
        self.is_complete()
            && self.steps.iter().all(CertStep::holds)
            && build_steps(&self.form).as_ref() == Ok(&self.steps)
    }
}

impl fmt::Display for IsotropyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "isotropy certificate for {}", self.form)?;
        for step in &self.steps {
            writeln!(f, "{}: {}", step.id, step.claim)?;
            for fact in &step.facts {
                writeln!(
                    f,
                    "  [{}] {fact}",
                    if fact.holds() { "ok" } else { "FAILED" }
                )?;
            }
        }
        write!(f, "conclusion: {}", self.conclusion())
    }
}

/// Certifies that only the identity commutes with a simple Shamsuddin
/// derivation. Fails with the invariant-ideal witness if the derivation is
/// not simple.
pub fn shamsuddin_isotropy(sf: &ShamsuddinForm) -> Result<IsotropyCertificate, IsotropyError> {
    if let SimplicityVerdict::NotSimple(w) = shamsuddin_is_simple(sf) {
        return Err(IsotropyError::NotSimple(w));
    }
    let steps = build_steps(sf)?;
    Ok(IsotropyCertificate {
        form: sf.clone(),
        steps,
    })
}

fn check(step: CertStep) -> Result<CertStep, IsotropyError> {
    match step.facts.iter().find(|f| !f.holds()) {
        Some(f) => Err(IsotropyError::StepFailed {
            step: step.id,
            label: f.label().to_string(),
        }),
        None => Ok(step),
    }
}

fn build_steps(sf: &ShamsuddinForm) -> Result<Vec<CertStep>, IsotropyError> {
    let d = sf.to_derivation();
    let a = &sf.a;
    let b = &sf.b;
    let a_xy = BPoly::from(a);
    let b_xy = BPoly::from(b);
    let y = BPoly::y();

    // S1: rho(x) = f with D(f) = 1. Writing f = sum a_s(x) y^s, the y^s
    // coefficient gives a_s' = -s a a_s, whose only polynomial solution is 0
    // since a != 0; then a_0' = 1.
    let mut s1 = vec![Fact::Identity {
        label: "D(x) = 1".into(),
        lhs: d.apply(&BPoly::x()),
        rhs: BPoly::one(),
    }];
    for s in 1..=S1_Y_DEGREE_BOUND {
        let ys = y.pow(s);
        s1.push(Fact::Identity {
            label: format!("[y^{s}] D(y^{s}) = {s}*a"),
            lhs: BPoly::from(&d.apply(&ys).coeffs_in(Var::Y)[s as usize]),
            rhs: a_xy.scale(&int(s.into())),
        });
        s1.push(Fact::Ode {
            label: format!("a_{s}' = -{s}*a*a_{s} forces a_{s} = 0"),
            a: a.scale(&int(-i64::from(s))),
            b: UPoly::zero(),
            expected: OdeVerdict::Solution(UPoly::zero()),
        });
    }
    s1.push(Fact::Ode {
        label: "a_0' = 1 gives a_0 = x + c".into(),
        a: UPoly::zero(),
        b: UPoly::one(),
        expected: OdeVerdict::Solution(UPoly::x()),
    });
    let s1 = check(CertStep {
        id: StepId::S1,
        claim: "every commuting rho has rho(x) = x + c for a constant c".into(),
        facts: s1,
    })?;

    // S2: rho(y) = g of y-degree t >= 1; the y^t coefficient gives
    // b_t' = b_t (a(x+c) - t a(x)), so a(x+c) = t a(x). Leading
    // coefficients give t = 1; the x^(n-1) coefficient gives n lc(a) c = 0.
    // The symbol c is carried in the y slot.
    let mut s2 = vec![Fact::Nonconstant {
        label: "a is nonconstant".into(),
        a: a.clone(),
    }];
    let n = a.degree().unwrap_or(0);
    let lc = a.leading_coeff().cloned().unwrap_or_else(BigRat::zero);
    let shifted = a_xy.substitute(&(&BPoly::x() + &y), &y);
    let shifted_in_x = shifted.coeffs_in(Var::X);
    s2.push(Fact::Identity {
        label: "lc_x(a(x+c)) = lc(a), so t = 1".into(),
        lhs: BPoly::from_upoly(shifted_in_x.last().unwrap_or(&UPoly::zero()), Var::Y),
        rhs: BPoly::constant(lc.clone()),
    });
    if n >= 1 {
        let diff = &shifted - &a_xy;
        let sub = diff
            .coeffs_in(Var::X)
            .get(n - 1)
            .cloned()
            .unwrap_or_default();
        s2.push(Fact::Identity {
            label: format!("[x^{}] (a(x+c) - a(x)) = {n}*lc(a)*c, so c = 0", n - 1),
            lhs: BPoly::from_upoly(&sub, Var::Y),
            rhs: y.scale(&(&lc * int(n as i64))),
        });
    }
    s2.push(Fact::Ode {
        label: "with c = 0, t = 1: b_1' = 0 gives b_1 constant".into(),
        a: UPoly::zero(),
        b: UPoly::zero(),
        expected: OdeVerdict::Solution(UPoly::zero()),
    });
    let s2 = check(CertStep {
        id: StepId::S2,
        claim: "rho(y) has y-degree 1 with constant leading coefficient b_1, and c = 0".into(),
        facts: s2,
    })?;

    // S3: with g = b_0(x) + b_1 y, D(g) - (a g + b) has no y term and its
    // y-free part is b_0' - a b_0 - b (1 - b_1). The defect is affine in
    // (b_0, b_1) and linear in the coefficients of b_0, so it is checked on
    // a spanning set of samples.
    let mut s3 = vec![Fact::Identity {
        label: "D(y) = a*y + b".into(),
        lhs: d.apply(&y),
        rhs: &(&a_xy * &y) + &b_xy,
    }];
    let samples: Vec<(UPoly, BigRat)> = vec![
        (UPoly::zero(), int(0)),
        (UPoly::zero(), int(1)),
        (UPoly::one(), int(0)),
        (UPoly::x(), int(0)),
        (UPoly::monomial(int(1), 2), int(0)),
    ];
    for (b0, b1) in samples {
        let g = &BPoly::from(&b0) + &y.scale(&b1);
        let lhs = &d.apply(&g) - &(&(&a_xy * &g) + &b_xy);
        let rhs = &(&BPoly::from(&b0.derivative()) - &(&a_xy * &BPoly::from(&b0)))
            - &b_xy.scale(&(int(1) - &b1));
        s3.push(Fact::Identity {
            label: format!("defect at b_0 = {b0}, b_1 = {b1}"),
            lhs,
            rhs,
        });
    }
    let s3 = check(CertStep {
        id: StepId::S3,
        claim: "rho(y) = b_0(x) + b_1*y with D(b_0) = b_0*a + b*(1 - b_1)".into(),
        facts: s3,
    })?;

    // S4: for b_1 != 1, b_0 / (1 - b_1) would solve r' = a r + b, which has
    // no solution; hence b_1 = 1 and b_0' = a b_0 forces b_0 = 0.
    let mut s4 = vec![Fact::Ode {
        label: "r' = a*r + b has no polynomial solution".into(),
        a: a.clone(),
        b: b.clone(),
        expected: OdeVerdict::NoSolution,
    }];
    for lambda in [int(-1), int(2), rat(1, 2)] {
        s4.push(Fact::Ode {
            label: format!("scaling: r' = a*r + ({lambda})*b has none either"),
            a: a.clone(),
            b: b.scale(&lambda),
            expected: OdeVerdict::NoSolution,
        });
    }
    s4.push(Fact::Ode {
        label: "b_1 = 1: b_0' = a*b_0 forces b_0 = 0".into(),
        a: a.clone(),
        b: UPoly::zero(),
        expected: OdeVerdict::Solution(UPoly::zero()),
    });
    s4.push(Fact::Identity {
        label: "rho = (x, y) commutes with D".into(),
        lhs: BPoly::constant(int(i64::from(commutes(&d, &PolyMap::identity())))),
        rhs: BPoly::one(),
    });
    let s4 = check(CertStep {
        id: StepId::S4,
        claim: "b_1 = 1 and b_0 = 0, so rho is the identity".into(),
        facts: s4,
    })?;

    Ok(vec![s1, s2, s3, s4])
}

/// Maps found by [`brute_force_isotropy`], sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyEnumeration {
    pub found: Vec<PolyMap>,
    /// Number of `(f, g)` pairs tested after single-component filtering.
    pub pairs_examined: usize,
}

impl IsotropyEnumeration {
    /// Every listed map commutes with `d` and has a nonzero constant
    /// Jacobian determinant.
    pub fn verify(&self, d: &Derivation) -> bool {
        self.found
            .iter()
            .all(|m| commutes(d, m) && constant_nonzero(&m.jacobian()))
    }

    pub fn is_only_identity(&self) -> bool {
        self.found.len() == 1 && self.found[0].is_identity()
    }
}

fn constant_nonzero(p: &BPoly) -> bool {
    p.as_constant().is_some_and(|c| !c.is_zero())
}

/// All polynomials with support of total degree `<= deg_bound` and
/// coefficients drawn from `grid`.
fn box_polys(deg_bound: u32, grid: &[BigRat]) -> Vec<BPoly> {
    let monomials: Vec<Monomial> = (0..=deg_bound)
        .flat_map(|d| (0..=d).map(move |i| Monomial::new(i, d - i)))
        .collect();
    let mut out = vec![BPoly::zero()];
    for m in monomials {
        out = out
            .iter()
            .flat_map(|p| grid.iter().map(move |c| p + &BPoly::term(c.clone(), m)))
            .collect();
    }
    out
}

/// Exhaustive search for commuting automorphism candidates: every `(f, g)`
/// with both components supported in total degree `<= deg_bound` and
/// coefficients in `grid`, kept when the Jacobian determinant is a nonzero
/// constant and [`commutes`] holds.
///
/// When `D(x)` involves only `x`, the first commutation condition only
/// involves `f` and filters the `f` candidates before pairing; likewise for
/// `D(y)` involving only `y` and `g`. `pair_budget` caps both the size of
/// each component list and the number of pairs tested.
pub fn brute_force_isotropy(
    d: &Derivation,
    deg_bound: u32,
    grid: &[BigRat],
    pair_budget: usize,
) -> Result<IsotropyEnumeration, IsotropyError> {
    if deg_bound < 1 {
        return Err(IsotropyError::InvalidBox("deg_bound must be at least 1"));
    }
    if grid.is_empty() {
        return Err(IsotropyError::InvalidBox("grid must be nonempty"));
    }
    let grid: Vec<BigRat> = grid
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n_monomials = (deg_bound + 1) * (deg_bound + 2) / 2;
    let per_component = (grid.len() as u128).saturating_pow(n_monomials);
    if per_component > pair_budget as u128 {
        return Err(IsotropyError::SearchBoxTooLarge {
            candidates: usize::try_from(per_component).unwrap_or(usize::MAX),
            budget: pair_budget,
        });
    }
    // constant components give a zero Jacobian
    let candidates: Vec<BPoly> = box_polys(deg_bound, &grid)
        .into_iter()
        .filter(|p| !p.is_constant())
        .collect();

    let f_decoupled = d.dx.is_free_of(Var::Y);
    let g_decoupled = d.dy.is_free_of(Var::X);
    let with_image = |p: &BPoly| (p.clone(), d.apply(p));
    let fs: Vec<(BPoly, BPoly)> = candidates
        .par_iter()
        .map(with_image)
        .filter(|(f, df)| !f_decoupled || d.dx.substitute(f, &BPoly::zero()) == *df)
        .collect();
    let gs: Vec<(BPoly, BPoly)> = candidates
        .par_iter()
        .map(with_image)
        .filter(|(g, dg)| !g_decoupled || d.dy.substitute(&BPoly::zero(), g) == *dg)
        .collect();

    let pairs = fs.len().saturating_mul(gs.len());
    if pairs > pair_budget {
        return Err(IsotropyError::SearchBoxTooLarge {
            candidates: pairs,
            budget: pair_budget,
        });
    }

    let mut found: Vec<PolyMap> = fs
        .par_iter()
        .flat_map_iter(|(f, df)| {
            gs.iter().filter_map(move |(g, dg)| {
                if !constant_nonzero(&BPoly::jacobian(f, g)) {
                    return None;
                }
                if !f_decoupled && d.dx.substitute(f, g) != *df {
                    return None;
                }
                if !g_decoupled && d.dy.substitute(f, g) != *dg {
                    return None;
                }
                Some(PolyMap::new(f.clone(), g.clone()))
            })
        })
        .collect();
    found.sort();
    Ok(IsotropyEnumeration {
        found,
        pairs_examined: pairs,
    })
}
