//! Degree sequences `deg(rho^n)` and the dynamical degree estimate.
//!
//! Each degree is established one of two ways. A lower bound comes from
//! restricting the iterate to generic lines and working mod a 61-bit prime
//! (a coefficient nonzero mod p is nonzero over the rationals). An upper bound
//! comes from the monomial supports of `rho` and the previous iterate's
//! degrees. When the bounds meet, the degree is exact. Otherwise the iterate
//! is computed exactly by repeated composition, subject to [`TERM_BUDGET`].

use std::fmt;

use super::modp::{ModBPoly, ModPoly};
use super::{DynamicsError, PolyMap, TERM_BUDGET};

/// Largest degree tracked along the test lines.
const LINE_DEGREE_CAP: u32 = 1 << 13;

/// Fixed line parameters `(a, b, c, d)` for `x = a t + b`, `y = c t + d`.
const LINES: [(u64, u64, u64, u64); 2] = [
    (
        0x2545_f491_4f6c_dd1d,
        0x9e37_79b9_7f4a_7c15,
        0x6a09_e667_f3bc_c909,
        0x3c6e_f372_fe94_f82b,
    ),
    (
        0x5851_f42d_4c95_7f2d,
        0x1405_7b7e_f767_814f,
        0xbb67_ae85_84ca_a73b,
        0x510e_527f_ade6_82d1,
    ),
];

/// How one entry of the degree sequence was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeEvidence {
    /// Line-restriction lower bound equals the support upper bound.
    MatchingBounds,
    /// The iterate was composed out exactly.
    ExactComposition,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynDegreeEstimate {
    /// `deg(rho^n)` for `n = 1..=n_max` (0 for a map with zero components).
    pub degree_sequence: Vec<u32>,
    /// `deg(rho^n)^(1/n)`.
    pub per_step_roots: Vec<f64>,
    /// The last `min(3, n_max)` degrees coincide, or the whole sequence
    /// repeats with a period that fits at least twice.
    pub bounded: bool,
    pub evidence: Vec<DegreeEvidence>,
}

impl DynDegreeEstimate {
    /// 1 when the sequence is bounded, otherwise the last per-step root.
    pub fn delta_estimate(&self) -> f64 {
        if self.bounded {
            1.0
        } else {
            self.per_step_roots.last().copied().unwrap_or(1.0)
        }
    }
}

impl fmt::Display for DynDegreeEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degree_sequence.iter().map(u32::to_string).collect();
        write!(
            f,
            "degrees [{}]; bounded={}; delta~{:.6}",
            degs.join(", "),
            self.bounded,
            self.delta_estimate()
        )
    }
}

fn support_bound(p: &crate::polyring::BPoly, prev: (Option<u32>, Option<u32>)) -> Option<u32> {
    p.terms()
        .filter_map(|(m, _)| {
            let dx = if m.x == 0 {
                Some(0)
            } else {
                prev.0.map(|d| d * m.x)
            };
            let dy = if m.y == 0 {
                Some(0)
            } else {
                prev.1.map(|d| d * m.y)
            };
            Some(dx? + dy?)
        })
        .max()
}

pub fn degree_sequence(rho: &PolyMap, n_max: usize) -> Result<DynDegreeEstimate, DynamicsError> {
    degree_sequence_with_budget(rho, n_max, TERM_BUDGET)
}

/// [`degree_sequence`] with an explicit cap on the terms of exact iterates.
pub fn degree_sequence_with_budget(
    rho: &PolyMap,
    n_max: usize,
    term_budget: usize,
) -> Result<DynDegreeEstimate, DynamicsError> {
    if n_max == 0 {
        return Err(DynamicsError::ZeroIterations);
    }
    let reduced = ModBPoly::reduce(&rho.f).zip(ModBPoly::reduce(&rho.g));
    let mut lines: Option<Vec<(ModPoly, ModPoly)>> = reduced.as_ref().map(|_| {
        LINES
            .iter()
            .map(|&(a, b, c, d)| (ModPoly::linear(b, a), ModPoly::linear(d, c)))
            .collect()
    });
    let mut exact = (0usize, PolyMap::identity());
    // exact component degrees of the previous iterate
    let mut prev = (Some(1u32), Some(1u32));

    let mut degree_sequence = Vec::with_capacity(n_max);
    let mut evidence = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let upper = (support_bound(&rho.f, prev), support_bound(&rho.g, prev));
        if upper.0.max(upper.1).unwrap_or(0) > LINE_DEGREE_CAP {
            lines = None;
        }
        let mut lower = None;
        if let (Some(ls), Some((mf, mg))) = (lines.as_mut(), reduced.as_ref()) {
            let mut lo = (None, None);
            for (u, v) in ls.iter_mut() {
                let nu = mf.eval(u, v);
                let nv = mg.eval(u, v);
                lo = (lo.0.max(nu.degree()), lo.1.max(nv.degree()));
                *u = nu;
                *v = nv;
            }
            lower = Some(lo);
        }
        let degs = if lower == Some(upper) {
            evidence.push(DegreeEvidence::MatchingBounds);
            upper
        } else {
            while exact.0 < n {
                let next = rho.compose(&exact.1);
                if next.num_terms() > term_budget {
                    return Err(DynamicsError::IterationBlowUp {
                        last_completed: n - 1,
                    });
                }
                exact = (exact.0 + 1, next);
            }
            evidence.push(DegreeEvidence::ExactComposition);
            (exact.1.f.degree(), exact.1.g.degree())
        };
        prev = degs;
        degree_sequence.push(degs.0.max(degs.1).unwrap_or(0));
    }

    let per_step_roots = degree_sequence
        .iter()
        .enumerate()
        .map(|(i, &d)| f64::from(d).powf(1.0 / (i + 1) as f64))
        .collect();
    let bounded = is_bounded(&degree_sequence);
    Ok(DynDegreeEstimate {
        degree_sequence,
        per_step_roots,
        bounded,
        evidence,
    })
}

fn is_bounded(seq: &[u32]) -> bool {
    let window = seq.len().min(3);
    let tail = &seq[seq.len() - window..];
    if tail.iter().all(|&d| d == tail[0]) {
        return true;
    }
    (1..=seq.len() / 2).any(|p| (p..seq.len()).all(|i| seq[i] == seq[i - p]))
}
