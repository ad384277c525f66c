//! Sylvester resultants by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{BPoly, BigRat, PolyError, UPoly, Var};

/// Resultant of `p` and `q` with respect to `eliminate`, as a polynomial in
/// the surviving variable (returned as a [`UPoly`] whose indeterminate stands
/// for that variable).
///
/// This is the determinant of the Sylvester matrix with the rows of `p`
/// first, so `res(p, q) = lc(p)^deg(q) * prod q(alpha)` over the roots of `p`.
pub fn resultant(p: &BPoly, q: &BPoly, eliminate: Var) -> Result<UPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroResultantInput);
    }
    let pc = p.coeffs_in(eliminate);
    let qc = q.coeffs_in(eliminate);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 && n == 0 {
        return Err(PolyError::NoEliminationVariable(eliminate));
    }
    let (pc, p_scale) = clear(&pc);
    let (qc, q_scale) = clear(&qc);

    let size = m + n;
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    let det = bareiss_det(mat);
    // res(s*p, t*q) = s^n t^m res(p, q)
    let scale = num_traits::pow(p_scale, n) * num_traits::pow(q_scale, m);
    Ok(det.scale(&scale.recip()))
}

/// Scales a coefficient list to integer coefficients by one common factor.
fn clear(coeffs: &[UPoly]) -> (Vec<UPoly>, BigRat) {
    let lcm = coeffs
        .iter()
        .flat_map(|u| u.coeffs().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let f = BigRat::from_integer(lcm);
    (coeffs.iter().map(|u| u.scale(&f)).collect(), f)
}

fn bareiss_det(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UPoly::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}
