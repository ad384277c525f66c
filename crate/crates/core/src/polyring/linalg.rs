//! Dense exact linear algebra over the rationals.

use num_traits::Zero;

use super::BigRat;

/// Solves `rows * v = rhs` by Gauss-Jordan elimination. Free variables are
/// set to zero. Returns `None` when the system is inconsistent.
pub(crate) fn solve(mut rows: Vec<Vec<BigRat>>, rhs: Vec<BigRat>) -> Option<Vec<BigRat>> {
    let n_vars = rows.first().map_or(0, Vec::len);
    for (row, b) in rows.iter_mut().zip(rhs) {
        debug_assert_eq!(row.len(), n_vars);
        row.push(b);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_vars {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *v -= &factor * p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n_vars].is_zero()) {
        return None;
    }
    let mut out = vec![BigRat::zero(); n_vars];
    for (i, &col) in pivots.iter().enumerate() {
        out[col] = rows[i][n_vars].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int;

    #[test]
    fn unique_underdetermined_and_inconsistent() {
        // x + y = 3, x - y = 1
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(
            solve(rows, vec![int(3), int(1)]),
            Some(vec![int(2), int(1)])
        );
        // x + y = 3 alone: y free -> 0
        assert_eq!(
            solve(vec![vec![int(1), int(1)]], vec![int(3)]),
            Some(vec![int(3), int(0)])
        );
        // x = 1, x = 2
        let rows = vec![vec![int(1)], vec![int(1)]];
        assert_eq!(solve(rows, vec![int(1), int(2)]), None);
    }
}
