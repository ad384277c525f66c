//! Rational roots of univariate polynomials via the rational root theorem.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BigRat, PolyError, UPoly};

/// All distinct rational roots of `u`, in ascending order.
///
/// The polynomial is scaled to a primitive integer polynomial; every rational
/// root `p/q` in lowest terms then has `p | a_0` and `q | a_n`. Each
/// candidate is confirmed by exact evaluation.
pub fn rational_roots(u: &UPoly) -> Result<Vec<BigRat>, PolyError> {
    if u.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    let (scaled, _) = u.clear_denominators();
    let mut ints: Vec<BigInt> = scaled.coeffs().iter().map(|c| c.to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for c in ints.iter_mut() {
        *c /= &content;
    }

    let mut roots = BTreeSet::new();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.insert(BigRat::zero());
        ints.drain(..zeros);
    }
    let reduced = UPoly::from_coeffs(ints.iter().cloned().map(BigRat::from_integer).collect());
    if reduced.degree().unwrap_or(0) > 0 {
        let nums = divisors(&ints[0].abs());
        let dens = divisors(&ints.last().unwrap().abs());
        for p in &nums {
            for q in &dens {
                for sign in [1, -1] {
                    let cand = BigRat::new(p * sign, q.clone());
                    if reduced.eval(&cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// Positive divisors of `n > 0`.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut primes = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u32;
    while d < 10_000 && rest > BigInt::one() {
        let bd = BigInt::from(d);
        if BigInt::from(d) * &bd > rest {
            break;
        }
        while (&rest % &bd).is_zero() {
            primes.push(bd.clone());
            rest /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        let f = pollard_rho(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

// Deterministic below 3.3e24 with these bases.
fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if *n < BigInt::from(2) {
        return false;
    }
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Brent's variant).
fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |v: &BigInt| (v * v + &c) % n;
        let (mut x, mut y, mut g) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            g = (&x - &y).abs().gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
