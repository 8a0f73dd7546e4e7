//! Dense polynomials over `Q` as coefficient vectors, lowest degree first.
//! The zero polynomial is the empty vector after `trim`.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

/// Quotient and remainder; `divisor` must be nonzero.
pub(crate) fn divrem(
    dividend: &[BigRational],
    divisor: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let divisor = trim(divisor.to_vec());
    assert!(!divisor.is_empty(), "polynomial division by zero");
    let mut rem = trim(dividend.to_vec());
    if rem.len() < divisor.len() {
        return (Vec::new(), rem);
    }
    let lead = divisor.last().expect("nonzero").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - divisor.len() + 1];
    while rem.len() >= divisor.len() {
        let shift = rem.len() - divisor.len();
        let factor = rem.last().expect("nonzero") / &lead;
        for (i, d) in divisor.iter().enumerate() {
            rem[shift + i] -= &factor * d;
        }
        quot[shift] = factor;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Returns `(g, s, u)` with `s*a + u*b = g = gcd(a, b)` (not normalized).
pub(crate) fn ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let one = vec![BigRational::from_integer(1.into())];
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut u0, mut u1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s2);
        let u2 = sub(&u0, &mul(&q, &u1));
        u0 = std::mem::replace(&mut u1, u2);
    }
    (r0, s0, u0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigRational> {
        trim(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn division() {
        // (t^3 - 1) = (t - 1)(t^2 + t + 1)
        let (q, r) = divrem(&p(&[-1, 0, 0, 1]), &p(&[1, 1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn bezout_identity() {
        let a = p(&[1, 1, 1]);
        let b = p(&[3, 0, 2]);
        let (g, s, u) = ext_gcd(&a, &b);
        // s*a + u*b, written as s*a - (0 - u*b)
        let lhs = sub(&mul(&s, &a), &sub(&[], &mul(&u, &b)));
        assert_eq!(lhs, g);
        assert_eq!(g.len(), 1);
    }
}
