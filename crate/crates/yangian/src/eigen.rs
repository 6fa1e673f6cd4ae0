//! Exact rational spectra: characteristic polynomials, rational root
//! isolation by Sturm sequences, and eigenspace extraction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{rat_int, Polynomial, Rat};

/// Characteristic polynomial `det(u*I - m)` by the trace recurrence.
pub fn char_poly(m: &Matrix) -> Polynomial {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut acc = Matrix::identity(n);
    for k in 1..=n {
        acc = m * &acc;
        let c = -acc.trace() / rat_int(k as i64);
        for i in 0..n {
            let v = acc.get(i, i) + &c;
            acc.set(i, i, v);
        }
        coeffs[n - k] = c;
    }
    Polynomial::new(coeffs)
}

/// All rational roots of a nonzero polynomial, with multiplicities, ascending.
///
/// Any rational root of a monic polynomial has denominator dividing the lcm of
/// the coefficient denominators, so after substituting `u = y / lcm` the search
/// reduces to integer roots of a monic integer polynomial, found exactly by
/// Sturm bisection.
pub fn rational_roots(p: &Polynomial) -> Vec<(Rat, usize)> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let monic = p.monic();
    let scale = Rat::from_integer(monic.denominator_lcm());
    // q(y) = scale^n * p(y / scale), monic with integer coefficients.
    let n = monic.degree().unwrap();
    let q = Polynomial::new(
        (0..=n)
            .map(|i| monic.coeff(i) * pow_rat(&scale, (n - i) as u32))
            .collect(),
    );
    let mut roots = Vec::new();
    for y in integer_roots(&q) {
        let x = &y / &scale;
        let mult = p.root_multiplicity(&x);
        debug_assert!(mult > 0);
        roots.push((x, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc = acc * x;
    }
    acc
}

/// Distinct integer roots of a monic integer polynomial.
fn integer_roots(q: &Polynomial) -> Vec<Rat> {
    // Sturm counting needs a square-free polynomial.
    let sf = q.div_exact(&q.gcd(&q.derivative())).expect("gcd divides");
    if sf.degree() == Some(0) {
        return Vec::new();
    }
    let chain = sturm_chain(&sf);
    // Strict Cauchy bound: every real root has |r| < 1 + max |c_i| (monic).
    let bound = sf
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(Rat::zero(), |a, b| if b > a { b } else { a })
        .to_integer()
        + BigInt::from(2);
    let lo = Rat::from_integer(-bound.clone());
    let hi = Rat::from_integer(bound);
    let mut found = Vec::new();
    isolate(&chain, &sf, &lo, &hi, &mut found);
    found
}

/// Sturm chain with content-normalized remainders to limit coefficient growth.
fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![normalize_content(p), normalize_content(&p.derivative())];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(normalize_content(&-&r));
    }
}

/// Scales to a primitive integer polynomial with the same sign.
fn normalize_content(p: &Polynomial) -> Polynomial {
    use num_integer::Integer;
    if p.is_zero() {
        return p.clone();
    }
    let lcm = p.denominator_lcm();
    let mut gcd = BigInt::zero();
    for c in p.coeffs() {
        gcd = gcd.gcd(&(c.numer() * &lcm / c.denom()));
    }
    p.scale(&Rat::new(lcm, gcd))
}

fn sign_variations(chain: &[Polynomial], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1i8
        } else {
            -1i8
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in `(lo, hi]`.
fn count_roots(chain: &[Polynomial], lo: &Rat, hi: &Rat) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// Recursively bisects `(lo, hi]` (integer endpoints) collecting integer roots of `sf`.
fn isolate(chain: &[Polynomial], sf: &Polynomial, lo: &Rat, hi: &Rat, out: &mut Vec<Rat>) {
    let n = count_roots(chain, lo, hi);
    if n == 0 {
        return;
    }
    if hi - lo == Rat::one() {
        // A width-one half-open interval contains exactly one integer.
        if sf.eval(hi).is_zero() {
            out.push(hi.clone());
        }
        return;
    }
    let mid = {
        use num_integer::Integer;
        Rat::from_integer((lo + hi).to_integer().div_floor(&BigInt::from(2)))
    };
    isolate(chain, sf, lo, &mid, out);
    isolate(chain, sf, &mid, hi, out);
}

/// Rational eigenvalues with algebraic multiplicities, ascending.
///
/// Errors with `NonRationalSpectrum` unless the multiplicities sum to the
/// dimension, i.e. the characteristic polynomial splits over the rationals.
pub fn rational_eigenvalues(m: &Matrix) -> Result<Vec<(Rat, usize)>> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut eig: Vec<(Rat, usize)> = Vec::new();
    if m.is_lower_triangular() || m.is_upper_triangular() {
        for i in 0..n {
            let d = m.get(i, i);
            match eig.iter_mut().find(|(v, _)| v == d) {
                Some((_, k)) => *k += 1,
                None => eig.push((d.clone(), 1)),
            }
        }
        eig.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(eig);
    }
    let eig = rational_roots(&char_poly(m));
    if eig.iter().map(|(_, k)| k).sum::<usize>() != n {
        return Err(Error::NonRationalSpectrum);
    }
    Ok(eig)
}

/// Basis of `ker (m - lambda)^power`.
pub fn generalized_eigenspace(m: &Matrix, lambda: &Rat, power: usize) -> Vec<Vector> {
    let n = m.rows();
    let mut shifted = m.clone();
    for i in 0..n {
        let v = shifted.get(i, i) - lambda;
        shifted.set(i, i, v);
    }
    shifted.pow(power).kernel()
}

/// Basis of the exact eigenspace `ker (m - lambda)`.
pub fn eigenspace(m: &Matrix, lambda: &Rat) -> Vec<Vector> {
    generalized_eigenspace(m, lambda, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn char_poly_of_companion() {
        // Companion matrix of u^2 - u - 1.
        let a = m(&[&[0, 1], &[1, 1]]);
        let p = char_poly(&a);
        assert_eq!(p, Polynomial::new(vec![rat_int(-1), rat_int(-1), rat_int(1)]));
    }

    #[test]
    fn rational_roots_with_multiplicity_and_denominator() {
        // (u - 1/2)^2 (u + 3) = u^3 + 2u^2 - 11/4 u + 3/4.
        let p = Polynomial::new(vec![rat(3, 4), rat(-11, 4), rat_int(2), rat_int(1)]);
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(rat_int(-3), 1), (rat(1, 2), 2)]);
    }

    #[test]
    fn irrational_roots_are_skipped() {
        // u^2 - 2 has no rational roots.
        let p = Polynomial::new(vec![rat_int(-2), rat_int(0), rat_int(1)]);
        assert!(rational_roots(&p).is_empty());
        // (u^2 - 2)(u - 5) keeps only the rational root.
        let q = &p * &Polynomial::linear(&rat_int(5));
        assert_eq!(rational_roots(&q), vec![(rat_int(5), 1)]);
    }

    #[test]
    fn large_integer_roots_are_found() {
        let big = rat_int(1_000_003);
        let p = &Polynomial::linear(&big) * &Polynomial::linear(&rat_int(-7));
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(rat_int(-7), 1), (big, 1)]);
    }

    #[test]
    fn eigenvalues_of_jordan_block() {
        let a = m(&[&[2, 1], &[0, 2]]);
        assert_eq!(rational_eigenvalues(&a).unwrap(), vec![(rat_int(2), 2)]);
        assert_eq!(eigenspace(&a, &rat_int(2)).len(), 1);
        assert_eq!(generalized_eigenspace(&a, &rat_int(2), 2).len(), 2);
    }

    #[test]
    fn rotation_matrix_has_no_rational_spectrum() {
        let a = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(rational_eigenvalues(&a), Err(Error::NonRationalSpectrum));
    }
}
