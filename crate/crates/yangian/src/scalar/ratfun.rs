use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{Polynomial, Rat};

/// Quotient of two monic coprime polynomials.
///
/// When numerator and denominator have equal degree the function tends to 1 at
/// infinity and expands as `1 + sum_k d_k u^{-k-1}`; highest-weight eigenvalue
/// series and character labels all live in this normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Normalizes `num / den` by cancelling the common factor.
    ///
    /// Both inputs must be nonzero and, after cancellation, monic: scalars
    /// other than 1 are not representable.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::InvalidRationalFunction("zero numerator or denominator"));
        }
        if !num.is_monic() || !den.is_monic() {
            return Err(Error::InvalidRationalFunction("numerator and denominator must be monic"));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        Ok(RationalFunction { num, den })
    }

    pub fn one() -> Self {
        RationalFunction {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    /// `P(u+1) / P(u)` for a nonzero monic polynomial.
    pub fn shift_quotient(p: &Polynomial) -> Result<Self> {
        RationalFunction::new(p.shift(&Rat::one()), p.clone())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Degrees of numerator and denominator agree, so the value at infinity is 1.
    pub fn tends_to_one(&self) -> bool {
        self.num.degree() == self.den.degree()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        // Cross-cancel before multiplying to keep degrees low.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }

    pub fn inv(&self) -> RationalFunction {
        RationalFunction {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> RationalFunction {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = RationalFunction::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Coefficients `d_0 .. d_k_max` of `f = 1 + sum_k d_k u^{-k-1}` at infinity.
///
/// Requires equal numerator and denominator degrees. The expansion is the
/// exact power-series quotient of the reversed polynomials in `t = 1/u`.
pub fn laurent_expand(f: &RationalFunction, k_max: usize) -> Result<Vec<Rat>> {
    if !f.tends_to_one() {
        return Err(Error::InvalidRationalFunction(
            "expansion at infinity needs equal degrees",
        ));
    }
    let m = f.num.degree().expect("nonzero");
    let rev = |p: &Polynomial| -> Vec<Rat> {
        // t^m * p(1/t), constant term 1 for monic p of degree m.
        (0..=m).map(|i| p.coeff(m - i)).collect()
    };
    let rn = rev(&f.num);
    let rd = rev(&f.den);
    // c_j from rd * c = rn as power series in t; then d_k = c_{k+1}.
    let mut c = Vec::with_capacity(k_max + 2);
    c.push(Rat::one());
    for j in 1..=k_max + 1 {
        let mut v = rn.get(j).cloned().unwrap_or_else(Rat::zero);
        for i in 1..=j.min(m) {
            if !rd[i].is_zero() {
                v = v - &rd[i] * &c[j - i];
            }
        }
        c.push(v);
    }
    Ok(c[1..].to_vec())
}

/// Reconstructs the unique rational function of minimal degree `<= max_deg`
/// whose expansion at infinity matches every supplied coefficient.
///
/// The series must pin the answer down: callers supply at least
/// `2 * max_deg + 1` coefficients. Degrees are searched from 0 upward; each
/// candidate is an exact linear solve followed by full re-expansion, so a
/// returned function matches all of `series`, not just the fitted window.
pub fn pade_reconstruct(series: &[Rat], max_deg: usize) -> Result<RationalFunction> {
    assert!(
        series.len() >= 2 * max_deg + 1,
        "need at least 2*max_deg+1 coefficients"
    );
    let l = series.len() - 1;
    // c_0..c_{l+1}: the series 1 + sum d_k t^{k+1} in t = 1/u.
    let mut c = Vec::with_capacity(l + 2);
    c.push(Rat::one());
    c.extend(series.iter().cloned());
    for m in 0..=max_deg {
        // Unknowns b_1..b_m, a_1..a_m from rev_den * c = rev_num mod t^{l+2}.
        let eqs = l + 1;
        let sys = Matrix::from_fn(eqs, 2 * m, |row, col| {
            let j = row + 1;
            if col < m {
                let i = col + 1;
                if i <= j {
                    c[j - i].clone()
                } else {
                    Rat::zero()
                }
            } else {
                let i = col - m + 1;
                if i == j {
                    -Rat::one()
                } else {
                    Rat::zero()
                }
            }
        });
        let rhs: Vec<Rat> = (1..=eqs).map(|j| -c[j].clone()).collect();
        let Some(x) = sys.solve(&rhs) else {
            continue;
        };
        // rev_num = 1 + sum a_j t^j reverses back to u^m + a_1 u^{m-1} + ...
        let unrev = |vals: &[Rat]| -> Polynomial {
            let mut coeffs: Vec<Rat> = vals.iter().rev().cloned().collect();
            coeffs.push(Rat::one());
            Polynomial::new(coeffs)
        };
        let den = unrev(&x[..m]);
        let num = unrev(&x[m..]);
        let Ok(f) = RationalFunction::new(num, den) else {
            continue;
        };
        if !f.tends_to_one() {
            continue;
        }
        let expanded = laurent_expand(&f, l)?;
        if expanded == series {
            return Ok(f);
        }
    }
    Err(Error::PadeFailure { max_deg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use alloc::vec;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(
            Polynomial::new(num.iter().map(|&c| rat_int(c)).collect()),
            Polynomial::new(den.iter().map(|&c| rat_int(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn normal_form_cancels_common_factors() {
        // (u^2 - 1)/(u - 1) reduces to (u + 1)/1.
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.num(), &Polynomial::new(vec![rat_int(1), rat_int(1)]));
        assert!(f.den().is_monic() && f.den().degree() == Some(0));
    }

    #[test]
    fn expansion_of_simple_pole() {
        // (u+1)/u = 1 + u^{-1}: d = (1, 0, 0, ...).
        let f = rf(&[1, 1], &[0, 1]);
        let d = laurent_expand(&f, 3).unwrap();
        assert_eq!(d, vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn expansion_with_geometric_tail() {
        // (u-1)/(u-2) = 1 + sum_k 2^k u^{-k-1}.
        let f = rf(&[-1, 1], &[-2, 1]);
        let d = laurent_expand(&f, 4).unwrap();
        assert_eq!(
            d,
            vec![rat_int(1), rat_int(2), rat_int(4), rat_int(8), rat_int(16)]
        );
    }

    #[test]
    fn expansion_rejects_unequal_degrees() {
        let f = rf(&[0, 1], &[1]);
        assert!(laurent_expand(&f, 1).is_err());
    }

    #[test]
    fn reconstruct_constant_one() {
        let d = vec![rat_int(0); 5];
        let f = pade_reconstruct(&d, 2).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn reconstruct_geometric_series() {
        let d = vec![rat_int(1), rat_int(2), rat_int(4), rat_int(8), rat_int(16)];
        let f = pade_reconstruct(&d, 2).unwrap();
        assert_eq!(f, rf(&[-1, 1], &[-2, 1]));
    }

    #[test]
    fn reconstruct_fails_beyond_degree_bound() {
        // Series of (u-1)/(u-2) cannot be matched by a degree-0 function.
        let d = vec![rat_int(1), rat_int(2), rat_int(4)];
        assert_eq!(pade_reconstruct(&d, 0), Err(Error::PadeFailure { max_deg: 0 }));
    }

    #[test]
    fn reconstruct_with_rational_roots() {
        let f = RationalFunction::new(
            Polynomial::from_roots([rat(1, 2), rat_int(3)].iter()),
            Polynomial::from_roots([rat(-5, 3), rat_int(0)].iter()),
        )
        .unwrap();
        let d = laurent_expand(&f, 8).unwrap();
        assert_eq!(pade_reconstruct(&d, 4).unwrap(), f);
    }

    #[test]
    fn roundtrip_recovers_minimal_degree() {
        // (u^2-1)/((u-1)u) = (u+1)/u: reconstruction finds the reduced form.
        let f = rf(&[-1, 0, 1], &[0, -1, 1]);
        let d = laurent_expand(&f, 6).unwrap();
        let g = pade_reconstruct(&d, 3).unwrap();
        assert_eq!(g, rf(&[1, 1], &[0, 1]));
    }
}
