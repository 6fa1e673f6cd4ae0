use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_int, Rat};

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored lowest-degree first with no trailing zeros, so the
/// zero polynomial is the empty vector and `coeffs.last()` is always nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * u^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// The monic linear polynomial `u - a`.
    pub fn linear(a: &Rat) -> Self {
        Polynomial::new(vec![-a.clone(), Rat::one()])
    }

    /// Monic product of `u - a` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Self {
        let mut p = Polynomial::one();
        for a in roots {
            p = &p * &Polynomial::linear(a);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides by the leading coefficient; panics on the zero polynomial.
    pub fn monic(&self) -> Self {
        let lead = self.leading_coeff().expect("monic of zero polynomial");
        self.scale(&lead.recip())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Quotient and remainder with `deg rem < deg divisor`. Panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (Polynomial::zero(), self.clone());
        }
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / &lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    let t = &c * d;
                    rem[k + i] = &rem[k + i] - t;
                }
            }
            quot[k] = c;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact quotient; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; zero if both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Composition with a translation: returns `p(u + c)`.
    pub fn shift(&self, c: &Rat) -> Self {
        // Horner in the shifted variable: p(u+c) = (...((a_n)(u+c) + a_{n-1})(u+c) + ...).
        let mut acc = Polynomial::zero();
        let shift_root = Polynomial::new(vec![c.clone(), Rat::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &shift_root) + &Polynomial::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `a` as a root (0 if not a root).
    pub fn root_multiplicity(&self, a: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Polynomial::linear(a);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&lin) {
            m += 1;
            p = q;
        }
        m
    }

    /// All rational roots with multiplicities, sorted ascending.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        crate::eigen::rational_roots(self)
    }

    /// Least common multiple of coefficient denominators (1 for the zero polynomial).
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l.abs()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] = &coeffs[i + j] + t;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "u")?;
                } else {
                    write!(f, "u^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn degree_and_normalization() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(poly(&[0]).degree(), None);
        assert_eq!(poly(&[3, 0, 0]).degree(), Some(0));
        assert_eq!(poly(&[0, 1]).degree(), Some(1));
    }

    #[test]
    fn shift_by_one_of_u_squared_minus_u() {
        // u(u-1) shifted by 1 is (u+1)u = u^2 + u.
        let p = poly(&[0, -1, 1]);
        assert_eq!(p.shift(&rat_int(1)), poly(&[0, 1, 1]));
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let p = poly(&[5, -3, 0, 7]);
        assert_eq!(p.shift(&rat_int(0)), p);
    }

    #[test]
    fn shift_composes_additively() {
        let p = poly(&[2, 0, -1, 4]);
        let once = p.shift(&rat(1, 2)).shift(&rat(3, 2));
        assert_eq!(once, p.shift(&rat_int(2)));
    }

    #[test]
    fn divrem_recovers_product() {
        let a = poly(&[1, 2, 3]);
        let b = poly(&[-4, 1]);
        let prod = &a * &b;
        let (q, r) = prod.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let s = poly(&[-1, 1]);
        let a = &s * &poly(&[3, 1]);
        let b = &s * &poly(&[0, 0, 2]);
        assert_eq!(a.gcd(&b), s);
    }

    #[test]
    fn root_multiplicity_counts_linear_factors() {
        let p = &poly(&[-1, 1]).pow(3) * &poly(&[7, 1]);
        assert_eq!(p.root_multiplicity(&rat_int(1)), 3);
        assert_eq!(p.root_multiplicity(&rat_int(-7)), 1);
        assert_eq!(p.root_multiplicity(&rat_int(0)), 0);
    }

    #[test]
    fn eval_matches_horner() {
        let p = poly(&[1, -2, 0, 5]);
        let x = rat(3, 2);
        let expect = rat_int(1) - rat_int(2) * &x + rat_int(5) * &x * &x * &x;
        assert_eq!(p.eval(&x), expect);
    }
}
