//! Dense univariate polynomials over the rationals.
//!
//! The same type serves as the numerator/denominator carrier of
//! [`RatFun`](crate::ratfun::RatFun) and as the block-index polynomial
//! in the tails of [`QPSeq`](crate::seq::QPSeq).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_integer, Rational};

/// Largest integer range we are willing to scan when certifying the sign
/// of a polynomial on the naturals.
pub const SIGN_SCAN_LIMIT: u64 = 1 << 20;

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `1 - x`
    pub fn one_minus_x() -> Self {
        Poly::from_ints(&[1, -1])
    }

    /// `1 - x^k`
    pub fn one_minus_x_pow(k: usize) -> Self {
        Poly::one() - Poly::monomial(Rational::one(), k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        self.scale(&(Rational::one() / lead))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient when `divisor` is known to divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.exact_div(&g).monic()
    }

    /// `P(a + b*t)` as a polynomial in `t`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Poly {
        let lin = Poly::new(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &lin) + &Poly::constant(c.clone())
        })
    }

    /// `P(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// `P(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Integer-valued on every natural number (checked on `0..=deg`,
    /// which suffices by the finite-difference basis).
    pub fn is_integer_valued(&self) -> bool {
        let d = self.degree().unwrap_or(0);
        (0..=d).all(|q| is_integer(&self.eval(&int(q as i64))))
    }

    /// `1 + max |a_i / a_d|`: every real root has absolute value below it.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().abs();
        if self.is_constant() {
            return Rational::one();
        }
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m
    }

    /// Whether `P(q) >= 0` for every natural `q`.
    ///
    /// Beyond the Cauchy bound the sign is that of the leading coefficient;
    /// below it every integer is evaluated.
    pub fn is_nonneg_on_naturals(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.leading().is_negative() && !self.is_constant() {
            return Ok(false);
        }
        let bound = self.cauchy_bound().ceil().to_integer();
        let bound = bound
            .to_u64()
            .filter(|b| *b <= SIGN_SCAN_LIMIT)
            .ok_or_else(|| {
                Error::Uncertifiable(format!("sign scan up to {bound} exceeds the scan limit"))
            })?;
        Ok((0..=bound).all(|q| !self.eval(&int(q as i64)).is_negative()))
    }

    /// First natural `q0` from which the sign of `P(q)` is constant.
    pub fn sign_stable_from(&self) -> Result<u64> {
        if self.is_constant() {
            return Ok(0);
        }
        let bound = self.cauchy_bound().ceil().to_integer();
        bound
            .to_u64()
            .filter(|b| *b <= SIGN_SCAN_LIMIT)
            .ok_or(Error::AbsNotStabilized)
    }

    /// The unique polynomial of degree `< values.len()` with
    /// `P(i) = values[i]` (Newton forward differences).
    pub fn interpolate_naturals(values: &[Rational]) -> Poly {
        let n = values.len();
        let mut diffs: Vec<Rational> = values.to_vec();
        let mut newton = Vec::with_capacity(n);
        for k in 0..n {
            newton.push(diffs[0].clone());
            for i in 0..n - k - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            diffs.pop();
        }
        // sum_k newton[k] * binom(q, k)
        let mut acc = Poly::zero();
        let mut basis = Poly::one();
        for (k, c) in newton.iter().enumerate() {
            acc = &acc + &basis.scale(c);
            let factor = Poly::new(vec![int(-(k as i64)), Rational::one()])
                .scale(&(Rational::one() / int(k as i64 + 1)));
            basis = &basis * &factor;
        }
        acc
    }

    /// `S(q) = sum_{j < q} P(j)`.
    pub fn prefix_sum(&self) -> Poly {
        let d = self.degree().map_or(0, |d| d + 1);
        let mut values = Vec::with_capacity(d + 1);
        let mut running = Rational::zero();
        for q in 0..=d {
            values.push(running.clone());
            running += self.eval(&int(q as i64));
        }
        Poly::interpolate_naturals(&values)
    }

    /// Multiplies through by the lcm of the denominators, returning an
    /// integer polynomial with the same roots.
    pub fn integer_multiple(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if is_integer(&mag) {
                    write!(f, "{}", format_rational(&mag))?;
                } else {
                    write!(f, "({})", format_rational(&mag))?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Poly::from_ints(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn division_round_trips() {
        let a = Poly::from_ints(&[3, -1, 4, 1, -5, 9]);
        let b = Poly::from_ints(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_extracts_common_factor() {
        let common = Poly::from_ints(&[1, 1]);
        let a = &common * &Poly::from_ints(&[1, -1]);
        let b = &common * &Poly::from_ints(&[2, 0, 1]);
        assert_eq!(Poly::gcd(&a, &b), common);
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn compose_affine_matches_pointwise() {
        let p = Poly::from_ints(&[1, -2, 3]);
        let c = p.compose_affine(&int(2), &int(3));
        for t in -3..4 {
            let t = int(t);
            assert_eq!(c.eval(&t), p.eval(&(int(2) + int(3) * &t)));
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::new(vec![frac(1, 3), int(-2), frac(5, 2), int(1)]);
        let vals: Vec<_> = (0..4).map(|q| p.eval(&int(q))).collect();
        assert_eq!(Poly::interpolate_naturals(&vals), p);
    }

    #[test]
    fn prefix_sum_of_linear() {
        // sum_{j<q} (j+1) = q(q+1)/2
        let s = Poly::from_ints(&[1, 1]).prefix_sum();
        for q in 0..10i64 {
            assert_eq!(s.eval(&int(q)), int(q * (q + 1) / 2));
        }
    }

    #[test]
    fn sign_certification() {
        // (q - 9/2)^2 - 3/10 is positive on 0..=3 but negative at q = 4.
        let p = &Poly::new(vec![frac(-9, 2), int(1)]).pow(2) - &Poly::constant(frac(3, 10));
        assert!(!p.is_nonneg_on_naturals().unwrap());
        assert!(Poly::from_ints(&[2, 3, 1]).is_nonneg_on_naturals().unwrap());
        assert!(!Poly::from_ints(&[5, -1]).is_nonneg_on_naturals().unwrap());
    }

    #[test]
    fn integer_valued_binomials() {
        // q(q-1)/2 is integer valued although its coefficients are not integers.
        let p = Poly::new(vec![int(0), frac(-1, 2), frac(1, 2)]);
        assert!(p.is_integer_valued());
        assert!(!Poly::new(vec![frac(1, 2)]).is_integer_valued());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Poly::from_ints(&[1, 0, -1]).to_string(), "1 - x^2");
        assert_eq!(Poly::new(vec![int(0), frac(-1, 2)]).to_string(), "-(1/2)x");
    }
}
