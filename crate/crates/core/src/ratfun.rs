//! Exact rational functions `N(x)/D(x)` and their behaviour as `x -> 1-`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::roots::{unit_disk_root_free, DiskCertificate};

/// A rational function in canonical form.
///
/// `gcd(num, den) = 1`; `den(0) = 1` whenever `den(0) != 0`, otherwise
/// `den` is monic. Zero is stored as `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// A one-sided limit in the extended reals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtLimit {
    Finite(#[serde(with = "crate::document::rational_str")] Rational),
    PosInfinity,
    NegInfinity,
    /// Not produced for rational-function carriers.
    NoLimit,
}

impl ExtLimit {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtLimit::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtLimit::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(Zero::is_zero)
    }
}

impl fmt::Display for ExtLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLimit::Finite(v) => f.write_str(&crate::rational::format_rational(v)),
            ExtLimit::PosInfinity => f.write_str("+inf"),
            ExtLimit::NegInfinity => f.write_str("-inf"),
            ExtLimit::NoLimit => f.write_str("no limit"),
        }
    }
}

impl RatFun {
    /// Builds and canonicalizes `num/den`; panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let norm = if den.coeff(0).is_zero() {
            den.leading()
        } else {
            den.coeff(0)
        };
        let inv = Rational::one() / norm;
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun::new(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `(1 - x)^m`.
    pub fn times_one_minus_x_pow(&self, m: usize) -> RatFun {
        self * &RatFun::from_poly(Poly::one_minus_x().pow(m))
    }

    /// First `k` Taylor coefficients at `x = 0`.
    pub fn series_coeffs(&self, k: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::DenVanishesAtZero);
        }
        let inv = Rational::one() / d0;
        let den = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(k);
        for n in 0..k {
            let mut c = self.num.coeff(n);
            for (i, di) in den.iter().enumerate().skip(1).take(n) {
                if !di.is_zero() {
                    c -= di * &out[n - i];
                }
            }
            out.push(c * &inv);
        }
        Ok(out)
    }

    /// Multiplicity of `(1 - x)` in the denominator.
    pub fn pole_order_at_one(&self) -> usize {
        self.split_at_one().0
    }

    /// `(k, g)` with `self = g / (1 - x)^k` and `g` finite and nonzero at 1
    /// (or `self` zero).
    fn split_at_one(&self) -> (usize, Poly) {
        let one = Rational::one();
        let factor = Poly::one_minus_x();
        let mut den = self.den.clone();
        let mut k = 0;
        while !den.is_constant() && den.eval(&one).is_zero() {
            den = den.exact_div(&factor);
            k += 1;
        }
        (k, den)
    }

    /// Value at 1 of `(1 - x)^pole_order * self`.
    fn leading_value_at_one(&self) -> Rational {
        let (_, den) = self.split_at_one();
        let one = Rational::one();
        self.num.eval(&one) / den.eval(&one)
    }

    /// `lim_{x -> 1-} (1 - x)^m f(x)`, after certifying that `f` has no
    /// pole inside the open unit disk.
    pub fn limit_one_sided(&self, m: usize) -> Result<ExtLimit> {
        let cert = self.radius_ge_one();
        if !cert.root_free {
            return Err(Error::PrecondViolation(format!(
                "denominator {} has a root inside the unit disk",
                self.den
            )));
        }
        Ok(self.limit_one_sided_unchecked(m))
    }

    /// As [`limit_one_sided`](Self::limit_one_sided) without the radius
    /// certification; callers must know all poles lie on or outside the
    /// unit circle.
    pub fn limit_one_sided_unchecked(&self, m: usize) -> ExtLimit {
        if self.is_zero() {
            return ExtLimit::Finite(Rational::zero());
        }
        let k = self.pole_order_at_one();
        let v = self.leading_value_at_one();
        match k.cmp(&m) {
            std::cmp::Ordering::Less => ExtLimit::Finite(Rational::zero()),
            std::cmp::Ordering::Equal => ExtLimit::Finite(v),
            // (1 - x) > 0 on the approach, so the sign is that of v.
            std::cmp::Ordering::Greater if v.is_positive() => ExtLimit::PosInfinity,
            std::cmp::Ordering::Greater => ExtLimit::NegInfinity,
        }
    }

    /// Exact certificate that the power series at 0 has radius of
    /// convergence at least 1 (no pole in the open unit disk).
    pub fn radius_ge_one(&self) -> DiskCertificate {
        unit_disk_root_free(&self.den)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    /// Long division of power series, independent of `series_coeffs`.
    fn long_division(num: &Poly, den: &Poly, k: usize) -> Vec<Rational> {
        let mut rem: Vec<Rational> = (0..k + den.coeffs().len()).map(|i| num.coeff(i)).collect();
        let d0 = den.coeff(0);
        let mut out = Vec::new();
        for n in 0..k {
            let c = &rem[n] / &d0;
            for (j, dj) in den.coeffs().iter().enumerate() {
                if n + j < rem.len() {
                    rem[n + j] -= &c * dj;
                }
            }
            out.push(c);
        }
        out
    }

    fn series_of_sum_oracle(f: &RatFun, g: &RatFun, k: usize) -> Vec<Rational> {
        let a = long_division(f.num(), f.den(), k);
        let b = long_division(g.num(), g.den(), k);
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    }

    #[test]
    fn additive_inverse_cancels() {
        let f = rf(&[1], &[1, -1]);
        assert!((&f + &f.scale(&int(-1))).is_zero());
    }

    #[test]
    fn sum_of_geometric_series() {
        let f = rf(&[1], &[1, 1]);
        let g = rf(&[1], &[1, -1]);
        let s = &f + &g;
        assert_eq!(s, rf(&[2], &[1, 0, -1]));
        assert_eq!(
            s.series_coeffs(50).unwrap(),
            series_of_sum_oracle(&f, &g, 50)
        );
        assert_eq!(&f + &RatFun::zero(), f);
    }

    #[test]
    fn products_and_scaling() {
        let one_minus_x = RatFun::from_poly(Poly::from_ints(&[1, -1]));
        assert_eq!(&one_minus_x * &rf(&[1], &[1, -1]), RatFun::one());

        let cube = RatFun::new(Poly::one(), Poly::from_ints(&[1, 1]).pow(3));
        assert_eq!(
            cube.scale(&int(2)),
            RatFun::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, 1]).pow(3))
        );

        let p = &rf(&[1], &[1, 1]) * &rf(&[1], &[1, -1]);
        assert_eq!(p, rf(&[1], &[1, 0, -1]));
        let oracle = long_division(&Poly::one(), &Poly::from_ints(&[1, 0, -1]), 50);
        assert_eq!(p.series_coeffs(50).unwrap(), oracle);
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(
            rf(&[1], &[1, 1]).series_coeffs(4).unwrap(),
            vec![int(1), int(-1), int(1), int(-1)]
        );
        let f = RatFun::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, 1]).pow(3));
        assert_eq!(
            f.series_coeffs(4).unwrap(),
            vec![int(2), int(-6), int(12), int(-20)]
        );
        assert!(RatFun::zero()
            .series_coeffs(5)
            .unwrap()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn series_needs_den_nonzero_at_origin() {
        let f = RatFun::new(Poly::one(), Poly::from_ints(&[0, 1]));
        assert_eq!(f.series_coeffs(3), Err(Error::DenVanishesAtZero));
    }

    #[test]
    fn pole_orders() {
        assert_eq!(rf(&[1], &[1, 0, -1]).pole_order_at_one(), 1);
        let cube_plus = RatFun::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, 1]).pow(3));
        assert_eq!(cube_plus.pole_order_at_one(), 0);
        let cube_minus = RatFun::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, -1]).pow(3));
        assert_eq!(cube_minus.pole_order_at_one(), 3);
    }

    #[test]
    fn limits() {
        // (s + t x)/(1 - x^2) with s = 3/2, t = -7
        let (s, t) = (frac(3, 2), int(-7));
        let f = RatFun::new(
            Poly::new(vec![s.clone(), t.clone()]),
            Poly::from_ints(&[1, 0, -1]),
        );
        assert_eq!(
            f.limit_one_sided(1).unwrap(),
            ExtLimit::Finite((s + t) / int(2))
        );

        assert_eq!(
            rf(&[1], &[1, 0, -1]).limit_one_sided(2).unwrap(),
            ExtLimit::Finite(int(0))
        );
        let sq = RatFun::new(Poly::one(), Poly::from_ints(&[1, -1]).pow(2));
        assert_eq!(sq.limit_one_sided(2).unwrap(), ExtLimit::Finite(int(1)));
        assert_eq!(sq.limit_one_sided(1).unwrap(), ExtLimit::PosInfinity);
        assert_eq!(
            sq.scale(&int(-3)).limit_one_sided(0).unwrap(),
            ExtLimit::NegInfinity
        );
    }

    #[test]
    fn limit_rejects_interior_pole() {
        let f = rf(&[1], &[1, -2]);
        assert!(matches!(
            f.limit_one_sided(1),
            Err(Error::PrecondViolation(_))
        ));
    }

    #[test]
    fn radius_examples() {
        assert!(rf(&[1], &[1, 0, -1]).radius_ge_one().root_free);
        let k3 = RatFun::new(Poly::one(), Poly::one_minus_x_pow(2).pow(3));
        assert!(k3.radius_ge_one().root_free);
        assert!(!rf(&[1], &[1, -2]).radius_ge_one().root_free);
        assert!(
            RatFun::from_poly(Poly::from_ints(&[1, 2, 3]))
                .radius_ge_one()
                .root_free
        );
    }

    #[test]
    fn canonical_form_normalizes_den_at_zero() {
        let f = rf(&[2, 2], &[2, 0, -2]);
        assert_eq!(f.den().coeff(0), int(1));
        assert_eq!(f, rf(&[1], &[1, -1]));
    }
}
