//! Eventually quasi-polynomial-periodic sequences of rationals.
//!
//! A [`QPSeq`] is an explicit prefix followed by `period` polynomial
//! tails: the term at index `n = prefix.len() + q * period + r` is
//! `tail[r](q)`. The class is closed under every operation used here
//! (sums, scaling, shifts, absolute values, alternating signs, partial
//! sums) and its generating functions are exactly the rational functions
//! whose poles are roots of unity, so Abel limits and growth predicates
//! are decided exactly.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfun::{ExtLimit, RatFun};
use crate::rational::{int, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPSeq {
    prefix: Vec<Rational>,
    period: usize,
    tail: Vec<Poly>,
}

impl QPSeq {
    pub fn new(prefix: Vec<Rational>, period: usize, tail: Vec<Poly>) -> Result<Self> {
        if period == 0 {
            return Err(Error::PrecondViolation("period must be at least 1".into()));
        }
        if tail.len() != period {
            return Err(Error::PrecondViolation(format!(
                "expected {period} tail polynomials, got {}",
                tail.len()
            )));
        }
        Ok(QPSeq {
            prefix,
            period,
            tail,
        })
    }

    pub fn zero() -> Self {
        QPSeq::constant(Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        QPSeq {
            prefix: Vec::new(),
            period: 1,
            tail: vec![Poly::constant(c)],
        }
    }

    /// Purely periodic sequence repeating `pattern` (nonempty).
    pub fn periodic(pattern: Vec<Rational>) -> Self {
        assert!(!pattern.is_empty(), "empty periodic pattern");
        QPSeq {
            prefix: Vec::new(),
            period: pattern.len(),
            tail: pattern.into_iter().map(Poly::constant).collect(),
        }
    }

    /// Finitely supported sequence.
    pub fn finite(terms: Vec<Rational>) -> Self {
        QPSeq {
            prefix: terms,
            period: 1,
            tail: vec![Poly::zero()],
        }
    }

    /// `prefix` followed by the periodic `pattern`.
    pub fn eventually_periodic(prefix: Vec<Rational>, pattern: Vec<Rational>) -> Self {
        let mut s = QPSeq::periodic(pattern);
        s.prefix = prefix;
        s
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn tail_polys(&self) -> &[Poly] {
        &self.tail
    }

    /// Largest tail degree (0 when all tails are constant or zero).
    pub fn max_degree(&self) -> usize {
        self.tail.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn is_eventually_periodic(&self) -> bool {
        self.tail.iter().all(Poly::is_constant)
    }

    pub fn eval(&self, n: usize) -> Rational {
        if n < self.prefix.len() {
            return self.prefix[n].clone();
        }
        let (q, r) = (n - self.prefix.len()).div_rem(&self.period);
        self.tail[r].eval(&int(q as i64))
    }

    pub fn terms(&self, k: usize) -> Vec<Rational> {
        (0..k).map(|n| self.eval(n)).collect()
    }

    /// Floating-point terms for numeric diagnostics.
    pub fn terms_f64(&self, k: usize) -> Vec<f64> {
        let l = self.prefix.len();
        (0..k)
            .map(|n| {
                if n < l {
                    crate::rational::to_f64(&self.prefix[n])
                } else {
                    let (q, r) = (n - l).div_rem(&self.period);
                    self.tail[r].eval_f64(q as f64)
                }
            })
            .collect()
    }

    /// Same sequence with a longer prefix `len` and period a multiple of
    /// the current one.
    pub fn reindexed(&self, len: usize, period: usize) -> QPSeq {
        assert!(len >= self.prefix.len(), "cannot shorten the prefix");
        assert!(
            period.is_multiple_of(self.period),
            "new period must be a multiple"
        );
        let stride = int((period / self.period) as i64);
        let tail = (0..period)
            .map(|r| {
                let off = len - self.prefix.len() + r;
                let (base, old_r) = off.div_rem(&self.period);
                self.tail[old_r].compose_affine(&int(base as i64), &stride)
            })
            .collect();
        QPSeq {
            prefix: self.terms(len),
            period,
            tail,
        }
    }

    fn aligned(&self, other: &QPSeq) -> (QPSeq, QPSeq) {
        let len = self.prefix.len().max(other.prefix.len());
        let period = self.period.lcm(&other.period);
        (self.reindexed(len, period), other.reindexed(len, period))
    }

    /// Whether both sequences agree at every index.
    pub fn same_values(&self, other: &QPSeq) -> bool {
        let (a, b) = self.aligned(other);
        a == b
    }

    /// `sum a_k x^k` as an exact rational function.
    pub fn genfun(&self) -> RatFun {
        let f = self.genfun_unverified();
        let check = self.prefix.len() + 3 * self.period * (self.max_degree() + 1);
        let series = f
            .series_coeffs(check)
            .expect("generating function of a sequence is analytic at 0");
        assert_eq!(
            series,
            self.terms(check),
            "generating function disagrees with terms"
        );
        f
    }

    fn genfun_unverified(&self) -> RatFun {
        let head = Poly::new(self.prefix.clone());
        if self.tail.iter().all(Poly::is_zero) {
            return RatFun::from_poly(head);
        }
        let d = self.max_degree();
        let p = self.period;
        let l = self.prefix.len();
        // sum_q P(q) y^q = N(y) / (1 - y)^(d+1) with deg N <= d.
        let block = Poly::one_minus_x().pow(d + 1);
        let mut tail_num = Poly::zero();
        for (r, poly) in self.tail.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let first: Vec<Rational> = (0..=d).map(|q| poly.eval(&int(q as i64))).collect();
            let n = (&block * &Poly::new(first)).truncate(d + 1);
            let shifted = &n.substitute_power(p) * &Poly::monomial(Rational::one(), l + r);
            tail_num = &tail_num + &shifted;
        }
        let den = block.substitute_power(p);
        RatFun::new(&(&head * &den) + &tail_num, den)
    }

    /// `|a_n|`.
    pub fn abs(&self) -> Result<QPSeq> {
        let mut shift = 0u64;
        for poly in &self.tail {
            shift = shift.max(poly.sign_stable_from()?);
        }
        let len = self.prefix.len() + shift as usize * self.period;
        let mut s = self.reindexed(len, self.period);
        for v in &mut s.prefix {
            *v = v.abs();
        }
        for poly in &mut s.tail {
            if poly.leading().is_negative() {
                *poly = -&*poly;
            }
        }
        Ok(s)
    }

    pub fn scale(&self, c: &Rational) -> QPSeq {
        QPSeq {
            prefix: self.prefix.iter().map(|v| v * c).collect(),
            period: self.period,
            tail: self.tail.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &QPSeq) -> QPSeq {
        let (a, b) = self.aligned(other);
        QPSeq {
            prefix: a.prefix.iter().zip(&b.prefix).map(|(x, y)| x + y).collect(),
            period: a.period,
            tail: a.tail.iter().zip(&b.tail).map(|(x, y)| x + y).collect(),
        }
    }

    /// `a_n b_n`.
    pub fn mul_termwise(&self, other: &QPSeq) -> QPSeq {
        let (a, b) = self.aligned(other);
        QPSeq {
            prefix: a.prefix.iter().zip(&b.prefix).map(|(x, y)| x * y).collect(),
            period: a.period,
            tail: a.tail.iter().zip(&b.tail).map(|(x, y)| x * y).collect(),
        }
    }

    pub fn sub(&self, other: &QPSeq) -> QPSeq {
        self.add(&other.scale(&int(-1)))
    }

    /// `b_n = a_{n+1}`.
    pub fn shift_left(&self) -> QPSeq {
        let mut s = if self.prefix.is_empty() {
            self.reindexed(1, self.period)
        } else {
            self.clone()
        };
        s.prefix.remove(0);
        s
    }

    /// `(a0, a_0, a_1, ...)`.
    pub fn insert_front(&self, a0: Rational) -> QPSeq {
        let mut s = self.clone();
        s.prefix.insert(0, a0);
        s
    }

    /// `(0, ..., 0, a_0, a_1, ...)` with `k` leading zeros.
    pub fn shift_right(&self, k: usize) -> QPSeq {
        let mut s = self.clone();
        s.prefix
            .splice(0..0, std::iter::repeat_n(Rational::zero(), k));
        s
    }

    /// Replaces the term at index `n` by `v`.
    pub fn modify(&self, n: usize, v: Rational) -> QPSeq {
        let mut s = self.reindexed(self.prefix.len().max(n + 1), self.period);
        s.prefix[n] = v;
        s
    }

    /// `(-1)^n a_n`.
    pub fn alternate(&self) -> QPSeq {
        let period = if self.period % 2 == 1 {
            2 * self.period
        } else {
            self.period
        };
        let mut s = self.reindexed(self.prefix.len(), period);
        for (n, v) in s.prefix.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -&*v;
            }
        }
        let l = s.prefix.len();
        for (r, poly) in s.tail.iter_mut().enumerate() {
            if (l + r) % 2 == 1 {
                *poly = -&*poly;
            }
        }
        s
    }

    /// `S_n = a_0 + ... + a_n`.
    pub fn partial_sums(&self) -> QPSeq {
        let mut running = Rational::zero();
        let prefix: Vec<Rational> = self
            .prefix
            .iter()
            .map(|v| {
                running += v;
                running.clone()
            })
            .collect();
        let block: Poly = self.tail.iter().fold(Poly::zero(), |acc, p| &acc + p);
        let base = &Poly::constant(running) + &block.prefix_sum();
        let mut within = Poly::zero();
        let tail = self
            .tail
            .iter()
            .map(|p| {
                within = &within + p;
                &base + &within
            })
            .collect();
        QPSeq {
            prefix,
            period: self.period,
            tail,
        }
    }

    /// Whether every term is nonnegative.
    pub fn is_nonneg(&self) -> Result<bool> {
        if self.prefix.iter().any(Signed::is_negative) {
            return Ok(false);
        }
        for poly in &self.tail {
            if !poly.is_nonneg_on_naturals()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every term is an integer.
    pub fn is_integer_valued(&self) -> bool {
        self.prefix.iter().all(crate::rational::is_integer)
            && self.tail.iter().all(Poly::is_integer_valued)
    }

    /// Equivalent representation with the shortest prefix, and for
    /// constant tails the shortest period.
    pub fn simplified(&self) -> QPSeq {
        let mut s = self.clone();
        s.shrink_prefix();
        if s.is_eventually_periodic() {
            let p = s.period;
            if let Some(d) =
                (1..p).find(|&d| p.is_multiple_of(d) && (0..p).all(|r| s.tail[r] == s.tail[r % d]))
            {
                s.tail.truncate(d);
                s.period = d;
                s.shrink_prefix();
            }
        }
        s
    }

    fn shrink_prefix(&mut self) {
        let p = self.period;
        while let Some(last) = self.prefix.last() {
            // Starting the tail one index earlier rotates the residues.
            let wrapped = self.tail[p - 1].compose_affine(&int(-1), &Rational::one());
            if &wrapped.eval(&Rational::zero()) != last {
                break;
            }
            self.prefix.pop();
            self.tail.rotate_right(1);
            self.tail[0] = wrapped;
        }
    }
}

impl fmt::Debug for QPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPSeq({self})")
    }
}

impl fmt::Display for QPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<String> = self
            .prefix
            .iter()
            .map(crate::rational::format_rational)
            .collect();
        let tail: Vec<String> = self.tail.iter().map(|p| format!("[{p}]")).collect();
        write!(
            f,
            "[{}] then period {} of {}",
            prefix.join(", "),
            self.period,
            tail.join(" ")
        )
    }
}

/// Coarse label for the growth behaviour of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GrowthClass {
    RadiusLtOne,
    RadiusOnlyGe1,
    ControlledGrowth,
    ControlledAbsoluteGrowth,
    Abel,
    AbelCAG,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The growth predicates of a sequence together with the most specific
/// [`GrowthClass`] they imply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: GrowthClass,
    pub radius_ge_one: bool,
    pub controlled_growth: bool,
    pub controlled_absolute_growth: bool,
    pub abel: bool,
}

impl Classification {
    /// Classifies from the generating functions of `a` and `|a|`.
    /// `radius_ge_one` must already be known for `f`.
    pub fn from_genfuns(f: &RatFun, abs_f: &RatFun, radius_ge_one: bool) -> Self {
        if !radius_ge_one {
            return Classification {
                class: GrowthClass::RadiusLtOne,
                radius_ge_one,
                controlled_growth: false,
                controlled_absolute_growth: false,
                abel: false,
            };
        }
        let controlled_growth = f.limit_one_sided_unchecked(2).is_zero();
        let controlled_absolute_growth = abs_f.limit_one_sided_unchecked(2).is_zero();
        let abel = f.limit_one_sided_unchecked(1).is_finite();
        let class = match (abel, controlled_absolute_growth, controlled_growth) {
            (true, true, _) => GrowthClass::AbelCAG,
            (true, false, _) => GrowthClass::Abel,
            (false, true, _) => GrowthClass::ControlledAbsoluteGrowth,
            (false, false, true) => GrowthClass::ControlledGrowth,
            (false, false, false) => GrowthClass::RadiusOnlyGe1,
        };
        Classification {
            class,
            radius_ge_one,
            controlled_growth,
            controlled_absolute_growth,
            abel,
        }
    }

    pub fn is_abel_cag(&self) -> bool {
        self.class == GrowthClass::AbelCAG
    }
}

/// `lim_{x->1-} (1 - x) sum a_k x^k`. Never `NoLimit`: the generating
/// function is rational with poles on the unit circle only.
pub fn abel_limit(s: &QPSeq) -> ExtLimit {
    s.genfun().limit_one_sided_unchecked(1)
}

pub fn classify_seq(s: &QPSeq) -> Result<Classification> {
    let f = s.genfun();
    let abs_f = s.abs()?.genfun();
    Ok(Classification::from_genfuns(&f, &abs_f, true))
}
