//! Exact test for "no root in the open unit disk".
//!
//! The Möbius substitution `x = (z - 1)/(z + 1)` sends the open unit disk
//! onto the open right half-plane. Roots of the transformed polynomial
//! `q` that are mirrored through the origin (`z` and `-z` both roots) are
//! split off as `g = gcd(q(z), q(-z))`; those are harmless only when they
//! lie on the imaginary axis, which is decided by a Sturm count on
//! `g(z) = G(z^2)`. What remains has no imaginary-axis roots, so the Routh
//! array decides whether it is Hurwitz stable.

use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::rational::{sign, Rational};

/// Evidence behind a [`unit_disk_root_free`] verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskCertificate {
    /// True iff the polynomial has no root with `|x| < 1`.
    pub root_free: bool,
    /// `(z + 1)^n p((z - 1)/(z + 1))`.
    pub half_plane: Poly,
    /// `gcd(q(z), q(-z))`, the origin-symmetric part of `half_plane`.
    pub mirror_factor: Poly,
    /// Whether every root of `mirror_factor` is purely imaginary.
    pub mirror_on_axis: bool,
    /// First column of the Routh array of `half_plane / mirror_factor`.
    pub routh_column: Vec<Rational>,
}

/// Decides exactly whether `p` has no root in the open unit disk.
///
/// Panics on the zero polynomial.
pub fn unit_disk_root_free(p: &Poly) -> DiskCertificate {
    assert!(!p.is_zero(), "zero polynomial has every point as a root");
    let q = moebius_to_half_plane(p);
    let mirror = Poly::gcd(&q, &q.reflect());
    let mirror_on_axis = roots_purely_imaginary(&mirror);
    let stable_part = q.exact_div(&mirror);
    let routh_column = routh_first_column(&stable_part);
    let hurwitz = routh_column.iter().all(|c| !c.is_zero())
        && routh_column.windows(2).all(|w| sign(&w[0]) == sign(&w[1]));
    DiskCertificate {
        root_free: mirror_on_axis && hurwitz,
        half_plane: q,
        mirror_factor: mirror,
        mirror_on_axis,
        routh_column,
    }
}

fn moebius_to_half_plane(p: &Poly) -> Poly {
    let n = p.degree().unwrap_or(0);
    let zm1 = Poly::from_ints(&[-1, 1]);
    let zp1 = Poly::from_ints(&[1, 1]);
    let minus_pows: Vec<Poly> = (0..=n).map(|k| zm1.pow(k)).collect();
    let plus_pows: Vec<Poly> = (0..=n).map(|k| zp1.pow(k)).collect();
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(), |acc, (k, c)| {
            &acc + &(&minus_pows[k] * &plus_pows[n - k]).scale(c)
        })
}

/// For `g` with `g(-z) = ±g(z)`: are all roots on the imaginary axis?
fn roots_purely_imaginary(g: &Poly) -> bool {
    let coeffs = g.coeffs();
    let low = coeffs.iter().take_while(|c| c.is_zero()).count();
    let rest = &coeffs[low..];
    if rest.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        // Not an even polynomial after removing z^low; cannot happen for a
        // genuine mirror factor.
        return false;
    }
    // rest(z) = G(z^2); need every root u of G real and negative.
    let big_g = Poly::new(rest.iter().step_by(2).cloned().collect());
    if big_g.is_constant() {
        return true;
    }
    let sf = big_g.squarefree();
    let d = sf.degree().unwrap_or(0);
    count_real_roots_below_zero(&sf) == d
}

/// Distinct real roots of a squarefree `p` with `p(0) != 0` in `(-inf, 0)`.
fn count_real_roots_below_zero(p: &Poly) -> usize {
    let chain = sturm_chain(p);
    let at_neg_inf: Vec<i32> = chain
        .iter()
        .map(|s| {
            let d = s.degree().unwrap_or(0);
            let sg = sign(&s.leading());
            if d % 2 == 1 {
                -sg
            } else {
                sg
            }
        })
        .collect();
    let at_zero: Vec<i32> = chain.iter().map(|s| sign(&s.coeff(0))).collect();
    variations(&at_neg_inf).saturating_sub(variations(&at_zero))
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the sign pattern and tames growth.
        let lead = r.leading().abs();
        chain.push(-&r.scale(&(Rational::one() / lead)));
    }
    chain
}

fn variations(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|s| *s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// First column of the Routh array; stops early at a zero pivot.
fn routh_first_column(h: &Poly) -> Vec<Rational> {
    let Some(n) = h.degree() else {
        return Vec::new();
    };
    let c = h.coeffs();
    let row = |start: usize| -> Vec<Rational> {
        (0..)
            .map(|j| start as isize - 2 * j as isize)
            .take_while(|i| *i >= 0)
            .map(|i| c[i as usize].clone())
            .collect()
    };
    let mut prev = row(n);
    let mut cur = if n >= 1 { row(n - 1) } else { Vec::new() };
    let mut column = vec![prev[0].clone()];
    for _ in 0..n {
        let pivot = cur.first().cloned().unwrap_or_else(Rational::zero);
        column.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        let width = prev.len().max(cur.len());
        let get = |v: &Vec<Rational>, j: usize| v.get(j).cloned().unwrap_or_else(Rational::zero);
        let next: Vec<Rational> = (0..width.saturating_sub(1))
            .map(|j| (&pivot * get(&prev, j + 1) - &prev[0] * get(&cur, j + 1)) / &pivot)
            .collect();
        prev = std::mem::replace(&mut cur, next);
    }
    column.truncate(n + 1);
    column
}

/// Rational roots of `p` (used by tests as an independent oracle for
/// simple denominators).
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let ints = p.integer_multiple();
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if n.is_multiple_of(&d) {
                out.push(d.clone());
                out.push(n / &d);
            }
            d += 1;
        }
        out
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1, -1] {
                let r = Rational::new(&num * s, den.clone());
                if !roots.contains(&r) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn free(p: &Poly) -> bool {
        unit_disk_root_free(p).root_free
    }

    #[test]
    fn roots_of_unity_powers_are_on_the_boundary() {
        let base = Poly::one_minus_x_pow(2);
        for k in 1..5 {
            assert!(free(&base.pow(k)));
        }
        assert!(free(&Poly::one_minus_x_pow(6).pow(2)));
        assert!(free(&Poly::from_ints(&[1, 1, 1])));
    }

    #[test]
    fn interior_root_detected() {
        assert!(!free(&Poly::from_ints(&[1, -2])));
        assert!(!free(&Poly::new(vec![int(1), int(0), frac(-9, 4)])));
        // (1 - 2x)(1 - x^2) mixes an interior root with boundary roots.
        assert!(!free(
            &(&Poly::from_ints(&[1, -2]) * &Poly::one_minus_x_pow(2))
        ));
    }

    #[test]
    fn constants_and_exterior_roots() {
        assert!(free(&Poly::one()));
        assert!(free(&Poly::from_ints(&[2, -1])));
        assert!(free(&Poly::from_ints(&[6, -5, 1])));
    }

    #[test]
    fn reciprocal_pair_is_rejected() {
        // Roots 1/2 and 2: symmetric through the circle, one inside.
        let p = &Poly::from_ints(&[1, -2]) * &Poly::from_ints(&[2, -1]);
        assert!(!free(&p));
        // Roots ±i/2 inside, ±2i outside.
        let p = &Poly::from_ints(&[1, 0, 4]) * &Poly::from_ints(&[4, 0, 1]);
        assert!(!free(&p));
    }

    #[test]
    fn root_at_origin_is_interior() {
        assert!(!free(&Poly::from_ints(&[0, 1])));
    }

    #[test]
    fn rational_root_oracle() {
        let p = &Poly::from_ints(&[1, -2]) * &Poly::from_ints(&[3, 1]);
        assert_eq!(rational_roots(&p), vec![int(-3), frac(1, 2)]);
    }
}
