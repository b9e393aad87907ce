//! From bounded complexes to Abel complexes: classical Euler
//! characteristics, the functor `C -> ⊕_k C[2k]`, and rank-level checks
//! of pushouts along injections and of mapping cylinders.

use num_traits::Zero;
use serde::Serialize;

use crate::chainmap::ChainMap;
use crate::complex::{chi_a, classify_complex, shift_m, ComplexDesc, MDescComplex, Ring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ratfun::ExtLimit;
use crate::rational::{frac, int, Rational};

/// A bounded complex of finitely generated free (hence projective)
/// modules, or of arbitrary finitely generated ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    complex: MDescComplex,
    fg_projective: bool,
}

impl BoundedComplex {
    pub fn new(complex: MDescComplex, fg_projective: bool) -> Result<Self> {
        if !complex.is_bounded() {
            return Err(Error::PrecondViolation(
                "complex has a periodic tail".into(),
            ));
        }
        Ok(BoundedComplex {
            complex,
            fg_projective,
        })
    }

    pub fn complex(&self) -> &MDescComplex {
        &self.complex
    }

    pub fn fg_projective(&self) -> bool {
        self.fg_projective
    }

    /// Top degree carrying data.
    pub fn length(&self) -> usize {
        self.complex.stable_start()
    }
}

fn alternating_sum(values: impl Iterator<Item = usize>) -> i64 {
    values
        .enumerate()
        .map(|(j, v)| if j % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// `sum_j (-1)^j rank C_j`.
pub fn classical_chi(c: &BoundedComplex) -> i64 {
    let m = &c.complex;
    alternating_sum((0..=m.stable_start()).map(|j| m.dim(j)))
}

/// `sum_j (-1)^j rank H_j C`.
pub fn chi_hom(c: &BoundedComplex) -> i64 {
    let h = c.complex.homology_ranks();
    let ranks = h.terms(c.length() + 1);
    ranks
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let v = v.to_integer();
            let v: i64 = num_traits::ToPrimitive::to_i64(&v).expect("rank fits in i64");
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// Degrees `j <= min(n, top)` with `j ≡ n (mod 2)`, ascending.
fn xi_blocks(n: usize, top: usize) -> impl Iterator<Item = usize> {
    (n % 2..=n.min(top)).step_by(2)
}

/// `⊕_{k >= 0} C[2k]`, periodic with period 2 from the top degree of `C`.
pub fn xi(c: &BoundedComplex) -> MDescComplex {
    let cm = &c.complex;
    let top = c.length();
    let dim = |n: usize| xi_blocks(n, top).map(|j| cm.dim(j)).sum::<usize>();
    let offsets = |n: usize| {
        let mut acc = 0;
        xi_blocks(n, top)
            .map(|j| {
                let o = (j, acc);
                acc += cm.dim(j);
                o
            })
            .collect::<Vec<_>>()
    };
    let diff = |n: usize| {
        let mut d = Matrix::zeros(dim(n - 1), dim(n));
        let rows = offsets(n - 1);
        for (j, col) in offsets(n) {
            if j == 0 {
                continue;
            }
            let row = rows
                .iter()
                .find(|(jj, _)| *jj == j - 1)
                .expect("block below")
                .1;
            d.paste(row, col, &cm.diff(j));
        }
        d
    };
    MDescComplex::from_fn(cm.ring(), top, Some(2), dim, diff)
        .expect("sums of shifted copies form a complex")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiReport {
    pub chi_a: ExtLimit,
    pub chi_hom: i64,
    pub classical_chi: i64,
    /// `chi_A(Xi C) = chi_hom(C) / 2`, and the classical characteristic
    /// agrees for free complexes.
    pub holds: bool,
}

pub fn xi_chi_check(c: &BoundedComplex) -> XiReport {
    let value = chi_a(&ComplexDesc::M(xi(c)));
    let hom = chi_hom(c);
    let classical = classical_chi(c);
    let holds = value == ExtLimit::Finite(frac(hom, 2)) && (!c.fg_projective || classical == hom);
    XiReport {
        chi_a: value,
        chi_hom: hom,
        classical_chi: classical,
        holds,
    }
}

/// A formal integer combination of complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Expr {
    terms: Vec<(i64, ComplexDesc)>,
}

impl K0Expr {
    pub fn new() -> Self {
        K0Expr::default()
    }

    pub fn term(coeff: i64, c: ComplexDesc) -> Self {
        K0Expr {
            terms: vec![(coeff, c)],
        }
    }

    pub fn plus(mut self, coeff: i64, c: ComplexDesc) -> Self {
        self.terms.push((coeff, c));
        self
    }

    pub fn terms(&self) -> &[(i64, ComplexDesc)] {
        &self.terms
    }

    /// Evaluation through the Abel characteristic, extended linearly.
    pub fn chi_a(&self) -> Result<Rational> {
        self.terms
            .iter()
            .try_fold(Rational::zero(), |acc, (k, c)| match chi_a(c) {
                ExtLimit::Finite(v) => Ok(acc + v * int(*k)),
                other => Err(Error::PrecondViolation(format!(
                    "term has no finite characteristic ({other})"
                ))),
            })
    }
}

/// `chi_A(xi(iota(t)))` with `iota(t) = t [R]`.
pub fn iota_composite(t: i64) -> Rational {
    let copies = MDescComplex::free_in_degree(Ring::Integers, t.unsigned_abs() as usize, 0);
    let r = BoundedComplex::new(copies, true).expect("bounded");
    K0Expr::term(t.signum(), xi(&r).into())
        .chi_a()
        .expect("Xi of a bounded complex is Abel")
}

/// `T(f)_n = C_n ⊕ C_{n-1} ⊕ D_n` with `∂(x, y, z) = (∂x + y, -∂y, ∂z - f y)`.
pub fn mapping_cylinder(f: &ChainMap) -> Result<MDescComplex> {
    let (c, d) = (f.source(), f.target());
    if c.ring() != d.ring() {
        return Err(Error::VariantMismatch(
            "cylinder of a map between different rings".into(),
        ));
    }
    let c1 = shift_m(c, 1);
    let (m, p) = f.frame();
    MDescComplex::from_fn(
        c.ring(),
        m + 1,
        p,
        |n| c.dim(n) + c1.dim(n) + d.dim(n),
        |n| {
            let (r0, r1) = (c.dim(n - 1), c1.dim(n - 1));
            let (k0, k1) = (c.dim(n), c1.dim(n));
            let mut t = Matrix::zeros(r0 + r1 + d.dim(n - 1), k0 + k1 + d.dim(n));
            t.paste(0, 0, &c.diff(n));
            t.paste(0, k0, &Matrix::identity(c.dim(n - 1)));
            t.paste(r0, k0, &-&c1.diff(n));
            t.paste(r0 + r1, k0, &-&f.at(n - 1));
            t.paste(r0 + r1, k0 + k1, &d.diff(n));
            t
        },
    )
}

/// Cokernel of a degreewise injective map of bounded complexes, computed
/// over the fraction field, with the quotient map.
pub fn cokernel(f: &ChainMap) -> Result<(MDescComplex, ChainMap)> {
    let (a, b) = (f.source(), f.target());
    if !(a.is_bounded() && b.is_bounded() && f.period().is_none()) {
        return Err(Error::PrecondViolation(
            "cokernels are formed for bounded complexes only".into(),
        ));
    }
    if let Some(n) = f.first_non_injective() {
        return Err(Error::NotInjective { degree: n });
    }
    let top = f.frame().0;
    let q: Vec<Matrix> = (0..=top).map(|n| f.at(n).left_nullspace()).collect();
    let sections: Vec<Matrix> = q
        .iter()
        .map(|qn| {
            qn.right_inverse()
                .unwrap_or_else(|| Matrix::zeros(qn.cols(), 0))
        })
        .collect();
    let quotient = MDescComplex::from_fn(
        Ring::Rationals,
        top,
        None,
        |n| q[n].rows(),
        |n| &(&q[n - 1] * &b.diff(n)) * &sections[n],
    )?;
    let b_q = b.over_rationals();
    let proj = ChainMap::from_fn(&b_q, &quotient, top, None, |n| q[n].clone())?;
    Ok((quotient, proj))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub d: MDescComplex,
    /// `C -> D`.
    pub f_prime: ChainMap,
    /// `B -> D`.
    pub g_prime: ChainMap,
}

/// The pushout of `B <-f- A -g-> C` along the injection `f`, formed
/// degreewise as `(B ⊕ C) / {(f a, -g a)}` over the fraction field.
pub fn pushout_cofibration(f: &ChainMap, g: &ChainMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::DimensionMismatch(
            "f and g need a common source".into(),
        ));
    }
    if let Some(n) = f.first_non_injective() {
        return Err(Error::NotInjective { degree: n });
    }
    let (a, b, c) = (f.source(), f.target(), g.target());
    let bc = crate::complex::direct_sum_m(&b.over_rationals(), &c.over_rationals())?;
    let top = f.frame().0.max(g.frame().0);
    let a_q = a.over_rationals();
    let glue = ChainMap::from_fn(&a_q, &bc, top, None, |n| {
        Matrix::vstack(&f.at(n), &-&g.at(n))
    })?;
    let (d, proj) = cokernel(&glue)?;
    let (bq, cq) = (b.over_rationals(), c.over_rationals());
    let f_prime = ChainMap::from_fn(&cq, &d, top, None, |n| {
        &proj.at(n)
            * &Matrix::vstack(
                &Matrix::zeros(b.dim(n), c.dim(n)),
                &Matrix::identity(c.dim(n)),
            )
    })?;
    let g_prime = ChainMap::from_fn(&bq, &d, top, None, |n| {
        &proj.at(n)
            * &Matrix::vstack(
                &Matrix::identity(b.dim(n)),
                &Matrix::zeros(c.dim(n), b.dim(n)),
            )
    })?;
    Ok(Pushout {
        d,
        f_prime,
        g_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushoutReport {
    pub square_commutes: bool,
    pub f_prime_injective: bool,
    /// `rank coker F_n = rank coker f_n` in every degree.
    pub coker_ranks_equal: bool,
    /// The two cokernel complexes have the same homology ranks.
    pub coker_homology_equal: bool,
    /// When `A`, `B`, `C` are Abel of controlled absolute growth, so is `D`.
    pub abel_cag_inherited: bool,
    pub holds: bool,
}

pub fn pushout_check(f: &ChainMap, g: &ChainMap) -> Result<PushoutReport> {
    let p = pushout_cofibration(f, g)?;
    let top = p.d.stable_start();
    let square_commutes =
        (0..=top).all(|n| &p.f_prime.at(n) * &g.at(n) == &p.g_prime.at(n) * &f.at(n));
    let f_prime_injective = p.f_prime.first_non_injective().is_none();
    let coker_ranks_equal = (0..=top)
        .all(|n| p.d.dim(n) - p.f_prime.at(n).rank() == f.target().dim(n) - f.at(n).rank());
    let coker_homology_equal = match (cokernel(f), cokernel(&p.f_prime)) {
        (Ok((k1, _)), Ok((k2, _))) => k1.homology_ranks().same_values(&k2.homology_ranks()),
        _ => false,
    };
    let cag = |c: &MDescComplex| -> Result<bool> {
        Ok(classify_complex(&ComplexDesc::M(c.clone()))?.is_abel_cag())
    };
    let inputs_cag = cag(f.source())? && cag(f.target())? && cag(g.target())?;
    let abel_cag_inherited = !inputs_cag || cag(&p.d)?;
    let holds = square_commutes
        && f_prime_injective
        && coker_ranks_equal
        && coker_homology_equal
        && abel_cag_inherited;
    Ok(PushoutReport {
        square_commutes,
        f_prime_injective,
        coker_ranks_equal,
        coker_homology_equal,
        abel_cag_inherited,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::QPSeq;

    fn r0() -> BoundedComplex {
        BoundedComplex::new(MDescComplex::free_in_degree(Ring::Integers, 1, 0), true).unwrap()
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_chi(&r0()), 1);
        let contractible =
            BoundedComplex::new(MDescComplex::elementary(Ring::Integers, 1, int(1)), true).unwrap();
        assert_eq!(classical_chi(&contractible), 0);
        let two =
            BoundedComplex::new(MDescComplex::elementary(Ring::Integers, 1, int(2)), true).unwrap();
        assert_eq!(classical_chi(&two), 0);
        assert_eq!(chi_hom(&two), 0);
    }

    #[test]
    fn xi_of_r() {
        let x = xi(&r0());
        assert_eq!(
            (0..6).map(|n| x.dim(n)).collect::<Vec<_>>(),
            vec![1, 0, 1, 0, 1, 0]
        );
        assert_eq!(chi_a(&x.clone().into()), ExtLimit::Finite(frac(1, 2)));
        assert!(classify_complex(&x.into()).unwrap().is_abel_cag());
        assert!(xi_chi_check(&r0()).holds);
    }

    #[test]
    fn xi_of_zero_and_contractible() {
        let z = BoundedComplex::new(MDescComplex::zero(Ring::Integers), true).unwrap();
        assert_eq!(chi_a(&xi(&z).into()), ExtLimit::Finite(int(0)));
        let e =
            BoundedComplex::new(MDescComplex::elementary(Ring::Integers, 1, int(1)), true).unwrap();
        let x = xi(&e);
        assert!(x.homology_ranks().same_values(&QPSeq::zero()));
        assert!(xi_chi_check(&e).holds);
    }

    #[test]
    fn xi_of_longer_complex() {
        // Z <-2- Z in degrees 2, 3 plus Z in degree 0: homology Z in 0 only.
        let mut dims = vec![1, 0, 1, 1];
        let diffs = vec![
            Matrix::zeros(1, 0),
            Matrix::zeros(0, 1),
            Matrix::scalar(1, &int(2)),
        ];
        let c = MDescComplex::new(Ring::Integers, std::mem::take(&mut dims), diffs, None).unwrap();
        let b = BoundedComplex::new(c, true).unwrap();
        let r = xi_chi_check(&b);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.chi_a, ExtLimit::Finite(frac(1, 2)));
    }

    #[test]
    fn iota_is_half() {
        assert_eq!(iota_composite(1), frac(1, 2));
        assert_eq!(iota_composite(0), int(0));
        assert_eq!(iota_composite(-3), frac(-3, 2));
    }

    #[test]
    fn cylinders() {
        let r = MDescComplex::free_in_degree(Ring::Integers, 1, 0);
        let t = mapping_cylinder(&ChainMap::identity(&r)).unwrap();
        assert!(t.homology_ranks().same_values(&r.homology_ranks()));
        let z = MDescComplex::zero(Ring::Integers);
        let d = MDescComplex::new(
            Ring::Integers,
            vec![1],
            vec![],
            Some(vec![Matrix::zeros(1, 1)]),
        )
        .unwrap();
        let t = mapping_cylinder(&ChainMap::zero(&z, &d)).unwrap();
        assert!(t.homology_ranks().same_values(&d.homology_ranks()));
    }

    #[test]
    fn pushouts() {
        let a = MDescComplex::free_in_degree(Ring::Rationals, 1, 0);
        let b = MDescComplex::free_in_degree(Ring::Rationals, 2, 0);
        let f = ChainMap::new(
            a.clone(),
            b.clone(),
            vec![Matrix::from_ints(&[&[1], &[0]])],
            None,
        )
        .unwrap();
        let id = ChainMap::identity(&a);
        let p = pushout_cofibration(&f, &id).unwrap();
        assert!(p.d.homology_ranks().same_values(&b.homology_ranks()));
        assert!(pushout_check(&f, &id).unwrap().holds);

        let z = MDescComplex::zero(Ring::Rationals);
        let c = MDescComplex::elementary(Ring::Rationals, 1, int(1));
        let p = pushout_cofibration(&ChainMap::zero(&z, &b), &ChainMap::zero(&z, &c)).unwrap();
        assert_eq!((p.d.dim(0), p.d.dim(1)), (3, 1));

        let not_injective = ChainMap::zero(&a, &b);
        assert_eq!(
            pushout_cofibration(&not_injective, &id),
            Err(Error::NotInjective { degree: 0 })
        );
    }
}
