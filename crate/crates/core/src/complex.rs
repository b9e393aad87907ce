//! Finitely described unbounded positive chain complexes.
//!
//! A complex is given either by its homology ranks alone
//! ([`HDescComplex`]) or by explicit differentials that become periodic
//! after finitely many degrees ([`MDescComplex`]). Ranks are always taken
//! over the fraction field of the base ring.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ratfun::ExtLimit;
use crate::rational::{int, Rational};
use crate::seq::{abel_limit, classify_seq, Classification, QPSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
}

/// A complex known only through `rank H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDescComplex {
    hranks: QPSeq,
}

impl HDescComplex {
    /// Validates that every rank is a nonnegative integer.
    pub fn new(hranks: QPSeq) -> Result<Self> {
        if !hranks.is_integer_valued() {
            return Err(Error::InvalidComplex(
                "homology ranks must be integers".into(),
            ));
        }
        if !hranks.is_nonneg()? {
            return Err(Error::InvalidComplex(
                "homology ranks must be nonnegative".into(),
            ));
        }
        Ok(HDescComplex { hranks })
    }

    pub fn zero() -> Self {
        HDescComplex {
            hranks: QPSeq::zero(),
        }
    }

    pub fn hranks(&self) -> &QPSeq {
        &self.hranks
    }
}

/// A complex of finitely generated free modules given by its differentials.
///
/// Degrees `0..=m` carry the explicit prefix (`dims[n] = rank C_n`,
/// `diffs[n-1] = d_n : C_n -> C_{n-1}`). If a tail `e_1..e_p` is present,
/// `d_{m + q p + r} = e_r` for all `q >= 0`; otherwise `C_n = 0` for `n > m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDescComplex {
    ring: Ring,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
    tail: Vec<Matrix>,
}

impl MDescComplex {
    pub fn new(
        ring: Ring,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
        tail: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let c = MDescComplex {
            ring,
            dims,
            diffs,
            tail: tail.unwrap_or_default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(ring: Ring) -> Self {
        MDescComplex {
            ring,
            dims: vec![0],
            diffs: Vec::new(),
            tail: Vec::new(),
        }
    }

    /// `R^rank` concentrated in `degree`.
    pub fn free_in_degree(ring: Ring, rank: usize, degree: usize) -> Self {
        let mut dims = vec![0; degree + 1];
        dims[degree] = rank;
        let diffs = (1..=degree)
            .map(|n| Matrix::zeros(dims[n - 1], dims[n]))
            .collect();
        MDescComplex {
            ring,
            dims,
            diffs,
            tail: Vec::new(),
        }
    }

    /// `R <-c- R` in degrees `degree - 1` and `degree` (`degree >= 1`).
    pub fn elementary(ring: Ring, degree: usize, c: Rational) -> Self {
        assert!(degree >= 1);
        let mut dims = vec![0; degree + 1];
        dims[degree - 1] = 1;
        dims[degree] = 1;
        let diffs = (1..=degree)
            .map(|n| {
                if n == degree {
                    Matrix::scalar(1, &c)
                } else {
                    Matrix::zeros(dims[n - 1], dims[n])
                }
            })
            .collect();
        MDescComplex {
            ring,
            dims,
            diffs,
            tail: Vec::new(),
        }
    }

    /// Builds a complex from degree-indexed accessors. Degrees above
    /// `stable_start` are read for one period (`None` = bounded).
    pub fn from_fn(
        ring: Ring,
        stable_start: usize,
        period: Option<usize>,
        dim: impl Fn(usize) -> usize,
        diff: impl Fn(usize) -> Matrix,
    ) -> Result<Self> {
        let dims = (0..=stable_start).map(&dim).collect();
        let diffs = (1..=stable_start).map(&diff).collect();
        let tail = period.map(|p| (stable_start + 1..=stable_start + p).map(&diff).collect());
        MDescComplex::new(ring, dims, diffs, tail)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidComplex(msg));
        if self.dims.is_empty() {
            return bad("at least one module rank (degree 0) is required".into());
        }
        let m = self.stable_start();
        if self.diffs.len() != m {
            return bad(format!(
                "{} module ranks need {m} differentials, got {}",
                m + 1,
                self.diffs.len()
            ));
        }
        for n in 1..=m {
            let expect = (self.dims[n - 1], self.dims[n]);
            if self.diffs[n - 1].shape() != expect {
                return Err(Error::DimensionMismatch(format!(
                    "d_{n} has shape {:?}, expected {:?}",
                    self.diffs[n - 1].shape(),
                    expect
                )));
            }
        }
        if let Some(p) = self.period() {
            let mut rows = self.dims[m];
            for (r, e) in self.tail.iter().enumerate() {
                if e.rows() != rows {
                    return Err(Error::DimensionMismatch(format!(
                        "tail map e_{} has {} rows, expected {rows}",
                        r + 1,
                        e.rows()
                    )));
                }
                rows = e.cols();
            }
            if rows != self.dims[m] {
                return Err(Error::DimensionMismatch(format!(
                    "tail does not wrap: C_{{m+p}} has rank {rows} but C_m has rank {}",
                    self.dims[m]
                )));
            }
            let _ = p;
        }
        if self.ring == Ring::Integers
            && !self.diffs.iter().chain(&self.tail).all(Matrix::is_integral)
        {
            return bad("differentials over Z must have integer entries".into());
        }
        let last = m + self.period().unwrap_or(0);
        for n in 1..=last {
            if !(&self.diff(n) * &self.diff(n + 1)).is_zero() {
                return bad(format!("d_{n} o d_{} is not zero", n + 1));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Last degree of the explicit prefix.
    pub fn stable_start(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn period(&self) -> Option<usize> {
        (!self.tail.is_empty()).then_some(self.tail.len())
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn prefix_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn prefix_diffs(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn tail_maps(&self) -> &[Matrix] {
        &self.tail
    }

    /// `rank C_n`.
    pub fn dim(&self, n: usize) -> usize {
        let m = self.stable_start();
        if n <= m {
            return self.dims[n];
        }
        match self.period() {
            Some(p) => self.tail[(n - m - 1) % p].cols(),
            None => 0,
        }
    }

    /// `d_n : C_n -> C_{n-1}` (with `d_0 : C_0 -> 0`).
    pub fn diff(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::zeros(0, self.dims[0]);
        }
        let m = self.stable_start();
        if n <= m {
            return self.diffs[n - 1].clone();
        }
        match self.period() {
            Some(p) => self.tail[(n - m - 1) % p].clone(),
            None => Matrix::zeros(self.dim(n - 1), 0),
        }
    }

    /// Same complex with a longer prefix and a multiple of the period.
    pub fn unrolled(&self, stable_start: usize, period: Option<usize>) -> MDescComplex {
        assert!(stable_start >= self.stable_start());
        let period = match (self.period(), period) {
            (Some(p), Some(q)) => {
                assert!(q % p == 0, "new period must be a multiple of the old");
                Some(q)
            }
            (Some(p), None) => Some(p),
            (None, _) => None,
        };
        MDescComplex::from_fn(
            self.ring,
            stable_start,
            period,
            |n| self.dim(n),
            |n| self.diff(n),
        )
        .expect("unrolling preserves validity")
    }

    /// Common `(stable_start, period)` for a family of complexes.
    ///
    /// A bounded complex only enters its zero tail one degree above its
    /// top, so that degree is where it can join a periodic frame.
    pub fn common_frame<'a>(
        cs: impl IntoIterator<Item = &'a MDescComplex>,
    ) -> (usize, Option<usize>) {
        cs.into_iter().fold((0, None), |(m, p), c| {
            let p = match (p, c.period()) {
                (None, q) => q,
                (Some(a), Some(b)) => Some(a.lcm(&b)),
                (Some(a), None) => Some(a),
            };
            (m.max(c.stable_start() + usize::from(c.is_bounded())), p)
        })
    }

    /// Same differentials, read over the rationals.
    pub fn over_rationals(&self) -> MDescComplex {
        MDescComplex {
            ring: Ring::Rationals,
            ..self.clone()
        }
    }

    /// Same complex with every differential negated.
    pub fn negated(&self) -> MDescComplex {
        MDescComplex {
            ring: self.ring,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| -d).collect(),
            tail: self.tail.iter().map(|d| -d).collect(),
        }
    }

    /// Ranks of `d_n` for `n in 0..=m + p + 1`, which covers every degree.
    fn diff_ranks(&self) -> Vec<usize> {
        let top = self.stable_start() + self.period().unwrap_or(0) + 1;
        (0..=top).map(|n| self.diff(n).rank()).collect()
    }

    /// Degree-wise data as a sequence: `f(n)` read on `0..=m`, then one
    /// period (or zero when bounded).
    fn degree_seq(&self, f: impl Fn(usize) -> usize) -> QPSeq {
        let m = self.stable_start();
        let prefix = (0..=m).map(|n| int(f(n) as i64)).collect();
        let (period, tail) = match self.period() {
            Some(p) => (
                p,
                (1..=p)
                    .map(|j| Poly::constant(int(f(m + j) as i64)))
                    .collect(),
            ),
            None => (1, vec![Poly::zero()]),
        };
        QPSeq::new(prefix, period, tail).expect("well-formed degree sequence")
    }

    /// `rank H_n = rank C_n - rank d_n - rank d_{n+1}`.
    pub fn homology_ranks(&self) -> QPSeq {
        let ranks = self.diff_ranks();
        let m = self.stable_start();
        let p = self.period().unwrap_or(1);
        let rank_of = |n: usize| -> usize {
            // d_n is periodic beyond m, so fold large degrees back.
            let n = if n > m + p {
                m + 1 + (n - m - 1) % p
            } else {
                n
            };
            ranks[n]
        };
        self.degree_seq(|n| self.dim(n) - rank_of(n) - rank_of(n + 1))
    }

    /// `rank C_n` as a sequence.
    pub fn module_ranks(&self) -> QPSeq {
        self.degree_seq(|n| self.dim(n))
    }

    /// `rank B_n = rank d_{n+1}` as a sequence.
    pub fn boundary_ranks(&self) -> QPSeq {
        self.degree_seq(|n| self.diff(n + 1).rank())
    }
}

/// Either description of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexDesc {
    H(HDescComplex),
    M(MDescComplex),
}

impl From<HDescComplex> for ComplexDesc {
    fn from(c: HDescComplex) -> Self {
        ComplexDesc::H(c)
    }
}

impl From<MDescComplex> for ComplexDesc {
    fn from(c: MDescComplex) -> Self {
        ComplexDesc::M(c)
    }
}

impl ComplexDesc {
    pub fn homology_ranks(&self) -> QPSeq {
        match self {
            ComplexDesc::H(h) => h.hranks.clone(),
            ComplexDesc::M(m) => m.homology_ranks(),
        }
    }

    pub fn as_m(&self) -> Result<&MDescComplex> {
        match self {
            ComplexDesc::M(m) => Ok(m),
            ComplexDesc::H(_) => Err(Error::VariantMismatch(
                "operation needs explicit differentials, got a homology-rank description".into(),
            )),
        }
    }
}

/// `(HC)_n = (-1)^n rank H_n C`.
pub fn hc_seq(c: &ComplexDesc) -> QPSeq {
    c.homology_ranks().alternate()
}

/// `(RC)_n = (-1)^n rank C_n`.
pub fn rc_seq(c: &ComplexDesc) -> Result<QPSeq> {
    Ok(c.as_m()?.module_ranks().alternate())
}

/// `(BC)_n = (-1)^n rank B_n C`.
pub fn bc_seq(c: &ComplexDesc) -> Result<QPSeq> {
    Ok(c.as_m()?.boundary_ranks().alternate())
}

/// The Abel-method Euler characteristic `A-lim HC`.
pub fn chi_a(c: &ComplexDesc) -> ExtLimit {
    abel_limit(&hc_seq(c))
}

pub fn classify_complex(c: &ComplexDesc) -> Result<Classification> {
    classify_seq(&hc_seq(c))
}

/// Checks `rank B_n + rank B_{n-1} + rank H_n = rank C_n` for `n < upto`.
///
/// Boundary ranks come from reduced row echelon forms, homology ranks
/// from the fraction-free elimination behind [`MDescComplex::homology_ranks`].
pub fn rank_identity_check(c: &MDescComplex, upto: usize) -> bool {
    let h = c.homology_ranks();
    let b = |n: usize| c.diff(n + 1).rref().1.len();
    (0..upto).all(|n| {
        let below = if n == 0 { 0 } else { b(n - 1) };
        int((b(n) + below) as i64) + h.eval(n) == int(c.dim(n) as i64)
    })
}

/// Outcome of comparing `A-lim HC` with `A-lim RC`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankTheoremReport {
    /// `(1 - x)^2 * genfun(BC) -> 0`.
    pub bc_controlled: bool,
    pub hc_abel: bool,
    pub rc_abel: bool,
    pub chi_h: ExtLimit,
    pub chi_r: ExtLimit,
    pub limits_equal: bool,
    /// `(1 - x) genfun(BC) + genfun(HC) = genfun(RC)` as rational functions.
    pub genfun_identity: bool,
    /// The conclusion holds whenever the hypothesis does.
    pub holds: bool,
}

pub fn theorem_rc_equals_hc(c: &MDescComplex) -> RankTheoremReport {
    let desc = ComplexDesc::M(c.clone());
    let hc = hc_seq(&desc);
    let rc = c.module_ranks().alternate();
    let bc = c.boundary_ranks().alternate();
    let (gh, gr, gb) = (hc.genfun(), rc.genfun(), bc.genfun());
    let genfun_identity = &gb.times_one_minus_x_pow(1) + &gh == gr;
    let bc_controlled = gb.limit_one_sided_unchecked(2).is_zero();
    let chi_h = gh.limit_one_sided_unchecked(1);
    let chi_r = gr.limit_one_sided_unchecked(1);
    let (hc_abel, rc_abel) = (chi_h.is_finite(), chi_r.is_finite());
    let limits_equal = chi_h == chi_r;
    let holds = !bc_controlled || (hc_abel == rc_abel && (!hc_abel || limits_equal));
    RankTheoremReport {
        bc_controlled,
        hc_abel,
        rc_abel,
        chi_h,
        chi_r,
        limits_equal,
        genfun_identity,
        holds,
    }
}

/// `C[k]`: degrees raised by `k`, zeros below.
pub fn shift(c: &ComplexDesc, k: usize) -> ComplexDesc {
    match c {
        ComplexDesc::H(h) => ComplexDesc::H(HDescComplex {
            hranks: h.hranks.shift_right(k),
        }),
        ComplexDesc::M(m) => ComplexDesc::M(shift_m(m, k)),
    }
}

pub fn shift_m(c: &MDescComplex, k: usize) -> MDescComplex {
    let dim = |n: usize| if n < k { 0 } else { c.dim(n - k) };
    let diff = |n: usize| {
        if n < k {
            Matrix::zeros(0, 0)
        } else if n == k {
            Matrix::zeros(0, c.dim(0))
        } else {
            c.diff(n - k)
        }
    };
    MDescComplex::from_fn(c.ring, c.stable_start() + k, c.period(), dim, diff)
        .expect("shift preserves validity")
}

/// Degreewise direct sum.
pub fn direct_sum(c: &ComplexDesc, d: &ComplexDesc) -> Result<ComplexDesc> {
    match (c, d) {
        (ComplexDesc::H(a), ComplexDesc::H(b)) => Ok(ComplexDesc::H(HDescComplex {
            hranks: a.hranks.add(&b.hranks),
        })),
        (ComplexDesc::M(a), ComplexDesc::M(b)) => Ok(ComplexDesc::M(direct_sum_m(a, b)?)),
        _ => Err(Error::VariantMismatch(
            "direct sum of a homology-rank and a matrix description".into(),
        )),
    }
}

pub fn direct_sum_m(a: &MDescComplex, b: &MDescComplex) -> Result<MDescComplex> {
    if a.ring != b.ring {
        return Err(Error::VariantMismatch(
            "direct sum over different rings".into(),
        ));
    }
    let (m, p) = MDescComplex::common_frame([a, b]);
    let (a, b) = (a.unrolled(m, p), b.unrolled(m, p));
    MDescComplex::from_fn(
        a.ring,
        m,
        p,
        |n| a.dim(n) + b.dim(n),
        |n| Matrix::block_diag(&a.diff(n), &b.diff(n)),
    )
}

/// Brutal truncation keeping degrees `0..=top`.
///
/// A homology-rank description is first realized with zero differentials
/// over the rationals.
pub fn truncate(c: &ComplexDesc, top: usize) -> Result<MDescComplex> {
    match c {
        ComplexDesc::M(m) => MDescComplex::from_fn(m.ring, top, None, |n| m.dim(n), |n| m.diff(n)),
        ComplexDesc::H(h) => {
            let ranks: Vec<usize> = h
                .hranks
                .terms(top + 1)
                .iter()
                .map(|v| {
                    use num_traits::ToPrimitive;
                    v.to_integer().to_usize().ok_or_else(|| {
                        Error::Uncertifiable(format!("homology rank {v} does not fit in memory"))
                    })
                })
                .collect::<Result<_>>()?;
            MDescComplex::from_fn(
                Ring::Rationals,
                top,
                None,
                |n| ranks[n],
                |n| Matrix::zeros(ranks[n - 1], ranks[n]),
            )
        }
    }
}

/// A complex of Abel characteristic exactly `r`.
///
/// With `r = u/v` in lowest terms the homology ranks repeat with period
/// `2v`; a total of `2|u|` is spread as evenly as possible over the even
/// degrees of each period (odd degrees when `u < 0`), so the signed
/// period mean is `2u / 2v = r`.
pub fn rational_target_complex(r: &Rational) -> HDescComplex {
    use num_traits::ToPrimitive;
    if r.is_zero() {
        return HDescComplex::zero();
    }
    let u = r.numer().abs().to_usize().expect("numerator fits in usize");
    let v = r.denom().to_usize().expect("denominator fits in usize");
    let total = 2 * u;
    let slot = if r.is_negative() { 1 } else { 0 };
    let mut pattern = vec![Rational::zero(); 2 * v];
    for i in 0..v {
        let share = total / v + usize::from(i < total % v);
        pattern[2 * i + slot] = int(share as i64);
    }
    HDescComplex {
        hranks: QPSeq::periodic(pattern).simplified(),
    }
}
