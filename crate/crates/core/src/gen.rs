//! Seeded random instances with known answers.
//!
//! Complexes are assembled from spheres (a single generator with zero
//! boundary) and disks (`d t = λ b` with `λ ≠ 0`), then disguised by
//! random invertible changes of basis in every degree. Over the rationals
//! the homology rank in degree `n` is exactly the number of spheres there.

use rand::Rng;

use crate::chainmap::ChainMap;
use crate::complex::{MDescComplex, Ring};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rational::{frac, int, Rational};
use crate::seq::QPSeq;

pub fn random_rational(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> Rational {
    frac(
        rng.random_range(-num_bound..=num_bound),
        rng.random_range(1..=den_bound),
    )
}

/// A sequence with prefix length `<= max_prefix`, period `<= max_period`
/// and tail polynomials of degree `<= max_degree`.
pub fn random_qpseq(
    rng: &mut impl Rng,
    max_prefix: usize,
    max_period: usize,
    max_degree: usize,
) -> QPSeq {
    let prefix = (0..rng.random_range(0..=max_prefix))
        .map(|_| random_rational(rng, 20, 6))
        .collect();
    let period = rng.random_range(1..=max_period);
    let tail = (0..period)
        .map(|_| {
            let deg = rng.random_range(0..=max_degree);
            Poly::new((0..=deg).map(|_| random_rational(rng, 9, 4)).collect())
        })
        .collect();
    QPSeq::new(prefix, period, tail).expect("period matches tail")
}

fn random_scalar(rng: &mut impl Rng, ring: Ring) -> Rational {
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    match ring {
        Ring::Integers => int(sign * rng.random_range(1..=3)),
        Ring::Rationals => frac(sign * rng.random_range(1..=3), rng.random_range(1..=2)),
    }
}

/// Invertible over the ring (unimodular over the integers).
pub fn random_invertible(rng: &mut impl Rng, ring: Ring, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i != j {
            let k = int(rng.random_range(-2..=2));
            for c in 0..n {
                let v = m.get(i, c) + &k * m.get(j, c);
                m.set(i, c, v);
            }
        }
    }
    if ring == Ring::Rationals {
        let i = rng.random_range(0..n);
        let s = random_scalar(rng, ring);
        for c in 0..n {
            let v = m.get(i, c) * &s;
            m.set(i, c, v);
        }
    }
    m
}

/// A generated complex together with the sphere/disk data behind it.
#[derive(Clone, Debug)]
pub struct Structured {
    pub complex: MDescComplex,
    m: usize,
    period: Option<usize>,
    /// Spheres in degree `n`, for `n` in `0..=m+p` (or `0..=m`).
    spheres: Vec<usize>,
    /// Disks with top cell in degree `n`, for `n` in `0..=m+p+1`.
    disks: Vec<usize>,
    /// Boundary scalar of each disk, indexed like `disks`.
    scalars: Vec<Vec<Rational>>,
    /// Basis change applied in degree `n`.
    bases: Vec<Matrix>,
}

impl Structured {
    /// Homology ranks over the rationals, known by construction.
    pub fn hranks(&self) -> QPSeq {
        let m = self.complex.stable_start();
        let prefix = self.spheres[..=m].iter().map(|&s| int(s as i64)).collect();
        match self.complex.period() {
            Some(p) => {
                let tail = (1..=p)
                    .map(|j| Poly::constant(int(self.spheres[m + j] as i64)))
                    .collect();
                QPSeq::new(prefix, p, tail).expect("period matches tail")
            }
            None => QPSeq::new(prefix, 1, vec![Poly::zero()]).expect("one tail"),
        }
    }

    fn folded(&self, n: usize) -> usize {
        let m = self.m;
        match self.period {
            Some(p) if n > m + p => m + 1 + (n - m - 1) % p,
            _ => n,
        }
    }

    fn sph(&self, n: usize) -> usize {
        self.spheres.get(self.folded(n)).copied().unwrap_or(0)
    }

    fn dsk(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let m = self.m;
        match self.period {
            Some(p) if n > m + p + 1 => self.disks[m + 2 + (n - m - 2) % p],
            _ => self.disks.get(n).copied().unwrap_or(0),
        }
    }

    fn scalar(&self, n: usize, i: usize) -> Rational {
        let m = self.m;
        let n = match self.period {
            Some(p) if n > m + p + 1 => m + 2 + (n - m - 2) % p,
            _ => n,
        };
        self.scalars[n][i].clone()
    }

    fn basis(&self, n: usize) -> Matrix {
        self.bases[self.folded(n)].clone()
    }
}

/// A complex with stable start `m` and period `period` (`None` = bounded)
/// whose module ranks stay at most `max_dim`.
pub fn random_structured(
    rng: &mut impl Rng,
    ring: Ring,
    m: usize,
    period: Option<usize>,
    max_dim: usize,
) -> Structured {
    let top = m + period.unwrap_or(0);
    // Everything from degree m + p on repeats what happened p degrees earlier.
    let wrap = |n: usize| period.filter(|&p| n >= m + p).map(|p| n - p);
    let half = max_dim / 2;
    let mut disks = vec![0usize; top + 2];
    let mut scalars: Vec<Vec<Rational>> = vec![Vec::new(); top + 2];
    let last = if period.is_some() { top + 1 } else { top };
    for n in 1..=last {
        match wrap(n) {
            Some(k) => {
                disks[n] = disks[k];
                scalars[n] = scalars[k].clone();
            }
            None => {
                disks[n] = rng.random_range(0..=half);
                scalars[n] = (0..disks[n]).map(|_| random_scalar(rng, ring)).collect();
            }
        }
    }
    let mut spheres = vec![0usize; top + 1];
    for n in 0..=top {
        spheres[n] = match wrap(n) {
            Some(k) => spheres[k],
            None => {
                let room = max_dim.saturating_sub(disks[n] + disks[n + 1]);
                rng.random_range(0..=room.min(2))
            }
        };
    }
    let dims: Vec<usize> = (0..=top)
        .map(|n| spheres[n] + disks[n] + disks[n + 1])
        .collect();
    let mut bases: Vec<Matrix> = Vec::with_capacity(top + 1);
    for (n, &dim) in dims.iter().enumerate() {
        let b = match wrap(n) {
            Some(k) => bases[k].clone(),
            None => random_invertible(rng, ring, dim),
        };
        bases.push(b);
    }
    let mut s = Structured {
        complex: MDescComplex::zero(ring),
        m,
        period,
        spheres,
        disks,
        scalars,
        bases,
    };
    let diff = |n: usize| {
        let standard = standard_diff(&s, n);
        let inv = s.basis(n).inverse().expect("invertible basis");
        &(&s.basis(n - 1) * &standard) * &inv
    };
    let dim = |n: usize| s.sph(n) + s.dsk(n) + s.dsk(n + 1);
    let complex = MDescComplex::from_fn(ring, m, period, dim, diff)
        .expect("spheres and disks form a complex");
    s.complex = complex;
    s
}

/// Differential in the sphere/disk basis `[spheres | tops | bottoms]`.
fn standard_diff(s: &Structured, n: usize) -> Matrix {
    let rows = s.sph(n - 1) + s.dsk(n - 1) + s.dsk(n);
    let cols = s.sph(n) + s.dsk(n) + s.dsk(n + 1);
    let mut d = Matrix::zeros(rows, cols);
    let bottom = s.sph(n - 1) + s.dsk(n - 1);
    for i in 0..s.dsk(n) {
        d.set(bottom + i, s.sph(n) + i, s.scalar(n, i));
    }
    d
}

/// A complex with random frame: stable start `<= max_prefix`, period
/// `<= max_period` (bounded when `max_period == 0`).
pub fn random_mdesc(
    rng: &mut impl Rng,
    ring: Ring,
    max_dim: usize,
    max_prefix: usize,
    max_period: usize,
) -> Structured {
    let m = rng.random_range(0..=max_prefix);
    let period = (max_period > 0).then(|| rng.random_range(1..=max_period));
    random_structured(rng, ring, m, period, max_dim)
}

fn random_block(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut b = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            b.set(i, j, int(rng.random_range(-2..=2)));
        }
    }
    b
}

/// A random chain map between two rational complexes built on the same
/// frame.
///
/// In sphere/disk bases the admissible blocks are: spheres to spheres or
/// bottoms, tops to anything except that the top-to-top block `K`
/// determines the bottom-to-bottom block through the boundary scalars.
pub fn random_chain_map(rng: &mut impl Rng, a: &Structured, b: &Structured) -> Result<ChainMap> {
    let (ac, bc) = (&a.complex, &b.complex);
    assert_eq!(
        ac.ring(),
        Ring::Rationals,
        "chain maps are generated over the rationals"
    );
    assert_eq!(
        (ac.stable_start(), ac.period()),
        (bc.stable_start(), bc.period()),
        "complexes must share a frame"
    );
    let m = ac.stable_start();
    let p = ac.period();
    let top = m + p.unwrap_or(0);
    // Free blocks per degree: (sph->sph, sph->bot, top->sph, top->top, top->bot).
    let mut free: Vec<[Matrix; 5]> = Vec::with_capacity(top + 2);
    for n in 0..=top + 1 {
        let reuse = p.filter(|&p| n >= m + p).map(|p| n - p);
        let blocks = match reuse {
            Some(k) => free[k].clone(),
            None => [
                random_block(rng, b.sph(n), a.sph(n)),
                random_block(rng, b.dsk(n + 1), a.sph(n)),
                random_block(rng, b.sph(n), a.dsk(n)),
                random_block(rng, b.dsk(n), a.dsk(n)),
                random_block(rng, b.dsk(n + 1), a.dsk(n)),
            ],
        };
        free.push(blocks);
    }
    let fold = |n: usize| match p {
        Some(p) if n > top + 1 => m + 2 + (n - m - 2) % p,
        _ => n,
    };
    let standard = |n: usize| {
        let blocks = &free[fold(n)];
        let (sa, ta) = (a.sph(n), a.dsk(n));
        let (sb, tb) = (b.sph(n), b.dsk(n));
        let mut f = Matrix::zeros(sb + tb + b.dsk(n + 1), sa + ta + a.dsk(n + 1));
        f.paste(0, 0, &blocks[0]);
        f.paste(sb + tb, 0, &blocks[1]);
        f.paste(0, sa, &blocks[2]);
        f.paste(sb, sa, &blocks[3]);
        f.paste(sb + tb, sa, &blocks[4]);
        // Bottom of A-disk i (top in degree n+1) goes to sum_j K_ji mu_j / lambda_i of B-bottoms.
        let k = &free[fold(n + 1)][3];
        for i in 0..a.dsk(n + 1) {
            let lambda = a.scalar(n + 1, i);
            for j in 0..b.dsk(n + 1) {
                let v = k.get(j, i) * b.scalar(n + 1, j) / &lambda;
                f.set(sb + tb + j, sa + ta + i, v);
            }
        }
        f
    };
    ChainMap::from_fn(ac, bc, m, p, |n| {
        let inv = a.basis(n).inverse().expect("invertible basis");
        &(&b.basis(n) * &standard(n)) * &inv
    })
}

/// `f : A -> A ⊕ E` followed by a change of basis in the target, for a
/// random bounded `E` on the same frame.
pub fn random_injection(rng: &mut impl Rng, a: &Structured, max_dim: usize) -> Result<ChainMap> {
    let ac = &a.complex;
    let e = random_structured(rng, ac.ring(), ac.stable_start(), ac.period(), max_dim);
    let sum = crate::complex::direct_sum_m(ac, &e.complex)?;
    let (m, p) = MDescComplex::common_frame([ac, &e.complex]);
    let top = m + p.unwrap_or(0);
    let mut bases: Vec<Matrix> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let b = match p.filter(|&p| n >= m + p) {
            Some(p) => bases[n - p].clone(),
            None => random_invertible(rng, ac.ring(), sum.dim(n)),
        };
        bases.push(b);
    }
    let fold = |n: usize| match p {
        Some(p) if n > top => m + 1 + (n - m - 1) % p,
        _ => n,
    };
    let basis = |n: usize| bases[fold(n)].clone();
    let target = MDescComplex::from_fn(
        ac.ring(),
        m,
        p,
        |n| sum.dim(n),
        |n| &(&basis(n - 1) * &sum.diff(n)) * &basis(n).inverse().expect("invertible"),
    )?;
    ChainMap::from_fn(ac, &target, m, p, |n| {
        let inc = Matrix::vstack(
            &Matrix::identity(ac.dim(n)),
            &Matrix::zeros(e.complex.dim(n), ac.dim(n)),
        );
        &basis(n) * &inc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn structured_complexes_have_known_homology() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let ring = if rng.random_bool(0.5) {
                Ring::Integers
            } else {
                Ring::Rationals
            };
            let s = random_mdesc(&mut rng, ring, 6, 5, 3);
            assert!(s.complex.homology_ranks().same_values(&s.hranks()));
            assert!((0..20).all(|n| s.complex.dim(n) <= 6));
        }
    }

    #[test]
    fn generated_maps_are_chain_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = rng.random_range(0..=4);
            let p = rng.random_bool(0.5).then(|| rng.random_range(1..=3));
            let a = random_structured(&mut rng, Ring::Rationals, m, p, 3);
            let b = random_structured(&mut rng, Ring::Rationals, m, p, 3);
            random_chain_map(&mut rng, &a, &b).unwrap();
            let f = random_injection(&mut rng, &a, 3).unwrap();
            assert_eq!(f.first_non_injective(), None);
        }
    }
}
