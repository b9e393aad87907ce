//! Chain maps between matrix-described complexes.

use num_integer::Integer;

use crate::complex::{MDescComplex, Ring};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `f_n : A_n -> B_n`, explicit for degrees `0..=m` and then repeating
/// with period `p` (or zero above `m` when there is no tail).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: MDescComplex,
    target: MDescComplex,
    prefix: Vec<Matrix>,
    tail: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(
        source: MDescComplex,
        target: MDescComplex,
        prefix: Vec<Matrix>,
        tail: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::DimensionMismatch(
                "a chain map needs its degree 0 component".into(),
            ));
        }
        let f = ChainMap {
            source,
            target,
            prefix,
            tail: tail.unwrap_or_default(),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn from_fn(
        source: &MDescComplex,
        target: &MDescComplex,
        stable_start: usize,
        period: Option<usize>,
        component: impl Fn(usize) -> Matrix,
    ) -> Result<Self> {
        let prefix = (0..=stable_start).map(&component).collect();
        let tail = period.map(|p| {
            (stable_start + 1..=stable_start + p)
                .map(&component)
                .collect()
        });
        ChainMap::new(source.clone(), target.clone(), prefix, tail)
    }

    pub fn identity(c: &MDescComplex) -> Self {
        ChainMap::from_fn(c, c, c.stable_start(), c.period(), |n| {
            Matrix::identity(c.dim(n))
        })
        .expect("identity is a chain map")
    }

    pub fn zero(source: &MDescComplex, target: &MDescComplex) -> Self {
        ChainMap::from_fn(source, target, 0, None, |_| {
            Matrix::zeros(target.dim(0), source.dim(0))
        })
        .expect("zero is a chain map")
    }

    pub fn source(&self) -> &MDescComplex {
        &self.source
    }

    pub fn target(&self) -> &MDescComplex {
        &self.target
    }

    pub fn stable_start(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn period(&self) -> Option<usize> {
        (!self.tail.is_empty()).then_some(self.tail.len())
    }

    pub fn prefix_maps(&self) -> &[Matrix] {
        &self.prefix
    }

    pub fn tail_maps(&self) -> &[Matrix] {
        &self.tail
    }

    /// The component in degree `n`.
    pub fn at(&self, n: usize) -> Matrix {
        let m = self.stable_start();
        if n <= m {
            return self.prefix[n].clone();
        }
        match self.period() {
            Some(p) => self.tail[(n - m - 1) % p].clone(),
            None => Matrix::zeros(self.target.dim(n), self.source.dim(n)),
        }
    }

    /// `(stable_start, period)` covering the map and both complexes.
    pub fn frame(&self) -> (usize, Option<usize>) {
        let (m, p) = MDescComplex::common_frame([&self.source, &self.target]);
        let p = match (p, self.period()) {
            (Some(a), Some(b)) => Some(a.lcm(&b)),
            (a, b) => a.or(b),
        };
        (
            m.max(self.stable_start() + usize::from(self.tail.is_empty())),
            p,
        )
    }

    /// Every degree up to this one has been checked; beyond it all data repeats.
    pub fn check_top(&self) -> usize {
        let (m, p) = self.frame();
        m + 2 * p.unwrap_or(0) + 1
    }

    fn validate(&self) -> Result<()> {
        if self.source.ring() == Ring::Integers
            && self.target.ring() == Ring::Integers
            && !self
                .prefix
                .iter()
                .chain(&self.tail)
                .all(Matrix::is_integral)
        {
            return Err(Error::InvalidComplex(
                "chain map over Z must have integer entries".into(),
            ));
        }
        let top = self.check_top();
        for n in 0..=top {
            let f = self.at(n);
            let expect = (self.target.dim(n), self.source.dim(n));
            if f.shape() != expect {
                return Err(Error::DimensionMismatch(format!(
                    "f_{n} has shape {:?}, expected {expect:?}",
                    f.shape()
                )));
            }
            if n >= 1 {
                let lhs = &self.target.diff(n) * &f;
                let rhs = &self.at(n - 1) * &self.source.diff(n);
                if lhs != rhs {
                    return Err(Error::InvalidComplex(format!(
                        "map does not commute with the differentials in degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g o f`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target != g.source {
            return Err(Error::DimensionMismatch(
                "composable maps need a shared complex".into(),
            ));
        }
        let (m1, p1) = self.frame();
        let (m2, p2) = g.frame();
        let p = match (p1, p2) {
            (Some(a), Some(b)) => Some(a.lcm(&b)),
            (a, b) => a.or(b),
        };
        ChainMap::from_fn(&self.source, &g.target, m1.max(m2), p, |n| {
            &g.at(n) * &self.at(n)
        })
    }

    pub fn is_injective_at(&self, n: usize) -> bool {
        self.at(n).rank() == self.source.dim(n)
    }

    /// First degree where the map fails to be injective, if any.
    pub fn first_non_injective(&self) -> Option<usize> {
        (0..=self.check_top()).find(|&n| !self.is_injective_at(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_and_zero() {
        let c = MDescComplex::elementary(Ring::Integers, 1, int(2));
        let id = ChainMap::identity(&c);
        assert_eq!(id.first_non_injective(), None);
        let z = ChainMap::zero(&c, &c);
        assert_eq!(z.first_non_injective(), Some(0));
        assert_eq!(id.compose(&z).unwrap().at(1), Matrix::zeros(1, 1));
    }

    #[test]
    fn rejects_non_chain_maps() {
        let c = MDescComplex::elementary(Ring::Rationals, 1, int(1));
        let bad = ChainMap::new(
            c.clone(),
            c.clone(),
            vec![Matrix::identity(1), Matrix::zeros(1, 1)],
            None,
        );
        assert!(matches!(bad, Err(Error::InvalidComplex(_))));
        let wrong_shape = ChainMap::new(c.clone(), c, vec![Matrix::identity(2)], None);
        assert!(matches!(wrong_shape, Err(Error::DimensionMismatch(_))));
    }
}
