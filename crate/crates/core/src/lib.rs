//! Exact Abel-method Euler characteristics of unbounded chain complexes
//! whose rank sequences are eventually quasi-polynomial.

pub mod chainmap;
pub mod complex;
pub mod document;
pub mod error;
pub mod gen;
pub mod kzero;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod roots;
pub mod seq;
pub mod ses;
pub mod summation;

pub use complex::{ComplexDesc, HDescComplex, MDescComplex, Ring};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::Poly;
pub use ratfun::{ExtLimit, RatFun};
pub use rational::Rational;
pub use seq::{Classification, GrowthClass, QPSeq};
