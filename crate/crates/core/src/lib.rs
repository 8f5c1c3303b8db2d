//! Gorenstein-type classification of numerical semigroup rings and of fiber
//! products `R ×_k S` of two such rings.

pub mod scalar;
pub mod semigroup;
pub mod window;
pub mod fiber;
pub mod verify;
pub mod cli;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/overview.md")]
mod ch01 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/semigroups.md")]
mod ch02 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fibers.md")]
mod ch03 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verify.md")]
mod ch04 {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod ch05 {}
