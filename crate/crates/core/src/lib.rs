//! Exact periodic-orbit counting for the circle-doubling map `g: x ↦ 2x mod 1`
//! and its isometric 3-adic extension `f`.
//!
//! Everything is computed over arbitrary-precision integers and rationals:
//!
//! * [`arith`]: divisors, Möbius function, p-adic valuations.
//! * [`counting`]: `F_n` (points of period n), `L_n` (least period n) and
//!   `O_n` (closed orbits of length n) for `f`, `g`, their iterates and
//!   arbitrary orbit data.
//! * [`asymptotics`]: the prime-orbit counting function `π(X)`, the
//!   normalized ratio `X·π(X)/2^(X+1)` and Merten-type sums `Σ O_n/2^n`.
//! * [`zeta`]: the dynamical zeta function as an exact power series, the
//!   3-adic splitting of its logarithm and the modulus product formula used
//!   to exhibit zeros on `|z| = 1/2`.
//! * [`verify`]: the invariant suite run by `orbitkit verify`.

pub mod arith;
pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod precision;
pub mod series;
pub mod tolerances;
pub mod verify;
pub mod zeta;

pub mod cli;

pub use error::{Error, Result};
