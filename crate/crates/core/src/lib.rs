//! Finite-difference solver for the time-fractional Burgers equation
//!
//! ```text
//!     D_t^(alpha,rho,gamma,omega) u + u u_x = u_xx + f      on (0, L) x (0, T]
//!     u(0, t) = u(L, t) = 0,    u(x, 0) = phi(x)
//! ```
//!
//! where `D_t` is a Caputo-type fractional derivative whose memory kernel is a
//! three-parameter Mittag-Leffler (Prabhakar) function,
//!
//! ```text
//!     D_t u (t) = int_0^t (t-s)^(-alpha) E_{rho,1-alpha}^{-gamma}(omega (t-s)^rho) u'(s) ds .
//! ```
//!
//! The time discretization is an L1-type convolution quadrature built from
//! Prabhakar-function increments ([`cpkernel`]); space is handled by central
//! differences with a skew-symmetric product form of the convection term
//! ([`discretization`]); the nonlinear implicit step is solved by a Newton
//! linearization with tridiagonal elimination ([`solver`]). Manufactured
//! problems with known exact solutions drive the convergence studies
//! ([`manufactured`]), and [`verify`] bundles the runtime invariant checks.

pub mod cpkernel;
pub mod discretization;
pub mod error;
mod gamma;
mod quad;
pub mod manufactured;
pub mod mlf;
pub mod solver;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
