//! Symbolic engine for `h`-deformed quantum groups obtained from the
//! standard `q`-deformations by a singular change of basis at `q = 1`.
//!
//! The crate is organized in layers:
//!
//! * [`ring`] — exact arithmetic in `Q(v, h)` with `q = v^2`, including the
//!   order and limit operations at `q = 1` that make the contraction exact.
//! * [`rmatrix`] — construction of the standard trigonometric solutions of
//!   the Yang–Baxter equation for the general-linear, orthogonal and
//!   symplectic series, plus sparse tensor/matrix algebra over any scalar.
//! * [`contraction`] — the singular similarity transformations
//!   `(g x g)^{-1} R (g x g)` and their exact `q -> 1` limits, together with
//!   the matching transformation of invariant bilinear forms.
//! * [`qplane`] — quadratic relation algebras (quantum planes, their duals,
//!   and the symplectic quadric), their transport along a change of basis,
//!   and normal-form reduction modulo a relation set.
//! * [`verify`] — mechanical checks: Yang–Baxter, Hecke and involutivity
//!   identities, RTT and differential-calculus relation generation, golden
//!   comparisons against frozen expected values, and numeric spot checks.

pub mod contraction;
pub mod qplane;
pub mod ring;
pub mod rmatrix;
pub mod verify;
