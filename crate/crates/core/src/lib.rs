//! Exact symbolic machinery for ideal sheaves on one-parameter degenerations.
//!
//! The crate is organised in layers:
//!
//! * [`ring`], [`monomial`], [`order`], [`poly`], [`parse`]: sparse multivariate
//!   polynomials over arbitrary-precision rationals, monomial orders, and a
//!   canonical text format with a round-tripping parser.
//! * [`ideal`], [`groebner`]: Buchberger's algorithm and the ideal operations
//!   built on it (normal forms, membership, quotient, saturation, elimination,
//!   intersection, colength).
//! * [`degeneration`]: families over a parameter `t` with a marked divisor
//!   coordinate `y`; weighted substitutions `y = t^a w`, flat limits, the
//!   critical exponent, and perfectness at a node.
//! * [`chains`]: chains of bubble components, group dilations, and the
//!   semistable-reduction driver that expands a family into a stable chain.
//!
//! All coefficient arithmetic is exact; nothing in the crate uses floating
//! point. Results are deterministic: equal inputs give identical output,
//! including generator order and formatting.

pub mod chains;
pub mod config;
pub mod degeneration;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use chains::{ChainIdeal, GroupElement, ReductionStep, ReductionTrace};
pub use degeneration::{FamilyIdeal, FlatCertificate, LimitRecord, NodeIdeal, WeightExponent};
pub use error::Error;
pub use ideal::{Colength, GroebnerBasis, Ideal};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{Polynomial, Rational};
pub use ring::Ring;
