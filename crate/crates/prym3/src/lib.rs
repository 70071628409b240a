//! Exact computational toolkit for etale degree-3 covers of hyperelliptic
//! curves: monodromy data, the induced 9-point correspondence of exponent 3,
//! the order-36 two-factor monodromy group and its subgroups, exact rational
//! character theory with group-algebra projectors, and the genus and moduli
//! bookkeeping tying them together.
//!
//! All arithmetic is exact (integers and arbitrary-precision rationals);
//! every value is either computed by enumeration or verified against an
//! independent route. Permutations compose left-to-right.

pub mod corresp;
pub mod covers;
pub mod group;
pub mod moduli;
pub mod perm;
pub mod ratmat;
pub mod reptheory;
pub mod suite;

pub use perm::Permutation;
pub use group::{GroupAction, PermGroup};
pub use covers::MonodromyDatum;
