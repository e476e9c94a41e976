//! Exact q-analogue arithmetic over arbitrary-precision integers and
//! mechanical verification of binomial congruences modulo powers of `[p]_q`,
//! including Straub's q-analogue of Ljunggren's congruence, the q-Lucas and
//! q-Chu-Vandermonde identities, the Shi-Pan sum, and the Andrews/Pan
//! q-analogues of Glaisher's congruence.

pub mod congruences;
pub mod polyring;
pub mod qcombinatorics;

pub use congruences::{
    congruent, is_prime, modulus_poly, straub_rhs, CongruenceCase, CongruenceError, Strategy,
    Theorem, VerificationReport,
};
pub use polyring::{Degree, IntPoly, Modulus, PolyError};
pub use qcombinatorics::{
    binomial_int, gaussian_binomial, gaussian_binomial_mod, q_factorial, q_integer,
};
