//! Cayley automatic representations of the lamplighter group, the
//! Baumslag-Solitar groups `BS(p, q)` and the integral Heisenberg group, with
//! tooling to measure how far each representation is from being automatic.
//!
//! The pieces:
//! - [`words`]: letters, words, convolution of words.
//! - [`automata`]: synchronous multi-tape automata and an oracle harness.
//! - [`groups`]: exact arithmetic in the three groups.
//! - [`representations`]: encode/decode maps and multiplier automata.
//! - [`metrics`]: word metrics, the closeness profile `h(n)` and coarse
//!   comparison against scale functions.
//! - [`cli`]: the `cayley` command line front end.

pub mod automata;
pub mod cli;
pub mod groups;
pub mod metrics;
pub mod representations;
pub mod words;
