//! Associative spectra of graph algebras.
//!
//! The graph algebra of a digraph `G = (V, E)` is the groupoid on `V ∪ {∞}`
//! with `x ∘ y = x` when `(x, y)` is an edge and `∞` otherwise. This crate
//! counts how many distinct term operations the bracketings of
//! `x1 ∘ ... ∘ xn` induce in it, by grouping bracketings whose DFS trees have
//! identical homomorphism sets into `G`. It also decides associativity and
//! antiassociativity, and provides closed-form spectra for paths, cycles and
//! small graphs.
//!
//! ```
//! use graph_spectra::{digraph::Digraph, spectrum::{spectrum, Budget}};
//!
//! let c2 = Digraph::cycle(2);
//! let s = spectrum(&c2, 6, Budget::default()).unwrap();
//! assert_eq!(s.counts(), vec![1, 1, 2, 4, 8, 16]);
//! ```

pub mod algebra;
pub mod classify;
pub mod digraph;
pub mod error;
pub mod formulas;
pub mod spectrum;
pub mod trees;

pub use error::{Error, Result};
