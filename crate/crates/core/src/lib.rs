//! Exact computations with filtered chain complexes over `Q` and `F_p`.
//!
//! A filtered object is modelled as a [`sequence::Sequence`]: a
//! `Z`-indexed diagram of finite chain complexes that is constant (with
//! identity maps) outside a finite window. On top of that the crate computes
//! associated gradeds, completions, graded equivalences, the Day convolution
//! and internal hom of sequences, the spectral sequence of a sequence, and
//! associated graded algebras of filtered algebras.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod chain;
pub mod error;
pub mod exactlin;
pub mod filtalg;
pub mod generate;
pub mod graded;
pub mod monoidal;
pub mod sequence;
pub mod specseq;

pub use error::Error;
