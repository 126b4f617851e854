//! Core of a type checker for a predicative calculus of constructions with
//! inductive families and structural fixpoints, plus a set-theoretic model.
#![no_std]

extern crate alloc;

pub mod diag;
pub mod guard;
pub mod kernel;
pub mod model;
pub mod pretty;
pub mod reduction;
pub mod syntax;
