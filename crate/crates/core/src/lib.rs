//! Exact-arithmetic workbench for 2-categories of projective bimodules over
//! bound path algebras on integer vertex windows, their cells and cell
//! 2-representations, the fan Adelman abelianisation, the coalgebra
//! 1-morphism of a cell, and the Coxeter combinatorics behind singular
//! Soergel bimodules.
//!
//! Module layering (each depends only on those above it):
//! `exactlin` → `pathalg` → `bimod2cat` → `cells`, `adelman` → `coalgebra`;
//! `coxeter` is independent; `cli` drives everything.

pub mod adelman;
pub mod bimod2cat;
pub mod cells;
pub mod cli;
pub mod coalgebra;
pub mod coxeter;
pub mod exactlin;
pub mod fixtures;
pub mod pathalg;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("vertex {0} outside the window")]
    OutOfWindow(i64),
    #[error("nilpotency bound violated: {0}")]
    Nilpotency(String),
    #[error("index in the window margin: {0}")]
    MarginViolation(String),
    #[error("Z is not local: {0}")]
    LocalityFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not in the cell 2-representation: {0}")]
    NotInCellRep(String),
    #[error("indeterminate cell: {0}")]
    IndeterminateCell(String),
    #[error("construction bug: {0}")]
    ConstructionBug(String),
    #[error("equivalence check failed: {0}")]
    EquivalenceFailed(String),
    #[error("unsupported Coxeter label {0}")]
    UnsupportedLabel(String),
    #[error("parabolic subgroup is infinite: {0}")]
    InfiniteParabolic(String),
    #[error("subset inclusion fails: {0}")]
    BadInclusion(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
