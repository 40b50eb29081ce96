pub mod arrangement;
pub mod bitset;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod field;
pub mod freeness;
pub mod g31;
pub mod lattice;
pub mod poly;
pub mod reproduce;
