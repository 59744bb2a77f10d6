pub mod arith;
pub mod cohft;
pub mod strata;
pub mod relations;
pub mod acceptance;
