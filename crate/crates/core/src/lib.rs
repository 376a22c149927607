pub mod arith;
pub mod boson;
pub mod fock;
pub mod json;
pub mod rep;
pub mod selftest;
pub mod uq;
