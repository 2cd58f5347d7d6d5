pub mod arith;
pub mod aut;
pub mod catalog;
pub mod gl2p;
pub mod group;
pub mod matrix_form;
