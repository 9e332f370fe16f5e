//! CNF encodings, DIMACS I/O and solver adapters.

mod cdcl;
pub mod cnf;
pub mod dimacs;
pub mod encode;
pub mod solver;

pub use cdcl::Cdcl;
pub use cnf::{CnfModel, PacketType, Var};
pub use encode::{
    add_structural, canonical_pair, decode_fliples, decode_signotope, encode_enumeration, encode_extendability,
    encode_insertion, encode_structural, f4, prescribed_sign, witness_fliple_count, EnumOptions, Property,
};
pub use solver::{SatSolver, Verdict};
