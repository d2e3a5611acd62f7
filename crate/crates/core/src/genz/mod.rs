//! Generation over the integers: lattice closure, Hermite and Smith normal
//! forms, and the `{0,1}`-matrix experiments.

mod census;
mod closure;
mod hnf;
mod int;
mod snf;
mod zmat;

pub use census::{construct_m2z16, decode_zero_one_pair, zero_one_census, M2Z16, ZeroOneCensus};
pub use closure::{
    closure_lattice, conj_invariant, det_commutator_test, generates_z, index_primes, ZGenReport, INDEX_TRIAL_BOUND,
};
pub use hnf::{hnf, hnf_i64, Lattice};
pub use snf::{generates_zn_module, smith_invariants};
pub use zmat::ZMat;
