//! The integer polynomial families behind the generator thresholds and the
//! density corrections.

mod families;
mod intpoly;

pub use families::{
    f_poly, generator_threshold, h_poly, is_irreducible_mod_p, min_generators, phi_poly, psi_poly, Irreducibility,
    MinGenReport,
};
pub use intpoly::IntPoly;
