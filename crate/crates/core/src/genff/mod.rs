//! Generation testing and counting over finite fields.

mod closure;
mod construct;
mod count;
mod formulas;
mod shape;
mod structural;

pub use closure::{generates, subalgebra_dimension};
pub use construct::{two_generators_ext, TwoGenerators};
pub use count::{brute_count, generates_power, generates_power_capped, CountMethod, CountParams, CountReport, PowerTester};
pub use formulas::{alpha, count_field_type_subalgebras, count_gen_power_formula, g_closed_form, gen_count, lower_bound};
pub use shape::{AlgebraShape, Block, GenTuple};
pub use structural::generates_structural;
