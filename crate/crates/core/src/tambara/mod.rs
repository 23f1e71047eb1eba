//! Tambara functors over finite groups with finite table rings.

mod axioms;
mod construct;
mod functor;
mod morphism;

pub use axioms::{check_axioms, AxiomCheck, AxiomReport, AxiomStatus};
pub use construct::{
    burnside_c2_mod, constant_functor, cyclic_action, fixed_point_functor, product_functor, quotient_functor,
    trivial_action, zero_functor,
};
pub use functor::{same_group, Origin, TambaraData, TambaraFunctor};
pub use morphism::TambaraMorphism;
