//! Wiring diagrams, circuit algebras over them, and wheeled props.

pub mod algebra;
pub mod free;
pub mod laws;
pub mod operad;
pub mod prop;

pub use algebra::{
    check_ca_axioms, derive_modular_operad, export_table, AxiomReport, AxiomResult, CircuitAlgebra,
    EndomorphismCa, ModularOperad, PerturbedCa, TableCa, TrivialCa,
};
pub use free::{free_ca_apply, DecoratedElement, Generators};
pub use laws::check_operad_laws;
pub use operad::{enumerate_plain, gamma, WiringDiagram};
pub use prop::{
    ca_round_trip, ca_to_wheeled_prop, check_prop_bridge, check_wheeled_prop, prop_round_trip,
    wheeled_prop_to_ca, CaProp, Morphism, PropCa, PropReport, TensorWheeledProp, WheeledProp,
};
