//! Exact realizations of the 2-generator class-2 finite 2-groups with cyclic
//! center, and the machinery to enumerate their order-2 automorphisms that
//! fix the Frattini subgroup elementwise.
//!
//! The groups fall into three presentation families, realized here as
//! collected power-commutator normal forms with exact integer arithmetic
//! ([`group`]). On top of the element arithmetic sit subgroup computations
//! ([`structure`]), automorphism validation and enumeration ([`aut`]), the
//! catalog of explicit witness automorphisms and related constructions
//! ([`witness`]), self-test batteries ([`selftest`]) and sweep reporting
//! ([`report`]).
//!
//! The headline question: for which of these groups is every order-2
//! automorphism fixing the Frattini subgroup elementwise inner? The sweep
//! verifies, group by group at desk scale, that this holds exactly for the
//! first family with `r >= 2` — every other group yields explicit non-inner
//! witnesses, reproduced and re-checked by the witness catalog.

pub mod aut;
pub mod group;
pub mod report;
pub mod selftest;
pub mod structure;
pub mod witness;

pub use aut::{
    inner_from, inner_witness, is_inner_by_criterion, phi_fixing_involutions, star_condition,
    validate, Aut, EnumLimits, EnumMode, GenMap, StarReport,
};
pub use group::{Elem, Family, FamilyGroup, GroupError, GroupParams, DEFAULT_ORDER_CAP};
pub use structure::{
    center, centralizer, closure, derived_subgroup, frattini, is_cyclic, min_generator_count,
    omega1, subgroup_center, subgroup_min_generator_count, SubgroupSet,
};
pub use witness::{
    applicable_cases, aut_from_frattini_hom, common_extension, extend_to_involution,
    extension_kernel, match_witness_case, verify_witness, witness_gen_map, FrattiniHom,
    WitnessCase, WitnessParams, WitnessVerdict,
};
