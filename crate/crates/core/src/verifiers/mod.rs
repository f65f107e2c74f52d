//! Exhaustive and bounded checks of the structural claims about `Ḡ[x₁,…,xₙ]`.

mod laws;
mod lemma3;
mod omega;
mod report;
mod theorem11;
mod theorem12;

pub use laws::{
    is_law, is_polyfun_law, law_counterexample, laws_agree, polyfun_law_counterexample, LawWord,
};
pub use lemma3::{
    all_conjugators, default_sequence, verify_lemma32, verify_lemma35, RewriteOptions,
    MAX_CONSTRUCTIVE_VECTORS,
};
pub use omega::{
    evaluate_witness, lemma22_empirical, omega_bounded, omega_target, OmegaBounds, OmegaPair,
    OmegaResult, OmegaWitness, DEFAULT_K_MAX,
};
pub use report::{Check, VerificationReport, Verdict};
pub use theorem11::{
    commutator_generation_bound, commutator_generation_report, iterated_commutator_function,
    theorem11_finite_check, CommutatorBound, DEFAULT_MAX_M,
};
pub use theorem12::{conjugation_generators, psi_generators, same_subgroup, theorem12_checks};
