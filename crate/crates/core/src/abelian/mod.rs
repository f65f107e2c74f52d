//! Integer matrices, annihilating polynomials of automorphisms of finitely
//! generated abelian groups, and shift-word rewriting for automorphisms of finite
//! groups.

mod fgab;
mod matrix;
mod poly;
mod shift;
mod soluble;

pub use fgab::{FgAbelianAutomorphism, FgAbelianGroup, TORSION_ORDER_LIMIT};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use poly::IntPolynomial;
pub use shift::{
    check_relations, reduce_by_period, rewrite_multi, rewrite_power, FiniteAutomorphism,
    MultiShiftWord, ShiftWord, DEFAULT_MAX_WORD_LEN,
};
pub use soluble::{
    apply_polynomial, box_products, lemma32_word, lemma35_bounded_generators, period_relation,
    relation_for, AbelianSection, BoundedGenerators, SectionStep,
};
