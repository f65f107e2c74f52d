//! The group `Ḡ[x₁,…,xₙ]` of polynomial functions `Gⁿ → G`.

mod function;
mod group;

pub use function::{domain_size, index_tuple, tuple_index, PolyFunction, MAX_DOMAIN};
pub use group::{
    build_polyfun_group, standard_generators, PolyFunGroup, PolyFunOptions, Realization, Strategy,
    DEFAULT_CAP, DEFAULT_DEGREE_LIMIT, NAIVE_VALUE_BUDGET,
};
