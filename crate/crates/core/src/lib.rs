//! Counting abelian squares.
//!
//! An abelian square of length `2n` is a word `x x'` whose halves are
//! permutations of each other. Over a `k`-letter alphabet their number
//! `f_k(n)` is computed here exactly by several independent formulas
//! ([`counting`]), estimated asymptotically in log-space ([`asymptotics`]),
//! and checked against exhaustive string enumeration and sampling
//! ([`words`]).

pub mod asymptotics;
pub mod counting;
mod error;
pub mod words;

pub use asymptotics::{
    gaussian_1d, gaussian_multi, log_asymptotic, log_probability, log_stirling,
    nested_gaussian_integral, nested_quadrature, quadrature_1d, ratio_report, s_ml,
    s_ml_reduction_check, s_ml_reduction_values, scaled_gaussian_multi, telescoping_product,
    Envelope, LogValue, QuadraticForm, RatioRow,
};
pub use counting::{
    binomial, compositions, count_binary, count_multinomial, count_recurrence, count_split,
    multinomial, BigCount, Composition, Compositions, CountTable, Counter, Method,
};
pub use error::{Error, Result};
pub use words::{
    brute_force_count, enumerate_abelian_squares, is_abelian_square, sample_abelian_fraction,
    scan_factors, signature, Alphabet, SampleStats, Signature, SizeGuard, Word,
};
