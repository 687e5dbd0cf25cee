//! Free-group words, the Magnus embedding into truncated power series, and Hall bases.

mod expr;
mod hall;
mod parse;
mod series;
mod word;

pub use expr::{Node, WordExpr, WORD_LENGTH_LIMIT};
pub use hall::{hall_basis, lie_element, witt_number, Commutator, HallBasis, MAX_CLASS};
pub use parse::{parse_expr, parse_word};
pub use series::{
    degree_offset, expand, format_monomial, generator_power, monomial_at, monomial_count, monomial_index, TruncSeries,
};
pub use word::FreeWord;

/// Left Fox-derivative coefficient: the part of `s` starting with `x_i`, letter stripped (1-based `i`).
pub fn left_letter_quotient(s: &TruncSeries, i: usize) -> TruncSeries {
    s.left_letter_quotient(i - 1)
}
