//! Exact computer algebra for normal ordering in the (q-deformed) Weyl
//! algebra, and the combinatorics of the generalized Stirling sequences that
//! arise from it.
//!
//! A word over the alphabet `{x, D}` (with `Dx = xD + 1`, or `Dx = qxD + 1`
//! in the deformed algebra) has a unique normal order
//! `x^(m-n) sum_k S_w(k) x^k D^k`. This crate computes the coefficients
//! `S_w(k)` by five independent routes and cross-verifies them:
//!
//! - literal term rewriting ([`rewrite`]),
//! - counting independent-set partitions of the quasi-threshold graph of the
//!   word ([`graph::build_g`]),
//! - the same count on the indifference graph of its staircase path
//!   ([`graph::build_h`]),
//! - non-attacking rook placements on the Ferrers board above the path
//!   ([`ferrers`]),
//! - an alternating-sum closed form over the path heights ([`closed_form`]).
//!
//! On top of these sit a positive summation formula for words of the shape
//! `(x^s D^s)^n`, bijections between r-ary forests and restricted partitions
//! ([`forest`]), and a q-analog layer ([`qpoly`], [`qweight`]) where
//! coefficients become polynomials in q generated by partition weights.

pub mod closed_form;
pub mod ferrers;
pub mod forest;
pub mod graph;
pub mod poly;
pub mod qpoly;
pub mod qweight;
pub mod rewrite;
pub mod word;

pub use closed_form::{
    bell, bell_word, closed_form_sw, f_genfunc, f_nested, f_stirling1, stirling1_unsigned,
    stirling2, summation_sw, StirlingTables,
};
pub use ferrers::{board_of, rook_count, stirling_via_rooks, FerrersBoard};
pub use forest::{
    enumerate_forests, forest_to_partition_g, forest_to_partition_h, partition_to_forest_g,
    partition_to_forest_h, Direction, ForestError, RaryForest,
};
pub use graph::{
    build_fan, build_g, build_g_nr, build_h, build_h_nr, chromatic_from_heights,
    chromatic_polynomial, enumerate_partitions, graph_stirling, stirling_from_chromatic,
    GraphError, LabeledGraph, SetPartition,
};
pub use poly::IntPolynomial;
pub use qpoly::{q_binomial, q_factorial, q_int, q_stirling_carlitz, QPolynomial};
pub use qweight::{
    matching_decode, matching_encode, matrix_weight, partition_weight, q_graph_stirling,
    q_matching_sum, BlockOrder, LexOrder, MatchMatrix, MatchingCode, QWeightError, SeededOrder,
};
pub use rewrite::{
    compose_normal_forms, compose_normal_forms_q, leibniz_compose, leibniz_compose_q,
    normal_order, normal_order_q, NormalForm, QNormalForm, ReductionOrder, RewriteError,
};
pub use word::{
    associated_dyck, dyck_words, heights, irreducible_decomposition, matched_pairs, parse_word,
    path_geometry, AssociatedDyck, DyckWord, Letter, PathGeometry, Word, WordError,
};
