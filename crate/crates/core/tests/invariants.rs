//! Cross-module sweeps: the identities tying the rewrite engine to rooks,
//! closed forms, graph counts and the q-layer, exercised exhaustively at
//! desk scale.

use num_bigint::BigInt;

use weylorder_core::graph::graph_stirling_vector;
use weylorder_core::word::parse_word;
use weylorder_core::*;

/// All words over {x, D} of exactly the given length.
fn all_words(len: usize) -> Vec<Word> {
    (0..1usize << len)
        .map(|mask| {
            Word::new(
                (0..len)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Letter::X
                        } else {
                            Letter::D
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

#[test]
fn closed_form_matches_rewriting_for_all_words_up_to_12() {
    for len in 0..=12usize {
        for w in all_words(len) {
            let nf = normal_order(&w).unwrap();
            let top = w.d_count() + 2;
            for k in 0..=top {
                assert_eq!(closed_form_sw(&w, k), nf.coeff(k), "word {w} k {k}");
            }
        }
    }
}

#[test]
fn rooks_match_rewriting_for_dyck_words_up_to_14() {
    for half in 0..=7usize {
        for w in dyck_words(half) {
            let nf = normal_order(w.word()).unwrap();
            for k in 0..=half + 1 {
                assert_eq!(stirling_via_rooks(&w, k), nf.coeff(k), "word {w} k {k}");
            }
        }
    }
}

#[test]
fn rook_counts_match_h_graph_partitions() {
    // r_k(F_w) = {H_w, n - k}
    for half in 0..=6usize {
        for w in dyck_words(half) {
            let board = board_of(w.word());
            let counts = graph_stirling_vector(&build_h(&w), 14).unwrap();
            for k in 0..=half {
                assert_eq!(
                    rook_count(&board, k),
                    counts[half - k].clone(),
                    "word {w} k {k}"
                );
            }
        }
    }
}

#[test]
fn g_and_h_graphs_count_the_same_partitions() {
    for half in 0..=6usize {
        for w in dyck_words(half) {
            let g = graph_stirling_vector(&build_g(&w), 14).unwrap();
            let h = graph_stirling_vector(&build_h(&w), 14).unwrap();
            assert_eq!(g, h, "word {w}");
        }
    }
}

#[test]
fn leibniz_composition_matches_q_rewriting_up_to_5() {
    for r in 0..=5usize {
        for s in 0..=5usize {
            let mut text = String::new();
            text.push_str(&"x".repeat(r));
            text.push_str(&"D".repeat(r));
            text.push_str(&"x".repeat(s));
            text.push_str(&"D".repeat(s));
            let w = parse_word(&text).unwrap();
            assert_eq!(normal_order(&w).unwrap(), leibniz_compose(r, s), "{r},{s}");
            assert_eq!(
                normal_order_q(&w).unwrap(),
                leibniz_compose_q(r, s),
                "q {r},{s}"
            );
        }
    }
}

#[test]
fn stripping_the_outer_pair_shifts_q_coefficients() {
    // S^q of x w' D at k equals S^q of w' at k - 1
    for half in 0..=4usize {
        for inner in dyck_words(half) {
            let mut letters = vec![Letter::X];
            letters.extend_from_slice(inner.word().letters());
            letters.push(Letter::D);
            let outer = Word::new(letters);
            let outer_nf = normal_order_q(&outer).unwrap();
            let inner_nf = normal_order_q(inner.word()).unwrap();
            assert_eq!(outer_nf.coeff(0), QPolynomial::zero(), "word {inner}");
            for k in 1..=half + 2 {
                assert_eq!(
                    outer_nf.coeff(k),
                    inner_nf.coeff(k - 1),
                    "word {inner} k {k}"
                );
            }
        }
    }
}

#[test]
fn q_composition_law_for_dyck_pairs_up_to_8() {
    let words: Vec<DyckWord> = (0..=4usize).flat_map(dyck_words).collect();
    for w1 in &words {
        let nf1 = normal_order_q(w1.word()).unwrap();
        for w2 in &words {
            let nf2 = normal_order_q(w2.word()).unwrap();
            let joint = normal_order_q(&w1.word().concat(w2.word())).unwrap();
            assert_eq!(
                joint,
                compose_normal_forms_q(&nf1, &nf2),
                "pair {w1} | {w2}"
            );
        }
    }
}

#[test]
fn carlitz_table_matches_q_rewriting_up_to_8() {
    for n in 0..=8usize {
        let w = Word::new([Letter::X, Letter::D].repeat(n));
        let nf = normal_order_q(&w).unwrap();
        for k in 0..=n + 1 {
            assert_eq!(q_stirling_carlitz(n, k), nf.coeff(k), "n {n} k {k}");
        }
    }
}

#[test]
fn forest_counts_match_unary_and_binary_rewrite_coefficients() {
    // |F(r, n, k)| = S_{(x^r D)^n}(k), increasing forests
    for r in 1..=3usize {
        for n in 1..=5usize {
            let w = parse_word(&format!("(x^{r}D)^{n}")).unwrap();
            let nf = normal_order(&w).unwrap();
            for k in 0..=n {
                let count = enumerate_forests(r, n, k, Direction::Increasing)
                    .unwrap()
                    .len();
                assert_eq!(BigInt::from(count), nf.coeff(k), "r={r} n={n} k={k}");
            }
        }
    }
}

#[test]
fn empty_graph_stirling_reduces_to_classical() {
    for n in 0..=7usize {
        let e = LabeledGraph::empty(n);
        for k in 0..=n + 1 {
            assert_eq!(graph_stirling(&e, k).unwrap(), stirling2(n, k), "n {n} k {k}");
        }
    }
}
