//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Every comparison is exact; the stated runtime ceilings are asserted too.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylorder_core::graph::{graph_stirling_bounded, graph_stirling_vector};
use weylorder_core::qweight::q_graph_stirling_bounded;
use weylorder_core::rewrite::normal_order_with;
use weylorder_core::word::parse_word;
use weylorder_core::*;

fn dyck_words_up_to(max_len: usize) -> Vec<DyckWord> {
    (0..=max_len / 2).flat_map(dyck_words).collect()
}

fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word::new(
                (0..len)
                    .map(|_| if rng.gen::<bool>() { Letter::X } else { Letter::D })
                    .collect(),
            )
        })
        .collect()
}

/// The five routes to S_w(k) for a Dyck word, as a vector over k = 0..=n.
fn five_methods(w: &DyckWord) -> [Vec<BigInt>; 5] {
    let n = w.half_length();
    let nf = normal_order(w.word()).unwrap();
    let by_rewrite: Vec<BigInt> = (0..=n).map(|k| nf.coeff(k)).collect();

    let mut by_g = graph_stirling_vector(&build_g(w), 14).unwrap();
    let mut by_h = graph_stirling_vector(&build_h(w), 14).unwrap();
    by_g.resize(n + 1, BigInt::zero());
    by_h.resize(n + 1, BigInt::zero());

    let by_rooks: Vec<BigInt> = (0..=n).map(|k| stirling_via_rooks(w, k)).collect();
    let by_closed: Vec<BigInt> = (0..=n).map(|k| closed_form_sw(w.word(), k)).collect();
    [by_rewrite, by_g, by_h, by_rooks, by_closed]
}

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, over the {budget:?} ceiling"
    );
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let w = DyckWord::new(parse_word("xxDxxDxDDD").unwrap()).unwrap();
    let methods = five_methods(&w);
    let expected: Vec<BigInt> = [0, 0, 0, 2, 4, 1].iter().map(|&c| BigInt::from(c)).collect();
    for (name, got) in ["rewrite", "graph-g", "graph-h", "rook", "closed"]
        .iter()
        .zip(methods.iter())
    {
        assert_eq!(got, &expected, "method {name}");
    }
    assert_within(start.elapsed(), Duration::from_secs(1), "criterion 1");
    println!("criterion 1 (worked example, five methods): PASS");
}

#[test]
fn criterion_2_five_way_agreement_up_to_length_12() {
    let start = Instant::now();
    let words = dyck_words_up_to(12);
    assert_eq!(words.len(), 1 + 1 + 2 + 5 + 14 + 42 + 132);
    for w in &words {
        let [a, b, c, d, e] = five_methods(w);
        assert_eq!(a, b, "rewrite vs graph-g on {w}");
        assert_eq!(a, c, "rewrite vs graph-h on {w}");
        assert_eq!(a, d, "rewrite vs rooks on {w}");
        assert_eq!(a, e, "rewrite vs closed form on {w}");
    }
    assert_within(start.elapsed(), Duration::from_secs(120), "criterion 2");
    println!("criterion 2 (five-way agreement, all Dyck words of length <= 12): PASS");
}

#[test]
fn criterion_3_arbitrary_word_shift() {
    let start = Instant::now();
    let words = random_words(200, 10, 0);
    for w in &words {
        let assoc = associated_dyck(w);
        let plain = normal_order(w).unwrap();
        let shifted = normal_order(assoc.dyck.word()).unwrap();
        let top = w.len() + assoc.b;
        for k in 0..=top {
            assert_eq!(
                plain.coeff(k),
                shifted.coeff(k + assoc.b),
                "word {w}, k {k}, b {}",
                assoc.b
            );
        }
    }
    assert_within(start.elapsed(), Duration::from_secs(30), "criterion 3");
    println!("criterion 3 (shift identity on 200 random words): PASS");
}

#[test]
fn criterion_4_chromatic_identities() {
    for w in dyck_words_up_to(12) {
        let from_heights = chromatic_from_heights(&w);
        assert_eq!(
            chromatic_polynomial(&build_g(&w)).unwrap(),
            from_heights,
            "G of {w}"
        );
        assert_eq!(
            chromatic_polynomial(&build_h(&w)).unwrap(),
            from_heights,
            "H of {w}"
        );
    }
    for w in dyck_words_up_to(8) {
        for (name, g) in [("G", build_g(&w)), ("H", build_h(&w))] {
            let p = chromatic_polynomial(&g).unwrap();
            for t in 0..=5usize {
                assert_eq!(
                    p.eval(&BigInt::from(t)),
                    graph::count_colorings_brute(&g, t),
                    "{name} of {w} at t = {t}"
                );
            }
        }
    }
    println!("criterion 4 (chromatic identities and brute-force colorings): PASS");
}

#[test]
fn criterion_5_summation_formula() {
    for n in 1..=4usize {
        for s in 1..=4usize {
            let w = parse_word(&format!("(x^{s}D^{s})^{n}")).unwrap();
            let nf = normal_order(&w).unwrap();
            for k in 0..=s * n + 1 {
                assert_eq!(summation_sw(n, s, k), nf.coeff(k), "n={n} s={s} k={k}");
            }
        }
    }
    for n in 1..=6usize {
        for s in 1..=5usize {
            for l in 0..=(s - 1) * (n - 1) + 2 {
                let a = f_nested(n, s, l);
                assert_eq!(a, f_genfunc(n, s, l), "nested/genfunc n={n} s={s} l={l}");
                assert_eq!(a, f_stirling1(n, s, l), "nested/stirling1 n={n} s={s} l={l}");
            }
        }
    }
    // Bell identity for s = 2 up to n = 6, the displayed special case
    let mut tables = StirlingTables::new();
    for n in 1..=6usize {
        let w = parse_word(&format!("(x^2D^2)^{n}")).unwrap();
        let mut expected = BigInt::zero();
        for l in 0..=n - 1 {
            expected +=
                closed_form::binomial(n as i64 - 1, l as i64) * tables.bell(2 * n - 1 - l);
        }
        assert_eq!(bell_word(&w).unwrap(), expected, "Bell identity n={n}");
    }
    println!("criterion 5 (summation formula, f-coefficient routes, Bell identity): PASS");
}

#[test]
fn criterion_6_forest_bijections() {
    let start = Instant::now();
    for r in 1..=3usize {
        for n in 1..=5usize {
            let word = parse_word(&format!("(x^{r}D)^{n}")).unwrap();
            let nf = normal_order(&word).unwrap();
            let g = build_g_nr(n, r);
            let h = build_h_nr(n, r);
            for k in 0..=n {
                let forests = enumerate_forests(r, n, k, Direction::Decreasing).unwrap();
                let blocks = k + (r - 1) * n;
                assert_eq!(
                    BigInt::from(forests.len()),
                    graph_stirling_bounded(&g, blocks, 15).unwrap(),
                    "G count r={r} n={n} k={k}"
                );
                assert_eq!(
                    BigInt::from(forests.len()),
                    graph_stirling_bounded(&h, blocks, 15).unwrap(),
                    "H count r={r} n={n} k={k}"
                );
                assert_eq!(
                    BigInt::from(forests.len()),
                    nf.coeff(k),
                    "rewrite count r={r} n={n} k={k}"
                );
                for f in &forests {
                    let pg = forest_to_partition_g(f).unwrap();
                    assert_eq!(partition_to_forest_g(&pg, n, r).unwrap(), *f);
                    let ph = forest_to_partition_h(f).unwrap();
                    assert_eq!(partition_to_forest_h(&ph, n, r).unwrap(), *f);
                }
                // and the reverse round trip, over every partition
                let parts = graph::enumerate_partitions_bounded(&g, blocks, 15).unwrap();
                assert_eq!(parts.len(), forests.len());
                for p in &parts {
                    let f = partition_to_forest_g(p, n, r).unwrap();
                    assert_eq!(forest_to_partition_g(&f).unwrap(), *p);
                }
                let parts = graph::enumerate_partitions_bounded(&h, blocks, 15).unwrap();
                for p in &parts {
                    let f = partition_to_forest_h(p, n, r).unwrap();
                    assert_eq!(forest_to_partition_h(&f).unwrap(), *p);
                }
            }
        }
    }
    assert_within(start.elapsed(), Duration::from_secs(60), "criterion 6");
    println!("criterion 6 (forest bijections round-trip and counts, r <= 3, n <= 5): PASS");
}

#[test]
fn criterion_7_q_suite() {
    let start = Instant::now();

    // Carlitz value against the q-rewriting of (xD)^3
    let carlitz = q_stirling_carlitz(3, 2);
    assert_eq!(carlitz.to_string(), "2*q + q^2");
    let nf = normal_order_q(&parse_word("(xD)^3").unwrap()).unwrap();
    assert_eq!(carlitz, nf.coeff(2));

    // weight polynomials match q-rewriting for every Dyck word of length <= 10,
    // under the default order and five seeded orders
    for w in dyck_words_up_to(10) {
        let nf = normal_order_q(w.word()).unwrap();
        for k in 0..=w.half_length() {
            let reference = q_graph_stirling_bounded(&w, k, &LexOrder, 14).unwrap();
            assert_eq!(reference, nf.coeff(k), "word {w} k {k}");
            for seed in 0..5u64 {
                let order = SeededOrder::new(seed);
                assert_eq!(
                    q_graph_stirling_bounded(&w, k, &order, 14).unwrap(),
                    reference,
                    "word {w} k {k} seed {seed}"
                );
            }
        }
    }

    // matching-weight identity for all r, s <= 5
    for r in 0..=5usize {
        for s in 0..=5usize {
            for k in 0..=r.min(s) + 1 {
                let (lhs, rhs) = q_matching_sum(r, s, k);
                assert_eq!(lhs, rhs, "r={r} s={s} k={k}");
            }
        }
    }

    // the worked matrix: weight 19 and its encoded split 6 + 7 + 4 + 2
    let m = MatchMatrix::new(7, 6, [(2, 3), (4, 4), (5, 1), (6, 6)]).unwrap();
    assert_eq!(matrix_weight(&m), 19);
    let code = matching_encode(&m);
    assert_eq!(MatchingCode::bits(&code.sigma), "0101110");
    assert_eq!(MatchingCode::bits(&code.tau), "101101");
    assert_eq!(code.pi, vec![3, 1, 2, 4]);
    assert_eq!((7 - 4) * (6 - 4), 6);
    assert_eq!(qweight::zeros(&code.sigma), 7);
    assert_eq!(qweight::zeros(&code.tau), 4);
    assert_eq!(qweight::inversions(&code.pi), 2);

    assert_within(start.elapsed(), Duration::from_secs(120), "criterion 7");
    println!("criterion 7 (q-suite: Carlitz, weights, matching identity, worked matrix): PASS");
}

#[test]
fn criterion_8_confluence() {
    for (i, w) in random_words(100, 12, 1).iter().enumerate() {
        let reference = normal_order(w).unwrap();
        for seed in 0..3u64 {
            let randomized = normal_order_with(
                w,
                rewrite::DEFAULT_STEP_BUDGET,
                ReductionOrder::Random {
                    seed: seed + 1000 * i as u64,
                },
            )
            .unwrap();
            assert_eq!(reference, randomized, "word {w} seed {seed}");
        }
    }
    println!("criterion 8 (confluence under randomized reduction orders): PASS");
}

#[test]
fn criterion_9_q_specializes_to_classical() {
    for w in dyck_words_up_to(12) {
        let classical = normal_order(w.word()).unwrap();
        let deformed = normal_order_q(w.word()).unwrap();
        assert_eq!(classical, deformed.eval_at_one(), "Dyck word {w}");
    }
    for w in random_words(200, 10, 0) {
        let classical = normal_order(&w).unwrap();
        let deformed = normal_order_q(&w).unwrap();
        assert_eq!(classical, deformed.eval_at_one(), "word {w}");
    }
    println!("criterion 9 (q = 1 degeneration on all criteria 2-3 words): PASS");
}
