//! Words over the two-letter alphabet {x, D}, Dyck words, and the lattice-path
//! geometry (heights, peaks, squares) attached to them.
//!
//! A word corresponds to a staircase path: reading left to right, each `x` is a
//! unit step in the positive y direction and each `D` a unit step in the
//! positive x direction. Unit squares are labeled by their top-right corner,
//! and all positions are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default cap on the expanded length accepted by [`parse_word`].
pub const DEFAULT_MAX_WORD_LEN: usize = 10_000;

/// One letter of the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// The multiplication-by-x (creation) symbol.
    X,
    /// The differentiation (annihilation) symbol.
    D,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X => write!(f, "x"),
            Letter::D => write!(f, "D"),
        }
    }
}

/// A finite word over {x, D}, stored fully expanded.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Errors from word parsing and Dyck validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    /// The input text does not conform to the word grammar.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax {
        /// Byte offset of the offending token.
        pos: usize,
        /// Human-readable description.
        msg: String,
    },
    /// The expanded word would exceed the configured maximum length.
    #[error("expanded length {len} exceeds maximum {max}")]
    TooLong {
        /// Expanded length implied by the input.
        len: usize,
        /// Configured maximum.
        max: usize,
    },
    /// The word is not a Dyck word.
    #[error("not a Dyck word: {0}")]
    NotDyck(Word),
}

impl Word {
    /// Builds a word from a letter sequence.
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The empty word (the identity operator).
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of x's (written m throughout).
    pub fn x_count(&self) -> usize {
        self.letters.iter().filter(|l| **l == Letter::X).count()
    }

    /// Number of D's (written n throughout).
    pub fn d_count(&self) -> usize {
        self.len() - self.x_count()
    }

    /// Net x-power of the word, `x_count - d_count`.
    pub fn offset(&self) -> i64 {
        self.x_count() as i64 - self.d_count() as i64
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    /// `self` repeated `n` times.
    pub fn repeat(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word::new(letters)
    }

    /// True iff the word is balanced and every prefix has at least as many
    /// x's as D's.
    pub fn is_dyck(&self) -> bool {
        let mut excess: i64 = 0;
        for l in &self.letters {
            match l {
                Letter::X => excess += 1,
                Letter::D => excess -= 1,
            }
            if excess < 0 {
                return false;
            }
        }
        excess == 0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// A validated Dyck word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckWord {
    word: Word,
}

impl DyckWord {
    /// Validates the Dyck conditions.
    pub fn new(word: Word) -> Result<Self, WordError> {
        if word.is_dyck() {
            Ok(DyckWord { word })
        } else {
            Err(WordError::NotDyck(word))
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    /// Number of x's; equal to the number of D's.
    pub fn half_length(&self) -> usize {
        self.word.len() / 2
    }
}

impl std::ops::Deref for DyckWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.word
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// The Dyck word `x^a w D^b` associated with an arbitrary word `w`,
/// with `a` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedDyck {
    /// Minimal number of x's prepended so every prefix is nonnegative.
    pub a: usize,
    /// Number of D's appended to balance.
    pub b: usize,
    /// The resulting Dyck word.
    pub dyck: DyckWord,
}

/// Computes the associated Dyck word of `w`.
///
/// `a` is the maximal deficit of x's over any prefix and `b` restores the
/// balance, so `x^a w D^b` is the associated Dyck word.
pub fn associated_dyck(w: &Word) -> AssociatedDyck {
    let mut excess: i64 = 0;
    let mut deficit: i64 = 0;
    for l in w.letters() {
        match l {
            Letter::X => excess += 1,
            Letter::D => excess -= 1,
        }
        deficit = deficit.max(-excess);
    }
    let a = deficit as usize;
    let b = (a as i64 + w.offset()) as usize;
    let mut letters = vec![Letter::X; a];
    letters.extend_from_slice(w.letters());
    letters.extend(std::iter::repeat(Letter::D).take(b));
    let dyck = DyckWord::new(Word::new(letters)).expect("completion is Dyck by construction");
    AssociatedDyck { a, b, dyck }
}

/// Heights of the x's: entry i is the excess of x's over D's in the prefix
/// ending immediately before the i-th x.
pub fn heights(w: &DyckWord) -> Vec<usize> {
    let mut hs = Vec::with_capacity(w.half_length());
    let mut excess: i64 = 0;
    for l in w.word().letters() {
        match l {
            Letter::X => {
                hs.push(excess as usize);
                excess += 1;
            }
            Letter::D => excess -= 1,
        }
    }
    hs
}

/// Splits a Dyck word into its irreducible components, i.e. the maximal
/// segments that return to balance only at their endpoints.
pub fn irreducible_decomposition(w: &DyckWord) -> Vec<DyckWord> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut excess: i64 = 0;
    for (i, l) in w.word().letters().iter().enumerate() {
        match l {
            Letter::X => excess += 1,
            Letter::D => excess -= 1,
        }
        if excess == 0 {
            let part = Word::new(w.word().letters()[start..=i].to_vec());
            parts.push(DyckWord::new(part).expect("segment returns to balance"));
            start = i + 1;
        }
    }
    parts
}

/// Stack-matching of x's to D's: each D matches the nearest unmatched x to
/// its left. Pairs are 1-based letter positions, listed by x position.
pub fn matched_pairs(w: &DyckWord) -> Vec<(usize, usize)> {
    let mut stack = Vec::new();
    let mut pairs = vec![(0usize, 0usize); w.half_length()];
    let mut xs_seen = 0;
    for (i, l) in w.word().letters().iter().enumerate() {
        match l {
            Letter::X => {
                stack.push((xs_seen, i + 1));
                xs_seen += 1;
            }
            Letter::D => {
                let (xi, xpos) = stack.pop().expect("Dyck word has no unmatched D");
                pairs[xi] = (xpos, i + 1);
            }
        }
    }
    pairs
}

/// The geometric artifacts of a Dyck path, computed in one traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGeometry {
    /// Height of each x, left to right.
    pub heights: Vec<usize>,
    /// Peaks (x, y): an up-step into (x-1, y) followed by a right-step to (x, y).
    pub peaks: Vec<(usize, usize)>,
    /// Labels of unit squares below the staircase and completely above the
    /// diagonal.
    pub inner_squares: BTreeSet<(usize, usize)>,
    /// Labels of unit squares above the staircase, inside the bounding box.
    pub ferrers_squares: BTreeSet<(usize, usize)>,
}

/// Computes heights, peaks, the inner-square set and the board above the path.
pub fn path_geometry(w: &DyckWord) -> PathGeometry {
    let n = w.half_length();
    let hs = heights(w);

    // y-coordinate of each horizontal step: x's seen before the i-th D.
    let mut d_levels = Vec::with_capacity(n);
    let mut peaks = Vec::new();
    let mut xs_seen = 0;
    let mut ds_seen = 0;
    let letters = w.word().letters();
    for (i, l) in letters.iter().enumerate() {
        match l {
            Letter::X => xs_seen += 1,
            Letter::D => {
                d_levels.push(xs_seen);
                ds_seen += 1;
                if i > 0 && letters[i - 1] == Letter::X {
                    peaks.push((ds_seen, xs_seen));
                }
            }
        }
    }

    let mut inner_squares = BTreeSet::new();
    let mut ferrers_squares = BTreeSet::new();
    for (i, &level) in d_levels.iter().enumerate() {
        let col = i + 1;
        for j in (col + 1)..=level {
            inner_squares.insert((col, j));
        }
        for j in (level + 1)..=n {
            ferrers_squares.insert((col, j));
        }
    }

    PathGeometry {
        heights: hs,
        peaks,
        inner_squares,
        ferrers_squares,
    }
}

/// All Dyck words with `half_length` x's, in lexicographic order (x < D).
pub fn dyck_words(half_length: usize) -> Vec<DyckWord> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(2 * half_length);
    fn go(current: &mut Vec<Letter>, xs: usize, ds: usize, n: usize, out: &mut Vec<DyckWord>) {
        if current.len() == 2 * n {
            out.push(DyckWord::new(Word::new(current.clone())).expect("balanced by construction"));
            return;
        }
        if xs < n {
            current.push(Letter::X);
            go(current, xs + 1, ds, n, out);
            current.pop();
        }
        if ds < xs {
            current.push(Letter::D);
            go(current, xs, ds + 1, n, out);
            current.pop();
        }
    }
    go(&mut current, 0, 0, half_length, &mut out);
    out
}

/// Parses the word grammar with the default expansion cap.
///
/// Grammar: `expr := factor+ ; factor := term ['^' posint] ; term := 'x' | 'D'
/// | '(' expr ')'`, whitespace ignored. The empty string parses to the empty
/// word.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    parse_word_with_limit(text, DEFAULT_MAX_WORD_LEN)
}

/// As [`parse_word`] but with an explicit expansion cap.
pub fn parse_word_with_limit(text: &str, max_len: usize) -> Result<Word, WordError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        max_len,
        depth: 0,
    };
    let word = parser.expr(true)?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(word)
}

const MAX_PAREN_DEPTH: usize = 256;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    max_len: usize,
    depth: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> WordError {
        WordError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    // expr := factor+ ; at top level the empty input is allowed.
    fn expr(&mut self, allow_empty: bool) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'x') | Some(b'D') | Some(b'(') => {
                    let factor = self.factor()?;
                    if letters.len() + factor.len() > self.max_len {
                        return Err(WordError::TooLong {
                            len: letters.len() + factor.len(),
                            max: self.max_len,
                        });
                    }
                    letters.extend_from_slice(factor.letters());
                    any = true;
                }
                Some(b')') | None => break,
                Some(c) => {
                    return Err(self.syntax(&format!("unexpected character '{}'", c as char)))
                }
            }
        }
        if !any && !allow_empty {
            return Err(self.syntax("expected 'x', 'D' or '('"));
        }
        Ok(Word::new(letters))
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let base = self.term()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.exponent()?;
            let len = base.len().checked_mul(exp).unwrap_or(usize::MAX);
            if len > self.max_len {
                return Err(WordError::TooLong {
                    len,
                    max: self.max_len,
                });
            }
            Ok(base.repeat(exp))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Word::new(vec![Letter::X]))
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(Word::new(vec![Letter::D]))
            }
            Some(b'(') => {
                self.depth += 1;
                if self.depth > MAX_PAREN_DEPTH {
                    return Err(self.syntax("parentheses nested too deeply"));
                }
                self.pos += 1;
                let inner = self.expr(false)?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) => Err(self.syntax(&format!("unexpected character '{}'", c as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<usize, WordError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected exponent digits after '^'"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: usize = digits.parse().map_err(|_| WordError::TooLong {
            len: usize::MAX,
            max: self.max_len,
        })?;
        if value == 0 {
            self.pos = start;
            return Err(self.syntax("exponent must be positive"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        parse_word(text).unwrap()
    }

    fn dyck(text: &str) -> DyckWord {
        DyckWord::new(w(text)).unwrap()
    }

    #[test]
    fn parse_expands_powers_and_groups() {
        assert_eq!(w("(xD)^3").to_string(), "xDxDxD");
        assert_eq!(w("x^2D^2").to_string(), "xxDD");
        assert_eq!(w("xxDxxDxDDD").to_string(), "xxDxxDxDDD");
        assert_eq!(w("(x^2 (xD)^2 D)^1").to_string(), "xxxDxDD");
        assert_eq!(w(""), Word::empty());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_word("xyD"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("(xD"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("xD)"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("x^0"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("()"), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_word("U"), Err(WordError::Syntax { .. })));
        assert!(matches!(
            parse_word_with_limit("x^11", 10),
            Err(WordError::TooLong { len: 11, max: 10 })
        ));
        assert!(matches!(
            parse_word_with_limit("(x^9)^9", 10),
            Err(WordError::TooLong { .. })
        ));
    }

    #[test]
    fn dyck_predicate() {
        assert!(w("xxDxxDxDDD").is_dyck());
        assert!(w("xD").is_dyck());
        assert!(!w("Dx").is_dyck());
        assert!(!w("xxD").is_dyck());
        assert!(w("").is_dyck());
    }

    // Independent oracle: scan a = 0, 1, 2, ... for the prefix property, then
    // b is forced by the balance.
    fn associated_by_scan(word: &Word) -> (usize, usize) {
        'outer: for a in 0..=word.len() {
            let mut excess = a as i64;
            for l in word.letters() {
                excess += if *l == Letter::X { 1 } else { -1 };
                if excess < 0 {
                    continue 'outer;
                }
            }
            return (a, excess as usize);
        }
        unreachable!("a = len always suffices");
    }

    #[test]
    fn associated_dyck_matches_scan_oracle() {
        for text in ["Dx", "xD", "xxD", "DDxxD", "xDDDxx", ""] {
            let word = w(text);
            let (a, b) = associated_by_scan(&word);
            let assoc = associated_dyck(&word);
            assert_eq!((assoc.a, assoc.b), (a, b), "word {word}");
            assert!(assoc.dyck.word().is_dyck());
        }
        let assoc = associated_dyck(&w("Dx"));
        assert_eq!((assoc.a, assoc.b), (1, 1));
        assert_eq!(assoc.dyck.to_string(), "xDxD");
        let assoc = associated_dyck(&w("xD"));
        assert_eq!((assoc.a, assoc.b), (0, 0));
        let assoc = associated_dyck(&w("xxD"));
        assert_eq!((assoc.a, assoc.b), (0, 1));
        assert_eq!(assoc.dyck.to_string(), "xxDD");
    }

    #[test]
    fn heights_of_running_example() {
        assert_eq!(heights(&dyck("xxDxxDxDDD")), vec![0, 1, 1, 2, 2]);
        assert_eq!(heights(&dyck("xDxDxD")), vec![0, 0, 0]);
        assert_eq!(heights(&dyck("xxDD")), vec![0, 1]);
    }

    #[test]
    fn irreducible_components() {
        let parts = irreducible_decomposition(&dyck("xDxxDD"));
        assert_eq!(
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            vec!["xD", "xxDD"]
        );
        let parts = irreducible_decomposition(&dyck("xxDxxDxDDD"));
        assert_eq!(parts.len(), 1);
        let parts = irreducible_decomposition(&dyck("xDxD"));
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn matched_pairs_examples() {
        assert_eq!(matched_pairs(&dyck("xxDD")), vec![(1, 4), (2, 3)]);
        assert_eq!(matched_pairs(&dyck("xDxD")), vec![(1, 2), (3, 4)]);
        assert_eq!(
            matched_pairs(&dyck("xxDxxDxDDD")),
            vec![(1, 10), (2, 3), (4, 9), (5, 6), (7, 8)]
        );
    }

    #[test]
    fn geometry_of_running_example() {
        let geo = path_geometry(&dyck("xxDxxDxDDD"));
        let expected: BTreeSet<_> = [(1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]
            .into_iter()
            .collect();
        assert_eq!(geo.inner_squares, expected);
        assert_eq!(geo.peaks, vec![(1, 2), (2, 4), (3, 5)]);
        assert_eq!(geo.heights, vec![0, 1, 1, 2, 2]);

        let geo = path_geometry(&dyck("xDxDxD"));
        assert!(geo.inner_squares.is_empty());
        assert_eq!(geo.peaks, vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn dyck_word_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(dyck_words(n).len(), c, "half length {n}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::D)], 0..=max_len)
                .prop_map(Word::new)
        }

        fn arb_dyck(max_half: usize) -> impl Strategy<Value = DyckWord> {
            arb_word(2 * max_half).prop_map(|w| associated_dyck(&w).dyck)
        }

        proptest! {
            #[test]
            fn associated_is_dyck_and_minimal(word in arb_word(16)) {
                let assoc = associated_dyck(&word);
                prop_assert!(assoc.dyck.word().is_dyck());
                if assoc.a > 0 {
                    // one fewer leading x must break the prefix property
                    let mut shorter = vec![Letter::X; assoc.a - 1];
                    shorter.extend_from_slice(word.letters());
                    let mut excess: i64 = 0;
                    let mut ok = true;
                    for l in &shorter {
                        excess += if *l == Letter::X { 1 } else { -1 };
                        if excess < 0 { ok = false; break; }
                    }
                    prop_assert!(!ok);
                }
            }

            #[test]
            fn associated_fixes_dyck_words(word in arb_dyck(8)) {
                let assoc = associated_dyck(word.word());
                prop_assert_eq!(assoc.a, 0);
                prop_assert_eq!(assoc.b, 0);
                prop_assert_eq!(assoc.dyck.word(), word.word());
            }

            #[test]
            fn decomposition_concat_roundtrip(word in arb_dyck(8)) {
                let parts = irreducible_decomposition(&word);
                let mut rebuilt = Word::empty();
                for p in &parts {
                    prop_assert!(p.word().is_dyck());
                    prop_assert_eq!(irreducible_decomposition(p).len(), 1);
                    rebuilt = rebuilt.concat(p.word());
                }
                prop_assert_eq!(&rebuilt, word.word());
            }

            #[test]
            fn matched_pairs_never_cross(word in arb_dyck(8)) {
                let pairs = matched_pairs(&word);
                prop_assert_eq!(pairs.len(), word.half_length());
                for (i, &(a1, b1)) in pairs.iter().enumerate() {
                    prop_assert!(a1 < b1);
                    for &(a2, b2) in &pairs[i + 1..] {
                        let nested = (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
                        let disjoint = b1 < a2 || b2 < a1;
                        prop_assert!(nested || disjoint, "crossing pairs in {}", word.word());
                    }
                }
            }

            #[test]
            fn heights_agree_with_path_steps(word in arb_dyck(8)) {
                // if the up-step of an x goes from (a, b) to (a, b+1) then its
                // height is b - a
                let mut from_path = Vec::new();
                let (mut xpos, mut ypos) = (0i64, 0i64);
                for l in word.word().letters() {
                    match l {
                        Letter::X => { from_path.push((ypos - xpos) as usize); ypos += 1; }
                        Letter::D => xpos += 1,
                    }
                }
                prop_assert_eq!(heights(&word), from_path);
                prop_assert_eq!(heights(&word).len(), word.half_length());
            }
        }
    }
}
