//! Circular label sequences and the xyxy alternation pattern.
//!
//! A circular sequence contains `x y x y` (with `x != y`) when some rotation
//! contains it as a not necessarily contiguous subsequence. The block
//! sequence `S(k, s)` is `1 2 .. k` repeated `s` times; no xyxy-free circular
//! subsequence of it reaches length `k + s`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default ceiling on sequence length for exhaustive search.
pub const DEFAULT_CAP: usize = 24;

/// A finite label sequence considered up to rotation. Equality compares all
/// rotations.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct CircularSequence {
    labels: Vec<u32>,
}

impl CircularSequence {
    pub fn new(labels: Vec<u32>) -> Self {
        CircularSequence { labels }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The same circular sequence read from position `r`.
    pub fn rotate(&self, r: usize) -> CircularSequence {
        let mut labels = self.labels.clone();
        if !labels.is_empty() {
            let r = r % labels.len();
            labels.rotate_left(r);
        }
        CircularSequence { labels }
    }

    pub fn subsequence(&self, positions: &[usize]) -> CircularSequence {
        CircularSequence::new(positions.iter().map(|&i| self.labels[i]).collect())
    }
}

impl PartialEq for CircularSequence {
    fn eq(&self, other: &Self) -> bool {
        let n = self.labels.len();
        if n != other.labels.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|r| (0..n).all(|i| self.labels[(i + r) % n] == other.labels[i]))
    }
}

impl Eq for CircularSequence {}

impl fmt::Display for CircularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Alphabet size `k` and block count `s`, both at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockParams {
    pub k: usize,
    pub s: usize,
}

impl BlockParams {
    pub fn new(k: usize, s: usize) -> Result<Self> {
        if k == 0 || s == 0 {
            return Err(Error::UndefinedInput(format!("block parameters must be positive, got k={k}, s={s}")));
        }
        Ok(BlockParams { k, s })
    }
}

/// `1 2 .. k` repeated `s` times.
pub fn make_block_sequence(p: BlockParams) -> CircularSequence {
    CircularSequence::new((0..p.s).flat_map(|_| 1..=p.k as u32).collect())
}

/// Whether some rotation of `seq` contains `x y x y` with `x != y`.
///
/// Restricted to two symbols, the circular sequence has at least four
/// maximal runs exactly when the pattern is present.
pub fn contains_xyxy(seq: &CircularSequence) -> bool {
    let labels = seq.labels();
    let mut alphabet: Vec<u32> = labels.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    for (i, &x) in alphabet.iter().enumerate() {
        for &y in &alphabet[i + 1..] {
            let pair: Vec<u32> = labels.iter().copied().filter(|&l| l == x || l == y).collect();
            let changes = (0..pair.len()).filter(|&j| pair[j] != pair[(j + 1) % pair.len()]).count();
            if changes >= 4 {
                return true;
            }
        }
    }
    false
}

/// The longest xyxy-free circular subsequence found by exhaustive search.
#[derive(Clone, Debug, Serialize)]
pub struct XyxyFreeMax {
    pub length: usize,
    /// Indices into the searched sequence, increasing.
    pub positions: Vec<usize>,
    pub witness: CircularSequence,
}

pub fn max_xyxy_free_length(seq: &CircularSequence) -> Result<XyxyFreeMax> {
    max_xyxy_free_length_capped(seq, DEFAULT_CAP)
}

/// Exhaustive include/exclude search over positions. A branch is cut as
/// soon as its linear prefix already contains the pattern (every rotation
/// of any extension then does too) or cannot beat the best length so far.
pub fn max_xyxy_free_length_capped(seq: &CircularSequence, cap: usize) -> Result<XyxyFreeMax> {
    let len = seq.len();
    if len > cap {
        return Err(Error::Capacity { len, cap });
    }
    let mut alphabet: Vec<u32> = seq.labels().to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let dense: Vec<usize> = seq
        .labels()
        .iter()
        .map(|l| alphabet.binary_search(l).unwrap())
        .collect();
    let mut search = Search {
        dense,
        labels: seq.labels().to_vec(),
        width: alphabet.len(),
        state: vec![0; alphabet.len() * alphabet.len()],
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    let positions = search.best;
    Ok(XyxyFreeMax {
        length: positions.len(),
        witness: seq.subsequence(&positions),
        positions,
    })
}

struct Search {
    dense: Vec<usize>,
    labels: Vec<u32>,
    width: usize,
    /// `state[x * width + y]`: greedy progress through `x y x y`.
    state: Vec<u8>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl Search {
    fn run(&mut self, i: usize) {
        let remaining = self.dense.len() - i;
        if self.chosen.len() + remaining <= self.best.len() {
            return;
        }
        if remaining == 0 {
            let picked = CircularSequence::new(self.chosen.iter().map(|&j| self.labels[j]).collect());
            if !contains_xyxy(&picked) {
                self.best = self.chosen.clone();
            }
            return;
        }
        let mut undo = Vec::new();
        if self.push(self.dense[i], &mut undo) {
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
        }
        for (idx, old) in undo {
            self.state[idx] = old;
        }
        self.run(i + 1);
    }

    /// Advances every pattern automaton on symbol `c`; false if one of
    /// them completes.
    fn push(&mut self, c: usize, undo: &mut Vec<(usize, u8)>) -> bool {
        for x in 0..self.width {
            if x == c {
                continue;
            }
            // pattern x c x c: c is awaited at odd progress
            let a = x * self.width + c;
            if self.state[a] % 2 == 1 {
                undo.push((a, self.state[a]));
                self.state[a] += 1;
                if self.state[a] == 4 {
                    return false;
                }
            }
            // pattern c x c x: c is awaited at even progress
            let b = c * self.width + x;
            if self.state[b].is_multiple_of(2) {
                undo.push((b, self.state[b]));
                self.state[b] += 1;
            }
        }
        true
    }
}

/// Exhaustively checks that the longest xyxy-free subsequence of `S(k, s)`
/// is shorter than `k + s`.
pub fn verify_circle_lemma(p: BlockParams) -> Result<bool> {
    let best = max_xyxy_free_length(&make_block_sequence(p))?;
    Ok(best.length < p.k + p.s)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaRow {
    pub k: usize,
    pub s: usize,
    pub max_length: usize,
    pub bound: usize,
    pub pass: bool,
}

/// One row per `(k, s)` in `1..=kmax x 1..=smax` with `k * s` within the cap.
pub fn lemma_table(kmax: usize, smax: usize, cap: usize) -> Result<Vec<LemmaRow>> {
    let mut rows = Vec::new();
    for k in 1..=kmax {
        for s in 1..=smax {
            if k * s > cap {
                continue;
            }
            let p = BlockParams::new(k, s)?;
            let best = max_xyxy_free_length_capped(&make_block_sequence(p), cap)?;
            rows.push(LemmaRow {
                k,
                s,
                max_length: best.length,
                bound: k + s,
                pass: best.length < k + s,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[u32]) -> CircularSequence {
        CircularSequence::new(v.to_vec())
    }

    /// Literal definition: some rotation, some four increasing indices.
    fn contains_oracle(s: &CircularSequence) -> bool {
        let n = s.len();
        (0..n.max(1)).any(|r| {
            let l = s.rotate(r).labels;
            for a in 0..n {
                for b in a + 1..n {
                    if l[a] == l[b] {
                        continue;
                    }
                    for c in b + 1..n {
                        if l[c] != l[a] {
                            continue;
                        }
                        if (c + 1..n).any(|d| l[d] == l[b]) {
                            return true;
                        }
                    }
                }
            }
            false
        })
    }

    fn max_oracle(s: &CircularSequence) -> usize {
        let n = s.len();
        (0u32..1 << n)
            .filter(|mask| {
                let pos: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                !contains_oracle(&s.subsequence(&pos))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn block_sequences() {
        assert_eq!(make_block_sequence(BlockParams::new(3, 2).unwrap()).labels(), &[1, 2, 3, 1, 2, 3]);
        assert_eq!(make_block_sequence(BlockParams::new(1, 4).unwrap()).labels(), &[1, 1, 1, 1]);
        assert_eq!(make_block_sequence(BlockParams::new(2, 1).unwrap()).labels(), &[1, 2]);
        assert!(BlockParams::new(0, 1).is_err());
        assert!(BlockParams::new(3, 0).is_err());
    }

    #[test]
    fn rotation_equality() {
        assert_eq!(seq(&[1, 2, 3]), seq(&[3, 1, 2]));
        assert_ne!(seq(&[1, 2, 3]), seq(&[1, 3, 2]));
        assert_eq!(seq(&[]), seq(&[]));
    }

    #[test]
    fn xyxy_examples() {
        assert!(contains_xyxy(&seq(&[1, 2, 1, 2])));
        assert!(!contains_xyxy(&seq(&[1, 2, 2, 1])));
        assert!(!contains_xyxy(&seq(&[1, 1, 1])));
        // 2 1 2 ... 1 only appears after rotating
        assert!(contains_xyxy(&seq(&[1, 3, 2, 1, 2])));
        assert!(contains_oracle(&seq(&[1, 3, 2, 1, 2])));
    }

    #[test]
    fn extremal_lengths() {
        let s13 = make_block_sequence(BlockParams::new(1, 3).unwrap());
        assert_eq!(max_xyxy_free_length(&s13).unwrap().length, 3);
        let s22 = make_block_sequence(BlockParams::new(2, 2).unwrap());
        assert_eq!(max_oracle(&s22), 3);
        assert_eq!(max_xyxy_free_length(&s22).unwrap().length, 3);
        let s33 = make_block_sequence(BlockParams::new(3, 3).unwrap());
        let found = max_xyxy_free_length(&s33).unwrap().length;
        assert_eq!(found, max_oracle(&s33));
        assert!(found < 6);
    }

    #[test]
    fn capacity_is_enforced() {
        let long = make_block_sequence(BlockParams::new(5, 5).unwrap());
        assert_eq!(
            max_xyxy_free_length(&long).unwrap_err(),
            Error::Capacity { len: 25, cap: 24 }
        );
        assert!(verify_circle_lemma(BlockParams::new(5, 5).unwrap()).is_err());
    }

    #[test]
    fn lemma_examples() {
        assert!(verify_circle_lemma(BlockParams::new(1, 5).unwrap()).unwrap());
        assert!(verify_circle_lemma(BlockParams::new(2, 2).unwrap()).unwrap());
        assert!(verify_circle_lemma(BlockParams::new(4, 3).unwrap()).unwrap());
    }

    #[test]
    fn oracle_agrees_on_block_grid() {
        for k in 1..=3 {
            for s in 1..=3 {
                let b = make_block_sequence(BlockParams::new(k, s).unwrap());
                assert_eq!(max_xyxy_free_length(&b).unwrap().length, max_oracle(&b), "k={k} s={s}");
            }
        }
    }

    proptest! {
        #[test]
        fn detection_matches_oracle(v in prop::collection::vec(1u32..4, 0..9)) {
            let s = seq(&v);
            prop_assert_eq!(contains_xyxy(&s), contains_oracle(&s));
        }

        #[test]
        fn rotation_invariance(v in prop::collection::vec(1u32..5, 1..12), r in 0usize..12) {
            let s = seq(&v);
            prop_assert_eq!(contains_xyxy(&s), contains_xyxy(&s.rotate(r)));
        }

        #[test]
        fn max_matches_oracle(v in prop::collection::vec(1u32..4, 0..10)) {
            let s = seq(&v);
            prop_assert_eq!(max_xyxy_free_length(&s).unwrap().length, max_oracle(&s));
        }

        #[test]
        fn witness_is_sound(v in prop::collection::vec(1u32..5, 0..14)) {
            let s = seq(&v);
            let best = max_xyxy_free_length(&s).unwrap();
            prop_assert!(!contains_xyxy(&best.witness));
            prop_assert!(best.positions.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(best.witness.clone(), s.subsequence(&best.positions));
        }

        #[test]
        fn deleting_one_element_changes_max_by_at_most_one(
            v in prop::collection::vec(1u32..5, 1..13),
            i in 0usize..13,
        ) {
            let s = seq(&v);
            let i = i % v.len();
            let mut w = v.clone();
            w.remove(i);
            let before = max_xyxy_free_length(&s).unwrap().length;
            let after = max_xyxy_free_length(&seq(&w)).unwrap().length;
            prop_assert!(after <= before);
            prop_assert!(after + 1 >= before);
        }
    }
}
