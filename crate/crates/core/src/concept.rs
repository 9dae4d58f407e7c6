//! Finite concept classes, labeled examples and datasets.
//!
//! Hypotheses are stored as `u64` bit rows: bit `i` is the label of point `i`.
//! This caps the universe at 64 points, far beyond what any exhaustive
//! computation in this crate can reach anyway.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledExample {
    pub point: Point,
    pub label: bool,
}

impl LabeledExample {
    pub fn new(point: usize, label: bool) -> Self {
        LabeledExample {
            point: Point(point),
            label,
        }
    }

    /// Dense index `2 * point + label`, ordered like the example itself.
    pub fn code(self) -> usize {
        2 * self.point.0 + self.label as usize
    }

    pub fn from_code(code: usize) -> Self {
        LabeledExample::new(code / 2, code % 2 == 1)
    }

    pub fn flipped(self) -> Self {
        LabeledExample {
            point: self.point,
            label: !self.label,
        }
    }
}

impl fmt::Display for LabeledExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.point.0, self.label as u8)
    }
}

/// A full labeling of the universe, not necessarily a member of any class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HypothesisPattern {
    bits: u64,
    width: usize,
}

impl HypothesisPattern {
    pub fn new(bits: u64, width: usize) -> Self {
        assert!(width <= MAX_UNIVERSE);
        let mask = width_mask(width);
        HypothesisPattern {
            bits: bits & mask,
            width,
        }
    }

    pub fn from_labels(labels: &[bool]) -> Self {
        let bits = labels
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        HypothesisPattern::new(bits, labels.len())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn label(&self, point: Point) -> bool {
        (self.bits >> point.0) & 1 == 1
    }

    pub fn labels(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| (self.bits >> i) & 1 == 1)
    }

    /// `h` agrees with every example of the dataset.
    pub fn is_consistent(&self, dataset: &Dataset) -> bool {
        dataset.admits(self.bits)
    }

    /// Key under which patterns sort like their `0`/`1` strings.
    fn lex_key(&self) -> u64 {
        lex_key(self.bits, self.width)
    }

    /// Parses a string of `0`/`1` characters, point 0 first.
    pub fn parse(s: &str) -> Option<Self> {
        let mut labels = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => labels.push(false),
                '1' => labels.push(true),
                _ => return None,
            }
        }
        if labels.len() > MAX_UNIVERSE {
            return None;
        }
        Some(HypothesisPattern::from_labels(&labels))
    }
}

impl PartialOrd for HypothesisPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HypothesisPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then(self.lex_key().cmp(&other.lex_key()))
    }
}

impl fmt::Display for HypothesisPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.labels() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn width_mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn lex_key(bits: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        bits.reverse_bits() >> (64 - width)
    }
}

/// A multiset of labeled examples in canonical (sorted) order.
///
/// A dataset that labels a point both ways can never be realized, so it is
/// rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dataset {
    examples: Vec<LabeledExample>,
    ones: u64,
    zeros: u64,
}

impl Dataset {
    pub fn new(mut examples: Vec<LabeledExample>) -> Result<Self> {
        examples.sort_unstable();
        let mut ones = 0u64;
        let mut zeros = 0u64;
        for e in &examples {
            if e.point.0 >= MAX_UNIVERSE {
                return Err(Error::InvalidPoint {
                    point: e.point.0,
                    universe: MAX_UNIVERSE,
                });
            }
            let bit = 1u64 << e.point.0;
            if e.label {
                ones |= bit;
            } else {
                zeros |= bit;
            }
        }
        if ones & zeros != 0 {
            return Err(Error::InconsistentDataset(
                (ones & zeros).trailing_zeros() as usize
            ));
        }
        Ok(Dataset {
            examples,
            ones,
            zeros,
        })
    }

    pub fn from_pairs(pairs: &[(usize, bool)]) -> Result<Self> {
        Dataset::new(
            pairs
                .iter()
                .map(|&(p, l)| LabeledExample::new(p, l))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Dataset {
            examples: Vec::new(),
            ones: 0,
            zeros: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    /// Points labeled 1 anywhere in the dataset.
    pub fn ones_mask(&self) -> u64 {
        self.ones
    }

    /// Points labeled 0 anywhere in the dataset.
    pub fn zeros_mask(&self) -> u64 {
        self.zeros
    }

    pub fn contains(&self, example: LabeledExample) -> bool {
        let bit = 1u64 << example.point.0;
        if example.label {
            self.ones & bit != 0
        } else {
            self.zeros & bit != 0
        }
    }

    pub fn count(&self, example: LabeledExample) -> usize {
        self.examples.iter().filter(|&&e| e == example).count()
    }

    /// Distinct points mentioned by the dataset.
    pub fn support_size(&self) -> usize {
        (self.ones | self.zeros).count_ones() as usize
    }

    /// The row `bits` agrees with every example.
    pub fn admits(&self, bits: u64) -> bool {
        bits & self.ones == self.ones && bits & self.zeros == 0
    }

    /// Two datasets contradict when some point carries opposite labels.
    pub fn contradicts(&self, other: &Dataset) -> bool {
        (self.ones & other.zeros) | (self.zeros & other.ones) != 0
    }

    pub fn max_point(&self) -> Option<usize> {
        self.examples.iter().map(|e| e.point.0).max()
    }

    /// `(0:1);(2:0)` style rendering used by the text formats.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.examples.iter().map(|e| format!("{e}")).collect();
        parts.join(";")
    }
}

impl PartialOrd for Dataset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dataset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.examples.cmp(&other.examples)
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A nonempty set of distinct hypotheses over `universe_size` points, rows in
/// lexicographic order of their `0`/`1` strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptClass {
    universe_size: usize,
    rows: Vec<u64>,
}

impl ConceptClass {
    pub fn new(universe_size: usize, rows: Vec<u64>) -> Result<Self> {
        if universe_size > MAX_UNIVERSE {
            return Err(Error::InvalidParams(format!(
                "universe of {universe_size} points exceeds {MAX_UNIVERSE}"
            )));
        }
        let mask = width_mask(universe_size);
        if let Some(r) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::InvalidParams(format!(
                "row {r:#x} has bits outside a universe of {universe_size} points"
            )));
        }
        if rows.is_empty() {
            return Err(Error::EmptyClass);
        }
        Ok(Self::canonical(universe_size, rows))
    }

    pub fn from_patterns(universe_size: usize, patterns: &[HypothesisPattern]) -> Result<Self> {
        if let Some(p) = patterns.iter().find(|p| p.width() != universe_size) {
            return Err(Error::LengthMismatch {
                expected: universe_size,
                got: p.width(),
            });
        }
        ConceptClass::new(universe_size, patterns.iter().map(|p| p.bits()).collect())
    }

    fn canonical(universe_size: usize, mut rows: Vec<u64>) -> Self {
        rows.sort_unstable_by_key(|&r| lex_key(r, universe_size));
        rows.dedup();
        ConceptClass {
            universe_size,
            rows,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn patterns(&self) -> impl Iterator<Item = HypothesisPattern> + '_ {
        self.rows
            .iter()
            .map(move |&r| HypothesisPattern::new(r, self.universe_size))
    }

    pub fn check_point(&self, point: Point) -> Result<()> {
        if point.0 < self.universe_size {
            Ok(())
        } else {
            Err(Error::InvalidPoint {
                point: point.0,
                universe: self.universe_size,
            })
        }
    }

    /// Subclass `H_{x -> y}`; `None` is the empty class.
    pub fn restrict(&self, point: Point, label: bool) -> Result<Option<ConceptClass>> {
        self.check_point(point)?;
        let rows: Vec<u64> = self
            .rows
            .iter()
            .copied()
            .filter(|&r| ((r >> point.0) & 1 == 1) == label)
            .collect();
        if rows.is_empty() {
            Ok(None)
        } else {
            // Filtering a sorted, duplicate-free list keeps it canonical.
            Ok(Some(ConceptClass {
                universe_size: self.universe_size,
                rows,
            }))
        }
    }

    /// Some hypothesis of the class agrees with the whole dataset.
    pub fn is_realizable(&self, dataset: &Dataset) -> bool {
        self.rows.iter().any(|&r| dataset.admits(r))
    }

    pub fn check_dataset(&self, dataset: &Dataset) -> Result<()> {
        match dataset.max_point() {
            Some(p) if p >= self.universe_size => Err(Error::InvalidPoint {
                point: p,
                universe: self.universe_size,
            }),
            _ => Ok(()),
        }
    }

    pub fn generate(family: &Family) -> Result<ConceptClass> {
        family.generate()
    }
}

/// Deterministic class generators for the verification corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// All `2^n` labelings.
    Full { n: usize },
    /// The single all-zero hypothesis.
    Singleton { n: usize },
    /// `1^k 0^(n-k)` for `k = 0..=n`.
    Thresholds { n: usize },
    /// Even-weight labelings.
    Parities { n: usize },
    /// Points `2i` and `2i+1` always share a label; `n` must be even.
    DisjointPairs { n: usize },
    /// The eight-row class over four points with LD 2 and CD 3.
    PaperExample,
    /// `k` distinct rows over `n` points drawn from a seeded stream.
    Random { seed: u64, n: usize, k: usize },
}

/// Rows of [`Family::PaperExample`], point 0 first.
pub const PAPER_EXAMPLE_ROWS: [&str; 8] = [
    "0001", "0110", "0111", "1010", "1001", "1110", "1111", "1101",
];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Full { .. } => "full",
            Family::Singleton { .. } => "singleton",
            Family::Thresholds { .. } => "thresholds",
            Family::Parities { .. } => "parities",
            Family::DisjointPairs { .. } => "disjoint_pairs",
            Family::PaperExample => "paper_example_sec6",
            Family::Random { .. } => "random",
        }
    }

    pub fn generate(&self) -> Result<ConceptClass> {
        let small = |n: usize, limit: usize| {
            if n == 0 || n > limit {
                Err(Error::InvalidParams(format!(
                    "{} needs 1 <= n <= {limit}, got {n}",
                    self.name()
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            Family::Full { n } => {
                small(n, 20)?;
                ConceptClass::new(n, (0..1u64 << n).collect())
            }
            Family::Singleton { n } => {
                small(n, MAX_UNIVERSE)?;
                ConceptClass::new(n, alloc::vec![0])
            }
            Family::Thresholds { n } => {
                small(n, MAX_UNIVERSE)?;
                ConceptClass::new(n, (0..=n).map(width_mask).collect())
            }
            Family::Parities { n } => {
                small(n, 20)?;
                ConceptClass::new(
                    n,
                    (0..1u64 << n).filter(|r| r.count_ones() % 2 == 0).collect(),
                )
            }
            Family::DisjointPairs { n } => {
                small(n, 20)?;
                if n % 2 != 0 {
                    return Err(Error::InvalidParams(format!(
                        "disjoint_pairs needs an even number of points, got {n}"
                    )));
                }
                let rows = (0..1u64 << (n / 2))
                    .map(|half| {
                        (0..n / 2).fold(0u64, |acc, i| {
                            if (half >> i) & 1 == 1 {
                                acc | (0b11 << (2 * i))
                            } else {
                                acc
                            }
                        })
                    })
                    .collect();
                ConceptClass::new(n, rows)
            }
            Family::PaperExample => {
                let patterns: Vec<HypothesisPattern> = PAPER_EXAMPLE_ROWS
                    .iter()
                    .map(|s| HypothesisPattern::parse(s).expect("static rows"))
                    .collect();
                ConceptClass::from_patterns(4, &patterns)
            }
            Family::Random { seed, n, k } => {
                small(n, 20)?;
                if k == 0 || k as u64 > 1u64 << n {
                    return Err(Error::InvalidParams(format!(
                        "random class needs 1 <= k <= 2^{n}, got {k}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut rows: Vec<u64> = Vec::with_capacity(k);
                while rows.len() < k {
                    let r = rng.gen::<u64>() & width_mask(n);
                    if !rows.contains(&r) {
                        rows.push(r);
                    }
                }
                ConceptClass::new(n, rows)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;
    use std::string::ToString;

    fn class(n: usize, rows: &[&str]) -> ConceptClass {
        let pats: Vec<_> = rows
            .iter()
            .map(|s| HypothesisPattern::parse(s).unwrap())
            .collect();
        ConceptClass::from_patterns(n, &pats).unwrap()
    }

    fn row_strings(c: &ConceptClass) -> Vec<String> {
        c.patterns().map(|p| p.to_string()).collect()
    }

    #[test]
    fn restrict_examples() {
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let r = full1.restrict(Point(0), false).unwrap().unwrap();
        assert_eq!(row_strings(&r), vec!["0"]);

        let single = class(2, &["01"]);
        assert!(single.restrict(Point(0), true).unwrap().is_none());

        let paper = Family::PaperExample.generate().unwrap();
        // Only three of the eight printed rows start with 0.
        let r = paper.restrict(Point(0), false).unwrap().unwrap();
        assert_eq!(row_strings(&r), vec!["0001", "0110", "0111"]);
        let r = paper.restrict(Point(0), true).unwrap().unwrap();
        assert_eq!(r.len(), 5);
        assert!(paper.restrict(Point(4), false).is_err());
    }

    #[test]
    fn realizability_examples() {
        let full2 = Family::Full { n: 2 }.generate().unwrap();
        let s = Dataset::from_pairs(&[(0, false), (1, true)]).unwrap();
        assert!(full2.is_realizable(&s));

        let diag = class(2, &["00", "11"]);
        assert!(!diag.is_realizable(&s));
        assert!(diag.is_realizable(&Dataset::empty()));
    }

    #[test]
    fn consistency_examples() {
        let h = HypothesisPattern::parse("00").unwrap();
        assert!(h.is_consistent(&Dataset::from_pairs(&[(0, false), (1, false)]).unwrap()));
        assert!(!h.is_consistent(&Dataset::from_pairs(&[(0, true)]).unwrap()));

        // Red dataset of the seventh row: points 1, 3, 4 in one-based numbering.
        let red = Dataset::from_pairs(&[(0, true), (2, true), (3, true)]).unwrap();
        assert!(HypothesisPattern::parse("1111")
            .unwrap()
            .is_consistent(&red));
        assert!(HypothesisPattern::parse("1011")
            .unwrap()
            .is_consistent(&red));
    }

    #[test]
    fn generators() {
        assert_eq!(
            row_strings(&Family::Full { n: 2 }.generate().unwrap()),
            vec!["00", "01", "10", "11"]
        );
        assert_eq!(
            row_strings(&Family::Thresholds { n: 3 }.generate().unwrap()),
            vec!["000", "100", "110", "111"]
        );
        assert_eq!(
            row_strings(&Family::DisjointPairs { n: 2 }.generate().unwrap()),
            vec!["00", "11"]
        );
        assert_eq!(
            row_strings(&Family::Parities { n: 3 }.generate().unwrap()),
            vec!["000", "011", "101", "110"]
        );
        let paper = Family::PaperExample.generate().unwrap();
        assert_eq!(paper.len(), 8);
        assert_eq!(paper.universe_size(), 4);
        let mut expected: Vec<String> = PAPER_EXAMPLE_ROWS.iter().map(|s| s.to_string()).collect();
        expected.sort();
        assert_eq!(row_strings(&paper), expected);

        let a = Family::Random {
            seed: 7,
            n: 4,
            k: 5,
        }
        .generate()
        .unwrap();
        let b = Family::Random {
            seed: 7,
            n: 4,
            k: 5,
        }
        .generate()
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(Family::Random {
            seed: 0,
            n: 2,
            k: 5
        }
        .generate()
        .is_err());
        assert!(Family::DisjointPairs { n: 3 }.generate().is_err());
    }

    #[test]
    fn dataset_rejects_contradiction() {
        assert_eq!(
            Dataset::from_pairs(&[(2, false), (2, true)]),
            Err(Error::InconsistentDataset(2))
        );
        let d = Dataset::from_pairs(&[(1, true), (0, false), (1, true)]).unwrap();
        assert_eq!(d.render(), "(0:0);(1:1);(1:1)");
        assert_eq!(d.count(LabeledExample::new(1, true)), 2);
    }

    #[test]
    fn class_rejects_bad_rows() {
        assert_eq!(ConceptClass::new(2, vec![]), Err(Error::EmptyClass));
        assert!(ConceptClass::new(2, vec![0b100]).is_err());
        let c = ConceptClass::new(2, vec![3, 0, 3]).unwrap();
        assert_eq!(c.len(), 2);
    }

    fn arb_class() -> impl Strategy<Value = ConceptClass> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(0u64..(1 << n), 1..8)
                .prop_map(move |rows| ConceptClass::new(n, rows).unwrap())
        })
    }

    fn arb_examples(n: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
        proptest::collection::vec((0..n, any::<bool>()), 0..5)
    }

    proptest! {
        #[test]
        fn restrict_is_idempotent(c in arb_class(), p in 0usize..5, l in any::<bool>()) {
            let p = p % c.universe_size();
            if let Some(r) = c.restrict(Point(p), l).unwrap() {
                prop_assert_eq!(r.restrict(Point(p), l).unwrap(), Some(r.clone()));
            }
        }

        #[test]
        fn realizable_iff_some_row_consistent(c in arb_class(), ex in arb_examples(5)) {
            let n = c.universe_size();
            let ex: Vec<_> = ex.into_iter().map(|(p, l)| (p % n, l)).collect();
            if let Ok(d) = Dataset::from_pairs(&ex) {
                let any_row = c.patterns().any(|h| h.is_consistent(&d));
                prop_assert_eq!(c.is_realizable(&d), any_row);
                let full = Family::Full { n }.generate().unwrap();
                prop_assert!(full.is_realizable(&d));
            }
        }

        #[test]
        fn dataset_is_permutation_invariant(mut ex in arb_examples(4), seed in any::<u64>()) {
            let a = Dataset::from_pairs(&ex);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..ex.len()).rev() {
                let j = rand::Rng::gen_range(&mut rng, 0..=i);
                ex.swap(i, j);
            }
            prop_assert_eq!(a, Dataset::from_pairs(&ex));
        }
    }
}
