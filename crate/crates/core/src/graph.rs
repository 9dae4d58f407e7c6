//! The contradiction graph `G_m(H)`.
//!
//! Vertices are the realizable datasets of length `m`, kept as canonical
//! multisets. Two vertices are adjacent iff some point is labeled 0 in one and
//! 1 in the other. Adjacency is recomputed from per-vertex label masks, so the
//! graph stores `O(|V|)` words rather than a quadratic matrix.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::concept::{ConceptClass, Dataset, HypothesisPattern, LabeledExample};
use crate::{Error, Result};

/// Caps that turn runaway enumerations into clean errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub vertex_cap: usize,
    /// Largest universe whose `2^|X|` labelings may be enumerated.
    pub pattern_cap: usize,
    /// Branch-and-bound search nodes per clique query.
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vertex_cap: 1_000_000,
            pattern_cap: 20,
            node_budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContradictionGraph {
    class: ConceptClass,
    m: usize,
    vertices: Vec<Dataset>,
}

impl ContradictionGraph {
    pub fn build(class: &ConceptClass, m: usize) -> Result<Self> {
        Self::build_with(class, m, &Limits::default())
    }

    pub fn build_with(class: &ConceptClass, m: usize, limits: &Limits) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams(
                "dataset length m must be at least 1".into(),
            ));
        }
        let codes = 2 * class.universe_size();
        let mut vertices = Vec::new();
        let mut prefix = Vec::with_capacity(m);
        enumerate(
            class.rows(),
            codes,
            m,
            0,
            &mut prefix,
            &mut vertices,
            limits.vertex_cap,
        )?;
        Ok(ContradictionGraph {
            class: class.clone(),
            m,
            vertices,
        })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Dataset] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> Result<&Dataset> {
        self.vertices.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.vertices.len(),
        })
    }

    /// Position of a dataset in the canonical vertex list.
    pub fn index_of(&self, dataset: &Dataset) -> Option<usize> {
        self.vertices.binary_search(dataset).ok()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> Result<bool> {
        let a = self.vertex(i)?;
        let b = self.vertex(j)?;
        Ok(a.contradicts(b))
    }

    /// Unchecked adjacency for hot loops; panics on bad indices.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.vertices[i].contradicts(&self.vertices[j])
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).flat_map(move |i| {
            (i + 1..n)
                .filter(move |&j| self.adjacent(i, j))
                .map(move |j| (i, j))
        })
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, i: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for j in 0..self.len() {
            if self.adjacent(i, j) {
                set.insert(j);
            }
        }
        set
    }

    /// `V_h`: every vertex consistent with the pattern.
    pub fn consistent_set(&self, h: &HypothesisPattern) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.admits(h.bits()) {
                set.insert(i);
            }
        }
        set
    }

    /// All `2^|X|` labelings of the universe, in lexicographic order.
    pub fn all_patterns(&self, limits: &Limits) -> Result<Vec<HypothesisPattern>> {
        all_patterns(self.class.universe_size(), limits)
    }

    pub fn independent_sets(
        &self,
        limits: &Limits,
        prune_nonmaximal: bool,
    ) -> Result<IndependentSetFamily> {
        let mut seen: BTreeMap<FixedBitSet, usize> = BTreeMap::new();
        let mut sets: Vec<(HypothesisPattern, FixedBitSet)> = Vec::new();
        for h in self.all_patterns(limits)? {
            let set = self.consistent_set(&h);
            if set.is_clear() {
                continue;
            }
            if !seen.contains_key(&set) {
                seen.insert(set.clone(), sets.len());
                sets.push((h, set));
            }
        }
        if prune_nonmaximal {
            let keep: Vec<bool> = (0..sets.len())
                .map(|i| {
                    !sets
                        .iter()
                        .enumerate()
                        .any(|(j, (_, b))| j != i && sets[i].1.is_subset(b) && sets[i].1 != *b)
                })
                .collect();
            sets = sets
                .into_iter()
                .zip(keep)
                .filter_map(|(s, k)| k.then_some(s))
                .collect();
        }
        Ok(IndependentSetFamily {
            vertex_count: self.len(),
            sets,
        })
    }

    /// A pattern consistent with every member of an independent set.
    ///
    /// Points no member mentions are labeled 0.
    pub fn witness_hypothesis(&self, set: &FixedBitSet) -> Result<HypothesisPattern> {
        let mut ones = 0u64;
        let mut zeros = 0u64;
        for i in set.ones() {
            let v = self.vertex(i)?;
            ones |= v.ones_mask();
            zeros |= v.zeros_mask();
        }
        if ones & zeros != 0 {
            return Err(Error::NotIndependent(
                (ones & zeros).trailing_zeros() as usize
            ));
        }
        Ok(HypothesisPattern::new(ones, self.class.universe_size()))
    }

    pub fn is_independent(&self, set: &FixedBitSet) -> bool {
        let members: Vec<usize> = set.ones().collect();
        members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| !self.adjacent(i, j)))
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| self.adjacent(i, j)))
    }
}

pub fn all_patterns(universe: usize, limits: &Limits) -> Result<Vec<HypothesisPattern>> {
    if universe > limits.pattern_cap {
        return Err(Error::ResourceLimit {
            what: "pattern enumeration (points)",
            requested: universe as u128,
            cap: limits.pattern_cap as u128,
        });
    }
    let mut patterns: Vec<HypothesisPattern> = (0..1u64 << universe)
        .map(|b| HypothesisPattern::new(b, universe))
        .collect();
    patterns.sort();
    Ok(patterns)
}

fn enumerate(
    rows: &[u64],
    codes: usize,
    remaining: usize,
    start: usize,
    prefix: &mut Vec<LabeledExample>,
    out: &mut Vec<Dataset>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if out.len() == cap {
            return Err(Error::ResourceLimit {
                what: "contradiction graph vertices",
                requested: cap as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(Dataset::new(prefix.clone()).expect("realizable prefixes are consistent"));
        return Ok(());
    }
    for code in start..codes {
        let e = LabeledExample::from_code(code);
        let bit = 1u64 << e.point.0;
        let survivors: Vec<u64> = rows
            .iter()
            .copied()
            .filter(|&r| (r & bit != 0) == e.label)
            .collect();
        if survivors.is_empty() {
            continue;
        }
        prefix.push(e);
        enumerate(&survivors, codes, remaining - 1, code, prefix, out, cap)?;
        prefix.pop();
    }
    Ok(())
}

/// The sets `V_h`, deduplicated, each with the first pattern that produced it.
#[derive(Debug, Clone)]
pub struct IndependentSetFamily {
    vertex_count: usize,
    sets: Vec<(HypothesisPattern, FixedBitSet)>,
}

impl IndependentSetFamily {
    pub fn sets(&self) -> &[(HypothesisPattern, FixedBitSet)] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Every vertex lies in at least one set.
    pub fn covers_all(&self) -> bool {
        let mut union = FixedBitSet::with_capacity(self.vertex_count);
        for (_, s) in &self.sets {
            union.union_with(s);
        }
        union.count_ones(..) == self.vertex_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{Family, Point};
    use alloc::vec;

    fn diag() -> ConceptClass {
        ConceptClass::new(2, vec![0b00, 0b11]).unwrap()
    }

    fn brute_clique_number(g: &ContradictionGraph) -> usize {
        let n = g.len();
        assert!(n <= 20);
        (0u32..1 << n)
            .filter(|mask| {
                let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                g.is_clique(&members)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn build_small_graphs() {
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let g = ContradictionGraph::build(&full1, 1).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.vertices()[0].render(), "(0:0)");
        assert_eq!(g.vertices()[1].render(), "(0:1)");

        let g = ContradictionGraph::build(&diag(), 2).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(brute_clique_number(&g), 2);

        let single = Family::Singleton { n: 3 }.generate().unwrap();
        for m in 1..=3 {
            let g = ContradictionGraph::build(&single, m).unwrap();
            assert_eq!(g.num_edges(), 0);
        }
        assert!(ContradictionGraph::build(&single, 0).is_err());
    }

    #[test]
    fn vertices_are_sorted_realizable_and_sized() {
        let c = Family::PaperExample.generate().unwrap();
        let g = ContradictionGraph::build(&c, 3).unwrap();
        assert!(g.vertices().windows(2).all(|w| w[0] < w[1]));
        assert!(g
            .vertices()
            .iter()
            .all(|v| v.len() == 3 && c.is_realizable(v)));
    }

    #[test]
    fn vertex_cap_is_a_clean_error() {
        let c = Family::Full { n: 3 }.generate().unwrap();
        let limits = Limits {
            vertex_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            ContradictionGraph::build_with(&c, 2, &limits),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn edge_queries() {
        let full2 = Family::Full { n: 2 }.generate().unwrap();
        let g = ContradictionGraph::build(&full2, 2).unwrap();
        let a = g
            .index_of(&Dataset::from_pairs(&[(0, false), (1, true)]).unwrap())
            .unwrap();
        let b = g
            .index_of(&Dataset::from_pairs(&[(1, true), (0, false)]).unwrap())
            .unwrap();
        assert_eq!(a, b);
        assert!(!g.is_edge(a, a).unwrap());
        let c = g
            .index_of(&Dataset::from_pairs(&[(0, true), (0, true)]).unwrap())
            .unwrap();
        assert!(g.is_edge(a, c).unwrap());
        assert!(g.is_edge(c, a).unwrap());
        assert!(matches!(
            g.is_edge(0, 99),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn paper_example_m1_has_four_edges() {
        let c = Family::PaperExample.generate().unwrap();
        let g = ContradictionGraph::build(&c, 1).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.num_edges(), 4);
    }

    #[test]
    fn independent_set_examples() {
        let limits = Limits::default();
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let g = ContradictionGraph::build(&full1, 1).unwrap();
        let fam = g.independent_sets(&limits, false).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.sets()[0].1.ones().collect::<Vec<_>>(), vec![0]);
        assert_eq!(fam.sets()[1].1.ones().collect::<Vec<_>>(), vec![1]);

        let single = Family::Singleton { n: 2 }.generate().unwrap();
        let g = ContradictionGraph::build(&single, 2).unwrap();
        let fam = g.independent_sets(&limits, true).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.sets()[0].1.count_ones(..), g.len());

        let paper = Family::PaperExample.generate().unwrap();
        let g = ContradictionGraph::build(&paper, 3).unwrap();
        let fam = g.independent_sets(&limits, false).unwrap();
        assert!(fam.len() <= 16);
        assert!(fam.covers_all());
        for (h, set) in fam.sets() {
            assert!(g.is_independent(set));
            let w = g.witness_hypothesis(set).unwrap();
            // The witness agrees with h on every point the set mentions.
            for i in set.ones() {
                for e in g.vertices()[i].examples() {
                    assert_eq!(w.label(e.point), h.label(e.point));
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        let full2 = Family::Full { n: 2 }.generate().unwrap();
        let g1 = ContradictionGraph::build(&full2, 1).unwrap();
        let idx = g1
            .index_of(&Dataset::from_pairs(&[(0, true)]).unwrap())
            .unwrap();
        let mut set = FixedBitSet::with_capacity(g1.len());
        set.insert(idx);
        assert_eq!(g1.witness_hypothesis(&set).unwrap().bits(), 0b01);
        let empty = FixedBitSet::with_capacity(g1.len());
        assert_eq!(g1.witness_hypothesis(&empty).unwrap().bits(), 0);

        let mut conflict = FixedBitSet::with_capacity(g1.len());
        conflict.insert(
            g1.index_of(&Dataset::from_pairs(&[(0, false)]).unwrap())
                .unwrap(),
        );
        conflict.insert(idx);
        assert_eq!(
            g1.witness_hypothesis(&conflict),
            Err(Error::NotIndependent(0))
        );

        // {((x0,0)), ((x0,0),(x1,1))} spans two lengths, so check the union rule at m = 2.
        let g2 = ContradictionGraph::build(&full2, 2).unwrap();
        let mut set = FixedBitSet::with_capacity(g2.len());
        set.insert(
            g2.index_of(&Dataset::from_pairs(&[(0, false), (0, false)]).unwrap())
                .unwrap(),
        );
        set.insert(
            g2.index_of(&Dataset::from_pairs(&[(0, false), (1, true)]).unwrap())
                .unwrap(),
        );
        let w = g2.witness_hypothesis(&set).unwrap();
        assert!(!w.label(Point(0)));
        assert!(w.label(Point(1)));
    }

    #[test]
    fn pattern_cap_is_a_clean_error() {
        let c = Family::Singleton { n: 5 }.generate().unwrap();
        let g = ContradictionGraph::build(&c, 1).unwrap();
        let limits = Limits {
            pattern_cap: 4,
            ..Limits::default()
        };
        assert!(matches!(
            g.independent_sets(&limits, false),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
