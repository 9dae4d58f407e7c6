//! Fractional cliques and colorings of contradiction graphs, solved exactly.
//!
//! The packing LP has one row per deduplicated maximal set `V_h`: every
//! independent set of `G_m(H)` sits inside some `V_h`, so the remaining
//! constraints are dominated. Vertices that lie in exactly the same rows
//! (datasets with the same support are such twins) share one LP column; the
//! column's value is credited to the lowest-indexed vertex of the group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::concept::{Dataset, HypothesisPattern};
use crate::graph::{ContradictionGraph, IndependentSetFamily, Limits};
use crate::lp::LinearProgram;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Nonnegative vertex weights whose sum over any independent set is at most 1.
#[derive(Debug, Clone)]
pub struct FractionalClique<'g> {
    graph: &'g ContradictionGraph,
    weights: Vec<Rational>,
}

impl<'g> FractionalClique<'g> {
    pub fn new(graph: &'g ContradictionGraph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != graph.len() {
            return Err(Error::LengthMismatch {
                expected: graph.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Certificate("negative clique weight".into()));
        }
        Ok(FractionalClique { graph, weights })
    }

    /// Weight 1 on each listed vertex.
    pub fn integral(graph: &'g ContradictionGraph, members: &[usize]) -> Result<Self> {
        let mut weights = alloc::vec![Rational::zero(); graph.len()];
        for &i in members {
            graph.vertex(i)?;
            weights[i] = Rational::one();
        }
        FractionalClique::new(graph, weights)
    }

    pub fn graph(&self) -> &'g ContradictionGraph {
        self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn size(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Nonzero entries as `(vertex, weight)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
    }

    /// Largest weight any single pattern's consistent set collects.
    pub fn heaviest_pattern_load(&self, limits: &Limits) -> Result<Rational> {
        let mut worst = Rational::zero();
        for h in self.graph.all_patterns(limits)? {
            let load: Rational = self
                .support()
                .filter(|(i, _)| self.graph.vertices()[*i].admits(h.bits()))
                .map(|(_, w)| w.clone())
                .sum();
            if load > worst {
                worst = load;
            }
        }
        Ok(worst)
    }

    /// Checks the packing constraint of every set in the family.
    pub fn validate(&self, family: &IndependentSetFamily) -> Result<()> {
        for (h, set) in family.sets() {
            let load: Rational = set.ones().map(|i| self.weights[i].clone()).sum();
            if load > Rational::one() {
                return Err(Error::Certificate(format!(
                    "V_{h} carries clique weight {}",
                    rational::to_fraction_string(&load)
                )));
            }
        }
        Ok(())
    }
}

/// Nonnegative pattern weights covering every vertex with total weight at least 1.
#[derive(Debug, Clone)]
pub struct FractionalColoring<'g> {
    graph: &'g ContradictionGraph,
    weights: Vec<(HypothesisPattern, Rational)>,
}

impl<'g> FractionalColoring<'g> {
    pub fn new(
        graph: &'g ContradictionGraph,
        mut weights: Vec<(HypothesisPattern, Rational)>,
    ) -> Result<Self> {
        let width = graph.class().universe_size();
        if let Some((h, _)) = weights.iter().find(|(h, _)| h.width() != width) {
            return Err(Error::LengthMismatch {
                expected: width,
                got: h.width(),
            });
        }
        if weights.iter().any(|(_, w)| w.is_negative()) {
            return Err(Error::Certificate("negative coloring weight".into()));
        }
        weights.sort_by_key(|a| a.0);
        let mut merged: Vec<(HypothesisPattern, Rational)> = Vec::with_capacity(weights.len());
        for (h, w) in weights {
            match merged.last_mut() {
                Some((last, acc)) if *last == h => *acc += w,
                _ => merged.push((h, w)),
            }
        }
        Ok(FractionalColoring {
            graph,
            weights: merged,
        })
    }

    pub fn graph(&self) -> &'g ContradictionGraph {
        self.graph
    }

    pub fn weights(&self) -> &[(HypothesisPattern, Rational)] {
        &self.weights
    }

    pub fn colors(&self) -> Rational {
        self.weights.iter().map(|(_, w)| w).sum()
    }

    /// Total weight of patterns consistent with the dataset.
    pub fn cover(&self, dataset: &Dataset) -> Rational {
        self.weights
            .iter()
            .filter(|(h, _)| h.is_consistent(dataset))
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// Every vertex has cover at least 1.
    pub fn validate(&self) -> Result<()> {
        for v in self.graph.vertices() {
            let cover = self.cover(v);
            if cover < Rational::one() {
                return Err(Error::Certificate(format!(
                    "vertex {} is covered only {}",
                    v.render(),
                    rational::to_fraction_string(&cover)
                )));
            }
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &Rational) -> FractionalColoring<'g> {
        FractionalColoring {
            graph: self.graph,
            weights: self.weights.iter().map(|(h, w)| (*h, w * factor)).collect(),
        }
    }
}

/// A primal fractional clique and a dual fractional coloring of equal value.
#[derive(Debug, Clone)]
pub struct DualityCertificate<'g> {
    pub primal: FractionalClique<'g>,
    pub dual: FractionalColoring<'g>,
    pub value: Rational,
}

impl DualityCertificate<'_> {
    /// Re-checks both sides from scratch against the full maximal `V_h` family.
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        let family = self.primal.graph().independent_sets(limits, true)?;
        self.primal.validate(&family)?;
        self.dual.validate()?;
        if self.primal.size() != self.value || self.dual.colors() != self.value {
            return Err(Error::Certificate(format!(
                "primal {} and dual {} differ from value {}",
                rational::to_fraction_string(&self.primal.size()),
                rational::to_fraction_string(&self.dual.colors()),
                rational::to_fraction_string(&self.value)
            )));
        }
        Ok(())
    }
}

/// Fractional clique number `ω*_m` with a matched optimal fractional coloring.
pub fn omega_star<'g>(
    graph: &'g ContradictionGraph,
    limits: &Limits,
) -> Result<DualityCertificate<'g>> {
    let family = graph.independent_sets(limits, true)?;
    if family.is_empty() {
        return Err(Error::InfeasibleModel);
    }
    // Group vertices by the rows that contain them.
    let mut signature: Vec<Vec<usize>> = alloc::vec![Vec::new(); graph.len()];
    for (r, (_, set)) in family.sets().iter().enumerate() {
        for v in set.ones() {
            signature[v].push(r);
        }
    }
    let mut groups: BTreeMap<&[usize], usize> = BTreeMap::new();
    let mut representative: Vec<usize> = Vec::new();
    for (v, sig) in signature.iter().enumerate() {
        groups.entry(sig.as_slice()).or_insert_with(|| {
            representative.push(v);
            representative.len() - 1
        });
    }
    let mut rows: Vec<Vec<usize>> = alloc::vec![Vec::new(); family.len()];
    for (col, &v) in representative.iter().enumerate() {
        for &r in &signature[v] {
            rows[r].push(col);
        }
    }
    let lp = LinearProgram::packing(&rows, representative.len());
    let solution = lp.maximize()?;

    let mut weights = alloc::vec![Rational::zero(); graph.len()];
    for (col, &v) in representative.iter().enumerate() {
        weights[v] = solution.primal[col].clone();
    }
    let primal = FractionalClique::new(graph, weights)?;
    let dual_weights: Vec<(HypothesisPattern, Rational)> = family
        .sets()
        .iter()
        .zip(solution.dual)
        .filter(|(_, y)| !y.is_zero())
        .map(|((h, _), y)| (*h, y))
        .collect();
    let dual = FractionalColoring::new(graph, dual_weights)?;

    primal.validate(&family)?;
    dual.validate()?;
    if primal.size() != solution.value || dual.colors() != solution.value {
        return Err(Error::Certificate(
            "simplex optimum lost strong duality".into(),
        ));
    }
    Ok(DualityCertificate {
        primal,
        dual,
        value: solution.value,
    })
}

/// Weight `2^(m - |X|)` on every labeling: a vertex with `k` distinct points
/// is covered `2^(m - k) >= 1`, so at most `2^m` colors are needed.
pub fn uniform_coloring_witness<'g>(
    graph: &'g ContradictionGraph,
    limits: &Limits,
) -> Result<FractionalColoring<'g>> {
    let n = graph.class().universe_size() as i64;
    let w = rational::pow2(graph.m() as i64 - n);
    let weights = graph
        .all_patterns(limits)?
        .into_iter()
        .map(|h| (h, w.clone()))
        .collect();
    FractionalColoring::new(graph, weights)
}

/// A finitely supported distribution over labelings.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternDistribution {
    entries: Vec<(HypothesisPattern, Rational)>,
}

impl PatternDistribution {
    pub fn new(entries: Vec<(HypothesisPattern, Rational)>) -> Result<Self> {
        if entries.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidParams("negative probability".into()));
        }
        let total: Rational = entries.iter().map(|(_, p)| p).sum();
        if total != Rational::one() {
            return Err(Error::InvalidParams(format!(
                "probabilities sum to {}",
                rational::to_fraction_string(&total)
            )));
        }
        Ok(PatternDistribution { entries })
    }

    pub fn point_mass(h: HypothesisPattern) -> Self {
        PatternDistribution {
            entries: alloc::vec![(h, Rational::one())],
        }
    }

    pub fn entries(&self) -> &[(HypothesisPattern, Rational)] {
        &self.entries
    }

    pub fn prob_consistent(&self, dataset: &Dataset) -> Rational {
        self.prob_where(|h| h.is_consistent(dataset))
    }

    pub fn prob_where<F: Fn(&HypothesisPattern) -> bool>(&self, pred: F) -> Rational {
        self.entries
            .iter()
            .filter(|(h, _)| pred(h))
            .map(|(_, p)| p.clone())
            .sum()
    }

    /// Smallest consistency probability over the vertices of a graph.
    pub fn min_consistency(&self, graph: &ContradictionGraph) -> Rational {
        graph
            .vertices()
            .iter()
            .map(|v| self.prob_consistent(v))
            .min()
            .unwrap_or_else(Rational::one)
    }
}

/// Normalizes a coloring; every vertex is then consistent with a random
/// pattern with probability at least `1 / colors`.
pub fn coloring_to_distribution(coloring: &FractionalColoring<'_>) -> Result<PatternDistribution> {
    let colors = coloring.colors();
    if !colors.is_positive() {
        return Err(Error::ZeroColoring);
    }
    let entries = coloring
        .weights()
        .iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(h, w)| (*h, w / &colors))
        .collect();
    PatternDistribution::new(entries)
}

/// A finitely supported distribution over the vertices of a graph.
#[derive(Debug, Clone)]
pub struct DatasetDistribution<'g> {
    graph: &'g ContradictionGraph,
    entries: Vec<(usize, Rational)>,
}

impl DatasetDistribution<'_> {
    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn prob_consistent(&self, h: &HypothesisPattern) -> Rational {
        self.entries
            .iter()
            .filter(|(i, _)| h.is_consistent(&self.graph.vertices()[*i]))
            .map(|(_, p)| p.clone())
            .sum()
    }

    /// Largest consistency probability over all labelings.
    pub fn max_consistency(&self, limits: &Limits) -> Result<Rational> {
        Ok(self
            .graph
            .all_patterns(limits)?
            .iter()
            .map(|h| self.prob_consistent(h))
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

/// Normalizes a fractional clique; no labeling is then consistent with a
/// random dataset with probability above `1 / size`.
pub fn clique_to_distribution<'g>(
    clique: &FractionalClique<'g>,
) -> Result<DatasetDistribution<'g>> {
    let size = clique.size();
    if !size.is_positive() {
        return Err(Error::ZeroClique);
    }
    Ok(DatasetDistribution {
        graph: clique.graph(),
        entries: clique.support().map(|(i, w)| (i, w / &size)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique;
    use crate::concept::{ConceptClass, Family};
    use crate::rational::{int, pow2, ratio};
    use alloc::vec;

    fn graph(c: &ConceptClass, m: usize) -> ContradictionGraph {
        ContradictionGraph::build(c, m).unwrap()
    }

    fn diag() -> ConceptClass {
        Family::DisjointPairs { n: 2 }.generate().unwrap()
    }

    #[test]
    fn omega_star_examples() {
        let limits = Limits::default();
        let single = Family::Singleton { n: 2 }.generate().unwrap();
        for m in 1..=3 {
            let g = graph(&single, m);
            let cert = omega_star(&g, &limits).unwrap();
            assert_eq!(cert.value, int(1));
            cert.validate(&limits).unwrap();
        }
        let full2 = Family::Full { n: 2 }.generate().unwrap();
        let g = graph(&full2, 2);
        assert_eq!(omega_star(&g, &limits).unwrap().value, int(4));

        let g = graph(&diag(), 1);
        let cert = omega_star(&g, &limits).unwrap();
        assert_eq!(cert.value, int(2));
        cert.validate(&limits).unwrap();
        // δ = 1/2 on all four vertices is feasible with the same value.
        let half = FractionalClique::new(&g, vec![ratio(1, 2); 4]).unwrap();
        half.validate(&g.independent_sets(&limits, true).unwrap())
            .unwrap();
        assert_eq!(half.size(), int(2));
    }

    #[test]
    fn omega_star_sits_between_omega_and_two_to_the_m() {
        let limits = Limits::default();
        let c = Family::PaperExample.generate().unwrap();
        for m in 1..=3 {
            let g = graph(&c, m);
            let w = clique::max_clique(&g, limits.node_budget).members.len();
            let cert = omega_star(&g, &limits).unwrap();
            assert!(int(w as i64) <= cert.value);
            assert!(cert.value <= pow2(m as i64));
        }
    }

    #[test]
    fn uniform_witness_examples() {
        let limits = Limits::default();
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let g = graph(&full1, 1);
        let u = uniform_coloring_witness(&g, &limits).unwrap();
        assert_eq!(u.weights().len(), 2);
        assert!(u.weights().iter().all(|(_, w)| *w == int(1)));
        assert_eq!(u.colors(), int(2));
        u.validate().unwrap();

        let full2 = Family::Full { n: 2 }.generate().unwrap();
        let g = graph(&full2, 2);
        let u = uniform_coloring_witness(&g, &limits).unwrap();
        assert_eq!(u.colors(), int(4));
        let doubled = Dataset::from_pairs(&[(0, false), (0, false)]).unwrap();
        assert_eq!(u.cover(&doubled), int(2));

        let paper = Family::PaperExample.generate().unwrap();
        let g = graph(&paper, 3);
        let u = uniform_coloring_witness(&g, &limits).unwrap();
        assert_eq!(u.weights().len(), 16);
        assert!(u.weights().iter().all(|(_, w)| *w == ratio(1, 2)));
        assert_eq!(u.colors(), int(8));
        u.validate().unwrap();
    }

    #[test]
    fn distributions_from_colorings() {
        let limits = Limits::default();
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let g = graph(&full1, 1);
        let u = uniform_coloring_witness(&g, &limits).unwrap();
        let mu = coloring_to_distribution(&u).unwrap();
        assert!(mu.entries().iter().all(|(_, p)| *p == ratio(1, 2)));
        assert_eq!(mu.min_consistency(&g), ratio(1, 2));
        assert_eq!(coloring_to_distribution(&u.scaled(&int(2))).unwrap(), mu);

        let g = graph(&diag(), 1);
        let cert = omega_star(&g, &limits).unwrap();
        let mu = coloring_to_distribution(&cert.dual).unwrap();
        assert!(mu.min_consistency(&g) >= ratio(1, 2));

        let empty = FractionalColoring::new(&g, vec![]).unwrap();
        assert_eq!(
            coloring_to_distribution(&empty).unwrap_err(),
            Error::ZeroColoring
        );
    }

    #[test]
    fn distributions_from_cliques() {
        let limits = Limits::default();
        let full1 = Family::Full { n: 1 }.generate().unwrap();
        let g = graph(&full1, 1);
        let edge = FractionalClique::integral(&g, &[0, 1]).unwrap();
        let nu = clique_to_distribution(&edge).unwrap();
        assert_eq!(nu.max_consistency(&limits).unwrap(), ratio(1, 2));

        let paper = Family::PaperExample.generate().unwrap();
        let g = graph(&paper, 3);
        let best = clique::max_clique(&g, limits.node_budget).members;
        let red = FractionalClique::integral(&g, &best).unwrap();
        let nu = clique_to_distribution(&red).unwrap();
        assert_eq!(nu.max_consistency(&limits).unwrap(), ratio(1, 8));

        let g = graph(&diag(), 1);
        let half = FractionalClique::new(&g, vec![ratio(1, 2); 4]).unwrap();
        let nu = clique_to_distribution(&half).unwrap();
        assert_eq!(nu.max_consistency(&limits).unwrap(), ratio(1, 2));

        let zero = FractionalClique::new(&g, vec![int(0); 4]).unwrap();
        assert_eq!(
            clique_to_distribution(&zero).unwrap_err(),
            Error::ZeroClique
        );
    }
}
