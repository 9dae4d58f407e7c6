//! Exact cliques, balanced-example elimination and mistake trees.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::concept::{ConceptClass, Dataset, LabeledExample, Point};
use crate::graph::ContradictionGraph;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Dense symmetric adjacency, used by the search routines so they also run on
/// graphs that are not contradiction graphs.
#[derive(Debug, Clone)]
pub struct AdjacencyMatrix {
    rows: Vec<FixedBitSet>,
}

impl AdjacencyMatrix {
    pub fn from_graph(g: &ContradictionGraph) -> Self {
        let n = g.len();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if g.adjacent(i, j) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        AdjacencyMatrix { rows }
    }

    /// Self-loops are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(i, j) in edges {
            if i != j {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
        AdjacencyMatrix { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }
}

/// Outcome of a maximum-clique search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    /// Sorted vertex indices of the best clique found.
    pub members: Vec<usize>,
    /// False when the node budget ran out; `members` is then only a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueDecision {
    Yes(Vec<usize>),
    No,
    Unknown,
}

struct Search<'a> {
    adj: &'a AdjacencyMatrix,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Vec<usize>,
    /// Branches that cannot beat this size are cut.
    floor: usize,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
}

impl Search<'_> {
    fn color_sort(&self, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in candidates {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&u| !self.adj.adjacent(u, v)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(candidates.len());
        let mut colors = Vec::with_capacity(candidates.len());
        for (k, class) in classes.into_iter().enumerate() {
            for v in class {
                order.push(v);
                colors.push(k + 1);
            }
        }
        (order, colors)
    }

    fn done(&self) -> bool {
        self.aborted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn expand(&mut self, current: &mut Vec<usize>, candidates: &[usize]) {
        let (order, colors) = self.color_sort(candidates);
        for idx in (0..order.len()).rev() {
            if self.done() {
                return;
            }
            if current.len() + colors[idx] <= self.floor.max(self.best.len()) {
                return;
            }
            if self.nodes >= self.budget {
                self.aborted = true;
                return;
            }
            self.nodes += 1;
            let v = order[idx];
            current.push(v);
            let next: Vec<usize> = order[..idx]
                .iter()
                .copied()
                .filter(|&u| self.adj.adjacent(v, u))
                .collect();
            if next.is_empty() {
                if current.len() > self.best.len() && current.len() > self.floor {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, &next);
            }
            current.pop();
        }
    }
}

fn initial_order(adj: &AdjacencyMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    // `expand` walks candidates from the back, so the high-degree vertices
    // that lead the ordering are placed last.
    order.sort_by(|&a, &b| adj.degree(b).cmp(&adj.degree(a)).then(a.cmp(&b)));
    order.reverse();
    order
}

/// Branch and bound with greedy-coloring bounds.
pub fn max_clique_in(adj: &AdjacencyMatrix, node_budget: u64) -> CliqueSearch {
    let mut search = Search {
        adj,
        budget: node_budget,
        nodes: 0,
        aborted: false,
        best: Vec::new(),
        floor: 0,
        target: None,
    };
    let order = initial_order(adj);
    search.expand(&mut Vec::new(), &order);
    let mut members = search.best;
    members.sort_unstable();
    CliqueSearch {
        members,
        exact: !search.aborted,
        nodes: search.nodes,
    }
}

pub fn has_clique_of_size_in(adj: &AdjacencyMatrix, k: usize, node_budget: u64) -> CliqueDecision {
    if k == 0 {
        return CliqueDecision::Yes(Vec::new());
    }
    if k > adj.len() {
        return CliqueDecision::No;
    }
    let mut search = Search {
        adj,
        budget: node_budget,
        nodes: 0,
        aborted: false,
        best: Vec::new(),
        floor: k - 1,
        target: Some(k),
    };
    let order = initial_order(adj);
    search.expand(&mut Vec::new(), &order);
    if search.best.len() >= k {
        let mut members = search.best;
        members.sort_unstable();
        CliqueDecision::Yes(members)
    } else if search.aborted {
        CliqueDecision::Unknown
    } else {
        CliqueDecision::No
    }
}

pub fn max_clique(g: &ContradictionGraph, node_budget: u64) -> CliqueSearch {
    max_clique_in(&AdjacencyMatrix::from_graph(g), node_budget)
}

pub fn has_clique_of_size(g: &ContradictionGraph, k: usize, node_budget: u64) -> CliqueDecision {
    has_clique_of_size_in(&AdjacencyMatrix::from_graph(g), k, node_budget)
}

/// Bron–Kerbosch with pivoting. The callback returns `false` to stop early.
pub fn for_each_maximal_clique<F>(adj: &AdjacencyMatrix, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let n = adj.len();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(adj, &mut r, p, x, &mut visit);
}

fn bron_kerbosch<F>(
    adj: &AdjacencyMatrix,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if p.is_clear() && x.is_clear() {
        return visit(r);
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| adj.neighbors(u).intersection(&p).count())
        .expect("p or x is nonempty");
    let branch: Vec<usize> = p.difference(adj.neighbors(pivot)).collect();
    for v in branch {
        let mut np = p.clone();
        np.intersect_with(adj.neighbors(v));
        let mut nx = x.clone();
        nx.intersect_with(adj.neighbors(v));
        r.push(v);
        let go_on = bron_kerbosch(adj, r, np, nx, visit);
        r.pop();
        if !go_on {
            return false;
        }
        p.set(v, false);
        x.insert(v);
    }
    true
}

/// A pairwise-contradicting set of vertices of one contradiction graph.
#[derive(Debug, Clone)]
pub struct Clique<'g> {
    graph: &'g ContradictionGraph,
    members: Vec<usize>,
}

impl<'g> Clique<'g> {
    pub fn new(graph: &'g ContradictionGraph, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &i in &members {
            graph.vertex(i)?;
        }
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if !graph.adjacent(i, j) {
                    return Err(Error::NotAClique(i, j));
                }
            }
        }
        Ok(Clique { graph, members })
    }

    pub fn graph(&self) -> &'g ContradictionGraph {
        self.graph
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn datasets(&self) -> impl Iterator<Item = &'g Dataset> + '_ {
        self.members.iter().map(|&i| &self.graph.vertices()[i])
    }

    /// Members whose dataset contains the example.
    pub fn holding(&self, example: LabeledExample) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| self.graph.vertices()[i].contains(example))
            .collect()
    }

    fn sub(&self, members: Vec<usize>) -> Clique<'g> {
        Clique {
            graph: self.graph,
            members,
        }
    }
}

/// A point whose two labels each occur in many clique members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPointReport {
    pub point: Point,
    pub count_zero: usize,
    pub count_one: usize,
    /// `(|C| - 1) / (2m)`.
    pub threshold: Rational,
}

impl BalancedPointReport {
    pub fn is_balanced(&self) -> bool {
        let z = rational::int(self.count_zero as i64);
        let o = rational::int(self.count_one as i64);
        z >= self.threshold && o >= self.threshold
    }
}

/// Bookkeeping of one elimination run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EliminationStats {
    pub clique_size: usize,
    pub m: usize,
    pub example_deletions: usize,
    pub edge_deletions: usize,
    /// Largest number of edges dropped by a single deletion.
    pub max_edges_per_step: usize,
    pub surviving_edges: usize,
}

impl EliminationStats {
    /// At most `|C| m` deletions, fewer than `binom(|C|, 2)` dropped edges,
    /// each step dropping fewer than `(|C|-1)/(2m)`, and an edge left over.
    pub fn accounting_holds(&self) -> bool {
        let c = self.clique_size;
        self.example_deletions <= c * self.m
            && self.edge_deletions < c * (c - 1) / 2
            && 2 * self.m * self.max_edges_per_step < c - 1
            && self.surviving_edges >= 1
    }
}

/// Runs the unbalanced-example elimination loop on working copies of the
/// member datasets and reports the point of a surviving contradiction.
pub fn find_balanced_point(clique: &Clique<'_>) -> Result<(BalancedPointReport, EliminationStats)> {
    let c = clique.len();
    if c < 2 {
        return Err(Error::DegenerateClique);
    }
    let m = clique.graph().m();
    let codes = 2 * clique.graph().class().universe_size();
    // mult[s][code]: copies of the example in working dataset s.
    let mut mult: Vec<Vec<usize>> = clique
        .datasets()
        .map(|d| {
            let mut row = vec![0usize; codes];
            for e in d.examples() {
                row[e.code()] += 1;
            }
            row
        })
        .collect();
    let mut holders: Vec<usize> = (0..codes)
        .map(|code| mult.iter().filter(|row| row[code] > 0).count())
        .collect();
    let contradict = |a: &[usize], b: &[usize]| (0..codes).any(|k| a[k] > 0 && b[k ^ 1] > 0);
    let mut alive = vec![vec![false; c]; c];
    for s in 0..c {
        for t in s + 1..c {
            let edge = contradict(&mult[s], &mult[t]);
            alive[s][t] = edge;
            alive[t][s] = edge;
        }
    }
    let mut stats = EliminationStats {
        clique_size: c,
        m,
        ..EliminationStats::default()
    };
    // count < (c-1)/(2m)  <=>  2m * count < c - 1
    let unbalanced = |count: usize| 2 * m * count < c - 1;

    'scan: loop {
        for s in 0..c {
            for code in 0..codes {
                if mult[s][code] == 0 || !unbalanced(holders[code ^ 1]) {
                    continue;
                }
                mult[s][code] -= 1;
                stats.example_deletions += 1;
                let mut dropped = 0;
                if mult[s][code] == 0 {
                    holders[code] -= 1;
                    for t in 0..c {
                        if t != s
                            && alive[s][t]
                            && mult[t][code ^ 1] > 0
                            && !contradict(&mult[s], &mult[t])
                        {
                            alive[s][t] = false;
                            alive[t][s] = false;
                            dropped += 1;
                        }
                    }
                }
                stats.edge_deletions += dropped;
                stats.max_edges_per_step = stats.max_edges_per_step.max(dropped);
                continue 'scan;
            }
        }
        break;
    }

    let mut survivor = None;
    for (s, row) in alive.iter().enumerate() {
        for (t, _) in row.iter().enumerate().skip(s + 1).filter(|(_, a)| **a) {
            stats.surviving_edges += 1;
            survivor.get_or_insert((s, t));
        }
    }
    let (s, t) = survivor.ok_or(Error::NoSurvivingEdge)?;
    let point = (0..codes / 2)
        .find(|&x| {
            (mult[s][2 * x] > 0 && mult[t][2 * x + 1] > 0)
                || (mult[s][2 * x + 1] > 0 && mult[t][2 * x] > 0)
        })
        .expect("surviving edge has a contradicting point");
    let report = BalancedPointReport {
        point: Point(point),
        count_zero: clique.holding(LabeledExample::new(point, false)).len(),
        count_one: clique.holding(LabeledExample::new(point, true)).len(),
        threshold: rational::ratio(c as i64 - 1, 2 * m as i64),
    };
    Ok((report, stats))
}

/// Binary tree with a point at every internal node; the 0-child comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MistakeTree {
    /// Surviving clique members for extracted trees, empty for abstract ones.
    Leaf(Vec<usize>),
    Node {
        point: Point,
        zero: Box<MistakeTree>,
        one: Box<MistakeTree>,
    },
}

impl MistakeTree {
    pub fn leaf() -> Self {
        MistakeTree::Leaf(Vec::new())
    }

    pub fn node(point: usize, zero: MistakeTree, one: MistakeTree) -> Self {
        MistakeTree::Node {
            point: Point(point),
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    /// Length of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            MistakeTree::Leaf(_) => 0,
            MistakeTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn min_leaf_depth(&self) -> usize {
        match self {
            MistakeTree::Leaf(_) => 0,
            MistakeTree::Node { zero, one, .. } => {
                1 + zero.min_leaf_depth().min(one.min_leaf_depth())
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.depth() == self.min_leaf_depth()
    }

    /// Cuts every path at `depth`, merging the members of removed leaves.
    pub fn truncate(self, depth: usize) -> MistakeTree {
        match self {
            MistakeTree::Leaf(members) => MistakeTree::Leaf(members),
            node if depth == 0 => {
                let mut members = node.members();
                members.sort_unstable();
                MistakeTree::Leaf(members)
            }
            MistakeTree::Node { point, zero, one } => MistakeTree::Node {
                point,
                zero: Box::new(zero.truncate(depth - 1)),
                one: Box::new(one.truncate(depth - 1)),
            },
        }
    }

    pub fn members(&self) -> Vec<usize> {
        match self {
            MistakeTree::Leaf(members) => members.clone(),
            MistakeTree::Node { zero, one, .. } => {
                let mut all = zero.members();
                all.extend(one.members());
                all
            }
        }
    }

    /// Labeled root-to-leaf paths, left to right.
    pub fn branches(&self) -> Vec<Vec<LabeledExample>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_branches(&mut path, &mut out);
        out
    }

    fn collect_branches(&self, path: &mut Vec<LabeledExample>, out: &mut Vec<Vec<LabeledExample>>) {
        match self {
            MistakeTree::Leaf(_) => out.push(path.clone()),
            MistakeTree::Node { point, zero, one } => {
                path.push(LabeledExample {
                    point: *point,
                    label: false,
                });
                zero.collect_branches(path, out);
                path.pop();
                path.push(LabeledExample {
                    point: *point,
                    label: true,
                });
                one.collect_branches(path, out);
                path.pop();
            }
        }
    }

    /// Every branch is realized by some hypothesis of the class.
    pub fn is_shattered_by(&self, class: &ConceptClass) -> bool {
        self.branches()
            .iter()
            .all(|path| match Dataset::new(path.clone()) {
                Ok(d) => class.check_dataset(&d).is_ok() && class.is_realizable(&d),
                Err(_) => false,
            })
    }

    pub fn points(&self) -> Vec<Point> {
        match self {
            MistakeTree::Leaf(_) => Vec::new(),
            MistakeTree::Node { point, zero, one } => {
                let mut v = vec![*point];
                v.extend(zero.points());
                v.extend(one.points());
                v
            }
        }
    }
}

/// Recursively splits the clique at balanced points.
///
/// Branches stop independently once at most one member survives; the result
/// is then cut to its shallowest leaf so it is complete. For a clique of size
/// `s` the depth `T` satisfies `s <= (2m+1)^T`.
pub fn tree_from_clique(clique: &Clique<'_>) -> Result<MistakeTree> {
    if clique.is_empty() {
        return Err(Error::InvalidParams(
            "tree_from_clique needs a nonempty clique".into(),
        ));
    }
    let tree = split(clique)?;
    let depth = tree.min_leaf_depth();
    Ok(tree.truncate(depth))
}

fn split(clique: &Clique<'_>) -> Result<MistakeTree> {
    if clique.len() <= 1 {
        return Ok(MistakeTree::Leaf(clique.members().to_vec()));
    }
    let (report, _) = find_balanced_point(clique)?;
    let x = report.point.0;
    let zero = clique.sub(clique.holding(LabeledExample::new(x, false)));
    let one = clique.sub(clique.holding(LabeledExample::new(x, true)));
    Ok(MistakeTree::node(x, split(&zero)?, split(&one)?))
}

/// The `2^m` branch datasets of a complete shattered tree of depth `m`.
pub fn clique_from_tree<'g>(
    tree: &MistakeTree,
    graph: &'g ContradictionGraph,
) -> Result<Clique<'g>> {
    let m = graph.m();
    if tree.min_leaf_depth() != m {
        return Err(Error::NotComplete(tree.min_leaf_depth()));
    }
    if tree.depth() != m {
        return Err(Error::NotComplete(m));
    }
    let mut members = Vec::with_capacity(1 << m.min(30));
    for path in tree.branches() {
        let rendered = path
            .iter()
            .map(|e| format!("{e}"))
            .collect::<Vec<_>>()
            .join(";");
        let dataset = Dataset::new(path).map_err(|_| Error::NotShattered(rendered.clone()))?;
        graph.class().check_dataset(&dataset)?;
        let idx = graph
            .index_of(&dataset)
            .ok_or(Error::NotShattered(rendered))?;
        members.push(idx);
    }
    Clique::new(graph, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Family;

    const BUDGET: u64 = 100_000_000;

    fn graph(family: Family, m: usize) -> ContradictionGraph {
        ContradictionGraph::build(&family.generate().unwrap(), m).unwrap()
    }

    fn paper_red_clique(g: &ContradictionGraph) -> Vec<usize> {
        // Red entries of the eight printed rows (zero-based points).
        let red: [&[(usize, bool)]; 8] = [
            &[(0, false), (1, false), (2, false)],
            &[(0, false), (1, true), (3, false)],
            &[(0, false), (2, true), (3, true)],
            &[(1, false), (2, true), (3, false)],
            &[(0, true), (1, false), (2, false)],
            &[(0, true), (1, true), (3, false)],
            &[(0, true), (2, true), (3, true)],
            &[(1, true), (2, false), (3, true)],
        ];
        red.iter()
            .map(|pairs| g.index_of(&Dataset::from_pairs(pairs).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn max_clique_examples() {
        for m in 1..=3 {
            let g = graph(Family::Singleton { n: 3 }, m);
            assert_eq!(max_clique(&g, BUDGET).members.len(), 1);
        }
        let g = graph(Family::Full { n: 2 }, 2);
        let r = max_clique(&g, BUDGET);
        assert!(r.exact);
        assert_eq!(r.members.len(), 4);
        assert!(g.is_clique(&r.members));

        let g = graph(Family::PaperExample, 3);
        assert_eq!(max_clique(&g, BUDGET).members.len(), 8);
        assert!(g.is_clique(&paper_red_clique(&g)));
    }

    #[test]
    fn decision_examples() {
        let g = graph(Family::Full { n: 2 }, 2);
        assert!(matches!(
            has_clique_of_size(&g, 4, BUDGET),
            CliqueDecision::Yes(_)
        ));
        let g = graph(Family::DisjointPairs { n: 2 }, 2);
        assert_eq!(has_clique_of_size(&g, 4, BUDGET), CliqueDecision::No);
        assert!(matches!(
            has_clique_of_size(&g, 1, BUDGET),
            CliqueDecision::Yes(_)
        ));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = graph(Family::Full { n: 3 }, 3);
        let r = max_clique(&g, 3);
        assert!(!r.exact);
        assert!(g.is_clique(&r.members));
        assert_eq!(has_clique_of_size(&g, 8, 2), CliqueDecision::Unknown);
    }

    #[test]
    fn clique_constructor_checks_adjacency() {
        let g = graph(Family::Full { n: 2 }, 1);
        // (0:0) and (1:0) do not contradict.
        let a = g
            .index_of(&Dataset::from_pairs(&[(0, false)]).unwrap())
            .unwrap();
        let b = g
            .index_of(&Dataset::from_pairs(&[(1, false)]).unwrap())
            .unwrap();
        assert!(matches!(
            Clique::new(&g, vec![a, b]),
            Err(Error::NotAClique(..))
        ));
    }

    #[test]
    fn balanced_point_examples() {
        let g = graph(Family::Full { n: 1 }, 1);
        let c = Clique::new(&g, vec![0, 1]).unwrap();
        let (r, stats) = find_balanced_point(&c).unwrap();
        assert_eq!(r.point, Point(0));
        assert_eq!((r.count_zero, r.count_one), (1, 1));
        assert_eq!(r.threshold, rational::ratio(1, 2));
        assert!(stats.accounting_holds());

        let g = graph(Family::Full { n: 2 }, 2);
        let best = max_clique(&g, BUDGET).members;
        let c = Clique::new(&g, best).unwrap();
        let (r, stats) = find_balanced_point(&c).unwrap();
        assert_eq!(r.threshold, rational::ratio(3, 4));
        assert!(r.is_balanced());
        assert!(stats.accounting_holds());

        let g = graph(Family::PaperExample, 3);
        let c = Clique::new(&g, paper_red_clique(&g)).unwrap();
        let (r, stats) = find_balanced_point(&c).unwrap();
        assert_eq!(r.threshold, rational::ratio(7, 6));
        assert!(r.count_zero >= 2 && r.count_one >= 2);
        assert!(stats.accounting_holds());

        let single = Clique::new(&g, vec![0]).unwrap();
        assert_eq!(
            find_balanced_point(&single).unwrap_err(),
            Error::DegenerateClique
        );
    }

    #[test]
    fn tree_from_clique_examples() {
        let g = graph(Family::Full { n: 2 }, 1);
        let c = Clique::new(&g, vec![1]).unwrap();
        assert_eq!(tree_from_clique(&c).unwrap(), MistakeTree::Leaf(vec![1]));

        let g = graph(Family::Full { n: 3 }, 3);
        let c = Clique::new(&g, max_clique(&g, BUDGET).members).unwrap();
        assert_eq!(c.len(), 8);
        let t = tree_from_clique(&c).unwrap();
        assert!(t.is_complete());
        assert!(t.is_shattered_by(g.class()));
        assert!(7usize.pow(t.depth() as u32) >= 8);

        let g = graph(Family::PaperExample, 3);
        let c = Clique::new(&g, paper_red_clique(&g)).unwrap();
        let t = tree_from_clique(&c).unwrap();
        assert!(t.depth() >= 2 && t.depth() <= 2);
        assert!(t.is_shattered_by(g.class()));
    }

    #[test]
    fn clique_from_tree_examples() {
        let g = graph(Family::Full { n: 1 }, 1);
        let t = MistakeTree::node(0, MistakeTree::leaf(), MistakeTree::leaf());
        assert_eq!(clique_from_tree(&t, &g).unwrap().members(), &[0, 1]);

        let g = graph(Family::Full { n: 2 }, 2);
        let t = MistakeTree::node(
            0,
            MistakeTree::node(1, MistakeTree::leaf(), MistakeTree::leaf()),
            MistakeTree::node(1, MistakeTree::leaf(), MistakeTree::leaf()),
        );
        assert_eq!(clique_from_tree(&t, &g).unwrap().len(), 4);

        let g = graph(Family::DisjointPairs { n: 2 }, 2);
        assert!(matches!(
            clique_from_tree(&t, &g),
            Err(Error::NotShattered(_))
        ));

        let lopsided = MistakeTree::node(
            0,
            MistakeTree::leaf(),
            MistakeTree::node(1, MistakeTree::leaf(), MistakeTree::leaf()),
        );
        assert!(matches!(
            clique_from_tree(&lopsided, &g),
            Err(Error::NotComplete(_))
        ));
    }

    #[test]
    fn maximal_cliques_of_a_path() {
        let adj = AdjacencyMatrix::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut found = Vec::new();
        for_each_maximal_clique(&adj, |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            found.push(c);
            true
        });
        found.sort();
        assert_eq!(found, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }
}
