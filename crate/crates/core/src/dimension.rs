//! VC, Littlestone, clique and fractional clique dimensions, and the
//! inequalities tying them together.
//!
//! Two analytic facts let a finite search certify the clique dimensions:
//!
//! * adjacency in `G_m` depends only on a dataset's support, so for `m >= |X|`
//!   the graph is a blow-up of a fixed graph by independent twins and both
//!   `omega_m` and `omega*_m` stop growing; no `m > |X|` can reach `2^m`;
//! * `omega_m <= (2m+1)^LD`, so any `m` with `(2m+1)^LD < 2^m` fails.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::clique::{self, CliqueDecision, MistakeTree};
use crate::concept::{ConceptClass, Point};
use crate::fractional;
use crate::graph::{ContradictionGraph, Limits};
use crate::numeric;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Largest size of a shattered point set, with one witness set.
pub fn vc_dimension(class: &ConceptClass) -> (usize, Vec<Point>) {
    let n = class.universe_size();
    let cap = usize::BITS as usize - 1 - class.len().leading_zeros() as usize;
    let mut best: Vec<usize> = Vec::new();
    for d in 1..=cap.min(n) {
        let mut chosen = Vec::with_capacity(d);
        match shattered_subset(class, 0, d, &mut chosen) {
            Some(found) => best = found,
            None => break,
        }
    }
    (best.len(), best.into_iter().map(Point).collect())
}

fn shattered_subset(
    class: &ConceptClass,
    start: usize,
    d: usize,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == d {
        return is_shattered(class, chosen).then(|| chosen.clone());
    }
    let n = class.universe_size();
    for x in start..n {
        if n - x < d - chosen.len() {
            break;
        }
        chosen.push(x);
        if let Some(found) = shattered_subset(class, x + 1, d, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

pub fn is_shattered(class: &ConceptClass, points: &[usize]) -> bool {
    let mut seen = alloc::collections::BTreeSet::new();
    for &row in class.rows() {
        let proj = points
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | (((row >> x) & 1) << i));
        seen.insert(proj);
    }
    seen.len() == 1usize << points.len()
}

/// Memoized Littlestone dimension keyed on the canonical row set.
#[derive(Debug, Default)]
pub struct LittlestoneSolver {
    memo: BTreeMap<Vec<u64>, (usize, Option<usize>)>,
}

impl LittlestoneSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn dimension(&mut self, class: &ConceptClass) -> usize {
        self.solve(class).0
    }

    fn solve(&mut self, class: &ConceptClass) -> (usize, Option<usize>) {
        if let Some(hit) = self.memo.get(class.rows()) {
            return *hit;
        }
        // A complete tree of depth d needs 2^d distinct hypotheses.
        let ceiling = usize::BITS as usize - 1 - class.len().leading_zeros() as usize;
        let mut best = (0usize, None);
        if ceiling > 0 {
            for x in 0..class.universe_size() {
                let (Ok(Some(zero)), Ok(Some(one))) = (
                    class.restrict(Point(x), false),
                    class.restrict(Point(x), true),
                ) else {
                    continue;
                };
                let a = self.solve(&zero).0;
                if a < best.0 {
                    continue;
                }
                let b = self.solve(&one).0;
                let value = 1 + a.min(b);
                if value > best.0 {
                    best = (value, Some(x));
                    if value == ceiling {
                        break;
                    }
                }
            }
        }
        self.memo.insert(class.rows().to_vec(), best);
        best
    }

    /// A complete mistake tree of depth `LD` shattered by the class.
    pub fn witness(&mut self, class: &ConceptClass) -> MistakeTree {
        let (d, choice) = self.solve(class);
        match choice {
            None => MistakeTree::leaf(),
            Some(x) => {
                let zero = class
                    .restrict(Point(x), false)
                    .ok()
                    .flatten()
                    .expect("chosen split");
                let one = class
                    .restrict(Point(x), true)
                    .ok()
                    .flatten()
                    .expect("chosen split");
                MistakeTree::node(
                    x,
                    self.witness(&zero).truncate(d - 1),
                    self.witness(&one).truncate(d - 1),
                )
            }
        }
    }
}

pub fn littlestone_dimension(class: &ConceptClass) -> (usize, MistakeTree) {
    let mut solver = LittlestoneSolver::new();
    let d = solver.dimension(class);
    (d, solver.witness(class))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// Some `m` that could still reach `2^m` was left undecided.
    LowerBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::LowerBound => "lower-bound",
        })
    }
}

/// How a single `m` was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    /// `m <= LD`: the Littlestone witness tree yields a `2^m` clique.
    PassByTree,
    PassBySearch,
    /// Exact LP optimum equals `2^m`.
    PassByLp,
    FailBySearch,
    FailByLp,
    /// `(2m+1)^LD < 2^m`.
    FailByPolynomial,
    /// Boosted coloring bound `m^alpha < 2^m`.
    FailByBoosting,
    Undecided,
}

impl Decision {
    pub fn passes(self) -> bool {
        matches!(
            self,
            Decision::PassByTree | Decision::PassBySearch | Decision::PassByLp
        )
    }

    pub fn decided(self) -> bool {
        self != Decision::Undecided
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionValue {
    pub value: usize,
    pub exactness: Exactness,
    /// `decisions[i]` settles `m = i + 1`, for `m = 1..=|X|`; every larger
    /// `m` fails because `G_m` is then a twin blow-up of `G_|X|`.
    pub decisions: Vec<Decision>,
}

impl DimensionValue {
    fn from_decisions(decisions: Vec<Decision>) -> Self {
        let value = decisions
            .iter()
            .rposition(|d| d.passes())
            .map_or(0, |i| i + 1);
        let exactness = if decisions.iter().all(|d| d.decided()) {
            Exactness::Exact
        } else {
            Exactness::LowerBound
        };
        DimensionValue {
            value,
            exactness,
            decisions,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

impl fmt::Display for DimensionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.exactness)
    }
}

/// `sup{m : omega_m = 2^m}`; searched for `m <= m_max`, settled analytically beyond.
pub fn clique_dimension(
    class: &ConceptClass,
    m_max: usize,
    limits: &Limits,
) -> Result<DimensionValue> {
    if m_max == 0 {
        return Err(Error::InvalidParams("m_max must be at least 1".into()));
    }
    let ld = littlestone_dimension(class).0;
    let mut decisions = Vec::new();
    for m in 1..=class.universe_size() {
        let decision = if m <= ld {
            Decision::PassByTree
        } else if numeric::polynomial_below_exponential(m as u64, ld as u32) {
            Decision::FailByPolynomial
        } else if m <= m_max {
            let g = ContradictionGraph::build_with(class, m, limits)?;
            match clique::has_clique_of_size(&g, 1usize << m, limits.node_budget) {
                CliqueDecision::Yes(_) => Decision::PassBySearch,
                CliqueDecision::No => Decision::FailBySearch,
                CliqueDecision::Unknown => Decision::Undecided,
            }
        } else {
            Decision::Undecided
        };
        decisions.push(decision);
    }
    Ok(DimensionValue::from_decisions(decisions))
}

/// `alpha(eps/4) = (32 / eps^2) ln(2 / eps)`: with a separation of `eps`,
/// every `G_m` has a fractional coloring with `m^alpha` colors.
pub fn boosting_exponent(epsilon: &Rational) -> f64 {
    let e = rational::to_f64(epsilon);
    32.0 / (e * e) * libm::log(2.0 / e)
}

/// `sup{m : omega*_m = 2^m}` by exact LPs for `m <= m_max`.
pub fn fractional_clique_dimension(
    class: &ConceptClass,
    m_max: usize,
    limits: &Limits,
) -> Result<DimensionValue> {
    if m_max == 0 {
        return Err(Error::InvalidParams("m_max must be at least 1".into()));
    }
    let ld = littlestone_dimension(class).0;
    let mut decisions = Vec::new();
    let mut alpha: Option<f64> = None;
    for m in 1..=class.universe_size() {
        let decision = if m <= ld {
            Decision::PassByTree
        } else if m <= m_max {
            let g = ContradictionGraph::build_with(class, m, limits)?;
            let cert = fractional::omega_star(&g, limits)?;
            let full = rational::pow2(m as i64);
            if cert.value == full {
                Decision::PassByLp
            } else {
                let eps = cert.value.recip() - full.recip();
                let a = boosting_exponent(&eps);
                alpha = Some(alpha.map_or(a, |b: f64| b.min(a)));
                Decision::FailByLp
            }
        } else {
            // m^alpha < 2^m, compared in logs with a safety margin.
            match alpha {
                Some(a) if a * libm::log(m as f64) < m as f64 * core::f64::consts::LN_2 - 1e-9 => {
                    Decision::FailByBoosting
                }
                _ => Decision::Undecided,
            }
        };
        decisions.push(decision);
    }
    Ok(DimensionValue::from_decisions(decisions))
}

/// One row of the per-`m` table.
#[derive(Debug, Clone, PartialEq)]
pub struct MRow {
    pub m: usize,
    pub num_vertices: usize,
    pub omega: usize,
    pub omega_exact: bool,
    pub omega_star: Rational,
    pub two_pow_m: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub vc: usize,
    pub ld: usize,
    pub cd: DimensionValue,
    pub cd_star: DimensionValue,
    pub m_max: usize,
    pub rows: Vec<MRow>,
}

pub fn table_row(class: &ConceptClass, m: usize, limits: &Limits) -> Result<MRow> {
    let g = ContradictionGraph::build_with(class, m, limits)?;
    let search = clique::max_clique(&g, limits.node_budget);
    let cert = fractional::omega_star(&g, limits)?;
    Ok(MRow {
        m,
        num_vertices: g.len(),
        omega: search.members.len(),
        omega_exact: search.exact,
        omega_star: cert.value,
        two_pow_m: rational::pow2(m as i64),
    })
}

pub fn dimension_report(
    class: &ConceptClass,
    m_max: usize,
    limits: &Limits,
) -> Result<DimensionReport> {
    let rows = (1..=m_max)
        .map(|m| table_row(class, m, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionReport {
        vc: vc_dimension(class).0,
        ld: littlestone_dimension(class).0,
        cd: clique_dimension(class, m_max, limits)?,
        cd_star: fractional_clique_dimension(class, m_max, limits)?,
        m_max,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(out: &mut Vec<InequalityCheck>, name: String, pass: bool, detail: String) {
    out.push(InequalityCheck { name, pass, detail });
}

fn pow_rational(base: usize, exp: usize) -> Rational {
    (0..exp).fold(rational::int(1), |acc, _| acc * rational::int(base as i64))
}

/// Every cross-dimension inequality on the computed values, compared exactly.
pub fn check_inequalities(
    class: &ConceptClass,
    report: &DimensionReport,
    limits: &Limits,
) -> Result<Vec<InequalityCheck>> {
    let mut out = Vec::new();
    let (ld, cd) = (report.ld, report.cd.value);
    check(
        &mut out,
        "vc<=ld".into(),
        report.vc <= ld,
        format!("{} <= {}", report.vc, ld),
    );
    check(&mut out, "ld<=cd".into(), ld <= cd, format!("{ld} <= {cd}"));

    // The Littlestone witness tree must produce a full clique in G_LD.
    if ld >= 1 && ld <= report.m_max {
        let (_, tree) = littlestone_dimension(class);
        let g = ContradictionGraph::build_with(class, ld, limits)?;
        let ok = tree.is_shattered_by(class)
            && clique::clique_from_tree(&tree, &g).is_ok_and(|c| c.len() == 1usize << ld);
        check(
            &mut out,
            format!("ld_witness_clique m={ld}"),
            ok,
            format!("omega_{ld} = 2^{ld}"),
        );
    }

    let mut separated_at: Option<usize> = None;
    for row in &report.rows {
        let m = row.m;
        let omega = rational::int(row.omega as i64);
        let bound = if row.omega_exact {
            ""
        } else {
            " (omega is a lower bound)"
        };
        check(
            &mut out,
            format!("omega<=omega_star m={m}"),
            omega <= row.omega_star,
            format!(
                "{} <= {}{bound}",
                row.omega,
                rational::to_fraction_string(&row.omega_star)
            ),
        );
        check(
            &mut out,
            format!("omega_star<=2^m m={m}"),
            row.omega_star <= row.two_pow_m,
            format!(
                "{} <= {}",
                rational::to_fraction_string(&row.omega_star),
                row.two_pow_m
            ),
        );
        let poly_ld = pow_rational(2 * m + 1, ld);
        let poly_cd = pow_rational(2 * m + 1, cd);
        check(
            &mut out,
            format!("omega<=(2m+1)^ld m={m}"),
            omega <= poly_ld,
            format!("{} <= {}{bound}", row.omega, poly_ld),
        );
        check(
            &mut out,
            format!("(2m+1)^ld<=(2m+1)^cd m={m}"),
            poly_ld <= poly_cd,
            format!("{poly_ld} <= {poly_cd}"),
        );
        if let Some(m0) = separated_at {
            check(
                &mut out,
                format!("fractional_dichotomy m={m}"),
                row.omega_star < row.two_pow_m,
                format!(
                    "separated at m0={m0}, omega*_{m} = {}",
                    rational::to_fraction_string(&row.omega_star)
                ),
            );
        } else if row.omega_star < row.two_pow_m {
            separated_at = Some(m);
        }
    }

    if report.cd.is_exact() && ld >= 2 {
        let log2_ld = libm::log2(ld as f64);
        let cap = libm::fmax(2.0 * ld as f64 * log2_ld, 300.0);
        check(
            &mut out,
            "cd<=max(2ld*log2(ld),300)".into(),
            (cd as f64) <= cap,
            format!("{cd} <= {cap:.3}"),
        );
    }
    Ok(out)
}

/// For every `m` with `LD < m <= m_max`: `omega_m <= (2m+1)^LD`.
pub fn polynomial_dichotomy_holds(report: &DimensionReport) -> bool {
    report
        .rows
        .iter()
        .filter(|r| r.m > report.ld)
        .all(|r| rational::int(r.omega as i64) <= pow_rational(2 * r.m + 1, report.ld))
}

/// Positive when some tabulated `m` separates `omega*_m` from `2^m`.
pub fn separation_margin(row: &MRow) -> Rational {
    let eps = row.omega_star.recip() - row.two_pow_m.recip();
    if eps.is_negative() {
        rational::int(0)
    } else {
        eps
    }
}
