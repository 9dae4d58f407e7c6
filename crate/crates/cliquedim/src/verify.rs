//! Corpus-wide checks behind `verify-lemmas` and `verify-dichotomy`.

use std::fmt;

use cliquedim_core::boosting::{empirical_distribution, OptimalColoring};
use cliquedim_core::dimension::{self, DimensionReport};
use cliquedim_core::fractional::omega_star;
use cliquedim_core::numeric;
use cliquedim_core::rational::{self, Rational};
use cliquedim_core::{ContradictionGraph, Limits, Result};

use crate::corpus::Entry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.name, self.detail)
    }
}

fn line(name: String, pass: bool, detail: String) -> CheckLine {
    CheckLine { name, pass, detail }
}

pub fn thetas() -> [Rational; 4] {
    [
        rational::int(0),
        rational::ratio(1, 4),
        rational::ratio(1, 2),
        rational::int(1),
    ]
}

/// Duality certificates for `m = 1..=m_max`, each re-validated from scratch.
pub fn duality_lines(entry: &Entry, m_max: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let g = ContradictionGraph::build_with(&entry.class, m, limits)?;
        let cert = omega_star(&g, limits)?;
        let verdict = cert.validate(limits);
        out.push(line(
            format!("{} duality m={m}", entry.name),
            verdict.is_ok(),
            match verdict {
                Ok(()) => format!(
                    "primal = dual = {}",
                    rational::to_fraction_string(&cert.value)
                ),
                Err(e) => e.to_string(),
            },
        ));
    }
    Ok(out)
}

/// Low-population-error bound for every `theta` and every uniform empirical
/// distribution of a realizable dataset of length `m <= m_max`.
pub fn small_pop_err_lines(entry: &Entry, m_max: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let solver = OptimalColoring::solve(&entry.class, m, limits)?;
        let g = ContradictionGraph::build_with(&entry.class, m, limits)?;
        for theta in thetas() {
            let mut failures = Vec::new();
            for s in g.vertices() {
                let r = solver.small_pop_err(&empirical_distribution(s), &theta)?;
                if !r.pass {
                    failures.push(s.render());
                }
            }
            out.push(line(
                format!(
                    "{} small_pop_err m={m} theta={}",
                    entry.name,
                    rational::to_fraction_string(&theta)
                ),
                failures.is_empty(),
                format!("{} datasets, failures: [{}]", g.len(), failures.join(" ")),
            ));
        }
    }
    Ok(out)
}

pub fn inequality_lines(
    entry: &Entry,
    report: &DimensionReport,
    limits: &Limits,
) -> Result<Vec<CheckLine>> {
    Ok(dimension::check_inequalities(&entry.class, report, limits)?
        .into_iter()
        .map(|c| line(format!("{} {}", entry.name, c.name), c.pass, c.detail))
        .collect())
}

pub fn numeric_lines() -> Vec<CheckLine> {
    numeric::numeric_lemma_checks()
        .into_iter()
        .map(|c| line(c.name, c.pass, c.detail))
        .collect()
}

pub fn verify_lemmas(corpus: &[Entry], m_max: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for entry in corpus {
        let report = dimension::dimension_report(&entry.class, m_max, limits)?;
        out.extend(inequality_lines(entry, &report, limits)?);
        out.extend(duality_lines(entry, m_max, limits)?);
        out.extend(small_pop_err_lines(entry, m_max, limits)?);
    }
    out.extend(numeric_lines());
    Ok(out)
}

pub fn verify_dichotomy(corpus: &[Entry], m_max: usize, limits: &Limits) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for entry in corpus {
        let report = dimension::dimension_report(&entry.class, m_max, limits)?;
        out.push(line(
            format!("{} polynomial_dichotomy", entry.name),
            dimension::polynomial_dichotomy_holds(&report),
            format!(
                "ld={} omega=[{}]",
                report.ld,
                join(report.rows.iter().map(|r| r.omega.to_string()))
            ),
        ));
        let stars = join(
            report
                .rows
                .iter()
                .map(|r| rational::to_fraction_string(&r.omega_star)),
        );
        let first_gap = report.rows.iter().position(|r| r.omega_star < r.two_pow_m);
        let holds =
            first_gap.is_none_or(|i| report.rows[i..].iter().all(|r| r.omega_star < r.two_pow_m));
        out.push(line(
            format!("{} fractional_dichotomy", entry.name),
            holds,
            format!("omega_star=[{stars}]"),
        ));
        out.push(line(
            format!("{} vc<=ld", entry.name),
            report.vc <= report.ld,
            format!("{} <= {}", report.vc, report.ld),
        ));
    }
    Ok(out)
}

fn join<I: Iterator<Item = String>>(items: I) -> String {
    items.collect::<Vec<_>>().join(" ")
}
