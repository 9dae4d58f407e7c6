//! Boosting a normalized optimal fractional coloring into a distribution
//! whose consistency probability decays only polynomially in `m`.
//!
//! The booster runs Hedge with the `m` examples of `S` as experts. The loss of
//! expert `z = (x, y)` on `h` is `1[h(x) = y]`, so weight drifts towards the
//! examples the instances keep getting wrong. Natural log throughout.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::concept::{ConceptClass, Dataset, HypothesisPattern, LabeledExample, Point};
use crate::fractional::{self, PatternDistribution};
use crate::graph::{ContradictionGraph, Limits};
use crate::numeric;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Rounds: the smallest odd integer `>= ceil(2 ln m / gamma^2)`, at least 1.
pub fn rounds_for(m: usize, gamma: &Rational) -> usize {
    let g = rational::to_f64(gamma);
    let raw = libm::ceil(2.0 * libm::log(m as f64) / (g * g));
    let t = if raw.is_finite() && raw > 0.0 {
        raw as usize
    } else {
        0
    };
    if t % 2 == 1 {
        t
    } else {
        t + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoostConfig {
    pub m0: usize,
    pub epsilon: Rational,
    pub gamma: Rational,
    pub m: usize,
    pub rounds: usize,
}

impl BoostConfig {
    pub fn new(m0: usize, epsilon: Rational, gamma: Rational, m: usize) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::InvalidParams("epsilon must be positive".into()));
        }
        if !gamma.is_positive() || gamma >= rational::ratio(1, 2) {
            return Err(Error::InvalidParams("gamma must lie in (0, 1/2)".into()));
        }
        if !(&epsilon - rational::int(2) * &gamma).is_positive() {
            return Err(Error::InvalidParams(
                "epsilon - 2 gamma must be positive".into(),
            ));
        }
        if m == 0 || m0 == 0 {
            return Err(Error::InvalidParams("m and m0 must be positive".into()));
        }
        let rounds = rounds_for(m, &gamma);
        Ok(BoostConfig {
            m0,
            epsilon,
            gamma,
            m,
            rounds,
        })
    }

    /// `gamma = epsilon / 4`.
    pub fn with_default_gamma(m0: usize, epsilon: Rational, m: usize) -> Result<Self> {
        let gamma = &epsilon / rational::int(4);
        Self::new(m0, epsilon, gamma, m)
    }

    /// `alpha(gamma) = (2 / gamma^2) ln(1 / (epsilon - 2 gamma))`.
    pub fn alpha(&self) -> f64 {
        let g = rational::to_f64(&self.gamma);
        let gap = rational::to_f64(&(&self.epsilon - rational::int(2) * &self.gamma));
        2.0 / (g * g) * libm::log(1.0 / gap)
    }

    /// `m^-alpha(gamma)`, the guaranteed consistency probability.
    pub fn consistency_bound(&self) -> f64 {
        libm::pow(self.m as f64, -self.alpha())
    }
}

/// The normalized optimal fractional coloring of `G_m0`, with its margin.
#[derive(Debug, Clone, PartialEq)]
pub struct MuTilde {
    pub m0: usize,
    pub omega_star: Rational,
    pub epsilon: Rational,
    pub distribution: PatternDistribution,
}

pub fn mu_tilde(class: &ConceptClass, m0: usize, limits: &Limits) -> Result<MuTilde> {
    let graph = ContradictionGraph::build_with(class, m0, limits)?;
    let cert = fractional::omega_star(&graph, limits)?;
    let full = rational::pow2(m0 as i64);
    if cert.value >= full {
        return Err(Error::NoSeparation(m0));
    }
    let epsilon = cert.value.recip() - full.recip();
    let distribution = fractional::coloring_to_distribution(&cert.dual)?;
    Ok(MuTilde {
        m0,
        omega_star: cert.value,
        epsilon,
        distribution,
    })
}

/// Smallest `m0 <= m_max` with `omega*_m0 < 2^m0`.
pub fn smallest_separating_m0(
    class: &ConceptClass,
    m_max: usize,
    limits: &Limits,
) -> Result<MuTilde> {
    for m0 in 1..=m_max {
        match mu_tilde(class, m0, limits) {
            Err(Error::NoSeparation(_)) => continue,
            other => return other,
        }
    }
    Err(Error::NoSeparation(m_max))
}

/// Pointwise strict majority of an odd number of labelings.
pub fn majority_vote(patterns: &[HypothesisPattern]) -> Result<HypothesisPattern> {
    if patterns.len().is_multiple_of(2) {
        return Err(Error::EvenLength(patterns.len()));
    }
    let width = patterns[0].width();
    if let Some(p) = patterns.iter().find(|p| p.width() != width) {
        return Err(Error::LengthMismatch {
            expected: width,
            got: p.width(),
        });
    }
    let half = patterns.len() / 2;
    let mut bits = 0u64;
    for x in 0..width {
        let ones = patterns.iter().filter(|p| p.label(Point(x))).count();
        if ones > half {
            bits |= 1 << x;
        }
    }
    Ok(HypothesisPattern::new(bits, width))
}

/// Population loss `L_D(h)` of a labeling under a distribution over examples.
pub fn population_loss(h: &HypothesisPattern, dist: &[(LabeledExample, Rational)]) -> Rational {
    dist.iter()
        .filter(|(z, _)| h.label(z.point) != z.label)
        .map(|(_, p)| p.clone())
        .sum()
}

/// `Pr_{h ~ mu}[L_D(h) <= 1/2 - gamma]`.
pub fn gamma_good_mass(
    mu: &PatternDistribution,
    dist: &[(LabeledExample, Rational)],
    gamma: &Rational,
) -> Rational {
    let threshold = rational::ratio(1, 2) - gamma;
    mu.prob_where(|h| population_loss(h, dist) <= threshold)
}

/// Uniform distribution over the distinct examples of a multiset, weighted by multiplicity.
pub fn empirical_distribution(dataset: &Dataset) -> Vec<(LabeledExample, Rational)> {
    let n = dataset.len() as i64;
    let mut counts: BTreeMap<LabeledExample, i64> = BTreeMap::new();
    for z in dataset.examples() {
        *counts.entry(*z).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(z, c)| (z, rational::ratio(c, n)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Round {
    /// Distribution over the `m` experts before this round's update.
    pub weights: Vec<f64>,
    pub instance: HypothesisPattern,
    /// `losses[j] = 1[h_t(x_j) = y_j]`.
    pub losses: Vec<bool>,
    pub expected_loss: f64,
    /// `D_t(x, y)`: the weight of all experts equal to `(x, y)`.
    pub label_distribution: Vec<(LabeledExample, f64)>,
}

impl Round {
    /// `L_{D_t}(h_t)`.
    pub fn instance_loss(&self) -> f64 {
        1.0 - self.expected_loss
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpertGameTranscript {
    pub dataset: Dataset,
    pub eta: f64,
    pub rounds: Vec<Round>,
    /// Per expert: how many instances were consistent with it.
    pub cumulative: Vec<usize>,
    pub learner_loss: f64,
    pub regret: f64,
}

const WEIGHT_TOLERANCE: f64 = 1e-9;
/// Float comparisons near a threshold are resolved against the claim being tested.
const MARGIN: f64 = 1e-12;

impl ExpertGameTranscript {
    pub fn num_rounds(&self) -> usize {
        self.rounds.len()
    }

    /// `sqrt(2 T ln m)`.
    pub fn regret_bound(&self) -> f64 {
        libm::sqrt(2.0 * self.rounds.len() as f64 * libm::log(self.dataset.len() as f64))
    }

    pub fn regret_within_bound(&self) -> bool {
        self.regret <= self.regret_bound() + MARGIN
    }

    pub fn weights_normalized(&self) -> bool {
        self.rounds.iter().all(|r| {
            let total: f64 = r.weights.iter().sum();
            libm::fabs(total - 1.0) < WEIGHT_TOLERANCE && r.weights.iter().all(|w| *w >= 0.0)
        })
    }

    /// Round `t` is gamma-good when `L_{D_t}(h_t) <= 1/2 - gamma`.
    pub fn gamma_good(&self, gamma: &Rational) -> Vec<bool> {
        let threshold = 0.5 - rational::to_f64(gamma);
        self.rounds
            .iter()
            .map(|r| r.instance_loss() <= threshold - MARGIN)
            .collect()
    }

    pub fn all_gamma_good(&self, gamma: &Rational) -> bool {
        self.gamma_good(gamma).into_iter().all(|g| g)
    }

    pub fn majority(&self) -> Result<HypothesisPattern> {
        let instances: Vec<HypothesisPattern> = self.rounds.iter().map(|r| r.instance).collect();
        majority_vote(&instances)
    }

    pub fn majority_consistent(&self) -> Result<bool> {
        Ok(self.majority()?.is_consistent(&self.dataset))
    }

    /// All rounds gamma-good implies every expert is hit by more than `T/2`
    /// instances, hence the majority is consistent with the dataset.
    pub fn weak_to_strong_holds(&self, gamma: &Rational) -> Result<bool> {
        if !self.all_gamma_good(gamma) {
            return Ok(true);
        }
        let t = self.rounds.len();
        let counts_ok = self.cumulative.iter().all(|&c| 2 * c > t);
        Ok(counts_ok && self.majority_consistent()?)
    }

    /// Replays the losses with a rational multiplier `beta ~ e^-eta` and
    /// checks `regret^2 <= 2 T ln m` exactly, with `ln m` bounded from below.
    pub fn certify_exact(&self) -> ExactRegret {
        let m = self.dataset.len();
        let t = self.rounds.len();
        let scale = 1_000_000_000i64;
        let beta_num = libm::round(libm::exp(-self.eta) * scale as f64) as i64;
        let beta = rational::ratio(beta_num.clamp(1, scale), scale);
        let mut powers: Vec<Rational> = vec![Rational::one(); m];
        let mut learner = Rational::zero();
        let mut totals = vec![0usize; m];
        for r in &self.rounds {
            let total: Rational = powers.iter().sum();
            let hit: Rational = powers
                .iter()
                .zip(&r.losses)
                .filter(|(_, l)| **l)
                .map(|(w, _)| w.clone())
                .sum();
            learner += hit / &total;
            for (j, &l) in r.losses.iter().enumerate() {
                if l {
                    powers[j] *= &beta;
                    totals[j] += 1;
                }
            }
        }
        let best = totals.iter().copied().min().unwrap_or(0);
        let regret = learner - rational::int(best as i64);
        let ln_m_lower = if m <= 1 {
            Rational::zero()
        } else {
            numeric::ln2_lower() * numeric::log2_bracket(m as u64, 64).0
        };
        let bound_sq = rational::int(2 * t as i64) * ln_m_lower;
        let certified = !regret.is_positive() || &regret * &regret <= bound_sq;
        ExactRegret {
            beta,
            regret,
            certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactRegret {
    pub beta: Rational,
    pub regret: Rational,
    pub certified: bool,
}

/// Hedge over the examples of `S` with `eta = sqrt(2 ln m / T)` and uniform start.
pub fn run_expert_game(
    dataset: &Dataset,
    instances: &[HypothesisPattern],
    rounds: usize,
) -> Result<ExpertGameTranscript> {
    if instances.len() != rounds {
        return Err(Error::LengthMismatch {
            expected: rounds,
            got: instances.len(),
        });
    }
    let mut next = instances.iter();
    run_adaptive_game(dataset, rounds, |_| *next.next().expect("length checked"))
}

/// Like [`run_expert_game`], but the instance of each round is chosen after
/// seeing that round's label distribution `D_t`.
pub fn run_adaptive_game<F>(
    dataset: &Dataset,
    rounds: usize,
    mut choose: F,
) -> Result<ExpertGameTranscript>
where
    F: FnMut(&[(LabeledExample, f64)]) -> HypothesisPattern,
{
    if dataset.is_empty() || rounds == 0 {
        return Err(Error::InvalidParams(
            "the game needs at least one expert and one round".into(),
        ));
    }
    let experts = dataset.examples();
    let m = experts.len();
    let eta = libm::sqrt(2.0 * libm::log(m as f64) / rounds as f64);
    let decay = libm::exp(-eta);
    let mut weights = vec![1.0 / m as f64; m];
    let mut cumulative = vec![0usize; m];
    let mut learner_loss = 0.0;
    let mut log = Vec::with_capacity(rounds);

    for _ in 0..rounds {
        let label_distribution = label_distribution(experts, &weights);
        let h = choose(&label_distribution);
        if let Some(max) = dataset.max_point() {
            if h.width() <= max {
                return Err(Error::InvalidPoint {
                    point: max,
                    universe: h.width(),
                });
            }
        }
        let losses: Vec<bool> = experts
            .iter()
            .map(|z| h.label(z.point) == z.label)
            .collect();
        let expected_loss: f64 = weights
            .iter()
            .zip(&losses)
            .filter(|(_, l)| **l)
            .map(|(w, _)| w)
            .sum();
        log.push(Round {
            weights: weights.clone(),
            instance: h,
            label_distribution,
            losses: losses.clone(),
            expected_loss,
        });
        learner_loss += expected_loss;
        for (j, &l) in losses.iter().enumerate() {
            if l {
                weights[j] *= decay;
                cumulative[j] += 1;
            }
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
    }
    let best = cumulative.iter().copied().min().unwrap_or(0);
    Ok(ExpertGameTranscript {
        dataset: dataset.clone(),
        eta,
        rounds: log,
        cumulative,
        learner_loss,
        regret: learner_loss - best as f64,
    })
}

fn label_distribution(experts: &[LabeledExample], weights: &[f64]) -> Vec<(LabeledExample, f64)> {
    let mut acc: BTreeMap<LabeledExample, f64> = BTreeMap::new();
    for (z, w) in experts.iter().zip(weights) {
        *acc.entry(*z).or_insert(0.0) += w;
    }
    acc.into_iter().collect()
}

/// Draws i.i.d. labelings from a finitely supported distribution.
#[derive(Debug, Clone)]
pub struct PatternSampler {
    patterns: Vec<HypothesisPattern>,
    index: WeightedIndex<f64>,
}

impl PatternSampler {
    pub fn new(dist: &PatternDistribution) -> Result<Self> {
        let patterns: Vec<HypothesisPattern> = dist.entries().iter().map(|(h, _)| *h).collect();
        let weights: Vec<f64> = dist
            .entries()
            .iter()
            .map(|(_, p)| p.to_f64().unwrap_or_else(|| rational::to_f64(p)))
            .collect();
        let index = WeightedIndex::new(&weights)
            .map_err(|e| Error::InvalidParams(format!("sampling weights: {e}")))?;
        Ok(PatternSampler { patterns, index })
    }

    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> HypothesisPattern {
        self.patterns[self.index.sample(rng)]
    }

    pub fn sample_many<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        count: usize,
    ) -> Vec<HypothesisPattern> {
        (0..count).map(|_| self.sample(rng)).collect()
    }

    /// Majority of `rounds` independent draws: one sample from the boosted distribution.
    pub fn sample_boosted<R: rand::Rng + ?Sized>(
        &self,
        rng: &mut R,
        rounds: usize,
    ) -> HypothesisPattern {
        let width = self.patterns[0].width();
        let half = rounds / 2;
        let mut ones = vec![0usize; width];
        for _ in 0..rounds {
            let h = self.sample(rng);
            for (x, c) in ones.iter_mut().enumerate() {
                if h.label(Point(x)) {
                    *c += 1;
                }
            }
        }
        let bits = ones
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > half)
            .fold(0u64, |acc, (x, _)| acc | (1 << x));
        HypothesisPattern::new(bits, width)
    }
}

pub fn sample_boosted(
    class: &ConceptClass,
    config: &BoostConfig,
    seed: u64,
    limits: &Limits,
) -> Result<HypothesisPattern> {
    let mu = mu_tilde(class, config.m0, limits)?;
    let sampler = PatternSampler::new(&mu.distribution)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = sampler.sample_many(&mut rng, config.rounds);
    majority_vote(&draws)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallPopErrReport {
    pub theta: Rational,
    pub omega_star: Rational,
    /// `Pr_{h ~ mu*}[L_D(h) <= theta]`.
    pub probability: Rational,
    /// `1 / omega*_m - (1 - theta)^m`.
    pub bound: Rational,
    pub pass: bool,
}

/// The normalized optimal coloring of `G_m`, reusable across distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalColoring {
    pub m: usize,
    pub omega_star: Rational,
    pub distribution: PatternDistribution,
    class: ConceptClass,
}

impl OptimalColoring {
    pub fn solve(class: &ConceptClass, m: usize, limits: &Limits) -> Result<Self> {
        let graph = ContradictionGraph::build_with(class, m, limits)?;
        let cert = fractional::omega_star(&graph, limits)?;
        let distribution = fractional::coloring_to_distribution(&cert.dual)?;
        Ok(OptimalColoring {
            m,
            omega_star: cert.value,
            distribution,
            class: class.clone(),
        })
    }

    /// `Pr_{h ~ mu*}[L_D(h) <= theta] >= 1/omega*_m - (1 - theta)^m`, exactly.
    pub fn small_pop_err(
        &self,
        dist: &[(LabeledExample, Rational)],
        theta: &Rational,
    ) -> Result<SmallPopErrReport> {
        if theta.is_negative() || *theta > Rational::one() {
            return Err(Error::InvalidParams("theta must lie in [0, 1]".into()));
        }
        if dist.iter().any(|(_, p)| p.is_negative())
            || dist.iter().map(|(_, p)| p).sum::<Rational>() != Rational::one()
        {
            return Err(Error::InvalidParams(
                "not a probability distribution".into(),
            ));
        }
        for (z, _) in dist {
            self.class.check_point(z.point)?;
        }
        if !self
            .class
            .patterns()
            .any(|h| population_loss(&h, dist).is_zero())
        {
            return Err(Error::NotRealizableDistribution);
        }
        let probability = self
            .distribution
            .prob_where(|h| population_loss(h, dist) <= *theta);
        let one_minus = Rational::one() - theta;
        let tail = (0..self.m).fold(Rational::one(), |acc, _| acc * &one_minus);
        let bound = self.omega_star.recip() - tail;
        Ok(SmallPopErrReport {
            theta: theta.clone(),
            omega_star: self.omega_star.clone(),
            pass: probability >= bound,
            probability,
            bound,
        })
    }
}

pub fn small_pop_err_check(
    class: &ConceptClass,
    m: usize,
    dist: &[(LabeledExample, Rational)],
    theta: &Rational,
    limits: &Limits,
) -> Result<SmallPopErrReport> {
    OptimalColoring::solve(class, m, limits)?.small_pop_err(dist, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Family;
    use crate::rational::{int, ratio};

    fn diag() -> ConceptClass {
        Family::DisjointPairs { n: 2 }.generate().unwrap()
    }

    fn pat(s: &str) -> HypothesisPattern {
        HypothesisPattern::parse(s).unwrap()
    }

    #[test]
    fn rounds_are_odd() {
        assert_eq!(rounds_for(1, &ratio(1, 4)), 1);
        assert_eq!(rounds_for(3, &ratio(1, 16)), 563);
        assert_eq!(rounds_for(2, &ratio(1, 4)), 23);
        for m in 1..20 {
            assert_eq!(rounds_for(m, &ratio(1, 5)) % 2, 1);
        }
    }

    #[test]
    fn config_validation() {
        assert!(BoostConfig::new(2, ratio(1, 4), ratio(1, 8), 3).is_err());
        assert!(BoostConfig::new(2, ratio(1, 4), ratio(1, 2), 3).is_err());
        assert!(BoostConfig::new(2, int(0), ratio(1, 16), 3).is_err());
        let c = BoostConfig::with_default_gamma(2, ratio(1, 4), 3).unwrap();
        assert_eq!(c.gamma, ratio(1, 16));
        assert_eq!(c.rounds, 563);
        // (2 / gamma^2) ln 8 with gamma = 1/16.
        assert!((c.alpha() - 512.0 * libm::log(8.0)).abs() < 1e-9);
    }

    #[test]
    fn mu_tilde_examples() {
        let mu = mu_tilde(&diag(), 2, &Limits::default()).unwrap();
        assert!(mu.omega_star < int(4));
        assert!(mu.epsilon.is_positive());
        assert_eq!(mu.omega_star, int(2));
        assert_eq!(mu.epsilon, ratio(1, 4));

        let full = Family::Full { n: 2 }.generate().unwrap();
        assert_eq!(
            mu_tilde(&full, 2, &Limits::default()).unwrap_err(),
            Error::NoSeparation(2)
        );

        let single = Family::Singleton { n: 2 }.generate().unwrap();
        let mu = mu_tilde(&single, 1, &Limits::default()).unwrap();
        assert_eq!(mu.omega_star, int(1));
        assert_eq!(mu.epsilon, ratio(1, 2));
        assert_eq!(mu.distribution, PatternDistribution::point_mass(pat("00")));
    }

    #[test]
    fn mu_tilde_is_weakly_good_on_every_dataset() {
        let class = diag();
        let mu = mu_tilde(&class, 2, &Limits::default()).unwrap();
        let gamma = &mu.epsilon / int(4);
        let g = ContradictionGraph::build(&class, 2).unwrap();
        for v in g.vertices() {
            let d = empirical_distribution(v);
            assert!(gamma_good_mass(&mu.distribution, &d, &gamma) >= &mu.epsilon - int(2) * &gamma);
        }
    }

    #[test]
    fn majority_examples() {
        assert_eq!(majority_vote(&[pat("01")]).unwrap(), pat("01"));
        assert_eq!(
            majority_vote(&[pat("00"), pat("00"), pat("11")]).unwrap(),
            pat("00")
        );
        let rows = [pat("1010"), pat("1001"), pat("1110")];
        assert!(majority_vote(&rows).unwrap().label(Point(0)));
        assert_eq!(
            majority_vote(&[pat("0"), pat("1")]).unwrap_err(),
            Error::EvenLength(2)
        );
        assert_eq!(majority_vote(&[]).unwrap_err(), Error::EvenLength(0));
    }

    #[test]
    fn single_round_game() {
        let s = Dataset::from_pairs(&[(0, false), (1, true), (1, true)]).unwrap();
        let t = run_expert_game(&s, &[pat("10")], 1).unwrap();
        assert_eq!(t.rounds[0].weights, vec![1.0 / 3.0; 3]);
        assert!(t.regret_within_bound());
        assert!(t.weights_normalized());
        assert_eq!(
            run_expert_game(&s, &[pat("10")], 3).unwrap_err(),
            Error::LengthMismatch {
                expected: 3,
                got: 1
            }
        );
    }

    #[test]
    fn single_expert_is_a_point_mass() {
        let s = Dataset::from_pairs(&[(1, true)]).unwrap();
        let inst = [pat("01"), pat("00"), pat("11")];
        let t = run_expert_game(&s, &inst, 3).unwrap();
        for r in &t.rounds {
            assert_eq!(
                r.label_distribution,
                vec![(LabeledExample::new(1, true), 1.0)]
            );
        }
        assert_eq!(t.regret, 0.0);
    }

    #[test]
    fn constant_consistent_instances() {
        let s = Dataset::from_pairs(&[(0, false), (1, false)]).unwrap();
        let inst = vec![pat("00"); 9];
        let t = run_expert_game(&s, &inst, 9).unwrap();
        assert!(t.rounds.iter().all(|r| r.losses == vec![true, true]));
        assert!(t
            .rounds
            .iter()
            .all(|r| (r.expected_loss - 1.0).abs() < 1e-12));
        assert!(t.regret.abs() < 1e-12);
        assert!(t.majority_consistent().unwrap());
        assert!(t.weak_to_strong_holds(&ratio(1, 16)).unwrap());
        let exact = t.certify_exact();
        assert_eq!(exact.regret, int(0));
        assert!(exact.certified);
    }

    #[test]
    fn label_distribution_ignores_current_instance() {
        let s = Dataset::from_pairs(&[(0, false), (1, true), (2, true)]).unwrap();
        let inst = [pat("010"), pat("111"), pat("000"), pat("011"), pat("100")];
        let base = run_expert_game(&s, &inst, 5).unwrap();
        for t in 0..inst.len() {
            let mut swapped = inst;
            swapped[t] = pat("101");
            let other = run_expert_game(&s, &swapped, 5).unwrap();
            for u in 0..=t {
                assert_eq!(
                    base.rounds[u].label_distribution,
                    other.rounds[u].label_distribution
                );
            }
        }
    }

    #[test]
    fn boosted_sample_for_point_mass() {
        let single = Family::Singleton { n: 3 }.generate().unwrap();
        let c = BoostConfig::with_default_gamma(1, ratio(1, 2), 3).unwrap();
        for seed in 0..5 {
            assert_eq!(
                sample_boosted(&single, &c, seed, &Limits::default()).unwrap(),
                pat("000")
            );
        }
        let full = Family::Full { n: 1 }.generate().unwrap();
        assert_eq!(
            sample_boosted(&full, &c, 0, &Limits::default()).unwrap_err(),
            Error::NoSeparation(1)
        );
    }

    #[test]
    fn sampled_games_satisfy_the_implication() {
        let class = diag();
        let mu = mu_tilde(&class, 2, &Limits::default()).unwrap();
        let config = BoostConfig::with_default_gamma(2, mu.epsilon.clone(), 3).unwrap();
        let sampler = PatternSampler::new(&mu.distribution).unwrap();
        let g = ContradictionGraph::build(&class, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for v in g.vertices() {
            let inst = sampler.sample_many(&mut rng, config.rounds);
            let t = run_expert_game(v, &inst, config.rounds).unwrap();
            assert!(t.regret_within_bound());
            assert!(t.weak_to_strong_holds(&config.gamma).unwrap());
        }
    }

    #[test]
    fn small_pop_err_examples() {
        let class = diag();
        let l = Limits::default();
        let d = vec![
            (LabeledExample::new(0, false), ratio(1, 2)),
            (LabeledExample::new(1, false), ratio(1, 2)),
        ];
        let r = small_pop_err_check(&class, 2, &d, &ratio(1, 2), &l).unwrap();
        assert_eq!(r.omega_star, int(2));
        assert_eq!(r.bound, ratio(1, 4));
        assert!(r.pass, "{r:?}");
        let r = small_pop_err_check(&class, 2, &d, &int(1), &l).unwrap();
        assert_eq!(r.probability, int(1));
        assert!(r.pass);
        let bad = vec![
            (LabeledExample::new(0, false), ratio(1, 2)),
            (LabeledExample::new(1, true), ratio(1, 2)),
        ];
        assert_eq!(
            small_pop_err_check(&class, 2, &bad, &int(0), &l).unwrap_err(),
            Error::NotRealizableDistribution
        );
    }

    #[test]
    fn adaptive_game_matches_fixed_instances() {
        let s = Dataset::from_pairs(&[(0, false), (1, true), (2, true)]).unwrap();
        let instances = [pat("011"), pat("110"), pat("000"), pat("111"), pat("011")];
        let fixed = run_expert_game(&s, &instances, 5).unwrap();
        let mut seen = Vec::new();
        let mut next = instances.iter();
        let adaptive = run_adaptive_game(&s, 5, |d| {
            seen.push(d.to_vec());
            *next.next().unwrap()
        })
        .unwrap();
        assert_eq!(fixed, adaptive);
        let recorded: Vec<_> = fixed
            .rounds
            .iter()
            .map(|r| r.label_distribution.clone())
            .collect();
        assert_eq!(seen, recorded);
    }
}
