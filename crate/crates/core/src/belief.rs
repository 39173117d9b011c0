//! Diagnosis space, signal model, and posterior-update operators.
//!
//! The normative benchmark is `bayes_posterior`: elementwise prior times
//! signal likelihood, normalized. The behavioral operator
//! `explained_posterior` additionally multiplies the recommended option's
//! likelihood by a persuasiveness weight exp(lambda * q) that grows with the
//! perceived quality q of the accompanying explanation, regardless of
//! whether the recommendation is correct.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the simplex sum invariant on constructed belief vectors.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// Probabilities below this are flushed to zero before renormalization,
/// which keeps long simulation chains free of denormals.
const PROB_FLOOR: f64 = 1e-15;

/// The set of diagnosis options beliefs are defined over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosisSpace {
    labels: Vec<String>,
}

impl DiagnosisSpace {
    /// Space with explicit option labels. Requires at least two distinct labels.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::Invalid(format!(
                "diagnosis space needs at least 2 options, got {}",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate option label '{a}'")));
            }
        }
        Ok(Self { labels })
    }

    /// Space with `n` options labeled A, B, C, ... (n <= 26).
    pub fn with_letter_labels(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::Invalid(format!("letter labels support up to 26 options, got {n}")));
        }
        Self::new((0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect())
    }

    /// The canonical five-option space A-E.
    pub fn five() -> Self {
        Self::with_letter_labels(5).expect("5 <= 26")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Result<&str> {
        self.check_option(index)?;
        Ok(&self.labels[index])
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_option(&self, index: usize) -> Result<()> {
        if index < self.n() {
            Ok(())
        } else {
            Err(Error::OptionOutOfRange { index, n: self.n() })
        }
    }
}

impl Default for DiagnosisSpace {
    fn default() -> Self {
        Self::five()
    }
}

/// A point on the probability simplex over the diagnosis options.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefVector {
    probs: Vec<f64>,
}

impl BeliefVector {
    /// Validates entries in [0, 1] and sum within [`SIMPLEX_TOL`] of one,
    /// then flushes sub-floor entries and renormalizes exactly.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probs, SIMPLEX_TOL)
    }

    /// Same as [`BeliefVector::new`] but accepting a caller-chosen sum
    /// tolerance (the trial CSV schema allows 1e-6).
    pub fn with_tolerance(probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::Invalid(format!(
                "belief vector needs at least 2 entries, got {}",
                probs.len()
            )));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0 + tol).contains(&p) {
                return Err(Error::Invalid(format!("probability {p} at index {i} outside [0, 1]")));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::Invalid(format!("probabilities sum to {sum}, expected 1")));
        }
        Ok(Self::normalized(probs))
    }

    /// Normalizes a vector of nonnegative weights with positive total mass.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Invalid("weights must be finite and nonnegative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::DegenerateUpdate);
        }
        Ok(Self::normalized(weights))
    }

    fn normalized(mut probs: Vec<f64>) -> Self {
        let sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= sum;
            if *p < PROB_FLOOR {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= sum;
        }
        Self { probs }
    }

    /// Equal mass on every option.
    pub fn uniform(n: usize) -> Self {
        Self { probs: vec![1.0 / n as f64; n] }
    }

    /// Full mass on a single option.
    pub fn degenerate(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::OptionOutOfRange { index, n });
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Mass on `index`; panics if out of range.
    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Index of the strictly unique maximum, or `None` on ties.
    pub fn strict_argmax(&self) -> Option<usize> {
        let mut best = 0usize;
        let mut tied = false;
        for (i, &p) in self.probs.iter().enumerate().skip(1) {
            if p > self.probs[best] {
                best = i;
                tied = false;
            } else if p == self.probs[best] {
                tied = true;
            }
        }
        if tied {
            None
        } else {
            Some(best)
        }
    }
}

/// Symmetric-error signal channel: the advisor names the truth with
/// probability `mu` and otherwise any other option uniformly.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalModel {
    mu: f64,
    space: DiagnosisSpace,
}

impl SignalModel {
    pub fn new(mu: f64, space: DiagnosisSpace) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) || !mu.is_finite() {
            return Err(Error::Invalid(format!("signal accuracy {mu} outside [0, 1]")));
        }
        Ok(Self { mu, space })
    }

    /// The canonical model: five options, accuracy 0.73.
    pub fn default_five() -> Self {
        Self { mu: 0.73, space: DiagnosisSpace::five() }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn space(&self) -> &DiagnosisSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Same space, different accuracy (used for perceived-accuracy variants).
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(mu, self.space.clone())
    }

    /// Probability mass the channel puts on each wrong option.
    pub fn off_signal(&self) -> f64 {
        (1.0 - self.mu) / (self.n() as f64 - 1.0)
    }

    /// P(signal = `observed` | truth = `truth`).
    pub fn likelihood(&self, observed: usize, truth: usize) -> Result<f64> {
        self.space.check_option(observed)?;
        self.space.check_option(truth)?;
        Ok(self.lik(observed, truth))
    }

    #[inline]
    pub(crate) fn lik(&self, observed: usize, truth: usize) -> f64 {
        if observed == truth {
            self.mu
        } else {
            self.off_signal()
        }
    }
}

/// P(signal = `observed` | truth = `truth`) under the symmetric channel.
pub fn signal_likelihood(model: &SignalModel, observed: usize, truth: usize) -> Result<f64> {
    model.likelihood(observed, truth)
}

/// Perceived quality of one explanation, a scalar in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Explanation {
    quality: f64,
}

impl Explanation {
    pub fn new(quality: f64) -> Result<Self> {
        check_quality(quality)?;
        Ok(Self { quality })
    }

    pub fn quality(&self) -> f64 {
        self.quality
    }
}

fn check_quality(q: f64) -> Result<()> {
    if !q.is_finite() || !(0.0..=1.0).contains(&q) {
        return Err(Error::Invalid(format!("explanation quality {q} outside [0, 1]")));
    }
    Ok(())
}

/// Behavioral parameters of the advice receiver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehaviorParams {
    /// Susceptibility to explanations; 0 recovers the normative updater.
    pub lambda: f64,
    /// Additive perceived-accuracy shift when advice arrives in the
    /// single-recommendation (deterministic) format.
    pub format_trust_bump: f64,
}

impl BehaviorParams {
    pub fn new(lambda: f64, format_trust_bump: f64) -> Result<Self> {
        let p = Self { lambda, format_trust_bump };
        p.validate()?;
        Ok(p)
    }

    /// Normative receiver: no persuasion, no format effect.
    pub fn normative() -> Self {
        Self { lambda: 0.0, format_trust_bump: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::Invalid(format!("lambda {} must be >= 0", self.lambda)));
        }
        if !self.format_trust_bump.is_finite() {
            return Err(Error::Invalid("format_trust_bump must be finite".into()));
        }
        Ok(())
    }
}

impl Default for BehaviorParams {
    fn default() -> Self {
        Self::normative()
    }
}

/// Clamp a (possibly bumped) perceived accuracy into [1/n, 0.999].
pub fn clamp_perceived_mu(mu: f64, n: usize) -> f64 {
    mu.clamp(1.0 / n as f64, 0.999)
}

/// How the advisor communicates its signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdviceFormat {
    /// Single recommendation ("recommends B").
    Deterministic,
    /// Full stated distribution ("70% B, 30% A, ...").
    Probabilistic,
}

impl AdviceFormat {
    /// Short code used in the trial CSV schema.
    pub fn code(&self) -> &'static str {
        match self {
            AdviceFormat::Deterministic => "det",
            AdviceFormat::Probabilistic => "prob",
        }
    }

    pub fn from_code(code: &str) -> Result<Self> {
        match code {
            "det" | "deterministic" => Ok(AdviceFormat::Deterministic),
            "prob" | "probabilistic" => Ok(AdviceFormat::Probabilistic),
            other => Err(Error::Invalid(format!("unknown advice format '{other}'"))),
        }
    }
}

impl std::fmt::Display for AdviceFormat {
    fmt_display_via_code!();
}

macro_rules! noop {
    () => {};
}
noop!();

/// One advisor recommendation event.
#[derive(Debug, Clone, PartialEq)]
pub struct AdviceEvent {
    pub recommended: usize,
    pub format: AdviceFormat,
    /// The advisor's announced distribution; its maximum sits on `recommended`.
    pub stated: BeliefVector,
    pub explanation: Option<Explanation>,
}

impl AdviceEvent {
    pub fn new(
        recommended: usize,
        format: AdviceFormat,
        stated: BeliefVector,
        explanation: Option<Explanation>,
    ) -> Result<Self> {
        if recommended >= stated.len() {
            return Err(Error::OptionOutOfRange { index: recommended, n: stated.len() });
        }
        let max = stated.probs().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if stated.prob(recommended) < max {
            return Err(Error::Invalid(
                "stated distribution must place its maximum on the recommended option".into(),
            ));
        }
        Ok(Self { recommended, format, stated, explanation })
    }

    /// Event whose stated distribution follows the symmetric channel: `mu` on
    /// the recommendation, the off-signal mass everywhere else. Requires
    /// `mu >= 1/n` so the maximum actually sits on the recommendation.
    pub fn canonical(
        model: &SignalModel,
        recommended: usize,
        format: AdviceFormat,
        explanation: Option<Explanation>,
    ) -> Result<Self> {
        model.space().check_option(recommended)?;
        if model.mu() < 1.0 / model.n() as f64 {
            return Err(Error::Invalid(format!(
                "canonical advice needs mu >= 1/n, got {}",
                model.mu()
            )));
        }
        let stated = BeliefVector::from_weights(
            (0..model.n()).map(|j| model.lik(recommended, j)).collect(),
        )?;
        Self::new(recommended, format, stated, explanation)
    }
}

fn check_same_dim(prior: &BeliefVector, model: &SignalModel) -> Result<()> {
    if prior.len() != model.n() {
        return Err(Error::DimensionMismatch { left: prior.len(), right: model.n() });
    }
    Ok(())
}

/// Normative posterior after the advisor recommends `recommended`.
pub fn bayes_posterior(
    prior: &BeliefVector,
    model: &SignalModel,
    recommended: usize,
) -> Result<BeliefVector> {
    check_same_dim(prior, model)?;
    model.space().check_option(recommended)?;
    let weights: Vec<f64> = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(j, p)| p * model.lik(recommended, j))
        .collect();
    BeliefVector::from_weights(weights)
}

/// Persuasiveness weight exp(lambda * q) applied to the recommended option.
pub fn persuasiveness(params: &BehaviorParams, quality: f64) -> Result<f64> {
    params.validate()?;
    check_quality(quality)?;
    Ok((params.lambda * quality).exp())
}

/// Behavioral posterior: the recommended option's likelihood is inflated by
/// the persuasiveness weight; all other options update as under Bayes.
/// Coincides with [`bayes_posterior`] exactly when `lambda * quality == 0`.
pub fn explained_posterior(
    prior: &BeliefVector,
    model: &SignalModel,
    recommended: usize,
    params: &BehaviorParams,
    quality: f64,
) -> Result<BeliefVector> {
    check_same_dim(prior, model)?;
    model.space().check_option(recommended)?;
    let psi = persuasiveness(params, quality)?;
    if psi.is_infinite() {
        // limit of the update as the weight diverges
        if prior.prob(recommended) > 0.0 && model.mu() > 0.0 {
            return BeliefVector::degenerate(prior.len(), recommended);
        }
        return bayes_posterior(prior, model, recommended);
    }
    let weights: Vec<f64> = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let w = p * model.lik(recommended, j);
            if j == recommended {
                w * psi
            } else {
                w
            }
        })
        .collect();
    BeliefVector::from_weights(weights)
}

/// Draw one signal from the channel: the truth with probability `mu`, else a
/// uniformly chosen wrong option.
pub fn sample_signal<R: Rng + ?Sized>(
    rng: &mut R,
    truth: usize,
    model: &SignalModel,
) -> Result<usize> {
    model.space().check_option(truth)?;
    if rng.random::<f64>() < model.mu() {
        return Ok(truth);
    }
    let k = rng.random_range(0..model.n() - 1);
    Ok(if k >= truth { k + 1 } else { k })
}

/// Distribution of perceived explanation quality. Drawn independently of
/// signal correctness, so expected quality is identical for correct and
/// incorrect recommendations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "lowercase")]
pub enum QualityDist {
    Beta { alpha: f64, beta: f64 },
    Fixed { value: f64 },
}

impl QualityDist {
    pub fn validate(&self) -> Result<()> {
        match *self {
            QualityDist::Beta { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite() && alpha > 0.0 && beta > 0.0) {
                    return Err(Error::Invalid(format!(
                        "beta shape parameters ({alpha}, {beta}) must be positive"
                    )));
                }
            }
            QualityDist::Fixed { value } => check_quality(value)?,
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match *self {
            QualityDist::Beta { alpha, beta } => alpha / (alpha + beta),
            QualityDist::Fixed { value } => value,
        }
    }
}

impl Default for QualityDist {
    fn default() -> Self {
        QualityDist::Beta { alpha: 5.0, beta: 2.0 }
    }
}

/// Draw one perceived-quality value.
pub fn sample_explanation_quality<R: Rng + ?Sized>(
    rng: &mut R,
    dist: &QualityDist,
) -> Result<f64> {
    dist.validate()?;
    match *dist {
        QualityDist::Beta { alpha, beta } => {
            let d = rand_distr::Beta::new(alpha, beta)
                .map_err(|e| Error::Invalid(format!("beta distribution: {e}")))?;
            Ok(d.sample(rng).clamp(0.0, 1.0))
        }
        QualityDist::Fixed { value } => Ok(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model(mu: f64) -> SignalModel {
        SignalModel::new(mu, DiagnosisSpace::five()).unwrap()
    }

    // Independent oracle: multiply prior by likelihood row, normalize by the
    // explicit sum. Deliberately avoids BeliefVector::from_weights.
    fn oracle_posterior(prior: &[f64], mu: f64, rec: usize, psi: f64) -> Vec<f64> {
        let n = prior.len();
        let off = (1.0 - mu) / (n as f64 - 1.0);
        let raw: Vec<f64> = prior
            .iter()
            .enumerate()
            .map(|(j, p)| p * if j == rec { mu * psi } else { off })
            .collect();
        let total: f64 = raw.iter().sum();
        raw.iter().map(|w| w / total).collect()
    }

    #[test]
    fn likelihood_matches_channel() {
        let m = model(0.73);
        assert_eq!(m.likelihood(1, 1).unwrap(), 0.73);
        assert!((m.likelihood(0, 1).unwrap() - 0.0675).abs() < 1e-15);
        let perfect = model(1.0);
        assert_eq!(perfect.likelihood(0, 1).unwrap(), 0.0);
        assert!(m.likelihood(7, 1).is_err());
    }

    #[test]
    fn likelihood_rows_sum_to_one() {
        for mu in [0.0, 0.2, 0.73, 1.0] {
            let m = model(mu);
            for truth in 0..5 {
                let row: f64 = (0..5).map(|obs| m.likelihood(obs, truth).unwrap()).sum();
                assert!((row - 1.0).abs() < 1e-12, "mu={mu} truth={truth} row={row}");
            }
        }
    }

    #[test]
    fn bayes_uniform_prior_puts_mu_on_recommendation() {
        let prior = BeliefVector::uniform(5);
        let post = bayes_posterior(&prior, &model(0.73), 1).unwrap();
        assert!((post.prob(1) - 0.73).abs() < 1e-12);
        for j in [0, 2, 3, 4] {
            assert!((post.prob(j) - 0.0675).abs() < 1e-12);
        }
    }

    #[test]
    fn bayes_hand_computed_case() {
        let prior = BeliefVector::new(vec![0.175, 0.30, 0.175, 0.175, 0.175]).unwrap();
        let post = bayes_posterior(&prior, &model(0.73), 1).unwrap();
        // 0.30*0.73 / (0.30*0.73 + 4*0.175*0.0675)
        assert!((post.prob(1) - 0.8225352112676056).abs() < 1e-12);
        let oracle = oracle_posterior(prior.probs(), 0.73, 1, 1.0);
        for j in 0..5 {
            assert!((post.prob(j) - oracle[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn bayes_degenerate_prior_stays_put() {
        let prior = BeliefVector::degenerate(5, 0).unwrap();
        let post = bayes_posterior(&prior, &model(0.73), 1).unwrap();
        assert_eq!(post.prob(0), 1.0);
    }

    #[test]
    fn bayes_zero_mass_is_degenerate_error() {
        let prior = BeliefVector::degenerate(5, 0).unwrap();
        let err = bayes_posterior(&prior, &model(1.0), 1).unwrap_err();
        assert!(matches!(err, Error::DegenerateUpdate));
    }

    #[test]
    fn persuasiveness_values() {
        let p = |l| BehaviorParams::new(l, 0.0).unwrap();
        assert_eq!(persuasiveness(&p(0.0), 0.9).unwrap(), 1.0);
        assert!((persuasiveness(&p(1.0), 0.5).unwrap() - 0.5f64.exp()).abs() < 1e-15);
        assert!((persuasiveness(&p(1.0), 0.5).unwrap() - 1.6487212707001282).abs() < 1e-12);
        assert!((persuasiveness(&p(2.0), 1.0).unwrap() - 7.38905609893065).abs() < 1e-12);
        assert!(persuasiveness(&p(1.0), -0.1).is_err());
        assert!(persuasiveness(&p(1.0), 1.1).is_err());
    }

    #[test]
    fn explained_equals_bayes_when_weight_is_one() {
        let prior = BeliefVector::new(vec![0.4, 0.1, 0.2, 0.05, 0.25]).unwrap();
        let m = model(0.73);
        let bayes = bayes_posterior(&prior, &m, 2).unwrap();
        let zero_lambda = BehaviorParams::new(0.0, 0.0).unwrap();
        let some_lambda = BehaviorParams::new(1.7, 0.0).unwrap();
        let by_lambda = explained_posterior(&prior, &m, 2, &zero_lambda, 0.9).unwrap();
        let by_quality = explained_posterior(&prior, &m, 2, &some_lambda, 0.0).unwrap();
        for j in 0..5 {
            assert_eq!(bayes.prob(j), by_lambda.prob(j));
            assert_eq!(bayes.prob(j), by_quality.prob(j));
        }
    }

    #[test]
    fn explained_hand_computed_case() {
        let prior = BeliefVector::uniform(5);
        let params = BehaviorParams::new(1.0, 0.0).unwrap();
        let post = explained_posterior(&prior, &model(0.73), 1, &params, 0.5).unwrap();
        // 0.146*e^0.5 / (0.146*e^0.5 + 0.054)
        let expected = 0.146 * 0.5f64.exp() / (0.146 * 0.5f64.exp() + 0.054);
        assert!((post.prob(1) - expected).abs() < 1e-12);
        assert!((post.prob(1) - 0.8167857704855042).abs() < 1e-10);
    }

    #[test]
    fn explained_monotone_in_lambda_and_quality() {
        let prior = BeliefVector::new(vec![0.3, 0.25, 0.2, 0.15, 0.1]).unwrap();
        let m = model(0.73);
        let mut last = 0.0;
        for lambda in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let params = BehaviorParams::new(lambda, 0.0).unwrap();
            let p = explained_posterior(&prior, &m, 3, &params, 0.7).unwrap().prob(3);
            assert!(p >= last);
            last = p;
        }
        let params = BehaviorParams::new(1.5, 0.0).unwrap();
        last = 0.0;
        for q in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let p = explained_posterior(&prior, &m, 3, &params, q).unwrap().prob(3);
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn sample_signal_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sure = model(1.0);
        let never = model(0.0);
        for _ in 0..200 {
            assert_eq!(sample_signal(&mut rng, 2, &sure).unwrap(), 2);
            assert_ne!(sample_signal(&mut rng, 2, &never).unwrap(), 2);
        }
    }

    #[test]
    fn sample_signal_frequency_approaches_mu() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = model(0.73);
        let draws = 1_000_000usize;
        let hits = (0..draws)
            .filter(|_| sample_signal(&mut rng, 3, &m).unwrap() == 3)
            .count();
        let frac = hits as f64 / draws as f64;
        assert!((frac - 0.73).abs() < 0.002, "frac={frac}");
    }

    #[test]
    fn quality_fixed_distribution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = QualityDist::Fixed { value: 1.0 };
        for _ in 0..50 {
            assert_eq!(sample_explanation_quality(&mut rng, &d).unwrap(), 1.0);
        }
    }

    #[test]
    fn quality_beta_mean_and_correctness_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = QualityDist::default();
        let m = model(0.73);
        let mut sum_correct = 0.0;
        let mut n_correct = 0usize;
        let mut sum_wrong = 0.0;
        let mut n_wrong = 0usize;
        let draws = 1_000_000usize;
        for _ in 0..draws {
            let signal = sample_signal(&mut rng, 0, &m).unwrap();
            let q = sample_explanation_quality(&mut rng, &d).unwrap();
            if signal == 0 {
                sum_correct += q;
                n_correct += 1;
            } else {
                sum_wrong += q;
                n_wrong += 1;
            }
        }
        let mean_correct = sum_correct / n_correct as f64;
        let mean_wrong = sum_wrong / n_wrong as f64;
        assert!((mean_correct - mean_wrong).abs() < 0.005);
        let overall = (sum_correct + sum_wrong) / draws as f64;
        assert!((overall - 5.0 / 7.0).abs() < 0.002, "overall={overall}");
    }

    #[test]
    fn quality_invalid_shapes_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bad = QualityDist::Beta { alpha: 0.0, beta: 2.0 };
        assert!(sample_explanation_quality(&mut rng, &bad).is_err());
    }

    #[test]
    fn canonical_advice_stated_matches_channel() {
        let adv =
            AdviceEvent::canonical(&model(0.73), 1, AdviceFormat::Probabilistic, None).unwrap();
        assert_eq!(adv.recommended, 1);
        assert!((adv.stated.prob(1) - 0.73).abs() < 1e-12);
        assert!((adv.stated.prob(0) - 0.0675).abs() < 1e-12);
    }

    #[test]
    fn advice_requires_max_on_recommendation() {
        let stated = BeliefVector::new(vec![0.5, 0.2, 0.1, 0.1, 0.1]).unwrap();
        assert!(AdviceEvent::new(1, AdviceFormat::Deterministic, stated, None).is_err());
    }

    #[test]
    fn belief_vector_validation() {
        assert!(BeliefVector::new(vec![0.5, 0.6]).is_err());
        assert!(BeliefVector::new(vec![-0.1, 1.1]).is_err());
        assert!(BeliefVector::new(vec![0.5, 0.5]).is_ok());
        // within the csv tolerance but not the strict one
        assert!(BeliefVector::new(vec![0.5000004, 0.5]).is_err());
        assert!(BeliefVector::with_tolerance(vec![0.5000004, 0.5], 1e-6).is_ok());
    }

    #[test]
    fn strict_argmax_tie_handling() {
        let tied = BeliefVector::new(vec![0.4, 0.4, 0.2, 0.0, 0.0]).unwrap();
        assert_eq!(tied.strict_argmax(), None);
        let clear = BeliefVector::new(vec![0.6, 0.1, 0.1, 0.1, 0.1]).unwrap();
        assert_eq!(clear.strict_argmax(), Some(0));
        assert_eq!(BeliefVector::uniform(5).strict_argmax(), None);
    }
}
