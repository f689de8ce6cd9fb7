//! Expert panels of exponential discounters, the unanimity check, and
//! recovery of a cost function from an evaluator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::axioms::{AxiomId, AxiomReport, Certificate};
use crate::discounting::{abel, CostFunction, Criterion, Evaluator};
use crate::error::{Error, Result};
use crate::gen::{random_stream, trial_rng, StreamShape};
use crate::streams::{Stream, Tail};

/// Discount factors recommended by experts, with the decision maker's cost
/// (lack of confidence) for each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPanel")]
pub struct ExpertPanel {
    factors: Vec<f64>,
    confidences: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPanel {
    factors: Vec<f64>,
    #[serde(default)]
    confidences: Option<Vec<f64>>,
}

impl TryFrom<RawPanel> for ExpertPanel {
    type Error = Error;

    fn try_from(raw: RawPanel) -> Result<Self> {
        let confidences = raw.confidences.unwrap_or_else(|| vec![0.0; raw.factors.len()]);
        ExpertPanel::new(raw.factors, confidences)
    }
}

impl ExpertPanel {
    pub fn new(factors: Vec<f64>, confidences: Vec<f64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidPanel("no experts".into()));
        }
        if factors.len() != confidences.len() {
            return Err(Error::InvalidPanel(format!(
                "{} factors but {} confidences",
                factors.len(),
                confidences.len()
            )));
        }
        if let Some(d) = factors.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(Error::InvalidPanel(format!("factor {d} outside (0, 1)")));
        }
        if let Some(k) = confidences.iter().find(|k| !(**k >= 0.0 && k.is_finite())) {
            return Err(Error::InvalidPanel(format!("cost {k} is not finite and >= 0")));
        }
        if !confidences.contains(&0.0) {
            return Err(Error::InvalidPanel("no expert has zero cost".into()));
        }
        Ok(ExpertPanel {
            factors,
            confidences,
        })
    }

    /// Equal confidence in every expert.
    pub fn unweighted(factors: Vec<f64>) -> Result<Self> {
        let n = factors.len();
        Self::new(factors, vec![0.0; n])
    }

    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    pub fn confidences(&self) -> &[f64] {
        &self.confidences
    }

    /// `c(δ_i) = κ_i`, `+inf` off the panel.
    pub fn cost(&self) -> CostFunction {
        let points = self
            .factors
            .iter()
            .copied()
            .zip(self.confidences.iter().copied())
            .collect();
        CostFunction::point_costs(points).expect("panel invariants imply a valid cost")
    }

    /// `min_{δ ∈ D} (δ − center)^2`.
    fn squared_distance(&self, center: f64) -> f64 {
        self.factors
            .iter()
            .map(|d| (d - center) * (d - center))
            .fold(f64::INFINITY, f64::min)
    }
}

/// The variational criterion induced by the panel.
pub fn panel_criterion(panel: &ExpertPanel) -> Criterion {
    Criterion::variational(panel.cost())
}

/// Stream with `D_δ'(x) = α (δ' − center)^2` for every `δ' ∈ [0, 1)`:
/// `x_0 = α c^2`, `x_1 = α (c^2 − 2c)`, `x_t = α (1 − c)^2` for `t ≥ 2`.
pub fn unanimity_probe(center: f64, alpha: f64) -> Result<Stream> {
    if !(0.0..1.0).contains(&center) {
        return Err(Error::InvalidDelta(center));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidScale(alpha));
    }
    let c = center;
    Stream::new(
        vec![alpha * c * c, alpha * (c * c - 2.0 * c)],
        Tail::Constant(alpha * (1.0 - c) * (1.0 - c)),
    )
}

const PROBE_ALPHAS: [f64; 7] = [1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6];

/// Checks that `ev` ranks `x` above `y` whenever every expert does.
///
/// Random trials add an expert-dominated perturbation to a random `y` (trial 0
/// uses the empty perturbation). After them, probe streams centered at
/// off-panel factors are fired: every expert values `probe(c, α)` at least
/// `θ = α min_{δ∈D} (δ − c)^2`, so unanimity demands `I(probe) ≥ θ`. A
/// finite cost anywhere off the panel fails this for large enough `α`.
pub fn check_unanimity<E: Evaluator + ?Sized>(
    panel: &ExpertPanel,
    ev: &E,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    let shape = StreamShape::default();
    let experts_min = |s: &Stream| {
        panel
            .factors
            .iter()
            .map(|&d| abel(s, d))
            .fold(f64::INFINITY, f64::min)
    };

    let random: Result<Vec<Option<Certificate>>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let y = random_stream(&mut rng, &shape);
            let x = if trial == 0 {
                y.clone()
            } else {
                let e0 = random_stream(&mut rng, &shape);
                let slack = rand::Rng::random_range(&mut rng, 0.0..=1.0);
                y.add(&e0.translate(slack - experts_min(&e0)))
            };
            let (lhs, rhs) = (ev.evaluate(&x)?, ev.evaluate(&y)?);
            let gap = rhs - lhs;
            Ok((gap > tol).then_some(Certificate {
                trial,
                x,
                d: None,
                y: Some(y),
                sigma: None,
                lhs,
                rhs,
                gap,
            }))
        })
        .collect();

    let centers: Vec<f64> = (0..20)
        .map(|i| i as f64 * 0.05)
        .filter(|c| panel.squared_distance(*c) > 1e-12)
        .collect();
    let probes: Vec<(f64, f64)> = centers
        .iter()
        .flat_map(|&c| PROBE_ALPHAS.iter().map(move |&a| (c, a)))
        .collect();
    let hunted: Result<Vec<Option<Certificate>>> = probes
        .par_iter()
        .enumerate()
        .map(|(k, &(center, alpha))| {
            let x = unanimity_probe(center, alpha)?;
            let theta = alpha * panel.squared_distance(center);
            let lhs = ev.evaluate(&x)?;
            let gap = (theta - lhs) / (1.0 + alpha);
            Ok((gap > tol).then(|| Certificate {
                trial: trials + k,
                x,
                d: None,
                y: Some(Stream::constant(theta)),
                sigma: None,
                lhs,
                rhs: theta,
                gap,
            }))
        })
        .collect();

    let mut outcomes = random?;
    outcomes.extend(hunted?);
    Ok(AxiomReport::from_outcomes(
        AxiomId::Unanimity(panel.factors.clone()),
        outcomes,
        seed,
        tol,
    ))
}

/// Test streams used to bound the cost from below.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeFamily {
    /// Scales of the probe streams and of the early-loss streams
    /// `(−α, 0, 0, ...)`.
    pub probe_alphas: Vec<f64>,
    pub random_streams: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostBound {
    pub delta: f64,
    pub cost_lower_bound: f64,
}

/// `ĉ(δ) = max_{x ∈ family} { I(x) − D_δ(x) }` on each grid point.
///
/// The canonical (maximal) cost is the same supremum over all bounded
/// streams, so `ĉ` is a lower bound for it and grows with the family. The
/// family holds the constant 1, probes centered at `0` and at every grid
/// point for each `α`, the streams `(−α, 0, 0, ...)`, and seeded random
/// streams. Applied to evaluators that are not variational the output is a
/// heuristic.
pub fn recover_cost<E: Evaluator + ?Sized>(
    ev: &E,
    grid: &[f64],
    family: &ProbeFamily,
) -> Result<Vec<CostBound>> {
    if let Some(d) = grid.iter().find(|d| !(0.0..1.0).contains(*d)) {
        return Err(Error::InvalidDelta(*d));
    }
    let mut streams = vec![Stream::constant(1.0)];
    for &alpha in &family.probe_alphas {
        for &center in std::iter::once(&0.0).chain(grid) {
            streams.push(unanimity_probe(center, alpha)?);
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidScale(alpha));
        }
        streams.push(Stream::finite(vec![-alpha])?);
    }
    let shape = StreamShape::default();
    streams.extend(
        (0..family.random_streams).map(|i| random_stream(&mut trial_rng(family.seed, i as u64), &shape)),
    );

    let values: Vec<f64> = streams
        .par_iter()
        .map(|x| ev.evaluate(x))
        .collect::<Result<_>>()?;

    Ok(grid
        .iter()
        .map(|&delta| CostBound {
            delta,
            cost_lower_bound: streams
                .iter()
                .zip(&values)
                .map(|(x, v)| v - abel(x, delta))
                .fold(f64::NEG_INFINITY, f64::max),
        })
        .collect())
}

/// How an annual rate `r` becomes a discount factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateConversion {
    /// `δ = 1 / (1 + r)`.
    #[default]
    Simple,
    /// `δ = e^{−r}`.
    Continuous,
}

pub fn rate_to_factor(rate: f64, conversion: RateConversion) -> f64 {
    match conversion {
        RateConversion::Simple => 1.0 / (1.0 + rate),
        RateConversion::Continuous => (-rate).exp(),
    }
}

/// Survey of economists' recommended long-run rates: mean 3.96 %, standard
/// deviation 2.94 %.
pub const SURVEY_MEAN: f64 = 0.0396;
pub const SURVEY_SD: f64 = 0.0294;
/// Upper end of the rate support.
pub const MAX_RATE: f64 = 0.20;

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Mean and standard deviation of `N(mu, sigma)` truncated to `[lo, hi]`.
pub fn truncated_normal_moments(mu: f64, sigma: f64, lo: f64, hi: f64) -> (f64, f64) {
    let (a, b) = ((lo - mu) / sigma, (hi - mu) / sigma);
    let z = std_normal_cdf(b) - std_normal_cdf(a);
    let (pa, pb) = (std_normal_pdf(a), std_normal_pdf(b));
    let shift = (pa - pb) / z;
    let var = sigma * sigma * (1.0 + (a * pa - b * pb) / z - shift * shift);
    (mu + sigma * shift, var.sqrt())
}

/// Location and scale of the parent normal whose truncation to
/// `(0, MAX_RATE]` has the survey's mean and standard deviation.
pub fn calibrated_rate_normal() -> (f64, f64) {
    let (mut mu, mut sigma) = (SURVEY_MEAN, SURVEY_SD);
    for _ in 0..500 {
        let (m, s) = truncated_normal_moments(mu, sigma, 0.0, MAX_RATE);
        if (m - SURVEY_MEAN).abs() < 1e-14 && (s - SURVEY_SD).abs() < 1e-14 {
            break;
        }
        mu += SURVEY_MEAN - m;
        sigma *= SURVEY_SD / s;
    }
    (mu, sigma)
}

/// `n` seeded rates from the calibrated truncated normal on `(0, MAX_RATE]`.
pub fn weitzman_rates(n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidPanel("panel size must be >= 1".into()));
    }
    let (mu, sigma) = calibrated_rate_normal();
    let normal = Normal::new(mu, sigma).map_err(|e| Error::InvalidPanel(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| loop {
            let r = normal.sample(&mut rng);
            if r > 0.0 && r <= MAX_RATE {
                break r;
            }
        })
        .collect())
}

/// A synthetic panel of `n` experts with survey-calibrated rates, all fully
/// trusted.
pub fn weitzman_panel(n: usize, seed: u64) -> Result<ExpertPanel> {
    weitzman_panel_with(n, seed, RateConversion::Simple)
}

pub fn weitzman_panel_with(n: usize, seed: u64, conversion: RateConversion) -> Result<ExpertPanel> {
    let factors = weitzman_rates(n, seed)?
        .into_iter()
        .map(|r| rate_to_factor(r, conversion))
        .collect();
    ExpertPanel::unweighted(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discounting::{discounted_value, DeltaSet};

    #[test]
    fn probe_closed_form() {
        let x = unanimity_probe(0.6, 1.0).unwrap();
        assert!(discounted_value(&x, 0.6).unwrap().abs() < 1e-15);
        assert!((discounted_value(&x, 0.8).unwrap() - 0.04).abs() < 1e-15);
        assert!(unanimity_probe(1.0, 1.0).is_err());
        assert!(unanimity_probe(0.5, 0.0).is_err());
    }

    #[test]
    fn panel_validation() {
        assert!(ExpertPanel::new(vec![], vec![]).is_err());
        assert!(ExpertPanel::new(vec![0.5], vec![1.0]).is_err());
        assert!(ExpertPanel::new(vec![0.0], vec![0.0]).is_err());
        assert!(ExpertPanel::new(vec![0.5, 0.6], vec![0.0]).is_err());
        let p: ExpertPanel = serde_json::from_str(r#"{"factors":[0.3,0.6],"confidences":[0,1]}"#).unwrap();
        assert_eq!(p.confidences(), &[0.0, 1.0]);
    }

    #[test]
    fn weighted_panel_on_probe() {
        let p = ExpertPanel::new(vec![0.3, 0.6], vec![0.0, 1.0]).unwrap();
        let x = unanimity_probe(0.6, 100.0).unwrap();
        let v = panel_criterion(&p).evaluate(&x).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn single_expert_is_exponential() {
        let p = ExpertPanel::unweighted(vec![0.9]).unwrap();
        let k = panel_criterion(&p);
        let edu = Criterion::edu(0.9).unwrap();
        for i in 0..50 {
            let x = random_stream(&mut trial_rng(3, i), &StreamShape::default());
            assert!((k.evaluate(&x).unwrap() - edu.evaluate(&x).unwrap()).abs() <= 1e-12);
        }
    }

    #[test]
    fn rate_conversion() {
        assert!((rate_to_factor(0.0396, RateConversion::Simple) - 0.96191).abs() < 1e-5);
        assert!((rate_to_factor(0.0396, RateConversion::Continuous) - (-0.0396f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn calibration_matches_survey_moments() {
        let (mu, sigma) = calibrated_rate_normal();
        let (m, s) = truncated_normal_moments(mu, sigma, 0.0, MAX_RATE);
        assert!((m - SURVEY_MEAN).abs() < 1e-12);
        assert!((s - SURVEY_SD).abs() < 1e-12);
        assert!(mu < SURVEY_MEAN);
    }

    #[test]
    fn weitzman_sampler() {
        assert!(matches!(weitzman_panel(0, 1), Err(Error::InvalidPanel(_))));
        let rates = weitzman_rates(1000, 7).unwrap();
        let mean = rates.iter().sum::<f64>() / 1000.0;
        assert!((mean - SURVEY_MEAN).abs() < 0.005, "{mean}");
        assert!(rates.iter().all(|r| *r > 0.0 && *r <= MAX_RATE));
        let panel = weitzman_panel(1000, 7).unwrap();
        assert!(panel.factors().iter().all(|d| *d > 0.8 && *d < 1.0));
        assert_eq!(weitzman_panel(5, 9).unwrap(), weitzman_panel(5, 9).unwrap());
    }

    #[test]
    fn empty_perturbation_passes() {
        let p = ExpertPanel::unweighted(vec![0.5]).unwrap();
        let r = check_unanimity(&p, &panel_criterion(&p), 1, 0, 1e-9).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn panel_criterion_is_unanimous() {
        let p = ExpertPanel::new(vec![0.3, 0.6, 0.9], vec![0.0, 0.5, 2.0]).unwrap();
        let r = check_unanimity(&p, &panel_criterion(&p), 300, 4, 1e-9).unwrap();
        assert!(r.passed(), "{:?}", r.violation);
        assert_eq!(r.passes, r.trials);
    }

    #[test]
    fn off_panel_cost_is_caught_by_probe() {
        let p = ExpertPanel::unweighted(vec![0.6]).unwrap();
        let k = Criterion::variational(CostFunction::point_costs(vec![(0.6, 0.0), (0.4, 1.0)]).unwrap());
        assert!(!check_unanimity(&p, &k, 50, 4, 1e-9).unwrap().passed());
        // trial 0 is the empty perturbation, so only the probe hunt can fail
        let r = check_unanimity(&p, &k, 1, 4, 1e-9).unwrap();
        let c = r.violation.expect("probe hunt finds the cheap off-panel factor");
        assert!(c.trial >= 1);
        assert!(c.gap > 1e-9 && c.lhs < c.rhs);
        assert_eq!(k.evaluate(&c.x).unwrap(), c.lhs);
        // α · 0.04 > c(0.4) = 1 at α = 100
        let probe = unanimity_probe(0.4, 100.0).unwrap();
        assert!((k.evaluate(&probe).unwrap() - 1.0).abs() < 1e-12);
        assert!(100.0 * p.squared_distance(0.4) > 3.99);
    }

    #[test]
    fn zero_cost_panel_is_maxmin() {
        let p = ExpertPanel::unweighted(vec![0.2, 0.55, 0.9]).unwrap();
        let m = Criterion::maxmin(DeltaSet::points(p.factors()).unwrap());
        for i in 0..200 {
            let x = random_stream(&mut trial_rng(8, i), &StreamShape::default());
            let gap = panel_criterion(&p).evaluate(&x).unwrap() - m.evaluate(&x).unwrap();
            assert!(gap.abs() <= 1e-10);
        }
    }

    #[test]
    fn recovery_grows_with_family() {
        let k = Criterion::variational(CostFunction::quadratic(0.7, 2.0).unwrap());
        let grid = [0.1, 0.5, 0.7, 0.95];
        let family = |n| ProbeFamily {
            probe_alphas: vec![1.0, 10.0],
            random_streams: n,
            seed: 2,
        };
        let small = recover_cost(&k, &grid, &family(4)).unwrap();
        let large = recover_cost(&k, &grid, &family(32)).unwrap();
        for (s, l) in small.iter().zip(&large) {
            assert!(l.cost_lower_bound >= s.cost_lower_bound);
            // never exceeds the true cost
            assert!(l.cost_lower_bound <= 2.0 * (l.delta - 0.7f64).powi(2) + 1e-9);
        }
        let edu = Criterion::edu(0.8).unwrap();
        assert!(recover_cost(&edu, &[0.8], &family(16)).unwrap()[0].cost_lower_bound <= 1e-9);
    }

    #[test]
    fn recover_cost_for_maxmin_point() {
        let k = Criterion::maxmin(DeltaSet::points(&[0.5]).unwrap());
        let family = ProbeFamily {
            probe_alphas: vec![1e5],
            random_streams: 16,
            seed: 1,
        };
        let table = recover_cost(&k, &[0.3, 0.5], &family).unwrap();
        assert!(table[0].cost_lower_bound >= 4000.0);
        assert!(table[1].cost_lower_bound <= 1e-9);
        assert!(recover_cost(&k, &[1.0], &family).is_err());
    }
}
