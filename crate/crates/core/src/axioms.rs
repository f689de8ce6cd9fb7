//! Executable checks for the behavioral axioms and invariance principles.
//!
//! [`check_axiom`] draws seeded instances and tests the functional form of an
//! axiom against an [`Evaluator`]. It can falsify an axiom or corroborate it;
//! it never proves one. Completeness and transitivity hold by construction for
//! real-valued evaluators and are not checked.
//!
//! The conditional principles (IDIS, I-T-IS, IFPIS, IPIS) are tested on
//! improving sequences that are made exactly indifferent by translation, so no
//! trial is discarded for failing the premise.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discounting::{Criterion, DeltaSet, Evaluator};
use crate::eigen::OperatorMatrix;
use crate::error::{Error, Result};
use crate::gen::{random_nonnegative, random_permutation, random_stream, trial_rng, StreamShape};
use crate::panel;
use crate::streams::{Permutation, Stream};

/// Grid size for the segment-continuity falsification check.
pub const CONTINUITY_GRID: usize = 10_000;

/// Default comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A transformation applied to improving sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamTransform {
    /// `d ↦ (0, d)`.
    Delay,
    /// `d ↦ a d`.
    Scaling(f64),
    /// `d ↦ d_σ` for a finite permutation.
    Permutation(Permutation),
    /// `d ↦ d_σ` with `σ(2i) = 2i + 1`, `σ(2i + 1) = 2i` for every `i`.
    PairSwap,
    /// The matrix acts on the first `N` periods; later periods are unchanged.
    Operator(OperatorMatrix),
}

impl StreamTransform {
    pub fn apply(&self, d: &Stream) -> Stream {
        match self {
            StreamTransform::Delay => d.delay(),
            StreamTransform::Scaling(a) => d.scale(*a),
            StreamTransform::Permutation(sigma) => d.permute(sigma),
            StreamTransform::PairSwap => d.swap_pairs(),
            StreamTransform::Operator(m) => {
                let n = m.dim();
                let aligned = d.with_prefix_len(n);
                let mut prefix = aligned.prefix().to_vec();
                let head = m.apply(&prefix[..n]);
                prefix[..n].copy_from_slice(&head);
                Stream::new(prefix, aligned.tail().clone()).expect("finite inputs stay finite")
            }
        }
    }
}

/// The property being checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomId {
    Monotonicity,
    /// `x ≥ y`, `x ≠ y` must give `I(x) > I(y)` by more than `tol`.
    StrongMonotonicity,
    ContinuitySegment,
    Icrp,
    Convexity,
    Isu,
    Iou,
    MonotoneContinuityProxy,
    Idis,
    Itis(StreamTransform),
    Ifpis,
    Ipis,
    Patience,
    TimeInvariance,
    Lipschitz,
    Normalization,
    /// Unanimity with respect to a panel of exponential discounters.
    Unanimity(Vec<f64>),
}

const SIMPLE_AXIOMS: [(&str, AxiomId); 15] = [
    ("monotonicity", AxiomId::Monotonicity),
    ("strong_monotonicity", AxiomId::StrongMonotonicity),
    ("continuity_segment", AxiomId::ContinuitySegment),
    ("icrp", AxiomId::Icrp),
    ("convexity", AxiomId::Convexity),
    ("isu", AxiomId::Isu),
    ("iou", AxiomId::Iou),
    ("monotone_continuity_proxy", AxiomId::MonotoneContinuityProxy),
    ("idis", AxiomId::Idis),
    ("ifpis", AxiomId::Ifpis),
    ("ipis", AxiomId::Ipis),
    ("patience", AxiomId::Patience),
    ("time_invariance", AxiomId::TimeInvariance),
    ("lipschitz", AxiomId::Lipschitz),
    ("normalization", AxiomId::Normalization),
];

fn parse_list<T: FromStr>(s: &str, whole: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::InvalidAxiom(whole.to_string())))
        .collect()
}

impl FromStr for AxiomId {
    type Err = Error;

    /// Parses `idis`, `itis:delay`, `itis:scaling:2`, `itis:pair_swap`,
    /// `itis:permutation:1,0,3,2`, `unanimity:0.3,0.6`, ...
    fn from_str(s: &str) -> Result<Self> {
        if let Some((_, id)) = SIMPLE_AXIOMS.iter().find(|(name, _)| *name == s) {
            return Ok(id.clone());
        }
        let invalid = || Error::InvalidAxiom(s.to_string());
        let mut parts = s.splitn(3, ':');
        match (parts.next(), parts.next(), parts.next()) {
            (Some("itis"), Some("delay"), None) => Ok(AxiomId::Itis(StreamTransform::Delay)),
            (Some("itis"), Some("pair_swap"), None) => Ok(AxiomId::Itis(StreamTransform::PairSwap)),
            (Some("itis"), Some("scaling"), Some(a)) => {
                let a: f64 = a.parse().map_err(|_| invalid())?;
                if !(a >= 0.0 && a.is_finite()) {
                    return Err(invalid());
                }
                Ok(AxiomId::Itis(StreamTransform::Scaling(a)))
            }
            (Some("itis"), Some("permutation"), Some(list)) => {
                let sigma = Permutation::from_images(parse_list(list, s)?).map_err(|_| invalid())?;
                Ok(AxiomId::Itis(StreamTransform::Permutation(sigma)))
            }
            (Some("unanimity"), Some(list), None) => Ok(AxiomId::Unanimity(parse_list(list, s)?)),
            _ => Err(invalid()),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((name, _)) = SIMPLE_AXIOMS.iter().find(|(_, id)| id == self) {
            return f.write_str(name);
        }
        match self {
            AxiomId::Itis(StreamTransform::Delay) => f.write_str("itis:delay"),
            AxiomId::Itis(StreamTransform::PairSwap) => f.write_str("itis:pair_swap"),
            AxiomId::Itis(StreamTransform::Scaling(a)) => write!(f, "itis:scaling:{a}"),
            AxiomId::Itis(StreamTransform::Permutation(p)) => {
                let list: Vec<String> = p.images().iter().map(|i| i.to_string()).collect();
                write!(f, "itis:permutation:{}", list.join(","))
            }
            AxiomId::Itis(StreamTransform::Operator(m)) => write!(f, "itis:operator[{}]", m.dim()),
            AxiomId::Unanimity(factors) => {
                let list: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
                write!(f, "unanimity:{}", list.join(","))
            }
            _ => unreachable!("simple axioms handled above"),
        }
    }
}

/// Evidence of a failed check: the instance and both sides of the comparison.
///
/// `y` is the second stream of two-stream checks; `d` is the improving
/// sequence (or the common addend for IOU).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub trial: usize,
    pub x: Stream,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Stream>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Stream>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<StreamTransform>,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub trials: usize,
    pub passes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Certificate>,
    pub seed: u64,
    pub tol: f64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    /// Collects per-trial outcomes; the first failing trial becomes the
    /// reported certificate.
    pub(crate) fn from_outcomes(
        axiom: AxiomId,
        outcomes: Vec<Option<Certificate>>,
        seed: u64,
        tol: f64,
    ) -> Self {
        let trials = outcomes.len();
        let passes = outcomes.iter().filter(|o| o.is_none()).count();
        let violation = outcomes.into_iter().flatten().next();
        AxiomReport {
            axiom,
            trials,
            passes,
            violation,
            seed,
            tol,
        }
    }
}

/// Makes `d0` exactly indifferent: `d = d0 + (I(x) − I(x + d0))`, so that
/// `I(x + d) = I(x)` for a translation-invariant evaluator.
pub fn improving_from<E: Evaluator + ?Sized>(ev: &E, x: &Stream, d0: &Stream) -> Result<Stream> {
    let shift = ev.evaluate(x)? - ev.evaluate(&x.add(d0))?;
    Ok(d0.translate(shift))
}

/// A seeded improving pair `(x, d)` with `I(x + d) = I(x)`.
pub fn improving_pair<E: Evaluator + ?Sized>(ev: &E, seed: u64) -> Result<(Stream, Stream)> {
    let mut rng = trial_rng(seed, 0);
    let shape = StreamShape::default();
    let x = random_stream(&mut rng, &shape);
    let d0 = random_stream(&mut rng, &shape);
    let d = improving_from(ev, &x, &d0)?;
    Ok((x, d))
}

/// The `(x, d0)` pairs replayed before random draws for the conditional
/// principles: `x = (−1, 0, 0, ...)`, `d = (1, −1, 0, ...)` and
/// `x = (0, 1, 0, 1, ...)`, `d = (1, −1, 1, −1, ...)`.
pub fn witness_pairs() -> [(Stream, Stream); 2] {
    let fin = |v: Vec<f64>| Stream::finite(v).expect("finite literals");
    let per = |v: Vec<f64>| Stream::periodic(v).expect("finite literals");
    [
        (fin(vec![-1.0]), fin(vec![1.0, -1.0])),
        (per(vec![0.0, 1.0]), per(vec![1.0, -1.0])),
    ]
}

/// `(0, 1, 0, 0, ...)` and `(0, 2, 0, 0, ...)`.
pub fn tie_streams() -> [Stream; 2] {
    [
        Stream::finite(vec![0.0, 1.0]).expect("finite literals"),
        Stream::finite(vec![0.0, 2.0]).expect("finite literals"),
    ]
}

struct Trial<'a, E: ?Sized> {
    ev: &'a E,
    seed: u64,
    index: usize,
    tol: f64,
    shape: StreamShape,
}

impl<E: Evaluator + ?Sized> Trial<'_, E> {
    fn eval(&self, x: &Stream) -> Result<f64> {
        self.ev.evaluate(x)
    }

    fn cert(&self, x: Stream, lhs: f64, rhs: f64, gap: f64) -> Option<Certificate> {
        (gap > self.tol).then_some(Certificate {
            trial: self.index,
            x,
            d: None,
            y: None,
            sigma: None,
            lhs,
            rhs,
            gap,
        })
    }

    fn improving(&self, rng: &mut impl Rng) -> Result<(Stream, Stream)> {
        let (x, d0) = match witness_pairs().get(self.index) {
            Some(pair) => pair.clone(),
            None => (random_stream(rng, &self.shape), random_stream(rng, &self.shape)),
        };
        let d = improving_from(self.ev, &x, &d0)?;
        Ok((x, d))
    }

    /// `I(x + T(d)) ≥ I(x)` on an indifferent improving pair.
    fn transformed(&self, rng: &mut impl Rng, transform: StreamTransform) -> Result<Option<Certificate>> {
        let (x, d) = self.improving(rng)?;
        let lhs = self.eval(&x.add(&transform.apply(&d)))?;
        let rhs = self.eval(&x)?;
        Ok(self.cert(x, lhs, rhs, rhs - lhs).map(|mut c| {
            c.d = Some(d);
            c.sigma = Some(transform);
            c
        }))
    }

    fn run(&self, axiom: &AxiomId) -> Result<Option<Certificate>> {
        let mut rng = trial_rng(self.seed, self.index as u64);
        let shape = self.shape;
        let x = random_stream(&mut rng, &shape);
        let with_y = |c: Option<Certificate>, y: Stream| {
            c.map(|mut c| {
                c.y = Some(y);
                c
            })
        };
        Ok(match axiom {
            AxiomId::Monotonicity => {
                let y = x.sub(&random_nonnegative(&mut rng, &shape));
                let (lhs, rhs) = (self.eval(&x)?, self.eval(&y)?);
                with_y(self.cert(x, lhs, rhs, rhs - lhs), y)
            }
            AxiomId::StrongMonotonicity => {
                let (x, y) = if self.index == 0 {
                    let [a, b] = tie_streams();
                    (b, a)
                } else {
                    let bump = Stream::finite(vec![rng.random_range(0.1..=1.0)]).expect("finite");
                    let y = x.sub(&random_nonnegative(&mut rng, &shape)).sub(&bump);
                    (x, y)
                };
                let (lhs, rhs) = (self.eval(&x)?, self.eval(&y)?);
                // shortfall from a strict margin of 2 tol
                with_y(self.cert(x, lhs, rhs, 2.0 * self.tol - (lhs - rhs)), y)
            }
            AxiomId::ContinuitySegment => {
                let z = random_stream(&mut rng, &shape);
                let bound = x.sup_distance(&z) / CONTINUITY_GRID as f64;
                let mut prev = self.eval(&z)?;
                let mut worst = (0.0, f64::NEG_INFINITY);
                for i in 1..=CONTINUITY_GRID {
                    let alpha = i as f64 / CONTINUITY_GRID as f64;
                    let v = self.eval(&x.mix(&z, alpha))?;
                    let jump = (v - prev).abs();
                    if jump - bound > worst.1 {
                        worst = (jump, jump - bound);
                    }
                    prev = v;
                }
                with_y(self.cert(x, worst.0, bound, worst.1), z)
            }
            AxiomId::Icrp => {
                let theta = rng.random_range(-5.0..=5.0);
                let lhs = self.eval(&x.translate(theta))?;
                let rhs = self.eval(&x)? + theta;
                self.cert(x, lhs, rhs, (lhs - rhs).abs())
            }
            AxiomId::Convexity => {
                let y = random_stream(&mut rng, &shape);
                let lambda = rng.random_range(0.0..=1.0);
                let lhs = self.eval(&x.mix(&y, lambda))?;
                let rhs = self.eval(&x)?.min(self.eval(&y)?);
                with_y(self.cert(x, lhs, rhs, rhs - lhs), y)
            }
            AxiomId::Isu => {
                let a = rng.random_range(0.0..=5.0);
                let lhs = self.eval(&x.scale(a))?;
                let rhs = a * self.eval(&x)?;
                self.cert(x, lhs, rhs, (lhs - rhs).abs() / (1.0 + a))
            }
            AxiomId::Iou => {
                let y0 = random_stream(&mut rng, &shape);
                let y = y0.translate(self.eval(&x)? - self.eval(&y0)?);
                let z = random_stream(&mut rng, &shape);
                let lhs = self.eval(&x.add(&z))?;
                let rhs = self.eval(&y.add(&z))?;
                self.cert(x, lhs, rhs, (lhs - rhs).abs()).map(|mut c| {
                    c.y = Some(y);
                    c.d = Some(z);
                    c
                })
            }
            AxiomId::MonotoneContinuityProxy => {
                // x ≻ θ; some kE_n x = (x_0, .., x_{n-1}, k, k, ..) must stay ≻ θ
                let margin = rng.random_range(0.1..=1.0);
                let k = rng.random_range(-10.0..=10.0);
                let theta = self.eval(&x)? - margin;
                let base = x.prefix().len();
                let mut best = f64::NEG_INFINITY;
                for n in std::iter::once(base).chain((0..=12).map(|j| base + (1 << j))) {
                    best = best.max(self.eval(&x.replace_from(n, k))?);
                    if best > theta {
                        break;
                    }
                }
                self.cert(x, best, theta, theta - best)
            }
            AxiomId::Idis => self.transformed(&mut rng, StreamTransform::Delay)?,
            AxiomId::Itis(t) => self.transformed(&mut rng, t.clone())?,
            AxiomId::Ifpis => {
                let sigma = if self.index < witness_pairs().len() {
                    Permutation::pairwise_swap(8)
                } else {
                    let m = rng.random_range(2..=16);
                    random_permutation(&mut rng, m)
                };
                self.transformed(&mut rng, StreamTransform::Permutation(sigma))?
            }
            AxiomId::Ipis => {
                let t = if self.index < witness_pairs().len() || self.index.is_multiple_of(2) {
                    StreamTransform::PairSwap
                } else {
                    let m = rng.random_range(2..=16);
                    StreamTransform::Permutation(random_permutation(&mut rng, m))
                };
                self.transformed(&mut rng, t)?
            }
            AxiomId::Patience => {
                let m = rng.random_range(2..=16);
                let sigma = random_permutation(&mut rng, m);
                let lhs = self.eval(&x.permute(&sigma))?;
                let rhs = self.eval(&x)?;
                self.cert(x, lhs, rhs, (lhs - rhs).abs()).map(|mut c| {
                    c.sigma = Some(StreamTransform::Permutation(sigma));
                    c
                })
            }
            AxiomId::TimeInvariance => {
                let lhs = self.eval(&x.shift_left())?;
                let rhs = self.eval(&x)?;
                self.cert(x, lhs, rhs, (lhs - rhs).abs())
            }
            AxiomId::Lipschitz => {
                let y = random_stream(&mut rng, &shape);
                let lhs = (self.eval(&x)? - self.eval(&y)?).abs();
                let rhs = x.sup_distance(&y);
                with_y(self.cert(x, lhs, rhs, lhs - rhs), y)
            }
            AxiomId::Normalization => {
                let theta = if self.index == 0 {
                    1.0
                } else {
                    rng.random_range(-5.0..=5.0)
                };
                let c = Stream::constant(theta);
                let lhs = self.eval(&c)?;
                self.cert(c, lhs, theta, (lhs - theta).abs())
            }
            AxiomId::Unanimity(_) => unreachable!("delegated to the panel module"),
        })
    }
}

/// Runs `trials` seeded instances of `axiom` against `ev`.
///
/// Each trial draws from its own generator derived from `(seed, trial)`, so
/// the parallel run is identical to a serial one. For the conditional
/// principles the first trials replay [`witness_pairs`].
pub fn check_axiom<E: Evaluator + ?Sized>(
    ev: &E,
    axiom: &AxiomId,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::InvalidAxiom(format!("{axiom}: trials must be >= 1")));
    }
    if let AxiomId::Unanimity(factors) = axiom {
        let confidences = vec![0.0; factors.len()];
        let panel = panel::ExpertPanel::new(factors.clone(), confidences)
            .map_err(|e| Error::InvalidAxiom(format!("{axiom}: {e}")))?;
        return panel::check_unanimity(&panel, ev, trials, seed, tol);
    }
    let outcomes: Result<Vec<Option<Certificate>>> = (0..trials)
        .into_par_iter()
        .map(|index| {
            Trial {
                ev,
                seed,
                index,
                tol,
                shape: StreamShape::default(),
            }
            .run(axiom)
        })
        .collect();
    Ok(AxiomReport::from_outcomes(axiom.clone(), outcomes?, seed, tol))
}

fn uses_continuous_search(criterion: &Criterion) -> bool {
    match criterion {
        Criterion::Variational { .. } => true,
        Criterion::Maxmin(set) => !set.intervals().is_empty(),
        _ => false,
    }
}

/// Axioms the criterion is known to satisfy.
///
/// Every criterion here is monotone, translation invariant, concave,
/// 1-Lipschitz and normalized. Segment continuity is left out for criteria
/// that need a continuous search per evaluation, and monotone continuity for
/// variational costs that may approach `δ = 1`.
pub fn expected_suite(criterion: &Criterion) -> Vec<AxiomId> {
    use AxiomId::*;
    let mut suite = vec![Monotonicity, Icrp, Convexity, Lipschitz, Normalization];
    if !uses_continuous_search(criterion) {
        suite.push(ContinuitySegment);
    }
    suite.extend(match criterion {
        Criterion::Variational { .. } => vec![Idis],
        Criterion::Maxmin(_) => vec![Idis, Isu, MonotoneContinuityProxy],
        Criterion::Edu { .. } => vec![Idis, Isu, Iou, MonotoneContinuityProxy, StrongMonotonicity],
        Criterion::Inf {} => vec![Isu, Patience],
        Criterion::Liminf {} => vec![Isu, Patience, TimeInvariance],
        Criterion::BanachWindow {} | Criterion::Cesaro {} => {
            vec![Idis, Ifpis, Isu, Iou, Patience, TimeInvariance]
        }
    });
    suite
}

/// Outcome of one registry entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionEntry {
    pub name: &'static str,
    pub criterion: Criterion,
    pub values: Vec<f64>,
    pub expected: Vec<f64>,
    /// The harness run the entry is documented to fail, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<AxiomReport>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

const REGISTRY_TRIALS: usize = 64;

fn values_of(k: &Criterion, streams: &[Stream]) -> Result<Vec<f64>> {
    streams.iter().map(|x| k.evaluate(x)).collect()
}

fn entry(
    name: &'static str,
    criterion: Criterion,
    values: Vec<f64>,
    expected: Vec<f64>,
    report: Option<AxiomReport>,
    witness: Option<(usize, Stream)>,
) -> RegressionEntry {
    let mut problems = Vec::new();
    if values != expected {
        problems.push(format!("values {values:?}, expected {expected:?}"));
    }
    if let (Some(r), Some((trial, x))) = (&report, &witness) {
        match &r.violation {
            Some(c) if c.trial == *trial && c.x == *x => {}
            Some(c) => problems.push(format!("{} flagged trial {} instead of {trial}", r.axiom, c.trial)),
            None => problems.push(format!("{} was not flagged", r.axiom)),
        }
    }
    RegressionEntry {
        name,
        criterion,
        values,
        expected,
        report,
        ok: problems.is_empty(),
        detail: (!problems.is_empty()).then(|| problems.join("; ")),
    }
}

/// Replays the documented counterexamples with their hard-coded values.
pub fn registry() -> Result<Vec<RegressionEntry>> {
    let [(x2, d2), (xp, dp)] = witness_pairs();
    let mut out = Vec::with_capacity(4);

    let inf = Criterion::Inf {};
    let scale2 = AxiomId::Itis(StreamTransform::Scaling(2.0));
    out.push(entry(
        "inf_scaling",
        inf.clone(),
        values_of(&inf, &[x2.clone(), x2.add(&d2), x2.add(&d2.scale(2.0))])?,
        vec![-1.0, -1.0, -2.0],
        Some(check_axiom(&inf, &scale2, REGISTRY_TRIALS, 0, DEFAULT_TOL)?),
        Some((0, x2)),
    ));

    let liminf = Criterion::Liminf {};
    out.push(entry(
        "liminf_pair_swap",
        liminf.clone(),
        values_of(&liminf, &[xp.clone(), xp.add(&dp), xp.add(&dp.swap_pairs())])?,
        vec![0.0, 0.0, -1.0],
        Some(check_axiom(&liminf, &AxiomId::Ipis, REGISTRY_TRIALS, 0, DEFAULT_TOL)?),
        Some((1, xp)),
    ));

    let maxmin = Criterion::maxmin(DeltaSet::points(&[0.0])?);
    let [a, b] = tie_streams();
    out.push(entry(
        "maxmin_zero_tie",
        maxmin.clone(),
        values_of(&maxmin, &[a, b.clone()])?,
        vec![0.0, 0.0],
        Some(check_axiom(&maxmin, &AxiomId::StrongMonotonicity, REGISTRY_TRIALS, 0, DEFAULT_TOL)?),
        Some((0, b)),
    ));

    // I((−n, 0, ...)) = 0, and the recovered cost grows like (1 − δ) n
    let window = Criterion::BanachWindow {};
    let losses: Vec<Stream> = [1.0, 10.0, 100.0]
        .iter()
        .map(|n| Stream::finite(vec![-n]))
        .collect::<Result<_>>()?;
    let mut values = values_of(&window, &losses)?;
    let family = panel::ProbeFamily {
        probe_alphas: vec![100.0],
        random_streams: 0,
        seed: 0,
    };
    let bound = panel::recover_cost(&window, &[0.5], &family)?[0].cost_lower_bound;
    values.push(bound.min(50.0));
    out.push(entry("window_cost_blowup", window, values, vec![0.0, 0.0, 0.0, 50.0], None, None));
    Ok(out)
}

/// [`registry`], failing with [`Error::RegressionFailure`] on the first
/// entry that does not reproduce.
pub fn run_counterexamples() -> Result<Vec<RegressionEntry>> {
    let entries = registry()?;
    if let Some(bad) = entries.iter().find(|e| !e.ok) {
        return Err(Error::RegressionFailure {
            entry: bad.name.to_string(),
            detail: bad.detail.clone().unwrap_or_default(),
        });
    }
    Ok(entries)
}
