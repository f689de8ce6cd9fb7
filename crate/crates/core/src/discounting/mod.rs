//! Geometric discounting and the discounting criteria.
//!
//! `D_δ(x) = (1 - δ) Σ_t δ^t x_t` is evaluated in closed form on the stream
//! class of [`crate::streams`]. The evaluators built on it are exponential
//! discounting, maxmin over a closed set of factors, and variational
//! discounting `min_δ { D_δ(x) + c(δ) }`.

mod cost;
pub mod search;

use serde::{Deserialize, Serialize};

pub use cost::{CostFunction, DeltaSet};
use cost::Piece;
use search::DEFAULT_GRID_NODES;

use crate::error::{Error, Result};
use crate::patient;
use crate::streams::{Stream, Tail};

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

/// `(1 - δ) Σ_t δ^t x_t` with `0^0 = 1`; at `δ = 1` the Abel limit, i.e. the
/// tail mean.
pub fn discounted_value(x: &Stream, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(abel(x, delta))
}

/// Closed form, nested from the back so that `D_δ((0, x)) = δ D_δ(x)` holds
/// bit-for-bit.
pub(crate) fn abel(x: &Stream, delta: f64) -> f64 {
    let tail = tail_abel(x.tail(), delta);
    x.prefix()
        .iter()
        .rev()
        .fold(tail, |acc, &v| (1.0 - delta) * v + delta * acc)
}

/// `(1 - δ) Σ_{k<p} δ^k q_k / (1 - δ^p)`, written as a ratio of two Horner
/// sums so it stays finite at `δ = 1`.
fn tail_abel(tail: &Tail, delta: f64) -> f64 {
    match tail {
        Tail::Constant(c) => *c,
        Tail::Periodic(cycle) => {
            let (num, den) = cycle
                .iter()
                .rev()
                .fold((0.0, 0.0), |(num, den), &q| (q + delta * num, 1.0 + delta * den));
            num / den
        }
    }
}

/// `(D_δ(x), d/dδ D_δ(x))`, forward-mode through the same nesting as [`abel`].
pub fn discounted_value_and_slope(x: &Stream, delta: f64) -> (f64, f64) {
    let (tail, tail_slope) = match x.tail() {
        Tail::Constant(c) => (*c, 0.0),
        Tail::Periodic(cycle) => {
            let (mut num, mut dnum, mut den, mut dden) = (0.0, 0.0, 0.0, 0.0);
            for &q in cycle.iter().rev() {
                dnum = num + delta * dnum;
                num = q + delta * num;
                dden = den + delta * dden;
                den = 1.0 + delta * den;
            }
            (num / den, (dnum * den - num * dden) / (den * den))
        }
    };
    x.prefix()
        .iter()
        .rev()
        .fold((tail, tail_slope), |(acc, dacc), &v| {
            ((1.0 - delta) * v + delta * acc, acc - v + delta * dacc)
        })
}

/// A minimizer of the variational objective and the attained value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimum {
    pub delta: f64,
    pub value: f64,
}

/// `min_{δ ∈ [0,1]} { D_δ(x) + c(δ) }`.
///
/// Finite point sets are enumerated exactly; each continuous piece of the
/// cost's domain is scanned on a dense grid and the best local minima are
/// polished by golden-section search. The objective need not be unimodal, so
/// this is a best-effort global search.
pub fn minimize_over_delta(x: &Stream, cost: &CostFunction) -> Result<Minimum> {
    minimize_with_nodes(x, cost, DEFAULT_GRID_NODES)
}

pub fn minimize_with_nodes(x: &Stream, cost: &CostFunction, nodes: usize) -> Result<Minimum> {
    let objective = |d: f64| abel(x, d) + cost.eval(d);
    let mut best = Minimum {
        delta: f64::NAN,
        value: f64::INFINITY,
    };
    for piece in cost.pieces() {
        let (delta, value) = match piece {
            Piece::Point(d) => (d, objective(d)),
            Piece::Interval(a, b) => search::grid_golden(&objective, a, b, nodes),
        };
        if value < best.value {
            best = Minimum { delta, value };
        }
    }
    if best.value.is_finite() {
        Ok(best)
    } else {
        Err(Error::InfeasibleCost)
    }
}

/// `min_{δ ∈ E} D_δ(x)`, located through the exact slope of `δ ↦ D_δ(x)`.
pub fn maxmin_minimum(x: &Stream, set: &DeltaSet) -> Minimum {
    let value = |d: f64| abel(x, d);
    let slope = |d: f64| discounted_value_and_slope(x, d).1;
    let mut best = Minimum {
        delta: f64::NAN,
        value: f64::INFINITY,
    };
    for piece in set.pieces() {
        let (delta, v) = match piece {
            Piece::Point(d) => (d, value(d)),
            Piece::Interval(a, b) => search::slope_roots(&value, &slope, a, b, DEFAULT_GRID_NODES),
        };
        if v < best.value {
            best = Minimum { delta, value: v };
        }
    }
    best
}

/// An evaluation criterion: the rule computing the constant equivalent `I(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "RawCriterion")]
pub enum Criterion {
    Edu { delta: f64 },
    Maxmin(DeltaSet),
    Variational { cost: CostFunction },
    Inf {},
    Liminf {},
    BanachWindow {},
    Cesaro {},
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawCriterion {
    Edu { delta: f64 },
    Maxmin(DeltaSet),
    Variational { cost: CostFunction },
    Inf {},
    Liminf {},
    BanachWindow {},
    Cesaro {},
}

impl TryFrom<RawCriterion> for Criterion {
    type Error = Error;

    fn try_from(raw: RawCriterion) -> Result<Self> {
        Ok(match raw {
            RawCriterion::Edu { delta } => Criterion::edu(delta)?,
            RawCriterion::Maxmin(set) => Criterion::Maxmin(set),
            RawCriterion::Variational { cost } => Criterion::Variational { cost },
            RawCriterion::Inf {} => Criterion::Inf {},
            RawCriterion::Liminf {} => Criterion::Liminf {},
            RawCriterion::BanachWindow {} => Criterion::BanachWindow {},
            RawCriterion::Cesaro {} => Criterion::Cesaro {},
        })
    }
}

impl Criterion {
    /// Exponential discounting; `δ` must lie strictly inside `(0, 1)`.
    pub fn edu(delta: f64) -> Result<Self> {
        if delta > 0.0 && delta < 1.0 {
            Ok(Criterion::Edu { delta })
        } else {
            Err(Error::InvalidCriterion(format!(
                "exponential discount factor {delta} must lie in (0, 1)"
            )))
        }
    }

    pub fn maxmin(set: DeltaSet) -> Self {
        Criterion::Maxmin(set)
    }

    pub fn variational(cost: CostFunction) -> Self {
        Criterion::Variational { cost }
    }

    /// Short name, matching the JSON tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Criterion::Edu { .. } => "edu",
            Criterion::Maxmin(_) => "maxmin",
            Criterion::Variational { .. } => "variational",
            Criterion::Inf {} => "inf",
            Criterion::Liminf {} => "liminf",
            Criterion::BanachWindow {} => "banach_window",
            Criterion::Cesaro {} => "cesaro",
        }
    }

    /// The constant equivalent `I(x)`.
    pub fn evaluate(&self, x: &Stream) -> Result<f64> {
        Ok(match self {
            Criterion::Edu { delta } => abel(x, *delta),
            Criterion::Maxmin(set) => maxmin_minimum(x, set).value,
            Criterion::Variational { cost } => minimize_over_delta(x, cost)?.value,
            Criterion::Inf {} => patient::inf_value(x),
            Criterion::Liminf {} => patient::liminf_value(x),
            Criterion::BanachWindow {} => patient::banach_window_value(x),
            Criterion::Cesaro {} => patient::cesaro_value(x),
        })
    }
}

/// Anything that maps streams to constant equivalents.
pub trait Evaluator: Sync {
    fn evaluate(&self, x: &Stream) -> Result<f64>;
}

impl Evaluator for Criterion {
    fn evaluate(&self, x: &Stream) -> Result<f64> {
        Criterion::evaluate(self, x)
    }
}

impl<F> Evaluator for F
where
    F: Fn(&Stream) -> f64 + Sync,
{
    fn evaluate(&self, x: &Stream) -> Result<f64> {
        Ok(self(x))
    }
}
