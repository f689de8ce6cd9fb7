use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed subset of `[0, 1)`: finitely many points and closed intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDeltaSet")]
pub struct DeltaSet {
    points: Vec<f64>,
    intervals: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct RawDeltaSet {
    #[serde(default)]
    points: Vec<f64>,
    #[serde(default)]
    intervals: Vec<[f64; 2]>,
}

impl TryFrom<RawDeltaSet> for DeltaSet {
    type Error = Error;

    fn try_from(raw: RawDeltaSet) -> Result<Self> {
        DeltaSet::new(raw.points, raw.intervals)
    }
}

fn in_unit_half_open(v: f64) -> bool {
    (0.0..1.0).contains(&v)
}

impl DeltaSet {
    pub fn new(points: Vec<f64>, intervals: Vec<[f64; 2]>) -> Result<Self> {
        if points.is_empty() && intervals.is_empty() {
            return Err(Error::InvalidCost("empty set of discount factors".into()));
        }
        if let Some(p) = points.iter().find(|p| !in_unit_half_open(**p)) {
            return Err(Error::InvalidCost(format!("discount factor {p} outside [0, 1)")));
        }
        for &[a, b] in &intervals {
            if !(in_unit_half_open(a) && in_unit_half_open(b) && a <= b) {
                return Err(Error::InvalidCost(format!(
                    "interval [{a}, {b}] is not a closed sub-interval of [0, 1)"
                )));
            }
        }
        Ok(DeltaSet { points, intervals })
    }

    pub fn points(points: &[f64]) -> Result<Self> {
        Self::new(points.to_vec(), Vec::new())
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(Vec::new(), vec![[a, b]])
    }

    pub fn point_list(&self) -> &[f64] {
        &self.points
    }

    pub fn intervals(&self) -> &[[f64; 2]] {
        &self.intervals
    }

    pub fn contains(&self, delta: f64) -> bool {
        self.points.contains(&delta) || self.intervals.iter().any(|&[a, b]| a <= delta && delta <= b)
    }

    pub(crate) fn pieces(&self) -> Vec<Piece> {
        let mut pieces: Vec<Piece> = self.points.iter().map(|&p| Piece::Point(p)).collect();
        pieces.extend(self.intervals.iter().map(|&[a, b]| Piece::span(a, b)));
        pieces
    }
}

/// A connected part of a cost's effective domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    Point(f64),
    Interval(f64, f64),
}

impl Piece {
    fn span(a: f64, b: f64) -> Piece {
        if a == b {
            Piece::Point(a)
        } else {
            Piece::Interval(a, b)
        }
    }
}

/// Cost `c(δ)` of a discount factor, in utility units.
///
/// Every variant is grounded (`inf c = 0`) and has `c(1) = +inf`; `+inf` is
/// represented by `f64::INFINITY` and absorbs finite additions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "RawCost")]
pub enum CostFunction {
    /// Zero on the set, `+inf` elsewhere.
    IndicatorSet(DeltaSet),
    /// `stiffness * (δ - center)^2` on `[0, 1)`.
    Quadratic { center: f64, stiffness: f64 },
    /// Piecewise-linear through `(δ, cost)` knots, `+inf` outside the knot range.
    Tabulated { knots: Vec<(f64, f64)> },
    /// Finite cost on each listed factor, `+inf` elsewhere.
    PointCosts { points: Vec<(f64, f64)> },
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawCost {
    IndicatorSet(DeltaSet),
    Quadratic { center: f64, stiffness: f64 },
    Tabulated { knots: Vec<(f64, f64)> },
    PointCosts { points: Vec<(f64, f64)> },
}

impl TryFrom<RawCost> for CostFunction {
    type Error = Error;

    fn try_from(raw: RawCost) -> Result<Self> {
        match raw {
            RawCost::IndicatorSet(set) => Ok(CostFunction::IndicatorSet(set)),
            RawCost::Quadratic { center, stiffness } => CostFunction::quadratic(center, stiffness),
            RawCost::Tabulated { knots } => CostFunction::tabulated(knots),
            RawCost::PointCosts { points } => CostFunction::point_costs(points),
        }
    }
}

fn check_costs(pairs: &[(f64, f64)]) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::InvalidCost("no knots".into()));
    }
    for &(d, c) in pairs {
        if !in_unit_half_open(d) {
            return Err(Error::InvalidCost(format!("discount factor {d} outside [0, 1)")));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidCost(format!("cost {c} at {d} is not finite and >= 0")));
        }
    }
    if !pairs.iter().any(|&(_, c)| c == 0.0) {
        return Err(Error::InvalidCost("not grounded: no zero-cost factor".into()));
    }
    Ok(())
}

impl CostFunction {
    pub fn indicator(set: DeltaSet) -> Self {
        CostFunction::IndicatorSet(set)
    }

    pub fn quadratic(center: f64, stiffness: f64) -> Result<Self> {
        if !in_unit_half_open(center) {
            return Err(Error::InvalidCost(format!("center {center} outside [0, 1)")));
        }
        if !(stiffness >= 0.0 && stiffness.is_finite()) {
            return Err(Error::InvalidCost(format!("stiffness {stiffness} must be >= 0")));
        }
        Ok(CostFunction::Quadratic { center, stiffness })
    }

    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        check_costs(&knots)?;
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidCost("knots must be strictly increasing in δ".into()));
        }
        Ok(CostFunction::Tabulated { knots })
    }

    pub fn point_costs(points: Vec<(f64, f64)>) -> Result<Self> {
        check_costs(&points)?;
        Ok(CostFunction::PointCosts { points })
    }

    /// `c(δ)`; `+inf` at `δ = 1` and anywhere outside the effective domain.
    pub fn eval(&self, delta: f64) -> f64 {
        if !in_unit_half_open(delta) {
            return f64::INFINITY;
        }
        match self {
            CostFunction::IndicatorSet(set) => {
                if set.contains(delta) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            CostFunction::Quadratic { center, stiffness } => {
                let gap = delta - center;
                stiffness * gap * gap
            }
            CostFunction::Tabulated { knots } => interpolate(knots, delta),
            CostFunction::PointCosts { points } => points
                .iter()
                .filter(|(d, _)| *d == delta)
                .map(|(_, c)| *c)
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub(crate) fn pieces(&self) -> Vec<Piece> {
        match self {
            CostFunction::IndicatorSet(set) => set.pieces(),
            CostFunction::Quadratic { .. } => vec![Piece::Interval(0.0, 1.0)],
            CostFunction::Tabulated { knots } => {
                vec![Piece::span(knots[0].0, knots[knots.len() - 1].0)]
            }
            CostFunction::PointCosts { points } => {
                points.iter().map(|&(d, _)| Piece::Point(d)).collect()
            }
        }
    }
}

fn interpolate(knots: &[(f64, f64)], delta: f64) -> f64 {
    let (first, last) = (knots[0], knots[knots.len() - 1]);
    if delta < first.0 || delta > last.0 {
        return f64::INFINITY;
    }
    let i = knots.partition_point(|&(d, _)| d <= delta);
    if i == knots.len() {
        return last.1;
    }
    let (d0, c0) = knots[i - 1];
    let (d1, c1) = knots[i];
    c0 + (c1 - c0) * (delta - d0) / (d1 - d0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_values() {
        let c = CostFunction::indicator(DeltaSet::points(&[0.5]).unwrap());
        assert_eq!(c.eval(0.5), 0.0);
        assert_eq!(c.eval(0.49), f64::INFINITY);
        let i = CostFunction::indicator(DeltaSet::interval(0.2, 0.4).unwrap());
        assert_eq!(i.eval(0.2), 0.0);
        assert_eq!(i.eval(0.4), 0.0);
        assert_eq!(i.eval(0.41), f64::INFINITY);
    }

    #[test]
    fn quadratic_value() {
        let c = CostFunction::quadratic(0.9, 2.0).unwrap();
        assert!((c.eval(0.8) - 0.02).abs() < 1e-15);
        assert_eq!(c.eval(0.9), 0.0);
    }

    #[test]
    fn every_cost_is_infinite_at_one() {
        let costs = [
            CostFunction::indicator(DeltaSet::interval(0.0, 0.99).unwrap()),
            CostFunction::quadratic(0.5, 0.0).unwrap(),
            CostFunction::tabulated(vec![(0.1, 1.0), (0.5, 0.0), (0.9, 3.0)]).unwrap(),
            CostFunction::point_costs(vec![(0.3, 0.0)]).unwrap(),
        ];
        for c in &costs {
            assert_eq!(c.eval(1.0), f64::INFINITY);
            assert_eq!(c.eval(1.0) + 5.0, f64::INFINITY);
        }
    }

    #[test]
    fn tabulated_interpolates() {
        let c = CostFunction::tabulated(vec![(0.1, 1.0), (0.5, 0.0), (0.9, 3.0)]).unwrap();
        assert!((c.eval(0.3) - 0.5).abs() < 1e-15);
        assert!((c.eval(0.7) - 1.5).abs() < 1e-15);
        assert_eq!(c.eval(0.9), 3.0);
        assert_eq!(c.eval(0.05), f64::INFINITY);
        assert_eq!(c.eval(0.95), f64::INFINITY);
    }

    #[test]
    fn validation() {
        assert!(DeltaSet::new(vec![], vec![]).is_err());
        assert!(DeltaSet::points(&[1.0]).is_err());
        assert!(DeltaSet::interval(0.5, 1.0).is_err());
        assert!(DeltaSet::interval(0.6, 0.5).is_err());
        assert!(CostFunction::quadratic(1.0, 1.0).is_err());
        assert!(CostFunction::quadratic(0.5, -1.0).is_err());
        assert!(CostFunction::tabulated(vec![(0.1, 1.0), (0.5, 2.0)]).is_err());
        assert!(CostFunction::tabulated(vec![(0.5, 0.0), (0.1, 1.0)]).is_err());
        assert!(CostFunction::point_costs(vec![(0.2, f64::INFINITY), (0.3, 0.0)]).is_err());
    }

    #[test]
    fn json_shapes() {
        let c: CostFunction =
            serde_json::from_str(r#"{"indicator_set":{"points":[0.5],"intervals":[[0.1,0.2]]}}"#)
                .unwrap();
        assert_eq!(c.eval(0.15), 0.0);
        let q: CostFunction =
            serde_json::from_str(r#"{"quadratic":{"center":0.9,"stiffness":5}}"#).unwrap();
        assert_eq!(q, CostFunction::quadratic(0.9, 5.0).unwrap());
        assert!(serde_json::from_str::<CostFunction>(r#"{"quadratic":{"center":1.5,"stiffness":5}}"#).is_err());
        let back: CostFunction = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
