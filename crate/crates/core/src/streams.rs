//! Bounded utility streams with an exact finite encoding.
//!
//! A [`Stream`] is a finite prefix followed by a tail that is either constant
//! or periodic. This class is closed under every operation used by the
//! criteria in this crate (pointwise sums, affine maps, delays, shifts and
//! permutations), so discounted sums and long-run averages can be computed in
//! closed form instead of by truncation.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The eventually-repeating part of a stream.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Constant(f64),
    Periodic(Vec<f64>),
}

impl Tail {
    /// One full cycle of tail values (a single value for a constant tail).
    pub fn values(&self) -> &[f64] {
        match self {
            Tail::Constant(c) => std::slice::from_ref(c),
            Tail::Periodic(cycle) => cycle,
        }
    }

    pub fn period(&self) -> usize {
        self.values().len()
    }

    #[inline]
    pub fn at(&self, offset: usize) -> f64 {
        let values = self.values();
        values[offset % values.len()]
    }

    fn rotated_left(&self, k: usize) -> Tail {
        match self {
            Tail::Constant(c) => Tail::Constant(*c),
            Tail::Periodic(cycle) => {
                let mut cycle = cycle.clone();
                let len = cycle.len();
                cycle.rotate_left(k % len);
                Tail::Periodic(cycle)
            }
        }
    }

    fn from_cycle(mut cycle: Vec<f64>) -> Tail {
        if cycle.len() == 1 {
            Tail::Constant(cycle.pop().unwrap())
        } else {
            Tail::Periodic(cycle)
        }
    }
}

/// A bounded real sequence `x = (x_0, x_1, ...)`: `prefix` followed by `tail`
/// repeated forever.
///
/// Equality is pointwise: two streams with different encodings of the same
/// sequence compare equal.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawStream")]
pub struct Stream {
    prefix: Vec<f64>,
    tail: Tail,
}

#[derive(Deserialize)]
struct RawStream {
    #[serde(default)]
    prefix: Vec<f64>,
    #[serde(default = "zero_tail")]
    tail: Tail,
}

fn zero_tail() -> Tail {
    Tail::Constant(0.0)
}

impl TryFrom<RawStream> for Stream {
    type Error = Error;

    fn try_from(raw: RawStream) -> Result<Self> {
        Stream::new(raw.prefix, raw.tail)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl Stream {
    /// Builds a stream from a prefix and a tail.
    ///
    /// Rejects non-finite values and empty cycles. A periodic tail with a
    /// single element is folded into a constant tail; otherwise the user's
    /// cycle order is kept (see [`Stream::canonical`]).
    pub fn new(prefix: Vec<f64>, tail: Tail) -> Result<Self> {
        if let Some(v) = prefix.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidStream(format!("non-finite prefix value {v}")));
        }
        let tail = match tail {
            Tail::Constant(c) if !c.is_finite() => {
                return Err(Error::InvalidStream(format!("non-finite tail value {c}")));
            }
            Tail::Constant(c) => Tail::Constant(c),
            Tail::Periodic(cycle) => {
                if cycle.is_empty() {
                    return Err(Error::InvalidStream("empty periodic cycle".into()));
                }
                if let Some(v) = cycle.iter().find(|v| !v.is_finite()) {
                    return Err(Error::InvalidStream(format!("non-finite tail value {v}")));
                }
                Tail::from_cycle(cycle)
            }
        };
        Ok(Stream { prefix, tail })
    }

    /// The constant stream `(c, c, c, ...)`.
    ///
    /// Panics if `c` is not finite.
    pub fn constant(c: f64) -> Self {
        assert!(c.is_finite(), "constant stream value must be finite");
        Stream {
            prefix: Vec::new(),
            tail: Tail::Constant(c),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `prefix` followed by zeros.
    pub fn finite(prefix: Vec<f64>) -> Result<Self> {
        Self::new(prefix, Tail::Constant(0.0))
    }

    pub fn periodic(cycle: Vec<f64>) -> Result<Self> {
        Self::new(Vec::new(), Tail::Periodic(cycle))
    }

    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn period(&self) -> usize {
        self.tail.period()
    }

    #[inline]
    pub fn value_at(&self, t: usize) -> f64 {
        match self.prefix.get(t) {
            Some(v) => *v,
            None => self.tail.at(t - self.prefix.len()),
        }
    }

    /// Iterator over `x_0, x_1, ...` (infinite).
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..).map(move |t| self.value_at(t))
    }

    /// Same sequence, re-encoded with a prefix of at least `len` entries.
    pub fn with_prefix_len(&self, len: usize) -> Stream {
        if len <= self.prefix.len() {
            return self.clone();
        }
        let extra = len - self.prefix.len();
        let mut prefix = self.prefix.clone();
        prefix.extend((0..extra).map(|k| self.tail.at(k)));
        Stream {
            prefix,
            tail: self.tail.rotated_left(extra),
        }
    }

    /// Length of a window that contains every distinct position of both
    /// streams: aligned prefix plus one common tail cycle.
    fn joint_window(&self, other: &Stream) -> (usize, usize) {
        let n = self.prefix.len().max(other.prefix.len());
        (n, lcm(self.period(), other.period()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Stream {
        let prefix = self.prefix.iter().map(|&v| f(v)).collect();
        let tail = match &self.tail {
            Tail::Constant(c) => Tail::Constant(f(*c)),
            Tail::Periodic(cycle) => Tail::Periodic(cycle.iter().map(|&v| f(v)).collect()),
        };
        Stream { prefix, tail }
    }

    /// Pointwise combination. The result has prefix length `max(N_x, N_y)` and
    /// a tail of period `lcm(p_x, p_y)` (constant when both tails are).
    pub fn zip_with(&self, other: &Stream, f: impl Fn(f64, f64) -> f64) -> Stream {
        let (n, period) = self.joint_window(other);
        let prefix = (0..n)
            .map(|t| f(self.value_at(t), other.value_at(t)))
            .collect();
        let tail = match (&self.tail, &other.tail) {
            (Tail::Constant(a), Tail::Constant(b)) => Tail::Constant(f(*a, *b)),
            _ => Tail::Periodic(
                (n..n + period)
                    .map(|t| f(self.value_at(t), other.value_at(t)))
                    .collect(),
            ),
        };
        Stream { prefix, tail }
    }

    pub fn add(&self, other: &Stream) -> Stream {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Stream) -> Stream {
        self.zip_with(other, |a, b| a - b)
    }

    /// `x + θ` for a constant `θ`.
    pub fn translate(&self, theta: f64) -> Stream {
        self.map(|v| v + theta)
    }

    /// Pointwise `a * x_t + θ` with `a >= 0`.
    pub fn scale_translate(&self, a: f64, theta: f64) -> Result<Stream> {
        if a.is_nan() || a < 0.0 || !a.is_finite() {
            return Err(Error::InvalidScale(a));
        }
        if a == 0.0 {
            return Ok(Stream::constant(theta));
        }
        Ok(self.map(|v| a * v + theta))
    }

    /// Pointwise `a * x_t` for any real `a`.
    pub fn scale(&self, a: f64) -> Stream {
        self.map(|v| a * v)
    }

    /// `λ x + (1 - λ) y`.
    pub fn mix(&self, other: &Stream, lambda: f64) -> Stream {
        self.zip_with(other, |a, b| lambda * a + (1.0 - lambda) * b)
    }

    /// `(0, x_0, x_1, ...)`.
    pub fn delay(&self) -> Stream {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(0.0);
        prefix.extend_from_slice(&self.prefix);
        Stream {
            prefix,
            tail: self.tail.clone(),
        }
    }

    /// `(x_1, x_2, ...)`.
    pub fn shift_left(&self) -> Stream {
        if self.prefix.is_empty() {
            Stream {
                prefix: Vec::new(),
                tail: self.tail.rotated_left(1),
            }
        } else {
            Stream {
                prefix: self.prefix[1..].to_vec(),
                tail: self.tail.clone(),
            }
        }
    }

    /// `x_σ = (x_{σ(0)}, x_{σ(1)}, ...)` for a permutation with finite support.
    pub fn permute(&self, sigma: &Permutation) -> Stream {
        let mut out = self.with_prefix_len(sigma.support_bound());
        for t in 0..sigma.support_bound() {
            out.prefix[t] = self.value_at(sigma.apply(t));
        }
        out
    }

    /// Applies the swap `σ(2i) = 2i + 1`, `σ(2i + 1) = 2i` at every index.
    ///
    /// This permutation moves infinitely many indices, so it is not expressible
    /// as a [`Permutation`]; it is exact on this stream class because the tail
    /// can be aligned to an even offset and an even period.
    pub fn swap_pairs(&self) -> Stream {
        let n = self.prefix.len() + self.prefix.len() % 2;
        let aligned = self.with_prefix_len(n);
        let mut prefix = aligned.prefix;
        for pair in prefix.chunks_exact_mut(2) {
            pair.swap(0, 1);
        }
        let tail = match aligned.tail {
            Tail::Constant(c) => Tail::Constant(c),
            Tail::Periodic(mut cycle) => {
                if cycle.len() % 2 == 1 {
                    cycle.extend_from_within(..);
                }
                for pair in cycle.chunks_exact_mut(2) {
                    pair.swap(0, 1);
                }
                Tail::Periodic(cycle)
            }
        };
        Stream { prefix, tail }
    }

    /// `x_t` for `t < n`, and `k` from period `n` onward.
    pub fn replace_from(&self, n: usize, k: f64) -> Stream {
        Stream {
            prefix: (0..n).map(|t| self.value_at(t)).collect(),
            tail: Tail::Constant(k),
        }
    }

    /// `sup_t |x_t - y_t|`, exact over the joint window.
    pub fn sup_distance(&self, other: &Stream) -> f64 {
        let (n, period) = self.joint_window(other);
        (0..n + period)
            .map(|t| (self.value_at(t) - other.value_at(t)).abs())
            .fold(0.0, f64::max)
    }

    fn all_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.prefix.iter().chain(self.tail.values()).copied()
    }

    pub fn sup_norm(&self) -> f64 {
        self.all_values().map(f64::abs).fold(0.0, f64::max)
    }

    /// `inf_t x_t`.
    pub fn min_value(&self) -> f64 {
        self.all_values().fold(f64::INFINITY, f64::min)
    }

    /// `sup_t x_t`.
    pub fn max_value(&self) -> f64 {
        self.all_values().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn tail_min(&self) -> f64 {
        self.tail.values().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn tail_max(&self) -> f64 {
        self.tail
            .values()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Summed in sorted order, so rotating or reordering the cycle leaves the
    /// result bit-identical.
    pub fn tail_mean(&self) -> f64 {
        let mut values = self.tail.values().to_vec();
        values.sort_by(f64::total_cmp);
        values.iter().sum::<f64>() / values.len() as f64
    }

    /// `x_t >= y_t` for every `t`.
    pub fn dominates(&self, other: &Stream) -> bool {
        let (n, period) = self.joint_window(other);
        (0..n + period).all(|t| self.value_at(t) >= other.value_at(t))
    }

    /// Unique encoding of the sequence: minimal period, shortest prefix, and
    /// the cycle rotated to its lexicographically least form (the rotation
    /// offset is moved into the prefix).
    pub fn canonical(&self) -> Stream {
        let mut cycle = self.tail.values().to_vec();
        let p = cycle.len();
        let minimal = (1..=p)
            .find(|d| p.is_multiple_of(*d) && (0..p).all(|i| cycle[i] == cycle[i % d]))
            .unwrap_or(p);
        cycle.truncate(minimal);

        let mut prefix = self.prefix.clone();
        while let (Some(&last), Some(&cycle_last)) = (prefix.last(), cycle.last()) {
            if last != cycle_last {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }

        if cycle.len() > 1 {
            let best = (0..cycle.len())
                .min_by(|&a, &b| cmp_rotations(&cycle, a, b))
                .unwrap_or(0);
            prefix.extend_from_slice(&cycle[..best]);
            cycle.rotate_left(best);
        }
        Stream {
            prefix,
            tail: Tail::from_cycle(cycle),
        }
    }
}

fn cmp_rotations(cycle: &[f64], a: usize, b: usize) -> Ordering {
    let n = cycle.len();
    (0..n)
        .map(|i| cycle[(a + i) % n].total_cmp(&cycle[(b + i) % n]))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl PartialEq for Stream {
    fn eq(&self, other: &Self) -> bool {
        let (n, period) = self.joint_window(other);
        (0..n + period).all(|t| self.value_at(t) == other.value_at(t))
    }
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for v in &self.prefix {
            write!(f, "{v}, ")?;
        }
        match &self.tail {
            Tail::Constant(c) => write!(f, "{c}, {c}, ...)"),
            Tail::Periodic(cycle) => {
                write!(f, "[")?;
                for (i, v) in cycle.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]...)")
            }
        }
    }
}

/// A permutation of the time indices that fixes every index `>= M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[t] = σ(t)` for `t < images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{m}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds σ from `(t, σ(t))` pairs; unlisted indices are fixed.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let m = pairs
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0);
        let mut images: Vec<Option<usize>> = vec![None; m];
        for &(a, b) in pairs {
            if images[a].is_some_and(|prev| prev != b) {
                return Err(Error::InvalidPermutation(format!(
                    "index {a} assigned twice"
                )));
            }
            images[a] = Some(b);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(t, img)| img.unwrap_or(t))
            .collect();
        Self::from_images(images)
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// `σ(2i) = 2i + 1`, `σ(2i + 1) = 2i` for `2i + 1 < m`.
    pub fn pairwise_swap(m: usize) -> Self {
        let images = (0..m)
            .map(|t| {
                if t % 2 == 0 && t + 1 < m {
                    t + 1
                } else if t % 2 == 1 {
                    t - 1
                } else {
                    t
                }
            })
            .collect();
        Permutation { images }
    }

    pub fn support_bound(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, t: usize) -> usize {
        self.images.get(t).copied().unwrap_or(t)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (t, &s) in self.images.iter().enumerate() {
            images[s] = t;
        }
        Permutation { images }
    }

    /// Cycles of σ on `0..M`, each listed from its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                cycle.push(t);
                t = self.images[t];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(prefix: &[f64], tail: Tail) -> Stream {
        Stream::new(prefix.to_vec(), tail).unwrap()
    }

    #[test]
    fn construction_and_folding() {
        let z = s(&[], Tail::Constant(0.0));
        assert_eq!(z, Stream::zero());
        assert!(z.prefix().is_empty());

        let x = s(&[1.0], Tail::Periodic(vec![5.0]));
        assert_eq!(x.prefix(), &[1.0]);
        assert!(matches!(x.tail(), Tail::Constant(c) if *c == 5.0));

        let alt = s(&[0.0, 1.0], Tail::Periodic(vec![0.0, 1.0]));
        let canon = alt.canonical();
        assert!(canon.prefix().is_empty());
        assert_eq!(canon.tail().values(), &[0.0, 1.0]);
        assert_eq!(alt, canon);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            Stream::new(vec![f64::NAN], Tail::Constant(0.0)),
            Err(Error::InvalidStream(_))
        ));
        assert!(Stream::new(vec![], Tail::Constant(f64::INFINITY)).is_err());
        assert!(Stream::new(vec![], Tail::Periodic(vec![])).is_err());
        assert!(Stream::new(vec![], Tail::Periodic(vec![1.0, f64::NAN])).is_err());
    }

    #[test]
    fn value_at_examples() {
        assert_eq!(s(&[-1.0], Tail::Constant(0.0)).value_at(0), -1.0);
        assert_eq!(s(&[], Tail::Periodic(vec![0.0, 1.0])).value_at(5), 1.0);
        assert_eq!(s(&[7.0], Tail::Constant(3.0)).value_at(99), 3.0);
    }

    #[test]
    fn add_examples() {
        let x = Stream::periodic(vec![0.0, 1.0]).unwrap();
        let d = Stream::periodic(vec![1.0, -1.0]).unwrap();
        assert_eq!(x.add(&d), Stream::periodic(vec![1.0, 0.0]).unwrap());
        assert_eq!(x.add(&Stream::zero()), x);

        let y = Stream::periodic(vec![0.0, 0.0, 3.0]).unwrap();
        let sum = x.add(&y);
        assert_eq!(sum.period(), 6);
        for t in 0..12 {
            assert_eq!(sum.value_at(t), x.value_at(t) + y.value_at(t));
        }
    }

    #[test]
    fn scale_translate_examples() {
        let one = Stream::constant(1.0);
        assert_eq!(one.scale_translate(1.0, 2.5).unwrap(), Stream::constant(3.5));
        let x = s(&[1.0, 2.0], Tail::Constant(0.0));
        assert_eq!(x.scale_translate(0.0, -4.0).unwrap(), Stream::constant(-4.0));
        let y = x.scale_translate(2.0, 1.0).unwrap();
        assert_eq!(y.prefix(), &[3.0, 5.0]);
        assert!(matches!(y.tail(), Tail::Constant(c) if *c == 1.0));
        assert_eq!(x.scale_translate(-1.0, 0.0), Err(Error::InvalidScale(-1.0)));
    }

    #[test]
    fn delay_and_shift() {
        let d = s(&[4.0], Tail::Constant(0.0)).delay();
        assert_eq!(d.prefix(), &[0.0, 4.0]);
        let c = Stream::constant(2.0).delay();
        assert_eq!(c.prefix(), &[0.0]);
        assert!(matches!(c.tail(), Tail::Constant(v) if *v == 2.0));

        let x = s(&[1.0, 2.0], Tail::Constant(3.0)).shift_left();
        assert_eq!(x.prefix(), &[2.0]);
        let alt = Stream::periodic(vec![0.0, 1.0]).unwrap().shift_left();
        assert!(alt.prefix().is_empty());
        assert_eq!(alt.tail().values(), &[1.0, 0.0]);
    }

    #[test]
    fn pairwise_swap_window() {
        let d = Stream::periodic(vec![1.0, -1.0]).unwrap();
        let swapped = d.permute(&Permutation::pairwise_swap(8));
        let expected = [-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0];
        for (t, e) in expected.iter().enumerate() {
            assert_eq!(swapped.value_at(t), *e);
        }
        // beyond the support the original sequence resumes
        assert_eq!(swapped.value_at(8), 1.0);
        assert_eq!(swapped.value_at(9), -1.0);

        assert_eq!(d.swap_pairs(), Stream::periodic(vec![-1.0, 1.0]).unwrap());
    }

    #[test]
    fn swap_pairs_odd_shapes() {
        let x = s(&[1.0, 2.0, 3.0], Tail::Periodic(vec![4.0, 5.0, 6.0]));
        let y = x.swap_pairs();
        for t in 0..40 {
            let src = if t % 2 == 0 { t + 1 } else { t - 1 };
            assert_eq!(y.value_at(t), x.value_at(src), "t = {t}");
        }
    }

    #[test]
    fn identity_permutation() {
        let x = s(&[1.0, -2.0], Tail::Periodic(vec![0.5, 0.25, 3.0]));
        assert_eq!(x.permute(&Permutation::identity(6)), x);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!(Permutation::from_pairs(&[(0, 1), (1, 0)]).is_ok());
        assert!(Permutation::from_pairs(&[(0, 1)]).is_err());
        let p = Permutation::from_pairs(&[(0, 2), (2, 0)]).unwrap();
        assert_eq!(p.images(), &[2, 1, 0]);
        let c = Permutation::from_images(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(c.cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn sup_distance_examples() {
        let x = s(&[1.0, 2.0], Tail::Periodic(vec![3.0, -1.0]));
        assert_eq!(x.sup_distance(&x), 0.0);
        assert_eq!(Stream::constant(1.0).sup_distance(&Stream::zero()), 1.0);
    }

    #[test]
    fn canonical_is_unique() {
        let a = s(&[1.0, 2.0, 3.0], Tail::Periodic(vec![2.0, 3.0, 2.0, 3.0]));
        let b = s(&[1.0], Tail::Periodic(vec![2.0, 3.0]));
        let (ca, cb) = (a.canonical(), b.canonical());
        assert_eq!(ca.prefix(), cb.prefix());
        assert_eq!(ca.tail().values(), cb.tail().values());
        assert_eq!(ca, a);

        let c = s(&[3.0, 3.0], Tail::Periodic(vec![3.0, 3.0])).canonical();
        assert!(c.prefix().is_empty());
        assert!(matches!(c.tail(), Tail::Constant(v) if *v == 3.0));
    }

    #[test]
    fn json_round_trip() {
        let x = s(&[0.1, -7.25e-300], Tail::Periodic(vec![1.0 / 3.0, 2.0]));
        let json = serde_json::to_string(&x).unwrap();
        let back: Stream = serde_json::from_str(&json).unwrap();
        assert_eq!(back.prefix(), x.prefix());
        assert_eq!(back.tail().values(), x.tail().values());

        let c: Stream = serde_json::from_str(r#"{"prefix":[1],"tail":{"constant":2}}"#).unwrap();
        assert_eq!(c, s(&[1.0], Tail::Constant(2.0)));
        let p: Stream = serde_json::from_str(r#"{"tail":{"periodic":[0,1]}}"#).unwrap();
        assert_eq!(p, Stream::periodic(vec![0.0, 1.0]).unwrap());
        assert!(serde_json::from_str::<Stream>(r#"{"tail":{"periodic":[]}}"#).is_err());
        let f: Stream = serde_json::from_str(r#"{"prefix":[0,2]}"#).unwrap();
        assert_eq!(f, Stream::finite(vec![0.0, 2.0]).unwrap());
    }
}
