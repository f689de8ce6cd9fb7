//! Patient criteria: evaluators that give no period special weight in the
//! long run.
//!
//! On eventually-periodic streams every Banach–Mazur limit equals the tail
//! mean, so the window criterion
//! `liminf_T inf_j (1/(T+1)) Σ_{t≤T} x_{j+t}` has a closed form.
//! [`window_oracle`] computes the inner `inf_j` exactly at a fixed horizon and
//! serves as the brute-force check.

use crate::streams::Stream;

/// `inf_t x_t`.
pub fn inf_value(x: &Stream) -> f64 {
    x.min_value()
}

/// `liminf_t x_t`: the minimum over the tail; the prefix is irrelevant.
pub fn liminf_value(x: &Stream) -> f64 {
    x.tail_min()
}

/// Window (Banach–Mazur) value: the tail mean.
pub fn banach_window_value(x: &Stream) -> f64 {
    x.tail_mean()
}

/// Long-run average `lim_T (1/T) Σ_{t<T} x_t`: the tail mean.
pub fn cesaro_value(x: &Stream) -> f64 {
    x.tail_mean()
}

/// `inf_{j≥0} (1/(T+1)) Σ_{t=0}^{T} x_{j+t}`.
///
/// Windows starting at `j ≥ N` repeat with the tail period, so scanning
/// `j < N + p` covers every distinct window.
pub fn window_oracle(x: &Stream, horizon: usize) -> f64 {
    let starts = x.prefix().len() + x.period();
    let len = horizon + 1;
    (0..starts)
        .map(|j| (j..j + len).map(|t| x.value_at(t)).sum::<f64>() / len as f64)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::Tail;

    fn s(prefix: &[f64], tail: Tail) -> Stream {
        Stream::new(prefix.to_vec(), tail).unwrap()
    }

    #[test]
    fn inf_examples() {
        let x = Stream::finite(vec![-1.0]).unwrap();
        let d = Stream::finite(vec![1.0, -1.0]).unwrap();
        assert_eq!(inf_value(&x), -1.0);
        assert_eq!(inf_value(&x.add(&d)), -1.0);
        assert_eq!(inf_value(&x.add(&d.scale(2.0))), -2.0);
        assert_eq!(inf_value(&Stream::constant(4.5)), 4.5);
        assert_eq!(inf_value(&s(&[5.0], Tail::Periodic(vec![2.0, 3.0]))), 2.0);
    }

    #[test]
    fn liminf_examples() {
        let x = Stream::periodic(vec![0.0, 1.0]).unwrap();
        let d = Stream::periodic(vec![1.0, -1.0]).unwrap();
        assert_eq!(liminf_value(&x), 0.0);
        assert_eq!(liminf_value(&x.add(&d)), 0.0);
        assert_eq!(liminf_value(&x.add(&d.swap_pairs())), -1.0);
        assert_eq!(liminf_value(&s(&[-100.0], Tail::Constant(7.0))), 7.0);
    }

    #[test]
    fn window_value_examples() {
        assert_eq!(banach_window_value(&Stream::periodic(vec![0.0, 1.0]).unwrap()), 0.5);
        for n in [1.0, 10.0, 100.0] {
            assert_eq!(banach_window_value(&Stream::finite(vec![-n]).unwrap()), 0.0);
        }
        assert_eq!(banach_window_value(&Stream::constant(-3.0)), -3.0);
    }

    #[test]
    fn cesaro_examples() {
        assert_eq!(cesaro_value(&Stream::periodic(vec![1.0, 2.0, 3.0]).unwrap()), 2.0);
        let x = s(&[1000.0], Tail::Periodic(vec![1.0, 2.0, 3.0]));
        assert_eq!(cesaro_value(&x), 2.0);
        let horizon = 1_000_000;
        let partial = (0..horizon).map(|t| x.value_at(t)).sum::<f64>() / horizon as f64;
        assert!((partial - 2.0).abs() <= 1006.0 / horizon as f64);
    }

    #[test]
    fn window_oracle_examples() {
        let alt = Stream::periodic(vec![0.0, 1.0]).unwrap();
        assert_eq!(window_oracle(&alt, 1), 0.5);
        assert!((window_oracle(&alt, 2) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(window_oracle(&Stream::constant(2.0), 17), 2.0);
        let horizon = 10_000;
        assert!((window_oracle(&alt, horizon) - 0.5).abs() <= 1.0 / (horizon + 1) as f64);
    }
}
