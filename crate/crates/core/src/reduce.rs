//! Deterministic pairwise summation.
//!
//! The summation tree depends only on the order in which terms are pushed,
//! never on thread scheduling.

use std::ops::Add;

/// Streaming pairwise (binary-counter) accumulator.
#[derive(Clone, Debug)]
pub struct Pairwise<T> {
    // (block size, partial sum), sizes strictly decreasing
    stack: Vec<(u64, T)>,
}

impl<T: Copy + Add<Output = T>> Pairwise<T> {
    pub fn new() -> Self {
        Pairwise { stack: Vec::new() }
    }

    pub fn push(&mut self, x: T) {
        let mut size = 1u64;
        let mut acc = x;
        while let Some(&(s, top)) = self.stack.last() {
            if s != size {
                break;
            }
            self.stack.pop();
            acc = top + acc;
            size *= 2;
        }
        self.stack.push((size, acc));
    }

    pub fn finish(self, zero: T) -> T {
        let mut it = self.stack.into_iter().rev();
        match it.next() {
            None => zero,
            Some((_, mut acc)) => {
                for (_, x) in it {
                    acc = x + acc;
                }
                acc
            }
        }
    }
}

impl<T: Copy + Add<Output = T>> Default for Pairwise<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Pairwise sum of a slice with fixed midpoint splits.
pub fn pairwise_sum<T: Copy + Add<Output = T>>(xs: &[T], zero: T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a, zero) + pairwise_sum(b, zero)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streaming_matches_total() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let mut acc = Pairwise::new();
        for &x in &xs {
            acc.push(x);
        }
        let s = acc.finish(0.0);
        assert!((s - pairwise_sum(&xs, 0.0)).abs() < 1e-13);
        assert_eq!(Pairwise::<f64>::new().finish(0.0), 0.0);
    }
}
