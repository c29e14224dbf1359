//! Compensated accumulation for Monte Carlo means.
//!
//! Trials are accumulated in fixed-size chunks with Neumaier summation; chunk
//! partials are then combined by a pairwise tree in chunk order. The result
//! depends only on the chunk layout, never on which thread produced a chunk.

use alloc::vec::Vec;

/// Kahan-Babuska-Neumaier running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Mean and population variance of a stream, accumulated as deviations from
/// a fixed reference value. A stream that never deviates from the reference
/// returns the reference bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedMoments {
    reference: f64,
    count: u64,
    dev: NeumaierSum,
    dev_sq: NeumaierSum,
}

impl ShiftedMoments {
    pub fn new(reference: f64) -> Self {
        ShiftedMoments {
            reference,
            count: 0,
            dev: NeumaierSum::default(),
            dev_sq: NeumaierSum::default(),
        }
    }

    pub fn push(&mut self, x: f64) {
        let d = x - self.reference;
        self.count += 1;
        if d != 0.0 {
            self.dev.add(d);
            self.dev_sq.add(d * d);
        }
    }

    /// Combines two partials built against the same reference.
    pub fn merge(&mut self, other: &ShiftedMoments) {
        debug_assert_eq!(self.reference.to_bits(), other.reference.to_bits());
        self.count += other.count;
        self.dev.merge(&other.dev);
        self.dev_sq.merge(&other.dev_sq);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let shift = self.dev.value() / self.count as f64;
        if shift == 0.0 {
            self.reference
        } else {
            self.reference + shift
        }
    }

    pub fn variance(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let n = self.count as f64;
        let m = self.dev.value() / n;
        (self.dev_sq.value() / n - m * m).max(0.0)
    }
}

/// Pairwise tree reduction over `items` in order. Returns `None` when empty.
pub fn pairwise_reduce<T: Clone>(items: &[T], merge: &impl Fn(&mut T, &T)) -> Option<T> {
    match items.len() {
        0 => None,
        1 => Some(items[0].clone()),
        len => {
            let (left, right) = items.split_at(len / 2);
            let mut acc = pairwise_reduce(left, merge)?;
            let rhs = pairwise_reduce(right, merge)?;
            merge(&mut acc, &rhs);
            Some(acc)
        }
    }
}

/// Splits `0..n` into consecutive ranges of at most `chunk` elements.
pub fn chunk_ranges(n: u64, chunk: u64) -> Vec<core::ops::Range<u64>> {
    let chunk = chunk.max(1);
    let mut out = Vec::with_capacity(n.div_ceil(chunk) as usize);
    let mut start = 0;
    while start < n {
        let end = (start + chunk).min(n);
        out.push(start..end);
        start = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = NeumaierSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn constant_stream_mean_is_exact() {
        let x = -0.5000000000000001;
        let mut m = ShiftedMoments::new(x);
        for _ in 0..1_000_003 {
            m.push(x);
        }
        assert_eq!(m.mean().to_bits(), x.to_bits());
        assert_eq!(m.variance(), 0.0);
    }

    #[test]
    fn moments_of_coin() {
        let mut m = ShiftedMoments::new(1.0);
        for i in 0..1000 {
            m.push(if i % 2 == 0 { 1.0 } else { -1.0 });
        }
        assert_eq!(m.mean(), 0.0);
        assert!((m.variance() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pairwise_matches_sequential_merge_shape() {
        let parts: Vec<u64> = (1..=10).collect();
        let total = pairwise_reduce(&parts, &|a: &mut u64, b: &u64| *a += *b).unwrap();
        assert_eq!(total, 55);
        assert!(pairwise_reduce::<u64>(&[], &|a, b| *a += *b).is_none());
    }

    #[test]
    fn chunk_ranges_cover() {
        let r = chunk_ranges(10, 4);
        assert_eq!(r, alloc::vec![0..4, 4..8, 8..10]);
        assert!(chunk_ranges(0, 4).is_empty());
    }
}
