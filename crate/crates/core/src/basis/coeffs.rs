use num_traits::Zero;

use crate::rational::Rational;

/// Finitely supported vector sequence `k ↦ (c_1[k], …, c_N[k])`.
///
/// Stored densely from `lo()` to `hi()` (exclusive) with zero vectors
/// trimmed at both ends.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffSeq {
    channels: usize,
    offset: i64,
    values: Vec<Vec<Rational>>,
}

impl CoeffSeq {
    pub fn zero(channels: usize) -> Self {
        CoeffSeq {
            channels,
            offset: 0,
            values: Vec::new(),
        }
    }

    /// `values[i][s]` is `c_s[offset + i]`.
    pub fn new(channels: usize, offset: i64, mut values: Vec<Vec<Rational>>) -> Self {
        assert!(values.iter().all(|v| v.len() == channels), "channel count mismatch");
        let is_zero = |v: &Vec<Rational>| v.iter().all(Zero::is_zero);
        while values.last().is_some_and(is_zero) {
            values.pop();
        }
        let lead = values.iter().take_while(|v| is_zero(v)).count();
        if lead == values.len() {
            return CoeffSeq::zero(channels);
        }
        values.drain(..lead);
        CoeffSeq {
            channels,
            offset: offset + lead as i64,
            values,
        }
    }

    /// Builds from `(k, channel, value)` triples; repeated keys accumulate.
    pub fn from_entries(channels: usize, entries: Vec<(i64, usize, Rational)>) -> Self {
        let Some(lo) = entries.iter().map(|e| e.0).min() else {
            return CoeffSeq::zero(channels);
        };
        let hi = entries.iter().map(|e| e.0).max().unwrap() + 1;
        let mut values = vec![vec![Rational::zero(); channels]; (hi - lo) as usize];
        for (k, s, v) in entries {
            values[(k - lo) as usize][s] += v;
        }
        CoeffSeq::new(channels, lo, values)
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn lo(&self) -> i64 {
        self.offset
    }

    pub fn hi(&self) -> i64 {
        self.offset + self.values.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: i64, s: usize) -> Rational {
        if k < self.offset {
            return Rational::zero();
        }
        self.values
            .get((k - self.offset) as usize)
            .map_or_else(Rational::zero, |v| v[s].clone())
    }

    /// Channel `s` over `[lo, hi)`.
    pub fn channel(&self, s: usize, lo: i64, hi: i64) -> Vec<Rational> {
        (lo..hi).map(|k| self.get(k, s)).collect()
    }

    pub fn is_causal(&self) -> bool {
        self.is_zero() || self.offset >= 0
    }

    /// Storage is finite by construction.
    pub fn is_finite(&self) -> bool {
        true
    }

    /// Same sequence with an extra all-zero channel in front.
    pub fn with_leading_channel(&self) -> Self {
        CoeffSeq {
            channels: self.channels + 1,
            offset: self.offset,
            values: self
                .values
                .iter()
                .map(|v| std::iter::once(Rational::zero()).chain(v.iter().cloned()).collect())
                .collect(),
        }
    }
}
