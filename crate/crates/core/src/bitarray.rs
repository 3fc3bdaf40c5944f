//! Fixed-length bit array indexed by an integer interval `[base, base + len)`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitArray {
    base: i128,
    len: usize,
    words: Vec<u64>,
}

impl BitArray {
    /// All-zero array covering `[lo, hi]`; empty when `hi < lo`.
    pub fn new(lo: i128, hi: i128) -> Self {
        let len = if hi < lo { 0 } else { (hi - lo + 1) as usize };
        BitArray { base: lo, len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn base(&self) -> i128 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Last covered integer (`base - 1` when empty).
    pub fn last(&self) -> i128 {
        self.base + self.len as i128 - 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn index(&self, n: i128) -> Option<usize> {
        let i = n.checked_sub(self.base)?;
        (i >= 0 && (i as u128) < self.len as u128).then_some(i as usize)
    }

    pub fn get(&self, n: i128) -> bool {
        self.index(n).is_some_and(|i| self.words[i / 64] >> (i % 64) & 1 == 1)
    }

    /// Sets bit `n`; out-of-range indices are ignored.
    pub fn set(&mut self, n: i128) {
        if let Some(i) = self.index(n) {
            self.words[i / 64] |= 1 << (i % 64);
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = i128> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(self.base + (wi * 64 + b) as i128)
            })
        })
    }

    /// Indices in range whose bit is clear, ascending.
    pub fn zeros(&self) -> Vec<i128> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut inv = !w;
            if wi == self.words.len() - 1 && !self.len.is_multiple_of(64) {
                inv &= (1u64 << (self.len % 64)) - 1;
            }
            while inv != 0 {
                let b = inv.trailing_zeros() as usize;
                inv &= inv - 1;
                out.push(self.base + (wi * 64 + b) as i128);
            }
        }
        out
    }

    /// First clear bit, if any.
    pub fn first_zero(&self) -> Option<i128> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let i = wi * 64 + (!w).trailing_zeros() as usize;
                return (i < self.len).then_some(self.base + i as i128);
            }
        }
        None
    }

    /// 64 bits starting at (possibly negative or out-of-range) offset `start`.
    fn extract(&self, start: i64) -> u64 {
        if start <= -64 || start >= self.len as i64 {
            return 0;
        }
        if start < 0 {
            return self.extract(0) << (-start) as u32;
        }
        let (q, r) = ((start / 64) as usize, (start % 64) as u32);
        let lo = self.words.get(q).copied().unwrap_or(0) >> r;
        let hi = if r == 0 { 0 } else { self.words.get(q + 1).copied().unwrap_or(0) << (64 - r) };
        lo | hi
    }

    fn mask_tail(&mut self) {
        if !self.len.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    /// `self |= {n + shift : n in src}`, clipped to this array's range.
    pub fn or_shifted(&mut self, src: &BitArray, shift: i128) {
        if self.len == 0 || src.len == 0 {
            return;
        }
        // destination index of source bit 0
        let offset = src.base + shift - self.base;
        let first = offset.max(0);
        let end = (offset + src.len as i128).min(self.len as i128);
        if first >= end {
            return;
        }
        let (w0, w1) = ((first / 64) as usize, ((end - 1) / 64) as usize);
        for wi in w0..=w1 {
            let start = (wi as i128 * 64 - offset) as i64;
            self.words[wi] |= src.extract(start);
        }
        self.mask_tail();
    }

    /// `self |= other` on the overlap of the two ranges.
    pub fn or_assign(&mut self, other: &BitArray) {
        self.or_shifted(other, 0);
    }

    /// Copy of the sub-range `[lo, hi]`; bits outside this array read as 0.
    pub fn slice(&self, lo: i128, hi: i128) -> BitArray {
        let mut out = BitArray::new(lo, hi);
        out.or_shifted(self, 0);
        out
    }

    /// Joins arrays covering consecutive ranges into one.
    pub fn concat(parts: &[BitArray]) -> Option<BitArray> {
        let first = parts.first()?;
        let last = parts.last()?;
        let mut out = BitArray::new(first.base, last.last());
        for p in parts {
            out.or_assign(p);
        }
        Some(out)
    }
}
