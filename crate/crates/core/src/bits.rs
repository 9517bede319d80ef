//! Fixed-width bitsets for length dynamic programs. Bit `i` set means
//! "length `i` is attainable".

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn singleton(i: usize) -> Self {
        let mut b = Bits {
            words: vec![0; i / 64 + 1],
        };
        b.words[i / 64] |= 1 << (i % 64);
        b
    }

    pub(crate) fn from_words(words: &[u64]) -> Self {
        let mut b = Bits {
            words: words.to_vec(),
        };
        b.trim();
        b
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        ones(&self.words)
    }

    pub(crate) fn or_assign(&mut self, other: &Bits) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn shifted(&self, shift: usize) -> Bits {
        if self.is_empty() {
            return Bits::default();
        }
        let mut out = vec![0; self.words.len() + shift / 64 + 1];
        shl_or(&mut out, &self.words, shift);
        Bits::from_words(&out)
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub(crate) fn sumset(&self, other: &Bits) -> Bits {
        let (small, large) = if self.count() <= other.count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0; self.words.len() + other.words.len() + 1];
        for i in small.ones() {
            shl_or(&mut out, &large.words, i);
        }
        Bits::from_words(&out)
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let tz = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + tz)
        })
    })
}

/// `dst |= src << shift`, dropping bits that fall off the end of `dst`.
pub(crate) fn shl_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    if ws >= dst.len() {
        return;
    }
    let end = dst.len().min(src.len() + ws + 1);
    for (j, d) in dst[ws..end].iter_mut().enumerate() {
        let lo = if j < src.len() { src[j] << bs } else { 0 };
        let hi = if bs > 0 && j > 0 && j - 1 < src.len() {
            src[j - 1] >> (64 - bs)
        } else {
            0
        };
        *d |= lo | hi;
    }
}

/// One bitset row per value `0..rows`, stored contiguously.
pub(crate) struct BitTable {
    width: usize,
    data: Vec<u64>,
}

impl BitTable {
    /// `bits_per_row` bits per row; `None` if the table would exceed `cap` bits.
    pub(crate) fn new(rows: usize, bits_per_row: usize, cap: u64) -> Option<Self> {
        let width = bits_per_row / 64 + 1;
        let total = (rows as u128) * (width as u128) * 64;
        if total > cap as u128 {
            return None;
        }
        Some(BitTable {
            width,
            data: vec![0; rows * width],
        })
    }

    pub(crate) fn rows(&self) -> usize {
        self.data.len() / self.width
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub(crate) fn set(&mut self, row: usize, bit: usize) {
        self.data[row * self.width + bit / 64] |= 1 << (bit % 64);
    }

    /// `row[dst] |= row[src] << shift` for `src < dst`.
    pub(crate) fn shl_or_rows(&mut self, dst: usize, src: usize, shift: usize) {
        debug_assert!(src < dst);
        let w = self.width;
        let (head, tail) = self.data.split_at_mut(dst * w);
        shl_or(&mut tail[..w], &head[src * w..(src + 1) * w], shift);
    }
}
