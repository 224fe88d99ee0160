/// Dense square boolean matrix, one `u64` word per 64 columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix {
            n,
            stride,
            words: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    /// Sets bit `(i, j)`, returning true if it was previously clear.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.words[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Warshall's algorithm with whole-row unions. Returns true if any bit
    /// was added.
    pub fn transitive_closure(&mut self) -> bool {
        let mut changed = false;
        let mut pivot = vec![0u64; self.stride];
        for k in 0..self.n {
            pivot.copy_from_slice(self.row(k));
            for i in 0..self.n {
                if i == k || !self.get(i, k) {
                    continue;
                }
                let row = &mut self.words[i * self.stride..(i + 1) * self.stride];
                for (dst, src) in row.iter_mut().zip(&pivot) {
                    let merged = *dst | *src;
                    changed |= merged != *dst;
                    *dst = merged;
                }
            }
        }
        changed
    }
}
