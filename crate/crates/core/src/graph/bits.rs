/// A borrowed slice of 64-bit words read as a vertex set.
#[derive(Clone, Copy)]
pub struct BitRow<'a>(pub &'a [u64]);

impl<'a> BitRow<'a> {
    pub fn iter(self) -> impl Iterator<Item = usize> + 'a {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn count(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(self, v: usize) -> bool {
        (self.0[v / 64] >> (v % 64)) & 1 == 1
    }
}

/// Calls `f` on each set bit; stops early when `f` returns false.
#[inline]
pub fn for_each_bit(words: &[u64], mut f: impl FnMut(usize) -> bool) -> bool {
    for (w, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !f(w * 64 + t) {
                return false;
            }
        }
    }
    true
}
