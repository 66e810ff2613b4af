//! Range mode queries on a static color array.
//!
//! The array is cut into `s` blocks. For every pair of blocks `p <= q` the
//! mode of blocks `p..=q` is precomputed by one rightward scan per starting
//! block. A query takes the entry of the blocks it fully spans and then checks
//! the elements in the partial blocks at either end. Per-color occurrence
//! lists with the rank of every position let each check run in amortized O(1):
//! only a color that beats the current best frequency advances it, and the
//! best can grow by at most the number of partial-block elements.

use crate::error::{Error, Result};
use crate::tree::ColorId;

#[derive(Debug, Clone)]
pub struct RangeModeIndex {
    a: Vec<u32>,
    block_len: usize,
    num_blocks: usize,
    /// Row-major `num_blocks x num_blocks`, upper triangle used.
    span_color: Vec<u32>,
    span_freq: Vec<u32>,
    occ_start: Vec<u32>,
    occ: Vec<u32>,
    rank: Vec<u32>,
}

impl RangeModeIndex {
    /// Builds the index with `s` blocks, `1 <= s <= a.len()`.
    pub fn new(a: &[ColorId], s: usize) -> Result<Self> {
        if s < 1 || s > a.len() {
            return Err(Error::InvalidParameter(format!(
                "block count {s} must lie in [1, {}]",
                a.len()
            )));
        }
        let a: Vec<u32> = a.iter().map(|&c| c as u32).collect();
        let len = a.len();
        let delta = a.iter().copied().max().map_or(0, |m| m as usize + 1);
        let block_len = len.div_ceil(s);
        let num_blocks = len.div_ceil(block_len);

        let mut occ_start = vec![0u32; delta + 1];
        for &c in &a {
            occ_start[c as usize + 1] += 1;
        }
        for c in 0..delta {
            occ_start[c + 1] += occ_start[c];
        }
        let mut fill = occ_start.clone();
        let mut occ = vec![0u32; len];
        let mut rank = vec![0u32; len];
        for (i, &c) in a.iter().enumerate() {
            let c = c as usize;
            rank[i] = fill[c] - occ_start[c];
            occ[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }

        let mut span_color = vec![0u32; num_blocks * num_blocks];
        let mut span_freq = vec![0u32; num_blocks * num_blocks];
        let mut count = vec![0u32; delta];
        for p in 0..num_blocks {
            let (mut bc, mut bf) = (0u32, 0u32);
            let from = p * block_len;
            for (i, &c) in a.iter().enumerate().skip(from) {
                let k = &mut count[c as usize];
                *k += 1;
                if *k > bf || (*k == bf && c < bc) {
                    bf = *k;
                    bc = c;
                }
                if (i + 1) % block_len == 0 || i + 1 == len {
                    let q = i / block_len;
                    span_color[p * num_blocks + q] = bc;
                    span_freq[p * num_blocks + q] = bf;
                }
            }
            for &c in &a[from..] {
                count[c as usize] = 0;
            }
        }

        Ok(RangeModeIndex {
            a,
            block_len,
            num_blocks,
            span_color,
            span_freq,
            occ_start,
            occ,
            rank,
        })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Precomputed mode of blocks `p..=q`.
    pub fn span(&self, p: usize, q: usize) -> (ColorId, usize) {
        assert!(p <= q && q < self.num_blocks, "block span out of range");
        let i = p * self.num_blocks + q;
        (self.span_color[i] as ColorId, self.span_freq[i] as usize)
    }

    #[inline]
    fn occ_of(&self, c: u32) -> &[u32] {
        &self.occ[self.occ_start[c as usize] as usize..self.occ_start[c as usize + 1] as usize]
    }

    /// Mode of `a[i..=j]` with its frequency.
    pub fn query(&self, i: usize, j: usize) -> Result<(ColorId, usize)> {
        if i > j || j >= self.a.len() {
            return Err(Error::RangeOutOfBounds {
                lo: i,
                hi: j,
                len: self.a.len(),
            });
        }
        let bl = self.block_len;
        let first = i.div_ceil(bl);
        let last_end = (j + 1) / bl;
        let (mut best_c, mut best_f, left_end, right_start) = if first < last_end {
            let (c, f) = self.span(first, last_end - 1);
            (c as u32, f, first * bl, last_end * bl)
        } else {
            (self.a[i], 0, j + 1, j + 1)
        };

        for x in i..left_end {
            let c = self.a[x];
            let r = self.rank[x] as usize;
            let occ = self.occ_of(c);
            if r > 0 && occ[r - 1] as usize >= i {
                continue;
            }
            while r + best_f < occ.len() && occ[r + best_f] as usize <= j {
                best_f += 1;
                best_c = c;
            }
        }
        for y in (right_start..=j).rev() {
            let c = self.a[y];
            let r = self.rank[y] as usize;
            let occ = self.occ_of(c);
            if r + 1 < occ.len() && occ[r + 1] as usize <= j {
                continue;
            }
            while best_f <= r && occ[r - best_f] as usize >= i {
                best_f += 1;
                best_c = c;
            }
        }
        Ok((best_c as ColorId, best_f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: &[usize], i: usize, j: usize) -> usize {
        let mut count = std::collections::HashMap::new();
        for &c in &a[i..=j] {
            *count.entry(c).or_insert(0) += 1;
        }
        count.into_values().max().unwrap()
    }

    #[test]
    fn small_array() {
        let a = [0, 1, 1, 2];
        let idx = RangeModeIndex::new(&a, 2).unwrap();
        assert_eq!(idx.query(1, 3).unwrap(), (1, 2));
        assert_eq!(idx.query(2, 2).unwrap(), (1, 1));
        assert_eq!(idx.span(0, 1), (1, 2));
        assert_eq!(idx.span(0, 0).1, 1);
    }

    #[test]
    fn single_block_is_global_mode() {
        let a = [3, 1, 3, 0];
        let idx = RangeModeIndex::new(&a, 1).unwrap();
        assert_eq!(idx.num_blocks(), 1);
        assert_eq!(idx.span(0, 0), (3, 2));
    }

    #[test]
    fn bad_parameters() {
        assert!(RangeModeIndex::new(&[0, 1], 0).is_err());
        assert!(RangeModeIndex::new(&[0, 1], 3).is_err());
        let idx = RangeModeIndex::new(&[0, 1], 2).unwrap();
        assert!(matches!(
            idx.query(1, 0),
            Err(Error::RangeOutOfBounds { .. })
        ));
        assert!(matches!(
            idx.query(0, 2),
            Err(Error::RangeOutOfBounds { .. })
        ));
    }

    #[test]
    fn all_ranges_match_brute_force() {
        let a = [2, 0, 2, 1, 1, 0, 2, 2, 1, 0, 0, 0, 3];
        for s in 1..=a.len() {
            let idx = RangeModeIndex::new(&a, s).unwrap();
            for i in 0..a.len() {
                for j in i..a.len() {
                    let (c, f) = idx.query(i, j).unwrap();
                    assert_eq!(f, brute(&a, i, j), "s={s} [{i},{j}]");
                    assert_eq!(a[i..=j].iter().filter(|&&x| x == c).count(), f);
                }
            }
        }
    }
}
