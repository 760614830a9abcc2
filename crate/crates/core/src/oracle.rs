//! Exhaustive minimum-weight coset leaders for short binary frames.
//!
//! Errors are enumerated by increasing Hamming weight, each bit contributing a
//! precomputed syndrome mask. This is independent of every circuit in the
//! crate: masks come straight from the polynomial coefficients of the check
//! matrix.

use crate::error::DecodeError;
use num_traits::Zero;
use crate::RatMatrix2;

/// Upper bound on the number of error patterns a single search may visit.
pub const SEARCH_CAP: u128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetLeader {
    /// Bit `i` set means data bit `i` is in error.
    pub pattern: u64,
    pub weight: u32,
    /// Number of patterns of minimal weight with this syndrome.
    pub multiplicity: u64,
}

impl CosetLeader {
    pub fn unique(&self) -> bool {
        self.multiplicity == 1
    }

    pub fn bits(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| ((self.pattern >> i) & 1) as u8).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CosetOracle {
    data_bits: usize,
    syndrome_bits: usize,
    masks: Vec<u64>,
}

impl CosetOracle {
    /// Oracle for errors on `data_sections` sections of the code with check
    /// matrix `h` (`r × w`, polynomial), observing `syndrome_sections` sections
    /// of syndrome in the layout `s[j·r + i]`.
    pub fn new(h: &RatMatrix2, data_sections: usize, syndrome_sections: usize) -> Result<Self, DecodeError> {
        let (r, w) = (h.rows(), h.cols());
        let data_bits = data_sections * w;
        let syndrome_bits = syndrome_sections * r;
        if data_bits > 64 || syndrome_bits > 64 {
            return Err(DecodeError::SearchCap(format!("{data_bits} error bits, {syndrome_bits} syndrome bits (max 64 each)")));
        }
        let polys = h.poly_rows()?;
        let mut masks = vec![0u64; data_bits];
        for p in 0..data_sections {
            for t in 0..w {
                for (i, row) in polys.iter().enumerate() {
                    for (d, c) in row[t].coeffs().iter().enumerate() {
                        if !c.is_zero() && p + d < syndrome_sections {
                            masks[p * w + t] |= 1 << ((p + d) * r + i);
                        }
                    }
                }
            }
        }
        Ok(CosetOracle { data_bits, syndrome_bits, masks })
    }

    pub fn data_bits(&self) -> usize {
        self.data_bits
    }

    pub fn syndrome_bits(&self) -> usize {
        self.syndrome_bits
    }

    /// Syndrome of an error pattern given as a bit mask.
    pub fn syndrome_of(&self, pattern: u64) -> u64 {
        (0..self.data_bits).filter(|&i| (pattern >> i) & 1 == 1).fold(0, |acc, i| acc ^ self.masks[i])
    }

    pub fn pack_syndrome(bits: &[u8]) -> u64 {
        bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64 & 1) << i))
    }

    /// Minimum-weight error with the given syndrome, `None` if no error on the
    /// data sections produces it.
    pub fn query(&self, syndrome: u64) -> Result<Option<CosetLeader>, DecodeError> {
        let mut best: Option<CosetLeader> = None;
        let mut visited = 0u128;
        for weight in 0..=self.data_bits {
            visited += binomial(self.data_bits, weight);
            if visited > SEARCH_CAP {
                return Err(DecodeError::SearchCap(format!("more than {SEARCH_CAP} patterns")));
            }
            self.for_each_of_weight(weight, &mut |pattern, s| {
                if s == syndrome {
                    match &mut best {
                        None => best = Some(CosetLeader { pattern, weight: weight as u32, multiplicity: 1 }),
                        Some(b) => b.multiplicity += 1,
                    }
                }
            });
            if best.is_some() {
                break;
            }
        }
        Ok(best)
    }

    /// Coset leaders for every syndrome value, indexed by packed syndrome.
    pub fn table(&self) -> Result<Vec<Option<CosetLeader>>, DecodeError> {
        if self.syndrome_bits > 24 {
            return Err(DecodeError::SearchCap(format!("table of 2^{} syndromes", self.syndrome_bits)));
        }
        let reachable = 1usize << self.mask_rank();
        let mut table: Vec<Option<CosetLeader>> = vec![None; 1 << self.syndrome_bits];
        let mut filled = 0usize;
        let mut visited = 0u128;
        for weight in 0..=self.data_bits {
            visited += binomial(self.data_bits, weight);
            if visited > SEARCH_CAP {
                return Err(DecodeError::SearchCap(format!("more than {SEARCH_CAP} patterns")));
            }
            self.for_each_of_weight(weight, &mut |pattern, s| match &mut table[s as usize] {
                slot @ None => {
                    *slot = Some(CosetLeader { pattern, weight: weight as u32, multiplicity: 1 });
                    filled += 1;
                }
                Some(l) if l.weight as usize == weight => l.multiplicity += 1,
                Some(_) => {}
            });
            if filled == reachable {
                break;
            }
        }
        Ok(table)
    }

    /// Rank of the span of the bit masks over GF(2).
    fn mask_rank(&self) -> usize {
        let mut basis: Vec<u64> = Vec::new();
        for &m in &self.masks {
            let mut v = m;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    /// Calls `f(pattern, syndrome)` for every pattern of the given weight, in
    /// lexicographic order of the set bit positions.
    fn for_each_of_weight(&self, weight: usize, f: &mut impl FnMut(u64, u64)) {
        fn rec(masks: &[u64], start: usize, left: usize, pat: u64, syn: u64, f: &mut impl FnMut(u64, u64)) {
            if left == 0 {
                f(pat, syn);
                return;
            }
            for i in start..=masks.len() - left {
                rec(masks, i + 1, left - 1, pat | 1 << i, syn ^ masks[i], f);
            }
        }
        if weight <= self.masks.len() {
            rec(&self.masks, 0, weight, 0, 0, f);
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
