//! Truncations of a quasi-regular sequence follow the Euclidean algorithm on
//! its characteristic pair.
//!
//! For `α` of class `(r, r, 0)`, `r ≥ 2`, with chain `A_1, A_2, ..` and
//! degrees `d_i`, let `t` be the last index with `d_t ≥ 2`. For
//! `2 ≤ i ≤ t` the prefix ending at `α_{d_{i-1} + d_i - 2}` should have class
//! `(d_i, d_i, 0)` and pair `(A_i, A_{i+1})`. The last prefix, ending at
//! `α_{d_t}`, is stated to have class `(2, 1, 1)` or `(2, 0, 2)` with pair
//! `(A_{t+1}, A_t)`; that level is recorded but not asserted, because small
//! cases such as `(1, 0, 1)` over `F_2` contradict it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::charpoly::{canonical_pair, characterize, CharPair};
use super::{hankel_kernel_basis, HankelError, HankelView, RhoPiProfile, SymbolSeq};
use crate::ffield::{Elem, Field};
use crate::fpoly::{EuclidChain, Poly};
use crate::linalg::span_equal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidLevel {
    /// Level `i` of the chain correspondence, starting at 2.
    pub level: usize,
    /// The truncation keeps `α_0 ..= α_last`.
    pub last: usize,
    pub claimed: (usize, usize, usize),
    pub observed: RhoPiProfile,
    pub claimed_pair: CharPair,
    pub observed_pair: CharPair,
    /// Whether the level counts towards pass/fail.
    pub asserted: bool,
    /// For the last level only: whether the one-row kernel is spanned by
    /// `T^j A_{t+1}` (`j ≤ d_t - 2`) and `A_t`, which is what the claimed
    /// class would imply.
    pub kernel_reading: Option<bool>,
}

impl EuclidLevel {
    pub fn matches(&self) -> bool {
        self.observed.class() == self.claimed && self.observed_pair == self.claimed_pair
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidReport {
    pub profile: RhoPiProfile,
    pub pair: CharPair,
    pub chain: EuclidChain,
    pub levels: Vec<EuclidLevel>,
    /// `deg A_s - 1`, with `A_s` the last chain entry of positive degree.
    pub claimed_leading_zeros: usize,
    pub observed_leading_zeros: usize,
}

impl EuclidReport {
    /// Mismatches on asserted checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .levels
            .iter()
            .filter(|lv| lv.asserted && !lv.matches())
            .map(|lv| format!("level {}: claimed {:?}, observed {:?}", lv.level, lv.claimed, lv.observed.class()))
            .collect();
        if self.claimed_leading_zeros != self.observed_leading_zeros {
            out.push(format!("leading zeros: claimed {}, observed {}", self.claimed_leading_zeros, self.observed_leading_zeros));
        }
        out
    }

    /// Mismatches on levels that are recorded only.
    pub fn discrepancies(&self) -> Vec<&EuclidLevel> {
        self.levels.iter().filter(|lv| !lv.asserted && !lv.matches()).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn euclid_correspondence_check(field: &Field, seq: &SymbolSeq) -> Result<EuclidReport, HankelError> {
    let (profile, pair) = characterize(field, seq);
    if profile.pi != 0 {
        return Err(HankelError::NotApplicable("sequence is not quasi-regular"));
    }
    if profile.rank < 2 {
        return Err(HankelError::NotApplicable("rank below 2"));
    }
    // with c1 = c2 the canonical A2 already has lower degree than A1
    let chain = EuclidChain::new(field, &pair.a1, &pair.a2).expect("deg A2 < deg A1 for quasi-regular sequences");
    let polys = &chain.polys;
    let d = &chain.degrees;
    let t = d.iter().rposition(|&di| di >= 2).expect("d_1 = r >= 2");
    let next_poly = |i: usize| polys.get(i).cloned().unwrap_or_else(Poly::zero);

    let mut levels = Vec::new();
    // chain index i (0-based) is level i + 1
    for i in 1..=t {
        let last = d[i - 1] + d[i] - 2;
        let sub = seq.truncate(last);
        let (observed, observed_pair) = characterize(field, &sub);
        let claimed_pair = canonical_pair(field, &polys[i], &next_poly(i + 1), d[i], d[i - 1]);
        levels.push(EuclidLevel {
            level: i + 1,
            last,
            claimed: (d[i], d[i], 0),
            observed,
            claimed_pair,
            observed_pair,
            asserted: true,
            kernel_reading: None,
        });
    }
    {
        let last = d[t];
        let sub = seq.truncate(last);
        let (observed, observed_pair) = characterize(field, &sub);
        let low = next_poly(t + 1);
        let low_deg = low.degree().unwrap_or(0);
        let claimed = if low_deg == 1 { (2, 1, 1) } else { (2, 0, 2) };
        let claimed_pair = canonical_pair(field, &low, &polys[t], 2, last);
        let view = HankelView::new(&sub, 1, last + 1).expect("one-row shape fits");
        let kernel: Vec<Vec<Elem>> = hankel_kernel_basis(field, &view).iter().map(|p| p.to_vector(last + 1)).collect();
        let mut predicted: Vec<Vec<Elem>> = (0..last.saturating_sub(1)).map(|j| low.shift(j).to_vector(last + 1)).collect();
        predicted.push(polys[t].to_vector(last + 1));
        levels.push(EuclidLevel {
            level: t + 2,
            last,
            claimed,
            observed,
            claimed_pair,
            observed_pair,
            asserted: false,
            kernel_reading: Some(span_equal(field, &kernel, &predicted)),
        });
    }
    let s = polys.len() - 2;
    let claimed_leading_zeros = d[s] - 1;
    let observed_leading_zeros = seq.leading_zeros();
    Ok(EuclidReport { profile, pair, chain, levels, claimed_leading_zeros, observed_leading_zeros })
}

/// For `π ≥ 1`, `r ≥ 2`: the prefix `(α_0, .., α_{n-π})` has class
/// `(ρ, ρ, 0)`, the same `A1`, and (for `ρ ≥ 2`) the same `A2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationReport {
    pub profile: RhoPiProfile,
    pub pair: CharPair,
    pub observed: RhoPiProfile,
    pub observed_pair: CharPair,
    pub class_ok: bool,
    pub a1_ok: bool,
    /// `None` when `ρ < 2`, where the truncated `A2` comes from the rank
    /// table instead.
    pub a2_ok: Option<bool>,
}

impl TruncationReport {
    pub fn passed(&self) -> bool {
        self.class_ok && self.a1_ok && self.a2_ok != Some(false)
    }
}

pub fn truncation_check(field: &Field, seq: &SymbolSeq) -> Result<TruncationReport, HankelError> {
    let (profile, pair) = characterize(field, seq);
    if profile.pi == 0 {
        return Err(HankelError::NotApplicable("sequence is quasi-regular"));
    }
    if profile.rank < 2 {
        return Err(HankelError::NotApplicable("rank below 2"));
    }
    let sub = seq.truncate(profile.n - profile.pi);
    let (observed, observed_pair) = characterize(field, &sub);
    let rho = profile.rho;
    let class_ok = observed.class() == (rho, rho, 0);
    let a1_ok = observed_pair.a1 == pair.a1;
    let a2_ok = (rho >= 2).then(|| canonical_pair(field, &pair.a1, &pair.a2, observed.c1, observed.c2) == observed_pair);
    Ok(TruncationReport { profile, pair, observed, observed_pair, class_ok, a1_ok, a2_ok })
}
