//! How the profile and characteristic pair move when one entry is appended.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::charpoly::{canonical_pair, characterize, CharPair};
use super::{RhoPiProfile, SymbolSeq};
use crate::ffield::{Elem, Field};

/// Profile and canonical pair of `(α | next)`.
pub fn extend_profile(field: &Field, seq: &SymbolSeq, next: Elem) -> (RhoPiProfile, CharPair) {
    characterize(field, &seq.extend(next))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionCase {
    /// `π = 0`, `r < n1`.
    QuasiRegular,
    /// `π ≥ 1`, `r < n1`.
    NonQuasiRegular,
    /// `n` even, `ρ = n1`.
    FullSquareEven,
    /// `n` odd, `ρ = n1`.
    FullSquareOdd,
    /// `n` odd, `r = n1`, `π ≥ 1`.
    NearSquareOdd,
}

impl ExtensionCase {
    pub fn of(p: &RhoPiProfile) -> ExtensionCase {
        let n1 = p.n1();
        let even = p.n.is_multiple_of(2);
        match () {
            _ if p.rank < n1 && p.pi == 0 => ExtensionCase::QuasiRegular,
            _ if p.rank < n1 => ExtensionCase::NonQuasiRegular,
            _ if p.rho == n1 && even => ExtensionCase::FullSquareEven,
            _ if p.rho == n1 => ExtensionCase::FullSquareOdd,
            _ => {
                assert!(!even, "r = n1 > rho is impossible for even n");
                ExtensionCase::NearSquareOdd
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtensionCase::QuasiRegular => "quasi-regular",
            ExtensionCase::NonQuasiRegular => "non-quasi-regular",
            ExtensionCase::FullSquareEven => "full-square-even",
            ExtensionCase::FullSquareOdd => "full-square-odd",
            ExtensionCase::NearSquareOdd => "near-square-odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionOutcome {
    pub next: Elem,
    pub profile: RhoPiProfile,
    pub pair: CharPair,
    /// Whether the class and pair are unchanged.
    pub stays: bool,
    /// Scalars `β` for which the predicted pair matches.
    pub betas: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub case: ExtensionCase,
    pub profile: RhoPiProfile,
    pub pair: CharPair,
    pub outcomes: Vec<ExtensionOutcome>,
    /// `(unchanged, moved)` counts over all `q` extensions. In the
    /// full-square even case the class is kept but the pair always moves,
    /// so every extension counts as moved.
    pub split: (usize, usize),
    pub failures: Vec<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Prediction {
    stay: Option<(usize, usize, usize)>,
    moved: (usize, usize, usize),
    /// Expected `(unchanged, changed)` counts.
    split: (usize, usize),
    beta_nonzero: bool,
}

fn predict(case: ExtensionCase, p: &RhoPiProfile, q: usize) -> Prediction {
    let (r, rho, pi) = p.class();
    let n1 = p.n1();
    match case {
        ExtensionCase::QuasiRegular => Prediction { stay: Some((r, r, 0)), moved: (r + 1, r, 1), split: (1, q - 1), beta_nonzero: true },
        ExtensionCase::NonQuasiRegular => Prediction { stay: None, moved: (r + 1, rho, pi + 1), split: (0, q), beta_nonzero: false },
        // the class never changes but the pair always moves along β
        ExtensionCase::FullSquareEven => Prediction { stay: None, moved: (n1, n1, 0), split: (0, q), beta_nonzero: false },
        ExtensionCase::FullSquareOdd => Prediction { stay: Some((n1, n1, 0)), moved: (n1 + 1, n1 + 1, 0), split: (1, q - 1), beta_nonzero: true },
        ExtensionCase::NearSquareOdd => Prediction { stay: None, moved: (n1 + 1, n1 + 1, 0), split: (0, q), beta_nonzero: false },
    }
}

/// The pair predicted for the changed branch, as a function of `β`.
fn moved_pair(field: &Field, case: ExtensionCase, p: &RhoPiProfile, pair: &CharPair, beta: Elem) -> CharPair {
    let (a1, a2) = (&pair.a1, &pair.a2);
    let gap = p.c2 - p.c1;
    match case {
        ExtensionCase::QuasiRegular => CharPair { a1: a1.clone(), a2: a2.scale(field, beta).add(field, &a1.shift(gap)) },
        ExtensionCase::NonQuasiRegular => CharPair { a1: a1.clone(), a2: a1.shift(gap).scale(field, beta).add(field, a2) },
        ExtensionCase::FullSquareEven => CharPair { a1: a2.scale(field, beta).add(field, a1), a2: a2.clone() },
        ExtensionCase::FullSquareOdd => CharPair { a1: a2.scale(field, beta).add(field, &a1.shift(1)), a2: a1.clone() },
        ExtensionCase::NearSquareOdd => CharPair { a1: a1.shift(1).scale(field, beta).add(field, a2), a2: a1.clone() },
    }
}

/// Runs all `q` extensions of `α` and checks them against the extension
/// theorem: the split between unchanged and changed classes, the new
/// classes, and the predicted pairs up to equivalence, with one `β` per
/// extension and distinct extensions giving distinct `β`.
pub fn extension_check(field: &Field, seq: &SymbolSeq) -> ExtensionReport {
    let (profile, pair) = characterize(field, seq);
    let case = ExtensionCase::of(&profile);
    let pred = predict(case, &profile, field.order() as usize);
    let label = |c: (usize, usize, usize)| format!("({},{},{})", c.0, c.1, c.2);
    let mut failures = Vec::new();
    let mut outcomes = Vec::new();
    let mut split = (0, 0);
    let mut used_betas: Vec<Elem> = Vec::new();
    // A2 = 0 only for the zero sequence, where β has nothing to act on
    let check_beta = !pair.a2.is_zero();

    for next in field.elements() {
        let (np, npair) = extend_profile(field, seq, next);
        let stays = pred.stay == Some(np.class());
        let mut betas = Vec::new();
        if stays {
            split.0 += 1;
            if canonical_pair(field, &pair.a1, &pair.a2, np.c1, np.c2) != npair {
                failures.push(format!("next={}: pair changed although the class did not", next.code()));
            }
        } else if np.class() == pred.moved {
            split.1 += 1;
            for beta in field.elements() {
                if pred.beta_nonzero && beta.is_zero() {
                    continue;
                }
                let cand = moved_pair(field, case, &profile, &pair, beta);
                if canonical_pair(field, &cand.a1, &cand.a2, np.c1, np.c2) == npair {
                    betas.push(beta);
                }
            }
            if betas.is_empty() {
                failures.push(format!("next={}: no beta reproduces the new pair", next.code()));
            } else if check_beta {
                if betas.len() > 1 {
                    failures.push(format!("next={}: several betas reproduce the new pair", next.code()));
                } else if used_betas.contains(&betas[0]) {
                    failures.push(format!("next={}: beta {} already taken by another extension", next.code(), betas[0].code()));
                } else {
                    used_betas.push(betas[0]);
                }
            }
        } else {
            failures.push(format!(
                "next={}: class {} not predicted in the {} case of {}",
                next.code(),
                label(np.class()),
                case.name(),
                label(profile.class())
            ));
        }
        outcomes.push(ExtensionOutcome { next, profile: np, pair: npair, stays, betas });
    }
    if split != pred.split {
        failures.push(format!("split {:?} differs from predicted {:?}", split, pred.split));
    }
    ExtensionReport { case, profile, pair, outcomes, split, failures }
}
