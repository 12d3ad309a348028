//! Constructions relating `𝒮_γ(g)` to semigroups of genus `γ`: the one-half
//! map, doubling, translation of odd members, and symmetric examples.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::tree::{self, TreeConfig};

/// `{x : 2x ∈ S}`. Its genus is the number of even gaps of `S`.
pub fn one_half(s: &Semigroup) -> Semigroup {
    Semigroup::from_predicate(s.conductor().div_ceil(2), |x| s.contains(2 * x))
}

/// A semigroup split into its half, its odd members below `2g`, and the tail
/// `{2g, 2g + 1, …}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfDecomposition {
    pub half: Semigroup,
    /// The `γ` odd members in `[1, 2g - 1]`, increasing.
    pub odd_part: Vec<u32>,
    pub genus: u32,
}

impl HalfDecomposition {
    pub fn new(s: &Semigroup) -> Self {
        let genus = s.genus();
        let top = (2 * genus).saturating_sub(1);
        let odd_part = (1..=top).step_by(2).filter(|&x| s.contains(x)).collect();
        HalfDecomposition { half: one_half(s), odd_part, genus }
    }

    /// `2·half ∪ odd_part ∪ {2g + i}`.
    pub fn reassemble(&self) -> Result<Semigroup> {
        let tail = 2 * self.genus;
        let s = Semigroup::from_predicate(tail, |x| {
            if x % 2 == 0 {
                self.half.contains(x / 2)
            } else {
                self.odd_part.binary_search(&x).is_ok()
            }
        });
        s.closure_witness().map_or(Ok(s), |(a, b)| Err(Error::NotASemigroup { a, b }))
    }
}

impl fmt::Display for HalfDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let odd: Vec<String> = self.odd_part.iter().map(u32::to_string).collect();
        write!(f, "2*{} + {{{}}} + [{},inf)", self.half, odd.join(","), 2 * self.genus)
    }
}

fn require_genus(genus: u32, gamma: u32, required: u32) -> Result<()> {
    if genus < required {
        return Err(Error::GenusTooSmall { genus, gamma, required });
    }
    Ok(())
}

/// `2T ∪ {odd x ≥ 2g − 2γ + 1}`: a semigroup of genus `g` with half `T`.
///
/// The odd members are the `γ` largest odd numbers below `2g` and everything
/// above. The result is a semigroup exactly when `2g − 2γ + 1 > F(T)`, which
/// always holds for `g ≥ 2γ`; in `⌈3γ/2⌉ ≤ g < 2γ` some halves have no
/// preimage at all and the failure is reported.
pub fn double_with_tail(t: &Semigroup, genus: u32) -> Result<Semigroup> {
    let gamma = t.genus();
    require_genus(genus, gamma, (3 * gamma).div_ceil(2))?;
    let start = 2 * (genus - gamma) + 1;
    let conductor = (2 * t.conductor()).max(start);
    let s = Semigroup::from_predicate(conductor, |x| {
        if x % 2 == 0 { t.contains(x / 2) } else { x >= start }
    });
    s.closure_witness().map_or(Ok(s), |(a, b)| Err(Error::NotASemigroup { a, b }))
}

/// The `t`-translation: even members stay, odd members move down by `t`.
/// The image is validated; negative elements or a broken closure are errors.
pub fn translate(s: &Semigroup, t: i64) -> Result<Semigroup> {
    if t % 2 != 0 {
        return Err(Error::OddTranslation(t));
    }
    if t == 0 {
        return Ok(s.clone());
    }
    let f = s.frobenius() as i64;
    // Smallest odd member of S; its image must stay nonnegative.
    let first_odd = (1..).step_by(2).find(|&x| s.contains_signed(x)).unwrap();
    if first_odd - t < 0 {
        return Err(Error::NegativeElement { value: first_odd - t });
    }
    let conductor = (f.max(f - t) + 1).max(0) as u32;
    let image = Semigroup::from_predicate(conductor, |x| {
        let x = x as i64;
        if x % 2 == 0 { s.contains_signed(x) } else { s.contains_signed(x + t) }
    });
    image.closure_witness().map_or(Ok(image), |(a, b)| Err(Error::NotASemigroup { a, b }))
}

/// Outcome of checking the translation `𝒮_γ(g) → 𝒮_γ(3γ)` by exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberBijectionReport {
    pub gamma: u32,
    pub genus: u32,
    /// `N_γ(g)`.
    pub domain: u64,
    /// `N_γ(3γ)`.
    pub codomain: u64,
    /// Images were valid, pairwise distinct and inside `𝒮_γ(3γ)`.
    pub injective: bool,
    /// Every element of `𝒮_γ(3γ)` was hit and the reverse translation
    /// round-trips.
    pub bijective: bool,
    /// For `g < 3γ`: `⟨4, 2γ + 1⟩`, an element with no preimage.
    pub witness: Option<Semigroup>,
    /// First element whose image misbehaved, if any.
    pub counterexample: Option<Semigroup>,
}

/// Checks the translation by `2g − 6γ` on all of `𝒮_γ(g)`.
pub fn canonical_fiber_bijection_check(
    gamma: u32,
    genus: u32,
    config: &TreeConfig,
) -> Result<FiberBijectionReport> {
    require_genus(genus, gamma, (3 * gamma).div_ceil(2))?;
    if gamma == 0 {
        return Err(Error::InvalidArgument("the translation check needs at least one even gap"));
    }
    let t = 2 * genus as i64 - 6 * gamma as i64;
    let domain = tree::stratum(genus, gamma, config)?;
    let codomain: HashSet<Semigroup> = tree::stratum(3 * gamma, gamma, config)?.into_iter().collect();

    let mut images = HashSet::with_capacity(domain.len());
    let mut counterexample = None;
    for s in &domain {
        let ok = match translate(s, t) {
            Ok(img) => {
                let back = translate(&img, -t).ok();
                let fine = codomain.contains(&img) && back.as_ref() == Some(s);
                fine && images.insert(img)
            }
            Err(_) => false,
        };
        if !ok && counterexample.is_none() {
            counterexample = Some(s.clone());
        }
    }
    let injective = counterexample.is_none();

    let (bijective, witness) = if genus >= 3 * gamma {
        let surjective = images.len() == codomain.len()
            && codomain.iter().all(|c| translate(c, -t).is_ok_and(|pre| domain.contains(&pre)));
        (injective && surjective, None)
    } else {
        let w = Semigroup::from_generators(&[4, 2 * gamma + 1])?;
        let missing = codomain.contains(&w) && !images.contains(&w);
        (false, missing.then_some(w))
    };
    Ok(FiberBijectionReport {
        gamma,
        genus,
        domain: domain.len() as u64,
        codomain: codomain.len() as u64,
        injective,
        bijective,
        witness,
        counterexample,
    })
}

/// `2T ∪ {2g − 1 − 2q : q ∈ ℤ \ T, 2g − 1 − 2q ≥ 0}`, a symmetric semigroup of
/// genus `g` with half `T`, for `g ≥ 3γ`.
pub fn stohr_symmetric(t: &Semigroup, genus: u32) -> Result<Semigroup> {
    let gamma = t.genus();
    require_genus(genus, gamma, 3 * gamma)?;
    let top = 2 * genus as i64 - 1;
    // Negative q give every odd number above 2g - 1.
    let s = Semigroup::from_predicate(2 * genus, |x| {
        if x % 2 == 0 {
            t.contains(x / 2)
        } else {
            let q = (top - x as i64) / 2;
            !t.contains_signed(q)
        }
    });
    s.closure_witness().map_or(Ok(s), |(a, b)| Err(Error::NotASemigroup { a, b }))
}
