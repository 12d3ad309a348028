//! Numerical semigroups stored as a membership bit vector.
//!
//! A [`Semigroup`] keeps one bit per integer in `[0, F + 2]`, where `F` is the
//! Frobenius number. Everything above that range is a member. The genus,
//! Frobenius number and multiplicity are computed once at construction.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A numerical semigroup `S ⊆ ℕ₀` with finite complement.
///
/// `ℕ₀` itself is represented with Frobenius number `-1`, genus 0 and
/// multiplicity 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semigroup {
    frobenius: i32,
    bits: Vec<u64>,
    genus: u32,
    multiplicity: u32,
}

/// Even-gap data of a semigroup: `γ`, the even gaps, and the `γ` odd members
/// below `2g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvenGapProfile {
    pub gamma: u32,
    /// Even gaps in increasing order.
    pub even_gaps: Vec<u32>,
    /// Odd members of `S ∩ [1, 2g - 1]`, largest first: `odd_nongaps[i - 1]`
    /// is `o_i`.
    pub odd_nongaps: Vec<u32>,
    /// The smallest odd nongap `o_γ`; `None` when `γ = 0`.
    pub smallest_odd_nongap: Option<u32>,
}

impl Semigroup {
    /// The semigroup `ℕ₀` (genus 0).
    pub fn naturals() -> Self {
        Self::from_predicate(0, |_| true)
    }

    /// Builds the set whose members below `conductor` are given by `member`
    /// and which contains every integer `>= conductor`. No closure check.
    pub(crate) fn from_predicate(conductor: u32, member: impl Fn(u32) -> bool) -> Self {
        let frobenius = (0..conductor).rev().find(|&x| !member(x)).map_or(-1, |f| f as i32);
        let len = (frobenius + 3) as usize;
        let mut bits = vec![0u64; len.div_ceil(64)];
        let mut genus = 0;
        for x in 0..len as u32 {
            let inside = x as i32 > frobenius || member(x);
            if inside {
                bits[(x / 64) as usize] |= 1 << (x % 64);
            } else {
                genus += 1;
            }
        }
        let multiplicity = if frobenius < 0 {
            1
        } else {
            (1..).find(|&x| x as i32 > frobenius || member(x)).unwrap()
        };
        Semigroup { frobenius, bits, genus, multiplicity }
    }

    /// The semigroup generated by `gens`.
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let gcd = gens.iter().fold(0u32, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(Error::GcdNotOne { gcd });
        }
        let smallest = *gens.iter().min().unwrap() as usize;
        // Once `smallest` consecutive integers are members, every larger one is.
        let mut member: Vec<bool> = Vec::new();
        let mut run = 0;
        let mut x = 0usize;
        while run < smallest {
            let inside = x == 0 || gens.iter().any(|&g| g as usize <= x && member[x - g as usize]);
            member.push(inside);
            run = if inside { run + 1 } else { 0 };
            x += 1;
        }
        let conductor = (x - smallest) as u32;
        Ok(Self::from_predicate(conductor, |y| member[y as usize]))
    }

    /// The semigroup `ℕ₀ \ gaps`, provided that complement is closed under
    /// addition.
    pub fn from_gap_set<I: IntoIterator<Item = u32>>(gaps: I) -> Result<Self> {
        let mut gaps: Vec<u32> = gaps.into_iter().collect();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(Error::ZeroGap);
        }
        let conductor = gaps.last().map_or(0, |&f| f + 1);
        let s = Self::from_predicate(conductor, |x| gaps.binary_search(&x).is_err());
        s.closure_witness().map_or(Ok(s), |(a, b)| Err(Error::NotASemigroup { a, b }))
    }

    /// A pair of positive members whose sum is a gap, if one exists.
    pub(crate) fn closure_witness(&self) -> Option<(u32, u32)> {
        let f = self.frobenius;
        if f < 0 {
            return None;
        }
        let f = f as u32;
        for a in (1..=f / 2).filter(|&a| self.contains(a)) {
            for b in (a..=f - a).filter(|&b| self.contains(b)) {
                if !self.contains(a + b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        if x as i64 > self.frobenius as i64 {
            return true;
        }
        self.bits[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Membership for arbitrary integers; negatives are never members.
    pub fn contains_signed(&self, x: i64) -> bool {
        x >= 0 && (x > self.frobenius as i64 || self.contains(x as u32))
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Largest gap, or `-1` for `ℕ₀`.
    pub fn frobenius(&self) -> i32 {
        self.frobenius
    }

    /// `F + 1`: the smallest integer from which on everything is a member.
    pub fn conductor(&self) -> u32 {
        (self.frobenius + 1) as u32
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn gaps(&self) -> Vec<u32> {
        (1..self.conductor()).filter(|&x| !self.contains(x)).collect()
    }

    /// Members in `[0, bound]`.
    pub fn members_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    pub fn even_gap_profile(&self) -> EvenGapProfile {
        let even_gaps: Vec<u32> = self.gaps().into_iter().filter(|x| x % 2 == 0).collect();
        let gamma = even_gaps.len() as u32;
        let top = (2 * self.genus).saturating_sub(1);
        let odd_nongaps: Vec<u32> = (1..=top).rev().step_by(2).filter(|&x| self.contains(x)).collect();
        debug_assert_eq!(odd_nongaps.len(), gamma as usize);
        let smallest_odd_nongap = odd_nongaps.last().copied();
        EvenGapProfile { gamma, even_gaps, odd_nongaps, smallest_odd_nongap }
    }

    /// Number of even gaps.
    pub fn gamma(&self) -> u32 {
        (2..self.conductor()).step_by(2).filter(|&x| !self.contains(x)).count() as u32
    }

    /// The unique minimal generating set, in increasing order.
    pub fn minimal_generators(&self) -> Vec<u32> {
        let m = self.multiplicity;
        let limit = self.conductor().max(1) + m - 1;
        (1..=limit)
            .filter(|&x| self.contains(x))
            .filter(|&x| (1..=x / 2).all(|a| !(self.contains(a) && self.contains(x - a))))
            .collect()
    }

    /// `x ∈ S` exactly when `F - x ∉ S`, for every `x ∈ [0, F]`.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        (0..=f).all(|x| self.contains(x as u32) != self.contains((f - x) as u32))
    }

    /// The semigroup with one more gap, `S \ {x}`, when `x` is a minimal
    /// generator.
    pub fn remove_generator(&self, x: u32) -> Result<Self> {
        if !self.contains(x) || x == 0 {
            return Err(Error::NotAGenerator(x));
        }
        let conductor = self.conductor().max(x + 1);
        let child = Self::from_predicate(conductor, |y| y != x && self.contains(y));
        child.closure_witness().map_or(Ok(child), |(a, b)| Err(Error::NotASemigroup { a, b }))
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators().iter().map(u32::to_string).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup{} gaps={:?}", self, self.gaps())
    }
}
