//! Finite periodic 4-D lattice: extents, multi-indices and the shift `τ_μ`.

use std::fmt;

use crate::error::{Error, Result};

/// Number of lattice directions.
pub const DIM: usize = 4;

/// Extents `(N₀, N₁, N₂, N₃)` of a periodic lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeShape {
    extents: [usize; DIM],
}

impl LatticeShape {
    pub fn new(extents: [usize; DIM]) -> Result<Self> {
        if extents.iter().any(|&n| n < 2) {
            return Err(Error::InvalidShape(extents.to_vec()));
        }
        extents
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .and_then(|total| total.checked_mul(16))
            .ok_or_else(|| Error::InvalidShape(extents.to_vec()))?;
        Ok(Self { extents })
    }

    /// Lattice with extents that may be 1 in some directions.
    ///
    /// A length-1 direction is a degenerate periodic direction where
    /// `τ_μ` is the identity; useful for small worked examples.
    pub fn new_allow_trivial(extents: [usize; DIM]) -> Result<Self> {
        if extents.contains(&0) {
            return Err(Error::InvalidShape(extents.to_vec()));
        }
        extents
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .and_then(|total| total.checked_mul(16))
            .ok_or_else(|| Error::InvalidShape(extents.to_vec()))?;
        Ok(Self { extents })
    }

    pub fn extents(&self) -> [usize; DIM] {
        self.extents
    }

    pub fn extent(&self, mu: usize) -> usize {
        self.extents[mu]
    }

    pub fn site_count(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn contains(&self, site: SiteIndex) -> bool {
        site.0.iter().zip(&self.extents).all(|(&k, &n)| k < n)
    }

    pub fn site(&self, k: [usize; DIM]) -> Result<SiteIndex> {
        let site = SiteIndex(k);
        if self.contains(site) {
            Ok(site)
        } else {
            Err(Error::SiteOutOfRange { site: k, shape: *self })
        }
    }

    /// Lexicographic position of a site, `k₀` outermost and `k₃` innermost.
    pub fn linear_index(&self, site: SiteIndex) -> usize {
        site.0
            .iter()
            .zip(&self.extents)
            .fold(0, |acc, (&k, &n)| acc * n + k)
    }

    pub fn site_at(&self, mut index: usize) -> SiteIndex {
        let mut k = [0; DIM];
        for mu in (0..DIM).rev() {
            k[mu] = index % self.extents[mu];
            index /= self.extents[mu];
        }
        SiteIndex(k)
    }

    /// Linear stride of direction `mu` in the lexicographic order.
    pub fn stride(&self, mu: usize) -> usize {
        self.extents[mu + 1..].iter().product()
    }

    /// `τ_μ k`: `k_μ` incremented with periodic wrap.
    pub fn shift(&self, site: SiteIndex, mu: usize) -> Result<SiteIndex> {
        if mu >= DIM {
            return Err(Error::InvalidDirection(mu));
        }
        if !self.contains(site) {
            return Err(Error::SiteOutOfRange { site: site.0, shape: *self });
        }
        Ok(self.shift_unchecked(site, mu))
    }

    pub(crate) fn shift_unchecked(&self, site: SiteIndex, mu: usize) -> SiteIndex {
        let mut k = site.0;
        k[mu] = (k[mu] + 1) % self.extents[mu];
        SiteIndex(k)
    }

    /// Table of `linear_index(τ_μ k)` for every linear index, one per direction.
    pub(crate) fn shift_table(&self) -> [Vec<usize>; DIM] {
        std::array::from_fn(|mu| {
            (0..self.site_count())
                .map(|i| self.linear_index(self.shift_unchecked(self.site_at(i), mu)))
                .collect()
        })
    }

    /// Every site exactly once in lexicographic order.
    pub fn sites(&self) -> Sites {
        Sites { shape: *self, next: 0 }
    }
}

impl fmt::Display for LatticeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.extents;
        write!(f, "{a}x{b}x{c}x{d}")
    }
}

impl std::str::FromStr for LatticeShape {
    type Err = Error;

    /// Parses `N0xN1xN2xN3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownTag { what: "shape", tag: s.to_string() };
        let parts: Vec<usize> = s
            .split('x')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let extents: [usize; DIM] = parts.try_into().map_err(|_| bad())?;
        LatticeShape::new(extents)
    }
}

/// Multi-index `k = (k₀, k₁, k₂, k₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SiteIndex(pub [usize; DIM]);

impl SiteIndex {
    pub const ORIGIN: SiteIndex = SiteIndex([0; DIM]);

    pub fn coords(&self) -> [usize; DIM] {
        self.0
    }
}

pub struct Sites {
    shape: LatticeShape,
    next: usize,
}

impl Iterator for Sites {
    type Item = SiteIndex;

    fn next(&mut self) -> Option<SiteIndex> {
        if self.next >= self.shape.site_count() {
            return None;
        }
        let site = self.shape.site_at(self.next);
        self.next += 1;
        Some(site)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.shape.site_count() - self.next;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Sites {}
