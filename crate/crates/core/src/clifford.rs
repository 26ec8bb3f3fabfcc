//! Blade basis of the spacetime algebra with metric `diag(1, -1, -1, -1)`.
//!
//! A blade is stored as a 4-bit mask: bit `μ` set means the generator `e_μ`
//! is present. The canonical form of a blade lists its generators in
//! ascending order, so mask `0b0110` is `e₁e₂ = e₁₂`. Mask `0` is the unit `x`
//! and mask `0b1111` is the volume element `e = e₀e₁e₂e₃`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};
use std::sync::LazyLock;

use num_complex::Complex64;

/// Number of blades.
pub const BLADES: usize = 16;

/// Diagonal of the metric tensor `g_{μν}`.
pub const METRIC: [i8; 4] = [1, -1, -1, -1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

impl Blade {
    pub const X: Blade = Blade(0);
    pub const E: Blade = Blade(0b1111);
    pub const E12: Blade = Blade(0b0110);
    pub const E23: Blade = Blade(0b1100);
    pub const E123: Blade = Blade(0b1110);

    pub fn from_mask(mask: u8) -> Option<Blade> {
        (mask < BLADES as u8).then_some(Blade(mask))
    }

    /// The generator `e_μ`.
    pub fn generator(mu: usize) -> Blade {
        assert!(mu < 4, "direction {mu} out of range");
        Blade(1 << mu)
    }

    /// Blade with the given generator indices, which must be strictly ascending.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i > 3) {
            return None;
        }
        Some(Blade(indices.iter().fold(0, |m, &i| m | (1 << i))))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |&mu| self.0 & (1 << mu) != 0)
    }

    pub fn contains(self, mu: usize) -> bool {
        self.0 & (1 << mu) != 0
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..BLADES as u8).map(Blade)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "x"),
            0b1111 => write!(f, "e"),
            _ => {
                write!(f, "e")?;
                for mu in self.indices() {
                    write!(f, "{mu}")?;
                }
                Ok(())
            }
        }
    }
}

/// A blade with a sign, the outcome of multiplying two blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedBlade {
    pub sign: i8,
    pub blade: Blade,
}

impl SignedBlade {
    pub fn new(sign: i8, blade: Blade) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Self { sign, blade }
    }
}

/// Product of two blades computed from the masks: the result is the
/// symmetric difference, the sign counts the transpositions needed to bring
/// the concatenated generators into ascending order and picks up `g_{μμ}`
/// for every generator present in both factors.
fn bitmask_product(a: Blade, b: Blade) -> SignedBlade {
    let mut swaps = 0u32;
    for mu in a.indices() {
        // generators of `b` that the `e_μ` from `a` must jump over
        swaps += (b.0 & ((1u8 << mu) - 1)).count_ones();
    }
    let mut sign: i8 = if swaps.is_multiple_of(2) { 1 } else { -1 };
    for mu in 0..4 {
        if a.contains(mu) && b.contains(mu) {
            sign *= METRIC[mu];
        }
    }
    SignedBlade::new(sign, Blade(a.0 ^ b.0))
}

/// Reference product that manipulates the generator string directly:
/// bubble-sort the concatenation of both factors, flipping the sign on each
/// transposition of distinct generators, and contract adjacent equal
/// generators `e_μ e_μ = g_{μμ} x` as soon as they meet.
pub fn generator_string_product(a: Blade, b: Blade) -> SignedBlade {
    let mut word: Vec<usize> = a.indices().chain(b.indices()).collect();
    let mut sign: i8 = 1;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] == word[i + 1] {
                sign *= METRIC[word[i]];
                word.drain(i..i + 2);
                changed = true;
            } else if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
                i += 1;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    SignedBlade::new(sign, Blade::from_indices(&word).expect("sorted word"))
}

struct ProductTable([[SignedBlade; BLADES]; BLADES]);

static TABLE: LazyLock<ProductTable> = LazyLock::new(|| {
    let table = std::array::from_fn(|i| {
        std::array::from_fn(|j| bitmask_product(Blade(i as u8), Blade(j as u8)))
    });
    for a in Blade::all() {
        for b in Blade::all() {
            assert_eq!(
                table[a.index()][b.index()],
                generator_string_product(a, b),
                "blade product table disagrees with the generator-string product for {a}·{b}"
            );
        }
    }
    ProductTable(table)
});

/// Clifford product of two basis blades.
pub fn blade_product(a: Blade, b: Blade) -> SignedBlade {
    TABLE.0[a.index()][b.index()]
}

pub fn grade(b: Blade) -> usize {
    b.grade()
}

/// An element of the 16-dimensional complex Clifford algebra at a single
/// site, indexed by blade mask.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multivector(pub [Complex64; BLADES]);

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector([Complex64::new(0.0, 0.0); BLADES])
    }

    pub fn blade(b: Blade) -> Self {
        Self::scaled_blade(Complex64::new(1.0, 0.0), b)
    }

    pub fn scaled_blade(c: Complex64, b: Blade) -> Self {
        let mut m = Self::zero();
        m.0[b.index()] = c;
        m
    }

    pub fn unit() -> Self {
        Self::blade(Blade::X)
    }

    pub fn from_slice(coeffs: &[Complex64]) -> Self {
        let mut m = Self::zero();
        m.0.copy_from_slice(coeffs);
        m
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Multivector(self.0.map(|v| v * c))
    }

    pub fn conj(&self) -> Self {
        Multivector(self.0.map(|v| v.conj()))
    }

    pub fn grade_part(&self, r: usize) -> Self {
        let mut m = *self;
        for b in Blade::all().filter(|b| b.grade() != r) {
            m.0[b.index()] = Complex64::new(0.0, 0.0);
        }
        m
    }

    pub fn sup_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Clifford product `self · rhs`.
    pub fn mul(&self, rhs: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        mul_into(&self.0, &rhs.0, &mut out.0);
        out
    }
}

/// Accumulates the Clifford product `a · b` into `out`.
pub(crate) fn mul_into(a: &[Complex64], b: &[Complex64], out: &mut [Complex64]) {
    let table = &TABLE.0;
    for (i, &ai) in a.iter().enumerate() {
        if ai.re == 0.0 && ai.im == 0.0 {
            continue;
        }
        let row = &table[i];
        for (j, &bj) in b.iter().enumerate() {
            let p = row[j];
            let v = ai * bj;
            if p.sign > 0 {
                out[p.blade.index()] += v;
            } else {
                out[p.blade.index()] -= v;
            }
        }
    }
}

impl Index<Blade> for Multivector {
    type Output = Complex64;
    fn index(&self, b: Blade) -> &Complex64 {
        &self.0[b.index()]
    }
}

impl IndexMut<Blade> for Multivector {
    fn index_mut(&mut self, b: Blade) -> &mut Complex64 {
        &mut self.0[b.index()]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector(self.0.map(|v| -v))
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        Multivector::mul(&self, &rhs)
    }
}

impl Mul<Multivector> for Complex64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(mu: usize) -> Blade {
        Blade::generator(mu)
    }

    #[test]
    fn generator_products() {
        assert_eq!(blade_product(e(0), e(0)), SignedBlade::new(1, Blade::X));
        assert_eq!(blade_product(e(1), e(2)), SignedBlade::new(1, Blade::E12));
        assert_eq!(blade_product(e(2), e(1)), SignedBlade::new(-1, Blade::E12));
        assert_eq!(blade_product(e(1), e(1)), SignedBlade::new(-1, Blade::X));
        assert_eq!(blade_product(Blade::E, Blade::E), SignedBlade::new(-1, Blade::X));
    }

    #[test]
    fn grades() {
        assert_eq!(grade(Blade::X), 0);
        assert_eq!(grade(Blade::E), 4);
        assert_eq!(grade(Blade::from_indices(&[1, 3]).unwrap()), 2);
    }

    #[test]
    fn table_matches_string_oracle() {
        for a in Blade::all() {
            for b in Blade::all() {
                assert_eq!(blade_product(a, b), generator_string_product(a, b));
            }
        }
    }

    #[test]
    fn volume_is_product_of_generators() {
        let mut acc = SignedBlade::new(1, Blade::X);
        for mu in 0..4 {
            let p = blade_product(acc.blade, e(mu));
            acc = SignedBlade::new(acc.sign * p.sign, p.blade);
        }
        assert_eq!(acc, SignedBlade::new(1, Blade::E));
    }

    #[test]
    fn unit_is_neutral_and_products_associate() {
        for a in Blade::all() {
            assert_eq!(blade_product(Blade::X, a), SignedBlade::new(1, a));
            assert_eq!(blade_product(a, Blade::X), SignedBlade::new(1, a));
            for b in Blade::all() {
                for c in Blade::all() {
                    let ab = blade_product(a, b);
                    let l = blade_product(ab.blade, c);
                    let bc = blade_product(b, c);
                    let r = blade_product(a, bc.blade);
                    assert_eq!(ab.sign * l.sign, bc.sign * r.sign);
                    assert_eq!(l.blade, r.blade);
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(Blade::X.to_string(), "x");
        assert_eq!(Blade::E.to_string(), "e");
        assert_eq!(Blade::from_indices(&[0, 2, 3]).unwrap().to_string(), "e023");
        assert!(Blade::from_indices(&[2, 1]).is_none());
    }
}
