//! Discrete inhomogeneous forms: 16 complex coefficients per lattice site.
//!
//! Storage is site-major and blade-minor. The coefficient of blade `b` at the
//! site with lexicographic position `i` lives at `coeffs[16 * i + b.mask()]`.

use num_complex::Complex64;
use rand::Rng;

use crate::clifford::{self, Blade, Multivector, BLADES};
use crate::error::{Error, Result};
use crate::lattice::{LatticeShape, SiteIndex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct FormField {
    shape: LatticeShape,
    coeffs: Vec<Complex64>,
}

impl FormField {
    pub fn zero(shape: LatticeShape) -> Self {
        Self { shape, coeffs: vec![ZERO; BLADES * shape.site_count()] }
    }

    /// Form whose value at every site is `value`.
    pub fn constant(shape: LatticeShape, value: &Multivector) -> Self {
        let mut coeffs = Vec::with_capacity(BLADES * shape.site_count());
        for _ in 0..shape.site_count() {
            coeffs.extend_from_slice(&value.0);
        }
        Self { shape, coeffs }
    }

    /// The unit 0-form `x`.
    pub fn unit_x(shape: LatticeShape) -> Self {
        Self::constant(shape, &Multivector::blade(Blade::X))
    }

    /// The constant 1-form `e_μ`.
    pub fn basis_e(shape: LatticeShape, mu: usize) -> Result<Self> {
        if mu >= 4 {
            return Err(Error::InvalidDirection(mu));
        }
        Ok(Self::constant(shape, &Multivector::blade(Blade::generator(mu))))
    }

    /// The unit 4-form `e`.
    pub fn unit_e(shape: LatticeShape) -> Self {
        Self::constant(shape, &Multivector::blade(Blade::E))
    }

    pub fn from_coeffs(shape: LatticeShape, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != BLADES * shape.site_count() {
            return Err(Error::format(
                "coeffs",
                format!("expected {} coefficients, got {}", BLADES * shape.site_count(), coeffs.len()),
            ));
        }
        Ok(Self { shape, coeffs })
    }

    /// Form built site by site from a closure.
    pub fn from_fn(shape: LatticeShape, mut f: impl FnMut(SiteIndex, Blade) -> Complex64) -> Self {
        let mut coeffs = Vec::with_capacity(BLADES * shape.site_count());
        for site in shape.sites() {
            coeffs.extend(Blade::all().map(|b| f(site, b)));
        }
        Self { shape, coeffs }
    }

    /// I.i.d. coefficients with real and imaginary parts uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(shape: LatticeShape, rng: &mut R) -> Self {
        Self::from_fn(shape, |_, _| {
            Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
        })
    }

    /// Random form supported on the even blades only.
    pub fn random_even<R: Rng + ?Sized>(shape: LatticeShape, rng: &mut R) -> Self {
        Self::random(shape, rng).even_part()
    }

    pub fn shape(&self) -> LatticeShape {
        self.shape
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, site: SiteIndex, blade: Blade) -> Complex64 {
        self.coeffs[BLADES * self.shape.linear_index(site) + blade.index()]
    }

    pub fn set(&mut self, site: SiteIndex, blade: Blade, value: Complex64) {
        let i = BLADES * self.shape.linear_index(site) + blade.index();
        self.coeffs[i] = value;
    }

    /// The 16 coefficients at the site with lexicographic position `index`.
    pub fn site_slice(&self, index: usize) -> &[Complex64] {
        &self.coeffs[BLADES * index..BLADES * (index + 1)]
    }

    pub fn at(&self, site: SiteIndex) -> Multivector {
        Multivector::from_slice(self.site_slice(self.shape.linear_index(site)))
    }

    /// Whether every coefficient is site-independent.
    pub fn is_constant(&self) -> bool {
        let first = self.site_slice(0);
        self.coeffs.chunks_exact(BLADES).all(|c| c == first)
    }

    fn check_shape(&self, other: &FormField) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch { left: self.shape, right: other.shape });
        }
        Ok(())
    }

    fn zip_with(&self, other: &FormField, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<FormField> {
        self.check_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect();
        Ok(FormField { shape: self.shape, coeffs })
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> FormField {
        FormField { shape: self.shape, coeffs: self.coeffs.iter().map(|&c| f(c)).collect() }
    }

    pub fn add(&self, other: &FormField) -> Result<FormField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FormField) -> Result<FormField> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> FormField {
        self.map(|v| c * v)
    }

    pub fn scale_re(&self, c: f64) -> FormField {
        self.map(|v| v * c)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &FormField) {
        debug_assert_eq!(self.shape, other.shape);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Site-wise Clifford product `self · other`.
    pub fn clifford_mul(&self, other: &FormField) -> Result<FormField> {
        self.check_shape(other)?;
        let mut out = FormField::zero(self.shape);
        for ((a, b), o) in self
            .coeffs
            .chunks_exact(BLADES)
            .zip(other.coeffs.chunks_exact(BLADES))
            .zip(out.coeffs.chunks_exact_mut(BLADES))
        {
            clifford::mul_into(a, b, o);
        }
        Ok(out)
    }

    /// `self · c` with a site-independent right factor.
    pub fn mul_const_right(&self, c: &Multivector) -> FormField {
        let mut out = FormField::zero(self.shape);
        for (a, o) in self.coeffs.chunks_exact(BLADES).zip(out.coeffs.chunks_exact_mut(BLADES)) {
            clifford::mul_into(a, &c.0, o);
        }
        out
    }

    /// `c · self` with a site-independent left factor.
    pub fn mul_const_left(&self, c: &Multivector) -> FormField {
        let mut out = FormField::zero(self.shape);
        for (b, o) in self.coeffs.chunks_exact(BLADES).zip(out.coeffs.chunks_exact_mut(BLADES)) {
            clifford::mul_into(&c.0, b, o);
        }
        out
    }

    fn retain_blades(&self, keep: impl Fn(Blade) -> bool) -> FormField {
        let mask: Vec<bool> = Blade::all().map(keep).collect();
        let mut out = self.clone();
        for chunk in out.coeffs.chunks_exact_mut(BLADES) {
            for (c, &k) in chunk.iter_mut().zip(&mask) {
                if !k {
                    *c = ZERO;
                }
            }
        }
        out
    }

    /// The grade-`r` part.
    pub fn grade_project(&self, r: usize) -> FormField {
        self.retain_blades(|b| b.grade() == r)
    }

    pub fn even_part(&self) -> FormField {
        self.retain_blades(Blade::is_even)
    }

    pub fn odd_part(&self) -> FormField {
        self.retain_blades(|b| !b.is_even())
    }

    pub fn conjugate(&self) -> FormField {
        self.map(|c| c.conj())
    }

    pub fn real_part(&self) -> FormField {
        self.map(|c| Complex64::new(c.re, 0.0))
    }

    pub fn imag_part(&self) -> FormField {
        self.map(|c| Complex64::new(c.im, 0.0))
    }

    /// Largest coefficient modulus.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// `sup_norm(self - other)`.
    pub fn max_abs_diff(&self, other: &FormField) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest modulus among coefficients on odd blades.
    pub fn odd_norm(&self) -> f64 {
        self.odd_part().sup_norm()
    }

    pub fn is_even(&self, tol: f64) -> bool {
        self.odd_norm() <= tol
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shape() -> LatticeShape {
        LatticeShape::new([2, 3, 2, 2]).unwrap()
    }

    #[test]
    fn unit_forms() {
        let s = shape();
        let mut r = rng::seeded(3);
        let omega = FormField::random(s, &mut r);
        let x = FormField::unit_x(s);
        assert_eq!(x.clifford_mul(&omega).unwrap(), omega);
        assert_eq!(omega.clifford_mul(&x).unwrap(), omega);

        let e = FormField::unit_e(s);
        assert_eq!(e.clifford_mul(&e).unwrap(), x.scale(c(-1.0, 0.0)));

        let e0 = FormField::basis_e(s, 0).unwrap();
        assert_eq!(e0.clifford_mul(&e0).unwrap(), x);
        assert!(FormField::basis_e(s, 4).is_err());
    }

    #[test]
    fn linear_structure() {
        let s = shape();
        let mut r = rng::seeded(4);
        let omega = FormField::random(s, &mut r);
        assert_eq!(omega.add(&FormField::zero(s)).unwrap(), omega);
        assert_eq!(omega.scale(c(0.0, 0.0)), FormField::zero(s));
        let ii = omega.scale(c(0.0, 1.0)).scale(c(0.0, 1.0));
        assert!(ii.max_abs_diff(&omega.scale(c(-1.0, 0.0))).unwrap() == 0.0);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = FormField::zero(shape());
        let b = FormField::zero(LatticeShape::new([2, 2, 2, 2]).unwrap());
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch { .. })));
        assert!(a.clifford_mul(&b).is_err());
        assert!(a.max_abs_diff(&b).is_err());
    }

    /// The worked product of a 1-form and a 2-form at one site.
    #[test]
    fn one_form_times_two_form() {
        let s = LatticeShape::new_allow_trivial([1, 1, 1, 1]).unwrap();
        let mut r = rng::seeded(11);
        let full = FormField::random(s, &mut r);
        let w1 = full.grade_project(1);
        let w2 = FormField::random(s, &mut r).grade_project(2);
        let o = SiteIndex::ORIGIN;
        let v = |mu: usize| w1.get(o, Blade::generator(mu));
        let b = |i: usize, j: usize| w2.get(o, Blade::from_indices(&[i, j]).unwrap());
        let prod = w1.clifford_mul(&w2).unwrap();
        let p = |idx: &[usize]| prod.get(o, Blade::from_indices(idx).unwrap());

        let close = |a: Complex64, b: Complex64| assert!((a - b).norm() < 1e-14, "{a} vs {b}");
        close(p(&[0]), v(1) * b(0, 1) + v(2) * b(0, 2) + v(3) * b(0, 3));
        close(p(&[1]), v(0) * b(0, 1) + v(2) * b(1, 2) + v(3) * b(1, 3));
        close(p(&[2]), v(0) * b(0, 2) - v(1) * b(1, 2) + v(3) * b(2, 3));
        close(p(&[3]), v(0) * b(0, 3) - v(1) * b(1, 3) - v(2) * b(2, 3));
        close(p(&[0, 1, 2]), v(0) * b(1, 2) - v(1) * b(0, 2) + v(2) * b(0, 1));
        close(p(&[0, 1, 3]), v(0) * b(1, 3) - v(1) * b(0, 3) + v(3) * b(0, 1));
        close(p(&[0, 2, 3]), v(0) * b(2, 3) - v(2) * b(0, 3) + v(3) * b(0, 2));
        close(p(&[1, 2, 3]), v(1) * b(2, 3) - v(2) * b(1, 3) + v(3) * b(1, 2));

        assert!(!prod.is_even(0.0));
        assert_eq!(prod.even_part().sup_norm(), 0.0);
        let g1 = prod.grade_project(1);
        let g3 = prod.grade_project(3);
        assert_eq!(g1.add(&g3).unwrap(), prod);
    }

    #[test]
    fn grade_projections() {
        let s = shape();
        let mut r = rng::seeded(5);
        let omega = FormField::random(s, &mut r);
        let e = FormField::unit_e(s);
        assert_eq!(e.grade_project(4), e);

        let mut sum = FormField::zero(s);
        for k in 0..=4 {
            let p = omega.grade_project(k);
            assert_eq!(p.grade_project(k), p);
            for j in (0..=4).filter(|&j| j != k) {
                assert_eq!(p.grade_project(j).sup_norm(), 0.0);
            }
            sum = sum.add(&p).unwrap();
        }
        assert_eq!(sum, omega);
        assert_eq!(omega.even_part().add(&omega.odd_part()).unwrap(), omega);
    }

    #[test]
    fn conjugation_and_parts() {
        let s = shape();
        let mut r = rng::seeded(6);
        let omega = FormField::random(s, &mut r);
        assert_eq!(omega.conjugate().conjugate(), omega);
        let half_sum = omega.add(&omega.conjugate()).unwrap().scale_re(0.5);
        assert!(omega.real_part().max_abs_diff(&half_sum).unwrap() < 1e-15);
        assert_eq!(FormField::zero(s).sup_norm(), 0.0);
        assert!(omega.real_part().is_real(0.0));
        let rebuilt = omega.real_part().add(&omega.imag_part().scale(c(0.0, 1.0))).unwrap();
        assert_eq!(rebuilt, omega);
    }

    #[test]
    fn constant_right_and_left_multiplication() {
        let s = shape();
        let mut r = rng::seeded(7);
        let omega = FormField::random(s, &mut r);
        let p = FormField::random(LatticeShape::new_allow_trivial([1, 1, 1, 1]).unwrap(), &mut r)
            .at(SiteIndex::ORIGIN);
        let pf = FormField::constant(s, &p);
        assert!(pf.is_constant());
        assert_eq!(omega.mul_const_right(&p), omega.clifford_mul(&pf).unwrap());
        assert_eq!(omega.mul_const_left(&p), pf.clifford_mul(&omega).unwrap());
    }
}
