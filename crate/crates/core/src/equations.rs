//! Residuals of the discrete Dirac–Kähler, Hestenes, Joyce and volume-form
//! equations, the constant projectors, and the decompositions, mass-sign maps
//! and real-form constructions built from them.
//!
//! With `D = Σ e_μ Δ_μ` the four equations read
//!
//! | kind           | equation             |
//! |----------------|----------------------|
//! | `DiracKahler`  | `i D Ω = m Ω`        |
//! | `Hestenes`     | `−(D Ω) e₁e₂ = m Ω e₀` |
//! | `Joyce`        | `i D Ω = m Ω e₀`      |
//! | `Volume`       | `−D Ω = m Ω e`        |
//!
//! and [`residual`] returns left-hand side minus right-hand side.

use std::fmt;

use num_complex::Complex64;

use crate::calculus::{componentwise, dirac};
use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::lattice::LatticeShape;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const HALF: Complex64 = Complex64::new(0.5, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquationKind {
    DiracKahler,
    Hestenes,
    Joyce,
    Volume,
}

impl EquationKind {
    pub const ALL: [EquationKind; 4] =
        [EquationKind::DiracKahler, EquationKind::Hestenes, EquationKind::Joyce, EquationKind::Volume];

    pub fn tag(self) -> &'static str {
        match self {
            EquationKind::DiracKahler => "dk",
            EquationKind::Hestenes => "hestenes",
            EquationKind::Joyce => "joyce",
            EquationKind::Volume => "volume",
        }
    }

    /// Scalar in front of `D` on the left-hand side.
    pub fn prefactor(self) -> Complex64 {
        match self {
            EquationKind::DiracKahler | EquationKind::Joyce => I,
            EquationKind::Hestenes | EquationKind::Volume => -ONE,
        }
    }

    /// Constant right factor applied after `D` (only the Hestenes equation has one).
    pub fn left_carrier(self) -> Blade {
        match self {
            EquationKind::Hestenes => Blade::E12,
            _ => Blade::X,
        }
    }

    /// Constant right factor multiplying `m Ω`.
    pub fn mass_carrier(self) -> Blade {
        match self {
            EquationKind::DiracKahler => Blade::X,
            EquationKind::Hestenes | EquationKind::Joyce => Blade::generator(0),
            EquationKind::Volume => Blade::E,
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for EquationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dk" | "dirac_kahler" => Ok(EquationKind::DiracKahler),
            "hestenes" => Ok(EquationKind::Hestenes),
            "joyce" => Ok(EquationKind::Joyce),
            "volume" => Ok(EquationKind::Volume),
            _ => Err(Error::UnknownTag { what: "equation", tag: s.to_string() }),
        }
    }
}

/// The mass parameter `m`; complex in general.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassParameter(pub Complex64);

impl MassParameter {
    pub fn real(m: f64) -> Self {
        MassParameter(Complex64::new(m, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl std::ops::Neg for MassParameter {
    type Output = MassParameter;
    fn neg(self) -> MassParameter {
        MassParameter(-self.0)
    }
}

impl From<f64> for MassParameter {
    fn from(m: f64) -> Self {
        MassParameter::real(m)
    }
}

impl From<Complex64> for MassParameter {
    fn from(m: Complex64) -> Self {
        MassParameter(m)
    }
}

/// `i D Ω − m Ω`, `−(D Ω) e₁e₂ − m Ω e₀`, `i D Ω − m Ω e₀` or `−D Ω − m Ω e`.
pub fn residual(kind: EquationKind, omega: &FormField, m: MassParameter) -> FormField {
    let lhs = dirac(omega)
        .mul_const_right(&Multivector::blade(kind.left_carrier()))
        .scale(kind.prefactor());
    let rhs = omega.mul_const_right(&Multivector::scaled_blade(m.0, kind.mass_carrier()));
    lhs.sub(&rhs).expect("same shape")
}

/// Result of evaluating one of the explicit 8-line difference systems.
#[derive(Clone, Debug)]
pub struct ComponentResidual {
    /// Line residuals (left minus right), stored at the even blade whose
    /// coefficient appears on the right of that line.
    pub residual: FormField,
    /// Sup norm of the odd part of the input, which the systems do not read.
    pub ignored_odd_norm: f64,
}

/// The Hestenes equation written as eight difference equations, one per even
/// component of `Ω`.
///
/// Line `b` is the `b` coefficient of `−(D Ω) e₁e₂e₀ − m Ω`, so for even `Ω`
/// the packed residual equals `residual(Hestenes, Ω, m) · e₀`.
pub fn component_residual_hestenes(omega: &FormField, m: MassParameter) -> ComponentResidual {
    let m = m.0;
    let e4: &[usize] = &[0, 1, 2, 3];
    let residual = componentwise(omega, |w, put| {
        put(&[], w.d(0, &[1, 2]) - w.d(1, &[0, 2]) + w.d(2, &[0, 1]) + w.d(3, e4) - m * w.v(&[]));
        put(&[0, 1], w.d(2, &[]) + w.d(0, &[0, 2]) - w.d(1, &[1, 2]) + w.d(3, &[2, 3]) - m * w.v(&[0, 1]));
        put(&[0, 2], -w.d(1, &[]) - w.d(0, &[0, 1]) - w.d(2, &[1, 2]) - w.d(3, &[1, 3]) - m * w.v(&[0, 2]));
        put(&[0, 3], -w.d(1, &[2, 3]) + w.d(2, &[1, 3]) - w.d(3, &[1, 2]) - w.d(0, e4) - m * w.v(&[0, 3]));
        put(&[1, 2], -w.d(0, &[]) - w.d(1, &[0, 1]) - w.d(2, &[0, 2]) - w.d(3, &[0, 3]) - m * w.v(&[1, 2]));
        put(&[1, 3], -w.d(0, &[2, 3]) + w.d(2, &[0, 3]) - w.d(3, &[0, 2]) - w.d(1, e4) - m * w.v(&[1, 3]));
        put(&[2, 3], w.d(0, &[1, 3]) - w.d(1, &[0, 3]) + w.d(3, &[0, 1]) - w.d(2, e4) - m * w.v(&[2, 3]));
        put(e4, w.d(3, &[]) + w.d(0, &[0, 3]) - w.d(1, &[1, 3]) - w.d(2, &[2, 3]) - m * w.v(e4));
    });
    ComponentResidual { residual, ignored_odd_norm: omega.odd_norm() }
}

/// The Joyce equation written as eight difference equations.
///
/// Line `b` is the coefficient of `i D Ω − m Ω e₀` at the odd blade `b e₀`
/// (mask `b ^ 1`), stored at `b`.
pub fn component_residual_joyce(omega: &FormField, m: MassParameter) -> ComponentResidual {
    let m = m.0;
    let e4: &[usize] = &[0, 1, 2, 3];
    let residual = componentwise(omega, |w, put| {
        put(&[], I * (w.d(0, &[]) + w.d(1, &[0, 1]) + w.d(2, &[0, 2]) + w.d(3, &[0, 3])) - m * w.v(&[]));
        put(&[0, 1], I * (w.d(1, &[]) + w.d(0, &[0, 1]) + w.d(2, &[1, 2]) + w.d(3, &[1, 3])) + m * w.v(&[0, 1]));
        put(&[0, 2], I * (w.d(2, &[]) + w.d(0, &[0, 2]) - w.d(1, &[1, 2]) + w.d(3, &[2, 3])) + m * w.v(&[0, 2]));
        put(&[0, 3], I * (w.d(3, &[]) + w.d(0, &[0, 3]) - w.d(1, &[1, 3]) - w.d(2, &[2, 3])) + m * w.v(&[0, 3]));
        put(&[1, 2], I * (w.d(0, &[1, 2]) - w.d(1, &[0, 2]) + w.d(2, &[0, 1]) + w.d(3, e4)) - m * w.v(&[1, 2]));
        put(&[1, 3], I * (w.d(0, &[1, 3]) - w.d(1, &[0, 3]) + w.d(3, &[0, 1]) - w.d(2, e4)) - m * w.v(&[1, 3]));
        put(&[2, 3], I * (w.d(0, &[2, 3]) - w.d(2, &[0, 3]) + w.d(3, &[0, 2]) + w.d(1, e4)) - m * w.v(&[2, 3]));
        put(e4, I * (w.d(1, &[2, 3]) - w.d(2, &[1, 3]) + w.d(3, &[1, 2]) + w.d(0, e4)) + m * w.v(e4));
    });
    ComponentResidual { residual, ignored_odd_norm: omega.odd_norm() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectorKind {
    P0Plus,
    P0Minus,
    P12Plus,
    P12Minus,
    PePlus,
    PeMinus,
}

impl ProjectorKind {
    pub const ALL: [ProjectorKind; 6] = [
        ProjectorKind::P0Plus,
        ProjectorKind::P0Minus,
        ProjectorKind::P12Plus,
        ProjectorKind::P12Minus,
        ProjectorKind::PePlus,
        ProjectorKind::PeMinus,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProjectorKind::P0Plus => "p0+",
            ProjectorKind::P0Minus => "p0-",
            ProjectorKind::P12Plus => "p12+",
            ProjectorKind::P12Minus => "p12-",
            ProjectorKind::PePlus => "pe+",
            ProjectorKind::PeMinus => "pe-",
        }
    }

    /// `+1` or `−1`.
    pub fn sign(self) -> i8 {
        match self {
            ProjectorKind::P0Plus | ProjectorKind::P12Plus | ProjectorKind::PePlus => 1,
            _ => -1,
        }
    }

    /// The element `u` with `P = ½(x ± u)` and `u² = x`: `e₀`, `i e₁e₂` or `i e`.
    pub fn generator(self) -> Multivector {
        match self {
            ProjectorKind::P0Plus | ProjectorKind::P0Minus => Multivector::blade(Blade::generator(0)),
            ProjectorKind::P12Plus | ProjectorKind::P12Minus => Multivector::scaled_blade(I, Blade::E12),
            ProjectorKind::PePlus | ProjectorKind::PeMinus => Multivector::scaled_blade(I, Blade::E),
        }
    }

    /// The projector with the opposite sign.
    pub fn opposite(self) -> ProjectorKind {
        match self {
            ProjectorKind::P0Plus => ProjectorKind::P0Minus,
            ProjectorKind::P0Minus => ProjectorKind::P0Plus,
            ProjectorKind::P12Plus => ProjectorKind::P12Minus,
            ProjectorKind::P12Minus => ProjectorKind::P12Plus,
            ProjectorKind::PePlus => ProjectorKind::PeMinus,
            ProjectorKind::PeMinus => ProjectorKind::PePlus,
        }
    }

    /// Value of the projector at a single site.
    pub fn value(self) -> Multivector {
        let sign = Complex64::new(self.sign() as f64, 0.0);
        (Multivector::unit() + self.generator().scale(sign)).scale(HALF)
    }
}

impl fmt::Display for ProjectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for ProjectorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProjectorKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::UnknownTag { what: "projector", tag: s.to_string() })
    }
}

/// The constant form `P` on every site.
pub fn projector(kind: ProjectorKind, shape: LatticeShape) -> FormField {
    FormField::constant(shape, &kind.value())
}

/// Product `P₁ P₂ ⋯` of projectors, evaluated at one site.
pub fn projector_product(chain: &[ProjectorKind]) -> Multivector {
    chain.iter().fold(Multivector::unit(), |acc, k| acc * k.value())
}

/// Families of projectors whose right products split every form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectorFamily {
    /// `Ω P₊₀ + Ω P₋₀`
    Zero,
    /// `Ω P₊₁₂ + Ω P₋₁₂`
    Twelve,
    /// `Ω P₋ₑ + Ω P₊ₑ`
    Volume,
    /// `Ω P±₀ P±₁₂`, four parts
    ZeroTwelve,
    /// `Ω P±ₑ P±₀ P±₁₂`, eight parts
    VolumeZeroTwelve,
}

impl ProjectorFamily {
    /// Projector chains of the parts, in the order the parts are returned.
    pub fn parts(self) -> Vec<Vec<ProjectorKind>> {
        use ProjectorKind::*;
        match self {
            ProjectorFamily::Zero => vec![vec![P0Plus], vec![P0Minus]],
            ProjectorFamily::Twelve => vec![vec![P12Plus], vec![P12Minus]],
            ProjectorFamily::Volume => vec![vec![PeMinus], vec![PePlus]],
            ProjectorFamily::ZeroTwelve => vec![
                vec![P0Plus, P12Plus],
                vec![P0Plus, P12Minus],
                vec![P0Minus, P12Plus],
                vec![P0Minus, P12Minus],
            ],
            ProjectorFamily::VolumeZeroTwelve => {
                let mut out = Vec::with_capacity(8);
                for p12 in [P12Plus, P12Minus] {
                    for p0 in [P0Plus, P0Minus] {
                        for pe in [PeMinus, PePlus] {
                            out.push(vec![pe, p0, p12]);
                        }
                    }
                }
                out
            }
        }
    }

    /// Recognizes a family from the set of projector kinds it uses.
    pub fn from_kinds(kinds: &[ProjectorKind]) -> Result<Self> {
        use ProjectorKind::*;
        let mut set: Vec<ProjectorKind> = kinds.to_vec();
        set.sort();
        set.dedup();
        let family = match set.as_slice() {
            [P0Plus, P0Minus] => ProjectorFamily::Zero,
            [P12Plus, P12Minus] => ProjectorFamily::Twelve,
            [PePlus, PeMinus] => ProjectorFamily::Volume,
            [P0Plus, P0Minus, P12Plus, P12Minus] => ProjectorFamily::ZeroTwelve,
            [P0Plus, P0Minus, P12Plus, P12Minus, PePlus, PeMinus] => ProjectorFamily::VolumeZeroTwelve,
            _ => {
                let tags: Vec<&str> = kinds.iter().map(|k| k.tag()).collect();
                return Err(Error::UnsupportedFamily(tags.join(",")));
            }
        };
        Ok(family)
    }
}

/// Right-multiplied parts `Ω P…` of a family, in [`ProjectorFamily::parts`] order.
pub fn decompose_family(omega: &FormField, family: ProjectorFamily) -> Vec<FormField> {
    family
        .parts()
        .iter()
        .map(|chain| omega.mul_const_right(&projector_product(chain)))
        .collect()
}

/// As [`decompose_family`], with the family given by its projector kinds.
pub fn decompose(omega: &FormField, kinds: &[ProjectorKind]) -> Result<Vec<FormField>> {
    Ok(decompose_family(omega, ProjectorFamily::from_kinds(kinds)?))
}

/// `Ω ↦ Ω e₂e₃`, which reverses the mass sign of the Hestenes equation.
pub fn mass_flip_hestenes(omega: &FormField) -> FormField {
    omega.mul_const_right(&Multivector::blade(Blade::E23))
}

/// `Ω ↦ Ω e₁e₂e₃`, which reverses the mass sign of the volume-form equation.
pub fn mass_flip_volume(omega: &FormField) -> FormField {
    omega.mul_const_right(&Multivector::blade(Blade::E123))
}

/// `Ω± = ½(Ω + Ω̄) ± (i/2)(Ω − Ω̄) u` and the inverse map, for `u² = −x`.
fn real_pair(omega: &FormField, unit: Blade) -> (FormField, FormField) {
    let conj = omega.conjugate();
    let re = omega.add(&conj).expect("same shape").scale(HALF);
    let im = omega
        .sub(&conj)
        .expect("same shape")
        .scale(I * HALF)
        .mul_const_right(&Multivector::blade(unit));
    (re.add(&im).expect("same shape"), re.sub(&im).expect("same shape"))
}

fn reconstruct(plus: &FormField, minus: &FormField, unit: Blade) -> Result<FormField> {
    let sum = plus.add(minus)?.scale(HALF);
    let diff = plus.sub(minus)?.mul_const_right(&Multivector::blade(unit)).scale(I * HALF);
    sum.add(&diff)
}

/// Real forms `(Ω₊, Ω₋)` with `Ω₊ = ½(Ω + Ω̄) + (i/2)(Ω − Ω̄)e₁e₂`.
pub fn real_pair_hestenes(omega: &FormField) -> (FormField, FormField) {
    real_pair(omega, Blade::E12)
}

/// `½(Ω₊ + Ω₋) + (i/2)(Ω₊ − Ω₋)e₁e₂`.
pub fn reconstruct_hestenes(plus: &FormField, minus: &FormField) -> Result<FormField> {
    reconstruct(plus, minus, Blade::E12)
}

/// Real forms `(Ω₊, Ω₋)` with `Ω₊ = ½(Ω + Ω̄) + (i/2)(Ω − Ω̄)e`.
pub fn real_pair_volume(omega: &FormField) -> (FormField, FormField) {
    real_pair(omega, Blade::E)
}

/// `½(Ω₊ + Ω₋) + (i/2)(Ω₊ − Ω₋)e`.
pub fn reconstruct_volume(plus: &FormField, minus: &FormField) -> Result<FormField> {
    reconstruct(plus, minus, Blade::E)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn shape() -> LatticeShape {
        LatticeShape::new([2, 2, 2, 2]).unwrap()
    }

    #[test]
    fn residual_of_trivial_forms() {
        let s = shape();
        let m = MassParameter(Complex64::new(0.7, -0.2));
        for kind in EquationKind::ALL {
            assert_eq!(residual(kind, &FormField::zero(s), m).sup_norm(), 0.0);
            let cx = FormField::unit_x(s).scale(Complex64::new(2.0, 1.0));
            assert_eq!(residual(kind, &cx, MassParameter::real(0.0)).sup_norm(), 0.0);
        }
    }

    #[test]
    fn component_systems_on_zero_and_constants() {
        let s = shape();
        let mut r = rng::seeded(9);
        let m = MassParameter(Complex64::new(1.3, 0.4));
        assert_eq!(component_residual_hestenes(&FormField::zero(s), m).residual.sup_norm(), 0.0);
        assert_eq!(component_residual_joyce(&FormField::zero(s), m).residual.sup_norm(), 0.0);
        let k = FormField::constant(s, &FormField::random_even(s, &mut r).at(Default::default()));
        let zero = MassParameter::real(0.0);
        assert_eq!(component_residual_hestenes(&k, zero).residual.sup_norm(), 0.0);
        assert_eq!(component_residual_joyce(&k, zero).residual.sup_norm(), 0.0);
    }

    #[test]
    fn component_systems_match_algebraic_residuals() {
        let s = shape();
        let mut r = rng::seeded(10);
        for _ in 0..10 {
            let omega = FormField::random_even(s, &mut r);
            let m = MassParameter(Complex64::new(0.3, -1.1));

            let h = component_residual_hestenes(&omega, m);
            assert_eq!(h.ignored_odd_norm, 0.0);
            let alg = residual(EquationKind::Hestenes, &omega, m)
                .mul_const_right(&Multivector::blade(Blade::generator(0)));
            assert!(h.residual.max_abs_diff(&alg).unwrap() < 1e-13);

            let j = component_residual_joyce(&omega, m).residual;
            let alg = residual(EquationKind::Joyce, &omega, m);
            let permuted = FormField::from_fn(s, |k, b| {
                if b.is_even() {
                    alg.get(k, Blade::from_mask(b.mask() ^ 1).unwrap())
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            assert!(j.max_abs_diff(&permuted).unwrap() < 1e-13);
        }
        let odd = FormField::random(s, &mut r);
        assert!(component_residual_joyce(&odd, MassParameter::real(1.0)).ignored_odd_norm > 0.0);
    }

    #[test]
    fn projectors_are_idempotent_and_complementary() {
        for k in ProjectorKind::ALL {
            let p = k.value();
            assert_eq!(p * p, p, "{k}");
            assert_eq!(p + k.opposite().value(), Multivector::unit());
            assert_eq!(p * k.opposite().value(), Multivector::zero());
        }
    }

    #[test]
    fn projector_swaps_under_mass_flip_blades() {
        use ProjectorKind::*;
        let e23 = Multivector::blade(Blade::E23);
        let e123 = Multivector::blade(Blade::E123);
        assert_eq!(P12Plus.value() * e23, e23 * P12Minus.value());
        assert_eq!(P12Minus.value() * e23, e23 * P12Plus.value());
        assert_eq!(PeMinus.value() * e123, e123 * PePlus.value());
        assert_eq!(PePlus.value() * e123, e123 * PeMinus.value());
    }

    #[test]
    fn families_and_tags() {
        use ProjectorKind::*;
        assert_eq!(ProjectorFamily::from_kinds(&[P0Minus, P0Plus]).unwrap(), ProjectorFamily::Zero);
        assert!(matches!(
            ProjectorFamily::from_kinds(&[P0Plus, P12Plus]),
            Err(Error::UnsupportedFamily(_))
        ));
        assert_eq!(ProjectorFamily::VolumeZeroTwelve.parts().len(), 8);
        for k in ProjectorKind::ALL {
            assert_eq!(k.tag().parse::<ProjectorKind>().unwrap(), k);
        }
        for k in EquationKind::ALL {
            assert_eq!(k.tag().parse::<EquationKind>().unwrap(), k);
        }
        assert!("dirac".parse::<EquationKind>().is_err());
        assert!("p3+".parse::<ProjectorKind>().is_err());
    }

    #[test]
    fn decompositions_sum_to_input() {
        let s = shape();
        let mut r = rng::seeded(12);
        let omega = FormField::random(s, &mut r);
        for family in [
            ProjectorFamily::Zero,
            ProjectorFamily::Twelve,
            ProjectorFamily::Volume,
            ProjectorFamily::ZeroTwelve,
            ProjectorFamily::VolumeZeroTwelve,
        ] {
            let parts = decompose_family(&omega, family);
            let mut sum = FormField::zero(s);
            for p in &parts {
                sum = sum.add(p).unwrap();
            }
            assert!(sum.max_abs_diff(&omega).unwrap() < 1e-14, "{family:?}");
        }
    }

    #[test]
    fn real_pairs() {
        let s = shape();
        let mut r = rng::seeded(13);
        let real = FormField::random(s, &mut r).real_part();
        let (p, m) = real_pair_hestenes(&real);
        assert_eq!(p, real);
        assert_eq!(m, real);
        let (p, m) = real_pair_volume(&real);
        assert_eq!(p, real);
        assert_eq!(m, real);

        let omega = FormField::random(s, &mut r);
        for (pair, rebuild) in [
            (real_pair_hestenes as fn(&FormField) -> (FormField, FormField), reconstruct_hestenes as fn(&FormField, &FormField) -> Result<FormField>),
            (real_pair_volume, reconstruct_volume),
        ] {
            let (p, m) = pair(&omega);
            assert_eq!(p.max_imag(), 0.0);
            assert_eq!(m.max_imag(), 0.0);
            assert!(rebuild(&p, &m).unwrap().max_abs_diff(&omega).unwrap() < 1e-15);
        }
    }
}
