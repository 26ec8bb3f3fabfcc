use dklattice::calculus::{d_c, delta_c, delta_mu, dirac};
use dklattice::clifford::{Blade, Multivector};
use dklattice::equations::{residual, EquationKind, MassParameter, ProjectorFamily};
use dklattice::lattice::LatticeShape;
use dklattice::{rng, Complex64, FormField};
use proptest::prelude::*;

fn small_shape() -> impl Strategy<Value = LatticeShape> {
    prop::array::uniform4(2usize..4).prop_map(|e| LatticeShape::new(e).unwrap())
}

fn constant() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16((-1.0f64..1.0, -1.0f64..1.0))
        .prop_map(|a| Multivector(a.map(|(re, im)| Complex64::new(re, im))))
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn clifford_product_distributes(shape in small_shape(), seed in any::<u64>()) {
        let mut r = rng::seeded(seed);
        let (a, b, c) = (FormField::random(shape, &mut r), FormField::random(shape, &mut r), FormField::random(shape, &mut r));
        let lhs = a.clifford_mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.clifford_mul(&b).unwrap().add(&a.clifford_mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-13);
    }

    #[test]
    fn dirac_commutes_with_constant_right_factor(shape in small_shape(), seed in any::<u64>(), p in constant()) {
        let omega = FormField::random(shape, &mut rng::seeded(seed));
        let lhs = dirac(&omega.mul_const_right(&p));
        let rhs = dirac(&omega).mul_const_right(&p);
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn operators_are_linear(shape in small_shape(), seed in any::<u64>(), a in complex()) {
        let mut r = rng::seeded(seed);
        let (f, g) = (FormField::random(shape, &mut r), FormField::random(shape, &mut r));
        let combo = f.scale(a).add(&g).unwrap();
        for op in [d_c, delta_c, dirac] {
            let want = op(&f).scale(a).add(&op(&g)).unwrap();
            prop_assert!(op(&combo).max_abs_diff(&want).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn differences_vanish_on_constants(shape in small_shape(), p in constant(), mu in 0usize..4) {
        let f = FormField::constant(shape, &p);
        prop_assert_eq!(delta_mu(&f, mu).unwrap().sup_norm(), 0.0);
        prop_assert_eq!(dirac(&f).sup_norm(), 0.0);
    }

    #[test]
    fn d_c_raises_and_delta_c_lowers_grade(shape in small_shape(), seed in any::<u64>(), g in 0usize..5) {
        let omega = FormField::random(shape, &mut rng::seeded(seed)).grade_project(g);
        let up = d_c(&omega);
        let down = delta_c(&omega);
        for k in shape.sites() {
            for b in Blade::all() {
                if b.grade() != g + 1 {
                    prop_assert_eq!(up.get(k, b), Complex64::new(0.0, 0.0));
                }
                if g == 0 || b.grade() != g - 1 {
                    prop_assert_eq!(down.get(k, b), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn residuals_are_affine_in_mass(shape in small_shape(), seed in any::<u64>(), m in complex(), n in complex()) {
        let omega = FormField::random(shape, &mut rng::seeded(seed));
        for kind in EquationKind::ALL {
            // R(m) + R(n) - R(0) = R(m + n)
            let lhs = residual(kind, &omega, MassParameter(m))
                .add(&residual(kind, &omega, MassParameter(n))).unwrap()
                .sub(&residual(kind, &omega, MassParameter(Complex64::new(0.0, 0.0)))).unwrap();
            let rhs = residual(kind, &omega, MassParameter(m + n));
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn commuting_family_parts_are_disjoint(seed in any::<u64>()) {
        // P₀ and P₁₂ commute, so their four chains are orthogonal idempotents
        let shape = LatticeShape::new([2, 2, 2, 2]).unwrap();
        let omega = FormField::random(shape, &mut rng::seeded(seed));
        let family = ProjectorFamily::ZeroTwelve;
        let parts = family.parts();
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                let pa = omega.mul_const_right(&dklattice::equations::projector_product(a));
                let both = pa.mul_const_right(&dklattice::equations::projector_product(b));
                if i == j {
                    prop_assert!(both.max_abs_diff(&pa).unwrap() <= 1e-14);
                } else {
                    prop_assert!(both.sup_norm() <= 1e-14);
                }
            }
        }
    }
}
