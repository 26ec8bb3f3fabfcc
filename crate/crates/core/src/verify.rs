//! Property suites behind the `verify` command.
//!
//! Every check reports the largest residual it observed; a check passes when
//! that residual is at most the configured tolerance. Random draws come from
//! a per-suite stream of the seed, so a fixed `(shape, seed, samples)` gives
//! identical reports.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::calculus::{d_c, delta_c, delta_mu, dirac};
use crate::clifford::{blade_product, generator_string_product, Blade, Multivector, SignedBlade, METRIC};
use crate::equations::{
    component_residual_hestenes, component_residual_joyce, decompose_family, mass_flip_hestenes,
    mass_flip_volume, projector, real_pair_hestenes, real_pair_volume, reconstruct_hestenes,
    reconstruct_volume, residual, EquationKind, MassParameter, ProjectorFamily, ProjectorKind,
};
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::lattice::{LatticeShape, DIM};
use crate::rng::{self, FormRng};
use crate::solver::{self, eigenmodes, left_mul_matrix, plane_wave, symbol_matrix, MomentumMode};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Clifford,
    Calculus,
    Projectors,
    Decompositions,
    Solver,
}

impl Suite {
    pub fn tag(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Clifford => "clifford",
            Suite::Calculus => "calculus",
            Suite::Projectors => "projectors",
            Suite::Decompositions => "decompositions",
            Suite::Solver => "solver",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Suite::All, Suite::Clifford, Suite::Calculus, Suite::Projectors, Suite::Decompositions, Suite::Solver]
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::UnknownTag { what: "suite", tag: s.to_string() })
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub shape: LatticeShape,
    pub seed: u64,
    pub tol: f64,
    pub suite: Suite,
    /// Random forms drawn per random-form check.
    pub samples: usize,
    /// Random momenta drawn per solver-built check.
    pub momenta: usize,
}

impl Config {
    pub fn new(shape: LatticeShape, seed: u64) -> Self {
        Self { shape, seed, tol: 1e-10, suite: Suite::All, samples: 100, momenta: 3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropResult {
    pub id: String,
    pub max_residual: f64,
    pub pass: bool,
}

impl fmt::Display for PropResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "PROP {} {:.3e} {}", self.id, self.max_residual, verdict)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub results: Vec<PropResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, id: &str) -> Option<&PropResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

struct Recorder<'a> {
    tol: f64,
    report: &'a mut Report,
}

impl Recorder<'_> {
    fn record(&mut self, id: &str, max_residual: f64) {
        let pass = max_residual.is_finite() && max_residual <= self.tol;
        self.report.results.push(PropResult { id: id.to_string(), max_residual, pass });
    }
}

/// Momentum with a half period in the first spatial direction of even
/// extent; its plane waves have real masses.
pub fn real_mass_momentum(shape: LatticeShape) -> Option<[usize; DIM]> {
    (1..DIM).find(|&mu| shape.extent(mu).is_multiple_of(2)).map(|mu| {
        let mut n = [0; DIM];
        n[mu] = shape.extent(mu) / 2;
        n
    })
}

pub fn run(config: &Config) -> Result<Report> {
    let needs_real_mass = matches!(config.suite, Suite::All | Suite::Decompositions | Suite::Solver);
    if needs_real_mass && real_mass_momentum(config.shape).is_none() {
        return Err(Error::UnknownTag {
            what: "shape for real-mass checks (needs an even extent in a spatial direction)",
            tag: config.shape.to_string(),
        });
    }
    let mut report = Report::default();
    let suites: &[Suite] = match config.suite {
        Suite::All => &[Suite::Clifford, Suite::Calculus, Suite::Projectors, Suite::Decompositions, Suite::Solver],
        ref s => std::slice::from_ref(s),
    };
    for &suite in suites {
        let mut rng = rng::stream(config.seed, suite.stream());
        let mut rec = Recorder { tol: config.tol, report: &mut report };
        match suite {
            Suite::Clifford => clifford_suite(config, &mut rec),
            Suite::Calculus => calculus_suite(config, &mut rng, &mut rec),
            Suite::Projectors => projector_suite(config, &mut rec),
            Suite::Decompositions => decomposition_suite(config, &mut rng, &mut rec)?,
            Suite::Solver => solver_suite(config, &mut rng, &mut rec)?,
            Suite::All => unreachable!(),
        }
    }
    Ok(report)
}

fn mismatch(a: bool) -> f64 {
    if a {
        0.0
    } else {
        1.0
    }
}

fn clifford_suite(config: &Config, rec: &mut Recorder) {
    let mut bad = 0usize;
    for a in Blade::all() {
        for b in Blade::all() {
            if blade_product(a, b) != generator_string_product(a, b) {
                bad += 1;
            }
        }
    }
    rec.record("clifford.table_vs_string_oracle", bad as f64);

    let mut worst: f64 = 0.0;
    for mu in 0..DIM {
        for nu in 0..DIM {
            let (em, en) = (Multivector::blade(Blade::generator(mu)), Multivector::blade(Blade::generator(nu)));
            let mut want = Multivector::zero();
            if mu == nu {
                want[Blade::X] = Complex64::new(2.0 * METRIC[mu] as f64, 0.0);
            }
            worst = worst.max((em * en + en * em - want).sup_norm());
        }
    }
    rec.record("clifford.anticommutation", worst);

    let mut bad = 0usize;
    for a in Blade::all() {
        for b in Blade::all() {
            for c in Blade::all() {
                let (ab, bc) = (blade_product(a, b), blade_product(b, c));
                let (l, r) = (blade_product(ab.blade, c), blade_product(a, bc.blade));
                if l.blade != r.blade || ab.sign * l.sign != bc.sign * r.sign {
                    bad += 1;
                }
            }
        }
    }
    rec.record("clifford.associativity", bad as f64);

    let unit_ok = Blade::all().all(|b| {
        blade_product(Blade::X, b) == SignedBlade::new(1, b) && blade_product(b, Blade::X) == SignedBlade::new(1, b)
    });
    rec.record("clifford.unit", mismatch(unit_ok));

    let gens = (0..DIM).fold(Multivector::unit(), |acc, mu| acc * Multivector::blade(Blade::generator(mu)));
    let e = Multivector::blade(Blade::E);
    rec.record(
        "clifford.volume_element",
        (gens - e).sup_norm().max((e * e + Multivector::unit()).sup_norm()),
    );

    // the same identities for the constant lattice forms
    let s = config.shape;
    let x = FormField::unit_x(s);
    let mut worst: f64 = 0.0;
    for mu in 0..DIM {
        for nu in 0..DIM {
            let em = FormField::basis_e(s, mu).unwrap();
            let en = FormField::basis_e(s, nu).unwrap();
            let lhs = em.clifford_mul(&en).unwrap().add(&en.clifford_mul(&em).unwrap()).unwrap();
            let want = if mu == nu { x.scale_re(2.0 * METRIC[mu] as f64) } else { FormField::zero(s) };
            worst = worst.max(lhs.max_abs_diff(&want).unwrap());
        }
    }
    rec.record("forms.constant_anticommutation", worst);
    let ue = FormField::unit_e(s);
    rec.record(
        "forms.unit_e_square",
        ue.clifford_mul(&ue).unwrap().add(&x).unwrap().sup_norm(),
    );
}

fn random_constant(rng: &mut FormRng) -> Multivector {
    Multivector(std::array::from_fn(|_| {
        Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
    }))
}

fn random_mass(rng: &mut FormRng) -> MassParameter {
    MassParameter(Complex64::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0)))
}

fn calculus_suite(config: &Config, rng: &mut FormRng, rec: &mut Recorder) {
    let s = config.shape;
    let (mut dual, mut dd, mut deldel, mut comm, mut constant) = (0f64, 0f64, 0f64, 0f64, 0f64);
    let (mut hest, mut joyce) = (0f64, 0f64);
    for _ in 0..config.samples {
        let omega = FormField::random(s, rng);
        let two_routes = d_c(&omega).add(&delta_c(&omega)).unwrap();
        dual = dual.max(two_routes.max_abs_diff(&dirac(&omega)).unwrap());
        dd = dd.max(d_c(&d_c(&omega)).sup_norm());
        deldel = deldel.max(delta_c(&delta_c(&omega)).sup_norm());

        let mu = rng.random_range(0..DIM);
        let nu = rng.random_range(0..DIM);
        let a = delta_mu(&delta_mu(&omega, mu).unwrap(), nu).unwrap();
        let b = delta_mu(&delta_mu(&omega, nu).unwrap(), mu).unwrap();
        comm = comm.max(a.max_abs_diff(&b).unwrap());

        let p = random_constant(rng);
        let lhs = dirac(&omega.mul_const_right(&p));
        let rhs = dirac(&omega).mul_const_right(&p);
        constant = constant.max(lhs.max_abs_diff(&rhs).unwrap());

        let even = FormField::random_even(s, rng);
        let m = random_mass(rng);
        let alg = residual(EquationKind::Hestenes, &even, m)
            .mul_const_right(&Multivector::blade(Blade::generator(0)));
        hest = hest.max(component_residual_hestenes(&even, m).residual.max_abs_diff(&alg).unwrap());

        let alg = residual(EquationKind::Joyce, &even, m);
        let permuted = FormField::from_fn(s, |k, b| {
            if b.is_even() {
                alg.get(k, Blade::from_mask(b.mask() ^ 1).unwrap())
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        joyce = joyce.max(component_residual_joyce(&even, m).residual.max_abs_diff(&permuted).unwrap());
    }
    rec.record("calculus.dirac_dual_route", dual);
    rec.record("calculus.dc_nilpotent", dd);
    rec.record("calculus.deltac_nilpotent", deldel);
    rec.record("calculus.differences_commute", comm);
    rec.record("calculus.constant_right_factor", constant);
    rec.record("calculus.hestenes_components", hest);
    rec.record("calculus.joyce_components", joyce);
}

fn projector_suite(config: &Config, rec: &mut Recorder) {
    use ProjectorKind::*;
    let s = config.shape;
    let f = |k: ProjectorKind| projector(k, s);
    let mul = |a: &FormField, b: &FormField| a.clifford_mul(b).unwrap();
    let diff = |a: &FormField, b: &FormField| a.max_abs_diff(b).unwrap();

    let mut worst: f64 = 0.0;
    for k in ProjectorKind::ALL {
        worst = worst.max(diff(&mul(&f(k), &f(k)), &f(k)));
    }
    rec.record("projectors.idempotent", worst);

    let mut worst: f64 = 0.0;
    for a in [P0Plus, P0Minus, PePlus, PeMinus] {
        for b in [P12Plus, P12Minus] {
            worst = worst.max(diff(&mul(&f(a), &f(b)), &mul(&f(b), &f(a))));
        }
    }
    rec.record("projectors.commute_with_p12", worst);

    let e0 = FormField::basis_e(s, 0).unwrap();
    let e12 = FormField::constant(s, &Multivector::blade(Blade::E12));
    let e = FormField::unit_e(s);
    let mut worst: f64 = 0.0;
    for (gen, kinds) in [(&e0, [P0Plus, P0Minus]), (&e12, [P12Plus, P12Minus]), (&e, [PePlus, PeMinus])] {
        for k in kinds {
            worst = worst.max(diff(&mul(gen, &f(k)), &mul(&f(k), gen)));
        }
    }
    rec.record("projectors.commute_with_generator", worst);

    let mut worst: f64 = 0.0;
    for k in ProjectorKind::ALL {
        let sign = Complex64::new(k.sign() as f64, 0.0);
        let (gen, factor) = match k {
            P0Plus | P0Minus => (&e0, sign),
            P12Plus | P12Minus => (&e12, sign * I),
            PePlus | PeMinus => (&e, sign * I),
        };
        worst = worst.max(diff(&f(k), &mul(&f(k), gen).scale(factor)));
    }
    rec.record("projectors.absorb_generator", worst);

    let e23 = FormField::constant(s, &Multivector::blade(Blade::E23));
    let e123 = FormField::constant(s, &Multivector::blade(Blade::E123));
    let mut worst: f64 = 0.0;
    for k in [P12Plus, P12Minus] {
        worst = worst.max(diff(&mul(&f(k), &e23), &mul(&e23, &f(k.opposite()))));
    }
    for k in [PePlus, PeMinus] {
        worst = worst.max(diff(&mul(&f(k), &e123), &mul(&e123, &f(k.opposite()))));
    }
    rec.record("projectors.swap_under_mass_flip", worst);
}

fn random_momentum(shape: LatticeShape, rng: &mut FormRng) -> [usize; DIM] {
    std::array::from_fn(|mu| rng.random_range(0..shape.extent(mu)))
}

fn modes_for(kind: EquationKind, config: &Config, rng: &mut FormRng) -> Result<Vec<(MomentumMode, FormField)>> {
    let mut out = Vec::new();
    for _ in 0..config.momenta {
        let n = random_momentum(config.shape, rng);
        for mode in eigenmodes(kind, config.shape, n)? {
            let pw = plane_wave(&mode, config.shape)?;
            out.push((mode, pw));
        }
    }
    Ok(out)
}

fn sign_mass(sign: i8, m: Complex64) -> MassParameter {
    MassParameter(m * sign as f64)
}

fn decomposition_suite(config: &Config, rng: &mut FormRng, rec: &mut Recorder) -> Result<()> {
    use ProjectorKind::*;
    let s = config.shape;
    let n = |a: &FormField, b: &FormField| a.max_abs_diff(b).unwrap();
    let p = |k: ProjectorKind| k.value();
    let e12 = Multivector::blade(Blade::E12);
    let e = Multivector::blade(Blade::E);

    // identities valid for every form
    let mut worst = [0f64; 10];
    for _ in 0..config.samples {
        let omega = FormField::random(s, rng);
        let m = random_mass(rng);

        for family in [
            ProjectorFamily::Zero,
            ProjectorFamily::Twelve,
            ProjectorFamily::Volume,
            ProjectorFamily::ZeroTwelve,
            ProjectorFamily::VolumeZeroTwelve,
        ] {
            let mut sum = FormField::zero(s);
            for part in decompose_family(&omega, family) {
                sum = sum.add(&part).unwrap();
            }
            worst[0] = worst[0].max(n(&sum, &omega));
        }

        let j = residual(EquationKind::Joyce, &omega, m);
        for k in [P0Plus, P0Minus] {
            let dk = residual(EquationKind::DiracKahler, &omega.mul_const_right(&p(k)), sign_mass(k.sign(), m.0));
            worst[1] = worst[1].max(n(&dk, &j.mul_const_right(&p(k))));
        }
        for k in [P12Plus, P12Minus] {
            let h = residual(EquationKind::Hestenes, &omega.mul_const_right(&p(k)), sign_mass(k.sign(), m.0));
            worst[2] = worst[2].max(n(&h, &j.mul_const_right(&p(k)).scale_re(k.sign() as f64)));
        }

        let ev = residual(EquationKind::Volume, &omega, m);
        for k in [PeMinus, PePlus] {
            let dk = residual(EquationKind::DiracKahler, &omega.mul_const_right(&p(k)), sign_mass(-k.sign(), m.0));
            worst[3] = worst[3].max(n(&dk, &ev.mul_const_right(&p(k)).scale(-I)));
        }

        let h = residual(EquationKind::Hestenes, &omega, m);
        let h_flip = residual(EquationKind::Hestenes, &mass_flip_hestenes(&omega), -m);
        worst[4] = worst[4].max(n(&h_flip, &mass_flip_hestenes(&h).scale_re(-1.0)));
        let v_flip = residual(EquationKind::Volume, &mass_flip_volume(&omega), -m);
        worst[5] = worst[5].max(n(&v_flip, &mass_flip_volume(&ev)));

        let even = omega.even_part();
        let (plus, minus) = real_pair_hestenes(&even);
        worst[6] = worst[6]
            .max(n(&even.mul_const_right(&p(P12Plus)), &plus.mul_const_right(&p(P12Plus))))
            .max(n(&even.mul_const_right(&p(P12Minus)), &minus.mul_const_right(&p(P12Minus))));
        worst[7] = worst[7].max(n(&reconstruct_hestenes(&plus, &minus)?, &even));
        let (vplus, vminus) = real_pair_volume(&omega);
        worst[8] = worst[8]
            .max(n(&omega.mul_const_right(&p(PeMinus)), &vminus.mul_const_right(&p(PeMinus))))
            .max(n(&omega.mul_const_right(&p(PePlus)), &vplus.mul_const_right(&p(PePlus))))
            .max(n(&reconstruct_volume(&vplus, &vminus)?, &omega));
        worst[9] = worst[9]
            .max(plus.max_imag())
            .max(minus.max_imag())
            .max(vplus.max_imag())
            .max(vminus.max_imag());
    }
    rec.record("decompositions.parts_sum", worst[0]);
    rec.record("decompositions.joyce_to_dirac_kahler_identity", worst[1]);
    rec.record("decompositions.joyce_to_hestenes_identity", worst[2]);
    rec.record("decompositions.volume_to_dirac_kahler_identity", worst[3]);
    rec.record("decompositions.hestenes_mass_flip_identity", worst[4]);
    rec.record("decompositions.volume_mass_flip_identity", worst[5]);
    rec.record("decompositions.hestenes_real_pair_projection", worst[6]);
    rec.record("decompositions.hestenes_reconstruction", worst[7]);
    rec.record("decompositions.volume_real_pair", worst[8]);
    rec.record("decompositions.real_pair_reality", worst[9]);

    // claims about actual solutions, built from plane-wave eigenmodes
    let res = |kind, f: &FormField, m: MassParameter| residual(kind, f, m).sup_norm();

    let mut joyce_dk: f64 = 0.0;
    let mut joyce_h: f64 = 0.0;
    let mut four: f64 = 0.0;
    for (mode, omega) in modes_for(EquationKind::Joyce, config, rng)? {
        for k in [P0Plus, P0Minus] {
            let part = omega.mul_const_right(&p(k));
            joyce_dk = joyce_dk.max(res(EquationKind::DiracKahler, &part, sign_mass(k.sign(), mode.mass)));
        }
        for k in [P12Plus, P12Minus] {
            let part = omega.mul_const_right(&p(k));
            joyce_h = joyce_h.max(res(EquationKind::Hestenes, &part, sign_mass(k.sign(), mode.mass)));
        }
        for (chain, part) in ProjectorFamily::ZeroTwelve
            .parts()
            .iter()
            .zip(decompose_family(&omega, ProjectorFamily::ZeroTwelve))
        {
            four = four
                .max(res(EquationKind::DiracKahler, &part, sign_mass(chain[0].sign(), mode.mass)))
                .max(res(EquationKind::Hestenes, &part, sign_mass(chain[1].sign(), mode.mass)));
        }
    }
    rec.record("decompositions.joyce_solution_to_dirac_kahler", joyce_dk);
    rec.record("decompositions.joyce_solution_to_hestenes", joyce_h);
    rec.record("decompositions.joyce_solution_four_parts", four);

    let mut vol_dk: f64 = 0.0;
    let mut eight: f64 = 0.0;
    for (mode, omega) in modes_for(EquationKind::Volume, config, rng)? {
        for k in [PeMinus, PePlus] {
            let part = omega.mul_const_right(&p(k));
            vol_dk = vol_dk.max(res(EquationKind::DiracKahler, &part, sign_mass(-k.sign(), mode.mass)));
        }
        for (chain, part) in ProjectorFamily::VolumeZeroTwelve
            .parts()
            .iter()
            .zip(decompose_family(&omega, ProjectorFamily::VolumeZeroTwelve))
        {
            let sign = -chain[0].sign() * chain[1].sign() * chain[2].sign();
            eight = eight.max(res(EquationKind::Hestenes, &part, sign_mass(sign, mode.mass)));
        }
    }
    rec.record("decompositions.volume_solution_to_dirac_kahler", vol_dk);
    rec.record("decompositions.volume_solution_eight_parts", eight);

    let n_real = real_mass_momentum(s).expect("checked in run");
    let mut real: f64 = 0.0;
    for mode in eigenmodes(EquationKind::DiracKahler, s, n_real)? {
        let omega = plane_wave(&mode, s)?;
        let m = MassParameter(Complex64::new(mode.mass.re, 0.0));
        let (plus, minus) = real_pair_volume(&omega);
        let half_minus = minus.scale_re(0.5);
        let half_plus = plus.scale_re(0.5);
        real = real
            .max(mode.mass.im.abs())
            .max(res(EquationKind::Volume, &half_minus, m))
            .max(res(EquationKind::Volume, &half_minus.mul_const_right(&e), m))
            .max(res(EquationKind::Volume, &half_plus, -m))
            .max(res(EquationKind::Volume, &half_plus.mul_const_right(&e), -m));
    }
    rec.record("decompositions.dirac_kahler_real_volume_solutions", real);

    // real even Hestenes solutions from a Joyce solution with real mass
    let mut hreal: f64 = 0.0;
    for mode in eigenmodes(EquationKind::Joyce, s, n_real)? {
        let omega = plane_wave(&mode, s)?.even_part();
        if residual(EquationKind::Joyce, &omega, MassParameter(mode.mass)).sup_norm() > config.tol {
            continue;
        }
        let m = MassParameter(Complex64::new(mode.mass.re, 0.0));
        let (plus, minus) = real_pair_hestenes(&omega);
        hreal = hreal
            .max(res(EquationKind::Hestenes, &plus.scale_re(0.5), m))
            .max(res(EquationKind::Hestenes, &plus.mul_const_right(&e12).scale_re(0.5), m))
            .max(res(EquationKind::Hestenes, &minus.scale_re(0.5), -m))
            .max(res(EquationKind::Hestenes, &minus.mul_const_right(&e12).scale_re(0.5), -m));
    }
    rec.record("decompositions.joyce_real_hestenes_solutions", hreal);
    Ok(())
}

fn solver_suite(config: &Config, rng: &mut FormRng, rec: &mut Recorder) -> Result<()> {
    let s = config.shape;
    let mut worst_mode: f64 = 0.0;
    let mut worst_symbol: f64 = 0.0;
    let mut worst_square: f64 = 0.0;
    let mut worst_mass_square: f64 = 0.0;
    let mut worst_pairing: f64 = 0.0;
    for kind in EquationKind::ALL {
        for _ in 0..config.momenta {
            let n = random_momentum(s, rng);
            let lambda = solver::lambda(n, s)?;
            let modes = eigenmodes(kind, s, n)?;
            for mode in &modes {
                let pw = plane_wave(mode, s)?;
                worst_mode = worst_mode.max(residual(kind, &pw, MassParameter(mode.mass)).sup_norm());
            }

            // lattice residual of an arbitrary plane wave equals its symbol
            let psi = random_constant(rng);
            let m = random_mass(rng);
            let probe = MomentumMode { kind, momentum: n, lambda, mass: m.0, amplitude: psi };
            let lattice = residual(kind, &plane_wave(&probe, s)?, m);
            let (l, r) = symbol_matrix(kind, lambda);
            let v = nalgebra::SVector::<Complex64, 16>::from_fn(|i, _| psi.0[i]);
            let image = l * v - r * v * m.0;
            let image = MomentumMode { amplitude: Multivector(std::array::from_fn(|i| image[i])), ..probe };
            worst_symbol = worst_symbol.max(lattice.max_abs_diff(&plane_wave(&image, s)?).unwrap());

            let a = left_mul_matrix(&solver::dirac_symbol(lambda));
            let q = lambda[0] * lambda[0] - lambda[1] * lambda[1] - lambda[2] * lambda[2] - lambda[3] * lambda[3];
            let square = a * a - solver::SymbolMatrix::identity() * q;
            worst_square = worst_square.max(square.iter().map(|c| c.norm()).fold(0.0, f64::max));

            if kind == EquationKind::DiracKahler {
                for mode in &modes {
                    worst_mass_square = worst_mass_square.max((mode.mass * mode.mass + q).norm());
                }
                let mut masses: Vec<Complex64> = modes.iter().map(|m| m.mass).collect();
                for m in masses.clone() {
                    let nearest = masses
                        .iter()
                        .enumerate()
                        .map(|(i, o)| (i, (o + m).norm()))
                        .fold((usize::MAX, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
                    worst_pairing = worst_pairing.max(nearest.1);
                    if nearest.0 != usize::MAX {
                        masses.remove(nearest.0);
                    }
                }
            }
        }
    }
    rec.record("solver.mode_residual", worst_mode);
    rec.record("solver.symbol_consistency", worst_symbol);
    rec.record("solver.clifford_square_law", worst_square);
    rec.record("solver.dirac_kahler_mass_square", worst_mass_square);
    rec.record("solver.dirac_kahler_mass_pairing", worst_pairing);

    let n_real = real_mass_momentum(s).expect("checked in run");
    let modes = eigenmodes(EquationKind::DiracKahler, s, n_real)?;
    let mut worst: f64 = 0.0;
    for mode in &modes {
        worst = worst.max(mode.mass.im.abs()).max((mode.mass.norm() - 2.0).abs());
    }
    let plus = modes.iter().filter(|m| m.mass.re > 0.0).count();
    worst = worst.max(mismatch(plus == 8 && modes.len() == 16));
    rec.record("solver.half_period_real_masses", worst);
    Ok(())
}
