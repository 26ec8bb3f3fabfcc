//! Plane-wave solutions of the four discrete equations.
//!
//! On a periodic lattice `Δ_μ` acting on `exp(2πi Σ n_μ k_μ / N_μ)` multiplies
//! by `λ_μ = exp(2πi n_μ / N_μ) − 1`, so at fixed momentum `n` each equation
//! reduces to a 16×16 generalized eigenproblem `L ψ = m R ψ` for the
//! amplitude `ψ` of the plane wave.

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::clifford::{Blade, Multivector, BLADES};
use crate::equations::EquationKind;
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::lattice::{LatticeShape, DIM};

pub type SymbolMatrix = SMatrix<Complex64, BLADES, BLADES>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Residual bound every returned mode is checked against.
pub const MODE_TOLERANCE: f64 = 1e-10;

/// Eigenvalues closer than this (relative to the operator norm) are treated
/// as one eigenspace.
const CLUSTER_TOLERANCE: f64 = 1e-6;

/// Singular values below this (relative) span the eigenspace.
const NULL_TOLERANCE: f64 = 1e-9;

const SCHUR_MAX_ITERATIONS: usize = 10_000;

/// Magnitudes below this are flushed to zero in masses and amplitudes.
const SNAP: f64 = 1e-14;

/// A plane-wave eigenmode of one of the discrete equations.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumMode {
    pub kind: EquationKind,
    /// Momentum `n`, with `0 ≤ n_μ < N_μ`.
    pub momentum: [usize; DIM],
    /// `λ_μ = exp(2πi n_μ / N_μ) − 1`.
    pub lambda: [Complex64; DIM],
    pub mass: Complex64,
    /// Unit-norm amplitude, one component per blade.
    pub amplitude: Multivector,
}

impl MomentumMode {
    pub fn plane_wave(&self, shape: LatticeShape) -> Result<FormField> {
        plane_wave(self, shape)
    }
}

/// `exp(2πi j / n)`, exact when `j/n` is a multiple of a quarter turn.
pub fn root_of_unity(j: usize, n: usize) -> Complex64 {
    let j = j % n;
    if (4 * j).is_multiple_of(n) {
        return match 4 * j / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = std::f64::consts::TAU * j as f64 / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

fn check_momentum(n: [usize; DIM], shape: LatticeShape) -> Result<()> {
    if n.iter().zip(shape.extents()).any(|(&a, b)| a >= b) {
        return Err(Error::InvalidMomentum { momentum: n, shape });
    }
    Ok(())
}

/// Difference symbols `λ_μ` of momentum `n` on `shape`.
pub fn lambda(n: [usize; DIM], shape: LatticeShape) -> Result<[Complex64; DIM]> {
    check_momentum(n, shape)?;
    Ok(std::array::from_fn(|mu| root_of_unity(n[mu], shape.extent(mu)) - 1.0))
}

/// Matrix of `ψ ↦ a ψ` in the blade basis.
pub fn left_mul_matrix(a: &Multivector) -> SymbolMatrix {
    SymbolMatrix::from_fn(|row, col| {
        let b = Multivector::blade(Blade::from_mask(col as u8).unwrap());
        (*a * b).0[row]
    })
}

/// Matrix of `ψ ↦ ψ a` in the blade basis.
pub fn right_mul_matrix(a: &Multivector) -> SymbolMatrix {
    SymbolMatrix::from_fn(|row, col| {
        let b = Multivector::blade(Blade::from_mask(col as u8).unwrap());
        (b * *a).0[row]
    })
}

/// `Σ_μ λ_μ e_μ` at one site.
pub fn dirac_symbol(lambda: [Complex64; DIM]) -> Multivector {
    let mut a = Multivector::zero();
    for (mu, &l) in lambda.iter().enumerate() {
        a[Blade::generator(mu)] = l;
    }
    a
}

/// `(L, R)` such that a plane wave with symbols `lambda` and amplitude `ψ`
/// solves the equation with mass `m` iff `L ψ = m R ψ`.
///
/// `L` is left multiplication by `Σ λ_μ e_μ` times the equation's prefactor,
/// followed by right multiplication by `e₁e₂` for the Hestenes equation. `R`
/// is right multiplication by the mass carrier (`x`, `e₀` or `e`).
pub fn symbol_matrix(kind: EquationKind, lambda: [Complex64; DIM]) -> (SymbolMatrix, SymbolMatrix) {
    let left = left_mul_matrix(&dirac_symbol(lambda));
    let carrier = right_mul_matrix(&Multivector::blade(kind.left_carrier()));
    let l = (carrier * left) * kind.prefactor();
    let r = right_mul_matrix(&Multivector::blade(kind.mass_carrier()));
    (l, r)
}

fn to_vector(a: &Multivector) -> SMatrix<Complex64, BLADES, 1> {
    SMatrix::from_fn(|i, _| a.0[i])
}

/// `sup |(L − m R) ψ|` for a single amplitude.
pub fn symbol_residual(kind: EquationKind, lambda: [Complex64; DIM], mass: Complex64, amplitude: &Multivector) -> f64 {
    let (l, r) = symbol_matrix(kind, lambda);
    let psi = to_vector(amplitude);
    let res = l * psi - r * psi * mass;
    res.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn snap(c: Complex64) -> Complex64 {
    let f = |v: f64| if v.abs() < SNAP { 0.0 } else { v };
    Complex64::new(f(c.re), f(c.im))
}

/// Groups eigenvalues into clusters by single linkage at distance `tol`.
fn cluster(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..values.len()).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..values.len() {
        let r = find(&mut label, i);
        match roots.iter().position(|&x| x == r) {
            Some(p) => groups[p].push(i),
            None => {
                roots.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Canonical orthonormal basis of the span of `rows`: reduced row echelon
/// form followed by Gram–Schmidt in pivot order, each vector phased so its
/// pivot entry is real and positive.
fn canonical_basis(mut rows: Vec<[Complex64; BLADES]>) -> Vec<[Complex64; BLADES]> {
    const PIVOT: f64 = 1e-8;
    let mut top = 0;
    for col in 0..BLADES {
        if top == rows.len() {
            break;
        }
        let (best, mag) = (top..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .fold((top, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= PIVOT {
            continue;
        }
        rows.swap(top, best);
        let p = rows[top][col];
        for v in rows[top].iter_mut() {
            *v /= p;
        }
        let pivot_row = rows[top];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top {
                let f = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        top += 1;
    }
    rows.truncate(top);

    let mut basis: Vec<[Complex64; BLADES]> = Vec::with_capacity(rows.len());
    for mut v in rows {
        for _ in 0..2 {
            for b in &basis {
                let dot: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi -= dot * bi;
                }
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        if let Some(&lead) = v.iter().find(|c| c.norm() > PIVOT) {
            let phase = lead.conj() / lead.norm();
            for vi in v.iter_mut() {
                *vi = snap(*vi * phase);
            }
        }
        basis.push(v);
    }
    basis
}

/// Eigenvalues from `M² = −q·I`, `q = λ₀² − λ₁² − λ₂² − λ₃²`, which every
/// symbol obeys. Used when the QR iteration stalls, as it does on exactly
/// nilpotent symbols; returns `None` if `M` does not satisfy the law.
fn square_law_eigenvalues(m: &SymbolMatrix, lambda: [Complex64; DIM]) -> Option<Vec<Complex64>> {
    let q = lambda[0] * lambda[0] - lambda[1] * lambda[1] - lambda[2] * lambda[2] - lambda[3] * lambda[3];
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let defect = (m * m + SymbolMatrix::identity() * q).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if defect > NULL_TOLERANCE * scale * scale {
        return None;
    }
    let root = (-q).sqrt();
    if root.norm() <= NULL_TOLERANCE * scale {
        return Some(vec![Complex64::new(0.0, 0.0); BLADES]);
    }
    // M is diagonalizable with eigenvalues ±root; the trace fixes how many
    // take each sign
    let plus = ((m.trace() / root).re + BLADES as f64) / 2.0;
    let plus = plus.round().clamp(0.0, BLADES as f64) as usize;
    Some((0..BLADES).map(|i| if i < plus { root } else { -root }).collect())
}

/// All plane-wave eigenmodes of `kind` at momentum `n`.
///
/// Each eigenspace of `R⁻¹L` is returned as an orthonormal basis. Eigenspaces
/// are ordered by the real and then imaginary part of their mass; within an
/// eigenspace, modes follow the pivot order of the canonical basis.
pub fn eigenmodes(kind: EquationKind, shape: LatticeShape, n: [usize; DIM]) -> Result<Vec<MomentumMode>> {
    let lambda = lambda(n, shape)?;
    let (l, r) = symbol_matrix(kind, lambda);
    let r_inv = r
        .try_inverse()
        .ok_or_else(|| Error::Numeric(format!("mass carrier of {kind} is singular")))?;
    let m = r_inv * l;
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);

    let eigenvalues = match m.try_schur(f64::EPSILON, SCHUR_MAX_ITERATIONS).and_then(|s| s.eigenvalues()) {
        Some(values) => values.iter().copied().collect(),
        None => square_law_eigenvalues(&m, lambda)
            .ok_or_else(|| Error::Numeric(format!("eigenvalues of {kind} at {n:?} did not converge")))?,
    };

    let mut spaces: Vec<(Complex64, Vec<[Complex64; BLADES]>)> = Vec::new();
    for group in cluster(&eigenvalues, CLUSTER_TOLERANCE * scale) {
        let center = group.iter().map(|&i| eigenvalues[i]).sum::<Complex64>() / group.len() as f64;
        let shifted = m - SymbolMatrix::identity() * center;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or_else(|| Error::Numeric("SVD did not return V".into()))?;
        let mut null: Vec<(f64, [Complex64; BLADES])> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= NULL_TOLERANCE * scale)
            .map(|(i, &s)| (s, std::array::from_fn(|j| v_t[(i, j)].conj())))
            .collect();
        if null.is_empty() {
            let smallest = svd.singular_values.min();
            return Err(Error::Numeric(format!(
                "{kind} at momentum {n:?}: no null vector for eigenvalue {center} \
                 (smallest singular value {smallest:.3e}, cluster size {})",
                group.len()
            )));
        }
        null.sort_by(|a, b| a.0.total_cmp(&b.0));
        null.truncate(group.len());
        let basis = canonical_basis(null.into_iter().map(|(_, v)| v).collect());

        let rayleigh = basis
            .iter()
            .map(|v| {
                let psi = SMatrix::<Complex64, BLADES, 1>::from_fn(|i, _| v[i]);
                (psi.adjoint() * m * psi)[(0, 0)]
            })
            .sum::<Complex64>()
            / basis.len() as f64;
        spaces.push((snap(rayleigh), basis));
    }
    spaces.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    let mut modes = Vec::with_capacity(BLADES);
    for (mass, basis) in spaces {
        for v in basis {
            let amplitude = Multivector(v);
            let res = symbol_residual(kind, lambda, mass, &amplitude);
            if res > MODE_TOLERANCE {
                return Err(Error::Numeric(format!(
                    "{kind} at momentum {n:?}: mode with mass {mass} has residual {res:.3e}"
                )));
            }
            modes.push(MomentumMode { kind, momentum: n, lambda, mass, amplitude });
        }
    }
    Ok(modes)
}

/// The form with coefficient `amplitude_b · exp(2πi Σ n_μ k_μ / N_μ)` at
/// site `k` and blade `b`.
pub fn plane_wave(mode: &MomentumMode, shape: LatticeShape) -> Result<FormField> {
    check_momentum(mode.momentum, shape)?;
    let n = mode.momentum;
    let ext = shape.extents();
    Ok(FormField::from_fn(shape, |site, b| {
        let k = site.coords();
        let phase = (0..DIM)
            .map(|mu| root_of_unity((n[mu] * k[mu]) % ext[mu], ext[mu]))
            .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z);
        if mode.amplitude.0[b.index()] == ZERO {
            ZERO
        } else {
            mode.amplitude.0[b.index()] * phase
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::delta_mu;
    use crate::equations::{residual, MassParameter};

    fn shape4() -> LatticeShape {
        LatticeShape::new([4, 4, 4, 4]).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(2, 4), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(3, 4), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(0, 5), Complex64::new(1.0, 0.0));
        let z = root_of_unity(1, 3);
        assert!((z - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn lambda_vanishes_only_at_zero_momentum() {
        let s = LatticeShape::new([3, 4, 5, 2]).unwrap();
        for n in s.sites() {
            let l = lambda(n.coords(), s).unwrap();
            for mu in 0..4 {
                assert_eq!(l[mu] == ZERO, n.coords()[mu] == 0);
            }
        }
        assert!(lambda([0, 4, 0, 0], shape4()).is_err());
    }

    #[test]
    fn zero_momentum_symbols() {
        for kind in EquationKind::ALL {
            let (l, r) = symbol_matrix(kind, [ZERO; 4]);
            assert_eq!(l, SymbolMatrix::zeros());
            let r2 = r * r;
            match kind {
                EquationKind::DiracKahler => assert_eq!(r, SymbolMatrix::identity()),
                EquationKind::Volume => assert_eq!(r2, -SymbolMatrix::identity()),
                _ => assert_eq!(r2, SymbolMatrix::identity()),
            }
            let modes = eigenmodes(kind, shape4(), [0, 0, 0, 0]).unwrap();
            assert_eq!(modes.len(), 16);
            assert!(modes.iter().all(|m| m.mass == ZERO));
        }
    }

    #[test]
    fn half_period_momentum_has_real_masses() {
        let modes = eigenmodes(EquationKind::DiracKahler, shape4(), [0, 2, 0, 0]).unwrap();
        assert_eq!(modes.len(), 16);
        let (neg, pos): (Vec<_>, Vec<_>) = modes.iter().partition(|m| m.mass.re < 0.0);
        assert_eq!(neg.len(), 8);
        assert_eq!(pos.len(), 8);
        for m in &modes {
            assert!((m.mass.re.abs() - 2.0).abs() < 1e-12 && m.mass.im.abs() < 1e-12, "{}", m.mass);
        }
    }

    #[test]
    fn plane_waves_solve_and_diagonalize_differences() {
        let s = LatticeShape::new([3, 4, 3, 2]).unwrap();
        for kind in EquationKind::ALL {
            for n in [[1, 2, 0, 1], [2, 3, 1, 0], [1, 1, 0, 0]] {
                let modes = eigenmodes(kind, s, n).unwrap();
                assert!(!modes.is_empty());
                for mode in &modes {
                    let pw = mode.plane_wave(s).unwrap();
                    let res = residual(kind, &pw, MassParameter(mode.mass));
                    assert!(res.sup_norm() < 1e-10, "{kind} {n:?} {}", res.sup_norm());
                    for mu in 0..4 {
                        let d = delta_mu(&pw, mu).unwrap();
                        assert!(d.max_abs_diff(&pw.scale(mode.lambda[mu])).unwrap() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn null_momentum_is_defective_but_handled() {
        // λ₀ = λ₁ makes the symbol nilpotent
        let s = shape4();
        let modes = eigenmodes(EquationKind::DiracKahler, s, [1, 1, 0, 0]).unwrap();
        assert_eq!(modes.len(), 8);
        assert!(modes.iter().all(|m| m.mass.norm() < 1e-12));
    }

    #[test]
    fn eigenspace_bases_are_orthonormal() {
        let modes = eigenmodes(EquationKind::Joyce, shape4(), [1, 2, 3, 1]).unwrap();
        for a in &modes {
            for b in &modes {
                if a.mass != b.mass {
                    continue;
                }
                let dot: Complex64 = a.amplitude.0.iter().zip(&b.amplitude.0).map(|(x, y)| x.conj() * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn plane_wave_basics() {
        let s = shape4();
        let modes = eigenmodes(EquationKind::Volume, s, [0, 0, 0, 0]).unwrap();
        let pw = modes[3].plane_wave(s).unwrap();
        assert!(pw.is_constant());
        let modes = eigenmodes(EquationKind::Volume, s, [1, 0, 3, 2]).unwrap();
        let pw = modes[0].plane_wave(s).unwrap();
        assert!((pw.sup_norm() - modes[0].amplitude.sup_norm()).abs() < 1e-15);
        assert!(plane_wave(&modes[0], LatticeShape::new([2, 2, 2, 2]).unwrap()).is_err());
    }
}
