//! Forward differences, the discrete exterior derivative and codifferential,
//! and the Dirac operator.
//!
//! `d_c` and `delta_c` are written out component by component. `dirac` is the
//! algebraic form `Σ_μ e_μ Δ_μ` built from Clifford multiplication; the two
//! routes are kept separate so that each checks the other.

use num_complex::Complex64;

use crate::clifford::{Blade, Multivector, BLADES};
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::lattice::DIM;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `d_c`
    Dc,
    /// `delta_c`
    DeltaC,
    /// `d_c + delta_c`, evaluated as `Σ e_μ Δ_μ`
    Dirac,
}

impl OperatorKind {
    pub fn apply(self, omega: &FormField) -> FormField {
        match self {
            OperatorKind::Dc => d_c(omega),
            OperatorKind::DeltaC => delta_c(omega),
            OperatorKind::Dirac => dirac(omega),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            OperatorKind::Dc => "dc",
            OperatorKind::DeltaC => "deltac",
            OperatorKind::Dirac => "dirac",
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dc" => Ok(OperatorKind::Dc),
            "deltac" => Ok(OperatorKind::DeltaC),
            "dirac" => Ok(OperatorKind::Dirac),
            _ => Err(Error::UnknownTag { what: "operator", tag: s.to_string() }),
        }
    }
}

/// `Δ_μ`: every coefficient `c_k ↦ c_{τ_μ k} − c_k`.
pub fn delta_mu(omega: &FormField, mu: usize) -> Result<FormField> {
    if mu >= DIM {
        return Err(Error::InvalidDirection(mu));
    }
    let shape = omega.shape();
    let stride = shape.stride(mu);
    let n = shape.extent(mu);
    let src = omega.coeffs();
    let mut out = FormField::zero(shape);
    let dst = out.coeffs_mut();
    for i in 0..shape.site_count() {
        let k = (i / stride) % n;
        let j = if k + 1 == n { i - k * stride } else { i + stride };
        for b in 0..BLADES {
            dst[BLADES * i + b] = src[BLADES * j + b] - src[BLADES * i + b];
        }
    }
    Ok(out)
}

/// Coefficients and forward differences `Δ_μ` of all blades at one site.
pub(crate) struct SiteDiffs {
    diffs: [[Complex64; BLADES]; DIM],
    value: [Complex64; BLADES],
}

impl SiteDiffs {
    /// `Δ_μ ω^{idx}` for the component with the given ascending indices.
    pub(crate) fn d(&self, mu: usize, idx: &[usize]) -> Complex64 {
        self.diffs[mu][Blade::from_indices(idx).expect("ascending indices").index()]
    }

    /// `ω^{idx}` at this site.
    pub(crate) fn v(&self, idx: &[usize]) -> Complex64 {
        self.value[Blade::from_indices(idx).expect("ascending indices").index()]
    }
}

/// Applies `formula` at every site with access to the forward differences.
pub(crate) fn componentwise(
    omega: &FormField,
    formula: impl Fn(&SiteDiffs, &mut dyn FnMut(&[usize], Complex64)),
) -> FormField {
    let shape = omega.shape();
    let shifts = shape.shift_table();
    let src = omega.coeffs();
    let mut out = FormField::zero(shape);
    let dst = out.coeffs_mut();
    for i in 0..shape.site_count() {
        let diffs = SiteDiffs {
            diffs: std::array::from_fn(|mu| {
                let j = shifts[mu][i];
                std::array::from_fn(|b| src[BLADES * j + b] - src[BLADES * i + b])
            }),
            value: std::array::from_fn(|b| src[BLADES * i + b]),
        };
        let mut put = |idx: &[usize], v: Complex64| {
            let b = Blade::from_indices(idx).expect("ascending indices");
            dst[BLADES * i + b.index()] += v;
        };
        formula(&diffs, &mut put);
    }
    out
}

/// Discrete exterior derivative: grade `r` to grade `r + 1`.
pub fn d_c(omega: &FormField) -> FormField {
    componentwise(omega, |w, put| {
        // 0-forms
        for mu in 0..4 {
            put(&[mu], w.d(mu, &[]));
        }
        // 1-forms
        for mu in 0..4 {
            for nu in mu + 1..4 {
                put(&[mu, nu], w.d(mu, &[nu]) - w.d(nu, &[mu]));
            }
        }
        // 2-forms
        put(&[0, 1, 2], w.d(0, &[1, 2]) - w.d(1, &[0, 2]) + w.d(2, &[0, 1]));
        put(&[0, 1, 3], w.d(0, &[1, 3]) - w.d(1, &[0, 3]) + w.d(3, &[0, 1]));
        put(&[0, 2, 3], w.d(0, &[2, 3]) - w.d(2, &[0, 3]) + w.d(3, &[0, 2]));
        put(&[1, 2, 3], w.d(1, &[2, 3]) - w.d(2, &[1, 3]) + w.d(3, &[1, 2]));
        // 3-forms; 4-forms are closed
        put(
            &[0, 1, 2, 3],
            w.d(0, &[1, 2, 3]) - w.d(1, &[0, 2, 3]) + w.d(2, &[0, 1, 3]) - w.d(3, &[0, 1, 2]),
        );
    })
}

/// Discrete codifferential: grade `r` to grade `r − 1`.
pub fn delta_c(omega: &FormField) -> FormField {
    const E4: &[usize] = &[0, 1, 2, 3];
    componentwise(omega, |w, put| {
        // 0-forms are annihilated; 1-forms
        put(&[], w.d(0, &[0]) - w.d(1, &[1]) - w.d(2, &[2]) - w.d(3, &[3]));
        // 2-forms
        put(&[0], w.d(1, &[0, 1]) + w.d(2, &[0, 2]) + w.d(3, &[0, 3]));
        put(&[1], w.d(0, &[0, 1]) + w.d(2, &[1, 2]) + w.d(3, &[1, 3]));
        put(&[2], w.d(0, &[0, 2]) - w.d(1, &[1, 2]) + w.d(3, &[2, 3]));
        put(&[3], w.d(0, &[0, 3]) - w.d(1, &[1, 3]) - w.d(2, &[2, 3]));
        // 3-forms
        put(&[0, 1], -w.d(2, &[0, 1, 2]) - w.d(3, &[0, 1, 3]));
        put(&[0, 2], w.d(1, &[0, 1, 2]) - w.d(3, &[0, 2, 3]));
        put(&[0, 3], w.d(1, &[0, 1, 3]) + w.d(2, &[0, 2, 3]));
        put(&[1, 2], w.d(0, &[0, 1, 2]) - w.d(3, &[1, 2, 3]));
        put(&[1, 3], w.d(0, &[0, 1, 3]) + w.d(2, &[1, 2, 3]));
        put(&[2, 3], w.d(0, &[0, 2, 3]) - w.d(1, &[1, 2, 3]));
        // 4-forms
        put(&[0, 1, 2], w.d(3, E4));
        put(&[0, 1, 3], -w.d(2, E4));
        put(&[0, 2, 3], w.d(1, E4));
        put(&[1, 2, 3], w.d(0, E4));
    })
}

/// `Σ_μ e_μ Δ_μ Ω`, the Clifford form of `d_c + delta_c`.
pub fn dirac(omega: &FormField) -> FormField {
    let mut out = FormField::zero(omega.shape());
    for mu in 0..DIM {
        let diff = delta_mu(omega, mu).expect("direction in range");
        out.add_assign_unchecked(&diff.mul_const_left(&Multivector::blade(Blade::generator(mu))));
    }
    out
}
