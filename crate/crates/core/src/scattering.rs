//! Two-impurity exchange scattering by the transition-operator method.
//!
//! The impurities sit at sites 0 and m of the impurity row. The potential is
//! `V = V00 ⊗ |0><0| + Vmm ⊗ |m><m|` with `V00 = U S_e·S_L` and
//! `Vmm = U S_e·S_R`. Restricting the Lippmann-Schwinger equation to the two
//! impurity sites gives a 16-dimensional linear system `(1 - χ) x = ψ_in`;
//! the auxiliary spin states `s0 = V00 x0`, `sm = Vmm xm` then fix the
//! reflected and transmitted spin states at every site outside `[0, m]`.

use nalgebra::{DMatrix, DVector, SMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{GreensKernel, Lattice};
use crate::spin::{embed_pair, heisenberg_pair, Op8, SpinVector};

/// Largest accepted condition number of the scattering system.
pub const MAX_CONDITION: f64 = 1e12;

pub type Op16 = SMatrix<Complex64, 16, 16>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterProblem {
    pub lattice: Lattice,
    /// Distance between the impurities; 0 puts both on the same site.
    pub separation: usize,
    pub k0: f64,
    pub initial: SpinVector,
}

impl ScatterProblem {
    pub fn new(lattice: Lattice, separation: usize, k0: f64, initial: SpinVector) -> Self {
        ScatterProblem {
            lattice,
            separation,
            k0,
            initial,
        }
    }
}

/// Exchange potentials on the impurity sites.
#[derive(Debug, Clone, PartialEq)]
pub struct Potentials {
    /// `V00`, or `V00 + Vmm` when both impurities share site 0.
    pub site0: Op8,
    /// `Vmm`; absent when the separation is zero.
    pub site_m: Option<Op8>,
}

/// `(U S_e·S_L, U S_e·S_R)` on the three-qubit space.
pub fn exchange_operators(exchange: f64) -> (Op8, Op8) {
    let u = Complex64::new(exchange, 0.0);
    let h = heisenberg_pair();
    let left = embed_pair(&h, 1, 2).expect("valid pair") * u;
    let right = embed_pair(&h, 1, 3).expect("valid pair") * u;
    (left, right)
}

pub fn build_potentials(problem: &ScatterProblem) -> Potentials {
    let (v00, vmm) = exchange_operators(problem.lattice.exchange());
    if problem.separation == 0 {
        Potentials {
            site0: v00 + vmm,
            site_m: None,
        }
    } else {
        Potentials {
            site0: v00,
            site_m: Some(vmm),
        }
    }
}

/// `χ = [[G00, G0m], [Gm0, Gmm]] · diag(V00, Vmm)` for impurities `separation ≥ 1` apart.
pub fn build_chi(kernel: &GreensKernel, separation: usize, v00: &Op8, vmm: &Op8) -> Result<Op16> {
    if separation == 0 {
        return Err(Error::InvalidArgument(
            "the two-site system needs distinct impurity sites".into(),
        ));
    }
    let g_on = kernel.element(0);
    let g_off = kernel.element(separation as u64);
    let mut chi = Op16::zeros();
    chi.fixed_view_mut::<8, 8>(0, 0).copy_from(&(v00 * g_on));
    chi.fixed_view_mut::<8, 8>(0, 8).copy_from(&(vmm * g_off));
    chi.fixed_view_mut::<8, 8>(8, 0).copy_from(&(v00 * g_off));
    chi.fixed_view_mut::<8, 8>(8, 8).copy_from(&(vmm * g_on));
    Ok(chi)
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense LU solve with a 1-norm condition-number guard.
pub(crate) fn solve_guarded(
    a: DMatrix<Complex64>,
    b: DVector<Complex64>,
    k0: f64,
) -> Result<DVector<Complex64>> {
    let norm = one_norm(&a);
    let lu = a.lu();
    let inverse = lu.try_inverse().ok_or(Error::Singular {
        k0,
        condition: f64::INFINITY,
    })?;
    let condition = norm * one_norm(&inverse);
    if condition.is_nan() || condition > MAX_CONDITION {
        return Err(Error::Singular { k0, condition });
    }
    lu.solve(&b).ok_or(Error::Singular { k0, condition })
}

fn to_dmatrix<const N: usize>(m: &SMatrix<Complex64, N, N>) -> DMatrix<Complex64> {
    DMatrix::from_column_slice(N, N, m.as_slice())
}

fn spin_block(v: &DVector<Complex64>, block: usize) -> SpinVector {
    let mut out = SpinVector::zero();
    out.amp.copy_from(&v.rows(8 * block, 8));
    out
}

/// Auxiliary spin states `(s0, sm)` with `V (1 - χ)^{-1} |ψ_in> = |s0>|0> + |sm>|m>`.
///
/// For coincident impurities `sm` is zero and `s0` carries the full single-site response.
pub fn solve_auxiliary(problem: &ScatterProblem) -> Result<(SpinVector, SpinVector)> {
    let kernel = GreensKernel::new(problem.lattice, problem.k0)?;
    auxiliary_with_kernel(problem, &kernel)
}

fn auxiliary_with_kernel(
    problem: &ScatterProblem,
    kernel: &GreensKernel,
) -> Result<(SpinVector, SpinVector)> {
    let pots = build_potentials(problem);
    let k0 = problem.k0;
    match &pots.site_m {
        None => {
            let g = kernel.element(0);
            let a = Op8::identity() - pots.site0 * g;
            let b = DVector::from_column_slice(problem.initial.amp.as_slice());
            let x = solve_guarded(to_dmatrix(&a), b, k0)?;
            let x = spin_block(&x, 0);
            Ok((x.apply(&pots.site0), SpinVector::zero()))
        }
        Some(vmm) => {
            let chi = build_chi(kernel, problem.separation, &pots.site0, vmm)?;
            let a = Op16::identity() - chi;
            let phase = Complex64::from_polar(1.0, k0 * problem.separation as f64);
            let mut b = DVector::zeros(16);
            b.rows_mut(0, 8).copy_from(&problem.initial.amp);
            b.rows_mut(8, 8).copy_from(&(problem.initial.amp * phase));
            let x = solve_guarded(to_dmatrix(&a), b, k0)?;
            Ok((
                spin_block(&x, 0).apply(&pots.site0),
                spin_block(&x, 1).apply(vmm),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterOutcome {
    pub k0: f64,
    pub energy: f64,
    pub reflection: f64,
    pub transmission: f64,
    /// Spin state carried by the reflected wave `e^{-i k0 n}`, `n < 0`.
    pub reflected: SpinVector,
    /// Spin state carried by the transmitted wave `e^{i k0 n}`, `n > m`.
    pub transmitted: SpinVector,
    pub s0: SpinVector,
    pub sm: SpinVector,
}

/// Solves one scattering problem.
///
/// Outside the impurity region every Green's element is `g e^{i k0 |n - n'|}`,
/// so the site-dependent phases cancel against the plane waves and
/// `S_R = g (s0 + e^{i k0 m} sm)`, `S_T = χ_in + g (s0 + e^{-i k0 m} sm)`.
pub fn scatter(problem: &ScatterProblem) -> Result<ScatterOutcome> {
    let kernel = GreensKernel::new(problem.lattice, problem.k0)?;
    let (s0, sm) = auxiliary_with_kernel(problem, &kernel)?;
    let g = kernel.asymptotic_prefactor();
    let phase = Complex64::from_polar(1.0, problem.k0 * problem.separation as f64);
    let reflected = (s0 + sm * phase) * g;
    let transmitted = problem.initial + (s0 + sm * phase.conj()) * g;
    Ok(ScatterOutcome {
        k0: problem.k0,
        energy: kernel.energy(),
        reflection: reflected.norm_sqr(),
        transmission: transmitted.norm_sqr(),
        reflected,
        transmitted,
        s0,
        sm,
    })
}
