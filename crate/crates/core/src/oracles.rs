//! Slow, independent reference solutions used to check the closed forms.
//!
//! * [`wave_matching`] solves the chain Schrödinger equation directly on the
//!   sites around the impurities with plane-wave boundary conditions.
//! * [`spinless_transfer`] propagates a scalar wave through on-site defects
//!   with 2×2 transfer matrices.
//! * [`quadrature_green`] integrates the edge-band spectral representation of
//!   the phosphorene Green's function numerically.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{check_band_interior, Lattice, ZpnrParams};
use crate::scattering::{build_potentials, solve_guarded, ScatterProblem};
use crate::spin::{Op8, SpinVector};

/// Side from which the electron arrives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Incidence {
    /// From `n → -∞`, moving towards larger site index.
    #[default]
    Left,
    /// From `n → +∞`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveMatch {
    pub reflection: f64,
    pub transmission: f64,
    pub reflected: SpinVector,
    pub transmitted: SpinVector,
}

/// Direct solution of `E ψ(n) = -t [ψ(n-1) + ψ(n+1)] + V(n) ψ(n)` on the chain.
///
/// For left incidence `ψ(n) = e^{ikn} χ + e^{-ikn} r` for `n ≤ -1` and
/// `ψ(n) = e^{ikn} τ` for `n ≥ m+1`; the unknowns `r`, `ψ(0..=m)`, `τ` are
/// fixed by the equations on sites `-1..=m+1`. Right incidence mirrors the
/// boundary conditions.
pub fn wave_matching(problem: &ScatterProblem, incidence: Incidence) -> Result<WaveMatch> {
    let Lattice::Chain(params) = problem.lattice else {
        return Err(Error::ChainOnly("wave matching"));
    };
    let k = problem.k0;
    check_band_interior(k)?;
    let t = params.hopping;
    let energy = params.dispersion(k);
    let m = problem.separation as i64;
    let pots = build_potentials(problem);
    let potential = |n: i64| -> Op8 {
        if n == 0 {
            pots.site0
        } else if n == m {
            pots.site_m.expect("distinct sites")
        } else {
            Op8::zeros()
        }
    };

    // Blocks: 0 = outgoing amplitude on the left, 1..=m+1 = ψ(0..=m), m+2 = right.
    let blocks = (m + 3) as usize;
    let left_block = 0usize;
    let right_block = blocks - 1;
    let dim = 8 * blocks;
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    let mut b = DVector::<Complex64>::zeros(dim);
    let chi = problem.initial.amp;
    let wave = |n: i64, sign: f64| Complex64::from_polar(1.0, sign * k * n as f64);

    for (eq, n) in (-1..=m + 1).enumerate() {
        let row = 8 * eq;
        for (j, diag) in [(n - 1, None), (n, Some(())), (n + 1, None)] {
            let op: Op8 = match diag {
                Some(()) => Op8::identity() * Complex64::new(energy, 0.0) - potential(n),
                None => Op8::identity() * Complex64::new(t, 0.0),
            };
            let (block, coeff) = if j < 0 {
                if incidence == Incidence::Left {
                    let known = (op * chi) * wave(j, 1.0);
                    let mut seg = b.rows_mut(row, 8);
                    seg -= known;
                }
                (left_block, wave(j, -1.0))
            } else if j > m {
                if incidence == Incidence::Right {
                    let known = (op * chi) * wave(j, -1.0);
                    let mut seg = b.rows_mut(row, 8);
                    seg -= known;
                }
                (right_block, wave(j, 1.0))
            } else {
                (1 + j as usize, Complex64::new(1.0, 0.0))
            };
            let mut view = a.view_mut((row, 8 * block), (8, 8));
            view += op * coeff;
        }
    }

    let x = solve_guarded(a, b, k)?;
    let block = |i: usize| {
        let mut v = SpinVector::zero();
        v.amp.copy_from(&x.rows(8 * i, 8));
        v
    };
    let (reflected, transmitted) = match incidence {
        Incidence::Left => (block(left_block), block(right_block)),
        Incidence::Right => (block(right_block), block(left_block)),
    };
    Ok(WaveMatch {
        reflection: reflected.norm_sqr(),
        transmission: transmitted.norm_sqr(),
        reflected,
        transmitted,
    })
}

/// Transmission of a scalar wave through on-site defects `(site, strength)` on
/// the chain with hopping `-t`.
pub fn defect_transmission(hopping: f64, defects: &[(i64, f64)], k0: f64) -> Result<f64> {
    check_band_interior(k0)?;
    if defects.is_empty() {
        return Ok(1.0);
    }
    let energy = -2.0 * hopping * k0.cos();
    let first = defects.iter().map(|d| d.0).min().expect("non-empty");
    let last = defects.iter().map(|d| d.0).max().expect("non-empty");
    let one = Complex64::new(1.0, 0.0);

    // (ψ_{n+1}, ψ_n) = [[(u_n - E)/t, -1], [1, 0]] (ψ_n, ψ_{n-1})
    let mut transfer = Matrix2::<Complex64>::identity();
    for n in first..=last {
        let u: f64 = defects.iter().filter(|d| d.0 == n).map(|d| d.1).sum();
        let step = Matrix2::new(
            Complex64::new((u - energy) / hopping, 0.0),
            -one,
            one,
            Complex64::new(0.0, 0.0),
        );
        transfer = step * transfer;
    }
    let plane = |n: i64| {
        let e = |s: f64, j: i64| Complex64::from_polar(1.0, s * k0 * j as f64);
        Matrix2::new(e(1.0, n), e(-1.0, n), e(1.0, n - 1), e(-1.0, n - 1))
    };
    let to_right = plane(last + 1)
        .try_inverse()
        .ok_or(Error::BandEdge { k0 })?;
    let p = to_right * transfer * plane(first);
    // (C, 0) = p (1, B)
    let reflected = -p[(1, 0)] / p[(1, 1)];
    let out = p * Vector2::new(one, reflected);
    Ok(out[0].norm_sqr())
}

/// Two equal scalar defects of strength `u_eff` at sites 0 and `separation`
/// (added together when `separation` is zero).
pub fn spinless_transfer(hopping: f64, u_eff: f64, separation: usize, k0: f64) -> Result<f64> {
    defect_transmission(hopping, &[(0, u_eff), (separation as i64, u_eff)], k0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Broadening standing in for `i0⁺`, in energy units of the lattice.
    pub eta: f64,
    /// Midpoint panels over `[-π, π]`.
    pub n_points: usize,
    /// Accepted extrapolation error.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            eta: 1e-3,
            n_points: 2_000_000,
            tolerance: 1e-3,
        }
    }
}

const LEVELS: usize = 4;
const CHUNK: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    /// Richardson extrapolation to zero broadening.
    pub value: Complex64,
    /// Raw integrals at `eta`, `eta/2`, `eta/4`, `eta/8`.
    pub raw: [(f64, Complex64); LEVELS],
    pub error_estimate: f64,
}

/// Edge-row Green's function `G(m,0;0,0)` by numerical integration of
/// `(1/2π) ∫ γ²(k) e^{ikm} / (E - E_k + iη) dk` with `E_k = E0 - 2t' cos k`.
///
/// The integral is evaluated at four broadenings in one pass and extrapolated
/// to `η → 0`. Panel sums are formed in fixed-size chunks and reduced in order,
/// so the result does not depend on the thread count.
pub fn quadrature_green(
    params: &ZpnrParams,
    separation: u64,
    k0: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureEstimate> {
    if spec.eta.is_nan() || spec.eta <= 0.0 || spec.n_points < 100_000 {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs eta > 0 and n_points >= 1e5 (got {}, {})",
            spec.eta, spec.n_points
        )));
    }
    check_band_interior(k0)?;
    params.validate()?;
    let energy = params.dispersion(k0);
    let etas: [f64; LEVELS] = std::array::from_fn(|i| spec.eta / (1u32 << i) as f64);
    let n = spec.n_points;
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let m = separation as f64;

    let partials: Vec<[Complex64; LEVELS]> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = [Complex64::new(0.0, 0.0); LEVELS];
            for j in chunk * CHUNK..((chunk + 1) * CHUNK).min(n) {
                let k = -std::f64::consts::PI + h * (j as f64 + 0.5);
                let numerator = Complex64::from_polar(params.gamma_sq(k), k * m);
                let detuning = energy - params.dispersion(k);
                for (a, eta) in acc.iter_mut().zip(etas) {
                    *a += numerator / Complex64::new(detuning, eta);
                }
            }
            acc
        })
        .collect();

    let mut sums = [Complex64::new(0.0, 0.0); LEVELS];
    for p in &partials {
        for (s, v) in sums.iter_mut().zip(p) {
            *s += v;
        }
    }
    let scale = h / (2.0 * std::f64::consts::PI);
    let raw: [(f64, Complex64); LEVELS] = std::array::from_fn(|i| (etas[i], sums[i] * scale));

    // Richardson table for an error series in powers of η, halving each level.
    let mut table = [[Complex64::new(0.0, 0.0); LEVELS]; LEVELS];
    for i in 0..LEVELS {
        table[i][0] = raw[i].1;
        for j in 1..=i {
            let factor = (1u32 << j) as f64 - 1.0;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
        }
    }
    let value = table[LEVELS - 1][LEVELS - 1];
    let error_estimate = (value - table[LEVELS - 1][LEVELS - 2]).norm();
    if error_estimate.is_nan() || error_estimate > spec.tolerance {
        return Err(Error::OracleFailure {
            estimate: error_estimate,
            tolerance: spec.tolerance,
        });
    }
    Ok(QuadratureEstimate {
        value,
        raw,
        error_estimate,
    })
}
