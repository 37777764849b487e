//! Reduced impurity states and their negativity.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin::{
    hermitian_eigenvalues, partial_trace_electron, partial_transpose, DensityMatrix, Op4,
    SpinVector, Subsystem,
};

/// Norm below which a scattered channel is treated as empty.
pub const EMPTY_CHANNEL: f64 = 1e-14;

/// How the reflected and transmitted impurity states are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineMode {
    /// `R ρ_R + T ρ_T`: the impurity state after tracing out the electron's
    /// position and spin. Trace one.
    #[default]
    Weighted,
    /// `ρ_R + ρ_T` of the two normalized channel states. Trace two.
    Sum,
}

impl CombineMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CombineMode::Weighted => "weighted",
            CombineMode::Sum => "paper_sum",
        }
    }
}

impl fmt::Display for CombineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CombineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weighted" => Ok(CombineMode::Weighted),
            "paper_sum" | "sum" => Ok(CombineMode::Sum),
            _ => Err(Error::InvalidArgument(format!(
                "unknown combine mode {s:?} (expected weighted or paper_sum)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    /// Normalized reflected-channel state; `None` when nothing is reflected.
    pub rho_r: Option<DensityMatrix>,
    pub rho_t: Option<DensityMatrix>,
    pub rho_total: DensityMatrix,
    pub neg_r: f64,
    pub neg_t: f64,
    pub neg_total: f64,
    pub mode: CombineMode,
}

fn channel(state: &SpinVector) -> Option<(f64, DensityMatrix)> {
    let weight = state.norm_sqr();
    (weight > EMPTY_CHANNEL).then(|| {
        let mat = partial_trace_electron(&state.projector()) / Complex64::new(weight, 0.0);
        (
            weight,
            DensityMatrix {
                mat,
                normalized: true,
            },
        )
    })
}

/// Builds the reduced impurity states of both channels and their negativities.
pub fn density_matrices(
    reflected: &SpinVector,
    transmitted: &SpinVector,
    mode: CombineMode,
) -> Result<EntanglementReport> {
    let r = channel(reflected);
    let t = channel(transmitted);
    if r.is_none() && t.is_none() {
        return Err(Error::UndefinedState);
    }
    let mut total = Op4::zeros();
    for (weight, rho) in r.iter().chain(t.iter()) {
        let w = match mode {
            CombineMode::Weighted => *weight,
            CombineMode::Sum => 1.0,
        };
        total += rho.mat * Complex64::new(w, 0.0);
    }
    let rho_total = DensityMatrix {
        mat: total,
        normalized: false,
    };
    let neg = |c: &Option<(f64, DensityMatrix)>| -> Result<f64> {
        c.as_ref().map_or(Ok(0.0), |(_, rho)| negativity(&rho.mat))
    };
    Ok(EntanglementReport {
        rho_r: r.map(|(_, rho)| rho),
        rho_t: t.map(|(_, rho)| rho),
        neg_r: neg(&r)?,
        neg_t: neg(&t)?,
        neg_total: negativity(&rho_total.mat)?,
        rho_total,
        mode,
    })
}

/// Sum of the magnitudes of the negative eigenvalues of `rho^{T_R}`.
pub fn negativity(rho: &Op4) -> Result<f64> {
    let eig = hermitian_eigenvalues(&partial_transpose(rho, Subsystem::Right))?;
    Ok(eig.iter().filter(|&&e| e < 0.0).fold(0.0, |acc, e| acc - e))
}
