//! Single-band lattices and their retarded Green's functions.
//!
//! Both lattices are parameterized by the incident wave number `k0 ∈ (0, π)`
//! and the energy is derived from it. With that labeling the incoming plane
//! wave `e^{i k0 n}` moves towards increasing site index and the retarded
//! Green's function carries the phase `e^{+i k0 |n - n'|}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest `sin k0` accepted; the closed forms have a `1/sin k0` pole at the band edges.
pub const BAND_EDGE_SIN: f64 = 1e-9;

pub const PHOSPHORENE_T1: f64 = -1.220;
pub const PHOSPHORENE_T2: f64 = 3.665;
pub const PHOSPHORENE_T4: f64 = -0.105;

pub fn check_band_interior(k0: f64) -> Result<()> {
    if k0 > 0.0 && k0 < PI && k0.sin() > BAND_EDGE_SIN {
        Ok(())
    } else {
        Err(Error::BandEdge { k0 })
    }
}

/// Tight-binding chain `H0 = -t Σ (c†_i c_{i+1} + h.c.)` with exchange strength `exchange`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub hopping: f64,
    pub exchange: f64,
}

impl Default for ChainParams {
    fn default() -> Self {
        ChainParams {
            hopping: 1.0,
            exchange: 0.0,
        }
    }
}

impl ChainParams {
    pub fn with_u_prime(u_prime: f64) -> Self {
        let hopping = 1.0;
        ChainParams {
            hopping,
            exchange: u_prime * hopping,
        }
    }

    pub fn u_prime(&self) -> f64 {
        self.exchange / self.hopping
    }

    pub fn dispersion(&self, k0: f64) -> f64 {
        -2.0 * self.hopping * k0.cos()
    }

    /// Inverse of [`dispersion`](Self::dispersion) on `(0, π)`.
    pub fn wave_number(&self, energy: f64) -> f64 {
        (-energy / (2.0 * self.hopping)).acos()
    }

    /// `G(n, n') = e^{i k0 |n - n'|} / (2 i t sin k0)`.
    pub fn green(&self, n: i64, n_prime: i64, k0: f64) -> Result<Complex64> {
        check_band_interior(k0)?;
        let distance = (n - n_prime).unsigned_abs() as f64;
        Ok(Complex64::from_polar(1.0, k0 * distance)
            / Complex64::new(0.0, 2.0 * self.hopping * k0.sin()))
    }
}

/// Edge band of a zigzag phosphorene nanoribbon (A-type edge, row n = 0).
///
/// `t3` and `t5` are dropped; `t4` enters at first order and gives the edge
/// band the dispersion `E0 - 2 t' cos k` with `t' = 2 t1 t4 / t2` and
/// `E0 = -2 t'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZpnrParams {
    pub t1: f64,
    pub t2: f64,
    pub t4: f64,
    pub exchange: f64,
}

impl Default for ZpnrParams {
    fn default() -> Self {
        ZpnrParams {
            t1: PHOSPHORENE_T1,
            t2: PHOSPHORENE_T2,
            t4: PHOSPHORENE_T4,
            exchange: 0.0,
        }
    }
}

impl ZpnrParams {
    /// Default hoppings with `U = u_prime * t'`.
    pub fn with_u_prime(u_prime: f64) -> Self {
        let mut p = ZpnrParams::default();
        p.exchange = u_prime * p.t_prime();
        p
    }

    pub fn t_prime(&self) -> f64 {
        2.0 * self.t1 * self.t4 / self.t2
    }

    pub fn band_center(&self) -> f64 {
        -2.0 * self.t_prime()
    }

    pub fn ratio(&self) -> f64 {
        self.t1 / self.t2
    }

    pub fn u_prime(&self) -> f64 {
        self.exchange / self.t_prime()
    }

    /// Transverse decay factor of the edge state.
    pub fn alpha(&self, k: f64) -> f64 {
        -2.0 * self.ratio() * (k / 2.0).cos()
    }

    /// Edge-row weight `γ²(k) = 1 - α²(k)`.
    pub fn gamma_sq(&self, k: f64) -> f64 {
        1.0 - self.alpha(k).powi(2)
    }

    /// Edge states exist only while `|α(k)| < 1` for every k, i.e. `|2 t1/t2| < 1`.
    pub fn validate(&self) -> Result<()> {
        if !(self.t2 != 0.0 && (2.0 * self.ratio()).abs() < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "no edge state for t1 = {}, t2 = {}: need |2 t1 / t2| < 1",
                self.t1, self.t2
            )));
        }
        if self.t_prime() == 0.0 {
            return Err(Error::InvalidArgument("t' = 2 t1 t4 / t2 vanishes".into()));
        }
        Ok(())
    }

    pub fn dispersion(&self, k0: f64) -> f64 {
        self.band_center() - 2.0 * self.t_prime() * k0.cos()
    }

    /// Propagating part `γ²(k0) / (2 i t' sin k0)`, shared by every matrix element.
    fn propagating(&self, k0: f64) -> Complex64 {
        Complex64::new(self.gamma_sq(k0), 0.0)
            / Complex64::new(0.0, 2.0 * self.t_prime() * k0.sin())
    }

    /// On-site element `G(0,0;0,0)`.
    ///
    /// Besides the propagating pole term, the `e^{±ik}` harmonics of `γ²(k)`
    /// leave a real, k0-independent shift `-(t1/t2)² / t'`.
    pub fn green_diag(&self, k0: f64) -> Result<Complex64> {
        check_band_interior(k0)?;
        Ok(self.propagating(k0) - self.ratio().powi(2) / self.t_prime())
    }

    /// Element `G(m,0;0,0)` between edge sites `m ≥ 1` apart.
    pub fn green_offdiag(&self, separation: u64, k0: f64) -> Result<Complex64> {
        if separation == 0 {
            return Err(Error::ZeroSeparation);
        }
        check_band_interior(k0)?;
        Ok(self.propagating(k0) * Complex64::from_polar(1.0, k0 * separation as f64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lattice {
    Chain(ChainParams),
    Zpnr(ZpnrParams),
}

impl Lattice {
    pub fn chain_with_u_prime(u_prime: f64) -> Self {
        Lattice::Chain(ChainParams::with_u_prime(u_prime))
    }

    pub fn zpnr_with_u_prime(u_prime: f64) -> Self {
        Lattice::Zpnr(ZpnrParams::with_u_prime(u_prime))
    }

    pub fn exchange(&self) -> f64 {
        match self {
            Lattice::Chain(p) => p.exchange,
            Lattice::Zpnr(p) => p.exchange,
        }
    }

    pub fn dispersion(&self, k0: f64) -> f64 {
        match self {
            Lattice::Chain(p) => p.dispersion(k0),
            Lattice::Zpnr(p) => p.dispersion(k0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Lattice::Chain(_) => "chain",
            Lattice::Zpnr(_) => "zpnr",
        }
    }
}

/// Green's function of one lattice at a fixed incident wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensKernel {
    lattice: Lattice,
    k0: f64,
    energy: f64,
}

impl GreensKernel {
    pub fn new(lattice: Lattice, k0: f64) -> Result<Self> {
        check_band_interior(k0)?;
        if let Lattice::Zpnr(p) = &lattice {
            p.validate()?;
        }
        Ok(GreensKernel {
            lattice,
            k0,
            energy: lattice.dispersion(k0),
        })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Element between two sites `distance` apart along the impurity row.
    pub fn element(&self, distance: u64) -> Complex64 {
        // k0 was validated in `new`, so the closed forms cannot fail here.
        match (&self.lattice, distance) {
            (Lattice::Chain(p), d) => p.green(d as i64, 0, self.k0).expect("validated k0"),
            (Lattice::Zpnr(p), 0) => p.green_diag(self.k0).expect("validated k0"),
            (Lattice::Zpnr(p), d) => p.green_offdiag(d, self.k0).expect("validated k0"),
        }
    }

    /// Prefactor `g` with `G(n, n') = g e^{i k0 |n - n'|}` for sites outside the
    /// impurity region; this is what reaches the asymptotic reflected and
    /// transmitted waves.
    pub fn asymptotic_prefactor(&self) -> Complex64 {
        match &self.lattice {
            Lattice::Chain(p) => p.green(0, 0, self.k0).expect("validated k0"),
            Lattice::Zpnr(p) => p.propagating(self.k0),
        }
    }
}
