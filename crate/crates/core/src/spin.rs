//! Dense algebra over the electron ⊗ impurity-L ⊗ impurity-R spin space.
//!
//! Basis index of a product state is `b = 4*a1 + 2*a2 + a3` where `a = 0` is
//! spin up and `a = 1` spin down; qubit 1 is the electron, qubit 2 the
//! impurity on site 0 and qubit 3 the impurity on site m. Two-qubit operators
//! use the same convention with index `2*ai + aj`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix4, SMatrix, SVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Operator on two qubits.
pub type Op4 = Matrix4<Complex64>;
/// Operator on the full three-qubit spin space.
pub type Op8 = SMatrix<Complex64, 8, 8>;

const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    fn from_bit(bit: usize) -> Self {
        if bit == 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }
}

/// A product state of (electron, impurity-L, impurity-R).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinLabel(pub [Spin; 3]);

impl SpinLabel {
    pub fn index(self) -> usize {
        let [a1, a2, a3] = self.0;
        4 * a1.bit() + 2 * a2.bit() + a3.bit()
    }

    pub fn from_index(index: usize) -> Option<Self> {
        (index < 8).then(|| {
            SpinLabel([
                Spin::from_bit((index >> 2) & 1),
                Spin::from_bit((index >> 1) & 1),
                Spin::from_bit(index & 1),
            ])
        })
    }

    /// Parses labels such as `"udd"` (electron up, both impurities down).
    pub fn parse(s: &str) -> Result<Self> {
        let spins: Vec<Spin> = s
            .chars()
            .map(|c| match c {
                'u' | 'U' => Ok(Spin::Up),
                'd' | 'D' => Ok(Spin::Down),
                _ => Err(Error::InvalidSpinLabel(s.to_string())),
            })
            .collect::<Result<_>>()?;
        let spins: [Spin; 3] = spins
            .try_into()
            .map_err(|_| Error::InvalidSpinLabel(s.to_string()))?;
        Ok(SpinLabel(spins))
    }

    pub fn all() -> impl Iterator<Item = SpinLabel> {
        (0..8).filter_map(SpinLabel::from_index)
    }

    /// Total S_z in units of hbar.
    pub fn total_sz(self) -> f64 {
        self.0
            .iter()
            .map(|s| match s {
                Spin::Up => 0.5,
                Spin::Down => -0.5,
            })
            .sum()
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            f.write_str(match s {
                Spin::Up => "u",
                Spin::Down => "d",
            })?;
        }
        Ok(())
    }
}

/// Amplitudes over the eight product states. Not necessarily normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVector {
    pub amp: SVector<Complex64, 8>,
}

impl SpinVector {
    pub fn zero() -> Self {
        SpinVector {
            amp: SVector::zeros(),
        }
    }

    pub fn basis(label: SpinLabel) -> Self {
        let mut v = Self::zero();
        v.amp[label.index()] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_amplitudes(amp: [Complex64; 8]) -> Self {
        SpinVector {
            amp: SVector::from(amp),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|self><self|`.
    pub fn projector(&self) -> Op8 {
        self.amp * self.amp.adjoint()
    }

    pub fn apply(&self, op: &Op8) -> SpinVector {
        SpinVector { amp: op * self.amp }
    }

    pub fn inner(&self, other: &SpinVector) -> Complex64 {
        self.amp.dotc(&other.amp)
    }
}

impl From<SpinLabel> for SpinVector {
    fn from(label: SpinLabel) -> Self {
        SpinVector::basis(label)
    }
}

impl Add for SpinVector {
    type Output = SpinVector;
    fn add(self, rhs: SpinVector) -> SpinVector {
        SpinVector {
            amp: self.amp + rhs.amp,
        }
    }
}

impl Sub for SpinVector {
    type Output = SpinVector;
    fn sub(self, rhs: SpinVector) -> SpinVector {
        SpinVector {
            amp: self.amp - rhs.amp,
        }
    }
}

impl Mul<Complex64> for SpinVector {
    type Output = SpinVector;
    fn mul(self, rhs: Complex64) -> SpinVector {
        SpinVector {
            amp: self.amp * rhs,
        }
    }
}

/// A 4×4 operator on the two impurities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    pub mat: Op4,
    /// Whether `mat` has been divided by its trace.
    pub normalized: bool,
}

impl DensityMatrix {
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }
}

/// Which impurity a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Left,
    Right,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `S_i · S_j` for two spin-1/2 particles: 1/4 on the triplet, −3/4 on the singlet.
pub fn heisenberg_pair() -> Op4 {
    let mut m = Op4::zeros();
    m[(0, 0)] = c(0.25);
    m[(1, 1)] = c(-0.25);
    m[(2, 2)] = c(-0.25);
    m[(3, 3)] = c(0.25);
    m[(1, 2)] = c(0.5);
    m[(2, 1)] = c(0.5);
    m
}

/// Embeds a two-qubit operator on qubits `(i, j)` (1-based, `i < j`) into the
/// three-qubit space, acting as identity on the remaining qubit.
pub fn embed_pair(pair_op: &Op4, i: usize, j: usize) -> Result<Op8> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) || i >= j {
        return Err(Error::InvalidQubitPair(i, j));
    }
    let spectator = 6 - i - j;
    let bit = |b: usize, q: usize| (b >> (3 - q)) & 1;
    let mut out = Op8::zeros();
    for row in 0..8 {
        for col in 0..8 {
            if bit(row, spectator) != bit(col, spectator) {
                continue;
            }
            let r = 2 * bit(row, i) + bit(row, j);
            let s = 2 * bit(col, i) + bit(col, j);
            out[(row, col)] = pair_op[(r, s)];
        }
    }
    Ok(out)
}

/// Total S_z of the three spins, diagonal in the product basis.
pub fn total_sz() -> Op8 {
    let mut out = Op8::zeros();
    for label in SpinLabel::all() {
        let b = label.index();
        out[(b, b)] = c(label.total_sz());
    }
    out
}

/// Traces out the electron spin (qubit 1).
pub fn partial_trace_electron(op: &Op8) -> Op4 {
    let mut out = Op4::zeros();
    for r in 0..4 {
        for s in 0..4 {
            out[(r, s)] = op[(r, s)] + op[(r + 4, s + 4)];
        }
    }
    out
}

/// Transposes the indices of one impurity only.
pub fn partial_transpose(rho: &Op4, subsystem: Subsystem) -> Op4 {
    let mut out = Op4::zeros();
    for a2 in 0..2 {
        for a3 in 0..2 {
            for b2 in 0..2 {
                for b3 in 0..2 {
                    let (r, s) = match subsystem {
                        Subsystem::Right => (2 * a2 + b3, 2 * b2 + a3),
                        Subsystem::Left => (2 * b2 + a3, 2 * a2 + b3),
                    };
                    out[(2 * a2 + a3, 2 * b2 + b3)] = rho[(r, s)];
                }
            }
        }
    }
    out
}

/// Largest entry of `|M - M†|`.
pub fn hermiticity_deviation(m: &Op4) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Real eigenvalues of a 4×4 Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &Op4) -> Result<[f64; 4]> {
    let deviation = hermiticity_deviation(m);
    if deviation.is_nan() || deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (m + m.adjoint()) * c(0.5);
    let mut eig: [f64; 4] = SymmetricEigen::new(sym).eigenvalues.into();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn op_norm<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
        m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn random_hermitian(vals: &[f64]) -> Op4 {
        let mut m = Op4::zeros();
        let mut it = vals.iter().copied();
        for r in 0..4 {
            m[(r, r)] = c(it.next().unwrap());
            for s in (r + 1)..4 {
                let z = Complex64::new(it.next().unwrap(), it.next().unwrap());
                m[(r, s)] = z;
                m[(s, r)] = z.conj();
            }
        }
        m
    }

    fn random_unitary(vals: &[f64]) -> Op4 {
        let m = Op4::from_iterator(vals.chunks(2).map(|p| Complex64::new(p[0], p[1])).take(16));
        m.qr().q()
    }

    #[test]
    fn label_index_convention() {
        assert_eq!(SpinLabel::parse("udd").unwrap().index(), 3);
        assert_eq!(SpinLabel::parse("uuu").unwrap().index(), 0);
        assert_eq!(SpinLabel::parse("ddd").unwrap().index(), 7);
        for b in 0..8 {
            let label = SpinLabel::from_index(b).unwrap();
            assert_eq!(label.index(), b);
            assert_eq!(SpinLabel::parse(&label.to_string()).unwrap(), label);
        }
        assert!(SpinLabel::from_index(8).is_none());
        assert!(SpinLabel::parse("ud").is_err());
        assert!(SpinLabel::parse("udx").is_err());
        assert!(SpinLabel::parse("uddd").is_err());
    }

    #[test]
    fn heisenberg_pair_entries_and_spectrum() {
        let h = heisenberg_pair();
        assert_eq!(h[(0, 0)], c(0.25));
        assert_eq!(h[(1, 2)], c(0.5));
        assert_eq!(h, h.adjoint());
        let eig = hermitian_eigenvalues(&h).unwrap();
        let expected = [-0.75, 0.25, 0.25, 0.25];
        for (a, b) in eig.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn embed_identity_and_bad_pairs() {
        assert_eq!(embed_pair(&Op4::identity(), 1, 2).unwrap(), Op8::identity());
        assert_eq!(embed_pair(&Op4::identity(), 1, 3).unwrap(), Op8::identity());
        assert!(embed_pair(&Op4::identity(), 2, 1).is_err());
        assert!(embed_pair(&Op4::identity(), 2, 2).is_err());
        assert!(embed_pair(&Op4::identity(), 0, 2).is_err());
        assert!(embed_pair(&Op4::identity(), 1, 4).is_err());
    }

    #[test]
    fn embed_acts_on_chosen_qubits() {
        let h = heisenberg_pair();
        let uud = SpinVector::basis(SpinLabel::parse("uud").unwrap());
        let out = uud.apply(&embed_pair(&h, 1, 2).unwrap());
        assert_eq!(out, uud * c(0.25));

        // S1·S3 on |↑↓↓>: qubits 1 and 3 are in ↑↓, flip-flop to ↓↓↑.
        let udd = SpinVector::basis(SpinLabel::parse("udd").unwrap());
        let ddu = SpinVector::basis(SpinLabel::parse("ddu").unwrap());
        let out = udd.apply(&embed_pair(&h, 1, 3).unwrap());
        let expected = udd * c(-0.25) + ddu * c(0.5);
        assert_abs_diff_eq!(op_norm_v(&(out - expected)), 0.0, epsilon = 1e-15);
    }

    fn op_norm_v(v: &SpinVector) -> f64 {
        v.norm_sqr().sqrt()
    }

    #[test]
    fn embedded_exchange_commutes_with_total_sz() {
        let sz = total_sz();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let op = embed_pair(&heisenberg_pair(), i, j).unwrap();
            assert!(op_norm(&(op * sz - sz * op)) < 1e-14);
            assert_eq!(op, op.adjoint());
        }
    }

    #[test]
    fn embedding_doubles_multiplicities() {
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let op = embed_pair(&heisenberg_pair(), i, j).unwrap();
            let mut eig: Vec<f64> = SymmetricEigen::new(op)
                .eigenvalues
                .iter()
                .copied()
                .collect();
            eig.sort_by(f64::total_cmp);
            let expected = [-0.75, -0.75, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25];
            for (a, b) in eig.iter().zip(expected) {
                assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_examples() {
        let udd = SpinVector::basis(SpinLabel::parse("udd").unwrap());
        let rho = partial_trace_electron(&udd.projector());
        let mut dd = Op4::zeros();
        dd[(3, 3)] = c(1.0);
        assert_eq!(rho, dd);

        // (|↑↓↓> + |↓↑↓>)/√2: electron states differ, so no coherence survives.
        let dud = SpinVector::basis(SpinLabel::parse("dud").unwrap());
        let v = (udd + dud) * c(std::f64::consts::FRAC_1_SQRT_2);
        let rho = partial_trace_electron(&v.projector());
        let mut expected = Op4::zeros();
        expected[(3, 3)] = c(0.5);
        expected[(1, 1)] = c(0.5);
        assert!(op_norm(&(rho - expected)) < 1e-15);

        assert_eq!(
            partial_trace_electron(&Op8::identity()),
            Op4::identity() * c(2.0)
        );
    }

    #[test]
    fn singlet_partial_transpose_has_negative_half() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = nalgebra::Vector4::new(c(0.0), c(s), c(-s), c(0.0));
        let rho = psi * psi.adjoint();
        for sub in [Subsystem::Left, Subsystem::Right] {
            let eig = hermitian_eigenvalues(&partial_transpose(&rho, sub)).unwrap();
            assert_abs_diff_eq!(eig[0], -0.5, epsilon = 1e-12);
            for e in &eig[1..] {
                assert_abs_diff_eq!(*e, 0.5, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = Op4::from_diagonal(&nalgebra::Vector4::new(c(3.0), c(1.0), c(4.0), c(2.0)));
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), [1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = Op4::identity();
        m[(0, 1)] = c(1e-6);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
        m[(0, 1)] = c(1e-12);
        assert!(hermitian_eigenvalues(&m).is_ok());
    }

    proptest! {
        #[test]
        fn partial_trace_preserves_norm(vals in prop::collection::vec(-1.0f64..1.0, 16)) {
            let amp: Vec<Complex64> = vals.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
            let v = SpinVector::from_amplitudes(amp.try_into().unwrap());
            let rho = partial_trace_electron(&v.projector());
            prop_assert!((rho.trace().re - v.norm_sqr()).abs() < 1e-14);
            prop_assert!(rho.trace().im.abs() < 1e-14);
        }

        #[test]
        fn partial_transpose_keeps_trace_and_hermiticity(vals in prop::collection::vec(-1.0f64..1.0, 16)) {
            let rho = random_hermitian(&vals);
            for sub in [Subsystem::Left, Subsystem::Right] {
                let pt = partial_transpose(&rho, sub);
                prop_assert!((pt.trace() - rho.trace()).norm() < 1e-14);
                prop_assert!(hermiticity_deviation(&pt) < 1e-15);
                prop_assert_eq!(partial_transpose(&pt, sub), rho);
            }
        }

        #[test]
        fn product_states_stay_positive_under_partial_transpose(vals in prop::collection::vec(-1.0f64..1.0, 8)) {
            let a = nalgebra::Vector2::new(Complex64::new(vals[0], vals[1]), Complex64::new(vals[2], vals[3]));
            let b = nalgebra::Vector2::new(Complex64::new(vals[4], vals[5]), Complex64::new(vals[6], vals[7]));
            prop_assume!(a.norm() > 1e-3 && b.norm() > 1e-3);
            let psi = a.normalize().kronecker(&b.normalize());
            let rho: Op4 = psi * psi.adjoint();
            let before = hermitian_eigenvalues(&rho).unwrap();
            let after = hermitian_eigenvalues(&partial_transpose(&rho, Subsystem::Right)).unwrap();
            for (x, y) in before.iter().zip(after) {
                prop_assert!((x - y).abs() < 1e-12);
                prop_assert!(y > -1e-12);
            }
        }

        #[test]
        fn spectrum_is_unitarily_invariant(
            h in prop::collection::vec(-1.0f64..1.0, 16),
            u in prop::collection::vec(-1.0f64..1.0, 32),
        ) {
            let m = random_hermitian(&h);
            let q = random_unitary(&u);
            let conj = q * m * q.adjoint();
            let e0 = hermitian_eigenvalues(&m).unwrap();
            let e1 = hermitian_eigenvalues(&conj).unwrap();
            let trace: f64 = e0.iter().sum();
            prop_assert!((trace - m.trace().re).abs() < 1e-12);
            for (a, b) in e0.iter().zip(e1) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
