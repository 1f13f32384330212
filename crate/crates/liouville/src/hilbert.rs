//! Truncated Fock basis: operator construction and the Liouville-space
//! embedding (vectorization, Hilbert-Schmidt inner product, trace functional).
//!
//! The flattening convention is row-major: the component of `|A)` at index
//! `x * d + x'` is the matrix element `A[x, x']`, so the kernel of a
//! superoperator is literally its dense matrix in this layout.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = Array2<C64>;
pub type CVector = Array1<C64>;

/// Models couple level n to n±2; anything below this is degenerate.
pub const MIN_DIM: usize = 4;

/// Truncated Fock basis together with the physical constants ħ, m, ω.
///
/// Defaults are dimensionless (ħ = m = ω = 1) so the oscillator spectrum is
/// `n + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockBasis {
    pub dim: usize,
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

/// How to realize the oscillator Hamiltonian on the truncated basis.
///
/// `Analytic` is the exact diagonal `ħω(n + 1/2)` and feeds spectral
/// superoperator functions; `Constructed` is `p²/2m + mω²q²/2` from the
/// truncated ladder operators and is the right choice inside commutator
/// models (its top two diagonal entries carry truncation error).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianMode {
    #[default]
    Analytic,
    Constructed,
}

impl FockBasis {
    pub fn new(dim: usize, hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        if dim < MIN_DIM {
            return Err(Error::ParameterDomain(format!(
                "basis dim {dim} below minimum {MIN_DIM}"
            )));
        }
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::ParameterDomain(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { dim, hbar, mass, omega })
    }

    /// Dimensionless default basis: ħ = m = ω = 1.
    pub fn natural(dim: usize) -> Result<Self> {
        Self::new(dim, 1.0, 1.0, 1.0)
    }

    pub fn dim2(&self) -> usize {
        self.dim * self.dim
    }

    /// Oscillator level energy ħω(n + 1/2).
    pub fn level_energy(&self, n: usize) -> f64 {
        self.hbar * self.omega * (n as f64 + 0.5)
    }

    /// Number of top levels excluded from Fock-projector assertions.
    ///
    /// Truncated products of q and p corrupt matrix elements near the
    /// cutoff. The band excludes the top `ceil(fraction * d)` levels plus
    /// an unconditional four more.
    pub fn guard_levels(&self, fraction: f64) -> usize {
        let frac = (fraction * self.dim as f64).ceil() as usize;
        (frac + 4).min(self.dim)
    }

    /// First excluded level: scans run over `0..guard_cutoff(f)`.
    pub fn guard_cutoff(&self, fraction: f64) -> usize {
        self.dim - self.guard_levels(fraction)
    }

    /// Lowering and raising operators: `a[n-1, n] = sqrt(n)`, `a† = aᵀ`.
    pub fn ladder_operators(&self) -> (CMatrix, CMatrix) {
        let d = self.dim;
        let mut lowering = CMatrix::zeros((d, d));
        for n in 1..d {
            lowering[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        let raising = dagger(&lowering);
        (lowering, raising)
    }

    /// Position and momentum: `q = sqrt(ħ/2mω)(a + a†)`,
    /// `p = i sqrt(ħmω/2)(a† − a)`. Both hermitian by construction.
    pub fn canonical_operators(&self) -> (CMatrix, CMatrix) {
        let (a, ad) = self.ladder_operators();
        let qs = (self.hbar / (2.0 * self.mass * self.omega)).sqrt();
        let ps = (self.hbar * self.mass * self.omega / 2.0).sqrt();
        let q = (&a + &ad).mapv(|z| z * qs);
        let p = (&ad - &a).mapv(|z| z * C64::new(0.0, ps));
        (q, p)
    }

    pub fn hamiltonian(&self, mode: HamiltonianMode) -> CMatrix {
        match mode {
            HamiltonianMode::Analytic => {
                let mut h = CMatrix::zeros((self.dim, self.dim));
                for n in 0..self.dim {
                    h[(n, n)] = C64::new(self.level_energy(n), 0.0);
                }
                h
            }
            HamiltonianMode::Constructed => {
                let (q, p) = self.canonical_operators();
                let kinetic = p.dot(&p).mapv(|z| z / (2.0 * self.mass));
                let sw = self.mass * self.omega * self.omega / 2.0;
                let potential = q.dot(&q).mapv(|z| z * sw);
                kinetic + potential
            }
        }
    }

    /// Projector |n><n| as a dense matrix.
    pub fn projector(&self, n: usize) -> Result<CMatrix> {
        if n >= self.dim {
            return Err(Error::IndexOutOfRange { index: n, len: self.dim });
        }
        let mut m = CMatrix::zeros((self.dim, self.dim));
        m[(n, n)] = C64::new(1.0, 0.0);
        Ok(m)
    }
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::eye(d)
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) - b.dot(a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) + b.dot(a)
}

pub fn matrix_trace(a: &CMatrix) -> C64 {
    a.diag().sum()
}

/// Max-entry deviation from hermiticity, `max |A[i,j] − conj(A[j,i])|`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hilbert-Schmidt inner product `(A|B) = Tr(A† B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), actual: b.nrows() });
    }
    let mut acc = C64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    Ok(acc)
}

/// Row-major vectorization: component `x * d + x'` is `A[x, x']`.
pub fn vectorize(a: &CMatrix) -> CVector {
    CVector::from_iter(a.iter().cloned())
}

/// Inverse of [`vectorize`]; fails when the length is not a perfect square.
pub fn devectorize(v: &CVector) -> Result<CMatrix> {
    let d = perfect_sqrt(v.len())?;
    Ok(CMatrix::from_shape_vec((d, d), v.to_vec()).expect("length checked"))
}

pub(crate) fn perfect_sqrt(len: usize) -> Result<usize> {
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len {
        return Err(Error::NotSquareLength(len));
    }
    Ok(d)
}

/// Trace functional `(I|v)`: the sum of diagonal-pair components.
pub fn trace_functional(v: &CVector) -> Result<C64> {
    let d = perfect_sqrt(v.len())?;
    Ok((0..d).map(|x| v[x * d + x]).sum())
}

pub fn vector_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn conj_dot(a: &CVector, b: &CVector) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Classification record for a (candidate) density matrix.
///
/// `trace_defect`, `hermiticity_defect` and `min_eigenvalue` refer to the
/// raw input; `purity` and `is_pure` refer to the trace-normalized state
/// (HS-normalized when the trace is numerically zero, with `zero_trace`
/// set).
#[derive(Clone, Debug, Serialize)]
pub struct DensityState {
    #[serde(skip)]
    pub matrix: CMatrix,
    pub trace_defect: f64,
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub purity: f64,
    pub is_pure: bool,
    pub zero_trace: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_validation() {
        let b = FockBasis::new(24, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(b.dim, 24);
        assert!(FockBasis::new(3, 1.0, 1.0, 1.0).is_err());
        assert!(FockBasis::new(8, 0.0, 1.0, 1.0).is_err());
        assert!(FockBasis::new(8, 1.0, -2.0, 1.0).is_err());
        let b = FockBasis::new(16, 0.5, 2.0, 3.0).unwrap();
        assert_eq!((b.hbar, b.mass, b.omega), (0.5, 2.0, 3.0));
    }

    #[test]
    fn guard_band_counts() {
        let b = FockBasis::natural(24).unwrap();
        // top 25% (6 levels) plus 4 more
        assert_eq!(b.guard_levels(0.25), 10);
        assert_eq!(b.guard_cutoff(0.25), 14);
        let b8 = FockBasis::natural(8).unwrap();
        assert_eq!(b8.guard_cutoff(0.25), 2);
    }

    #[test]
    fn ladder_matrix_elements() {
        let b = FockBasis::natural(4).unwrap();
        let (a, ad) = b.ladder_operators();
        assert_abs_diff_eq!(a[(0, 1)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a[(1, 2)].re, 2.0_f64.sqrt(), epsilon = 1e-15);
        // number operator
        let n = ad.dot(&a);
        for k in 0..4 {
            assert_abs_diff_eq!(n[(k, k)].re, k as f64, epsilon = 1e-14);
        }
    }

    #[test]
    fn ladder_commutator_corner() {
        let d = 6;
        let b = FockBasis::natural(d).unwrap();
        let (a, ad) = b.ladder_operators();
        let c = commutator(&a, &ad);
        for i in 0..d {
            for j in 0..d {
                let expected = if i == j {
                    if i == d - 1 { -((d - 1) as f64) } else { 1.0 }
                } else {
                    0.0
                };
                assert_abs_diff_eq!(c[(i, j)].re, expected, epsilon = 1e-13);
                assert_abs_diff_eq!(c[(i, j)].im, 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn canonical_operators_are_hermitian() {
        let b = FockBasis::new(8, 0.7, 1.3, 2.1).unwrap();
        let (q, p) = b.canonical_operators();
        assert!(hermiticity_defect(&q) < 1e-14);
        assert!(hermiticity_defect(&p) < 1e-14);
        let expected = (b.hbar / (2.0 * b.mass * b.omega)).sqrt();
        assert_abs_diff_eq!(q[(0, 1)].re, expected, epsilon = 1e-15);
    }

    #[test]
    fn canonical_q_entry_natural_units() {
        let b = FockBasis::natural(8).unwrap();
        let (q, _) = b.canonical_operators();
        assert_abs_diff_eq!(q[(0, 1)].re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn qp_commutator_truncation_corner() {
        let d = 8;
        let b = FockBasis::natural(d).unwrap();
        let (q, p) = b.canonical_operators();
        let c = commutator(&q, &p);
        for i in 0..d - 1 {
            assert_abs_diff_eq!(c[(i, i)].im, b.hbar, epsilon = 1e-13);
        }
        // corner entry collapses to iħ(1 − d)
        assert_abs_diff_eq!(c[(d - 1, d - 1)].im, b.hbar * (1.0 - d as f64), epsilon = 1e-12);
    }

    #[test]
    fn hamiltonian_analytic_spectrum() {
        let b = FockBasis::natural(6).unwrap();
        let h = b.hamiltonian(HamiltonianMode::Analytic);
        for n in 0..6 {
            assert_abs_diff_eq!(h[(n, n)].re, n as f64 + 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn hamiltonian_constructed_agrees_away_from_cutoff() {
        let d = 8;
        let b = FockBasis::natural(d).unwrap();
        let ha = b.hamiltonian(HamiltonianMode::Analytic);
        let hc = b.hamiltonian(HamiltonianMode::Constructed);
        for i in 0..=d - 3 {
            for j in 0..=d - 3 {
                assert_abs_diff_eq!((hc[(i, j)] - ha[(i, j)]).norm(), 0.0, epsilon = 1e-12);
            }
        }
        // the top corner is a truncation artifact
        assert!((hc[(d - 1, d - 1)] - ha[(d - 1, d - 1)]).norm() > 0.1);
    }

    #[test]
    fn hs_inner_basics() {
        let b = FockBasis::natural(5).unwrap();
        let i5 = identity(5);
        assert_abs_diff_eq!(hs_inner(&i5, &i5).unwrap().re, 5.0, epsilon = 1e-15);
        let mut e01 = CMatrix::zeros((5, 5));
        e01[(0, 1)] = C64::new(1.0, 0.0);
        assert_abs_diff_eq!(hs_inner(&e01, &e01).unwrap().re, 1.0, epsilon = 1e-15);
        drop(b);
        let wrong = identity(4);
        assert!(hs_inner(&i5, &wrong).is_err());
    }

    #[test]
    fn vectorize_layout_and_roundtrip() {
        let d = 4;
        let m = CMatrix::from_shape_fn((d, d), |(i, j)| C64::new(i as f64, j as f64));
        let v = vectorize(&m);
        for x in 0..d {
            for xp in 0..d {
                assert_eq!(v[x * d + xp], m[(x, xp)]);
            }
        }
        let back = devectorize(&v).unwrap();
        assert_eq!(back, m);
        assert!(devectorize(&CVector::zeros(5)).is_err());
    }

    #[test]
    fn trace_functional_values() {
        let id = vectorize(&identity(5));
        assert_abs_diff_eq!(trace_functional(&id).unwrap().re, 5.0, epsilon = 1e-15);
        let b = FockBasis::natural(5).unwrap();
        let p0 = vectorize(&b.projector(0).unwrap());
        assert_abs_diff_eq!(trace_functional(&p0).unwrap().re, 1.0, epsilon = 1e-15);
        let mut e01 = CMatrix::zeros((5, 5));
        e01[(0, 1)] = C64::new(1.0, 0.0);
        assert_abs_diff_eq!(trace_functional(&vectorize(&e01)).unwrap().norm(), 0.0, epsilon = 1e-15);
    }
}
