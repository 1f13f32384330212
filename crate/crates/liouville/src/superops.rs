//! Superoperators: dense linear maps on the vectorized operator space.
//!
//! With the row-major layout of [`crate::hilbert::vectorize`], left and right
//! multiplication lift to Kronecker products,
//!
//! ```text
//!   L_A = A ⊗ I          (L_A |B) = |AB))
//!   R_A = I ⊗ Aᵀ         (R_A |B) = |BA))
//! ```
//!
//! so the kernel of `L_A` is `A(x, y) δ(x', y')`. The Lie and Jordan
//! superoperators are `(L_A − R_A)/iħ` and `(L_A + R_A)/2`; the
//! [`algebra_check`] suite verifies the eight identities they satisfy,
//! evaluated as dense matrices.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{self, CMatrix, CVector};

/// Dense superoperator on a `d^2`-dimensional Liouville space.
///
/// Optionally carries a factored form `Σ_k A_k · B_k` (left/right operator
/// pairs) whose induced action agrees with the dense matrix; constructors
/// that know the factorization keep it, composite operations drop it.
#[derive(Clone, Debug)]
pub struct SuperOp {
    mat: CMatrix,
    factors: Option<Vec<(CMatrix, CMatrix)>>,
}

impl SuperOp {
    pub fn from_dense(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch { expected: mat.nrows(), actual: mat.ncols() });
        }
        hilbert::perfect_sqrt(mat.nrows())?;
        Ok(Self { mat, factors: None })
    }

    /// Build `Σ_k left_k · X · right_k` as a dense matrix, retaining the
    /// factor pairs.
    pub fn from_factors(pairs: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        let d = pairs
            .first()
            .map(|(l, _)| l.nrows())
            .ok_or_else(|| Error::ParameterDomain("empty factor list".into()))?;
        let mut mat = CMatrix::zeros((d * d, d * d));
        for (l, r) in &pairs {
            if l.nrows() != d || l.ncols() != d || r.nrows() != d || r.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, actual: l.nrows().max(r.nrows()) });
            }
            mat = mat + kron(l, &r.t().to_owned());
        }
        Ok(Self { mat, factors: Some(pairs) })
    }

    pub fn identity(d: usize) -> Self {
        Self { mat: CMatrix::eye(d * d), factors: Some(vec![(CMatrix::eye(d), CMatrix::eye(d))]) }
    }

    pub fn zeros(d: usize) -> Self {
        Self { mat: CMatrix::zeros((d * d, d * d)), factors: None }
    }

    /// Liouville-space dimension `d^2`.
    pub fn dim2(&self) -> usize {
        self.mat.nrows()
    }

    /// Underlying Hilbert-space dimension `d`.
    pub fn hilbert_dim(&self) -> usize {
        (self.dim2() as f64).sqrt().round() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn factors(&self) -> Option<&[(CMatrix, CMatrix)]> {
        self.factors.as_deref()
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if v.len() != self.dim2() {
            return Err(Error::DimensionMismatch { expected: self.dim2(), actual: v.len() });
        }
        Ok(self.mat.dot(v))
    }

    /// Apply through the factored form, `Σ_k left_k · B · right_k`.
    pub fn apply_factored(&self, b: &CMatrix) -> Option<CMatrix> {
        let pairs = self.factors.as_ref()?;
        let mut acc = CMatrix::zeros(b.dim());
        for (l, r) in pairs {
            acc = acc + l.dot(b).dot(r);
        }
        Some(acc)
    }

    /// Convenience: apply to an operator via vectorize/devectorize.
    pub fn apply_matrix(&self, b: &CMatrix) -> Result<CMatrix> {
        hilbert::devectorize(&self.apply(&hilbert::vectorize(b))?)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SuperOp) -> Result<SuperOp> {
        self.check_dim(other)?;
        SuperOp::from_dense(self.mat.dot(&other.mat))
    }

    pub fn add(&self, other: &SuperOp) -> Result<SuperOp> {
        self.check_dim(other)?;
        SuperOp::from_dense(&self.mat + &other.mat)
    }

    pub fn sub(&self, other: &SuperOp) -> Result<SuperOp> {
        self.check_dim(other)?;
        SuperOp::from_dense(&self.mat - &other.mat)
    }

    pub fn scale(&self, c: C64) -> SuperOp {
        SuperOp { mat: self.mat.mapv(|z| z * c), factors: None }
    }

    fn check_dim(&self, other: &SuperOp) -> Result<()> {
        if self.dim2() != other.dim2() {
            return Err(Error::DimensionMismatch { expected: self.dim2(), actual: other.dim2() });
        }
        Ok(())
    }

    /// Max absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut worst = 0.0_f64;
        for col in self.mat.columns() {
            worst = worst.max(col.iter().map(|z| z.norm()).sum());
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        hilbert::frobenius_norm(&self.mat)
    }

    /// Estimate of the spectral norm (largest singular value) by power
    /// iteration on `S†S` from a fixed deterministic start vector.
    pub fn spectral_norm_estimate(&self) -> f64 {
        let n = self.dim2();
        let adj = self.mat.t().mapv(|z| z.conj());
        let mut v = CVector::from_shape_fn(n, |i| {
            C64::new(1.0, (i as f64 * 0.7324).sin() * 0.25)
        });
        let mut sigma2 = 0.0_f64;
        for _ in 0..40 {
            let w = adj.dot(&self.mat.dot(&v));
            let nw = hilbert::vector_norm(&w);
            if nw == 0.0 {
                return 0.0;
            }
            sigma2 = nw;
            v = w.mapv(|z| z / nw);
        }
        sigma2.sqrt()
    }

    /// Largest residual of `(I| Λ = 0`: max over columns of the sums of
    /// diagonal-pair rows, relative to the one-norm. Zero for any generator
    /// that preserves the trace.
    pub fn trace_preservation_residual(&self) -> f64 {
        let d = self.hilbert_dim();
        let norm = self.one_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for col in 0..self.dim2() {
            let s: C64 = (0..d).map(|x| self.mat[(x * d + x, col)]).sum();
            worst = worst.max(s.norm());
        }
        worst / norm
    }
}

/// Kronecker product, row-major.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = CMatrix::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Left multiplication superoperator `L_A |B) = |AB)`.
pub fn left_mult(a: &CMatrix) -> SuperOp {
    let d = a.nrows();
    SuperOp::from_factors(vec![(a.clone(), CMatrix::eye(d))]).expect("square operator")
}

/// Right multiplication superoperator `R_A |B) = |BA)`.
pub fn right_mult(a: &CMatrix) -> SuperOp {
    let d = a.nrows();
    SuperOp::from_factors(vec![(CMatrix::eye(d), a.clone())]).expect("square operator")
}

/// Lie superoperator `(L_A − R_A)/iħ`, the lifted commutator.
pub fn lie_mult(a: &CMatrix, hbar: f64) -> SuperOp {
    let inv_ih = C64::new(0.0, -1.0 / hbar); // 1/(iħ)
    let d = a.nrows();
    let eye = CMatrix::eye(d);
    SuperOp::from_factors(vec![
        (a.mapv(|z| z * inv_ih), eye.clone()),
        (eye, a.mapv(|z| z * -inv_ih)),
    ])
    .expect("square operator")
}

/// Jordan superoperator `(L_A + R_A)/2`, the lifted anticommutator.
pub fn jordan_mult(a: &CMatrix) -> SuperOp {
    let half = C64::new(0.5, 0.0);
    let d = a.nrows();
    let eye = CMatrix::eye(d);
    SuperOp::from_factors(vec![
        (a.mapv(|z| z * half), eye.clone()),
        (eye, a.mapv(|z| z * half)),
    ])
    .expect("square operator")
}

/// Diagonal superoperator function of a diagonal Hamiltonian.
///
/// For `H = diag(E_0 .. E_{d−1})` the matrix units `|x><x'|` are joint
/// eigenvectors of `L_H` and `R_H`, so any two-argument function `f`
/// becomes the diagonal superoperator with entry `f(E_x, E_x')` at
/// flattened index `(x, x')`. This evaluation is exact on the truncated
/// space — no series truncation is involved.
pub fn spectral_function<F: Fn(f64, f64) -> f64>(h_diag: &CMatrix, f: F) -> Result<SuperOp> {
    let d = h_diag.nrows();
    if h_diag.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: h_diag.ncols() });
    }
    let scale = h_diag.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1.0);
    let mut energies = Vec::with_capacity(d);
    for i in 0..d {
        for j in 0..d {
            let z = h_diag[(i, j)];
            if i == j {
                if z.im.abs() > 1e-12 * scale {
                    return Err(Error::NotDiagonal(format!(
                        "diagonal entry {i} has imaginary part {:.3e}",
                        z.im
                    )));
                }
            } else if z.norm() > 1e-12 * scale {
                return Err(Error::NotDiagonal(format!(
                    "off-diagonal entry ({i}, {j}) has magnitude {:.3e}",
                    z.norm()
                )));
            }
        }
        energies.push(h_diag[(i, i)].re);
    }
    let mut mat = CMatrix::zeros((d * d, d * d));
    for x in 0..d {
        for xp in 0..d {
            let idx = x * d + xp;
            mat[(idx, idx)] = C64::new(f(energies[x], energies[xp]), 0.0);
        }
    }
    SuperOp::from_dense(mat)
}

/// Horner evaluation of `Σ_k coeffs[k] S^k` applied to `v`; only
/// matrix-vector products are formed.
pub fn power_series_apply(coeffs: &[C64], s: &SuperOp, v: &CVector) -> Result<CVector> {
    if v.len() != s.dim2() {
        return Err(Error::DimensionMismatch { expected: s.dim2(), actual: v.len() });
    }
    let mut acc = CVector::zeros(v.len());
    for &c in coeffs.iter().rev() {
        acc = s.apply(&acc)?;
        acc = acc + v.mapv(|z| z * c);
    }
    Ok(acc)
}

/// Coefficients of the cosine series `cos(a x) = Σ (−1)^m (a x)^{2m}/(2m)!`
/// up to `terms` even powers, as a dense coefficient list for
/// [`power_series_apply`].
pub fn cosine_series_coeffs(a: f64, terms: usize) -> Vec<C64> {
    let mut coeffs = vec![C64::new(0.0, 0.0); 2 * terms.max(1) - 1];
    let mut c = 1.0_f64;
    for m in 0..terms {
        coeffs[2 * m] = C64::new(c, 0.0);
        // next even coefficient: multiply by −a²/((2m+1)(2m+2))
        c *= -a * a / (((2 * m + 1) * (2 * m + 2)) as f64);
    }
    coeffs
}

pub const IDENTITY_NAMES: [&str; 8] = [
    "lie", "jordan1", "jordan2", "jordan3", "mixed1", "mixed2", "mixed3", "mixed4",
];

/// Residual report for the superoperator algebra identity suite.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    /// (identity name, max-norm residual relative to the larger side).
    pub residuals: Vec<(String, f64)>,
    pub tolerance: f64,
}

impl IdentityReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|(n, _)| n == name).map(|&(_, r)| r)
    }

    pub fn pass(&self, name: &str) -> Option<bool> {
        self.residual(name).map(|r| r <= self.tolerance)
    }

    pub fn all_pass(&self) -> bool {
        self.residuals.iter().all(|&(_, r)| r <= self.tolerance)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|&(_, r)| r).fold(0.0, f64::max)
    }
}

fn rel_residual(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    let denom = lhs
        .iter()
        .chain(rhs.iter())
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let mut worst = 0.0_f64;
    for (a, b) in lhs.iter().zip(rhs.iter()) {
        worst = worst.max((a - b).norm());
    }
    worst / denom
}

/// Evaluate both sides of the eight Lie/Jordan/mixed superoperator
/// relations on a triple of operators and report max-norm residuals.
///
/// With `A · B = (AB − BA)/iħ` and `A ∘ B = (AB + BA)/2`:
///
/// ```text
///  lie      L⁻_{A·B} = L⁻_A L⁻_B − L⁻_B L⁻_A
///  jordan1  L⁺_{(A∘B)∘C} + L⁺_B L⁺_C L⁺_A + L⁺_A L⁺_C L⁺_B
///             = L⁺_{A∘B} L⁺_C + L⁺_{B∘C} L⁺_A + L⁺_{A∘C} L⁺_B
///  jordan2  same left side = L⁺_C L⁺_{A∘B} + L⁺_B L⁺_{A∘C} + L⁺_A L⁺_{B∘C}
///  jordan3  right sides of jordan1 and jordan2 agree
///  mixed1   L⁺_{A·B} = L⁻_A L⁺_B − L⁺_B L⁻_A
///  mixed2   L⁻_{A∘B} = L⁺_A L⁻_B + L⁺_B L⁻_A
///  mixed3   L⁺_{A∘B} = L⁺_A L⁺_B − (ħ²/4) L⁻_B L⁻_A
///  mixed4   L⁺_B L⁺_A − L⁺_A L⁺_B = (ħ²/4) L⁻_{A·B}
/// ```
///
/// All eight vanish identically in exact arithmetic.
pub fn algebra_check(a: &CMatrix, b: &CMatrix, c: &CMatrix, hbar: f64, tol: f64) -> Result<IdentityReport> {
    for m in [b, c] {
        if m.dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), actual: m.nrows() });
        }
    }
    let ih = C64::new(0.0, hbar);
    let lie_prod = |x: &CMatrix, y: &CMatrix| (x.dot(y) - y.dot(x)).mapv(|z| z / ih);
    let jordan_prod = |x: &CMatrix, y: &CMatrix| (x.dot(y) + y.dot(x)).mapv(|z| z * 0.5);

    let lm = |x: &CMatrix| lie_mult(x, hbar).into_matrix();
    let lp = |x: &CMatrix| jordan_mult(x).into_matrix();

    let (la, lb, lc) = (lm(a), lm(b), lm(c));
    let (pa, pb, pc) = (lp(a), lp(b), lp(c));
    let h2_4 = C64::new(hbar * hbar / 4.0, 0.0);

    let mut residuals = Vec::with_capacity(8);

    residuals.push((
        "lie".to_string(),
        rel_residual(&lm(&lie_prod(a, b)), &(la.dot(&lb) - lb.dot(&la))),
    ));

    let jordan_lhs = lp(&jordan_prod(&jordan_prod(a, b), c)) + pb.dot(&pc).dot(&pa) + pa.dot(&pc).dot(&pb);
    let jordan_rhs1 = lp(&jordan_prod(a, b)).dot(&pc) + lp(&jordan_prod(b, c)).dot(&pa) + lp(&jordan_prod(a, c)).dot(&pb);
    let jordan_rhs2 = pc.dot(&lp(&jordan_prod(a, b))) + pb.dot(&lp(&jordan_prod(a, c))) + pa.dot(&lp(&jordan_prod(b, c)));
    residuals.push(("jordan1".to_string(), rel_residual(&jordan_lhs, &jordan_rhs1)));
    residuals.push(("jordan2".to_string(), rel_residual(&jordan_lhs, &jordan_rhs2)));
    residuals.push(("jordan3".to_string(), rel_residual(&jordan_rhs2, &jordan_rhs1)));

    residuals.push((
        "mixed1".to_string(),
        rel_residual(&lp(&lie_prod(a, b)), &(la.dot(&pb) - pb.dot(&la))),
    ));
    residuals.push((
        "mixed2".to_string(),
        rel_residual(&lm(&jordan_prod(a, b)), &(pa.dot(&lb) + pb.dot(&la))),
    ));
    residuals.push((
        "mixed3".to_string(),
        rel_residual(&lp(&jordan_prod(a, b)), &(pa.dot(&pb) - lb.dot(&la).mapv(|z| z * h2_4))),
    ));
    residuals.push((
        "mixed4".to_string(),
        rel_residual(
            &(pb.dot(&pa) - pa.dot(&pb)),
            &lm(&lie_prod(a, b)).mapv(|z| z * h2_4),
        ),
    ));

    Ok(IdentityReport { residuals, tolerance: tol })
}
