//! Dense complex matrices and the handful of kernels the rest of the crate
//! is built on: the matrix exponential, Kronecker products, SVD-based
//! nullspaces and anti-linear maps `ψ ↦ M ψ*`.
//!
//! Matrices are immutable values. Every operation returns a fresh matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;
/// Column spinor.
pub type ComplexVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense row/column complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "\n  ")?;
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                write!(f, "{:>+.4}{:+.4}i  ", z.re, z.im)?;
            }
        }
        write!(f, "\n]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, data)))
    }

    /// Builds a matrix from a slice of equally sized rows.
    ///
    /// Panics if the rows are ragged; intended for literals.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = DMatrix::zeros(n, m);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), m, "ragged rows");
            for (j, z) in r.iter().enumerate() {
                out[(i, j)] = *z;
            }
        }
        Self(out)
    }

    /// Real matrix literal helper.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.as_ref().iter().map(|&x| c(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    /// Stacks column vectors side by side.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let n = columns.first().map_or(0, |v| v.len());
        if let Some(bad) = columns.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Self(DMatrix::from_columns(columns)))
    }

    /// `[[a, b], [c, d]]` assembled from four equally sized blocks.
    pub fn from_blocks(a: &Self, b: &Self, cc: &Self, d: &Self) -> Result<Self> {
        let (r0, c0) = a.shape();
        let (r1, c1) = d.shape();
        if b.shape() != (r0, c1) {
            return Err(Error::DimensionMismatch { expected: r0 * c1, found: b.len() });
        }
        if cc.shape() != (r1, c0) {
            return Err(Error::DimensionMismatch { expected: r1 * c0, found: cc.len() });
        }
        let mut out = DMatrix::zeros(r0 + r1, c0 + c1);
        out.view_mut((0, 0), (r0, c0)).copy_from(&a.0);
        out.view_mut((0, c0), (r0, c1)).copy_from(&b.0);
        out.view_mut((r0, 0), (r1, c0)).copy_from(&cc.0);
        out.view_mut((r0, c0), (r1, c1)).copy_from(&d.0);
        Ok(Self(out))
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        let z01 = Self::zeros(a.rows(), d.cols());
        let z10 = Self::zeros(d.rows(), a.cols());
        Self::from_blocks(a, &z01, &z10, d).expect("shapes consistent by construction")
    }

    /// Sub-block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self(self.0.view((row, col), (rows, cols)).into_owned())
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        self.0.column(j).into_owned()
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.cols()).map(|j| self.0.column(j).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::NonSquare { rows: self.rows(), cols: self.cols() })
        }
    }

    pub fn determinant(&self) -> Result<C64> {
        self.require_square()?;
        Ok(self.0.clone().lu().determinant())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let inv = self.0.clone().lu().try_inverse().ok_or(Error::Singular)?;
        if inv.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(inv))
        } else {
            Err(Error::Singular)
        }
    }

    /// `[A, B] = AB − BA`
    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// `{A, B} = AB + BA`
    pub fn anticommutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 + &other.0 * &self.0)
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        &self.0 * v
    }

    /// Frobenius distance `‖A − B‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).frobenius_norm()
    }

    /// Frobenius distance from the identity.
    pub fn distance_from_identity(&self) -> f64 {
        self.distance(&Self::identity(self.rows()))
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let svd = nalgebra::SVD::new(self.0.clone(), false, false);
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Numerical rank: singular values above `tol · σ_max`.
    pub fn rank(&self, tol: f64) -> usize {
        let s = self.singular_values();
        let smax = s.first().copied().unwrap_or(0.0);
        if smax == 0.0 {
            return 0;
        }
        s.iter().filter(|&&x| x > tol * smax).count()
    }

    /// Eigenvalues from a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        self.require_square()?;
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let schur = nalgebra::Schur::try_new(self.0.clone(), f64::EPSILON, 10_000)
            .ok_or_else(|| Error::InvalidArgument("Schur iteration did not converge".into()))?;
        let (_, t) = schur.unpack();
        Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
    }
}

impl From<DMatrix<C64>> for ComplexMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        Self(m)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ComplexVector> for &'a ComplexMatrix {
    type Output = ComplexVector;
    fn mul(self, rhs: &'a ComplexVector) -> ComplexVector {
        &self.0 * rhs
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 + rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 - rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

/// Wire form of a matrix: `{"rows": n, "cols": m, "data": [[re, im], ...]}`,
/// entries row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            data: self.row_major().into_iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let data: Vec<C64> = raw.data.iter().map(|[re, im]| c(*re, *im)).collect();
        ComplexMatrix::from_row_major(raw.rows, raw.cols, &data).map_err(D::Error::custom)
    }
}

/// Serializes a spinor as a list of `[re, im]` pairs.
pub fn vector_to_pairs(v: &ComplexVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

// Padé [13/13] numerator coefficients (Higham 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring around a fixed Padé [13/13]
/// approximant.
///
/// The input is scaled by `2^-s` so that its 1-norm is at most θ₁₃ ≈ 5.37,
/// the approximant is evaluated with six matrix products and one linear
/// solve, and the result is squared `s` times.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.require_square()?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.norm_one();
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as u32 } else { 0 };
    let a = &m.0 * C64::new((0.5f64).powi(squarings as i32), 0.0);
    let id = DMatrix::<C64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9));
    let u = &a * (u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1));
    let v_inner = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8));
    let v = v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).ok_or(Error::Singular)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    if r.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(ComplexMatrix(r))
    } else {
        Err(Error::ExpOverflow { squarings })
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

/// Kronecker product of two column vectors.
pub fn kron_vec(x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
    x.kronecker(y)
}

/// Orthonormal basis of the numerical kernel of `m`.
///
/// A right singular vector belongs to the kernel when its singular value is
/// at most `tol · σ_max`. The zero matrix has the whole space as kernel.
pub fn nullspace(m: &ComplexMatrix, tol: f64) -> Vec<ComplexVector> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Vec::new();
    }
    // SVD yields only min(rows, cols) right vectors; pad wide matrices.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(&m.0);
        p
    } else {
        m.0.clone()
    };
    let svd = nalgebra::SVD::new(padded, false, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let v_t = svd.v_t.expect("v_t requested");
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if smax == 0.0 || s <= tol * smax {
            let row = v_t.row(k);
            out.push(DVector::from_iterator(cols, row.iter().map(|z| z.conj())));
        }
    }
    out
}

/// Anti-linear map `ψ ↦ M ψ*`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiLinearMap {
    pub linear_part: ComplexMatrix,
}

impl AntiLinearMap {
    pub fn new(linear_part: ComplexMatrix) -> Self {
        Self { linear_part }
    }

    /// Plain complex conjugation on `n` components.
    pub fn conjugation(n: usize) -> Self {
        Self::new(ComplexMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.linear_part.rows()
    }

    pub fn apply(&self, psi: &ComplexVector) -> ComplexVector {
        &self.linear_part.0 * psi.map(|z| z.conj())
    }

    /// The linear map `A ∘ A`.
    pub fn square(&self) -> ComplexMatrix {
        antilinear_compose(self, self).expect("square map composes with itself")
    }

    /// `D ∘ A ∘ D⁻¹` for linear `D`, again anti-linear.
    pub fn conjugated_by(&self, d: &ComplexMatrix, d_inv: &ComplexMatrix) -> AntiLinearMap {
        AntiLinearMap::new(&(d * &self.linear_part) * &d_inv.conj())
    }
}

/// The linear map `A ∘ B` of two anti-linear maps, with matrix `M_A · conj(M_B)`.
pub fn antilinear_compose(a: &AntiLinearMap, b: &AntiLinearMap) -> Result<ComplexMatrix> {
    if a.linear_part.cols() != b.linear_part.rows() {
        return Err(Error::DimensionMismatch { expected: a.linear_part.cols(), found: b.linear_part.rows() });
    }
    Ok(&a.linear_part * &b.linear_part.conj())
}

/// Numerical thresholds shared by the checkers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub expm_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, expm_tol: 1e-13 }
    }
}

impl ToleranceConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, expm_tol: f64) -> Result<Self> {
        let cfg = Self { abs_tol, rel_tol, expm_tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol), ("expm_tol", self.expm_tol)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v}")));
            }
        }
        Ok(())
    }

    /// Defaults with `abs_tol` and `rel_tol` replaced by `tol`.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, tol, Self::default().expm_tol)
    }
}
