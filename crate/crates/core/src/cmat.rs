//! Dense complex matrices sized for desk-scale completion work, with a cyclic
//! Jacobi eigensolver for Hermitian inputs. Row-major storage.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Convenience constructor from real entries.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|x| Complex64::new(*x, 0.0)))
            .collect();
        CMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |A_ij - conj(A_ji)|, zero exactly when Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut defect: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                defect = defect.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        defect
    }

    /// (self - other) entrywise max modulus.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Copies `block` into position with top-left corner (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        let mut out = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        out
    }

    /// Principal submatrix on the given (block) row/col index set.
    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> CMatrix {
        let mut out = CMatrix::zeros(row_ids.len(), col_ids.len());
        for (i, &ri) in row_ids.iter().enumerate() {
            for (j, &cj) in col_ids.iter().enumerate() {
                out[(i, j)] = self[(ri, cj)];
            }
        }
        out
    }

    /// Operator (spectral) norm. For Hermitian inputs this is max |eigenvalue|;
    /// in general it is the square root of the largest eigenvalue of A*A.
    pub fn op_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let (vals, _) = hermitian_eigen(&gram).expect("A*A is Hermitian by construction");
        vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

// Wire format: array of rows, each row an array of [re, im] pairs.
impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        Ok(CMatrix { rows: r, cols: c, data })
    }
}

/// Jacobi threshold relative to the Frobenius norm.
const JACOBI_EPS: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order with the unitary matrix of
/// matching eigenvectors as columns: `A V = V diag(vals)`.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigen of non-square matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::NonFiniteEntry);
    }
    let n = a.rows;
    if n == 0 {
        return Ok((vec![], CMatrix::zeros(0, 0)));
    }
    let scale = a.frobenius_norm().max(1e-300);
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);

    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += m[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off(&m) <= JACOBI_EPS * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let b = apq.norm();
                if b <= JACOBI_EPS * scale * 1e-2 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phi = apq / b; // unit modulus
                // Annihilation condition: b(c^2 - s^2) + sc(aqq - app) = 0,
                // i.e. t^2 - 2 tau t - 1 = 0; take the small root.
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary U on the (p,q) plane: [[c, -s*phi], [s*conj(phi), c]].
                // Columns: col_p' = c col_p + s conj(phi) col_q,
                //          col_q' = -s phi col_p + c col_q.
                let s_phi = Complex64::new(s, 0.0) * phi;
                let s_phi_conj = s_phi.conj();
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp + s_phi_conj * mkq;
                    m[(k, q)] = -s_phi * mkp + c * mkq;
                }
                // Rows via U*: row_p' = c row_p + s phi row_q,
                //              row_q' = -s conj(phi) row_p + c row_q.
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk + s_phi * mqk;
                    m[(q, k)] = -s_phi_conj * mpk + c * mqk;
                }
                // Clean the pivot; diagonals are real up to roundoff.
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp + s_phi_conj * vkq;
                    v[(k, q)] = -s_phi * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off(&m) > 1e-10 * scale {
        return Err(Error::EigenNoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vecs[(k, new_col)] = v[(k, old_col)];
        }
    }
    Ok((vals, vecs))
}
