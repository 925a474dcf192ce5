//! Dense exact linear algebra over ℚ(i).
//!
//! Matrices are row-major. Every reduction picks the first nonzero entry of
//! a column as its pivot, so bases and solutions are reproducible bit for bit.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    pub entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: vec![Scalar::zero(); n] }
    }

    /// The standard basis vector `e_i` of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self { entries: xs.iter().map(|&x| Scalar::from_int(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    /// Nonzero entries with their positions.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    /// Bilinear pairing `Σ xᵢ yᵢ` (no conjugation).
    pub fn dot(&self, other: &Self) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc.add_mul(a, b);
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.iter().map(Scalar::conj).collect() }
    }

    /// First nonzero entry, if any.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.support().next()
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.entries[i]
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Self { entries: iter.into_iter().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.iter().flatten().cloned().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| Scalar::from_int(x))).collect();
        Self { rows: r, cols: c, entries }
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            debug_assert_eq!(v.len(), n);
            for (i, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(Scalar::conj).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = Vector::zeros(self.rows);
        for (k, x) in v.support() {
            for i in 0..self.rows {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    out.entries[i].add_mul(a, x);
                }
            }
        }
        out
    }

    /// Row vector times matrix: `vᵀ M`.
    pub fn vec_mul(&self, v: &Vector) -> Vector {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = Vector::zeros(self.cols);
        for (k, x) in v.support() {
            for (j, a) in self.row(k).iter().enumerate() {
                if !a.is_zero() {
                    out.entries[j].add_mul(x, a);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Exact inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() })
            })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Reduced row-echelon form and the ascending list of pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, row * a.cols + j);
            }
        }
        let inv = a[(row, col)].inv().expect("nonzero pivot");
        for j in col..a.cols {
            let x = a[(row, j)].mul_ref(&inv);
            a[(row, j)] = x;
        }
        let pivot_row: Vec<Scalar> = a.row(row).to_vec();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a[(r, col)].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                if !pivot_row[j].is_zero() {
                    let t = f.mul_ref(&pivot_row[j]);
                    a[(r, j)] -= &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Solution set of `M x = b`: a particular solution (free variables set to
/// zero) when consistent, and a basis of the null space of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Option<Vector>,
    pub kernel: Vec<Vector>,
}

pub fn solve_affine(m: &Matrix, b: &Vector) -> Result<AffineSolution> {
    if m.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            m.rows,
            m.cols,
            b.len()
        )));
    }
    let rhs = Matrix::from_columns(m.rows, std::slice::from_ref(b));
    let (particular, kernel) = solve_multi(m, &rhs)?;
    Ok(AffineSolution { particular: particular.map(|p| p.column(0)), kernel })
}

/// Null-space basis of `M`, one vector per free column.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    kernel_from_rref(&r, &pivots, m.cols)
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = Vector::zeros(ncols);
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Solves `M X = B` column by column with a single elimination. Returns the
/// particular solution (or `None` if any column is inconsistent) together
/// with the null space of `M`.
pub fn solve_multi(m: &Matrix, b: &Matrix) -> Result<(Option<Matrix>, Vec<Vector>)> {
    if m.rows != b.rows {
        return Err(Error::DimensionMismatch(format!("{} equations, {} right-hand rows", m.rows, b.rows)));
    }
    let (n, k) = (m.cols, b.cols);
    let mut aug = Matrix::zeros(m.rows, n + k);
    for i in 0..m.rows {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        for j in 0..k {
            aug[(i, n + j)] = b[(i, j)].clone();
        }
    }
    let (r, pivots) = rref(&aug);
    let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < n).collect();
    let kernel = kernel_from_rref(&r, &coeff_pivots, n);
    if pivots.iter().any(|&p| p >= n) {
        return Ok((None, kernel));
    }
    let mut x = Matrix::zeros(n, k);
    for (row, &p) in coeff_pivots.iter().enumerate() {
        for j in 0..k {
            x[(p, j)] = r[(row, n + j)].clone();
        }
    }
    Ok((Some(x), kernel))
}

/// Basis of the column space: the columns of `M` at the pivot positions of
/// `rref(M)`, in ascending order.
pub fn image_basis(m: &Matrix) -> Vec<Vector> {
    let (_, pivots) = rref(m);
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// Kronecker product, entry `(i·N.rows + k, j·N.cols + l) = M[i,j]·N[k,l]`.
pub fn kron(m: &Matrix, n: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(m.rows * n.rows, m.cols * n.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let a = &m[(i, j)];
            if a.is_zero() {
                continue;
            }
            for k in 0..n.rows {
                for l in 0..n.cols {
                    out[(i * n.rows + k, j * n.cols + l)] = a.mul_ref(&n[(k, l)]);
                }
            }
        }
    }
    out
}

/// A subspace of an `n`-dimensional coordinate space with a canonical basis
/// and a coordinate map.
///
/// The complement used for membership tests is spanned by the coordinates
/// outside `rows`: `v` lies in the subspace iff `v - basis·coords(v)` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    /// `ambient × dim`, columns are the basis vectors.
    pub basis: Matrix,
    /// Coordinates where the basis restricts to an invertible block.
    pub rows: Vec<usize>,
    /// Inverse of the `rows` block of `basis`.
    block_inv: Matrix,
}

impl Subspace {
    /// Subspace spanned by linearly independent columns.
    pub fn from_basis(ambient: usize, basis: Vec<Vector>) -> Result<Self> {
        let b = Matrix::from_columns(ambient, &basis);
        let (_, rows) = rref(&b.transpose());
        if rows.len() != basis.len() {
            return Err(Error::DimensionMismatch("subspace basis is linearly dependent".into()));
        }
        let mut block = Matrix::zeros(rows.len(), rows.len());
        for (a, &r) in rows.iter().enumerate() {
            for c in 0..basis.len() {
                block[(a, c)] = b[(r, c)].clone();
            }
        }
        let block_inv = block.inverse().expect("independent basis has invertible block");
        Ok(Self { ambient, basis: b, rows, block_inv })
    }

    /// Column space of `m` with the canonical image basis.
    pub fn image_of(m: &Matrix) -> Self {
        Self::from_basis(m.rows, image_basis(m)).expect("image basis is independent")
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the basis, read off the selected rows. Only
    /// meaningful when `contains(v)`.
    pub fn coords(&self, v: &Vector) -> Vector {
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.block_inv.mul_vec(&picked)
    }

    pub fn embed(&self, c: &Vector) -> Vector {
        self.basis.mul_vec(c)
    }

    /// `v - basis·coords(v)`, supported on the complement coordinates.
    pub fn residual(&self, v: &Vector) -> Vector {
        v.sub(&self.embed(&self.coords(v)))
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.residual(v).is_zero()
    }

    /// `dim × ambient` matrix of the coordinate map.
    pub fn coord_matrix(&self) -> Matrix {
        let mut sel = Matrix::zeros(self.dim(), self.ambient);
        for (a, &r) in self.rows.iter().enumerate() {
            sel[(a, r)] = Scalar::one();
        }
        self.block_inv.mul(&sel)
    }
}

/// Accumulates linear equations `c·x = r` (with `k` right-hand sides per
/// equation) and keeps them in reduced row-echelon form as they arrive.
///
/// Systems here have up to n³ equations but at most n independent ones, so
/// reducing on insertion keeps the work proportional to the rank.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    rhs_count: usize,
    // (pivot column, coefficients, right-hand sides); pivot coefficient is 1
    // and every other row is zero in this pivot column.
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(unknowns: usize, rhs_count: usize) -> Self {
        Self { unknowns, rhs_count, rows: Vec::new(), inconsistent: false }
    }

    /// Homogeneous system with a single zero right-hand side.
    pub fn homogeneous(unknowns: usize) -> Self {
        Self::new(unknowns, 1)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn add(&mut self, mut coeffs: Vec<Scalar>, mut rhs: Vec<Scalar>) {
        debug_assert_eq!(coeffs.len(), self.unknowns);
        debug_assert_eq!(rhs.len(), self.rhs_count);
        for (p, row, row_rhs) in &self.rows {
            let f = coeffs[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(row) {
                if !r.is_zero() {
                    *c -= &f.mul_ref(r);
                }
            }
            for (c, r) in rhs.iter_mut().zip(row_rhs) {
                if !r.is_zero() {
                    *c -= &f.mul_ref(r);
                }
            }
        }
        let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.iter().any(|r| !r.is_zero()) {
                self.inconsistent = true;
            }
            return;
        };
        let inv = coeffs[pivot].inv().expect("nonzero pivot");
        for c in coeffs.iter_mut().chain(rhs.iter_mut()) {
            if !c.is_zero() {
                *c = c.mul_ref(&inv);
            }
        }
        for (_, row, row_rhs) in &mut self.rows {
            let f = row[pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (r, c) in row.iter_mut().zip(&coeffs) {
                if !c.is_zero() {
                    *r -= &f.mul_ref(c);
                }
            }
            for (r, c) in row_rhs.iter_mut().zip(&rhs) {
                if !c.is_zero() {
                    *r -= &f.mul_ref(c);
                }
            }
        }
        self.rows.push((pivot, coeffs, rhs));
    }

    /// Adds a homogeneous equation given by its nonzero coefficients.
    pub fn add_sparse(&mut self, coeffs: &[(usize, Scalar)], rhs: Vec<Scalar>) {
        if coeffs.is_empty() && rhs.iter().all(Zero::is_zero) {
            return;
        }
        let mut dense = vec![Scalar::zero(); self.unknowns];
        for (i, c) in coeffs {
            dense[*i] += c;
        }
        self.add(dense, rhs);
    }

    /// Null-space basis, one vector per free unknown in ascending order.
    pub fn kernel(&self) -> Vec<Vector> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        (0..self.unknowns)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = Vector::zeros(self.unknowns);
                v[f] = Scalar::one();
                for (p, row, _) in &self.rows {
                    v[*p] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// Particular solution with free unknowns set to zero, one column per
    /// right-hand side; `None` if inconsistent.
    pub fn particular(&self) -> Option<Matrix> {
        if self.inconsistent {
            return None;
        }
        let mut x = Matrix::zeros(self.unknowns, self.rhs_count);
        for (p, _, rhs) in &self.rows {
            for (j, r) in rhs.iter().enumerate() {
                x[(*p, j)] = r.clone();
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let id = Matrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));

        let (r, p) = rref(&Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn solve_affine_examples() {
        let s = solve_affine(&Matrix::identity(2), &Vector::from_ints(&[3, 4])).unwrap();
        assert_eq!(s.particular, Some(Vector::from_ints(&[3, 4])));
        assert!(s.kernel.is_empty());

        let m = Matrix::from_int_rows(&[&[1, 1]]);
        let s = solve_affine(&m, &Vector::from_ints(&[1])).unwrap();
        assert_eq!(s.particular, Some(Vector::from_ints(&[1, 0])));
        assert_eq!(s.kernel.len(), 1);
        // The kernel spans the line through (1, -1).
        let k = &s.kernel[0];
        assert_eq!(k[0], -&k[1]);
        assert!(!k.is_zero());

        let m = Matrix::from_int_rows(&[&[1], &[1]]);
        let s = solve_affine(&m, &Vector::from_ints(&[1, 2])).unwrap();
        assert!(s.particular.is_none());

        assert!(solve_affine(&m, &Vector::from_ints(&[1])).is_err());
    }

    #[test]
    fn image_basis_examples() {
        assert!(image_basis(&Matrix::zeros(3, 3)).is_empty());
        let id = image_basis(&Matrix::identity(3));
        assert_eq!(id, (0..3).map(|i| Vector::unit(3, i)).collect::<Vec<_>>());
        let half = Scalar::ratio(1, 2);
        let p = Matrix::new(2, 2, vec![half.clone(), half.clone(), half.clone(), half]).unwrap();
        let b = image_basis(&p);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0][0], b[0][1]);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&Matrix::identity(2), &Matrix::identity(3)), Matrix::identity(6));
        // e_1 ⊗ e_2 in dimensions 3 and 4 lands at index 1·4 + 2.
        let e1 = Matrix::from_columns(3, &[Vector::unit(3, 1)]);
        let e2 = Matrix::from_columns(4, &[Vector::unit(4, 2)]);
        assert_eq!(kron(&e1, &e2).column(0), Vector::unit(12, 6));
    }

    #[test]
    fn inverse_and_subspace() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());

        let s = Subspace::from_basis(3, vec![Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 0, 1])]).unwrap();
        assert!(s.contains(&Vector::from_ints(&[2, 2, 5])));
        assert!(!s.contains(&Vector::from_ints(&[1, 0, 0])));
        assert_eq!(s.coords(&Vector::from_ints(&[2, 2, 5])), Vector::from_ints(&[2, 5]));
        assert!(Subspace::from_basis(2, vec![Vector::from_ints(&[1, 1]), Vector::from_ints(&[2, 2])]).is_err());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, -1i64..2), r * c).prop_map(move |xs| {
                let entries = xs
                    .into_iter()
                    .map(|(a, b)| Scalar::new(Scalar::from_int(a).re, Scalar::ratio(b, 2).re))
                    .collect();
                Matrix::new(r, c, entries).unwrap()
            })
        })
    }

    fn arb_square2() -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-4i64..5, 4)
            .prop_map(|xs| Matrix::new(2, 2, xs.into_iter().map(Scalar::from_int).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix(5)) {
            let (r, p) = rref(&m);
            let (r2, p2) = rref(&r);
            prop_assert_eq!(&r, &r2);
            prop_assert_eq!(&p, &p2);
            prop_assert_eq!(image_basis(&m).len(), p.len());
        }

        #[test]
        fn solve_affine_round_trip(m in arb_matrix(5), seed in proptest::collection::vec(-3i64..4, 5)) {
            let b = Vector::from_ints(&seed[..m.rows]);
            let s = solve_affine(&m, &b).unwrap();
            if let Some(x) = &s.particular {
                prop_assert_eq!(m.mul_vec(x), b);
            }
            for k in &s.kernel {
                prop_assert!(m.mul_vec(k).is_zero());
            }
            prop_assert_eq!(s.kernel.len() + m.rank(), m.cols);
        }

        #[test]
        fn kron_mixed_product(a in arb_square2(), b in arb_square2(), c in arb_square2(), d in arb_square2()) {
            prop_assert_eq!(kron(&a, &b).mul(&kron(&c, &d)), kron(&a.mul(&c), &b.mul(&d)));
        }
    }

    #[test]
    fn linear_system_matches_rref() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[0, 2, 2]]);
        let b = Vector::from_ints(&[1, 2, 0, 1]);
        let mut sys = LinearSystem::new(3, 1);
        for i in 0..4 {
            sys.add(m.row(i).to_vec(), vec![b[i].clone()]);
        }
        let direct = solve_affine(&m, &b).unwrap();
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.particular().map(|p| p.column(0)), direct.particular);
        assert_eq!(sys.kernel(), direct.kernel);
        sys.add(vec![Scalar::zero(); 3], vec![Scalar::one()]);
        assert!(!sys.is_consistent());
    }
}
