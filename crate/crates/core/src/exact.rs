//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! Every linear-algebra question in the crate is reduced to a reduced
//! row-echelon computation over `Rational`. A [`Subspace`] stores its RREF
//! basis, so two subspaces are equal exactly when their bases are equal.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// The matrix unit with a single one at `(i, j)` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(r).expect("ragged literal matrix")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// Submatrix of `nr` rows and `nc` columns starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Matrix::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Entries flattened in row-major order.
    pub fn to_vec(&self) -> Vec<Rational> {
        self.data.clone()
    }

    /// Inverse of a row-major flattening.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn det(&self) -> Result<Rational> {
        det(self)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(r.reduced.block(0, n, n, n))
    }

    pub fn string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_string_rows(&rows).map_err(D::Error::custom)
    }
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        let pivot_row: Vec<Rational> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let t = &factor * &pivot_row[j];
                    a[(i, j)] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: a,
        pivots,
        rank,
    }
}

/// Null space `{x : Mx = 0}` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols;
    let r = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = zero_vec(n);
        v[free] = Rational::one();
        for (row, &p) in r.pivots.iter().enumerate() {
            let c = &r.reduced[(row, free)];
            if !c.is_zero() {
                v[p] = -c;
            }
        }
        vectors.push(v);
    }
    Subspace::span(n, &vectors).expect("kernel vectors have ambient length")
}

/// Determinant by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix.
pub fn det(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        a.push(
            row.iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect(),
        );
        scale *= l;
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if negate {
        d = -d;
    }
    Ok(Rational::new(d, scale))
}

/// A linear subspace of `K^n`, stored as its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Data describing `K^n / S`: the coordinates kept and the projection onto them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub complement: Vec<usize>,
    pub projection: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::zeros(0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let r = rref(m);
        let basis = r.reduced.block(0, 0, r.rank, m.cols);
        Subspace {
            ambient: m.cols,
            basis,
            pivots: r.pivots,
        }
    }

    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let m = Matrix::from_fn(vectors.len(), n, |i, j| vectors[i][j].clone());
        Ok(Self::row_space(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: n,
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace (zero on all pivot coordinates).
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    out[j] -= &c * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(is_zero_vec(&self.reduce(v)?))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_len(other.ambient)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs)
    }

    /// `{x : <x, v> = 0 for all v in S}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Complement coordinates are the non-pivot coordinates of the basis.
    pub fn quotient_data(&self) -> QuotientData {
        let n = self.ambient;
        let complement: Vec<usize> = (0..n).filter(|j| !self.pivots.contains(j)).collect();
        let mut projection = Matrix::zeros(complement.len(), n);
        for j in 0..n {
            let r = self.reduce(&unit_vec(n, j)).expect("unit vector has ambient length");
            for (row, &c) in complement.iter().enumerate() {
                projection[(row, j)] = r[c].clone();
            }
        }
        QuotientData {
            complement,
            projection,
        }
    }

    /// Image `t(S)` of the subspace under a square matrix.
    pub fn image(&self, t: &Matrix) -> Result<Subspace> {
        self.check_len(t.cols())?;
        let vs: Vec<Vec<Rational>> = self.basis_vectors().iter().map(|v| t.mul_vec(v)).collect();
        Subspace::span(t.rows(), &vs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in K^{}) ", self.dim(), self.ambient)?;
        fmt::Debug::fmt(&self.basis, f)
    }
}

/// `sum_i c_i v_i` over vectors of length `n`.
pub fn linear_combination(n: usize, terms: &[(Rational, &[Rational])]) -> Vec<Rational> {
    let mut out = zero_vec(n);
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}
