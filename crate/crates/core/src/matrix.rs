//! Square matrices with polynomial entries, and small dense rational matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::poly::{Base, MultiIndex, Phase, Poly, VarSpace};
use crate::rational::Rational;

/// An `n×n` matrix of polynomials over a base of dimension `m`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPoly<S: VarSpace> {
    n: usize,
    m: usize,
    entries: Vec<Poly<S>>,
}

/// Matrix coefficient functions `x ↦ gl(n)`.
pub type MatrixPolynomial = MatrixPoly<Base>;

/// Matrix-valued functions on phase space.
pub type PhaseMatrix = MatrixPoly<Phase>;

impl<S: VarSpace> MatrixPoly<S> {
    pub fn zero(n: usize, m: usize) -> Self {
        MatrixPoly {
            n,
            m,
            entries: vec![Poly::zero(m); n * n],
        }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self::scalar(n, &Poly::one(m))
    }

    /// `u · id`.
    pub fn scalar(n: usize, u: &Poly<S>) -> Self {
        let mut out = Self::zero(n, u.base_dim());
        for i in 0..n {
            out.entries[i * n + i] = u.clone();
        }
        out
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(n: usize, m: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zero(n, m);
        out.entries[i * n + j] = Poly::one(m);
        out
    }

    pub fn diagonal(diag: &[Poly<S>]) -> Self {
        let n = diag.len();
        let m = diag.first().map_or(0, Poly::base_dim);
        let mut out = Self::zero(n, m);
        for (i, d) in diag.iter().enumerate() {
            out.entries[i * n + i] = d.clone();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Poly<S>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Config("empty matrix".into()));
        }
        let m = rows[0].first().map_or(0, Poly::base_dim);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            check_dim("matrix row length", n, row.len())?;
            for e in row {
                check_dim("matrix entry base dimension", m, e.base_dim())?;
                entries.push(e);
            }
        }
        Ok(MatrixPoly { n, m, entries })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<S> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly<S>) {
        assert_eq!(value.base_dim(), self.m);
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[Poly<S>] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly<S>]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// `Some(u)` if the matrix equals `u · id`.
    pub fn as_scalar(&self) -> Option<Poly<S>> {
        let d = self.get(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                let ok = if i == j { e == d } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(d.clone())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_dim("matrix rank", self.n, other.n)?;
        check_dim("matrix base dimension", self.m, other.m)
    }

    pub fn map(&self, f: impl Fn(&Poly<S>) -> Poly<S>) -> Self {
        MatrixPoly {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Poly<S>) -> Result<Poly<S>>) -> Result<Self> {
        Ok(MatrixPoly {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly<S>, &Poly<S>) -> Poly<S>) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(MatrixPoly {
            n: self.n,
            m: self.m,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let n = self.n;
        let mut out = Self::zero(n, self.m);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Pointwise commutator `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Multiplies every entry by the function `u`.
    pub fn scale_poly(&self, u: &Poly<S>) -> Self {
        self.map(|e| e * u)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn trace(&self) -> Poly<S> {
        (0..self.n).fold(Poly::zero(self.m), |acc, i| &acc + self.get(i, i))
    }

    /// `A − tr(A)/n · id`.
    pub fn traceless_part(&self) -> Self {
        let shift = self.trace().scale(&Rational::new(1.into(), (self.n as i64).into()));
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + i] = &out.entries[i * self.n + i] - &shift;
        }
        out
    }

    /// `tr(A)/n`, the function `u` such that `A = traceless_part(A) + u·id`.
    pub fn scalar_part(&self) -> Poly<S> {
        self.trace().scale(&Rational::new(1.into(), (self.n as i64).into()))
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(|e| e.derivative(var))
    }

    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Self {
        self.map(|e| e.derivative_multi(alpha))
    }

    /// Substitutes variables in every entry.
    pub fn substitute(&self, images: &[Poly<S>]) -> Self {
        self.map(|e| e.substitute(images))
    }

    /// Conjugation `G · A · G⁻¹` by a constant matrix.
    pub fn conjugate(&self, g: &RatMatrix, g_inv: &RatMatrix) -> Self {
        let gm = g.to_matrix_poly::<S>(self.m);
        let gi = g_inv.to_matrix_poly::<S>(self.m);
        gm.checked_mul(self)
            .and_then(|x| x.checked_mul(&gi))
            .expect("conjugation shape mismatch")
    }
}

impl MatrixPoly<Base> {
    /// `A(x) · xi^alpha` as a phase-space matrix.
    pub fn to_phase_times_xi(&self, xi: &MultiIndex) -> MatrixPoly<Phase> {
        MatrixPoly {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|e| e.to_phase_times_xi(xi)).collect(),
        }
    }

    pub fn to_phase(&self) -> MatrixPoly<Phase> {
        self.to_phase_times_xi(&MultiIndex::zero(self.m))
    }
}

impl MatrixPoly<Phase> {
    pub fn is_xi_homogeneous(&self, d: u32) -> bool {
        self.entries.iter().all(|e| e.is_xi_homogeneous(d))
    }

    /// Writes `self = Σ_α A_α(x) xi^α` and returns `α ↦ A_α`.
    pub fn split_by_xi(&self) -> std::collections::BTreeMap<MultiIndex, MatrixPoly<Base>> {
        let mut out: std::collections::BTreeMap<MultiIndex, MatrixPoly<Base>> = Default::default();
        for (idx, e) in self.entries.iter().enumerate() {
            for (xi, u) in e.split_by_xi() {
                let slot = out
                    .entry(xi)
                    .or_insert_with(|| MatrixPoly::zero(self.n, self.m));
                slot.entries[idx] = u;
            }
        }
        out
    }

    /// Entrywise canonical bracket `{f, A}` of a scalar with a matrix.
    pub fn bracket_scalar_left(f: &Poly<Phase>, a: &Self) -> Result<Self> {
        a.try_map(|e| f.canonical_bracket(e))
    }

    /// Entrywise canonical bracket `{A, g}`.
    pub fn bracket_scalar_right(&self, g: &Poly<Phase>) -> Result<Self> {
        self.try_map(|e| e.canonical_bracket(g))
    }
}

impl<S: VarSpace> fmt::Debug for MatrixPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            f.write_str(&cells.join(", "))?;
        }
        f.write_str("]")
    }
}

macro_rules! impl_matrix_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, S: VarSpace> $trait<&'a MatrixPoly<S>> for &'a MatrixPoly<S> {
            type Output = MatrixPoly<S>;
            fn $method(self, rhs: &'a MatrixPoly<S>) -> MatrixPoly<S> {
                self.$checked(rhs).expect("matrix shape mismatch")
            }
        }

        impl<S: VarSpace> $trait<MatrixPoly<S>> for MatrixPoly<S> {
            type Output = MatrixPoly<S>;
            fn $method(self, rhs: MatrixPoly<S>) -> MatrixPoly<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_matrix_binop!(Add, add, checked_add);
impl_matrix_binop!(Sub, sub, checked_sub);
impl_matrix_binop!(Mul, mul, checked_mul);

impl<S: VarSpace> Neg for &MatrixPoly<S> {
    type Output = MatrixPoly<S>;
    fn neg(self) -> MatrixPoly<S> {
        self.map(|e| -e)
    }
}

/// Dense square-or-rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i * n + i] = Rational::one();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dim("matrix row length", c, row.len())?;
            data.extend(row);
        }
        Ok(RatMatrix { rows: r, cols: c, data })
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        let mut out = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            out.data[i * n + i] = d.clone();
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim("matrix product inner dimension", self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row echelon form by Gaussian elimination; returns `(echelon, rank, det-sign-and-pivots product)`.
    fn eliminate(&self) -> (Self, usize, Rational) {
        let mut a = self.clone();
        let mut rank = 0;
        let mut det = Rational::one();
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if pivot != rank {
                for j in 0..a.cols {
                    a.data.swap(pivot * a.cols + j, rank * a.cols + j);
                }
                det = -det;
            }
            let p = a.get(rank, col).clone();
            det *= &p;
            for r in rank + 1..a.rows {
                let factor = a.get(r, col) / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.get(r, j) - &factor * a.get(rank, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
        }
        (a, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn determinant(&self) -> Result<Rational> {
        check_dim("determinant of a square matrix", self.rows, self.cols)?;
        let (_, rank, det) = self.eliminate();
        Ok(if rank < self.rows { Rational::zero() } else { det })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        check_dim("inverse of a square matrix", self.rows, self.cols)?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular("matrix is not invertible"))?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j) / &p;
                a.set(col, j, v);
                let v = inv.get(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn to_matrix_poly<S: VarSpace>(&self, m: usize) -> MatrixPoly<S> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut out = MatrixPoly::zero(n, m);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, Poly::constant(m, self.get(i, j).clone()));
            }
        }
        out
    }
}
