//! Exact rational scalars, the `Field` abstraction shared by numeric and
//! symbolic evaluation, and dense matrices with exact determinants.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type ExactScalar = BigRational;

/// Parses `p/q`, `p` or a signed variant of either. Whitespace around the
/// literal is ignored; a zero denominator is rejected.
pub fn scalar_parse(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || Error::Parse(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits = |s: &str, signed: bool| -> bool {
        let body = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise, sign on the numerator.
pub fn scalar_format(s: &ExactScalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> ExactScalar {
    BigRational::new(n.into(), d.into())
}

/// A commutative field with exact equality.
///
/// Implemented by [`ExactScalar`] and by univariate rational functions, so
/// every formula in the crate can be evaluated at numbers or with one
/// symbolic slot.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + 'static
{
    fn from_scalar(s: &ExactScalar) -> Self;

    /// The underlying rational when the element is a plain number.
    fn as_scalar(&self) -> Option<&ExactScalar> {
        None
    }

    fn det(m: &Matrix<Self>) -> Self {
        det_cofactor(m)
    }

    fn from_i64(n: i64) -> Self {
        Self::from_scalar(&int(n))
    }

    /// Quotient, or `None` when `other` is zero.
    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self.clone() / other.clone())
        }
    }

    fn inv(&self) -> Option<Self> {
        Self::one().try_div(self)
    }

    /// Integer power; negative exponents need an invertible base.
    fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * &base;
        }
        Some(acc)
    }
}

impl Field for BigRational {
    fn from_scalar(s: &ExactScalar) -> Self {
        s.clone()
    }

    fn as_scalar(&self) -> Option<&ExactScalar> {
        Some(self)
    }

    fn det(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type ExactMatrix = Matrix<ExactScalar>;

impl<F: Clone> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a fallible entry function.
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<F>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Copy with row `i` replaced.
    pub fn with_row(&self, i: usize, row: &[F]) -> Self {
        let mut m = self.clone();
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.clone());
        }
        m
    }
}

impl<F: Field> Matrix<F> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j)
            })
        }))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Exact determinant; errors on a non-square input. The empty matrix has
/// determinant one.
pub fn det_exact<F: Field>(m: &Matrix<F>) -> Result<F> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    Ok(F::det(m))
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
pub fn det_cofactor<F: Field>(m: &Matrix<F>) -> F {
    let n = m.rows;
    assert!(
        n == m.cols && n < 31,
        "cofactor expansion needs a small square matrix"
    );
    let mut memo: HashMap<u32, F> = HashMap::new();
    fn go<F: Field>(m: &Matrix<F>, row: usize, cols: u32, memo: &mut HashMap<u32, F>) -> F {
        if row == m.rows {
            return F::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = F::zero();
        let mut sign_pos = true;
        for j in 0..m.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = m.get(row, j);
            if !e.is_zero() {
                let term = e.clone() * go(m, row + 1, cols & !(1 << j), memo);
                acc = if sign_pos { acc + term } else { acc - term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, 0, (1u32 << n) - 1, &mut memo)
}

/// Fraction-free elimination: each row is scaled to integers, Bareiss runs
/// over `BigInt`, and the row scalings are divided back out.
pub fn det_bareiss(m: &ExactMatrix) -> ExactScalar {
    let n = m.rows;
    assert_eq!(n, m.cols, "determinant of a non-square matrix");
    if n == 0 {
        return ExactScalar::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return ExactScalar::zero(),
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
    let d = if negate {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    };
    BigRational::new(d, scale)
}
