//! Exact integer and rational linear algebra.
//!
//! Determinants, ranks and linear solves all go through fraction-free
//! (Bareiss) elimination on arbitrary-precision integers. Rational inputs are
//! scaled to integers first, so no intermediate fraction ever appears inside
//! the elimination loop.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_rat(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize, sign: i64) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = BigInt::from(sign);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        RatVector(self.0.iter().cloned().map(int_rat).collect())
    }

    /// Entries as `i64`, if every one fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|e| i64::try_from(e).ok()).collect()
    }
}

impl Deref for IntVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector::from_i64(entries).to_rational()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Least common multiple of the entry denominators (1 for the empty vector).
    pub fn denominator_lcm(&self) -> BigInt {
        lcm_denominators(&self.0)
    }

    /// Returns `(v, d)` with `self = v / d`, `v` integral and `d > 0` minimal.
    pub fn clear_denominators(&self) -> (IntVector, BigInt) {
        let d = self.denominator_lcm();
        let v = self
            .0
            .iter()
            .map(|e| e.numer() * (&d / e.denom()))
            .collect();
        (IntVector(v), d)
    }

    /// The integer vector, if every entry is integral.
    pub fn to_integer(&self) -> Option<IntVector> {
        self.0
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntVector)
    }
}

impl Deref for RatVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn lcm_denominators(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Integer matrix stored by columns; `rows` is kept explicitly so that a
/// matrix with zero columns still knows its ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<IntVector>,
}

impl IntMatrix {
    pub fn from_columns(rows: usize, columns: Vec<IntVector>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.dim() != rows) {
            return Err(Error::Dimension {
                expected: rows,
                found: bad.dim(),
            });
        }
        Ok(IntMatrix { rows, columns })
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension {
                expected: ncols,
                found: bad.len(),
            });
        }
        let columns = (0..ncols)
            .map(|j| IntVector::from_i64(&rows.iter().map(|r| r[j]).collect::<Vec<_>>()))
            .collect();
        Ok(IntMatrix {
            rows: nrows,
            columns,
        })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            columns: (0..n).map(|j| IntVector::unit(n, j, 1)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[IntVector] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.columns[col][row]
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        let mut out = vec![BigInt::zero(); self.rows];
        for (col, coeff) in self.columns.iter().zip(v) {
            if coeff.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(col.iter()) {
                *o += e * coeff;
            }
        }
        IntVector(out)
    }

    pub fn mul_rat_vec(&self, v: &RatVector) -> RatVector {
        let mut out = vec![Rational::zero(); self.rows];
        for (col, coeff) in self.columns.iter().zip(v.iter()) {
            for (o, e) in out.iter_mut().zip(col.iter()) {
                *o += coeff * e;
            }
        }
        RatVector(out)
    }
}

/// Exact determinant of a square integer matrix.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    Ok(det_rows(m.to_rows()))
}

/// Bareiss determinant of a square row-major integer matrix.
pub fn det_rows(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Fraction-free row echelon form, pivoting only within the first
/// `pivot_cols` columns. Returns the pivot columns in order; pivot `i` sits
/// in row `i`. Every entry stays an integer minor of the input.
fn echelon(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let mut rows = m.to_rows();
    let cols = m.ncols();
    echelon(&mut rows, cols).len()
}

/// Rank of a list of rational vectors, all of the same dimension.
pub fn rational_rank(vectors: &[RatVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols: Vec<IntVector> = vectors.iter().map(|v| v.clear_denominators().0).collect();
    IntMatrix::from_columns(first.dim(), cols)
        .map(|m| rank(&m))
        .unwrap_or(0)
}

/// Determinant of the square matrix with the given rational columns.
pub fn rational_det(columns: &[RatVector]) -> Rational {
    let mut scale = BigInt::one();
    let cols: Vec<IntVector> = columns
        .iter()
        .map(|c| {
            let (v, d) = c.clear_denominators();
            scale *= d;
            v
        })
        .collect();
    let n = columns.len();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    Rational::new(det_rows(rows), scale)
}

pub(crate) enum Solved {
    Unique(Vec<Rational>),
    Inconsistent,
    RankDeficient,
}

/// Solves `a * x = b` for a row-major integer matrix with full column rank.
pub(crate) fn solve_rows(a: &[Vec<BigInt>], b: &[BigInt]) -> Solved {
    let k = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug, k);
    if pivots.len() < k {
        return Solved::RankDeficient;
    }
    if aug[k..].iter().any(|row| !row[k].is_zero()) {
        return Solved::Inconsistent;
    }
    let mut x = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let mut acc = int_rat(aug[i][k].clone());
        for j in i + 1..k {
            acc -= &x[j] * &aug[i][j];
        }
        x[i] = acc / &aug[i][i];
    }
    Solved::Unique(x)
}

/// Solves `m * alpha = rhs` exactly for a matrix with independent columns.
///
/// Overdetermined systems are accepted; `None` means the system is
/// inconsistent.
pub fn solve(m: &IntMatrix, rhs: &RatVector) -> Result<Option<RatVector>> {
    if rhs.dim() != m.nrows() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            found: rhs.dim(),
        });
    }
    let (b, scale) = rhs.clear_denominators();
    let scale = int_rat(scale);
    match solve_rows(&m.to_rows(), &b) {
        Solved::Unique(x) => Ok(Some(RatVector(x.into_iter().map(|e| e / &scale).collect()))),
        Solved::Inconsistent => Ok(None),
        Solved::RankDeficient => Err(Error::Rank(format!(
            "{} columns are linearly dependent",
            m.ncols()
        ))),
    }
}

/// Adjugate and determinant of a square row-major integer matrix, so that
/// `adj * a = det * I`.
pub fn adjugate(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = a.len();
    let d = det_rows(a.to_vec());
    if n == 1 {
        return (vec![vec![BigInt::one()]], d);
    }
    let cofactor = |i: usize, j: usize| {
        let minor: Vec<Vec<BigInt>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| a[r][c].clone())
                    .collect()
            })
            .collect();
        let m = det_rows(minor);
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    };
    // adj[j][i] is the (i, j) cofactor
    let adj = (0..n)
        .map(|j| (0..n).map(|i| cofactor(i, j)).collect())
        .collect();
    (adj, d)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
