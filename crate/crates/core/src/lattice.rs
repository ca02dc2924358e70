//! Lattices, lattice-point counts in polytope dilates and norm balls, and
//! exact Ehrhart quasipolynomial fitting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_vertices, polytope_denominator, volume, HPolytope, NormKind, VertexSet,
};
use crate::linalg::{self, binomial, int_rat, IntMatrix, IntVector, RatVector, Rational};

/// The lattice `{ sum a_i w_i : a_i in Z }` spanned by independent integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<IntVector>,
    determinant: Option<BigInt>,
}

impl Lattice {
    pub fn from_basis(basis: Vec<IntVector>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::Domain(
                "a lattice basis needs at least one vector".into(),
            ));
        };
        let dim = first.dim();
        let m = IntMatrix::from_columns(dim, basis.clone())?;
        if linalg::rank(&m) != basis.len() {
            return Err(Error::Rank(
                "lattice basis vectors are linearly dependent".into(),
            ));
        }
        let determinant = (basis.len() == dim)
            .then(|| linalg::det(&m).map(|d| d.abs()))
            .transpose()?;
        Ok(Lattice {
            dim,
            basis,
            determinant,
        })
    }

    pub fn standard(dim: usize) -> Self {
        Lattice {
            dim,
            basis: IntMatrix::identity(dim).columns().to_vec(),
            determinant: Some(BigInt::one()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.determinant.is_some()
    }

    /// `|det(w_1, ..., w_n)|`, defined for full-rank lattices.
    pub fn determinant(&self) -> Option<&BigInt> {
        self.determinant.as_ref()
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, self.basis.clone()).expect("basis dims checked")
    }
}

pub fn lattice_from_basis(vs: Vec<IntVector>) -> Result<Lattice> {
    Lattice::from_basis(vs)
}

/// Integer types the enumeration kernel can run on.
trait Coord: Clone + Ord + Integer + Signed + Send + Sync {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn count_u128(&self) -> u128;
}

impl Coord for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn count_u128(&self) -> u128 {
        *self as u128
    }
}

impl Coord for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn count_u128(&self) -> u128 {
        ToPrimitive::to_u128(self).expect("lattice point count exceeds u128")
    }
}

/// Counts integer points `y` with `lo <= y <= hi` and `a_h · y <= b_h` for
/// every row. All but the last coordinate are enumerated; the last one is
/// resolved as an exact interval.
fn count_points<T: Coord>(rows: &[(Vec<T>, T)], lo: &[T], hi: &[T]) -> u128 {
    let n = lo.len();
    let sums = vec![T::zero(); rows.len()];
    if n == 1 {
        return last_axis(rows, &sums, &lo[0], &hi[0]);
    }
    let width = span(&lo[0], &hi[0]);
    (0..width)
        .into_par_iter()
        .map(|k| {
            let v = lo[0].clone() + from_u64::<T>(k);
            let sums: Vec<T> = rows.iter().map(|(a, _)| a[0].clone() * v.clone()).collect();
            descend(rows, lo, hi, 1, sums)
        })
        .sum()
}

fn from_u64<T: Coord>(k: u64) -> T {
    T::from_big(&BigInt::from(k)).expect("offset fits")
}

fn span<T: Coord>(lo: &T, hi: &T) -> u64 {
    if hi < lo {
        return 0;
    }
    (hi.clone() - lo.clone() + T::one())
        .count_u128()
        .try_into()
        .expect("enumeration box too wide")
}

fn descend<T: Coord>(rows: &[(Vec<T>, T)], lo: &[T], hi: &[T], level: usize, sums: Vec<T>) -> u128 {
    let n = lo.len();
    if level == n - 1 {
        return last_axis(rows, &sums, &lo[level], &hi[level]);
    }
    let mut cur: Vec<T> = sums
        .iter()
        .zip(rows)
        .map(|(s, (a, _))| s.clone() + a[level].clone() * lo[level].clone())
        .collect();
    let mut v = lo[level].clone();
    let mut total = 0u128;
    while v <= hi[level] {
        total += descend(rows, lo, hi, level + 1, cur.clone());
        for (c, (a, _)) in cur.iter_mut().zip(rows) {
            *c = c.clone() + a[level].clone();
        }
        v = v + T::one();
    }
    total
}

fn last_axis<T: Coord>(rows: &[(Vec<T>, T)], sums: &[T], lo: &T, hi: &T) -> u128 {
    let last = match rows.first() {
        Some((a, _)) => a.len() - 1,
        None => 0,
    };
    let mut lower = lo.clone();
    let mut upper = hi.clone();
    for ((a, b), s) in rows.iter().zip(sums) {
        let c = &a[last];
        let rest = b.clone() - s.clone();
        if c.is_zero() {
            if rest.is_negative() {
                return 0;
            }
        } else if c.is_positive() {
            let bound = rest.div_floor(c);
            if bound < upper {
                upper = bound;
            }
        } else {
            let bound = T::zero() - rest.div_floor(&(T::zero() - c.clone()));
            if bound > lower {
                lower = bound;
            }
        }
        if upper < lower {
            return 0;
        }
    }
    (upper - lower + T::one()).count_u128()
}

/// Counts `|Λ ∩ tP|` for a fixed bounded polytope and full-rank lattice.
///
/// Points are enumerated in lattice coordinates `α` with `x = Bα`. The
/// halfspaces `a · x <= t b` of `tP` are pulled back to `(Bᵀa) · α <= t b`,
/// and the enumeration box is the integer hull of the bounding box of the
/// dilated `α`-vertices.
#[derive(Clone, Debug)]
pub struct DilateCounter {
    dim: usize,
    vertices: VertexSet,
    alpha_vertices: VertexSet,
    rows: Vec<(Vec<BigInt>, BigInt)>,
    alpha_min: Vec<Rational>,
    alpha_max: Vec<Rational>,
    alpha_volume: Rational,
    lattice_det: BigInt,
}

impl DilateCounter {
    pub fn new(p: &HPolytope, lattice: &Lattice) -> Result<Self> {
        if p.dim() != lattice.dim() {
            return Err(Error::Dimension {
                expected: lattice.dim(),
                found: p.dim(),
            });
        }
        let Some(det) = lattice.determinant() else {
            return Err(Error::Domain(
                "dilate counting needs a full-rank lattice".into(),
            ));
        };
        let vertices = enumerate_vertices(p)?;
        Self::with_vertices(p, lattice, vertices, det.clone())
    }

    fn with_vertices(
        p: &HPolytope,
        lattice: &Lattice,
        vertices: VertexSet,
        lattice_det: BigInt,
    ) -> Result<Self> {
        let n = p.dim();
        let b = lattice.basis_matrix();
        let alpha: Vec<RatVector> = vertices
            .vertices()
            .iter()
            .map(|v| {
                linalg::solve(&b, v)?
                    .ok_or_else(|| Error::Domain("full-rank system must be consistent".into()))
            })
            .collect::<Result<_>>()?;
        let alpha_vertices = VertexSet::new(n, alpha)?;
        let rows = p
            .halfspaces()
            .iter()
            .map(|h| {
                let (a, rhs) = h.integer_form();
                let coeffs = lattice
                    .basis()
                    .iter()
                    .map(|w| w.iter().zip(a.iter()).map(|(x, y)| x * y).sum())
                    .collect();
                (coeffs, rhs)
            })
            .collect();
        let mut alpha_min = Vec::with_capacity(n);
        let mut alpha_max = Vec::with_capacity(n);
        for j in 0..n {
            let coords = alpha_vertices.vertices().iter().map(|v| &v[j]);
            alpha_min.push(coords.clone().min().cloned().unwrap_or_else(Rational::zero));
            alpha_max.push(coords.max().cloned().unwrap_or_else(Rational::zero));
        }
        let alpha_volume = volume(&vertices, p) / int_rat(lattice_det.abs());
        Ok(DilateCounter {
            dim: n,
            alpha_volume,
            vertices,
            alpha_vertices,
            rows,
            alpha_min,
            alpha_max,
            lattice_det,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices of `P` in ambient coordinates.
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// Vertices of `P` in lattice coordinates.
    pub fn alpha_vertices(&self) -> &VertexSet {
        &self.alpha_vertices
    }

    pub fn lattice_determinant(&self) -> &BigInt {
        &self.lattice_det
    }

    /// Denominator of `P` relative to the lattice, i.e. of its vertices in
    /// lattice coordinates. The Ehrhart period of `L_{P,Λ}` divides it.
    pub fn denominator(&self) -> BigInt {
        polytope_denominator(&self.alpha_vertices)
    }

    /// `|Λ ∩ tP|`.
    pub fn count(&self, t: u64) -> BigInt {
        let tb = BigInt::from(t);
        let lo: Vec<BigInt> = self
            .alpha_min
            .iter()
            .map(|m| (m * &tb).ceil().to_integer())
            .collect();
        let hi: Vec<BigInt> = self
            .alpha_max
            .iter()
            .map(|m| (m * &tb).floor().to_integer())
            .collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return BigInt::zero();
        }
        let rows: Vec<(Vec<BigInt>, BigInt)> = self
            .rows
            .iter()
            .map(|(a, b)| (a.clone(), b * &tb))
            .collect();
        match to_fast(&rows, &lo, &hi) {
            Some((rows, lo, hi)) => BigInt::from(count_points::<i128>(&rows, &lo, &hi)),
            None => BigInt::from(count_points::<BigInt>(&rows, &lo, &hi)),
        }
    }

    /// `|Λ ∩ tP|` for every `t` in `0..=t_max`.
    ///
    /// When `P` contains the origin, the dilates are nested and a single pass
    /// over `t_max · P` suffices: each point is binned by the smallest `t`
    /// whose dilate contains it. Otherwise every dilate is counted on its own.
    pub fn count_up_to(&self, t_max: u64) -> Vec<BigInt> {
        match self.nested_system(t_max) {
            Some((rows, lo, hi)) => {
                let mut acc = BigInt::zero();
                histogram(&rows, &lo, &hi, t_max)
                    .into_iter()
                    .map(|h| {
                        acc += h;
                        acc.clone()
                    })
                    .collect()
            }
            None => (0..=t_max).map(|t| self.count(t)).collect(),
        }
    }

    /// Enumeration data for the single pass: rows `(a, b)` with `b >= 0` and
    /// the `i128` box of `t_max · P`.
    fn nested_system(&self, t_max: u64) -> Option<FastSystem> {
        if self.rows.iter().any(|(_, b)| b.is_negative()) {
            return None;
        }
        let tb = BigInt::from(t_max);
        let lo: Vec<BigInt> = self
            .alpha_min
            .iter()
            .map(|m| (m * &tb).ceil().to_integer())
            .collect();
        let hi: Vec<BigInt> = self
            .alpha_max
            .iter()
            .map(|m| (m * &tb).floor().to_integer())
            .collect();
        let scaled: Vec<(Vec<BigInt>, BigInt)> = self
            .rows
            .iter()
            .map(|(a, b)| (a.clone(), b * &tb))
            .collect();
        to_fast(&scaled, &lo, &hi)?;
        to_fast(&self.rows, &lo, &hi)
    }

    /// Compares the work of the two strategies: prefix cells visited per
    /// dilate against one pass over the prefixes and points of the largest.
    fn prefers_single_pass(&self, dilates: &[u64]) -> bool {
        let Some(&t_max) = dilates.iter().max() else {
            return false;
        };
        if self.nested_system(t_max).is_none() {
            return false;
        }
        let n = self.dim;
        let prefixes = |t: u64| -> Rational {
            let tr = int_rat(BigInt::from(t));
            (0..n - 1)
                .map(|j| (&self.alpha_max[j] - &self.alpha_min[j]) * &tr + Rational::one())
                .product()
        };
        let separate: Rational = dilates.iter().map(|&t| prefixes(t)).sum();
        let points = &self.alpha_volume * int_rat(BigInt::from(t_max).pow(n as u32));
        prefixes(t_max) + points <= separate
    }

    pub fn count_series(&self, dilates: &[u64]) -> Result<CountSeries> {
        if self.prefers_single_pass(dilates) {
            let max = *dilates.iter().max().expect("nonempty");
            let all = self.count_up_to(max);
            CountSeries::new(
                dilates
                    .iter()
                    .map(|&t| (t, all[t as usize].clone()))
                    .collect(),
            )
        } else {
            CountSeries::new(dilates.iter().map(|&t| (t, self.count(t))).collect())
        }
    }
}

/// Bins the integer points of `t_max · P` by the least `t >= 0` with
/// `a · y <= t b` for every row. Needs `b >= 0` for every row.
fn histogram(rows: &[(Vec<i128>, i128)], lo: &[i128], hi: &[i128], t_max: u64) -> Vec<u64> {
    let bins = t_max as usize + 1;
    let n = lo.len();
    let zero = vec![0i128; rows.len()];
    if n == 1 || lo[0] > hi[0] {
        let mut h = vec![0; bins];
        bin_points(rows, lo, hi, 0, zero, t_max as i128, &mut h);
        return h;
    }
    (lo[0]..=hi[0])
        .into_par_iter()
        .fold(
            || vec![0u64; bins],
            |mut h, v| {
                let sums: Vec<i128> = rows.iter().map(|(a, _)| a[0] * v).collect();
                bin_points(rows, lo, hi, 1, sums, t_max as i128, &mut h);
                h
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn bin_points(
    rows: &[(Vec<i128>, i128)],
    lo: &[i128],
    hi: &[i128],
    level: usize,
    sums: Vec<i128>,
    t_max: i128,
    h: &mut [u64],
) {
    if level + 1 < lo.len() {
        let mut cur: Vec<i128> = sums
            .iter()
            .zip(rows)
            .map(|(s, (a, _))| s + a[level] * lo[level])
            .collect();
        for _ in lo[level]..=hi[level] {
            bin_points(rows, lo, hi, level + 1, cur.clone(), t_max, h);
            for (c, (a, _)) in cur.iter_mut().zip(rows) {
                *c += a[level];
            }
        }
        return;
    }
    // feasible interval of the last coordinate inside t_max · P
    let (mut lower, mut upper) = (lo[level], hi[level]);
    for ((a, b), s) in rows.iter().zip(&sums) {
        let c = a[level];
        let rest = b * t_max - s;
        if c == 0 {
            if rest < 0 {
                return;
            }
        } else if c > 0 {
            upper = upper.min(Integer::div_floor(&rest, &c));
        } else {
            lower = lower.max(-Integer::div_floor(&rest, &-c));
        }
    }
    if lower > upper {
        return;
    }
    let mut values: Vec<i128> = sums
        .iter()
        .zip(rows)
        .map(|(s, (a, _))| s + a[level] * lower)
        .collect();
    for _ in lower..=upper {
        let mut need = 0i128;
        for (value, (_, b)) in values.iter().zip(rows) {
            let t = match *b {
                0 => continue,
                1 => *value,
                b => Integer::div_ceil(value, &b),
            };
            need = need.max(t);
        }
        h[need as usize] += 1;
        for (value, (a, _)) in values.iter_mut().zip(rows) {
            *value += a[level];
        }
    }
}

type FastSystem = (Vec<(Vec<i128>, i128)>, Vec<i128>, Vec<i128>);

/// Converts to `i128` when no partial sum can overflow.
fn to_fast(rows: &[(Vec<BigInt>, BigInt)], lo: &[BigInt], hi: &[BigInt]) -> Option<FastSystem> {
    let x: BigInt = lo
        .iter()
        .chain(hi)
        .map(|v| v.abs())
        .max()
        .unwrap_or_default()
        + 1;
    let a: BigInt = rows
        .iter()
        .flat_map(|(a, _)| a.iter().map(|v| v.abs()))
        .max()
        .unwrap_or_default();
    let b: BigInt = rows.iter().map(|(_, b)| b.abs()).max().unwrap_or_default();
    let bound = BigInt::from(lo.len() + 1) * a * x + b;
    if bound.bits() > 120 {
        return None;
    }
    let rows = rows
        .iter()
        .map(|(a, b)| {
            Some((
                a.iter().map(|v| v.to_i128()).collect::<Option<_>>()?,
                b.to_i128()?,
            ))
        })
        .collect::<Option<_>>()?;
    let lo = lo.iter().map(|v| v.to_i128()).collect::<Option<_>>()?;
    let hi = hi.iter().map(|v| v.to_i128()).collect::<Option<_>>()?;
    Some((rows, lo, hi))
}

/// `|Λ ∩ tP|` for a bounded polytope and a full-rank lattice.
pub fn count_dilate(p: &HPolytope, lattice: &Lattice, t: u64) -> Result<BigInt> {
    Ok(DilateCounter::new(p, lattice)?.count(t))
}

/// `|B_{p,r} ∩ Z^n|`, by closed form for L1 and Linf and by exact
/// enumeration for L2.
pub fn ball_lattice_count(norm: NormKind, r: u64, dim: usize) -> BigInt {
    match norm {
        NormKind::Linf => BigInt::from(2 * r as u128 + 1).pow(dim as u32),
        NormKind::L1 => (0..=dim.min(r as usize) as u64)
            .map(|k| (BigInt::one() << k) * binomial(dim as u64, k) * binomial(r, k))
            .sum(),
        NormKind::L2 => BigInt::from(l2_count(dim, r as u128 * r as u128)),
    }
}

/// Number of integer points with `sum x_i^2 <= budget`.
fn l2_count(dim: usize, budget: u128) -> u128 {
    match dim {
        0 => 1,
        1 => 2 * budget.sqrt() + 1,
        _ => {
            let s = budget.sqrt();
            let inner: u128 = (1..=s).map(|x| l2_count(dim - 1, budget - x * x)).sum();
            l2_count(dim - 1, budget) + 2 * inner
        }
    }
}

/// Exact lattice-point counts at strictly increasing dilates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    entries: Vec<(u64, BigInt)>,
}

impl CountSeries {
    pub fn new(entries: Vec<(u64, BigInt)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain("dilates must be strictly increasing".into()));
        }
        Ok(CountSeries { entries })
    }

    pub fn entries(&self) -> &[(u64, BigInt)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `Q(t) = c_d(t) t^d + ... + c_0(t)` with coefficients periodic in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    degree: usize,
    period: u64,
    coefficients: Vec<Vec<Rational>>,
}

impl Quasipolynomial {
    /// `coefficients[r]` lists `c_0, ..., c_d` for `t ≡ r (mod period)`.
    pub fn new(period: u64, coefficients: Vec<Vec<Rational>>) -> Result<Self> {
        if period == 0 || coefficients.len() as u64 != period {
            return Err(Error::Domain(format!(
                "expected {period} residue rows, got {}",
                coefficients.len()
            )));
        }
        let width = coefficients[0].len();
        if width == 0 || coefficients.iter().any(|row| row.len() != width) {
            return Err(Error::Domain(
                "residue rows must have equal nonzero length".into(),
            ));
        }
        let mut q = Quasipolynomial {
            degree: width - 1,
            period,
            coefficients,
        };
        q.trim();
        Ok(q)
    }

    fn trim(&mut self) {
        while self.degree > 0
            && self
                .coefficients
                .iter()
                .all(|row| row[self.degree].is_zero())
        {
            for row in &mut self.coefficients {
                row.pop();
            }
            self.degree -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn coefficients(&self) -> &[Vec<Rational>] {
        &self.coefficients
    }

    pub fn eval(&self, t: u64) -> Rational {
        let row = &self.coefficients[(t % self.period) as usize];
        let x = int_rat(BigInt::from(t));
        row.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// The top coefficient, which must agree across residue classes.
    pub fn leading_coefficient(&self) -> Result<Rational> {
        let lead = self.coefficients[0][self.degree].clone();
        if let Some((r, row)) = self
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, row)| row[self.degree] != lead)
        {
            return Err(Error::Constancy(format!(
                "residue 0 has {lead}, residue {r} has {}",
                row[self.degree]
            )));
        }
        Ok(lead)
    }
}

pub fn eval_quasipolynomial(q: &Quasipolynomial, t: u64) -> Rational {
    q.eval(t)
}

pub fn leading_coefficient(q: &Quasipolynomial) -> Result<Rational> {
    q.leading_coefficient()
}

/// Monomial coefficients of the interpolating polynomial through the points.
fn interpolate(points: &[(u64, &BigInt)]) -> Vec<Rational> {
    let xs: Vec<Rational> = points
        .iter()
        .map(|(t, _)| int_rat(BigInt::from(*t)))
        .collect();
    // Newton divided differences
    let mut dd: Vec<Rational> = points.iter().map(|(_, c)| int_rat((*c).clone())).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = vec![dd.last().cloned().unwrap_or_else(Rational::zero)];
    for k in (0..dd.len().saturating_sub(1)).rev() {
        // poly <- poly * (t - x_k) + dd[k]
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly
}

/// Fits a quasipolynomial of the given degree and period through the counts.
///
/// Each residue class is interpolated through its first `degree + 1`
/// samples; every remaining sample must then be reproduced exactly.
pub fn ehrhart_fit(counts: &CountSeries, degree: usize, period: u64) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::Domain("period must be positive".into()));
    }
    let mut classes: BTreeMap<u64, Vec<(u64, &BigInt)>> =
        (0..period).map(|r| (r, Vec::new())).collect();
    for (t, c) in &counts.entries {
        classes
            .get_mut(&(t % period))
            .expect("all residues present")
            .push((*t, c));
    }
    let need = degree + 1;
    let mut rows = Vec::with_capacity(period as usize);
    for (residue, samples) in &classes {
        if samples.len() < need {
            return Err(Error::InsufficientSamples {
                residue: *residue,
                period,
                have: samples.len(),
                need,
            });
        }
        let mut row = interpolate(&samples[..need]);
        row.resize(need, Rational::zero());
        rows.push(row);
    }
    let q = Quasipolynomial::new(period, rows)?;
    for (t, c) in &counts.entries {
        let fitted = q.eval(*t);
        if fitted != int_rat(c.clone()) {
            return Err(Error::Inconsistent {
                dilate: *t,
                count: c.clone(),
                fitted: fitted.to_string(),
            });
        }
    }
    Ok(q)
}

/// Dilates `r + period * j` for every residue `r` and `j = 1..=degree + 2`:
/// one held-out sample per class beyond the `degree + 1` needed.
pub fn sample_dilates(degree: usize, period: u64) -> Vec<u64> {
    let mut ts: Vec<u64> = (0..period)
        .flat_map(|r| (1..=degree as u64 + 2).map(move |j| r + period * j))
        .collect();
    ts.sort_unstable();
    ts
}

/// Candidate periods in the order they are tried: the lattice-relative
/// denominator, its double, then the lcm with the ambient denominator times
/// the lattice determinant.
pub fn candidate_periods(counter: &DilateCounter) -> Result<Vec<u64>> {
    let d = counter.denominator();
    let refined =
        d.lcm(&(polytope_denominator(counter.vertices()) * counter.lattice_determinant()));
    let mut out: Vec<u64> = Vec::new();
    for p in [d.clone(), d * 2, refined] {
        let p = p
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("period {p} is too large to sample")))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Fits `L_{P,Λ}` by sampling `counter` at [`sample_dilates`], retrying the
/// candidate periods when a fit is inconsistent.
pub fn fit_ehrhart(counter: &DilateCounter) -> Result<Quasipolynomial> {
    let periods = candidate_periods(counter)?;
    for &period in &periods {
        let series = counter.count_series(&sample_dilates(counter.dim(), period))?;
        match ehrhart_fit(&series, counter.dim(), period) {
            Ok(q) => return Ok(q),
            Err(Error::Inconsistent { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::FitFailed(periods))
}

/// Fits a supplied series, retrying the given periods in order.
pub fn fit_series(series: &CountSeries, degree: usize, periods: &[u64]) -> Result<Quasipolynomial> {
    for &period in periods {
        match ehrhart_fit(series, degree, period) {
            Ok(q) => return Ok(q),
            Err(Error::Inconsistent { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::FitFailed(periods.to_vec()))
}
