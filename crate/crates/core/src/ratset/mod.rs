//! Semi-simple subsets of `Z^n`: finite disjoint unions of simple sets
//! `a + B*`, where `B` is linearly independent.

mod syntax;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, adjugate, IntMatrix, IntVector};
use crate::scan::for_each_cube_point;

pub use syntax::{format, parse};

/// `offset + generators*`. An empty generator list is the singleton `{offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleComponent {
    offset: IntVector,
    generators: Vec<IntVector>,
}

impl SimpleComponent {
    pub fn new(offset: IntVector, generators: Vec<IntVector>) -> Result<Self> {
        if offset.dim() == 0 {
            return Err(Error::Domain("component vectors must be nonempty".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != offset.dim()) {
            return Err(Error::Dimension {
                expected: offset.dim(),
                found: g.dim(),
            });
        }
        Ok(SimpleComponent { offset, generators })
    }

    pub fn monoid(generators: Vec<IntVector>) -> Result<Self> {
        let dim = generators.first().map_or(0, IntVector::dim);
        Self::new(IntVector::zeros(dim), generators)
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn offset(&self) -> &IntVector {
        &self.offset
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim(), self.generators.clone()).expect("dims checked")
    }

    /// Lattice spanned by the generators, if there are any and they are independent.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_basis(self.generators.clone())
    }

    pub fn validate(&self, index: usize) -> ComponentReport {
        let mut issues = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_zero() {
                issues.push(ComponentIssue::ZeroGenerator { position: i });
            }
            if let Some(j) = self.generators[..i].iter().position(|h| h == g) {
                issues.push(ComponentIssue::DuplicateGenerator {
                    first: j,
                    second: i,
                });
            }
        }
        let rank = linalg::rank(&self.generator_matrix());
        let count = self.generators.len();
        if rank < count {
            issues.push(ComponentIssue::Dependent { rank, count });
        }
        let full_rank = rank == count && count == self.dim();
        let determinant = full_rank
            .then(|| linalg::det(&self.generator_matrix()).map(|d| d.abs()).ok())
            .flatten();
        ComponentReport {
            index,
            generator_count: count,
            rank,
            full_rank,
            determinant,
            issues,
        }
    }
}

/// Finite union of simple components, all in the same dimension. The union
/// is meant to be disjoint; see [`check_disjoint_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSimpleSet {
    dim: usize,
    components: Vec<SimpleComponent>,
}

impl SemiSimpleSet {
    pub fn new(dim: usize, components: Vec<SimpleComponent>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if let Some(c) = components.iter().find(|c| c.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: c.dim(),
            });
        }
        Ok(SemiSimpleSet { dim, components })
    }

    /// The empty subset of `Z^dim` (no components).
    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.components
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            dim: self.dim,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| c.validate(i))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentIssue {
    ZeroGenerator { position: usize },
    DuplicateGenerator { first: usize, second: usize },
    Dependent { rank: usize, count: usize },
}

impl std::fmt::Display for ComponentIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentIssue::ZeroGenerator { position } => {
                write!(f, "generator {position} is the zero vector")
            }
            ComponentIssue::DuplicateGenerator { first, second } => {
                write!(f, "generators {first} and {second} are equal")
            }
            ComponentIssue::Dependent { rank, count } => write!(
                f,
                "generators are linearly dependent (rank {rank} < {count}), so B* is not free"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub index: usize,
    pub generator_count: usize,
    pub rank: usize,
    pub full_rank: bool,
    /// `d(Λ(B))` for full-rank components.
    pub determinant: Option<BigInt>,
    pub issues: Vec<ComponentIssue>,
}

impl ComponentReport {
    pub fn is_simple(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub components: Vec<ComponentReport>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.components.iter().all(ComponentReport::is_simple)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComponentReport> {
        self.components.iter().filter(|c| !c.is_simple())
    }
}

pub fn validate(s: &SemiSimpleSet) -> ValidationReport {
    s.validate()
}

/// Membership proof: `x = offset + Σ coefficients_i · generators_i` in the
/// given component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub component: usize,
    pub coefficients: Vec<BigInt>,
}

/// Solves `generators · α = y` through a fixed invertible `k × k` row
/// selection and its adjugate; the remaining rows are checked afterwards.
#[derive(Clone, Debug)]
struct ComponentSolver {
    offset: Vec<BigInt>,
    generators: Vec<IntVector>,
    pivot_rows: Vec<usize>,
    adj: Vec<Vec<BigInt>>,
    det: BigInt,
    fast: Option<FastSolver>,
}

#[derive(Clone, Debug)]
struct FastSolver {
    offset: Vec<i128>,
    generators: Vec<Vec<i128>>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

enum Fast {
    Member(bool),
    Overflow,
}

impl ComponentSolver {
    fn new(c: &SimpleComponent) -> Self {
        let n = c.dim();
        let k = c.generators.len();
        let mut pivot_rows = Vec::with_capacity(k);
        for r in 0..n {
            if pivot_rows.len() == k {
                break;
            }
            let mut trial = pivot_rows.clone();
            trial.push(r);
            let cols: Vec<IntVector> = trial
                .iter()
                .map(|&i| IntVector::new(c.generators.iter().map(|g| g[i].clone()).collect()))
                .collect();
            let m = IntMatrix::from_columns(k, cols).expect("k-dim rows");
            if linalg::rank(&m) == trial.len() {
                pivot_rows = trial;
            }
        }
        let sub: Vec<Vec<BigInt>> = pivot_rows
            .iter()
            .map(|&i| c.generators.iter().map(|g| g[i].clone()).collect())
            .collect();
        let (adj, det) = if k == 0 {
            (Vec::new(), BigInt::from(1))
        } else {
            adjugate(&sub)
        };
        let small = |v: &BigInt| v.to_i64().map(i128::from);
        let fast = (|| {
            Some(FastSolver {
                offset: c.offset.iter().map(small).collect::<Option<_>>()?,
                generators: c
                    .generators
                    .iter()
                    .map(|g| g.iter().map(small).collect::<Option<_>>())
                    .collect::<Option<_>>()?,
                adj: adj
                    .iter()
                    .map(|row| row.iter().map(small).collect::<Option<_>>())
                    .collect::<Option<_>>()?,
                det: small(&det)?,
            })
        })();
        ComponentSolver {
            offset: c.offset.to_vec(),
            generators: c.generators.clone(),
            pivot_rows,
            adj,
            det,
            fast,
        }
    }

    fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y: Vec<BigInt> = x.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let mut alpha = Vec::with_capacity(self.generators.len());
        for row in &self.adj {
            let num: BigInt = row
                .iter()
                .zip(&self.pivot_rows)
                .map(|(a, &r)| a * &y[r])
                .sum();
            let (q, rem) = num.div_rem(&self.det);
            if !rem.is_zero() || q.is_negative() {
                return None;
            }
            alpha.push(q);
        }
        for (i, yi) in y.iter().enumerate() {
            let lhs: BigInt = self
                .generators
                .iter()
                .zip(&alpha)
                .map(|(g, a)| &g[i] * a)
                .sum();
            if &lhs != yi {
                return None;
            }
        }
        Some(alpha)
    }

    fn contains_fast(&self, x: &[i64]) -> Fast {
        let Some(f) = &self.fast else {
            return Fast::Overflow;
        };
        let mut y = Vec::with_capacity(x.len());
        for (a, b) in x.iter().zip(&f.offset) {
            y.push(i128::from(*a) - b);
        }
        let mut alpha = Vec::with_capacity(f.adj.len());
        for row in &f.adj {
            let mut num = 0i128;
            for (a, &r) in row.iter().zip(&self.pivot_rows) {
                let Some(v) = a.checked_mul(y[r]).and_then(|p| p.checked_add(num)) else {
                    return Fast::Overflow;
                };
                num = v;
            }
            if num % f.det != 0 {
                return Fast::Member(false);
            }
            let q = num / f.det;
            if q < 0 {
                return Fast::Member(false);
            }
            alpha.push(q);
        }
        for (i, yi) in y.iter().enumerate() {
            let mut lhs = 0i128;
            for (g, a) in f.generators.iter().zip(&alpha) {
                let Some(v) = g[i].checked_mul(*a).and_then(|p| p.checked_add(lhs)) else {
                    return Fast::Overflow;
                };
                lhs = v;
            }
            if lhs != *yi {
                return Fast::Member(false);
            }
        }
        Fast::Member(true)
    }

    fn contains_i64(&self, x: &[i64]) -> bool {
        match self.contains_fast(x) {
            Fast::Member(m) => m,
            Fast::Overflow => {
                let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                self.solve(&big).is_some()
            }
        }
    }
}

/// A semi-simple set whose components all passed validation.
#[derive(Clone, Debug)]
pub struct ValidatedSet {
    set: SemiSimpleSet,
    report: ValidationReport,
    solvers: Vec<ComponentSolver>,
}

impl ValidatedSet {
    pub fn new(set: SemiSimpleSet) -> Result<Self> {
        let report = set.validate();
        if !report.is_valid() {
            let reasons: Vec<String> = report
                .failures()
                .map(|c| {
                    let issues: Vec<String> = c.issues.iter().map(ToString::to_string).collect();
                    format!("component {}: {}", c.index, issues.join("; "))
                })
                .collect();
            return Err(Error::Contract(format!(
                "set is not semi-simple: {}",
                reasons.join(", ")
            )));
        }
        let solvers = set.components.iter().map(ComponentSolver::new).collect();
        Ok(ValidatedSet {
            set,
            report,
            solvers,
        })
    }

    pub fn set(&self) -> &SemiSimpleSet {
        &self.set
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn dim(&self) -> usize {
        self.set.dim
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.set.components
    }

    /// The first component containing `x`, with its coefficient vector.
    pub fn membership(&self, x: &IntVector) -> Result<Option<Witness>> {
        if x.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self.solvers.iter().enumerate().find_map(|(i, s)| {
            s.solve(x).map(|coefficients| Witness {
                component: i,
                coefficients,
            })
        }))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.solvers.iter().any(|s| s.contains_i64(x))
    }

    /// Indices of every component containing `x`.
    pub fn components_containing(&self, x: &[i64]) -> Vec<usize> {
        self.solvers
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains_i64(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether component `index` contains `x`.
    pub fn component_contains(&self, index: usize, x: &[i64]) -> bool {
        self.solvers[index].contains_i64(x)
    }
}

pub fn membership(s: &ValidatedSet, x: &IntVector) -> Result<Option<Witness>> {
    s.membership(x)
}

/// A point lying in more than one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub point: IntVector,
    pub components: Vec<usize>,
}

/// Outcome of a bounded disjointness scan. A clean result only says that no
/// overlap exists inside the scanned cube; it is not a proof of disjointness
/// unless the set has at most one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessReport {
    pub radius: u64,
    pub points_scanned: u128,
    pub overlap_count: u128,
    /// The first overlaps in lexicographic order (at most [`MAX_WITNESSES`]).
    pub witnesses: Vec<Overlap>,
    /// True when disjointness holds for a structural reason (≤ 1 component).
    pub trivially_disjoint: bool,
}

pub const MAX_WITNESSES: usize = 16;

impl DisjointnessReport {
    pub fn is_clean(&self) -> bool {
        self.overlap_count == 0
    }
}

/// Looks for points of `[-radius, radius]^n` lying in two or more components.
pub fn check_disjoint_bounded(s: &ValidatedSet, radius: u64) -> DisjointnessReport {
    let n = s.dim();
    let side = 2 * radius as u128 + 1;
    let points_scanned = side.pow(n as u32);
    if s.components().len() <= 1 {
        return DisjointnessReport {
            radius,
            points_scanned: 0,
            overlap_count: 0,
            witnesses: Vec::new(),
            trivially_disjoint: true,
        };
    }
    let r = radius as i64;
    let slices: Vec<(u128, Vec<Overlap>)> = (-r..=r)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u128;
            let mut found = Vec::new();
            let mut point = vec![0i64; n];
            point[0] = first;
            for_each_cube_point(n - 1, radius, |rest| {
                point[1..].copy_from_slice(rest);
                let hits = s.components_containing(&point);
                if hits.len() > 1 {
                    count += 1;
                    if found.len() < MAX_WITNESSES {
                        found.push(Overlap {
                            point: IntVector::from_i64(&point),
                            components: hits,
                        });
                    }
                }
            });
            (count, found)
        })
        .collect();
    let overlap_count = slices.iter().map(|(c, _)| c).sum();
    let witnesses = slices
        .into_iter()
        .flat_map(|(_, w)| w)
        .take(MAX_WITNESSES)
        .collect();
    DisjointnessReport {
        radius,
        points_scanned,
        overlap_count,
        witnesses,
        trivially_disjoint: false,
    }
}

/// All points `offset + Σ m_i g_i` with `0 <= m_i <= bound`.
pub fn generate_points(c: &SimpleComponent, bound: u64) -> HashSet<IntVector> {
    let k = c.generators.len();
    let mut out = HashSet::new();
    let mut m = vec![0u64; k];
    loop {
        let mut x = c.offset.clone();
        for (g, &mi) in c.generators.iter().zip(&m) {
            x = x.add(&g.scale(&BigInt::from(mi)));
        }
        out.insert(x);
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if m[j] < bound {
                m[j] += 1;
                break;
            }
            m[j] = 0;
        }
    }
}
