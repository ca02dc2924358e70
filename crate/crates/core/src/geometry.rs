//! Rational polytopes: norm balls, simplicial cones, vertex enumeration and
//! exact volume.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    self, adjugate, factorial, int_rat, rational_det, rational_rank, IntMatrix, IntVector,
    RatVector, Rational, Solved,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

impl NormKind {
    /// Whether the unit ball of this norm is a rational polytope.
    pub fn is_polytope(self) -> bool {
        !matches!(self, NormKind::L2)
    }

    /// Short label used on the command line: `1`, `2` or `inf`.
    pub fn label(self) -> &'static str {
        match self {
            NormKind::L1 => "1",
            NormKind::L2 => "2",
            NormKind::Linf => "inf",
        }
    }

    pub(crate) fn require_polytope(self) -> Result<()> {
        if self.is_polytope() {
            Ok(())
        } else {
            Err(Error::UnsupportedNorm("2"))
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.label())
    }
}

impl FromStr for NormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "l1" => Ok(NormKind::L1),
            "2" | "l2" => Ok(NormKind::L2),
            "inf" | "linf" | "infinity" => Ok(NormKind::Linf),
            other => Err(format!("unknown norm '{other}' (expected 1, 2 or inf)")),
        }
    }
}

/// The closed halfspace `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    normal: RatVector,
    offset: Rational,
}

impl Halfspace {
    pub fn new(normal: RatVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::Domain("halfspace normal must be nonzero".into()));
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Result<Self> {
        Self::new(RatVector::from_i64(normal), int_rat(offset.into()))
    }

    pub fn normal(&self) -> &RatVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.normal.dot(x) <= self.offset
    }

    pub fn is_active(&self, x: &RatVector) -> bool {
        self.normal.dot(x) == self.offset
    }

    /// Equivalent constraint with integer data: `(a, b)` with `a · x <= b`.
    pub fn integer_form(&self) -> (IntVector, BigInt) {
        let d = self.normal.denominator_lcm().lcm(self.offset.denom());
        let a = self
            .normal
            .iter()
            .map(|e| e.numer() * (&d / e.denom()))
            .collect();
        let b = self.offset.numer() * (&d / self.offset.denom());
        (IntVector::new(a), b)
    }
}

/// Intersection of finitely many closed halfspaces. Redundant halfspaces are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("polytope dimension must be positive".into()));
        }
        if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: h.normal.dim(),
            });
        }
        Ok(HPolytope { dim, halfspaces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Axis-aligned box `[lo_j, hi_j]` as a polytope.
    pub fn from_box(lo: &[i64], hi: &[i64]) -> Result<Self> {
        let dim = lo.len();
        let mut hs = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            let e = IntVector::unit(dim, j, 1).to_rational();
            hs.push(Halfspace::new(e.clone(), int_rat(hi[j].into()))?);
            hs.push(Halfspace::new(
                e.scale(&-Rational::one()),
                int_rat((-lo[j]).into()),
            )?);
        }
        Self::new(dim, hs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    dim: usize,
    vertices: Vec<RatVector>,
}

impl VertexSet {
    /// Builds a vertex set, dropping exact duplicates and sorting the rest.
    pub fn new(dim: usize, mut vertices: Vec<RatVector>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: v.dim(),
            });
        }
        vertices.sort();
        vertices.dedup();
        Ok(VertexSet { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull (`None` for the empty set).
    pub fn affine_dim(&self) -> Option<usize> {
        affine_dim(&self.vertices.iter().collect::<Vec<_>>())
    }

    /// The vertex set dilated by an integer factor.
    pub fn dilate(&self, t: &BigInt) -> VertexSet {
        let f = int_rat(t.clone());
        VertexSet {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(&f)).collect(),
        }
    }
}

/// The simplicial cone spanned by linearly independent integer generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<IntVector>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<IntVector>) -> Result<Self> {
        let m = IntMatrix::from_columns(dim, generators.clone())?;
        if linalg::rank(&m) != generators.len() {
            return Err(Error::Rank("cone generators are linearly dependent".into()));
        }
        Ok(Cone { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }
}

/// H-representation of the closed unit ball of an L1 or Linf norm.
pub fn ball_polytope(norm: NormKind, dim: usize) -> Result<HPolytope> {
    norm.require_polytope()?;
    let mut halfspaces = Vec::new();
    match norm {
        NormKind::L1 => {
            for mask in 0u64..(1u64 << dim) {
                let signs: Vec<i64> = (0..dim)
                    .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                    .collect();
                halfspaces.push(Halfspace::from_i64(&signs, 1)?);
            }
        }
        NormKind::Linf => {
            for j in 0..dim {
                for sign in [1, -1] {
                    let e = IntVector::unit(dim, j, sign).to_rational();
                    halfspaces.push(Halfspace::new(e, Rational::one())?);
                }
            }
        }
        NormKind::L2 => unreachable!(),
    }
    HPolytope::new(dim, halfspaces)
}

/// Volume of the unit ball: `2^n / n!` for L1 and `2^n` for Linf.
pub fn ball_volume(norm: NormKind, dim: usize) -> Result<Rational> {
    norm.require_polytope()?;
    let cube = BigInt::one() << dim;
    Ok(match norm {
        NormKind::L1 => Rational::new(cube, factorial(dim)),
        _ => int_rat(cube),
    })
}

/// Halfspaces `(B^{-1} x)_i >= 0` describing a full-dimensional simplicial cone.
///
/// Row `i` of the adjugate gives the normal, so every normal is integral;
/// rows are divided by their content.
pub fn cone_halfspaces(cone: &Cone) -> Result<HPolytope> {
    let n = cone.dim;
    if cone.generators.len() != n {
        return Err(Error::Rank(format!(
            "cone has {} generators in dimension {n}; a full-dimensional cone needs {n}",
            cone.generators.len()
        )));
    }
    let b = IntMatrix::from_columns(n, cone.generators.clone())?.to_rows();
    let (adj, det) = adjugate(&b);
    if det.is_zero() {
        return Err(Error::Rank("cone generators are linearly dependent".into()));
    }
    // (B^{-1} x)_i = adj_i · x / det >= 0  <=>  -sign(det) adj_i · x <= 0
    let flip = if det.is_positive() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let halfspaces = adj
        .into_iter()
        .map(|row| {
            let content = row.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
            let normal: Vec<BigInt> = row.iter().map(|e| e / &content * &flip).collect();
            Halfspace::new(IntVector::new(normal).to_rational(), Rational::zero())
        })
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(n, halfspaces)
}

/// Intersection of two polytopes in the same dimension.
pub fn intersect(a: &HPolytope, b: &HPolytope) -> Result<HPolytope> {
    if a.dim != b.dim {
        return Err(Error::Dimension {
            expected: a.dim,
            found: b.dim,
        });
    }
    let mut halfspaces = a.halfspaces.clone();
    halfspaces.extend(b.halfspaces.iter().cloned());
    HPolytope::new(a.dim, halfspaces)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Exact vertex set of a bounded polytope.
///
/// Every `dim`-subset of halfspaces with an invertible normal matrix is solved
/// as an equality system; feasible solutions are the vertices. Boundedness is
/// checked on a best-effort basis: a polytope without vertices, or one whose
/// normals do not span, is rejected, and when fewer than `dim + 1` vertices
/// turn up the recession cone is checked explicitly.
pub fn enumerate_vertices(p: &HPolytope) -> Result<VertexSet> {
    let n = p.dim;
    let rows: Vec<(IntVector, BigInt)> = p.halfspaces.iter().map(Halfspace::integer_form).collect();
    let normals = IntMatrix::from_columns(n, rows.iter().map(|r| r.0.clone()).collect())?;
    if linalg::rank(&normals) < n {
        return Err(Error::Unbounded(
            "halfspace normals do not span the ambient space".into(),
        ));
    }
    let vertices = vertices_of_rows(n, &rows);
    if vertices.is_empty() {
        return Err(Error::Unbounded("no vertices found".into()));
    }
    let set = VertexSet::new(n, vertices)?;
    if set.len() <= n && !recession_cone_is_trivial(n, &rows)? {
        return Err(Error::Unbounded(format!(
            "only {} vertices and a nontrivial recession cone",
            set.len()
        )));
    }
    Ok(set)
}

fn vertices_of_rows(n: usize, rows: &[(IntVector, BigInt)]) -> Vec<RatVector> {
    let mut found: Vec<RatVector> = combinations(rows.len(), n)
        .into_par_iter()
        .filter_map(|subset| {
            let a: Vec<Vec<BigInt>> = subset.iter().map(|&i| rows[i].0.to_vec()).collect();
            let b: Vec<BigInt> = subset.iter().map(|&i| rows[i].1.clone()).collect();
            let Solved::Unique(x) = linalg::solve_rows(&a, &b) else {
                return None;
            };
            let x = RatVector::new(x);
            let (num, den) = x.clear_denominators();
            let feasible = rows.iter().all(|(a, b)| {
                let lhs: BigInt = a.iter().zip(num.iter()).map(|(ai, xi)| ai * xi).sum();
                lhs <= b * &den
            });
            feasible.then_some(x)
        })
        .collect();
    found.sort();
    found.dedup();
    found
}

/// `{d : A d <= 0} == {0}`, decided by enumerating the vertices of that cone
/// cut down to the cube `[-1, 1]^n`.
fn recession_cone_is_trivial(n: usize, rows: &[(IntVector, BigInt)]) -> Result<bool> {
    let mut cone_rows: Vec<(IntVector, BigInt)> = rows
        .iter()
        .map(|(a, _)| (a.clone(), BigInt::zero()))
        .collect();
    for j in 0..n {
        for sign in [1, -1] {
            cone_rows.push((IntVector::unit(n, j, sign), BigInt::one()));
        }
    }
    let vs = vertices_of_rows(n, &cone_rows);
    Ok(vs.iter().all(RatVector::is_zero))
}

fn affine_dim(points: &[&RatVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<RatVector> = rest.iter().map(|v| v.sub(first)).collect();
    Some(rational_rank(&diffs))
}

/// Pulling triangulation of a face given by vertex indices.
///
/// The face's facets are its intersections with the active sets of the
/// halfspaces that have affine dimension one less; each facet not containing
/// the apex (the smallest index) is triangulated recursively and coned to it.
fn triangulate(
    face: &[usize],
    face_dim: usize,
    vertices: &[RatVector],
    active: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    if face_dim == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut simplices = Vec::new();
    for set in active {
        let facet: Vec<usize> = face
            .iter()
            .copied()
            .filter(|i| set.binary_search(i).is_ok())
            .collect();
        if facet.len() < face_dim || facet.first() == Some(&apex) || seen.contains(&facet) {
            continue;
        }
        let pts: Vec<&RatVector> = facet.iter().map(|&i| &vertices[i]).collect();
        if affine_dim(&pts) != Some(face_dim - 1) {
            continue;
        }
        for mut simplex in triangulate(&facet, face_dim - 1, vertices, active) {
            simplex.push(apex);
            simplices.push(simplex);
        }
        seen.insert(facet);
    }
    simplices
}

/// Exact `dim`-dimensional volume of a polytope given with its vertex set.
///
/// Lower-dimensional polytopes have volume 0.
pub fn volume(v: &VertexSet, p: &HPolytope) -> Rational {
    let n = v.dim;
    let vertices = &v.vertices;
    if vertices.len() < n + 1 || v.affine_dim() != Some(n) {
        return Rational::zero();
    }
    let active: Vec<Vec<usize>> = p
        .halfspaces
        .iter()
        .map(|h| {
            (0..vertices.len())
                .filter(|&i| h.is_active(&vertices[i]))
                .collect()
        })
        .collect();
    let all: Vec<usize> = (0..vertices.len()).collect();
    let simplices = triangulate(&all, n, vertices, &active);
    let total = simplices
        .par_iter()
        .map(|s| {
            let base = &vertices[s[0]];
            let edges: Vec<RatVector> = s[1..].iter().map(|&i| vertices[i].sub(base)).collect();
            rational_det(&edges).abs()
        })
        .reduce(Rational::zero, |a, b| a + b);
    total / int_rat(factorial(n))
}

/// Least common multiple of all vertex-coordinate denominators.
pub fn polytope_denominator(v: &VertexSet) -> BigInt {
    v.vertices
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn cone(gens: &[&[i64]]) -> Cone {
        Cone::new(
            gens[0].len(),
            gens.iter().map(|g| IntVector::from_i64(g)).collect(),
        )
        .unwrap()
    }

    fn unit_cube(n: usize) -> HPolytope {
        HPolytope::from_box(&vec![0; n], &vec![1; n]).unwrap()
    }

    #[test]
    fn ball_polytope_shapes() {
        let sq = ball_polytope(NormKind::Linf, 2).unwrap();
        assert_eq!(sq.halfspaces().len(), 4);
        let v = enumerate_vertices(&sq).unwrap();
        let expected = VertexSet::new(
            2,
            vec![
                RatVector::from_i64(&[1, 1]),
                RatVector::from_i64(&[1, -1]),
                RatVector::from_i64(&[-1, 1]),
                RatVector::from_i64(&[-1, -1]),
            ],
        )
        .unwrap();
        assert_eq!(v, expected);

        let cross = ball_polytope(NormKind::L1, 2).unwrap();
        assert_eq!(cross.halfspaces().len(), 4);
        let v = enumerate_vertices(&cross).unwrap();
        let expected = VertexSet::new(
            2,
            vec![
                RatVector::from_i64(&[1, 0]),
                RatVector::from_i64(&[-1, 0]),
                RatVector::from_i64(&[0, 1]),
                RatVector::from_i64(&[0, -1]),
            ],
        )
        .unwrap();
        assert_eq!(v, expected);

        assert_eq!(
            ball_polytope(NormKind::L1, 3).unwrap().halfspaces().len(),
            8
        );
        assert!(matches!(
            ball_polytope(NormKind::L2, 2),
            Err(Error::UnsupportedNorm(_))
        ));
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(ball_volume(NormKind::L1, 2).unwrap(), rat(2, 1));
        assert_eq!(ball_volume(NormKind::Linf, 2).unwrap(), rat(4, 1));
        assert_eq!(ball_volume(NormKind::L1, 3).unwrap(), rat(4, 3));
        assert!(ball_volume(NormKind::L2, 3).is_err());
        for n in 1..=4 {
            for norm in [NormKind::L1, NormKind::Linf] {
                let p = ball_polytope(norm, n).unwrap();
                let v = enumerate_vertices(&p).unwrap();
                assert_eq!(
                    volume(&v, &p),
                    ball_volume(norm, n).unwrap(),
                    "{norm} n={n}"
                );
            }
        }
    }

    #[test]
    fn cone_halfspace_examples() {
        let orthant = cone_halfspaces(&cone(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            orthant.halfspaces(),
            &[
                Halfspace::from_i64(&[-1, 0], 0).unwrap(),
                Halfspace::from_i64(&[0, -1], 0).unwrap()
            ]
        );
        // 2x - y >= 0 and 2y - x >= 0
        let c = cone_halfspaces(&cone(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(
            c.halfspaces(),
            &[
                Halfspace::from_i64(&[-2, 1], 0).unwrap(),
                Halfspace::from_i64(&[1, -2], 0).unwrap()
            ]
        );
        let dep = Cone::new(
            2,
            vec![IntVector::from_i64(&[1, 1]), IntVector::from_i64(&[2, 2])],
        );
        assert!(matches!(dep, Err(Error::Rank(_))));
    }

    #[test]
    fn cone_halfspaces_negative_determinant() {
        let c = cone(&[&[1, 2], &[2, 1]]);
        let h = cone_halfspaces(&c).unwrap();
        for g in c.generators() {
            assert!(h.contains(&g.to_rational()));
        }
        assert!(!h.contains(&RatVector::from_i64(&[1, 0])));
    }

    #[test]
    fn intersect_examples() {
        let sq = ball_polytope(NormKind::Linf, 2).unwrap();
        let orth = cone_halfspaces(&cone(&[&[1, 0], &[0, 1]])).unwrap();
        let p = intersect(&sq, &orth).unwrap();
        assert_eq!(
            enumerate_vertices(&p).unwrap(),
            enumerate_vertices(&unit_cube(2)).unwrap()
        );
        let pp = intersect(&p, &p).unwrap();
        assert_eq!(
            enumerate_vertices(&pp).unwrap(),
            enumerate_vertices(&p).unwrap()
        );

        let tri = intersect(
            &ball_polytope(NormKind::L1, 2).unwrap(),
            &cone_halfspaces(&cone(&[&[2, 1], &[1, 2]])).unwrap(),
        )
        .unwrap();
        let expected = VertexSet::new(
            2,
            vec![
                RatVector::from_i64(&[0, 0]),
                RatVector::new(vec![rat(2, 3), rat(1, 3)]),
                RatVector::new(vec![rat(1, 3), rat(2, 3)]),
            ],
        )
        .unwrap();
        let v = enumerate_vertices(&tri).unwrap();
        assert_eq!(v, expected);
        assert_eq!(volume(&v, &tri), rat(1, 6));
        assert_eq!(polytope_denominator(&v), BigInt::from(3));

        let mismatch = intersect(&sq, &unit_cube(3));
        assert!(matches!(mismatch, Err(Error::Dimension { .. })));
    }

    #[test]
    fn skew_example_linf_volume() {
        let p = intersect(
            &ball_polytope(NormKind::Linf, 2).unwrap(),
            &cone_halfspaces(&cone(&[&[2, 1], &[1, 2]])).unwrap(),
        )
        .unwrap();
        let v = enumerate_vertices(&p).unwrap();
        assert_eq!(volume(&v, &p), rat(1, 2));
    }

    #[test]
    fn cube_vertices_and_volume() {
        let c = unit_cube(3);
        let v = enumerate_vertices(&c).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(polytope_denominator(&v), BigInt::one());
        for n in 1..=4 {
            let c = unit_cube(n);
            assert_eq!(
                volume(&enumerate_vertices(&c).unwrap(), &c),
                Rational::one()
            );
        }
    }

    #[test]
    fn denominator_examples() {
        let v = VertexSet::new(
            2,
            vec![
                RatVector::new(vec![rat(1, 2), rat(0, 1)]),
                RatVector::new(vec![rat(0, 1), rat(1, 4)]),
            ],
        )
        .unwrap();
        assert_eq!(polytope_denominator(&v), BigInt::from(4));
    }

    #[test]
    fn unbounded_inputs_are_rejected() {
        let orthant = cone_halfspaces(&cone(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(matches!(
            enumerate_vertices(&orthant),
            Err(Error::Unbounded(_))
        ));
        let strip = HPolytope::new(
            2,
            vec![
                Halfspace::from_i64(&[1, 0], 1).unwrap(),
                Halfspace::from_i64(&[-1, 0], 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            enumerate_vertices(&strip),
            Err(Error::Unbounded(_))
        ));
    }

    #[test]
    fn degenerate_polytope_has_zero_volume() {
        // the segment from (0,0) to (1,0)
        let seg = HPolytope::new(
            2,
            vec![
                Halfspace::from_i64(&[0, 1], 0).unwrap(),
                Halfspace::from_i64(&[0, -1], 0).unwrap(),
                Halfspace::from_i64(&[1, 0], 1).unwrap(),
                Halfspace::from_i64(&[-1, 0], 0).unwrap(),
            ],
        )
        .unwrap();
        let v = enumerate_vertices(&seg).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(volume(&v, &seg), Rational::zero());
    }

    #[test]
    fn orthant_pieces_sum_to_ball() {
        for n in 1..=4 {
            for norm in [NormKind::L1, NormKind::Linf] {
                let ball = ball_polytope(norm, n).unwrap();
                let mut total = Rational::zero();
                for mask in 0u32..(1 << n) {
                    let gens = (0..n)
                        .map(|j| IntVector::unit(n, j, if mask >> j & 1 == 1 { -1 } else { 1 }))
                        .collect();
                    let c = cone_halfspaces(&Cone::new(n, gens).unwrap()).unwrap();
                    let p = intersect(&ball, &c).unwrap();
                    total += volume(&enumerate_vertices(&p).unwrap(), &p);
                }
                assert_eq!(total, ball_volume(norm, n).unwrap());
            }
        }
    }
}
