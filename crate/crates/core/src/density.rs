//! Asymptotic density of semi-simple sets.
//!
//! The density of `a + B*` does not depend on the offset. It is zero unless
//! `B` has `n` elements, and otherwise equals
//! `vol(B_{p,1} ∩ cone(B)) / (vol(B_{p,1}) · d(Λ(B)))`. Densities of the
//! components of a disjoint union add up.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    ball_polytope, ball_volume, cone_halfspaces, enumerate_vertices, intersect, volume, Cone,
    HPolytope, NormKind,
};
use crate::lattice::{ball_lattice_count, fit_ehrhart, DilateCounter, Lattice};
use crate::linalg::{int_rat, IntVector, Rational};
use crate::ratset::{DisjointnessReport, SimpleComponent, ValidatedSet};
use crate::scan::{count_cube_points, norm_within};

/// Which exact route computes a component density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DensityMethod {
    /// Exact polytope volume.
    #[default]
    Volume,
    /// Leading coefficient of the fitted Ehrhart quasipolynomial.
    Ehrhart,
}

/// `P = B_{p,1} ∩ cone(B)` and `Λ(B)` for a full-rank component.
pub fn component_polytope(c: &SimpleComponent, norm: NormKind) -> Result<(HPolytope, Lattice)> {
    norm.require_polytope()?;
    let n = c.dim();
    let cone = Cone::new(n, c.generators().to_vec())?;
    let p = intersect(&ball_polytope(norm, n)?, &cone_halfspaces(&cone)?)?;
    Ok((p, c.lattice()?))
}

fn check_simple(c: &SimpleComponent) -> Result<bool> {
    let report = c.validate(0);
    if !report.is_simple() {
        let issues: Vec<String> = report.issues.iter().map(ToString::to_string).collect();
        return Err(Error::Contract(format!(
            "component {c} is not simple: {}",
            issues.join("; ")
        )));
    }
    Ok(report.full_rank)
}

/// Exact density of one simple component, by polytope volume.
pub fn component_density(c: &SimpleComponent, norm: NormKind) -> Result<Rational> {
    component_density_via(c, norm, DensityMethod::Volume)
}

pub fn component_density_via(
    c: &SimpleComponent,
    norm: NormKind,
    method: DensityMethod,
) -> Result<Rational> {
    norm.require_polytope()?;
    if !check_simple(c)? {
        return Ok(Rational::zero());
    }
    let (p, lattice) = component_polytope(c, norm)?;
    let det = lattice.determinant().expect("full rank").clone();
    let ball = ball_volume(norm, c.dim())?;
    match method {
        DensityMethod::Volume => {
            let vol = volume(&enumerate_vertices(&p)?, &p);
            Ok(vol / (ball * int_rat(det)))
        }
        DensityMethod::Ehrhart => {
            let counter = DilateCounter::new(&p, &lattice)?;
            let lead = fit_ehrhart(&counter)?.leading_coefficient()?;
            Ok(lead / ball)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDensity {
    pub index: usize,
    pub full_rank: bool,
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub norm: NormKind,
    pub method: DensityMethod,
    pub per_component: Vec<ComponentDensity>,
    pub total: Rational,
    /// Set unless a bounded disjointness scan was supplied and came back clean.
    pub disjointness_caveat: bool,
}

/// Sum of the component densities.
pub fn set_density(
    s: &ValidatedSet,
    norm: NormKind,
    method: DensityMethod,
    disjointness: Option<&DisjointnessReport>,
) -> Result<DensityReport> {
    norm.require_polytope()?;
    let per_component = s
        .components()
        .iter()
        .zip(&s.report().components)
        .map(|(c, r)| {
            Ok(ComponentDensity {
                index: r.index,
                full_rank: r.full_rank,
                density: component_density_via(c, norm, method)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_component
        .iter()
        .fold(Rational::zero(), |acc, c| acc + &c.density);
    Ok(DensityReport {
        norm,
        method,
        per_component,
        total,
        disjointness_caveat: !disjointness.is_some_and(DisjointnessReport::is_clean),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateRow {
    pub radius: u64,
    pub hits: BigInt,
    pub ball: BigInt,
    pub frequency: Rational,
    /// `|frequency - exact|`, when an exact density is known.
    pub error: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimateTable {
    pub norm: NormKind,
    pub exact: Option<Rational>,
    pub rows: Vec<EstimateRow>,
}

/// `|R ∩ B_{p,r}| / |B_{p,r} ∩ Z^n|`, counted exactly.
pub fn empirical_density(s: &ValidatedSet, norm: NormKind, r: u64) -> EstimateRow {
    let hits = count_cube_points(s.dim(), r, |x| norm_within(norm, x, r) && s.contains(x));
    let hits = BigInt::from(hits);
    let ball = ball_lattice_count(norm, r, s.dim());
    EstimateRow {
        radius: r,
        frequency: Rational::new(hits.clone(), ball.clone()),
        hits,
        ball,
        error: None,
    }
}

/// One [`empirical_density`] row per radius. For L1 and Linf every row is
/// annotated with its distance to the exact density.
pub fn convergence_table(s: &ValidatedSet, norm: NormKind, radii: &[u64]) -> Result<EstimateTable> {
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("radii must be strictly increasing".into()));
    }
    let exact = if norm.is_polytope() {
        Some(set_density(s, norm, DensityMethod::Volume, None)?.total)
    } else {
        None
    };
    let rows = radii
        .iter()
        .map(|&r| {
            let mut row = empirical_density(s, norm, r);
            row.error = exact.as_ref().map(|e| (&row.frequency - e).abs());
            row
        })
        .collect();
    Ok(EstimateTable { norm, exact, rows })
}

/// Counts behind the shift sandwich for one signed unit vector `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichRow {
    pub shift: IntVector,
    /// `|M ∩ B_{p,r-1}|`
    pub lower: u128,
    /// `|(e + M) ∩ B_{p,r}|`
    pub shifted: u128,
    /// `|M ∩ B_{p,r+1}|`
    pub upper: u128,
}

impl SandwichRow {
    pub fn holds(&self) -> bool {
        self.lower <= self.shifted && self.shifted <= self.upper
    }
}

/// Lattice points of the monoid `B*` inside `B_{∞,reach}`, via an
/// enumeration in generator coordinates.
fn monoid_points_in_cube(c: &SimpleComponent, reach: u64) -> Result<Vec<Vec<i64>>> {
    let monoid = SimpleComponent::monoid(c.generators().to_vec())?;
    let (p, lattice) = component_polytope(&monoid, NormKind::Linf)?;
    let counter = DilateCounter::new(&p, &lattice)?;
    let tb = int_rat(BigInt::from(reach));
    let n = c.dim();
    let bounds: Vec<(i64, i64)> = (0..n)
        .map(|j| {
            let coords = counter.alpha_vertices().vertices().iter().map(|v| &v[j]);
            let lo = (coords.clone().min().expect("vertices") * &tb)
                .ceil()
                .to_integer();
            let hi = (coords.max().expect("vertices") * &tb).floor().to_integer();
            let lo =
                i64::try_from(lo).map_err(|_| Error::Domain("enumeration box too large".into()))?;
            let hi =
                i64::try_from(hi).map_err(|_| Error::Domain("enumeration box too large".into()))?;
            Ok((lo, hi))
        })
        .collect::<Result<_>>()?;
    let gens: Vec<Vec<i64>> = c
        .generators()
        .iter()
        .map(|g| {
            g.to_i64()
                .ok_or_else(|| Error::Domain("generator entries exceed i64".into()))
        })
        .collect::<Result<_>>()?;
    let reach = reach as i64;
    let mut out = Vec::new();
    let mut alpha: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return Ok(out);
    }
    loop {
        let mut x = vec![0i64; n];
        for (g, a) in gens.iter().zip(&alpha) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += gi * a;
            }
        }
        if x.iter().all(|v| v.abs() <= reach) {
            out.push(x);
        }
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if alpha[j] < bounds[j].1 {
                alpha[j] += 1;
                break;
            }
            alpha[j] = bounds[j].0;
        }
    }
}

/// Counts `|M ∩ B_{p,r-1}|`, `|(e+M) ∩ B_{p,r}|` and `|M ∩ B_{p,r+1}|` for
/// every `e = ±e_i`, where `M = B*` is the component's monoid.
pub fn shift_sandwich_rows(
    c: &SimpleComponent,
    norm: NormKind,
    r: u64,
) -> Result<Vec<SandwichRow>> {
    if r < 2 {
        return Err(Error::Domain(format!("the sandwich needs r > 1, got {r}")));
    }
    if !check_simple(c)? {
        return Err(Error::Domain(
            "the sandwich check needs a full-rank component".into(),
        ));
    }
    let n = c.dim();
    // every point the three counts can touch lies in B_{∞, r+1}
    let points = monoid_points_in_cube(c, r + 1)?;
    let within = |x: &[i64], radius: u64| norm_within(norm, x, radius);
    let lower = points.iter().filter(|x| within(x, r - 1)).count() as u128;
    let upper = points.iter().filter(|x| within(x, r + 1)).count() as u128;
    let mut rows = Vec::with_capacity(2 * n);
    for axis in 0..n {
        for sign in [1i64, -1] {
            let shifted = points
                .iter()
                .filter(|x| {
                    let mut y = (*x).clone();
                    y[axis] += sign;
                    within(&y, r)
                })
                .count() as u128;
            rows.push(SandwichRow {
                shift: IntVector::unit(n, axis, sign),
                lower,
                shifted,
                upper,
            });
        }
    }
    Ok(rows)
}

/// `|M ∩ B_{p,r-1}| <= |(e+M) ∩ B_{p,r}| <= |M ∩ B_{p,r+1}|` for every
/// signed unit vector `e`.
pub fn shift_sandwich_check(c: &SimpleComponent, norm: NormKind, r: u64) -> Result<bool> {
    Ok(shift_sandwich_rows(c, norm, r)?
        .iter()
        .all(SandwichRow::holds))
}

/// `1 / 2^n`, the density of the positive orthant.
pub fn orthant_density(dim: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << dim)
}
