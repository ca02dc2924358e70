//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p latdense --test acceptance -- --nocapture` to see
//! the report.

use std::process::Command;
use std::time::{Duration, Instant};

use latdense_core::density::{
    component_density_via, component_polytope, empirical_density, set_density, shift_sandwich_rows,
    DensityMethod,
};
use latdense_core::geometry::polytope_denominator;
use latdense_core::lattice::{ball_lattice_count, count_dilate, ehrhart_fit, DilateCounter};
use latdense_core::linalg::{int_rat, rat};
use latdense_core::ratset::{check_disjoint_bounded, parse, SimpleComponent, ValidatedSet};
use latdense_core::{IntVector, NormKind, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SKEW: &str = "(0,0) + {(2,1),(1,2)}*";
const SUBGROUP: &str = "(0,0)+{(2,0),(0,1)}* | (-2,0)+{(-2,0),(0,1)}* | (0,-1)+{(2,0),(0,-1)}* | (-2,-1)+{(-2,0),(0,-1)}*";
const POLYTOPE_NORMS: [NormKind; 2] = [NormKind::L1, NormKind::Linf];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn set(text: &str) -> ValidatedSet {
    ValidatedSet::new(parse(text).unwrap()).unwrap()
}

fn exact_density(text: &str, norm: NormKind) -> Rational {
    set_density(&set(text), norm, DensityMethod::Volume, None)
        .unwrap()
        .total
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn expect(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn example_values() -> Verdict {
    let start = Instant::now();
    let l1 = exact_density(SKEW, NormKind::L1);
    let linf = exact_density(SKEW, NormKind::Linf);
    expect(l1 == rat(1, 36), || {
        format!("L1 density {l1}, expected 1/36")
    })?;
    expect(linf == rat(1, 24), || {
        format!("Linf density {linf}, expected 1/24")
    })?;

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example.rset");
    std::fs::write(&path, SKEW).unwrap();
    for (norm, want) in [
        ("1", "total density = 1/36"),
        ("inf", "total density = 1/24"),
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_latdense"))
            .args(["density", path.to_str().unwrap(), "--norm", norm])
            .output()
            .unwrap();
        let text = String::from_utf8_lossy(&out.stdout);
        expect(out.status.success() && text.contains(want), || {
            format!("binary with --norm {norm} printed {text:?}")
        })?;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!(
        "1/36 (L1) and 1/24 (Linf) from library and binary in {elapsed:.2?}"
    ))
}

fn subgroup_density() -> Verdict {
    let start = Instant::now();
    let s = set(SUBGROUP);
    for norm in POLYTOPE_NORMS {
        let d = exact_density(SUBGROUP, norm);
        expect(d == rat(1, 2), || {
            format!("{norm} density {d}, expected 1/2")
        })?;
    }
    let scan = check_disjoint_bounded(&s, 20);
    expect(scan.is_clean(), || {
        format!("{} overlaps within radius 20", scan.overlap_count)
    })?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(5), elapsed)?;
    Ok(format!(
        "1/2 for L1 and Linf, {} points scanned at radius 20 with no overlap, in {elapsed:.2?}",
        scan.points_scanned
    ))
}

/// Largest lattice-relative denominator the Ehrhart route is asked to fit.
const MAX_PERIOD: u64 = 60;
const PER_DIMENSION: usize = 6;

fn dual_path_agreement() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7d);
    let mut accepted = [0usize; 2];
    let mut drawn = [0usize; 2];
    let mut singular = [0usize; 2];
    let mut compared = 0;
    let mut draw = 0usize;
    while accepted.iter().any(|&a| a < PER_DIMENSION) {
        let n = 2 + draw % 2;
        draw += 1;
        if accepted[n - 2] >= PER_DIMENSION {
            continue;
        }
        drawn[n - 2] += 1;
        let gens: Vec<IntVector> = (0..n)
            .map(|_| {
                IntVector::from_i64(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>())
            })
            .collect();
        let c = SimpleComponent::monoid(gens).unwrap();
        let report = c.validate(0);
        if !report.is_simple() || !report.full_rank {
            singular[n - 2] += 1;
            continue;
        }
        let tractable = POLYTOPE_NORMS.iter().all(|&norm| {
            let (p, l) = component_polytope(&c, norm).unwrap();
            DilateCounter::new(&p, &l).unwrap().denominator() <= BigInt::from(MAX_PERIOD)
        });
        if !tractable {
            continue;
        }
        accepted[n - 2] += 1;
        for norm in POLYTOPE_NORMS {
            let volume = component_density_via(&c, norm, DensityMethod::Volume).unwrap();
            let ehrhart = component_density_via(&c, norm, DensityMethod::Ehrhart)
                .map_err(|e| format!("{c} ({norm}): Ehrhart route failed: {e}"))?;
            expect(volume == ehrhart, || {
                format!("{c} ({norm}): volume {volume} but Ehrhart {ehrhart}")
            })?;
            compared += 1;
        }
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    let kept = |i: usize| {
        format!(
            "{} of {} draws kept ({} singular)",
            accepted[i], drawn[i], singular[i]
        )
    };
    Ok(format!(
        "{compared} exact agreements over {} components; dim 2: {}, dim 3: {}; \
         kept components have lattice denominator <= {MAX_PERIOD}; {elapsed:.2?}",
        accepted[0] + accepted[1],
        kept(0),
        kept(1),
    ))
}

fn ehrhart_cross_validation() -> Verdict {
    let c = set(SKEW).components()[0].clone();
    let (p, lattice) = component_polytope(&c, NormKind::L1).unwrap();
    let counter = DilateCounter::new(&p, &lattice).unwrap();
    let denominator = polytope_denominator(counter.vertices());
    expect(denominator == BigInt::from(3), || {
        format!("polytope denominator {denominator}, expected 3")
    })?;
    let series = counter.count_series(&(1..=60).collect::<Vec<_>>()).unwrap();
    let q = ehrhart_fit(&series, 2, 3).map_err(|e| format!("fit failed: {e}"))?;
    for t in 61..=80 {
        let direct = count_dilate(&p, &lattice, t).unwrap();
        let fitted = q.eval(t);
        expect(fitted == int_rat(direct.clone()), || {
            format!("t = {t}: fitted {fitted}, counted {direct}")
        })?;
    }
    let lead = q.leading_coefficient().unwrap();
    expect(lead == rat(1, 18), || {
        format!("leading coefficient {lead}, expected 1/18")
    })?;
    Ok(
        "period 3 fit on t = 1..60 reproduces all counts at t = 61..80; leading coefficient 1/18"
            .into(),
    )
}

fn convergence() -> Verdict {
    let start = Instant::now();
    let s = set(SKEW);
    let exact = rat(1, 36);
    let err = |r| (empirical_density(&s, NormKind::L1, r).frequency - &exact).abs();
    let (e20, e200) = (err(20), err(200));
    expect(e200 < e20, || {
        format!("error at r = 200 ({e200}) is not below r = 20 ({e20})")
    })?;
    let relative = &e200 / &exact;
    expect(relative < rat(1, 10), || {
        format!("relative error {relative} at r = 200")
    })?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(30), elapsed)?;
    let f = |q: &Rational| {
        q.numer().to_string().parse::<f64>().unwrap()
            / q.denom().to_string().parse::<f64>().unwrap()
    };
    Ok(format!(
        "|error| {:.3e} at r = 20, {:.3e} at r = 200 (relative {:.2}%), in {elapsed:.2?}",
        f(&e20),
        f(&e200),
        100.0 * f(&relative)
    ))
}

/// Histograms of `||x||_1` and `||x||_∞` over `[-r, r]^n`, accumulated into
/// ball counts for every radius up to `r`.
fn brute_ball_counts(n: usize, r: i64) -> (Vec<u64>, Vec<u64>) {
    let mut l1 = vec![0u64; n * r as usize + 1];
    let mut linf = vec![0u64; r as usize + 1];
    let mut x = vec![-r; n];
    'outer: loop {
        let a: i64 = x.iter().map(|v| v.abs()).sum();
        let m: i64 = x.iter().map(|v| v.abs()).max().unwrap();
        l1[a as usize] += 1;
        linf[m as usize] += 1;
        for j in (0..n).rev() {
            if x[j] < r {
                x[j] += 1;
                continue 'outer;
            }
            x[j] = -r;
        }
        break;
    }
    let cumulate = |h: Vec<u64>| {
        h.iter()
            .scan(0u64, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .take(r as usize + 1)
            .collect()
    };
    (cumulate(l1), cumulate(linf))
}

fn ball_counts() -> Verdict {
    for n in 1..=4 {
        let (l1, linf) = brute_ball_counts(n, 20);
        for r in 0..=20u64 {
            for (norm, brute) in [
                (NormKind::L1, l1[r as usize]),
                (NormKind::Linf, linf[r as usize]),
            ] {
                let closed = ball_lattice_count(norm, r, n);
                expect(closed == BigInt::from(brute), || {
                    format!("{norm}, n = {n}, r = {r}: closed form {closed}, enumeration {brute}")
                })?;
            }
        }
    }
    let mut ratios = Vec::new();
    for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
        let ratio = Rational::new(
            ball_lattice_count(norm, 201, 2),
            ball_lattice_count(norm, 200, 2),
        );
        expect(ratio >= rat(1, 1) && ratio <= rat(103, 100), || {
            format!("{norm}: |B_201| / |B_200| = {ratio}")
        })?;
        ratios.push(format!("{norm} {ratio}"));
    }
    Ok(format!(
        "L1 and Linf closed forms equal enumeration for n <= 4, r <= 20; ratios at r = 200: {}",
        ratios.join(", ")
    ))
}

fn sandwich() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a9d);
    let mut monoids = Vec::new();
    while monoids.len() < 20 {
        let gens: Vec<IntVector> = (0..2)
            .map(|_| IntVector::from_i64(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]))
            .collect();
        let c = SimpleComponent::monoid(gens).unwrap();
        let report = c.validate(0);
        if report.is_simple() && report.full_rank {
            monoids.push(c);
        }
    }
    let mut checks = 0usize;
    for c in &monoids {
        for norm in POLYTOPE_NORMS {
            for r in 2..=50 {
                for row in shift_sandwich_rows(c, norm, r).map_err(|e| e.to_string())? {
                    expect(row.holds(), || {
                        format!(
                            "{c} ({norm}, r = {r}, e = {}): {} <= {} <= {} fails",
                            row.shift, row.lower, row.shifted, row.upper
                        )
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} inequalities over 20 monoids, 4 shifts, r = 2..50, L1 and Linf"
    ))
}

fn zero_density() -> Verdict {
    let text = "(0,0) + {(1,1)}*";
    for norm in POLYTOPE_NORMS {
        let d = exact_density(text, norm);
        expect(d.is_zero(), || format!("{norm} density {d}, expected 0"))?;
    }
    let f = empirical_density(&set(text), NormKind::Linf, 100).frequency;
    expect(f < rat(1, 100), || format!("frequency {f} at r = 100"))?;
    Ok(format!(
        "density 0 for L1 and Linf; frequency {f} at r = 100 (Linf)"
    ))
}

fn orthants() -> Verdict {
    for n in 1..=4usize {
        let gens: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i, 1)).collect();
        let c = SimpleComponent::monoid(gens).unwrap();
        let want = Rational::new(1.into(), BigInt::from(1u64 << n));
        for norm in POLYTOPE_NORMS {
            let d = component_density_via(&c, norm, DensityMethod::Volume).unwrap();
            expect(d == want, || {
                format!("n = {n}, {norm}: {d}, expected {want}")
            })?;
        }
    }
    Ok("1/2, 1/4, 1/8, 1/16 for L1 and Linf".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("example densities", example_values),
        ("subgroup of index 2", subgroup_density),
        ("volume and Ehrhart routes agree", dual_path_agreement),
        ("Ehrhart fit of the example", ehrhart_cross_validation),
        ("empirical convergence", convergence),
        ("ball-count closed forms", ball_counts),
        ("shift sandwich", sandwich),
        ("rank-deficient component", zero_density),
        ("standard orthants", orthants),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(reason) => {
                println!("FAIL [{}] {name}: {reason}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
