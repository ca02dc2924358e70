//! Command-line front end for `latdense-core`.
//!
//! [`run`] is the whole program; the binary only forwards `argv` and the
//! standard streams. Exit status: 0 success, 1 input or domain failure,
//! 2 usage error.

pub mod payload;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use latdense_core::density::{component_polytope, convergence_table, set_density, DensityMethod};
use latdense_core::geometry::ball_volume;
use latdense_core::lattice::{ball_lattice_count, candidate_periods, ehrhart_fit, DilateCounter};
use latdense_core::ratset::{self, check_disjoint_bounded, SemiSimpleSet, ValidatedSet};
use latdense_core::{Error, NormKind, Rational};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::payload::{
    residue_rows, CountBallPayload, DensityPayload, EhrhartPayload, Envelope, EstimatePayload,
    ValidatePayload,
};

/// Radius of the overlap scan run by `density`.
pub const DENSITY_DISJOINT_RADIUS: u64 = 20;

#[derive(Parser, Debug)]
#[command(
    name = "latdense",
    version,
    about = "Exact asymptotic densities of semi-simple subsets of Z^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that every component is simple and scan for overlaps.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        disjoint_radius: u64,
        #[arg(long)]
        machine: bool,
    },
    /// Exact density for the L1 or Linf norm.
    Density {
        file: PathBuf,
        #[arg(long, value_parser = parse_norm)]
        norm: NormKind,
        #[arg(long, value_enum, default_value_t = Via::Volume)]
        via: Via,
        #[arg(long)]
        machine: bool,
    },
    /// Empirical relative frequencies inside growing balls.
    Estimate {
        file: PathBuf,
        #[arg(long, value_parser = parse_norm)]
        norm: NormKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        /// Number of radii, evenly spaced up to --radius.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long)]
        machine: bool,
    },
    /// Fit the Ehrhart quasipolynomial of one component's polytope.
    Ehrhart {
        file: PathBuf,
        /// Component index, counting from 0.
        #[arg(long)]
        component: usize,
        #[arg(long, value_parser = parse_norm)]
        norm: NormKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_t: u64,
        #[arg(long)]
        machine: bool,
    },
    /// Number of integer points in a ball.
    CountBall {
        #[arg(long, value_parser = parse_norm)]
        norm: NormKind,
        #[arg(long)]
        radius: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Via {
    Volume,
    Ehrhart,
}

fn parse_norm(s: &str) -> std::result::Result<NormKind, String> {
    s.parse::<NormKind>()
        .map_err(|_| format!("unknown norm '{s}' (expected 1, 2 or inf)"))
}

/// A finished command: text rendering, machine payload and exit status.
struct Outcome {
    text: String,
    payload: serde_json::Value,
    caveats: Vec<String>,
    status: i32,
}

impl Outcome {
    fn new<T: Serialize>(text: String, payload: &T, caveats: Vec<String>, status: i32) -> Self {
        Outcome {
            text,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            caveats,
            status,
        }
    }
}

fn read_input(path: &Path, digest: &mut Option<String>) -> Result<SemiSimpleSet, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let hash = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    *digest = Some(hash);
    let text =
        String::from_utf8(bytes).map_err(|_| format!("{} is not valid UTF-8", path.display()))?;
    ratset::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn validated(set: SemiSimpleSet) -> Result<ValidatedSet, String> {
    ValidatedSet::new(set).map_err(|e| e.to_string())
}

fn exact_only(norm: NormKind) -> Result<(), String> {
    if norm.is_polytope() {
        Ok(())
    } else {
        Err(
            "no exact density for norm 2: the Euclidean ball is not a polytope, so the \
             density is generally irrational. Use `latdense estimate --norm 2` for an \
             empirical estimate."
                .into(),
        )
    }
}

fn disjointness_caveats(d: &latdense_core::ratset::DisjointnessReport, dim: usize) -> Vec<String> {
    if d.trivially_disjoint {
        Vec::new()
    } else if d.is_clean() {
        vec![format!(
            "disjointness was checked only inside [-{r},{r}]^{dim}; this is not a proof",
            r = d.radius
        )]
    } else {
        vec![format!(
            "components overlap ({} points found inside [-{r},{r}]^{dim}); the total density over-counts",
            d.overlap_count,
            r = d.radius
        )]
    }
}

fn cmd_validate(file: &Path, radius: u64, digest: &mut Option<String>) -> Result<Outcome, String> {
    let set = read_input(file, digest)?;
    let report = set.validate();
    let disjointness = if report.is_valid() {
        Some(check_disjoint_bounded(&validated(set)?, radius))
    } else {
        None
    };
    let payload = ValidatePayload::new(&report, disjointness.as_ref());
    let mut caveats = Vec::new();
    if let Some(d) = &disjointness {
        caveats.extend(disjointness_caveats(d, report.dim));
    }
    let ok = payload.valid && disjointness.as_ref().is_some_and(|d| d.is_clean());
    let text = render::validate(&payload);
    Ok(Outcome::new(
        text,
        &payload,
        caveats,
        if ok { 0 } else { 1 },
    ))
}

fn cmd_density(
    file: &Path,
    norm: NormKind,
    via: Via,
    digest: &mut Option<String>,
) -> Result<Outcome, String> {
    exact_only(norm)?;
    let set = validated(read_input(file, digest)?)?;
    let method = match via {
        Via::Volume => DensityMethod::Volume,
        Via::Ehrhart => DensityMethod::Ehrhart,
    };
    let disjointness = check_disjoint_bounded(&set, DENSITY_DISJOINT_RADIUS);
    let report = set_density(&set, norm, method, Some(&disjointness)).map_err(|e| e.to_string())?;
    let label = match via {
        Via::Volume => "volume",
        Via::Ehrhart => "ehrhart",
    };
    let payload = DensityPayload::new(&report, label, &disjointness);
    let caveats = disjointness_caveats(&disjointness, set.dim());
    let status = if disjointness.is_clean() { 0 } else { 1 };
    let text = render::density(&payload, set.dim());
    Ok(Outcome::new(text, &payload, caveats, status))
}

/// `ceil(radius * i / steps)` for `i = 1..=steps`, without repeats.
pub fn estimate_radii(radius: u64, steps: u64) -> Vec<u64> {
    let mut radii: Vec<u64> = (1..=steps)
        .map(|i| ((radius as u128 * i as u128).div_ceil(steps as u128)) as u64)
        .collect();
    radii.dedup();
    radii
}

fn cmd_estimate(
    file: &Path,
    norm: NormKind,
    radius: u64,
    steps: u64,
    digest: &mut Option<String>,
) -> Result<Outcome, String> {
    let set = validated(read_input(file, digest)?)?;
    let table =
        convergence_table(&set, norm, &estimate_radii(radius, steps)).map_err(|e| e.to_string())?;
    let payload = EstimatePayload::from(&table);
    let mut caveats = vec!["frequencies are finite-radius estimates of the density".to_string()];
    if !norm.is_polytope() {
        caveats.push("no exact density exists for norm 2; no error column is reported".into());
    } else if set.components().len() > 1 {
        caveats.push(
            "the exact reference assumes the components are disjoint, which was not checked".into(),
        );
    }
    let text = render::estimate(&payload);
    Ok(Outcome::new(text, &payload, caveats, 0))
}

fn cmd_ehrhart(
    file: &Path,
    index: usize,
    norm: NormKind,
    max_t: u64,
    digest: &mut Option<String>,
) -> Result<Outcome, String> {
    exact_only(norm)?;
    let set = validated(read_input(file, digest)?)?;
    let count = set.components().len();
    let component = set.components().get(index).ok_or_else(|| {
        format!("component {index} does not exist (the set has {count}; indices start at 0)")
    })?;
    if !set.report().components[index].full_rank {
        return Err(format!(
            "component {index} is not full rank, so its cone has no interior and its density is 0"
        ));
    }
    let fail = |e: Error| e.to_string();
    let (p, lattice) = component_polytope(component, norm).map_err(fail)?;
    let counter = DilateCounter::new(&p, &lattice).map_err(fail)?;
    let dilates: Vec<u64> = (1..=max_t).collect();
    let series = counter.count_series(&dilates).map_err(fail)?;
    let n = set.dim();
    let mut tried = Vec::new();
    let mut fitted = None;
    for period in candidate_periods(&counter).map_err(fail)? {
        tried.push(period);
        match ehrhart_fit(&series, n, period) {
            Ok(q) => {
                fitted = Some(q);
                break;
            }
            Err(Error::Inconsistent { .. }) => continue,
            Err(e) => return Err(fail(e)),
        }
    }
    let q = fitted.ok_or_else(|| fail(Error::FitFailed(tried.clone())))?;
    let lead = q.leading_coefficient().map_err(fail)?;
    let ball = ball_volume(norm, n).map_err(fail)?;
    let density: Rational = &lead / &ball;
    let payload = EhrhartPayload {
        component: index,
        norm: norm.to_string(),
        max_t,
        degree: q.degree(),
        period: q.period(),
        periods_tried: tried,
        residues: residue_rows(&q),
        leading_coefficient: (&lead).into(),
        lattice_determinant: counter.lattice_determinant().to_string(),
        ball_volume: (&ball).into(),
        density: (&density).into(),
    };
    let caveats = vec![format!(
        "the quasipolynomial is fitted to counts at t <= {max_t}; larger dilates are not checked"
    )];
    let text = render::ehrhart(&payload);
    Ok(Outcome::new(text, &payload, caveats, 0))
}

fn cmd_count_ball(norm: NormKind, radius: u64, dim: u64) -> Result<Outcome, String> {
    let dim = dim as usize;
    let count = ball_lattice_count(norm, radius, dim);
    let payload = CountBallPayload {
        norm: norm.to_string(),
        radius,
        dim,
        count: count.to_string(),
    };
    Ok(Outcome::new(format!("{count}\n"), &payload, Vec::new(), 0))
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once(OsString::from("latdense")).chain(args.clone()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(stream, "{text}");
            return code;
        }
    };
    let echo: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();

    let mut digest = None;
    let (machine, result) = match &cli.command {
        Command::Validate {
            file,
            disjoint_radius,
            machine,
        } => (*machine, cmd_validate(file, *disjoint_radius, &mut digest)),
        Command::Density {
            file,
            norm,
            via,
            machine,
        } => (*machine, cmd_density(file, *norm, *via, &mut digest)),
        Command::Estimate {
            file,
            norm,
            radius,
            steps,
            machine,
        } => (
            *machine,
            cmd_estimate(file, *norm, *radius, *steps, &mut digest),
        ),
        Command::Ehrhart {
            file,
            component,
            norm,
            max_t,
            machine,
        } => (
            *machine,
            cmd_ehrhart(file, *component, *norm, *max_t, &mut digest),
        ),
        Command::CountBall {
            norm,
            radius,
            dim,
            machine,
        } => (*machine, cmd_count_ball(*norm, *radius, *dim)),
    };

    let status = match &result {
        Ok(o) => o.status,
        Err(_) => 1,
    };
    if machine {
        let envelope = match result {
            Ok(o) => Envelope {
                command: echo,
                input_digest: digest,
                result: Some(o.payload),
                caveats: o.caveats,
                error: None,
                status,
            },
            Err(message) => Envelope {
                command: echo,
                input_digest: digest,
                result: None,
                caveats: Vec::new(),
                error: Some(message),
                status,
            },
        };
        let doc = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
        let _ = writeln!(out, "{doc}");
    } else {
        match result {
            Ok(o) => {
                let _ = write!(out, "{}", o.text);
                for c in &o.caveats {
                    let _ = writeln!(out, "caveat: {c}");
                }
            }
            Err(message) => {
                let _ = writeln!(err, "error: {message}");
            }
        }
    }
    status
}
