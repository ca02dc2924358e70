//! Human-readable output.

use std::fmt::Write;

use latdense_core::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::payload::{
    DensityPayload, DisjointnessPayload, EhrhartPayload, EstimatePayload, Exact, ValidatePayload,
};

const DIGITS: u32 = 12;

/// Decimal approximation to 12 significant digits, rounded half up and with
/// trailing zeros removed. Magnitudes outside `[1e-5, 1e12)` use scientific
/// notation.
pub fn approx(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let num = q.numer().abs();
    let den = q.denom().clone();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= |q| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let below = |e: i64| {
        if e >= 0 {
            num < &den * ten.pow(e as u32)
        } else {
            &num * ten.pow((-e) as u32) < den
        }
    };
    if below(e) {
        e -= 1;
    }

    let scaled = |shift: i64| -> BigInt {
        // round(|q| * 10^shift), half up
        let (n, d) = if shift >= 0 {
            (&num * ten.pow(shift as u32), den.clone())
        } else {
            (num.clone(), &den * ten.pow((-shift) as u32))
        };
        (2 * n + &d) / (2 * d)
    };
    let mut mantissa = scaled(DIGITS as i64 - 1 - e);
    if mantissa >= ten.pow(DIGITS) {
        e += 1;
        mantissa = scaled(DIGITS as i64 - 1 - e);
    }
    let digits = mantissa.to_string();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    if (-5..DIGITS as i64).contains(&e) {
        let body = if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        } else {
            let int_len = e as usize + 1;
            if digits.len() <= int_len {
                format!("{digits}{}", "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = digits.split_at(1);
        let frac = if tail.is_empty() {
            String::new()
        } else {
            format!(".{tail}")
        };
        format!("{sign}{head}{frac}e{e}")
    }
}

fn exact(e: &Exact) -> String {
    if e.den == "1" {
        e.num.clone()
    } else {
        format!("{}/{}", e.num, e.den)
    }
}

fn with_approx(e: &Exact) -> String {
    format!("{} ≈ {}", exact(e), e.approx)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                let _ = write!(s, "{cell}{}  ", " ".repeat(pad));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn disjointness_line(d: &DisjointnessPayload, dim: usize) -> String {
    let cube = format!("[-{r},{r}]^{dim}", r = d.radius);
    if d.trivially_disjoint {
        "disjointness: single component, nothing to check".into()
    } else if d.clean {
        format!(
            "disjointness: no overlaps among {} points of {cube} (bounded check, not a proof)",
            d.points_scanned
        )
    } else {
        let mut s = format!(
            "disjointness: {} overlapping points in {cube}",
            d.overlap_count
        );
        for w in &d.witnesses {
            let comps: Vec<String> = w.components.iter().map(ToString::to_string).collect();
            let _ = write!(
                s,
                "\n  ({}) lies in components {}",
                w.point.join(","),
                comps.join(", ")
            );
        }
        s
    }
}

pub fn validate(p: &ValidatePayload) -> String {
    let mut out = format!(
        "dimension {}, {} component{}\n",
        p.dim,
        p.components.len(),
        if p.components.len() == 1 { "" } else { "s" }
    );
    let rows: Vec<Vec<String>> = p
        .components
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                c.generators.to_string(),
                c.rank.to_string(),
                if c.full_rank { "yes" } else { "no" }.into(),
                c.determinant.clone().unwrap_or_else(|| "-".into()),
                if c.simple {
                    "simple".into()
                } else {
                    format!("NOT SIMPLE: {}", c.issues.join("; "))
                },
            ]
        })
        .collect();
    out.push_str(&table(
        &[
            "component",
            "generators",
            "rank",
            "full rank",
            "d(lattice)",
            "status",
        ],
        &rows,
    ));
    if let Some(d) = &p.disjointness {
        out.push_str(&disjointness_line(d, p.dim));
        out.push('\n');
    }
    out.push_str(if p.valid { "valid\n" } else { "invalid\n" });
    out
}

pub fn density(p: &DensityPayload, dim: usize) -> String {
    let mut out = format!("norm {}, method {}\n", p.norm, p.method);
    let rows: Vec<Vec<String>> = p
        .components
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                if c.full_rank { "yes" } else { "no" }.into(),
                exact(&c.density),
                c.density.approx.clone(),
            ]
        })
        .collect();
    out.push_str(&table(
        &["component", "full rank", "density", "approx"],
        &rows,
    ));
    let _ = writeln!(out, "total density = {}", with_approx(&p.total));
    out.push_str(&disjointness_line(&p.disjointness, dim));
    out.push('\n');
    out
}

pub fn estimate(p: &EstimatePayload) -> String {
    let mut out = format!("empirical density ({}), norm {}\n", p.kind, p.norm);
    match &p.exact {
        Some(e) => {
            let _ = writeln!(out, "exact density = {}", with_approx(e));
        }
        None => out.push_str("exact density: not available for this norm\n"),
    }
    let mut header = vec!["radius", "hits", "ball", "frequency", "approx"];
    if p.exact.is_some() {
        header.push("|error|");
    }
    let rows: Vec<Vec<String>> = p
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![
                r.radius.to_string(),
                r.hits.clone(),
                r.ball.clone(),
                exact(&r.frequency),
                r.frequency.approx.clone(),
            ];
            if let Some(e) = &r.error {
                row.push(e.approx.clone());
            }
            row
        })
        .collect();
    out.push_str(&table(&header, &rows));
    out
}

pub fn ehrhart(p: &EhrhartPayload) -> String {
    let mut out = format!(
        "component {}, norm {}: degree {}, period {}\n",
        p.component, p.norm, p.degree, p.period
    );
    let _ = writeln!(
        out,
        "fitted on counts at t = 1..{}; every sample reproduced exactly",
        p.max_t
    );
    let labels: Vec<String> = (0..=p.degree).map(|k| format!("c{k}")).collect();
    let mut header = vec!["residue"];
    header.extend(labels.iter().map(String::as_str));
    let rows: Vec<Vec<String>> = p
        .residues
        .iter()
        .map(|r| {
            std::iter::once(r.residue.to_string())
                .chain(r.coefficients.iter().map(exact))
                .collect()
        })
        .collect();
    out.push_str(&table(&header, &rows));
    let _ = writeln!(
        out,
        "leading coefficient = {}",
        with_approx(&p.leading_coefficient)
    );
    let _ = writeln!(out, "lattice determinant = {}", p.lattice_determinant);
    let _ = writeln!(out, "ball volume = {}", exact(&p.ball_volume));
    let _ = writeln!(out, "density = {}", with_approx(&p.density));
    out
}
