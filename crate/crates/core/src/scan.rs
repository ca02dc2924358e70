//! Enumeration of integer points in the cube `[-r, r]^n` with exact norm tests.

use rayon::prelude::*;

use crate::geometry::NormKind;

/// Exact test `||x||_p <= r` on an integer point. L2 compares squares.
pub fn norm_within(norm: NormKind, x: &[i64], r: u64) -> bool {
    let r = r as i128;
    match norm {
        NormKind::L1 => x.iter().map(|&e| (e as i128).abs()).sum::<i128>() <= r,
        NormKind::Linf => x.iter().all(|&e| (e as i128).abs() <= r),
        NormKind::L2 => x.iter().map(|&e| (e as i128) * (e as i128)).sum::<i128>() <= r * r,
    }
}

/// Visits every point of `[-r, r]^n` in lexicographic order.
pub fn for_each_cube_point(dim: usize, r: u64, mut f: impl FnMut(&[i64])) {
    let r = r as i64;
    let mut x = vec![-r; dim];
    loop {
        f(&x);
        let mut j = dim;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if x[j] < r {
                x[j] += 1;
                break;
            }
            x[j] = -r;
        }
    }
}

/// Number of points of `[-r, r]^n` satisfying `pred`. The first coordinate is
/// split across worker threads; the total does not depend on scheduling.
pub fn count_cube_points<F>(dim: usize, r: u64, pred: F) -> u128
where
    F: Fn(&[i64]) -> bool + Sync,
{
    if dim == 0 {
        return 0;
    }
    let ri = r as i64;
    (-ri..=ri)
        .into_par_iter()
        .map(|first| {
            let mut hits = 0u128;
            let mut point = vec![0i64; dim];
            point[0] = first;
            for_each_cube_point(dim - 1, r, |rest| {
                point[1..].copy_from_slice(rest);
                if pred(&point) {
                    hits += 1;
                }
            });
            hits
        })
        .sum()
}
