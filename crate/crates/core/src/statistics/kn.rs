use crate::error::{Error, Result};

/// Kolmogorov-type statistic `K_n = sup_t |G_n(t) - H_n(t)|`.
///
/// `G_n` and `H_n` are the U-empirical distribution functions of
/// `|Xi - Xj|` and `|Xi + Xj|`, with strict inequalities. Both are left
/// continuous and jump only at the pairwise values, so the supremum is the
/// right limit at one of those values. A merged sweep over the sorted values
/// counts with `<=` at each distinct candidate, which is exactly that right
/// limit.
pub fn compute_kn(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::SampleTooSmall {
            statistic: "K_n",
            required: 2,
            got: n,
        });
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let (mut diffs, mut sums) = pairwise(x);
    diffs.sort_by(|a, b| a.total_cmp(b));
    sums.sort_by(|a, b| a.total_cmp(b));

    let pairs = diffs.len();
    let (mut i, mut j) = (0usize, 0usize);
    let mut best = 0usize;
    while i < pairs || j < pairs {
        let c = match (diffs.get(i), sums.get(j)) {
            (Some(&d), Some(&s)) => d.min(s),
            (Some(&d), None) => d,
            (None, Some(&s)) => s,
            (None, None) => unreachable!(),
        };
        while i < pairs && diffs[i] <= c {
            i += 1;
        }
        while j < pairs && sums[j] <= c {
            j += 1;
        }
        best = best.max(i.abs_diff(j));
    }
    Ok(best as f64 / pairs as f64)
}

pub(crate) fn pairwise(x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let mut diffs = Vec::with_capacity(n * (n - 1) / 2);
    let mut sums = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            diffs.push((x[i] - x[j]).abs());
            sums.push((x[i] + x[j]).abs());
        }
    }
    (diffs, sums)
}

/// Evaluates `|G_n(t) - H_n(t)|` directly from the definition at every
/// supplied `t`, plus every jump point and a point strictly between each pair
/// of consecutive jump points, and returns the maximum.
pub fn kn_grid_oracle(x: &[f64], grid: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::SampleTooSmall {
            statistic: "K_n",
            required: 2,
            got: x.len(),
        });
    }
    let (diffs, sums) = pairwise(x);
    let mut jumps: Vec<f64> = diffs.iter().chain(&sums).copied().collect();
    jumps.sort_by(|a, b| a.total_cmp(b));
    jumps.dedup();
    let mut points: Vec<f64> = grid.to_vec();
    points.extend(&jumps);
    points.extend(jumps.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    points.push(jumps.last().copied().unwrap_or(0.0) + 1.0);

    let mut d_sorted = diffs.clone();
    let mut s_sorted = sums.clone();
    d_sorted.sort_by(|a, b| a.total_cmp(b));
    s_sorted.sort_by(|a, b| a.total_cmp(b));
    let below = |v: &[f64], t: f64| v.partition_point(|&y| y < t);
    let pairs = diffs.len() as f64;
    Ok(points
        .iter()
        .map(|&t| (below(&d_sorted, t) as f64 - below(&s_sorted, t) as f64).abs() / pairs)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antithetic_pair_gives_one() {
        assert_eq!(compute_kn(&[1.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn too_small() {
        assert!(compute_kn(&[1.0]).is_err());
    }

    #[test]
    fn positive_pair() {
        // |1-2| = 1 < |1+2| = 3: G jumps first, |G-H| = 1 on (1, 3]
        assert_eq!(compute_kn(&[1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(kn_grid_oracle(&[1.0, 2.0], &[]).unwrap(), 1.0);
    }

    #[test]
    fn ties_are_exact() {
        let x = [1.0, 1.0, -1.0, 0.0, 2.0, -2.0];
        assert_eq!(compute_kn(&x).unwrap(), kn_grid_oracle(&x, &[]).unwrap());
    }
}
