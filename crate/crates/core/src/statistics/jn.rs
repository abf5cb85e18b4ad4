use crate::error::{Error, Result};

fn check(x: &[f64]) -> Result<()> {
    if x.len() < 3 {
        return Err(Error::SampleTooSmall {
            statistic: "J_n",
            required: 3,
            got: x.len(),
        });
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

fn normalizer(n: usize) -> f64 {
    let n = n as u128;
    (n * (n - 1) * (n - 2)) as f64
}

/// Integral-type statistic `J_n`, a U-statistic of order three.
///
/// Each triple contributes the symmetrized kernel
/// `I{|Xa - Xb| < |Xc|} - I{|Xa + Xb| < |Xc|}` averaged over the six orderings.
/// Grouping by the unordered pair `{a, b}` turns the triple sum into a count,
/// for every pair, of the remaining points whose modulus exceeds `|Xa - Xb|`
/// and `|Xa + Xb|`. Those counts come from a binary search over the sorted
/// moduli with the pair itself removed, so the cost is O(n² log n) and the
/// result is bit-identical to [`jn_brute_force`].
pub fn compute_jn(x: &[f64]) -> Result<f64> {
    check(x)?;
    let n = x.len();
    let mut moduli: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    moduli.sort_by(|a, b| a.total_cmp(b));
    let exceeding = |v: f64| n - moduli.partition_point(|&m| m <= v);

    let mut total: i64 = 0;
    for i in 0..n {
        let (ai, xi) = (x[i].abs(), x[i]);
        for &xj in &x[i + 1..] {
            let aj = xj.abs();
            let d = (xi - xj).abs();
            let s = (xi + xj).abs();
            let own_d = (ai > d) as usize + (aj > d) as usize;
            let own_s = (ai > s) as usize + (aj > s) as usize;
            total += (exceeding(d) - own_d) as i64 - (exceeding(s) - own_s) as i64;
        }
    }
    // each pair appears twice among the six orderings of its triple
    Ok((2 * total) as f64 / normalizer(n))
}

/// Direct O(n³) evaluation over all triples and all six orderings.
pub fn jn_brute_force(x: &[f64]) -> Result<f64> {
    check(x)?;
    let n = x.len();
    let term = |a: f64, b: f64, c: f64| -> i64 {
        ((a - b).abs() < c.abs()) as i64 - ((a + b).abs() < c.abs()) as i64
    };
    let mut total: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (x[i], x[j], x[k]);
                total += term(a, b, c) + term(b, a, c) + term(a, c, b) + term(c, a, b) + term(b, c, a) + term(c, b, a);
            }
        }
    }
    // binom(n, 3) triples × 6 orderings = n(n-1)(n-2)
    Ok(total as f64 / normalizer(n))
}
