//! Composite Gauss–Legendre quadrature with user-supplied breakpoints.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

/// Gauss–Legendre nodes/weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pairs: Vec<(f64, f64)>,
}

impl Rule {
    pub fn new(degree: usize) -> Self {
        let degree = NonZeroUsize::new(degree.max(1)).expect("nonzero degree");
        let quad = GaussLegendre::new(degree);
        Self {
            pairs: quad.as_node_weight_pairs().to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    /// Integral of `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        if b == a {
            return 0.0;
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self
            .pairs
            .iter()
            .map(|&(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.pairs
            .iter()
            .map(move |&(x, w)| (mid + half * x, half * w))
    }
}

/// The 16-point rule used for panel integration throughout.
pub fn gl16() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| Rule::new(16))
}

/// Splits [a, b] at every breakpoint strictly inside it and then into panels
/// no wider than `(b - a) / panels`. Returns the panel edges.
pub fn panel_edges(a: f64, b: f64, breakpoints: &[f64], panels: usize) -> Vec<f64> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > a && *x < b)
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + y.abs()));
    let max_width = (b - a) / panels.max(1) as f64;
    let mut edges = vec![cuts[0]];
    for w in cuts.windows(2) {
        let k = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        for j in 1..k {
            edges.push(w[0] + (w[1] - w[0]) * j as f64 / k as f64);
        }
        edges.push(w[1]);
    }
    edges
}

/// Composite quadrature of `f` over [a, b] with the given breakpoints.
pub fn composite<F: FnMut(f64) -> f64>(
    rule: &Rule,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    panels: usize,
    mut f: F,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    panel_edges(a, b, breakpoints, panels)
        .windows(2)
        .map(|w| rule.integrate(w[0], w[1], &mut f))
        .sum()
}

/// Nodes and weights of the composite rule, flattened.
pub fn composite_nodes(
    rule: &Rule,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    panels: usize,
) -> Vec<(f64, f64)> {
    if b <= a {
        return Vec::new();
    }
    panel_edges(a, b, breakpoints, panels)
        .windows(2)
        .flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let r = Rule::new(5);
        let v = r.integrate(0.0, 2.0, |x| x.powi(9));
        assert!((v - 2f64.powi(10) / 10.0).abs() < 1e-10);
    }

    #[test]
    fn breakpoints_handle_kinks() {
        let v = composite(gl16(), -1.0, 2.0, &[0.3], 4, |x| (x - 0.3).abs());
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn panel_edges_are_monotone_and_cover() {
        let e = panel_edges(-1.0, 1.0, &[0.5, 0.5, -3.0, 0.1], 7);
        assert_eq!(e[0], -1.0);
        assert_eq!(*e.last().unwrap(), 1.0);
        assert!(e.windows(2).all(|w| w[1] > w[0]));
        assert!(e.contains(&0.5) && e.contains(&0.1));
    }
}
