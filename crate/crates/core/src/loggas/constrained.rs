//! Direct quadrature of gap-constrained log-gas integrals at tiny `n`.
//!
//! With `l` charge-two particles and `K = k - l` constrained pairs among the
//! remaining `d = n - l` charge-one positions, the constrained set pairs
//! position `j` with `j - K` for the last `K` indices. Each paired position is
//! rewritten as `x_{j-K} + t_j`, with `t_j` ranging over the allowed gaps on
//! both sides of zero, so the indicator disappears from the integrand.
//!
//! Free coordinates are integrated over `[-9, 9]` with composite
//! Gauss–Legendre panels. Every `|x_i - x_j|` kink that is visible at a given
//! nesting level becomes a panel breakpoint; kinks against coordinates still
//! to be integrated are smoothed out by that inner integral.

use crate::error::{Error, Result};
use crate::hermite::{gauss_legendre, QuadratureRule};

const DOMAIN: f64 = 9.0;
const ORDER: usize = 10;
const BASE_PANELS: usize = 8;
const MAX_LEVELS: usize = 6;
const REL_TOL: f64 = 1e-5;
pub const MAX_CONSTRAINED_DIM: usize = 4;

/// The admissible range of each constrained gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Gaps in `(0, c)`.
    Below(f64),
    /// Gaps in `(a, b)` with `0 < a < b`.
    Interval(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapConstraint {
    pub k: usize,
    pub bound: Bound,
}

impl GapConstraint {
    pub fn below(k: usize, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Precondition(format!("gap bound must be positive, got {c}")));
        }
        Ok(Self { k, bound: Bound::Below(c) })
    }

    pub fn interval(k: usize, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::Precondition(format!("need 0 < a < b, got ({a}, {b})")));
        }
        Ok(Self { k, bound: Bound::Interval(a, b) })
    }

    /// Signed gap segments, negative side first.
    fn segments(&self) -> [(f64, f64); 2] {
        match self.bound {
            Bound::Below(c) => [(-c, 0.0), (0.0, c)],
            Bound::Interval(a, b) => [(-b, -a), (a, b)],
        }
    }
}

struct Layout {
    charges: Vec<f64>,
    /// `partner[j] = Some(j - K)` for paired positions.
    partner: Vec<Option<usize>>,
    free: usize,
}

impl Layout {
    fn weight(&self, x: &[f64]) -> f64 {
        let mut log_w = 0.0;
        for i in 0..x.len() {
            log_w -= self.charges[i] * x[i] * x[i] / 2.0;
            for j in 0..i {
                let d = (x[i] - x[j]).abs();
                if d == 0.0 {
                    return 0.0;
                }
                log_w += self.charges[i] * self.charges[j] * d.ln();
            }
        }
        log_w.exp()
    }
}

struct Grid {
    rule: QuadratureRule<f64>,
    panels: usize,
    t_rules: Vec<QuadratureRule<f64>>,
}

/// `E_{n,k,l}`: the log-gas integral with `l` charges of size two and `k - l`
/// gaps constrained by `constraint.bound`. Refines by doubling panel counts
/// until consecutive estimates agree to `1e-5` relative.
pub fn integrate_constrained(n: usize, constraint: &GapConstraint, l: usize) -> Result<f64> {
    let k = constraint.k;
    if l > k || k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!("need 1 <= k, l <= k and 2k <= n, got n = {n}, k = {k}, l = {l}")));
    }
    let d = n - l;
    if d == 0 || d > MAX_CONSTRAINED_DIM {
        return Err(Error::OutOfRange(format!(
            "constrained quadrature needs 1 <= n - l <= {MAX_CONSTRAINED_DIM}, got {d}"
        )));
    }
    let pairs = k - l;
    let layout = Layout {
        charges: (0..d).map(|i| if i < l { 2.0 } else { 1.0 }).collect(),
        partner: (0..d).map(|j| (j + pairs >= d).then(|| j - pairs)).collect(),
        free: d - pairs,
    };
    let base = gauss_legendre::<f64>(ORDER)?;
    let (mut previous, mut last) = (f64::NAN, f64::NAN);
    for level in 0..MAX_LEVELS {
        let split = 1usize << level;
        let t_rules = constraint
            .segments()
            .iter()
            .flat_map(|&(a, b)| {
                let h = (b - a) / split as f64;
                (0..split).map(move |s| (a + h * s as f64, a + h * (s + 1) as f64))
            })
            .map(|(a, b)| base.mapped(a, b))
            .collect();
        let grid = Grid { rule: base.clone(), panels: BASE_PANELS << level, t_rules };
        let mut x = vec![0.0; d];
        previous = last;
        last = integrate_gaps(&layout, &grid, d - pairs, &mut x);
        if level > 0 && (last - previous).abs() <= REL_TOL * last.abs() {
            return Ok(last);
        }
    }
    Err(Error::Accuracy { previous, last })
}

/// Outer levels: one gap variable per paired position, stored in `x[j]`
/// until the free coordinates are known.
fn integrate_gaps(layout: &Layout, grid: &Grid, j: usize, x: &mut [f64]) -> f64 {
    if j == x.len() {
        let gaps: Vec<f64> = x[layout.free..].to_vec();
        return integrate_free(layout, grid, 0, &gaps, x);
    }
    let mut total = 0.0;
    for rule in &grid.t_rules {
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            x[j] = t;
            total += w * integrate_gaps(layout, grid, j + 1, x);
        }
    }
    total
}

fn integrate_free(layout: &Layout, grid: &Grid, i: usize, gaps: &[f64], x: &mut [f64]) -> f64 {
    if i == layout.free {
        return layout.weight(x);
    }
    let own_gaps: Vec<f64> =
        (layout.free..x.len()).filter(|&j| layout.partner[j] == Some(i)).map(|j| gaps[j - layout.free]).collect();
    // Kinks in x_i against everything already placed.
    let mut breaks: Vec<f64> = Vec::new();
    let placed = |j: usize| j < i || layout.partner[j].is_some_and(|p| p < i);
    for j in (0..x.len()).filter(|&j| placed(j)) {
        breaks.push(x[j]);
        breaks.extend(own_gaps.iter().map(|t| x[j] - t));
    }
    let h = 2.0 * DOMAIN / grid.panels as f64;
    breaks.extend((0..=grid.panels).map(|p| -DOMAIN + h * p as f64));
    breaks.retain(|b| b.abs() <= DOMAIN);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let mut total = 0.0;
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        let half = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        for (&u, &w) in grid.rule.nodes.iter().zip(&grid.rule.weights) {
            let xi = mid + half * u;
            x[i] = xi;
            for j in layout.free..x.len() {
                if layout.partner[j] == Some(i) {
                    x[j] = xi + gaps[j - layout.free];
                }
            }
            total += w * half * integrate_free(layout, grid, i + 1, gaps, x);
        }
    }
    total
}
