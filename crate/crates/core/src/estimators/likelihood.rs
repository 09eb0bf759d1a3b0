//! Circular maximum likelihood: a 720-point coarse scan followed by
//! golden-section refinement of the promising brackets.
//!
//! All likelihoods in this crate factor into terms `1 + alpha cos(theta) +
//! beta sin(theta)`, which [`TrigLikelihood`] exploits to keep the scan grid
//! up to date with one pass per new observation.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use crate::bloch::Angle;
use crate::error::Result;

use super::interval::CircularInterval;

pub const SCAN_POINTS: usize = 720;
pub const REFINE_TOLERANCE: f64 = 1e-10;
/// Refined maxima closer than this in log-likelihood are ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Grid local maxima further than this below the best scan value are not refined.
const CANDIDATE_WINDOW: f64 = 1.0;
const MAX_CANDIDATES: usize = 8;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub angle: Angle,
    pub value: f64,
    /// The maximizer sits on a closed end of a restricted domain.
    pub boundary_hit: bool,
}

struct ScanPoint {
    angle: f64,
    cos: f64,
    sin: f64,
}

fn scan_grid() -> &'static [ScanPoint] {
    static GRID: OnceLock<Vec<ScanPoint>> = OnceLock::new();
    GRID.get_or_init(|| {
        (0..SCAN_POINTS)
            .map(|j| {
                let angle = TAU * j as f64 / SCAN_POINTS as f64;
                let (sin, cos) = angle.sin_cos();
                ScanPoint { angle, cos, sin }
            })
            .collect()
    })
}

pub fn scan_angle(j: usize) -> f64 {
    scan_grid()[j].angle
}

/// Scan points of `domain` as `(offset from domain start, value)`, ordered by
/// offset. Restricted domains get both closed ends appended.
fn domain_scan<F, G>(f: &F, grid_value: G, domain: &CircularInterval) -> (Vec<(f64, f64)>, bool)
where
    F: Fn(f64) -> f64,
    G: Fn(usize) -> f64,
{
    if domain.is_full() {
        let pts = (0..SCAN_POINTS).map(|j| (scan_angle(j), grid_value(j))).collect();
        return (pts, true);
    }
    let lo = domain.start();
    let span = 2.0 * domain.half_width();
    let mut pts = Vec::with_capacity(SCAN_POINTS / 2 + 2);
    pts.push((0.0, f(lo)));
    // scan indices from just before `lo` to just past the far end
    let step = TAU / SCAN_POINTS as f64;
    let first = (lo.rem_euclid(TAU) / step).floor() as usize;
    let count = ((span / step).ceil() as usize + 2).min(SCAN_POINTS);
    for k in 0..count {
        let j = (first + k) % SCAN_POINTS;
        let t = (scan_angle(j) - lo).rem_euclid(TAU);
        if t > 0.0 && t < span {
            pts.push((t, grid_value(j)));
        }
    }
    pts[1..].sort_by(|x, y| x.0.total_cmp(&y.0));
    pts.push((span, f(lo + span)));
    (pts, false)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn is_local_max(pts: &[(f64, f64)], i: usize, periodic: bool) -> bool {
    let n = pts.len();
    let v = pts[i].1;
    let left = if i > 0 {
        Some(pts[i - 1].1)
    } else if periodic {
        Some(pts[n - 1].1)
    } else {
        None
    };
    let right = if i + 1 < n {
        Some(pts[i + 1].1)
    } else if periodic {
        Some(pts[0].1)
    } else {
        None
    };
    left.is_none_or(|l| v >= l) && right.is_none_or(|r| v >= r)
}

fn maximize_scanned<F, G>(f: &F, grid_value: G, domain: &CircularInterval, tol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
    G: Fn(usize) -> f64,
{
    let (pts, periodic) = domain_scan(f, grid_value, domain);
    let lo = if periodic { 0.0 } else { domain.start() };
    let n = pts.len();
    let last = n - 1;

    let best_scan = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&i| is_local_max(&pts, i, periodic) && pts[i].1 >= best_scan - CANDIDATE_WINDOW)
        .collect();
    if candidates.is_empty() {
        // every scan value is -inf
        candidates.push(0);
    }
    candidates.sort_by(|&i, &j| pts[j].1.total_cmp(&pts[i].1).then(i.cmp(&j)));
    candidates.truncate(MAX_CANDIDATES);

    let at = |t: f64| f(lo + t);
    let mut refined: Vec<(f64, f64, bool)> = Vec::with_capacity(candidates.len());
    for &i in &candidates {
        let (t, v) = pts[i];
        let left = match i {
            0 if periodic => pts[last].0 - TAU,
            0 => t,
            _ => pts[i - 1].0,
        };
        let right = match i {
            _ if i == last && periodic => pts[0].0 + TAU,
            _ if i == last => t,
            _ => pts[i + 1].0,
        };
        let (rt, rv) = golden_max(&at, left, right, tol);
        let mut best = if rv >= v { (rt, rv, false) } else { (t, v, false) };
        if !periodic {
            if i <= 1 && pts[0].1 >= best.1 {
                best = (0.0, pts[0].1, true);
            }
            if i + 1 >= last && pts[last].1 >= best.1 {
                best = (pts[last].0, pts[last].1, true);
            }
        }
        refined.push(best);
    }

    let top = refined.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let (t, value, boundary_hit) = refined
        .into_iter()
        .filter(|r| r.1 >= top - TIE_TOLERANCE)
        .min_by(|x, y| Angle::new(lo + x.0).value().total_cmp(&Angle::new(lo + y.0).value()))
        .expect("at least one candidate");
    Maximum {
        angle: Angle::new(lo + t),
        value,
        boundary_hit,
    }
}

/// Global maximizer of `log_likelihood` over `domain`.
///
/// Ties within [`TIE_TOLERANCE`] go to the smallest canonical angle.
pub fn mle_circular<F: Fn(Angle) -> f64>(log_likelihood: F, domain: &CircularInterval) -> Result<Maximum> {
    let f = |x: f64| log_likelihood(Angle::new(x));
    Ok(maximize_scanned(&f, |j| f(scan_angle(j)), domain, REFINE_TOLERANCE))
}

fn count_scanned(pts: &[(f64, f64)], periodic: bool, rel_tol: f64) -> usize {
    let top = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return 0;
    }
    let same = |x: f64, y: f64| x == y || (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);

    // collapse plateaus into runs of equal value
    let mut runs: Vec<f64> = Vec::new();
    for &(_, v) in pts {
        match runs.last() {
            Some(&r) if same(r, v) => {}
            _ => runs.push(v),
        }
    }
    if periodic && runs.len() > 1 && same(runs[0], *runs.last().unwrap()) {
        runs.pop();
    }
    if runs.len() == 1 {
        return 1;
    }

    let n = runs.len();
    (0..n)
        .filter(|&i| {
            let v = runs[i];
            let left = if i > 0 {
                Some(runs[i - 1])
            } else if periodic {
                Some(runs[n - 1])
            } else {
                None
            };
            let right = if i + 1 < n {
                Some(runs[i + 1])
            } else if periodic {
                Some(runs[0])
            } else {
                None
            };
            left.is_none_or(|l| v > l) && right.is_none_or(|r| v > r)
        })
        .filter(|&i| (runs[i] - top).exp() >= 1.0 - rel_tol)
        .count()
}

/// Number of scan-grid local maxima whose likelihood is within `rel_tol`
/// (relative) of the global maximum. Plateaus count once.
pub fn count_local_maxima<F: Fn(Angle) -> f64>(log_likelihood: F, domain: &CircularInterval, rel_tol: f64) -> usize {
    let f = |x: f64| log_likelihood(Angle::new(x));
    let (pts, periodic) = domain_scan(&f, |j| f(scan_angle(j)), domain);
    count_scanned(&pts, periodic, rel_tol)
}

/// Log-likelihood that is a sum of `ln(scale) + ln(1 + alpha cos + beta sin)`
/// terms, with the scan grid maintained incrementally.
#[derive(Clone, Debug)]
pub struct TrigLikelihood {
    terms: Vec<[f64; 2]>,
    offset: f64,
    grid: Vec<f64>,
}

impl Default for TrigLikelihood {
    fn default() -> Self {
        TrigLikelihood {
            terms: Vec::new(),
            offset: 0.0,
            grid: vec![0.0; SCAN_POINTS],
        }
    }
}

#[inline]
fn factor(term: &[f64; 2], cos: f64, sin: f64) -> f64 {
    (1.0 + term[0] * cos + term[1] * sin).max(0.0)
}

impl TrigLikelihood {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, scale: f64, alpha: f64, beta: f64) {
        let term = [alpha, beta];
        self.offset += scale.ln();
        for (g, p) in self.grid.iter_mut().zip(scan_grid()) {
            *g += factor(&term, p.cos, p.sin).ln();
        }
        self.terms.push(term);
    }

    /// Adds `ln p(x | theta)` for a draw `x` of the optimal covariant POVM.
    pub fn push_covariant(&mut self, x: Angle, sqrt_fq: f64) {
        let (s, c) = x.value().sin_cos();
        self.push(1.0 / TAU, sqrt_fq * c, sqrt_fq * s);
    }

    /// Adds `ln p(outcome | theta; g)` for the two-outcome POVM aimed at `g`.
    pub fn push_two_outcome(&mut self, outcome: u8, g: Angle, sqrt_fq: f64) {
        // (1 +- k sin(theta - g)) / 2 = (1 +- k (sin(theta) cos(g) - cos(theta) sin(g))) / 2
        let sign = if outcome == 0 { -1.0 } else { 1.0 };
        let (s, c) = g.value().sin_cos();
        self.push(0.5, -sign * sqrt_fq * s, sign * sqrt_fq * c);
    }

    pub fn value(&self, theta: Angle) -> f64 {
        self.value_at(theta.value())
    }

    fn value_at(&self, theta: f64) -> f64 {
        let (sin, cos) = theta.sin_cos();
        // factors lie in [0, 2]; multiplying eight at a time cannot underflow
        // a normal double before the logarithm is taken
        let mut total = self.offset;
        for chunk in self.terms.chunks(8) {
            let product: f64 = chunk.iter().map(|t| factor(t, cos, sin)).product();
            total += product.ln();
        }
        total
    }

    pub fn maximize(&self, domain: &CircularInterval) -> Result<Maximum> {
        let f = |x: f64| self.value_at(x);
        Ok(maximize_scanned(&f, |j| self.offset + self.grid[j], domain, REFINE_TOLERANCE))
    }

    pub fn count_local_maxima(&self, domain: &CircularInterval, rel_tol: f64) -> usize {
        let f = |x: f64| self.value_at(x);
        let (pts, periodic) = domain_scan(&f, |j| self.offset + self.grid[j], domain);
        count_scanned(&pts, periodic, rel_tol)
    }
}
