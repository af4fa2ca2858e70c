//! Erasure correction on the 2-D codeword array.
//!
//! Positions are `(x, y)` with `x < cp`, `y < bp`; they map to matrix
//! columns through [`BlockTensor::column_of`].

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::construct::Family;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::BlockTensor;

/// Set of erased positions in a `width x height` codeword array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasurePattern {
    width: usize,
    height: usize,
    positions: BTreeSet<(usize, usize)>,
}

impl ErasurePattern {
    pub fn empty(width: usize, height: usize) -> Self {
        ErasurePattern { width, height, positions: BTreeSet::new() }
    }

    /// Every position erased.
    pub fn full(width: usize, height: usize) -> Self {
        let positions = (0..width).flat_map(|x| (0..height).map(move |y| (x, y))).collect();
        ErasurePattern { width, height, positions }
    }

    pub fn from_positions(
        width: usize,
        height: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut out = Self::empty(width, height);
        for (x, y) in positions {
            if x >= width || y >= height {
                return Err(Error::OutOfRange {
                    what: "erasure position",
                    index: if x >= width { x } else { y },
                    bound: if x >= width { width } else { height },
                });
            }
            out.positions.insert((x, y));
        }
        Ok(out)
    }

    /// `s x t` rectangle anchored at `(x0, y0)`, clipped at the array edges
    /// or, with `wrap`, continued cyclically.
    pub fn burst(
        width: usize,
        height: usize,
        (x0, y0): (usize, usize),
        s: usize,
        t: usize,
        wrap: bool,
    ) -> Result<Self> {
        if x0 >= width || y0 >= height {
            return Err(Error::InvalidParameter(format!(
                "burst anchor ({x0},{y0}) outside {width}x{height} array"
            )));
        }
        let mut positions = BTreeSet::new();
        for u in 0..s {
            for v in 0..t {
                let (x, y) = (x0 + u, y0 + v);
                if wrap {
                    positions.insert((x % width, y % height));
                } else if x < width && y < height {
                    positions.insert((x, y));
                }
            }
        }
        Ok(ErasurePattern { width, height, positions })
    }

    /// Each position erased independently with probability `epsilon`.
    pub fn iid<R: Rng + ?Sized>(width: usize, height: usize, epsilon: f64, rng: &mut R) -> Result<Self> {
        check_probability(epsilon)?;
        let mut positions = BTreeSet::new();
        for y in 0..height {
            for x in 0..width {
                if rng.random_bool(epsilon) {
                    positions.insert((x, y));
                }
            }
        }
        Ok(ErasurePattern { width, height, positions })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.positions.contains(&(x, y))
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    /// Matrix columns `y * width + x`, ascending by position.
    pub fn columns(&self) -> Vec<usize> {
        self.positions.iter().map(|&(x, y)| y * self.width + x).collect()
    }

    pub fn is_subset(&self, other: &ErasurePattern) -> bool {
        self.positions.is_subset(&other.positions)
    }

    fn check_against(&self, h: &BitMatrix) -> Result<()> {
        if self.width * self.height != h.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} erasure array against a matrix with {} columns",
                self.width,
                self.height,
                h.cols()
            )));
        }
        Ok(())
    }
}

fn check_probability(epsilon: f64) -> Result<()> {
    if (0.0..=1.0).contains(&epsilon) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("erasure probability {epsilon} outside [0, 1]")))
    }
}

fn check_burst_dims(t: &BlockTensor, s: usize, t_len: usize) -> Result<()> {
    let d = t.dims();
    if s == 0 || s > d.width() || t_len == 0 || t_len > d.height() {
        return Err(Error::InvalidParameter(format!(
            "burst {s}x{t_len} must satisfy 1 <= s <= {} and 1 <= t <= {}",
            d.width(),
            d.height()
        )));
    }
    Ok(())
}

fn single_step_certificate(t: &BlockTensor, s: usize, t_len: usize, wrap: bool) -> Result<bool> {
    check_burst_dims(t, s, t_len)?;
    let d = t.dims();
    let (w, hgt) = (d.width(), d.height());
    let near = |a: usize, b: usize, extent: usize, reach: usize| {
        let diff = a.abs_diff(b);
        let diff = if wrap { diff.min(extent - diff) } else { diff };
        diff < reach
    };
    let layers: Vec<Vec<(usize, usize)>> = (0..d.layers()).map(|l| t.layer_positions(l)).collect();
    for x in 0..w {
        for y in 0..hgt {
            let witnessed = t.layers_through(x, y).into_iter().any(|l| {
                layers[l]
                    .iter()
                    .all(|&(u, v)| (u, v) == (x, y) || !(near(u, x, w, s) && near(v, y, hgt, t_len)))
            });
            if !witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Single-step burst certificate: every position `(i, j)` has a layer whose
/// only one inside the window `{(i+u, j+v) : |u| < s, |v| < t}` is at `(i, j)`.
/// The window is clipped at the array edges.
pub fn burst_correctable(t: &BlockTensor, s: usize, t_len: usize) -> Result<bool> {
    single_step_certificate(t, s, t_len, false)
}

/// As [`burst_correctable`], with the window wrapping around the array edges.
pub fn burst_correctable_cyclic(t: &BlockTensor, s: usize, t_len: usize) -> Result<bool> {
    single_step_certificate(t, s, t_len, true)
}

/// Result of iterative peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelOutcome {
    /// Positions in the order they were resolved.
    pub recovered: Vec<(usize, usize)>,
    /// Positions still erased when no check had a single erased participant.
    pub residual: ErasurePattern,
}

impl PeelOutcome {
    pub fn success(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Peeling decoder: repeatedly resolves the lowest-indexed check that has
/// exactly one erased participant.
pub fn peel(h: &BitMatrix, e: &ErasurePattern) -> Result<PeelOutcome> {
    e.check_against(h)?;
    let col_rows = h.col_supports();
    let mut erased = vec![false; h.cols()];
    let mut count = vec![0usize; h.rows()];
    for c in e.columns() {
        erased[c] = true;
        for &r in &col_rows[c] {
            count[r] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..h.rows()).filter(|&r| count[r] == 1).collect();
    let mut recovered = Vec::new();
    while let Some(r) = ready.pop_first() {
        let c = h
            .row_support(r)
            .into_iter()
            .find(|&c| erased[c])
            .expect("check in ready set has one erased participant");
        erased[c] = false;
        recovered.push((c % e.width, c / e.width));
        for &r2 in &col_rows[c] {
            count[r2] -= 1;
            match count[r2] {
                1 => {
                    ready.insert(r2);
                }
                0 => {
                    ready.remove(&r2);
                }
                _ => {}
            }
        }
    }
    let residual = ErasurePattern {
        width: e.width,
        height: e.height,
        positions: e.positions().filter(|&(x, y)| erased[y * e.width + x]).collect(),
    };
    Ok(PeelOutcome { recovered, residual })
}

/// Maximum-likelihood recoverability: the erased columns are linearly independent.
pub fn ml_recoverable(h: &BitMatrix, e: &ErasurePattern) -> Result<bool> {
    e.check_against(h)?;
    let cols = e.columns();
    Ok(h.submatrix_cols(&cols)?.rank() == cols.len())
}

/// Outcome of peeling one burst at every anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurstSweep {
    pub anchors: usize,
    pub failed_anchors: Vec<(usize, usize)>,
}

impl BurstSweep {
    pub fn all_recovered(&self) -> bool {
        self.failed_anchors.is_empty()
    }
}

/// Peels an `s x t` burst anchored at every position of the array.
pub fn burst_sweep(t: &BlockTensor, s: usize, t_len: usize, wrap: bool) -> Result<BurstSweep> {
    check_burst_dims(t, s, t_len)?;
    let d = t.dims();
    let h = t.unfold();
    let anchors: Vec<(usize, usize)> =
        (0..d.height()).flat_map(|y| (0..d.width()).map(move |x| (x, y))).collect();
    let failed = anchors
        .par_iter()
        .map(|&a| {
            let e = ErasurePattern::burst(d.width(), d.height(), a, s, t_len, wrap)?;
            Ok((!peel(&h, &e)?.success()).then_some(a))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BurstSweep {
        anchors: anchors.len(),
        failed_anchors: failed.into_iter().flatten().collect(),
    })
}

/// Random erasure source for [`simulate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErasureModel {
    /// Independent erasures with the given probability.
    Iid { epsilon: f64 },
    /// One `s x t` burst at a uniformly random anchor, clipped at the edges.
    Burst { s: usize, t: usize },
}

impl ErasureModel {
    pub fn name(&self) -> &'static str {
        match self {
            ErasureModel::Iid { .. } => "iid",
            ErasureModel::Burst { .. } => "burst",
        }
    }

    pub fn param(&self) -> String {
        match *self {
            ErasureModel::Iid { epsilon } => format!("{epsilon}"),
            ErasureModel::Burst { s, t } => format!("{s}x{t}"),
        }
    }
}

/// Monte Carlo peeling statistics for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub family: Family,
    pub p: usize,
    pub model: ErasureModel,
    pub trials: usize,
    pub failures: usize,
    pub seed: u64,
}

impl SimReport {
    pub const CSV_HEADER: &'static str = "family,p,model,param,trials,failures,rate,seed";

    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{}",
            self.family,
            self.p,
            self.model.name(),
            self.model.param(),
            self.trials,
            self.failures,
            self.rate(),
            self.seed
        )
    }
}

impl fmt::Display for SimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} p={} {} {}: {}/{} failures (rate {:.6}, seed {})",
            self.family,
            self.p,
            self.model.name(),
            self.model.param(),
            self.failures,
            self.trials,
            self.rate(),
            self.seed
        )
    }
}

/// CSV document: header plus one row per report.
pub fn reports_to_csv(reports: &[SimReport]) -> String {
    let mut out = String::from(SimReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Runs `trials` independent peeling attempts. Trial `n` draws from a
/// ChaCha8 stream `n` keyed by `seed`, so the report does not depend on
/// thread scheduling.
pub fn simulate(t: &BlockTensor, model: ErasureModel, trials: usize, seed: u64) -> Result<SimReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let d = t.dims();
    let (w, hgt) = (d.width(), d.height());
    match model {
        ErasureModel::Iid { epsilon } => check_probability(epsilon)?,
        ErasureModel::Burst { s, t: t_len } => check_burst_dims(t, s, t_len)?,
    }
    let h = t.unfold();
    let failures = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let e = match model {
                ErasureModel::Iid { epsilon } => ErasurePattern::iid(w, hgt, epsilon, &mut rng)?,
                ErasureModel::Burst { s, t: t_len } => {
                    let anchor = (rng.random_range(0..w), rng.random_range(0..hgt));
                    ErasurePattern::burst(w, hgt, anchor, s, t_len, false)?
                }
            };
            Ok(usize::from(!peel(&h, &e)?.success()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(SimReport {
        family: t.plan().family(),
        p: d.p,
        model,
        trials,
        failures,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{default_config, prime_family, GridDims};

    fn prime(p: usize) -> BlockTensor {
        let cfg = default_config(Family::Prime, GridDims::prime(p).unwrap(), None).unwrap();
        BlockTensor::new(prime_family(p, &cfg).unwrap())
    }

    #[test]
    fn certificate_examples() {
        let t = prime(3);
        assert!(burst_correctable(&t, 3, 3).unwrap());
        assert!(burst_correctable(&t, 1, 1).unwrap());
        assert!(!burst_correctable(&t, 9, 9).unwrap());
        assert!(burst_correctable(&t, 0, 3).is_err());
        assert!(burst_correctable(&t, 3, 10).is_err());
    }

    #[test]
    fn certificate_monotone_in_window() {
        let t = prime(3);
        let mut prev = true;
        for s in 1..=9 {
            let now = burst_correctable(&t, s, s).unwrap();
            assert!(prev || !now);
            prev = now;
        }
    }

    #[test]
    fn peel_empty_and_full() {
        let t = prime(3);
        let h = t.unfold();
        let out = peel(&h, &ErasurePattern::empty(9, 9)).unwrap();
        assert!(out.success() && out.recovered.is_empty());
        let out = peel(&h, &ErasurePattern::full(9, 9)).unwrap();
        assert!(!out.success());
        assert!(out.residual.len() >= 81 - 25);
    }

    #[test]
    fn peel_all_anchors() {
        let t = prime(3);
        assert!(burst_sweep(&t, 3, 3, false).unwrap().all_recovered());
        assert_eq!(burst_sweep(&t, 3, 3, false).unwrap().anchors, 81);
    }

    #[test]
    fn peel_recovers_in_check_order() {
        let t = prime(3);
        let h = t.unfold();
        let e = ErasurePattern::burst(9, 9, (0, 0), 3, 3, false).unwrap();
        let out = peel(&h, &e).unwrap();
        assert_eq!(out.recovered.len(), 9);
        // the first resolved position hangs off the lowest ready check
        let first_check = (0..27)
            .find(|&r| h.row_support(r).iter().filter(|&&c| e.columns().contains(&c)).count() == 1)
            .unwrap();
        let (x, y) = out.recovered[0];
        assert!(h.get(first_check, t.column_of(x, y)));
    }

    #[test]
    fn ml_examples() {
        let t = prime(3);
        let h = t.unfold();
        assert!(ml_recoverable(&h, &ErasurePattern::empty(9, 9)).unwrap());
        let e = ErasurePattern::burst(9, 9, (0, 0), 3, 3, false).unwrap();
        assert!(ml_recoverable(&h, &e).unwrap());
        assert_eq!(h.submatrix_cols(&e.columns()).unwrap().rank(), 9);
        // frozen: the erased columns of a 4x4 corner burst have rank 15,
        // so neither ML nor peeling (6 left) recovers it
        let e = ErasurePattern::burst(9, 9, (0, 0), 4, 4, false).unwrap();
        assert_eq!(h.submatrix_cols(&e.columns()).unwrap().rank(), 15);
        assert!(!ml_recoverable(&h, &e).unwrap());
        assert_eq!(peel(&h, &e).unwrap().residual.len(), 6);
    }

    #[test]
    fn pattern_errors() {
        assert!(ErasurePattern::from_positions(3, 3, [(3, 0)]).is_err());
        assert!(ErasurePattern::burst(3, 3, (0, 3), 1, 1, false).is_err());
        let h = prime(3).unfold();
        assert!(peel(&h, &ErasurePattern::empty(3, 3)).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(ErasurePattern::iid(3, 3, 1.5, &mut rng).is_err());
    }

    #[test]
    fn burst_wrap_and_clip() {
        let clipped = ErasurePattern::burst(9, 9, (8, 8), 3, 3, false).unwrap();
        assert_eq!(clipped.len(), 1);
        let wrapped = ErasurePattern::burst(9, 9, (8, 8), 3, 3, true).unwrap();
        assert_eq!(wrapped.len(), 9);
        assert!(wrapped.contains(0, 0));
    }

    #[test]
    fn simulate_examples() {
        let t = prime(3);
        let r = simulate(&t, ErasureModel::Burst { s: 3, t: 3 }, 200, 1).unwrap();
        assert_eq!(r.failures, 0);
        let r = simulate(&t, ErasureModel::Iid { epsilon: 0.0 }, 50, 1).unwrap();
        assert_eq!(r.failures, 0);
        let r = simulate(&t, ErasureModel::Iid { epsilon: 1.0 }, 50, 1).unwrap();
        assert_eq!(r.rate(), 1.0);
        assert!(simulate(&t, ErasureModel::Iid { epsilon: 0.1 }, 0, 1).is_err());
        assert!(simulate(&t, ErasureModel::Burst { s: 10, t: 1 }, 5, 1).is_err());
    }

    #[test]
    fn simulate_is_seed_deterministic() {
        let t = prime(3);
        let model = ErasureModel::Iid { epsilon: 0.2 };
        let a = simulate(&t, model, 300, 42).unwrap();
        let b = simulate(&t, model, 300, 42).unwrap();
        assert_eq!(reports_to_csv(&[a.clone()]), reports_to_csv(&[b]));
        assert!(a.failures > 0 && a.failures < 300);
        assert_eq!(
            reports_to_csv(&[a]).lines().next().unwrap(),
            "family,p,model,param,trials,failures,rate,seed"
        );
    }
}
