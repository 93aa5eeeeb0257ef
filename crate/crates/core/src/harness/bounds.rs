//! Closed-form length bounds and probabilities that experiments compare
//! against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(1 - 2/√c)k`, or `(2 - 6/√c)k` for bipartite hosts, clamped at 0.
///
/// `start_vertex` selects the variant where the path must start at a
/// given vertex. It carries the general bound and is only defined for
/// general hosts, so it is rejected together with `bipartite`.
pub fn bound_linear_path(c: f64, k: f64, bipartite: bool, start_vertex: bool) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    if bipartite && start_vertex {
        return Err(Error::InvalidParameter(
            "the start-vertex bound is only defined for general hosts".into(),
        ));
    }
    let factor = if bipartite {
        2.0 - 6.0 / c.sqrt()
    } else {
        1.0 - 2.0 / c.sqrt()
    };
    Ok((factor * k).max(0.0))
}

/// `(1/2 - 5/√ω)αk`, or `(1 - 10/√ω)αk` for bipartite hosts, clamped at 0.
/// Non-positive `ω` gives the vacuous bound 0.
pub fn bound_dfs_cycle(alpha: f64, omega: f64, k: f64, bipartite: bool) -> f64 {
    if !(omega > 0.0) {
        return 0.0;
    }
    let factor = if bipartite {
        1.0 - 10.0 / omega.sqrt()
    } else {
        0.5 - 5.0 / omega.sqrt()
    };
    (factor * alpha * k).max(0.0)
}

/// `(1 - 10/t)αk` clamped at 0: the length targeted by cycle growth with
/// `t` rounds in a host with `αk` vertices of large degree.
pub fn bound_grow_cycle(t: usize, alpha: f64, k: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be positive".into()));
    }
    Ok(((1.0 - 10.0 / t as f64) * alpha * k).max(0.0))
}

/// Guaranteed length after combining `s` disjoint cycles of length at
/// least `ell` in a `t`-connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombineBound {
    /// `(1 - s/t)^{s-1} ℓ + Σ_{i=0}^{s-2} (1 - s/t)^i ℓ/2`.
    pub value: f64,
    /// `sℓ/2`.
    pub half_sum: f64,
    /// Whether `value >= sℓ/2`, which holds once `t` is large against `s`.
    pub meets_half_sum: bool,
}

pub fn bound_combine(s: usize, t: usize, ell: usize) -> Result<CombineBound> {
    if !(s >= 1 && t >= s && ell >= t) {
        return Err(Error::InvalidParameter(format!(
            "need ell >= t >= s >= 1, got s={s}, t={t}, ell={ell}"
        )));
    }
    let r = 1.0 - s as f64 / t as f64;
    let ell = ell as f64;
    let tail: f64 = (0..s.saturating_sub(1)).map(|i| r.powi(i as i32)).sum();
    let value = r.powi(s as i32 - 1) * ell + tail * ell / 2.0;
    let half_sum = s as f64 * ell / 2.0;
    Ok(CombineBound {
        value,
        half_sum,
        meets_half_sum: value >= half_sum - 1e-9,
    })
}

/// `(1 - (1-p)^{k²})^N`: probability that every block of the directed
/// blow-up of an `N`-cycle with parts of size `k` keeps at least one arc.
/// Every directed cycle needs this.
pub fn directed_counterexample_probability(parts: usize, k: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let block_empty = (1.0 - p).powf((k * k) as f64);
    Ok((1.0 - block_empty).powf(parts as f64))
}
