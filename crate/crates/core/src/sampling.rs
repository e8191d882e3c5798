//! Random signals on rational grids for property tests and benchmarks.

use alloc::vec::Vec;

use rand::Rng;

use crate::inertia::RIParams;
use crate::signal::Signal;
use crate::time::Time;

/// Transitions are drawn from `{ (lo + k) / denom : 0 <= k <= (hi - lo) }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub lo: i64,
    pub hi: i64,
    pub denom: i64,
    pub max_transitions: usize,
}

impl Grid {
    pub const fn new(lo: i64, hi: i64, denom: i64, max_transitions: usize) -> Grid {
        Grid { lo, hi, denom, max_transitions }
    }

    pub fn point(&self, k: i64) -> Time {
        Time::ratio(k, self.denom)
    }
}

impl Default for Grid {
    /// Integers and halves in `[-4, 12]`, at most eight transitions.
    fn default() -> Grid {
        Grid::new(-8, 24, 2, 8)
    }
}

pub fn random_signal<R: Rng + ?Sized>(rng: &mut R, grid: &Grid) -> Signal {
    let n = rng.random_range(0..=grid.max_transitions);
    let mut ks: Vec<i64> = (0..n).map(|_| rng.random_range(grid.lo..=grid.hi)).collect();
    ks.sort_unstable();
    ks.dedup();
    let ts = ks.into_iter().map(|k| grid.point(k)).collect();
    Signal::from_transitions(rng.random_bool(0.5), ts).expect("sorted and deduplicated")
}

/// Random window parameters with `0 <= mu <= delta <= max` on the grid.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, max: i64, denom: i64) -> RIParams {
    let mut window = || {
        let delta = rng.random_range(0..=max);
        let mu = rng.random_range(0..=delta);
        (Time::ratio(mu, denom), Time::ratio(delta, denom))
    };
    let (mu_r, delta_r) = window();
    let (mu_f, delta_f) = window();
    RIParams::new(mu_r, delta_r, mu_f, delta_f).expect("mu <= delta by construction")
}

/// A random member of `RI(p)` for input `u`.
///
/// Rising edges are placed where the eroded input `u ⊖ rise` is 1 and falling
/// edges where `!u ⊖ fall` is 1, so every edge is justified by construction.
/// Candidates include the erosion breakpoints and their neighbours on a
/// grid of step `1 / (2 * denom)`, which keeps short pulses common.
pub fn random_member<R: Rng + ?Sized>(rng: &mut R, u: &Signal, p: &RIParams, grid: &Grid) -> Signal {
    let may_rise = u.erode(&p.rise_window());
    let may_fall = (!u).erode(&p.fall_window());
    let step = Time::ratio(1, 2 * grid.denom);
    let mut candidates: Vec<Time> =
        may_rise.transitions().iter().chain(may_fall.transitions()).flat_map(|&t| [t - step, t, t + step]).collect();
    let span = grid.hi - grid.lo;
    candidates.extend((0..=2 * span).map(|k| Time::ratio(2 * grid.lo + k, 2 * grid.denom)));
    candidates.sort_unstable();
    candidates.dedup();

    let initial = rng.random_bool(0.5);
    let mut current = initial;
    let mut edges = Vec::new();
    for t in candidates {
        let allowed = if current { may_fall.eval(t) } else { may_rise.eval(t) };
        if allowed && rng.random_bool(0.4) {
            edges.push(t);
            current = !current;
        }
    }
    Signal::from_transitions(initial, edges).expect("candidates are increasing")
}
