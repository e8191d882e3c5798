#![allow(dead_code)]

use inertia_core::{RIParams, Signal, Time};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn t(n: i64) -> Time {
    Time::integer(n)
}

pub fn half(n: i64) -> Time {
    Time::ratio(n, 2)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signals with up to `max` transitions on the half grid in `[-8, 16]`.
pub fn signal_with(max: usize) -> impl Strategy<Value = Signal> {
    (any::<bool>(), prop::collection::btree_set(-16i64..=32, 0..=max))
        .prop_map(|(initial, ks)| Signal::from_transitions(initial, ks.into_iter().map(half).collect()).unwrap())
}

pub fn signal() -> impl Strategy<Value = Signal> {
    signal_with(8)
}

/// `(delta, mu)` on the half grid with `0 <= mu <= delta <= 4`.
pub fn window_parts() -> impl Strategy<Value = (Time, Time)> {
    (0i64..=8).prop_flat_map(|d| (Just(d), 0..=d)).prop_map(|(d, m)| (half(d), half(m)))
}

pub fn params() -> impl Strategy<Value = RIParams> {
    (window_parts(), window_parts()).prop_map(|((dr, mr), (df, mf))| RIParams::new(mr, dr, mf, df).unwrap())
}

/// Breakpoints of all signals, their midpoints, and points outside them.
pub fn probe_points(signals: &[&Signal]) -> Vec<Time> {
    let mut ts: Vec<Time> = signals.iter().flat_map(|s| s.transitions().iter().copied()).collect();
    ts.sort();
    ts.dedup();
    let mut probes = ts.clone();
    probes.extend(ts.windows(2).map(|w| Time::midpoint(w[0], w[1])));
    let first = ts.first().copied().unwrap_or(Time::ZERO);
    let last = ts.last().copied().unwrap_or(Time::ZERO);
    probes.push(first - Time::ONE);
    probes.push(last + Time::ONE);
    probes.sort();
    probes.dedup();
    probes
}

/// Whether `s` is 1 everywhere on `[lo, hi]`, by direct inspection.
pub fn brute_all_ones(s: &Signal, lo: Time, hi: Time) -> bool {
    if !s.eval(lo) {
        return false;
    }
    s.transitions().iter().filter(|&&b| b > lo && b <= hi).all(|&b| s.eval(b))
}
