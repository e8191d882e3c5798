//! Binary signals and their primitive operators.
//!
//! A [`Signal`] is a right-continuous step function `R -> {0, 1}` with
//! finitely many transitions. It holds `initial` on `(-inf, t0)`, flips at
//! every listed transition and is therefore constant on each `[t_i, t_{i+1})`.
//! Eventual constancy makes the limit at `+inf` ([`Signal::final_value`]) total.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, BitXor, Not};

use crate::error::Error;
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Rising,
    Falling,
}

impl EdgeKind {
    /// Value the signal takes at (and right after) an edge of this kind.
    pub fn target(self) -> bool {
        matches!(self, EdgeKind::Rising)
    }

    pub fn opposite(self) -> EdgeKind {
        match self {
            EdgeKind::Rising => EdgeKind::Falling,
            EdgeKind::Falling => EdgeKind::Rising,
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Rising => "rising",
            EdgeKind::Falling => "falling",
        })
    }
}

/// A transition: rising when the left limit is 0 and the value is 1, falling
/// the other way round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub at: Time,
    pub kind: EdgeKind,
}

/// A maximal interval of constancy `[start, end)`; `None` stands for `-inf`
/// at the start and `+inf` at the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub start: Option<Time>,
    pub end: Option<Time>,
}

impl Run {
    /// Length of a run bounded on both sides.
    pub fn length(&self) -> Option<Time> {
        Some(self.end? - self.start?)
    }
}

/// The closed sliding interval `[t - delta, t - delta + mu]` seen from instant
/// `t`. Since `mu <= delta` it never reaches past `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    delta: Time,
    mu: Time,
}

impl Window {
    pub fn new(delta: Time, mu: Time) -> Result<Window, Error> {
        if mu.is_negative() || mu > delta {
            return Err(Error::InvalidWindow { delta, mu });
        }
        Ok(Window { delta, mu })
    }

    /// The window `{t}`.
    pub fn point() -> Window {
        Window { delta: Time::ZERO, mu: Time::ZERO }
    }

    pub fn delta(&self) -> Time {
        self.delta
    }

    pub fn mu(&self) -> Time {
        self.mu
    }

    /// How far before `t` the window closes, `delta - mu`.
    pub fn lag(&self) -> Time {
        self.delta - self.mu
    }

    /// Closed bounds of the window seen from `t`.
    pub fn at(&self, t: Time) -> (Time, Time) {
        (t - self.delta, t - self.lag())
    }

    /// Whether this window contains `other` when both are seen from the same
    /// instant, for every instant.
    pub fn contains(&self, other: &Window) -> bool {
        self.delta >= other.delta && self.lag() <= other.lag()
    }
}

/// Minimum widths of the bounded high and low pulses of a signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PulseWidths {
    pub high: Option<Time>,
    pub low: Option<Time>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signal {
    initial: bool,
    transitions: Vec<Time>,
}

impl Signal {
    pub fn constant(value: bool) -> Signal {
        Signal { initial: value, transitions: Vec::new() }
    }

    pub fn zero() -> Signal {
        Signal::constant(false)
    }

    pub fn one() -> Signal {
        Signal::constant(true)
    }

    /// Builds a signal from its value on `(-inf, t0)` and a strictly
    /// increasing list of transition instants.
    pub fn from_transitions(initial: bool, transitions: Vec<Time>) -> Result<Signal, Error> {
        if let Some(i) = transitions.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingTransitions { index: i + 1 });
        }
        Ok(Signal { initial, transitions })
    }

    /// Builds `initial XOR chi_A` where `A` is the union of the half-open
    /// `[start, end)` intervals; `end = None` is `+inf`. With `initial = 0`
    /// this is exactly the characteristic function of the union.
    ///
    /// Intervals must be non-empty and listed in increasing order without
    /// overlap. Touching intervals are merged.
    pub fn from_intervals(initial: bool, intervals: &[(Time, Option<Time>)]) -> Result<Signal, Error> {
        let mut toggles = Vec::with_capacity(intervals.len() * 2);
        let mut last_end: Option<Time> = None;
        for (index, &(start, end)) in intervals.iter().enumerate() {
            if matches!(end, Some(e) if e <= start) {
                return Err(Error::EmptyInterval { index });
            }
            if index > 0 {
                match last_end {
                    None => return Err(Error::UnboundedNotLast { index: index - 1 }),
                    Some(prev) if start < prev => return Err(Error::UnorderedIntervals { index }),
                    Some(_) => {}
                }
            }
            toggles.push(start);
            toggles.extend(end);
            last_end = end;
        }
        Ok(Signal::from_toggles(initial, toggles))
    }

    /// Builds the signal that is 1 exactly on the given runs, which must be
    /// disjoint and listed in increasing order.
    pub(crate) fn from_one_runs<I: IntoIterator<Item = Run>>(runs: I) -> Signal {
        let mut runs = runs.into_iter().peekable();
        let initial = matches!(runs.peek(), Some(Run { start: None, .. }));
        let mut toggles = Vec::new();
        for run in runs {
            toggles.extend(run.start);
            toggles.extend(run.end);
        }
        Signal::from_toggles(initial, toggles)
    }

    /// Non-decreasing toggle instants; a repeated instant cancels out.
    fn from_toggles(initial: bool, toggles: Vec<Time>) -> Signal {
        let mut transitions: Vec<Time> = Vec::with_capacity(toggles.len());
        for t in toggles {
            if transitions.last() == Some(&t) {
                transitions.pop();
            } else {
                debug_assert!(transitions.last().is_none_or(|&l| l < t));
                transitions.push(t);
            }
        }
        Signal { initial, transitions }
    }

    pub fn initial_value(&self) -> bool {
        self.initial
    }

    pub fn transitions(&self) -> &[Time] {
        &self.transitions
    }

    pub fn is_constant(&self) -> bool {
        self.transitions.is_empty()
    }

    /// The limit at `+inf`.
    pub fn final_value(&self) -> bool {
        self.initial ^ (self.transitions.len() % 2 == 1)
    }

    fn value_after(&self, count: usize) -> bool {
        self.initial ^ (count % 2 == 1)
    }

    pub fn eval(&self, t: Time) -> bool {
        self.value_after(self.transitions.partition_point(|&s| s <= t))
    }

    /// The value on `(t - eps, t)` for small `eps`.
    pub fn left_limit(&self, t: Time) -> bool {
        self.value_after(self.transitions.partition_point(|&s| s < t))
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_iter().collect()
    }

    pub fn edge_iter(&self) -> impl Iterator<Item = Edge> + '_ {
        let first = if self.initial { EdgeKind::Falling } else { EdgeKind::Rising };
        self.transitions
            .iter()
            .enumerate()
            .map(move |(i, &at)| Edge { at, kind: if i % 2 == 0 { first } else { first.opposite() } })
    }

    /// Maximal runs on which the signal equals `value`, in increasing order.
    pub fn runs(&self, value: bool) -> Vec<Run> {
        let n = self.transitions.len();
        (0..=n)
            .filter(|&i| self.value_after(i) == value)
            .map(|i| Run {
                start: i.checked_sub(1).map(|j| self.transitions[j]),
                end: self.transitions.get(i).copied(),
            })
            .collect()
    }

    /// Pointwise combination of two signals.
    pub fn combine(&self, other: &Signal, f: impl Fn(bool, bool) -> bool) -> Signal {
        let (a, b) = (&self.transitions, &other.transitions);
        let initial = f(self.initial, other.initial);
        let mut current = initial;
        let (mut va, mut vb) = (self.initial, other.initial);
        let (mut i, mut j) = (0, 0);
        let mut transitions = Vec::new();
        while i < a.len() || j < b.len() {
            let t = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) => x.min(y),
                (Some(&x), None) => x,
                (None, Some(&y)) => y,
                (None, None) => unreachable!(),
            };
            if a.get(i) == Some(&t) {
                va = !va;
                i += 1;
            }
            if b.get(j) == Some(&t) {
                vb = !vb;
                j += 1;
            }
            let v = f(va, vb);
            if v != current {
                transitions.push(t);
                current = v;
            }
        }
        Signal { initial, transitions }
    }

    pub fn and(&self, other: &Signal) -> Signal {
        self.combine(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Signal) -> Signal {
        self.combine(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Signal) -> Signal {
        self.combine(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> Signal {
        Signal { initial: !self.initial, transitions: self.transitions.clone() }
    }

    /// `x o tau^d`: the result at `t` is `x(t - d)`.
    pub fn translate(&self, d: Time) -> Signal {
        Signal { initial: self.initial, transitions: self.transitions.iter().map(|&t| t + d).collect() }
    }

    /// Sliding-window AND: 1 at `t` iff the signal is 1 on all of
    /// `[t - delta, t - delta + mu]`.
    ///
    /// Each 1-run `[s, e)` becomes `[s + delta, e + delta - mu)` and vanishes
    /// when `e - s <= mu`.
    pub fn erode(&self, w: &Window) -> Signal {
        let delta = w.delta();
        let lag = w.lag();
        Signal::from_one_runs(self.runs(true).into_iter().filter_map(|run| {
            let start = run.start.map(|s| s + delta);
            let end = run.end.map(|e| e + lag);
            match (start, end) {
                (Some(s), Some(e)) if e <= s => None,
                _ => Some(Run { start, end }),
            }
        }))
    }

    /// Minimum widths over bounded high pulses and bounded low gaps.
    pub fn min_pulse_widths(&self) -> PulseWidths {
        let min_of = |value| self.runs(value).iter().filter_map(Run::length).min();
        PulseWidths { high: min_of(true), low: min_of(false) }
    }

    /// First instant of the closed interval `[lo, hi]` at which the signal is
    /// not `value`, if any. An empty interval (`hi < lo`) has none.
    pub fn first_mismatch(&self, value: bool, lo: Time, hi: Time) -> Option<Time> {
        if hi < lo {
            return None;
        }
        let idx = self.transitions.partition_point(|&s| s <= lo);
        if self.value_after(idx) != value {
            return Some(lo);
        }
        self.transitions.get(idx).copied().filter(|&s| s <= hi)
    }

    /// Whether the signal equals `value` throughout `[lo, hi]`.
    pub fn holds_on(&self, value: bool, lo: Time, hi: Time) -> bool {
        self.first_mismatch(value, lo, hi).is_none()
    }

    /// Whether both signals coincide on `(-inf, t]`.
    pub fn agrees_until(&self, other: &Signal, t: Time) -> bool {
        let a = self.transitions.partition_point(|&s| s <= t);
        let b = other.transitions.partition_point(|&s| s <= t);
        self.initial == other.initial && self.transitions[..a] == other.transitions[..b]
    }

    /// The `(start, end)` intervals on which the signal differs from its
    /// initial value; the inverse of [`Signal::from_intervals`].
    pub fn intervals(&self) -> Vec<(Time, Option<Time>)> {
        self.transitions.chunks(2).map(|c| (c[0], c.get(1).copied())).collect()
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", u8::from(self.initial))?;
        for (s, e) in self.intervals() {
            match e {
                Some(e) => write!(f, " [{s},{e})")?,
                None => write!(f, " [{s},inf)")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signal({self})")
    }
}

impl Not for &Signal {
    type Output = Signal;
    fn not(self) -> Signal {
        self.complement()
    }
}

impl Not for Signal {
    type Output = Signal;
    fn not(mut self) -> Signal {
        self.initial = !self.initial;
        self
    }
}

impl BitAnd for &Signal {
    type Output = Signal;
    fn bitand(self, rhs: &Signal) -> Signal {
        self.and(rhs)
    }
}

impl BitOr for &Signal {
    type Output = Signal;
    fn bitor(self, rhs: &Signal) -> Signal {
        self.or(rhs)
    }
}

impl BitXor for &Signal {
    type Output = Signal;
    fn bitxor(self, rhs: &Signal) -> Signal {
        self.xor(rhs)
    }
}
