//! Relative and absolute inertia.
//!
//! A relative inertia property `RI(mu_r, delta_r, mu_f, delta_f)` admits a
//! state `x` for input `u` when every rising edge of `x` at `t` sees `u == 1`
//! on the closed window `[t - delta_r, t - delta_r + mu_r]` and every falling
//! edge sees `u == 0` on `[t - delta_f, t - delta_f + mu_f]`. Absolute inertia
//! `AI(d_r, d_f)` constrains the state alone: after an edge the new value must
//! persist on `[t, t + d]`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::signal::{EdgeKind, Signal, Window};
use crate::time::Time;

/// The four parameters `(mu_r, delta_r, mu_f, delta_f)` of a relative inertia
/// property, with `0 <= mu_r <= delta_r` and `0 <= mu_f <= delta_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RIParams {
    rise: Window,
    fall: Window,
}

impl RIParams {
    pub fn new(mu_r: Time, delta_r: Time, mu_f: Time, delta_f: Time) -> Result<RIParams, Error> {
        Ok(RIParams { rise: Window::new(delta_r, mu_r)?, fall: Window::new(delta_f, mu_f)? })
    }

    /// Same window for both edge kinds.
    pub fn symmetric(mu: Time, delta: Time) -> Result<RIParams, Error> {
        RIParams::new(mu, delta, mu, delta)
    }

    pub fn from_windows(rise: Window, fall: Window) -> RIParams {
        RIParams { rise, fall }
    }

    pub fn mu_r(&self) -> Time {
        self.rise.mu()
    }

    pub fn delta_r(&self) -> Time {
        self.rise.delta()
    }

    pub fn mu_f(&self) -> Time {
        self.fall.mu()
    }

    pub fn delta_f(&self) -> Time {
        self.fall.delta()
    }

    pub fn rise_window(&self) -> Window {
        self.rise
    }

    pub fn fall_window(&self) -> Window {
        self.fall
    }

    pub fn window(&self, kind: EdgeKind) -> Window {
        match kind {
            EdgeKind::Rising => self.rise,
            EdgeKind::Falling => self.fall,
        }
    }

    /// The parameters of the dual property: rise and fall swap roles.
    pub fn dual(&self) -> RIParams {
        RIParams { rise: self.fall, fall: self.rise }
    }

    /// Whether `RI(self)` is a subsystem of `RI(other)`.
    ///
    /// Holds iff each window of `self` contains the matching window of
    /// `other`: `delta >= delta'` and `delta - mu <= delta' - mu'` for both
    /// edge kinds. A bigger window is harder to satisfy, so fewer states pass.
    pub fn is_subset_of(&self, other: &RIParams) -> bool {
        self.rise.contains(&other.rise) && self.fall.contains(&other.fall)
    }

    /// Absolute inertia implied by these parameters.
    ///
    /// When `delta_f >= delta_r - mu_r` and `delta_r >= delta_f - mu_f`, every
    /// member state also belongs to `AI(delta_f - delta_r + mu_r,
    /// delta_r - delta_f + mu_f)`. Returns `None` otherwise.
    pub fn to_absolute(&self) -> Option<AIParams> {
        let rise_dwell = self.delta_f() - self.rise.lag();
        let fall_dwell = self.delta_r() - self.fall.lag();
        if rise_dwell.is_negative() || fall_dwell.is_negative() {
            return None;
        }
        Some(AIParams { d_r: rise_dwell, d_f: fall_dwell })
    }

    /// Whether the property forbids arbitrarily short pulses:
    /// `delta_f > delta_r - mu_r` and `delta_r > delta_f - mu_f`, both strict.
    ///
    /// The all-zero parameters are reported as Zeno: with `u = chi(-inf, 0)`
    /// every `chi[-e, 0)` is a member.
    pub fn is_zeno_free(&self) -> bool {
        self.delta_f() > self.rise.lag() && self.delta_r() > self.fall.lag()
    }

    /// A member pair whose state carries a pulse narrower than `epsilon`, for
    /// Zeno parameters. Returns `Ok(None)` when the property is Zeno free.
    ///
    /// With `delta_f <= delta_r - mu_r` the input is `chi(-inf, 0)` and the
    /// state `chi[delta_f - e, delta_f)` with `e = epsilon / 2`. The other
    /// failing inequality uses the dual construction.
    pub fn zeno_witness(&self, epsilon: Time) -> Result<Option<ZenoWitness>, Error> {
        if !epsilon.is_positive() {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        let width = epsilon.half();
        if self.delta_f() <= self.rise.lag() {
            let end = self.delta_f();
            return Ok(Some(ZenoWitness {
                input: Signal::from_intervals(true, &[(Time::ZERO, None)])?,
                state: Signal::from_intervals(false, &[(end - width, Some(end))])?,
                pulse_width: width,
            }));
        }
        if self.delta_r() <= self.fall.lag() {
            let dual = self.dual().zeno_witness(epsilon)?;
            return Ok(dual.map(|w| ZenoWitness { input: !w.input, state: !w.state, pulse_width: w.pulse_width }));
        }
        Ok(None)
    }

    /// A pair admitted by `RI(self)` but not by `RI(other)`, whenever
    /// [`RIParams::is_subset_of`] is false.
    pub fn separating_pair(&self, other: &RIParams) -> Option<(Signal, Signal)> {
        if let Some(pair) = separate_rise(&self.rise, &other.rise) {
            return Some(pair);
        }
        separate_rise(&self.fall, &other.fall).map(|(u, x)| (!u, !x))
    }
}

/// Input 1 exactly around `ours` seen from `t = 0`, state rising at 0.
fn separate_rise(ours: &Window, theirs: &Window) -> Option<(Signal, Signal)> {
    if ours.contains(theirs) {
        return None;
    }
    let (lo, hi) = ours.at(Time::ZERO);
    let (their_lo, their_hi) = theirs.at(Time::ZERO);
    let pad = if their_lo < lo { Time::ONE } else { (their_hi - hi).half() };
    let input = Signal::from_intervals(false, &[(lo, Some(hi + pad))]).ok()?;
    let state = Signal::from_intervals(false, &[(Time::ZERO, None)]).ok()?;
    Some((input, state))
}

impl fmt::Display for RIParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.mu_r(), self.delta_r(), self.mu_f(), self.delta_f())
    }
}

/// Minimum dwell `(d_r, d_f)` after rising and falling edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AIParams {
    d_r: Time,
    d_f: Time,
}

impl AIParams {
    pub fn new(d_r: Time, d_f: Time) -> Result<AIParams, Error> {
        if d_r.is_negative() || d_f.is_negative() {
            return Err(Error::NegativeDwell { rise: d_r, fall: d_f });
        }
        Ok(AIParams { d_r, d_f })
    }

    pub fn d_r(&self) -> Time {
        self.d_r
    }

    pub fn d_f(&self) -> Time {
        self.d_f
    }

    pub fn dwell(&self, kind: EdgeKind) -> Time {
        match kind {
            EdgeKind::Rising => self.d_r,
            EdgeKind::Falling => self.d_f,
        }
    }
}

impl fmt::Display for AIParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.d_r, self.d_f)
    }
}

/// An edge whose window condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub at: Time,
    pub edge_kind: EdgeKind,
    /// Closed interval on which the checked signal had to hold `required`.
    pub required_window: (Time, Time),
    pub required: bool,
    /// A point of `required_window` where the checked signal is `!required`.
    pub witness_point: Time,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.required_window;
        write!(
            f,
            "{} edge at {} needs {} on [{lo},{hi}], found {} at {}",
            self.edge_kind,
            self.at,
            u8::from(self.required),
            u8::from(!self.required),
            self.witness_point
        )
    }
}

/// Outcome of a membership check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Membership {
    violations: Vec<Violation>,
}

impl Membership {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn into_violations(self) -> Vec<Violation> {
        self.violations
    }
}

fn ri_violation(u: &Signal, at: Time, kind: EdgeKind, p: &RIParams) -> Option<Violation> {
    let (lo, hi) = p.window(kind).at(at);
    let required = kind.target();
    u.first_mismatch(required, lo, hi).map(|witness_point| Violation {
        at,
        edge_kind: kind,
        required_window: (lo, hi),
        required,
        witness_point,
    })
}

/// Checks `x` against `RI(p)` for input `u`, reporting every offending edge.
pub fn ri_member(u: &Signal, x: &Signal, p: &RIParams) -> Membership {
    Membership { violations: x.edge_iter().filter_map(|e| ri_violation(u, e.at, e.kind, p)).collect() }
}

/// Short-circuiting form of [`ri_member`].
pub fn is_ri_member(u: &Signal, x: &Signal, p: &RIParams) -> bool {
    x.edge_iter().all(|e| {
        let (lo, hi) = p.window(e.kind).at(e.at);
        u.holds_on(e.kind.target(), lo, hi)
    })
}

/// Checks `x` against `AI(a)`: each edge's new value persists on `[t, t + d]`.
pub fn ai_member(x: &Signal, a: &AIParams) -> Membership {
    Membership {
        violations: x
            .edge_iter()
            .filter_map(|e| {
                let hi = e.at + a.dwell(e.kind);
                let required = e.kind.target();
                x.first_mismatch(required, e.at, hi).map(|witness_point| Violation {
                    at: e.at,
                    edge_kind: e.kind,
                    required_window: (e.at, hi),
                    required,
                    witness_point,
                })
            })
            .collect(),
    }
}

/// A member pair exhibiting a short pulse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZenoWitness {
    pub input: Signal,
    pub state: Signal,
    pub pulse_width: Time,
}

/// A membership predicate over (input, state) pairs.
pub trait Property {
    fn admits(&self, u: &Signal, x: &Signal) -> bool;
}

impl Property for RIParams {
    fn admits(&self, u: &Signal, x: &Signal) -> bool {
        is_ri_member(u, x, self)
    }
}

impl Property for AIParams {
    fn admits(&self, _u: &Signal, x: &Signal) -> bool {
        ai_member(x, self).holds()
    }
}

impl<F: Fn(&Signal, &Signal) -> bool> Property for F {
    fn admits(&self, u: &Signal, x: &Signal) -> bool {
        self(u, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combination {
    Intersection,
    Union,
}

/// Membership in the intersection or union of several properties.
pub fn combine_members(mode: Combination, checks: &[&dyn Property], u: &Signal, x: &Signal) -> Result<bool, Error> {
    if checks.is_empty() {
        return Err(Error::NoPredicates);
    }
    Ok(match mode {
        Combination::Intersection => checks.iter().all(|c| c.admits(u, x)),
        Combination::Union => checks.iter().any(|c| c.admits(u, x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Time {
        Time::integer(n)
    }

    fn ri(a: i64, b: i64, c: i64, d: i64) -> RIParams {
        RIParams::new(t(a), t(b), t(c), t(d)).unwrap()
    }

    fn sig(initial: bool, iv: &[(i64, Option<i64>)]) -> Signal {
        let iv: Vec<_> = iv.iter().map(|&(s, e)| (t(s), e.map(t))).collect();
        Signal::from_intervals(initial, &iv).unwrap()
    }

    fn pipeline_u() -> Signal {
        sig(false, &[(0, Some(1)), (2, Some(3)), (4, None)])
    }

    #[test]
    fn params_validate_side_conditions() {
        assert!(RIParams::new(t(2), t(1), t(0), t(0)).is_err());
        assert!(RIParams::new(t(0), t(0), t(-1), t(0)).is_err());
        assert!(AIParams::new(t(-1), t(0)).is_err());
    }

    #[test]
    fn ri_member_first_stage_holds() {
        let x = sig(false, &[(0, Some(3)), (5, None)]);
        assert!(ri_member(&pipeline_u(), &x, &ri(0, 0, 0, 0)).holds());
    }

    #[test]
    fn ri_member_pipeline_output_fails_at_four() {
        let y = sig(false, &[(0, Some(4)), (8, None)]);
        let m = ri_member(&pipeline_u(), &y, &ri(0, 0, 0, 0));
        assert_eq!(
            m.violations(),
            &[Violation {
                at: t(4),
                edge_kind: EdgeKind::Falling,
                required_window: (t(4), t(4)),
                required: false,
                witness_point: t(4),
            }]
        );
        assert!(!is_ri_member(&pipeline_u(), &y, &ri(0, 0, 0, 0)));
    }

    #[test]
    fn constant_state_is_always_member() {
        for p in [ri(0, 0, 0, 0), ri(1, 3, 1, 3)] {
            assert!(ri_member(&pipeline_u(), &Signal::one(), &p).holds());
            assert!(ri_member(&pipeline_u(), &Signal::zero(), &p).holds());
        }
    }

    #[test]
    fn subset_examples() {
        let p = ri(2, 3, 2, 3);
        assert!(p.is_subset_of(&p));
        assert!(p.is_subset_of(&ri(1, 2, 1, 2)));
        let (a, b) = (ri(1, 3, 1, 3), ri(1, 1, 1, 1));
        assert!(!a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
    }

    #[test]
    fn separating_pair_separates() {
        let params = [ri(1, 3, 1, 3), ri(1, 1, 1, 1), ri(0, 2, 1, 1), ri(2, 2, 0, 0), ri(0, 0, 0, 0)];
        for p in &params {
            for q in &params {
                match p.separating_pair(q) {
                    None => assert!(p.is_subset_of(q), "{p} vs {q}"),
                    Some((u, x)) => {
                        assert!(!p.is_subset_of(q));
                        assert!(is_ri_member(&u, &x, p), "{p} vs {q}");
                        assert!(!is_ri_member(&u, &x, q), "{p} vs {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(ri(1, 2, 3, 4).dual(), ri(3, 4, 1, 2));
        let p = ri(0, 5, 2, 3);
        assert_eq!(p.dual().dual(), p);
        assert_eq!(ri(1, 2, 1, 2).dual(), ri(1, 2, 1, 2));
    }

    #[test]
    fn ai_member_examples() {
        let two = AIParams::new(t(2), t(2)).unwrap();
        assert!(ai_member(&sig(false, &[(0, Some(4))]), &two).holds());
        let m = ai_member(&sig(false, &[(0, Some(1))]), &AIParams::new(t(2), t(0)).unwrap());
        assert_eq!(m.violations().len(), 1);
        assert_eq!(m.violations()[0].witness_point, t(1));
        assert!(ai_member(&Signal::one(), &two).holds());
    }

    #[test]
    fn ri_to_ai_examples() {
        assert_eq!(ri(1, 2, 1, 2).to_absolute(), Some(AIParams::new(t(1), t(1)).unwrap()));
        assert_eq!(ri(3, 3, 3, 3).to_absolute(), Some(AIParams::new(t(3), t(3)).unwrap()));
        assert_eq!(ri(0, 3, 0, 1).to_absolute(), None);
    }

    #[test]
    fn zeno_free_examples() {
        assert!(ri(1, 2, 1, 2).is_zeno_free());
        assert!(!ri(0, 2, 0, 2).is_zeno_free());
        assert!(!ri(0, 0, 0, 0).is_zeno_free());
    }

    #[test]
    fn zeno_witness_direct_construction() {
        let p = ri(0, 3, 0, 1);
        let w = p.zeno_witness(Time::ratio(1, 2)).unwrap().unwrap();
        assert_eq!(w.input, Signal::from_intervals(true, &[(t(0), None)]).unwrap());
        assert_eq!(w.state, Signal::from_intervals(false, &[(Time::ratio(3, 4), Some(t(1)))]).unwrap());
        assert_eq!(w.pulse_width, Time::ratio(1, 4));
        assert!(ri_member(&w.input, &w.state, &p).holds());
    }

    #[test]
    fn zeno_witness_dual_construction() {
        let p = ri(0, 1, 0, 3);
        let w = p.zeno_witness(Time::ratio(1, 2)).unwrap().unwrap();
        let edges = w.state.edges();
        assert_eq!(edges[0].kind, EdgeKind::Falling);
        assert_eq!(edges[1].at - edges[0].at, Time::ratio(1, 4));
        assert!(ri_member(&w.input, &w.state, &p).holds());
    }

    #[test]
    fn zeno_witness_absent_when_zeno_free() {
        assert_eq!(ri(1, 2, 1, 2).zeno_witness(Time::ONE), Ok(None));
        assert!(ri(1, 2, 1, 2).zeno_witness(Time::ZERO).is_err());
    }

    #[test]
    fn combine_examples() {
        let u = sig(false, &[(0, None)]);
        let x = sig(false, &[(1, None)]);
        let (p1, p2) = (ri(1, 3, 1, 3), ri(1, 1, 1, 1));
        assert!(!is_ri_member(&u, &x, &p1));
        assert!(is_ri_member(&u, &x, &p2));
        let both: [&dyn Property; 2] = [&p1, &p2];
        assert_eq!(combine_members(Combination::Intersection, &both, &u, &x), Ok(false));
        assert_eq!(combine_members(Combination::Union, &both, &u, &x), Ok(true));
        assert_eq!(combine_members(Combination::Intersection, &[&p1], &u, &x), Ok(false));
        for mode in [Combination::Intersection, Combination::Union] {
            assert_eq!(combine_members(mode, &both, &u, &Signal::one()), Ok(true));
        }
        assert_eq!(combine_members(Combination::Union, &[], &u, &x), Err(Error::NoPredicates));
    }
}
