//! Window searches: a single relative inertia window dominating a set of
//! required edge instants, and corpus fitting of the tightest windows.
//!
//! A window seen from `t` is `[t - lead, t - lag]` with `lead = delta` and
//! `lag = delta - mu`, subject to `0 <= lag <= lead <= bound`. A requirement
//! "`u == v` around every instant of a span" is met exactly when the union of
//! the windows over the span sits inside one maximal `v`-run `[rs, re)` of
//! `u`, i.e. `lead <= lo - rs` and `lag >= hi - re` (strict when the span is
//! closed at `hi`). Every constraint is of that shape, so the feasible region
//! only changes at those differences; candidates are those values, `0`,
//! `bound`, midpoints between consecutive ones, and each strict floor plus
//! half the smallest gap.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::inertia::RIParams;
use crate::signal::{EdgeKind, Run, Signal, Window};
use crate::time::Time;

/// A set of instants `[start, end)` or `[start, end]`; `None` bounds are
/// infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Option<Time>,
    pub end: Option<Time>,
    pub end_closed: bool,
}

impl Span {
    pub fn point(t: Time) -> Span {
        Span { start: Some(t), end: Some(t), end_closed: true }
    }

    pub fn from_run(run: Run) -> Span {
        Span { start: run.start, end: run.end, end_closed: false }
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start.is_none_or(|s| s <= t) && self.end.is_none_or(|e| if self.end_closed { t <= e } else { t < e })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(s), Some(e), true) = (self.start, self.end, self.end_closed) {
            if s == e {
                return write!(f, "{s}");
            }
        }
        match self.start {
            Some(s) => write!(f, "[{s},")?,
            None => f.write_str("(-inf,")?,
        }
        match self.end {
            Some(e) => write!(f, "{e}{}", if self.end_closed { ']' } else { ')' }),
            None => f.write_str("inf)"),
        }
    }
}

/// A finite union of spans, e.g. the instants where a state edge occurs or
/// the 1-set of a signal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstantSet {
    spans: Vec<Span>,
}

impl InstantSet {
    pub fn empty() -> InstantSet {
        InstantSet::default()
    }

    pub fn points<I: IntoIterator<Item = Time>>(points: I) -> InstantSet {
        InstantSet { spans: points.into_iter().map(Span::point).collect() }
    }

    /// The instants where `s` is 1.
    pub fn from_signal(s: &Signal) -> InstantSet {
        InstantSet { spans: s.runs(true).into_iter().map(Span::from_run).collect() }
    }

    pub fn from_spans(spans: Vec<Span>) -> InstantSet {
        InstantSet { spans }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn contains(&self, t: Time) -> bool {
        self.spans.iter().any(|s| s.contains(t))
    }
}

/// "The input must equal `kind.target()` around every instant of `span`".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Requirement {
    pub kind: EdgeKind,
    pub span: Span,
    /// Index of the corpus pair the requirement came from, when fitting.
    pub pair: Option<usize>,
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pair {
            Some(i) => write!(f, "{} edge at {} of pair {i}", self.kind, self.span),
            None => write!(f, "{} requirement at {}", self.kind, self.span),
        }
    }
}

/// `lag >= value`, or `lag > value` when strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Floor {
    value: Time,
    strict: bool,
}

impl Floor {
    const NONE: Floor = Floor { value: Time::ZERO, strict: false };

    fn tightness(&self, other: &Floor) -> Ordering {
        self.value.cmp(&other.value).then(self.strict.cmp(&other.strict))
    }

    fn admits(&self, lag: Time) -> bool {
        if self.strict {
            lag > self.value
        } else {
            lag >= self.value
        }
    }
}

/// One way to satisfy a requirement: fit inside a particular run of `u`.
#[derive(Debug, Clone, Copy)]
struct Slot {
    max_lead: Option<Time>,
    min_lag: Option<Floor>,
}

impl Slot {
    fn admits(&self, lead: Time, lag: Time) -> bool {
        self.max_lead.is_none_or(|m| lead <= m) && self.min_lag.is_none_or(|f| f.admits(lag))
    }
}

struct Constraint {
    requirement: Requirement,
    slots: Vec<Slot>,
}

impl Constraint {
    fn new(u: &Signal, requirement: Requirement) -> Constraint {
        let span = requirement.span;
        let slots = u
            .runs(requirement.kind.target())
            .into_iter()
            .filter_map(|run| {
                let max_lead = match (span.start, run.start) {
                    (_, None) => None,
                    (None, Some(_)) => return None,
                    (Some(lo), Some(rs)) => Some(lo - rs),
                };
                let min_lag = match (span.end, run.end) {
                    (_, None) => None,
                    (None, Some(_)) => return None,
                    (Some(hi), Some(re)) => Some(Floor { value: hi - re, strict: span.end_closed }),
                };
                Some(Slot { max_lead, min_lag })
            })
            .collect();
        Constraint { requirement, slots }
    }

    fn admits(&self, lead: Time, lag: Time) -> bool {
        self.slots.iter().any(|s| s.admits(lead, lag))
    }
}

/// Upper bound on `delta` and the requirements imposing it; no sources means
/// the search bound itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadCap {
    pub value: Time,
    pub sources: Vec<Requirement>,
}

/// Lower bound on `delta - mu` and the requirements imposing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagFloor {
    pub value: Time,
    pub strict: bool,
    pub sources: Vec<Requirement>,
}

/// Why no window exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// No run of the input can host this requirement within the bound.
    Uncoverable(Requirement),
    /// Taking each requirement's loosest option, `delta <= cap` and
    /// `delta - mu >= floor` already contradict `delta - mu <= delta`.
    Conflict { cap: LeadCap, floor: LagFloor },
    /// Each requirement is satisfiable and the loosest bounds are compatible,
    /// but no single choice of runs serves all requirements together.
    Coupled { cap: LeadCap, floor: LagFloor },
}

impl Infeasibility {
    /// `Some(true)` when the cap forces `delta = mu = 0`.
    pub fn forces_point_window(&self) -> bool {
        matches!(self, Infeasibility::Conflict { cap, .. } if cap.value.is_zero())
    }
}

fn list_sources(f: &mut fmt::Formatter<'_>, sources: &[Requirement]) -> fmt::Result {
    if sources.is_empty() {
        return f.write_str("search bound");
    }
    for (i, s) in sources.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::Uncoverable(r) => write!(f, "{r} fits in no input run"),
            Infeasibility::Conflict { cap, floor } | Infeasibility::Coupled { cap, floor } => {
                let op = if floor.strict { ">" } else { ">=" };
                write!(f, "delta <= {} (", cap.value)?;
                list_sources(f, &cap.sources)?;
                write!(f, ") and delta - mu {op} {} (", floor.value)?;
                list_sources(f, &floor.sources)?;
                f.write_str(")")?;
                if matches!(self, Infeasibility::Coupled { .. }) {
                    f.write_str(" hold separately but no window serves all requirements")?;
                }
                Ok(())
            }
        }
    }
}

struct Search {
    constraints: Vec<Constraint>,
    bound: Time,
}

impl Search {
    fn candidates(&self) -> Vec<Time> {
        let mut values = Vec::new();
        values.push(Time::ZERO);
        values.push(self.bound);
        for slot in self.constraints.iter().flat_map(|c| &c.slots) {
            values.extend(slot.max_lead);
            values.extend(slot.min_lag.map(|f| f.value));
        }
        values.retain(|v| !v.is_negative() && *v <= self.bound);
        values.sort();
        values.dedup();
        let mut extra: Vec<Time> = values.windows(2).map(|w| Time::midpoint(w[0], w[1])).collect();
        // A strict floor is never attained; stand in for it with a value just
        // above it, so a long lead need not inherit the midpoint to the bound.
        if let Some(gap) = values.windows(2).map(|w| w[1] - w[0]).min() {
            let nudge = Time::midpoint(Time::ZERO, gap);
            let strict = self.constraints.iter().flat_map(|c| &c.slots).filter_map(|s| s.min_lag).filter(|f| f.strict);
            extra.extend(strict.map(|f| f.value + nudge).filter(|v| !v.is_negative() && *v <= self.bound));
        }
        values.extend(extra);
        values.sort();
        values.dedup();
        values
    }

    fn admits(&self, lead: Time, lag: Time) -> bool {
        self.constraints.iter().all(|c| c.admits(lead, lag))
    }

    /// Maximal `(lead, lag)` candidates: no other feasible candidate has a
    /// lead at least as large and a lag at least as small. Ascending lead.
    fn frontier(&self) -> Vec<(Time, Time)> {
        let cands = self.candidates();
        let mut best: Vec<(Time, Time)> = Vec::new();
        for (i, &lead) in cands.iter().enumerate() {
            let below = &cands[..=i];
            if !self.admits(lead, lead) {
                continue;
            }
            // feasibility in lag is upward closed for a fixed lead
            let first_ok = below.partition_point(|&lag| !self.admits(lead, lag));
            best.push((lead, below[first_ok]));
        }
        let mut frontier: Vec<(Time, Time)> = Vec::new();
        for &(lead, lag) in best.iter().rev() {
            if frontier.last().is_none_or(|&(_, l)| lag < l) {
                frontier.push((lead, lag));
            }
        }
        frontier.reverse();
        frontier
    }

    fn diagnose(&self) -> Infeasibility {
        let mut cap = LeadCap { value: self.bound, sources: Vec::new() };
        let mut floor = LagFloor { value: Time::ZERO, strict: false, sources: Vec::new() };
        for c in &self.constraints {
            let mut loosest: Option<(Time, Floor)> = None;
            for slot in &c.slots {
                let lead = slot.max_lead.map_or(self.bound, |m| m.min(self.bound));
                let lag = match slot.min_lag {
                    Some(f) if f.tightness(&Floor::NONE).is_gt() => f,
                    _ => Floor::NONE,
                };
                if lead.is_negative() || !lag.admits(lead) {
                    continue;
                }
                loosest = Some(match loosest {
                    None => (lead, lag),
                    Some((l, g)) => (l.max(lead), if g.tightness(&lag).is_gt() { lag } else { g }),
                });
            }
            let Some((lead, lag)) = loosest else {
                return Infeasibility::Uncoverable(c.requirement);
            };
            match lead.cmp(&cap.value) {
                Ordering::Less => cap = LeadCap { value: lead, sources: alloc::vec![c.requirement] },
                Ordering::Equal if lead < self.bound => cap.sources.push(c.requirement),
                _ => {}
            }
            let current = Floor { value: floor.value, strict: floor.strict };
            match lag.tightness(&current) {
                Ordering::Greater => {
                    floor = LagFloor { value: lag.value, strict: lag.strict, sources: alloc::vec![c.requirement] }
                }
                Ordering::Equal if lag.tightness(&Floor::NONE).is_gt() => floor.sources.push(c.requirement),
                _ => {}
            }
        }
        let floor_as = Floor { value: floor.value, strict: floor.strict };
        if floor_as.admits(cap.value) {
            Infeasibility::Coupled { cap, floor }
        } else {
            Infeasibility::Conflict { cap, floor }
        }
    }
}

fn window_of(lead: Time, lag: Time) -> Window {
    Window::new(lead, lead - lag).expect("frontier points satisfy 0 <= lag <= lead")
}

/// Result of [`dominating_window`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominance {
    Window(RIParams),
    Infeasible(Infeasibility),
}

impl Dominance {
    pub fn params(&self) -> Option<&RIParams> {
        match self {
            Dominance::Window(p) => Some(p),
            Dominance::Infeasible(_) => None,
        }
    }
}

fn check_bound(bound: Time) -> Result<(), Error> {
    if bound.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveBound(bound))
    }
}

/// Searches symmetric parameters `(mu, delta, mu, delta)`, `delta <= bound`,
/// such that `erode(u, w) >= rise` and `erode(!u, w) >= fall` on the given
/// instant sets.
///
/// Among feasible candidates the widest window (largest `mu`, then largest
/// `delta`) is returned. When none exists the diagnosis names the binding
/// requirements.
pub fn dominating_window(u: &Signal, rise: &InstantSet, fall: &InstantSet, bound: Time) -> Result<Dominance, Error> {
    check_bound(bound)?;
    let requirement = |kind| move |&span| Requirement { kind, span, pair: None };
    let constraints = rise
        .spans()
        .iter()
        .map(requirement(EdgeKind::Rising))
        .chain(fall.spans().iter().map(requirement(EdgeKind::Falling)))
        .map(|r| Constraint::new(u, r))
        .collect();
    let search = Search { constraints, bound };
    let pick = search.frontier().into_iter().max_by(|a, b| (a.0 - a.1).cmp(&(b.0 - b.1)).then(a.0.cmp(&b.0)));
    Ok(match pick {
        Some((lead, lag)) => {
            let w = window_of(lead, lag);
            Dominance::Window(RIParams::from_windows(w, w))
        }
        None => Dominance::Infeasible(search.diagnose()),
    })
}

/// Whether fitted rise and fall windows may differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitMode {
    #[default]
    Independent,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("unfittable: {0}")]
    Unfittable(Infeasibility),
}

/// Tightest relative inertia parameters consistent with a corpus of
/// (input, state) pairs.
///
/// Every returned value admits every pair, and no other candidate window is
/// both earlier-starting and later-ending. Larger windows mean smaller
/// properties, so these are the tightest corpus-consistent envelopes of the
/// property generated by the system that produced the corpus. The corpus only
/// approximates that property from above: adding pairs can only shrink the
/// frontier.
pub fn fit_ri(corpus: &[(Signal, Signal)], bound: Time, mode: FitMode) -> Result<Vec<RIParams>, FitError> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus.into());
    }
    check_bound(bound)?;
    let constraints = |kinds: &[EdgeKind]| -> Vec<Constraint> {
        corpus
            .iter()
            .enumerate()
            .flat_map(|(i, (u, x))| {
                x.edge_iter().filter(|e| kinds.contains(&e.kind)).map(move |e| {
                    Constraint::new(u, Requirement { kind: e.kind, span: Span::point(e.at), pair: Some(i) })
                })
            })
            .collect()
    };
    let solve = |kinds: &[EdgeKind]| -> Result<Vec<Window>, FitError> {
        let search = Search { constraints: constraints(kinds), bound };
        let frontier = search.frontier();
        if frontier.is_empty() {
            return Err(FitError::Unfittable(search.diagnose()));
        }
        Ok(frontier.into_iter().map(|(lead, lag)| window_of(lead, lag)).collect())
    };
    Ok(match mode {
        FitMode::Symmetric => {
            solve(&[EdgeKind::Rising, EdgeKind::Falling])?.into_iter().map(|w| RIParams::from_windows(w, w)).collect()
        }
        FitMode::Independent => {
            let rise = solve(&[EdgeKind::Rising])?;
            let fall = solve(&[EdgeKind::Falling])?;
            rise.iter().flat_map(|&r| fall.iter().map(move |&f| RIParams::from_windows(r, f))).collect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inertia::is_ri_member;
    use alloc::string::ToString;
    use alloc::vec;

    fn t(n: i64) -> Time {
        Time::integer(n)
    }

    fn sig(initial: bool, iv: &[(i64, Option<i64>)]) -> Signal {
        let iv: Vec<_> = iv.iter().map(|&(s, e)| (t(s), e.map(t))).collect();
        Signal::from_intervals(initial, &iv).unwrap()
    }

    fn pipeline_u() -> Signal {
        sig(false, &[(0, Some(1)), (2, Some(3)), (4, None)])
    }

    #[test]
    fn serial_counterexample_has_no_window() {
        let rise = InstantSet::points([t(0), t(8)]);
        let fall = InstantSet::points([t(4)]);
        let d = dominating_window(&pipeline_u(), &rise, &fall, t(20)).unwrap();
        let Dominance::Infeasible(why) = d else { panic!("expected infeasible, got {d:?}") };
        assert!(why.forces_point_window());
        let Infeasibility::Conflict { cap, floor } = &why else { unreachable!() };
        assert_eq!(cap.value, t(0));
        assert_eq!(cap.sources[0].span, Span::point(t(0)));
        assert_eq!((floor.value, floor.strict), (t(0), true));
        assert_eq!(floor.sources.len(), 1);
        assert_eq!(floor.sources[0].kind, EdgeKind::Falling);
        assert_eq!(floor.sources[0].span, Span::point(t(4)));
    }

    #[test]
    fn union_counterexample_has_no_window() {
        let u = sig(false, &[(0, Some(2))]);
        let rise = InstantSet::from_signal(&sig(false, &[(1, Some(2)), (3, Some(4))]));
        let fall = InstantSet::from_signal(&sig(true, &[(2, Some(3))]));
        let d = dominating_window(&u, &rise, &fall, t(20)).unwrap();
        let Dominance::Infeasible(Infeasibility::Conflict { cap, floor }) = d else {
            panic!("expected conflict, got {d:?}")
        };
        assert_eq!(cap.value, t(1));
        assert_eq!((floor.value, floor.strict), (t(2), false));
        assert!(floor.sources.iter().any(|r| r.kind == EdgeKind::Falling));
        assert!(cap.sources.iter().any(|r| r.kind == EdgeKind::Rising));
    }

    #[test]
    fn single_requirement_has_a_window() {
        let u = sig(false, &[(0, None)]);
        let d = dominating_window(&u, &InstantSet::points([t(1)]), &InstantSet::empty(), t(2)).unwrap();
        let p = *d.params().unwrap();
        assert_eq!(p, RIParams::symmetric(t(1), t(1)).unwrap());
        assert!(u.erode(&p.rise_window()).eval(t(1)));
    }

    #[test]
    fn bound_must_be_positive() {
        let e = dominating_window(&Signal::one(), &InstantSet::empty(), &InstantSet::empty(), t(0));
        assert_eq!(e, Err(Error::NonPositiveBound(t(0))));
    }

    #[test]
    fn uncoverable_requirement_is_named() {
        let d = dominating_window(&Signal::zero(), &InstantSet::points([t(3)]), &InstantSet::empty(), t(5)).unwrap();
        assert!(matches!(d, Dominance::Infeasible(Infeasibility::Uncoverable(r)) if r.span == Span::point(t(3))));
    }

    #[test]
    fn fit_single_rise_reaches_back_to_input_edge() {
        let d = t(3);
        let corpus = vec![(sig(false, &[(0, None)]), sig(false, &[(3, None)]))];
        let frontier = fit_ri(&corpus, t(10), FitMode::Independent).unwrap();
        assert!(frontier.iter().any(|p| p.mu_r() == d && p.delta_r() == d), "{frontier:?}");
        for p in &frontier {
            assert!(is_ri_member(&corpus[0].0, &corpus[0].1, p));
        }
    }

    #[test]
    fn fit_identity_traces_gives_point_windows() {
        let u = pipeline_u().and(&sig(false, &[(-10, Some(10))]));
        let frontier = fit_ri(&[(u.clone(), u.clone())], t(10), FitMode::Independent).unwrap();
        // a rise can only be explained by the run it starts
        assert!(frontier.iter().all(|p| p.rise_window() == Window::point()));
        assert!(frontier.iter().all(|p| is_ri_member(&u, &u, p)));
        // falls may also look back into the low run before 0
        assert!(frontier.iter().any(|p| p.fall_window() == Window::new(t(7), Time::ratio(1, 2)).unwrap()));
    }

    #[test]
    fn fit_serial_pair_symmetric_is_unfittable() {
        let y = sig(false, &[(0, Some(4)), (8, None)]);
        let err = fit_ri(&[(pipeline_u(), y.clone())], t(20), FitMode::Symmetric).unwrap_err();
        let FitError::Unfittable(Infeasibility::Conflict { floor, .. }) = &err else { panic!("{err:?}") };
        assert_eq!(floor.sources[0].kind, EdgeKind::Falling);
        assert_eq!(floor.sources[0].span, Span::point(t(4)));
        assert!(err.to_string().contains("falling edge at 4 of pair 0"), "{err}");
        // separate windows can still explain the pair
        let frontier = fit_ri(&[(pipeline_u(), y.clone())], t(20), FitMode::Independent).unwrap();
        assert!(!frontier.is_empty());
        for p in &frontier {
            assert!(is_ri_member(&pipeline_u(), &y, p), "{p}");
        }
    }

    #[test]
    fn fit_rejects_empty_corpus() {
        assert_eq!(fit_ri(&[], t(1), FitMode::Independent), Err(FitError::Invalid(Error::EmptyCorpus)));
    }

    #[test]
    fn span_display() {
        assert_eq!(Span::point(t(4)).to_string(), "4");
        let run = Run { start: None, end: Some(t(2)) };
        assert_eq!(Span::from_run(run).to_string(), "(-inf,2)");
    }
}
