//! Deterministic delay models and corpus-level meta-property checks.
//!
//! Relative inertia properties describe sets of admissible states. The models
//! here are the constructive fragment: each maps an input to exactly one
//! state, so they can be run, composed and checked on finite corpora.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::inertia::RIParams;
use crate::signal::Signal;
use crate::time::Time;

/// Anything mapping an input signal to a single state signal.
pub trait Transducer {
    fn apply(&self, u: &Signal) -> Signal;
}

impl<F: Fn(&Signal) -> Signal> Transducer for F {
    fn apply(&self, u: &Signal) -> Signal {
        self(u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    /// Pure delay by `d >= 0`.
    Transport(Time),
    /// Inertial delay switching only after its output held for `[t - theta, t)`.
    SelfTimed { theta: Time, initial: bool },
    /// Left-to-right composition.
    Serial(Vec<DelayModel>),
    /// Input and output complemented around the inner model.
    Dual(Box<DelayModel>),
}

/// A validated delay model. Build with the associated constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayModel(Variant);

impl DelayModel {
    pub fn transport(d: Time) -> Result<DelayModel, Error> {
        if d.is_negative() {
            return Err(Error::NegativeDelay(d));
        }
        Ok(DelayModel(Variant::Transport(d)))
    }

    /// The self-timed inertial delay with window `theta` and state value
    /// `initial` along the input's initial piece.
    pub fn self_timed(theta: Time, initial: bool) -> Result<DelayModel, Error> {
        if !theta.is_positive() {
            return Err(Error::NonPositiveTheta(theta));
        }
        Ok(DelayModel(Variant::SelfTimed { theta, initial }))
    }

    pub fn serial(chain: Vec<DelayModel>) -> Result<DelayModel, Error> {
        if chain.is_empty() {
            return Err(Error::EmptyChain);
        }
        Ok(DelayModel(Variant::Serial(chain)))
    }

    pub fn dual(inner: DelayModel) -> DelayModel {
        DelayModel(Variant::Dual(Box::new(inner)))
    }

    pub fn variant(&self) -> &Variant {
        &self.0
    }

    /// Whether the model is non-anticipatory on inputs starting at `initial`.
    ///
    /// A self-timed stage whose initial state disagrees with its input's
    /// initial value is anchored to the input's first transition, so its state
    /// before that transition depends on when it happens. Every other stage
    /// passes the initial value through unchanged.
    pub fn is_causal_for(&self, initial: bool) -> bool {
        match &self.0 {
            Variant::Transport(_) => true,
            Variant::SelfTimed { initial: x0, .. } => *x0 == initial,
            Variant::Serial(chain) => chain.iter().all(|m| m.is_causal_for(initial)),
            Variant::Dual(inner) => inner.is_causal_for(!initial),
        }
    }

    /// Relative inertia parameters the model is known to satisfy.
    ///
    /// Transport by `d` satisfies `(0, d, 0, d)`, the self-timed delay the
    /// point windows `(0, 0, 0, 0)`, and a dual model the dual parameters of
    /// its inner model. Serial chains get none: composing relatively inertial
    /// delays need not give a relatively inertial delay.
    pub fn ri_envelope(&self) -> Option<RIParams> {
        match &self.0 {
            Variant::Transport(d) => RIParams::symmetric(Time::ZERO, *d).ok(),
            Variant::SelfTimed { .. } => RIParams::symmetric(Time::ZERO, Time::ZERO).ok(),
            Variant::Serial(_) => None,
            Variant::Dual(inner) => inner.ri_envelope().map(|p| p.dual()),
        }
    }
}

impl Transducer for DelayModel {
    fn apply(&self, u: &Signal) -> Signal {
        match &self.0 {
            Variant::Transport(d) => u.translate(*d),
            Variant::SelfTimed { theta, initial } => self_timed(u, *theta, *initial),
            Variant::Serial(chain) => {
                let mut x = u.clone();
                for m in chain {
                    x = m.apply(&x);
                }
                x
            }
            Variant::Dual(inner) => !inner.apply(&!u),
        }
    }
}

impl fmt::Display for DelayModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Variant::Transport(d) => write!(f, "transport:{d}"),
            Variant::SelfTimed { theta, initial } => write!(f, "selftimed:{theta}:{}", u8::from(*initial)),
            Variant::Serial(chain) => {
                f.write_str("serial(")?;
                for (i, m) in chain.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str(")")
            }
            Variant::Dual(inner) => write!(f, "dual({inner})"),
        }
    }
}

/// Forward solution of
///
/// ```text
/// !x(t-0) & x(t)  =  AND_{s in [t-theta, t)} !x(s) & u(t)
///  x(t-0) & !x(t) =  AND_{s in [t-theta, t)}  x(s) & !u(t)
/// ```
///
/// The state flips at the earliest `t >= last_edge + theta` where the input
/// disagrees with it. Before its first edge the state is `initial`; when that
/// disagrees with the input's initial value the state counts as settled since
/// `t0 - theta`, `t0` being the input's first transition, and a constant input
/// is followed from the start.
fn self_timed(u: &Signal, theta: Time, initial: bool) -> Signal {
    let ts = u.transitions();
    let mut settled = None;
    if initial != u.initial_value() {
        match ts.first() {
            None => return u.clone(),
            Some(&t0) => settled = Some(t0 - theta),
        }
    }
    let mut current = initial;
    let mut edges = Vec::new();
    loop {
        let next = match settled {
            None => ts.first().copied(),
            Some(last) => {
                let from = last + theta;
                if u.eval(from) != current {
                    Some(from)
                } else {
                    ts.get(ts.partition_point(|&s| s <= from)).copied()
                }
            }
        };
        let Some(t) = next else { break };
        edges.push(t);
        current = !current;
        settled = Some(t);
    }
    Signal::from_transitions(initial, edges).expect("edges are strictly increasing")
}

/// Finite, uniquely labelled set of inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    entries: Vec<(String, Signal)>,
}

impl Corpus {
    pub fn new() -> Corpus {
        Corpus::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (String, Signal)>>(entries: I) -> Result<Corpus, Error> {
        let mut c = Corpus::new();
        for (label, s) in entries {
            c.push(label, s)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, label: String, signal: Signal) -> Result<(), Error> {
        if self.entries.iter().any(|(l, _)| *l == label) {
            return Err(Error::DuplicateLabel(label));
        }
        self.entries.push((label, signal));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Signal)> {
        self.entries.iter().map(|(l, s)| (l.as_str(), s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureDetail {
    /// The state's limit at `+inf` differs from the input's.
    FinalValue { input: bool, state: bool },
    /// Shifting the input by `shift` did not shift the state by `shift`.
    Shift { shift: Time },
    /// An input agreeing with the original up to `cut` produced a state that
    /// differs before `cut`.
    Anticipation { cut: Time, variant: Signal },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub label: String,
    pub detail: FailureDetail,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.detail {
            FailureDetail::FinalValue { input, state } => write!(
                f,
                "{}: final value {} differs from input final value {}",
                self.label,
                u8::from(*state),
                u8::from(*input)
            ),
            FailureDetail::Shift { shift } => {
                write!(f, "{}: output does not commute with translation by {shift}", self.label)
            }
            FailureDetail::Anticipation { cut, variant } => {
                write!(f, "{}: output up to {cut} changes when the input after {cut} becomes {variant}", self.label)
            }
        }
    }
}

/// Result of a corpus check; passes when there are no failures.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }
}

/// Necessary condition for the delay property: on every corpus input the
/// state ends at the input's final value.
pub fn check_delay_on<T: Transducer + ?Sized>(m: &T, c: &Corpus) -> CheckReport {
    let failures = c
        .iter()
        .filter_map(|(label, u)| {
            let state = m.apply(u).final_value();
            let input = u.final_value();
            (state != input)
                .then(|| Failure { label: label.into(), detail: FailureDetail::FinalValue { input, state } })
        })
        .collect();
    CheckReport { failures }
}

/// `m(translate(u, d)) == translate(m(u), d)` for every input and shift.
pub fn check_time_invariance_on<T: Transducer + ?Sized>(m: &T, c: &Corpus, shifts: &[Time]) -> CheckReport {
    let mut failures = Vec::new();
    for (label, u) in c.iter() {
        let x = m.apply(u);
        for &shift in shifts {
            if m.apply(&u.translate(shift)) != x.translate(shift) {
                failures.push(Failure { label: label.into(), detail: FailureDetail::Shift { shift } });
            }
        }
    }
    CheckReport { failures }
}

/// Inputs that agree with `u` on `(-inf, cut]` and differ afterwards: the
/// value at `cut` held forever, and the tail complemented from `cut + 1/64`
/// and from `cut + 1`.
pub fn tail_variants(u: &Signal, cut: Time) -> Vec<Signal> {
    let kept: Vec<Time> = u.transitions().iter().copied().filter(|&t| t <= cut).collect();
    let held = Signal::from_transitions(u.initial_value(), kept).expect("prefix of a valid list");
    let mut variants = Vec::new();
    if held != *u {
        variants.push(held);
    }
    for gap in [Time::ratio(1, 64), Time::ONE] {
        let tail = Signal::from_intervals(false, &[(cut + gap, None)]).expect("unbounded interval");
        variants.push(u.xor(&tail));
    }
    variants
}

/// States of inputs agreeing up to `cut` must agree up to `cut`.
pub fn check_non_anticipation_on<T: Transducer + ?Sized>(m: &T, c: &Corpus, cut: Time) -> CheckReport {
    let mut failures = Vec::new();
    for (label, u) in c.iter() {
        let x = m.apply(u);
        for v in tail_variants(u, cut) {
            debug_assert!(u.agrees_until(&v, cut));
            if !m.apply(&v).agrees_until(&x, cut) {
                failures.push(Failure { label: label.into(), detail: FailureDetail::Anticipation { cut, variant: v } });
            }
        }
    }
    CheckReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inertia::ri_member;
    use alloc::string::ToString;
    use alloc::vec;

    fn t(n: i64) -> Time {
        Time::integer(n)
    }

    fn sig(iv: &[(i64, Option<i64>)]) -> Signal {
        let iv: Vec<_> = iv.iter().map(|&(s, e)| (t(s), e.map(t))).collect();
        Signal::from_intervals(false, &iv).unwrap()
    }

    fn pipeline_u() -> Signal {
        sig(&[(0, Some(1)), (2, Some(3)), (4, None)])
    }

    fn corpus(signals: &[Signal]) -> Corpus {
        Corpus::from_entries(signals.iter().enumerate().map(|(i, s)| (i.to_string(), s.clone()))).unwrap()
    }

    #[test]
    fn self_timed_reproduces_both_stages() {
        let first = DelayModel::self_timed(t(2), false).unwrap();
        let x = first.apply(&pipeline_u());
        assert_eq!(x, sig(&[(0, Some(3)), (5, None)]));
        let second = DelayModel::self_timed(t(4), false).unwrap();
        assert_eq!(second.apply(&x), sig(&[(0, Some(4)), (8, None)]));
        let chain = DelayModel::serial(vec![first, second]).unwrap();
        assert_eq!(chain.apply(&pipeline_u()), sig(&[(0, Some(4)), (8, None)]));
    }

    #[test]
    fn self_timed_filters_short_pulses() {
        let m = DelayModel::self_timed(t(2), false).unwrap();
        // a rise at 0 commits; the low glitch [1,2) is absorbed
        let u = sig(&[(0, Some(1)), (2, None)]);
        assert_eq!(m.apply(&u), sig(&[(0, None)]));
    }

    #[test]
    fn self_timed_with_mismatched_initial_state() {
        let m = DelayModel::self_timed(t(2), true).unwrap();
        // settled at 1 since 0 - 2, input reaches 1 at 0 and drops at 5
        assert_eq!(m.apply(&sig(&[(0, Some(5))])), Signal::from_intervals(true, &[(t(5), None)]).unwrap());
        assert_eq!(m.apply(&Signal::zero()), Signal::zero());
    }

    #[test]
    fn transport_shifts() {
        let m = DelayModel::transport(t(3)).unwrap();
        assert_eq!(m.apply(&pipeline_u()), pipeline_u().translate(t(3)));
        assert_eq!(m.apply(&Signal::one()), Signal::one());
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(DelayModel::transport(t(-1)), Err(Error::NegativeDelay(t(-1))));
        assert_eq!(DelayModel::self_timed(t(0), false), Err(Error::NonPositiveTheta(t(0))));
        assert_eq!(DelayModel::serial(vec![]), Err(Error::EmptyChain));
    }

    #[test]
    fn dual_complements_around_inner() {
        let inner = DelayModel::self_timed(t(2), false).unwrap();
        let d = DelayModel::dual(inner.clone());
        let u = pipeline_u();
        assert_eq!(d.apply(&u), !inner.apply(&!&u));
    }

    #[test]
    fn delay_check_examples() {
        let c = corpus(&[pipeline_u(), sig(&[(1, Some(2))]), Signal::one()]);
        assert!(check_delay_on(&DelayModel::transport(t(2)).unwrap(), &c).passed());
        assert!(check_delay_on(&DelayModel::self_timed(t(2), false).unwrap(), &c).passed());
        let broken = |_: &Signal| Signal::zero();
        let r = check_delay_on(&broken, &corpus(&[sig(&[(0, None)])]));
        assert_eq!(
            r.failures(),
            &[Failure { label: "0".into(), detail: FailureDetail::FinalValue { input: true, state: false } }]
        );
    }

    #[test]
    fn time_invariance_examples() {
        let c = corpus(&[pipeline_u(), sig(&[(1, Some(2))])]);
        let shifts = [t(-3), t(0), Time::ratio(5, 2)];
        assert!(check_time_invariance_on(&DelayModel::transport(t(1)).unwrap(), &c, &shifts).passed());
        assert!(check_time_invariance_on(&DelayModel::self_timed(t(2), false).unwrap(), &c, &[t(7)]).passed());
        let anchored = |u: &Signal| if u.eval(Time::ZERO) { Signal::one() } else { Signal::zero() };
        assert!(check_time_invariance_on(&anchored, &c, &[t(0)]).passed());
        assert!(!check_time_invariance_on(&anchored, &c, &[t(1)]).passed());
    }

    #[test]
    fn non_anticipation_examples() {
        let m = DelayModel::transport(t(1)).unwrap();
        let u = sig(&[(0, None)]);
        let v = sig(&[(0, Some(3))]);
        assert!(m.apply(&u).agrees_until(&m.apply(&v), t(2)));
        assert!(check_non_anticipation_on(&m, &corpus(&[u]), t(2)).passed());
        let st = DelayModel::self_timed(t(2), false).unwrap();
        assert!(check_non_anticipation_on(&st, &corpus(&[pipeline_u()]), t(3)).passed());
        assert!(check_non_anticipation_on(&st, &corpus(&[pipeline_u()]), t(-10)).passed());
        let peek = |u: &Signal| if u.final_value() { Signal::one() } else { Signal::zero() };
        assert!(!check_non_anticipation_on(&peek, &corpus(&[pipeline_u()]), t(5)).passed());
    }

    #[test]
    fn mismatched_initial_state_anticipates_the_first_edge() {
        let m = DelayModel::self_timed(t(2), true).unwrap();
        assert!(!m.is_causal_for(false));
        assert!(DelayModel::dual(m.clone()).is_causal_for(false));
        assert!(!check_non_anticipation_on(&m, &corpus(&[sig(&[(5, None)])]), t(0)).passed());
        assert!(check_non_anticipation_on(&m, &corpus(&[sig(&[(5, None)])]), t(5)).passed());
    }

    #[test]
    fn envelope_examples() {
        let p = DelayModel::transport(t(3)).unwrap().ri_envelope().unwrap();
        assert_eq!(p, RIParams::new(t(0), t(3), t(0), t(3)).unwrap());
        let st = DelayModel::self_timed(t(2), false).unwrap();
        assert_eq!(st.ri_envelope(), RIParams::symmetric(t(0), t(0)).ok());
        let chain = DelayModel::serial(vec![st, DelayModel::self_timed(t(4), false).unwrap()]).unwrap();
        assert_eq!(chain.ri_envelope(), None);
        let u = pipeline_u();
        assert!(!ri_member(&u, &chain.apply(&u), &RIParams::symmetric(t(0), t(0)).unwrap()).holds());
    }

    #[test]
    fn corpus_rejects_duplicate_labels() {
        let mut c = Corpus::new();
        c.push("a".into(), Signal::one()).unwrap();
        assert_eq!(c.push("a".into(), Signal::zero()), Err(Error::DuplicateLabel("a".into())));
    }

    #[test]
    fn model_display_round_trips_the_cli_grammar() {
        let m = DelayModel::serial(vec![
            DelayModel::transport(Time::ratio(1, 2)).unwrap(),
            DelayModel::dual(DelayModel::self_timed(t(2), false).unwrap()),
        ])
        .unwrap();
        assert_eq!(m.to_string(), "serial(transport:1/2,dual(selftimed:2:0))");
    }
}
