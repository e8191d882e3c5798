use alloc::string::String;

use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("interval {index} is empty or reversed")]
    EmptyInterval { index: usize },
    #[error("interval {index} overlaps or precedes the previous interval")]
    UnorderedIntervals { index: usize },
    #[error("only the last interval may be unbounded (interval {index})")]
    UnboundedNotLast { index: usize },
    #[error("transition {index} does not strictly follow the previous one")]
    NonIncreasingTransitions { index: usize },
    #[error("window needs 0 <= mu <= delta, got delta={delta}, mu={mu}")]
    InvalidWindow { delta: Time, mu: Time },
    #[error("dwell times must be non-negative, got ({rise}, {fall})")]
    NegativeDwell { rise: Time, fall: Time },
    #[error("search bound must be positive, got {0}")]
    NonPositiveBound(Time),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Time),
    #[error("transport delay must be non-negative, got {0}")]
    NegativeDelay(Time),
    #[error("self-timed window must be positive, got {0}")]
    NonPositiveTheta(Time),
    #[error("serial chain must contain at least one model")]
    EmptyChain,
    #[error("duplicate corpus label `{0}`")]
    DuplicateLabel(String),
    #[error("at least one membership predicate is required")]
    NoPredicates,
    #[error("corpus is empty")]
    EmptyCorpus,
}
