use thiserror::Error;

use crate::instance::{Pair, PersonId};

/// An invariant of an [`Instance`](crate::Instance) that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{person} is out of range for the declared counts")]
    PersonOutOfRange { person: PersonId },
    #[error("{owner} lists {listed}, who is on the same side")]
    SameSide { owner: PersonId, listed: PersonId },
    #[error("{owner} has an empty tie group")]
    EmptyTier { owner: PersonId },
    #[error("{owner} lists {listed} more than once")]
    DuplicateEntry { owner: PersonId, listed: PersonId },
    #[error("mutual-consistency violated at {pair}: only one side lists the other")]
    OneSided { pair: Pair },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
    #[error("{partner} is not an acceptable partner of {judge}")]
    NotAcceptable { judge: PersonId, partner: PersonId },
    #[error("{0} is not an acceptable pair")]
    UnacceptablePair(Pair),
    #[error("{person} occurs in more than one pair of the matching")]
    NotInjective { person: PersonId },
    #[error("matching is not stable: {0} is a blocking pair")]
    Unstable(Pair),
    #[error("{count} acceptable pairs exceed the enumeration cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("adjacency is undefined for two equal matchings")]
    EqualMatchings,
    #[error("{0} occurs in no vertex of the subgraph")]
    EmptyBlock(PersonId),
    #[error("matching {0} is not a node of the skeleton")]
    UnknownNode(String),
    #[error("skeleton graph is disconnected")]
    Disconnected,
    #[error("vector has length {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
