//! Deterministic simulator and analysis toolkit for gossip-based coverage of
//! the unit circle by lazy agents.
//!
//! Agents own directed arcs of the circle ("arcs of dominance") and resize
//! them lazily: an agent aware of `n` agents claims exactly `2π/n` of the
//! circle, plus an optional altruism margin. Pairwise interaction events merge
//! knowledge and reposition arcs. The crate provides:
//!
//! * [`circle`] — exact-as-possible arithmetic on S¹: distances, midpoints,
//!   directed rotations, ordering, and the measure of arc unions.
//! * [`state`] — agent and world state, pairwise overlaps, neighbor overlaps,
//!   and coverage/equipartition verdicts.
//! * [`engine`] — executable state machines for the scripted event sequences:
//!   sequential agent addition, the two pairwise interaction schedules, and
//!   the nearest-neighbor extension, with deterministic replay from the event
//!   log.
//! * [`analysis`] — closed-form oracles evaluated in exact rational
//!   arithmetic: centroid positions after sequential addition, the two
//!   premature-termination predicates, neighbor separations, and crossover
//!   detection.
//!
//! Every run is a pure function of its configuration: identical inputs give
//! bit-identical event logs and reports.

pub mod analysis;
pub mod circle;
pub mod engine;
pub mod event;
pub mod state;

pub use circle::{uncovered_measure, Angle, Arc, TOLERANCE};
pub use engine::{HaltReason, PlacementRule, RunOutcome, Rule};
pub use event::{Event, EventRecord, Snapshot};
pub use state::{AgentId, AgentState, CoverageReport, Gap, WorldState};

use thiserror::Error;

/// Errors reported by the simulator and analysis operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown agent id {0}")]
    UnknownAgent(AgentId),
    #[error("agents {0} and {1} must be distinct")]
    SameAgent(AgentId, AgentId),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("agent count {0} out of range: {1}")]
    InvalidAgentCount(u32, &'static str),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("malformed event log: {0}")]
    MalformedLog(String),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
