//! Event log records.
//!
//! Each record is a self-contained line: the event kind plus full pre- and
//! post-event snapshots of agent centroids and knowledge counts. Logs are
//! serialized one JSON object per line, which keeps them streamable and
//! diffable, and lets a log be replayed or analyzed without the world that
//! produced it.

use crate::engine::{HaltReason, PlacementRule};
use crate::state::{AgentId, WorldState};
use serde::{Deserialize, Serialize};

/// A single interaction event. At most one event occurs per time step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Event {
    /// A new agent entered the domain and split the contact's arc.
    /// `contact` is 0 for the first agent, which enters an empty domain.
    AgentAdded {
        new_id: AgentId,
        contact: AgentId,
        altruism: f64,
    },
    /// Two resident agents merged knowledge and repositioned. Under the
    /// step rules agent `j` is the one that moves.
    PairInteraction {
        i: AgentId,
        j: AgentId,
        rule: PlacementRule,
    },
    /// A scripted run stopped; the state is unchanged.
    Halted { reason: HaltReason },
}

/// Per-agent state vectors, indexed by agent id minus one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub centroids: Vec<f64>,
    pub knowledge: Vec<u32>,
}

impl Snapshot {
    pub fn of(world: &WorldState) -> Snapshot {
        Snapshot {
            centroids: world
                .agents()
                .iter()
                .map(|a| a.centroid.radians())
                .collect(),
            knowledge: world.agents().iter().map(|a| a.knowledge).collect(),
        }
    }
}

/// One line of the event log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub time: u32,
    pub event: Event,
    pub pre: Snapshot,
    pub post: Snapshot,
}

/// Serializes a log as line-delimited JSON.
pub fn write_log(records: &[EventRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("log records serialize"));
        out.push('\n');
    }
    out
}

/// Parses a line-delimited JSON log.
pub fn parse_log(text: &str) -> crate::Result<Vec<EventRecord>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line).map_err(|e| crate::Error::MalformedLog(e.to_string()))
        })
        .collect()
}
