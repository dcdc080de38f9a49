//! Agent and world state: the lazy sizing rule, pairwise overlaps, neighbor
//! overlaps, and coverage/equipartition verdicts.

use crate::circle::{uncovered_measure, Angle, Arc, TOLERANCE};
use crate::event::EventRecord;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Agent identifier; ids are assigned in entry order starting from 1.
pub type AgentId = u32;

/// One agent: where it sits, how many agents it knows of (including itself),
/// and the arc of dominance it has claimed.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub id: AgentId,
    pub centroid: Angle,
    /// Number of agents this one is aware of, including itself.
    pub knowledge: u32,
    pub arc: Arc,
    /// Extra arc length volunteered beyond the lazy minimum, in radians.
    pub altruism: f64,
}

impl AgentState {
    /// Arc length dictated by the lazy rule: `2π/n` plus the altruism margin,
    /// capped at the full circle.
    pub fn lazy_length(knowledge: u32, altruism: f64) -> f64 {
        assert!(knowledge >= 1, "knowledge counts start at 1");
        (TAU / knowledge as f64 + altruism).clamp(0.0, TAU)
    }

    /// Recenters the arc on the agent's centroid at the lazy length.
    pub(crate) fn resize_lazy(&mut self) {
        self.arc = Arc::from_centroid(self.centroid, Self::lazy_length(self.knowledge, self.altruism));
    }
}

/// The full swarm at a point in time plus the append-only event log.
///
/// A world is a value: cloning yields an independent simulation, and the
/// event counter always equals the number of applied events.
#[derive(Debug, Clone, Default)]
pub struct WorldState {
    agents: Vec<AgentState>,
    log: Vec<EventRecord>,
    /// Altruism assigned to agents as they enter.
    pub(crate) default_altruism: f64,
}

impl WorldState {
    /// An empty domain with no agents and no events.
    pub fn new() -> WorldState {
        WorldState::default()
    }

    /// An empty domain whose future agents enter with the given altruism.
    pub fn with_altruism(epsilon: f64) -> WorldState {
        WorldState {
            default_altruism: epsilon,
            ..WorldState::default()
        }
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn total_agents(&self) -> u32 {
        self.agents.len() as u32
    }

    /// Event counter; equals the number of events applied.
    pub fn time(&self) -> u32 {
        self.log.len() as u32
    }

    pub fn log(&self) -> &[EventRecord] {
        &self.log
    }

    pub fn agent(&self, id: AgentId) -> Result<&AgentState> {
        self.agents
            .get(id.checked_sub(1).ok_or(Error::UnknownAgent(id))? as usize)
            .ok_or(Error::UnknownAgent(id))
    }

    pub(crate) fn agent_mut(&mut self, id: AgentId) -> Result<&mut AgentState> {
        self.agents
            .get_mut(id.checked_sub(1).ok_or(Error::UnknownAgent(id))? as usize)
            .ok_or(Error::UnknownAgent(id))
    }

    pub(crate) fn push_agent(&mut self, agent: AgentState) {
        debug_assert_eq!(agent.id as usize, self.agents.len() + 1, "ids are contiguous");
        self.agents.push(agent);
    }

    pub(crate) fn push_record(&mut self, record: EventRecord) {
        debug_assert_eq!(record.time as usize, self.log.len() + 1);
        self.log.push(record);
    }

    /// Arcs of all agents, indexed by id minus one.
    pub fn arcs(&self) -> Vec<Arc> {
        self.agents.iter().map(|a| a.arc).collect()
    }
}

/// Overlap `S_{i,j}` between the areas of dominance of two lazy agents.
///
/// An agent aware only of itself owns the whole circle, so the overlap is the
/// other agent's full arc. Otherwise the overlap follows from the centroid
/// distance and the two lazy half-lengths, clamped to either arc.
pub fn overlap(i: &AgentState, j: &AgentState) -> f64 {
    debug_assert_ne!(i.id, j.id, "overlap is defined for distinct agents");
    if i.knowledge == 1 {
        return TAU / j.knowledge as f64;
    }
    if j.knowledge == 1 {
        return TAU / i.knowledge as f64;
    }
    let (ni, nj) = (i.knowledge as f64, j.knowledge as f64);
    let d = i.centroid.distance(j.centroid);
    (PI / ni + PI / nj - d)
        .max(0.0)
        .min(TAU / ni)
        .min(TAU / nj)
}

/// Overlaps `(C_j^u, C_j^l)` of agent `j` with its immediate clockwise and
/// anti-clockwise neighbors, chosen by centroid distance.
pub fn neighbor_overlaps(world: &WorldState, j: AgentId) -> Result<(f64, f64)> {
    let me = world.agent(j)?;
    if world.total_agents() < 2 {
        return Err(Error::InvalidAgentCount(
            world.total_agents(),
            "neighbor overlaps need at least two agents",
        ));
    }
    let others: Vec<&AgentState> = world.agents().iter().filter(|a| a.id != j).collect();
    if others.iter().all(|a| me.centroid.distance(a.centroid) <= TOLERANCE) {
        return Err(Error::DegenerateConfiguration(format!(
            "every other centroid coincides with agent {j}; neighbors are undefined"
        )));
    }
    let nearest = |clockwise: bool| -> Result<&AgentState> {
        others
            .iter()
            .filter(|a| {
                if clockwise {
                    me.centroid.clockwise_precedes(a.centroid)
                } else {
                    a.centroid.clockwise_precedes(me.centroid)
                }
            })
            .min_by(|a, b| {
                let da = me.centroid.distance(a.centroid);
                let db = me.centroid.distance(b.centroid);
                da.partial_cmp(&db)
                    .expect("distances are finite")
                    .then(a.id.cmp(&b.id))
            })
            .copied()
            .ok_or_else(|| {
                Error::DegenerateConfiguration(format!(
                    "agent {j} has no {} neighbor",
                    if clockwise { "clockwise" } else { "anti-clockwise" }
                ))
            })
    };
    Ok((overlap(me, nearest(true)?), overlap(me, nearest(false)?)))
}

/// An uncovered component of the circle together with the agents whose arc
/// endpoints bound it on each side (clockwise order: the arc ending at the
/// gap, then the arc beginning after it).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub arc: Arc,
    pub flanking: (AgentId, AgentId),
}

/// Coverage verdict for a world.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub uncovered_total: f64,
    pub gaps: Vec<Gap>,
    pub is_equipartition: bool,
    pub per_agent_lengths: Vec<f64>,
}

/// Computes uncovered components, attributes each gap to the agents flanking
/// it, and checks the equipartition conditions: no uncovered measure, every
/// arc within tolerance of `2π/N`, and no pairwise interior overlap.
pub fn coverage_report(world: &WorldState) -> CoverageReport {
    let agents = world.agents();
    let arcs = world.arcs();
    let (uncovered_total, gap_arcs) = uncovered_measure(&arcs);

    let nearest_endpoint = |target: Angle, pick_upper: bool| -> AgentId {
        agents
            .iter()
            .min_by(|a, b| {
                let pa = if pick_upper { a.arc.upper() } else { a.arc.lower() };
                let pb = if pick_upper { b.arc.upper() } else { b.arc.lower() };
                target
                    .distance(pa)
                    .partial_cmp(&target.distance(pb))
                    .expect("distances are finite")
                    .then(a.id.cmp(&b.id))
            })
            .map(|a| a.id)
            .unwrap_or(0)
    };
    let gaps = gap_arcs
        .into_iter()
        .map(|arc| Gap {
            flanking: (
                nearest_endpoint(arc.lower(), true),
                nearest_endpoint(arc.upper(), false),
            ),
            arc,
        })
        .collect();

    let n = agents.len();
    let target = if n > 0 { TAU / n as f64 } else { TAU };
    let lengths_equal = agents.iter().all(|a| (a.arc.length() - target).abs() <= TOLERANCE);
    let mut interiors_disjoint = true;
    'outer: for (idx, a) in arcs.iter().enumerate() {
        for b in arcs.iter().skip(idx + 1) {
            if a.overlap_measure(b) > TOLERANCE {
                interiors_disjoint = false;
                break 'outer;
            }
        }
    }
    CoverageReport {
        uncovered_total,
        gaps,
        is_equipartition: n > 0
            && uncovered_total <= TOLERANCE
            && lengths_equal
            && interiors_disjoint,
        per_agent_lengths: agents.iter().map(|a| a.arc.length()).collect(),
    }
}
