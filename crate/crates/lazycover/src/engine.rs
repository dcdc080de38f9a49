//! Executable state machines for the scripted event sequences.
//!
//! The engine drives four flows over a [`WorldState`]:
//!
//! 1. sequential addition — agents enter one at a time, each splitting the
//!    previous agent's arc;
//! 2. the first pairwise schedule — the chain `N-1, N-2, …` walks
//!    anti-clockwise, each step moving the less-informed agent next to the
//!    previous mover;
//! 3. the second pairwise schedule — agent `N` first pulls agent 1 clockwise
//!    behind it, then the chain `1, 2, …` walks clockwise;
//! 4. the nearest-neighbor extension — the mover role hops to the nearest
//!    anti-clockwise neighbor instead of following a fixed index schedule.
//!
//! A step fires only when the designated pair's arcs overlap or their borders
//! touch; otherwise the run halts and reports the stuck pair. Every state
//! change appends one event record, so replaying a log reproduces the final
//! state bit for bit.

use crate::circle::{Angle, Arc, TOLERANCE};
use crate::event::{Event, EventRecord, Snapshot};
use crate::state::{coverage_report, overlap, AgentId, AgentState, CoverageReport, WorldState};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

/// Entry angle of the very first agent. Chosen so that the standard two-agent
/// opening (agent 2 splitting agent 1's full circle) lands the pair at 0 and π.
const FIRST_AGENT_ENTRY: f64 = std::f64::consts::FRAC_PI_2;

/// Interaction schedules selectable at run level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Alg4,
    Alg5,
    NaiveExtension,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Alg4 => "alg4",
            Rule::Alg5 => "alg5",
            Rule::NaiveExtension => "naive_extension",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule> {
        match s {
            "alg4" => Ok(Rule::Alg4),
            "alg5" => Ok(Rule::Alg5),
            "naive_extension" | "naive-extension" => Ok(Rule::NaiveExtension),
            other => Err(Error::OutOfRange(format!(
                "unknown rule `{other}` (expected alg4, alg5, or naive_extension)"
            ))),
        }
    }
}

/// How an interacting pair repositions after merging knowledge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlacementRule {
    /// Agent `j` moves to `θ_i ⊖ 2π/n`; agent `i` stays put.
    StepCcw,
    /// Agent `j` moves to `θ_i ⊕ 2π/n`; agent `i` stays put.
    StepCw,
    /// The union of the two prior arcs is split at the midpoint of the two
    /// centroids, each agent taking its lazy length toward its own side.
    Symmetric,
}

/// Why a scripted run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HaltReason {
    Equipartition,
    NoFeasibleEvent,
    /// The designated pair had zero overlap and non-touching borders at the
    /// reported step.
    PrematureHalt {
        step: u32,
        pair: (AgentId, AgentId),
    },
    MaxSteps,
}

/// A finished run: final world, why it stopped, and its coverage verdict.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub world: WorldState,
    pub halt: HaltReason,
    pub report: CoverageReport,
}

#[derive(Serialize)]
struct AgentView {
    id: AgentId,
    centroid: f64,
    knowledge: u32,
    arc_lower: f64,
    arc_length: f64,
    altruism: f64,
}

#[derive(Serialize)]
struct ReportView<'a> {
    n: u32,
    time: u32,
    halt: HaltReason,
    report: &'a CoverageReport,
    agents: Vec<AgentView>,
}

impl RunOutcome {
    /// Canonical JSON form of the final report. Identical runs, and replays
    /// of a run's event log, serialize to identical bytes.
    pub fn report_json(&self) -> String {
        let view = ReportView {
            n: self.world.total_agents(),
            time: self.world.time(),
            halt: self.halt,
            report: &self.report,
            agents: self
                .world
                .agents()
                .iter()
                .map(|a| AgentView {
                    id: a.id,
                    centroid: a.centroid.radians(),
                    knowledge: a.knowledge,
                    arc_lower: a.arc.lower().radians(),
                    arc_length: a.arc.length(),
                    altruism: a.altruism,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&view).expect("report serializes")
    }
}

/// Reconstructs a finished run from its event log: the world is replayed
/// from the empty domain and the halt reason is read off the final halt
/// marker.
pub fn outcome_from_log(records: &[EventRecord]) -> Result<RunOutcome> {
    let halt = records
        .iter()
        .rev()
        .find_map(|r| match r.event {
            Event::Halted { reason } => Some(reason),
            _ => None,
        })
        .ok_or_else(|| Error::MalformedLog("log carries no halt marker".into()))?;
    let world = replay(records)?;
    let report = coverage_report(&world);
    Ok(RunOutcome { world, halt, report })
}

fn record_event(world: &mut WorldState, pre: Snapshot, event: Event) {
    let record = EventRecord {
        time: world.time() + 1,
        event,
        pre,
        post: Snapshot::of(world),
    };
    world.push_record(record);
}

/// Seeds an empty domain with agent 1, which owns the whole circle.
pub fn add_first_agent(world: &mut WorldState) -> Result<AgentId> {
    if world.total_agents() != 0 {
        return Err(Error::InvalidAgentCount(
            world.total_agents(),
            "first agent can only enter an empty domain",
        ));
    }
    let pre = Snapshot::of(world);
    let altruism = world.default_altruism;
    let centroid = Angle::new(FIRST_AGENT_ENTRY);
    world.push_agent(AgentState {
        id: 1,
        centroid,
        knowledge: 1,
        arc: Arc::from_centroid(centroid, AgentState::lazy_length(1, altruism)),
        altruism,
    });
    record_event(
        world,
        pre,
        Event::AgentAdded {
            new_id: 1,
            contact: 0,
            altruism,
        },
    );
    Ok(1)
}

/// Adds a new agent through an interaction with `contact`.
///
/// Both learn one more agent, and the contact's previous centroid becomes the
/// shared border: the contact backs anti-clockwise off it, the newcomer takes
/// the clockwise side. Coverage is never lost by this step, since the two new
/// arcs jointly cover a superset of the contact's old arc.
pub fn add_agent(world: &mut WorldState, contact: AgentId) -> Result<AgentId> {
    let new_id = world.total_agents() + 1;
    let altruism = world.default_altruism;
    let border = world.agent(contact)?.centroid;
    let pre = Snapshot::of(world);

    let contact_agent = world.agent_mut(contact)?;
    contact_agent.knowledge += 1;
    let n = contact_agent.knowledge;
    contact_agent.arc = Arc::from_upper(
        border,
        AgentState::lazy_length(n, contact_agent.altruism),
    );
    contact_agent.centroid = contact_agent.arc.centroid();

    let arc = Arc::from_lower(border, AgentState::lazy_length(n, altruism));
    world.push_agent(AgentState {
        id: new_id,
        centroid: arc.centroid(),
        knowledge: n,
        arc,
        altruism,
    });
    record_event(
        world,
        pre,
        Event::AgentAdded {
            new_id,
            contact,
            altruism,
        },
    );
    Ok(new_id)
}

/// A pairwise interaction: knowledge merges to the larger count, arcs resize
/// to the lazy length, and positions follow the placement rule.
pub fn general_interact(
    world: &mut WorldState,
    i: AgentId,
    j: AgentId,
    rule: PlacementRule,
) -> Result<()> {
    if i == j {
        return Err(Error::SameAgent(i, j));
    }
    world.agent(i)?;
    world.agent(j)?;
    let pre = Snapshot::of(world);
    let n = world.agent(i)?.knowledge.max(world.agent(j)?.knowledge);
    let step = TAU / n as f64;

    match rule {
        PlacementRule::StepCcw | PlacementRule::StepCw => {
            let anchor = world.agent(i)?.centroid;
            let mover = world.agent_mut(j)?;
            mover.knowledge = n;
            mover.centroid = match rule {
                PlacementRule::StepCcw => anchor.rotate_ccw(step),
                _ => anchor.rotate_cw(step),
            };
            mover.resize_lazy();
            let anchor_agent = world.agent_mut(i)?;
            anchor_agent.knowledge = n;
            anchor_agent.resize_lazy();
        }
        PlacementRule::Symmetric => {
            let (ci, cj) = (world.agent(i)?.centroid, world.agent(j)?.centroid);
            if ci.distance(cj) <= TOLERANCE {
                return Err(Error::DegenerateConfiguration(format!(
                    "agents {i} and {j} share a centroid; the symmetric split is undefined"
                )));
            }
            let border = ci.midpoint(cj);
            // The agent on the anti-clockwise side keeps the anti-clockwise
            // half of the split.
            let (ccw, cw) = if ci.clockwise_precedes(cj) { (i, j) } else { (j, i) };
            let ccw_agent = world.agent_mut(ccw)?;
            ccw_agent.knowledge = n;
            ccw_agent.arc = Arc::from_upper(
                border,
                AgentState::lazy_length(n, ccw_agent.altruism),
            );
            ccw_agent.centroid = ccw_agent.arc.centroid();
            let cw_agent = world.agent_mut(cw)?;
            cw_agent.knowledge = n;
            cw_agent.arc = Arc::from_lower(
                border,
                AgentState::lazy_length(n, cw_agent.altruism),
            );
            cw_agent.centroid = cw_agent.arc.centroid();
        }
    }
    record_event(world, pre, Event::PairInteraction { i, j, rule });
    Ok(())
}

/// Sequential addition: agent `t` enters at time `t` and interacts only with
/// agent `t − 1`, for `t = 3..N`, starting from the pinned two-agent opening
/// at 0 and π.
pub fn run_sequential_addition(n: u32, epsilon: f64) -> Result<WorldState> {
    if n <= 2 {
        return Err(Error::InvalidAgentCount(
            n,
            "sequential addition needs more than two agents",
        ));
    }
    let mut world = WorldState::with_altruism(epsilon);
    add_first_agent(&mut world)?;
    for t in 2..=n {
        add_agent(&mut world, t - 1)?;
    }
    Ok(world)
}

/// True when the designated pair can interact: positive overlap or borders
/// touching at one end.
fn feasible(a: &AgentState, b: &AgentState) -> bool {
    overlap(a, b) > 0.0 || a.arc.touches(&b.arc)
}

fn finish(mut world: WorldState, halt: HaltReason) -> RunOutcome {
    let pre = Snapshot::of(&world);
    record_event(&mut world, pre, Event::Halted { reason: halt });
    let report = coverage_report(&world);
    RunOutcome { world, halt, report }
}

/// First pairwise schedule. At instant `k` agent `N−k` interacts with agent
/// `N−k−1`, which learns of all `N` agents and moves to `θ_{N−k} ⊖ 2π/N`.
///
/// On a premature halt the reported step counts the interactions completed,
/// matching the index used by the closed-form halt predicate.
pub fn run_pairwise_1(mut world: WorldState) -> Result<RunOutcome> {
    let n = world.total_agents();
    if n < 3 {
        return Err(Error::InvalidAgentCount(n, "the schedule needs N >= 3"));
    }
    for k in 1..=n - 2 {
        let (a, b) = (n - k, n - k - 1);
        if !feasible(world.agent(a)?, world.agent(b)?) {
            return Ok(finish(
                world,
                HaltReason::PrematureHalt {
                    step: k - 1,
                    pair: (b, a),
                },
            ));
        }
        general_interact(&mut world, a, b, PlacementRule::StepCcw)?;
    }
    let halt = if coverage_report(&world).is_equipartition {
        HaltReason::Equipartition
    } else {
        HaltReason::NoFeasibleEvent
    };
    Ok(finish(world, halt))
}

/// Second pairwise schedule. Agent `N` first sends agent 1 to
/// `θ_N ⊕ 2π/N`, provided their arcs overlap; then for `k = 2..N−2` agent
/// `k−1` sends agent `k` clockwise under the overlap-or-touching guard.
///
/// On a premature halt the reported step is the index of the event that
/// could not fire, matching the closed-form halt predicate.
pub fn run_pairwise_2(mut world: WorldState) -> Result<RunOutcome> {
    let n = world.total_agents();
    if n < 3 {
        return Err(Error::InvalidAgentCount(n, "the schedule needs N >= 3"));
    }
    // The opening event requires strictly positive overlap.
    if overlap(world.agent(n)?, world.agent(1)?) <= 0.0 {
        return Ok(finish(
            world,
            HaltReason::PrematureHalt {
                step: 1,
                pair: (1, n),
            },
        ));
    }
    general_interact(&mut world, n, 1, PlacementRule::StepCw)?;
    for k in 2..=n.saturating_sub(2) {
        let (a, b) = (k - 1, k);
        if !feasible(world.agent(a)?, world.agent(b)?) {
            return Ok(finish(
                world,
                HaltReason::PrematureHalt {
                    step: k,
                    pair: (a, b),
                },
            ));
        }
        general_interact(&mut world, a, b, PlacementRule::StepCw)?;
    }
    let halt = if coverage_report(&world).is_equipartition {
        HaltReason::Equipartition
    } else {
        HaltReason::NoFeasibleEvent
    };
    Ok(finish(world, halt))
}

/// Nearest anti-clockwise neighbor of `p` by centroid distance, optionally
/// restricted to agents `p` can interact with. Agents whose centroid
/// coincides with `p`'s within tolerance are skipped: a coincident pair has
/// no defined orientation. Ties break toward the smaller id.
fn nearest_ccw_neighbor(world: &WorldState, p: AgentId, must_qualify: bool) -> Option<AgentId> {
    let me = world.agent(p).ok()?;
    world
        .agents()
        .iter()
        .filter(|a| a.id != p)
        .filter(|a| me.centroid.distance(a.centroid) > TOLERANCE)
        .filter(|a| a.centroid.clockwise_precedes(me.centroid))
        .filter(|a| !must_qualify || feasible(me, a))
        .min_by(|a, b| {
            let da = me.centroid.distance(a.centroid);
            let db = me.centroid.distance(b.centroid);
            da.partial_cmp(&db)
                .expect("distances are finite")
                .then(a.id.cmp(&b.id))
        })
        .map(|a| a.id)
}

/// Naive extension of the first schedule: starting from agent `N`, the mover
/// role hops anti-clockwise. Each step moves the nearest anti-clockwise
/// neighbor the mover overlaps or touches to `θ_p ⊖ 2π/N`; the run halts
/// when no anti-clockwise agent overlaps the mover, on reaching an
/// equipartition, or after `k_max` steps.
pub fn run_naive_extension(mut world: WorldState, k_max: u32) -> Result<RunOutcome> {
    let n = world.total_agents();
    if n < 3 {
        return Err(Error::InvalidAgentCount(n, "the schedule needs N >= 3"));
    }
    if k_max < 1 {
        return Err(Error::OutOfRange("k_max must be at least 1".into()));
    }
    let mut p = n;
    for k in 1..=k_max {
        if coverage_report(&world).is_equipartition {
            return Ok(finish(world, HaltReason::Equipartition));
        }
        match nearest_ccw_neighbor(&world, p, true) {
            Some(pc) => {
                general_interact(&mut world, p, pc, PlacementRule::StepCcw)?;
                p = pc;
            }
            None => {
                // Nothing anti-clockwise of the mover overlaps it. Name the
                // nearest neighbor as the stuck pair; when even that does not
                // exist the configuration admits no event at all.
                let halt = match nearest_ccw_neighbor(&world, p, false) {
                    Some(nearest) => HaltReason::PrematureHalt {
                        step: k,
                        pair: (p.min(nearest), p.max(nearest)),
                    },
                    None => HaltReason::NoFeasibleEvent,
                };
                return Ok(finish(world, halt));
            }
        }
    }
    let halt = if coverage_report(&world).is_equipartition {
        HaltReason::Equipartition
    } else {
        HaltReason::MaxSteps
    };
    Ok(finish(world, halt))
}

/// Runs a full scenario: sequential addition followed by the selected
/// interaction schedule. `k_max` only applies to the naive extension and
/// defaults to `10·N`.
pub fn run_rule(n: u32, rule: Rule, epsilon: f64, k_max: Option<u32>) -> Result<RunOutcome> {
    if n == 0 {
        return Err(Error::InvalidAgentCount(0, "at least one agent is required"));
    }
    if n <= 2 {
        // Too few agents for any schedule; the addition state is the outcome.
        let mut world = WorldState::with_altruism(epsilon);
        add_first_agent(&mut world)?;
        if n == 2 {
            add_agent(&mut world, 1)?;
        }
        let halt = if coverage_report(&world).is_equipartition {
            HaltReason::Equipartition
        } else {
            HaltReason::NoFeasibleEvent
        };
        return Ok(finish(world, halt));
    }
    let world = run_sequential_addition(n, epsilon)?;
    match rule {
        Rule::Alg4 => run_pairwise_1(world),
        Rule::Alg5 => run_pairwise_2(world),
        Rule::NaiveExtension => {
            let first = run_pairwise_1(world)?;
            run_naive_extension(first.world, k_max.unwrap_or(10 * n))
        }
    }
}

/// Rebuilds a world by applying a logged event sequence from the empty
/// domain. Snapshots in the records are ignored; only event kinds drive the
/// reconstruction, so a replayed world is bit-identical to the original.
pub fn replay(records: &[EventRecord]) -> Result<WorldState> {
    let mut world = WorldState::new();
    for record in records {
        match &record.event {
            Event::AgentAdded {
                new_id,
                contact,
                altruism,
            } => {
                world.default_altruism = *altruism;
                let id = if *contact == 0 {
                    add_first_agent(&mut world)?
                } else {
                    add_agent(&mut world, *contact)?
                };
                if id != *new_id {
                    return Err(Error::MalformedLog(format!(
                        "expected agent {new_id} at time {}, produced {id}",
                        record.time
                    )));
                }
            }
            Event::PairInteraction { i, j, rule } => {
                general_interact(&mut world, *i, *j, *rule)?;
            }
            Event::Halted { reason } => {
                let pre = Snapshot::of(&world);
                record_event(&mut world, pre, Event::Halted { reason: *reason });
            }
        }
        if world.time() != record.time {
            return Err(Error::MalformedLog(format!(
                "event times must be contiguous; expected {}, got {}",
                world.time(),
                record.time
            )));
        }
    }
    Ok(world)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pi_frac(num: i64, den: i64) -> f64 {
        PI * num as f64 / den as f64
    }

    fn assert_angle(actual: Angle, expected: f64) {
        let expected = Angle::new(expected);
        assert!(
            actual.distance(expected) <= 1e-12,
            "expected {expected:?}, got {actual:?}"
        );
    }

    fn centroid(world: &WorldState, id: AgentId) -> Angle {
        world.agent(id).unwrap().centroid
    }

    #[test]
    fn two_agent_opening_is_pinned_antipodal() {
        let mut world = WorldState::new();
        add_first_agent(&mut world).unwrap();
        add_agent(&mut world, 1).unwrap();
        assert_angle(centroid(&world, 1), 0.0);
        assert_angle(centroid(&world, 2), PI);
        for agent in world.agents() {
            assert_eq!(agent.knowledge, 2);
            assert!((agent.arc.length() - PI).abs() <= 1e-12);
        }
        assert_eq!(world.time(), 2);
    }

    #[test]
    fn contact_with_sole_knowledge_slides_anticlockwise() {
        // A lone agent's full circle splits at its centroid: the contact backs
        // off anti-clockwise by a quarter turn, the newcomer takes the other
        // half.
        let mut world = WorldState::new();
        add_first_agent(&mut world).unwrap();
        let before = centroid(&world, 1);
        add_agent(&mut world, 1).unwrap();
        assert_angle(centroid(&world, 1), before.radians() - PI / 2.0);
        assert_angle(centroid(&world, 2), before.radians() + PI / 2.0);
    }

    #[test]
    fn third_agent_splits_second() {
        let mut world = WorldState::new();
        add_first_agent(&mut world).unwrap();
        add_agent(&mut world, 1).unwrap();
        add_agent(&mut world, 2).unwrap();
        assert_angle(centroid(&world, 2), pi_frac(2, 3));
        assert_angle(centroid(&world, 3), pi_frac(4, 3));
        assert_eq!(world.agent(1).unwrap().knowledge, 2);
        assert_eq!(world.agent(2).unwrap().knowledge, 3);
        assert_eq!(world.agent(3).unwrap().knowledge, 3);
    }

    #[test]
    fn addition_never_loses_coverage() {
        let mut world = WorldState::new();
        add_first_agent(&mut world).unwrap();
        for contact in 1..8 {
            add_agent(&mut world, contact).unwrap();
            let report = coverage_report(&world);
            assert!(
                report.uncovered_total <= TOLERANCE,
                "coverage lost after adding agent {}",
                contact + 1
            );
        }
    }

    #[test]
    fn unknown_contact_is_rejected() {
        let mut world = WorldState::new();
        add_first_agent(&mut world).unwrap();
        assert!(matches!(add_agent(&mut world, 9), Err(Error::UnknownAgent(9))));
    }

    #[test]
    fn sequential_addition_matches_closed_form() {
        let world = run_sequential_addition(3, 0.0).unwrap();
        assert_angle(centroid(&world, 1), 0.0);
        assert_angle(centroid(&world, 2), pi_frac(2, 3));
        assert_angle(centroid(&world, 3), pi_frac(4, 3));

        let world = run_sequential_addition(5, 0.0).unwrap();
        assert_angle(centroid(&world, 5), pi_frac(107, 60));

        // Knowledge pattern: n_1 = 2, n_k = k+1 up to N−1, n_N = N.
        let world = run_sequential_addition(7, 0.0).unwrap();
        let knowledge: Vec<u32> = world.agents().iter().map(|a| a.knowledge).collect();
        assert_eq!(knowledge, vec![2, 3, 4, 5, 6, 7, 7]);
    }

    #[test]
    fn sequential_addition_harmonic_drift_for_fifty_agents() {
        let world = run_sequential_addition(50, 0.0).unwrap();
        let sum: f64 = 1.0 + (3..=50).map(|m| 1.0 / m as f64).sum::<f64>();
        assert!((sum - 3.999).abs() < 0.005, "harmonic partial sum ≈ 3.999");
        assert_angle(centroid(&world, 50), PI * sum);
    }

    #[test]
    fn sequential_addition_rejects_tiny_counts() {
        assert!(run_sequential_addition(2, 0.0).is_err());
        assert!(run_sequential_addition(0, 0.0).is_err());
    }

    #[test]
    fn last_two_agents_share_only_a_boundary_after_addition() {
        // After sequential addition of five agents, agent 4's clockwise
        // neighbor is agent 5; their overlap is zero and the shared border is
        // an exact endpoint coincidence.
        let world = run_sequential_addition(5, 0.0).unwrap();
        let (c_u, _) = crate::state::neighbor_overlaps(&world, 4).unwrap();
        assert_eq!(c_u, 0.0);
        let four = world.agent(4).unwrap();
        let five = world.agent(5).unwrap();
        assert!(four.arc.upper().approx_eq(five.arc.lower()));
        assert!(four.arc.touches(&five.arc));
    }

    #[test]
    fn symmetric_rule_is_fixed_point_for_adjacent_equals() {
        let mut world = run_sequential_addition(4, 0.0).unwrap();
        // Agents 3 and 4 have equal knowledge and adjacent touching arcs.
        let before = (world.agent(3).unwrap().clone(), world.agent(4).unwrap().clone());
        general_interact(&mut world, 3, 4, PlacementRule::Symmetric).unwrap();
        let after = (world.agent(3).unwrap().clone(), world.agent(4).unwrap().clone());
        assert!(before.0.centroid.approx_eq(after.0.centroid));
        assert!(before.1.centroid.approx_eq(after.1.centroid));
    }

    #[test]
    fn step_interaction_moves_less_informed_agent() {
        // First step of the first schedule for N = 7.
        let mut world = run_sequential_addition(7, 0.0).unwrap();
        let anchor = centroid(&world, 6);
        general_interact(&mut world, 6, 5, PlacementRule::StepCcw).unwrap();
        assert_eq!(world.agent(5).unwrap().knowledge, 7);
        assert_angle(centroid(&world, 5), anchor.radians() - pi_frac(2, 7));
        assert_angle(centroid(&world, 6), anchor.radians());

        // First step of the second schedule for N = 5.
        let mut world = run_sequential_addition(5, 0.0).unwrap();
        general_interact(&mut world, 5, 1, PlacementRule::StepCw).unwrap();
        assert_angle(centroid(&world, 1), pi_frac(11, 60));
    }

    #[test]
    fn pairwise_1_equipartitions_small_swarms() {
        for n in 3..=6 {
            let outcome = run_pairwise_1(run_sequential_addition(n, 0.0).unwrap()).unwrap();
            assert_eq!(outcome.halt, HaltReason::Equipartition, "N = {n}");
            let target = TAU / n as f64;
            for len in &outcome.report.per_agent_lengths {
                assert!((len - target).abs() <= TOLERANCE);
            }
        }
    }

    #[test]
    fn pairwise_1_loses_coverage_at_seven() {
        let outcome = run_pairwise_1(run_sequential_addition(7, 0.0).unwrap()).unwrap();
        assert_eq!(
            outcome.halt,
            HaltReason::PrematureHalt { step: 4, pair: (1, 2) }
        );
        assert!((outcome.report.uncovered_total - pi_frac(3, 140)).abs() <= 1e-12);
        assert_eq!(outcome.report.gaps.len(), 1);
        assert_eq!(outcome.report.gaps[0].flanking, (1, 2));
        // All informed agents are lazily sized at 2π/7; agent 1 never learned.
        assert_eq!(outcome.world.agent(1).unwrap().knowledge, 2);
    }

    #[test]
    fn pairwise_2_equipartitions_up_to_four() {
        for n in 3..=4 {
            let outcome = run_pairwise_2(run_sequential_addition(n, 0.0).unwrap()).unwrap();
            assert_eq!(outcome.halt, HaltReason::Equipartition, "N = {n}");
        }
    }

    #[test]
    fn pairwise_2_loses_coverage_at_five() {
        let outcome = run_pairwise_2(run_sequential_addition(5, 0.0).unwrap()).unwrap();
        assert_eq!(
            outcome.halt,
            HaltReason::PrematureHalt { step: 3, pair: (2, 3) }
        );
        assert!((outcome.report.uncovered_total - PI / 20.0).abs() <= 1e-12);
        assert_eq!(outcome.report.gaps[0].flanking, (2, 3));
    }

    #[test]
    fn naive_extension_halts_immediately_on_equipartition() {
        let six = run_pairwise_1(run_sequential_addition(6, 0.0).unwrap()).unwrap();
        let events_before = six.world.time();
        let outcome = run_naive_extension(six.world, 60).unwrap();
        assert_eq!(outcome.halt, HaltReason::Equipartition);
        // Only the halt marker is appended; no agent moved.
        assert_eq!(outcome.world.time(), events_before + 1);
    }

    #[test]
    fn naive_extension_leaves_a_positive_residual_at_seven() {
        // Engine-oracle value: the walk relocates agent 1 next to agent 6 and
        // then tiles anti-clockwise without ever re-covering agent 1's old
        // half, leaving one gap of 2π/7.
        let seven = run_pairwise_1(run_sequential_addition(7, 0.0).unwrap()).unwrap();
        let outcome = run_naive_extension(seven.world, 70).unwrap();
        assert!(matches!(outcome.halt, HaltReason::PrematureHalt { .. }));
        assert!((outcome.report.uncovered_total - pi_frac(2, 7)).abs() <= 1e-12);
        assert!(!outcome.report.is_equipartition);
    }

    #[test]
    fn knowledge_is_monotone_and_saturates_on_equipartition() {
        let outcome = run_pairwise_1(run_sequential_addition(6, 0.0).unwrap()).unwrap();
        for agent in outcome.world.agents() {
            assert_eq!(agent.knowledge, 6);
        }
        for record in outcome.world.log() {
            for (pre, post) in record.pre.knowledge.iter().zip(&record.post.knowledge) {
                assert!(post >= pre, "knowledge never decreases");
            }
        }
    }

    #[test]
    fn replay_reproduces_final_state() {
        let outcome = run_rule(7, Rule::Alg4, 0.0, None).unwrap();
        let replayed = replay(outcome.world.log()).unwrap();
        assert_eq!(replayed.agents(), outcome.world.agents());
        assert_eq!(replayed.log(), outcome.world.log());
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run_rule(12, Rule::NaiveExtension, 0.0, None).unwrap();
        let b = run_rule(12, Rule::NaiveExtension, 0.0, None).unwrap();
        assert_eq!(a.world.agents(), b.world.agents());
        assert_eq!(a.world.log(), b.world.log());
        assert_eq!(a.halt, b.halt);
    }

    #[test]
    fn run_rule_handles_trivial_counts() {
        let one = run_rule(1, Rule::Alg4, 0.0, None).unwrap();
        assert_eq!(one.halt, HaltReason::Equipartition);
        let two = run_rule(2, Rule::Alg5, 0.0, None).unwrap();
        assert_eq!(two.halt, HaltReason::Equipartition);
    }
}
