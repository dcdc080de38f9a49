//! Closed-form oracles that predict simulator behavior independently.
//!
//! Centroid positions after sequential addition, the premature-termination
//! predicates for both pairwise schedules, and neighbor separations are all
//! rational multiples of π, so they are evaluated in exact rational
//! arithmetic. The margins involved can be as thin as a few hundredths of a
//! radian, and exactness removes any chance of misclassifying a halt.

use crate::circle::{Angle, TOLERANCE};
use crate::engine::{run_rule, HaltReason, PlacementRule, Rule};
use crate::event::{Event, EventRecord};
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Σ 1/m for m in `from..=to`; zero when the range is empty.
fn sum_recip(from: u32, to: u32) -> BigRational {
    (from..=to).fold(BigRational::zero(), |acc, m| acc + rat(1, m as i64))
}

/// The drift constant `1 + Σ_{m=3}^{p} 1/m`; the last agent after sequential
/// addition sits at this multiple of π. Unbounded in p, so the chain of
/// agents can wind around the circle more than once.
pub fn harmonic_opening(p: u32) -> BigRational {
    BigRational::one() + sum_recip(3, p)
}

/// Centroid of agent `q` after sequential addition of `n` agents, as an
/// unwrapped coefficient of π.
fn closed_form_coefficient(q: u32, n: u32) -> BigRational {
    debug_assert!(1 <= q && q <= n);
    if q == 1 {
        BigRational::zero()
    } else if q == n {
        harmonic_opening(n)
    } else {
        harmonic_opening(q) - rat(1, q as i64 + 1)
    }
}

/// Unwrapped centroid coefficients of π for agents `1..=n` after sequential
/// addition. Index `k` holds agent `k + 1`.
pub fn centroid_sums_exact(n: u32) -> Result<Vec<BigRational>> {
    if n <= 2 {
        return Err(Error::InvalidAgentCount(
            n,
            "the closed form needs more than two agents",
        ));
    }
    Ok((1..=n).map(|q| closed_form_coefficient(q, n)).collect())
}

/// Predicted centroids after sequential addition, normalized to `[0, 2π)`.
pub fn centroid_oracle(n: u32) -> Result<Vec<Angle>> {
    Ok(centroid_sums_exact(n)?
        .iter()
        .map(|c| Angle::new(to_radians(c)))
        .collect())
}

/// Exact centroid coefficients of π, normalized to `[0, 2)`.
pub fn centroid_oracle_exact(n: u32) -> Result<Vec<BigRational>> {
    Ok(centroid_sums_exact(n)?.iter().map(mod_two).collect())
}

fn mod_two(r: &BigRational) -> BigRational {
    let two = rat(2, 1);
    r - &two * (r / &two).floor()
}

/// Shorter-arc distance between two π-coefficients, in units of π (so the
/// result lies in [0, 1]).
fn circle_distance_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let t = mod_two(&(a - b).abs());
    let complement = rat(2, 1) - &t;
    t.min(complement)
}

fn to_radians(coefficient: &BigRational) -> f64 {
    coefficient.to_f64().expect("coefficients are small rationals") * PI
}

/// Halt predicate for the first pairwise schedule: true when the schedule,
/// run on `n` agents, is stuck after exactly `p` completed interactions.
///
/// Evaluated from the closed-form state: the last mover `N−p−1` sits at
/// `α ⊖ (2π/N)p` with `α` the anchor position of agent `N−1`, while agent
/// `N−p−2` still holds its sequential-addition position. The pair is stuck
/// when their centroid distance exceeds `π/N + π/(N−p−1)`.
///
/// `p = N−2` is accepted and always false: at that point the final pair
/// (agents 2 and 1) has already interacted and nothing remains to halt.
/// Refuses `n > 19`, where crossovers invalidate the closed-form state.
pub fn nsc_alg4(n: u32, p: u32) -> Result<bool> {
    if !(3..=19).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "the first-schedule halt predicate is valid for 3 <= N <= 19, got {n}"
        )));
    }
    if !(1..=n - 2).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "step index {p} outside [1, {}]",
            n - 2
        )));
    }
    if p == n - 2 {
        return Ok(false);
    }
    let anchor = closed_form_coefficient(n - 1, n);
    let moved = anchor - rat(2 * p as i64, n as i64);
    let stationary = closed_form_coefficient(n - p - 2, n);
    let distance = circle_distance_exact(&moved, &stationary);
    let threshold = rat(1, n as i64) + rat(1, (n - p - 1) as i64);
    Ok(distance > threshold)
}

/// Halt predicate for the second pairwise schedule: true when event `p`
/// (agent `p−1` sending agent `p` clockwise) cannot fire:
/// `2πp/N + 2π/(p+1) + Σ_{m=p+1}^{N} π/m < 2π + π/N`.
///
/// The derivation is valid for `3 <= N <= 5`; other counts are refused.
pub fn nsc_alg5(n: u32, p: u32) -> Result<bool> {
    if !(3..=5).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "the second-schedule halt predicate is valid for 3 <= N <= 5, got {n}"
        )));
    }
    if !(2..n).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "step index {p} outside [2, {}]",
            n - 1
        )));
    }
    let lhs = rat(2 * p as i64, n as i64) + rat(2, p as i64 + 1) + sum_recip(p + 1, n);
    let rhs = rat(2, 1) + rat(1, n as i64);
    Ok(lhs < rhs)
}

/// Separation `θ_{k+1} − θ_k` between neighboring agents at the end of
/// sequential addition, as an exact coefficient of π:
/// `(k+3)/((k+1)(k+2))` for `2 < k < N−1`, and `2/N` for `k = N−1`.
pub fn separation_exact(k: u32, n: u32) -> Result<BigRational> {
    if n < 4 || k <= 2 || k > n - 1 {
        return Err(Error::OutOfRange(format!(
            "separation index k = {k} outside (2, {}]",
            n.saturating_sub(1)
        )));
    }
    if k == n - 1 {
        Ok(rat(2, n as i64))
    } else {
        Ok(rat(k as i64 + 3, (k as i64 + 1) * (k as i64 + 2)))
    }
}

/// Separation in radians. See [`separation_exact`].
pub fn separation(k: u32, n: u32) -> Result<f64> {
    Ok(to_radians(&separation_exact(k, n)?))
}

/// A closed-form forecast of how a schedule ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub n: u32,
    pub rule: Rule,
    pub halts_prematurely: bool,
    pub halt_step: Option<u32>,
    pub failing_pair: Option<(u32, u32)>,
}

/// Predicts the halt step and failing pair for a schedule from the halt
/// predicates alone, without running the simulator. The smallest step at
/// which the predicate holds is the forecast halt; no such step forecasts an
/// equipartition.
pub fn predict(n: u32, rule: Rule) -> Result<Prediction> {
    let hit = match rule {
        Rule::Alg4 => (1..=n.saturating_sub(2))
            .find_map(|p| match nsc_alg4(n, p) {
                Ok(true) => Some(Ok((p, (n - p - 2, n - p - 1)))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?,
        Rule::Alg5 => (2..n)
            .find_map(|p| match nsc_alg5(n, p) {
                Ok(true) => Some(Ok((p, (p - 1, p)))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?,
        Rule::NaiveExtension => {
            return Err(Error::OutOfRange(
                "the nearest-neighbor extension has no closed-form prediction".into(),
            ))
        }
    };
    // Validate the range even when every predicate in it is false.
    match rule {
        Rule::Alg4 if !(3..=19).contains(&n) => {
            nsc_alg4(n, 1)?;
        }
        Rule::Alg5 if !(3..=5).contains(&n) => {
            nsc_alg5(n, 2)?;
        }
        _ => {}
    }
    Ok(Prediction {
        n,
        rule,
        halts_prematurely: hit.is_some(),
        halt_step: hit.map(|(p, _)| p),
        failing_pair: hit.map(|(_, pair)| pair),
    })
}

/// Scans a trace for the two crossover phenomena.
///
/// The C-crossover names the first mover whose post-interaction centroid
/// falls anti-clockwise of its predecessor's. The UL-crossover names the
/// first agent whose upper border falls strictly anti-clockwise of its
/// predecessor's lower border with zero overlap between them. Either index is
/// 0 when the trace never exhibits the phenomenon. Arcs are reconstructed
/// from the logged knowledge counts, so the scan assumes lazily sized agents.
pub fn detect_crossovers(records: &[EventRecord]) -> (u32, u32) {
    let mut c_index = 0u32;
    let mut ul_index = 0u32;
    for record in records {
        let mover = match record.event {
            Event::PairInteraction {
                j,
                rule: PlacementRule::StepCcw | PlacementRule::StepCw,
                ..
            } => j,
            _ => continue,
        };
        let centroids = &record.post.centroids;
        let knowledge = &record.post.knowledge;
        if c_index == 0 && mover >= 2 {
            let theta = Angle::new(centroids[mover as usize - 1]);
            let prev = Angle::new(centroids[mover as usize - 2]);
            if theta.clockwise_precedes(prev) {
                c_index = mover;
            }
        }
        if ul_index == 0 {
            for q in 2..=centroids.len() {
                let half_q = PI / knowledge[q - 1] as f64;
                let half_prev = PI / knowledge[q - 2] as f64;
                let upper_q = centroids[q - 1] + half_q;
                let lower_prev = centroids[q - 2] - half_prev;
                // Strictly anti-clockwise: the exact-π tie of a touching
                // chain does not count as having passed.
                let passed =
                    (lower_prev - upper_q).rem_euclid(std::f64::consts::TAU) < PI - TOLERANCE;
                let d = Angle::new(centroids[q - 1]).distance(Angle::new(centroids[q - 2]));
                let s = (half_q + half_prev - d).max(0.0).min(2.0 * half_q).min(2.0 * half_prev);
                if passed && s <= TOLERANCE {
                    ul_index = q as u32;
                    break;
                }
            }
        }
        if c_index != 0 && ul_index != 0 {
            break;
        }
    }
    (c_index, ul_index)
}

/// One row of a parametric sweep over the agent count.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub rule: Rule,
    pub halt: HaltReason,
    pub uncovered: f64,
    pub c_crossover: u32,
    pub ul_crossover: u32,
}

impl SweepRow {
    /// The stuck pair, when the run halted prematurely.
    pub fn failing_pair(&self) -> Option<(u32, u32)> {
        match self.halt {
            HaltReason::PrematureHalt { pair, .. } => Some(pair),
            _ => None,
        }
    }

    pub fn halt_step(&self) -> Option<u32> {
        match self.halt {
            HaltReason::PrematureHalt { step, .. } => Some(step),
            _ => None,
        }
    }
}

/// Runs a schedule for every `N` in `n_min..=n_max` and tabulates the halt,
/// the uncovered measure, and the crossover indices. Rows are ordered by `N`.
pub fn sweep(
    n_min: u32,
    n_max: u32,
    rule: Rule,
    epsilon: f64,
    k_max: Option<u32>,
) -> Result<Vec<SweepRow>> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::OutOfRange(format!(
            "sweep range [{n_min}, {n_max}] is empty or starts below 1"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let outcome = run_rule(n, rule, epsilon, k_max)?;
            let (c_crossover, ul_crossover) = detect_crossovers(outcome.world.log());
            Ok(SweepRow {
                n,
                rule,
                halt: outcome.halt,
                uncovered: outcome.report.uncovered_total,
                c_crossover,
                ul_crossover,
            })
        })
        .collect()
}

/// Sweeps the first pairwise schedule over `n_min..=n_max` within the range
/// the closed-form analysis covers, tabulating each failing pair.
pub fn failure_segment_sweep(n_min: u32, n_max: u32) -> Result<Vec<SweepRow>> {
    if !(3..=19).contains(&n_min) || !(3..=19).contains(&n_max) {
        return Err(Error::OutOfRange(
            "the failure-segment comparison covers N in [3, 19]".into(),
        ));
    }
    sweep(n_min, n_max, Rule::Alg4, 0.0, None)
}
