//! Arithmetic on the unit circle S¹.
//!
//! Points are angles in `[0, 2π)`. "Clockwise" is the positive direction:
//! rotating clockwise adds to the angle modulo 2π. Distances are shorter-arc
//! lengths in `[0, π]`. Arcs are directed: they start at `lower` and run
//! clockwise for `length` radians, so an arc longer than π (up to the full
//! circle) is representable without ambiguity.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

/// Absolute tolerance in radians for angle equality, border-touch tests,
/// gap closing, and equipartition verdicts.
pub const TOLERANCE: f64 = 1e-9;

/// A point on the unit circle, stored in radians normalized to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Wraps an arbitrary finite value into the canonical `[0, 2π)` range.
    pub fn new(radians: f64) -> Angle {
        assert!(radians.is_finite(), "angle must be finite, got {radians}");
        let mut r = radians.rem_euclid(TAU);
        // rem_euclid of a tiny negative can round up to exactly 2π.
        if r >= TAU {
            r = 0.0;
        }
        Angle(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Length of the shorter arc between two points, in `[0, π]`. Symmetric.
    pub fn distance(self, other: Angle) -> f64 {
        let diff = (other.0 - self.0).abs();
        diff.min(TAU - diff)
    }

    /// Midpoint of two points along the shorter arc between them.
    ///
    /// For antipodal points both arcs are shortest; the averaging branch is
    /// taken so the result is deterministic.
    pub fn midpoint(self, other: Angle) -> Angle {
        if (other.0 - self.0).abs() <= PI {
            Angle::new(0.5 * (self.0 + other.0))
        } else {
            Angle::new(PI + 0.5 * (self.0 + other.0))
        }
    }

    /// Clockwise rotation by `delta >= 0` radians.
    ///
    /// Panics on a negative `delta`; rotations are magnitudes by contract.
    pub fn rotate_cw(self, delta: f64) -> Angle {
        assert!(delta >= 0.0, "rotation magnitude must be >= 0, got {delta}");
        Angle::new(self.0 + delta)
    }

    /// Anti-clockwise rotation by `delta >= 0` radians. Inverse of
    /// [`Angle::rotate_cw`] for the same magnitude.
    pub fn rotate_ccw(self, delta: f64) -> Angle {
        assert!(delta >= 0.0, "rotation magnitude must be >= 0, got {delta}");
        Angle::new(self.0 - delta)
    }

    /// True when the shorter arc from `self` to `other` is traced clockwise.
    ///
    /// At a separation of exactly π both directions tie; the tie resolves
    /// clockwise-true.
    pub fn clockwise_precedes(self, other: Angle) -> bool {
        (other.0 - self.0).rem_euclid(TAU) <= PI
    }

    /// Equality within [`TOLERANCE`], measured around the circle.
    pub fn approx_eq(self, other: Angle) -> bool {
        self.distance(other) <= TOLERANCE
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.0)
    }
}

/// A directed circular arc: starts at `lower`, runs clockwise for `length`
/// radians, ends at `upper`.
///
/// The length is stored explicitly because endpoints alone cannot tell an arc
/// from its complement once lengths exceed π (an agent aware only of itself
/// owns the full circle, and one aware of two agents owns exactly half).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    lower: Angle,
    length: f64,
}

impl Arc {
    /// Arc symmetric about `centroid`, endpoints at `centroid ∓ length/2`.
    pub fn from_centroid(centroid: Angle, length: f64) -> Arc {
        assert!(
            (0.0..=TAU).contains(&length),
            "arc length must lie in [0, 2π], got {length}"
        );
        Arc {
            lower: centroid.rotate_ccw(length / 2.0),
            length,
        }
    }

    /// Arc starting at `lower` and running clockwise for `length`.
    pub fn from_lower(lower: Angle, length: f64) -> Arc {
        assert!(
            (0.0..=TAU).contains(&length),
            "arc length must lie in [0, 2π], got {length}"
        );
        Arc { lower, length }
    }

    /// Arc ending at `upper` after running clockwise for `length`.
    pub fn from_upper(upper: Angle, length: f64) -> Arc {
        assert!(
            (0.0..=TAU).contains(&length),
            "arc length must lie in [0, 2π], got {length}"
        );
        Arc {
            lower: upper.rotate_ccw(length),
            length,
        }
    }

    pub fn lower(&self) -> Angle {
        self.lower
    }

    /// End of the arc: `lower` rotated clockwise by `length`.
    pub fn upper(&self) -> Angle {
        self.lower.rotate_cw(self.length)
    }

    /// Midpoint of the arc along its own interior.
    pub fn centroid(&self) -> Angle {
        self.lower.rotate_cw(self.length / 2.0)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_full_circle(&self) -> bool {
        self.length >= TAU - TOLERANCE
    }

    /// Membership test, inclusive of both endpoints within [`TOLERANCE`].
    pub fn contains(&self, point: Angle) -> bool {
        if self.is_full_circle() {
            return true;
        }
        (point.radians() - self.lower.radians()).rem_euclid(TAU) <= self.length + TOLERANCE
    }

    /// True when the two arcs share an endpoint: either upper of one meets
    /// lower of the other, within [`TOLERANCE`].
    pub fn touches(&self, other: &Arc) -> bool {
        self.upper().approx_eq(other.lower()) || self.lower().approx_eq(other.upper())
    }

    /// Measure of the intersection of two arcs, in radians.
    pub fn overlap_measure(&self, other: &Arc) -> f64 {
        if self.is_full_circle() {
            return other.length;
        }
        if other.is_full_circle() {
            return self.length;
        }
        let mut total = 0.0;
        for &(s1, e1) in self.segments().iter() {
            for &(s2, e2) in other.segments().iter() {
                total += (e1.min(e2) - s1.max(s2)).max(0.0);
            }
        }
        total
    }

    /// Linear pieces of the arc after cutting the circle at angle 0.
    fn segments(&self) -> Vec<(f64, f64)> {
        let s = self.lower.radians();
        let e = s + self.length;
        if e <= TAU {
            vec![(s, e)]
        } else {
            vec![(s, TAU), (0.0, e - TAU)]
        }
    }
}

/// Measure and maximal connected components of S¹ minus the union of `arcs`.
///
/// Implemented as an endpoint sweep: the circle is cut at 0, wrapping arcs
/// are split, pieces are sorted and merged with [`TOLERANCE`] slack, and the
/// complement is read off. Gaps narrower than the tolerance are treated as
/// closed, so arcs whose borders merely touch count as covered.
pub fn uncovered_measure(arcs: &[Arc]) -> (f64, Vec<Arc>) {
    let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(arcs.len() + 1);
    for arc in arcs {
        if arc.is_full_circle() {
            return (0.0, Vec::new());
        }
        pieces.extend(arc.segments());
    }
    if pieces.is_empty() {
        return (TAU, vec![Arc::from_lower(Angle::ZERO, TAU)]);
    }
    pieces.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
    for (s, e) in pieces {
        match merged.last_mut() {
            Some(last) if s <= last.1 + TOLERANCE => last.1 = last.1.max(e),
            _ => merged.push((s, e)),
        }
    }

    let mut gaps = Vec::new();
    let mut total = 0.0;
    for window in merged.windows(2) {
        let (start, width) = (window[0].1, window[1].0 - window[0].1);
        if width > TOLERANCE {
            gaps.push(Arc::from_lower(Angle::new(start), width));
            total += width;
        }
    }
    // Wrap gap across the cut at 0.
    let first = merged.first().expect("non-empty");
    let last = merged.last().expect("non-empty");
    let wrap_width = (TAU - last.1) + first.0;
    if wrap_width > TOLERANCE {
        gaps.push(Arc::from_lower(Angle::new(last.1), wrap_width.min(TAU)));
        total += wrap_width;
    }
    (total, gaps)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(Angle::new(TAU).radians(), 0.0);
        assert_eq!(Angle::new(-1e-18).radians(), 0.0);
        let a = Angle::new(-3.0 * PI);
        assert_angle(a, PI);
        assert!(a.radians() >= 0.0 && a.radians() < TAU);
    }

    #[test]
    fn distance_antipodal_points() {
        assert_eq!(Angle::new(0.0).distance(Angle::new(PI)), PI);
    }

    #[test]
    fn distance_wraparound_shorter_arc() {
        let d = Angle::new(0.1).distance(Angle::new(TAU - 0.1));
        assert!((d - 0.2).abs() <= 1e-12);
    }

    #[test]
    fn distance_direct_evaluation() {
        let d = Angle::new(pi_frac(2, 3)).distance(Angle::new(pi_frac(13, 12)));
        assert!((d - pi_frac(5, 12)).abs() <= 1e-12);
    }

    #[test]
    fn midpoint_same_side_average() {
        assert_angle(Angle::ZERO.midpoint(Angle::new(PI / 2.0)), PI / 4.0);
    }

    #[test]
    fn midpoint_wraparound_branch() {
        assert_angle(
            Angle::new(pi_frac(1, 4)).midpoint(Angle::new(pi_frac(7, 4))),
            0.0,
        );
    }

    #[test]
    fn midpoint_identity() {
        let theta = Angle::new(1.234);
        assert_angle(theta.midpoint(theta), 1.234);
    }

    #[test]
    fn rotations_wrap() {
        assert_angle(Angle::new(pi_frac(3, 2)).rotate_cw(PI), PI / 2.0);
        assert_angle(Angle::ZERO.rotate_ccw(PI / 4.0), pi_frac(7, 4));
    }

    #[test]
    fn rotation_matches_hand_checked_interaction_step() {
        // θ_1 update at the first step of the second pairwise schedule, N = 5.
        let moved = Angle::new(pi_frac(107, 60)).rotate_cw(pi_frac(2, 5));
        assert_angle(moved, pi_frac(11, 60));
    }

    #[test]
    #[should_panic(expected = "rotation magnitude")]
    fn negative_rotation_rejected() {
        let _ = Angle::ZERO.rotate_cw(-0.1);
    }

    #[test]
    fn rotations_invert() {
        let a = Angle::new(2.4);
        assert_angle(a.rotate_cw(1.9).rotate_ccw(1.9), 2.4);
    }

    #[test]
    fn clockwise_precedes_basic() {
        assert!(Angle::ZERO.clockwise_precedes(Angle::new(PI / 2.0)));
        assert!(!Angle::new(PI / 2.0).clockwise_precedes(Angle::ZERO));
    }

    #[test]
    fn clockwise_precedes_wraparound() {
        assert!(Angle::new(pi_frac(7, 4)).clockwise_precedes(Angle::new(pi_frac(1, 4))));
    }

    #[test]
    fn clockwise_precedes_tie_at_pi() {
        assert!(Angle::ZERO.clockwise_precedes(Angle::new(PI)));
        assert!(Angle::new(PI).clockwise_precedes(Angle::ZERO));
    }

    #[test]
    fn arc_from_centroid_symmetric_about_zero() {
        let arc = Arc::from_centroid(Angle::ZERO, PI);
        assert_angle(arc.lower(), pi_frac(3, 2));
        assert_angle(arc.upper(), PI / 2.0);
        assert_angle(arc.centroid(), 0.0);
    }

    #[test]
    fn arc_from_centroid_agent_two_after_three_additions() {
        let arc = Arc::from_centroid(Angle::new(PI), pi_frac(2, 3));
        assert_angle(arc.lower(), pi_frac(2, 3));
        assert_angle(arc.upper(), pi_frac(4, 3));
    }

    #[test]
    fn arc_degenerate_at_centroid() {
        let c = Angle::new(1.0);
        let arc = Arc::from_centroid(c, 0.0);
        assert_angle(arc.lower(), 1.0);
        assert_angle(arc.upper(), 1.0);
        assert_eq!(arc.length(), 0.0);
    }

    #[test]
    #[should_panic(expected = "arc length")]
    fn arc_length_out_of_range_rejected() {
        let _ = Arc::from_centroid(Angle::ZERO, TAU + 0.1);
    }

    #[test]
    fn full_circle_arc_covers_everything() {
        let (total, gaps) = uncovered_measure(&[Arc::from_centroid(Angle::new(1.0), TAU)]);
        assert_eq!(total, 0.0);
        assert!(gaps.is_empty());
    }

    #[test]
    fn no_arcs_leave_whole_circle_uncovered() {
        let (total, gaps) = uncovered_measure(&[]);
        assert_eq!(total, TAU);
        assert_eq!(gaps.len(), 1);
        assert_eq!(gaps[0].length(), TAU);
    }

    #[test]
    fn uncovered_measure_of_five_agent_failure_state() {
        // Arc layout of the second schedule's halt state for N = 5: the single
        // gap measures π/20 (9 degrees).
        let arcs = [
            Arc::from_centroid(Angle::new(pi_frac(11, 60)), pi_frac(2, 5)),
            Arc::from_centroid(Angle::new(pi_frac(35, 60)), pi_frac(2, 5)),
            Arc::from_centroid(Angle::new(pi_frac(65, 60)), pi_frac(1, 2)),
            Arc::from_centroid(Angle::new(pi_frac(83, 60)), pi_frac(2, 5)),
            Arc::from_centroid(Angle::new(pi_frac(107, 60)), pi_frac(2, 5)),
        ];
        let (total, gaps) = uncovered_measure(&arcs);
        assert!((total - PI / 20.0).abs() <= 1e-12, "total = {total}");
        assert_eq!(gaps.len(), 1);
        assert_angle(gaps[0].lower(), pi_frac(47, 60));
        assert_angle(gaps[0].upper(), pi_frac(50, 60));
    }

    #[test]
    fn touching_borders_count_as_covered() {
        let arcs = [
            Arc::from_centroid(Angle::ZERO, PI),
            Arc::from_centroid(Angle::new(PI), PI),
        ];
        let (total, gaps) = uncovered_measure(&arcs);
        assert_eq!(total, 0.0);
        assert!(gaps.is_empty());
    }

    #[test]
    fn wrap_gap_is_reported_once() {
        // One arc on each side of zero, leaving a gap that crosses the cut.
        let arcs = [
            Arc::from_lower(Angle::new(0.5), 1.0),
            Arc::from_lower(Angle::new(3.0), 2.0),
        ];
        let (total, gaps) = uncovered_measure(&arcs);
        assert_eq!(gaps.len(), 2);
        assert!((total - (TAU - 3.0)).abs() <= 1e-12);
        let wrap = gaps.iter().find(|g| g.lower().radians() == 5.0).unwrap();
        assert!((wrap.length() - (TAU - 5.0 + 0.5)).abs() <= 1e-12);
    }

    #[test]
    fn overlap_measure_of_touching_arcs_is_zero() {
        let a = Arc::from_lower(Angle::ZERO, 1.0);
        let b = Arc::from_lower(Angle::new(1.0), 1.0);
        assert_eq!(a.overlap_measure(&b), 0.0);
        assert!(a.touches(&b));
    }

    #[test]
    fn overlap_measure_handles_wrapping() {
        let a = Arc::from_centroid(Angle::ZERO, 1.0); // [-0.5, 0.5]
        let b = Arc::from_lower(Angle::new(TAU - 0.2), 0.4); // [-0.2, 0.2]
        assert!((a.overlap_measure(&b) - 0.4).abs() <= 1e-12);
    }
}
