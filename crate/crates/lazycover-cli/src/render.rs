//! Static SVG rendering of a world state as an annular domain.
//!
//! Each agent's arc is drawn as an annular sector between the inner hole and
//! the unit circle; uncovered regions stay white. Output bytes are a pure
//! function of the world state, so renders diff cleanly.

use lazycover::WorldState;
use std::f64::consts::{PI, TAU};
use std::fmt::Write;

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

fn point(radius: f64, angle: f64) -> (f64, f64) {
    // Screen y grows downward; flip so increasing angles run counterclockwise.
    (radius * angle.cos(), -radius * angle.sin())
}

fn annular_sector(lower: f64, length: f64, r_inner: f64, r_outer: f64) -> String {
    if length >= TAU - 1e-9 {
        // Full ring: two concentric circles filled even-odd.
        return format!(
            "M {ro:.6} 0 A {ro:.6} {ro:.6} 0 1 0 -{ro:.6} 0 A {ro:.6} {ro:.6} 0 1 0 {ro:.6} 0 Z \
             M {ri:.6} 0 A {ri:.6} {ri:.6} 0 1 0 -{ri:.6} 0 A {ri:.6} {ri:.6} 0 1 0 {ri:.6} 0 Z",
            ro = r_outer,
            ri = r_inner
        );
    }
    let (a0, a1) = (lower, lower + length);
    let large = i32::from(length > PI);
    let (x0, y0) = point(r_outer, a0);
    let (x1, y1) = point(r_outer, a1);
    let (x2, y2) = point(r_inner, a1);
    let (x3, y3) = point(r_inner, a0);
    format!(
        "M {x0:.6} {y0:.6} A {ro:.6} {ro:.6} 0 {large} 0 {x1:.6} {y1:.6} \
         L {x2:.6} {y2:.6} A {ri:.6} {ri:.6} 0 {large} 1 {x3:.6} {y3:.6} Z",
        ro = r_outer,
        ri = r_inner
    )
}

/// Renders the world as a standalone SVG document.
pub fn render_svg(world: &WorldState, inner_radius: f64) -> String {
    let report = lazycover::state::coverage_report(world);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.32 -1.32 2.64 2.64" width="640" height="640">"#
    );
    let _ = writeln!(svg, r#"<rect x="-1.32" y="-1.32" width="2.64" height="2.64" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<circle r="1" fill="none" stroke="#999999" stroke-width="0.004"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<circle r="{inner_radius:.6}" fill="none" stroke="#999999" stroke-width="0.004"/>"##
    );
    for agent in world.agents() {
        let color = PALETTE[(agent.id as usize - 1) % PALETTE.len()];
        let d = annular_sector(
            agent.arc.lower().radians(),
            agent.arc.length(),
            inner_radius,
            1.0,
        );
        let _ = writeln!(
            svg,
            r##"<path d="{d}" fill="{color}" fill-opacity="0.82" fill-rule="evenodd" stroke="#222222" stroke-width="0.004"/>"##
        );
    }
    for agent in world.agents() {
        let c = agent.centroid.radians();
        let (x0, y0) = point(inner_radius, c);
        let (x1, y1) = point(1.03, c);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.6}" y1="{y0:.6}" x2="{x1:.6}" y2="{y1:.6}" stroke="#111111" stroke-width="0.006"/>"##
        );
        let (tx, ty) = point(1.17, c);
        let _ = writeln!(
            svg,
            r##"<text x="{tx:.6}" y="{ty:.6}" font-size="0.085" text-anchor="middle" dominant-baseline="middle" fill="#333333">{} (n={})</text>"##,
            agent.id, agent.knowledge
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="-1.28" y="-1.22" font-size="0.07" fill="#333333">t = {}, N = {}, uncovered = {:.6} rad</text>"##,
        world.time(),
        world.total_agents(),
        report.uncovered_total
    );
    svg.push_str("</svg>\n");
    svg
}
