//! Static SVG frames of a schedule.

use std::fmt::Write;

use crate::geometry::{convex_hull, translate, Rect, Vec2};
use crate::instance::{Instance, Schedule};

const PX: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct View {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl View {
    fn fit(rects: &[Rect]) -> View {
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for r in rects {
            lo_x = lo_x.min(r.left().to_f64());
            lo_y = lo_y.min(r.bottom().to_f64());
            hi_x = hi_x.max(r.right().to_f64());
            hi_y = hi_y.max(r.top().to_f64());
        }
        View { min_x: lo_x - 1.0, max_y: hi_y + 1.0, width: hi_x - lo_x + 2.0, height: hi_y - lo_y + 2.0 }
    }

    fn pt(&self, p: &Vec2) -> (f64, f64) {
        ((p.x.to_f64() - self.min_x) * PX, (self.max_y - p.y.to_f64()) * PX)
    }

    fn rect(&self, out: &mut String, r: &Rect, style: &str) {
        let (x, y) = self.pt(&Vec2::new(r.left(), r.top()));
        let _ = writeln!(
            out,
            r#"  <rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" {style}/>"#,
            r.w().to_f64() * PX,
            r.h().to_f64() * PX
        );
    }

    fn polygon(&self, out: &mut String, pts: &[Vec2], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = self.pt(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"  <polygon points="{}" {style}/>"#, coords.join(" "));
    }

    fn open(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}">"#,
            self.width * PX,
            self.height * PX
        );
        let _ = writeln!(s, "  <title>{title}</title>");
        s
    }
}

fn frame(view: &View, inst: &Instance, title: &str, rects: &[Rect], ghosts: &[(usize, Vec<Vec2>)]) -> String {
    let mut s = view.open(title);
    if let Some(b) = inst.bbox() {
        view.rect(&mut s, b, r#"fill="none" stroke="black" stroke-width="2""#);
    }
    for (i, g) in inst.goals().iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        view.rect(&mut s, g, &format!(r#"fill="none" stroke="{c}" stroke-dasharray="4 3""#));
    }
    for (i, hull) in ghosts {
        let c = COLORS[i % COLORS.len()];
        view.polygon(&mut s, hull, &format!(r#"fill="{c}" fill-opacity="0.2" stroke="{c}" stroke-opacity="0.5""#));
    }
    for (i, r) in rects.iter().enumerate() {
        let c = COLORS[i % COLORS.len()];
        view.rect(&mut s, r, &format!(r#"fill="{c}" fill-opacity="0.7" stroke="black""#));
        let (x, y) = view.pt(&r.center());
        let _ = writeln!(s, r#"  <text x="{x:.2}" y="{y:.2}" font-size="12" text-anchor="middle">R{}</text>"#, i + 1);
    }
    s.push_str("</svg>\n");
    s
}

/// One frame per step (positions before the step plus the swept regions of
/// its moves) and a final frame. Returns `(file name, contents)` pairs.
pub fn render(inst: &Instance, s: &Schedule) -> Vec<(String, String)> {
    let mut positions = inst.starts();
    let mut all: Vec<Rect> = positions.iter().chain(inst.goals().iter()).cloned().collect();
    all.extend(inst.bbox().cloned());
    let mut frames_at = Vec::with_capacity(s.len() + 1);
    for step in &s.steps {
        frames_at.push(positions.clone());
        for m in &step.moves {
            if let Some(r) = positions.get_mut(m.robot) {
                *r = translate(r, &m.displacement());
                all.push(r.clone());
            }
        }
    }
    let view = View::fit(&all);
    let mut out = Vec::new();
    for (n, (step, before)) in s.steps.iter().zip(&frames_at).enumerate() {
        let ghosts: Vec<(usize, Vec<Vec2>)> = step
            .moves
            .iter()
            .filter_map(|m| {
                let r = before.get(m.robot)?;
                let moved = translate(r, &m.displacement());
                let pts: Vec<Vec2> = r.corners().into_iter().chain(moved.corners()).collect();
                Some((m.robot, convex_hull(&pts)))
            })
            .collect();
        let title = format!("step {}", n + 1);
        out.push((format!("step_{:03}.svg", n + 1), frame(&view, inst, &title, before, &ghosts)));
    }
    out.push(("final.svg".to_string(), frame(&view, inst, "final", &positions, &[])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Move, Robot};

    #[test]
    fn one_frame_per_step_plus_final() {
        let inst = Instance::free_serial(vec![
            Robot::new(Rect::unit(0, 0), Rect::unit(4, 0)),
            Robot::new(Rect::unit(0, 3), Rect::unit(0, 3)),
        ])
        .unwrap();
        let s = Schedule::serial([Move::new(0, Vec2::plus_x(), crate::rational::qi(4))]);
        let frames = render(&inst, &s);
        let names: Vec<&str> = frames.iter().map(|f| f.0.as_str()).collect();
        assert_eq!(names, ["step_001.svg", "final.svg"]);
        assert!(frames[0].1.contains("<polygon"));
        assert_eq!(frames[1].1.matches("<rect").count(), 4);
        assert!(frames.iter().all(|f| f.1.starts_with("<?xml") && f.1.trim_end().ends_with("</svg>")));
    }
}
