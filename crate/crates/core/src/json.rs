//! JSON reading and writing for instances, schedules and grids.
//!
//! Numbers may be written as `"p/q"` strings, integer or decimal literals, or
//! decimal strings; all are converted exactly. Output always uses `"p/q"`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::geometry::{Rect, Vec2};
use crate::instance::{DirectionSet, Instance, InvariantViolation, Mode, Move, Robot, Schedule, Step};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invariant violated: {0}")]
    Invariant(#[from] InvariantViolation),
}

fn malformed(msg: impl Into<String>) -> ParseError {
    ParseError::Malformed(msg.into())
}

fn number(v: &Value, what: &str) -> Result<Rational, ParseError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(malformed(format!("{what}: expected a number"))),
    };
    text.parse::<Rational>().map_err(|e| malformed(format!("{what}: {e} in {text:?}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| malformed(format!("{ctx}: missing field {key:?}")))
}

fn object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| malformed(format!("{ctx}: expected an object")))
}

fn array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| malformed(format!("{ctx}: expected an array")))
}

fn vec2(v: &Value, ctx: &str) -> Result<Vec2, ParseError> {
    let a = array(v, ctx)?;
    if a.len() != 2 {
        return Err(malformed(format!("{ctx}: expected [x, y]")));
    }
    Ok(Vec2::new(number(&a[0], ctx)?, number(&a[1], ctx)?))
}

fn rect(v: &Value, ctx: &str) -> Result<Rect, ParseError> {
    let o = object(v, ctx)?;
    let get = |k: &str| number(field(o, k, ctx)?, &format!("{ctx}.{k}"));
    let (cx, cy, w, h) = (get("cx")?, get("cy")?, get("w")?, get("h")?);
    Rect::new(cx, cy, w, h).map_err(|e| malformed(format!("{ctx}: {e}")))
}

fn optional_usize(v: Option<&Value>, ctx: &str) -> Result<Option<usize>, ParseError> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(x) => {
            let r = number(x, ctx)?;
            match r.to_i64() {
                Some(n) if n >= 0 && r.is_integer() => Ok(Some(n as usize)),
                _ => Err(malformed(format!("{ctx}: expected a nonnegative integer"))),
            }
        }
    }
}

fn document(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| malformed(format!("syntax: {e}")))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let doc = document(text)?;
    let o = object(&doc, "instance")?;
    let mode = match o.get("mode") {
        None => Mode::Serial,
        Some(Value::String(s)) if s == "serial" => Mode::Serial,
        Some(Value::String(s)) if s == "parallel" => Mode::Parallel,
        Some(other) => return Err(malformed(format!("mode: unknown value {other}"))),
    };
    let dirs = match o.get("dirs") {
        None | Some(Value::Null) => DirectionSet::axis(),
        Some(v) => {
            let list = array(v, "dirs")?
                .iter()
                .enumerate()
                .map(|(i, d)| vec2(d, &format!("dirs[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            DirectionSet::new(list)?
        }
    };
    let bbox = match o.get("box") {
        None | Some(Value::Null) => None,
        Some(v) => Some(rect(v, "box")?),
    };
    let budget = optional_usize(o.get("budget"), "budget")?;
    let robots = array(field(o, "robots", "instance")?, "robots")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let ctx = format!("robots[{i}]");
            let ro = object(r, &ctx)?;
            let start = rect(field(ro, "start", &ctx)?, &format!("{ctx}.start"))?;
            let goal = rect(field(ro, "goal", &ctx)?, &format!("{ctx}.goal"))?;
            Ok(Robot::new(start, goal))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(Instance::new(robots, dirs, bbox, budget, mode)?)
}

pub fn parse_schedule(text: &str) -> Result<Schedule, ParseError> {
    let doc = document(text)?;
    let o = object(&doc, "schedule")?;
    let steps = array(field(o, "steps", "schedule")?, "steps")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let ctx = format!("steps[{i}]");
            let moves = array(s, &ctx)?
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    let ctx = format!("{ctx}[{j}]");
                    let mo = object(m, &ctx)?;
                    let robot = optional_usize(Some(field(mo, "robot", &ctx)?), &format!("{ctx}.robot"))?
                        .expect("present");
                    let dir = vec2(field(mo, "dir", &ctx)?, &format!("{ctx}.dir"))?;
                    let amp = number(field(mo, "amp", &ctx)?, &format!("{ctx}.amp"))?;
                    Ok(Move::new(robot, dir, amp))
                })
                .collect::<Result<Vec<_>, ParseError>>()?;
            Ok(Step { moves })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(Schedule { steps })
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn vec_value(v: &Vec2) -> Value {
    json!([rat(&v.x), rat(&v.y)])
}

fn rect_value(r: &Rect) -> Value {
    json!({"cx": rat(r.cx()), "cy": rat(r.cy()), "w": rat(r.w()), "h": rat(r.h())})
}

pub fn instance_to_value(inst: &Instance) -> Value {
    json!({
        "mode": inst.mode().to_string(),
        "dirs": inst.dirs().iter().map(vec_value).collect::<Vec<_>>(),
        "box": inst.bbox().map(rect_value),
        "budget": inst.budget(),
        "robots": inst.robots().iter().map(|r| json!({
            "start": rect_value(&r.start),
            "goal": rect_value(&r.goal),
        })).collect::<Vec<_>>(),
    })
}

pub fn schedule_to_value(s: &Schedule) -> Value {
    json!({
        "steps": s.steps.iter().map(|step| {
            step.moves.iter().map(|m| json!({
                "robot": m.robot,
                "dir": vec_value(&m.dir),
                "amp": rat(&m.amp),
            })).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_value(inst)).expect("json values serialize")
}

pub fn serialize_schedule(s: &Schedule) -> String {
    serde_json::to_string_pretty(&schedule_to_value(s)).expect("json values serialize")
}

/// `{"xs": [...], "ys": [...]}` with every coordinate as `"p/q"`.
pub fn grid_to_value(xs: &[Rational], ys: &[Rational]) -> Value {
    json!({
        "xs": xs.iter().map(rat).collect::<Vec<_>>(),
        "ys": ys.iter().map(rat).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    const ONE_ROBOT: &str = r#"{
        "mode": "serial",
        "dirs": [[1, 0], [0, 1]],
        "box": null,
        "budget": null,
        "robots": [{"start": {"cx": 0, "cy": 0, "w": 1, "h": 1},
                    "goal": {"cx": "5/1", "cy": "0", "w": "1", "h": 1.0}}]
    }"#;

    #[test]
    fn parses_minimal_document() {
        let inst = parse_instance(ONE_ROBOT).unwrap();
        assert_eq!(inst.k(), 1);
        assert_eq!(inst.robots()[0].goal, Rect::unit(5, 0));
        assert!(inst.dirs().is_axis_aligned());
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn single_direction_closed_under_negation() {
        let text = ONE_ROBOT.replace("[[1, 0], [0, 1]]", "[[1, 0]]");
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.dirs().as_slice(), &[Vec2::plus_x(), Vec2::minus_x()]);
    }

    #[test]
    fn overlapping_starts_rejected() {
        let text = r#"{"robots": [
            {"start": {"cx": 0, "cy": 0, "w": 1, "h": 1}, "goal": {"cx": 5, "cy": 0, "w": 1, "h": 1}},
            {"start": {"cx": "1/2", "cy": 0, "w": 1, "h": 1}, "goal": {"cx": 8, "cy": 0, "w": 1, "h": 1}}
        ]}"#;
        assert_eq!(
            parse_instance(text),
            Err(ParseError::Invariant(InvariantViolation::OverlappingStarts { a: 0, b: 1 }))
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_instance("{"), Err(ParseError::Malformed(_))));
        assert!(matches!(parse_instance(r#"{"robots": 3}"#), Err(ParseError::Malformed(_))));
        assert!(matches!(
            parse_instance(&ONE_ROBOT.replace("\"w\": 1,", "\"w\": 0,")),
            Err(ParseError::Malformed(_))
        ));
        assert!(matches!(parse_schedule(r#"{"steps": [[{"robot": -1, "dir": [1,0], "amp": 1}]]}"#), Err(ParseError::Malformed(_))));
    }

    #[test]
    fn decimal_literals_are_exact() {
        let text = ONE_ROBOT.replace("\"cx\": \"5/1\"", "\"cx\": 0.1");
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.robots()[0].goal.cx(), &q(1, 10));
    }

    #[test]
    fn schedule_round_trips() {
        assert!(serialize_schedule(&Schedule::empty()).contains("\"steps\": []"));
        let s = Schedule::serial([Move::new(0, Vec2::plus_x(), qi(5))]);
        let text = serialize_schedule(&s);
        assert!(text.contains("\"5/1\""));
        assert_eq!(parse_schedule(&text).unwrap(), s);
        let s = Schedule::serial([Move::new(0, Vec2::plus_x(), q(7, 3))]);
        assert_eq!(parse_schedule(&serialize_schedule(&s)).unwrap().steps[0].moves[0].amp, q(7, 3));
    }

    mod props {
        use super::*;
        use crate::instance::{DirectionSet, Mode, Move, Robot, Step};
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-1000i64..=1000, 1i64..=12).prop_map(|(n, d)| q(n, d))
        }

        fn instance() -> impl Strategy<Value = Instance> {
            (1usize..=3, any::<bool>(), any::<bool>(), proptest::option::of(0usize..20), rat(), rat())
                .prop_map(|(k, parallel, boxed, budget, dx, dy)| {
                    // Rows far apart so placements never overlap.
                    let robots = (0..k)
                        .map(|i| {
                            let y = qi(10 * i as i64);
                            let start = Rect::new(dx.clone(), y.clone(), q(3, 2), qi(1)).unwrap();
                            let goal = Rect::new(&dx + &qi(2), &y + &dy.clone().abs().min(qi(3)), q(3, 2), qi(1)).unwrap();
                            Robot::new(start, goal)
                        })
                        .collect();
                    let mode = if parallel { Mode::Parallel } else { Mode::Serial };
                    let bbox = boxed.then(|| Rect::new(dx.clone(), qi(15), qi(40), qi(60)).unwrap());
                    Instance::new(robots, DirectionSet::axis(), bbox, budget, mode).unwrap()
                })
        }

        fn schedule() -> impl Strategy<Value = Schedule> {
            proptest::collection::vec(
                proptest::collection::vec((0usize..4, 0usize..4, rat()), 1..3),
                0..6,
            )
            .prop_map(|steps| Schedule {
                steps: steps
                    .into_iter()
                    .map(|moves| Step {
                        moves: moves
                            .into_iter()
                            .map(|(r, d, a)| Move::new(r, DirectionSet::axis().as_slice()[d].clone(), a))
                            .collect(),
                    })
                    .collect(),
            })
        }

        proptest! {
            #[test]
            fn instances_round_trip(inst in instance()) {
                prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
            }

            #[test]
            fn schedules_round_trip(s in schedule()) {
                prop_assert_eq!(parse_schedule(&serialize_schedule(&s)).unwrap(), s);
            }
        }
    }
}
