//! Exact planar primitives: rectangles, translations, swept regions and the
//! serial/parallel collision predicates every other module treats as ground
//! truth.
//!
//! All overlap tests are on open interiors, so two rectangles that share an
//! edge or a corner do not collide.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("translation direction is the zero vector")]
    DegenerateDirection,
    #[error("direction ({0}) is not a unit axis vector")]
    UnsupportedDirection(String),
    #[error("amplitude {0} is not positive")]
    DegenerateAmplitude(String),
    #[error("rectangle dimensions must be positive (got {w} x {h})")]
    NonPositiveDimension { w: String, h: String },
    #[error("polygon needs at least three non-collinear vertices")]
    DegeneratePolygon,
}

/// A displacement (or point) with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

/// Points and displacements share a representation.
pub type Point = Vec2;

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(Rational::from(x), Rational::from(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Vec2 {
        Vec2::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, other: &Vec2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Vec2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }

    pub fn is_parallel_to(&self, other: &Vec2) -> bool {
        self.cross(other).is_zero()
    }

    pub fn is_axis_parallel(&self) -> bool {
        !self.is_zero() && (self.x.is_zero() || self.y.is_zero())
    }

    /// One of `(±1, 0)`, `(0, ±1)`.
    pub fn is_unit_axis(&self) -> bool {
        let one = Rational::one();
        (self.y.is_zero() && self.x.abs() == one) || (self.x.is_zero() && self.y.abs() == one)
    }

    pub fn plus_x() -> Vec2 {
        Vec2::from_ints(1, 0)
    }
    pub fn minus_x() -> Vec2 {
        Vec2::from_ints(-1, 0)
    }
    pub fn plus_y() -> Vec2 {
        Vec2::from_ints(0, 1)
    }
    pub fn minus_y() -> Vec2 {
        Vec2::from_ints(0, -1)
    }
}

impl std::ops::Add<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl std::ops::Sub<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl std::ops::Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.x, self.y)
    }
}

/// Axis-aligned rectangle given by its center and full width/height.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    cx: Rational,
    cy: Rational,
    w: Rational,
    h: Rational,
}

impl Rect {
    pub fn new(cx: Rational, cy: Rational, w: Rational, h: Rational) -> Result<Self, GeometryError> {
        if !w.is_positive() || !h.is_positive() {
            return Err(GeometryError::NonPositiveDimension {
                w: w.to_string(),
                h: h.to_string(),
            });
        }
        Ok(Rect { cx, cy, w, h })
    }

    /// Integer-valued convenience constructor; panics on nonpositive sizes.
    pub fn from_ints(cx: i64, cy: i64, w: i64, h: i64) -> Self {
        Rect::new(cx.into(), cy.into(), w.into(), h.into()).expect("positive dimensions")
    }

    /// The unit square centered at `(cx, cy)`.
    pub fn unit(cx: i64, cy: i64) -> Self {
        Rect::from_ints(cx, cy, 1, 1)
    }

    pub fn cx(&self) -> &Rational {
        &self.cx
    }
    pub fn cy(&self) -> &Rational {
        &self.cy
    }
    pub fn w(&self) -> &Rational {
        &self.w
    }
    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn center(&self) -> Point {
        Vec2::new(self.cx.clone(), self.cy.clone())
    }

    pub fn half_w(&self) -> Rational {
        &self.w / &Rational::from(2)
    }

    pub fn half_h(&self) -> Rational {
        &self.h / &Rational::from(2)
    }

    pub fn left(&self) -> Rational {
        &self.cx - &self.half_w()
    }
    pub fn right(&self) -> Rational {
        &self.cx + &self.half_w()
    }
    pub fn bottom(&self) -> Rational {
        &self.cy - &self.half_h()
    }
    pub fn top(&self) -> Rational {
        &self.cy + &self.half_h()
    }

    /// Corners counterclockwise from the bottom-left.
    pub fn corners(&self) -> [Point; 4] {
        let (l, r, b, t) = (self.left(), self.right(), self.bottom(), self.top());
        [
            Vec2::new(l.clone(), b.clone()),
            Vec2::new(r.clone(), b),
            Vec2::new(r, t.clone()),
            Vec2::new(l, t),
        ]
    }

    /// Same size, centered at `c`.
    pub fn with_center(&self, c: &Point) -> Rect {
        Rect {
            cx: c.x.clone(),
            cy: c.y.clone(),
            w: self.w.clone(),
            h: self.h.clone(),
        }
    }

    pub fn same_size(&self, other: &Rect) -> bool {
        self.w == other.w && self.h == other.h
    }

    /// `other` lies inside `self`; shared boundary is allowed.
    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.left() <= other.left()
            && other.right() <= self.right()
            && self.bottom() <= other.bottom()
            && other.top() <= self.top()
    }

    fn project(&self, axis: &Vec2) -> (Rational, Rational) {
        project_points(&self.corners(), axis)
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Rect(({:?}, {:?}), {:?}x{:?})",
            self.cx, self.cy, self.w, self.h
        )
    }
}

/// A strictly convex polygon with counterclockwise vertices, starting at the
/// lowest (then leftmost) vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Builds the convex hull of `points`, dropping collinear and repeated
    /// vertices.
    pub fn hull_of(points: &[Point]) -> Result<Self, GeometryError> {
        let vertices = convex_hull(points);
        if vertices.len() < 3 {
            return Err(GeometryError::DegeneratePolygon);
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(from, to)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> Rational {
        self.edges().map(|(a, b)| a.cross(b)).sum()
    }

    /// Whether the open interiors of `self` and `rect` intersect.
    pub fn interior_meets_rect(&self, rect: &Rect) -> bool {
        let rect_corners = rect.corners();
        let mut axes = vec![Vec2::plus_x(), Vec2::plus_y()];
        for (a, b) in self.edges() {
            axes.push((b - a).perp());
        }
        axes.iter().all(|axis| {
            let (lo1, hi1) = project_points(&self.vertices, axis);
            let (lo2, hi2) = project_points(&rect_corners, axis);
            open_intervals_meet(&lo1, &hi1, &lo2, &hi2)
        })
    }
}

fn project_points(points: &[Point], axis: &Vec2) -> (Rational, Rational) {
    let mut iter = points.iter().map(|p| p.dot(axis));
    let first = iter.next().expect("nonempty point set");
    iter.fold((first.clone(), first), |(lo, hi), v| {
        if v < lo {
            (v, hi)
        } else if v > hi {
            (lo, v)
        } else {
            (lo, hi)
        }
    })
}

fn open_intervals_meet(lo1: &Rational, hi1: &Rational, lo2: &Rational, hi2: &Rational) -> bool {
    lo1.max(lo2) < hi1.min(hi2)
}

/// Andrew's monotone chain, exact. Returns the strictly convex hull
/// counterclockwise, starting from the lowest-then-leftmost vertex.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Point, a: &Point, b: &Point| (a - o).cross(&(b - o));
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let start = lower
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (&a.y, &a.x).cmp(&(&b.y, &b.x)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    lower.rotate_left(start);
    lower
}

/// The rectangle moved by `v`.
pub fn translate(r: &Rect, v: &Vec2) -> Rect {
    Rect {
        cx: &r.cx + &v.x,
        cy: &r.cy + &v.y,
        w: r.w.clone(),
        h: r.h.clone(),
    }
}

/// Open-interior intersection test; touching boundaries do not count.
pub fn interiors_overlap(a: &Rect, b: &Rect) -> bool {
    let sx = (&a.w + &b.w) / Rational::from(2);
    let sy = (&a.h + &b.h) / Rational::from(2);
    (&a.cx - &b.cx).abs() < sx && (&a.cy - &b.cy).abs() < sy
}

/// The smallest axis-aligned rectangle containing the whole sweep of `r`
/// along `v`. For axis-parallel `v` this is the swept region itself.
pub fn sweep_bounds(r: &Rect, v: &Vec2) -> Rect {
    let end = translate(r, v);
    let left = r.left().min(end.left());
    let right = r.right().max(end.right());
    let bottom = r.bottom().min(end.bottom());
    let top = r.top().max(end.top());
    let two = Rational::from(2);
    Rect {
        cx: (&left + &right) / &two,
        cy: (&bottom + &top) / &two,
        w: right - left,
        h: top - bottom,
    }
}

/// Boundary of the region covered while translating `r` by `v`: the convex
/// hull of the start and end corners.
pub fn trace_polygon(r: &Rect, v: &Vec2) -> Result<ConvexPolygon, GeometryError> {
    if v.is_zero() {
        return Err(GeometryError::DegenerateDirection);
    }
    let end = translate(r, v);
    let mut pts: Vec<Point> = r.corners().to_vec();
    pts.extend(end.corners());
    ConvexPolygon::hull_of(&pts)
}

/// Does `mover`, translated by `v`, hit `stationary` at any point of the
/// motion?
///
/// The swept region is convex, so the test is a separating-axis check over
/// the x axis, the y axis and the normal of `v`. A stationary rectangle
/// strictly inside the sweep is reported as a collision.
pub fn serial_collision(mover: &Rect, v: &Vec2, stationary: &Rect) -> Result<bool, GeometryError> {
    if v.is_zero() {
        return Err(GeometryError::DegenerateDirection);
    }
    let end = translate(mover, v);
    let mut swept: Vec<Point> = mover.corners().to_vec();
    swept.extend(end.corners());
    let axes = [Vec2::plus_x(), Vec2::plus_y(), v.perp()];
    Ok(axes.iter().all(|axis| {
        let (lo1, hi1) = project_points(&swept, axis);
        let (lo2, hi2) = stationary.project(axis);
        open_intervals_meet(&lo1, &hi1, &lo2, &hi2)
    }))
}

/// Is there `t` in `[t0, t1]` with `c + m * t > 0` for every `(c, m)`?
fn exists_time(ineqs: &[(Rational, Rational)], t0: &Rational, t1: &Rational) -> bool {
    let mut lo = t0.clone();
    let mut hi = t1.clone();
    let mut lo_open = false;
    let mut hi_open = false;
    for (c, m) in ineqs {
        if m.is_zero() {
            if !c.is_positive() {
                return false;
            }
            continue;
        }
        let root = -(c / m);
        if m.is_positive() {
            if root >= lo {
                lo = root;
                lo_open = true;
            }
        } else if root <= hi {
            hi = root;
            hi_open = true;
        }
    }
    lo < hi || (lo == hi && !lo_open && !hi_open)
}

/// Collision test for two robots moving simultaneously at the same speed.
///
/// Robot `a` sits at `translate(a, min(t, amp_a) * va)` at time `t`, and
/// likewise for `b`; the step lasts until `max(amp_a, amp_b)`. Directions
/// must be unit axis vectors so that amplitude and time share a unit.
pub fn parallel_collision(
    a: &Rect,
    va: &Vec2,
    amp_a: &Rational,
    b: &Rect,
    vb: &Vec2,
    amp_b: &Rational,
) -> Result<bool, GeometryError> {
    for v in [va, vb] {
        if !v.is_unit_axis() {
            return Err(GeometryError::UnsupportedDirection(v.to_string()));
        }
    }
    for amp in [amp_a, amp_b] {
        if !amp.is_positive() {
            return Err(GeometryError::DegenerateAmplitude(amp.to_string()));
        }
    }
    let zero = Rational::zero();
    let (first, last) = if amp_a <= amp_b {
        (amp_a.clone(), amp_b.clone())
    } else {
        (amp_b.clone(), amp_a.clone())
    };
    let sx = (&a.w + &b.w) / Rational::from(2);
    let sy = (&a.h + &b.h) / Rational::from(2);
    for (t0, t1) in [(zero, first.clone()), (first, last)] {
        // Offset and velocity of a's center relative to b's within the phase.
        let a_moving = &t1 <= amp_a;
        let b_moving = &t1 <= amp_b;
        let (ax, ay, avx, avy) = if a_moving {
            (a.cx.clone(), a.cy.clone(), va.x.clone(), va.y.clone())
        } else {
            (&a.cx + &(&va.x * amp_a), &a.cy + &(&va.y * amp_a), Rational::zero(), Rational::zero())
        };
        let (bx, by, bvx, bvy) = if b_moving {
            (b.cx.clone(), b.cy.clone(), vb.x.clone(), vb.y.clone())
        } else {
            (&b.cx + &(&vb.x * amp_b), &b.cy + &(&vb.y * amp_b), Rational::zero(), Rational::zero())
        };
        let dx = ax - bx;
        let dy = ay - by;
        let mx = avx - bvx;
        let my = avy - bvy;
        // |dx + mx t| < sx and |dy + my t| < sy
        let ineqs = [
            (&sx - &dx, -&mx),
            (&sx + &dx, mx.clone()),
            (&sy - &dy, -&my),
            (&sy + &dy, my.clone()),
        ];
        if exists_time(&ineqs, &t0, &t1) {
            return Ok(true);
        }
    }
    Ok(false)
}
