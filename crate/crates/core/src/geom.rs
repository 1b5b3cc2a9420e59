//! Fine-lattice geometry of resolved curves and differential polygons.
//!
//! The torus is modelled on an integer lattice with [`SCALE`] units per grid
//! cell (period `SCALE * n`). Vertical curve `i` is straight at `x =
//! SCALE*i`, horizontal curve `j` at `y = SCALE*j` — except the *middle*
//! curve of a band resolved to `1`, which follows a curved path `β`:
//!
//! * for a column band with middle index `v`, `β` consists of four vertical
//!   runs at `x = SCALE*v ∓ 12` (`−` when the decoration of that stretch
//!   sits in the left sub-column at resolution `0`, `+` when right), joined
//!   by horizontal jogs at `y = SCALE*b_j + 11` where `b_j` is the resolved
//!   row of the `j`-th decoration;
//! * row bands are the transpose.
//!
//! The straight middle curve `α` (resolution `0`) and `β` cross in exactly
//! four points, one per cyclic gap between consecutive decorations.
//! Decorations are drawn once and for all at the centers of their
//! resolution-`0` cells; chosen residues guarantee that dots, drawn centers,
//! and crossing points never collide with each other or with curve segments
//! they do not belong to, so all containment tests below are strict and
//! unambiguous.
//!
//! Everything here works in *lifted* (planar) coordinates: arcs are walked
//! on the torus but emitted as plane segments accumulating wrap
//! displacement, so a polygon boundary closes up in the plane exactly when
//! it is null-homotopic, and interior tests reduce to planar even–odd ray
//! casting against all torus translates of a query point.

use std::collections::HashMap;

use crate::cube::{BandAxis, Cube, ResolutionMask, SCALE};
use crate::grid::Kind;

/// Fine-lattice coordinate.
pub type Fine = i64;

/// A point of the fine lattice (world coordinates, possibly lifted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pt {
    pub x: Fine,
    pub y: Fine,
}

/// An axis-parallel segment in lifted world coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Seg {
    pub a: Pt,
    pub b: Pt,
}

/// `x mod p` in `[0, p)`.
fn cyc(x: Fine, p: Fine) -> Fine {
    x.rem_euclid(p)
}

/// Whether `x` lies strictly inside the cyclic interval from `lo` to `hi`
/// (walked in the positive direction).
pub fn cyc_between_strict(lo: Fine, x: Fine, hi: Fine, period: Fine) -> bool {
    let d = cyc(x - lo, period);
    0 < d && d < cyc(hi - lo, period)
}

/// The curved middle curve of a band, in *axis coordinates*: `u` is the
/// coordinate across the band (x for a column band), `w` runs along it.
#[derive(Debug, Clone)]
pub struct BetaPath {
    period: Fine,
    /// `u` of the run in stretch `j` (the stretch containing decoration `j`).
    run_u: [Fine; 4],
    /// `w` of jog `j`, separating stretch `j` from stretch `j + 1`; sorted
    /// ascending.
    jog_w: [Fine; 4],
}

/// Position on a `BetaPath`: which edge of its eight-edge cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Loc {
    /// Vertical-in-axis run `j`, spanning cyclic `(jog_w[j-1], jog_w[j]]`.
    Run(usize),
    /// Jog `j`, from `(run_u[j], jog_w[j])` to `(run_u[j+1], jog_w[j])`.
    Jog(usize),
}

impl BetaPath {
    /// The run coordinate `u` at along-position `w` (which must not be a jog
    /// position — callers only query residues where this holds).
    pub fn run_at(&self, w: Fine) -> Fine {
        let w = cyc(w, self.period);
        debug_assert!(!self.jog_w.contains(&w), "query at a jog height");
        let j = self.jog_w.iter().filter(|&&jw| jw < w).count() % 4;
        self.run_u[j]
    }

    /// The along-coordinate of jog/crossing `j`.
    pub fn jog_w(&self, j: usize) -> Fine {
        self.jog_w[j]
    }

    fn locate(&self, p: (Fine, Fine)) -> Loc {
        let (u, w) = p;
        for j in 0..4 {
            if w == self.jog_w[j] {
                let (a, b) = (self.run_u[j], self.run_u[(j + 1) % 4]);
                assert!(
                    (a.min(b) < u) && (u < a.max(b)),
                    "point at jog height must lie strictly inside the jog"
                );
                return Loc::Jog(j);
            }
        }
        let j = self.jog_w.iter().filter(|&&jw| jw < w).count() % 4;
        assert_eq!(u, self.run_u[j], "point not on the curve");
        Loc::Run(j)
    }

    /// Endpoint of edge `loc` in direction `dir`, and the next edge.
    fn edge_end(&self, loc: Loc, dir: i64) -> ((Fine, Fine), Loc) {
        match loc {
            Loc::Run(j) => {
                if dir > 0 {
                    ((self.run_u[j], self.jog_w[j]), Loc::Jog(j))
                } else {
                    let jp = (j + 3) % 4;
                    ((self.run_u[j], self.jog_w[jp]), Loc::Jog(jp))
                }
            }
            Loc::Jog(j) => {
                if dir > 0 {
                    let jn = (j + 1) % 4;
                    ((self.run_u[jn], self.jog_w[j]), Loc::Run(jn))
                } else {
                    ((self.run_u[j], self.jog_w[j]), Loc::Run(j))
                }
            }
        }
    }

    /// Whether `b` lies on edge `loc` strictly after `cur` (in `dir`), at or
    /// before the edge end.
    fn reaches(&self, loc: Loc, cur: (Fine, Fine), b: (Fine, Fine), dir: i64) -> bool {
        let (end, _) = self.edge_end(loc, dir);
        match loc {
            Loc::Run(j) => {
                if b.0 != self.run_u[j] {
                    return false;
                }
                let db = cyc((b.1 - cur.1) * dir, self.period);
                let de = cyc((end.1 - cur.1) * dir, self.period);
                0 < db && db <= de
            }
            Loc::Jog(j) => {
                if b.1 != self.jog_w[j] {
                    return false;
                }
                let db = b.0 - cur.0;
                let de = end.0 - cur.0;
                db.signum() == de.signum() && db.abs() <= de.abs() && db != 0
            }
        }
    }
}

/// Geometry of one band: its curved curve plus peak data.
#[derive(Debug, Clone)]
pub struct BandGeometry {
    /// Column band (vertical curves) or row band (horizontal).
    pub axis: BandAxis,
    /// Resolved index of the middle curve.
    pub middle: usize,
    /// The curved shape taken at resolution `1`.
    pub beta: BetaPath,
}

impl BandGeometry {
    /// World coordinates of crossing `j` between `α` and `β` (the crossing
    /// in the cyclic gap after decoration `j`).
    pub fn crossing_point(&self, j: usize) -> Pt {
        let u = SCALE * self.middle as Fine;
        let w = self.beta.jog_w(j);
        to_world(self.axis, u, w)
    }
}

fn to_world(axis: BandAxis, u: Fine, w: Fine) -> Pt {
    match axis {
        BandAxis::Col => Pt { x: u, y: w },
        BandAxis::Row => Pt { x: w, y: u },
    }
}

fn from_world(axis: BandAxis, p: Pt) -> (Fine, Fine) {
    match axis {
        BandAxis::Col => (p.x, p.y),
        BandAxis::Row => (p.y, p.x),
    }
}

/// The shape a curve takes: straight at a fixed cross-coordinate, or the
/// curved path of a band.
#[derive(Debug, Clone, Copy)]
pub enum Shape<'a> {
    Line(Fine),
    Beta(&'a BetaPath),
}

/// One boundary side of a candidate polygon.
#[derive(Debug, Clone, Copy)]
pub struct ArcSpec<'a> {
    /// Whether the side runs along a vertical (`Col`) or horizontal (`Row`)
    /// curve.
    pub axis: BandAxis,
    /// Walk direction along the curve: `+1` for increasing x/y, `-1` for
    /// decreasing.
    pub dir: i64,
    /// Start point (world coordinates, canonical).
    pub from: Pt,
    /// End point (world coordinates, canonical).
    pub to: Pt,
    /// Plain arc on one shape, or a composite switching shapes at a band
    /// crossing (used when the polygon flips that band's resolution).
    pub kind: ArcKind<'a>,
}

/// Shape data of an [`ArcSpec`].
#[derive(Debug, Clone, Copy)]
pub enum ArcKind<'a> {
    /// The whole side runs on one curve shape.
    Plain(Shape<'a>),
    /// The side starts on `from_shape`, turns at `peak`, and continues on
    /// `to_shape`. Valid only when `peak` lies strictly between the
    /// endpoints in the walk direction.
    Switch { from_shape: Shape<'a>, to_shape: Shape<'a>, peak: Pt },
}

/// Walks a plain arc in axis coordinates; returns lifted segments and the
/// lifted end position.
fn walk_axis(
    shape: Shape<'_>,
    period: Fine,
    from: (Fine, Fine),
    to: (Fine, Fine),
    dir: i64,
    lift: (Fine, Fine),
) -> (Vec<((Fine, Fine), (Fine, Fine))>, (Fine, Fine)) {
    debug_assert_eq!(cyc(lift.0, period), cyc(from.0, period));
    debug_assert_eq!(cyc(lift.1, period), cyc(from.1, period));
    debug_assert_ne!(from, to);
    match shape {
        Shape::Line(u) => {
            debug_assert_eq!(from.0, u);
            debug_assert_eq!(to.0, u);
            let d = cyc((to.1 - from.1) * dir, period);
            debug_assert!(d > 0);
            let end = (lift.0, lift.1 + dir * d);
            (vec![(lift, end)], end)
        }
        Shape::Beta(beta) => {
            let mut segs = Vec::new();
            let mut cur = from;
            let mut loc = beta.locate(from);
            let mut lifted = lift;
            for _ in 0..12 {
                let (end, next) = beta.edge_end(loc, dir);
                let stop = beta.reaches(loc, cur, to, dir);
                let target = if stop { to } else { end };
                if target != cur {
                    let new_lift = match loc {
                        Loc::Run(_) => {
                            let d = cyc((target.1 - cur.1) * dir, period);
                            (lifted.0, lifted.1 + dir * d)
                        }
                        Loc::Jog(_) => (lifted.0 + (target.0 - cur.0), lifted.1),
                    };
                    segs.push((lifted, new_lift));
                    lifted = new_lift;
                    cur = target;
                }
                if stop {
                    return (segs, lifted);
                }
                loc = next;
            }
            unreachable!("arc walk did not terminate");
        }
    }
}

/// Walks one polygon side from the lifted position `lift` (which must be a
/// translate of `spec.from`). Returns `None` when a composite side is
/// invalid (its peak does not lie strictly between the endpoints).
pub fn emit_arc(spec: &ArcSpec<'_>, period: Fine, lift: Pt) -> Option<(Vec<Seg>, Pt)> {
    let axis = spec.axis;
    let from = from_world(axis, spec.from);
    let to = from_world(axis, spec.to);
    let lift_axis = from_world(axis, lift);
    let (raw, end) = match spec.kind {
        ArcKind::Plain(shape) => walk_axis(shape, period, from, to, spec.dir, lift_axis),
        ArcKind::Switch { from_shape, to_shape, peak } => {
            let peak = from_world(axis, peak);
            let dp = cyc((peak.1 - from.1) * spec.dir, period);
            let dt = cyc((to.1 - from.1) * spec.dir, period);
            if !(0 < dp && dp < dt) {
                return None;
            }
            let (mut segs, mid) = walk_axis(from_shape, period, from, peak, spec.dir, lift_axis);
            let (tail, end) = walk_axis(to_shape, period, peak, to, spec.dir, mid);
            segs.extend(tail);
            (segs, end)
        }
    };
    let segs = raw
        .into_iter()
        .map(|(a, b)| Seg { a: to_world(axis, a.0, a.1), b: to_world(axis, b.0, b.1) })
        .collect();
    Some((segs, to_world(axis, end.0, end.1)))
}

/// Chains the four sides of a candidate polygon into a closed lifted
/// boundary. Returns `None` if a composite side is invalid or the boundary
/// fails to close in the plane (a non-null-homotopic loop).
pub fn assemble_boundary(sides: &[ArcSpec<'_>; 4], period: Fine) -> Option<Vec<Seg>> {
    let start = sides[0].from;
    let mut lift = start;
    let mut segs = Vec::with_capacity(16);
    for side in sides {
        debug_assert_eq!(cyc(lift.x, period), cyc(side.from.x, period));
        debug_assert_eq!(cyc(lift.y, period), cyc(side.from.y, period));
        let (part, end) = emit_arc(side, period, lift)?;
        segs.extend(part);
        lift = end;
    }
    if lift != start {
        return None;
    }
    Some(segs)
}

/// Even–odd parity of `p` against a closed planar polyline of axis-parallel
/// segments: `true` when inside. `p` must not lie on the boundary.
fn parity(segs: &[Seg], p: Pt) -> bool {
    let mut inside = false;
    for s in segs {
        if s.a.x == s.b.x {
            debug_assert_ne!(s.a.y, s.b.y);
            let (lo, hi) = (s.a.y.min(s.b.y), s.a.y.max(s.b.y));
            debug_assert!(
                !(s.a.x == p.x && lo <= p.y && p.y <= hi),
                "query point on a vertical boundary segment"
            );
            if s.a.x > p.x && lo <= p.y && p.y < hi {
                inside = !inside;
            }
        } else {
            debug_assert_eq!(s.a.y, s.b.y);
            let (lo, hi) = (s.a.x.min(s.b.x), s.a.x.max(s.b.x));
            debug_assert!(
                !(s.a.y == p.y && lo <= p.x && p.x <= hi),
                "query point on a horizontal boundary segment"
            );
        }
    }
    inside
}

/// How many torus translates of `p` lie strictly inside the lifted closed
/// boundary `segs`.
pub fn interior_count(segs: &[Seg], period: Fine, p: Pt) -> usize {
    let mut xmin = Fine::MAX;
    let mut xmax = Fine::MIN;
    let mut ymin = Fine::MAX;
    let mut ymax = Fine::MIN;
    for s in segs {
        for q in [s.a, s.b] {
            xmin = xmin.min(q.x);
            xmax = xmax.max(q.x);
            ymin = ymin.min(q.y);
            ymax = ymax.max(q.y);
        }
    }
    let mut count = 0;
    let kx0 = (xmin - p.x).div_euclid(period);
    let kx1 = (xmax - p.x).div_euclid(period) + 1;
    let ky0 = (ymin - p.y).div_euclid(period);
    let ky1 = (ymax - p.y).div_euclid(period) + 1;
    for kx in kx0..=kx1 {
        for ky in ky0..=ky1 {
            let q = Pt { x: p.x + kx * period, y: p.y + ky * period };
            if q.x <= xmin || q.x >= xmax || q.y <= ymin || q.y >= ymax {
                continue;
            }
            if parity(segs, q) {
                count += 1;
            }
        }
    }
    count
}

/// Full fine-lattice geometry of a diagram's cube.
#[derive(Debug, Clone)]
pub struct GridGeometry {
    n: usize,
    period: Fine,
    bands: Vec<BandGeometry>,
    /// Resolved column index of a column band's middle curve → band index.
    vmiddle: HashMap<usize, usize>,
    /// Resolved row index of a row band's middle curve → band index.
    hmiddle: HashMap<usize, usize>,
    /// Drawn decoration centers (fixed across resolutions: the centers of
    /// the resolution-`0` cells).
    decorations: Vec<(Kind, Pt)>,
}

impl GridGeometry {
    /// Builds the geometry tables of a cube.
    pub fn new(cube: &Cube) -> GridGeometry {
        let n = cube.n();
        let period = SCALE * n as Fine;
        let mut bands = Vec::with_capacity(cube.k());
        let mut vmiddle = HashMap::new();
        let mut hmiddle = HashMap::new();
        for (bi, band) in cube.bands().iter().enumerate() {
            let mid_u = SCALE * band.middle() as Fine;
            let mut run_u = [0; 4];
            let mut jog_w = [0; 4];
            for j in 0..4 {
                run_u[j] = if band.decos[j].side0 == 0 { mid_u - 12 } else { mid_u + 12 };
                jog_w[j] = SCALE * band.decos[j].across as Fine + 11;
            }
            debug_assert!(jog_w.windows(2).all(|w| w[0] < w[1]));
            bands.push(BandGeometry {
                axis: band.axis,
                middle: band.middle(),
                beta: BetaPath { period, run_u, jog_w },
            });
            match band.axis {
                BandAxis::Col => vmiddle.insert(band.middle(), bi),
                BandAxis::Row => hmiddle.insert(band.middle(), bi),
            };
        }
        let decorations = cube
            .resolved_decorations(0)
            .into_iter()
            .map(|(kind, c, r)| {
                (kind, Pt { x: SCALE * c as Fine + 8, y: SCALE * r as Fine + 8 })
            })
            .collect();
        GridGeometry { n, period, bands, vmiddle, hmiddle, decorations }
    }

    /// Torus period in fine units.
    pub fn period(&self) -> Fine {
        self.period
    }

    /// Number of curves per family.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Band geometries, parallel to the cube's band list.
    pub fn bands(&self) -> &[BandGeometry] {
        &self.bands
    }

    /// Drawn decoration centers.
    pub fn decorations(&self) -> &[(Kind, Pt)] {
        &self.decorations
    }

    /// The band (index) whose middle curve is vertical curve `a`, if any.
    pub fn col_band(&self, a: usize) -> Option<usize> {
        self.vmiddle.get(&a).copied()
    }

    /// The band (index) whose middle curve is horizontal curve `b`, if any.
    pub fn row_band(&self, b: usize) -> Option<usize> {
        self.hmiddle.get(&b).copied()
    }

    /// The shape of vertical curve `a` at `mask`.
    pub fn vshape(&self, a: usize, mask: ResolutionMask) -> Shape<'_> {
        match self.col_band(a) {
            Some(bi) if mask & (1 << bi) != 0 => Shape::Beta(&self.bands[bi].beta),
            _ => Shape::Line(SCALE * a as Fine),
        }
    }

    /// The shape of horizontal curve `b` at `mask`.
    pub fn hshape(&self, b: usize, mask: ResolutionMask) -> Shape<'_> {
        match self.row_band(b) {
            Some(bi) if mask & (1 << bi) != 0 => Shape::Beta(&self.bands[bi].beta),
            _ => Shape::Line(SCALE * b as Fine),
        }
    }

    /// Position of the dot at the crossing of vertical curve `a` and
    /// horizontal curve `b` under resolution `mask`.
    pub fn dot_position(&self, a: usize, b: usize, mask: ResolutionMask) -> Pt {
        let nominal_x = SCALE * a as Fine;
        let nominal_y = SCALE * b as Fine;
        match (self.vshape(a, mask), self.hshape(b, mask)) {
            (Shape::Line(x), Shape::Line(y)) => Pt { x, y },
            (Shape::Beta(bv), Shape::Line(y)) => Pt { x: bv.run_at(y), y },
            (Shape::Line(x), Shape::Beta(bh)) => Pt { x, y: bh.run_at(x) },
            // Near the other band's middle neither curved path jogs (their
            // decorations cannot sit inside another singular line), so each
            // run coordinate may be read off at the nominal crossing.
            (Shape::Beta(bv), Shape::Beta(bh)) => {
                Pt { x: bv.run_at(nominal_y), y: bh.run_at(nominal_x) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn loop_geometry() -> (Cube, GridGeometry) {
        let g = corpus::add_singular_loop(&corpus::unknot2(), 0).unwrap();
        let cube = Cube::new(&g).unwrap();
        let geom = GridGeometry::new(&cube);
        (cube, geom)
    }

    #[test]
    fn beta_runs_alternate_sides() {
        let (cube, geom) = loop_geometry();
        assert_eq!(cube.k(), 1);
        let bg = &geom.bands()[0];
        let mid = SCALE * bg.middle as Fine;
        let mut sides: Vec<Fine> = bg.beta.run_u.to_vec();
        sides.dedup();
        assert_eq!(sides.len(), 4, "run sides alternate");
        for u in bg.beta.run_u {
            assert!(u == mid - 12 || u == mid + 12);
        }
    }

    #[test]
    fn beta_walk_closes_around_the_torus() {
        let (_, geom) = loop_geometry();
        let bg = &geom.bands()[0];
        let beta = &bg.beta;
        let p = geom.period();
        // A point in the middle of run 0's stretch, just below the first jog.
        let w0 = beta.jog_w(0) - 3;
        let a = (beta.run_u[0], w0);
        let b = (beta.run_u[0], w0 - 1);
        let (segs, end) = walk_axis(Shape::Beta(beta), p, a, b, 1, a);
        assert_eq!(end.1 - a.1, p - 1, "full loop advances one period");
        assert_eq!(segs.len(), 9, "four runs split by entry plus four jogs");
        let (_, end_rev) = walk_axis(Shape::Beta(beta), p, b, a, -1, b);
        assert_eq!(end_rev.1 - b.1, -(p - 1));
    }

    #[test]
    fn dot_positions_follow_shapes() {
        let (cube, geom) = loop_geometry();
        let band = &cube.bands()[0];
        let v = band.middle();
        let straight = geom.dot_position(v, 0, 0);
        assert_eq!(straight, Pt { x: SCALE * v as Fine, y: 0 });
        let curved = geom.dot_position(v, 0, 1);
        assert_eq!(curved.y, 0);
        assert_eq!(curved.x, geom.bands()[0].beta.run_at(0));
        assert_ne!(curved.x, straight.x);
    }

    #[test]
    fn square_interior_counting() {
        let a = Pt { x: 0, y: 0 };
        let b = Pt { x: 32, y: 0 };
        let c = Pt { x: 32, y: 32 };
        let d = Pt { x: 0, y: 32 };
        let segs = vec![
            Seg { a, b },
            Seg { a: b, b: c },
            Seg { a: c, b: d },
            Seg { a: d, b: a },
        ];
        let period = 64;
        assert_eq!(interior_count(&segs, period, Pt { x: 8, y: 8 }), 1);
        assert_eq!(interior_count(&segs, period, Pt { x: 40, y: 8 }), 0);
        // Translates are found modulo the period.
        assert_eq!(interior_count(&segs, period, Pt { x: 8 - 64, y: 8 + 64 }), 1);
    }

    #[test]
    fn crossing_points_sit_on_both_curves() {
        let (cube, geom) = loop_geometry();
        let band = &cube.bands()[0];
        let bg = &geom.bands()[0];
        for j in 0..4 {
            let p = bg.crossing_point(j);
            assert_eq!(p.x, SCALE * band.middle() as Fine, "on the straight middle");
            assert_eq!(p.y % 16, 11, "at a jog height");
        }
    }

    #[test]
    fn switch_arc_requires_peak_between_endpoints() {
        let (_, geom) = loop_geometry();
        let bg = &geom.bands()[0];
        let mid = SCALE * bg.middle as Fine;
        let p = geom.period();
        let from = Pt { x: mid, y: 0 };
        let to = Pt { x: bg.beta.run_at(32), y: 32 };
        let peak_in = bg.crossing_point(1);
        let peak_candidates: Vec<Pt> = (0..4).map(|j| bg.crossing_point(j)).collect();
        let mut accepted = 0;
        for peak in peak_candidates {
            let spec = ArcSpec {
                axis: BandAxis::Col,
                dir: 1,
                from,
                to,
                kind: ArcKind::Switch {
                    from_shape: Shape::Line(mid),
                    to_shape: Shape::Beta(&bg.beta),
                    peak,
                },
            };
            if emit_arc(&spec, p, from).is_some() {
                accepted += 1;
            }
        }
        // Exactly the crossings strictly between heights 0 and 32 work.
        let expected = (0..4)
            .filter(|&j| cyc_between_strict(0, bg.beta.jog_w(j), 32, p))
            .count();
        assert_eq!(accepted, expected);
        assert!(cyc_between_strict(0, peak_in.y, 32, p) || expected == 0);
    }
}
