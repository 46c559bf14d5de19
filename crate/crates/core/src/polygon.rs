//! Exact Newton polygon geometry.
//!
//! For a polynomial Σ b_j x^j with b_0, b_k ≠ 0 and a prime p, the polygon
//! is the boundary of the lower convex hull of the valuation points
//! (j, v_p(b_j)). Slopes are kept as reduced integer fractions; there is
//! no floating point anywhere in this module. Vertices are true corners:
//! collinear interior points are reported by [`lattice_points`], not by
//! the vertex list.

use crate::certify::{unit_valuation, PolyInstance};
use crate::valuations::{vp_factorial_ratio, vp_int, Valuation, ValuationError};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("need at least two finite valuation points")]
    TooFewFinitePoints,
    #[error("valuations at the endpoints must be finite")]
    InfiniteEndpoint,
    #[error("point indices must start at 0 and strictly increase")]
    BadIndices,
    #[error("vertex list does not describe a polygon: {0}")]
    BadVertices(&'static str),
    #[error("polygons have different degrees ({0} vs {1})")]
    DegreeMismatch(i64, i64),
    #[error("constant and leading coefficients must be nonzero")]
    ZeroEndpointCoefficient,
    #[error("segment is not on the polygon")]
    SegmentNotOnPolygon,
    #[error("expected one valuation per coefficient index (got {got}, need {need})")]
    WrongValuationCount { got: usize, need: usize },
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

/// A reduced fraction with positive denominator. Comparisons and equality
/// are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i64(num, den).max(1);
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One coefficient-valuation point (j, v(b_j)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuedPoint {
    pub index: u64,
    pub valuation: Valuation,
}

impl ValuedPoint {
    pub fn new(index: u64, valuation: impl Into<Valuation>) -> Self {
        ValuedPoint {
            index,
            valuation: valuation.into(),
        }
    }
}

/// A maximal straight piece of a polygon between two lattice points
/// (c, d) and (c + t, d − s); the slope is −s/t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: (i64, i64),
    pub end: (i64, i64),
}

impl Segment {
    /// Horizontal width t ≥ 1.
    pub fn width(&self) -> i64 {
        self.end.0 - self.start.0
    }

    /// Signed height drop s = d_start − d_end (negative for ascending).
    pub fn drop(&self) -> i64 {
        self.start.1 - self.end.1
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.end.1 - self.start.1, self.width())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// gcd(s, t) = 1 and p ∤ t: tame inertia acts through a t-cycle.
    Tame,
    /// Slope −1/p over width p: a root of valuation 1/p forces the
    /// ramification index, hence the group order, to be divisible by p.
    RamificationOrder,
}

/// A cycle-of-known-length witness extracted from a polygon segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub prime: u64,
    pub cycle_length: u64,
    pub segment: Segment,
    pub kind: WitnessKind,
}

/// The boundary of the lower convex hull of a valuation point set.
///
/// Invariants: vertex indices start at 0, strictly increase, and end at
/// the degree; consecutive slopes strictly increase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    /// Builds a polygon directly from a vertex list, validating the corner
    /// invariants.
    pub fn from_vertices(vertices: Vec<(i64, i64)>) -> Result<Self, PolygonError> {
        if vertices.len() < 2 {
            return Err(PolygonError::BadVertices("fewer than two vertices"));
        }
        if vertices[0].0 != 0 {
            return Err(PolygonError::BadVertices("first vertex not at index 0"));
        }
        for w in vertices.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(PolygonError::BadVertices("indices not strictly increasing"));
            }
        }
        for w in vertices.windows(3) {
            if cross(w[0], w[1], w[2]) <= 0 {
                return Err(PolygonError::BadVertices("slopes not strictly increasing"));
            }
        }
        Ok(NewtonPolygon { vertices })
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn degree(&self) -> i64 {
        self.vertices.last().unwrap().0
    }

    /// The maximal segments between consecutive vertices, left to right.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment {
            start: w[0],
            end: w[1],
        })
    }

    /// The exact value of the piecewise-linear function at integer `x`.
    pub fn value_at(&self, x: i64) -> Rational {
        assert!(
            (0..=self.degree()).contains(&x),
            "abscissa {x} outside polygon"
        );
        let seg = self
            .segments()
            .find(|s| s.start.0 <= x && x <= s.end.0)
            .unwrap();
        // d_start + (x - c) * (d_end - d_start) / t
        let num = seg.start.1 * seg.width() + (x - seg.start.0) * (seg.end.1 - seg.start.1);
        Rational::new(num, seg.width())
    }

    /// True iff the straight piece `seg` lies entirely on the polygon.
    /// Both endpoints must be on it, and by convexity the chord can only
    /// coincide with the polygon if no vertex strictly between drops
    /// below it; equivalently every such vertex sits on the chord.
    pub fn contains_segment(&self, seg: &Segment) -> bool {
        let (c, d) = seg.start;
        let (e, f) = seg.end;
        if !(0 <= c && c < e && e <= self.degree()) {
            return false;
        }
        if self.value_at(c) != Rational::integer(d) || self.value_at(e) != Rational::integer(f) {
            return false;
        }
        self.vertices
            .iter()
            .filter(|v| c < v.0 && v.0 < e)
            .all(|v| (v.1 - d) * (e - c) == (f - d) * (v.0 - c))
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Lower convex hull of the finite points, by monotone chain with exact
/// orientation tests. Infinite valuations (zero coefficients) lie above
/// everything and are skipped. Collinear interior points are not vertices.
pub fn lower_hull(points: &[ValuedPoint]) -> Result<NewtonPolygon, PolygonError> {
    if points.len() < 2 {
        return Err(PolygonError::TooFewFinitePoints);
    }
    for w in points.windows(2) {
        if w[1].index <= w[0].index {
            return Err(PolygonError::BadIndices);
        }
    }
    if points[0].index != 0 {
        return Err(PolygonError::BadIndices);
    }
    let first = points.first().unwrap();
    let last = points.last().unwrap();
    if first.valuation == Valuation::Infinite || last.valuation == Valuation::Infinite {
        return Err(PolygonError::InfiniteEndpoint);
    }
    let finite: Vec<(i64, i64)> = points
        .iter()
        .filter_map(|pt| {
            pt.valuation
                .finite()
                .map(|v| (pt.index as i64, v as i64))
        })
        .collect();
    if finite.len() < 2 {
        return Err(PolygonError::TooFewFinitePoints);
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(finite.len());
    for &pt in &finite {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// The sequence β_1 … β_k with β_j = NP(j) − NP(j−1); non-decreasing, and
/// its sum telescopes to v(b_k) − v(b_0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSequence {
    pub slopes: Vec<Rational>,
}

pub fn slope_sequence(np: &NewtonPolygon) -> SlopeSequence {
    let mut slopes = Vec::with_capacity(np.degree() as usize);
    for seg in np.segments() {
        let s = seg.slope();
        for _ in 0..seg.width() {
            slopes.push(s);
        }
    }
    SlopeSequence { slopes }
}

/// All integer-coordinate points lying exactly on the polygon, vertices
/// included, left to right.
pub fn lattice_points(np: &NewtonPolygon) -> Vec<(i64, i64)> {
    let mut out = vec![np.vertices[0]];
    for seg in np.segments() {
        let t = seg.width();
        let s = seg.drop();
        let g = gcd_i64(s, t).max(1);
        let (dx, dy) = (t / g, -s / g);
        // gcd(s, t) interior lattice points plus the right endpoint.
        for i in 1..=g {
            out.push((seg.start.0 + i * dx, seg.start.1 + i * dy));
        }
    }
    out
}

/// One tame witness per maximal segment (c,d)–(c+t,d−s) with gcd(s,t) = 1
/// and p ∤ t. Width-1 flat segments qualify vacuously (a 1-cycle).
pub fn tame_cycle_witnesses(np: &NewtonPolygon, p: u64) -> Vec<CycleWitness> {
    np.segments()
        .filter(|seg| {
            let t = seg.width();
            gcd_i64(seg.drop(), t) == 1 && !(t as u64).is_multiple_of(p)
        })
        .map(|seg| CycleWitness {
            prime: p,
            cycle_length: seg.width() as u64,
            segment: seg,
            kind: WitnessKind::Tame,
        })
        .collect()
}

/// Ramification-order witnesses: maximal segments of slope −1/p and
/// width exactly p. Tame extraction rejects these (p divides the width);
/// instead, a root of valuation 1/p forces p into the ramification index,
/// so p divides the group order without an explicit cycle.
pub fn ramification_order_witnesses(np: &NewtonPolygon, p: u64) -> Vec<CycleWitness> {
    np.segments()
        .filter(|seg| seg.width() as u64 == p && seg.drop() == 1)
        .map(|seg| CycleWitness {
            prime: p,
            cycle_length: p,
            segment: seg,
            kind: WitnessKind::RamificationOrder,
        })
        .collect()
}

/// Polygon of an explicit integer polynomial given as coefficients
/// c_0 … c_k; zero interior coefficients become infinite valuations.
pub fn np_of_int_poly(coeffs: &[i64], p: u64) -> Result<NewtonPolygon, PolygonError> {
    if coeffs.len() < 2 {
        return Err(PolygonError::TooFewFinitePoints);
    }
    if coeffs[0] == 0 || *coeffs.last().unwrap() == 0 {
        return Err(PolygonError::ZeroEndpointCoefficient);
    }
    let points: Vec<ValuedPoint> = coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let v = if c == 0 {
                Ok(Valuation::Infinite)
            } else {
                vp_int(c.unsigned_abs(), p).map(Valuation::Finite)
            };
            v.map(|v| ValuedPoint::new(j as u64, v))
        })
        .collect::<Result<_, ValuationError>>()?;
    lower_hull(&points)
}

/// True iff a's piecewise-linear function is ≤ b's at every integer
/// abscissa (equivalent to pointwise ≤ everywhere, by piecewise linearity
/// between integer-coordinate vertices).
pub fn np_pointwise_leq(a: &NewtonPolygon, b: &NewtonPolygon) -> Result<bool, PolygonError> {
    if a.degree() != b.degree() {
        return Err(PolygonError::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok((0..=a.degree()).all(|x| a.value_at(x) <= b.value_at(x)))
}

/// Persistence of a maximal segment across the coefficient-multiplier
/// family: the segment of `np_f` from (c,d) to (c+t,d−s) survives in
/// every member whose multipliers at c and c+t are units, i.e. have
/// valuation 0.
///
/// The endpoints must be vertices. Vertices are coefficient points, which
/// is what anchors the member's polygon; an interior lattice point whose
/// coefficient sits strictly above the hull gives no such guarantee, so
/// sub-segments between lattice points are rejected.
pub fn family_segment_persists(
    np_f: &NewtonPolygon,
    seg: &Segment,
    multiplier_valuations: &[Valuation],
) -> Result<bool, PolygonError> {
    let vertex = |pt: (i64, i64)| np_f.vertices.contains(&pt);
    if !vertex(seg.start) || !vertex(seg.end) || !np_f.contains_segment(seg) {
        return Err(PolygonError::SegmentNotOnPolygon);
    }
    let need = np_f.degree() as usize + 1;
    if multiplier_valuations.len() != need {
        return Err(PolygonError::WrongValuationCount {
            got: multiplier_valuations.len(),
            need,
        });
    }
    let at = |x: i64| multiplier_valuations[x as usize];
    Ok(at(seg.start.0).is_zero() && at(seg.end.0).is_zero())
}

/// Valuation points of the integer normalization of an instance at `p`:
/// point i carries v_p(m!/(n+i)!) plus the valuation of the unit
/// multiplier u_i. Never infinite for these families.
pub fn coefficient_valuations(
    instance: &PolyInstance,
    p: u64,
) -> Result<Vec<ValuedPoint>, PolygonError> {
    let (n, m, k) = (instance.n(), instance.m(), instance.k());
    let mut out = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        let base = vp_factorial_ratio(m, n + i, p)?;
        let unit = unit_valuation(instance, i, p)
            .finite()
            .expect("unit multipliers are nonzero integers");
        out.push(ValuedPoint::new(i, base + unit));
    }
    Ok(out)
}

/// The Newton polygon of an instance at `p`.
pub fn instance_polygon(instance: &PolyInstance, p: u64) -> Result<NewtonPolygon, PolygonError> {
    lower_hull(&coefficient_valuations(instance, p)?)
}

/// JSON surface for the polygon of an instance at a prime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub degree: i64,
    pub prime: u64,
    pub vertices: Vec<[i64; 2]>,
    pub slopes: Vec<String>,
}

impl PolygonReport {
    pub fn new(np: &NewtonPolygon, prime: u64) -> Self {
        PolygonReport {
            degree: np.degree(),
            prime,
            vertices: np.vertices().iter().map(|&(x, y)| [x, y]).collect(),
            slopes: slope_sequence(np)
                .slopes
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Family;

    fn pts(vals: &[i64]) -> Vec<ValuedPoint> {
        vals.iter()
            .enumerate()
            .map(|(i, &v)| {
                ValuedPoint::new(
                    i as u64,
                    if v < 0 {
                        Valuation::Infinite
                    } else {
                        Valuation::Finite(v as u64)
                    },
                )
            })
            .collect()
    }

    #[test]
    fn hull_keeps_both_segments_when_slopes_increase() {
        let np = lower_hull(&pts(&[2, 0, 1])).unwrap();
        assert_eq!(np.vertices(), &[(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn hull_drops_interior_points_above_the_chord() {
        let np = lower_hull(&pts(&[1, 1, 1, 1, 1, 1, 1, 1, 0])).unwrap();
        assert_eq!(np.vertices(), &[(0, 1), (8, 0)]);
    }

    #[test]
    fn hull_of_figure_instance_points() {
        let np = lower_hull(&pts(&[1, 1, 1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(np.vertices(), &[(0, 1), (3, 0), (7, 0)]);
    }

    #[test]
    fn hull_rejects_degenerate_inputs() {
        assert_eq!(
            lower_hull(&pts(&[3])),
            Err(PolygonError::TooFewFinitePoints)
        );
        assert_eq!(
            lower_hull(&pts(&[-1, 0, 1])),
            Err(PolygonError::InfiniteEndpoint)
        );
        assert_eq!(
            lower_hull(&pts(&[0, 1, -1])),
            Err(PolygonError::InfiniteEndpoint)
        );
    }

    #[test]
    fn slope_sequence_single_segment() {
        let np = NewtonPolygon::from_vertices(vec![(0, 1), (8, 0)]).unwrap();
        let s = slope_sequence(&np);
        assert_eq!(s.slopes, vec![Rational::new(-1, 8); 8]);
    }

    #[test]
    fn slope_sequence_descending_then_flat() {
        let np = NewtonPolygon::from_vertices(vec![(0, 1), (3, 0), (7, 0)]).unwrap();
        let s = slope_sequence(&np);
        let third = Rational::new(-1, 3);
        let zero = Rational::integer(0);
        assert_eq!(
            s.slopes,
            vec![third, third, third, zero, zero, zero, zero]
        );
    }

    #[test]
    fn slope_sequence_three_runs() {
        let np = NewtonPolygon::from_vertices(vec![(0, 2), (2, 1), (7, 0), (8, 0)]).unwrap();
        let s = slope_sequence(&np);
        let mut expect = vec![Rational::new(-1, 2); 2];
        expect.extend(vec![Rational::new(-1, 5); 5]);
        expect.push(Rational::integer(0));
        assert_eq!(s.slopes, expect);
    }

    #[test]
    fn lattice_points_examples() {
        let np = NewtonPolygon::from_vertices(vec![(0, 1), (8, 0)]).unwrap();
        assert_eq!(lattice_points(&np), vec![(0, 1), (8, 0)]);

        let np = NewtonPolygon::from_vertices(vec![(0, 2), (2, 0)]).unwrap();
        assert_eq!(lattice_points(&np), vec![(0, 2), (1, 1), (2, 0)]);

        let np = NewtonPolygon::from_vertices(vec![(0, 1), (3, 0), (7, 0)]).unwrap();
        assert_eq!(
            lattice_points(&np),
            vec![(0, 1), (3, 0), (4, 0), (5, 0), (6, 0), (7, 0)]
        );
    }

    #[test]
    fn tame_witnesses_single_segment() {
        let np = NewtonPolygon::from_vertices(vec![(0, 1), (8, 0)]).unwrap();
        let ws = tame_cycle_witnesses(&np, 11);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].cycle_length, 8);
        assert_eq!(ws[0].kind, WitnessKind::Tame);
    }

    #[test]
    fn tame_witnesses_skip_segments_whose_width_p_divides() {
        let np = NewtonPolygon::from_vertices(vec![(0, 2), (2, 1), (7, 0), (8, 0)]).unwrap();
        let ws = tame_cycle_witnesses(&np, 5);
        // (0,2)-(2,1) is tame of width 2; (2,1)-(7,0) fails 5 | 5; the flat
        // width-1 tail qualifies vacuously.
        let lengths: Vec<u64> = ws.iter().map(|w| w.cycle_length).collect();
        assert_eq!(lengths, vec![2, 1]);
        assert!(ws.iter().all(|w| w.segment.start != (2, 1)));
    }

    #[test]
    fn tame_witness_eisenstein_case() {
        for k in [5i64, 9, 12] {
            let np = NewtonPolygon::from_vertices(vec![(0, 1), (k, 0)]).unwrap();
            let ws = tame_cycle_witnesses(&np, 11);
            if 11 % (k as u64) != 0 {
                assert_eq!(ws.len(), 1);
                assert_eq!(ws[0].cycle_length, k as u64);
            }
        }
    }

    #[test]
    fn ramification_witness_on_gamma_shaped_polygon() {
        let np = NewtonPolygon::from_vertices(vec![(0, 2), (2, 1), (7, 0), (8, 0)]).unwrap();
        let ws = ramification_order_witnesses(&np, 5);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].kind, WitnessKind::RamificationOrder);
        assert_eq!(ws[0].segment.start, (2, 1));
        assert_eq!(ws[0].segment.end, (7, 0));
        // At p = 2 the first segment qualifies instead: slope -1/2, width 2.
        let ws = ramification_order_witnesses(&np, 2);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].segment.end, (2, 1));
        // No segment has slope -1/3 and width 3.
        assert!(ramification_order_witnesses(&np, 3).is_empty());
    }

    #[test]
    fn np_of_int_poly_examples() {
        let np = np_of_int_poly(&[2, 3, 1], 2).unwrap();
        assert_eq!(np.vertices(), &[(0, 1), (1, 0), (2, 0)]);

        let np = np_of_int_poly(&[1, 1], 7).unwrap();
        assert_eq!(np.vertices(), &[(0, 0), (1, 0)]);

        let np = np_of_int_poly(&[4, 0, 1], 2).unwrap();
        assert_eq!(np.vertices(), &[(0, 2), (2, 0)]);

        assert_eq!(
            np_of_int_poly(&[0, 1, 1], 2),
            Err(PolygonError::ZeroEndpointCoefficient)
        );
    }

    #[test]
    fn pointwise_comparison() {
        let a = NewtonPolygon::from_vertices(vec![(0, 1), (8, 0)]).unwrap();
        let b = NewtonPolygon::from_vertices(vec![(0, 2), (8, 0)]).unwrap();
        assert!(np_pointwise_leq(&a, &a).unwrap());
        assert!(np_pointwise_leq(&a, &b).unwrap());
        assert!(!np_pointwise_leq(&b, &a).unwrap());
        let c = NewtonPolygon::from_vertices(vec![(0, 1), (3, 0)]).unwrap();
        assert!(np_pointwise_leq(&a, &c).is_err());
    }

    #[test]
    fn family_persistence() {
        let np = NewtonPolygon::from_vertices(vec![(0, 2), (2, 1), (7, 0), (8, 0)]).unwrap();
        let seg = Segment {
            start: (2, 1),
            end: (7, 0),
        };
        let zeros = vec![Valuation::Finite(0); 9];
        assert!(family_segment_persists(&np, &seg, &zeros).unwrap());

        let mut raised = zeros.clone();
        raised[2] = Valuation::Finite(1);
        assert!(!family_segment_persists(&np, &seg, &raised).unwrap());

        let off = Segment {
            start: (0, 2),
            end: (7, 0),
        };
        assert_eq!(
            family_segment_persists(&np, &off, &zeros),
            Err(PolygonError::SegmentNotOnPolygon)
        );
    }

    #[test]
    fn laguerre_member_keeps_gamma_segment_at_five() {
        // Unit multipliers C(8, j) for the degree-8 member; the segment
        // (2,1)-(7,0) persists because C(8,2) = 28 and C(8,7) = 8 are
        // coprime to 5.
        let trimmed = PolyInstance::new(Family::Trimmed, 3, 11).unwrap();
        let np = instance_polygon(&trimmed, 5).unwrap();
        let seg = Segment {
            start: (2, 1),
            end: (7, 0),
        };
        let laguerre = PolyInstance::new(Family::Laguerre, 3, 11).unwrap();
        let vals: Vec<Valuation> = (0..=8)
            .map(|j| unit_valuation(&laguerre, j, 5))
            .collect();
        assert!(family_segment_persists(&np, &seg, &vals).unwrap());
    }

    #[test]
    fn coefficient_valuations_trimmed_examples() {
        let inst = PolyInstance::new(Family::Trimmed, 3, 11).unwrap();
        let at11: Vec<u64> = coefficient_valuations(&inst, 11)
            .unwrap()
            .iter()
            .map(|pt| pt.valuation.finite().unwrap())
            .collect();
        assert_eq!(at11, vec![1, 1, 1, 1, 1, 1, 1, 1, 0]);

        let at5: Vec<u64> = coefficient_valuations(&inst, 5)
            .unwrap()
            .iter()
            .map(|pt| pt.valuation.finite().unwrap())
            .collect();
        assert_eq!(at5, vec![2, 2, 1, 1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn figure_instance_polygon() {
        let inst = PolyInstance::new(Family::Trimmed, 1_342_340, 1_342_347).unwrap();
        let vals: Vec<u64> = coefficient_valuations(&inst, 1_342_343)
            .unwrap()
            .iter()
            .map(|pt| pt.valuation.finite().unwrap())
            .collect();
        assert_eq!(vals, vec![1, 1, 1, 0, 0, 0, 0, 0]);
        let np = instance_polygon(&inst, 1_342_343).unwrap();
        assert_eq!(np.vertices(), &[(0, 1), (3, 0), (7, 0)]);
    }

    #[test]
    fn pointwise_dominance_of_laguerre_member() {
        let t = PolyInstance::new(Family::Trimmed, 3, 11).unwrap();
        let l = PolyInstance::new(Family::Laguerre, 3, 11).unwrap();
        let np_t = instance_polygon(&t, 5).unwrap();
        let np_l = instance_polygon(&l, 5).unwrap();
        assert!(np_pointwise_leq(&np_t, &np_l).unwrap());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(Rational::new(-1, 8).to_string(), "-1/8");
        assert_eq!(Rational::new(2, -4).to_string(), "-1/2");
        assert_eq!(Rational::integer(0).to_string(), "0");
        assert_eq!(Rational::new(-6, 3).to_string(), "-2");
    }

    #[test]
    fn polygon_report_shape() {
        let np = NewtonPolygon::from_vertices(vec![(0, 1), (3, 0), (7, 0)]).unwrap();
        let rep = PolygonReport::new(&np, 1_342_343);
        assert_eq!(rep.vertices, vec![[0, 1], [3, 0], [7, 0]]);
        assert_eq!(rep.slopes[0], "-1/3");
        assert_eq!(rep.slopes[6], "0");
    }
}
