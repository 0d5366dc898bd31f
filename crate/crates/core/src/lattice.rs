//! Integral convex polygons, their lattice points, Minkowski sums and the
//! exponent box `H = {0, .., q-2}^r`.
//!
//! All geometry is exact integer arithmetic.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("polytope has no vertices")]
    Empty,
    #[error("exponents {first:?} and {second:?} coincide modulo {modulus} and define the same torus function")]
    ExponentCollision {
        first: Vec<i64>,
        second: Vec<i64>,
        modulus: i64,
    },
    #[error("simplex leg {a} is outside 0..={max}")]
    OutOfRange { a: i64, max: i64 },
    #[error("exponent dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("exponent {0:?} is not in the box H = {{0..={1}}}^r")]
    NotInBox(Vec<i64>, i64),
}

type Point = [i64; 2];

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex lattice polygon with vertices in counterclockwise order, no three
/// consecutive vertices collinear. A single point or a segment is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    vertices: Vec<Point>,
}

impl LatticePolytope {
    /// Convex hull of the given integer points.
    pub fn from_points(points: &[Point]) -> Result<Self, LatticeError> {
        if points.is_empty() {
            return Err(LatticeError::Empty);
        }
        Ok(Self {
            vertices: convex_hull(points),
        })
    }

    /// The right triangle with vertices (0,0), (a,0), (0,a).
    pub fn simplex(a: i64) -> Self {
        Self::from_points(&[[0, 0], [a, 0], [0, a]]).expect("nonempty")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// `Some(a)` when this polygon is the axis simplex with leg `a >= 0`.
    pub fn as_axis_simplex(&self) -> Option<i64> {
        let a = self.vertices.iter().map(|v| v[0].max(v[1])).max()?;
        (a >= 0 && *self == Self::simplex(a)).then_some(a)
    }

    /// Integer points of the closed polygon, via a bounding-box scan and
    /// half-plane tests against every edge.
    pub fn lattice_points(&self) -> ExponentSet {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for v in &self.vertices {
            for i in 0..2 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let n = self.vertices.len();
        let mut pts = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let p = [x, y];
                // for a segment the two opposite edges force collinearity
                let inside = n == 1
                    || (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0);
                if inside {
                    pts.push(vec![x, y]);
                }
            }
        }
        ExponentSet::new(2, pts).expect("points are two-dimensional")
    }

    /// Convex hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let sums: Vec<Point> = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| [a[0] + b[0], a[1] + b[1]]))
            .collect();
        Self {
            vertices: convex_hull(&sums),
        }
    }
}

/// Andrew's monotone chain; returns CCW vertices without collinear points.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    // all points collinear: the chains collapse to the two endpoints
    hull.dedup();
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    hull
}

/// A sorted, duplicate-free set of integer exponent vectors of dimension `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExponentSet {
    r: usize,
    points: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for ExponentSet {
    type Error = LatticeError;

    fn try_from(points: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        let r = points.first().map_or(0, Vec::len);
        Self::new(r, points)
    }
}

impl From<ExponentSet> for Vec<Vec<i64>> {
    fn from(set: ExponentSet) -> Self {
        set.points
    }
}

impl ExponentSet {
    pub fn new(r: usize, mut points: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if let Some(p) = points.iter().find(|p| p.len() != r) {
            return Err(LatticeError::DimensionMismatch(r, p.len()));
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self { r, points })
    }

    pub fn empty(r: usize) -> Self {
        Self { r, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.iter()
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(u)).is_ok()
    }

    pub fn position(&self, u: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(u)).ok()
    }

    /// `-U`.
    pub fn opposite(&self) -> Self {
        let points = self.points.iter().map(|p| p.iter().map(|&x| -x).collect()).collect();
        Self::new(self.r, points).expect("same dimension")
    }

    /// `{u + v : u in self, v in other}`.
    pub fn sumset(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.r != other.r {
            return Err(LatticeError::DimensionMismatch(self.r, other.r));
        }
        let set: BTreeSet<Vec<i64>> = self
            .points
            .iter()
            .flat_map(|u| other.points.iter().map(move |v| u.iter().zip(v).map(|(a, b)| a + b).collect()))
            .collect();
        Ok(Self {
            r: self.r,
            points: set.into_iter().collect(),
        })
    }

    /// Reduces every coordinate modulo `q - 1` into `{0, .., q-2}`. Two
    /// distinct exponents that reduce to the same point are the same function
    /// on the torus, so that is an error rather than a silent rank drop.
    pub fn reduce_into_h(&self, q: u32) -> Result<Self, LatticeError> {
        let modulus = q as i64 - 1;
        let mut reduced: Vec<(Vec<i64>, &Vec<i64>)> = self
            .points
            .iter()
            .map(|p| (p.iter().map(|x| x.rem_euclid(modulus)).collect(), p))
            .collect();
        reduced.sort_unstable();
        if let Some(w) = reduced.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(LatticeError::ExponentCollision {
                first: w[0].1.clone(),
                second: w[1].1.clone(),
                modulus,
            });
        }
        Ok(Self {
            r: self.r,
            points: reduced.into_iter().map(|(p, _)| p).collect(),
        })
    }

    /// Errors unless every exponent already lies in `H`.
    pub fn require_in_h(&self, q: u32) -> Result<(), LatticeError> {
        let max = q as i64 - 2;
        match self.points.iter().find(|p| p.iter().any(|&x| x < 0 || x > max)) {
            Some(p) => Err(LatticeError::NotInBox(p.clone(), max)),
            None => Ok(()),
        }
    }

    /// `reduce(-H \ -U) = H \ reduce(-U)`, the exponent set of the dual
    /// toric code.
    pub fn complement_in_h(&self, q: u32) -> Result<Self, LatticeError> {
        let neg = self.opposite().reduce_into_h(q)?;
        let points = BoxH::new(q, self.r)
            .points()
            .filter(|p| !neg.contains(p))
            .collect();
        Ok(Self { r: self.r, points })
    }
}

/// The box `H = {0, .., q-2}^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxH {
    pub q: u32,
    pub r: usize,
}

impl BoxH {
    pub fn new(q: u32, r: usize) -> Self {
        Self { q, r }
    }

    pub fn len(&self) -> usize {
        (self.q as usize - 1).pow(self.r as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> {
        let side = self.q as usize - 1;
        let r = self.r;
        (0..self.len()).map(move |mut idx| {
            let mut p = vec![0i64; r];
            for slot in p.iter_mut().rev() {
                *slot = (idx % side) as i64;
                idx /= side;
            }
            p
        })
    }

    pub fn as_set(&self) -> ExponentSet {
        ExponentSet {
            r: self.r,
            points: self.points().collect(),
        }
    }
}

/// Minimum distance `(q-1)(q-1-a)` of the toric code of the axis simplex
/// with leg `a` over the full two-dimensional torus.
pub fn simplex_distance(q: u32, a: i64) -> Result<usize, LatticeError> {
    let max = q as i64 - 2;
    if !(0..=max).contains(&a) {
        return Err(LatticeError::OutOfRange { a, max });
    }
    Ok(((q as i64 - 1) * (q as i64 - 1 - a)) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pts: &[[i64; 2]]) -> ExponentSet {
        ExponentSet::new(2, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(LatticePolytope::simplex(8).lattice_points().len(), 45);
        for a in 0..=20 {
            assert_eq!(
                LatticePolytope::simplex(a).lattice_points().len() as i64,
                (a + 1) * (a + 2) / 2
            );
        }
        assert_eq!(
            LatticePolytope::simplex(1).lattice_points(),
            set(&[[0, 0], [1, 0], [0, 1]])
        );
    }

    #[test]
    fn degenerate_polytopes() {
        let pt = LatticePolytope::from_points(&[[0, 0]]).unwrap();
        assert_eq!(pt.lattice_points(), set(&[[0, 0]]));
        let seg = LatticePolytope::from_points(&[[0, 0], [2, 2], [1, 1]]).unwrap();
        assert_eq!(seg.vertices(), &[[0, 0], [2, 2]]);
        assert_eq!(seg.lattice_points(), set(&[[0, 0], [1, 1], [2, 2]]));
        assert_eq!(LatticePolytope::from_points(&[]), Err(LatticeError::Empty));
    }

    #[test]
    fn hull_drops_collinear_and_interior() {
        let p = LatticePolytope::from_points(&[[0, 0], [1, 0], [2, 0], [0, 2], [1, 1], [0, 1]]).unwrap();
        assert_eq!(p, LatticePolytope::simplex(2));
        assert_eq!(p.vertices(), &[[0, 0], [2, 0], [0, 2]]);
    }

    #[test]
    fn minkowski_examples() {
        let s = LatticePolytope::simplex(4).minkowski_sum(&LatticePolytope::simplex(8));
        assert_eq!(s.vertices(), &[[0, 0], [12, 0], [0, 12]]);
        assert_eq!(s.as_axis_simplex(), Some(12));

        let p = LatticePolytope::from_points(&[[0, 0], [3, 1], [1, 4]]).unwrap();
        let origin = LatticePolytope::from_points(&[[0, 0]]).unwrap();
        assert_eq!(p.minkowski_sum(&origin), p);

        let h = LatticePolytope::from_points(&[[0, 0], [1, 0]]).unwrap();
        let v = LatticePolytope::from_points(&[[0, 0], [0, 1]]).unwrap();
        let sq = h.minkowski_sum(&v);
        assert_eq!(sq.vertices(), &[[0, 0], [1, 0], [1, 1], [0, 1]]);
        assert_eq!(sq.lattice_points().len(), 4);
    }

    #[test]
    fn axis_simplex_detection() {
        assert_eq!(LatticePolytope::simplex(0).as_axis_simplex(), Some(0));
        assert_eq!(LatticePolytope::simplex(5).as_axis_simplex(), Some(5));
        let other = LatticePolytope::from_points(&[[0, 0], [2, 0], [0, 1]]).unwrap();
        assert_eq!(other.as_axis_simplex(), None);
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(set(&[[0, 0]]).opposite(), set(&[[0, 0]]));
        assert_eq!(set(&[[1, 0], [0, 1]]).opposite(), set(&[[-1, 0], [0, -1]]));
    }

    #[test]
    fn reduction() {
        assert_eq!(set(&[[-1, 0]]).reduce_into_h(5).unwrap(), set(&[[3, 0]]));
        let u = set(&[[0, 0], [3, 2], [1, 1]]);
        assert_eq!(u.reduce_into_h(5).unwrap(), u);
        assert!(matches!(
            set(&[[0, 0], [4, 0]]).reduce_into_h(5),
            Err(LatticeError::ExponentCollision { modulus: 4, .. })
        ));
        assert!(set(&[[0, 4]]).require_in_h(5).is_err());
        assert!(set(&[[0, 3]]).require_in_h(5).is_ok());
    }

    #[test]
    fn complement_examples() {
        let h = BoxH::new(5, 2);
        assert_eq!(h.len(), 16);
        assert!(h.as_set().complement_in_h(5).unwrap().is_empty());
        assert_eq!(ExponentSet::empty(2).complement_in_h(5).unwrap(), h.as_set());

        // set-arithmetic oracle: H minus the reduced negatives
        let u = LatticePolytope::simplex(1).lattice_points();
        let comp = u.complement_in_h(5).unwrap();
        assert_eq!(comp.len(), 13);
        let removed: Vec<Vec<i64>> = h.points().filter(|p| !comp.contains(p)).collect();
        assert_eq!(removed, vec![vec![0, 0], vec![0, 3], vec![3, 0]]);
    }

    #[test]
    fn simplex_distance_values() {
        assert_eq!(simplex_distance(16, 4).unwrap(), 165);
        assert_eq!(simplex_distance(16, 8).unwrap(), 105);
        assert_eq!(simplex_distance(16, 12).unwrap(), 45);
        assert_eq!(simplex_distance(5, 1).unwrap(), 12);
        assert_eq!(
            simplex_distance(16, 15),
            Err(LatticeError::OutOfRange { a: 15, max: 14 })
        );
    }

    fn arb_polygon() -> impl Strategy<Value = LatticePolytope> {
        prop::collection::vec((-4i64..6, -4i64..6), 1..6).prop_map(|pts| {
            let pts: Vec<Point> = pts.into_iter().map(|(x, y)| [x, y]).collect();
            LatticePolytope::from_points(&pts).unwrap()
        })
    }

    fn arb_subset_of_h(q: u32) -> impl Strategy<Value = ExponentSet> {
        let side = q as usize - 1;
        prop::collection::vec(any::<bool>(), side * side).prop_map(move |mask| {
            let pts = BoxH::new(q, 2)
                .points()
                .zip(mask)
                .filter_map(|(p, keep)| keep.then_some(p))
                .collect();
            ExponentSet::new(2, pts).unwrap()
        })
    }

    proptest! {
        #[test]
        fn minkowski_contains_sumset(p in arb_polygon(), q in arb_polygon()) {
            let sum = p.minkowski_sum(&q).lattice_points();
            let sumset = p.lattice_points().sumset(&q.lattice_points()).unwrap();
            for u in sumset.iter() {
                prop_assert!(sum.contains(u));
            }
        }

        #[test]
        fn vertices_are_lattice_points(p in arb_polygon()) {
            let pts = p.lattice_points();
            for v in p.vertices() {
                prop_assert!(pts.contains(v));
            }
        }

        #[test]
        fn opposite_is_involution(u in prop::collection::vec(prop::collection::vec(-9i64..9, 3), 0..12)) {
            let u = ExponentSet::new(3, u).unwrap();
            prop_assert_eq!(u.opposite().opposite(), u);
        }

        #[test]
        fn reduce_is_idempotent(u in arb_subset_of_h(7)) {
            let shifted = ExponentSet::new(2, u.iter().map(|p| vec![p[0] - 6, p[1] + 12]).collect()).unwrap();
            let once = shifted.reduce_into_h(7).unwrap();
            prop_assert_eq!(&once, &u);
            prop_assert_eq!(once.reduce_into_h(7).unwrap(), once);
        }

        #[test]
        fn double_complement(u in arb_subset_of_h(5)) {
            let c = u.complement_in_h(5).unwrap();
            prop_assert_eq!(c.len(), 16 - u.len());
            prop_assert_eq!(c.complement_in_h(5).unwrap(), u);
        }
    }
}
