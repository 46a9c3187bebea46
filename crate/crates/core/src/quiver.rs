//! Continuous type-A quivers: breakpoints on the real line and an orientation
//! for each complementary segment.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// An exact rational position on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord(Rational64);

impl Coord {
    pub fn new(num: i64, den: i64) -> Option<Coord> {
        (den != 0).then(|| Coord(Rational64::new(num, den)))
    }

    pub fn int(n: i64) -> Coord {
        Coord(Rational64::from_integer(n))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(self) -> Rational64 {
        self.0
    }

    pub fn midpoint(self, other: Coord) -> Coord {
        Coord((self.0 + other.0) / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn abs(self) -> Coord {
        Coord(self.0.abs())
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }
}

impl From<i64> for Coord {
    fn from(n: i64) -> Coord {
        Coord::int(n)
    }
}

impl From<Rational64> for Coord {
    fn from(r: Rational64) -> Coord {
        Coord(r)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, rhs: Coord) -> Coord {
        Coord(self.0 + rhs.0)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, rhs: Coord) -> Coord {
        Coord(self.0 - rhs.0)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Direction of the structure maps on a segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Maps go toward larger coordinates.
    Ascending,
    /// Maps go toward smaller coordinates.
    Descending,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ascending => Orientation::Descending,
            Orientation::Descending => Orientation::Ascending,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// Receives maps from both sides.
    Sink,
    /// Sends maps to both sides.
    Source,
    /// Both segments carry maps leftward.
    FlowLeft,
    /// Both segments carry maps rightward.
    FlowRight,
}

/// Orientation of the window after reflecting at a sink or source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ReflectedOrientation {
    /// The window is reversed, so a sink becomes a source and vice versa.
    #[default]
    Flipped,
    /// The window keeps its orientation.
    Preserved,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("breakpoints must be strictly increasing (index {0})")]
    NotIncreasing(usize),
    #[error("expected {expected} segment orientations, found {found}")]
    SegmentCount { expected: usize, found: usize },
    #[error("breakpoint index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("breakpoint {0} lacks a neighbor on one side")]
    NoNeighbor(usize),
    #[error("breakpoint {index} is {kind:?}, not a sink or source")]
    NotExtremal { index: usize, kind: PointKind },
    #[error("{x} lies outside the window [{lo}, {hi}]")]
    OutOfWindow { x: Coord, lo: Coord, hi: Coord },
}

/// Breakpoints `S_0 < … < S_{n-1}` and `n + 1` segment orientations; segment
/// `i` is the open interval left of breakpoint `i`, segment `n` the right ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedQuiver {
    breakpoints: Vec<Coord>,
    segments: Vec<Orientation>,
}

impl OrientedQuiver {
    pub fn new(breakpoints: Vec<Coord>, segments: Vec<Orientation>) -> Result<OrientedQuiver, QuiverError> {
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(QuiverError::NotIncreasing(i + 1));
        }
        if segments.len() != breakpoints.len() + 1 {
            return Err(QuiverError::SegmentCount {
                expected: breakpoints.len() + 1,
                found: segments.len(),
            });
        }
        Ok(OrientedQuiver { breakpoints, segments })
    }

    pub fn breakpoints(&self) -> &[Coord] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Orientation] {
        &self.segments
    }

    pub fn breakpoint(&self, k: usize) -> Result<Coord, QuiverError> {
        self.breakpoints.get(k).copied().ok_or(QuiverError::IndexOutOfRange(k))
    }

    pub fn index_of(&self, x: Coord) -> Option<usize> {
        self.breakpoints.binary_search(&x).ok()
    }

    /// Index of the segment containing `x`, or the segment just right of `x`
    /// when `x` is a breakpoint.
    pub fn segment_index(&self, x: Coord) -> usize {
        self.breakpoints.partition_point(|&s| s <= x)
    }

    /// Orientation of the segment containing a non-breakpoint `x`.
    pub fn orientation_at(&self, x: Coord) -> Orientation {
        self.segments[self.segment_index(x)]
    }

    pub fn classify_point(&self, k: usize) -> Result<PointKind, QuiverError> {
        if k >= self.breakpoints.len() {
            return Err(QuiverError::IndexOutOfRange(k));
        }
        use Orientation::*;
        Ok(match (self.segments[k], self.segments[k + 1]) {
            (Ascending, Descending) => PointKind::Sink,
            (Descending, Ascending) => PointKind::Source,
            (Ascending, Ascending) => PointKind::FlowRight,
            (Descending, Descending) => PointKind::FlowLeft,
        })
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.interior_points(PointKind::Sink)
    }

    pub fn sources(&self) -> Vec<usize> {
        self.interior_points(PointKind::Source)
    }

    /// Indices of the given kind that have neighbors on both sides.
    fn interior_points(&self, kind: PointKind) -> Vec<usize> {
        (1..self.breakpoints.len().saturating_sub(1))
            .filter(|&k| self.classify_point(k) == Ok(kind))
            .collect()
    }

    /// Breakpoints across which the orientation does not change. They are
    /// legal but usually unintended.
    pub fn warnings(&self) -> Vec<String> {
        (0..self.breakpoints.len())
            .filter(|&k| matches!(self.classify_point(k), Ok(PointKind::FlowLeft | PointKind::FlowRight)))
            .map(|k| {
                format!(
                    "breakpoint {} at {} does not change orientation",
                    k, self.breakpoints[k]
                )
            })
            .collect()
    }

    /// The pair `(lo, hi)` with `lo ⪯ hi` when `x` and `y` are comparable.
    pub fn comparable(&self, x: Coord, y: Coord) -> Option<(Coord, Coord)> {
        if x == y {
            return Some((x, x));
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let first = self.segment_index(lo);
        let last = self.breakpoints.partition_point(|&s| s < hi);
        let dir = self.segments[first];
        if self.segments[first..=last].iter().any(|&d| d != dir) {
            return None;
        }
        match dir {
            Orientation::Ascending => Some((lo, hi)),
            Orientation::Descending => Some((hi, lo)),
        }
    }

    /// True when `x ⪯ y`.
    pub fn precedes(&self, x: Coord, y: Coord) -> bool {
        self.comparable(x, y).is_some_and(|(lo, _)| lo == x)
    }

    /// `(S_{k-1}, S_k, S_{k+1})` for a breakpoint with both neighbors.
    pub fn window(&self, k: usize) -> Result<(Coord, Coord, Coord), QuiverError> {
        let b = self.breakpoint(k)?;
        if k == 0 || k + 1 >= self.breakpoints.len() {
            return Err(QuiverError::NoNeighbor(k));
        }
        Ok((self.breakpoints[k - 1], b, self.breakpoints[k + 1]))
    }

    /// `x' = S_{k-1} + S_{k+1} - x` for `x` in the closed window.
    pub fn mirror_map(&self, k: usize, x: Coord) -> Result<Coord, QuiverError> {
        let (a, _, c) = self.window(k)?;
        if x < a || x > c {
            return Err(QuiverError::OutOfWindow { x, lo: a, hi: c });
        }
        Ok(a + c - x)
    }

    /// The reflected quiver with the window reversed.
    pub fn reflect_quiver(&self, k: usize) -> Result<OrientedQuiver, QuiverError> {
        self.reflect_quiver_with(k, ReflectedOrientation::Flipped)
    }

    pub fn reflect_quiver_with(&self, k: usize, mode: ReflectedOrientation) -> Result<OrientedQuiver, QuiverError> {
        let (a, b, c) = self.window(k)?;
        let kind = self.classify_point(k)?;
        if !matches!(kind, PointKind::Sink | PointKind::Source) {
            return Err(QuiverError::NotExtremal { index: k, kind });
        }
        let mut out = self.clone();
        out.breakpoints[k] = a + c - b;
        if mode == ReflectedOrientation::Flipped {
            out.segments[k] = self.segments[k].reversed();
            out.segments[k + 1] = self.segments[k + 1].reversed();
        }
        Ok(out)
    }
}

impl fmt::Display for OrientedQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = |o: Orientation| match o {
            Orientation::Ascending => "->",
            Orientation::Descending => "<-",
        };
        write!(f, "{}", arrow(self.segments[0]))?;
        for (s, o) in self.breakpoints.iter().zip(&self.segments[1..]) {
            write!(f, " {} {}", s, arrow(*o))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orientation::*;

    fn c(n: i64, d: i64) -> Coord {
        Coord::new(n, d).unwrap()
    }

    fn q013() -> OrientedQuiver {
        OrientedQuiver::new(
            vec![0.into(), 1.into(), 3.into()],
            vec![Ascending, Ascending, Descending, Descending],
        )
        .unwrap()
    }

    #[test]
    fn classify_example_points() {
        let q = q013();
        assert_eq!(q.classify_point(1), Ok(PointKind::Sink));
        assert_eq!(q.classify_point(0), Ok(PointKind::FlowRight));
        assert_eq!(q.classify_point(2), Ok(PointKind::FlowLeft));
        let s = OrientedQuiver::new(vec![0.into()], vec![Descending, Ascending]).unwrap();
        assert_eq!(s.classify_point(0), Ok(PointKind::Source));
        assert_eq!(q.sinks(), vec![1]);
        assert_eq!(q.warnings().len(), 2);
    }

    #[test]
    fn comparability() {
        let q = q013();
        assert_eq!(q.comparable(c(1, 2), 1.into()), Some((c(1, 2), 1.into())));
        assert_eq!(q.comparable(c(1, 2), 2.into()), None);
        assert_eq!(q.comparable(c(7, 3), c(7, 3)), Some((c(7, 3), c(7, 3))));
        assert_eq!(q.comparable(5.into(), 2.into()), Some((5.into(), 2.into())));
        assert_eq!(q.comparable((-4).into(), 1.into()), Some(((-4).into(), 1.into())));
        assert!(q.precedes(c(5, 2), 1.into()));
        assert!(!q.precedes(1.into(), c(5, 2)));
    }

    #[test]
    fn mirror_examples() {
        let q = q013();
        assert_eq!(q.mirror_map(1, 1.into()), Ok(2.into()));
        assert_eq!(q.mirror_map(1, 0.into()), Ok(3.into()));
        assert_eq!(q.mirror_map(1, c(5, 2)), Ok(c(1, 2)));
        assert_eq!(q.mirror_map(1, c(1, 2)), Ok(c(5, 2)));
        assert!(matches!(
            q.mirror_map(1, 4.into()),
            Err(QuiverError::OutOfWindow { .. })
        ));
        assert_eq!(q.mirror_map(0, 0.into()), Err(QuiverError::NoNeighbor(0)));
    }

    #[test]
    fn reflect_examples() {
        let q = q013();
        let r = q.reflect_quiver(1).unwrap();
        assert_eq!(r.breakpoints(), &[0.into(), 2.into(), 3.into()]);
        assert_eq!(r.segments(), &[Ascending, Descending, Ascending, Descending]);
        assert_eq!(r.classify_point(1), Ok(PointKind::Source));
        assert_eq!(r.reflect_quiver(1).unwrap(), q);

        // 1 -> 2 <- 3 <- 4 <- 5 becomes 1 <- 2 -> 3 <- 4 <- 5.
        let line = OrientedQuiver::new(
            (1..=5).map(Coord::int).collect(),
            vec![Ascending, Ascending, Descending, Descending, Descending, Descending],
        )
        .unwrap();
        let r = line.reflect_quiver(1).unwrap();
        assert_eq!(r.breakpoints(), line.breakpoints());
        assert_eq!(&r.segments()[1..5], &[Descending, Ascending, Descending, Descending]);
        assert!(matches!(line.reflect_quiver(2), Err(QuiverError::NotExtremal { .. })));
        assert_eq!(line.reflect_quiver(0), Err(QuiverError::NoNeighbor(0)));
    }

    #[test]
    fn preserved_orientation_keeps_a_sink() {
        let r = q013().reflect_quiver_with(1, ReflectedOrientation::Preserved).unwrap();
        assert_eq!(r.classify_point(1), Ok(PointKind::Sink));
        assert_eq!(r.breakpoint(1), Ok(2.into()));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            OrientedQuiver::new(vec![1.into(), 1.into()], vec![Ascending; 3]),
            Err(QuiverError::NotIncreasing(1))
        );
        assert!(matches!(
            OrientedQuiver::new(vec![1.into()], vec![Ascending]),
            Err(QuiverError::SegmentCount { expected: 2, found: 1 })
        ));
    }
}
