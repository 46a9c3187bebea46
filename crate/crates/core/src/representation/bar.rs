use std::cmp::Ordering;
use std::fmt;

use super::RepError;
use crate::quiver::Coord;

/// One end of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Infinite,
    Open(Coord),
    Closed(Coord),
}

impl Endpoint {
    pub fn coord(self) -> Option<Coord> {
        match self {
            Endpoint::Infinite => None,
            Endpoint::Open(x) | Endpoint::Closed(x) => Some(x),
        }
    }

    pub fn is_closed(self) -> bool {
        matches!(self, Endpoint::Closed(_))
    }
}

/// An interval of the line, the support of an interval module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bar {
    lo: Endpoint,
    hi: Endpoint,
}

impl Bar {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Bar, RepError> {
        let ok = match (lo.coord(), hi.coord()) {
            (Some(a), Some(b)) => a < b || (a == b && lo.is_closed() && hi.is_closed()),
            _ => true,
        };
        if ok {
            Ok(Bar { lo, hi })
        } else {
            Err(RepError::InvalidBar(format!("{lo:?} .. {hi:?}")))
        }
    }

    pub fn closed(a: Coord, b: Coord) -> Bar {
        Bar::new(Endpoint::Closed(a), Endpoint::Closed(b)).expect("a <= b")
    }

    pub fn closed_open(a: Coord, b: Coord) -> Bar {
        Bar::new(Endpoint::Closed(a), Endpoint::Open(b)).expect("a < b")
    }

    pub fn open_closed(a: Coord, b: Coord) -> Bar {
        Bar::new(Endpoint::Open(a), Endpoint::Closed(b)).expect("a < b")
    }

    pub fn open(a: Coord, b: Coord) -> Bar {
        Bar::new(Endpoint::Open(a), Endpoint::Open(b)).expect("a < b")
    }

    pub fn point(a: Coord) -> Bar {
        Bar::closed(a, a)
    }

    pub fn full() -> Bar {
        Bar {
            lo: Endpoint::Infinite,
            hi: Endpoint::Infinite,
        }
    }

    pub fn lo(&self) -> Endpoint {
        self.lo
    }

    pub fn hi(&self) -> Endpoint {
        self.hi
    }

    pub fn contains(&self, x: Coord) -> bool {
        let above = match self.lo {
            Endpoint::Infinite => true,
            Endpoint::Open(a) => x > a,
            Endpoint::Closed(a) => x >= a,
        };
        let below = match self.hi {
            Endpoint::Infinite => true,
            Endpoint::Open(b) => x < b,
            Endpoint::Closed(b) => x <= b,
        };
        above && below
    }

    /// Finite endpoint coordinates.
    pub fn endpoints(&self) -> impl Iterator<Item = Coord> {
        self.lo.coord().into_iter().chain(self.hi.coord())
    }

    fn lo_key(&self) -> (u8, Option<Coord>, u8) {
        match self.lo {
            Endpoint::Infinite => (0, None, 0),
            Endpoint::Closed(x) => (1, Some(x), 0),
            Endpoint::Open(x) => (1, Some(x), 1),
        }
    }

    fn hi_key(&self) -> (u8, Option<Coord>, u8) {
        match self.hi {
            Endpoint::Open(x) => (0, Some(x), 0),
            Endpoint::Closed(x) => (0, Some(x), 1),
            Endpoint::Infinite => (1, None, 0),
        }
    }
}

impl Ord for Bar {
    fn cmp(&self, other: &Bar) -> Ordering {
        (self.lo_key(), self.hi_key()).cmp(&(other.lo_key(), other.hi_key()))
    }
}

impl PartialOrd for Bar {
    fn partial_cmp(&self, other: &Bar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Endpoint::Closed(a), Endpoint::Closed(b)) = (self.lo, self.hi) {
            if a == b {
                return write!(f, "{{{a}}}");
            }
        }
        match self.lo {
            Endpoint::Infinite => write!(f, "(-inf")?,
            Endpoint::Open(a) => write!(f, "({a}")?,
            Endpoint::Closed(a) => write!(f, "[{a}")?,
        }
        match self.hi {
            Endpoint::Infinite => write!(f, ",+inf)"),
            Endpoint::Open(b) => write!(f, ",{b})"),
            Endpoint::Closed(b) => write!(f, ",{b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> Coord {
        Coord::new(n, d).unwrap()
    }

    #[test]
    fn validity() {
        assert!(Bar::new(Endpoint::Open(c(1, 1)), Endpoint::Closed(c(1, 1))).is_err());
        assert!(Bar::new(Endpoint::Closed(c(2, 1)), Endpoint::Closed(c(1, 1))).is_err());
        assert!(Bar::new(Endpoint::Closed(c(1, 1)), Endpoint::Closed(c(1, 1))).is_ok());
    }

    #[test]
    fn membership_and_display() {
        let b = Bar::closed_open(c(0, 1), c(5, 2));
        assert!(b.contains(c(0, 1)));
        assert!(!b.contains(c(5, 2)));
        assert_eq!(b.to_string(), "[0,5/2)");
        assert_eq!(Bar::point(c(1, 1)).to_string(), "{1}");
        assert_eq!(Bar::full().to_string(), "(-inf,+inf)");
    }

    #[test]
    fn ordering_by_lo_then_hi() {
        let mut bars = vec![
            Bar::open(c(0, 1), c(1, 1)),
            Bar::closed(c(0, 1), c(1, 1)),
            Bar::closed_open(c(0, 1), c(1, 1)),
            Bar::point(c(0, 1)),
            Bar::full(),
        ];
        bars.sort();
        let shown: Vec<_> = bars.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(-inf,+inf)", "{0}", "[0,1)", "[0,1]", "(0,1)"]);
    }
}
