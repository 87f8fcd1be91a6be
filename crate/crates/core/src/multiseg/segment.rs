use std::fmt;

use crate::error::{Error, Result};

/// The interval `[begin, end]` of quiver vertices, `1 <= begin <= end`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    begin: usize,
    end: usize,
}

impl Segment {
    /// Validated constructor against ambient size `n`.
    pub fn new(begin: usize, end: usize, n: usize) -> Result<Self> {
        if begin < 1 || begin > end || end > n {
            return Err(Error::InvalidSegment { begin, end, n });
        }
        Ok(Segment { begin, end })
    }

    /// Constructor without an ambient bound; panics on `begin > end` or `begin == 0`.
    pub fn of(begin: usize, end: usize) -> Self {
        assert!(begin >= 1 && begin <= end, "invalid segment [{begin},{end}]");
        Segment { begin, end }
    }

    pub fn begin(self) -> usize {
        self.begin
    }

    pub fn end(self) -> usize {
        self.end
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.end - self.begin + 1
    }

    pub fn contains(self, site: usize) -> bool {
        self.begin <= site && site <= self.end
    }

    pub fn is_within(self, other: Segment) -> bool {
        other.begin <= self.begin && self.end <= other.end
    }

    pub fn sites(self) -> std::ops::RangeInclusive<usize> {
        self.begin..=self.end
    }

    /// Linking order: `[a,b] ≺ [c,d]` iff `a+1 <= c <= b+1 <= d`.
    pub fn precedes(self, other: Segment) -> bool {
        self.begin < other.begin && other.begin <= self.end + 1 && self.end < other.end
    }

    /// `self ≺ ⁺other`, evaluated formally so that it also makes sense when
    /// `⁺other` leaves the ambient range.
    pub fn precedes_shifted(self, other: Segment) -> bool {
        self.begin <= other.begin && other.begin <= self.end && self.end <= other.end
    }

    /// `[a,b] -> [a+1,b+1]`, absent when `b+1 > n`.
    pub fn shift_right(self, n: usize) -> Option<Segment> {
        (self.end < n).then(|| Segment { begin: self.begin + 1, end: self.end + 1 })
    }

    /// `[a,b] -> [a+1,b]`, absent when `a == b`.
    pub fn truncate_left(self) -> Option<Segment> {
        (self.begin < self.end).then(|| Segment { begin: self.begin + 1, end: self.end })
    }

    /// `[a,b] -> [n+1-b, n+1-a]`.
    pub fn dual(self, n: usize) -> Segment {
        debug_assert!(self.end <= n);
        Segment { begin: n + 1 - self.end, end: n + 1 - self.begin }
    }

    pub fn singletons(self) -> impl Iterator<Item = Segment> {
        self.sites().map(|s| Segment { begin: s, end: s })
    }
}

/// Canonical order: begin descending, then end descending.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (other.begin, other.end).cmp(&(self.begin, self.end))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for Segment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.begin, self.end].serialize(s)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.begin, self.end)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
