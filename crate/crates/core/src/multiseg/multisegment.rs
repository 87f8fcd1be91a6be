use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::segment::Segment;
use crate::error::{Error, Result};

/// Graded dimension vector; `counts[s-1]` is the dimension at site `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector {
    pub counts: Vec<usize>,
}

impl DimVector {
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Dimension at the 1-based site `s`; zero outside `1..=n`.
    pub fn at(&self, s: usize) -> usize {
        if s == 0 || s > self.counts.len() {
            0
        } else {
            self.counts[s - 1]
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn reversed(&self) -> DimVector {
        DimVector { counts: self.counts.iter().rev().copied().collect() }
    }

    /// Site-wise `self <= other`.
    pub fn fits_in(&self, other: &DimVector) -> bool {
        self.counts.len() == other.counts.len()
            && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }
}

impl std::ops::Add for &DimVector {
    type Output = DimVector;

    fn add(self, other: &DimVector) -> DimVector {
        assert_eq!(self.n(), other.n());
        DimVector { counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite multiset of segments on sites `1..=n`, kept in canonical order.
///
/// Invariant: `segments` is sorted by begin descending then end descending,
/// so `segments[i] ⊀ segments[j]` for `i < j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multisegment {
    n: usize,
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn empty(n: usize) -> Self {
        Multisegment { n, segments: Vec::new() }
    }

    pub fn new(n: usize, segments: impl IntoIterator<Item = Segment>) -> Result<Self> {
        let mut segments: Vec<Segment> = segments.into_iter().collect();
        for s in &segments {
            if s.end() > n {
                return Err(Error::InvalidSegment { begin: s.begin(), end: s.end(), n });
            }
        }
        segments.sort();
        Ok(Multisegment { n, segments })
    }

    /// Builds from `(begin, end)` pairs; panics on invalid input.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let segs = pairs.iter().map(|&(a, b)| Segment::new(a, b, n).expect("valid segment"));
        Multisegment::new(n, segs).expect("valid multisegment")
    }

    pub fn single(n: usize, s: Segment) -> Self {
        Multisegment::new(n, [s]).expect("segment within ambient range")
    }

    /// Parses `0 | seg (+ seg)*` against an explicit ambient size.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let segs = parse_segments(text)?;
        let mut out = Vec::with_capacity(segs.len());
        for (a, b) in segs {
            out.push(Segment::new(a, b, n)?);
        }
        Multisegment::new(n, out)
    }

    /// Parses with the ambient size taken as the largest end (0 for `"0"`).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let n = parse_segments(text)?.iter().map(|&(_, b)| b).max().unwrap_or(0);
        Multisegment::parse(text, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Same segments over a larger ambient range.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Multisegment::new(n, self.segments.iter().copied())
    }

    pub fn grdim(&self) -> DimVector {
        let mut counts = vec![0; self.n];
        for s in &self.segments {
            for site in s.sites() {
                counts[site - 1] += 1;
            }
        }
        DimVector { counts }
    }

    pub fn dual(&self) -> Multisegment {
        let n = self.n;
        let mut segments: Vec<Segment> = self.segments.iter().map(|s| s.dual(n)).collect();
        segments.sort();
        Multisegment { n, segments }
    }

    /// Multiset sum. Panics if the ambient sizes differ.
    pub fn sum(&self, other: &Multisegment) -> Multisegment {
        assert_eq!(self.n, other.n, "ambient sizes differ");
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        segments.sort();
        Multisegment { n: self.n, segments }
    }

    pub fn plus(&self, s: Segment) -> Multisegment {
        assert!(s.end() <= self.n);
        let mut segments = self.segments.clone();
        segments.push(s);
        segments.sort();
        Multisegment { n: self.n, segments }
    }

    /// Removes one copy of `s`; `None` if absent.
    pub fn minus(&self, s: Segment) -> Option<Multisegment> {
        let pos = self.segments.iter().position(|&t| t == s)?;
        let mut segments = self.segments.clone();
        segments.remove(pos);
        Some(Multisegment { n: self.n, segments })
    }

    pub fn multiplicity(&self, s: Segment) -> usize {
        self.segments.iter().filter(|&&t| t == s).count()
    }

    pub fn max_site(&self) -> Option<usize> {
        self.segments.iter().map(|s| s.end()).max()
    }

    pub fn min_site(&self) -> Option<usize> {
        self.segments.iter().map(|s| s.begin()).min()
    }

    /// All segments replaced by their singletons (same grading).
    pub fn singletons(&self) -> Multisegment {
        let segs = self.segments.iter().flat_map(|s| s.singletons());
        Multisegment::new(self.n, segs).expect("sites within range")
    }

    pub fn partition(&self, pred: impl Fn(Segment) -> bool) -> (Multisegment, Multisegment) {
        let (yes, no): (Vec<Segment>, Vec<Segment>) = self.segments.iter().partition(|&&s| pred(s));
        (Multisegment { n: self.n, segments: yes }, Multisegment { n: self.n, segments: no })
    }
}

fn parse_error(text: &str, reason: impl Into<String>) -> Error {
    Error::Parse { text: text.to_string(), reason: reason.into() }
}

fn parse_segments(text: &str) -> Result<Vec<(usize, usize)>> {
    let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if body == "0" {
        return Ok(Vec::new());
    }
    if body.is_empty() {
        return Err(parse_error(text, "empty input"));
    }
    let mut out = Vec::new();
    for piece in body.split('+') {
        let inner = piece
            .strip_prefix('[')
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| parse_error(text, format!("`{piece}` is not of the form [a,b]")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| parse_error(text, format!("`{piece}` lacks a comma")))?;
        let a: usize = a.parse().map_err(|_| parse_error(text, format!("bad integer `{a}`")))?;
        let b: usize = b.parse().map_err(|_| parse_error(text, format!("bad integer `{b}`")))?;
        out.push((a, b));
    }
    Ok(out)
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Multisegment::parse_infer(s)
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.segments.iter().map(|s| [s.begin(), s.end()]).collect();
        let mut st = serializer.serialize_struct("Multisegment", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("segments", &pairs)?;
        st.end()
    }
}

/// Index pairs `(i, j)` into the canonical orderings of `m` and `n`:
/// `u` holds `Γ_j ≺ Δ_i`, `v` holds `Γ_j ≺ ⁺Δ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub u: Vec<(usize, usize)>,
    pub v: Vec<(usize, usize)>,
}

pub fn index_sets(m: &Multisegment, n: &Multisegment) -> IndexSets {
    let mut u = Vec::new();
    let mut v = Vec::new();
    for (i, &d) in m.segments().iter().enumerate() {
        for (j, &g) in n.segments().iter().enumerate() {
            if g.precedes(d) {
                u.push((i, j));
            }
            if g.precedes_shifted(d) {
                v.push((i, j));
            }
        }
    }
    IndexSets { u, v }
}

/// `(dim Hom_Q(M(m), M(n)), dim Ext¹_Q(M(m), M(n)))` from the segment formulas.
pub fn quiver_dims(m: &Multisegment, n: &Multisegment) -> (usize, usize) {
    let hom = index_sets(m, n).v.len();
    let ext = m
        .segments()
        .iter()
        .map(|&d| n.segments().iter().filter(|&&g| d.precedes(g)).count())
        .sum();
    (hom, ext)
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (n={})", self.n)
    }
}
