use std::fmt;

use serde::Serialize;

use super::multisegment::Multisegment;
use super::segment::Segment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasicKind {
    Z,
    L,
}

/// `Z(Δ)` or `L(Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasicRep {
    pub kind: BasicKind,
    pub segment: Segment,
}

impl BasicRep {
    pub fn z(segment: Segment) -> Self {
        BasicRep { kind: BasicKind::Z, segment }
    }

    pub fn l(segment: Segment) -> Self {
        BasicRep { kind: BasicKind::L, segment }
    }

    /// Parses `Z[a,b]`, `Z([a,b])`, `L[a,b]` or `L([a,b])`.
    pub fn parse(text: &str) -> Option<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (kind, rest) = match t.chars().next()? {
            'Z' | 'z' => (BasicKind::Z, &t[1..]),
            'L' | 'l' => (BasicKind::L, &t[1..]),
            _ => return None,
        };
        let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        let inner = rest.strip_prefix('[')?.strip_suffix(']')?;
        let (a, b) = inner.split_once(',')?;
        let (a, b): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
        (a >= 1 && a <= b).then(|| BasicRep { kind, segment: Segment::of(a, b) })
    }

    /// Quiver parameter of the basic component: `Δ` for `Z`, the singletons of `Δ` for `L`.
    pub fn q_parameter(&self, n: usize) -> Multisegment {
        let single = Multisegment::single(n, self.segment);
        match self.kind {
            BasicKind::Z => single,
            BasicKind::L => single.singletons(),
        }
    }

    /// Subsegments sharing the relevant endpoint, longest first.
    pub fn subcomponents(&self) -> Vec<Segment> {
        let (a, b) = (self.segment.begin(), self.segment.end());
        match self.kind {
            BasicKind::Z => (a..=b).map(|a2| Segment::of(a2, b)).collect(),
            BasicKind::L => (a..=b).rev().map(|b2| Segment::of(a, b2)).collect(),
        }
    }

    /// Quiver parameter of the component attached to a subcomponent segment.
    pub fn sub_q_parameter(&self, sub: Segment, n: usize) -> Multisegment {
        BasicRep { kind: self.kind, segment: sub }.q_parameter(n)
    }
}

impl fmt::Display for BasicRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            BasicKind::Z => 'Z',
            BasicKind::L => 'L',
        };
        write!(f, "{k}({})", self.segment)
    }
}

/// Value of the σ-index; `NegInfinity` sorts below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigmaIndex {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for SigmaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaIndex::NegInfinity => write!(f, "-inf"),
            SigmaIndex::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for SigmaIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SigmaIndex::NegInfinity => s.serialize_str("-inf"),
            SigmaIndex::Finite(v) => s.serialize_u64(*v as u64),
        }
    }
}

pub fn sigma_index(m: &Multisegment, sigma: BasicRep) -> SigmaIndex {
    let delta = sigma.segment;
    if m.segments().iter().any(|s| !s.is_within(delta)) {
        return SigmaIndex::NegInfinity;
    }
    let site = match sigma.kind {
        BasicKind::Z => delta.end(),
        BasicKind::L => delta.begin(),
    };
    SigmaIndex::Finite(m.segments().iter().filter(|s| s.contains(site)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_index_examples() {
        let z = BasicRep::z(Segment::of(1, 3));
        let m = Multisegment::from_pairs(4, &[(1, 3), (2, 3), (1, 2)]);
        assert_eq!(sigma_index(&m, z), SigmaIndex::Finite(2));
        assert_eq!(sigma_index(&Multisegment::from_pairs(4, &[(1, 4)]), z), SigmaIndex::NegInfinity);
        assert_eq!(sigma_index(&Multisegment::empty(4), z), SigmaIndex::Finite(0));
        let l = BasicRep::l(Segment::of(1, 3));
        assert_eq!(sigma_index(&m, l), SigmaIndex::Finite(2));
        assert!(SigmaIndex::NegInfinity < SigmaIndex::Finite(0));
    }

    #[test]
    fn parsing_and_parameters() {
        let s = BasicRep::parse("L([2,4])").unwrap();
        assert_eq!(s, BasicRep::l(Segment::of(2, 4)));
        assert_eq!(BasicRep::parse("Z[1,2]").unwrap(), BasicRep::z(Segment::of(1, 2)));
        assert!(BasicRep::parse("X[1,2]").is_none());
        assert_eq!(s.q_parameter(5).to_string(), "[4,4]+[3,3]+[2,2]");
        assert_eq!(
            BasicRep::z(Segment::of(2, 4)).subcomponents(),
            vec![Segment::of(2, 4), Segment::of(3, 4), Segment::of(4, 4)]
        );
        assert_eq!(s.subcomponents(), vec![Segment::of(2, 4), Segment::of(2, 3), Segment::of(2, 2)]);
    }
}
