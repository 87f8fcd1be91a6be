use crate::error::{Error, Result};
use crate::multiseg::{is_ladder, is_regular, DimVector, Multisegment, Segment};

/// Largest number of items any enumeration will produce.
pub const ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Filter {
    #[default]
    All,
    Regular,
    Ladder,
}

impl Filter {
    pub fn accepts(self, m: &Multisegment) -> bool {
        match self {
            Filter::All => true,
            Filter::Regular => is_regular(m),
            Filter::Ladder => is_ladder(m),
        }
    }
}

/// All segments on `n` sites, ordered by length and then by begin.
pub fn all_segments(n: usize) -> Vec<Segment> {
    (1..=n).flat_map(|len| (1..=n + 1 - len).map(move |a| Segment::of(a, a + len - 1))).collect()
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Multisegments on `n` sites with at most `max_segments` segments, each once,
/// grouped by size.
pub fn enumerate_multisegments(n: usize, max_segments: usize, filter: Filter) -> Result<Vec<Multisegment>> {
    let segs = all_segments(n);
    let s = segs.len();
    // multisets of size k from s kinds: C(s+k-1, k)
    let mut total: usize = 0;
    for k in 0..=max_segments {
        let c = if s == 0 { usize::from(k == 0) } else { binomial(s + k - 1, k).unwrap_or(usize::MAX) };
        total = total.saturating_add(c);
        if total > ENUMERATION_LIMIT {
            return Err(Error::BoundExceeded { limit: ENUMERATION_LIMIT });
        }
    }
    let mut out = Vec::with_capacity(total);
    for k in 0..=max_segments {
        let mut idx = vec![0usize; k];
        loop {
            if k == 0 || s > 0 {
                let m = Multisegment::new(n, idx.iter().map(|&i| segs[i])).expect("segments fit");
                if filter.accepts(&m) {
                    out.push(m);
                }
            }
            if k == 0 || s == 0 {
                break;
            }
            // next non-decreasing index tuple
            let Some(p) = (0..k).rev().find(|&p| idx[p] + 1 < s) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[p];
            }
        }
    }
    Ok(out)
}

/// All multisegments with graded dimension exactly `d`.
pub fn enumerate_by_dims(d: &DimVector, filter: Filter) -> Result<Vec<Multisegment>> {
    let n = d.n();
    let segs = all_segments(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut remaining = d.counts.clone();
    by_dims(&segs, None, &mut remaining, &mut chosen, &mut out, n, filter)?;
    Ok(out)
}

fn by_dims(
    segs: &[Segment],
    last: Option<Segment>,
    remaining: &mut Vec<usize>,
    chosen: &mut Vec<Segment>,
    out: &mut Vec<Multisegment>,
    n: usize,
    filter: Filter,
) -> Result<()> {
    // The lowest site with remaining dimension must be the begin of the next segment.
    let Some(first) = remaining.iter().position(|&c| c > 0) else {
        let m = Multisegment::new(n, chosen.iter().copied())?;
        if filter.accepts(&m) {
            if out.len() >= ENUMERATION_LIMIT {
                return Err(Error::BoundExceeded { limit: ENUMERATION_LIMIT });
            }
            out.push(m);
        }
        return Ok(());
    };
    for &s in segs {
        if s.begin() != first + 1 || s.sites().any(|x| remaining[x - 1] == 0) {
            continue;
        }
        // equal begins are taken with non-decreasing ends so each multiset appears once
        if last.is_some_and(|l| l.begin() == s.begin() && s.end() < l.end()) {
            continue;
        }
        for x in s.sites() {
            remaining[x - 1] -= 1;
        }
        chosen.push(s);
        by_dims(segs, Some(s), remaining, chosen, out, n, filter)?;
        chosen.pop();
        for x in s.sites() {
            remaining[x - 1] += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_enumeration() {
        let all = enumerate_multisegments(2, 1, Filter::All).unwrap();
        let shown: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["0", "[1,1]", "[2,2]", "[1,2]"]);
    }

    #[test]
    fn segment_count() {
        for n in 0..8 {
            assert_eq!(all_segments(n).len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn regular_filter() {
        let reg = enumerate_multisegments(2, 2, Filter::Regular).unwrap();
        assert!(!reg.contains(&Multisegment::from_pairs(2, &[(1, 1), (1, 2)])));
        assert!(reg.contains(&Multisegment::from_pairs(2, &[(1, 1), (2, 2)])));
    }

    #[test]
    fn no_duplicates_and_counts() {
        let all = enumerate_multisegments(3, 3, Filter::All).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        // C(6+k-1, k) for k = 0..=3
        assert_eq!(all.len(), 1 + 6 + 21 + 56);
    }

    #[test]
    fn by_dims_matches_filtered_enumeration() {
        let d = DimVector { counts: vec![1, 2, 1] };
        let mut a: Vec<String> = enumerate_by_dims(&d, Filter::All).unwrap().iter().map(|m| m.to_string()).collect();
        let mut b: Vec<String> = enumerate_multisegments(3, 4, Filter::All)
            .unwrap()
            .into_iter()
            .filter(|m| m.grdim() == d)
            .map(|m| m.to_string())
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn guard() {
        assert!(matches!(enumerate_multisegments(8, 8, Filter::All), Err(Error::BoundExceeded { .. })));
    }
}
