use super::multisegment::Multisegment;
use super::segment::Segment;
use crate::error::{Error, Result};

/// Largest `k` accepted by the exhaustive pattern scan.
pub const PATTERN_SCAN_LIMIT: usize = 12;

/// A permutation of `{1..k}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &x in &images {
            if x == 0 || x > k || seen[x] {
                return Err(Error::Parse {
                    text: format!("{images:?}"),
                    reason: format!("not a permutation of 1..{k}"),
                });
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    /// Parses `2143`, `2,1,4,3` or `2 1 4 3`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let images: Option<Vec<usize>> = if t.contains(',') || t.contains(' ') {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().ok())
                .collect()
        } else {
            t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let images = images.ok_or_else(|| Error::Parse {
            text: text.to_string(),
            reason: "expected digits".into(),
        })?;
        Permutation::new(images)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of `{1..k}` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// `[1, w(1)+k-1] + … + [k, w(k)+k-1]` on `2k-1` sites.
    pub fn multisegment(&self) -> Multisegment {
        let k = self.k();
        let n = (2 * k).saturating_sub(1);
        let segs = self.0.iter().enumerate().map(|(i, &w)| Segment::of(i + 1, w + k - 1));
        Multisegment::new(n, segs).expect("segments within 2k-1 sites")
    }

    /// Whether some 4-subsequence is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: [usize; 4]) -> Result<bool> {
        let k = self.k();
        if k > PATTERN_SCAN_LIMIT {
            return Err(Error::BoundExceeded { limit: PATTERN_SCAN_LIMIT });
        }
        let w = &self.0;
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    for d in c + 1..k {
                        let vals = [w[a], w[b], w[c], w[d]];
                        let same = (0..4).all(|x| {
                            (0..4).all(|y| (vals[x] < vals[y]) == (pattern[x] < pattern[y]))
                        });
                        if same {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    pub fn avoids_1324_2143(&self) -> Result<bool> {
        Ok(!self.contains_pattern([1, 3, 2, 4])? && !self.contains_pattern([2, 1, 4, 3])?)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        let sep = if self.k() >= 10 { "," } else { "" };
        write!(f, "{}", parts.join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cw_identity() {
        let m = Permutation::identity(2).multisegment();
        assert_eq!(m.n(), 3);
        assert_eq!(m, Multisegment::from_pairs(3, &[(1, 2), (2, 3)]));
    }

    #[test]
    fn patterns() {
        assert!(!Permutation::parse("1324").unwrap().avoids_1324_2143().unwrap());
        assert!(!Permutation::parse("2143").unwrap().avoids_1324_2143().unwrap());
        for k in 1..=7 {
            assert!(Permutation::identity(k).avoids_1324_2143().unwrap());
        }
        assert!(Permutation::parse("4231").unwrap().avoids_1324_2143().unwrap());
        assert!(Permutation::identity(13).avoids_1324_2143().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!((2..=5).map(|k| Permutation::all(k).len()).sum::<usize>(), 152);
        assert_eq!(Permutation::all(1).len(), 1);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Permutation::parse("2,1,3").unwrap().images(), &[2, 1, 3]);
        assert_eq!(Permutation::parse("2 1 3").unwrap().images(), &[2, 1, 3]);
        assert!(Permutation::parse("113").is_err());
        assert!(Permutation::parse("1x").is_err());
    }
}
