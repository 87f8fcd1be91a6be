use std::collections::VecDeque;

use serde::Serialize;

use super::multisegment::Multisegment;
use super::segment::Segment;
use crate::error::{Error, Result};

pub fn is_regular(m: &Multisegment) -> bool {
    let segs = m.segments();
    let mut begins: Vec<usize> = segs.iter().map(|s| s.begin()).collect();
    let mut ends: Vec<usize> = segs.iter().map(|s| s.end()).collect();
    begins.sort_unstable();
    ends.sort_unstable();
    begins.windows(2).all(|w| w[0] != w[1]) && ends.windows(2).all(|w| w[0] != w[1])
}

/// Quasi-lamina test: begins and ends can be simultaneously strictly increasing.
pub fn is_ladder(m: &Multisegment) -> bool {
    // Canonical order lists begins descending, so ends must descend strictly too.
    m.segments()
        .windows(2)
        .all(|w| w[0].begin() > w[1].begin() && w[0].end() > w[1].end())
}

/// True when the comparability graph of `≺` has at least two components.
pub fn is_split(m: &Multisegment) -> bool {
    let segs = m.segments();
    let k = segs.len();
    if k < 2 {
        return false;
    }
    let mut seen = vec![false; k];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..k {
            if !seen[j] && (segs[i].precedes(segs[j]) || segs[j].precedes(segs[i])) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.iter().any(|&s| !s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PatternType {
    #[serde(rename = "4231")]
    T4231,
    #[serde(rename = "3412")]
    T3412,
}

/// A submultisegment `Δ_1 + … + Δ_k` listed in the order of the pattern definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub kind: PatternType,
    pub segments: Vec<Segment>,
}

impl PatternWitness {
    /// Checks the defining conditions directly.
    pub fn is_valid(&self) -> bool {
        let d = &self.segments;
        let k = d.len();
        if k < 4 {
            return false;
        }
        for i in 0..k {
            for j in 0..i {
                if d[i] == d[j] {
                    return false;
                }
            }
        }
        // 1-based accessors keep the conditions readable.
        let b = |i: usize| d[i - 1].begin();
        let e = |i: usize| d[i - 1].end();
        let prec = |i: usize, j: usize| d[i - 1].precedes(d[j - 1]);
        match self.kind {
            PatternType::T4231 => {
                (3..=k).all(|i| prec(i, i - 1))
                    && b(k) < b(1)
                    && b(1) < b(k - 1)
                    && e(3) < e(1)
                    && e(1) < e(2)
            }
            PatternType::T3412 => {
                (4..=k).all(|i| prec(i, i - 1))
                    && prec(2, 1)
                    && b(2) < b(k)
                    && b(k) < b(1)
                    && b(1) < b(k - 1)
                    && e(4) < e(2)
                    && e(2) < e(3)
                    && e(3) < e(1)
            }
        }
    }
}

/// Balanced test. `Ok(None)` means balanced; otherwise a witness.
pub fn balanced_witness(m: &Multisegment) -> Result<Option<PatternWitness>> {
    if !is_regular(m) {
        return Err(Error::precondition(format!("{m} is not regular; balance is defined for regular multisegments only")));
    }
    let segs = m.segments();
    let graph = PrecedenceGraph::new(segs);
    Ok(find_4231(segs, &graph).or_else(|| find_3412(segs, &graph)))
}

pub fn is_balanced(m: &Multisegment) -> Result<bool> {
    Ok(balanced_witness(m)?.is_none())
}

/// `below[i]` lists `j` with `segs[j] ≺ segs[i]`.
struct PrecedenceGraph {
    below: Vec<Vec<usize>>,
}

impl PrecedenceGraph {
    fn new(segs: &[Segment]) -> Self {
        let below = segs
            .iter()
            .map(|&s| (0..segs.len()).filter(|&j| segs[j].precedes(s)).collect())
            .collect();
        PrecedenceGraph { below }
    }

    /// Descending `≺`-paths from `start` avoiding `banned`: returns the parent
    /// array (`usize::MAX` = unreached, `start` is its own parent).
    fn descend(&self, start: usize, banned: &[usize]) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.below.len()];
        parent[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.below[i] {
                if parent[j] == usize::MAX && !banned.contains(&j) {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        parent
    }
}

fn path_to(parent: &[usize], target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut cur = target;
    while parent[cur] != cur {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn find_4231(segs: &[Segment], g: &PrecedenceGraph) -> Option<PatternWitness> {
    let k = segs.len();
    for d1 in 0..k {
        let (b1, e1) = (segs[d1].begin(), segs[d1].end());
        for d2 in 0..k {
            if d2 == d1 || segs[d2].end() <= e1 {
                continue;
            }
            for &d3 in &g.below[d2] {
                if d3 == d1 || segs[d3].end() >= e1 {
                    continue;
                }
                let parent = g.descend(d3, &[d1]);
                for y in 0..k {
                    if parent[y] == usize::MAX || segs[y].begin() <= b1 {
                        continue;
                    }
                    if let Some(&z) = g.below[y].iter().find(|&&z| z != d1 && segs[z].begin() < b1) {
                        let mut chain = vec![d1, d2];
                        chain.extend(path_to(&parent, y));
                        chain.push(z);
                        return Some(PatternWitness {
                            kind: PatternType::T4231,
                            segments: chain.into_iter().map(|i| segs[i]).collect(),
                        });
                    }
                }
            }
        }
    }
    None
}

fn find_3412(segs: &[Segment], g: &PrecedenceGraph) -> Option<PatternWitness> {
    let k = segs.len();
    for d1 in 0..k {
        let (b1, e1) = (segs[d1].begin(), segs[d1].end());
        for &d2 in &g.below[d1] {
            let (b2, e2) = (segs[d2].begin(), segs[d2].end());
            for d3 in 0..k {
                let e3 = segs[d3].end();
                if d3 == d1 || d3 == d2 || e3 <= e2 || e3 >= e1 {
                    continue;
                }
                for &d4 in &g.below[d3] {
                    if d4 == d1 || d4 == d2 || segs[d4].end() >= e2 {
                        continue;
                    }
                    let b4 = segs[d4].begin();
                    if b2 < b4 && b4 < b1 && b1 < segs[d3].begin() {
                        return Some(PatternWitness {
                            kind: PatternType::T3412,
                            segments: vec![segs[d1], segs[d2], segs[d3], segs[d4]],
                        });
                    }
                    let parent = g.descend(d4, &[d1, d2]);
                    for y in 0..k {
                        if parent[y] == usize::MAX || segs[y].begin() <= b1 {
                            continue;
                        }
                        let found = g.below[y].iter().find(|&&z| {
                            z != d1 && z != d2 && b2 < segs[z].begin() && segs[z].begin() < b1
                        });
                        if let Some(&z) = found {
                            let mut chain = vec![d1, d2, d3];
                            chain.extend(path_to(&parent, y));
                            chain.push(z);
                            return Some(PatternWitness {
                                kind: PatternType::T3412,
                                segments: chain.into_iter().map(|i| segs[i]).collect(),
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Exhaustive scan over all injective sequences of length at least four.
/// Exponential; intended as a cross-check for small inputs.
pub fn balanced_witness_naive(m: &Multisegment) -> Option<PatternWitness> {
    let segs = m.segments();
    let mut used = vec![false; segs.len()];
    let mut seq = Vec::new();
    naive_extend(segs, &mut used, &mut seq)
}

fn naive_extend(segs: &[Segment], used: &mut [bool], seq: &mut Vec<Segment>) -> Option<PatternWitness> {
    if seq.len() >= 4 {
        for kind in [PatternType::T4231, PatternType::T3412] {
            let w = PatternWitness { kind, segments: seq.clone() };
            if w.is_valid() {
                return Some(w);
            }
        }
    }
    for i in 0..segs.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        seq.push(segs[i]);
        let found = naive_extend(segs, used, seq);
        seq.pop();
        used[i] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub regular: bool,
    pub ladder: bool,
    /// `None` when the input is not regular.
    pub balanced: Option<bool>,
    pub witness: Option<PatternWitness>,
    pub split: bool,
}

pub fn structure_tests(m: &Multisegment) -> StructureFlags {
    let regular = is_regular(m);
    let witness = if regular { balanced_witness(m).expect("regular input") } else { None };
    StructureFlags {
        regular,
        ladder: is_ladder(m),
        balanced: regular.then_some(witness.is_none()),
        witness,
        split: is_split(m),
    }
}
