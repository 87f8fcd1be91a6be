use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiseg::{index_sets, is_ladder, Multisegment};

const NIL: usize = usize::MAX;

/// Maximum matching in a bipartite graph by Hopcroft–Karp.
/// `adj[u]` lists the right vertices adjacent to left vertex `u`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> (usize, Vec<usize>) {
    let left = adj.len();
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..left {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }
    (size, match_l)
}

fn augment(u: usize, adj: &[Vec<usize>], match_l: &mut [usize], match_r: &mut [usize], dist: &mut [usize]) -> bool {
    for &v in &adj[u] {
        let w = match_r[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Bipartite graph with left vertices `U_{m;n}` and right vertices `V_{m;n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingGraph {
    pub left: Vec<(usize, usize)>,
    pub right: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl MatchingGraph {
    pub fn new(m: &Multisegment, n: &Multisegment) -> Self {
        let sets = index_sets(m, n);
        let um: HashSet<(usize, usize)> = index_sets(m, m).u.into_iter().collect();
        let un: HashSet<(usize, usize)> = index_sets(n, n).u.into_iter().collect();
        let adj = sets
            .u
            .iter()
            .map(|&(i, k)| {
                sets.v
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| {
                        // ((i,k),(i,j)) with (j,k) ∈ U_n, or ((i,k),(j,k)) with (i,j) ∈ U_m
                        (a == i && un.contains(&(b, k))) || (b == k && um.contains(&(i, a)))
                    })
                    .map(|(idx, _)| idx)
                    .collect()
            })
            .collect();
        MatchingGraph { left: sets.u, right: sets.v, adj }
    }

    pub fn max_matching(&self) -> usize {
        hopcroft_karp(&self.adj, self.right.len()).0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingOutcome {
    pub holds: bool,
    pub max_matching: usize,
    pub left: usize,
    pub right: usize,
}

/// Whether `G_{m;n}` has a matching covering `U_{m;n}`.
pub fn matching_condition(m: &Multisegment, n: &Multisegment) -> Result<MatchingOutcome> {
    if m.n() != n.n() {
        return Err(Error::AmbientMismatch(m.n(), n.n()));
    }
    let g = MatchingGraph::new(m, n);
    let size = g.max_matching();
    Ok(MatchingOutcome { holds: size == g.left.len(), max_matching: size, left: g.left.len(), right: g.right.len() })
}

/// Uncovered right vertices of a maximum matching of `G_{m;n}`; this is
/// `dim Hom_Π` from the component of `m` to that of `n` when either is a ladder.
pub fn hom_pi_lamina(m: &Multisegment, n: &Multisegment) -> Result<usize> {
    if !is_ladder(m) && !is_ladder(n) {
        return Err(Error::precondition("neither argument is a ladder"));
    }
    let out = matching_condition(m, n)?;
    Ok(out.right - out.max_matching)
}
