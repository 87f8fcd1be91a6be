//! Graded nilpotent maps on `V = V_1 ⊕ … ⊕ V_n`, rank profiles, and the
//! recovery of a multisegment from the ranks of a degree +1 map.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::multiseg::{DimVector, Multisegment, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// `V_s -> V_{s+1}`
    Raise,
    /// `V_{s+1} -> V_s`
    Lower,
}

/// A graded map of degree ±1. `blocks[s]` (0-based) connects sites `s+1`
/// and `s+2`: shape `(d[s+1], d[s])` when raising, `(d[s], d[s+1])` when lowering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    dims: DimVector,
    degree: Degree,
    blocks: Vec<Matrix>,
}

impl GradedMap {
    pub fn zero(field: Field, dims: DimVector, degree: Degree) -> Self {
        let n = dims.n();
        let blocks = (0..n.saturating_sub(1))
            .map(|s| {
                let (lo, hi) = (dims.counts[s], dims.counts[s + 1]);
                match degree {
                    Degree::Raise => Matrix::zeros(field, hi, lo),
                    Degree::Lower => Matrix::zeros(field, lo, hi),
                }
            })
            .collect();
        GradedMap { dims, degree, blocks }
    }

    pub fn from_blocks(dims: DimVector, degree: Degree, blocks: Vec<Matrix>) -> Self {
        assert_eq!(blocks.len(), dims.n().saturating_sub(1));
        for (s, b) in blocks.iter().enumerate() {
            let (lo, hi) = (dims.counts[s], dims.counts[s + 1]);
            let shape = match degree {
                Degree::Raise => (hi, lo),
                Degree::Lower => (lo, hi),
            };
            assert_eq!((b.rows(), b.cols()), shape, "block {s} has the wrong shape");
        }
        GradedMap { dims, degree, blocks }
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.dims.n()
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, s: usize) -> &Matrix {
        &self.blocks[s]
    }

    pub fn block_mut(&mut self, s: usize) -> &mut Matrix {
        &mut self.blocks[s]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// Relabels site `s` as `n+1-s`, which swaps the two degrees.
    pub fn reverse_grading(&self) -> GradedMap {
        let blocks = self.blocks.iter().rev().cloned().collect();
        let degree = match self.degree {
            Degree::Raise => Degree::Lower,
            Degree::Lower => Degree::Raise,
        };
        GradedMap { dims: self.dims.reversed(), degree, blocks }
    }
}

/// Positions of the normal-form basis `f_{i,r}` inside each `V_r`.
#[derive(Clone, Debug)]
pub struct SegmentBasis {
    /// `members[r-1]` lists the segment indices covering site `r`, in canonical order.
    members: Vec<Vec<usize>>,
}

impl SegmentBasis {
    pub fn new(m: &Multisegment) -> Self {
        let mut members = vec![Vec::new(); m.n()];
        for (i, s) in m.segments().iter().enumerate() {
            for r in s.sites() {
                members[r - 1].push(i);
            }
        }
        SegmentBasis { members }
    }

    /// Index of `f_{i,r}` within `V_r`.
    pub fn position(&self, i: usize, r: usize) -> Option<usize> {
        self.members.get(r.wrapping_sub(1))?.iter().position(|&x| x == i)
    }

    pub fn members(&self, r: usize) -> &[usize] {
        &self.members[r - 1]
    }
}

/// `T₊ f_{i,r} = f_{i,r+1}` inside each segment, zero at segment ends.
pub fn normal_form(m: &Multisegment, field: Field) -> GradedMap {
    let basis = SegmentBasis::new(m);
    let mut t = GradedMap::zero(field, m.grdim(), Degree::Raise);
    for (i, seg) in m.segments().iter().enumerate() {
        for r in seg.begin()..seg.end() {
            let from = basis.position(i, r).expect("basis vector");
            let to = basis.position(i, r + 1).expect("basis vector");
            t.blocks[r - 1][(to, from)] = crate::linalg::FieldScalar::ONE;
        }
    }
    t
}

/// `N(a,b)` = rank of `V_a -> V_b`, for `1 <= a <= b <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    n: usize,
    table: Vec<usize>,
}

impl RankProfile {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0; (n + 2) * (n + 2)];
        for a in 1..=n {
            for b in a..=n {
                table[a * (n + 2) + b] = f(a, b);
            }
        }
        RankProfile { n, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero outside `1 <= a <= b <= n`.
    pub fn get(&self, a: usize, b: usize) -> usize {
        if a == 0 || b > self.n || a > b {
            0
        } else {
            self.table[a * (self.n + 2) + b]
        }
    }

    pub fn dims(&self) -> DimVector {
        DimVector { counts: (1..=self.n).map(|a| self.get(a, a)).collect() }
    }
}

/// Ranks of every composite of a degree +1 map.
pub fn rank_profile(t: &GradedMap) -> RankProfile {
    assert_eq!(t.degree, Degree::Raise, "rank profiles are taken of raising maps");
    let n = t.n();
    let field = t.blocks.first().map(|b| b.field()).unwrap_or_default();
    let mut ranks = vec![vec![0; n + 1]; n + 1];
    for a in 1..=n {
        ranks[a][a] = t.dims.at(a);
        let mut composite = Matrix::identity(field, t.dims.at(a));
        for b in a + 1..=n {
            composite = t.blocks[b - 2].mul(&composite);
            ranks[a][b] = composite.rank();
            if ranks[a][b] == 0 {
                break;
            }
        }
    }
    RankProfile::from_fn(n, |a, b| ranks[a][b])
}

/// Inclusion–exclusion over blocks covering `[a,b]`.
pub fn multisegment_from_ranks(p: &RankProfile) -> Result<Multisegment> {
    let n = p.n();
    let mut segs = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let v = p.get(a, b) as i64 - p.get(a - 1, b) as i64 - p.get(a, b + 1) as i64
                + p.get(a - 1, b + 1) as i64;
            if v < 0 {
                return Err(Error::InconsistentProfile { begin: a, end: b });
            }
            segs.extend(std::iter::repeat_n(Segment::of(a, b), v as usize));
        }
    }
    let m = Multisegment::new(n, segs)?;
    if m.grdim() != p.dims() {
        return Err(Error::InconsistentProfile { begin: 1, end: n });
    }
    Ok(m)
}

/// Multisegment of the orbit of a graded map of either degree. A lowering
/// map is read through the grading reversal and mapped back by duality.
pub fn orbit_of(t: &GradedMap) -> Result<Multisegment> {
    match t.degree {
        Degree::Raise => multisegment_from_ranks(&rank_profile(t)),
        Degree::Lower => Ok(multisegment_from_ranks(&rank_profile(&t.reverse_grading()))?.dual()),
    }
}

/// Hom and Ext¹ over the quiver `1 -> 2 -> … -> n` between two raising maps,
/// by direct linear solves (no segment formulas involved).
pub fn hom_ext_by_solve(t1: &GradedMap, t2: &GradedMap) -> (usize, usize) {
    use crate::linalg::FieldScalar;
    let (d1, d2) = (t1.dims(), t2.dims());
    let n = d1.n();
    let field = t1.blocks.first().or(t2.blocks.first()).map(|b| b.field()).unwrap_or_default();
    // unknowns φ_s (d2_s × d1_s), row-major and concatenated
    let mut offsets = vec![0; n + 1];
    for s in 0..n {
        offsets[s + 1] = offsets[s] + d2.counts[s] * d1.counts[s];
    }
    let vars = offsets[n];
    let mut rows: Vec<Vec<FieldScalar>> = Vec::new();
    for s in 0..n.saturating_sub(1) {
        let (a, b) = (t1.block(s), t2.block(s));
        // (φ_{s+1} A - B φ_s)[r][c] = 0 for r < d2_{s+1}, c < d1_s
        for r in 0..d2.counts[s + 1] {
            for c in 0..d1.counts[s] {
                let mut row = vec![FieldScalar::ZERO; vars];
                for k in 0..d1.counts[s + 1] {
                    let idx = offsets[s + 1] + r * d1.counts[s + 1] + k;
                    row[idx] = field.add(row[idx], a[(k, c)]);
                }
                for k in 0..d2.counts[s] {
                    let idx = offsets[s] + k * d1.counts[s] + c;
                    row[idx] = field.sub(row[idx], b[(r, k)]);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_columns(field, vars, &rows).transpose();
    let hom = vars - if rows.is_empty() { 0 } else { system.rank() };
    let raise_pairs: usize = (0..n.saturating_sub(1)).map(|s| d1.counts[s] * d2.counts[s + 1]).sum();
    // Ext¹ = cokernel of φ ↦ φT₁ - T₂φ, whose image has dimension vars - hom.
    let ext = raise_pairs - (vars - hom);
    (hom, ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::default()
    }

    #[test]
    fn single_chain_profile() {
        let m = Multisegment::from_pairs(3, &[(1, 3)]);
        let t = normal_form(&m, f());
        let p = rank_profile(&t);
        assert_eq!((p.get(1, 2), p.get(1, 3), p.get(2, 3)), (1, 1, 1));
        assert_eq!(multisegment_from_ranks(&p).unwrap(), m);
    }

    #[test]
    fn zero_map_recovery() {
        let dims = DimVector { counts: vec![2, 1] };
        let t = GradedMap::zero(f(), dims, Degree::Raise);
        let p = rank_profile(&t);
        assert_eq!(p.get(1, 2), 0);
        assert_eq!(p.get(1, 1), 2);
        assert_eq!(multisegment_from_ranks(&p).unwrap().to_string(), "[2,2]+[1,1]+[1,1]");
    }

    #[test]
    fn singletons_give_zero_map() {
        let m = Multisegment::from_pairs(3, &[(1, 1), (2, 2), (2, 2)]);
        assert!(normal_form(&m, f()).is_zero());
    }

    #[test]
    fn inconsistent_profile_is_rejected() {
        let p = RankProfile::from_fn(2, |a, b| if a == b { 1 } else { 2 });
        assert!(matches!(multisegment_from_ranks(&p), Err(Error::InconsistentProfile { .. })));
    }

    #[test]
    fn reversal_swaps_degree() {
        let m = Multisegment::from_pairs(3, &[(1, 2)]);
        let t = normal_form(&m, f());
        let r = t.reverse_grading();
        assert_eq!(r.degree(), Degree::Lower);
        assert_eq!(r.dims().counts, vec![0, 1, 1]);
        assert_eq!(r.reverse_grading(), t);
    }

    #[test]
    fn solve_matches_segment_formula_on_a_pair() {
        let a = Multisegment::from_pairs(4, &[(1, 2)]);
        let b = Multisegment::from_pairs(4, &[(2, 3)]);
        let (ta, tb) = (normal_form(&a, f()), normal_form(&b, f()));
        assert_eq!(hom_ext_by_solve(&ta, &tb), (0, 1));
        assert_eq!(hom_ext_by_solve(&tb, &ta), (1, 0));
    }
}
