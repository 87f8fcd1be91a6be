use std::collections::HashMap;

use rand::Rng;

use super::system::{Block, SystemBuilder};
use crate::linalg::{combine_randomly, Field, FieldScalar, Matrix};
use crate::multiseg::{index_sets, DimVector, Multisegment};
use crate::quiver::{normal_form, rank_profile, Degree, GradedMap, RankProfile, SegmentBasis};

/// A module over the preprojective algebra: commuting `T₊` (raising) and `T₋` (lowering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiModule {
    pub t_plus: GradedMap,
    pub t_minus: GradedMap,
}

impl PiModule {
    pub fn new(t_plus: GradedMap, t_minus: GradedMap) -> Self {
        assert_eq!(t_plus.degree(), Degree::Raise);
        assert_eq!(t_minus.degree(), Degree::Lower);
        assert_eq!(t_plus.dims(), t_minus.dims());
        PiModule { t_plus, t_minus }
    }

    pub fn dims(&self) -> &DimVector {
        self.t_plus.dims()
    }

    pub fn n(&self) -> usize {
        self.dims().n()
    }

    pub fn field(&self) -> Field {
        field_of(&self.t_plus, &self.t_minus)
    }

    /// `T₊T₋ = T₋T₊` on every graded piece.
    pub fn satisfies_relation(&self) -> bool {
        let n = self.n();
        let f = self.field();
        (0..n).all(|t| {
            let d = self.dims().counts[t];
            let mut lhs = Matrix::zeros(f, d, d);
            if t >= 1 {
                lhs = self.t_plus.block(t - 1).mul(self.t_minus.block(t - 1));
            }
            let mut rhs = Matrix::zeros(f, d, d);
            if t + 1 < n {
                rhs = self.t_minus.block(t).mul(self.t_plus.block(t));
            }
            lhs == rhs
        })
    }
}

fn field_of(a: &GradedMap, b: &GradedMap) -> Field {
    a.blocks().first().or(b.blocks().first()).map(|m| m.field()).unwrap_or_default()
}

/// A point of the component of `m`: `T₊` in normal form and `T₋` built from
/// one coordinate per pair in `U_m`.
#[derive(Clone, Debug)]
pub struct GenericModule {
    pub m: Multisegment,
    pub coords: Vec<((usize, usize), FieldScalar)>,
    pub module: PiModule,
}

impl GenericModule {
    /// Builds the point with the given coordinates, listed in `U_m` order.
    pub fn from_coords(m: &Multisegment, field: Field, values: &[FieldScalar]) -> Self {
        let u = index_sets(m, m).u;
        assert_eq!(u.len(), values.len(), "one coordinate per pair in U_m");
        let basis = SegmentBasis::new(m);
        let t_plus = normal_form(m, field);
        let mut t_minus = GradedMap::zero(field, m.grdim(), Degree::Lower);
        let segs = m.segments();
        for (&(i, j), &x) in u.iter().zip(values) {
            // f_{i,r+1} -> x_{i,j} f_{j,r} for every r with r ∈ Δ_j and r+1 ∈ Δ_i
            for r in segs[j].sites() {
                if !segs[i].contains(r + 1) {
                    continue;
                }
                let from = basis.position(i, r + 1).expect("basis vector");
                let to = basis.position(j, r).expect("basis vector");
                t_minus.block_mut(r - 1)[(to, from)] = x;
            }
        }
        GenericModule {
            m: m.clone(),
            coords: u.into_iter().zip(values.iter().copied()).collect(),
            module: PiModule::new(t_plus, t_minus),
        }
    }

    pub fn coordinate_map(&self) -> HashMap<(usize, usize), FieldScalar> {
        self.coords.iter().copied().collect()
    }
}

/// Uniform coordinates for a point of the component of `m`.
pub fn sample_generic<R: Rng + ?Sized>(m: &Multisegment, field: Field, rng: &mut R) -> GenericModule {
    let count = index_sets(m, m).u.len();
    let values: Vec<FieldScalar> = (0..count).map(|_| field.random(rng)).collect();
    GenericModule::from_coords(m, field, &values)
}

/// Degree-0 graded maps `φ: V¹ -> V²` commuting with both operators.
pub struct HomSystem {
    pub matrix: Matrix,
    pub phi: Vec<Block>,
}

pub fn hom_system(x1: &PiModule, x2: &PiModule) -> HomSystem {
    let (d1, d2) = (x1.dims().clone(), x2.dims().clone());
    let n = d1.n();
    let mut sb = SystemBuilder::new(x1.field());
    let phi: Vec<Block> = (0..n).map(|t| sb.unknown(d2.counts[t], d1.counts[t])).collect();
    for s in 0..n.saturating_sub(1) {
        let e = sb.equation(d2.counts[s + 1], d1.counts[s]);
        sb.add_x_a(e, phi[s + 1], x1.t_plus.block(s), false);
        sb.add_b_x(e, x2.t_plus.block(s), phi[s], true);
        let e = sb.equation(d2.counts[s], d1.counts[s + 1]);
        sb.add_x_a(e, phi[s], x1.t_minus.block(s), false);
        sb.add_b_x(e, x2.t_minus.block(s), phi[s + 1], true);
    }
    HomSystem { matrix: sb.build(), phi }
}

/// Extension cocycles: `P_s: V¹_s -> V²_{s+1}` and `Q_s: V¹_{s+1} -> V²_s`.
pub struct CocycleSystem {
    pub matrix: Matrix,
    pub p: Vec<Block>,
    pub q: Vec<Block>,
}

pub fn cocycle_system(x1: &PiModule, x2: &PiModule) -> CocycleSystem {
    let (d1, d2) = (x1.dims().clone(), x2.dims().clone());
    let n = d1.n();
    let mut sb = SystemBuilder::new(x1.field());
    let edges = n.saturating_sub(1);
    let p: Vec<Block> = (0..edges).map(|s| sb.unknown(d2.counts[s + 1], d1.counts[s])).collect();
    let q: Vec<Block> = (0..edges).map(|s| sb.unknown(d2.counts[s], d1.counts[s + 1])).collect();
    for t in 0..n {
        let e = sb.equation(d2.counts[t], d1.counts[t]);
        if t >= 1 {
            sb.add_b_x(e, x2.t_plus.block(t - 1), q[t - 1], false);
            sb.add_x_a(e, p[t - 1], x1.t_minus.block(t - 1), false);
        }
        if t < edges {
            sb.add_b_x(e, x2.t_minus.block(t), p[t], true);
            sb.add_x_a(e, q[t], x1.t_plus.block(t), true);
        }
    }
    CocycleSystem { matrix: sb.build(), p, q }
}

pub fn nullity(a: &Matrix) -> usize {
    a.cols() - a.rank()
}

pub fn hom_dim(x1: &PiModule, x2: &PiModule) -> usize {
    nullity(&hom_system(x1, x2).matrix)
}

/// Cocycles modulo coboundaries.
pub fn ext1_dim(x1: &PiModule, x2: &PiModule) -> usize {
    let hom = hom_dim(x1, x2);
    let z = nullity(&cocycle_system(x1, x2).matrix);
    let graded: usize = x1.dims().counts.iter().zip(&x2.dims().counts).map(|(a, b)| a * b).sum();
    z - (graded - hom)
}

/// Size bound for the linear systems solved between `x1` and `x2`.
pub fn system_size(x1: &PiModule, x2: &PiModule) -> usize {
    let (d1, d2) = (x1.dims(), x2.dims());
    let n = d1.n();
    let graded: usize = (0..n).map(|t| d1.counts[t] * d2.counts[t]).sum();
    let shifted: usize =
        (0..n.saturating_sub(1)).map(|s| d1.counts[s] * d2.counts[s + 1] + d1.counts[s + 1] * d2.counts[s]).sum();
    graded + shifted
}

/// Middle term of a random extension `0 -> x2 -> x -> x1 -> 0`, on `V² ⊕ V¹`.
pub fn random_extension<R: Rng + ?Sized>(x1: &PiModule, x2: &PiModule, rng: &mut R) -> PiModule {
    let f = x1.field();
    let sys = cocycle_system(x1, x2);
    let v = sys.matrix.random_kernel_element(rng);
    let (d1, d2) = (x1.dims(), x2.dims());
    let n = d1.n();
    let dims = d2 + d1;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for s in 0..n.saturating_sub(1) {
        let p = sys.p[s].extract(f, &v);
        let q = sys.q[s].extract(f, &v);
        plus.push(upper_block(f, x2.t_plus.block(s), &p, x1.t_plus.block(s)));
        minus.push(upper_block(f, x2.t_minus.block(s), &q, x1.t_minus.block(s)));
    }
    PiModule::new(
        GradedMap::from_blocks(dims.clone(), Degree::Raise, plus),
        GradedMap::from_blocks(dims, Degree::Lower, minus),
    )
}

/// `[[a, b], [0, c]]`
fn upper_block(f: Field, a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let (r1, c1) = (a.rows(), a.cols());
    let mut out = Matrix::zeros(f, r1 + c.rows(), c1 + c.cols());
    for r in 0..r1 {
        for k in 0..c1 {
            out[(r, k)] = a[(r, k)];
        }
        for k in 0..b.cols() {
            out[(r, c1 + k)] = b[(r, k)];
        }
    }
    for r in 0..c.rows() {
        for k in 0..c.cols() {
            out[(r1 + r, c1 + k)] = c[(r, k)];
        }
    }
    out
}

/// Random element of `Hom_Π(x1, x2)` as one matrix per site.
pub fn random_hom<R: Rng + ?Sized>(x1: &PiModule, x2: &PiModule, rng: &mut R) -> Vec<Matrix> {
    let f = x1.field();
    let sys = hom_system(x1, x2);
    let basis = sys.matrix.nullspace();
    let v = combine_randomly(f, sys.matrix.cols(), &basis, rng);
    sys.phi.iter().map(|b| b.extract(f, &v)).collect()
}

/// Rank profile of `T₊` restricted to the subspace spanned, at each site,
/// by the columns of `kernel[t]`. The subspace must be `T₊`-stable.
pub fn restricted_profile(t_plus: &GradedMap, kernel: &[Matrix]) -> RankProfile {
    let n = t_plus.n();
    let mut ranks = vec![vec![0; n + 1]; n + 1];
    for a in 1..=n {
        let mut image = kernel[a - 1].clone();
        ranks[a][a] = image.cols();
        for b in a + 1..=n {
            image = t_plus.block(b - 2).mul(&image);
            ranks[a][b] = image.rank();
            if ranks[a][b] == 0 {
                break;
            }
        }
    }
    RankProfile::from_fn(n, |a, b| ranks[a][b])
}

/// Orbit of `T₊` on a module, as a multisegment.
pub fn plus_orbit(x: &PiModule) -> crate::error::Result<Multisegment> {
    crate::quiver::multisegment_from_ranks(&rank_profile(&x.t_plus))
}
