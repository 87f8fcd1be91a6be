use super::module::GenericModule;
use crate::linalg::Matrix;
use crate::multiseg::index_sets;

/// Matrix of the map `Hom_Q(M, N) -> Hom_Q(M, τN)` in the bases indexed by
/// `V_{m;n}` (columns) and `U_{m;n}` (rows).
#[derive(Clone, Debug)]
pub struct TMatrix {
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

pub fn t_matrix(mm: &GenericModule, nn: &GenericModule) -> TMatrix {
    let f = mm.module.field();
    let sets = index_sets(&mm.m, &nn.m);
    let x = mm.coordinate_map();
    let y = nn.coordinate_map();
    let row_of = |pair: (usize, usize)| sets.u.iter().position(|&p| p == pair);
    let mut matrix = Matrix::zeros(f, sets.u.len(), sets.v.len());
    for (col, &(i, j)) in sets.v.iter().enumerate() {
        for k in 0..mm.m.len() {
            if let (Some(&xv), Some(row)) = (x.get(&(k, i)), row_of((k, j))) {
                matrix[(row, col)] = f.add(matrix[(row, col)], xv);
            }
        }
        for k in 0..nn.m.len() {
            if let (Some(&yv), Some(row)) = (y.get(&(j, k)), row_of((i, k))) {
                matrix[(row, col)] = f.sub(matrix[(row, col)], yv);
            }
        }
    }
    TMatrix { rows: sets.u, cols: sets.v, matrix }
}

/// The dual map in the dual bases: rows indexed by `V_{m;n}`, columns by `U_{m;n}`.
pub fn t_dual_matrix(mm: &GenericModule, nn: &GenericModule) -> TMatrix {
    let f = mm.module.field();
    let sets = index_sets(&mm.m, &nn.m);
    let x = mm.coordinate_map();
    let y = nn.coordinate_map();
    let row_of = |pair: (usize, usize)| sets.v.iter().position(|&p| p == pair);
    let mut matrix = Matrix::zeros(f, sets.v.len(), sets.u.len());
    for (col, &(i, j)) in sets.u.iter().enumerate() {
        for k in 0..mm.m.len() {
            if let (Some(&xv), Some(row)) = (x.get(&(i, k)), row_of((k, j))) {
                matrix[(row, col)] = f.add(matrix[(row, col)], xv);
            }
        }
        for k in 0..nn.m.len() {
            if let (Some(&yv), Some(row)) = (y.get(&(k, j)), row_of((i, k))) {
                matrix[(row, col)] = f.sub(matrix[(row, col)], yv);
            }
        }
    }
    TMatrix { rows: sets.v, cols: sets.u, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::multiseg::Multisegment;
    use crate::pp::sample_generic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_u_gives_zero_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Field::default();
        let a = sample_generic(&Multisegment::from_pairs(3, &[(1, 1)]), f, &mut rng);
        let b = sample_generic(&Multisegment::from_pairs(3, &[(3, 3)]), f, &mut rng);
        let t = t_matrix(&a, &b);
        assert_eq!(t.matrix.rows(), 0);
    }

    #[test]
    fn one_by_one_zero_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = Field::default();
        let m = sample_generic(&Multisegment::from_pairs(3, &[(1, 2)]), f, &mut rng);
        let n = sample_generic(&Multisegment::from_pairs(3, &[(2, 3)]), f, &mut rng);
        let t = t_matrix(&n, &m);
        assert_eq!((t.rows.clone(), t.cols.clone()), (vec![(0, 0)], vec![(0, 0)]));
        assert!(t.matrix.is_zero());
    }

    #[test]
    fn dual_is_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Field::default();
        let m = Multisegment::from_pairs(6, &[(4, 5), (2, 4), (3, 3), (1, 2), (2, 6)]);
        let n = Multisegment::from_pairs(6, &[(3, 6), (1, 4), (2, 2), (5, 5)]);
        let (a, b) = (sample_generic(&m, f, &mut rng), sample_generic(&n, f, &mut rng));
        assert_eq!(t_dual_matrix(&a, &b).matrix, t_matrix(&a, &b).matrix.transpose());
    }
}
