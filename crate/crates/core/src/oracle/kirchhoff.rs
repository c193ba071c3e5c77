//! Matrix-tree theorem: the number of spanning trees equals any cofactor of
//! the Laplacian. Determinants use fraction-free (Bareiss) elimination, which
//! is exact over integer types and stays exact over rationals.

use num_traits::Num;

use crate::graph::Graph;

/// Dense square matrix, row-major.
pub type Matrix<T> = Vec<Vec<T>>;

/// Laplacian `D - A` of `g`.
pub fn laplacian<T: Num + Clone>(g: &Graph) -> Matrix<T> {
    let n = g.order();
    let from_count = |c: usize| (0..c).fold(T::zero(), |acc, _| acc + T::one());
    let mut lap = vec![vec![T::zero(); n]; n];
    for (v, row) in lap.iter_mut().enumerate() {
        row[v] = from_count(g.degree(v));
        for w in g.neighbors(v) {
            row[w] = T::zero() - T::one();
        }
    }
    lap
}

/// Determinant by Bareiss elimination. Every division is exact when the
/// entries come from an integral domain, so integer scalars stay integral.
pub fn determinant<T: Num + Clone>(mut a: Matrix<T>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return T::zero();
            };
            a.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        T::zero() - det
    } else {
        det
    }
}

/// Spanning-tree count as the Laplacian cofactor obtained by deleting row and
/// column 0. Returns one for graphs with at most one vertex.
pub fn spanning_tree_count<T: Num + Clone>(g: &Graph) -> T {
    let lap = laplacian::<T>(g);
    let minor: Matrix<T> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    determinant(minor)
}
