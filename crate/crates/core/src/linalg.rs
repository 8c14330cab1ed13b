//! Exact dense linear algebra: fraction-free (Bareiss) elimination, rank and
//! kernel over any [`Field`].

use crate::scalars::Field;

/// Row echelon form produced by Bareiss elimination, with pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// One-step fraction-free elimination. Every division by the previous pivot
/// is exact in the ring generated by the entries; over a field it also keeps
/// intermediate entries as minors of the input.
pub fn bareiss<F: Field>(matrix: &[Vec<F>]) -> Echelon<F> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut prev = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..cols {
                let v = a[r][c].clone() * a[i][j].clone() - a[i][c].clone() * a[r][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][c] = F::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

pub fn rank<F: Field>(matrix: &[Vec<F>]) -> usize {
    bareiss(matrix).pivots.len()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column,
/// with that free coordinate equal to 1 and the other free coordinates 0.
pub fn kernel<F: Field>(matrix: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    if matrix.is_empty() {
        return (0..cols).map(|k| (0..cols).map(|j| if j == k { F::one() } else { F::zero() }).collect()).collect();
    }
    let e = bareiss(matrix);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); cols];
            x[f] = F::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let mut s = F::zero();
                for j in pc + 1..cols {
                    if !x[j].is_zero() {
                        s = s + e.rows[r][j].clone() * x[j].clone();
                    }
                }
                x[pc] = -s / e.rows[r][pc].clone();
            }
            x
        })
        .collect()
}

/// Selects a maximal linearly independent subset, preserving order.
pub fn independent_subset<F: Field>(vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut chosen: Vec<Vec<F>> = Vec::new();
    for v in vectors {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat_int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            assert_eq!(dot(row, &k[0]), rat_int(0));
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(rank(&a), 2);
        assert!(kernel(&a, 2).is_empty());
    }

    #[test]
    fn bareiss_last_pivot_is_determinant() {
        let a = m(&[&[2, 3, 1], &[4, 1, 5], &[0, 2, 7]]);
        let e = bareiss(&a);
        // det = 2(7-10) - 3(28-0) + 1(8-0) = -6 - 84 + 8
        assert_eq!(e.rows[2][2], rat_int(-82));
    }

    #[test]
    fn independent_subset_drops_dependents() {
        let v = m(&[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        assert_eq!(independent_subset(&v), m(&[&[1, 0], &[0, 1]]));
    }
}
