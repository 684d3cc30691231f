use num_bigint::BigInt;
use num_traits::Zero;

use super::IntMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// This is independent of the Smith normal form code and serves as its
/// cross-check.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m = a.to_rows();
    let rows = a.rows();
    let cols = a.cols();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
