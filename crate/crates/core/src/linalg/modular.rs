//! Rank modulo a large prime, with `q` sent to a fixed residue.

use crate::scalar::{inv_mod, mul_mod};

use super::SparseMatrix;

const PRIME: u64 = (1 << 61) - 1;
const Q_RESIDUE: u64 = 1_234_567_890_123;
const DENSE_LIMIT: usize = 1 << 22;

/// Rank of the reduction of `m`, or `None` if some entry has no image
/// (denominator divisible by the prime, cyclotomic or float entries) or the
/// matrix is too large for the dense routine.
pub(super) fn rank_mod_p(m: &SparseMatrix) -> Option<usize> {
    let (nrows, ncols) = m.shape();
    if nrows.saturating_mul(ncols) > DENSE_LIMIT {
        return None;
    }
    // rows of the transpose: one dense vector per column of m
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(ncols);
    for c in m.columns() {
        let mut v = vec![0u64; nrows];
        for (i, s) in c.iter() {
            v[*i] = s.reduce_mod(PRIME, Q_RESIDUE)?;
        }
        rows.push(v);
    }
    let mut rank = 0;
    for col in 0..nrows {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][col], PRIME)?;
        let pivot_row = std::mem::take(&mut rows[rank]);
        for r in rows.iter_mut().skip(rank + 1) {
            if r[col] == 0 {
                continue;
            }
            let f = mul_mod(r[col], inv, PRIME);
            for k in col..nrows {
                if pivot_row[k] != 0 {
                    r[k] = (r[k] + PRIME - mul_mod(f, pivot_row[k], PRIME)) % PRIME;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}
