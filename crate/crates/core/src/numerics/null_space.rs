use super::matrix::Matrix;
use super::{dot, norm};
use crate::error::{Error, Result};

/// Relative pivot threshold: pivots below `RANK_THRESHOLD` times the largest
/// column norm count as zero.
pub const RANK_THRESHOLD: f64 = 1e-9;

/// Unit vector spanning the orthogonal complement of the columns of an
/// `n x (n-1)` matrix.
///
/// Householder QR with column pivoting; the last column of `Q` is the
/// answer. The sign is fixed so that the first component that is not
/// negligible is positive.
pub fn null_space_1d(m: &Matrix) -> Result<Vec<f64>> {
    let n = m.rows();
    if n < 2 || m.cols() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1),
            got: m.cols(),
        });
    }
    let cols = m.cols();
    let mut a = m.clone();
    let largest = (0..cols).map(|j| norm(&a.column(j))).fold(0.0, f64::max);
    let threshold = RANK_THRESHOLD * largest;
    if largest == 0.0 {
        return Err(Error::RankDeficient { pivot: 0.0, threshold });
    }

    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(cols);
    let mut perm: Vec<usize> = (0..cols).collect();
    for k in 0..cols {
        // pivot on the remaining column with the largest trailing norm
        let trailing = |a: &Matrix, j: usize| -> f64 {
            (k..n).map(|i| a[(i, j)] * a[(i, j)]).sum::<f64>().sqrt()
        };
        let best = (k..cols)
            .max_by(|&x, &y| trailing(&a, x).total_cmp(&trailing(&a, y)))
            .unwrap();
        if best != k {
            for i in 0..n {
                let t = a[(i, k)];
                a[(i, k)] = a[(i, best)];
                a[(i, best)] = t;
            }
            perm.swap(k, best);
        }
        let x: Vec<f64> = (k..n).map(|i| a[(i, k)]).collect();
        let alpha = norm(&x);
        if alpha <= threshold {
            return Err(Error::RankDeficient { pivot: alpha, threshold });
        }
        let mut v = x;
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vn = norm(&v);
        v.iter_mut().for_each(|c| *c /= vn);
        for j in k..cols {
            let col: Vec<f64> = (k..n).map(|i| a[(i, j)]).collect();
            let d = 2.0 * dot(&v, &col);
            for (off, i) in (k..n).enumerate() {
                a[(i, j)] -= d * v[off];
            }
        }
        reflectors.push(v);
    }

    // Q e_n = H_0 H_1 ... H_{cols-1} e_n
    let mut q = vec![0.0; n];
    q[n - 1] = 1.0;
    for (k, v) in reflectors.iter().enumerate().rev() {
        let d = 2.0 * dot(v, &q[k..]);
        for (off, c) in q[k..].iter_mut().enumerate() {
            *c -= d * v[off];
        }
    }
    let len = norm(&q);
    q.iter_mut().for_each(|c| *c /= len);
    fix_sign(&mut q);
    Ok(q)
}

fn fix_sign(v: &mut [f64]) {
    let biggest = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if let Some(first) = v.iter().find(|c| c.abs() > 1e-12 * biggest) {
        if *first < 0.0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
    }
}
