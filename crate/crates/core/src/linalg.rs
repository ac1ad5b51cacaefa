//! Row reduction over a [`Scalar`].

use crate::scalar::Scalar;

fn abs<S: Scalar>(x: &S) -> S {
    if *x < S::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Rank by Gaussian elimination with partial pivoting. Exact for rationals.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_negligible())
            .max_by(|&a, &b| {
                abs(&rows[a][col])
                    .partial_cmp(&abs(&rows[b][col]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_negligible() {
                continue;
            }
            let factor = row[col].clone() / prow[col].clone();
            for k in col..width {
                if !prow[k].is_negligible() {
                    row[k] = row[k].clone() - factor.clone() * prow[k].clone();
                }
            }
            row[col] = S::zero();
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank::<Rational>(vec![]), 0);
        assert_eq!(rank(q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 2]])), 2);
        assert_eq!(rank(q(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), 3);
        assert_eq!(rank(q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(vec![vec![1.0f64, 2.0], vec![2.0, 4.0 + 1e-12]]), 1);
        assert_eq!(rank(vec![vec![1.0f32, 0.0], vec![0.0, 1.0]]), 2);
    }
}
