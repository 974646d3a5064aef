//! Dense exact linear algebra over a field.

use crate::exactfield::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Scalar>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].try_inv().expect("nonzero field element");
        for v in m[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    v.sub_assign(&f.mul(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &[Vec<F>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel {v : m·v = 0}, one vector per free column.
pub fn kernel<F: Scalar>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    Inconsistent,
    /// The homogeneous system has this many free parameters.
    Underdetermined(usize),
}

/// Solve m·v = rhs.
pub fn solve<F: Scalar>(m: &[Vec<F>], rhs: &[F], cols: usize) -> Solution<F> {
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined(cols - pivots.len());
    }
    let mut v = vec![F::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = a[r][cols].clone();
    }
    Solution::Unique(v)
}

pub fn mat_mul<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = F::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s.add_mul_assign(&row[k], &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn identity<F: Scalar>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Scalar>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(identity::<F>(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::CycNum;

    fn m(rows: &[&[i64]]) -> Vec<Vec<CycNum>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| CycNum::int(v)).collect())
            .collect()
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&a, &k[0].iter().map(|v| vec![v.clone()]).collect::<Vec<_>>());
        assert!(prod.iter().all(|r| r[0].is_zero_val()));
    }

    #[test]
    fn solve_cases() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b: Vec<CycNum> = [3, 1, 4].iter().map(|&v| CycNum::int(v)).collect();
        assert_eq!(solve(&a, &b, 2), Solution::Unique(vec![CycNum::int(2), CycNum::int(1)]));
        let b2: Vec<CycNum> = [3, 1, 5].iter().map(|&v| CycNum::int(v)).collect();
        assert_eq!(solve(&a, &b2, 2), Solution::Inconsistent);
        let c = m(&[&[1, 1]]);
        assert_eq!(solve(&c, &[CycNum::int(1)], 2), Solution::Underdetermined(1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
