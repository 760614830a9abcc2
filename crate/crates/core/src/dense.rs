//! Gaussian elimination over the coefficient field itself (constant matrices).

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
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
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for k in 0..cols {
                    let v = m[r][k];
                    m[i][k] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Finds `a` with `Σ a_i · rows[i] = target`, if one exists.
pub fn solve_combination<F: Field>(rows: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let k = rows.len();
    let n = target.len();
    // unknowns a_0..a_{k-1}; equation per column c: Σ a_i rows[i][c] = target[c]
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|c| {
            let mut eq: Vec<F> = rows.iter().map(|r| r[c]).collect();
            eq.push(target[c]);
            eq
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut a = vec![F::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        a[c] = aug[r][k];
    }
    Some(a)
}

/// A nonzero `a` with `Σ a_i · rows[i] = 0`, if the rows are dependent.
pub fn dependency<F: Field>(rows: &[Vec<F>]) -> Option<Vec<F>> {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut sys: Vec<Vec<F>> = (0..n).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
    let pivots = rref(&mut sys);
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut a = vec![F::zero(); k];
    a[free] = F::one();
    for (r, &c) in pivots.iter().enumerate() {
        a[c] = -sys[r][free];
    }
    Some(a)
}
