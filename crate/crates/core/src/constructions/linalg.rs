use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Basis of the right nullspace of `rows` (each of length `cols`), one
/// vector per free column of the reduced row echelon form. Returned as
/// `(free_column, vector)` with the free entry equal to one.
pub fn nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<(usize, Vec<Rational>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for k in c..cols {
                    let delta = &factor * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            (free, v)
        })
        .collect()
}
