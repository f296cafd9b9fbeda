//! Exact dense linear algebra over rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solves `a · x = b` by Gaussian elimination. Returns `None` when `a` is
/// singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(
        a.len() == n && a.iter().all(|r| r.len() == n),
        "square system"
    );
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for v in &mut a[col][col..] {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let (pivot_row, row) = if r < col {
                let (lo, hi) = a.split_at_mut(col);
                (&hi[0], &mut lo[r])
            } else {
                let (lo, hi) = a.split_at_mut(r);
                (&lo[col], &mut hi[0])
            };
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}

/// Probabilities of eventually reaching a state with a known value, in a
/// Markov chain given by sparse rows. `known[s] = Some(v)` fixes `x_s = v`;
/// every other state must reach a known state with probability one.
pub fn absorption_values(
    rows: &[Vec<(usize, Rational)>],
    known: &[Option<Rational>],
) -> Vec<Rational> {
    let n = rows.len();
    let unknown: Vec<usize> = (0..n).filter(|&s| known[s].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &s) in unknown.iter().enumerate() {
        index[s] = i;
    }
    let m = unknown.len();
    let mut a = vec![vec![Rational::zero(); m]; m];
    let mut b = vec![Rational::zero(); m];
    for (i, &s) in unknown.iter().enumerate() {
        a[i][i] += Rational::one();
        for (t, p) in &rows[s] {
            match &known[*t] {
                Some(v) => b[i] += p * v,
                None => a[i][index[*t]] -= p,
            }
        }
    }
    let x = solve(a, b).expect("absorbing system is non-singular");
    (0..n)
        .map(|s| match &known[s] {
            Some(v) => v.clone(),
            None => x[index[s]].clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![
            vec![ratio(1, 1), ratio(1, 1)],
            vec![ratio(1, 1), ratio(-1, 1)],
        ];
        let x = solve(a, vec![ratio(3, 1), ratio(1, 1)]).unwrap();
        assert_eq!(x, vec![ratio(2, 1), ratio(1, 1)]);
    }

    #[test]
    fn singular_is_none() {
        let a = vec![
            vec![ratio(1, 1), ratio(2, 1)],
            vec![ratio(2, 1), ratio(4, 1)],
        ];
        assert!(solve(a, vec![ratio(1, 1), ratio(2, 1)]).is_none());
    }

    #[test]
    fn gambler() {
        // 0 <- 1 <-> 2 -> 3, fair coin; reach 3 from 1 is 1/3.
        let h = ratio(1, 2);
        let rows = vec![
            vec![],
            vec![(0, h.clone()), (2, h.clone())],
            vec![(1, h.clone()), (3, h)],
            vec![],
        ];
        let known = vec![Some(ratio(0, 1)), None, None, Some(ratio(1, 1))];
        let v = absorption_values(&rows, &known);
        assert_eq!(v[1], ratio(1, 3));
        assert_eq!(v[2], ratio(2, 3));
    }
}
