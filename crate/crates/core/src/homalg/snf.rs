use num_integer::Integer;
use num_traits::Signed;

use super::Matrix;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Clone + Integer + Signed> SmithDecomposition<T> {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_pivot<T: Clone + Integer + Signed>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                let done = abs.is_one();
                best = Some((i, j, abs));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with transforms; pivots on an entry of least absolute value.
pub fn smith_normal_form<T: Clone + Integer + Signed>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let x = s.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let x = s.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it to (t, t)
                let (pi, pj) = min_pivot_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // row and column t are clear; enforce divisibility of the rest
            let p = s.get(t, t).clone();
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Least-magnitude nonzero entry in row `t` or column `t` (from `t` on).
fn min_pivot_in_cross<T: Clone + Integer + Signed>(a: &Matrix<T>, t: usize) -> (usize, usize) {
    let mut best = (t, t, a.get(t, t).abs());
    let mut consider = |i: usize, j: usize| {
        let v = a.get(i, j);
        if !v.is_zero() && v.abs() < best.2 {
            best = (i, j, v.abs());
        }
    };
    for i in t + 1..a.rows() {
        consider(i, t);
    }
    for j in t + 1..a.cols() {
        consider(t, j);
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check(a: &Matrix<i64>) -> SmithDecomposition<i64> {
        let d = smith_normal_form(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert!(d.u.is_unimodular() && d.v.is_unimodular());
        let f = d.invariant_factors();
        assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        assert!(f.iter().all(|&x| x > 0));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert_eq!(*d.s.get(i, j), 0);
                }
            }
        }
        d
    }

    #[test]
    fn two_by_two() {
        let a = Matrix::from_rows(vec![vec![2i64, 4], vec![6, 8]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![2, 4]);
    }

    #[test]
    fn zero_and_identity() {
        let d = check(&Matrix::<i64>::zeros(2, 3));
        assert_eq!(d.u, Matrix::identity(2));
        assert_eq!(d.v, Matrix::identity(3));
        assert_eq!(check(&Matrix::<i64>::identity(3)).invariant_factors(), vec![1, 1, 1]);
    }

    #[test]
    fn divisibility_needs_a_fix_up() {
        let a = Matrix::from_rows(vec![vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn rectangular_and_bigint() {
        let a = Matrix::from_rows(vec![vec![4i64, 6, 2], vec![2, 2, 8]]).unwrap();
        assert_eq!(check(&a).invariant_factors(), vec![2, 2]);
        let b = Matrix::from_rows(vec![
            vec![BigInt::from(12), BigInt::from(18)],
            vec![BigInt::from(-8), BigInt::from(4)],
        ])
        .unwrap();
        let d = smith_normal_form(&b);
        assert_eq!(d.invariant_factors(), vec![BigInt::from(2), BigInt::from(96)]);
    }
}
