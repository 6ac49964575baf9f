//! The adversarial families on which exact double oracle needs `n` iterations.

use std::cmp::Ordering;

use crate::game::MatrixGame;

/// "Greater number wins": `L(i, j)` is `1` above the diagonal, `-1` below.
pub fn make_l(n: usize) -> MatrixGame {
    MatrixGame::from_fn(n, n, |i, j| match j.cmp(&i) {
        Ordering::Greater => 1.0,
        Ordering::Less => -1.0,
        Ordering::Equal => 0.0,
    })
    .expect("n >= 1")
}

/// `S = Lᵀ`: the smaller number wins.
pub fn make_s(n: usize) -> MatrixGame {
    make_l(n).transpose()
}

/// Variant of `L` with unique best responses: `-2` just above the diagonal,
/// `-1` further above, `2` just below, `1` further below.
pub fn make_u(n: usize) -> MatrixGame {
    MatrixGame::from_fn(n, n, |i, j| {
        if j == i {
            0.0
        } else if j == i + 1 {
            -2.0
        } else if j > i {
            -1.0
        } else if j + 1 == i {
            2.0
        } else {
            1.0
        }
    })
    .expect("n >= 1")
}

pub fn make_u_t(n: usize) -> MatrixGame {
    make_u(n).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::nash_lp;
    use crate::game::MixedStrategy;

    #[test]
    fn l3_display() {
        let expected = MatrixGame::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(make_l(3), expected);
    }

    #[test]
    fn s_is_transpose_and_l_antisymmetric() {
        for n in 1..=16 {
            let l = make_l(n);
            let s = make_s(n);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(s.get(i, j), l.get(j, i));
                    assert_eq!(l.get(i, j), -l.get(j, i));
                }
            }
        }
    }

    #[test]
    fn u4_rows() {
        // Row k is (1, ..., 1, 2, 0, -2, -1, ..., -1).
        let expected = MatrixGame::from_rows(&[
            vec![0.0, -2.0, -1.0, -1.0],
            vec![2.0, 0.0, -2.0, -1.0],
            vec![1.0, 2.0, 0.0, -2.0],
            vec![1.0, 1.0, 2.0, 0.0],
        ])
        .unwrap();
        assert_eq!(make_u(4), expected);
        let u = make_u(9);
        let ut = make_u_t(9);
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(u.get(i, j), -u.get(j, i));
                assert_eq!(ut.get(i, j), u.get(j, i));
            }
        }
    }

    #[test]
    fn u6_equilibrium_first() {
        let s = nash_lp(&make_u(6)).unwrap();
        assert_eq!(s.row, MixedStrategy::pure(6, 0));
        assert_eq!(s.col, MixedStrategy::pure(6, 0));
        assert_eq!(s.value, 0.0);
    }
}
