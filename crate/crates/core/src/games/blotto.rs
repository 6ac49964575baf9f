use crate::game::MatrixGame;

/// All ways to split `units` over `fields` battlefields, lexicographic.
pub fn blotto_strategies(fields: usize, units: usize) -> Vec<Vec<usize>> {
    fn rec(fields: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == fields {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(fields, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if fields > 0 {
        rec(fields, units, &mut Vec::with_capacity(fields), &mut out);
    }
    out
}

/// Colonel Blotto. Entry = fields won by the column player minus fields won by
/// the row player; ties count for neither.
pub fn make_blotto(fields: usize, units: usize) -> MatrixGame {
    let strategies = blotto_strategies(fields.max(1), units);
    let n = strategies.len();
    MatrixGame::from_fn(n, n, |i, j| {
        strategies[i]
            .iter()
            .zip(&strategies[j])
            .map(|(r, c)| match c.cmp(r) {
                std::cmp::Ordering::Greater => 1.0,
                std::cmp::Ordering::Less => -1.0,
                std::cmp::Ordering::Equal => 0.0,
            })
            .sum()
    })
    .expect("at least one allocation")
}
