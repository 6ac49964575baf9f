use crate::game::MatrixGame;

/// f-finger Morra. A pure strategy is `(show, guess)` with both in `1..=f`,
/// ordered lexicographically. The sole correct guesser wins `s1 + s2`; two
/// correct or two wrong guesses draw. Entries are the column player's reward.
pub fn make_morra(f: usize) -> MatrixGame {
    let strategies: Vec<(usize, usize)> = (1..=f)
        .flat_map(|s| (1..=f).map(move |g| (s, g)))
        .collect();
    let n = strategies.len();
    MatrixGame::from_fn(n, n, |i, j| {
        let (s1, g1) = strategies[i];
        let (s2, g2) = strategies[j];
        let total = (s1 + s2) as f64;
        let row_right = g1 == s2;
        let col_right = g2 == s1;
        match (row_right, col_right) {
            (false, true) => total,
            (true, false) => -total,
            _ => 0.0,
        }
    })
    .expect("f >= 1")
}
