use crate::game::MatrixGame;
use crate::rng::RandomSource;

/// `n×n` game with i.i.d. `U[0, 1)` entries.
pub fn make_random_unit(n: usize, rng: &mut RandomSource) -> MatrixGame {
    let data = (0..n * n).map(|_| rng.uniform01()).collect();
    MatrixGame::new(n, n, data).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_determinism() {
        let a = make_random_unit(20, &mut RandomSource::new(4));
        let b = make_random_unit(20, &mut RandomSource::new(4));
        assert_eq!(a, b);
        assert!(a.entries().iter().all(|x| (0.0..1.0).contains(x)));
        assert_ne!(a, make_random_unit(20, &mut RandomSource::new(5)));
    }

    #[test]
    fn mean_concentrates() {
        let g = make_random_unit(200, &mut RandomSource::new(1));
        let mean = g.entries().iter().sum::<f64>() / g.entries().len() as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }
}
