use super::ArimaError;

/// First differences applied `d` times.
pub fn difference(series: &[f64], d: usize) -> Result<Vec<f64>, ArimaError> {
    difference_with_seeds(series, d).map(|(diffs, _)| diffs)
}

/// Difference `d` times and also return the seeds needed to invert:
/// `seeds[k]` is the first value of the k-th order difference.
pub fn difference_with_seeds(
    series: &[f64],
    d: usize,
) -> Result<(Vec<f64>, Vec<f64>), ArimaError> {
    if series.len() <= d {
        return Err(ArimaError::TooShort {
            len: series.len(),
            needed: d + 1,
        });
    }
    let mut current = series.to_vec();
    let mut seeds = Vec::with_capacity(d);
    for _ in 0..d {
        seeds.push(current[0]);
        current = current.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok((current, seeds))
}

/// Inverse of [`difference_with_seeds`]: integrate `diffs` once per seed,
/// innermost (highest order) seed last.
pub fn undifference(diffs: &[f64], seeds: &[f64]) -> Vec<f64> {
    let mut current = diffs.to_vec();
    for &seed in seeds.iter().rev() {
        let mut level = Vec::with_capacity(current.len() + 1);
        let mut acc = seed;
        level.push(acc);
        for &dx in &current {
            acc += dx;
            level.push(acc);
        }
        current = level;
    }
    current
}

/// Last value of each difference order `0..d` (order 0 is the series itself).
pub(crate) fn last_levels(series: &[f64], d: usize) -> Vec<f64> {
    let mut current = series.to_vec();
    let mut levels = Vec::with_capacity(d);
    for _ in 0..d {
        levels.push(*current.last().expect("series longer than d"));
        current = current.windows(2).map(|w| w[1] - w[0]).collect();
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_differences() {
        assert_eq!(difference(&[1.0, 3.0, 6.0], 1).unwrap(), vec![2.0, 3.0]);
    }

    #[test]
    fn second_differences() {
        // [1,3,6,10] -> [2,3,4] -> [1,1]
        assert_eq!(difference(&[1.0, 3.0, 6.0, 10.0], 2).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn undifference_inverts() {
        assert_eq!(undifference(&[2.0, 3.0], &[1.0]), vec![1.0, 3.0, 6.0]);
        let (d, s) = difference_with_seeds(&[1.0, 3.0, 6.0, 10.0], 2).unwrap();
        assert_eq!(s, vec![1.0, 2.0]);
        assert_eq!(undifference(&d, &s), vec![1.0, 3.0, 6.0, 10.0]);
    }

    #[test]
    fn too_short() {
        assert!(difference(&[1.0], 1).is_err());
        assert_eq!(difference(&[4.0], 0).unwrap(), vec![4.0]);
    }

    #[test]
    fn last_levels_for_forecasting() {
        assert_eq!(last_levels(&[1.0, 3.0, 6.0, 10.0], 2), vec![10.0, 4.0]);
    }

    proptest! {
        #[test]
        fn integer_round_trip_is_bit_exact(
            values in proptest::collection::vec(-1000i32..1000, 4..60),
            d in 1usize..=3,
        ) {
            let series: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
            let (diffs, seeds) = difference_with_seeds(&series, d).unwrap();
            prop_assert_eq!(undifference(&diffs, &seeds), series);
        }
    }
}
