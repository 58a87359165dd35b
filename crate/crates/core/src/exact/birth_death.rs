use nalgebra::{DMatrix, DVector};

use crate::error::{invalid_param, Error, Result};

/// Expected time for the lazy walk on `0..=k` (stay w.p. 1/2, step ±1 w.p.
/// 1/4 each, absorbed at both ends) to leave `i`: `2 i (k - i)`.
pub fn birth_death_hitting_time(k: u64, i: u64) -> Result<f64> {
    if i > k {
        return Err(invalid_param(format!("start {i} outside 0..={k}")));
    }
    Ok(2.0 * i as f64 * (k - i) as f64)
}

/// The same hitting times for every start, from a linear solve of the chain.
pub fn birth_death_hitting_times_solved(k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Ok(vec![0.0; k + 1]);
    }
    let m = k - 1;
    let mut a = DMatrix::<f64>::zeros(m, m);
    for r in 0..m {
        a[(r, r)] = 0.5;
        if r > 0 {
            a[(r, r - 1)] = -0.25;
        }
        if r + 1 < m {
            a[(r, r + 1)] = -0.25;
        }
    }
    let rhs = DVector::<f64>::from_element(m, 1.0);
    let x = a.clone().lu().solve(&rhs).ok_or(Error::NotConverged { residual: f64::INFINITY })?;
    let residual = (&a * &x - &rhs).amax();
    if residual >= 1e-9 {
        return Err(Error::NotConverged { residual });
    }
    let mut out = Vec::with_capacity(k + 1);
    out.push(0.0);
    out.extend(x.iter().copied());
    out.push(0.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(birth_death_hitting_time(4, 1).unwrap(), 6.0);
        assert_eq!(birth_death_hitting_time(10, 5).unwrap(), 50.0);
        assert_eq!(birth_death_hitting_time(7, 0).unwrap(), 0.0);
        assert_eq!(birth_death_hitting_time(7, 7).unwrap(), 0.0);
        assert!(birth_death_hitting_time(3, 4).is_err());
    }

    #[test]
    fn solve_matches() {
        let h = birth_death_hitting_times_solved(10).unwrap();
        assert!((h[5] - 50.0).abs() < 1e-9);
        assert_eq!(birth_death_hitting_times_solved(1).unwrap(), vec![0.0, 0.0]);
    }
}
