use crate::error::{Error, Result};

/// `100·(E − E_ref)/(E_exact − E_ref)`.
pub fn correlation_energy_pct(e_vqe: f64, e_hf: f64, e_exact: f64) -> Result<f64> {
    let denom = e_exact - e_hf;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::UndefinedMetric(format!(
            "correlation energy with reference {e_hf} and exact energy {e_exact}"
        )));
    }
    Ok(100.0 * (e_vqe - e_hf) / denom)
}

/// Mean absolute deviation from the largest value.
pub fn mean_deviation_from_best(values: &[f64], best: f64) -> f64 {
    values.iter().map(|v| (v - best).abs()).sum::<f64>() / values.len() as f64
}

/// Mean correlation energy deviation: `Σ|ε_i − ε_best| / n` with `ε_best = max ε`.
pub fn mced(epsilons: &[f64]) -> Result<f64> {
    if epsilons.is_empty() {
        return Err(Error::UndefinedMetric("MCED of an empty list".into()));
    }
    let best = epsilons.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(mean_deviation_from_best(epsilons, best))
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation.
pub fn population_std(values: &[f64]) -> f64 {
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(correlation_energy_pct(-1.2, -1.0, -1.2).unwrap(), 100.0);
        assert_eq!(correlation_energy_pct(-1.0, -1.0, -1.2).unwrap(), 0.0);
        assert!(correlation_energy_pct(-0.9, -1.0, -1.2).unwrap() < 0.0);
        assert!(correlation_energy_pct(-0.9, -1.0, -1.0).is_err());
    }

    #[test]
    fn mced_values() {
        assert_eq!(mced(&[100.0, 90.0, 80.0]).unwrap(), 10.0);
        assert_eq!(mced(&[42.0]).unwrap(), 0.0);
        assert_eq!(mced(&[5.0, 5.0, 5.0]).unwrap(), 0.0);
        assert!(mced(&[]).is_err());
    }

    #[test]
    fn spread() {
        let s = population_std(&[100.0, 90.0, 80.0]);
        assert!((s - 8.16496580927726).abs() < 1e-12);
    }
}
