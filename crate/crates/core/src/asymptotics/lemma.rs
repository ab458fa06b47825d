use crate::akr::remainder_unchecked;
use crate::bernstein::BasisContext;
use crate::error::{check_open_unit, domain, Result};
use crate::numeric::CompensatedSum;

/// `n * sum_{k=1}^{n} p_{n,k}(x) R(n, k)` for `0 < x <= 1`.
///
/// Every summand is non-negative, and the sum tends to zero as `n` grows.
pub fn lemma_sum(n: usize, x: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain(format!("degree n = {n} must be at least 2")));
    }
    check_open_unit("x", x)?;
    let ctx = BasisContext::new(n)?;
    let w = ctx.weights(x)?;
    let mut acc = CompensatedSum::new();
    for (k, &wk) in w.iter().enumerate().skip(1) {
        if wk != 0.0 {
            acc.add(wk * remainder_unchecked(n, k));
        }
    }
    Ok(n as f64 * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lemma_sum(100, 1.0).unwrap(), 0.0);
        assert_eq!(lemma_sum(2, 0.5).unwrap(), 0.375);
    }

    #[test]
    fn decreases_toward_zero_at_midpoint() {
        let v: Vec<f64> = [256, 512, 1024, 2048, 4096]
            .iter()
            .map(|&n| lemma_sum(n, 0.5).unwrap())
            .collect();
        assert!(v.iter().all(|&s| s > 0.0));
        assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
        assert!(v[4] < 1e-3);
    }

    #[test]
    fn rejects_left_endpoint_and_small_degree() {
        assert!(lemma_sum(10, 0.0).is_err());
        assert!(lemma_sum(1, 0.5).is_err());
        assert!(lemma_sum(10, 1.1).is_err());
    }
}
