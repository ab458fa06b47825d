//! Bernstein basis `p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)` and the classical
//! Bernstein operator `B_n f(x) = sum_k f(k/n) p_{n,k}(x)`.
//!
//! Weights are evaluated in the log domain so that `C(n, k)` never has to be
//! formed; `n` in the tens of thousands is fine. The exponent is carried as a
//! double-double so the systematic error of `ln(n!)` (whose ulp grows like
//! `n ln n`) does not leak into the weights.

use crate::error::{check_unit, domain, Result};
use crate::function::Function1D;
use crate::numeric::{CompensatedSum, DoubleDouble};

/// Degree `n` together with a table of `ln(m!)`, `0 <= m <= n`.
///
/// Immutable after construction; share it freely between threads.
#[derive(Debug, Clone)]
pub struct BasisContext {
    n: usize,
    ln_fact: Vec<DoubleDouble>,
}

/// `m!` is exact in a `u64` up to here.
const EXACT_FACTORIALS: usize = 20;

impl BasisContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(domain("degree n must be at least 1"));
        }
        let mut ln_fact = Vec::with_capacity(n + 1);
        let mut fact: u64 = 1;
        for m in 0..=n.min(EXACT_FACTORIALS) {
            if m > 0 {
                fact *= m as u64;
            }
            ln_fact.push(DoubleDouble { hi: (fact as f64).ln(), lo: 0.0 });
        }
        let mut acc = *ln_fact.last().expect("table holds at least 0!");
        for m in EXACT_FACTORIALS + 1..=n {
            acc = acc.add_f64((m as f64).ln());
            ln_fact.push(acc);
        }
        Ok(Self { n, ln_fact })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ln(m!)` for `m <= n`.
    pub fn ln_factorial(&self, m: usize) -> f64 {
        self.ln_fact[m].to_f64()
    }

    fn ln_binomial_dd(&self, k: usize) -> DoubleDouble {
        self.ln_fact[self.n]
            .sub(self.ln_fact[k])
            .sub(self.ln_fact[self.n - k])
    }

    /// `ln C(n, k)`.
    pub fn ln_binomial(&self, k: usize) -> f64 {
        self.ln_binomial_dd(k).to_f64()
    }

    /// `p_{n,k}(x)`, exact at the endpoints.
    pub fn weight(&self, k: usize, x: f64) -> Result<f64> {
        if k > self.n {
            return Err(domain(format!("index k = {k} exceeds degree n = {}", self.n)));
        }
        check_unit("x", x)?;
        Ok(self.weight_unchecked(k, x, x.ln(), (-x).ln_1p()))
    }

    fn weight_unchecked(&self, k: usize, x: f64, ln_x: f64, ln_1mx: f64) -> f64 {
        if x == 0.0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        if x == 1.0 {
            return if k == self.n { 1.0 } else { 0.0 };
        }
        let mut e = self.ln_binomial_dd(k);
        if k > 0 {
            e = e.add(DoubleDouble::mul_exact(k as f64, ln_x));
        }
        if k < self.n {
            e = e.add(DoubleDouble::mul_exact((self.n - k) as f64, ln_1mx));
        }
        e.to_f64().exp()
    }

    /// All `n + 1` weights at `x`, indexed by `k`.
    pub fn weights(&self, x: f64) -> Result<Vec<f64>> {
        check_unit("x", x)?;
        let (ln_x, ln_1mx) = (x.ln(), (-x).ln_1p());
        Ok((0..=self.n)
            .map(|k| self.weight_unchecked(k, x, ln_x, ln_1mx))
            .collect())
    }
}

/// `p_{n,k}(x)` for a context built for degree `n`.
pub fn basis_weight(ctx: &BasisContext, k: usize, x: f64) -> Result<f64> {
    ctx.weight(k, x)
}

/// `sum_k values[k] * weights[k]` in ascending `k`, skipping exact-zero
/// weights (their products are exactly zero for finite samples).
pub(crate) fn weighted_sum(weights: &[f64], mut sample: impl FnMut(usize) -> f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for (k, &w) in weights.iter().enumerate() {
        if w != 0.0 {
            acc.add(w * sample(k));
        }
    }
    acc.value()
}

/// Applies `B_n` to `f` at `x`.
pub fn bernstein_apply(f: &Function1D, n: usize, x: f64) -> Result<f64> {
    let ctx = BasisContext::new(n)?;
    bernstein_apply_with(&ctx, f, x)
}

/// Applies `B_n` reusing a prebuilt context.
pub fn bernstein_apply_with(ctx: &BasisContext, f: &Function1D, x: f64) -> Result<f64> {
    let w = ctx.weights(x)?;
    let nf = ctx.n() as f64;
    Ok(weighted_sum(&w, |k| f.eval(k as f64 / nf)))
}
