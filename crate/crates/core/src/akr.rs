//! Aldaz-Kounchev-Render nodes and operator.
//!
//! For `j >= 2` and `n >= j` the operator samples at
//! `t_{n,k} = (k(k-1)...(k-j+1) / (n(n-1)...(n-j+1)))^(1/j)` with Bernstein
//! weights, which makes both `e_0` and `e_j` fixed points.

use serde::{Deserialize, Serialize};

use crate::bernstein::{weighted_sum, BasisContext};
use crate::error::{check_unit, domain, Result};
use crate::function::Function1D;

fn check_degree(n: usize, j: usize) -> Result<()> {
    if j < 2 {
        return Err(domain(format!("exponent j = {j} must be at least 2")));
    }
    if n < j {
        return Err(domain(format!("degree n = {n} must be at least j = {j}")));
    }
    Ok(())
}

/// `t_{n,k}^j`. Exactly `0` for `k < j` and exactly `1` for `k = n`.
pub fn akr_node(n: usize, k: usize, j: usize) -> Result<f64> {
    check_degree(n, j)?;
    if k > n {
        return Err(domain(format!("index k = {k} exceeds degree n = {n}")));
    }
    Ok(node_unchecked(n, k, j))
}

fn node_unchecked(n: usize, k: usize, j: usize) -> f64 {
    if k < j {
        return 0.0;
    }
    if k == n {
        return 1.0;
    }
    let log_ratio: f64 = (0..j)
        .map(|i| ((k - i) as f64).ln() - ((n - i) as f64).ln())
        .sum();
    (log_ratio / j as f64).exp()
}

/// The nodes `t_{n,0}^j, ..., t_{n,n}^j` for fixed `(n, j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeTable {
    n: usize,
    j: usize,
    nodes: Vec<f64>,
}

impl NodeTable {
    pub fn new(n: usize, j: usize) -> Result<Self> {
        check_degree(n, j)?;
        let mut nodes: Vec<f64> = (0..=n).map(|k| node_unchecked(n, k, j)).collect();
        // Rounding in the log domain can in principle produce a one-ulp dip
        // between neighbours; the table is non-decreasing by contract.
        for k in 1..=n {
            if nodes[k] < nodes[k - 1] {
                nodes[k] = nodes[k - 1];
            }
        }
        Ok(Self { n, j, nodes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn get(&self, k: usize) -> f64 {
        self.nodes[k]
    }
}

pub fn build_node_table(n: usize, j: usize) -> Result<NodeTable> {
    NodeTable::new(n, j)
}

/// `R(n, k) = k/n - sqrt(k(k-1) / (n(n-1))) - 1/(2n) + k/(2n^2)`, the
/// second-order remainder of the `j = 2` nodes. Evaluated from its own
/// four terms, independently of [`akr_node`].
pub fn remainder_r(n: usize, k: usize) -> Result<f64> {
    if n < 2 {
        return Err(domain(format!("degree n = {n} must be at least 2")));
    }
    if k > n {
        return Err(domain(format!("index k = {k} exceeds degree n = {n}")));
    }
    Ok(remainder_unchecked(n, k))
}

pub(crate) fn remainder_unchecked(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    // Both products are exact integers below 2^53 for any practical n.
    let root = ((kf * (kf - 1.0)) / (nf * (nf - 1.0))).sqrt();
    ((kf / nf - root) - 1.0 / (2.0 * nf)) + kf / (2.0 * nf * nf)
}

/// A remainder value together with its indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Remainder {
    pub n: usize,
    pub k: usize,
    pub value: f64,
}

impl Remainder {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Ok(Self { n, k, value: remainder_r(n, k)? })
    }
}

/// Applies `B_{n,j}` to `f` at `x`.
pub fn akr_apply(f: &Function1D, n: usize, j: usize, x: f64) -> Result<f64> {
    let table = NodeTable::new(n, j)?;
    let ctx = BasisContext::new(n)?;
    akr_apply_with(&ctx, &table, f, x)
}

/// Applies `B_{n,j}` with a prebuilt basis context and node table of the same degree.
pub fn akr_apply_with(ctx: &BasisContext, table: &NodeTable, f: &Function1D, x: f64) -> Result<f64> {
    if ctx.n() != table.n() {
        return Err(domain("basis context and node table disagree on the degree"));
    }
    check_unit("x", x)?;
    let w = ctx.weights(x)?;
    Ok(weighted_sum(&w, |k| f.eval(table.get(k))))
}

/// Largest deviation of `B_{n,j} e_0` from `1` and of `B_{n,j} e_j` from
/// `x^j` over a uniform grid of `grid_size` points on `[0, 1]`.
pub fn fixed_point_error(n: usize, j: usize, grid_size: usize) -> Result<f64> {
    if grid_size < 2 {
        return Err(domain("grid_size must be at least 2"));
    }
    let table = NodeTable::new(n, j)?;
    let ctx = BasisContext::new(n)?;
    let one = Function1D::constant(1.0);
    let ej = Function1D::monomial(j as u32);
    let mut worst: f64 = 0.0;
    for i in 0..grid_size {
        let x = i as f64 / (grid_size - 1) as f64;
        let e0 = (akr_apply_with(&ctx, &table, &one, x)? - 1.0).abs();
        let e_j = (akr_apply_with(&ctx, &table, &ej, x)? - x.powi(j as i32)).abs();
        worst = worst.max(e0).max(e_j);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_examples() {
        assert_eq!(akr_node(2, 1, 2).unwrap(), 0.0);
        assert_eq!(akr_node(5, 5, 2).unwrap(), 1.0);
        let t = akr_node(4, 2, 2).unwrap();
        assert!((t - (2.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn node_table_examples() {
        assert_eq!(build_node_table(2, 2).unwrap().nodes(), &[0.0, 0.0, 1.0]);
        assert_eq!(build_node_table(3, 3).unwrap().nodes(), &[0.0, 0.0, 0.0, 1.0]);
        let t = build_node_table(4, 2).unwrap();
        let expect = [0.0, 0.0, (1.0f64 / 6.0).sqrt(), 0.5f64.sqrt(), 1.0];
        for (a, b) in t.nodes().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
    }

    #[test]
    fn degree_errors() {
        assert!(akr_node(1, 0, 2).is_err());
        assert!(akr_node(4, 5, 2).is_err());
        assert!(akr_node(4, 1, 1).is_err());
        assert!(build_node_table(2, 3).is_err());
        assert!(remainder_r(1, 0).is_err());
        assert!(remainder_r(4, 5).is_err());
        assert!(akr_apply(&Function1D::constant(1.0), 2, 3, 0.5).is_err());
        assert!(fixed_point_error(8, 2, 1).is_err());
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(remainder_r(4, 0).unwrap(), -0.125);
        assert_eq!(remainder_r(2, 2).unwrap(), 0.0);
        assert_eq!(remainder_r(4, 1).unwrap(), 0.15625);
    }

    #[test]
    fn remainder_vanishes_at_k_equals_n() {
        for n in 2..=4096 {
            assert_eq!(remainder_r(n, n).unwrap(), 0.0, "n = {n}");
        }
    }

    #[test]
    fn apply_examples() {
        let one = Function1D::constant(1.0);
        assert!((akr_apply(&one, 8, 2, 0.3).unwrap() - 1.0).abs() < 1e-15);
        let sq = Function1D::monomial(2);
        assert!((akr_apply(&sq, 16, 2, 0.4).unwrap() - 0.16).abs() < 1e-12);
        let id = Function1D::monomial(1);
        assert_eq!(akr_apply(&id, 2, 2, 0.5).unwrap(), 0.25);
    }

    #[test]
    fn fixed_point_examples() {
        assert!(fixed_point_error(2, 2, 11).unwrap() <= 1e-13);
        assert!(fixed_point_error(64, 2, 101).unwrap() <= 1e-12);
        assert!(fixed_point_error(64, 3, 101).unwrap() <= 1e-12);
    }

    #[test]
    fn node_table_invariants_general_j() {
        for j in 2..=5 {
            for n in [j, j + 1, 10, 77, 1000] {
                let t = build_node_table(n, j).unwrap();
                let v = t.nodes();
                assert_eq!(v.len(), n + 1);
                assert!(v[..j].iter().all(|&x| x == 0.0));
                assert_eq!(v[n], 1.0);
                assert!(v.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
