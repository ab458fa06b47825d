//! Tensor-product operators on the unit square:
//! `B_n^[2] = B_n (x) B_n` and `B_{n,j}^[2] = B_{n,j} (x) B_{n,j}`.

use crate::akr::NodeTable;
use crate::bernstein::{weighted_sum, BasisContext};
use crate::error::Result;
use crate::function::{Function2D, SquarePoint};
use crate::numeric::CompensatedSum;

/// Per-point weight vectors for both axes, reusable across functions and
/// node sets of the same degree.
#[derive(Debug, Clone)]
pub struct PointWeights {
    pub wx: Vec<f64>,
    pub wy: Vec<f64>,
}

impl PointWeights {
    pub fn new(ctx: &BasisContext, p: SquarePoint) -> Result<Self> {
        Ok(Self { wx: ctx.weights(p.x)?, wy: ctx.weights(p.y)? })
    }
}

/// `sum_k sum_l wx[k] wy[l] g(k, l)`, `k` outer and `l` inner, both ascending.
pub(crate) fn double_sum(w: &PointWeights, mut g: impl FnMut(usize, usize) -> f64) -> f64 {
    let mut outer = CompensatedSum::new();
    for (k, &a) in w.wx.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let mut inner = CompensatedSum::new();
        for (l, &b) in w.wy.iter().enumerate() {
            if b != 0.0 {
                inner.add(b * g(k, l));
            }
        }
        outer.add(a * inner.value());
    }
    outer.value()
}

/// Tensor-product operator with the same 1D nodes on both axes.
pub(crate) fn tensor_apply_nodes(f: &Function2D, nodes: &[f64], w: &PointWeights) -> f64 {
    match f.factors() {
        Some((g, h)) => {
            let gx = weighted_sum(&w.wx, |k| g.eval(nodes[k]));
            let hy = weighted_sum(&w.wy, |l| h.eval(nodes[l]));
            gx * hy
        }
        None => double_sum(w, |k, l| f.eval(nodes[k], nodes[l])),
    }
}

pub(crate) fn bernstein_nodes(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..=n).map(|k| k as f64 / nf).collect()
}

/// `B_n^[2] f(p)`.
pub fn tensor_bernstein_apply(f: &Function2D, n: usize, p: SquarePoint) -> Result<f64> {
    let ctx = BasisContext::new(n)?;
    let w = PointWeights::new(&ctx, p)?;
    Ok(tensor_apply_nodes(f, &bernstein_nodes(n), &w))
}

/// `B_{n,j}^[2] f(p)`; one node table serves both axes.
pub fn tensor_akr_apply(f: &Function2D, n: usize, j: usize, p: SquarePoint) -> Result<f64> {
    let table = NodeTable::new(n, j)?;
    let ctx = BasisContext::new(n)?;
    let w = PointWeights::new(&ctx, p)?;
    Ok(tensor_apply_nodes(f, table.nodes(), &w))
}

/// `B_n^[2] f` with precomputed weights.
pub fn tensor_bernstein_apply_with(f: &Function2D, w: &PointWeights) -> f64 {
    let n = w.wx.len() - 1;
    tensor_apply_nodes(f, &bernstein_nodes(n), w)
}

/// `B_{n,j}^[2] f` with precomputed weights and node table.
pub fn tensor_akr_apply_with(f: &Function2D, table: &NodeTable, w: &PointWeights) -> f64 {
    debug_assert_eq!(table.n() + 1, w.wx.len());
    tensor_apply_nodes(f, table.nodes(), w)
}
