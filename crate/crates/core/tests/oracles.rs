//! Expected values computed independently in exact rational arithmetic.

use akr_core::asymptotics::lemma_sum;
use akr_core::{
    akr_apply, akr_node, basis_weight, bernstein_apply, build_node_table, tensor_akr_apply,
    tensor_bernstein_apply, BasisContext, Function1D, Function2D, SquarePoint,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `C(n,k) x^k (1-x)^(n-k)` exactly.
fn exact_weight(n: u64, k: u64, x: &BigRational) -> BigRational {
    let one = BigRational::one();
    let c = BigRational::from_integer(binomial(n, k));
    c * num_traits::pow(x.clone(), k as usize) * num_traits::pow(one - x, (n - k) as usize)
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

/// `sqrt(k(k-1) / (n(n-1)))` from the exact ratio.
fn exact_node_j2(n: u64, k: u64) -> f64 {
    if k < 2 {
        return 0.0;
    }
    to_f64(&rat((k * (k - 1)) as i64, (n * (n - 1)) as i64)).sqrt()
}

#[test]
fn basis_weight_against_rational_arithmetic() {
    // 10 * (3/10)^2 * (7/10)^3 = 0.3087
    let w = exact_weight(5, 2, &rat(3, 10));
    assert_eq!(w, rat(3087, 10000));
    let ctx = BasisContext::new(5).unwrap();
    let got = basis_weight(&ctx, 2, 0.3).unwrap();
    assert!((got - to_f64(&w)).abs() < 1e-15);

    for n in [3u64, 10, 31, 60] {
        let ctx = BasisContext::new(n as usize).unwrap();
        for (p, q) in [(1, 7), (1, 2), (5, 6), (99, 100)] {
            let x = rat(p, q);
            let xf = to_f64(&x);
            for k in 0..=n {
                let exact = to_f64(&exact_weight(n, k, &x));
                let got = ctx.weight(k as usize, xf).unwrap();
                let tol = 1e-13 * exact.max(1e-300) + 1e-300;
                assert!((got - exact).abs() <= tol, "n={n} k={k} x={xf}: {got} vs {exact}");
            }
        }
    }
}

#[test]
fn node_examples_against_exact_ratios() {
    let t = akr_node(4, 2, 2).unwrap();
    assert!((t - exact_node_j2(4, 2)).abs() < 1e-16);
    assert!((t - 0.408_248_3).abs() < 1e-7);

    let table = build_node_table(4, 2).unwrap();
    let expect: Vec<f64> = (0..=4).map(|k| exact_node_j2(4, k)).collect();
    for (a, b) in table.nodes().iter().zip(&expect) {
        assert!((a - b).abs() < 1e-16);
    }
    assert_eq!(build_node_table(2, 2).unwrap().nodes(), &[0.0, 0.0, 1.0]);

    // j = 3: cube root of k(k-1)(k-2) / (n(n-1)(n-2)).
    for n in [3u64, 8, 50] {
        for k in 0..=n {
            let num = (k * k.saturating_sub(1) * k.saturating_sub(2)) as i64;
            let den = (n * (n - 1) * (n - 2)) as i64;
            let exact = to_f64(&rat(num, den)).cbrt();
            let got = akr_node(n as usize, k as usize, 3).unwrap();
            assert!((got - exact).abs() < 4e-16, "n={n} k={k}");
        }
    }
}

#[test]
fn bernstein_square_brute_force() {
    // sum_i (i/2)^2 p_{2,i}(1/2) = 0 + 1/4 * 1/2 + 1 * 1/4 = 3/8
    let exact: BigRational = (0..=2u64)
        .map(|i| rat((i * i) as i64, 4) * exact_weight(2, i, &rat(1, 2)))
        .fold(BigRational::zero(), |a, b| a + b);
    assert_eq!(exact, rat(3, 8));
    assert_eq!(bernstein_apply(&Function1D::monomial(2), 2, 0.5).unwrap(), 0.375);
}

#[test]
fn akr_identity_against_rational_weights() {
    let e1 = Function1D::monomial(1);
    for n in 2..=32u64 {
        for (p, q) in [(1, 10), (1, 3), (1, 2), (4, 5), (1, 1)] {
            let x = rat(p, q);
            let mut oracle = 0.0;
            for k in 0..=n {
                oracle += to_f64(&exact_weight(n, k, &x)) * exact_node_j2(n, k);
            }
            let got = akr_apply(&e1, n as usize, 2, to_f64(&x)).unwrap();
            assert!((got - oracle).abs() < 1e-13, "n={n} x={p}/{q}: {got} vs {oracle}");
        }
    }
    // Only t_{2,2} = 1 contributes: p_{2,2}(1/2) = 1/4.
    assert_eq!(akr_apply(&e1, 2, 2, 0.5).unwrap(), 0.25);
}

#[test]
fn tensor_brute_force() {
    let p = SquarePoint::new(0.5, 0.5).unwrap();
    let half = rat(1, 2);
    // f(s,t) = s^2 on the 3x3 Bernstein grid.
    let mut exact = BigRational::zero();
    for k in 0..=2u64 {
        for l in 0..=2u64 {
            exact += rat((k * k) as i64, 4) * exact_weight(2, k, &half) * exact_weight(2, l, &half);
        }
    }
    let s2 = Function2D::new(|s, _| s * s);
    assert_eq!(tensor_bernstein_apply(&s2, 2, p).unwrap(), to_f64(&exact));

    // f(s,t) = s t at the AKR nodes, n = 2: only (k,l) = (2,2) survives.
    let st = Function2D::new(|s, t| s * t);
    assert_eq!(tensor_akr_apply(&st, 2, 2, p).unwrap(), 0.0625);
}

#[test]
fn lemma_sum_two_term_brute_force() {
    // 2 * (p_{2,1}(1/2) R(2,1) + p_{2,2}(1/2) R(2,2)); R(2,1) = 1/2 - 0 - 1/4 + 1/8.
    let r21 = rat(1, 2) - rat(1, 4) + rat(1, 8);
    let exact = rat(2, 1) * (rat(1, 2) * r21 + rat(1, 4) * BigRational::zero());
    assert_eq!(exact, rat(3, 8));
    assert_eq!(lemma_sum(2, 0.5).unwrap(), to_f64(&exact));
}
