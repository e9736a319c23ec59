//! Independent checks on plane counts. Nothing here feeds the main pipeline.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Memoized numbers of rational plane curves of degree `d` through `3d − 1`
/// points, from Kontsevich's recursion.
#[derive(Clone, Debug)]
pub struct RecursionTable {
    values: Vec<BigInt>,
}

impl Default for RecursionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl RecursionTable {
    pub fn new() -> Self {
        // index 0 unused
        Self { values: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn get(&mut self, d: usize) -> BigInt {
        assert!(d >= 1, "degree must be positive");
        while self.values.len() <= d {
            let next = self.next_value(self.values.len());
            self.values.push(next);
        }
        self.values[d].clone()
    }

    // N_d = Σ_{a+b=d} N_a N_b a² b (b·C(3d−4, 3a−2) − a·C(3d−4, 3a−1))
    fn next_value(&self, d: usize) -> BigInt {
        let mut sum = BigInt::zero();
        for a in 1..d {
            let b = d - a;
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            let left = &bb * binomial(3 * d - 4, 3 * a - 2);
            let right = &ba * binomial(3 * d - 4, 3 * a - 1);
            sum += &self.values[a] * &self.values[b] * &ba * &ba * &bb * (left - right);
        }
        sum
    }
}

pub fn kontsevich_n(d: usize) -> BigInt {
    RecursionTable::new().get(d)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// `(3d−4)!·54^{−d} ≤ N ≤ (3d−5)!`, compared in integers.
pub fn sandwich_check(d: usize, n: &BigInt) -> bool {
    assert!(d >= 2, "the bounds are stated for d >= 2");
    let lower = factorial(3 * d - 4);
    let upper = factorial(3 * d - 5);
    lower <= n * BigInt::from(54).pow(d as u32) && *n <= upper
}

/// Reducible 3-nodal quartics through 11 general points: a line through two
/// of them times the unique cubic through the other nine.
pub fn reducible_rational_quartics() -> BigInt {
    binomial(11, 2)
}
