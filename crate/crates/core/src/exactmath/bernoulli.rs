use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::Rational;
use crate::error::{Error, Result};

static MEMO: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_m` with `t/(e^t - 1) = sum B_m t^m / m!`, so
/// `B_1 = -1/2`.
pub fn bernoulli(m: usize) -> Rational {
    if let Some(b) = MEMO.read().expect("memo lock").get(m) {
        return b.clone();
    }
    let mut memo = MEMO.write().expect("memo lock");
    while memo.len() <= m {
        let n = memo.len();
        // sum_{j <= n} C(n+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, b) in memo.iter().enumerate() {
            acc.add_mul(&Rational::from_integer(binom.clone()), b);
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        let bn = if n == 0 {
            Rational::one()
        } else {
            -(&acc / &Rational::from_integer(BigInt::from(n + 1)))
        };
        memo.push(bn);
    }
    memo[m].clone()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Constant-map contribution in genus `g`:
/// `(-1)^g |B_2g| |B_{2g-2}| / (2 (2g) (2g-2) (2g-2)!)`.
pub fn faber_pandharipande(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::Domain(format!("F_g is defined for g >= 2, got {g}")));
    }
    let g = g as usize;
    let num = &bernoulli(2 * g).abs() * &bernoulli(2 * g - 2).abs();
    let den = BigInt::from(2 * (2 * g) * (2 * g - 2)) * factorial(2 * g - 2);
    let v = &num / &Rational::from_integer(den);
    Ok(if g.is_multiple_of(2) { v } else { -v })
}
