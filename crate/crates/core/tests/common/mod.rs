#![allow(dead_code)]

use c3_remodel::exactmath::{q, Field, RatFunc, Rational};
use c3_remodel::series::{TruncatedSeries, EXACT};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type S = TruncatedSeries<Rational>;

pub fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

/// A Laurent series with nonzero leading term, valuation in `val`, and
/// `len` known coefficients.
pub fn laurent(val: std::ops::Range<i64>, len: std::ops::Range<usize>) -> impl Strategy<Value = S> {
    (val, nonzero_rat(), prop::collection::vec(rat(), len)).prop_map(|(v, lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        let t = v + c.len() as i64;
        S::new(v, c, t)
    })
}

/// `u + a_2 u^2 + ...` style series with a unit leading coefficient.
pub fn tangent(len: std::ops::Range<usize>) -> impl Strategy<Value = S> {
    laurent(1..2, len)
}

/// Equal on the window both series know.
pub fn agree(a: &S, b: &S) -> Result<(), TestCaseError> {
    let lo = a.min_exp().min(b.min_exp());
    let hi = a.trunc_order().min(b.trunc_order());
    for e in lo..hi {
        let (x, y) = (a.coefficient(e).unwrap(), b.coefficient(e).unwrap());
        prop_assert_eq!(&x, &y, "coefficient of u^{} differs", e);
    }
    Ok(())
}

fn identity(trunc: i64) -> S {
    S::monomial(Rational::one(), 1, trunc)
}

pub fn mul_commutative_associative(r: &mut TestRunner) -> Result<(), String> {
    let st = (laurent(-3..4, 0..8), laurent(-3..4, 0..8), laurent(-3..4, 0..8));
    r.run(&st, |(a, b, c)| {
        agree(&a.mul(&b), &b.mul(&a))?;
        prop_assert_eq!(a.mul(&b).trunc_order(), b.mul(&a).trunc_order());
        agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)))?;
        agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c)))?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn inverse_round_trip(r: &mut TestRunner) -> Result<(), String> {
    r.run(&laurent(-4..5, 0..10), |a| {
        let v = a.valuation().unwrap();
        let p = a.mul(&a.inverse().unwrap());
        prop_assert_eq!(p.trunc_order(), a.trunc_order() - v);
        agree(&p, &S::one(EXACT))?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn reversion_round_trip(r: &mut TestRunner) -> Result<(), String> {
    r.run(&tangent(1..9), |a| {
        let b = a.reversion().unwrap();
        let ab = S::compose(&a, &b).unwrap();
        let ba = S::compose(&b, &a).unwrap();
        prop_assert_eq!(ab.trunc_order(), a.trunc_order());
        agree(&ab, &identity(EXACT))?;
        agree(&ba, &identity(EXACT))?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn composition_associative(r: &mut TestRunner) -> Result<(), String> {
    let st = (laurent(-2..4, 0..6), laurent(1..3, 0..6), laurent(1..3, 0..6));
    r.run(&st, |(a, b, c)| {
        let left = S::compose(&S::compose(&a, &b).unwrap(), &c).unwrap();
        let right = S::compose(&a, &S::compose(&b, &c).unwrap()).unwrap();
        agree(&left, &right)?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn residue_of_derivative_vanishes(r: &mut TestRunner) -> Result<(), String> {
    r.run(&laurent(-6..3, 2..10), |a| {
        let d = a.differentiate();
        if d.trunc_order() > -1 {
            prop_assert!(d.residue().unwrap().is_zero());
        }
        // and integrating back recovers everything but the constant term
        let back = d.antiderivative().unwrap();
        let c0 = if a.trunc_order() > 0 { a.coefficient(0).unwrap() } else { Rational::zero() };
        agree(&back, &a.sub(&S::monomial(c0, 0, EXACT)))?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub fn log_and_sqrt_identities(r: &mut TestRunner) -> Result<(), String> {
    let st = (laurent(1..3, 0..7), laurent(1..3, 0..7));
    r.run(&st, |(a, b)| {
        let lhs = a.log1p().unwrap().add(&b.log1p().unwrap());
        let rhs = a.add(&b).add(&a.mul(&b)).log1p().unwrap();
        agree(&lhs, &rhs)?;
        let s = a.sqrt1p().unwrap();
        agree(&s.mul(&s), &a.add(&S::one(EXACT)))?;
        Ok(())
    })
    .map_err(|e| e.to_string())
}

/// Evaluation at a generic framing is a field homomorphism.
pub fn evaluation_is_homomorphic(r: &mut TestRunner) -> Result<(), String> {
    let f = "f".parse::<RatFunc>().expect("the symbol f");
    let poly = prop::collection::vec(-4i64..=4, 1..4).prop_map(move |c| {
        c.iter().rev().fold(RatFunc::zero(), |acc, k| {
            acc.mul(&f).add(&RatFunc::from_int(*k))
        })
    });
    let st = (poly.clone(), poly.prop_filter("nonzero", |p| !p.is_zero()), rat());
    r.run(&st, |(a, b, x)| {
        let quotient = a.div(&b).unwrap();
        match (quotient.evaluate(&x), a.evaluate(&x), b.evaluate(&x)) {
            (Ok(qv), Ok(av), Ok(bv)) if !bv.is_zero() => {
                prop_assert_eq!(qv, av.checked_div(&bv).unwrap());
            }
            _ => {}
        }
        let s = a.add(&b);
        let p = a.mul(&b);
        prop_assert_eq!(s.evaluate(&x).unwrap(), &a.evaluate(&x).unwrap() + &b.evaluate(&x).unwrap());
        prop_assert_eq!(p.evaluate(&x).unwrap(), &a.evaluate(&x).unwrap() * &b.evaluate(&x).unwrap());
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub type Property = fn(&mut TestRunner) -> Result<(), String>;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("mul_commutative_associative", mul_commutative_associative),
    ("inverse_round_trip", inverse_round_trip),
    ("reversion_round_trip", reversion_round_trip),
    ("composition_associative", composition_associative),
    ("residue_of_derivative_vanishes", residue_of_derivative_vanishes),
    ("log_and_sqrt_identities", log_and_sqrt_identities),
    ("evaluation_is_homomorphic", evaluation_is_homomorphic),
];

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}
