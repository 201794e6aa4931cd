#![allow(dead_code)]

use cke_core::field::{FieldElement, MonicIntPolynomial};
use cke_core::linalg::{BigRational, QVector};
use cke_core::platform::{GroupElement, PlatformData, PlatformSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn platform(name: &str, lower: &[i64], units: &[&[i64]], h: usize) -> PlatformSpec {
    PlatformSpec::new(PlatformData {
        name: name.into(),
        polynomial: MonicIntPolynomial::from_ints(lower).unwrap(),
        basis: None,
        units: units.iter().map(|u| QVector::from_ints(u)).collect(),
        torsion_order: 2,
        signature: None,
        expected_hirsch_length: Some(h),
    })
    .unwrap()
}

pub fn golden() -> PlatformSpec {
    platform("x2-x-1", &[-1, -1], &[&[-1, 0], &[0, 1]], 3)
}

pub fn quintic() -> PlatformSpec {
    platform(
        "x5-x3-1",
        &[-1, 0, 0, -1, 0],
        &[&[-1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[1, 1, 0, 0, 0]],
        7,
    )
}

pub fn septic() -> PlatformSpec {
    platform(
        "x7-x3-1",
        &[-1, 0, 0, -1, 0, 0, 0],
        &[
            &[-1, 0, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0],
            &[1, -1, 0, 0, 0, 0, 0],
        ],
        10,
    )
}

pub fn all() -> Vec<PlatformSpec> {
    vec![golden(), quintic(), septic()]
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Small rationals, zero allowed.
pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn coeff_vec(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(small_rational(), n)
}

pub fn element(p: &PlatformSpec, coeffs: Vec<BigRational>) -> FieldElement {
    FieldElement::new(p.field(), QVector::new(coeffs)).unwrap()
}

/// Schoolbook product of coefficient lists reduced by `x^n = -Σ c_i x^i`.
pub fn naive_mul(lower: &[i64], a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = lower.len();
    let mut prod = vec![rat(0, 1); 2 * n - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (n..prod.len()).rev() {
        let top = prod[k].clone();
        for (i, c) in lower.iter().enumerate() {
            prod[k - n + i] -= &top * rat(*c, 1);
        }
        prod[k] = rat(0, 1);
    }
    prod.truncate(n);
    prod
}

/// `(C, S)(D, T) = (CD, SD + T)` spelled out with field operations.
pub fn pair_mul(x: &GroupElement, y: &GroupElement) -> GroupElement {
    GroupElement::lifted(
        x.unit() * y.unit(),
        &(x.translation() * y.unit()) + y.translation(),
    )
    .unwrap()
}

pub fn pair_inv(x: &GroupElement) -> GroupElement {
    let ci = x.unit().inv().unwrap();
    GroupElement::lifted(ci.clone(), -&(x.translation() * &ci)).unwrap()
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|x| *x == rat(0, 1)) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![rat(0, 1); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![rat(0, 1); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den.last().unwrap().recip();
    let mut quot = vec![rat(0, 1); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() * &lead_inv;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &factor * d;
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Inverse of `a` modulo the monic `x^n + Σ lower_i x^i` by the extended
/// Euclidean algorithm; `None` when `gcd(a, f) ≠ 1`.
pub fn euclid_inverse(lower: &[i64], a: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = lower.len();
    let mut f: Vec<BigRational> = lower.iter().map(|c| rat(*c, 1)).collect();
    f.push(rat(1, 1));
    let (mut r0, mut r1) = (f, trim(a.to_vec()));
    let (mut s0, mut s1) = (Vec::new(), vec![rat(1, 1)]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let lead = r0[0].recip();
    let mut out: Vec<BigRational> = s0.into_iter().map(|c| c * &lead).collect();
    out.resize(n, rat(0, 1));
    Some(out)
}

pub fn lower_ints(p: &PlatformSpec) -> Vec<i64> {
    p.field()
        .polynomial()
        .lower_coefficients()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}
