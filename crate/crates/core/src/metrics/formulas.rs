//! Closed-form word lengths and estimates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::DistanceValue;
use crate::groups::{BsNormalForm, HeisenbergTriple, LamplighterElement};

/// Word length over `{a, t}` from the right-first normal form:
/// `k + l + min(2i + j + |m + j|, 2j + i + |m - i|)` where `i` is the
/// rightmost nonnegative lit lamp and `j` the distance to the leftmost
/// negative one, each 0 when there is no such lamp.
pub fn lamplighter_distance(g: &LamplighterElement) -> u64 {
    let rf = g.rf_params();
    let i = rf.i.last().copied().unwrap_or(0);
    let j = rf.j.last().copied().unwrap_or(0);
    let m = rf.m;
    let tour = (2 * i + j + (m + j).abs()).min(2 * j + i + (m - i).abs());
    (rf.k + rf.l) as u64 + tour as u64
}

/// `(|x| + |y| + √|z|) / 4 ≤ d ≤ 6 (|x| + |y| + √|z|)` over `{s, p, q}`.
pub fn h3_metric_bounds(g: &HeisenbergTriple) -> DistanceValue {
    let size = to_f64(&g.x).abs() + to_f64(&g.y).abs() + to_f64(&g.z).abs().sqrt();
    DistanceValue::new(size / 4.0, 6.0 * size)
}

fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Stem length and `ln(|k| + 1)` for the normal form `stem · a^k`.
pub fn bs_complexity(g: &BsNormalForm) -> (usize, f64) {
    (g.stem.len(), (to_f64(&g.tail).abs() + 1.0).ln())
}

/// Exact word length of `a^n` in `BS(1, q)` over `{a, a^2, …, a^(q-1), t}`.
///
/// A geodesic for `a^n` climbs `h` levels: `a^c0 t a^c1 t … a^ch t^-h`
/// with `Σ c_j q^j = n`, costing `2h + Σ ⌈|c_j| / (q-1)⌉`. Below the top
/// each `c_j` is a residue of the remaining exponent, taken within `2q` of
/// zero.
pub fn bs_power_distance(q: u32, n: &BigInt) -> BigInt {
    assert!(q >= 2, "BS(1, q) needs q >= 2");
    let mut memo = HashMap::new();
    power_cost(&BigInt::from(q), n, &mut memo)
}

fn letters_for(c: &BigInt, q: &BigInt) -> BigInt {
    let step = q - 1;
    c.abs().div_ceil(&step)
}

fn power_cost(q: &BigInt, n: &BigInt, memo: &mut HashMap<BigInt, BigInt>) -> BigInt {
    if let Some(v) = memo.get(n) {
        return v.clone();
    }
    let mut best = letters_for(n, q);
    if n.abs() >= *q {
        let r = n.mod_floor(q);
        for c in [&r - 2 * q, &r - q, r.clone(), &r + q] {
            let rest: BigInt = (n - &c) / q;
            if rest.abs() >= n.abs() {
                continue;
            }
            let cost = letters_for(&c, q) + 2 + power_cost(q, &rest, memo);
            if cost < best {
                best = cost;
            }
        }
    }
    memo.insert(n.clone(), best.clone());
    best
}

/// Constants `(C1, C2)` with `C1·c - D1 ≤ d ≤ C2·c + D2` on every sample
/// `(c, d)`, for the given offsets: the largest valid `C1` and the smallest
/// valid `C2`. `None` when no positive pair exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichFit {
    pub c1: f64,
    pub c2: f64,
    pub d1: f64,
    pub d2: f64,
}

pub fn fit_sandwich(samples: &[(f64, f64)], d1: f64, d2: f64) -> Option<SandwichFit> {
    let mut c1 = f64::INFINITY;
    let mut c2: f64 = 0.0;
    for &(c, d) in samples {
        if c > 0.0 {
            c1 = c1.min((d + d1) / c);
            c2 = c2.max((d - d2) / c);
        } else if d > d2 || -d1 > d {
            return None;
        }
    }
    if c1.is_infinite() {
        c1 = 1.0;
    }
    if c2 == 0.0 {
        c2 = f64::MIN_POSITIVE;
    }
    (c1 > 0.0).then_some(SandwichFit { c1, c2, d1, d2 })
}
