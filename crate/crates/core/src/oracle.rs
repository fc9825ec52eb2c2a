//! Brute-force reference implementations.
//!
//! Nothing here calls the closed forms, early exits or fundamental-weight
//! pairings of the main path; only the simple roots and coroots of the datum
//! are taken as input.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::vector::{HalfIntVector, Rational};

fn simple_coroots(datum: &RootDatum) -> Vec<HalfIntVector> {
    datum.simple_roots().map(|r| r.coroot.clone()).collect()
}

/// The full root system, generated from the simple roots by simple reflections.
pub fn oracle_roots(datum: &RootDatum) -> Vec<HalfIntVector> {
    let simple: Vec<HalfIntVector> = datum.simple_roots().map(|r| r.vector.clone()).collect();
    let mut seen: BTreeSet<HalfIntVector> = simple.iter().cloned().collect();
    let mut frontier: Vec<HalfIntVector> = simple.clone();
    while let Some(x) = frontier.pop() {
        for s in &simple {
            let y = reflect(s, &x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn reflect(root: &HalfIntVector, v: &HalfIntVector) -> HalfIntVector {
    let num = 2 * v.dot_doubled(root);
    let den = root.dot_doubled(root);
    let shift: Vec<i64> = root.doubled().iter().map(|&r| r * num / den).collect();
    v - &HalfIntVector::from_doubled(shift)
}

fn regular_direction(dim: usize) -> HalfIntVector {
    HalfIntVector::from_ints(&(0..dim).map(|i| (dim - i) as i64).collect::<Vec<_>>())
}

/// Positive roots: those pairing positively with a regular dominant direction.
pub fn oracle_positive_roots(datum: &RootDatum) -> Vec<HalfIntVector> {
    let reg = regular_direction(datum.dim());
    oracle_roots(datum)
        .into_iter()
        .filter(|a| a.dot_doubled(&reg) > 0)
        .collect()
}

/// `2 rho` as the sum of the positive roots.
pub fn oracle_two_rho(datum: &RootDatum) -> HalfIntVector {
    oracle_positive_roots(datum)
        .iter()
        .fold(HalfIntVector::zero(datum.dim()), |acc, a| &acc + a)
}

/// Dominant representative by reflecting in any positive root that pairs
/// negatively, until none does.
pub fn oracle_dominant(datum: &RootDatum, v: &HalfIntVector) -> HalfIntVector {
    dominant_with(&oracle_positive_roots(datum), v)
}

fn dominant_with(positive: &[HalfIntVector], v: &HalfIntVector) -> HalfIntVector {
    let mut cur = v.clone();
    while let Some(a) = positive.iter().find(|a| cur.dot_doubled(a) < 0) {
        cur = reflect(a, &cur);
    }
    cur
}

/// Searches for nonnegative integers `c_i` with `mu - nu = sum c_i alpha_i^v`.
///
/// Each `c_i` ranges over `0..=B` with `B` bounding the coefficients by the
/// norms of `mu` and `nu`; a branch is cut once a coordinate that no later
/// coroot touches is nonzero.
pub fn oracle_dominance(datum: &RootDatum, nu: &HalfIntVector, mu: &HalfIntVector) -> bool {
    let coroots = simple_coroots(datum);
    let dim = datum.dim();
    let bound = (mu.l1_doubled() + nu.l1_doubled()) / 2 + 1;
    let last_touch: Vec<Option<usize>> = (0..dim)
        .map(|k| (0..coroots.len()).rev().find(|&i| coroots[i].doubled()[k] != 0))
        .collect();
    let target = mu - nu;
    let mut residual = target.doubled().to_vec();
    search(&coroots, &last_touch, 0, bound, &mut residual)
}

fn search(coroots: &[HalfIntVector], last_touch: &[Option<usize>], i: usize, bound: i64, residual: &mut [i64]) -> bool {
    let settled = |upto: Option<usize>, residual: &[i64]| {
        residual
            .iter()
            .zip(last_touch)
            .all(|(&r, lt)| r == 0 || matches!((lt, upto), (Some(t), Some(u)) if *t > u))
    };
    if i == coroots.len() {
        return residual.iter().all(|&r| r == 0);
    }
    let step = coroots[i].doubled();
    for c in 0..=bound {
        if c > 0 {
            for (r, s) in residual.iter_mut().zip(step) {
                *r -= s;
            }
        }
        if settled(Some(i), residual) && search(coroots, last_touch, i + 1, bound, residual) {
            restore(residual, step, c);
            return true;
        }
    }
    restore(residual, step, bound);
    false
}

fn restore(residual: &mut [i64], step: &[i64], times: i64) {
    for (r, s) in residual.iter_mut().zip(step) {
        *r += s * times;
    }
}

/// `k_alpha` by scanning every `k` in `[-cap, cap]` with no early exit. Fails
/// loudly if the admissible `k` do not form an interval containing 0.
pub fn oracle_k_alpha(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    coroot: &HalfIntVector,
) -> Result<i64> {
    let cap = lambda.l1_doubled() + mu.l1_doubled() + 2;
    let positive = oracle_positive_roots(datum);
    let admissible: Vec<i64> = (-cap..=cap)
        .filter(|&k| {
            let shifted = lambda - &coroot.scale(k);
            oracle_dominance(datum, &dominant_with(&positive, &shifted), mu)
        })
        .collect();
    let (lo, hi) = match (admissible.first(), admissible.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => {
            return Err(Error::Invariant(format!(
                "k = 0 not admissible for lambda = {lambda}, mu = {mu}"
            )))
        }
    };
    if admissible.len() as i64 != hi - lo + 1 || lo > 0 || hi < 0 {
        return Err(Error::Invariant(format!(
            "admissible k for coroot {coroot} at lambda = {lambda}, mu = {mu} are not an interval through 0: {admissible:?}"
        )));
    }
    if hi == cap {
        return Err(Error::Invariant(format!("k scan reached its cap {cap}")));
    }
    Ok(hi)
}

/// Weights of `V(varpi)`: the closure of `{varpi}` under filling root strings,
/// `nu -> nu - j alpha` for `0 <= j <= <nu, alpha^v>`.
pub fn oracle_weights(datum: &RootDatum, varpi: &HalfIntVector) -> Result<BTreeSet<HalfIntVector>> {
    if datum.rank() > 4 || varpi.max_abs_doubled() > 6 {
        return Err(Error::ScaleGuard(format!(
            "rank {} and highest weight {varpi}; limits are rank 4 and coordinates 3",
            datum.rank()
        )));
    }
    let roots = oracle_roots(datum);
    let mut seen = BTreeSet::from([varpi.clone()]);
    let mut frontier = vec![varpi.clone()];
    while let Some(nu) = frontier.pop() {
        for a in &roots {
            let m = 2 * nu.dot_doubled(a) / a.dot_doubled(a);
            for j in 1..=m {
                let w = &nu - &a.scale(j);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
    }
    Ok(seen)
}

fn bound_value(mu: &HalfIntVector, lambda: &HalfIntVector, varpi: &HalfIntVector, w: &HalfIntVector) -> Result<i64> {
    let v = mu.pairing(varpi)? - lambda.pairing(w)?;
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Invariant(format!("non-integral bound at ({varpi}, {w})")))
    }
}

/// `l_alpha` over the given highest weights, from the fully materialized set
/// of pairs in `W(alpha)`; `None` if there is no such pair.
pub fn oracle_l_alpha(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    alpha: &HalfIntVector,
    search: &[HalfIntVector],
) -> Result<Option<i64>> {
    let mut pairs = Vec::new();
    for varpi in search {
        let weights = oracle_weights(datum, varpi)?;
        for w in &weights {
            if weights.contains(&(w + alpha)) {
                pairs.push((varpi.clone(), w.clone()));
            }
        }
    }
    pairs
        .iter()
        .map(|(varpi, w)| bound_value(mu, lambda, varpi, w))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().min())
}

/// `l_H` over the given highest weights in characteristic 0, `H` given by its
/// coordinates; `None` if every weight pairs to zero with `H`.
pub fn oracle_l_h(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    h: &[Rational],
    search: &[HalfIntVector],
) -> Result<Option<i64>> {
    let mut pairs = Vec::new();
    for varpi in search {
        for w in oracle_weights(datum, varpi)? {
            let dh: Rational = h.iter().zip(w.coords()).map(|(a, b)| *a * b).sum();
            if dh != Rational::from_integer(0) {
                pairs.push((varpi.clone(), w));
            }
        }
    }
    pairs
        .iter()
        .map(|(varpi, w)| bound_value(mu, lambda, varpi, w))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().min())
}

/// All dominant coweights `lambda <= mu`, by oracle dominance over every
/// dominant vector of the coordinate box.
pub fn oracle_lambda_below(datum: &RootDatum, mu: &HalfIntVector) -> Vec<HalfIntVector> {
    let bound = mu.max_abs_doubled();
    let dim = datum.dim();
    let parity = mu.doubled().first().map_or(0, |d| d.rem_euclid(2));
    let values: Vec<i64> = (-bound..=bound).filter(|v| v.rem_euclid(2) == parity).collect();
    let positive = oracle_positive_roots(datum);
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let v = HalfIntVector::from_doubled(idx.iter().map(|&i| values[i]).collect());
        if positive.iter().all(|a| v.dot_doubled(a) >= 0) && oracle_dominance(datum, &v, mu) {
            out.push(v);
        }
        let mut pos = 0;
        loop {
            if pos == dim {
                out.sort();
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
