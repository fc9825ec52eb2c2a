//! Curve bounds `k_alpha`, Finkelberg-Mirkovic bounds `l_alpha`, Cartan
//! bounds `l_H`, and the exponent sets they cut out of the tangent space of
//! `Gr_G` at `t^lambda`.
//!
//! Exponents follow the tangent space decomposition
//! `T Gr_G = sum_alpha t^{<lambda,alpha> - 1} k[t^-1] X_alpha + t^-1 k[t^-1] t`:
//! a pair `(alpha, e)` stands for the vector `t^e X_alpha`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::{Root, RootDatum};
use crate::vector::{format_rational, HalfIntVector, Rational};
use crate::weyl_modules::{CartanElement, Characteristic, SearchSet};

/// Checks that `lambda` and `mu` are dominant coweights with `lambda <= mu`.
pub fn check_pair(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector) -> Result<()> {
    datum.check_dominant_coweight(lambda)?;
    datum.check_dominant_coweight(mu)?;
    if datum.dominance_leq_unchecked(lambda, mu) {
        Ok(())
    } else {
        Err(Error::NotBelow {
            lambda: lambda.clone(),
            mu: mu.clone(),
        })
    }
}

/// `<lambda, alpha>`.
pub fn root_pairing(lambda: &HalfIntVector, root: &Root) -> Result<i64> {
    lambda.integral_pairing(&root.vector)
}

/// Upper bound on any admissible `k`: `(lambda - k alpha^v)_dom <= mu` forces
/// `|lambda - k alpha^v| <= |mu|`, and `|alpha^v| >= 1`.
pub(crate) fn k_cap(lambda: &HalfIntVector, mu: &HalfIntVector) -> i64 {
    (lambda.l1_doubled() + mu.l1_doubled()) / 2 + 1
}

/// `k_alpha = max { k : (lambda - k alpha^v)_dom <= mu }`.
///
/// The admissible `k` form an interval containing 0, so the scan stops at the
/// first failure.
pub fn k_alpha(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector, root_index: usize) -> Result<i64> {
    check_pair(datum, lambda, mu)?;
    k_alpha_unchecked(datum, lambda, mu, datum.root(root_index)?)
}

pub(crate) fn k_alpha_unchecked(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    root: &Root,
) -> Result<i64> {
    let cap = k_cap(lambda, mu);
    let mut k = 0;
    let mut shifted = lambda.clone();
    loop {
        shifted = &shifted - &root.coroot;
        let dom = datum.dominant_rep(&shifted)?;
        if !datum.dominance_leq_unchecked(&dom, mu) {
            return Ok(k);
        }
        k += 1;
        if k > cap {
            return Err(Error::CapExceeded {
                root: root.label.clone(),
                cap,
            });
        }
    }
}

/// A minimizing pair for an `l`-bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimizingPair {
    pub value: i64,
    pub search_weight: String,
    pub weight: HalfIntVector,
}

/// `l_alpha` restricted to the search set:
/// `min <mu, varpi> - <lambda, varpi'>` over `varpi` in the search set and
/// `(varpi, varpi') in W(alpha)`.
pub fn l_alpha(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    root_index: usize,
    search: &SearchSet,
) -> Result<i64> {
    l_alpha_detailed(datum, lambda, mu, root_index, search).map(|p| p.value)
}

pub fn l_alpha_detailed(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    root_index: usize,
    search: &SearchSet,
) -> Result<MinimizingPair> {
    check_pair(datum, lambda, mu)?;
    let root = datum.root(root_index)?;
    l_alpha_unchecked(datum, lambda, mu, root, search)?.ok_or_else(|| Error::EmptyPairSet {
        what: root.label.clone(),
    })
}

pub(crate) fn l_alpha_unchecked(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    root: &Root,
    search: &SearchSet,
) -> Result<Option<MinimizingPair>> {
    let mut best: Option<(Rational, usize, &HalfIntVector)> = None;
    for (pos, entry) in search.entries().iter().enumerate() {
        let top = mu.pairing(&entry.weight)?;
        for nu in &entry.weights {
            if !entry.contains(&(nu + &root.vector)) {
                continue;
            }
            let value = top - lambda.pairing(nu)?;
            if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                best = Some((value, pos, nu));
            }
        }
    }
    best.map(|(value, pos, nu)| finish_pair(datum, value, &search.entries()[pos].label(datum.rank()), nu))
        .transpose()
}

fn finish_pair(_datum: &RootDatum, value: Rational, label: &str, nu: &HalfIntVector) -> Result<MinimizingPair> {
    if !value.is_integer() {
        return Err(Error::NonIntegral {
            what: format!("bound value at ({label}, {nu})"),
            value: format_rational(&value),
        });
    }
    Ok(MinimizingPair {
        value: value.to_integer(),
        search_weight: label.to_string(),
        weight: nu.clone(),
    })
}

/// `l_H` restricted to the search set: the minimum over pairs with
/// `d varpi'(H) != 0` in the given characteristic.
pub fn l_h(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    h: &CartanElement,
    search: &SearchSet,
    ch: Characteristic,
) -> Result<i64> {
    l_h_detailed(datum, lambda, mu, h, search, ch).map(|p| p.value)
}

pub fn l_h_detailed(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    h: &CartanElement,
    search: &SearchSet,
    ch: Characteristic,
) -> Result<MinimizingPair> {
    check_pair(datum, lambda, mu)?;
    l_h_unchecked(datum, lambda, mu, h, search, ch)
}

pub(crate) fn l_h_unchecked(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    h: &CartanElement,
    search: &SearchSet,
    ch: Characteristic,
) -> Result<MinimizingPair> {
    if h.coords().len() != datum.dim() {
        return Err(Error::DimensionMismatch {
            expected: datum.dim(),
            found: h.coords().len(),
        });
    }
    h.check_characteristic(ch)?;
    if h.is_zero_in(ch) {
        return Err(Error::ZeroCartan);
    }
    let mut best: Option<(Rational, usize, &HalfIntVector)> = None;
    for (pos, entry) in search.entries().iter().enumerate() {
        let top = mu.pairing(&entry.weight)?;
        for nu in &entry.weights {
            if ch.is_zero_in(&h.pair_weight(nu)) {
                continue;
            }
            let value = top - lambda.pairing(nu)?;
            if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                best = Some((value, pos, nu));
            }
        }
    }
    match best {
        Some((value, pos, nu)) => finish_pair(datum, value, &search.entries()[pos].label(datum.rank()), nu),
        None => Err(Error::EmptyPairSet { what: "H".to_string() }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub root: usize,
    pub label: String,
    pub vector: HalfIntVector,
    pub lambda_pairing: i64,
    pub k: i64,
    /// `None` when the search set has no pair in `W(alpha)`; reported as
    /// `"unbounded-search"`.
    #[serde(serialize_with = "serialize_l")]
    pub l: Option<i64>,
}

fn serialize_l<S: serde::Serializer>(l: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match l {
        Some(v) => s.serialize_i64(*v),
        None => s.serialize_str("unbounded-search"),
    }
}

/// `k_alpha` and `l_alpha` for every root at a fixed `(lambda, mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub search: Vec<String>,
    pub entries: Vec<BoundEntry>,
}

impl BoundTable {
    pub fn compute(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector, search: &SearchSet) -> Result<Self> {
        check_pair(datum, lambda, mu)?;
        let entries = datum
            .roots()
            .iter()
            .map(|r| {
                Ok(BoundEntry {
                    root: r.index,
                    label: r.label.clone(),
                    vector: r.vector.clone(),
                    lambda_pairing: root_pairing(lambda, r)?,
                    k: k_alpha_unchecked(datum, lambda, mu, r)?,
                    l: l_alpha_unchecked(datum, lambda, mu, r, search)?.map(|p| p.value),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            search: search.labels(datum),
            entries,
        })
    }

    pub fn k(&self, root: usize) -> i64 {
        self.entries[root].k
    }

    pub fn l(&self, root: usize) -> Option<i64> {
        self.entries[root].l
    }

    /// Roots violating `k_alpha = k_{-alpha} + <lambda, alpha>`.
    pub fn k_relation_failures(&self, datum: &RootDatum) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.k != self.k(datum.negative_of(e.root)) + e.lambda_pairing)
            .map(|e| e.root)
            .collect()
    }

    /// Roots violating `l_alpha = l_{-alpha} + <lambda, alpha>`.
    pub fn l_relation_failures(&self, datum: &RootDatum) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| match (e.l, self.l(datum.negative_of(e.root))) {
                (Some(l), Some(ln)) => l != ln + e.lambda_pairing,
                (None, None) => false,
                _ => true,
            })
            .map(|e| e.root)
            .collect()
    }

    /// Roots with `k_alpha > l_alpha`.
    pub fn inequality_failures(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.l.is_some_and(|l| e.k > l))
            .map(|e| e.root)
            .collect()
    }

    /// Roots with `k_alpha != l_alpha`.
    pub fn equality_failures(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.l != Some(e.k))
            .map(|e| e.root)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PhiKind {
    Cur,
    FmBound,
}

/// A finite set of `(root, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiSet {
    pub kind: PhiKind,
    pub entries: BTreeSet<(usize, i64)>,
}

impl PhiSet {
    fn from_bounds<'a>(kind: PhiKind, rows: impl Iterator<Item = (&'a BoundEntry, i64)>) -> Self {
        let mut entries = BTreeSet::new();
        for (e, bound) in rows {
            for j in 1..=bound {
                entries.insert((e.root, e.lambda_pairing - j));
            }
        }
        Self { kind, entries }
    }

    pub fn cur_from_table(table: &BoundTable) -> Self {
        Self::from_bounds(PhiKind::Cur, table.entries.iter().map(|e| (e, e.k)))
    }

    pub fn fm_from_table(table: &BoundTable) -> Result<Self> {
        let rows = table
            .entries
            .iter()
            .map(|e| {
                e.l.map(|l| (e, l))
                    .ok_or_else(|| Error::EmptyPairSet { what: e.label.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bounds(PhiKind::FmBound, rows.into_iter()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, root: usize, exponent: i64) -> bool {
        self.entries.contains(&(root, exponent))
    }

    pub fn is_subset(&self, other: &PhiSet) -> bool {
        self.entries.is_subset(&other.entries)
    }
}

/// `Phi^cur`: `<lambda,alpha> - k_alpha <= e <= <lambda,alpha> - 1`.
pub fn phi_cur(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector) -> Result<PhiSet> {
    check_pair(datum, lambda, mu)?;
    let mut entries = BTreeSet::new();
    for r in datum.roots() {
        let p = root_pairing(lambda, r)?;
        let k = k_alpha_unchecked(datum, lambda, mu, r)?;
        for j in 1..=k {
            entries.insert((r.index, p - j));
        }
    }
    Ok(PhiSet {
        kind: PhiKind::Cur,
        entries,
    })
}

/// Outer bound on `Phi^FM`: `<lambda,alpha> - l_alpha <= e <= <lambda,alpha> - 1`.
pub fn phi_fm_bound(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    search: &SearchSet,
) -> Result<PhiSet> {
    PhiSet::fm_from_table(&BoundTable::compute(datum, lambda, mu, search)?)
}

/// Exponents `k_{-beta}` of the curve-spanned Cartan directions
/// `t^{-j} H_beta`, `1 <= j <= k_{-beta}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanProfile {
    pub exponents: Vec<i64>,
    pub dimension: i64,
}

impl CartanProfile {
    /// `min_{beta in support} k_{-beta}`.
    pub fn min_over(&self, support: &[usize]) -> Option<i64> {
        support.iter().map(|&b| self.exponents[b]).min()
    }
}

pub fn cartan_cur(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector) -> Result<CartanProfile> {
    check_pair(datum, lambda, mu)?;
    cartan_cur_unchecked(datum, lambda, mu)
}

pub(crate) fn cartan_cur_unchecked(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
) -> Result<CartanProfile> {
    let exponents = (0..datum.rank())
        .map(|i| {
            let neg = datum.root(datum.negative_of(datum.simple_root_index(i)))?;
            k_alpha_unchecked(datum, lambda, mu, neg)
        })
        .collect::<Result<Vec<_>>>()?;
    let dimension = exponents.iter().sum();
    Ok(CartanProfile { exponents, dimension })
}

/// `sum_{alpha in R} k_alpha + sum_{beta in Delta} k_{-beta}`.
pub fn tangent_dimension_cur(datum: &RootDatum, lambda: &HalfIntVector, mu: &HalfIntVector) -> Result<i64> {
    check_pair(datum, lambda, mu)?;
    let mut total = 0;
    for r in datum.roots() {
        total += k_alpha_unchecked(datum, lambda, mu, r)?;
    }
    Ok(total + cartan_cur_unchecked(datum, lambda, mu)?.dimension)
}

/// The unique repetition-free path between two simple roots in the Dynkin
/// diagram, as zero-based simple root indices from `from` to `to`.
pub fn geodesic(datum: &RootDatum, from: usize, to: usize) -> Result<Vec<usize>> {
    let n = datum.rank();
    for i in [from, to] {
        if i >= n {
            return Err(Error::IndexOutOfRange {
                what: "simple root",
                index: i + 1,
                len: n,
            });
        }
    }
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for (y, p) in parent.iter_mut().enumerate() {
            if *p == usize::MAX && datum.dynkin_adjacent(x, y) {
                *p = x;
                queue.push_back(y);
            }
        }
    }
    if parent[to] == usize::MAX {
        return Err(Error::Invariant("Dynkin diagram is disconnected".into()));
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicWitness {
    pub source: usize,
    pub target: usize,
    pub path: Vec<usize>,
    pub corrected_weight: HalfIntVector,
    pub correction: HalfIntVector,
}

/// `varpi_alpha = s_{gamma_1} ... s_{gamma_r} varpi` along the geodesic
/// `alpha = gamma_0, ..., gamma_r` to the simple root of `varpi`. For
/// minuscule `varpi` this equals `varpi - (gamma_1 + ... + gamma_r)`.
pub fn varpi_alpha(datum: &RootDatum, weight_index: usize, alpha_index: usize) -> Result<GeodesicWitness> {
    if weight_index >= datum.rank() {
        return Err(Error::IndexOutOfRange {
            what: "fundamental weight",
            index: weight_index + 1,
            len: datum.rank(),
        });
    }
    if !datum.is_minuscule(weight_index) {
        return Err(Error::NotMinuscule {
            index: weight_index + 1,
        });
    }
    let path = geodesic(datum, alpha_index, weight_index)?;
    let varpi = datum.fundamental_weight(weight_index);
    let mut corrected = varpi.clone();
    for &g in path.iter().skip(1).rev() {
        corrected = datum.simple_reflection(g, &corrected)?;
    }
    let correction = path.iter().skip(1).fold(HalfIntVector::zero(datum.dim()), |acc, &g| {
        &acc + &datum.simple_root(g).vector
    });
    if varpi - &correction != corrected {
        return Err(Error::Invariant(format!(
            "varpi_alpha for varpi{} and alpha{} is not varpi minus the geodesic sum",
            weight_index + 1,
            alpha_index + 1
        )));
    }
    Ok(GeodesicWitness {
        source: alpha_index,
        target: weight_index,
        path,
        corrected_weight: corrected,
        correction,
    })
}

/// `min_{varpi in S} <mu, varpi> - <lambda, varpi_alpha>` for each simple root
/// `alpha`; equals `k_{-alpha}` for the selector sets of abelian type.
pub fn k_neg_simple_via_geodesics(
    datum: &RootDatum,
    lambda: &HalfIntVector,
    mu: &HalfIntVector,
    selector: &[usize],
) -> Result<Vec<i64>> {
    check_pair(datum, lambda, mu)?;
    if selector.is_empty() {
        return Err(Error::EmptySearch);
    }
    (0..datum.rank())
        .map(|a| {
            selector
                .iter()
                .map(|&w| {
                    let wit = varpi_alpha(datum, w, a)?;
                    let value = mu.pairing(datum.fundamental_weight(w))? - lambda.pairing(&wit.corrected_weight)?;
                    if value.is_integer() {
                        Ok(value.to_integer())
                    } else {
                        Err(Error::NonIntegral {
                            what: "geodesic bound".into(),
                            value: format_rational(&value),
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map(|v| v.into_iter().min().expect("selector nonempty"))
        })
        .collect()
}
