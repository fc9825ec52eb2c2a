//! Classical root systems in explicit coordinates.
//!
//! Type `A_n` is modelled by `GL_{n+1}` (cocharacters `Z^{n+1}`), the other
//! series by their coweight and weight lattices inside `(1/2)Z^n`. Weights and
//! coweights share the ambient space; every pairing is the dot product.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{HalfIntVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!(
                "unknown series {other:?} (expected A, B, C or D)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalType {
    pub series: Series,
    pub rank: usize,
}

impl ClassicalType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let min = match series {
            Series::A => 1,
            Series::B | Series::C => 2,
            Series::D => 4,
        };
        if rank < min {
            return Err(Error::InvalidType {
                series: series.letter(),
                rank,
                reason: format!("rank must be at least {min}"),
            });
        }
        Ok(Self { series, rank })
    }

    /// Number of ambient coordinates.
    pub fn dim(&self) -> usize {
        match self.series {
            Series::A => self.rank + 1,
            _ => self.rank,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    pub index: usize,
    pub vector: HalfIntVector,
    pub coroot: HalfIntVector,
    pub positive: bool,
    pub height: i64,
    pub label: String,
}

/// An immutable classical root datum.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ty: ClassicalType,
    dim: usize,
    roots: Vec<Root>,
    simple: Vec<usize>,
    negative: Vec<usize>,
    fundamental_weights: Vec<HalfIntVector>,
    fundamental_coweights: Vec<HalfIntVector>,
    central: Option<HalfIntVector>,
    two_rho: HalfIntVector,
    minuscule: Vec<bool>,
    minuscule_coweights: Vec<bool>,
}

impl RootDatum {
    pub fn new(ty: ClassicalType) -> Result<Self> {
        let ty = ClassicalType::new(ty.series, ty.rank)?;
        let n = ty.rank;
        let dim = ty.dim();
        let e = |i: usize| HalfIntVector::unit(dim, i);

        // Positive roots in coordinates.
        let mut positive: Vec<HalfIntVector> = Vec::new();
        match ty.series {
            Series::A => {
                for i in 0..dim {
                    for j in i + 1..dim {
                        positive.push(&e(i) - &e(j));
                    }
                }
            }
            Series::B | Series::C | Series::D => {
                for i in 0..n {
                    for j in i + 1..n {
                        positive.push(&e(i) - &e(j));
                        positive.push(&e(i) + &e(j));
                    }
                }
                for i in 0..n {
                    match ty.series {
                        Series::B => positive.push(e(i)),
                        Series::C => positive.push(e(i).scale(2)),
                        _ => {}
                    }
                }
            }
        }

        let simple_vectors: Vec<HalfIntVector> = match ty.series {
            Series::A => (0..n).map(|i| &e(i) - &e(i + 1)).collect(),
            Series::B => (0..n - 1)
                .map(|i| &e(i) - &e(i + 1))
                .chain(std::iter::once(e(n - 1)))
                .collect(),
            Series::C => (0..n - 1)
                .map(|i| &e(i) - &e(i + 1))
                .chain(std::iter::once(e(n - 1).scale(2)))
                .collect(),
            Series::D => (0..n - 1)
                .map(|i| &e(i) - &e(i + 1))
                .chain(std::iter::once(&e(n - 2) + &e(n - 1)))
                .collect(),
        };

        let prefix = |i: usize| -> HalfIntVector {
            let mut d = vec![0; dim];
            for c in d.iter_mut().take(i + 1) {
                *c = 2;
            }
            HalfIntVector::from_doubled(d)
        };
        let half_ones = HalfIntVector::constant(n, 1);
        let mut d_minus = HalfIntVector::constant(n, 1).doubled().to_vec();
        if let Some(last) = d_minus.last_mut() {
            *last = -1;
        }
        let d_minus = HalfIntVector::from_doubled(d_minus);

        let fundamental_weights: Vec<HalfIntVector> = (0..n)
            .map(|i| match ty.series {
                Series::B if i == n - 1 => half_ones.clone(),
                Series::D if i == n - 2 => d_minus.clone(),
                Series::D if i == n - 1 => half_ones.clone(),
                _ => prefix(i),
            })
            .collect();
        let fundamental_coweights: Vec<HalfIntVector> = (0..n)
            .map(|i| match ty.series {
                Series::C if i == n - 1 => half_ones.clone(),
                Series::D if i == n - 2 => d_minus.clone(),
                Series::D if i == n - 1 => half_ones.clone(),
                _ => prefix(i),
            })
            .collect();
        let central = match ty.series {
            Series::A => Some(HalfIntVector::constant(dim, 2)),
            _ => None,
        };

        let height = |v: &HalfIntVector| -> i64 {
            fundamental_coweights
                .iter()
                .map(|w| v.integral_pairing(w).expect("root heights are integral"))
                .sum()
        };
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));

        let coroot_of = |v: &HalfIntVector| -> HalfIntVector {
            // 2 v / (v, v); (v, v) is 1, 2 or 4 here.
            let norm_doubled = v.dot_doubled(v);
            let scaled: Vec<i64> = v.doubled().iter().map(|c| c * 8 / norm_doubled).collect();
            HalfIntVector::from_doubled(scaled)
        };

        let count = positive.len();
        let mut roots = Vec::with_capacity(2 * count);
        for (i, v) in positive.iter().enumerate() {
            roots.push(Root {
                index: i,
                coroot: coroot_of(v),
                label: root_label(v),
                height: height(v),
                vector: v.clone(),
                positive: true,
            });
        }
        for (i, v) in positive.iter().enumerate() {
            let neg = -v;
            roots.push(Root {
                index: count + i,
                coroot: coroot_of(&neg),
                label: root_label(&neg),
                height: -height(v),
                vector: neg,
                positive: false,
            });
        }
        let negative = (0..2 * count).map(|i| (i + count) % (2 * count)).collect();
        let simple = simple_vectors
            .iter()
            .map(|s| {
                positive
                    .iter()
                    .position(|p| p == s)
                    .expect("simple roots are positive roots")
            })
            .collect();

        let two_rho = positive.iter().fold(HalfIntVector::zero(dim), |acc, r| &acc + r);

        let mut datum = Self {
            ty,
            dim,
            roots,
            simple,
            negative,
            fundamental_weights,
            fundamental_coweights,
            central,
            two_rho,
            minuscule: Vec::new(),
            minuscule_coweights: Vec::new(),
        };
        datum.minuscule = (0..n)
            .map(|i| {
                let w = &datum.fundamental_weights[i];
                datum.roots.iter().all(|r| {
                    r.coroot
                        .pairing(w)
                        .map(|p| p.abs() <= Rational::from_integer(1))
                        .unwrap_or(false)
                })
            })
            .collect();
        datum.minuscule_coweights = (0..n)
            .map(|i| {
                let w = &datum.fundamental_coweights[i];
                datum.roots.iter().all(|r| {
                    r.vector
                        .pairing(w)
                        .map(|p| p.abs() <= Rational::from_integer(1))
                        .unwrap_or(false)
                })
            })
            .collect();
        Ok(datum)
    }

    pub fn from_parts(series: Series, rank: usize) -> Result<Self> {
        Self::new(ClassicalType::new(series, rank)?)
    }

    pub fn classical_type(&self) -> ClassicalType {
        self.ty
    }

    pub fn series(&self) -> Series {
        self.ty.series
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, index: usize) -> Result<&Root> {
        self.roots.get(index).ok_or(Error::IndexOutOfRange {
            what: "root",
            index,
            len: self.roots.len(),
        })
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn root_index(&self, vector: &HalfIntVector) -> Option<usize> {
        self.roots.iter().position(|r| &r.vector == vector)
    }

    /// Index of `-alpha`.
    pub fn negative_of(&self, index: usize) -> usize {
        self.negative[index]
    }

    /// Root index of the simple root `alpha_{i+1}`.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[self.simple[i]]
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Root> {
        self.simple.iter().map(|&i| &self.roots[i])
    }

    pub fn fundamental_weight(&self, i: usize) -> &HalfIntVector {
        &self.fundamental_weights[i]
    }

    pub fn fundamental_weights(&self) -> &[HalfIntVector] {
        &self.fundamental_weights
    }

    pub fn fundamental_coweight(&self, i: usize) -> &HalfIntVector {
        &self.fundamental_coweights[i]
    }

    pub fn fundamental_coweights(&self) -> &[HalfIntVector] {
        &self.fundamental_coweights
    }

    /// The determinant character `(1, ..., 1)` of the `GL_n` model.
    pub fn central_weight(&self) -> Option<&HalfIntVector> {
        self.central.as_ref()
    }

    pub fn two_rho(&self) -> &HalfIntVector {
        &self.two_rho
    }

    pub fn is_minuscule(&self, i: usize) -> bool {
        self.minuscule[i]
    }

    pub fn is_minuscule_coweight(&self, i: usize) -> bool {
        self.minuscule_coweights[i]
    }

    /// Zero-based indices of the minuscule fundamental weights.
    pub fn minuscule_indices(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.minuscule[i]).collect()
    }

    pub fn weyl_group_order(&self) -> u64 {
        let n = self.rank() as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        match self.series() {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u64 << n) * fact(n),
            Series::D => (1u64 << (n - 1)) * fact(n),
        }
    }

    /// Zero-based index `j` with `-w0(varpi_i) = varpi_j` modulo central characters.
    pub fn dual_index(&self, i: usize) -> usize {
        let n = self.rank();
        match self.series() {
            Series::A => n - 1 - i,
            Series::B | Series::C => i,
            Series::D if n % 2 == 1 && i + 2 == n => n - 1,
            Series::D if n % 2 == 1 && i + 1 == n => n - 2,
            Series::D => i,
        }
    }

    pub fn dynkin_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.simple_root(i).vector.dot_doubled(&self.simple_root(j).vector) != 0
    }

    pub fn simple_label(i: usize) -> String {
        format!("alpha{}", i + 1)
    }

    /// Coweight lattice membership (`Z^{n+1}` for the `GL` model, `P^v` otherwise).
    pub fn in_coweight_lattice(&self, v: &HalfIntVector) -> bool {
        if v.dim() != self.dim {
            return false;
        }
        match self.series() {
            Series::A => v.is_integral(),
            _ => self.simple_roots().all(|a| v.dot_doubled(&a.vector) % 4 == 0),
        }
    }

    /// Weight lattice membership (`Z^{n+1}` for the `GL` model, `P` otherwise).
    pub fn in_weight_lattice(&self, v: &HalfIntVector) -> bool {
        if v.dim() != self.dim {
            return false;
        }
        match self.series() {
            Series::A => v.is_integral(),
            _ => self.simple_roots().all(|a| v.dot_doubled(&a.coroot) % 4 == 0),
        }
    }

    pub fn check_coweight(&self, v: &HalfIntVector) -> Result<()> {
        v.check_dim(self.dim)?;
        if self.in_coweight_lattice(v) {
            Ok(())
        } else {
            Err(Error::NotInLattice {
                vector: v.clone(),
                lattice: "coweight lattice",
            })
        }
    }

    pub fn check_weight(&self, v: &HalfIntVector) -> Result<()> {
        v.check_dim(self.dim)?;
        if self.in_weight_lattice(v) {
            Ok(())
        } else {
            Err(Error::NotInLattice {
                vector: v.clone(),
                lattice: "weight lattice",
            })
        }
    }

    /// Dominance with respect to the fixed Borel; the same test serves weights
    /// and coweights since each simple coroot is a positive multiple of its root.
    pub fn is_dominant(&self, v: &HalfIntVector) -> bool {
        v.dim() == self.dim && self.simple_roots().all(|a| v.dot_doubled(&a.vector) >= 0)
    }

    pub fn check_dominant_coweight(&self, v: &HalfIntVector) -> Result<()> {
        self.check_coweight(v)?;
        if self.is_dominant(v) {
            Ok(())
        } else {
            Err(Error::NotDominant { vector: v.clone() })
        }
    }

    pub fn check_dominant_weight(&self, v: &HalfIntVector) -> Result<()> {
        self.check_weight(v)?;
        if self.is_dominant(v) {
            Ok(())
        } else {
            Err(Error::NotDominant { vector: v.clone() })
        }
    }

    /// Orthogonal reflection in `alpha`: `v - <v, alpha> alpha^v`.
    pub fn reflect(&self, root: &Root, v: &HalfIntVector) -> Result<HalfIntVector> {
        v.check_dim(self.dim)?;
        let num = 2 * v.dot_doubled(&root.vector);
        let den = root.vector.dot_doubled(&root.vector);
        let shift = root
            .vector
            .doubled()
            .iter()
            .map(|&r| {
                if (r * num) % den == 0 {
                    Ok(r * num / den)
                } else {
                    Err(Error::NonIntegral {
                        what: format!("s_{}({v})", root.label),
                        value: format!("{num}/{den}"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(v - &HalfIntVector::from_doubled(shift))
    }

    /// `s_{alpha_{i+1}}(v)`.
    pub fn simple_reflection(&self, i: usize, v: &HalfIntVector) -> Result<HalfIntVector> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                what: "simple root",
                index: i + 1,
                len: self.rank(),
            });
        }
        self.reflect(self.simple_root(i), v)
    }

    /// Dominant representative of the Weyl orbit, by the closed orbit form of
    /// each series.
    pub fn dominant_rep(&self, v: &HalfIntVector) -> Result<HalfIntVector> {
        v.check_dim(self.dim)?;
        let mut d = v.doubled().to_vec();
        match self.series() {
            Series::A => d.sort_unstable_by(|a, b| b.cmp(a)),
            Series::B | Series::C => {
                d.iter_mut().for_each(|c| *c = c.abs());
                d.sort_unstable_by(|a, b| b.cmp(a));
            }
            Series::D => {
                let negatives = d.iter().filter(|&&c| c < 0).count();
                let has_zero = d.contains(&0);
                d.iter_mut().for_each(|c| *c = c.abs());
                d.sort_unstable_by(|a, b| b.cmp(a));
                if !has_zero && negatives % 2 == 1 {
                    if let Some(last) = d.last_mut() {
                        *last = -*last;
                    }
                }
            }
        }
        Ok(HalfIntVector::from_doubled(d))
    }

    /// Dominant representative reached by repeatedly applying a simple
    /// reflection that increases the pairing with `2 rho`; returns the
    /// representative and the reflection indices used.
    pub fn dominant_rep_by_reflections(&self, v: &HalfIntVector) -> Result<(HalfIntVector, Vec<usize>)> {
        v.check_dim(self.dim)?;
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            let bad = (0..self.rank()).find(|&i| cur.dot_doubled(&self.simple_root(i).vector) < 0);
            match bad {
                Some(i) => {
                    cur = self.simple_reflection(i, &cur)?;
                    word.push(i);
                }
                None => return Ok((cur, word)),
            }
        }
    }

    /// Weyl orbit by breadth-first closure under simple reflections, sorted.
    pub fn weyl_orbit(&self, v: &HalfIntVector) -> Result<Vec<HalfIntVector>> {
        v.check_dim(self.dim)?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.simple_reflection(i, &x)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `v` lies in the real span of the coroots (equivalently of the roots).
    fn in_derived_span(&self, v: &HalfIntVector) -> bool {
        match &self.central {
            Some(c) => v.dot_doubled(c) == 0,
            None => true,
        }
    }

    /// Coefficients `m_i` of `v = sum m_i alpha_i^v`, or `None` when `v` is not
    /// in the span of the coroots.
    pub fn coroot_coefficients(&self, v: &HalfIntVector) -> Result<Option<Vec<Rational>>> {
        v.check_dim(self.dim)?;
        if !self.in_derived_span(v) {
            return Ok(None);
        }
        self.fundamental_weights
            .iter()
            .map(|w| v.pairing(w))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Coefficients of `v = sum c_i alpha_i` in simple roots.
    pub fn root_coefficients(&self, v: &HalfIntVector) -> Result<Option<Vec<Rational>>> {
        v.check_dim(self.dim)?;
        if !self.in_derived_span(v) {
            return Ok(None);
        }
        self.fundamental_coweights
            .iter()
            .map(|w| v.pairing(w))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn in_coroot_lattice(&self, v: &HalfIntVector) -> bool {
        matches!(self.coroot_coefficients(v), Ok(Some(m)) if m.iter().all(|c| c.is_integer()))
    }

    pub fn in_root_lattice(&self, v: &HalfIntVector) -> bool {
        matches!(self.root_coefficients(v), Ok(Some(m)) if m.iter().all(|c| c.is_integer()))
    }

    /// `nu <= mu` for dominant coweights: `mu - nu` is a nonnegative integral
    /// sum of simple coroots.
    pub fn dominance_leq(&self, nu: &HalfIntVector, mu: &HalfIntVector) -> Result<bool> {
        self.check_dominant_coweight(nu)?;
        self.check_dominant_coweight(mu)?;
        Ok(self.dominance_leq_unchecked(nu, mu))
    }

    pub(crate) fn dominance_leq_unchecked(&self, nu: &HalfIntVector, mu: &HalfIntVector) -> bool {
        let diff = mu - nu;
        if !self.in_derived_span(&diff) {
            return false;
        }
        self.fundamental_weights.iter().all(|w| {
            let d = diff.dot_doubled(w);
            d % 4 == 0 && d >= 0
        })
    }

    /// The `m`-vector `<mu - nu, varpi_i>` used by the dominance test.
    pub fn dominance_gaps(&self, nu: &HalfIntVector, mu: &HalfIntVector) -> Result<Vec<Rational>> {
        let diff = mu - nu;
        self.fundamental_weights.iter().map(|w| diff.pairing(w)).collect()
    }

    /// Dominance on the weight side: `varpi - nu` is a nonnegative integral
    /// sum of simple roots.
    pub fn weight_dominance_leq(&self, nu: &HalfIntVector, varpi: &HalfIntVector) -> Result<bool> {
        self.check_dominant_weight(nu)?;
        self.check_dominant_weight(varpi)?;
        Ok(self.weight_dominance_leq_unchecked(nu, varpi))
    }

    pub(crate) fn weight_dominance_leq_unchecked(&self, nu: &HalfIntVector, varpi: &HalfIntVector) -> bool {
        let diff = varpi - nu;
        if !self.in_derived_span(&diff) {
            return false;
        }
        self.fundamental_coweights.iter().all(|w| {
            let d = diff.dot_doubled(w);
            d % 4 == 0 && d >= 0
        })
    }

    /// All dominant vectors of the given lattice coset whose coordinates are
    /// bounded by `bound_doubled / 2` in absolute value, in lexicographic order
    /// of their doubled coordinates.
    ///
    /// `parity` selects the coordinate class: 0 for integral, 1 for proper
    /// half-integers. For the `GL` model `sum_doubled` fixes the coordinate sum.
    pub(crate) fn dominant_in_box(
        &self,
        bound_doubled: i64,
        parity: i64,
        sum_doubled: Option<i64>,
    ) -> Vec<HalfIntVector> {
        let mut values: Vec<i64> = (-bound_doubled..=bound_doubled)
            .filter(|v| v.rem_euclid(2) == parity)
            .collect();
        values.sort_unstable();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.dim);
        self.descend(&values, values.len(), &mut cur, &mut out);
        out.retain(|v| self.is_dominant(v) && sum_doubled.is_none_or(|s| v.doubled().iter().sum::<i64>() == s));
        out.sort();
        out
    }

    fn descend(&self, values: &[i64], upto: usize, cur: &mut Vec<i64>, out: &mut Vec<HalfIntVector>) {
        if cur.len() == self.dim {
            out.push(HalfIntVector::from_doubled(cur.clone()));
            return;
        }
        // Non-increasing sequences: the next coordinate is at most the previous one.
        for k in 0..upto {
            cur.push(values[k]);
            self.descend(values, k + 1, cur, out);
            cur.pop();
        }
    }
}

fn root_label(v: &HalfIntVector) -> String {
    let mut s = String::new();
    for (i, &d) in v.doubled().iter().enumerate() {
        if d == 0 {
            continue;
        }
        let mag = d.abs() / 2;
        let sign = if d < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        if mag == 1 {
            s.push_str(&format!("{sign}e{}", i + 1));
        } else {
            s.push_str(&format!("{sign}{mag}e{}", i + 1));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(series: Series, rank: usize) -> RootDatum {
        RootDatum::from_parts(series, rank).unwrap()
    }

    fn v(coords: &[i64]) -> HalfIntVector {
        HalfIntVector::from_ints(coords)
    }

    fn all_types() -> Vec<RootDatum> {
        let mut out = Vec::new();
        for n in 1..=5 {
            out.push(datum(Series::A, n));
        }
        for n in 2..=5 {
            out.push(datum(Series::B, n));
            out.push(datum(Series::C, n));
        }
        for n in 4..=6 {
            out.push(datum(Series::D, n));
        }
        out
    }

    #[test]
    fn rank_bounds() {
        for (s, bad) in [(Series::A, 0), (Series::B, 1), (Series::C, 1), (Series::D, 3)] {
            let err = ClassicalType::new(s, bad).unwrap_err();
            assert!(matches!(err, Error::InvalidType { .. }), "{err}");
        }
        assert!(ClassicalType::new(Series::D, 4).is_ok());
    }

    #[test]
    fn b3_coordinates() {
        let d = datum(Series::B, 3);
        assert_eq!(d.simple_root(2).vector, v(&[0, 0, 1]));
        assert_eq!(d.fundamental_weight(2), &HalfIntVector::from_doubled(vec![1, 1, 1]));
        assert_eq!(d.minuscule_indices(), vec![2]);
    }

    #[test]
    fn a2_is_gl3() {
        let d = datum(Series::A, 2);
        assert_eq!(d.dim(), 3);
        assert_eq!(d.simple_root(0).vector, v(&[1, -1, 0]));
        assert_eq!(d.simple_root(1).vector, v(&[0, 1, -1]));
        assert_eq!(d.minuscule_indices(), vec![0, 1]);
    }

    #[test]
    fn d4_counts_and_rho() {
        let d = datum(Series::D, 4);
        assert_eq!(d.roots().len(), 24);
        assert_eq!(d.two_rho(), &v(&[6, 4, 2, 0]));
        assert_eq!(d.minuscule_indices(), vec![0, 2, 3]);
    }

    #[test]
    fn minuscule_sets_per_series() {
        assert_eq!(datum(Series::B, 4).minuscule_indices(), vec![3]);
        assert_eq!(datum(Series::C, 4).minuscule_indices(), vec![0]);
        assert_eq!(datum(Series::D, 5).minuscule_indices(), vec![0, 3, 4]);
        assert_eq!(datum(Series::A, 4).minuscule_indices(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn fundamental_weights_are_dual_to_simple_coroots() {
        for d in all_types() {
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    let p = d.simple_root(i).coroot.pairing(d.fundamental_weight(j)).unwrap();
                    let q = d.simple_root(i).vector.pairing(d.fundamental_coweight(j)).unwrap();
                    let expected = Rational::from_integer((i == j) as i64);
                    assert_eq!(p, expected, "{} <a{}^v, w{}>", d.classical_type(), i + 1, j + 1);
                    assert_eq!(q, expected);
                }
            }
        }
    }

    #[test]
    fn two_rho_is_sum_of_positive_roots_and_pairs_to_two() {
        for d in all_types() {
            let sum = d
                .positive_roots()
                .fold(HalfIntVector::zero(d.dim()), |acc, r| &acc + &r.vector);
            assert_eq!(&sum, d.two_rho());
            // <alpha_i^v, 2 rho> = 2 for every simple coroot.
            for a in d.simple_roots() {
                assert_eq!(a.coroot.integral_pairing(d.two_rho()).unwrap(), 2);
            }
        }
    }

    #[test]
    fn coroots_and_negatives() {
        for d in all_types() {
            for r in d.roots() {
                assert_eq!(r.vector.integral_pairing(&r.coroot).unwrap(), 2);
                let neg = d.root(d.negative_of(r.index)).unwrap();
                assert_eq!(neg.vector, -&r.vector);
                assert_eq!(d.root_index(&r.vector), Some(r.index));
            }
        }
    }

    #[test]
    fn dominant_rep_examples() {
        let a1 = datum(Series::A, 1);
        assert_eq!(a1.dominant_rep(&v(&[0, 1])).unwrap(), v(&[1, 0]));
        assert_eq!(a1.dominant_rep(&v(&[-1, 3])).unwrap(), v(&[3, -1]));
        let d4 = datum(Series::D, 4);
        assert_eq!(d4.dominant_rep(&v(&[1, 1, 1, -1])).unwrap(), v(&[1, 1, 1, -1]));
        assert_eq!(d4.dominant_rep(&v(&[-1, 1, 1, 2])).unwrap(), v(&[2, 1, 1, -1]));
        assert_eq!(d4.dominant_rep(&v(&[-1, 0, 1, 2])).unwrap(), v(&[2, 1, 1, 0]));
    }

    #[test]
    fn dominance_examples() {
        let a1 = datum(Series::A, 1);
        assert!(a1.dominance_leq(&v(&[1, 1]), &v(&[2, 0])).unwrap());
        let d4 = datum(Series::D, 4);
        assert!(d4.dominance_leq(&v(&[1, 0, 0, 0]), &v(&[3, 3, 3, 0])).unwrap());
        assert_eq!(
            d4.dominance_gaps(&v(&[1, 0, 0, 0]), &v(&[3, 3, 3, 0])).unwrap(),
            [2, 5, 4, 4].map(Rational::from_integer).to_vec()
        );
        assert!(!d4.dominance_leq(&v(&[1, 1, 1, -1]), &v(&[2, 0, 0, 0])).unwrap());
        assert_eq!(
            d4.dominance_gaps(&v(&[1, 1, 1, -1]), &v(&[2, 0, 0, 0])).unwrap()[2],
            Rational::from_integer(-1)
        );
        assert!(matches!(
            d4.dominance_leq(&v(&[0, 1, 0, 0]), &v(&[2, 0, 0, 0])),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn coroot_lattice_examples() {
        assert!(datum(Series::B, 3).in_coroot_lattice(&v(&[2, 0, 0])));
        assert!(!datum(Series::D, 4).in_coroot_lattice(&v(&[1, 0, 0, 0])));
        assert!(datum(Series::C, 3).in_coroot_lattice(&v(&[0, 0, 0])));
        assert!(!datum(Series::A, 2).in_coroot_lattice(&v(&[1, 0, 0])));
        assert!(datum(Series::A, 2).in_coroot_lattice(&v(&[1, 0, -1])));
    }

    #[test]
    fn orbit_examples() {
        let a1 = datum(Series::A, 1);
        assert_eq!(a1.weyl_orbit(&v(&[1, 0])).unwrap(), vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(a1.weyl_orbit(&v(&[1, 1])).unwrap(), vec![v(&[1, 1])]);
        let a3 = datum(Series::A, 3);
        assert_eq!(a3.weyl_orbit(a3.fundamental_weight(1)).unwrap().len(), 6);
    }

    #[test]
    fn reflection_examples() {
        let a1 = datum(Series::A, 1);
        assert_eq!(a1.simple_reflection(0, &v(&[1, 0])).unwrap(), v(&[0, 1]));
        assert!(matches!(
            a1.simple_reflection(1, &v(&[1, 0])),
            Err(Error::IndexOutOfRange { .. })
        ));
        // s_4 of varpi_3 in D4: alpha_4 = e3 + e4 is orthogonal to (1,1,1,-1)/2.
        let d4 = datum(Series::D, 4);
        let w3 = d4.fundamental_weight(2).clone();
        assert_eq!(d4.simple_reflection(3, &w3).unwrap(), w3);
        // s_3 (alpha_3 = e3 - e4) swaps the last two coordinates.
        assert_eq!(
            d4.simple_reflection(2, &w3).unwrap(),
            HalfIntVector::from_doubled(vec![1, 1, -1, 1])
        );
    }

    #[test]
    fn lattices() {
        let c2 = datum(Series::C, 2);
        assert!(c2.in_coweight_lattice(&HalfIntVector::from_doubled(vec![1, 1])));
        assert!(!c2.in_coweight_lattice(&HalfIntVector::from_doubled(vec![1, 2])));
        assert!(!c2.in_weight_lattice(&HalfIntVector::from_doubled(vec![1, 1])));
        let b2 = datum(Series::B, 2);
        assert!(!b2.in_coweight_lattice(&HalfIntVector::from_doubled(vec![1, 1])));
        assert!(b2.in_weight_lattice(&HalfIntVector::from_doubled(vec![1, 1])));
    }

    #[test]
    fn duality_on_fundamental_weights() {
        for d in all_types() {
            for i in 0..d.rank() {
                // -w0 varpi_i is the dominant representative of -varpi_i; compare
                // modulo central characters by pairing with simple coroots.
                let dual = d.dominant_rep(&-d.fundamental_weight(i)).unwrap();
                let j = d.dual_index(i);
                for a in d.simple_roots() {
                    assert_eq!(
                        a.coroot.pairing(&dual).unwrap(),
                        a.coroot.pairing(d.fundamental_weight(j)).unwrap()
                    );
                }
            }
        }
    }

    fn arb_instance() -> impl Strategy<Value = (RootDatum, HalfIntVector)> {
        (0usize..9, proptest::collection::vec(-4i64..=4, 5), any::<bool>()).prop_map(|(t, coords, half)| {
            let (s, n) = [
                (Series::A, 1),
                (Series::A, 2),
                (Series::A, 3),
                (Series::B, 2),
                (Series::B, 3),
                (Series::C, 2),
                (Series::C, 3),
                (Series::D, 4),
                (Series::D, 5),
            ][t];
            let d = datum(s, n);
            let dim = d.dim();
            let shift = if half && matches!(s, Series::C | Series::D) {
                1
            } else {
                0
            };
            let vv = HalfIntVector::from_doubled(coords.iter().take(dim).map(|c| 2 * c + shift).collect());
            (d, vv)
        })
    }

    proptest! {
        #[test]
        fn dominant_rep_matches_reflection_search((d, x) in arb_instance()) {
            let closed = d.dominant_rep(&x).unwrap();
            let (by_refl, _) = d.dominant_rep_by_reflections(&x).unwrap();
            prop_assert_eq!(&closed, &by_refl);
            prop_assert!(d.is_dominant(&closed));
        }

        #[test]
        fn orbit_contains_unique_dominant((d, x) in arb_instance()) {
            let orbit = d.weyl_orbit(&x).unwrap();
            let dom = d.dominant_rep(&x).unwrap();
            prop_assert!(orbit.contains(&dom));
            prop_assert_eq!(orbit.iter().filter(|y| d.is_dominant(y)).count(), 1);
            prop_assert_eq!(d.weyl_group_order() % orbit.len() as u64, 0);
        }

        #[test]
        fn reflections_are_involutions((d, x) in arb_instance(), i in 0usize..5) {
            let i = i % d.rank();
            let y = d.simple_reflection(i, &x).unwrap();
            prop_assert_eq!(d.simple_reflection(i, &y).unwrap(), x);
        }
    }
}
