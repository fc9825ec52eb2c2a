//! Weights of Weyl modules and the pair sets `W(alpha)`, `W(H)`.
//!
//! Weight membership for a dominant `varpi` uses saturation: `nu` is a weight
//! of `V(varpi)` iff `varpi - nu` is in the root lattice and `nu_dom <= varpi`.

use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::{Root, RootDatum, Series};
use crate::vector::{format_rational, rational_is_zero_mod, HalfIntVector, Rational};

/// Characteristic of the base field: 0 or an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Characteristic(u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || (p > 2 && is_prime(p)) {
            Ok(Self(p))
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero_in(self, r: &Rational) -> bool {
        rational_is_zero_mod(r, self.0)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An element `h` of the Cartan subalgebra in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanElement {
    #[serde(serialize_with = "ser_rationals")]
    coords: Vec<Rational>,
    /// `m_beta` with `h = sum m_beta beta^v`, when `h` lies in the derived Cartan.
    #[serde(serialize_with = "ser_opt_rationals")]
    coefficients: Option<Vec<Rational>>,
}

impl CartanElement {
    pub fn from_coords(datum: &RootDatum, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != datum.dim() {
            return Err(Error::DimensionMismatch {
                expected: datum.dim(),
                found: coords.len(),
            });
        }
        let coefficients = derived_coefficients(datum, &coords);
        Ok(Self { coords, coefficients })
    }

    /// `H = sum_beta m_beta H_beta` with `H_beta = d beta^v (1)`.
    pub fn from_coroot_coefficients(datum: &RootDatum, m: &[Rational]) -> Result<Self> {
        if m.len() != datum.rank() {
            return Err(Error::DimensionMismatch {
                expected: datum.rank(),
                found: m.len(),
            });
        }
        let mut coords = vec![Rational::zero(); datum.dim()];
        for (mb, beta) in m.iter().zip(datum.simple_roots()) {
            for (c, &d) in coords.iter_mut().zip(beta.coroot.doubled()) {
                *c += *mb * Rational::new(d, 2);
            }
        }
        Ok(Self {
            coords,
            coefficients: Some(m.to_vec()),
        })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coefficients(&self) -> Option<&[Rational]> {
        self.coefficients.as_deref()
    }

    pub fn is_zero_in(&self, ch: Characteristic) -> bool {
        self.coords.iter().all(|c| ch.is_zero_in(c))
    }

    /// Checks that every coordinate and coefficient is defined over `F_p`.
    pub fn check_characteristic(&self, ch: Characteristic) -> Result<()> {
        if ch.value() == 0 {
            return Ok(());
        }
        let p = ch.value() as i64;
        let all = self.coords.iter().chain(self.coefficients.iter().flatten());
        for c in all {
            if c.denom() % p == 0 {
                return Err(Error::DenominatorNotInvertible {
                    value: format_rational(c),
                    p: ch.value(),
                });
            }
        }
        Ok(())
    }

    /// Whether `H` lies in the Cartan of the derived group over the given field.
    pub fn in_derived(&self, datum: &RootDatum, ch: Characteristic) -> bool {
        match datum.central_weight() {
            Some(_) => {
                let sum: Rational = self.coords.iter().copied().sum();
                ch.is_zero_in(&sum)
            }
            None => true,
        }
    }

    /// Zero-based simple roots `beta` with `m_beta != 0` in the given characteristic.
    pub fn support(&self, datum: &RootDatum, ch: Characteristic) -> Option<Vec<usize>> {
        if !self.in_derived(datum, ch) {
            return None;
        }
        let m = match &self.coefficients {
            Some(m) => m.clone(),
            None => datum
                .fundamental_weights()
                .iter()
                .map(|w| self.pair_weight(w))
                .collect(),
        };
        Some((0..m.len()).filter(|&i| !ch.is_zero_in(&m[i])).collect())
    }

    /// `d varpi'(H)`, the pairing of `h` with a weight.
    pub fn pair_weight(&self, w: &HalfIntVector) -> Rational {
        self.coords
            .iter()
            .zip(w.doubled())
            .map(|(c, &d)| *c * Rational::new(d, 2))
            .sum()
    }
}

fn derived_coefficients(datum: &RootDatum, coords: &[Rational]) -> Option<Vec<Rational>> {
    if datum.central_weight().is_some() {
        let sum: Rational = coords.iter().copied().sum();
        if !sum.is_zero() {
            return None;
        }
    }
    Some(
        datum
            .fundamental_weights()
            .iter()
            .map(|w| {
                coords
                    .iter()
                    .zip(w.doubled())
                    .map(|(c, &d)| *c * Rational::new(d, 2))
                    .sum()
            })
            .collect(),
    )
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn ser_opt_rationals<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rationals(v, s),
        None => s.serialize_none(),
    }
}

/// `|<alpha^v, varpi>| <= 1` for every root.
pub fn is_minuscule_weight(datum: &RootDatum, varpi: &HalfIntVector) -> bool {
    datum.roots().iter().all(|r| r.coroot.dot_doubled(varpi).abs() <= 4)
}

/// Zero-based indices of the minuscule fundamental weights.
pub fn minuscule_fundamental_weights(datum: &RootDatum) -> Vec<usize> {
    (0..datum.rank())
        .filter(|&i| is_minuscule_weight(datum, datum.fundamental_weight(i)))
        .collect()
}

pub fn is_weight_of(datum: &RootDatum, varpi: &HalfIntVector, nu: &HalfIntVector) -> Result<bool> {
    datum.check_dominant_weight(varpi)?;
    datum.check_weight(nu)?;
    Ok(is_weight_of_unchecked(datum, varpi, nu))
}

fn is_weight_of_unchecked(datum: &RootDatum, varpi: &HalfIntVector, nu: &HalfIntVector) -> bool {
    if !datum.in_root_lattice(&(varpi - nu)) {
        return false;
    }
    let dom = datum.dominant_rep(nu).expect("dimension checked");
    datum.weight_dominance_leq_unchecked(&dom, varpi)
}

/// Dominant weights `nu <= varpi`, enumerated in the bounding box of the orbit of `varpi`.
pub fn dominant_weights_below(datum: &RootDatum, varpi: &HalfIntVector) -> Result<Vec<HalfIntVector>> {
    datum.check_dominant_weight(varpi)?;
    let parity = varpi.doubled().first().map_or(0, |d| d.rem_euclid(2));
    let sum = match datum.series() {
        Series::A => Some(varpi.doubled().iter().sum()),
        _ => None,
    };
    Ok(datum
        .dominant_in_box(varpi.max_abs_doubled(), parity, sum)
        .into_iter()
        .filter(|nu| datum.in_root_lattice(&(varpi - nu)) && datum.weight_dominance_leq_unchecked(nu, varpi))
        .collect())
}

/// All weights of `V(varpi)`, sorted.
pub fn weights_of(datum: &RootDatum, varpi: &HalfIntVector) -> Result<Vec<HalfIntVector>> {
    datum.check_dominant_weight(varpi)?;
    if is_minuscule_weight(datum, varpi) {
        return datum.weyl_orbit(varpi);
    }
    let mut out = Vec::new();
    for nu in dominant_weights_below(datum, varpi)? {
        out.extend(datum.weyl_orbit(&nu)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(varpi, nu) in W(alpha)`: both `nu` and `nu + alpha` are weights of `V(varpi)`.
pub fn in_w_alpha(datum: &RootDatum, varpi: &HalfIntVector, nu: &HalfIntVector, alpha: &Root) -> Result<bool> {
    Ok(is_weight_of(datum, varpi, nu)? && is_weight_of(datum, varpi, &(nu + &alpha.vector))?)
}

/// `(varpi, nu) in W(H)`: `nu` is a weight of `V(varpi)` and `d nu(H) != 0`.
pub fn in_w_h(
    datum: &RootDatum,
    varpi: &HalfIntVector,
    nu: &HalfIntVector,
    h: &CartanElement,
    ch: Characteristic,
) -> Result<bool> {
    h.check_characteristic(ch)?;
    Ok(is_weight_of(datum, varpi, nu)? && !ch.is_zero_in(&h.pair_weight(nu)))
}

/// One weight of a search set together with its materialized weight set.
#[derive(Debug, Clone)]
pub struct SearchEntry {
    /// Zero-based fundamental weight index; `rank` denotes the determinant character.
    pub index: usize,
    pub weight: HalfIntVector,
    pub weights: Vec<HalfIntVector>,
    lookup: HashSet<HalfIntVector>,
}

impl SearchEntry {
    pub fn contains(&self, nu: &HalfIntVector) -> bool {
        self.lookup.contains(nu)
    }

    pub fn label(&self, rank: usize) -> String {
        if self.index == rank {
            "det".to_string()
        } else {
            format!("varpi{}", self.index + 1)
        }
    }
}

/// A finite, duality-stable set of fundamental weights over which the
/// Finkelberg-Mirkovic style minima are restricted.
///
/// In the `GL` model the determinant character is always included.
#[derive(Debug, Clone)]
pub struct SearchSet {
    entries: Vec<SearchEntry>,
}

impl SearchSet {
    /// `indices` are zero-based fundamental weight indices.
    pub fn new(datum: &RootDatum, indices: &[usize]) -> Result<Self> {
        let rank = datum.rank();
        let mut idx: Vec<usize> = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        for &i in &idx {
            let max = if datum.central_weight().is_some() {
                rank
            } else {
                rank - 1
            };
            if i > max {
                return Err(Error::IndexOutOfRange {
                    what: "fundamental weight",
                    index: i + 1,
                    len: max + 1,
                });
            }
        }
        let fundamentals: Vec<usize> = idx.iter().copied().filter(|&i| i < rank).collect();
        if fundamentals.is_empty() && datum.central_weight().is_none() {
            return Err(Error::EmptySearch);
        }
        if idx.is_empty() {
            return Err(Error::EmptySearch);
        }
        if fundamentals
            .iter()
            .any(|&i| !fundamentals.contains(&datum.dual_index(i)))
        {
            return Err(Error::SearchNotDualityStable {
                indices: fundamentals.iter().map(|i| i + 1).collect(),
            });
        }
        if datum.central_weight().is_some() && !idx.contains(&rank) {
            idx.push(rank);
        }
        let entries = idx
            .into_iter()
            .map(|i| {
                let weight = if i == rank {
                    datum.central_weight().expect("GL model").clone()
                } else {
                    datum.fundamental_weight(i).clone()
                };
                let weights = weights_of(datum, &weight)?;
                let lookup = weights.iter().cloned().collect();
                Ok(SearchEntry {
                    index: i,
                    weight,
                    weights,
                    lookup,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries })
    }

    /// All fundamental weights.
    pub fn all_fundamental(datum: &RootDatum) -> Result<Self> {
        Self::new(datum, &(0..datum.rank()).collect::<Vec<_>>())
    }

    /// One-based indices as given on the command line.
    pub fn from_one_based(datum: &RootDatum, indices: &[usize]) -> Result<Self> {
        let zero = indices
            .iter()
            .map(|&i| {
                i.checked_sub(1).ok_or(Error::IndexOutOfRange {
                    what: "fundamental weight",
                    index: i,
                    len: datum.rank(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum, &zero)
    }

    pub fn entries(&self) -> &[SearchEntry] {
        &self.entries
    }

    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }

    pub fn labels(&self, datum: &RootDatum) -> Vec<String> {
        self.entries.iter().map(|e| e.label(datum.rank())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Series;

    fn v(c: &[i64]) -> HalfIntVector {
        HalfIntVector::from_ints(c)
    }

    fn d(s: Series, n: usize) -> RootDatum {
        RootDatum::from_parts(s, n).unwrap()
    }

    #[test]
    fn weight_membership_gl2() {
        let a1 = d(Series::A, 1);
        assert!(is_weight_of(&a1, &v(&[2, 0]), &v(&[1, 1])).unwrap());
        assert!(is_weight_of(&a1, &v(&[1, 0]), &v(&[0, 1])).unwrap());
        assert!(!is_weight_of(&a1, &v(&[2, 0]), &v(&[3, -1])).unwrap());
        assert!(matches!(
            is_weight_of(&a1, &v(&[0, 2]), &v(&[1, 1])),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn weight_sets() {
        let a2 = d(Series::A, 2);
        assert_eq!(weights_of(&a2, a2.fundamental_weight(0)).unwrap().len(), 3);
        let a1 = d(Series::A, 1);
        assert_eq!(
            weights_of(&a1, &v(&[2, 0])).unwrap(),
            vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]
        );
        assert_eq!(weights_of(&a1, &v(&[1, 1])).unwrap(), vec![v(&[1, 1])]);
        // Adjoint representation of B3 = varpi_2: 18 roots plus zero.
        let b3 = d(Series::B, 3);
        assert_eq!(weights_of(&b3, b3.fundamental_weight(1)).unwrap().len(), 19);
    }

    #[test]
    fn w_alpha_examples() {
        let a1 = d(Series::A, 1);
        let alpha = a1.simple_root(0).clone();
        assert!(in_w_alpha(&a1, &v(&[1, 0]), &v(&[0, 1]), &alpha).unwrap());
        assert!(!in_w_alpha(&a1, &v(&[1, 0]), &v(&[1, 0]), &alpha).unwrap());
        for r in a1.roots() {
            assert!(!in_w_alpha(&a1, &v(&[1, 1]), &v(&[1, 1]), r).unwrap());
        }
    }

    #[test]
    fn w_h_examples() {
        let a1 = d(Series::A, 1);
        let ch = Characteristic::ZERO;
        let central = CartanElement::from_coords(&a1, vec![1.into(), 1.into()]).unwrap();
        assert!(in_w_h(&a1, &v(&[1, 0]), &v(&[1, 0]), &central, ch).unwrap());
        let coroot = CartanElement::from_coords(&a1, vec![1.into(), (-1).into()]).unwrap();
        assert!(!in_w_h(&a1, &v(&[1, 1]), &v(&[1, 1]), &coroot, ch).unwrap());

        let d4 = d(Series::D, 4);
        let h = CartanElement::from_coroot_coefficients(&d4, &[0.into(), 0.into(), 1.into(), (-1).into()]).unwrap();
        assert_eq!(h.coords(), &[0.into(), 0.into(), 0.into(), (-2).into()]);
        assert!(!in_w_h(&d4, &v(&[1, 0, 0, 0]), &v(&[1, 0, 0, 0]), &h, ch).unwrap());
        assert!(in_w_h(&d4, &v(&[1, 0, 0, 0]), &v(&[0, 0, 0, 1]), &h, ch).unwrap());
    }

    #[test]
    fn characteristic_validation() {
        assert!(Characteristic::new(0).is_ok());
        assert!(Characteristic::new(3).is_ok());
        assert_eq!(Characteristic::new(2), Err(Error::InvalidCharacteristic(2)));
        assert!(Characteristic::new(9).is_err());
        let a1 = d(Series::A, 1);
        let h = CartanElement::from_coords(&a1, vec![Rational::new(1, 3), Rational::new(-1, 3)]).unwrap();
        assert!(h.check_characteristic(Characteristic::new(3).unwrap()).is_err());
        assert!(h.check_characteristic(Characteristic::new(5).unwrap()).is_ok());
    }

    #[test]
    fn char_p_pairing_vanishes() {
        let a2 = d(Series::A, 2);
        let p3 = Characteristic::new(3).unwrap();
        // h = 3 alpha_1^v pairs to 0 mod 3 with every weight.
        let h = CartanElement::from_coroot_coefficients(&a2, &[3.into(), 0.into()]).unwrap();
        assert!(!in_w_h(&a2, a2.fundamental_weight(0), &v(&[1, 0, 0]), &h, p3).unwrap());
        assert!(in_w_h(&a2, a2.fundamental_weight(0), &v(&[1, 0, 0]), &h, Characteristic::ZERO).unwrap());
        assert_eq!(h.support(&a2, p3), Some(vec![]));
    }

    #[test]
    fn minuscule_lists() {
        assert_eq!(minuscule_fundamental_weights(&d(Series::A, 3)), vec![0, 1, 2]);
        assert_eq!(minuscule_fundamental_weights(&d(Series::B, 3)), vec![2]);
        assert_eq!(minuscule_fundamental_weights(&d(Series::C, 3)), vec![0]);
        assert_eq!(minuscule_fundamental_weights(&d(Series::D, 4)), vec![0, 2, 3]);
    }

    #[test]
    fn search_set_duality() {
        let a3 = d(Series::A, 3);
        assert!(matches!(
            SearchSet::new(&a3, &[0]),
            Err(Error::SearchNotDualityStable { .. })
        ));
        let s = SearchSet::new(&a3, &[0, 2]).unwrap();
        assert_eq!(s.indices(), vec![0, 2, 3]);
        let d5 = d(Series::D, 5);
        assert!(SearchSet::new(&d5, &[3]).is_err());
        assert!(SearchSet::new(&d5, &[3, 4]).is_ok());
        assert!(SearchSet::new(&d(Series::B, 3), &[]).is_err());
    }

    #[test]
    fn w_alpha_shift_symmetry() {
        for dat in [d(Series::A, 2), d(Series::B, 3), d(Series::C, 3), d(Series::D, 4)] {
            let search = SearchSet::all_fundamental(&dat).unwrap();
            for e in search.entries() {
                for nu in &e.weights {
                    for r in dat.roots() {
                        let neg = dat.root(dat.negative_of(r.index)).unwrap();
                        let shifted = nu + &r.vector;
                        let lhs = in_w_alpha(&dat, &e.weight, nu, r).unwrap();
                        let rhs =
                            dat.in_weight_lattice(&shifted) && in_w_alpha(&dat, &e.weight, &shifted, neg).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn minuscule_strings_have_length_at_most_two() {
        for dat in [d(Series::A, 3), d(Series::B, 3), d(Series::C, 3), d(Series::D, 5)] {
            for i in minuscule_fundamental_weights(&dat) {
                let w = dat.fundamental_weight(i);
                let ws = weights_of(&dat, w).unwrap();
                assert_eq!(ws, dat.weyl_orbit(w).unwrap());
                let set: HashSet<_> = ws.iter().cloned().collect();
                for nu in &ws {
                    for r in dat.roots() {
                        let a = nu + &r.vector;
                        let b = &a + &r.vector;
                        assert!(!(set.contains(&a) && set.contains(&b)));
                    }
                }
            }
        }
    }

    #[test]
    fn weight_sets_are_w_stable() {
        for dat in [d(Series::A, 2), d(Series::B, 3), d(Series::C, 3), d(Series::D, 4)] {
            for w in [v(&[2, 1, 0, 0]), v(&[3, 0, 0, 0]), v(&[1, 1, 1, 0])] {
                let w = HalfIntVector::from_doubled(w.doubled()[..dat.dim()].to_vec());
                if dat.check_dominant_weight(&w).is_err() {
                    continue;
                }
                let ws: HashSet<_> = weights_of(&dat, &w).unwrap().into_iter().collect();
                for nu in &ws {
                    assert!(ws.contains(&dat.dominant_rep(nu).unwrap()));
                    for i in 0..dat.rank() {
                        assert!(ws.contains(&dat.simple_reflection(i, nu).unwrap()));
                    }
                }
            }
        }
    }
}
