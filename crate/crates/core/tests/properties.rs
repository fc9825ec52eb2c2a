use proptest::prelude::*;
use proptest::sample::Index;

use schubert_tangent::abelian_type::{
    classify, dominant_coset_box, enumerate_lambda_below, minimal_lambda, mod_p_datum, select_s, spanning_verdict,
    ModPDatum, SpanningVerdict,
};
use schubert_tangent::grid::{grid_types, standard_grid};
use schubert_tangent::oracle::oracle_l_alpha;
use schubert_tangent::tangent_bounds::{cartan_cur, k_alpha, k_neg_simple_via_geodesics, l_h};
use schubert_tangent::vector::{format_rational, parse_rational};
use schubert_tangent::weyl_modules::{in_w_alpha, is_weight_of, weights_of};
use schubert_tangent::{CartanElement, Characteristic, ClassicalType, HalfIntVector, Rational, RootDatum, Series};

fn types() -> Vec<ClassicalType> {
    grid_types(4)
}

fn datum(t: usize) -> RootDatum {
    RootDatum::new(types()[t]).unwrap()
}

/// A lattice vector from raw coordinates, half-integral when `half` is set and
/// the lattice allows it.
fn lattice_vector(datum: &RootDatum, coords: &[i64], half: bool) -> HalfIntVector {
    let integral = HalfIntVector::from_doubled(coords[..datum.dim()].iter().map(|c| 2 * c).collect());
    let shifted = HalfIntVector::from_doubled(integral.doubled().iter().map(|c| c + 1).collect());
    if half && datum.in_coweight_lattice(&shifted) {
        shifted
    } else {
        integral
    }
}

fn raw() -> impl Strategy<Value = (usize, Vec<i64>, bool)> {
    (0..types().len(), prop::collection::vec(-3i64..=3, 5), any::<bool>())
}

fn zero_or_one(x: bool) -> Rational {
    Rational::from_integer(x as i64)
}

#[test]
fn fundamental_weights_are_dual_to_simple_coroots() {
    for series in [Series::A, Series::B, Series::C, Series::D] {
        for rank in 1..=6 {
            let Ok(d) = RootDatum::from_parts(series, rank) else {
                continue;
            };
            for i in 0..rank {
                for j in 0..rank {
                    let p = d.simple_root(i).coroot.pairing(d.fundamental_weight(j)).unwrap();
                    assert_eq!(p, zero_or_one(i == j), "{series:?}{rank} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn spanning_verdict_certifies_non_quaternionic_grid() {
    let zero = Characteristic::new(0).unwrap();
    for g in standard_grid(4) {
        let d = g.datum().unwrap();
        if classify(&d, &g.mu).unwrap().is_quaternionic() {
            continue;
        }
        for lambda in enumerate_lambda_below(&d, &g.mu).unwrap() {
            let verdict = spanning_verdict(&d, &g.mu, &lambda, zero).unwrap();
            assert_eq!(
                verdict,
                SpanningVerdict::Certified,
                "{} mu={} lambda={lambda}",
                g.ty,
                g.mu
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominant_rep_is_the_unique_dominant_orbit_element((t, coords, half) in raw()) {
        let d = datum(t);
        let v = lattice_vector(&d, &coords, half);
        let rep = d.dominant_rep(&v).unwrap();
        prop_assert!(d.is_dominant(&rep));
        let orbit = d.weyl_orbit(&v).unwrap();
        prop_assert!(orbit.contains(&rep));
        prop_assert_eq!(orbit.iter().filter(|w| d.is_dominant(w)).count(), 1);
        prop_assert_eq!(d.dominant_rep_by_reflections(&v).unwrap().0, rep);
        prop_assert_eq!(d.weyl_group_order() % orbit.len() as u64, 0);
    }

    #[test]
    fn dominance_is_a_partial_order((t, coords, half) in raw(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let d = datum(t);
        let mu = d.dominant_rep(&lattice_vector(&d, &coords, half)).unwrap();
        let coset = dominant_coset_box(&d, &mu, mu.max_abs_doubled() + 2).unwrap();
        let (x, y, z) = (a.get(&coset), b.get(&coset), c.get(&coset));
        let leq = |p: &HalfIntVector, q: &HalfIntVector| d.dominance_leq(p, q).unwrap();
        prop_assert!(leq(x, x));
        if leq(x, y) && leq(y, x) {
            prop_assert_eq!(x, y);
        }
        if leq(x, y) && leq(y, z) {
            prop_assert!(leq(x, z));
        }
    }

    #[test]
    fn minimal_lambda_is_below_every_lambda((t, coords, half) in raw()) {
        let d = datum(t);
        let mu = d.dominant_rep(&lattice_vector(&d, &coords, half)).unwrap();
        let min = minimal_lambda(&d, &mu).unwrap();
        for lambda in enumerate_lambda_below(&d, &mu).unwrap() {
            prop_assert!(d.dominance_leq(&min, &lambda).unwrap(), "{} not below {}", min, lambda);
        }
    }

    #[test]
    fn w_alpha_membership_is_symmetric(t in 0..types().len(), w in any::<Index>(), nu in any::<Index>(), r in any::<Index>()) {
        let d = datum(t);
        let varpi = w.get(d.fundamental_weights()).clone();
        let weights = weights_of(&d, &varpi).unwrap();
        let nu = nu.get(&weights);
        let root = r.get(d.roots());
        let neg = d.root(d.negative_of(root.index)).unwrap();
        prop_assert_eq!(
            in_w_alpha(&d, &varpi, nu, root).unwrap(),
            in_w_alpha(&d, &varpi, &(nu + &root.vector), neg).unwrap()
        );
    }

    #[test]
    fn weights_are_weyl_stable(t in 0..types().len(), w in any::<Index>(), nu in any::<Index>()) {
        let d = datum(t);
        let varpi = w.get(d.fundamental_weights()).clone();
        let weights = weights_of(&d, &varpi).unwrap();
        let nu = nu.get(&weights);
        for i in 0..d.rank() {
            prop_assert!(is_weight_of(&d, &varpi, &d.simple_reflection(i, nu).unwrap()).unwrap());
        }
        prop_assert!(is_weight_of(&d, &varpi, &d.dominant_rep(nu).unwrap()).unwrap());
    }

    #[test]
    fn minuscule_weights_form_one_orbit(t in 0..types().len(), w in any::<Index>()) {
        let d = datum(t);
        let i = w.index(d.rank());
        prop_assume!(d.is_minuscule(i));
        let varpi = d.fundamental_weight(i);
        let mut weights = weights_of(&d, varpi).unwrap();
        weights.sort();
        prop_assert_eq!(&weights, &d.weyl_orbit(varpi).unwrap());
        for nu in &weights {
            for root in d.roots() {
                let string = [nu.clone(), nu + &root.vector, &(nu + &root.vector) + &root.vector];
                let hits = string.iter().filter(|x| weights.binary_search(x).is_ok()).count();
                prop_assert!(hits <= 2);
            }
        }
    }

    #[test]
    fn rational_strings_round_trip(num in -1000i64..1000, den in 1i64..=2, coords in prop::collection::vec(-20i64..20, 1..6)) {
        let r = Rational::new(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        let v = HalfIntVector::from_doubled(coords);
        prop_assert_eq!(v.to_string().parse::<HalfIntVector>().unwrap(), v);
    }

    #[test]
    fn exponents_are_nonnegative((t, coords, half) in raw(), li in any::<Index>()) {
        let d = datum(t);
        let mu = d.dominant_rep(&lattice_vector(&d, &coords, half)).unwrap();
        let lambdas = enumerate_lambda_below(&d, &mu).unwrap();
        let profile = cartan_cur(&d, li.get(&lambdas), &mu).unwrap();
        prop_assert!(profile.exponents.iter().all(|&k| k >= 0));
        prop_assert_eq!(profile.dimension, profile.exponents.iter().sum::<i64>());
    }

    #[test]
    fn mod_p_datum_ignores_order_within_groups(t in 0..types().len(), raws in prop::collection::vec((prop::collection::vec(-2i64..=2, 5), any::<bool>()), 4), rot in 0usize..2) {
        let d = datum(t);
        let ty = d.classical_type();
        let mus: Vec<HalfIntVector> = raws.iter().map(|(c, h)| d.dominant_rep(&lattice_vector(&d, c, *h)).unwrap()).collect();
        let spec = |groups: Vec<Vec<HalfIntVector>>| ModPDatum {
            series: ty.series.letter().to_string(),
            rank: ty.rank,
            residue_degree: 2,
            groups,
        };
        let original = spec(vec![mus[..2].to_vec(), mus[2..].to_vec()]);
        let mut first = mus[..2].to_vec();
        first.rotate_left(rot);
        let permuted = spec(vec![first, vec![mus[3].clone(), mus[2].clone()]]);
        prop_assert_eq!(mod_p_datum(&original).unwrap().1, mod_p_datum(&permuted).unwrap().1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn geodesic_weights_give_k_neg_simple(g in any::<Index>(), li in any::<Index>()) {
        let grid = standard_grid(4);
        let inst = g.get(&grid);
        let d = inst.datum().unwrap();
        let s = select_s(&d, &classify(&d, &inst.mu).unwrap()).unwrap();
        let lambdas = enumerate_lambda_below(&d, &inst.mu).unwrap();
        let lambda = li.get(&lambdas);
        let via = k_neg_simple_via_geodesics(&d, lambda, &inst.mu, &s.indices).unwrap();
        let tops: Vec<HalfIntVector> = s.indices.iter().map(|&i| d.fundamental_weight(i).clone()).collect();
        for (i, &value) in via.iter().enumerate() {
            let neg = d.root(d.negative_of(d.simple_root_index(i))).unwrap();
            let brute = oracle_l_alpha(&d, lambda, &inst.mu, &neg.vector, &tops).unwrap();
            prop_assert_eq!(Some(value), brute);
            prop_assert_eq!(value, k_alpha(&d, lambda, &inst.mu, neg.index).unwrap());
        }
    }

    #[test]
    fn l_h_vanishes_off_the_derived_cartan(rank in 1usize..=4, coords in prop::collection::vec(-3i64..=3, 5), li in any::<Index>(), mu_raw in prop::collection::vec(0i64..=3, 5)) {
        let d = RootDatum::from_parts(Series::A, rank).unwrap();
        let dim = d.dim();
        let h_coords: Vec<Rational> = coords[..dim].iter().map(|&c| Rational::from_integer(c)).collect();
        let h = CartanElement::from_coords(&d, h_coords).unwrap();
        let ch = Characteristic::new(0).unwrap();
        prop_assume!(!h.in_derived(&d, ch));
        let mu = d.dominant_rep(&HalfIntVector::from_ints(&mu_raw[..dim])).unwrap();
        let lambdas = enumerate_lambda_below(&d, &mu).unwrap();
        let lambda = li.get(&lambdas);
        let s = select_s(&d, &classify(&d, &mu).unwrap()).unwrap().search(&d).unwrap();
        prop_assert_eq!(l_h(&d, lambda, &mu, &h, &s, ch).unwrap(), 0);
    }
}
