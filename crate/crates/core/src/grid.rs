//! Standard sweep grids of abelian-type pairs `(type, mu)`.

use crate::error::Result;
use crate::root_datum::{ClassicalType, RootDatum, Series};
use crate::vector::HalfIntVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInstance {
    pub ty: ClassicalType,
    pub mu: HalfIntVector,
}

impl GridInstance {
    pub fn datum(&self) -> Result<RootDatum> {
        RootDatum::new(self.ty)
    }
}

/// Non-increasing integer sequences of the given length with entries in `0..=max`.
fn non_increasing(len: usize, max: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (0..=max).rev() {
        for mut tail in non_increasing(len - 1, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// The `mu` of abelian type with coordinates at most `max_coord` for one type;
/// in type `D` the quaternionic patterns `s varpi_{n-1} + t varpi_n` are
/// bounded by `s + t <= quaternionic_sum` instead.
pub fn abelian_mus(ty: ClassicalType, max_coord: i64, quaternionic_sum: i64) -> Vec<HalfIntVector> {
    let n = ty.rank;
    let dim = ty.dim();
    match ty.series {
        Series::A => non_increasing(dim, max_coord)
            .iter()
            .map(|c| HalfIntVector::from_ints(c))
            .collect(),
        Series::B => (0..=max_coord)
            .map(|r| HalfIntVector::from_ints(&first_only(dim, r)))
            .collect(),
        Series::C => (0..=2 * max_coord).map(|r| HalfIntVector::constant(dim, r)).collect(),
        Series::D => {
            let mut out: Vec<HalfIntVector> = (0..=max_coord)
                .map(|r| HalfIntVector::from_ints(&first_only(dim, r)))
                .collect();
            for total in 1..=quaternionic_sum {
                for s in (0..=total).rev() {
                    let t = total - s;
                    let mut d = vec![s + t; n];
                    d[n - 1] = t - s;
                    out.push(HalfIntVector::from_doubled(d));
                }
            }
            out
        }
    }
}

fn first_only(dim: usize, r: i64) -> Vec<i64> {
    let mut c = vec![0; dim];
    c[0] = r;
    c
}

pub fn grid_types(max_rank: usize) -> Vec<ClassicalType> {
    let mut out = Vec::new();
    for (series, min) in [(Series::A, 1), (Series::B, 2), (Series::C, 2), (Series::D, 4)] {
        for rank in min..=max_rank {
            out.push(ClassicalType::new(series, rank).expect("rank within bounds"));
        }
    }
    out
}

/// Every type of rank at most `max_rank` with its abelian-type `mu` of
/// coordinates at most 3 (`s + t <= 4` in the quaternionic case).
pub fn standard_grid(max_rank: usize) -> Vec<GridInstance> {
    grid_types(max_rank)
        .into_iter()
        .flat_map(|ty| abelian_mus(ty, 3, 4).into_iter().map(move |mu| GridInstance { ty, mu }))
        .collect()
}

/// The quaternionic `D_4` pair `mu = 3 varpi_3 + 3 varpi_4 = (3,3,3,0)`.
pub fn d4_quaternionic_example() -> GridInstance {
    GridInstance {
        ty: ClassicalType::new(Series::D, 4).expect("D4"),
        mu: HalfIntVector::from_ints(&[3, 3, 3, 0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_type::classify;

    #[test]
    fn grid_is_abelian_and_bounded() {
        let grid = standard_grid(4);
        assert!(grid.len() > 100);
        for inst in &grid {
            let datum = inst.datum().unwrap();
            assert!(
                classify(&datum, &inst.mu).unwrap().is_abelian(),
                "{} {}",
                inst.ty,
                inst.mu
            );
            assert!(inst.mu.max_abs_doubled() <= 6);
        }
        let mut mus: Vec<_> = grid.iter().map(|g| (g.ty.to_string(), g.mu.clone())).collect();
        let before = mus.len();
        mus.sort();
        mus.dedup();
        assert_eq!(mus.len(), before);
    }

    #[test]
    fn type_list() {
        let names: Vec<String> = grid_types(4).iter().map(|t| t.to_string()).collect();
        assert_eq!(
            names,
            ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4"]
        );
        assert!(grid_types(3).iter().all(|t| t.series != Series::D));
    }

    #[test]
    fn quaternionic_patterns() {
        let d4 = ClassicalType::new(Series::D, 4).unwrap();
        let mus = abelian_mus(d4, 3, 4);
        assert!(mus.contains(&"1/2,1/2,1/2,-1/2".parse().unwrap()));
        assert!(mus.contains(&"2,2,2,0".parse().unwrap()));
        assert_eq!(mus.len(), 4 + 14);
    }
}
