//! Left, right and two-sided ideals as canonical `F_p`-subspaces.
//!
//! The lattice of `side`-ideals is built as the join-closure of the cyclic
//! ideals `<x>`: every ideal is the sum of the cyclic ideals of its elements,
//! so repeatedly adding cyclic ideals to known ideals reaches all of them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::linalg::{all_vectors, Subspace};
use crate::ring::{RingElement, RingPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        }
    }

    fn acts_left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    fn acts_right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }

    /// The side that corresponds to this one in the opposite ring.
    pub fn mirrored(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            "two-sided" | "two" | "both" | "2" => Ok(Side::TwoSided),
            other => Err(Error::InvalidParameter(format!("unknown side `{other}`"))),
        }
    }
}

/// A `side`-ideal stored as its canonical echelon basis.
///
/// Values are only produced by the closure and enumeration routines, so the
/// closure invariant holds for every instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealBasis {
    side: Side,
    basis: Subspace,
}

impl IdealBasis {
    /// Wraps a subspace after checking closure; `None` if it is not a `side`-ideal.
    pub fn checked(ring: &RingPresentation, basis: Subspace, side: Side) -> Option<IdealBasis> {
        is_closed(ring, &basis, side).then_some(IdealBasis { side, basis })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        self.basis.size()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.basis.is_full()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.basis.contains_vector(x)
    }

    pub fn is_subset_of(&self, other: &IdealBasis) -> bool {
        self.dim() <= other.dim() && self.rows().iter().all(|r| other.contains(r))
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.basis.elements().map(RingElement::new)
    }

    /// Same subspace, re-tagged; the caller guarantees closure for `side`.
    #[cfg(test)]
    pub(crate) fn retag(self, side: Side) -> IdealBasis {
        IdealBasis { side, ..self }
    }
}

/// `x` lies in the ideal (echelon reduction).
pub fn ideal_membership(ideal: &IdealBasis, x: &[u32]) -> bool {
    ideal.contains(x)
}

/// Checks `e_i b` (left) and/or `b e_i` (right) stay in the span for every
/// basis vector `e_i` and echelon row `b`.
pub fn is_closed(ring: &RingPresentation, space: &Subspace, side: Side) -> bool {
    let d = ring.dim();
    space.rows().iter().all(|b| {
        (0..d).all(|i| {
            (!side.acts_left() || space.contains_vector(&ring.basis_mul_left(i, b)))
                && (!side.acts_right() || space.contains_vector(&ring.basis_mul_right(b, i)))
        })
    })
}

/// Smallest `side`-ideal containing `gens`: span plus products, to a fixpoint.
pub fn ideal_closure(ring: &RingPresentation, gens: &[RingElement], side: Side) -> IdealBasis {
    let seed = Subspace::span(ring.fp(), ring.dim(), gens.iter().map(|g| g.coords.clone()));
    close_subspace(ring, seed, side)
}

fn close_subspace(ring: &RingPresentation, mut space: Subspace, side: Side) -> IdealBasis {
    let d = ring.dim();
    loop {
        let mut products = Vec::new();
        for b in space.rows() {
            for i in 0..d {
                if side.acts_left() {
                    let v = ring.basis_mul_left(i, b);
                    if !space.contains_vector(&v) {
                        products.push(v);
                    }
                }
                if side.acts_right() {
                    let v = ring.basis_mul_right(b, i);
                    if !space.contains_vector(&v) {
                        products.push(v);
                    }
                }
            }
        }
        if products.is_empty() {
            return IdealBasis { side, basis: space };
        }
        space = space.extend(ring.fp(), products);
    }
}

/// The complete lattice of `side`-ideals of a ring, in canonical order
/// (dimension, then echelon rows).
#[derive(Debug, Clone)]
pub struct IdealLattice {
    side: Side,
    ideals: Vec<IdealBasis>,
    cyclic: Vec<bool>,
    maximal: Vec<bool>,
}

impl IdealLattice {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ideals(&self) -> &[IdealBasis] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Generated by a single element.
    pub fn is_cyclic(&self, idx: usize) -> bool {
        self.cyclic[idx]
    }

    pub fn is_maximal(&self, idx: usize) -> bool {
        self.maximal[idx]
    }

    pub fn maximal(&self) -> Vec<IdealBasis> {
        self.maximal_indices()
            .map(|i| self.ideals[i].clone())
            .collect()
    }

    pub fn maximal_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ideals.len()).filter(|&i| self.maximal[i])
    }

    pub fn cyclic_count(&self) -> usize {
        self.cyclic.iter().filter(|&&c| c).count()
    }

    pub fn proper(&self) -> impl Iterator<Item = &IdealBasis> {
        self.ideals.iter().filter(|i| !i.is_whole_ring())
    }

    /// Nonzero ideals, including the whole ring.
    pub fn nonzero(&self) -> impl Iterator<Item = &IdealBasis> {
        self.ideals.iter().filter(|i| !i.is_zero())
    }

    pub fn position(&self, ideal: &IdealBasis) -> Option<usize> {
        self.ideals.iter().position(|i| i.basis == ideal.basis)
    }
}

/// Generators whose first nonzero coordinate is 1; scalar multiples generate
/// the same cyclic ideal.
fn normalized_generators(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    all_vectors(p, d).filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
}

pub fn cyclic_ideals(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<Vec<IdealBasis>> {
    guards.check_elements(ring.p(), ring.dim())?;
    let gens: Vec<Vec<u32>> = normalized_generators(ring.fp().p(), ring.dim()).collect();
    let found: HashSet<Subspace> = gens
        .par_chunks(256)
        .map(|chunk| {
            guards.check_time()?;
            Ok(chunk
                .iter()
                .map(|g| {
                    close_subspace(
                        ring,
                        Subspace::span(ring.fp(), ring.dim(), [g.clone()]),
                        side,
                    )
                    .basis
                })
                .collect::<HashSet<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut cyclic: Vec<Subspace> = found.into_iter().collect();
    cyclic.sort_by(|a, b| a.canonical_cmp(b));
    Ok(cyclic
        .into_iter()
        .map(|basis| IdealBasis { side, basis })
        .collect())
}

/// Every `side`-ideal of the ring, including `{0}` and the ring itself.
pub fn enumerate_ideals(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<IdealLattice> {
    let fp = ring.fp();
    let d = ring.dim();
    let cyclic: Vec<Subspace> = cyclic_ideals(ring, side, guards)?
        .into_iter()
        .map(|i| i.basis)
        .collect();
    let cyclic_set: HashSet<&Subspace> = cyclic.iter().collect();

    let mut index: HashMap<Subspace, usize> = HashMap::new();
    let mut all: Vec<Subspace> = Vec::new();
    let mut not_maximal: Vec<bool> = Vec::new();
    let mut insert =
        |s: Subspace, all: &mut Vec<Subspace>, not_max: &mut Vec<bool>| -> Option<usize> {
            if index.contains_key(&s) {
                return None;
            }
            index.insert(s.clone(), all.len());
            all.push(s);
            not_max.push(false);
            Some(all.len() - 1)
        };

    let mut frontier: Vec<usize> = Vec::new();
    for s in std::iter::once(Subspace::zero(fp.p(), d)).chain(cyclic.iter().cloned()) {
        if let Some(i) = insert(s, &mut all, &mut not_maximal) {
            frontier.push(i);
        }
    }

    while !frontier.is_empty() {
        guards.check_time()?;
        // sums for the whole frontier in parallel; merged in frontier order
        let results: Vec<(bool, Vec<Subspace>)> = frontier
            .par_iter()
            .map(|&i| {
                let base = &all[i];
                let mut blocked = false;
                let mut sums = Vec::new();
                for c in &cyclic {
                    if c.is_subspace_of(fp, base) {
                        continue;
                    }
                    let s = base.sum(fp, c);
                    if !s.is_full() {
                        blocked = true;
                    }
                    sums.push(s);
                }
                (blocked, sums)
            })
            .collect();
        let mut next = Vec::new();
        for (&i, (blocked, sums)) in frontier.iter().zip(results) {
            not_maximal[i] |= blocked;
            for s in sums {
                if let Some(j) = insert(s, &mut all, &mut not_maximal) {
                    next.push(j);
                    if all.len() > guards.max_ideals {
                        return Err(Error::IdealGuard {
                            partial: all.len(),
                            cap: guards.max_ideals,
                        });
                    }
                }
            }
        }
        frontier = next;
    }

    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&a, &b| all[a].canonical_cmp(&all[b]));
    let mut ideals = Vec::with_capacity(all.len());
    let mut cyclic_flags = Vec::with_capacity(all.len());
    let mut maximal = Vec::with_capacity(all.len());
    for i in order {
        let s = &all[i];
        cyclic_flags.push(cyclic_set.contains(s));
        maximal.push(!s.is_full() && !not_maximal[i]);
        ideals.push(IdealBasis {
            side,
            basis: s.clone(),
        });
    }
    Ok(IdealLattice {
        side,
        ideals,
        cyclic: cyclic_flags,
        maximal,
    })
}

/// Proper `side`-ideals with nothing strictly between them and the ring.
pub fn maximal_ideals(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<Vec<IdealBasis>> {
    Ok(enumerate_ideals(ring, side, guards)?.maximal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::linalg::Fp;
    use crate::paperlab::build_rnq;
    use crate::ring::{make_ring, matrix_algebra};

    fn r12() -> RingPresentation {
        make_ring(
            2,
            2,
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap()
    }

    /// All subspaces of `F_p^n`, by brute-force spanning of vector subsets.
    fn all_subspaces(p: u32, n: usize) -> Vec<Subspace> {
        let fp = Fp::new(p as u64);
        let mut found: HashSet<Subspace> = HashSet::new();
        found.insert(Subspace::zero(p, n));
        let mut frontier: Vec<Subspace> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for v in all_vectors(p, n) {
                    let t = s.extend(&fp, [v]);
                    if found.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        found.into_iter().collect()
    }

    #[test]
    fn r12_left_ideals() {
        let g = Guards::default();
        let lat = enumerate_ideals(&r12(), Side::Left, &g).unwrap();
        let rows: Vec<Vec<Vec<u32>>> = lat.ideals().iter().map(|i| i.rows().to_vec()).collect();
        assert_eq!(
            rows,
            vec![
                vec![],
                vec![vec![0, 1]],
                vec![vec![1, 0]],
                vec![vec![1, 1]],
                vec![vec![1, 0], vec![0, 1]],
            ]
        );
        assert_eq!(lat.maximal().len(), 3);
        assert!(lat.maximal().iter().all(|m| m.order() == 2));
        let two = enumerate_ideals(&r12(), Side::TwoSided, &g).unwrap();
        assert_eq!(two.len(), 3);
        assert_eq!(two.ideals()[1].rows(), &[vec![0, 1]]);
    }

    #[test]
    fn null_ring_ideals_are_subgroups() {
        let null = RingPresentation::null(2, 2).unwrap();
        for side in Side::ALL {
            assert_eq!(
                enumerate_ideals(&null, side, &Guards::default())
                    .unwrap()
                    .len(),
                5
            );
        }
    }

    #[test]
    fn enumeration_matches_subspace_scan() {
        let g = Guards::default();
        let f2 = make_field(2, 1).unwrap();
        let rings = [
            r12(),
            r12().opposite(),
            RingPresentation::null(2, 3).unwrap(),
            matrix_algebra(2, &f2).unwrap(),
            RingPresentation::direct_product(&[&r12(), &r12()]).unwrap(),
        ];
        for ring in &rings {
            let all = all_subspaces(2, ring.dim());
            for side in Side::ALL {
                let lat = enumerate_ideals(ring, side, &g).unwrap();
                let listed: HashSet<&Subspace> =
                    lat.ideals().iter().map(|i| i.subspace()).collect();
                for s in &all {
                    assert_eq!(is_closed(ring, s, side), listed.contains(s), "{side} {s:?}");
                }
                // maximal flags against direct comparison
                for (i, a) in lat.ideals().iter().enumerate() {
                    let brute = !a.is_whole_ring()
                        && !lat.proper().any(|b| b.dim() > a.dim() && a.is_subset_of(b));
                    assert_eq!(lat.is_maximal(i), brute);
                }
            }
        }
    }

    #[test]
    fn maximal_left_ideals_of_r22() {
        let r = build_rnq(2, &make_field(2, 1).unwrap()).unwrap();
        let max = maximal_ideals(&r, Side::Left, &Guards::default()).unwrap();
        assert_eq!(max.len(), 7);
        assert!(max.iter().all(|m| m.order() == 16));
    }

    #[test]
    fn field_has_only_zero_maximal() {
        let f2 = matrix_algebra(1, &make_field(2, 1).unwrap()).unwrap();
        let max = maximal_ideals(&f2, Side::Left, &Guards::default()).unwrap();
        assert_eq!(max.len(), 1);
        assert!(max[0].is_zero());
    }

    #[test]
    fn membership() {
        let r = r12();
        let l = ideal_closure(&r, &[r.basis(1)], Side::Left);
        assert!(ideal_membership(&l, &[0, 0]));
        assert!(!ideal_membership(&l, &[1, 0]));
        assert!(ideal_closure(&r, &[], Side::Left).is_zero());
    }

    #[test]
    fn zero_ring_lattice() {
        let z = RingPresentation::null(2, 0).unwrap();
        let lat = enumerate_ideals(&z, Side::Left, &Guards::default()).unwrap();
        assert_eq!(lat.len(), 1);
        assert!(lat.maximal().is_empty());
    }

    #[test]
    fn guard_reports_partial_count() {
        let null = RingPresentation::null(2, 4).unwrap();
        let g = Guards {
            max_ideals: 10,
            ..Guards::default()
        };
        assert!(matches!(
            enumerate_ideals(&null, Side::Left, &g),
            Err(Error::IdealGuard { cap: 10, .. })
        ));
    }
}
