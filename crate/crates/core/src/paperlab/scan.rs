//! Isomorphism-invariant fingerprints, exhaustive and sampled scans of small
//! structure-constant tables, a brute-force isomorphism search, and a random
//! generator of small associative algebras.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{covering_number, is_eta_elementary, Eta};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::ideals::{enumerate_ideals, Side};
use crate::linalg::{is_prime, rref, Fp, Subspace};
use crate::radical::jacobson_radical;
use crate::ring::RingPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: u128,
    pub characteristic: u64,
    pub radical_order: u128,
    pub has_identity: bool,
    pub has_left_identity: bool,
    pub has_right_identity: bool,
    pub left_ideal_count: usize,
    pub two_sided_ideal_count: usize,
    pub eta_left: Eta,
    pub eta_right: Eta,
    pub eta_two_sided: Eta,
}

pub fn fingerprint(ring: &RingPresentation, guards: &Guards) -> Result<Fingerprint> {
    Ok(Fingerprint {
        order: ring.size(),
        characteristic: ring.p(),
        radical_order: jacobson_radical(ring, guards)?.order(),
        has_identity: ring.has_identity(),
        has_left_identity: ring.has_left_identity(),
        has_right_identity: ring.has_right_identity(),
        left_ideal_count: enumerate_ideals(ring, Side::Left, guards)?.len(),
        two_sided_ideal_count: enumerate_ideals(ring, Side::TwoSided, guards)?.len(),
        eta_left: covering_number(ring, Side::Left, guards)?.eta,
        eta_right: covering_number(ring, Side::Right, guards)?.eta,
        eta_two_sided: covering_number(ring, Side::TwoSided, guards)?.eta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ScanMode {
    /// Every table in `F_p^(d^3)`.
    Exhaustive,
    /// `samples` uniform random tables from a seeded generator.
    Sampled { samples: u64, seed: u64 },
}

/// One fingerprint class among the associative tables seen.
#[derive(Debug, Clone, Serialize)]
pub struct ScanClass {
    pub fingerprint: Fingerprint,
    pub left_elementary: bool,
    /// Number of tables in the class.
    pub count: u64,
    /// First table of the class in scan order.
    pub representative: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub p: u64,
    pub d: usize,
    pub mode: ScanMode,
    pub tables_scanned: u64,
    pub associative: u64,
    pub classes: Vec<ScanClass>,
}

impl ScanReport {
    pub fn elementary_classes(&self) -> impl Iterator<Item = &ScanClass> {
        self.classes.iter().filter(|c| c.left_elementary)
    }
}

/// Exhaustive scans up to this many tables.
pub const MAX_EXHAUSTIVE_TABLES: u64 = 1 << 20;

fn table_from_index(p: u64, len: usize, mut idx: u64) -> Vec<u32> {
    let mut sc = vec![0u32; len];
    for slot in sc.iter_mut().rev() {
        *slot = (idx % p) as u32;
        idx /= p;
    }
    sc
}

/// Enumerates (or samples) structure-constant tables over `F_p` in dimension
/// `d`, keeps the associative ones, and groups them by fingerprint and
/// left-elementary flag.
pub fn fingerprint_scan(p: u64, d: usize, mode: ScanMode, guards: &Guards) -> Result<ScanReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d < 1 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let len = d * d * d;
    let indices: Vec<u64> = match mode {
        ScanMode::Exhaustive => {
            let total = (p as u128)
                .checked_pow(len as u32)
                .filter(|&t| t <= MAX_EXHAUSTIVE_TABLES as u128);
            let Some(total) = total else {
                return Err(Error::SearchBudget(format!(
                    "{p}^{len} tables exceed the exhaustive limit {MAX_EXHAUSTIVE_TABLES}"
                )));
            };
            (0..total as u64).collect()
        }
        ScanMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = (p as f64).powi(len as i32);
            (0..samples)
                .map(|_| {
                    if total < u64::MAX as f64 {
                        rng.gen_range(0..total as u64)
                    } else {
                        rng.gen()
                    }
                })
                .collect()
        }
    };
    let tables_scanned = indices.len() as u64;

    // results in scan order so representatives do not depend on scheduling
    let per_table: Vec<Option<(Fingerprint, bool, Vec<u32>)>> = indices
        .par_chunks(64)
        .map(|chunk| {
            guards.check_time()?;
            chunk
                .iter()
                .map(|&idx| {
                    let sc = table_from_index(p, len, idx);
                    let ring = match RingPresentation::from_flat(p, d, sc.clone()) {
                        Ok(r) => r,
                        Err(Error::NonAssociative(..)) => return Ok(None),
                        Err(e) => return Err(e),
                    };
                    let fp = fingerprint(&ring, guards)?;
                    let elementary = fp.eta_left.is_finite()
                        && is_eta_elementary(&ring, Side::Left, guards)?.elementary;
                    Ok(Some((fp, elementary, sc)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut associative = 0;
    let mut classes: BTreeMap<(Fingerprint, bool), ScanClass> = BTreeMap::new();
    for (fp, elementary, sc) in per_table.into_iter().flatten() {
        associative += 1;
        classes
            .entry((fp.clone(), elementary))
            .and_modify(|c| c.count += 1)
            .or_insert_with(|| ScanClass {
                fingerprint: fp,
                left_elementary: elementary,
                count: 1,
                representative: sc
                    .chunks(d * d)
                    .map(|row| row.chunks(d).map(<[u32]>::to_vec).collect())
                    .collect(),
            });
    }
    Ok(ScanReport {
        p,
        d,
        mode,
        tables_scanned,
        associative,
        classes: classes.into_values().collect(),
    })
}

/// Searches for an invertible `F_p`-linear map `phi` with
/// `phi(e_i e_j) = phi(e_i) phi(e_j)`, assigning basis images one at a time.
/// Returns the images `phi(e_i)` when the rings are isomorphic.
pub fn find_isomorphism(
    a: &RingPresentation,
    b: &RingPresentation,
    guards: &Guards,
) -> Result<Option<Vec<Vec<u32>>>> {
    if a.p() != b.p() || a.dim() != b.dim() {
        return Ok(None);
    }
    let d = a.dim();
    guards.check_elements(a.p(), d * d)?;
    let candidates: Vec<Vec<u32>> = b
        .elements(guards)?
        .map(Vec::from)
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    let mut images: Vec<Vec<u32>> = Vec::with_capacity(d);
    let mut nodes = 0u64;
    if extend_isomorphism(a, b, &candidates, &mut images, &mut nodes, guards)? {
        Ok(Some(images))
    } else {
        Ok(None)
    }
}

fn apply(b: &RingPresentation, images: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    let fp = b.fp();
    let mut out = vec![0; b.dim()];
    for (c, img) in x.iter().zip(images) {
        if *c != 0 {
            fp.axpy(&mut out, *c, img);
        }
    }
    out
}

fn extend_isomorphism(
    a: &RingPresentation,
    b: &RingPresentation,
    candidates: &[Vec<u32>],
    images: &mut Vec<Vec<u32>>,
    nodes: &mut u64,
    guards: &Guards,
) -> Result<bool> {
    let k = images.len();
    if k == a.dim() {
        // all products are checked once the full map is known
        for i in 0..k {
            for j in 0..k {
                if apply(b, images, a.structure(i, j)) != b.mul(&images[i], &images[j]).coords {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    for cand in candidates {
        *nodes += 1;
        if *nodes > guards.max_search_nodes {
            return Err(Error::SearchBudget("isomorphism search".into()));
        }
        let mut rows: Vec<Vec<u32>> = images.iter().cloned().chain([cand.clone()]).collect();
        if rref(b.fp(), &mut rows).len() <= k {
            continue;
        }
        images.push(cand.clone());
        if extend_isomorphism(a, b, candidates, images, nodes, guards)? {
            return Ok(true);
        }
        images.pop();
    }
    Ok(false)
}

/// Random associative algebra of dimension between 1 and `max_dim`: the
/// nonunital subalgebra generated by one or two random matrices in
/// `M_m(F_p)`, `m` in {2, 3}, with structure constants taken against the
/// echelon basis of the subalgebra.
pub fn random_algebra<R: Rng>(p: u64, max_dim: usize, rng: &mut R) -> Result<RingPresentation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = Fp::new(p);
    loop {
        let m: usize = rng.gen_range(2..=3);
        let gens: usize = rng.gen_range(1..=2);
        let shape: u8 = rng.gen_range(0..3);
        let mats: Vec<Vec<u32>> = (0..gens)
            .map(|_| {
                (0..m * m)
                    .map(|idx| {
                        let (i, j) = (idx / m, idx % m);
                        let allowed = match shape {
                            0 => i < j,
                            1 => i <= j,
                            _ => true,
                        };
                        if allowed && rng.gen_bool(0.6) {
                            rng.gen_range(0..p as u32)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        if let Some(ring) = generated_subalgebra(&fp, m, &mats, max_dim) {
            return Ok(ring);
        }
    }
}

fn mat_mul(fp: &Fp, m: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = vec![0; m * m];
    for i in 0..m {
        for l in 0..m {
            let a = x[i * m + l];
            if a == 0 {
                continue;
            }
            for j in 0..m {
                out[i * m + j] = fp.add(out[i * m + j], fp.mul(a, y[l * m + j]));
            }
        }
    }
    out
}

fn generated_subalgebra(
    fp: &Fp,
    m: usize,
    gens: &[Vec<u32>],
    max_dim: usize,
) -> Option<RingPresentation> {
    let mut space = Subspace::span(fp, m * m, gens.iter().cloned());
    loop {
        if space.dim() == 0 || space.dim() > max_dim {
            return None;
        }
        let rows = space.rows().to_vec();
        let products = rows.iter().flat_map(|x| {
            rows.iter()
                .map(|y| mat_mul(fp, m, x, y))
                .collect::<Vec<_>>()
        });
        let next = space.extend(fp, products);
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    let rows = space.rows();
    let d = rows.len();
    let mut sc = Vec::with_capacity(d * d * d);
    for x in rows {
        for y in rows {
            sc.extend(space.coordinates(&mat_mul(fp, m, x, y)));
        }
    }
    Some(
        RingPresentation::from_flat(fp.p() as u64, d, sc)
            .expect("matrix subalgebras are associative"),
    )
}

/// `count` random algebras from a fixed seed.
pub fn random_algebras(
    p: u64,
    max_dim: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<RingPresentation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_algebra(p, max_dim, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::paperlab::rnq::{build_null_ring, build_rnq};

    #[test]
    fn dimension_one_has_no_elementary_rings() {
        let g = Guards::default();
        let rep = fingerprint_scan(2, 1, ScanMode::Exhaustive, &g).unwrap();
        assert_eq!(rep.tables_scanned, 2);
        assert_eq!(rep.associative, 2);
        assert_eq!(rep.elementary_classes().count(), 0);
    }

    #[test]
    fn binary_plane_scan() {
        let g = Guards::default();
        let rep = fingerprint_scan(2, 2, ScanMode::Exhaustive, &g).unwrap();
        assert_eq!(rep.tables_scanned, 256);
        let found: Vec<&Fingerprint> = rep.elementary_classes().map(|c| &c.fingerprint).collect();
        let null = fingerprint(&build_null_ring(2, 2).unwrap(), &g).unwrap();
        let r12 = fingerprint(&build_rnq(1, &make_field(2, 1).unwrap()).unwrap(), &g).unwrap();
        let mut expected = vec![&null, &r12];
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn sampled_scan_is_reproducible() {
        let g = Guards::default();
        let mode = ScanMode::Sampled {
            samples: 200,
            seed: 7,
        };
        let a = fingerprint_scan(2, 3, mode, &g).unwrap();
        let b = fingerprint_scan(2, 3, mode, &g).unwrap();
        assert_eq!(a.tables_scanned, 200);
        assert_eq!(a.associative, b.associative);
        assert_eq!(a.classes.len(), b.classes.len());
        assert!(a
            .elementary_classes()
            .all(|c| c.fingerprint.radical_order > 1));
    }

    #[test]
    fn isomorphism_oracle() {
        let g = Guards::default();
        let r12 = build_rnq(1, &make_field(2, 1).unwrap()).unwrap();
        // same ring on the swapped basis
        let swapped = crate::ring::make_ring(
            2,
            2,
            &[vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]],
        )
        .unwrap();
        let phi = find_isomorphism(&r12, &swapped, &g).unwrap().unwrap();
        assert_eq!(phi, vec![vec![0, 1], vec![1, 0]]);
        assert!(find_isomorphism(&r12, &r12.opposite(), &g)
            .unwrap()
            .is_none());
        assert!(find_isomorphism(&r12, &build_null_ring(2, 2).unwrap(), &g)
            .unwrap()
            .is_none());
    }

    #[test]
    fn random_algebras_are_small_and_associative() {
        let rings = random_algebras(3, 4, 30, 11).unwrap();
        assert!(rings
            .iter()
            .all(|r| (1..=4).contains(&r.dim()) && r.associativity_witness().is_none()));
        let again = random_algebras(3, 4, 30, 11).unwrap();
        assert!(rings
            .iter()
            .zip(&again)
            .all(|(a, b)| a.table() == b.table()));
    }
}
