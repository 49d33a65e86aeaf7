//! Quasi-regularity, the Jacobson radical and the splitting `R = S + J`.
//!
//! With `a o b = a + b - ab`, an element `a` is left quasi-regular when some
//! `b` has `b o a = 0`. The radical is computed as
//! `{a : a and every ta are left quasi-regular}`; the Dorroh route
//! (maximal left ideals of `F_p x R`) is kept as an independent check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::ideals::{enumerate_ideals, IdealBasis, Side};
use crate::linalg::{kernel, solve_combination, vector_index, Subspace};
use crate::registry::Registry;
use crate::ring::{RingElement, RingPresentation};

/// `a o b = a + b - ab`.
pub fn circle(ring: &RingPresentation, a: &[u32], b: &[u32]) -> RingElement {
    let ab = ring.mul(a, b);
    ring.sub(&ring.add(a, b), &ab)
}

/// A left quasi-inverse of `a`: some `b` with `b o a = 0`.
///
/// `b o a = 0` is the linear system `b - ba = -a`, so this is one solve
/// rather than a scan.
pub fn left_quasi_inverse(ring: &RingPresentation, a: &[u32]) -> Option<RingElement> {
    let fp = ring.fp();
    let images: Vec<Vec<u32>> = (0..ring.dim())
        .map(|i| fp.sub_vec(&ring.basis(i), &ring.basis_mul_left(i, a)))
        .collect();
    solve_combination(fp, &images, &fp.neg_vec(a)).map(RingElement::new)
}

pub fn left_quasi_regular(ring: &RingPresentation, a: &[u32]) -> bool {
    left_quasi_inverse(ring, a).is_some()
}

/// Exhaustive version of [`left_quasi_inverse`]: the lexicographically first
/// `b` with `b o a = 0`.
pub fn left_quasi_inverse_scan(
    ring: &RingPresentation,
    a: &[u32],
    guards: &Guards,
) -> Result<Option<RingElement>> {
    Ok(ring
        .elements(guards)?
        .find(|b| circle(ring, b, a).is_zero()))
}

/// The Jacobson radical by quasi-regularity, as a verified two-sided ideal.
pub fn jacobson_radical(ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
    let size = guards.check_elements(ring.p(), ring.dim())? as usize;
    let p = ring.fp().p();
    let elements: Vec<Vec<u32>> = crate::linalg::all_vectors(p, ring.dim()).collect();
    let lqr: Vec<bool> = elements
        .par_iter()
        .map(|a| left_quasi_regular(ring, a))
        .collect();
    debug_assert_eq!(lqr.len(), size);
    guards.check_time()?;
    let members: Vec<&Vec<u32>> = elements
        .par_iter()
        .filter(|a| {
            lqr[vector_index(p, a)]
                && Subspace::span(ring.fp(), ring.dim(), ring.right_mul_images(a))
                    .elements()
                    .all(|ta| lqr[vector_index(p, &ta)])
        })
        .collect();
    let span = Subspace::span(ring.fp(), ring.dim(), members.iter().map(|v| v.to_vec()));
    if span.size() != members.len() as u128 {
        return Err(Error::DecompositionInvalid(format!(
            "quasi-regular radical set has {} elements but spans {}",
            members.len(),
            span.size()
        )));
    }
    IdealBasis::checked(ring, span, Side::TwoSided).ok_or_else(|| {
        Error::DecompositionInvalid("quasi-regular radical set is not a two-sided ideal".into())
    })
}

fn intersect_maximal_left(ring: &RingPresentation, guards: &Guards) -> Result<Subspace> {
    let lattice = enumerate_ideals(ring, Side::Left, guards)?;
    let fp = ring.fp();
    Ok(lattice
        .maximal()
        .iter()
        .fold(Subspace::full(fp.p(), ring.dim()), |acc, m| {
            acc.intersect(fp, m.subspace())
        }))
}

/// Radical of `R` read off the Dorroh extension: intersect the maximal left
/// ideals of the unital ring `F_p x R`, then drop the scalar coordinate.
pub fn radical_dorroh_oracle(ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
    let ext = ring.dorroh();
    let rad = intersect_maximal_left(&ext, guards)?;
    if rad.rows().iter().any(|r| r[0] != 0) {
        return Err(Error::DecompositionInvalid(
            "radical of the Dorroh extension leaves {0} x R".into(),
        ));
    }
    let projected = Subspace::span(
        ring.fp(),
        ring.dim(),
        rad.rows().iter().map(|r| r[1..].to_vec()),
    );
    IdealBasis::checked(ring, projected, Side::TwoSided).ok_or_else(|| {
        Error::DecompositionInvalid("projected Dorroh radical is not a two-sided ideal".into())
    })
}

/// Intersection of the ring's own maximal left ideals; only meaningful for
/// unital rings.
pub fn radical_maximal_left(ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
    if !ring.has_identity() {
        return Err(Error::InvalidParameter(
            "maximal-left-ideal radical needs a unital ring".into(),
        ));
    }
    let rad = intersect_maximal_left(ring, guards)?;
    IdealBasis::checked(ring, rad, Side::TwoSided).ok_or_else(|| {
        Error::DecompositionInvalid("intersection of maximal left ideals is not two-sided".into())
    })
}

/// A way of computing the Jacobson radical.
pub trait RadicalMethod: Send + Sync {
    fn description(&self) -> &'static str;
    fn radical(&self, ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis>;
}

pub struct QuasiRegular;
pub struct DorrohOracle;
pub struct MaximalLeftIntersection;

impl RadicalMethod for QuasiRegular {
    fn description(&self) -> &'static str {
        "elements a with a and every ta left quasi-regular"
    }

    fn radical(&self, ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
        jacobson_radical(ring, guards)
    }
}

impl RadicalMethod for DorrohOracle {
    fn description(&self) -> &'static str {
        "intersection of maximal left ideals of the Dorroh extension, projected"
    }

    fn radical(&self, ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
        radical_dorroh_oracle(ring, guards)
    }
}

impl RadicalMethod for MaximalLeftIntersection {
    fn description(&self) -> &'static str {
        "intersection of maximal left ideals (unital rings only)"
    }

    fn radical(&self, ring: &RingPresentation, guards: &Guards) -> Result<IdealBasis> {
        radical_maximal_left(ring, guards)
    }
}

pub const DEFAULT_RADICAL_METHOD: &str = "quasi-regular";

pub fn radical_methods() -> Registry<dyn RadicalMethod> {
    let mut reg: Registry<dyn RadicalMethod> = Registry::new("radical method");
    reg.register("quasi-regular", Box::new(QuasiRegular))
        .register("dorroh", Box::new(DorrohOracle))
        .register("maximal-left", Box::new(MaximalLeftIntersection));
    reg
}

/// `R = S + J` with `S` a subring complementing the radical, and the split
/// `J = SJ + K` where `K = {x in J : Rx = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub s: Subspace,
    pub j: Subspace,
    pub sj: Subspace,
    pub k: Subspace,
}

impl Decomposition {
    /// `J = SJ + K` is a direct sum.
    pub fn splits(&self, ring: &RingPresentation) -> bool {
        self.sj.dim() + self.k.dim() == self.j.dim()
            && self.sj.intersect(ring.fp(), &self.k).is_zero()
    }
}

/// Searches for a multiplicatively closed complement `S` of the radical.
///
/// Writing the complement basis as lifts `c_a + j_a` of the canonical
/// complement columns, candidates `j_a` run over the radical in
/// lexicographic order; a pair `(a, b)` is checked as soon as every lift its
/// product depends on is fixed.
pub fn wedderburn_complement(ring: &RingPresentation, guards: &Guards) -> Result<Decomposition> {
    let fp = ring.fp();
    let d = ring.dim();
    let j = jacobson_radical(ring, guards)?.subspace().clone();
    guards.check_elements(ring.p(), j.dim())?;
    let cols = j.complement_columns();
    let m = cols.len();
    let project = |v: &[u32]| -> Vec<u32> {
        let mut w = v.to_vec();
        j.reduce(fp, &mut w);
        cols.iter().map(|&c| w[c]).collect()
    };
    // gamma[a][b]: coordinates of c_a c_b modulo J
    let gamma: Vec<Vec<Vec<u32>>> = cols
        .iter()
        .map(|&a| {
            cols.iter()
                .map(|&b| project(ring.structure(a, b)))
                .collect()
        })
        .collect();
    let mut checks_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            let support = gamma[a][b].iter().rposition(|&c| c != 0).unwrap_or(0);
            checks_at[a.max(b).max(support)].push((a, b));
        }
    }
    let radical_elems: Vec<Vec<u32>> = j.elements().collect();

    let mut lifts: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut choice = vec![0usize; m];
    let mut nodes: u64 = 0;
    let mut level = 0usize;
    // iterative DFS over choice[level]
    'search: loop {
        if level == m {
            break 'search;
        }
        if choice[level] >= radical_elems.len() {
            if level == 0 {
                return Err(Error::DecompositionInvalid(
                    "no multiplicatively closed complement of the radical".into(),
                ));
            }
            choice[level] = 0;
            level -= 1;
            lifts.pop();
            choice[level] += 1;
            continue;
        }
        nodes += 1;
        if nodes > guards.max_search_nodes {
            return Err(Error::SearchBudget(format!(
                "complement search passed {} nodes",
                guards.max_search_nodes
            )));
        }
        if nodes.is_multiple_of(4096) {
            guards.check_time()?;
        }
        let mut lift = radical_elems[choice[level]].clone();
        lift[cols[level]] = fp.add(lift[cols[level]], 1);
        lifts.push(lift);
        let ok = checks_at[level].iter().all(|&(a, b)| {
            let lhs = ring.mul(&lifts[a], &lifts[b]);
            let mut rhs = vec![0u32; d];
            for (k, &g) in gamma[a][b].iter().enumerate().filter(|(_, &g)| g != 0) {
                fp.axpy(&mut rhs, g, &lifts[k]);
            }
            lhs.coords == rhs
        });
        if ok {
            level += 1;
        } else {
            lifts.pop();
            choice[level] += 1;
        }
    }

    let s = Subspace::span(fp, d, lifts);
    let (sj, k) = split_radical(ring, &s, &j);
    Ok(Decomposition { s, j, sj, k })
}

fn split_radical(ring: &RingPresentation, s: &Subspace, j: &Subspace) -> (Subspace, Subspace) {
    let fp = ring.fp();
    let d = ring.dim();
    let sj = Subspace::span(
        fp,
        d,
        s.rows()
            .iter()
            .flat_map(|a| j.rows().iter().map(move |x| ring.mul(a, x).coords)),
    );
    // x = sum lambda_r j_r with e_i x = 0 for every i
    let images: Vec<Vec<u32>> = j
        .rows()
        .iter()
        .map(|x| (0..d).flat_map(|i| ring.basis_mul_left(i, x)).collect())
        .collect();
    let ker = kernel(fp, &images, d * d);
    let k = Subspace::span(fp, d, ker.rows().iter().map(|c| j.combine(fp, c)));
    (sj, k)
}

/// Recomputes `SJ` and `K` for a decomposition and checks `J = SJ + K` is direct.
pub fn sj_and_k(
    ring: &RingPresentation,
    decomposition: &Decomposition,
) -> Result<(Subspace, Subspace)> {
    let fp = ring.fp();
    let Decomposition { s, j, .. } = decomposition;
    if s.dim() + j.dim() != ring.dim() || !s.intersect(fp, j).is_zero() {
        return Err(Error::DecompositionInvalid(
            "S and J are not complementary".into(),
        ));
    }
    let (sj, k) = split_radical(ring, s, j);
    if sj.dim() + k.dim() != j.dim() || !sj.intersect(fp, &k).is_zero() {
        return Err(Error::DecompositionInvalid(format!(
            "J (dim {}) is not SJ (dim {}) + K (dim {}) as a direct sum",
            j.dim(),
            sj.dim(),
            k.dim()
        )));
    }
    Ok((sj, k))
}
