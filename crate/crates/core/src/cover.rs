//! Exact covering numbers by proper left, right or two-sided ideals.
//!
//! Any cover can be enlarged member-by-member to a cover by maximal ideals
//! of the same size, so the search runs over maximal ideals only. A cyclic
//! maximal ideal `<x>` is the only proper ideal containing `x`, so it sits
//! in every cover; those forced ideals seed the search and only the elements
//! they miss are tracked afterwards.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::ideals::{enumerate_ideals, IdealBasis, IdealLattice, Side};
use crate::registry::Registry;
use crate::ring::RingPresentation;

/// A covering number: finite, or the top element `Infinity` when no cover
/// exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eta {
    Finite(u64),
    Infinity,
}

impl Eta {
    pub fn is_finite(self) -> bool {
        matches!(self, Eta::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Eta::Finite(n) => Some(n),
            Eta::Infinity => None,
        }
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eta::Finite(n) => write!(f, "{n}"),
            Eta::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for Eta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Eta::Finite(n) => s.serialize_u64(*n),
            Eta::Infinity => s.serialize_str("infinity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Branch-and-bound over the elements the forced ideals miss ran to completion.
    ExhaustiveBranchAndBound,
    /// The forced ideals already cover the ring, so their count is both a
    /// lower and an upper bound.
    ForcedEqualsUpper,
    /// Every subset of maximal ideals was tried in order of size.
    ExhaustiveSubsets,
    /// The union of all maximal ideals misses some element.
    UncoverableProof,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::ExhaustiveBranchAndBound => "exhaustive-branch-and-bound",
            Certificate::ForcedEqualsUpper => "forced-equals-upper",
            Certificate::ExhaustiveSubsets => "exhaustive-subsets",
            Certificate::UncoverableProof => "uncoverable-proof",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct CoverResult {
    pub side: Side,
    pub eta: Eta,
    /// Empty when `eta` is infinite.
    pub cover: Vec<IdealBasis>,
    pub certificate: Certificate,
    pub nodes: u64,
    pub elapsed: Duration,
    pub maximal_count: usize,
    pub forced_count: usize,
    /// An element outside every maximal ideal, when uncoverable.
    pub uncovered_witness: Option<Vec<u32>>,
}

/// Set-cover instance over the elements of a ring, indexed lexicographically.
#[derive(Debug, Clone)]
pub struct CoverProblem {
    pub universe: usize,
    /// Membership bitsets of the maximal ideals, canonical order.
    pub sets: Vec<Vec<u64>>,
    pub forced: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    /// Indices into `sets`, ascending.
    pub chosen: Vec<usize>,
    pub certificate: Certificate,
    pub nodes: u64,
}

fn full_bitset(n: usize) -> Vec<u64> {
    let mut bits = vec![u64::MAX; n.div_ceil(64)];
    if !n.is_multiple_of(64) {
        *bits.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
    }
    bits
}

fn popcount(bits: &[u64]) -> u32 {
    bits.iter().map(|w| w.count_ones()).sum()
}

fn and_not(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & !y).collect()
}

fn gain(set: &[u64], uncovered: &[u64]) -> u32 {
    set.iter()
        .zip(uncovered)
        .map(|(x, y)| (x & y).count_ones())
        .sum()
}

fn bit_positions(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

impl CoverProblem {
    pub fn union_covers(&self, chosen: &[usize]) -> bool {
        let mut uncovered = full_bitset(self.universe);
        for &c in chosen {
            uncovered = and_not(&uncovered, &self.sets[c]);
        }
        uncovered.iter().all(|&w| w == 0)
    }

    /// First element (lexicographic index) outside every set.
    pub fn uncovered_element(&self) -> Option<usize> {
        let mut uncovered = full_bitset(self.universe);
        for set in &self.sets {
            uncovered = and_not(&uncovered, set);
        }
        let first = bit_positions(&uncovered).next();
        first
    }
}

/// An exact minimum set-cover algorithm.
pub trait CoverSolver: Send + Sync {
    fn description(&self) -> &'static str;
    /// Precondition: the union of all sets is the universe.
    fn solve(&self, problem: &CoverProblem, guards: &Guards) -> Result<CoverSolution>;
}

/// Forced-ideal seeding, greedy upper bound, then depth-first branch and
/// bound branching on the uncovered element with the fewest covering sets.
pub struct BranchAndBound;

/// Tries all subsets by increasing size; independent of any seeding.
pub struct ExhaustiveSubsets;

struct Search<'a> {
    sets: &'a [Vec<u64>],
    covering: &'a [Vec<usize>],
    best: Vec<usize>,
    nodes: u64,
    guards: &'a Guards,
}

impl Search<'_> {
    fn run(&mut self, uncovered: &[u64], chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.guards.max_search_nodes {
            return Err(Error::SearchBudget(format!(
                "cover search passed {} nodes",
                self.guards.max_search_nodes
            )));
        }
        if self.nodes.is_multiple_of(1024) {
            self.guards.check_time()?;
        }
        let remaining = popcount(uncovered);
        if remaining == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        }
        let max_gain = self
            .sets
            .iter()
            .map(|s| gain(s, uncovered))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return Ok(());
        }
        let lower = chosen.len() + remaining.div_ceil(max_gain) as usize;
        if lower >= self.best.len() {
            return Ok(());
        }
        let pivot = bit_positions(uncovered)
            .min_by_key(|&e| (self.covering[e].len(), e))
            .expect("nonempty");
        for &c in &self.covering[pivot] {
            chosen.push(c);
            let next = and_not(uncovered, &self.sets[c]);
            self.run(&next, chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}

impl CoverSolver for BranchAndBound {
    fn description(&self) -> &'static str {
        "forced seeding + greedy bound + branch and bound"
    }

    fn solve(&self, problem: &CoverProblem, guards: &Guards) -> Result<CoverSolution> {
        let forced: Vec<usize> = (0..problem.sets.len())
            .filter(|&i| problem.forced[i])
            .collect();
        let mut residual = full_bitset(problem.universe);
        for &f in &forced {
            residual = and_not(&residual, &problem.sets[f]);
        }
        let residual_elems: Vec<usize> = bit_positions(&residual).collect();
        if residual_elems.is_empty() {
            return Ok(CoverSolution {
                chosen: forced,
                certificate: Certificate::ForcedEqualsUpper,
                nodes: 0,
            });
        }

        // compress to the residual elements
        let u = residual_elems.len();
        let test = |set: &[u64], e: usize| set[e / 64] >> (e % 64) & 1 == 1;
        let candidates: Vec<usize> = (0..problem.sets.len())
            .filter(|&i| {
                !problem.forced[i] && residual_elems.iter().any(|&e| test(&problem.sets[i], e))
            })
            .collect();
        let sets: Vec<Vec<u64>> = candidates
            .iter()
            .map(|&i| {
                let mut bits = vec![0u64; u.div_ceil(64)];
                for (pos, &e) in residual_elems.iter().enumerate() {
                    if test(&problem.sets[i], e) {
                        bits[pos / 64] |= 1 << (pos % 64);
                    }
                }
                bits
            })
            .collect();
        let covering: Vec<Vec<usize>> = (0..u)
            .map(|pos| (0..sets.len()).filter(|&c| test(&sets[c], pos)).collect())
            .collect();

        // greedy: largest gain, ties to the lowest canonical index
        let mut uncovered = full_bitset(u);
        let mut greedy = Vec::new();
        while popcount(&uncovered) > 0 {
            let (best, g) = sets
                .iter()
                .enumerate()
                .map(|(i, s)| (i, gain(s, &uncovered)))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("candidates cover the residual");
            assert!(g > 0, "cover precondition violated");
            greedy.push(best);
            uncovered = and_not(&uncovered, &sets[best]);
        }

        let mut search = Search {
            sets: &sets,
            covering: &covering,
            best: greedy,
            nodes: 0,
            guards,
        };
        search.run(&full_bitset(u), &mut Vec::new())?;
        let mut chosen: Vec<usize> = forced
            .into_iter()
            .chain(search.best.iter().map(|&c| candidates[c]))
            .collect();
        chosen.sort_unstable();
        Ok(CoverSolution {
            chosen,
            certificate: Certificate::ExhaustiveBranchAndBound,
            nodes: search.nodes,
        })
    }
}

impl CoverSolver for ExhaustiveSubsets {
    fn description(&self) -> &'static str {
        "every subset of maximal ideals by increasing size"
    }

    fn solve(&self, problem: &CoverProblem, guards: &Guards) -> Result<CoverSolution> {
        let m = problem.sets.len();
        let mut nodes = 0u64;
        for k in 1..=m {
            for combo in (0..m).combinations(k) {
                nodes += 1;
                if nodes > guards.max_search_nodes {
                    return Err(Error::SearchBudget(format!(
                        "subset scan passed {} subsets",
                        guards.max_search_nodes
                    )));
                }
                if nodes.is_multiple_of(4096) {
                    guards.check_time()?;
                }
                if problem.union_covers(&combo) {
                    return Ok(CoverSolution {
                        chosen: combo,
                        certificate: Certificate::ExhaustiveSubsets,
                        nodes,
                    });
                }
            }
        }
        unreachable!("precondition: the sets cover the universe")
    }
}

pub const DEFAULT_COVER_SOLVER: &str = "branch-and-bound";

pub fn cover_solvers() -> Registry<dyn CoverSolver> {
    let mut reg: Registry<dyn CoverSolver> = Registry::new("cover solver");
    reg.register("branch-and-bound", Box::new(BranchAndBound))
        .register("exhaustive", Box::new(ExhaustiveSubsets));
    reg
}

/// Builds the set-cover instance from the maximal ideals of a lattice.
pub fn cover_problem(
    ring: &RingPresentation,
    lattice: &IdealLattice,
    guards: &Guards,
) -> Result<CoverProblem> {
    let universe = guards.check_elements(ring.p(), ring.dim())? as usize;
    let idx: Vec<usize> = lattice.maximal_indices().collect();
    Ok(CoverProblem {
        universe,
        sets: idx
            .iter()
            .map(|&i| lattice.ideals()[i].subspace().bitset())
            .collect(),
        forced: idx.iter().map(|&i| lattice.is_cyclic(i)).collect(),
    })
}

/// Covering number from an already enumerated lattice.
pub fn cover_from_lattice(
    ring: &RingPresentation,
    lattice: &IdealLattice,
    solver: &dyn CoverSolver,
    guards: &Guards,
) -> Result<CoverResult> {
    let start = Instant::now();
    let maximal = lattice.maximal();
    let problem = cover_problem(ring, lattice, guards)?;
    let forced_count = problem.forced.iter().filter(|&&f| f).count();
    if let Some(e) = problem.uncovered_element() {
        return Ok(CoverResult {
            side: lattice.side(),
            eta: Eta::Infinity,
            cover: Vec::new(),
            certificate: Certificate::UncoverableProof,
            nodes: 0,
            elapsed: start.elapsed(),
            maximal_count: maximal.len(),
            forced_count,
            uncovered_witness: Some(crate::linalg::vector_from_index(
                ring.fp().p(),
                ring.dim(),
                e,
            )),
        });
    }
    let solution = solver.solve(&problem, guards)?;
    debug_assert!(problem.union_covers(&solution.chosen));
    Ok(CoverResult {
        side: lattice.side(),
        eta: Eta::Finite(solution.chosen.len() as u64),
        cover: solution
            .chosen
            .iter()
            .map(|&i| maximal[i].clone())
            .collect(),
        certificate: solution.certificate,
        nodes: solution.nodes,
        elapsed: start.elapsed(),
        maximal_count: maximal.len(),
        forced_count,
        uncovered_witness: None,
    })
}

pub fn covering_number_with(
    ring: &RingPresentation,
    side: Side,
    solver: &dyn CoverSolver,
    guards: &Guards,
) -> Result<CoverResult> {
    let lattice = enumerate_ideals(ring, side, guards)?;
    cover_from_lattice(ring, &lattice, solver, guards)
}

/// `eta_side(R)` with the default branch-and-bound solver.
pub fn covering_number(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<CoverResult> {
    covering_number_with(ring, side, &BranchAndBound, guards)
}

/// One minimum cover; an error when the ring is uncoverable.
pub fn minimal_cover(ring: &RingPresentation, side: Side, guards: &Guards) -> Result<CoverResult> {
    let result = covering_number(ring, side, guards)?;
    if !result.eta.is_finite() {
        return Err(Error::Uncoverable(side.as_str()));
    }
    Ok(result)
}

/// Maximal `side`-ideals generated by a single element.
pub fn forced_ideals(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<Vec<IdealBasis>> {
    let lattice = enumerate_ideals(ring, side, guards)?;
    Ok(lattice
        .maximal_indices()
        .filter(|&i| lattice.is_cyclic(i))
        .map(|i| lattice.ideals()[i].clone())
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientEta {
    pub ideal: IdealBasis,
    pub eta: Eta,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementaryReport {
    pub side: Side,
    pub eta: Eta,
    pub elementary: bool,
    /// One entry per nonzero two-sided ideal (including the ring itself);
    /// empty when the ring is not coverable.
    pub quotients: Vec<QuotientEta>,
}

/// `R` is `side`-elementary when it is coverable and every quotient by a
/// nonzero two-sided ideal has a strictly larger covering number.
pub fn is_eta_elementary(
    ring: &RingPresentation,
    side: Side,
    guards: &Guards,
) -> Result<ElementaryReport> {
    let eta = covering_number(ring, side, guards)?.eta;
    if !eta.is_finite() {
        return Ok(ElementaryReport {
            side,
            eta,
            elementary: false,
            quotients: Vec::new(),
        });
    }
    let two_sided = enumerate_ideals(ring, Side::TwoSided, guards)?;
    let mut quotients = Vec::new();
    for ideal in two_sided.nonzero() {
        let q = ring.quotient(ideal)?;
        let q_eta = covering_number(&q.ring, side, guards)?.eta;
        quotients.push(QuotientEta {
            ideal: ideal.clone(),
            eta: q_eta,
        });
    }
    let elementary = quotients
        .iter()
        .all(|q| q.eta.cmp(&eta) == Ordering::Greater);
    Ok(ElementaryReport {
        side,
        eta,
        elementary,
        quotients,
    })
}
