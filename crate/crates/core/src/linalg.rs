//! Dense linear algebra over a prime field `F_p` with small `p`.
//!
//! Vectors are plain `Vec<u32>` with entries in `[0, p)`. Subspaces are kept
//! in reduced row-echelon form, which makes them canonical: two subspaces are
//! equal iff their row lists are equal.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Arithmetic in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fp {
    p: u32,
    inv: Vec<u32>,
}

impl Fp {
    /// Panics if `p` is not a prime below 2^16; callers validate first.
    pub fn new(p: u64) -> Fp {
        assert!(is_prime(p) && p < (1 << 16), "Fp::new({p})");
        let p = p as u32;
        let mut inv = vec![0; p as usize];
        for a in 1..p {
            // Fermat: a^(p-2)
            let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p as u64;
                }
                base = base * base % p as u64;
                e >>= 1;
            }
            inv[a as usize] = acc as u32;
        }
        Fp { p, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// `acc += c * v`
    #[inline]
    pub fn axpy(&self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = (*a + c * x) % self.p;
        }
    }

    pub fn add_vec(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn neg_vec(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.neg(x)).collect()
    }

    pub fn scale_vec(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }
}

/// Lexicographic position of a vector among all of `F_p^n` (coordinate 0 most
/// significant).
pub fn vector_index(p: u32, v: &[u32]) -> usize {
    v.iter()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

pub fn vector_from_index(p: u32, n: usize, mut idx: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    v
}

/// All vectors of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as usize).pow(n as u32);
    (0..total).map(move |i| vector_from_index(p, n, i))
}

/// Row-reduces in place to reduced echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(fp: &Fp, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = fp.inv(rows[r][col]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = fp.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = fp.neg(row[col]);
                fp.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_p^n` in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Subspace {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            p,
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn span<I, V>(fp: &Fp, n: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<u32>>,
    {
        let mut rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(Into::into)
            .filter(|v: &Vec<u32>| v.iter().any(|&x| x != 0))
            .collect();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        let pivots = rref(fp, &mut rows);
        Subspace {
            p: fp.p(),
            n,
            rows,
            pivots,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Number of vectors, `p^dim`.
    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.dim() as u32)
    }

    /// Reduces `v` modulo the subspace; the result is zero on every pivot column.
    pub fn reduce(&self, fp: &Fp, v: &mut [u32]) {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = v[col];
            if c != 0 {
                fp.axpy(v, fp.neg(c), row);
            }
        }
    }

    pub fn contains(&self, fp: &Fp, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(fp, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Membership using only the stored characteristic (rows are normalized,
    /// so no inverses are needed).
    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = w[col];
            if c != 0 {
                let c = p - c;
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = (*x + c * r) % p;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, fp: &Fp, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(fp, r))
    }

    pub fn sum(&self, fp: &Fp, other: &Subspace) -> Subspace {
        Subspace::span(fp, self.n, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Adds `vectors` to the span.
    pub fn extend<I: IntoIterator<Item = Vec<u32>>>(&self, fp: &Fp, vectors: I) -> Subspace {
        Subspace::span(fp, self.n, self.rows.iter().cloned().chain(vectors))
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, fp: &Fp, other: &Subspace) -> Subspace {
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).copied().collect())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, n)).collect()),
            )
            .collect();
        rref(fp, &mut rows);
        let kept = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec());
        Subspace::span(fp, n, kept)
    }

    /// Standard basis vectors at the non-pivot columns: the canonical complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v` (which must lie in the subspace) against the echelon rows.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    pub fn combine(&self, fp: &Fp, coeffs: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            fp.axpy(&mut v, c, row);
        }
        v
    }

    /// Every vector in the subspace, in lexicographic order.
    pub fn elements(&self) -> SubspaceElements<'_> {
        SubspaceElements {
            space: self,
            digits: vec![0; self.dim()],
            current: vec![0; self.n],
            done: false,
        }
    }

    /// Membership bitset over the lexicographic indexing of `F_p^n`.
    pub fn bitset(&self) -> Vec<u64> {
        let total = (self.p as usize).pow(self.n as u32);
        let mut bits = vec![0u64; total.div_ceil(64)];
        for v in self.elements() {
            let i = vector_index(self.p, &v);
            bits[i / 64] |= 1 << (i % 64);
        }
        bits
    }

    /// Orders by dimension first, then by the echelon rows lexicographically.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

pub struct SubspaceElements<'a> {
    space: &'a Subspace,
    digits: Vec<u32>,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for SubspaceElements<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let p = self.space.p;
        // odometer, last row fastest; p additions of a row wrap back to zero
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            for (c, &r) in self.current.iter_mut().zip(&self.space.rows[k]) {
                *c = (*c + r) % p;
            }
            self.digits[k] += 1;
            if self.digits[k] < p {
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}

/// Finds `coeffs` with `sum coeffs[i] * images[i] == target`, if any.
pub fn solve_combination(fp: &Fp, images: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let m = images.len();
    let n = target.len();
    let mut rows: Vec<Vec<u32>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut r = img.clone();
            r.extend((0..m).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    // echelonize on the image part only
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = fp.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = fp.neg(row[col]);
                fp.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut residual = target.to_vec();
    let mut coeffs = vec![0; m];
    for (k, &col) in pivots.iter().enumerate() {
        let c = residual[col];
        if c != 0 {
            fp.axpy(&mut residual, fp.neg(c), &rows[k][..n]);
            fp.axpy(&mut coeffs, c, &rows[k][n..]);
        }
    }
    residual.iter().all(|&x| x == 0).then_some(coeffs)
}

/// Kernel of the map sending the `i`-th standard basis vector of `F_p^m` to
/// `images[i]`, as a subspace of `F_p^m`.
pub fn kernel(fp: &Fp, images: &[Vec<u32>], target_dim: usize) -> Subspace {
    let m = images.len();
    let mut rows: Vec<Vec<u32>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut r = img.clone();
            r.extend((0..m).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    rref(fp, &mut rows);
    let kept = rows
        .into_iter()
        .filter(|r| r[..target_dim].iter().all(|&x| x == 0))
        .map(|r| r[target_dim..].to_vec());
    Subspace::span(fp, m, kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(7) && !is_prime(1) && !is_prime(9));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn rref_is_canonical() {
        let fp = Fp::new(3);
        let a = Subspace::span(&fp, 3, [vec![1, 2, 0], vec![0, 1, 1]]);
        let b = Subspace::span(&fp, 3, [vec![1, 0, 1], vec![2, 2, 1], vec![0, 2, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn elements_are_lexicographic() {
        let fp = Fp::new(2);
        let s = Subspace::span(&fp, 3, [vec![1, 1, 0], vec![0, 0, 1]]);
        let elems: Vec<_> = s.elements().collect();
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
        assert_eq!(elems.len(), 4);
        assert!(elems.iter().all(|v| s.contains(&fp, v)));
    }

    #[test]
    fn intersection_of_planes() {
        let fp = Fp::new(5);
        let a = Subspace::span(&fp, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(&fp, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            a.intersect(&fp, &b),
            Subspace::span(&fp, 3, [vec![0, 1, 0]])
        );
        assert!(a.intersect(&fp, &Subspace::zero(5, 3)).is_zero());
    }

    #[test]
    fn solve_and_kernel() {
        let fp = Fp::new(3);
        let images = vec![vec![1, 1], vec![2, 2], vec![0, 1]];
        let c = solve_combination(&fp, &images, &[2, 0]).unwrap();
        let mut acc = vec![0, 0];
        for (img, &ci) in images.iter().zip(&c) {
            fp.axpy(&mut acc, ci, img);
        }
        assert_eq!(acc, vec![2, 0]);
        let k = kernel(&fp, &images, 2);
        assert_eq!(k, Subspace::span(&fp, 3, [vec![1, 1, 0]]));
        assert!(solve_combination(&fp, &[vec![1, 1]], &[1, 0]).is_none());
    }
}
