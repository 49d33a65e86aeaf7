//! Finite, possibly nonunital, associative `F_p`-algebras given by structure
//! constants.
//!
//! A ring of dimension `d` has basis `e_0 .. e_{d-1}` and the table entry
//! `(i, j)` holds the coordinates of `e_i e_j`. Every ring in the engine is
//! of this form; `F_q`-structure is always expanded to `F_p` first.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::guards::Guards;
use crate::ideals::{IdealBasis, Side};
use crate::linalg::{all_vectors, is_prime, kernel, solve_combination, Fp, Subspace};

/// Coordinates of a ring element against the presentation basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub coords: Vec<u32>,
}

impl RingElement {
    pub fn new(coords: Vec<u32>) -> RingElement {
        RingElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Deref for RingElement {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.coords
    }
}

impl From<Vec<u32>> for RingElement {
    fn from(coords: Vec<u32>) -> Self {
        RingElement { coords }
    }
}

impl From<RingElement> for Vec<u32> {
    fn from(e: RingElement) -> Self {
        e.coords
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// The set of left (or right) identities: empty, or `particular + directions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpace {
    pub particular: Option<Vec<u32>>,
    pub directions: Subspace,
}

impl IdentitySpace {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn count(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            self.directions.size()
        }
    }

    pub fn contains(&self, fp: &Fp, x: &[u32]) -> bool {
        match &self.particular {
            Some(e) => self.directions.contains(fp, &fp.sub_vec(x, e)),
            None => false,
        }
    }
}

/// Result of the identity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFlags {
    pub has_identity: bool,
    pub left_identities: Vec<RingElement>,
    pub right_identities: Vec<RingElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    fp: Fp,
    d: usize,
    /// Flattened `d x d x d`: entry `(i * d + j) * d + k` is the `e_k`
    /// coefficient of `e_i e_j`.
    sc: Vec<u32>,
    left_ids: IdentitySpace,
    right_ids: IdentitySpace,
}

/// Validates and builds a ring from a nested `d x d x d` table.
pub fn make_ring(p: u64, d: usize, table: &[Vec<Vec<u32>>]) -> Result<RingPresentation> {
    if table.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: table.len(),
        });
    }
    let mut sc = Vec::with_capacity(d * d * d);
    for row in table {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: row.len(),
            });
        }
        for entry in row {
            if entry.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: entry.len(),
                });
            }
            sc.extend_from_slice(entry);
        }
    }
    RingPresentation::from_flat(p, d, sc)
}

impl RingPresentation {
    pub fn from_flat(p: u64, d: usize, sc: Vec<u32>) -> Result<RingPresentation> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::NotPrime(p));
        }
        if sc.len() != d * d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d * d,
                found: sc.len(),
            });
        }
        if let Some(&bad) = sc.iter().find(|&&c| c as u64 >= p) {
            return Err(Error::InvalidParameter(format!(
                "structure constant {bad} is not reduced modulo {p}"
            )));
        }
        let fp = Fp::new(p);
        let mut ring = RingPresentation {
            left_ids: IdentitySpace {
                particular: None,
                directions: Subspace::zero(fp.p(), d),
            },
            right_ids: IdentitySpace {
                particular: None,
                directions: Subspace::zero(fp.p(), d),
            },
            fp,
            d,
            sc,
        };
        if let Some((i, j, k)) = ring.associativity_witness() {
            return Err(Error::NonAssociative(i, j, k));
        }
        ring.left_ids = ring.solve_identities(true);
        ring.right_ids = ring.solve_identities(false);
        Ok(ring)
    }

    /// First basis triple (lexicographic) with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.d;
        for i in 0..d {
            for j in 0..d {
                let ij = self.structure(i, j);
                for k in 0..d {
                    let jk = self.structure(j, k);
                    let mut lhs = vec![0u32; d];
                    let mut rhs = vec![0u32; d];
                    for l in 0..d {
                        self.fp.axpy(&mut lhs, ij[l], self.structure(l, k));
                        self.fp.axpy(&mut rhs, jk[l], self.structure(i, l));
                    }
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Left identities solve `e e_j = e_j` for all `j`; right ones `e_j e = e_j`.
    fn solve_identities(&self, left: bool) -> IdentitySpace {
        let d = self.d;
        let images: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                (0..d)
                    .flat_map(|j| {
                        if left {
                            self.structure(i, j).to_vec()
                        } else {
                            self.structure(j, i).to_vec()
                        }
                    })
                    .collect()
            })
            .collect();
        let target: Vec<u32> = (0..d).flat_map(|j| self.basis(j).coords).collect();
        IdentitySpace {
            particular: solve_combination(&self.fp, &images, &target),
            directions: kernel(&self.fp, &images, d * d),
        }
    }

    pub fn p(&self) -> u64 {
        self.fp.p() as u64
    }

    pub fn fp(&self) -> &Fp {
        &self.fp
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `p^d`.
    pub fn size(&self) -> u128 {
        (self.fp.p() as u128).pow(self.d as u32)
    }

    pub fn structure(&self, i: usize, j: usize) -> &[u32] {
        let d = self.d;
        &self.sc[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Nested copy of the structure constants, `table[i][j] = e_i e_j`.
    pub fn table(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.structure(i, j).to_vec()).collect())
            .collect()
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new(vec![0; self.d])
    }

    pub fn basis(&self, i: usize) -> RingElement {
        let mut v = vec![0; self.d];
        v[i] = 1;
        RingElement::new(v)
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<RingElement> {
        if coords.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: coords.len(),
            });
        }
        if coords.iter().any(|&c| c >= self.fp.p()) {
            return Err(Error::InvalidParameter(format!(
                "{coords:?} has unreduced coordinates"
            )));
        }
        Ok(RingElement::new(coords))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> RingElement {
        self.fp.add_vec(a, b).into()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> RingElement {
        self.fp.sub_vec(a, b).into()
    }

    pub fn neg(&self, a: &[u32]) -> RingElement {
        self.fp.neg_vec(a).into()
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> RingElement {
        let d = self.d;
        let mut out = vec![0u32; d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                self.fp
                    .axpy(&mut out, self.fp.mul(ai, bj), self.structure(i, j));
            }
        }
        RingElement::new(out)
    }

    /// `e_i x` for the basis vector `e_i`.
    pub fn basis_mul_left(&self, i: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.d];
        for (j, &xj) in x.iter().enumerate() {
            self.fp.axpy(&mut out, xj, self.structure(i, j));
        }
        out
    }

    /// `x e_i` for the basis vector `e_i`.
    pub fn basis_mul_right(&self, x: &[u32], i: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.d];
        for (j, &xj) in x.iter().enumerate() {
            self.fp.axpy(&mut out, xj, self.structure(j, i));
        }
        out
    }

    /// Images of the basis under `t -> t a` (right multiplication by `a`).
    pub fn right_mul_images(&self, a: &[u32]) -> Vec<Vec<u32>> {
        (0..self.d).map(|i| self.basis_mul_left(i, a)).collect()
    }

    /// Images of the basis under `t -> a t`.
    pub fn left_mul_images(&self, a: &[u32]) -> Vec<Vec<u32>> {
        (0..self.d).map(|i| self.basis_mul_right(a, i)).collect()
    }

    /// Every element in lexicographic order, refused above the element cap.
    pub fn elements(&self, guards: &Guards) -> Result<impl Iterator<Item = RingElement>> {
        guards.check_elements(self.p(), self.d)?;
        Ok(all_vectors(self.fp.p(), self.d).map(RingElement::new))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.structure(i, j) == self.structure(j, i)))
    }

    /// `R^2 = 0`.
    pub fn is_null(&self) -> bool {
        self.sc.iter().all(|&c| c == 0)
    }

    pub fn left_identity_space(&self) -> &IdentitySpace {
        &self.left_ids
    }

    pub fn right_identity_space(&self) -> &IdentitySpace {
        &self.right_ids
    }

    pub fn has_left_identity(&self) -> bool {
        !self.left_ids.is_empty()
    }

    pub fn has_right_identity(&self) -> bool {
        !self.right_ids.is_empty()
    }

    /// A left and a right identity must coincide, so both existing is enough.
    pub fn has_identity(&self) -> bool {
        self.has_left_identity() && self.has_right_identity()
    }

    pub fn identity(&self) -> Option<RingElement> {
        if !self.has_identity() {
            return None;
        }
        self.left_ids.particular.clone().map(RingElement::new)
    }

    /// Lists every left and right identity. The sets are affine subspaces, so
    /// the listing is refused when either would exceed the element cap.
    pub fn identity_flags(&self, guards: &Guards) -> Result<IdentityFlags> {
        let list = |space: &IdentitySpace| -> Result<Vec<RingElement>> {
            let Some(e) = &space.particular else {
                return Ok(Vec::new());
            };
            guards.check_elements(self.p(), space.directions.dim())?;
            let mut out: Vec<RingElement> = space
                .directions
                .elements()
                .map(|v| self.add(e, &v))
                .collect();
            out.sort();
            Ok(out)
        };
        Ok(IdentityFlags {
            has_identity: self.has_identity(),
            left_identities: list(&self.left_ids)?,
            right_identities: list(&self.right_ids)?,
        })
    }

    /// The opposite ring: `e_i * e_j := e_j e_i`.
    pub fn opposite(&self) -> RingPresentation {
        let d = self.d;
        let mut sc = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                sc.extend_from_slice(self.structure(j, i));
            }
        }
        RingPresentation {
            fp: self.fp.clone(),
            d,
            sc,
            left_ids: self.right_ids.clone(),
            right_ids: self.left_ids.clone(),
        }
    }

    /// `F_p x R` with `(n1, r1)(n2, r2) = (n1 n2, n1 r2 + n2 r1 + r1 r2)`.
    ///
    /// Coordinate 0 is the scalar part; coordinates `1..=d` carry `R`.
    pub fn dorroh(&self) -> RingPresentation {
        let d = self.d;
        let e = d + 1;
        let mut sc = vec![0u32; e * e * e];
        let mut put = |i: usize, j: usize, v: &[u32]| {
            sc[(i * e + j) * e..(i * e + j + 1) * e].copy_from_slice(v);
        };
        let unit = |k: usize| {
            let mut v = vec![0u32; e];
            v[k] = 1;
            v
        };
        put(0, 0, &unit(0));
        for j in 1..e {
            put(0, j, &unit(j));
            put(j, 0, &unit(j));
        }
        for i in 0..d {
            for j in 0..d {
                let mut v = vec![0u32; e];
                v[1..].copy_from_slice(self.structure(i, j));
                put(i + 1, j + 1, &v);
            }
        }
        RingPresentation::from_flat(self.p(), e, sc).expect("the Dorroh extension is associative")
    }

    /// Embeds `x` as `(0, x)` in [`RingPresentation::dorroh`].
    pub fn dorroh_embed(&self, x: &[u32]) -> RingElement {
        let mut v = Vec::with_capacity(self.d + 1);
        v.push(0);
        v.extend_from_slice(x);
        RingElement::new(v)
    }

    /// Quotient by a two-sided ideal, with representatives spanned by the
    /// standard basis vectors outside the ideal's pivot columns.
    pub fn quotient(&self, ideal: &IdealBasis) -> Result<QuotientRing> {
        let sub = ideal.subspace();
        if sub.ambient() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: sub.ambient(),
            });
        }
        if !crate::ideals::is_closed(self, sub, Side::TwoSided) {
            return Err(Error::NotTwoSided);
        }
        let complement = sub.complement_columns();
        let m = complement.len();
        let project = |v: &[u32]| -> Vec<u32> {
            let mut w = v.to_vec();
            sub.reduce(&self.fp, &mut w);
            complement.iter().map(|&c| w[c]).collect()
        };
        let mut sc = Vec::with_capacity(m * m * m);
        for &a in &complement {
            for &b in &complement {
                sc.extend(project(self.structure(a, b)));
            }
        }
        let ring = RingPresentation::from_flat(self.p(), m, sc)?;
        Ok(QuotientRing {
            ring,
            ideal: sub.clone(),
            complement,
        })
    }

    /// Orthogonal sum of the factors; block-diagonal structure constants.
    pub fn direct_product(factors: &[&RingPresentation]) -> Result<RingPresentation> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidParameter("empty direct product".into()));
        };
        let p = first.p();
        if let Some(bad) = factors.iter().find(|r| r.p() != p) {
            return Err(Error::MixedCharacteristic(p, bad.p()));
        }
        let d: usize = factors.iter().map(|r| r.d).sum();
        let mut sc = vec![0u32; d * d * d];
        let mut offset = 0;
        for r in factors {
            for i in 0..r.d {
                for j in 0..r.d {
                    let base = ((offset + i) * d + offset + j) * d + offset;
                    sc[base..base + r.d].copy_from_slice(r.structure(i, j));
                }
            }
            offset += r.d;
        }
        RingPresentation::from_flat(p, d, sc)
    }

    /// Null ring: all products zero, dimension `d`.
    pub fn null(p: u64, d: usize) -> Result<RingPresentation> {
        RingPresentation::from_flat(p, d, vec![0; d * d * d])
    }
}

/// `R / I` together with the coordinate projection `R -> R / I`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: RingPresentation,
    pub ideal: Subspace,
    /// Columns of `R` whose basis vectors represent the quotient basis.
    pub complement: Vec<usize>,
}

impl QuotientRing {
    pub fn project(&self, x: &[u32]) -> RingElement {
        let mut w = x.to_vec();
        self.ideal.reduce(self.ring.fp(), &mut w);
        RingElement::new(self.complement.iter().map(|&c| w[c]).collect())
    }

    /// The canonical representative of a class.
    pub fn lift(&self, y: &[u32]) -> RingElement {
        let mut v = vec![0; self.ideal.ambient()];
        for (&c, &yc) in self.complement.iter().zip(y) {
            v[c] = yc;
        }
        RingElement::new(v)
    }
}

/// Coordinates for rings of `n x m` matrices over `F_q` (`m >= n`) with
/// product `X * Y = X[:, ..n] Y`. Basis: entry `(i, j)` row-major, then the
/// `F_p`-basis `1, x, .., x^(k-1)` of the entry.
#[derive(Debug, Clone)]
pub struct MatrixCoords {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
}

pub type FqMatrix = Vec<Vec<FieldElement>>;

impl MatrixCoords {
    pub fn dim(&self) -> usize {
        self.rows * self.cols * self.field.degree()
    }

    pub fn to_coords(&self, m: &FqMatrix) -> Vec<u32> {
        m.iter()
            .flat_map(|row| row.iter().flat_map(|x| x.coeffs.iter().copied()))
            .collect()
    }

    pub fn from_coords(&self, v: &[u32]) -> FqMatrix {
        let k = self.field.degree();
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let base = (i * self.cols + j) * k;
                        FieldElement {
                            coeffs: v[base..base + k].to_vec(),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn zero_matrix(&self) -> FqMatrix {
        vec![vec![self.field.zero(); self.cols]; self.rows]
    }

    pub fn product(&self, x: &FqMatrix, y: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let mut out = self.zero_matrix();
        for i in 0..self.rows {
            for l in 0..self.n() {
                if f.is_zero(&x[i][l]) {
                    continue;
                }
                for j in 0..self.cols {
                    let t = f.mul(&x[i][l], &y[l][j]);
                    out[i][j] = f.add(&out[i][j], &t);
                }
            }
        }
        out
    }

    fn n(&self) -> usize {
        self.rows
    }

    pub fn ring(&self) -> RingPresentation {
        let dim = self.dim();
        let basis: Vec<FqMatrix> = (0..dim)
            .map(|b| {
                let mut v = vec![0; dim];
                v[b] = 1;
                self.from_coords(&v)
            })
            .collect();
        let mut sc = Vec::with_capacity(dim * dim * dim);
        for x in &basis {
            for y in &basis {
                sc.extend(self.to_coords(&self.product(x, y)));
            }
        }
        RingPresentation::from_flat(self.field.p() as u64, dim, sc)
            .expect("matrix multiplication is associative")
    }
}

/// `M_n(F_q)` as an `F_p`-algebra of dimension `k n^2`.
pub fn matrix_algebra(n: usize, field: &FieldSpec) -> Result<RingPresentation> {
    if n < 1 {
        return Err(Error::InvalidParameter("matrix size must be >= 1".into()));
    }
    Ok(MatrixCoords {
        field: field.clone(),
        rows: n,
        cols: n,
    }
    .ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::ideals::ideal_closure;

    fn r12() -> RingPresentation {
        make_ring(
            2,
            2,
            &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap()
    }

    #[test]
    fn accepts_r12_and_null() {
        let r = r12();
        assert_eq!(r.size(), 4);
        assert!(RingPresentation::null(2, 2).unwrap().is_null());
    }

    #[test]
    fn rejects_nonassociative_with_witness() {
        let err = make_ring(
            2,
            2,
            &[vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonAssociative(0, 0, 0));
        assert_eq!(
            make_ring(4, 1, &[vec![vec![0]]]).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn multiplication_is_bilinear() {
        let r = r12();
        // (e1 + e2) e1 = e1
        assert_eq!(r.mul(&[1, 1], &[1, 0]).coords, vec![1, 0]);
        assert_eq!(r.mul(&[0, 1], &[1, 1]).coords, vec![0, 0]);
    }

    #[test]
    fn identity_scan_matches_linear_solution() {
        let g = Guards::default();
        for ring in [
            r12(),
            r12().opposite(),
            RingPresentation::null(3, 2).unwrap(),
            matrix_algebra(2, &make_field(2, 1).unwrap()).unwrap(),
        ] {
            let flags = ring.identity_flags(&g).unwrap();
            let elems: Vec<RingElement> = ring.elements(&g).unwrap().collect();
            let scan_left: Vec<RingElement> = elems
                .iter()
                .filter(|e| elems.iter().all(|x| ring.mul(e, x) == *x))
                .cloned()
                .collect();
            let scan_right: Vec<RingElement> = elems
                .iter()
                .filter(|e| elems.iter().all(|x| ring.mul(x, e) == *x))
                .cloned()
                .collect();
            assert_eq!(flags.left_identities, scan_left);
            assert_eq!(flags.right_identities, scan_right);
            assert_eq!(
                flags.has_identity,
                scan_left.iter().any(|e| scan_right.contains(e))
            );
        }
    }

    #[test]
    fn opposite_flips_identities() {
        let op = r12().opposite();
        assert!(op.has_right_identity());
        assert!(!op.has_left_identity());
        assert_eq!(op.opposite(), r12());
        let null = RingPresentation::null(2, 3).unwrap();
        assert_eq!(null.opposite(), null);
    }

    #[test]
    fn matrix_algebras() {
        let f2 = make_field(2, 1).unwrap();
        let m1 = matrix_algebra(1, &f2).unwrap();
        assert_eq!(m1.table(), vec![vec![vec![1]]]);
        let m2 = matrix_algebra(2, &f2).unwrap();
        assert_eq!(m2.size(), 16);
        assert!(m2.has_identity());
        let gf4 = matrix_algebra(1, &make_field(2, 2).unwrap()).unwrap();
        assert_eq!(gf4.dim(), 2);
        assert!(gf4.has_identity() && gf4.is_commutative());
    }

    #[test]
    fn dorroh_extension() {
        let r = r12();
        let ext = r.dorroh();
        assert_eq!(ext.size(), 2 * r.size());
        assert_eq!(ext.identity().unwrap().coords, vec![1, 0, 0]);
        let embedded = Subspace::span(
            ext.fp(),
            3,
            (0..2).map(|i| ext.dorroh_embed(&r.basis(i)).coords),
        );
        assert!(crate::ideals::is_closed(&ext, &embedded, Side::TwoSided));
        for a in r.elements(&Guards::default()).unwrap() {
            for b in r.elements(&Guards::default()).unwrap() {
                assert_eq!(
                    ext.mul(&r.dorroh_embed(&a), &r.dorroh_embed(&b)),
                    r.dorroh_embed(&r.mul(&a, &b))
                );
            }
        }
    }

    #[test]
    fn quotient_by_radical_and_zero() {
        let r = r12();
        let j = ideal_closure(&r, &[r.basis(1)], Side::TwoSided);
        let q = r.quotient(&j).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert!(q.ring.has_identity());
        let zero = ideal_closure(&r, &[], Side::TwoSided);
        assert_eq!(r.quotient(&zero).unwrap().ring, r);
        let l0 = ideal_closure(&r, &[r.basis(0)], Side::Left);
        assert_eq!(l0.subspace().dim(), 1);
        assert_eq!(r.quotient(&l0).unwrap_err(), Error::NotTwoSided);
    }

    #[test]
    fn direct_product_blocks() {
        let a = r12();
        let b = RingPresentation::null(2, 2).unwrap();
        let prod = RingPresentation::direct_product(&[&a, &b]).unwrap();
        assert_eq!(prod.size(), a.size() * b.size());
        assert_eq!(prod.structure(0, 1), &[0, 1, 0, 0]);
        assert_eq!(prod.structure(0, 2), &[0, 0, 0, 0]);
        let c = RingPresentation::null(3, 1).unwrap();
        assert_eq!(
            RingPresentation::direct_product(&[&a, &c]).unwrap_err(),
            Error::MixedCharacteristic(2, 3)
        );
    }
}
