//! The block-matrix rings `R(n, q) = { (A | v) }` with `(A|v)(B|w) = (AB | Aw)`
//! and their distinguished left ideals `L_v` and `N_V`.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::ideals::{IdealBasis, Side};
use crate::linalg::{kernel, prime_power, Subspace};
use crate::ring::{FqMatrix, MatrixCoords, RingPresentation};

/// `R(n, q)` expanded to an `F_p`-algebra of dimension `k (n^2 + n)`.
pub fn build_rnq(n: usize, field: &FieldSpec) -> Result<RingPresentation> {
    Ok(RnqContext::new(n, field)?.ring)
}

/// The null ring on `F_p^r`.
pub fn build_null_ring(p: u64, r: usize) -> Result<RingPresentation> {
    if r < 1 {
        return Err(Error::InvalidParameter(
            "null ring rank must be >= 1".into(),
        ));
    }
    RingPresentation::null(p, r)
}

/// `(q^(n+1) - 1) / (q - 1)`.
pub fn covering_formula(n: usize, q: u64) -> Result<u64> {
    check_params(n, q)?;
    geometric(q, n + 1)
}

/// Number of lines in `F_q^n`: `(q^n - 1) / (q - 1)`.
pub fn gaussian_count(n: usize, q: u64) -> Result<u64> {
    check_params(n, q)?;
    geometric(q, n)
}

fn check_params(n: usize, q: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(())
}

fn geometric(q: u64, terms: usize) -> Result<u64> {
    let overflow = || Error::InvalidParameter(format!("1 + q + .. + q^{} overflows", terms - 1));
    let mut total = 0u64;
    let mut power = 1u64;
    for i in 0..terms {
        total = total.checked_add(power).ok_or_else(overflow)?;
        if i + 1 < terms {
            power = power.checked_mul(q).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// `R(n, q)` together with the coordinate map between `F_q`-matrices and
/// `F_p`-coordinates.
#[derive(Debug, Clone)]
pub struct RnqContext {
    pub n: usize,
    pub coords: MatrixCoords,
    pub ring: RingPresentation,
}

impl RnqContext {
    pub fn new(n: usize, field: &FieldSpec) -> Result<RnqContext> {
        if n < 1 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        let coords = MatrixCoords {
            field: field.clone(),
            rows: n,
            cols: n + 1,
        };
        let ring = coords.ring();
        Ok(RnqContext { n, coords, ring })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.coords.field
    }

    pub fn q(&self) -> u64 {
        self.field().order() as u64
    }

    /// Coordinates of `(A | v)`.
    pub fn element(&self, a: &FqMatrix, v: &[FieldElement]) -> Vec<u32> {
        let m: FqMatrix = a
            .iter()
            .zip(v)
            .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
            .collect();
        self.coords.to_coords(&m)
    }

    /// Splits coordinates into `(A, v)`.
    pub fn split(&self, x: &[u32]) -> (FqMatrix, Vec<FieldElement>) {
        let m = self.coords.from_coords(x);
        let a = m.iter().map(|row| row[..self.n].to_vec()).collect();
        let v = m.iter().map(|row| row[self.n].clone()).collect();
        (a, v)
    }

    pub fn identity_matrix(&self) -> FqMatrix {
        let f = self.field();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { f.one() } else { f.zero() })
                    .collect()
            })
            .collect()
    }

    pub fn zero_matrix(&self) -> FqMatrix {
        vec![vec![self.field().zero(); self.n]; self.n]
    }

    pub fn zero_vector(&self) -> Vec<FieldElement> {
        vec![self.field().zero(); self.n]
    }

    pub fn mat_vec(&self, a: &FqMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
            })
            .collect()
    }

    /// `x^t E_ij` for all entries and field-basis powers: an `F_p`-basis of `M_n(F_q)`.
    fn matrix_basis(&self) -> Vec<FqMatrix> {
        let k = self.field().degree();
        let mut out = Vec::with_capacity(self.n * self.n * k);
        for i in 0..self.n {
            for j in 0..self.n {
                for t in 0..k {
                    let mut m = self.zero_matrix();
                    let mut coeffs = vec![0; k];
                    coeffs[t] = 1;
                    m[i][j] = FieldElement { coeffs };
                    out.push(m);
                }
            }
        }
        out
    }

    /// `x^t e_i` for all positions: an `F_p`-basis of `F_q^n`.
    fn vector_basis(&self) -> Vec<Vec<FieldElement>> {
        let k = self.field().degree();
        let mut out = Vec::with_capacity(self.n * k);
        for i in 0..self.n {
            for t in 0..k {
                let mut v = self.zero_vector();
                let mut coeffs = vec![0; k];
                coeffs[t] = 1;
                v[i] = FieldElement { coeffs };
                out.push(v);
            }
        }
        out
    }

    /// Every vector of `F_q^n`, lexicographic in the field indices.
    pub fn vectors(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field();
        let q = f.order();
        let total = q.pow(self.n as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![f.zero(); self.n];
                for slot in v.iter_mut().rev() {
                    *slot = f.from_index(idx % q);
                    idx /= q;
                }
                v
            })
            .collect()
    }

    /// One spanning vector per line of `F_q^n`, normalized so the first
    /// nonzero entry is 1.
    pub fn lines(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field();
        let one = f.one();
        self.vectors()
            .into_iter()
            .filter(|v| v.iter().find(|x| !f.is_zero(x)) == Some(&one))
            .collect()
    }

    fn checked_left(&self, space: Subspace) -> IdealBasis {
        IdealBasis::checked(&self.ring, space, Side::Left)
            .expect("construction yields a left ideal")
    }

    /// `L_v = {(A | Av) : A in M_n(F_q)}`.
    pub fn ideal_lv(&self, v: &[FieldElement]) -> Result<IdealBasis> {
        self.check_vector(v)?;
        let rows = self.matrix_basis().into_iter().map(|a| {
            let av = self.mat_vec(&a, v);
            self.element(&a, &av)
        });
        Ok(self.checked_left(Subspace::span(self.ring.fp(), self.ring.dim(), rows)))
    }

    /// `N_V = {(A | w) : AV = 0}` for the line `V` spanned by `direction`.
    pub fn ideal_nv(&self, direction: &[FieldElement]) -> Result<IdealBasis> {
        self.check_vector(direction)?;
        let f = self.field();
        if direction.iter().all(|x| f.is_zero(x)) {
            return Err(Error::InvalidParameter(
                "N_V needs a nonzero direction".into(),
            ));
        }
        self.ideal_nv_span(&[direction.to_vec()])
    }

    /// `N_V` for `V` spanned by arbitrary vectors; used to check that only
    /// lines give maximal ideals.
    pub fn ideal_nv_span(&self, spanning: &[Vec<FieldElement>]) -> Result<IdealBasis> {
        for v in spanning {
            self.check_vector(v)?;
        }
        let fp = self.ring.fp();
        let basis = self.matrix_basis();
        let zero_v = self.zero_vector();
        let zero_a = self.zero_matrix();
        // A -> (A v_1, .., A v_m) as F_p-coordinates
        let images: Vec<Vec<u32>> = basis
            .iter()
            .map(|a| {
                spanning
                    .iter()
                    .flat_map(|v| {
                        self.mat_vec(a, v)
                            .into_iter()
                            .flat_map(|x| x.coeffs)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let target_dim = spanning.len() * self.n * self.field().degree();
        let annihilators = kernel(fp, &images, target_dim);
        let a_part = annihilators.rows().iter().map(|coeffs| {
            let mut a = self.zero_matrix();
            for (c, m) in coeffs.iter().zip(&basis) {
                for i in 0..self.n {
                    for j in 0..self.n {
                        let scaled = self.field().mul(&self.field().scalar(*c), &m[i][j]);
                        a[i][j] = self.field().add(&a[i][j], &scaled);
                    }
                }
            }
            self.element(&a, &zero_v)
        });
        let w_part = self
            .vector_basis()
            .into_iter()
            .map(|w| self.element(&zero_a, &w));
        let rows: Vec<Vec<u32>> = a_part.chain(w_part).collect();
        Ok(self.checked_left(Subspace::span(fp, self.ring.dim(), rows)))
    }

    /// The radical `{(0 | v)}`.
    pub fn radical(&self) -> IdealBasis {
        let zero_a = self.zero_matrix();
        let rows = self
            .vector_basis()
            .into_iter()
            .map(|w| self.element(&zero_a, &w));
        IdealBasis::checked(
            &self.ring,
            Subspace::span(self.ring.fp(), self.ring.dim(), rows),
            Side::TwoSided,
        )
        .expect("radical is two-sided")
    }

    /// The left identity `(I_n | 0)`.
    pub fn left_identity(&self) -> Vec<u32> {
        self.element(&self.identity_matrix(), &self.zero_vector())
    }

    /// All `L_v` followed by `N_V` over every line `V`.
    pub fn canonical_cover(&self) -> Result<Vec<IdealBasis>> {
        let mut cover = Vec::new();
        for v in self.vectors() {
            cover.push(self.ideal_lv(&v)?);
        }
        for line in self.lines() {
            cover.push(self.ideal_nv(&line)?);
        }
        Ok(cover)
    }

    fn check_vector(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let k = self.field().degree();
        let p = self.field().p();
        if v.iter()
            .any(|x| x.coeffs.len() != k || x.coeffs.iter().any(|&c| c >= p))
        {
            return Err(Error::InvalidParameter(
                "vector entry is not a field element".into(),
            ));
        }
        Ok(())
    }
}

/// `canonical_cover` without keeping the context.
pub fn canonical_cover(n: usize, field: &FieldSpec) -> Result<Vec<IdealBasis>> {
    RnqContext::new(n, field)?.canonical_cover()
}

/// True when the members cover every element of the ring.
pub fn covers_ring(ring: &RingPresentation, members: &[IdealBasis]) -> bool {
    let total = ring.size() as usize;
    let mut seen = vec![false; total];
    for m in members {
        for x in m.elements() {
            seen[crate::linalg::vector_index(ring.fp().p(), &x)] = true;
        }
    }
    seen.into_iter().all(|s| s)
}
